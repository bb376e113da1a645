use std::path::PathBuf;

use heiscalc::cli::{run, EXIT_DOMAIN, EXIT_OK, EXIT_USAGE, EXIT_VERIFY};

fn heiscalc(args: &[&str]) -> heiscalc::cli::Outcome {
    run(std::iter::once("heiscalc").chain(args.iter().copied()))
}

fn golden(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(format!("{name}.json"));
    std::fs::read_to_string(p).unwrap()
}

#[test]
fn golden_outputs() {
    let cases: [(&str, &[&str]); 6] = [
        ("resonance", &["resonance", "--delta", "1/2", "--ell", "1"]),
        (
            "infchar",
            &["infchar", "--ell", "1", "--delta", "1", "--pair", "2,4", "2,3"],
        ),
        (
            "subsymbol",
            &["subsymbol", "--ell", "1", "--lambda", "1/2", "--mu", "1/2", "z*Dz^2"],
        ),
        ("bidegree", &["bidegree", "A1*B1 - B1*A1"]),
        ("bracket", &["bracket", "x1", "y1"]),
        ("filtration", &["filtration", "--b", "6"]),
    ];
    for (name, args) in cases {
        let mut a = args.to_vec();
        a.extend(["--format", "json"]);
        let out = heiscalc(&a);
        assert_eq!(out.code, EXIT_OK, "{name}: {}", out.stderr);
        assert_eq!(out.stdout, golden(name), "{name}");
    }
}

#[test]
fn exit_codes() {
    assert_eq!(heiscalc(&["--help"]).code, EXIT_OK);
    assert_eq!(heiscalc(&["--version"]).code, EXIT_OK);
    assert_eq!(heiscalc(&["nonsense"]).code, EXIT_USAGE);
    assert_eq!(heiscalc(&["bidegree", "Dx3"]).code, EXIT_USAGE);
    assert_eq!(heiscalc(&["bidegree", "z*("]).code, EXIT_USAGE);
    assert_eq!(heiscalc(&["--ell", "0", "bidegree", "z"]).code, EXIT_DOMAIN);
    assert_eq!(heiscalc(&["verify", "no-such-suite"]).code, EXIT_USAGE);
    assert_eq!(heiscalc(&["verify", "falsified"]).code, EXIT_VERIFY);
    assert_eq!(heiscalc(&["verify", "heisenberg", "--max-order", "2"]).code, EXIT_OK);
    assert_eq!(
        heiscalc(&["infchar", "--delta", "1", "--pair", "2,3", "2,4"]).code,
        EXIT_DOMAIN
    );
}

#[test]
fn resonance_errors_name_the_denominator() {
    let out = heiscalc(&["quantize", "--lambda", "0", "--mu", "1/2", "zeta"]);
    assert_eq!(out.code, EXIT_DOMAIN);
    assert!(out.stderr.contains("c = 1, s = 1"), "{}", out.stderr);
    let out = heiscalc(&["quantize", "--lambda", "0", "--mu", "1/2", "zeta", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert!(v["error"].as_str().unwrap().contains("contact-resonant"));
}

#[test]
fn text_and_latex() {
    let out = heiscalc(&["finesym", "A1*B1 - B1*A1"]);
    assert_eq!(out.stdout, "fine symbol in Sigma^(1,2): zeta\n");
    let out = heiscalc(&["bracket", "x1", "y1"]);
    assert!(out.stdout.starts_with("{f, g} = 1\n"));
    let out = heiscalc(&["bidegree", "x1*Dz", "--format", "latex"]);
    assert_eq!(out.code, EXIT_OK);
}

#[test]
fn quantize_dequantize_round_trip() {
    let q = heiscalc(&[
        "quantize",
        "--lambda",
        "0",
        "--mu",
        "1/3",
        "(x1 + z)*zeta*beta1",
        "--format",
        "json",
    ]);
    assert_eq!(q.code, EXIT_OK, "{}", q.stderr);
    let v: serde_json::Value = serde_json::from_str(&q.stdout).unwrap();
    let op = v["result"]["operator"].as_str().unwrap().to_string();
    let d = heiscalc(&["dequantize", "--lambda", "0", "--mu", "1/3", &op, "--format", "json"]);
    assert_eq!(d.code, EXIT_OK, "{}", d.stderr);
    let v: serde_json::Value = serde_json::from_str(&d.stdout).unwrap();
    let comps = v["result"]["components"].as_array().unwrap();
    assert_eq!(comps.len(), 1, "{comps:?}");
    assert_eq!(comps[0]["k"], 2);
    assert_eq!(comps[0]["d"], 3);
}

#[test]
fn subsymbol_defaults_to_operator_order() {
    let out = heiscalc(&[
        "subsymbol",
        "--lambda",
        "1/3",
        "--mu",
        "2/3",
        "x1*Dz*Dy1",
        "--format",
        "json",
    ]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["input"]["order"], 2);
    assert_eq!(v["result"]["component"]["k"], 1);
    assert!(v["warnings"].as_array().unwrap().is_empty());
}
