use heiscalc::expr::parse_op;
use heiscalc::infchar::{matching_case, InfCharCase};
use heiscalc::quantize::{
    fine_filtration_degree, graded_pieces, is_contact_resonant, is_projectively_resonant, subsymbol, Quantizer,
};
use heiscalc::rational::{int, q};
use heiscalc::{Context, Error};

#[test]
fn resonance_sets() {
    // contact: 2 delta (ell + 1) in 2 + N; projective: (delta - 1)(m + 1) in N
    for ell in 1..=3usize {
        for n in -8i64..=24 {
            let delta = q(n, 4 * (ell as i64 + 1));
            let contact = n % 2 == 0 && n >= 4;
            assert_eq!(is_contact_resonant(&delta, ell), contact, "ell={ell} n={n}");
            if is_projectively_resonant(&delta, 2 * ell + 1) {
                assert!(is_contact_resonant(&delta, ell));
            }
        }
    }
    assert!(matches!(
        Quantizer::new(1, int(0), q(1, 2)),
        Err(Error::ContactResonance { .. })
    ));
    assert!(Quantizer::new(1, int(0), q(1, 3)).is_ok());
}

#[test]
fn graded_pieces_of_level_six() {
    assert_eq!(graded_pieces(6), vec![(2, 4), (4, 5), (6, 6)]);
    assert_eq!(graded_pieces(0), vec![(0, 0)]);
    assert!(graded_pieces(-1).is_empty());
}

#[test]
fn filtration_degree() {
    let ctx = Context::with_weights(1, int(0), q(1, 3)).unwrap();
    let dz = parse_op("Dz", &ctx).unwrap();
    let a1 = parse_op("A1", &ctx).unwrap();
    assert_eq!(fine_filtration_degree(&dz, &int(0), &q(1, 3)).unwrap(), 3);
    assert_eq!(fine_filtration_degree(&a1, &int(0), &q(1, 3)).unwrap(), 1);
}

#[test]
fn subsymbol_errors() {
    let ctx = Context::with_weights(1, int(0), int(0)).unwrap();
    let t = parse_op("Dz^2", &ctx).unwrap();
    assert!(subsymbol(&t, 0, &int(0), &int(0)).is_err());
    assert!(subsymbol(&t, 1, &int(0), &int(0)).is_err());
    // (ell + k)/(ell + 1) at ell = 1, k = 3
    let ctx = Context::with_weights(1, int(0), int(2)).unwrap();
    let t = parse_op("Dz^3", &ctx).unwrap();
    assert!(matches!(
        subsymbol(&t, 3, &int(0), &int(2)),
        Err(Error::SubsymbolExcluded { .. })
    ));
}

#[test]
fn infchar_cases() {
    assert_eq!(matching_case(2, 4, 2, 3, &int(1), 1).unwrap(), Some(InfCharCase::I));
    assert_eq!(matching_case(2, 4, 2, 3, &q(1, 3), 1).unwrap(), None);
    assert_eq!(matching_case(2, 3, 2, 4, &int(1), 1), Err(Error::OrderingViolated));
}
