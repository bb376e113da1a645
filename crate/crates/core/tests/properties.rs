use proptest::prelude::*;

use heiscalc::expr::{parse_op, parse_poly, parse_symbol};
use heiscalc::fields::{hamiltonian_to_field, lagrange_bracket};
use heiscalc::mono::Mono;
use heiscalc::poly::Poly;
use heiscalc::quantize::Quantizer;
use heiscalc::rational::{q, Rational};
use heiscalc::{Context, DiffOp, Generator};

const ELL: usize = 1;
const M: usize = 2 * ELL + 1;

fn rational() -> impl Strategy<Value = Rational> {
    (-4i64..=4, 1i64..=3).prop_map(|(n, d)| q(n, d))
}

fn mono(max: u32) -> impl Strategy<Value = Mono> {
    prop::collection::vec(0..=max, M).prop_map(Mono::from_exps)
}

fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec((mono(2), rational()), 0..4).prop_map(|ts| {
        let mut p = Poly::zero(ELL);
        for (m, c) in ts {
            p.add_term(m, c);
        }
        p
    })
}

fn diffop(lambda: Rational) -> impl Strategy<Value = DiffOp> {
    prop::collection::vec((mono(1), poly()), 0..4).prop_map(move |ts| {
        let mut t = DiffOp::zero(ELL, lambda.clone(), lambda.clone());
        for (k, g) in ts {
            t.add_term(k, &g);
        }
        t
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn compose_is_apply_twice(s in diffop(q(0, 1)), t in diffop(q(0, 1)), g in poly()) {
        let st = s.compose(&t).unwrap();
        prop_assert_eq!(st.apply(&g), s.apply(&t.apply(&g)));
    }

    #[test]
    fn adjoint_is_an_involution(t in diffop(q(1, 2))) {
        prop_assert_eq!(t.adjoint().adjoint(), t);
    }

    #[test]
    fn heisenberg_commutator(f in poly()) {
        let a = |p: &Poly| p.apply_generator(Generator::A(1));
        let b = |p: &Poly| p.apply_generator(Generator::B(1));
        prop_assert_eq!(&a(&b(&f)) - &b(&a(&f)), f.diff(heiscalc::Var::Z));
    }

    #[test]
    fn bracket_is_a_lie_map(f in poly(), g in poly()) {
        prop_assert_eq!(lagrange_bracket(&f, &g), -lagrange_bracket(&g, &f));
        let lhs = hamiltonian_to_field(&lagrange_bracket(&f, &g));
        let rhs = hamiltonian_to_field(&f).bracket(&hamiltonian_to_field(&g));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn print_then_parse(t in diffop(q(1, 3))) {
        let ctx = Context::with_weights(ELL, q(1, 3), q(1, 3)).unwrap();
        let back = parse_op(&t.to_string(), &ctx).unwrap();
        prop_assert_eq!(back, t);
    }

    #[test]
    fn quantize_then_dequantize(g in poly(), h in poly()) {
        let qz = Quantizer::new(ELL, q(0, 1), q(1, 3)).unwrap();
        let src = format!("({g})*zeta*beta1 + ({h})*alpha1");
        let p = parse_symbol(&src, ELL, &q(1, 3)).unwrap();
        prop_assume!(!p.is_zero());
        let t = qz.quantize(&p).unwrap();
        let comps = qz.dequantize(&t).unwrap();
        let mut sum = heiscalc::SymbolPoly::zero(ELL, q(1, 3), heiscalc::Basis::AlphaBeta);
        for c in comps {
            sum = sum.try_add(&c.part).unwrap();
        }
        prop_assert_eq!(sum, p);
    }
}

const CORPUS: [&str; 50] = [
    "0",
    "1",
    "-3/4",
    "z",
    "x1",
    "y1",
    "Dz",
    "Dx1",
    "Dy1",
    "A1",
    "B1",
    "z*Dz",
    "z*Dz^2",
    "x1*Dx1 + y1*Dy1",
    "A1*B1 - B1*A1",
    "A1*B1",
    "B1*A1",
    "A1^2",
    "B1^3",
    "Dz^3",
    "Xf{1}",
    "Xf{z}",
    "Xf{x1}",
    "Xf{y1}",
    "Xf{x1*y1}",
    "Xf{x1^2}",
    "Xf{y1^2}",
    "Xf{z*x1}",
    "Xf{x1^3}",
    "Xf{z^2}",
    "1/2*x1*Dz - Dy1",
    "(x1 + y1)*Dz",
    "(z - 1)*(Dx1 + Dy1)",
    "x1^2*y1*Dz*Dx1",
    "Dx1*x1",
    "Dz*z",
    "Dy1*y1^2",
    "(A1 + B1)^2",
    "A1*Xf{z}",
    "Xf{z}*A1",
    "Xf{x1}*Xf{y1} - Xf{y1}*Xf{x1}",
    "2*Dz + 3*Dx1 - 5/7*Dy1",
    "z^3*Dz^3",
    "x1*y1*z*Dx1*Dy1*Dz",
    "(1/2)*A1 + (1/3)*B1",
    "A1*A1*B1",
    "Dx1^2 - Dy1^2",
    "-Dz",
    "-(x1*Dx1)",
    "y1^2*A1 - x1^2*B1",
];

#[test]
fn corpus_round_trip() {
    for lam in [q(0, 1), q(1, 2), q(-2, 3)] {
        let ctx = Context::with_weights(ELL, lam.clone(), lam.clone()).unwrap();
        for src in CORPUS {
            let t = parse_op(src, &ctx).unwrap_or_else(|e| panic!("{src}: {e}"));
            let printed = t.to_string();
            let back = parse_op(&printed, &ctx).unwrap_or_else(|e| panic!("{printed}: {e}"));
            assert_eq!(back, t, "{src} printed as {printed}");
        }
    }
}

#[test]
fn poly_round_trip() {
    for src in ["0", "z", "x1^2*y1 - 1/3*z", "(x1 + y1)^3"] {
        let p = parse_poly(src, ELL).unwrap();
        assert_eq!(parse_poly(&p.to_string(), ELL).unwrap(), p);
    }
}
