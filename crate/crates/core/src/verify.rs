//! Named property suites. Each check is an exact identity; a suite reports
//! pass/fail counts per check and the first counterexample it met.

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::fields::{
    affine_projective_generators, cubic_sample, density_lie_derivative, field_weight, hamiltonian_to_field,
    lagrange_bracket, lagrange_bracket_forms, subalgebra_basis, Subalgebra, VectorField,
};
use crate::infchar::{infchar_key, lowest_weight, rho, same_infchar_cases, weyl_equivalent};
use crate::mono::{Mono, Var};
use crate::ops::DiffOp;
use crate::poly::{contact_degree, Generator, Poly};
use crate::quantize::{
    is_contact_resonant, subsymbol, subsymbol_adjoint_oracle, subsymbol_order2_explicit, subsymbol_via_quantization,
    zeta_coefficient, Quantizer, SecOp, SecOpTerm,
};
use crate::rational::{int, q, Rational};
use crate::sample::Sampler;
use crate::symbol::{
    action_fine, action_xi, fine_bidegrees, fine_monomials, fine_symbol_at, fine_symbol_via_principal, hm_weight,
    normal_symbol, principal_symbol, Basis, SymbolPoly,
};

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub ell: usize,
    pub seed: u64,
    pub max_order: u32,
    pub samples: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            ell: 1,
            seed: 0,
            max_order: 3,
            samples: 100,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub name: String,
    pub passed: u64,
    pub failed: u64,
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub suite: String,
    pub ell: usize,
    pub checks: Vec<CheckReport>,
}

impl SuiteReport {
    pub fn passed(&self) -> u64 {
        self.checks.iter().map(|c| c.passed).sum()
    }

    pub fn failed(&self) -> u64 {
        self.checks.iter().map(|c| c.failed).sum()
    }

    pub fn ok(&self) -> bool {
        self.failed() == 0 && self.passed() > 0
    }

    pub fn first_counterexample(&self) -> Option<(&str, &str)> {
        self.checks
            .iter()
            .find_map(|c| c.counterexample.as_deref().map(|ce| (c.name.as_str(), ce)))
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "suite {} (ell = {}): {} passed, {} failed",
            self.suite,
            self.ell,
            self.passed(),
            self.failed()
        )?;
        for c in &self.checks {
            writeln!(f, "  {:<40} {:>7} passed {:>5} failed", c.name, c.passed, c.failed)?;
        }
        if let Some((name, ce)) = self.first_counterexample() {
            writeln!(f, "  first counterexample [{name}]: {ce}")?;
        }
        Ok(())
    }
}

struct Tally {
    report: SuiteReport,
}

impl Tally {
    fn new(suite: &str, ell: usize) -> Self {
        Tally {
            report: SuiteReport {
                suite: suite.into(),
                ell,
                checks: Vec::new(),
            },
        }
    }

    fn entry(&mut self, name: &str) -> &mut CheckReport {
        if let Some(i) = self.report.checks.iter().position(|c| c.name == name) {
            return &mut self.report.checks[i];
        }
        self.report.checks.push(CheckReport {
            name: name.into(),
            passed: 0,
            failed: 0,
            counterexample: None,
        });
        self.report.checks.last_mut().unwrap()
    }

    fn check(&mut self, name: &str, ok: bool, ce: impl FnOnce() -> String) {
        let e = self.entry(name);
        if ok {
            e.passed += 1;
        } else {
            e.failed += 1;
            if e.counterexample.is_none() {
                e.counterexample = Some(ce());
            }
        }
    }

    fn eq<T: PartialEq + fmt::Display>(&mut self, name: &str, got: &T, want: &T, input: impl FnOnce() -> String) {
        self.check(name, got == want, || format!("{}: got {got}, expected {want}", input()));
    }

    /// Counts an `Err` as a failure.
    fn run(&mut self, name: &str, r: Result<bool>, input: impl FnOnce() -> String) {
        match r {
            Ok(ok) => self.check(name, ok, input),
            Err(e) => self.check(name, false, || format!("{}: error {e}", input())),
        }
    }

    fn finish(self) -> SuiteReport {
        self.report
    }
}

type SuiteFn = fn(&VerifyConfig) -> Result<SuiteReport>;

/// Suite names accepted by [`run_suite`], with a one-line description.
pub const SUITES: &[(&str, &str, SuiteFn)] = &[
    ("heisenberg", "Heisenberg relations and the contact grading", heisenberg),
    ("contact", "Lagrange bracket, contact fields and divergence", contact),
    ("weights", "h_m weights and lowest weight vectors", weights),
    ("divergences", "affine invariants Div_C, Div_T, Delta", divergences),
    ("affine", "the a_m-equivariant quantization", affine),
    ("fine", "the fine s_m-equivariant quantization", fine),
    ("subsymbol", "the subsymbol and its oracles", subsymbol_suite),
    ("order-two", "second-order subsymbol formulas", order_two),
    (
        "filtration",
        "fine filtration invariance and block vanishing",
        filtration,
    ),
    ("infchar", "infinitesimal character coincidences", infchar),
    ("falsified", "a deliberately false identity; must fail", falsified),
];

pub fn run_suite(name: &str, cfg: &VerifyConfig) -> Result<SuiteReport> {
    match SUITES.iter().find(|s| s.0 == name) {
        Some((_, _, f)) => f(cfg),
        None => Err(Error::Unknown {
            kind: "suite",
            name: name.into(),
        }),
    }
}

fn coeff_set(ell: usize) -> Vec<Poly> {
    let mut out = vec![Poly::one(ell)];
    out.extend(Var::all(ell).map(|v| Poly::var(ell, v)));
    out
}

fn ab(delta: &Rational, fib: &Mono, g: &Poly) -> SymbolPoly {
    SymbolPoly::monomial(delta.clone(), Basis::AlphaBeta, fib.clone(), g.clone())
}

/// All fine monomials with `k <= max_k` times each coefficient in `coeffs`.
fn fine_inputs(ell: usize, max_k: u32, coeffs: &[Poly], delta: &Rational) -> Vec<(u32, u32, SymbolPoly)> {
    let mut out = Vec::new();
    for (k, d) in fine_bidegrees(max_k) {
        for m in fine_monomials(ell, k, d) {
            for g in coeffs {
                out.push((k, d, ab(delta, &m, g)));
            }
        }
    }
    out
}

fn heisenberg(cfg: &VerifyConfig) -> Result<SuiteReport> {
    let ell = cfg.ell;
    let mut t = Tally::new("heisenberg", ell);
    let gens = |i| [Generator::A(i), Generator::B(i)];
    for m in Mono::all_up_to_degree(ell, 3) {
        let p = Poly::monomial(m.clone());
        let dz = p.diff(Var::Z);
        for i in 1..=ell {
            for j in 1..=ell {
                let ab = p.apply_generator(Generator::B(j)).apply_generator(Generator::A(i))
                    - p.apply_generator(Generator::A(i)).apply_generator(Generator::B(j));
                let want = if i == j { dz.clone() } else { Poly::zero(ell) };
                t.eq("[A_i, B_j] = delta_ij d_z", &ab, &want, || {
                    format!("i={i}, j={j}, p={p}")
                });
                for (g, h) in [(Generator::A(i), Generator::A(j)), (Generator::B(i), Generator::B(j))] {
                    let c = p.apply_generator(h).apply_generator(g) - p.apply_generator(g).apply_generator(h);
                    t.eq("[A_i, A_j] = [B_i, B_j] = 0", &c, &Poly::zero(ell), || {
                        format!("{g:?} {h:?} on {p}")
                    });
                }
            }
            for g in gens(i) {
                let c = p.apply_generator(g).diff(Var::Z) - p.diff(Var::Z).apply_generator(g);
                t.eq("[d_z, A_i] = [d_z, B_i] = 0", &c, &Poly::zero(ell), || {
                    format!("{g:?} on {p}")
                });
            }
        }
        let grading = p.contact_grading();
        t.check(
            "monomials are contact-Euler eigenvectors",
            grading == vec![(contact_degree(&m), p.clone())],
            || format!("{p}"),
        );
    }
    for i in 1..=ell {
        for j in 1..=ell {
            let a = DiffOp::generator(ell, Generator::A(i));
            let b = DiffOp::generator(ell, Generator::B(j));
            let c = a.compose_raw(&b).sub_raw(&b.compose_raw(&a));
            let want = if i == j {
                DiffOp::partial(Mono::var(ell, Var::Z))
            } else {
                DiffOp::untagged(ell)
            };
            t.eq("[A_i, B_j] as operators", &c, &want, || format!("i={i}, j={j}"));
        }
    }
    let mut exy = VectorField::zero(ell);
    for i in 1..=ell {
        exy = exy.add(&VectorField::generator(ell, Generator::A(i)).mul_poly(&Poly::x(ell, i)));
        exy = exy.sub(&VectorField::generator(ell, Generator::B(i)).mul_poly(&Poly::y(ell, i)));
    }
    t.eq(
        "E_xy = x_i A_i - y_i B_i",
        &exy,
        &VectorField::euler_xy(ell),
        String::new,
    );
    let mut s = Sampler::new(ell, cfg.seed);
    for _ in 0..cfg.samples {
        let order = s.gen_range(0, cfg.max_order);
        let op = s.diffop(order, 2, 4, &int(0), &int(0));
        let back = op.heisenberg_form().to_diffop();
        t.eq("PBW form round trip", &back, &op, || op.to_string());
        if let Ok((k, d)) = op.bidegree() {
            t.eq(
                "fine symbol: PBW route = principal symbol route",
                &fine_symbol_at(&op, k, d),
                &fine_symbol_via_principal(&op, k, d),
                || op.to_string(),
            );
        }
    }
    Ok(t.finish())
}

fn contact_monomials(ell: usize, max: i64) -> Vec<Poly> {
    Mono::all_up_to_degree(ell, 2 * max as u32)
        .into_iter()
        .filter(|m| contact_degree(m) <= int(max))
        .map(Poly::monomial)
        .collect()
}

fn check_pair(t: &mut Tally, f: &Poly, g: &Poly) {
    let fg = lagrange_bracket(f, g);
    let lhs = hamiltonian_to_field(&fg);
    let rhs = hamiltonian_to_field(f).bracket(&hamiltonian_to_field(g));
    t.eq("X_{f,g} = [X_f, X_g]", &lhs, &rhs, || format!("f={f}, g={g}"));
    let forms = lagrange_bracket_forms(f, g);
    t.check("bracket formulas agree", forms.iter().all(|p| p == &forms[0]), || {
        format!("f={f}, g={g}: {forms:?}")
    });
}

fn jacobi(f: &Poly, g: &Poly, h: &Poly) -> Poly {
    let b = lagrange_bracket;
    b(f, &b(g, h)) + b(g, &b(h, f)) + b(h, &b(f, g))
}

fn contact(cfg: &VerifyConfig) -> Result<SuiteReport> {
    let ell = cfg.ell;
    let mut t = Tally::new("contact", ell);
    let cd2 = contact_monomials(ell, 2);
    for f in &cd2 {
        for g in &cd2 {
            check_pair(&mut t, f, g);
        }
    }
    for (a, f) in cd2.iter().enumerate() {
        for (b, g) in cd2.iter().enumerate().skip(a) {
            for h in &cd2[b..] {
                let j = jacobi(f, g, h);
                t.check("Jacobi identity", j.is_zero(), || format!("{f}, {g}, {h}"));
            }
        }
    }
    let l1 = int(ell as i64 + 1);
    for m in Mono::all_up_to_degree(ell, 4) {
        let f = Poly::monomial(m);
        let div = hamiltonian_to_field(&f).divergence();
        t.eq("Div X_f = (ell+1) d_z f", &div, &f.diff(Var::Z).scale(&l1), || {
            f.to_string()
        });
        t.eq("pi(X_f) = f", &hamiltonian_to_field(&f).pi_projection(), &f, || {
            f.to_string()
        });
    }
    let mut s = Sampler::new(ell, cfg.seed);
    let hamiltonian_weight = q(-1, ell as i64 + 1);
    for _ in 0..cfg.samples {
        let f = s.poly(3, 3);
        let g = s.poly(3, 3);
        let h = s.poly(3, 2);
        check_pair(&mut t, &f, &g);
        t.check("Jacobi identity", jacobi(&f, &g, &h).is_zero(), || {
            format!("{f}, {g}, {h}")
        });
        let x = s.field(2);
        let rest = x.sub(&hamiltonian_to_field(&x.pi_projection()));
        t.check("X - X_{pi X} is tangential", rest.is_tangential(), || x.to_string());
        let lie = density_lie_derivative(&hamiltonian_to_field(&f), &hamiltonian_weight, &g);
        t.eq(
            "L_{-1/(ell+1)}(X_f) g = {f, g}",
            &lie,
            &lagrange_bracket(&f, &g),
            || format!("f={f}, g={g}"),
        );
    }
    Ok(t.finish())
}

fn weights(cfg: &VerifyConfig) -> Result<SuiteReport> {
    let ell = cfg.ell;
    let mut t = Tally::new("weights", ell);
    let hm = subalgebra_basis(ell, Subalgebra::Hm);
    for m in Mono::all_up_to_degree(ell, 4) {
        let f = Poly::monomial(m);
        let w = field_weight(&f)?;
        for (i, h) in hm.iter().enumerate() {
            let got = lagrange_bracket(h, &f);
            t.eq(
                "h_m acts diagonally with the monomial weight",
                &got,
                &f.scale(&w.coords()[i]),
                || format!("h={h}, f={f}"),
            );
        }
    }
    let x3 = Poly::x(ell, 1).pow(3);
    let mut want = vec![int(0); ell + 1];
    want[0] = int(1);
    want[1] = int(-3);
    t.eq(
        "weight of X_{x_1^3}",
        &field_weight(&x3)?,
        &crate::weight::Weight::from_coords(want),
        String::new,
    );
    let neg = subalgebra_basis(ell, Subalgebra::NegativeRoots);
    for delta in [int(0), q(1, 3)] {
        for k in 0..=4u32 {
            for d in k..=2 * k {
                let v = Mono::one(ell).with(Var::Z, d - k).with(Var::Y(1), 2 * k - d);
                let p = ab(&delta, &v, &Poly::one(ell));
                for f in &neg {
                    t.run(
                        "lowest weight vector killed by negative roots",
                        action_fine(f, &p).map(|r| r.is_zero()),
                        || format!("f={f}, (k,d)=({k},{d})"),
                    );
                }
                let w = hm_weight(&p)?;
                let nu = lowest_weight(k, d, &delta, ell)?;
                t.check("lowest weight is nu^{k,d}_delta", w.as_ref() == Some(&nu), || {
                    format!("(k,d)=({k},{d}), delta={delta}: got {w:?}, expected {nu}")
                });
            }
        }
    }
    Ok(t.finish())
}

type SymbolMap = fn(&SymbolPoly) -> Result<SymbolPoly>;

fn divergences(cfg: &VerifyConfig) -> Result<SuiteReport> {
    let ell = cfg.ell;
    let mut t = Tally::new("divergences", ell);
    let delta = q(1, 3);
    let coeffs: Vec<Poly> = Mono::all_up_to_degree(ell, 3).into_iter().map(Poly::monomial).collect();
    let l = int(ell as i64);
    for (_, _, p) in fine_inputs(ell, 3, &coeffs, &delta) {
        let dc = p.div_c()?;
        let dt = p.div_t()?;
        let dl = p.delta_op()?;
        let lhs = dl.div_t()?.sub_raw(&dt.delta_op()?);
        let rhs = dc.scale_by(|m| &l + int((m.xy_degree()) as i64));
        t.eq("[Div_T, Delta] = (ell + E_ab) Div_C", &lhs, &rhs, || p.to_string());
        t.eq("[Div_C, Div_T] = 0", &dt.div_c()?, &dc.div_t()?, || p.to_string());
        t.eq("[Div_C, Delta] = 0", &dl.div_c()?, &dc.delta_op()?, || p.to_string());
        let full = p.to_xi_basis()?.full_divergence()?;
        t.eq("Div = Div_T + Div_C", &full, &dt.add_raw(&dc).to_xi_basis()?, || {
            p.to_string()
        });
    }
    let small: Vec<Poly> = Mono::all_up_to_degree(ell, 2).into_iter().map(Poly::monomial).collect();
    for f in subalgebra_basis(ell, Subalgebra::Tm) {
        for (_, _, p) in fine_inputs(ell, 3, &small, &delta) {
            let lp = action_fine(&f, &p)?;
            let ops: [(&str, SymbolMap); 3] = [
                ("Div_C is t_m-equivariant", SymbolPoly::div_c),
                ("Div_T is t_m-equivariant", SymbolPoly::div_t),
                ("Delta is t_m-equivariant", SymbolPoly::delta_op),
            ];
            for (name, op) in ops {
                let a = op(&lp)?;
                let b = action_fine(&f, &op(&p)?)?;
                t.eq(name, &a, &b, || format!("f={f}, P={p}"));
            }
        }
    }
    Ok(t.finish())
}

fn affine(cfg: &VerifyConfig) -> Result<SuiteReport> {
    let ell = cfg.ell;
    let mut t = Tally::new("affine", ell);
    let gens = affine_projective_generators(ell);
    let mut s = Sampler::new(ell, cfg.seed);
    let lambdas = [int(0), q(1, 3), q(1, 2), int(1)];
    let mut coeffs = coeff_set(ell);
    coeffs.push(s.nonzero_poly(2, 2));
    for lam in &lambdas {
        for delta in [int(0), q(1, 4)] {
            let mu = lam + &delta;
            let qz = Quantizer::new(ell, lam.clone(), mu.clone())?;
            for fib in Mono::all_up_to_degree(ell, cfg.max_order) {
                let k = fib.degree();
                for g in &coeffs {
                    let p = SymbolPoly::monomial(delta.clone(), Basis::Xi, fib.clone(), g.clone());
                    let op = qz.quantize_affine(&p)?;
                    t.eq(
                        "sigma^k o Q^a = id",
                        &principal_symbol(&op, k).with_delta(delta.clone()),
                        &p,
                        || format!("P={p}, lambda={lam}, delta={delta}"),
                    );
                    for x in &gens {
                        let lhs = op.module_action(x);
                        let rhs = qz.quantize_affine(&action_xi(x, &p)?)?;
                        t.eq("Q^a is a_m-equivariant", &lhs, &rhs, || {
                            format!("X={x}, P={p}, lambda={lam}, delta={delta}")
                        });
                    }
                }
            }
            for _ in 0..cfg.samples / 4 {
                let x = s.field(2);
                let p = normal_symbol(&DiffOp::from_field(&x));
                let op = qz.quantize_affine(&p.homogeneous_part(1))?;
                if delta.is_zero() {
                    t.eq(
                        "Q^a on degree 1 is L_lambda(X)",
                        &op,
                        &DiffOp::lie_derivative(&x, lam),
                        || x.to_string(),
                    );
                } else {
                    let want = DiffOp::from_field(&x)
                        .add_raw(&DiffOp::multiplication(x.divergence(), int(0)).scale(&(lam / (int(1) - &delta))))
                        .with_weights(lam.clone(), mu.clone());
                    t.eq("Q^a on degree 1 is X + lambda/(1-delta) Div X", &op, &want, || {
                        x.to_string()
                    });
                }
            }
        }
    }
    Ok(t.finish())
}

/// `beta_i d_zeta`.
fn beta_dzeta(p: &SymbolPoly, i: usize) -> SymbolPoly {
    let mut out = SymbolPoly::zero(p.ell(), p.delta().clone(), Basis::AlphaBeta);
    for (m, g) in p.terms() {
        let c = m.z();
        if c > 0 {
            out.add_scaled_term(m.with(Var::Z, c - 1).raise(Var::Y(i)), g, &int(c as i64));
        }
    }
    out
}

fn delta_pow(p: &SymbolPoly, s: u32) -> Result<SymbolPoly> {
    let mut out = p.clone();
    for _ in 0..s {
        out = out.delta_op()?;
    }
    Ok(out)
}

fn fine_pairs() -> [(Rational, Rational); 3] {
    [(q(1, 3), q(1, 3)), (int(0), q(1, 4)), (q(1, 5), q(2, 3))]
}

fn fine(cfg: &VerifyConfig) -> Result<SuiteReport> {
    let ell = cfg.ell;
    let mut t = Tally::new("fine", ell);
    let sm = subalgebra_basis(ell, Subalgebra::Sm);
    let coeffs = coeff_set(ell);
    let mut s = Sampler::new(ell, cfg.seed);
    let gens: Vec<Poly> = sm.iter().cloned().chain(cubic_sample(ell)).collect();
    let delta = q(1, 3);
    for (k, d) in fine_bidegrees(2) {
        for m in fine_monomials(ell, k, d) {
            let p = ab(&delta, &m, &Poly::x(ell, 1));
            for f in &gens {
                for g in &gens {
                    let lhs = action_fine(&lagrange_bracket(f, g), &p)?;
                    let rhs = action_fine(f, &action_fine(g, &p)?)?.sub_raw(&action_fine(g, &action_fine(f, &p)?)?);
                    t.eq("L^Sigma is a Lie action", &lhs, &rhs, || format!("f={f}, g={g}, P={p}"));
                }
            }
        }
    }
    for (lam, mu) in fine_pairs() {
        let delta = &mu - &lam;
        let qz = Quantizer::new(ell, lam.clone(), mu.clone())?;
        for (k, d, p) in fine_inputs(ell, cfg.max_order, &coeffs, &delta) {
            let op = qz.quantize(&p)?;
            t.eq(
                "fsigma^{k,d} o Q = id",
                &fine_symbol_at(&op, k, d).with_delta(delta.clone()),
                &p,
                || format!("P={p}, lambda={lam}, mu={mu}"),
            );
            t.run(
                "Q lands in D^{k,d}",
                op.bidegree().map(|(a, b)| a <= k && b <= d),
                || format!("P={p}"),
            );
            let sq = qz.prequantize(&p)?;
            for f in &sm {
                let lhs = op.module_action_hamiltonian(f);
                let rhs = qz.quantize(&action_fine(f, &p)?)?;
                t.eq("Q is s_m-equivariant", &lhs, &rhs, || {
                    format!("f={f}, P={p}, lambda={lam}, mu={mu}")
                });
                let x = hamiltonian_to_field(f);
                let a = action_xi(&x, &sq)?;
                let b = qz.prequantize(&action_fine(f, &p)?)?;
                t.eq("L^S o SQ = SQ o L^Sigma", &a, &b, || {
                    format!("f={f}, P={p}, delta={delta}")
                });
            }
            let shift = &delta * int(ell as i64 + 1);
            for i in 1..=ell {
                let f = &Poly::x(ell, i) * &Poly::z(ell);
                for sp in 1..=3u32 {
                    let ds = delta_pow(&p, sp)?;
                    let lhs = action_fine(&f, &ds)?.sub_raw(&delta_pow(&action_fine(&f, &p)?, sp)?);
                    let half = q(sp as i64 - 1, 2);
                    let inner = p.scale_by(|m| int(m.z() as i64) - &shift - &half);
                    let rhs = delta_pow(&beta_dzeta(&inner, i), sp - 1)?.scale(&-int(sp as i64));
                    t.eq("Delta^s commutator recursion", &lhs, &rhs, || {
                        format!("i={i}, s={sp}, P={p}")
                    });
                }
            }
        }
        for _ in 0..cfg.samples / 10 {
            let mut p = SymbolPoly::zero(ell, delta.clone(), Basis::AlphaBeta);
            for (k, d) in fine_bidegrees(cfg.max_order) {
                if s.gen_bool(0.5) {
                    p = p.add_raw(&s.fine_symbol(k, d, 2, &delta));
                }
            }
            if p.is_zero() {
                continue;
            }
            let comps = qz.dequantize(&qz.quantize(&p)?)?;
            t.check("Q^{-1} o Q = fine components", comps == p.fine_components()?, || {
                p.to_string()
            });
        }
    }
    Ok(t.finish())
}

fn subsymbol_suite(cfg: &VerifyConfig) -> Result<SuiteReport> {
    let ell = cfg.ell;
    let mut t = Tally::new("subsymbol", ell);
    let mut s = Sampler::new(ell, cfg.seed);
    let mut fs = subalgebra_basis(ell, Subalgebra::Sm);
    fs.extend(cubic_sample(ell));
    for (lam, mu) in fine_pairs() {
        for k in 1..=cfg.max_order {
            for _ in 0..cfg.samples / 10 {
                let low = s.diffop(k - 1, 2, 4, &lam, &mu);
                let got = subsymbol(&low, k, &lam, &mu)?;
                t.eq(
                    "subsymbol on D^{k-1} is fsigma^{k-1,2(k-1)}",
                    &got.part,
                    &fine_symbol_at(&low, k - 1, 2 * (k - 1)).with_delta(&mu - &lam),
                    || format!("T={low}, k={k}"),
                );
                let op = s.diffop(k, 2, 4, &lam, &mu);
                let ss = subsymbol(&op, k, &lam, &mu)?;
                let oracle = subsymbol_via_quantization(&op, k, &lam, &mu)?;
                t.eq("subsymbol = pi o Q^{-1}", &ss.part, &oracle.part, || format!("T={op}"));
                for f in &fs {
                    let lhs = subsymbol(&op.module_action_hamiltonian(f), k, &lam, &mu)?;
                    let rhs = action_fine(f, &ss.part)?;
                    t.eq("subsymbol is K-equivariant", &lhs.part, &rhs, || {
                        format!("f={f}, T={op}, lambda={lam}, mu={mu}")
                    });
                }
            }
        }
    }
    let h = q(1, 2);
    for _ in 0..cfg.samples {
        let k = s.gen_range(1, cfg.max_order);
        let op = s.diffop(k, 2, 5, &h, &h);
        let a = subsymbol(&op, k, &h, &h)?;
        let b = subsymbol_adjoint_oracle(&op, k)?;
        t.eq("subsymbol = 1/2 fsigma(T - (-1)^k T*)", &a.part, &b.part, || {
            format!("T={op}")
        });
    }
    Ok(t.finish())
}

/// Two presentations of the same operator built from the same random data.
fn presentations(s: &mut Sampler) -> (SecOp, SecOp) {
    let one = int(1);
    let (p, r) = (s.poly(2, 2), s.poly(2, 2));
    let (y2, y3) = (s.tangential(1), s.tangential(1));
    let (p3, y1, y1b) = (s.poly(2, 2), s.tangential(1), s.tangential(1));
    let common = s.secop();
    let bracket = y2.bracket(&y3);
    let h = bracket.pi_projection();
    let tangent_part = bracket.sub(&hamiltonian_to_field(&h));
    let mut a = common.clone();
    a = a
        .push(one.clone(), SecOpTerm::ContactContact(p.clone(), r.clone()))
        .push(one.clone(), SecOpTerm::TangentTangent(y2.clone(), y3.clone()))
        .push(one.clone(), SecOpTerm::ContactTangent(p3.clone(), y1.add(&y1b)));
    let mut b = common;
    b = b
        .push(one.clone(), SecOpTerm::ContactContact(r.clone(), p.clone()))
        .push(one.clone(), SecOpTerm::Contact(lagrange_bracket(&p, &r)))
        .push(one.clone(), SecOpTerm::TangentTangent(y3, y2))
        .push(one.clone(), SecOpTerm::Contact(h))
        .push(one.clone(), SecOpTerm::Tangent(tangent_part))
        .push(one.clone(), SecOpTerm::ContactTangent(p3.clone(), y1))
        .push(one, SecOpTerm::ContactTangent(p3, y1b));
    (a, b)
}

fn order_two(cfg: &VerifyConfig) -> Result<SuiteReport> {
    let ell = cfg.ell;
    let mut t = Tally::new("order-two", ell);
    let mut s = Sampler::new(ell, cfg.seed);
    for lam in [int(0), q(1, 3), q(1, 2), int(1)] {
        for _ in 0..cfg.samples {
            let sec = s.secop();
            let op = sec.assemble(ell, &lam)?;
            let structural = sec.structural_subsymbol(ell, &lam)?;
            let general = zeta_coefficient(&subsymbol(&op, 2, &lam, &lam)?);
            t.eq("structural formula = general formula", &structural, &general, || {
                format!("lambda={lam}, T={op}")
            });
            let explicit = subsymbol_order2_explicit(&op, &lam)?;
            t.eq("coordinate expansion = general formula", &explicit, &general, || {
                format!("lambda={lam}, T={op}")
            });
        }
        let c13 = SecOp::new().push(
            int(1),
            SecOpTerm::ContactTangent(Poly::z(ell), VectorField::generator(ell, Generator::A(1))),
        );
        let op = c13.assemble(ell, &lam)?;
        // (ell+1)(1 - 2 lambda) y_1 / (4(ell+2))
        let want = Poly::y(ell, 1).scale(&((int(1) - &lam * int(2)) * q(ell as i64 + 1, 4 * (ell as i64 + 2))));
        let got = zeta_coefficient(&subsymbol(&op, 2, &lam, &lam)?);
        t.eq("L(X_z) L(A_1) instance", &got, &want, || format!("lambda={lam}"));
        t.eq(
            "L(X_z) L(A_1) instance",
            &c13.structural_subsymbol(ell, &lam)?,
            &want,
            || format!("lambda={lam}"),
        );
        for _ in 0..(cfg.samples / 10).max(10) {
            let (a, b) = presentations(&mut s);
            let (ta, tb) = (a.assemble(ell, &lam)?, b.assemble(ell, &lam)?);
            t.eq("presentations assemble equally", &ta, &tb, String::new);
            let (sa, sb) = (a.structural_subsymbol(ell, &lam)?, b.structural_subsymbol(ell, &lam)?);
            t.eq("structural formula is presentation-independent", &sa, &sb, || {
                format!("lambda={lam}")
            });
        }
    }
    Ok(t.finish())
}

fn filtration(cfg: &VerifyConfig) -> Result<SuiteReport> {
    let ell = cfg.ell;
    let mut t = Tally::new("filtration", ell);
    let lam = q(1, 3);
    let cubics = cubic_sample(ell);
    let sm = subalgebra_basis(ell, Subalgebra::Sm);
    let coeffs = vec![Poly::one(ell), Poly::x(ell, 1), Poly::z(ell)];
    for delta in [int(0), q(1, 4)] {
        let mu = &lam + &delta;
        let qz = Quantizer::new(ell, lam.clone(), mu.clone())?;
        // the k' < k-1 pattern first has valid targets at (4,4) -> (2,4)
        let mut inputs: Vec<_> = fine_inputs(ell, cfg.max_order, &coeffs, &delta)
            .into_iter()
            .map(|x| (x, false))
            .collect();
        if cfg.max_order < 4 {
            for d in 4..=8 {
                for m in fine_monomials(ell, 4, d) {
                    inputs.push(((4, d, ab(&delta, &m, &Poly::one(ell))), true));
                }
            }
        }
        for ((k, d, p), cubic_only) in inputs {
            let b = 2 * d as i64 - k as i64;
            let fields: Vec<&Poly> = if cubic_only {
                cubics.iter().collect()
            } else {
                cubics.iter().chain(&sm).collect()
            };
            for f in fields {
                let comps = qz.pulled_back_action(f, &p)?;
                let diag = comps
                    .iter()
                    .find(|c| (c.k, c.d) == (k, d))
                    .map(|c| c.part.clone())
                    .unwrap_or_else(|| SymbolPoly::zero(ell, delta.clone(), Basis::AlphaBeta));
                t.eq("diagonal block is L^Sigma", &diag, &action_fine(f, &p)?, || {
                    format!("f={f}, P={p}")
                });
                let in_sm = sm.contains(f);
                if in_sm {
                    t.check(
                        "off-diagonal blocks vanish on s_m",
                        comps.iter().all(|c| (c.k, c.d) == (k, d)),
                        || format!("f={f}, P={p}"),
                    );
                    continue;
                }
                let top = comps.iter().map(|c| 2 * c.d as i64 - c.k as i64).max();
                t.check("D^(b) is invariant", top.is_none_or(|x| x <= b), || {
                    format!("f={f}, P={p}, b={b}, got {top:?}")
                });
                for (kp, dp) in fine_bidegrees(k) {
                    let case_i = kp + 1 == k && dp >= d;
                    let case_ii = kp + 1 < k && dp as i64 >= d as i64 - (k - kp) as i64 + 2;
                    if !(case_i || case_ii) {
                        continue;
                    }
                    let present = comps.iter().any(|c| (c.k, c.d) == (kp, dp));
                    let name = if case_i {
                        "block vanishing, k' = k-1"
                    } else {
                        "block vanishing, k' < k-1"
                    };
                    t.check(name, !present, || format!("f={f}, P={p}, block ({k},{d})->({kp},{dp})"));
                }
            }
        }
    }
    Ok(t.finish())
}

fn infchar(cfg: &VerifyConfig) -> Result<SuiteReport> {
    let ell = cfg.ell;
    let mut t = Tally::new("infchar", ell);
    let deltas = [int(0), q(1, 4), q(1, 3), q(1, 2), int(1), q(3, 2), int(2), q(5, 2)];
    let pairs: Vec<(u32, u32)> = fine_bidegrees(6);
    for delta in &deltas {
        let r = rho(ell);
        let mut keys = Vec::new();
        for &(k, d) in &pairs {
            let key = infchar_key(k, d, delta, ell)?;
            let w = &lowest_weight(k, d, delta, ell)? - &r;
            t.check(
                "key = |nu - rho| multiset",
                key.entries() == w.abs_multiset().as_slice(),
                || format!("(k,d)=({k},{d}), delta={delta}"),
            );
            keys.push((k, d, key, w));
        }
        for (k, d, key, w) in &keys {
            for (kp, dp, keyp, wp) in &keys {
                if !(kp < k || (kp == k && dp < d)) {
                    continue;
                }
                let cases = same_infchar_cases(*k, *d, *kp, *dp, delta, ell)?;
                let same = key == keyp;
                t.check("four cases iff keys equal", cases == same, || {
                    format!("({k},{d}) vs ({kp},{dp}), delta={delta}")
                });
                t.check("keys equal iff Weyl-equivalent", same == weyl_equivalent(w, wp), || {
                    format!("({k},{d}) vs ({kp},{dp}), delta={delta}")
                });
                if !is_contact_resonant(delta, ell) {
                    t.check("non-resonant delta separates all modules", !same, || {
                        format!("({k},{d}) vs ({kp},{dp}), delta={delta}")
                    });
                }
            }
        }
    }
    Ok(t.finish())
}

/// Claims `[A_1, B_1] = -d_z`.
fn falsified(cfg: &VerifyConfig) -> Result<SuiteReport> {
    let ell = cfg.ell;
    let mut t = Tally::new("falsified", ell);
    for m in Mono::all_up_to_degree(ell, 2) {
        let p = Poly::monomial(m);
        let c = p.apply_generator(Generator::B(1)).apply_generator(Generator::A(1))
            - p.apply_generator(Generator::A(1)).apply_generator(Generator::B(1));
        t.eq("[A_1, B_1] = -d_z", &c, &-p.diff(Var::Z), || p.to_string());
    }
    Ok(t.finish())
}
