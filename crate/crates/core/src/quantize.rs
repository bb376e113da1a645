//! Equivariant quantizations, their inverses, the subsymbol and the fine filtration.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::fields::{hamiltonian_to_field, lagrange_bracket, VectorField};
use crate::mono::{Mono, Var};
use crate::ops::DiffOp;
use crate::poly::Poly;
use crate::rational::{binomial, factorial, int, q, to_natural, Rational};
use crate::symbol::{normal_quantize, normal_symbol, Basis, FineComponent, SymbolPoly};

/// `delta` in `{1 + n/(m+1) : n in N}`.
pub fn is_projectively_resonant(delta: &Rational, m: usize) -> bool {
    to_natural(&((delta - int(1)) * int(m as i64 + 1))).is_some()
}

/// `2 delta (ell+1)` in `2 + N`.
pub fn is_contact_resonant(delta: &Rational, ell: usize) -> bool {
    to_natural(&(delta * int(2 * (ell as i64 + 1)) - int(2))).is_some()
}

/// For `a = 2 + n` with `n` natural, the first `(k, s)` with `s <= k` whose
/// binomial `C(2k - a, s)` vanishes.
fn first_vanishing(n: usize) -> (usize, usize) {
    let k = (n + 3) / 2;
    (k, 2 * k - 1 - n)
}

/// The first vanishing denominator `(k, s)` of the affine quantization, if any.
pub fn projective_witness(delta: &Rational, ell: usize) -> Option<(usize, usize)> {
    let n = to_natural(&((delta - int(1)) * int(2 * ell as i64 + 2)))?;
    Some(first_vanishing(n))
}

/// The first vanishing denominator `(c, s)` of the fine prequantization, if any.
pub fn contact_witness(delta: &Rational, ell: usize) -> Option<(usize, usize)> {
    let n = to_natural(&(delta * int(2 * (ell as i64 + 1)) - int(2)))?;
    Some(first_vanishing(n))
}

fn check_projective(delta: &Rational, ell: usize) -> Result<()> {
    match projective_witness(delta, ell) {
        Some((k, s)) => Err(Error::projective(delta, k, s)),
        None => Ok(()),
    }
}

fn check_contact(delta: &Rational, ell: usize) -> Result<()> {
    match contact_witness(delta, ell) {
        Some((c, s)) => Err(Error::contact(delta, c, s)),
        None => Ok(()),
    }
}

/// `C_s(k) / s!` for `s = 0..=k`, with
/// `C_s(k) = C(k + lambda(m+1) - 1, s) / C(2k - delta(m+1) + m - 1, s)`.
pub fn affine_coefficients(k: u32, lambda: &Rational, delta: &Rational, ell: usize) -> Result<Vec<Rational>> {
    let m1 = int(2 * ell as i64 + 2);
    let top = int(k as i64) + lambda * &m1 - int(1);
    let bottom = int(2 * k as i64) - delta * &m1 + &m1 - int(2);
    let mut out = Vec::with_capacity(k as usize + 1);
    for s in 0..=k as usize {
        let den = binomial(&bottom, s) * factorial(s);
        if den.is_zero() {
            return Err(Error::projective(delta, k as usize, s));
        }
        out.push(binomial(&top, s) / den);
    }
    Ok(out)
}

/// `2^s / ((s!)^2 C(2c - 2 delta(ell+1), s))` for `s = 0..=c`.
pub fn fine_coefficients(c: u32, delta: &Rational, ell: usize) -> Result<Vec<Rational>> {
    let a = int(2 * c as i64) - delta * int(2 * (ell as i64 + 1));
    let mut out = Vec::with_capacity(c as usize + 1);
    for s in 0..=c as usize {
        let f = factorial(s);
        let den = binomial(&a, s) * &f * &f;
        if den.is_zero() {
            return Err(Error::contact(delta, c as usize, s));
        }
        out.push(int(1 << s) / den);
    }
    Ok(out)
}

/// The `a_m`-equivariant quantization of a symbol in the `xi` basis:
/// `N(sum_s C_s(k)/s! Div^s P_k)` on each homogeneous degree `k`.
pub fn quantize_affine(p: &SymbolPoly, lambda: &Rational, mu: &Rational) -> Result<DiffOp> {
    let delta = mu - lambda;
    check_projective(&delta, p.ell())?;
    affine_raw(p, lambda, &delta)
}

fn affine_raw(p: &SymbolPoly, lambda: &Rational, delta: &Rational) -> Result<DiffOp> {
    if p.basis() != Basis::Xi {
        return Err(Error::BasisMismatch {
            expected: "xi",
            found: p.basis().name(),
        });
    }
    let p = p.clone().with_delta(delta.clone());
    let mut acc = SymbolPoly::zero(p.ell(), delta.clone(), Basis::Xi);
    for k in 0..=p.degree().unwrap_or(0) {
        let pk = p.homogeneous_part(k);
        if pk.is_zero() {
            continue;
        }
        let coeffs = affine_coefficients(k, lambda, delta, p.ell())?;
        let mut term = pk;
        for (s, c) in coeffs.iter().enumerate() {
            if s > 0 {
                term = term.full_divergence()?;
            }
            if term.is_zero() {
                break;
            }
            acc.add_assign_scaled(&term, c);
        }
    }
    normal_quantize(&acc, lambda)
}

/// `SQ(P) = sum_s 2^s/(s!)^2 Delta^s C(2E_zeta - 2delta(ell+1), s)^{-1} P`,
/// returned in the `xi` basis.
pub fn prequantize_fine(p: &SymbolPoly, delta: &Rational) -> Result<SymbolPoly> {
    check_contact(delta, p.ell())?;
    prequantize_raw(p, delta)
}

fn prequantize_raw(p: &SymbolPoly, delta: &Rational) -> Result<SymbolPoly> {
    if p.basis() != Basis::AlphaBeta {
        return Err(Error::BasisMismatch {
            expected: "alphabeta",
            found: p.basis().name(),
        });
    }
    let p = p.clone().with_delta(delta.clone());
    let mut by_c: BTreeMap<u32, SymbolPoly> = BTreeMap::new();
    for (m, g) in p.terms() {
        by_c.entry(m.z())
            .or_insert_with(|| SymbolPoly::zero(p.ell(), delta.clone(), Basis::AlphaBeta))
            .add_term(m.clone(), g);
    }
    let mut acc = SymbolPoly::zero(p.ell(), delta.clone(), Basis::AlphaBeta);
    for (c, pc) in by_c {
        let coeffs = fine_coefficients(c, delta, p.ell())?;
        let mut term = pc;
        for (s, k) in coeffs.iter().enumerate() {
            if s > 0 {
                term = term.delta_op()?;
            }
            if term.is_zero() {
                break;
            }
            acc.add_assign_scaled(&term, k);
        }
    }
    acc.to_xi_basis()
}

/// The fine `s_m`-equivariant quantization `Q^{a_m} o SQ` of a symbol in the
/// `(zeta, alpha, beta)` basis. Both resonance conditions are checked.
pub fn quantize_fine(p: &SymbolPoly, lambda: &Rational, mu: &Rational) -> Result<DiffOp> {
    Quantizer::new(p.ell(), lambda.clone(), mu.clone())?.quantize(p)
}

/// Fine components `P` with `quantize_fine(sum P) = T`, by downward induction on
/// the leading fine bidegree.
pub fn inverse_quantize(t: &DiffOp, lambda: &Rational, mu: &Rational) -> Result<Vec<FineComponent>> {
    Quantizer::new(t.ell(), lambda.clone(), mu.clone())?.dequantize(t)
}

/// Quantizations at fixed non-resonant weights `(lambda, mu)`, with the
/// coefficient tables precomputed up to a fixed order.
#[derive(Clone, Debug)]
pub struct Quantizer {
    ell: usize,
    lambda: Rational,
    mu: Rational,
    delta: Rational,
    affine: Vec<Vec<Rational>>,
    fine: Vec<Vec<Rational>>,
}

const TABLE_ORDER: u32 = 8;

impl Quantizer {
    pub fn new(ell: usize, lambda: Rational, mu: Rational) -> Result<Self> {
        let delta = &mu - &lambda;
        check_contact(&delta, ell)?;
        check_projective(&delta, ell)?;
        let affine = (0..=TABLE_ORDER)
            .map(|k| affine_coefficients(k, &lambda, &delta, ell))
            .collect::<Result<_>>()?;
        let fine = (0..=TABLE_ORDER)
            .map(|c| fine_coefficients(c, &delta, ell))
            .collect::<Result<_>>()?;
        Ok(Quantizer {
            ell,
            lambda,
            mu,
            delta,
            affine,
            fine,
        })
    }

    pub fn lambda(&self) -> &Rational {
        &self.lambda
    }

    pub fn mu(&self) -> &Rational {
        &self.mu
    }

    pub fn delta(&self) -> &Rational {
        &self.delta
    }

    fn affine_table(&self, k: u32) -> Result<std::borrow::Cow<'_, [Rational]>> {
        match self.affine.get(k as usize) {
            Some(t) => Ok(t.as_slice().into()),
            None => Ok(affine_coefficients(k, &self.lambda, &self.delta, self.ell)?.into()),
        }
    }

    fn fine_table(&self, c: u32) -> Result<std::borrow::Cow<'_, [Rational]>> {
        match self.fine.get(c as usize) {
            Some(t) => Ok(t.as_slice().into()),
            None => Ok(fine_coefficients(c, &self.delta, self.ell)?.into()),
        }
    }

    pub fn quantize_affine(&self, p: &SymbolPoly) -> Result<DiffOp> {
        if p.basis() != Basis::Xi {
            return Err(Error::BasisMismatch {
                expected: "xi",
                found: p.basis().name(),
            });
        }
        let p = p.clone().with_delta(self.delta.clone());
        let mut acc = SymbolPoly::zero(self.ell, self.delta.clone(), Basis::Xi);
        for k in 0..=p.degree().unwrap_or(0) {
            let pk = p.homogeneous_part(k);
            if pk.is_zero() {
                continue;
            }
            let mut term = pk;
            for (s, c) in self.affine_table(k)?.iter().enumerate() {
                if s > 0 {
                    term = term.full_divergence()?;
                }
                if term.is_zero() {
                    break;
                }
                acc.add_assign_scaled(&term, c);
            }
        }
        normal_quantize(&acc, &self.lambda)
    }

    pub fn prequantize(&self, p: &SymbolPoly) -> Result<SymbolPoly> {
        if p.basis() != Basis::AlphaBeta {
            return Err(Error::BasisMismatch {
                expected: "alphabeta",
                found: p.basis().name(),
            });
        }
        let mut acc = SymbolPoly::zero(self.ell, self.delta.clone(), Basis::AlphaBeta);
        let mut by_c: BTreeMap<u32, SymbolPoly> = BTreeMap::new();
        for (m, g) in p.terms() {
            by_c.entry(m.z())
                .or_insert_with(|| SymbolPoly::zero(self.ell, self.delta.clone(), Basis::AlphaBeta))
                .add_term(m.clone(), g);
        }
        for (c, pc) in by_c {
            let mut term = pc;
            for (s, k) in self.fine_table(c)?.iter().enumerate() {
                if s > 0 {
                    term = term.delta_op()?;
                }
                if term.is_zero() {
                    break;
                }
                acc.add_assign_scaled(&term, k);
            }
        }
        acc.to_xi_basis()
    }

    pub fn quantize(&self, p: &SymbolPoly) -> Result<DiffOp> {
        self.quantize_affine(&self.prequantize(p)?)
    }

    pub fn dequantize(&self, t: &DiffOp) -> Result<Vec<FineComponent>> {
        if t.is_zero() {
            return Err(Error::ZeroOperator("fine symbol decomposition"));
        }
        let mut rest = t.clone().with_weights(self.lambda.clone(), self.mu.clone());
        let mut parts: BTreeMap<(u32, u32), SymbolPoly> = BTreeMap::new();
        while let Some(k) = rest.order() {
            let top = normal_symbol(&rest.homogeneous_part(k)).to_fine_basis()?;
            let lead = top
                .fine_components()?
                .pop()
                .expect("nonzero principal symbol has a fine component");
            rest = rest.try_sub(&self.quantize(&lead.part)?)?;
            parts
                .entry((lead.k, lead.d))
                .or_insert_with(|| SymbolPoly::zero(self.ell, self.delta.clone(), Basis::AlphaBeta))
                .add_assign_scaled(&lead.part, &Rational::one());
        }
        Ok(parts
            .into_iter()
            .filter(|(_, p)| !p.is_zero())
            .map(|((k, d), part)| FineComponent { k, d, part })
            .collect())
    }

    /// `max(2d - k)` over the fine components of `T`.
    pub fn fine_filtration_degree(&self, t: &DiffOp) -> Result<i64> {
        let comps = self.dequantize(t)?;
        Ok(comps
            .iter()
            .map(|c| 2 * c.d as i64 - c.k as i64)
            .max()
            .expect("nonzero operator has a component"))
    }

    /// All fine components of `Q^{-1} o L_{lambda,mu}(X_f) o Q (P)`.
    pub fn pulled_back_action(&self, f: &Poly, p: &SymbolPoly) -> Result<Vec<FineComponent>> {
        let t = self.quantize(p)?.module_action_hamiltonian(f);
        if t.is_zero() {
            return Ok(Vec::new());
        }
        self.dequantize(&t)
    }

    /// The `(k', d')` block of the pulled-back action applied to `P`.
    pub fn pulled_back_action_entry(&self, f: &Poly, p: &SymbolPoly, dst: (u32, u32)) -> Result<SymbolPoly> {
        Ok(self
            .pulled_back_action(f, p)?
            .into_iter()
            .find(|c| (c.k, c.d) == dst)
            .map(|c| c.part)
            .unwrap_or_else(|| SymbolPoly::zero(self.ell, self.delta.clone(), Basis::AlphaBeta)))
    }
}

/// `max(2d - k)` over the fine components of `T`.
pub fn fine_filtration_degree(t: &DiffOp, lambda: &Rational, mu: &Rational) -> Result<i64> {
    Quantizer::new(t.ell(), lambda.clone(), mu.clone())?.fine_filtration_degree(t)
}

/// The bidegrees `(k, d)` with `2d - k = b`, i.e. the fine symbol modules of
/// the graded piece `D^(b) / D^(b-1)`.
pub fn graded_pieces(b: i64) -> Vec<(u32, u32)> {
    if b < 0 {
        return Vec::new();
    }
    (0..=b)
        .filter(|k| (b + k) % 2 == 0)
        .map(|k| (k as u32, ((b + k) / 2) as u32))
        .filter(|&(k, d)| k <= d && d <= 2 * k)
        .collect()
}

/// The block `(src) -> (dst)` of the pulled-back action, on a single fine symbol.
pub fn pulled_back_action_entry(
    f: &Poly,
    p: &SymbolPoly,
    dst: (u32, u32),
    lambda: &Rational,
    mu: &Rational,
) -> Result<SymbolPoly> {
    Quantizer::new(p.ell(), lambda.clone(), mu.clone())?.pulled_back_action_entry(f, p, dst)
}

/// `(k - 1 + 2 lambda (ell+1)) / (2(k-1) - 2(delta-1)(ell+1))`, or the excluded-value error.
fn subsymbol_coefficient(k: u32, lambda: &Rational, delta: &Rational, ell: usize) -> Result<Rational> {
    let l1 = int(ell as i64 + 1);
    let num = int(k as i64 - 1) + int(2) * lambda * &l1;
    let den = int(2 * (k as i64 - 1)) - int(2) * (delta - int(1)) * &l1;
    if den.is_zero() {
        return Err(Error::SubsymbolExcluded {
            delta: crate::rational::fmt_rational(delta),
            k: k as usize,
        });
    }
    Ok(num / den)
}

/// The contact subsymbol of an operator of order at most `k`:
/// `pi_{k-1,2(k-1)} (1 - c Div) N^{-1}(T)`.
pub fn subsymbol(t: &DiffOp, k: u32, lambda: &Rational, mu: &Rational) -> Result<FineComponent> {
    if k == 0 {
        return Err(Error::Domain("subsymbol needs order k >= 1".into()));
    }
    if t.order().is_some_and(|o| o > k) {
        return Err(Error::Domain(format!(
            "operator has order {} > {k}",
            t.order().unwrap()
        )));
    }
    let ell = t.ell();
    let delta = mu - lambda;
    let c = subsymbol_coefficient(k, lambda, &delta, ell)?;
    let n = normal_symbol(t).with_delta(delta.clone());
    let mut s = n.homogeneous_part(k - 1);
    s.add_assign_scaled(&n.homogeneous_part(k).full_divergence()?, &-c);
    let part = s.to_fine_basis()?.fine_projection(k - 1, 2 * (k - 1))?;
    Ok(FineComponent {
        k: k - 1,
        d: 2 * (k - 1),
        part,
    })
}

/// The subsymbol read off the fine decomposition, `pi_{k-1,2(k-1)} o Q^{-1}`.
/// Needs non-resonant `delta`.
pub fn subsymbol_via_quantization(t: &DiffOp, k: u32, lambda: &Rational, mu: &Rational) -> Result<FineComponent> {
    if k == 0 {
        return Err(Error::Domain("subsymbol needs order k >= 1".into()));
    }
    let delta = mu - lambda;
    let zero = FineComponent {
        k: k - 1,
        d: 2 * (k - 1),
        part: SymbolPoly::zero(t.ell(), delta, Basis::AlphaBeta),
    };
    if t.is_zero() {
        return Ok(zero);
    }
    Ok(inverse_quantize(t, lambda, mu)?
        .into_iter()
        .find(|c| (c.k, c.d) == (k - 1, 2 * (k - 1)))
        .unwrap_or(zero))
}

/// The coefficient `g` of `zeta^(k-1)` in a subsymbol; for `k = 2` it is the
/// contact Hamiltonian of the subsymbol.
pub fn zeta_coefficient(c: &FineComponent) -> Poly {
    c.part.coeff(&Mono::one(c.part.ell()).with(Var::Z, c.k))
}

/// One summand of a second-order operator on `F_lambda` written through
/// contact fields `X_phi` and tangential fields `Y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SecOpTerm {
    /// `L(X_phi1) o L(X_phi2)`
    ContactContact(Poly, Poly),
    /// `L(X_phi3) o L(Y1)`
    ContactTangent(Poly, VectorField),
    /// `L(Y2) o L(Y3)`
    TangentTangent(VectorField, VectorField),
    /// `L(X_phi4)`
    Contact(Poly),
    /// `L(Y4)`
    Tangent(VectorField),
    /// multiplication by `f`
    Function(Poly),
}

/// A linear combination of [`SecOpTerm`]s.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SecOp {
    pub terms: Vec<(Rational, SecOpTerm)>,
}

impl SecOp {
    pub fn new() -> Self {
        SecOp::default()
    }

    pub fn push(mut self, c: Rational, t: SecOpTerm) -> Self {
        self.terms.push((c, t));
        self
    }

    fn check_tangential(&self) -> Result<()> {
        for (_, t) in &self.terms {
            let ys: Vec<&VectorField> = match t {
                SecOpTerm::ContactTangent(_, y) | SecOpTerm::Tangent(y) => vec![y],
                SecOpTerm::TangentTangent(a, b) => vec![a, b],
                _ => vec![],
            };
            for y in ys {
                let h = y.pi_projection();
                if !h.is_zero() {
                    return Err(Error::NotTangential(h.to_string()));
                }
            }
        }
        Ok(())
    }

    /// The operator itself, `F_lambda -> F_lambda`.
    pub fn assemble(&self, ell: usize, lambda: &Rational) -> Result<DiffOp> {
        self.check_tangential()?;
        let l = |x: &VectorField| DiffOp::lie_derivative(x, lambda);
        let lx = |f: &Poly| DiffOp::lie_derivative(&hamiltonian_to_field(f), lambda);
        let mut out = DiffOp::zero(ell, lambda.clone(), lambda.clone());
        for (c, t) in &self.terms {
            let op = match t {
                SecOpTerm::ContactContact(a, b) => lx(a).compose(&lx(b))?,
                SecOpTerm::ContactTangent(a, y) => lx(a).compose(&l(y))?,
                SecOpTerm::TangentTangent(y2, y3) => l(y2).compose(&l(y3))?,
                SecOpTerm::Contact(a) => lx(a),
                SecOpTerm::Tangent(y) => l(y),
                SecOpTerm::Function(f) => DiffOp::multiplication(f.clone(), lambda.clone()),
            };
            out = out.try_add(&op.scale(c))?;
        }
        Ok(out)
    }

    /// The Hamiltonian of the subsymbol given by the intrinsic formula
    /// `1/2 {phi1, phi2} - (ell+1)/(ell+2) (lambda - 1/2) L(Y1) phi3 + 1/2 pi[Y2, Y3] + phi4`.
    pub fn structural_subsymbol(&self, ell: usize, lambda: &Rational) -> Result<Poly> {
        self.check_tangential()?;
        let h = q(1, 2);
        let c13 = -(q(ell as i64 + 1, ell as i64 + 2) * (lambda - &h));
        let weight = q(-1, ell as i64 + 1);
        let mut out = Poly::zero(ell);
        for (c, t) in &self.terms {
            match t {
                SecOpTerm::ContactContact(a, b) => out.add_scaled(&lagrange_bracket(a, b), &(c * &h)),
                SecOpTerm::ContactTangent(a, y) => out.add_scaled(&y.lie_derivative(&weight, a), &(c * &c13)),
                SecOpTerm::TangentTangent(y2, y3) => out.add_scaled(&y2.bracket(y3).pi_projection(), &(c * &h)),
                SecOpTerm::Contact(a) => out.add_scaled(a, c),
                SecOpTerm::Tangent(_) | SecOpTerm::Function(_) => {}
            }
        }
        Ok(out)
    }
}

/// The intrinsic subsymbol formula for
/// `L(X_phi1)L(X_phi2) + L(X_phi3)L(Y1) + L(Y2)L(Y3) + L(X_phi4) + L(Y4) + f`.
#[allow(clippy::too_many_arguments)]
pub fn subsymbol_order2_structural(
    phi: [&Poly; 4],
    ys: [&VectorField; 4],
    f: &Poly,
    lambda: &Rational,
) -> Result<Poly> {
    let one = Rational::one();
    SecOp::new()
        .push(one.clone(), SecOpTerm::ContactContact(phi[0].clone(), phi[1].clone()))
        .push(one.clone(), SecOpTerm::ContactTangent(phi[2].clone(), ys[0].clone()))
        .push(one.clone(), SecOpTerm::TangentTangent(ys[1].clone(), ys[2].clone()))
        .push(one.clone(), SecOpTerm::Contact(phi[3].clone()))
        .push(one.clone(), SecOpTerm::Tangent(ys[3].clone()))
        .push(one, SecOpTerm::Function(f.clone()))
        .structural_subsymbol(f.ell(), lambda)
}

/// Coordinate expansion of the order-2 subsymbol for `T: F_lambda -> F_lambda`,
/// written with symmetric second-order coefficients `S_ab` (summed over ordered
/// pairs, so `S_ab` is half the normal-ordered coefficient of `d_a d_b` for `a != b`):
///
/// `-(1 + 2 lambda(ell+1))/(ell+2) sum_a d_a(S_az - y_i S_{a x_i}/2 + x_i S_{a y_i}/2)
///  + T_z - y_i T_{x_i}/2 + x_i T_{y_i}/2`.
pub fn subsymbol_order2_explicit(t: &DiffOp, lambda: &Rational) -> Result<Poly> {
    if t.order().is_some_and(|o| o > 2) {
        return Err(Error::Domain("expected an operator of order <= 2".into()));
    }
    let ell = t.ell();
    let vars: Vec<Var> = Var::all(ell).collect();
    let sym = |a: Var, b: Var| -> Poly {
        let key = Mono::var(ell, a).mul(&Mono::var(ell, b));
        let c = t.coeff(&key);
        if a == b {
            c
        } else {
            c.scale(&q(1, 2))
        }
    };
    // contact 1-form pairing: z -> 1, x_i -> -y_i/2, y_i -> x_i/2
    let theta = |v: Var| -> Poly {
        match v {
            Var::Z => Poly::one(ell),
            Var::X(i) => Poly::y(ell, i).scale(&q(-1, 2)),
            Var::Y(i) => Poly::x(ell, i).scale(&q(1, 2)),
        }
    };
    let mut inner = Poly::zero(ell);
    for &a in &vars {
        let mut s = Poly::zero(ell);
        for &b in &vars {
            s += &(&theta(b) * &sym(a, b));
        }
        inner += &s.diff(a);
    }
    let l1 = int(ell as i64 + 1);
    let c = -((int(1) + int(2) * lambda * &l1) / int(ell as i64 + 2));
    let mut out = inner.scale(&c);
    for &b in &vars {
        out += &(&theta(b) * &t.coeff(&Mono::var(ell, b)));
    }
    Ok(out)
}

/// `1/2 f sigma^{k-1, 2(k-1)}(T - (-1)^k T^*)`, which equals the subsymbol when
/// `lambda + mu = 1`.
pub fn subsymbol_adjoint_oracle(t: &DiffOp, k: u32) -> Result<FineComponent> {
    if k == 0 {
        return Err(Error::Domain("subsymbol needs order k >= 1".into()));
    }
    let adj = t.adjoint();
    let sign = if k.is_multiple_of(2) { int(1) } else { int(-1) };
    let diff = t.try_sub(&adj.scale(&sign))?;
    let part = crate::symbol::fine_symbol_at(&diff, k - 1, 2 * (k - 1)).scale(&q(1, 2));
    Ok(FineComponent {
        k: k - 1,
        d: 2 * (k - 1),
        part,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Generator;

    const L: usize = 1;

    fn ab(m: Mono, c: Poly, d: &Rational) -> SymbolPoly {
        SymbolPoly::monomial(d.clone(), Basis::AlphaBeta, m, c)
    }
    fn zeta() -> Mono {
        Mono::var(L, Var::Z)
    }

    #[test]
    fn resonance_examples() {
        assert!(is_projectively_resonant(&int(1), 3));
        assert!(!is_projectively_resonant(&int(0), 3));
        assert!(is_projectively_resonant(&q(5, 4), 3));
        assert!(is_contact_resonant(&q(1, 2), 1));
        assert!(is_contact_resonant(&q(1, 3), 2));
        assert!(!is_contact_resonant(&int(0), 1));
        assert!(is_contact_resonant(&q(3, 4), 1));
        assert!(!is_contact_resonant(&q(1, 4), 1));
    }

    #[test]
    fn witnesses_are_first_zeros() {
        for n in 0..12i64 {
            let d = int(1) + q(n, 4);
            let (k, s) = projective_witness(&d, 1).unwrap();
            assert!(affine_coefficients(k as u32, &int(0), &d, 1).is_err());
            assert!(affine_coefficients(k as u32 - 1, &int(0), &d, 1).is_ok());
            let _ = s;
            let d = q(2 + n, 4);
            let (c, _) = contact_witness(&d, 1).unwrap();
            assert!(fine_coefficients(c as u32, &d, 1).is_err());
            assert!(fine_coefficients(c as u32 - 1, &d, 1).is_ok());
        }
        // contact resonance contains projective resonance
        for n in 0..40i64 {
            let d = int(1) + q(n, 4);
            assert!(is_contact_resonant(&d, 1));
        }
    }

    #[test]
    fn affine_degree_one_is_lie_derivative() {
        let lam = q(1, 3);
        let x = VectorField::along(Var::Y(1), &Poly::x(L, 1) * &Poly::z(L))
            .add(&VectorField::along(Var::Z, Poly::z(L).pow(2)));
        let p = normal_symbol(&DiffOp::from_field(&x)).with_delta(int(0));
        let t = quantize_affine(&p, &lam, &lam).unwrap();
        assert_eq!(t, DiffOp::lie_derivative(&x, &lam));
        let g = SymbolPoly::monomial(int(0), Basis::Xi, Mono::one(L), Poly::x(L, 1));
        assert_eq!(
            quantize_affine(&g, &lam, &lam).unwrap(),
            DiffOp::multiplication(Poly::x(L, 1), lam.clone())
        );
    }

    #[test]
    fn prequantize_examples() {
        let d = q(1, 4);
        let p = ab(Mono::var(L, Var::X(1)), Poly::x(L, 1), &d);
        assert_eq!(prequantize_fine(&p, &d).unwrap(), p.to_xi_basis().unwrap());
        let z = ab(zeta(), Poly::one(L), &d);
        assert_eq!(prequantize_fine(&z, &d).unwrap(), z.to_xi_basis().unwrap());
        let xz = ab(zeta(), Poly::x(L, 1), &d);
        let b = ab(Mono::var(L, Var::Y(1)), Poly::one(L), &d);
        let expect = xz.sub_raw(&b.scale(&(int(1) / (int(1) - &d * int(2)))));
        assert_eq!(prequantize_fine(&xz, &d).unwrap(), expect.to_xi_basis().unwrap());
        assert!(matches!(
            prequantize_fine(&xz, &q(1, 2)),
            Err(Error::ContactResonance { .. })
        ));
    }

    #[test]
    fn quantize_fine_round_trip() {
        let (lam, mu) = (q(1, 3), q(1, 3));
        let qz = Quantizer::new(L, lam.clone(), mu.clone()).unwrap();
        assert_eq!(
            qz.quantize(&ab(Mono::one(L), Poly::one(L), &int(0))).unwrap(),
            DiffOp::identity(L, lam.clone())
        );
        let p = ab(zeta().mul(&zeta()), Poly::x(L, 1), &int(0))
            .add_raw(&ab(zeta().raise(Var::Y(1)), Poly::z(L), &int(0)))
            .add_raw(&ab(Mono::var(L, Var::X(1)), Poly::one(L), &int(0)));
        let t = qz.quantize(&p).unwrap();
        let comps = qz.dequantize(&t).unwrap();
        assert_eq!(comps, p.fine_components().unwrap());
    }

    #[test]
    fn filtration_examples() {
        let (lam, mu) = (q(1, 3), q(1, 3));
        let t = quantize_fine(&ab(zeta().mul(&zeta()), Poly::one(L), &int(0)), &lam, &mu).unwrap();
        assert_eq!(fine_filtration_degree(&t, &lam, &mu).unwrap(), 6);
        assert_eq!(graded_pieces(6), vec![(2, 4), (4, 5), (6, 6)]);
        let g = DiffOp::multiplication(Poly::x(L, 1), lam.clone());
        assert_eq!(fine_filtration_degree(&g, &lam, &mu).unwrap(), 0);
    }

    #[test]
    fn subsymbol_examples() {
        let h = q(1, 2);
        let dz = DiffOp::partial(Mono::var(L, Var::Z)).with_weights(h.clone(), h.clone());
        let s = subsymbol(&dz, 2, &h, &h).unwrap();
        assert_eq!(s.part, ab(zeta(), Poly::one(L), &int(0)));
        let dz2 = dz.pow(2);
        assert!(subsymbol(&dz2, 2, &h, &h).unwrap().part.is_zero());
        let t = DiffOp::multiplication(Poly::z(L), h.clone()).compose(&dz2).unwrap();
        let s = subsymbol(&t, 2, &h, &h).unwrap();
        assert_eq!(zeta_coefficient(&s), -Poly::one(L));
        assert_eq!(subsymbol_adjoint_oracle(&t, 2).unwrap(), s);
        // excluded value delta = (ell + k)/(ell + 1)
        assert!(matches!(
            subsymbol(&t, 2, &int(0), &q(3, 2)),
            Err(Error::SubsymbolExcluded { .. })
        ));
    }

    #[test]
    fn order_two_examples() {
        let lam = q(2, 7);
        let zero = Poly::zero(L);
        let zf = VectorField::zero(L);
        let phi4 = &Poly::x(L, 1) * &Poly::z(L);
        let s = subsymbol_order2_structural([&zero, &zero, &zero, &phi4], [&zf, &zf, &zf, &zf], &zero, &lam).unwrap();
        assert_eq!(s, phi4);
        let a1 = VectorField::generator(L, Generator::A(1));
        let b1 = VectorField::generator(L, Generator::B(1));
        let s =
            subsymbol_order2_structural([&zero, &zero, &phi4, &zero], [&a1, &zf, &zf, &zf], &zero, &q(1, 2)).unwrap();
        assert!(s.is_zero());
        let s = subsymbol_order2_structural([&zero, &zero, &zero, &zero], [&zf, &a1, &b1, &zf], &zero, &lam).unwrap();
        assert_eq!(s, Poly::constant(L, q(1, 2)));
        assert!(subsymbol_order2_structural(
            [&zero; 4],
            [&VectorField::partial(L, Var::Z), &zf, &zf, &zf],
            &zero,
            &lam
        )
        .is_err());
    }

    #[test]
    fn c13_instance() {
        // T = L(X_z) o L(A_1)
        for lam in [int(0), q(1, 3), q(1, 2), int(1)] {
            let op = SecOp::new().push(
                int(1),
                SecOpTerm::ContactTangent(Poly::z(L), VectorField::generator(L, Generator::A(1))),
            );
            let t = op.assemble(L, &lam).unwrap();
            let s = zeta_coefficient(&subsymbol(&t, 2, &lam, &lam).unwrap());
            let expect = Poly::y(L, 1).scale(&((int(1) - &lam * int(2)) / int(6)));
            assert_eq!(s, expect);
            assert_eq!(op.structural_subsymbol(L, &lam).unwrap(), expect);
            assert_eq!(subsymbol_order2_explicit(&t, &lam).unwrap(), expect);
        }
    }
}
