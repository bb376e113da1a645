//! Symbols with polynomial coefficients, in either the cotangent coordinates
//! `xi` or the contact-adapted coordinates `(zeta, alpha, beta)`.
//!
//! Fiber exponent vectors use the base layout `[z, x_1..x_ell, y_1..y_ell]`, so
//! the fiber variable in slot `Var::Z` is `xi_z` or `zeta`, slot `Var::X(i)` is
//! `xi_{x_i}` or `alpha_i`, and slot `Var::Y(i)` is `xi_{y_i}` or `beta_i`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::fields::{hamiltonian_to_field, subalgebra_basis, Subalgebra, VectorField};
use crate::mono::{Mono, Var};
use crate::ops::{render_op, DiffOp};
use crate::poly::{contact_degree, Generator, Poly};
use crate::rational::{half, int, Rational};
use crate::weight::Weight;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Basis {
    Xi,
    AlphaBeta,
}

impl Basis {
    pub fn name(self) -> &'static str {
        match self {
            Basis::Xi => "xi",
            Basis::AlphaBeta => "alphabeta",
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SymbolPoly {
    ell: usize,
    delta: Rational,
    basis: Basis,
    terms: BTreeMap<Mono, Poly>,
}

/// The `(k, d)` fine component of a symbol in the `(zeta, alpha, beta)` basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FineComponent {
    pub k: u32,
    pub d: u32,
    pub part: SymbolPoly,
}

/// Fine bidegree `(c + |I| + |J|, 2c + |I| + |J|)` of `zeta^c alpha^I beta^J`.
pub fn fine_bidegree(m: &Mono) -> (u32, u32) {
    (m.degree(), m.heisenberg_degree())
}

/// All fiber monomials of fine bidegree `(k, d)`, i.e. `zeta^(d-k)` times
/// monomials of degree `2k - d` in `alpha, beta`.
pub fn fine_monomials(ell: usize, k: u32, d: u32) -> Vec<Mono> {
    if d < k || d > 2 * k {
        return Vec::new();
    }
    Mono::all_of_degree(ell, 2 * k - d)
        .into_iter()
        .filter(|m| m.z() == 0)
        .map(|m| m.with(Var::Z, d - k))
        .collect()
}

/// All valid `(k, d)` with `k <= max_k`, ordered by `k` then `d`.
pub fn fine_bidegrees(max_k: u32) -> Vec<(u32, u32)> {
    (0..=max_k).flat_map(|k| (k..=2 * k).map(move |d| (k, d))).collect()
}

fn add_into(map: &mut BTreeMap<Mono, Poly>, key: Mono, p: &Poly, c: &Rational) {
    if p.is_zero() || c.is_zero() {
        return;
    }
    let ell = p.ell();
    let slot = map.entry(key.clone()).or_insert_with(|| Poly::zero(ell));
    slot.add_scaled(p, c);
    if slot.is_zero() {
        map.remove(&key);
    }
}

impl SymbolPoly {
    pub fn zero(ell: usize, delta: Rational, basis: Basis) -> Self {
        SymbolPoly {
            ell,
            delta,
            basis,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms(
        ell: usize,
        delta: Rational,
        basis: Basis,
        terms: impl IntoIterator<Item = (Mono, Poly)>,
    ) -> Self {
        let mut s = SymbolPoly::zero(ell, delta, basis);
        for (m, p) in terms {
            s.add_term(m, &p);
        }
        s
    }

    /// `coeff * fiber`.
    pub fn monomial(delta: Rational, basis: Basis, fiber: Mono, coeff: Poly) -> Self {
        let ell = coeff.ell();
        SymbolPoly::from_terms(ell, delta, basis, [(fiber, coeff)])
    }

    /// A single fiber variable with coefficient 1.
    pub fn fiber_var(ell: usize, delta: Rational, basis: Basis, v: Var) -> Self {
        SymbolPoly::monomial(delta, basis, Mono::var(ell, v), Poly::one(ell))
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn delta(&self) -> &Rational {
        &self.delta
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn with_delta(mut self, delta: Rational) -> Self {
        self.delta = delta;
        self
    }

    /// Reinterprets the fiber variables in the other basis without substitution.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono, &Poly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, fiber: &Mono) -> Poly {
        self.terms.get(fiber).cloned().unwrap_or_else(|| Poly::zero(self.ell))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, fiber: Mono, p: &Poly) {
        add_into(&mut self.terms, fiber, p, &Rational::one());
    }

    pub fn add_scaled_term(&mut self, fiber: Mono, p: &Poly, c: &Rational) {
        add_into(&mut self.terms, fiber, p, c);
    }

    fn check_basis(&self, b: Basis) -> Result<()> {
        if self.basis != b {
            return Err(Error::BasisMismatch {
                expected: b.name(),
                found: self.basis.name(),
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &SymbolPoly) -> Result<SymbolPoly> {
        other.check_basis(self.basis)?;
        Ok(self.add_raw(other))
    }

    pub fn try_sub(&self, other: &SymbolPoly) -> Result<SymbolPoly> {
        other.check_basis(self.basis)?;
        Ok(self.sub_raw(other))
    }

    pub(crate) fn add_raw(&self, other: &SymbolPoly) -> SymbolPoly {
        let mut out = self.clone();
        out.add_assign_scaled(other, &Rational::one());
        out
    }

    pub(crate) fn sub_raw(&self, other: &SymbolPoly) -> SymbolPoly {
        let mut out = self.clone();
        out.add_assign_scaled(other, &-Rational::one());
        out
    }

    pub(crate) fn add_assign_scaled(&mut self, other: &SymbolPoly, c: &Rational) {
        debug_assert_eq!(self.basis, other.basis);
        for (m, p) in &other.terms {
            add_into(&mut self.terms, m.clone(), p, c);
        }
    }

    pub fn scale(&self, c: &Rational) -> SymbolPoly {
        let mut out = SymbolPoly::zero(self.ell, self.delta.clone(), self.basis);
        out.add_assign_scaled(self, c);
        out
    }

    /// Multiplies every coefficient by `g`.
    pub fn mul_poly(&self, g: &Poly) -> SymbolPoly {
        self.map_coeffs(|p| g * p)
    }

    pub fn map_coeffs(&self, f: impl Fn(&Poly) -> Poly) -> SymbolPoly {
        let mut out = SymbolPoly::zero(self.ell, self.delta.clone(), self.basis);
        for (m, p) in &self.terms {
            out.add_term(m.clone(), &f(p));
        }
        out
    }

    /// Product in the commutative ring of symbols.
    pub fn try_mul(&self, other: &SymbolPoly) -> Result<SymbolPoly> {
        other.check_basis(self.basis)?;
        Ok(self.mul_raw(other))
    }

    fn mul_raw(&self, other: &SymbolPoly) -> SymbolPoly {
        let mut out = SymbolPoly::zero(self.ell, self.delta.clone(), self.basis);
        for (m, p) in &self.terms {
            for (n, q) in &other.terms {
                out.add_term(m.mul(n), &(p * q));
            }
        }
        out
    }

    fn one_like(&self) -> SymbolPoly {
        SymbolPoly::monomial(self.delta.clone(), self.basis, Mono::one(self.ell), Poly::one(self.ell))
    }

    /// Maximal fiber degree; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Mono::degree).max()
    }

    /// Terms of fiber degree exactly `k`.
    pub fn homogeneous_part(&self, k: u32) -> SymbolPoly {
        self.filter(|m| m.degree() == k)
    }

    fn filter(&self, keep: impl Fn(&Mono) -> bool) -> SymbolPoly {
        let mut out = SymbolPoly::zero(self.ell, self.delta.clone(), self.basis);
        for (m, p) in &self.terms {
            if keep(m) {
                out.terms.insert(m.clone(), p.clone());
            }
        }
        out
    }

    /// `c * v * d_w P` on the fiber variables, with `v = None` meaning 1.
    fn fiber_derivation(&self, c: &Poly, v: Option<Var>, w: Var) -> SymbolPoly {
        let mut out = SymbolPoly::zero(self.ell, self.delta.clone(), self.basis);
        if c.is_zero() {
            return out;
        }
        for (m, p) in &self.terms {
            if let Some((e, lowered)) = m.lower(w) {
                let key = match v {
                    Some(v) => lowered.raise(v),
                    None => lowered,
                };
                add_into(&mut out.terms, key, &(c * p), &int(e as i64));
            }
        }
        out
    }

    /// Substitutes each fiber variable by a linear symbol in the target basis.
    fn substitute(&self, images: &[SymbolPoly], target: Basis) -> SymbolPoly {
        let ell = self.ell;
        let mut out = SymbolPoly::zero(ell, self.delta.clone(), target);
        let mut powers: Vec<Vec<SymbolPoly>> = images.iter().map(|im| vec![im.one_like()]).collect();
        for (m, p) in &self.terms {
            let mut acc = SymbolPoly::monomial(self.delta.clone(), target, Mono::one(ell), p.clone());
            for (slot, &e) in m.exps().iter().enumerate() {
                while powers[slot].len() <= e as usize {
                    let next = powers[slot].last().unwrap().mul_raw(&images[slot]);
                    powers[slot].push(next);
                }
                acc = acc.mul_raw(&powers[slot][e as usize]);
            }
            out.add_assign_scaled(&acc, &Rational::one());
        }
        out
    }

    /// `xi_z = zeta`, `xi_{x_i} = alpha_i - y_i zeta / 2`, `xi_{y_i} = -beta_i + x_i zeta / 2`.
    pub fn to_fine_basis(&self) -> Result<SymbolPoly> {
        self.check_basis(Basis::Xi)?;
        let ell = self.ell;
        let d = &self.delta;
        let var = |v: Var| SymbolPoly::fiber_var(ell, d.clone(), Basis::AlphaBeta, v);
        let zeta = var(Var::Z);
        let mut images = vec![zeta.clone()];
        for i in 1..=ell {
            images.push(var(Var::X(i)).sub_raw(&zeta.mul_poly(&Poly::y(ell, i).scale(&half()))));
        }
        for i in 1..=ell {
            images.push(zeta.mul_poly(&Poly::x(ell, i).scale(&half())).sub_raw(&var(Var::Y(i))));
        }
        Ok(self.substitute(&images, Basis::AlphaBeta))
    }

    /// `zeta = xi_z`, `alpha_i = xi_{x_i} + y_i xi_z / 2`, `beta_i = -xi_{y_i} + x_i xi_z / 2`.
    pub fn to_xi_basis(&self) -> Result<SymbolPoly> {
        self.check_basis(Basis::AlphaBeta)?;
        let ell = self.ell;
        let d = &self.delta;
        let var = |v: Var| SymbolPoly::fiber_var(ell, d.clone(), Basis::Xi, v);
        let xz = var(Var::Z);
        let mut images = vec![xz.clone()];
        for i in 1..=ell {
            images.push(var(Var::X(i)).add_raw(&xz.mul_poly(&Poly::y(ell, i).scale(&half()))));
        }
        for i in 1..=ell {
            images.push(xz.mul_poly(&Poly::x(ell, i).scale(&half())).sub_raw(&var(Var::Y(i))));
        }
        Ok(self.substitute(&images, Basis::Xi))
    }

    /// Partition by fine bidegree, in increasing `(k, d)`.
    pub fn fine_components(&self) -> Result<Vec<FineComponent>> {
        self.check_basis(Basis::AlphaBeta)?;
        let mut parts: BTreeMap<(u32, u32), SymbolPoly> = BTreeMap::new();
        for (m, p) in &self.terms {
            parts
                .entry(fine_bidegree(m))
                .or_insert_with(|| SymbolPoly::zero(self.ell, self.delta.clone(), Basis::AlphaBeta))
                .add_term(m.clone(), p);
        }
        Ok(parts
            .into_iter()
            .map(|((k, d), part)| FineComponent { k, d, part })
            .collect())
    }

    /// The `(k, d)` fine component.
    pub fn fine_projection(&self, k: u32, d: u32) -> Result<SymbolPoly> {
        self.check_basis(Basis::AlphaBeta)?;
        Ok(self.filter(|m| fine_bidegree(m) == (k, d)))
    }

    /// `Div_C = d_z d_zeta`.
    pub fn div_c(&self) -> Result<SymbolPoly> {
        self.check_basis(Basis::AlphaBeta)?;
        let mut out = SymbolPoly::zero(self.ell, self.delta.clone(), self.basis);
        for (m, p) in &self.terms {
            if let Some((e, lowered)) = m.lower(Var::Z) {
                add_into(&mut out.terms, lowered, &p.diff(Var::Z), &int(e as i64));
            }
        }
        Ok(out)
    }

    /// `Div_T = A_r d_{alpha_r} + B_r d_{beta_r}`.
    pub fn div_t(&self) -> Result<SymbolPoly> {
        self.check_basis(Basis::AlphaBeta)?;
        let mut out = SymbolPoly::zero(self.ell, self.delta.clone(), self.basis);
        for (m, p) in &self.terms {
            for r in 1..=self.ell {
                for (v, g) in [(Var::X(r), Generator::A(r)), (Var::Y(r), Generator::B(r))] {
                    if let Some((e, lowered)) = m.lower(v) {
                        add_into(&mut out.terms, lowered, &p.apply_generator(g), &int(e as i64));
                    }
                }
            }
        }
        Ok(out)
    }

    /// `Delta = (alpha_r B_r - beta_r A_r) d_zeta`.
    pub fn delta_op(&self) -> Result<SymbolPoly> {
        self.check_basis(Basis::AlphaBeta)?;
        let mut out = SymbolPoly::zero(self.ell, self.delta.clone(), self.basis);
        for (m, p) in &self.terms {
            if let Some((e, lowered)) = m.lower(Var::Z) {
                let e = int(e as i64);
                for r in 1..=self.ell {
                    add_into(
                        &mut out.terms,
                        lowered.raise(Var::X(r)),
                        &p.apply_generator(Generator::B(r)),
                        &e,
                    );
                    add_into(
                        &mut out.terms,
                        lowered.raise(Var::Y(r)),
                        &p.apply_generator(Generator::A(r)),
                        &-e.clone(),
                    );
                }
            }
        }
        Ok(out)
    }

    /// `Div = sum_u d_u d_{xi_u}` in the `xi` basis.
    pub fn full_divergence(&self) -> Result<SymbolPoly> {
        self.check_basis(Basis::Xi)?;
        let mut out = SymbolPoly::zero(self.ell, self.delta.clone(), self.basis);
        for (m, p) in &self.terms {
            for v in Var::all(self.ell) {
                if let Some((e, lowered)) = m.lower(v) {
                    add_into(&mut out.terms, lowered, &p.diff(v), &int(e as i64));
                }
            }
        }
        Ok(out)
    }

    /// Multiplies each fiber monomial by `f(monomial)`.
    pub(crate) fn scale_by(&self, f: impl Fn(&Mono) -> Rational) -> SymbolPoly {
        let mut out = SymbolPoly::zero(self.ell, self.delta.clone(), self.basis);
        for (m, p) in &self.terms {
            add_into(&mut out.terms, m.clone(), p, &f(m));
        }
        out
    }

    pub fn to_latex(&self) -> String {
        let names: [&str; 3] = match self.basis {
            Basis::Xi => ["\\xi_{z}", "\\xi_{x_{%}}", "\\xi_{y_{%}}"],
            Basis::AlphaBeta => ["\\zeta", "\\alpha_{%}", "\\beta_{%}"],
        };
        render_op(
            self.sorted_terms().into_iter(),
            |m| fiber_latex(m, names),
            |p| p.to_latex(),
            true,
        )
    }

    fn sorted_terms(&self) -> Vec<(&Mono, &Poly)> {
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| {
            (b.0.degree(), b.0.heisenberg_degree(), b.0).cmp(&(a.0.degree(), a.0.heisenberg_degree(), a.0))
        });
        terms
    }
}

fn fiber_latex(m: &Mono, names: [&str; 3]) -> String {
    let ell = m.ell();
    let mut parts = Vec::new();
    for v in Var::all(ell) {
        let e = m.get(v);
        if e == 0 {
            continue;
        }
        let base = match v {
            Var::Z => names[0].to_string(),
            Var::X(i) => names[1].replace('%', &i.to_string()),
            Var::Y(i) => names[2].replace('%', &i.to_string()),
        };
        parts.push(if e == 1 { base } else { format!("{base}^{{{e}}}") });
    }
    parts.join(" ")
}

pub(crate) fn fiber_text(m: &Mono, basis: Basis) -> String {
    let ell = m.ell();
    let mut parts = Vec::new();
    for v in Var::all(ell) {
        let e = m.get(v);
        if e == 0 {
            continue;
        }
        let base = match (basis, v) {
            (Basis::Xi, Var::Z) => "xiz".to_string(),
            (Basis::Xi, Var::X(i)) => format!("xix{i}"),
            (Basis::Xi, Var::Y(i)) => format!("xiy{i}"),
            (Basis::AlphaBeta, Var::Z) => "zeta".to_string(),
            (Basis::AlphaBeta, Var::X(i)) => format!("alpha{i}"),
            (Basis::AlphaBeta, Var::Y(i)) => format!("beta{i}"),
        };
        parts.push(if e == 1 { base } else { format!("{base}^{e}") });
    }
    parts.join("*")
}

/// Text form such as `-zeta + x1*alpha1*beta1`, parseable as a symbol expression.
impl fmt::Display for SymbolPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let basis = self.basis;
        let s = render_op(
            self.sorted_terms().into_iter(),
            |m| fiber_text(m, basis),
            Poly::to_string,
            false,
        );
        f.write_str(&s)
    }
}

impl fmt::Debug for SymbolPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SymbolPoly[{}]({self})", self.basis.name())
    }
}

/// `N^{-1}(T)`: replaces `d_z^c d_x^I d_y^J` by `xi_z^c xi_x^I xi_y^J`.
pub fn normal_symbol(t: &DiffOp) -> SymbolPoly {
    SymbolPoly::from_terms(
        t.ell(),
        t.delta(),
        Basis::Xi,
        t.terms().map(|(k, p)| (k.clone(), p.clone())),
    )
}

/// Normal-order quantization `N`, producing an operator `F_lambda -> F_{lambda + delta}`.
pub fn normal_quantize(p: &SymbolPoly, lambda: &Rational) -> Result<DiffOp> {
    p.check_basis(Basis::Xi)?;
    Ok(DiffOp::from_terms(
        p.ell,
        lambda.clone(),
        lambda + &p.delta,
        p.terms().map(|(k, c)| (k.clone(), c.clone())),
    ))
}

/// Principal symbol `sigma^k` in the `xi` basis.
pub fn principal_symbol(t: &DiffOp, k: u32) -> SymbolPoly {
    normal_symbol(&t.homogeneous_part(k))
}

/// Fine symbol `f sigma^{k,d}(T)` for `(k, d)` the bidegree of `T`, read off the
/// Heisenberg normal form.
pub fn fine_symbol(t: &DiffOp) -> Result<FineComponent> {
    let (k, d) = t.bidegree()?;
    let part = fine_symbol_at(t, k, d);
    Ok(FineComponent { k, d, part })
}

/// The `(k, d)` coefficient block of the Heisenberg form, as a fine symbol:
/// `g A^I B^J d_z^c` contributes `g alpha^I beta^J zeta^c`.
pub fn fine_symbol_at(t: &DiffOp, k: u32, d: u32) -> SymbolPoly {
    let h = t.heisenberg_form();
    SymbolPoly::from_terms(
        t.ell(),
        t.delta(),
        Basis::AlphaBeta,
        h.terms()
            .filter(|(m, _)| fine_bidegree(m) == (k, d))
            .map(|(m, p)| (m.clone(), p.clone())),
    )
}

/// The same fine symbol computed from the principal symbol in the `xi` basis.
pub fn fine_symbol_via_principal(t: &DiffOp, k: u32, d: u32) -> SymbolPoly {
    principal_symbol(t, k)
        .to_fine_basis()
        .expect("principal symbol is in the xi basis")
        .fine_projection(k, d)
        .expect("converted symbol is in the fine basis")
}

/// `L^S_delta(X)` in the `xi` basis for an arbitrary vector field:
/// `X + delta Div(X) - (d_{u_i} X_j) xi_j d_{xi_i}`.
pub fn action_xi(x: &VectorField, p: &SymbolPoly) -> Result<SymbolPoly> {
    p.check_basis(Basis::Xi)?;
    let ell = p.ell;
    let mut out = p.map_coeffs(|c| x.apply(c));
    out.add_assign_scaled(&p.mul_poly(&x.divergence()), &p.delta);
    for vi in Var::all(ell) {
        for vj in Var::all(ell) {
            let c = x.coeff(vj).diff(vi);
            out = out.sub_raw(&p.fiber_derivation(&c, Some(vj), vi));
        }
    }
    Ok(out)
}

/// `L^Sigma_delta(X_f)` on the fine basis. With `sym_ij = (A_i B_j + B_j A_i)(f) / 2`:
///
/// `X_f` on coefficients `+ d_z(f) (delta (ell+1) - E_zeta - E_alphabeta / 2)`
/// `+ sym_ij (beta_i d_{beta_j} - alpha_j d_{alpha_i})`
/// `+ A_i A_j(f) beta_i d_{alpha_j} - B_i B_j(f) alpha_i d_{beta_j}`.
pub fn action_fine(f: &Poly, p: &SymbolPoly) -> Result<SymbolPoly> {
    p.check_basis(Basis::AlphaBeta)?;
    let ell = p.ell;
    let xf = hamiltonian_to_field(f);
    let mut out = p.map_coeffs(|c| xf.apply(c));
    let fz = f.diff(Var::Z);
    if !fz.is_zero() {
        let shift = &p.delta * int(ell as i64 + 1);
        let scalar = p.scale_by(|m| &shift - int(m.z() as i64) - Rational::new(m.xy_degree().into(), 2.into()));
        out = out.add_raw(&scalar.mul_poly(&fz));
    }
    let af: Vec<Poly> = (1..=ell).map(|i| f.apply_generator(Generator::A(i))).collect();
    let bf: Vec<Poly> = (1..=ell).map(|i| f.apply_generator(Generator::B(i))).collect();
    for i in 1..=ell {
        for j in 1..=ell {
            let ab = af[i - 1].apply_generator(Generator::B(j));
            let ba = bf[j - 1].apply_generator(Generator::A(i));
            let sym = (&ab + &ba).scale(&half());
            out = out
                .add_raw(&p.fiber_derivation(&sym, Some(Var::Y(i)), Var::Y(j)))
                .sub_raw(&p.fiber_derivation(&sym, Some(Var::X(j)), Var::X(i)));
            let aa = af[j - 1].apply_generator(Generator::A(i));
            out = out.add_raw(&p.fiber_derivation(&aa, Some(Var::Y(i)), Var::X(j)));
            let bb = bf[j - 1].apply_generator(Generator::B(i));
            out = out.sub_raw(&p.fiber_derivation(&bb, Some(Var::X(i)), Var::Y(j)));
        }
    }
    Ok(out)
}

/// `L^S_delta(X_f)` on the fine basis:
/// `L^Sigma_delta(X_f) + (d_z A_i(f) beta_i - d_z B_i(f) alpha_i) d_zeta`.
pub fn action_principal(f: &Poly, p: &SymbolPoly) -> Result<SymbolPoly> {
    let mut out = action_fine(f, p)?;
    let fz = f.diff(Var::Z);
    for i in 1..=p.ell {
        let za = fz.apply_generator(Generator::A(i));
        let zb = fz.apply_generator(Generator::B(i));
        out = out
            .add_raw(&p.fiber_derivation(&za, Some(Var::Y(i)), Var::Z))
            .sub_raw(&p.fiber_derivation(&zb, Some(Var::X(i)), Var::Z));
    }
    Ok(out)
}

/// Eigen-decomposition under the total weight operator
/// `W = (E_z + E_xy/2) - (E_zeta + E_alphabeta/2) + delta (ell+1)`, increasing.
pub fn total_weight_decompose(p: &SymbolPoly) -> Result<Vec<(Rational, SymbolPoly)>> {
    p.check_basis(Basis::AlphaBeta)?;
    let shift = &p.delta * int(p.ell as i64 + 1);
    let mut parts: BTreeMap<Rational, SymbolPoly> = BTreeMap::new();
    for (fib, c) in &p.terms {
        let fw = contact_degree(fib);
        for (base, a) in c.terms() {
            let w = &contact_degree(base) - &fw + &shift;
            parts
                .entry(w)
                .or_insert_with(|| SymbolPoly::zero(p.ell, p.delta.clone(), Basis::AlphaBeta))
                .add_term(fib.clone(), &Poly::term(p.ell, base.clone(), a.clone()));
        }
    }
    Ok(parts.into_iter().collect())
}

/// True iff every `u_m` generator annihilates `p` under `L^Sigma_delta`.
pub fn um_invariants_check(p: &SymbolPoly) -> Result<bool> {
    for f in subalgebra_basis(p.ell, Subalgebra::Um) {
        if !action_fine(&f, p)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The `h_m`-weight of `p` under `L^Sigma_delta`, if `p` is a weight vector.
/// Coordinates are eigenvalues of `2X_z, X_{x_1 y_1}, .., X_{x_ell y_ell}`.
pub fn hm_weight(p: &SymbolPoly) -> Result<Option<Weight>> {
    if p.is_zero() {
        return Ok(None);
    }
    let (fib, c) = p.terms().next().unwrap();
    let (base, a) = c.terms().next().unwrap();
    let mut coords = Vec::new();
    for h in subalgebra_basis(p.ell, Subalgebra::Hm) {
        let img = action_fine(&h, p)?;
        let lambda = img.coeff(fib).coeff(base) / a;
        if img != p.scale(&lambda) {
            return Ok(None);
        }
        coords.push(lambda);
    }
    Ok(Some(Weight::from_coords(coords)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    const L: usize = 1;

    fn ab(fiber: Mono, coeff: Poly) -> SymbolPoly {
        SymbolPoly::monomial(Rational::zero(), Basis::AlphaBeta, fiber, coeff)
    }
    fn zeta() -> Mono {
        Mono::var(L, Var::Z)
    }
    fn alpha1() -> Mono {
        Mono::var(L, Var::X(1))
    }
    fn beta1() -> Mono {
        Mono::var(L, Var::Y(1))
    }
    fn one() -> Poly {
        Poly::one(L)
    }

    #[test]
    fn normal_symbol_examples() {
        let t = DiffOp::multiplication(Poly::z(L), int(0))
            .compose(&DiffOp::partial(Mono::from_parts(2, &[0], &[0])))
            .unwrap();
        let s = normal_symbol(&t);
        assert_eq!(s.to_string(), "z*xiz^2");
        assert_eq!(normal_quantize(&s, &int(0)).unwrap(), t);
        let g = DiffOp::multiplication(Poly::x(L, 1), int(0));
        assert_eq!(normal_symbol(&g).to_string(), "x1");
    }

    #[test]
    fn basis_change_examples() {
        let xi = |v| SymbolPoly::fiber_var(L, int(0), Basis::Xi, v);
        assert_eq!(
            xi(Var::X(1)).to_fine_basis().unwrap().to_string(),
            "-1/2*y1*zeta + alpha1"
        );
        let z = ab(zeta(), one());
        assert_eq!(z.to_xi_basis().unwrap(), xi(Var::Z));
        let prod = xi(Var::X(1)).try_mul(&xi(Var::Y(1))).unwrap().to_fine_basis().unwrap();
        let a = ab(alpha1(), one()).sub_raw(&ab(zeta(), Poly::y(L, 1).scale(&half())));
        let b = ab(zeta(), Poly::x(L, 1).scale(&half())).sub_raw(&ab(beta1(), one()));
        assert_eq!(prod, a.try_mul(&b).unwrap());
        assert_eq!(
            prod.to_xi_basis().unwrap(),
            xi(Var::X(1)).try_mul(&xi(Var::Y(1))).unwrap()
        );
        assert!(z.to_fine_basis().is_err());
    }

    #[test]
    fn fine_component_examples() {
        let c = ab(zeta(), one()).fine_components().unwrap();
        assert_eq!((c[0].k, c[0].d), (1, 2));
        let c = ab(alpha1().mul(&beta1()), one()).fine_components().unwrap();
        assert_eq!((c.len(), c[0].k, c[0].d), (1, 2, 2));
        let p = ab(zeta().mul(&alpha1()), one()).add_raw(&ab(zeta().mul(&zeta()), one()));
        let c = p.fine_components().unwrap();
        assert_eq!(c.iter().map(|c| (c.k, c.d)).collect::<Vec<_>>(), vec![(2, 3), (2, 4)]);
        assert_eq!(fine_monomials(1, 2, 3).len(), 2);
        assert_eq!(fine_bidegrees(2).len(), 6);
    }

    #[test]
    fn action_fine_examples() {
        let d = q(1, 3);
        let p = ab(alpha1().mul(&zeta()), &Poly::x(L, 1) * &Poly::z(L)).with_delta(d.clone());
        let dz = p.map_coeffs(|c| c.diff(Var::Z));
        assert_eq!(action_fine(&one(), &p).unwrap(), dz);
        for (k, dd) in fine_bidegrees(3) {
            for m in fine_monomials(L, k, dd) {
                let p = ab(m, one()).with_delta(d.clone());
                let w = &d * int(2) - Rational::new(dd.into(), 2.into());
                assert_eq!(action_fine(&Poly::z(L), &p).unwrap(), p.scale(&w));
            }
        }
        let x1sq = Poly::x(L, 1).pow(2);
        assert_eq!(
            action_fine(&x1sq, &ab(alpha1(), one())).unwrap(),
            ab(beta1(), Poly::constant(L, int(2)))
        );
    }

    #[test]
    fn action_principal_examples() {
        let p = ab(zeta(), one());
        let xz = &Poly::x(L, 1) * &Poly::z(L);
        let diff = action_principal(&xz, &p)
            .unwrap()
            .sub_raw(&action_fine(&xz, &p).unwrap());
        assert_eq!(diff, ab(beta1(), one()));
        let z2 = Poly::z(L).pow(2);
        let diff = action_principal(&z2, &p)
            .unwrap()
            .sub_raw(&action_fine(&z2, &p).unwrap());
        let expect = ab(beta1(), Poly::y(L, 1)).sub_raw(&ab(alpha1(), Poly::x(L, 1)));
        assert_eq!(diff, expect);
        for f in subalgebra_basis(L, Subalgebra::Tm) {
            let p = ab(zeta().mul(&alpha1()), Poly::z(L));
            assert_eq!(action_principal(&f, &p).unwrap(), action_fine(&f, &p).unwrap());
        }
    }

    #[test]
    fn principal_action_matches_cotangent_lift() {
        let fs = [
            Poly::x(L, 1).pow(3),
            &Poly::z(L).pow(2) * &Poly::y(L, 1),
            &Poly::x(L, 1) * &Poly::z(L),
        ];
        for f in &fs {
            let xf = hamiltonian_to_field(f);
            for (k, d) in fine_bidegrees(2) {
                for m in fine_monomials(L, k, d) {
                    let p = ab(m, &Poly::x(L, 1) + &Poly::z(L)).with_delta(q(2, 7));
                    let lhs = action_principal(f, &p).unwrap();
                    let rhs = action_xi(&xf, &p.to_xi_basis().unwrap())
                        .unwrap()
                        .to_fine_basis()
                        .unwrap();
                    assert_eq!(lhs, rhs, "{f} on {p}");
                }
            }
        }
    }

    #[test]
    fn weight_examples() {
        let p = ab(zeta(), Poly::z(L));
        let w = total_weight_decompose(&p).unwrap();
        assert_eq!(w, vec![(int(0), p)]);
        let p = ab(alpha1(), Poly::x(L, 1));
        assert_eq!(total_weight_decompose(&p).unwrap()[0].0, int(0));
        let p = ab(zeta().mul(&beta1()), one()).with_delta(q(1, 3));
        assert_eq!(total_weight_decompose(&p).unwrap()[0].0, q(2, 3) - q(3, 2));
    }

    #[test]
    fn um_invariant_examples() {
        assert!(um_invariants_check(&ab(zeta().mul(&alpha1()).mul(&beta1()), one())).unwrap());
        assert!(!um_invariants_check(&ab(zeta(), Poly::z(L))).unwrap());
        assert!(um_invariants_check(&SymbolPoly::zero(L, int(0), Basis::AlphaBeta)).unwrap());
    }

    #[test]
    fn divergence_examples() {
        assert_eq!(ab(zeta(), Poly::z(L)).div_c().unwrap(), ab(Mono::one(L), one()));
        assert_eq!(ab(zeta(), Poly::x(L, 1)).delta_op().unwrap(), ab(beta1(), -one()));
        assert_eq!(ab(alpha1(), Poly::x(L, 1)).div_t().unwrap(), ab(Mono::one(L), one()));
        let xi = SymbolPoly::monomial(int(0), Basis::Xi, Mono::from_parts(2, &[0], &[0]), Poly::z(L));
        assert_eq!(
            xi.full_divergence().unwrap(),
            SymbolPoly::monomial(int(0), Basis::Xi, zeta(), Poly::constant(L, int(2)))
        );
    }

    #[test]
    fn lowest_weight_vector() {
        let p = ab(zeta().mul(&beta1()).mul(&beta1()), one()).with_delta(q(1, 3));
        assert_eq!(
            hm_weight(&p).unwrap(),
            Some(Weight::from_coords(vec![q(4, 3) - int(4), int(-2)]))
        );
        for f in subalgebra_basis(L, Subalgebra::NegativeRoots) {
            assert!(action_fine(&f, &p).unwrap().is_zero(), "{f}");
        }
    }

    #[test]
    fn fine_symbol_two_routes() {
        let a = DiffOp::generator(L, Generator::A(1));
        let t = DiffOp::multiplication(Poly::z(L), int(0))
            .compose(&DiffOp::partial(Mono::from_parts(1, &[1], &[0])))
            .unwrap()
            .add_raw(&a.compose(&a).unwrap());
        // d_x1 = A1 - y1/2 d_z puts a zeta^2 term into z d_z d_x1
        let fs = fine_symbol(&t).unwrap();
        assert_eq!((fs.k, fs.d), (2, 4));
        assert_eq!(fs.part, fine_symbol_via_principal(&t, 2, 4));
        let zy = (&Poly::z(L) * &Poly::y(L, 1)).scale(&q(-1, 2));
        assert_eq!(fs.part, ab(zeta().mul(&zeta()), zy));
        assert_eq!(fine_symbol_at(&t, 2, 3), fine_symbol_via_principal(&t, 2, 3));
        assert_eq!(fine_symbol_at(&t, 2, 3), ab(zeta().mul(&alpha1()), Poly::z(L)));
    }
}
