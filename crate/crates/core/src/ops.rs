//! Differential operators between tensor densities, in normal order and in
//! Heisenberg PBW order.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::fields::{hamiltonian_to_field, VectorField};
use crate::mono::{binom_u64, Mono, Var};
use crate::poly::{Generator, Poly};
use crate::rational::{fmt_rational, int, Rational};

/// `sum_K g_K d^K` with coefficients on the left, acting `F_lambda -> F_mu`.
/// Keys are derivative exponents `(c, I, J)` for `d_z^c d_x^I d_y^J`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DiffOp {
    ell: usize,
    lambda: Rational,
    mu: Rational,
    terms: BTreeMap<Mono, Poly>,
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

impl DiffOp {
    pub fn zero(ell: usize, lambda: Rational, mu: Rational) -> Self {
        DiffOp {
            ell,
            lambda,
            mu,
            terms: BTreeMap::new(),
        }
    }

    /// Operator with weights `(0, 0)`; use [`DiffOp::with_weights`] to retag.
    pub fn untagged(ell: usize) -> Self {
        DiffOp::zero(ell, Rational::zero(), Rational::zero())
    }

    pub fn from_terms(
        ell: usize,
        lambda: Rational,
        mu: Rational,
        terms: impl IntoIterator<Item = (Mono, Poly)>,
    ) -> Self {
        let mut op = DiffOp::zero(ell, lambda, mu);
        for (k, p) in terms {
            op.add_term(k, &p);
        }
        op
    }

    /// Multiplication by `g`, as an operator `F_lambda -> F_lambda`.
    pub fn multiplication(g: Poly, lambda: Rational) -> Self {
        let ell = g.ell();
        DiffOp::from_terms(ell, lambda.clone(), lambda, [(Mono::one(ell), g)])
    }

    pub fn identity(ell: usize, lambda: Rational) -> Self {
        DiffOp::multiplication(Poly::one(ell), lambda)
    }

    /// `d^K` with weights `(0, 0)`.
    pub fn partial(k: Mono) -> Self {
        let ell = k.ell();
        DiffOp::from_terms(ell, Rational::zero(), Rational::zero(), [(k, Poly::one(ell))])
    }

    /// The first-order operator `X` itself, with weights `(0, 0)`.
    pub fn from_field(x: &VectorField) -> Self {
        let ell = x.ell();
        let mut op = DiffOp::untagged(ell);
        for v in Var::all(ell) {
            op.add_term(Mono::var(ell, v), x.coeff(v));
        }
        op
    }

    /// `L_lambda(X) = X + lambda Div(X)` as an operator `F_lambda -> F_lambda`.
    pub fn lie_derivative(x: &VectorField, lambda: &Rational) -> Self {
        let ell = x.ell();
        let mut op = DiffOp::from_field(x).with_weights(lambda.clone(), lambda.clone());
        op.add_scaled_term(Mono::one(ell), &x.divergence(), lambda);
        op
    }

    pub fn generator(ell: usize, g: Generator) -> Self {
        DiffOp::from_field(&VectorField::generator(ell, g))
    }

    pub fn with_weights(mut self, lambda: Rational, mu: Rational) -> Self {
        self.lambda = lambda;
        self.mu = mu;
        self
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn lambda(&self) -> &Rational {
        &self.lambda
    }

    pub fn mu(&self) -> &Rational {
        &self.mu
    }

    pub fn delta(&self) -> Rational {
        &self.mu - &self.lambda
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono, &Poly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, k: &Mono) -> Poly {
        self.terms.get(k).cloned().unwrap_or_else(|| Poly::zero(self.ell))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, k: Mono, p: &Poly) {
        add_into(&mut self.terms, k, p, &Rational::one());
    }

    pub fn add_scaled_term(&mut self, k: Mono, p: &Poly, c: &Rational) {
        add_into(&mut self.terms, k, p, c);
    }

    /// Order `max(c + |I| + |J|)`; `None` for the zero operator.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(Mono::degree).max()
    }

    /// The terms of exact order `k`.
    pub fn homogeneous_part(&self, k: u32) -> DiffOp {
        DiffOp {
            ell: self.ell,
            lambda: self.lambda.clone(),
            mu: self.mu.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == k)
                .map(|(m, p)| (m.clone(), p.clone()))
                .collect(),
        }
    }

    /// Terms of order at most `k`.
    pub fn truncate(&self, k: u32) -> DiffOp {
        DiffOp {
            ell: self.ell,
            lambda: self.lambda.clone(),
            mu: self.mu.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() <= k)
                .map(|(m, p)| (m.clone(), p.clone()))
                .collect(),
        }
    }

    pub fn apply(&self, g: &Poly) -> Poly {
        let mut out = Poly::zero(self.ell);
        for (k, c) in &self.terms {
            let dg = g.diff_multi(k);
            if !dg.is_zero() {
                out += &(c * &dg);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> DiffOp {
        let mut out = DiffOp::zero(self.ell, self.lambda.clone(), self.mu.clone());
        for (k, p) in &self.terms {
            out.add_scaled_term(k.clone(), p, c);
        }
        out
    }

    fn check_same_weights(&self, other: &DiffOp) -> Result<()> {
        if self.ell != other.ell {
            return Err(Error::DimensionMismatch(self.ell, other.ell));
        }
        if self.lambda != other.lambda || self.mu != other.mu {
            return Err(Error::WeightMismatch {
                left: format!("({}, {})", fmt_rational(&self.lambda), fmt_rational(&self.mu)),
                right: format!("({}, {})", fmt_rational(&other.lambda), fmt_rational(&other.mu)),
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &DiffOp) -> Result<DiffOp> {
        self.check_same_weights(other)?;
        Ok(self.add_raw(other))
    }

    pub fn try_sub(&self, other: &DiffOp) -> Result<DiffOp> {
        self.check_same_weights(other)?;
        Ok(self.add_raw(&other.scale(&-Rational::one())))
    }

    /// Sum ignoring weight tags; the result keeps the tags of `self`.
    pub(crate) fn add_raw(&self, other: &DiffOp) -> DiffOp {
        let mut out = self.clone();
        for (k, p) in &other.terms {
            out.add_term(k.clone(), p);
        }
        out
    }

    pub(crate) fn sub_raw(&self, other: &DiffOp) -> DiffOp {
        self.add_raw(&other.scale(&-Rational::one()))
    }

    /// `self o other`. Requires `self.lambda == other.mu`; the result maps
    /// `F_{other.lambda} -> F_{self.mu}`.
    pub fn compose(&self, other: &DiffOp) -> Result<DiffOp> {
        if self.ell != other.ell {
            return Err(Error::DimensionMismatch(self.ell, other.ell));
        }
        if self.lambda != other.mu {
            return Err(Error::WeightMismatch {
                left: fmt_rational(&self.lambda),
                right: fmt_rational(&other.mu),
            });
        }
        Ok(self.compose_raw(other))
    }

    /// Composition ignoring weight tags.
    pub(crate) fn compose_raw(&self, other: &DiffOp) -> DiffOp {
        let mut out = DiffOp::zero(self.ell, other.lambda.clone(), self.mu.clone());
        for (k, s) in &self.terms {
            let parts = k.divisors();
            for (l, t) in &other.terms {
                for p in &parts {
                    let dt = t.diff_multi(p);
                    if dt.is_zero() {
                        continue;
                    }
                    let key = k.div(p).unwrap().mul(l);
                    let c = int(k.binomial(p) as i64);
                    add_into(&mut out.terms, key, &(s * &dt), &c);
                }
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> DiffOp {
        let mut acc = DiffOp::identity(self.ell, self.lambda.clone());
        for _ in 0..n {
            acc = self.compose_raw(&acc);
        }
        acc
    }

    /// `L_mu(X) o T - T o L_lambda(X)`.
    pub fn module_action(&self, x: &VectorField) -> DiffOp {
        let left = DiffOp::lie_derivative(x, &self.mu).compose_raw(self);
        let right = self.compose_raw(&DiffOp::lie_derivative(x, &self.lambda));
        left.sub_raw(&right)
    }

    /// [`DiffOp::module_action`] for the contact field `X_f`.
    pub fn module_action_hamiltonian(&self, f: &Poly) -> DiffOp {
        self.module_action(&hamiltonian_to_field(f))
    }

    /// Formal adjoint `(g d^K)^* = (-1)^|K| d^K o g`, mapping `F_{1-mu} -> F_{1-lambda}`.
    pub fn adjoint(&self) -> DiffOp {
        let one = Rational::one();
        let mut out = DiffOp::zero(self.ell, &one - &self.mu, &one - &self.lambda);
        for (k, g) in &self.terms {
            let sign = if k.degree() % 2 == 0 { int(1) } else { int(-1) };
            for p in k.divisors() {
                let dg = g.diff_multi(&p);
                let c = &sign * int(k.binomial(&p) as i64);
                add_into(&mut out.terms, k.div(&p).unwrap(), &dg, &c);
            }
        }
        out
    }

    pub fn heisenberg_form(&self) -> HeisenbergForm {
        HeisenbergForm::from_diffop(self)
    }

    /// `(k, d)`: order and Heisenberg order. Errors on the zero operator.
    pub fn bidegree(&self) -> Result<(u32, u32)> {
        let k = self.order().ok_or(Error::ZeroOperator("bidegree"))?;
        let d = self
            .heisenberg_form()
            .heisenberg_order()
            .ok_or(Error::ZeroOperator("bidegree"))?;
        Ok((k, d))
    }

    pub fn to_latex(&self) -> String {
        render_op(self.terms.iter().rev(), latex_partial, |p| p.to_latex(), true)
    }
}

/// `d_z^c d_x^I d_y^J` as text atoms `Dz^c*Dx1^i`.
pub(crate) fn text_partial(k: &Mono) -> String {
    let ell = k.ell();
    let mut parts = Vec::new();
    for v in Var::all(ell) {
        let e = k.get(v);
        if e == 0 {
            continue;
        }
        let base = format!("D{}", v.name());
        parts.push(if e == 1 { base } else { format!("{base}^{e}") });
    }
    parts.join("*")
}

fn latex_partial(k: &Mono) -> String {
    let ell = k.ell();
    let mut parts = Vec::new();
    for v in Var::all(ell) {
        let e = k.get(v);
        if e == 0 {
            continue;
        }
        let base = match v {
            Var::Z => "\\partial_{z}".to_string(),
            Var::X(i) => format!("\\partial_{{x_{{{i}}}}}"),
            Var::Y(i) => format!("\\partial_{{y_{{{i}}}}}"),
        };
        parts.push(if e == 1 { base } else { format!("{base}^{{{e}}}") });
    }
    parts.join(" ")
}

/// Renders `sum g_K W_K` where `W_K` is the word for key `K`.
pub(crate) fn render_op<'a>(
    terms: impl Iterator<Item = (&'a Mono, &'a Poly)>,
    word: impl Fn(&Mono) -> String,
    coeff: impl Fn(&Poly) -> String,
    latex: bool,
) -> String {
    let mut out = String::new();
    for (k, g) in terms {
        let w = word(k);
        let (neg, body) = match (g.as_monomial(), g.as_constant()) {
            (_, Some(c)) => {
                let neg = c < Rational::zero();
                let mag = if neg { -c } else { c };
                let cs = if latex {
                    crate::poly::latex_rational(&mag)
                } else {
                    fmt_rational(&mag)
                };
                let body = if w.is_empty() {
                    cs
                } else if mag.is_one() {
                    w.clone()
                } else if latex {
                    format!("{cs} {w}")
                } else {
                    format!("{cs}*{w}")
                };
                (neg, body)
            }
            (Some((m, c)), None) => {
                let neg = c < &Rational::zero();
                let mag = if neg { -c.clone() } else { c.clone() };
                let p = Poly::term(g.ell(), m.clone(), mag);
                let ps = coeff(&p);
                let body = if w.is_empty() {
                    ps
                } else if latex {
                    format!("{ps} {w}")
                } else {
                    format!("{ps}*{w}")
                };
                (neg, body)
            }
            _ => {
                let ps = coeff(g);
                let body = if w.is_empty() {
                    ps
                } else if latex {
                    format!("\\left({ps}\\right) {w}")
                } else {
                    format!("({ps})*{w}")
                };
                (false, body)
            }
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Parseable text form, e.g. `z*Dz^2 - 1/2*y1*Dz + Dx1`.
impl fmt::Display for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = render_op(self.terms.iter().rev(), text_partial, Poly::to_string, false);
        f.write_str(&s)
    }
}

impl fmt::Debug for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "DiffOp[{}, {}]({self})",
            fmt_rational(&self.lambda),
            fmt_rational(&self.mu)
        )
    }
}

/// `sum g A^I B^J d_z^c` in PBW order: `A` factors, then `B` factors, then `d_z`.
/// Keys use the `(c, I, J)` layout.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HeisenbergForm {
    ell: usize,
    terms: BTreeMap<Mono, Poly>,
}

impl HeisenbergForm {
    pub fn zero(ell: usize) -> Self {
        HeisenbergForm {
            ell,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms(ell: usize, terms: impl IntoIterator<Item = (Mono, Poly)>) -> Self {
        let mut h = HeisenbergForm::zero(ell);
        for (k, p) in terms {
            add_into(&mut h.terms, k, &p, &Rational::one());
        }
        h
    }

    fn word(ell: usize, k: Mono) -> Self {
        HeisenbergForm::from_terms(ell, [(k, Poly::one(ell))])
    }

    fn multiplication(g: Poly) -> Self {
        let ell = g.ell();
        HeisenbergForm::from_terms(ell, [(Mono::one(ell), g)])
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono, &Poly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, k: &Mono) -> Poly {
        self.terms.get(k).cloned().unwrap_or_else(|| Poly::zero(self.ell))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `max(2c + |I| + |J|)`.
    pub fn heisenberg_order(&self) -> Option<u32> {
        self.terms.keys().map(Mono::heisenberg_degree).max()
    }

    /// Applies the word `A^P B^Q d_z^r` to a function: `d_z` first, then `B`, then `A`.
    fn apply_word(k: &Mono, h: &Poly) -> Poly {
        let ell = h.ell();
        let mut out = h.clone();
        for _ in 0..k.z() {
            out = out.apply_generator(Generator::Dz);
        }
        for i in 1..=ell {
            for _ in 0..k.get(Var::Y(i)) {
                out = out.apply_generator(Generator::B(i));
            }
        }
        for i in 1..=ell {
            for _ in 0..k.get(Var::X(i)) {
                out = out.apply_generator(Generator::A(i));
            }
        }
        out
    }

    /// Reorders `B^J A^P` into PBW order,
    /// `B_i^b A_i^a = sum_r (-1)^r r! C(a, r) C(b, r) A_i^(a-r) B_i^(b-r) d_z^r`.
    fn reorder_ba(ell: usize, j: &[u32], p: &[u32]) -> Vec<(Mono, Rational)> {
        let mut acc = vec![(Mono::one(ell), Rational::one())];
        for i in 0..ell {
            let (b, a) = (j[i], p[i]);
            let mut next = Vec::new();
            for (m, c) in &acc {
                for r in 0..=a.min(b) {
                    let coef = binom_u64(a, r) * binom_u64(b, r) * (1..=r as u64).product::<u64>();
                    let sign = if r % 2 == 0 { 1 } else { -1 };
                    let mut e = m.exps().to_vec();
                    e[0] += r;
                    e[1 + i] += a - r;
                    e[1 + ell + i] += b - r;
                    next.push((Mono::from_exps(e), c * int(sign * coef as i64)));
                }
            }
            acc = next;
        }
        acc
    }

    /// Product in the algebra generated by functions, `A_i`, `B_i` and `d_z`.
    pub fn compose(&self, other: &HeisenbergForm) -> HeisenbergForm {
        let ell = self.ell;
        let mut out = HeisenbergForm::zero(ell);
        for (w, g) in &self.terms {
            // move the word w past each coefficient h of `other`
            for (w2, h) in &other.terms {
                for p in w.divisors() {
                    let dh = HeisenbergForm::apply_word(&p, h);
                    if dh.is_zero() {
                        continue;
                    }
                    let rest = w.div(&p).unwrap();
                    let c = int(w.binomial(&p) as i64);
                    let coeff = &(g * &dh).scale(&c);
                    // rest = A^I' B^J' d_z^c', then A^P2 B^Q2 d_z^r2 from w2
                    for (mid, mc) in HeisenbergForm::reorder_ba(ell, rest.ys(), w2.xs()) {
                        let mut e = vec![0u32; 2 * ell + 1];
                        e[0] = rest.z() + w2.z() + mid.z();
                        for i in 0..ell {
                            e[1 + i] = rest.xs()[i] + mid.xs()[i];
                            e[1 + ell + i] = mid.ys()[i] + w2.ys()[i];
                        }
                        add_into(&mut out.terms, Mono::from_exps(e), coeff, &mc);
                    }
                }
            }
        }
        out
    }

    fn add(&mut self, other: &HeisenbergForm) {
        for (k, p) in &other.terms {
            add_into(&mut self.terms, k.clone(), p, &Rational::one());
        }
    }

    /// Rewrites `d_{x_i} = A_i - y_i/2 d_z`, `d_{y_i} = -B_i + x_i/2 d_z` and orders.
    pub fn from_diffop(t: &DiffOp) -> HeisenbergForm {
        let ell = t.ell();
        let dz = HeisenbergForm::word(ell, Mono::var(ell, Var::Z));
        let mut out = HeisenbergForm::zero(ell);
        for (k, g) in t.terms() {
            let mut acc = HeisenbergForm::multiplication(g.clone());
            for i in 1..=ell {
                let mut dx = HeisenbergForm::word(ell, Mono::var(ell, Var::X(i)));
                dx.add(&HeisenbergForm::multiplication(Poly::y(ell, i).scale(&-crate::rational::half())).compose(&dz));
                for _ in 0..k.get(Var::X(i)) {
                    acc = acc.compose(&dx);
                }
            }
            for i in 1..=ell {
                let mut dy = HeisenbergForm::multiplication(-Poly::one(ell))
                    .compose(&HeisenbergForm::word(ell, Mono::var(ell, Var::Y(i))));
                dy.add(&HeisenbergForm::multiplication(Poly::x(ell, i).scale(&crate::rational::half())).compose(&dz));
                for _ in 0..k.get(Var::Y(i)) {
                    acc = acc.compose(&dy);
                }
            }
            for _ in 0..k.z() {
                acc = acc.compose(&dz);
            }
            out.add(&acc);
        }
        out
    }

    /// Expands back into normal order. The result carries weights `(0, 0)`.
    pub fn to_diffop(&self) -> DiffOp {
        let ell = self.ell;
        let mut out = DiffOp::untagged(ell);
        for (k, g) in &self.terms {
            let mut acc = DiffOp::multiplication(g.clone(), Rational::zero());
            for i in 1..=ell {
                let a = DiffOp::generator(ell, Generator::A(i));
                for _ in 0..k.get(Var::X(i)) {
                    acc = acc.compose_raw(&a);
                }
            }
            for i in 1..=ell {
                let b = DiffOp::generator(ell, Generator::B(i));
                for _ in 0..k.get(Var::Y(i)) {
                    acc = acc.compose_raw(&b);
                }
            }
            acc = acc.compose_raw(&DiffOp::partial(Mono::var(ell, Var::Z)).pow(k.z()));
            out = out.add_raw(&acc);
        }
        out
    }
}

/// `A1^2*B1*Dz` style word.
pub(crate) fn text_word(k: &Mono) -> String {
    let ell = k.ell();
    let mut parts = Vec::new();
    let mut push = |name: String, e: u32| {
        if e == 1 {
            parts.push(name);
        } else if e > 1 {
            parts.push(format!("{name}^{e}"));
        }
    };
    for i in 1..=ell {
        push(format!("A{i}"), k.get(Var::X(i)));
    }
    for i in 1..=ell {
        push(format!("B{i}"), k.get(Var::Y(i)));
    }
    push("Dz".into(), k.z());
    parts.join("*")
}

impl fmt::Display for HeisenbergForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| {
            (b.0.heisenberg_degree(), b.0.xy_degree(), b.0).cmp(&(a.0.heisenberg_degree(), a.0.xy_degree(), a.0))
        });
        let s = render_op(terms.into_iter(), text_word, Poly::to_string, false);
        f.write_str(&s)
    }
}

impl fmt::Debug for HeisenbergForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HeisenbergForm({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{half, q};

    const L: usize = 1;

    fn dz() -> DiffOp {
        DiffOp::partial(Mono::var(L, Var::Z))
    }
    fn dx() -> DiffOp {
        DiffOp::partial(Mono::var(L, Var::X(1)))
    }
    fn dy() -> DiffOp {
        DiffOp::partial(Mono::var(L, Var::Y(1)))
    }
    fn mult(p: Poly) -> DiffOp {
        DiffOp::multiplication(p, Rational::zero())
    }
    fn z() -> Poly {
        Poly::z(L)
    }

    #[test]
    fn apply_examples() {
        assert_eq!(dz().apply(&z().pow(2)), z().scale(&int(2)));
        let x1 = Poly::x(L, 1);
        let op = mult(x1.clone()).compose(&dx()).unwrap();
        assert_eq!(op.apply(&x1.pow(3)), x1.pow(3).scale(&int(3)));
        let dxdy = dx().compose(&dy()).unwrap();
        assert_eq!(dxdy.apply(&(&x1 * &Poly::y(L, 1))), Poly::one(L));
    }

    #[test]
    fn compose_examples() {
        let lhs = dz().compose(&mult(z())).unwrap();
        let expect = mult(z()).compose(&dz()).unwrap().add_raw(&DiffOp::identity(L, int(0)));
        assert_eq!(lhs, expect);
        assert_eq!(
            dx().compose(&dy()).unwrap(),
            DiffOp::partial(Mono::from_parts(0, &[1], &[1]))
        );
        let xa = DiffOp::from_field(&hamiltonian_to_field(&Poly::x(L, 1)));
        let ya = DiffOp::from_field(&hamiltonian_to_field(&Poly::y(L, 1)));
        let comm = xa.compose(&ya).unwrap().sub_raw(&ya.compose(&xa).unwrap());
        assert_eq!(comm, dz());
    }

    #[test]
    fn compose_checks_weights() {
        let s = DiffOp::identity(L, half());
        let t = DiffOp::identity(L, int(0));
        assert!(matches!(s.compose(&t), Err(Error::WeightMismatch { .. })));
    }

    #[test]
    fn module_action_examples() {
        let ell = L;
        let t = mult(Poly::x(ell, 1)).compose(&dx()).unwrap();
        assert!(t.module_action_hamiltonian(&Poly::one(ell)).is_zero());
        let id = DiffOp::identity(ell, q(1, 3));
        assert!(id.module_action_hamiltonian(&(&z() * &Poly::x(ell, 1))).is_zero());
        let t = dz().with_weights(q(1, 5), q(1, 5));
        assert_eq!(t.module_action_hamiltonian(&z()), t.scale(&int(-1)));
    }

    #[test]
    fn adjoint_examples() {
        assert_eq!(dz().adjoint(), dz().scale(&int(-1)).with_weights(int(1), int(1)));
        let t = mult(z()).compose(&dz().pow(2)).unwrap();
        let expect = t.add_raw(&dz().scale(&int(2))).with_weights(int(1), int(1));
        assert_eq!(t.adjoint(), expect);
        let g = mult(&z() * &Poly::y(L, 1));
        assert_eq!(g.adjoint(), g.clone().with_weights(int(1), int(1)));
        assert_eq!(t.adjoint().adjoint(), t);
    }

    #[test]
    fn heisenberg_examples() {
        let h = dz().heisenberg_form();
        assert_eq!(h, HeisenbergForm::word(L, Mono::var(L, Var::Z)));
        assert_eq!(dz().bidegree().unwrap(), (1, 2));
        let h = dx().heisenberg_form();
        let expect = HeisenbergForm::from_terms(
            L,
            [
                (Mono::var(L, Var::X(1)), Poly::one(L)),
                (Mono::var(L, Var::Z), Poly::y(L, 1).scale(&-half())),
            ],
        );
        assert_eq!(h, expect);
        let a = DiffOp::generator(L, Generator::A(1));
        let b = DiffOp::generator(L, Generator::B(1));
        assert_eq!(a.bidegree().unwrap(), (1, 1));
        let ab = a.compose(&b).unwrap().heisenberg_form();
        assert_eq!(ab, HeisenbergForm::word(L, Mono::from_parts(0, &[1], &[1])));
        let t = dz().pow(2).add_raw(&a);
        assert_eq!(t.bidegree().unwrap(), (2, 4));
        assert!(DiffOp::untagged(L).bidegree().is_err());
    }

    #[test]
    fn heisenberg_commutator() {
        let a = DiffOp::generator(L, Generator::A(1));
        let b = DiffOp::generator(L, Generator::B(1));
        let ba = b.compose(&a).unwrap().heisenberg_form();
        let expect = HeisenbergForm::from_terms(
            L,
            [
                (Mono::from_parts(0, &[1], &[1]), Poly::one(L)),
                (Mono::var(L, Var::Z), -Poly::one(L)),
            ],
        );
        assert_eq!(ba, expect);
    }

    #[test]
    fn heisenberg_round_trip() {
        for ell in 1..=2 {
            for k in Mono::all_up_to_degree(ell, 3) {
                for g in [Poly::one(ell), Poly::x(ell, 1), &Poly::z(ell) * &Poly::y(ell, ell)] {
                    let t = DiffOp::from_terms(ell, int(0), int(0), [(k.clone(), g)]);
                    assert_eq!(t.heisenberg_form().to_diffop(), t);
                }
            }
        }
    }

    #[test]
    fn display() {
        let t = mult(z()).compose(&dz().pow(2)).unwrap();
        assert_eq!(t.to_string(), "z*Dz^2");
        let h = dx().heisenberg_form();
        assert_eq!(h.to_string(), "-1/2*y1*Dz + A1");
        let sum = t.add_raw(&mult(&z() + &Poly::one(L)).compose(&dx()).unwrap());
        assert_eq!(sum.to_string(), "z*Dz^2 + (z + 1)*Dx1");
    }
}
