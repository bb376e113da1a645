//! Exact polynomials in the Darboux coordinates `x_1..x_ell, y_1..y_ell, z`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Zero};

use crate::mono::{Mono, Var};
use crate::rational::{fmt_rational, half, int, Rational};

/// Sparse polynomial over the rationals. No zero coefficients are stored, so
/// structural equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    ell: usize,
    terms: BTreeMap<Mono, Rational>,
}

/// The tangent frame `A_i = d_{x_i} + y_i/2 d_z`, `B_i = -d_{y_i} + x_i/2 d_z` and `d_z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    A(usize),
    B(usize),
    Dz,
}

impl Poly {
    pub fn zero(ell: usize) -> Self {
        Poly {
            ell,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ell: usize) -> Self {
        Poly::constant(ell, Rational::one())
    }

    pub fn constant(ell: usize, c: Rational) -> Self {
        Poly::term(ell, Mono::one(ell), c)
    }

    pub fn var(ell: usize, v: Var) -> Self {
        Poly::term(ell, Mono::var(ell, v), Rational::one())
    }

    pub fn x(ell: usize, i: usize) -> Self {
        Poly::var(ell, Var::X(i))
    }

    pub fn y(ell: usize, i: usize) -> Self {
        Poly::var(ell, Var::Y(i))
    }

    pub fn z(ell: usize) -> Self {
        Poly::var(ell, Var::Z)
    }

    pub fn term(ell: usize, m: Mono, c: Rational) -> Self {
        debug_assert_eq!(m.ell(), ell);
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { ell, terms }
    }

    pub fn monomial(m: Mono) -> Self {
        let ell = m.ell();
        Poly::term(ell, m, Rational::one())
    }

    pub fn from_terms(ell: usize, it: impl IntoIterator<Item = (Mono, Rational)>) -> Self {
        let mut p = Poly::zero(ell);
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Mono) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// The constant coefficient if the polynomial is constant.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                (m.degree() == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    /// The single monomial and coefficient, if there is exactly one term.
    pub fn as_monomial(&self) -> Option<(&Mono, &Rational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Mono::degree).max()
    }

    pub fn add_term(&mut self, m: Mono, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.ell);
        }
        Poly {
            ell: self.ell,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_mono(&self, m: &Mono, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.ell);
        }
        Poly {
            ell: self.ell,
            terms: self.terms.iter().map(|(n, a)| (n.mul(m), a * c)).collect(),
        }
    }

    /// Adds `c * m * other` into `self`.
    pub fn add_scaled_mono(&mut self, other: &Poly, m: &Mono, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (n, a) in &other.terms {
            self.add_term(n.mul(m), a * c);
        }
    }

    pub fn add_scaled(&mut self, other: &Poly, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (n, a) in &other.terms {
            self.add_term(n.clone(), a * c);
        }
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut acc = Poly::one(self.ell);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Exact partial derivative.
    pub fn diff(&self, v: Var) -> Poly {
        let mut out = Poly::zero(self.ell);
        for (m, c) in &self.terms {
            if let Some((e, lowered)) = m.lower(v) {
                out.add_term(lowered, c * int(e as i64));
            }
        }
        out
    }

    /// Iterated partial derivative `d^p` with `p` an exponent vector.
    pub fn diff_multi(&self, p: &Mono) -> Poly {
        let mut out = Poly::zero(self.ell);
        for (m, c) in &self.terms {
            if let Some(rest) = m.div(p) {
                let falling: u64 = m
                    .exps()
                    .iter()
                    .zip(p.exps())
                    .map(|(&n, &k)| ((n - k + 1)..=n).map(|t| t as u64).product::<u64>())
                    .product();
                out.add_term(rest, c * int(falling as i64));
            }
        }
        out
    }

    /// `A_i(p) = d_{x_i} p + y_i/2 d_z p`, `B_i(p) = -d_{y_i} p + x_i/2 d_z p`.
    pub fn apply_generator(&self, g: Generator) -> Poly {
        let ell = self.ell;
        match g {
            Generator::Dz => self.diff(Var::Z),
            Generator::A(i) => {
                let mut out = self.diff(Var::X(i));
                out.add_scaled_mono(&self.diff(Var::Z), &Mono::var(ell, Var::Y(i)), &half());
                out
            }
            Generator::B(i) => {
                let mut out = -self.diff(Var::Y(i));
                out.add_scaled_mono(&self.diff(Var::Z), &Mono::var(ell, Var::X(i)), &half());
                out
            }
        }
    }

    /// Eigen-decomposition under the contact Euler operator `E_z + E_xy / 2`.
    /// Components are returned in increasing weight and sum to `self`.
    pub fn contact_grading(&self) -> Vec<(Rational, Poly)> {
        let mut parts: BTreeMap<Rational, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            parts
                .entry(contact_degree(m))
                .or_insert_with(|| Poly::zero(self.ell))
                .add_term(m.clone(), c.clone());
        }
        parts.into_iter().collect()
    }

    pub fn to_latex(&self) -> String {
        write_sum(self.terms.iter().rev(), |m| latex_mono(m, LATEX_BASE), true)
    }
}

/// `c + (|I| + |J|)/2` for `x^I y^J z^c`.
pub fn contact_degree(m: &Mono) -> Rational {
    int(m.z() as i64) + Rational::new(m.xy_degree().into(), 2.into())
}

pub(crate) const TEXT_BASE: [&str; 3] = ["z", "x", "y"];
pub(crate) const LATEX_BASE: [&str; 3] = ["z", "x", "y"];

/// `x1*y1^2*z` style rendering of a monomial with the given variable stems.
pub(crate) fn text_mono(m: &Mono, names: [&str; 3]) -> String {
    let ell = m.ell();
    let mut parts = Vec::new();
    for v in Var::all(ell) {
        let e = m.get(v);
        if e == 0 {
            continue;
        }
        let base = match v {
            Var::Z => names[0].to_string(),
            Var::X(i) => format!("{}{i}", names[1]),
            Var::Y(i) => format!("{}{i}", names[2]),
        };
        parts.push(if e == 1 { base } else { format!("{base}^{e}") });
    }
    parts.join("*")
}

pub(crate) fn latex_mono(m: &Mono, names: [&str; 3]) -> String {
    let ell = m.ell();
    let mut parts = Vec::new();
    for v in Var::all(ell) {
        let e = m.get(v);
        if e == 0 {
            continue;
        }
        let base = match v {
            Var::Z => names[0].to_string(),
            Var::X(i) => format!("{}_{{{i}}}", names[1]),
            Var::Y(i) => format!("{}_{{{i}}}", names[2]),
        };
        parts.push(if e == 1 { base } else { format!("{base}^{{{e}}}") });
    }
    parts.join(" ")
}

/// Joins signed terms as `a - b + c`. `text` selects `*` versus LaTeX juxtaposition.
pub(crate) fn write_sum<'a>(
    terms: impl Iterator<Item = (&'a Mono, &'a Rational)>,
    render: impl Fn(&Mono) -> String,
    latex: bool,
) -> String {
    let mut out = String::new();
    for (m, c) in terms {
        let neg = c < &Rational::zero();
        let mag = if neg { -c.clone() } else { c.clone() };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let body = render(m);
        let coeff = if latex {
            latex_rational(&mag)
        } else {
            fmt_rational(&mag)
        };
        if body.is_empty() {
            out.push_str(&coeff);
        } else if mag.is_one() {
            out.push_str(&body);
        } else if latex {
            out.push_str(&format!("{coeff} {body}"));
        } else {
            out.push_str(&format!("{coeff}*{body}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub(crate) fn latex_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("\\tfrac{{{}}}{{{}}}", r.numer(), r.denom())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = write_sum(self.terms.iter().rev(), |m| text_mono(m, TEXT_BASE), false);
        f.write_str(&s)
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(mut self, rhs: Poly) -> Poly {
        self += &rhs;
        self
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        debug_assert_eq!(self.ell, rhs.ell);
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        debug_assert_eq!(self.ell, rhs.ell);
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(mut self, rhs: Poly) -> Poly {
        self -= &rhs;
        self
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        debug_assert_eq!(self.ell, rhs.ell);
        let mut out = Poly::zero(self.ell);
        for (m, a) in &self.terms {
            for (n, b) in &rhs.terms {
                out.add_term(m.mul(n), a * b);
            }
        }
        out
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-Rational::one())
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-Rational::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn x1() -> Poly {
        Poly::x(1, 1)
    }
    fn y1() -> Poly {
        Poly::y(1, 1)
    }
    fn z() -> Poly {
        Poly::z(1)
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(&(&x1() + &z()) + &(-z()), x1());
        assert_eq!(&x1() * &y1(), Poly::monomial(Mono::from_parts(0, &[1], &[1])));
        assert_eq!(x1().scale(&half()).scale(&int(2)), x1());
        assert!((&x1() - &x1()).is_zero());
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(z().pow(2).diff(Var::Z), z().scale(&int(2)));
        assert_eq!((&x1() * &y1()).diff(Var::X(1)), y1());
        let x1_l2 = Poly::x(2, 1);
        assert!(x1_l2.diff(Var::Y(2)).is_zero());
        let p = &x1().pow(3) * &z().pow(2);
        let m = Mono::from_parts(1, &[2], &[0]);
        assert_eq!(p.diff_multi(&m), p.diff(Var::Z).diff(Var::X(1)).diff(Var::X(1)));
    }

    #[test]
    fn tangent_generators() {
        assert_eq!(x1().apply_generator(Generator::A(1)), Poly::one(1));
        assert_eq!(z().apply_generator(Generator::B(1)), x1().scale(&half()));
        let p = &(&x1() * &y1()) * &z();
        let ab = p.apply_generator(Generator::B(1)).apply_generator(Generator::A(1));
        let ba = p.apply_generator(Generator::A(1)).apply_generator(Generator::B(1));
        assert_eq!(&ab - &ba, p.diff(Var::Z));
    }

    #[test]
    fn contact_grading_examples() {
        assert_eq!(z().contact_grading(), vec![(int(1), z())]);
        assert_eq!((&x1() + &z()).contact_grading(), vec![(half(), x1()), (int(1), z())]);
        let p = &(&x1() * &y1()) * &z();
        assert_eq!(p.contact_grading(), vec![(int(2), p.clone())]);
    }

    #[test]
    fn display() {
        let p = &(&z().scale(&q(-1, 2)) + &x1()) + &Poly::constant(1, int(3));
        assert_eq!(p.to_string(), "-1/2*z + x1 + 3");
        assert_eq!(Poly::zero(1).to_string(), "0");
        assert_eq!((&x1() * &x1()).to_latex(), "x_{1}^{2}");
    }
}
