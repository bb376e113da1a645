//! Exponent vectors shared by base monomials, fiber monomials and derivative
//! multi-indices.
//!
//! Every exponent vector has length `2 ell + 1` with layout `[z, x_1..x_ell, y_1..y_ell]`.
//! The same layout is reused for `(xi_z, xi_x, xi_y)`, `(zeta, alpha, beta)` and for
//! `d_z^c d_x^I d_y^J`, so a vector reads as `(c, I, J)` in every role.

use std::cmp::Ordering;
use std::fmt;

/// A coordinate direction: `z`, `x_i` or `y_i` with `1 <= i <= ell`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    Z,
    X(usize),
    Y(usize),
}

impl Var {
    /// Position of this variable in an exponent vector for the given `ell`.
    pub fn slot(self, ell: usize) -> usize {
        match self {
            Var::Z => 0,
            Var::X(i) => {
                assert!(i >= 1 && i <= ell, "x index {i} out of range 1..={ell}");
                i
            }
            Var::Y(i) => {
                assert!(i >= 1 && i <= ell, "y index {i} out of range 1..={ell}");
                ell + i
            }
        }
    }

    pub fn from_slot(slot: usize, ell: usize) -> Var {
        match slot {
            0 => Var::Z,
            s if s <= ell => Var::X(s),
            s => Var::Y(s - ell),
        }
    }

    /// All `2 ell + 1` variables in slot order.
    pub fn all(ell: usize) -> impl Iterator<Item = Var> {
        (0..2 * ell + 1).map(move |s| Var::from_slot(s, ell))
    }

    pub fn name(self) -> String {
        match self {
            Var::Z => "z".into(),
            Var::X(i) => format!("x{i}"),
            Var::Y(i) => format!("y{i}"),
        }
    }
}

/// Exponent vector. Ordered graded-lexicographically: total degree first, then
/// lexicographically on `(z, x, y)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mono(Vec<u32>);

impl Mono {
    pub fn one(ell: usize) -> Self {
        Mono(vec![0; 2 * ell + 1])
    }

    pub fn from_exps(exps: Vec<u32>) -> Self {
        assert!(exps.len() % 2 == 1, "exponent vector must have odd length");
        Mono(exps)
    }

    pub fn var(ell: usize, v: Var) -> Self {
        let mut m = Mono::one(ell);
        m.0[v.slot(ell)] = 1;
        m
    }

    /// Builds `(c, I, J)`.
    pub fn from_parts(c: u32, i: &[u32], j: &[u32]) -> Self {
        assert_eq!(i.len(), j.len());
        let mut v = Vec::with_capacity(1 + 2 * i.len());
        v.push(c);
        v.extend_from_slice(i);
        v.extend_from_slice(j);
        Mono(v)
    }

    pub fn ell(&self) -> usize {
        (self.0.len() - 1) / 2
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, v: Var) -> u32 {
        self.0[v.slot(self.ell())]
    }

    pub fn z(&self) -> u32 {
        self.0[0]
    }

    pub fn xs(&self) -> &[u32] {
        let l = self.ell();
        &self.0[1..=l]
    }

    pub fn ys(&self) -> &[u32] {
        let l = self.ell();
        &self.0[l + 1..]
    }

    /// `|I| + |J|`, the degree in the `x, y` (or `alpha, beta`) directions.
    pub fn xy_degree(&self) -> u32 {
        self.0[1..].iter().sum()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Heisenberg degree `2c + |I| + |J|`.
    pub fn heisenberg_degree(&self) -> u32 {
        2 * self.z() + self.xy_degree()
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        debug_assert_eq!(self.0.len(), other.0.len());
        Mono(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self - other` when `other` divides `self`.
    pub fn div(&self, other: &Mono) -> Option<Mono> {
        let mut out = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            out.push(a.checked_sub(*b)?);
        }
        Some(Mono(out))
    }

    pub fn with(&self, v: Var, e: u32) -> Mono {
        let mut m = self.clone();
        let s = v.slot(self.ell());
        m.0[s] = e;
        m
    }

    /// Decrements the exponent of `v`, returning the old exponent, or `None` if it is 0.
    pub fn lower(&self, v: Var) -> Option<(u32, Mono)> {
        let s = v.slot(self.ell());
        let e = self.0[s];
        if e == 0 {
            return None;
        }
        let mut m = self.clone();
        m.0[s] -= 1;
        Some((e, m))
    }

    pub fn raise(&self, v: Var) -> Mono {
        let mut m = self.clone();
        let s = v.slot(self.ell());
        m.0[s] += 1;
        m
    }

    /// All exponent vectors `p <= self` componentwise.
    pub fn divisors(&self) -> Vec<Mono> {
        let mut out = vec![Vec::with_capacity(self.0.len())];
        for &e in &self.0 {
            let mut next = Vec::with_capacity(out.len() * (e as usize + 1));
            for prefix in &out {
                for k in 0..=e {
                    let mut p = prefix.clone();
                    p.push(k);
                    next.push(p);
                }
            }
            out = next;
        }
        out.into_iter().map(Mono).collect()
    }

    /// Product of binomials `prod_v C(self_v, p_v)`.
    pub fn binomial(&self, p: &Mono) -> u64 {
        self.0.iter().zip(&p.0).map(|(&n, &k)| binom_u64(n, k)).product()
    }

    /// `prod_v self_v!`.
    pub fn factorial(&self) -> u64 {
        self.0.iter().map(|&e| (1..=e as u64).product::<u64>()).product()
    }

    /// All exponent vectors with total degree exactly `deg` for the given `ell`.
    pub fn all_of_degree(ell: usize, deg: u32) -> Vec<Mono> {
        let n = 2 * ell + 1;
        let mut out = Vec::new();
        let mut cur = vec![0u32; n];
        fn rec(pos: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Mono>) {
            if pos + 1 == cur.len() {
                cur[pos] = left;
                out.push(Mono(cur.clone()));
                return;
            }
            for e in (0..=left).rev() {
                cur[pos] = e;
                rec(pos + 1, left - e, cur, out);
            }
            cur[pos] = 0;
        }
        rec(0, deg, &mut cur, &mut out);
        out
    }

    /// All exponent vectors with total degree at most `deg`.
    pub fn all_up_to_degree(ell: usize, deg: u32) -> Vec<Mono> {
        (0..=deg).flat_map(|d| Mono::all_of_degree(ell, d)).collect()
    }
}

pub(crate) fn binom_u64(n: u32, k: u32) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k) as u64;
    let n = n as u64;
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slots_and_layout() {
        let ell = 2;
        assert_eq!(Var::Z.slot(ell), 0);
        assert_eq!(Var::X(2).slot(ell), 2);
        assert_eq!(Var::Y(1).slot(ell), 3);
        for v in Var::all(ell) {
            assert_eq!(Var::from_slot(v.slot(ell), ell), v);
        }
        let m = Mono::from_parts(3, &[1, 0], &[0, 2]);
        assert_eq!(m.z(), 3);
        assert_eq!(m.xs(), &[1, 0]);
        assert_eq!(m.ys(), &[0, 2]);
        assert_eq!(m.heisenberg_degree(), 9);
    }

    #[test]
    fn graded_order() {
        let z = Mono::var(1, Var::Z);
        let x = Mono::var(1, Var::X(1));
        let xy = Mono::from_parts(0, &[1], &[1]);
        assert!(x < z);
        assert!(z < xy);
        assert!(Mono::one(1) < x);
    }

    #[test]
    fn enumeration_counts() {
        // C(n + d - 1, d) monomials of degree d in n = 3 variables
        assert_eq!(Mono::all_of_degree(1, 2).len(), 6);
        assert_eq!(Mono::all_up_to_degree(1, 3).len(), 20);
        assert_eq!(Mono::all_of_degree(2, 2).len(), 15);
    }

    #[test]
    fn divisors_and_binomials() {
        let m = Mono::from_parts(2, &[1], &[0]);
        assert_eq!(m.divisors().len(), 6);
        let p = Mono::from_parts(1, &[1], &[0]);
        assert_eq!(m.binomial(&p), 2);
        assert_eq!(m.factorial(), 2);
        assert_eq!(m.div(&p), Some(Mono::from_parts(1, &[0], &[0])));
        assert_eq!(p.div(&m), None);
    }
}
