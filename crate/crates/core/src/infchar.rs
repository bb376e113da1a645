//! Lowest weights of the fine symbol modules and infinitesimal-character coincidences.

use std::fmt;

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::rational::{fmt_rational, int, is_natural, Rational};
use crate::weight::Weight;

fn check_pair(k: u32, d: u32) -> Result<()> {
    if k <= d && d <= 2 * k {
        Ok(())
    } else {
        Err(Error::InvalidBidegree {
            k: k as i64,
            d: d as i64,
        })
    }
}

fn check_ell(ell: usize) -> Result<()> {
    if ell == 0 {
        return Err(Error::Domain("ell must be at least 1".into()));
    }
    Ok(())
}

/// `nu^{k,d}_delta = [2 delta(ell+1) - d] e_0 - (2k - d) e_1`.
pub fn lowest_weight(k: u32, d: u32, delta: &Rational, ell: usize) -> Result<Weight> {
    check_ell(ell)?;
    check_pair(k, d)?;
    let mut c = vec![int(0); ell + 1];
    c[0] = delta * int(2 * (ell as i64 + 1)) - int(d as i64);
    c[1] = -int(2 * k as i64 - d as i64);
    Ok(Weight::from_coords(c))
}

/// `rho = sum_i (ell + 1 - i) e_i`.
pub fn rho(ell: usize) -> Weight {
    Weight::from_coords((0..=ell).map(|i| int((ell + 1 - i) as i64)).collect())
}

/// Same orbit under permutations and sign changes of the `e_i`.
pub fn weyl_equivalent(v: &Weight, w: &Weight) -> bool {
    v.ell() == w.ell() && v.abs_multiset() == w.abs_multiset()
}

/// The multiset `{|(2delta-1)(ell+1) - d|, ell + 2k - d, ell-1, ..., 1}`, sorted descending.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InfCharKey(Vec<Rational>);

impl InfCharKey {
    pub fn entries(&self) -> &[Rational] {
        &self.0
    }
}

impl fmt::Display for InfCharKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(fmt_rational).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

pub fn infchar_key(k: u32, d: u32, delta: &Rational, ell: usize) -> Result<InfCharKey> {
    check_ell(ell)?;
    check_pair(k, d)?;
    let l1 = int(ell as i64 + 1);
    let mut v = vec![
        ((delta * int(2) - int(1)) * l1 - int(d as i64)).abs(),
        int(ell as i64 + 2 * k as i64 - d as i64),
    ];
    v.extend((1..ell).rev().map(|i| int(i as i64)));
    v.sort_by(|a, b| b.cmp(a));
    Ok(InfCharKey(v))
}

/// The key computed from `nu^{k,d}_delta - rho`.
pub fn infchar_key_from_weights(k: u32, d: u32, delta: &Rational, ell: usize) -> Result<InfCharKey> {
    let w = &lowest_weight(k, d, delta, ell)? - &rho(ell);
    Ok(InfCharKey(w.abs_multiset()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InfCharCase {
    I,
    II,
    III,
    IV,
}

impl InfCharCase {
    pub fn name(self) -> &'static str {
        match self {
            InfCharCase::I => "i",
            InfCharCase::II => "ii",
            InfCharCase::III => "iii",
            InfCharCase::IV => "iv",
        }
    }

    /// The set `2 delta(ell+1)` must lie in for this case to occur: `n0 + N`.
    pub fn gate_base(self, ell: usize) -> i64 {
        let l = ell as i64;
        match self {
            InfCharCase::I => 2,
            InfCharCase::II => 2 * (l + 1),
            InfCharCase::III => l + 2,
            InfCharCase::IV => 2 * l + 1,
        }
    }

    pub fn gate_holds(self, delta: &Rational, ell: usize) -> bool {
        is_natural(&(delta * int(2 * (ell as i64 + 1)) - int(self.gate_base(ell))))
    }
}

impl fmt::Display for InfCharCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The first of the four closed-form cases matched by `(k, d)` and `(k', d')`,
/// which must satisfy `k' < k`, or `k' = k` and `d' < d`.
///
/// Panics if a matched case violates its necessary condition on `2 delta(ell+1)`.
pub fn matching_case(k: u32, d: u32, kp: u32, dp: u32, delta: &Rational, ell: usize) -> Result<Option<InfCharCase>> {
    check_ell(ell)?;
    check_pair(k, d)?;
    check_pair(kp, dp)?;
    if !(kp < k || (kp == k && dp < d)) {
        return Err(Error::OrderingViolated);
    }
    let (k, d, kp, dp) = (int(k as i64), int(d as i64), int(kp as i64), int(dp as i64));
    let l1 = int(ell as i64 + 1);
    let two_dl = delta * int(2) * &l1;
    let dm1 = (delta - int(1)) * int(2) * &l1;
    let a = (delta * int(2) - int(1)) * &l1;
    let one = int(1);
    let two = int(2);
    let cases = [
        (InfCharCase::I, kp == k, dp == &two_dl - &one + &two * &k - &d),
        (
            InfCharCase::II,
            kp == &dm1 + &one - &k,
            dp == &dm1 + &one - &two * &k + &d,
        ),
        (InfCharCase::III, kp == &a + &k - &d, dp == &two * &a - &d),
        (
            InfCharCase::IV,
            kp == &d - &k - int(ell as i64),
            dp == &dm1 + &one - &two * &k + &d,
        ),
    ];
    for (case, c1, c2) in cases {
        if c1 && c2 {
            assert!(
                case.gate_holds(delta, ell),
                "case {case} matched outside its gate at delta = {}",
                fmt_rational(delta)
            );
            return Ok(Some(case));
        }
    }
    Ok(None)
}

pub fn same_infchar_cases(k: u32, d: u32, kp: u32, dp: u32, delta: &Rational, ell: usize) -> Result<bool> {
    Ok(matching_case(k, d, kp, dp, delta, ell)?.is_some())
}
