//! Exact rationals and the `"p/q"` text encoding used on every external surface.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub use num_rational::BigRational as Rational;

/// `n/d` as an exact rational. Panics on `d == 0`.
pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn half() -> Rational {
    q(1, 2)
}

/// Parses `"3"`, `"-3"`, `"3/4"`, `"-3/4"`. Whitespace is not accepted.
pub fn parse_rational(src: &str) -> Option<Rational> {
    let (num, den) = match src.split_once('/') {
        Some((n, d)) => (n, d),
        None => (src, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

/// Canonical string form: `"p"` for integers and `"p/q"` otherwise.
pub fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Generalized binomial coefficient `a(a-1)...(a-s+1)/s!` over the rationals.
pub fn binomial(a: &Rational, s: usize) -> Rational {
    let mut acc = Rational::one();
    for r in 0..s {
        acc *= a - int(r as i64);
        acc /= int(r as i64 + 1);
    }
    acc
}

pub fn factorial(n: usize) -> Rational {
    (1..=n).fold(Rational::one(), |acc, i| acc * int(i as i64))
}

/// True iff `r` is a non-negative integer.
pub fn is_natural(r: &Rational) -> bool {
    r.is_integer() && !r.is_negative()
}

/// `r` as a `usize` when it is a non-negative integer that fits.
pub fn to_natural(r: &Rational) -> Option<usize> {
    if !is_natural(r) {
        return None;
    }
    usize::try_from(r.numer()).ok()
}
