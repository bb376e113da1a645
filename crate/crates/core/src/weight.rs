use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{Signed, Zero};

use crate::rational::{fmt_rational, int, Rational};

/// An element of the dual Cartan `h_m^*`, in coordinates `e_0..e_ell`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Weight(Vec<Rational>);

impl Weight {
    pub fn zero(ell: usize) -> Self {
        Weight(vec![Rational::zero(); ell + 1])
    }

    pub fn from_coords(coords: Vec<Rational>) -> Self {
        assert!(!coords.is_empty());
        Weight(coords)
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Weight(coords.iter().map(|&c| int(c)).collect())
    }

    /// The basis vector `e_i`.
    pub fn e(ell: usize, i: usize) -> Self {
        let mut w = Weight::zero(ell);
        w.0[i] = int(1);
        w
    }

    pub fn ell(&self) -> usize {
        self.0.len() - 1
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn scale(&self, c: &Rational) -> Weight {
        Weight(self.0.iter().map(|a| a * c).collect())
    }

    /// Absolute values of the coordinates, sorted descending.
    pub fn abs_multiset(&self) -> Vec<Rational> {
        let mut v: Vec<Rational> = self.0.iter().map(|a| a.abs()).collect();
        v.sort_by(|a, b| b.cmp(a));
        v
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        assert_eq!(self.0.len(), rhs.0.len());
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        assert_eq!(self.0.len(), rhs.0.len());
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }
}

/// Prints e.g. `e0 - 3e1`, or `0`.
impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (i, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if mag != int(1) {
                let s = fmt_rational(&mag);
                if mag.is_integer() {
                    out.push_str(&s);
                } else {
                    out.push_str(&format!("({s})"));
                }
            }
            out.push_str(&format!("e{i}"));
        }
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Weight({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn display_and_arith() {
        let w = Weight::from_ints(&[1, -3]);
        assert_eq!(w.to_string(), "e0 - 3e1");
        assert_eq!(Weight::zero(2).to_string(), "0");
        assert_eq!(Weight::from_coords(vec![q(1, 2), int(0)]).to_string(), "(1/2)e0");
        assert_eq!(&w + &(-&w), Weight::zero(1));
        assert_eq!(w.abs_multiset(), vec![int(3), int(1)]);
    }
}
