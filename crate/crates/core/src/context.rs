use crate::error::{Error, Result};
use crate::rational::Rational;

/// Ambient data: the half-dimension `ell` of `R^m`, `m = 2 ell + 1`, and optionally
/// the density weights of the source and target spaces.
///
/// `delta` is never stored; it is derived as `mu - lambda`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Context {
    ell: usize,
    weights: Option<(Rational, Rational)>,
}

impl Context {
    pub fn new(ell: usize) -> Result<Self> {
        if ell == 0 {
            return Err(Error::Domain("ell must be at least 1".into()));
        }
        Ok(Context { ell, weights: None })
    }

    pub fn with_weights(ell: usize, lambda: Rational, mu: Rational) -> Result<Self> {
        let mut ctx = Context::new(ell)?;
        ctx.weights = Some((lambda, mu));
        Ok(ctx)
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    /// Dimension `2 ell + 1`.
    pub fn m(&self) -> usize {
        2 * self.ell + 1
    }

    pub fn lambda(&self) -> Option<&Rational> {
        self.weights.as_ref().map(|w| &w.0)
    }

    pub fn mu(&self) -> Option<&Rational> {
        self.weights.as_ref().map(|w| &w.1)
    }

    pub fn delta(&self) -> Option<Rational> {
        self.weights.as_ref().map(|(l, m)| m - l)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn dimension_and_delta() {
        let ctx = Context::with_weights(2, q(1, 3), q(1, 2)).unwrap();
        assert_eq!(ctx.m(), 5);
        assert_eq!(ctx.delta(), Some(q(1, 6)));
        assert!(Context::new(0).is_err());
        assert_eq!(Context::new(1).unwrap().delta(), None);
    }
}
