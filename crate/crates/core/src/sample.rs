//! Seeded random inputs for the property suites.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::fields::VectorField;
use crate::mono::{Mono, Var};
use crate::ops::DiffOp;
use crate::poly::{Generator, Poly};
use crate::quantize::{SecOp, SecOpTerm};
use crate::rational::{q, Rational};
use crate::symbol::{fine_monomials, Basis, SymbolPoly};

pub struct Sampler {
    rng: ChaCha8Rng,
    ell: usize,
}

impl Sampler {
    pub fn new(ell: usize, seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            ell,
        }
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    /// `n/d` with `|n| <= 3`, `d in {1, 2, 3}`.
    pub fn rational(&mut self) -> Rational {
        q(self.rng.gen_range(-3..=3), self.rng.gen_range(1..=3))
    }

    pub fn nonzero_rational(&mut self) -> Rational {
        loop {
            let r = self.rational();
            if r != q(0, 1) {
                return r;
            }
        }
    }

    pub fn mono(&mut self, max_deg: u32) -> Mono {
        let deg = self.rng.gen_range(0..=max_deg);
        let all = Mono::all_of_degree(self.ell, deg);
        all.choose(&mut self.rng).expect("nonempty").clone()
    }

    pub fn poly(&mut self, max_deg: u32, terms: usize) -> Poly {
        let mut p = Poly::zero(self.ell);
        for _ in 0..terms {
            let m = self.mono(max_deg);
            let c = self.nonzero_rational();
            p.add_term(m, c);
        }
        p
    }

    pub fn nonzero_poly(&mut self, max_deg: u32, terms: usize) -> Poly {
        loop {
            let p = self.poly(max_deg, terms);
            if !p.is_zero() {
                return p;
            }
        }
    }

    /// A nonzero operator of order exactly `order` with coefficients of degree `<= coeff_deg`.
    pub fn diffop(&mut self, order: u32, coeff_deg: u32, terms: usize, lambda: &Rational, mu: &Rational) -> DiffOp {
        let mut t = DiffOp::zero(self.ell, lambda.clone(), mu.clone());
        let top = Mono::all_of_degree(self.ell, order);
        let k = top.choose(&mut self.rng).expect("nonempty").clone();
        let g = self.nonzero_poly(coeff_deg, 2);
        t.add_term(k, &g);
        for _ in 1..terms {
            let k = self.mono(order);
            let g = self.poly(coeff_deg, 2);
            t.add_term(k, &g);
        }
        t
    }

    pub fn tangential(&mut self, coeff_deg: u32) -> VectorField {
        let mut y = VectorField::zero(self.ell);
        for i in 1..=self.ell {
            for g in [Generator::A(i), Generator::B(i)] {
                if self.rng.gen_bool(0.7) {
                    let c = self.poly(coeff_deg, 2);
                    y = y.add(&VectorField::generator(self.ell, g).mul_poly(&c));
                }
            }
        }
        y
    }

    pub fn field(&mut self, coeff_deg: u32) -> VectorField {
        let mut x = VectorField::zero(self.ell);
        for v in Var::all(self.ell) {
            let c = self.poly(coeff_deg, 2);
            x = x.add(&VectorField::along(v, c));
        }
        x
    }

    /// A symbol in `Sigma^{k,d}` with random coefficients.
    pub fn fine_symbol(&mut self, k: u32, d: u32, coeff_deg: u32, delta: &Rational) -> SymbolPoly {
        let mut p = SymbolPoly::zero(self.ell, delta.clone(), Basis::AlphaBeta);
        for m in fine_monomials(self.ell, k, d) {
            if self.rng.gen_bool(0.6) {
                let g = self.poly(coeff_deg, 2);
                p.add_term(m, &g);
            }
        }
        p
    }

    /// One term of each kind with random data.
    pub fn secop(&mut self) -> SecOp {
        let one = q(1, 1);
        SecOp::new()
            .push(one.clone(), SecOpTerm::ContactContact(self.poly(2, 2), self.poly(2, 2)))
            .push(
                one.clone(),
                SecOpTerm::ContactTangent(self.poly(2, 2), self.tangential(1)),
            )
            .push(
                one.clone(),
                SecOpTerm::TangentTangent(self.tangential(1), self.tangential(1)),
            )
            .push(one.clone(), SecOpTerm::Contact(self.poly(2, 2)))
            .push(one.clone(), SecOpTerm::Tangent(self.tangential(2)))
            .push(one, SecOpTerm::Function(self.poly(3, 2)))
    }

    pub fn gen_bool(&mut self, p: f64) -> bool {
        self.rng.gen_bool(p)
    }

    pub fn gen_range(&mut self, lo: u32, hi: u32) -> u32 {
        self.rng.gen_range(lo..=hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_reproducible() {
        let mut a = Sampler::new(1, 7);
        let mut b = Sampler::new(1, 7);
        assert_eq!(a.poly(3, 4), b.poly(3, 4));
        let lam = q(1, 3);
        let t = a.diffop(2, 2, 3, &lam, &lam);
        assert_eq!(t, b.diffop(2, 2, 3, &lam, &lam));
        assert_eq!(t.order(), Some(2));
        assert!(a.tangential(2).is_tangential());
    }
}
