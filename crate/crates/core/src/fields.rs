//! Vector fields with polynomial coefficients, contact Hamiltonians and the
//! Lagrange bracket.

use std::fmt;
use std::str::FromStr;

use num_traits::One;

use crate::error::{Error, Result};
use crate::mono::{Mono, Var};
use crate::poly::{Generator, Poly};
use crate::rational::{half, int, Rational};
use crate::weight::Weight;

/// `sum_v X_v d_v`, coefficients indexed by variable slot `[z, x_1..x_ell, y_1..y_ell]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VectorField {
    ell: usize,
    coeffs: Vec<Poly>,
}

impl VectorField {
    pub fn zero(ell: usize) -> Self {
        VectorField {
            ell,
            coeffs: vec![Poly::zero(ell); 2 * ell + 1],
        }
    }

    pub fn from_coeffs(ell: usize, coeffs: Vec<Poly>) -> Self {
        assert_eq!(coeffs.len(), 2 * ell + 1);
        VectorField { ell, coeffs }
    }

    /// `g d_v`.
    pub fn along(v: Var, g: Poly) -> Self {
        let ell = g.ell();
        let mut x = VectorField::zero(ell);
        x.coeffs[v.slot(ell)] = g;
        x
    }

    pub fn partial(ell: usize, v: Var) -> Self {
        VectorField::along(v, Poly::one(ell))
    }

    pub fn generator(ell: usize, g: Generator) -> Self {
        let mut x = VectorField::zero(ell);
        match g {
            Generator::Dz => x.coeffs[0] = Poly::one(ell),
            Generator::A(i) => {
                x.coeffs[Var::X(i).slot(ell)] = Poly::one(ell);
                x.coeffs[0] = Poly::y(ell, i).scale(&half());
            }
            Generator::B(i) => {
                x.coeffs[Var::Y(i).slot(ell)] = -Poly::one(ell);
                x.coeffs[0] = Poly::x(ell, i).scale(&half());
            }
        }
        x
    }

    /// `E_z = z d_z`.
    pub fn euler_z(ell: usize) -> Self {
        VectorField::along(Var::Z, Poly::z(ell))
    }

    /// `E_xy = x_i d_{x_i} + y_i d_{y_i}`.
    pub fn euler_xy(ell: usize) -> Self {
        let mut x = VectorField::zero(ell);
        for i in 1..=ell {
            x.coeffs[Var::X(i).slot(ell)] = Poly::x(ell, i);
            x.coeffs[Var::Y(i).slot(ell)] = Poly::y(ell, i);
        }
        x
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn coeff(&self, v: Var) -> &Poly {
        &self.coeffs[v.slot(self.ell)]
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Poly::is_zero)
    }

    pub fn apply(&self, g: &Poly) -> Poly {
        let mut out = Poly::zero(self.ell);
        for v in Var::all(self.ell) {
            let c = self.coeff(v);
            if !c.is_zero() {
                out += &(c * &g.diff(v));
            }
        }
        out
    }

    /// `[X, Y] = XY - YX`.
    pub fn bracket(&self, other: &VectorField) -> VectorField {
        let coeffs = (0..self.coeffs.len())
            .map(|s| &self.apply(&other.coeffs[s]) - &other.apply(&self.coeffs[s]))
            .collect();
        VectorField::from_coeffs(self.ell, coeffs)
    }

    pub fn scale(&self, c: &Rational) -> VectorField {
        VectorField::from_coeffs(self.ell, self.coeffs.iter().map(|p| p.scale(c)).collect())
    }

    /// Pointwise product `g X`.
    pub fn mul_poly(&self, g: &Poly) -> VectorField {
        VectorField::from_coeffs(self.ell, self.coeffs.iter().map(|p| g * p).collect())
    }

    pub fn add(&self, other: &VectorField) -> VectorField {
        VectorField::from_coeffs(
            self.ell,
            self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        )
    }

    pub fn sub(&self, other: &VectorField) -> VectorField {
        VectorField::from_coeffs(
            self.ell,
            self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        )
    }

    /// `sum_u d_u X_u`.
    pub fn divergence(&self) -> Poly {
        let mut out = Poly::zero(self.ell);
        for v in Var::all(self.ell) {
            out += &self.coeff(v).diff(v);
        }
        out
    }

    /// The contact Hamiltonian `<theta, X> = a + (x_i c_i - y_i b_i)/2` for
    /// `X = a d_z + b_i d_{x_i} + c_i d_{y_i}`.
    pub fn pi_projection(&self) -> Poly {
        let ell = self.ell;
        let mut out = self.coeff(Var::Z).clone();
        for i in 1..=ell {
            let xc = &Poly::x(ell, i) * self.coeff(Var::Y(i));
            let yb = &Poly::y(ell, i) * self.coeff(Var::X(i));
            out.add_scaled(&(&xc - &yb), &half());
        }
        out
    }

    pub fn is_tangential(&self) -> bool {
        self.pi_projection().is_zero()
    }

    /// Coordinates `(g_0, a_i, b_i)` with `X = g_0 d_z + a_i A_i + b_i B_i`.
    /// For tangential `X`, `g_0 = 0`.
    pub fn tangent_frame(&self) -> (Poly, Vec<Poly>, Vec<Poly>) {
        let ell = self.ell;
        let a: Vec<Poly> = (1..=ell).map(|i| self.coeff(Var::X(i)).clone()).collect();
        let b: Vec<Poly> = (1..=ell).map(|i| -self.coeff(Var::Y(i))).collect();
        (self.pi_projection(), a, b)
    }

    /// `L_lambda(X) g = X(g) + lambda Div(X) g`.
    pub fn lie_derivative(&self, lambda: &Rational, g: &Poly) -> Poly {
        let mut out = self.apply(g);
        out.add_scaled(&(&self.divergence() * g), lambda);
        out
    }
}

impl fmt::Display for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for v in Var::all(self.ell) {
            let c = self.coeff(v);
            if c.is_zero() {
                continue;
            }
            let d = format!("D{}", v.name());
            parts.push(if c.is_one_poly() { d } else { format!("({c})*{d}") });
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

impl fmt::Debug for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VectorField({self})")
    }
}

impl Poly {
    pub(crate) fn is_one_poly(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }
}

/// `X_f = f d_z + B_i(f) A_i - A_i(f) B_i`.
pub fn hamiltonian_to_field(f: &Poly) -> VectorField {
    let ell = f.ell();
    let mut x = VectorField::along(Var::Z, f.clone());
    for i in 1..=ell {
        let bf = f.apply_generator(Generator::B(i));
        let af = f.apply_generator(Generator::A(i));
        x = x
            .add(&VectorField::generator(ell, Generator::A(i)).mul_poly(&bf))
            .sub(&VectorField::generator(ell, Generator::B(i)).mul_poly(&af));
    }
    x
}

/// `(1 - E_xy/2) f`.
fn half_euler_complement(f: &Poly) -> Poly {
    let mut out = Poly::zero(f.ell());
    for (m, c) in f.terms() {
        let w = Rational::one() - Rational::new(m.xy_degree().into(), 2.into());
        out.add_term(m.clone(), c * w);
    }
    out
}

/// The four displayed expressions for `{f, g}` in the order
/// `X_f(g) - g d_z f`, `f d_z g - X_g(f)`, the `A, B` form and the Darboux form.
pub fn lagrange_bracket_forms(f: &Poly, g: &Poly) -> [Poly; 4] {
    let ell = f.ell();
    let fz = f.diff(Var::Z);
    let gz = g.diff(Var::Z);
    let first = &hamiltonian_to_field(f).apply(g) - &(g * &fz);
    let second = &(f * &gz) - &hamiltonian_to_field(g).apply(f);
    let mut third = &(f * &gz) - &(&fz * g);
    for i in 1..=ell {
        let bf = f.apply_generator(Generator::B(i));
        let af = f.apply_generator(Generator::A(i));
        third += &(&bf * &g.apply_generator(Generator::A(i)));
        third -= &(&af * &g.apply_generator(Generator::B(i)));
    }
    let mut fourth = &(&half_euler_complement(f) * &gz) - &(&half_euler_complement(g) * &fz);
    for i in 1..=ell {
        fourth += &(&f.diff(Var::X(i)) * &g.diff(Var::Y(i)));
        fourth -= &(&f.diff(Var::Y(i)) * &g.diff(Var::X(i)));
    }
    [first, second, third, fourth]
}

/// The Lagrange bracket. Computed by the Darboux form; debug builds check that
/// every displayed form agrees.
pub fn lagrange_bracket(f: &Poly, g: &Poly) -> Poly {
    if cfg!(debug_assertions) {
        let [a, b, c, d] = lagrange_bracket_forms(f, g);
        debug_assert!(a == b && b == c && c == d, "bracket forms disagree for {f}, {g}");
        return d;
    }
    lagrange_bracket_forms(f, g)[3].clone()
}

/// `L_lambda(X) g = X(g) + lambda Div(X) g`.
pub fn density_lie_derivative(x: &VectorField, lambda: &Rational, g: &Poly) -> Poly {
    x.lie_derivative(lambda, g)
}

/// The `h_m`-weight of `X_f` for `f = x^I y^J z^c`:
/// `(2c + |I| + |J| - 2) e_0 - sum (I_i - J_i) e_i`.
pub fn field_weight(f: &Poly) -> Result<Weight> {
    let (m, _) = f.as_monomial().ok_or(Error::NotMonomial(f.len()))?;
    Ok(monomial_weight(m))
}

pub(crate) fn monomial_weight(m: &Mono) -> Weight {
    let ell = m.ell();
    let mut coords = vec![int(m.heisenberg_degree() as i64 - 2)];
    for i in 0..ell {
        coords.push(int(m.ys()[i] as i64 - m.xs()[i] as i64));
    }
    Weight::from_coords(coords)
}

/// Named sub-algebras of contact Hamiltonians.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Subalgebra {
    /// Heisenberg nilradical `u_m`.
    Um,
    /// Levi factor `l_m`.
    Lm,
    /// The projective subalgebra `s_m`, all polynomials of degree at most 2.
    Sm,
    /// Cartan subalgebra `h_m`.
    Hm,
    NegativeRoots,
    /// The affine parabolic `t_m = l_m + u_m`.
    Tm,
}

impl FromStr for Subalgebra {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "u_m" | "um" => Subalgebra::Um,
            "l_m" | "lm" => Subalgebra::Lm,
            "s_m" | "sm" => Subalgebra::Sm,
            "h_m" | "hm" => Subalgebra::Hm,
            "t_m" | "tm" => Subalgebra::Tm,
            "negative_roots" => Subalgebra::NegativeRoots,
            _ => {
                return Err(Error::Unknown {
                    kind: "subalgebra",
                    name: s.into(),
                })
            }
        })
    }
}

fn mono_poly(ell: usize, vars: &[Var]) -> Poly {
    let mut m = Mono::one(ell);
    for &v in vars {
        m = m.raise(v);
    }
    Poly::monomial(m)
}

pub fn subalgebra_basis(ell: usize, which: Subalgebra) -> Vec<Poly> {
    let x = Var::X;
    let y = Var::Y;
    match which {
        Subalgebra::Um => {
            let mut out = vec![Poly::one(ell)];
            out.extend((1..=ell).map(|i| Poly::x(ell, i)));
            out.extend((1..=ell).map(|i| Poly::y(ell, i)));
            out
        }
        Subalgebra::Lm => {
            let mut out = Vec::new();
            for i in 1..=ell {
                for j in i..=ell {
                    out.push(mono_poly(ell, &[x(i), x(j)]));
                }
            }
            for i in 1..=ell {
                for j in 1..=ell {
                    out.push(mono_poly(ell, &[x(i), y(j)]));
                }
            }
            for i in 1..=ell {
                for j in i..=ell {
                    out.push(mono_poly(ell, &[y(i), y(j)]));
                }
            }
            out.push(Poly::z(ell));
            out
        }
        Subalgebra::Tm => {
            let mut out = subalgebra_basis(ell, Subalgebra::Um);
            out.extend(subalgebra_basis(ell, Subalgebra::Lm));
            out
        }
        Subalgebra::Sm => Mono::all_up_to_degree(ell, 2).into_iter().map(Poly::monomial).collect(),
        Subalgebra::Hm => {
            let mut out = vec![Poly::z(ell).scale(&int(2))];
            out.extend((1..=ell).map(|i| mono_poly(ell, &[x(i), y(i)])));
            out
        }
        Subalgebra::NegativeRoots => {
            let mut out = subalgebra_basis(ell, Subalgebra::Um);
            for i in 1..=ell {
                for j in i..=ell {
                    out.push(mono_poly(ell, &[x(i), x(j)]));
                }
            }
            for i in 1..=ell {
                for j in i + 1..=ell {
                    out.push(mono_poly(ell, &[x(i), y(j)]));
                }
            }
            out
        }
    }
}

/// Cubic Hamiltonians in `x_1, y_1`.
pub fn cubic_sample(ell: usize) -> Vec<Poly> {
    let (x, y) = (Var::X(1), Var::Y(1));
    vec![
        mono_poly(ell, &[x, x, x]),
        mono_poly(ell, &[x, x, y]),
        mono_poly(ell, &[x, y, y]),
        mono_poly(ell, &[y, y, y]),
    ]
}

/// Generators of the projective algebra `a_m = sl(m+1)` of all of `R^m`:
/// `d_u`, `u_j d_{u_i}` and `u_j E_u` with `E_u = sum_k u_k d_{u_k}`.
pub fn affine_projective_generators(ell: usize) -> Vec<VectorField> {
    let vars: Vec<Var> = Var::all(ell).collect();
    let euler = {
        let mut e = VectorField::zero(ell);
        for &v in &vars {
            e = e.add(&VectorField::along(v, Poly::var(ell, v)));
        }
        e
    };
    let mut out = Vec::new();
    for &v in &vars {
        out.push(VectorField::partial(ell, v));
    }
    for &vi in &vars {
        for &vj in &vars {
            out.push(VectorField::along(vi, Poly::var(ell, vj)));
        }
    }
    for &v in &vars {
        out.push(euler.mul_poly(&Poly::var(ell, v)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    const L: usize = 1;

    fn x1() -> Poly {
        Poly::x(L, 1)
    }
    fn y1() -> Poly {
        Poly::y(L, 1)
    }
    fn z() -> Poly {
        Poly::z(L)
    }

    #[test]
    fn hamiltonian_examples() {
        let xy = &x1() * &y1();
        let expect = VectorField::along(Var::Y(1), y1()).sub(&VectorField::along(Var::X(1), x1()));
        assert_eq!(hamiltonian_to_field(&xy), expect);
        assert_eq!(hamiltonian_to_field(&Poly::one(L)), VectorField::partial(L, Var::Z));
        let ez = VectorField::euler_z(L).add(&VectorField::euler_xy(L).scale(&half()));
        assert_eq!(hamiltonian_to_field(&z()), ez);
    }

    #[test]
    fn bracket_examples() {
        assert_eq!(lagrange_bracket(&x1(), &y1()), Poly::one(L));
        let f = &(&x1() * &z()) + &y1();
        assert!(lagrange_bracket(&f, &f).is_zero());
        assert_eq!(lagrange_bracket(&z(), &x1()), x1().scale(&q(-1, 2)));
    }

    #[test]
    fn bracket_matches_field_commutator() {
        let ms = Mono::all_up_to_degree(2, 2);
        for a in &ms {
            for b in &ms {
                let (f, g) = (Poly::monomial(a.clone()), Poly::monomial(b.clone()));
                let lhs = hamiltonian_to_field(&lagrange_bracket(&f, &g));
                let rhs = hamiltonian_to_field(&f).bracket(&hamiltonian_to_field(&g));
                assert_eq!(lhs, rhs, "{f} {g}");
            }
        }
    }

    #[test]
    fn divergence_examples() {
        assert_eq!(hamiltonian_to_field(&z()).divergence(), Poly::constant(L, int(2)));
        assert!(VectorField::generator(L, Generator::A(1)).divergence().is_zero());
        assert_eq!(VectorField::euler_z(L).divergence(), Poly::one(L));
    }

    #[test]
    fn projection_examples() {
        let f = &(&x1() * &z()) + &y1().pow(3);
        assert_eq!(hamiltonian_to_field(&f).pi_projection(), f);
        assert!(VectorField::generator(L, Generator::A(1)).is_tangential());
        assert_eq!(
            VectorField::partial(L, Var::X(1)).pi_projection(),
            y1().scale(&q(-1, 2))
        );
    }

    #[test]
    fn lie_derivative_examples() {
        let g = &x1() * &z();
        let l = q(2, 5);
        let one = hamiltonian_to_field(&Poly::one(L));
        assert_eq!(density_lie_derivative(&one, &l, &g), g.diff(Var::Z));
        let f = &x1() * &(&z() + &y1());
        let xf = hamiltonian_to_field(&f);
        let expect = &xf.apply(&g) + &(&f.diff(Var::Z) * &g).scale(&(&l * int(2)));
        assert_eq!(density_lie_derivative(&xf, &l, &g), expect);
        let hw = q(-1, (L + 1) as i64);
        assert_eq!(density_lie_derivative(&xf, &hw, &g), lagrange_bracket(&f, &g));
    }

    #[test]
    fn weight_examples() {
        assert_eq!(field_weight(&x1().pow(3)).unwrap(), Weight::from_ints(&[1, -3]));
        assert_eq!(field_weight(&Poly::one(L)).unwrap(), Weight::from_ints(&[-2, 0]));
        assert_eq!(field_weight(&z()).unwrap(), Weight::zero(L));
        assert!(field_weight(&(&x1() + &z())).is_err());
    }

    #[test]
    fn basis_contents() {
        assert_eq!(subalgebra_basis(1, Subalgebra::Um), vec![Poly::one(1), x1(), y1()]);
        assert_eq!(subalgebra_basis(1, Subalgebra::Sm).len(), 10);
        assert_eq!(subalgebra_basis(2, Subalgebra::Sm).len(), 3 * 7);
        assert_eq!(
            subalgebra_basis(1, Subalgebra::Hm),
            vec![z().scale(&int(2)), &x1() * &y1()]
        );
        // (ell+1)^2 negative roots of C_{ell+1}
        assert_eq!(subalgebra_basis(1, Subalgebra::NegativeRoots).len(), 4);
        assert_eq!(subalgebra_basis(2, Subalgebra::NegativeRoots).len(), 9);
        assert_eq!(affine_projective_generators(1).len(), 15);
        assert!("nope".parse::<Subalgebra>().is_err());
    }

    #[test]
    fn euler_xy_in_tangent_frame() {
        let ell = 2;
        let mut rhs = VectorField::zero(ell);
        for i in 1..=ell {
            rhs = rhs
                .add(&VectorField::generator(ell, Generator::A(i)).mul_poly(&Poly::x(ell, i)))
                .sub(&VectorField::generator(ell, Generator::B(i)).mul_poly(&Poly::y(ell, i)));
        }
        assert_eq!(VectorField::euler_xy(ell), rhs);
    }
}
