//! Text syntax for polynomials, operators and symbols.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*')? unary)*        juxtaposition is composition
//! unary  := '-' unary | power
//! power  := atom ('^' nat)?
//! atom   := rational | ident | 'Xf' '{' expr '}' | '(' expr ')'
//! ```
//!
//! Identifiers: `x<i>`, `y<i>`, `z`; in operators also `Dz`, `Dx<i>`, `Dy<i>`,
//! `A<i>`, `B<i>`; in symbols `zeta`, `alpha<i>`, `beta<i>` or `xiz`, `xix<i>`, `xiy<i>`.

use num_traits::One;

use crate::context::Context;
use crate::error::{Error, Result};
use crate::fields::hamiltonian_to_field;
use crate::mono::{Mono, Var};
use crate::ops::DiffOp;
use crate::poly::{Generator, Poly};
use crate::rational::{parse_rational, Rational};
use crate::symbol::{Basis, SymbolPoly};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Rational),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    LBrace,
    RBrace,
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>> {
    let b = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let c = b[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'{' => Tok::LBrace,
            b'}' => Tok::RBrace,
            b'0'..=b'9' => {
                while i < b.len() && b[i].is_ascii_digit() {
                    i += 1;
                }
                if i + 1 < b.len() && b[i] == b'/' && b[i + 1].is_ascii_digit() {
                    i += 1;
                    while i < b.len() && b[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                let text = &src[start..i];
                let r = parse_rational(text).ok_or_else(|| perr(start, format!("bad number {text}")))?;
                out.push((start, Tok::Num(r)));
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                while i < b.len() && b[i].is_ascii_alphabetic() {
                    i += 1;
                }
                while i < b.len() && b[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Tok::Ident(src[start..i].to_string())));
                continue;
            }
            _ => return Err(perr(start, format!("unexpected character {:?}", c as char))),
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

fn perr(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse { pos, msg: msg.into() }
}

#[derive(Clone, Debug)]
enum Expr {
    Num(Rational),
    Ident(usize, String),
    Xf(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    len: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn at(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.0).unwrap_or(self.len)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|t| t.1.clone());
        self.pos += 1;
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<()> {
        let at = self.at();
        match self.bump() {
            Some(t) if t == want => Ok(()),
            _ => Err(perr(at, format!("expected {what}"))),
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                }
                Some(Tok::Num(_) | Tok::Ident(_) | Tok::LParen) => {}
                _ => return Ok(lhs),
            }
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.bump();
            let at = self.at();
            match self.bump() {
                Some(Tok::Num(r)) if r.is_integer() && r >= Rational::from_integer(0.into()) => {
                    let e: u32 = r.to_integer().try_into().map_err(|_| perr(at, "exponent too large"))?;
                    return Ok(Expr::Pow(Box::new(base), e));
                }
                _ => return Err(perr(at, "exponent must be a natural number")),
            }
        }
        Ok(base)
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.peek() == Some(&Tok::Minus) {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn atom(&mut self) -> Result<Expr> {
        let at = self.at();
        match self.bump() {
            Some(Tok::Num(r)) => Ok(Expr::Num(r)),
            Some(Tok::Ident(s)) if s == "Xf" => {
                self.expect(Tok::LBrace, "'{' after Xf")?;
                let inner = self.expr()?;
                self.expect(Tok::RBrace, "'}'")?;
                Ok(Expr::Xf(Box::new(inner)))
            }
            Some(Tok::Ident(s)) => Ok(Expr::Ident(at, s)),
            Some(Tok::LParen) => {
                let e = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(e)
            }
            Some(_) => Err(perr(at, "expected a number, identifier or '('")),
            None => Err(perr(at, "unexpected end of input")),
        }
    }
}

fn parse_ast(src: &str) -> Result<Expr> {
    let toks = lex(src)?;
    let mut p = Parser {
        toks,
        pos: 0,
        len: src.len(),
    };
    if p.peek().is_none() {
        return Err(perr(0, "empty expression"));
    }
    let e = p.expr()?;
    if p.peek().is_some() {
        return Err(perr(p.at(), "unexpected trailing input"));
    }
    Ok(e)
}

/// Splits `stem<digits>` and checks `1 <= index <= ell`.
fn indexed(name: &str, stem: &str, ell: usize, pos: usize) -> Result<Option<usize>> {
    let Some(rest) = name.strip_prefix(stem) else {
        return Ok(None);
    };
    if rest.is_empty() || !rest.bytes().all(|c| c.is_ascii_digit()) {
        return Ok(None);
    }
    let i: usize = rest.parse().map_err(|_| perr(pos, "bad index"))?;
    if i == 0 || i > ell {
        return Err(perr(pos, format!("index {i} in {name} out of range 1..={ell}")));
    }
    Ok(Some(i))
}

fn base_var(name: &str, ell: usize, pos: usize) -> Result<Option<Var>> {
    if name == "z" {
        return Ok(Some(Var::Z));
    }
    if let Some(i) = indexed(name, "x", ell, pos)? {
        return Ok(Some(Var::X(i)));
    }
    if let Some(i) = indexed(name, "y", ell, pos)? {
        return Ok(Some(Var::Y(i)));
    }
    Ok(None)
}

fn unknown(pos: usize, name: &str, what: &str) -> Error {
    perr(pos, format!("unknown {what} identifier {name}"))
}

fn to_poly(e: &Expr, ell: usize) -> Result<Poly> {
    Ok(match e {
        Expr::Num(r) => Poly::constant(ell, r.clone()),
        Expr::Ident(pos, s) => match base_var(s, ell, *pos)? {
            Some(v) => Poly::var(ell, v),
            None => return Err(unknown(*pos, s, "polynomial")),
        },
        Expr::Xf(_) => return Err(perr(0, "Xf{...} is not a polynomial")),
        Expr::Add(a, b) => to_poly(a, ell)? + to_poly(b, ell)?,
        Expr::Sub(a, b) => to_poly(a, ell)? - to_poly(b, ell)?,
        Expr::Mul(a, b) => to_poly(a, ell)? * to_poly(b, ell)?,
        Expr::Neg(a) => -to_poly(a, ell)?,
        Expr::Pow(a, n) => to_poly(a, ell)?.pow(*n),
    })
}

fn to_op(e: &Expr, ell: usize) -> Result<DiffOp> {
    let zero = Rational::from_integer(0.into());
    Ok(match e {
        Expr::Num(r) => DiffOp::multiplication(Poly::constant(ell, r.clone()), zero),
        Expr::Ident(pos, s) => {
            if let Some(v) = base_var(s, ell, *pos)? {
                DiffOp::multiplication(Poly::var(ell, v), zero)
            } else if s == "Dz" {
                DiffOp::partial(Mono::var(ell, Var::Z))
            } else if let Some(i) = indexed(s, "Dx", ell, *pos)? {
                DiffOp::partial(Mono::var(ell, Var::X(i)))
            } else if let Some(i) = indexed(s, "Dy", ell, *pos)? {
                DiffOp::partial(Mono::var(ell, Var::Y(i)))
            } else if let Some(i) = indexed(s, "A", ell, *pos)? {
                DiffOp::generator(ell, Generator::A(i))
            } else if let Some(i) = indexed(s, "B", ell, *pos)? {
                DiffOp::generator(ell, Generator::B(i))
            } else {
                return Err(unknown(*pos, s, "operator"));
            }
        }
        Expr::Xf(f) => DiffOp::from_field(&hamiltonian_to_field(&to_poly(f, ell)?)),
        Expr::Add(a, b) => to_op(a, ell)?.add_raw(&to_op(b, ell)?),
        Expr::Sub(a, b) => to_op(a, ell)?.sub_raw(&to_op(b, ell)?),
        Expr::Mul(a, b) => to_op(a, ell)?.compose_raw(&to_op(b, ell)?),
        Expr::Neg(a) => to_op(a, ell)?.scale(&-Rational::one()),
        Expr::Pow(a, n) => to_op(a, ell)?.pow(*n),
    })
}

fn fiber_var(name: &str, ell: usize, pos: usize) -> Result<Option<(Basis, Var)>> {
    let ab = Basis::AlphaBeta;
    let xi = Basis::Xi;
    Ok(if name == "zeta" {
        Some((ab, Var::Z))
    } else if name == "xiz" {
        Some((xi, Var::Z))
    } else if let Some(i) = indexed(name, "alpha", ell, pos)? {
        Some((ab, Var::X(i)))
    } else if let Some(i) = indexed(name, "beta", ell, pos)? {
        Some((ab, Var::Y(i)))
    } else if let Some(i) = indexed(name, "xix", ell, pos)? {
        Some((xi, Var::X(i)))
    } else {
        indexed(name, "xiy", ell, pos)?.map(|i| (xi, Var::Y(i)))
    })
}

fn detect_basis(e: &Expr, ell: usize, found: &mut Option<Basis>) -> Result<()> {
    match e {
        Expr::Ident(pos, s) => {
            if let Some((b, _)) = fiber_var(s, ell, *pos)? {
                match found {
                    Some(prev) if *prev != b => {
                        return Err(perr(*pos, "symbol mixes xi and (zeta, alpha, beta) variables"))
                    }
                    _ => *found = Some(b),
                }
            }
        }
        Expr::Num(_) | Expr::Xf(_) => {}
        Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
            detect_basis(a, ell, found)?;
            detect_basis(b, ell, found)?;
        }
        Expr::Neg(a) | Expr::Pow(a, _) => detect_basis(a, ell, found)?,
    }
    Ok(())
}

fn to_symbol(e: &Expr, ell: usize, delta: &Rational, basis: Basis) -> Result<SymbolPoly> {
    let coeff = |p: Poly| SymbolPoly::monomial(delta.clone(), basis, Mono::one(ell), p);
    Ok(match e {
        Expr::Num(r) => coeff(Poly::constant(ell, r.clone())),
        Expr::Ident(pos, s) => {
            if let Some(v) = base_var(s, ell, *pos)? {
                coeff(Poly::var(ell, v))
            } else if let Some((_, v)) = fiber_var(s, ell, *pos)? {
                SymbolPoly::fiber_var(ell, delta.clone(), basis, v)
            } else {
                return Err(unknown(*pos, s, "symbol"));
            }
        }
        Expr::Xf(_) => return Err(perr(0, "Xf{...} is not a symbol")),
        Expr::Add(a, b) => to_symbol(a, ell, delta, basis)?.try_add(&to_symbol(b, ell, delta, basis)?)?,
        Expr::Sub(a, b) => to_symbol(a, ell, delta, basis)?.try_sub(&to_symbol(b, ell, delta, basis)?)?,
        Expr::Mul(a, b) => to_symbol(a, ell, delta, basis)?.try_mul(&to_symbol(b, ell, delta, basis)?)?,
        Expr::Neg(a) => to_symbol(a, ell, delta, basis)?.scale(&-Rational::one()),
        Expr::Pow(a, n) => {
            let base = to_symbol(a, ell, delta, basis)?;
            let mut acc = coeff(Poly::one(ell));
            for _ in 0..*n {
                acc = acc.try_mul(&base)?;
            }
            acc
        }
    })
}

pub fn parse_poly(src: &str, ell: usize) -> Result<Poly> {
    to_poly(&parse_ast(src)?, ell)
}

/// Parses an operator and tags it with the context weights (both `0` if unset).
pub fn parse_op(src: &str, ctx: &Context) -> Result<DiffOp> {
    let t = to_op(&parse_ast(src)?, ctx.ell())?;
    let zero = Rational::from_integer(0.into());
    let lam = ctx.lambda().cloned().unwrap_or_else(|| zero.clone());
    let mu = ctx.mu().cloned().unwrap_or(zero);
    Ok(t.with_weights(lam, mu))
}

/// Parses a symbol; the basis is read off the fiber variables, defaulting to
/// `(zeta, alpha, beta)` when there are none.
pub fn parse_symbol(src: &str, ell: usize, delta: &Rational) -> Result<SymbolPoly> {
    let ast = parse_ast(src)?;
    let mut basis = None;
    detect_basis(&ast, ell, &mut basis)?;
    to_symbol(&ast, ell, delta, basis.unwrap_or(Basis::AlphaBeta))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::VectorField;
    use crate::rational::{int, q};

    fn ctx() -> Context {
        Context::new(1).unwrap()
    }

    #[test]
    fn operator_examples() {
        let t = parse_op("z*Dz^2", &ctx()).unwrap();
        assert_eq!(t.to_string(), "z*Dz^2");
        let x = parse_op("Xf{x1*y1}", &ctx()).unwrap();
        let want = VectorField::along(Var::Y(1), Poly::y(1, 1)).sub(&VectorField::along(Var::X(1), Poly::x(1, 1)));
        assert_eq!(x, DiffOp::from_field(&want));
        let c = parse_op("A1*B1 - B1*A1", &ctx()).unwrap();
        assert_eq!(c, DiffOp::partial(Mono::var(1, Var::Z)));
        assert_eq!(parse_op("A1 B1 - B1 A1", &ctx()).unwrap(), c);
        assert_eq!(parse_op("Dz z", &ctx()).unwrap().to_string(), "z*Dz + 1");
    }

    #[test]
    fn weights_come_from_context() {
        let c = Context::with_weights(1, q(1, 3), q(1, 2)).unwrap();
        let t = parse_op("Dz", &c).unwrap();
        assert_eq!((t.lambda(), t.mu()), (&q(1, 3), &q(1, 2)));
    }

    #[test]
    fn errors_carry_positions() {
        assert!(matches!(parse_op("x3", &ctx()), Err(Error::Parse { pos: 0, .. })));
        assert!(matches!(parse_op("z + Dq", &ctx()), Err(Error::Parse { pos: 4, .. })));
        assert!(matches!(parse_op("(z", &ctx()), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!(parse_op("z^x1", &ctx()), Err(Error::Parse { .. })));
        assert!(parse_op("", &ctx()).is_err());
        assert!(parse_symbol("zeta + xiz", 1, &int(0)).is_err());
    }

    #[test]
    fn symbols_and_round_trip() {
        let s = parse_symbol("x1*zeta - 1/2*alpha1^2", 1, &int(0)).unwrap();
        assert_eq!(s.basis(), Basis::AlphaBeta);
        assert_eq!(parse_symbol(&s.to_string(), 1, &int(0)).unwrap(), s);
        let x = parse_symbol("z xiz xix1", 1, &int(0)).unwrap();
        assert_eq!(x.basis(), Basis::Xi);
        for src in ["-1/2*y1*Dz + Dx1", "(z + 1)*Dx1*Dy1 - 3", "Xf{z^2}^2", "A1^3 - x1*B1"] {
            let t = parse_op(src, &ctx()).unwrap();
            assert_eq!(parse_op(&t.to_string(), &ctx()).unwrap(), t, "{src}");
        }
        assert_eq!(parse_poly("(x1 + z)^2 - z^2", 1).unwrap().to_string(), "2*z*x1 + x1^2");
    }

    #[test]
    fn minus_binds_looser_than_power() {
        assert_eq!(parse_poly("-z^2", 1).unwrap(), -Poly::z(1).pow(2));
        assert_eq!(
            parse_poly("x1*-z^2", 1).unwrap(),
            -(&Poly::x(1, 1) * &Poly::z(1).pow(2))
        );
        assert_eq!(parse_poly("(-z)^2", 1).unwrap(), Poly::z(1).pow(2));
    }
}
