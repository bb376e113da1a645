//! Exact symbolic calculus for differential operators between tensor densities
//! on the contact space `R^(2l+1)`.

pub mod cli;
pub mod context;
pub mod error;
pub mod expr;
pub mod fields;
pub mod infchar;
pub mod mono;
pub mod ops;
pub mod poly;
pub mod quantize;
pub mod rational;
pub mod sample;
pub mod symbol;
pub mod verify;
pub mod weight;

pub use context::Context;
pub use error::{Error, Result};
pub use mono::{Mono, Var};
pub use ops::{DiffOp, HeisenbergForm};
pub use poly::{Generator, Poly};
pub use rational::Rational;
pub use symbol::{Basis, FineComponent, SymbolPoly};
pub use weight::Weight;
