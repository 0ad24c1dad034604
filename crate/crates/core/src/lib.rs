//! Exact computations around Rees algebras, their Proj, and the refined
//! blowup of an affine scheme along an ideal.
//!
//! The base is always `R = k[x]/J` with `k` either the rationals or a prime
//! field; every object is a finitely presented module interrogated on finite
//! degree windows.

pub mod base;
pub mod derived;
pub mod error;
pub mod field;
pub mod graded;
pub mod groebner;
pub mod mono;
pub mod parse;
pub mod poly;
pub mod proj;
pub mod rees;

pub use base::{BaseRing, Subquotient};
pub use error::{AlgebraError, Result};
pub use field::{Field, Fp, Rational};
pub use groebner::{GroebnerBasis, Ideal, Limits};
pub use mono::{ModuleOrder, Mono, MonoOrder, TermOrder};
pub use poly::{Poly, Vector};
