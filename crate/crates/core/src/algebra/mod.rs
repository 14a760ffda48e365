//! Exact arithmetic kernel: rationals, simple number fields, univariate and
//! multivariate polynomials, resultants, factorization and local jets.

mod error;
pub mod factor;
pub mod gcd;
pub mod jet;
pub mod numfield;
pub mod parse;
pub mod poly;
pub mod rational;
pub mod resultant;
pub mod scalar;
pub mod upoly;

pub use error::AlgebraError;
pub use factor::{factor_rational, rational_roots, Factorization};
pub use gcd::{poly_gcd, squarefree_layers, squarefree_part, squarefree_part_total};
pub use jet::{valuation_upoly, BasePoint, LocalJet, Valuation};
pub use numfield::{Nf, NumberField};
pub use poly::{Monomial, Poly};
pub use rational::Rational;
pub use resultant::{discriminant, resultant};
pub use scalar::Scalar;
pub use upoly::UPoly;
