//! Exact, certificate-producing resolution of surface pairs (X, D): projection to a
//! ruled surface, fiberwise polynomial simplification of the branch divisor,
//! stabilization of the marked sections, and toric resolution of the cyclic
//! quotient points of the resulting cover.

pub mod algebra;
pub mod ruled;
pub mod belyi;
pub mod projection;
pub mod stabilization;
pub mod toric;
pub mod pipeline;
