//! Exact symbolic engine for Krichever-Novikov vector field algebras on
//! cubic curves with two or three markings, their degenerations to the
//! nodal and cuspidal cubics, and the induced algebras on the projective line.
//!
//! Everything is exact: coefficients live in the rational function field
//! Q(e1, e2, a, e) and no floating point is used anywhere.

#![no_std]

extern crate alloc;

pub mod curve;
pub mod degen;
pub mod kn;
pub mod laurent;
pub mod oracle;
pub mod p1;
pub mod p1fn;
pub mod param;
pub mod printed;

pub use laurent::Laurent;
pub use param::{rat, rat_frac, FieldError, ParamPoly, ParamScalar, Rational, Specialization, Symbol};
