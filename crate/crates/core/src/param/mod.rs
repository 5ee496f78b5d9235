//! Exact coefficient field: rational functions over Q in the curve parameters.
//!
//! The free symbols are `e1`, `e2`, `a` and the degeneration parameter `e`.
//! The third root `e3` is never a symbol; it is always `-e1 - e2`.

mod gcd;
mod poly;
mod render;
mod scalar;
mod specialize;

pub use poly::{Monomial, ParamPoly};
pub use scalar::ParamScalar;
pub use specialize::Specialization;

use num_bigint::BigInt;

/// Arbitrary-precision rational, always stored reduced with positive denominator.
pub type Rational = num_rational::BigRational;

/// Integer as a rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub const NUM_SYMBOLS: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    E1,
    E2,
    A,
    /// The repeated root of a nodal cubic.
    E,
}

impl Symbol {
    pub const ALL: [Symbol; NUM_SYMBOLS] = [Symbol::E1, Symbol::E2, Symbol::A, Symbol::E];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Symbol::E1 => "e1",
            Symbol::E2 => "e2",
            Symbol::A => "a",
            Symbol::E => "e",
        }
    }

    pub fn from_name(name: &str) -> Option<Symbol> {
        Symbol::ALL.into_iter().find(|s| s.name() == name)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("specialization makes the denominator vanish")]
    SpecializationPole,
}
