use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::gcd::gcd;
use super::{FieldError, ParamPoly, Rational, Symbol};

/// Element of Q(e1, e2, a, e) kept in canonical reduced form: numerator and
/// denominator coprime, denominator monic in the grlex order. Structural
/// equality is therefore field equality.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ParamScalar {
    num: ParamPoly,
    den: ParamPoly,
}

impl Default for ParamScalar {
    fn default() -> Self {
        ParamScalar::zero()
    }
}

impl ParamScalar {
    pub fn new(num: ParamPoly, den: ParamPoly) -> Result<Self, FieldError> {
        if den.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(Self::normalize(num, den))
    }

    fn normalize(num: ParamPoly, den: ParamPoly) -> Self {
        if num.is_zero() {
            return ParamScalar::zero();
        }
        if let Some(c) = den.constant_value() {
            return ParamScalar {
                num: num.scale(&c.recip()),
                den: ParamPoly::one(),
            };
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_constant() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        let lc = den.leading_coeff();
        if lc.is_one() {
            ParamScalar { num, den }
        } else {
            let inv = lc.recip();
            ParamScalar {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    /// Makes the denominator monic; the caller guarantees coprimality.
    fn from_coprime(num: ParamPoly, den: ParamPoly) -> Self {
        if num.is_zero() {
            return ParamScalar::zero();
        }
        let lc = den.leading_coeff();
        if lc.is_one() {
            ParamScalar { num, den }
        } else {
            let inv = lc.recip();
            ParamScalar {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn zero() -> Self {
        ParamScalar {
            num: ParamPoly::zero(),
            den: ParamPoly::one(),
        }
    }

    pub fn one() -> Self {
        ParamScalar::from_rational(Rational::one())
    }

    pub fn from_int(n: i64) -> Self {
        ParamScalar::from_rational(super::rat(n))
    }

    pub fn from_frac(n: i64, d: i64) -> Self {
        ParamScalar::from_rational(super::rat_frac(n, d))
    }

    pub fn from_rational(c: Rational) -> Self {
        ParamScalar {
            num: ParamPoly::constant(c),
            den: ParamPoly::one(),
        }
    }

    pub fn from_poly(p: ParamPoly) -> Self {
        ParamScalar {
            num: p,
            den: ParamPoly::one(),
        }
    }

    pub fn sym(s: Symbol) -> Self {
        ParamScalar::from_poly(ParamPoly::var(s))
    }

    pub fn e1() -> Self {
        ParamScalar::sym(Symbol::E1)
    }

    pub fn e2() -> Self {
        ParamScalar::sym(Symbol::E2)
    }

    /// The eliminated third root, `-e1 - e2`.
    pub fn e3() -> Self {
        ParamScalar::from_poly(ParamPoly::e3())
    }

    pub fn a() -> Self {
        ParamScalar::sym(Symbol::A)
    }

    pub fn e() -> Self {
        ParamScalar::sym(Symbol::E)
    }

    pub fn numer(&self) -> &ParamPoly {
        &self.num
    }

    pub fn denom(&self) -> &ParamPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_constant() && self.num.constant_value().is_some_and(|c| c.is_one())
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// The value as a rational, if the element does not depend on any symbol.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.den.is_constant() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn contains(&self, s: Symbol) -> bool {
        self.num.contains(s) || self.den.contains(s)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return ParamScalar::zero();
        }
        ParamScalar {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn inv(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(Self::normalize(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &ParamScalar) -> Result<Self, FieldError> {
        if rhs.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(Self::normalize(&self.num * &rhs.den, &self.den * &rhs.num))
    }

    pub fn pow(&self, n: i64) -> Result<Self, FieldError> {
        if n >= 0 {
            Ok(ParamScalar {
                num: self.num.pow(n as u32),
                den: self.den.pow(n as u32),
            }
            .renormalized())
        } else {
            self.inv()?.pow(-n)
        }
    }

    fn renormalized(self) -> Self {
        if self.den.is_constant() {
            // powers of a monic constant stay 1
            self
        } else {
            let lc = self.den.leading_coeff();
            if lc.is_one() {
                self
            } else {
                Self::normalize(self.num, self.den)
            }
        }
    }

    /// Equality by cross-multiplication; agrees with `==` on canonical forms.
    pub fn cross_eq(&self, other: &ParamScalar) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }

    /// Idempotent re-normalization; exposed for property tests.
    pub fn canonicalized(&self) -> Self {
        Self::normalize(self.num.clone(), self.den.clone())
    }
}

impl From<Rational> for ParamScalar {
    fn from(c: Rational) -> Self {
        ParamScalar::from_rational(c)
    }
}

impl From<ParamPoly> for ParamScalar {
    fn from(p: ParamPoly) -> Self {
        ParamScalar::from_poly(p)
    }
}

impl From<Symbol> for ParamScalar {
    fn from(s: Symbol) -> Self {
        ParamScalar::sym(s)
    }
}

impl From<i64> for ParamScalar {
    fn from(n: i64) -> Self {
        ParamScalar::from_int(n)
    }
}

/// Removes the common factor of `n` and `d`.
fn cancel(n: &ParamPoly, d: &ParamPoly) -> (ParamPoly, ParamPoly) {
    if d.is_constant() {
        return (n.clone(), d.clone());
    }
    let g = gcd(n, d);
    if g.is_constant() {
        (n.clone(), d.clone())
    } else {
        (n.div_exact(&g).expect("gcd divides"), d.div_exact(&g).expect("gcd divides"))
    }
}

impl Add for &ParamScalar {
    type Output = ParamScalar;
    fn add(self, rhs: &ParamScalar) -> ParamScalar {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den.is_constant() && rhs.den.is_constant() {
            // both denominators are 1
            return ParamScalar {
                num: &self.num + &rhs.num,
                den: ParamPoly::one(),
            };
        }
        // Henrici: only the common part of the denominators can cancel.
        let g = gcd(&self.den, &rhs.den);
        if g.is_constant() {
            return ParamScalar::from_coprime(
                &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
                &self.den * &rhs.den,
            );
        }
        let d1 = self.den.div_exact(&g).expect("gcd divides");
        let d2 = rhs.den.div_exact(&g).expect("gcd divides");
        let num = &(&self.num * &d2) + &(&rhs.num * &d1);
        if num.is_zero() {
            return ParamScalar::zero();
        }
        let h = gcd(&num, &g);
        let den = &self.den * &d2;
        if h.is_constant() {
            ParamScalar::from_coprime(num, den)
        } else {
            ParamScalar::from_coprime(
                num.div_exact(&h).expect("gcd divides"),
                den.div_exact(&h).expect("gcd divides"),
            )
        }
    }
}

impl Sub for &ParamScalar {
    type Output = ParamScalar;
    fn sub(self, rhs: &ParamScalar) -> ParamScalar {
        self + &(-rhs)
    }
}

impl Mul for &ParamScalar {
    type Output = ParamScalar;
    fn mul(self, rhs: &ParamScalar) -> ParamScalar {
        if self.is_zero() || rhs.is_zero() {
            return ParamScalar::zero();
        }
        if self.den.is_constant() && rhs.den.is_constant() {
            return ParamScalar {
                num: &self.num * &rhs.num,
                den: ParamPoly::one(),
            };
        }
        let (n1, d2) = cancel(&self.num, &rhs.den);
        let (n2, d1) = cancel(&rhs.num, &self.den);
        ParamScalar::from_coprime(&n1 * &n2, &d1 * &d2)
    }
}

impl Neg for &ParamScalar {
    type Output = ParamScalar;
    fn neg(self) -> ParamScalar {
        ParamScalar {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for ParamScalar {
    type Output = ParamScalar;
    fn neg(self) -> ParamScalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for ParamScalar {
            type Output = ParamScalar;
            fn $f(self, rhs: ParamScalar) -> ParamScalar {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&ParamScalar> for ParamScalar {
            type Output = ParamScalar;
            fn $f(self, rhs: &ParamScalar) -> ParamScalar {
                (&self).$f(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl core::iter::Sum for ParamScalar {
    fn sum<I: Iterator<Item = ParamScalar>>(iter: I) -> Self {
        iter.fold(ParamScalar::zero(), |acc, x| &acc + &x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factor_cancellation() {
        let e1 = ParamScalar::e1();
        let e2 = ParamScalar::e2();
        let num = &(&e1 * &e1) - &(&e2 * &e2);
        let q = num.checked_div(&(&e1 - &e2)).unwrap();
        assert_eq!(q, &e1 + &e2);
        assert!(q.is_polynomial());
    }

    #[test]
    fn half_times_two() {
        let h = ParamScalar::from_frac(1, 2);
        assert!((&h * &ParamScalar::from_int(2)).is_one());
    }

    #[test]
    fn opposite_denominators_cancel() {
        let a = ParamScalar::a();
        let d = &ParamScalar::e1() - &ParamScalar::e2();
        let x = a.checked_div(&d).unwrap();
        let y = a.checked_div(&(-&d)).unwrap();
        assert!((&x + &y).is_zero());
    }

    #[test]
    fn divide_by_zero() {
        assert_eq!(
            ParamScalar::one().checked_div(&ParamScalar::zero()),
            Err(FieldError::DivisionByZero)
        );
    }

    #[test]
    fn e3_is_eliminated() {
        let s = &(&ParamScalar::e1() + &ParamScalar::e2()) + &ParamScalar::e3();
        assert!(s.is_zero());
    }

    #[test]
    fn denominator_is_monic() {
        let x = ParamScalar::one()
            .checked_div(&ParamScalar::e1().scale(&crate::param::rat(-3)))
            .unwrap();
        assert!(x.denom().leading_coeff().is_one());
        assert_eq!(x.denom(), &ParamPoly::var(Symbol::E1));
    }
}
