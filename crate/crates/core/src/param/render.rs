//! Canonical text form: integer coefficients, explicit `*`, `^` for powers,
//! terms in descending grlex order, `(num)/(den)` when a denominator remains.

use alloc::string::String;
use core::fmt::{self, Write};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Monomial, ParamPoly, ParamScalar, Rational, Symbol};

fn write_monomial(out: &mut String, m: &Monomial) {
    let mut first = true;
    for s in Symbol::ALL {
        let k = m.exp(s);
        if k == 0 {
            continue;
        }
        if !first {
            out.push('*');
        }
        first = false;
        out.push_str(s.name());
        if k > 1 {
            let _ = write!(out, "^{}", k);
        }
    }
}

fn write_terms<'a, I>(out: &mut String, terms: I)
where
    I: Iterator<Item = (&'a Monomial, Rational)>,
{
    let mut first = true;
    for (m, c) in terms {
        let neg = c.is_negative();
        let mag = c.abs();
        if first {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        first = false;
        if m.is_one() {
            let _ = write!(out, "{}", mag);
        } else {
            if !mag.is_one() {
                let _ = write!(out, "{}*", mag);
            }
            write_monomial(out, m);
        }
    }
    if first {
        out.push('0');
    }
}

fn poly_text(p: &ParamPoly) -> String {
    let mut s = String::new();
    write_terms(&mut s, p.terms().rev().map(|(m, c)| (m, c.clone())));
    s
}

fn integer_scaling(x: &ParamScalar) -> Rational {
    let mut l = BigInt::one();
    for (_, c) in x.numer().terms().chain(x.denom().terms()) {
        l = l.lcm(c.denom());
    }
    let mut g = BigInt::zero();
    for (_, c) in x.numer().terms().chain(x.denom().terms()) {
        let scaled = c.numer() * (&l / c.denom());
        g = g.gcd(&scaled);
    }
    if g.is_zero() {
        g = BigInt::one();
    }
    Rational::new(l, g)
}

impl ParamScalar {
    /// The canonical text rendering used in every serialized output.
    pub fn to_canonical(&self) -> String {
        if self.is_zero() {
            return String::from("0");
        }
        let k = integer_scaling(self);
        let num = self.numer().scale(&k);
        let den = self.denom().scale(&k);
        if den.constant_value().is_some_and(|c| c.is_one()) {
            return poly_text(&num);
        }
        let mut s = String::new();
        s.push('(');
        s.push_str(&poly_text(&num));
        s.push_str(")/(");
        s.push_str(&poly_text(&den));
        s.push(')');
        s
    }
}

impl fmt::Display for ParamScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_canonical())
    }
}

impl fmt::Display for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&poly_text(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn two_point_coefficient() {
        let e1 = ParamScalar::e1();
        let x = &(&e1 - &ParamScalar::e2()) * &(&e1 - &ParamScalar::e3());
        assert_eq!(x.to_string(), "2*e1^2 - e1*e2 - e2^2");
    }

    #[test]
    fn half_renders_with_denominator() {
        assert_eq!(ParamScalar::from_frac(1, 2).to_string(), "(1)/(2)");
        assert_eq!(ParamScalar::a().scale(&crate::param::rat_frac(-3, 4)).to_string(), "(-3*a)/(4)");
    }

    #[test]
    fn constants() {
        assert_eq!(ParamScalar::from_int(2).to_string(), "2");
        assert_eq!(ParamScalar::zero().to_string(), "0");
        assert_eq!(ParamScalar::from_int(-7).to_string(), "-7");
    }

    #[test]
    fn rational_function() {
        let x = ParamScalar::a()
            .checked_div(&(&ParamScalar::e1().scale(&crate::param::rat(2)) - &ParamScalar::e2()))
            .unwrap();
        assert_eq!(x.to_string(), "(a)/(2*e1 - e2)");
    }
}
