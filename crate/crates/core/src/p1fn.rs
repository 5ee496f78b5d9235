//! Rational functions, vector fields and λ-forms on the projective line.
//!
//! A function is a Laurent polynomial in `t` over a product of even
//! quadratics `(t^2 - c)^m` with `c != 0`. Every pole away from `0` and `inf`
//! that the degeneration pipeline produces lies over such a quadratic, so
//! square roots of the parameters never have to be formed.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::laurent::Laurent;
use crate::param::{rat, FieldError, ParamScalar, Specialization};

/// `t^2 - c` as a Laurent polynomial.
pub fn quadratic(c: &ParamScalar) -> Laurent {
    Laurent::from_coeffs([(2, ParamScalar::one()), (0, -c)])
}

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct P1Function {
    num: Laurent,
    /// Sorted by `c`, distinct, `c != 0`, multiplicities positive.
    den: Vec<(ParamScalar, u32)>,
}

impl P1Function {
    pub fn zero() -> Self {
        P1Function::default()
    }

    pub fn one() -> Self {
        P1Function::from_laurent(Laurent::one())
    }

    pub fn t() -> Self {
        P1Function::from_laurent(Laurent::var())
    }

    pub fn constant(c: ParamScalar) -> Self {
        P1Function::from_laurent(Laurent::constant(c))
    }

    pub fn from_laurent(num: Laurent) -> Self {
        P1Function { num, den: Vec::new() }
    }

    pub fn t_power(k: i64) -> Self {
        P1Function::from_laurent(Laurent::monomial(ParamScalar::one(), k))
    }

    /// `(t^2 - c)^k` for any integer `k`.
    pub fn quadratic_power(c: &ParamScalar, k: i64) -> Self {
        if c.is_zero() {
            return P1Function::t_power(2 * k);
        }
        if k >= 0 {
            P1Function::from_laurent(quadratic(c).pow(k as u32))
        } else {
            P1Function {
                num: Laurent::one(),
                den: alloc::vec![(c.clone(), (-k) as u32)],
            }
        }
    }

    fn build(num: Laurent, den: Vec<(ParamScalar, u32)>) -> Self {
        let mut merged: Vec<(ParamScalar, u32)> = Vec::new();
        let mut num = num;
        let mut den = den;
        den.sort_by(|x, y| x.0.cmp(&y.0));
        for (c, m) in den {
            if m == 0 {
                continue;
            }
            if c.is_zero() {
                num = num.shift(-2 * i64::from(m));
                continue;
            }
            match merged.last_mut() {
                Some((last, k)) if *last == c => *k += m,
                _ => merged.push((c, m)),
            }
        }
        let mut out = P1Function { num, den: merged };
        out.cancel();
        out
    }

    fn cancel(&mut self) {
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        for (c, m) in self.den.iter_mut() {
            let q = quadratic(c);
            while *m > 0 {
                match self.num.div_exact(&q) {
                    Some(n) => {
                        self.num = n;
                        *m -= 1;
                    }
                    None => break,
                }
            }
        }
        self.den.retain(|(_, m)| *m > 0);
    }

    pub fn numerator(&self) -> &Laurent {
        &self.num
    }

    /// Denominator factors `(c, m)` standing for `(t^2 - c)^m`.
    pub fn denominator(&self) -> &[(ParamScalar, u32)] {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_laurent(&self) -> bool {
        self.den.is_empty()
    }

    pub fn as_laurent(&self) -> Option<&Laurent> {
        if self.den.is_empty() {
            Some(&self.num)
        } else {
            None
        }
    }

    fn den_poly(den: &[(ParamScalar, u32)]) -> Laurent {
        let mut p = Laurent::one();
        for (c, m) in den {
            p = &p * &quadratic(c).pow(*m);
        }
        p
    }

    /// Numerators of `self` and `other` over their least common denominator.
    fn common(&self, other: &P1Function) -> (Laurent, Laurent, Vec<(ParamScalar, u32)>) {
        let mut lcm: Vec<(ParamScalar, u32)> = self.den.clone();
        for (c, m) in &other.den {
            match lcm.iter_mut().find(|(d, _)| d == c) {
                Some((_, k)) => *k = (*k).max(*m),
                None => lcm.push((c.clone(), *m)),
            }
        }
        lcm.sort_by(|x, y| x.0.cmp(&y.0));
        let lift = |f: &P1Function| {
            let missing: Vec<(ParamScalar, u32)> = lcm
                .iter()
                .map(|(c, m)| {
                    let have = f.den.iter().find(|(d, _)| d == c).map_or(0, |x| x.1);
                    (c.clone(), m - have)
                })
                .collect();
            &f.num * &P1Function::den_poly(&missing)
        };
        (lift(self), lift(other), lcm)
    }

    pub fn add(&self, other: &P1Function) -> P1Function {
        if self.den == other.den {
            return P1Function::build(&self.num + &other.num, self.den.clone());
        }
        let (a, b, den) = self.common(other);
        P1Function::build(&a + &b, den)
    }

    pub fn sub(&self, other: &P1Function) -> P1Function {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> P1Function {
        P1Function {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn scale(&self, c: &ParamScalar) -> P1Function {
        if c.is_zero() {
            return P1Function::zero();
        }
        P1Function {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &P1Function) -> P1Function {
        let mut den = self.den.clone();
        den.extend(other.den.iter().cloned());
        P1Function::build(&self.num * &other.num, den)
    }

    pub fn shift(&self, k: i64) -> P1Function {
        P1Function {
            num: self.num.shift(k),
            den: self.den.clone(),
        }
    }

    /// `d/dt` by the quotient rule over the squarefree part of the denominator.
    pub fn derivative(&self) -> P1Function {
        if self.den.is_empty() {
            return P1Function::from_laurent(self.num.derivative());
        }
        // (N/D)' = (N' Q - N sum_c m_c Q'_c Q / Q_c) / (D Q),  Q = prod Q_c
        let qs: Vec<Laurent> = self.den.iter().map(|(c, _)| quadratic(c)).collect();
        let mut q_all = Laurent::one();
        for q in &qs {
            q_all = &q_all * q;
        }
        let mut correction = Laurent::zero();
        for (i, (_, m)) in self.den.iter().enumerate() {
            let mut others = Laurent::one();
            for (j, q) in qs.iter().enumerate() {
                if j != i {
                    others = &others * q;
                }
            }
            // Q_c' = 2t
            let term = others.shift(1).scale(&ParamScalar::from_int(2 * i64::from(*m)));
            correction = &correction + &term;
        }
        let num = &(&self.num.derivative() * &q_all) - &(&self.num * &correction);
        let den = self.den.iter().map(|(c, m)| (c.clone(), m + 1)).collect();
        P1Function::build(num, den)
    }

    pub fn specialize(&self, s: &Specialization) -> Result<P1Function, FieldError> {
        let num = self.num.specialize(s)?;
        let mut den = Vec::with_capacity(self.den.len());
        for (c, m) in &self.den {
            den.push((s.apply(c)?, *m));
        }
        Ok(P1Function::build(num, den))
    }

    pub fn eval(&self, x: &ParamScalar) -> Result<ParamScalar, FieldError> {
        let n = self.num.eval(x)?;
        let mut d = ParamScalar::one();
        let xx = x * x;
        for (c, m) in &self.den {
            d = &d * &(&xx - c).pow(i64::from(*m))?;
        }
        n.checked_div(&d)
    }

    /// Even (`0`) or odd (`1`) part under `t -> -t`.
    pub fn parity_part(&self, parity: i64) -> P1Function {
        P1Function {
            num: self.num.parity_part(parity),
            den: self.den.clone(),
        }
        .normalized()
    }

    fn normalized(mut self) -> Self {
        self.cancel();
        self
    }

    /// Writes an even function as a Laurent polynomial in `w = t^2 - c`,
    /// if it is one.
    pub fn as_laurent_in(&self, c: &ParamScalar) -> Option<Laurent> {
        if c.is_zero() {
            return if self.den.is_empty() {
                self.num.halve_exponents()
            } else {
                None
            };
        }
        let m = match self.den.as_slice() {
            [] => 0,
            [(d, m)] if d == c => i64::from(*m),
            _ => return None,
        };
        let p = self.num.halve_exponents()?;
        let shifted = p.taylor_shift(c)?;
        Some(shifted.shift(-m))
    }

    /// Order of vanishing at `t = 0` (negative for a pole).
    pub fn order_at_zero(&self) -> Option<i64> {
        self.num.min_exp()
    }

    /// Order at `inf` of the function.
    pub fn order_at_infinity(&self) -> Option<i64> {
        let d: i64 = self.den.iter().map(|(_, m)| 2 * i64::from(*m)).sum();
        self.num.max_exp().map(|k| d - k)
    }

    /// Order at each root of `t^2 - c` (both roots agree by symmetry of the
    /// factor; `c` must be nonzero).
    pub fn order_at_roots(&self, c: &ParamScalar) -> Option<i64> {
        if self.num.is_zero() {
            return None;
        }
        let q = quadratic(c);
        let mut k = 0i64;
        let mut n = self.num.clone();
        while let Some(next) = n.div_exact(&q) {
            n = next;
            k += 1;
        }
        let pole = self
            .den
            .iter()
            .find(|(d, _)| d == c)
            .map_or(0, |(_, m)| i64::from(*m));
        Some(k - pole)
    }

    /// Canonical text in the variable `t`.
    pub fn render(&self) -> String {
        let n = self.num.render("t");
        if self.den.is_empty() {
            return n;
        }
        let mut d = String::new();
        for (i, (c, m)) in self.den.iter().enumerate() {
            if i > 0 {
                d.push('*');
            }
            d.push('(');
            d.push_str(&quadratic(c).render("t"));
            d.push(')');
            if *m > 1 {
                d.push_str(&alloc::format!("^{}", m));
            }
        }
        alloc::format!("({})/({})", n, d)
    }
}

impl From<Laurent> for P1Function {
    fn from(l: Laurent) -> Self {
        P1Function::from_laurent(l)
    }
}

impl fmt::Display for P1Function {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// `coeff * d/dt`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct P1VectorField {
    coeff: P1Function,
}

impl P1VectorField {
    pub fn new(coeff: P1Function) -> Self {
        P1VectorField { coeff }
    }

    pub fn zero() -> Self {
        P1VectorField::default()
    }

    pub fn coeff(&self) -> &P1Function {
        &self.coeff
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn add(&self, other: &P1VectorField) -> P1VectorField {
        P1VectorField::new(self.coeff.add(&other.coeff))
    }

    pub fn sub(&self, other: &P1VectorField) -> P1VectorField {
        P1VectorField::new(self.coeff.sub(&other.coeff))
    }

    pub fn scale(&self, c: &ParamScalar) -> P1VectorField {
        P1VectorField::new(self.coeff.scale(c))
    }

    pub fn specialize(&self, s: &Specialization) -> Result<P1VectorField, FieldError> {
        Ok(P1VectorField::new(self.coeff.specialize(s)?))
    }

    /// Order at `inf` under `div(f d/dt) = div(f) + 2[inf]`.
    pub fn order_at_infinity(&self) -> Option<i64> {
        self.coeff.order_at_infinity().map(|k| k + 2)
    }

    pub fn render(&self) -> String {
        alloc::format!("({})*d/dt", self.coeff.render())
    }
}

impl fmt::Display for P1VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// `[f d/dt, g d/dt] = (f g' - g f') d/dt`.
pub fn bracket_p1(v: &P1VectorField, w: &P1VectorField) -> P1VectorField {
    let f = v.coeff();
    let g = w.coeff();
    P1VectorField::new(f.mul(&g.derivative()).sub(&g.mul(&f.derivative())))
}

/// `coeff * (dt)^weight`; weight `-1` is a vector field, `0` a function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct P1Form {
    weight: i64,
    coeff: P1Function,
}

impl P1Form {
    pub fn new(weight: i64, coeff: P1Function) -> Self {
        P1Form { weight, coeff }
    }

    pub fn weight(&self) -> i64 {
        self.weight
    }

    pub fn coeff(&self) -> &P1Function {
        &self.coeff
    }

    /// Pole order at the roots of `t^2 - c`, or at `t = 0` when `c = 0`.
    pub fn pole_order_over(&self, c: &ParamScalar) -> i64 {
        let k = if c.is_zero() {
            self.coeff.order_at_zero()
        } else {
            self.coeff.order_at_roots(c)
        };
        k.map_or(0, |k| (-k).max(0))
    }

    pub fn render(&self) -> String {
        alloc::format!("({})*(dt)^{}", self.coeff.render(), self.weight)
    }
}

impl fmt::Display for P1Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// `0.5` as a scalar; used when halving the `Y` component.
pub(crate) fn half() -> ParamScalar {
    ParamScalar::from_rational(crate::param::rat_frac(1, 2))
}

pub(crate) fn int(k: i64) -> ParamScalar {
    ParamScalar::from_rational(rat(k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::param::Symbol;

    fn e3() -> ParamScalar {
        ParamScalar::e().scale(&rat(3))
    }

    #[test]
    fn cancellation() {
        let q = P1Function::quadratic_power(&e3(), 2);
        let inv = P1Function::quadratic_power(&e3(), -3);
        let p = q.mul(&inv);
        assert_eq!(p, P1Function::quadratic_power(&e3(), -1));
        assert_eq!(q.mul(&P1Function::quadratic_power(&e3(), -2)), P1Function::one());
    }

    #[test]
    fn sum_over_common_denominator() {
        // 1/(t^2 - c) - 1/(t^2 + c) = 2c / ((t^2 - c)(t^2 + c))
        let c = e3();
        let x = P1Function::quadratic_power(&c, -1).sub(&P1Function::quadratic_power(&-&c, -1));
        let expected = P1Function::quadratic_power(&c, -1)
            .mul(&P1Function::quadratic_power(&-&c, -1))
            .scale(&c.scale(&rat(2)));
        assert_eq!(x, expected);
    }

    #[test]
    fn derivative_of_inverse_quadratic() {
        let c = e3();
        let d = P1Function::quadratic_power(&c, -1).derivative();
        let expected = P1Function::quadratic_power(&c, -2).shift(1).scale(&int(-2));
        assert_eq!(d, expected);
    }

    #[test]
    fn product_rule() {
        let c = e3();
        let f = P1Function::quadratic_power(&c, -2).shift(3);
        let g = P1Function::quadratic_power(&-&c, -1).add(&P1Function::t());
        let lhs = f.mul(&g).derivative();
        let rhs = f.derivative().mul(&g).add(&f.mul(&g.derivative()));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn specialization_merges_factors() {
        let f = P1Function::quadratic_power(&ParamScalar::e(), -1);
        let s = Specialization::new().with(Symbol::E, ParamScalar::zero());
        assert_eq!(f.specialize(&s).unwrap(), P1Function::t_power(-2));
    }

    #[test]
    fn expansion_in_shifted_variable() {
        let c = e3();
        // t^2 (t^2 - c)^-1 = 1 + c / w
        let f = P1Function::quadratic_power(&c, -1).shift(2);
        let l = f.as_laurent_in(&c).unwrap();
        assert_eq!(l, Laurent::from_coeffs([(0, ParamScalar::one()), (-1, c.clone())]));
        assert!(P1Function::t_power(-2).as_laurent_in(&c).is_none());
    }

    #[test]
    fn orders() {
        let c = e3();
        let f = P1Function::quadratic_power(&c, 2).shift(1);
        assert_eq!(f.order_at_zero(), Some(1));
        assert_eq!(f.order_at_roots(&c), Some(2));
        assert_eq!(f.order_at_infinity(), Some(-5));
    }

    #[test]
    fn witt_bracket() {
        let l = |n: i64| P1VectorField::new(P1Function::t_power(n + 1));
        assert_eq!(bracket_p1(&l(1), &l(2)), l(3));
        assert_eq!(bracket_p1(&l(-1), &l(1)), l(0).scale(&int(2)));
    }

    #[test]
    fn render_rational() {
        let f = P1Function::quadratic_power(&e3(), -2);
        assert_eq!(f.render(), "(1)/((t^2 - 3*e)^2)");
        assert_eq!(half().to_canonical(), "(1)/(2)");
    }
}
