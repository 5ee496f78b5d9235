//! Laurent polynomials in one variable over the parameter field.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;
use core::ops::{Add, Mul, Neg, Sub};

use crate::param::{FieldError, ParamScalar, Specialization};

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Laurent {
    coeffs: BTreeMap<i64, ParamScalar>,
}

impl Laurent {
    pub fn zero() -> Self {
        Laurent::default()
    }

    pub fn one() -> Self {
        Laurent::constant(ParamScalar::one())
    }

    pub fn constant(c: ParamScalar) -> Self {
        Laurent::monomial(c, 0)
    }

    /// The variable itself.
    pub fn var() -> Self {
        Laurent::monomial(ParamScalar::one(), 1)
    }

    pub fn monomial(c: ParamScalar, k: i64) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(k, c);
        }
        Laurent { coeffs }
    }

    pub fn from_coeffs<I: IntoIterator<Item = (i64, ParamScalar)>>(it: I) -> Self {
        let mut l = Laurent::zero();
        for (k, c) in it {
            l.add_term(k, c);
        }
        l
    }

    pub fn add_term(&mut self, k: i64, c: ParamScalar) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.get_mut(&k) {
            Some(x) => {
                *x = &*x + &c;
                if x.is_zero() {
                    self.coeffs.remove(&k);
                }
            }
            None => {
                self.coeffs.insert(k, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, k: i64) -> ParamScalar {
        self.coeffs.get(&k).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &ParamScalar)> {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// `Some((c, k))` when the polynomial is the single term `c x^k`.
    pub fn as_monomial(&self) -> Option<(&ParamScalar, i64)> {
        if self.coeffs.len() == 1 {
            self.coeffs.iter().next().map(|(k, c)| (c, *k))
        } else {
            None
        }
    }

    pub fn scale(&self, c: &ParamScalar) -> Self {
        if c.is_zero() {
            return Laurent::zero();
        }
        Laurent {
            coeffs: self.coeffs.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    /// Multiplication by `x^k`.
    pub fn shift(&self, k: i64) -> Self {
        Laurent {
            coeffs: self.coeffs.iter().map(|(e, v)| (e + k, v.clone())).collect(),
        }
    }

    pub fn derivative(&self) -> Self {
        let mut out = Laurent::zero();
        for (k, c) in &self.coeffs {
            if *k != 0 {
                out.add_term(k - 1, c.scale(&crate::param::rat(*k)));
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Laurent::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, x: &ParamScalar) -> Result<ParamScalar, FieldError> {
        let mut acc = ParamScalar::zero();
        for (k, c) in &self.coeffs {
            acc = &acc + &(c * &x.pow(*k)?);
        }
        Ok(acc)
    }

    pub fn specialize(&self, s: &Specialization) -> Result<Self, FieldError> {
        let mut out = Laurent::zero();
        for (k, c) in &self.coeffs {
            out.add_term(*k, s.apply(c)?);
        }
        Ok(out)
    }

    /// Keeps only the even (`parity = 0`) or odd (`parity = 1`) exponents.
    pub fn parity_part(&self, parity: i64) -> Self {
        Laurent {
            coeffs: self
                .coeffs
                .iter()
                .filter(|(k, _)| k.rem_euclid(2) == parity)
                .map(|(k, c)| (*k, c.clone()))
                .collect(),
        }
    }

    /// For an even Laurent polynomial `P(x^2)` returns `P`.
    pub fn halve_exponents(&self) -> Option<Self> {
        let mut out = Laurent::zero();
        for (k, c) in &self.coeffs {
            if k % 2 != 0 {
                return None;
            }
            out.add_term(k / 2, c.clone());
        }
        Some(out)
    }

    /// Substitution `x -> x^2`.
    pub fn double_exponents(&self) -> Self {
        Laurent {
            coeffs: self.coeffs.iter().map(|(k, c)| (2 * k, c.clone())).collect(),
        }
    }

    /// Taylor shift `P(x) -> P(x + c)` for a polynomial (no negative exponents).
    pub fn taylor_shift(&self, c: &ParamScalar) -> Option<Self> {
        if self.min_exp().is_some_and(|k| k < 0) {
            return None;
        }
        let dense = self.dense_from(0);
        // Horner in the shifted variable
        let lin = Laurent::from_coeffs([(1, ParamScalar::one()), (0, c.clone())]);
        let mut acc = Laurent::zero();
        for a in dense.iter().rev() {
            acc = &(&acc * &lin) + &Laurent::constant(a.clone());
        }
        Some(acc)
    }

    fn dense_from(&self, low: i64) -> Vec<ParamScalar> {
        let high = self.max_exp().unwrap_or(low);
        let mut v = alloc::vec![ParamScalar::zero(); (high - low + 1).max(0) as usize];
        for (k, c) in &self.coeffs {
            v[(k - low) as usize] = c.clone();
        }
        v
    }

    /// Exact quotient by a polynomial divisor with nonzero constant term.
    /// Returns `None` if the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Laurent) -> Option<Self> {
        if divisor.min_exp() != Some(0) {
            return None;
        }
        if self.is_zero() {
            return Some(Laurent::zero());
        }
        let low = self.min_exp().unwrap();
        let mut rem = self.dense_from(low);
        let div = divisor.dense_from(0);
        let dd = div.len() - 1;
        if dd == 0 {
            let inv = div[0].inv().ok()?;
            return Some(self.scale(&inv));
        }
        if rem.len() <= dd {
            return None;
        }
        let lead_inv = div[dd].inv().ok()?;
        let mut quot = alloc::vec![ParamScalar::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let q = &rem[i + dd] * &lead_inv;
            if q.is_zero() {
                continue;
            }
            for (j, d) in div.iter().enumerate() {
                if !d.is_zero() {
                    rem[i + j] = &rem[i + j] - &(&q * d);
                }
            }
            quot[i] = q;
        }
        if rem.iter().any(|r| !r.is_zero()) {
            return None;
        }
        Some(Laurent::from_coeffs(
            quot.into_iter()
                .enumerate()
                .map(|(i, c)| (i as i64 + low, c)),
        ))
    }

    /// Renders in terms of the named variable, highest power first.
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return String::from("0");
        }
        let mut out = String::new();
        for (i, (k, c)) in self.coeffs.iter().rev().enumerate() {
            let compound = c.numer().num_terms() > 1 || !c.is_polynomial();
            let mut body = c.to_canonical();
            let neg = !compound && body.starts_with('-');
            if neg {
                body.remove(0);
            }
            match (i, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            if compound {
                body = alloc::format!("({})", body);
            }
            if *k == 0 {
                out.push_str(&body);
                continue;
            }
            if body != "1" {
                let _ = write!(out, "{}*", body);
            }
            if *k == 1 {
                out.push_str(var);
            } else {
                let _ = write!(out, "{}^{}", var, k);
            }
        }
        out
    }
}

impl Add for &Laurent {
    type Output = Laurent;
    fn add(self, rhs: &Laurent) -> Laurent {
        let mut out = self.clone();
        for (k, c) in &rhs.coeffs {
            out.add_term(*k, c.clone());
        }
        out
    }
}

impl Sub for &Laurent {
    type Output = Laurent;
    fn sub(self, rhs: &Laurent) -> Laurent {
        let mut out = self.clone();
        for (k, c) in &rhs.coeffs {
            out.add_term(*k, -c);
        }
        out
    }
}

impl Mul for &Laurent {
    type Output = Laurent;
    fn mul(self, rhs: &Laurent) -> Laurent {
        let mut out = Laurent::zero();
        for (k1, c1) in &self.coeffs {
            for (k2, c2) in &rhs.coeffs {
                out.add_term(k1 + k2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        Laurent {
            coeffs: self.coeffs.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Laurent {
        Laurent::var()
    }

    #[test]
    fn inverse_powers_cancel() {
        let p = &Laurent::monomial(ParamScalar::one(), -3) * &x().pow(3);
        assert_eq!(p, Laurent::one());
    }

    #[test]
    fn derivative_of_negative_power() {
        let p = Laurent::monomial(ParamScalar::one(), -2);
        assert_eq!(p.derivative(), Laurent::monomial(ParamScalar::from_int(-2), -3));
    }

    #[test]
    fn exact_division_by_quadratic() {
        let c = ParamScalar::e();
        let q = Laurent::from_coeffs([(2, ParamScalar::one()), (0, -&c)]);
        let p = &(&q * &q) * &Laurent::monomial(ParamScalar::one(), -1);
        let d = p.div_exact(&q).unwrap();
        assert_eq!(d, &q * &Laurent::monomial(ParamScalar::one(), -1));
        assert!(x().div_exact(&q).is_none());
    }

    #[test]
    fn shift_by_constant() {
        // (x + 1)^2 evaluated through the shift of x^2
        let p = x().pow(2);
        let s = p.taylor_shift(&ParamScalar::one()).unwrap();
        let expected = Laurent::from_coeffs([
            (2, ParamScalar::one()),
            (1, ParamScalar::from_int(2)),
            (0, ParamScalar::one()),
        ]);
        assert_eq!(s, expected);
    }

    #[test]
    fn render_variable() {
        let p = Laurent::from_coeffs([(2, ParamScalar::one()), (0, ParamScalar::e().scale(&crate::param::rat(-3)))]);
        assert_eq!(p.render("t"), "t^2 - 3*e");
    }
}
