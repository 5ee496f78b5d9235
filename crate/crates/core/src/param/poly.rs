use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{Rational, Symbol, NUM_SYMBOLS};

/// Exponent vector over `(e1, e2, a, e)`, ordered graded-lexicographically
/// with `e1 > e2 > a > e`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial(pub [u16; NUM_SYMBOLS]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; NUM_SYMBOLS]);

    pub fn var(s: Symbol) -> Self {
        let mut exps = [0; NUM_SYMBOLS];
        exps[s.index()] = 1;
        Monomial(exps)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn exp(&self, s: Symbol) -> u16 {
        self.0[s.index()]
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut exps = self.0;
        for (e, o) in exps.iter_mut().zip(other.0.iter()) {
            *e += *o;
        }
        Monomial(exps)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut exps = self.0;
        for (e, o) in exps.iter_mut().zip(other.0.iter()) {
            *e = e.checked_sub(*o)?;
        }
        Some(Monomial(exps))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial with rational coefficients. Zero
/// coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ParamPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl ParamPoly {
    pub fn zero() -> Self {
        ParamPoly::default()
    }

    pub fn one() -> Self {
        ParamPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        ParamPoly::monomial(c, Monomial::ONE)
    }

    pub fn monomial(c: Rational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        ParamPoly { terms }
    }

    pub fn var(s: Symbol) -> Self {
        ParamPoly::monomial(Rational::one(), Monomial::var(s))
    }

    /// `e3 = -e1 - e2`.
    pub fn e3() -> Self {
        -(ParamPoly::var(Symbol::E1) + ParamPoly::var(Symbol::E2))
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(it: I) -> Self {
        let mut p = ParamPoly::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_zero() {
            return Some(Rational::zero());
        }
        if self.is_constant() {
            return self.terms.get(&Monomial::ONE).cloned();
        }
        None
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Rational {
        self.leading().map(|(_, c)| c.clone()).unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, s: Symbol) -> u16 {
        self.terms.keys().map(|m| m.exp(s)).max().unwrap_or(0)
    }

    pub fn contains(&self, s: Symbol) -> bool {
        self.terms.keys().any(|m| m.exp(s) > 0)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return ParamPoly::zero();
        }
        ParamPoly {
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, c: &Rational, mono: &Monomial) -> Self {
        if c.is_zero() {
            return ParamPoly::zero();
        }
        ParamPoly {
            terms: self.terms.iter().map(|(m, v)| (m.mul(mono), v * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = ParamPoly::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact quotient `self / divisor`, or `None` if `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &ParamPoly) -> Option<ParamPoly> {
        let (lm, lc) = divisor.leading()?;
        if self.is_zero() {
            return Some(ParamPoly::zero());
        }
        if divisor.num_terms() == 1 {
            let mut terms = BTreeMap::new();
            for (m, c) in &self.terms {
                terms.insert(m.div(lm)?, c / lc);
            }
            return Some(ParamPoly { terms });
        }
        let mut rem = self.clone();
        let mut quot = ParamPoly::zero();
        while let Some((rm, rc)) = rem.leading() {
            let qm = rm.div(lm)?;
            let qc = rc / lc;
            rem = &rem - &divisor.mul_monomial(&qc, &qm);
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Divides by the leading coefficient so the leading term is monic.
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some((_, c)) if !c.is_one() => self.scale(&c.recip()),
            _ => self.clone(),
        }
    }

    /// Coefficients with respect to `s`, indexed by the power of `s`. Each
    /// coefficient is free of `s`.
    pub fn coeffs_in(&self, s: Symbol) -> Vec<ParamPoly> {
        let deg = self.degree_in(s) as usize;
        let mut out = alloc::vec![ParamPoly::zero(); deg + 1];
        for (m, c) in &self.terms {
            let k = m.exp(s) as usize;
            let mut rest = *m;
            rest.0[s.index()] = 0;
            out[k].add_term(rest, c.clone());
        }
        out
    }

    pub fn from_coeffs_in(s: Symbol, coeffs: &[ParamPoly]) -> Self {
        let mut p = ParamPoly::zero();
        for (k, c) in coeffs.iter().enumerate() {
            for (m, v) in &c.terms {
                let mut mm = *m;
                mm.0[s.index()] += k as u16;
                p.add_term(mm, v.clone());
            }
        }
        p
    }

    /// Sign of the leading coefficient; used to pick a canonical associate.
    pub fn leading_is_negative(&self) -> bool {
        self.leading().map(|(_, c)| c.is_negative()).unwrap_or(false)
    }
}

impl From<Rational> for ParamPoly {
    fn from(c: Rational) -> Self {
        ParamPoly::constant(c)
    }
}

impl From<Symbol> for ParamPoly {
    fn from(s: Symbol) -> Self {
        ParamPoly::var(s)
    }
}

impl Add for &ParamPoly {
    type Output = ParamPoly;
    fn add(self, rhs: &ParamPoly) -> ParamPoly {
        let (mut big, small) = if self.terms.len() >= rhs.terms.len() {
            (self.clone(), rhs)
        } else {
            (rhs.clone(), self)
        };
        for (m, c) in &small.terms {
            big.add_term(*m, c.clone());
        }
        big
    }
}

impl Sub for &ParamPoly {
    type Output = ParamPoly;
    fn sub(self, rhs: &ParamPoly) -> ParamPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c);
        }
        out
    }
}

impl Mul for &ParamPoly {
    type Output = ParamPoly;
    fn mul(self, rhs: &ParamPoly) -> ParamPoly {
        let mut out = ParamPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &ParamPoly {
    type Output = ParamPoly;
    fn neg(self) -> ParamPoly {
        ParamPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for ParamPoly {
            type Output = ParamPoly;
            fn $f(self, rhs: ParamPoly) -> ParamPoly {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for ParamPoly {
    type Output = ParamPoly;
    fn neg(self) -> ParamPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::param::rat;

    fn e1() -> ParamPoly {
        ParamPoly::var(Symbol::E1)
    }
    fn e2() -> ParamPoly {
        ParamPoly::var(Symbol::E2)
    }

    #[test]
    fn additive_inverse() {
        assert!((&(&e1() - &e2()) + &(&e2() - &e1())).is_zero());
    }

    #[test]
    fn binomial() {
        let lhs = &(&e1() + &e2()) * &(&e1() - &e2());
        let rhs = &(&e1() * &e1()) - &(&e2() * &e2());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn negate() {
        let a3 = ParamPoly::var(Symbol::A).scale(&rat(3));
        assert_eq!(-&a3, ParamPoly::var(Symbol::A).scale(&rat(-3)));
    }

    #[test]
    fn grlex_order() {
        // e1 > e2 > a > e, degree first
        assert!(Monomial::var(Symbol::E1) > Monomial::var(Symbol::E2));
        assert!(Monomial::var(Symbol::A) > Monomial::var(Symbol::E));
        let e_sq = Monomial::var(Symbol::E).mul(&Monomial::var(Symbol::E));
        assert!(e_sq > Monomial::var(Symbol::E1));
    }

    #[test]
    fn exact_division() {
        let p = &(&e1() + &e2()) * &(&e1() - &e2());
        assert_eq!(p.div_exact(&(&e1() - &e2())), Some(&e1() + &e2()));
        assert_eq!(p.div_exact(&(&e1() + &ParamPoly::one())), None);
    }

    #[test]
    fn coeff_round_trip() {
        let p = &(&e1() * &e1()) * &e2() + ParamPoly::var(Symbol::A);
        let cs = p.coeffs_in(Symbol::E1);
        assert_eq!(cs.len(), 3);
        assert_eq!(ParamPoly::from_coeffs_in(Symbol::E1, &cs), p);
    }
}
