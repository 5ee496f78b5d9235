use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::{FieldError, ParamPoly, ParamScalar, Rational, Symbol};

/// Substitution of parameter symbols. Values may be rationals or elements
/// that still depend on the remaining symbols (for instance `e1 -> -2e`).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Specialization {
    assignments: BTreeMap<Symbol, ParamScalar>,
}

impl Specialization {
    pub fn new() -> Self {
        Specialization::default()
    }

    pub fn with(mut self, s: Symbol, value: impl Into<ParamScalar>) -> Self {
        self.assignments.insert(s, value.into());
        self
    }

    pub fn set(&mut self, s: Symbol, value: impl Into<ParamScalar>) {
        self.assignments.insert(s, value.into());
    }

    pub fn from_rationals<I: IntoIterator<Item = (Symbol, Rational)>>(it: I) -> Self {
        Specialization {
            assignments: it
                .into_iter()
                .map(|(s, r)| (s, ParamScalar::from_rational(r)))
                .collect(),
        }
    }

    pub fn get(&self, s: Symbol) -> Option<&ParamScalar> {
        self.assignments.get(&s)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Symbol, &ParamScalar)> {
        self.assignments.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.assignments.is_empty()
    }

    /// Value of a symbol after substitution; unassigned symbols map to themselves.
    pub fn value_of(&self, s: Symbol) -> ParamScalar {
        self.assignments
            .get(&s)
            .cloned()
            .unwrap_or_else(|| ParamScalar::sym(s))
    }

    /// Composition: apply `self`, then `then`.
    pub fn then(&self, then: &Specialization) -> Result<Specialization, FieldError> {
        let mut out = Specialization::new();
        for s in Symbol::ALL {
            let v = then.apply(&self.value_of(s))?;
            if v != ParamScalar::sym(s) {
                out.assignments.insert(s, v);
            }
        }
        Ok(out)
    }

    pub fn eval_poly(&self, p: &ParamPoly) -> ParamScalar {
        let mut powers: [Vec<ParamScalar>; super::NUM_SYMBOLS] = Default::default();
        for s in Symbol::ALL {
            let base = self.value_of(s);
            let max = p.degree_in(s) as usize;
            let mut v = Vec::with_capacity(max + 1);
            v.push(ParamScalar::one());
            for k in 1..=max {
                let next = &v[k - 1] * &base;
                v.push(next);
            }
            powers[s.index()] = v;
        }
        let mut acc = ParamScalar::zero();
        for (m, c) in p.terms() {
            let mut term = ParamScalar::from_rational(c.clone());
            for s in Symbol::ALL {
                let k = m.exp(s) as usize;
                if k > 0 {
                    term = &term * &powers[s.index()][k];
                }
            }
            acc = &acc + &term;
        }
        acc
    }

    /// Ring homomorphism Q(e1, e2, a, e) -> Q(e1, e2, a, e) on the domain
    /// where the specialized denominator is nonzero.
    pub fn apply(&self, x: &ParamScalar) -> Result<ParamScalar, FieldError> {
        if self.assignments.is_empty() {
            return Ok(x.clone());
        }
        let num = self.eval_poly(x.numer());
        let den = self.eval_poly(x.denom());
        if den.is_zero() {
            return Err(FieldError::SpecializationPole);
        }
        num.checked_div(&den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::param::rat;

    #[test]
    fn sum_to_zero() {
        let s = Specialization::from_rationals([(Symbol::E1, rat(1)), (Symbol::E2, rat(-1))]);
        let x = &ParamScalar::e1() + &ParamScalar::e2();
        assert!(s.apply(&x).unwrap().is_zero());
    }

    #[test]
    fn nodal_coefficient() {
        let e = ParamScalar::e();
        let s = Specialization::new()
            .with(Symbol::E1, e.scale(&rat(-2)))
            .with(Symbol::E2, e.clone());
        let e1 = ParamScalar::e1();
        let x = &(&e1 - &ParamScalar::e2()) * &(&e1 - &ParamScalar::e3());
        let expected = (&e * &e).scale(&rat(9));
        assert_eq!(s.apply(&x).unwrap(), expected);
    }

    #[test]
    fn pole() {
        let s = Specialization::from_rationals([(Symbol::E1, rat(1)), (Symbol::E2, rat(1))]);
        let x = ParamScalar::one()
            .checked_div(&(&ParamScalar::e1() - &ParamScalar::e2()))
            .unwrap();
        assert_eq!(s.apply(&x), Err(FieldError::SpecializationPole));
    }
}
