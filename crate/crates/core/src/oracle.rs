//! Independent numeric checks of structure tables.
//!
//! The engine works in the `d/dz` frame with functions in `p(u) + Y q(u)`
//! form. The oracle here instead writes every field as `(r + Y s) d/dX`,
//! evaluates first-order jets at a single rational point, and never touches
//! the Laurent machinery. Sample points are supplied by the caller.

use core::ops::{Add, Mul, Neg, Sub};

use alloc::vec::Vec;
use num_traits::{One, Zero};

use crate::curve::{BasisExpansion, MarkingCase};
use crate::kn::StructureTable;
use crate::param::{rat, rat_frac, Rational, Specialization, Symbol};

/// Value and first derivative at a point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Jet {
    pub value: Rational,
    pub slope: Rational,
}

impl Jet {
    pub fn constant(v: Rational) -> Self {
        Jet {
            value: v,
            slope: Rational::zero(),
        }
    }

    pub fn variable(v: Rational) -> Self {
        Jet {
            value: v,
            slope: Rational::one(),
        }
    }

    pub fn inv(&self) -> Option<Jet> {
        if self.value.is_zero() {
            return None;
        }
        let v = self.value.recip();
        Some(Jet {
            slope: -(&self.slope * &v * &v),
            value: v,
        })
    }

    pub fn powi(&self, k: i64) -> Option<Jet> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut acc = Jet::constant(Rational::one());
        for _ in 0..k.unsigned_abs() {
            acc = &acc * &base;
        }
        Some(acc)
    }
}

impl Add for &Jet {
    type Output = Jet;
    fn add(self, o: &Jet) -> Jet {
        Jet {
            value: &self.value + &o.value,
            slope: &self.slope + &o.slope,
        }
    }
}

impl Sub for &Jet {
    type Output = Jet;
    fn sub(self, o: &Jet) -> Jet {
        Jet {
            value: &self.value - &o.value,
            slope: &self.slope - &o.slope,
        }
    }
}

impl Mul for &Jet {
    type Output = Jet;
    fn mul(self, o: &Jet) -> Jet {
        Jet {
            value: &self.value * &o.value,
            slope: &self.slope * &o.value + &self.value * &o.slope,
        }
    }
}

impl Neg for &Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        Jet {
            value: -&self.value,
            slope: -&self.slope,
        }
    }
}

/// A rational member of the family and a rational abscissa `X0 = a + u0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveSample {
    pub case: MarkingCase,
    pub e1: Rational,
    pub e2: Rational,
    /// Ignored with two markings (`a = e1`).
    pub a: Rational,
    pub u0: Rational,
}

impl CurveSample {
    fn marking(&self) -> Rational {
        match self.case {
            MarkingCase::TwoPoint => self.e1.clone(),
            MarkingCase::ThreePoint => self.a.clone(),
        }
    }

    /// `e3` from the trace condition.
    pub fn e3(&self) -> Rational {
        -(&self.e1 + &self.e2)
    }

    fn x0(&self) -> Rational {
        &self.marking() + &self.u0
    }

    /// `f = 4 (X - e1)(X - e2)(X - e3)` as a jet in `X`.
    fn f(&self) -> Jet {
        let x = Jet::variable(self.x0());
        let mut acc = Jet::constant(rat(4));
        for r in [self.e1.clone(), self.e2.clone(), self.e3()] {
            acc = &acc * &(&x - &Jet::constant(r));
        }
        acc
    }

    /// The point is usable when `u0 != 0`, `f(X0) != 0` and the roots are
    /// pairwise distinct.
    pub fn is_admissible(&self) -> bool {
        let e3 = self.e3();
        !self.u0.is_zero()
            && !self.f().value.is_zero()
            && self.e1 != self.e2
            && self.e1 != e3
            && self.e2 != e3
    }

    pub fn specialization(&self) -> Specialization {
        let mut s = Specialization::from_rationals([(Symbol::E1, self.e1.clone()), (Symbol::E2, self.e2.clone())]);
        if self.case == MarkingCase::ThreePoint {
            s.set(Symbol::A, self.a.clone());
        }
        s
    }

    /// Components `(r, s)` of `V_n = (r + Y s) d/dX`.
    pub fn basis_components(&self, n: i64) -> (Jet, Jet) {
        let u = Jet::variable(self.u0.clone());
        let zero = Jet::constant(Rational::zero());
        if n.rem_euclid(2) == 0 {
            (zero, u.powi(n / 2).expect("u0 != 0"))
        } else {
            let k = (n - 1).div_euclid(2);
            let r = &(&self.f() * &u.powi(k - 1).expect("u0 != 0")) * &Jet::constant(rat_frac(1, 2));
            (r, zero)
        }
    }

    /// Values of the two components of `[V_n, V_m]` at the point.
    pub fn bracket_values(&self, n: i64, m: i64) -> (Rational, Rational) {
        let (r1, s1) = self.basis_components(n);
        let (r2, s2) = self.basis_components(m);
        let f = self.f();
        let big_r = &r1.value * &r2.slope - &r2.value * &r1.slope
            + &f.value * (&s1.value * &s2.slope - &s2.value * &s1.slope);
        let log_f = &f.slope / (&f.value * rat(2));
        let big_s = &r1.value * &s2.slope - &r2.value * &s1.slope
            + (&s1.value * &r2.slope - &s2.value * &r1.slope)
            + log_f * (&r1.value * &s2.value - &r2.value * &s1.value);
        (big_r, big_s)
    }

    /// Values of the components of `sum c_j V_j` for rational `c_j`.
    pub fn combination_values(&self, terms: &[(i64, Rational)]) -> (Rational, Rational) {
        let mut r = Rational::zero();
        let mut s = Rational::zero();
        for (j, c) in terms {
            let (rj, sj) = self.basis_components(*j);
            r += c * &rj.value;
            s += c * &sj.value;
        }
        (r, s)
    }
}

fn rational_terms(e: &BasisExpansion, s: &Specialization) -> Option<Vec<(i64, Rational)>> {
    e.iter()
        .map(|(j, c)| s.apply(c).ok()?.as_rational().map(|r| (j, r)))
        .collect()
}

/// Entries `(n, m)` of a (symbolic or numeric) table that disagree with the
/// oracle at the sample. Entries whose coefficients do not become rational
/// under the sample's parameters are reported as disagreements.
pub fn curve_table_mismatches(table: &StructureTable, sample: &CurveSample) -> Vec<(i64, i64)> {
    let s = sample.specialization();
    let mut out = Vec::new();
    for ((n, m), e) in table.entries() {
        let ok = rational_terms(e, &s).is_some_and(|terms| sample.bracket_values(n, m) == sample.combination_values(&terms));
        if !ok {
            out.push((n, m));
        }
    }
    out
}

/// Closed-form jets of the case-(5) generators at `t0` for a rational node
/// parameter `e`:
/// `g_2k = (t^2 + 3e)^k (t^2 - 3e)`, `g_2k+1 = t (t^2 + 3e)^(k-1) (t^2 - 3e)^2`.
pub fn case5_generator_jet(e: &Rational, n: i64, t0: &Rational) -> Option<Jet> {
    let t = Jet::variable(t0.clone());
    let tt = &t * &t;
    let three_e = Jet::constant(e * rat(3));
    let plus = &tt + &three_e;
    let minus = &tt - &three_e;
    if n.rem_euclid(2) == 0 {
        Some(&plus.powi(n / 2)? * &minus)
    } else {
        let k = (n - 1).div_euclid(2);
        Some(&(&t * &plus.powi(k - 1)?) * &(&minus * &minus))
    }
}

/// Entries of a table over the line that disagree with `[g_n, g_m] = g_n g_m' - g_m g_n'`
/// evaluated from the supplied generator jets.
pub fn line_table_mismatches<G>(table: &StructureTable, s: &Specialization, generator: G) -> Vec<(i64, i64)>
where
    G: Fn(i64) -> Option<Jet>,
{
    let mut out = Vec::new();
    for ((n, m), e) in table.entries() {
        let ok = (|| {
            let a = generator(n)?;
            let b = generator(m)?;
            let lhs = &a.value * &b.slope - &b.value * &a.slope;
            let mut rhs = Rational::zero();
            for (j, c) in rational_terms(e, s)? {
                rhs += c * generator(j)?.value;
            }
            Some(lhs == rhs)
        })();
        if ok != Some(true) {
            out.push((n, m));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::CurveSpec;
    use crate::kn::structure_table;

    #[test]
    fn jets() {
        let x = Jet::variable(rat(3));
        let y = x.powi(-2).unwrap();
        assert_eq!(y.value, rat_frac(1, 9));
        assert_eq!(y.slope, rat_frac(-2, 27));
    }

    #[test]
    fn agrees_with_engine_two_point() {
        let t = structure_table(&CurveSpec::symbolic(MarkingCase::TwoPoint).shared(), 3);
        let sample = CurveSample {
            case: MarkingCase::TwoPoint,
            e1: rat(2),
            e2: rat_frac(-1, 3),
            a: rat(0),
            u0: rat_frac(5, 7),
        };
        assert!(sample.is_admissible());
        assert!(curve_table_mismatches(&t, &sample).is_empty());
    }

    #[test]
    fn detects_a_wrong_entry() {
        let c = CurveSpec::symbolic(MarkingCase::ThreePoint).shared();
        let t = structure_table(&c, 1);
        let mut entries = alloc::collections::BTreeMap::new();
        for ((n, m), e) in t.entries() {
            entries.insert((n, m), e.clone());
        }
        entries.insert((0, 1), BasisExpansion::single(2, crate::ParamScalar::one()));
        let bad = StructureTable::from_entries(t.origin().clone(), 1, t.params().to_vec(), entries);
        let sample = CurveSample {
            case: MarkingCase::ThreePoint,
            e1: rat(1),
            e2: rat(2),
            a: rat(7),
            u0: rat_frac(1, 2),
        };
        assert_eq!(curve_table_mismatches(&bad, &sample), alloc::vec![(0, 1)]);
    }
}
