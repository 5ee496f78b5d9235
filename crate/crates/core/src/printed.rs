//! The closed forms printed for the degenerate algebras and their
//! generators, kept as regression fixtures. The engine never consults them;
//! they are compared against its output and disagreements become
//! [`Finding`]s.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::curve::{divisor_of_basis, BasisExpansion, CurveSpec, Divisor, MarkingCase, PointId};
use crate::degen::{Desingularization, Subcase};
use crate::kn::{expected_bracket, StructureTable};
use crate::p1fn::{P1Form, P1Function, P1VectorField};
use crate::param::{rat, ParamScalar};

/// A disagreement between the engine and a printed formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Finding {
    pub location: String,
    pub engine: String,
    pub printed: String,
}

fn split(n: i64) -> (bool, i64) {
    if n.rem_euclid(2) == 0 {
        (true, n / 2)
    } else {
        (false, (n - 1).div_euclid(2))
    }
}

/// Printed pullback of `V_n` as a vector field on the line.
///
/// Cusp: `t^(2k+2)`, `t^(2k+3)`. `N1`/`N3`/`N4`: `(t^2-3e)^(k+1)`,
/// `t (t^2-3e)^(k+1)` (the printed `(t +- sqrt(3e))^(k+1)` combined). `N2`:
/// `t^(2k) (t^2-3e)`, `t^(2k-1) (t^2-3e)^2`. `N5`: `(t^2+3e)^k (t^2-3e)`,
/// `t (t^2+3e)^(k-1) (t^2-3e)^2`.
pub fn printed_vf_pullback(subcase: Subcase, e: &ParamScalar, n: i64) -> P1VectorField {
    let three_e = e.scale(&rat(3));
    let q = |c: &ParamScalar, k: i64| P1Function::quadratic_power(c, k);
    let (even, k) = split(n);
    let f = match (subcase, even) {
        (Subcase::CuspTwo | Subcase::CuspThree, true) => P1Function::t_power(2 * k + 2),
        (Subcase::CuspTwo | Subcase::CuspThree, false) => P1Function::t_power(2 * k + 3),
        (Subcase::N1 | Subcase::N3 | Subcase::N4, true) => q(&three_e, k + 1),
        (Subcase::N1 | Subcase::N3 | Subcase::N4, false) => q(&three_e, k + 1).shift(1),
        (Subcase::N2, true) => q(&three_e, 1).shift(2 * k),
        (Subcase::N2, false) => q(&three_e, 2).shift(2 * k - 1),
        (Subcase::N5, true) => q(&-&three_e, k).mul(&q(&three_e, 1)),
        (Subcase::N5, false) => q(&-&three_e, k - 1).mul(&q(&three_e, 2)).shift(1),
    };
    P1VectorField::new(f)
}

/// Printed pullback of `A_n (dz)^weight` for any weight.
///
/// Nodal: `(t^2-3e)^(-w) (t^2-2e-a)^k` and `t (t^2-3e)^(1-w) (t^2-2e-a)^(k-1)`;
/// the odd line is printed with `(t^2-2e-1)^(k-1)`, which does not lie on
/// the curve, and is taken with `a` in place of `1`. Cusp:
/// `t^(-2w) (t^2-a)^k` and `t^(3-2w) (t^2-a)^(k-1)` with `a = 0`.
pub fn printed_form_pullback(subcase: Subcase, e: &ParamScalar, n: i64, weight: i64) -> P1Form {
    let (even, k) = split(n);
    let f = if subcase.is_cuspidal() {
        if even {
            P1Function::t_power(2 * k - 2 * weight)
        } else {
            P1Function::t_power(3 - 2 * weight + 2 * (k - 1))
        }
    } else {
        let three_e = e.scale(&rat(3));
        let a = subcase.curve_at(e).a().clone();
        let c = &e.scale(&rat(2)) + &a;
        if even {
            P1Function::quadratic_power(&three_e, -weight).mul(&P1Function::quadratic_power(&c, k))
        } else {
            P1Function::quadratic_power(&three_e, 1 - weight)
                .mul(&P1Function::quadratic_power(&c, k - 1))
                .shift(1)
        }
    };
    P1Form::new(weight, f)
}

/// The printed limit bracket, where one is printed (none is for `N5`).
///
/// Cusp: `[V_n, V_m] = (m - n) V_(n+m+1)`. `N1`/`N3`/`N4` and `N2` follow
/// the two-marking shape with `3e1 -> 3e, 0` resp. `-6e, 9e^2`; in the `N2`
/// odd-odd line the `9e^2` term is printed outside the brace, which would
/// break antisymmetry, and is read inside it.
pub fn printed_limit_bracket(subcase: Subcase, e: &ParamScalar, n: i64, m: i64) -> Option<BasisExpansion> {
    if n == m {
        return Some(BasisExpansion::new());
    }
    let d = |j: i64| ParamScalar::from_int(m - n + j);
    let (three_a, mid) = match subcase {
        Subcase::CuspTwo | Subcase::CuspThree => {
            return Some(BasisExpansion::single(n + m + 1, d(0)));
        }
        Subcase::N1 | Subcase::N3 | Subcase::N4 => (e.scale(&rat(3)), ParamScalar::zero()),
        Subcase::N2 => (e.scale(&rat(-6)), (e * e).scale(&rat(9))),
        Subcase::N5 => return None,
    };
    let (n_even, k) = split(n);
    let (m_even, l) = split(m);
    let mut out = BasisExpansion::new();
    match (n_even, m_even) {
        (true, true) => out.add(2 * (k + l) + 1, d(0)),
        (false, false) => {
            out.add(2 * (k + l + 1) + 1, d(0));
            out.add(2 * (k + l) + 1, &d(0) * &three_a);
            out.add(2 * (k + l - 1) + 1, &d(0) * &mid);
        }
        (false, true) => {
            out.add(2 * (k + l + 1), d(0));
            out.add(2 * (k + l), &d(1) * &three_a);
            out.add(2 * (k + l - 1), &d(2) * &mid);
        }
        (true, false) => return printed_limit_bracket(subcase, e, m, n).map(|x| x.neg()),
    }
    Some(out)
}

/// Printed divisor of `A_n`.
///
/// Two markings: `-2k[inf] + 2k[E1]` and
/// `-(2k+1)[inf] + (2k-1)[E1] + [E2] + [E3]`. Three markings:
/// `-2k[inf] + k[P+] + k[P-]` and
/// `-(2k+1)[inf] + (k-1)([P+] + [P-]) + [E1] + [E2] + [E3]`.
pub fn printed_divisor(case: MarkingCase, n: i64) -> Divisor {
    let (even, k) = split(n);
    let mut d = Divisor::new();
    d.add(PointId::Infinity, -n);
    match (case, even) {
        (MarkingCase::TwoPoint, true) => d.add(PointId::TwoTorsion(1), 2 * k),
        (MarkingCase::TwoPoint, false) => {
            d.add(PointId::TwoTorsion(1), 2 * k - 1);
            d.add(PointId::TwoTorsion(2), 1);
            d.add(PointId::TwoTorsion(3), 1);
        }
        (MarkingCase::ThreePoint, true) => {
            d.add(PointId::MarkedPlus, k);
            d.add(PointId::MarkedMinus, k);
        }
        (MarkingCase::ThreePoint, false) => {
            d.add(PointId::MarkedPlus, k - 1);
            d.add(PointId::MarkedMinus, k - 1);
            for i in 1..=3 {
                d.add(PointId::TwoTorsion(i), 1);
            }
        }
    }
    d
}

/// Computed divisors of `A_n`, `|n| <= range`, against the printed ones;
/// a computed divisor of nonzero degree is also reported.
pub fn divisor_findings(curve: &Arc<CurveSpec>, range: i64) -> Vec<Finding> {
    let mut out = Vec::new();
    for n in -range..=range {
        let location = format!("{} A{n}", curve.case().name());
        let printed = printed_divisor(curve.case(), n);
        match divisor_of_basis(curve, n) {
            Ok(d) if d == printed && d.degree() == 0 => {}
            Ok(d) => out.push(Finding {
                location,
                engine: format!("{d} (degree {})", d.degree()),
                printed: printed.to_string(),
            }),
            Err(err) => out.push(Finding {
                location,
                engine: err.to_string(),
                printed: printed.to_string(),
            }),
        }
    }
    out
}

fn entry_location(n: i64, m: i64) -> String {
    format!("[V{n}, V{m}]")
}

/// Line-by-line comparison of a curve table with the printed structure
/// equations of its marking case.
pub fn structure_findings(table: &StructureTable, curve: &Arc<CurveSpec>) -> Vec<Finding> {
    let mut out = Vec::new();
    for ((n, m), e) in table.entries() {
        let printed = expected_bracket(curve, n, m);
        if *e != printed {
            out.push(Finding {
                location: entry_location(n, m),
                engine: e.to_string(),
                printed: printed.to_string(),
            });
        }
    }
    out
}

/// Comparison of a limit table with the printed limit bracket.
pub fn limit_findings(table: &StructureTable, subcase: Subcase, e: &ParamScalar) -> Vec<Finding> {
    let mut out = Vec::new();
    for ((n, m), x) in table.entries() {
        let Some(printed) = printed_limit_bracket(subcase, e, n, m) else {
            continue;
        };
        if *x != printed {
            out.push(Finding {
                location: format!("{} {}", subcase.name(), entry_location(n, m)),
                engine: x.to_string(),
                printed: printed.to_string(),
            });
        }
    }
    out
}

/// Comparison of engine pullbacks of `V_n`, `|n| <= range`, with the
/// printed generators.
pub fn pullback_findings(subcase: Subcase, e: &ParamScalar, range: i64) -> Vec<Finding> {
    let d = Desingularization::new(subcase, e);
    let mut out = Vec::new();
    for n in -range..=range {
        let engine = d.pullback_basis(n);
        let printed = printed_vf_pullback(subcase, e, n);
        if engine != printed {
            out.push(Finding {
                location: format!("{} pullback V{n}", subcase.name()),
                engine: engine.render(),
                printed: printed.render(),
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::degen::limit_table_at;
    use crate::kn::basis_form;

    #[test]
    fn pullbacks_match_for_every_subcase() {
        let e = ParamScalar::e();
        for s in Subcase::ALL {
            assert!(pullback_findings(s, &e, 6).is_empty(), "{}", s.name());
        }
    }

    #[test]
    fn form_pullbacks_match() {
        let e = ParamScalar::e();
        for s in Subcase::ALL {
            let d = Desingularization::new(s, &e);
            let c = s.curve_at(&e).shared();
            for n in -3..=3 {
                for w in -2..=2 {
                    assert_eq!(
                        d.pullback_form(&basis_form(&c, n, w)),
                        printed_form_pullback(s, &e, n, w),
                        "{} n={n} w={w}",
                        s.name()
                    );
                }
            }
        }
    }

    #[test]
    fn limit_tables_match() {
        let e = ParamScalar::e();
        for s in [Subcase::CuspTwo, Subcase::N1, Subcase::N2] {
            let t = limit_table_at(s, &e, 3).unwrap();
            assert!(limit_findings(&t, s, &e).is_empty(), "{}", s.name());
        }
    }

    #[test]
    fn divisors_match() {
        for case in [MarkingCase::TwoPoint, MarkingCase::ThreePoint] {
            let c = CurveSpec::symbolic(case).shared();
            assert!(divisor_findings(&c, 6).is_empty(), "{}", case.name());
        }
    }

    #[test]
    fn n2_entry() {
        let e = ParamScalar::e();
        let x = printed_limit_bracket(Subcase::N2, &e, 1, 0).unwrap();
        let nine = (&e * &e).scale(&rat(9));
        assert_eq!(x, BasisExpansion::from_terms([(2, ParamScalar::from_int(-1)), (-2, nine)]));
    }
}
