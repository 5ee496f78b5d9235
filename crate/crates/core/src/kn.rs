//! Vector fields and λ-forms on the cubic in the `d/dz` frame, the Lie
//! bracket, and structure-constant tables in the basis `V_n = A_n d/dz`.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::curve::{basis_function, expand_in_basis, BasisExpansion, CurveError, CurveFunction, CurveSpec, MarkingCase};
use crate::degen::Subcase;
use crate::param::{rat, FieldError, ParamScalar, Specialization};

/// `coeff * d/dz`.
#[derive(Clone, Debug, PartialEq)]
pub struct VectorField {
    coeff: CurveFunction,
}

impl VectorField {
    pub fn new(coeff: CurveFunction) -> Self {
        VectorField { coeff }
    }

    pub fn coeff(&self) -> &CurveFunction {
        &self.coeff
    }

    pub fn curve(&self) -> &Arc<CurveSpec> {
        self.coeff.curve()
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn add(&self, other: &VectorField) -> Result<VectorField, CurveError> {
        Ok(VectorField::new(self.coeff.add(&other.coeff)?))
    }

    pub fn scale(&self, c: &ParamScalar) -> VectorField {
        VectorField::new(self.coeff.scale(c))
    }

    pub fn expand(&self) -> BasisExpansion {
        expand_in_basis(&self.coeff)
    }

    pub fn from_expansion(curve: &Arc<CurveSpec>, e: &BasisExpansion) -> VectorField {
        VectorField::new(e.to_function(curve))
    }
}

/// `coeff * (dz)^weight`; weight `-1` are vector fields, `0` functions,
/// `1` differentials.
#[derive(Clone, Debug, PartialEq)]
pub struct LambdaForm {
    weight: i64,
    coeff: CurveFunction,
}

impl LambdaForm {
    pub fn new(weight: i64, coeff: CurveFunction) -> Self {
        LambdaForm { weight, coeff }
    }

    pub fn weight(&self) -> i64 {
        self.weight
    }

    pub fn coeff(&self) -> &CurveFunction {
        &self.coeff
    }
}

impl From<VectorField> for LambdaForm {
    fn from(v: VectorField) -> Self {
        LambdaForm::new(-1, v.coeff)
    }
}

pub fn basis_vf(curve: &Arc<CurveSpec>, n: i64) -> VectorField {
    VectorField::new(basis_function(curve, n))
}

pub fn basis_form(curve: &Arc<CurveSpec>, n: i64, weight: i64) -> LambdaForm {
    LambdaForm::new(weight, basis_function(curve, n))
}

/// `[F d/dz, G d/dz] = (F G' - G F') d/dz` with `' = d/dz`.
pub fn lie_bracket(v: &VectorField, w: &VectorField) -> Result<VectorField, CurveError> {
    let f = &v.coeff;
    let g = &w.coeff;
    let lhs = f.mul(&g.derive_dz())?;
    let rhs = g.mul(&f.derive_dz())?;
    Ok(VectorField::new(lhs.sub(&rhs)?))
}

/// `L_{F d/dz}(g dz^λ) = (F g' + λ F' g) dz^λ`.
pub fn lie_derivative(v: &VectorField, w: &LambdaForm) -> Result<LambdaForm, CurveError> {
    let f = &v.coeff;
    let g = &w.coeff;
    let first = f.mul(&g.derive_dz())?;
    let second = f.derive_dz().mul(g)?.scale(&ParamScalar::from_int(w.weight));
    Ok(LambdaForm::new(w.weight, first.add(&second)?))
}

pub fn function_action(g: &CurveFunction, w: &LambdaForm) -> Result<LambdaForm, CurveError> {
    Ok(LambdaForm::new(w.weight, g.mul(&w.coeff)?))
}

pub fn bracket_expansion(curve: &Arc<CurveSpec>, n: i64, m: i64) -> BasisExpansion {
    lie_bracket(&basis_vf(curve, n), &basis_vf(curve, m))
        .expect("same curve")
        .expand()
}

/// The printed structure equations for the given parity pattern.
///
/// Two markings:
/// `[V_2k, V_2l] = (2l - 2k) V_{2(k+l)+1}`,
/// `[V_2k+1, V_2l+1] = (m - n){V_{2(k+l+1)+1} + 3e1 V_{2(k+l)+1} + (e1-e2)(e1-e3) V_{2(k+l-1)+1}}`,
/// `[V_2k+1, V_2l] = (m-n) V_{2(k+l+1)} + (m-n+1) 3e1 V_{2(k+l)} + (m-n+2)(e1-e2)(e1-e3) V_{2(k+l-1)}`.
/// Three markings replace `e1` by `a`, `(e1-e2)(e1-e3)` by `3a^2 - (e2^2 + e2 e3 + e3^2)`
/// and append the `b^2/4` terms with prefactor `(m - n)` resp. `(m - n + 3)`.
pub fn expected_bracket(curve: &CurveSpec, n: i64, m: i64) -> BasisExpansion {
    if n == m {
        return BasisExpansion::new();
    }
    let (three_a, mid, quarter_b2) = match curve.case() {
        MarkingCase::TwoPoint => {
            let e1 = curve.e1();
            (
                e1.scale(&rat(3)),
                &(e1 - curve.e2()) * &(e1 - curve.e3()),
                ParamScalar::zero(),
            )
        }
        MarkingCase::ThreePoint => {
            let a = curve.a();
            let e2 = curve.e2();
            let e3 = curve.e3();
            let quad = &(&(e2 * e2) + &(e2 * e3)) + &(e3 * e3);
            (
                a.scale(&rat(3)),
                &(a * a).scale(&rat(3)) - &quad,
                curve.b_squared().scale(&crate::param::rat_frac(1, 4)),
            )
        }
    };
    let d = ParamScalar::from_int(m - n);
    let n_even = n.rem_euclid(2) == 0;
    let m_even = m.rem_euclid(2) == 0;
    match (n_even, m_even) {
        (true, true) => {
            let (k, l) = (n / 2, m / 2);
            BasisExpansion::single(2 * (k + l) + 1, d)
        }
        (false, false) => {
            let (k, l) = ((n - 1).div_euclid(2), (m - 1).div_euclid(2));
            let mut e = BasisExpansion::new();
            e.add(2 * (k + l + 1) + 1, d.clone());
            e.add(2 * (k + l) + 1, &d * &three_a);
            e.add(2 * (k + l - 1) + 1, &d * &mid);
            e.add(2 * (k + l - 2) + 1, &d * &quarter_b2);
            e
        }
        (false, true) => {
            let (k, l) = ((n - 1).div_euclid(2), m / 2);
            let c = |j: i64| ParamScalar::from_int(m - n + j);
            let mut e = BasisExpansion::new();
            e.add(2 * (l + k + 1), c(0));
            e.add(2 * (l + k), &c(1) * &three_a);
            e.add(2 * (l + k - 1), &c(2) * &mid);
            e.add(2 * (l + k - 2), &c(3) * &quarter_b2);
            e
        }
        (true, false) => expected_bracket(curve, m, n).neg(),
    }
}

/// Homogeneous degree of `V_n`: `n` with two markings, `floor(n/2)` with three.
pub fn deg(case: MarkingCase, n: i64) -> i64 {
    match case {
        MarkingCase::TwoPoint => n,
        MarkingCase::ThreePoint => n.div_euclid(2),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TableOrigin {
    /// Computed on a curve (symbolic or with specialized parameters).
    Curve(MarkingCase),
    /// Symbolic table specialized to a degenerate member.
    Limit(Subcase),
    /// Brackets of the case-(5) generators on the projective line.
    Case5Closure,
}

impl TableOrigin {
    pub fn name(&self) -> String {
        match self {
            TableOrigin::Curve(c) => String::from(c.name()),
            TableOrigin::Limit(s) => alloc::format!("limit-{}", s.name()),
            TableOrigin::Case5Closure => String::from("case5-closure"),
        }
    }

    pub fn source_case(&self) -> MarkingCase {
        match self {
            TableOrigin::Curve(c) => *c,
            TableOrigin::Limit(s) => s.source_case(),
            TableOrigin::Case5Closure => MarkingCase::ThreePoint,
        }
    }
}

/// Brackets `[V_n, V_m]` for `|n|, |m| <= window`.
#[derive(Clone, Debug, PartialEq)]
pub struct StructureTable {
    origin: TableOrigin,
    window: i64,
    params: Vec<(String, ParamScalar)>,
    entries: BTreeMap<(i64, i64), BasisExpansion>,
}

impl StructureTable {
    pub fn from_entries(
        origin: TableOrigin,
        window: i64,
        params: Vec<(String, ParamScalar)>,
        entries: BTreeMap<(i64, i64), BasisExpansion>,
    ) -> Self {
        StructureTable {
            origin,
            window,
            params,
            entries,
        }
    }

    pub fn origin(&self) -> &TableOrigin {
        &self.origin
    }

    pub fn window(&self) -> i64 {
        self.window
    }

    pub fn params(&self) -> &[(String, ParamScalar)] {
        &self.params
    }

    pub fn entry(&self, n: i64, m: i64) -> Option<&BasisExpansion> {
        self.entries.get(&(n, m))
    }

    pub fn entries(&self) -> impl Iterator<Item = ((i64, i64), &BasisExpansion)> {
        self.entries.iter().map(|(k, v)| (*k, v))
    }

    pub fn specialize(
        &self,
        origin: TableOrigin,
        params: Vec<(String, ParamScalar)>,
        s: &Specialization,
    ) -> Result<StructureTable, FieldError> {
        let mut entries = BTreeMap::new();
        for (k, v) in &self.entries {
            entries.insert(*k, v.specialize(s)?);
        }
        Ok(StructureTable {
            origin,
            window: self.window,
            params,
            entries,
        })
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.entries.iter().all(|((n, m), e)| {
            self.entries
                .get(&(*m, *n))
                .is_some_and(|other| *other == e.neg())
        })
    }
}

pub fn curve_params(curve: &CurveSpec) -> Vec<(String, ParamScalar)> {
    let mut p = alloc::vec![
        (String::from("e1"), curve.e1().clone()),
        (String::from("e2"), curve.e2().clone()),
    ];
    if curve.case() == MarkingCase::ThreePoint {
        p.push((String::from("a"), curve.a().clone()));
    }
    p
}

pub fn structure_table(curve: &Arc<CurveSpec>, window: i64) -> StructureTable {
    let mut entries = BTreeMap::new();
    for n in -window..=window {
        for m in -window..=window {
            if n < m {
                let e = bracket_expansion(curve, n, m);
                entries.insert((m, n), e.neg());
                entries.insert((n, m), e);
            } else if n == m {
                entries.insert((n, m), BasisExpansion::new());
            }
        }
    }
    StructureTable {
        origin: TableOrigin::Curve(curve.case()),
        window,
        params: curve_params(curve),
        entries,
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GradingReport {
    /// `(n, m, index)` with the output degree outside `[d - 3, d + 1]`.
    pub violations: Vec<(i64, i64, i64)>,
    /// Observed extremes of `deg(index) - d`.
    pub min_offset: Option<i64>,
    pub max_offset: Option<i64>,
}

pub fn almost_grading_check(table: &StructureTable) -> GradingReport {
    let case = table.origin.source_case();
    let mut report = GradingReport::default();
    for ((n, m), e) in table.entries() {
        let d = deg(case, n) + deg(case, m);
        for j in e.indices() {
            let off = deg(case, j) - d;
            report.min_offset = Some(report.min_offset.map_or(off, |x| x.min(off)));
            report.max_offset = Some(report.max_offset.map_or(off, |x| x.max(off)));
            if !(-3..=1).contains(&off) {
                report.violations.push((n, m, j));
            }
        }
    }
    report
}

/// `[[V_n,V_m],V_p] + [[V_m,V_p],V_n] + [[V_p,V_n],V_m]`.
pub fn jacobi_residual(curve: &Arc<CurveSpec>, n: i64, m: i64, p: i64) -> VectorField {
    let v = |i| basis_vf(curve, i);
    let br = |x: &VectorField, y: &VectorField| lie_bracket(x, y).expect("same curve");
    let t1 = br(&br(&v(n), &v(m)), &v(p));
    let t2 = br(&br(&v(m), &v(p)), &v(n));
    let t3 = br(&br(&v(p), &v(n)), &v(m));
    t1.add(&t2).and_then(|s| s.add(&t3)).expect("same curve")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::Laurent;

    fn two() -> Arc<CurveSpec> {
        CurveSpec::symbolic(MarkingCase::TwoPoint).shared()
    }

    fn three() -> Arc<CurveSpec> {
        CurveSpec::symbolic(MarkingCase::ThreePoint).shared()
    }

    #[test]
    fn small_basis_fields() {
        let c = two();
        assert_eq!(basis_vf(&c, 0).coeff(), &CurveFunction::constant(c.clone(), ParamScalar::one()));
        assert_eq!(basis_vf(&c, 2).coeff(), &CurveFunction::u(c.clone()));
        assert_eq!(basis_vf(&c, 1).coeff().q(), &Laurent::monomial(ParamScalar::from_frac(1, 2), -1));
    }

    #[test]
    fn v0_v2() {
        let c = two();
        assert_eq!(bracket_expansion(&c, 0, 2), BasisExpansion::single(3, ParamScalar::from_int(2)));
    }

    #[test]
    fn v1_v0_two_point() {
        let c = two();
        let e1 = ParamScalar::e1();
        let prod = &(&e1 - &ParamScalar::e2()) * &(&e1 - &ParamScalar::e3());
        let expected = BasisExpansion::from_terms([(2, ParamScalar::from_int(-1)), (-2, prod)]);
        assert_eq!(bracket_expansion(&c, 1, 0), expected);
        assert_eq!(expected_bracket(&c, 1, 0), expected);
    }

    #[test]
    fn self_bracket_vanishes() {
        let c = three();
        for n in -3..=3 {
            assert!(lie_bracket(&basis_vf(&c, n), &basis_vf(&c, n)).unwrap().is_zero());
        }
    }

    #[test]
    fn expected_two_point_odd_odd() {
        let c = two();
        let e1 = ParamScalar::e1();
        let prod = &(&e1 - &ParamScalar::e2()) * &(&e1 - &ParamScalar::e3());
        let two_ = ParamScalar::from_int(2);
        let expected = BasisExpansion::from_terms([
            (5, two_.clone()),
            (3, e1.scale(&rat(6))),
            (1, &prod * &two_),
        ]);
        assert_eq!(expected_bracket(&c, 1, 3), expected);
    }

    #[test]
    fn expected_three_point_odd_even() {
        let c = three();
        let a = ParamScalar::a();
        let e2 = ParamScalar::e2();
        let e3 = ParamScalar::e3();
        let mid = &(&a * &a).scale(&rat(3)) - &(&(&(&e2 * &e2) + &(&e2 * &e3)) + &(&e3 * &e3));
        let expected = BasisExpansion::from_terms([
            (2, ParamScalar::from_int(-1)),
            (-2, mid),
            (-4, c.b_squared().scale(&crate::param::rat_frac(1, 2))),
        ]);
        assert_eq!(expected_bracket(&c, 1, 0), expected);
        assert_eq!(bracket_expansion(&c, 1, 0), expected);
    }

    #[test]
    fn degrees() {
        assert_eq!(deg(MarkingCase::TwoPoint, 5), 5);
        assert_eq!(deg(MarkingCase::ThreePoint, 5), 2);
        assert_eq!(deg(MarkingCase::ThreePoint, 4), 2);
        assert_eq!(deg(MarkingCase::ThreePoint, -1), -1);
    }

    #[test]
    fn table_window_two() {
        let t = structure_table(&two(), 2);
        assert_eq!(t.entry(0, 2), Some(&BasisExpansion::single(3, ParamScalar::from_int(2))));
        assert!(t.is_antisymmetric());
    }

    #[test]
    fn small_jacobi() {
        assert!(jacobi_residual(&two(), 0, 2, 4).is_zero());
        assert!(jacobi_residual(&three(), 1, 0, 3).is_zero());
        assert!(jacobi_residual(&three(), 2, 2, -1).is_zero());
    }

    #[test]
    fn forms() {
        let c = two();
        let dz = basis_form(&c, 0, 1);
        let v0 = basis_vf(&c, 0);
        assert!(lie_derivative(&v0, &dz).unwrap().coeff().is_zero());
        let w = basis_form(&c, 2, 1);
        assert_eq!(
            lie_derivative(&v0, &w).unwrap(),
            LambdaForm::new(1, basis_function(&c, 3).scale(&ParamScalar::from_int(2)))
        );
        let w3 = basis_form(&c, 3, 1);
        assert_eq!(function_action(&basis_function(&c, 2), &w3).unwrap(), basis_form(&c, 5, 1));
        let one = CurveFunction::constant(c.clone(), ParamScalar::one());
        assert_eq!(function_action(&one, &w3).unwrap(), w3);
    }

    #[test]
    fn a1_squared_through_f() {
        let c = three();
        let a1 = basis_function(&c, 1);
        let sq = a1.mul(&a1).unwrap();
        let expected = c.f_poly().shift(-2).scale(&ParamScalar::from_frac(1, 4));
        assert_eq!(sq.p(), &expected);
        assert!(sq.q().is_zero());
    }
}
