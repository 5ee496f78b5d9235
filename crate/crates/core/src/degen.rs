//! Degenerations of the cubic to the nodal and cuspidal curves, the fate of
//! the markings, and pullbacks to the projective line.
//!
//! Both degenerate curves are handled by one parametrization with a free
//! parameter `e` (`e = 0` is the cusp):
//! `X = t^2 - 2e`, `Y = 2t(t^2 - 3e)`, `d/dz = (t^2 - 3e) d/dt`.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::curve::{expansion_from_parts, BasisExpansion, CurveFunction, CurveSpec, MarkingCase};
use crate::kn::{curve_params, structure_table, LambdaForm, StructureTable, TableOrigin, VectorField};
use crate::laurent::Laurent;
use crate::p1fn::{half, int, P1Form, P1Function, P1VectorField};
use crate::param::{rat, FieldError, ParamScalar, Specialization, Symbol};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum DegenError {
    #[error("the curve is smooth")]
    SmoothCurve,
    #[error("no degeneration case for {0}")]
    InvalidCombination(String),
    #[error("the curve is not the nodal cubic with the given parameter")]
    NotOnNodalCurve,
    #[error("the curve is not the cuspidal cubic with a = 0")]
    NotOnCuspidalCurve,
    #[error("pullback has a pole away from the markings")]
    NonPolynomialResult,
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DegenerationKind {
    Smooth,
    /// Double root `e`, simple root `-2e`.
    Nodal(ParamScalar),
    Cuspidal,
}

pub fn classify(e1: &ParamScalar, e2: &ParamScalar, e3: &ParamScalar) -> DegenerationKind {
    if e1 == e2 && e2 == e3 {
        DegenerationKind::Cuspidal
    } else if e1 == e2 || e1 == e3 {
        DegenerationKind::Nodal(e1.clone())
    } else if e2 == e3 {
        DegenerationKind::Nodal(e2.clone())
    } else {
        DegenerationKind::Smooth
    }
}

pub fn classify_curve(curve: &CurveSpec) -> DegenerationKind {
    classify(curve.e1(), curve.e2(), curve.e3())
}

/// The degeneration cases. `N1`, `N2` start from two markings; `N3`-`N5`
/// from three.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Subcase {
    CuspTwo,
    CuspThree,
    /// Two markings, `a = e1 -> e`.
    N1,
    /// Two markings, `a = e1 -> -2e`.
    N2,
    /// Three markings, `e3 -> e`, `a -> e`.
    N3,
    /// Three markings, `e1 = e2 -> e`, `a -> e`.
    N4,
    /// Three markings, `e1 = e2 -> e`, `a -> -5e`.
    N5,
}

impl Subcase {
    pub const ALL: [Subcase; 7] = [
        Subcase::CuspTwo,
        Subcase::CuspThree,
        Subcase::N1,
        Subcase::N2,
        Subcase::N3,
        Subcase::N4,
        Subcase::N5,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Subcase::CuspTwo => "cusp-two",
            Subcase::CuspThree => "cusp-three",
            Subcase::N1 => "N1",
            Subcase::N2 => "N2",
            Subcase::N3 => "N3",
            Subcase::N4 => "N4",
            Subcase::N5 => "N5",
        }
    }

    pub fn from_name(s: &str) -> Option<Subcase> {
        Subcase::ALL.into_iter().find(|c| c.name().eq_ignore_ascii_case(s))
    }

    pub fn source_case(self) -> MarkingCase {
        match self {
            Subcase::CuspTwo | Subcase::N1 | Subcase::N2 => MarkingCase::TwoPoint,
            _ => MarkingCase::ThreePoint,
        }
    }

    pub fn is_cuspidal(self) -> bool {
        matches!(self, Subcase::CuspTwo | Subcase::CuspThree)
    }

    /// Values of `(e1, e2, a)` in terms of the node parameter `e`.
    fn values(self, e: &ParamScalar) -> (ParamScalar, ParamScalar, ParamScalar) {
        let z = ParamScalar::zero;
        let m = |k: i64| e.scale(&rat(k));
        match self {
            Subcase::CuspTwo | Subcase::CuspThree => (z(), z(), z()),
            Subcase::N1 => (e.clone(), e.clone(), e.clone()),
            Subcase::N2 => (m(-2), e.clone(), m(-2)),
            Subcase::N3 => (e.clone(), m(-2), e.clone()),
            Subcase::N4 => (e.clone(), e.clone(), e.clone()),
            Subcase::N5 => (e.clone(), e.clone(), m(-5)),
        }
    }

    /// Specialization of the symbolic source curve onto this subcase, with
    /// the node parameter set to `e` (the symbol `e` for a symbolic limit).
    pub fn specialization_at(self, e: &ParamScalar) -> Specialization {
        let (e1, e2, a) = self.values(e);
        let mut s = Specialization::new().with(Symbol::E1, e1).with(Symbol::E2, e2);
        if self.source_case() == MarkingCase::ThreePoint {
            s.set(Symbol::A, a);
        }
        s
    }

    pub fn specialization(self) -> Specialization {
        self.specialization_at(&ParamScalar::e())
    }

    pub fn curve_at(self, e: &ParamScalar) -> CurveSpec {
        let (e1, e2, a) = self.values(e);
        match self.source_case() {
            MarkingCase::TwoPoint => CurveSpec::two_point(e1, e2),
            MarkingCase::ThreePoint => CurveSpec::three_point(e1, e2, a),
        }
    }

    pub fn curve(self) -> CurveSpec {
        self.curve_at(&ParamScalar::e())
    }

    pub fn kind_at(self, e: &ParamScalar) -> DegenerationKind {
        if self.is_cuspidal() {
            DegenerationKind::Cuspidal
        } else {
            DegenerationKind::Nodal(e.clone())
        }
    }

    /// `X - a = t^2 - c` on the desingularization.
    fn u_offset(self, e: &ParamScalar) -> ParamScalar {
        match self {
            Subcase::CuspTwo | Subcase::CuspThree | Subcase::N2 => ParamScalar::zero(),
            Subcase::N1 | Subcase::N3 | Subcase::N4 => e.scale(&rat(3)),
            Subcase::N5 => e.scale(&rat(-3)),
        }
    }
}

/// Identifies the degeneration case of a specialized curve.
pub fn identify(curve: &CurveSpec, kind: &DegenerationKind) -> Result<Subcase, DegenError> {
    let bad = || {
        DegenError::InvalidCombination(alloc::format!(
            "{} markings with e1 = {}, e2 = {}, a = {}",
            curve.case().name(),
            curve.e1(),
            curve.e2(),
            curve.a()
        ))
    };
    let actual = classify_curve(curve);
    match kind {
        DegenerationKind::Smooth => Err(DegenError::SmoothCurve),
        DegenerationKind::Cuspidal => {
            if actual != DegenerationKind::Cuspidal || !curve.a().is_zero() {
                return Err(bad());
            }
            Ok(match curve.case() {
                MarkingCase::TwoPoint => Subcase::CuspTwo,
                MarkingCase::ThreePoint => Subcase::CuspThree,
            })
        }
        DegenerationKind::Nodal(e) => {
            if e.is_zero() || actual != *kind {
                return Err(bad());
            }
            let a = curve.a();
            let minus = |k: i64| e.scale(&rat(k));
            let double_first = curve.e1() == curve.e2();
            match curve.case() {
                MarkingCase::TwoPoint if a == e => Ok(Subcase::N1),
                MarkingCase::TwoPoint if *a == minus(-2) => Ok(Subcase::N2),
                MarkingCase::ThreePoint if a == e && double_first => Ok(Subcase::N4),
                MarkingCase::ThreePoint if a == e => Ok(Subcase::N3),
                MarkingCase::ThreePoint if *a == minus(-5) && double_first => Ok(Subcase::N5),
                _ => Err(bad()),
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum P1Marking {
    Infinity,
    Zero,
    /// The two roots of `t^2 - c`.
    RootsOf(ParamScalar),
}

impl P1Marking {
    pub fn name(&self) -> String {
        match self {
            P1Marking::Infinity => String::from("inf"),
            P1Marking::Zero => String::from("t=0"),
            P1Marking::RootsOf(c) => {
                let q: String = crate::p1fn::quadratic(c)
                    .render("t")
                    .chars()
                    .filter(|ch| *ch != ' ' && *ch != '*')
                    .collect();
                alloc::format!("roots({})", q)
            }
        }
    }

    /// Number of points the descriptor stands for.
    pub fn point_count(&self) -> u32 {
        match self {
            P1Marking::RootsOf(_) => 2,
            _ => 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkingFate {
    pub subcase: Subcase,
    pub p1_markings: Vec<P1Marking>,
    pub marking_count_before: u32,
    pub marking_count_after: u32,
    /// Some marking runs into the singular point.
    pub singular_hit: bool,
}

pub fn marking_fate_of(subcase: Subcase, e: &ParamScalar) -> MarkingFate {
    let three_e = e.scale(&rat(3));
    let (markings, hit) = match subcase {
        Subcase::CuspTwo | Subcase::CuspThree | Subcase::N2 => {
            (alloc::vec![P1Marking::Zero, P1Marking::Infinity], subcase != Subcase::N2)
        }
        Subcase::N1 | Subcase::N3 | Subcase::N4 => {
            (alloc::vec![P1Marking::RootsOf(three_e), P1Marking::Infinity], true)
        }
        Subcase::N5 => (alloc::vec![P1Marking::RootsOf(-&three_e), P1Marking::Infinity], false),
    };
    let after = markings.iter().map(P1Marking::point_count).sum();
    MarkingFate {
        subcase,
        p1_markings: markings,
        marking_count_before: subcase.source_case().marking_count(),
        marking_count_after: after,
        singular_hit: hit,
    }
}

pub fn marking_fate(curve: &CurveSpec, kind: &DegenerationKind) -> Result<MarkingFate, DegenError> {
    let s = identify(curve, kind)?;
    let e = match kind {
        DegenerationKind::Nodal(e) => e.clone(),
        _ => ParamScalar::zero(),
    };
    Ok(marking_fate_of(s, &e))
}

/// The normalization map of a degenerate member together with the shift
/// `X - a = t^2 - c_u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Desingularization {
    e: ParamScalar,
    c_u: ParamScalar,
}

impl Desingularization {
    pub fn new(subcase: Subcase, e: &ParamScalar) -> Self {
        let e = if subcase.is_cuspidal() {
            ParamScalar::zero()
        } else {
            e.clone()
        };
        Desingularization {
            c_u: subcase.u_offset(&e),
            e,
        }
    }

    pub fn for_curve(curve: &CurveSpec, kind: &DegenerationKind) -> Result<Self, DegenError> {
        let s = identify(curve, kind)?;
        let e = match kind {
            DegenerationKind::Nodal(e) => e.clone(),
            _ => ParamScalar::zero(),
        };
        Ok(Desingularization::new(s, &e))
    }

    pub fn e(&self) -> &ParamScalar {
        &self.e
    }

    /// `c_u` with `u = X - a = t^2 - c_u`.
    pub fn u_offset(&self) -> &ParamScalar {
        &self.c_u
    }

    pub fn three_e(&self) -> ParamScalar {
        self.e.scale(&rat(3))
    }

    pub fn x(&self) -> P1Function {
        P1Function::quadratic_power(&self.e.scale(&rat(2)), 1)
    }

    pub fn y(&self) -> P1Function {
        P1Function::quadratic_power(&self.three_e(), 1).shift(1).scale(&int(2))
    }

    /// `(t^2 - 3e)^(-weight)`: the image of `(dz)^weight` over `(dt)^weight`.
    pub fn frame_power(&self, weight: i64) -> P1Function {
        P1Function::quadratic_power(&self.three_e(), -weight)
    }

    fn u_power_sum(&self, l: &Laurent) -> P1Function {
        let mut out = P1Function::zero();
        for (k, c) in l.terms() {
            out = out.add(&P1Function::quadratic_power(&self.c_u, k).scale(c));
        }
        out
    }

    pub fn pullback_parts(&self, p: &Laurent, q: &Laurent) -> P1Function {
        self.u_power_sum(p).add(&self.y().mul(&self.u_power_sum(q)))
    }

    pub fn pullback_function(&self, x: &CurveFunction) -> P1Function {
        self.pullback_parts(x.p(), x.q())
    }

    pub fn pullback_vf(&self, v: &VectorField) -> P1VectorField {
        P1VectorField::new(self.pullback_function(v.coeff()).mul(&self.frame_power(-1)))
    }

    /// Pullback of `V_n`, computed from the basis shape alone.
    pub fn pullback_basis(&self, n: i64) -> P1VectorField {
        let (p, q) = if n.rem_euclid(2) == 0 {
            (Laurent::monomial(ParamScalar::one(), n / 2), Laurent::zero())
        } else {
            let k = (n - 1).div_euclid(2);
            (Laurent::zero(), Laurent::monomial(half(), k - 1))
        };
        P1VectorField::new(self.pullback_parts(&p, &q).mul(&self.frame_power(-1)))
    }

    pub fn pullback_form(&self, w: &LambdaForm) -> P1Form {
        P1Form::new(
            w.weight(),
            self.pullback_function(w.coeff()).mul(&self.frame_power(w.weight())),
        )
    }

    /// Writes a vector field on the line as a combination of pulled-back
    /// basis fields, when it is one.
    pub fn preimage(&self, v: &P1VectorField) -> Option<BasisExpansion> {
        let f = v.coeff().mul(&self.frame_power(1));
        let p = f.parity_part(0).as_laurent_in(&self.c_u)?;
        let odd = f.parity_part(1);
        let q_fn = odd.shift(-1).mul(&self.frame_power(1)).scale(&half());
        let q = q_fn.as_laurent_in(&self.c_u)?;
        Some(expansion_from_parts(&p, &q))
    }

    pub fn specialize(&self, s: &Specialization) -> Result<Desingularization, FieldError> {
        Ok(Desingularization {
            e: s.apply(&self.e)?,
            c_u: s.apply(&self.c_u)?,
        })
    }

    /// True when every pole of `f` lies over a marking on the line.
    fn poles_over_markings(&self, f: &P1Function) -> bool {
        f.denominator().iter().all(|(c, _)| *c == self.c_u)
    }
}

fn nodal_desing(curve: &CurveSpec, e: &ParamScalar) -> Result<Desingularization, DegenError> {
    let kind = DegenerationKind::Nodal(e.clone());
    if e.is_zero() || classify_curve(curve) != kind {
        return Err(DegenError::NotOnNodalCurve);
    }
    Desingularization::for_curve(curve, &kind)
}

fn cusp_desing(curve: &CurveSpec) -> Result<Desingularization, DegenError> {
    if classify_curve(curve) != DegenerationKind::Cuspidal || !curve.a().is_zero() {
        return Err(DegenError::NotOnCuspidalCurve);
    }
    Desingularization::for_curve(curve, &DegenerationKind::Cuspidal)
}

fn checked(d: &Desingularization, v: P1VectorField) -> Result<P1VectorField, DegenError> {
    if d.poles_over_markings(v.coeff()) {
        Ok(v)
    } else {
        Err(DegenError::NonPolynomialResult)
    }
}

/// `F d/dz -> F(X(t), Y(t)) (t^2 - 3e) d/dt`. Poles are allowed only over
/// the markings (they occur for negative indices in cases `N1` and `N5`).
pub fn pullback_nodal_vf(v: &VectorField, e: &ParamScalar) -> Result<P1VectorField, DegenError> {
    let d = nodal_desing(v.curve(), e)?;
    checked(&d, d.pullback_vf(v))
}

pub fn pullback_cuspidal_vf(v: &VectorField) -> Result<P1VectorField, DegenError> {
    let d = cusp_desing(v.curve())?;
    checked(&d, d.pullback_vf(v))
}

/// Like the plain pullbacks but rejects any denominator at all.
pub fn pullback_vf_laurent(v: &VectorField, kind: &DegenerationKind) -> Result<P1VectorField, DegenError> {
    let r = match kind {
        DegenerationKind::Smooth => return Err(DegenError::SmoothCurve),
        DegenerationKind::Nodal(e) => pullback_nodal_vf(v, e)?,
        DegenerationKind::Cuspidal => pullback_cuspidal_vf(v)?,
    };
    if r.coeff().is_laurent() {
        Ok(r)
    } else {
        Err(DegenError::NonPolynomialResult)
    }
}

pub fn pullback_form(w: &LambdaForm, kind: &DegenerationKind) -> Result<P1Form, DegenError> {
    let curve = w.coeff().curve();
    let d = match kind {
        DegenerationKind::Smooth => return Err(DegenError::SmoothCurve),
        DegenerationKind::Nodal(e) => nodal_desing(curve, e)?,
        DegenerationKind::Cuspidal => cusp_desing(curve)?,
    };
    Ok(d.pullback_form(w))
}

/// The symbolic table of the source case specialized onto the subcase.
pub fn limit_table_at(subcase: Subcase, e: &ParamScalar, window: i64) -> Result<StructureTable, FieldError> {
    let symbolic = CurveSpec::symbolic(subcase.source_case()).shared();
    let table = structure_table(&symbolic, window);
    specialize_to_limit(&table, subcase, e)
}

/// Specializes an already computed symbolic source table.
pub fn specialize_to_limit(
    symbolic: &StructureTable,
    subcase: Subcase,
    e: &ParamScalar,
) -> Result<StructureTable, FieldError> {
    let curve = subcase.curve_at(e);
    symbolic.specialize(
        TableOrigin::Limit(subcase),
        limit_params(&curve, subcase),
        &subcase.specialization_at(e),
    )
}

fn limit_params(curve: &CurveSpec, subcase: Subcase) -> Vec<(String, ParamScalar)> {
    let mut p = curve_params(curve);
    if subcase.source_case() == MarkingCase::TwoPoint {
        p.push((String::from("a"), curve.a().clone()));
    }
    p
}

pub fn limit_structure_table(
    curve: &CurveSpec,
    kind: &DegenerationKind,
    window: i64,
) -> Result<StructureTable, DegenError> {
    let s = identify(curve, kind)?;
    let e = match kind {
        DegenerationKind::Nodal(e) => e.clone(),
        _ => ParamScalar::zero(),
    };
    Ok(limit_table_at(s, &e, window)?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommuteReport {
    pub subcase: Subcase,
    pub window: i64,
    pub checked: usize,
    /// Pairs `(n, m)` where the two sides differ.
    pub violations: Vec<(i64, i64)>,
}

impl CommuteReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Compares `[psi* V_n, psi* V_m]` with `psi*` of the limit table entry.
pub fn commutes_with_table(
    table: &StructureTable,
    subcase: Subcase,
    d: &Desingularization,
) -> CommuteReport {
    let mut cache: BTreeMap<i64, P1VectorField> = BTreeMap::new();
    let mut pb = |n: i64| cache.entry(n).or_insert_with(|| d.pullback_basis(n)).clone();
    let mut report = CommuteReport {
        subcase,
        window: table.window(),
        checked: 0,
        violations: Vec::new(),
    };
    for ((n, m), e) in table.entries() {
        if n >= m {
            continue;
        }
        let lhs = crate::p1fn::bracket_p1(&pb(n), &pb(m));
        let mut rhs = P1VectorField::zero();
        for (j, c) in e.iter() {
            rhs = rhs.add(&pb(j).scale(c));
        }
        report.checked += 1;
        if lhs != rhs {
            report.violations.push((n, m));
        }
    }
    report
}

pub fn pullback_commutes_check(
    curve: &CurveSpec,
    kind: &DegenerationKind,
    window: i64,
) -> Result<CommuteReport, DegenError> {
    let s = identify(curve, kind)?;
    let table = limit_structure_table(curve, kind, window)?;
    let d = Desingularization::for_curve(curve, kind)?;
    Ok(commutes_with_table(&table, s, &d))
}

/// Pullbacks of all `V_n` for `|n| <= window` on the subcase's curve.
pub fn pullback_family(subcase: Subcase, e: &ParamScalar, window: i64) -> Vec<(i64, P1VectorField)> {
    let d = Desingularization::new(subcase, e);
    (-window..=window).map(|n| (n, d.pullback_basis(n))).collect()
}

/// Shared handle to the subcase's degenerate curve.
pub fn degenerate_curve(subcase: Subcase, e: &ParamScalar) -> Arc<CurveSpec> {
    subcase.curve_at(e).shared()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kn::{basis_form, basis_vf};

    fn e() -> ParamScalar {
        ParamScalar::e()
    }

    fn quad(c: &ParamScalar, k: i64) -> P1Function {
        P1Function::quadratic_power(c, k)
    }

    #[test]
    fn classification() {
        let r = |k| ParamScalar::from_int(k);
        assert_eq!(classify(&r(1), &r(2), &r(-3)), DegenerationKind::Smooth);
        assert_eq!(
            classify(&e(), &e(), &e().scale(&rat(-2))),
            DegenerationKind::Nodal(e())
        );
        assert_eq!(classify(&r(0), &r(0), &r(0)), DegenerationKind::Cuspidal);
    }

    #[test]
    fn identifies_all_subcases() {
        for s in Subcase::ALL {
            let c = s.curve();
            assert_eq!(identify(&c, &s.kind_at(&e())), Ok(s), "{}", s.name());
        }
    }

    #[test]
    fn fates() {
        let n1 = marking_fate(&Subcase::N1.curve(), &DegenerationKind::Nodal(e())).unwrap();
        assert_eq!((n1.marking_count_before, n1.marking_count_after), (2, 3));
        assert!(n1.singular_hit);
        assert_eq!(n1.p1_markings[0].name(), "roots(t^2-3e)");
        let n5 = marking_fate(&Subcase::N5.curve(), &DegenerationKind::Nodal(e())).unwrap();
        assert_eq!(n5.p1_markings[0].name(), "roots(t^2+3e)");
        assert!(!n5.singular_hit);
        let c3 = marking_fate(&Subcase::CuspThree.curve(), &DegenerationKind::Cuspidal).unwrap();
        assert_eq!((c3.marking_count_before, c3.marking_count_after), (3, 2));
        let bad = CurveSpec::three_point(e(), e(), e().scale(&rat(2)));
        assert!(matches!(
            marking_fate(&bad, &DegenerationKind::Nodal(e())),
            Err(DegenError::InvalidCombination(_))
        ));
    }

    #[test]
    fn parametrization_lies_on_curve() {
        for s in Subcase::ALL {
            let d = Desingularization::new(s, &e());
            let c = s.curve();
            let x = d.x();
            let mut rhs = P1Function::constant(ParamScalar::from_int(4));
            for i in 1..=3 {
                rhs = rhs.mul(&x.sub(&P1Function::constant(c.root(i).clone())));
            }
            assert_eq!(d.y().mul(&d.y()), rhs, "{}", s.name());
        }
    }

    #[test]
    fn cuspidal_pullbacks() {
        let c = Subcase::CuspTwo.curve().shared();
        for n in -6..=6 {
            let v = pullback_cuspidal_vf(&basis_vf(&c, n)).unwrap();
            assert_eq!(v.coeff(), &P1Function::t_power(n + 2));
        }
    }

    #[test]
    fn nodal_pullbacks() {
        let three_e = e().scale(&rat(3));
        let c = Subcase::N1.curve().shared();
        for k in -4..=4 {
            let v0 = pullback_nodal_vf(&basis_vf(&c, 2 * k), &e()).unwrap();
            assert_eq!(v0.coeff(), &quad(&three_e, k + 1));
            let v1 = pullback_nodal_vf(&basis_vf(&c, 2 * k + 1), &e()).unwrap();
            assert_eq!(v1.coeff(), &quad(&three_e, k + 1).shift(1));
        }
        let c2 = Subcase::N2.curve().shared();
        let v = pullback_nodal_vf(&basis_vf(&c2, 2), &e()).unwrap();
        assert_eq!(v.coeff(), &quad(&three_e, 1).shift(2));
        let c5 = Subcase::N5.curve().shared();
        let v = pullback_nodal_vf(&basis_vf(&c5, 2), &e()).unwrap();
        assert_eq!(v.coeff(), &quad(&three_e, 1).mul(&quad(&-&three_e, 1)));
    }

    #[test]
    fn wrong_curve() {
        let c = CurveSpec::symbolic(MarkingCase::TwoPoint).shared();
        assert_eq!(pullback_nodal_vf(&basis_vf(&c, 0), &e()), Err(DegenError::NotOnNodalCurve));
        assert_eq!(pullback_cuspidal_vf(&basis_vf(&c, 0)), Err(DegenError::NotOnCuspidalCurve));
        let n1 = Subcase::N1.curve().shared();
        assert_eq!(
            pullback_vf_laurent(&basis_vf(&n1, -4), &DegenerationKind::Nodal(e())),
            Err(DegenError::NonPolynomialResult)
        );
    }

    #[test]
    fn differentials() {
        let c = Subcase::N1.curve().shared();
        let dz = pullback_form(&basis_form(&c, 0, 1), &DegenerationKind::Nodal(e())).unwrap();
        let three_e = e().scale(&rat(3));
        assert_eq!(dz.coeff(), &quad(&three_e, -1));
        assert_eq!(dz.pole_order_over(&three_e), 1);
        let cc = Subcase::CuspThree.curve().shared();
        let dz = pullback_form(&basis_form(&cc, 0, 1), &DegenerationKind::Cuspidal).unwrap();
        assert_eq!(dz.coeff(), &P1Function::t_power(-2));
        assert_eq!(dz.pole_order_over(&ParamScalar::zero()), 2);
        let f = pullback_form(&basis_form(&cc, 0, 0), &DegenerationKind::Cuspidal).unwrap();
        assert_eq!(f.coeff(), &P1Function::one());
    }

    #[test]
    fn preimage_round_trip() {
        for s in Subcase::ALL {
            let d = Desingularization::new(s, &e());
            for n in -5..=5 {
                let back = d.preimage(&d.pullback_basis(n)).unwrap();
                assert_eq!(back, BasisExpansion::single(n, ParamScalar::one()), "{} {}", s.name(), n);
            }
        }
    }

    #[test]
    fn limit_tables() {
        let cusp = limit_table_at(Subcase::CuspTwo, &e(), 3).unwrap();
        for n in -3..=3 {
            for m in -3..=3 {
                let expected = BasisExpansion::single(n + m + 1, ParamScalar::from_int(m - n));
                assert_eq!(cusp.entry(n, m), Some(&expected));
            }
        }
        let n1 = limit_table_at(Subcase::N1, &e(), 3).unwrap();
        let two = ParamScalar::from_int(2);
        assert_eq!(
            n1.entry(1, 3),
            Some(&BasisExpansion::from_terms([(5, two.clone()), (3, e().scale(&rat(6)))]))
        );
        let n2 = limit_table_at(Subcase::N2, &e(), 3).unwrap();
        assert_eq!(
            n2.entry(1, 0),
            Some(&BasisExpansion::from_terms([
                (2, ParamScalar::from_int(-1)),
                (-2, (&e() * &e()).scale(&rat(9)))
            ]))
        );
    }

    #[test]
    fn commutes() {
        for s in [Subcase::CuspTwo, Subcase::N1, Subcase::N2] {
            let c = s.curve();
            let r = pullback_commutes_check(&c, &s.kind_at(&e()), 3).unwrap();
            assert!(r.passed(), "{} {:?}", s.name(), r.violations);
        }
    }
}
