//! Coordinate ring of the cubic `Y^2 = f(X) = 4(X - e1)(X - e2)(X - e3)`
//! in the normal form `p(u) + Y q(u)` with `u = X - a`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::laurent::Laurent;
use crate::param::{rat, rat_frac, FieldError, ParamScalar, Specialization};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MarkingCase {
    /// Markings `inf` and `(e1, 0)`.
    TwoPoint,
    /// Markings `inf`, `(a, b)` and `(a, -b)`.
    ThreePoint,
}

impl MarkingCase {
    pub fn name(self) -> &'static str {
        match self {
            MarkingCase::TwoPoint => "two",
            MarkingCase::ThreePoint => "three-s",
        }
    }

    pub fn marking_count(self) -> u32 {
        match self {
            MarkingCase::TwoPoint => 2,
            MarkingCase::ThreePoint => 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CurveError {
    #[error("operands live on different curves")]
    CurveMismatch,
    #[error("function is not of the form c * u^k * Y^m")]
    NotMonomialForm,
    #[error("point {0} is not available on this curve")]
    PointUnavailable(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// A member of the cubic family together with its marking.
#[derive(Clone, Debug)]
pub struct CurveSpec {
    case: MarkingCase,
    e1: ParamScalar,
    e2: ParamScalar,
    e3: ParamScalar,
    a: ParamScalar,
    b_squared: ParamScalar,
    /// `f` expanded in `u = X - a`.
    f: Laurent,
}

impl PartialEq for CurveSpec {
    fn eq(&self, other: &Self) -> bool {
        self.case == other.case && self.e1 == other.e1 && self.e2 == other.e2 && self.a == other.a
    }
}

impl Eq for CurveSpec {}

impl CurveSpec {
    fn build(case: MarkingCase, e1: ParamScalar, e2: ParamScalar, a: ParamScalar) -> Self {
        let e3 = -(&e1 + &e2);
        let mut f = Laurent::constant(ParamScalar::from_int(4));
        for ei in [&e1, &e2, &e3] {
            let lin = Laurent::from_coeffs([(1, ParamScalar::one()), (0, &a - ei)]);
            f = &f * &lin;
        }
        let b_squared = (&(&(&a - &e1) * &(&a - &e2)) * &(&a - &e3)).scale(&rat(4));
        CurveSpec {
            case,
            e1,
            e2,
            e3,
            a,
            b_squared,
            f,
        }
    }

    /// Two markings; the Laurent variable is `u = X - e1`.
    pub fn two_point(e1: ParamScalar, e2: ParamScalar) -> Self {
        let a = e1.clone();
        CurveSpec::build(MarkingCase::TwoPoint, e1, e2, a)
    }

    pub fn three_point(e1: ParamScalar, e2: ParamScalar, a: ParamScalar) -> Self {
        CurveSpec::build(MarkingCase::ThreePoint, e1, e2, a)
    }

    /// Fully symbolic member: free `e1`, `e2` and, with three markings, free `a`.
    pub fn symbolic(case: MarkingCase) -> Self {
        match case {
            MarkingCase::TwoPoint => CurveSpec::two_point(ParamScalar::e1(), ParamScalar::e2()),
            MarkingCase::ThreePoint => {
                CurveSpec::three_point(ParamScalar::e1(), ParamScalar::e2(), ParamScalar::a())
            }
        }
    }

    pub fn specialize(&self, s: &Specialization) -> Result<Self, FieldError> {
        let e1 = s.apply(&self.e1)?;
        let e2 = s.apply(&self.e2)?;
        Ok(match self.case {
            MarkingCase::TwoPoint => CurveSpec::two_point(e1, e2),
            MarkingCase::ThreePoint => CurveSpec::three_point(e1, e2, s.apply(&self.a)?),
        })
    }

    pub fn case(&self) -> MarkingCase {
        self.case
    }

    pub fn e1(&self) -> &ParamScalar {
        &self.e1
    }

    pub fn e2(&self) -> &ParamScalar {
        &self.e2
    }

    pub fn e3(&self) -> &ParamScalar {
        &self.e3
    }

    pub fn root(&self, i: u8) -> &ParamScalar {
        match i {
            1 => &self.e1,
            2 => &self.e2,
            _ => &self.e3,
        }
    }

    pub fn a(&self) -> &ParamScalar {
        &self.a
    }

    pub fn b_squared(&self) -> &ParamScalar {
        &self.b_squared
    }

    /// `f(X)` written in `u = X - a`: degree 3, leading coefficient 4,
    /// constant term `b^2`.
    pub fn f_poly(&self) -> &Laurent {
        &self.f
    }

    pub fn shared(self) -> Arc<CurveSpec> {
        Arc::new(self)
    }
}

/// `p(u) + Y q(u)` on a fixed curve.
#[derive(Clone, Debug)]
pub struct CurveFunction {
    curve: Arc<CurveSpec>,
    p: Laurent,
    q: Laurent,
}

impl PartialEq for CurveFunction {
    fn eq(&self, other: &Self) -> bool {
        same_curve(&self.curve, &other.curve) && self.p == other.p && self.q == other.q
    }
}

fn same_curve(a: &Arc<CurveSpec>, b: &Arc<CurveSpec>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl CurveFunction {
    pub fn new(curve: Arc<CurveSpec>, p: Laurent, q: Laurent) -> Self {
        CurveFunction { curve, p, q }
    }

    pub fn zero(curve: Arc<CurveSpec>) -> Self {
        CurveFunction::new(curve, Laurent::zero(), Laurent::zero())
    }

    pub fn constant(curve: Arc<CurveSpec>, c: ParamScalar) -> Self {
        CurveFunction::new(curve, Laurent::constant(c), Laurent::zero())
    }

    /// `u = X - a`.
    pub fn u(curve: Arc<CurveSpec>) -> Self {
        CurveFunction::new(curve, Laurent::var(), Laurent::zero())
    }

    pub fn y(curve: Arc<CurveSpec>) -> Self {
        CurveFunction::new(curve, Laurent::zero(), Laurent::one())
    }

    pub fn curve(&self) -> &Arc<CurveSpec> {
        &self.curve
    }

    pub fn p(&self) -> &Laurent {
        &self.p
    }

    pub fn q(&self) -> &Laurent {
        &self.q
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    fn check(&self, other: &CurveFunction) -> Result<(), CurveError> {
        if same_curve(&self.curve, &other.curve) {
            Ok(())
        } else {
            Err(CurveError::CurveMismatch)
        }
    }

    pub fn add(&self, other: &CurveFunction) -> Result<CurveFunction, CurveError> {
        self.check(other)?;
        Ok(CurveFunction::new(
            self.curve.clone(),
            &self.p + &other.p,
            &self.q + &other.q,
        ))
    }

    pub fn sub(&self, other: &CurveFunction) -> Result<CurveFunction, CurveError> {
        self.check(other)?;
        Ok(CurveFunction::new(
            self.curve.clone(),
            &self.p - &other.p,
            &self.q - &other.q,
        ))
    }

    /// `(p1 + Y q1)(p2 + Y q2) = (p1 p2 + f q1 q2) + Y (p1 q2 + p2 q1)`.
    pub fn mul(&self, other: &CurveFunction) -> Result<CurveFunction, CurveError> {
        self.check(other)?;
        let f = self.curve.f_poly();
        let p = &(&self.p * &other.p) + &(f * &(&self.q * &other.q));
        let q = &(&self.p * &other.q) + &(&other.p * &self.q);
        Ok(CurveFunction::new(self.curve.clone(), p, q))
    }

    pub fn scale(&self, c: &ParamScalar) -> CurveFunction {
        CurveFunction::new(self.curve.clone(), self.p.scale(c), self.q.scale(c))
    }

    pub fn neg(&self) -> CurveFunction {
        CurveFunction::new(self.curve.clone(), -&self.p, -&self.q)
    }

    /// `d/dz = Y d/dX`: `(p, q) -> (f q' + f' q / 2, p')`.
    pub fn derive_dz(&self) -> CurveFunction {
        let f = self.curve.f_poly();
        let half_df = f.derivative().scale(&ParamScalar::from_frac(1, 2));
        let p = &(f * &self.q.derivative()) + &(&half_df * &self.q);
        CurveFunction::new(self.curve.clone(), p, self.p.derivative())
    }

    pub fn specialize_on(
        &self,
        curve: Arc<CurveSpec>,
        s: &Specialization,
    ) -> Result<CurveFunction, FieldError> {
        Ok(CurveFunction::new(curve, self.p.specialize(s)?, self.q.specialize(s)?))
    }

    /// `Some((c, k, m))` when the function is `c u^k Y^m`.
    pub fn as_monomial(&self) -> Option<(&ParamScalar, i64, i64)> {
        match (self.p.as_monomial(), self.q.as_monomial()) {
            (Some((c, k)), None) if self.q.is_zero() => Some((c, k, 0)),
            (None, Some((c, k))) if self.p.is_zero() => Some((c, k, 1)),
            _ => None,
        }
    }
}

impl fmt::Display for CurveFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.p.is_zero(), self.q.is_zero()) {
            (true, true) => f.write_str("0"),
            (false, true) => write!(f, "{}", self.p.render("u")),
            (true, false) => write!(f, "Y*({})", self.q.render("u")),
            (false, false) => write!(f, "{} + Y*({})", self.p.render("u"), self.q.render("u")),
        }
    }
}

/// `A_{2k} = u^k`, `A_{2k+1} = Y u^{k-1} / 2`.
pub fn basis_function(curve: &Arc<CurveSpec>, n: i64) -> CurveFunction {
    if n.rem_euclid(2) == 0 {
        CurveFunction::new(
            curve.clone(),
            Laurent::monomial(ParamScalar::one(), n / 2),
            Laurent::zero(),
        )
    } else {
        let k = (n - 1).div_euclid(2);
        CurveFunction::new(
            curve.clone(),
            Laurent::zero(),
            Laurent::monomial(ParamScalar::from_frac(1, 2), k - 1),
        )
    }
}

/// Finite linear combination of basis elements, keyed by basis index.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BasisExpansion {
    terms: BTreeMap<i64, ParamScalar>,
}

impl BasisExpansion {
    pub fn new() -> Self {
        BasisExpansion::default()
    }

    pub fn single(n: i64, c: ParamScalar) -> Self {
        let mut e = BasisExpansion::new();
        e.add(n, c);
        e
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, ParamScalar)>>(it: I) -> Self {
        let mut e = BasisExpansion::new();
        for (n, c) in it {
            e.add(n, c);
        }
        e
    }

    pub fn add(&mut self, n: i64, c: ParamScalar) {
        if c.is_zero() {
            return;
        }
        let v = self.terms.entry(n).or_default();
        *v = &*v + &c;
        if v.is_zero() {
            self.terms.remove(&n);
        }
    }

    pub fn add_scaled(&mut self, other: &BasisExpansion, c: &ParamScalar) {
        for (n, v) in &other.terms {
            self.add(*n, v * c);
        }
    }

    pub fn get(&self, n: i64) -> ParamScalar {
        self.terms.get(&n).cloned().unwrap_or_default()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &ParamScalar)> {
        self.terms.iter().map(|(n, c)| (*n, c))
    }

    pub fn indices(&self) -> impl Iterator<Item = i64> + '_ {
        self.terms.keys().copied()
    }

    pub fn neg(&self) -> BasisExpansion {
        BasisExpansion {
            terms: self.terms.iter().map(|(n, c)| (*n, -c)).collect(),
        }
    }

    pub fn specialize(&self, s: &Specialization) -> Result<BasisExpansion, FieldError> {
        let mut out = BasisExpansion::new();
        for (n, c) in &self.terms {
            out.add(*n, s.apply(c)?);
        }
        Ok(out)
    }

    /// The function `sum c_n A_n`.
    pub fn to_function(&self, curve: &Arc<CurveSpec>) -> CurveFunction {
        let mut p = Laurent::zero();
        let mut q = Laurent::zero();
        for (n, c) in &self.terms {
            if n.rem_euclid(2) == 0 {
                p.add_term(n / 2, c.clone());
            } else {
                let k = (n - 1).div_euclid(2);
                q.add_term(k - 1, c.scale(&rat_frac(1, 2)));
            }
        }
        CurveFunction::new(curve.clone(), p, q)
    }
}

impl fmt::Display for BasisExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (n, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({})*V[{}]", c, n)?;
        }
        Ok(())
    }
}

/// Coefficients of `u^k` in `p` go to index `2k`; coefficients of `u^(k-1)`
/// in `q` go to index `2k+1`, doubled.
pub fn expand_in_basis(x: &CurveFunction) -> BasisExpansion {
    expansion_from_parts(&x.p, &x.q)
}

/// Expansion of `p(u) + Y q(u)` given its two Laurent parts.
pub fn expansion_from_parts(p: &Laurent, q: &Laurent) -> BasisExpansion {
    let mut out = BasisExpansion::new();
    for (k, c) in p.terms() {
        out.add(2 * k, c.clone());
    }
    for (j, c) in q.terms() {
        out.add(2 * (j + 1) + 1, c.scale(&rat(2)));
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PointId {
    Infinity,
    /// `(e_i, 0)` for `i` in 1..=3.
    TwoTorsion(u8),
    /// `(a, b)`.
    MarkedPlus,
    /// `(a, -b)`.
    MarkedMinus,
    /// A point with X-coordinate `gamma` on the `+` sheet.
    GenericPlus(ParamScalar),
    GenericMinus(ParamScalar),
}

impl PointId {
    pub fn name(&self) -> String {
        match self {
            PointId::Infinity => String::from("inf"),
            PointId::TwoTorsion(i) => format!("E{}", i),
            PointId::MarkedPlus => String::from("P+"),
            PointId::MarkedMinus => String::from("P-"),
            PointId::GenericPlus(g) => format!("({},+)", g),
            PointId::GenericMinus(g) => format!("({},-)", g),
        }
    }
}

/// Order of vanishing of `c u^k Y^m` at a point.
pub fn order_at(x: &CurveFunction, pt: &PointId) -> Result<i64, CurveError> {
    let (_, k, m) = x.as_monomial().ok_or(CurveError::NotMonomialForm)?;
    let curve = x.curve();
    let three_point_marking =
        curve.case() == MarkingCase::ThreePoint && !curve.b_squared().is_zero();
    let order_over = |gamma: &ParamScalar, pt: &PointId| -> Result<i64, CurveError> {
        // u vanishes at X = a only.
        let u_order = if gamma == curve.a() { 1 } else { 0 };
        for i in 1..=3u8 {
            if gamma == curve.root(i) {
                // ramification point: X - e_i has a double zero, Y a simple one
                return Ok(2 * u_order * k + m);
            }
        }
        if u_order == 1 && !three_point_marking {
            return Err(CurveError::PointUnavailable(pt.name()));
        }
        Ok(u_order * k)
    };
    match pt {
        PointId::Infinity => Ok(-2 * k - 3 * m),
        PointId::TwoTorsion(i) if (1..=3).contains(i) => order_over(curve.root(*i), pt),
        PointId::TwoTorsion(_) => Err(CurveError::PointUnavailable(pt.name())),
        PointId::MarkedPlus | PointId::MarkedMinus => {
            if !three_point_marking {
                return Err(CurveError::PointUnavailable(pt.name()));
            }
            Ok(k)
        }
        PointId::GenericPlus(g) | PointId::GenericMinus(g) => order_over(g, pt),
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Divisor {
    orders: BTreeMap<PointId, i64>,
}

impl Divisor {
    pub fn new() -> Self {
        Divisor::default()
    }

    pub fn add(&mut self, pt: PointId, k: i64) {
        if k == 0 {
            return;
        }
        let v = self.orders.entry(pt.clone()).or_insert(0);
        *v += k;
        if *v == 0 {
            self.orders.remove(&pt);
        }
    }

    pub fn order(&self, pt: &PointId) -> i64 {
        self.orders.get(pt).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> i64 {
        self.orders.values().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&PointId, i64)> {
        self.orders.iter().map(|(p, k)| (p, *k))
    }

    pub fn is_empty(&self) -> bool {
        self.orders.is_empty()
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.orders.is_empty() {
            return f.write_str("0");
        }
        for (i, (p, k)) in self.orders.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{}*[{}]", k, p.name())?;
        }
        Ok(())
    }
}

/// Points that can carry nonzero order for a basis element.
pub fn relevant_points(curve: &CurveSpec) -> Vec<PointId> {
    let mut pts = alloc::vec![
        PointId::Infinity,
        PointId::TwoTorsion(1),
        PointId::TwoTorsion(2),
        PointId::TwoTorsion(3),
    ];
    if curve.case() == MarkingCase::ThreePoint && !curve.b_squared().is_zero() {
        pts.push(PointId::MarkedPlus);
        pts.push(PointId::MarkedMinus);
    }
    pts
}

pub fn divisor_of_basis(curve: &Arc<CurveSpec>, n: i64) -> Result<Divisor, CurveError> {
    let a = basis_function(curve, n);
    let mut d = Divisor::new();
    for pt in relevant_points(curve) {
        let k = order_at(&a, &pt)?;
        d.add(pt, k);
    }
    Ok(d)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkingValidation {
    /// `b^2` agrees with `f(a)`.
    pub valid: bool,
    /// `(a - e3)^2 - (e3 - e1)(e3 - e2)`; zero iff `a` is one of the two
    /// 4-torsion abscissae `e3 +- sqrt(e3 - e1) sqrt(e3 - e2)`.
    pub four_torsion_residual: ParamScalar,
}

pub fn validate_marking(curve: &CurveSpec) -> MarkingValidation {
    let valid = curve.f_poly().coeff(0) == *curve.b_squared();
    let e3 = curve.e3();
    let d = curve.a() - e3;
    let residual = &(&d * &d) - &(&(e3 - curve.e1()) * &(e3 - curve.e2()));
    MarkingValidation {
        valid,
        four_torsion_residual: residual,
    }
}
