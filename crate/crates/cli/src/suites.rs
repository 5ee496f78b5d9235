//! The invariant suites behind `verify`.
//!
//! Each suite returns named checks plus structured findings. A finding is
//! either a broken invariant or a disagreement with a printed formula; the
//! suite fails if any check fails.

use std::sync::Arc;

use kndeg_core::curve::{CurveSpec, MarkingCase};
use kndeg_core::degen::{
    commutes_with_table, limit_table_at, marking_fate_of, Desingularization, Subcase,
};
use kndeg_core::kn::{almost_grading_check, basis_form, bracket_expansion, expected_bracket, structure_table, StructureTable};
use kndeg_core::oracle::{case5_generator_jet, curve_table_mismatches, line_table_mismatches};
use kndeg_core::p1::{
    case5_bracket, case5_closure, grading_respect_witness, m_identity_violations, phi_apply, table_jacobi_violations,
    verify_homomorphism, w_closure_violations, z_divisor_check, z_structure_check, AlphaSquared, GradingWitness, PhiMap,
    ZKind,
};
use kndeg_core::p1fn::{P1Form, P1Function};
use kndeg_core::printed::{divisor_findings, limit_findings, pullback_findings, structure_findings, Finding};
use kndeg_core::{rat, rat_frac, ParamScalar, Specialization};

use crate::args::SuiteArg;
use crate::sampling::{oracle_samples, DEFAULT_SEED};

/// Random rational samples per marking case for the numeric oracle.
pub const ORACLE_SAMPLES: usize = 10;
/// Index range of the grading witnesses.
pub const WITNESS_RANGE: i64 = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapReport {
    pub map: &'static str,
    pub table: String,
    pub window: i64,
    pub violations: Vec<(i64, i64)>,
    pub witness: GradingWitness,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: &'static str,
    pub window: i64,
    pub checks: Vec<Check>,
    pub findings: Vec<Finding>,
    pub maps: Vec<MapReport>,
}

impl SuiteReport {
    fn new(suite: &'static str, window: i64) -> Self {
        SuiteReport {
            suite,
            window,
            checks: Vec::new(),
            findings: Vec::new(),
            maps: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// Records a check whose failures are the given findings.
    fn check_findings(&mut self, name: impl Into<String>, findings: Vec<Finding>) {
        let detail = if findings.is_empty() {
            String::from("ok")
        } else {
            format!("{} finding(s)", findings.len())
        };
        self.checks.push(Check {
            name: name.into(),
            passed: findings.is_empty(),
            detail,
        });
        self.findings.extend(findings);
    }

    fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        let name = name.into();
        let detail = detail.into();
        if !passed {
            self.findings.push(Finding {
                location: name.clone(),
                engine: detail.clone(),
                printed: String::from("expected to hold"),
            });
        }
        self.checks.push(Check { name, passed, detail });
    }
}

pub fn suite_name(s: SuiteArg) -> &'static str {
    match s {
        SuiteArg::Prop4 => "prop4",
        SuiteArg::Jacobi => "jacobi",
        SuiteArg::Grading => "grading",
        SuiteArg::Prop2 => "prop2",
        SuiteArg::Degeneration => "degeneration",
        SuiteArg::Phi => "phi",
        SuiteArg::Case5 => "case5",
        SuiteArg::All => "all",
    }
}

pub fn run(suite: SuiteArg, window: i64) -> Vec<SuiteReport> {
    match suite {
        SuiteArg::Prop4 => vec![prop4(window)],
        SuiteArg::Jacobi => vec![jacobi(window)],
        SuiteArg::Grading => vec![grading(window)],
        SuiteArg::Prop2 => vec![prop2(window)],
        SuiteArg::Degeneration => vec![degeneration(window)],
        SuiteArg::Phi => vec![phi(window)],
        SuiteArg::Case5 => vec![case5(window)],
        SuiteArg::All => vec![
            prop4(window),
            jacobi(window),
            grading(window),
            prop2(window),
            degeneration(window),
            phi(window),
            case5(window),
        ],
    }
}

fn symbolic(case: MarkingCase) -> Arc<CurveSpec> {
    CurveSpec::symbolic(case).shared()
}

const CASES: [MarkingCase; 2] = [MarkingCase::TwoPoint, MarkingCase::ThreePoint];

fn triple_findings(label: &str, v: Vec<(i64, i64, i64)>) -> Vec<Finding> {
    v.into_iter()
        .map(|(n, m, p)| Finding {
            location: format!("{label} ({n}, {m}, {p})"),
            engine: String::from("nonzero Jacobi residual"),
            printed: String::from("0"),
        })
        .collect()
}

fn pair_findings(label: &str, v: &[(i64, i64)], what: &str) -> Vec<Finding> {
    v.iter()
        .map(|(n, m)| Finding {
            location: format!("{label} [V{n}, V{m}]"),
            engine: String::from(what),
            printed: String::from("equality"),
        })
        .collect()
}

/// Mismatches of a curve table against the numeric oracle at seeded samples.
pub fn oracle_findings(table: &StructureTable, case: MarkingCase, count: usize, seed: u64) -> Vec<Finding> {
    let mut out = Vec::new();
    for (i, s) in oracle_samples(case, count, seed).iter().enumerate() {
        let at = format!("e1={}, e2={}, a={}, u0={}", s.e1, s.e2, s.a, s.u0);
        for (n, m) in curve_table_mismatches(table, s) {
            out.push(Finding {
                location: format!("{} oracle sample {i} ({at}) [V{n}, V{m}]", case.name()),
                engine: table.entry(n, m).map(|e| e.to_string()).unwrap_or_default(),
                printed: String::from("numeric bracket at the sample"),
            });
        }
    }
    out
}

pub fn prop4(window: i64) -> SuiteReport {
    let mut r = SuiteReport::new("prop4", window);
    for case in CASES {
        let c = symbolic(case);
        let t = structure_table(&c, window);
        r.check_findings(format!("{} table equals printed structure equations", case.name()), structure_findings(&t, &c));
        r.check(format!("{} antisymmetry", case.name()), t.is_antisymmetric(), "entry(m, n) = -entry(n, m)");
        r.check_findings(
            format!("{} numeric oracle ({ORACLE_SAMPLES} samples)", case.name()),
            oracle_findings(&t, case, ORACLE_SAMPLES, DEFAULT_SEED),
        );
    }
    r
}

pub fn jacobi(window: i64) -> SuiteReport {
    let mut r = SuiteReport::new("jacobi", window);
    for case in CASES {
        let c = symbolic(case);
        let t = structure_table(&c, window);
        let v = table_jacobi_violations(&t, window, |n, m| bracket_expansion(&c, n, m));
        r.check_findings(format!("{} Jacobi on [-{window}, {window}]^3", case.name()), triple_findings(case.name(), v));
    }
    r
}

pub fn grading(window: i64) -> SuiteReport {
    let mut r = SuiteReport::new("grading", window);
    for case in CASES {
        let t = structure_table(&symbolic(case), window);
        let g = almost_grading_check(&t);
        let detail = format!(
            "offsets in [{}, {}], {} outside [-3, 1]",
            g.min_offset.unwrap_or(0),
            g.max_offset.unwrap_or(0),
            g.violations.len()
        );
        r.check(format!("{} almost-grading [d-3, d+1]", case.name()), g.violations.is_empty(), detail);
    }
    r
}

pub fn prop2(window: i64) -> SuiteReport {
    let mut r = SuiteReport::new("prop2", window);
    for case in CASES {
        r.check_findings(
            format!("{} divisors on [-{window}, {window}], degree 0", case.name()),
            divisor_findings(&symbolic(case), window),
        );
    }
    r
}

/// Before/after marking counts of the degeneration table.
pub fn printed_marking_counts(s: Subcase) -> (u32, u32) {
    match s {
        Subcase::CuspTwo | Subcase::N2 => (2, 2),
        Subcase::N1 => (2, 3),
        Subcase::CuspThree => (3, 2),
        Subcase::N3 | Subcase::N4 | Subcase::N5 => (3, 3),
    }
}

/// `Y(t)^2 = 4 (X(t) - e1)(X(t) - e2)(X(t) - e3)` identically.
pub fn parametrization_on_curve(s: Subcase, e: &ParamScalar) -> bool {
    let d = Desingularization::new(s, e);
    let c = s.curve_at(e);
    let mut rhs = P1Function::constant(ParamScalar::from_int(4));
    for root in [c.e1(), c.e2(), c.e3()] {
        rhs = rhs.mul(&d.x().sub(&P1Function::constant(root.clone())));
    }
    d.y().mul(&d.y()) == rhs
}

/// Pullback of `dz`: `dt/(t^2 - 3e)` with simple poles over the node, or
/// `dt/t^2` with a double pole at `t = 0` over the cusp.
pub fn rosenlicht_ok(s: Subcase, e: &ParamScalar) -> (bool, String) {
    let c = s.curve_at(e).shared();
    let w = Desingularization::new(s, e).pullback_form(&basis_form(&c, 0, 1));
    if s.is_cuspidal() {
        let ok = w == P1Form::new(1, P1Function::t_power(-2)) && w.pole_order_over(&ParamScalar::zero()) == 2;
        (ok, w.render())
    } else {
        let three_e = e.scale(&rat(3));
        let ok = w == P1Form::new(1, P1Function::quadratic_power(&three_e, -1))
            && w.pole_order_over(&three_e) == 1
            && w.pole_order_over(&ParamScalar::zero()) == 0;
        (ok, w.render())
    }
}

pub fn degeneration(window: i64) -> SuiteReport {
    let mut r = SuiteReport::new("degeneration", window);
    let e = ParamScalar::e();
    for s in Subcase::ALL {
        let name = s.name();
        let t = match limit_table_at(s, &e, window) {
            Ok(t) => t,
            Err(err) => {
                r.check(format!("{name} limit table"), false, err.to_string());
                continue;
            }
        };
        if s != Subcase::N5 {
            r.check_findings(format!("{name} limit table equals printed"), limit_findings(&t, s, &e));
        }
        r.check_findings(format!("{name} pullbacks equal printed generators"), pullback_findings(s, &e, 6.max(window)));
        let d = Desingularization::new(s, &e);
        let cr = commutes_with_table(&t, s, &d);
        r.check_findings(
            format!("{name} pullback commutes with brackets ({} pairs)", cr.checked),
            pair_findings(name, &cr.violations, "bracket of pullbacks differs"),
        );
        let fate = marking_fate_of(s, &e);
        let (before, after) = printed_marking_counts(s);
        r.check(
            format!("{name} marking count"),
            (fate.marking_count_before, fate.marking_count_after) == (before, after),
            format!("{} -> {}", fate.marking_count_before, fate.marking_count_after),
        );
        r.check(format!("{name} parametrization lies on the curve"), parametrization_on_curve(s, &e), "Y^2 - f(X) = 0");
        let (ok, w) = rosenlicht_ok(s, &e);
        r.check(format!("{name} pullback of dz"), ok, w);
    }
    // the printed N2 table is the two-marking table at e1 = -2e, e2 = e3 = e
    let n2 = Subcase::N2.curve();
    let t = limit_table_at(Subcase::N2, &e, window).expect("no poles");
    let mismatches: Vec<Finding> = t
        .entries()
        .filter(|((n, m), x)| **x != expected_bracket(&n2, *n, *m))
        .map(|((n, m), x)| Finding {
            location: format!("N2 specialization [V{n}, V{m}]"),
            engine: x.to_string(),
            printed: expected_bracket(&n2, n, m).to_string(),
        })
        .collect();
    r.check_findings("N2 limit table equals specialized two-marking equations", mismatches);
    for (s, v) in [(Subcase::N1, 3), (Subcase::N5, -3), (Subcase::N3, 3)] {
        let ev = ParamScalar::from_int(v);
        let t = limit_table_at(s, &ev, window).expect("no poles");
        let cr = commutes_with_table(&t, s, &Desingularization::new(s, &ev));
        r.check_findings(
            format!("{} at e = {v}: pullback commutes with brackets", s.name()),
            pair_findings(s.name(), &cr.violations, "bracket of pullbacks differs"),
        );
    }
    r
}

/// Every standard map with the limit tables it accepts; the case-(5) map
/// is checked against its own closure table.
pub fn phi_reports(window: i64) -> Vec<MapReport> {
    let e = ParamScalar::e();
    let mut out = Vec::new();
    for phi in PhiMap::standard() {
        let witness = grading_respect_witness(&phi, phi.grading_source(), WITNESS_RANGE);
        let tables: Vec<StructureTable> = match phi {
            PhiMap::Case5(_) => vec![case5_closure(&e, window).expect("closure")],
            _ => Subcase::ALL
                .into_iter()
                .filter(|s| phi.accepts(*s))
                .map(|s| limit_table_at(s, &e, window).expect("no poles"))
                .collect(),
        };
        for t in tables {
            let rep = verify_homomorphism(&phi, &t, window).expect("compatible");
            out.push(MapReport {
                map: phi.name(),
                table: t.origin().name(),
                window,
                violations: rep.violations,
                witness: witness.clone(),
            });
        }
    }
    out
}

pub fn phi(window: i64) -> SuiteReport {
    let mut r = SuiteReport::new("phi", window);
    for m in phi_reports(window) {
        let label = format!("{} on {}", m.map, m.table);
        r.check_findings(format!("{label} homomorphism"), pair_findings(&label, &m.violations, "image bracket differs"));
        let w = &m.witness;
        r.check(
            format!("{label} grading witness"),
            w.a == 1 && w.k <= 3 && w.l <= 3,
            format!("a={}, k={}, l={} over [-{WITNESS_RANGE}, {WITNESS_RANGE}]", w.a, w.k, w.l),
        );
        r.maps.push(m);
    }
    // α^2 is kept free, represented by the symbol e
    let k2 = AlphaSquared::multiple_of_e(1);
    let z = z_structure_check(&k2, window);
    let zf = z
        .violations
        .iter()
        .map(|(x, y, n, m)| Finding {
            location: format!("[{}{n}, {}{m}]", x.name(), y.name()),
            engine: String::from("bracket differs"),
            printed: String::from("printed Z bracket"),
        })
        .collect();
    r.check_findings(format!("Z brackets ({} checked)", z.checked), zf);
    let mut df = Vec::new();
    for n in -window..=window {
        for kind in [ZKind::H, ZKind::G] {
            let rep = z_divisor_check(&k2, kind, n);
            if !rep.matches_printed {
                df.push(Finding {
                    location: format!("divisor of {}{n}", kind.name()),
                    engine: format!("{:?} (degree {})", rep.divisor, rep.divisor.degree()),
                    printed: String::from("printed divisor of degree 2"),
                });
            }
        }
    }
    r.check_findings("Z divisors", df);
    let mi: Vec<Finding> = m_identity_violations(&k2, window)
        .into_iter()
        .map(|n| Finding {
            location: format!("M{n}"),
            engine: String::from("Witt expansion differs"),
            printed: String::from("printed Witt expansion"),
        })
        .collect();
    r.check_findings("M in terms of L", mi);
    let wc = w_closure_violations(&k2, window);
    r.check_findings("W closed under brackets", pair_findings("W", &wc, "not in the span of M"));
    r
}

pub fn case5(window: i64) -> SuiteReport {
    let mut r = SuiteReport::new("case5", window);
    let e = ParamScalar::e();
    let t = match case5_closure(&e, window) {
        Ok(t) => t,
        Err(err) => {
            r.check("closure", false, err.to_string());
            return r;
        }
    };
    r.check("closure", true, format!("{} entries", t.entries().count()));
    r.check("antisymmetry", t.is_antisymmetric(), "entry(m, n) = -entry(n, m)");
    let range = window.min(3);
    let v = table_jacobi_violations(&t, range, |n, m| case5_bracket(&e, n, m).expect("closure"));
    r.check_findings(format!("Jacobi on [-{range}, {range}]^3"), triple_findings("case5", v));
    let n5 = Desingularization::new(Subcase::N5, &e);
    let phi = PhiMap::Case5(AlphaSquared::multiple_of_e(-3));
    let same = (-window..=window).all(|n| phi_apply(&phi, n) == n5.pullback_basis(n));
    r.check("generators are the N5 pullbacks", same, "g_n = psi*(V_n)");
    let limit = limit_table_at(Subcase::N5, &e, window).expect("no poles");
    let diff: Vec<(i64, i64)> = t
        .entries()
        .filter(|((n, m), x)| limit.entry(*n, *m) != Some(x))
        .map(|(k, _)| k)
        .collect();
    r.check_findings("closure equals N5 limit table", pair_findings("case5", &diff, "differs from limit"));

    let ev = ParamScalar::from_int(-3);
    let tn = case5_closure(&ev, window).expect("closure");
    let spec = Specialization::new().with(kndeg_core::Symbol::E, ev.clone());
    let specialized = t
        .specialize(tn.origin().clone(), tn.params().to_vec(), &spec)
        .expect("no poles");
    r.check("closure at e = -3 equals specialized closure", specialized == tn, "entrywise");
    let vn = table_jacobi_violations(&tn, range, |n, m| case5_bracket(&ev, n, m).expect("closure"));
    r.check_findings(format!("Jacobi at e = -3 on [-{range}, {range}]^3"), triple_findings("case5 e=-3", vn));
    let mut of = Vec::new();
    for t0 in [rat_frac(1, 2), rat_frac(5, 7), rat_frac(-4, 3), rat_frac(7, 2), rat(5)] {
        let field_e = rat(-3);
        let mism = line_table_mismatches(&tn, &Specialization::new(), |n| case5_generator_jet(&field_e, n, &t0));
        for (n, m) in mism {
            of.push(Finding {
                location: format!("case5 oracle t0={t0} [V{n}, V{m}]"),
                engine: tn.entry(n, m).map(|x| x.to_string()).unwrap_or_default(),
                printed: String::from("numeric bracket of the generators"),
            });
        }
    }
    r.check_findings("numeric oracle at e = -3 (5 points)", of);
    r
}
