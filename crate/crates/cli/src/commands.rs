use std::sync::Arc;

use serde_json::{json, Value};

use kndeg_core::curve::{divisor_of_basis, CurveSpec, MarkingCase};
use kndeg_core::degen::{limit_table_at, marking_fate_of, Desingularization, Subcase};
use kndeg_core::kn::{basis_form, bracket_expansion, expected_bracket, structure_table, StructureTable};
use kndeg_core::p1::case5_closure;
use kndeg_core::printed::{limit_findings, printed_divisor, printed_form_pullback, Finding};
use kndeg_core::{ParamScalar, Specialization, Symbol};

use crate::args::{CaseArg, Cli, Command, Degeneration, Format, KindArg, Params};
use crate::render::{
    csv_string, divisor_json, expansion_json, fate_json, findings_json, params_json, pretty, table_csv, table_json,
    table_text,
};
use crate::suites::{self, SuiteReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
        }
    }

    fn from_ok(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

/// Rendered report plus the lines destined for standard error.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub body: String,
    pub status: Status,
    pub findings: Vec<Finding>,
}

#[derive(Debug, PartialEq, Eq)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage<T>(msg: impl Into<String>) -> Result<T, UsageError> {
    Err(UsageError(msg.into()))
}

/// Specialized curve for `--case` and `--params`; `a` is only meaningful
/// with three markings and `e` never is.
fn curve_for(case: CaseArg, params: Option<&Params>) -> Result<Arc<CurveSpec>, UsageError> {
    let case = MarkingCase::from(case);
    let mut s = Specialization::new();
    for (sym, v) in params.map(|p| p.0.as_slice()).unwrap_or_default() {
        match sym {
            Symbol::E => return usage("parameter `e` only applies to degenerate, pullback"),
            Symbol::A if case == MarkingCase::TwoPoint => {
                return usage("parameter `a` needs --case three-s (with two markings a = e1)")
            }
            _ => s.set(*sym, ParamScalar::from_rational(v.clone())),
        }
    }
    let c = CurveSpec::symbolic(case)
        .specialize(&s)
        .map_err(|e| UsageError(e.to_string()))?;
    Ok(c.shared())
}

fn node_parameter(target: &Degeneration, subcase: Subcase) -> Result<ParamScalar, UsageError> {
    let mut e = ParamScalar::e();
    for (sym, v) in target.params.as_ref().map(|p| p.0.as_slice()).unwrap_or_default() {
        if *sym != Symbol::E {
            return usage(format!("degenerations take only `e=...`, not `{}`", sym.name()));
        }
        if subcase.is_cuspidal() {
            return usage("the cuspidal degeneration has no parameter e");
        }
        e = ParamScalar::from_rational(v.clone());
        if e.is_zero() {
            return usage("e = 0 is the cusp; use --kind cuspidal");
        }
    }
    Ok(e)
}

pub fn subcase_for(target: &Degeneration) -> Result<Subcase, UsageError> {
    let s = match (target.kind, target.subcase) {
        (KindArg::Cuspidal, Some(_)) => return usage("--subcase applies to nodal degenerations only"),
        (KindArg::Cuspidal, None) => match target.case.unwrap_or(CaseArg::Two) {
            CaseArg::Two => Subcase::CuspTwo,
            CaseArg::ThreeS => Subcase::CuspThree,
        },
        (KindArg::Nodal, None) => return usage("--kind nodal needs --subcase 1..5"),
        (KindArg::Nodal, Some(k)) => match k {
            1 => Subcase::N1,
            2 => Subcase::N2,
            3 => Subcase::N3,
            4 => Subcase::N4,
            5 => Subcase::N5,
            _ => return usage("--subcase must be 1..5"),
        },
    };
    if let Some(c) = target.case {
        if MarkingCase::from(c) != s.source_case() {
            return usage(format!(
                "{} starts from the {} case, not {}",
                s.name(),
                s.source_case().name(),
                MarkingCase::from(c).name()
            ));
        }
    }
    Ok(s)
}

fn render_table(t: &StructureTable, format: Format) -> String {
    match format {
        Format::Json => pretty(&table_json(t)),
        Format::Csv => table_csv(t),
        Format::Text => table_text(t),
    }
}

pub fn run(cli: &Cli) -> Result<Output, UsageError> {
    let f = cli.format;
    match &cli.command {
        Command::Table { case, window, params } => {
            let c = curve_for(*case, params.as_ref())?;
            let t = structure_table(&c, *window);
            Ok(Output {
                body: render_table(&t, f),
                status: Status::Pass,
                findings: Vec::new(),
            })
        }
        Command::Bracket { case, n, m, params } => bracket(*case, *n, *m, params.as_ref(), f),
        Command::Verify { suite, window } => {
            let reports = suites::run(*suite, *window);
            Ok(verify_output(suites::suite_name(*suite), *window, &reports, f))
        }
        Command::Degenerate { target, window } => degenerate(target, *window, f),
        Command::Pullback { target, n, lambda } => pullback(target, *n, *lambda, f),
        Command::Divisor { case, n, params } => divisor(*case, *n, params.as_ref(), f),
    }
}

fn bracket(case: CaseArg, n: i64, m: i64, params: Option<&Params>, f: Format) -> Result<Output, UsageError> {
    let c = curve_for(case, params)?;
    let engine = bracket_expansion(&c, n, m);
    let printed = expected_bracket(&c, n, m);
    let matched = engine == printed;
    let findings = if matched {
        Vec::new()
    } else {
        vec![Finding {
            location: format!("{} [V{n}, V{m}]", c.case().name()),
            engine: engine.to_string(),
            printed: printed.to_string(),
        }]
    };
    let body = match f {
        Format::Json => pretty(&json!({
            "case": c.case().name(),
            "n": n,
            "m": m,
            "params": params_json(&kndeg_core::kn::curve_params(&c)),
            "engine": expansion_json(&engine),
            "printed": expansion_json(&printed),
            "match": matched,
        })),
        Format::Csv => csv_string(
            &["source", "index", "coeff"],
            engine
                .iter()
                .map(|(j, x)| vec![String::from("engine"), j.to_string(), x.to_string()])
                .chain(printed.iter().map(|(j, x)| vec![String::from("printed"), j.to_string(), x.to_string()])),
        ),
        Format::Text => format!("[V[{n}], V[{m}]] = {engine}\nprinted: {printed}\nmatch: {matched}\n"),
    };
    Ok(Output {
        body,
        status: Status::from_ok(matched),
        findings,
    })
}

fn suite_json(r: &SuiteReport) -> Value {
    json!({
        "suite": r.suite,
        "window": r.window,
        "status": Status::from_ok(r.passed()).name(),
        "checks": r.checks.iter().map(|c| json!({"name": c.name, "passed": c.passed, "detail": c.detail})).collect::<Vec<_>>(),
        "findings": findings_json(&r.findings),
        "maps": r.maps.iter().map(|m| json!({
            "map": m.map,
            "table": m.table,
            "window": m.window,
            "violations": m.violations.iter().map(|(n, k)| json!([n, k])).collect::<Vec<_>>(),
            "witness": {"a": m.witness.a, "k": m.witness.k, "l": m.witness.l},
        })).collect::<Vec<_>>(),
    })
}

pub fn verify_output(suite: &str, window: i64, reports: &[SuiteReport], f: Format) -> Output {
    let status = Status::from_ok(reports.iter().all(SuiteReport::passed));
    let body = match f {
        Format::Json => pretty(&json!({
            "suite": suite,
            "window": window,
            "status": status.name(),
            "suites": reports.iter().map(suite_json).collect::<Vec<_>>(),
        })),
        Format::Csv => csv_string(
            &["suite", "check", "passed", "detail"],
            reports.iter().flat_map(|r| {
                r.checks
                    .iter()
                    .map(|c| vec![String::from(r.suite), c.name.clone(), c.passed.to_string(), c.detail.clone()])
            }),
        ),
        Format::Text => {
            let mut s = String::new();
            for r in reports {
                for c in &r.checks {
                    let mark = if c.passed { "pass" } else { "FAIL" };
                    s.push_str(&format!("{mark} {}: {} ({})\n", r.suite, c.name, c.detail));
                }
                for m in &r.maps {
                    s.push_str(&format!(
                        "witness {} on {}: a={}, k={}, l={}\n",
                        m.map, m.table, m.witness.a, m.witness.k, m.witness.l
                    ));
                }
            }
            s.push_str(&format!("{}\n", status.name()));
            s
        }
    };
    Output {
        body,
        status,
        findings: reports.iter().flat_map(|r| r.findings.iter().cloned()).collect(),
    }
}

fn degenerate(target: &Degeneration, window: i64, f: Format) -> Result<Output, UsageError> {
    let s = subcase_for(target)?;
    let e = node_parameter(target, s)?;
    let table = limit_table_at(s, &e, window).map_err(|err| UsageError(err.to_string()))?;
    let mut findings = limit_findings(&table, s, &e);
    if s == Subcase::N5 {
        // no printed table; the closure on the line must reproduce the limit
        match case5_closure(&e, window) {
            Ok(c) => {
                for ((n, m), x) in c.entries() {
                    if table.entry(n, m) != Some(x) {
                        findings.push(Finding {
                            location: format!("N5 closure [V{n}, V{m}]"),
                            engine: table.entry(n, m).map(|y| y.to_string()).unwrap_or_default(),
                            printed: x.to_string(),
                        });
                    }
                }
            }
            Err(err) => findings.push(Finding {
                location: String::from("N5 closure"),
                engine: err.to_string(),
                printed: String::from("closed table"),
            }),
        }
    }
    let fate = marking_fate_of(s, &e);
    let body = match f {
        Format::Json => pretty(&json!({
            "subcase": s.name(),
            "e": e.to_string(),
            "table": table_json(&table),
            "marking_fate": fate_json(&fate),
            "findings": findings_json(&findings),
        })),
        Format::Csv => table_csv(&table),
        Format::Text => {
            let marks: Vec<String> = fate.p1_markings.iter().map(|m| m.name()).collect();
            format!(
                "{}markings {} -> {} ({})\n",
                table_text(&table),
                fate.marking_count_before,
                fate.marking_count_after,
                marks.join(", ")
            )
        }
    };
    Ok(Output {
        body,
        status: Status::from_ok(findings.is_empty()),
        findings,
    })
}

fn pullback(target: &Degeneration, n: i64, lambda: i64, f: Format) -> Result<Output, UsageError> {
    let s = subcase_for(target)?;
    let e = node_parameter(target, s)?;
    let curve = s.curve_at(&e).shared();
    let engine = Desingularization::new(s, &e).pullback_form(&basis_form(&curve, n, lambda));
    let printed = printed_form_pullback(s, &e, n, lambda);
    let matched = engine == printed;
    let three_e = e.scale(&kndeg_core::rat(3));
    let mut poles = Vec::new();
    for (label, c) in [
        (String::from("t=0"), ParamScalar::zero()),
        (format!("roots(t^2 - {})", three_e), three_e.clone()),
        (format!("roots(t^2 - {})", -&three_e), -&three_e),
    ] {
        if c.is_zero() && label != "t=0" {
            continue;
        }
        let k = engine.pole_order_over(&c);
        if k > 0 {
            poles.push((label, k));
        }
    }
    let findings = if matched {
        Vec::new()
    } else {
        vec![Finding {
            location: format!("{} pullback A{n} (dz)^{lambda}", s.name()),
            engine: engine.render(),
            printed: printed.render(),
        }]
    };
    let body = match f {
        Format::Json => pretty(&json!({
            "subcase": s.name(),
            "e": e.to_string(),
            "n": n,
            "lambda": lambda,
            "engine": engine.render(),
            "printed": printed.render(),
            "match": matched,
            "poles": poles.iter().map(|(p, k)| json!({"over": p, "order": k})).collect::<Vec<_>>(),
        })),
        Format::Csv => csv_string(
            &["field", "value"],
            [
                vec![String::from("engine"), engine.render()],
                vec![String::from("printed"), printed.render()],
                vec![String::from("match"), matched.to_string()],
            ],
        ),
        Format::Text => format!("{}\nprinted: {}\nmatch: {matched}\n", engine.render(), printed.render()),
    };
    Ok(Output {
        body,
        status: Status::from_ok(matched),
        findings,
    })
}

fn divisor(case: CaseArg, n: i64, params: Option<&Params>, f: Format) -> Result<Output, UsageError> {
    let c = curve_for(case, params)?;
    let d = divisor_of_basis(&c, n).map_err(|e| UsageError(e.to_string()))?;
    let printed = printed_divisor(c.case(), n);
    let degree_zero = d.degree() == 0;
    let matched = d == printed;
    let mut findings = Vec::new();
    if !degree_zero || !matched {
        findings.push(Finding {
            location: format!("{} A{n}", c.case().name()),
            engine: format!("{d} (degree {})", d.degree()),
            printed: printed.to_string(),
        });
    }
    let body = match f {
        Format::Json => pretty(&json!({
            "case": c.case().name(),
            "n": n,
            "params": params_json(&kndeg_core::kn::curve_params(&c)),
            "divisor": divisor_json(&d),
            "text": d.to_string(),
            "degree": d.degree(),
            "degree_zero": degree_zero,
            "printed": printed.to_string(),
            "match": matched,
        })),
        Format::Csv => csv_string(&["point", "order"], d.iter().map(|(p, k)| vec![p.name(), k.to_string()])),
        Format::Text => format!("{d}\ndegree {}\n", d.degree()),
    };
    Ok(Output {
        body,
        status: Status::from_ok(findings.is_empty()),
        findings,
    })
}
