use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use kndeg_core::curve::MarkingCase;
use kndeg_core::{Rational, Symbol};

#[derive(Debug, Parser)]
#[command(name = "kndeg", version, about = "Krichever-Novikov algebras on cubics and their degenerations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Structure constants `[V_n, V_m]` for `|n|, |m| <= window`.
    Table {
        #[arg(long, value_enum)]
        case: CaseArg,
        #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(i64).range(1..))]
        window: i64,
        /// Comma-separated `name=value` pairs, e.g. `e1=1,e2=2,a=7`.
        #[arg(long)]
        params: Option<Params>,
    },
    /// One bracket, compared with the printed structure equations.
    Bracket {
        #[arg(long, value_enum)]
        case: CaseArg,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
        #[arg(long)]
        params: Option<Params>,
    },
    /// Runs an invariant suite.
    Verify {
        #[arg(long, value_enum)]
        suite: SuiteArg,
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(i64).range(1..))]
        window: i64,
    },
    /// Limit structure table and marking fate of a degeneration.
    Degenerate {
        #[command(flatten)]
        target: Degeneration,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(i64).range(1..))]
        window: i64,
    },
    /// Pullback of `A_n (dz)^lambda` to the projective line.
    Pullback {
        #[command(flatten)]
        target: Degeneration,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        #[arg(long, allow_hyphen_values = true, default_value_t = -1)]
        lambda: i64,
    },
    /// Divisor of the basis function `A_n`.
    Divisor {
        #[arg(long, value_enum)]
        case: CaseArg,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        #[arg(long)]
        params: Option<Params>,
    },
}

#[derive(Debug, clap::Args)]
pub struct Degeneration {
    #[arg(long, value_enum)]
    pub kind: KindArg,
    /// Nodal case 1-5.
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=5))]
    pub subcase: Option<u8>,
    /// Source marking case; for cuspidal degenerations it selects the case.
    #[arg(long, value_enum)]
    pub case: Option<CaseArg>,
    /// `e=<value>` for a numeric node parameter; symbolic otherwise.
    #[arg(long)]
    pub params: Option<Params>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CaseArg {
    Two,
    #[value(name = "three-s")]
    ThreeS,
}

impl From<CaseArg> for MarkingCase {
    fn from(c: CaseArg) -> Self {
        match c {
            CaseArg::Two => MarkingCase::TwoPoint,
            CaseArg::ThreeS => MarkingCase::ThreePoint,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Nodal,
    Cuspidal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    /// Structure tables against the closed-form bracket equations.
    Prop4,
    Jacobi,
    /// Almost-grading offsets in [d-3, d+1].
    Grading,
    /// Divisors of the basis functions.
    Prop2,
    Degeneration,
    /// The maps to the algebras on the projective line.
    Phi,
    /// The closure table of the fifth nodal subcase.
    Case5,
    All,
}

/// Parsed `--params`, in the order given.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Params(pub Vec<(Symbol, Rational)>);

impl FromStr for Params {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let mut out: Vec<(Symbol, Rational)> = Vec::new();
        for item in s.split(',').filter(|x| !x.trim().is_empty()) {
            let (name, value) = item
                .split_once('=')
                .ok_or_else(|| format!("expected name=value, got `{item}`"))?;
            let sym = Symbol::from_name(name.trim()).ok_or_else(|| format!("unknown parameter `{}`", name.trim()))?;
            let v = Rational::from_str(value.trim()).map_err(|_| format!("`{}` is not a rational number", value.trim()))?;
            if out.iter().any(|(s, _)| *s == sym) {
                return Err(format!("parameter `{}` given twice", sym.name()));
            }
            out.push((sym, v));
        }
        Ok(Params(out))
    }
}
