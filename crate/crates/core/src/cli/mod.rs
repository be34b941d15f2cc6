//! The `lcscoh` command line: argument parsing, dispatch and exit codes.

mod report;
mod suite;

use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

pub use report::{
    emit, Agreement, CheckOutcome, CohomologyRow, Command, ExtensionsRow, JobSpec, Member, MethodChoice, OutputFormat,
    Report, Representative, ResultRow, RouteValue, VerifyRow,
};
pub use suite::verify_suite;

use crate::abelian::FinAbGroup;
use crate::cycleset::CyclicFamilyParams;
use crate::error::{Error, Result};
use crate::extensions::{enumerate_extension_classes, EnumerationMethod};
use crate::lcs_cohomology::{closed_cohomology, cohomology, Method};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_DISAGREEMENT: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "lcscoh", version, about = "Cohomology and central extensions of cyclic linear cycle sets")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Sub,
}

#[derive(Debug, Subcommand)]
pub enum Sub {
    /// H^1 or H^2 of one family member.
    Cohomology {
        #[command(flatten)]
        member: MemberArgs,
        #[arg(long, default_value_t = 2)]
        degree: usize,
        #[arg(long, value_enum, default_value_t = MethodChoice::All)]
        method: MethodChoice,
        /// Include representative cocycles (full and reduced routes).
        #[arg(long)]
        representatives: bool,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Central extensions of one family member by the coefficient group.
    Extensions {
        #[command(flatten)]
        member: MemberArgs,
        /// List every class with a canonical representative.
        #[arg(long)]
        enumerate: bool,
        #[arg(long, default_value = "theorem")]
        method: EnumerationMethod,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Structural checks on one family member, with seeded random sampling.
    Verify {
        #[command(flatten)]
        member: MemberArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Cohomology of every family member with `v <= max_v`.
    Table {
        #[arg(long, default_value_t = 9)]
        max_v: u64,
        /// Both degrees when omitted.
        #[arg(long)]
        degree: Option<usize>,
        #[arg(long, value_enum, default_value_t = MethodChoice::Closed)]
        method: MethodChoice,
        #[command(flatten)]
        common: CommonArgs,
    },
}

#[derive(Debug, Args)]
pub struct MemberArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long)]
    pub nu: u32,
    #[arg(long)]
    pub eta: u32,
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Cyclic orders of the coefficient group, comma separated; 0 stands for Z.
    #[arg(long)]
    pub coeff: String,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    pub output: OutputFormat,
    /// Add wall-clock time to the report (breaks byte-identical output).
    #[arg(long)]
    pub timing: bool,
}

impl std::str::FromStr for MethodChoice {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(MethodChoice::All),
            m => Ok(match m.parse::<Method>()? {
                Method::Full => MethodChoice::Full,
                Method::Reduced => MethodChoice::Reduced,
                Method::Closed => MethodChoice::Closed,
            }),
        }
    }
}

impl MethodChoice {
    fn methods(&self) -> Vec<Method> {
        match self {
            MethodChoice::All => Method::ALL.to_vec(),
            MethodChoice::Full => vec![Method::Full],
            MethodChoice::Reduced => vec![Method::Reduced],
            MethodChoice::Closed => vec![Method::Closed],
        }
    }
}

impl JobSpec {
    /// Validates the arguments and normalizes the coefficient group.
    pub fn from_cli(cli: &Cli) -> Result<JobSpec> {
        let (command, member, common) = match &cli.command {
            Sub::Cohomology { member, common, .. } => (Command::Cohomology, Some(member), common),
            Sub::Extensions { member, common, .. } => (Command::Extensions, Some(member), common),
            Sub::Verify { member, common, .. } => (Command::Verify, Some(member), common),
            Sub::Table { common, .. } => (Command::Table, None, common),
        };
        if let Some(m) = member {
            CyclicFamilyParams::new(m.p, m.nu, m.eta)?;
        }
        let gamma = FinAbGroup::parse(&common.coeff)?;
        let mut spec = JobSpec {
            command,
            p: member.map(|m| m.p),
            nu: member.map(|m| m.nu),
            eta: member.map(|m| m.eta),
            coeff_input: common.coeff.clone(),
            coeff: gamma.factors().to_vec(),
            degree: None,
            method: None,
            enumeration: None,
            representatives: false,
            max_v: None,
            seed: None,
            output: common.output,
            timing: common.timing,
        };
        match &cli.command {
            Sub::Cohomology { degree, method, representatives, .. } => {
                check_degree(*degree)?;
                spec.degree = Some(*degree);
                spec.method = Some(*method);
                spec.representatives = *representatives;
            }
            Sub::Extensions { enumerate, method, .. } => {
                spec.enumeration = Some(*method);
                spec.representatives = *enumerate;
            }
            Sub::Verify { seed, .. } => spec.seed = Some(*seed),
            Sub::Table { max_v, degree, method, .. } => {
                if let Some(d) = degree {
                    check_degree(*d)?;
                }
                spec.degree = *degree;
                spec.method = Some(*method);
                spec.max_v = Some(*max_v);
            }
        }
        Ok(spec)
    }

    pub fn params(&self) -> Result<CyclicFamilyParams> {
        match (self.p, self.nu, self.eta) {
            (Some(p), Some(nu), Some(eta)) => CyclicFamilyParams::new(p, nu, eta),
            _ => Err(Error::Domain("this command needs --p, --nu and --eta".into())),
        }
    }

    pub fn gamma(&self) -> Result<FinAbGroup> {
        FinAbGroup::new(self.coeff.clone())
    }
}

fn check_degree(d: usize) -> Result<()> {
    if d == 1 || d == 2 {
        Ok(())
    } else {
        Err(Error::Domain(format!("degree must be 1 or 2, got {d}")))
    }
}

fn member(params: &CyclicFamilyParams) -> Member {
    Member { p: params.p, nu: params.nu, eta: params.eta }
}

/// Runs one cohomology computation over the requested routes. Routes that
/// need finite coefficients are skipped for groups with a `Z` summand when
/// more than one route was asked for.
pub fn cohomology_row(
    params: &CyclicFamilyParams,
    gamma: &FinAbGroup,
    degree: usize,
    choice: MethodChoice,
    with_reps: bool,
) -> Result<CohomologyRow> {
    let mut routes = Vec::new();
    let mut skipped = Vec::new();
    let mut reps = None;
    for m in choice.methods() {
        let res = match cohomology(params, gamma, degree, m) {
            Err(Error::Unsupported(_)) if choice == MethodChoice::All => {
                skipped.push(m.name().to_string());
                continue;
            }
            r => r?,
        };
        if with_reps && reps.is_none() && m != Method::Closed {
            reps = Some(
                res.representatives
                    .iter()
                    .map(|(order, z)| Representative { order: *order, values: z.iter().map(|x| x.coords.clone()).collect() })
                    .collect(),
            );
        }
        routes.push(RouteValue { method: m.name().to_string(), invariant_factors: res.group.factors().to_vec() });
    }
    let mut agreement = Vec::new();
    for (i, a) in routes.iter().enumerate() {
        for b in &routes[i + 1..] {
            agreement.push(Agreement {
                first: a.method.clone(),
                second: b.method.clone(),
                agree: a.invariant_factors == b.invariant_factors,
            });
        }
    }
    let all_agree = agreement.iter().all(|a| a.agree);
    let status = match (routes.len(), all_agree) {
        (1, _) => routes[0].method.clone(),
        (_, true) => "all-agree".to_string(),
        (_, false) => "disagree".to_string(),
    };
    Ok(CohomologyRow {
        member: member(params),
        coeff: gamma.factors().to_vec(),
        degree,
        invariant_factors: all_agree.then(|| routes[0].invariant_factors.clone()),
        routes,
        agreement,
        status,
        skipped,
        representatives: reps,
    })
}

/// Computes the report. A route disagreement is returned inside the report
/// (status `disagree`); [`exit_code`] turns it into a failure.
pub fn run(spec: &JobSpec) -> Result<Report> {
    let start = Instant::now();
    let gamma = spec.gamma()?;
    let mut results = Vec::new();
    match spec.command {
        Command::Cohomology => {
            let params = spec.params()?;
            let method = spec.method.unwrap_or(MethodChoice::All);
            let degree = spec.degree.unwrap_or(2);
            results.push(ResultRow::Cohomology(cohomology_row(&params, &gamma, degree, method, spec.representatives)?));
        }
        Command::Table => {
            let degrees = spec.degree.map(|d| vec![d]).unwrap_or_else(|| vec![1, 2]);
            let method = spec.method.unwrap_or(MethodChoice::Closed);
            for params in CyclicFamilyParams::all_up_to(spec.max_v.unwrap_or(9)) {
                for &d in &degrees {
                    results.push(ResultRow::Cohomology(cohomology_row(&params, &gamma, d, method, false)?));
                }
            }
        }
        Command::Extensions => {
            let params = spec.params()?;
            let method = spec.enumeration.unwrap_or(EnumerationMethod::Theorem);
            let h2 = closed_cohomology(&params, &gamma, 2)?;
            let h2_order = h2.order().ok_or_else(|| Error::Unsupported("H^2 is infinite".into()))?;
            let classes = enumerate_extension_classes(&gamma, &params, method)?;
            results.push(ResultRow::Extensions(ExtensionsRow {
                member: member(&params),
                coeff: gamma.factors().to_vec(),
                method,
                class_count: classes.len(),
                h2_order,
                classes: if spec.representatives { classes } else { Vec::new() },
            }));
        }
        Command::Verify => {
            let params = spec.params()?;
            results.push(ResultRow::Verify(verify_suite(&params, &gamma, spec.seed.unwrap_or(0))?));
        }
    }
    Ok(Report {
        version: env!("CARGO_PKG_VERSION").to_string(),
        job: spec.clone(),
        results,
        timing_ms: spec.timing.then(|| start.elapsed().as_millis() as u64),
    })
}

/// 0 when every route agrees, every check passes and every class count
/// matches `|H^2|`; 3 otherwise.
pub fn exit_code(report: &Report) -> i32 {
    let bad = report.results.iter().any(|r| match r {
        ResultRow::Cohomology(c) => c.status == "disagree",
        ResultRow::Extensions(e) => e.class_count as u64 != e.h2_order,
        ResultRow::Verify(v) => !v.passed(),
    });
    if bad {
        EXIT_DISAGREEMENT
    } else {
        EXIT_OK
    }
}

/// Exit code for an error raised before a report could be built.
pub fn error_exit_code(e: &Error) -> i32 {
    match e {
        Error::Domain(_) | Error::OutOfScope(_) | Error::Unsupported(_) => EXIT_DOMAIN,
        Error::RouteDisagreement(_) | Error::Verification(_) | Error::InconsistentComplex(_) | Error::NotSmall(_) => {
            EXIT_DISAGREEMENT
        }
    }
}

#[derive(Serialize)]
struct ErrorBody<'a> {
    kind: &'a str,
    message: String,
    exit_code: i32,
}

#[derive(Serialize)]
struct ErrorReport<'a> {
    error: ErrorBody<'a>,
}

/// The structured form of an error, as written to standard error.
pub fn error_json(e: &Error) -> String {
    let kind = match e {
        Error::Domain(_) => "domain",
        Error::OutOfScope(_) => "out_of_scope",
        Error::Unsupported(_) => "unsupported",
        Error::RouteDisagreement(_) => "route_disagreement",
        Error::Verification(_) => "verification",
        Error::InconsistentComplex(_) => "inconsistent_complex",
        Error::NotSmall(_) => "not_small",
    };
    let body = ErrorReport { error: ErrorBody { kind, message: e.to_string(), exit_code: error_exit_code(e) } };
    serde_json::to_string(&body).expect("error reports always serialize")
}

/// Usage errors from argument parsing, in the same JSON shape.
pub fn usage_error_json(message: &str) -> String {
    let body = ErrorReport { error: ErrorBody { kind: "usage", message: message.trim_end().to_string(), exit_code: EXIT_DOMAIN } };
    serde_json::to_string(&body).expect("error reports always serialize")
}

/// Parses `args`, runs the job and returns `(exit code, stdout, stderr)`.
pub fn main_with_args<I, T>(args: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => (EXIT_OK, e.to_string(), String::new()),
                _ => (EXIT_DOMAIN, String::new(), usage_error_json(&e.to_string()) + "\n"),
            };
        }
    };
    let outcome = JobSpec::from_cli(&cli).and_then(|spec| run(&spec).map(|r| (spec, r)));
    match outcome {
        Ok((spec, report)) => (exit_code(&report), emit(&report, spec.output), String::new()),
        Err(e) => (error_exit_code(&e), String::new(), error_json(&e) + "\n"),
    }
}
