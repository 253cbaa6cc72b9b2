//! The `bipoly` command line: Hilbert function tables, suite verification,
//! sweeps and decomposition queries.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use bipoly::apolarity::{decomposable, InstanceTemplate};
use bipoly::postulation::expected::{p3_plane_lines_expected, plane_lines_expected};
use bipoly::postulation::{forms_dim, verify_bipolynomial, Engine, SweepFamily};
use bipoly::suites::{run_suite, Budget, Verdict, ALL_SUITES};
use bipoly::{ConfigTemplate, Error, Field, Mode, PrimeField, RationalField};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

/// Environment variable read for `--seed`.
pub const SEED_ENV: &str = "BIPOLY_SEED";
/// Largest `C(n+d, n)` accepted in rational mode.
pub const RATIONAL_MAX_COLUMNS: usize = 500;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "bipoly",
    version,
    about = "Exact Hilbert functions of generic configurations of linear spaces"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Seed for generic sampling.
    #[arg(long, global = true, env = SEED_ENV, default_value_t = 1)]
    pub seed: u64,
    /// Prime modulus for prime-field mode.
    #[arg(long, global = true, default_value_t = bipoly::field::DEFAULT_MODULUS)]
    pub modulus: u64,
    /// Independent generic samples per computation; the maximum rank is kept.
    #[arg(long, global = true, default_value_t = 3)]
    pub trials: usize,
    #[arg(long, global = true, value_enum, default_value_t = ModeArg::Prime)]
    pub mode: ModeArg,
    #[arg(long, global = true, value_enum, default_value_t = Output::Table)]
    pub output: Output,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Prime,
    Rational,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Output {
    Table,
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BudgetPreset {
    /// n <= 5, d <= 4
    Quick,
    /// n <= 6, d <= 6, at most 3000 monomials
    Default,
    /// n <= 7, d <= 8, at most 3000 monomials
    Full,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    PlaneLines,
    Lines,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Hilbert function and ideal dimension of a configuration.
    Hf {
        /// Shorthand such as "P4: plane + 6 lines", or inline JSON.
        config: Option<String>,
        /// Read the configuration from a JSON file.
        #[arg(long)]
        input: Option<PathBuf>,
        #[command(flatten)]
        degrees: Degrees,
    },
    /// Run a named verification suite, or "all".
    Verify {
        suite: String,
        #[arg(long, value_enum)]
        budget: Option<BudgetPreset>,
        #[arg(long)]
        n_max: Option<usize>,
        #[arg(long)]
        d_max: Option<u32>,
    },
    /// Decide whether the degree-d forms split as a sum of subrings.
    Apolar {
        /// Shorthand such as "P3: 2 pairs + triple", or inline JSON.
        instance: Option<String>,
        #[arg(long)]
        input: Option<PathBuf>,
        #[command(flatten)]
        degrees: Degrees,
    },
    /// Compare computed and expected ideal dimensions over a (d, s) grid.
    Sweep {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d_max: u32,
        #[arg(long, value_enum, default_value_t = FamilyArg::PlaneLines)]
        family: FamilyArg,
        /// `a..b`, `a..=b` or a comma list; defaults bracket the critical counts.
        #[arg(long)]
        s_range: Option<String>,
        /// A JSON configuration file sweeping a fixed template over d.
        #[arg(long)]
        input: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct Degrees {
    /// A single degree.
    #[arg(long, conflicts_with = "d_max")]
    pub d: Option<u32>,
    /// All degrees up to this one.
    #[arg(long)]
    pub d_max: Option<u32>,
}

/// One report row; also the CSV record.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Row {
    pub n: usize,
    pub d: u32,
    pub s_or_shape: String,
    pub hf: Option<usize>,
    pub ideal_dim: i128,
    pub expected: Option<i128>,
    pub verdict: Option<String>,
    pub seed: u64,
    pub trials: usize,
    pub mode: String,
}

#[derive(Debug, Default, Serialize)]
pub struct Report {
    pub command: String,
    pub rows: Vec<Row>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub conclusions: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<serde_json::Value>,
    #[serde(skip)]
    pub failures: Vec<String>,
}

/// Outcome of one invocation.
#[derive(Debug)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Run(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::SamplingExhausted(_)
            | Error::DegenerateParametrization { .. }
            | Error::ImproperIntersection
            | Error::EmptyIntersection
            | Error::UnsupportedResidual => CliError::Run(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

pub fn run_from<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome {
                    stdout: text,
                    stderr: String::new(),
                    code,
                }
            } else {
                Outcome {
                    stdout: String::new(),
                    stderr: text,
                    code,
                }
            };
        }
    };
    run(&cli)
}

pub fn run(cli: &Cli) -> Outcome {
    let result = match cli.global.mode {
        ModeArg::Prime => match PrimeField::new(cli.global.modulus) {
            Ok(f) => execute(cli, f),
            Err(e) => Err(e.into()),
        },
        ModeArg::Rational => execute(cli, RationalField::default()),
    };
    match result {
        Ok(report) => {
            let stdout = match render(&report, cli.global.output) {
                Ok(s) => s,
                Err(e) => {
                    return Outcome {
                        stdout: String::new(),
                        stderr: format!("error: {e}\n"),
                        code: EXIT_FAILURE,
                    }
                }
            };
            let mut stderr = String::new();
            for f in &report.failures {
                let _ = writeln!(stderr, "FAIL {f}");
            }
            let code = if report.failures.is_empty() {
                EXIT_OK
            } else {
                EXIT_FAILURE
            };
            Outcome {
                stdout,
                stderr,
                code,
            }
        }
        Err(CliError::Usage(m)) => Outcome {
            stdout: String::new(),
            stderr: format!("error: {m}\n"),
            code: EXIT_USAGE,
        },
        Err(CliError::Run(m)) => Outcome {
            stdout: String::new(),
            stderr: format!("error: {m}\n"),
            code: EXIT_FAILURE,
        },
    }
}

fn mode_name(m: Mode) -> String {
    m.to_string()
}

fn read_source(inline: &Option<String>, input: &Option<PathBuf>) -> Result<String, CliError> {
    match (inline, input) {
        (Some(_), Some(_)) => Err(CliError::Usage(
            "give either an inline argument or --input, not both".into(),
        )),
        (Some(s), None) => Ok(s.clone()),
        (None, Some(p)) => std::fs::read_to_string(p)
            .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", p.display()))),
        (None, None) => Err(CliError::Usage(
            "missing input: pass a shorthand, JSON, or --input FILE".into(),
        )),
    }
}

fn degree_list(deg: &Degrees, fallback: Option<u32>, start: u32) -> Result<Vec<u32>, CliError> {
    match (deg.d, deg.d_max, fallback) {
        (Some(d), _, _) => Ok(vec![d]),
        (None, Some(m), _) => Ok((start..=m).collect()),
        (None, None, Some(d)) => Ok(vec![d]),
        (None, None, None) => Err(CliError::Usage("pass --d or --d-max".into())),
    }
}

fn check_rational<F: Field>(field: &F, n: usize, d: u32) -> Result<(), CliError> {
    let cols = forms_dim(n, d);
    if field.mode() == Mode::Rational && cols > RATIONAL_MAX_COLUMNS as i128 {
        return Err(CliError::Usage(format!(
            "rational mode accepts at most {RATIONAL_MAX_COLUMNS} monomials, n = {n}, d = {d} needs {cols}"
        )));
    }
    Ok(())
}

fn execute<F: Field>(cli: &Cli, field: F) -> Result<Report, CliError> {
    let g = &cli.global;
    if g.trials == 0 {
        return Err(CliError::Usage("--trials must be at least 1".into()));
    }
    let mode = mode_name(field.mode());
    let engine = Engine::new(field.clone(), g.seed, g.trials);
    let row = |n: usize,
               d: u32,
               s: String,
               hf: Option<usize>,
               ideal: i128,
               expected: Option<i128>,
               verdict: Option<String>| Row {
        n,
        d,
        s_or_shape: s,
        hf,
        ideal_dim: ideal,
        expected,
        verdict,
        seed: g.seed,
        trials: g.trials,
        mode: mode.clone(),
    };
    let mut report = Report::default();
    match &cli.command {
        Command::Hf {
            config,
            input,
            degrees,
        } => {
            report.command = "hf".into();
            let template = ConfigTemplate::parse(&read_source(config, input)?)?;
            let ds = degree_list(degrees, None, 0)?;
            for &d in &ds {
                check_rational(&field, template.n, d)?;
            }
            let shape = bipoly::Family::sample(&template, &field, &mut engine.sampler().split(0))?
                .shape()
                .describe();
            for r in engine.records(&template, &ds)? {
                let verdict = r.matches_expected().map(|ok| {
                    if ok && r.trials_agreed {
                        "pass"
                    } else {
                        "fail"
                    }
                    .to_string()
                });
                if verdict.as_deref() == Some("fail") {
                    report.failures.push(format!(
                        "{shape} d={}: computed {}, expected {:?}",
                        r.d, r.ideal_dim, r.expected_ideal_dim
                    ));
                }
                report.rows.push(row(
                    r.n,
                    r.d,
                    shape.clone(),
                    Some(r.hf),
                    r.ideal_dim as i128,
                    r.expected_ideal_dim.map(|e| e as i128),
                    verdict,
                ));
            }
        }
        Command::Verify {
            suite,
            budget,
            n_max,
            d_max,
        } => {
            report.command = "verify".into();
            let mut b = match budget.unwrap_or(BudgetPreset::Default) {
                BudgetPreset::Quick => Budget {
                    n_max: 5,
                    d_max: 4,
                    max_columns: 3000,
                },
                BudgetPreset::Default => Budget::default(),
                BudgetPreset::Full => Budget {
                    n_max: 7,
                    d_max: 8,
                    max_columns: 3000,
                },
            };
            if let Some(n) = n_max {
                b.n_max = *n;
            }
            if let Some(d) = d_max {
                b.d_max = *d;
            }
            if field.mode() == Mode::Rational {
                b.max_columns = b.max_columns.min(RATIONAL_MAX_COLUMNS);
            }
            let ids: Vec<&str> = if suite == "all" {
                ALL_SUITES.to_vec()
            } else if ALL_SUITES.contains(&suite.as_str()) {
                vec![suite.as_str()]
            } else {
                return Err(CliError::Usage(format!(
                    "unknown suite `{suite}`; known: all, {}",
                    ALL_SUITES.join(", ")
                )));
            };
            let mut results = Vec::new();
            for id in ids {
                let res = run_suite(id, b, &engine)?;
                for c in &res.cases {
                    let verdict = c.verdict.to_string();
                    if c.verdict == Verdict::Fail {
                        report.failures.push(format!(
                            "{id}: {} at n={}, d={}: computed {}, expected {} ({})",
                            c.inputs,
                            opt(&c.n),
                            opt(&c.d),
                            c.computed,
                            opt(&c.expected),
                            c.note
                        ));
                    }
                    report.rows.push(row(
                        c.n.unwrap_or(0),
                        c.d.unwrap_or(0),
                        format!("{id}: {}", c.inputs),
                        c.hf,
                        c.computed,
                        c.expected,
                        Some(verdict),
                    ));
                }
                report
                    .conclusions
                    .extend(res.conclusions.iter().map(|c| format!("{id}: {c}")));
                results.push(res);
            }
            report.detail =
                Some(serde_json::to_value(&results).map_err(|e| CliError::Run(e.to_string()))?);
        }
        Command::Apolar {
            instance,
            input,
            degrees,
        } => {
            report.command = "apolar".into();
            let t = InstanceTemplate::parse(&read_source(instance, input)?)?;
            let ds = degree_list(degrees, t.d, 1)?;
            let shape = t.describe();
            let mut answers = Vec::new();
            for d in ds {
                check_rational(&field, t.n, d)?;
                let a = decomposable(&engine, &t, d)?;
                let expected = a.certified.then(|| {
                    let pairs = t.groups.iter().filter(|g| g.size == 2).count();
                    if t.n == 3 {
                        p3_plane_lines_expected(d, pairs)
                    } else {
                        plane_lines_expected(t.n, d, pairs)
                    }
                });
                let verdict = match expected {
                    Some(e) if e == a.defect as i128 && a.duality_holds && a.trials_agreed => {
                        "pass"
                    }
                    Some(_) => "fail",
                    None if a.duality_holds => "computed",
                    None => "fail",
                };
                if verdict == "fail" {
                    report.failures.push(format!(
                        "{shape} d={d}: defect {}, expected {expected:?}, duality {}",
                        a.defect, a.duality_holds
                    ));
                }
                report.conclusions.push(format!(
                    "d={d}: {} (defect {}, {})",
                    if a.decomposable { "yes" } else { "no" },
                    a.defect,
                    if a.certified {
                        "certified"
                    } else {
                        "computed, not certified"
                    }
                ));
                report.rows.push(row(
                    t.n,
                    d,
                    shape.clone(),
                    Some(a.span_rank),
                    a.defect as i128,
                    expected,
                    Some(verdict.into()),
                ));
                answers.push(a);
            }
            report.detail =
                Some(serde_json::to_value(&answers).map_err(|e| CliError::Run(e.to_string()))?);
        }
        Command::Sweep {
            n,
            d_max,
            family,
            s_range,
            input,
        } => {
            report.command = "sweep".into();
            check_rational(&field, *n, *d_max)?;
            let fam = match input {
                Some(p) => {
                    if s_range.is_some() {
                        return Err(CliError::Usage(
                            "--s-range does not apply to --input templates".into(),
                        ));
                    }
                    SweepFamily::Custom(ConfigTemplate::parse(&read_source(
                        &None,
                        &Some(p.clone()),
                    )?)?)
                }
                None => match family {
                    FamilyArg::PlaneLines => SweepFamily::PlaneLines,
                    FamilyArg::Lines => SweepFamily::Lines,
                },
            };
            let s_values = s_range
                .as_deref()
                .map(parse_s_range)
                .transpose()
                .map_err(CliError::Usage)?;
            let rows = verify_bipolynomial(&engine, *n, *d_max, &fam, s_values.as_deref())?;
            for r in rows {
                if !r.pass {
                    report.failures.push(format!(
                        "{} d={} s={}: computed {}, expected {}",
                        r.shape, r.d, r.s, r.computed, r.expected
                    ));
                }
                let label = match fam {
                    SweepFamily::Custom(_) => r.shape.clone(),
                    _ => format!("{} (s={})", r.shape, r.s),
                };
                report.rows.push(row(
                    r.n,
                    r.d,
                    label,
                    Some(r.hf),
                    r.computed as i128,
                    Some(r.expected as i128),
                    Some(if r.pass { "pass" } else { "fail" }.into()),
                ));
            }
        }
    }
    Ok(report)
}

/// Parses `a..b`, `a..=b` or `a,b,c`.
pub fn parse_s_range(text: &str) -> Result<Vec<usize>, String> {
    let bad = || format!("bad --s-range `{text}`");
    let num = |s: &str| s.trim().parse::<usize>().map_err(|_| bad());
    let range: Vec<usize> = if let Some((a, b)) = text.split_once("..=") {
        (num(a)?..=num(b)?).collect()
    } else if let Some((a, b)) = text.split_once("..") {
        (num(a)?..num(b)?).collect()
    } else {
        let mut v = text.split(',').map(num).collect::<Result<Vec<_>, _>>()?;
        v.sort_unstable();
        v.dedup();
        v
    };
    if range.is_empty() {
        return Err(format!("empty --s-range `{text}`"));
    }
    Ok(range)
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "-".to_string(), T::to_string)
}

pub fn render(report: &Report, output: Output) -> Result<String, String> {
    match output {
        Output::Json => {
            let mut s = serde_json::to_string_pretty(report).map_err(|e| e.to_string())?;
            s.push('\n');
            Ok(s)
        }
        Output::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            if report.rows.is_empty() {
                w.write_record([
                    "n",
                    "d",
                    "s_or_shape",
                    "hf",
                    "ideal_dim",
                    "expected",
                    "verdict",
                    "seed",
                    "trials",
                    "mode",
                ])
                .map_err(|e| e.to_string())?;
            }
            for r in &report.rows {
                w.serialize(r).map_err(|e| e.to_string())?;
            }
            let bytes = w.into_inner().map_err(|e| e.to_string())?;
            String::from_utf8(bytes).map_err(|e| e.to_string())
        }
        Output::Table => Ok(table(report)),
    }
}

fn table(report: &Report) -> String {
    let header = [
        "n",
        "d",
        "s_or_shape",
        "hf",
        "ideal_dim",
        "expected",
        "verdict",
    ];
    let cells: Vec<[String; 7]> = report
        .rows
        .iter()
        .map(|r| {
            [
                r.n.to_string(),
                r.d.to_string(),
                r.s_or_shape.clone(),
                opt(&r.hf),
                r.ideal_dim.to_string(),
                opt(&r.expected),
                opt(&r.verdict),
            ]
        })
        .collect();
    let mut width = header.map(str::len);
    for c in &cells {
        for (w, v) in width.iter_mut().zip(c) {
            *w = (*w).max(v.chars().count());
        }
    }
    let mut out = String::new();
    let line = |out: &mut String, vals: &[String]| {
        let parts: Vec<String> = vals
            .iter()
            .zip(width)
            .enumerate()
            .map(|(i, (v, w))| {
                if i == 2 {
                    format!("{v:<w$}")
                } else {
                    format!("{v:>w$}")
                }
            })
            .collect();
        out.push_str(parts.join("  ").trim_end());
        out.push('\n');
    };
    line(&mut out, &header.map(String::from));
    for c in &cells {
        line(&mut out, c);
    }
    if let Some(r) = report.rows.first() {
        let _ = writeln!(out, "seed {}, trials {}, mode {}", r.seed, r.trials, r.mode);
    }
    for c in &report.conclusions {
        let _ = writeln!(out, "{c}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s_ranges() {
        assert_eq!(parse_s_range("2..5").unwrap(), vec![2, 3, 4]);
        assert_eq!(parse_s_range("2..=5").unwrap(), vec![2, 3, 4, 5]);
        assert_eq!(parse_s_range("7, 5,5").unwrap(), vec![5, 7]);
        assert!(parse_s_range("x").is_err());
    }

    #[test]
    fn hf_rows() {
        let o = run_from([
            "bipoly",
            "--output",
            "csv",
            "hf",
            "P4: plane + 6 lines",
            "--d",
            "3",
        ]);
        assert_eq!(o.code, 0, "{}", o.stderr);
        assert!(o
            .stdout
            .lines()
            .nth(1)
            .unwrap()
            .starts_with("4,3,plane + 6 lines,34,1,1,pass,"));
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(
            run_from(["bipoly", "hf", "P4: 6 blobs", "--d", "2"]).code,
            2
        );
        assert_eq!(run_from(["bipoly", "verify", "nope"]).code, 2);
        assert_eq!(run_from(["bipoly", "frobnicate"]).code, 2);
        assert_eq!(
            run_from(["bipoly", "--mode", "rational", "hf", "P6: line", "--d", "6"]).code,
            2
        );
    }
}
