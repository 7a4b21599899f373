//! `subperm`: command-line access to sub-permutation statistics.

mod output;

use std::io::{self, BufRead, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

use subperm::enumeration::{
    catalan_table, dominant_root, dyck_avoiding_table, exact_ratio, expected_gamma, gamma_u_bounded_table,
    increasing_split, lj_coefficients, lj_complement, ln_asymptotic_coefficient, no_size_j_caterpillar,
    pj_coefficients, ratio_estimate, root_ratio, CoefficientTable, RootFamily,
};
use subperm::montecarlo::{sweep, McConfig, DEFAULT_SAMPLES, DEFAULT_WORK_CAP};
use subperm::numeric::rational_to_f64;
use subperm::oracle::run_suite;
use subperm::perm::{all_sub_permutations, DEFAULT_ORACLE_CEILING};
use subperm::probability::{
    conditional_presence, count_not_avsk_exhaustive, oracle_limit, prob_not_av_213_2, prob_not_avsk,
    prob_not_avsk_asymptotic, AvoidanceSequence, DenominatorMethod,
};
use subperm::trees::{phi, phi_inverse, psi, psi_inverse, LabeledTree};
use subperm::{Error, Permutation};

use output::{big, num, Format, Table};

const EXIT_USAGE: u8 = 1;
const EXIT_DOMAIN: u8 = 2;
const EXIT_RESOURCE: u8 = 3;
const EXIT_CHECK: u8 = 4;

#[derive(Parser)]
#[command(name = "subperm", version, about = "Sub-permutation statistics, tree bijections and pattern probabilities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Map permutations to trees and back
    Convert(ConvertArgs),
    /// List the sub-permutations of a permutation
    Subperm(SubpermArgs),
    /// Print exact coefficient tables
    Count(CountArgs),
    /// Dominant roots, asymptotic estimates and related tables
    Asym(AsymArgs),
    /// Probability that a pattern occurs in a permutation but not in a sub-permutation
    Prob(ProbArgs),
    /// Seeded Monte Carlo estimates of the same probability
    Simulate(SimulateArgs),
    /// Run the exhaustive cross-checks
    Oracle(OracleArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Bijection {
    /// Increasing binary trees and all permutations
    Phi,
    /// Planar full binary trees and 312-avoiders
    Psi,
}

#[derive(Args)]
struct ConvertArgs {
    /// Read permutations, print trees
    #[arg(long, conflicts_with = "to_perm", required_unless_present = "to_perm")]
    to_tree: bool,
    /// Read trees, print permutations
    #[arg(long)]
    to_perm: bool,
    #[arg(long, value_enum, default_value = "phi")]
    bijection: Bijection,
    /// Input item; one item per line is read from stdin when omitted
    input: Option<String>,
}

#[derive(Args)]
struct SubpermArgs {
    /// Host permutation, e.g. "4 5 3 1 2 6 8 7"; read from stdin when omitted
    host: Option<String>,
    /// Only the sub-permutation generated by this value
    #[arg(long)]
    k: Option<u32>,
    #[arg(long, visible_alias = "out", value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CountFamily {
    /// Catalan numbers
    Catalan,
    /// 312-avoiders whose largest Av(213) sub-permutation has size at most j
    Pj,
    /// 312-avoiders with no Av(213) sub-permutation of size j
    NoCaterpillar,
    /// 312-avoiders with an odd alternating sub-permutation of size 2m+1
    Lj,
    /// 312-avoiders with no odd alternating sub-permutation of size 2m+1
    LjComplement,
    /// 123-avoiders with an increasing sub-permutation of size 2
    M2,
    /// 123-avoiders without an increasing sub-permutation of size 2
    M2Complement,
    /// Dyck paths with every ascent of length at most j+1
    Dyck,
    /// 123-avoiders whose largest non-prefix decreasing sub-permutation has size at most j
    GammaU,
}

#[derive(Args)]
struct CountArgs {
    #[arg(long, value_enum)]
    family: CountFamily,
    #[arg(long)]
    j: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long, default_value_t = 0)]
    n_min: usize,
    #[arg(long)]
    n_max: usize,
    /// bfile prints "n value" lines
    #[arg(long, visible_alias = "out", value_enum, default_value = "bfile")]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AsymFamily {
    /// rho_j, root of 1 - 4x + 2^(j+2) x^(j+2)
    Pj,
    /// a_m, root of 1 - 4x + 4 c_m x^(2m+2)
    AltFree,
    /// b_m = rho_(2m)
    CaterpillarFree,
    /// Caterpillar-free over alternating-free counts, exact and estimated
    Ratio,
    /// Exact mean of the largest Av(213) sub-permutation of a 312-avoider
    ExpectedGamma,
}

#[derive(Args)]
struct AsymArgs {
    #[arg(long, value_enum)]
    family: AsymFamily,
    /// j for pj, m for alt-free, caterpillar-free and ratio
    #[arg(long)]
    index: Option<usize>,
    /// Sizes at which to evaluate (comma separated)
    #[arg(long, value_delimiter = ',')]
    n: Vec<usize>,
    /// Constant factor of the ratio estimate
    #[arg(long, default_value_t = 1.0)]
    k_m: f64,
    #[arg(long, visible_alias = "out", value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ProbMethod {
    /// Exact count (closed form for 213 and k = 2, exhaustion otherwise)
    Exact,
    /// 2 h_sigma / n^2, for k = 2
    Asym,
    /// Average over the law of the sub-permutation size
    Series,
}

#[derive(Clone, Copy, ValueEnum)]
enum Denominator {
    ExpectedSize,
    SizeLaw,
}

#[derive(Args)]
struct ProbArgs {
    #[arg(long)]
    pattern: String,
    #[arg(long)]
    n: usize,
    #[arg(long, conflicts_with_all = ["k_sweep", "k_from", "k_to"])]
    k: Option<usize>,
    /// Every k from 1 to n
    #[arg(long)]
    k_sweep: bool,
    #[arg(long, requires = "k_to")]
    k_from: Option<usize>,
    #[arg(long, requires = "k_from")]
    k_to: Option<usize>,
    /// File of "i count" lines giving |Av_i(pattern)|
    #[arg(long)]
    seq_file: Option<PathBuf>,
    /// Number of sequence terms used by the series
    #[arg(long, default_value_t = 20)]
    terms: usize,
    #[arg(long, value_enum, default_value = "series")]
    method: ProbMethod,
    /// Report Prob(pattern in pi | pattern not in g(k)) instead
    #[arg(long)]
    conditional: bool,
    #[arg(long, value_enum, default_value = "expected-size")]
    denominator: Denominator,
    #[arg(long, visible_alias = "out", value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Args)]
struct SimulateArgs {
    #[arg(long)]
    pattern: String,
    #[arg(long, conflicts_with_all = ["n_from", "n_to"], required_unless_present = "n_from")]
    n: Option<usize>,
    #[arg(long, requires = "n_to")]
    n_from: Option<usize>,
    #[arg(long, requires = "n_from")]
    n_to: Option<usize>,
    #[arg(long, conflicts_with_all = ["k_from", "k_to"], required_unless_present = "k_from")]
    k: Option<usize>,
    #[arg(long, requires = "k_to")]
    k_from: Option<usize>,
    #[arg(long, requires = "k_from")]
    k_to: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    samples: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Node expansions allowed per pattern search
    #[arg(long, default_value_t = DEFAULT_WORK_CAP)]
    work_cap: u64,
    #[arg(long, visible_alias = "out", value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Args)]
struct OracleArgs {
    /// "all", a group (bijections, counts, structure) or a single check name
    #[arg(long, default_value = "all")]
    check: String,
    /// Largest size to enumerate
    #[arg(long)]
    n_max: usize,
    /// Largest size any check may be asked to enumerate
    #[arg(long, env = "SUBPERM_ORACLE_CEILING", default_value_t = DEFAULT_ORACLE_CEILING)]
    max_ceiling: usize,
    #[arg(long, visible_alias = "out", value_enum, default_value = "text")]
    format: Format,
}

/// Failure of a subcommand, carrying its exit status.
#[derive(Debug)]
enum Failure {
    Domain(Error),
    Io(String),
    Usage(String),
    Check,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn run(command: Command, out: &mut impl Write) -> Outcome {
    match command {
        Command::Convert(a) => convert(a, out),
        Command::Subperm(a) => subperm_cmd(a, out),
        Command::Count(a) => count(a, out),
        Command::Asym(a) => asym(a, out),
        Command::Prob(a) => prob(a, out),
        Command::Simulate(a) => simulate(a, out),
        Command::Oracle(a) => oracle(a, out),
    }
}

fn exit_code(failure: &Failure) -> u8 {
    match failure {
        Failure::Domain(Error::ResourceLimit(_)) => EXIT_RESOURCE,
        Failure::Domain(_) | Failure::Io(_) => EXIT_DOMAIN,
        Failure::Usage(_) => EXIT_USAGE,
        Failure::Check => EXIT_CHECK,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let result = run(cli.command, &mut out);
    let _ = out.flush();
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            match &failure {
                Failure::Domain(e) => eprintln!("error: {e}"),
                Failure::Io(msg) | Failure::Usage(msg) => eprintln!("error: {msg}"),
                Failure::Check => eprintln!("error: oracle checks failed"),
            }
            ExitCode::from(exit_code(&failure))
        }
    }
}

/// The positional item, or every non-blank stdin line when it is absent.
fn inputs(arg: Option<String>) -> Result<Vec<String>, Failure> {
    match arg {
        Some(s) => Ok(vec![s]),
        None => {
            let mut items = Vec::new();
            for line in io::stdin().lock().lines() {
                let line = line?;
                if !line.trim().is_empty() {
                    items.push(line.trim().to_string());
                }
            }
            Ok(items)
        }
    }
}

fn convert(a: ConvertArgs, out: &mut impl Write) -> Outcome {
    for item in inputs(a.input)? {
        let line = if a.to_tree {
            let p: Permutation = item.parse()?;
            match a.bijection {
                Bijection::Phi => phi_inverse(&p)?.to_string(),
                Bijection::Psi => psi_inverse(&p)?.to_string(),
            }
        } else {
            let t: LabeledTree = item.parse()?;
            match a.bijection {
                Bijection::Phi => phi(&t)?.to_string(),
                Bijection::Psi => psi(&t)?.to_string(),
            }
        };
        writeln!(out, "{line}")?;
    }
    Ok(())
}

fn subperm_cmd(a: SubpermArgs, out: &mut impl Write) -> Outcome {
    let mut table = Table::new("subperm", &["host", "generator", "lo", "hi", "size", "pattern"]);
    for item in inputs(a.host)? {
        let host: Permutation = item.parse()?;
        let records = match a.k {
            Some(k) => vec![host.sub_permutation(k)?],
            None => all_sub_permutations(&host),
        };
        for s in records {
            table.push(vec![
                Value::from(host.to_string()),
                Value::from(s.generator),
                Value::from(s.lo + 1),
                Value::from(s.hi + 1),
                Value::from(s.len()),
                Value::from(s.pattern.to_string()),
            ]);
        }
    }
    table.emit(a.format, out)
}

fn need(v: Option<usize>, flag: &str, family: &str) -> Result<usize, Failure> {
    v.ok_or_else(|| Failure::Usage(format!("--{flag} is required for family {family}")))
}

fn count(a: CountArgs, out: &mut impl Write) -> Outcome {
    let n = a.n_max;
    let table: CoefficientTable = match a.family {
        CountFamily::Catalan => catalan_table(n),
        CountFamily::Pj => pj_coefficients(need(a.j, "j", "pj")?, n)?,
        CountFamily::NoCaterpillar => no_size_j_caterpillar(need(a.j, "j", "no-caterpillar")?, n)?,
        CountFamily::Lj => lj_coefficients(need(a.m, "m", "lj")?, n),
        CountFamily::LjComplement => lj_complement(need(a.m, "m", "lj-complement")?, n),
        CountFamily::Dyck => {
            let j = need(a.j, "j", "dyck")?;
            if j == 0 {
                return Err(Error::InvalidInput("j must be at least 1".into()).into());
            }
            dyck_avoiding_table(j, n)
        }
        CountFamily::GammaU => {
            let j = need(a.j, "j", "gamma-u")?;
            if j == 0 {
                return Err(Error::InvalidInput("j must be at least 1".into()).into());
            }
            gamma_u_bounded_table(j, n)
        }
        CountFamily::M2 | CountFamily::M2Complement => {
            let mut t = Table::new("count", &["n", "value"]);
            for i in a.n_min.max(3)..=n {
                let (an, bn) = increasing_split(i)?;
                let v = if a.family == CountFamily::M2 { an } else { bn };
                t.push(vec![Value::from(i), big(&v)]);
            }
            return t.emit(a.format, out);
        }
    };
    let mut t = Table::new("count", &["n", "value"]);
    for (i, v) in table.coefficients.iter().enumerate().skip(a.n_min) {
        t.push(vec![Value::from(i), big(v)]);
    }
    t.emit(a.format, out)
}

fn asym(a: AsymArgs, out: &mut impl Write) -> Outcome {
    let mut t = Table::new("asym", &["family", "index", "n", "root", "residual", "estimate", "ln_estimate", "exact"]);
    let name = a.family.to_possible_value().expect("named").get_name().to_string();
    match a.family {
        AsymFamily::Pj | AsymFamily::AltFree | AsymFamily::CaterpillarFree => {
            let i = need(a.index, "index", &name)?;
            let family = match a.family {
                AsymFamily::Pj => RootFamily::Pj(i),
                AsymFamily::AltFree => RootFamily::AlternatingFree(i),
                _ => RootFamily::CaterpillarFree(i),
            };
            let params = dominant_root(family)?;
            let base =
                |n: Value| vec![Value::from(name.clone()), Value::from(i), n, num(params.root), num(params.residual)];
            if a.n.is_empty() {
                let mut row = base(Value::from(""));
                row.extend([Value::from(""), Value::from(""), Value::from("")]);
                t.push(row);
            }
            for &n in &a.n {
                let ln = ln_asymptotic_coefficient(&params, n);
                let exact = family.series().coefficient(n);
                let mut row = base(Value::from(n));
                row.extend([num(ln.exp()), num(ln), big(&exact)]);
                t.push(row);
            }
        }
        AsymFamily::Ratio => {
            let m = need(a.index, "index", "ratio")?;
            let rr = root_ratio(m)?;
            for &n in &a.n {
                t.push(vec![
                    Value::from("ratio"),
                    Value::from(m),
                    Value::from(n),
                    num(rr),
                    Value::from(""),
                    num(ratio_estimate(m, n, a.k_m)),
                    Value::from(""),
                    num(exact_ratio(m, n)),
                ]);
            }
        }
        AsymFamily::ExpectedGamma => {
            for &n in &a.n {
                let e = expected_gamma(n)?;
                t.push(vec![
                    Value::from("expected-gamma"),
                    Value::from(""),
                    Value::from(n),
                    Value::from(""),
                    Value::from(""),
                    Value::from(""),
                    Value::from(""),
                    num(rational_to_f64(&e)),
                ]);
            }
        }
    }
    t.emit(a.format, out)
}

fn load_sequence(pattern: &Permutation, file: Option<&PathBuf>, needed: usize) -> Result<AvoidanceSequence, Failure> {
    match file {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
            Ok(AvoidanceSequence::parse(pattern, &text)?)
        }
        None if pattern.len() == 3 => Ok(AvoidanceSequence::catalan(pattern, needed)?),
        None => {
            let up_to = needed.min(oracle_limit(pattern.len()));
            Ok(AvoidanceSequence::from_oracle(pattern, up_to)?)
        }
    }
}

fn k_values(
    n: usize,
    k: Option<usize>,
    sweep: bool,
    from: Option<usize>,
    to: Option<usize>,
) -> Result<Vec<usize>, Failure> {
    match (k, sweep, from, to) {
        (Some(k), false, None, None) => Ok(vec![k]),
        (None, true, None, None) => Ok((1..=n).collect()),
        (None, false, Some(a), Some(b)) if a <= b => Ok((a..=b).collect()),
        (None, false, Some(_), Some(_)) => Err(Failure::Usage("--k-from must not exceed --k-to".into())),
        _ => Err(Failure::Usage("give exactly one of --k, --k-sweep or --k-from/--k-to".into())),
    }
}

fn prob(a: ProbArgs, out: &mut impl Write) -> Outcome {
    let pattern: Permutation = a.pattern.parse()?;
    let ks = k_values(a.n, a.k, a.k_sweep, a.k_from, a.k_to)?;
    let mut columns = vec!["n", "k", "method", "value", "truncation"];
    if a.conditional {
        columns.extend(["numerator", "denominator", "denominator_method"]);
    }
    let mut t = Table::new("prob", &columns);
    let seq = match a.method {
        ProbMethod::Exact => None,
        _ => Some(load_sequence(&pattern, a.seq_file.as_ref(), a.terms.max(1))?.truncated(a.terms)),
    };
    let denominator = match a.denominator {
        Denominator::ExpectedSize => DenominatorMethod::ExpectedSize,
        Denominator::SizeLaw => DenominatorMethod::SizeLaw,
    };
    for k in ks {
        let mut extra = Vec::new();
        let est = match a.method {
            ProbMethod::Exact => {
                if a.conditional {
                    return Err(Failure::Usage("--conditional needs --method series".into()));
                }
                if pattern.to_string() == "2 1 3" && k == 2 {
                    prob_not_av_213_2(a.n)?
                } else {
                    let hits = count_not_avsk_exhaustive(a.n, &pattern, k, DEFAULT_ORACLE_CEILING)?;
                    let total: f64 = (1..=a.n).map(|i| i as f64).product();
                    subperm::probability::ProbEstimate {
                        value: hits as f64 / total,
                        method: subperm::probability::Method::Exact,
                        truncation: None,
                    }
                }
            }
            ProbMethod::Asym => {
                if k != 2 {
                    return Err(Error::UnsupportedInput("the asymptotic estimate is for k = 2".into()).into());
                }
                let seq = seq.as_ref().expect("loaded");
                prob_not_avsk_asymptotic(seq, a.n, seq.len())?
            }
            ProbMethod::Series => {
                let seq = seq.as_ref().expect("loaded");
                if a.conditional {
                    let c = conditional_presence(seq, a.n, k, denominator)?;
                    extra = vec![num(c.numerator), num(c.denominator), Value::from(c.denominator_method.to_string())];
                    c.estimate
                } else {
                    prob_not_avsk(seq, a.n, k)?
                }
            }
        };
        let mut row = vec![
            Value::from(a.n),
            Value::from(k),
            Value::from(est.method.to_string()),
            num(est.value),
            est.truncation.map(Value::from).unwrap_or_else(|| Value::from("")),
        ];
        row.extend(extra);
        t.push(row);
    }
    t.emit(a.format, out)
}

fn range(single: Option<usize>, from: Option<usize>, to: Option<usize>, what: &str) -> Result<Vec<usize>, Failure> {
    match (single, from, to) {
        (Some(v), None, None) => Ok(vec![v]),
        (None, Some(a), Some(b)) if a <= b => Ok((a..=b).collect()),
        _ => Err(Failure::Usage(format!("give --{what} or a valid --{what}-from/--{what}-to range"))),
    }
}

fn simulate(a: SimulateArgs, out: &mut impl Write) -> Outcome {
    let pattern: Permutation = a.pattern.parse()?;
    let ns = range(a.n, a.n_from, a.n_to, "n")?;
    let ks = range(a.k, a.k_from, a.k_to, "k")?;
    let points: Vec<(usize, usize)> = ns.iter().flat_map(|&n| ks.iter().map(move |&k| (n, k))).collect();
    let base = McConfig {
        samples: a.samples,
        seed: a.seed,
        workers: a.workers,
        work_cap: a.work_cap,
        ..McConfig::new(ns[0], pattern, ks[0])
    };
    let estimates = sweep(&base, &points)?;
    let mut t = Table::new("simulate", &["n", "k", "estimate", "stderr", "samples", "capped", "seed"]);
    for e in estimates {
        t.push(vec![
            Value::from(e.n),
            Value::from(e.k),
            num(e.estimate),
            num(e.stderr),
            Value::from(e.samples),
            Value::from(e.capped),
            Value::from(e.seed),
        ]);
    }
    t.emit(a.format, out)
}

fn oracle(a: OracleArgs, out: &mut impl Write) -> Outcome {
    let reports = run_suite(&a.check, a.n_max, a.max_ceiling)?;
    let all_passed = reports.iter().all(|r| r.passed());
    match a.format {
        Format::Text | Format::Bfile => {
            for r in &reports {
                writeln!(out, "{r}")?;
            }
            let checks = reports.len();
            let failed = reports.iter().filter(|r| !r.passed()).count();
            if all_passed {
                writeln!(out, "OK {checks} checks passed")?;
            } else {
                writeln!(out, "FAILED {failed} of {checks} checks")?;
            }
        }
        format => {
            let mut t = Table::new("oracle", &["check", "group", "n_max", "cases", "failures", "first_failure"]);
            for r in &reports {
                t.push(vec![
                    Value::from(r.name),
                    Value::from(r.group),
                    Value::from(r.n_max),
                    Value::from(r.cases),
                    Value::from(r.failures),
                    Value::from(r.first_failure.clone().unwrap_or_default()),
                ]);
            }
            t.emit(format, out)?;
        }
    }
    if all_passed {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}
