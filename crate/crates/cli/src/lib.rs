//! The `ldicode` command line. [`run_command`] does the work and returns
//! what would be printed, so tests can drive it without a process.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use ldicode::{
    block_embed, brute_force_distance, canonical_form, check_distance_condition,
    classify_undetectable, code_report, instantiate, known_code, ldi_metrics, mix_codes,
    parse_code_file, scale_by_m, serialize_code, subgroup_order, to_ldi, to_ldi_via_canonical,
    validate, DistanceResult, DistanceSearch, KnownCode, LdiCode, LiftPolicy, Modulus, PauliVec,
    PrimeComponent, StabilizerCode,
};

#[derive(Debug, Parser)]
#[command(
    name = "ldicode",
    version,
    about = "Stabilizer codes over composite local dimensions"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Global {
    /// Report style: a title line plus key=value lines, or key=value only.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Accept input files whose generators do not commute or are dependent.
    #[arg(long, global = true)]
    no_validate: bool,
    /// Write the produced code here; the report then goes to stdout.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Kv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Lift {
    Nonneg,
    Symmetric,
    /// Use the entries exactly as written in the file and the error.
    Exact,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check commutation and independence.
    Validate { file: PathBuf },
    /// Canonical form over the code's prime.
    Canon { file: PathBuf },
    /// LDI form of a code over a prime.
    Ldi {
        file: PathBuf,
        /// Always go through the canonical form.
        #[arg(long)]
        via_canonical: bool,
    },
    /// Reduce an LDI code modulo Q.
    Instantiate {
        file: PathBuf,
        #[arg(long = "Q")]
        q: u64,
    },
    /// Multiply an LDI code by m and read it inside Z_{mQ}.
    Scale {
        file: PathBuf,
        #[arg(long = "m")]
        m: u64,
        #[arg(long = "Q")]
        q: u64,
    },
    /// Scale codes over distinct primes into one code over Q.
    Mix {
        #[arg(long = "Q")]
        q: u64,
        /// Inputs as FILE@pP, e.g. five_qubit.code@p2.
        #[arg(required = true)]
        components: Vec<String>,
    },
    /// Place a code on a block of a larger register set.
    Embed {
        file: PathBuf,
        #[arg(long = "n")]
        n: usize,
        #[arg(long)]
        offset: usize,
    },
    /// Logical space size, generator orders and logical operators.
    Info {
        file: PathBuf,
        /// Defaults to the file's modulus.
        #[arg(long = "Q")]
        q: Option<u64>,
    },
    /// Exhaustive minimum distance search.
    Distance {
        file: PathBuf,
        #[arg(long = "Q")]
        q: Option<u64>,
        #[arg(long)]
        max_weight: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Largest number of candidate errors to examine.
        #[arg(long, default_value_t = 2_000_000_000)]
        budget: u64,
    },
    /// Unavoidable or artifact classification of an undetectable error.
    Classify {
        file: PathBuf,
        /// 2n integers, comma or space separated (quote the spaced form).
        #[arg(long, allow_hyphen_values = true, value_parser = parse_error_vector)]
        error: ErrorVector,
        #[arg(long = "Q")]
        q: Option<u64>,
        #[arg(long, value_enum, default_value_t = Lift::Nonneg)]
        lift: Lift,
    },
    /// Which distance condition certifies an LDI code at Q.
    CheckCond {
        file: PathBuf,
        #[arg(long = "Q")]
        q: u64,
        #[arg(long)]
        p_star: Option<u64>,
    },
    /// Write a built-in code: five-qubit, five-qudit:P, steane-ldi, rep-z:P:N, rep-x:P:N.
    Known { name: String },
}

#[derive(Debug, Clone)]
struct ErrorVector(Vec<i64>);

fn parse_error_vector(s: &str) -> Result<ErrorVector, String> {
    let v = s
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<i64>().map_err(|e| format!("{t:?}: {e}")))
        .collect::<Result<Vec<_>, _>>()?;
    if v.is_empty() {
        return Err("empty error vector".into());
    }
    Ok(ErrorVector(v))
}

/// Exit status and captured streams of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl<E: std::error::Error> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Domain(e.to_string())
    }
}

type Run<T> = Result<T, Failure>;

struct Report {
    title: String,
    pairs: Vec<(String, String)>,
}

impl Report {
    fn new(title: impl Into<String>) -> Self {
        Report {
            title: title.into(),
            pairs: Vec::new(),
        }
    }

    fn add(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.pairs.push((key.to_string(), value.to_string()));
        self
    }

    fn render(&self, format: Format) -> String {
        let mut out = String::new();
        if format == Format::Text {
            out.push_str(&self.title);
            out.push('\n');
        }
        for (k, v) in &self.pairs {
            writeln!(out, "{k}={v}").unwrap();
        }
        out
    }
}

struct Produced {
    report: Report,
    code: Option<StabilizerCode>,
    /// Non-zero exit with a normal report, used by `validate`.
    failed: bool,
}

fn report_only(report: Report) -> Produced {
    Produced {
        report,
        code: None,
        failed: false,
    }
}

fn with_code(report: Report, code: StabilizerCode) -> Produced {
    Produced {
        report,
        code: Some(code),
        failed: false,
    }
}

fn read_code(path: &Path, global: &Global) -> Run<StabilizerCode> {
    read_code_checked(path, !global.no_validate)
}

fn read_code_checked(path: &Path, check: bool) -> Run<StabilizerCode> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))?;
    parse_code_file(&text, check).map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))
}

fn read_ldi(path: &Path, global: &Global) -> Run<LdiCode> {
    let code = read_code(path, global)?;
    let origin = code.origin_prime().ok_or_else(|| {
        Failure::Domain(format!(
            "{}: LDI files need origin=<p> in the header",
            path.display()
        ))
    })?;
    if global.no_validate {
        Ok(LdiCode::new_unchecked(code, origin))
    } else {
        Ok(LdiCode::new(code, origin)?)
    }
}

fn target_modulus(code: &StabilizerCode, q: Option<u64>) -> Run<u64> {
    match (q, code.modulus()) {
        (Some(q), _) => Ok(q),
        (None, Modulus::Finite(q)) => Ok(q),
        (None, Modulus::Unbounded) => {
            Err(Failure::Usage("--Q is required for codes over Z".into()))
        }
    }
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items
        .into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn parse_component(spec: &str, global: &Global) -> Run<PrimeComponent> {
    let (file, p) = spec
        .rsplit_once("@p")
        .ok_or_else(|| Failure::Usage(format!("component {spec:?} is not FILE@pP")))?;
    let p: u64 = p
        .parse()
        .map_err(|_| Failure::Usage(format!("component {spec:?}: {p:?} is not a prime")))?;
    Ok(PrimeComponent::new(p, read_code(Path::new(file), global)?)?)
}

fn execute(command: &Command, global: &Global) -> Run<Produced> {
    match command {
        Command::Validate { file } => {
            let code = read_code_checked(file, false)?;
            let report = validate(&code)?;
            let mut r = Report::new(format!("validation of {}", file.display()));
            r.add("valid", report.is_valid())
                .add("independent", report.independent)
                .add(
                    "violations",
                    if report.violations.is_empty() {
                        "none".to_string()
                    } else {
                        join(
                            report
                                .violations
                                .iter()
                                .map(|(i, j, s)| format!("{i}:{j}:{s}")),
                        )
                    },
                );
            Ok(Produced {
                report: r,
                code: None,
                failed: !report.is_valid(),
            })
        }
        Command::Canon { file } => {
            let code = read_code(file, global)?;
            let c = canonical_form(&code)?;
            let mut r = Report::new("canonical form");
            r.add("r", c.r)
                .add("permutation", join(&c.register_permutation))
                .add(
                    "swaps",
                    if c.hadamard_swaps.is_empty() {
                        "none".into()
                    } else {
                        join(&c.hadamard_swaps)
                    },
                );
            Ok(with_code(r, c.code))
        }
        Command::Ldi {
            file,
            via_canonical,
        } => {
            let code = read_code(file, global)?;
            let ldi = if *via_canonical {
                to_ldi_via_canonical(&code)?
            } else {
                to_ldi(&code)?
            };
            let m = ldi_metrics(&ldi)?;
            let mut r = Report::new("LDI form");
            r.add("B", m.b)
                .add("is_ldi", m.is_ldi)
                .add("origin", ldi.origin_prime());
            if let Some(d) = ldi.derivation() {
                r.add("corrections", d.corrections.len());
            }
            let out = ldi
                .code()
                .clone()
                .with_origin_prime(Some(ldi.origin_prime()));
            Ok(with_code(r, out))
        }
        Command::Instantiate { file, q } => {
            let ldi = read_ldi(file, global)?;
            let code = instantiate(&ldi, *q)?;
            let mut r = Report::new(format!("instantiated at {q}"));
            r.add("n", code.n())
                .add("Q", q)
                .add("generators", code.num_generators());
            Ok(with_code(r, code))
        }
        Command::Scale { file, m, q } => {
            let ldi = read_ldi(file, global)?;
            let code = scale_by_m(&ldi, *m, *q)?;
            let mut r = Report::new(format!("scaled by {m} inside Z_{}", code.modulus()));
            r.add("modulus", code.modulus());
            Ok(with_code(r, code))
        }
        Command::Mix { q, components } => {
            let comps = components
                .iter()
                .map(|s| parse_component(s, global))
                .collect::<Run<Vec<_>>>()?;
            let code = mix_codes(&comps, *q)?;
            let report = code_report(&code, *q, None)?;
            let mut r = Report::new(format!("mixed code over Z_{q}"));
            r.add("n", code.n())
                .add("generators", code.num_generators())
                .add("group_order", subgroup_order(&code.generator_matrix(), *q)?)
                .add("K", &report.big_k)
                .add("k", fmt_k(report.k));
            if let Some(d) = code.claimed_distance() {
                r.add("claimed_d", d);
            }
            Ok(with_code(r, code))
        }
        Command::Embed { file, n, offset } => {
            let code = read_code(file, global)?;
            let out = block_embed(&code, *n, *offset)?;
            let mut r = Report::new("embedded code");
            r.add("n", n).add("offset", offset);
            Ok(with_code(r, out))
        }
        Command::Info { file, q } => {
            let code = read_code(file, global)?;
            let q = target_modulus(&code, *q)?;
            let target = at_modulus(&code, q)?;
            let report = code_report(&target, q, None)?;
            let mut r = Report::new(format!("code over Z_{q}"));
            r.add("n", code.n())
                .add("generators", code.num_generators())
                .add("K", &report.big_k)
                .add("k", fmt_k(report.k))
                .add("generator_orders", join(&report.generator_orders))
                .add("logicals", report.logical_generators.len());
            for (i, l) in report.logical_generators.iter().enumerate() {
                r.add(
                    &format!("logical_{i}"),
                    format!("{} order {}", l.operator, l.order),
                );
            }
            Ok(report_only(r))
        }
        Command::Distance {
            file,
            q,
            max_weight,
            jobs,
            budget,
        } => {
            let code = read_code(file, global)?;
            let q = target_modulus(&code, *q)?;
            let target = at_modulus(&code, q)?;
            let search = DistanceSearch::new(*max_weight)
                .with_jobs(*jobs)
                .with_budget(*budget);
            let mut r = Report::new(format!("distance search over Z_{q}"));
            match brute_force_distance(&target, q, &search)? {
                DistanceResult::Found { distance, witness } => {
                    r.add("d", distance).add("witness", witness);
                }
                DistanceResult::NoneUpTo {
                    weight,
                    budget_exhausted,
                } => {
                    r.add("d", "none")
                        .add("exhaustive_up_to", weight)
                        .add("budget_exhausted", budget_exhausted);
                }
            }
            Ok(report_only(r))
        }
        Command::Classify {
            file,
            error,
            q,
            lift,
        } => {
            let code = read_code(file, global)?;
            let q = target_modulus(&code, *q)?;
            let (code, e, policy) = match lift {
                Lift::Exact => (
                    StabilizerCode::new_unchecked(
                        code.n(),
                        Modulus::Unbounded,
                        code.generators().to_vec(),
                    )?,
                    PauliVec::new(error.0.clone(), Modulus::Unbounded)?,
                    LiftPolicy::NonNegative,
                ),
                Lift::Nonneg => (
                    code,
                    PauliVec::new(error.0.clone(), Modulus::Finite(q))?,
                    LiftPolicy::NonNegative,
                ),
                Lift::Symmetric => (
                    code,
                    PauliVec::new(error.0.clone(), Modulus::Finite(q))?,
                    LiftPolicy::Symmetric,
                ),
            };
            let c = classify_undetectable(&code, &e, q, policy)?;
            let mut r = Report::new(format!("undetectable error over Z_{q}"));
            r.add(
                "classification",
                format!("{:?}", c.classification).to_lowercase(),
            )
            .add("integer_syndrome", join(&c.integer_syndrome))
            .add("lift", c.error)
            .add("weight", c.weight);
            Ok(report_only(r))
        }
        Command::CheckCond { file, q, p_star } => {
            let ldi = read_ldi(file, global)?;
            let cond = check_distance_condition(&ldi, *q, *p_star)?;
            let mut r = Report::new(format!("distance condition at {q}"));
            r.add("condition", format!("{cond:?}"))
                .add("B", ldi.b())
                .add("origin", ldi.origin_prime());
            Ok(report_only(r))
        }
        Command::Known { name } => {
            let kind: KnownCode = name.parse()?;
            let known = known_code(kind)?;
            let code = known.code().clone().with_origin_prime(
                known
                    .prime()
                    .filter(|_| known.code().modulus() == Modulus::Unbounded),
            );
            let mut r = Report::new(format!("built-in code {kind}"));
            r.add("n", code.n())
                .add("modulus", code.modulus())
                .add("generators", code.num_generators());
            Ok(with_code(r, code))
        }
    }
}

/// The code read over `Z_Q`: finite codes must already be over `Q`, codes
/// over Z are reduced.
fn at_modulus(code: &StabilizerCode, q: u64) -> Run<StabilizerCode> {
    match code.modulus() {
        Modulus::Unbounded => Ok(StabilizerCode::new_unchecked(
            code.n(),
            Modulus::finite(q)?,
            code.generators().to_vec(),
        )?),
        _ => Ok(code.clone()),
    }
}

fn fmt_k(k: f64) -> String {
    let rounded = k.round();
    if (k - rounded).abs() < 1e-12 {
        format!("{rounded}")
    } else {
        format!("{k:.12}")
    }
}

/// Runs one invocation; `argv[0]` is the program name.
pub fn run_command<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let produced = match execute(&cli.command, &cli.global) {
        Ok(p) => p,
        Err(Failure::Usage(msg)) => {
            return Outcome {
                code: 2,
                stdout: String::new(),
                stderr: format!("error: {msg}\n"),
            }
        }
        Err(Failure::Domain(msg)) => {
            return Outcome {
                code: 1,
                stdout: String::new(),
                stderr: format!("error: {msg}\n"),
            }
        }
    };
    let report = produced.report.render(cli.global.format);
    let status = if produced.failed { 1 } else { 0 };
    match (produced.code, &cli.global.output) {
        (Some(code), Some(path)) => {
            if let Err(e) = fs::write(path, serialize_code(&code)) {
                return Outcome {
                    code: 1,
                    stdout: String::new(),
                    stderr: format!("error: {}: {e}\n", path.display()),
                };
            }
            Outcome {
                code: status,
                stdout: report,
                stderr: String::new(),
            }
        }
        (Some(code), None) => Outcome {
            code: status,
            stdout: serialize_code(&code),
            stderr: report,
        },
        (None, _) => Outcome {
            code: status,
            stdout: report,
            stderr: String::new(),
        },
    }
}
