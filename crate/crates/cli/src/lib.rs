//! Command-line surface for `homaloid-core`: subcommands, configuration,
//! report rendering and the `verify-paper` criteria runner.

pub mod report;
pub mod verify;

use clap::{Parser, Subcommand, ValueEnum};
use homaloid::fatpoints::{self, EngineError, FatIdealSpec};
use homaloid::ffla::{FieldConfig, DEFAULT_MODULUS};
use homaloid::search;
use homaloid::typecalc::{self, parse_literal, HudsonTrace, MultiplicityType, TypeError};
use report::{Check, ConfigEcho, Report};
use serde_json::{json, Value};
use std::path::PathBuf;
use std::time::Instant;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

impl Format {
    fn name(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Text => "text",
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "homaloid",
    version,
    about = "Cremona types, fat points and their verification suite"
)]
struct Cli {
    /// Prime modulus of the coefficient field.
    #[arg(long, global = true, default_value_t = DEFAULT_MODULUS)]
    prime: u64,
    /// Seed for point sampling and random suites.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Total point configurations tried before a value counts as uncertified.
    #[arg(long, global = true, default_value_t = fatpoints::DEFAULT_RETRIES)]
    retries: usize,
    /// Hudson step limit (default 10·d).
    #[arg(long, global = true)]
    step_limit: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Progress on standard error; repeat for more.
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
    /// Record wall time in the report.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Integer calculus on a type literal such as `13;8,4^6,2^2`.
    Type {
        #[command(subcommand)]
        op: TypeOp,
    },
    /// dim J_t for general points.
    Hilbert {
        literal: String,
        #[arg(long)]
        deg: u32,
    },
    /// Graded Betti numbers of the fat point ideal.
    Betti {
        literal: String,
        #[arg(long, default_value_t = fatpoints::DEFAULT_BETTI_WINDOW)]
        window: u32,
    },
    /// Ordinary and symbolic power dimensions at n times the initial degree.
    Powers {
        literal: String,
        #[arg(long)]
        n: u32,
    },
    /// Sub-homaloidal multiplicity sets of degree s.
    Search {
        #[arg(long)]
        s: i64,
        /// Keep only sets whose doubled type is Hudson-proper.
        #[arg(long)]
        proper_double: bool,
        #[arg(long)]
        max_mult: Option<i64>,
        /// Keep only three-uniform sets.
        #[arg(long)]
        three_uniform: bool,
    },
    /// Homaloidal types with multiplicities 8, 4, 2.
    #[command(name = "classify-842")]
    Classify842 {
        #[arg(long, default_value_t = 40)]
        d_max: i64,
    },
    /// Runs the acceptance criteria.
    VerifyPaper {
        /// Degrees 3 and 5 only.
        #[arg(long)]
        fast: bool,
    },
}

#[derive(Debug, Subcommand)]
enum TypeOp {
    Classify {
        literal: String,
    },
    Double {
        literal: String,
    },
    Transform {
        literal: String,
        /// One-based positions `j,k,l`; defaults to the three highest.
        #[arg(long)]
        at: Option<String>,
    },
    Hudson {
        literal: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub modulus: u64,
    pub seed: u64,
    pub retries: usize,
    pub step_limit: Option<usize>,
    pub format: Format,
    pub verbosity: u8,
}

impl RunConfig {
    pub fn field(&self) -> FieldConfig {
        FieldConfig::new(self.modulus, self.seed).expect("validated when parsed")
    }

    fn echo(&self) -> ConfigEcho {
        ConfigEcho {
            modulus: self.modulus,
            seed: self.seed,
            retries: self.retries,
            step_limit: self.step_limit,
            format: self.format.name().to_string(),
        }
    }

    fn validate(&self) -> Result<(), String> {
        FieldConfig::new(self.modulus, self.seed).map_err(|e| e.to_string())?;
        if self.retries == 0 {
            return Err("--retries must be at least 1".into());
        }
        Ok(())
    }
}

/// Result of one invocation.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub code: i32,
    pub report: Option<Report>,
    /// What goes to standard output.
    pub stdout: String,
    /// Diagnostics and progress for standard error.
    pub stderr: String,
}

enum Failure {
    Usage(String),
    Refused(String),
}

impl From<TypeError> for Failure {
    fn from(e: TypeError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<EngineError> for Failure {
    fn from(e: EngineError) -> Self {
        match e {
            EngineError::Uncertified(_) | EngineError::Invariant(_) => {
                Failure::Refused(e.to_string())
            }
            other => Failure::Usage(other.to_string()),
        }
    }
}

struct Output {
    results: Value,
    checks: Vec<Check>,
    table: Option<Vec<Vec<String>>>,
}

impl Output {
    fn new(results: Value, checks: Vec<Check>) -> Self {
        Self {
            results,
            checks,
            table: None,
        }
    }
}

/// Parses `argv` (including the program name) and runs the subcommand.
pub fn run<I, S>(argv: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let argv: Vec<String> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let (stdout, stderr) = if code == 0 {
                (text, String::new())
            } else {
                (String::new(), text)
            };
            return Outcome {
                code,
                report: None,
                stdout,
                stderr,
            };
        }
    };
    let config = RunConfig {
        modulus: cli.prime,
        seed: cli.seed,
        retries: cli.retries,
        step_limit: cli.step_limit,
        format: cli.format,
        verbosity: cli.verbose,
    };
    if let Err(msg) = config.validate() {
        return usage(msg);
    }
    if config.format == Format::Csv
        && !matches!(
            cli.command,
            Command::Search { .. } | Command::Classify842 { .. } | Command::Betti { .. }
        )
    {
        return usage("--format csv is only available for search, classify-842 and betti".into());
    }
    let start = Instant::now();
    let output = match execute(&cli.command, &config) {
        Ok(o) => o,
        Err(Failure::Usage(msg)) => return usage(msg),
        Err(Failure::Refused(msg)) => Output::new(
            json!({ "error": msg }),
            vec![Check::failed(
                "computation",
                "engine refused to report",
                msg,
            )],
        ),
    };
    let mut report = Report::new(
        argv[1..].to_vec(),
        config.echo(),
        output.results,
        output.checks,
    );
    if cli.timing {
        report.wall_time_ms = Some(start.elapsed().as_millis() as u64);
    }
    let rendered = match config.format {
        Format::Json => report.to_json(),
        Format::Text => report.to_text(),
        Format::Csv => render_csv(output.table.as_deref().unwrap_or_default()),
    };
    let code = if report.passed { 0 } else { 1 };
    let stdout = match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &rendered) {
                return usage(format!("cannot write {}: {e}", path.display()));
            }
            String::new()
        }
        None => rendered,
    };
    Outcome {
        code,
        report: Some(report),
        stdout,
        stderr: String::new(),
    }
}

fn usage(msg: String) -> Outcome {
    Outcome {
        code: 2,
        report: None,
        stdout: String::new(),
        stderr: format!("error: {msg}\n"),
    }
}

fn parse(literal: &str) -> Result<MultiplicityType, Failure> {
    parse_literal(literal).map_err(|e| {
        Failure::Usage(format!(
            "invalid type literal at column {}: {}\n  {literal}\n  {:>width$}",
            e.column,
            e.message,
            "^",
            width = e.column
        ))
    })
}

fn execute(cmd: &Command, cfg: &RunConfig) -> Result<Output, Failure> {
    match cmd {
        Command::Type { op } => type_op(op, cfg),
        Command::Hilbert { literal, deg } => {
            let t = parse(literal)?;
            let spec = FatIdealSpec::general(&t, cfg.field(), false)?;
            let h = fatpoints::hilbert_value(&spec, *deg, cfg.retries)?;
            let checks = vec![Check::holds(
                "semicontinuity",
                "sampled dimension is at least the expected dimension",
                h.sampled_dim >= h.expected,
            )];
            let summary = format!(
                "dim J_{} = {} (expected {}, {})",
                h.degree,
                h.sampled_dim,
                h.expected,
                if h.certified {
                    "certified"
                } else {
                    "uncertified"
                }
            );
            Ok(Output::new(
                json!({ "type": t.to_string(), "hilbert": h, "summary": summary }),
                checks,
            ))
        }
        Command::Betti { literal, window } => betti(literal, *window, cfg),
        Command::Powers { literal, n } => powers(literal, *n, cfg),
        Command::Search {
            s,
            proper_double,
            max_mult,
            three_uniform,
        } => {
            let mut r = search::enumerate_subhomaloidal(*s, *max_mult)?;
            if *three_uniform {
                r = r.three_uniform_only();
            }
            if *proper_double {
                r = search::filter_proper_double(&r)?;
            }
            let mut table = vec![vec![
                "mults".into(),
                "three_uniform".into(),
                "double_verdict".into(),
            ]];
            for e in &r.entries {
                table.push(vec![
                    e.literal(),
                    e.three_uniform.to_string(),
                    e.double_verdict
                        .map(|v| v.label().to_string())
                        .unwrap_or_default(),
                ]);
            }
            let summary = r.literals().join("\n");
            let mut out = Output::new(
                json!({ "search": r, "rows": r.literals(), "summary": summary }),
                Vec::new(),
            );
            out.table = Some(table);
            Ok(out)
        }
        Command::Classify842 { d_max } => {
            let rows = search::classify_842(*d_max)?;
            let mut table = vec![vec![
                "degree".into(),
                "r8".into(),
                "r4".into(),
                "r2".into(),
                "type".into(),
                "verdict".into(),
            ]];
            let mut summary = String::new();
            for r in &rows {
                table.push(vec![
                    r.degree.to_string(),
                    r.r8.to_string(),
                    r.r4.to_string(),
                    r.r2.to_string(),
                    r.homaloidal_type.to_string(),
                    r.verdict.label().to_string(),
                ]);
                summary.push_str(&format!("({}) {}\n", r.homaloidal_type, r.verdict.label()));
            }
            let mut out = Output::new(json!({ "rows": rows, "summary": summary }), Vec::new());
            out.table = Some(table);
            Ok(out)
        }
        Command::VerifyPaper { fast } => {
            let vcfg = verify::VerifyConfig {
                field: cfg.field(),
                retries: cfg.retries,
            };
            let outcomes = verify::run_all(&vcfg, *fast, |o| {
                if cfg.verbosity > 0 {
                    eprintln!("{}", o.summary_line());
                }
            });
            let summaries: Vec<verify::CriterionSummary> =
                outcomes.iter().map(Into::into).collect();
            let summary: String = outcomes.iter().map(|o| o.summary_line() + "\n").collect();
            let mut checks: Vec<Check> = outcomes.into_iter().flat_map(|o| o.checks).collect();
            checks.sort_by(|a, b| check_order(&a.id).cmp(&check_order(&b.id)));
            Ok(Output::new(
                json!({ "fast": fast, "criteria": summaries, "summary": summary }),
                checks,
            ))
        }
    }
}

/// Orders `c10.x` after `c9.x`.
fn check_order(id: &str) -> (u32, &str) {
    let num = id
        .strip_prefix('c')
        .and_then(|rest| rest.split('.').next())
        .and_then(|n| n.parse().ok())
        .unwrap_or(u32::MAX);
    (num, id)
}

fn type_op(op: &TypeOp, cfg: &RunConfig) -> Result<Output, Failure> {
    match op {
        TypeOp::Classify { literal } => {
            let t = parse(literal)?;
            let c = typecalc::classify(&t)?;
            let summary = format!(
                "({t}): homaloidal {}, sub-homaloidal degree {}",
                c.is_homaloidal,
                c.subhomaloidal_degree
                    .map_or("none".to_string(), |s| s.to_string())
            );
            Ok(Output::new(
                json!({ "type": t.to_string(), "classification": c, "summary": summary }),
                Vec::new(),
            ))
        }
        TypeOp::Double { literal } => {
            let t = parse(literal)?;
            let d = typecalc::double(&t)?;
            let c = typecalc::classify(&d)?;
            let checks = vec![Check::holds(
                "homaloidal",
                "doubled type is homaloidal",
                c.is_homaloidal,
            )];
            Ok(Output::new(
                json!({ "type": t.to_string(), "doubled": d.to_string(), "summary": d.to_string() }),
                checks,
            ))
        }
        TypeOp::Transform { literal, at } => {
            let t = parse(literal)?;
            let q = match at {
                Some(spec) => {
                    let [j, k, l] = parse_positions(spec)?;
                    typecalc::quad_transform(&t, j, k, l)?
                }
                None => typecalc::quad_transform_highest(&t)?,
            };
            let inv = |t: &MultiplicityType| {
                let sum: i64 = t.mults().iter().sum();
                let sq: i64 = t.mults().iter().map(|m| m * m).sum();
                vec![3 * t.degree() - sum, t.degree() * t.degree() - sq]
            };
            let checks = vec![Check::equal(
                "invariants",
                "3d − Σν and d² − Σν² are preserved",
                inv(&t.padded(3)),
                inv(&q),
            )];
            Ok(Output::new(
                json!({
                    "type": t.to_string(),
                    "transformed": q.to_string(),
                    "positional": { "degree": q.degree(), "mults": q.mults() },
                    "summary": q.to_string(),
                }),
                checks,
            ))
        }
        TypeOp::Hudson { literal } => {
            let t = parse(literal)?;
            let limit = cfg
                .step_limit
                .unwrap_or_else(|| HudsonTrace::default_step_limit(&t));
            let tr = typecalc::hudson_test(&t, limit)?;
            let steps: Vec<Value> = tr
                .steps
                .iter()
                .map(|s| {
                    json!({
                        "at": s.indices.iter().map(|i| i + 1).collect::<Vec<_>>(),
                        "output": s.output.to_string(),
                    })
                })
                .collect();
            let mut summary: String = tr
                .steps
                .iter()
                .map(|s| format!("-> {}\n", s.output))
                .collect();
            summary.push_str(&format!(
                "verdict: {}\nfinal: {}",
                tr.verdict.label(),
                tr.final_type()
            ));
            Ok(Output::new(
                json!({
                    "type": t.to_string(),
                    "verdict": tr.verdict,
                    "final": tr.final_type().to_string(),
                    "steps": steps,
                    "trace": tr,
                    "summary": summary,
                }),
                Vec::new(),
            ))
        }
    }
}

fn parse_positions(s: &str) -> Result<[usize; 3], Failure> {
    let parts: Vec<usize> = s
        .split(',')
        .map(|p| p.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|e| Failure::Usage(format!("--at {s}: {e}")))?;
    match parts[..] {
        [j, k, l] if j >= 1 && k >= 1 && l >= 1 => Ok([j - 1, k - 1, l - 1]),
        _ => Err(Failure::Usage(format!(
            "--at expects three one-based positions, got {s}"
        ))),
    }
}

fn betti(literal: &str, window: u32, cfg: &RunConfig) -> Result<Output, Failure> {
    let t = parse(literal)?;
    let spec = FatIdealSpec::general(&t, cfg.field(), false)?;
    let b = fatpoints::betti_table(&spec, window, cfg.retries)?;
    let mut checks = vec![Check::equal(
        "hilbert_burch",
        "syzygy count is one less than the generator count",
        b.generator_count().saturating_sub(1),
        b.syzygy_count(),
    )];
    let classification = typecalc::classify(&t)?;
    if classification.three_uniform == Some(true) {
        let p = typecalc::predict_invariants(&t)?;
        let gens = std::collections::BTreeMap::from([(
            p.generator_degree as u32,
            p.generator_count as u64,
        )]);
        let syz: std::collections::BTreeMap<u32, u64> = p
            .syzygy_counts
            .iter()
            .filter(|(_, &c)| c > 0)
            .map(|(&d, &c)| (d as u32, c as u64))
            .collect();
        checks.push(Check::equal(
            "generators",
            "generators match the predicted resolution",
            gens,
            b.generators.clone(),
        ));
        checks.push(Check::equal(
            "syzygies",
            "syzygies match the predicted resolution",
            syz,
            b.syzygies.clone(),
        ));
    }
    let mut table = vec![vec![
        "degree".into(),
        "generators".into(),
        "syzygies".into(),
        "hilbert".into(),
    ]];
    let mut summary = String::new();
    for (&d, &h) in &b.hilbert {
        let g = b.generators.get(&d).copied().unwrap_or(0);
        let u = b.syzygies.get(&d).copied().unwrap_or(0);
        table.push(vec![
            d.to_string(),
            g.to_string(),
            u.to_string(),
            h.to_string(),
        ]);
        summary.push_str(&format!(
            "degree {d}: {g} generators, {u} syzygies, dim {h}\n"
        ));
    }
    let mut out = Output::new(
        json!({ "type": t.to_string(), "betti": b, "summary": summary }),
        checks,
    );
    out.table = Some(table);
    Ok(out)
}

fn powers(literal: &str, n: u32, cfg: &RunConfig) -> Result<Output, Failure> {
    let t = parse(literal)?;
    let spec = FatIdealSpec::general(&t, cfg.field(), false)?;
    let p = fatpoints::power_dim(&spec, n)?;
    let sym = fatpoints::symbolic_dim(&spec, n, p.degree, cfg.retries)?;
    let mut checks = vec![Check::holds(
        "containment",
        "dim (J^n) is at most dim (J^(n)) in the same degree",
        p.dim as u64 <= sym.sampled_dim,
    )];
    if typecalc::classify(&t)?.three_uniform == Some(true) {
        let pred = typecalc::predict_invariants(&t)?;
        checks.push(Check::equal(
            "closed_form",
            "power dimension matches the closed form",
            pred.image_hilbert.eval(n as i64),
            p.dim as i64,
        ));
    }
    let summary = format!(
        "dim (J^{n})_{} = {}, dim (J^({n}))_{} = {}",
        p.degree, p.dim, p.degree, sym.sampled_dim
    );
    Ok(Output::new(
        json!({ "type": t.to_string(), "power": p, "symbolic": sym, "summary": summary }),
        checks,
    ))
}

fn render_csv(rows: &[Vec<String>]) -> String {
    rows.iter()
        .map(|r| {
            r.iter()
                .map(|cell| {
                    if cell.contains([',', '"', '\n']) {
                        format!("\"{}\"", cell.replace('"', "\"\""))
                    } else {
                        cell.clone()
                    }
                })
                .collect::<Vec<_>>()
                .join(",")
                + "\n"
        })
        .collect()
}
