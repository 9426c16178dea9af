use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use kroncoeff::characters::{self, chi, chi_two_row, CHAR_CACHE_ENV};
use kroncoeff::contingency::{self, count_tables, Marginals};
use kroncoeff::hooks::{self, count_hook_kron, hook_kron_traced};
use kroncoeff::kron::{
    compute_traced, gapp_decomposition, reduce, reduced_kron, stable_size, AutoConfig, Method,
    ReductionOutcome,
};
use kroncoeff::lr::{embedding_size, lr_coefficient, lr_via_reduction, murnaghan_embedding};
use kroncoeff::verify::{self, SuiteReport};
use kroncoeff::{Error, Partition};

#[derive(Parser)]
#[command(
    name = "kroncoeff",
    version,
    about = "Exact Kronecker coefficients of the symmetric group"
)]
struct Cli {
    /// Print one JSON object instead of plain text.
    #[arg(long, global = true)]
    json: bool,

    /// Worker threads; defaults to the number of CPUs.
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Character cache file, read at startup and rewritten on success.
    /// Falls back to the KRONCOEFF_CHAR_CACHE environment variable.
    #[arg(long, global = true)]
    char_cache: Option<PathBuf>,

    /// Entries kept in each memo table (characters and array counts).
    #[arg(long, global = true, default_value_t = characters::DEFAULT_CHAR_CACHE_CAPACITY)]
    cache_capacity: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Triple {
    #[arg(long)]
    lam: Partition,
    #[arg(long)]
    mu: Partition,
    #[arg(long)]
    nu: Partition,
}

#[derive(Clone, Copy, ValueEnum)]
enum KronMethod {
    Oracle,
    Tables,
    Auto,
}

#[derive(Clone, Copy, ValueEnum)]
enum CharMethod {
    /// Border-strip recursion.
    Mn,
    /// Subset-sum formula; λ must have at most two rows.
    TwoRow,
}

#[derive(Clone, Copy, ValueEnum)]
enum LrMethod {
    Direct,
    Reduction,
    Embedding,
}

#[derive(Subcommand)]
enum Command {
    /// Kronecker coefficient g(λ, μ, ν).
    Kron {
        #[command(flatten)]
        triple: Triple,
        #[arg(long, value_enum, default_value = "auto")]
        method: KronMethod,
        /// Also report the positive and negative parts of the table sum.
        #[arg(long)]
        gapp: bool,
        /// Replace λ and μ by their conjugates before computing.
        #[arg(long)]
        conjugate: bool,
        /// Describe the evaluation route on standard error.
        #[arg(long)]
        trace: bool,
        /// Size at or below which auto mode finishes with the character oracle.
        #[arg(long, default_value_t = AutoConfig::default().oracle_max_n)]
        oracle_max_n: usize,
        /// Length at or above which auto mode finishes with the character oracle.
        #[arg(long, default_value_t = AutoConfig::default().oracle_min_length)]
        oracle_min_length: usize,
    },
    /// Reduce a triple or certify that its coefficient vanishes.
    Reduce {
        #[command(flatten)]
        triple: Triple,
    },
    /// Character value χ^λ at cycle type ν.
    Char {
        #[arg(long)]
        lam: Partition,
        #[arg(long)]
        nu: Partition,
        #[arg(long, value_enum, default_value = "mn")]
        method: CharMethod,
    },
    /// g(λ, μ, (n-k, 1^k)) by the barred-tableau rule.
    Hook {
        #[arg(long)]
        lam: Partition,
        #[arg(long)]
        mu: Partition,
        #[arg(long)]
        k: usize,
        /// Print every counted tableau before the result.
        #[arg(long)]
        trace: bool,
        /// Refuse inputs with n above this.
        #[arg(long, default_value_t = hooks::DEFAULT_HOOK_MAX_N)]
        max_n: usize,
    },
    /// Littlewood-Richardson coefficient c^λ_{μν}.
    Lr {
        #[command(flatten)]
        triple: Triple,
        #[arg(long, value_enum, default_value = "direct")]
        method: LrMethod,
    },
    /// Reduced Kronecker coefficient, evaluated at its stable size.
    Redkron {
        #[command(flatten)]
        triple: Triple,
    },
    /// Number of three-way arrays with the given marginals.
    Tables {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long, allow_hyphen_values = true)]
        c: String,
    },
    /// Run every cross-method suite up to a size bound.
    Verify {
        #[arg(long, default_value_t = 5)]
        max_n: usize,
    },
}

struct Output {
    input: Map<String, Value>,
    result: String,
    method: String,
    extra: Map<String, Value>,
    /// Lines printed before the result in text mode.
    text_before: Vec<String>,
    exit: u8,
}

impl Output {
    fn new(input: Map<String, Value>, result: impl ToString, method: impl Into<String>) -> Self {
        Output {
            input,
            result: result.to_string(),
            method: method.into(),
            extra: Map::new(),
            text_before: Vec::new(),
            exit: 0,
        }
    }
}

fn triple_input(t: &Triple) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("lam".into(), json!(t.lam.to_string()));
    m.insert("mu".into(), json!(t.mu.to_string()));
    m.insert("nu".into(), json!(t.nu.to_string()));
    m
}

fn parse_marginal(s: &str) -> Result<Vec<i64>, Error> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<i64>()
                .map_err(|_| Error::InvalidInput(format!("bad marginal entry {tok:?}")))
        })
        .collect()
}

fn join(v: &[i64]) -> String {
    v.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
}

fn run(command: &Command) -> Result<Output, Error> {
    match command {
        Command::Kron {
            triple,
            method,
            gapp,
            conjugate,
            trace,
            oracle_max_n,
            oracle_min_length,
        } => {
            let mut input = triple_input(triple);
            let (lam, mu) = if *conjugate {
                input.insert("conjugate".into(), json!(true));
                (triple.lam.conjugate(), triple.mu.conjugate())
            } else {
                (triple.lam.clone(), triple.mu.clone())
            };
            if *gapp {
                let pair = gapp_decomposition(&lam, &mu, &triple.nu)?;
                let g = pair.value()?;
                let mut out = Output::new(input, &g, "tables");
                out.extra.insert(
                    "gapp".into(),
                    json!({"pos": pair.pos.to_string(), "neg": pair.neg.to_string()}),
                );
                out.text_before.push(format!("pos {}", pair.pos));
                out.text_before.push(format!("neg {}", pair.neg));
                return Ok(out);
            }
            let method = match method {
                KronMethod::Oracle => Method::Oracle,
                KronMethod::Tables => Method::Tables,
                KronMethod::Auto => Method::Auto,
            };
            let config = AutoConfig {
                oracle_max_n: *oracle_max_n,
                oracle_min_length: *oracle_min_length,
            };
            let eval = compute_traced(&lam, &mu, &triple.nu, method, &config)?;
            if *trace {
                eprintln!("route: {}", eval.route);
            }
            let mut out = Output::new(input, &eval.value, method.to_string());
            if *trace {
                out.extra.insert("route".into(), json!(eval.route));
            }
            Ok(out)
        }
        Command::Reduce { triple } => {
            let outcome = reduce(&triple.lam, &triple.mu, &triple.nu)?;
            let mut out = match &outcome {
                ReductionOutcome::ProvablyZero { row, t, .. } => {
                    let mut out = Output::new(triple_input(triple), "0", "reduction");
                    out.extra.insert("zero_row".into(), json!(row));
                    out.extra.insert("t".into(), json!(t));
                    out
                }
                ReductionOutcome::Reduced(r) => {
                    let text = format!("{};{};{}", r.lambda, r.mu, r.nu);
                    let mut out = Output::new(triple_input(triple), text, "reduction");
                    out.extra.insert("t".into(), json!(r.map.t()));
                    out.extra.insert("ell".into(), json!(r.map.ell()));
                    out.extra
                        .insert("index_set".into(), json!(r.map.index_set()));
                    out.extra
                        .insert("omega".into(), json!(r.map.omega().to_string()));
                    out.extra
                        .insert("rho".into(), json!(r.map.rho().to_string()));
                    out
                }
            };
            // The text form is the whole certificate.
            out.text_before = outcome.to_string().lines().map(str::to_string).collect();
            Ok(out)
        }
        Command::Char { lam, nu, method } => {
            let mut input = Map::new();
            input.insert("lam".into(), json!(lam.to_string()));
            input.insert("nu".into(), json!(nu.to_string()));
            let (value, name) = match method {
                CharMethod::Mn => (chi(lam, nu)?, "murnaghan-nakayama"),
                CharMethod::TwoRow => {
                    if lam.length() > 2 {
                        return Err(Error::InvalidInput(format!(
                            "({lam}) has more than two rows"
                        )));
                    }
                    (chi_two_row(lam.size(), lam.part(1), nu)?, "two-row")
                }
            };
            Ok(Output::new(input, value, name))
        }
        Command::Hook {
            lam,
            mu,
            k,
            trace,
            max_n,
        } => {
            hooks::set_max_n(*max_n);
            let mut input = Map::new();
            input.insert("lam".into(), json!(lam.to_string()));
            input.insert("mu".into(), json!(mu.to_string()));
            input.insert("k".into(), json!(k));
            if *trace {
                let (count, accepted) = hook_kron_traced(lam, mu, *k)?;
                let lines: Vec<String> = accepted.iter().map(|a| a.tableau.to_string()).collect();
                let mut out = Output::new(input, count, "hook");
                out.extra.insert("trace".into(), json!(lines));
                out.text_before = lines;
                Ok(out)
            } else {
                Ok(Output::new(input, count_hook_kron(lam, mu, *k)?, "hook"))
            }
        }
        Command::Lr { triple, method } => {
            let (value, name) = match method {
                LrMethod::Direct => (
                    lr_coefficient(&triple.lam, &triple.mu, &triple.nu),
                    "direct",
                ),
                LrMethod::Reduction => (
                    lr_via_reduction(&triple.lam, &triple.mu, &triple.nu)?,
                    "reduction",
                ),
                LrMethod::Embedding => {
                    let n = embedding_size(&triple.lam, &triple.mu, &triple.nu);
                    (
                        murnaghan_embedding(&triple.lam, &triple.mu, &triple.nu, n)?,
                        "embedding",
                    )
                }
            };
            Ok(Output::new(triple_input(triple), value, name))
        }
        Command::Redkron { triple } => {
            let value = reduced_kron(&triple.lam, &triple.mu, &triple.nu)?;
            let mut out = Output::new(triple_input(triple), value, "auto");
            out.extra.insert(
                "n".into(),
                json!(stable_size(&triple.lam, &triple.mu, &triple.nu)),
            );
            Ok(out)
        }
        Command::Tables { a, b, c } => {
            let (mut a, mut b, mut c) =
                (parse_marginal(a)?, parse_marginal(b)?, parse_marginal(c)?);
            let len = a.len().max(b.len()).max(c.len());
            for v in [&mut a, &mut b, &mut c] {
                v.resize(len, 0);
            }
            let mut input = Map::new();
            input.insert("a".into(), json!(join(&a)));
            input.insert("b".into(), json!(join(&b)));
            input.insert("c".into(), json!(join(&c)));
            let count = count_tables(&Marginals::new(a, b, c)?);
            Ok(Output::new(input, count, "dp"))
        }
        Command::Verify { max_n } => {
            let mut lines = Vec::new();
            let reports = verify::run(*max_n, |r: &SuiteReport| {
                let line = match &r.failure {
                    None => format!("PASS {} ({} checks)", r.name, r.cases),
                    Some(f) => format!("FAIL {}: {f}", r.name),
                };
                lines.push(line);
            })?;
            let total: u64 = reports.iter().map(|r| r.cases).sum();
            let failed = reports.iter().filter(|r| !r.passed()).count();
            let mut input = Map::new();
            input.insert("max_n".into(), json!(max_n));
            let summary = if failed == 0 { "pass" } else { "fail" };
            let mut out = Output::new(input, summary, "verify");
            out.extra.insert("checks".into(), json!(total));
            out.extra.insert(
                "suites".into(),
                Value::Array(
                    reports
                        .iter()
                        .map(|r| json!({"name": r.name, "cases": r.cases, "failure": r.failure}))
                        .collect(),
                ),
            );
            lines.push(format!("{total} checks, {failed} failing suites"));
            out.text_before = lines;
            out.exit = if failed == 0 { 0 } else { 2 };
            Ok(out)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
        {
            eprintln!("error: cannot configure {threads} threads: {e}");
            return ExitCode::from(1);
        }
    }
    characters::set_cache_capacity(cli.cache_capacity);
    contingency::set_cache_capacity(cli.cache_capacity);
    let cache_path = cli
        .char_cache
        .clone()
        .or_else(|| std::env::var_os(CHAR_CACHE_ENV).map(PathBuf::from));
    if let Some(path) = &cache_path {
        if path.exists() {
            if let Err(e) = characters::load_cache_file(path) {
                eprintln!("error: reading character cache {}: {e}", path.display());
                return ExitCode::from(1);
            }
        }
    }

    let start = Instant::now();
    let out = match run(&cli.command) {
        Ok(out) => out,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let millis = start.elapsed().as_millis() as u64;

    if cli.json {
        let mut obj = Map::new();
        obj.insert("input".into(), Value::Object(out.input));
        obj.insert("result".into(), json!(out.result));
        obj.insert("method".into(), json!(out.method));
        obj.insert("millis".into(), json!(millis));
        obj.extend(out.extra);
        println!("{}", Value::Object(obj));
    } else {
        for line in &out.text_before {
            println!("{line}");
        }
        println!("{}", out.result);
    }

    if let Some(path) = &cache_path {
        if let Err(e) = characters::save_cache_file(path) {
            eprintln!("error: writing character cache {}: {e}", path.display());
            return ExitCode::from(1);
        }
    }
    ExitCode::from(out.exit)
}
