//! The `prunres` command line.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::complexes::{complex_diff, BasedComplex, HomologyReport};
use crate::determinantal::{eagon_northcott, is_ideal_zero, SparsePattern};
use crate::error::Error;
use crate::groebner::{initial_ideal, is_groebner, nonzero_minors};
use crate::invariants::perimeter_stats;
use crate::monomial::{codim, lcm_betti, minimal_primes, MonomialIdeal};
use crate::pruning::{
    prune_by_names, resolve_sparse_determinantal, verify, HomologyCheck, Verification,
};
use crate::ring::{Field, TermOrder};

#[derive(Debug, Parser)]
#[command(
    name = "prunres",
    version,
    about = "Minimal free resolutions of sparse determinantal ideals"
)]
pub struct Cli {
    /// Coefficient field: `rational` or `gf:<p>`.
    #[arg(long, global = true, default_value = "gf:32003", value_parser = parse_field)]
    pub field: Field,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Resolve S/I_k(X') by pruning the Eagon-Northcott complex, and verify it.
    Resolve {
        pattern: PathBuf,
        /// Total degree bound for the homology check.
        #[arg(long)]
        truncate: Option<i64>,
        /// Print the complex as well.
        #[arg(long)]
        show_complex: bool,
    },
    /// The Eagon-Northcott complex of a generic k x n matrix.
    En { k: usize, n: usize },
    /// Prune a complex (JSON) by the given variables.
    Prune {
        complex: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        kill: Vec<String>,
    },
    /// Initial ideal of the nonzero maximal minors.
    Initial {
        pattern: PathBuf,
        /// `lex`, `grevlex` or `weight:w1,w2,...[;lex|grevlex]`.
        #[arg(long, default_value = "lex")]
        order: String,
    },
    /// Check composition, minimality and truncated homology of a complex.
    Verify {
        complex: PathBuf,
        #[arg(long)]
        truncate: Option<i64>,
    },
    /// Betti table of a monomial ideal from its lcm lattice.
    OracleBetti { ideal: PathBuf },
    /// Minimal primes and codimension of a squarefree monomial ideal.
    Primes { ideal: PathBuf },
    /// Zero-rectangle statistics of a pattern.
    Info { pattern: PathBuf },
    /// Check that the nonzero minors are a Gröbner basis for sampled orders.
    UgbCheck {
        pattern: PathBuf,
        /// Number of orders: lex, grevlex, then random weights drawn from
        /// `--seed`.
        #[arg(long, default_value_t = 10)]
        orders: usize,
    },
    /// Compare two complexes up to signed permutations of their bases.
    Diff { left: PathBuf, right: PathBuf },
}

fn parse_field(s: &str) -> Result<Field, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Input(#[from] Error),

    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },

    /// A check ran and failed; the message names the failing invariant.
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Failed(_) => 1,
            _ => 2,
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn read_pattern(path: &Path) -> CliResult<SparsePattern> {
    Ok(SparsePattern::parse(&read(path)?)?)
}

fn read_complex(path: &Path, field: Option<Field>) -> CliResult<BasedComplex> {
    let value: Value =
        serde_json::from_str(&read(path)?).map_err(|e| Error::Parse(e.to_string()))?;
    Ok(BasedComplex::from_json(&value, field)?)
}

fn read_ideal(path: &Path, field: Field) -> CliResult<MonomialIdeal> {
    Ok(MonomialIdeal::parse_standalone(&read(path)?, field)?)
}

/// Output of a command: text and JSON renderings plus an optional failure.
struct Report {
    text: String,
    json: Value,
    failure: Option<String>,
}

impl Report {
    fn ok(text: String, json: Value) -> Self {
        Report {
            text,
            json,
            failure: None,
        }
    }
}

fn homology_json(h: &HomologyReport) -> Value {
    json!({
        "bound": h.bound,
        "field": h.field.to_string(),
        "positions": h.positions.iter().map(|p| json!({
            "position": p.position,
            "pieces": p.pieces,
            "dimension": p.dimension,
            "kernel": p.kernel,
            "image": p.image,
            "homology": p.homology,
        })).collect::<Vec<_>>(),
        "nonzero": h.nonzero.iter().map(|p| json!({
            "position": p.position,
            "degree": p.degree,
            "total": p.total,
            "homology": p.homology,
        })).collect::<Vec<_>>(),
    })
}

fn verification_json(v: &Verification) -> Value {
    json!({
        "passed": v.passed(),
        "compose_failure": v.compose_failure,
        "minimal": v.minimal,
        "homology": v.homology.as_ref().map(homology_json),
    })
}

/// The first failed check of a verification, phrased for a diagnostic.
fn verification_failure(v: &Verification) -> Option<String> {
    if let Some(i) = v.compose_failure {
        return Some(format!("not a complex: A_{} A_{} is nonzero", i - 1, i));
    }
    if !v.minimal {
        return Some("not minimal: a differential has a unit entry".into());
    }
    let piece = v.homology.as_ref()?.first_nonzero_from(1)?;
    Some(format!(
        "homology at position {}, degree {}, dim {}",
        piece.position, piece.total, piece.homology
    ))
}

fn verification_text(v: &Verification) -> String {
    let mut s = String::new();
    let mark = |ok: bool| if ok { "ok" } else { "FAILED" };
    let _ = writeln!(s, "compose: {}", mark(v.compose_failure.is_none()));
    let _ = writeln!(s, "minimal: {}", mark(v.minimal));
    match &v.homology {
        None => {
            let _ = writeln!(s, "homology: skipped");
        }
        Some(h) if h.is_exact_from(1) => {
            let _ = writeln!(
                s,
                "homology (total degree <= {}): exact in positions >= 1",
                h.bound
            );
        }
        Some(h) => {
            for p in h.nonzero.iter().filter(|p| p.position >= 1) {
                let _ = writeln!(
                    s,
                    "homology (total degree <= {}): position {}, degree {}, dim {}",
                    h.bound, p.position, p.total, p.homology
                );
            }
        }
    }
    s
}

fn check_of(truncate: Option<i64>) -> HomologyCheck {
    truncate.map_or(HomologyCheck::Default, HomologyCheck::Bound)
}

fn ranks_text(c: &BasedComplex) -> String {
    let ranks: Vec<String> = c.ranks().iter().map(|r| r.to_string()).collect();
    format!("ranks: {}", ranks.join(" "))
}

fn maps_text(c: &BasedComplex) -> String {
    let mut s = String::new();
    for (i, map) in c.maps().iter().enumerate() {
        let _ = writeln!(s, "A_{}: {} x {}", i + 1, map.nrows(), map.ncols());
        for row in map.rows() {
            let cells: Vec<String> = (0..map.ncols())
                .map(|col| {
                    row.iter()
                        .find(|(c, _)| *c == col)
                        .map_or_else(|| "0".to_string(), |(_, p)| p.to_string())
                })
                .collect();
            let _ = writeln!(s, "  [{}]", cells.join(", "));
        }
    }
    s
}

fn complex_report(c: &BasedComplex) -> CliResult<Report> {
    let betti = c.betti_table()?;
    let text = format!("{}\nbetti:\n{}\n{}", ranks_text(c), betti, maps_text(c));
    Ok(Report::ok(text, c.to_json()))
}

fn resolve(cli: &Cli, pattern: &Path, truncate: Option<i64>, show: bool) -> CliResult<Report> {
    let p = read_pattern(pattern)?;
    let res = resolve_sparse_determinantal(&p, cli.field, check_of(truncate))?;
    let betti = res.betti()?;
    let mut text = format!(
        "pattern:\n{}{}\nbetti:\n{}\n{}",
        res.pattern,
        ranks_text(&res.complex),
        betti,
        verification_text(&res.verification)
    );
    if show {
        text.push_str(&maps_text(&res.complex));
    }
    let json = json!({
        "pattern": res.pattern.to_string(),
        "ranks": res.complex.ranks(),
        "betti": betti.to_json(),
        "verification": verification_json(&res.verification),
        "complex": res.complex.to_json(),
    });
    Ok(Report {
        text,
        json,
        failure: verification_failure(&res.verification),
    })
}

fn initial(cli: &Cli, pattern: &Path, order: &str) -> CliResult<Report> {
    let p = read_pattern(pattern)?;
    let order: TermOrder = order.parse()?;
    let ideal = initial_ideal(&p, &order, cli.field)?;
    let betti = lcm_betti(&ideal)?;
    let gens: Vec<String> = ideal
        .to_polynomials()
        .iter()
        .map(|g| g.to_string())
        .collect();
    let text = format!("order: {order}\ninitial ideal: {ideal}\nbetti:\n{betti}\n");
    let json = json!({
        "order": order.to_string(),
        "generators": gens,
        "betti": betti.to_json(),
    });
    Ok(Report::ok(text, json))
}

fn verify_cmd(cli: &Cli, path: &Path, truncate: Option<i64>) -> CliResult<Report> {
    let field = cli_field_override(cli);
    let c = read_complex(path, field)?;
    let v = verify(&c, check_of(truncate))?;
    let text = format!("{}\n{}", ranks_text(&c), verification_text(&v));
    Ok(Report {
        text,
        json: verification_json(&v),
        failure: verification_failure(&v),
    })
}

/// The field given on the command line, unless it is the default, in which
/// case a complex file's own field is kept.
fn cli_field_override(cli: &Cli) -> Option<Field> {
    (cli.field != Field::default()).then_some(cli.field)
}

fn oracle_betti(cli: &Cli, path: &Path) -> CliResult<Report> {
    let ideal = read_ideal(path, cli.field)?;
    let betti = lcm_betti(&ideal)?;
    Ok(Report::ok(
        format!("ideal: {ideal}\nbetti:\n{betti}\n"),
        json!({ "betti": betti.to_json() }),
    ))
}

fn primes(cli: &Cli, path: &Path) -> CliResult<Report> {
    let ideal = read_ideal(path, cli.field)?;
    let primes = minimal_primes(&ideal)?;
    let names: Vec<Vec<String>> = primes
        .iter()
        .map(|p| {
            p.iter()
                .map(|&v| ideal.ring().name(v).to_string())
                .collect()
        })
        .collect();
    let c = codim(&ideal)?;
    let mut text = format!("ideal: {ideal}\ncodim: {c}\nminimal primes:\n");
    for p in &names {
        let _ = writeln!(text, "  ({})", p.join(", "));
    }
    Ok(Report::ok(text, json!({ "codim": c, "primes": names })))
}

fn info(pattern: &Path) -> CliResult<Report> {
    let p = read_pattern(pattern)?;
    let stats = perimeter_stats(&p);
    let zero = is_ideal_zero(&p);
    let limit = 2 * p.n() + 1;
    let status = if zero {
        format!("ideal is zero (perimeter {} > {limit})", stats.perimeter)
    } else {
        format!(
            "ideal is nonzero (perimeter {} <= {limit})",
            stats.perimeter
        )
    };
    let text = format!(
        "{} x {} pattern, {} zero cells\nperimeter of zeros: {}\nzero columns: {}\n{status}\n",
        p.k(),
        p.n(),
        p.zero_count(),
        stats.perimeter,
        stats.zero_columns
    );
    let json = json!({
        "k": p.k(),
        "n": p.n(),
        "perimeter": stats.perimeter,
        "zero_columns": stats.zero_columns,
        "ideal_is_zero": zero,
    });
    Ok(Report::ok(text, json))
}

/// Lex, grevlex, then random weight orders, `count` in total.
pub fn sample_orders(nvars: usize, count: usize, seed: u64) -> Vec<TermOrder> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut orders = vec![TermOrder::Lex, TermOrder::GrevLex];
    while orders.len() < count {
        orders.push(TermOrder::random_weight(nvars, &mut rng));
    }
    orders.truncate(count);
    orders
}

fn ugb_check(cli: &Cli, pattern: &Path, count: usize) -> CliResult<Report> {
    let p = read_pattern(pattern)?;
    let gens = nonzero_minors(&p, cli.field);
    if gens.is_empty() {
        return Err(Error::ZeroIdeal.into());
    }
    let mut text = String::new();
    let mut rows = Vec::new();
    let mut failure = None;
    for order in sample_orders(p.k() * p.n(), count, cli.seed) {
        let check = is_groebner(&gens, &order)?;
        let status = match &check.witness {
            None => "ok".to_string(),
            Some((i, j, r)) => {
                let msg = format!("S-pair ({i}, {j}) under {order} leaves remainder {r}");
                failure.get_or_insert(format!("not a Groebner basis: {msg}"));
                msg
            }
        };
        let _ = writeln!(text, "{order}: {} pairs, {status}", check.pairs_checked);
        rows.push(json!({
            "order": order.to_string(),
            "pairs_checked": check.pairs_checked,
            "groebner": check.is_groebner(),
        }));
    }
    Ok(Report {
        text,
        json: json!({ "minors": gens.len(), "orders": rows }),
        failure,
    })
}

fn diff(cli: &Cli, left: &Path, right: &Path) -> CliResult<Report> {
    let field = cli_field_override(cli);
    let a = read_complex(left, field)?;
    let b = read_complex(right, field)?;
    let report = complex_diff(&a, &b);
    let text = if report.equivalent {
        "equivalent up to signed basis permutation\n".to_string()
    } else {
        format!("different: {}\n", report.reason.clone().unwrap_or_default())
    };
    let failure = (!report.equivalent).then(|| {
        format!(
            "complexes differ: {}",
            report.reason.clone().unwrap_or_default()
        )
    });
    Ok(Report {
        text,
        json: json!({ "equivalent": report.equivalent, "reason": report.reason }),
        failure,
    })
}

fn dispatch(cli: &Cli) -> CliResult<Report> {
    match &cli.command {
        Command::Resolve {
            pattern,
            truncate,
            show_complex,
        } => resolve(cli, pattern, *truncate, *show_complex),
        Command::En { k, n } => complex_report(&eagon_northcott(*k, *n, cli.field)?),
        Command::Prune { complex, kill } => {
            let c = read_complex(complex, cli_field_override(cli))?;
            let names: Vec<&str> = kill.iter().map(String::as_str).collect();
            complex_report(&prune_by_names(&c, &names)?)
        }
        Command::Initial { pattern, order } => initial(cli, pattern, order),
        Command::Verify { complex, truncate } => verify_cmd(cli, complex, *truncate),
        Command::OracleBetti { ideal } => oracle_betti(cli, ideal),
        Command::Primes { ideal } => primes(cli, ideal),
        Command::Info { pattern } => info(pattern),
        Command::UgbCheck { pattern, orders } => ugb_check(cli, pattern, *orders),
        Command::Diff { left, right } => diff(cli, left, right),
    }
}

/// Runs a parsed command line, printing to stdout and stderr, and returns
/// the process exit code.
pub fn run(cli: &Cli) -> ExitCode {
    let outcome = dispatch(cli).and_then(|report| {
        let body = match cli.format {
            Format::Text => report.text,
            Format::Json => {
                serde_json::to_string_pretty(&report.json).expect("JSON values serialize") + "\n"
            }
        };
        // A closed pipe (`prunres ... | head`) is not an error worth reporting.
        let _ = std::io::stdout().lock().write_all(body.as_bytes());
        report
            .failure
            .map_or(Ok(()), |msg| Err(CliError::Failed(msg)))
    });
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
