use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use loopforge::cache::{Oracle, OracleCache, CACHE_ENV, DEFAULT_CACHE_DIR};
use loopforge::error::Error;
use loopforge::extremal::EnumerationConfig;
use loopforge::oracle::DEFAULT_BUDGET;
use loopforge::report::{self, ErrorReport};
use loopforge::word::Hemisphere;

#[derive(Parser)]
#[command(
    name = "loopforge",
    version,
    about = "Loop classes, crossing words and intersection numbers in the punctured plane"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Number of punctures.
    #[arg(long, global = true, default_value_t = 2)]
    n: u16,
    /// Oracle search budget (search nodes per query).
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
    budget: u64,
    /// Cache directory (overrides LOOPFORGE_CACHE).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Recompute everything and leave the cache untouched.
    #[arg(long, global = true)]
    no_cache: bool,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Override the word length cap used by enumerate, graph and growth.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(2..))]
    length_cap: Option<u64>,
    /// Worker threads for enumerate, graph and growth.
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Side {
    N,
    S,
}

impl From<Side> for Hemisphere {
    fn from(s: Side) -> Self {
        match s {
            Side::N => Hemisphere::North,
            Side::S => Hemisphere::South,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Reduce a word to its αα-free normal form.
    Reduce { word: String },
    /// Canonical homotopy class of a word.
    Canon {
        word: String,
        /// Hemisphere of the first arc (v-words).
        #[arg(long, value_enum, default_value_t = Side::N)]
        hemisphere: Side,
    },
    /// Whether two words describe homotopic loops.
    Equiv {
        first: String,
        second: String,
        #[arg(long, value_enum, default_value_t = Side::N)]
        h1: Side,
        #[arg(long, value_enum, default_value_t = Side::N)]
        h2: Side,
    },
    /// Minimal self-intersection number of a word.
    Selfint { word: String },
    /// Minimal number of crossings between two loop classes.
    Pairint {
        first: String,
        second: String,
        #[arg(long, value_enum, default_value_t = Side::N)]
        h1: Side,
        #[arg(long, value_enum, default_value_t = Side::N)]
        h2: Side,
    },
    /// Closed-form family size bounds.
    Bounds {
        #[arg(long)]
        k: u64,
    },
    /// Core word and expansion vectors.
    Decompose { word: String },
    /// Number of expansion vectors of length l with winding bound below k.
    CountExpansions {
        #[arg(long)]
        l: u64,
        #[arg(long)]
        k: u64,
        /// Emit rows for every l' <= l and k' <= k.
        #[arg(long)]
        sweep: bool,
    },
    /// All classes with fewer than k self-intersections (n = 1 or 2).
    Enumerate {
        #[arg(long)]
        k: u64,
        /// Also write the catalog as JSON lines to this file.
        #[arg(long)]
        catalog: Option<PathBuf>,
    },
    /// Pairwise compatibility graph of the enumerated classes and clique bounds.
    Graph {
        #[arg(long)]
        k: u64,
    },
    /// Class counts for k = 1..=kmax next to the closed-form bounds.
    Growth {
        #[arg(long)]
        kmax: u64,
    },
}

#[derive(Serialize)]
struct CatalogRow<'a> {
    word: &'a str,
    polarity: Option<String>,
    selfint: u32,
}

#[derive(Serialize)]
struct PairRow<'a> {
    first: &'a str,
    second: &'a str,
    status: &'static str,
    value: Option<u32>,
}

enum Output {
    Json(String, bool),
    Csv(String, bool),
}

fn json<T: Serialize>(value: &T, exact: bool) -> anyhow::Result<Output> {
    Ok(Output::Json(serde_json::to_string_pretty(value)?, exact))
}

fn csv_rows<T: Serialize>(rows: impl IntoIterator<Item = T>) -> anyhow::Result<Output> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    Ok(Output::Csv(String::from_utf8(w.into_inner()?)?, true))
}

fn oracle(cli: &Cli) -> anyhow::Result<Oracle> {
    if cli.no_cache {
        return Ok(Oracle::new(cli.budget, None));
    }
    let dir = cli
        .cache_dir
        .clone()
        .or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from(DEFAULT_CACHE_DIR));
    let cache = OracleCache::open(&dir).with_context(|| format!("opening cache at {}", dir.display()))?;
    Ok(Oracle::new(cli.budget, Some(cache)))
}

fn run(cli: &Cli) -> anyhow::Result<Output> {
    let n = cli.n;
    let config = EnumerationConfig { budget: cli.budget, length_cap: cli.length_cap.map(|c| c as usize) };
    let tabular_only = |what: &str| Error::Precondition(format!("csv output is not available for {what}"));
    if cli.format == Format::Csv
        && !matches!(
            cli.command,
            Command::CountExpansions { .. }
                | Command::Enumerate { .. }
                | Command::Graph { .. }
                | Command::Growth { .. }
        )
    {
        return Err(tabular_only("this command").into());
    }
    match &cli.command {
        Command::Reduce { word } => json(&report::reduce(word, n)?, true),
        Command::Canon { word, hemisphere } => json(&report::canon(word, n, (*hemisphere).into())?, true),
        Command::Equiv { first, second, h1, h2 } => {
            json(&report::equiv(first, (*h1).into(), second, (*h2).into(), n)?, true)
        }
        Command::Selfint { word } => {
            let r = report::selfint(word, n, &oracle(cli)?)?;
            let exact = r.exact;
            json(&r, exact)
        }
        Command::Pairint { first, second, h1, h2 } => {
            let r = report::pairint(first, (*h1).into(), second, (*h2).into(), n, cli.budget)?;
            let exact = r.exact;
            json(&r, exact)
        }
        Command::Bounds { k } => json(&report::bounds(n as u64, *k)?, true),
        Command::Decompose { word } => json(&report::decompose_word(word, n)?, true),
        Command::CountExpansions { l, k, sweep } => match (cli.format, sweep) {
            (Format::Json, false) => json(&report::count_expansions(*l, *k)?, true),
            (Format::Json, true) => json(&report::count_sweep(*l, *k)?, true),
            (Format::Csv, false) => csv_rows([loopforge::expansion::count_row(*l, *k)]),
            (Format::Csv, true) => csv_rows(report::count_sweep(*l, *k)?),
        },
        Command::Enumerate { k, catalog } => {
            let r = report::enumerate(n, *k, config)?;
            if let Some(path) = catalog {
                let mut f = std::fs::File::create(path).with_context(|| format!("creating {}", path.display()))?;
                for line in &r.classes {
                    writeln!(f, "{}", serde_json::to_string(line)?)?;
                }
            }
            match cli.format {
                Format::Json => json(&r, true),
                Format::Csv => csv_rows(r.classes.iter().map(|c| CatalogRow {
                    word: &c.word,
                    polarity: c.polarity.map(|h| h.to_string()),
                    selfint: c.selfint,
                })),
            }
        }
        Command::Graph { k } => {
            let r = report::graph(n, *k, config)?;
            match cli.format {
                Format::Json => {
                    let exact = r.exact;
                    json(&r, exact)
                }
                Format::Csv => csv_rows(r.pairs.iter().map(|p| {
                    use loopforge::extremal::PairValue::*;
                    let (status, value) = match p.value {
                        Below { value } => ("below", Some(value)),
                        AtLeast { cutoff } => ("atLeast", Some(cutoff)),
                        Unknown { upper } => ("unknown", upper),
                    };
                    PairRow { first: &p.first, second: &p.second, status, value }
                }))
                .map(|o| match o {
                    Output::Csv(text, _) => Output::Csv(text, r.exact),
                    other => other,
                }),
            }
        }
        Command::Growth { kmax } => {
            let rows = report::growth(*kmax, config)?;
            match cli.format {
                Format::Json => json(&rows, true),
                Format::Csv => csv_rows(rows),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build_global() {
            eprintln!("warning: {e}");
        }
    }
    let mut out = std::io::stdout().lock();
    match run(&cli) {
        Ok(Output::Json(value, exact)) => {
            let _ = writeln!(out, "{value}");
            if exact {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(3)
            }
        }
        Ok(Output::Csv(text, exact)) => {
            let _ = write!(out, "{text}");
            if exact {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(3)
            }
        }
        Err(e) => {
            let lib = e.downcast_ref::<Error>().cloned().unwrap_or_else(|| Error::Io(format!("{e:#}")));
            let report = ErrorReport::from_error(&lib);
            let _ = writeln!(out, "{}", serde_json::to_string_pretty(&report).expect("json values print"));
            match lib {
                Error::BudgetExhausted(_) => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}
