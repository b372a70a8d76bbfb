//! `subpat`: a client of the subpat service. Without `--server` it starts an
//! in-process service on a loopback port and talks to that.
//!
//! Exit codes: 0 success, true or present; 1 false, absent or disagreement;
//! 2 invalid input; 3 resource or internal error.

mod render;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use subpat_api::*;
use subpat_client::{Client, ClientError};
use subpat_core::corpus::{CorpusKind, CorpusSpec, Count};
use subpat_core::hardness::Digraph;
use subpat_core::matcher::Strategy;
use subpat_core::patterns::PatternJson;
use tokio::net::TcpListener;

#[derive(Parser)]
#[command(name = "subpat", version, about = "Subword patterns, syntactic monoids and FO² alternation levels")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Configuration budget per pattern search.
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Seed for random corpora and random digraphs.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Complete partial deterministic automata with a non-final sink.
    #[arg(long, global = true)]
    complete: bool,
    /// Service root URL; an in-process service is used when absent.
    #[arg(long, global = true, env = "SUBPAT_SERVER")]
    server: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum EngineArg {
    Pattern,
    Algebra,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Auto,
    Shared,
    PerAssignment,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Dfa,
    Cm,
}

impl From<KindArg> for CorpusKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Dfa => CorpusKind::Dfa,
            KindArg::Cm => CorpusKind::Cm,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check an automaton file; Büchi automata must be Carton-Michel.
    Validate { file: PathBuf },
    /// Decide the Σ² and FO² levels of the accepted language.
    Classify {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_MAX_LEVEL)]
        max_level: u32,
        #[arg(long, value_enum, default_value_t = EngineArg::Pattern)]
        engine: EngineArg,
    },
    /// Decide whether a pattern is present, printing a witness if it is.
    CheckPattern {
        #[arg(long)]
        automaton: PathBuf,
        /// A built-in name such as `builtin:da`, or a pattern file.
        #[arg(long)]
        pattern: String,
        #[arg(long, value_enum)]
        strategy: Option<StrategyArg>,
    },
    /// Built-in patterns.
    #[command(subcommand)]
    Pattern(PatternCommand),
    /// Ordered syntactic monoids with Green classes and variety memberships.
    Monoid {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_MAX_LEVEL)]
        max_level: u32,
    },
    /// Test corpora.
    #[command(subcommand)]
    Corpus(CorpusCommand),
    /// Compare the pattern engine with the algebra engine.
    Crosscheck {
        /// Automaton files to check, in addition to any corpus.
        files: Vec<PathBuf>,
        #[command(flatten)]
        corpus: CorpusArgs,
        #[arg(long, default_value_t = DEFAULT_MAX_LEVEL)]
        max_level: u32,
        /// Also inject a known fault and require it to be detected.
        #[arg(long)]
        self_test: bool,
    },
    /// Reachability reduction instances.
    #[command(subcommand)]
    Hardness(HardnessCommand),
}

#[derive(Subcommand)]
enum PatternCommand {
    /// Print a built-in pattern with its well-formedness flags.
    Gen { name: String },
    /// List the built-in pattern names.
    List,
}

#[derive(Args)]
struct CorpusArgs {
    #[arg(long, value_enum)]
    kind: Option<KindArg>,
    #[arg(long, default_value_t = 2)]
    states: usize,
    #[arg(long, default_value_t = 2)]
    letters: usize,
    /// A number, or `exhaustive` for every DFA of the size.
    #[arg(long, default_value = "exhaustive")]
    count: String,
}

impl CorpusArgs {
    fn spec(&self, seed: u64) -> Result<Option<CorpusSpec>, Failure> {
        let Some(kind) = self.kind else { return Ok(None) };
        let count = if self.count == "exhaustive" {
            Count::Exhaustive
        } else {
            Count::Exactly(self.count.parse().map_err(|_| Failure::invalid(format!("bad count `{}`", self.count)))?)
        };
        Ok(Some(CorpusSpec { kind: kind.into(), n_states: self.states, alphabet_size: self.letters, count, seed }))
    }
}

#[derive(Subcommand)]
enum CorpusCommand {
    /// Generate a corpus; the seed is the global `--seed`.
    Gen {
        #[command(flatten)]
        corpus: CorpusArgs,
        /// Also write each automaton to `DIR/NNNNN.json`.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum HardnessCommand {
    /// Build the reduction automaton for reachability of `--to` from `--from`.
    Gen {
        /// Digraph file `{"vertices": [...], "edges": [[u, v], ...]}`.
        #[arg(long, conflicts_with = "random")]
        graph: Option<PathBuf>,
        /// Random digraph on this many vertices `v0..`, from the global seed.
        #[arg(long)]
        random: Option<usize>,
        /// Edge probability of the random digraph.
        #[arg(long, default_value_t = 0.15)]
        edge_probability: f64,
        /// Start vertex; the first vertex by default.
        #[arg(long)]
        from: Option<String>,
        /// Target vertex; the last vertex by default.
        #[arg(long)]
        to: Option<String>,
        #[arg(long, value_enum, default_value_t = KindArg::Dfa)]
        kind: KindArg,
        /// Base automaton whose language lacks the property.
        #[arg(long)]
        bad: Option<PathBuf>,
    },
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn invalid(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }
}

impl From<ClientError> for Failure {
    fn from(e: ClientError) -> Self {
        let code = match e.class() {
            ErrorClass::Invalid => 2,
            ErrorClass::Resource | ErrorClass::Internal => 3,
        };
        Failure { code, message: e.to_string() }
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))
}

fn pattern_arg(spec: &str) -> Result<PatternArg, Failure> {
    if spec.starts_with("builtin:") {
        Ok(PatternArg::Name(spec.to_string()))
    } else {
        Ok(PatternArg::Inline(read_json::<PatternJson>(Path::new(spec))?))
    }
}

/// Prints `value` in the chosen format and returns the exit code.
fn emit<T: Serialize>(format: Format, value: &T, text: impl FnOnce(&T) -> String, ok: bool) -> Result<u8, Failure> {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(value).expect("responses serialize")),
        Format::Text => print!("{}", text(value)),
    }
    Ok(if ok { 0 } else { 1 })
}

async fn run(cli: Cli, client: &Client) -> Result<u8, Failure> {
    let g = &cli.global;
    let f = g.format;
    match cli.command {
        Command::Validate { file } => {
            let r = client.validate(&ValidateRequest { automaton: read_json(&file)?, complete: g.complete }).await?;
            emit(f, &r, render::validate, r.valid)
        }
        Command::Classify { file, max_level, engine } => {
            let engine = match engine {
                EngineArg::Pattern => EngineChoice::Pattern,
                EngineArg::Algebra => EngineChoice::Algebra,
                EngineArg::Both => EngineChoice::Both,
            };
            let req = ClassifyRequest { automaton: read_json(&file)?, max_level, engine, complete: g.complete, budget: g.budget };
            let r = client.classify(&req).await?;
            emit(f, &r, render::classify, r.disagreements.is_empty())
        }
        Command::CheckPattern { automaton, pattern, strategy } => {
            let req = CheckPatternRequest {
                automaton: read_json(&automaton)?,
                pattern: pattern_arg(&pattern)?,
                complete: g.complete,
                budget: g.budget,
                strategy: strategy.map(|s| match s {
                    StrategyArg::Auto => Strategy::Auto,
                    StrategyArg::Shared => Strategy::Shared,
                    StrategyArg::PerAssignment => Strategy::PerAssignment,
                }),
            };
            let r = client.check_pattern(&req).await?;
            emit(f, &r, render::check_pattern, r.present)
        }
        Command::Pattern(PatternCommand::Gen { name }) => {
            let r = client.pattern_gen(&PatternGenRequest { name }).await?;
            emit(f, &r, render::pattern_gen, true)
        }
        Command::Pattern(PatternCommand::List) => {
            let r = client.patterns().await?;
            emit(f, &r, |names| names.iter().map(|n| format!("{n}\n")).collect(), true)
        }
        Command::Monoid { file, max_level } => {
            let r = client.monoid(&MonoidRequest { automaton: read_json(&file)?, max_level, complete: g.complete }).await?;
            emit(f, &r, render::monoid, true)
        }
        Command::Corpus(CorpusCommand::Gen { corpus, out }) => {
            let spec = corpus.spec(g.seed)?.ok_or_else(|| Failure::invalid("--kind is required"))?;
            let r = client.corpus_gen(&CorpusRequest { spec }).await?;
            if let Some(dir) = out {
                write_corpus(&dir, &r.automata)?;
            }
            emit(f, &r, render::corpus, true)
        }
        Command::Crosscheck { files, corpus, max_level, self_test } => {
            let automata = files.iter().map(|p| read_json(p)).collect::<Result<Vec<AutomatonJson>, _>>()?;
            let corpus = corpus.spec(g.seed)?;
            if automata.is_empty() && corpus.is_none() && !self_test {
                return Err(Failure::invalid("nothing to check: give files, --kind, or --self-test"));
            }
            let req = CrosscheckRequest { automata, corpus, max_level, complete: g.complete, budget: g.budget, self_test };
            let r = client.crosscheck(&req).await?;
            emit(f, &r, render::crosscheck, r.is_clean())
        }
        Command::Hardness(HardnessCommand::Gen { graph, random, edge_probability, from, to, kind, bad }) => {
            let digraph = match (graph, random) {
                (Some(path), _) => read_json::<Digraph>(&path)?,
                (None, Some(n)) if n > 0 && (0.0..=1.0).contains(&edge_probability) => {
                    Digraph::random(n, edge_probability, &mut ChaCha8Rng::seed_from_u64(g.seed))
                }
                (None, Some(_)) => return Err(Failure::invalid("--random needs n > 0 and a probability in [0, 1]")),
                (None, None) => return Err(Failure::invalid("give --graph FILE or --random N")),
            };
            let first = digraph.vertices.first().cloned().ok_or_else(|| Failure::invalid("the digraph has no vertices"))?;
            let last = digraph.vertices.last().cloned().unwrap_or_default();
            let req = HardnessRequest {
                from: from.unwrap_or(first),
                to: to.unwrap_or(last),
                digraph,
                kind: kind.into(),
                bad: bad.map(|p| read_json(&p)).transpose()?,
            };
            let r = client.hardness_gen(&req).await?;
            emit(f, &r, render::hardness, true)
        }
    }
}

fn write_corpus(dir: &Path, automata: &[AutomatonJson]) -> Result<(), Failure> {
    let io = |e: std::io::Error| Failure { code: 3, message: format!("{}: {e}", dir.display()) };
    std::fs::create_dir_all(dir).map_err(io)?;
    for (i, a) in automata.iter().enumerate() {
        let text = serde_json::to_string_pretty(a).expect("automata serialize") + "\n";
        std::fs::write(dir.join(format!("{i:05}.json")), text).map_err(io)?;
    }
    Ok(())
}

#[tokio::main]
async fn main() -> ExitCode {
    let cli = Cli::parse();
    let client = match &cli.global.server {
        Some(url) => Client::new(url.clone()),
        None => match TcpListener::bind("127.0.0.1:0").await.and_then(|l| Ok((l.local_addr()?, l))) {
            Ok((addr, listener)) => {
                tokio::spawn(subpat_service::serve(listener));
                Client::new(format!("http://{addr}"))
            }
            Err(e) => {
                eprintln!("error: cannot start the in-process service: {e}");
                return ExitCode::from(3);
            }
        },
    };
    match run(cli, &client).await {
        Ok(code) => ExitCode::from(code),
        Err(fail) => {
            eprintln!("error: {}", fail.message);
            ExitCode::from(fail.code)
        }
    }
}
