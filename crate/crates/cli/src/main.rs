//! `dynwg`: compute dynamical Weyl group operators, run the verification
//! suites and manage the representation cache.
//!
//! Exit codes: 0 success, 1 a verification case failed, 2 usage or
//! precondition error.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use dynwg::dynweyl::word_operator_block;
use dynwg::rep::cache::IrrepCache;
use dynwg::rep::{Irrep, DEFAULT_DIM_CAP};
use dynwg::rootdata::{LieType, Weight, WeylWord};
use dynwg::verify::{self, Execution, SuiteConfig, SuiteReport};

#[derive(Parser, Debug)]
#[command(name = "dynwg", version, about = "Exact dynamical Weyl group operators")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Operator block of a reduced word on a dominant weight space.
    Op(OpArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Inspect or manage the representation cache.
    Cache(CacheArgs),
    /// Weights, multiplicities and basis labels of an irreducible representation.
    RepInfo(RepArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args, Debug, Clone)]
struct Common {
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Cache directory (default: $HOME/.cache/dynwg).
    #[arg(long, env = "DYNWG_CACHE")]
    cache_dir: Option<PathBuf>,
    /// Build representations in memory only.
    #[arg(long)]
    no_cache: bool,
    #[arg(long, default_value_t = DEFAULT_DIM_CAP)]
    dim_cap: usize,
}

impl Common {
    fn cache(&self) -> Option<IrrepCache> {
        if self.no_cache {
            return None;
        }
        Some(IrrepCache::new(self.cache_dir.clone().unwrap_or_else(default_cache_dir)))
    }

    fn irrep(&self, t: LieType, hw: &Weight) -> Result<Irrep, String> {
        match self.cache() {
            Some(c) => c.get_or_build(t, hw, self.dim_cap).map_err(|e| e.to_string()),
            None => Irrep::build(t, hw, self.dim_cap).map_err(|e| e.to_string()),
        }
    }
}

fn default_cache_dir() -> PathBuf {
    match std::env::var_os("HOME") {
        Some(home) => PathBuf::from(home).join(".cache").join("dynwg"),
        None => PathBuf::from(".dynwg-cache"),
    }
}

#[derive(Args, Debug)]
struct OpArgs {
    #[arg(long)]
    algebra: LieType,
    #[arg(long, allow_hyphen_values = true)]
    hw: Weight,
    #[arg(long, allow_hyphen_values = true)]
    mu: Weight,
    /// Letters left to right, e.g. `1,2,1`; the empty string is the identity.
    #[arg(long)]
    word: WeylWord,
    #[command(flatten)]
    common: Common,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Suite {
    #[value(name = "satake-rank1")]
    SatakeRank1,
    Cocycle,
    Levi,
    Rep,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(value_enum)]
    suite: Suite,
    #[arg(long)]
    algebra: Option<LieType>,
    #[arg(long, allow_hyphen_values = true)]
    hw: Option<Weight>,
    #[arg(long, default_value_t = 8)]
    lambda_max: i64,
    #[arg(long, default_value_t = 32)]
    word_cap: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Worker threads (default: one per processor; 1 runs sequentially).
    #[arg(long)]
    jobs: Option<usize>,
    #[command(flatten)]
    common: Common,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum CacheAction {
    List,
    Clear,
    Warm,
}

#[derive(Args, Debug)]
struct CacheArgs {
    #[arg(value_enum)]
    action: CacheAction,
    #[arg(long)]
    algebra: Option<LieType>,
    /// Highest weights to build; repeat for several.
    #[arg(long, allow_hyphen_values = true)]
    hw: Vec<Weight>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct RepArgs {
    #[arg(long)]
    algebra: LieType,
    #[arg(long, allow_hyphen_values = true)]
    hw: Weight,
    #[command(flatten)]
    common: Common,
}

enum Failure {
    Usage(String),
    Verification,
}

impl From<String> for Failure {
    fn from(s: String) -> Self {
        Failure::Usage(s)
    }
}

fn print_json(v: &serde_json::Value) {
    let text = serde_json::to_string_pretty(v).expect("serializable report");
    // A closed pipe (e.g. `| head`) is not an error worth a panic.
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn cmd_op(a: &OpArgs) -> Result<(), Failure> {
    let v = a.common.irrep(a.algebra, &a.hw)?;
    let b = word_operator_block(&v, &a.word, &a.mu).map_err(|e| e.to_string())?;
    match a.common.format {
        Format::Json => print_json(&json!(b.to_json())),
        Format::Text => print!("{b}"),
    }
    Ok(())
}

fn require<T: Clone>(x: &Option<T>, flag: &str, suite: &str) -> Result<T, Failure> {
    x.clone().ok_or_else(|| Failure::Usage(format!("verify {suite} needs --{flag}")))
}

fn cmd_verify(a: &VerifyArgs) -> Result<(), Failure> {
    let exec = match a.jobs {
        Some(0) => return Err(Failure::Usage("--jobs must be positive".into())),
        Some(1) => Execution::Sequential,
        Some(n) => Execution::Parallel(Some(n)),
        None => Execution::default(),
    };
    if a.word_cap == 0 || a.common.dim_cap == 0 {
        return Err(Failure::Usage("caps must be positive".into()));
    }
    let cfg = SuiteConfig { seed: a.seed, dim_cap: a.common.dim_cap, word_cap: a.word_cap, exec, cache: a.common.cache() };
    let report: SuiteReport = match a.suite {
        Suite::SatakeRank1 => {
            if a.lambda_max < 0 {
                return Err(Failure::Usage("--lambda-max must be non-negative".into()));
            }
            verify::satake_rank1(a.lambda_max, &cfg)
        }
        Suite::Cocycle => verify::cocycle(require(&a.algebra, "algebra", "cocycle")?, &require(&a.hw, "hw", "cocycle")?, &cfg),
        Suite::Levi => verify::levi(require(&a.algebra, "algebra", "levi")?, &require(&a.hw, "hw", "levi")?, &cfg),
        Suite::Rep => verify::rep(require(&a.algebra, "algebra", "rep")?, &cfg),
    };
    match a.common.format {
        Format::Json => print_json(&json!(report)),
        Format::Text => {
            println!("{} seed={} cases={} failed={}", report.suite, report.seed, report.total, report.failed);
            for c in &report.cases {
                println!("{} {}", if c.passed { "ok  " } else { "FAIL" }, c.key);
            }
        }
    }
    if report.passed {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn cmd_cache(a: &CacheArgs) -> Result<(), Failure> {
    let cache = IrrepCache::new(a.common.cache_dir.clone().unwrap_or_else(default_cache_dir));
    match a.action {
        CacheAction::List => {
            let entries = cache.list().map_err(|e| e.to_string())?;
            match a.common.format {
                Format::Json => print_json(&json!({ "dir": cache.dir(), "entries": entries })),
                Format::Text => {
                    for e in &entries {
                        println!("{} V{} dim {}", e.lie_type, e.hw, e.dim);
                    }
                }
            }
        }
        CacheAction::Clear => {
            let n = cache.clear().map_err(|e| e.to_string())?;
            match a.common.format {
                Format::Json => print_json(&json!({ "dir": cache.dir(), "removed": n })),
                Format::Text => println!("removed {n}"),
            }
        }
        CacheAction::Warm => {
            let t = a.algebra.ok_or_else(|| Failure::Usage("cache warm needs --algebra".into()))?;
            if a.hw.is_empty() {
                return Err(Failure::Usage("cache warm needs at least one --hw".into()));
            }
            let mut built = Vec::new();
            for hw in &a.hw {
                let created = cache.warm(t, hw, a.common.dim_cap).map_err(|e| e.to_string())?;
                built.push(json!({ "type": t, "hw": hw, "created": created, "path": cache.path_for(t, hw) }));
            }
            match a.common.format {
                Format::Json => print_json(&json!({ "dir": cache.dir(), "warmed": built })),
                Format::Text => {
                    for (hw, b) in a.hw.iter().zip(&built) {
                        println!("{t} V{hw} {}", if b["created"] == true { "built" } else { "cached" });
                    }
                }
            }
        }
    }
    Ok(())
}

fn cmd_rep_info(a: &RepArgs) -> Result<(), Failure> {
    let v = a.common.irrep(a.algebra, &a.hw)?;
    match a.common.format {
        Format::Json => {
            let spaces: Vec<_> = v
                .weight_spaces()
                .iter()
                .map(|s| json!({ "weight": s.weight, "depth": s.depth, "multiplicity": s.dim(), "labels": s.labels }))
                .collect();
            print_json(&json!({
                "type": v.lie_type(),
                "hw": v.highest_weight(),
                "dim": v.dim(),
                "dominant_weights": v.dominant_weights(),
                "weights": spaces,
            }));
        }
        Format::Text => {
            println!("{} V{} dim {}", v.lie_type(), v.highest_weight(), v.dim());
            for s in v.weight_spaces() {
                let labels: Vec<String> = s.labels.iter().map(|l| l.to_string()).collect();
                println!("{} x{}  {}", s.weight, s.dim(), labels.join(" | "));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Op(a) => cmd_op(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Cache(a) => cmd_cache(a),
        Command::RepInfo(a) => cmd_rep_info(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Result<Cli, clap::Error> {
        Cli::try_parse_from(std::iter::once("dynwg").chain(args.iter().copied()))
    }

    #[test]
    fn negative_weights_and_empty_words_parse() {
        let cli = parse(&["op", "--algebra", "A2", "--hw", "1,1", "--mu", "-1,2", "--word", ""]).unwrap();
        let Command::Op(a) = cli.command else { panic!("expected op") };
        assert_eq!(a.mu, Weight(vec![-1, 2]));
        assert!(a.word.0.is_empty());
    }

    #[test]
    fn warm_accepts_repeated_weights() {
        let cli = parse(&["cache", "warm", "--algebra", "B2", "--hw", "0,1", "--hw", "1,0"]).unwrap();
        let Command::Cache(a) = cli.command else { panic!("expected cache") };
        assert_eq!(a.hw.len(), 2);
    }

    #[test]
    fn unknown_suite_is_rejected() {
        assert!(parse(&["verify", "nope"]).is_err());
        assert!(parse(&["verify", "satake-rank1"]).is_ok());
    }
}
