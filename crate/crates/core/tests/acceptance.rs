//! Acceptance run: one line per criterion, nonzero exit if any fails.

mod support;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use dynwg::dynweyl::{rank1_coefficient, rho_shift, simple_reflection_block, word_operator_block};
use dynwg::geomsatake::{costalk_weights, Chamber};
use dynwg::ratfun::{LinearForm, RatFun};
use dynwg::rep::cache::IrrepCache;
use dynwg::rep::oracle::weyl_dimension;
use dynwg::rootdata::{LieType, RootSystem, Weight};
use dynwg::verify::{self, structural_violations, Execution, SuiteConfig, SuiteReport};
use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 20_240_601;

struct Outcome {
    passed: bool,
    summary: String,
}

fn t(s: &str) -> LieType {
    s.parse().unwrap()
}

fn w(v: &[i64]) -> Weight {
    Weight(v.to_vec())
}

fn suite_summary(reports: &[SuiteReport]) -> (bool, String) {
    let total: usize = reports.iter().map(|r| r.total).sum();
    let failed: usize = reports.iter().map(|r| r.failed).sum();
    let mut s = format!("{total} cases, {failed} failed");
    for r in reports {
        for c in r.failures().take(3) {
            s.push_str(&format!("\n      {}: {}", c.key, c.detail));
        }
    }
    (failed == 0 && total > 0, s)
}

fn criterion_1(cfg: &SuiteConfig) -> Outcome {
    let r = verify::satake_rank1(8, cfg);
    let (passed, summary) = suite_summary(&[r]);
    Outcome { passed, summary }
}

fn criterion_2() -> Outcome {
    let x = LinearForm::x_var(1, 0);
    let mut bad = Vec::new();
    let c = rank1_coefficient(2, 1, &x).unwrap();
    if c != RatFun::parse("-(x1+2*h)/x1", 1).unwrap() {
        bad.push(format!("coefficient {c}"));
    }
    let v = dynwg::rep::Irrep::build(t("A1"), &w(&[2]), 10).unwrap();
    let block = simple_reflection_block(&v, 1, &w(&[0]), &x).unwrap();
    let shifted = rho_shift(&block).unwrap();
    if shifted.matrix[0][0] != RatFun::parse("(x1-h)/(-x1-h)", 1).unwrap() {
        bad.push(format!("shifted {}", shifted.matrix[0][0]));
    }
    let e = costalk_weights(2, 0, Chamber::E).unwrap();
    let s = costalk_weights(2, 0, Chamber::S).unwrap();
    if e.weights() != [LinearForm::from_ints(&[-1], -1)] || s.weights() != [LinearForm::from_ints(&[1], -1)] {
        bad.push("costalk weights".into());
    }
    Outcome { passed: bad.is_empty(), summary: if bad.is_empty() { "4 exact matches".into() } else { bad.join("; ") } }
}

fn cocycle_targets() -> Vec<(LieType, Weight)> {
    vec![
        (t("A2"), w(&[1, 1])),
        (t("A2"), w(&[1, 0])),
        (t("B2"), w(&[1, 0])),
        (t("B2"), w(&[0, 1])),
        // Both G2 fundamentals: the 7-dimensional one is V(1,0) here (alpha_1 short).
        (t("G2"), w(&[1, 0])),
        (t("G2"), w(&[0, 1])),
    ]
}

fn criterion_3(cfg: &SuiteConfig) -> Outcome {
    let g2 = RootSystem::new(t("G2"));
    let seven = weyl_dimension(&g2, &w(&[1, 0]));
    let reports: Vec<SuiteReport> = cocycle_targets().iter().map(|(ty, hw)| verify::cocycle(*ty, hw, cfg)).collect();
    let (passed, summary) = suite_summary(&reports);
    Outcome { passed: passed && seven == BigInt::from(7), summary: format!("{summary}; G2 V(1,0) has dimension {seven}") }
}

fn criterion_4(cfg: &SuiteConfig) -> Outcome {
    let reports = vec![verify::levi(t("A2"), &w(&[1, 1]), cfg), verify::levi(t("B2"), &w(&[0, 1]), cfg)];
    let (passed, summary) = suite_summary(&reports);
    Outcome { passed, summary }
}

fn criterion_5(cfg: &SuiteConfig) -> Outcome {
    let reports: Vec<SuiteReport> = ["A1", "A2", "A3", "B2", "G2"].iter().map(|ty| verify::rep(t(ty), cfg)).collect();
    let (passed, summary) = suite_summary(&reports);
    Outcome { passed, summary }
}

/// Every block produced for criteria 3 and 4, checked for shape,
/// denominator locality and an `x`-free classical limit.
fn criterion_6(cfg: &SuiteConfig) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut blocks = 0;
    let mut bad = Vec::new();
    for (ty, hw) in cocycle_targets() {
        let v = cfg.irrep(ty, &hw).unwrap();
        let rs = v.roots();
        let words = rs.all_reduced_words(&rs.canonical_word(&rs.longest_element()), cfg.word_cap).unwrap();
        for mu in v.dominant_weights() {
            for word in &words {
                let b = word_operator_block(&v, word, &mu).unwrap();
                bad.extend(structural_violations(rs, &v, &b, &mut rng).into_iter().map(|e| format!("{ty} V{hw} {mu} {word}: {e}")));
                blocks += 1;
            }
        }
    }
    for (ty, hw) in [(t("A2"), w(&[1, 1])), (t("B2"), w(&[0, 1]))] {
        let v = cfg.irrep(ty, &hw).unwrap();
        for i in 1..=v.rank() {
            for mu in v.dominant_weights() {
                let b = simple_reflection_block(&v, i, &mu, &LinearForm::x_var(v.rank(), i - 1)).unwrap();
                bad.extend(structural_violations(v.roots(), &v, &b, &mut rng).into_iter().map(|e| format!("{ty} V{hw} s{i} {mu}: {e}")));
                blocks += 1;
            }
        }
    }
    let mut summary = format!("{blocks} blocks, {} violations", bad.len());
    for b in bad.iter().take(3) {
        summary.push_str(&format!("\n      {b}"));
    }
    Outcome { passed: bad.is_empty() && blocks > 0, summary }
}

fn criterion_7() -> Outcome {
    let tally = support::run_properties(SEED, 10_000);
    let mut summary = format!(
        "{} triples, {} equality pairs, {} substitutions ({} skipped on pole collapse), {} failures",
        tally.triples,
        tally.equal_pairs + tally.unequal_pairs,
        tally.substitutions,
        tally.collapsed,
        tally.failures.len()
    );
    for f in tally.failures.iter().take(3) {
        summary.push_str(&format!("\n      {f}"));
    }
    Outcome { passed: tally.failures.is_empty() && tally.triples == 10_000, summary }
}

fn run(n: usize, title: &str, budget: Duration, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let out = f();
    let elapsed = start.elapsed();
    let in_budget = elapsed <= budget;
    let passed = out.passed && in_budget;
    println!(
        "criterion {n} [{}] {title}: {} ({:.2} s, budget {} s{})",
        if passed { "PASS" } else { "FAIL" },
        out.summary,
        elapsed.as_secs_f64(),
        budget.as_secs(),
        if in_budget { "" } else { ", over budget" }
    );
    passed
}

fn main() -> ExitCode {
    let cache_dir = tempfile::tempdir().expect("temporary cache directory");
    let cfg = SuiteConfig {
        seed: SEED,
        word_cap: 32,
        dim_cap: dynwg::rep::DEFAULT_DIM_CAP,
        exec: Execution::default(),
        cache: Some(IrrepCache::new(cache_dir.path())),
    };
    // Criterion 3 is timed against a warm cache.
    for (ty, hw) in cocycle_targets() {
        cfg.irrep(ty, &hw).expect("warm cache");
    }
    let rep_cfg = SuiteConfig { dim_cap: 200, cache: Some(IrrepCache::new(cache_dir.path().join("cold"))), ..cfg.clone() };

    let secs = Duration::from_secs;
    let results = [
        run(1, "rank-one main theorem sweep, lambda <= 8", secs(1), || criterion_1(&cfg)),
        run(2, "printed formula spot checks", secs(1), criterion_2),
        run(3, "reduced-word independence for the longest element", secs(60), || criterion_3(&cfg)),
        run(4, "Levi restriction identity", secs(10), || criterion_4(&cfg)),
        run(5, "representation integrity, dim <= 200", secs(120), || criterion_5(&rep_cfg)),
        run(6, "structural invariants of produced blocks", secs(60), || criterion_6(&cfg)),
        run(7, "rational function arithmetic properties", secs(30), criterion_7),
    ];
    let failed = results.iter().filter(|&&p| !p).count();
    println!("acceptance: {} of {} criteria passed", results.len() - failed, results.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
