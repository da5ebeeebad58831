//! Verification suites over grids of cases, run sequentially or on a worker
//! pool. Reports are sorted by case key, so they do not depend on the
//! execution order.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::dynweyl::{classical_limit, denominator_locality_violations, same_matrix, word_operator_block, OperatorBlock};
use crate::geomsatake::{levi_restriction_check, verify_main_theorem_rank1};
use crate::rep::cache::IrrepCache;
use crate::rep::{dominant_weights_up_to_dim, oracle, Irrep};
use crate::rootdata::{LieType, RootSystem, Weight};

/// How independent cases are executed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    /// `None` uses one worker per processor.
    Parallel(Option<usize>),
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel(None)
        } else {
            Execution::Sequential
        }
    }
}

/// Maps `f` over `items`, keeping the input order in the output.
pub fn par_map<T, R, F>(exec: Execution, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    match exec {
        Execution::Sequential => items.iter().map(f).collect(),
        #[cfg(feature = "parallel")]
        Execution::Parallel(jobs) => {
            use rayon::prelude::*;
            let run = || items.par_iter().map(&f).collect();
            match jobs {
                None => run(),
                Some(n) => rayon::ThreadPoolBuilder::new()
                    .num_threads(n.max(1))
                    .build()
                    .expect("worker pool")
                    .install(run),
            }
        }
        #[cfg(not(feature = "parallel"))]
        Execution::Parallel(_) => items.iter().map(f).collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CaseReport {
    pub key: String,
    pub passed: bool,
    pub detail: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub total: usize,
    pub failed: usize,
    pub passed: bool,
    pub cases: Vec<CaseReport>,
}

impl SuiteReport {
    fn new(suite: &str, seed: u64, mut cases: Vec<CaseReport>) -> Self {
        cases.sort_by(|a, b| a.key.cmp(&b.key));
        let failed = cases.iter().filter(|c| !c.passed).count();
        SuiteReport { suite: suite.to_string(), seed, total: cases.len(), failed, passed: failed == 0, cases }
    }

    pub fn failures(&self) -> impl Iterator<Item = &CaseReport> {
        self.cases.iter().filter(|c| !c.passed)
    }
}

/// Shared settings for the suites.
#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub seed: u64,
    pub dim_cap: usize,
    pub word_cap: usize,
    pub exec: Execution,
    pub cache: Option<IrrepCache>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { seed: 0, dim_cap: crate::rep::DEFAULT_DIM_CAP, word_cap: 32, exec: Execution::default(), cache: None }
    }
}

impl SuiteConfig {
    pub fn irrep(&self, t: LieType, hw: &Weight) -> Result<Irrep, String> {
        match &self.cache {
            Some(c) => c.get_or_build(t, hw, self.dim_cap).map_err(|e| e.to_string()),
            None => Irrep::build(t, hw, self.dim_cap).map_err(|e| e.to_string()),
        }
    }

    /// Deterministic per-case generator.
    fn case_rng(&self, index: usize) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed ^ (index as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15))
    }
}

fn error_case(key: String, e: impl ToString) -> CaseReport {
    CaseReport { key, passed: false, detail: json!({ "error": e.to_string() }) }
}

/// Structural checks on one block: target and shape, denominator
/// locality, and an `x`-independent value at `h = 0`.
pub fn structural_violations(rs: &RootSystem, v: &Irrep, b: &OperatorBlock, rng: &mut ChaCha8Rng) -> Vec<String> {
    let mut bad = Vec::new();
    match rs.act(&b.word, &b.source) {
        Ok(t) if t == b.target => {}
        _ => bad.push(format!("target {} is not {} applied to {}", b.target, b.word, b.source)),
    }
    if b.rows() != v.multiplicity(&b.target)
        || b.cols() != v.multiplicity(&b.source)
        || b.matrix.len() != b.rows()
        || b.matrix.iter().any(|r| r.len() != b.cols())
    {
        bad.push("block shape does not match the weight spaces".into());
    }
    for f in denominator_locality_violations(rs, b) {
        bad.push(format!("non-local denominator {f}"));
    }
    if let Err(e) = classical_limit(b, rng) {
        bad.push(format!("classical limit: {e}"));
    }
    bad
}

fn sorted_keys(lambda_max: i64) -> Vec<(i64, i64)> {
    (0..=lambda_max).flat_map(|l| (0..=l).filter(move |m| (l - m) % 2 == 0).map(move |m| (l, m))).collect()
}

/// Geometric transition against the shifted rank-one coefficient for all
/// `0 <= mu <= lambda <= lambda_max` of equal parity.
pub fn satake_rank1(lambda_max: i64, cfg: &SuiteConfig) -> SuiteReport {
    let grid = sorted_keys(lambda_max);
    let cases = par_map(cfg.exec, &grid, |&(l, m)| {
        let key = format!("lambda={l:02},mu={m:02}");
        match verify_main_theorem_rank1(l, m) {
            Ok(r) => CaseReport { key, passed: r.equal, detail: serde_json::to_value(&r).expect("report") },
            Err(e) => error_case(key, e),
        }
    });
    SuiteReport::new("satake-rank1", cfg.seed, cases)
}

/// All reduced words of the longest element give the same block on every
/// dominant weight space, and every block passes the structural checks.
pub fn cocycle(t: LieType, hw: &Weight, cfg: &SuiteConfig) -> SuiteReport {
    let v = match cfg.irrep(t, hw) {
        Ok(v) => v,
        Err(e) => return SuiteReport::new("cocycle", cfg.seed, vec![error_case(format!("{t} V{hw}"), e)]),
    };
    let rs = v.roots();
    let w0 = rs.canonical_word(&rs.longest_element());
    let words = rs.all_reduced_words(&w0, cfg.word_cap).expect("canonical word is reduced");
    let weights = v.dominant_weights();
    let cases = par_map(cfg.exec, &weights.iter().enumerate().collect::<Vec<_>>(), |&(idx, mu)| {
        let key = format!("{t} V{hw} mu={mu}");
        let mut rng = cfg.case_rng(idx);
        let mut blocks = Vec::with_capacity(words.len());
        for w in &words {
            match word_operator_block(&v, w, mu) {
                Ok(b) => blocks.push(b),
                Err(e) => return error_case(key, format!("word {w}: {e}")),
            }
        }
        let disagreeing: Vec<String> =
            blocks.iter().filter(|b| !same_matrix(b, &blocks[0])).map(|b| b.word.to_string()).collect();
        let mut structural = BTreeMap::new();
        for b in &blocks {
            let bad = structural_violations(rs, &v, b, &mut rng);
            if !bad.is_empty() {
                structural.insert(b.word.to_string(), bad);
            }
        }
        CaseReport {
            key,
            passed: disagreeing.is_empty() && structural.is_empty(),
            detail: json!({
                "words": words.len(),
                "target": blocks[0].target,
                "dim": blocks[0].cols(),
                "disagreeing_words": disagreeing,
                "structural": structural,
            }),
        }
    });
    SuiteReport::new("cocycle", cfg.seed, cases)
}

/// The Levi restriction identity for every simple index and dominant
/// weight of `V(hw)`.
pub fn levi(t: LieType, hw: &Weight, cfg: &SuiteConfig) -> SuiteReport {
    let v = match cfg.irrep(t, hw) {
        Ok(v) => v,
        Err(e) => return SuiteReport::new("levi", cfg.seed, vec![error_case(format!("{t} V{hw}"), e)]),
    };
    let grid: Vec<(usize, Weight)> =
        (1..=v.rank()).flat_map(|i| v.dominant_weights().into_iter().map(move |mu| (i, mu))).collect();
    let cases = par_map(cfg.exec, &grid.iter().enumerate().collect::<Vec<_>>(), |&(idx, (i, mu))| {
        let key = format!("{t} V{hw} i={i} mu={mu}");
        let mut rng = cfg.case_rng(idx);
        let report = match levi_restriction_check(&v, *i, mu) {
            Ok(r) => r,
            Err(e) => return error_case(key, e),
        };
        let block = match crate::dynweyl::simple_reflection_block(&v, *i, mu, &crate::ratfun::LinearForm::x_var(v.rank(), i - 1)) {
            Ok(b) => b,
            Err(e) => return error_case(key, e),
        };
        let structural = structural_violations(v.roots(), &v, &block, &mut rng);
        CaseReport {
            key,
            passed: report.equal && structural.is_empty(),
            detail: json!({ "report": report, "structural": structural }),
        }
    });
    SuiteReport::new("levi", cfg.seed, cases)
}

/// Dimension, multiplicities and Chevalley-Serre relations for every
/// irrep of `t` with dimension at most `cfg.dim_cap`.
pub fn rep(t: LieType, cfg: &SuiteConfig) -> SuiteReport {
    let weights = dominant_weights_up_to_dim(t, cfg.dim_cap);
    let rs = RootSystem::new(t);
    let cases = par_map(cfg.exec, &weights, |hw| {
        let key = format!("{t} V{hw}");
        let v = match cfg.irrep(t, hw) {
            Ok(v) => v,
            Err(e) => return error_case(key, e),
        };
        let weyl = oracle::weyl_dimension(&rs, hw);
        let dim_ok = BigInt::from(v.dim()) == weyl;
        let expected = oracle::freudenthal_multiplicities(&rs, hw);
        let mut mult_bad = Vec::new();
        for (mu, &m) in &expected {
            if v.multiplicity(mu) as u64 != m {
                mult_bad.push(format!("{mu}: built {} expected {m}", v.multiplicity(mu)));
            }
        }
        for sp in v.weight_spaces() {
            if !expected.contains_key(&sp.weight) {
                mult_bad.push(format!("{}: unexpected weight", sp.weight));
            }
        }
        let relations = v.relation_violations();
        CaseReport {
            key,
            passed: dim_ok && mult_bad.is_empty() && relations.is_empty(),
            detail: json!({
                "dim": v.dim(),
                "weyl_dimension": weyl.to_string(),
                "multiplicity_mismatches": mult_bad,
                "relation_violations": relations,
            }),
        }
    });
    SuiteReport::new("rep", cfg.seed, cases)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn par_map_keeps_order() {
        let xs: Vec<u32> = (0..100).collect();
        let seq = par_map(Execution::Sequential, &xs, |x| x * 2);
        let par = par_map(Execution::Parallel(Some(3)), &xs, |x| x * 2);
        assert_eq!(seq, par);
    }

    #[test]
    fn small_suites_pass() {
        let cfg = SuiteConfig { exec: Execution::Sequential, ..SuiteConfig::default() };
        let s = satake_rank1(4, &cfg);
        assert!(s.passed);
        assert_eq!(s.total, 9);
        let c = cocycle("A2".parse().unwrap(), &Weight(vec![1, 1]), &cfg);
        assert!(c.passed, "{:?}", c.failures().collect::<Vec<_>>());
        let l = levi("B2".parse().unwrap(), &Weight(vec![0, 1]), &cfg);
        assert!(l.passed, "{:?}", l.failures().collect::<Vec<_>>());
        let r = rep("A1".parse().unwrap(), &SuiteConfig { dim_cap: 6, ..cfg.clone() });
        assert!(r.passed);
        assert_eq!(r.total, 6);
    }

    #[test]
    fn reports_are_deterministic() {
        let seq = SuiteConfig { exec: Execution::Sequential, seed: 9, ..SuiteConfig::default() };
        let par = SuiteConfig { exec: Execution::Parallel(Some(4)), ..seq.clone() };
        let t: LieType = "B2".parse().unwrap();
        let hw = Weight(vec![1, 0]);
        assert_eq!(
            serde_json::to_string(&cocycle(t, &hw, &seq)).unwrap(),
            serde_json::to_string(&cocycle(t, &hw, &par)).unwrap()
        );
    }

    #[test]
    fn failures_are_reported_not_raised() {
        let cfg = SuiteConfig { dim_cap: 3, exec: Execution::Sequential, ..SuiteConfig::default() };
        let c = cocycle("A2".parse().unwrap(), &Weight(vec![1, 1]), &cfg);
        assert!(!c.passed);
        assert_eq!(c.failed, 1);
    }
}
