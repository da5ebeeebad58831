//! Irreducible representations `V(lambda)` with exact Chevalley generators.
//!
//! `V(lambda)` is built weight space by weight space, descending from the
//! highest weight. At weight `mu` the spanning set is `{f_i b}` for `b` in a
//! basis of `V_{mu + alpha_i}`. A vector of weight below `lambda` lies in the
//! radical of the contravariant form exactly when all of its `e_j` images do,
//! so each candidate is represented by its stacked `e_j` images in the
//! already-built (irreducible) upper weight spaces, and the basis is chosen
//! by earliest-pivot elimination over candidates sorted by label.
//!
//! Basis vectors are divided-power monomials: the label `[1, 1, 2]` is the
//! vector `f_1^(2) f_2 v_lambda`, where runs of equal letters are grouped
//! and divided by the factorial of their length. In rank one this is the
//! basis `f^k / k! v_lambda`.

pub mod cache;
pub mod oracle;
mod strings;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{EchelonBasis, QMatrix, Reduction, SparseMatrix};
use crate::ratfun::{int, Scalar};
use crate::rootdata::{LieType, RootDataError, RootSystem, Weight};

pub use strings::{StringComponent, StringDecomposition};

pub const DEFAULT_DIM_CAP: usize = 500;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepError {
    #[error("highest weight {0} is not dominant")]
    NotDominant(Weight),
    #[error("dimension {dim} exceeds the cap {cap}")]
    DimensionCap { dim: BigInt, cap: usize },
    #[error("{0} is not a weight of the representation")]
    NotAWeight(Weight),
    #[error("vector has length {got}, expected {expected}")]
    DimensionMismatch { got: usize, expected: usize },
    #[error(transparent)]
    RootData(#[from] RootDataError),
}

/// Divided-power monomial label of a basis vector.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Label(pub Vec<usize>);

impl Label {
    /// Length of the leading run of letter `i`.
    fn leading_run(&self, i: usize) -> usize {
        self.0.iter().take_while(|&&x| x == i).count()
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        let mut k = 0;
        while k < self.0.len() {
            let i = self.0[k];
            let run = self.0[k..].iter().take_while(|&&x| x == i).count();
            parts.push(if run == 1 { format!("f{i}") } else { format!("f{i}^({run})") });
            k += run;
        }
        parts.push("v".to_string());
        f.write_str(&parts.join(" "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightSpace {
    pub weight: Weight,
    pub depth: usize,
    pub offset: usize,
    pub labels: Vec<Label>,
}

impl WeightSpace {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Generator {
    E,
    F,
    H,
}

/// A constructed irreducible representation. Immutable once built.
#[derive(Debug, Clone)]
pub struct Irrep {
    roots: RootSystem,
    hw: Weight,
    spaces: Vec<WeightSpace>,
    index: HashMap<Weight, usize>,
    // e[i-1][s]: V_{spaces[s]} -> V_{spaces[s] + alpha_i}
    e_blocks: Vec<Vec<Option<QMatrix>>>,
    // f[i-1][s]: V_{spaces[s]} -> V_{spaces[s] - alpha_i}
    f_blocks: Vec<Vec<Option<QMatrix>>>,
}

struct Candidate {
    label: Label,
    letter: usize,
    source_space: usize,
    source_pos: usize,
    run: usize,
}

impl Irrep {
    /// Builds `V(lambda)`; fails for non-dominant `lambda` or when the Weyl
    /// dimension exceeds `dim_cap`.
    pub fn build(lie_type: LieType, hw: &Weight, dim_cap: usize) -> Result<Irrep, RepError> {
        let roots = RootSystem::new(lie_type);
        if hw.rank() != roots.rank() {
            return Err(RootDataError::RankMismatch { got: hw.rank(), expected: roots.rank() }.into());
        }
        if !hw.is_dominant() {
            return Err(RepError::NotDominant(hw.clone()));
        }
        let dim = oracle::weyl_dimension(&roots, hw);
        if dim > BigInt::from(dim_cap) {
            return Err(RepError::DimensionCap { dim, cap: dim_cap });
        }
        Ok(Builder::new(roots, hw.clone()).run())
    }

    pub fn lie_type(&self) -> LieType {
        self.roots.lie_type()
    }

    pub fn roots(&self) -> &RootSystem {
        &self.roots
    }

    pub fn rank(&self) -> usize {
        self.roots.rank()
    }

    pub fn highest_weight(&self) -> &Weight {
        &self.hw
    }

    pub fn dim(&self) -> usize {
        self.spaces.iter().map(WeightSpace::dim).sum()
    }

    /// Weight spaces in basis order (by depth, then weight descending).
    pub fn weight_spaces(&self) -> &[WeightSpace] {
        &self.spaces
    }

    pub fn space(&self, mu: &Weight) -> Option<&WeightSpace> {
        self.index.get(mu).map(|&s| &self.spaces[s])
    }

    pub fn multiplicity(&self, mu: &Weight) -> usize {
        self.space(mu).map_or(0, WeightSpace::dim)
    }

    pub fn weights(&self) -> impl Iterator<Item = &Weight> {
        self.spaces.iter().map(|s| &s.weight)
    }

    pub fn dominant_weights(&self) -> Vec<Weight> {
        let mut v: Vec<Weight> = self.weights().filter(|w| w.is_dominant()).cloned().collect();
        v.sort();
        v
    }

    fn space_index(&self, mu: &Weight) -> Result<usize, RepError> {
        self.index.get(mu).copied().ok_or_else(|| RepError::NotAWeight(mu.clone()))
    }

    /// Matrix of `e_i` from `V_mu` to `V_{mu + alpha_i}` (zero-row matrix when
    /// the target is not a weight).
    pub fn e_block(&self, i: usize, mu: &Weight) -> Result<QMatrix, RepError> {
        let s = self.space_index(mu)?;
        Ok(self.e_blocks[i - 1][s].clone().unwrap_or_else(|| QMatrix::zeros(0, self.spaces[s].dim())))
    }

    /// Matrix of `f_i` from `V_mu` to `V_{mu - alpha_i}`.
    pub fn f_block(&self, i: usize, mu: &Weight) -> Result<QMatrix, RepError> {
        let s = self.space_index(mu)?;
        Ok(self.f_blocks[i - 1][s].clone().unwrap_or_else(|| QMatrix::zeros(0, self.spaces[s].dim())))
    }

    /// `f_i^(k) = f_i^k / k!` on a vector of `V_mu`.
    pub fn divided_f_power(&self, i: usize, k: usize, mu: &Weight, v: &[Scalar]) -> Result<Vec<Scalar>, RepError> {
        let alpha = self.roots.simple_root(i);
        let mut cur = v.to_vec();
        let mut wt = mu.clone();
        for step in 1..=k {
            let b = self.f_block(i, &wt)?;
            cur = b.mul_vec(&cur);
            let d = int(step as i64).recip();
            for x in cur.iter_mut() {
                *x *= &d;
            }
            wt = wt.sub(&alpha);
            if cur.is_empty() {
                return Err(RepError::NotAWeight(wt));
            }
        }
        Ok(cur)
    }

    pub fn global_matrix(&self, kind: Generator, i: usize) -> SparseMatrix {
        let mut m = SparseMatrix::zeros(self.dim());
        let alpha = self.roots.simple_root(i);
        for (s, space) in self.spaces.iter().enumerate() {
            match kind {
                Generator::H => {
                    let c = int(space.weight.0[i - 1]);
                    for k in 0..space.dim() {
                        m.add_entry(space.offset + k, space.offset + k, c.clone());
                    }
                }
                Generator::E | Generator::F => {
                    let (block, target) = match kind {
                        Generator::E => (&self.e_blocks[i - 1][s], space.weight.add(&alpha)),
                        _ => (&self.f_blocks[i - 1][s], space.weight.sub(&alpha)),
                    };
                    if let Some(b) = block {
                        let t = &self.spaces[self.index[&target]];
                        for r in 0..b.rows() {
                            for c in 0..b.cols() {
                                m.add_entry(t.offset + r, space.offset + c, b[(r, c)].clone());
                            }
                        }
                    }
                }
            }
        }
        m
    }

    /// Applies a generator to a vector in the global basis.
    pub fn apply_generator(&self, kind: Generator, i: usize, v: &[Scalar]) -> Result<Vec<Scalar>, RepError> {
        if v.len() != self.dim() {
            return Err(RepError::DimensionMismatch { got: v.len(), expected: self.dim() });
        }
        if i == 0 || i > self.rank() {
            return Err(RootDataError::IndexOutOfRange { index: i, rank: self.rank() }.into());
        }
        let alpha = self.roots.simple_root(i);
        let mut out = vec![Scalar::zero(); self.dim()];
        for (s, space) in self.spaces.iter().enumerate() {
            let local = &v[space.offset..space.offset + space.dim()];
            match kind {
                Generator::H => {
                    let c = int(space.weight.0[i - 1]);
                    for (k, x) in local.iter().enumerate() {
                        out[space.offset + k] += x * &c;
                    }
                }
                Generator::E | Generator::F => {
                    let (block, target) = match kind {
                        Generator::E => (&self.e_blocks[i - 1][s], space.weight.add(&alpha)),
                        _ => (&self.f_blocks[i - 1][s], space.weight.sub(&alpha)),
                    };
                    if let Some(b) = block {
                        let t = &self.spaces[self.index[&target]];
                        for (k, y) in b.mul_vec(local).into_iter().enumerate() {
                            out[t.offset + k] += y;
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Unit vector of the highest weight space.
    pub fn highest_weight_vector(&self) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.dim()];
        v[0] = int(1);
        v
    }

    /// Checks the Chevalley-Serre relations on the global generator matrices
    /// and returns a description of each violated relation.
    pub fn relation_violations(&self) -> Vec<String> {
        let r = self.rank();
        let e: Vec<SparseMatrix> = (1..=r).map(|i| self.global_matrix(Generator::E, i)).collect();
        let f: Vec<SparseMatrix> = (1..=r).map(|i| self.global_matrix(Generator::F, i)).collect();
        let h: Vec<SparseMatrix> = (1..=r).map(|i| self.global_matrix(Generator::H, i)).collect();
        let a = self.roots.cartan();
        let mut bad = Vec::new();
        for i in 0..r {
            for j in 0..r {
                let ef = e[i].bracket(&f[j]);
                let expected = if i == j { h[i].clone() } else { SparseMatrix::zeros(self.dim()) };
                if ef != expected {
                    bad.push(format!("[E{},F{}]", i + 1, j + 1));
                }
                if h[i].bracket(&e[j]) != e[j].scale(&int(a.entry(i, j))) {
                    bad.push(format!("[H{},E{}]", i + 1, j + 1));
                }
                if h[i].bracket(&f[j]) != f[j].scale(&int(-a.entry(i, j))) {
                    bad.push(format!("[H{},F{}]", i + 1, j + 1));
                }
                if h[i].bracket(&h[j]) != SparseMatrix::zeros(self.dim()) {
                    bad.push(format!("[H{},H{}]", i + 1, j + 1));
                }
                if i != j {
                    let times = (1 - a.entry(i, j)) as usize;
                    let mut ad_e = e[j].clone();
                    let mut ad_f = f[j].clone();
                    for _ in 0..times {
                        ad_e = e[i].bracket(&ad_e);
                        ad_f = f[i].bracket(&ad_f);
                    }
                    if !ad_e.is_zero() {
                        bad.push(format!("Serre E{} E{}", i + 1, j + 1));
                    }
                    if !ad_f.is_zero() {
                        bad.push(format!("Serre F{} F{}", i + 1, j + 1));
                    }
                }
            }
        }
        bad
    }

    /// Decomposition of `V_nu` under the `sl(2)` of simple index `i`.
    pub fn sl2_strings(&self, i: usize, nu: &Weight) -> Result<StringDecomposition, RepError> {
        strings::decompose(self, i, nu)
    }

    fn from_parts(
        roots: RootSystem,
        hw: Weight,
        spaces: Vec<WeightSpace>,
        e_blocks: Vec<Vec<Option<QMatrix>>>,
        f_blocks: Vec<Vec<Option<QMatrix>>>,
    ) -> Irrep {
        let index = spaces.iter().enumerate().map(|(s, sp)| (sp.weight.clone(), s)).collect();
        Irrep { roots, hw, spaces, index, e_blocks, f_blocks }
    }
}

struct Builder {
    roots: RootSystem,
    hw: Weight,
    spaces: Vec<WeightSpace>,
    index: HashMap<Weight, usize>,
    e: Vec<BTreeMap<usize, QMatrix>>,
    f: Vec<BTreeMap<usize, QMatrix>>,
}

impl Builder {
    fn new(roots: RootSystem, hw: Weight) -> Self {
        let r = roots.rank();
        Builder { roots, hw, spaces: Vec::new(), index: HashMap::new(), e: vec![BTreeMap::new(); r], f: vec![BTreeMap::new(); r] }
    }

    fn push_space(&mut self, weight: Weight, depth: usize, labels: Vec<Label>) -> usize {
        let s = self.spaces.len();
        self.index.insert(weight.clone(), s);
        self.spaces.push(WeightSpace { weight, depth, offset: 0, labels });
        s
    }

    fn run(mut self) -> Irrep {
        let r = self.roots.rank();
        let alphas: Vec<Weight> = (1..=r).map(|i| self.roots.simple_root(i)).collect();
        self.push_space(self.hw.clone(), 0, vec![Label(Vec::new())]);
        let mut layer = vec![0usize];
        let mut depth = 0;
        while !layer.is_empty() {
            depth += 1;
            let mut targets: BTreeSet<std::cmp::Reverse<Weight>> = BTreeSet::new();
            for &s in &layer {
                for a in &alphas {
                    targets.insert(std::cmp::Reverse(self.spaces[s].weight.sub(a)));
                }
            }
            let mut next = Vec::new();
            for std::cmp::Reverse(mu) in targets {
                if let Some(s) = self.build_space(&mu, depth, &alphas) {
                    next.push(s);
                }
            }
            layer = next;
        }
        let mut offset = 0;
        for sp in self.spaces.iter_mut() {
            sp.offset = offset;
            offset += sp.dim();
        }
        let n = self.spaces.len();
        let collect = |maps: Vec<BTreeMap<usize, QMatrix>>| -> Vec<Vec<Option<QMatrix>>> {
            maps.into_iter()
                .map(|mut m| (0..n).map(|s| m.remove(&s)).collect())
                .collect()
        };
        let e = collect(std::mem::take(&mut self.e));
        let f = collect(std::mem::take(&mut self.f));
        Irrep::from_parts(self.roots, self.hw, self.spaces, e, f)
    }

    /// e_j applied to a basis vector of an existing space, as coordinates in
    /// the target space (None when the target is not a weight).
    fn e_column(&self, j: usize, s: usize, pos: usize) -> Option<Vec<Scalar>> {
        self.e[j - 1].get(&s).map(|m| m.column(pos))
    }

    fn build_space(&mut self, mu: &Weight, depth: usize, alphas: &[Weight]) -> Option<usize> {
        let r = alphas.len();
        // Upper neighbours mu + alpha_j that are weights, with their sizes.
        let upper: Vec<Option<usize>> = (0..r).map(|j| self.index.get(&mu.add(&alphas[j])).copied()).collect();
        let mut candidates: Vec<Candidate> = Vec::new();
        for i in 1..=r {
            if let Some(s) = upper[i - 1] {
                for (pos, l) in self.spaces[s].labels.iter().enumerate() {
                    let mut label = vec![i];
                    label.extend_from_slice(&l.0);
                    candidates.push(Candidate { label: Label(label), letter: i, source_space: s, source_pos: pos, run: 1 + l.leading_run(i) });
                }
            }
        }
        if candidates.is_empty() {
            return None;
        }
        candidates.sort_by(|a, b| a.label.cmp(&b.label));

        let stacked: Vec<Vec<Scalar>> = candidates.iter().map(|c| self.stacked_e_image(mu, c, &upper, alphas)).collect();
        let mut basis = EchelonBasis::new();
        let mut accepted = Vec::new();
        let mut coords: Vec<Option<Vec<Scalar>>> = Vec::with_capacity(candidates.len());
        for (k, v) in stacked.iter().enumerate() {
            match basis.insert(v) {
                Reduction::Independent => {
                    accepted.push(k);
                    coords.push(None);
                }
                Reduction::Combination(c) => coords.push(Some(c)),
            }
        }
        if accepted.is_empty() {
            return None;
        }
        let dim = accepted.len();
        let labels = accepted.iter().map(|&k| candidates[k].label.clone()).collect();
        let s = self.push_space(mu.clone(), depth, labels);

        // e_j blocks out of the new space: the stacked slices of accepted candidates.
        let mut offset = 0;
        for j in 1..=r {
            if let Some(t) = upper[j - 1] {
                let tdim = self.spaces[t].dim();
                let mut m = QMatrix::zeros(tdim, dim);
                for (col, &k) in accepted.iter().enumerate() {
                    for row in 0..tdim {
                        m[(row, col)] = stacked[k][offset + row].clone();
                    }
                }
                self.e[j - 1].insert(s, m);
                offset += tdim;
            }
        }

        // f_i blocks into the new space: f_i b = run * candidate(i, b).
        let mut f_new: BTreeMap<usize, QMatrix> = BTreeMap::new();
        for (k, c) in candidates.iter().enumerate() {
            let col: Vec<Scalar> = match &coords[k] {
                None => {
                    let mut v = vec![Scalar::zero(); dim];
                    v[accepted.iter().position(|&a| a == k).unwrap()] = int(1);
                    v
                }
                Some(v) => {
                    let mut v = v.clone();
                    v.resize(dim, Scalar::zero());
                    v
                }
            };
            let run = int(c.run as i64);
            let m = f_new.entry(c.source_space).or_insert_with(|| QMatrix::zeros(dim, self.spaces[c.source_space].dim()));
            for (row, x) in col.into_iter().enumerate() {
                m[(row, c.source_pos)] = x * &run;
            }
        }
        for (src, m) in f_new {
            let i = (1..=r).find(|&i| upper[i - 1] == Some(src)).unwrap();
            self.f[i - 1].insert(src, m);
        }
        Some(s)
    }

    /// Stacked images `(e_1 c, ..., e_r c)` of the candidate
    /// `c = f_i b / run`, computed from `e_j f_i b = f_i e_j b + [i = j] h_i b`.
    fn stacked_e_image(&self, mu: &Weight, c: &Candidate, upper: &[Option<usize>], alphas: &[Weight]) -> Vec<Scalar> {
        let i = c.letter;
        let src_weight = &self.spaces[c.source_space].weight;
        let inv_run = int(c.run as i64).recip();
        let mut out = Vec::new();
        for j in 1..=alphas.len() {
            let Some(t) = upper[j - 1] else { continue };
            let tdim = self.spaces[t].dim();
            let mut v = vec![Scalar::zero(); tdim];
            // f_i e_j b: e_j b lives in V_{src + alpha_j}; f_i maps it to V_{mu + alpha_j}.
            if let Some(ejb) = self.e_column(j, c.source_space, c.source_pos) {
                let mid = self.index[&src_weight.add(&alphas[j - 1])];
                let fi = self.f[i - 1].get(&mid).expect("f block from an upper layer");
                for (x, y) in v.iter_mut().zip(fi.mul_vec(&ejb)) {
                    *x += y;
                }
            }
            if i == j {
                // h_i b with <src, coroot_i>; here t == source space.
                v[c.source_pos] += int(src_weight.0[i - 1]);
            }
            out.extend(v.into_iter().map(|x| x * &inv_run));
        }
        let _ = mu;
        out
    }
}

/// Dominant weights `lambda` of `t` with Weyl dimension at most `cap`, in
/// increasing order.
pub fn dominant_weights_up_to_dim(t: LieType, cap: usize) -> Vec<Weight> {
    let rs = RootSystem::new(t);
    let r = rs.rank();
    let mut out = BTreeSet::new();
    let mut stack = vec![Weight::zero(r)];
    while let Some(w) = stack.pop() {
        if out.contains(&w) {
            continue;
        }
        let d = oracle::weyl_dimension(&rs, &w).to_usize().unwrap_or(usize::MAX);
        if d > cap {
            continue;
        }
        for i in 0..r {
            let mut n = w.clone();
            n.0[i] += 1;
            stack.push(n);
        }
        out.insert(w);
    }
    out.into_iter().collect()
}
