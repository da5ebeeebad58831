//! Dynamical Weyl group operators `A_{w,V}(x)` on weight spaces, as matrices
//! of rational functions in `x_i = <x, coroot_i>` and `h`.
//!
//! A simple reflection acts string by string through the rank-one
//! coefficient. Longer words compose simple reflections along a reduced
//! word. The twist in the composition law is the affine action
//! `w * x = w(x + h rho) - h rho`, so the `t`-th step sees the variable
//! `<x + h rho, gamma_t> - h` for its crossing coroot `gamma_t`. With the
//! plain linear action the result would depend on the reduced word.

use std::fmt;

use num_traits::Zero;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::QMatrix;
use crate::ratfun::{int, random_point, LinearForm, RatFun, RatFunError, RatFunJson, Scalar};
use crate::rep::{Irrep, Label, RepError};
use crate::rootdata::{CorootVector, LieType, RootDataError, RootSystem, WeylElement, WeylWord, Weight};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DynError {
    #[error("rank-one coefficient needs 0 <= k and m - 2k >= 0 (got m={m}, k={k})")]
    OutsideDomain { m: i64, k: i64 },
    #[error("source weight {0} is not dominant")]
    NotDominant(Weight),
    #[error("<{weight}, coroot_{index}> is negative")]
    NegativePairing { weight: Weight, index: usize },
    #[error("classical limit depends on x")]
    XDependent,
    #[error("entry has a pole at h = 0: {0}")]
    PoleAtZero(String),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    RootData(#[from] RootDataError),
    #[error(transparent)]
    RatFun(#[from] RatFunError),
}

/// `(-1)^k prod_{j=1..k} (xi + (j+1) h) / (xi + (j-m+k) h)`.
pub fn rank1_coefficient(m: i64, k: i64, xi: &LinearForm) -> Result<RatFun, DynError> {
    if k < 0 || m - 2 * k < 0 {
        return Err(DynError::OutsideDomain { m, k });
    }
    let num: Vec<LinearForm> = (1..=k).map(|j| xi.shift_h(&int(j + 1))).collect();
    let den: Vec<LinearForm> = (1..=k).map(|j| xi.shift_h(&int(j - m + k))).collect();
    let c = RatFun::ratio_of_products(xi.nx(), &num, &den)?;
    Ok(if k % 2 == 1 { c.neg() } else { c })
}

/// A matrix of rational functions, stored by rows.
pub type RatMatrix = Vec<Vec<RatFun>>;

fn identity(n: usize, nx: usize) -> RatMatrix {
    (0..n).map(|r| (0..n).map(|c| if r == c { RatFun::one(nx) } else { RatFun::zero(nx) }).collect()).collect()
}

fn mat_mul(a: &RatMatrix, b: &RatMatrix, inner: usize, nx: usize) -> RatMatrix {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|c| {
                    let mut acc = RatFun::zero(nx);
                    for k in 0..inner {
                        if !row[k].is_zero() && !b[k][c].is_zero() {
                            acc = acc.add(&row[k].mul(&b[k][c]));
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// `A_{w,V}(x)` restricted to `V_mu`, landing in `V_{w mu}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OperatorBlock {
    pub algebra: LieType,
    pub hw: Weight,
    pub source: Weight,
    pub target: Weight,
    pub word: WeylWord,
    pub source_labels: Vec<Label>,
    pub target_labels: Vec<Label>,
    /// `target_labels.len()` rows, `source_labels.len()` columns.
    pub matrix: RatMatrix,
}

impl OperatorBlock {
    pub fn nx(&self) -> usize {
        self.hw.rank()
    }

    pub fn rows(&self) -> usize {
        self.target_labels.len()
    }

    pub fn cols(&self) -> usize {
        self.source_labels.len()
    }

    pub fn is_identity(&self) -> bool {
        self.rows() == self.cols()
            && self.matrix.iter().enumerate().all(|(r, row)| {
                row.iter().enumerate().all(|(c, x)| if r == c { x.is_one() } else { x.is_zero() })
            })
    }

    pub fn entries(&self) -> impl Iterator<Item = &RatFun> {
        self.matrix.iter().flatten()
    }

    fn map_entries(&self, f: impl Fn(&RatFun) -> Result<RatFun, DynError>) -> Result<OperatorBlock, DynError> {
        let matrix = self
            .matrix
            .iter()
            .map(|row| row.iter().map(&f).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        Ok(OperatorBlock { matrix, ..self.clone() })
    }

    pub fn to_json(&self) -> OperatorBlockJson {
        OperatorBlockJson {
            algebra: self.algebra,
            hw: self.hw.clone(),
            mu: self.source.clone(),
            word: self.word.clone(),
            target: self.target.clone(),
            basis_labels: BasisLabels { source: self.source_labels.clone(), target: self.target_labels.clone() },
            matrix: self.matrix.iter().map(|row| row.iter().map(RatFunJson::from).collect()).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisLabels {
    pub source: Vec<Label>,
    pub target: Vec<Label>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperatorBlockJson {
    pub algebra: LieType,
    pub hw: Weight,
    pub mu: Weight,
    pub word: WeylWord,
    pub target: Weight,
    pub basis_labels: BasisLabels,
    pub matrix: Vec<Vec<RatFunJson>>,
}

impl fmt::Display for OperatorBlock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} V{}  word {}  {} -> {}", self.algebra, self.hw, self.word, self.source, self.target)?;
        let labels = |ls: &[Label]| ls.iter().map(Label::to_string).collect::<Vec<_>>().join(" | ");
        writeln!(f, "source basis: {}", labels(&self.source_labels))?;
        writeln!(f, "target basis: {}", labels(&self.target_labels))?;
        for row in &self.matrix {
            let cells: Vec<String> = row.iter().map(RatFun::to_string).collect();
            writeln!(f, "[ {} ]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// `<x, gamma>` as a linear form in the simple-coroot variables.
pub fn coroot_form(gamma: &CorootVector) -> LinearForm {
    LinearForm::from_ints(gamma.coords(), 0)
}

/// Rank-one variable of a composition step with crossing coroot `gamma`:
/// `<x + h rho, gamma> - h`. Equals `x_i` when `gamma` is simple.
pub fn step_variable(gamma: &CorootVector) -> LinearForm {
    LinearForm::from_ints(gamma.coords(), gamma.height() - 1)
}

/// Block of `A_{s_i}` on `V_nu` with dynamical variable `xi`.
pub fn simple_reflection_block(v: &Irrep, i: usize, nu: &Weight, xi: &LinearForm) -> Result<OperatorBlock, DynError> {
    stringwise_block(v, i, nu, |m, k| rank1_coefficient(m, k, xi))
}

/// The map `V_nu -> V_{s_i nu}` sending `f_i^(k) u` to `c(m, k) f_i^(m-k) u`
/// on every string component `(m, k)`, written in the standard bases.
pub fn stringwise_block(
    v: &Irrep,
    i: usize,
    nu: &Weight,
    coeff: impl Fn(i64, i64) -> Result<RatFun, DynError>,
) -> Result<OperatorBlock, DynError> {
    let nx = v.rank();
    let d = v.sl2_strings(i, nu)?;
    if nu.coords()[i - 1] < 0 {
        return Err(DynError::NegativePairing { weight: nu.clone(), index: i });
    }
    let s = d.source_basis();
    let s_inv = s.inverse().expect("string-adapted basis is invertible");
    let t = d.target_basis();
    let n = s.cols();
    let mut matrix = vec![vec![RatFun::zero(nx); n]; n];
    let mut col0 = 0;
    for comp in &d.components {
        let c = coeff(comp.m, comp.k)?;
        let width = comp.multiplicity();
        // T_comp * (S^-1)_comp, the projection through this component.
        for r in 0..n {
            for cc in 0..n {
                let mut acc = Scalar::zero();
                for j in col0..col0 + width {
                    acc += &t[(r, j)] * &s_inv[(j, cc)];
                }
                if !acc.is_zero() {
                    matrix[r][cc] = matrix[r][cc].add(&c.scale(&acc));
                }
            }
        }
        col0 += width;
    }
    Ok(OperatorBlock {
        algebra: v.lie_type(),
        hw: v.highest_weight().clone(),
        source: nu.clone(),
        target: d.reflected_weight.clone(),
        word: WeylWord(vec![i]),
        source_labels: v.space(nu).map(|s| s.labels.clone()).unwrap_or_default(),
        target_labels: v.space(&d.reflected_weight).map(|s| s.labels.clone()).unwrap_or_default(),
        matrix,
    })
}

/// Composes simple-reflection blocks along a reduced word, starting at a
/// dominant weight.
pub fn word_operator_block(v: &Irrep, w: &WeylWord, mu: &Weight) -> Result<OperatorBlock, DynError> {
    compose_along(v, w, mu, step_variable)
}

fn compose_along(
    v: &Irrep,
    w: &WeylWord,
    mu: &Weight,
    variable: impl Fn(&CorootVector) -> LinearForm,
) -> Result<OperatorBlock, DynError> {
    let rs = v.roots();
    if mu.rank() != v.rank() {
        return Err(RootDataError::RankMismatch { got: mu.rank(), expected: v.rank() }.into());
    }
    if !mu.is_dominant() {
        return Err(DynError::NotDominant(mu.clone()));
    }
    let gammas = rs.crossing_coroots(w)?;
    let space = v.space(mu).ok_or_else(|| RepError::NotAWeight(mu.clone()))?;
    let nx = v.rank();
    let mut matrix = identity(space.dim(), nx);
    let mut current = mu.clone();
    for (i, gamma) in w.application_order().zip(&gammas) {
        assert!(
            current.coords()[i - 1] >= 0,
            "negative string weight {} along reduced word {w} from dominant {mu}",
            current
        );
        let step = simple_reflection_block(v, i, &current, &variable(gamma))?;
        matrix = mat_mul(&step.matrix, &matrix, step.cols(), nx);
        current = step.target;
    }
    debug_assert_eq!(current, rs.act(w, mu)?);
    Ok(OperatorBlock {
        algebra: v.lie_type(),
        hw: v.highest_weight().clone(),
        source: mu.clone(),
        target: current.clone(),
        word: w.clone(),
        source_labels: space.labels.clone(),
        target_labels: v.space(&current).expect("Weyl image of a weight").labels.clone(),
        matrix,
    })
}

/// The operator of a Weyl element through its canonical reduced word.
pub fn dynamical_operator(v: &Irrep, w: &WeylElement, mu: &Weight) -> Result<OperatorBlock, DynError> {
    word_operator_block(v, &v.roots().canonical_word(w), mu)
}

/// Substitutes `x_i -> -x_i - h` in every entry.
pub fn rho_shift(b: &OperatorBlock) -> Result<OperatorBlock, DynError> {
    let nx = b.nx();
    let images: Vec<LinearForm> = (0..nx).map(|i| LinearForm::x_var(nx, i).neg().shift_h(&int(-1))).collect();
    b.map_entries(|e| Ok(e.substitute(&images, nx)?))
}

/// Value at `h = 0`, which must not depend on `x`: checked at two seeded
/// random points.
pub fn classical_limit<R: Rng>(b: &OperatorBlock, rng: &mut R) -> Result<QMatrix, DynError> {
    for e in b.entries() {
        if let Some((f, _)) = e.denominator().find(|(f, _)| f.is_pure_h()) {
            return Err(DynError::PoleAtZero(f.to_string()));
        }
    }
    let nx = b.nx();
    let mut values: Vec<QMatrix> = Vec::with_capacity(2);
    let mut attempts = 0;
    while values.len() < 2 {
        attempts += 1;
        assert!(attempts < 1000, "could not find evaluation points off the poles");
        let mut p = random_point(rng, nx);
        p.push(Scalar::zero());
        let mut m = QMatrix::zeros(b.rows(), b.cols());
        let mut ok = true;
        'entries: for (r, row) in b.matrix.iter().enumerate() {
            for (c, e) in row.iter().enumerate() {
                match e.evaluate(&p) {
                    Ok(x) => m[(r, c)] = x,
                    Err(_) => {
                        ok = false;
                        break 'entries;
                    }
                }
            }
        }
        if ok {
            values.push(m);
        }
    }
    if values[0] != values[1] {
        return Err(DynError::XDependent);
    }
    Ok(values.swap_remove(0))
}

/// Denominator factors that are not of the form `<x + h rho, gamma> - m h`
/// with `gamma` a positive coroot and `m` a positive integer. For a simple
/// coroot this is `x_i - n h` with `n >= 0`.
pub fn denominator_locality_violations(rs: &RootSystem, b: &OperatorBlock) -> Vec<String> {
    let mut bad = Vec::new();
    for e in b.entries() {
        for (f, _) in e.denominator() {
            if !is_local_factor(rs, f.x(), f.h()) {
                bad.push(f.to_string());
            }
        }
    }
    bad.sort();
    bad.dedup();
    bad
}

fn is_local_factor(rs: &RootSystem, x: &[Scalar], h: &Scalar) -> bool {
    rs.positive_coroots().iter().any(|g| {
        let Some(lead) = g.coords().iter().find(|&&c| c != 0) else { return false };
        let lead = int(*lead);
        let proportional = x.iter().zip(g.coords()).all(|(a, &c)| a * &lead == int(c));
        if !proportional {
            return false;
        }
        let m = int(g.height()) - h * &lead;
        m.is_integer() && m >= int(1)
    })
}

/// Entry-wise exact equality of two blocks' matrices.
pub fn same_matrix(a: &OperatorBlock, b: &OperatorBlock) -> bool {
    a.source == b.source && a.target == b.target && a.matrix == b.matrix
}
