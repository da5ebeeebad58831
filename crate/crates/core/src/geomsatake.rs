//! The geometric side in rank one: torus weights on the attracting and
//! repelling slices at a fixed point, the transition scalar between the two
//! hyperbolic stalks, and its comparison with the dynamical operator.

use serde::Serialize;
use thiserror::Error;

use crate::dynweyl::{rank1_coefficient, rho_shift, simple_reflection_block, stringwise_block, DynError};
use crate::ratfun::{frac, int, LinearForm, RatFun, RatFunError};
use crate::rep::Irrep;
use crate::rootdata::{LieType, RootDataError, Weight};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeomError {
    #[error("need 0 <= mu <= lambda with lambda - mu even (got lambda={lambda}, mu={mu})")]
    InvalidPair { lambda: i64, mu: i64 },
    #[error("torus weights must be nonzero")]
    ZeroWeight,
    #[error("weight multisets live in different variables")]
    ArityMismatch,
    #[error("<{weight}, coroot_{index}> is negative")]
    NegativePairing { weight: Weight, index: usize },
    #[error(transparent)]
    Dyn(#[from] DynError),
    #[error(transparent)]
    RatFun(#[from] RatFunError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Chamber {
    /// The identity chamber.
    E,
    /// The chamber of the simple reflection.
    S,
}

/// Torus weights at a fixed point, as nonzero degree-one forms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorusWeightMultiset {
    nx: usize,
    weights: Vec<LinearForm>,
}

impl TorusWeightMultiset {
    pub fn new(nx: usize, weights: Vec<LinearForm>) -> Result<Self, GeomError> {
        if weights.iter().any(LinearForm::is_zero) {
            return Err(GeomError::ZeroWeight);
        }
        if weights.iter().any(|w| w.nx() != nx) {
            return Err(GeomError::ArityMismatch);
        }
        Ok(TorusWeightMultiset { nx, weights })
    }

    pub fn empty(nx: usize) -> Self {
        TorusWeightMultiset { nx, weights: Vec::new() }
    }

    pub fn nx(&self) -> usize {
        self.nx
    }

    pub fn weights(&self) -> &[LinearForm] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// The product of all weights (the equivariant Euler class).
    pub fn product(&self) -> RatFun {
        RatFun::ratio_of_products(self.nx, &self.weights, &[]).expect("no denominator")
    }
}

fn check_pair(lambda: i64, mu: i64) -> Result<i64, GeomError> {
    if mu < 0 || mu > lambda || (lambda - mu) % 2 != 0 {
        return Err(GeomError::InvalidPair { lambda, mu });
    }
    Ok((lambda - mu) / 2)
}

/// Torus weights of the slice through `mu` in the closure of the orbit of
/// `lambda`, for the attracting (`E`) or repelling (`S`) chamber.
pub fn costalk_weights(lambda: i64, mu: i64, chamber: Chamber) -> Result<TorusWeightMultiset, GeomError> {
    let k = check_pair(lambda, mu)?;
    let x = LinearForm::x_var(1, 0);
    let weights = (1..=k)
        .map(|j| match chamber {
            Chamber::E => x.neg().shift_h(&(int(j - 1) - frac(lambda + mu, 2))),
            Chamber::S => x.shift_h(&int(-j)),
        })
        .collect();
    TorusWeightMultiset::new(1, weights)
}

/// `prod b / prod a`.
pub fn generic_transition(a: &TorusWeightMultiset, b: &TorusWeightMultiset) -> Result<RatFun, GeomError> {
    if a.nx() != b.nx() {
        return Err(GeomError::ArityMismatch);
    }
    Ok(RatFun::ratio_of_products(a.nx(), b.weights(), a.weights())?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitionScalar {
    pub value: RatFun,
    pub lambda: i64,
    pub mu: i64,
}

/// Transition from the `e`-stalk to the `s`-stalk at `mu`.
pub fn hyperbolic_transition(lambda: i64, mu: i64) -> Result<TransitionScalar, GeomError> {
    let a = costalk_weights(lambda, mu, Chamber::E)?;
    let b = costalk_weights(lambda, mu, Chamber::S)?;
    Ok(TransitionScalar { value: generic_transition(&a, &b)?, lambda, mu })
}

/// `x -> -x - h` in one variable.
fn rho_shift_rank1(f: &RatFun) -> Result<RatFun, GeomError> {
    Ok(f.substitute(&[LinearForm::x_var(1, 0).neg().shift_h(&int(-1))], 1)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SatakeReport {
    pub lambda: i64,
    pub mu: i64,
    pub geometric: RatFun,
    pub dynamical_shifted: RatFun,
    pub equal: bool,
}

/// Compares the geometric transition with the rank-one dynamical
/// coefficient at `-x - h`.
pub fn verify_main_theorem_rank1(lambda: i64, mu: i64) -> Result<SatakeReport, GeomError> {
    let k = check_pair(lambda, mu)?;
    let geometric = hyperbolic_transition(lambda, mu)?.value;
    let dynamical = rank1_coefficient(lambda, k, &LinearForm::x_var(1, 0))?;
    let dynamical_shifted = rho_shift_rank1(&dynamical)?;
    let equal = geometric == dynamical_shifted;
    Ok(SatakeReport { lambda, mu, geometric, dynamical_shifted, equal })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StringCheck {
    pub m: i64,
    pub k: i64,
    pub multiplicity: usize,
    pub geometric: RatFun,
    pub dynamical_shifted: RatFun,
    pub equal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LeviReport {
    pub algebra: LieType,
    pub hw: Weight,
    pub index: usize,
    pub mu: Weight,
    pub strings: Vec<StringCheck>,
    /// The assembled geometric block equals the shifted dynamical block.
    pub block_equal: bool,
    pub equal: bool,
}

/// Checks `A_{s_i}` on `V_mu` against the geometric transitions of the
/// rank-one Levi, string by string and as an assembled block.
pub fn levi_restriction_check(v: &Irrep, i: usize, mu: &Weight) -> Result<LeviReport, GeomError> {
    let r = v.rank();
    if i == 0 || i > r {
        return Err(DynError::RootData(RootDataError::IndexOutOfRange { index: i, rank: r }).into());
    }
    if mu.rank() != r {
        return Err(DynError::RootData(RootDataError::RankMismatch { got: mu.rank(), expected: r }).into());
    }
    if mu.coords()[i - 1] < 0 {
        return Err(GeomError::NegativePairing { weight: mu.clone(), index: i });
    }
    let xi = LinearForm::x_var(r, i - 1);
    let to_levi = |f: &RatFun| -> Result<RatFun, GeomError> { Ok(f.substitute(std::slice::from_ref(&xi), r)?) };

    let dynamical = rho_shift(&simple_reflection_block(v, i, mu, &xi)?)?;
    let geometric = stringwise_block(v, i, mu, |m, k| {
        let t = hyperbolic_transition(m, m - 2 * k).map_err(|_| DynError::OutsideDomain { m, k })?;
        Ok(t.value.substitute(std::slice::from_ref(&xi), r)?)
    })?;
    let block_equal = dynamical.matrix == geometric.matrix;

    let mut strings = Vec::new();
    for comp in &v.sl2_strings(i, mu).map_err(DynError::from)?.components {
        let g = to_levi(&hyperbolic_transition(comp.m, comp.m - 2 * comp.k)?.value)?;
        let d = to_levi(&rho_shift_rank1(&rank1_coefficient(comp.m, comp.k, &LinearForm::x_var(1, 0))?)?)?;
        let equal = g == d;
        strings.push(StringCheck { m: comp.m, k: comp.k, multiplicity: comp.multiplicity(), geometric: g, dynamical_shifted: d, equal });
    }
    let equal = block_equal && strings.iter().all(|s| s.equal);
    Ok(LeviReport { algebra: v.lie_type(), hw: v.highest_weight().clone(), index: i, mu: mu.clone(), strings, block_equal, equal })
}
