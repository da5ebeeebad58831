//! Matrix-free oracles for irreducible representations: the Weyl dimension
//! formula and Freudenthal's multiplicity recursion.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::ratfun::{int, Scalar};
use crate::rootdata::{RootSystem, Weight};

/// `prod_{coroot > 0} <lambda + rho, coroot> / <rho, coroot>`.
pub fn weyl_dimension(rs: &RootSystem, lambda: &Weight) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    let shifted = lambda.add(&rs.rho());
    for g in rs.positive_coroots() {
        num *= BigInt::from(shifted.pair(g));
        den *= BigInt::from(g.height());
    }
    num / den
}

/// Invariant inner product on weights, normalized by `(alpha_1, alpha_1) = 2`
/// on the component of node 1 (any normalization works for Freudenthal).
struct InnerProduct {
    // (mu, alpha_j) = mu_j * sym[j]
    sym: Vec<Scalar>,
    // inverse Cartan matrix, for root coordinates of a weight
    cartan_inv: Vec<Vec<Scalar>>,
}

impl InnerProduct {
    fn new(rs: &RootSystem) -> Self {
        let a = rs.cartan();
        let r = rs.rank();
        let mut sym: Vec<Option<Scalar>> = vec![None; r];
        // Symmetrize: d_i A[i][j] = d_j A[j][i].
        for start in 0..r {
            if sym[start].is_some() {
                continue;
            }
            sym[start] = Some(Scalar::one());
            let mut stack = vec![start];
            while let Some(i) = stack.pop() {
                for j in 0..r {
                    if i != j && a.entry(i, j) != 0 && sym[j].is_none() {
                        let di = sym[i].clone().unwrap();
                        sym[j] = Some(di * int(a.entry(i, j)) / int(a.entry(j, i)));
                        stack.push(j);
                    }
                }
            }
        }
        let m: Vec<Vec<Scalar>> = (0..r).map(|i| (0..r).map(|j| int(a.entry(i, j))).collect()).collect();
        InnerProduct { sym: sym.into_iter().map(Option::unwrap).collect(), cartan_inv: invert(&m) }
    }

    fn pair(&self, mu: &Weight, nu: &Weight) -> Scalar {
        let r = self.sym.len();
        let mut acc = Scalar::zero();
        for j in 0..r {
            let nj: Scalar = (0..r).map(|k| &self.cartan_inv[j][k] * int(nu.0[k])).sum();
            acc += nj * int(mu.0[j]) * &self.sym[j];
        }
        acc
    }
}

fn invert(m: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let n = m.len();
    let mut aug: Vec<Vec<Scalar>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !aug[i][c].is_zero()).expect("Cartan matrix is invertible");
        aug.swap(c, p);
        let inv = aug[c][c].recip();
        for x in aug[c].iter_mut() {
            *x *= &inv;
        }
        for i in 0..n {
            if i != c && !aug[i][c].is_zero() {
                let f = aug[i][c].clone();
                let pivot_row = aug[c].clone();
                for (x, y) in aug[i].iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
    }
    aug.into_iter().map(|r| r[n..].to_vec()).collect()
}

/// All weight multiplicities of `V(lambda)` by Freudenthal's formula.
pub fn freudenthal_multiplicities(rs: &RootSystem, lambda: &Weight) -> BTreeMap<Weight, u64> {
    let ip = InnerProduct::new(rs);
    let rho = rs.rho();
    let roots: Vec<(Weight, i64)> = rs
        .positive_roots_root_basis()
        .iter()
        .map(|b| (rs.root_to_weight(b), b.iter().sum::<i64>()))
        .collect();
    let simple: Vec<Weight> = (1..=rs.rank()).map(|i| rs.simple_root(i)).collect();
    let lr = lambda.add(&rho);
    let top = ip.pair(&lr, &lr);

    let mut mult: BTreeMap<Weight, u64> = BTreeMap::new();
    mult.insert(lambda.clone(), 1);
    let mut layer: BTreeSet<Weight> = BTreeSet::from([lambda.clone()]);
    let mut depth = 0i64;
    while !layer.is_empty() {
        depth += 1;
        let candidates: BTreeSet<Weight> =
            layer.iter().flat_map(|nu| simple.iter().map(move |a| nu.sub(a))).collect();
        let mut next = BTreeSet::new();
        for mu in candidates {
            let mr = mu.add(&rho);
            let denom = &top - ip.pair(&mr, &mr);
            if denom.is_zero() {
                continue;
            }
            let mut acc = Scalar::zero();
            for (alpha, height) in &roots {
                // mu + k alpha stays at depth >= 0 below lambda
                for k in 1..=depth / height {
                    let shifted = mu.add(&alpha.scale(k));
                    if let Some(&m) = mult.get(&shifted) {
                        acc += int(m as i64) * ip.pair(&shifted, alpha);
                    }
                }
            }
            let m = acc * int(2) / denom;
            assert!(m.is_integer(), "Freudenthal produced a non-integer multiplicity");
            let m = m.to_integer().to_u64().expect("non-negative multiplicity");
            if m > 0 {
                mult.insert(mu.clone(), m);
                next.insert(mu);
            }
        }
        layer = next;
    }
    mult
}

pub fn freudenthal_multiplicity(rs: &RootSystem, lambda: &Weight, mu: &Weight) -> u64 {
    freudenthal_multiplicities(rs, lambda).get(mu).copied().unwrap_or(0)
}
