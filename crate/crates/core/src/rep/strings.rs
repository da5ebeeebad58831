//! Decomposition of a weight space into `sl(2)` strings for one simple root.

use num_traits::Zero;

use super::{Irrep, RepError};
use crate::linalg::QMatrix;
use crate::ratfun::Scalar;
use crate::rootdata::{RootDataError, Weight};

/// One block of strings with highest weight `m`, meeting `V_nu` at depth `k`
/// (so `<nu, coroot_i> = m - 2k`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StringComponent {
    pub m: i64,
    pub k: i64,
    /// Basis of the `e_i`-primitive vectors in `V_{nu + k alpha_i}`.
    pub primitive: Vec<Vec<Scalar>>,
    /// Columns `f_i^(k) u` in `V_nu`.
    pub injection: Vec<Vec<Scalar>>,
    /// Columns `f_i^(m-k) u` in `V_{s_i nu}`.
    pub reflected: Vec<Vec<Scalar>>,
}

impl StringComponent {
    pub fn multiplicity(&self) -> usize {
        self.primitive.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StringDecomposition {
    pub index: usize,
    pub weight: Weight,
    pub reflected_weight: Weight,
    /// Ordered by decreasing `m`.
    pub components: Vec<StringComponent>,
}

impl StringDecomposition {
    /// Change of basis from string-adapted coordinates to the standard basis
    /// of `V_nu`: the injection columns of all components side by side.
    pub fn source_basis(&self) -> QMatrix {
        let cols: Vec<Vec<Scalar>> = self.components.iter().flat_map(|c| c.injection.iter().cloned()).collect();
        let rows = cols.first().map_or(0, Vec::len);
        QMatrix::from_columns(rows, &cols)
    }

    /// The same for `V_{s_i nu}` using the reflected columns.
    pub fn target_basis(&self) -> QMatrix {
        let cols: Vec<Vec<Scalar>> = self.components.iter().flat_map(|c| c.reflected.iter().cloned()).collect();
        let rows = cols.first().map_or(0, Vec::len);
        QMatrix::from_columns(rows, &cols)
    }
}

pub(super) fn decompose(v: &Irrep, i: usize, nu: &Weight) -> Result<StringDecomposition, RepError> {
    let r = v.rank();
    if i == 0 || i > r {
        return Err(RootDataError::IndexOutOfRange { index: i, rank: r }.into());
    }
    if v.space(nu).is_none() {
        return Err(RepError::NotAWeight(nu.clone()));
    }
    let alpha = v.roots().simple_root(i);
    let n = nu.0[i - 1];
    let reflected_weight = nu.sub(&alpha.scale(n));
    let mut components = Vec::new();
    let mut k = 0i64;
    loop {
        let top = nu.add(&alpha.scale(k));
        let Some(space) = v.space(&top) else { break };
        let m = n + 2 * k;
        if k <= m {
            let e = v.e_block(i, &top)?;
            let primitive = if e.rows() == 0 { unit_vectors(space.dim()) } else { e.kernel() };
            if !primitive.is_empty() {
                let mut injection = Vec::new();
                let mut reflected = Vec::new();
                for u in &primitive {
                    injection.push(v.divided_f_power(i, k as usize, &top, u)?);
                    reflected.push(v.divided_f_power(i, (m - k) as usize, &top, u)?);
                }
                components.push(StringComponent { m, k, primitive, injection, reflected });
            }
        }
        k += 1;
    }
    components.sort_by_key(|c| std::cmp::Reverse(c.m));
    Ok(StringDecomposition { index: i, weight: nu.clone(), reflected_weight, components })
}

fn unit_vectors(n: usize) -> Vec<Vec<Scalar>> {
    (0..n)
        .map(|j| {
            let mut v = vec![Scalar::zero(); n];
            v[j] = Scalar::from_integer(1.into());
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::super::DEFAULT_DIM_CAP;
    use super::*;

    fn build(t: &str, hw: &[i64]) -> Irrep {
        Irrep::build(t.parse().unwrap(), &Weight(hw.to_vec()), DEFAULT_DIM_CAP).unwrap()
    }

    fn shape(d: &StringDecomposition) -> Vec<(i64, i64, usize)> {
        d.components.iter().map(|c| (c.m, c.k, c.multiplicity())).collect()
    }

    #[test]
    fn examples() {
        let d = build("A1", &[2]).sl2_strings(1, &Weight(vec![0])).unwrap();
        assert_eq!(shape(&d), vec![(2, 1, 1)]);
        let d = build("A2", &[1, 1]).sl2_strings(1, &Weight(vec![0, 0])).unwrap();
        assert_eq!(shape(&d), vec![(2, 1, 1), (0, 0, 1)]);
        let d = build("A2", &[1, 0]).sl2_strings(1, &Weight(vec![1, 0])).unwrap();
        assert_eq!(shape(&d), vec![(1, 0, 1)]);
        assert_eq!(d.reflected_weight, Weight(vec![-1, 1]));
    }

    #[test]
    fn change_of_basis_is_invertible() {
        for (t, hw) in [("A2", vec![1, 1]), ("B2", vec![1, 1]), ("G2", vec![0, 1]), ("A3", vec![1, 0, 1])] {
            let v = build(t, &hw);
            for sp in v.weight_spaces() {
                for i in 1..=v.rank() {
                    let d = v.sl2_strings(i, &sp.weight).unwrap();
                    let s = d.source_basis();
                    assert_eq!(s.rows(), sp.dim());
                    assert_eq!(s.cols(), sp.dim(), "{t} {} i={i}", sp.weight);
                    let inv = s.inverse().expect("invertible");
                    assert_eq!(s.mul(&inv), QMatrix::identity(sp.dim()));
                    assert!(d.target_basis().inverse().is_some());
                }
            }
        }
    }

    #[test]
    fn rejects_non_weights() {
        let v = build("A2", &[1, 0]);
        assert!(v.sl2_strings(1, &Weight(vec![5, 5])).is_err());
        assert!(v.sl2_strings(3, &Weight(vec![1, 0])).is_err());
    }
}
