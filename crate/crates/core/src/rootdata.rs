//! Root data, weights and Weyl group combinatorics for the finite types.
//!
//! Conventions used throughout the crate:
//!
//! * simple roots and fundamental weights follow Bourbaki numbering;
//! * the Cartan matrix satisfies `A[i][j] = <alpha_j, coroot_i>`;
//! * a [`Weight`] is stored by its pairings with the simple coroots, so the
//!   simple root `alpha_j` has coordinates given by column `j` of `A`;
//! * a [`CorootVector`] is stored in the basis of simple coroots;
//! * a [`WeylWord`] `[i_l, ..., i_1]` denotes the product
//!   `s_{i_l} ... s_{i_1}`, so its rightmost letter acts first.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootDataError {
    #[error("invalid Lie type `{0}`")]
    InvalidType(String),
    #[error("simple index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("weight has {got} coordinates, expected {expected}")]
    RankMismatch { got: usize, expected: usize },
    #[error("word {0} is not reduced")]
    NotReduced(WeylWord),
    #[error("cannot parse `{0}` as a list of integers")]
    Parse(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Series {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

/// A finite Cartan type such as `A2` or `G2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LieType {
    series: Series,
    rank: usize,
}

impl LieType {
    pub fn new(series: Series, rank: usize) -> Result<Self, RootDataError> {
        let ok = match series {
            Series::A => rank >= 1,
            Series::B | Series::C => rank >= 2,
            Series::D => rank >= 3,
            Series::E => (6..=8).contains(&rank),
            Series::F => rank == 4,
            Series::G => rank == 2,
        };
        if ok {
            Ok(LieType { series, rank })
        } else {
            Err(RootDataError::InvalidType(format!("{series:?}{rank}")))
        }
    }

    pub fn series(&self) -> Series {
        self.series
    }

    pub fn rank(&self) -> usize {
        self.rank
    }
}

impl fmt::Display for LieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.series, self.rank)
    }
}

impl FromStr for LieType {
    type Err = RootDataError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || RootDataError::InvalidType(s.to_string());
        let mut chars = s.chars();
        let series = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Series::A,
            Some('B') => Series::B,
            Some('C') => Series::C,
            Some('D') => Series::D,
            Some('E') => Series::E,
            Some('F') => Series::F,
            Some('G') => Series::G,
            _ => return Err(bad()),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| bad())?;
        LieType::new(series, rank).map_err(|_| bad())
    }
}

impl Serialize for LieType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for LieType {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Integral weight, stored as pairings with the simple coroots.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    /// `<self, coroot>`.
    pub fn pair(&self, coroot: &CorootVector) -> i64 {
        self.0.iter().zip(&coroot.0).map(|(a, b)| a * b).sum()
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: i64) -> Weight {
        Weight(self.0.iter().map(|a| a * k).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", join(&self.0))
    }
}

impl FromStr for Weight {
    type Err = RootDataError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_list(s).map(Weight)
    }
}

/// Vector in the basis of simple coroots.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CorootVector(pub Vec<i64>);

impl CorootVector {
    pub fn simple(rank: usize, i: usize) -> Self {
        let mut c = vec![0; rank];
        c[i - 1] = 1;
        CorootVector(c)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&c| c >= 0) && self.0.iter().any(|&c| c > 0)
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }
}

impl fmt::Display for CorootVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", join(&self.0))
    }
}

/// A word in the simple reflections, 1-based letters. The rightmost letter
/// is applied first.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeylWord(pub Vec<usize>);

impl WeylWord {
    pub fn empty() -> Self {
        WeylWord(Vec::new())
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Letters in the order they act: `i_1, i_2, ..., i_l`.
    pub fn application_order(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().rev().copied()
    }

    pub fn inverse(&self) -> WeylWord {
        WeylWord(self.0.iter().rev().copied().collect())
    }
}

impl fmt::Display for WeylWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", join(&self.0))
    }
}

impl FromStr for WeylWord {
    type Err = RootDataError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let v = parse_list(s)?;
        if v.iter().any(|&x| x < 1) {
            return Err(RootDataError::Parse(s.to_string()));
        }
        Ok(WeylWord(v.into_iter().map(|x| x as usize).collect()))
    }
}

fn join<T: fmt::Display>(v: &[T]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn parse_list(s: &str) -> Result<Vec<i64>, RootDataError> {
    let t = s.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
    if t.trim().is_empty() {
        return Ok(Vec::new());
    }
    t.split(',')
        .map(|p| p.trim().parse::<i64>().map_err(|_| RootDataError::Parse(s.to_string())))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CartanMatrix(pub Vec<Vec<i64>>);

impl CartanMatrix {
    pub fn rank(&self) -> usize {
        self.0.len()
    }

    /// `A[i][j]` with 0-based indices.
    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.0[i][j]
    }
}

/// Bourbaki Cartan matrix of the given type.
pub fn cartan_matrix(t: LieType) -> CartanMatrix {
    let n = t.rank;
    let mut a = vec![vec![0i64; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize, aij: i64, aji: i64| {
        a[i - 1][j - 1] = aij;
        a[j - 1][i - 1] = aji;
    };
    match t.series {
        Series::A => {
            for i in 1..n {
                link(i, i + 1, -1, -1);
            }
        }
        Series::B => {
            for i in 1..n - 1 {
                link(i, i + 1, -1, -1);
            }
            // alpha_n short
            link(n - 1, n, -1, -2);
        }
        Series::C => {
            for i in 1..n - 1 {
                link(i, i + 1, -1, -1);
            }
            // alpha_n long
            link(n - 1, n, -2, -1);
        }
        Series::D => {
            for i in 1..n - 1 {
                link(i, i + 1, -1, -1);
            }
            link(n - 2, n, -1, -1);
        }
        Series::E => {
            link(1, 3, -1, -1);
            link(2, 4, -1, -1);
            for i in 3..n {
                link(i, i + 1, -1, -1);
            }
        }
        Series::F => {
            link(1, 2, -1, -1);
            link(2, 3, -1, -2);
            link(3, 4, -1, -1);
        }
        Series::G => {
            // alpha_1 short, alpha_2 long
            link(1, 2, -3, -1);
        }
    }
    CartanMatrix(a)
}

/// Everything needed for Weyl group computations in one type.
#[derive(Debug, Clone)]
pub struct RootSystem {
    lie_type: LieType,
    cartan: CartanMatrix,
    positive_coroots: Vec<CorootVector>,
    positive_roots: Vec<Vec<i64>>,
}

impl RootSystem {
    pub fn new(lie_type: LieType) -> Self {
        let cartan = cartan_matrix(lie_type);
        let r = lie_type.rank;
        // Coroot system is the root system of the transposed Cartan matrix.
        let positive_coroots = closure(r, |g: &[i64], i| {
            let p: i64 = (0..r).map(|j| g[j] * cartan.0[j][i]).sum();
            let mut out = g.to_vec();
            out[i] -= p;
            out
        })
        .into_iter()
        .map(CorootVector)
        .collect();
        let positive_roots = closure(r, |b: &[i64], i| {
            let p: i64 = (0..r).map(|j| b[j] * cartan.0[i][j]).sum();
            let mut out = b.to_vec();
            out[i] -= p;
            out
        });
        RootSystem { lie_type, cartan, positive_coroots, positive_roots }
    }

    pub fn lie_type(&self) -> LieType {
        self.lie_type
    }

    pub fn rank(&self) -> usize {
        self.lie_type.rank
    }

    pub fn cartan(&self) -> &CartanMatrix {
        &self.cartan
    }

    /// Positive coroots, sorted by height then coordinates.
    pub fn positive_coroots(&self) -> &[CorootVector] {
        &self.positive_coroots
    }

    /// Positive roots in the simple-root basis, sorted by height.
    pub fn positive_roots_root_basis(&self) -> &[Vec<i64>] {
        &self.positive_roots
    }

    /// Simple root `alpha_i` (1-based) in fundamental-weight coordinates.
    pub fn simple_root(&self, i: usize) -> Weight {
        Weight((0..self.rank()).map(|row| self.cartan.0[row][i - 1]).collect())
    }

    /// Root given in the simple-root basis, converted to weight coordinates.
    pub fn root_to_weight(&self, b: &[i64]) -> Weight {
        let r = self.rank();
        Weight((0..r).map(|i| (0..r).map(|j| self.cartan.0[i][j] * b[j]).sum()).collect())
    }

    /// `2 rho-check`: sum of all positive coroots.
    pub fn two_rho_check(&self) -> CorootVector {
        let mut acc = vec![0; self.rank()];
        for c in &self.positive_coroots {
            for (a, x) in acc.iter_mut().zip(&c.0) {
                *a += x;
            }
        }
        CorootVector(acc)
    }

    /// `rho`, which pairs to 1 with every simple coroot.
    pub fn rho(&self) -> Weight {
        Weight(vec![1; self.rank()])
    }

    fn check_index(&self, i: usize) -> Result<(), RootDataError> {
        if i == 0 || i > self.rank() {
            Err(RootDataError::IndexOutOfRange { index: i, rank: self.rank() })
        } else {
            Ok(())
        }
    }

    fn check_weight(&self, mu: &Weight) -> Result<(), RootDataError> {
        if mu.rank() != self.rank() {
            Err(RootDataError::RankMismatch { got: mu.rank(), expected: self.rank() })
        } else {
            Ok(())
        }
    }

    pub fn check_word(&self, w: &WeylWord) -> Result<(), RootDataError> {
        w.0.iter().try_for_each(|&i| self.check_index(i))
    }

    /// `s_i(mu) = mu - <mu, coroot_i> alpha_i`.
    pub fn simple_reflection(&self, i: usize, mu: &Weight) -> Result<Weight, RootDataError> {
        self.check_index(i)?;
        self.check_weight(mu)?;
        Ok(self.reflect_unchecked(i, mu))
    }

    fn reflect_unchecked(&self, i: usize, mu: &Weight) -> Weight {
        let p = mu.0[i - 1];
        Weight(
            mu.0.iter()
                .enumerate()
                .map(|(row, &c)| c - p * self.cartan.0[row][i - 1])
                .collect(),
        )
    }

    /// `s_i` acting on a coroot: `g - <alpha_i, g> coroot_i`.
    pub fn reflect_coroot(&self, i: usize, g: &CorootVector) -> CorootVector {
        let r = self.rank();
        let p: i64 = (0..r).map(|j| g.0[j] * self.cartan.0[j][i - 1]).sum();
        let mut out = g.0.clone();
        out[i - 1] -= p;
        CorootVector(out)
    }

    pub fn act(&self, w: &WeylWord, mu: &Weight) -> Result<Weight, RootDataError> {
        self.check_word(w)?;
        self.check_weight(mu)?;
        Ok(w.application_order().fold(mu.clone(), |acc, i| self.reflect_unchecked(i, &acc)))
    }

    pub fn act_coroot(&self, w: &WeylWord, g: &CorootVector) -> Result<CorootVector, RootDataError> {
        self.check_word(w)?;
        Ok(w.application_order().fold(g.clone(), |acc, i| self.reflect_coroot(i, &acc)))
    }

    /// `gamma_t = s_{i_1} ... s_{i_{t-1}} (coroot_{i_t})` for `t = 1..l`,
    /// without checking reducedness.
    fn crossing_unchecked(&self, w: &WeylWord) -> Vec<CorootVector> {
        let order: Vec<usize> = w.application_order().collect();
        (0..order.len())
            .map(|t| {
                let mut g = CorootVector::simple(self.rank(), order[t]);
                for &i in order[..t].iter().rev() {
                    g = self.reflect_coroot(i, &g);
                }
                g
            })
            .collect()
    }

    pub fn is_reduced(&self, w: &WeylWord) -> bool {
        if self.check_word(w).is_err() {
            return false;
        }
        let cs = self.crossing_unchecked(w);
        let distinct: HashSet<&CorootVector> = cs.iter().collect();
        cs.iter().all(|c| c.is_positive()) && distinct.len() == cs.len()
    }

    pub fn crossing_coroots(&self, w: &WeylWord) -> Result<Vec<CorootVector>, RootDataError> {
        self.check_word(w)?;
        if !self.is_reduced(w) {
            return Err(RootDataError::NotReduced(w.clone()));
        }
        Ok(self.crossing_unchecked(w))
    }

    /// The Weyl element represented by a word.
    pub fn element(&self, w: &WeylWord) -> Result<WeylElement, RootDataError> {
        let image = self.act(w, &self.rho())?;
        Ok(WeylElement { rho_image: image })
    }

    pub fn identity(&self) -> WeylElement {
        WeylElement { rho_image: self.rho() }
    }

    pub fn longest_element(&self) -> WeylElement {
        let mut mu = self.rho();
        while let Some(i) = (1..=self.rank()).find(|&i| mu.0[i - 1] > 0) {
            mu = self.reflect_unchecked(i, &mu);
        }
        WeylElement { rho_image: mu }
    }

    /// Left descents of `w`: letters `i` with `l(s_i w) < l(w)`, ascending.
    fn left_descents(&self, image: &Weight) -> Vec<usize> {
        (1..=self.rank()).filter(|&i| image.0[i - 1] < 0).collect()
    }

    /// Lexicographically smallest reduced word.
    pub fn canonical_word(&self, w: &WeylElement) -> WeylWord {
        let mut image = w.rho_image.clone();
        let mut letters = Vec::new();
        while let Some(&i) = self.left_descents(&image).first() {
            letters.push(i);
            image = self.reflect_unchecked(i, &image);
        }
        WeylWord(letters)
    }

    pub fn length(&self, w: &WeylElement) -> usize {
        self.positive_coroots.iter().filter(|g| w.rho_image.pair(g) < 0).count()
    }

    /// All reduced words of the element of `w`, in lexicographic order, at
    /// most `cap` of them.
    pub fn all_reduced_words(&self, w: &WeylWord, cap: usize) -> Result<Vec<WeylWord>, RootDataError> {
        if !self.is_reduced(w) {
            return Err(RootDataError::NotReduced(w.clone()));
        }
        let el = self.element(w)?;
        let mut out = Vec::new();
        let mut prefix = Vec::new();
        self.reduced_words_rec(&el.rho_image, &mut prefix, &mut out, cap);
        Ok(out)
    }

    fn reduced_words_rec(&self, image: &Weight, prefix: &mut Vec<usize>, out: &mut Vec<WeylWord>, cap: usize) {
        if out.len() >= cap {
            return;
        }
        let descents = self.left_descents(image);
        if descents.is_empty() {
            out.push(WeylWord(prefix.clone()));
            return;
        }
        for i in descents {
            prefix.push(i);
            self.reduced_words_rec(&self.reflect_unchecked(i, image), prefix, out, cap);
            prefix.pop();
            if out.len() >= cap {
                return;
            }
        }
    }

    /// W-orbit of a weight, sorted.
    pub fn orbit(&self, mu: &Weight) -> BTreeSet<Weight> {
        let mut seen = BTreeSet::from([mu.clone()]);
        let mut queue = VecDeque::from([mu.clone()]);
        while let Some(nu) = queue.pop_front() {
            for i in 1..=self.rank() {
                let s = self.reflect_unchecked(i, &nu);
                if seen.insert(s.clone()) {
                    queue.push_back(s);
                }
            }
        }
        seen
    }

    /// The unique dominant weight in the orbit of `mu`.
    pub fn dominant_representative(&self, mu: &Weight) -> Weight {
        let mut nu = mu.clone();
        while let Some(i) = (1..=self.rank()).find(|&i| nu.0[i - 1] < 0) {
            nu = self.reflect_unchecked(i, &nu);
        }
        nu
    }

    /// `lambda - mu` in the simple-root basis, if it is integral.
    #[allow(clippy::needless_range_loop)]
    pub fn root_coordinates(&self, diff: &Weight) -> Option<Vec<i64>> {
        // Solve A b = diff by exact elimination over the rationals.
        use num_rational::Ratio;
        let r = self.rank();
        let mut m: Vec<Vec<Ratio<i64>>> = (0..r)
            .map(|i| {
                let mut row: Vec<Ratio<i64>> = (0..r).map(|j| Ratio::from(self.cartan.0[i][j])).collect();
                row.push(Ratio::from(diff.0[i]));
                row
            })
            .collect();
        for col in 0..r {
            let piv = (col..r).find(|&k| m[k][col] != Ratio::from(0))?;
            m.swap(col, piv);
            let p = m[col][col];
            for x in m[col].iter_mut() {
                *x /= p;
            }
            for k in 0..r {
                if k != col && m[k][col] != Ratio::from(0) {
                    let f = m[k][col];
                    for c in 0..=r {
                        let v = m[col][c];
                        m[k][c] -= f * v;
                    }
                }
            }
        }
        m.iter()
            .map(|row| {
                let v = row[r];
                v.is_integer().then(|| v.to_integer())
            })
            .collect()
    }
}

fn closure(r: usize, reflect: impl Fn(&[i64], usize) -> Vec<i64>) -> Vec<Vec<i64>> {
    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut queue = VecDeque::new();
    for i in 0..r {
        let mut e = vec![0; r];
        e[i] = 1;
        seen.insert(e.clone());
        queue.push_back(e);
    }
    while let Some(v) = queue.pop_front() {
        for i in 0..r {
            let s = reflect(&v, i);
            if s.iter().all(|&c| c >= 0) && s.iter().any(|&c| c > 0) && seen.insert(s.clone()) {
                queue.push_back(s);
            }
        }
    }
    let mut out: Vec<Vec<i64>> = seen.into_iter().collect();
    out.sort_by_key(|v| (v.iter().sum::<i64>(), std::cmp::Reverse(v.clone())));
    out
}

/// A Weyl group element, identified by its action on `rho`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeylElement {
    rho_image: Weight,
}

impl WeylElement {
    pub fn rho_image(&self) -> &Weight {
        &self.rho_image
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(s: &str) -> RootSystem {
        RootSystem::new(s.parse().unwrap())
    }

    fn w(v: &[i64]) -> Weight {
        Weight(v.to_vec())
    }

    #[test]
    fn cartan_examples() {
        assert_eq!(cartan_matrix("A1".parse().unwrap()).0, vec![vec![2]]);
        assert_eq!(cartan_matrix("A2".parse().unwrap()).0, vec![vec![2, -1], vec![-1, 2]]);
        assert_eq!(cartan_matrix("B2".parse().unwrap()).0, vec![vec![2, -1], vec![-2, 2]]);
        assert_eq!(cartan_matrix("G2".parse().unwrap()).0, vec![vec![2, -3], vec![-1, 2]]);
    }

    #[test]
    fn invalid_types() {
        for s in ["A0", "B1", "D2", "E5", "E9", "F3", "G3", "X2", "", "A"] {
            assert!(s.parse::<LieType>().is_err(), "{s}");
        }
        assert_eq!("e8".parse::<LieType>().unwrap().to_string(), "E8");
    }

    #[test]
    fn cartan_matrices_are_valid_finite_type() {
        let types = ["A1", "A4", "B3", "C4", "D5", "E6", "E7", "E8", "F4", "G2"];
        for t in types {
            let a = cartan_matrix(t.parse().unwrap());
            let n = a.rank();
            for i in 0..n {
                assert_eq!(a.0[i][i], 2);
                for j in 0..n {
                    if i != j {
                        assert!(a.0[i][j] <= 0);
                        assert_eq!(a.0[i][j] == 0, a.0[j][i] == 0);
                    }
                }
            }
            // Leading principal minors positive.
            for k in 1..=n {
                assert!(det(&a.0[..k].iter().map(|r| r[..k].to_vec()).collect::<Vec<_>>()) > 0.0, "{t}");
            }
        }
    }

    #[allow(clippy::needless_range_loop)]
    fn det(m: &[Vec<i64>]) -> f64 {
        let n = m.len();
        let mut a: Vec<Vec<f64>> = m.iter().map(|r| r.iter().map(|&x| x as f64).collect()).collect();
        let mut d = 1.0;
        for c in 0..n {
            let p = (c..n).max_by(|&x, &y| a[x][c].abs().partial_cmp(&a[y][c].abs()).unwrap()).unwrap();
            if a[p][c] == 0.0 {
                return 0.0;
            }
            if p != c {
                a.swap(p, c);
                d = -d;
            }
            d *= a[c][c];
            for r in c + 1..n {
                let f = a[r][c] / a[c][c];
                for k in c..n {
                    a[r][k] -= f * a[c][k];
                }
            }
        }
        d
    }

    #[test]
    fn reflections() {
        let a1 = rs("A1");
        assert_eq!(a1.simple_reflection(1, &w(&[5])).unwrap(), w(&[-5]));
        let a2 = rs("A2");
        assert_eq!(a2.simple_reflection(1, &w(&[1, 0])).unwrap(), w(&[-1, 1]));
        assert_eq!(a2.simple_reflection(1, &w(&[0, 1])).unwrap(), w(&[0, 1]));
        assert!(a2.simple_reflection(3, &w(&[0, 1])).is_err());
        assert!(a2.simple_reflection(0, &w(&[0, 1])).is_err());
    }

    #[test]
    fn act_examples() {
        let a2 = rs("A2");
        assert_eq!(a2.act(&WeylWord::empty(), &w(&[3, 4])).unwrap(), w(&[3, 4]));
        assert_eq!(a2.act(&WeylWord(vec![1, 2, 1]), &w(&[1, 0])).unwrap(), w(&[0, -1]));
        assert_eq!(a2.act(&WeylWord(vec![2, 1, 2]), &w(&[1, 0])).unwrap(), w(&[0, -1]));
        assert!(a2.act(&WeylWord(vec![4]), &w(&[1, 0])).is_err());
    }

    #[test]
    fn reducedness() {
        let a2 = rs("A2");
        assert!(a2.is_reduced(&WeylWord(vec![1, 2, 1])));
        assert!(!a2.is_reduced(&WeylWord(vec![1, 1])));
        assert!(a2.is_reduced(&WeylWord::empty()));
        assert!(!a2.is_reduced(&WeylWord(vec![1, 2, 1, 2])));
        assert!(!rs("G2").is_reduced(&WeylWord(vec![1, 2, 1, 2, 1, 2, 1])));
        assert!(rs("G2").is_reduced(&WeylWord(vec![1, 2, 1, 2, 1, 2])));
    }

    #[test]
    fn crossing_examples() {
        let a2 = rs("A2");
        let c = a2.crossing_coroots(&WeylWord(vec![1, 2])).unwrap();
        assert_eq!(c, vec![CorootVector(vec![0, 1]), CorootVector(vec![1, 1])]);
        assert_eq!(a2.crossing_coroots(&WeylWord(vec![2])).unwrap(), vec![CorootVector(vec![0, 1])]);
        assert_eq!(rs("A1").crossing_coroots(&WeylWord(vec![1])).unwrap(), vec![CorootVector(vec![1])]);
        assert!(a2.crossing_coroots(&WeylWord(vec![1, 1])).is_err());
    }

    #[test]
    fn reduced_word_enumeration() {
        let a2 = rs("A2");
        let w0 = a2.canonical_word(&a2.longest_element());
        assert_eq!(w0, WeylWord(vec![1, 2, 1]));
        assert_eq!(
            a2.all_reduced_words(&w0, 10).unwrap(),
            vec![WeylWord(vec![1, 2, 1]), WeylWord(vec![2, 1, 2])]
        );
        assert_eq!(a2.all_reduced_words(&w0, 1).unwrap().len(), 1);
        assert_eq!(rs("A1").all_reduced_words(&WeylWord(vec![1]), 5).unwrap(), vec![WeylWord(vec![1])]);
        let b2 = rs("B2");
        let words = b2.all_reduced_words(&b2.canonical_word(&b2.longest_element()), 10).unwrap();
        assert_eq!(words, vec![WeylWord(vec![1, 2, 1, 2]), WeylWord(vec![2, 1, 2, 1])]);
        let a3 = rs("A3");
        let words = a3.all_reduced_words(&a3.canonical_word(&a3.longest_element()), 100).unwrap();
        assert_eq!(words.len(), 16);
        assert!(words.windows(2).all(|p| p[0] < p[1]));
    }

    #[test]
    fn positive_coroot_counts() {
        let a2 = rs("A2");
        assert_eq!(
            a2.positive_coroots(),
            &[CorootVector(vec![1, 0]), CorootVector(vec![0, 1]), CorootVector(vec![1, 1])]
        );
        for (t, n) in [("A1", 1), ("A3", 6), ("B2", 4), ("B3", 9), ("C3", 9), ("D4", 12), ("G2", 6), ("F4", 24), ("E6", 36), ("E7", 63)] {
            let r = rs(t);
            assert_eq!(r.positive_coroots().len(), n, "{t}");
            assert_eq!(r.positive_roots_root_basis().len(), n, "{t}");
            assert_eq!(r.length(&r.longest_element()), n, "{t}");
            assert_eq!(r.canonical_word(&r.longest_element()).len(), n, "{t}");
        }
        assert_eq!(rs("A1").canonical_word(&rs("A1").longest_element()), WeylWord(vec![1]));
    }

    #[test]
    fn two_rho_pairs_to_two_with_simple_roots() {
        // <alpha_i, 2 rho-check> = 2 for every simple root.
        for t in ["A3", "B3", "C3", "D4", "G2", "F4"] {
            let r = rs(t);
            let two_rho = r.two_rho_check();
            for i in 1..=r.rank() {
                assert_eq!(r.simple_root(i).pair(&two_rho), 2, "{t}");
            }
        }
        assert_eq!(rs("A2").two_rho_check(), CorootVector(vec![2, 2]));
    }

    #[test]
    fn dominance() {
        assert!(w(&[0, 0]).is_dominant());
        assert!(!w(&[1, -1]).is_dominant());
        let a2 = rs("A2");
        assert_eq!(a2.dominant_representative(&w(&[0, -1])), w(&[1, 0]));
    }

    #[test]
    fn parsing() {
        assert_eq!("1,0".parse::<Weight>().unwrap(), w(&[1, 0]));
        assert_eq!(" -2 ".parse::<Weight>().unwrap(), w(&[-2]));
        assert_eq!("".parse::<WeylWord>().unwrap(), WeylWord::empty());
        assert_eq!("1,2,1".parse::<WeylWord>().unwrap(), WeylWord(vec![1, 2, 1]));
        assert!("1,x".parse::<Weight>().is_err());
        assert!("0,1".parse::<WeylWord>().is_err());
    }

    #[test]
    fn root_coordinates_solve() {
        let a2 = rs("A2");
        assert_eq!(a2.root_coordinates(&w(&[1, 1])), Some(vec![1, 1]));
        assert_eq!(a2.root_coordinates(&w(&[1, 0])), None);
    }
}
