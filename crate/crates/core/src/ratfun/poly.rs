use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use num_traits::{One, Signed, Zero};

use super::form::LinearForm;
use super::Scalar;

/// Exponent vector over `x1..xr, h` (h last).
pub type Monomial = Vec<u32>;

/// Sparse polynomial over the rationals in `x1..xr` and `h`.
///
/// Terms are kept in a `BTreeMap` keyed by exponent vectors, so iteration
/// order is lexicographic with `x1 > x2 > ... > xr > h`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nx: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Polynomial {
    pub fn zero(nx: usize) -> Self {
        Polynomial { nx, terms: BTreeMap::new() }
    }

    pub fn constant(nx: usize, c: Scalar) -> Self {
        let mut p = Self::zero(nx);
        if !c.is_zero() {
            p.terms.insert(vec![0; nx + 1], c);
        }
        p
    }

    pub fn one(nx: usize) -> Self {
        Self::constant(nx, Scalar::one())
    }

    /// The single variable with index `var` (`nx` means `h`).
    pub fn var(nx: usize, var: usize) -> Self {
        let mut m = vec![0; nx + 1];
        m[var] = 1;
        Self::from_terms(nx, [(m, Scalar::one())])
    }

    pub fn from_terms(nx: usize, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Self {
        let mut p = Self::zero(nx);
        for (m, c) in terms {
            assert_eq!(m.len(), nx + 1, "monomial arity");
            p.add_term(m, c);
        }
        p
    }

    pub fn from_linear(form: &LinearForm) -> Self {
        let nx = form.nx();
        let mut p = Self::zero(nx);
        for (i, c) in form.x().iter().enumerate() {
            let mut m = vec![0; nx + 1];
            m[i] = 1;
            p.add_term(m, c.clone());
        }
        let mut m = vec![0; nx + 1];
        m[nx] = 1;
        p.add_term(m, form.h().clone());
        p
    }

    pub fn nx(&self) -> usize {
        self.nx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.iter().all(|&e| e == 0))
    }

    pub fn constant_value(&self) -> Option<Scalar> {
        if self.is_zero() {
            return Some(Scalar::zero());
        }
        if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    /// Lexicographically largest term.
    pub fn leading_term(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.iter().sum()).max().unwrap_or(0)
    }

    fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.nx, other.nx, "polynomial arity mismatch");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial { nx: self.nx, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &Scalar) -> Polynomial {
        if k.is_zero() {
            return Polynomial::zero(self.nx);
        }
        Polynomial { nx: self.nx, terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect() }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.nx, other.nx, "polynomial arity mismatch");
        let mut out = Polynomial::zero(self.nx);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m: Monomial = ma.iter().zip(mb).map(|(a, b)| a + b).collect();
                out.add_term(m, ca * cb);
            }
        }
        out
    }

    pub fn mul_linear(&self, form: &LinearForm) -> Polynomial {
        self.mul(&Polynomial::from_linear(form))
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.nx);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Exact quotient by a nonzero linear form, or `None` when the form does
    /// not divide `self`.
    pub fn div_exact_linear(&self, form: &LinearForm) -> Option<Polynomial> {
        let divisor = Polynomial::from_linear(form);
        let (lead_m, lead_c) = divisor.leading_term().expect("nonzero divisor");
        let var = lead_m.iter().position(|&e| e == 1).unwrap();
        let lead_c = lead_c.clone();
        let mut rem = self.clone();
        let mut quot = Polynomial::zero(self.nx);
        while let Some((m, c)) = rem.leading_term() {
            if m[var] == 0 {
                return None;
            }
            let mut qm = m.clone();
            qm[var] -= 1;
            let qc = c / &lead_c;
            for (dm, dc) in &divisor.terms {
                let prod: Monomial = qm.iter().zip(dm).map(|(a, b)| a + b).collect();
                rem.add_term(prod, -(&qc * dc));
            }
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// If `self` is a nonzero homogeneous linear polynomial, the form.
    pub fn as_linear(&self) -> Option<LinearForm> {
        if self.is_zero() {
            return None;
        }
        let mut x = vec![Scalar::zero(); self.nx];
        let mut h = Scalar::zero();
        for (m, c) in &self.terms {
            if m.iter().sum::<u32>() != 1 {
                return None;
            }
            let v = m.iter().position(|&e| e == 1).unwrap();
            if v == self.nx {
                h = c.clone();
            } else {
                x[v] = c.clone();
            }
        }
        Some(LinearForm::new(x, h))
    }

    /// Ring homomorphism sending `x_i` to `images[i]` and `h` to `h`.
    pub fn substitute(&self, images: &[LinearForm], target_nx: usize) -> Polynomial {
        assert_eq!(images.len(), self.nx, "one image per x variable");
        let image_polys: Vec<Polynomial> = images.iter().map(Polynomial::from_linear).collect();
        let h = Polynomial::var(target_nx, target_nx);
        let mut power_cache: BTreeMap<(usize, u32), Polynomial> = BTreeMap::new();
        let mut pow = |var: usize, e: u32| -> Polynomial {
            power_cache
                .entry((var, e))
                .or_insert_with(|| if var == self.nx { h.pow(e) } else { image_polys[var].pow(e) })
                .clone()
        };
        let mut out = Polynomial::zero(target_nx);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target_nx, c.clone());
            for (var, &e) in m.iter().enumerate() {
                if e > 0 {
                    t = t.mul(&pow(var, e));
                }
            }
            for (tm, tc) in t.terms {
                out.add_term(tm, tc);
            }
        }
        out
    }

    pub fn evaluate(&self, point: &[Scalar]) -> Scalar {
        assert_eq!(point.len(), self.nx + 1, "evaluation point arity");
        let mut acc = Scalar::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in point.iter().zip(m) {
                for _ in 0..e {
                    t *= v;
                }
            }
            acc += t;
        }
        acc
    }

    /// Reinterprets the polynomial with more x variables (new ones unused).
    pub fn widen(&self, nx: usize) -> Polynomial {
        assert!(nx >= self.nx);
        let terms = self.terms.iter().map(|(m, c)| {
            let mut nm = m[..self.nx].to_vec();
            nm.resize(nx, 0);
            nm.push(m[self.nx]);
            (nm, c.clone())
        });
        Polynomial::from_terms(nx, terms)
    }
}

pub(crate) fn var_name(nx: usize, var: usize) -> String {
    if var == nx {
        "h".to_string()
    } else {
        format!("x{}", var + 1)
    }
}

pub(crate) fn fmt_scalar(c: &Scalar) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for Polynomial {
    /// Terms in descending lexicographic order, written in the parse grammar.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push(if neg { '-' } else { '+' });
            }
            let vars: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(v, &e)| {
                    if e == 1 {
                        var_name(self.nx, v)
                    } else {
                        format!("{}^{}", var_name(self.nx, v), e)
                    }
                })
                .collect();
            if vars.is_empty() {
                out.push_str(&fmt_scalar(&abs));
            } else {
                if !abs.is_one() {
                    let _ = write!(out, "{}*", fmt_scalar(&abs));
                }
                out.push_str(&vars.join("*"));
            }
        }
        f.write_str(&out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Scalar {
        Scalar::from_integer(n.into())
    }

    fn lin(x: &[i64], h: i64) -> LinearForm {
        LinearForm::new(x.iter().map(|&c| q(c)).collect(), q(h))
    }

    #[test]
    fn linear_division() {
        // (x1 - h)(x1 + 2h) / (x1 - h) = x1 + 2h
        let p = Polynomial::from_linear(&lin(&[1], -1)).mul_linear(&lin(&[1], 2));
        let quot = p.div_exact_linear(&lin(&[1], -1)).unwrap();
        assert_eq!(quot, Polynomial::from_linear(&lin(&[1], 2)));
        assert!(p.div_exact_linear(&lin(&[1], 1)).is_none());
        // division by a pure-h form
        let p = Polynomial::from_linear(&lin(&[0, 0], 3)).mul_linear(&lin(&[1, 1], 0));
        assert_eq!(p.div_exact_linear(&lin(&[0, 0], 1)).unwrap(), Polynomial::from_linear(&lin(&[3, 3], 0)));
    }

    #[test]
    fn display() {
        let p = Polynomial::from_linear(&lin(&[1, -2], 3));
        assert_eq!(p.to_string(), "x1-2*x2+3*h");
        assert_eq!(Polynomial::zero(1).to_string(), "0");
        let sq = Polynomial::from_linear(&lin(&[1], 0)).pow(2).scale(&Scalar::new(q(-1).to_integer(), 2.into()));
        assert_eq!(sq.to_string(), "-1/2*x1^2");
    }

    #[test]
    fn substitution_and_evaluation() {
        let p = Polynomial::from_linear(&lin(&[1], 2)).pow(2);
        let s = p.substitute(&[lin(&[-1], -1)], 1);
        // (-x - h + 2h)^2 = (h - x)^2
        assert_eq!(s, Polynomial::from_linear(&lin(&[1], -1)).pow(2));
        assert_eq!(s.evaluate(&[q(3), q(1)]), q(4));
    }
}
