//! Exact rational functions in `x1..xr` and `h` with factored denominators.
//!
//! Every denominator this engine produces is a product of linear forms, so a
//! [`RatFun`] stores its denominator as a multiset of canonical
//! [`DegreeOneForm`]s and never expands it. Cancellation is trial division
//! of the numerator by those forms. Because each form is normalized to have
//! leading coefficient 1 and no denominator form divides the numerator, the
//! stored representation is unique and equality is structural.

mod form;
mod json;
mod parse;
mod poly;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use thiserror::Error;

pub use form::{DegreeOneForm, LinearForm};
pub use json::RatFunJson;
pub use parse::ParseError;
pub use poly::{Monomial, Polynomial};

/// Exact rational scalar.
pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Scalar {
    Scalar::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RatFunError {
    #[error("substitution sends denominator factor {0} to zero")]
    PoleCollapse(String),
    #[error("denominator factor {0} vanishes at the evaluation point")]
    Pole(String),
    #[error("{0} is not a product of known degree-1 forms; cannot invert")]
    NotInvertible(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero linear form in a product")]
    ZeroForm,
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("bad rational function encoding: {0}")]
    Encoding(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatFun {
    num: Polynomial,
    den: BTreeMap<DegreeOneForm, u32>,
}

impl RatFun {
    pub fn zero(nx: usize) -> Self {
        RatFun { num: Polynomial::zero(nx), den: BTreeMap::new() }
    }

    pub fn one(nx: usize) -> Self {
        Self::constant(nx, Scalar::one())
    }

    pub fn constant(nx: usize, c: Scalar) -> Self {
        RatFun { num: Polynomial::constant(nx, c), den: BTreeMap::new() }
    }

    pub fn from_polynomial(num: Polynomial) -> Self {
        RatFun { num, den: BTreeMap::new() }
    }

    pub fn from_linear(form: &LinearForm) -> Self {
        Self::from_polynomial(form.to_polynomial())
    }

    /// The coordinate `x_i` (0-based) as a rational function.
    pub fn x(nx: usize, i: usize) -> Self {
        Self::from_linear(&LinearForm::x_var(nx, i))
    }

    pub fn h(nx: usize) -> Self {
        Self::from_polynomial(Polynomial::var(nx, nx))
    }

    /// `num / prod(forms)`, normalized.
    pub fn from_parts<'a>(num: Polynomial, den: impl IntoIterator<Item = (&'a LinearForm, u32)>) -> Result<Self, RatFunError> {
        let nx = num.nx();
        let mut out = RatFun { num, den: BTreeMap::new() };
        let mut scale = Scalar::one();
        for (form, mult) in den {
            assert_eq!(form.nx(), nx, "form arity");
            let (s, canon) = form.canonicalize().ok_or(RatFunError::ZeroForm)?;
            for _ in 0..mult {
                scale *= &s;
            }
            *out.den.entry(canon).or_insert(0) += mult;
        }
        out.den.retain(|_, m| *m > 0);
        out.num = out.num.scale(&scale.recip());
        out.normalize();
        Ok(out)
    }

    /// Product of linear forms over product of linear forms.
    pub fn ratio_of_products(nx: usize, num: &[LinearForm], den: &[LinearForm]) -> Result<Self, RatFunError> {
        let mut p = Polynomial::one(nx);
        for f in num {
            p = p.mul_linear(f);
        }
        Self::from_parts(p, den.iter().map(|f| (f, 1)))
    }

    pub fn nx(&self) -> usize {
        self.num.nx()
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    /// Denominator factors with multiplicities, in canonical order.
    pub fn denominator(&self) -> impl Iterator<Item = (&DegreeOneForm, u32)> {
        self.den.iter().map(|(f, &m)| (f, m))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_empty() && self.num.constant_value().is_some_and(|c| c.is_one())
    }

    pub fn constant_value(&self) -> Option<Scalar> {
        if self.den.is_empty() {
            self.num.constant_value()
        } else {
            None
        }
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        for (form, mult) in self.den.iter_mut() {
            while *mult > 0 {
                match self.num.div_exact_linear(form.as_linear()) {
                    Some(q) => {
                        self.num = q;
                        *mult -= 1;
                    }
                    None => break,
                }
            }
        }
        self.den.retain(|_, m| *m > 0);
    }

    fn den_polynomial(&self, exps: &BTreeMap<DegreeOneForm, u32>) -> Polynomial {
        let mut p = Polynomial::one(self.nx());
        for (f, &m) in exps {
            for _ in 0..m {
                p = p.mul_linear(f.as_linear());
            }
        }
        p
    }

    pub fn add(&self, other: &RatFun) -> RatFun {
        assert_eq!(self.nx(), other.nx(), "rational function arity mismatch");
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let mut common = self.den.clone();
        for (f, &m) in &other.den {
            let e = common.entry(f.clone()).or_insert(0);
            *e = (*e).max(m);
        }
        let missing = |den: &BTreeMap<DegreeOneForm, u32>| -> BTreeMap<DegreeOneForm, u32> {
            common.iter().map(|(f, &m)| (f.clone(), m - den.get(f).copied().unwrap_or(0))).collect()
        };
        let a = self.num.mul(&self.den_polynomial(&missing(&self.den)));
        let b = other.num.mul(&self.den_polynomial(&missing(&other.den)));
        let mut out = RatFun { num: a.add(&b), den: common };
        out.normalize();
        out
    }

    pub fn neg(&self) -> RatFun {
        RatFun { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, other: &RatFun) -> RatFun {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RatFun) -> RatFun {
        assert_eq!(self.nx(), other.nx(), "rational function arity mismatch");
        if self.is_zero() || other.is_zero() {
            return RatFun::zero(self.nx());
        }
        let mut den = self.den.clone();
        for (f, &m) in &other.den {
            *den.entry(f.clone()).or_insert(0) += m;
        }
        let mut out = RatFun { num: self.num.mul(&other.num), den };
        out.normalize();
        out
    }

    pub fn scale(&self, k: &Scalar) -> RatFun {
        if k.is_zero() {
            return RatFun::zero(self.nx());
        }
        RatFun { num: self.num.scale(k), den: self.den.clone() }
    }

    /// Divides by a product of linear forms.
    pub fn div_forms(&self, forms: &[LinearForm]) -> Result<RatFun, RatFunError> {
        let d = RatFun::ratio_of_products(self.nx(), &[], forms)?;
        Ok(self.mul(&d))
    }

    /// Reciprocal, provided the numerator splits into a constant times a
    /// product of forms from `candidates` (detected by trial division).
    pub fn recip_over(&self, candidates: &[LinearForm]) -> Result<RatFun, RatFunError> {
        if self.is_zero() {
            return Err(RatFunError::DivisionByZero);
        }
        let mut rest = self.num.clone();
        let mut factors: Vec<LinearForm> = Vec::new();
        for cand in candidates {
            if cand.is_zero() {
                continue;
            }
            while rest.total_degree() > 0 {
                match rest.div_exact_linear(cand) {
                    Some(q) => {
                        rest = q;
                        factors.push(cand.clone());
                    }
                    None => break,
                }
            }
        }
        let c = rest.constant_value().ok_or_else(|| RatFunError::NotInvertible(self.num.to_string()))?;
        let num = self.den_polynomial(&self.den).scale(&c.recip());
        RatFun::from_parts(num, factors.iter().map(|f| (f, 1)))
    }

    /// Reciprocal using the denominator-free forms in `self` and the
    /// coordinate variables as candidates.
    pub fn recip(&self) -> Result<RatFun, RatFunError> {
        let nx = self.nx();
        let mut cands: Vec<LinearForm> = (0..nx).map(|i| LinearForm::x_var(nx, i)).collect();
        cands.push(LinearForm::new(vec![Scalar::zero(); nx], Scalar::one()));
        if let Some(l) = self.num.as_linear() {
            cands.push(l);
        }
        self.recip_over(&cands)
    }

    pub fn div(&self, other: &RatFun) -> Result<RatFun, RatFunError> {
        Ok(self.mul(&other.recip()?))
    }

    /// Applies the ring homomorphism `x_i -> images[i]`, `h -> h`; the
    /// result lives in `target_nx` x-variables.
    pub fn substitute(&self, images: &[LinearForm], target_nx: usize) -> Result<RatFun, RatFunError> {
        assert_eq!(images.len(), self.nx(), "one image per x variable");
        for img in images {
            assert_eq!(img.nx(), target_nx, "image arity");
        }
        let num = self.num.substitute(images, target_nx);
        let mut den: Vec<(LinearForm, u32)> = Vec::with_capacity(self.den.len());
        for (f, &m) in &self.den {
            let g = f.as_linear().substitute(images, target_nx);
            if g.is_zero() {
                return Err(RatFunError::PoleCollapse(f.to_string()));
            }
            den.push((g, m));
        }
        RatFun::from_parts(num, den.iter().map(|(f, m)| (f, *m)))
    }

    /// Exact value at `point = (x1, ..., xr, h)`.
    pub fn evaluate(&self, point: &[Scalar]) -> Result<Scalar, RatFunError> {
        assert_eq!(point.len(), self.nx() + 1, "evaluation point arity");
        let mut d = Scalar::one();
        for (f, &m) in &self.den {
            let v = f.as_linear().evaluate(point);
            if v.is_zero() {
                return Err(RatFunError::Pole(f.to_string()));
            }
            for _ in 0..m {
                d *= &v;
            }
        }
        Ok(self.num.evaluate(point) / d)
    }

    /// Probabilistic equality: compares exact values at `points` random
    /// rational points that are not poles of either side.
    pub fn eq_by_evaluation<R: Rng>(&self, other: &RatFun, rng: &mut R, points: usize) -> bool {
        assert_eq!(self.nx(), other.nx());
        let mut done = 0;
        let mut attempts = 0;
        while done < points {
            attempts += 1;
            assert!(attempts < 1000 * points.max(1), "could not find non-pole evaluation points");
            let p = random_point(rng, self.nx() + 1);
            match (self.evaluate(&p), other.evaluate(&p)) {
                (Ok(a), Ok(b)) => {
                    if a != b {
                        return false;
                    }
                    done += 1;
                }
                _ => continue,
            }
        }
        true
    }

    pub fn widen(&self, nx: usize) -> RatFun {
        let widen_form = |f: &DegreeOneForm| {
            let mut x = f.x().to_vec();
            x.resize(nx, Scalar::zero());
            DegreeOneForm::from_canonical(LinearForm::new(x, f.h().clone())).unwrap()
        };
        RatFun { num: self.num.widen(nx), den: self.den.iter().map(|(f, &m)| (widen_form(f), m)).collect() }
    }

    pub fn parse(text: &str, nx: usize) -> Result<RatFun, RatFunError> {
        Ok(parse::parse(text, nx)?)
    }

    /// Parses with the number of x-variables taken from the largest index
    /// that occurs in `text`.
    pub fn parse_infer(text: &str) -> Result<RatFun, RatFunError> {
        let nx = parse::max_var_index(text)?;
        Self::parse(text, nx)
    }
}

/// Random rational with small numerator and denominator.
pub fn random_scalar<R: Rng>(rng: &mut R) -> Scalar {
    let n: i64 = rng.gen_range(-97..=97);
    let d: i64 = rng.gen_range(1..=13);
    frac(n, d)
}

pub fn random_point<R: Rng>(rng: &mut R, len: usize) -> Vec<Scalar> {
    (0..len).map(|_| random_scalar(rng)).collect()
}

impl fmt::Display for RatFun {
    /// Rendered in the parse grammar, e.g. `-(x1+2*h)/x1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            return self.num.fmt(f);
        }
        let lead_negative = self.num.leading_term().is_some_and(|(_, c)| c.is_negative());
        let num = if lead_negative { self.num.neg() } else { self.num.clone() };
        let mut out = String::new();
        if lead_negative {
            out.push('-');
        }
        if num.nterms() > 1 {
            out.push_str(&format!("({num})"));
        } else {
            out.push_str(&num.to_string());
        }
        out.push('/');
        let factors: Vec<String> = self
            .den
            .iter()
            .map(|(form, &m)| {
                let base = if form.as_linear().to_polynomial().nterms() > 1 { format!("({form})") } else { form.to_string() };
                if m > 1 {
                    format!("{base}^{m}")
                } else {
                    base
                }
            })
            .collect();
        let single = self.den.len() == 1;
        if single {
            out.push_str(&factors[0]);
        } else {
            out.push('(');
            out.push_str(&factors.join("*"));
            out.push(')');
        }
        f.write_str(&out)
    }
}
