use std::fmt;

use num_traits::{One, Signed, Zero};

use super::poly::Polynomial;
use super::Scalar;

/// Homogeneous linear form `c_1 x_1 + ... + c_r x_r + c_h h`, kept exactly as
/// written (sign and scale included). Torus weights and substitution images
/// are linear forms.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearForm {
    x: Vec<Scalar>,
    h: Scalar,
}

impl LinearForm {
    pub fn new(x: Vec<Scalar>, h: Scalar) -> Self {
        LinearForm { x, h }
    }

    pub fn from_ints(x: &[i64], h: i64) -> Self {
        LinearForm::new(x.iter().map(|&c| Scalar::from_integer(c.into())).collect(), Scalar::from_integer(h.into()))
    }

    /// The coordinate function `x_i` (0-based).
    pub fn x_var(nx: usize, i: usize) -> Self {
        let mut x = vec![Scalar::zero(); nx];
        x[i] = Scalar::one();
        LinearForm::new(x, Scalar::zero())
    }

    pub fn nx(&self) -> usize {
        self.x.len()
    }

    pub fn x(&self) -> &[Scalar] {
        &self.x
    }

    pub fn h(&self) -> &Scalar {
        &self.h
    }

    pub fn is_zero(&self) -> bool {
        self.h.is_zero() && self.x.iter().all(Zero::is_zero)
    }

    /// `self + c h`.
    pub fn shift_h(&self, c: &Scalar) -> LinearForm {
        LinearForm { x: self.x.clone(), h: &self.h + c }
    }

    pub fn neg(&self) -> LinearForm {
        LinearForm { x: self.x.iter().map(|c| -c).collect(), h: -&self.h }
    }

    pub fn scale(&self, k: &Scalar) -> LinearForm {
        LinearForm { x: self.x.iter().map(|c| c * k).collect(), h: &self.h * k }
    }

    pub fn add(&self, other: &LinearForm) -> LinearForm {
        assert_eq!(self.nx(), other.nx());
        LinearForm { x: self.x.iter().zip(&other.x).map(|(a, b)| a + b).collect(), h: &self.h + &other.h }
    }

    /// Substitutes `x_i -> images[i]`, `h -> h`.
    pub fn substitute(&self, images: &[LinearForm], target_nx: usize) -> LinearForm {
        let mut acc = LinearForm::new(vec![Scalar::zero(); target_nx], self.h.clone());
        for (c, img) in self.x.iter().zip(images) {
            if !c.is_zero() {
                acc = acc.add(&img.scale(c));
            }
        }
        acc
    }

    pub fn evaluate(&self, point: &[Scalar]) -> Scalar {
        let mut acc = &self.h * &point[self.nx()];
        for (c, v) in self.x.iter().zip(point) {
            acc += c * v;
        }
        acc
    }

    /// Splits into `scale * canonical`; `None` for the zero form.
    pub fn canonicalize(&self) -> Option<(Scalar, DegreeOneForm)> {
        let lead = self.x.iter().chain(std::iter::once(&self.h)).find(|c| !c.is_zero())?.clone();
        let inv = lead.recip();
        Some((lead, DegreeOneForm(self.scale(&inv))))
    }

    pub fn to_polynomial(&self) -> Polynomial {
        Polynomial::from_linear(self)
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_polynomial().fmt(f)
    }
}

/// A nonzero linear form normalized so its first nonzero coefficient (in the
/// order `x1, ..., xr, h`) equals 1. Denominators of [`super::RatFun`] are
/// products of these.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DegreeOneForm(LinearForm);

impl DegreeOneForm {
    pub fn as_linear(&self) -> &LinearForm {
        &self.0
    }

    pub fn nx(&self) -> usize {
        self.0.nx()
    }

    pub fn x(&self) -> &[Scalar] {
        self.0.x()
    }

    pub fn h(&self) -> &Scalar {
        self.0.h()
    }

    /// True when the form involves only `h`.
    pub fn is_pure_h(&self) -> bool {
        self.0.x.iter().all(Zero::is_zero)
    }

    pub fn is_canonical(&self) -> bool {
        self.0.x.iter().chain(std::iter::once(&self.0.h)).find(|c| !c.is_zero()).is_some_and(|c| c.is_one())
    }

    /// Wraps a form that is already canonical.
    pub fn from_canonical(form: LinearForm) -> Option<Self> {
        let f = DegreeOneForm(form);
        f.is_canonical().then_some(f)
    }

    pub fn leading_sign_positive(&self) -> bool {
        !self.0.x.iter().chain(std::iter::once(&self.0.h)).find(|c| !c.is_zero()).unwrap().is_negative()
    }
}

impl fmt::Display for DegreeOneForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_sign_and_scale() {
        let f = LinearForm::from_ints(&[0, -2], 4);
        let (s, c) = f.canonicalize().unwrap();
        assert_eq!(s, Scalar::from_integer((-2).into()));
        assert_eq!(c.as_linear(), &LinearForm::from_ints(&[0, 1], -2));
        assert!(c.is_canonical());
        assert!(LinearForm::from_ints(&[0, 0], 0).canonicalize().is_none());
        let (s, c) = LinearForm::from_ints(&[0], -3).canonicalize().unwrap();
        assert_eq!(s, Scalar::from_integer((-3).into()));
        assert!(c.is_pure_h());
    }

    #[test]
    fn substitution() {
        // x -> -x - h applied to x + 2h gives -x + h
        let f = LinearForm::from_ints(&[1], 2);
        let g = f.substitute(&[LinearForm::from_ints(&[-1], -1)], 1);
        assert_eq!(g, LinearForm::from_ints(&[-1], 1));
    }
}
