//! JSON encoding: the numerator is a list of `{coeff, powers}` terms and the
//! denominator a list of `{form: {x, h}, mult}` factors. Rationals are
//! strings such as `"-3/2"`.

use std::collections::BTreeMap;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::poly::{fmt_scalar, var_name};
use super::{LinearForm, Polynomial, RatFun, RatFunError, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: String,
    pub powers: BTreeMap<String, u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormJson {
    pub x: Vec<String>,
    pub h: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorJson {
    pub form: FormJson,
    pub mult: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatFunJson {
    pub nx: usize,
    pub numerator: Vec<TermJson>,
    pub denominator: Vec<FactorJson>,
}

fn parse_scalar(s: &str) -> Result<Scalar, RatFunError> {
    s.trim().parse::<Scalar>().map_err(|_| RatFunError::Encoding(format!("bad rational `{s}`")))
}

impl From<&RatFun> for RatFunJson {
    fn from(a: &RatFun) -> Self {
        let nx = a.nx();
        let numerator = a
            .numerator()
            .terms()
            .rev()
            .map(|(m, c)| TermJson {
                coeff: fmt_scalar(c),
                powers: m.iter().enumerate().filter(|(_, &e)| e > 0).map(|(v, &e)| (var_name(nx, v), e)).collect(),
            })
            .collect();
        let denominator = a
            .denominator()
            .map(|(f, mult)| FactorJson {
                form: FormJson { x: f.x().iter().map(fmt_scalar).collect(), h: fmt_scalar(f.h()) },
                mult,
            })
            .collect();
        RatFunJson { nx, numerator, denominator }
    }
}

impl TryFrom<&RatFunJson> for RatFun {
    type Error = RatFunError;

    fn try_from(j: &RatFunJson) -> Result<Self, Self::Error> {
        let nx = j.nx;
        let mut terms = Vec::with_capacity(j.numerator.len());
        for t in &j.numerator {
            let mut m = vec![0u32; nx + 1];
            for (name, &e) in &t.powers {
                let idx = if name == "h" {
                    nx
                } else {
                    let i: usize = name
                        .strip_prefix('x')
                        .and_then(|d| d.parse().ok())
                        .filter(|&i| i >= 1 && i <= nx)
                        .ok_or_else(|| RatFunError::Encoding(format!("bad variable `{name}`")))?;
                    i - 1
                };
                m[idx] = e;
            }
            terms.push((m, parse_scalar(&t.coeff)?));
        }
        let num = Polynomial::from_terms(nx, terms);
        let mut forms = Vec::with_capacity(j.denominator.len());
        for f in &j.denominator {
            if f.form.x.len() != nx {
                return Err(RatFunError::Encoding("denominator form arity".into()));
            }
            let x = f.form.x.iter().map(|s| parse_scalar(s)).collect::<Result<Vec<_>, _>>()?;
            forms.push((LinearForm::new(x, parse_scalar(&f.form.h)?), f.mult));
        }
        RatFun::from_parts(num, forms.iter().map(|(f, m)| (f, *m)))
    }
}

impl Serialize for RatFun {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RatFunJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for RatFun {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = RatFunJson::deserialize(d)?;
        RatFun::try_from(&j).map_err(serde::de::Error::custom)
    }
}
