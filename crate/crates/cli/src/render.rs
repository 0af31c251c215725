//! Output shaping. Every command renders either human-readable lines or
//! a JSON document; the JSON form is deterministic for fixed inputs and
//! seeds, with exact values carried as strings.

use matlor::lorentz::Certificate;
use matlor::polyalg::MultiPoly;
use matlor::symmat::Signature;
use matlor::unipoly::UniPoly;
use matlor::{BigInt, Rational};
use serde::Serialize;

pub fn rationals(v: &[Rational]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

pub fn bigints(v: &[BigInt]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

#[derive(Serialize)]
pub struct PolyOut {
    pub display: String,
    /// Coefficients by ascending exponent, as exact decimal strings.
    pub coefficients: Vec<String>,
}

impl PolyOut {
    pub fn new(p: &UniPoly, var: &str) -> Self {
        let coefficients = (0..=p.degree().unwrap_or(0))
            .map(|k| p.coeff(k).to_string())
            .collect();
        PolyOut {
            display: p.display(var),
            coefficients,
        }
    }
}

#[derive(Serialize)]
pub struct TermOut {
    pub exponents: Vec<u8>,
    pub numerator: String,
    pub denominator: String,
}

#[derive(Serialize)]
pub struct VolumeOut {
    pub variables: usize,
    pub degree: Option<usize>,
    pub terms: Vec<TermOut>,
}

impl VolumeOut {
    pub fn new(v: &MultiPoly) -> Self {
        let terms = v
            .sorted_terms()
            .into_iter()
            .map(|(exponents, c)| TermOut {
                exponents,
                numerator: c.numer().to_string(),
                denominator: c.denom().to_string(),
            })
            .collect();
        VolumeOut {
            variables: v.arity(),
            degree: v.homogeneous_degree(),
            terms,
        }
    }
}

#[derive(Serialize)]
pub struct SignatureOut {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl From<Signature> for SignatureOut {
    fn from(s: Signature) -> Self {
        SignatureOut {
            positive: s.positive,
            negative: s.negative,
            zero: s.zero,
        }
    }
}

#[derive(Serialize)]
pub struct CertificateOut {
    pub subject: String,
    pub base: Vec<String>,
    pub directions: Vec<Vec<String>>,
    pub signature: SignatureOut,
    pub derivative_value: Option<String>,
    pub incidence_matches_join: Option<bool>,
    pub pass: bool,
    pub witness: Option<String>,
}

impl From<&Certificate> for CertificateOut {
    fn from(c: &Certificate) -> Self {
        CertificateOut {
            subject: c.subject.clone(),
            base: rationals(&c.base),
            directions: c.directions.iter().map(|d| rationals(d)).collect(),
            signature: c.signature.into(),
            derivative_value: c.derivative_value.as_ref().map(|v| v.to_string()),
            incidence_matches_join: c.incidence_matches_join,
            pass: c.pass,
            witness: c.witness.clone(),
        }
    }
}

pub fn emit<T: Serialize>(value: &T) -> anyhow::Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

/// Human form of a sparse multivariate polynomial in the flat variables,
/// with proper-flat coordinate `i` printed as `t<i+1>` to match flat ids.
pub fn poly_in_flat_vars(v: &MultiPoly) -> String {
    v.display_with(|i| format!("t{}", i + 1))
}
