//! JSON certificates for singular vectors.

use serde::{Deserialize, Serialize};

use super::cache::ModuleCache;
use super::classify::{family_label, Family};
use super::element::{act_x5d45, is_highest, killed_by_l1, VermaElement};
use super::equations::verify_degree_equations;
use super::morphism::{check_morphism, morphism_from_singular};
use crate::field::{format_scalar, parse_scalar, Scalar};
use crate::modules_sl5::Realization;
use crate::sl5::Weight;
use crate::uminus::{UElement, UMonomial};
use crate::Error;

/// `{"index": k, "coeff": "p/q"}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FCoeff {
    pub index: usize,
    pub coeff: String,
}

/// All terms `u ⊗ e_k` of one monomial `u`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateTerm {
    pub monomial: UMonomial,
    pub fcoeffs: Vec<FCoeff>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checks {
    /// Weight is `λ` and the raising operators kill the vector.
    pub l0_highest: bool,
    pub x5d45: bool,
    pub full_l1: bool,
    /// The associated morphism passes the direct check and the degree
    /// equations; always false in degree 4 and above.
    pub equations: bool,
}

impl Checks {
    pub fn all(&self) -> bool {
        self.l0_highest && self.x5d45 && self.full_l1 && self.equations
    }
}

/// A singular vector with the results of its checks.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub mu: Weight,
    pub lambda: Weight,
    pub degree: usize,
    /// Basis of `F(μ)` the indices refer to.
    pub basis: Realization,
    pub vector: Vec<CertificateTerm>,
    pub leading_term: serde_json::Value,
    pub checks: Checks,
    pub family: String,
}

fn terms_of(w: &VermaElement<Scalar>) -> Vec<CertificateTerm> {
    let mut out: Vec<CertificateTerm> = Vec::new();
    for ((u, k), c) in w.terms() {
        let f = FCoeff { index: *k, coeff: format_scalar(c) };
        match out.last_mut() {
            Some(t) if t.monomial == *u => t.fcoeffs.push(f),
            _ => out.push(CertificateTerm { monomial: *u, fcoeffs: vec![f] }),
        }
    }
    out
}

/// Runs every check on a singular vector candidate `w ∈ M(μ)` of weight `λ`.
pub fn run_checks(cache: &ModuleCache<Scalar>, w: &VermaElement<Scalar>, lambda: Weight) -> Result<Checks, Error> {
    let mu = w.module().highest_weight();
    let full = w.rehome(cache.module(mu)?)?;
    let l0_highest = full.weight() == Some(lambda) && is_highest(&full);
    let x5d45 = act_x5d45(&full).is_zero();
    let full_l1 = killed_by_l1(&full);
    let d = full.degree().unwrap_or(0);
    let equations = if l0_highest && x5d45 && (1..=3).contains(&d) {
        let phi = morphism_from_singular(&full, cache.module(lambda)?, &cache.recipes(lambda)?)?;
        check_morphism(&phi).passed() && verify_degree_equations(&phi)?.passed()
    } else {
        false
    };
    Ok(Checks { l0_highest, x5d45, full_l1, equations })
}

impl Certificate {
    /// Certificate of `w`, scaled so the least monomial of its leading term
    /// has coefficient 1.
    pub fn new(cache: &ModuleCache<Scalar>, w: &VermaElement<Scalar>, lambda: Weight) -> Result<Self, Error> {
        let w = w.normalized().ok_or_else(|| Error::NotSingular("leading term vanishes".into()))?;
        let mu = w.module().highest_weight();
        let degree = w.degree().ok_or_else(|| Error::NotSingular("vector is not homogeneous".into()))?;
        let checks = run_checks(cache, &w, lambda)?;
        let leading = w.leading_u();
        let family = family_label(mu, lambda, degree, &leading);
        Ok(Certificate {
            mu,
            lambda,
            degree,
            basis: cache.realization(),
            vector: terms_of(&w),
            leading_term: leading.to_json(),
            checks,
            family: family.as_str().to_string(),
        })
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificates serialize")
    }

    pub fn from_json_str(s: &str) -> Result<Self, Error> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    /// The vector, in the complete module `F(μ)` of the given cache.
    pub fn vector_in(&self, cache: &ModuleCache<Scalar>) -> Result<VermaElement<Scalar>, Error> {
        if cache.realization() != self.basis {
            return Err(Error::Certificate("cache uses a different basis".into()));
        }
        let module = cache.module(self.mu)?;
        let mut w = VermaElement::zero(module.clone());
        for t in &self.vector {
            for f in &t.fcoeffs {
                if f.index >= module.dim() {
                    return Err(Error::Certificate(format!("index {} out of range", f.index)));
                }
                w.add_term(t.monomial, f.index, parse_scalar(&f.coeff)?);
            }
        }
        Ok(w)
    }
}

/// Recomputes every check of a certificate. Fails when the stored leading
/// term, family or checks disagree with the recomputation.
pub fn verify_certificate(cert: &Certificate) -> Result<Checks, Error> {
    let cache = ModuleCache::new(cert.basis);
    let w = cert.vector_in(&cache)?;
    if w.degree() != Some(cert.degree) {
        return Err(Error::Certificate(format!("vector is not homogeneous of degree {}", cert.degree)));
    }
    let leading = w.leading_u();
    if leading != UElement::from_json(&cert.leading_term)? {
        return Err(Error::Certificate("stored leading term does not match the vector".into()));
    }
    let family = family_label(cert.mu, cert.lambda, cert.degree, &leading);
    let stored =
        Family::parse(&cert.family).ok_or_else(|| Error::Certificate(format!("unknown family `{}`", cert.family)))?;
    let checks = run_checks(&cache, &w, cert.lambda)?;
    if checks != cert.checks {
        return Err(Error::Certificate(format!("stored checks {:?} differ from recomputed {:?}", cert.checks, checks)));
    }
    // a stored anomaly label may come from a solution space of dimension > 1
    if stored != family && stored != Family::Anomaly {
        return Err(Error::Certificate(format!("stored family {stored} but the vector matches {family}")));
    }
    Ok(checks)
}
