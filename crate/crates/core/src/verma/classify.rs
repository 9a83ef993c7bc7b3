//! Exhaustive sweeps over target weights and family labels.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::cache::ModuleCache;
use super::element::VermaElement;
use super::singular::{search, Conditions};
use crate::field::{Field, Scalar};
use crate::sl5::{dominant_box, Weight};
use crate::uminus::{d_product, PairIndex, UElement};
use crate::Error;

/// Label of a singular vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    #[serde(rename = "nabla_A")]
    NablaA,
    #[serde(rename = "nabla_B")]
    NablaB,
    #[serde(rename = "nabla_C")]
    NablaC,
    #[serde(rename = "nabla_BA")]
    NablaBA,
    #[serde(rename = "nabla_CB")]
    NablaCB,
    #[serde(rename = "nabla_CA")]
    NablaCA,
    #[serde(rename = "nabla_CBA")]
    NablaCBA,
    /// A hit outside the known families.
    #[serde(rename = "ANOMALY")]
    Anomaly,
    /// Degree 4 or more: no families are known.
    #[serde(rename = "exploratory")]
    Exploratory,
}

impl Family {
    pub fn as_str(self) -> &'static str {
        match self {
            Family::NablaA => "nabla_A",
            Family::NablaB => "nabla_B",
            Family::NablaC => "nabla_C",
            Family::NablaBA => "nabla_BA",
            Family::NablaCB => "nabla_CB",
            Family::NablaCA => "nabla_CA",
            Family::NablaCBA => "nabla_CBA",
            Family::Anomaly => "ANOMALY",
            Family::Exploratory => "exploratory",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        [
            Family::NablaA,
            Family::NablaB,
            Family::NablaC,
            Family::NablaBA,
            Family::NablaCB,
            Family::NablaCA,
            Family::NablaCBA,
            Family::Anomaly,
            Family::Exploratory,
        ]
        .into_iter()
        .find(|f| f.as_str() == s)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

fn pairs(list: &[(u8, u8)]) -> Vec<PairIndex> {
    list.iter().map(|&(i, j)| PairIndex::new(i, j)).collect()
}

/// Whether `u` is a nonzero multiple of `d_{I_1} ⋯ d_{I_k}`.
fn proportional<F: Field>(u: &UElement<F>, list: &[(u8, u8)]) -> bool {
    let target = d_product::<F>(&pairs(list));
    let Some((m, c)) = target.terms().next() else {
        return false;
    };
    let Some(x) = u.terms().find(|(n, _)| *n == m).map(|(_, x)| x.clone()) else {
        return false;
    };
    let ratio = x / c.clone();
    u.clone() - target.scale(&ratio) == UElement::zero()
}

/// Matches `(λ, μ, leading term)` against the known families.
pub fn family_label<F: Field>(mu: Weight, lambda: Weight, d: usize, leading: &UElement<F>) -> Family {
    let [m0, m1, m2, m3] = mu.0;
    let fits = |expected: Weight, lead: &[(u8, u8)]| lambda == expected && proportional(leading, lead);
    let hit = match d {
        1 => {
            if m2 == 0 && m3 == 0 && fits(Weight::new(m0, m1 + 1, 0, 0), &[(1, 2)]) {
                Some(Family::NablaA)
            } else if m1 == 0 && m2 == 0 && m3 >= 1 && fits(Weight::new(m0 + 1, 0, 0, m3 - 1), &[(1, 5)]) {
                Some(Family::NablaB)
            } else if m0 == 0 && m1 == 0 && m2 >= 1 && fits(Weight::new(0, 0, m2 - 1, m3), &[(4, 5)]) {
                Some(Family::NablaC)
            } else {
                None
            }
        }
        2 => {
            if m1 == 0 && m2 == 0 && m3 == 1 && fits(Weight::new(m0 + 1, 1, 0, 0), &[(1, 2), (1, 5)]) {
                Some(Family::NablaBA)
            } else if m0 == 0 && m1 == 0 && m2 == 1 && m3 >= 1 && fits(Weight::new(1, 0, 0, m3 - 1), &[(1, 5), (4, 5)])
            {
                Some(Family::NablaCB)
            } else if mu == Weight::new(0, 0, 1, 0) && fits(Weight::new(0, 1, 0, 0), &[(1, 2), (4, 5)]) {
                Some(Family::NablaCA)
            } else {
                None
            }
        }
        3 => (mu == Weight::new(0, 0, 1, 1) && fits(Weight::new(1, 1, 0, 0), &[(1, 2), (1, 5), (4, 5)]))
            .then_some(Family::NablaCBA),
        _ => return Family::Exploratory,
    };
    hit.unwrap_or(Family::Anomaly)
}

/// One weight with singular vectors.
#[derive(Clone, Debug)]
pub struct ClassRow<F = Scalar> {
    pub mu: Weight,
    pub lambda: Weight,
    pub dimension: usize,
    pub family: Family,
    /// Leading term of the first (normalised) basis vector.
    pub leading_term: UElement<F>,
    pub vectors: Vec<VermaElement<F>>,
}

/// Labels the solutions of one target weight. A solution space of
/// dimension other than 1 is an anomaly in degrees 1–3.
pub fn classify_target<F: Field>(cache: &ModuleCache<F>, mu: Weight, d: usize) -> Result<Vec<ClassRow<F>>, Error> {
    let spaces = search(cache, mu, d, None, Conditions::Singular)?;
    let mut rows = Vec::new();
    for s in spaces {
        let vectors: Vec<VermaElement<F>> =
            s.basis.iter().map(|w| w.normalized().unwrap_or_else(|| w.clone())).collect();
        let leading_term = vectors[0].leading_u();
        let mut family = family_label(mu, s.lambda, d, &leading_term);
        if d <= 3 && vectors.len() != 1 {
            family = Family::Anomaly;
        }
        rows.push(ClassRow { mu, lambda: s.lambda, dimension: vectors.len(), family, leading_term, vectors });
    }
    Ok(rows)
}

/// Runs the search of degree `d` for every dominant `μ` with entries at most
/// `max_entry`. Rows are sorted by `(μ, λ)`.
pub fn classify<F: Field>(cache: &ModuleCache<F>, d: usize, max_entry: i64) -> Result<Vec<ClassRow<F>>, Error> {
    let targets = dominant_box(max_entry);
    let per: Result<Vec<Vec<ClassRow<F>>>, Error> =
        targets.par_iter().map(|&mu| classify_target(cache, mu, d)).collect();
    let mut rows: Vec<ClassRow<F>> = per?.into_iter().flatten().collect();
    rows.sort_by_key(|r| (r.mu, r.lambda));
    Ok(rows)
}
