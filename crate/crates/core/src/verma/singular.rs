//! Search for singular vectors by exact linear algebra.
//!
//! A vector of degree `d` and weight `λ` in `M(μ)` is a combination of
//! `u ⊗ e_k` with `wt(u) + wt(e_k) = λ`. The conditions `x_i∂_{i+1} w = 0` and
//! `x_5 d_45 w = 0` are linear in the coefficients. Raising operators never
//! increase the depth of the `F(μ)` factor and `x_5 d_45` increases it by at
//! most 4, so `F(μ)` is only built down to the depth the unknowns can reach
//! plus 4.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use rayon::prelude::*;

use super::cache::ModuleCache;
use super::element::{act_l0, act_x5d45, killed_by_l1, VermaElement};
use crate::exactla::{null_space_of_rows, SparseVec};
use crate::field::{Field, Scalar};
use crate::modules_sl5::Sl5Module;
use crate::sl5::Weight;
use crate::uminus::UMonomial;
use crate::Error;

/// Which vectors to look for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Conditions {
    /// Killed by the raising operators only.
    Highest,
    /// Killed by the raising operators and by `L_1`.
    Singular,
}

/// A basis of the solutions of one weight.
#[derive(Clone, Debug)]
pub struct SingularSpace<F = Scalar> {
    pub lambda: Weight,
    pub basis: Vec<VermaElement<F>>,
}

fn h(w: [i64; 5]) -> i64 {
    (0..5).map(|k| (2 - k as i64) * w[k]).sum()
}

struct Monomials {
    by_weight: BTreeMap<Weight, Vec<UMonomial>>,
    h_of: BTreeMap<Weight, i64>,
    h_max: i64,
}

fn monomials(d: usize) -> Monomials {
    let mut by_weight: BTreeMap<Weight, Vec<UMonomial>> = BTreeMap::new();
    let mut h_of = BTreeMap::new();
    let mut h_max = i64::MIN;
    for u in UMonomial::all_of_degree(d) {
        let w = u.weight();
        let hu = h(u.gl_weight());
        h_max = h_max.max(hu);
        h_of.insert(w, hu);
        by_weight.entry(w).or_default().push(u);
    }
    Monomials { by_weight, h_of, h_max }
}

/// Dominant weights `λ` with `λ − μ` a weight of `(U_−)_d`, in increasing
/// order.
pub fn candidate_weights(mu: Weight, d: usize) -> Vec<Weight> {
    let set: BTreeSet<Weight> = monomials(d).by_weight.keys().map(|w| mu + *w).filter(|l| l.is_dominant()).collect();
    set.into_iter().collect()
}

/// Solutions in `M(μ)_d` for each weight in `lambdas` (all candidate weights
/// when `None`). Weights without solutions are omitted.
pub fn search<F: Field>(
    cache: &ModuleCache<F>,
    mu: Weight,
    d: usize,
    lambdas: Option<&[Weight]>,
    conditions: Conditions,
) -> Result<Vec<SingularSpace<F>>, Error> {
    if d == 0 {
        return Err(Error::UnsupportedDegree(0));
    }
    if !mu.is_dominant() {
        return Err(Error::NotDominant(mu));
    }
    let mons = monomials(d);
    let candidates = candidate_weights(mu, d);
    let targets: Vec<Weight> = match lambdas {
        Some(ls) => ls.iter().filter(|l| candidates.contains(l)).copied().collect(),
        None => candidates,
    };
    if targets.is_empty() {
        return Ok(Vec::new());
    }
    let extra = if conditions == Conditions::Singular { 4 } else { 0 };
    let depth = targets.iter().map(|l| (mons.h_max - mons.h_of[&(*l - mu)]) as usize).max().unwrap_or(0) + extra;
    let module = cache.truncated(mu, depth)?;
    let mut by_weight: HashMap<Weight, Vec<usize>> = HashMap::new();
    for k in 0..module.dim() {
        by_weight.entry(module.weight(k)).or_default().push(k);
    }
    let results: Result<Vec<Option<SingularSpace<F>>>, Error> =
        targets.par_iter().map(|&lambda| solve_weight(&module, &mons, &by_weight, lambda, conditions)).collect();
    Ok(results?.into_iter().flatten().collect())
}

fn solve_weight<F: Field>(
    module: &Arc<Sl5Module<F>>,
    mons: &Monomials,
    by_weight: &HashMap<Weight, Vec<usize>>,
    lambda: Weight,
    conditions: Conditions,
) -> Result<Option<SingularSpace<F>>, Error> {
    let mut cols: Vec<(UMonomial, usize)> = Vec::new();
    for (wu, us) in &mons.by_weight {
        if let Some(ks) = by_weight.get(&(lambda - *wu)) {
            for u in us {
                cols.extend(ks.iter().map(|&k| (*u, k)));
            }
        }
    }
    cols.sort();
    if cols.is_empty() {
        return Ok(None);
    }
    let mut row_of: HashMap<(u8, UMonomial, usize), usize> = HashMap::new();
    let mut rows: Vec<SparseVec<F>> = Vec::new();
    let nops = if conditions == Conditions::Singular { 5 } else { 4 };
    for (c, (u, k)) in cols.iter().enumerate() {
        let w = VermaElement::from_terms(module.clone(), [((*u, *k), F::one())]);
        for op in 0..nops {
            let image = if op < 4 { act_l0(op + 1, op + 2, &w) } else { act_x5d45(&w) };
            for ((n, j), x) in image.terms() {
                let next = rows.len();
                let r = *row_of.entry((op, *n, *j)).or_insert(next);
                if r == next {
                    rows.push(Vec::new());
                }
                rows[r].push((c, x.clone()));
            }
        }
    }
    let null = null_space_of_rows(cols.len(), rows);
    if null.is_empty() {
        return Ok(None);
    }
    let basis: Vec<VermaElement<F>> = null
        .into_iter()
        .map(|v| VermaElement::from_terms(module.clone(), v.into_iter().map(|(c, x)| (cols[c], x))))
        .collect();
    if conditions == Conditions::Singular {
        if let Some(bad) = basis.iter().position(|w| !killed_by_l1(w)) {
            return Err(Error::NotSingular(format!(
                "solution {bad} at weight {lambda} is killed by x5d45 but not by all of L1"
            )));
        }
    }
    Ok(Some(SingularSpace { lambda, basis }))
}

/// Singular vectors of degree `d` in `M(μ)`, grouped by weight.
pub fn singular_vectors<F: Field>(mu: Weight, d: usize) -> Result<Vec<SingularSpace<F>>, Error> {
    search(&ModuleCache::default(), mu, d, None, Conditions::Singular)
}
