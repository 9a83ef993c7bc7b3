//! Irreducible `sl(5)`-modules.
//!
//! `F(a,b,c,d)` is realised as the submodule of
//! `Sym^a(ℂ⁵) ⊗ Sym^b(Λ²ℂ⁵) ⊗ Sym^c(Λ²(ℂ⁵)*) ⊗ Sym^d((ℂ⁵)*)` generated by
//! `x_1^a x_12^b (x*_45)^c (x*_5)^d`. The ambient space is a polynomial ring
//! in 30 variables: `x_i`, `x_ij`, `x*_ij` and `x*_i`, on which `x_r∂_s` acts
//! by derivations.
//!
//! [`IrreducibleModule`] keeps the realisation (basis vectors as polynomials)
//! and [`Sl5Module`] is the abstract module: a basis with weights and the
//! matrices of all 25 elements `x_r∂_s` of `gl(5)`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::exactla::{rref, rref_keyed, SparseMatrix, SparseVec};
use crate::field::{Field, Scalar};
use crate::sl5::{weyl_dimension, Weight};
use crate::uminus::pair_slot;
use crate::Error;

mod gt;

pub use gt::build_gelfand_tsetlin;

/// Number of polynomial variables of the ambient space.
pub const NVARS: usize = 30;

/// A variable of the ambient polynomial ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    X(u8),
    XX(u8, u8),
    Xs(u8, u8),
    Xs1(u8),
}

impl Var {
    /// Position of a canonical variable in the exponent array.
    pub fn index(self) -> usize {
        match self {
            Var::X(i) => i as usize - 1,
            Var::XX(i, j) => 5 + pair_slot(i, j),
            Var::Xs(i, j) => 15 + pair_slot(i, j),
            Var::Xs1(i) => 25 + i as usize - 1,
        }
    }

    pub fn from_index(k: usize) -> Var {
        let pair = |s: usize| crate::uminus::PAIRS[s];
        match k {
            0..=4 => Var::X(k as u8 + 1),
            5..=14 => Var::XX(pair(k - 5).0, pair(k - 5).1),
            15..=24 => Var::Xs(pair(k - 15).0, pair(k - 15).1),
            _ => Var::Xs1((k - 25) as u8 + 1),
        }
    }

    /// Canonical form of a possibly unordered wedge variable: sign and
    /// variable, or `None` for `x_ii`.
    fn canonical(self) -> Option<(i64, Var)> {
        match self {
            Var::XX(i, j) | Var::Xs(i, j) if i == j => None,
            Var::XX(i, j) if i > j => Some((-1, Var::XX(j, i))),
            Var::Xs(i, j) if i > j => Some((-1, Var::Xs(j, i))),
            v => Some((1, v)),
        }
    }

    /// `gl(5)` weight of the variable.
    pub fn gl_weight(self) -> [i64; 5] {
        let mut w = [0; 5];
        match self {
            Var::X(i) => w[i as usize - 1] = 1,
            Var::XX(i, j) => {
                w[i as usize - 1] += 1;
                w[j as usize - 1] += 1;
            }
            Var::Xs(i, j) => {
                w[i as usize - 1] -= 1;
                w[j as usize - 1] -= 1;
            }
            Var::Xs1(i) => w[i as usize - 1] = -1,
        }
        w
    }

    /// Image of the variable under `x_r∂_s`, as signed variables.
    fn act(self, r: u8, s: u8) -> Vec<(i64, Var)> {
        let mut out = Vec::new();
        let mut push = |c: i64, v: Var| {
            if let Some((sign, v)) = v.canonical() {
                out.push((c * sign, v));
            }
        };
        match self {
            Var::X(t) => {
                if t == s {
                    push(1, Var::X(r));
                }
            }
            Var::XX(i, j) => {
                if i == s {
                    push(1, Var::XX(r, j));
                }
                if j == s {
                    push(1, Var::XX(i, r));
                }
            }
            Var::Xs1(t) => {
                if t == r {
                    push(-1, Var::Xs1(s));
                }
            }
            Var::Xs(i, j) => {
                if i == r {
                    push(-1, Var::Xs(s, j));
                }
                if j == r {
                    push(-1, Var::Xs(i, s));
                }
            }
        }
        out
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::X(i) => write!(f, "x{i}"),
            Var::XX(i, j) => write!(f, "x{i}{j}"),
            Var::Xs(i, j) => write!(f, "x*{i}{j}"),
            Var::Xs1(i) => write!(f, "x*{i}"),
        }
    }
}

/// A monomial in the 30 ambient variables.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TensorMonomial(pub [u8; NVARS]);

impl TensorMonomial {
    pub const ONE: TensorMonomial = TensorMonomial([0; NVARS]);

    pub fn from_vars(vars: &[(Var, u8)]) -> Self {
        let mut e = [0u8; NVARS];
        for &(v, k) in vars {
            let (_, v) = v.canonical().expect("variable must be nonzero");
            e[v.index()] += k;
        }
        TensorMonomial(e)
    }

    /// `x_1^a x_12^b (x*_45)^c (x*_5)^d`.
    pub fn highest(lambda: Weight) -> Self {
        let [a, b, c, d] = lambda.0.map(|x| x as u8);
        Self::from_vars(&[(Var::X(1), a), (Var::XX(1, 2), b), (Var::Xs(4, 5), c), (Var::Xs1(5), d)])
    }

    pub fn exponent(&self, v: Var) -> u8 {
        self.0[v.index()]
    }

    /// Degrees in the four tensor factors.
    pub fn multidegree(&self) -> [u32; 4] {
        let sum = |r: std::ops::Range<usize>| self.0[r].iter().map(|&e| e as u32).sum();
        [sum(0..5), sum(5..15), sum(15..25), sum(25..30)]
    }

    pub fn gl_weight(&self) -> [i64; 5] {
        let mut w = [0; 5];
        for (k, &e) in self.0.iter().enumerate() {
            if e > 0 {
                let vw = Var::from_index(k).gl_weight();
                for t in 0..5 {
                    w[t] += vw[t] * e as i64;
                }
            }
        }
        w
    }

    fn shifted(&self, minus: usize, plus: usize) -> TensorMonomial {
        let mut e = self.0;
        e[minus] -= 1;
        e[plus] += 1;
        TensorMonomial(e)
    }

    /// Partial derivative by a variable, with its integer factor.
    pub fn differentiate(&self, v: Var) -> Option<(i64, TensorMonomial)> {
        let k = v.index();
        (self.0[k] > 0).then(|| {
            let mut e = self.0;
            e[k] -= 1;
            (self.0[k] as i64, TensorMonomial(e))
        })
    }

    pub fn multiply(&self, v: Var) -> TensorMonomial {
        let mut e = self.0;
        e[v.index()] += 1;
        TensorMonomial(e)
    }
}

impl fmt::Display for TensorMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            match e {
                1 => write!(f, "{}", Var::from_index(k))?,
                _ => write!(f, "{}^{}", Var::from_index(k), e)?,
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

impl fmt::Debug for TensorMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TensorMonomial({self})")
    }
}

/// Polynomial in the ambient variables.
pub type TensorVec<F = Scalar> = Vec<(TensorMonomial, F)>;

/// `x_r∂_s · m` for a monomial `m`, with integer coefficients. `r = s` is
/// allowed.
pub fn act_generator(r: u8, s: u8, m: &TensorMonomial) -> Vec<(TensorMonomial, i64)> {
    let mut acc: BTreeMap<TensorMonomial, i64> = BTreeMap::new();
    for (k, &e) in m.0.iter().enumerate() {
        if e == 0 {
            continue;
        }
        for (c, v) in Var::from_index(k).act(r, s) {
            *acc.entry(m.shifted(k, v.index())).or_insert(0) += c * e as i64;
        }
    }
    acc.into_iter().filter(|(_, c)| *c != 0).collect()
}

/// `x_r∂_s` applied to a polynomial.
pub fn act_on_vec<F: Field>(r: u8, s: u8, v: &TensorVec<F>) -> TensorVec<F> {
    let mut acc: BTreeMap<TensorMonomial, F> = BTreeMap::new();
    for (m, c) in v {
        for (n, k) in act_generator(r, s, m) {
            let e = acc.entry(n).or_insert_with(F::zero);
            *e = e.clone() + c.clone() * F::from_int(k);
        }
    }
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

/// How the basis of a module was produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Realization {
    /// Polynomials in the ambient tensor space.
    Tensor,
    /// Gelfand–Tsetlin patterns.
    GelfandTsetlin,
}

/// Identity of an abstract module: its highest weight, the realisation of
/// its basis and whether it was obtained by dualizing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ModuleId {
    /// Highest weight of the realised module this one comes from.
    pub source: Weight,
    pub realization: Realization,
    pub dual: bool,
}

impl fmt::Display for ModuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}", self.source)?;
        if self.realization == Realization::GelfandTsetlin {
            write!(f, "gt")?;
        }
        if self.dual {
            write!(f, "*")?;
        }
        Ok(())
    }
}

/// Index of `x_r∂_s` in [`Sl5Module::action`].
pub fn gen_index(r: u8, s: u8) -> usize {
    (r as usize - 1) * 5 + (s as usize - 1)
}

/// An abstract weight module of `gl(5)` with an explicit basis.
#[derive(Clone, Debug)]
pub struct Sl5Module<F = Scalar> {
    id: ModuleId,
    highest_weight: Weight,
    gl_weights: Vec<[i64; 5]>,
    hw: usize,
    actions: Vec<SparseMatrix<F>>,
    /// `Some(k)` when only the vectors at depth `≤ k` below the highest
    /// weight were built; actions landing deeper are dropped.
    truncation: Option<usize>,
    // actions[g] split into columns
    columns: Vec<Vec<SparseVec<F>>>,
}

impl<F: Field> Sl5Module<F> {
    fn assemble(
        id: ModuleId,
        highest_weight: Weight,
        gl_weights: Vec<[i64; 5]>,
        hw: usize,
        actions: Vec<SparseMatrix<F>>,
        truncation: Option<usize>,
    ) -> Self {
        let columns = actions.iter().map(|a| a.columns()).collect();
        Sl5Module { id, highest_weight, gl_weights, hw, actions, truncation, columns }
    }

    pub fn id(&self) -> ModuleId {
        self.id
    }

    pub fn highest_weight(&self) -> Weight {
        self.highest_weight
    }

    pub fn dim(&self) -> usize {
        self.gl_weights.len()
    }

    /// Index of the highest weight vector.
    pub fn hw(&self) -> usize {
        self.hw
    }

    pub fn gl_weight(&self, k: usize) -> [i64; 5] {
        self.gl_weights[k]
    }

    pub fn weight(&self, k: usize) -> Weight {
        Weight::from_gl(self.gl_weights[k])
    }

    /// Number of simple lowering steps from the highest weight vector.
    pub fn depth(&self, k: usize) -> usize {
        depth_between(self.gl_weights[self.hw], self.gl_weights[k])
    }

    pub fn truncation(&self) -> Option<usize> {
        self.truncation
    }

    pub fn is_complete(&self) -> bool {
        self.truncation.is_none()
    }

    /// Matrix of `x_r∂_s` (`r = s` allowed).
    pub fn action(&self, r: u8, s: u8) -> &SparseMatrix<F> {
        &self.actions[gen_index(r, s)]
    }

    /// `x_r∂_s` applied to a sparse coordinate vector.
    pub fn act(&self, r: u8, s: u8, v: &SparseVec<F>) -> SparseVec<F> {
        let mut acc: BTreeMap<usize, F> = BTreeMap::new();
        for (k, c) in v {
            for (j, x) in self.action_column(r, s, *k) {
                let e = acc.entry(*j).or_insert_with(F::zero);
                *e = e.clone() + c.clone() * x.clone();
            }
        }
        acc.into_iter().filter(|(_, x)| !x.is_zero()).collect()
    }

    /// Image of the `k`-th basis vector under `x_r∂_s`.
    pub fn action_column(&self, r: u8, s: u8, k: usize) -> &SparseVec<F> {
        &self.columns[gen_index(r, s)][k]
    }

    /// The dual module: negated transposed matrices on the dual basis.
    pub fn dual(&self) -> Result<Sl5Module<F>, Error> {
        if self.truncation.is_some() {
            return Err(Error::DimensionMismatch("cannot dualize a truncated module".into()));
        }
        let lowest = (0..self.dim()).max_by_key(|&k| self.depth(k)).expect("module is nonempty");
        let actions = self.actions.iter().map(|a| a.transpose().scale(&-F::one())).collect();
        let gl_weights: Vec<[i64; 5]> = self.gl_weights.iter().map(|w| w.map(|x| -x)).collect();
        Ok(Sl5Module::assemble(
            ModuleId { dual: !self.id.dual, ..self.id },
            Weight::from_gl(gl_weights[lowest]),
            gl_weights,
            lowest,
            actions,
            None,
        ))
    }
}

/// `f̃(from − to)`: number of simple lowering steps between two weights.
pub fn depth_between(from: [i64; 5], to: [i64; 5]) -> usize {
    let h = |w: [i64; 5]| -> i64 { (0..5).map(|k| (2 - k as i64) * w[k]).sum() };
    let d = h(from) - h(to);
    assert!(d >= 0, "weight is above the reference weight");
    d as usize
}

/// Convenience wrapper for [`Sl5Module::dual`].
pub fn dual_module<F: Field>(m: &Sl5Module<F>) -> Result<Sl5Module<F>, Error> {
    m.dual()
}

/// One step of a lowering recipe: `coeff · f_i(parent)`, where
/// `f_i = x_{i+1}∂_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct RecipeStep<F = Scalar> {
    pub coeff: F,
    pub lowering: u8,
    pub parent: usize,
}

/// Lowering recipes for every basis vector of a module: each vector at
/// depth `k > 0` is written as a combination of `f_i = x_{i+1}∂_i` applied to
/// vectors at depth `k − 1`.
pub fn lowering_recipes<F: Field>(m: &Sl5Module<F>) -> Result<Vec<Vec<RecipeStep<F>>>, Error> {
    let n = m.dim();
    let mut by_weight: BTreeMap<[i64; 5], Vec<usize>> = BTreeMap::new();
    for k in 0..n {
        by_weight.entry(m.gl_weight(k)).or_default().push(k);
    }
    let mut out: Vec<Vec<RecipeStep<F>>> = vec![Vec::new(); n];
    let lowering: Vec<Vec<SparseVec<F>>> = (1..=4u8).map(|i| m.action(i + 1, i).columns()).collect();
    for (w, members) in &by_weight {
        if *w == m.gl_weight(m.hw()) {
            continue;
        }
        // images f_i(e_p) landing in this weight space
        let mut gens: Vec<(u8, usize)> = Vec::new();
        for i in 1..=4u8 {
            let mut src = *w;
            src[i as usize - 1] += 1;
            src[i as usize] -= 1;
            if let Some(ps) = by_weight.get(&src) {
                gens.extend(ps.iter().map(|&p| (i, p)));
            }
        }
        let local: HashMap<usize, usize> = members.iter().enumerate().map(|(a, &k)| (k, a)).collect();
        let ngens = gens.len();
        let mut ct: Vec<SparseVec<F>> = vec![Vec::new(); members.len()];
        for (g, &(i, p)) in gens.iter().enumerate() {
            for (row, c) in &lowering[i as usize - 1][p] {
                ct[local[row]].push((g, c.clone()));
            }
        }
        for (a, row) in ct.iter_mut().enumerate() {
            row.push((ngens + a, F::one()));
        }
        for row in rref(ct) {
            let p = row[0].0;
            if p >= ngens {
                return Err(Error::DimensionMismatch(format!("weight space {w:?} is not generated from above")));
            }
            for (col, x) in row.iter().filter(|e| e.0 >= ngens) {
                out[members[col - ngens]].push(RecipeStep { coeff: x.clone(), lowering: gens[p].0, parent: gens[p].1 });
            }
        }
    }
    Ok(out)
}

/// A realised irreducible module.
#[derive(Debug)]
pub struct IrreducibleModule<F = Scalar> {
    lambda: Weight,
    basis: Vec<TensorVec<F>>,
    pivots: HashMap<TensorMonomial, usize>,
    levels: Vec<Vec<usize>>,
    recipes: Vec<Vec<RecipeStep<F>>>,
    module: Arc<Sl5Module<F>>,
}

impl<F: Field> IrreducibleModule<F> {
    pub fn lambda(&self) -> Weight {
        self.lambda
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[TensorVec<F>] {
        &self.basis
    }

    pub fn levels(&self) -> &[Vec<usize>] {
        &self.levels
    }

    /// How the `k`-th basis vector is obtained from the previous level.
    pub fn recipe(&self, k: usize) -> &[RecipeStep<F>] {
        &self.recipes[k]
    }

    pub fn module(&self) -> &Arc<Sl5Module<F>> {
        &self.module
    }

    /// Coordinates of a vector known to lie in the module, read off at the
    /// pivots.
    pub fn coords(&self, v: &TensorVec<F>) -> SparseVec<F> {
        let mut out: SparseVec<F> = v.iter().filter_map(|(m, c)| self.pivots.get(m).map(|&k| (k, c.clone()))).collect();
        out.sort_by_key(|e| e.0);
        out
    }

    /// Like [`Self::coords`], but fails when the vector is not in the span.
    pub fn coords_checked(&self, v: &TensorVec<F>) -> Option<SparseVec<F>> {
        let c = self.coords(v);
        let back = self.to_tensor(&c);
        let mut a: Vec<_> = v.iter().filter(|(_, x)| !x.is_zero()).cloned().collect();
        a.sort_by_key(|x| x.0);
        (a == back).then_some(c)
    }

    /// The polynomial with the given coordinates.
    pub fn to_tensor(&self, coords: &SparseVec<F>) -> TensorVec<F> {
        let mut acc: BTreeMap<TensorMonomial, F> = BTreeMap::new();
        for (k, c) in coords {
            for (m, x) in &self.basis[*k] {
                let e = acc.entry(*m).or_insert_with(F::zero);
                *e = e.clone() + c.clone() * x.clone();
            }
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }
}

/// Builds `F(λ)` completely.
pub fn build_irreducible<F: Field>(lambda: Weight) -> Result<IrreducibleModule<F>, Error> {
    let m = build(lambda, None)?;
    let expected = weyl_dimension(lambda)? as usize;
    if m.dim() != expected {
        return Err(Error::DimensionMismatch(format!(
            "closure of F{lambda} has dimension {}, expected {expected}",
            m.dim()
        )));
    }
    Ok(m)
}

/// Builds the vectors of `F(λ)` at depth at most `depth`. The basis is a
/// prefix of the basis built by [`build_irreducible`].
pub fn build_truncated<F: Field>(lambda: Weight, depth: usize) -> Result<IrreducibleModule<F>, Error> {
    build(lambda, Some(depth))
}

fn build<F: Field>(lambda: Weight, limit: Option<usize>) -> Result<IrreducibleModule<F>, Error> {
    if !lambda.is_dominant() {
        return Err(Error::NotDominant(lambda));
    }
    let hw = TensorMonomial::highest(lambda);
    let mut basis: Vec<TensorVec<F>> = vec![vec![(hw, F::one())]];
    let mut gl_weights = vec![hw.gl_weight()];
    let mut levels: Vec<Vec<usize>> = vec![vec![0]];
    let mut recipes: Vec<Vec<RecipeStep<F>>> = vec![Vec::new()];
    let mut complete = true;
    loop {
        let prev = levels.last().expect("at least one level").clone();
        if limit.is_some_and(|l| levels.len() > l) {
            complete = false;
            break;
        }
        // images of the previous level under the four lowering operators, by weight
        let mut groups: BTreeMap<[i64; 5], Vec<(u8, usize, TensorVec<F>)>> = BTreeMap::new();
        for &b in &prev {
            for i in 1..=4u8 {
                let v = act_on_vec(i + 1, i, &basis[b]);
                if !v.is_empty() {
                    let mut w = gl_weights[b];
                    w[i as usize - 1] -= 1;
                    w[i as usize] += 1;
                    groups.entry(w).or_default().push((i, b, v));
                }
            }
        }
        if groups.is_empty() {
            break;
        }
        let mut level = Vec::new();
        for (w, gens) in groups {
            let rows: Vec<Vec<(TensorMonomial, F)>> = gens.iter().map(|g| g.2.clone()).collect();
            let reduced = rref_keyed(rows);
            let start = basis.len();
            let pivot_of: HashMap<TensorMonomial, usize> =
                reduced.iter().enumerate().map(|(k, r)| (r[0].0, k)).collect();
            // generator coordinates in the new basis, transposed: row k lists
            // the coefficient of basis vector k in every generator
            let rank = reduced.len();
            let mut ct: Vec<SparseVec<F>> = vec![Vec::new(); rank];
            for (g, (_, _, v)) in gens.iter().enumerate() {
                for (m, c) in v {
                    if let Some(&k) = pivot_of.get(m) {
                        ct[k].push((g, c.clone()));
                    }
                }
            }
            let ngens = gens.len();
            for (k, row) in ct.iter_mut().enumerate() {
                row.push((ngens + k, F::one()));
            }
            // [Cᵀ | I] in RREF gives a left inverse of C on its pivot columns
            let red = rref(ct);
            let mut rec: Vec<Vec<RecipeStep<F>>> = vec![Vec::new(); rank];
            for row in &red {
                let p = row[0].0;
                assert!(p < ngens, "generator images must span the weight space");
                for (col, x) in row.iter().filter(|e| e.0 >= ngens) {
                    rec[col - ngens].push(RecipeStep { coeff: x.clone(), lowering: gens[p].0, parent: gens[p].1 });
                }
            }
            for (k, r) in reduced.into_iter().enumerate() {
                basis.push(r);
                gl_weights.push(w);
                level.push(start + k);
                recipes.push(std::mem::take(&mut rec[k]));
            }
        }
        levels.push(level);
    }
    let truncation = if complete { None } else { limit };
    let mut pivots = HashMap::new();
    for (k, v) in basis.iter().enumerate() {
        pivots.insert(v[0].0, k);
    }
    let depth_of: Vec<usize> = levels.iter().enumerate().flat_map(|(d, l)| l.iter().map(move |&k| (k, d))).fold(
        vec![0; basis.len()],
        |mut acc, (k, d)| {
            acc[k] = d;
            acc
        },
    );
    let max_depth = truncation.unwrap_or(usize::MAX);
    let mut actions = Vec::with_capacity(25);
    for r in 1..=5u8 {
        for s in 1..=5u8 {
            let mut a = SparseMatrix::zeros(basis.len(), basis.len());
            for (k, v) in basis.iter().enumerate() {
                if r == s {
                    a.set(k, k, F::from_int(gl_weights[k][r as usize - 1]));
                    continue;
                }
                let target = depth_of[k] as i64 + r as i64 - s as i64;
                if target < 0 || target as usize > max_depth {
                    continue;
                }
                let image = act_on_vec(r, s, v);
                for (m, c) in &image {
                    if let Some(&j) = pivots.get(m) {
                        a.set(j, k, c.clone());
                    }
                }
            }
            actions.push(a);
        }
    }
    let module = Sl5Module::assemble(
        ModuleId { source: lambda, realization: Realization::Tensor, dual: false },
        lambda,
        gl_weights,
        0,
        actions,
        truncation,
    );
    Ok(IrreducibleModule { lambda, basis, pivots, levels, recipes, module: Arc::new(module) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sl5::dominant_weights_with_sum;
    use rand::{Rng, SeedableRng};

    type Q = Scalar;

    fn mono(vars: &[(Var, u8)]) -> TensorMonomial {
        TensorMonomial::from_vars(vars)
    }

    #[test]
    fn act_generator_examples() {
        assert_eq!(act_generator(1, 2, &mono(&[(Var::X(2), 1)])), vec![(mono(&[(Var::X(1), 1)]), 1)]);
        assert_eq!(act_generator(1, 2, &mono(&[(Var::Xs1(1), 1)])), vec![(mono(&[(Var::Xs1(2), 1)]), -1)]);
        assert!(act_generator(3, 4, &mono(&[(Var::XX(1, 2), 1)])).is_empty());
        // x_2∂_1 x_12 = x_22 = 0
        assert!(act_generator(2, 1, &mono(&[(Var::XX(1, 2), 1)])).is_empty());
        // x_3∂_1 x_12 = x_32 = -x_23
        assert_eq!(act_generator(3, 1, &mono(&[(Var::XX(1, 2), 1)])), vec![(mono(&[(Var::XX(2, 3), 1)]), -1)]);
    }

    // ⟨x_r∂_s v, f⟩ + ⟨v, x_r∂_s f⟩ = 0 for the pairing x_i ↔ x*_i, x_ij ↔ x*_ij
    #[test]
    fn dual_action_preserves_pairing() {
        for r in 1..=5u8 {
            for s in 1..=5u8 {
                for i in 1..=5u8 {
                    for j in 1..=5u8 {
                        let lhs: i64 =
                            Var::X(i).act(r, s).iter().filter(|(_, v)| *v == Var::X(j)).map(|(c, _)| c).sum();
                        let rhs: i64 =
                            Var::Xs1(j).act(r, s).iter().filter(|(_, v)| *v == Var::Xs1(i)).map(|(c, _)| c).sum();
                        assert_eq!(lhs + rhs, 0);
                    }
                }
            }
        }
    }

    #[test]
    fn small_modules() {
        let t = build_irreducible::<Q>(Weight::ZERO).unwrap();
        assert_eq!(t.dim(), 1);
        let v = build_irreducible::<Q>(Weight::new(1, 0, 0, 0)).unwrap();
        assert_eq!(v.dim(), 5);
        for (k, b) in v.basis().iter().enumerate() {
            assert_eq!(b, &vec![(mono(&[(Var::X(k as u8 + 1), 1)]), Q::from_int(1))]);
        }
        assert_eq!(build_irreducible::<Q>(Weight::new(1, 1, 0, 0)).unwrap().dim(), 40);
    }

    #[test]
    fn dimensions_match_weyl() {
        for w in dominant_weights_with_sum(2) {
            let m = build_irreducible::<Q>(w).unwrap();
            assert_eq!(m.dim() as u64, weyl_dimension(w).unwrap(), "{w}");
        }
    }

    fn commutator(a: &SparseMatrix<Q>, b: &SparseMatrix<Q>) -> SparseMatrix<Q> {
        a.mul(b).add_scaled(&Q::from_int(-1), &b.mul(a))
    }

    #[test]
    fn action_matrices_satisfy_gl5_relations() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for w in [Weight::new(1, 1, 0, 0), Weight::new(0, 1, 1, 0), Weight::new(1, 0, 0, 2)] {
            let m = build_irreducible::<Q>(w).unwrap();
            let md = m.module();
            for _ in 0..30 {
                let (a, b, c, d) =
                    (rng.gen_range(1..=5), rng.gen_range(1..=5), rng.gen_range(1..=5), rng.gen_range(1..=5));
                let lhs = commutator(md.action(a, b), md.action(c, d));
                let mut rhs = SparseMatrix::zeros(m.dim(), m.dim());
                if b == c {
                    rhs = rhs.add_scaled(&Q::from_int(1), md.action(a, d));
                }
                if d == a {
                    rhs = rhs.add_scaled(&Q::from_int(-1), md.action(c, b));
                }
                assert_eq!(lhs, rhs, "[x{a}∂{b}, x{c}∂{d}] on F{w}");
            }
        }
    }

    #[test]
    fn highest_weight_vector_is_killed_by_raising() {
        for w in dominant_weights_with_sum(3) {
            let m = build_irreducible::<Q>(w).unwrap();
            let md = m.module();
            assert_eq!(md.weight(md.hw()), w);
            for i in 1..=4u8 {
                assert!(md.act(i, i + 1, &vec![(md.hw(), Q::from_int(1))]).is_empty());
            }
            // every weight is dominated by λ
            for k in 0..m.dim() {
                assert!(crate::sl5::dominated_by(md.weight(k), w));
            }
        }
    }

    #[test]
    fn recipes_reproduce_basis() {
        let m = build_irreducible::<Q>(Weight::new(1, 1, 0, 1)).unwrap();
        for k in 1..m.dim() {
            let mut acc: BTreeMap<TensorMonomial, Q> = BTreeMap::new();
            for st in m.recipe(k) {
                for (mono, c) in act_on_vec(st.lowering + 1, st.lowering, &m.basis()[st.parent]) {
                    *acc.entry(mono).or_insert_with(|| Q::from_int(0)) += c * st.coeff.clone();
                }
            }
            acc.retain(|_, v| !num_traits::Zero::is_zero(v));
            let got: TensorVec<Q> = acc.into_iter().collect();
            assert_eq!(got, m.basis()[k]);
        }
    }

    #[test]
    fn truncated_is_prefix() {
        let w = Weight::new(1, 1, 1, 0);
        let full = build_irreducible::<Q>(w).unwrap();
        let part = build_truncated::<Q>(w, 3).unwrap();
        assert!(part.dim() < full.dim());
        assert_eq!(part.basis(), &full.basis()[..part.dim()]);
        assert_eq!(part.module().truncation(), Some(3));
        // raising actions agree on the prefix
        for i in 1..=4u8 {
            for k in 0..part.dim() {
                let v = vec![(k, Q::from_int(1))];
                assert_eq!(part.module().act(i, i + 1, &v), full.module().act(i, i + 1, &v));
            }
        }
    }

    #[test]
    fn duals() {
        let t = build_irreducible::<Q>(Weight::ZERO).unwrap();
        assert_eq!(t.module().dual().unwrap().highest_weight(), Weight::ZERO);
        let v = build_irreducible::<Q>(Weight::new(1, 0, 0, 0)).unwrap();
        assert_eq!(v.module().dual().unwrap().highest_weight(), Weight::new(0, 0, 0, 1));
        let m = build_irreducible::<Q>(Weight::new(1, 1, 0, 0)).unwrap();
        let d = m.module().dual().unwrap();
        assert_eq!(d.highest_weight(), Weight::new(0, 0, 1, 1));
        for i in 1..=4u8 {
            assert!(d.act(i, i + 1, &vec![(d.hw(), Q::from_int(1))]).is_empty());
        }
        let dd = d.dual().unwrap();
        assert_eq!(dd.hw(), m.module().hw());
        assert_eq!(dd.action(2, 1), m.module().action(2, 1));
    }

    // Weight multiplicities are invariant under the longest Weyl group element
    // composed with duality: mult(ν) = mult(ν*), with ν* = −w0 ν.
    #[test]
    fn weight_multiplicities_are_symmetric() {
        for w in [Weight::new(1, 1, 0, 0), Weight::new(0, 1, 0, 2), Weight::new(2, 0, 1, 0)] {
            let m = build_irreducible::<Q>(w).unwrap();
            let d = build_irreducible::<Q>(w.dual()).unwrap();
            let count = |md: &Sl5Module<Q>| {
                let mut c: BTreeMap<Weight, usize> = BTreeMap::new();
                for k in 0..md.dim() {
                    *c.entry(md.weight(k)).or_default() += 1;
                }
                c
            };
            let a = count(m.module());
            let b = count(d.module());
            for (nu, k) in &a {
                assert_eq!(b.get(&nu.dual()), Some(k));
            }
            // within one module: mult(ν) = mult(w0 ν) = mult(−ν*)
            for (nu, k) in &a {
                assert_eq!(a.get(&(-nu.dual())), Some(k));
            }
        }
    }

    fn diff(v: &TensorVec<Q>, var: Var) -> TensorVec<Q> {
        let mut acc: BTreeMap<TensorMonomial, Q> = BTreeMap::new();
        for (m, c) in v {
            if let Some((k, n)) = m.differentiate(var) {
                *acc.entry(n).or_insert_with(|| Q::from_int(0)) += c.clone() * Q::from_int(k);
            }
        }
        acc.retain(|_, v| !num_traits::Zero::is_zero(v));
        acc.into_iter().collect()
    }

    fn add(a: &TensorVec<Q>, b: &TensorVec<Q>, sign: i64) -> TensorVec<Q> {
        let mut acc: BTreeMap<TensorMonomial, Q> = a.iter().cloned().collect();
        for (m, c) in b {
            *acc.entry(*m).or_insert_with(|| Q::from_int(0)) += c.clone() * Q::from_int(sign);
        }
        acc.retain(|_, v| !num_traits::Zero::is_zero(v));
        acc.into_iter().collect()
    }

    fn xx(i: u8, j: u8) -> (i64, Var) {
        Var::XX(i, j).canonical().unwrap()
    }

    fn dxx(v: &TensorVec<Q>, i: u8, j: u8) -> TensorVec<Q> {
        let (s, var) = xx(i, j);
        diff(v, var).into_iter().map(|(m, c)| (m, c * Q::from_int(s))).collect()
    }

    // x*_ab x*_cd + x*_ac x*_db + x*_ad x*_bc and x*_ab x*_c + x*_bc x*_a + x*_ca x*_b,
    // acting as differential operators, kill F(n,m+1,0,0).
    #[test]
    fn pluecker_relations() {
        for n in 0..=1 {
            for m in 0..=1 {
                let module = build_irreducible::<Q>(Weight::new(n, m + 1, 0, 0)).unwrap();
                for v in module.basis() {
                    for (a, b, c, d) in [(1, 2, 3, 4), (1, 2, 3, 5), (2, 3, 4, 5), (1, 3, 2, 5), (1, 4, 2, 5)] {
                        let t1 = dxx(&dxx(v, c, d), a, b);
                        let t2 = dxx(&dxx(v, d, b), a, c);
                        let t3 = dxx(&dxx(v, b, c), a, d);
                        assert!(add(&add(&t1, &t2, 1), &t3, 1).is_empty());
                    }
                    for (a, b, c) in [(1, 2, 3), (2, 4, 5), (1, 3, 5)] {
                        let t1 = dxx(&diff(v, Var::X(c)), a, b);
                        let t2 = dxx(&diff(v, Var::X(a)), b, c);
                        let t3 = dxx(&diff(v, Var::X(b)), c, a);
                        assert!(add(&add(&t1, &t2, 1), &t3, 1).is_empty());
                    }
                }
            }
        }
    }
}
