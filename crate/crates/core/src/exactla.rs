//! Sparse exact linear algebra: rank, null spaces and linear solves.
//!
//! Elimination always works on sparse rows. The pivot column is the lowest
//! column that still has a nonzero entry among the unreduced rows, and among
//! the rows leading with that column we pick the one with the fewest stored
//! entries (ties broken by original row index). All outputs are in reduced
//! row echelon form with unit pivots, so they are canonical.

use std::collections::BTreeMap;

use crate::field::{Field, Scalar};
use crate::Error;

/// Sparse vector: strictly increasing indices, no stored zeros.
pub type SparseVec<F = Scalar> = Vec<(usize, F)>;

/// Adds `factor * src` to `dst`, dropping cancelled entries.
pub fn axpy<F: Field>(dst: &SparseVec<F>, factor: &F, src: &SparseVec<F>) -> SparseVec<F> {
    let mut out = Vec::with_capacity(dst.len() + src.len());
    let (mut i, mut j) = (0, 0);
    while i < dst.len() || j < src.len() {
        if j == src.len() || (i < dst.len() && dst[i].0 < src[j].0) {
            out.push(dst[i].clone());
            i += 1;
        } else if i == dst.len() || src[j].0 < dst[i].0 {
            out.push((src[j].0, factor.clone() * src[j].1.clone()));
            j += 1;
        } else {
            let v = dst[i].1.clone() + factor.clone() * src[j].1.clone();
            if !v.is_zero() {
                out.push((dst[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn lookup<F>(v: &SparseVec<F>, idx: usize) -> Option<&F> {
    v.binary_search_by_key(&idx, |e| e.0).ok().map(|k| &v[k].1)
}

/// Sparse matrix with entries keyed by `(row, col)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix<F = Scalar> {
    nrows: usize,
    ncols: usize,
    entries: BTreeMap<(usize, usize), F>,
}

impl<F: Field> SparseMatrix<F> {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        SparseMatrix { nrows, ncols, entries: BTreeMap::new() }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries.insert((i, i), F::one());
        }
        m
    }

    /// Builds a matrix from dense rows. Panics on ragged input.
    pub fn from_dense(rows: &[Vec<F>]) -> Self {
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(rows.len(), ncols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), ncols, "ragged dense matrix");
            for (j, x) in row.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn from_rows(ncols: usize, rows: &[SparseVec<F>]) -> Self {
        let mut m = Self::zeros(rows.len(), ncols);
        for (i, row) in rows.iter().enumerate() {
            for (j, x) in row {
                m.set(i, *j, x.clone());
            }
        }
        m
    }

    pub fn from_columns(nrows: usize, cols: &[SparseVec<F>]) -> Self {
        let mut m = Self::zeros(nrows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            for (i, x) in col {
                m.set(*i, j, x.clone());
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, row: usize, col: usize) -> F {
        self.entries.get(&(row, col)).cloned().unwrap_or_else(F::zero)
    }

    /// Sets an entry; storing zero removes it.
    pub fn set(&mut self, row: usize, col: usize, value: F) {
        assert!(row < self.nrows && col < self.ncols, "index ({row},{col}) out of bounds");
        if value.is_zero() {
            self.entries.remove(&(row, col));
        } else {
            self.entries.insert((row, col), value);
        }
    }

    pub fn add_to(&mut self, row: usize, col: usize, value: F) {
        let v = self.get(row, col) + value;
        self.set(row, col, v);
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &F)> {
        self.entries.iter().map(|(&(r, c), v)| (r, c, v))
    }

    pub fn rows(&self) -> Vec<SparseVec<F>> {
        let mut rows = vec![Vec::new(); self.nrows];
        for (&(r, c), v) in &self.entries {
            rows[r].push((c, v.clone()));
        }
        rows
    }

    pub fn columns(&self) -> Vec<SparseVec<F>> {
        let mut cols = vec![Vec::new(); self.ncols];
        for (&(r, c), v) in &self.entries {
            cols[c].push((r, v.clone()));
        }
        cols
    }

    pub fn column(&self, col: usize) -> SparseVec<F> {
        self.entries.iter().filter(|(&(_, c), _)| c == col).map(|(&(r, _), v)| (r, v.clone())).collect()
    }

    pub fn transpose(&self) -> Self {
        SparseMatrix {
            nrows: self.ncols,
            ncols: self.nrows,
            entries: self.entries.iter().map(|(&(r, c), v)| ((c, r), v.clone())).collect(),
        }
    }

    pub fn scale(&self, factor: &F) -> Self {
        let mut out = Self::zeros(self.nrows, self.ncols);
        if !factor.is_zero() {
            for (&k, v) in &self.entries {
                out.entries.insert(k, v.clone() * factor.clone());
            }
        }
        out
    }

    /// `self + factor * other`.
    pub fn add_scaled(&self, factor: &F, other: &Self) -> Self {
        assert_eq!((self.nrows, self.ncols), (other.nrows, other.ncols), "shape mismatch");
        let mut out = self.clone();
        for (&(r, c), v) in &other.entries {
            out.add_to(r, c, factor.clone() * v.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.ncols, other.nrows, "shape mismatch in product");
        let other_rows = other.rows();
        let mut acc: BTreeMap<(usize, usize), F> = BTreeMap::new();
        for (&(i, k), a) in &self.entries {
            for (j, b) in &other_rows[k] {
                let e = acc.entry((i, *j)).or_insert_with(F::zero);
                *e = e.clone() + a.clone() * b.clone();
            }
        }
        acc.retain(|_, v| !v.is_zero());
        SparseMatrix { nrows: self.nrows, ncols: other.ncols, entries: acc }
    }

    pub fn mul_vec(&self, x: &SparseVec<F>) -> SparseVec<F> {
        let mut acc: BTreeMap<usize, F> = BTreeMap::new();
        for (&(r, c), a) in &self.entries {
            if let Some(xc) = lookup(x, c) {
                let e = acc.entry(r).or_insert_with(F::zero);
                *e = e.clone() + a.clone() * xc.clone();
            }
        }
        acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
    }

    pub fn mul_dense(&self, x: &[F]) -> Vec<F> {
        assert_eq!(x.len(), self.ncols);
        let mut out = vec![F::zero(); self.nrows];
        for (&(r, c), a) in &self.entries {
            out[r] = out[r].clone() + a.clone() * x[c].clone();
        }
        out
    }
}

/// Reduced row echelon form of a list of sparse rows.
///
/// Returns the nonzero rows of the RREF, sorted by pivot column; each row
/// starts with a unit pivot and no other row has an entry in that column.
pub fn rref<F: Field>(rows: Vec<SparseVec<F>>) -> Vec<SparseVec<F>> {
    let mut buckets: BTreeMap<usize, Vec<(usize, SparseVec<F>)>> = BTreeMap::new();
    for (i, mut row) in rows.into_iter().enumerate() {
        row.retain(|(_, v)| !v.is_zero());
        if let Some(&(lead, _)) = row.first() {
            buckets.entry(lead).or_default().push((i, row));
        }
    }
    let mut pivots: Vec<SparseVec<F>> = Vec::new();
    while let Some((col, mut bucket)) = buckets.pop_first() {
        let best = bucket
            .iter()
            .enumerate()
            .min_by_key(|(_, (orig, r))| (r.len(), *orig))
            .map(|(k, _)| k)
            .expect("bucket is never empty");
        let (_, pivot) = bucket.swap_remove(best);
        let inv = F::one() / pivot[0].1.clone();
        let pivot: SparseVec<F> = pivot.into_iter().map(|(c, v)| (c, v * inv.clone())).collect();
        for (orig, row) in bucket {
            let factor = -row[0].1.clone();
            let reduced = axpy(&row, &factor, &pivot);
            debug_assert!(reduced.first().is_none_or(|e| e.0 > col));
            if let Some(&(lead, _)) = reduced.first() {
                buckets.entry(lead).or_default().push((orig, reduced));
            }
        }
        pivots.push(pivot);
    }
    // back substitution
    for i in (0..pivots.len()).rev() {
        let (pcol, prow) = (pivots[i][0].0, pivots[i].clone());
        for j in 0..i {
            if let Some(f) = lookup(&pivots[j], pcol) {
                let factor = -f.clone();
                pivots[j] = axpy(&pivots[j], &factor, &prow);
            }
        }
    }
    pivots
}

/// Rank over the field.
pub fn rank<F: Field>(m: &SparseMatrix<F>) -> usize {
    rref(m.rows()).len()
}

/// Echelonized basis of `{v : M v = 0}`.
///
/// There is one vector per non-pivot column `f` of the RREF; it has a one in
/// coordinate `f` and zeros at all other free coordinates.
pub fn null_space<F: Field>(m: &SparseMatrix<F>) -> Vec<SparseVec<F>> {
    null_space_of_rows(m.ncols(), m.rows())
}

/// Null space of the matrix with `ncols` columns given by its sparse rows.
pub fn null_space_of_rows<F: Field>(ncols: usize, rows: Vec<SparseVec<F>>) -> Vec<SparseVec<F>> {
    let reduced = rref(rows);
    let mut is_pivot = vec![false; ncols];
    for r in &reduced {
        is_pivot[r[0].0] = true;
    }
    // column -> [(pivot column, entry)]
    let mut by_col: BTreeMap<usize, Vec<(usize, F)>> = BTreeMap::new();
    for r in &reduced {
        let p = r[0].0;
        for (c, v) in &r[1..] {
            by_col.entry(*c).or_default().push((p, v.clone()));
        }
    }
    (0..ncols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v: SparseVec<F> =
                by_col.get(&f).map(|es| es.iter().map(|(p, x)| (*p, -x.clone())).collect()).unwrap_or_default();
            v.push((f, F::one()));
            v.sort_by_key(|e| e.0);
            v
        })
        .collect()
}

/// Some solution of `M x = b`, free variables set to zero.
pub fn solve<F: Field>(m: &SparseMatrix<F>, b: &[F]) -> Result<Vec<F>, Error> {
    if b.len() != m.nrows() {
        return Err(Error::DimensionMismatch(format!(
            "right-hand side has {} entries, matrix has {} rows",
            b.len(),
            m.nrows()
        )));
    }
    let n = m.ncols();
    let mut rows = m.rows();
    for (row, bi) in rows.iter_mut().zip(b) {
        if !bi.is_zero() {
            row.push((n, bi.clone()));
        }
    }
    let reduced = rref(rows);
    let mut x = vec![F::zero(); n];
    for r in &reduced {
        let p = r[0].0;
        if p == n {
            return Err(Error::Inconsistent);
        }
        if let Some(v) = lookup(r, n) {
            x[p] = v.clone();
        }
    }
    Ok(x)
}

/// RREF of vectors indexed by arbitrary ordered keys. Pivots are at the least
/// key of each row.
pub fn rref_keyed<K: Ord + Clone, F: Field>(rows: Vec<Vec<(K, F)>>) -> Vec<Vec<(K, F)>> {
    let mut keys: Vec<K> = rows.iter().flat_map(|r| r.iter().map(|(k, _)| k.clone())).collect();
    keys.sort();
    keys.dedup();
    let index = |k: &K| keys.binary_search(k).expect("key collected above");
    let numeric: Vec<SparseVec<F>> = rows
        .into_iter()
        .map(|r| {
            let mut v: SparseVec<F> =
                r.into_iter().filter(|(_, x)| !x.is_zero()).map(|(k, x)| (index(&k), x)).collect();
            v.sort_by_key(|e| e.0);
            merge_duplicates(v)
        })
        .collect();
    rref(numeric).into_iter().map(|r| r.into_iter().map(|(i, x)| (keys[i].clone(), x)).collect()).collect()
}

fn merge_duplicates<F: Field>(v: SparseVec<F>) -> SparseVec<F> {
    let mut out: SparseVec<F> = Vec::with_capacity(v.len());
    for (i, x) in v {
        match out.last_mut() {
            Some((j, y)) if *j == i => *y = y.clone() + x,
            _ => out.push((i, x)),
        }
    }
    out.retain(|(_, x)| !x.is_zero());
    out
}
