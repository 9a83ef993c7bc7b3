//! The elements `ω_I` and the basis `∂_T ω_I` of `U_−`.
//!
//! For a tuple `I = (I_1, …, I_d)` of pairs,
//!
//! ```text
//! ω_I = Σ_{S ∈ SIF_d} (−1)^{c(S)} D_S(I) d_{C_S(I)}
//! ```
//!
//! where `S` runs over sets of pairwise disjoint 2-subsets of positions,
//! `c(S)` counts crossing pairs, `D_S(I)` is the product of the contractions
//! `D_{k,l}(I) = ½ (−1)^{k+l} ε_{I_k,I_l} ∂_{t_{I_k,I_l}}` over `{k,l} ∈ S`, and
//! `C_S(I)` is `I` with the positions of `S` removed. Positions are 1-based.

use std::collections::BTreeMap;

use super::{d_product, eps_t, multisets, PairIndex, UElement, UMonomial, PAIRS};
use crate::exactla::{self, SparseMatrix};
use crate::field::{Field, Scalar};
use crate::Error;

/// A self-intersection free set of position pairs `(k, l)`, `k < l`.
pub type SifSet = Vec<(usize, usize)>;

/// All SIF subsets of `{{k,l} : 1 ≤ k < l ≤ d}`, including the empty set.
pub fn sif_subsets(d: usize) -> Vec<SifSet> {
    fn rec(pos: usize, d: usize, used: &mut Vec<bool>, cur: &mut SifSet, out: &mut Vec<SifSet>) {
        if pos > d {
            let mut s = cur.clone();
            s.sort();
            out.push(s);
            return;
        }
        if used[pos] {
            rec(pos + 1, d, used, cur, out);
            return;
        }
        // position left unmatched
        rec(pos + 1, d, used, cur, out);
        for l in pos + 1..=d {
            if !used[l] {
                used[l] = true;
                cur.push((pos, l));
                rec(pos + 1, d, used, cur, out);
                cur.pop();
                used[l] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(1, d, &mut vec![false; d + 1], &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Number of crossing pairs in `S`: `{h,m}` and `{k,l}` cross when exactly
/// one of `k, l` lies strictly between `h` and `m`.
pub fn crossing_number(s: &[(usize, usize)]) -> usize {
    let mut c = 0;
    for (a, &(h, m)) in s.iter().enumerate() {
        for &(k, l) in &s[a + 1..] {
            let inside = |x: usize| h.min(m) < x && x < h.max(m);
            if inside(k) != inside(l) {
                c += 1;
            }
        }
    }
    c
}

/// Sign and `∂` index of `D_{k,l}(I)` without the factor ½.
fn contraction_parts(tuple: &[PairIndex], k: usize, l: usize) -> Option<(i32, u8)> {
    let (a, b) = (tuple[k - 1], tuple[l - 1]);
    let (e, t) = eps_t(a.i, a.j, b.i, b.j);
    if e == 0 {
        return None;
    }
    let sign = if (k + l).is_multiple_of(2) { e } else { -e };
    Some((sign, t))
}

/// `D_{k,l}(I) = ½ (−1)^{k+l} ε_{I_k,I_l} ∂_{t_{I_k,I_l}}`.
pub fn contraction<F: Field>(tuple: &[PairIndex], k: usize, l: usize) -> UElement<F> {
    assert!(1 <= k && k < l && l <= tuple.len(), "positions ({k},{l}) out of range");
    match contraction_parts(tuple, k, l) {
        Some((sign, t)) => UElement::del(t).scale(&(F::from_int(sign as i64) * F::half())),
        None => UElement::zero(),
    }
}

fn has_zero_pair(tuple: &[PairIndex]) -> bool {
    tuple.iter().any(|p| p.i == p.j)
}

/// `ω_I` in PBW normal form.
pub fn omega<F: Field>(tuple: &[PairIndex]) -> UElement<F> {
    let d = tuple.len();
    let mut out = UElement::zero();
    if has_zero_pair(tuple) {
        return out;
    }
    'sets: for s in sif_subsets(d) {
        let mut coeff = if crossing_number(&s).is_multiple_of(2) { F::one() } else { -F::one() };
        let mut del = [0u8; 5];
        let mut matched = vec![false; d + 1];
        for &(k, l) in &s {
            let Some((sign, t)) = contraction_parts(tuple, k, l) else {
                continue 'sets;
            };
            coeff = coeff * F::from_int(sign as i64) * F::half();
            del[t as usize - 1] += 1;
            matched[k] = true;
            matched[l] = true;
        }
        let rest: Vec<PairIndex> = (1..=d).filter(|&p| !matched[p]).map(|p| tuple[p - 1]).collect();
        out.add_scaled(&coeff, &d_product::<F>(&rest).mul_del(del));
    }
    out
}

/// An element `g = (σ, η)` of the hyperoctahedral group `B_d`.
///
/// It acts on tuples by `J_j = I_{σ(j)}` when `η_j = 1` and by the barred
/// pair otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedPermutation {
    perm: Vec<usize>,
    eta: Vec<i8>,
}

impl SignedPermutation {
    /// `perm` is 0-based; `eta` entries must be ±1.
    pub fn new(perm: Vec<usize>, eta: Vec<i8>) -> Result<Self, Error> {
        let d = perm.len();
        let mut seen = vec![false; d];
        for &p in &perm {
            if p >= d || seen[p] {
                return Err(Error::Parse(format!("{perm:?} is not a permutation")));
            }
            seen[p] = true;
        }
        if eta.len() != d || eta.iter().any(|&e| e != 1 && e != -1) {
            return Err(Error::Parse("sign flags must be ±1, one per position".into()));
        }
        Ok(SignedPermutation { perm, eta })
    }

    pub fn identity(d: usize) -> Self {
        SignedPermutation { perm: (0..d).collect(), eta: vec![1; d] }
    }

    /// `s_0`: bar the first entry.
    pub fn s0(d: usize) -> Self {
        let mut g = Self::identity(d);
        g.eta[0] = -1;
        g
    }

    /// `s_i`: swap positions `i` and `i+1` (1-based).
    pub fn s(i: usize, d: usize) -> Self {
        let mut g = Self::identity(d);
        g.perm.swap(i - 1, i);
        g
    }

    pub fn rank(&self) -> usize {
        self.perm.len()
    }

    pub fn random<R: rand::Rng>(d: usize, rng: &mut R) -> Self {
        use rand::seq::SliceRandom;
        let mut perm: Vec<usize> = (0..d).collect();
        perm.shuffle(rng);
        let eta = (0..d).map(|_| if rng.gen_bool(0.5) { 1 } else { -1 }).collect();
        SignedPermutation { perm, eta }
    }

    /// `(−1)^{ℓ(g)} = sign(σ) · Π η_j`.
    pub fn sign_character(&self) -> i32 {
        let mut inv = 0;
        for a in 0..self.perm.len() {
            for b in a + 1..self.perm.len() {
                if self.perm[a] > self.perm[b] {
                    inv += 1;
                }
            }
        }
        let flips = self.eta.iter().filter(|&&e| e < 0).count();
        if (inv + flips) % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

/// The action of `B_d` on `d`-tuples.
pub fn bd_act(g: &SignedPermutation, tuple: &[PairIndex]) -> Result<Vec<PairIndex>, Error> {
    if g.rank() != tuple.len() {
        return Err(Error::RankMismatch { perm: g.rank(), tuple: tuple.len() });
    }
    Ok(g.perm.iter().zip(&g.eta).map(|(&p, &e)| if e == 1 { tuple[p] } else { tuple[p].bar() }).collect())
}

/// `D_{s→r}(ω_I)`: the sum over occurrences of the letter `r` in `I` of `ω`
/// of the tuple with that occurrence replaced by `s`.
pub fn d_arrow<F: Field>(s: u8, r: u8, tuple: &[PairIndex]) -> UElement<F> {
    let mut out = UElement::zero();
    for (pos, p) in tuple.iter().enumerate() {
        for first in [true, false] {
            let letter = if first { p.i } else { p.j };
            if letter != r {
                continue;
            }
            let mut t = tuple.to_vec();
            t[pos] = if first { PairIndex::new(s, p.j) } else { PairIndex::new(p.i, s) };
            out.add_scaled(&F::one(), &omega(&t));
        }
    }
    out
}

/// Label `(T, I)` of the basis element `∂_T ω_I`: `T` is a sorted multiset of
/// `∂` indices, `I` a strictly increasing list of pair slots.
pub type OmegaLabel = (Vec<u8>, Vec<usize>);

/// The basis `{∂_T ω_I}` of `(U_−)_d`.
#[derive(Clone, Debug)]
pub struct OmegaBasis<F = Scalar> {
    degree: usize,
    labels: Vec<OmegaLabel>,
    expansions: Vec<UElement<F>>,
    index: BTreeMap<UMonomial, usize>,
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            cur.push(x);
            rec(x + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// `Σ_k C(k+4,4) · C(10, d−2k)`.
pub fn omega_basis_dimension(d: usize) -> usize {
    fn binom(n: usize, k: usize) -> usize {
        if k > n {
            return 0;
        }
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }
    (0..=d / 2).map(|k| binom(k + 4, 4) * binom(10, d - 2 * k)).sum()
}

/// The label of the PBW monomial `∂_T d_I`.
pub fn label_of(m: &UMonomial) -> OmegaLabel {
    (m.del_list(), m.slots())
}

impl<F: Field> OmegaBasis<F> {
    pub fn new(d: usize) -> Self {
        let mut labels = Vec::new();
        for k in 0..=d / 2 {
            let odd = d - 2 * k;
            if odd > 10 {
                continue;
            }
            for t in multisets(k) {
                for i in combinations(10, odd) {
                    labels.push((t.clone(), i));
                }
            }
        }
        let expansions: Vec<UElement<F>> = labels
            .iter()
            .map(|(t, i)| {
                let pairs: Vec<PairIndex> = i.iter().map(|&s| PairIndex::from_slot(s)).collect();
                let mut del = [0u8; 5];
                for &x in t {
                    del[x as usize - 1] += 1;
                }
                omega::<F>(&pairs).mul_del(del)
            })
            .collect();
        let index = labels.iter().enumerate().map(|(k, (t, i))| (UMonomial::from_parts(t, i), k)).collect();
        OmegaBasis { degree: d, labels, expansions, index }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[OmegaLabel] {
        &self.labels
    }

    /// PBW expansion of the `k`-th basis element.
    pub fn expansion(&self, k: usize) -> &UElement<F> {
        &self.expansions[k]
    }

    /// Position of the basis element whose leading PBW monomial is `m`.
    pub fn position(&self, m: &UMonomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// PBW monomials of degree `d` in the order used for matrix rows.
    pub fn monomials(&self) -> Vec<UMonomial> {
        self.labels.iter().map(|(t, i)| UMonomial::from_parts(t, i)).collect()
    }

    /// Change of basis matrix: column `k` holds the PBW coordinates of
    /// `∂_T ω_I` for the `k`-th label, rows ordered as [`Self::monomials`].
    pub fn change_of_basis(&self) -> SparseMatrix<F> {
        let mut m = SparseMatrix::zeros(self.len(), self.len());
        for (k, e) in self.expansions.iter().enumerate() {
            for (mono, c) in e.terms() {
                let row = self.index[mono];
                m.set(row, k, c.clone());
            }
        }
        m
    }

    /// Coordinates of a homogeneous element in the `∂_T ω_I` basis.
    ///
    /// `∂_T ω_I = ∂_T d_I + (terms with more ∂'s)`, so the coordinates are
    /// read off by peeling monomials in order of increasing `∂` count.
    pub fn decompose(&self, u: &UElement<F>) -> BTreeMap<usize, F> {
        self.decompose_with(
            u.terms().map(|(m, c)| (*m, c.clone())).collect(),
            |c| c.is_zero(),
            |old, c, v| old.unwrap_or_else(F::zero) - c.clone() * v.clone(),
        )
    }

    /// Same peeling as [`Self::decompose`] for coefficients in any vector
    /// space over `F` (for instance matrices). `sub_scaled(old, c, v)` must
    /// return `old − c·v`, with a missing `old` meaning zero.
    pub fn decompose_with<V, Z, S>(
        &self,
        mut rest: BTreeMap<UMonomial, V>,
        is_zero: Z,
        sub_scaled: S,
    ) -> BTreeMap<usize, V>
    where
        Z: Fn(&V) -> bool,
        S: Fn(Option<V>, &F, &V) -> V,
    {
        let mut out = BTreeMap::new();
        // UMonomial order sorts by ∂ count first
        while let Some((m, v)) = rest.pop_first() {
            if is_zero(&v) {
                continue;
            }
            let k = self.index[&m];
            for (n, c) in self.expansions[k].terms() {
                if *n != m {
                    let old = rest.remove(n);
                    rest.insert(*n, sub_scaled(old, c, &v));
                }
            }
            out.insert(k, v);
        }
        out
    }

    /// Whether the change of basis matrix has full rank.
    pub fn is_invertible(&self) -> bool {
        exactla::rank(&self.change_of_basis()) == self.len()
    }
}

/// All canonical `d`-subsets of pair slots, i.e. representatives of
/// `𝓘_d / B_d` without repeated pairs.
pub fn canonical_tuples(d: usize) -> Vec<Vec<PairIndex>> {
    combinations(PAIRS.len(), d).into_iter().map(|c| c.into_iter().map(PairIndex::from_slot).collect()).collect()
}
