//! Elements of `M(μ) = U_− ⊗ F(μ)` and the actions of `L_0` and `L_1`.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::exactla::{rref, SparseVec};
use crate::field::{Field, Scalar};
use crate::modules_sl5::Sl5Module;
use crate::sl5::Weight;
use crate::uminus::{eps_t, l0_adjoint_monomial, PairIndex, UElement, UMonomial, PAIRS};
use crate::Error;

/// A vector of a Verma module: a sparse sum of `u ⊗ e_k` with `u` a PBW
/// monomial and `e_k` a basis vector of the inducing module.
#[derive(Clone, Debug)]
pub struct VermaElement<F = Scalar> {
    module: Arc<Sl5Module<F>>,
    terms: BTreeMap<(UMonomial, usize), F>,
}

impl<F: Field> PartialEq for VermaElement<F> {
    fn eq(&self, other: &Self) -> bool {
        self.module.id() == other.module.id() && self.terms == other.terms
    }
}

impl<F: Field> VermaElement<F> {
    pub fn zero(module: Arc<Sl5Module<F>>) -> Self {
        VermaElement { module, terms: BTreeMap::new() }
    }

    pub fn from_terms<I>(module: Arc<Sl5Module<F>>, terms: I) -> Self
    where
        I: IntoIterator<Item = ((UMonomial, usize), F)>,
    {
        let mut out = Self::zero(module);
        for ((u, k), c) in terms {
            out.add_term(u, k, c);
        }
        out
    }

    /// `u ⊗ v`.
    pub fn tensor(module: Arc<Sl5Module<F>>, u: &UElement<F>, v: &SparseVec<F>) -> Self {
        let mut out = Self::zero(module);
        for (m, a) in u.terms() {
            for (k, b) in v {
                out.add_term(*m, *k, a.clone() * b.clone());
            }
        }
        out
    }

    /// `u ⊗ v_μ` with `v_μ` the highest weight vector.
    pub fn highest(module: Arc<Sl5Module<F>>, u: &UElement<F>) -> Self {
        let hw = module.hw();
        Self::tensor(module, u, &vec![(hw, F::one())])
    }

    pub fn module(&self) -> &Arc<Sl5Module<F>> {
        &self.module
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(UMonomial, usize), &F)> {
        self.terms.iter()
    }

    pub fn coeff(&self, u: &UMonomial, k: usize) -> F {
        self.terms.get(&(*u, k)).cloned().unwrap_or_else(F::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, u: UMonomial, k: usize, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry((u, k)) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let v = e.get().clone() + c;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    /// `self += c · other`.
    pub fn add_scaled(&mut self, c: &F, other: &Self) {
        for ((u, k), x) in &other.terms {
            self.add_term(*u, *k, c.clone() * x.clone());
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        let mut out = Self::zero(self.module.clone());
        out.add_scaled(c, self);
        out
    }

    /// The common degree of all terms, if any.
    pub fn degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(|(u, _)| u.degree());
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    /// The common `sl(5)` weight of all terms, if any.
    pub fn weight(&self) -> Option<Weight> {
        let mut it = self.terms.keys().map(|(u, k)| u.weight() + self.module.weight(*k));
        let w = it.next()?;
        it.all(|e| e == w).then_some(w)
    }

    /// Projection onto `U_− ⊗ F(μ)_μ`.
    pub fn leading_term(&self) -> Self {
        let hw = self.module.hw();
        Self::from_terms(
            self.module.clone(),
            self.terms.iter().filter(|((_, k), _)| *k == hw).map(|(key, c)| (*key, c.clone())),
        )
    }

    /// The `U_−` factor of [`Self::leading_term`].
    pub fn leading_u(&self) -> UElement<F> {
        let hw = self.module.hw();
        let mut out = UElement::zero();
        for ((u, k), c) in &self.terms {
            if *k == hw {
                out.add_term(*u, c.clone());
            }
        }
        out
    }

    /// The same vector viewed in another basis-compatible module, for
    /// instance the full module after a computation in a truncation.
    pub fn rehome(&self, module: Arc<Sl5Module<F>>) -> Result<Self, Error> {
        let ok = module.id() == self.module.id()
            && self.terms.keys().all(|(_, k)| *k < module.dim() && module.gl_weight(*k) == self.module.gl_weight(*k));
        if !ok {
            return Err(Error::DimensionMismatch(format!(
                "cannot move a vector of {} into {}",
                self.module.id(),
                module.id()
            )));
        }
        Ok(VermaElement { module, terms: self.terms.clone() })
    }

    /// Scales so that the least monomial of the leading term has
    /// coefficient 1. Returns `None` when the leading term vanishes.
    pub fn normalized(&self) -> Option<Self> {
        let hw = self.module.hw();
        let c = self.terms.iter().find(|((_, k), _)| *k == hw).map(|(_, c)| c.clone())?;
        Some(self.scale(&(F::one() / c)))
    }
}

impl VermaElement<Scalar> {
    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for ((u, k), c) in &self.terms {
            parts.push(format!("{} {}⊗e{}", crate::format_scalar(c), u.to_text(), k));
        }
        parts.join(" + ")
    }
}

/// `x_r∂_s` acting on `w` (adjointly on `U_−`, by the matrix on `F(μ)`).
pub fn act_l0<F: Field>(r: u8, s: u8, w: &VermaElement<F>) -> VermaElement<F> {
    let mut out = VermaElement::zero(w.module.clone());
    for ((u, k), c) in &w.terms {
        for (n, x) in l0_adjoint_monomial::<F>(r, s, u).terms() {
            out.add_term(*n, *k, c.clone() * x.clone());
        }
        for (j, x) in w.module.action_column(r, s, *k) {
            out.add_term(*u, *j, c.clone() * x.clone());
        }
    }
    out
}

/// An element `Σ c · x_a d_bc` of `L_1`.
#[derive(Clone, Debug, PartialEq)]
pub struct L1Element<F = Scalar> {
    pub terms: Vec<(F, u8, PairIndex)>,
}

impl<F: Field> L1Element<F> {
    /// The lowest weight vector `x_5 d_45`.
    pub fn lowest() -> Self {
        L1Element { terms: vec![(F::one(), 5, PairIndex::new(4, 5))] }
    }

    fn to_coords(&self) -> SparseVec<F> {
        let mut acc: BTreeMap<usize, F> = BTreeMap::new();
        for (c, a, p) in &self.terms {
            if let Some((sign, slot)) = p.canonical() {
                let e = acc.entry((*a as usize - 1) * 10 + slot).or_insert_with(F::zero);
                *e = e.clone() + c.clone() * F::from_int(sign as i64);
            }
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }

    fn from_coords(v: &SparseVec<F>) -> Self {
        let terms = v
            .iter()
            .map(|(k, c)| {
                let (i, j) = PAIRS[k % 10];
                (c.clone(), (k / 10) as u8 + 1, PairIndex::new(i, j))
            })
            .collect();
        L1Element { terms }
    }

    /// Adjoint action of `x_i∂_j`:
    /// `[x_i∂_j, x_a d_bc] = δ_ja x_i d_bc + x_a (δ_jb d_ic + δ_jc d_bi)`.
    pub fn raise(&self, i: u8, j: u8) -> Self {
        let mut terms = Vec::new();
        for (c, a, p) in &self.terms {
            if *a == j {
                terms.push((c.clone(), i, *p));
            }
            if p.i == j {
                terms.push((c.clone(), *a, PairIndex::new(i, p.j)));
            }
            if p.j == j {
                terms.push((c.clone(), *a, PairIndex::new(p.i, i)));
            }
        }
        Self::from_coords(&L1Element { terms }.to_coords())
    }
}

/// A basis of `L_1` (40 elements): the closure of `x_5 d_45` under the
/// raising operators `x_i∂_{i+1}`.
pub fn l1_spanning_set<F: Field>() -> Vec<L1Element<F>> {
    let mut basis: Vec<L1Element<F>> = Vec::new();
    let mut span: Vec<SparseVec<F>> = Vec::new();
    let mut queue = vec![L1Element::lowest()];
    while let Some(t) = queue.pop() {
        let v = t.to_coords();
        if v.is_empty() {
            continue;
        }
        let mut rows = span.clone();
        rows.push(v);
        let reduced = rref(rows);
        if reduced.len() == span.len() {
            continue;
        }
        span = reduced;
        for i in 1..=4u8 {
            queue.push(t.raise(i, i + 1));
        }
        basis.push(t);
    }
    basis
}

/// `x_a d_p` acting on `c · u ⊗ e_k`, accumulated into `out`.
fn odd_on_term<F: Field>(
    a: u8,
    p: PairIndex,
    u: &UMonomial,
    k: usize,
    c: &F,
    module: &Sl5Module<F>,
    out: &mut VermaElement<F>,
) {
    // ∂ factors: [x_a d_p, ∂_a] = −d_p
    let del = u.del();
    let e = del[a as usize - 1];
    if e > 0 {
        let mut rest = del;
        rest[a as usize - 1] -= 1;
        let tail = UElement::<F>::monomial(UMonomial::from_mask(rest, u.mask())).left_mul_d(p);
        let f = -(c.clone() * F::from_int(e as i64));
        for (n, x) in tail.terms() {
            out.add_term(*n, k, f.clone() * x.clone());
        }
    }
    // odd factors: [x_a d_p, d_B] = ε x_a ∂_t, then the even element x_a∂_t
    // acts on everything to its right
    let pairs = u.pairs();
    for (pos, b) in pairs.iter().enumerate() {
        let (eps, t) = eps_t(p.i, p.j, b.i, b.j);
        if eps == 0 {
            continue;
        }
        let sign = if pos % 2 == 0 { eps } else { -eps };
        let f = c.clone() * F::from_int(sign as i64);
        let suffix_slots: Vec<usize> = u.slots()[pos + 1..].to_vec();
        let suffix = UMonomial::new([0; 5], &suffix_slots);
        // z · (suffix ⊗ e_k) with z = x_a∂_t
        let mut pieces: Vec<(UElement<F>, SparseVec<F>)> = Vec::new();
        let ad = l0_adjoint_monomial::<F>(a, t, &suffix);
        if !ad.is_zero() {
            pieces.push((ad, vec![(k, F::one())]));
        }
        let zv = module.action_column(a, t, k);
        if !zv.is_empty() {
            pieces.push((UElement::monomial(suffix), zv.clone()));
        }
        for (mut head, v) in pieces {
            for q in pairs[..pos].iter().rev() {
                head = head.left_mul_d(*q);
            }
            head = head.mul_del(del);
            for (n, x) in head.terms() {
                for (j, y) in &v {
                    out.add_term(*n, *j, f.clone() * x.clone() * y.clone());
                }
            }
        }
    }
}

/// An element of `L_1` acting on `w`; `L_1` kills `F(μ)`.
pub fn act_odd<F: Field>(t: &L1Element<F>, w: &VermaElement<F>) -> VermaElement<F> {
    let mut out = VermaElement::zero(w.module.clone());
    for ((u, k), c) in &w.terms {
        for (x, a, p) in &t.terms {
            let cx = c.clone() * x.clone();
            odd_on_term(*a, *p, u, *k, &cx, &w.module, &mut out);
        }
    }
    out
}

/// `x_5 d_45` acting on `w`.
pub fn act_x5d45<F: Field>(w: &VermaElement<F>) -> VermaElement<F> {
    act_odd(&L1Element::lowest(), w)
}

/// Whether `w` is killed by the raising operators `x_i∂_{i+1}`.
pub fn is_highest<F: Field>(w: &VermaElement<F>) -> bool {
    (1..=4u8).all(|i| act_l0(i, i + 1, w).is_zero())
}

/// Whether `w` is killed by every element of `L_1`.
pub fn killed_by_l1<F: Field>(w: &VermaElement<F>) -> bool {
    l1_spanning_set::<F>().iter().all(|t| act_odd(t, w).is_zero())
}
