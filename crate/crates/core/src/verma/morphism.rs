//! Morphisms of Verma modules `M(λ) → M(μ)`.
//!
//! A morphism of degree `d` is determined by
//! `Φ ∈ (U_−)_d ⊗ Hom(F(λ), F(μ))`, stored as one matrix per PBW monomial,
//! and acts by `u ⊗ v ↦ u Φ(v)`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::element::{act_l0, act_x5d45, is_highest, VermaElement};
use crate::exactla::{SparseMatrix, SparseVec};
use crate::field::{Field, Scalar};
use crate::modules_sl5::{RecipeStep, Sl5Module};
use crate::sl5::Weight;
use crate::uminus::omega::{OmegaBasis, OmegaLabel};
use crate::uminus::{l0_adjoint_monomial, mul_monomial_element, PairIndex, UElement, UMonomial};
use crate::Error;

/// `Φ = Σ_m m ⊗ A_m` with `A_m : F(λ) → F(μ)`.
#[derive(Clone, Debug)]
pub struct MorphismData<F = Scalar> {
    degree: usize,
    source: Arc<Sl5Module<F>>,
    target: Arc<Sl5Module<F>>,
    coeffs: BTreeMap<UMonomial, SparseMatrix<F>>,
}

impl<F: Field> PartialEq for MorphismData<F> {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree
            && self.source.id() == other.source.id()
            && self.target.id() == other.target.id()
            && self.coeffs == other.coeffs
    }
}

impl<F: Field> MorphismData<F> {
    /// Checks degrees and shapes; zero matrices are dropped.
    pub fn new(
        degree: usize,
        source: Arc<Sl5Module<F>>,
        target: Arc<Sl5Module<F>>,
        coeffs: BTreeMap<UMonomial, SparseMatrix<F>>,
    ) -> Result<Self, Error> {
        for (m, a) in &coeffs {
            if m.degree() != degree {
                return Err(Error::DimensionMismatch(format!("monomial {m} does not have degree {degree}")));
            }
            if a.nrows() != target.dim() || a.ncols() != source.dim() {
                return Err(Error::DimensionMismatch(format!(
                    "coefficient of {m} is {}×{}, expected {}×{}",
                    a.nrows(),
                    a.ncols(),
                    target.dim(),
                    source.dim()
                )));
            }
        }
        let coeffs = coeffs.into_iter().filter(|(_, a)| !a.is_zero()).collect();
        Ok(MorphismData { degree, source, target, coeffs })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// The inducing module of the source, `F(λ)`.
    pub fn source(&self) -> &Arc<Sl5Module<F>> {
        &self.source
    }

    /// The inducing module of the target, `F(μ)`.
    pub fn target(&self) -> &Arc<Sl5Module<F>> {
        &self.target
    }

    pub fn lambda(&self) -> Weight {
        self.source.highest_weight()
    }

    pub fn mu(&self) -> Weight {
        self.target.highest_weight()
    }

    pub fn coeffs(&self) -> &BTreeMap<UMonomial, SparseMatrix<F>> {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, c: &F) -> Self {
        let coeffs = self.coeffs.iter().map(|(m, a)| (*m, a.scale(c))).collect();
        MorphismData::new(self.degree, self.source.clone(), self.target.clone(), coeffs).expect("same shapes")
    }

    /// `Φ(v)` for a vector `v` of `F(λ)`.
    pub fn image(&self, v: &SparseVec<F>) -> VermaElement<F> {
        let mut out = VermaElement::zero(self.target.clone());
        for (m, a) in &self.coeffs {
            for (j, x) in a.mul_vec(v) {
                out.add_term(*m, j, x);
            }
        }
        out
    }

    /// `Φ(v_λ)`, a singular vector of `M(μ)` when `Φ` is a morphism.
    pub fn image_of_highest(&self) -> VermaElement<F> {
        self.image(&vec![(self.source.hw(), F::one())])
    }

    /// The `U_−` factor of the leading term of `Φ(v_λ)`.
    pub fn leading_term(&self) -> UElement<F> {
        self.image_of_highest().leading_u()
    }
}

impl MorphismData<Scalar> {
    pub fn to_text(&self) -> String {
        let mut out = format!("degree {} morphism M{} -> M{}", self.degree, self.source.id(), self.target.id());
        for (m, a) in &self.coeffs {
            out.push_str(&format!("\n  {}: {} nonzero entries", m.to_text(), a.nnz()));
        }
        out
    }
}

/// `φ(u ⊗ v) = u Φ(v)`.
pub fn apply_morphism<F: Field>(phi: &MorphismData<F>, u: &UElement<F>, v: &SparseVec<F>) -> VermaElement<F> {
    let image = phi.image(v);
    let mut out = VermaElement::zero(phi.target.clone());
    for (mu, c) in u.terms() {
        for ((m, j), x) in image.terms() {
            for (n, y) in mul_monomial_element(mu, &UElement::<F>::monomial(*m)).terms() {
                out.add_term(*n, *j, c.clone() * x.clone() * y.clone());
            }
        }
    }
    out
}

/// Extends `v_λ ↦ w` to an `L_0`-equivariant map `F(λ) → M(μ)` by applying
/// the lowering recipes of `F(λ)` to `w`. Only the highest weight condition
/// on `w` is checked.
pub fn extend_equivariantly<F: Field>(
    w: &VermaElement<F>,
    source: Arc<Sl5Module<F>>,
    recipes: &[Vec<RecipeStep<F>>],
) -> Result<MorphismData<F>, Error> {
    let target = w.module().clone();
    if !target.is_complete() || !source.is_complete() {
        return Err(Error::DimensionMismatch("equivariant extension needs complete modules".into()));
    }
    let degree = w.degree().ok_or_else(|| Error::NotSingular("vector is not homogeneous".into()))?;
    let lambda = source.highest_weight();
    if w.weight() != Some(lambda) {
        return Err(Error::WeightMismatch(format!("vector does not have weight {lambda}")));
    }
    if !is_highest(w) {
        return Err(Error::NotSingular("vector is not killed by the raising operators".into()));
    }
    let mut order: Vec<usize> = (0..source.dim()).collect();
    order.sort_by_key(|&k| source.depth(k));
    let mut images: Vec<Option<VermaElement<F>>> = vec![None; source.dim()];
    images[source.hw()] = Some(w.clone());
    for &k in &order {
        if k == source.hw() {
            continue;
        }
        let mut acc = VermaElement::zero(target.clone());
        for step in &recipes[k] {
            let parent = images[step.parent].as_ref().expect("parents are shallower");
            acc.add_scaled(&step.coeff, &act_l0(step.lowering + 1, step.lowering, parent));
        }
        images[k] = Some(acc);
    }
    let mut coeffs: BTreeMap<UMonomial, SparseMatrix<F>> = BTreeMap::new();
    for (k, img) in images.iter().enumerate() {
        for ((u, j), x) in img.as_ref().expect("all images built").terms() {
            coeffs.entry(*u).or_insert_with(|| SparseMatrix::zeros(target.dim(), source.dim())).set(*j, k, x.clone());
        }
    }
    MorphismData::new(degree, source, target, coeffs)
}

/// The morphism `M(λ) → M(μ)` sending `v_λ` to the singular vector `w`.
pub fn morphism_from_singular<F: Field>(
    w: &VermaElement<F>,
    source: Arc<Sl5Module<F>>,
    recipes: &[Vec<RecipeStep<F>>],
) -> Result<MorphismData<F>, Error> {
    if !act_x5d45(w).is_zero() {
        return Err(Error::NotSingular("vector is not killed by x5d45".into()));
    }
    extend_equivariantly(w, source, recipes)
}

/// `Φ₂ ∘ Φ₁`, with coefficient `Σ m₁m₂ ⊗ B_{m₂} A_{m₁}`.
pub fn compose<F: Field>(phi2: &MorphismData<F>, phi1: &MorphismData<F>) -> Result<MorphismData<F>, Error> {
    if phi1.target.id() != phi2.source.id() || phi1.target.dim() != phi2.source.dim() {
        return Err(Error::WeightMismatch(format!(
            "cannot compose: first map lands in M{}, second starts at M{}",
            phi1.target.id(),
            phi2.source.id()
        )));
    }
    let mut coeffs: BTreeMap<UMonomial, SparseMatrix<F>> = BTreeMap::new();
    for (m1, a) in &phi1.coeffs {
        for (m2, b) in &phi2.coeffs {
            let ba = b.mul(a);
            if ba.is_zero() {
                continue;
            }
            for (n, c) in mul_monomial_element(m1, &UElement::monomial(*m2)).terms() {
                let e = coeffs.entry(*n).or_insert_with(|| SparseMatrix::zeros(ba.nrows(), ba.ncols()));
                *e = e.add_scaled(c, &ba);
            }
        }
    }
    MorphismData::new(phi1.degree + phi2.degree, phi1.source.clone(), phi2.target.clone(), coeffs)
}

/// `Φ = Σ ∂_T ω_I ⊗ θ_I^T` over canonical labels `(T, I)`.
#[derive(Clone, Debug)]
pub struct ThetaDecomposition<F = Scalar> {
    pub degree: usize,
    pub nrows: usize,
    pub ncols: usize,
    pub entries: BTreeMap<OmegaLabel, SparseMatrix<F>>,
}

impl<F: Field> ThetaDecomposition<F> {
    /// `θ_I^T` for an arbitrary tuple `I`, using `θ_{g(I)} = sgn(g) θ_I`;
    /// zero when a pair repeats or is degenerate.
    pub fn get(&self, t: &[u8], tuple: &[PairIndex]) -> SparseMatrix<F> {
        let zero = SparseMatrix::zeros(self.nrows, self.ncols);
        let mut sign = 1;
        let mut slots = Vec::with_capacity(tuple.len());
        for p in tuple {
            match p.canonical() {
                Some((s, slot)) => {
                    sign *= s;
                    slots.push(slot);
                }
                None => return zero,
            }
        }
        for a in 0..slots.len() {
            for b in a + 1..slots.len() {
                if slots[a] == slots[b] {
                    return zero;
                }
                if slots[a] > slots[b] {
                    sign = -sign;
                }
            }
        }
        slots.sort_unstable();
        let mut t = t.to_vec();
        t.sort_unstable();
        match self.entries.get(&(t, slots)) {
            Some(m) if sign > 0 => m.clone(),
            Some(m) => m.scale(&-F::one()),
            None => zero,
        }
    }
}

/// Coordinates of `Φ` in the `∂_T ω_I` basis.
pub fn theta_decomposition<F: Field>(phi: &MorphismData<F>) -> ThetaDecomposition<F> {
    let basis = OmegaBasis::<F>::new(phi.degree);
    let (nrows, ncols) = (phi.target.dim(), phi.source.dim());
    let coords = basis.decompose_with(
        phi.coeffs.clone(),
        |m| m.is_zero(),
        |old, c, v| old.unwrap_or_else(|| SparseMatrix::zeros(nrows, ncols)).add_scaled(&-c.clone(), v),
    );
    let entries = coords.into_iter().map(|(k, m)| (basis.labels()[k].clone(), m)).collect();
    ThetaDecomposition { degree: phi.degree, nrows, ncols, entries }
}

/// `Ψ = Σ ∂_T ω_I ⊗ (−1)^{|T|} (θ_I^T)*`, a map `M(F(μ)*) → M(F(λ)*)`.
pub fn dual_morphism<F: Field>(phi: &MorphismData<F>) -> Result<MorphismData<F>, Error> {
    let basis = OmegaBasis::<F>::new(phi.degree);
    let theta = theta_decomposition(phi);
    let source = Arc::new(phi.target.dual()?);
    let target = Arc::new(phi.source.dual()?);
    let mut coeffs: BTreeMap<UMonomial, SparseMatrix<F>> = BTreeMap::new();
    for (k, label) in basis.labels().iter().enumerate() {
        let Some(th) = theta.entries.get(label) else {
            continue;
        };
        let mut dual = th.transpose();
        if label.0.len() % 2 == 1 {
            dual = dual.scale(&-F::one());
        }
        for (m, c) in basis.expansion(k).terms() {
            let e = coeffs.entry(*m).or_insert_with(|| SparseMatrix::zeros(dual.nrows(), dual.ncols()));
            *e = e.add_scaled(c, &dual);
        }
    }
    MorphismData::new(phi.degree, source, target, coeffs)
}

/// First failure found by [`check_morphism`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckFailure {
    /// `x_r∂_s · Φ ≠ 0`, first visible at the given monomial.
    L0 { r: u8, s: u8, monomial: UMonomial },
    /// `x_5 d_45 Φ(v_λ) ≠ 0`, first visible at the given monomial.
    X5d45 { monomial: UMonomial, index: usize },
}

impl fmt::Display for CheckFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CheckFailure::L0 { r, s, monomial } => {
                write!(f, "not L0-invariant: x{r}∂{s}·Φ has a nonzero coefficient at {monomial}")
            }
            CheckFailure::X5d45 { monomial, index } => {
                write!(f, "x5d45·Φ(v_λ) has a nonzero term {monomial} ⊗ e{index}")
            }
        }
    }
}

/// Outcome of [`check_morphism`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismCheck {
    pub l0: bool,
    pub x5d45: bool,
    pub failure: Option<CheckFailure>,
}

impl MorphismCheck {
    pub fn passed(&self) -> bool {
        self.l0 && self.x5d45
    }
}

/// The first `x_r∂_s` (with `r ≠ s`) under which `Φ` is not invariant.
pub fn l0_failure<F: Field>(phi: &MorphismData<F>) -> Option<CheckFailure> {
    for r in 1..=5u8 {
        for s in 1..=5u8 {
            if r == s {
                continue;
            }
            let rho_mu = phi.target.action(r, s);
            let rho_lambda = phi.source.action(r, s);
            let mut acc: BTreeMap<UMonomial, SparseMatrix<F>> = BTreeMap::new();
            for (m, a) in &phi.coeffs {
                for (n, c) in l0_adjoint_monomial::<F>(r, s, m).terms() {
                    let e = acc.entry(*n).or_insert_with(|| SparseMatrix::zeros(a.nrows(), a.ncols()));
                    *e = e.add_scaled(c, a);
                }
                let conj = rho_mu.mul(a).add_scaled(&-F::one(), &a.mul(rho_lambda));
                let e = acc.entry(*m).or_insert_with(|| SparseMatrix::zeros(a.nrows(), a.ncols()));
                *e = e.add_scaled(&F::one(), &conj);
            }
            if let Some((m, _)) = acc.iter().find(|(_, a)| !a.is_zero()) {
                return Some(CheckFailure::L0 { r, s, monomial: *m });
            }
        }
    }
    None
}

/// Checks that `Φ` defines a morphism: `L_0`-invariance under the 20 root
/// vectors, then `x_5 d_45 Φ(v_λ) = 0`.
pub fn check_morphism<F: Field>(phi: &MorphismData<F>) -> MorphismCheck {
    if let Some(f) = l0_failure(phi) {
        return MorphismCheck { l0: false, x5d45: false, failure: Some(f) };
    }
    let image = act_x5d45(&phi.image_of_highest());
    let first = image.terms().next().map(|((m, k), _)| (*m, *k));
    match first {
        Some((monomial, index)) => {
            MorphismCheck { l0: true, x5d45: false, failure: Some(CheckFailure::X5d45 { monomial, index }) }
        }
        None => MorphismCheck { l0: true, x5d45: true, failure: None },
    }
}
