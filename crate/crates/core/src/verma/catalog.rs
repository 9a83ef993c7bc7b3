//! The known morphisms: `∇_A`, `∇_B`, `∇_C` and their nonzero composites.
//!
//! | map | source `λ` | target `μ` | leading term |
//! |-----|------------|------------|--------------|
//! | `∇_A(m,n)` | `(m,n+1,0,0)` | `(m,n,0,0)` | `d12` |
//! | `∇_B(m,n)` | `(m+1,0,0,n)` | `(m,0,0,n+1)` | `d15` |
//! | `∇_C(m,n)` | `(0,0,m,n)` | `(0,0,m+1,n)` | `d45` |
//! | `∇_B∇_A(n)` | `(n+1,1,0,0)` | `(n,0,0,1)` | `d12 d15` |
//! | `∇_C∇_B(n)` | `(1,0,0,n)` | `(0,0,1,n+1)` | `d15 d45` |
//! | `∇_C∇_A` | `(0,1,0,0)` | `(0,0,1,0)` | `d12 d45` |
//! | `∇_C∇_B∇_A` | `(1,1,0,0)` | `(0,0,1,1)` | `d12 d15 d45` |

use std::collections::BTreeMap;
use std::sync::Arc;

use super::cache::ModuleCache;
use super::morphism::{compose, morphism_from_singular, MorphismData};
use super::singular::{search, Conditions};
use crate::exactla::SparseMatrix;
use crate::field::Field;
use crate::modules_sl5::{build_irreducible, IrreducibleModule, TensorMonomial, TensorVec, Var};
use crate::sl5::Weight;
use crate::uminus::{PairIndex, UMonomial, PAIRS};
use crate::Error;

/// The three families of degree one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Nabla {
    A,
    B,
    C,
}

impl Nabla {
    /// `(λ, μ)` for the map `M(λ) → M(μ)` with parameters `(m, n)`.
    pub fn weights(self, m: i64, n: i64) -> (Weight, Weight) {
        match self {
            Nabla::A => (Weight::new(m, n + 1, 0, 0), Weight::new(m, n, 0, 0)),
            Nabla::B => (Weight::new(m + 1, 0, 0, n), Weight::new(m, 0, 0, n + 1)),
            Nabla::C => (Weight::new(0, 0, m, n), Weight::new(0, 0, m + 1, n)),
        }
    }

    /// The pair `d_ij` of the leading term.
    pub fn leading_pair(self) -> PairIndex {
        match self {
            Nabla::A => PairIndex::new(1, 2),
            Nabla::B => PairIndex::new(1, 5),
            Nabla::C => PairIndex::new(4, 5),
        }
    }
}

/// The morphism `M(λ) → M(μ)` given by the unique (up to scalar) singular
/// vector of weight `λ` in `M(μ)`, normalised so that its leading term has
/// least monomial coefficient 1.
pub fn morphism_between<F: Field>(
    cache: &ModuleCache<F>,
    lambda: Weight,
    mu: Weight,
    d: usize,
) -> Result<MorphismData<F>, Error> {
    let spaces = search(cache, mu, d, Some(&[lambda]), Conditions::Singular)?;
    let basis = match spaces.as_slice() {
        [s] if s.basis.len() == 1 => &s.basis,
        _ => {
            return Err(Error::NotSingular(format!(
                "expected a unique singular vector of weight {lambda} in degree {d} of M{mu}"
            )))
        }
    };
    let w = basis[0].normalized().ok_or_else(|| Error::NotSingular("leading term vanishes".into()))?;
    let w = w.rehome(cache.module(mu)?)?;
    morphism_from_singular(&w, cache.module(lambda)?, &cache.recipes(lambda)?)
}

pub fn nabla<F: Field>(cache: &ModuleCache<F>, kind: Nabla, m: i64, n: i64) -> Result<MorphismData<F>, Error> {
    let (lambda, mu) = kind.weights(m, n);
    morphism_between(cache, lambda, mu, 1)
}

/// `∇_B∇_A : M(n+1,1,0,0) → M(n,0,0,1)`.
pub fn nabla_ba<F: Field>(cache: &ModuleCache<F>, n: i64) -> Result<MorphismData<F>, Error> {
    compose(&nabla(cache, Nabla::B, n, 0)?, &nabla(cache, Nabla::A, n + 1, 0)?)
}

/// `∇_C∇_B : M(1,0,0,n) → M(0,0,1,n+1)`.
pub fn nabla_cb<F: Field>(cache: &ModuleCache<F>, n: i64) -> Result<MorphismData<F>, Error> {
    compose(&nabla(cache, Nabla::C, 0, n + 1)?, &nabla(cache, Nabla::B, 0, n)?)
}

/// `∇_C∇_A : M(0,1,0,0) → M(0,0,1,0)`.
pub fn nabla_ca<F: Field>(cache: &ModuleCache<F>) -> Result<MorphismData<F>, Error> {
    compose(&nabla(cache, Nabla::C, 0, 0)?, &nabla(cache, Nabla::A, 0, 0)?)
}

/// `∇_C∇_B∇_A : M(1,1,0,0) → M(0,0,1,1)`.
pub fn nabla_cba<F: Field>(cache: &ModuleCache<F>) -> Result<MorphismData<F>, Error> {
    let ba = compose(&nabla(cache, Nabla::B, 0, 0)?, &nabla(cache, Nabla::A, 1, 0)?)?;
    compose(&nabla(cache, Nabla::C, 0, 1)?, &ba)
}

/// Builds `Σ_{i<j} d_ij ⊗ op_ij` between tensor realisations, where `op_ij`
/// maps polynomials of `F(λ)` into `F(μ)`.
fn closed_form<F, O>(lambda: Weight, mu: Weight, op: O) -> Result<MorphismData<F>, Error>
where
    F: Field,
    O: Fn(u8, u8, &TensorVec<F>) -> TensorVec<F>,
{
    let source: IrreducibleModule<F> = build_irreducible(lambda)?;
    let target: IrreducibleModule<F> = build_irreducible(mu)?;
    let mut coeffs = BTreeMap::new();
    for (slot, &(i, j)) in PAIRS.iter().enumerate() {
        let mut a = SparseMatrix::zeros(target.dim(), source.dim());
        for (k, v) in source.basis().iter().enumerate() {
            let image = op(i, j, v);
            let coords = target
                .coords_checked(&image)
                .ok_or_else(|| Error::DimensionMismatch(format!("image of basis vector {k} leaves F{mu}")))?;
            for (r, x) in coords {
                a.set(r, k, x);
            }
        }
        coeffs.insert(UMonomial::new([0; 5], &[slot]), a);
    }
    MorphismData::new(1, source.module().clone(), Arc::clone(target.module()), coeffs)
}

fn differentiate<F: Field>(v: &TensorVec<F>, var: Var) -> TensorVec<F> {
    let mut acc: BTreeMap<TensorMonomial, F> = BTreeMap::new();
    for (m, c) in v {
        if let Some((e, n)) = m.differentiate(var) {
            let x = acc.entry(n).or_insert_with(F::zero);
            *x = x.clone() + c.clone() * F::from_int(e);
        }
    }
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

fn multiply<F: Field>(v: &TensorVec<F>, var: Var) -> TensorVec<F> {
    v.iter().map(|(m, c)| (m.multiply(var), c.clone())).collect()
}

fn combine<F: Field>(a: TensorVec<F>, b: TensorVec<F>, sign: i64) -> TensorVec<F> {
    let mut acc: BTreeMap<TensorMonomial, F> = a.into_iter().collect();
    for (m, c) in b {
        let x = acc.entry(m).or_insert_with(F::zero);
        *x = x.clone() + c * F::from_int(sign);
    }
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

/// `∇_A(m,n) = Σ_{i<j} d_ij ⊗ ∂/∂x_ij` in the tensor realisation.
pub fn nabla_a_closed<F: Field>(m: i64, n: i64) -> Result<MorphismData<F>, Error> {
    let (lambda, mu) = Nabla::A.weights(m, n);
    closed_form(lambda, mu, |i, j, v| differentiate(v, Var::XX(i, j)))
}

/// `∇_B(m,n) = Σ_{i<j} d_ij ⊗ (x*_i ∂_j − x*_j ∂_i)` in the tensor
/// realisation, with `∂_j = ∂/∂x_j`.
pub fn nabla_b_closed<F: Field>(m: i64, n: i64) -> Result<MorphismData<F>, Error> {
    let (lambda, mu) = Nabla::B.weights(m, n);
    closed_form(lambda, mu, |i, j, v| {
        let a = multiply(&differentiate(v, Var::X(j)), Var::Xs1(i));
        let b = multiply(&differentiate(v, Var::X(i)), Var::Xs1(j));
        combine(a, b, -1)
    })
}
