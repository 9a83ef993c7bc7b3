//! The scalar equations characterising morphisms of degree 1, 2 and 3.
//!
//! Write `Φ = Σ ∂_T ω_I ⊗ θ_I^T` and, for a permutation `(p,q,a,b,c)` of
//! `[5]` with sign `ε`, let `Σ_C` run over the cyclic permutations `(α,β,γ)`
//! of `(a,b,c)`. Put `{x, θ} = ρ_μ(x)θ + θρ_λ(x)`, which equals
//! `−(x.θ) + 2x∘θ` for the natural action on `Hom(F(λ), F(μ))`, and
//! `s_K = ±1` when `K = (p,q)` or `(q,p)`, `0` otherwise. With `x = x_p∂_γ`:
//!
//! ```text
//! d = 1:  Σ_C x θ_{αβ} = 0
//! d = 2:  −s_K θ^p + ½ε Σ_C {x, θ_{αβ,K}} = 0                        (all K)
//! d = 3:  s_L θ^p_H − s_H θ^p_L + ½ε Σ_C {x, θ_{αβ,H,L}} = 0         (all H, L)
//!         ¼θ_{ab,bc,cq} + ¼θ_{ac,cb,bq} + ½ε Σ_C {x, θ^a_{αβ}} = 0
//!         Σ_C x θ^p_{αβ} = 0
//!         ε Σ_C x θ^q_{αβ} − ½θ_{ab,bc,ca} = 0
//! ```
//!
//! Each identity is an equality of matrices, i.e. it is tested on every basis
//! vector of `F(λ)`.

use std::fmt;

use super::morphism::{l0_failure, theta_decomposition, MorphismData, ThetaDecomposition};
use crate::exactla::SparseMatrix;
use crate::field::Field;
use crate::uminus::{PairIndex, PAIRS};
use crate::Error;

/// Verdict for one family of equations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyVerdict {
    pub name: &'static str,
    pub passed: bool,
    /// The first failing instance, e.g. `(p,q,a,b,c)=(1,2,3,4,5), K=13`.
    pub first_failure: Option<String>,
}

/// Result of [`verify_degree_equations`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquationReport {
    pub degree: usize,
    /// `L_0`-invariance, the standing assumption of the equations.
    pub l0: bool,
    pub families: Vec<FamilyVerdict>,
}

impl EquationReport {
    pub fn passed(&self) -> bool {
        self.l0 && self.families.iter().all(|f| f.passed)
    }
}

impl fmt::Display for EquationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "L0 invariance: {}", if self.l0 { "ok" } else { "FAILED" })?;
        for fam in &self.families {
            match &fam.first_failure {
                None => writeln!(f, "{}: ok", fam.name)?,
                Some(m) => writeln!(f, "{}: FAILED at {m}", fam.name)?,
            }
        }
        Ok(())
    }
}

/// Permutations of `[5]` with their signs.
fn permutations() -> Vec<([u8; 5], i64)> {
    fn rec(cur: &mut Vec<u8>, out: &mut Vec<([u8; 5], i64)>) {
        if cur.len() == 5 {
            let p: [u8; 5] = cur.as_slice().try_into().expect("five entries");
            let inv = (0..5).flat_map(|i| (i + 1..5).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
            out.push((p, if inv % 2 == 0 { 1 } else { -1 }));
            return;
        }
        for x in 1..=5u8 {
            if !cur.contains(&x) {
                cur.push(x);
                rec(cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut out);
    out
}

fn pair(i: u8, j: u8) -> PairIndex {
    PairIndex::new(i, j)
}

struct Ctx<'a, F: Field> {
    phi: &'a MorphismData<F>,
    theta: ThetaDecomposition<F>,
}

impl<'a, F: Field> Ctx<'a, F> {
    fn zero(&self) -> SparseMatrix<F> {
        SparseMatrix::zeros(self.theta.nrows, self.theta.ncols)
    }

    fn th(&self, t: &[u8], tuple: &[PairIndex]) -> SparseMatrix<F> {
        self.theta.get(t, tuple)
    }

    /// `ρ_μ(x_p∂_γ) θ`.
    fn left(&self, p: u8, g: u8, th: &SparseMatrix<F>) -> SparseMatrix<F> {
        self.phi.target().action(p, g).mul(th)
    }

    /// `ρ_μ(x)θ + θρ_λ(x)` for `x = x_p∂_γ`.
    fn sym(&self, p: u8, g: u8, th: &SparseMatrix<F>) -> SparseMatrix<F> {
        self.left(p, g, th).add_scaled(&F::one(), &th.mul(self.phi.source().action(p, g)))
    }
}

fn cycles(a: u8, b: u8, c: u8) -> [(u8, u8, u8); 3] {
    [(a, b, c), (b, c, a), (c, a, b)]
}

fn sign_against(k: PairIndex, p: u8, q: u8) -> i64 {
    if k == pair(p, q) {
        1
    } else if k == pair(q, p) {
        -1
    } else {
        0
    }
}

struct Family<F> {
    name: &'static str,
    failure: Option<String>,
    _f: std::marker::PhantomData<F>,
}

impl<F: Field> Family<F> {
    fn new(name: &'static str) -> Self {
        Family { name, failure: None, _f: std::marker::PhantomData }
    }

    fn record(&mut self, m: &SparseMatrix<F>, what: impl FnOnce() -> String) {
        if self.failure.is_none() && !m.is_zero() {
            self.failure = Some(what());
        }
    }

    fn verdict(self) -> FamilyVerdict {
        FamilyVerdict { name: self.name, passed: self.failure.is_none(), first_failure: self.failure }
    }
}

fn degree_one<F: Field>(ctx: &Ctx<F>) -> Vec<FamilyVerdict> {
    let mut fam = Family::new("degree 1: Σ_C x_p∂_γ θ_αβ");
    for ([p, q, a, b, c], _) in permutations() {
        let mut acc = ctx.zero();
        for (al, be, ga) in cycles(a, b, c) {
            acc = acc.add_scaled(&F::one(), &ctx.left(p, ga, &ctx.th(&[], &[pair(al, be)])));
        }
        fam.record(&acc, || format!("(p,q,a,b,c)=({p},{q},{a},{b},{c})"));
    }
    vec![fam.verdict()]
}

fn degree_two<F: Field>(ctx: &Ctx<F>) -> Vec<FamilyVerdict> {
    let mut fam = Family::new("degree 2: coefficient of d_K");
    let half = F::half();
    for ([p, q, a, b, c], eps) in permutations() {
        let theta_p = ctx.th(&[p], &[]);
        for &(i, j) in PAIRS.iter() {
            for k in [pair(i, j), pair(j, i)] {
                let mut acc = theta_p.scale(&F::from_int(-sign_against(k, p, q)));
                let f = half.clone() * F::from_int(eps);
                for (al, be, ga) in cycles(a, b, c) {
                    acc = acc.add_scaled(&f, &ctx.sym(p, ga, &ctx.th(&[], &[pair(al, be), k])));
                }
                fam.record(&acc, || format!("(p,q,a,b,c)=({p},{q},{a},{b},{c}), K={k}"));
            }
        }
    }
    vec![fam.verdict()]
}

fn degree_three<F: Field>(ctx: &Ctx<F>) -> Vec<FamilyVerdict> {
    let mut omega = Family::new("degree 3: coefficient of ω_{H,L}");
    let mut del_a = Family::new("degree 3: coefficient of ∂_a");
    let mut del_p = Family::new("degree 3: coefficient of ∂_p");
    let mut del_q = Family::new("degree 3: coefficient of ∂_q");
    let half = F::half();
    let quarter = F::from_frac(1, 4);
    for ([p, q, a, b, c], eps) in permutations() {
        let f = half.clone() * F::from_int(eps);
        let tag = || format!("(p,q,a,b,c)=({p},{q},{a},{b},{c})");
        for (x, &(hi, hj)) in PAIRS.iter().enumerate() {
            for &(li, lj) in &PAIRS[x + 1..] {
                let (hh, ll) = (pair(hi, hj), pair(li, lj));
                let mut acc = ctx.th(&[p], &[hh]).scale(&F::from_int(sign_against(ll, p, q)));
                acc = acc.add_scaled(&F::from_int(-sign_against(hh, p, q)), &ctx.th(&[p], &[ll]));
                for (al, be, ga) in cycles(a, b, c) {
                    acc = acc.add_scaled(&f, &ctx.sym(p, ga, &ctx.th(&[], &[pair(al, be), hh, ll])));
                }
                omega.record(&acc, || format!("{}, H={hh}, L={ll}", tag()));
            }
        }

        let mut acc = ctx.th(&[], &[pair(a, b), pair(b, c), pair(c, q)]).scale(&quarter);
        acc = acc.add_scaled(&quarter, &ctx.th(&[], &[pair(a, c), pair(c, b), pair(b, q)]));
        for (al, be, ga) in cycles(a, b, c) {
            acc = acc.add_scaled(&f, &ctx.sym(p, ga, &ctx.th(&[a], &[pair(al, be)])));
        }
        del_a.record(&acc, tag);

        let mut acc = ctx.zero();
        for (al, be, ga) in cycles(a, b, c) {
            acc = acc.add_scaled(&F::one(), &ctx.left(p, ga, &ctx.th(&[p], &[pair(al, be)])));
        }
        del_p.record(&acc, tag);

        let mut acc = ctx.th(&[], &[pair(a, b), pair(b, c), pair(c, a)]).scale(&-half.clone());
        for (al, be, ga) in cycles(a, b, c) {
            acc = acc.add_scaled(&F::from_int(eps), &ctx.left(p, ga, &ctx.th(&[q], &[pair(al, be)])));
        }
        del_q.record(&acc, tag);
    }
    vec![omega.verdict(), del_a.verdict(), del_p.verdict(), del_q.verdict()]
}

/// Evaluates the characterising equations of a degree 1, 2 or 3 map. The
/// equations presuppose `L_0`-invariance, which is checked first; when it
/// fails no family is evaluated.
pub fn verify_degree_equations<F: Field>(phi: &MorphismData<F>) -> Result<EquationReport, Error> {
    let d = phi.degree();
    if !(1..=3).contains(&d) {
        return Err(Error::UnsupportedDegree(d));
    }
    if l0_failure(phi).is_some() {
        return Ok(EquationReport { degree: d, l0: false, families: Vec::new() });
    }
    let ctx = Ctx { phi, theta: theta_decomposition(phi) };
    let families = match d {
        1 => degree_one(&ctx),
        2 => degree_two(&ctx),
        _ => degree_three(&ctx),
    };
    Ok(EquationReport { degree: d, l0: true, families })
}
