//! Gelfand–Tsetlin realisation of irreducible `gl(5)`-modules.
//!
//! A basis vector is a pattern of five interlacing rows `λ_{k,1} ≥ … ≥ λ_{k,k}`
//! whose top row is the highest weight. The simple generators act by the
//! classical rational formulas (with `l_{ki} = λ_{ki} − i + 1`):
//!
//! ```text
//! E_{k,k+1} ξ = −Σ_i Π_j (l_ki − l_{k+1,j}) / Π_{j≠i} (l_ki − l_kj) · ξ_{+δ_ki}
//! E_{k+1,k} ξ =  Σ_i Π_j (l_ki − l_{k−1,j}) / Π_{j≠i} (l_ki − l_kj) · ξ_{−δ_ki}
//! ```
//!
//! and the remaining root vectors are obtained as commutators.

use std::collections::HashMap;

use super::{depth_between, gen_index, ModuleId, Realization, Sl5Module};
use crate::exactla::SparseMatrix;
use crate::field::Field;
use crate::sl5::Weight;
use crate::Error;

type Pattern = [i64; 15];

fn offset(k: usize) -> usize {
    k * (k - 1) / 2
}

fn row(p: &Pattern, k: usize) -> &[i64] {
    &p[offset(k)..offset(k) + k]
}

fn gl_weight(p: &Pattern) -> [i64; 5] {
    let mut w = [0; 5];
    let mut prev = 0;
    for k in 1..=5 {
        let s: i64 = row(p, k).iter().sum();
        w[k - 1] = s - prev;
        prev = s;
    }
    w
}

fn enumerate(top: [i64; 5], max_depth: Option<usize>) -> Vec<Pattern> {
    // depth = Σ_{k<5} (max row sum − row sum)
    fn rec(k: usize, p: &mut Pattern, top_sums: &[i64; 5], depth: i64, max: i64, out: &mut Vec<Pattern>) {
        if k == 0 {
            out.push(*p);
            return;
        }
        let upper: Vec<i64> = row(p, k + 1).to_vec();
        fn fill(
            k: usize,
            i: usize,
            upper: &[i64],
            p: &mut Pattern,
            top_sums: &[i64; 5],
            depth: i64,
            max: i64,
            out: &mut Vec<Pattern>,
        ) {
            if i == k {
                let s: i64 = row(p, k).iter().sum();
                let d = depth + top_sums[k - 1] - s;
                if d <= max {
                    rec(k - 1, p, top_sums, d, max, out);
                }
                return;
            }
            for v in (upper[i + 1]..=upper[i]).rev() {
                p[offset(k) + i] = v;
                fill(k, i + 1, upper, p, top_sums, depth, max, out);
            }
        }
        fill(k, 0, &upper, p, top_sums, depth, max, out);
    }
    let mut p = [0; 15];
    p[offset(5)..offset(5) + 5].copy_from_slice(&top);
    let mut top_sums = [0; 5];
    let mut acc = 0;
    for k in 0..5 {
        acc += top[k];
        top_sums[k] = acc;
    }
    let mut out = Vec::new();
    let max = max_depth.map_or(i64::MAX, |d| d as i64);
    rec(4, &mut p, &top_sums, 0, max, &mut out);
    out
}

fn l(p: &Pattern, k: usize, i: usize) -> i64 {
    row(p, k)[i] - i as i64
}

fn is_pattern(p: &Pattern) -> bool {
    (1..5).all(|k| (0..k).all(|i| row(p, k + 1)[i] >= row(p, k)[i] && row(p, k)[i] >= row(p, k + 1)[i + 1]))
}

/// Builds `F(λ)` in the Gelfand–Tsetlin basis, optionally keeping only the
/// vectors at depth at most `max_depth`. Basis vectors are ordered by depth,
/// so a truncated basis is a prefix of the full one.
pub fn build_gelfand_tsetlin<F: Field>(lambda: Weight, max_depth: Option<usize>) -> Result<Sl5Module<F>, Error> {
    if !lambda.is_dominant() {
        return Err(Error::NotDominant(lambda));
    }
    let [a, b, c, d] = lambda.0;
    let top = [a + b, b, 0, -c, -c - d];
    let mut patterns = enumerate(top, max_depth);
    patterns.sort_by_key(|p| (depth_between(top, gl_weight(p)), std::cmp::Reverse(*p)));
    let index: HashMap<Pattern, usize> = patterns.iter().enumerate().map(|(k, p)| (*p, k)).collect();
    let n = patterns.len();
    let gl_weights: Vec<[i64; 5]> = patterns.iter().map(gl_weight).collect();

    let mut actions: Vec<SparseMatrix<F>> = vec![SparseMatrix::zeros(n, n); 25];
    for (col, p) in patterns.iter().enumerate() {
        for r in 1..=5u8 {
            let w = gl_weights[col][r as usize - 1];
            if w != 0 {
                actions[gen_index(r, r)].set(col, col, F::from_int(w));
            }
        }
        for k in 1..5usize {
            for i in 0..k {
                let lki = l(p, k, i);
                let den: i64 = (0..k).filter(|&j| j != i).map(|j| lki - l(p, k, j)).product();
                // raising
                let mut q = *p;
                q[offset(k) + i] += 1;
                if is_pattern(&q) {
                    let num: i64 = (0..=k).map(|j| lki - l(p, k + 1, j)).product();
                    if let Some(&target) = index.get(&q) {
                        actions[gen_index(k as u8, k as u8 + 1)].set(target, col, F::from_frac(-num, den));
                    }
                }
                // lowering
                let mut q = *p;
                q[offset(k) + i] -= 1;
                if is_pattern(&q) {
                    let num: i64 = (0..k - 1).map(|j| lki - l(p, k - 1, j)).product();
                    if let Some(&target) = index.get(&q) {
                        actions[gen_index(k as u8 + 1, k as u8)].set(target, col, F::from_frac(num, den));
                    }
                }
            }
        }
    }
    // E_ij = [E_{i,m}, E_{m,j}] with m next to i
    for dist in 2..5u8 {
        for i in 1..=5 - dist {
            let j = i + dist;
            let (a1, b1) = (&actions[gen_index(i, i + 1)], &actions[gen_index(i + 1, j)]);
            let up = a1.mul(b1).add_scaled(&-F::one(), &b1.mul(a1));
            let (a2, b2) = (&actions[gen_index(j, i + 1)], &actions[gen_index(i + 1, i)]);
            let down = a2.mul(b2).add_scaled(&-F::one(), &b2.mul(a2));
            actions[gen_index(i, j)] = up;
            actions[gen_index(j, i)] = down;
        }
    }
    let mut lowest = top;
    lowest.reverse();
    let complete = max_depth.is_none_or(|m| depth_between(top, lowest) <= m);
    Ok(Sl5Module::assemble(
        ModuleId { source: lambda, realization: Realization::GelfandTsetlin, dual: false },
        lambda,
        gl_weights,
        0,
        actions,
        if complete { None } else { max_depth },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Scalar;
    use crate::modules_sl5::{build_irreducible, lowering_recipes};
    use crate::sl5::{dominant_weights_with_sum, weyl_dimension};

    fn commutator(a: &SparseMatrix<Scalar>, b: &SparseMatrix<Scalar>) -> SparseMatrix<Scalar> {
        a.mul(b).add_scaled(&-Scalar::from_int(1), &b.mul(a))
    }

    #[test]
    fn dimensions_match_weyl() {
        for w in dominant_weights_with_sum(3) {
            let m = build_gelfand_tsetlin::<Scalar>(w, None).unwrap();
            assert_eq!(m.dim() as u64, weyl_dimension(w).unwrap(), "{w}");
            assert!(m.is_complete());
        }
    }

    #[test]
    fn gl5_relations() {
        for w in [Weight::new(1, 1, 0, 0), Weight::new(0, 1, 0, 2), Weight::new(1, 0, 1, 0)] {
            let m = build_gelfand_tsetlin::<Scalar>(w, None).unwrap();
            for a in 1..=5u8 {
                for b in 1..=5u8 {
                    for c in 1..=5u8 {
                        for d in 1..=5u8 {
                            let lhs = commutator(m.action(a, b), m.action(c, d));
                            let mut rhs = SparseMatrix::zeros(m.dim(), m.dim());
                            if b == c {
                                rhs = rhs.add_scaled(&Scalar::from_int(1), m.action(a, d));
                            }
                            if a == d {
                                rhs = rhs.add_scaled(&-Scalar::from_int(1), m.action(c, b));
                            }
                            assert_eq!(lhs, rhs, "{w}: [x{a}∂{b}, x{c}∂{d}]");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn highest_vector_and_weights_agree_with_tensor_realisation() {
        for w in dominant_weights_with_sum(2) {
            let g = build_gelfand_tsetlin::<Scalar>(w, None).unwrap();
            let t = build_irreducible::<Scalar>(w).unwrap();
            let mut a: Vec<Weight> = (0..g.dim()).map(|k| g.weight(k)).collect();
            let mut b: Vec<Weight> = (0..t.dim()).map(|k| t.module().weight(k)).collect();
            a.sort();
            b.sort();
            assert_eq!(a, b, "{w}");
            assert_eq!(g.weight(g.hw()), w);
            for i in 1..=4u8 {
                assert!(g.action(i, i + 1).column(g.hw()).is_empty());
            }
        }
    }

    #[test]
    fn truncation_is_a_prefix() {
        let w = Weight::new(1, 0, 2, 1);
        let full = build_gelfand_tsetlin::<Scalar>(w, None).unwrap();
        let cut = build_gelfand_tsetlin::<Scalar>(w, Some(3)).unwrap();
        assert_eq!(cut.truncation(), Some(3));
        assert!(cut.dim() < full.dim());
        for k in 0..cut.dim() {
            assert_eq!(cut.gl_weight(k), full.gl_weight(k));
            assert!(cut.depth(k) <= 3);
        }
        for r in 1..=5u8 {
            for s in 1..=5u8 {
                for (i, j, x) in cut.action(r, s).entries() {
                    assert_eq!(&full.action(r, s).get(i, j), x);
                }
            }
        }
        let deep = build_gelfand_tsetlin::<Scalar>(w, Some(100)).unwrap();
        assert!(deep.is_complete());
    }

    #[test]
    fn recipes_rebuild_the_basis() {
        let m = build_gelfand_tsetlin::<Scalar>(Weight::new(1, 1, 0, 1), None).unwrap();
        let rec = lowering_recipes(&m).unwrap();
        for k in 0..m.dim() {
            if k == m.hw() {
                continue;
            }
            let mut acc: Vec<(usize, Scalar)> = Vec::new();
            for step in &rec[k] {
                let img = m.act(step.lowering + 1, step.lowering, &vec![(step.parent, Scalar::from_int(1))]);
                acc = crate::exactla::axpy(&acc, &step.coeff, &img);
            }
            assert_eq!(acc, vec![(k, Scalar::from_int(1))]);
        }
    }
}
