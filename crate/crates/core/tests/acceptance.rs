//! Acceptance suite. Runs every criterion, prints one line per criterion and
//! exits nonzero when any of them fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use e510::modules_sl5::{build_irreducible, TensorMonomial, Var};
use e510::sl5::{dominance_compare, dominant_box, dominant_weights_with_sum, weyl_dimension, DominanceOrder};
use e510::uminus::{
    bd_act, canonical_tuples, d_arrow, d_product, l0_adjoint, omega, omega_basis_dimension, parse_tuple, OmegaBasis,
    PairIndex, SignedPermutation, UElement,
};
use e510::verma::*;
use e510::{Field, Scalar, Weight};
use num_traits::{One, Zero};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn q(n: i64, d: i64) -> Scalar {
    Scalar::from_frac(n, d)
}

fn w(a: i64, b: i64, c: i64, d: i64) -> Weight {
    Weight::new(a, b, c, d)
}

fn pairs(list: &[(u8, u8)]) -> Vec<PairIndex> {
    list.iter().map(|&(i, j)| PairIndex::new(i, j)).collect()
}

/// Whether `u = c · d_{I_1}⋯d_{I_k}` for some nonzero `c`.
fn is_multiple_of_product(u: &UElement, list: &[(u8, u8)]) -> bool {
    let target: UElement = d_product(&pairs(list));
    let Some((m, c)) = target.terms().next() else { return false };
    let x = u.coeff(m);
    !x.is_zero() && u.clone() - target.scale(&(x / c.clone())) == UElement::zero()
}

fn proportional(a: &UElement, b: &UElement) -> bool {
    let Some((m, c)) = a.terms().next() else { return b.is_zero() };
    let x = b.coeff(m);
    !x.is_zero() && b.clone() - a.scale(&(x / c.clone())) == UElement::zero()
}

fn random_tuple(d: usize, rng: &mut ChaCha8Rng) -> Vec<PairIndex> {
    (0..d)
        .map(|_| {
            let i = rng.gen_range(1..=5u8);
            let mut j = rng.gen_range(1..=5u8);
            while j == i {
                j = rng.gen_range(1..=5u8);
            }
            PairIndex::new(i, j)
        })
        .collect()
}

fn omega_worked_example() -> Outcome {
    let i = parse_tuple("21,13,45,25").map_err(|e| e.to_string())?;
    let p = |s: &str| parse_tuple(s).expect("valid tuple");
    let mut want: UElement = d_product(&i);
    want.add_scaled(&q(-1, 2), &d_product(&p("13,25")).mul_del([0, 0, 1, 0, 0]));
    want.add_scaled(&q(1, 2), &d_product(&p("21,25")).mul_del([0, 1, 0, 0, 0]));
    want.add_scaled(&q(1, 2), &d_product(&p("21,45")).mul_del([0, 0, 0, 1, 0]));
    want.add_scaled(&q(1, 4), &UElement::one().mul_del([0, 0, 1, 1, 0]));
    let got = omega::<Scalar>(&i);
    ensure(got == want, || format!("got {}", got.to_text()))?;
    Ok(format!("{} terms", got.len()))
}

fn sign_equivariance() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for d in 2..=4 {
        for _ in 0..200 {
            let i = random_tuple(d, &mut rng);
            let g = SignedPermutation::random(d, &mut rng);
            let lhs = omega::<Scalar>(&bd_act(&g, &i).map_err(|e| e.to_string())?);
            let rhs = omega::<Scalar>(&i).scale(&Scalar::from_int(g.sign_character() as i64));
            ensure(lhs == rhs, || format!("fails for I={i:?}, g={g:?}"))?;
        }
    }
    Ok("600 samples".into())
}

fn action_identity() -> Outcome {
    let mut count = 0;
    for d in 0..=3 {
        for i in canonical_tuples(d) {
            let w = omega::<Scalar>(&i);
            for s in 1..=5u8 {
                for r in 1..=5u8 {
                    if s == r {
                        continue;
                    }
                    let lhs = l0_adjoint(s, r, &w);
                    let rhs = d_arrow::<Scalar>(s, r, &i);
                    ensure(lhs == rhs, || format!("fails for I={i:?}, (s,r)=({s},{r})"))?;
                    count += 1;
                }
            }
        }
    }
    Ok(format!("{count} cases"))
}

fn basis_dimensions() -> Outcome {
    let mut dims = Vec::new();
    for d in 0..=6 {
        let b = OmegaBasis::<Scalar>::new(d);
        let want = omega_basis_dimension(d);
        ensure(b.len() == want, || format!("degree {d}: {} basis elements, expected {want}", b.len()))?;
        ensure(b.monomials().len() == want, || format!("degree {d}: PBW count differs"))?;
        ensure(b.is_invertible(), || format!("degree {d}: change of basis is singular"))?;
        dims.push(want);
    }
    ensure(dims[2] == 50 && dims[3] == 170, || format!("dimensions {dims:?}"))?;
    Ok(format!("dimensions {dims:?}"))
}

fn module_dimensions() -> Outcome {
    let weights = dominant_weights_with_sum(3);
    for &l in &weights {
        let m = build_irreducible::<Scalar>(l).map_err(|e| e.to_string())?;
        let want = weyl_dimension(l).map_err(|e| e.to_string())? as usize;
        ensure(m.dim() == want, || format!("F{l}: {} vs Weyl {want}", m.dim()))?;
    }
    ensure(build_irreducible::<Scalar>(w(1, 1, 0, 0)).map(|m| m.dim()).ok() == Some(40), || "F(1,1,0,0) ≠ 40".into())?;
    Ok(format!("{} weights", weights.len()))
}

type Expected = BTreeSet<(Weight, Weight, Family)>;

fn compare_sweep(
    d: usize,
    max_entry: i64,
    expected: &Expected,
    leading: impl Fn(Family) -> &'static [(u8, u8)],
) -> Outcome {
    let cache = ModuleCache::<Scalar>::default();
    let rows = classify(&cache, d, max_entry).map_err(|e| e.to_string())?;
    let mut found = Expected::new();
    for r in &rows {
        ensure(r.family != Family::Anomaly, || format!("anomaly at μ={}, λ={}", r.mu, r.lambda))?;
        ensure(r.dimension == 1, || format!("μ={}, λ={}: dimension {}", r.mu, r.lambda, r.dimension))?;
        ensure(is_multiple_of_product(&r.leading_term, leading(r.family)), || {
            format!("μ={}, λ={}: leading term {}", r.mu, r.lambda, r.leading_term.to_text())
        })?;
        ensure(r.lambda == r.mu + r.leading_term.terms().next().expect("nonzero").0.weight(), || {
            format!("μ={}, λ={}: weight of leading term", r.mu, r.lambda)
        })?;
        found.insert((r.mu, r.lambda, r.family));
    }
    ensure(&found == expected, || {
        let missing: Vec<_> = expected.difference(&found).collect();
        let extra: Vec<_> = found.difference(expected).collect();
        format!("missing {missing:?}, unexpected {extra:?}")
    })?;
    Ok(format!("{} hits, 0 anomalies", rows.len()))
}

fn degree_one_sweep() -> Outcome {
    let mut expected = Expected::new();
    for mu in dominant_box(2) {
        let [a, b, c, d] = mu.0;
        if c == 0 && d == 0 {
            expected.insert((mu, w(a, b + 1, 0, 0), Family::NablaA));
        }
        if b == 0 && c == 0 && d >= 1 {
            expected.insert((mu, w(a + 1, 0, 0, d - 1), Family::NablaB));
        }
        if a == 0 && b == 0 && c >= 1 {
            expected.insert((mu, w(0, 0, c - 1, d), Family::NablaC));
        }
    }
    compare_sweep(1, 2, &expected, |f| match f {
        Family::NablaA => &[(1, 2)],
        Family::NablaB => &[(1, 5)],
        _ => &[(4, 5)],
    })
}

fn degree_two_sweep() -> Outcome {
    let mut expected = Expected::new();
    for mu in dominant_box(2) {
        let [a, b, c, d] = mu.0;
        if b == 0 && c == 0 && d == 1 {
            expected.insert((mu, w(a + 1, 1, 0, 0), Family::NablaBA));
        }
        if a == 0 && b == 0 && c == 1 && d >= 1 {
            expected.insert((mu, w(1, 0, 0, d - 1), Family::NablaCB));
        }
        if mu == w(0, 0, 1, 0) {
            expected.insert((mu, w(0, 1, 0, 0), Family::NablaCA));
        }
    }
    compare_sweep(2, 2, &expected, |f| match f {
        Family::NablaBA => &[(1, 2), (1, 5)],
        Family::NablaCB => &[(1, 5), (4, 5)],
        _ => &[(1, 2), (4, 5)],
    })
}

fn degree_three_sweep() -> Outcome {
    let expected: Expected = [(w(0, 0, 1, 1), w(1, 1, 0, 0), Family::NablaCBA)].into();
    let msg = compare_sweep(3, 1, &expected, |_| &[(1, 2), (1, 5), (4, 5)])?;
    // the highest vector of F(0,0,1,1) is x*45 x*5
    let hw = TensorMonomial::highest(w(0, 0, 1, 1));
    let want = TensorMonomial::from_vars(&[(Var::Xs(4, 5), 1), (Var::Xs1(5), 1)]);
    ensure(hw == want, || format!("highest vector of F(0,0,1,1) is {hw:?}"))?;
    Ok(msg)
}

/// Name, map and the pairs of its leading term.
type Entry = (String, MorphismData<Scalar>, Vec<(u8, u8)>);

/// The catalogued morphisms with parameters at most 2.
fn catalogue(cache: &ModuleCache<Scalar>) -> Result<Vec<Entry>, String> {
    let err = |e: e510::Error| e.to_string();
    let mut out = Vec::new();
    for kind in [Nabla::A, Nabla::B, Nabla::C] {
        for m in 0..=2 {
            for n in 0..=2 {
                let p = kind.leading_pair();
                out.push((format!("∇_{kind:?}({m},{n})"), nabla(cache, kind, m, n).map_err(err)?, vec![(p.i, p.j)]));
            }
        }
    }
    for n in 0..=2 {
        out.push((format!("∇_B∇_A({n})"), nabla_ba(cache, n).map_err(err)?, vec![(1, 2), (1, 5)]));
        out.push((format!("∇_C∇_B({n})"), nabla_cb(cache, n).map_err(err)?, vec![(1, 5), (4, 5)]));
    }
    out.push(("∇_C∇_A".into(), nabla_ca(cache).map_err(err)?, vec![(1, 2), (4, 5)]));
    out.push(("∇_C∇_B∇_A".into(), nabla_cba(cache).map_err(err)?, vec![(1, 2), (1, 5), (4, 5)]));
    Ok(out)
}

fn composition_algebra() -> Outcome {
    let cache = ModuleCache::<Scalar>::default();
    let err = |e: e510::Error| e.to_string();
    let mut squares = 0;
    for m in 0..=2 {
        for n in 0..=2 {
            let aa =
                compose(&nabla(&cache, Nabla::A, m, n).map_err(err)?, &nabla(&cache, Nabla::A, m, n + 1).map_err(err)?)
                    .map_err(err)?;
            let cc =
                compose(&nabla(&cache, Nabla::C, m + 1, n).map_err(err)?, &nabla(&cache, Nabla::C, m, n).map_err(err)?)
                    .map_err(err)?;
            ensure(aa.is_zero(), || format!("∇_A² ≠ 0 at ({m},{n})"))?;
            ensure(cc.is_zero(), || format!("∇_C² ≠ 0 at ({m},{n})"))?;
            squares += 2;
            if m >= 1 {
                let bb = compose(
                    &nabla(&cache, Nabla::B, m - 1, n + 1).map_err(err)?,
                    &nabla(&cache, Nabla::B, m, n).map_err(err)?,
                )
                .map_err(err)?;
                ensure(bb.is_zero(), || format!("∇_B² ≠ 0 at ({m},{n})"))?;
                squares += 1;
            }
        }
    }
    let mut composites = 0;
    for (name, phi, lead) in catalogue(&cache)?.into_iter().filter(|(_, phi, _)| phi.degree() >= 2) {
        ensure(!phi.is_zero(), || format!("{name} vanishes"))?;
        ensure(is_multiple_of_product(&phi.leading_term(), &lead), || {
            format!("{name}: leading term {}", phi.leading_term().to_text())
        })?;
        composites += 1;
    }
    Ok(format!("{squares} squares vanish, {composites} composites nonzero"))
}

fn duality() -> Outcome {
    let cache = ModuleCache::<Scalar>::default();
    let list = catalogue(&cache)?;
    for (name, phi, _) in &list {
        let psi = dual_morphism(phi).map_err(|e| e.to_string())?;
        ensure(check_morphism(&psi).passed(), || format!("dual of {name} is not a morphism"))?;
        ensure(psi.lambda() == phi.mu().dual() && psi.mu() == phi.lambda().dual(), || {
            format!("dual of {name}: weights")
        })?;
        ensure(psi.mu() - psi.lambda() == -(phi.mu() - phi.lambda()).dual(), || {
            format!("dual of {name}: leading weight")
        })?;
        let back = dual_morphism(&psi).map_err(|e| e.to_string())?;
        ensure(back.lambda() == phi.lambda() && back.mu() == phi.mu(), || format!("double dual of {name}: weights"))?;
        ensure(proportional(&phi.leading_term(), &back.leading_term()), || {
            format!("double dual of {name}: leading term")
        })?;
    }
    // the dual of ∇_A(m,n) lies in the ∇_C(n,m) family
    for (m, n) in [(0, 0), (1, 2)] {
        let psi =
            dual_morphism(&nabla(&cache, Nabla::A, m, n).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let (l, u) = Nabla::C.weights(n, m);
        ensure(psi.lambda() == l && psi.mu() == u, || {
            format!("dual of ∇_A({m},{n}) has weights {}→{}", psi.lambda(), psi.mu())
        })?;
        ensure(is_multiple_of_product(&psi.leading_term(), &[(4, 5)]), || {
            format!("dual of ∇_A({m},{n}): leading term")
        })?;
    }
    Ok(format!("{} morphisms", list.len()))
}

/// `L_0`-invariant maps that are not morphisms: equivariant extensions of
/// random highest weight vectors outside the singular space.
fn invariant_non_morphisms(
    cache: &ModuleCache<Scalar>,
    d: usize,
    count: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<MorphismData<Scalar>>, String> {
    let err = |e: e510::Error| e.to_string();
    let mut spaces = Vec::new();
    for mu in [w(0, 0, 0, 0), w(1, 0, 0, 0), w(0, 0, 0, 1), w(0, 1, 0, 0), w(0, 0, 1, 0)] {
        for s in search(cache, mu, d, None, Conditions::Highest).map_err(err)? {
            if s.basis.iter().any(|v| !killed_by_l1(v)) {
                spaces.push((mu, s));
            }
        }
    }
    ensure(!spaces.is_empty(), || format!("no highest weight vectors in degree {d}"))?;
    let mut out = Vec::new();
    while out.len() < count {
        let (mu, s) = &spaces[rng.gen_range(0..spaces.len())];
        let full = cache.module(*mu).map_err(err)?;
        let mut v = VermaElement::zero(full.clone());
        for b in &s.basis {
            let c = Scalar::from_int(rng.gen_range(-5..=5));
            let mut t = b.rehome(full.clone()).map_err(err)?;
            t = t.scale(&c);
            v.add_scaled(&Scalar::one(), &t);
        }
        if v.is_zero() {
            continue;
        }
        let recipes = cache.recipes(s.lambda).map_err(err)?;
        out.push(extend_equivariantly(&v, cache.module(s.lambda).map_err(err)?, &recipes).map_err(err)?);
    }
    Ok(out)
}

/// A morphism with one matrix entry changed.
fn perturbed(phi: &MorphismData<Scalar>, rng: &mut ChaCha8Rng) -> Result<MorphismData<Scalar>, String> {
    let mut coeffs = phi.coeffs().clone();
    let keys: Vec<_> = coeffs.keys().copied().collect();
    let key = keys[rng.gen_range(0..keys.len())];
    let a = coeffs.get_mut(&key).expect("present");
    let (r, c) = (rng.gen_range(0..a.nrows()), rng.gen_range(0..a.ncols()));
    a.add_to(r, c, Scalar::from_int(rng.gen_range(1..=4)));
    MorphismData::new(phi.degree(), phi.source().clone(), phi.target().clone(), coeffs).map_err(|e| e.to_string())
}

fn check_equivalence() -> Outcome {
    let cache = ModuleCache::<Scalar>::default();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let list = catalogue(&cache)?;
    let mut positives = 0;
    let mut corpus: Vec<(String, MorphismData<Scalar>)> = Vec::new();
    for (name, phi, _) in list.iter() {
        corpus.push((name.clone(), phi.clone()));
        corpus.push((format!("dual of {name}"), dual_morphism(phi).map_err(|e| e.to_string())?));
    }
    for (name, phi) in &corpus {
        let direct = check_morphism(phi).passed();
        let eq = verify_degree_equations(phi).map_err(|e| e.to_string())?;
        ensure(direct && eq.passed(), || format!("{name}: direct {direct}, equations\n{eq}"))?;
        positives += 1;
    }
    let mut negatives = [0usize; 3];
    let mut invariant = [0usize; 3];
    for d in 1..=3 {
        let mut controls = invariant_non_morphisms(&cache, d, 16, &mut rng)?;
        let of_degree: Vec<_> = list.iter().filter(|(_, p, _)| p.degree() == d).collect();
        for _ in 0..8 {
            let (_, phi, _) = of_degree[rng.gen_range(0..of_degree.len())];
            controls.push(perturbed(phi, &mut rng)?);
        }
        for phi in &controls {
            let direct = check_morphism(phi).passed();
            let eq = verify_degree_equations(phi).map_err(|e| e.to_string())?;
            ensure(direct == eq.passed(), || {
                format!("degree {d}, {}→{}: direct {direct}, equations\n{eq}", phi.lambda(), phi.mu())
            })?;
            if !direct {
                negatives[d - 1] += 1;
                if eq.l0 {
                    invariant[d - 1] += 1;
                }
            }
        }
        ensure(negatives[d - 1] >= 20, || format!("degree {d}: only {} rejected controls", negatives[d - 1]))?;
    }
    // a relation among the θ components of ∇_C∇_B∇_A on the highest vector
    let cba = nabla_cba(&cache).map_err(|e| e.to_string())?;
    let theta = theta_decomposition(&cba);
    let hw = cba.source().hw();
    let lhs = theta
        .get(&[3], &pairs(&[(1, 5)]))
        .scale(&Scalar::from_int(-2))
        .add_scaled(&-Scalar::one(), &theta.get(&[], &pairs(&[(1, 2), (1, 5), (4, 5)])));
    ensure(lhs.column(hw).is_empty(), || "−2θ³_15(s) − θ_{12,15,45}(s) ≠ 0".into())?;
    Ok(format!(
        "{positives} morphisms agree; rejected controls per degree {negatives:?}, of which L0-invariant {invariant:?}"
    ))
}

fn dominance() -> Outcome {
    let mut tuples = Vec::new();
    for a in 1..=5u8 {
        for b in 1..=5u8 {
            for c in 1..=5u8 {
                for e in 1..=5u8 {
                    if a != b && c != e {
                        tuples.push([a, b, c, e]);
                    }
                }
            }
        }
    }
    let weight = |t: &[u8; 4]| {
        let mut g = [0i64; 5];
        for &x in t {
            g[x as usize - 1] += 1;
        }
        // d_ij has gl weight e_i + e_j
        Weight::from_gl(g)
    };
    let sorted = |t: &[u8; 4]| {
        let mut s = *t;
        s.sort_unstable();
        s
    };
    for i in &tuples {
        for k in &tuples {
            let geq = matches!(
                dominance_compare(weight(i), weight(k)),
                DominanceOrder::GreaterOrEqual | DominanceOrder::Equal
            );
            let (si, sk) = (sorted(i), sorted(k));
            let le = si.iter().zip(&sk).all(|(a, b)| a <= b);
            ensure(geq == le, || format!("I={i:?}, K={k:?}: dominance {geq}, entrywise {le}"))?;
        }
    }
    Ok(format!("{} pairs", tuples.len() * tuples.len()))
}

fn main() -> ExitCode {
    type Criterion = (&'static str, fn() -> Outcome, Duration);
    let secs = Duration::from_secs;
    let criteria: [Criterion; 12] = [
        ("omega worked example", omega_worked_example, secs(1)),
        ("sign equivariance of omega", sign_equivariance, secs(10)),
        ("L0 action on omega", action_identity, secs(60)),
        ("omega basis dimensions", basis_dimensions, secs(60)),
        ("irreducible module dimensions", module_dimensions, secs(120)),
        ("degree 1 classification", degree_one_sweep, secs(300)),
        ("degree 2 classification", degree_two_sweep, secs(600)),
        ("degree 3 classification", degree_three_sweep, secs(600)),
        ("composition algebra", composition_algebra, secs(120)),
        ("duality", duality, secs(300)),
        ("equations agree with the direct check", check_equivalence, secs(300)),
        ("dominance of d_I weights", dominance, secs(5)),
    ];
    let mut failed = 0;
    for (k, (name, run, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let t = start.elapsed();
        let outcome = match outcome {
            Ok(msg) if t > *budget => Err(format!("{msg}; took {t:.2?}, budget {budget:?}")),
            other => other,
        };
        match outcome {
            Ok(msg) => println!("criterion {:>2} PASS  {name} ({t:.2?}): {msg}", k + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name} ({t:.2?}): {msg}", k + 1);
            }
        }
    }
    if failed == 0 {
        println!("all 12 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("{failed} of 12 criteria failed");
        ExitCode::FAILURE
    }
}
