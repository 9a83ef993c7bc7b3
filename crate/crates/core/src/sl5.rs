//! Weights of `sl(5)`.
//!
//! A weight is stored by its coordinates `(λ12, λ23, λ34, λ45)` with respect
//! to the fundamental weights. Weights of `gl(5)` (vectors in the `e_i`
//! basis) are projected to `sl(5)` by pairing with the simple coroots.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::Error;

/// An `sl(5)` weight in fundamental coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(pub [i64; 4]);

/// Outcome of a dominance comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DominanceOrder {
    Equal,
    LessOrEqual,
    GreaterOrEqual,
    Incomparable,
}

/// Simple roots `α12, α23, α34, α45`.
pub const SIMPLE_ROOTS: [Weight; 4] =
    [Weight([2, -1, 0, 0]), Weight([-1, 2, -1, 0]), Weight([0, -1, 2, -1]), Weight([0, 0, -1, 2])];

/// Half sum of positive roots.
pub const RHO: Weight = Weight([1, 1, 1, 1]);

// five times the inverse Cartan matrix
const INV_CARTAN_5: [[i64; 4]; 4] = [[4, 3, 2, 1], [3, 6, 4, 2], [2, 4, 6, 3], [1, 2, 3, 4]];

impl Weight {
    pub const ZERO: Weight = Weight([0; 4]);

    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        Weight([a, b, c, d])
    }

    /// Fundamental weight `ω_{i,i+1}` for `i` in `1..=4`.
    pub fn fundamental(i: usize) -> Self {
        let mut c = [0; 4];
        c[i - 1] = 1;
        Weight(c)
    }

    /// Projection of a `gl(5)` weight `Σ e_k c_k`.
    pub fn from_gl(e: [i64; 5]) -> Self {
        Weight([e[0] - e[1], e[1] - e[2], e[2] - e[3], e[3] - e[4]])
    }

    pub fn coords(&self) -> [i64; 4] {
        self.0
    }

    /// `λ_ij = Σ_{k=i}^{j-1} λ_{k,k+1}` for `1 ≤ i < j ≤ 5`.
    pub fn pair_value(&self, i: usize, j: usize) -> i64 {
        assert!(1 <= i && i < j && j <= 5, "invalid pair ({i},{j})");
        self.0[i - 1..j - 1].iter().sum()
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    /// Coordinates of the weight in the basis of simple roots, scaled by 5.
    pub fn root_coords_times_5(&self) -> [i64; 4] {
        let mut out = [0; 4];
        for (i, row) in INV_CARTAN_5.iter().enumerate() {
            out[i] = row.iter().zip(self.0).map(|(a, b)| a * b).sum();
        }
        out
    }

    /// Dual weight `(a,b,c,d) ↦ (d,c,b,a)`.
    pub fn dual(&self) -> Self {
        let [a, b, c, d] = self.0;
        Weight([d, c, b, a])
    }
}

impl Add for Weight {
    type Output = Weight;
    fn add(self, o: Weight) -> Weight {
        Weight([self.0[0] + o.0[0], self.0[1] + o.0[1], self.0[2] + o.0[2], self.0[3] + o.0[3]])
    }
}

impl Sub for Weight {
    type Output = Weight;
    fn sub(self, o: Weight) -> Weight {
        self + (-o)
    }
}

impl Neg for Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.map(|c| -c))
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.0;
        write!(f, "({a},{b},{c},{d})")
    }
}

impl std::str::FromStr for Weight {
    type Err = Error;

    /// Parses `"a,b,c,d"`, optionally wrapped in parentheses or brackets.
    fn from_str(s: &str) -> Result<Self, Error> {
        let t = s.trim().trim_matches(|c| matches!(c, '(' | ')' | '[' | ']'));
        let parts: Vec<&str> = t.split(',').map(str::trim).collect();
        if parts.len() != 4 {
            return Err(Error::Parse(format!("weight `{s}` must have 4 coordinates")));
        }
        let mut c = [0; 4];
        for (k, p) in parts.iter().enumerate() {
            c[k] = p.parse().map_err(|_| Error::Parse(format!("bad coordinate `{p}` in `{s}`")))?;
        }
        Ok(Weight(c))
    }
}

fn is_nonneg_root_combination(w: Weight) -> bool {
    w.root_coords_times_5().iter().all(|&c| c >= 0 && c % 5 == 0)
}

/// Compares two weights in the dominance order.
pub fn dominance_compare(lambda: Weight, mu: Weight) -> DominanceOrder {
    if lambda == mu {
        DominanceOrder::Equal
    } else if is_nonneg_root_combination(mu - lambda) {
        DominanceOrder::LessOrEqual
    } else if is_nonneg_root_combination(lambda - mu) {
        DominanceOrder::GreaterOrEqual
    } else {
        DominanceOrder::Incomparable
    }
}

/// `λ ≤ μ` in the dominance order.
pub fn dominated_by(lambda: Weight, mu: Weight) -> bool {
    matches!(dominance_compare(lambda, mu), DominanceOrder::Equal | DominanceOrder::LessOrEqual)
}

/// Dimension of the irreducible module of highest weight `λ`.
pub fn weyl_dimension(lambda: Weight) -> Result<u64, Error> {
    if !lambda.is_dominant() {
        return Err(Error::NotDominant(lambda));
    }
    // product over i<j of (λ_ij + j - i) / (j - i); exact since the total is an integer
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 1..5 {
        for j in i + 1..=5 {
            num *= (lambda.pair_value(i, j) + (j - i) as i64) as u128;
            den *= (j - i) as u128;
        }
    }
    Ok((num / den) as u64)
}

impl DominanceOrder {
    /// The result of the comparison with arguments swapped.
    pub fn flip(self) -> Self {
        match self {
            DominanceOrder::LessOrEqual => DominanceOrder::GreaterOrEqual,
            DominanceOrder::GreaterOrEqual => DominanceOrder::LessOrEqual,
            other => other,
        }
    }
}

pub fn dual_weight(lambda: Weight) -> Weight {
    lambda.dual()
}

/// All dominant weights with every coordinate at most `max_entry`, in
/// lexicographic order.
pub fn dominant_box(max_entry: i64) -> Vec<Weight> {
    let r = 0..=max_entry;
    let mut out = Vec::new();
    for a in r.clone() {
        for b in r.clone() {
            for c in r.clone() {
                for d in r.clone() {
                    out.push(Weight([a, b, c, d]));
                }
            }
        }
    }
    out
}

/// All dominant weights with coordinate sum at most `total`.
pub fn dominant_weights_with_sum(total: i64) -> Vec<Weight> {
    dominant_box(total).into_iter().filter(|w| w.0.iter().sum::<i64>() <= total).collect()
}
