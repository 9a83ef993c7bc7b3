//! The enveloping algebra `U_−` of the negative part `L_−`.
//!
//! `L_−` is spanned by the odd generators `d_ij` (degree one, `d_ji = −d_ij`)
//! and the even central generators `∂_t` (degree two). The only nontrivial
//! relation is
//!
//! ```text
//! d_A d_B + d_B d_A = ε_{A,B} ∂_{t_{A,B}}
//! ```
//!
//! A PBW monomial is a power product of the `∂_t` followed by a strictly
//! increasing product of distinct canonical pairs `d_ij` (`i < j`).

pub mod omega;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::field::{format_scalar, parse_scalar, Field, Scalar};
use crate::sl5::Weight;
use crate::Error;

pub use omega::{
    bd_act, canonical_tuples, contraction, crossing_number, d_arrow, label_of, omega, omega_basis_dimension,
    sif_subsets, OmegaBasis, OmegaLabel, SignedPermutation,
};

/// Canonical pairs `(i,j)`, `i < j`, in lexicographic order.
pub const PAIRS: [(u8, u8); 10] = [(1, 2), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5), (3, 4), (3, 5), (4, 5)];

/// Position of the canonical pair `(i,j)` in [`PAIRS`].
pub fn pair_slot(i: u8, j: u8) -> usize {
    debug_assert!(1 <= i && i < j && j <= 5);
    let (i, j) = (i as usize, j as usize);
    // pairs starting with 1 take slots 0..4, with 2 take 4..7, ...
    let start = [0, 0, 4, 7, 9][i];
    start + (j - i - 1)
}

/// `ε_{ijkl}` and `t_{ijkl}`.
///
/// When the four indices are distinct, `t` is the missing index of `[5]` and
/// `ε` is the sign of the permutation `(i,j,k,l,t)`. Otherwise `ε = 0` and
/// `t = 1`.
pub fn eps_t(i: u8, j: u8, k: u8, l: u8) -> (i32, u8) {
    let idx = [i, j, k, l];
    let mut seen = 0u8;
    for &x in &idx {
        assert!((1..=5).contains(&x), "index {x} out of range");
        if seen & (1 << x) != 0 {
            return (0, 1);
        }
        seen |= 1 << x;
    }
    let t = (1..=5).find(|x| seen & (1 << x) == 0).expect("one index is missing");
    let perm = [i, j, k, l, t];
    let mut inversions = 0;
    for a in 0..5 {
        for b in a + 1..5 {
            if perm[a] > perm[b] {
                inversions += 1;
            }
        }
    }
    (if inversions % 2 == 0 { 1 } else { -1 }, t)
}

/// A generator `d_ij`, not necessarily canonical.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PairIndex {
    pub i: u8,
    pub j: u8,
}

impl PairIndex {
    pub fn new(i: u8, j: u8) -> Self {
        assert!((1..=5).contains(&i) && (1..=5).contains(&j), "pair ({i},{j}) out of range");
        PairIndex { i, j }
    }

    /// The pair stored in slot `k` of [`PAIRS`].
    pub fn from_slot(k: usize) -> Self {
        let (i, j) = PAIRS[k];
        PairIndex { i, j }
    }

    /// Sign and slot of the canonical form, or `None` for `d_ii = 0`.
    pub fn canonical(self) -> Option<(i32, usize)> {
        match self.i.cmp(&self.j) {
            Ordering::Less => Some((1, pair_slot(self.i, self.j))),
            Ordering::Greater => Some((-1, pair_slot(self.j, self.i))),
            Ordering::Equal => None,
        }
    }

    /// `(i,j) ↦ (j,i)`.
    pub fn bar(self) -> Self {
        PairIndex { i: self.j, j: self.i }
    }

    pub fn contains(self, x: u8) -> bool {
        self.i == x || self.j == x
    }

    /// `gl(5)` weight `e_i + e_j`.
    pub fn gl_weight(self) -> [i64; 5] {
        let mut w = [0; 5];
        w[self.i as usize - 1] += 1;
        w[self.j as usize - 1] += 1;
        w
    }
}

impl fmt::Display for PairIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.i, self.j)
    }
}

impl FromStr for PairIndex {
    type Err = Error;

    /// Two digits, e.g. `"21"`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let b = s.trim().as_bytes();
        let digit = |c: u8| (b'1'..=b'5').contains(&c).then(|| c - b'0');
        match b {
            [x, y] => match (digit(*x), digit(*y)) {
                (Some(i), Some(j)) => Ok(PairIndex { i, j }),
                _ => Err(Error::Parse(format!("pair `{s}` must use digits 1..5"))),
            },
            _ => Err(Error::Parse(format!("pair `{s}` must have two digits"))),
        }
    }
}

/// Parses a comma separated tuple of pairs such as `"21,13,45,25"`.
pub fn parse_tuple(s: &str) -> Result<Vec<PairIndex>, Error> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(str::parse).collect()
}

/// A generator of `L_−` inside a word.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Gen {
    D(PairIndex),
    Del(u8),
}

/// PBW monomial `∂^α d_{B_1} ⋯ d_{B_k}` with `B_1 < ⋯ < B_k` canonical.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct UMonomial {
    del: [u8; 5],
    mask: u16,
}

impl UMonomial {
    pub const ONE: UMonomial = UMonomial { del: [0; 5], mask: 0 };

    /// Builds a monomial from its `∂` multidegree and a set of pair slots.
    pub fn new(del: [u8; 5], slots: &[usize]) -> Self {
        let mut mask = 0u16;
        for &s in slots {
            assert!(s < 10 && mask & (1 << s) == 0, "repeated or invalid pair slot {s}");
            mask |= 1 << s;
        }
        UMonomial { del, mask }
    }

    pub fn from_mask(del: [u8; 5], mask: u16) -> Self {
        UMonomial { del, mask }
    }

    /// Monomial `∂_T d_I` for a multiset `T` and a set of slots `I`.
    pub fn from_parts(t: &[u8], slots: &[usize]) -> Self {
        let mut del = [0u8; 5];
        for &x in t {
            del[x as usize - 1] += 1;
        }
        Self::new(del, slots)
    }

    pub fn del(&self) -> [u8; 5] {
        self.del
    }

    pub fn mask(&self) -> u16 {
        self.mask
    }

    /// Slots of the odd factors in increasing order.
    pub fn slots(&self) -> Vec<usize> {
        (0..10).filter(|k| self.mask & (1 << k) != 0).collect()
    }

    pub fn pairs(&self) -> Vec<PairIndex> {
        self.slots().into_iter().map(PairIndex::from_slot).collect()
    }

    /// The `∂` indices as a sorted multiset.
    pub fn del_list(&self) -> Vec<u8> {
        let mut t = Vec::new();
        for (k, &e) in self.del.iter().enumerate() {
            t.extend(std::iter::repeat_n(k as u8 + 1, e as usize));
        }
        t
    }

    pub fn del_count(&self) -> usize {
        self.del.iter().map(|&e| e as usize).sum()
    }

    pub fn odd_count(&self) -> usize {
        self.mask.count_ones() as usize
    }

    /// Degree in the grading where `d_ij` has degree 1 and `∂_t` degree 2.
    pub fn degree(&self) -> usize {
        2 * self.del_count() + self.odd_count()
    }

    pub fn gl_weight(&self) -> [i64; 5] {
        let mut w = [0i64; 5];
        for k in 0..5 {
            w[k] -= self.del[k] as i64;
        }
        for p in self.pairs() {
            w[p.i as usize - 1] += 1;
            w[p.j as usize - 1] += 1;
        }
        w
    }

    pub fn weight(&self) -> Weight {
        Weight::from_gl(self.gl_weight())
    }

    fn with_del(&self, t: u8, delta: i32) -> Option<UMonomial> {
        let k = t as usize - 1;
        let e = self.del[k] as i32 + delta;
        (e >= 0).then(|| {
            let mut del = self.del;
            del[k] = e as u8;
            UMonomial { del, mask: self.mask }
        })
    }

    // (∂ count, ∂ indices, pair slots), each list packed into an integer whose
    // order is the lexicographic order of the padded list
    fn sort_key(&self) -> (usize, u64, u64) {
        let mut del_code = 0u64;
        let mut len = 0;
        for (k, &e) in self.del.iter().enumerate() {
            for _ in 0..e {
                del_code = del_code * 6 + k as u64 + 1;
                len += 1;
            }
        }
        for _ in len..16 {
            del_code *= 6;
        }
        let mut slot_code = 0u64;
        let mut len = 0;
        for k in 0..10 {
            if self.mask & (1 << k) != 0 {
                slot_code = slot_code * 11 + k as u64 + 1;
                len += 1;
            }
        }
        for _ in len..10 {
            slot_code *= 11;
        }
        (self.del_count(), del_code, slot_code)
    }

    /// Plain text rendering, e.g. `∂3 d13 d25`.
    pub fn to_text(&self) -> String {
        let mut parts: Vec<String> = self.del_list().iter().map(|t| format!("∂{t}")).collect();
        parts.extend(self.pairs().iter().map(|p| format!("d{p}")));
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join(" ")
        }
    }

    /// LaTeX rendering, e.g. `\partial_{3} d_{13} d_{25}`.
    pub fn to_latex(&self) -> String {
        let mut parts: Vec<String> = Vec::new();
        for (k, &e) in self.del.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(format!("\\partial_{{{}}}", k + 1)),
                _ => parts.push(format!("\\partial_{{{}}}^{{{}}}", k + 1, e)),
            }
        }
        parts.extend(self.pairs().iter().map(|p| format!("d_{{{p}}}")));
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join(" ")
        }
    }

    /// All PBW monomials of degree `d`, sorted.
    pub fn all_of_degree(d: usize) -> Vec<UMonomial> {
        let mut out = Vec::new();
        for k in 0..=d / 2 {
            let odd = d - 2 * k;
            if odd > 10 {
                continue;
            }
            for t in multisets(k) {
                for mask in 0u16..1024 {
                    if mask.count_ones() as usize == odd {
                        let mut m = UMonomial::from_parts(&t, &[]);
                        m.mask = mask;
                        out.push(m);
                    }
                }
            }
        }
        out.sort();
        out
    }
}

impl Ord for UMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl PartialOrd for UMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for UMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// JSON shape of a monomial: `{"del":[..5], "pairs":["12","45"]}`.
#[derive(Serialize, Deserialize)]
struct MonomialJson {
    del: [u8; 5],
    pairs: Vec<String>,
}

impl Serialize for UMonomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        MonomialJson { del: self.del, pairs: self.pairs().iter().map(|p| p.to_string()).collect() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for UMonomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = MonomialJson::deserialize(d)?;
        let mut slots = Vec::new();
        for p in &j.pairs {
            let pi: PairIndex = p.parse().map_err(serde::de::Error::custom)?;
            match pi.canonical() {
                Some((1, s)) if !slots.contains(&s) => slots.push(s),
                _ => return Err(serde::de::Error::custom(format!("pair {p} is not canonical"))),
            }
        }
        Ok(UMonomial::new(j.del, &slots))
    }
}

/// Sorted multisets of size `k` over `[5]`.
pub fn multisets(k: usize) -> Vec<Vec<u8>> {
    fn rec(k: usize, lo: u8, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if k == 0 {
            out.push(cur.clone());
            return;
        }
        for x in lo..=5 {
            cur.push(x);
            rec(k - 1, x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(k, 1, &mut Vec::new(), &mut out);
    out
}

/// Sparse linear combination of PBW monomials.
#[derive(Clone, Debug, PartialEq)]
pub struct UElement<F = Scalar> {
    terms: BTreeMap<UMonomial, F>,
}

impl<F: Field> Default for UElement<F> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<F: Field> UElement<F> {
    pub fn zero() -> Self {
        UElement { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::monomial(UMonomial::ONE)
    }

    pub fn monomial(m: UMonomial) -> Self {
        Self::term(m, F::one())
    }

    pub fn term(m: UMonomial, c: F) -> Self {
        let mut e = Self::zero();
        e.add_term(m, c);
        e
    }

    /// The generator `d_ij` (possibly non canonical).
    pub fn d(p: PairIndex) -> Self {
        match p.canonical() {
            Some((s, slot)) => Self::term(UMonomial::new([0; 5], &[slot]), F::from_int(s as i64)),
            None => Self::zero(),
        }
    }

    pub fn del(t: u8) -> Self {
        Self::monomial(UMonomial::from_parts(&[t], &[]))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&UMonomial, &F)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &UMonomial) -> F {
        self.terms.get(m).cloned().unwrap_or_else(F::zero)
    }

    pub fn add_term(&mut self, m: UMonomial, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v = v.clone() + c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add_scaled(&mut self, c: &F, other: &Self) {
        for (m, x) in &other.terms {
            self.add_term(*m, c.clone() * x.clone());
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        let mut out = Self::zero();
        out.add_scaled(c, self);
        out
    }

    /// Degree of the element if it is homogeneous and nonzero.
    pub fn degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(UMonomial::degree);
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    /// `self · other`.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_scaled(c, &mul_monomial_element(m, other));
        }
        out
    }

    /// Left multiplication by `d_p`.
    pub fn left_mul_d(&self, p: PairIndex) -> Self {
        let Some((sign, slot)) = p.canonical() else {
            return Self::zero();
        };
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            left_mul_slot(slot, m, &(F::from_int(sign as i64) * c.clone()), &mut out);
        }
        out
    }

    /// Multiplication by `∂^α` (central).
    pub fn mul_del(&self, del: [u8; 5]) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut d = m.del;
            for k in 0..5 {
                d[k] += del[k];
            }
            out.add_term(UMonomial { del: d, mask: m.mask }, c.clone());
        }
        out
    }
}

impl<F: Field> std::ops::Add for UElement<F> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self.add_scaled(&F::one(), &rhs);
        self
    }
}

impl<F: Field> std::ops::Sub for UElement<F> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        self.add_scaled(&-F::one(), &rhs);
        self
    }
}

/// Adds `c · d_{slot} · m` to `out`.
fn left_mul_slot<F: Field>(slot: usize, m: &UMonomial, c: &F, out: &mut UElement<F>) {
    let a = PAIRS[slot];
    let mut sign = 1i64;
    for b in 0..slot {
        if m.mask & (1 << b) == 0 {
            continue;
        }
        // swapping d_A past d_B leaves the bracket term with d_B removed
        let bp = PAIRS[b];
        let (e, t) = eps_t(a.0, a.1, bp.0, bp.1);
        if e != 0 {
            let mut del = m.del;
            del[t as usize - 1] += 1;
            out.add_term(UMonomial { del, mask: m.mask & !(1 << b) }, F::from_int(sign * e as i64) * c.clone());
        }
        sign = -sign;
    }
    if m.mask & (1 << slot) == 0 {
        out.add_term(UMonomial { del: m.del, mask: m.mask | (1 << slot) }, F::from_int(sign) * c.clone());
    }
}

/// Normal form of `m · e`.
pub fn mul_monomial_element<F: Field>(m: &UMonomial, e: &UElement<F>) -> UElement<F> {
    let mut cur = e.mul_del(m.del);
    for slot in m.slots().into_iter().rev() {
        let mut next = UElement::zero();
        for (n, c) in &cur.terms {
            left_mul_slot(slot, n, c, &mut next);
        }
        cur = next;
    }
    cur
}

/// PBW normal form of a word in the generators.
pub fn normal_form<F: Field>(word: &[Gen]) -> UElement<F> {
    let mut cur = UElement::one();
    for g in word.iter().rev() {
        cur = match *g {
            Gen::D(p) => cur.left_mul_d(p),
            Gen::Del(t) => {
                let mut del = [0; 5];
                del[t as usize - 1] = 1;
                cur.mul_del(del)
            }
        };
    }
    cur
}

/// Normal form of the product `d_{I_1} ⋯ d_{I_k}`.
pub fn d_product<F: Field>(pairs: &[PairIndex]) -> UElement<F> {
    let word: Vec<Gen> = pairs.iter().map(|&p| Gen::D(p)).collect();
    normal_form(&word)
}

/// `[x_s∂_r, d_p]` as a pair with multiplicity (sum of at most two terms).
fn bracket_l0_pair(s: u8, r: u8, p: PairIndex) -> Vec<PairIndex> {
    let mut out = Vec::new();
    if p.i == r {
        out.push(PairIndex::new(s, p.j));
    }
    if p.j == r {
        out.push(PairIndex::new(p.i, s));
    }
    out
}

/// Adjoint action of `x_s∂_r` on a monomial. `s = r` is allowed and gives
/// the diagonal `gl(5)` element.
pub fn l0_adjoint_monomial<F: Field>(s: u8, r: u8, m: &UMonomial) -> UElement<F> {
    let mut out = UElement::zero();
    // [x_s∂_r, ∂_t] = −δ_ts ∂_r
    let e = m.del[s as usize - 1];
    if e > 0 {
        let mono = m.with_del(s, -1).and_then(|n| n.with_del(r, 1)).expect("exponent is positive");
        out.add_term(mono, F::from_int(-(e as i64)));
    }
    let slots = m.slots();
    for (pos, &slot) in slots.iter().enumerate() {
        for q in bracket_l0_pair(s, r, PairIndex::from_slot(slot)) {
            // prefix · d_q · suffix, with the central ∂'s in front
            let suffix = UMonomial::new(m.del, &slots[pos + 1..]);
            let mut cur = UElement::<F>::monomial(suffix).left_mul_d(q);
            for &b in slots[..pos].iter().rev() {
                cur = cur.left_mul_d(PairIndex::from_slot(b));
            }
            out.add_scaled(&F::one(), &cur);
        }
    }
    out
}

/// Adjoint action of `x_s∂_r` on an element of `U_−`.
pub fn l0_adjoint<F: Field>(s: u8, r: u8, u: &UElement<F>) -> UElement<F> {
    let mut out = UElement::zero();
    for (m, c) in u.terms() {
        out.add_scaled(c, &l0_adjoint_monomial(s, r, m));
    }
    out
}

impl UElement<Scalar> {
    /// Text rendering with exact coefficients, e.g. `d13 d25 - 1/2 ∂3 d13 d25`.
    pub fn to_text(&self) -> String {
        render(self, |m| m.to_text(), false)
    }

    pub fn to_latex(&self) -> String {
        render(self, |m| m.to_latex(), true)
    }

    /// `[{"monomial": {...}, "coeff": "p/q"}, ...]`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.terms.iter().map(|(m, c)| serde_json::json!({"monomial": m, "coeff": format_scalar(c)})).collect(),
        )
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, Error> {
        let arr = v.as_array().ok_or_else(|| Error::Parse("expected an array of terms".into()))?;
        let mut out = Self::zero();
        for t in arr {
            let m: UMonomial = serde_json::from_value(t["monomial"].clone())
                .map_err(|e| Error::Parse(format!("bad monomial: {e}")))?;
            let c = parse_scalar(t["coeff"].as_str().ok_or_else(|| Error::Parse("missing coeff".into()))?)?;
            out.add_term(m, c);
        }
        Ok(out)
    }
}

fn render(e: &UElement<Scalar>, mono: impl Fn(&UMonomial) -> String, latex: bool) -> String {
    use num_traits::{One, Signed};
    if e.is_zero() {
        return "0".into();
    }
    let mut s = String::new();
    for (k, (m, c)) in e.terms().enumerate() {
        let neg = c.is_negative();
        if k == 0 {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        let a = c.abs();
        let body = mono(m);
        if a.is_one() {
            s.push_str(&body);
        } else {
            let coeff = if latex && !a.is_integer() {
                format!("\\frac{{{}}}{{{}}}", a.numer(), a.denom())
            } else {
                format_scalar(&a)
            };
            if body == "1" {
                s.push_str(&coeff);
            } else {
                s.push_str(&format!("{coeff} {body}"));
            }
        }
    }
    s
}

impl fmt::Display for UElement<Scalar> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}
