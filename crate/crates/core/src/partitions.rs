//! Integer partitions, their statistics, and the special classes used by the
//! identities: cute partitions, partitions with a fixed point, symplectic and
//! orthogonal signed partitions, and the pair sets behind the cute-partition
//! generating function.
//!
//! Enumeration is reverse-lexicographic: `(3), (2,1), (1,1,1)`.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Parts may be given in any order; zero parts are rejected.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidArgument("partition parts must be positive".into()));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition { parts })
    }

    /// From parts already known to be positive and non-increasing.
    fn from_sorted(parts: Vec<usize>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]) && !parts.contains(&0));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// `pt(λ)`, the number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `|λ|`.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// `λ_i` with 1-based indexing; zero past the last part.
    pub fn part(&self, i: usize) -> usize {
        if i == 0 {
            return 0;
        }
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    /// Largest part, with `max(∅) = 0`.
    pub fn largest(&self) -> usize {
        self.part(1)
    }

    pub fn dual(&self) -> Partition {
        let mut d = Vec::with_capacity(self.largest());
        for i in 1..=self.largest() {
            d.push(self.parts.iter().take_while(|&&p| p >= i).count());
        }
        Partition { parts: d }
    }

    /// `m_i(λ)`.
    pub fn multiplicity(&self, i: usize) -> usize {
        self.parts.iter().filter(|&&p| p == i).count()
    }

    /// Map from part size to multiplicity, for sizes present.
    pub fn multiplicities(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for &p in &self.parts {
            *m.entry(p).or_insert(0) += 1;
        }
        m
    }

    /// `o(λ)`, the number of odd parts (with multiplicity).
    pub fn odd_parts(&self) -> usize {
        self.parts.iter().filter(|&&p| p % 2 == 1).count()
    }

    /// `Σ (λ'_i)^2`.
    pub fn sum_dual_squares(&self) -> usize {
        self.dual().parts.iter().map(|d| d * d).sum()
    }

    pub fn stats(&self) -> PartitionStats {
        let dual = self.dual();
        let sum_dual_squares = dual.parts.iter().map(|d| d * d).sum();
        PartitionStats {
            dual,
            multiplicities: self.multiplicities(),
            odd_parts: self.odd_parts(),
            sum_dual_squares,
            parts: self.len(),
            size: self.size(),
        }
    }

    /// Side of the Durfee square: the largest `s` with `λ_s >= s`.
    pub fn durfee_side(&self) -> usize {
        self.parts.iter().enumerate().take_while(|(i, &p)| p > *i).count()
    }

    pub fn durfee_decompose(&self) -> Result<DurfeeDecomposition> {
        if self.is_empty() {
            return Err(Error::InvalidArgument("Durfee decomposition of the empty partition".into()));
        }
        let s = self.durfee_side();
        let right = self.parts[..s].iter().map(|p| p - s).filter(|&p| p > 0).collect();
        let below = self.parts[s..].to_vec();
        Ok(DurfeeDecomposition {
            durfee: s,
            pi1: Partition::from_sorted(right),
            pi2: Partition::from_sorted(below),
        })
    }

    /// `λ_1 = 1`, or `λ_{k-1} > λ_k = k` for some `k`.
    pub fn is_cute(&self) -> bool {
        if self.largest() == 1 {
            return true;
        }
        (2..=self.len()).any(|k| self.part(k) == k && self.part(k - 1) > k)
    }

    /// Durfee square `k` with exactly `k - 1` parts to its right.
    pub fn is_cute_by_durfee(&self) -> bool {
        match self.durfee_decompose() {
            Ok(d) => d.pi1.len() + 1 == d.durfee,
            Err(_) => false,
        }
    }

    /// Some `k` with `λ_k = k`.
    pub fn has_fixed_point(&self) -> bool {
        (1..=self.len()).any(|k| self.part(k) == k)
    }

    /// Number of distinct even part sizes, `ē(λ)`.
    pub fn distinct_even_sizes(&self) -> usize {
        self.multiplicities().keys().filter(|&&i| i % 2 == 0).count()
    }

    /// Number of distinct odd part sizes, `ō(λ)`.
    pub fn distinct_odd_sizes(&self) -> usize {
        self.multiplicities().keys().filter(|&&i| i % 2 == 1).count()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.parts.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", body.join(","))
    }
}

impl std::str::FromStr for Partition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('[').trim_end_matches(']').trim();
        if t.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = t
            .split(',')
            .map(|x| x.trim().parse::<usize>().map_err(|e| Error::InvalidArgument(format!("bad part {x:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartitionStats {
    pub dual: Partition,
    pub multiplicities: BTreeMap<usize, usize>,
    pub odd_parts: usize,
    pub sum_dual_squares: usize,
    pub parts: usize,
    pub size: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DurfeeDecomposition {
    pub durfee: usize,
    /// Right of the square.
    pub pi1: Partition,
    /// Below the square.
    pub pi2: Partition,
}

/// Summation constraints; combine with [`PartitionConstraint::and`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PartitionConstraint {
    None,
    OddPartsEvenMultiplicity,
    EvenPartsEvenMultiplicity,
    AllEvenMultiplicity,
    ExactlyParts(usize),
    /// Largest part at most the given value.
    SizeCap(usize),
    All(Vec<PartitionConstraint>),
}

impl PartitionConstraint {
    pub fn and(self, other: PartitionConstraint) -> PartitionConstraint {
        match (self, other) {
            (PartitionConstraint::None, c) | (c, PartitionConstraint::None) => c,
            (PartitionConstraint::All(mut a), PartitionConstraint::All(b)) => {
                a.extend(b);
                PartitionConstraint::All(a)
            }
            (PartitionConstraint::All(mut a), c) | (c, PartitionConstraint::All(mut a)) => {
                a.push(c);
                PartitionConstraint::All(a)
            }
            (a, b) => PartitionConstraint::All(vec![a, b]),
        }
    }

    pub fn admits(&self, parts: &[usize]) -> bool {
        let runs = || RunLengths { parts, pos: 0 };
        match self {
            PartitionConstraint::None => true,
            PartitionConstraint::OddPartsEvenMultiplicity => runs().all(|(i, m)| i % 2 == 0 || m % 2 == 0),
            PartitionConstraint::EvenPartsEvenMultiplicity => runs().all(|(i, m)| i % 2 == 1 || m % 2 == 0),
            PartitionConstraint::AllEvenMultiplicity => runs().all(|(_, m)| m % 2 == 0),
            PartitionConstraint::ExactlyParts(k) => parts.len() == *k,
            PartitionConstraint::SizeCap(c) => parts.first().is_none_or(|p| p <= c),
            PartitionConstraint::All(cs) => cs.iter().all(|c| c.admits(parts)),
        }
    }

    fn size_cap(&self) -> Option<usize> {
        match self {
            PartitionConstraint::SizeCap(c) => Some(*c),
            PartitionConstraint::All(cs) => cs.iter().filter_map(|c| c.size_cap()).min(),
            _ => None,
        }
    }

    fn exact_parts(&self) -> Option<usize> {
        match self {
            PartitionConstraint::ExactlyParts(k) => Some(*k),
            PartitionConstraint::All(cs) => cs.iter().find_map(|c| c.exact_parts()),
            _ => None,
        }
    }
}

struct RunLengths<'a> {
    parts: &'a [usize],
    pos: usize,
}

impl Iterator for RunLengths<'_> {
    type Item = (usize, usize);
    fn next(&mut self) -> Option<(usize, usize)> {
        let v = *self.parts.get(self.pos)?;
        let start = self.pos;
        while self.parts.get(self.pos) == Some(&v) {
            self.pos += 1;
        }
        Some((v, self.pos - start))
    }
}

/// Partitions of `n` with all parts at most `cap`, reverse-lexicographic.
struct Raw {
    next: Option<Vec<usize>>,
}

impl Raw {
    fn new(n: usize, cap: usize) -> Self {
        if n == 0 {
            return Raw { next: Some(Vec::new()) };
        }
        if cap == 0 {
            return Raw { next: None };
        }
        let mut first = vec![cap; n / cap];
        if n % cap > 0 {
            first.push(n % cap);
        }
        Raw { next: Some(first) }
    }
}

impl Iterator for Raw {
    type Item = Vec<usize>;
    fn next(&mut self) -> Option<Vec<usize>> {
        let cur = self.next.take()?;
        let mut a = cur.clone();
        let mut ones = 0;
        while a.last() == Some(&1) {
            a.pop();
            ones += 1;
        }
        if let Some(k) = a.pop() {
            let k = k - 1;
            let mut rem = ones + 1 + k;
            while rem >= k {
                a.push(k);
                rem -= k;
            }
            if rem > 0 {
                a.push(rem);
            }
            self.next = Some(a);
        }
        Some(cur)
    }
}

/// Streaming enumeration of the partitions of `n` admitted by `constraint`.
pub fn enumerate(n: usize, constraint: &PartitionConstraint) -> impl Iterator<Item = Partition> + '_ {
    let cap = constraint.size_cap().unwrap_or(n).min(n);
    let parts = constraint.exact_parts();
    Raw::new(n, cap)
        .filter(move |p| parts.is_none_or(|k| p.len() == k) && constraint.admits(p))
        .map(Partition::from_sorted)
}

/// The sub-stream of [`enumerate`] whose largest part is `first`.
///
/// Concatenating these for `first = n, n-1, ..., 1` reproduces [`enumerate`]
/// for `n >= 1`, which gives deterministic chunks for parallel sums.
pub fn enumerate_with_first_part(
    n: usize,
    first: usize,
    constraint: &PartitionConstraint,
) -> impl Iterator<Item = Partition> + '_ {
    let ok = first >= 1 && first <= n && constraint.size_cap().is_none_or(|c| first <= c);
    let tail = if ok { Raw::new(n - first, first) } else { Raw { next: None } };
    tail.map(move |t| {
        let mut p = Vec::with_capacity(t.len() + 1);
        p.push(first);
        p.extend(t);
        p
    })
    .filter(move |p| constraint.admits(p))
    .map(Partition::from_sorted)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    Symplectic,
    Orthogonal,
}

impl Flavor {
    /// Part sizes that must occur with even multiplicity.
    pub fn constraint(self) -> PartitionConstraint {
        match self {
            Flavor::Symplectic => PartitionConstraint::OddPartsEvenMultiplicity,
            Flavor::Orthogonal => PartitionConstraint::EvenPartsEvenMultiplicity,
        }
    }

    /// Whether part size `i` carries a sign.
    pub fn signed_size(self, i: usize) -> bool {
        match self {
            Flavor::Symplectic => i % 2 == 0,
            Flavor::Orthogonal => i % 2 == 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignedPartition {
    base: Partition,
    flavor: Flavor,
    signs: BTreeMap<usize, i8>,
}

impl SignedPartition {
    pub fn new(base: Partition, flavor: Flavor, signs: BTreeMap<usize, i8>) -> Result<Self> {
        if !flavor.constraint().admits(base.parts()) {
            return Err(Error::InvalidArgument(format!("{base} violates the {flavor:?} multiplicity rule")));
        }
        let needed: Vec<usize> = base.multiplicities().keys().copied().filter(|&i| flavor.signed_size(i)).collect();
        let given: Vec<usize> = signs.keys().copied().collect();
        if needed != given || signs.values().any(|s| *s != 1 && *s != -1) {
            return Err(Error::InvalidArgument(format!("sign data {signs:?} does not match {base}")));
        }
        Ok(SignedPartition { base, flavor, signs })
    }

    pub fn base(&self) -> &Partition {
        &self.base
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    /// `sign(i)` for a signed size present in the partition.
    pub fn sign(&self, i: usize) -> Option<i8> {
        self.signs.get(&i).copied()
    }

    pub fn signs(&self) -> &BTreeMap<usize, i8> {
        &self.signs
    }
}

impl fmt::Display for SignedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.base)?;
        if !self.signs.is_empty() {
            let body: Vec<String> = self
                .signs
                .iter()
                .rev()
                .map(|(i, s)| format!("{i}:{}", if *s > 0 { '+' } else { '-' }))
                .collect();
            write!(f, " {{{}}}", body.join(", "))?;
        }
        Ok(())
    }
}

/// All sign assignments on `λ`: `2^{ē(λ)}` symplectic or `2^{ō(λ)}` orthogonal.
pub fn signed_expansions(lambda: &Partition, flavor: Flavor) -> Result<impl Iterator<Item = SignedPartition>> {
    if !flavor.constraint().admits(lambda.parts()) {
        return Err(Error::InvalidArgument(format!("{lambda} violates the {flavor:?} multiplicity rule")));
    }
    let sizes: Vec<usize> = lambda.multiplicities().keys().copied().filter(|&i| flavor.signed_size(i)).collect();
    let base = lambda.clone();
    let total = 1u64 << sizes.len();
    Ok((0..total).map(move |mask| {
        let signs = sizes
            .iter()
            .enumerate()
            .map(|(b, &i)| (i, if mask >> b & 1 == 1 { -1 } else { 1 }))
            .collect();
        SignedPartition { base: base.clone(), flavor, signs }
    }))
}

/// The pair sets compared in the cute-partition argument.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairSet {
    /// `pt(λ)=b`, `|λ|+|μ|=a`, `λ_1 = μ_1 + 1`.
    A,
    /// `pt(λ)=b`, `|λ|+|μ|=a`, `λ` cute, `μ_1 = μ_2` (μ may be empty).
    B,
    /// `pt(λ)=b`, `|λ|+|μ|=a`, `max λ <= max μ`.
    E,
    /// `pt(λ)=b`, `|λ|+|μ|=a+1`, `max λ <= max μ`, `μ_2 < μ_1`.
    F,
    /// `pt(λ)=b`, `|λ|+|μ|=a`, `max λ <= max μ + 1`.
    G,
}

/// Enumerate a pair set; `max(∅)` is taken to be 0.
pub fn bijection_sets(a: usize, b: usize, which: PairSet) -> Vec<(Partition, Partition)> {
    let total = if which == PairSet::F { a + 1 } else { a };
    let keep = |l: &Partition, m: &Partition| match which {
        PairSet::A => l.part(1) == m.part(1) + 1,
        PairSet::B => l.is_cute() && m.part(1) == m.part(2),
        PairSet::E => l.largest() <= m.largest(),
        PairSet::F => l.largest() <= m.largest() && m.part(2) < m.part(1),
        PairSet::G => l.largest() <= m.largest() + 1,
    };
    let mut out = Vec::new();
    let with_b = PartitionConstraint::ExactlyParts(b);
    for i in b..=total {
        let lambdas: Vec<Partition> = enumerate(i, &with_b).collect();
        if lambdas.is_empty() {
            continue;
        }
        let mus: Vec<Partition> = enumerate(total - i, &PartitionConstraint::None).collect();
        for l in &lambdas {
            for m in &mus {
                if keep(l, m) {
                    out.push((l.clone(), m.clone()));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn list(n: usize, c: PartitionConstraint) -> Vec<String> {
        enumerate(n, &c).map(|x| x.to_string()).collect()
    }

    /// p(n) by Euler's pentagonal recurrence, independent of the enumerator.
    fn partition_numbers(n: usize) -> Vec<u64> {
        let mut pn = vec![0i64; n + 1];
        pn[0] = 1;
        for i in 1..=n {
            let mut k = 1i64;
            loop {
                let g1 = (k * (3 * k - 1) / 2) as usize;
                if g1 > i {
                    break;
                }
                let sign = if k % 2 == 1 { 1 } else { -1 };
                pn[i] += sign * pn[i - g1];
                let g2 = (k * (3 * k + 1) / 2) as usize;
                if g2 <= i {
                    pn[i] += sign * pn[i - g2];
                }
                k += 1;
            }
        }
        pn.into_iter().map(|x| x as u64).collect()
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(list(2, PartitionConstraint::OddPartsEvenMultiplicity), ["[2]", "[1,1]"]);
        assert_eq!(list(2, PartitionConstraint::EvenPartsEvenMultiplicity), ["[1,1]"]);
        assert_eq!(list(3, PartitionConstraint::None), ["[3]", "[2,1]", "[1,1,1]"]);
        assert_eq!(list(0, PartitionConstraint::None), ["[]"]);
        assert_eq!(list(5, PartitionConstraint::SizeCap(2).and(PartitionConstraint::ExactlyParts(3))), ["[2,2,1]"]);
    }

    #[test]
    fn counts_match_pentagonal_recurrence() {
        let pn = partition_numbers(60);
        for (n, &expect) in pn.iter().enumerate() {
            assert_eq!(enumerate(n, &PartitionConstraint::None).count() as u64, expect, "n = {n}");
        }
    }

    #[test]
    fn chunks_reassemble_the_stream() {
        for n in 1..=15 {
            let c = PartitionConstraint::OddPartsEvenMultiplicity;
            let whole: Vec<Partition> = enumerate(n, &c).collect();
            let chunked: Vec<Partition> = (1..=n).rev().flat_map(|f| enumerate_with_first_part(n, f, &c)).collect();
            assert_eq!(whole, chunked);
        }
    }

    #[test]
    fn stats_examples() {
        let s = p(&[6, 5, 4, 2, 2]).stats();
        assert_eq!(s.dual, p(&[5, 5, 3, 3, 2, 1]));
        assert_eq!((s.odd_parts, s.parts), (1, 5));
        let s = p(&[1, 1]).stats();
        assert_eq!(s.dual, p(&[2]));
        assert_eq!((s.sum_dual_squares, s.odd_parts), (4, 2));
        let fig = p(&[8, 7, 7, 4, 4, 3, 3, 1, 1]);
        assert_eq!((fig.len(), fig.size()), (9, 38));
    }

    #[test]
    fn durfee_examples() {
        let d = p(&[8, 7, 7, 4, 4, 3, 3, 1, 1]).durfee_decompose().unwrap();
        assert_eq!(d.durfee, 4);
        assert_eq!(d.pi1, p(&[4, 3, 3]));
        assert_eq!(d.pi2, p(&[4, 3, 3, 1, 1]));
        assert_eq!(p(&[6, 5, 4, 2, 2]).durfee_side(), 3);
        let d = p(&[1]).durfee_decompose().unwrap();
        assert_eq!((d.durfee, d.pi1.is_empty(), d.pi2.is_empty()), (1, true, true));
        assert!(Partition::empty().durfee_decompose().is_err());
    }

    #[test]
    fn cute_and_fixed_point_examples() {
        for v in [&[6, 5, 3, 3, 2][..], &[4, 2, 1, 1], &[1, 1, 1], &[8, 7, 7, 4, 4, 3, 3, 1, 1]] {
            assert!(p(v).is_cute(), "{v:?}");
        }
        assert!(!p(&[2, 1]).is_cute());
        assert!(p(&[1]).has_fixed_point());
        assert!(p(&[2, 2]).has_fixed_point());
        assert!(!p(&[3, 1]).has_fixed_point());
    }

    #[test]
    fn signed_expansion_counts() {
        assert_eq!(signed_expansions(&p(&[2]), Flavor::Symplectic).unwrap().count(), 2);
        assert_eq!(signed_expansions(&p(&[1, 1]), Flavor::Symplectic).unwrap().count(), 1);
        assert_eq!(signed_expansions(&p(&[3, 1, 1]), Flavor::Orthogonal).unwrap().count(), 4);
        assert!(signed_expansions(&p(&[2, 1]), Flavor::Symplectic).is_err());
        let shown: Vec<String> =
            signed_expansions(&p(&[4, 4, 2]), Flavor::Symplectic).unwrap().map(|s| s.to_string()).collect();
        assert!(shown.contains(&"[4,4,2] {4:+, 2:-}".to_string()));
    }

    #[test]
    fn pair_sets_for_nine_four() {
        let a = bijection_sets(9, 4, PairSet::A);
        let b = bijection_sets(9, 4, PairSet::B);
        let expect_a = [
            ("[2,1,1,1]", "[1,1,1,1]"),
            ("[3,1,1,1]", "[2,1]"),
            ("[3,2,1,1]", "[2]"),
            ("[2,2,1,1]", "[1,1,1]"),
            ("[2,2,2,1]", "[1,1]"),
            ("[2,2,2,2]", "[1]"),
        ];
        let expect_b = [
            ("[1,1,1,1]", "[1,1,1,1,1]"),
            ("[1,1,1,1]", "[2,2,1]"),
            ("[3,2,1,1]", "[1,1]"),
            ("[3,2,2,2]", "[]"),
            ("[4,2,2,1]", "[]"),
            ("[5,2,1,1]", "[]"),
        ];
        let as_set = |v: &[(Partition, Partition)]| {
            let mut s: Vec<(String, String)> = v.iter().map(|(l, m)| (l.to_string(), m.to_string())).collect();
            s.sort();
            s
        };
        let sorted = |v: &[(&str, &str)]| {
            let mut s: Vec<(String, String)> = v.iter().map(|(l, m)| (l.to_string(), m.to_string())).collect();
            s.sort();
            s
        };
        assert_eq!(as_set(&a), sorted(&expect_a));
        assert_eq!(as_set(&b), sorted(&expect_b));
        assert!(bijection_sets(0, 0, PairSet::A).is_empty());
    }

    #[test]
    fn pair_set_cardinalities() {
        for a in 0..=14 {
            for b in 0..=a {
                let na = bijection_sets(a, b, PairSet::A).len();
                assert_eq!(na, bijection_sets(a, b, PairSet::B).len(), "A vs B at ({a},{b})");
                let ne = bijection_sets(a, b, PairSet::E).len();
                let nf = bijection_sets(a, b, PairSet::F).len();
                let ng = bijection_sets(a, b, PairSet::G).len();
                assert_eq!(nf, ng, "F vs G at ({a},{b})");
                assert_eq!(nf - ne, na, "F - E vs A at ({a},{b})");
            }
        }
    }

    #[test]
    fn exhaustive_dual_and_cute_checks_to_forty() {
        for n in 0..=40 {
            for l in enumerate(n, &PartitionConstraint::None) {
                assert_eq!(l.dual().dual(), l);
                if !l.is_empty() {
                    assert_eq!(l.is_cute(), l.is_cute_by_durfee(), "{l}");
                }
            }
        }
    }

    #[test]
    fn parsing_round_trip() {
        let x: Partition = "[3, 2,2]".parse().unwrap();
        assert_eq!(x.to_string(), "[3,2,2]");
        assert_eq!("[]".parse::<Partition>().unwrap(), Partition::empty());
        assert!("[2,0]".parse::<Partition>().is_err());
    }

    fn all_up_to_forty() -> &'static [Vec<Partition>] {
        static ALL: std::sync::OnceLock<Vec<Vec<Partition>>> = std::sync::OnceLock::new();
        ALL.get_or_init(|| (0..=40).map(|n| enumerate(n, &PartitionConstraint::None).collect()).collect())
    }

    fn any_partition() -> impl Strategy<Value = Partition> {
        (0usize..=40, any::<prop::sample::Index>()).prop_map(|(n, i)| {
            let all = &all_up_to_forty()[n];
            all[i.index(all.len())].clone()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(3000))]

        #[test]
        fn dual_is_an_involution(l in any_partition()) {
            let d = l.dual();
            prop_assert_eq!(d.size(), l.size());
            prop_assert_eq!(d.dual(), l.clone());
            prop_assert_eq!(d.parts().iter().sum::<usize>(), l.size());
        }

        #[test]
        fn cute_characterizations_agree(l in any_partition()) {
            prop_assume!(!l.is_empty());
            prop_assert_eq!(l.is_cute(), l.is_cute_by_durfee());
            let d = l.durfee_decompose().unwrap();
            prop_assert_eq!(l.size(), d.durfee * d.durfee + d.pi1.size() + d.pi2.size());
            prop_assert!(d.pi1.len() <= d.durfee);
            prop_assert!(d.pi2.largest() <= d.durfee);
        }
    }
}
