//! Partition combinatorics: straightening of index sequences, duals and
//! stars inside the staircase `ρ_n`, horizontal strips and enumeration.
//!
//! Young diagrams use matrix convention: box `(r, c)` sits in row `r`,
//! column `c` (both 1-based). Two boxes of a skew diagram are connected when
//! they share an edge or a vertex.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A weakly decreasing sequence of positive integers. The empty partition is
/// allowed. The derived ordering is lexicographic on the parts, which refines
/// dominance order among partitions of equal weight.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<u32>")]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Builds a partition, dropping trailing zeros. Fails if the parts are
    /// not weakly decreasing.
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        let mut parts = parts;
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) || parts.contains(&0) {
            return Err(Error::NotAPartition(
                parts.iter().map(|&p| p as i64).collect(),
            ));
        }
        Ok(Partition { parts })
    }

    /// Sorts arbitrary nonnegative parts into a partition.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub(crate) fn from_sorted_unchecked(parts: Vec<u32>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        debug_assert!(!parts.contains(&0));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// The staircase `ρ_n = (n, n-1, …, 1)`.
    pub fn rho(n: usize) -> Self {
        Partition {
            parts: (1..=n as u32).rev().collect(),
        }
    }

    pub fn single(a: u32) -> Self {
        Partition::from_unsorted(vec![a])
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn into_parts(self) -> Vec<u32> {
        self.parts
    }

    /// Number of nonzero parts, `ℓ(λ)`.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `|λ|`.
    pub fn weight(&self) -> usize {
        self.parts.iter().map(|&p| p as usize).sum()
    }

    /// The `i`-th part (0-based), zero past the end.
    pub fn part(&self, i: usize) -> u32 {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// Largest part, zero for the empty partition.
    pub fn first(&self) -> u32 {
        self.part(0)
    }

    pub fn is_strict(&self) -> bool {
        self.parts.windows(2).all(|w| w[0] > w[1])
    }

    /// `λ ∈ E_n`: largest part at most `n`.
    pub fn in_e(&self, n: usize) -> bool {
        self.first() as usize <= n
    }

    /// `λ ∈ D_n`: strict with largest part at most `n`.
    pub fn in_d(&self, n: usize) -> bool {
        self.is_strict() && self.in_e(n)
    }

    /// Diagram containment `self ⊇ other`.
    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && other.parts.iter().zip(&self.parts).all(|(o, s)| o <= s)
    }

    /// Multiset difference `self ∖ other`; `None` if some part of `other`
    /// is missing from `self`.
    pub fn minus(&self, other: &[u32]) -> Option<Partition> {
        let mut parts = self.parts.clone();
        for &p in other {
            if p == 0 {
                continue;
            }
            let pos = parts.iter().position(|&x| x == p)?;
            parts.remove(pos);
        }
        Some(Partition { parts })
    }

    /// Multiset union.
    pub fn union(&self, extra: &[u32]) -> Partition {
        let mut parts = self.parts.clone();
        parts.extend_from_slice(extra);
        Partition::from_unsorted(parts)
    }

    /// Comma-separated key, e.g. `"3,1"`; empty partition is `""`.
    pub fn key(&self) -> String {
        self.parts
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.key())
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Parses `"3,2,1"`. The empty string and `"0"` both denote the empty
    /// partition; parts may be given in any order of spaces.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "0" {
            return Ok(Partition::empty());
        }
        let mut parts = Vec::new();
        for tok in s.split(',') {
            let v: i64 = tok
                .trim()
                .parse()
                .map_err(|_| Error::Precondition(format!("malformed partition {s:?}")))?;
            parts.push(v);
        }
        Partition::try_from(parts)
    }
}

impl TryFrom<Vec<i64>> for Partition {
    type Error = Error;

    fn try_from(v: Vec<i64>) -> Result<Self> {
        if v.iter().any(|&x| x < 0 || x > u32::MAX as i64) {
            return Err(Error::NotAPartition(v));
        }
        Partition::new(v.iter().map(|&x| x as u32).collect()).map_err(|_| Error::NotAPartition(v))
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

/// Convenience constructor for literals: `part(&[3, 1])`. Panics if the
/// parts are not weakly decreasing.
pub fn part(parts: &[u32]) -> Partition {
    Partition::new(parts.to_vec()).expect("literal partition")
}

/// Sorts an integer index sequence into a partition and returns the sign of
/// the straightening permutation: `(-1)^{#{i<j : ν_i < ν_j}}`. Any negative
/// entry yields sign `0` (the associated polynomial vanishes).
pub fn straighten(nu: &[i64]) -> (i8, Partition) {
    if nu.iter().any(|&x| x < 0) {
        return (0, Partition::empty());
    }
    let mut inversions = 0usize;
    for i in 0..nu.len() {
        for j in i + 1..nu.len() {
            if nu[i] < nu[j] {
                inversions += 1;
            }
        }
    }
    let sign = if inversions.is_multiple_of(2) { 1 } else { -1 };
    (
        sign,
        Partition::from_unsorted(nu.iter().map(|&x| x as u32).collect()),
    )
}

/// `λ' = ρ_n ∖ λ`.
pub fn dual(lambda: &Partition, n: usize) -> Result<Partition> {
    if !lambda.in_d(n) {
        return Err(Error::NotInD {
            lambda: lambda.clone(),
            n,
        });
    }
    Ok(Partition::rho(n).minus(lambda.parts()).expect("λ ⊆ ρ_n"))
}

/// `λ* = (n+1-λ_r, …, n+1-λ_1)`.
pub fn star(lambda: &Partition, n: usize) -> Result<Partition> {
    if !lambda.in_d(n) {
        return Err(Error::NotInD {
            lambda: lambda.clone(),
            n,
        });
    }
    let parts = lambda
        .parts()
        .iter()
        .rev()
        .map(|&p| n as u32 + 1 - p)
        .collect();
    Ok(Partition::from_sorted_unchecked(parts))
}

/// `(a^d, ν)`: `a` repeated `d` times followed by the parts of `ν`.
pub fn prepend(a: u32, d: usize, nu: &Partition) -> Result<Partition> {
    if nu.first() > a {
        return Err(Error::Prepend {
            a,
            d,
            nu: nu.clone(),
        });
    }
    let mut parts = vec![a; d];
    parts.extend_from_slice(nu.parts());
    Partition::new(parts)
}

/// Component data of a horizontal strip `shape / λ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StripData {
    pub shape: Partition,
    pub component_count: usize,
    pub components_off_first_column: usize,
}

/// Boxes of the skew diagram `outer / inner`, row-major.
pub fn skew_boxes(outer: &Partition, inner: &Partition) -> Vec<(u32, u32)> {
    let mut boxes = Vec::new();
    for r in 0..outer.len() {
        for c in inner.part(r) + 1..=outer.part(r) {
            boxes.push((r as u32 + 1, c));
        }
    }
    boxes
}

/// Connected components of a set of boxes under vertex-or-edge adjacency.
/// Returns `(components, components not meeting column 1)`.
pub fn components(boxes: &[(u32, u32)]) -> (usize, usize) {
    let mut parent: Vec<usize> = (0..boxes.len()).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for i in 0..boxes.len() {
        for j in i + 1..boxes.len() {
            let (ri, ci) = boxes[i];
            let (rj, cj) = boxes[j];
            if ri.abs_diff(rj) <= 1 && ci.abs_diff(cj) <= 1 {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    let mut roots = Vec::new();
    let mut touching = Vec::new();
    for (i, &(_, col)) in boxes.iter().enumerate() {
        let r = find(&mut parent, i);
        if !roots.contains(&r) {
            roots.push(r);
        }
        if col == 1 && !touching.contains(&r) {
            touching.push(r);
        }
    }
    (roots.len(), roots.len() - touching.len())
}

/// All `μ ⊇ λ` with `|μ| = |λ| + k` and `μ/λ` a horizontal strip, with
/// `μ_1 ≤ cap` when a cap is given. Output is in descending lexicographic
/// order.
pub fn grow_strips(lambda: &Partition, k: usize, cap: Option<u32>) -> Vec<(Partition, StripData)> {
    let rows = lambda.len() + 1;
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(rows);
    grow_rec(lambda, cap, 0, rows, k, &mut current, &mut out);
    out.into_iter()
        .map(|mu| {
            let (count, off) = components(&skew_boxes(&mu, lambda));
            let data = StripData {
                shape: mu.clone(),
                component_count: count,
                components_off_first_column: off,
            };
            (mu, data)
        })
        .collect()
}

fn grow_rec(
    lambda: &Partition,
    cap: Option<u32>,
    row: usize,
    rows: usize,
    remaining: usize,
    current: &mut Vec<u32>,
    out: &mut Vec<Partition>,
) {
    if row == rows {
        if remaining == 0 {
            out.push(Partition::from_unsorted(current.clone()));
        }
        return;
    }
    let lo = lambda.part(row);
    // interlacing: λ_r ≤ μ_r ≤ λ_{r-1}
    let mut hi = if row == 0 {
        lo + remaining as u32
    } else {
        lambda.part(row - 1)
    };
    if let Some(c) = cap {
        hi = hi.min(c.max(lo));
    }
    hi = hi.min(lo + remaining as u32);
    if row == 0 && cap.is_some_and(|c| lo > c) {
        return;
    }
    for v in (lo..=hi).rev() {
        current.push(v);
        grow_rec(
            lambda,
            cap,
            row + 1,
            rows,
            remaining - (v - lo) as usize,
            current,
            out,
        );
        current.pop();
    }
}

/// All strict `ν ⊆ λ` with `|ν| = |λ| - k` and `λ/ν` a horizontal strip,
/// paired with the number of connected components of `λ/ν`.
pub fn shrink_strips(lambda: &Partition, k: usize) -> Vec<(Partition, usize)> {
    if k > lambda.weight() {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(lambda.len());
    shrink_rec(lambda, 0, k, &mut current, &mut out);
    out.into_iter()
        .filter(|nu| nu.is_strict())
        .map(|nu| {
            let (count, _) = components(&skew_boxes(lambda, &nu));
            (nu, count)
        })
        .collect()
}

fn shrink_rec(
    lambda: &Partition,
    row: usize,
    remaining: usize,
    current: &mut Vec<u32>,
    out: &mut Vec<Partition>,
) {
    if row == lambda.len() {
        if remaining == 0 {
            out.push(Partition::from_unsorted(current.clone()));
        }
        return;
    }
    let hi = lambda.part(row);
    // interlacing: λ_{r+1} ≤ ν_r ≤ λ_r
    let lo = lambda
        .part(row + 1)
        .max(hi.saturating_sub(remaining as u32));
    for v in (lo..=hi).rev() {
        current.push(v);
        shrink_rec(lambda, row + 1, remaining - (hi - v) as usize, current, out);
        current.pop();
    }
}

/// All partitions of `weight` with parts at most `part_cap` (strict if
/// requested), in descending lexicographic order.
pub fn enumerate(weight: usize, part_cap: usize, strict: bool) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    enum_rec(weight, part_cap.min(weight), strict, &mut current, &mut out);
    out
}

fn enum_rec(
    remaining: usize,
    max_part: usize,
    strict: bool,
    current: &mut Vec<u32>,
    out: &mut Vec<Partition>,
) {
    if remaining == 0 {
        out.push(Partition::from_sorted_unchecked(current.clone()));
        return;
    }
    for p in (1..=max_part.min(remaining)).rev() {
        current.push(p as u32);
        let next_max = if strict { p - 1 } else { p };
        enum_rec(remaining - p, next_max, strict, current, out);
        current.pop();
    }
}

/// Every element of `D_n`, ordered by weight and then descending
/// lexicographically.
pub fn all_strict(n: usize) -> Vec<Partition> {
    (0..=n * (n + 1) / 2)
        .flat_map(|w| enumerate(w, n, true))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn straighten_examples() {
        assert_eq!(straighten(&[1, 2]), (-1, part(&[2, 1])));
        assert_eq!(straighten(&[2, 2]), (1, part(&[2, 2])));
        assert_eq!(straighten(&[3, 0]), (1, part(&[3])));
        assert_eq!(straighten(&[0, 1]), (-1, part(&[1])));
        assert_eq!(straighten(&[2, -1]).0, 0);
        assert_eq!(straighten(&[]), (1, Partition::empty()));
    }

    #[test]
    fn dual_and_star() {
        assert_eq!(dual(&part(&[2, 1]), 2).unwrap(), Partition::empty());
        assert_eq!(dual(&part(&[1]), 2).unwrap(), part(&[2]));
        assert_eq!(dual(&part(&[3, 1]), 3).unwrap(), part(&[2]));
        assert!(dual(&part(&[3]), 2).is_err());
        assert!(dual(&part(&[1, 1]), 2).is_err());

        assert_eq!(star(&part(&[2, 1]), 2).unwrap(), part(&[2, 1]));
        assert_eq!(star(&part(&[5]), 5).unwrap(), part(&[1]));
        assert_eq!(star(&part(&[3, 1]), 3).unwrap(), part(&[3, 1]));
        assert_eq!(star(&Partition::empty(), 3).unwrap(), Partition::empty());
    }

    #[test]
    fn prepend_examples() {
        assert_eq!(
            prepend(4, 3, &Partition::empty()).unwrap(),
            part(&[4, 4, 4])
        );
        assert_eq!(prepend(4, 1, &part(&[2])).unwrap(), part(&[4, 2]));
        assert_eq!(prepend(3, 2, &part(&[3, 1])).unwrap(), part(&[3, 3, 3, 1]));
        assert!(prepend(2, 1, &part(&[3])).is_err());
    }

    fn strip(mu: &[u32], comps: usize, off: usize) -> (Partition, StripData) {
        let p = part(mu);
        (
            p.clone(),
            StripData {
                shape: p,
                component_count: comps,
                components_off_first_column: off,
            },
        )
    }

    #[test]
    fn grow_examples() {
        // (2,2)/(2) is a single row-2 segment starting in column 1.
        assert_eq!(
            grow_strips(&part(&[2]), 2, Some(3)),
            vec![strip(&[3, 1], 2, 1), strip(&[2, 2], 1, 0)]
        );
        assert_eq!(
            grow_strips(&Partition::empty(), 0, None),
            vec![strip(&[], 0, 0)]
        );
        assert_eq!(
            grow_strips(&part(&[2, 1]), 1, Some(3)),
            vec![
                strip(&[3, 1], 1, 1),
                strip(&[2, 2], 1, 1),
                strip(&[2, 1, 1], 1, 0)
            ]
        );
        assert!(grow_strips(&part(&[4]), 1, Some(3)).is_empty());
    }

    #[test]
    fn shrink_examples() {
        assert_eq!(shrink_strips(&part(&[2]), 1), vec![(part(&[1]), 1)]);
        assert_eq!(shrink_strips(&part(&[3, 1]), 2), vec![(part(&[2]), 2)]);
        assert_eq!(shrink_strips(&part(&[3, 1]), 0), vec![(part(&[3, 1]), 0)]);
        assert!(shrink_strips(&part(&[1]), 2).is_empty());
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(enumerate(4, 4, true), vec![part(&[4]), part(&[3, 1])]);
        assert_eq!(enumerate(0, 3, false), vec![Partition::empty()]);
        assert_eq!(enumerate(0, 3, true), vec![Partition::empty()]);
        assert_eq!(
            enumerate(3, 2, false),
            vec![part(&[2, 1]), part(&[1, 1, 1])]
        );
        assert_eq!(enumerate(20, 20, false).len(), 627);
        for n in 1..=6 {
            assert_eq!(all_strict(n).len(), 1 << n);
        }
    }

    #[test]
    fn parsing() {
        assert_eq!("3,2,1".parse::<Partition>().unwrap(), part(&[3, 2, 1]));
        assert_eq!("".parse::<Partition>().unwrap(), Partition::empty());
        assert_eq!("0".parse::<Partition>().unwrap(), Partition::empty());
        assert!("1,2".parse::<Partition>().is_err());
        assert!("a".parse::<Partition>().is_err());
        assert!("-1".parse::<Partition>().is_err());
        let json = serde_json::to_string(&part(&[3, 1])).unwrap();
        assert_eq!(json, "[3,1]");
        assert_eq!(serde_json::to_string(&Partition::empty()).unwrap(), "[]");
        let back: Partition = serde_json::from_str("[3,1]").unwrap();
        assert_eq!(back, part(&[3, 1]));
        assert!(serde_json::from_str::<Partition>("[1,3]").is_err());
    }
}
