use std::fmt;

use rustc_hash::FxHashMap;
use serde::ser::{Serialize, SerializeMap, Serializer};

use super::xpoly::XPoly;
use super::{add, mul, neg, Int};
use crate::error::{Error, Result};
use crate::partition::Partition;

/// Largest variable count for which [`EPoly::to_xpoly`] will expand.
pub const MAX_EXPAND_VARS: usize = 8;

/// Element of `Λ_m = Z[e_1, …, e_m]` (graded, `deg e_i = i`).
///
/// An e-monomial `e_{a_1} e_{a_2} ⋯` is keyed by the partition of its
/// generator indices. Terms are kept sorted by monomial in ascending
/// lexicographic order; no zero coefficient is stored and every generator
/// index is at most `var_count`.
#[derive(Clone, PartialEq, Eq)]
pub struct EPoly {
    var_count: usize,
    terms: Vec<(Partition, Int)>,
}

impl EPoly {
    pub fn zero(var_count: usize) -> Self {
        EPoly {
            var_count,
            terms: Vec::new(),
        }
    }

    pub fn one(var_count: usize) -> Self {
        EPoly::constant(var_count, 1)
    }

    pub fn constant(var_count: usize, c: Int) -> Self {
        let terms = if c == 0 {
            Vec::new()
        } else {
            vec![(Partition::empty(), c)]
        };
        EPoly { var_count, terms }
    }

    /// The generator `e_i`; `e_0 = 1`, and `e_i = 0` for `i > var_count`.
    pub fn gen(i: usize, var_count: usize) -> Self {
        if i > var_count {
            return EPoly::zero(var_count);
        }
        EPoly {
            var_count,
            terms: vec![(Partition::single(i as u32), 1)],
        }
    }

    /// Collects terms, merging duplicates and dropping monomials that
    /// involve a generator beyond `var_count`.
    pub fn from_terms(var_count: usize, terms: impl IntoIterator<Item = (Partition, Int)>) -> Self {
        let mut acc: FxHashMap<Partition, Int> = FxHashMap::default();
        for (mono, c) in terms {
            if mono.first() as usize > var_count {
                continue;
            }
            let slot = acc.entry(mono).or_insert(0);
            *slot = add(*slot, c);
        }
        EPoly::from_map(var_count, acc)
    }

    fn from_map(var_count: usize, acc: FxHashMap<Partition, Int>) -> Self {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| *c != 0).collect();
        terms.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        EPoly { var_count, terms }
    }

    pub fn var_count(&self) -> usize {
        self.var_count
    }

    /// Terms in ascending lexicographic order of monomial.
    pub fn terms(&self) -> &[(Partition, Int)] {
        &self.terms
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

    pub fn coeff(&self, mono: &Partition) -> Int {
        self.terms
            .binary_search_by(|(m, _)| m.cmp(mono))
            .map(|i| self.terms[i].1)
            .unwrap_or(0)
    }

    /// Every term has the same graded degree.
    pub fn is_homogeneous(&self) -> bool {
        let mut w = self.terms.iter().map(|(m, _)| m.weight());
        match w.next() {
            None => true,
            Some(d) => w.all(|x| x == d),
        }
    }

    /// Image under `Λ_M → Λ_m` (generators beyond `m` set to zero). Also
    /// relabels a polynomial into a larger ring.
    pub fn truncate(&self, m: usize) -> EPoly {
        EPoly {
            var_count: m,
            terms: self
                .terms
                .iter()
                .filter(|(mono, _)| mono.first() as usize <= m)
                .cloned()
                .collect(),
        }
    }

    fn check(&self, other: &EPoly) -> Result<()> {
        if self.var_count != other.var_count {
            return Err(Error::VarCountMismatch(self.var_count, other.var_count));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &EPoly) -> Result<EPoly> {
        self.check(other)?;
        Ok(self.combine(other, 1))
    }

    pub fn try_sub(&self, other: &EPoly) -> Result<EPoly> {
        self.check(other)?;
        Ok(self.combine(other, -1))
    }

    fn combine(&self, other: &EPoly, sign: Int) -> EPoly {
        let mut terms = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            let ord = match (self.terms.get(i), other.terms.get(j)) {
                (Some(a), Some(b)) => a.0.cmp(&b.0),
                (Some(_), None) => std::cmp::Ordering::Less,
                _ => std::cmp::Ordering::Greater,
            };
            match ord {
                std::cmp::Ordering::Less => {
                    terms.push(self.terms[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    let (m, c) = &other.terms[j];
                    terms.push((m.clone(), mul(*c, sign)));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = add(self.terms[i].1, mul(other.terms[j].1, sign));
                    if c != 0 {
                        terms.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        EPoly {
            var_count: self.var_count,
            terms,
        }
    }

    pub fn try_mul(&self, other: &EPoly) -> Result<EPoly> {
        self.check(other)?;
        Ok(mul_into(self, other, self.var_count))
    }

    pub fn scale(&self, k: Int) -> EPoly {
        if k == 0 {
            return EPoly::zero(self.var_count);
        }
        EPoly {
            var_count: self.var_count,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), mul(*c, k)))
                .collect(),
        }
    }

    pub fn neg(&self) -> EPoly {
        EPoly {
            var_count: self.var_count,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), neg(*c)))
                .collect(),
        }
    }

    /// Expands into `x_1, …, x_m` by substituting each `e_i` with the
    /// elementary symmetric polynomial.
    pub fn to_xpoly(&self) -> Result<XPoly> {
        self.to_xpoly_embedded(self.var_count, 0)
    }

    /// Expands with `e_i` read as the elementary symmetric polynomial in
    /// `x_{offset+1}, …, x_{offset+var_count}`, inside a ring of `total`
    /// variables. `offset = 1` realizes `X' = (x_2, …)`, `offset = 2`
    /// realizes `X'' = (x_3, …)`.
    pub fn to_xpoly_embedded(&self, total: usize, offset: usize) -> Result<XPoly> {
        if total > MAX_EXPAND_VARS {
            return Err(Error::ExpansionGuard {
                limit: MAX_EXPAND_VARS,
                got: total,
            });
        }
        if offset + self.var_count > total {
            return Err(Error::Precondition(format!(
                "cannot embed {} variables at offset {offset} into {total}",
                self.var_count
            )));
        }
        let elementary: Vec<XPoly> = (0..=self.var_count)
            .map(|i| elementary_x(i, total, offset, self.var_count))
            .collect();
        let mut memo: FxHashMap<Vec<u32>, XPoly> = FxHashMap::default();
        let mut out = XPoly::zero(total);
        for (mono, c) in &self.terms {
            let x = monomial_x(mono.parts(), &elementary, &mut memo, total);
            for (e, &v) in x.terms() {
                out.add_term(e.clone(), mul(v, *c));
            }
        }
        Ok(out)
    }
}

fn monomial_x(
    parts: &[u32],
    elementary: &[XPoly],
    memo: &mut FxHashMap<Vec<u32>, XPoly>,
    total: usize,
) -> XPoly {
    if parts.is_empty() {
        return XPoly::one(total);
    }
    if let Some(p) = memo.get(parts) {
        return p.clone();
    }
    let rest = monomial_x(&parts[1..], elementary, memo, total);
    let p = &elementary[parts[0] as usize] * &rest;
    memo.insert(parts.to_vec(), p.clone());
    p
}

/// `e_i(x_{offset+1}, …, x_{offset+k})` in a ring of `total` variables.
fn elementary_x(i: usize, total: usize, offset: usize, k: usize) -> XPoly {
    let mut out = XPoly::zero(total);
    let mut chosen = Vec::new();
    fn rec(
        start: usize,
        left: usize,
        k: usize,
        offset: usize,
        total: usize,
        chosen: &mut Vec<usize>,
        out: &mut XPoly,
    ) {
        if left == 0 {
            let mut e = vec![0; total];
            for &c in chosen.iter() {
                e[offset + c] = 1;
            }
            out.add_term(e, 1);
            return;
        }
        for c in start..k {
            if k - c < left {
                break;
            }
            chosen.push(c);
            rec(c + 1, left - 1, k, offset, total, chosen, out);
            chosen.pop();
        }
    }
    rec(0, i, k, offset, total, &mut chosen, &mut out);
    out
}

/// Merges two descending index lists.
fn merge_monomials(a: &[u32], b: &[u32]) -> Partition {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        if a[i] >= b[j] {
            out.push(a[i]);
            i += 1;
        } else {
            out.push(b[j]);
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    Partition::from_sorted_unchecked(out)
}

/// Product of two polynomials, labelled as living in `Λ_m`, with monomials
/// involving generators beyond `m` discarded. Inputs may carry smaller
/// variable counts (they embed into `Λ_m`).
pub(crate) fn mul_into(a: &EPoly, b: &EPoly, m: usize) -> EPoly {
    let mut acc: FxHashMap<Partition, Int> =
        FxHashMap::with_capacity_and_hasher(a.terms.len() * b.terms.len(), Default::default());
    for (ma, ca) in &a.terms {
        if ma.first() as usize > m {
            continue;
        }
        for (mb, cb) in &b.terms {
            if mb.first() as usize > m {
                continue;
            }
            let mono = merge_monomials(ma.parts(), mb.parts());
            let slot = acc.entry(mono).or_insert(0);
            *slot = add(*slot, mul(*ca, *cb));
        }
    }
    EPoly::from_map(m, acc)
}

/// `Σ sign_i · a_i · b_i` in `Λ_m`, accumulated in one pass.
pub(crate) fn sum_of_products(pairs: &[(Int, &EPoly, &EPoly)], m: usize) -> EPoly {
    let mut acc: FxHashMap<Partition, Int> = FxHashMap::default();
    for &(sign, a, b) in pairs {
        for (ma, ca) in &a.terms {
            if ma.first() as usize > m {
                continue;
            }
            let ca = mul(*ca, sign);
            for (mb, cb) in &b.terms {
                if mb.first() as usize > m {
                    continue;
                }
                let mono = merge_monomials(ma.parts(), mb.parts());
                let slot = acc.entry(mono).or_insert(0);
                *slot = add(*slot, mul(ca, *cb));
            }
        }
    }
    EPoly::from_map(m, acc)
}

impl std::ops::Add for &EPoly {
    type Output = EPoly;
    fn add(self, rhs: &EPoly) -> EPoly {
        self.try_add(rhs).expect("EPoly addition")
    }
}

impl std::ops::Sub for &EPoly {
    type Output = EPoly;
    fn sub(self, rhs: &EPoly) -> EPoly {
        self.try_sub(rhs).expect("EPoly subtraction")
    }
}

impl std::ops::Mul for &EPoly {
    type Output = EPoly;
    fn mul(self, rhs: &EPoly) -> EPoly {
        self.try_mul(rhs).expect("EPoly multiplication")
    }
}

impl fmt::Debug for EPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}")?;
            for p in m.parts() {
                write!(f, "*e{p}")?;
            }
        }
        Ok(())
    }
}

impl Serialize for EPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.terms.len()))?;
        for (m, c) in &self.terms {
            map.serialize_entry(&m.key(), c)?;
        }
        map.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::part;

    fn e(i: usize, m: usize) -> EPoly {
        EPoly::gen(i, m)
    }

    #[test]
    fn arithmetic_examples() {
        let e1 = e(1, 3);
        assert_eq!(&e1 * &e1, EPoly::from_terms(3, [(part(&[1, 1]), 1)]));
        assert!((&e(2, 3) + &e(2, 3).scale(-1)).is_zero());
        let f = &(&e(1, 3) * &e(2, 3)) - &e(3, 3).scale(2);
        let expect = EPoly::from_terms(3, [(part(&[2, 1]), 3), (part(&[3]), -6)]);
        assert_eq!(f.scale(3), expect);
        assert!(e(1, 2).try_mul(&e(1, 3)).is_err());
        assert!(e(4, 3).is_zero());
        assert_eq!(e(0, 3), EPoly::one(3));
    }

    #[test]
    fn expansion_examples() {
        let x1 = XPoly::var(2, 1);
        let x2 = XPoly::var(2, 2);
        assert_eq!(e(1, 2).to_xpoly().unwrap(), &x1 + &x2);
        assert_eq!(e(2, 2).to_xpoly().unwrap(), &x1 * &x2);
        let f = &(&e(1, 2) * &e(1, 2)) - &e(2, 2).scale(2);
        assert_eq!(f.to_xpoly().unwrap(), &x1.pow(2) + &x2.pow(2));
        assert!(e(1, 9).to_xpoly().is_err());
    }

    #[test]
    fn embedded_expansion() {
        // e_1(x_2, x_3) inside three variables
        let p = e(1, 2).to_xpoly_embedded(3, 1).unwrap();
        assert_eq!(p, &XPoly::var(3, 2) + &XPoly::var(3, 3));
        assert!(e(1, 3).to_xpoly_embedded(3, 1).is_err());
    }

    #[test]
    fn truncation_is_ring_map() {
        let a = &e(3, 5) + &e(1, 5);
        let b = &e(4, 5) - &e(2, 5);
        let lhs = (&a * &b).truncate(3);
        let rhs = &a.truncate(3) * &b.truncate(3);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn json_dump() {
        let f = &(&e(2, 3) * &e(1, 3)) - &e(3, 3);
        assert_eq!(serde_json::to_string(&f).unwrap(), r#"{"2,1":1,"3":-1}"#);
    }
}
