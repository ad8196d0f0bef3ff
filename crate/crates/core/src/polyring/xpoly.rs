use std::collections::BTreeMap;
use std::fmt;

use rustc_hash::FxHashMap;
use serde::ser::{Serialize, SerializeMap, Serializer};

use super::{add, mul, neg, Int};
use crate::error::{Error, Result};

/// Exponent vector of an x-monomial, one entry per variable.
pub type Exponents = Vec<u32>;

/// Sparse polynomial in `x_1, …, x_m` with exact integer coefficients. No
/// zero coefficient is ever stored.
#[derive(Clone, PartialEq, Eq)]
pub struct XPoly {
    var_count: usize,
    terms: BTreeMap<Exponents, Int>,
}

impl XPoly {
    pub fn zero(var_count: usize) -> Self {
        XPoly {
            var_count,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(var_count: usize, c: Int) -> Self {
        let mut p = XPoly::zero(var_count);
        p.add_term(vec![0; var_count], c);
        p
    }

    pub fn one(var_count: usize) -> Self {
        XPoly::constant(var_count, 1)
    }

    /// The variable `x_i` (1-based).
    pub fn var(var_count: usize, i: usize) -> Self {
        assert!((1..=var_count).contains(&i), "x_{i} out of range");
        let mut exps = vec![0; var_count];
        exps[i - 1] = 1;
        XPoly::monomial(exps, 1)
    }

    pub fn monomial(exps: Exponents, c: Int) -> Self {
        let mut p = XPoly::zero(exps.len());
        p.add_term(exps, c);
        p
    }

    pub fn from_terms(var_count: usize, terms: impl IntoIterator<Item = (Exponents, Int)>) -> Self {
        let mut p = XPoly::zero(var_count);
        for (e, c) in terms {
            assert_eq!(e.len(), var_count, "exponent vector length");
            p.add_term(e, c);
        }
        p
    }

    pub fn var_count(&self) -> usize {
        self.var_count
    }

    pub fn terms(&self) -> &BTreeMap<Exponents, Int> {
        &self.terms
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

    pub fn coeff(&self, exps: &[u32]) -> Int {
        self.terms.get(exps).copied().unwrap_or(0)
    }

    pub(crate) fn add_term(&mut self, exps: Exponents, c: Int) {
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(exps);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = add(*o.get(), c);
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check(&self, other: &XPoly) -> Result<()> {
        if self.var_count != other.var_count {
            return Err(Error::VarCountMismatch(self.var_count, other.var_count));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &XPoly) -> Result<XPoly> {
        self.check(other)?;
        let mut out = self.clone();
        for (e, &c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &XPoly) -> Result<XPoly> {
        self.check(other)?;
        let mut out = self.clone();
        for (e, &c) in &other.terms {
            out.add_term(e.clone(), neg(c));
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &XPoly) -> Result<XPoly> {
        self.check(other)?;
        let mut acc: FxHashMap<Exponents, Int> = FxHashMap::default();
        for (ea, &ca) in &self.terms {
            for (eb, &cb) in &other.terms {
                let e: Exponents = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                let slot = acc.entry(e).or_insert(0);
                *slot = add(*slot, mul(ca, cb));
            }
        }
        Ok(XPoly {
            var_count: self.var_count,
            terms: acc.into_iter().filter(|(_, c)| *c != 0).collect(),
        })
    }

    pub fn scale(&self, k: Int) -> XPoly {
        if k == 0 {
            return XPoly::zero(self.var_count);
        }
        XPoly {
            var_count: self.var_count,
            terms: self
                .terms
                .iter()
                .map(|(e, &c)| (e.clone(), mul(c, k)))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> XPoly {
        let mut acc = XPoly::one(self.var_count);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// `s_0`: `x_1 ↦ -x_1`.
    pub fn s0(&self) -> XPoly {
        let terms = self
            .terms
            .iter()
            .map(|(e, &c)| (e.clone(), if e[0] % 2 == 1 { neg(c) } else { c }))
            .collect();
        XPoly {
            var_count: self.var_count,
            terms,
        }
    }

    /// Swap of `x_i` and `x_{i+1}` (1-based `i`); `s_1` swaps `x_1, x_2`.
    pub fn swap(&self, i: usize) -> XPoly {
        assert!(
            i >= 1 && i < self.var_count,
            "s_{i} needs at least {} variables",
            i + 1
        );
        let mut out = XPoly::zero(self.var_count);
        for (e, &c) in &self.terms {
            let mut e = e.clone();
            e.swap(i - 1, i);
            out.add_term(e, c);
        }
        out
    }

    pub fn s1(&self) -> XPoly {
        self.swap(1)
    }

    /// `∂_0 f = (f - s_0 f) / (2 x_1)`. The numerator keeps only odd powers
    /// of `x_1`, each with a doubled coefficient.
    pub fn ddiff0(&self) -> Result<XPoly> {
        if self.var_count == 0 {
            return Err(Error::Precondition(
                "∂_0 needs at least one variable".into(),
            ));
        }
        let numerator = self.try_sub(&self.s0())?;
        let mut out = XPoly::zero(self.var_count);
        for (e, &c) in &numerator.terms {
            if e[0] == 0 {
                return Err(Error::NotDivisible(format!(
                    "f - s_0 f has term {e:?} free of x_1"
                )));
            }
            if c % 2 != 0 {
                return Err(Error::NotDivisible(format!("odd coefficient {c} at {e:?}")));
            }
            let mut e = e.clone();
            e[0] -= 1;
            out.add_term(e, c / 2);
        }
        Ok(out)
    }

    /// `∂'_1 f = (f - s_1 f) / (x_2 - x_1)`, by synthetic division in `x_1`
    /// with root `x_1 = x_2`.
    pub fn ddiff1prime(&self) -> Result<XPoly> {
        self.need_two()?;
        let q = self.try_sub(&self.s1())?.div_x1_minus_x2()?;
        Ok(q.scale(-1))
    }

    /// `∂_1 f = (f - s_1 f) / (x_1 - x_2)`.
    pub fn ddiff1(&self) -> Result<XPoly> {
        self.need_two()?;
        self.try_sub(&self.s1())?.div_x1_minus_x2()
    }

    fn need_two(&self) -> Result<()> {
        if self.var_count < 2 {
            return Err(Error::Precondition(
                "∂_1 needs at least two variables".into(),
            ));
        }
        Ok(())
    }

    /// Exact quotient by `x_1 - x_2`.
    fn div_x1_minus_x2(&self) -> Result<XPoly> {
        if self.var_count < 2 {
            return Err(Error::Precondition(
                "division by x_1 - x_2 needs two variables".into(),
            ));
        }
        if self.is_zero() {
            return Ok(self.clone());
        }
        // Coefficients of x_1^a, each a polynomial in the remaining variables
        // (stored with x_1 exponent forced to zero).
        let deg = self.terms.keys().map(|e| e[0]).max().unwrap_or(0) as usize;
        let mut coeffs: Vec<XPoly> = vec![XPoly::zero(self.var_count); deg + 1];
        for (e, &c) in &self.terms {
            let mut rest = e.clone();
            let a = rest[0] as usize;
            rest[0] = 0;
            coeffs[a].add_term(rest, c);
        }
        if deg == 0 {
            return Err(Error::NotDivisible("nonzero polynomial free of x_1".into()));
        }
        let x2 = XPoly::var(self.var_count, 2);
        // q_{deg-1} = g_deg, q_{a-1} = g_a + x_2 q_a, remainder g_0 + x_2 q_0.
        let mut quotient: Vec<XPoly> = vec![XPoly::zero(self.var_count); deg];
        let mut carry = XPoly::zero(self.var_count);
        for a in (1..=deg).rev() {
            let qa = &coeffs[a] + &(&x2 * &carry);
            quotient[a - 1] = qa.clone();
            carry = qa;
        }
        let remainder = &coeffs[0] + &(&x2 * &carry);
        if !remainder.is_zero() {
            return Err(Error::NotDivisible(format!(
                "remainder {remainder:?} after division by x_1 - x_2"
            )));
        }
        let mut out = XPoly::zero(self.var_count);
        for (a, qa) in quotient.into_iter().enumerate() {
            for (mut e, c) in qa.terms {
                e[0] = a as u32;
                out.add_term(e, c);
            }
        }
        Ok(out)
    }

    /// Invariant under every adjacent transposition.
    pub fn is_symmetric(&self) -> bool {
        (1..self.var_count).all(|i| self.swap(i) == *self)
    }

    /// Total degree of each term equal.
    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }
}

impl std::ops::Add for &XPoly {
    type Output = XPoly;
    fn add(self, rhs: &XPoly) -> XPoly {
        self.try_add(rhs).expect("XPoly addition")
    }
}

impl std::ops::Sub for &XPoly {
    type Output = XPoly;
    fn sub(self, rhs: &XPoly) -> XPoly {
        self.try_sub(rhs).expect("XPoly subtraction")
    }
}

impl std::ops::Mul for &XPoly {
    type Output = XPoly;
    fn mul(self, rhs: &XPoly) -> XPoly {
        self.try_mul(rhs).expect("XPoly multiplication")
    }
}

impl fmt::Debug for XPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}")?;
            for (i, &p) in e.iter().enumerate() {
                match p {
                    0 => {}
                    1 => write!(f, "*x{}", i + 1)?,
                    _ => write!(f, "*x{}^{}", i + 1, p)?,
                }
            }
        }
        Ok(())
    }
}

impl Serialize for XPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.terms.len()))?;
        for (e, c) in &self.terms {
            let key = e
                .iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",");
            map.serialize_entry(&key, c)?;
        }
        map.end()
    }
}
