//! The small quantum cohomology ring `QH*(LG(n, 2n))`, `deg q = n + 1`.
//!
//! Three engines compute the same products:
//!
//! * [`Engine::Constants`] reads `2^{-d} e(λ, μ; ((n+1)^d, ν))` off stable
//!   Q̃-structure constants;
//! * [`Engine::Quotient`] multiplies in `Λ_{n+1}` and sends `2 Q̃_{n+1}` to
//!   `q`;
//! * [`Engine::Pieri`] rewrites `σ_μ` as a polynomial in the special classes
//!   and folds the quantum Pieri rule over it.

mod checks;
mod engines;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::ser::{Serialize, SerializeMap, Serializer};

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::polyring::{add, mul, Int};

pub use checks::{
    eightfold_check, fform_check, line_count_check, qlr_check, relation_check, rho_product,
    sigma_ij_product_check, vanishing_bounds,
};
pub(crate) use engines::clear_memo;
pub use engines::{
    giambelli_special, gw, qprod, qprod_constants, qprod_pieri, qprod_quotient, quantum_pieri,
    quantum_pieri_basis,
};

/// A class in `QH*(LG(n, 2n))`: integer combination of `σ_λ q^d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuantumClass {
    n: usize,
    coeffs: BTreeMap<(u32, Partition), Int>,
}

impl QuantumClass {
    pub fn zero(n: usize) -> Self {
        QuantumClass {
            n,
            coeffs: BTreeMap::new(),
        }
    }

    /// `σ_λ q^d`; `λ` is not validated.
    pub fn monomial(lambda: Partition, d: u32, n: usize) -> Self {
        let mut c = QuantumClass::zero(n);
        c.add(lambda, d, 1);
        c
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, lambda: &Partition, d: u32) -> Int {
        self.coeffs.get(&(d, lambda.clone())).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Terms `(λ, d, c)` ordered by q-degree, then by partition.
    pub fn iter(&self) -> impl Iterator<Item = (&Partition, u32, Int)> {
        self.coeffs.iter().map(|((d, p), &c)| (p, *d, c))
    }

    pub fn add(&mut self, lambda: Partition, d: u32, c: Int) {
        if c == 0 {
            return;
        }
        let key = (d, lambda);
        let slot = self.coeffs.entry(key.clone()).or_insert(0);
        *slot = add(*slot, c);
        if *slot == 0 {
            self.coeffs.remove(&key);
        }
    }

    pub fn add_scaled(&mut self, other: &QuantumClass, k: Int) {
        for ((d, p), &c) in &other.coeffs {
            self.add(p.clone(), *d, mul(c, k));
        }
    }

    /// The `q = 0` part.
    pub fn classical_part(&self) -> BTreeMap<Partition, Int> {
        self.coeffs
            .iter()
            .filter(|((d, _), _)| *d == 0)
            .map(|((_, p), &c)| (p.clone(), c))
            .collect()
    }

    /// `|λ| + d(n+1)` is the same for every term.
    pub fn is_homogeneous(&self) -> bool {
        let mut it = self
            .coeffs
            .keys()
            .map(|(d, p)| p.weight() + *d as usize * (self.n + 1));
        match it.next() {
            None => true,
            Some(w) => it.all(|x| x == w),
        }
    }
}

impl fmt::Display for QuantumClass {
    /// `s[3,2,1] + 2*s[2]*q`, `q^3`, `1`, `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut ordered: Vec<_> = self.coeffs.iter().collect();
        ordered.sort_by(|((da, pa), _), ((db, pb), _)| da.cmp(db).then_with(|| pb.cmp(pa)));
        for (i, ((d, p), &c)) in ordered.into_iter().enumerate() {
            let mut factors = Vec::new();
            if !p.is_empty() {
                factors.push(format!("s[{}]", p.key()));
            }
            match d {
                0 => {}
                1 => factors.push("q".to_string()),
                _ => factors.push(format!("q^{d}")),
            }
            let mag = c.unsigned_abs();
            if mag != 1 || factors.is_empty() {
                factors.insert(0, mag.to_string());
            }
            let body = factors.join("*");
            match (i, c < 0) {
                (0, false) => write!(f, "{body}")?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for QuantumClass {
    /// Map from `"λ|d"` (e.g. `"3,1|2"`) to the coefficient.
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.coeffs.len()))?;
        for ((d, p), c) in &self.coeffs {
            map.serialize_entry(&format!("{}|{d}", p.key()), c)?;
        }
        map.end()
    }
}

/// A polynomial in `σ_1, …, σ_n` and `q`. Keys are the index multiset, in
/// descending order, and the power of `q`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SpecialPoly {
    terms: BTreeMap<(Vec<u32>, u32), Int>,
}

impl SpecialPoly {
    pub fn zero() -> Self {
        SpecialPoly::default()
    }

    pub fn one() -> Self {
        SpecialPoly::monomial(Vec::new(), 0, 1)
    }

    /// `c · σ_{i_1} ⋯ σ_{i_k} q^e`. Index 0 is the unit.
    pub fn monomial(mut indices: Vec<u32>, q: u32, c: Int) -> Self {
        let mut out = SpecialPoly::zero();
        indices.retain(|&i| i != 0);
        indices.sort_unstable_by(|a, b| b.cmp(a));
        out.add_term(indices, q, c);
        out
    }

    /// `σ_j`, zero for negative `j`.
    pub fn special(j: i64) -> Self {
        if j < 0 {
            SpecialPoly::zero()
        } else {
            SpecialPoly::monomial(vec![j as u32], 0, 1)
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], u32, Int)> {
        self.terms
            .iter()
            .map(|((ix, q), &c)| (ix.as_slice(), *q, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, indices: Vec<u32>, q: u32, c: Int) {
        if c == 0 {
            return;
        }
        let key = (indices, q);
        let slot = self.terms.entry(key.clone()).or_insert(0);
        *slot = add(*slot, c);
        if *slot == 0 {
            self.terms.remove(&key);
        }
    }

    pub fn add_scaled(&mut self, other: &SpecialPoly, k: Int) {
        for ((ix, q), &c) in &other.terms {
            self.add_term(ix.clone(), *q, mul(c, k));
        }
    }

    pub fn mul(&self, other: &SpecialPoly) -> SpecialPoly {
        let mut out = SpecialPoly::zero();
        for ((ia, qa), &ca) in &self.terms {
            for ((ib, qb), &cb) in &other.terms {
                let mut ix = ia.clone();
                ix.extend_from_slice(ib);
                ix.sort_unstable_by(|a, b| b.cmp(a));
                out.add_term(ix, qa + qb, mul(ca, cb));
            }
        }
        out
    }
}

impl fmt::Display for SpecialPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, ((ix, q), &c)) in self.terms.iter().enumerate() {
            let mut factors: Vec<String> = ix.iter().map(|j| format!("s{j}")).collect();
            match q {
                0 => {}
                1 => factors.push("q".into()),
                _ => factors.push(format!("q^{q}")),
            }
            let mag = c.unsigned_abs();
            if mag != 1 || factors.is_empty() {
                factors.insert(0, mag.to_string());
            }
            let sep = match (i, c < 0) {
                (0, false) => "",
                (0, true) => "-",
                (_, false) => " + ",
                (_, true) => " - ",
            };
            write!(f, "{sep}{}", factors.join("*"))?;
        }
        Ok(())
    }
}

/// Which multiplication engine to use.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Engine {
    #[default]
    Constants,
    Quotient,
    Pieri,
}

impl Engine {
    pub const ALL: [Engine; 3] = [Engine::Constants, Engine::Quotient, Engine::Pieri];

    pub fn name(self) -> &'static str {
        match self {
            Engine::Constants => "constants",
            Engine::Quotient => "quotient",
            Engine::Pieri => "pieri",
        }
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Engine {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Engine::ALL
            .into_iter()
            .find(|e| e.name() == s)
            .ok_or_else(|| Error::Precondition(format!("unknown engine {s:?}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::part;

    #[test]
    fn display_forms() {
        let n = 3;
        let mut c = QuantumClass::zero(n);
        c.add(part(&[2]), 1, 2);
        c.add(part(&[3, 2, 1]), 0, 1);
        assert_eq!(c.to_string(), "s[3,2,1] + 2*s[2]*q");
        assert_eq!(
            QuantumClass::monomial(Partition::empty(), 3, n).to_string(),
            "q^3"
        );
        assert_eq!(
            QuantumClass::monomial(Partition::empty(), 0, n).to_string(),
            "1"
        );
        assert_eq!(QuantumClass::zero(n).to_string(), "0");
        let mut c = QuantumClass::zero(2);
        c.add(part(&[2]), 0, 2);
        assert_eq!(c.to_string(), "2*s[2]");
        c.add(Partition::empty(), 1, -1);
        assert_eq!(c.to_string(), "2*s[2] - q");
    }

    #[test]
    fn json_keys() {
        let c = QuantumClass::monomial(part(&[1]), 1, 2);
        assert_eq!(serde_json::to_string(&c).unwrap(), r#"{"1|1":1}"#);
        let c = QuantumClass::monomial(Partition::empty(), 3, 3);
        assert_eq!(serde_json::to_string(&c).unwrap(), r#"{"|3":1}"#);
    }

    #[test]
    fn special_poly_arith() {
        let a = SpecialPoly::special(2);
        let b = &SpecialPoly::special(1);
        let mut p = a.mul(b);
        p.add_scaled(&SpecialPoly::monomial(vec![], 1, 1), -1);
        assert_eq!(p.to_string(), "-q + s2*s1");
        assert!(SpecialPoly::special(-1).is_zero());
        assert_eq!(SpecialPoly::special(0), SpecialPoly::one());
    }

    #[test]
    fn engine_names() {
        for e in Engine::ALL {
            assert_eq!(e.name().parse::<Engine>().unwrap(), e);
        }
        assert!("fast".parse::<Engine>().is_err());
    }
}
