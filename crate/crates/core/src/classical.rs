//! The classical ring `H*(LG(n, 2n))`.
//!
//! `Λ_n → H*(LG)` sends `Q̃_λ ↦ σ_λ` for `λ ∈ D_n` and kills the rest: keys
//! with a part above `n` are already zero in `Λ_n`, and a non-strict key
//! factors through some `Q̃_{i,i}`, which lies in the kernel.

use std::collections::BTreeMap;

use serde::ser::{Serialize, SerializeMap, SerializeStruct, Serializer};

use crate::error::{Error, Result};
use crate::partition::{dual, Partition};
use crate::polyring::{add, mul, Int};
use crate::qtilde::{structure_constants, QExpansion};

/// A class in `H*(LG(n, 2n))` in the Schubert basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohClass {
    n: usize,
    coeffs: BTreeMap<Partition, Int>,
}

impl CohClass {
    pub fn zero(n: usize) -> Self {
        CohClass {
            n,
            coeffs: BTreeMap::new(),
        }
    }

    /// The Schubert class `σ_λ`.
    pub fn basis(lambda: &Partition, n: usize) -> Result<Self> {
        require_d(lambda, n)?;
        let mut c = CohClass::zero(n);
        c.add(lambda.clone(), 1);
        Ok(c)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &BTreeMap<Partition, Int> {
        &self.coeffs
    }

    pub fn get(&self, lambda: &Partition) -> Int {
        self.coeffs.get(lambda).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub(crate) fn add(&mut self, lambda: Partition, c: Int) {
        if c == 0 {
            return;
        }
        let slot = self.coeffs.entry(lambda.clone()).or_insert(0);
        *slot = add(*slot, c);
        if *slot == 0 {
            self.coeffs.remove(&lambda);
        }
    }

    pub(crate) fn add_scaled(&mut self, other: &CohClass, k: Int) {
        for (p, &c) in &other.coeffs {
            self.add(p.clone(), mul(c, k));
        }
    }

    /// Product with another class, extended bilinearly from
    /// [`classical_product`].
    pub fn mul(&self, other: &CohClass) -> Result<CohClass> {
        let mut out = CohClass::zero(self.n);
        for (a, &ca) in &self.coeffs {
            for (b, &cb) in &other.coeffs {
                out.add_scaled(&classical_product(a, b, self.n)?, mul(ca, cb));
            }
        }
        Ok(out)
    }
}

impl Serialize for CohClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        struct Coeffs<'a>(&'a BTreeMap<Partition, Int>);
        impl Serialize for Coeffs<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                let mut map = s.serialize_map(Some(self.0.len()))?;
                for (p, c) in self.0 {
                    map.serialize_entry(&p.key(), c)?;
                }
                map.end()
            }
        }
        let mut st = s.serialize_struct("CohClass", 2)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("coeffs", &Coeffs(&self.coeffs))?;
        st.end()
    }
}

pub(crate) fn require_d(lambda: &Partition, n: usize) -> Result<()> {
    if lambda.in_d(n) {
        Ok(())
    } else {
        Err(Error::NotInD {
            lambda: lambda.clone(),
            n,
        })
    }
}

/// Image of a Q̃-expansion in `H*(LG(n, 2n))`: keys in `D_n` survive
/// unchanged, all others vanish.
pub fn reduce_to_lg(x: &QExpansion, n: usize) -> CohClass {
    let mut out = CohClass::zero(n);
    for (p, &c) in x.iter() {
        if p.in_d(n) {
            out.add(p.clone(), c);
        }
    }
    out
}

/// `σ_λ σ_μ` in `H*(LG(n, 2n))`.
pub fn classical_product(lambda: &Partition, mu: &Partition, n: usize) -> Result<CohClass> {
    require_d(lambda, n)?;
    require_d(mu, n)?;
    if lambda.weight() + mu.weight() > n * (n + 1) / 2 {
        return Ok(CohClass::zero(n));
    }
    Ok(reduce_to_lg(&structure_constants(lambda, mu)?, n))
}

/// Coefficient of the point class `σ_{ρ_n}`.
pub fn integral(x: &CohClass) -> Int {
    x.get(&Partition::rho(x.n))
}

/// `∫ σ_λ σ_μ σ_ν` over `LG(n, 2n)`.
pub fn triple_number(lambda: &Partition, mu: &Partition, nu: &Partition, n: usize) -> Result<Int> {
    require_d(nu, n)?;
    if lambda.weight() + mu.weight() + nu.weight() != n * (n + 1) / 2 {
        return Ok(0);
    }
    let prod = classical_product(lambda, mu, n)?;
    // σ_κ σ_ν integrates to δ_{κ, ν'}
    Ok(prod.get(&dual(nu, n)?))
}

/// `σ_λ = Σ_{j<r} (-1)^{j-1} σ_{λ_j, λ_r} σ_{λ ∖ {λ_j, λ_r}}` with `λ`
/// padded by a zero to even length `r`, for `ℓ(λ) ≥ 3`.
pub fn giambelli_check(lambda: &Partition, n: usize) -> Result<bool> {
    require_d(lambda, n)?;
    if lambda.len() < 3 {
        return Err(Error::Precondition(format!(
            "Pfaffian expansion needs ℓ(λ) ≥ 3, got {lambda}"
        )));
    }
    let mut padded = lambda.parts().to_vec();
    if padded.len() % 2 == 1 {
        padded.push(0);
    }
    let r = padded.len();
    let last = padded[r - 1];
    let mut acc = CohClass::zero(n);
    for (j, &v) in padded[..r - 1].iter().enumerate() {
        let pair = Partition::from_unsorted(vec![v, last]);
        let rest = lambda.minus(&[v, last]).expect("parts present");
        let sign = if j % 2 == 0 { 1 } else { -1 };
        acc.add_scaled(&classical_product(&pair, &rest, n)?, sign);
    }
    Ok(acc == CohClass::basis(lambda, n)?)
}
