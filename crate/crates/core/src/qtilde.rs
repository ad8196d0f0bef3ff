//! The Q̃-polynomials `Q̃_λ ∈ Λ_m`, their basis expansions and the integer
//! structure constants `e(λ, μ; ν)`.
//!
//! `Q̃_{i,j}` is built directly from elementary generators; longer
//! partitions go through the last-column Laplace expansion of the Pfaffian,
//! memoized per partition. A polynomial `Q̃_λ` with `m ≥ |λ|` does not
//! depend on `m`, so the memo is keyed on `(min(m, |λ|), λ)`.

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock, RwLock};

use rustc_hash::FxHashMap;
use serde::ser::{Serialize, SerializeMap, Serializer};

use crate::error::{Error, Result};
use crate::partition::{enumerate, grow_strips, straighten, Partition};
use crate::polyring::{add, mul, mul_into, pow2, sum_of_products, EPoly, Int, XPoly};
use crate::report::CaseReport;

type QMemo = RwLock<FxHashMap<(usize, Partition), Arc<EPoly>>>;

fn qmemo() -> &'static QMemo {
    static MEMO: OnceLock<QMemo> = OnceLock::new();
    MEMO.get_or_init(Default::default)
}

/// `Q̃_{i,j} = e_i e_j + 2 Σ_{k=1}^{j} (-1)^k e_{i+k} e_{j-k}` in `Λ_m`.
pub fn qtilde_pair(i: u32, j: u32, m: usize) -> Result<EPoly> {
    if i < j {
        return Err(Error::Precondition(format!(
            "Q̃_{{{i},{j}}} needs i ≥ j; straighten first"
        )));
    }
    let mut terms = Vec::with_capacity(j as usize + 1);
    terms.push((Partition::from_unsorted(vec![i, j]), 1));
    for k in 1..=j {
        let c = if k % 2 == 0 { 2 } else { -2 };
        terms.push((Partition::from_unsorted(vec![i + k, j - k]), c));
    }
    Ok(EPoly::from_terms(m, terms))
}

/// Shared handle to `Q̃_λ` in `Λ_m`. The returned polynomial may be labelled
/// with a smaller variable count (`min(m, |λ|)`); it involves no generator
/// beyond that.
pub(crate) fn qtilde_shared(lambda: &Partition, m: usize) -> Arc<EPoly> {
    let eff = m.min(lambda.weight());
    let key = (eff, lambda.clone());
    if let Some(p) = qmemo().read().expect("memo lock").get(&key) {
        return p.clone();
    }
    let value = Arc::new(pfaffian(lambda, eff));
    let mut guard = qmemo().write().expect("memo lock");
    guard.entry(key).or_insert(value).clone()
}

fn pfaffian(lambda: &Partition, m: usize) -> EPoly {
    let parts = lambda.parts();
    if parts.len() <= 2 {
        return qtilde_pair(lambda.part(0), lambda.part(1), m).expect("sorted pair");
    }
    let mut padded = parts.to_vec();
    if padded.len() % 2 == 1 {
        padded.push(0);
    }
    let r = padded.len();
    let last = padded[r - 1];

    // Positions j < r-1 carrying equal parts give identical products with
    // alternating signs, so a run of equal parts contributes once if its
    // length is odd and not at all otherwise.
    let mut factors: Vec<(Int, Arc<EPoly>, Arc<EPoly>)> = Vec::new();
    let mut start = 0;
    while start < r - 1 {
        let v = padded[start];
        let mut end = start;
        while end + 1 < r - 1 && padded[end + 1] == v {
            end += 1;
        }
        if (end - start + 1) % 2 == 1 {
            let sign = if start % 2 == 0 { 1 } else { -1 };
            let pair = Arc::new(qtilde_pair(v, last, m).expect("sorted pair"));
            let rest = lambda.minus(&[v, last]).expect("parts present");
            factors.push((sign, pair, qtilde_shared(&rest, m)));
        }
        start = end + 1;
    }
    let refs: Vec<(Int, &EPoly, &EPoly)> = factors
        .iter()
        .map(|(s, a, b)| (*s, a.as_ref(), b.as_ref()))
        .collect();
    sum_of_products(&refs, m)
}

/// `Q̃_ν` in `Λ_m` for an arbitrary index sequence: straighten with sign,
/// zero if any entry is negative.
pub fn qtilde(nu: &[i64], m: usize) -> EPoly {
    let (sign, lambda) = straighten(nu);
    if sign == 0 {
        return EPoly::zero(m);
    }
    let p = qtilde_shared(&lambda, m).truncate(m);
    if sign < 0 {
        p.neg()
    } else {
        p
    }
}

/// `Q̃_λ` in `Λ_m` for a partition.
pub fn qtilde_of(lambda: &Partition, m: usize) -> EPoly {
    qtilde_shared(lambda, m).truncate(m)
}

/// Coordinates in the Q̃-basis of `Λ_m`: a finite map from partitions in
/// `E_m` to nonzero integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QExpansion {
    var_count: usize,
    coeffs: BTreeMap<Partition, Int>,
}

impl QExpansion {
    pub fn new(var_count: usize) -> Self {
        QExpansion {
            var_count,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn from_map(var_count: usize, coeffs: impl IntoIterator<Item = (Partition, Int)>) -> Self {
        let mut out = QExpansion::new(var_count);
        for (p, c) in coeffs {
            out.add(p, c);
        }
        out
    }

    pub fn var_count(&self) -> usize {
        self.var_count
    }

    pub fn get(&self, lambda: &Partition) -> Int {
        self.coeffs.get(lambda).copied().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &BTreeMap<Partition, Int> {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Partition, &Int)> {
        self.coeffs.iter()
    }

    pub fn add(&mut self, lambda: Partition, c: Int) {
        if c == 0 {
            return;
        }
        let slot = self.coeffs.entry(lambda.clone()).or_insert(0);
        *slot = add(*slot, c);
        if *slot == 0 {
            self.coeffs.remove(&lambda);
        }
    }

    /// Recombines `Σ c_λ Q̃_λ` as a polynomial in `Λ_m`.
    pub fn to_epoly(&self) -> EPoly {
        let mut acc = EPoly::zero(self.var_count);
        for (lambda, &c) in &self.coeffs {
            acc = &acc + &qtilde_of(lambda, self.var_count).scale(c);
        }
        acc
    }
}

impl Serialize for QExpansion {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.coeffs.len()))?;
        for (p, c) in &self.coeffs {
            map.serialize_entry(&p.key(), c)?;
        }
        map.end()
    }
}

/// Coordinates of `f` in `{Q̃_λ : λ ∈ E_m}`.
///
/// `Q̃_λ = e_λ + (terms strictly higher in dominance)`, so peeling off the
/// lexicographically smallest remaining monomial recovers one coordinate at
/// a time. Every pivot is checked to be `e_λ` with coefficient 1 and the
/// residual must vanish exactly.
pub fn expand_in_basis(f: &EPoly) -> Result<QExpansion> {
    let m = f.var_count();
    let mut residual: BTreeMap<Partition, Int> = f.terms().iter().cloned().collect();
    let mut out = QExpansion::new(m);
    while let Some((kappa, c)) = residual.iter().next().map(|(k, c)| (k.clone(), *c)) {
        let q = qtilde_shared(&kappa, m);
        match q.terms().first() {
            Some((lead, 1)) if *lead == kappa => {}
            other => {
                return Err(Error::Basis(format!(
                    "Q̃_{kappa} in Λ_{m} has leading term {other:?}, expected e_{kappa} with coefficient 1"
                )))
            }
        }
        for (mono, v) in q.terms() {
            let slot = residual.entry(mono.clone()).or_insert(0);
            *slot = add(*slot, mul(-c, *v));
            if *slot == 0 {
                residual.remove(mono);
            }
        }
        if residual.contains_key(&kappa) {
            return Err(Error::Basis(format!("pivot {kappa} did not clear")));
        }
        out.add(kappa, c);
    }
    Ok(out)
}

type SMemo = RwLock<FxHashMap<(Partition, Partition, usize), Arc<QExpansion>>>;

fn smemo() -> &'static SMemo {
    static MEMO: OnceLock<SMemo> = OnceLock::new();
    MEMO.get_or_init(Default::default)
}

pub(crate) fn clear_memos() {
    qmemo().write().expect("memo lock").clear();
    smemo().write().expect("memo lock").clear();
}

/// Stable structure constants `e(λ, μ; ν)`: the expansion of `Q̃_λ Q̃_μ` in
/// `Λ_m` with `m = max(1, |λ| + |μ|)`, large enough that no basis element is
/// truncated.
pub fn structure_constants(lambda: &Partition, mu: &Partition) -> Result<QExpansion> {
    let m = (lambda.weight() + mu.weight()).max(1);
    structure_constants_in(lambda, mu, m).map(|e| e.as_ref().clone())
}

/// Expansion of `Q̃_λ Q̃_μ` in `Λ_m`. Its coefficients agree with the stable
/// constants on every key in `E_m`.
pub fn structure_constants_in(
    lambda: &Partition,
    mu: &Partition,
    m: usize,
) -> Result<Arc<QExpansion>> {
    let key = (lambda.clone(), mu.clone(), m);
    if let Some(e) = smemo().read().expect("memo lock").get(&key) {
        return Ok(e.clone());
    }
    let a = qtilde_shared(lambda, m);
    let b = qtilde_shared(mu, m);
    let product = mul_into(&a, &b, m);
    let e = Arc::new(expand_in_basis(&product)?);
    let mut guard = smemo().write().expect("memo lock");
    Ok(guard.entry(key).or_insert(e).clone())
}

/// `Q̃_λ Q̃_k = Σ_μ 2^{N(λ,μ)} Q̃_μ` for strict `λ`, over horizontal strips
/// `μ/λ` of size `k`, `N` counting strip components off the first column.
pub fn pieri_strict(lambda: &Partition, k: usize) -> Result<QExpansion> {
    if !lambda.is_strict() {
        return Err(Error::NotStrict(lambda.clone()));
    }
    let m = (lambda.weight() + k).max(1);
    Ok(QExpansion::from_map(
        m,
        grow_strips(lambda, k, None)
            .into_iter()
            .map(|(mu, data)| (mu, pow2(data.components_off_first_column))),
    ))
}

/// `f(λ, μ; ν) = e(λ, μ; ν) / 2^{ℓ(λ)+ℓ(μ)-ℓ(ν)}`, required to be exact.
pub fn f_constant(lambda: &Partition, mu: &Partition, nu: &Partition) -> Result<Int> {
    let e = structure_constants_at(lambda, mu, nu)?;
    scale_to_f(e, lambda.len() + mu.len(), nu.len()).ok_or_else(|| {
        Error::NotDivisible(format!("e({lambda},{mu};{nu}) = {e} not divisible for f"))
    })
}

/// Products up to this weight are expanded in the full stable ring
/// `Λ_{|λ|+|μ|}`; heavier ones in the smallest ring holding the keys asked
/// for.
pub const STABLE_WEIGHT_LIMIT: usize = 30;

/// Variable count used for a product of weight `w` whose keys of interest
/// have parts at most `key_cap`. Truncation `Λ_M → Λ_m` is a ring map
/// fixing `Q̃_ν` for `ν_1 ≤ m` and killing the rest, so both choices give
/// the stable coefficients on those keys.
pub fn working_vars(w: usize, key_cap: usize) -> usize {
    if w <= STABLE_WEIGHT_LIMIT {
        w.max(1)
    } else {
        key_cap.clamp(1, w)
    }
}

/// The single coefficient `e(λ, μ; ν)`.
pub fn structure_constants_at(lambda: &Partition, mu: &Partition, nu: &Partition) -> Result<Int> {
    let w = lambda.weight() + mu.weight();
    if nu.weight() != w {
        return Ok(0);
    }
    let m = working_vars(w, nu.first() as usize);
    Ok(structure_constants_in(lambda, mu, m)?.get(nu))
}

fn scale_to_f(e: Int, num_len: usize, den_len: usize) -> Option<Int> {
    if num_len >= den_len {
        let p = pow2(num_len - den_len);
        (e % p == 0).then(|| e / p)
    } else {
        Some(mul(e, pow2(den_len - num_len)))
    }
}

/// `e_i(x_1^2, …, x_m^2)` as an x-polynomial.
fn elementary_in_squares(i: usize, m: usize) -> XPoly {
    let mut out = XPoly::zero(m);
    for mask in 0u32..(1 << m) {
        if mask.count_ones() as usize == i {
            let e = (0..m)
                .map(|b| if mask & (1 << b) != 0 { 2 } else { 0 })
                .collect();
            out = &out + &XPoly::monomial(e, 1);
        }
    }
    out
}

/// Checks the basic properties of the Q̃-family in `Λ_m` for partitions of
/// weight at most `wmax`:
///
/// * (a) `Q̃_λ = 0` when `λ_1 > m`;
/// * (b) basis round trips, both `Q̃_λ ↦ {λ: 1}` and `e_κ` recombined from
///   its coordinates;
/// * (c) `Q̃_{i,i} = e_i(x_1^2, …, x_m^2)` after x-expansion;
/// * (d) `Q̃_m Q̃_λ = Q̃_{(m,λ)}` for `λ ∈ E_m`;
/// * (e) `Q̃_{λ ∪ (i,i)} = Q̃_{i,i} Q̃_λ`.
pub fn verify_qtilde_properties(m: usize, wmax: usize) -> Result<Vec<CaseReport>> {
    if m == 0 {
        return Err(Error::Precondition("m must be positive".into()));
    }
    let mut out = Vec::new();
    let all: Vec<Partition> = (0..=wmax).flat_map(|w| enumerate(w, w, false)).collect();

    for lambda in all.iter().filter(|l| !l.in_e(m)) {
        let q = qtilde_of(lambda, m);
        out.push(
            CaseReport::new("qtilde-a")
                .lambda(lambda)
                .m(m)
                .outcome(q.is_zero(), || format!("Q̃ = {q:?}")),
        );
    }

    for lambda in all.iter().filter(|l| l.in_e(m)) {
        let q = qtilde_of(lambda, m);
        let case = CaseReport::new("qtilde-b-roundtrip").lambda(lambda).m(m);
        out.push(match expand_in_basis(&q) {
            Ok(x) => {
                let ok = x.len() == 1 && x.get(lambda) == 1;
                case.outcome(ok, || format!("expansion {:?}", x.coeffs()))
            }
            Err(e) => case.errored(e),
        });

        let mono = EPoly::from_terms(m, [(lambda.clone(), 1)]);
        let case = CaseReport::new("qtilde-b-span").lambda(lambda).m(m);
        out.push(match expand_in_basis(&mono) {
            Ok(x) => {
                let back = x.to_epoly();
                case.outcome(back == mono, || format!("recombined {back:?}"))
            }
            Err(e) => case.errored(e),
        });
    }

    for i in 1..=(wmax / 2).min(m) {
        let lhs = qtilde(&[i as i64, i as i64], m).to_xpoly()?;
        let rhs = elementary_in_squares(i, m);
        out.push(
            CaseReport::new("qtilde-c")
                .lambda(&Partition::from_unsorted(vec![i as u32, i as u32]))
                .m(m)
                .outcome(lhs == rhs, || format!("{lhs:?} vs {rhs:?}")),
        );
    }

    let qm = qtilde_of(&Partition::single(m as u32), m);
    for lambda in all.iter().filter(|l| l.in_e(m)) {
        let lhs = &qm * &qtilde_of(lambda, m);
        let rhs = qtilde_of(&lambda.union(&[m as u32]), m);
        out.push(
            CaseReport::new("qtilde-d")
                .lambda(lambda)
                .m(m)
                .outcome(lhs == rhs, || format!("{lhs:?} vs {rhs:?}")),
        );
    }

    for lambda in all.iter().filter(|l| l.in_e(m)) {
        for i in 1..=m as u32 {
            if lambda.weight() + 2 * i as usize > wmax {
                break;
            }
            let lhs = qtilde_of(&lambda.union(&[i, i]), m);
            let rhs = &qtilde(&[i as i64, i as i64], m) * &qtilde_of(lambda, m);
            out.push(
                CaseReport::new("qtilde-e")
                    .lambda(lambda)
                    .d(i as usize)
                    .m(m)
                    .outcome(lhs == rhs, || format!("i = {i}: {lhs:?} vs {rhs:?}")),
            );
        }
    }
    Ok(out)
}

/// `Q̃_λ(X) = Σ_k x_1^k Σ_μ Q̃_μ(X')` over compositions `μ` with
/// `λ_i - μ_i ∈ {0, 1}` and `|λ| - |μ| = k`, compared after x-expansion.
pub fn verify_extension_formula(lambda: &Partition, m: usize) -> Result<bool> {
    if m == 0 || m > 6 {
        return Err(Error::Precondition(format!(
            "extension formula checked for 1 ≤ m ≤ 6, got {m}"
        )));
    }
    let lhs = qtilde_of(lambda, m).to_xpoly()?;
    let x1 = XPoly::var(m, 1);
    let l = lambda.len();
    let mut rhs = XPoly::zero(m);
    for mask in 0u32..(1 << l) {
        let mu: Vec<i64> = (0..l)
            .map(|i| lambda.part(i) as i64 - ((mask >> i) & 1) as i64)
            .collect();
        let k = mask.count_ones();
        let q = qtilde(&mu, m - 1).to_xpoly_embedded(m, 1)?;
        rhs = &rhs + &(&x1.pow(k) * &q);
    }
    Ok(lhs == rhs)
}
