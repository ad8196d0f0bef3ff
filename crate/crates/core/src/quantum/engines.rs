use std::sync::{Arc, OnceLock, RwLock};

use rustc_hash::FxHashMap;

use super::{Engine, QuantumClass, SpecialPoly};
use crate::classical::require_d;
use crate::error::{Error, Result};
use crate::partition::{dual, enumerate, grow_strips, prepend, shrink_strips, Partition};
use crate::polyring::{mul, pow2, Int};
use crate::qtilde::{structure_constants_in, working_vars};

type ProductMemo = RwLock<FxHashMap<(usize, Partition, Partition), Arc<QuantumClass>>>;

fn product_memo() -> &'static ProductMemo {
    static MEMO: OnceLock<ProductMemo> = OnceLock::new();
    MEMO.get_or_init(Default::default)
}

pub(crate) fn clear_memo() {
    product_memo().write().expect("memo lock").clear();
}

fn exact_half_power(c: Int, d: usize, what: impl FnOnce() -> String) -> Result<Int> {
    let p = pow2(d);
    if c % p != 0 {
        return Err(Error::NotDivisible(format!(
            "{} = {c} is not divisible by 2^{d}",
            what()
        )));
    }
    Ok(c / p)
}

/// `σ_λ σ_μ` from stable structure constants: the coefficient of `σ_ν q^d`
/// is `2^{-d} e(λ, μ; ((n+1)^d, ν))`, required to be a nonnegative integer.
pub fn qprod_constants(lambda: &Partition, mu: &Partition, n: usize) -> Result<QuantumClass> {
    qprod_constants_shared(lambda, mu, n).map(|c| c.as_ref().clone())
}

pub(crate) fn qprod_constants_shared(
    lambda: &Partition,
    mu: &Partition,
    n: usize,
) -> Result<Arc<QuantumClass>> {
    require_d(lambda, n)?;
    require_d(mu, n)?;
    let key = (n, lambda.clone(), mu.clone());
    if let Some(c) = product_memo().read().expect("memo lock").get(&key) {
        return Ok(c.clone());
    }
    let w = lambda.weight() + mu.weight();
    let e = structure_constants_in(lambda, mu, working_vars(w, n + 2))?;
    let mut out = QuantumClass::zero(n);
    for d in 0..=w / (n + 1) {
        let rest = w - d * (n + 1);
        for nu in enumerate(rest, n, true) {
            let key = prepend(n as u32 + 1, d, &nu)?;
            let c = e.get(&key);
            if c < 0 {
                return Err(Error::Falsified(format!(
                    "e({lambda},{mu};{key}) = {c} is negative"
                )));
            }
            let c = exact_half_power(c, d, || format!("e({lambda},{mu};{key})"))?;
            out.add(nu, d as u32, c);
        }
    }
    let value = Arc::new(out);
    let mut guard = product_memo().write().expect("memo lock");
    Ok(guard.entry(key).or_insert(value).clone())
}

/// `σ_λ σ_μ` through `Λ_{n+1}`: every part equal to `n + 1` of a key turns
/// into a factor `q / 2`; keys left non-strict vanish.
pub fn qprod_quotient(lambda: &Partition, mu: &Partition, n: usize) -> Result<QuantumClass> {
    require_d(lambda, n)?;
    require_d(mu, n)?;
    let e = structure_constants_in(lambda, mu, n + 1)?;
    let top = n as u32 + 1;
    let mut out = QuantumClass::zero(n);
    for (kappa, &c) in e.iter() {
        let d = kappa.parts().iter().take_while(|&&p| p == top).count();
        let rest = Partition::new(kappa.parts()[d..].to_vec())?;
        if !rest.in_d(n) {
            continue;
        }
        let c = exact_half_power(c, d, || {
            format!("coefficient of Q̃_{kappa} in Q̃_{lambda} Q̃_{mu}")
        })?;
        out.add(rest, d as u32, c);
    }
    Ok(out)
}

/// `σ_λ σ_k` by the quantum Pieri rule: classical horizontal strips `μ/λ`
/// inside `D_n` with weight `2^{N(λ,μ)}`, and `q`-terms from strips `λ/ν`
/// of size `n + 1 - k` with weight `2^{components - 1}`.
pub fn quantum_pieri_basis(lambda: &Partition, k: usize, n: usize) -> Result<QuantumClass> {
    require_d(lambda, n)?;
    if k > n {
        return Err(Error::Precondition(format!(
            "special class σ_{k} needs k ≤ n = {n}"
        )));
    }
    let mut out = QuantumClass::zero(n);
    for (mu, data) in grow_strips(lambda, k, Some(n as u32)) {
        if mu.is_strict() {
            out.add(mu, 0, pow2(data.components_off_first_column));
        }
    }
    for (nu, comps) in shrink_strips(lambda, n + 1 - k) {
        out.add(nu, 1, pow2(comps - 1));
    }
    Ok(out)
}

/// Linear extension of [`quantum_pieri_basis`].
pub fn quantum_pieri(x: &QuantumClass, k: usize) -> Result<QuantumClass> {
    let n = x.n();
    let mut out = QuantumClass::zero(n);
    for (lambda, d, c) in x.iter() {
        for (mu, e, v) in quantum_pieri_basis(lambda, k, n)?.iter() {
            out.add(mu.clone(), d + e, mul(c, v));
        }
    }
    Ok(out)
}

/// `σ_{i,j}` for `i > j ≥ 0` as a polynomial in special classes:
/// `σ_i σ_j + 2 Σ_{k=1}^{n-i} (-1)^k σ_{i+k} σ_{j-k} + (-1)^{n+1-i} σ_{i+j-n-1} q`.
fn two_row_special(i: u32, j: u32, n: usize) -> SpecialPoly {
    if j == 0 {
        return SpecialPoly::special(i as i64);
    }
    let (i, j, n) = (i as i64, j as i64, n as i64);
    let mut out = SpecialPoly::special(i).mul(&SpecialPoly::special(j));
    for k in 1..=n - i {
        let sign = if k % 2 == 0 { 2 } else { -2 };
        out.add_scaled(
            &SpecialPoly::special(i + k).mul(&SpecialPoly::special(j - k)),
            sign,
        );
    }
    let sign = if (n + 1 - i) % 2 == 0 { 1 } else { -1 };
    let low = i + j - n - 1;
    if low >= 0 {
        out.add_scaled(&SpecialPoly::monomial(vec![low as u32], 1, 1), sign);
    }
    out
}

fn giambelli_rec(
    lambda: &Partition,
    n: usize,
    memo: &mut FxHashMap<Partition, SpecialPoly>,
) -> SpecialPoly {
    if let Some(p) = memo.get(lambda) {
        return p.clone();
    }
    let value = if lambda.len() <= 2 {
        two_row_special(lambda.part(0), lambda.part(1), n)
    } else {
        let mut padded = lambda.parts().to_vec();
        if padded.len() % 2 == 1 {
            padded.push(0);
        }
        let r = padded.len();
        let last = padded[r - 1];
        let mut acc = SpecialPoly::zero();
        for (j, &v) in padded[..r - 1].iter().enumerate() {
            let rest = lambda.minus(&[v, last]).expect("parts present");
            let term = two_row_special(v, last, n).mul(&giambelli_rec(&rest, n, memo));
            acc.add_scaled(&term, if j % 2 == 0 { 1 } else { -1 });
        }
        acc
    };
    memo.insert(lambda.clone(), value.clone());
    value
}

/// `σ_μ` as a polynomial in `σ_1, …, σ_n, q`, by the two-row quantum
/// Giambelli formula and the Pfaffian expansion along the last column.
pub fn giambelli_special(mu: &Partition, n: usize) -> Result<SpecialPoly> {
    require_d(mu, n)?;
    Ok(giambelli_rec(mu, n, &mut FxHashMap::default()))
}

/// `σ_λ σ_μ` by evaluating the special-class expression of `σ_μ` on `σ_λ`,
/// one quantum Pieri step per factor, larger indices first.
pub fn qprod_pieri(lambda: &Partition, mu: &Partition, n: usize) -> Result<QuantumClass> {
    require_d(lambda, n)?;
    let poly = giambelli_special(mu, n)?;
    let mut out = QuantumClass::zero(n);
    for (indices, q, c) in poly.terms() {
        let mut class = QuantumClass::monomial(lambda.clone(), q, n);
        for &k in indices {
            class = quantum_pieri(&class, k as usize)?;
            if class.is_zero() {
                break;
            }
        }
        out.add_scaled(&class, c);
    }
    Ok(out)
}

/// `σ_λ σ_μ` with the chosen engine.
pub fn qprod(lambda: &Partition, mu: &Partition, n: usize, engine: Engine) -> Result<QuantumClass> {
    match engine {
        Engine::Constants => qprod_constants(lambda, mu, n),
        Engine::Quotient => qprod_quotient(lambda, mu, n),
        Engine::Pieri => qprod_pieri(lambda, mu, n),
    }
}

/// Three-point Gromov–Witten invariant `⟨σ_λ, σ_μ, σ_ν⟩_d`: the
/// coefficient of `σ_{ν'} q^d` in `σ_λ σ_μ`, zero off the degree
/// `|λ| + |μ| + |ν| = n(n+1)/2 + d(n+1)`.
pub fn gw(lambda: &Partition, mu: &Partition, nu: &Partition, d: usize, n: usize) -> Result<Int> {
    require_d(nu, n)?;
    if lambda.weight() + mu.weight() + nu.weight() != n * (n + 1) / 2 + d * (n + 1) {
        require_d(lambda, n)?;
        require_d(mu, n)?;
        return Ok(0);
    }
    Ok(qprod_constants_shared(lambda, mu, n)?.get(&dual(nu, n)?, d as u32))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::part;

    fn class(n: usize, terms: &[(&[u32], u32, Int)]) -> QuantumClass {
        let mut c = QuantumClass::zero(n);
        for &(p, d, v) in terms {
            c.add(part(p), d, v);
        }
        c
    }

    #[test]
    fn route_c_examples() {
        let r = part(&[3, 2, 1]);
        assert_eq!(
            qprod_constants(&r, &r, 3).unwrap(),
            class(3, &[(&[], 3, 1)])
        );
        assert_eq!(
            qprod_constants(&part(&[2]), &part(&[2]), 2).unwrap(),
            class(2, &[(&[1], 1, 1)])
        );
        assert_eq!(
            qprod_constants(&part(&[2]), &part(&[3, 1]), 3).unwrap(),
            class(3, &[(&[3, 2, 1], 0, 1), (&[2], 1, 2)])
        );
        assert!(qprod_constants(&part(&[3]), &part(&[1]), 2).is_err());
    }

    #[test]
    fn route_a_examples() {
        assert_eq!(
            qprod_quotient(&part(&[2]), &part(&[2]), 2).unwrap(),
            class(2, &[(&[1], 1, 1)])
        );
        assert_eq!(
            qprod_quotient(&part(&[2, 1]), &part(&[2]), 2).unwrap(),
            class(2, &[(&[2], 1, 1)])
        );
        assert_eq!(
            qprod_quotient(&part(&[1]), &part(&[1]), 2).unwrap(),
            class(2, &[(&[2], 0, 2)])
        );
    }

    #[test]
    fn quantum_pieri_examples() {
        assert_eq!(
            quantum_pieri_basis(&part(&[2, 1]), 2, 2).unwrap(),
            class(2, &[(&[2], 1, 1)])
        );
        assert_eq!(
            quantum_pieri_basis(&part(&[2]), 1, 2).unwrap(),
            class(2, &[(&[2, 1], 0, 1), (&[], 1, 1)])
        );
        assert_eq!(
            quantum_pieri_basis(&part(&[3, 1]), 2, 3).unwrap(),
            class(3, &[(&[3, 2, 1], 0, 1), (&[2], 1, 2)])
        );
        assert!(quantum_pieri_basis(&part(&[1]), 3, 2).is_err());
    }

    #[test]
    fn giambelli_examples() {
        let mut expect = SpecialPoly::special(2).mul(&SpecialPoly::special(1));
        expect.add_scaled(&SpecialPoly::monomial(vec![], 1, 1), -1);
        assert_eq!(giambelli_special(&part(&[2, 1]), 2).unwrap(), expect);
        assert_eq!(
            giambelli_special(&part(&[3]), 3).unwrap(),
            SpecialPoly::special(3)
        );

        let n = 3;
        let mut expect = SpecialPoly::special(3).mul(&two_row_special(2, 1, n));
        expect.add_scaled(&SpecialPoly::special(2).mul(&two_row_special(3, 1, n)), -1);
        expect.add_scaled(&SpecialPoly::special(1).mul(&two_row_special(3, 2, n)), 1);
        assert_eq!(giambelli_special(&part(&[3, 2, 1]), n).unwrap(), expect);
    }

    #[test]
    fn route_b_examples() {
        let r = part(&[2, 1]);
        assert_eq!(qprod_pieri(&r, &r, 2).unwrap(), class(2, &[(&[], 2, 1)]));
        assert_eq!(
            qprod_pieri(&part(&[2]), &r, 2).unwrap(),
            class(2, &[(&[2], 1, 1)])
        );
        assert_eq!(
            qprod_pieri(&part(&[1]), &part(&[1]), 2).unwrap(),
            class(2, &[(&[2], 0, 2)])
        );
    }

    #[test]
    fn gw_examples() {
        let r3 = part(&[3, 2, 1]);
        assert_eq!(gw(&r3, &r3, &r3, 3, 3).unwrap(), 1);
        let two = part(&[2]);
        assert_eq!(gw(&two, &two, &two, 1, 2).unwrap(), 1);
        let r2 = part(&[2, 1]);
        assert_eq!(gw(&r2, &r2, &r2, 2, 2).unwrap(), 1);
        assert_eq!(gw(&two, &two, &two, 0, 2).unwrap(), 0);
    }
}
