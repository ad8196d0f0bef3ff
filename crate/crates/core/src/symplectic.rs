//! The polynomials `C'_λ = ∂_0 Q̃_λ` and `C''_λ = ∂_0 ∂'_1 ∂_0 Q̃_λ` and the
//! polynomial identities they satisfy.
//!
//! Everything here runs on explicit x-variable expansions, so the variable
//! count is capped at 6. `Q̃_ν(X')` and `Q̃_ν(X'')` are built in `Λ_{m-1}`
//! (resp. `Λ_{m-2}`) and expanded into `x_2, …` (resp. `x_3, …`).

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::polyring::{binomial, pow2, Int, XPoly};
use crate::qtilde::{qtilde, qtilde_of};

/// Largest variable count accepted by the verifiers in this module.
pub const MAX_VARS: usize = 6;

fn check_vars(m: usize, min: usize) -> Result<()> {
    if m < min || m > MAX_VARS {
        return Err(Error::Precondition(format!(
            "variable count must lie in {min}..={MAX_VARS}, got {m}"
        )));
    }
    Ok(())
}

/// `Q̃_ν(x_{offset+1}, …, x_m)` inside the ring of `m` variables.
pub fn qtilde_shifted(nu: &[i64], m: usize, offset: usize) -> Result<XPoly> {
    if offset > m {
        return Err(Error::Precondition(format!(
            "offset {offset} exceeds {m} variables"
        )));
    }
    qtilde(nu, m - offset).to_xpoly_embedded(m, offset)
}

/// `C'_λ = ∂_0 Q̃_λ(X)`.
pub fn c_prime(lambda: &Partition, m: usize) -> Result<XPoly> {
    check_vars(m, 1)?;
    if lambda.is_empty() {
        return Err(Error::Precondition("C' needs ℓ(λ) ≥ 1".into()));
    }
    qtilde_of(lambda, m).to_xpoly()?.ddiff0()
}

/// `C''_λ = ∂_0 ∂'_1 ∂_0 Q̃_λ(X)`.
pub fn c_double_prime(lambda: &Partition, m: usize) -> Result<XPoly> {
    check_vars(m, 2)?;
    if lambda.len() < 2 {
        return Err(Error::Precondition("C'' needs ℓ(λ) ≥ 2".into()));
    }
    qtilde_of(lambda, m)
        .to_xpoly()?
        .ddiff0()?
        .ddiff1prime()?
        .ddiff0()
}

/// Compositions `λ - δ` over all `δ ∈ {0, …, top}^ℓ`, with the number of
/// entries of `δ` equal to 1 and to 2.
fn lowered(lambda: &Partition, top: u32) -> Vec<(Vec<i64>, usize, usize)> {
    let l = lambda.len();
    let base = top as usize + 1;
    let mut out = Vec::with_capacity(base.pow(l as u32));
    for code in 0..base.pow(l as u32) {
        let mut c = code;
        let mut nu = Vec::with_capacity(l);
        let (mut ones, mut twos) = (0, 0);
        for i in 0..l {
            let delta = (c % base) as u32;
            c /= base;
            match delta {
                1 => ones += 1,
                2 => twos += 1,
                _ => {}
            }
            nu.push(lambda.part(i) as i64 - delta as i64);
        }
        out.push((nu, ones, twos));
    }
    out
}

/// `C'_λ = Σ_{k odd} x_1^{k-1} Σ_μ Q̃_μ(X')`, `μ` running over `λ - δ` with
/// `δ ∈ {0,1}^ℓ` and `|δ| = k`.
pub fn verify_cprime_expansion(lambda: &Partition, m: usize) -> Result<bool> {
    check_vars(m, 1)?;
    if !lambda.is_strict() {
        return Err(Error::NotStrict(lambda.clone()));
    }
    let lhs = c_prime(lambda, m)?;
    let x1 = XPoly::var(m, 1);
    let mut rhs = XPoly::zero(m);
    for (mu, k, _) in lowered(lambda, 1) {
        if k % 2 == 1 {
            rhs = &rhs + &(&x1.pow(k as u32 - 1) * &qtilde_shifted(&mu, m, 1)?);
        }
    }
    Ok(lhs == rhs)
}

/// `Σ_{j=1}^{r-1} (-1)^{j-1} F(λ_j, λ_r) F(λ ∖ {λ_j, λ_r})` with `λ` padded
/// by a zero to even length `r`.
fn pfaffian_row_sum(
    lambda: &Partition,
    m: usize,
    f: impl Fn(&Partition) -> Result<XPoly>,
) -> Result<XPoly> {
    let mut padded = lambda.parts().to_vec();
    if padded.len() % 2 == 1 {
        padded.push(0);
    }
    let r = padded.len();
    let last = padded[r - 1];
    let mut acc = XPoly::zero(m);
    for (j, &v) in padded[..r - 1].iter().enumerate() {
        let pair = f(&Partition::from_unsorted(vec![v, last]))?;
        let rest = f(&lambda.minus(&[v, last]).expect("parts present"))?;
        let term = &pair * &rest;
        acc = if j % 2 == 0 {
            &acc + &term
        } else {
            &acc - &term
        };
    }
    Ok(acc)
}

/// Row expansion of the Pfaffian of `C'`-entries vanishes for strict `λ`
/// of length at least 3.
pub fn verify_pfaffian_identity_prime(lambda: &Partition, m: usize) -> Result<bool> {
    check_vars(m, 1)?;
    if !lambda.is_strict() || lambda.len() < 3 {
        return Err(Error::Precondition(format!(
            "need strict λ with ℓ ≥ 3, got {lambda}"
        )));
    }
    Ok(pfaffian_row_sum(lambda, m, |p| c_prime(p, m))?.is_zero())
}

/// Row expansion of the Pfaffian of `C''`-entries vanishes for strict `λ`
/// of even length at least 4.
pub fn verify_pfaffian_identity_double_prime(lambda: &Partition, m: usize) -> Result<bool> {
    check_vars(m, 2)?;
    if !lambda.is_strict() || lambda.len() < 4 || lambda.len() % 2 == 1 {
        return Err(Error::Precondition(format!(
            "need strict λ of even length ≥ 4, got {lambda}"
        )));
    }
    Ok(pfaffian_row_sum(lambda, m, |p| c_double_prime(p, m))?.is_zero())
}

/// `m_{r,s}(x_1, x_2)`, the monomial symmetric polynomial in two variables.
pub fn monomial_symmetric(r: u32, s: u32, m: usize) -> XPoly {
    let mono = |a: u32, b: u32| {
        let mut e = vec![0; m];
        e[0] = a;
        e[1] = b;
        XPoly::monomial(e, 1)
    };
    if r == s {
        mono(r, s)
    } else {
        &mono(r, s) + &mono(s, r)
    }
}

/// The closed expansion of `C''_λ` in `m_{r,s}(x_1,x_2)` over `Q̃_ν(X'')`,
/// `ν` running over `λ - δ` with `δ ∈ {0,1,2}^ℓ` having `a` ones and `b`
/// twos, weighted by `binom(a-1, s+1-b)` with `a + 2b = r + s + 3`.
pub fn verify_lem2(lambda: &Partition, m: usize) -> Result<bool> {
    check_vars(m, 2)?;
    let l = lambda.len();
    if !lambda.is_strict() || l == 0 || l % 2 == 1 {
        return Err(Error::Precondition(format!(
            "need strict λ of even positive length, got {lambda}"
        )));
    }
    let lhs = c_double_prime(lambda, m)?;

    // s_ab[a][b] = Σ_{ν ∈ C(λ,a,b)} Q̃_ν(X'')
    let mut s_ab = vec![vec![XPoly::zero(m); l + 1]; l + 1];
    for (nu, a, b) in lowered(lambda, 2) {
        let q = qtilde_shifted(&nu, m, 2)?;
        if !q.is_zero() {
            s_ab[a][b] = &s_ab[a][b] + &q;
        }
    }

    let mut rhs = XPoly::zero(m);
    for r in (0..l).step_by(2) {
        for s in (0..=r).step_by(2) {
            let mut inner = XPoly::zero(m);
            let total = r + s + 3;
            #[allow(clippy::needless_range_loop)]
            for b in 0..=total / 2 {
                let a = total - 2 * b;
                if a > l || b > l || a + b > l {
                    continue;
                }
                let c = binomial(a as i64 - 1, s as i64 + 1 - b as i64);
                if c != 0 {
                    inner = &inner + &s_ab[a][b].scale(c);
                }
            }
            if !inner.is_zero() {
                rhs = &rhs + &(&monomial_symmetric(r as u32, s as u32, m) * &inner);
            }
        }
    }
    Ok(lhs == rhs)
}

/// `Σ_k (-1)^k 2^{p-k} binom(p,k) binom(2k, k-q)` equals
/// `(-1)^q binom(p, (p+q)/2)` when `p + q` is even and 0 otherwise.
pub fn dawson(p: u32, q: i64) -> bool {
    let p_i = p as i64;
    let mut lhs: Int = 0;
    for k in 0..=p_i {
        let term = pow2((p_i - k) as usize) * binomial(p_i, k) * binomial(2 * k, k - q);
        lhs += if k % 2 == 0 { term } else { -term };
    }
    let rhs = if (p_i + q).rem_euclid(2) == 0 {
        let c = binomial(p_i, (p_i + q) / 2);
        if q.rem_euclid(2) == 0 {
            c
        } else {
            -c
        }
    } else {
        0
    };
    lhs == rhs
}

/// The sequence `e_u = 1`, `e_k = binom(2k, k-u) - (2k / (v+2-k)) e_{k-1}`
/// for `u = (r-s)/2`, `v = (r+s)/2`; returns `e_{v+1}`.
pub fn binomial_recursion_tail(r: u32, s: u32) -> Result<Ratio<Int>> {
    if r < s || r % 2 == 1 || s % 2 == 1 {
        return Err(Error::Precondition(format!(
            "need even r ≥ s, got ({r},{s})"
        )));
    }
    let (u, v) = (((r - s) / 2) as Int, ((r + s) / 2) as Int);
    let mut e = Ratio::from_integer(1);
    for k in u + 1..=v + 1 {
        let b = Ratio::from_integer(binomial((2 * k) as i64, (k - u) as i64));
        e = b - Ratio::new(2 * k, v + 2 - k) * e;
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::{all_strict, part};

    fn shifted(nu: &[i64], m: usize, off: usize) -> XPoly {
        qtilde_shifted(nu, m, off).unwrap()
    }

    #[test]
    fn c_prime_examples() {
        assert_eq!(c_prime(&part(&[1]), 2).unwrap(), XPoly::one(2));
        // Q̃_1 Q̃_1 - Q̃_2 Q̃_0 at X'
        let expect = &(&shifted(&[1], 3, 1) * &shifted(&[1], 3, 1)) - &shifted(&[2], 3, 1);
        assert_eq!(c_prime(&part(&[2, 1]), 3).unwrap(), expect);
        assert!(c_prime(&part(&[1, 1]), 2).unwrap().is_zero());
        assert!(c_prime(&Partition::empty(), 2).is_err());
        assert!(c_prime(&part(&[1]), 7).is_err());
    }

    #[test]
    fn c_double_prime_examples() {
        assert_eq!(c_double_prime(&part(&[2, 1]), 3).unwrap(), XPoly::one(3));
        assert_eq!(
            c_double_prime(&part(&[3, 1]), 4).unwrap(),
            shifted(&[1], 4, 2)
        );
        assert!(verify_lem2(&part(&[2, 1]), 3).unwrap());
        assert!(c_double_prime(&part(&[2]), 3).is_err());
    }

    #[test]
    fn two_row_closed_forms() {
        for m in 2..=5 {
            for a in 1..=m as i64 {
                for b in 0..a {
                    let lam = Partition::from_unsorted(vec![a as u32, b as u32]);
                    let expect = &(&shifted(&[a - 1], m, 1) * &shifted(&[b], m, 1))
                        - &(&shifted(&[a], m, 1) * &shifted(&[b - 1], m, 1));
                    assert_eq!(c_prime(&lam, m).unwrap(), expect, "C' {lam} m={m}");
                    if b > 0 {
                        let expect = &(&shifted(&[a - 2], m, 2) * &shifted(&[b - 1], m, 2))
                            - &(&shifted(&[a - 1], m, 2) * &shifted(&[b - 2], m, 2));
                        assert_eq!(c_double_prime(&lam, m).unwrap(), expect, "C'' {lam} m={m}");
                    }
                }
            }
        }
    }

    #[test]
    fn c_double_prime_is_even_and_symmetric_in_x1_x2() {
        for lam in all_strict(4).into_iter().filter(|l| l.len() >= 2) {
            let c = c_double_prime(&lam, 4).unwrap();
            assert_eq!(c.s0(), c, "{lam}");
            assert_eq!(c.s1(), c, "{lam}");
            assert!(c.ddiff0().unwrap().is_zero());
            assert!(c_prime(&lam, 4).unwrap().ddiff0().unwrap().is_zero());
        }
    }

    #[test]
    fn identity_examples() {
        assert!(verify_cprime_expansion(&part(&[1]), 2).unwrap());
        assert!(verify_cprime_expansion(&part(&[2, 1]), 3).unwrap());
        assert!(verify_cprime_expansion(&part(&[3, 2, 1]), 4).unwrap());
        assert!(verify_pfaffian_identity_prime(&part(&[3, 2, 1]), 3).unwrap());
        assert!(verify_pfaffian_identity_prime(&part(&[4, 3, 1]), 4).unwrap());
        assert!(verify_pfaffian_identity_prime(&part(&[4, 3, 2, 1]), 4).unwrap());
        assert!(verify_pfaffian_identity_double_prime(&part(&[4, 3, 2, 1]), 4).unwrap());
        assert!(verify_pfaffian_identity_double_prime(&part(&[5, 4, 3, 2, 1]), 5).is_err());
        assert!(verify_lem2(&part(&[3, 2]), 4).unwrap());
    }

    #[test]
    fn dawson_examples() {
        assert!(dawson(0, 0));
        assert!(dawson(2, 0));
        assert!(dawson(3, 1));
        for p in 0..=12 {
            for q in -(p as i64 + 2)..=(p as i64 + 2) {
                assert!(dawson(p, q), "p={p} q={q}");
            }
        }
    }

    #[test]
    fn recursion_tail_vanishes() {
        for r in (0..=20).step_by(2) {
            for s in (0..=r).step_by(2) {
                if r + s <= 20 {
                    assert_eq!(
                        binomial_recursion_tail(r, s).unwrap(),
                        Ratio::from_integer(0),
                        "r={r} s={s}"
                    );
                }
            }
        }
        assert!(binomial_recursion_tail(1, 0).is_err());
    }
}
