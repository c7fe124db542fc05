//! Cyclotomic polynomials and the per-order reduction context.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use super::int::Int;

/// Integer polynomial, coefficients from the constant term upwards.
pub type IntPoly = Vec<i64>;

/// Returns the `n`-th cyclotomic polynomial, the minimal polynomial of a
/// primitive `n`-th root of unity over the rationals.
///
/// Panics if `n == 0`.
pub fn cyclotomic_polynomial(n: u32) -> IntPoly {
    assert!(n >= 1, "cyclotomic polynomial needs n >= 1");
    context(n).phi_poly.clone()
}

fn compute_phi(n: u32) -> IntPoly {
    // x^n - 1 divided by Phi_d for every proper divisor d of n.
    let mut num: Vec<i64> = vec![0; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            let div = context(d).phi_poly.clone();
            num = exact_div_monic(&num, &div);
        }
    }
    num
}

/// Long division by a monic divisor; the remainder must vanish.
fn exact_div_monic(num: &[i64], div: &[i64]) -> Vec<i64> {
    let dn = div.len() - 1;
    let mut rem = num.to_vec();
    let qlen = num.len() - dn;
    let mut q = vec![0i64; qlen];
    for k in (0..qlen).rev() {
        let c = rem[k + dn];
        if c != 0 {
            q[k] = c;
            for (t, &dt) in div.iter().enumerate() {
                rem[k + t] = rem[k + t]
                    .checked_sub(c.checked_mul(dt).expect("cyclotomic coefficient overflow"))
                    .expect("cyclotomic coefficient overflow");
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    q
}

/// Everything needed to canonicalise elements of `Q(zeta_n)`.
#[derive(Debug)]
pub struct CycloContext {
    pub n: u32,
    pub phi: usize,
    pub phi_poly: IntPoly,
    /// Non-leading terms of Phi_n as (degree, coefficient), for reduction.
    lower_terms: Vec<(usize, Int)>,
    /// `x^k mod Phi_n` for `0 <= k < n`.
    powers: Vec<Vec<(usize, Int)>>,
}

impl CycloContext {
    fn build(n: u32) -> CycloContext {
        let phi_poly = if n == 1 { vec![-1, 1] } else { compute_phi(n) };
        let phi = phi_poly.len() - 1;
        let lower_terms: Vec<(usize, Int)> = phi_poly[..phi]
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (i, Int::from(c)))
            .collect();
        let mut ctx = CycloContext { n, phi, phi_poly, lower_terms, powers: Vec::new() };
        let mut powers = Vec::with_capacity(n as usize);
        let mut cur = vec![Int::ZERO; phi];
        cur[0] = Int::ONE;
        for _ in 0..n {
            powers.push(
                cur.iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(i, c)| (i, c.clone()))
                    .collect(),
            );
            let mut next = vec![Int::ZERO; phi + 1];
            for (i, c) in cur.iter().enumerate() {
                next[i + 1] = c.clone();
            }
            ctx.reduce(&mut next);
            cur = next;
        }
        ctx.powers = powers;
        ctx
    }

    /// Reduces a coefficient vector of any length modulo Phi_n in place,
    /// leaving exactly `phi` coefficients.
    pub fn reduce(&self, acc: &mut Vec<Int>) {
        let phi = self.phi;
        if acc.len() < phi {
            acc.resize(phi, Int::ZERO);
            return;
        }
        for k in (phi..acc.len()).rev() {
            if acc[k].is_zero() {
                continue;
            }
            let c = std::mem::replace(&mut acc[k], Int::ZERO);
            for (t, pt) in &self.lower_terms {
                acc[k - phi + t].sub_mul(&c, pt);
            }
        }
        acc.truncate(phi);
    }

    /// Canonical coefficients of `zeta_n^k`.
    pub fn power(&self, k: u64) -> &[(usize, Int)] {
        &self.powers[(k % self.n as u64) as usize]
    }
}

static CONTEXTS: OnceLock<RwLock<HashMap<u32, Arc<CycloContext>>>> = OnceLock::new();

/// Shared, lazily built context for order `n`.
pub fn context(n: u32) -> Arc<CycloContext> {
    assert!(n >= 1);
    let map = CONTEXTS.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(c) = map.read().unwrap().get(&n) {
        return c.clone();
    }
    // Built outside the lock: construction recurses into divisors.
    let ctx = Arc::new(CycloContext::build(n));
    map.write().unwrap().entry(n).or_insert(ctx).clone()
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_u64(b, a % b)
    }
}

pub fn lcm_u32(a: u32, b: u32) -> u32 {
    let g = gcd_u64(a as u64, b as u64);
    let l = a as u64 / g * b as u64;
    u32::try_from(l).expect("cyclotomic order overflow")
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut d: Vec<u64> = (1..=n).filter(|k| n % k == 0).collect();
    d.sort_unstable();
    d
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent oracle: x^n - 1 over the product of Phi_d, d | n, d < n,
    /// computed by naive polynomial multiplication then division.
    fn oracle_phi(n: u32) -> Vec<i64> {
        let mut prod: Vec<i64> = vec![1];
        for d in 1..n {
            if n % d == 0 {
                let p = oracle_phi(d);
                let mut out = vec![0i64; prod.len() + p.len() - 1];
                for (i, a) in prod.iter().enumerate() {
                    for (j, b) in p.iter().enumerate() {
                        out[i + j] += a * b;
                    }
                }
                prod = out;
            }
        }
        let mut num = vec![0i64; n as usize + 1];
        num[0] = -1;
        num[n as usize] = 1;
        exact_div_monic(&num, &prod)
    }

    #[test]
    fn small_cases() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
    }

    #[test]
    fn matches_product_oracle() {
        for n in 1..=40 {
            assert_eq!(cyclotomic_polynomial(n), oracle_phi(n), "n = {n}");
        }
    }

    #[test]
    fn degree_is_totient() {
        for n in [165u32, 660, 105, 12] {
            let totient = (1..=n).filter(|k| gcd_u64(*k as u64, n as u64) == 1).count();
            assert_eq!(cyclotomic_polynomial(n).len() - 1, totient);
        }
    }

    #[test]
    fn power_table_wraps() {
        let ctx = context(7);
        // zeta^7 = 1
        assert_eq!(ctx.power(7), &[(0usize, Int::ONE)][..]);
        // zeta^6 = -(1 + zeta + ... + zeta^5)
        assert_eq!(ctx.power(6).len(), 6);
        assert!(ctx.power(6).iter().all(|(_, c)| *c == Int::from(-1)));
    }
}
