//! Elements of the cyclotomic field `Q(zeta_n)` in canonical form.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::int::Int;
use super::poly::{context, divisors, gcd_u64, lcm_u32, CycloContext};
use super::Rational;
use crate::error::{Error, Result};

/// `sum_k (num[k] / den) * zeta_n^k` for `0 <= k < phi(n)`, i.e. the residue
/// modulo the `n`-th cyclotomic polynomial. Two elements of the same order are
/// equal iff their representations are identical.
#[derive(Clone)]
pub struct Cyclotomic {
    order: u32,
    num: Vec<Int>,
    den: Int,
}

impl Cyclotomic {
    pub fn zero(order: u32) -> Cyclotomic {
        let ctx = context(order);
        Cyclotomic { order, num: vec![Int::ZERO; ctx.phi], den: Int::ONE }
    }

    pub fn one(order: u32) -> Cyclotomic {
        Cyclotomic::from_int(order, Int::ONE)
    }

    pub fn from_int(order: u32, v: Int) -> Cyclotomic {
        let mut c = Cyclotomic::zero(order);
        c.num[0] = v;
        c
    }

    pub fn from_i64(order: u32, v: i64) -> Cyclotomic {
        Cyclotomic::from_int(order, Int::from(v))
    }

    pub fn from_rational(order: u32, r: &Rational) -> Cyclotomic {
        let mut c = Cyclotomic::zero(order);
        c.num[0] = Int::from(r.numer().clone());
        c.den = Int::from(r.denom().clone());
        c.normalize();
        c
    }

    /// `zeta_order^k` (negative `k` allowed).
    pub fn zeta_pow(order: u32, k: i64) -> Cyclotomic {
        let ctx = context(order);
        let kk = k.rem_euclid(order as i64) as u64;
        let mut c = Cyclotomic::zero(order);
        for (i, v) in ctx.power(kk) {
            c.num[*i] = v.clone();
        }
        c
    }

    /// Builds `sum coeff * zeta^k` from arbitrary exponents (reduced mod n).
    pub fn from_terms<'a, I>(order: u32, terms: I) -> Cyclotomic
    where
        I: IntoIterator<Item = (i64, &'a Rational)>,
    {
        let mut acc = Cyclotomic::zero(order);
        for (k, r) in terms {
            let t = Cyclotomic::zeta_pow(order, k).scale_rational(r);
            acc = acc.add(&t);
        }
        acc
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    fn ctx(&self) -> Arc<CycloContext> {
        context(self.order)
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -&self.den;
            for c in self.num.iter_mut() {
                *c = -&*c;
            }
        }
        if self.num.iter().all(Int::is_zero) {
            self.den = Int::ONE;
            return;
        }
        if self.den.is_one() {
            return;
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                return;
            }
            if !c.is_zero() {
                g = g.gcd(c);
            }
        }
        if !g.is_one() {
            self.den = self.den.div_exact(&g);
            for c in self.num.iter_mut() {
                if !c.is_zero() {
                    *c = c.div_exact(&g);
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Int::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(Int::is_zero)
    }

    /// Number of nonzero basis coefficients.
    pub fn support_len(&self) -> usize {
        self.num.iter().filter(|c| !c.is_zero()).count()
    }

    /// The rational value if the element lies in `Q`.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.num[1..].iter().all(Int::is_zero) {
            Some(Rational::new(self.num[0].to_bigint(), self.den.to_bigint()))
        } else {
            None
        }
    }

    /// Canonical nonzero coefficients as `(exponent, value)`.
    pub fn coeffs(&self) -> Vec<(usize, Rational)> {
        self.num
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k, Rational::new(c.to_bigint(), self.den.to_bigint())))
            .collect()
    }

    /// Embeds into `Q(zeta_m)`; `order` must divide `m`.
    pub fn promote(&self, m: u32) -> Cyclotomic {
        if m == self.order {
            return self.clone();
        }
        assert!(m % self.order == 0, "cannot embed Q(zeta_{}) into Q(zeta_{m})", self.order);
        let step = (m / self.order) as u64;
        let target = context(m);
        let mut num = vec![Int::ZERO; target.phi];
        for (k, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (i, v) in target.power(k as u64 * step) {
                num[*i].add_mul(c, v);
            }
        }
        let mut out = Cyclotomic { order: m, num, den: self.den.clone() };
        out.normalize();
        out
    }

    fn common(a: &Cyclotomic, b: &Cyclotomic) -> (Cyclotomic, Cyclotomic) {
        let m = lcm_u32(a.order, b.order);
        (a.promote(m), b.promote(m))
    }

    pub fn add(&self, other: &Cyclotomic) -> Cyclotomic {
        if other.is_zero() && self.order % other.order == 0 {
            return self.clone();
        }
        if self.is_zero() && other.order % self.order == 0 {
            return other.clone();
        }
        if self.order != other.order {
            let (a, b) = Cyclotomic::common(self, other);
            return a.add(&b);
        }
        let mut out = if self.den == other.den {
            let num = self.num.iter().zip(&other.num).map(|(a, b)| a + b).collect();
            Cyclotomic { order: self.order, num, den: self.den.clone() }
        } else {
            let num = self
                .num
                .iter()
                .zip(&other.num)
                .map(|(a, b)| &(a * &other.den) + &(b * &self.den))
                .collect();
            Cyclotomic { order: self.order, num, den: &self.den * &other.den }
        };
        out.normalize();
        out
    }

    pub fn neg(&self) -> Cyclotomic {
        Cyclotomic { order: self.order, num: self.num.iter().map(|c| -c).collect(), den: self.den.clone() }
    }

    pub fn sub(&self, other: &Cyclotomic) -> Cyclotomic {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Cyclotomic) -> Cyclotomic {
        if self.order != other.order {
            if self.is_zero() || other.is_zero() {
                return Cyclotomic::zero(lcm_u32(self.order, other.order));
            }
            let (a, b) = Cyclotomic::common(self, other);
            return a.mul(&b);
        }
        let ctx = self.ctx();
        let phi = ctx.phi;
        let mut acc = vec![Int::ZERO; 2 * phi - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.num.iter().enumerate() {
                if !b.is_zero() {
                    acc[i + j].add_mul(a, b);
                }
            }
        }
        ctx.reduce(&mut acc);
        let mut out = Cyclotomic { order: self.order, num: acc, den: &self.den * &other.den };
        out.normalize();
        out
    }

    pub fn scale_rational(&self, r: &Rational) -> Cyclotomic {
        let rn = Int::from(r.numer().clone());
        let rd = Int::from(r.denom().clone());
        let mut out = Cyclotomic {
            order: self.order,
            num: self.num.iter().map(|c| c * &rn).collect(),
            den: &self.den * &rd,
        };
        out.normalize();
        out
    }

    /// Applies the field automorphism `zeta -> zeta^k`, `gcd(k, n) = 1`.
    pub fn galois(&self, k: u64) -> Cyclotomic {
        let ctx = self.ctx();
        let n = self.order as u64;
        debug_assert_eq!(gcd_u64(k % n.max(1), n), 1);
        let mut num = vec![Int::ZERO; ctx.phi];
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (t, v) in ctx.power(i as u64 * k) {
                num[*t].add_mul(c, v);
            }
        }
        let mut out = Cyclotomic { order: self.order, num, den: self.den.clone() };
        out.normalize();
        out
    }

    /// Complex conjugation, `zeta -> zeta^(n-1)`.
    pub fn conj(&self) -> Cyclotomic {
        if self.order <= 2 {
            return self.clone();
        }
        self.galois(self.order as u64 - 1)
    }

    pub fn inv(&self) -> Result<Cyclotomic> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(Cyclotomic::from_rational(self.order, &(Rational::one() / r)));
        }
        // Fast path: |a|^2 rational, true for every unit-modulus element.
        let c = self.conj();
        if let Some(norm2) = self.mul(&c).as_rational() {
            return Ok(c.scale_rational(&(Rational::one() / norm2)));
        }
        // Product of the other Galois conjugates over the field norm.
        let n = self.order as u64;
        let mut prod = Cyclotomic::one(self.order);
        for k in 2..n {
            if gcd_u64(k, n) == 1 {
                prod = prod.mul(&self.galois(k));
            }
        }
        let norm = self
            .mul(&prod)
            .as_rational()
            .expect("field norm of a cyclotomic is rational");
        Ok(prod.scale_rational(&(Rational::one() / norm)))
    }

    pub fn pow(&self, e: u64) -> Cyclotomic {
        let mut base = self.clone();
        let mut acc = Cyclotomic::one(self.order);
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn powi(&self, e: i64) -> Result<Cyclotomic> {
        if e >= 0 {
            Ok(self.pow(e as u64))
        } else {
            Ok(self.inv()?.pow(e.unsigned_abs()))
        }
    }

    /// Least `m` with `a^m = 1`, if any. Roots of unity in `Q(zeta_n)` have
    /// order dividing `lcm(2, n)`.
    pub fn multiplicative_order(&self) -> Option<u64> {
        if self.is_zero() {
            return None;
        }
        let l = lcm_u32(2, self.order) as u64;
        if !self.pow(l).is_one() {
            return None;
        }
        divisors(l).into_iter().find(|&m| self.pow(m).is_one())
    }

    /// Writes a root of unity as `zeta_L^k` with `L = lcm(2, n)`.
    pub fn root_of_unity_log(&self) -> Option<(u32, u64)> {
        self.multiplicative_order()?;
        let l = lcm_u32(2, self.order);
        let a = self.promote(l);
        if !a.den.is_one() {
            return None;
        }
        let ctx = context(l);
        (0..l as u64).find(|&k| {
            let mut v = vec![Int::ZERO; ctx.phi];
            for (i, c) in ctx.power(k) {
                v[*i] = c.clone();
            }
            v == a.num
        })
        .map(|k| (l, k))
    }

    /// Cheap exact equality with a rational.
    pub fn equals_rational(&self, r: &Rational) -> bool {
        match self.as_rational() {
            Some(v) => &v == r,
            None => false,
        }
    }

    pub fn denominator(&self) -> BigInt {
        self.den.to_bigint()
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Cyclotomic) -> bool {
        if self.order == other.order {
            return self.den == other.den && self.num == other.num;
        }
        let (a, b) = Cyclotomic::common(self, other);
        a.den == b.den && a.num == b.num
    }
}

impl Eq for Cyclotomic {}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.coeffs();
        if terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in terms {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            if k == 0 {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                if k == 1 {
                    write!(f, "z{}", self.order)?;
                } else {
                    write!(f, "z{}^{k}", self.order)?;
                }
            }
        }
        Ok(())
    }
}

impl Zero for Cyclotomic {
    fn zero() -> Cyclotomic {
        Cyclotomic::zero(1)
    }
    fn is_zero(&self) -> bool {
        Cyclotomic::is_zero(self)
    }
}

impl std::ops::Add for Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: Cyclotomic) -> Cyclotomic {
        Cyclotomic::add(&self, &rhs)
    }
}
