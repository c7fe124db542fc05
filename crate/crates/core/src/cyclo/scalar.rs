//! Cyclotomic numbers extended by formal unit-modulus phase symbols.
//!
//! A symbol `t` behaves like `exp(i*alpha)` for an `alpha` that makes it
//! transcendental: `conj(t) = t^-1` and no nonzero Laurent polynomial in the
//! symbols vanishes. Sums of differently phased terms are kept as a finite
//! Laurent polynomial with cyclotomic coefficients.

use std::collections::BTreeMap;
use std::fmt;

use super::cyclotomic::Cyclotomic;
use super::Rational;
use crate::error::{Error, Result};

/// Product of symbol powers, sorted by name, zero exponents removed.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<(String, i64)>);

impl Monomial {
    pub fn symbol(name: &str, exp: i64) -> Monomial {
        if exp == 0 {
            Monomial::default()
        } else {
            Monomial(vec![(name.to_string(), exp)])
        }
    }

    pub fn from_map(map: &BTreeMap<String, i64>) -> Monomial {
        Monomial(map.iter().filter(|(_, &e)| e != 0).map(|(k, &e)| (k.clone(), e)).collect())
    }

    pub fn is_trivial(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponents(&self) -> &[(String, i64)] {
        &self.0
    }

    pub fn exponent_of(&self, name: &str) -> i64 {
        self.0.iter().find(|(n, _)| n == name).map_or(0, |(_, e)| *e)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut map: BTreeMap<String, i64> = self.0.iter().cloned().collect();
        for (k, e) in &other.0 {
            *map.entry(k.clone()).or_insert(0) += e;
        }
        Monomial::from_map(&map)
    }

    pub fn inv(&self) -> Monomial {
        Monomial(self.0.iter().map(|(k, e)| (k.clone(), -e)).collect())
    }

    fn without(&self, name: &str) -> Monomial {
        Monomial(self.0.iter().filter(|(n, _)| n != name).cloned().collect())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (k, e)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{k}")?;
            } else {
                write!(f, "{k}^{e}")?;
            }
        }
        Ok(())
    }
}

/// The universal scalar: `base + sum_m coeff_m * m` over nontrivial monomials.
#[derive(Clone)]
pub struct PhasedScalar {
    base: Cyclotomic,
    phased: Vec<(Monomial, Cyclotomic)>,
}

impl PhasedScalar {
    pub fn zero() -> PhasedScalar {
        PhasedScalar::from(Cyclotomic::zero(1))
    }

    pub fn one() -> PhasedScalar {
        PhasedScalar::from(Cyclotomic::one(1))
    }

    pub fn from_i64(v: i64) -> PhasedScalar {
        PhasedScalar::from(Cyclotomic::from_i64(1, v))
    }

    pub fn rational(r: &Rational) -> PhasedScalar {
        PhasedScalar::from(Cyclotomic::from_rational(1, r))
    }

    /// `zeta_n^k`.
    pub fn zeta(n: u32, k: i64) -> PhasedScalar {
        PhasedScalar::from(Cyclotomic::zeta_pow(n, k))
    }

    /// `coeff * monomial`.
    pub fn term(coeff: Cyclotomic, monomial: Monomial) -> PhasedScalar {
        if monomial.is_trivial() {
            return PhasedScalar::from(coeff);
        }
        let mut s = PhasedScalar::zero();
        if !coeff.is_zero() {
            s.phased.push((monomial, coeff));
        }
        s
    }

    /// The formal symbol `name` itself.
    pub fn symbol(name: &str) -> PhasedScalar {
        PhasedScalar::term(Cyclotomic::one(1), Monomial::symbol(name, 1))
    }

    fn from_map(base: Cyclotomic, map: BTreeMap<Monomial, Cyclotomic>) -> PhasedScalar {
        let phased = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        PhasedScalar { base, phased }
    }

    /// All terms including the constant one, constant term first.
    pub fn terms(&self) -> Vec<(Monomial, Cyclotomic)> {
        let mut out = Vec::with_capacity(self.phased.len() + 1);
        if !self.base.is_zero() {
            out.push((Monomial::default(), self.base.clone()));
        }
        out.extend(self.phased.iter().cloned());
        out
    }

    pub fn has_symbols(&self) -> bool {
        !self.phased.is_empty()
    }

    /// The value as a plain cyclotomic, if no symbol occurs.
    pub fn as_cyclotomic(&self) -> Option<&Cyclotomic> {
        if self.phased.is_empty() {
            Some(&self.base)
        } else {
            None
        }
    }

    pub fn as_rational(&self) -> Option<Rational> {
        self.as_cyclotomic().and_then(Cyclotomic::as_rational)
    }

    /// Largest cyclotomic order among the coefficients.
    pub fn order(&self) -> u32 {
        self.phased
            .iter()
            .fold(self.base.order(), |acc, (_, c)| super::poly::lcm_u32(acc, c.order()))
    }

    /// Number of nonzero basis coefficients over all terms.
    pub fn support_len(&self) -> usize {
        self.base.support_len() + self.phased.iter().map(|(_, c)| c.support_len()).sum::<usize>()
    }

    pub fn is_zero(&self) -> bool {
        self.base.is_zero() && self.phased.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.phased.is_empty() && self.base.is_one()
    }

    pub fn add(&self, other: &PhasedScalar) -> PhasedScalar {
        let base = self.base.add(&other.base);
        if self.phased.is_empty() && other.phased.is_empty() {
            return PhasedScalar { base, phased: Vec::new() };
        }
        let mut map: BTreeMap<Monomial, Cyclotomic> = self.phased.iter().cloned().collect();
        for (m, c) in &other.phased {
            let e = map.entry(m.clone()).or_insert_with(|| Cyclotomic::zero(1));
            *e = e.add(c);
        }
        PhasedScalar::from_map(base, map)
    }

    pub fn neg(&self) -> PhasedScalar {
        PhasedScalar {
            base: self.base.neg(),
            phased: self.phased.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &PhasedScalar) -> PhasedScalar {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &PhasedScalar) -> PhasedScalar {
        if self.phased.is_empty() && other.phased.is_empty() {
            return PhasedScalar { base: self.base.mul(&other.base), phased: Vec::new() };
        }
        let mut base = Cyclotomic::zero(1);
        let mut map: BTreeMap<Monomial, Cyclotomic> = BTreeMap::new();
        for (ma, ca) in self.terms() {
            for (mb, cb) in other.terms() {
                let m = ma.mul(&mb);
                let c = ca.mul(&cb);
                if m.is_trivial() {
                    base = base.add(&c);
                } else {
                    let e = map.entry(m).or_insert_with(|| Cyclotomic::zero(1));
                    *e = e.add(&c);
                }
            }
        }
        PhasedScalar::from_map(base, map)
    }

    pub fn mul_cyclotomic(&self, c: &Cyclotomic) -> PhasedScalar {
        PhasedScalar {
            base: self.base.mul(c),
            phased: self
                .phased
                .iter()
                .map(|(m, x)| (m.clone(), x.mul(c)))
                .filter(|(_, x)| !x.is_zero())
                .collect(),
        }
    }

    pub fn scale_rational(&self, r: &Rational) -> PhasedScalar {
        PhasedScalar {
            base: self.base.scale_rational(r),
            phased: self
                .phased
                .iter()
                .map(|(m, x)| (m.clone(), x.scale_rational(r)))
                .filter(|(_, x)| !x.is_zero())
                .collect(),
        }
    }

    /// Complex conjugation; symbols map to their inverses.
    pub fn conj(&self) -> PhasedScalar {
        let map = self.phased.iter().map(|(m, c)| (m.inv(), c.conj())).collect();
        PhasedScalar::from_map(self.base.conj(), map)
    }

    /// Multiplicative inverse. Defined for nonzero cyclotomics and for single
    /// phased monomials; other Laurent polynomials are not units.
    pub fn inv(&self) -> Result<PhasedScalar> {
        if self.phased.is_empty() {
            return Ok(PhasedScalar::from(self.base.inv()?));
        }
        if self.base.is_zero() && self.phased.len() == 1 {
            let (m, c) = &self.phased[0];
            return Ok(PhasedScalar::term(c.inv()?, m.inv()));
        }
        Err(Error::NotInvertible(self.to_string()))
    }

    pub fn div(&self, other: &PhasedScalar) -> Result<PhasedScalar> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, e: u64) -> PhasedScalar {
        if self.phased.is_empty() {
            return PhasedScalar::from(self.base.pow(e));
        }
        let mut acc = PhasedScalar::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn powi(&self, e: i64) -> Result<PhasedScalar> {
        if e >= 0 {
            Ok(self.pow(e as u64))
        } else {
            Ok(self.inv()?.pow(e.unsigned_abs()))
        }
    }

    /// `a * conj(a) == 1`, decided exactly.
    pub fn is_unit_modulus(&self) -> bool {
        self.mul(&self.conj()).is_one()
    }

    /// Least `m` with `a^m = 1`. Any occurrence of a formal symbol makes the
    /// answer `None`: such a phase is never of finite order.
    pub fn root_of_unity_order(&self) -> Result<Option<u64>> {
        if self.is_zero() {
            return Err(Error::ZeroNotAllowed("root-of-unity test"));
        }
        match self.as_cyclotomic() {
            Some(c) => Ok(c.multiplicative_order()),
            None => Ok(None),
        }
    }

    /// Replaces the symbol `name` by `value` (which must be invertible if a
    /// negative power occurs).
    pub fn substitute(&self, name: &str, value: &PhasedScalar) -> Result<PhasedScalar> {
        let mut acc = PhasedScalar::from(self.base.clone());
        for (m, c) in &self.phased {
            let e = m.exponent_of(name);
            let rest = PhasedScalar::term(c.clone(), m.without(name));
            acc = acc.add(&rest.mul(&value.powi(e)?));
        }
        Ok(acc)
    }

    /// Square root of a phase, when one exists in a cyclotomic extension:
    /// roots of unity `zeta_L^k -> zeta_2L^k`, and `c * t^(2e) -> sqrt(c) * t^e`.
    pub fn sqrt_phase(&self) -> Option<PhasedScalar> {
        let (mono, coeff) = match (self.phased.len(), self.base.is_zero()) {
            (0, false) => (Monomial::default(), self.base.clone()),
            (1, true) => self.phased[0].clone(),
            _ => return None,
        };
        let mut half = BTreeMap::new();
        for (k, e) in mono.exponents() {
            if e % 2 != 0 {
                return None;
            }
            half.insert(k.clone(), e / 2);
        }
        let (l, k) = coeff.root_of_unity_log()?;
        let root = Cyclotomic::zeta_pow(2 * l, k as i64);
        Some(PhasedScalar::term(root, Monomial::from_map(&half)))
    }

    /// An `n`-th root of a root of unity: `zeta_L^k -> zeta_(nL)^k`.
    pub fn root_of_unity_root(&self, n: u32) -> Option<PhasedScalar> {
        if n == 0 {
            return None;
        }
        let (l, k) = self.as_cyclotomic()?.root_of_unity_log()?;
        Some(PhasedScalar::zeta(n * l, k as i64))
    }

    /// Every symbol name occurring in the value.
    pub fn symbols(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .phased
            .iter()
            .flat_map(|(m, _)| m.exponents().iter().map(|(k, _)| k.clone()))
            .collect();
        out.sort();
        out.dedup();
        out
    }
}

impl From<Cyclotomic> for PhasedScalar {
    fn from(c: Cyclotomic) -> PhasedScalar {
        PhasedScalar { base: c, phased: Vec::new() }
    }
}

impl PartialEq for PhasedScalar {
    fn eq(&self, other: &PhasedScalar) -> bool {
        self.base == other.base
            && self.phased.len() == other.phased.len()
            && self.phased.iter().zip(&other.phased).all(|((ma, ca), (mb, cb))| ma == mb && ca == cb)
    }
}

impl Eq for PhasedScalar {}

impl fmt::Display for PhasedScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.phased.is_empty() {
            return write!(f, "{}", self.base);
        }
        let mut first = true;
        if !self.base.is_zero() {
            write!(f, "{}", self.base)?;
            first = false;
        }
        for (m, c) in &self.phased {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if c.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "({c})*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PhasedScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t() -> PhasedScalar {
        PhasedScalar::symbol("t")
    }

    #[test]
    fn conjugation_inverts_symbols() {
        let a = t().mul(&PhasedScalar::zeta(4, 1));
        let expected = PhasedScalar::term(Cyclotomic::zeta_pow(4, 3), Monomial::symbol("t", -1));
        assert_eq!(a.conj(), expected);
        assert!(a.is_unit_modulus());
    }

    #[test]
    fn laurent_sums_cancel_exactly() {
        // Row inner product of (1, -1, t, -t) with (1, -1, -t, t).
        let row2 = [PhasedScalar::one(), PhasedScalar::from_i64(-1), t(), t().neg()];
        let row3 = [PhasedScalar::one(), PhasedScalar::from_i64(-1), t().neg(), t()];
        let ip = |x: &[PhasedScalar], y: &[PhasedScalar]| {
            x.iter().zip(y).fold(PhasedScalar::zero(), |acc, (a, b)| acc.add(&a.mul(&b.conj())))
        };
        assert!(ip(&row2, &row3).is_zero());
        assert_eq!(ip(&row2, &row2), PhasedScalar::from_i64(4));
        let ip_mixed = row2
            .iter()
            .zip(&[PhasedScalar::one(), PhasedScalar::one(), PhasedScalar::from_i64(-1), PhasedScalar::from_i64(-1)])
            .fold(PhasedScalar::zero(), |acc, (a, b)| acc.add(&a.mul(&b.conj())));
        assert!(ip_mixed.is_zero());
    }

    #[test]
    fn symbols_have_no_finite_order() {
        assert_eq!(t().root_of_unity_order().unwrap(), None);
        assert_eq!(t().neg().root_of_unity_order().unwrap(), None);
        assert_eq!(PhasedScalar::zeta(6, 1).root_of_unity_order().unwrap(), Some(6));
        assert!(PhasedScalar::zero().root_of_unity_order().is_err());
    }

    #[test]
    fn substitution() {
        let a = PhasedScalar::one().add(&t().neg()).add(&t().pow(2));
        let i = PhasedScalar::zeta(4, 1);
        let v = a.substitute("t", &i).unwrap();
        // 1 - i + i^2 = -i
        assert_eq!(v, PhasedScalar::zeta(4, 3));
        let inv = t().inv().unwrap();
        assert_eq!(inv.substitute("t", &i).unwrap(), PhasedScalar::zeta(4, 3));
    }

    #[test]
    fn phase_square_roots() {
        let a = PhasedScalar::zeta(8, 2);
        let h = a.sqrt_phase().unwrap();
        assert_eq!(h.mul(&h), a);
        let b = t().pow(2).mul(&PhasedScalar::from_i64(-1));
        let hb = b.sqrt_phase().unwrap();
        assert_eq!(hb.mul(&hb), b);
        assert!(t().sqrt_phase().is_none());
    }

    #[test]
    fn non_monomial_laurent_is_not_invertible() {
        let a = PhasedScalar::one().add(&t());
        assert!(a.inv().is_err());
    }
}
