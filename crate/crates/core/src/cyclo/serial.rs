//! JSON encoding of scalars.
//!
//! A single phased monomial is `{"order": n, "coeffs": {"k": "p/q"}, "symbols": {"t": e}}`;
//! a Laurent sum of several monomials is `{"terms": [monomial, ...]}`.

use std::collections::BTreeMap;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::cyclotomic::Cyclotomic;
use super::scalar::{Monomial, PhasedScalar};
use super::Rational;

#[derive(Serialize, Deserialize)]
struct MonoJson {
    order: u32,
    #[serde(default)]
    coeffs: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    symbols: BTreeMap<String, Exponent>,
}

#[derive(Serialize, Deserialize, Clone, Copy)]
#[serde(untagged)]
enum Exponent {
    Int(i64),
    Str(#[serde(with = "exp_str")] i64),
}

mod exp_str {
    use serde::{Deserialize, Deserializer, Serializer};
    pub fn serialize<S: Serializer>(v: &i64, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }
    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<i64, D::Error> {
        let s = String::deserialize(d)?;
        s.trim().parse().map_err(serde::de::Error::custom)
    }
}

impl Exponent {
    fn value(self) -> i64 {
        match self {
            Exponent::Int(v) | Exponent::Str(v) => v,
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum ScalarJson {
    Sum { terms: Vec<MonoJson> },
    Mono(MonoJson),
}

fn encode_mono(m: &Monomial, c: &Cyclotomic) -> MonoJson {
    MonoJson {
        order: c.order(),
        coeffs: c.coeffs().into_iter().map(|(k, r)| (k.to_string(), r.to_string())).collect(),
        symbols: m.exponents().iter().map(|(k, e)| (k.clone(), Exponent::Int(*e))).collect(),
    }
}

fn decode_mono(j: &MonoJson) -> Result<PhasedScalar, String> {
    if j.order == 0 {
        return Err("order must be positive".into());
    }
    let mut parsed = Vec::with_capacity(j.coeffs.len());
    for (k, v) in &j.coeffs {
        let k: i64 = k.trim().parse().map_err(|e| format!("bad exponent {k:?}: {e}"))?;
        let r: Rational = v.trim().parse().map_err(|e| format!("bad rational {v:?}: {e}"))?;
        parsed.push((k, r));
    }
    let c = Cyclotomic::from_terms(j.order, parsed.iter().map(|(k, r)| (*k, r)));
    let syms: BTreeMap<String, i64> = j.symbols.iter().map(|(k, e)| (k.clone(), e.value())).collect();
    Ok(PhasedScalar::term(c, Monomial::from_map(&syms)))
}

impl Serialize for PhasedScalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let terms = self.terms();
        let j = match terms.len() {
            0 => ScalarJson::Mono(encode_mono(&Monomial::default(), &Cyclotomic::zero(1))),
            1 => ScalarJson::Mono(encode_mono(&terms[0].0, &terms[0].1)),
            _ => ScalarJson::Sum { terms: terms.iter().map(|(m, c)| encode_mono(m, c)).collect() },
        };
        j.serialize(s)
    }
}

impl<'de> Deserialize<'de> for PhasedScalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<PhasedScalar, D::Error> {
        match ScalarJson::deserialize(d)? {
            ScalarJson::Mono(m) => decode_mono(&m).map_err(D::Error::custom),
            ScalarJson::Sum { terms } => {
                let mut acc = PhasedScalar::zero();
                for t in &terms {
                    acc = acc.add(&decode_mono(t).map_err(D::Error::custom)?);
                }
                Ok(acc)
            }
        }
    }
}
