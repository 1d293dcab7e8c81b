//! JSON codecs for integers of any size and for F₂ bits.

use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Integers up to 2⁵³ in absolute value travel as JSON numbers, larger
/// ones as decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Big(pub BigInt);

const SAFE: i64 = 1 << 53;

impl Serialize for Big {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) if (-SAFE..=SAFE).contains(&v) => s.serialize_i64(v),
            _ => s.serialize_str(&self.0.to_string()),
        }
    }
}

struct BigVisitor;

impl Visitor<'_> for BigVisitor {
    type Value = Big;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("an integer or a decimal string")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<Big, E> {
        Ok(Big(v.into()))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<Big, E> {
        Ok(Big(v.into()))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<Big, E> {
        v.trim().parse().map(Big).map_err(|_| E::custom(format!("`{v}` is not an integer")))
    }
}

impl<'de> Deserialize<'de> for Big {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        d.deserialize_any(BigVisitor)
    }
}

impl From<i64> for Big {
    fn from(v: i64) -> Self {
        Big(v.into())
    }
}

/// An element of F₂, read from `0`, `1`, `true` or `false` and written as
/// `0` or `1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bit(pub bool);

impl Serialize for Bit {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u8(self.0 as u8)
    }
}

struct BitVisitor;

impl Visitor<'_> for BitVisitor {
    type Value = Bit;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("0, 1 or a boolean")
    }

    fn visit_bool<E: de::Error>(self, v: bool) -> Result<Bit, E> {
        Ok(Bit(v))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<Bit, E> {
        match v {
            0 => Ok(Bit(false)),
            1 => Ok(Bit(true)),
            _ => Err(E::custom(format!("{v} is not a bit"))),
        }
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<Bit, E> {
        u64::try_from(v).map_err(|_| E::custom(format!("{v} is not a bit"))).and_then(|u| self.visit_u64(u))
    }
}

impl<'de> Deserialize<'de> for Bit {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        d.deserialize_any(BitVisitor)
    }
}

/// Rows of an integer matrix as JSON-ready values.
pub fn big_rows(m: &flc_core::IntMatrix) -> Vec<Vec<Big>> {
    (0..m.rows()).map(|r| big_vec(m.row(r))).collect()
}

pub fn big_vec(v: &[BigInt]) -> Vec<Big> {
    v.iter().cloned().map(Big).collect()
}

pub fn bit_vec(v: &[bool]) -> Vec<Bit> {
    v.iter().copied().map(Bit).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn big_switches_to_strings_past_2_53() {
        let small = Big::from(SAFE);
        assert_eq!(serde_json::to_string(&small).unwrap(), "9007199254740992");
        let large = Big(BigInt::from(SAFE) + 1);
        let s = serde_json::to_string(&large).unwrap();
        assert_eq!(s, "\"9007199254740993\"");
        assert_eq!(serde_json::from_str::<Big>(&s).unwrap(), large);
        assert_eq!(serde_json::from_str::<Big>("-3").unwrap(), Big::from(-3));
    }

    #[test]
    fn bits_accept_bools_and_reject_two() {
        assert_eq!(serde_json::from_str::<Vec<Bit>>("[0, true, 1, false]").unwrap(), vec![Bit(false), Bit(true), Bit(true), Bit(false)]);
        assert!(serde_json::from_str::<Bit>("2").is_err());
        assert_eq!(serde_json::to_string(&Bit(true)).unwrap(), "1");
    }

    proptest::proptest! {
        #[test]
        fn big_round_trips(hi in proptest::num::i64::ANY, lo in proptest::num::u64::ANY) {
            let x = Big((BigInt::from(hi) << 64) + lo);
            let s = serde_json::to_string(&x).unwrap();
            proptest::prop_assert_eq!(serde_json::from_str::<Big>(&s).unwrap(), x);
        }

        #[test]
        fn small_values_stay_numbers(v in -SAFE..=SAFE) {
            let s = serde_json::to_string(&Big::from(v)).unwrap();
            proptest::prop_assert_eq!(s, v.to_string());
        }
    }
}
