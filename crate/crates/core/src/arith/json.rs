//! JSON form of big integers: a number when it fits in `i64`, otherwise a
//! decimal string. Both forms are accepted on input. Use through
//! `#[serde(with = "...")]` on `BigInt`, `Vec<BigInt>`, `Option<BigInt>` and
//! `Vec<Vec<BigInt>>` fields.

use num_bigint::BigInt;
use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};

#[derive(Serialize)]
#[serde(untagged)]
enum Out {
    Small(i64),
    Large(String),
}

fn out(x: &BigInt) -> Out {
    i64::try_from(x)
        .map(Out::Small)
        .unwrap_or_else(|_| Out::Large(x.to_string()))
}

struct In(BigInt);

impl<'de> Deserialize<'de> for In {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = In;
            fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
                f.write_str("an integer or a decimal string")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<In, E> {
                Ok(In(v.into()))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<In, E> {
                Ok(In(v.into()))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<In, E> {
                v.parse()
                    .map(In)
                    .map_err(|_| E::custom(format!("bad integer {v:?}")))
            }
        }
        d.deserialize_any(V)
    }
}

pub mod int {
    use super::*;

    pub fn serialize<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        out(x).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        In::deserialize(d).map(|x| x.0)
    }
}

pub mod opt {
    use super::*;

    pub fn serialize<S: Serializer>(x: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
        x.as_ref().map(out).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigInt>, D::Error> {
        Ok(Option::<In>::deserialize(d)?.map(|x| x.0))
    }
}

pub mod vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(out))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Ok(Vec::<In>::deserialize(d)?.into_iter().map(|x| x.0).collect())
    }
}

pub mod rows {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Vec<BigInt>], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|r| r.iter().map(out).collect::<Vec<_>>()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<BigInt>>, D::Error> {
        Ok(Vec::<Vec<In>>::deserialize(d)?
            .into_iter()
            .map(|r| r.into_iter().map(|x| x.0).collect())
            .collect())
    }
}
