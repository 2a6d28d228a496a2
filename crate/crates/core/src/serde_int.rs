//! Integers in serialized output: JSON numbers when they fit in 64 bits,
//! decimal strings otherwise.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::ser::{SerializeSeq, Serializer};

pub fn int<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    match x.to_i64() {
        Some(v) => s.serialize_i64(v),
        None => s.collect_str(x),
    }
}

pub fn ints<S: Serializer>(xs: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    struct One<'a>(&'a BigInt);
    impl serde::Serialize for One<'_> {
        fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
            int(self.0, s)
        }
    }
    let mut seq = s.serialize_seq(Some(xs.len()))?;
    for x in xs {
        seq.serialize_element(&One(x))?;
    }
    seq.end()
}
