//! Serde helpers that write big integers as decimal strings.

use num_bigint::BigInt;
use serde::ser::{SerializeSeq, Serializer};

pub fn vec<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        seq.serialize_element(&x.to_string())?;
    }
    seq.end()
}

pub fn opt_matrix<S: Serializer>(m: &Option<Vec<Vec<BigInt>>>, s: S) -> Result<S::Ok, S::Error> {
    match m {
        None => s.serialize_none(),
        Some(rows) => {
            let strs: Vec<Vec<String>> = rows.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
            s.serialize_some(&strs)
        }
    }
}
