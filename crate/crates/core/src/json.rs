//! Serializers printing decimal integer strings as JSON numbers whenever
//! they fit in an `i64`.

use serde::ser::{SerializeSeq, Serializer};

fn one<S: Serializer>(v: &str, s: S) -> Result<S::Ok, S::Error> {
    match v.parse::<i64>() {
        Ok(n) => s.serialize_i64(n),
        Err(_) => s.serialize_str(v),
    }
}

pub fn int<S: Serializer>(v: &str, s: S) -> Result<S::Ok, S::Error> {
    one(v, s)
}

pub fn int_vec<S: Serializer>(v: &[String], s: S) -> Result<S::Ok, S::Error> {
    struct W<'a>(&'a str);
    impl serde::Serialize for W<'_> {
        fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
            one(self.0, s)
        }
    }
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        seq.serialize_element(&W(x))?;
    }
    seq.end()
}

pub fn opt_int<S: Serializer>(v: &Option<String>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(x) => one(x, s),
        None => s.serialize_none(),
    }
}
