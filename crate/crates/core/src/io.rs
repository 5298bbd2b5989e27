//! Lattice file formats.
//!
//! JSON: `{"rank":n,"gram":[[…],…],"label":"…"}` (label optional).
//! Text: the rank on the first line, then `n` rows of `n` integers.
//! Writers emit a canonical form, so `write(read(write(L))) == write(L)`
//! byte for byte.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::linalg::Mat;

#[derive(Serialize, Deserialize)]
struct LatticeJson {
    rank: usize,
    gram: Vec<Vec<i128>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<String>,
}

impl Serialize for Lattice {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        LatticeJson { rank: self.rank(), gram: self.gram().to_rows(), label: self.label().map(str::to_owned) }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Lattice {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let doc = LatticeJson::deserialize(d)?;
        from_doc(doc).map_err(serde::de::Error::custom)
    }
}

pub fn to_json(l: &Lattice) -> String {
    let doc = LatticeJson { rank: l.rank(), gram: l.gram().to_rows(), label: l.label().map(str::to_owned) };
    serde_json::to_string(&doc).expect("serializable")
}

pub fn from_json(s: &str) -> Result<Lattice> {
    let doc: LatticeJson = serde_json::from_str(s).map_err(|e| Error::Format(e.to_string()))?;
    from_doc(doc)
}

fn from_doc(doc: LatticeJson) -> Result<Lattice> {
    if doc.gram.len() != doc.rank || doc.gram.iter().any(|r| r.len() != doc.rank) {
        return Err(Error::Format(format!("gram is not {0}x{0}", doc.rank)));
    }
    if doc.rank == 0 {
        return Err(Error::Format("rank must be positive".into()));
    }
    let l = Lattice::new(Mat::from_rows(&doc.gram))?;
    Ok(match doc.label {
        Some(label) => l.with_label(label),
        None => l,
    })
}

pub fn to_text(l: &Lattice) -> String {
    let mut out = format!("{}\n", l.rank());
    for row in l.gram().to_rows() {
        let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

pub fn from_text(s: &str) -> Result<Lattice> {
    let mut tokens = s.split_whitespace();
    let n: usize = tokens
        .next()
        .ok_or_else(|| Error::Format("empty input".into()))?
        .parse()
        .map_err(|e| Error::Format(format!("rank: {e}")))?;
    if n == 0 {
        return Err(Error::Format("rank must be positive".into()));
    }
    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            let t = tokens.next().ok_or_else(|| Error::Format(format!("missing entry ({i},{j})")))?;
            row.push(t.parse::<i128>().map_err(|e| Error::Format(format!("entry ({i},{j}): {e}")))?);
        }
        rows.push(row);
    }
    if tokens.next().is_some() {
        return Err(Error::Format("trailing data after gram".into()));
    }
    Lattice::new(Mat::from_rows(&rows))
}

/// Parses either format, choosing by the first non-blank character.
pub fn parse(s: &str) -> Result<Lattice> {
    if s.trim_start().starts_with('{') {
        from_json(s)
    } else {
        from_text(s)
    }
}

pub fn read_file(path: &Path) -> Result<Lattice> {
    let s = std::fs::read_to_string(path).map_err(|e| Error::Format(format!("{}: {e}", path.display())))?;
    parse(&s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn json_and_text() {
        let l = Lattice::from_rows(&[[2, 1], [1, 2]]).unwrap().with_label("A2");
        assert_eq!(to_json(&l), r#"{"rank":2,"gram":[[2,1],[1,2]],"label":"A2"}"#);
        assert_eq!(to_text(&l), "2\n2 1\n1 2\n");
        assert_eq!(parse("2\n 2 1\n1   2").unwrap(), l);
        assert!(parse("2\n1 2\n2 1").is_err());
        assert!(parse(r#"{"rank":2,"gram":[[1]]}"#).is_err());
    }

    fn gram_strategy() -> impl Strategy<Value = Lattice> {
        (1usize..5).prop_flat_map(|n| {
            proptest::collection::vec(-20i128..20, n * n).prop_map(move |v| {
                // AᵗA + I is positive definite
                let a = Mat::from_rows(&v.chunks(n).collect::<Vec<_>>());
                let g = a.transpose().mul(&a);
                let mut g = g;
                for i in 0..n {
                    g[(i, i)] += 1;
                }
                Lattice::new(g).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn canonical_round_trip(l in gram_strategy()) {
            let j = to_json(&l);
            prop_assert_eq!(to_json(&parse(&j).unwrap()), j);
            let t = to_text(&l);
            prop_assert_eq!(to_text(&parse(&t).unwrap()), t);
        }
    }
}
