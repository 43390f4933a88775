//! Plain triplet text format for adversary matrices.
//!
//! ```text
//! qlb gamma v1
//! dim 4
//! 0 1 1
//! 0 2 0.5
//! 0 3 0.3333333333333333
//! 1 2 1
//! 1 3 0.5
//! 2 3 1
//! ```
//!
//! Rows and columns index the canonical domain ordering of the function
//! the matrix belongs to. The writer emits the upper triangle; the
//! parser accepts entries in any order, mirrors them, and rejects
//! inconsistent duplicates. Values use the shortest exact decimal form,
//! so parse ∘ serialize is the identity on matrices.

use crate::adversary::{AdversaryMatrix, Provenance};
use crate::function::PartialFunction;
use crate::{Error, Result};

const HEADER: &str = "qlb gamma v1";

/// Serialize the upper triangle as `row col value` lines.
pub fn serialize_gamma(gamma: &AdversaryMatrix) -> Result<String> {
    let entries = gamma.dense_entries()?;
    let dim = gamma.dim();
    let mut out = format!("{HEADER}\ndim {dim}\n");
    for r in 0..dim {
        for c in r + 1..dim {
            let v = entries[r * dim + c];
            if v != 0.0 {
                out.push_str(&format!("{r} {c} {v}\n"));
            }
        }
    }
    Ok(out)
}

/// Parse a triplet document into an adversary matrix for `f`.
pub fn parse_gamma(doc: &str, f: &PartialFunction) -> Result<AdversaryMatrix> {
    let mut lines = doc
        .lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (line, header) = lines.next().ok_or(Error::Parse { line: 1, msg: "empty document".into() })?;
    if header != HEADER {
        return Err(Error::Parse { line, msg: format!("expected header {HEADER:?}") });
    }
    let (line, dim_line) = lines.next().ok_or(Error::Parse { line: 1, msg: "missing dim line".into() })?;
    let dim: usize = match dim_line.split_whitespace().collect::<Vec<_>>()[..] {
        ["dim", d] => d.parse().map_err(|_| Error::Parse { line, msg: "bad dim".into() })?,
        _ => return Err(Error::Parse { line, msg: "expected `dim <k>`".into() }),
    };
    if dim != f.len() {
        return Err(Error::Parse {
            line,
            msg: format!("dim {dim} does not match the function's domain size {}", f.len()),
        });
    }
    let mut entries = vec![0.0f64; dim * dim];
    let mut seen = vec![false; dim * dim];
    for (line, l) in lines {
        let toks: Vec<&str> = l.split_whitespace().collect();
        if toks.len() != 3 {
            return Err(Error::Parse { line, msg: "expected `row col value`".into() });
        }
        let r: usize = toks[0].parse().map_err(|_| Error::Parse { line, msg: "bad row index".into() })?;
        let c: usize = toks[1].parse().map_err(|_| Error::Parse { line, msg: "bad col index".into() })?;
        let v: f64 = toks[2].parse().map_err(|_| Error::Parse { line, msg: "bad value".into() })?;
        if r >= dim || c >= dim {
            return Err(Error::Parse { line, msg: format!("index ({r},{c}) out of range for dim {dim}") });
        }
        for (rr, cc) in [(r, c), (c, r)] {
            if seen[rr * dim + cc] && entries[rr * dim + cc] != v {
                return Err(Error::Parse {
                    line,
                    msg: format!("conflicting duplicate for entry ({r},{c})"),
                });
            }
            entries[rr * dim + cc] = v;
            seen[rr * dim + cc] = true;
        }
    }
    AdversaryMatrix::from_dense(f, entries, Provenance::File)
}
