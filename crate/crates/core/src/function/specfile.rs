//! Line-oriented text format for user-supplied functions.
//!
//! Canonical form, as produced by [`serialize_function`]:
//!
//! ```text
//! qlb function v1
//! name parity2
//! n 2
//! m 1
//! table
//! 00 0
//! 01 1
//! 10 1
//! 11 0
//! end
//! ```
//!
//! [`parse_function_file`] additionally accepts blank lines, `#`
//! comments, and a `builtin <family>` line (with an optional `t <k>`
//! parameter) in place of the table section; builtin documents
//! re-serialize as the equivalent explicit table.

use crate::function::{
    make_and, make_or, make_ordered_search, make_parity, make_sorted4, make_threshold,
    word_from_str, word_to_string, PartialFunction, Word,
};
use crate::{Error, Result};

const HEADER: &str = "qlb function v1";

/// Parse a function document.
pub fn parse_function_file(doc: &str) -> Result<PartialFunction> {
    let mut lines = doc
        .lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (line_no, header) = lines
        .next()
        .ok_or_else(|| Error::Parse { line: 1, msg: "empty document".into() })?;
    if header != HEADER {
        return Err(Error::Parse {
            line: line_no,
            msg: format!("expected header {HEADER:?}, found {header:?}"),
        });
    }

    let mut name: Option<String> = None;
    let mut n: Option<usize> = None;
    let mut m: Option<usize> = None;
    let mut builtin: Option<String> = None;
    let mut t_param: Option<usize> = None;
    let mut rows: Vec<(Word, Word)> = Vec::new();
    let mut in_table = false;
    let mut table_closed = false;

    for (line_no, line) in lines {
        let mut words = line.split_whitespace();
        let key = words.next().unwrap();
        if in_table {
            if key == "end" {
                in_table = false;
                table_closed = true;
                continue;
            }
            let (nv, mv) = (require(n, line_no, "n")?, require(m, line_no, "m")?);
            let out = words.next().ok_or_else(|| Error::Parse {
                line: line_no,
                msg: "table row needs `<input> <output>`".into(),
            })?;
            let x = word_from_str(key, nv).map_err(|e| Error::Parse { line: line_no, msg: e.to_string() })?;
            let y = word_from_str(out, mv).map_err(|e| Error::Parse { line: line_no, msg: e.to_string() })?;
            if rows.iter().any(|&(px, _)| px == x) {
                return Err(Error::Parse { line: line_no, msg: format!("duplicate input {key}") });
            }
            rows.push((x, y));
            continue;
        }
        match key {
            "name" => name = Some(words.collect::<Vec<_>>().join(" ")),
            "n" => n = Some(parse_num(words.next(), line_no, "n")?),
            "m" => m = Some(parse_num(words.next(), line_no, "m")?),
            "builtin" => {
                builtin = Some(
                    words
                        .next()
                        .ok_or_else(|| Error::Parse { line: line_no, msg: "builtin needs a family name".into() })?
                        .to_string(),
                )
            }
            "t" => t_param = Some(parse_num(words.next(), line_no, "t")?),
            "table" => {
                require(n, line_no, "n")?;
                require(m, line_no, "m")?;
                in_table = true;
            }
            other => {
                return Err(Error::Parse { line: line_no, msg: format!("unknown field {other:?}") });
            }
        }
    }
    if in_table {
        return Err(Error::Parse { line: 0, msg: "table section not closed with `end`".into() });
    }

    let n = require(n, 0, "n")?;
    let f = match builtin {
        Some(family) => {
            let f = match family.as_str() {
                "or" => make_or(n)?,
                "and" => make_and(n)?,
                "parity" => make_parity(n)?,
                "threshold" => {
                    let t = t_param.ok_or_else(|| Error::Parse {
                        line: 0,
                        msg: "builtin threshold needs `t <k>`".into(),
                    })?;
                    make_threshold(n, t)?
                }
                "ordered-search" => make_ordered_search(n)?,
                "sorted4" => {
                    if n != 4 {
                        return Err(Error::Parse { line: 0, msg: "sorted4 requires n 4".into() });
                    }
                    make_sorted4()?
                }
                other => {
                    return Err(Error::Parse { line: 0, msg: format!("unknown builtin {other:?}") });
                }
            };
            if let Some(m) = m {
                if m != f.m() {
                    return Err(Error::Parse {
                        line: 0,
                        msg: format!("builtin {family} has m = {}, document says {m}", f.m()),
                    });
                }
            }
            match name {
                Some(name) => PartialFunction::from_pairs(
                    f.n(),
                    f.m(),
                    f.domain().iter().copied().zip(f.outputs().iter().copied()),
                    name,
                )?,
                None => f,
            }
        }
        None => {
            if !table_closed {
                return Err(Error::Parse { line: 0, msg: "document has neither `builtin` nor `table`".into() });
            }
            let m = require(m, 0, "m")?;
            PartialFunction::from_pairs(n, m, rows, name.unwrap_or_else(|| "unnamed".into()))
                .map_err(|e| Error::Parse { line: 0, msg: e.to_string() })?
        }
    };
    Ok(f)
}

/// Serialize a function as a canonical explicit-table document.
pub fn serialize_function(f: &PartialFunction) -> String {
    let mut out = String::new();
    out.push_str(HEADER);
    out.push('\n');
    out.push_str(&format!("name {}\n", f.name()));
    out.push_str(&format!("n {}\n", f.n()));
    out.push_str(&format!("m {}\n", f.m()));
    out.push_str("table\n");
    for (k, &x) in f.domain().iter().enumerate() {
        out.push_str(&word_to_string(x, f.n()));
        out.push(' ');
        out.push_str(&word_to_string(f.output_at(k), f.m()));
        out.push('\n');
    }
    out.push_str("end\n");
    out
}

fn parse_num(tok: Option<&str>, line: usize, field: &str) -> Result<usize> {
    tok.ok_or_else(|| Error::Parse { line, msg: format!("{field} needs a value") })?
        .parse()
        .map_err(|_| Error::Parse { line, msg: format!("{field} is not a number") })
}

fn require<T: Copy>(v: Option<T>, line: usize, field: &str) -> Result<T> {
    v.ok_or_else(|| Error::Parse { line, msg: format!("missing field {field}") })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function::make_or;

    #[test]
    fn builtin_document_delegates() {
        let doc = "qlb function v1\nn 3\nbuiltin or\n";
        let f = parse_function_file(doc).unwrap();
        let or3 = make_or(3).unwrap();
        assert_eq!(f.domain(), or3.domain());
        assert_eq!(f.outputs(), or3.outputs());
    }

    #[test]
    fn explicit_table_roundtrip() {
        let doc = "qlb function v1\nname xor\nn 2\nm 1\ntable\n00 0\n01 1\n10 1\n11 0\nend\n";
        let f = parse_function_file(doc).unwrap();
        assert_eq!(f.len(), 4);
        let ser = serialize_function(&f);
        assert_eq!(ser, doc.replace("name xor", "name xor")); // canonical in, canonical out
        let f2 = parse_function_file(&ser).unwrap();
        assert_eq!(f.domain(), f2.domain());
        assert_eq!(f.outputs(), f2.outputs());
        assert_eq!(f.name(), f2.name());
    }

    #[test]
    fn serialize_parse_identity_on_functions() {
        for f in [
            make_or(4).unwrap(),
            crate::function::make_ordered_search(5).unwrap(),
            crate::function::make_sorted4().unwrap(),
        ] {
            let f2 = parse_function_file(&serialize_function(&f)).unwrap();
            assert_eq!(f.domain(), f2.domain());
            assert_eq!(f.outputs(), f2.outputs());
            assert_eq!(f.m(), f2.m());
        }
    }

    #[test]
    fn duplicate_row_rejected() {
        let doc = "qlb function v1\nn 2\nm 1\ntable\n00 0\n00 1\nend\n";
        let err = parse_function_file(doc).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 6, .. }), "{err}");
    }

    #[test]
    fn comments_and_blanks_accepted() {
        let doc = "qlb function v1\n\n# a comment\nn 2\nm 1\ntable\n00 1 # inline\n01 0\n10 0\n11 1\nend\n";
        let f = parse_function_file(doc).unwrap();
        assert_eq!(f.eval(0b00).unwrap(), 1);
    }

    #[test]
    fn bad_header_rejected() {
        assert!(parse_function_file("qlb function v9\nn 2\n").is_err());
        assert!(parse_function_file("").is_err());
    }
}
