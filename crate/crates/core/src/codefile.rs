//! Plain-text code files.
//!
//! ```text
//! n=2 q=2 origin=2 d=1
//! 1 1 0 0
//! ```
//!
//! The header holds `n`, `q` (an integer or `Z`) and optionally `origin` and
//! `d`. Each following line is one generator of `2n` integers. Blank lines
//! and `#` comments are ignored.

use std::fmt::Write as _;

use thiserror::Error;

use crate::code::StabilizerCode;
use crate::error::Error as CodeError;
use crate::ring::Modulus;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("missing header line")]
    MissingHeader,
    #[error("line {line}: {source}")]
    Code { line: usize, source: CodeError },
    #[error("{0}")]
    Invalid(CodeError),
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        column,
        message: message.into(),
    }
}

/// Whitespace-separated tokens with 1-based columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((s + 1, &line[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

struct Header {
    n: usize,
    modulus: Modulus,
    origin: Option<u64>,
    d: Option<usize>,
}

fn parse_header(lineno: usize, line: &str) -> Result<Header, ParseError> {
    let (mut n, mut modulus, mut origin, mut d) = (None, None, None, None);
    for (col, tok) in tokens(line) {
        let Some((key, value)) = tok.split_once('=') else {
            return Err(syntax(
                lineno,
                col,
                format!("expected key=value, found {tok:?}"),
            ));
        };
        let vcol = col + key.len() + 1;
        let int = |v: &str| {
            v.parse::<u64>()
                .map_err(|_| syntax(lineno, vcol, format!("{v:?} is not a non-negative integer")))
        };
        match key {
            "n" => n = Some(int(value)? as usize),
            "q" if value == "Z" => modulus = Some(Modulus::Unbounded),
            "q" => {
                modulus = Some(Modulus::finite(int(value)?).map_err(|e| ParseError::Code {
                    line: lineno,
                    source: e,
                })?)
            }
            "origin" => origin = Some(int(value)?),
            "d" => d = Some(int(value)? as usize),
            _ => return Err(syntax(lineno, col, format!("unknown header key {key:?}"))),
        }
    }
    let n = n.ok_or_else(|| syntax(lineno, 1, "header lacks n="))?;
    let modulus = modulus.ok_or_else(|| syntax(lineno, 1, "header lacks q="))?;
    Ok(Header {
        n,
        modulus,
        origin,
        d,
    })
}

fn content(line: &str) -> &str {
    line.split_once('#').map_or(line, |(before, _)| before)
}

/// Parses a code file; with `validate` the result must commute and be
/// independent.
pub fn parse_code_file(text: &str, validate: bool) -> Result<StabilizerCode, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, content(l)))
        .filter(|(_, l)| !l.trim().is_empty());
    let (hline, htext) = lines.next().ok_or(ParseError::MissingHeader)?;
    let header = parse_header(hline, htext)?;
    let width = 2 * header.n;
    let mut rows = Vec::new();
    for (lineno, line) in lines {
        let toks = tokens(line);
        if toks.len() != width {
            let column = toks.get(width).map_or(line.len() + 1, |t| t.0);
            return Err(syntax(
                lineno,
                column,
                format!("expected {width} entries, found {}", toks.len()),
            ));
        }
        let row = toks
            .into_iter()
            .map(|(col, t)| {
                t.parse::<i64>()
                    .map_err(|_| syntax(lineno, col, format!("{t:?} is not an integer")))
            })
            .collect::<Result<Vec<i64>, _>>()?;
        rows.push(row);
    }
    let code = if validate {
        StabilizerCode::new(header.n, header.modulus, rows)
    } else {
        StabilizerCode::new_unchecked(header.n, header.modulus, rows)
    }
    .map_err(ParseError::Invalid)?;
    Ok(code
        .with_origin_prime(header.origin)
        .with_claimed_distance(header.d))
}

/// Canonical text form: single spaces, one row per line, trailing newline.
pub fn serialize_code(code: &StabilizerCode) -> String {
    let mut out = format!("n={} q={}", code.n(), code.modulus());
    if let Some(p) = code.origin_prime() {
        write!(out, " origin={p}").unwrap();
    }
    if let Some(d) = code.claimed_distance() {
        write!(out, " d={d}").unwrap();
    }
    out.push('\n');
    for row in code.generators() {
        let strs: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        out.push_str(&strs.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        let c = parse_code_file("n=2 q=2\n1 1 0 0\n", true).unwrap();
        assert_eq!(c.modulus(), Modulus::Finite(2));
        assert_eq!(c.generators(), &[vec![1, 1, 0, 0]]);
        let c = parse_code_file("n=2 q=Z\n1 1 0 0\n", true).unwrap();
        assert_eq!(c.modulus(), Modulus::Unbounded);

        let err = parse_code_file("n=2 q=2\n1 1 0\n", true).unwrap_err();
        assert!(matches!(err, ParseError::Syntax { line: 2, .. }), "{err}");
    }

    #[test]
    fn comments_and_header_fields() {
        let text = "# a code\n\nn=1 q=3 origin=3 d=1  # trailing\n1 0\n";
        let c = parse_code_file(text, true).unwrap();
        assert_eq!(c.origin_prime(), Some(3));
        assert_eq!(c.claimed_distance(), Some(1));
        assert_eq!(serialize_code(&c), "n=1 q=3 origin=3 d=1\n1 0\n");
    }

    #[test]
    fn errors_point_at_tokens() {
        assert_eq!(
            parse_code_file("n=1 q=2\n1 x\n", true).unwrap_err(),
            ParseError::Syntax {
                line: 2,
                column: 3,
                message: "\"x\" is not an integer".into()
            }
        );
        assert!(matches!(
            parse_code_file("n=1 p=2\n", true),
            Err(ParseError::Syntax {
                line: 1,
                column: 5,
                ..
            })
        ));
        assert!(matches!(
            parse_code_file("n=1 q=1\n", true),
            Err(ParseError::Code { line: 1, .. })
        ));
        assert_eq!(
            parse_code_file("# nothing\n", true),
            Err(ParseError::MissingHeader)
        );
        let err = parse_code_file("n=1 q=2\n1 0\n0 1\n", true).unwrap_err();
        assert_eq!(
            err,
            ParseError::Invalid(CodeError::NonCommuting {
                i: 0,
                j: 1,
                product: 1
            })
        );
        assert!(parse_code_file("n=1 q=2\n1 0\n0 1\n", false).is_ok());
    }

    #[test]
    fn reduces_entries() {
        let c = parse_code_file("n=1 q=5\n-1 7\n", false).unwrap();
        assert_eq!(c.generators(), &[vec![4, 2]]);
        let c = parse_code_file("n=1 q=Z\n-1 7\n", false).unwrap();
        assert_eq!(c.generators(), &[vec![-1, 7]]);
    }

    fn code_strategy() -> impl Strategy<Value = StabilizerCode> {
        (
            1usize..5,
            0usize..5,
            prop_oneof![Just(None), (2u64..12).prop_map(Some)],
            any::<bool>(),
            any::<bool>(),
        )
            .prop_flat_map(|(n, r, q, origin, d)| {
                prop::collection::vec(prop::collection::vec(-20i64..20, 2 * n), r).prop_map(
                    move |rows| {
                        let modulus = q.map_or(Modulus::Unbounded, Modulus::Finite);
                        StabilizerCode::new_unchecked(n, modulus, rows)
                            .unwrap()
                            .with_origin_prime(origin.then_some(2))
                            .with_claimed_distance(d.then_some(3))
                    },
                )
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn round_trip(code in code_strategy()) {
            let text = serialize_code(&code);
            let back = parse_code_file(&text, false).unwrap();
            prop_assert_eq!(&back, &code);
            prop_assert_eq!(serialize_code(&back), text);
        }
    }
}
