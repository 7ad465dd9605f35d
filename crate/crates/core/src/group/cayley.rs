//! Plain-text Cayley table format.
//!
//! ```text
//! # optional comment lines
//! n
//! r_0_0 r_0_1 ... r_0_{n-1}
//! ...
//! ```
//!
//! Row `i`, column `j` holds the 0-based index of `i*j`. The identity is
//! whichever index satisfies the identity law.

use std::fmt::Write;

use super::FiniteGroup;
use crate::error::{Error, Result};

/// Parses and validates a Cayley table.
pub fn load_cayley_table(name: impl Into<String>, text: &str) -> Result<FiniteGroup> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.starts_with('#') && !l.is_empty());

    let (line_no, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        message: "missing order line".into(),
    })?;
    let n: usize = header.parse().map_err(|_| Error::Parse {
        line: line_no,
        message: format!("expected group order, found {header:?}"),
    })?;
    if n == 0 {
        return Err(Error::Parse {
            line: line_no,
            message: "group order must be positive".into(),
        });
    }
    if n > super::MAX_ORDER {
        return Err(Error::OrderTooLarge {
            order: n,
            cap: super::MAX_ORDER,
        });
    }

    let mut table = Vec::with_capacity(n * n);
    for row in 0..n {
        let (line_no, line) = lines.next().ok_or(Error::Parse {
            line: line_no + row + 1,
            message: format!("expected {n} rows, found {row}"),
        })?;
        let before = table.len();
        for token in line.split_whitespace() {
            let v: usize = token.parse().map_err(|_| Error::Parse {
                line: line_no,
                message: format!("row {row}: {token:?} is not a non-negative integer"),
            })?;
            table.push(v);
        }
        let count = table.len() - before;
        if count != n {
            return Err(Error::Parse {
                line: line_no,
                message: format!("row {row} has {count} entries, expected {n}"),
            });
        }
    }
    if let Some((line_no, _)) = lines.next() {
        return Err(Error::Parse {
            line: line_no,
            message: format!("trailing content after {n} rows"),
        });
    }
    FiniteGroup::from_table(name, n, table)
}

/// Serializes a group in the format accepted by [`load_cayley_table`].
pub fn to_cayley_text(group: &FiniteGroup) -> String {
    let n = group.order();
    let mut out = String::with_capacity(n * n * 5);
    writeln!(out, "{n}").unwrap();
    for a in group.elements() {
        let mut first = true;
        for v in group.row(a) {
            if !first {
                out.push(' ');
            }
            first = false;
            write!(out, "{v}").unwrap();
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build_alternating, build_cyclic};

    #[test]
    fn trivial_group() {
        let g = load_cayley_table("t", "1\n0").unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.identity(), 0);
    }

    #[test]
    fn z2_with_comments() {
        let g = load_cayley_table("z2", "# Z_2\n2\n# rows\n0 1\n1 0\n").unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.mul(1, 1), 0);
    }

    #[test]
    fn repeated_entry_names_row() {
        let err = load_cayley_table("bad", "3\n0 1 2\n1 1 0\n2 0 1\n").unwrap_err();
        match err {
            Error::RepeatedInRow { row, value, .. } => {
                assert_eq!(row, 1);
                assert_eq!(value, 1);
            }
            other => panic!("unexpected error {other}"),
        }
        assert!(err_string("3\n0 1 2\n1 1 0\n2 0 1\n").contains("row 1"));
    }

    fn err_string(text: &str) -> String {
        load_cayley_table("bad", text).unwrap_err().to_string()
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        assert!(matches!(
            load_cayley_table("x", "two\n").unwrap_err(),
            Error::Parse { line: 1, .. }
        ));
        assert!(matches!(
            load_cayley_table("x", "2\n0 1\n1\n").unwrap_err(),
            Error::Parse { line: 3, .. }
        ));
        assert!(matches!(
            load_cayley_table("x", "2\n0 1\n1 0\n0 1\n").unwrap_err(),
            Error::Parse { line: 4, .. }
        ));
        assert!(matches!(
            load_cayley_table("x", "").unwrap_err(),
            Error::Parse { .. }
        ));
    }

    #[test]
    fn no_identity_detected() {
        // x*y = -x - y mod 3: a Latin square without an identity.
        let err = load_cayley_table("q", "3\n0 2 1\n2 1 0\n1 0 2\n").unwrap_err();
        assert!(matches!(err, Error::NoIdentity), "{err}");
    }

    #[test]
    fn round_trip() {
        for g in [build_cyclic(7).unwrap(), build_alternating(4).unwrap()] {
            let text = to_cayley_text(&g);
            let h = load_cayley_table(g.name(), &text).unwrap();
            assert_eq!(g, h);
        }
    }
}
