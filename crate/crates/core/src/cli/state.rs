//! State files.
//!
//! ```text
//! pure 1 1 0 0
//! ```
//! ```text
//! mixed
//! w 1/2 pure 1 0 0 0
//! w 1/2 pure 0 1 0 0
//! ```
//! ```text
//! matrix
//! 1/2 0
//! 0 1/2
//! ```

use super::dsl::{parse_coords, tokenize, ParseError};
use crate::exactlin::{parse_rational, RMatrix};
use crate::probability::DensityOperator;

pub fn parse_state(text: &str) -> Result<DensityOperator, ParseError> {
    let lines = tokenize(text);
    let Some((first, rest)) = lines.split_first() else {
        return Err(ParseError {
            line: 1,
            column: 1,
            message: "empty state file".into(),
        });
    };
    let head = first[0];
    let invalid = |line: usize, e: &dyn std::fmt::Display| ParseError {
        line,
        column: 1,
        message: e.to_string(),
    };
    let at = |t: &super::dsl::Token<'_>, message: String| ParseError {
        line: t.line,
        column: t.column,
        message,
    };
    match head.text {
        "pure" => {
            if let Some(extra) = rest.first() {
                return Err(at(&extra[0], "unexpected line after pure state".into()));
            }
            if first.len() < 2 {
                return Err(at(&head, "pure needs coordinates".into()));
            }
            let coords = parse_coords(&first[1..])?;
            DensityOperator::pure(&coords).map_err(|e| invalid(head.line, &e))
        }
        "mixed" => {
            if first.len() > 1 {
                return Err(at(&first[1], "mixed takes no arguments".into()));
            }
            let mut components = Vec::new();
            for line in rest {
                let t = line[0];
                if t.text != "w" || line.len() < 4 || line[2].text != "pure" {
                    return Err(at(&t, "expected `w <weight> pure <coordinates>`".into()));
                }
                let w = parse_rational(line[1].text)
                    .map_err(|_| at(&line[1], format!("invalid rational `{}`", line[1].text)))?;
                let coords = parse_coords(&line[3..])?;
                if coords.is_zero() {
                    return Err(at(&line[3], "zero vector is not a state".into()));
                }
                components.push((w, coords));
            }
            if components.is_empty() {
                return Err(at(&head, "mixed state has no components".into()));
            }
            DensityOperator::mixture(&components).map_err(|e| invalid(head.line, &e))
        }
        "matrix" => {
            if first.len() > 1 {
                return Err(at(&first[1], "matrix takes no arguments".into()));
            }
            let mut rows = Vec::new();
            for line in rest {
                let row = line
                    .iter()
                    .map(|t| {
                        parse_rational(t.text)
                            .map_err(|_| at(t, format!("invalid rational `{}`", t.text)))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                if row.len() != rest.len() {
                    return Err(at(
                        &line[0],
                        format!("row has {} entries, matrix has {} rows", row.len(), rest.len()),
                    ));
                }
                rows.push(row);
            }
            let matrix = RMatrix::from_rows(rows).map_err(|e| invalid(head.line, &e))?;
            DensityOperator::from_matrix(matrix).map_err(|e| invalid(head.line, &e))
        }
        other => Err(at(&head, format!("unknown state kind `{other}`"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{rat, RVector};
    use num_traits::Zero;

    #[test]
    fn three_forms() {
        let pure = parse_state("pure 1 1 0 0\n").unwrap();
        assert_eq!(pure, DensityOperator::pure(&RVector::from_ints(&[1, 1, 0, 0])).unwrap());

        let mixed = parse_state(
            "# maximally mixed\nmixed\nw 1/4 pure 1 0 0 0\nw 1/4 pure 0 1 0 0\nw 1/4 pure 0 0 1 0\nw 1/4 pure 0 0 0 1\n",
        )
        .unwrap();
        assert_eq!(mixed, DensityOperator::maximally_mixed(4));

        let m = parse_state("matrix\n1/2 0\n0 1/2\n").unwrap();
        assert_eq!(m, DensityOperator::maximally_mixed(2));
        assert!(m.matrix().get(0, 1).is_zero());
        assert_eq!(m.matrix().get(1, 1), &rat(1, 2));
    }

    #[test]
    fn rejects_bad_states() {
        assert!(parse_state("").is_err());
        assert!(parse_state("pure 0 0\n").is_err());
        assert!(parse_state("mixed\nw 1/2 pure 1 0\n").is_err());
        let e = parse_state("mixed\nw x pure 1 0\n").unwrap_err();
        assert_eq!((e.line, e.column), (2, 3));
        assert!(parse_state("matrix\n1 0\n0 1\n").unwrap_err().message.contains("trace"));
        assert!(parse_state("matrix\n1 0\n0\n").is_err());
        assert!(parse_state("thermal 1\n").is_err());
    }
}
