//! Plain-text group files.
//!
//! ```text
//! degree: 5
//! gens: (1 2 3)(4 5), (1 2)
//! ```
//!
//! Generators are in disjoint-cycle notation with fixed points omitted; the
//! identity is written `()`. Blank lines and lines starting with `#` are
//! ignored.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{Group, Limits};
use crate::perm::Perm;

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

pub fn parse_group(text: &str) -> Result<Arc<Group>> {
    parse_group_with(text, Limits::default())
}

pub fn parse_group_with(text: &str, limits: Limits) -> Result<Arc<Group>> {
    let mut degree: Option<usize> = None;
    let mut gens: Option<Vec<Perm>> = None;
    let mut last_line = 0;

    for (n, raw) in text.lines().enumerate() {
        let line_no = n + 1;
        last_line = line_no;
        let trimmed = raw.trim_start();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let indent = raw.len() - trimmed.len();
        let Some((key, value)) = trimmed.split_once(':') else {
            return Err(parse_err(line_no, indent + 1, "expected `key: value`"));
        };
        let value_col = indent + key.len() + 2;
        match key.trim() {
            "degree" => {
                if degree.is_some() {
                    return Err(parse_err(line_no, indent + 1, "duplicate `degree` line"));
                }
                let d: usize = value.trim().parse().map_err(|_| {
                    parse_err(
                        line_no,
                        value_col,
                        format!("invalid degree `{}`", value.trim()),
                    )
                })?;
                if d == 0 {
                    return Err(parse_err(line_no, value_col, "degree must be at least 1"));
                }
                if d > limits.max_degree {
                    return Err(Error::DegreeCap {
                        degree: d,
                        cap: limits.max_degree,
                    });
                }
                degree = Some(d);
            }
            "gens" => {
                let Some(d) = degree else {
                    return Err(parse_err(line_no, indent + 1, "`gens` before `degree`"));
                };
                if gens.is_some() {
                    return Err(parse_err(line_no, indent + 1, "duplicate `gens` line"));
                }
                gens = Some(parse_gens(value, d, line_no, value_col)?);
            }
            other => {
                return Err(parse_err(
                    line_no,
                    indent + 1,
                    format!("unknown key `{other}`"),
                ));
            }
        }
    }

    let degree = degree.ok_or_else(|| parse_err(last_line.max(1), 1, "missing `degree` line"))?;
    let gens = gens.ok_or_else(|| parse_err(last_line.max(1), 1, "missing `gens` line"))?;
    Group::with_limits(degree, gens, limits)
}

/// Parses `value`, which starts at one-based column `col0` of the line.
fn parse_gens(value: &str, degree: usize, line: usize, col0: usize) -> Result<Vec<Perm>> {
    let chars: Vec<char> = value.chars().collect();
    let col = |i: usize| col0 + i;
    let mut out = Vec::new();
    let mut i = 0;
    let skip_ws = |i: &mut usize| {
        while *i < chars.len() && chars[*i].is_whitespace() {
            *i += 1;
        }
    };

    skip_ws(&mut i);
    if i == chars.len() {
        return Ok(out);
    }
    loop {
        skip_ws(&mut i);
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut moved = vec![false; degree];
        if i >= chars.len() || chars[i] != '(' {
            return Err(parse_err(line, col(i), "expected `(`"));
        }
        while i < chars.len() && chars[i] == '(' {
            i += 1;
            let mut cycle = Vec::new();
            loop {
                skip_ws(&mut i);
                if i >= chars.len() {
                    return Err(parse_err(line, col(i), "unterminated cycle"));
                }
                if chars[i] == ')' {
                    i += 1;
                    break;
                }
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                if start == i {
                    return Err(parse_err(
                        line,
                        col(start),
                        format!("unexpected `{}`", chars[start]),
                    ));
                }
                let text: String = chars[start..i].iter().collect();
                let pt: usize = text
                    .parse()
                    .map_err(|_| parse_err(line, col(start), format!("invalid point `{text}`")))?;
                if pt == 0 || pt > degree {
                    return Err(parse_err(
                        line,
                        col(start),
                        format!("point {pt} outside 1..={degree}"),
                    ));
                }
                if std::mem::replace(&mut moved[pt - 1], true) {
                    return Err(parse_err(
                        line,
                        col(start),
                        format!("point {pt} repeated in generator"),
                    ));
                }
                cycle.push(pt);
            }
            if !cycle.is_empty() {
                cycles.push(cycle);
            }
            skip_ws(&mut i);
        }
        out.push(
            Perm::from_cycles(degree, &cycles)
                .map_err(|e| parse_err(line, col(i), e.to_string()))?,
        );
        skip_ws(&mut i);
        if i == chars.len() {
            return Ok(out);
        }
        if chars[i] != ',' {
            return Err(parse_err(
                line,
                col(i),
                format!("expected `,` but found `{}`", chars[i]),
            ));
        }
        i += 1;
    }
}

/// Emits the text format for `g`. A group without generators is written
/// with the identity generator `()`.
pub fn render(g: &Group) -> String {
    let gens: Vec<String> = if g.generators().is_empty() {
        vec!["()".to_string()]
    } else {
        g.generators().iter().map(|p| p.to_string()).collect()
    };
    format!("degree: {}\ngens: {}\n", g.degree(), gens.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_examples() {
        assert_eq!(
            parse_group("degree: 3\ngens: (1 2 3), (1 2)")
                .unwrap()
                .order(),
            6
        );
        assert_eq!(parse_group("degree: 1\ngens: ()").unwrap().order(), 1);
        let g = parse_group("# comment\n\ndegree: 5\ngens: (1 2 3)(4 5), (1 2)\n").unwrap();
        assert_eq!(g.order(), 12);
        assert_eq!(parse_group("degree: 4\ngens:").unwrap().order(), 1);
    }

    #[test]
    fn point_beyond_degree_is_located() {
        let err = parse_group("degree: 3\ngens: (1 2 4)").unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                line: 2,
                column: 12,
                message: "point 4 outside 1..=3".into()
            }
        );
    }

    #[test]
    fn malformed_input() {
        for bad in [
            "gens: (1 2)",
            "degree: x\ngens: ()",
            "degree: 3\ngens: (1 2",
            "degree: 3\ngens: (1 2) (2 3)",
            "degree: 3\ngens: (1 2); (2 3)",
            "degree: 3\ngens: (1 a)",
            "degree: 3",
            "degree: 3\nfoo: 1\ngens: ()",
            "degree: 0\ngens: ()",
        ] {
            assert!(
                matches!(parse_group(bad), Err(Error::Parse { .. })),
                "{bad:?}"
            );
        }
    }

    #[test]
    fn degree_cap_applies() {
        assert!(matches!(
            parse_group("degree: 40\ngens: ()"),
            Err(Error::DegreeCap {
                degree: 40,
                cap: 32
            })
        ));
    }

    #[test]
    fn render_round_trip() {
        let g = parse_group("degree: 5\ngens: (1 2 3)(4 5), (1 2)").unwrap();
        let text = render(&g);
        assert_eq!(text, "degree: 5\ngens: (1 2 3)(4 5), (1 2)\n");
        assert_eq!(parse_group(&text).unwrap().elements(), g.elements());
    }
}
