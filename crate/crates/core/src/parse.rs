//! Text syntax for groups and connection sets.
//!
//! * group: `Z9`, `Z3xZ3`, `Z5xZ3` (any product of cyclic groups; products
//!   that are not in invariant-factor form are mapped onto it)
//! * element: `4`, `-1`, `(1,2)`, `(1,-1)`
//! * connection set: `{1,-1,3}` or `{(1,0),(1,1)}`; inverses may be left
//!   out, the set is closed under negation and must not contain 0
//! * circulant: `n:a,b,c`, one residue per `±` pair

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::graph::CayleySpec;
use crate::groups::{AbelianGroup, ConnectionSet, CyclicProduct, GroupError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("unexpected token '{token}': {expected}")]
    Token { token: String, expected: &'static str },
    #[error(transparent)]
    Group(#[from] GroupError),
}

fn bad(token: &str, expected: &'static str) -> ParseError {
    ParseError::Token {
        token: token.to_string(),
        expected,
    }
}

/// Moduli of a product such as `Z3xZ5`.
pub fn parse_moduli(text: &str) -> Result<Vec<u32>, ParseError> {
    let text = text.trim();
    if text.is_empty() {
        return Err(bad(text, "a group such as Z9 or Z3xZ3"));
    }
    text.split(['x', 'X', '×'])
        .map(|part| {
            let part = part.trim();
            let digits = part
                .strip_prefix('Z')
                .or_else(|| part.strip_prefix('z'))
                .map(|d| d.trim_start_matches('_'))
                .ok_or_else(|| bad(part, "a cyclic factor such as Z9"))?;
            match digits.parse::<u32>() {
                Ok(d) if d >= 1 => Ok(d),
                _ => Err(bad(part, "a positive modulus")),
            }
        })
        .collect()
}

/// The product written in `text`, with its map onto the canonical group.
pub fn parse_group(text: &str) -> Result<CyclicProduct, ParseError> {
    Ok(CyclicProduct::new(&parse_moduli(text)?)?)
}

fn parse_int(token: &str) -> Result<i64, ParseError> {
    token
        .trim()
        .parse::<i64>()
        .map_err(|_| bad(token.trim(), "an integer"))
}

/// Integer coordinates of an element.
pub fn parse_element(text: &str) -> Result<Vec<i64>, ParseError> {
    let text = text.trim();
    match text.strip_prefix('(') {
        Some(rest) => {
            let inner = rest
                .strip_suffix(')')
                .ok_or_else(|| bad(text, "a closing parenthesis"))?;
            inner.split(',').map(parse_int).collect()
        }
        None => Ok(alloc::vec![parse_int(text)?]),
    }
}

/// Splits on commas that are not inside parentheses.
fn split_top_level(text: &str) -> Result<Vec<&str>, ParseError> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err(bad(&text[start..=i], "balanced parentheses"));
                }
            }
            ',' if depth == 0 => {
                parts.push(&text[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(bad(&text[start..], "balanced parentheses"));
    }
    parts.push(&text[start..]);
    Ok(parts)
}

/// Elements of a set literal, as integer coordinates.
pub fn parse_set(text: &str) -> Result<Vec<Vec<i64>>, ParseError> {
    let trimmed = text.trim();
    let inner = match trimmed.strip_prefix('{') {
        Some(rest) => rest
            .strip_suffix('}')
            .ok_or_else(|| bad(trimmed, "a closing brace"))?,
        None => trimmed,
    };
    if inner.trim().is_empty() {
        return Err(bad(trimmed, "a nonempty connection set"));
    }
    split_top_level(inner)?.into_iter().map(parse_element).collect()
}

/// Group and connection set from their text forms, in canonical coordinates.
pub fn parse_cayley(group: &str, set: &str) -> Result<CayleySpec, ParseError> {
    let product = parse_group(group)?;
    let elements = parse_set(set)?
        .iter()
        .map(|coords| product.to_canonical(coords))
        .collect::<Result<Vec<_>, _>>()?;
    let group = product.group().clone();
    let connection_set = ConnectionSet::closure(&group, elements)?;
    Ok(CayleySpec {
        group,
        connection_set,
    })
}

/// `n:a,b,c` into `n` and the residues.
pub fn parse_circulant(text: &str) -> Result<(u32, Vec<i64>), ParseError> {
    let (n, residues) = text
        .split_once(':')
        .ok_or_else(|| bad(text, "n:a,b,c"))?;
    let n: u32 = match n.trim().parse() {
        Ok(n) if n >= 2 => n,
        _ => return Err(bad(n.trim(), "an order of at least 2")),
    };
    let residues = residues
        .split(',')
        .map(parse_int)
        .collect::<Result<Vec<_>, _>>()?;
    Ok((n, residues))
}

/// Canonical group of a product; `Z3xZ3` and `Z9` stay as written.
pub fn canonical_group(text: &str) -> Result<AbelianGroup, ParseError> {
    Ok(parse_group(text)?.group().clone())
}

/// Inverse of the group syntax, for messages.
pub fn format_moduli(moduli: &[u32]) -> String {
    moduli
        .iter()
        .map(|d| format!("Z{d}"))
        .collect::<Vec<_>>()
        .join("x")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn groups() {
        assert_eq!(canonical_group("Z9").unwrap().factors(), &[9]);
        assert_eq!(canonical_group("Z3xZ3").unwrap().factors(), &[3, 3]);
        assert_eq!(canonical_group("Z5xZ3").unwrap().factors(), &[15]);
        assert_eq!(canonical_group("Z_2 x Z_4").unwrap().factors(), &[2, 4]);
        assert_eq!(
            parse_moduli("Z9xQ2"),
            Err(ParseError::Token {
                token: "Q2".into(),
                expected: "a cyclic factor such as Z9"
            })
        );
        assert!(parse_moduli("Z0").is_err());
        assert_eq!(format_moduli(&[3, 3]), "Z3xZ3");
    }

    #[test]
    fn sets() {
        assert_eq!(parse_set("{1,-1,3}").unwrap(), vec![vec![1], vec![-1], vec![3]]);
        assert_eq!(parse_set("{(1,0), (1,1)}").unwrap(), vec![vec![1, 0], vec![1, 1]]);
        assert!(parse_set("{(1,0}").is_err());
        assert!(parse_set("{}").is_err());
        let spec = parse_cayley("Z9", "{1,3}").unwrap();
        assert_eq!(spec.connection_set.to_text(), "{1,3,6,8}");
        assert!(matches!(
            parse_cayley("Z9", "{0,1}"),
            Err(ParseError::Group(GroupError::ContainsIdentity))
        ));
        let spec = parse_cayley("Z3xZ3", "{(1,0),(1,1)}").unwrap();
        assert_eq!(spec.connection_set.len(), 4);
    }

    #[test]
    fn circulants() {
        assert_eq!(parse_circulant("9:1,3").unwrap(), (9, vec![1, 3]));
        assert!(parse_circulant("9").is_err());
        assert!(parse_circulant("9:1,x").is_err());
    }
}
