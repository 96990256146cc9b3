//! A tiny S-expression reader shared by the textual forms of trees, shrubs,
//! caps, mushrooms and painted trees.
//!
//! Tokens are the brackets `( ) [ ] { } < >`, the separators `;` and `|`
//! (read as atoms), and maximal runs of other non-whitespace characters.

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Sexp {
    Atom(String),
    List(char, Vec<Sexp>),
}

fn closing(open: char) -> Option<char> {
    match open {
        '(' => Some(')'),
        '[' => Some(']'),
        '{' => Some('}'),
        '<' => Some('>'),
        _ => None,
    }
}

fn tokenize(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    for c in text.chars() {
        if c.is_whitespace() || "()[]{}<>;|".contains(c) {
            if !cur.is_empty() {
                out.push(std::mem::take(&mut cur));
            }
            if !c.is_whitespace() {
                out.push(c.to_string());
            }
        } else {
            cur.push(c);
        }
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    out
}

fn read(tokens: &[String], pos: &mut usize) -> Result<Sexp> {
    let tok = tokens
        .get(*pos)
        .ok_or_else(|| Error::Parse("unexpected end of input".into()))?;
    *pos += 1;
    let c = tok.chars().next().unwrap_or(' ');
    if let Some(close) = closing(c) {
        let mut items = Vec::new();
        loop {
            match tokens.get(*pos) {
                None => return Err(Error::Parse(format!("unclosed '{c}'"))),
                Some(t) if t.starts_with(close) => {
                    *pos += 1;
                    return Ok(Sexp::List(c, items));
                }
                Some(_) => items.push(read(tokens, pos)?),
            }
        }
    }
    if ")]}>".contains(c) {
        return Err(Error::Parse(format!("unexpected '{c}'")));
    }
    Ok(Sexp::Atom(tok.clone()))
}

/// Parse exactly one expression.
pub(crate) fn parse(text: &str) -> Result<Sexp> {
    let tokens = tokenize(text);
    let mut pos = 0;
    let e = read(&tokens, &mut pos)?;
    if pos != tokens.len() {
        return Err(Error::Parse(format!(
            "trailing input after expression: '{}'",
            tokens[pos..].join(" ")
        )));
    }
    Ok(e)
}

impl Sexp {
    pub(crate) fn is_atom(&self, s: &str) -> bool {
        matches!(self, Sexp::Atom(a) if a == s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_nested_lists() {
        let e = parse("{(x x) ; [x x] x}").unwrap();
        match e {
            Sexp::List('{', items) => {
                assert_eq!(items.len(), 4);
                assert!(items[1].is_atom(";"));
            }
            other => panic!("{other:?}"),
        }
        assert!(parse("(x x").is_err());
        assert!(parse("x x").is_err());
        assert!(parse(")").is_err());
    }
}
