//! The Koszul sign rule and graded words.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

fn check_permutation(perm: &[usize]) -> Result<()> {
    let mut seen = vec![false; perm.len()];
    for &p in perm {
        if p >= perm.len() || seen[p] {
            return Err(Error::NotAPermutation(perm.to_vec()));
        }
        seen[p] = true;
    }
    Ok(())
}

/// Koszul sign of moving element `i` to position `perm[i]`.
///
/// Returns `(−1)^{Σ deg_i·deg_j}` over inversions `i < j`, `perm[i] > perm[j]`.
/// Positions are zero-based.
pub fn koszul_sign(perm: &[usize], degrees: &[i64]) -> Result<i32> {
    Ok(if koszul_parity(perm, degrees)? { -1 } else { 1 })
}

/// Parity (true = odd) of the Koszul exponent; see [`koszul_sign`].
pub fn koszul_parity(perm: &[usize], degrees: &[i64]) -> Result<bool> {
    if perm.len() != degrees.len() {
        return Err(Error::LengthMismatch {
            expected: perm.len(),
            found: degrees.len(),
        });
    }
    check_permutation(perm)?;
    let mut odd = false;
    for i in 0..perm.len() {
        if degrees[i] & 1 == 0 {
            continue;
        }
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] && degrees[j] & 1 == 1 {
                odd = !odd;
            }
        }
    }
    Ok(odd)
}

/// A formal graded symbol.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Symbol {
    /// Identifier; two symbols with equal id and degree are interchangeable.
    pub id: String,
    /// Integer degree (only its parity affects signs).
    pub degree: i64,
}

impl Symbol {
    /// Convenience constructor.
    pub fn new(id: impl Into<String>, degree: i64) -> Self {
        Symbol { id: id.into(), degree }
    }
}

/// An ordered word of graded symbols (a tensor product of graded lines).
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedWord {
    /// The symbols, left to right.
    pub symbols: Vec<Symbol>,
}

impl GradedWord {
    /// The empty word.
    pub fn new() -> Self {
        Self::default()
    }

    /// Build from symbols.
    pub fn from_symbols(symbols: Vec<Symbol>) -> Self {
        GradedWord { symbols }
    }

    /// Append a symbol, returning `self` for chaining.
    pub fn with(mut self, id: impl Into<String>, degree: i64) -> Self {
        self.symbols.push(Symbol::new(id, degree));
        self
    }

    /// Append all symbols of another word.
    pub fn extend(&mut self, other: &GradedWord) {
        self.symbols.extend(other.symbols.iter().cloned());
    }

    /// Number of symbols.
    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    /// True iff the word is empty.
    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Total degree.
    pub fn degree(&self) -> i64 {
        self.symbols.iter().map(|s| s.degree).sum()
    }

    /// Degrees in order.
    pub fn degrees(&self) -> Vec<i64> {
        self.symbols.iter().map(|s| s.degree).collect()
    }

    /// Apply `perm` (element `i` moves to position `perm[i]`).
    pub fn permute(&self, perm: &[usize]) -> Result<GradedWord> {
        if perm.len() != self.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                found: perm.len(),
            });
        }
        check_permutation(perm)?;
        let mut out: Vec<Option<Symbol>> = vec![None; self.len()];
        for (i, s) in self.symbols.iter().enumerate() {
            out[perm[i]] = Some(s.clone());
        }
        Ok(GradedWord {
            symbols: out.into_iter().map(|s| s.expect("bijection")).collect(),
        })
    }

    /// The permutation carrying `self` to `target`.
    ///
    /// Symbols are matched by `(id, degree)`; repeated symbols are matched
    /// in order of occurrence (which leaves the sign unaffected, since equal
    /// symbols are never transposed with each other).
    pub fn permutation_to(&self, target: &GradedWord) -> Result<Vec<usize>> {
        if self.len() != target.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                found: target.len(),
            });
        }
        let mut used = vec![false; target.len()];
        let mut perm = Vec::with_capacity(self.len());
        for s in &self.symbols {
            let pos = (0..target.len())
                .find(|&j| !used[j] && target.symbols[j] == *s)
                .ok_or_else(|| Error::UnknownId(format!("{s} not found in target word")))?;
            used[pos] = true;
            perm.push(pos);
        }
        Ok(perm)
    }

    /// Koszul parity (true = odd) of rearranging `self` into `target`.
    pub fn koszul_to(&self, target: &GradedWord) -> Result<bool> {
        let perm = self.permutation_to(target)?;
        koszul_parity(&perm, &self.degrees())
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.id, self.degree)
    }
}

impl fmt::Display for GradedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, s) in self.symbols.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_signs() {
        assert_eq!(koszul_sign(&[0, 1, 2], &[1, 3, 5]).unwrap(), 1);
        assert_eq!(koszul_sign(&[1, 0], &[1, 1]).unwrap(), -1);
        // (a,b,c) -> (c,a,b): a to 1, b to 2, c to 0.
        assert_eq!(koszul_sign(&[1, 2, 0], &[1, 1, 0]).unwrap(), 1);
    }

    #[test]
    fn errors() {
        assert!(matches!(koszul_sign(&[0, 1], &[1]), Err(Error::LengthMismatch { .. })));
        assert!(matches!(koszul_sign(&[0, 0], &[1, 1]), Err(Error::NotAPermutation(_))));
    }

    #[test]
    fn word_rearrangement() {
        let w = GradedWord::new().with("a", 1).with("b", 1).with("c", 2);
        let t = GradedWord::new().with("b", 1).with("c", 2).with("a", 1);
        assert!(w.koszul_to(&t).unwrap());
        let p = w.permutation_to(&t).unwrap();
        assert_eq!(w.permute(&p).unwrap(), t);
    }
}
