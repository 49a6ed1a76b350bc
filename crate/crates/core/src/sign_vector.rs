//! Projective sign vectors.
//!
//! A sign vector is a word over `{+, -, 0}` of length `n` with at least one
//! nonzero entry, considered modulo global negation. The canonical
//! representative stored here always has `+` as its first nonzero entry, so
//! structural equality coincides with projective equality.

use std::fmt;
use std::str::FromStr;

use crate::blocks::BlockTuple;
use crate::error::{Error, Result};

/// One entry of a sign vector.
///
/// The variant order `Plus < Minus < Zero` matches the byte order of the
/// rendered characters `'+' < '-' < '0'`, so deriving `Ord` makes vector
/// comparison agree with lexicographic comparison of the rendered strings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
    Zero,
}

impl Sign {
    /// The rendered character.
    pub fn as_char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
            Sign::Zero => '0',
        }
    }

    /// Parse a single sign character.
    pub fn from_char(c: char) -> Result<Sign> {
        match c {
            '+' => Ok(Sign::Plus),
            '-' => Ok(Sign::Minus),
            '0' => Ok(Sign::Zero),
            other => Err(Error::BadSignChar(other)),
        }
    }

    /// Global negation of a single entry.
    pub fn negated(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
            Sign::Zero => Sign::Zero,
        }
    }

    /// True for `+` and `-`.
    pub fn is_nonzero(self) -> bool {
        self != Sign::Zero
    }
}

/// A projective sign vector in canonical form (first nonzero entry `+`).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignVector {
    entries: Vec<Sign>,
}

impl SignVector {
    /// Canonicalize `raw`: negate globally if the first nonzero entry is `-`.
    /// Errors on the zero vector (including the empty one).
    pub fn normalize(raw: &[Sign]) -> Result<SignVector> {
        let first = raw.iter().find(|s| s.is_nonzero()).ok_or(Error::ZeroVector)?;
        let entries = if *first == Sign::Minus {
            raw.iter().map(|s| s.negated()).collect()
        } else {
            raw.to_vec()
        };
        Ok(SignVector { entries })
    }

    /// Length `n` of the vector.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    /// Always false: the zero vector is rejected at construction.
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// The canonical entries.
    pub fn entries(&self) -> &[Sign] {
        &self.entries
    }

    /// Entry at 1-based position `i`.
    pub fn entry(&self, i: usize) -> Sign {
        self.entries[i - 1]
    }

    /// Number of nonzero entries.
    pub fn support_size(&self) -> usize {
        self.entries.iter().filter(|s| s.is_nonzero()).count()
    }

    /// 1-based positions of the nonzero entries, ascending.
    pub fn support(&self) -> Vec<usize> {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, s)| s.is_nonzero())
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// Number of adjacent opposite-sign pairs in the subsequence of nonzero
    /// entries.
    pub fn sign_changes(&self) -> usize {
        self.entries
            .iter()
            .filter(|s| s.is_nonzero())
            .collect::<Vec<_>>()
            .windows(2)
            .filter(|w| w[0] != w[1])
            .count()
    }

    /// Split the support into the maximal runs of constant sign. Block `j`
    /// (1-based) carries sign `(-1)^(j-1)`; zeros never break a run.
    pub fn to_block_tuple(&self) -> BlockTuple {
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut last: Option<Sign> = None;
        for (i, &s) in self.entries.iter().enumerate() {
            if !s.is_nonzero() {
                continue;
            }
            if last != Some(s) {
                blocks.push(Vec::new());
            }
            blocks.last_mut().expect("run started").push(i + 1);
            last = Some(s);
        }
        BlockTuple::new(self.len(), blocks).expect("runs of a canonical vector form a valid tuple")
    }

    /// Inverse of [`to_block_tuple`](Self::to_block_tuple): position `i` gets
    /// sign `(-1)^(j-1)` when `i` lies in block `j`, and `0` otherwise.
    pub fn from_block_tuple(tuple: &BlockTuple) -> SignVector {
        let mut entries = vec![Sign::Zero; tuple.n()];
        for (j, block) in tuple.blocks().iter().enumerate() {
            let sign = if j % 2 == 0 { Sign::Plus } else { Sign::Minus };
            for &i in block {
                entries[i - 1] = sign;
            }
        }
        SignVector { entries }
    }

    /// Replace the (zero) entry at 1-based position `i` and re-canonicalize.
    pub fn with_entry(&self, i: usize, sign: Sign) -> Result<SignVector> {
        let mut raw = self.entries.clone();
        raw[i - 1] = sign;
        SignVector::normalize(&raw)
    }

    /// Projective order: true when some representative of `self` agrees with
    /// `other` on its whole support. Both orientations of `self` are tried
    /// because canonicalization fixes the first nonzero entry, not the
    /// relative orientation of a pair.
    pub fn leq(&self, other: &SignVector) -> bool {
        fn oriented(a: &[Sign], b: &[Sign], flip: bool) -> bool {
            a.iter().zip(b).all(|(&x, &y)| {
                let x = if flip { x.negated() } else { x };
                x == Sign::Zero || x == y
            })
        }
        self.len() == other.len()
            && (oriented(&self.entries, &other.entries, false)
                || oriented(&self.entries, &other.entries, true))
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &s in &self.entries {
            write!(f, "{}", s.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for SignVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<SignVector> {
        let raw = s.chars().map(Sign::from_char).collect::<Result<Vec<_>>>()?;
        SignVector::normalize(&raw)
    }
}
