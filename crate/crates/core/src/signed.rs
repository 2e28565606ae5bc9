//! Schur symbols indexed by arbitrary integer sequences. A sequence that is
//! not weakly decreasing either straightens to a unique weakly decreasing one
//! with a sign, or collapses to zero; the bookkeeping runs through the shifted
//! keys `entry - position`.

use crate::partition::{Partition, SkewShape};
use std::fmt;

/// A column-height sequence carrying a symbolic sign.
#[derive(Clone, PartialEq, Eq)]
pub struct SignedSequence {
    pub sign: i64,
    pub entries: Vec<i64>,
}

impl SignedSequence {
    pub fn new(sign: i64, entries: Vec<i64>) -> Self {
        assert!(sign == 1 || sign == -1, "sign must be +1 or -1");
        SignedSequence { sign, entries }
    }

    /// Adds `m` to entry `i` (0-based).
    pub fn shift(&self, i: usize, m: i64) -> SignedSequence {
        let mut entries = self.entries.clone();
        entries[i] += m;
        SignedSequence {
            sign: self.sign,
            entries,
        }
    }

    /// Adds `r[i] * n` to every entry.
    pub fn shift_all(&self, r: &[i64], n: u32) -> SignedSequence {
        assert_eq!(r.len(), self.entries.len());
        let entries = self
            .entries
            .iter()
            .zip(r)
            .map(|(&a, &ri)| a + ri * n as i64)
            .collect();
        SignedSequence {
            sign: self.sign,
            entries,
        }
    }

    /// Straightens to a weakly decreasing sequence. Two equal keys
    /// `entry - position` kill the symbol; otherwise sorting the keys costs
    /// one sign flip per inversion.
    pub fn normalize(&self) -> Normalized {
        let keys: Vec<i64> = self
            .entries
            .iter()
            .enumerate()
            .map(|(i, &a)| a - (i as i64 + 1))
            .collect();
        let mut inversions = 0u64;
        for i in 0..keys.len() {
            for j in i + 1..keys.len() {
                if keys[i] == keys[j] {
                    return Normalized::Zero;
                }
                if keys[i] < keys[j] {
                    inversions += 1;
                }
            }
        }
        let mut sorted = keys;
        sorted.sort_unstable_by(|a, b| b.cmp(a));
        let parts: Vec<i64> = sorted
            .iter()
            .enumerate()
            .map(|(j, &k)| k + j as i64 + 1)
            .collect();
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        Normalized::Term {
            sign: if inversions % 2 == 0 {
                self.sign
            } else {
                -self.sign
            },
            parts,
        }
    }
}

impl fmt::Display for SignedSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign < 0 {
            write!(f, "-")?;
        } else if self.entries.first().is_some_and(|&a| a < 0) {
            write!(f, "+")?;
        }
        for (i, a) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for SignedSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Result of straightening: zero, or a signed weakly decreasing sequence
/// whose entries may still be negative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Normalized {
    Zero,
    Term { sign: i64, parts: Vec<i64> },
}

/// Result of reading a straightened height sequence as a skew shape over the
/// inner shape `mu`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SkewResolution {
    Zero,
    Term { sign: i64, shape: SkewShape },
}

/// Interprets `alpha` as column heights of an outer shape and forms the skew
/// shape over `mu`. Zero when the heights straighten to zero, go negative, or
/// leave no room for `mu`.
pub fn resolve_skew_symbol(alpha: &SignedSequence, mu: &Partition) -> SkewResolution {
    let (sign, parts) = match alpha.normalize() {
        Normalized::Zero => return SkewResolution::Zero,
        Normalized::Term { sign, parts } => (sign, parts),
    };
    if parts.iter().any(|&p| p < 0) {
        return SkewResolution::Zero;
    }
    let heights = Partition::new(parts.iter().map(|&p| p as u32).collect());
    let outer = heights.conjugate();
    if !outer.contains(mu) {
        return SkewResolution::Zero;
    }
    SkewResolution::Term {
        sign,
        shape: SkewShape::new(outer, mu.clone()),
    }
}
