use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A nondecreasing, eventually constant sequence of naturals.
///
/// `prefix` runs through the first index at which the sequence reaches
/// `stable`; every later value equals `stable`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HilbertSequence {
    prefix: Vec<u64>,
    stable: u64,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SequenceError {
    #[error("sequence prefix is empty")]
    Empty,
    #[error("sequence decreases at index {0}")]
    Decreasing(usize),
    #[error("last prefix entry {last} differs from the stable value {stable}")]
    Unstable { last: u64, stable: u64 },
}

impl HilbertSequence {
    pub fn new(prefix: Vec<u64>, stable: u64) -> Result<Self, SequenceError> {
        let last = *prefix.last().ok_or(SequenceError::Empty)?;
        if let Some(i) = prefix.windows(2).position(|w| w[0] > w[1]) {
            return Err(SequenceError::Decreasing(i + 1));
        }
        if last != stable {
            return Err(SequenceError::Unstable { last, stable });
        }
        Ok(HilbertSequence { prefix, stable })
    }

    /// Tabulates `f(0), f(1), ...` up to the first value equal to `stable`.
    ///
    /// Panics if `f` has not reached `stable` after `limit` terms.
    pub(crate) fn tabulate(stable: u64, limit: usize, f: impl Fn(i64) -> u64) -> Self {
        let mut prefix = Vec::new();
        for t in 0..=limit {
            let v = f(t as i64);
            prefix.push(v);
            if v == stable {
                return HilbertSequence { prefix, stable };
            }
        }
        panic!("sequence did not stabilize at {stable} within {limit} terms");
    }

    pub fn prefix(&self) -> &[u64] {
        &self.prefix
    }

    pub fn stable(&self) -> u64 {
        self.stable
    }

    /// Value at `t`; zero for negative `t`.
    pub fn value(&self, t: i64) -> u64 {
        if t < 0 {
            0
        } else {
            self.prefix.get(t as usize).copied().unwrap_or(self.stable)
        }
    }

    /// The first `len` values, padding with the stable value.
    pub fn take(&self, len: usize) -> Vec<u64> {
        (0..len as i64).map(|t| self.value(t)).collect()
    }

    /// Index of the first entry equal to the stable value.
    pub fn stabilization_index(&self) -> usize {
        self.prefix.len() - 1
    }
}

impl fmt::Display for HilbertSequence {
    /// `1,3,6,10,10,…`: the prefix followed by an ellipsis for the constant tail.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.prefix {
            write!(f, "{v},")?;
        }
        write!(f, "…")
    }
}
