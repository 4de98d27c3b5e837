//! Lower and upper bounds on Hilbert functions computed from a reduction
//! vector alone, the GMS criterion, and standard configurations.
//!
//! For a full reduction vector `v = (v_1, ..., v_r)` of a fat point scheme
//! `Z` in the plane,
//!
//! ```text
//! f_v(t) = sum_{i=0}^{r-1} max(0, min(t - i + 1, v_{i+1}))
//! F_v(t) = min_{0 <= i <= r} ( C(t+2, 2) - C(t-i+2, 2) + v_{i+1} + ... + v_r )
//! ```
//!
//! satisfy `f_v <= h_Z <= F_v`, with equality throughout when `v` is GMS.

use thiserror::Error;

use crate::sequence::HilbertSequence;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoundsError {
    #[error("vector {0:?} is not non-increasing")]
    NotNonIncreasing(Vec<u64>),
    #[error("the last residual degree must be 0, got {0}")]
    NonEmptyFinalResidual(u64),
    #[error("no residual degrees given")]
    NoResidualDegrees,
}

/// Binomial coefficient with `C(n, k) = 0` whenever `n < k`, including negative `n`.
pub fn binom(n: i64, k: u64) -> u64 {
    if n < 0 || (n as u64) < k {
        return 0;
    }
    let n = n as u64;
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    u64::try_from(acc).expect("binomial coefficient overflows u64")
}

fn tri(t: i64) -> u64 {
    binom(t + 2, 2)
}

/// `f_v(t)`, the lower bound.
pub fn lower_bound_at(v: &[u64], t: i64) -> u64 {
    v.iter()
        .enumerate()
        .map(|(i, &vi)| (t - i as i64 + 1).min(vi as i64).max(0) as u64)
        .sum()
}

/// `F_v(t)`, the upper bound. Zero for negative `t`.
pub fn upper_bound_at(v: &[u64], t: i64) -> u64 {
    if t < 0 {
        return 0;
    }
    let mut tail: u64 = v.iter().sum();
    let mut best = tail; // i = 0
    for (i, &vi) in v.iter().enumerate() {
        tail -= vi;
        let i = i as i64 + 1;
        best = best.min(tri(t) - tri(t - i) + tail);
    }
    best
}

fn stabilization_limit(v: &[u64]) -> usize {
    v.iter().sum::<u64>() as usize + v.len() + 2
}

pub fn lower_bound(v: &[u64]) -> HilbertSequence {
    HilbertSequence::tabulate(v.iter().sum(), stabilization_limit(v), |t| {
        lower_bound_at(v, t)
    })
}

pub fn upper_bound(v: &[u64]) -> HilbertSequence {
    HilbertSequence::tabulate(v.iter().sum(), stabilization_limit(v), |t| {
        upper_bound_at(v, t)
    })
}

/// `f_v(t) = f_{v'}(t-1) + min(t+1, v_1)` with `v' = (v_2, ..., v_r)`.
pub fn lower_bound_recursive(v: &[u64], t: i64) -> u64 {
    match v.split_first() {
        Some((&first, rest)) if t >= 0 => {
            lower_bound_recursive(rest, t - 1) + (t as u64 + 1).min(first)
        }
        _ => 0,
    }
}

/// `F_v(t) = min(t + 1 + F_{v'}(t-1), v_1 + ... + v_r)`.
pub fn upper_bound_recursive(v: &[u64], t: i64) -> u64 {
    match v.split_first() {
        Some((_, rest)) if t >= 0 => {
            (t as u64 + 1 + upper_bound_recursive(rest, t - 1)).min(v.iter().sum())
        }
        _ => 0,
    }
}

/// Left-justified rows of lattice points; row `j` holds `rows[j]` points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StandardConfiguration {
    rows: Vec<u64>,
}

impl StandardConfiguration {
    pub fn new(v: &[u64]) -> Self {
        StandardConfiguration { rows: v.to_vec() }
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    /// Lattice points `(i, j)` with `0 <= i < rows[j]`.
    pub fn points(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(j, &len)| (0..len).map(move |i| (i, j as u64)))
    }

    pub fn len(&self) -> u64 {
        self.rows.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Number of points on each anti-diagonal `i + j = t`, reported through
    /// index `rows.len() - 1 + max(rows)` so the zero tail is visible.
    pub fn diagonal_counts(&self) -> Vec<u64> {
        let max = self.rows.iter().copied().max().unwrap_or(0) as usize;
        let len = (self.rows.len() + max).max(1);
        let mut counts = vec![0; len];
        for (i, j) in self.points() {
            counts[(i + j) as usize] += 1;
        }
        counts
    }
}

pub fn diag(v: &[u64]) -> Vec<u64> {
    StandardConfiguration::new(v).diagonal_counts()
}

/// Running partial sums.
pub fn sum_op(c: &[u64]) -> Vec<u64> {
    c.iter()
        .scan(0u64, |acc, &x| {
            *acc += x;
            Some(*acc)
        })
        .collect()
}

/// First pair `(i, j)` (1-based, `i < j`) with `v_i - v_j < j - i - 1`.
pub fn gms_violation(v: &[u64]) -> Option<(usize, usize)> {
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            if (v[i] as i64 - v[j] as i64) < (j - i) as i64 - 1 {
                return Some((i + 1, j + 1));
            }
        }
    }
    None
}

/// GMS by the defining pairwise inequalities. Evaluated literally on any
/// input; adjacent pairs already force the vector to be non-increasing.
pub fn is_gms(v: &[u64]) -> bool {
    gms_violation(v).is_none()
}

fn require_non_increasing(v: &[u64]) -> Result<(), BoundsError> {
    if v.windows(2).all(|w| w[0] >= w[1]) {
        Ok(())
    } else {
        Err(BoundsError::NotNonIncreasing(v.to_vec()))
    }
}

/// GMS via differences of the reversed vector: between any two zero
/// differences there is a difference strictly bigger than 1.
///
/// Only the genuine differences `v_{k} - v_{k+1}` are inspected; the leading
/// entry of `Δ(v_r, ..., v_1)` is `v_r` itself and is not a difference.
pub fn gms_by_delta(v: &[u64]) -> Result<bool, BoundsError> {
    require_non_increasing(v)?;
    let reversed: Vec<u64> = v.iter().rev().copied().collect();
    let diffs: Vec<u64> = reversed.windows(2).map(|w| w[1] - w[0]).collect();
    let mut jump_since_zero = true;
    for &d in &diffs {
        if d == 0 {
            if !jump_since_zero {
                return Ok(false);
            }
            jump_since_zero = false;
        } else if d > 1 {
            jump_since_zero = true;
        }
    }
    Ok(true)
}

/// First forbidden run `[start, end]` (0-based, inclusive): `v_start = v_{start+1}`,
/// `v_{end-1} = v_end`, and the entries strictly inside the two equal pairs
/// descend by exactly one. `(a, a, a)` is the shortest such run.
pub fn forbidden_pattern(v: &[u64]) -> Result<Option<(usize, usize)>, BoundsError> {
    require_non_increasing(v)?;
    let equal: Vec<usize> = (0..v.len().saturating_sub(1))
        .filter(|&k| v[k] == v[k + 1])
        .collect();
    for w in equal.windows(2) {
        let (a, b) = (w[0], w[1]);
        if (a + 1..b).all(|k| v[k] == v[k + 1] + 1) {
            return Ok(Some((a, b + 1)));
        }
    }
    Ok(None)
}

pub fn gms_by_pattern(v: &[u64]) -> Result<bool, BoundsError> {
    Ok(forbidden_pattern(v)?.is_none())
}

/// Lower bound on `dim (I_A)_t` in `P^N` from residual degrees alone:
/// `max_i max(0, C(t - i + N, N) - deg(A_i))`.
pub fn pn_lower_bound(
    ambient_dim: u64,
    residual_degrees: &[u64],
    t: i64,
) -> Result<u64, BoundsError> {
    match residual_degrees.last() {
        None => return Err(BoundsError::NoResidualDegrees),
        Some(&d) if d != 0 => return Err(BoundsError::NonEmptyFinalResidual(d)),
        _ => {}
    }
    Ok(residual_degrees
        .iter()
        .enumerate()
        .map(|(i, &deg)| binom(t - i as i64 + ambient_dim as i64, ambient_dim).saturating_sub(deg))
        .max()
        .unwrap_or(0))
}
