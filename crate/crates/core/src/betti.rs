//! Bounds on the graded Betti numbers of `I_A` from a GMS reduction vector.
//!
//! `ν_t` counts minimal generators of degree `t` and `σ_t` counts minimal
//! syzygies of degree `t`. Once the Hilbert function is known the two are
//! tied together by `σ_t - ν_t = -Δ³ h_I(t)`, so only `ν` is bounded
//! directly.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::bounds::{binom, is_gms, lower_bound, lower_bound_at};
use crate::sequence::HilbertSequence;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BettiError {
    #[error("vector {0:?} is not GMS, so the Hilbert function is not determined")]
    NotGms(Vec<u64>),
    #[error("degree {t} is outside [alpha, reg) = [{alpha}, {reg})")]
    OutOfRange { t: u64, alpha: u64, reg: u64 },
    #[error("the Hilbert function never leaves the polynomial ring within its prefix")]
    Degenerate,
    #[error("h_I({t}) = 0; the naive bounds need a nonzero ideal in degree t")]
    ZeroIdeal { t: u64 },
    #[error("inconsistent ideal dimensions: h_I({t}) = {at}, h_I({next}) = {at_next}", next = t + 1)]
    Inconsistent { t: u64, at: u64, at_next: u64 },
}

/// A closed interval `[lo, hi]` of naturals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Interval {
    pub lo: u64,
    pub hi: u64,
}

impl Interval {
    pub fn point(v: u64) -> Self {
        Interval { lo: v, hi: v }
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, v: u64) -> bool {
        self.lo <= v && v <= self.hi
    }

    pub fn is_within(&self, other: &Interval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    /// Shifts both ends by `delta`, clamping at zero.
    fn shifted(&self, delta: i64) -> Interval {
        let shift = |x: u64| (x as i64 + delta).max(0) as u64;
        Interval {
            lo: shift(self.lo),
            hi: shift(self.hi),
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.lo, self.hi)
    }
}

/// `Δ` applied `order` times, with `Δf(0) = f(0)` and `Δf(t) = f(t) - f(t-1)`.
pub fn delta(seq: &[i64], order: u32) -> Vec<i64> {
    let mut cur = seq.to_vec();
    for _ in 0..order {
        let mut prev = 0;
        for x in cur.iter_mut() {
            let v = *x;
            *x = v - prev;
            prev = v;
        }
    }
    cur
}

/// `(α(I), reg(I))` for a scheme with Hilbert function `h` and degree `deg`.
pub fn alpha_reg(h: &HilbertSequence, deg: u64) -> Result<(u64, u64), BettiError> {
    let limit = h.prefix().len() as i64 + 1;
    let alpha = (0..=limit)
        .find(|&t| h.value(t) < binom(t + 2, 2))
        .ok_or(BettiError::Degenerate)?;
    let reg = (0..=limit + 1)
        .find(|&t| h.value(t - 1) == deg)
        .ok_or(BettiError::Degenerate)?;
    Ok((alpha as u64, reg as u64))
}

/// `dim (I_A)_t` when `h_A = f_v`.
fn ideal_dim(v: &[u64], t: i64) -> u64 {
    binom(t + 2, 2) - lower_bound_at(v, t)
}

/// Naive bounds on `ν_{t+1}` from `h_I(t)` and `h_I(t+1)` alone.
pub fn naive_nu_bounds(ideal_t: u64, ideal_next: u64, t: u64) -> Result<Interval, BettiError> {
    if ideal_t == 0 {
        return Err(BettiError::ZeroIdeal { t });
    }
    let inconsistent = BettiError::Inconsistent {
        t,
        at: ideal_t,
        at_next: ideal_next,
    };
    let hi = ideal_next.checked_sub(2 + ideal_t).ok_or(inconsistent)?;
    let lo = ideal_next.saturating_sub(3 * ideal_t);
    Ok(Interval { lo, hi })
}

fn check_range(d: &[u64], t: u64) -> Result<(), BettiError> {
    if !is_gms(d) {
        return Err(BettiError::NotGms(d.to_vec()));
    }
    let (alpha, reg) = alpha_reg(&lower_bound(d), d.iter().sum())?;
    if t < alpha || t >= reg {
        return Err(BettiError::OutOfRange { t, alpha, reg });
    }
    Ok(())
}

/// The largest `j` such that `h_{I_{A_i}}(t - i) = h_{I_A}(t)` for all `1 <= i <= j`,
/// where `A_i` has the truncated reduction vector `(d_{i+1}, ...)`.
pub fn j_index(d: &[u64], t: u64) -> Result<usize, BettiError> {
    check_range(d, t)?;
    Ok(j_index_unchecked(d, t as i64))
}

fn j_index_unchecked(d: &[u64], t: i64) -> usize {
    let target = ideal_dim(d, t);
    (1..=d.len())
        .take_while(|&i| ideal_dim(&d[i..], t - i as i64) == target)
        .last()
        .unwrap_or(0)
}

/// Bounds on `ν_{t+1}` using the common linear factor of `(I_A)_t`.
pub fn improved_nu_bounds(d: &[u64], t: u64) -> Result<Interval, BettiError> {
    check_range(d, t)?;
    Ok(improved_unchecked(d, t as i64))
}

fn improved_unchecked(d: &[u64], t: i64) -> Interval {
    let j = j_index_unchecked(d, t);
    let tail = &d[j..];
    let u = t - j as i64;
    let e = (lower_bound_at(tail, u) - lower_bound_at(tail, u - 1)) as i64;
    let base = ideal_dim(d, t + 1) as i64 - ideal_dim(tail, u + 1) as i64;
    let lo = base + (2 * e - u).max(0);
    let hi = base + e;
    debug_assert!(lo >= 0 && lo <= hi);
    Interval {
        lo: lo as u64,
        hi: hi as u64,
    }
}

/// One of the three shapes for which the improved bounds pin down every `ν_t`:
/// strictly decreasing, `(m, m, m-1, ..., 1)`, or a strictly decreasing head
/// ending at least `m + 2` followed by `(m, m, m-1, ..., 1)`.
pub fn is_betti_determining(d: &[u64]) -> bool {
    if d.is_empty() || d.contains(&0) || !is_gms(d) {
        return false;
    }
    let Some(k) = d.windows(2).position(|w| w[0] == w[1]) else {
        return true;
    };
    let m = d[k];
    let tail = &d[k + 1..];
    let tail_ok =
        tail.len() as u64 == m && tail.iter().enumerate().all(|(i, &x)| x == m - i as u64);
    let head = &d[..k];
    let head_ok = head.windows(2).all(|w| w[0] > w[1]) && head.last().is_none_or(|&x| x >= m + 2);
    tail_ok && head_ok
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BettiRow {
    pub t: u64,
    pub nu: Interval,
    pub sigma: Interval,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BettiBounds {
    pub alpha: u64,
    pub reg: u64,
    /// Degrees `0..=reg+1`; every Betti number vanishes beyond.
    pub rows: Vec<BettiRow>,
    pub exact: bool,
}

impl BettiBounds {
    pub fn nu(&self, t: u64) -> Interval {
        self.rows
            .get(t as usize)
            .map_or(Interval::point(0), |r| r.nu)
    }

    pub fn sigma(&self, t: u64) -> Interval {
        self.rows
            .get(t as usize)
            .map_or(Interval::point(0), |r| r.sigma)
    }

    /// Tab-separated `t ν_lo ν_hi σ_lo σ_hi`, one row per degree.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("t\tnu_lo\tnu_hi\tsigma_lo\tsigma_hi\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\n",
                r.t, r.nu.lo, r.nu.hi, r.sigma.lo, r.sigma.hi
            ));
        }
        out
    }
}

/// Full table of `ν` and `σ` intervals for a GMS reduction vector.
pub fn betti_table(d: &[u64]) -> Result<BettiBounds, BettiError> {
    if !is_gms(d) {
        return Err(BettiError::NotGms(d.to_vec()));
    }
    let h = lower_bound(d);
    let (alpha, reg) = alpha_reg(&h, d.iter().sum())?;
    let top = reg as usize + 1;

    let mut nu = vec![Interval::point(0); top + 1];
    nu[alpha as usize] = Interval::point(ideal_dim(d, alpha as i64));
    for t in alpha..reg {
        nu[t as usize + 1] = improved_unchecked(d, t as i64);
    }

    let ideal: Vec<i64> = (0..=top as i64).map(|t| ideal_dim(d, t) as i64).collect();
    let third = delta(&ideal, 3);
    let rows: Vec<BettiRow> = (0..=top)
        .map(|t| BettiRow {
            t: t as u64,
            nu: nu[t],
            sigma: nu[t].shifted(-third[t]),
        })
        .collect();
    let exact = rows.iter().all(|r| r.nu.is_point() && r.sigma.is_point());
    Ok(BettiBounds {
        alpha,
        reg,
        rows,
        exact,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const STAR: [u64; 9] = [12, 11, 10, 9, 8, 4, 3, 2, 1];

    #[test]
    fn star_alpha_reg() {
        let h = lower_bound(&STAR);
        assert_eq!(h.prefix(), &[1, 3, 6, 10, 15, 21, 28, 36, 45, 50, 55, 60]);
        assert_eq!(alpha_reg(&h, 60), Ok((9, 12)));
    }

    #[test]
    fn strictly_decreasing_alpha_reg() {
        for d in [
            vec![5, 3, 2],
            vec![4],
            vec![7, 6, 5, 4, 3, 2, 1],
            vec![9, 4],
        ] {
            let h = lower_bound(&d);
            assert_eq!(
                alpha_reg(&h, d.iter().sum()),
                Ok((d.len() as u64, d[0])),
                "{d:?}"
            );
        }
    }

    #[test]
    fn single_point() {
        let h = HilbertSequence::new(vec![1], 1).unwrap();
        assert_eq!(alpha_reg(&h, 1), Ok((1, 1)));
    }

    #[test]
    fn naive_bounds_star() {
        assert_eq!(naive_nu_bounds(5, 11, 9), Ok(Interval { lo: 0, hi: 4 }));
        assert_eq!(naive_nu_bounds(18, 31, 11), Ok(Interval { lo: 0, hi: 11 }));
        assert_eq!(naive_nu_bounds(1, 3, 0), Ok(Interval::point(0)));
        assert_eq!(
            naive_nu_bounds(0, 3, 0),
            Err(BettiError::ZeroIdeal { t: 0 })
        );
    }

    #[test]
    fn improved_bounds_star() {
        assert_eq!(improved_nu_bounds(&STAR, 9), Ok(Interval::point(0)));
        assert_eq!(improved_nu_bounds(&STAR, 10), Ok(Interval::point(0)));
        assert_eq!(improved_nu_bounds(&STAR, 11), Ok(Interval::point(5)));
        assert_eq!(j_index(&STAR, 11), Ok(5));
        assert!(matches!(
            improved_nu_bounds(&STAR, 12),
            Err(BettiError::OutOfRange { .. })
        ));
        assert!(matches!(
            improved_nu_bounds(&[3, 3, 2, 2], 3),
            Err(BettiError::NotGms(_))
        ));
    }

    #[test]
    fn j_index_small_cases() {
        // alpha = reg = 1 for a single point, so no degree is in range
        assert!(matches!(
            j_index(&[1], 1),
            Err(BettiError::OutOfRange { .. })
        ));
        assert!(matches!(
            j_index(&[1], 0),
            Err(BettiError::OutOfRange { .. })
        ));
        // (2,1): alpha = 2 = reg, also empty
        assert!(j_index(&[2, 1], 1).is_err());
        // (3,1): h = (1,3,4), h_I(2) = 2 = h_{I_{A_1}}(1), but h_{I_{A_2}}(0) = 1
        assert_eq!(j_index(&[3, 1], 2), Ok(1));
        assert_eq!(improved_nu_bounds(&[3, 1], 2), Ok(Interval::point(1)));
    }

    #[test]
    fn star_table() {
        let b = betti_table(&STAR).unwrap();
        assert_eq!((b.alpha, b.reg), (9, 12));
        assert_eq!(b.nu(9), Interval::point(5));
        assert_eq!(b.nu(10), Interval::point(0));
        assert_eq!(b.nu(11), Interval::point(0));
        assert_eq!(b.nu(12), Interval::point(5));
        assert_eq!(b.nu(13), Interval::point(0));
        assert!(b.exact);
        let euler: i64 = b
            .rows
            .iter()
            .map(|r| r.nu.lo as i64 - r.sigma.lo as i64)
            .sum();
        assert_eq!(euler, 1);
    }

    #[test]
    fn two_two_is_not_determined() {
        let b = betti_table(&[2, 2]).unwrap();
        assert!(!b.exact);
        assert_eq!(b.nu(2), Interval::point(2));
        assert_eq!(b.nu(3), Interval { lo: 0, hi: 1 });
    }

    #[test]
    fn determining_forms() {
        assert!(is_betti_determining(&STAR));
        assert!(is_betti_determining(&[3, 3, 2, 1]));
        assert!(is_betti_determining(&[1, 1]));
        assert!(is_betti_determining(&[7, 5, 3, 3, 2, 1]));
        assert!(
            !is_betti_determining(&[7, 5, 4, 3, 3, 2, 1][..]) || is_gms(&[7, 5, 4, 3, 3, 2, 1])
        );
        assert!(!is_betti_determining(&[6, 4, 3, 3, 2, 1]));
        assert!(!is_betti_determining(&[2, 2]));
        assert!(!is_betti_determining(&[3, 3, 2]));
    }

    #[test]
    fn deltas() {
        assert_eq!(delta(&[1, 3, 6, 10], 1), vec![1, 2, 3, 4]);
        assert_eq!(delta(&[4, 4, 4], 1), vec![4, 0, 0]);
        assert_eq!(delta(&[1, 3, 6, 10, 15], 3), vec![1, 0, 0, 0, 0]);
    }

    #[test]
    fn non_gms_table_refused() {
        assert_eq!(
            betti_table(&[3, 3, 2, 2]),
            Err(BettiError::NotGms(vec![3, 3, 2, 2]))
        );
    }
}
