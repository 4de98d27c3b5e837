//! Exact Hilbert functions and generator counts of planar fat point schemes.
//!
//! A form of degree `t` lies in `I_p^m` iff all Hasse derivatives of order
//! `< m` of its dehomogenization vanish at `p`. Stacking these conditions for
//! every point gives a matrix whose rank is `h_Z(t)`. Hasse derivatives keep
//! the conditions independent of the characteristic.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::bounds::binom;
use crate::matrix::ExactMatrix;
use crate::scalar::{FieldScalar, Fp, Scalar};
use crate::scheme::{FatPointScheme, FieldSpec, PointId};
use crate::sequence::HilbertSequence;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("the oracle only handles the projective plane, got dimension {0}")]
    NotPlanar(usize),
    #[error("point {0} has positive multiplicity but no coordinates")]
    MissingCoordinates(PointId),
    #[error("point {0} has {1} coordinates, expected 3")]
    CoordinateLength(PointId, usize),
    #[error("point {0} has the zero coordinate vector")]
    ZeroCoordinates(PointId),
    #[error("coordinates are present but no field is declared")]
    MissingField,
    #[error("coordinates of point {0} do not reduce into {1}")]
    NotInField(PointId, FieldSpec),
    #[error("chart {chart} is invalid for point {point}")]
    InvalidChart { point: PointId, chart: usize },
    #[error("expected {expected} chart choices, got {got}")]
    ChartCount { expected: usize, got: usize },
}

/// Exponent triples of degree `t`, in graded lexicographic order with `x0 > x1 > x2`.
pub fn monomials(t: u32) -> Vec<[u32; 3]> {
    let mut out = Vec::with_capacity(binom(t as i64 + 2, 2) as usize);
    for a in (0..=t).rev() {
        for b in (0..=t - a).rev() {
            out.push([a, b, t - a - b]);
        }
    }
    out
}

/// Field-specific exact linear algebra; rationals go through fraction-free integer elimination.
trait OracleScalar: FieldScalar {
    fn exact_rank(m: &ExactMatrix<Self>) -> usize;
    fn exact_kernel(m: &ExactMatrix<Self>) -> Vec<Vec<Self>>;
}

/// Scales each row by the lcm of its denominators.
fn clear_denominators(m: &ExactMatrix<BigRational>) -> ExactMatrix<BigInt> {
    let rows = (0..m.rows())
        .map(|i| {
            let row = m.row(i);
            let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
        })
        .collect();
    ExactMatrix::from_rows(m.cols(), rows)
}

impl OracleScalar for BigRational {
    fn exact_rank(m: &ExactMatrix<Self>) -> usize {
        clear_denominators(m).rank()
    }

    fn exact_kernel(m: &ExactMatrix<Self>) -> Vec<Vec<Self>> {
        clear_denominators(m)
            .kernel_fraction_free()
            .into_iter()
            .map(|v| {
                let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
                v.into_iter()
                    .map(|x| BigRational::from_integer(x / &g))
                    .collect()
            })
            .collect()
    }
}

impl OracleScalar for Fp {
    fn exact_rank(m: &ExactMatrix<Self>) -> usize {
        m.rank_by_rref()
    }

    fn exact_kernel(m: &ExactMatrix<Self>) -> Vec<Vec<Self>> {
        m.kernel()
    }
}

/// `n` as an element of `S`.
fn from_u64<S: Scalar>(mut n: u64) -> S {
    let mut acc = S::zero();
    let mut pow = S::one();
    while n > 0 {
        if n & 1 == 1 {
            acc = acc + pow.clone();
        }
        pow = pow.clone() + pow;
        n >>= 1;
    }
    acc
}

struct FatPoint<S> {
    /// Affine coordinates in the chart `x_chart = 1`, in increasing index order.
    affine: [S; 2],
    chart: usize,
    mult: u32,
}

fn powers<S: Scalar>(x: &S, n: u32) -> Vec<S> {
    let mut out = Vec::with_capacity(n as usize + 1);
    out.push(S::one());
    for k in 0..n as usize {
        out.push(out[k].clone() * x.clone());
    }
    out
}

/// Rows expressing vanishing to order `mult` at each point, over degree-`t` monomials.
fn condition_matrix<S: Scalar>(points: &[FatPoint<S>], t: u32) -> ExactMatrix<S> {
    let monos = monomials(t);
    let mut rows = Vec::new();
    for p in points {
        let others: Vec<usize> = (0..3).filter(|&k| k != p.chart).collect();
        let pu = powers(&p.affine[0], t);
        let pv = powers(&p.affine[1], t);
        for i in 0..p.mult {
            for j in 0..p.mult - i {
                let row = monos
                    .iter()
                    .map(|e| {
                        let (ea, eb) = (e[others[0]], e[others[1]]);
                        if ea < i || eb < j {
                            return S::zero();
                        }
                        let c = binom(ea as i64, i as u64) * binom(eb as i64, j as u64);
                        from_u64::<S>(c)
                            * pu[(ea - i) as usize].clone()
                            * pv[(eb - j) as usize].clone()
                    })
                    .collect();
                rows.push(row);
            }
        }
    }
    ExactMatrix::from_rows(monos.len(), rows)
}

fn ideal_dim_generic<S: OracleScalar>(points: &[FatPoint<S>], t: u32) -> u64 {
    let m = condition_matrix(points, t);
    m.cols() as u64 - S::exact_rank(&m) as u64
}

fn nu_generic<S: OracleScalar>(points: &[FatPoint<S>], t: u32) -> u64 {
    let basis = S::exact_kernel(&condition_matrix(points, t));
    let next = ideal_dim_generic(points, t + 1);
    if basis.is_empty() {
        return next;
    }
    let source = monomials(t);
    let target: HashMap<[u32; 3], usize> = monomials(t + 1).into_iter().zip(0..).collect();
    let mut rows = Vec::with_capacity(3 * basis.len());
    for var in 0..3 {
        for f in &basis {
            let mut row = vec![S::zero(); target.len()];
            for (e, c) in source.iter().zip(f) {
                let mut shifted = *e;
                shifted[var] += 1;
                row[target[&shifted]] = c.clone();
            }
            rows.push(row);
        }
    }
    let image = S::exact_rank(&ExactMatrix::from_rows(target.len(), rows)) as u64;
    next - image
}

enum Realized {
    Rational(Vec<FatPoint<BigRational>>),
    Prime(Vec<FatPoint<Fp>>),
}

fn realize_in<S: FieldScalar>(
    scheme: &FatPointScheme,
    charts: Option<&[usize]>,
    embed: impl Fn(&BigRational) -> Option<S>,
    field: FieldSpec,
) -> Result<Vec<FatPoint<S>>, OracleError> {
    let mut out = Vec::new();
    for (i, p) in scheme.points().iter().enumerate() {
        let id = PointId(i);
        if p.mult == 0 {
            continue;
        }
        let coords = p
            .coords
            .as_ref()
            .ok_or(OracleError::MissingCoordinates(id))?;
        if coords.len() != 3 {
            return Err(OracleError::CoordinateLength(id, coords.len()));
        }
        let v: Vec<S> = coords
            .iter()
            .map(&embed)
            .collect::<Option<_>>()
            .ok_or(OracleError::NotInField(id, field))?;
        let chart = match charts {
            Some(c) => c[i],
            None => v
                .iter()
                .position(|x| !x.is_zero())
                .ok_or(OracleError::ZeroCoordinates(id))?,
        };
        if chart > 2 || v[chart].is_zero() {
            if v.iter().all(Zero::is_zero) {
                return Err(OracleError::ZeroCoordinates(id));
            }
            return Err(OracleError::InvalidChart { point: id, chart });
        }
        let inv = v[chart].inv().expect("nonzero chart coordinate");
        let others: Vec<S> = (0..3)
            .filter(|&k| k != chart)
            .map(|k| v[k].clone() * inv.clone())
            .collect();
        out.push(FatPoint {
            affine: [others[0].clone(), others[1].clone()],
            chart,
            mult: p.mult,
        });
    }
    Ok(out)
}

fn realize(scheme: &FatPointScheme, charts: Option<&[usize]>) -> Result<Realized, OracleError> {
    if scheme.ambient_dim() != 2 {
        return Err(OracleError::NotPlanar(scheme.ambient_dim()));
    }
    if let Some(c) = charts {
        if c.len() != scheme.points().len() {
            return Err(OracleError::ChartCount {
                expected: scheme.points().len(),
                got: c.len(),
            });
        }
    }
    let field = match scheme.field() {
        Some(f) => f,
        None if scheme.is_empty() => FieldSpec::Rationals,
        None => return Err(OracleError::MissingField),
    };
    Ok(match field {
        FieldSpec::Rationals => {
            Realized::Rational(realize_in(scheme, charts, |x| Some(x.clone()), field)?)
        }
        FieldSpec::PrimeField(p) => Realized::Prime(realize_in(
            scheme,
            charts,
            |x| Fp::from_rational(x, p),
            field,
        )?),
    })
}

fn ideal_dim_realized(r: &Realized, t: u32) -> u64 {
    match r {
        Realized::Rational(pts) => ideal_dim_generic(pts, t),
        Realized::Prime(pts) => ideal_dim_generic(pts, t),
    }
}

/// `dim (I_Z)_t`.
pub fn ideal_dim_oracle(scheme: &FatPointScheme, t: u32) -> Result<u64, OracleError> {
    Ok(ideal_dim_realized(&realize(scheme, None)?, t))
}

/// `h_Z(t)`.
pub fn hilbert_oracle(scheme: &FatPointScheme, t: u32) -> Result<u64, OracleError> {
    Ok(binom(t as i64 + 2, 2) - ideal_dim_oracle(scheme, t)?)
}

/// `h_Z(t)` with the dehomogenization chart of each point given explicitly.
///
/// `charts` has one entry per scheme point (ignored for multiplicity 0);
/// the chosen coordinate must be nonzero.
pub fn hilbert_oracle_in_charts(
    scheme: &FatPointScheme,
    t: u32,
    charts: &[usize],
) -> Result<u64, OracleError> {
    let r = realize(scheme, Some(charts))?;
    Ok(binom(t as i64 + 2, 2) - ideal_dim_realized(&r, t))
}

/// The whole Hilbert function, tabulated until it reaches `deg(Z)`.
pub fn hilbert_function_oracle(scheme: &FatPointScheme) -> Result<HilbertSequence, OracleError> {
    let r = realize(scheme, None)?;
    let deg = scheme.degree();
    // h_Z(t) = deg(Z) once t >= sum of multiplicities - 1
    let limit = scheme
        .points()
        .iter()
        .map(|p| p.mult as usize)
        .sum::<usize>()
        + 1;
    Ok(HilbertSequence::tabulate(deg, limit, |t| {
        binom(t + 2, 2) - ideal_dim_realized(&r, t as u32)
    }))
}

/// `ν_{t+1}(I_Z)`: the number of minimal generators in degree `t + 1`.
///
/// Computed as `dim (I_Z)_{t+1}` minus the dimension of `R_1 (I_Z)_t`.
pub fn nu_oracle(scheme: &FatPointScheme, t: u32) -> Result<u64, OracleError> {
    Ok(match realize(scheme, None)? {
        Realized::Rational(pts) => nu_generic(&pts, t),
        Realized::Prime(pts) => nu_generic(&pts, t),
    })
}

/// `ν_0` is 0 unless `Z` is empty, in which case `I_Z = R` has the generator `1`.
pub fn nu_zero_oracle(scheme: &FatPointScheme) -> Result<u64, OracleError> {
    ideal_dim_oracle(scheme, 0)
}
