//! Generators for configuration families, the star operator, and greedy reduction.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::bounds::is_gms;
use crate::scalar::{is_prime, prime_power, FieldScalar, Fp};
use crate::scheme::{
    cross, dot, proportional, FatPointScheme, FieldSpec, NamedLine, PointId, ReductionTrace,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConfigError {
    #[error("vectors have different lengths {0} and {1}")]
    LengthMismatch(usize, usize),
    #[error("entries must be positive")]
    NonPositive,
    #[error("a linear configuration needs distinct point counts, got {0:?}")]
    RepeatedCounts(Vec<u64>),
    #[error("need at least {need} lines, got {got}")]
    TooFewLines { need: usize, got: usize },
    #[error("line {0} has a zero or malformed coefficient vector")]
    BadLine(usize),
    #[error("line {0} has coefficients outside the field")]
    NotInField(usize),
    #[error("lines {0} and {1} coincide")]
    CoincidentLines(usize, usize),
    #[error("inconsistent incidence: {0}")]
    Inconsistent(String),
    #[error("reduced residual scheme needs every line weight equal to 1")]
    NotReduced,
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("invalid parameter: {0}")]
    Invalid(String),
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Entries of `v` sorted to be non-increasing.
pub fn pi(v: &[u64]) -> Vec<u64> {
    let mut out = v.to_vec();
    out.sort_by(|a, b| b.cmp(a));
    out
}

fn check_pair(a: &[u64], m: &[u64]) -> Result<(), ConfigError> {
    if a.len() != m.len() {
        return Err(ConfigError::LengthMismatch(a.len(), m.len()));
    }
    if a.iter().chain(m).any(|&x| x == 0) {
        return Err(ConfigError::NonPositive);
    }
    Ok(())
}

/// Concatenation of the blocks `(a_i m_i, (a_i - 1) m_i, ..., m_i)`.
pub fn circ(a: &[u64], m: &[u64]) -> Result<Vec<u64>, ConfigError> {
    check_pair(a, m)?;
    Ok(a.iter()
        .zip(m)
        .flat_map(|(&ai, &mi)| (1..=ai).rev().map(move |k| k * mi))
        .collect())
}

/// `a * m = π(a ∘ m)`.
pub fn star(a: &[u64], m: &[u64]) -> Result<Vec<u64>, ConfigError> {
    Ok(pi(&circ(a, m)?))
}

/// Names `L1, ..., Ls`.
fn line_names(s: usize) -> Vec<String> {
    (1..=s).map(|i| format!("L{i}")).collect()
}

/// `a_1 Z_1 + ... + a_s Z_s` with `Z_i` a set of `m_i` points on `L_i`, no point
/// at an intersection of two lines, realized over Q. Also returns a line
/// sequence whose reduction vector is `a * m`.
///
/// Line `L_k` is `y = (k-1) x + (k-1)^2` and carries the points with `x = 1..=m_k`.
pub fn line_count_scheme(
    a: &[u64],
    m: &[u64],
) -> Result<(FatPointScheme, Vec<String>), ConfigError> {
    check_pair(a, m)?;
    let mut scheme = FatPointScheme::new(2, Some(FieldSpec::Rationals)).expect("plane");
    let names = line_names(a.len());
    for (k, (&ak, &mk)) in a.iter().zip(m).enumerate() {
        let slope = k as i64;
        let mult =
            u32::try_from(ak).map_err(|_| ConfigError::Invalid(format!("multiplicity {ak}")))?;
        let ids: Vec<PointId> = (1..=mk as i64)
            .map(|x| {
                scheme.add_point_with_coords(
                    format!("p{}_{x}", k + 1),
                    mult,
                    vec![q(x), q(slope * x + slope * slope), q(1)],
                )
            })
            .collect();
        scheme.add_line(
            NamedLine::new(names[k].clone(), ids).with_coefficients(vec![
                q(slope),
                q(-1),
                q(slope * slope),
            ]),
        );
    }
    // stable sort of the ∘ blocks by degree keeps each line's own degrees in order
    let mut steps: Vec<(u64, usize)> = a
        .iter()
        .zip(m)
        .enumerate()
        .flat_map(|(i, (&ai, &mi))| (1..=ai).rev().map(move |k| (k * mi, i)))
        .collect();
    steps.sort_by_key(|x| std::cmp::Reverse(x.0));
    let sequence = steps.into_iter().map(|(_, i)| names[i].clone()).collect();
    Ok((scheme, sequence))
}

/// A linear configuration of type `counts` (distinct counts), every point of multiplicity `mult`.
pub fn linear_config_scheme(
    counts: &[u64],
    mult: u64,
) -> Result<(FatPointScheme, Vec<String>), ConfigError> {
    let distinct: BTreeSet<u64> = counts.iter().copied().collect();
    if distinct.len() != counts.len() {
        return Err(ConfigError::RepeatedCounts(counts.to_vec()));
    }
    line_count_scheme(&vec![mult; counts.len()], counts)
}

/// `h` horizontal lines `H_j` and `v` vertical lines `V_i` meeting in an `h x v`
/// grid of points; the point `V_i H_j` sits at `(i - 1, h - j)`. Points in
/// `doubles` (pairs `(i, j)`, 1-based) get multiplicity 2, the rest 1.
pub fn grid_scheme(
    h: usize,
    v: usize,
    doubles: &[(usize, usize)],
) -> Result<FatPointScheme, ConfigError> {
    if h == 0 || v == 0 {
        return Err(ConfigError::NonPositive);
    }
    if let Some(&(i, j)) = doubles
        .iter()
        .find(|&&(i, j)| i == 0 || j == 0 || i > v || j > h)
    {
        return Err(ConfigError::Invalid(format!(
            "grid point V{i}H{j} is outside the grid"
        )));
    }
    let mut scheme = FatPointScheme::new(2, Some(FieldSpec::Rationals)).expect("plane");
    let mut ids = BTreeMap::new();
    for j in 1..=h {
        for i in 1..=v {
            let mult = if doubles.contains(&(i, j)) { 2 } else { 1 };
            let coords = vec![q(i as i64 - 1), q((h - j) as i64), q(1)];
            ids.insert(
                (i, j),
                scheme.add_point_with_coords(format!("V{i}H{j}"), mult, coords),
            );
        }
    }
    for j in 1..=h {
        let pts = (1..=v).map(|i| ids[&(i, j)]);
        scheme.add_line(NamedLine::new(format!("H{j}"), pts).with_coefficients(vec![
            q(0),
            q(1),
            q(-((h - j) as i64)),
        ]));
    }
    for i in 1..=v {
        let pts = (1..=h).map(|j| ids[&(i, j)]);
        scheme.add_line(NamedLine::new(format!("V{i}"), pts).with_coefficients(vec![
            q(1),
            q(0),
            q(-(i as i64 - 1)),
        ]));
    }
    Ok(scheme)
}

/// Six points on four lines, two of them double.
pub fn six_point_example() -> FatPointScheme {
    let mut s = FatPointScheme::new(2, Some(FieldSpec::Rationals)).expect("plane");
    let spec = [
        (2, 0, 0),
        (1, 1, 0),
        (1, 0, 1),
        (2, 5, 7),
        (1, 6, 7),
        (1, 5, 9),
    ];
    let p: Vec<PointId> = spec
        .iter()
        .enumerate()
        .map(|(i, &(m, x, y))| {
            s.add_point_with_coords(format!("p{}", i + 1), m, vec![q(x), q(y), q(1)])
        })
        .collect();
    let lines = [
        ("l1", [p[0], p[1]], [0, 1, 0]),
        ("l2", [p[0], p[2]], [1, 0, 0]),
        ("l3", [p[3], p[4]], [0, 1, -7]),
        ("l4", [p[3], p[5]], [1, 0, -5]),
    ];
    for (name, pts, c) in lines {
        s.add_line(NamedLine::new(name, pts).with_coefficients(c.iter().map(|&x| q(x)).collect()));
    }
    s
}

/// A point where two or more lines of an arrangement meet.
#[derive(Debug, Clone, PartialEq)]
pub struct ArrangementPoint {
    pub lines: BTreeSet<usize>,
    pub coords: Option<Vec<BigRational>>,
}

/// Distinct lines in the plane together with all their intersection points.
#[derive(Debug, Clone, PartialEq)]
pub struct Arrangement {
    field: Option<FieldSpec>,
    line_coeffs: Option<Vec<Vec<BigRational>>>,
    line_count: usize,
    points: Vec<ArrangementPoint>,
}

/// Scales so the first nonzero entry is 1.
fn normalize<S: FieldScalar>(v: &[S]) -> Vec<S> {
    let lead = v.iter().find(|x| !x.is_zero()).expect("nonzero vector");
    let inv = lead.inv().expect("nonzero");
    v.iter().map(|x| x.clone() * inv.clone()).collect()
}

fn intersect_all<S: FieldScalar>(
    lines: &[Vec<S>],
    lift: impl Fn(&S) -> BigRational,
) -> Result<Vec<ArrangementPoint>, ConfigError> {
    for (i, a) in lines.iter().enumerate() {
        if a.len() != 3 || a.iter().all(Zero::is_zero) {
            return Err(ConfigError::BadLine(i));
        }
        if let Some(j) = lines[..i].iter().position(|b| proportional(a, b)) {
            return Err(ConfigError::CoincidentLines(j, i));
        }
    }
    let mut seen: BTreeMap<Vec<BigRational>, ()> = BTreeMap::new();
    let mut out = Vec::new();
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            let p = normalize(&cross(&lines[i], &lines[j]));
            let key: Vec<BigRational> = p.iter().map(&lift).collect();
            if seen.insert(key.clone(), ()).is_some() {
                continue;
            }
            let through = (0..lines.len())
                .filter(|&k| dot(&lines[k], &p).is_zero())
                .collect();
            out.push(ArrangementPoint {
                lines: through,
                coords: Some(key),
            });
        }
    }
    Ok(out)
}

impl Arrangement {
    /// Lines given by coefficient vectors `(a, b, c)` of `a x + b y + c z` over `field`.
    pub fn from_coefficients(
        field: FieldSpec,
        coeffs: Vec<Vec<BigRational>>,
    ) -> Result<Self, ConfigError> {
        if coeffs.len() < 2 {
            return Err(ConfigError::TooFewLines {
                need: 2,
                got: coeffs.len(),
            });
        }
        let (points, stored) = match field {
            FieldSpec::Rationals => (intersect_all(&coeffs, |x| x.clone())?, coeffs),
            FieldSpec::PrimeField(p) => {
                let lines = coeffs
                    .iter()
                    .enumerate()
                    .map(|(i, c)| {
                        c.iter()
                            .map(|x| Fp::from_rational(x, p))
                            .collect::<Option<Vec<Fp>>>()
                            .ok_or(ConfigError::NotInField(i))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                let lift = |x: &Fp| q(x.value().rem_euclid(p as i64));
                let points = intersect_all(&lines, lift)?;
                let stored = lines.iter().map(|l| l.iter().map(lift).collect()).collect();
                (points, stored)
            }
        };
        Ok(Arrangement {
            field: Some(field),
            line_count: stored.len(),
            line_coeffs: Some(stored),
            points,
        })
    }

    /// Integer-coefficient convenience wrapper around [`Arrangement::from_coefficients`].
    pub fn from_integer_coefficients(
        field: FieldSpec,
        coeffs: &[[i64; 3]],
    ) -> Result<Self, ConfigError> {
        Self::from_coefficients(
            field,
            coeffs
                .iter()
                .map(|c| c.iter().map(|&x| q(x)).collect())
                .collect(),
        )
    }

    /// `s` lines `y = k x + k^2`, `k = 0..s`, over Q: no two parallel, no three concurrent.
    pub fn general(s: usize) -> Result<Self, ConfigError> {
        let coeffs: Vec<[i64; 3]> = (0..s as i64).map(|k| [k, -1, k * k]).collect();
        Self::from_integer_coefficients(FieldSpec::Rationals, &coeffs)
    }

    /// Purely combinatorial arrangement. `points` lists the lines through each
    /// multiple point; pairs of lines not meeting at a listed point get a new
    /// point of their own.
    pub fn from_incidence(
        line_count: usize,
        points: Vec<BTreeSet<usize>>,
    ) -> Result<Self, ConfigError> {
        if line_count < 2 {
            return Err(ConfigError::TooFewLines {
                need: 2,
                got: line_count,
            });
        }
        let mut met: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for (k, p) in points.iter().enumerate() {
            if p.len() < 2 {
                return Err(ConfigError::Inconsistent(format!(
                    "point {k} lies on fewer than two lines"
                )));
            }
            if let Some(&i) = p.iter().find(|&&i| i >= line_count) {
                return Err(ConfigError::Inconsistent(format!(
                    "point {k} refers to line {i}"
                )));
            }
            let v: Vec<usize> = p.iter().copied().collect();
            for (a, &i) in v.iter().enumerate() {
                for &j in &v[a + 1..] {
                    if let Some(prev) = met.insert((i, j), k) {
                        return Err(ConfigError::Inconsistent(format!(
                            "lines {i} and {j} meet at both point {prev} and point {k}"
                        )));
                    }
                }
            }
        }
        let mut all: Vec<ArrangementPoint> = points
            .into_iter()
            .map(|lines| ArrangementPoint {
                lines,
                coords: None,
            })
            .collect();
        for i in 0..line_count {
            for j in i + 1..line_count {
                if !met.contains_key(&(i, j)) {
                    all.push(ArrangementPoint {
                        lines: [i, j].into_iter().collect(),
                        coords: None,
                    });
                }
            }
        }
        Ok(Arrangement {
            field: None,
            line_coeffs: None,
            line_count,
            points: all,
        })
    }

    /// All `q^2 + q + 1` lines of the projective plane over `F_q`.
    ///
    /// Prime `q` comes with coordinates over `F_q`; other prime powers are
    /// incidence only.
    pub fn projective_plane(q: u64) -> Result<Self, ConfigError> {
        let (p, k) = prime_power(q).ok_or(ConfigError::NotPrimePower(q))?;
        if q > 64 {
            return Err(ConfigError::Invalid(format!(
                "q = {q} is too large (at most 64)"
            )));
        }
        let triples = projective_triples(q);
        if k == 1 {
            let coeffs = triples
                .iter()
                .map(|t| t.iter().map(|&x| self::q(x as i64)).collect())
                .collect();
            return Self::from_coefficients(FieldSpec::PrimeField(p as u32), coeffs);
        }
        let field = SmallField::new(p, k);
        let points = triples
            .iter()
            .map(|pt| {
                (0..triples.len())
                    .filter(|&l| field.dot(&triples[l], pt) == 0)
                    .collect::<BTreeSet<usize>>()
            })
            .collect();
        Self::from_incidence(triples.len(), points)
    }

    /// Nine lines and twelve triple points, realized over `F_p` when
    /// `p ≡ 1 (mod 3)` and purely combinatorially otherwise.
    ///
    /// Lines are `x - w^i y`, `y - w^i z`, `z - w^i x` for a primitive cube root `w`.
    pub fn dual_hesse(p: Option<u32>) -> Result<Self, ConfigError> {
        if let Some(p) = p.filter(|&p| p % 3 == 1 && is_prime(p as u64)) {
            let w = (2..p as i64)
                .map(|g| Fp::new(g, p))
                .find(|g| g.pow(3) == Fp::new(1, p) && *g != Fp::new(1, p))
                .expect("p = 1 mod 3 has a primitive cube root");
            let mut coeffs = Vec::new();
            for family in 0..3 {
                for i in 0..3 {
                    let c = -w.pow(i);
                    let mut line = [Fp::new(0, p); 3];
                    line[family] = Fp::new(1, p);
                    line[(family + 1) % 3] = c;
                    coeffs.push(line.iter().map(|x| q(x.value())).collect());
                }
            }
            return Self::from_coefficients(FieldSpec::PrimeField(p), coeffs);
        }
        // line 3f + i is the i-th line of family f
        let mut points: Vec<BTreeSet<usize>> =
            (0..3).map(|f| (3 * f..3 * f + 3).collect()).collect();
        for a in 0..3 {
            for b in 0..3 {
                // (1, w^a, w^b) lies on x = w^i y, y = w^j z, z = w^k x
                let i = (3 - a) % 3;
                let j = (a + 3 - b) % 3;
                let k = b;
                points.push([i, 3 + j, 6 + k].into_iter().collect());
            }
        }
        Self::from_incidence(9, points)
    }

    pub fn field(&self) -> Option<FieldSpec> {
        self.field
    }

    pub fn line_count(&self) -> usize {
        self.line_count
    }

    pub fn points(&self) -> &[ArrangementPoint] {
        &self.points
    }

    pub fn line_coefficients(&self) -> Option<&[Vec<BigRational>]> {
        self.line_coeffs.as_deref()
    }
}

/// Normalized representatives of the points of the projective plane over
/// `F_q`, with field elements encoded as `0..q`.
fn projective_triples(q: u64) -> Vec<[u64; 3]> {
    let mut out = Vec::new();
    for a in 0..q {
        for b in 0..q {
            out.push([1, a, b]);
        }
    }
    for a in 0..q {
        out.push([0, 1, a]);
    }
    out.push([0, 0, 1]);
    out
}

/// `GF(p^k)` by addition and multiplication tables; elements are base-`p` digit strings.
struct SmallField {
    q: usize,
    add: Vec<u64>,
    mul: Vec<u64>,
}

impl SmallField {
    fn new(p: u64, k: u32) -> Self {
        let q = p.pow(k) as usize;
        let digits = |x: u64| -> Vec<u64> { (0..k).map(|i| (x / p.pow(i)) % p).collect() };
        let encode = |d: &[u64]| -> u64 {
            d.iter()
                .enumerate()
                .map(|(i, &c)| c * p.pow(i as u32))
                .sum()
        };
        let poly_mul = |a: &[u64], b: &[u64]| -> Vec<u64> {
            let mut out = vec![0; a.len() + b.len() - 1];
            for (i, &x) in a.iter().enumerate() {
                for (j, &y) in b.iter().enumerate() {
                    out[i + j] = (out[i + j] + x * y) % p;
                }
            }
            out
        };
        // a monic degree-k polynomial is irreducible iff it has no factor of degree 1..=k/2
        let modulus: Vec<u64> = (0..q as u64)
            .map(|low| {
                let mut f = digits(low);
                f.push(1);
                f
            })
            .find(|f| {
                (1..=k / 2).all(|d| {
                    (0..p.pow(d)).all(|low| {
                        let mut g: Vec<u64> = (0..d).map(|i| (low / p.pow(i)) % p).collect();
                        g.push(1);
                        !divides(&g, f, p)
                    })
                })
            })
            .expect("irreducible polynomials exist in every degree");
        let reduce = |mut r: Vec<u64>| -> Vec<u64> {
            while r.len() > k as usize {
                let lead = r.pop().expect("nonempty");
                let shift = r.len() - k as usize;
                for (i, &c) in modulus[..k as usize].iter().enumerate() {
                    r[shift + i] = (r[shift + i] + p * p - lead * c % p) % p;
                }
            }
            r.resize(k as usize, 0);
            r
        };
        let mut add = vec![0; q * q];
        let mut mul = vec![0; q * q];
        for x in 0..q as u64 {
            for y in 0..q as u64 {
                let (dx, dy) = (digits(x), digits(y));
                let sum: Vec<u64> = dx.iter().zip(&dy).map(|(a, b)| (a + b) % p).collect();
                add[x as usize * q + y as usize] = encode(&sum);
                mul[x as usize * q + y as usize] = encode(&reduce(poly_mul(&dx, &dy)));
            }
        }
        SmallField { q, add, mul }
    }

    fn dot(&self, a: &[u64; 3], b: &[u64; 3]) -> u64 {
        (0..3).fold(0, |acc, i| {
            self.add
                [acc as usize * self.q + self.mul[a[i] as usize * self.q + b[i] as usize] as usize]
        })
    }
}

/// Whether monic `g` divides `f` over `F_p` (coefficients low to high).
fn divides(g: &[u64], f: &[u64], p: u64) -> bool {
    let mut r = f.to_vec();
    while r.len() >= g.len() {
        let lead = *r.last().expect("nonempty");
        let shift = r.len() - g.len();
        for (i, &c) in g.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p * p - lead * c % p) % p;
        }
        r.pop();
    }
    r.iter().all(|&x| x == 0)
}

/// Which of the two intersection schemes of an arrangement to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntersectionKind {
    /// `Z(D)`: multiplicity `m_p = Σ e_i` over the lines through `p`.
    Full,
    /// `Z'(D)`: multiplicity `m_p - 1`, for reduced `D`.
    Reduced,
}

/// `m Z(D)` or `m Z'(D)` for `D = Σ e_i L_i`, along with the per-line budget
/// `m e_i` used by the greedy algorithm.
pub fn intersections_scheme(
    arr: &Arrangement,
    e: &[u32],
    m: u32,
    kind: IntersectionKind,
) -> Result<(FatPointScheme, BTreeMap<String, u64>), ConfigError> {
    if e.len() != arr.line_count {
        return Err(ConfigError::LengthMismatch(e.len(), arr.line_count));
    }
    if m == 0 || e.contains(&0) {
        return Err(ConfigError::NonPositive);
    }
    if kind == IntersectionKind::Reduced && e.iter().any(|&x| x != 1) {
        return Err(ConfigError::NotReduced);
    }
    let names = line_names(arr.line_count);
    let mut scheme = FatPointScheme::new(2, arr.field).expect("plane");
    let mut on_line: Vec<Vec<PointId>> = vec![Vec::new(); arr.line_count];
    for p in &arr.points {
        let mp: u32 = p.lines.iter().map(|&i| e[i]).sum();
        let mult = m * if kind == IntersectionKind::Full {
            mp
        } else {
            mp - 1
        };
        let label = format!(
            "p{}",
            p.lines
                .iter()
                .map(|i| (i + 1).to_string())
                .collect::<Vec<_>>()
                .join("_")
        );
        let id = match &p.coords {
            Some(c) => scheme.add_point_with_coords(label, mult, c.clone()),
            None => scheme.add_point(label, mult),
        };
        for &i in &p.lines {
            on_line[i].push(id);
        }
    }
    for (i, pts) in on_line.into_iter().enumerate() {
        let mut line = NamedLine::new(names[i].clone(), pts);
        if let Some(c) = &arr.line_coeffs {
            line = line.with_coefficients(c[i].clone());
        }
        scheme.add_line(line);
    }
    let budget = names
        .into_iter()
        .zip(e)
        .map(|(n, &ei)| (n, (m * ei) as u64))
        .collect();
    Ok((scheme, budget))
}

/// Budget allowing each line as many uses as the largest multiplicity on it.
pub fn default_budget(scheme: &FatPointScheme) -> BTreeMap<String, u64> {
    scheme
        .lines()
        .iter()
        .map(|l| {
            let max = l
                .incidence
                .iter()
                .filter_map(|&id| scheme.point(id))
                .map(|p| p.mult as u64)
                .max()
                .unwrap_or(0);
            (l.name.clone(), max)
        })
        .collect()
}

/// Repeatedly residuates along a line of maximal intersection degree among
/// lines with budget left, lowest index first on ties. Stops when the scheme
/// is empty, when no budget is left, or when every remaining degree is 0.
pub fn greedy_reduce(scheme: &FatPointScheme, budget: &BTreeMap<String, u64>) -> ReductionTrace {
    let mut left: Vec<u64> = scheme
        .lines()
        .iter()
        .map(|l| budget.get(&l.name).copied().unwrap_or(0))
        .collect();
    let mut current = scheme.clone();
    let mut chosen = Vec::new();
    while !current.is_empty() {
        let best = scheme
            .lines()
            .iter()
            .enumerate()
            .filter(|(i, _)| left[*i] > 0)
            .map(|(i, l)| (current.intersection_degree(l).expect("own line"), i))
            .max_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
        let Some((degree, i)) = best else { break };
        if degree == 0 {
            break;
        }
        left[i] -= 1;
        current = current.residual(&scheme.lines()[i]).expect("own line").0;
        chosen.push(scheme.lines()[i].name.clone());
    }
    scheme.reduce(&chosen).expect("own lines")
}

/// The strictly decreasing full reduction vector of `m Z'` for a star
/// configuration of `s` lines.
pub fn star_multiplicity_vectors(s: u64, m: u64) -> Vec<u64> {
    let even = |m: u64| -> Vec<u64> {
        (1..=m / 2)
            .rev()
            .flat_map(|h| {
                let top = 2 * h * (s - 1);
                (0..s).map(move |k| top - k)
            })
            .collect()
    };
    if m.is_multiple_of(2) {
        return even(m);
    }
    let mut out: Vec<u64> = even(m - 1).into_iter().map(|d| d + s - 1).collect();
    out.extend((1..s).rev());
    out
}

/// Line sequence realizing [`star_multiplicity_vectors`]: `L1..Ls` repeated
/// `floor(m/2)` times, then `L2..Ls` when `m` is odd.
pub fn star_schedule(s: usize, m: u32) -> Vec<String> {
    let names = line_names(s);
    let mut out = Vec::new();
    for _ in 0..m / 2 {
        out.extend(names.iter().cloned());
    }
    if m % 2 == 1 {
        out.extend(names[1..].iter().cloned());
    }
    out
}

/// Depth-first search for a line sequence with a full GMS reduction vector.
/// Larger degrees are tried first; gives up after `node_limit` partial sequences.
pub fn find_gms_schedule(scheme: &FatPointScheme, node_limit: usize) -> Option<Vec<String>> {
    let lines = scheme.lines();
    let mut nodes = 0;
    let mut seq = Vec::new();
    let mut vec = Vec::new();
    fn go(
        current: &FatPointScheme,
        lines: &[NamedLine],
        seq: &mut Vec<usize>,
        vec: &mut Vec<u64>,
        nodes: &mut usize,
        limit: usize,
    ) -> bool {
        if current.is_empty() {
            return true;
        }
        *nodes += 1;
        if *nodes > limit {
            return false;
        }
        let mut cands: Vec<(u64, usize)> = lines
            .iter()
            .enumerate()
            .map(|(i, l)| (current.intersection_degree(l).expect("own line"), i))
            .filter(|&(d, _)| d > 0)
            .collect();
        cands.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        for (d, i) in cands {
            vec.push(d);
            if is_gms(vec) {
                seq.push(i);
                let next = current.residual(&lines[i]).expect("own line").0;
                if go(&next, lines, seq, vec, nodes, limit) {
                    return true;
                }
                seq.pop();
            }
            vec.pop();
        }
        false
    }
    go(scheme, lines, &mut seq, &mut vec, &mut nodes, node_limit)
        .then(|| seq.into_iter().map(|i| lines[i].name.clone()).collect())
}

/// A configuration family with its parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    /// Grid of `h` horizontal and `v` vertical lines with some double points.
    Grid {
        h: usize,
        v: usize,
        doubles: Vec<(usize, usize)>,
    },
    /// Distinct point counts on general lines, every point of multiplicity `mult`.
    LinearConfig { counts: Vec<u64>, mult: u64 },
    /// `Z(a, m)`: `m_i` points of multiplicity `a_i` on line `i`.
    LineCountConfig { a: Vec<u64>, m: Vec<u64> },
    /// `m Z'` for the `s` general lines.
    StarConfig { s: usize, m: u32 },
    /// `m Z(D)` (or `m Z'(D)` when `reduced`) for lines given by integer
    /// coefficients, or `s` general lines when `coeffs` is empty.
    Intersections {
        s: usize,
        coeffs: Vec<[i64; 3]>,
        e: Vec<u32>,
        m: u32,
        reduced: bool,
    },
    /// `m Z(D)` for all lines of the plane over `F_q`, `D` reduced.
    ProjectivePlaneFq { q: u64, m: u32 },
    /// The twelve dual Hesse points, each of multiplicity `mult`.
    DualHesse { mult: u32 },
    /// Six points and four lines; reduces to `(3,3,2,2)` along `l1, l3, l2, l4`.
    SixPointExample,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSpec {
    pub family: Family,
    /// Requested coordinate field; `None` takes the family's natural field.
    pub field: Option<FieldSpec>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Generated {
    pub scheme: FatPointScheme,
    /// A known reducing sequence, when the family comes with one.
    pub schedule: Option<Vec<String>>,
    /// Per-line budget for [`greedy_reduce`], when the family defines one.
    pub budget: Option<BTreeMap<String, u64>>,
    pub warnings: Vec<String>,
}

/// Re-expresses rational coordinates in `F_p`; `false` if some entry has `p` in its denominator.
fn reduce_mod(scheme: &mut FatPointScheme, p: u32) -> bool {
    let lift = |v: &Vec<BigRational>| -> Option<Vec<BigRational>> {
        v.iter()
            .map(|x| Fp::from_rational(x, p).map(|y| q(y.value().rem_euclid(p as i64))))
            .collect()
    };
    let mut out = FatPointScheme::new(scheme.ambient_dim(), Some(FieldSpec::PrimeField(p)))
        .expect("valid dimension");
    for pt in scheme.points() {
        match &pt.coords {
            Some(c) => match lift(c) {
                Some(c) => out.add_point_with_coords(pt.label.clone(), pt.mult, c),
                None => return false,
            },
            None => out.add_point(pt.label.clone(), pt.mult),
        };
    }
    for l in scheme.lines() {
        let mut line = NamedLine::new(l.name.clone(), l.incidence.iter().copied());
        if let Some(c) = &l.coefficients {
            match lift(c) {
                Some(c) => line = line.with_coefficients(c),
                None => return false,
            }
        }
        out.add_line(line);
    }
    *scheme = out;
    true
}

/// Builds the scheme for `spec`. Coordinates that cannot be realized over
/// the requested field are dropped with a warning.
pub fn gen(spec: &GeneratorSpec) -> Result<Generated, ConfigError> {
    let mut warnings = Vec::new();
    let mut schedule = None;
    let mut budget = None;
    let mut scheme = match &spec.family {
        Family::Grid { h, v, doubles } => grid_scheme(*h, *v, doubles)?,
        Family::LinearConfig { counts, mult } => {
            let (s, seq) = linear_config_scheme(counts, *mult)?;
            schedule = Some(seq);
            s
        }
        Family::LineCountConfig { a, m } => {
            let (s, seq) = line_count_scheme(a, m)?;
            schedule = Some(seq);
            s
        }
        Family::StarConfig { s, m } => {
            if *s < 3 {
                return Err(ConfigError::TooFewLines { need: 3, got: *s });
            }
            let (scheme, b) = intersections_scheme(
                &Arrangement::general(*s)?,
                &vec![1; *s],
                *m,
                IntersectionKind::Reduced,
            )?;
            schedule = Some(star_schedule(*s, *m));
            budget = Some(b);
            scheme
        }
        Family::Intersections {
            s,
            coeffs,
            e,
            m,
            reduced,
        } => {
            let arr = if coeffs.is_empty() {
                Arrangement::general(*s)?
            } else {
                let field = spec.field.unwrap_or(FieldSpec::Rationals);
                Arrangement::from_integer_coefficients(field, coeffs)?
            };
            let e = if e.is_empty() {
                vec![1; arr.line_count()]
            } else {
                e.clone()
            };
            let kind = if *reduced {
                IntersectionKind::Reduced
            } else {
                IntersectionKind::Full
            };
            let (scheme, b) = intersections_scheme(&arr, &e, *m, kind)?;
            budget = Some(b);
            scheme
        }
        Family::ProjectivePlaneFq { q, m } => {
            let arr = Arrangement::projective_plane(*q)?;
            let (scheme, b) =
                intersections_scheme(&arr, &vec![1; arr.line_count()], *m, IntersectionKind::Full)?;
            budget = Some(b);
            if !scheme.has_coordinates() {
                warnings.push(format!(
                    "F_{q} is not a prime field; only incidence data is emitted"
                ));
            }
            scheme
        }
        Family::DualHesse { mult } => {
            if *mult == 0 {
                return Err(ConfigError::NonPositive);
            }
            let p = match spec.field {
                Some(FieldSpec::PrimeField(p)) => Some(p),
                _ => None,
            };
            let arr = Arrangement::dual_hesse(p)?;
            if arr.field().is_none() {
                let over = spec
                    .field
                    .map_or("the requested field".to_string(), |f| f.to_string());
                warnings.push(format!(
                    "{over} has no primitive cube root of unity; only incidence data is emitted"
                ));
            }
            let (mut scheme, _) = intersections_scheme(&arr, &[1; 9], 1, IntersectionKind::Full)?;
            for id in scheme.point_ids().collect::<Vec<_>>() {
                scheme.set_multiplicity(id, *mult);
            }
            budget = Some(default_budget(&scheme));
            scheme
        }
        Family::SixPointExample => {
            schedule = Some(["l1", "l3", "l2", "l4"].map(String::from).to_vec());
            six_point_example()
        }
    };

    if let Some(requested) = spec.field {
        if scheme.has_coordinates() && scheme.field() != Some(requested) {
            let ok = match (scheme.field(), requested) {
                (Some(FieldSpec::Rationals), FieldSpec::PrimeField(p)) => {
                    reduce_mod(&mut scheme, p) && scheme.validate().is_empty()
                }
                _ => false,
            };
            if !ok {
                warnings.push(format!(
                    "the configuration is not realized over {requested} by these coordinates; only incidence data is emitted"
                ));
                scheme = without_coordinates(scheme, Some(requested));
            }
        } else if !scheme.has_coordinates() {
            scheme.set_field(Some(requested));
        }
    }
    Ok(Generated {
        scheme,
        schedule,
        budget,
        warnings,
    })
}

fn without_coordinates(mut scheme: FatPointScheme, field: Option<FieldSpec>) -> FatPointScheme {
    scheme.strip_coordinates();
    scheme.set_field(field);
    scheme
}

impl GeneratorSpec {
    pub fn new(family: Family) -> Self {
        GeneratorSpec {
            family,
            field: None,
        }
    }

    /// The grid with doubles at `V1H1`, `V1H2`, `V2H3`.
    pub fn nongreedy_grid() -> Self {
        Self::new(Family::Grid {
            h: 3,
            v: 5,
            doubles: vec![(1, 1), (1, 2), (2, 3)],
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn star_operator() {
        assert_eq!(circ(&[2, 3], &[2, 3]).unwrap(), vec![4, 2, 9, 6, 3]);
        assert_eq!(star(&[2, 3], &[2, 3]).unwrap(), vec![9, 6, 4, 3, 2]);
        assert_eq!(star(&[3, 2], &[2, 3]).unwrap(), vec![6, 6, 4, 3, 2]);
        assert_eq!(star(&[3, 1], &[2, 3]).unwrap(), vec![6, 4, 3, 2]);
        assert_eq!(star(&[2, 2], &[2, 3]).unwrap(), vec![6, 4, 3, 2]);
        assert_eq!(star(&[1, 2], &[2, 4]).unwrap(), vec![8, 4, 2]);
        assert_eq!(star(&[1, 2], &[8, 2]).unwrap(), vec![8, 4, 2]);
        assert_eq!(star(&[1], &[1, 2]), Err(ConfigError::LengthMismatch(1, 2)));
        assert_eq!(star(&[0], &[1]), Err(ConfigError::NonPositive));
    }

    #[test]
    fn line_count_reduces_to_star() {
        let (s, seq) = line_count_scheme(&[2, 3], &[2, 3]).unwrap();
        assert!(s.validate().is_empty(), "{:?}", s.validate());
        let t = s.reduce(&seq).unwrap();
        assert_eq!(t.vector.0, vec![9, 6, 4, 3, 2]);
        assert!(t.full);
        let (s, seq) = line_count_scheme(&[2], &[3]).unwrap();
        assert_eq!(s.reduce(&seq).unwrap().vector.0, vec![6, 3]);
        let (_, seq) = line_count_scheme(&[2, 2, 2], &[3, 3, 3]).unwrap();
        assert_eq!(seq, ["L1", "L2", "L3", "L1", "L2", "L3"]);
        assert!(!is_gms(&star(&[2, 2, 2], &[3, 3, 3]).unwrap()));
    }

    #[test]
    fn linear_config_needs_distinct_counts() {
        assert!(linear_config_scheme(&[3, 2], 2).is_ok());
        assert_eq!(
            linear_config_scheme(&[3, 3], 1).unwrap_err(),
            ConfigError::RepeatedCounts(vec![3, 3])
        );
    }

    #[test]
    fn grid_schedules() {
        let s = grid_scheme(3, 5, &[(1, 1), (1, 2), (2, 3)]).unwrap();
        assert!(s.validate().is_empty(), "{:?}", s.validate());
        assert_eq!((s.points().len(), s.degree()), (15, 21));
        let a = s.reduce(&["H1", "H2", "H3", "V1", "V2"]).unwrap();
        assert_eq!(a.vector.0, vec![6, 6, 6, 2, 1]);
        let b = s
            .reduce(&["V1", "V2", "V3", "V4", "V5", "V1", "V2"])
            .unwrap();
        assert_eq!(b.vector.0, vec![5, 4, 3, 3, 3, 2, 1]);
        assert!(a.full && b.full);
    }

    #[test]
    fn grid_greedy_with_horizontal_budget() {
        let s = grid_scheme(3, 5, &[(1, 1), (1, 2), (2, 3)]).unwrap();
        let mut budget: BTreeMap<String, u64> = default_budget(&s);
        for b in budget.values_mut() {
            *b = 1;
        }
        let t = greedy_reduce(&s, &budget);
        assert_eq!(t.vector.0, vec![6, 6, 6, 2, 1]);
        assert!(t.full);
    }

    #[test]
    fn six_point_example_is_valid() {
        let s = six_point_example();
        assert!(s.validate().is_empty(), "{:?}", s.validate());
        assert_eq!(
            s.reduce(&["l1", "l3", "l2", "l4"]).unwrap().vector.0,
            vec![3, 3, 2, 2]
        );
    }

    #[test]
    fn general_lines_have_only_double_points() {
        let arr = Arrangement::general(6).unwrap();
        assert_eq!(arr.points().len(), 15);
        assert!(arr.points().iter().all(|p| p.lines.len() == 2));
    }

    #[test]
    fn reduced_intersections() {
        let arr = Arrangement::general(5).unwrap();
        let (s, _) = intersections_scheme(&arr, &[1; 5], 1, IntersectionKind::Reduced).unwrap();
        assert!(s.validate().is_empty());
        let t = s.reduce(&["L2", "L3", "L4", "L5"]).unwrap();
        assert_eq!(t.vector.0, vec![4, 3, 2, 1]);
        assert!(t.full);
        assert_eq!(
            intersections_scheme(&arr, &[1, 2, 1, 1, 1], 1, IntersectionKind::Reduced).unwrap_err(),
            ConfigError::NotReduced
        );
    }

    #[test]
    fn two_lines_one_double_point() {
        let arr = Arrangement::general(2).unwrap();
        let (s, budget) = intersections_scheme(&arr, &[1, 1], 1, IntersectionKind::Full).unwrap();
        assert_eq!(s.multiplicities(), vec![2]);
        let t = greedy_reduce(&s, &budget);
        assert_eq!(t.vector.0, vec![2, 1]);
    }

    #[test]
    fn star_configuration() {
        let g = gen(&GeneratorSpec::new(Family::StarConfig { s: 5, m: 3 })).unwrap();
        assert!(g.scheme.validate().is_empty());
        assert_eq!(g.scheme.degree(), 60);
        let t = g.scheme.reduce(g.schedule.as_ref().unwrap()).unwrap();
        assert_eq!(t.vector.0, vec![12, 11, 10, 9, 8, 4, 3, 2, 1]);
        assert_eq!(star_multiplicity_vectors(5, 3), t.vector.0);
        assert_eq!(star_multiplicity_vectors(5, 2), vec![8, 7, 6, 5, 4]);
        assert_eq!(star_multiplicity_vectors(3, 1), vec![2, 1]);
    }

    #[test]
    fn star_schedule_matches_formula() {
        for s in 3..=7usize {
            let arr = Arrangement::general(s).unwrap();
            for m in 1..=4u32 {
                let (scheme, _) =
                    intersections_scheme(&arr, &vec![1; s], m, IntersectionKind::Reduced).unwrap();
                let t = scheme.reduce(&star_schedule(s, m)).unwrap();
                assert!(t.full);
                assert_eq!(
                    t.vector.0,
                    star_multiplicity_vectors(s as u64, m as u64),
                    "s={s} m={m}"
                );
            }
        }
    }

    #[test]
    fn projective_planes() {
        for q in [2u64, 3, 4, 5, 7, 8, 9] {
            let arr = Arrangement::projective_plane(q).unwrap();
            let n = (q * q + q + 1) as usize;
            assert_eq!(arr.line_count(), n);
            assert_eq!(arr.points().len(), n, "q={q}");
            assert!(arr.points().iter().all(|p| p.lines.len() as u64 == q + 1));
            let (s, _) =
                intersections_scheme(&arr, &vec![1; n], 1, IntersectionKind::Full).unwrap();
            assert!(s.validate().is_empty(), "q={q}: {:?}", s.validate());
            assert!(s.lines().iter().all(|l| l.incidence.len() as u64 == q + 1));
            assert_eq!(s.has_coordinates(), is_prime(q));
        }
        assert_eq!(
            Arrangement::projective_plane(6).unwrap_err(),
            ConfigError::NotPrimePower(6)
        );
    }

    #[test]
    fn dual_hesse_incidences() {
        for p in [Some(7), Some(13), None, Some(5)] {
            let arr = Arrangement::dual_hesse(p).unwrap();
            assert_eq!(arr.field().is_some(), matches!(p, Some(7) | Some(13)));
            assert_eq!(arr.points().len(), 12);
            assert!(arr.points().iter().all(|pt| pt.lines.len() == 3));
            let (s, _) = intersections_scheme(&arr, &[1; 9], 1, IntersectionKind::Full).unwrap();
            assert!(s.validate().is_empty());
            assert!(s.lines().iter().all(|l| l.incidence.len() == 4));
        }
    }

    #[test]
    fn dual_hesse_gms_schedules() {
        for mult in [1u32, 4] {
            let g = gen(&GeneratorSpec::new(Family::DualHesse { mult })).unwrap();
            let seq = find_gms_schedule(&g.scheme, 10_000).expect("schedule found");
            let t = g.scheme.reduce(&seq).unwrap();
            assert!(
                t.full && is_gms(&t.vector.0) && !t.vector.is_strictly_decreasing(),
                "{}",
                t.vector
            );
        }
    }

    #[test]
    fn dual_hesse_over_q_warns() {
        let spec = GeneratorSpec {
            family: Family::DualHesse { mult: 1 },
            field: Some(FieldSpec::Rationals),
        };
        let g = gen(&spec).unwrap();
        assert!(!g.scheme.has_coordinates());
        assert_eq!(g.warnings.len(), 1);
    }

    #[test]
    fn incidence_completion_and_errors() {
        let arr = Arrangement::from_incidence(3, vec![[0, 1, 2].into_iter().collect()]).unwrap();
        assert_eq!(arr.points().len(), 1);
        let arr = Arrangement::from_incidence(3, vec![]).unwrap();
        assert_eq!(arr.points().len(), 3);
        let twice = vec![
            [0, 1].into_iter().collect(),
            [0, 1, 2].into_iter().collect(),
        ];
        assert!(matches!(
            Arrangement::from_incidence(3, twice),
            Err(ConfigError::Inconsistent(_))
        ));
        assert_eq!(
            Arrangement::from_integer_coefficients(FieldSpec::Rationals, &[[1, 0, 0], [2, 0, 0]])
                .unwrap_err(),
            ConfigError::CoincidentLines(0, 1)
        );
    }

    #[test]
    fn generators_validate() {
        let specs = [
            GeneratorSpec::nongreedy_grid(),
            GeneratorSpec::new(Family::LinearConfig {
                counts: vec![4, 2, 1],
                mult: 2,
            }),
            GeneratorSpec::new(Family::LineCountConfig {
                a: vec![2, 3],
                m: vec![2, 3],
            }),
            GeneratorSpec::new(Family::StarConfig { s: 4, m: 2 }),
            GeneratorSpec::new(Family::Intersections {
                s: 4,
                coeffs: vec![],
                e: vec![1, 2, 1, 1],
                m: 2,
                reduced: false,
            }),
            GeneratorSpec::new(Family::ProjectivePlaneFq { q: 3, m: 1 }),
            GeneratorSpec::new(Family::ProjectivePlaneFq { q: 4, m: 1 }),
            GeneratorSpec::new(Family::DualHesse { mult: 2 }),
            GeneratorSpec::new(Family::SixPointExample),
            GeneratorSpec {
                family: Family::StarConfig { s: 4, m: 1 },
                field: Some(FieldSpec::PrimeField(101)),
            },
        ];
        for spec in &specs {
            let g = gen(spec).unwrap();
            assert!(
                g.scheme.validate().is_empty(),
                "{spec:?}: {:?}",
                g.scheme.validate()
            );
            assert!(g.scheme.points().iter().all(|p| p.mult > 0));
        }
    }

    #[test]
    fn greedy_is_strictly_decreasing_on_plane() {
        let arr = Arrangement::projective_plane(3).unwrap();
        let (s, budget) = intersections_scheme(&arr, &[1; 13], 1, IntersectionKind::Full).unwrap();
        let t = greedy_reduce(&s, &budget);
        assert!(t.full);
        assert!(t.vector.is_strictly_decreasing(), "{}", t.vector);
    }

    #[test]
    fn greedy_stops_without_budget() {
        let s = six_point_example();
        let t = greedy_reduce(&s, &BTreeMap::new());
        assert!(t.vector.is_empty());
        assert!(!t.full);
    }

    #[test]
    fn small_fields() {
        let f = SmallField::new(2, 2);
        // F_4: every nonzero element has multiplicative order dividing 3
        for x in 1..4usize {
            let x2 = f.mul[x * 4 + x] as usize;
            assert_eq!(f.mul[x2 * 4 + x], 1);
        }
        let f9 = SmallField::new(3, 2);
        for x in 1..9usize {
            let mut acc = 1usize;
            for _ in 0..8 {
                acc = f9.mul[acc * 9 + x] as usize;
            }
            assert_eq!(acc, 1);
        }
    }
}
