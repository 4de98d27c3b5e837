//! Fat point schemes with collinearity data, and the residuation engine.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::bounds::binom;
use crate::scalar::{is_prime, FieldScalar, Fp};

/// The coefficient field of a coordinate realization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    PrimeField(u32),
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self, SchemeError> {
        if p > i32::MAX as u64 || !is_prime(p) {
            return Err(SchemeError::NotPrime(p));
        }
        Ok(FieldSpec::PrimeField(p as u32))
    }

    pub fn characteristic(&self) -> u32 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::PrimeField(p) => *p,
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::PrimeField(p) => write!(f, "F_{p}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PointId(pub usize);

impl fmt::Display for PointId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Point {
    pub label: String,
    pub mult: u32,
    /// Homogeneous coordinates (N+1 entries), if a realization is known.
    pub coords: Option<Vec<BigRational>>,
}

/// A line (a hyperplane when N > 2) given by the scheme points it contains.
#[derive(Debug, Clone, PartialEq)]
pub struct NamedLine {
    pub name: String,
    pub incidence: BTreeSet<PointId>,
    pub coefficients: Option<Vec<BigRational>>,
}

impl NamedLine {
    pub fn new(name: impl Into<String>, incidence: impl IntoIterator<Item = PointId>) -> Self {
        NamedLine {
            name: name.into(),
            incidence: incidence.into_iter().collect(),
            coefficients: None,
        }
    }

    pub fn with_coefficients(mut self, coeffs: Vec<BigRational>) -> Self {
        self.coefficients = Some(coeffs);
        self
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SchemeError {
    #[error("line `{line}` refers to unknown point {point}")]
    UnknownPoint { line: String, point: PointId },
    #[error("no line named `{0}`")]
    UnknownLine(String),
    #[error("{0} is not a supported prime modulus")]
    NotPrime(u64),
    #[error("ambient dimension must be at least 2, got {0}")]
    AmbientDimension(usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct FatPointScheme {
    ambient_dim: usize,
    field: Option<FieldSpec>,
    points: Vec<Point>,
    lines: Vec<NamedLine>,
}

impl FatPointScheme {
    pub fn new(ambient_dim: usize, field: Option<FieldSpec>) -> Result<Self, SchemeError> {
        if ambient_dim < 2 {
            return Err(SchemeError::AmbientDimension(ambient_dim));
        }
        Ok(FatPointScheme {
            ambient_dim,
            field,
            points: Vec::new(),
            lines: Vec::new(),
        })
    }

    /// An incidence-only scheme in the plane.
    pub fn plane() -> Self {
        Self::new(2, None).expect("2 is a valid dimension")
    }

    pub fn add_point(&mut self, label: impl Into<String>, mult: u32) -> PointId {
        self.points.push(Point {
            label: label.into(),
            mult,
            coords: None,
        });
        PointId(self.points.len() - 1)
    }

    pub fn add_point_with_coords(
        &mut self,
        label: impl Into<String>,
        mult: u32,
        coords: Vec<BigRational>,
    ) -> PointId {
        let id = self.add_point(label, mult);
        self.points[id.0].coords = Some(coords);
        id
    }

    pub fn add_line(&mut self, line: NamedLine) {
        self.lines.push(line);
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn field(&self) -> Option<FieldSpec> {
        self.field
    }

    pub fn set_field(&mut self, field: Option<FieldSpec>) {
        self.field = field;
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn point(&self, id: PointId) -> Option<&Point> {
        self.points.get(id.0)
    }

    pub fn point_ids(&self) -> impl Iterator<Item = PointId> + '_ {
        (0..self.points.len()).map(PointId)
    }

    pub fn lines(&self) -> &[NamedLine] {
        &self.lines
    }

    pub fn line(&self, name: &str) -> Result<&NamedLine, SchemeError> {
        self.lines
            .iter()
            .find(|l| l.name == name)
            .ok_or_else(|| SchemeError::UnknownLine(name.to_string()))
    }

    pub fn multiplicities(&self) -> Vec<u32> {
        self.points.iter().map(|p| p.mult).collect()
    }

    pub fn set_multiplicity(&mut self, id: PointId, mult: u32) {
        self.points[id.0].mult = mult;
    }

    /// Replaces every multiplicity by `factor` times itself.
    pub fn scaled(&self, factor: u32) -> Self {
        let mut out = self.clone();
        for p in &mut out.points {
            p.mult *= factor;
        }
        out
    }

    pub fn is_empty(&self) -> bool {
        self.points.iter().all(|p| p.mult == 0)
    }

    pub fn has_coordinates(&self) -> bool {
        self.points.iter().any(|p| p.coords.is_some())
    }

    /// Drops every coordinate and coefficient, keeping incidences.
    pub fn strip_coordinates(&mut self) {
        for p in &mut self.points {
            p.coords = None;
        }
        for l in &mut self.lines {
            l.coefficients = None;
        }
    }

    /// Degree of a single fat point of multiplicity `m` in this ambient space.
    pub fn point_degree(&self, m: u32) -> u64 {
        let n = self.ambient_dim as u64;
        binom(m as i64 + n as i64 - 1, n)
    }

    /// Degree of the intersection of a hyperplane with an `m`-fold point on it.
    fn section_degree(&self, m: u32) -> u64 {
        let n = self.ambient_dim as u64;
        binom(m as i64 + n as i64 - 2, n - 1)
    }

    pub fn degree(&self) -> u64 {
        self.points.iter().map(|p| self.point_degree(p.mult)).sum()
    }

    fn check_incidence(&self, line: &NamedLine) -> Result<(), SchemeError> {
        match line.incidence.iter().find(|id| id.0 >= self.points.len()) {
            Some(&point) => Err(SchemeError::UnknownPoint {
                line: line.name.clone(),
                point,
            }),
            None => Ok(()),
        }
    }

    /// Degree of `line ∩ self`.
    pub fn intersection_degree(&self, line: &NamedLine) -> Result<u64, SchemeError> {
        self.check_incidence(line)?;
        Ok(line
            .incidence
            .iter()
            .map(|id| self.section_degree(self.points[id.0].mult))
            .sum())
    }

    /// The residual `self : line`, together with `deg(line ∩ self)`.
    pub fn residual(&self, line: &NamedLine) -> Result<(FatPointScheme, u64), SchemeError> {
        let degree = self.intersection_degree(line)?;
        let mut out = self.clone();
        for id in &line.incidence {
            let p = &mut out.points[id.0];
            p.mult = p.mult.saturating_sub(1);
        }
        Ok((out, degree))
    }

    /// Residuates along `lines` in order, recording every step.
    pub fn reduce<S: AsRef<str>>(&self, lines: &[S]) -> Result<ReductionTrace, SchemeError> {
        let mut current = self.clone();
        let mut steps = Vec::with_capacity(lines.len());
        for name in lines {
            let line = self.line(name.as_ref())?;
            let (next, degree) = current.residual(line)?;
            steps.push(ReductionStep {
                line: line.name.clone(),
                degree,
                multiplicities: next.multiplicities(),
            });
            current = next;
        }
        Ok(ReductionTrace::from_steps(
            self.degree(),
            steps,
            current.degree(),
        ))
    }

    /// Every violated structural or coordinate invariant. Empty means valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();

        let mut labels = BTreeMap::new();
        for (i, p) in self.points.iter().enumerate() {
            if let Some(prev) = labels.insert(p.label.as_str(), i) {
                out.push(Violation::DuplicatePointLabel {
                    label: p.label.clone(),
                    first: PointId(prev),
                    second: PointId(i),
                });
            }
        }
        let mut names = BTreeSet::new();
        for l in &self.lines {
            if !names.insert(l.name.as_str()) {
                out.push(Violation::DuplicateLineName(l.name.clone()));
            }
            for &id in &l.incidence {
                if id.0 >= self.points.len() {
                    out.push(Violation::UnknownPoint {
                        line: l.name.clone(),
                        point: id,
                    });
                }
            }
        }

        if self.ambient_dim == 2 {
            for (i, a) in self.lines.iter().enumerate() {
                for b in &self.lines[i + 1..] {
                    let shared: Vec<PointId> =
                        a.incidence.intersection(&b.incidence).copied().collect();
                    if shared.len() > 1 {
                        out.push(Violation::LinesShareSeveralPoints {
                            first: a.name.clone(),
                            second: b.name.clone(),
                            shared,
                        });
                    }
                }
            }
        }

        let needs_field =
            self.has_coordinates() || self.lines.iter().any(|l| l.coefficients.is_some());
        match (needs_field, self.field) {
            (false, _) => {}
            (true, None) => out.push(Violation::MissingField),
            (true, Some(FieldSpec::Rationals)) => {
                self.coordinate_checks(|x| Some(x.clone()), &mut out)
            }
            (true, Some(FieldSpec::PrimeField(p))) => {
                self.coordinate_checks(|x| Fp::from_rational(x, p), &mut out)
            }
        }
        out
    }

    fn coordinate_checks<S: FieldScalar>(
        &self,
        embed: impl Fn(&BigRational) -> Option<S>,
        out: &mut Vec<Violation>,
    ) {
        let width = self.ambient_dim + 1;
        let embed_vec = |v: &[BigRational]| -> Option<Vec<S>> { v.iter().map(&embed).collect() };

        let mut pts: Vec<Option<Vec<S>>> = Vec::with_capacity(self.points.len());
        for (i, p) in self.points.iter().enumerate() {
            let id = PointId(i);
            let Some(c) = &p.coords else {
                pts.push(None);
                continue;
            };
            if c.len() != width {
                out.push(Violation::CoordinateLength {
                    point: id,
                    len: c.len(),
                });
                pts.push(None);
                continue;
            }
            match embed_vec(c) {
                None => {
                    out.push(Violation::NotInField {
                        point: Some(id),
                        line: None,
                    });
                    pts.push(None);
                }
                Some(v) if v.iter().all(Zero::is_zero) => {
                    out.push(Violation::ZeroVector {
                        point: Some(id),
                        line: None,
                    });
                    pts.push(None);
                }
                Some(v) => pts.push(Some(v)),
            }
        }

        for (i, a) in pts.iter().enumerate() {
            let Some(a) = a else { continue };
            for (j, b) in pts.iter().enumerate().skip(i + 1) {
                let Some(b) = b else { continue };
                if proportional(a, b) {
                    out.push(Violation::CoincidentPoints(PointId(i), PointId(j)));
                }
            }
        }

        for l in &self.lines {
            if let Some(c) = &l.coefficients {
                if c.len() != width {
                    out.push(Violation::CoefficientLength {
                        line: l.name.clone(),
                        len: c.len(),
                    });
                    continue;
                }
                let coeffs = match embed_vec(c) {
                    None => {
                        out.push(Violation::NotInField {
                            point: None,
                            line: Some(l.name.clone()),
                        });
                        continue;
                    }
                    Some(v) if v.iter().all(Zero::is_zero) => {
                        out.push(Violation::ZeroVector {
                            point: None,
                            line: Some(l.name.clone()),
                        });
                        continue;
                    }
                    Some(v) => v,
                };
                for (i, p) in pts.iter().enumerate() {
                    let Some(p) = p else { continue };
                    let on_line = dot(&coeffs, p).is_zero();
                    let listed = l.incidence.contains(&PointId(i));
                    if on_line && !listed {
                        out.push(Violation::MissingIncidence {
                            line: l.name.clone(),
                            point: PointId(i),
                        });
                    } else if !on_line && listed {
                        out.push(Violation::SpuriousIncidence {
                            line: l.name.clone(),
                            point: PointId(i),
                        });
                    }
                }
            }

            if self.ambient_dim == 2 {
                let on: Vec<(PointId, &Vec<S>)> = l
                    .incidence
                    .iter()
                    .filter_map(|id| pts.get(id.0).and_then(|p| p.as_ref()).map(|p| (*id, p)))
                    .collect();
                // any two non-proportional points span the only candidate line
                let span = on.iter().enumerate().find_map(|(i, a)| {
                    on[i + 1..]
                        .iter()
                        .find(|b| !proportional(a.1, b.1))
                        .map(|b| (a, b))
                });
                if let Some((a, b)) = span {
                    let normal = cross(a.1, b.1);
                    for c in &on {
                        if !dot(&normal, c.1).is_zero() {
                            out.push(Violation::NonCollinear {
                                line: l.name.clone(),
                                points: [a.0, b.0, c.0],
                            });
                        }
                    }
                }
            }
        }
    }
}

pub(crate) fn dot<S: FieldScalar>(a: &[S], b: &[S]) -> S {
    a.iter()
        .zip(b)
        .fold(S::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

pub(crate) fn cross<S: FieldScalar>(a: &[S], b: &[S]) -> Vec<S> {
    vec![
        a[1].clone() * b[2].clone() - a[2].clone() * b[1].clone(),
        a[2].clone() * b[0].clone() - a[0].clone() * b[2].clone(),
        a[0].clone() * b[1].clone() - a[1].clone() * b[0].clone(),
    ]
}

pub(crate) fn proportional<S: FieldScalar>(a: &[S], b: &[S]) -> bool {
    (0..a.len()).all(|i| {
        (i + 1..a.len())
            .all(|j| (a[i].clone() * b[j].clone() - a[j].clone() * b[i].clone()).is_zero())
    })
}

/// A broken invariant of a [`FatPointScheme`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    DuplicatePointLabel {
        label: String,
        first: PointId,
        second: PointId,
    },
    DuplicateLineName(String),
    UnknownPoint {
        line: String,
        point: PointId,
    },
    LinesShareSeveralPoints {
        first: String,
        second: String,
        shared: Vec<PointId>,
    },
    MissingField,
    CoordinateLength {
        point: PointId,
        len: usize,
    },
    CoefficientLength {
        line: String,
        len: usize,
    },
    NotInField {
        point: Option<PointId>,
        line: Option<String>,
    },
    ZeroVector {
        point: Option<PointId>,
        line: Option<String>,
    },
    CoincidentPoints(PointId, PointId),
    /// The point lies on the line's coordinates but is not listed in its incidence set.
    MissingIncidence {
        line: String,
        point: PointId,
    },
    /// The point is listed on the line but does not satisfy its equation.
    SpuriousIncidence {
        line: String,
        point: PointId,
    },
    NonCollinear {
        line: String,
        points: [PointId; 3],
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Violation::*;
        match self {
            DuplicatePointLabel {
                label,
                first,
                second,
            } => {
                write!(f, "point id `{label}` used by both {first} and {second}")
            }
            DuplicateLineName(n) => write!(f, "line name `{n}` is used twice"),
            UnknownPoint { line, point } => write!(f, "line `{line}` lists unknown point {point}"),
            LinesShareSeveralPoints {
                first,
                second,
                shared,
            } => write!(
                f,
                "lines `{first}` and `{second}` share {} points ({})",
                shared.len(),
                join_ids(shared)
            ),
            MissingField => write!(f, "coordinates present but no field given"),
            CoordinateLength { point, len } => write!(f, "point {point} has {len} coordinates"),
            CoefficientLength { line, len } => write!(f, "line `{line}` has {len} coefficients"),
            NotInField { point: Some(p), .. } => {
                write!(f, "coordinates of {p} are not defined over the field")
            }
            NotInField { line, .. } => write!(
                f,
                "coefficients of line `{}` are not defined over the field",
                line.as_deref().unwrap_or("?")
            ),
            ZeroVector { point: Some(p), .. } => write!(f, "point {p} has all-zero coordinates"),
            ZeroVector { line, .. } => {
                write!(
                    f,
                    "line `{}` has all-zero coefficients",
                    line.as_deref().unwrap_or("?")
                )
            }
            CoincidentPoints(a, b) => write!(f, "points {a} and {b} have proportional coordinates"),
            MissingIncidence { line, point } => {
                write!(
                    f,
                    "point {point} lies on line `{line}` but is missing from its incidence set"
                )
            }
            SpuriousIncidence { line, point } => {
                write!(
                    f,
                    "point {point} is listed on line `{line}` but does not lie on it"
                )
            }
            NonCollinear { line, points } => write!(
                f,
                "points {} listed on line `{line}` are not collinear",
                join_ids(points)
            ),
        }
    }
}

fn join_ids(ids: &[PointId]) -> String {
    ids.iter()
        .map(|p| p.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

/// A finite sequence of intersection degrees produced by residuation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ReductionVector(pub Vec<u64>);

impl ReductionVector {
    pub fn entries(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sum(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&v| v > 0)
    }

    pub fn is_non_increasing(&self) -> bool {
        self.0.windows(2).all(|w| w[0] >= w[1])
    }

    pub fn is_strictly_decreasing(&self) -> bool {
        self.0.windows(2).all(|w| w[0] > w[1])
    }

    pub fn is_gms(&self) -> bool {
        crate::bounds::is_gms(&self.0)
    }
}

impl From<Vec<u64>> for ReductionVector {
    fn from(v: Vec<u64>) -> Self {
        ReductionVector(v)
    }
}

impl fmt::Display for ReductionVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionStep {
    pub line: String,
    pub degree: u64,
    /// Multiplicities of every point after this step, indexed by [`PointId`].
    pub multiplicities: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionTrace {
    pub steps: Vec<ReductionStep>,
    pub vector: ReductionVector,
    pub full: bool,
    /// Degree of the scheme before the first step.
    pub initial_degree: u64,
    /// Degree of what is left after the last step.
    pub residual_degree: u64,
}

impl ReductionTrace {
    pub(crate) fn from_steps(
        initial_degree: u64,
        steps: Vec<ReductionStep>,
        residual_degree: u64,
    ) -> Self {
        let vector = ReductionVector(steps.iter().map(|s| s.degree).collect());
        let full = residual_degree == 0
            && steps.last().map_or(initial_degree == 0, |s| {
                s.multiplicities.iter().all(|&m| m == 0)
            });
        ReductionTrace {
            steps,
            vector,
            full,
            initial_degree,
            residual_degree,
        }
    }

    /// Indices of steps that met the residual scheme in degree zero.
    pub fn zero_degree_steps(&self) -> Vec<usize> {
        self.steps
            .iter()
            .enumerate()
            .filter(|(_, s)| s.degree == 0)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn warnings(&self) -> Vec<String> {
        self.zero_degree_steps()
            .into_iter()
            .map(|i| {
                format!(
                    "step {} along `{}` has degree 0 and leaves the scheme unchanged",
                    i + 1,
                    self.steps[i].line
                )
            })
            .collect()
    }

    /// `deg(A_0), deg(A_1), ..., deg(A_{n+1})`.
    pub fn residual_degrees(&self) -> Vec<u64> {
        let mut out = vec![self.initial_degree];
        let mut d = self.initial_degree;
        for s in &self.steps {
            d -= s.degree;
            out.push(d);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(x: i64) -> BigRational {
        BigRational::from_integer(x.into())
    }

    /// The six-point scheme with four lines through pairs of points.
    fn six_point() -> FatPointScheme {
        let mut s = FatPointScheme::plane();
        let p: Vec<PointId> = [2, 1, 1, 2, 1, 1]
            .iter()
            .enumerate()
            .map(|(i, &m)| s.add_point(format!("p{}", i + 1), m))
            .collect();
        s.add_line(NamedLine::new("l1", [p[0], p[1]]));
        s.add_line(NamedLine::new("l2", [p[0], p[2]]));
        s.add_line(NamedLine::new("l3", [p[3], p[4]]));
        s.add_line(NamedLine::new("l4", [p[3], p[5]]));
        s
    }

    #[test]
    fn residual_along_first_line() {
        let s = six_point();
        let (r, d) = s.residual(s.line("l1").unwrap()).unwrap();
        assert_eq!(d, 3);
        assert_eq!(r.multiplicities(), vec![1, 0, 1, 2, 1, 1]);
    }

    #[test]
    fn empty_line_is_a_null_step() {
        let s = six_point();
        let (r, d) = s.residual(&NamedLine::new("none", [])).unwrap();
        assert_eq!(d, 0);
        assert_eq!(r, s);
    }

    #[test]
    fn six_point_vector() {
        let t = six_point().reduce(&["l1", "l3", "l2", "l4"]).unwrap();
        assert_eq!(t.vector.0, vec![3, 3, 2, 2]);
        assert!(t.full);
        assert_eq!(t.residual_degrees(), vec![10, 7, 4, 2, 0]);
    }

    #[test]
    fn empty_scheme_empty_sequence() {
        let t = FatPointScheme::plane().reduce::<&str>(&[]).unwrap();
        assert!(t.vector.is_empty());
        assert!(t.full);
        assert_eq!(FatPointScheme::plane().degree(), 0);
    }

    #[test]
    fn repeated_line_warns_and_never_underflows() {
        let s = six_point();
        let t = s.reduce(&["l1", "l1", "l1"]).unwrap();
        assert_eq!(t.vector.0, vec![3, 1, 0]);
        assert_eq!(t.zero_degree_steps(), vec![2]);
        assert_eq!(t.warnings().len(), 1);
        assert!(!t.full);
    }

    #[test]
    fn unknown_line_and_point() {
        let s = six_point();
        assert_eq!(
            s.reduce(&["nope"]),
            Err(SchemeError::UnknownLine("nope".into()))
        );
        let bad = NamedLine::new("bad", [PointId(17)]);
        assert!(matches!(
            s.residual(&bad),
            Err(SchemeError::UnknownPoint { .. })
        ));
    }

    #[test]
    fn degree_in_higher_dimension() {
        let mut s = FatPointScheme::new(3, None).unwrap();
        s.add_point("a", 2);
        s.add_point("b", 1);
        // binom(2+2,3) + binom(1+2,3)
        assert_eq!(s.degree(), 4 + 1);
        let h = NamedLine::new("H", [PointId(0)]);
        let (r, d) = s.residual(&h).unwrap();
        assert_eq!(d, 3);
        assert_eq!(r.degree(), 2);
    }

    #[test]
    fn validate_two_lines_sharing_two_points() {
        let mut s = six_point();
        s.add_line(NamedLine::new("bad", [PointId(0), PointId(1)]));
        let v = s.validate();
        assert_eq!(v.len(), 1, "{v:?}");
        assert!(matches!(v[0], Violation::LinesShareSeveralPoints { .. }));
    }

    #[test]
    fn validate_maximality() {
        let mut s = FatPointScheme::new(2, Some(FieldSpec::Rationals)).unwrap();
        let a = s.add_point_with_coords("a", 1, vec![q(0), q(0), q(1)]);
        let b = s.add_point_with_coords("b", 1, vec![q(1), q(0), q(1)]);
        let _c = s.add_point_with_coords("c", 1, vec![q(2), q(0), q(1)]);
        s.add_line(NamedLine::new("y=0", [a, b]).with_coefficients(vec![q(0), q(1), q(0)]));
        let v = s.validate();
        assert_eq!(
            v,
            vec![Violation::MissingIncidence {
                line: "y=0".into(),
                point: PointId(2)
            }]
        );
    }

    #[test]
    fn validate_non_collinear_without_coefficients() {
        let mut s = FatPointScheme::new(2, Some(FieldSpec::Rationals)).unwrap();
        let a = s.add_point_with_coords("a", 1, vec![q(0), q(0), q(1)]);
        let b = s.add_point_with_coords("b", 1, vec![q(1), q(0), q(1)]);
        let c = s.add_point_with_coords("c", 1, vec![q(0), q(1), q(1)]);
        s.add_line(NamedLine::new("l", [a, b, c]));
        assert!(matches!(s.validate()[..], [Violation::NonCollinear { .. }]));
    }

    #[test]
    fn validate_needs_field_and_reducible_denominators() {
        let mut s = FatPointScheme::plane();
        s.add_point_with_coords("a", 1, vec![q(1), q(0), q(0)]);
        assert_eq!(s.validate(), vec![Violation::MissingField]);
        s.set_field(Some(FieldSpec::PrimeField(3)));
        assert!(s.validate().is_empty());
        let mut t = FatPointScheme::new(2, Some(FieldSpec::PrimeField(3))).unwrap();
        t.add_point_with_coords(
            "a",
            1,
            vec![BigRational::new(1.into(), 3.into()), q(0), q(1)],
        );
        assert!(matches!(t.validate()[..], [Violation::NotInField { .. }]));
    }

    #[test]
    fn valid_six_point_scheme() {
        assert!(six_point().validate().is_empty());
    }

    #[test]
    fn field_spec_rejects_composites() {
        assert!(FieldSpec::prime(9).is_err());
        assert_eq!(FieldSpec::prime(7).unwrap().characteristic(), 7);
    }
}
