//! Exact points, squared distances and the distinct-triangle census.
//!
//! All lengths are stored squared so that every quantity is rational and all
//! comparisons are exact. Two non-degenerate triples are congruent exactly
//! when their sorted triples of squared side lengths agree (SSS, reflections
//! included), so a sorted triple is a complete congruence invariant.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::float::FloatConfig;
use crate::rat::{parse_rational, rat_to_f64, Rat};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GeometryError {
    #[error("point must have at least one coordinate")]
    EmptyPoint,
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("configuration must contain at least one point")]
    EmptyConfig,
    #[error("points {0} and {1} coincide")]
    DuplicatePoint(usize, usize),
    #[error("census requires at least 3 points, got {0}")]
    TooFewPoints(usize),
    #[error("degenerate triple: the three squared lengths have zero area")]
    DegenerateTriple,
    #[error("invalid squared-distance matrix: {0}")]
    InvalidMatrix(String),
}

/// A point with exact rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    coords: Vec<Rat>,
}

impl Point {
    pub fn new(coords: Vec<Rat>) -> Result<Self, GeometryError> {
        if coords.is_empty() {
            return Err(GeometryError::EmptyPoint);
        }
        Ok(Self { coords })
    }

    /// Convenience constructor for integer coordinates. Panics on an empty
    /// slice; intended for fixed literal points.
    pub fn from_integers(coords: &[i64]) -> Self {
        assert!(!coords.is_empty(), "point needs at least one coordinate");
        Self {
            coords: coords.iter().map(|&c| crate::rat::rat(c)).collect(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }
}

/// An ordered list of pairwise-distinct points in a shared ambient dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointConfig {
    points: Vec<Point>,
    ambient_dim: usize,
}

impl PointConfig {
    pub fn new(points: Vec<Point>) -> Result<Self, GeometryError> {
        let first = points.first().ok_or(GeometryError::EmptyConfig)?;
        let ambient_dim = first.ambient_dim();
        for p in &points {
            if p.ambient_dim() != ambient_dim {
                return Err(GeometryError::DimensionMismatch(
                    ambient_dim,
                    p.ambient_dim(),
                ));
            }
        }
        for i in 0..points.len() {
            for j in (i + 1)..points.len() {
                if points[i] == points[j] {
                    return Err(GeometryError::DuplicatePoint(i, j));
                }
            }
        }
        Ok(Self { points, ambient_dim })
    }

    /// Builds a configuration from rows of integer coordinates.
    pub fn from_integer_rows(rows: &[&[i64]]) -> Result<Self, GeometryError> {
        Self::new(rows.iter().map(|r| Point::from_integers(r)).collect())
    }

    pub fn n_points(&self) -> usize {
        self.points.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    /// Rounds every coordinate to the nearest double. Panics if a
    /// coordinate lies outside the double range.
    pub fn to_float(&self) -> FloatConfig {
        let coords = self
            .points
            .iter()
            .flat_map(|p| p.coords().iter().map(rat_to_f64))
            .collect();
        FloatConfig::new(self.n_points(), self.ambient_dim, coords)
            .expect("exact configuration converts to a valid float configuration")
    }
}

/// Exact squared Euclidean distance between two points of equal dimension.
pub fn squared_distance(p: &Point, q: &Point) -> Result<Rat, GeometryError> {
    if p.ambient_dim() != q.ambient_dim() {
        return Err(GeometryError::DimensionMismatch(
            p.ambient_dim(),
            q.ambient_dim(),
        ));
    }
    let mut sum = Rat::zero();
    for (a, b) in p.coords().iter().zip(q.coords()) {
        let d = a - b;
        sum += &d * &d;
    }
    Ok(sum)
}

/// Symmetric matrix of pairwise squared distances: zero diagonal, strictly
/// positive off-diagonal entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquaredDistanceMatrix {
    n: usize,
    entries: Vec<Rat>, // row-major n*n
}

impl SquaredDistanceMatrix {
    /// Validates and adopts an explicit entry table.
    pub fn from_entries(n: usize, entries: Vec<Rat>) -> Result<Self, GeometryError> {
        if n == 0 {
            return Err(GeometryError::InvalidMatrix("size zero".into()));
        }
        if entries.len() != n * n {
            return Err(GeometryError::InvalidMatrix(format!(
                "expected {} entries, got {}",
                n * n,
                entries.len()
            )));
        }
        for i in 0..n {
            if !entries[i * n + i].is_zero() {
                return Err(GeometryError::InvalidMatrix(format!(
                    "nonzero diagonal at ({i},{i})"
                )));
            }
            for j in (i + 1)..n {
                if entries[i * n + j] != entries[j * n + i] {
                    return Err(GeometryError::InvalidMatrix(format!(
                        "asymmetric at ({i},{j})"
                    )));
                }
                if entries[i * n + j] <= Rat::zero() {
                    return Err(GeometryError::InvalidMatrix(format!(
                        "non-positive off-diagonal at ({i},{j})"
                    )));
                }
            }
        }
        Ok(Self { n, entries })
    }

    /// Builds the matrix from the upper triangle given row-wise (i < j).
    pub fn from_upper_triangle(n: usize, upper: &[Rat]) -> Result<Self, GeometryError> {
        if upper.len() != n * (n - 1) / 2 {
            return Err(GeometryError::InvalidMatrix(format!(
                "expected {} upper-triangle entries, got {}",
                n * (n - 1) / 2,
                upper.len()
            )));
        }
        let mut entries = vec![Rat::zero(); n * n];
        let mut k = 0;
        for i in 0..n {
            for j in (i + 1)..n {
                entries[i * n + j] = upper[k].clone();
                entries[j * n + i] = upper[k].clone();
                k += 1;
            }
        }
        Self::from_entries(n, entries)
    }

    /// Parses the text format: first non-comment line holds `n`, followed by
    /// the `n(n-1)/2` upper-triangle entries row-wise, whitespace separated.
    /// Blank lines and `#` comments are ignored.
    pub fn parse_text(input: &str) -> Result<Self, GeometryError> {
        let mut tokens = input
            .lines()
            .map(|l| match l.find('#') {
                Some(pos) => &l[..pos],
                None => l,
            })
            .flat_map(|l| l.split_whitespace());
        let n: usize = tokens
            .next()
            .ok_or_else(|| GeometryError::InvalidMatrix("empty input".into()))?
            .parse()
            .map_err(|_| GeometryError::InvalidMatrix("first token must be the point count".into()))?;
        if n == 0 {
            return Err(GeometryError::InvalidMatrix("size zero".into()));
        }
        let mut upper = Vec::with_capacity(n * (n - 1) / 2);
        for tok in tokens {
            let v = parse_rational(tok).ok_or_else(|| {
                GeometryError::InvalidMatrix(format!("malformed rational {tok:?}"))
            })?;
            upper.push(v);
        }
        Self::from_upper_triangle(n, &upper)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.entries[i * self.n + j]
    }

    /// Upper-triangle entries row-wise, in (i, j) lexicographic order.
    pub fn upper_triangle(&self) -> Vec<Rat> {
        let mut out = Vec::with_capacity(self.n * (self.n - 1) / 2);
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                out.push(self.get(i, j).clone());
            }
        }
        out
    }
}

/// Pairwise squared distances of a configuration.
pub fn distance_matrix(cfg: &PointConfig) -> SquaredDistanceMatrix {
    let n = cfg.n_points();
    let mut entries = vec![Rat::zero(); n * n];
    for i in 0..n {
        for j in (i + 1)..n {
            let d = squared_distance(&cfg.points()[i], &cfg.points()[j])
                .expect("configuration points share a dimension");
            entries[i * n + j] = d.clone();
            entries[j * n + i] = d;
        }
    }
    SquaredDistanceMatrix { n, entries }
}

/// Sixteen times the squared triangle area from squared side lengths:
/// `2ab + 2bc + 2ca - a^2 - b^2 - c^2` (the three-point Cayley-Menger form).
pub fn sixteen_area_sq(a: &Rat, b: &Rat, c: &Rat) -> Rat {
    let two = crate::rat::rat(2);
    &two * (a * b + b * c + c * a) - a * a - b * b - c * c
}

/// True iff three pairwise squared distances come from collinear points
/// (zero area), including repeated points. Exact, no tolerance.
pub fn is_degenerate_triple(a: &Rat, b: &Rat, c: &Rat) -> bool {
    sixteen_area_sq(a, b, c) <= Rat::zero()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TriangleKind {
    Equilateral,
    Isosceles,
    Scalene,
}

impl fmt::Display for TriangleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TriangleKind::Equilateral => write!(f, "equilateral"),
            TriangleKind::Isosceles => write!(f, "isosceles"),
            TriangleKind::Scalene => write!(f, "scalene"),
        }
    }
}

/// Sorted triple of exact squared side lengths; the congruence class of one
/// non-degenerate triangle.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TriangleSignature {
    a: Rat,
    b: Rat,
    c: Rat,
}

impl TriangleSignature {
    /// Sorts the squared sides; rejects degenerate (collinear) triples.
    pub fn new(a: Rat, b: Rat, c: Rat) -> Result<Self, GeometryError> {
        if is_degenerate_triple(&a, &b, &c) {
            return Err(GeometryError::DegenerateTriple);
        }
        Ok(Self::from_raw(a, b, c))
    }

    /// Sorts without the degeneracy check. Used by the tolerance census,
    /// where degeneracy is decided by the epsilon rule instead.
    pub(crate) fn from_raw(a: Rat, b: Rat, c: Rat) -> Self {
        let mut v = [a, b, c];
        v.sort();
        let [a, b, c] = v;
        Self { a, b, c }
    }

    /// Squared sides in ascending order.
    pub fn sides(&self) -> (&Rat, &Rat, &Rat) {
        (&self.a, &self.b, &self.c)
    }

    pub fn kind(&self) -> TriangleKind {
        if self.a == self.c {
            TriangleKind::Equilateral
        } else if self.a == self.b || self.b == self.c {
            TriangleKind::Isosceles
        } else {
            TriangleKind::Scalene
        }
    }
}

impl fmt::Display for TriangleSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}, {})",
            crate::rat::format_rat(&self.a),
            crate::rat::format_rat(&self.b),
            crate::rat::format_rat(&self.c)
        )
    }
}

/// Exact squared circumradius of a non-degenerate triangle:
/// `R^2 = abc / (16 Area^2)` in squared-length units. For an equilateral
/// triangle with squared side `a` this is `a/3`.
pub fn squared_circumradius(sig: &TriangleSignature) -> Rat {
    let (a, b, c) = sig.sides();
    let denom = sixteen_area_sq(a, b, c);
    debug_assert!(denom > Rat::zero());
    a * b * c / denom
}

/// The computed census of a configuration: its distinct squared distances,
/// triangle congruence classes with multiplicities, and the count of
/// collinear triples (excluded from the classes).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusReport {
    pub n_points: usize,
    /// Sorted distinct squared distance values.
    pub distinct_squared_distances: Vec<Rat>,
    /// Signature classes sorted ascending, with multiplicity over unordered
    /// triples.
    pub triangle_classes: Vec<(TriangleSignature, usize)>,
    pub degenerate_triples: usize,
}

impl CensusReport {
    pub fn distinct_distance_count(&self) -> usize {
        self.distinct_squared_distances.len()
    }

    pub fn class_count(&self) -> usize {
        self.triangle_classes.len()
    }
}

/// Classifies all unordered point triples of a configuration by congruence.
///
/// Collinear triples are counted separately and never form a class; the sum
/// of class multiplicities plus the degenerate count is `C(n,3)`.
pub fn census(cfg: &PointConfig) -> Result<CensusReport, GeometryError> {
    let n = cfg.n_points();
    if n < 3 {
        return Err(GeometryError::TooFewPoints(n));
    }
    let dm = distance_matrix(cfg);
    let mut distances = BTreeSet::new();
    for i in 0..n {
        for j in (i + 1)..n {
            distances.insert(dm.get(i, j).clone());
        }
    }
    let mut classes: BTreeMap<TriangleSignature, usize> = BTreeMap::new();
    let mut degenerate = 0usize;
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                let (a, b, c) = (dm.get(i, j), dm.get(i, k), dm.get(j, k));
                match TriangleSignature::new(a.clone(), b.clone(), c.clone()) {
                    Ok(sig) => *classes.entry(sig).or_insert(0) += 1,
                    Err(GeometryError::DegenerateTriple) => degenerate += 1,
                    Err(e) => return Err(e),
                }
            }
        }
    }
    Ok(CensusReport {
        n_points: n,
        distinct_squared_distances: distances.into_iter().collect(),
        triangle_classes: classes.into_iter().collect(),
        degenerate_triples: degenerate,
    })
}
