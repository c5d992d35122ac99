//! Floating-point configurations and the tolerance-based census.

use thiserror::Error;

use crate::geometry::{CensusReport, TriangleSignature};
use crate::rat::rat_from_f64;

#[derive(Debug, Error, PartialEq)]
pub enum FloatError {
    #[error("coordinate buffer has {got} values, expected {expected}")]
    BadShape { expected: usize, got: usize },
    #[error("coordinates must be finite")]
    NonFinite,
    #[error("epsilon must be positive, got {0}")]
    BadEpsilon(f64),
    #[error("census requires at least 3 points, got {0}")]
    TooFewPoints(usize),
    #[error("points {0} and {1} are closer than the clustering resolution")]
    BelowResolution(usize, usize),
    #[error("every triple is degenerate at this tolerance")]
    AllDegenerate,
}

/// A configuration of `n` points in `R^dim` stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct FloatConfig {
    n: usize,
    dim: usize,
    coords: Vec<f64>,
}

impl FloatConfig {
    pub fn new(n: usize, dim: usize, coords: Vec<f64>) -> Result<Self, FloatError> {
        if coords.len() != n * dim {
            return Err(FloatError::BadShape {
                expected: n * dim,
                got: coords.len(),
            });
        }
        if !coords.iter().all(|c| c.is_finite()) {
            return Err(FloatError::NonFinite);
        }
        Ok(Self { n, dim, coords })
    }

    pub fn n_points(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn squared_distance(&self, i: usize, j: usize) -> f64 {
        let (p, q) = (self.point(i), self.point(j));
        p.iter().zip(q).map(|(a, b)| (a - b) * (a - b)).sum()
    }
}

fn sixteen_area_sq_f64(a: f64, b: f64, c: f64) -> f64 {
    2.0 * (a * b + b * c + c * a) - a * a - b * b - c * c
}

/// Union-find with path halving; used for single-linkage clustering.
struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        Self((0..n).collect())
    }

    fn find(&mut self, mut i: usize) -> usize {
        while self.0[i] != i {
            self.0[i] = self.0[self.0[i]];
            i = self.0[i];
        }
        i
    }

    fn union(&mut self, i: usize, j: usize) {
        let (ri, rj) = (self.find(i), self.find(j));
        // keep the smaller index as root so representatives are the
        // lexicographically first members
        let (lo, hi) = if ri < rj { (ri, rj) } else { (rj, ri) };
        self.0[hi] = lo;
    }
}

/// Census of a floating configuration under a relative tolerance.
///
/// Signatures whose sorted components all lie within `eps * scale` of each
/// other (single linkage, transitively) fall into one class, where `scale`
/// is the largest pairwise squared distance; a triple counts as degenerate
/// when its area term `16A^2` is at most `eps * scale^2`. Values are
/// processed in lexicographic order and each cluster is reported by its
/// lexicographically smallest member, so the result is deterministic.
pub fn epsilon_census(cfg: &FloatConfig, eps: f64) -> Result<CensusReport, FloatError> {
    if !eps.is_finite() || eps <= 0.0 {
        return Err(FloatError::BadEpsilon(eps));
    }
    let n = cfg.n_points();
    if n < 3 {
        return Err(FloatError::TooFewPoints(n));
    }
    let mut scale = 0.0f64;
    for i in 0..n {
        for j in (i + 1)..n {
            scale = scale.max(cfg.squared_distance(i, j));
        }
    }
    // coordinates near the double range overflow the squared distances
    if !scale.is_finite() {
        return Err(FloatError::NonFinite);
    }
    let gap = eps * scale;
    for i in 0..n {
        for j in (i + 1)..n {
            if cfg.squared_distance(i, j) <= gap {
                return Err(FloatError::BelowResolution(i, j));
            }
        }
    }

    // Distinct distances: 1-d single linkage over the sorted values.
    let mut dists = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in (i + 1)..n {
            dists.push(cfg.squared_distance(i, j));
        }
    }
    dists.sort_by(f64::total_cmp);
    let mut distance_reps = vec![dists[0]];
    for w in dists.windows(2) {
        if w[1] - w[0] > gap {
            distance_reps.push(w[1]);
        }
    }

    // Triangle signatures.
    let mut signatures: Vec<[f64; 3]> = Vec::new();
    let mut degenerate = 0usize;
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                let mut s = [
                    cfg.squared_distance(i, j),
                    cfg.squared_distance(i, k),
                    cfg.squared_distance(j, k),
                ];
                s.sort_by(f64::total_cmp);
                if sixteen_area_sq_f64(s[0], s[1], s[2]) <= eps * scale * scale {
                    degenerate += 1;
                } else {
                    signatures.push(s);
                }
            }
        }
    }
    if signatures.is_empty() {
        return Err(FloatError::AllDegenerate);
    }
    signatures.sort_by(|x, y| {
        x.iter()
            .zip(y)
            .map(|(a, b)| a.total_cmp(b))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let m = signatures.len();
    let mut uf = UnionFind::new(m);
    for i in 0..m {
        for j in (i + 1)..m {
            // sorted lexicographically, so once the first components drift
            // apart no later j can link to i
            if signatures[j][0] - signatures[i][0] > gap {
                break;
            }
            if (signatures[i][1] - signatures[j][1]).abs() <= gap
                && (signatures[i][2] - signatures[j][2]).abs() <= gap
            {
                uf.union(i, j);
            }
        }
    }
    let mut class_of_root: Vec<(usize, usize)> = Vec::new(); // (root, multiplicity)
    for i in 0..m {
        let r = uf.find(i);
        match class_of_root.iter_mut().find(|(root, _)| *root == r) {
            Some((_, count)) => *count += 1,
            None => class_of_root.push((r, 1)),
        }
    }
    class_of_root.sort_by_key(|&(root, _)| root);

    let exact = |x: f64| rat_from_f64(x).expect("finite distance value");
    let triangle_classes = class_of_root
        .into_iter()
        .map(|(root, count)| {
            let s = &signatures[root];
            (
                TriangleSignature::from_raw(exact(s[0]), exact(s[1]), exact(s[2])),
                count,
            )
        })
        .collect();

    Ok(CensusReport {
        n_points: n,
        distinct_squared_distances: distance_reps.into_iter().map(exact).collect(),
        triangle_classes,
        degenerate_triples: degenerate,
    })
}
