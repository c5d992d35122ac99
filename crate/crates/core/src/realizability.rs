//! Exact Euclidean distance geometry: PSD/rank decisions over the rationals
//! and approximate coordinate recovery.
//!
//! A squared-distance matrix on `n` points is realizable in `R^k` exactly
//! when its Gram matrix relative to any base point is positive semidefinite
//! with rank at most `k`; the rank is then the minimal embedding dimension.
//! Both decisions are made in exact rational arithmetic, so no tolerance is
//! involved anywhere in the decision path. Coordinates, when requested, are
//! recovered numerically from the Gram matrix and verified against the input
//! distances.

use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::float::FloatConfig;
use crate::geometry::SquaredDistanceMatrix;
use crate::rat::{rat_to_f64, Rat};

#[derive(Debug, Error, PartialEq)]
pub enum RealizabilityError {
    #[error("base index {base} out of range for {n} points")]
    BaseOutOfRange { base: usize, n: usize },
    #[error("not realizable in R^{requested}: {reason}")]
    NotRealizable { requested: usize, reason: String },
    #[error("reconstruction residual {residual:e} exceeds 1e-9; matrix is ill-conditioned")]
    ResidualTooLarge { residual: f64 },
    #[error("matrix entries exceed the double range; coordinates cannot be recovered")]
    ValuesOutOfFloatRange,
}

/// Gram matrix of a configuration relative to a base point; entry `(i, j)`
/// is the inner product of the offset vectors of the `i`-th and `j`-th
/// remaining points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GramMatrix {
    size: usize,
    base_index: usize,
    entries: Vec<Rat>, // row-major size*size
}

impl GramMatrix {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn base_index(&self) -> usize {
        self.base_index
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.entries[i * self.size + j]
    }

    /// Adopts explicit symmetric entries; panics on asymmetry (internal use
    /// and tests only).
    pub fn from_entries(size: usize, entries: Vec<Rat>) -> Self {
        assert_eq!(entries.len(), size * size);
        for i in 0..size {
            for j in (i + 1)..size {
                assert_eq!(
                    entries[i * size + j],
                    entries[j * size + i],
                    "Gram matrix must be symmetric"
                );
            }
        }
        Self {
            size,
            base_index: 0,
            entries,
        }
    }

    /// Quadratic form `v^T G v`, evaluated exactly.
    pub fn quadratic_form(&self, v: &[Rat]) -> Rat {
        assert_eq!(v.len(), self.size);
        let mut sum = Rat::zero();
        for i in 0..self.size {
            for j in 0..self.size {
                sum += &v[i] * self.get(i, j) * &v[j];
            }
        }
        sum
    }
}

/// Gram matrix from squared distances via
/// `G_ij = (d^2(b,i) + d^2(b,j) - d^2(i,j)) / 2`.
pub fn gram_from_squared_distances(
    d: &SquaredDistanceMatrix,
    base: usize,
) -> Result<GramMatrix, RealizabilityError> {
    let n = d.n();
    if base >= n {
        return Err(RealizabilityError::BaseOutOfRange { base, n });
    }
    let others: Vec<usize> = (0..n).filter(|&i| i != base).collect();
    let size = n - 1;
    let half = crate::rat::ratio(1, 2);
    let mut entries = vec![Rat::zero(); size * size];
    for (r, &i) in others.iter().enumerate() {
        for (c, &j) in others.iter().enumerate() {
            entries[r * size + c] = (d.get(base, i) + d.get(base, j) - d.get(i, j)) * &half;
        }
    }
    Ok(GramMatrix {
        size,
        base_index: base,
        entries,
    })
}

/// Outcome of the exact PSD and rank computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PsdOutcome {
    pub psd: bool,
    pub rank: usize,
    /// Present iff not PSD: a rational direction with `v^T G v < 0`.
    pub witness: Option<Vec<Rat>>,
}

/// Exact rank of a square rational matrix by Gaussian elimination.
fn rational_rank(size: usize, entries: &[Rat]) -> usize {
    let mut a: Vec<Rat> = entries.to_vec();
    let mut rank = 0;
    let mut row = 0;
    for col in 0..size {
        let pivot_row = (row..size).find(|&r| !a[r * size + col].is_zero());
        let Some(pr) = pivot_row else { continue };
        if pr != row {
            for c in 0..size {
                a.swap(row * size + c, pr * size + c);
            }
        }
        let pivot = a[row * size + col].clone();
        for r in (row + 1)..size {
            if a[r * size + col].is_zero() {
                continue;
            }
            let factor = &a[r * size + col] / &pivot;
            for c in col..size {
                let delta = &factor * &a[row * size + c];
                a[r * size + c] -= delta;
            }
        }
        rank += 1;
        row += 1;
        if row == size {
            break;
        }
    }
    rank
}

/// Decides positive semidefiniteness and exact rank over the rationals.
///
/// The PSD decision uses symmetric Gaussian elimination with
/// greatest-remaining-diagonal pivoting; whenever the matrix fails to be
/// PSD a negative direction is recovered by back-substitution through the
/// recorded congruence steps, so the certificate can be checked exactly
/// against the original matrix. The reported rank comes from an independent
/// plain elimination and is valid whether or not the matrix is PSD.
/// One congruence step: pivot index, pivot value and the pivot row over
/// the indices still in play afterwards.
type EliminationStep = (usize, Rat, Vec<(usize, Rat)>);

pub fn psd_rank(g: &GramMatrix) -> PsdOutcome {
    let n = g.size;
    let rank = rational_rank(n, &g.entries);
    let mut a = g.entries.clone();
    let mut remaining: Vec<usize> = (0..n).collect();
    let mut steps: Vec<EliminationStep> = Vec::new();

    let lift = |steps: &[EliminationStep], mut v: Vec<Rat>| -> Vec<Rat> {
        for (p, d, row) in steps.iter().rev() {
            let mut cross = Rat::zero();
            for (i, val) in row {
                cross += val * &v[*i];
            }
            v[*p] = -cross / d;
        }
        v
    };

    loop {
        if remaining.is_empty() {
            debug_assert_eq!(steps.len(), rank);
            return PsdOutcome {
                psd: true,
                rank,
                witness: None,
            };
        }
        let &p = remaining
            .iter()
            .max_by(|&&i, &&j| a[i * n + i].cmp(&a[j * n + j]))
            .unwrap();
        let d = a[p * n + p].clone();
        if d > Rat::zero() {
            remaining.retain(|&i| i != p);
            let row: Vec<(usize, Rat)> = remaining
                .iter()
                .map(|&i| (i, a[p * n + i].clone()))
                .collect();
            for &i in &remaining {
                for &j in &remaining {
                    let delta = &a[i * n + p] * &a[p * n + j] / &d;
                    a[i * n + j] -= delta;
                }
            }
            steps.push((p, d, row));
            continue;
        }
        // Max remaining diagonal is <= 0.
        let witness_reduced = if let Some(&neg) = remaining
            .iter()
            .find(|&&i| a[i * n + i] < Rat::zero())
        {
            let mut v = vec![Rat::zero(); n];
            v[neg] = Rat::from_integer(1.into());
            v
        } else {
            // All remaining diagonals are zero; any nonzero off-diagonal
            // entry yields a negative direction, otherwise the remaining
            // block vanishes and the matrix is PSD.
            let mut found = None;
            'outer: for (ai, &i) in remaining.iter().enumerate() {
                for &j in &remaining[ai + 1..] {
                    if !a[i * n + j].is_zero() {
                        found = Some((i, j));
                        break 'outer;
                    }
                }
            }
            match found {
                None => {
                    return PsdOutcome {
                        psd: true,
                        rank,
                        witness: None,
                    };
                }
                Some((i, j)) => {
                    let mut v = vec![Rat::zero(); n];
                    let one = Rat::from_integer(1.into());
                    v[i] = one.clone();
                    v[j] = if a[i * n + j] > Rat::zero() { -one } else { one };
                    v
                }
            }
        };
        let v = lift(&steps, witness_reduced);
        debug_assert!(g.quadratic_form(&v) < Rat::zero());
        return PsdOutcome {
            psd: false,
            rank,
            witness: Some(v),
        };
    }
}

/// Minimal embedding dimension, or a certificate that none exists.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EmbeddingDim {
    Dim(usize),
    NotRealizable,
}

impl fmt::Display for EmbeddingDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EmbeddingDim::Dim(d) => write!(f, "{d}"),
            EmbeddingDim::NotRealizable => write!(f, "not-realizable"),
        }
    }
}

/// Realizability verdict for a squared-distance matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealizabilityReport {
    pub psd: bool,
    pub rank: usize,
    pub min_embedding_dim: EmbeddingDim,
    /// Present iff not PSD; satisfies `v^T G v < 0` exactly.
    pub witness: Option<Vec<Rat>>,
}

impl RealizabilityReport {
    pub fn realizable_in(&self, dim: usize) -> bool {
        matches!(self.min_embedding_dim, EmbeddingDim::Dim(d) if d <= dim)
    }
}

/// Decides Euclidean realizability of a squared-distance matrix and computes
/// its minimal embedding dimension. Independent of the base-point choice.
pub fn embedding_dimension(d: &SquaredDistanceMatrix) -> RealizabilityReport {
    let gram = gram_from_squared_distances(d, 0).expect("base 0 is always valid");
    let outcome = psd_rank(&gram);
    RealizabilityReport {
        psd: outcome.psd,
        rank: outcome.rank,
        min_embedding_dim: if outcome.psd {
            EmbeddingDim::Dim(outcome.rank)
        } else {
            EmbeddingDim::NotRealizable
        },
        witness: outcome.witness,
    }
}

/// Coordinates recovered for a realizable matrix, with the verified
/// reconstruction quality.
#[derive(Debug, Clone)]
pub struct Realization {
    pub config: FloatConfig,
    /// max over pairs of |reconstructed - target| / max entry of the target.
    pub max_rel_residual: f64,
}

/// Cyclic Jacobi eigendecomposition of a small symmetric matrix.
/// Returns eigenvalues and matching eigenvector columns.
fn jacobi_eigen(size: usize, mut a: Vec<f64>) -> (Vec<f64>, Vec<f64>) {
    let mut v = vec![0.0; size * size];
    for i in 0..size {
        v[i * size + i] = 1.0;
    }
    let scale: f64 = (0..size)
        .map(|i| a[i * size + i].abs())
        .fold(1e-300, f64::max);
    for _sweep in 0..64 {
        let mut off = 0.0f64;
        for p in 0..size {
            for q in (p + 1)..size {
                off = off.max(a[p * size + q].abs());
            }
        }
        if off <= 1e-15 * scale {
            break;
        }
        for p in 0..size {
            for q in (p + 1)..size {
                let apq = a[p * size + q];
                if apq.abs() <= 1e-300 {
                    continue;
                }
                let tau = (a[q * size + q] - a[p * size + p]) / (2.0 * apq);
                let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                let t = if tau == 0.0 { 1.0 } else { t };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                for k in 0..size {
                    let akp = a[k * size + p];
                    let akq = a[k * size + q];
                    a[k * size + p] = c * akp - s * akq;
                    a[k * size + q] = s * akp + c * akq;
                }
                for k in 0..size {
                    let apk = a[p * size + k];
                    let aqk = a[q * size + k];
                    a[p * size + k] = c * apk - s * aqk;
                    a[q * size + k] = s * apk + c * aqk;
                }
                for k in 0..size {
                    let vkp = v[k * size + p];
                    let vkq = v[k * size + q];
                    v[k * size + p] = c * vkp - s * vkq;
                    v[k * size + q] = s * vkp + c * vkq;
                }
            }
        }
    }
    let values = (0..size).map(|i| a[i * size + i]).collect();
    (values, v)
}

/// Recovers `n` points in `R^dim` whose pairwise squared distances match the
/// input matrix. Requires the exact layer to certify realizability first;
/// the reconstruction residual is verified and never silently accepted.
pub fn realize_coordinates(
    d: &SquaredDistanceMatrix,
    dim: usize,
) -> Result<Realization, RealizabilityError> {
    let report = embedding_dimension(d);
    match report.min_embedding_dim {
        EmbeddingDim::NotRealizable => {
            return Err(RealizabilityError::NotRealizable {
                requested: dim,
                reason: "the matrix is not positive semidefinite".into(),
            });
        }
        EmbeddingDim::Dim(min_dim) if min_dim > dim => {
            return Err(RealizabilityError::NotRealizable {
                requested: dim,
                reason: format!("minimal embedding dimension is {min_dim}"),
            });
        }
        EmbeddingDim::Dim(_) => {}
    }
    let n = d.n();
    let size = n - 1;
    let mut coords = vec![0.0f64; n * dim];
    if size > 0 {
        let gram = gram_from_squared_distances(d, 0).expect("base 0 valid");
        let gram_f64: Vec<f64> = (0..size * size)
            .map(|idx| rat_to_f64(&gram.entries[idx]))
            .collect();
        if !gram_f64.iter().all(|v| v.is_finite()) {
            return Err(RealizabilityError::ValuesOutOfFloatRange);
        }
        let (values, vectors) = jacobi_eigen(size, gram_f64);
        let mut order: Vec<usize> = (0..size).collect();
        order.sort_by(|&i, &j| values[j].total_cmp(&values[i]));
        for (axis, &col) in order.iter().take(dim).enumerate() {
            let lambda = values[col].max(0.0);
            let root = lambda.sqrt();
            for i in 0..size {
                coords[(i + 1) * dim + axis] = vectors[i * size + col] * root;
            }
        }
    }
    let config = FloatConfig::new(n, dim, coords).expect("finite coordinates");
    let mut scale = 0.0f64;
    for i in 0..n {
        for j in (i + 1)..n {
            scale = scale.max(rat_to_f64(d.get(i, j)));
        }
    }
    let mut residual = 0.0f64;
    for i in 0..n {
        for j in (i + 1)..n {
            let recon = config.squared_distance(i, j);
            residual = residual.max((recon - rat_to_f64(d.get(i, j))).abs() / scale);
        }
    }
    if residual > 1e-9 {
        return Err(RealizabilityError::ResidualTooLarge { residual });
    }
    Ok(Realization {
        config,
        max_rel_residual: residual,
    })
}
