//! Floating-point corroboration: the one-triangle defect and its minimizer.
//!
//! The defect of a configuration is the variance of the normalized sorted
//! squared-side vectors over all sufficiently non-degenerate triples, plus a
//! smooth penalty for triples below the degeneracy margin. It is zero exactly
//! on configurations whose non-degenerate triples all share one signature,
//! and it is invariant under rigid motions and scaling, so minimizing it
//! probes how close `n` points in `R^d` can come to determining a single
//! triangle.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use rayon::prelude::*;
use thiserror::Error;

use crate::float::{epsilon_census, FloatConfig, FloatError};
use crate::geometry::CensusReport;

/// Relative side gap under which the sorted-side map counts as tied.
const TIE_REL_TOL: f64 = 1e-7;
/// Relative distance from the degeneracy margin treated as the boundary.
const MARGIN_REL_TOL: f64 = 1e-7;
/// Margin used when no caller-supplied value applies.
pub const DEFAULT_DEGENERACY_MARGIN: f64 = 1e-4;

#[derive(Debug, Error, PartialEq)]
pub enum SearchError {
    #[error("invalid search configuration: {0}")]
    InvalidConfig(String),
    #[error("defect needs at least 3 points, got {0}")]
    TooFewPoints(usize),
    #[error("squared distances overflow the double range")]
    CoordinatesOutOfRange,
    #[error("every triple is below the degeneracy margin")]
    AllTriplesDegenerate,
    #[error("sorted-side tie in triple ({0}, {1}, {2}); perturb and retry")]
    TieEncountered(usize, usize, usize),
    #[error("triple ({0}, {1}, {2}) sits on the degeneracy margin; perturb and retry")]
    MarginBoundary(usize, usize, usize),
}

/// Parameters of the random-restart descent.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchConfig {
    pub n: usize,
    pub dim: usize,
    pub restarts: usize,
    pub max_iters: usize,
    pub seed: u64,
    /// Initial backtracking step length.
    pub step_init: f64,
    /// Multiplicative backtracking factor in (0, 1).
    pub shrink: f64,
    /// Minimum normalized area term `16A^2 / s^2` for a triple to count as
    /// a triangle; must lie in (0, 1).
    pub degeneracy_margin: f64,
}

impl SearchConfig {
    pub fn new(n: usize, dim: usize, restarts: usize, seed: u64) -> Self {
        Self {
            n,
            dim,
            restarts,
            max_iters: 2000,
            seed,
            step_init: 0.25,
            shrink: 0.5,
            degeneracy_margin: DEFAULT_DEGENERACY_MARGIN,
        }
    }

    fn validate(&self) -> Result<(), SearchError> {
        let fail = |msg: String| Err(SearchError::InvalidConfig(msg));
        if self.n < 3 {
            return fail(format!("n must be >= 3, got {}", self.n));
        }
        if self.dim < 1 {
            return fail("dim must be >= 1".into());
        }
        if self.restarts < 1 || self.max_iters < 1 {
            return fail("restarts and max_iters must be >= 1".into());
        }
        if !self.step_init.is_finite() || self.step_init <= 0.0 {
            return fail(format!("step_init must be positive, got {}", self.step_init));
        }
        if !(self.shrink > 0.0 && self.shrink < 1.0) {
            return fail(format!("shrink must lie in (0,1), got {}", self.shrink));
        }
        if !(self.degeneracy_margin > 0.0 && self.degeneracy_margin < 1.0) {
            return fail(format!(
                "degeneracy_margin must lie in (0,1), got {}",
                self.degeneracy_margin
            ));
        }
        Ok(())
    }
}

/// Result of one restart and the merged search outcome.
#[derive(Debug, Clone, PartialEq)]
pub struct RestartRecord {
    pub seed: u64,
    pub final_defect: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DefectResult {
    pub best_defect: f64,
    pub best_config: FloatConfig,
    pub per_restart: Vec<RestartRecord>,
    pub iterations_used: u64,
}

fn edge_slot(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

struct Edges {
    n: usize,
    d: Vec<f64>,
    /// mean squared pairwise distance
    s: f64,
}

fn compute_edges(cfg: &FloatConfig) -> Edges {
    let n = cfg.n_points();
    let mut d = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in (i + 1)..n {
            d.push(cfg.squared_distance(i, j));
        }
    }
    let s = d.iter().sum::<f64>() / d.len() as f64;
    Edges { n, d, s }
}

fn area_term(a: f64, b: f64, c: f64) -> f64 {
    2.0 * (a * b + b * c + c * a) - a * a - b * b - c * c
}

/// Per-triple data shared between the defect and its gradient.
struct Triple {
    verts: (usize, usize, usize),
    /// (squared side, edge slot) sorted ascending by side
    sorted: [(f64, usize); 3],
    /// normalized area term `16A^2 / s^2`
    g: f64,
    /// raw area term `16A^2`
    area: f64,
    active: bool,
}

fn collect_triples(edges: &Edges, margin: f64) -> Vec<Triple> {
    let n = edges.n;
    let s = edges.s;
    let mut triples = Vec::with_capacity(n * (n - 1) * (n - 2) / 6);
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                let slots = [
                    edge_slot(n, i, j),
                    edge_slot(n, i, k),
                    edge_slot(n, j, k),
                ];
                let mut sorted = slots.map(|e| (edges.d[e], e));
                sorted.sort_by(|x, y| x.0.total_cmp(&y.0));
                let area = area_term(sorted[0].0, sorted[1].0, sorted[2].0);
                let g = area / (s * s);
                triples.push(Triple {
                    verts: (i, j, k),
                    sorted,
                    g,
                    area,
                    active: g > margin,
                });
            }
        }
    }
    triples
}

/// Scale-invariant one-triangle defect.
///
/// With `s` the mean squared pairwise distance, each triple whose normalized
/// area term exceeds the margin contributes its sorted squared-side vector
/// divided by `s`; the defect is the mean squared deviation of these vectors
/// from their mean, plus `(margin - 16A^2/s^2)^2` for each triple under the
/// margin.
pub fn triangle_defect(cfg: &FloatConfig, margin: f64) -> Result<f64, SearchError> {
    let (value, _, _) = defect_parts(cfg, margin)?;
    Ok(value)
}

fn defect_parts(
    cfg: &FloatConfig,
    margin: f64,
) -> Result<(f64, Edges, Vec<Triple>), SearchError> {
    if cfg.n_points() < 3 {
        return Err(SearchError::TooFewPoints(cfg.n_points()));
    }
    let edges = compute_edges(cfg);
    if !edges.s.is_finite() {
        return Err(SearchError::CoordinatesOutOfRange);
    }
    if edges.s <= 0.0 {
        return Err(SearchError::AllTriplesDegenerate);
    }
    let triples = collect_triples(&edges, margin);
    let m = triples.iter().filter(|t| t.active).count();
    if m == 0 {
        return Err(SearchError::AllTriplesDegenerate);
    }
    let s = edges.s;
    let mean = active_signature_mean(&triples, s, m);
    let mut variance = 0.0;
    let mut penalty = 0.0;
    for t in &triples {
        if t.active {
            for ((side, _), m_c) in t.sorted.iter().zip(&mean) {
                let dev = side / s - m_c;
                variance += dev * dev;
            }
        } else {
            let short = margin - t.g;
            penalty += short * short;
        }
    }
    Ok((variance / m as f64 + penalty, edges, triples))
}

/// Component-wise mean of the normalized sorted-side vectors over the
/// `m` active triples.
fn active_signature_mean(triples: &[Triple], s: f64, m: usize) -> [f64; 3] {
    let mut mean = [0.0f64; 3];
    for t in triples.iter().filter(|t| t.active) {
        for (m_c, (side, _)) in mean.iter_mut().zip(&t.sorted) {
            *m_c += side / s;
        }
    }
    for m_c in &mut mean {
        *m_c /= m as f64;
    }
    mean
}

/// Analytic gradient of [`triangle_defect`] with respect to all coordinates.
///
/// The sorted-side map is piecewise linear, so the gradient exists away from
/// within-triple side ties and away from the margin boundary; at those points
/// the ambiguity is reported unless the competing assignments agree (as they
/// do at exact minima, where every deviation coefficient vanishes).
pub fn defect_gradient(cfg: &FloatConfig, margin: f64) -> Result<Vec<f64>, SearchError> {
    let (_, edges, triples) = defect_parts(cfg, margin)?;
    let n = edges.n;
    let s = edges.s;
    let m = triples.iter().filter(|t| t.active).count();
    let edge_count = edges.d.len();

    for t in &triples {
        if (t.g - margin).abs() <= MARGIN_REL_TOL * margin {
            return Err(SearchError::MarginBoundary(t.verts.0, t.verts.1, t.verts.2));
        }
    }

    let mean = active_signature_mean(&triples, s, m);

    // d(defect)/d(edge value) at fixed s, plus the total d(defect)/ds.
    let mut d_edge = vec![0.0f64; edge_count];
    let mut d_s = 0.0f64;
    for t in &triples {
        if t.active {
            let mut coef = [0.0f64; 3];
            for ((coef_c, (side, _)), m_c) in coef.iter_mut().zip(&t.sorted).zip(&mean) {
                *coef_c = 2.0 / m as f64 * (side / s - m_c);
            }
            // a tie only matters when the two positions carry different
            // variance coefficients
            for c in 0..2 {
                let gap = t.sorted[c + 1].0 - t.sorted[c].0;
                if gap < TIE_REL_TOL * s && (coef[c] - coef[c + 1]).abs() > 1e-12 {
                    return Err(SearchError::TieEncountered(
                        t.verts.0, t.verts.1, t.verts.2,
                    ));
                }
            }
            for (coef_c, (side, slot)) in coef.iter().zip(&t.sorted) {
                d_edge[*slot] += coef_c / s;
                d_s += coef_c * (-side / s / s);
            }
        } else {
            // penalty (margin - A/s^2)^2
            let short = margin - t.g;
            let d_pen_d_area = -2.0 * short / (s * s);
            let (a, b, c) = (t.sorted[0].0, t.sorted[1].0, t.sorted[2].0);
            let partials = [
                2.0 * (b + c - a),
                2.0 * (a + c - b),
                2.0 * (a + b - c),
            ];
            for (partial, (_, slot)) in partials.iter().zip(&t.sorted) {
                d_edge[*slot] += d_pen_d_area * partial;
            }
            d_s += 4.0 * short * t.area / (s * s * s);
        }
    }
    // every edge feeds the mean s with weight 1 / edge_count
    let s_share = d_s / edge_count as f64;
    for v in &mut d_edge {
        *v += s_share;
    }

    // chain through D_ij = |x_i - x_j|^2
    let dim = cfg.dim();
    let mut grad = vec![0.0f64; n * dim];
    for i in 0..n {
        for j in (i + 1)..n {
            let w = d_edge[edge_slot(n, i, j)];
            for t in 0..dim {
                let diff = cfg.point(i)[t] - cfg.point(j)[t];
                grad[i * dim + t] += w * 2.0 * diff;
                grad[j * dim + t] -= w * 2.0 * diff;
            }
        }
    }
    Ok(grad)
}

fn unit_interval(rng: &mut ChaCha8Rng) -> f64 {
    // 53 uniform bits -> [0, 1)
    (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64
}

fn symmetric_unit(rng: &mut ChaCha8Rng) -> f64 {
    2.0 * unit_interval(rng) - 1.0
}

struct RestartOutcome {
    record: RestartRecord,
    config: FloatConfig,
    iterations: u64,
}

fn run_restart(cfg: &SearchConfig, restart: usize) -> RestartOutcome {
    let restart_seed = cfg.seed.wrapping_add(restart as u64);
    let mut rng = ChaCha8Rng::seed_from_u64(restart_seed);
    let margin = cfg.degeneracy_margin;
    let vars = cfg.n * cfg.dim;

    let draw = |rng: &mut ChaCha8Rng| -> FloatConfig {
        let coords: Vec<f64> = (0..vars).map(|_| symmetric_unit(rng)).collect();
        FloatConfig::new(cfg.n, cfg.dim, coords).expect("finite draw")
    };

    let mut x = draw(&mut rng);
    let mut f = triangle_defect(&x, margin);
    let mut redraws = 0;
    while f.is_err() && redraws < 32 {
        x = draw(&mut rng);
        f = triangle_defect(&x, margin);
        redraws += 1;
    }
    let Ok(mut f) = f else {
        // a margin close to 1 can make every random draw degenerate
        return RestartOutcome {
            record: RestartRecord {
                seed: restart_seed,
                final_defect: f64::INFINITY,
            },
            config: x,
            iterations: 0,
        };
    };

    let mut step = cfg.step_init;
    let mut iterations = 0u64;
    let mut consecutive_perturbs = 0u32;
    for _ in 0..cfg.max_iters {
        iterations += 1;
        if f <= 1e-18 {
            break;
        }
        let grad = match defect_gradient(&x, margin) {
            Ok(g) => {
                consecutive_perturbs = 0;
                g
            }
            Err(SearchError::TieEncountered(..)) | Err(SearchError::MarginBoundary(..)) => {
                if consecutive_perturbs >= 16 {
                    break;
                }
                consecutive_perturbs += 1;
                let scale = 1e-6 * compute_edges(&x).s.sqrt().max(1e-12);
                let coords: Vec<f64> = x
                    .coords()
                    .iter()
                    .map(|&c| c + scale * symmetric_unit(&mut rng))
                    .collect();
                let candidate = FloatConfig::new(cfg.n, cfg.dim, coords).expect("finite");
                if let Ok(fc) = triangle_defect(&candidate, margin) {
                    x = candidate;
                    f = fc;
                }
                continue;
            }
            Err(_) => break,
        };
        let gnorm2: f64 = grad.iter().map(|g| g * g).sum();
        if gnorm2 <= 1e-32 {
            break;
        }
        let mut t = step;
        let mut accepted = false;
        while t >= 1e-20 {
            let coords: Vec<f64> = x
                .coords()
                .iter()
                .zip(&grad)
                .map(|(c, g)| c - t * g)
                .collect();
            let candidate = FloatConfig::new(cfg.n, cfg.dim, coords).expect("finite");
            let fc = triangle_defect(&candidate, margin).unwrap_or(f64::INFINITY);
            if fc <= f - 1e-4 * t * gnorm2 {
                x = candidate;
                f = fc;
                step = (t * 2.0).min(1e6);
                accepted = true;
                break;
            }
            t *= cfg.shrink;
        }
        if !accepted {
            break;
        }
    }
    RestartOutcome {
        record: RestartRecord {
            seed: restart_seed,
            final_defect: f,
        },
        config: x,
        iterations,
    }
}

/// Random-restart gradient descent on the defect.
///
/// Restart `i` draws its initial configuration (coordinates uniform in
/// `[-1, 1]`) and any retry perturbations from a generator seeded with
/// `seed + i`, so the result is a pure function of the configuration no
/// matter how the restarts are scheduled; they run in parallel and are
/// merged in restart order.
pub fn minimize_defect(cfg: &SearchConfig) -> Result<DefectResult, SearchError> {
    cfg.validate()?;
    let outcomes: Vec<RestartOutcome> = (0..cfg.restarts)
        .into_par_iter()
        .map(|r| run_restart(cfg, r))
        .collect();
    let mut best_idx = 0;
    let mut iterations_used = 0u64;
    for (idx, outcome) in outcomes.iter().enumerate() {
        iterations_used += outcome.iterations;
        if outcome.record.final_defect < outcomes[best_idx].record.final_defect {
            best_idx = idx;
        }
    }
    let best = &outcomes[best_idx];
    Ok(DefectResult {
        best_defect: best.record.final_defect,
        best_config: best.config.clone(),
        per_restart: outcomes.iter().map(|o| o.record.clone()).collect(),
        iterations_used,
    })
}

/// Tolerance census of a floating configuration together with its defect at
/// the default margin, for cross-checking the class count.
#[derive(Debug, Clone, PartialEq)]
pub struct SnapReport {
    pub census: CensusReport,
    /// Defect at [`DEFAULT_DEGENERACY_MARGIN`]; absent when every triple is
    /// degenerate at that margin.
    pub defect: Option<f64>,
}

/// Delegates to the tolerance census and attaches the defect value.
pub fn snap_and_census(cfg: &FloatConfig, eps: f64) -> Result<SnapReport, FloatError> {
    let census = epsilon_census(cfg, eps)?;
    let defect = triangle_defect(cfg, DEFAULT_DEGENERACY_MARGIN).ok();
    Ok(SnapReport { census, defect })
}
