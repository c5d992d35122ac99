//! Edge-labelings of complete graphs and the bound-verification pipeline.
//!
//! A configuration determining a single triangle induces an edge-labeling of
//! `K_n` in which every vertex triple carries the triangle's label multiset.
//! This module enumerates all such labelings up to vertex relabeling (labels
//! keep their identity; only vertex permutations are quotiented), and feeds
//! the survivors through the exact realizability layer to decide how many
//! points each triangle type admits in a given dimension.

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;
use num_traits::Zero;
use thiserror::Error;

use crate::constructions;
use crate::geometry::{census, distance_matrix, SquaredDistanceMatrix, TriangleKind};
use crate::rat::Rat;
use crate::realizability::embedding_dimension;

#[derive(Debug, Error, PartialEq)]
pub enum CombinatoricsError {
    #[error("vertex count {0} out of range (3..=7 for multi-label alphabets)")]
    VertexCountOutOfRange(usize),
    #[error("labeling needs {expected} edge labels, got {got}")]
    BadLabelCount { expected: usize, got: usize },
    #[error("label {0} outside alphabet of size {1}")]
    LabelOutOfAlphabet(u8, usize),
    #[error("dimension {0} out of supported range 3..=10")]
    DimOutOfRange(usize),
    #[error("invalid value grid: {0}")]
    InvalidGrid(String),
}

/// The abstract triangle type whose label multiset every triple must carry.
///
/// The alphabet is `{x}` for equilateral, `{d1, d2}` for isosceles (with
/// `d1` the repeated side) and `{d1, d2, d3}` for scalene. Labels are
/// abstract symbols with fixed identity; swapping `d1` and `d2` changes the
/// geometry and is never quotiented.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TriangleType {
    kind: TriangleKind,
}

impl TriangleType {
    pub fn new(kind: TriangleKind) -> Self {
        Self { kind }
    }

    pub fn kind(&self) -> TriangleKind {
        self.kind
    }

    pub fn alphabet_size(&self) -> usize {
        match self.kind {
            TriangleKind::Equilateral => 1,
            TriangleKind::Isosceles => 2,
            TriangleKind::Scalene => 3,
        }
    }

    /// The required sorted label multiset of every triple.
    pub fn required_multiset(&self) -> [u8; 3] {
        match self.kind {
            TriangleKind::Equilateral => [0, 0, 0],
            TriangleKind::Isosceles => [0, 0, 1],
            TriangleKind::Scalene => [0, 1, 2],
        }
    }

    pub fn label_name(&self, label: u8) -> &'static str {
        match (self.kind, label) {
            (TriangleKind::Equilateral, 0) => "x",
            (_, 0) => "d1",
            (_, 1) => "d2",
            (_, 2) => "d3",
            _ => "?",
        }
    }

    /// Validates one grid assignment: positive values, one per label, with
    /// the distinctness the type's labels demand.
    pub fn validate_values(&self, values: &[Rat]) -> Result<(), CombinatoricsError> {
        if values.len() != self.alphabet_size() {
            return Err(CombinatoricsError::InvalidGrid(format!(
                "expected {} values, got {}",
                self.alphabet_size(),
                values.len()
            )));
        }
        if values.iter().any(|v| *v <= Rat::zero()) {
            return Err(CombinatoricsError::InvalidGrid(
                "values must be positive".into(),
            ));
        }
        for i in 0..values.len() {
            for j in (i + 1)..values.len() {
                if values[i] == values[j] {
                    return Err(CombinatoricsError::InvalidGrid(format!(
                        "labels {} and {} must take distinct values",
                        self.label_name(i as u8),
                        self.label_name(j as u8)
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Storage index of edge `(i, j)` with `i < j` in lexicographic order.
fn edge_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

/// An assignment of abstract labels to the `C(n,2)` edges of `K_n`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct EdgeLabeling {
    n: usize,
    labels: Vec<u8>, // indexed by edge_index
}

impl EdgeLabeling {
    pub fn new(n: usize, labels: Vec<u8>, alphabet_size: usize) -> Result<Self, CombinatoricsError> {
        let expected = n * (n - 1) / 2;
        if labels.len() != expected {
            return Err(CombinatoricsError::BadLabelCount {
                expected,
                got: labels.len(),
            });
        }
        if let Some(&bad) = labels.iter().find(|&&l| (l as usize) >= alphabet_size) {
            return Err(CombinatoricsError::LabelOutOfAlphabet(bad, alphabet_size));
        }
        Ok(Self { n, labels })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn label(&self, i: usize, j: usize) -> u8 {
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        self.labels[edge_index(self.n, i, j)]
    }

    pub fn labels(&self) -> &[u8] {
        &self.labels
    }

    /// Edge-list rendering `i-j:label`, vertices 0-indexed, edges in
    /// lexicographic order.
    pub fn edge_list(&self, ty: &TriangleType) -> String {
        let mut parts = Vec::with_capacity(self.labels.len());
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                parts.push(format!("{i}-{j}:{}", ty.label_name(self.label(i, j))));
            }
        }
        parts.join(" ")
    }
}

/// True iff every unordered vertex triple carries exactly the type's label
/// multiset. Strict: no triple is exempt.
pub fn triangle_constraint_holds(labeling: &EdgeLabeling, ty: &TriangleType) -> bool {
    let n = labeling.n;
    let required = ty.required_multiset();
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                let mut triple = [
                    labeling.label(i, j),
                    labeling.label(i, k),
                    labeling.label(j, k),
                ];
                triple.sort_unstable();
                if triple != required {
                    return false;
                }
            }
        }
    }
    true
}

/// Lexicographically minimal relabeling over all vertex permutations.
///
/// Constant labelings are fixed by every permutation and are returned as-is
/// for any `n`; otherwise the brute force over `n!` permutations requires
/// `n <= 7`.
pub fn canonical_form(labeling: &EdgeLabeling) -> EdgeLabeling {
    let n = labeling.n;
    if labeling.labels.iter().all_equal() {
        return labeling.clone();
    }
    assert!(n <= 7, "brute-force canonicalization requires n <= 7");
    let mut best: Option<Vec<u8>> = None;
    let mut candidate = vec![0u8; labeling.labels.len()];
    for perm in (0..n).permutations(n) {
        for i in 0..n {
            for j in (i + 1)..n {
                candidate[edge_index(n, i, j)] = labeling.label(perm[i], perm[j]);
            }
        }
        if best.as_ref().is_none_or(|b| candidate < *b) {
            best = Some(candidate.clone());
        }
    }
    EdgeLabeling {
        n,
        labels: best.expect("at least one permutation"),
    }
}

/// Canonical classes of labelings in which every triple realizes the type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationResult {
    pub count: usize,
    /// One canonical representative per class, sorted.
    pub representatives: Vec<EdgeLabeling>,
}

/// Exhaustively enumerates the edge-labelings of `K_n` whose every triple
/// carries the type's label multiset, deduplicated by canonical form.
///
/// The search assigns edges vertex by vertex and rejects a partial labeling
/// as soon as any completed triple violates the constraint, so the space
/// collapses long before the raw `k^(C(n,2))` bound. Vertex counts above 7
/// are accepted only for the single-letter equilateral alphabet, where the
/// sole candidate is the constant labeling.
pub fn enumerate_one_triangle_labelings(
    n: usize,
    ty: &TriangleType,
) -> Result<EnumerationResult, CombinatoricsError> {
    if n < 3 || (ty.alphabet_size() > 1 && n > 7) {
        return Err(CombinatoricsError::VertexCountOutOfRange(n));
    }
    let k = ty.alphabet_size() as u8;
    let required = ty.required_multiset();
    let edge_count = n * (n - 1) / 2;
    // assignment order: for each new vertex v, its edges (0,v), (1,v), ...
    let order: Vec<(usize, usize)> = (1..n)
        .flat_map(|v| (0..v).map(move |u| (u, v)))
        .collect();
    let mut labels = vec![0u8; edge_count];
    let mut canonical: BTreeSet<Vec<u8>> = BTreeSet::new();

    fn assign(
        pos: usize,
        order: &[(usize, usize)],
        labels: &mut Vec<u8>,
        n: usize,
        k: u8,
        required: &[u8; 3],
        canonical: &mut BTreeSet<Vec<u8>>,
    ) {
        if pos == order.len() {
            let complete = EdgeLabeling {
                n,
                labels: labels.clone(),
            };
            canonical.insert(canonical_form(&complete).labels);
            return;
        }
        let (u, v) = order[pos];
        let idx = edge_index(n, u, v);
        'labels: for label in 0..k {
            labels[idx] = label;
            // every triple {w, u, v} with w < u is now fully labeled
            for w in 0..u {
                let mut triple = [
                    labels[edge_index(n, w, u)],
                    labels[edge_index(n, w, v)],
                    label,
                ];
                triple.sort_unstable();
                if triple != *required {
                    continue 'labels;
                }
            }
            assign(pos + 1, order, labels, n, k, required, canonical);
        }
    }

    assign(0, &order, &mut labels, n, k, &required, &mut canonical);
    let representatives: Vec<EdgeLabeling> = canonical
        .into_iter()
        .map(|labels| EdgeLabeling { n, labels })
        .collect();
    Ok(EnumerationResult {
        count: representatives.len(),
        representatives,
    })
}

/// Instantiates a labeling with one squared-length value per label.
pub fn labeling_to_matrix(
    labeling: &EdgeLabeling,
    values: &[Rat],
) -> Result<SquaredDistanceMatrix, CombinatoricsError> {
    let n = labeling.n;
    let mut upper = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in (i + 1)..n {
            let label = labeling.label(i, j) as usize;
            let value = values.get(label).ok_or_else(|| {
                CombinatoricsError::InvalidGrid(format!("no value for label {label}"))
            })?;
            upper.push(value.clone());
        }
    }
    SquaredDistanceMatrix::from_upper_triangle(n, &upper)
        .map_err(|e| CombinatoricsError::InvalidGrid(e.to_string()))
}

/// Reads a labeling back off a matrix by grouping equal entries, labeling
/// value classes in first-occurrence order over the lexicographic edge list.
/// Returns the labeling together with the class values.
pub fn labeling_from_value_classes(d: &SquaredDistanceMatrix) -> (EdgeLabeling, Vec<Rat>) {
    let n = d.n();
    let mut values: Vec<Rat> = Vec::new();
    let mut labels = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in (i + 1)..n {
            let v = d.get(i, j);
            let label = match values.iter().position(|w| w == v) {
                Some(pos) => pos,
                None => {
                    values.push(v.clone());
                    values.len() - 1
                }
            };
            labels.push(label as u8);
        }
    }
    (EdgeLabeling { n, labels }, values)
}

/// True iff the matrix's value-class structure matches the given canonical
/// labeling under some bijection between value classes and type labels that
/// satisfies the triangle constraint.
pub fn matrix_matches_labeling(
    d: &SquaredDistanceMatrix,
    ty: &TriangleType,
    representative: &EdgeLabeling,
) -> bool {
    let (derived, values) = labeling_from_value_classes(d);
    if values.len() != ty.alphabet_size() || derived.n != representative.n {
        return false;
    }
    let target = canonical_form(representative).labels;
    let k = values.len();
    for relabel in (0..k as u8).permutations(k) {
        let relabeled = EdgeLabeling {
            n: derived.n,
            labels: derived.labels.iter().map(|&l| relabel[l as usize]).collect(),
        };
        if triangle_constraint_holds(&relabeled, ty)
            && canonical_form(&relabeled).labels == target
        {
            return true;
        }
    }
    false
}

/// The verdict of the bound-verification pipeline for one dimension and
/// triangle type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationRecord {
    pub dim: usize,
    pub kind: TriangleKind,
    /// The vertex count at which the pipeline tests for impossibility.
    pub upper_n: usize,
    /// Canonical labeling classes surviving the triangle constraint there.
    pub upper_survivors: usize,
    /// Whether any survivor embeds in `R^dim` for some grid assignment.
    pub upper_realizable: bool,
    /// Largest point count achieved, certified by a witness construction.
    pub max_points: usize,
    pub witnesses: Vec<&'static str>,
    pub witness_verified: bool,
}

impl fmt::Display for VerificationRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "d={} type={} max-points={} witness={}",
            self.dim,
            self.kind,
            self.max_points,
            self.witnesses.join("/")
        )
    }
}

fn witness_constructions(
    kind: TriangleKind,
    dim: usize,
) -> Vec<(&'static str, crate::geometry::PointConfig)> {
    use crate::rat::rat;
    match kind {
        TriangleKind::Equilateral => vec![(
            "regular-simplex",
            constructions::regular_simplex(dim).expect("dim >= 3"),
        )],
        TriangleKind::Isosceles => vec![
            (
                "iso-tet",
                constructions::isosceles_tetrahedron(&rat(2), &rat(1)).expect("valid"),
            ),
            (
                "square",
                constructions::rectangle(&rat(1), &rat(1)).expect("valid"),
            ),
        ],
        TriangleKind::Scalene => vec![
            (
                "opp-edge-tet",
                constructions::opposite_edge_tetrahedron(&rat(1), &rat(2), &rat(3))
                    .expect("valid"),
            ),
            (
                "rectangle",
                constructions::rectangle(&rat(3), &rat(4)).expect("valid"),
            ),
        ],
    }
}

/// Runs the full pipeline for one dimension and triangle type: enumerate
/// labelings one point above the conjectured maximum, test each survivor's
/// realizability in `R^dim` over the value grid, and certify the maximum
/// with verified witness constructions.
///
/// The combinatorial stage does not depend on the dimension: for the
/// non-equilateral types it leaves no labeling on five vertices, while for
/// the equilateral type the single labeling on `dim + 2` vertices forces a
/// Gram rank of `dim + 1` and dies on realizability instead.
pub fn verify_bound(
    dim: usize,
    ty: &TriangleType,
    value_grid: &[Vec<Rat>],
) -> Result<VerificationRecord, CombinatoricsError> {
    if !(3..=10).contains(&dim) {
        return Err(CombinatoricsError::DimOutOfRange(dim));
    }
    let equilateral = ty.kind() == TriangleKind::Equilateral;
    if !equilateral && value_grid.is_empty() {
        return Err(CombinatoricsError::InvalidGrid(
            "non-equilateral types need at least one value assignment".into(),
        ));
    }
    for assignment in value_grid {
        ty.validate_values(assignment)?;
    }
    // Equilateral realizability is value-independent by scaling, so a single
    // implicit assignment suffices.
    let eq_grid: Vec<Vec<Rat>> = vec![vec![crate::rat::rat(2)]];
    let grid: &[Vec<Rat>] = if equilateral { &eq_grid } else { value_grid };

    let upper_n = if equilateral { dim + 2 } else { 5 };
    let upper = enumerate_one_triangle_labelings(upper_n, ty)?;
    let mut upper_realizable = false;
    for labeling in &upper.representatives {
        for assignment in grid {
            let matrix = labeling_to_matrix(labeling, assignment)?;
            if embedding_dimension(&matrix).realizable_in(dim) {
                upper_realizable = true;
            }
        }
    }

    let max_points = if upper_realizable { upper_n } else { upper_n - 1 };
    let mut witness_verified = !upper_realizable;
    let mut witnesses = Vec::new();
    if !upper_realizable {
        // The maximum one below must actually be achieved: check that the
        // labeling classes at max_points admit a realizable assignment and
        // that the concrete witness constructions census to one class of
        // the right kind.
        let lower = enumerate_one_triangle_labelings(max_points, ty)?;
        if lower.count == 0 {
            witness_verified = false;
        }
        for labeling in &lower.representatives {
            let realizable = grid.iter().any(|assignment| {
                labeling_to_matrix(labeling, assignment)
                    .map(|m| embedding_dimension(&m).realizable_in(dim))
                    .unwrap_or(false)
            });
            if !realizable {
                witness_verified = false;
            }
        }
        for (name, cfg) in witness_constructions(ty.kind(), dim) {
            if cfg.n_points() > max_points {
                continue;
            }
            let report = census(&cfg).expect("witness configurations have >= 3 points");
            let ok = report.class_count() == 1
                && report.degenerate_triples == 0
                && report.triangle_classes[0].0.kind() == ty.kind()
                && embedding_dimension(&distance_matrix(&cfg)).realizable_in(dim);
            if ok {
                witnesses.push(name);
            } else {
                witness_verified = false;
            }
        }
        if witnesses.is_empty() {
            witness_verified = false;
        }
    }
    Ok(VerificationRecord {
        dim,
        kind: ty.kind(),
        upper_n,
        upper_survivors: upper.count,
        upper_realizable,
        max_points,
        witnesses,
        witness_verified,
    })
}
