//! Invariant tests for the exact census, labeling and construction layers.

use itertools::Itertools;
use proptest::prelude::*;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use tricensus::combinatorics::{
    canonical_form, enumerate_one_triangle_labelings, labeling_to_matrix, EdgeLabeling,
    TriangleType,
};
use tricensus::constructions::{
    isosceles_tetrahedron, opposite_edge_tetrahedron, rectangle, regular_simplex,
};
use tricensus::float::epsilon_census;
use tricensus::geometry::{
    census, squared_circumradius, CensusReport, Point, PointConfig,
    TriangleKind, TriangleSignature,
};
use tricensus::rat::{rat, ratio, Rat};
use tricensus::realizability::realize_coordinates;

fn small_rat() -> impl Strategy<Value = Rat> {
    (-60i64..=60, 1i64..=8).prop_map(|(n, d)| ratio(n, d))
}

fn config_strategy(max_n: usize, max_dim: usize) -> impl Strategy<Value = PointConfig> {
    (3..=max_n, 1..=max_dim).prop_flat_map(|(n, dim)| {
        proptest::collection::vec(proptest::collection::vec(small_rat(), dim), n)
            .prop_filter_map("points must be distinct", |rows| {
                let points: Vec<Point> = rows
                    .into_iter()
                    .map(|r| Point::new(r).expect("nonempty"))
                    .collect();
                PointConfig::new(points).ok()
            })
    })
}

fn binom3(n: usize) -> usize {
    n * (n - 1) * (n - 2) / 6
}

fn total_triples(report: &CensusReport) -> usize {
    report.triangle_classes.iter().map(|(_, m)| m).sum::<usize>() + report.degenerate_triples
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn census_count_conservation(cfg in config_strategy(6, 4)) {
        let report = census(&cfg).unwrap();
        prop_assert_eq!(total_triples(&report), binom3(cfg.n_points()));
    }

    #[test]
    fn census_signatures_are_sorted(cfg in config_strategy(6, 3)) {
        let report = census(&cfg).unwrap();
        for (sig, _) in &report.triangle_classes {
            let (a, b, c) = sig.sides();
            prop_assert!(a <= b && b <= c);
        }
    }

    #[test]
    fn census_is_isometry_invariant(
        cfg in config_strategy(5, 3),
        shift in proptest::collection::vec(small_rat(), 3),
        perm_seed in 0usize..6,
        flip_mask in 0usize..8,
    ) {
        let dim = cfg.ambient_dim();
        let axes: Vec<usize> = (0..dim).collect();
        let perms: Vec<Vec<usize>> = axes.iter().copied().permutations(dim).collect();
        let perm = &perms[perm_seed % perms.len()];
        let transformed: Vec<Point> = cfg
            .points()
            .iter()
            .map(|p| {
                let coords: Vec<Rat> = (0..dim)
                    .map(|axis| {
                        let source = &p.coords()[perm[axis]];
                        let flipped = if flip_mask >> axis & 1 == 1 {
                            -source.clone()
                        } else {
                            source.clone()
                        };
                        flipped + &shift[axis % shift.len()]
                    })
                    .collect();
                Point::new(coords).unwrap()
            })
            .collect();
        let moved = PointConfig::new(transformed).unwrap();
        prop_assert_eq!(census(&cfg).unwrap(), census(&moved).unwrap());
    }

    #[test]
    fn census_is_scaling_covariant(
        cfg in config_strategy(5, 3),
        num in 1i64..=40,
        den in 1i64..=6,
    ) {
        let factor = ratio(num, den);
        let sq = &factor * &factor;
        let scaled: Vec<Point> = cfg
            .points()
            .iter()
            .map(|p| Point::new(p.coords().iter().map(|c| c * &factor).collect()).unwrap())
            .collect();
        let scaled_report = census(&PointConfig::new(scaled).unwrap()).unwrap();
        let report = census(&cfg).unwrap();

        prop_assert_eq!(scaled_report.degenerate_triples, report.degenerate_triples);
        prop_assert_eq!(scaled_report.n_points, report.n_points);
        let mapped: Vec<Rat> = report
            .distinct_squared_distances
            .iter()
            .map(|v| v * &sq)
            .collect();
        prop_assert_eq!(scaled_report.distinct_squared_distances, mapped);
        prop_assert_eq!(scaled_report.triangle_classes.len(), report.triangle_classes.len());
        for ((s_sig, s_mult), (sig, mult)) in
            scaled_report.triangle_classes.iter().zip(&report.triangle_classes)
        {
            prop_assert_eq!(s_mult, mult);
            let (a, b, c) = sig.sides();
            let expected =
                TriangleSignature::new(a * &sq, b * &sq, c * &sq).unwrap();
            prop_assert_eq!(s_sig, &expected);
        }
    }
}

/// Two point triples are congruent exactly when some vertex correspondence
/// preserves all three pairwise distances; this brute-force check is the
/// independent oracle for signature equality.
fn congruent_by_correspondence(d: &[[i64; 5]; 5], t1: [usize; 3], t2: [usize; 3]) -> bool {
    let perms = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    perms.iter().any(|p| {
        d[t1[0]][t1[1]] == d[t2[p[0]]][t2[p[1]]]
            && d[t1[0]][t1[2]] == d[t2[p[0]]][t2[p[2]]]
            && d[t1[1]][t1[2]] == d[t2[p[1]]][t2[p[2]]]
    })
}

/// Exhaustive sweep over all configurations of 3 to 5 points with integer
/// coordinates in {-2..2}^2: equal signatures must coincide with the
/// existence of an explicit distance-preserving correspondence.
#[test]
fn signature_equality_matches_explicit_isometry_on_grid_sweep() {
    let grid: Vec<(i64, i64)> = (-2..=2)
        .flat_map(|x| (-2..=2).map(move |y| (x, y)))
        .collect();
    let sqdist = |a: (i64, i64), b: (i64, i64)| -> i64 {
        let dx = a.0 - b.0;
        let dy = a.1 - b.1;
        dx * dx + dy * dy
    };
    let mut pairs_checked = 0u64;
    for size in 3..=5usize {
        for combo in (0..grid.len()).combinations(size) {
            let mut d = [[0i64; 5]; 5];
            for i in 0..size {
                for j in 0..size {
                    d[i][j] = sqdist(grid[combo[i]], grid[combo[j]]);
                }
            }
            let triples: Vec<[usize; 3]> = (0..size).combinations(3).map(|t| [t[0], t[1], t[2]]).collect();
            let signatures: Vec<Option<TriangleSignature>> = triples
                .iter()
                .map(|t| {
                    TriangleSignature::new(
                        rat(d[t[0]][t[1]]),
                        rat(d[t[0]][t[2]]),
                        rat(d[t[1]][t[2]]),
                    )
                    .ok()
                })
                .collect();
            for i in 0..triples.len() {
                for j in (i + 1)..triples.len() {
                    let (Some(si), Some(sj)) = (&signatures[i], &signatures[j]) else {
                        continue;
                    };
                    let same_signature = si == sj;
                    let congruent = congruent_by_correspondence(&d, triples[i], triples[j]);
                    assert_eq!(
                        same_signature, congruent,
                        "triples {:?} and {:?} of {:?}",
                        triples[i], triples[j], combo
                    );
                    pairs_checked += 1;
                }
            }
        }
    }
    assert!(pairs_checked > 2_000_000, "sweep too small: {pairs_checked}");
}

#[test]
fn circumradius_of_equilateral_is_a_third_of_the_squared_side() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..100 {
        let num = rng.next_u64() % 10_000 + 1;
        let den = rng.next_u64() % 100 + 1;
        let a = ratio(num as i64, den as i64);
        let sig = TriangleSignature::new(a.clone(), a.clone(), a.clone()).unwrap();
        assert_eq!(squared_circumradius(&sig), a / rat(3));
    }
}

#[test]
fn canonical_form_is_stable_under_random_relabeling() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..50 {
        let n = 4 + (rng.next_u64() % 3) as usize; // 4..=6
        let alphabet = 2 + (rng.next_u64() % 2) as usize; // 2..=3
        let edge_count = n * (n - 1) / 2;
        let labels: Vec<u8> = (0..edge_count)
            .map(|_| (rng.next_u64() % alphabet as u64) as u8)
            .collect();
        let labeling = EdgeLabeling::new(n, labels, alphabet).unwrap();

        // random vertex permutation (Fisher-Yates)
        let mut perm: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            let j = (rng.next_u64() % (i as u64 + 1)) as usize;
            perm.swap(i, j);
        }
        let mut permuted = vec![0u8; edge_count];
        let mut idx = 0;
        for i in 0..n {
            for j in (i + 1)..n {
                permuted[idx] = labeling.label(perm[i], perm[j]);
                idx += 1;
            }
        }
        let permuted = EdgeLabeling::new(n, permuted, alphabet).unwrap();
        assert_eq!(canonical_form(&labeling), canonical_form(&permuted));
    }
}

#[test]
fn realized_representatives_census_to_one_class() {
    let cases = [
        (TriangleKind::Isosceles, vec![rat(3), rat(4)]),
        (TriangleKind::Scalene, vec![rat(5), rat(10), rat(13)]),
    ];
    for (kind, values) in cases {
        let ty = TriangleType::new(kind);
        let result = enumerate_one_triangle_labelings(4, &ty).unwrap();
        assert_eq!(result.count, 1);
        let matrix = labeling_to_matrix(&result.representatives[0], &values).unwrap();
        let realization = realize_coordinates(&matrix, 3).unwrap();
        let report = epsilon_census(&realization.config, 1e-9).unwrap();
        assert_eq!(report.class_count(), 1, "{kind}");
        assert_eq!(report.degenerate_triples, 0);
    }
}

fn draw_rat(rng: &mut ChaCha8Rng, num_range: u64, den_range: u64) -> Rat {
    let num = rng.next_u64() % num_range + 1;
    let den = rng.next_u64() % den_range + 1;
    ratio(num as i64, den as i64)
}

#[test]
fn constructions_always_census_to_one_class() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..200 {
        // simplex
        let d = (rng.next_u64() % 8 + 1) as usize;
        let report = census(&regular_simplex(d.max(2)).unwrap()).unwrap();
        assert_eq!(report.class_count(), 1);
        assert_eq!(report.degenerate_triples, 0);
        assert_eq!(report.distinct_distance_count(), 1);

        // rectangle
        let a = draw_rat(&mut rng, 40, 6);
        let mut b = draw_rat(&mut rng, 40, 6);
        if b == a {
            b += rat(1);
        }
        let report = census(&rectangle(&a, &b).unwrap()).unwrap();
        assert_eq!(report.class_count(), 1);
        assert_eq!(report.degenerate_triples, 0);
        assert_eq!(report.distinct_distance_count(), 3);

        // isosceles tetrahedron with h > 0
        let d2 = draw_rat(&mut rng, 40, 6);
        let h = draw_rat(&mut rng, 40, 6);
        let report = census(&isosceles_tetrahedron(&d2, &h).unwrap()).unwrap();
        assert_eq!(report.class_count(), 1);
        assert_eq!(report.degenerate_triples, 0);
        assert_eq!(report.distinct_distance_count(), 2);
        assert_eq!(report.triangle_classes[0].0.kind(), TriangleKind::Isosceles);

        // opposite-edge tetrahedron
        let p = draw_rat(&mut rng, 40, 6);
        let mut q = draw_rat(&mut rng, 40, 6);
        if q == p {
            q += rat(1);
        }
        let mut r = draw_rat(&mut rng, 40, 6);
        while r == p || r == q {
            r += rat(1);
        }
        let cfg = opposite_edge_tetrahedron(&p, &q, &r).unwrap();
        let report = census(&cfg).unwrap();
        assert_eq!(report.class_count(), 1);
        assert_eq!(report.degenerate_triples, 0);
        assert_eq!(report.distinct_distance_count(), 3);
        assert_eq!(report.triangle_classes[0].0.kind(), TriangleKind::Scalene);

        // acuteness: every face signature satisfies the strict inequality
        let (a_sq, b_sq, c_sq) = report.triangle_classes[0].0.sides();
        assert!(a_sq + b_sq > c_sq.clone());
    }
}

#[test]
fn square_census_has_two_distances() {
    let report = census(&rectangle(&rat(1), &rat(1)).unwrap()).unwrap();
    assert_eq!(report.distinct_distance_count(), 2);
    assert_eq!(report.class_count(), 1);
}
