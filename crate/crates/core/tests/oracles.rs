//! Values computed once by an independent implementation (LP feasibility
//! with scipy, networkx matchings, a separate group enumerator) and frozen
//! here.

use fracext_core::classification::{verify_theorem, ScanConfig, ScanMode};
use fracext_core::extendability::is_fractional_t_extendable;
use fracext_core::graph::{cayley_graph, Graph};
use fracext_core::groups::{connection_set_orbit_reps, enumerate_abelian_groups, AbelianGroup, DedupOptions};
use fracext_core::matching::{has_fpm, has_perfect_matching};

fn graph_from_bits(n: usize, bits: u32) -> Graph {
    let mut edges = Vec::new();
    let mut k = 0;
    for u in 0..n {
        for v in u + 1..n {
            if bits >> k & 1 == 1 {
                edges.push((u, v));
            }
            k += 1;
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

/// Labeled graphs on `n` vertices with a fractional perfect matching and with
/// a perfect matching, `n = 1..=6`.
const LABELED_FPM: [u32; 6] = [0, 1, 1, 37, 383, 24833];
const LABELED_PM: [u32; 6] = [0, 1, 0, 37, 0, 24823];

#[test]
fn labeled_graph_counts() {
    for n in 1..=6usize {
        let pairs = n * (n - 1) / 2;
        let (mut fpm, mut pm) = (0, 0);
        for bits in 0..1u32 << pairs {
            let g = graph_from_bits(n, bits);
            fpm += has_fpm(&g) as u32;
            pm += has_perfect_matching(&g) as u32;
        }
        assert_eq!((fpm, pm), (LABELED_FPM[n - 1], LABELED_PM[n - 1]), "n = {n}");
    }
}

/// Generating inverse-closed identity-free sets over all Abelian groups of
/// order `3..=16`.
const GENERATING_SETS: [u64; 14] = [1, 6, 3, 5, 7, 124, 25, 27, 31, 158, 63, 119, 123, 34152];

#[test]
fn generating_set_counts() {
    for (i, &expected) in GENERATING_SETS.iter().enumerate() {
        let n = i as u32 + 3;
        let plain: u64 = enumerate_abelian_groups(n)
            .iter()
            .map(|g| {
                connection_set_orbit_reps(g, |s| g.generates(s), &DedupOptions::disabled())
                    .unwrap()
                    .reps
                    .len() as u64
            })
            .sum();
        assert_eq!(plain, expected, "order {n}");
    }
    let report = verify_theorem(&ScanConfig::new(ScanMode::F1e, 3, 16)).unwrap();
    let covered: Vec<u64> = report.per_order.iter().map(|r| r.sets_covered).collect();
    assert_eq!(covered, GENERATING_SETS);
}

fn non_f2e(group: &AbelianGroup) -> (usize, Vec<Vec<u32>>) {
    let reps = connection_set_orbit_reps(group, |s| group.generates(s), &DedupOptions::disabled()).unwrap();
    let mut bad: Vec<Vec<u32>> = reps
        .reps
        .iter()
        .filter(|r| {
            let g = cayley_graph(group, &r.set).unwrap();
            !is_fractional_t_extendable(&g, 2).unwrap().verdict
        })
        .map(|r| {
            let mut h = r.set.half_residues(group);
            h.sort();
            h
        })
        .collect();
    bad.sort();
    (reps.reps.len(), bad)
}

#[test]
fn non_extendable_circulants_by_lp() {
    let expected: [(u32, usize, &[&[u32]]); 7] = [
        (5, 3, &[&[1], &[1, 2], &[2]]),
        (6, 5, &[&[1], &[1, 2], &[2, 3]]),
        (7, 7, &[&[1], &[1, 2], &[1, 3], &[2], &[2, 3], &[3]]),
        (8, 12, &[&[1], &[1, 2], &[1, 4], &[2, 3], &[3], &[3, 4]]),
        (
            9,
            14,
            &[&[1], &[1, 2], &[1, 2, 4], &[1, 3], &[1, 4], &[2], &[2, 3], &[2, 4], &[3, 4], &[4]],
        ),
        (10, 27, &[&[1], &[1, 2], &[1, 4], &[2, 3], &[2, 5], &[3], &[3, 4], &[4, 5]]),
        (
            11,
            31,
            &[
                &[1], &[1, 2], &[1, 3], &[1, 4], &[1, 5], &[2], &[2, 3], &[2, 4], &[2, 5], &[3], &[3, 4], &[3, 5],
                &[4], &[4, 5], &[5],
            ],
        ),
    ];
    for (n, count, bad) in expected {
        let (total, found) = non_f2e(&AbelianGroup::cyclic(n).unwrap());
        assert_eq!(total, count, "Z{n}");
        let bad: Vec<Vec<u32>> = bad.iter().map(|s| s.to_vec()).collect();
        assert_eq!(found, bad, "Z{n}");
    }
}

#[test]
fn non_extendable_counts_in_non_cyclic_groups() {
    for (factors, total, bad) in [(vec![2, 4], 20, 0), (vec![2, 2, 2], 92, 0), (vec![3, 3], 11, 10)] {
        let (t, found) = non_f2e(&AbelianGroup::new(factors.clone()).unwrap());
        assert_eq!((t, found.len()), (total, bad), "{factors:?}");
    }
}
