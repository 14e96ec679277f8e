//! Sweeps over small Cayley graphs and the family lists.

use fracext_core::classification::{
    construct_family, members_in, predict, recognize, FamilyList, FamilyMember, Recognition,
};
use fracext_core::extendability::{check, Counterexample, ExtConfig, Mode, Symmetry};
use fracext_core::graph::{are_isomorphic, cayley_graph, circulant, multiplier_isomorphism, Graph, IsoConfig};
use fracext_core::groups::{connection_set_orbit_reps, enumerate_abelian_groups, AbelianGroup, ConnectionSet, DedupOptions};
use fracext_core::matching::{fpm_oracle, pm_oracle, MatchingSpec};
use fracext_core::parse::parse_cayley;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn connected_reps(group: &AbelianGroup, dedup: &DedupOptions) -> Vec<ConnectionSet> {
    connection_set_orbit_reps(group, |s| group.generates(s), dedup)
        .unwrap()
        .reps
        .into_iter()
        .map(|r| r.set)
        .collect()
}

fn verdict(g: &Graph, t: usize, mode: Mode, symmetry: Symmetry) -> bool {
    let config = ExtConfig {
        symmetry,
        ..ExtConfig::default()
    };
    check(g, t, mode, &config).unwrap().verdict
}

fn strip(g: &Graph) -> Graph {
    Graph::from_edges(g.order(), &g.edges().collect::<Vec<_>>()).unwrap()
}

#[test]
fn cayley_symmetry_is_sound_up_to_order_21() {
    let mut compared = 0;
    for n in 3..=21 {
        for group in enumerate_abelian_groups(n) {
            for set in connected_reps(&group, &DedupOptions::default()) {
                let g = cayley_graph(&group, &set).unwrap();
                for t in 1..=2 {
                    let modes: &[Mode] = if n % 2 == 1 {
                        &[Mode::Fractional, Mode::Classical, Mode::NearHalf]
                    } else {
                        &[Mode::Fractional, Mode::Classical]
                    };
                    for &mode in modes {
                        assert_eq!(
                            verdict(&g, t, mode, Symmetry::Cayley),
                            verdict(&g, t, mode, Symmetry::None),
                            "{group} {} t={t} {mode:?}",
                            set.to_text()
                        );
                        compared += 1;
                    }
                }
            }
        }
    }
    assert!(compared > 1000, "{compared}");
}

/// Fractional 2-extendability implies fractional 1-extendability on every
/// connected Cayley graph up to order 24.
#[test]
fn extendability_is_monotone_in_t() {
    let mut violations = Vec::new();
    for n in 5..=24 {
        for group in enumerate_abelian_groups(n) {
            for set in connected_reps(&group, &DedupOptions::default()) {
                let g = cayley_graph(&group, &set).unwrap();
                let config = ExtConfig::for_graph(&g);
                let two = check(&g, 2, Mode::Fractional, &config).unwrap().verdict;
                let one = check(&g, 1, Mode::Fractional, &config).unwrap().verdict;
                if two && !one {
                    violations.push(format!("{group} {}", set.to_text()));
                }
            }
        }
    }
    assert_eq!(violations, Vec::<String>::new());
}

#[test]
fn main_family_members_are_not_two_extendable() {
    let members = members_in(FamilyList::Main, 5..=45);
    assert!(members.len() > 40);
    for member in members {
        let g = construct_family(member).unwrap();
        let report = check(&g, 2, Mode::Fractional, &ExtConfig::for_graph(&g)).unwrap();
        assert!(!report.verdict, "{member}");
        match report.counterexample.unwrap() {
            Counterexample::Fractional { matching, witness } => {
                matching.validate(&g).unwrap();
                witness.validate(&g, matching.vertex_mask()).unwrap();
            }
            other => panic!("{member}: {other:?}"),
        }
    }
}

#[test]
fn even_family_members_are_not_two_extendable() {
    for member in members_in(FamilyList::Even, 6..=30) {
        let g = construct_family(member).unwrap();
        assert!(!check(&g, 2, Mode::Fractional, &ExtConfig::for_graph(&g)).unwrap().verdict, "{member}");
    }
}

/// The multiplier shortcut never claims an isomorphism the exact engine
/// rejects, and recognition finds a member exactly when some member is
/// isomorphic.
#[test]
fn multiplier_shortcut_agrees_with_exact_engine() {
    let mut shortcut_hits = 0;
    for n in 5..=20u32 {
        let z = AbelianGroup::cyclic(n).unwrap();
        let list = if n % 2 == 0 { FamilyList::Even } else { FamilyList::Main };
        let members: Vec<(FamilyMember, Graph)> = members_in(list, n..=n)
            .into_iter()
            .map(|m| (m, construct_family(m).unwrap()))
            .collect();
        for set in connected_reps(&z, &DedupOptions::disabled()) {
            let g = cayley_graph(&z, &set).unwrap();
            let s: Vec<u32> = set.indices(&z).into_iter().map(|i| i as u32).collect();
            let mut exact_any = false;
            for (member, h) in &members {
                let exact = are_isomorphic(&strip(&g), &strip(h)).unwrap();
                if let Some(spec) = h.provenance().cayley_spec().filter(|c| c.group.is_cyclic()) {
                    let t: Vec<u32> = spec.connection_set.indices(&spec.group).into_iter().map(|i| i as u32).collect();
                    if let Some(k) = multiplier_isomorphism(n, &t, &s) {
                        shortcut_hits += 1;
                        assert!(exact.is_some(), "{member} vs {}: multiplier {k}", set.to_text());
                    }
                }
                exact_any |= exact.is_some();
            }
            let found = recognize(&g, list, &IsoConfig::default()).unwrap();
            assert_eq!(found.is_some(), exact_any, "Z{n} {}", set.to_text());
            if let Some((member, Recognition::Multiplier { k })) = found {
                let h = construct_family(member).unwrap();
                for (u, v) in h.edges() {
                    let (ku, kv) = (u * k as usize % n as usize, v * k as usize % n as usize);
                    assert!(g.has_edge(ku, kv), "{member} k={k}");
                }
            }
        }
    }
    assert!(shortcut_hits > 50, "{shortcut_hits}");
}

#[test]
fn product_with_z3_is_a_circulant() {
    for n in [3i64, 5, 7, 9] {
        let spec = parse_cayley(&format!("Z{n}xZ3"), "{(1,0),(1,1),(1,-1)}").unwrap();
        let g = cayley_graph(&spec.group, &spec.connection_set).unwrap();
        let h = circulant(3 * n as u32, &[1, n - 1, n + 1]).unwrap();
        assert_eq!(g.edge_count(), h.edge_count());
        let phi = are_isomorphic(&g, &h).unwrap().unwrap_or_else(|| panic!("n = {n}"));
        for u in 0..g.order() {
            for v in u + 1..g.order() {
                assert_eq!(g.has_edge(u, v), h.has_edge(phi[u], phi[v]), "n = {n}");
            }
        }
    }
}

#[test]
fn predictions_survive_relabeling() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut graphs: Vec<Graph> = members_in(FamilyList::Main, 5..=21)
        .into_iter()
        .map(|m| construct_family(m).unwrap())
        .collect();
    for (n, s) in [(11u32, &[1i64, 2, 3][..]), (13, &[1, 5]), (15, &[1, 2, 4]), (17, &[1, 4])] {
        graphs.push(circulant(n, s).unwrap());
    }
    for g in graphs {
        let before = predict(&g, FamilyList::Main, &IsoConfig::default()).unwrap();
        let mut perm: Vec<usize> = (0..g.order()).collect();
        perm.shuffle(&mut rng);
        let after = predict(&g.relabel(&perm), FamilyList::Main, &IsoConfig::default()).unwrap();
        assert_eq!(before.extendable, after.extendable);
        assert_eq!(before.family, after.family);
        if let Some(Recognition::Isomorphism { phi }) = after.recognition {
            let h = construct_family(after.family.unwrap()).unwrap();
            let relabeled = g.relabel(&perm);
            assert!(relabeled.edges().all(|(u, v)| h.has_edge(phi[u], phi[v])));
        }
    }
}

/// `Circ(13, {±2, ±3})` separates the two strengthenings at `t = 2`, and both
/// verdicts hold up against the exhaustive oracles.
#[test]
fn thirteen_vertex_separation_by_oracle() {
    let g = circulant(13, &[2, 3]).unwrap();
    let plain = strip(&g);
    assert!(verdict(&plain, 2, Mode::Fractional, Symmetry::None));
    let report = check(&plain, 2, Mode::NearHalf, &ExtConfig::default()).unwrap();
    assert!(!report.verdict);
    let Some(Counterexample::NearHalf { vertex, matching, barrier, .. }) = report.counterexample else {
        panic!("{:?}", report.counterexample)
    };
    let removed = matching.vertex_mask() | 1 << vertex;
    barrier.validate(&plain, removed).unwrap();
    let (rest, _) = plain.delete_vertices(removed);
    assert!(!pm_oracle(&rest).unwrap());

    let mut pairs = 0;
    let edges: Vec<_> = plain.edges().collect();
    for (i, &e) in edges.iter().enumerate() {
        for &f in &edges[i + 1..] {
            let m = MatchingSpec::new(vec![e, f]);
            if m.validate(&plain).is_ok() {
                pairs += 1;
                assert!(fpm_oracle(&plain.delete_vertices(m.vertex_mask()).0).unwrap());
            }
        }
    }
    assert!(pairs > 0);
    let other = circulant(13, &[1, 5]).unwrap();
    assert!(are_isomorphic(&plain, &strip(&other)).unwrap().is_some());
    assert!(predict(&g, FamilyList::Main, &IsoConfig::default()).unwrap().extendable);
}
