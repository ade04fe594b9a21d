//! Acceptance suite: every exact combinatorial claim the toolkit makes,
//! checked end to end at desk scale. One test per criterion; each prints a
//! PASS line with its timing (visible with `--nocapture`).

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use certilab::{
    anon_attack_sweep, anon_no_instance, build_complete, build_cycle, build_necklace, build_path,
    check_view_coverage, collision_column_sweep, compute_view, distance2_oracle,
    dist2_3color_scheme, enumerate_binary_labelings, enumerate_degree_exact_verifiers,
    find_collision_column, find_k_coloring, id_attack_sweep, is_distance2_3colorable,
    random_connected_graph, score, score_matrix, table_accepts_binary, verifier_accepts,
    verifier_census, BinaryLabeling, Graph, Instance, Label, View, DEFAULT_SEED,
};

fn pass(name: &str, started: Instant) {
    println!(
        "[acceptance] {name}: PASS ({} ms)",
        started.elapsed().as_millis()
    );
}

/// A1: the necklace graphs are k-colorable, both by brute-force search and
/// by their canonical coloring, which follows the pattern that the split
/// pair of bead t gets color t.
#[test]
fn a1_necklace_coloring_witnesses() {
    let started = Instant::now();
    for k in 3..=5 {
        let (g, s) = build_necklace(k).unwrap();
        let witness = find_k_coloring(&g, k)
            .unwrap()
            .unwrap_or_else(|| panic!("necklace k={k} must be {k}-colorable"));
        assert!(witness.is_proper_k_coloring(&g, k));

        let canonical = s.canonical_coloring();
        assert!(canonical.is_proper_k_coloring(&g, k));
        for t in 1..=3 {
            assert_eq!(canonical.color(s.a(t)), t);
            assert_eq!(canonical.color(s.b(t)), t);
            let mut clique_colors: Vec<usize> =
                s.clique(t).iter().map(|&v| canonical.color(v)).collect();
            clique_colors.sort_unstable();
            let expected: Vec<usize> = (1..=k).filter(|&c| c != t).collect();
            assert_eq!(clique_colors, expected);
        }
    }
    pass("A1 necklace coloring witnesses", started);
}

/// A2: every binary labeling of the necklace graph admits a collision
/// column — exhaustively for k = 3, 4, 5.
#[test]
fn a2_collision_column_exhaustive() {
    let started = Instant::now();
    for (k, expected) in [(3, 4096u64), (4, 32_768), (5, 262_144)] {
        let report = collision_column_sweep(k, 4).unwrap();
        assert_eq!(report.total, expected);
        assert_eq!(report.successes, expected, "k={k} must be 100% successes");
        assert_eq!(report.histogram.values().sum::<u64>(), expected);
    }
    pass("A2 collision column exhaustive sweep", started);
}

/// A3: the anonymous attack covers every labeling — for each labeling of
/// the necklace graph the constructed complete-graph labeling passes view
/// coverage. Exhaustive at k = 3 and k = 4.
#[test]
fn a3_anonymous_attack_exhaustive() {
    let started = Instant::now();
    for (k, expected) in [(3, 4096u64), (4, 32_768)] {
        let report = anon_attack_sweep(k, 4).unwrap();
        assert_eq!(report.total, expected);
        assert_eq!(report.covered, expected, "k={k} coverage must be total");
    }
    pass("A3 anonymous attack coverage", started);
}

/// A4: no one-bit table verifier separates the yes-instance from the
/// no-instance: over all 256 degree-3 tables, exactly 0 accept some
/// labeling of the necklace graph while rejecting all 16 labelings of K_4.
#[test]
fn a4_verifier_census() {
    let started = Instant::now();
    let report = verifier_census(3).unwrap();
    assert_eq!(report.verifiers, 256);
    assert_eq!(report.separating, 0);
    // Each condition alone is satisfiable (the always-accept and
    // always-reject tables), so the census is not vacuous.
    assert!(report.accept_some_yes > 0);
    assert!(report.reject_all_no > 0);
    pass("A4 verifier census finds no separating table", started);
}

/// A5: the identifier attack succeeds on 1000 seeded random labeling
/// tuples: injective identifiers within the bound 204 = 3*4^3 + 3*4, and
/// full view coverage against the 17 identifier-equipped copies.
#[test]
fn a5_identifier_attack_seeded() {
    let started = Instant::now();
    let report = id_attack_sweep(3, 1000, DEFAULT_SEED, 4).unwrap();
    assert_eq!(report.copies, 17);
    assert_eq!(report.tuples, 1000);
    assert_eq!(report.successes, 1000);
    assert_eq!(report.id_bound, 204);
    assert!(report.max_id <= 204);
    pass("A5 identifier attack on 1000 seeded tuples", started);
}

/// A6: completeness of the distance-2 scheme: prover output exists and is
/// globally accepted on every path up to 30 vertices and every cycle of
/// length 0 mod 3 up to 30.
#[test]
fn a6_dist2_completeness() {
    let started = Instant::now();
    let scheme = dist2_3color_scheme();
    for n in 1..=30 {
        let p = build_path(n).unwrap();
        let cert = scheme.prove(&p).unwrap().expect("paths are certified");
        assert!(
            verifier_accepts(&p, &cert, None, &scheme).unwrap(),
            "P_{n} must accept"
        );
    }
    for n in (3..=30).filter(|n| n % 3 == 0) {
        let c = build_cycle(n).unwrap();
        let cert = scheme.prove(&c).unwrap().expect("0 mod 3 cycles certified");
        assert!(
            verifier_accepts(&c, &cert, None, &scheme).unwrap(),
            "C_{n} must accept"
        );
    }
    pass("A6 distance-2 scheme completeness", started);
}

/// A7: soundness of the distance-2 scheme at desk scale: every labeling of
/// every cycle of length not 0 mod 3 (n <= 18) is globally rejected, and so
/// is every labeling of 100 seeded random connected graphs containing a
/// vertex of degree at least 3.
#[test]
fn a7_dist2_soundness_exhaustive() {
    let started = Instant::now();
    let scheme = dist2_3color_scheme();
    for n in (3..=18).filter(|n| n % 3 != 0) {
        let c = build_cycle(n).unwrap();
        for labeling in enumerate_binary_labelings(&c).unwrap() {
            assert!(
                !verifier_accepts(&c, &labeling.to_assignment(), None, &scheme).unwrap(),
                "C_{n} with {labeling} must reject"
            );
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    let mut graphs = 0;
    while graphs < 100 {
        let n = rng.random_range(4..=12usize);
        let g = random_connected_graph(&mut rng, n, 0.3);
        if g.max_degree() < 3 {
            continue;
        }
        graphs += 1;
        for labeling in enumerate_binary_labelings(&g).unwrap() {
            assert!(
                !verifier_accepts(&g, &labeling.to_assignment(), None, &scheme).unwrap(),
                "graph #{graphs} with {labeling} must reject"
            );
        }
    }
    pass("A7 distance-2 scheme soundness", started);
}

/// A8: the structural distance-2 3-colorability test agrees with the
/// brute-force square-graph coloring oracle on all paths and cycles up to
/// 12 vertices and on 200 seeded random connected graphs up to 6 vertices.
#[test]
fn a8_distance2_oracle_equivalence() {
    let started = Instant::now();
    for n in 1..=12 {
        let p = build_path(n).unwrap();
        assert_eq!(
            is_distance2_3colorable(&p),
            distance2_oracle(&p).unwrap(),
            "P_{n}"
        );
    }
    for n in 3..=12 {
        let c = build_cycle(n).unwrap();
        assert_eq!(
            is_distance2_3colorable(&c),
            distance2_oracle(&c).unwrap(),
            "C_{n}"
        );
    }
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    for i in 0..200 {
        let n = rng.random_range(1..=6usize);
        let g = random_connected_graph(&mut rng, n, 0.4);
        assert_eq!(
            is_distance2_3colorable(&g),
            distance2_oracle(&g).unwrap(),
            "random graph #{i}"
        );
    }
    pass("A8 structural test vs square-graph oracle", started);
}

/// A9: the property suites — score complement duality, the score-matrix
/// total identity, view multiset canonicalization, and the
/// indistinguishability instantiation quantified over all 256 degree-3
/// tables — hold with zero counterexamples.
#[test]
fn a9_property_suites() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);

    // Score complement duality on a mixed corpus.
    let mut corpus: Vec<Graph> = Vec::new();
    for n in 1..=8 {
        corpus.push(build_complete(n).unwrap());
        corpus.push(build_path(n).unwrap());
    }
    for n in 3..=10 {
        corpus.push(build_cycle(n).unwrap());
    }
    corpus.push(build_necklace(3).unwrap().0);
    corpus.push(build_necklace(4).unwrap().0);
    for _ in 0..50 {
        let n = rng.random_range(1..=9usize);
        corpus.push(random_connected_graph(&mut rng, n, 0.3));
    }
    for g in &corpus {
        let n = g.vertex_count();
        for _ in 0..16 {
            let labeling = BinaryLabeling::from_index(rng.random_range(0..1u64 << n), n);
            let complement = labeling.complement();
            for v in 0..n {
                assert_eq!(
                    score(g, &labeling, v).unwrap() + score(g, &complement, v).unwrap(),
                    g.degree(v) + 1
                );
            }
        }
    }

    // Score-matrix total identity on the regular members of the corpus.
    for g in corpus.iter().filter(|g| g.regularity().is_some()) {
        let n = g.vertex_count();
        for _ in 0..16 {
            let labeling = BinaryLabeling::from_index(rng.random_range(0..1u64 << n), n);
            let m = score_matrix(g, &labeling).unwrap();
            assert_eq!(m.total(), n as u64 + 2);
        }
    }

    // View canonicalization: permuting the neighbor list never changes the
    // view, and computed views are always sorted.
    for _ in 0..200 {
        let len = rng.random_range(0..8usize);
        let labels: Vec<Label> = (0..len)
            .map(|_| Label::from_value(rng.random_range(0..4usize), 2))
            .collect();
        let mut shuffled = labels.clone();
        for i in (1..shuffled.len()).rev() {
            let j = rng.random_range(0..=i);
            shuffled.swap(i, j);
        }
        let own = Label::from_value(rng.random_range(0..4usize), 2);
        assert_eq!(
            View::new(None, own.clone(), labels),
            View::new(None, own, shuffled)
        );
    }
    for g in corpus.iter().take(20) {
        let n = g.vertex_count();
        let labeling = BinaryLabeling::from_index(rng.random_range(0..1u64 << n), n);
        let cert = labeling.to_assignment();
        for v in 0..n {
            let view = compute_view(g, &cert, None, v).unwrap();
            assert!(view.neighbor_labels.windows(2).all(|w| w[0] <= w[1]));
        }
    }

    // Indistinguishability instantiation: for every degree-3 table and
    // every labeling of the necklace graph, if the table accepts the
    // labeled necklace then it accepts the attack labeling of K_4; the
    // attack's coverage precondition is checked whenever it fires.
    let (necklace, _) = build_necklace(3).unwrap();
    let complete = build_complete(4).unwrap();
    let labelings: Vec<BinaryLabeling> = enumerate_binary_labelings(&necklace).unwrap().collect();
    let attacks: Vec<BinaryLabeling> = labelings
        .iter()
        .map(|l| anon_no_instance(3, l).unwrap())
        .collect();
    let mut coverage_checked = vec![false; labelings.len()];
    let mut implications = 0u64;
    for table in enumerate_degree_exact_verifiers(3).unwrap() {
        for (i, labeling) in labelings.iter().enumerate() {
            if table_accepts_binary(&necklace, labeling, &table).unwrap() {
                if !coverage_checked[i] {
                    let target =
                        Instance::anonymous(complete.clone(), attacks[i].to_assignment())
                            .unwrap();
                    let yes =
                        Instance::anonymous(necklace.clone(), labeling.to_assignment()).unwrap();
                    assert!(
                        check_view_coverage(&target, &[yes]).unwrap().covered,
                        "attack coverage must hold for labeling {labeling}"
                    );
                    coverage_checked[i] = true;
                }
                assert!(
                    table_accepts_binary(&complete, &attacks[i], &table).unwrap(),
                    "table {} accepts necklace labeling {labeling} but rejects its attack",
                    table.index()
                );
                implications += 1;
            }
        }
    }
    assert!(implications > 0, "some tables must accept some labelings");

    // The attack's one-count always equals the collision column.
    for (labeling, attack) in labelings.iter().zip(&attacks) {
        let m = score_matrix(&necklace, labeling).unwrap();
        assert_eq!(attack.ones(), find_collision_column(&m).unwrap().column);
    }

    pass("A9 property suites", started);
}
