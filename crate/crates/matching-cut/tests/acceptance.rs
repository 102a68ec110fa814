//! Acceptance suite: one line per criterion, `pass` or `fail`, printed in
//! order. Run with `cargo test --test acceptance -- --nocapture`.
//!
//! The criteria pin the crate's headline guarantees: the fast deciders agree
//! with the brute-force oracle on large corpora, every yes verdict carries a
//! verified witness, the diameter gadgets preserve the answer and hit their
//! target diameter and size exactly, lift/project round-trip, the forcing
//! engine keeps its invariants across thousands of runs, the 2-SAT solver
//! matches exhaustive enumeration, and the diameter-2 decider stays fast at
//! n = 200.

mod common;

use common::*;
use matching_cut::{
    bipartite_gadget_diam4, bipartite_gadget_diam_d, bipartite_gnp, brute_force_oracle, dispatch,
    gadget_diam3, gadget_diam_d, lift_cut, project_cut, propagate, sample, solve_diameter2,
    verify_matching_cut, Diameter, Graph, GraphClass, Lit, TwoSatFormula,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

#[derive(Default)]
struct WitnessStats {
    yes_verdicts: usize,
    verified_witnesses: usize,
}

fn check(all_passed: &mut bool, name: &str, body: impl FnOnce()) {
    let start = Instant::now();
    let result = catch_unwind(AssertUnwindSafe(body));
    let elapsed = start.elapsed();
    let outcome = if result.is_ok() { "pass" } else { "fail" };
    println!("criterion {}: {} ({:.1?})", name, outcome, elapsed);
    *all_passed &= result.is_ok();
}

/// dispatch vs oracle on one graph, recording witness soundness for
/// criterion 3.
fn compare_with_oracle(g: &Graph, stats: &mut WitnessStats) {
    let verdict = dispatch(g).unwrap();
    let oracle = brute_force_oracle(g).unwrap();
    assert_eq!(
        verdict.has_matching_cut(),
        oracle.is_some(),
        "dispatch ({:?}) disagrees with oracle on {:?}",
        verdict.method(),
        g
    );
    if let Some(cut) = verdict.witness() {
        stats.yes_verdicts += 1;
        if verify_matching_cut(g, cut).unwrap() {
            stats.verified_witnesses += 1;
        }
    }
}

fn criterion1(stats: &mut WitnessStats) {
    // exhaustive: every connected graph of diameter <= 2 on up to 7 vertices
    for n in 1..=7 {
        for mask in 0..1u64 << pair_count(n) {
            let adj = mask_adjacency(n, mask);
            if !adjacency_connected(&adj) || !adjacency_diam_le2(&adj) {
                continue;
            }
            compare_with_oracle(&mask_graph(n, mask), stats);
        }
    }
    // sampled: 2000 random connected diameter-<=2 graphs, 4 <= n <= 10
    let mut rng = ChaCha8Rng::seed_from_u64(0xAC01);
    let mut found = 0;
    while found < 2000 {
        let n = rng.gen_range(4..=10);
        let p = [0.4, 0.55, 0.7][rng.gen_range(0..3)];
        let Ok(g) = sample(GraphClass::Diameter2, n, p, &mut rng, 10_000) else {
            continue;
        };
        compare_with_oracle(&g, stats);
        found += 1;
    }
}

fn criterion2(stats: &mut WitnessStats) {
    let mut rng = ChaCha8Rng::seed_from_u64(0xAC02);
    let mut found = 0;
    while found < 2000 {
        let n = rng.gen_range(4..=12);
        let p = [0.35, 0.5, 0.7][rng.gen_range(0..3)];
        let Ok(g) = sample(GraphClass::BipartiteDiam3, n, p, &mut rng, 10_000) else {
            continue;
        };
        compare_with_oracle(&g, stats);
        found += 1;
    }
}

fn criterion3(diam2: &WitnessStats, bip3: &WitnessStats) {
    for (label, stats) in [("diameter-2", diam2), ("bipartite-diam-3", bip3)] {
        assert!(stats.yes_verdicts > 0, "{} corpus produced no yes verdicts", label);
        assert_eq!(
            stats.verified_witnesses, stats.yes_verdicts,
            "{} corpus has unverified witnesses",
            label
        );
    }
}

fn criterion4() {
    for n in 2..=4 {
        for mask in 0..1u64 << pair_count(n) {
            let adj = mask_adjacency(n, mask);
            if !adjacency_connected(&adj) {
                continue;
            }
            let g = mask_graph(n, mask);
            let source_has = brute_force_oracle(&g).unwrap().is_some();
            let (gadget, _) = gadget_diam3(&g).unwrap();
            let gadget_has = brute_force_oracle(&gadget).unwrap().is_some();
            assert_eq!(source_has, gadget_has, "gadget changed the answer for {:?}", g);
        }
    }
}

fn criterion5() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xAC05);
    for _ in 0..50 {
        let n = rng.gen_range(2..=8);
        let g = random_connected(&mut rng, n, 0.4);
        for d in 3..=8 {
            let (gadget, _) = gadget_diam_d(&g, d).unwrap();
            let pad = if d == 3 { 0 } else { 2 * (d - 2) };
            assert_eq!(gadget.vertex_count(), n + n * n + pad);
            assert_eq!(gadget.diameter(), Diameter::Finite(d), "d={} n={}", d, n);
        }
    }
    for _ in 0..50 {
        let n1 = rng.gen_range(1..=4);
        let n2 = rng.gen_range(1..=4);
        let (g, bp) = loop {
            let (g, bp) = bipartite_gnp(n1, n2, 0.6, &mut rng).unwrap();
            if g.is_connected() {
                break (g, bp);
            }
        };
        let n = g.vertex_count();
        for d in 4..=8 {
            let (gadget, _) = bipartite_gadget_diam_d(&g, &bp, d).unwrap();
            let pad = if d == 4 { 0 } else { 2 * (d - 3) };
            assert_eq!(gadget.vertex_count(), n + 2 * n * n + pad);
            assert!(gadget.bipartition().is_some(), "d={} n={}", d, n);
            assert_eq!(gadget.diameter(), Diameter::Finite(d), "d={} n={}", d, n);
        }
    }
}

fn criterion6() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xAC06);
    let mut pairs = 0;
    while pairs < 200 {
        let n = rng.gen_range(3..=8);
        let g = random_connected(&mut rng, n, 0.4);
        let Some(cut) = brute_force_oracle(&g).unwrap() else {
            continue;
        };
        let (_, recipe) = gadget_diam3(&g).unwrap();
        let mut recipes = vec![recipe];
        if pairs % 2 == 0 {
            let (_, recipe) = gadget_diam_d(&g, 3 + pairs % 6).unwrap();
            recipes.push(recipe);
        }
        if let Some(bp) = g.bipartition() {
            let (_, recipe) = bipartite_gadget_diam4(&g, &bp).unwrap();
            recipes.push(recipe);
            let (_, recipe) = bipartite_gadget_diam_d(&g, &bp, 4 + pairs % 5).unwrap();
            recipes.push(recipe);
        }
        for recipe in &recipes {
            let lifted = lift_cut(recipe, &cut).unwrap();
            assert!(verify_matching_cut(recipe.gadget(), &lifted).unwrap());
            assert_eq!(project_cut(recipe, &lifted).unwrap(), cut, "source {:?}", g);
        }
        pairs += 1;
    }
}

fn criterion7() {
    // per-step invariant checks run inside the engine as debug assertions;
    // this criterion requires them active and adds the stable-state bounds
    let debug_assertions_active = cfg!(debug_assertions);
    assert!(debug_assertions_active, "acceptance needs debug assertions enabled");
    let mut rng = ChaCha8Rng::seed_from_u64(0xAC07);
    let mut runs = 0usize;
    while runs < 10_000 {
        let n = rng.gen_range(3..=9);
        let p = [0.3, 0.5, 0.7][rng.gen_range(0..3)];
        let g = random_connected(&mut rng, n, p);
        for &(a, b) in g.edges() {
            let outcome = propagate(&g, &[a], &[b]).unwrap();
            if let Some(state) = outcome.stable_state() {
                state.validate(&g).unwrap();
                for v in 0..n {
                    if !state.is_residual(v) {
                        continue;
                    }
                    let mut x_outside = 0;
                    let mut y_outside = 0;
                    for &w in g.neighbors(v) {
                        assert!(!state.in_a(w) && !state.in_b(w), "residual {} sees anchors", v);
                        if state.in_x(w) {
                            x_outside += 1;
                        }
                        if state.in_y(w) {
                            y_outside += 1;
                        }
                    }
                    assert!(x_outside <= 1 && y_outside <= 1, "residual {} over-connected", v);
                }
            }
            runs += 1;
        }
    }
    assert!(runs >= 10_000);
}

fn criterion8() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xAC08);
    for _ in 0..1000 {
        let vars = rng.gen_range(1..=15);
        let clause_count = rng.gen_range(0..=60);
        let mut formula = TwoSatFormula::new(vars);
        let mut clauses = Vec::new();
        for _ in 0..clause_count {
            let mk = |rng: &mut ChaCha8Rng| {
                let var = rng.gen_range(0..vars);
                if rng.gen_bool(0.5) {
                    Lit::pos(var)
                } else {
                    Lit::neg(var)
                }
            };
            let (a, b) = (mk(&mut rng), mk(&mut rng));
            formula.add_clause(a, b);
            clauses.push((a, b));
        }
        let eval_lit = |l: Lit, m: u32| (m >> l.var & 1 == 1) == l.positive;
        let brute_sat = (0..1u32 << vars)
            .any(|m| clauses.iter().all(|&(a, b)| eval_lit(a, m) || eval_lit(b, m)));
        match formula.solve().unwrap() {
            Some(assignment) => {
                assert!(brute_sat, "solver satisfied an unsatisfiable formula");
                assert!(formula.evaluate(&assignment).unwrap());
            }
            None => assert!(!brute_sat, "solver refuted a satisfiable formula"),
        }
    }
    assert!(start.elapsed().as_secs() < 10, "2-SAT corpus exceeded 10s");
}

fn criterion9() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xAC09);
    for _ in 0..3 {
        let g = sample(GraphClass::Diameter2, 200, 0.25, &mut rng, 50).unwrap();
        let start = Instant::now();
        let verdict = solve_diameter2(&g).unwrap();
        let elapsed = start.elapsed();
        assert!(elapsed.as_secs() < 60, "n=200 solve took {:?}", elapsed);
        if let Some(cut) = verdict.witness() {
            assert!(verify_matching_cut(&g, cut).unwrap());
        }
    }
}

#[test]
fn acceptance() {
    let mut all_passed = true;
    let mut diam2_stats = WitnessStats::default();
    let mut bip3_stats = WitnessStats::default();
    check(&mut all_passed, "1 (oracle equivalence, diameter <= 2)", || {
        criterion1(&mut diam2_stats)
    });
    check(&mut all_passed, "2 (oracle equivalence, bipartite diameter <= 3)", || {
        criterion2(&mut bip3_stats)
    });
    check(&mut all_passed, "3 (witness soundness)", || {
        criterion3(&diam2_stats, &bip3_stats)
    });
    check(&mut all_passed, "4 (gadget preserves the answer)", criterion4);
    check(&mut all_passed, "5 (gadget diameter and size)", criterion5);
    check(&mut all_passed, "6 (lift/project round-trip)", criterion6);
    check(&mut all_passed, "7 (forcing invariants)", criterion7);
    check(&mut all_passed, "8 (2-SAT vs enumeration)", criterion8);
    check(&mut all_passed, "9 (diameter-2 speed at n=200)", criterion9);
    assert!(all_passed, "at least one acceptance criterion failed");
}
