use hamiltonica_core::constructions::{cartesian_product, path_graph, random_connected_graph};
use hamiltonica_core::factors::{
    akiyama_witness, count_strip_covers, enumerate_path_covers, find_path_factor, lemma_grid, EndpointConstraint,
    FactorOutcome, DEFAULT_FACTOR_BUDGET,
};
use hamiltonica_core::graph::{degree_sequence, delete_vertices};
use hamiltonica_core::hamiltonicity::{find_hamiltonian_cycle, find_hamiltonian_cycle_with, verify_cycle, SolverOptions};
use hamiltonica_core::io::{from_graph6, to_graph6};
use hamiltonica_core::toughness::hamiltonian_implies_tough_check;
use hamiltonica_core::{Graph, VertexSet};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn graph(n: usize, p: f64, seed: u64) -> Graph {
    random_connected_graph(n, p, &mut ChaCha8Rng::seed_from_u64(seed))
}

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (3..=max_n, 0.0..0.7f64, any::<u64>()).prop_map(|(n, p, seed)| graph(n, p, seed))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn deleting_vertices_shrinks_by_the_set(g in arb_graph(9), mask in any::<u16>()) {
        let s = VertexSet::from_vertices(g.n(), (0..g.n()).filter(|&v| mask >> v & 1 == 1));
        let sub = delete_vertices(&g, &s).unwrap();
        prop_assert_eq!(sub.graph.n(), g.n() - s.len());
        for (u, v) in sub.graph.edges() {
            prop_assert!(g.has_edge(sub.lift(u), sub.lift(v)));
        }
    }

    #[test]
    fn degree_sum_is_twice_the_edges(g in arb_graph(10)) {
        prop_assert_eq!(degree_sequence(&g).iter().sum::<usize>(), 2 * g.edge_count());
    }

    #[test]
    fn product_counts_and_commutes(g in arb_graph(5), h in arb_graph(4)) {
        let gh = cartesian_product(&g, &h).unwrap();
        let hg = cartesian_product(&h, &g).unwrap();
        prop_assert_eq!(gh.n(), g.n() * h.n());
        prop_assert_eq!(gh.edge_count(), g.edge_count() * h.n() + g.n() * h.edge_count());
        prop_assert_eq!(degree_sequence(&gh), degree_sequence(&hg));
        let a = find_hamiltonian_cycle(&gh, u64::MAX).unwrap();
        let b = find_hamiltonian_cycle(&hg, u64::MAX).unwrap();
        prop_assert_eq!(a.is_found(), b.is_found());
    }

    #[test]
    fn pruning_is_sound(g in arb_graph(9)) {
        let pruned = find_hamiltonian_cycle(&g, u64::MAX).unwrap();
        let plain = find_hamiltonian_cycle_with(&g, u64::MAX, SolverOptions::NONE).unwrap();
        prop_assert_eq!(pruned.is_found(), plain.is_found());
        prop_assert!(pruned.is_found() || pruned.is_exhausted());
        if let Some(c) = pruned.cycle() {
            prop_assert!(verify_cycle(&g, c));
        }
        // each rule alone must agree too
        for rule in 0..5 {
            let mut opts = SolverOptions::NONE;
            match rule {
                0 => opts.forcing = true,
                1 => opts.connectivity = true,
                2 => opts.component_bound = true,
                3 => opts.bipartite_precheck = true,
                _ => opts.warm_start = true,
            }
            let v = find_hamiltonian_cycle_with(&g, u64::MAX, opts).unwrap();
            prop_assert_eq!(v.is_found(), plain.is_found(), "rule {}", rule);
        }
    }

    #[test]
    fn graph6_roundtrips(g in arb_graph(12)) {
        let back = from_graph6(&to_graph6(&g)).unwrap();
        prop_assert_eq!(back.edges().collect::<Vec<_>>(), g.edges().collect::<Vec<_>>());
    }

    #[test]
    fn path_factor_iff_no_witness(g in arb_graph(10)) {
        let found = matches!(find_path_factor(&g, DEFAULT_FACTOR_BUDGET), FactorOutcome::Found(_));
        let witness = akiyama_witness(&g).unwrap();
        prop_assert_eq!(found, witness.is_none());
        if let Some(w) = witness {
            prop_assert!(w.verify(&g));
        }
    }

    #[test]
    fn hamiltonian_graphs_are_one_tough(g in arb_graph(10)) {
        let r = hamiltonian_implies_tough_check(&g, u64::MAX).unwrap();
        prop_assert!(r.implication_holds());
    }

    #[test]
    fn tightening_never_adds_covers(n in 1usize..=5, forbid in any::<u16>(), require in any::<u16>()) {
        let g = lemma_grid(n).unwrap();
        let loose = EndpointConstraint::unconstrained(3 * n);
        let mut tight = loose.clone();
        for v in 0..3 * n {
            if forbid >> v & 1 == 1 {
                tight = tight.forbid(v);
            } else if require >> v & 1 == 1 {
                tight = tight.require(v);
            }
        }
        let a = enumerate_path_covers(&g, &loose).unwrap();
        let b = enumerate_path_covers(&g, &tight).unwrap();
        prop_assert!(b <= a);
        prop_assert_eq!(b, count_strip_covers(3, n, &tight).unwrap());
    }
}

#[test]
fn strips_of_odd_length_are_not_hamiltonian() {
    for n in 2..=8 {
        let g = cartesian_product(&path_graph(3).unwrap(), &path_graph(n).unwrap()).unwrap();
        let v = find_hamiltonian_cycle(&g, u64::MAX).unwrap();
        assert_eq!(v.is_found(), n % 2 == 0, "n={n}");
    }
}

#[test]
fn long_product_cycle_enters_every_branch_strip() {
    use hamiltonica_core::constructions::build_t_delta;
    use hamiltonica_core::hamiltonicity::cut_profile;
    let g = cartesian_product(&build_t_delta(3).unwrap(), &path_graph(10).unwrap()).unwrap();
    let v = find_hamiltonian_cycle(&g, u64::MAX).unwrap();
    let cycle = v.cycle().expect("T_3 x P_10 is Hamiltonian");
    let spine = VertexSet::from_vertices(g.n(), (0..3).flat_map(|x| (0..10).map(move |j| x * 10 + j)));
    let p = cut_profile(&g, cycle, &spine).unwrap();
    assert_eq!(p.components_outside, 4);
    assert_eq!(p.components_touched, 4);
    assert!(p.crossing_edges >= 8 && p.crossing_edges % 2 == 0);
}
