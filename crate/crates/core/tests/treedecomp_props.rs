use hitminor_core::graph::generators::gnp;
use hitminor_core::treedecomp::{
    augment_universal, exact_td_small, heuristic_td, make_nice, make_nice_v0, parse_td, validate_td, write_td,
    TreeDecomposition, EXACT_LIMIT,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn graph(max_n: usize) -> impl Strategy<Value = hitminor_core::Graph> {
    (1..=max_n, 0.0f64..0.6, any::<u64>()).prop_map(|(n, p, seed)| gnp(n, p, &mut ChaCha8Rng::seed_from_u64(seed)))
}

proptest! {
    #[test]
    fn heuristic_is_valid_and_round_trips(g in graph(25)) {
        let td = heuristic_td(&g);
        prop_assert_eq!(validate_td(&g, &td), Ok(()));
        let again = parse_td(&write_td(&td, g.n())).unwrap();
        prop_assert_eq!(again.width(), td.width());
        prop_assert_eq!(validate_td(&g, &again), Ok(()));
    }

    #[test]
    fn exact_lies_between_min_degree_and_min_fill(g in graph(11)) {
        let exact = exact_td_small(&g, EXACT_LIMIT).unwrap();
        prop_assert_eq!(validate_td(&g, &exact), Ok(()));
        prop_assert!(exact.width() <= heuristic_td(&g).width());
        let degeneracy_floor = (0..g.n()).map(|v| g.degree(v)).min().unwrap_or(0);
        prop_assert!(exact.width() >= degeneracy_floor.min(g.n().saturating_sub(1)));
    }

    #[test]
    fn nice_forms_keep_or_raise_width_by_one(g in graph(20)) {
        let td = heuristic_td(&g);
        let nice = make_nice(&td, &g).unwrap();
        prop_assert_eq!(nice.check(&g), Ok(()));
        prop_assert_eq!(nice.width(), td.width());

        let g0 = augment_universal(&g);
        let v0 = g.n();
        let bags = td.bags.iter().map(|b| b.iter().copied().chain([v0]).collect()).collect();
        let td0 = TreeDecomposition::new(bags, td.edges.clone());
        let nice0 = make_nice_v0(&td0, &g0, v0).unwrap();
        prop_assert_eq!(nice0.check(&g0), Ok(()));
        prop_assert_eq!(nice0.width(), td.width() + 1);
    }
}
