use hitminor_core::graph::generators::{all_graphs, gnp, grid};
use hitminor_core::oracle::min_deletion_bruteforce;
use hitminor_core::solvers::{solve, SolveRequest};
use hitminor_core::treedecomp::exact_td_small;
use hitminor_core::{Exec, Graph, PatternId};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const PATTERNS: [PatternId; 6] = [
    PatternId::P3,
    PatternId::P4,
    PatternId::K1s(3),
    PatternId::K1s(4),
    PatternId::C4,
    PatternId::Paw,
];

fn check(g: &Graph, p: PatternId) {
    let want = min_deletion_bruteforce(g, p, Exec::Sequential).unwrap().len();
    let got = solve(&SolveRequest::new(g, p)).unwrap().minimum;
    assert_eq!(got, want, "{p} on {:?}", g.edges().collect::<Vec<_>>());
}

#[test]
fn all_graphs_up_to_five_vertices() {
    for n in 0..=5 {
        for g in all_graphs(n) {
            for p in PATTERNS {
                check(&g, p);
            }
        }
    }
}

#[test]
fn random_graphs_on_nine_vertices() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for i in 0..60 {
        let g = gnp(9, [0.2, 0.35, 0.5][i % 3], &mut rng);
        for p in PATTERNS {
            check(&g, p);
        }
    }
}

#[test]
fn exact_and_heuristic_decompositions_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..20 {
        let g = gnp(10, 0.3, &mut rng);
        let td = exact_td_small(&g, 16).unwrap();
        for p in PATTERNS {
            let mut req = SolveRequest::new(&g, p);
            let heuristic = solve(&req).unwrap().minimum;
            req.decomposition = Some(&td);
            assert_eq!(solve(&req).unwrap().minimum, heuristic, "{p}");
        }
    }
}

#[test]
fn sequential_and_parallel_agree_on_grids() {
    let g = grid(3, 8);
    for p in PATTERNS {
        let mut req = SolveRequest::new(&g, p);
        req.exec = Exec::Sequential;
        let seq = solve(&req).unwrap();
        req.exec = Exec::Parallel;
        let par = solve(&req).unwrap();
        assert_eq!(seq.minimum, par.minimum, "{p}");
        assert_eq!(seq.stats.per_node, par.stats.per_node, "{p}");
    }
}
