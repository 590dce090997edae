use proptest::prelude::*;

use vizing_core::block::{audit_trace, deal, Certifier};
use vizing_core::solver::{enumerate_minimum_dominating_sets, ENUMERATE_CAP};
use vizing_core::verify::vizing_holds;
use vizing_core::{
    cartesian_product, check_pair, emit_edgelist, emit_graph6, gamma_bruteforce, gamma_exact, greedy_dominating,
    parse_edgelist, parse_graph6, two_packing_lower_bound, Graph, VertexSet,
};

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[k] {
                        edges.push((u, v));
                    }
                    k += 1;
                }
            }
            Graph::from_edges(n, edges).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 128,
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn graph6_round_trip(g in graph(70)) {
        let text = emit_graph6(&g);
        prop_assert_eq!(parse_graph6(&text).unwrap(), g);
    }

    #[test]
    fn edgelist_round_trip(g in graph(30)) {
        prop_assert_eq!(parse_edgelist(&emit_edgelist(&g)).unwrap(), g);
    }

    #[test]
    fn exact_matches_bruteforce(g in graph(16)) {
        let exact = gamma_exact(&g).unwrap();
        let brute = gamma_bruteforce(&g).unwrap();
        prop_assert_eq!(exact.gamma, brute.gamma);
        prop_assert!(g.is_dominating(&exact.witness).unwrap());
        prop_assert_eq!(exact.witness.len(), exact.gamma);
    }

    #[test]
    fn sandwich_bounds(g in graph(40)) {
        let gamma = gamma_exact(&g).unwrap().gamma;
        let greedy = greedy_dominating(&g);
        prop_assert!(g.is_dominating(&greedy).unwrap());
        prop_assert!(two_packing_lower_bound(&g) <= gamma);
        prop_assert!(gamma <= greedy.len());
    }

    #[test]
    fn adding_an_edge_never_raises_gamma(g in graph(18), a in 0usize..18, b in 0usize..18) {
        let (u, v) = (a % g.n(), b % g.n());
        prop_assume!(u != v);
        let denser = g.with_edge(u, v).unwrap();
        prop_assert!(gamma_exact(&denser).unwrap().gamma <= gamma_exact(&g).unwrap().gamma);
    }

    #[test]
    fn product_gamma_is_symmetric(g in graph(5), h in graph(5)) {
        let gh = gamma_exact(&cartesian_product(&g, &h).unwrap().graph).unwrap().gamma;
        let hg = gamma_exact(&cartesian_product(&h, &g).unwrap().graph).unwrap().gamma;
        prop_assert_eq!(gh, hg);
    }

    #[test]
    fn pair_reports_agree_under_swap(g in graph(5), h in graph(5)) {
        let a = check_pair(&g, &h).unwrap();
        let b = check_pair(&h, &g).unwrap();
        prop_assert_eq!(a.gamma_product, b.gamma_product);
        prop_assert_eq!(a.theorem_condition, b.theorem_condition);
        prop_assert!(a.vizing_holds);
        prop_assert!(vizing_holds(a.gamma_g, a.gamma_h, a.gamma_product));
    }

    #[test]
    fn product_columns_copy_h(g in graph(6), h in graph(6)) {
        // Every G-layer and H-layer induces a copy of the factor.
        let pg = cartesian_product(&g, &h).unwrap();
        for u in 0..g.n() {
            for v in 0..h.n() {
                let x = pg.flat(u, v);
                for w in 0..h.n() {
                    prop_assert_eq!(pg.graph.has_edge(x, pg.flat(u, w)), h.has_edge(v, w));
                }
                for w in 0..g.n() {
                    prop_assert_eq!(pg.graph.has_edge(x, pg.flat(w, v)), g.has_edge(u, w));
                }
            }
        }
    }

    #[test]
    fn dealt_partitions_are_valid(parts in 1usize..8, min_size in 0usize..5, extra in 0usize..20) {
        let n = parts * min_size + extra;
        let p = deal(n, parts, min_size).unwrap();
        prop_assert_eq!(p.len(), parts);
        prop_assert!(p.validate(n).is_ok());
        let sizes: Vec<usize> = p.parts.iter().map(VertexSet::len).collect();
        prop_assert!(sizes.iter().all(|&s| s >= min_size));
        prop_assert_eq!(sizes.iter().sum::<usize>(), n);
    }

    #[test]
    fn engine_traces_pass_audit(g in graph(5), h in graph(5), pick in any::<usize>()) {
        let certifier = match Certifier::new(&g, &h) {
            Ok(c) => c,
            Err(_) => {
                let (gg, gh) = (gamma_exact(&g).unwrap().gamma, gamma_exact(&h).unwrap().gamma);
                prop_assert!(g.n() < gg * gh || h.n() < gg * gh);
                return Ok(());
            }
        };
        let (gg, gh, gp) = certifier.gammas();
        let pg = certifier.product();
        let d = if pg.graph.n() <= ENUMERATE_CAP {
            let mds = enumerate_minimum_dominating_sets(&pg.graph, 64).unwrap();
            mds[pick % mds.len()].clone()
        } else {
            certifier.canonical_d().unwrap()
        };
        let trace = certifier.run(&d).unwrap();
        let report = audit_trace(&trace, pg, &d);
        prop_assert!(report.passed, "{:?}", report.failure);
        if trace.outcome.is_certified() {
            prop_assert!(trace.certified_count >= gg * gh);
        }
        prop_assert!(gp >= gg * gh);
    }
}
