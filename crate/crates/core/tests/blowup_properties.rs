use buniform::betweenness::{betweenness_exact, betweenness_oracle};
use buniform::blowup::{blow_up, BlownGraph, BlowupSpec, PartDescriptor};
use buniform::constructions::{p3_independent_spec, P4SizeTuple};
use buniform::graph::{bfs_distances, enumerate_graphs, enumerate_trees, generate, Graph, GraphKind};
use buniform::rational::Rational;
use buniform::search::{part_options, PartFamily};
use proptest::prelude::*;

fn bases() -> Vec<Graph> {
    let mut out: Vec<Graph> = (2..=5).flat_map(|n| enumerate_trees(n).unwrap()).collect();
    out.push(generate(GraphKind::Cycle, 3).unwrap());
    out.push(generate(GraphKind::Cycle, 4).unwrap());
    // Paw: triangle with a pendant vertex.
    out.push(Graph::from_edges(4, [(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap());
    out
}

fn arb_spec(tree_only: bool) -> impl Strategy<Value = BlowupSpec> {
    let bases: Vec<Graph> = bases().into_iter().filter(|b| !tree_only || b.is_tree()).collect();
    let options = part_options(PartFamily::AllGraphs, 3).unwrap();
    proptest::sample::select(bases).prop_flat_map(move |base| {
        let n = base.order();
        proptest::collection::vec(proptest::sample::select(options.clone()), n)
            .prop_map(move |parts| BlowupSpec::new(base.clone(), parts).unwrap())
    })
}

/// Every shortest `u`-`v` path, as vertex sequences.
fn shortest_paths(g: &Graph, u: usize, v: usize) -> Vec<Vec<usize>> {
    let to_v = bfs_distances(g, v);
    let mut out = Vec::new();
    let mut stack = vec![vec![u]];
    while let Some(path) = stack.pop() {
        let last = *path.last().unwrap();
        if last == v {
            out.push(path);
            continue;
        }
        for &w in g.neighbors(last) {
            if to_v[w].map(|d| d + 1) == to_v[last] {
                let mut next = path.clone();
                next.push(w);
                stack.push(next);
            }
        }
    }
    out
}

fn leaf_pairs(bg: &BlownGraph) -> Vec<(usize, usize)> {
    let base = bg.spec().base();
    base.vertices()
        .filter(|&v| base.degree(v) == 1)
        .map(|v| (v, base.neighbors(v)[0]))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn decomposition_sums_to_betweenness(spec in arb_spec(false)) {
        let bg = blow_up(&spec);
        let profile = betweenness_exact(bg.graph());
        for d in bg.decompose_all() {
            prop_assert_eq!(&d.total(), profile.get(d.vertex));
        }
    }

    #[test]
    fn closed_form_matches_neighbour_locals(spec in arb_spec(false)) {
        let bg = blow_up(&spec);
        for d in bg.decompose_all() {
            for (&j, value) in &d.neighbor_locals {
                prop_assert_eq!(&bg.closed_form_neighbor_contribution(d.part, j).unwrap(), value);
            }
        }
    }

    #[test]
    fn parts_have_diameter_at_most_two(spec in arb_spec(false)) {
        let bg = blow_up(&spec);
        for part in bg.all_part_vertices() {
            for &u in part {
                let dist = bfs_distances(bg.graph(), u);
                for &w in part {
                    prop_assert!(dist[w].unwrap() <= 2);
                }
            }
        }
    }

    #[test]
    fn leaf_parts_have_no_global_load(spec in arb_spec(true)) {
        let bg = blow_up(&spec);
        let decomposition = bg.decompose_all();
        for (leaf, _) in leaf_pairs(&bg) {
            for &x in bg.part_vertices(leaf) {
                prop_assert!(decomposition[x].global_part.is_zero());
            }
        }
    }

    #[test]
    fn leaf_and_neighbour_local_loads_are_ordered(spec in arb_spec(true)) {
        let bg = blow_up(&spec);
        let d = bg.decompose_all();
        for (leaf, second) in leaf_pairs(&bg) {
            for &x in bg.part_vertices(leaf) {
                for &y in bg.part_vertices(second) {
                    prop_assert!(d[x].own_local <= *d[y].neighbor_local(leaf));
                    prop_assert!(*d[x].neighbor_local(second) >= d[y].own_local);
                }
            }
        }
    }

    #[test]
    fn leaf_neighbour_global_formula(spec in arb_spec(true)) {
        let bg = blow_up(&spec);
        let base = spec.base();
        let d = bg.decompose_all();
        for (leaf, second) in leaf_pairs(&bg) {
            for &y in bg.part_vertices(second) {
                match bg.global_leaf_neighbor_formula(leaf, y) {
                    Ok(value) => prop_assert_eq!(&value, &d[y].global_part),
                    Err(_) => prop_assert!(base.degree(second) > 2),
                }
            }
        }
    }

    #[test]
    fn delta_is_one_iff_equal_betweenness(spec in arb_spec(true)) {
        let bg = blow_up(&spec);
        for (leaf, _) in leaf_pairs(&bg) {
            if let Ok(r) = bg.delta_extremal(leaf) {
                prop_assert_eq!(r.delta == Rational::one(), r.betweenness_x == r.betweenness_y);
                if r.denominator.is_positive() {
                    prop_assert_eq!(r.delta < Rational::one(), r.betweenness_x < r.betweenness_y);
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn shortest_paths_meet_each_part_once(spec in arb_spec(false).prop_filter("small", |s| s.total_vertices() <= 10)) {
        let bg = blow_up(&spec);
        let g = bg.graph();
        for u in g.vertices() {
            for v in u + 1..g.order() {
                if bg.part_of(u) == bg.part_of(v) {
                    continue;
                }
                for p in shortest_paths(g, u, v) {
                    let mut seen = vec![0; bg.part_count()];
                    for &w in &p {
                        seen[bg.part_of(w)] += 1;
                    }
                    prop_assert!(seen.iter().all(|&c| c <= 1), "{:?}", p);
                }
            }
        }
    }
}

#[test]
fn p3_outer_parts_are_symmetric() {
    for a in 1..=4 {
        for b in 1..=4 {
            let bg = blow_up(&p3_independent_spec(a, b).unwrap());
            let profile = betweenness_oracle(bg.graph());
            let common = profile.common_value().expect("uniform");
            for part in [0, 2] {
                for &v in bg.part_vertices(part) {
                    assert_eq!(profile.get(v), common);
                }
            }
        }
    }
}

/// The two inequalities are exactly `B(x) >= B(y)` at each end of the path, so
/// at least one end has its leaf part strictly below its neighbour part.
#[test]
fn p4_inequalities_are_end_comparisons() {
    use buniform::constructions::p4_infeasibility_check;
    for a in 1..=5 {
        for b in 1..=5 {
            for c in 1..=5 {
                for d in 1..=5 {
                    let t = P4SizeTuple::new(a, b, c, d).unwrap();
                    let bg = blow_up(&t.spec());
                    let profile = betweenness_exact(bg.graph());
                    let at = |part: usize| profile.get(bg.part_vertices(part)[0]);
                    let report = p4_infeasibility_check(t);
                    assert_eq!(report.ineq1_holds, at(0) >= at(1), "{t:?}");
                    assert_eq!(report.ineq2_holds, at(3) >= at(2), "{t:?}");
                    assert!(at(0) < at(1) || at(3) < at(2), "{t:?}");
                }
            }
        }
    }
}

#[test]
fn p4_leaf_can_exceed_its_neighbour() {
    // P4[K_1, I_3, I_1, K_1]: the first end is heavy, the second end fails instead.
    let bg = blow_up(&P4SizeTuple::new(1, 3, 1, 1).unwrap().spec());
    let profile = betweenness_exact(bg.graph());
    assert_eq!(profile.get(0), &Rational::new(3, 2));
    assert_eq!(profile.get(1), &Rational::new(2, 3));
    assert!(profile.get(5) < profile.get(4));
}

/// Adding an edge inside the third part of `P_4[K_a, I_b, H_3, K_d]` lowers the
/// betweenness of every vertex in the second and fourth parts.
#[test]
fn edges_in_third_part_relieve_its_neighbours() {
    let base = generate(GraphKind::Path, 4).unwrap();
    for c in 2..=4 {
        for h in enumerate_graphs(c).unwrap() {
            for (u, w) in (0..c).flat_map(|u| (u + 1..c).map(move |w| (u, w))) {
                if h.has_edge(u, w) {
                    continue;
                }
                let denser = Graph::from_edges(c, h.edges().chain([(u, w)])).unwrap();
                for (a, b, d) in [(1, 1, 1), (2, 3, 1), (1, 2, 3)] {
                    let build = |part: &Graph| {
                        let spec = BlowupSpec::new(
                            base.clone(),
                            vec![
                                PartDescriptor::clique(a),
                                PartDescriptor::independent(b),
                                PartDescriptor::explicit(part.clone()),
                                PartDescriptor::clique(d),
                            ],
                        )
                        .unwrap();
                        let bg = blow_up(&spec);
                        let profile = betweenness_exact(bg.graph());
                        (bg, profile)
                    };
                    let (bg, before) = build(&h);
                    let (_, after) = build(&denser);
                    for part in [1, 3] {
                        for &v in bg.part_vertices(part) {
                            assert!(
                                after.get(v) < before.get(v),
                                "{} + {u}{w} at part {part}",
                                h.to_graph6()
                            );
                        }
                    }
                }
            }
        }
    }
}
