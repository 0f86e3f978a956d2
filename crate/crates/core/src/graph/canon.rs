//! Canonical labelling for small graphs and an isomorphism test.
//!
//! The canonical form is the relabelling that maximises the graph6 bit string
//! of the upper triangle, searched over orderings compatible with a
//! degree-based vertex partition. Partial codes are compared column by column
//! and dominated branches are cut; among candidates for a position, twins
//! (vertices with the same neighbourhood apart from each other) are tried once.

use super::Graph;

/// Largest order supported by [`canonical_code`]; the code must fit in 64 bits.
pub const MAX_CANON_ORDER: usize = 11;

/// Isomorphism-invariant code of a graph on at most [`MAX_CANON_ORDER`] vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCode {
    order: u8,
    bits: u64,
}

impl CanonicalCode {
    pub fn order(&self) -> usize {
        self.order as usize
    }

    /// Upper-triangle bits in graph6 order, first bit in the most significant position.
    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn to_graph(&self) -> Graph {
        let n = self.order();
        let mut k = 0;
        let mut edges = Vec::new();
        for v in 1..n {
            for u in 0..v {
                if self.bits >> (63 - k) & 1 == 1 {
                    edges.push((u, v));
                }
                k += 1;
            }
        }
        Graph::from_edges(n, edges).expect("canonical code decodes to a simple graph")
    }
}

fn tri(p: usize) -> usize {
    p * p.saturating_sub(1) / 2
}

/// Ordered cells of vertices. Each vertex gets (degree, sorted neighbour degrees);
/// cells are sorted by that key, descending.
fn initial_cells(g: &Graph) -> Vec<Vec<usize>> {
    let mut keyed: Vec<((usize, Vec<usize>), usize)> = g
        .vertices()
        .map(|v| {
            let mut nd: Vec<usize> = g.neighbors(v).iter().map(|&w| g.degree(w)).collect();
            nd.sort_unstable_by(|a, b| b.cmp(a));
            ((g.degree(v), nd), v)
        })
        .collect();
    keyed.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    let mut cells: Vec<Vec<usize>> = Vec::new();
    let mut last = None;
    for (key, v) in keyed {
        if last.as_ref() != Some(&key) {
            cells.push(Vec::new());
            last = Some(key);
        }
        cells.last_mut().unwrap().push(v);
    }
    cells
}

struct Search<'a> {
    adj: &'a [u32],
    slot_cell: Vec<usize>,
    cells: Vec<Vec<usize>>,
    perm: Vec<usize>,
    used: u32,
    best: Option<(u64, Vec<usize>)>,
}

impl Search<'_> {
    fn column_bits(&self, p: usize) -> u64 {
        let v = self.perm[p];
        let mut bits = 0u64;
        for i in 0..p {
            if self.adj[self.perm[i]] >> v & 1 == 1 {
                bits |= 1 << (63 - (tri(p) + i));
            }
        }
        bits
    }

    fn descend(&mut self, p: usize, code: u64) {
        let n = self.slot_cell.len();
        if p == n {
            if self.best.as_ref().is_none_or(|(b, _)| code > *b) {
                self.best = Some((code, self.perm.clone()));
            }
            return;
        }
        let candidates: Vec<usize> = self.cells[self.slot_cell[p]]
            .iter()
            .copied()
            .filter(|&v| self.used >> v & 1 == 0)
            .collect();
        let mut tried: Vec<usize> = Vec::new();
        for v in candidates {
            let twin_of_tried = tried
                .iter()
                .any(|&t| (self.adj[t] & !(1 << v)) == (self.adj[v] & !(1 << t)));
            if twin_of_tried {
                continue;
            }
            tried.push(v);
            self.perm.push(v);
            self.used |= 1 << v;
            let next = code | self.column_bits(p);
            let known = tri(p + 1);
            let keep = match &self.best {
                None => true,
                Some((b, _)) => {
                    let mask = if known == 0 { 0 } else { u64::MAX << (64 - known) };
                    next & mask >= b & mask
                }
            };
            if keep {
                self.descend(p + 1, next);
            }
            self.used &= !(1 << v);
            self.perm.pop();
        }
    }
}

/// Returns `(code, order)` where `order[p]` is the original vertex placed at position `p`.
fn canonical_search(g: &Graph) -> (u64, Vec<usize>) {
    let n = g.order();
    assert!(
        n <= MAX_CANON_ORDER,
        "canonical labelling supports at most {MAX_CANON_ORDER} vertices, got {n}"
    );
    let adj: Vec<u32> = g
        .vertices()
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | 1 << w))
        .collect();
    let cells = initial_cells(g);
    let slot_cell = cells
        .iter()
        .enumerate()
        .flat_map(|(c, cell)| std::iter::repeat_n(c, cell.len()))
        .collect();
    let mut search = Search {
        adj: &adj,
        slot_cell,
        cells,
        perm: Vec::with_capacity(n),
        used: 0,
        best: None,
    };
    search.descend(0, 0);
    search.best.expect("search visits at least one leaf")
}

/// Canonical code of `g`. Panics if `g` has more than [`MAX_CANON_ORDER`] vertices.
pub fn canonical_code(g: &Graph) -> CanonicalCode {
    let (bits, _) = canonical_search(g);
    CanonicalCode {
        order: g.order() as u8,
        bits,
    }
}

/// Canonically relabelled copy of `g`.
pub fn canonical_form(g: &Graph) -> Graph {
    let (_, order) = canonical_search(g);
    let mut perm = vec![0; g.order()];
    for (pos, &v) in order.iter().enumerate() {
        perm[v] = pos;
    }
    g.permuted(&perm)
}

/// Isomorphism test. Uses canonical codes for small graphs and a
/// degree-constrained backtracking match otherwise.
pub fn is_isomorphic(g: &Graph, h: &Graph) -> bool {
    if g.order() != h.order() || g.size() != h.size() || g.degree_sequence() != h.degree_sequence() {
        return false;
    }
    if g.order() <= MAX_CANON_ORDER {
        canonical_code(g) == canonical_code(h)
    } else {
        backtrack_isomorphic(g, h)
    }
}

/// Plain backtracking isomorphism search over a BFS ordering of `g`.
pub(crate) fn backtrack_isomorphic(g: &Graph, h: &Graph) -> bool {
    let n = g.order();
    if n != h.order() || g.size() != h.size() {
        return false;
    }
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for root in g.vertices() {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut head = order.len();
        order.push(root);
        while head < order.len() {
            let u = order[head];
            head += 1;
            for &w in g.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    order.push(w);
                }
            }
        }
    }

    fn extend(g: &Graph, h: &Graph, order: &[usize], map: &mut [usize], taken: &mut [bool], depth: usize) -> bool {
        if depth == order.len() {
            return true;
        }
        let u = order[depth];
        for x in h.vertices() {
            if taken[x] || h.degree(x) != g.degree(u) {
                continue;
            }
            let consistent = order[..depth]
                .iter()
                .all(|&w| g.has_edge(u, w) == h.has_edge(x, map[w]));
            if !consistent {
                continue;
            }
            map[u] = x;
            taken[x] = true;
            if extend(g, h, order, map, taken, depth + 1) {
                return true;
            }
            taken[x] = false;
        }
        false
    }

    let mut map = vec![usize::MAX; n];
    let mut taken = vec![false; n];
    extend(g, h, &order, &mut map, &mut taken, 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, petersen, GraphKind};

    fn p(kind: GraphKind, n: usize) -> Graph {
        generate(kind, n).unwrap()
    }

    #[test]
    fn relabelled_cycle_is_isomorphic() {
        let c4 = p(GraphKind::Cycle, 4);
        let relabelled = c4.permuted(&[2, 0, 3, 1]);
        assert!(is_isomorphic(&c4, &relabelled));
        assert_eq!(canonical_form(&c4), canonical_form(&relabelled));
    }

    #[test]
    fn path_is_not_a_star() {
        assert!(!is_isomorphic(&p(GraphKind::Path, 4), &p(GraphKind::Star, 3)));
        assert!(!is_isomorphic(&p(GraphKind::Path, 4), &p(GraphKind::Path, 5)));
    }

    #[test]
    fn code_roundtrips_to_canonical_form() {
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5)]).unwrap();
        let code = canonical_code(&g);
        assert_eq!(code.to_graph(), canonical_form(&g));
        assert!(is_isomorphic(&code.to_graph(), &g));
    }

    #[test]
    fn petersen_matches_backtracking() {
        let pg = petersen();
        let shuffled = pg.permuted(&[3, 7, 1, 9, 0, 5, 2, 8, 6, 4]);
        assert!(is_isomorphic(&pg, &shuffled));
        assert!(backtrack_isomorphic(&pg, &shuffled));
        // Same degree sequence, not isomorphic.
        let prism = Graph::from_edges(
            10,
            [
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 4),
                (4, 0),
                (5, 6),
                (6, 7),
                (7, 8),
                (8, 9),
                (9, 5),
                (0, 5),
                (1, 6),
                (2, 7),
                (3, 8),
                (4, 9),
            ],
        )
        .unwrap();
        assert!(!is_isomorphic(&pg, &prism));
        assert!(!backtrack_isomorphic(&pg, &prism));
    }

    #[test]
    fn large_graphs_use_backtracking() {
        let c12 = p(GraphKind::Cycle, 12);
        let perm: Vec<usize> = (0..12).map(|i| (i * 5) % 12).collect();
        assert!(is_isomorphic(&c12, &c12.permuted(&perm)));
    }
}
