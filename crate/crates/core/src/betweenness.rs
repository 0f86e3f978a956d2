//! Exact betweenness centrality.
//!
//! `B(x)` sums, over unordered pairs `{u, v}` not containing `x`, the fraction
//! of shortest `u`-`v` paths through `x`. Two independent routes compute it:
//!
//! * [`betweenness_exact`]: dependency accumulation, one BFS per source.
//!   Accumulators run in `i128` rationals with overflow checks and fall back
//!   to arbitrary precision if any operation would overflow.
//! * [`betweenness_oracle`]: an all-pairs distance/path-count table and the
//!   product rule `σ(u,x)·σ(x,v)/σ(u,v)` per pair, in arbitrary precision.
//!
//! [`betweenness_twin_reduced`] is the accumulation route run from one source
//! per twin class; the exhaustive searches use it.

use std::collections::VecDeque;

use num_bigint::{BigInt, BigUint};
use num_rational::{BigRational, Ratio};
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, One, Zero};
use serde::{Deserialize, Serialize};

use crate::graph::Graph;
use crate::rational::Rational;

/// Betweenness of every vertex, indexed by vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BetweennessProfile {
    values: Vec<Rational>,
}

impl BetweennessProfile {
    pub fn new(values: Vec<Rational>) -> Self {
        BetweennessProfile { values }
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn get(&self, v: usize) -> &Rational {
        &self.values[v]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn total(&self) -> Rational {
        self.values.iter().sum()
    }

    /// The common value if every entry is exactly equal.
    pub fn common_value(&self) -> Option<&Rational> {
        let first = self.values.first()?;
        self.values.iter().all(|v| v == first).then_some(first)
    }

    pub fn verdict(&self) -> Uniformity {
        let common = self.common_value().cloned();
        Uniformity {
            uniform: common.is_some(),
            common,
        }
    }
}

#[derive(Serialize, Deserialize)]
struct ProfileJson {
    n: usize,
    values: Vec<Rational>,
    uniform: bool,
    common: Option<Rational>,
}

impl Serialize for BetweennessProfile {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let verdict = self.verdict();
        ProfileJson {
            n: self.values.len(),
            values: self.values.clone(),
            uniform: verdict.uniform,
            common: verdict.common,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for BetweennessProfile {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let json = ProfileJson::deserialize(deserializer)?;
        if json.values.len() != json.n {
            return Err(serde::de::Error::custom("`n` does not match the number of values"));
        }
        Ok(BetweennessProfile::new(json.values))
    }
}

/// Outcome of a betweenness-uniformity check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Uniformity {
    pub uniform: bool,
    pub common: Option<Rational>,
}

/// Exact field operations that may refuse (overflow).
trait Accumulator: Clone {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, other: &Self) -> Option<Self>;
    fn mul(&self, other: &Self) -> Option<Self>;
    fn div(&self, other: &Self) -> Option<Self>;
    fn scale(&self, k: usize) -> Option<Self>;
    fn into_rational(self) -> Rational;
}

type Small = Ratio<i128>;

impl Accumulator for Small {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn add(&self, other: &Self) -> Option<Self> {
        self.checked_add(other)
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        self.checked_mul(other)
    }
    fn div(&self, other: &Self) -> Option<Self> {
        self.checked_div(other)
    }
    fn scale(&self, k: usize) -> Option<Self> {
        self.checked_mul(&Small::from_integer(i128::try_from(k).ok()?))
    }
    fn into_rational(self) -> Rational {
        let (n, d) = self.into_raw();
        BigRational::new(BigInt::from(n), BigInt::from(d)).into()
    }
}

impl Accumulator for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn add(&self, other: &Self) -> Option<Self> {
        Some(self + other)
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        Some(self * other)
    }
    fn div(&self, other: &Self) -> Option<Self> {
        Some(self / other)
    }
    fn scale(&self, k: usize) -> Option<Self> {
        Some(self * BigRational::from_integer(BigInt::from(k)))
    }
    fn into_rational(self) -> Rational {
        self.into()
    }
}

/// Reusable per-source scratch space for the accumulation pass.
struct Workspace<F> {
    dist: Vec<usize>,
    sigma: Vec<F>,
    delta: Vec<F>,
    preds: Vec<Vec<usize>>,
    order: Vec<usize>,
    queue: VecDeque<usize>,
}

impl<F: Accumulator> Workspace<F> {
    fn new(n: usize) -> Self {
        Workspace {
            dist: vec![usize::MAX; n],
            sigma: vec![F::zero(); n],
            delta: vec![F::zero(); n],
            preds: vec![Vec::new(); n],
            order: Vec::with_capacity(n),
            queue: VecDeque::with_capacity(n),
        }
    }

    /// Fills `delta` with the dependencies of `source` on every vertex.
    fn single_source(&mut self, g: &Graph, source: usize) -> Option<()> {
        for v in g.vertices() {
            self.dist[v] = usize::MAX;
            self.sigma[v] = F::zero();
            self.delta[v] = F::zero();
            self.preds[v].clear();
        }
        self.order.clear();
        self.dist[source] = 0;
        self.sigma[source] = F::one();
        self.queue.push_back(source);
        while let Some(u) = self.queue.pop_front() {
            self.order.push(u);
            for &w in g.neighbors(u) {
                if self.dist[w] == usize::MAX {
                    self.dist[w] = self.dist[u] + 1;
                    self.queue.push_back(w);
                }
                if self.dist[w] == self.dist[u] + 1 {
                    self.sigma[w] = self.sigma[w].add(&self.sigma[u])?;
                    self.preds[w].push(u);
                }
            }
        }
        let one = F::one();
        while let Some(w) = self.order.pop() {
            let carried = one.add(&self.delta[w])?.div(&self.sigma[w])?;
            for i in 0..self.preds[w].len() {
                let v = self.preds[w][i];
                let share = self.sigma[v].mul(&carried)?;
                self.delta[v] = self.delta[v].add(&share)?;
            }
        }
        Some(())
    }
}

fn halve<F: Accumulator>(totals: Vec<F>) -> Option<Vec<Rational>> {
    let two = F::one().add(&F::one())?;
    totals.into_iter().map(|t| t.div(&two).map(F::into_rational)).collect()
}

fn accumulate_all_sources<F: Accumulator>(g: &Graph) -> Option<Vec<Rational>> {
    let n = g.order();
    let mut ws = Workspace::<F>::new(n);
    let mut totals = vec![F::zero(); n];
    for s in g.vertices() {
        ws.single_source(g, s)?;
        for v in g.vertices() {
            if v != s {
                totals[v] = totals[v].add(&ws.delta[v])?;
            }
        }
    }
    halve(totals)
}

/// Exact betweenness by dependency accumulation.
///
/// Pairs in different components contribute nothing.
pub fn betweenness_exact(g: &Graph) -> BetweennessProfile {
    let values = accumulate_all_sources::<Small>(g)
        .or_else(|| accumulate_all_sources::<BigRational>(g))
        .expect("arbitrary-precision accumulation cannot overflow");
    BetweennessProfile::new(values)
}

/// Partition of the vertices into twin classes. Two vertices are twins when
/// their neighbourhoods agree outside the pair itself; swapping them is then
/// an automorphism. A vertex cannot have both an adjacent and a non-adjacent
/// twin, so the relation is an equivalence. Classes are sorted by first member.
pub fn twin_classes(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.order();
    let mut class_of = vec![usize::MAX; n];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let twins = |u: usize, v: usize| {
        let nu = g.neighbors(u).iter().filter(|&&x| x != v);
        let nv = g.neighbors(v).iter().filter(|&&x| x != u);
        nu.eq(nv)
    };
    for v in 0..n {
        if class_of[v] != usize::MAX {
            continue;
        }
        class_of[v] = classes.len();
        let mut class = vec![v];
        let id = classes.len();
        for (w, slot) in class_of.iter_mut().enumerate().skip(v + 1) {
            if *slot == usize::MAX && g.degree(w) == g.degree(v) && twins(v, w) {
                *slot = id;
                class.push(w);
            }
        }
        classes.push(class);
    }
    classes
}

fn accumulate_twin_sources<F: Accumulator>(g: &Graph, classes: &[Vec<usize>]) -> Option<Vec<Rational>> {
    let n = g.order();
    let mut class_of = vec![0; n];
    for (c, class) in classes.iter().enumerate() {
        for &v in class {
            class_of[v] = c;
        }
    }
    let mut ws = Workspace::<F>::new(n);
    let mut totals = vec![F::zero(); n];
    for (c, class) in classes.iter().enumerate() {
        let rep = class[0];
        ws.single_source(g, rep)?;
        // Every other source in the class sees the same dependencies up to a swap.
        let inside = match class.get(1) {
            Some(&other) => ws.delta[other].scale(class.len() - 1)?,
            None => F::zero(),
        };
        for v in g.vertices() {
            let add = if class_of[v] == c {
                inside.clone()
            } else {
                ws.delta[v].scale(class.len())?
            };
            totals[v] = totals[v].add(&add)?;
        }
    }
    halve(totals)
}

/// Same values as [`betweenness_exact`], with one accumulation pass per twin
/// class instead of one per vertex. Blow-ups with homogeneous parts collapse to
/// roughly one pass per part.
pub fn betweenness_twin_reduced(g: &Graph) -> BetweennessProfile {
    let classes = twin_classes(g);
    let values = accumulate_twin_sources::<Small>(g, &classes)
        .or_else(|| accumulate_twin_sources::<BigRational>(g, &classes))
        .expect("arbitrary-precision accumulation cannot overflow");
    BetweennessProfile::new(values)
}

/// All-pairs distances and shortest-path counts, built layer by layer.
#[derive(Debug, Clone)]
pub struct PathTable {
    dist: Vec<Vec<Option<usize>>>,
    count: Vec<Vec<BigUint>>,
}

impl PathTable {
    pub fn new(g: &Graph) -> Self {
        let n = g.order();
        let mut dist = vec![vec![None; n]; n];
        let mut count = vec![vec![BigUint::zero(); n]; n];
        for s in 0..n {
            let (d, c) = (&mut dist[s], &mut count[s]);
            d[s] = Some(0);
            c[s] = BigUint::one();
            let mut layer = vec![s];
            let mut depth = 0;
            while !layer.is_empty() {
                depth += 1;
                let mut next: Vec<usize> = Vec::new();
                for &x in &layer {
                    for &y in g.neighbors(x) {
                        if d[y].is_none() {
                            d[y] = Some(depth);
                            next.push(y);
                        }
                    }
                }
                for &y in &next {
                    let paths: BigUint = g
                        .neighbors(y)
                        .iter()
                        .filter(|&&x| d[x] == Some(depth - 1))
                        .map(|&x| c[x].clone())
                        .sum();
                    c[y] = paths;
                }
                layer = next;
            }
        }
        PathTable { dist, count }
    }

    pub fn distance(&self, u: usize, v: usize) -> Option<usize> {
        self.dist[u][v]
    }

    /// Number of shortest `u`-`v` paths (0 if disconnected).
    pub fn paths(&self, u: usize, v: usize) -> &BigUint {
        &self.count[u][v]
    }

    /// Number of shortest `u`-`v` paths through `x` (as an interior vertex).
    pub fn paths_through(&self, u: usize, v: usize, x: usize) -> BigUint {
        if x == u || x == v {
            return BigUint::zero();
        }
        match (self.dist[u][x], self.dist[x][v], self.dist[u][v]) {
            (Some(a), Some(b), Some(d)) if a + b == d => &self.count[u][x] * &self.count[x][v],
            _ => BigUint::zero(),
        }
    }

    /// `σ_{u,v}(x) / σ_{u,v}`, or 0 when `u` and `v` are disconnected.
    pub fn pair_share(&self, u: usize, v: usize, x: usize) -> Rational {
        let through = self.paths_through(u, v, x);
        if through.is_zero() {
            return Rational::zero();
        }
        BigRational::new(BigInt::from(through), BigInt::from(self.count[u][v].clone())).into()
    }
}

/// Betweenness by direct pair enumeration over an all-pairs path table.
pub fn betweenness_oracle(g: &Graph) -> BetweennessProfile {
    let n = g.order();
    let table = PathTable::new(g);
    let values = (0..n)
        .map(|x| {
            let mut total = Rational::zero();
            for u in 0..n {
                for v in u + 1..n {
                    if u != x && v != x {
                        total += table.pair_share(u, v, x);
                    }
                }
            }
            total
        })
        .collect();
    BetweennessProfile::new(values)
}

/// Exact uniformity verdict, using [`betweenness_exact`].
pub fn is_betweenness_uniform(g: &Graph) -> Uniformity {
    betweenness_exact(g).verdict()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, petersen, GraphKind};

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn family(kind: GraphKind, n: usize) -> Graph {
        generate(kind, n).unwrap()
    }

    #[test]
    fn complete_graphs_are_zero() {
        for n in 2..7 {
            let p = betweenness_exact(&family(GraphKind::Complete, n));
            assert!(p.values().iter().all(Rational::is_zero));
        }
    }

    #[test]
    fn path_values() {
        let p3 = betweenness_exact(&family(GraphKind::Path, 3));
        assert_eq!(p3.values(), &[r(0, 1), r(1, 1), r(0, 1)]);
        // P_4: the inner vertices each lie on the paths 0-2, 0-3 (resp. 1-3, 0-3).
        let p4 = betweenness_oracle(&family(GraphKind::Path, 4));
        assert_eq!(p4.values(), &[r(0, 1), r(2, 1), r(2, 1), r(0, 1)]);
        assert_eq!(betweenness_exact(&family(GraphKind::Path, 4)), p4);
    }

    #[test]
    fn cycle_values() {
        // C_4: each opposite pair has two shortest paths, one through each other vertex.
        let c4 = betweenness_exact(&family(GraphKind::Cycle, 4));
        assert_eq!(c4.common_value(), Some(&r(1, 2)));
        // C_5: every vertex is the midpoint of exactly one distance-2 pair.
        let c5 = betweenness_oracle(&family(GraphKind::Cycle, 5));
        assert_eq!(c5.common_value(), Some(&r(1, 1)));
    }

    #[test]
    fn single_vertex_and_disconnected() {
        assert_eq!(betweenness_oracle(&Graph::empty(1)).values(), &[r(0, 1)]);
        assert_eq!(betweenness_exact(&Graph::empty(1)).values(), &[r(0, 1)]);
        let two_paths = Graph::from_edges(6, [(0, 1), (1, 2), (3, 4), (4, 5)]).unwrap();
        let expected = [r(0, 1), r(1, 1), r(0, 1), r(0, 1), r(1, 1), r(0, 1)];
        assert_eq!(betweenness_exact(&two_paths).values(), &expected[..]);
        assert_eq!(betweenness_oracle(&two_paths).values(), &expected[..]);
    }

    #[test]
    fn petersen_is_uniform() {
        let verdict = is_betweenness_uniform(&petersen());
        assert!(verdict.uniform);
        // 30 non-adjacent pairs, each with a unique midpoint, spread over 10 vertices.
        assert_eq!(verdict.common, Some(r(3, 1)));
    }

    #[test]
    fn uniformity_verdicts() {
        let c4 = is_betweenness_uniform(&family(GraphKind::Cycle, 4));
        assert_eq!(
            c4,
            Uniformity {
                uniform: true,
                common: Some(r(1, 2))
            }
        );
        let p4 = is_betweenness_uniform(&family(GraphKind::Path, 4));
        assert_eq!(
            p4,
            Uniformity {
                uniform: false,
                common: None
            }
        );
        let k5 = is_betweenness_uniform(&family(GraphKind::Complete, 5));
        assert_eq!(k5.common, Some(Rational::zero()));
    }

    #[test]
    fn twin_classes_of_blowup_like_graph() {
        // K_{2,3}: the two sides are false-twin classes.
        let g = Graph::from_fn(5, |u, v| (u < 2) != (v < 2));
        assert_eq!(twin_classes(&g), vec![vec![0, 1], vec![2, 3, 4]]);
        assert_eq!(betweenness_twin_reduced(&g), betweenness_exact(&g));
        // K_4: one true-twin class.
        assert_eq!(twin_classes(&family(GraphKind::Complete, 4)).len(), 1);
    }

    #[test]
    fn json_shape() {
        let json = serde_json::to_value(betweenness_exact(&family(GraphKind::Cycle, 4))).unwrap();
        assert_eq!(
            json,
            serde_json::json!({"n": 4, "values": ["1/2", "1/2", "1/2", "1/2"], "uniform": true, "common": "1/2"})
        );
        let p3 = serde_json::to_value(betweenness_exact(&family(GraphKind::Path, 3))).unwrap();
        assert_eq!(p3["common"], serde_json::Value::Null);
        assert_eq!(p3["values"], serde_json::json!(["0", "1", "0"]));
    }

    #[test]
    fn overflow_falls_back_to_big_rationals() {
        // A long chain of 4-cycles has 2^k shortest paths end to end; beyond 127
        // doublings the i128 route must give way without changing the answer.
        let k = 130;
        let n = 3 * k + 1;
        let mut edges = Vec::new();
        for i in 0..k {
            let (a, b, c, d) = (3 * i, 3 * i + 1, 3 * i + 2, 3 * i + 3);
            edges.extend([(a, b), (a, c), (b, d), (c, d)]);
        }
        let g = Graph::from_edges(n, edges).unwrap();
        assert!(accumulate_all_sources::<Small>(&g).is_none());
        let exact = betweenness_exact(&g);
        // Interior vertices averaged over shortest paths: d(u, v) - 1 per pair.
        let table = PathTable::new(&g);
        let expected: usize = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .map(|(u, v)| table.distance(u, v).unwrap() - 1)
            .sum();
        assert_eq!(exact.total(), Rational::from(expected));
        // A cut vertex between diamonds carries every straddling pair, plus half of
        // each of the two pairs of diamond middles it touches.
        let left = 3 * 65;
        assert_eq!(exact.get(3 * 65), &Rational::from(left * (n - left - 1) + 1));
    }

    #[test]
    fn both_accumulators_agree() {
        let g = petersen();
        assert_eq!(
            accumulate_all_sources::<Small>(&g),
            accumulate_all_sources::<BigRational>(&g)
        );
    }
}
