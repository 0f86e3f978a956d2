//! Bounded exhaustive search for betweenness-uniform blow-ups.
//!
//! Candidate part assignments are indexed in mixed radix (first base vertex
//! most significant) and evaluated in fixed-size chunks, each chunk in
//! parallel. Hits are collected in index order, so the report does not depend
//! on the number of worker threads. A time limit is only checked between
//! chunks; when it fires the report is marked as not exhausted.

use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::betweenness::{betweenness_oracle, betweenness_twin_reduced};
use crate::blowup::{blow_up, BlowupError, BlowupSpec, PartDescriptor};
use crate::constructions::{check_construction, p2_clique_spec};
use crate::graph::{articulation_points, enumerate_graphs, enumerate_trees, Graph, GraphError};
use crate::rational::Rational;

/// Largest part size for which every isomorphism class is tried.
pub const MAX_ALL_GRAPHS_PART: usize = 5;
pub const MAX_TREE_THEOREM_ORDER: usize = 7;
pub const MAX_CUT_CONJECTURE_ORDER: usize = 6;
const CHUNK: usize = 512;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("max_part_size must be at least 1")]
    ZeroPartSize,
    #[error("the all-graphs family supports parts of at most {MAX_ALL_GRAPHS_PART} vertices, got {0}")]
    AllGraphsTooLarge(usize),
    #[error("part size {size} exceeds the enumeration cap {cap}")]
    EnumerationCap { size: usize, cap: usize },
    #[error("order {n} exceeds the cap {cap}")]
    OrderCap { n: usize, cap: usize },
    #[error(transparent)]
    Blowup(#[from] BlowupError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("{spec} was reported uniform but the pair-enumeration oracle disagrees")]
    ReverificationFailed { spec: String },
    #[error("{spec} is betweenness-uniform on {order} vertices but not 2-connected")]
    SanityViolation { spec: String, order: usize },
    #[error("could not start a worker pool: {0}")]
    ThreadPool(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PartFamily {
    /// `I_m` and `K_m` for each size.
    IkOnly,
    /// Every isomorphism class on each size.
    AllGraphs,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchBudget {
    pub part_family: PartFamily,
    pub max_part_size: usize,
    pub max_total_vertices: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub time_limit_secs: Option<f64>,
}

impl SearchBudget {
    pub fn new(part_family: PartFamily, max_part_size: usize) -> Self {
        SearchBudget {
            part_family,
            max_part_size,
            max_total_vertices: usize::MAX,
            time_limit_secs: None,
        }
    }

    pub fn ik(max_part_size: usize) -> Self {
        SearchBudget::new(PartFamily::IkOnly, max_part_size)
    }

    pub fn all_graphs(max_part_size: usize) -> Self {
        SearchBudget::new(PartFamily::AllGraphs, max_part_size)
    }

    pub fn with_max_total_vertices(mut self, cap: usize) -> Self {
        self.max_total_vertices = cap;
        self
    }

    pub fn with_time_limit(mut self, secs: f64) -> Self {
        self.time_limit_secs = Some(secs);
        self
    }

    pub fn validate(&self) -> Result<(), SearchError> {
        if self.max_part_size == 0 {
            return Err(SearchError::ZeroPartSize);
        }
        if self.part_family == PartFamily::AllGraphs && self.max_part_size > MAX_ALL_GRAPHS_PART {
            return Err(SearchError::AllGraphsTooLarge(self.max_part_size));
        }
        Ok(())
    }
}

/// Execution knobs that do not change the mathematical result.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Worker threads; `None` uses the ambient rayon pool.
    pub jobs: Option<usize>,
    /// Skip size-1 parts on cut vertices of the base: the single vertex stays a
    /// cut vertex of the blow-up, which then cannot be uniform.
    pub prune_singletons: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            jobs: None,
            prune_singletons: true,
        }
    }
}

impl SearchOptions {
    pub fn with_jobs(jobs: usize) -> Self {
        SearchOptions {
            jobs: Some(jobs),
            ..SearchOptions::default()
        }
    }
}

fn run_with_jobs<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T, SearchError> {
    match jobs {
        None => Ok(f()),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build()
                .map_err(|e| SearchError::ThreadPool(e.to_string()))?;
            Ok(pool.install(f))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchReport {
    #[serde(with = "graph6_field")]
    pub base: Graph,
    pub budget: SearchBudget,
    pub found: Vec<BlowupSpec>,
    pub exhausted: bool,
    pub specs_examined: u64,
    /// Assignments removed by the singleton rule.
    pub specs_pruned: u64,
    /// Assignments over `max_total_vertices`.
    pub specs_oversize: u64,
}

impl SearchReport {
    /// `base-graph6 \t examined \t found \t exhausted`.
    pub fn summary_tsv(&self) -> String {
        format!(
            "{}\t{}\t{}\t{}",
            self.base.to_graph6(),
            self.specs_examined,
            self.found.len(),
            self.exhausted
        )
    }
}

pub(crate) mod graph6_field {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::graph::Graph;

    pub fn serialize<S: Serializer>(g: &Graph, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&g.to_graph6())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Graph, D::Error> {
        let text = String::deserialize(d)?;
        Graph::parse_graph6(&text).map_err(serde::de::Error::custom)
    }
}

/// Part choices of each size, in search order: sizes ascending; within a size
/// `I_m`, then `K_m`, then (for the all-graphs family) the remaining classes
/// in canonical order. `I_1` stands for the single-vertex part.
pub fn part_options(family: PartFamily, max_part_size: usize) -> Result<Vec<PartDescriptor>, SearchError> {
    let mut options = vec![PartDescriptor::independent(1)];
    for size in 2..=max_part_size {
        options.push(PartDescriptor::independent(size));
        options.push(PartDescriptor::clique(size));
        if family == PartFamily::AllGraphs {
            let classes = enumerate_graphs(size).map_err(|_| SearchError::EnumerationCap {
                size,
                cap: crate::graph::MAX_GRAPH_ORDER,
            })?;
            options.extend(
                classes
                    .into_iter()
                    .filter(|g| g.size() != 0 && !g.is_complete())
                    .map(PartDescriptor::explicit),
            );
        }
    }
    Ok(options)
}

enum Outcome {
    Oversize,
    Rejected,
    Uniform(BlowupSpec),
}

fn evaluate(base: &Graph, choice: &[&PartDescriptor], cap: usize) -> Outcome {
    let total: usize = choice.iter().map(|p| p.size()).sum();
    if total > cap {
        return Outcome::Oversize;
    }
    let spec = BlowupSpec::new(base.clone(), choice.iter().map(|&p| p.clone()).collect())
        .expect("search only builds valid specs");
    let bg = blow_up(&spec);
    if betweenness_twin_reduced(bg.graph()).common_value().is_some() {
        Outcome::Uniform(spec)
    } else {
        Outcome::Rejected
    }
}

/// Re-checks a hit with the pair-enumeration oracle and the 2-connectivity
/// requirement. Returns the common value.
pub fn reverify_hit(spec: &BlowupSpec) -> Result<Rational, SearchError> {
    let bg = blow_up(spec);
    let profile = betweenness_oracle(bg.graph());
    let common = profile
        .common_value()
        .cloned()
        .ok_or_else(|| SearchError::ReverificationFailed { spec: spec.to_string() })?;
    let order = bg.graph().order();
    if order >= 3 && !bg.graph().is_two_connected() {
        return Err(SearchError::SanityViolation {
            spec: spec.to_string(),
            order,
        });
    }
    Ok(common)
}

/// Enumerates every part assignment within `budget` and returns the ones whose
/// blow-up is betweenness-uniform.
pub fn search_blowups(base: &Graph, budget: &SearchBudget) -> Result<SearchReport, SearchError> {
    search_blowups_with(base, budget, SearchOptions::default())
}

pub fn search_blowups_with(
    base: &Graph,
    budget: &SearchBudget,
    options: SearchOptions,
) -> Result<SearchReport, SearchError> {
    budget.validate()?;
    if base.order() < 2 {
        return Err(BlowupError::BaseTooSmall(base.order()).into());
    }
    if !base.is_connected() {
        return Err(BlowupError::BaseDisconnected.into());
    }
    let all = part_options(budget.part_family, budget.max_part_size)?;
    let cut = articulation_points(base);
    let per_vertex: Vec<Vec<&PartDescriptor>> = base
        .vertices()
        .map(|v| {
            let prune = options.prune_singletons && cut.contains(&v);
            all.iter().filter(|p| !(prune && p.size() == 1)).collect()
        })
        .collect();
    let unpruned_total: u128 = (0..base.order()).map(|_| all.len() as u128).product();
    let total: u128 = per_vertex.iter().map(|o| o.len() as u128).product();
    let total = u64::try_from(total).expect("search space fits in u64");
    let deadline = budget
        .time_limit_secs
        .map(|s| Instant::now() + Duration::from_secs_f64(s.max(0.0)));

    let decode = |mut index: u64| -> Vec<&PartDescriptor> {
        let mut choice = vec![per_vertex[0][0]; per_vertex.len()];
        for v in (0..per_vertex.len()).rev() {
            let radix = per_vertex[v].len() as u64;
            choice[v] = per_vertex[v][(index % radix) as usize];
            index /= radix;
        }
        choice
    };

    let (found, examined, oversize, exhausted) = run_with_jobs(options.jobs, || {
        let mut found = Vec::new();
        let mut examined = 0u64;
        let mut oversize = 0u64;
        let mut start = 0u64;
        while start < total {
            if deadline.is_some_and(|d| Instant::now() >= d) {
                return (found, examined, oversize, false);
            }
            let end = (start + CHUNK as u64).min(total);
            let outcomes: Vec<Outcome> = (start..end)
                .into_par_iter()
                .map(|i| evaluate(base, &decode(i), budget.max_total_vertices))
                .collect();
            for outcome in outcomes {
                match outcome {
                    Outcome::Oversize => oversize += 1,
                    Outcome::Rejected => examined += 1,
                    Outcome::Uniform(spec) => {
                        examined += 1;
                        found.push(spec);
                    }
                }
            }
            start = end;
        }
        (found, examined, oversize, true)
    })?;

    for spec in &found {
        reverify_hit(spec)?;
    }
    Ok(SearchReport {
        base: base.clone(),
        budget: budget.clone(),
        found,
        exhausted,
        specs_examined: examined,
        specs_pruned: u64::try_from(unpruned_total - total as u128).unwrap_or(u64::MAX),
        specs_oversize: oversize,
    })
}

/// Result of checking that one extreme part family maximises `Δ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaCheck {
    pub holds: bool,
    pub part_order: usize,
    /// Base `P_4` parts with the varying slot shown as `*`.
    pub context: String,
    /// `Δ` at the extreme family member (`I_m` or `K_m`).
    pub extreme_delta: Rational,
    pub max_delta: Rational,
    /// graph6 of every part graph attaining the maximum.
    pub maximizers: Vec<String>,
}

fn lemma_check(m: usize, slot: usize, extreme: &Graph, fixed: [PartDescriptor; 4]) -> Result<LemmaCheck, SearchError> {
    if m == 0 {
        return Err(SearchError::ZeroPartSize);
    }
    if m > MAX_ALL_GRAPHS_PART {
        return Err(SearchError::EnumerationCap {
            size: m,
            cap: MAX_ALL_GRAPHS_PART,
        });
    }
    let base = crate::graph::generate(crate::graph::GraphKind::Path, 4)?;
    let context = fixed
        .iter()
        .enumerate()
        .map(|(i, p)| if i == slot { "*".to_string() } else { p.to_string() })
        .collect::<Vec<_>>()
        .join(",");
    let mut rows = Vec::new();
    for h in enumerate_graphs(m)? {
        let mut parts = fixed.to_vec();
        parts[slot] = PartDescriptor::explicit(h.clone());
        let spec = BlowupSpec::new(base.clone(), parts)?;
        let delta = blow_up(&spec).delta_extremal(0)?.delta;
        rows.push((h, delta));
    }
    let max_delta = rows.iter().map(|(_, d)| d).max().expect("at least one class").clone();
    let extreme_code = crate::graph::canonical_code(extreme);
    let mut extreme_delta = None;
    let mut maximizers = Vec::new();
    for (h, d) in &rows {
        if crate::graph::canonical_code(h) == extreme_code {
            extreme_delta = Some(d.clone());
        }
        if *d == max_delta {
            maximizers.push(h.to_graph6());
        }
    }
    let extreme_delta = extreme_delta.expect("the extreme graph is among the classes");
    Ok(LemmaCheck {
        holds: extreme_delta == max_delta,
        part_order: m,
        context: format!("P4[{context}]"),
        extreme_delta,
        max_delta,
        maximizers,
    })
}

/// Over all `H_2` on `m` vertices in `P_4[K_a, H_2, I_c, K_d]`, does `I_m`
/// attain the largest `Δ`? Ties count as success.
pub fn verify_lemma_independent(m: usize, a: usize, c: usize, d: usize) -> Result<LemmaCheck, SearchError> {
    lemma_check(
        m,
        1,
        &Graph::empty(m),
        [
            PartDescriptor::clique(a),
            PartDescriptor::independent(m),
            PartDescriptor::independent(c),
            PartDescriptor::clique(d),
        ],
    )
}

/// Over all `H_1` on `m` vertices in `P_4[H_1, I_b, I_c, K_d]`, does `K_m`
/// attain the largest `Δ`? Ties count as success.
pub fn verify_lemma_clique(m: usize, b: usize, c: usize, d: usize) -> Result<LemmaCheck, SearchError> {
    lemma_check(
        m,
        0,
        &Graph::from_fn(m, |_, _| true),
        [
            PartDescriptor::clique(m),
            PartDescriptor::independent(b),
            PartDescriptor::independent(c),
            PartDescriptor::clique(d),
        ],
    )
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum TreeOutcome {
    /// A single vertex admits no blow-up.
    TooSmall,
    /// Diameter at most two: a known uniform construction, verified.
    Constructible { spec: BlowupSpec, common: Rational },
    /// Diameter at least three: exhaustive search result.
    Searched { report: SearchReport },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TreeReport {
    #[serde(with = "graph6_field")]
    pub tree: Graph,
    pub order: usize,
    pub diameter: usize,
    #[serde(flatten)]
    pub outcome: TreeOutcome,
}

impl TreeReport {
    /// True when the tree behaves as predicted: constructible for diameter at
    /// most two, and an exhausted empty search otherwise.
    pub fn consistent(&self) -> bool {
        match &self.outcome {
            TreeOutcome::TooSmall => self.order < 2,
            TreeOutcome::Constructible { .. } => self.diameter <= 2,
            TreeOutcome::Searched { report } => self.diameter >= 3 && report.exhausted && report.found.is_empty(),
        }
    }
}

/// Uniform blow-up of a tree of diameter at most two, in the tree's own labelling:
/// `K_2[K_2, K_2]` for an edge, otherwise the star with `I_1` leaves and `I_{k}` centre.
fn known_construction(tree: &Graph) -> Result<BlowupSpec, SearchError> {
    if tree.order() == 2 {
        return Ok(p2_clique_spec(2).expect("positive size"));
    }
    let leaves = tree.order() - 1;
    let parts = tree
        .vertices()
        .map(|v| {
            if tree.degree(v) == leaves {
                PartDescriptor::independent(leaves)
            } else {
                PartDescriptor::independent(1)
            }
        })
        .collect();
    Ok(BlowupSpec::new(tree.clone(), parts)?)
}

/// Classifies every tree on at most `n_max` vertices.
pub fn verify_tree_theorem(
    n_max: usize,
    budget: &SearchBudget,
    options: SearchOptions,
) -> Result<Vec<TreeReport>, SearchError> {
    if n_max > MAX_TREE_THEOREM_ORDER {
        return Err(SearchError::OrderCap {
            n: n_max,
            cap: MAX_TREE_THEOREM_ORDER,
        });
    }
    budget.validate()?;
    let mut reports = Vec::new();
    for n in 1..=n_max {
        for tree in enumerate_trees(n)? {
            let diameter = tree.diameter()?;
            let outcome = if n < 2 {
                TreeOutcome::TooSmall
            } else if diameter <= 2 {
                let spec = known_construction(&tree)?;
                let check = check_construction(&spec);
                let common = reverify_hit(&spec)?;
                debug_assert!(check.uniform);
                TreeOutcome::Constructible { spec, common }
            } else {
                TreeOutcome::Searched {
                    report: search_blowups_with(&tree, budget, options)?,
                }
            };
            reports.push(TreeReport {
                tree,
                order: n,
                diameter,
                outcome,
            });
        }
    }
    Ok(reports)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CutConjectureReport {
    #[serde(with = "graph6_field")]
    pub graph: Graph,
    pub diameter: usize,
    pub cut_vertices: Vec<usize>,
    pub report: SearchReport,
}

impl CutConjectureReport {
    /// A uniform blow-up of a graph with a cut vertex and diameter at least three.
    pub fn is_counterexample(&self) -> bool {
        !self.report.found.is_empty()
    }
}

/// Connected graphs on at most `n_max` vertices with a cut vertex and diameter
/// at least three.
pub fn cut_conjecture_universe(n_max: usize) -> Result<Vec<Graph>, SearchError> {
    if n_max > MAX_CUT_CONJECTURE_ORDER {
        return Err(SearchError::OrderCap {
            n: n_max,
            cap: MAX_CUT_CONJECTURE_ORDER,
        });
    }
    let mut out = Vec::new();
    for n in 4..=n_max {
        for g in enumerate_graphs(n)? {
            if g.is_connected() && !articulation_points(&g).is_empty() && g.diameter()? >= 3 {
                out.push(g);
            }
        }
    }
    Ok(out)
}

/// Searches every graph of [`cut_conjecture_universe`]. Hits are reported,
/// not treated as errors.
pub fn explore_cut_conjecture(
    n_max: usize,
    budget: &SearchBudget,
    options: SearchOptions,
) -> Result<Vec<CutConjectureReport>, SearchError> {
    budget.validate()?;
    cut_conjecture_universe(n_max)?
        .into_iter()
        .map(|g| {
            let report = search_blowups_with(&g, budget, options)?;
            Ok(CutConjectureReport {
                diameter: g.diameter()?,
                cut_vertices: articulation_points(&g),
                graph: g,
                report,
            })
        })
        .collect()
}
