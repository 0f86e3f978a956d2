//! Executable checks for the published claims, at two budget levels.
//!
//! Each criterion returns a [`CriterionResult`]; the blow-ups found uniform and
//! the empty-search claims made along the way are collected in a
//! [`SanityLog`] that criterion 11 audits once the others have run.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::betweenness::{betweenness_exact, betweenness_oracle};
use crate::blowup::{blow_up, BlowupSpec, PartDescriptor};
use crate::constructions::{
    check_construction, p2_clique_spec, p3_independent_spec, p4_infeasibility_check, star_spec, P4SizeTuple,
};
use crate::graph::{enumerate_graphs, enumerate_trees, generate, is_isomorphic, Graph, GraphKind};
use crate::rational::Rational;
use crate::search::{
    explore_cut_conjecture, part_options, search_blowups, verify_lemma_clique, verify_lemma_independent,
    verify_tree_theorem, PartFamily, SearchBudget, SearchOptions, SearchReport, TreeOutcome,
};

pub const CRITERIA: u8 = 12;
const RANDOM_SPECS: usize = 200;
const RANDOM_SEED: u64 = 0x6275_6e69;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Level {
    Quick,
    Full,
}

impl Level {
    /// Largest part size for the `P_4` search.
    pub fn p4_part_size(self) -> usize {
        match self {
            Level::Quick => 4,
            Level::Full => 6,
        }
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Level::Quick => "quick",
            Level::Full => "full",
        })
    }
}

impl FromStr for Level {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "quick" => Ok(Level::Quick),
            "full" => Ok(Level::Full),
            other => Err(format!("unknown level {other:?}, expected quick or full")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed_secs: f64,
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:>2}  {}  {:<34} {:>8.2}s  {}",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.elapsed_secs,
            self.detail
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub level: Level,
    pub results: Vec<CriterionResult>,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.results.iter().all(|r| r.passed)
    }
}

/// Evidence gathered for criterion 11.
#[derive(Debug, Default, Clone)]
pub struct SanityLog {
    pub uniform_checked: usize,
    pub not_two_connected: Vec<String>,
    pub empty_claims: usize,
    pub unexhausted_empty_claims: Vec<String>,
}

impl SanityLog {
    /// Records a graph found betweenness-uniform; only connected graphs on at
    /// least three vertices are subject to the 2-connectivity rule.
    pub fn record_uniform(&mut self, label: impl fmt::Display, g: &Graph) {
        if g.order() >= 3 && g.is_connected() {
            self.uniform_checked += 1;
            if !g.is_two_connected() {
                self.not_two_connected.push(label.to_string());
            }
        }
    }

    /// Records a search report: its hits as uniform graphs, and its claim of
    /// emptiness if it found nothing.
    pub fn record_search(&mut self, report: &SearchReport) {
        for spec in &report.found {
            self.record_uniform(spec, blow_up(spec).graph());
        }
        if report.found.is_empty() {
            self.empty_claims += 1;
            if !report.exhausted {
                self.unexhausted_empty_claims.push(report.base.to_graph6());
            }
        }
    }
}

type Outcome = Result<(bool, String), String>;

fn fail_list(failures: &[String], limit: usize) -> String {
    let shown: Vec<&str> = failures.iter().take(limit).map(String::as_str).collect();
    let more = failures.len().saturating_sub(limit);
    if more > 0 {
        format!("{} (+{more} more)", shown.join("; "))
    } else {
        shown.join("; ")
    }
}

fn verdict(failures: Vec<String>, ok: String) -> Outcome {
    if failures.is_empty() {
        Ok((true, ok))
    } else {
        Ok((
            false,
            format!("{} failures: {}", failures.len(), fail_list(&failures, 5)),
        ))
    }
}

fn path(n: usize) -> Graph {
    generate(GraphKind::Path, n).expect("path order is positive")
}

fn criterion_1(log: &mut SanityLog) -> Outcome {
    let mut classes = vec![Graph::empty(0)];
    for n in 1..=7 {
        classes.extend(enumerate_graphs(n).map_err(|e| e.to_string())?);
    }
    let mut failures = Vec::new();
    for g in &classes {
        let exact = betweenness_exact(g);
        if exact != betweenness_oracle(g) {
            failures.push(g.to_graph6());
        }
        if exact.common_value().is_some() {
            log.record_uniform(g.to_graph6(), g);
        }
    }
    verdict(failures, format!("{} classes agree", classes.len()))
}

fn criterion_2(log: &mut SanityLog) -> Outcome {
    let spec = BlowupSpec::new(
        path(3),
        vec![
            PartDescriptor::clique(1),
            PartDescriptor::independent(2),
            PartDescriptor::clique(1),
        ],
    )
    .map_err(|e| e.to_string())?;
    let g = blow_up(&spec).into_graph();
    let c4 = generate(GraphKind::Cycle, 4).expect("C_4");
    let iso = is_isomorphic(&g, &c4);
    let common = betweenness_oracle(&g).common_value().cloned();
    if common.is_some() {
        log.record_uniform(&spec, &g);
    }
    let ok = iso && common == Some(Rational::new(1, 2));
    let shown = common.map_or_else(|| "none".to_string(), |c| c.to_string());
    Ok((ok, format!("isomorphic to C4: {iso}, common value {shown}")))
}

fn criterion_3(log: &mut SanityLog) -> Outcome {
    let mut failures = Vec::new();
    for a in 1..=6 {
        for b in 1..=6 {
            let spec = p3_independent_spec(a, b).map_err(|e| e.to_string())?;
            let g = blow_up(&spec).into_graph();
            if betweenness_exact(&g).common_value().is_some() {
                log.record_uniform(&spec, &g);
            } else {
                failures.push(spec.to_string());
            }
        }
    }
    verdict(failures, "36 of 36 uniform".into())
}

fn criterion_4(log: &mut SanityLog) -> Outcome {
    let mut failures = Vec::new();
    let mut positives = 0;
    let mut controls = 0;
    for k in 1..=4u32 {
        for code in 0..4usize.pow(k) {
            let sizes: Vec<usize> = (0..k).map(|i| code / 4usize.pow(i) % 4 + 1).collect();
            let spec = star_spec(&sizes).map_err(|e| e.to_string())?;
            let g = blow_up(&spec).into_graph();
            positives += 1;
            if betweenness_exact(&g).common_value().is_some() {
                log.record_uniform(&spec, &g);
            } else {
                failures.push(spec.to_string());
            }
            let centre: usize = sizes.iter().sum();
            for perturbed in [centre - 1, centre + 1] {
                if perturbed == 0 {
                    continue;
                }
                let mut parts = spec.parts().to_vec();
                *parts.last_mut().expect("centre part") = PartDescriptor::independent(perturbed);
                let control = BlowupSpec::new(spec.base().clone(), parts).map_err(|e| e.to_string())?;
                controls += 1;
                if check_construction(&control).uniform {
                    failures.push(format!("control {control} is uniform"));
                }
            }
        }
    }
    verdict(
        failures,
        format!("{positives} stars uniform, {controls} perturbed controls non-uniform"),
    )
}

fn criterion_5(log: &mut SanityLog) -> Outcome {
    let mut failures = Vec::new();
    for m in 1..=8 {
        let spec = p2_clique_spec(m).map_err(|e| e.to_string())?;
        let g = blow_up(&spec).into_graph();
        match betweenness_exact(&g).common_value() {
            Some(c) if c.is_zero() => log.record_uniform(&spec, &g),
            _ => failures.push(spec.to_string()),
        }
    }
    verdict(failures, "m = 1..8 uniform with common value 0".into())
}

/// Seeded corpus: tree bases on 2 to 5 vertices, parts on at most three
/// vertices drawn from every isomorphism class.
pub fn random_corpus(count: usize, seed: u64) -> Vec<BlowupSpec> {
    let trees: Vec<Graph> = (2..=5)
        .flat_map(|n| enumerate_trees(n).expect("tree order within cap"))
        .collect();
    let options = part_options(PartFamily::AllGraphs, 3).expect("small part family");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let base = trees[rng.random_range(0..trees.len())].clone();
            let parts = (0..base.order())
                .map(|_| options[rng.random_range(0..options.len())].clone())
                .collect();
            BlowupSpec::new(base, parts).expect("trees are connected")
        })
        .collect()
}

fn criterion_6(corpus: &[BlowupSpec], log: &mut SanityLog) -> Outcome {
    let mut failures = Vec::new();
    let mut vertices = 0;
    for spec in corpus {
        let bg = blow_up(spec);
        let profile = betweenness_exact(bg.graph());
        for d in bg.decompose_all() {
            vertices += 1;
            if &d.total() != profile.get(d.vertex) {
                failures.push(format!("{spec} vertex {}", d.vertex));
            }
        }
        if profile.common_value().is_some() {
            log.record_uniform(spec, bg.graph());
        }
    }
    verdict(
        failures,
        format!("{} specs, {vertices} vertices decompose exactly", corpus.len()),
    )
}

fn criterion_7(corpus: &[BlowupSpec]) -> Outcome {
    let mut failures = Vec::new();
    let (mut local_checks, mut exact_global, mut bounded_global) = (0, 0, 0);
    for spec in corpus {
        let bg = blow_up(spec);
        let base = spec.base();
        let decomposition = bg.decompose_all();
        for d in &decomposition {
            for (&j, value) in &d.neighbor_locals {
                local_checks += 1;
                let closed = bg
                    .closed_form_neighbor_contribution(d.part, j)
                    .map_err(|e| e.to_string())?;
                if &closed != value {
                    failures.push(format!("{spec}: B^H{j}({}) {value} vs closed form {closed}", d.vertex));
                }
            }
        }
        for leaf in base.vertices().filter(|&v| base.degree(v) == 1) {
            let second = base.neighbors(leaf)[0];
            let branching = base.degree(second) > 2;
            for &y in bg.part_vertices(second) {
                let global = &decomposition[y].global_part;
                if branching {
                    // The formula counts only the leaf's global pairs routed through the
                    // neighbour part; further branches add load, so it is a lower bound.
                    let h1 = spec.part(leaf).size();
                    let h2 = spec.part(second).size();
                    let rest = bg.graph().order() - h1 - h2;
                    let bound = Rational::from(h1 * rest) / Rational::from(h2);
                    bounded_global += 1;
                    if &bound > global {
                        failures.push(format!("{spec}: B^G({y}) {global} below {bound}"));
                    }
                } else {
                    exact_global += 1;
                    let formula = bg.global_leaf_neighbor_formula(leaf, y).map_err(|e| e.to_string())?;
                    if &formula != global {
                        failures.push(format!("{spec}: B^G({y}) {global} vs formula {formula}"));
                    }
                }
            }
        }
    }
    verdict(
        failures,
        format!(
            "{local_checks} neighbour-local closed forms, {exact_global} exact B^G(y), \
             {bounded_global} lower-bound B^G(y) at branching parts"
        ),
    )
}

fn criterion_8() -> Outcome {
    let mut failures = Vec::new();
    let mut points = 0;
    for m in 1..=4 {
        for p in 1..=3 {
            for q in 1..=3 {
                for r in 1..=3 {
                    for check in [
                        verify_lemma_independent(m, p, q, r).map_err(|e| e.to_string())?,
                        verify_lemma_clique(m, p, q, r).map_err(|e| e.to_string())?,
                    ] {
                        points += 1;
                        if !check.holds {
                            failures.push(format!(
                                "m={m} {}: extreme {} < max {} at {:?}",
                                check.context, check.extreme_delta, check.max_delta, check.maximizers
                            ));
                        }
                    }
                }
            }
        }
    }
    verdict(failures, format!("{points} grid points hold"))
}

fn criterion_9(level: Level, log: &mut SanityLog) -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut tuples = 0u64;
    for a in 1..=20 {
        for b in 1..=20 {
            for c in 1..=20 {
                for d in 1..=20 {
                    tuples += 1;
                    let t = P4SizeTuple::new(a, b, c, d).map_err(|e| e.to_string())?;
                    let r = p4_infeasibility_check(t);
                    if !r.combined_violated || r.both_hold() {
                        failures.push(format!("{t:?}"));
                    }
                }
            }
        }
    }
    let inequality_secs = start.elapsed().as_secs_f64();
    let size = level.p4_part_size();
    let report = search_blowups(&path(4), &SearchBudget::ik(size)).map_err(|e| e.to_string())?;
    log.record_search(&report);
    if !report.exhausted || !report.found.is_empty() {
        failures.push(format!(
            "P4 search size {size}: exhausted {}, found {}",
            report.exhausted,
            report.found.len()
        ));
    }
    if inequality_secs >= 5.0 {
        failures.push(format!("inequality sweep took {inequality_secs:.2}s"));
    }
    verdict(
        failures,
        format!(
            "{tuples} tuples violate in {inequality_secs:.2}s; P4 IK size {size}: {} examined, 0 found, exhausted",
            report.specs_examined
        ),
    )
}

fn criterion_10(log: &mut SanityLog) -> Outcome {
    let mut failures = Vec::new();
    let mut searched = 0;
    for (n_max, budget) in [(6, SearchBudget::ik(4)), (5, SearchBudget::all_graphs(3))] {
        let reports = verify_tree_theorem(n_max, &budget, SearchOptions::default()).map_err(|e| e.to_string())?;
        for r in &reports {
            match &r.outcome {
                TreeOutcome::Searched { report } => {
                    searched += 1;
                    log.record_search(report);
                }
                TreeOutcome::Constructible { spec, .. } => log.record_uniform(spec, blow_up(spec).graph()),
                TreeOutcome::TooSmall => {}
            }
            if !r.consistent() {
                failures.push(format!(
                    "{} (n={}, diameter {})",
                    r.tree.to_graph6(),
                    r.order,
                    r.diameter
                ));
            }
        }
    }
    verdict(
        failures,
        format!("{searched} tree searches exhausted with no uniform blow-up"),
    )
}

fn criterion_11(log: &SanityLog) -> Outcome {
    let mut failures: Vec<String> = log
        .not_two_connected
        .iter()
        .map(|s| format!("{s} not 2-connected"))
        .collect();
    failures.extend(
        log.unexhausted_empty_claims
            .iter()
            .map(|s| format!("empty claim on {s} without exhaustion")),
    );
    if log.uniform_checked == 0 || log.empty_claims == 0 {
        failures.push("no evidence collected; run the other criteria first".into());
    }
    verdict(
        failures,
        format!(
            "{} uniform graphs 2-connected, {} empty claims exhausted",
            log.uniform_checked, log.empty_claims
        ),
    )
}

fn criterion_12(log: &mut SanityLog) -> Outcome {
    let reports =
        explore_cut_conjecture(5, &SearchBudget::ik(4), SearchOptions::default()).map_err(|e| e.to_string())?;
    let mut unexhausted = Vec::new();
    let mut counterexamples = Vec::new();
    for r in &reports {
        log.record_search(&r.report);
        if !r.report.exhausted {
            unexhausted.push(r.graph.to_graph6());
        }
        counterexamples.extend(r.report.found.iter().map(ToString::to_string));
    }
    let mut detail = format!("{} graphs searched, {} hits", reports.len(), counterexamples.len());
    if !counterexamples.is_empty() {
        detail.push_str(&format!("; COUNTEREXAMPLES: {}", fail_list(&counterexamples, 5)));
    }
    if !unexhausted.is_empty() {
        return Ok((false, format!("{detail}; not exhausted on {}", unexhausted.join(", "))));
    }
    Ok((true, detail))
}

pub fn criterion_name(id: u8) -> &'static str {
    match id {
        1 => "oracle equivalence, n <= 7",
        2 => "P3[K1,I2,K1] is C4",
        3 => "P3[I_a,I_a+b,I_b] family",
        4 => "star family and controls",
        5 => "P2[K_m,K_m] family",
        6 => "decomposition identity",
        7 => "closed forms vs decomposition",
        8 => "extreme parts maximise delta",
        9 => "P4 infeasibility",
        10 => "trees of diameter >= 3",
        11 => "2-connectivity and exhaustion",
        12 => "cut-vertex exploration",
        _ => "unknown",
    }
}

/// Runs the requested criteria (all when `only` is empty) in an order that
/// lets criterion 11 see the evidence of the others. Results are in id order.
pub fn run_verification(level: Level, only: &[u8], mut progress: impl FnMut(&CriterionResult)) -> VerificationReport {
    let wanted = |id: u8| only.is_empty() || only.contains(&id);
    let mut log = SanityLog::default();
    let mut corpus: Option<Vec<BlowupSpec>> = None;
    let mut results = Vec::new();
    let order = [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 11];
    for id in order.into_iter().filter(|&id| wanted(id)) {
        let start = Instant::now();
        let outcome = match id {
            1 => criterion_1(&mut log),
            2 => criterion_2(&mut log),
            3 => criterion_3(&mut log),
            4 => criterion_4(&mut log),
            5 => criterion_5(&mut log),
            6 => criterion_6(
                corpus.get_or_insert_with(|| random_corpus(RANDOM_SPECS, RANDOM_SEED)),
                &mut log,
            ),
            7 => criterion_7(corpus.get_or_insert_with(|| random_corpus(RANDOM_SPECS, RANDOM_SEED))),
            8 => criterion_8(),
            9 => criterion_9(level, &mut log),
            10 => criterion_10(&mut log),
            11 => criterion_11(&log),
            12 => criterion_12(&mut log),
            _ => unreachable!(),
        };
        let (passed, detail) = outcome.unwrap_or_else(|e| (false, format!("error: {e}")));
        let result = CriterionResult {
            id,
            name: criterion_name(id),
            passed,
            detail,
            elapsed_secs: start.elapsed().as_secs_f64(),
        };
        progress(&result);
        results.push(result);
    }
    results.sort_by_key(|r| r.id);
    VerificationReport { level, results }
}
