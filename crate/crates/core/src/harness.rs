//! The theorem battery run over enumerated graphs.
//!
//! Each graph is checked independently against every applicable theorem;
//! per-graph outcomes are folded into one [`VerificationReport`] per
//! theorem. Work is spread over a rayon pool, and results are merged in
//! input order so reports do not depend on the worker count.

use std::fmt::Write as _;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::enumeration::{enumerate_connected_up_to, EnumerationError};
use crate::gcb::{build_gcb, decompose_triangle_free, validate_gcb_spec, Item8Reading};
use crate::graph::Graph;
use crate::io::to_graph6;
use crate::recognition::{
    check_bipartite_proposition, critical_triples_unchecked, is_2sc, is_2sc_by_distances, is_edge_maximal,
    is_edge_maximal_by_definition, is_edge_minimal_unchecked, sandwich,
};
use crate::reduction::{classify_edge_minimal_with_triangles, explore_orders, reduce_to_triangle_free, ReductionTrace};
use crate::sbic::verify_sbic;

/// Theorems checked by the battery, in report order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Theorem {
    /// Local degree/common-neighbour test agrees with radius = diameter = 2.
    Recognizer,
    /// Complement-star characterization equals definitional edge-maximality.
    EdgeMaximal,
    /// Edge-minimal with disconnected complement iff `K_{k,l}`, `k, l >= 2`.
    BipartiteProposition,
    /// Triangle-free 2-self-centered graphs are edge-minimal.
    TriangleFreeLemma,
    /// Edge-minimal graphs without critical triples are triangle-free.
    TriangleFreeLemmaConverse,
    /// Triangle-free graphs decompose and rebuild exactly.
    GcbRoundTrip,
    /// Critical-endpoint condition plus reduction equals edge-minimality.
    TriangleClassification,
    /// Each step of a successful default-order reduction removes at least
    /// one triangle and creates none.
    ReductionSteps,
    /// Edge-minimal subgraph and edge-maximal supergraph exist.
    Sandwich,
}

impl Theorem {
    pub const ALL: [Theorem; 9] = [
        Theorem::Recognizer,
        Theorem::EdgeMaximal,
        Theorem::BipartiteProposition,
        Theorem::TriangleFreeLemma,
        Theorem::TriangleFreeLemmaConverse,
        Theorem::GcbRoundTrip,
        Theorem::TriangleClassification,
        Theorem::ReductionSteps,
        Theorem::Sandwich,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Theorem::Recognizer => "recognizer",
            Theorem::EdgeMaximal => "edge-maximal",
            Theorem::BipartiteProposition => "bipartite-proposition",
            Theorem::TriangleFreeLemma => "triangle-free-lemma",
            Theorem::TriangleFreeLemmaConverse => "triangle-free-lemma-converse",
            Theorem::GcbRoundTrip => "gcb-round-trip",
            Theorem::TriangleClassification => "triangle-classification",
            Theorem::ReductionSteps => "reduction-steps",
            Theorem::Sandwich => "sandwich",
        }
    }

    /// Which graphs the theorem is checked on.
    pub fn domain(self) -> &'static str {
        match self {
            Theorem::Recognizer | Theorem::BipartiteProposition => "connected",
            Theorem::GcbRoundTrip => "triangle-free 2-self-centered",
            Theorem::TriangleClassification => "2-self-centered with a triangle",
            Theorem::ReductionSteps => "successful reductions",
            _ => "2-self-centered",
        }
    }

    /// Runs the check on one graph. `None` when the graph is outside the
    /// theorem's domain, otherwise the failure detail if any.
    pub fn check(self, g: &Graph, reading: Item8Reading) -> Option<Result<(), String>> {
        let two_sc = is_2sc(g);
        match self {
            Theorem::Recognizer => Some(check_recognizer(g)),
            Theorem::BipartiteProposition => Some(
                check_bipartite_proposition(g)
                    .then_some(())
                    .ok_or_else(|| "edge-minimality/complement and K_{k,l} sides disagree".to_string()),
            ),
            _ if !two_sc => None,
            Theorem::EdgeMaximal => Some(check_edge_maximal(g)),
            Theorem::TriangleFreeLemma => g.is_triangle_free().then(|| {
                is_edge_minimal_unchecked(g)
                    .then_some(())
                    .ok_or_else(|| "triangle-free but an edge is removable".to_string())
            }),
            Theorem::TriangleFreeLemmaConverse => {
                let applies = is_edge_minimal_unchecked(g) && critical_triples_unchecked(g).is_empty();
                applies.then(|| {
                    g.is_triangle_free()
                        .then_some(())
                        .ok_or_else(|| "edge-minimal without critical triples yet has a triangle".to_string())
                })
            }
            Theorem::GcbRoundTrip => g.is_triangle_free().then(|| check_gcb_round_trip(g, reading)),
            Theorem::TriangleClassification => (!g.is_triangle_free()).then(|| check_classification(g)),
            Theorem::ReductionSteps => {
                if g.is_triangle_free() {
                    return None;
                }
                let trace = reduce_to_triangle_free(g).ok()?;
                trace.succeeded.then(|| check_steps(&trace))
            }
            Theorem::Sandwich => Some(check_sandwich(g)),
        }
    }
}

fn check_recognizer(g: &Graph) -> Result<(), String> {
    let local = is_2sc(g);
    let metric = is_2sc_by_distances(g);
    if local == metric {
        Ok(())
    } else {
        Err(format!("local test says {local}, distances say {metric}"))
    }
}

fn check_edge_maximal(g: &Graph) -> Result<(), String> {
    let cert = is_edge_maximal(g).map_err(|e| e.to_string())?;
    let by_definition = is_edge_maximal_by_definition(g);
    if cert.is_edge_maximal == by_definition {
        Ok(())
    } else {
        Err(format!(
            "complement stars say {}, adding edges says {by_definition}",
            cert.is_edge_maximal
        ))
    }
}

fn check_gcb_round_trip(g: &Graph, reading: Item8Reading) -> Result<(), String> {
    let d = decompose_triangle_free(g).map_err(|e| e.to_string())?;
    let spec = &d.spec;
    let sbic = verify_sbic(&spec.x, &spec.witness).map_err(|e| e.to_string())?;
    if !sbic.passes() {
        return Err(format!("SBIC fails: {:?}", sbic.first_failure()));
    }
    let a_cover = spec.witness.a_masks().iter().fold(0, |m, s| m | s);
    let b_cover = spec.witness.b_masks().iter().fold(0, |m, s| m | s);
    if a_cover != spec.x.vertex_mask() || b_cover != spec.x.vertex_mask() {
        return Err("families do not cover X".into());
    }
    let validation = validate_gcb_spec(spec, reading);
    if !validation.passes() {
        return Err(validation.describe_failure().unwrap_or_default());
    }
    let built = build_gcb(spec, reading).map_err(|e| e.to_string())?;
    if built.edge_count() != spec.expected_edge_count() {
        return Err(format!(
            "built {} edges, formula gives {}",
            built.edge_count(),
            spec.expected_edge_count()
        ));
    }
    if g.relabel(&d.labeling()) != built {
        return Err("rebuilt graph differs under the returned labelling".into());
    }
    Ok(())
}

fn check_classification(g: &Graph) -> Result<(), String> {
    let c = classify_edge_minimal_with_triangles(g).map_err(|e| e.to_string())?;
    let minimal = is_edge_minimal_unchecked(g);
    if c.is_edge_minimal != minimal {
        return Err(format!(
            "classification says {}, edge removal says {minimal} (critical condition {}, reduction {})",
            c.is_edge_minimal, c.every_triangle_edge_critical, c.trace.succeeded
        ));
    }
    Ok(())
}

fn check_steps(trace: &ReductionTrace) -> Result<(), String> {
    match trace.steps.iter().enumerate().find(|(_, s)| !s.is_sound()) {
        None => Ok(()),
        Some((i, step)) => Err(format!(
            "step {i} removing {}: triangles {} -> {}, created {:?}, 2sc {}",
            step.removed_edge, step.triangles_before, step.triangles_after, step.created_triangles, step.result_is_2sc
        )),
    }
}

fn check_sandwich(g: &Graph) -> Result<(), String> {
    let s = sandwich(g).map_err(|e| e.to_string())?;
    let spanning_sub = s.minimal.edges().all(|e| g.has_edge(e.0, e.1));
    let spanning_super = g.edges().all(|e| s.maximal.has_edge(e.0, e.1));
    if !(spanning_sub && spanning_super) {
        return Err("bracketing graphs are not spanning sub/supergraphs".into());
    }
    if !is_2sc(&s.minimal) || !is_edge_minimal_unchecked(&s.minimal) {
        return Err(format!("greedy subgraph {} is not edge-minimal", to_graph6(&s.minimal)));
    }
    let maximal = is_edge_maximal(&s.maximal).map(|c| c.is_edge_maximal).unwrap_or(false);
    if !maximal {
        return Err(format!(
            "greedy supergraph {} is not edge-maximal",
            to_graph6(&s.maximal)
        ));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Counterexample {
    pub graph6: String,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub theorem: Theorem,
    pub domain: &'static str,
    pub n_min: usize,
    pub n_max: usize,
    pub examined: usize,
    pub passes: usize,
    pub counterexamples: Vec<Counterexample>,
    pub wall_time_ms: u128,
}

impl VerificationReport {
    pub fn holds(&self) -> bool {
        self.counterexamples.is_empty() && self.passes == self.examined
    }
}

/// Class sizes among the examined graphs on `n` vertices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CountRow {
    pub n: usize,
    pub connected: usize,
    pub two_self_centered: usize,
    pub edge_minimal: usize,
    pub edge_maximal: usize,
    pub triangle_free: usize,
    pub with_triangles: usize,
}

/// Whether the two readings of the `l = 0` special case ever disagree on a
/// decomposition of an examined graph.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Item8Study {
    pub decompositions: usize,
    pub printed_rejects: Vec<Counterexample>,
    pub symmetric_rejects: Vec<Counterexample>,
}

/// Edge-order sensitivity of the reduction on graphs with triangles.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct OrderStudy {
    pub n_max: usize,
    pub graphs: usize,
    /// The default order fails but another order succeeds.
    pub rescued_by_other_order: Vec<String>,
    /// Some orders succeed and some fail.
    pub order_dependent: Vec<String>,
    /// Edge-minimal graphs on which some order fails.
    pub minimal_with_failing_order: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationSummary {
    pub reading: Item8Reading,
    pub reports: Vec<VerificationReport>,
    pub counts: Vec<CountRow>,
    pub item8: Item8Study,
    pub order: OrderStudy,
}

impl VerificationSummary {
    pub fn all_hold(&self) -> bool {
        self.reports.iter().all(VerificationReport::holds)
    }

    pub fn report(&self, t: Theorem) -> &VerificationReport {
        self.reports
            .iter()
            .find(|r| r.theorem == t)
            .expect("every theorem is reported")
    }

    /// Plain-text table of reports and class counts.
    pub fn to_table(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "{:<30} {:>5} {:>9} {:>9} {:>7} {:>9}",
            "theorem", "n", "examined", "passes", "fails", "ms"
        );
        for r in &self.reports {
            let _ = writeln!(
                s,
                "{:<30} {:>5} {:>9} {:>9} {:>7} {:>9}",
                r.theorem.id(),
                format!("{}-{}", r.n_min, r.n_max),
                r.examined,
                r.passes,
                r.counterexamples.len(),
                r.wall_time_ms
            );
            for c in r.counterexamples.iter().take(5) {
                let _ = writeln!(s, "    {}  {}", c.graph6, c.detail);
            }
        }
        let _ = writeln!(s);
        let _ = writeln!(
            s,
            "{:>3} {:>9} {:>6} {:>8} {:>8} {:>9} {:>9}",
            "n", "connected", "2sc", "minimal", "maximal", "tri-free", "triangle"
        );
        for c in &self.counts {
            let _ = writeln!(
                s,
                "{:>3} {:>9} {:>6} {:>8} {:>8} {:>9} {:>9}",
                c.n,
                c.connected,
                c.two_self_centered,
                c.edge_minimal,
                c.edge_maximal,
                c.triangle_free,
                c.with_triangles
            );
        }
        let _ = writeln!(s);
        let _ = writeln!(
            s,
            "item 8 readings over {} decompositions: printed rejects {}, symmetric rejects {}",
            self.item8.decompositions,
            self.item8.printed_rejects.len(),
            self.item8.symmetric_rejects.len()
        );
        let _ = writeln!(
            s,
            "reduction order (n <= {}, {} graphs): rescued by another order {}, order-dependent {}, edge-minimal with a failing order {}",
            self.order.n_max,
            self.order.graphs,
            self.order.rescued_by_other_order.len(),
            self.order.order_dependent.len(),
            self.order.minimal_with_failing_order.len()
        );
        s
    }
}

/// Where the battery draws its graphs from.
pub enum Source {
    /// The built-in generator for `n = 1..=n_max`.
    Builtin(usize),
    /// Caller-supplied graphs, e.g. from a graph6 file.
    Graphs(Vec<Graph>),
}

/// Largest order on which the reduction-order study runs.
pub const ORDER_STUDY_MAX_N: usize = 7;

struct GraphOutcome {
    n: usize,
    results: Vec<(Theorem, Result<(), String>, u128)>,
    row: CountRow,
    item8: Option<(bool, bool)>,
    order: Option<(bool, bool, bool, bool)>,
}

fn examine(g: &Graph, reading: Item8Reading) -> GraphOutcome {
    let results = Theorem::ALL
        .iter()
        .filter_map(|&t| {
            let start = Instant::now();
            t.check(g, reading).map(|r| (t, r, start.elapsed().as_micros()))
        })
        .collect();
    let connected = g.is_connected();
    let two_sc = is_2sc(g);
    let tri_free = g.is_triangle_free();
    let row = CountRow {
        n: g.n(),
        connected: connected as usize,
        two_self_centered: two_sc as usize,
        edge_minimal: (two_sc && is_edge_minimal_unchecked(g)) as usize,
        edge_maximal: (two_sc && is_edge_maximal(g).map(|c| c.is_edge_maximal).unwrap_or(false)) as usize,
        triangle_free: (two_sc && tri_free) as usize,
        with_triangles: (two_sc && !tri_free) as usize,
    };
    let item8 = (two_sc && tri_free)
        .then(|| decompose_triangle_free(g).ok())
        .flatten()
        .map(|d| {
            (
                validate_gcb_spec(&d.spec, Item8Reading::Printed).passes(),
                validate_gcb_spec(&d.spec, Item8Reading::Symmetric).passes(),
            )
        });
    let order = (two_sc && !tri_free && g.n() <= ORDER_STUDY_MAX_N).then(|| {
        let default_ok = classify_edge_minimal_with_triangles(g)
            .map(|c| c.trace.succeeded)
            .unwrap_or(false);
        let o = explore_orders(g);
        (
            default_ok,
            o.some_order_succeeds,
            o.every_order_succeeds,
            is_edge_minimal_unchecked(g),
        )
    });
    GraphOutcome {
        n: g.n(),
        results,
        row,
        item8,
        order,
    }
}

pub fn verify_all(source: Source, reading: Item8Reading) -> Result<VerificationSummary, EnumerationError> {
    let graphs: Vec<Graph> = match source {
        Source::Builtin(n_max) => enumerate_connected_up_to(n_max)?.into_iter().flatten().collect(),
        Source::Graphs(gs) => gs,
    };
    Ok(verify_graphs(&graphs, reading))
}

/// Runs the battery over `graphs`.
pub fn verify_graphs(graphs: &[Graph], reading: Item8Reading) -> VerificationSummary {
    let outcomes: Vec<GraphOutcome> = graphs.par_iter().map(|g| examine(g, reading)).collect();

    let n_min = graphs.iter().map(Graph::n).min().unwrap_or(0);
    let n_max = graphs.iter().map(Graph::n).max().unwrap_or(0);
    let mut reports: Vec<VerificationReport> = Theorem::ALL
        .iter()
        .map(|&theorem| VerificationReport {
            theorem,
            domain: theorem.domain(),
            n_min,
            n_max,
            examined: 0,
            passes: 0,
            counterexamples: Vec::new(),
            wall_time_ms: 0,
        })
        .collect();
    let mut micros = vec![0u128; Theorem::ALL.len()];
    let mut counts: Vec<CountRow> = Vec::new();
    let mut item8 = Item8Study::default();
    let mut order = OrderStudy {
        n_max: ORDER_STUDY_MAX_N,
        ..OrderStudy::default()
    };

    for (g, o) in graphs.iter().zip(&outcomes) {
        for (t, result, us) in &o.results {
            let idx = Theorem::ALL.iter().position(|x| x == t).expect("known theorem");
            let r = &mut reports[idx];
            r.examined += 1;
            micros[idx] += us;
            match result {
                Ok(()) => r.passes += 1,
                Err(detail) => r.counterexamples.push(Counterexample {
                    graph6: to_graph6(g),
                    detail: detail.clone(),
                }),
            }
        }
        let row = match counts.iter_mut().find(|c| c.n == o.n) {
            Some(row) => row,
            None => {
                counts.push(CountRow {
                    n: o.n,
                    ..CountRow::default()
                });
                counts.last_mut().expect("just pushed")
            }
        };
        row.connected += o.row.connected;
        row.two_self_centered += o.row.two_self_centered;
        row.edge_minimal += o.row.edge_minimal;
        row.edge_maximal += o.row.edge_maximal;
        row.triangle_free += o.row.triangle_free;
        row.with_triangles += o.row.with_triangles;

        if let Some((printed, symmetric)) = o.item8 {
            item8.decompositions += 1;
            let cx = || Counterexample {
                graph6: to_graph6(g),
                detail: "decomposition rejected".into(),
            };
            if !printed {
                item8.printed_rejects.push(cx());
            }
            if !symmetric {
                item8.symmetric_rejects.push(cx());
            }
        }
        if let Some((default_ok, some, every, minimal)) = o.order {
            order.graphs += 1;
            let g6 = to_graph6(g);
            if !default_ok && some {
                order.rescued_by_other_order.push(g6.clone());
            }
            if some && !every {
                order.order_dependent.push(g6.clone());
            }
            if minimal && !every {
                order.minimal_with_failing_order.push(g6);
            }
        }
    }
    for (r, us) in reports.iter_mut().zip(micros) {
        r.counterexamples.sort();
        r.wall_time_ms = us / 1000;
    }
    counts.sort_by_key(|c| c.n);
    VerificationSummary {
        reading,
        reports,
        counts,
        item8,
        order,
    }
}

/// Both readings applied to specifications drawn by the sampler.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Item8SampleStudy {
    pub samples: usize,
    /// Specs with `l = 0`, where the readings can differ.
    pub with_l_zero: usize,
    pub readings_disagree: usize,
    /// Accepted under a reading yet building a graph outside the class.
    pub printed_accepts_unsound: Vec<String>,
    pub symmetric_accepts_unsound: Vec<String>,
}

/// Draws `samples` specifications under each reading (budgets cycle
/// through `4..=12`) and records how the other reading judges them.
pub fn item8_sample_study(samples: u64) -> Item8SampleStudy {
    use crate::gcb::{assemble, sample_gcb_spec};
    let drawn: Vec<_> = [Item8Reading::Printed, Item8Reading::Symmetric]
        .into_par_iter()
        .flat_map_iter(|reading| {
            (0..samples).filter_map(move |seed| sample_gcb_spec(4 + (seed % 9) as usize, seed, reading).ok())
        })
        .collect();
    let mut study = Item8SampleStudy::default();
    for spec in &drawn {
        study.samples += 1;
        if spec.l == 0 {
            study.with_l_zero += 1;
        }
        let printed = validate_gcb_spec(spec, Item8Reading::Printed).passes();
        let symmetric = validate_gcb_spec(spec, Item8Reading::Symmetric).passes();
        if printed != symmetric {
            study.readings_disagree += 1;
        }
        let g = assemble(spec);
        if !(is_2sc(&g) && g.is_triangle_free()) {
            let g6 = to_graph6(&g);
            if printed {
                study.printed_accepts_unsound.push(g6.clone());
            }
            if symmetric {
                study.symmetric_accepts_unsound.push(g6);
            }
        }
    }
    study
}
