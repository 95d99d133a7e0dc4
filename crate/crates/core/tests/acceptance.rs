//! Acceptance battery. Prints one PASS/FAIL line per criterion.
//!
//! The per-step reduction invariant in criterion 7 has counterexamples on
//! seven vertices: a step whose critical endpoint has two adjacent partners
//! joins the other endpoint to both and closes a new triangle. That failure
//! is printed as FAIL and tolerated by the exit status; any other failure,
//! or that one disappearing, makes the target fail.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use selfcentered::canon::canonical_form;
use selfcentered::enumeration::{enumerate_connected_up_to, ingest_graph6};
use selfcentered::fixtures;
use selfcentered::gcb::{build_gcb, decompose_triangle_free, sample_gcb_spec, validate_gcb_spec, Item8Reading};
use selfcentered::harness::{verify_graphs, Theorem, VerificationReport, VerificationSummary};
use selfcentered::recognition::{critical_triples, is_2sc_by_distances, is_two_self_centered};
use selfcentered::{Edge, Graph};

/// Published numbers of connected graphs on 1..=8 vertices.
const OEIS_A001349: [usize; 8] = [1, 1, 2, 6, 21, 112, 853, 11117];

const SAMPLES: u64 = 1000;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn describe(r: &VerificationReport) -> String {
    let mut s = format!("{} {}/{} pass", r.theorem.id(), r.passes, r.examined);
    if let Some(c) = r.counterexamples.first() {
        s += &format!(
            ", {} counterexamples, first {} ({})",
            r.counterexamples.len(),
            c.graph6,
            c.detail
        );
    }
    s
}

fn reports(summary: &VerificationSummary, theorems: &[Theorem]) -> Outcome {
    let rs: Vec<&VerificationReport> = theorems.iter().map(|&t| summary.report(t)).collect();
    let pass = rs.iter().all(|r| r.holds() && r.examined > 0);
    outcome(pass, rs.iter().map(|r| describe(r)).collect::<Vec<_>>().join("; "))
}

/// Removing any single edge leaves the class, judged by BFS alone.
fn minimal_by_oracle(g: &Graph) -> bool {
    is_2sc_by_distances(g)
        && g.edges()
            .all(|e| !is_2sc_by_distances(&g.edit(Some(e), None).expect("present edge")))
}

fn criterion5() -> Outcome {
    let mut exceptions = Vec::new();
    let mut printed_exceptions = 0;
    for seed in 0..SAMPLES {
        let budget = 4 + (seed % 13) as usize;
        for reading in [Item8Reading::Symmetric, Item8Reading::Printed] {
            let problem = match sample_gcb_spec(budget, seed, reading) {
                Err(e) => Some(format!("sampler: {e}")),
                Ok(spec) => match build_gcb(&spec, reading) {
                    Err(e) => Some(format!("build: {e}")),
                    Ok(g) if g.n() != budget => Some(format!("{} vertices", g.n())),
                    Ok(g) if !g.is_triangle_free() => Some("triangle".into()),
                    Ok(g) if !is_2sc_by_distances(&g) => Some("not 2-self-centered".into()),
                    Ok(g) if g.edge_count() != spec.expected_edge_count() => Some(format!(
                        "{} edges, formula {}",
                        g.edge_count(),
                        spec.expected_edge_count()
                    )),
                    Ok(_) => None,
                },
            };
            match (problem, reading) {
                (Some(p), Item8Reading::Symmetric) => exceptions.push(format!("seed {seed}: {p}")),
                (Some(_), Item8Reading::Printed) => printed_exceptions += 1,
                (None, _) => {}
            }
        }
    }
    outcome(
        exceptions.is_empty(),
        format!(
            "{SAMPLES} samples, budgets 4-16: {} exceptions{} (printed item 8: {printed_exceptions} exceptions)",
            exceptions.len(),
            exceptions.first().map(|e| format!(", first {e}")).unwrap_or_default()
        ),
    )
}

fn criterion6(triangle_free: &[Graph]) -> Outcome {
    let mut graphs = triangle_free.to_vec();
    graphs.push(Graph::petersen());
    let mut failures = Vec::new();
    let mut printed_rejects = 0;
    for g in &graphs {
        let result = decompose_triangle_free(g).map_err(|e| e.to_string()).and_then(|d| {
            if !validate_gcb_spec(&d.spec, Item8Reading::Printed).passes() {
                printed_rejects += 1;
            }
            let built = build_gcb(&d.spec, Item8Reading::Symmetric).map_err(|e| e.to_string())?;
            (g.relabel(&d.labeling()) == built)
                .then_some(())
                .ok_or_else(|| "rebuilt graph differs".to_string())
        });
        if let Err(e) = result {
            failures.push(format!("{}: {e}", selfcentered::io::to_graph6(g)));
        }
    }
    outcome(
        failures.is_empty(),
        format!(
            "{} graphs (n <= 8 plus Petersen) rebuilt labelled-equal, {} failures{} (printed item 8 rejects {printed_rejects})",
            graphs.len() - failures.len(),
            failures.len(),
            failures.first().map(|e| format!(", first {e}")).unwrap_or_default()
        ),
    )
}

fn criterion9() -> Outcome {
    let mut notes = Vec::new();
    let mut pass = true;
    let mut expect = |ok: bool, what: &str| {
        if !ok {
            pass = false;
            notes.push(what.to_string());
        }
    };

    let (g2, labels) = fixtures::example2();
    let (x, y, z) = (labels.id("x"), labels.id("y"), labels.id("z"));
    expect(g2.is_triangle_free(), "example 2 has a triangle");
    expect(minimal_by_oracle(&g2), "example 2 is not edge-minimal 2-self-centered");
    let triples = critical_triples(&g2).unwrap_or_default();
    expect(
        triples.iter().any(|t| t.critical == x && t.pair == Edge::new(y, z)),
        "example 2 lacks the critical triple (x, {y, z})",
    );

    let (printed, _) = fixtures::example1_printed();
    let verdict = is_two_self_centered(&printed);
    expect(
        !verdict.is_2sc && printed.degree(0) == 1 && verdict.violating_vertex == Some(0),
        "printed example 1 is not rejected at vertex 0",
    );

    // every single-edge addition to the printed graph that the oracle admits
    let candidates: Vec<Edge> = printed
        .non_edges()
        .filter(|&e| {
            let h = printed.edit(None, Some(e)).expect("absent edge");
            minimal_by_oracle(&h)
                && h.triangles().contains(&[3, 6, 7])
                && critical_triples(&h)
                    .unwrap_or_default()
                    .iter()
                    .any(|t| t.critical == 6 && t.pair == Edge(4, 7))
        })
        .collect();
    let (corrected, _) = fixtures::example1_corrected();
    expect(
        candidates.contains(&Edge(0, 3)) && corrected == printed.edit(None, Some(Edge(0, 3))).expect("absent edge"),
        "the shipped correction is not among the oracle-validated ones",
    );
    let shown: Vec<String> = candidates.iter().map(ToString::to_string).collect();
    let detail = if pass {
        format!(
            "example 2 ok; printed example 1 rejected (deg(0) = 1); validated corrections add {}",
            shown.join(", ")
        )
    } else {
        notes.join("; ")
    };
    outcome(pass, detail)
}

fn criterion10(levels: &[Vec<Graph>]) -> Outcome {
    let counts: Vec<usize> = levels.iter().map(Vec::len).collect();
    let mut notes = vec![format!("counts {counts:?}")];
    let mut pass = counts == OEIS_A001349;
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data/atlas_connected_n1_7.g6");
    match ingest_graph6(path) {
        Err(e) => {
            pass = false;
            notes.push(e.to_string());
        }
        Ok(catalog) => {
            let records = catalog.len();
            let canon: BTreeSet<Graph> = catalog.iter().map(canonical_form).collect();
            let ours: BTreeSet<Graph> = levels[..7].iter().flatten().cloned().collect();
            let agree = canon.len() == records && canon == ours;
            pass &= agree;
            notes.push(format!(
                "external catalog n <= 7: {records} records, {} distinct, {} shared with generator",
                canon.len(),
                canon.intersection(&ours).count()
            ));
        }
    }
    outcome(pass, notes.join("; "))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let levels = enumerate_connected_up_to(8).expect("n = 8 is supported");
    let up_to_7: Vec<Graph> = levels[..7].iter().flatten().cloned().collect();
    let s7 = verify_graphs(&up_to_7, Item8Reading::Symmetric);
    let s8 = verify_graphs(&levels[7], Item8Reading::Symmetric);

    let triangle_free: Vec<Graph> = levels
        .iter()
        .flatten()
        .filter(|g| g.is_triangle_free() && is_2sc_by_distances(g))
        .cloned()
        .collect();

    let c1 = {
        let (a, b) = (s7.report(Theorem::Recognizer), s8.report(Theorem::Recognizer));
        outcome(
            a.holds() && b.holds(),
            format!("n <= 7: {}; n = 8: {}", describe(a), describe(b)),
        )
    };
    let c7 = reports(&s7, &[Theorem::TriangleClassification, Theorem::ReductionSteps]);
    let classification_holds = s7.report(Theorem::TriangleClassification).holds();

    let criteria: Vec<(&str, Outcome)> = vec![
        ("recognizer equivalence", c1),
        ("edge-maximal characterization", reports(&s7, &[Theorem::EdgeMaximal])),
        (
            "complete bipartite proposition",
            reports(&s7, &[Theorem::BipartiteProposition]),
        ),
        (
            "triangle-free lemma, both directions",
            reports(&s7, &[Theorem::TriangleFreeLemma, Theorem::TriangleFreeLemmaConverse]),
        ),
        ("GCB soundness (symmetric item 8)", criterion5()),
        ("GCB completeness (symmetric item 8)", criterion6(&triangle_free)),
        ("triangle classification and reduction steps", c7),
        ("sandwich", reports(&s7, &[Theorem::Sandwich])),
        ("worked examples", criterion9()),
        ("generator fidelity", criterion10(&levels)),
    ];

    let mut unexpected = false;
    for (i, (name, o)) in criteria.iter().enumerate() {
        let number = i + 1;
        println!(
            "criterion {number:>2} {} {name}: {}",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
        let known = number == 7 && classification_holds;
        if !o.pass && !known {
            unexpected = true;
        }
        if o.pass && number == 7 {
            println!("criterion  7 was expected to fail on the per-step invariant; update the known failure");
            unexpected = true;
        }
    }
    let passed = criteria.iter().filter(|(_, o)| o.pass).count();
    println!(
        "{passed}/{} criteria pass; criterion 7 step invariant is a known failure ({:.1}s)",
        criteria.len(),
        start.elapsed().as_secs_f64()
    );
    if unexpected {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
