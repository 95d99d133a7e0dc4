//! Generalized complete bipartite graphs.
//!
//! `GCB_X(k, l, A, B)` is assembled from an independent pair of parts `K`
//! and `L`, connector vertices `y_1..y_r` and `z_1..z_s`, and a core `X`
//! carrying an SBIC via `(A, B)`:
//!
//! * `K` is joined to `L ∪ Y`, and `L` is joined to `K ∪ Z`;
//! * `y_i` is joined to `A_i`, and `z_j` is joined to `B_j`;
//! * `y_i ~ z_j` exactly when `A_i ∩ B_j = ∅`;
//! * `X` keeps its own edges.
//!
//! Built vertices are laid out as `K`, `L`, `Y`, `Z`, then `X`.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Bits, Edge, Graph, Vertex, MAX_VERTICES};
use crate::recognition::is_2sc;
use crate::sbic::{construct_sbic_from, verify_sbic, SbicReport, SbicWitness};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GcbError {
    #[error("specification is invalid: {0}")]
    InvalidSpec(String),
    #[error("input graph is not 2-self-centered")]
    NotTwoSelfCentered,
    #[error("input graph contains the triangle {0:?}")]
    HasTriangle([Vertex; 3]),
    #[error("size budget {0} is below the minimum of 4 vertices")]
    BudgetTooSmall(usize),
    #[error("size budget {0} exceeds the supported maximum of {MAX_VERTICES} vertices")]
    BudgetTooLarge(usize),
    #[error("no valid specification found after {0} attempts")]
    RetryLimitExhausted(usize),
}

/// Parameter pack for one generalized complete bipartite graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GcbSpec {
    pub k: usize,
    pub l: usize,
    pub x: Graph,
    #[serde(flatten)]
    pub witness: SbicWitness,
}

impl GcbSpec {
    pub fn complete_bipartite(k: usize, l: usize) -> Self {
        GcbSpec {
            k,
            l,
            x: Graph::empty(0).expect("null graph"),
            witness: SbicWitness::default(),
        }
    }

    pub fn r(&self) -> usize {
        self.witness.r()
    }

    pub fn s(&self) -> usize {
        self.witness.s()
    }

    pub fn vertex_count(&self) -> usize {
        self.k + self.l + self.r() + self.s() + self.x.n()
    }

    /// `kl + kr + ls + |E(X)| + Σ|A_i| + Σ|B_j| + #{(i, j) : A_i ∩ B_j = ∅}`.
    pub fn expected_edge_count(&self) -> usize {
        let (a, b) = (self.witness.a_masks(), self.witness.b_masks());
        let disjoint = a
            .iter()
            .map(|&ai| b.iter().filter(|&&bj| ai & bj == 0).count())
            .sum::<usize>();
        self.k * self.l
            + self.k * self.r()
            + self.l * self.s()
            + self.x.edge_count()
            + self.witness.a_family.iter().map(Vec::len).sum::<usize>()
            + self.witness.b_family.iter().map(Vec::len).sum::<usize>()
            + disjoint
    }
}

/// How to read the special case for `l = 0`. As printed, its pairwise
/// clause repeats the one for `k = 0` over the A-family; the symmetric
/// reading states it over the B-family instead.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Item8Reading {
    #[default]
    Printed,
    Symmetric,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "detail", rename_all = "snake_case")]
pub enum ItemStatus {
    Pass,
    NotApplicable,
    Fail(String),
}

impl ItemStatus {
    pub fn is_ok(&self) -> bool {
        !matches!(self, ItemStatus::Fail(_))
    }
}

/// Verdicts for one specification. `construction` covers items 1 to 6
/// (the layout must fit in the bitset core); items 7 to 11 are the special
/// cases; `sbic` is the core's covering certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GcbValidation {
    pub sbic: Result<SbicReport, String>,
    pub construction: ItemStatus,
    pub item7: ItemStatus,
    pub item8: ItemStatus,
    pub item9: ItemStatus,
    pub item10: ItemStatus,
    pub item11: ItemStatus,
}

impl GcbValidation {
    pub fn passes(&self) -> bool {
        matches!(&self.sbic, Ok(r) if r.passes()) && self.items().iter().all(|(_, s)| s.is_ok())
    }

    pub fn items(&self) -> [(&'static str, &ItemStatus); 6] {
        [
            ("items 1-6", &self.construction),
            ("item 7", &self.item7),
            ("item 8", &self.item8),
            ("item 9", &self.item9),
            ("item 10", &self.item10),
            ("item 11", &self.item11),
        ]
    }

    /// One-line summary of the first failure.
    pub fn describe_failure(&self) -> Option<String> {
        match &self.sbic {
            Err(e) => return Some(format!("sbic: {e}")),
            Ok(r) if !r.passes() => return Some(format!("sbic: {:?}", r.first_failure())),
            Ok(_) => {}
        }
        self.items().into_iter().find_map(|(name, s)| match s {
            ItemStatus::Fail(d) => Some(format!("{name}: {d}")),
            _ => None,
        })
    }
}

/// Every `y_i` has a `z_j` with `A_i ∩ B_j = ∅` (first index without one).
fn unmatched(own: &[u64], other: &[u64]) -> Option<usize> {
    own.iter().position(|&o| other.iter().all(|&p| o & p != 0))
}

/// For all pairs of `own`: they intersect, or some set of `other` misses
/// both.
fn pair_gap(own: &[u64], other: &[u64]) -> Option<(usize, usize)> {
    for i in 0..own.len() {
        for j in i + 1..own.len() {
            if own[i] & own[j] == 0 && !other.iter().any(|&p| own[i] & p == 0 && own[j] & p == 0) {
                return Some((i, j));
            }
        }
    }
    None
}

pub fn validate_gcb_spec(spec: &GcbSpec, reading: Item8Reading) -> GcbValidation {
    let (a, b) = (spec.witness.a_masks(), spec.witness.b_masks());
    let (k, l, r, s, t) = (spec.k, spec.l, spec.r(), spec.s(), spec.x.n());

    let sbic = verify_sbic(&spec.x, &spec.witness).map_err(|e| e.to_string());

    let construction = if spec.vertex_count() > MAX_VERTICES {
        ItemStatus::Fail(format!(
            "{} vertices exceed the maximum of {MAX_VERTICES}",
            spec.vertex_count()
        ))
    } else {
        ItemStatus::Pass
    };

    let item7 = if k != 0 {
        ItemStatus::NotApplicable
    } else if let Some(i) = unmatched(&a, &b) {
        ItemStatus::Fail(format!("k = 0 but y{i} has no neighbour in Z"))
    } else if let Some((i, j)) = pair_gap(&a, &b) {
        ItemStatus::Fail(format!("k = 0 but A{i}, A{j} are disjoint with no B-set missing both"))
    } else {
        ItemStatus::Pass
    };

    let item8 = if l != 0 {
        ItemStatus::NotApplicable
    } else if let Some(j) = unmatched(&b, &a) {
        ItemStatus::Fail(format!("l = 0 but z{j} has no neighbour in Y"))
    } else {
        let gap = match reading {
            Item8Reading::Printed => pair_gap(&a, &b).map(|(i, j)| format!("A{i}, A{j}")),
            Item8Reading::Symmetric => pair_gap(&b, &a).map(|(i, j)| format!("B{i}, B{j}")),
        };
        match gap {
            Some(sets) => ItemStatus::Fail(format!(
                "l = 0 but {sets} are disjoint with no set of the other family missing both"
            )),
            None => ItemStatus::Pass,
        }
    };

    let item9 = if r == 0 && k == 0 {
        ItemStatus::Fail("r = 0 requires k != 0".into())
    } else if s == 0 && l == 0 {
        ItemStatus::Fail("s = 0 requires l != 0".into())
    } else {
        ItemStatus::Pass
    };

    let no_connectors = r == 0 && s == 0;
    let bare_bipartite = t == 0 && k >= 2 && l >= 2;
    let item10 = if no_connectors == bare_bipartite {
        ItemStatus::Pass
    } else if no_connectors {
        ItemStatus::Fail(format!(
            "r = s = 0 requires X empty and k, l >= 2 (|X| = {t}, k = {k}, l = {l})"
        ))
    } else {
        ItemStatus::Fail(format!("X empty with k, l >= 2 requires r = s = 0 (r = {r}, s = {s})"))
    };

    let item11 = if t != 1 {
        ItemStatus::NotApplicable
    } else if k == 0 && l == 0 {
        ItemStatus::Fail("|X| = 1 requires k or l non-zero".into())
    } else {
        ItemStatus::Pass
    };

    GcbValidation {
        sbic,
        construction,
        item7,
        item8,
        item9,
        item10,
        item11,
    }
}

/// Position of a vertex within the layout.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "part", content = "index", rename_all = "lowercase")]
pub enum Role {
    K(usize),
    L(usize),
    Y(usize),
    Z(usize),
    X(usize),
}

impl Role {
    /// Index of this role in the built graph.
    pub fn position(self, spec: &GcbSpec) -> Vertex {
        let (k, l, r, s) = (spec.k, spec.l, spec.r(), spec.s());
        match self {
            Role::K(i) => i,
            Role::L(i) => k + i,
            Role::Y(i) => k + l + i,
            Role::Z(i) => k + l + r + i,
            Role::X(i) => k + l + r + s + i,
        }
    }
}

/// Roles of the built graph's vertices, in layout order.
pub fn layout(spec: &GcbSpec) -> Vec<Role> {
    (0..spec.k)
        .map(Role::K)
        .chain((0..spec.l).map(Role::L))
        .chain((0..spec.r()).map(Role::Y))
        .chain((0..spec.s()).map(Role::Z))
        .chain((0..spec.x.n()).map(Role::X))
        .collect()
}

/// Assembles the graph; fails if the specification does not validate.
pub fn build_gcb(spec: &GcbSpec, reading: Item8Reading) -> Result<Graph, GcbError> {
    let validation = validate_gcb_spec(spec, reading);
    if !validation.passes() {
        return Err(GcbError::InvalidSpec(validation.describe_failure().unwrap_or_default()));
    }
    let g = assemble(spec);
    debug_assert!(
        g.is_triangle_free() && is_2sc(&g),
        "valid spec built a bad graph: {spec:?}"
    );
    Ok(g)
}

/// Items 1 to 6 applied without validation. The caller owns the check.
pub fn assemble(spec: &GcbSpec) -> Graph {
    let (k, l, r, s) = (spec.k, spec.l, spec.r(), spec.s());
    let n = spec.vertex_count();
    let (y0, z0, x0) = (k + l, k + l + r, k + l + r + s);
    let (a, b) = (spec.witness.a_masks(), spec.witness.b_masks());
    let mut edges: Vec<(Vertex, Vertex)> = Vec::new();
    for p in 0..k {
        edges.extend((k..k + l).map(|q| (p, q)));
        edges.extend((y0..z0).map(|y| (p, y)));
    }
    for q in k..k + l {
        edges.extend((z0..x0).map(|z| (q, z)));
    }
    for (i, &ai) in a.iter().enumerate() {
        edges.extend(Bits(ai).map(|v| (y0 + i, x0 + v)));
        for (j, &bj) in b.iter().enumerate() {
            if ai & bj == 0 {
                edges.push((y0 + i, z0 + j));
            }
        }
    }
    for (j, &bj) in b.iter().enumerate() {
        edges.extend(Bits(bj).map(|v| (z0 + j, x0 + v)));
    }
    edges.extend(spec.x.edges().map(|e| (x0 + e.0, x0 + e.1)));
    Graph::from_edges(n, edges).expect("layout fits the vertex budget")
}

/// A specification recovered from a graph, with the role of each original
/// vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub spec: GcbSpec,
    /// `roles[v]` is the role of original vertex `v`.
    pub roles: Vec<Role>,
}

impl Decomposition {
    /// `old -> new` map onto the built layout.
    pub fn labeling(&self) -> Vec<Vertex> {
        self.roles.iter().map(|r| r.position(&self.spec)).collect()
    }
}

/// Splits a triangle-free 2-self-centered graph into its GCB parts.
///
/// `Y'` is a maximal independent set and `Z'` a maximal independent set of
/// what remains; `X` is the rest. Vertices of `Z'` (resp. `Y'`) with no
/// neighbour in `X` form `K` (resp. `L`); the others become connectors with
/// `A_i = N_X(y_i)` and `B_j = N_X(z_j)`. Maximal sets are grown greedily
/// over vertices by descending degree, ties broken by index.
pub fn decompose_triangle_free(g: &Graph) -> Result<Decomposition, GcbError> {
    if let Some(&t) = g.triangles().first() {
        return Err(GcbError::HasTriangle(t));
    }
    if !is_2sc(g) {
        return Err(GcbError::NotTwoSelfCentered);
    }
    let mut order: Vec<Vertex> = (0..g.n()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let all = g.vertex_mask();
    let y_prime = g.extend_independent(0, all, &order);
    let z_prime = g.extend_independent(0, all & !y_prime, &order);
    let x_mask = all & !y_prime & !z_prime;

    let touches_x = |v: Vertex| g.neighbors(v) & x_mask != 0;
    let k_part: Vec<Vertex> = Bits(z_prime).filter(|&v| !touches_x(v)).collect();
    let l_part: Vec<Vertex> = Bits(y_prime).filter(|&v| !touches_x(v)).collect();
    let y_part: Vec<Vertex> = Bits(y_prime).filter(|&v| touches_x(v)).collect();
    let z_part: Vec<Vertex> = Bits(z_prime).filter(|&v| touches_x(v)).collect();
    let x_part: Vec<Vertex> = Bits(x_mask).collect();

    let mut x_index = vec![usize::MAX; g.n()];
    for (i, &v) in x_part.iter().enumerate() {
        x_index[v] = i;
    }
    let core_set = |v: Vertex| -> Vec<Vertex> { Bits(g.neighbors(v) & x_mask).map(|u| x_index[u]).collect() };
    let witness = SbicWitness {
        a_family: y_part.iter().map(|&y| core_set(y)).collect(),
        b_family: z_part.iter().map(|&z| core_set(z)).collect(),
    };
    let spec = GcbSpec {
        k: k_part.len(),
        l: l_part.len(),
        x: g.induced(&x_part),
        witness,
    };
    let mut roles = vec![Role::X(0); g.n()];
    for (parts, make) in [
        (&k_part, Role::K as fn(usize) -> Role),
        (&l_part, Role::L),
        (&y_part, Role::Y),
        (&z_part, Role::Z),
        (&x_part, Role::X),
    ] {
        for (i, &v) in parts.iter().enumerate() {
            roles[v] = make(i);
        }
    }
    Ok(Decomposition { spec, roles })
}

const SAMPLE_ATTEMPTS: usize = 10_000;

/// Draws a valid specification on exactly `budget` vertices, deterministic
/// in `seed`.
///
/// Each attempt samples a triangle-free core by random edge insertion with
/// triangle rejection, builds its SBIC by repair from either the singleton
/// covers or random maximal-independent covers, and splits the remaining
/// budget between `K` and `L`.
pub fn sample_gcb_spec(budget: usize, seed: u64, reading: Item8Reading) -> Result<GcbSpec, GcbError> {
    if budget < 4 {
        return Err(GcbError::BudgetTooSmall(budget));
    }
    if budget > MAX_VERTICES {
        return Err(GcbError::BudgetTooLarge(budget));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..SAMPLE_ATTEMPTS {
        let t = rng.gen_range(0..=budget - 2);
        let x = random_triangle_free(t, &mut rng);
        let witness = if rng.gen_bool(0.5) {
            let singletons: Vec<u64> = (0..t).map(|v| 1u64 << v).collect();
            construct_sbic_from(&x, singletons.clone(), singletons)
        } else {
            let a = random_independent_cover(&x, &mut rng);
            let b = random_independent_cover(&x, &mut rng);
            construct_sbic_from(&x, a, b)
        };
        let used = t + witness.r() + witness.s();
        if used > budget {
            continue;
        }
        let rest = budget - used;
        let k = rng.gen_range(0..=rest);
        let spec = GcbSpec {
            k,
            l: rest - k,
            x,
            witness,
        };
        if validate_gcb_spec(&spec, reading).passes() {
            return Ok(spec);
        }
    }
    Err(GcbError::RetryLimitExhausted(SAMPLE_ATTEMPTS))
}

fn random_triangle_free(t: usize, rng: &mut ChaCha8Rng) -> Graph {
    let mut g = Graph::empty(t).expect("bounded by budget");
    let mut pairs: Vec<(Vertex, Vertex)> = (0..t).flat_map(|u| (u + 1..t).map(move |v| (u, v))).collect();
    pairs.shuffle(rng);
    let density = rng.gen_range(0.1..0.7);
    for (u, v) in pairs {
        if rng.gen_bool(density) && g.neighbors(u) & g.neighbors(v) == 0 {
            g.toggle(Edge(u, v));
        }
    }
    g
}

fn random_independent_cover(x: &Graph, rng: &mut ChaCha8Rng) -> Vec<u64> {
    let mut order: Vec<Vertex> = (0..x.n()).collect();
    let mut cover = Vec::new();
    let mut covered = 0u64;
    while covered != x.vertex_mask() {
        order.shuffle(rng);
        let start = *order
            .iter()
            .find(|&&v| covered >> v & 1 == 0)
            .expect("uncovered vertex");
        let set = x.extend_independent(1 << start, x.vertex_mask(), &order);
        covered |= set;
        cover.push(set);
    }
    cover
}

/// Checks items 1 to 6 edge by edge on `g` under `labeling` (`old -> new`).
pub fn matches_layout(g: &Graph, spec: &GcbSpec, labeling: &[Vertex]) -> bool {
    g.n() == spec.vertex_count() && g.relabel(labeling) == assemble(spec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::are_isomorphic;
    use crate::fixtures;

    fn one_vertex_core(k: usize, l: usize) -> GcbSpec {
        GcbSpec {
            k,
            l,
            x: Graph::empty(1).unwrap(),
            witness: SbicWitness {
                a_family: vec![vec![0]],
                b_family: vec![vec![0]],
            },
        }
    }

    #[test]
    fn validation_examples() {
        assert!(validate_gcb_spec(&GcbSpec::complete_bipartite(2, 2), Item8Reading::Printed).passes());
        let v = validate_gcb_spec(&GcbSpec::complete_bipartite(0, 0), Item8Reading::Printed);
        assert!(!v.passes());
        assert!(matches!(v.item10, ItemStatus::Fail(_)));
        let v = validate_gcb_spec(&one_vertex_core(1, 1), Item8Reading::Printed);
        assert!(v.item9.is_ok() && v.item10.is_ok() && v.item11 == ItemStatus::Pass);
        assert!(v.passes());
        let g = build_gcb(&one_vertex_core(1, 1), Item8Reading::Printed).unwrap();
        // y_1 = 2 and z_1 = 3 share the core vertex, so they stay apart
        assert!(!g.has_edge(2, 3));
        assert!(matches!(
            validate_gcb_spec(&one_vertex_core(0, 0), Item8Reading::Printed).item11,
            ItemStatus::Fail(_)
        ));
    }

    #[test]
    fn complete_bipartite_builds() {
        let g = build_gcb(&GcbSpec::complete_bipartite(2, 3), Item8Reading::Printed).unwrap();
        assert_eq!(g, Graph::complete_bipartite(2, 3).unwrap());
        let g = build_gcb(&GcbSpec::complete_bipartite(2, 2), Item8Reading::Printed).unwrap();
        assert!(are_isomorphic(&g, &Graph::cycle(4).unwrap()));
        assert!(build_gcb(&GcbSpec::complete_bipartite(1, 3), Item8Reading::Printed).is_err());
    }

    fn assert_roundtrip(g: &Graph) -> Decomposition {
        let d = decompose_triangle_free(g).unwrap();
        let v = validate_gcb_spec(&d.spec, Item8Reading::Symmetric);
        assert!(v.passes(), "{:?}", v.describe_failure());
        let built = build_gcb(&d.spec, Item8Reading::Symmetric).unwrap();
        assert_eq!(g.relabel(&d.labeling()), built);
        assert_eq!(built.edge_count(), d.spec.expected_edge_count());
        d
    }

    #[test]
    fn decompositions_roundtrip() {
        let d = assert_roundtrip(&Graph::complete_bipartite(2, 3).unwrap());
        assert_eq!((d.spec.x.n(), d.spec.r(), d.spec.s()), (0, 0, 0));
        assert_eq!(
            {
                let mut p = [d.spec.k, d.spec.l];
                p.sort();
                p
            },
            [2, 3]
        );
        assert_roundtrip(&Graph::cycle(4).unwrap());
        let d = assert_roundtrip(&fixtures::example2().0);
        assert!(d.spec.x.n() > 0);
        let d = assert_roundtrip(&Graph::petersen());
        assert!(are_isomorphic(&assemble(&d.spec), &Graph::petersen()));
        assert_roundtrip(&Graph::cycle(5).unwrap());
    }

    // With l = 0 the Z vertices meet only through X or through Y, so pairs of
    // B-sets need the gap condition; the printed clause checks A-sets again.
    #[test]
    fn printed_item8_is_neither_sound_nor_complete() {
        let d = decompose_triangle_free(&Graph::petersen()).unwrap();
        assert_eq!(d.spec.l, 0);
        assert!(matches!(
            validate_gcb_spec(&d.spec, Item8Reading::Printed).item8,
            ItemStatus::Fail(_)
        ));
        assert!(is_2sc(&assemble(&d.spec)));

        let mut swapped = d.spec.clone();
        std::mem::swap(&mut swapped.witness.a_family, &mut swapped.witness.b_family);
        assert!(validate_gcb_spec(&swapped, Item8Reading::Printed).passes());
        assert!(!validate_gcb_spec(&swapped, Item8Reading::Symmetric).passes());
        assert!(!is_2sc(&assemble(&swapped)));
    }

    #[test]
    fn decompose_rejects() {
        assert_eq!(
            decompose_triangle_free(&Graph::path(4).unwrap()),
            Err(GcbError::NotTwoSelfCentered)
        );
        let (g, _) = fixtures::example1_corrected();
        assert!(matches!(decompose_triangle_free(&g), Err(GcbError::HasTriangle(_))));
    }

    #[test]
    fn sampling() {
        for seed in 0..20 {
            let spec = sample_gcb_spec(4, seed, Item8Reading::Printed).unwrap();
            assert_eq!(spec, GcbSpec::complete_bipartite(2, 2));
        }
        assert_eq!(
            sample_gcb_spec(3, 0, Item8Reading::Printed),
            Err(GcbError::BudgetTooSmall(3))
        );
        let a = sample_gcb_spec(10, 7, Item8Reading::Symmetric).unwrap();
        assert_eq!(a, sample_gcb_spec(10, 7, Item8Reading::Symmetric).unwrap());
        let g = build_gcb(&a, Item8Reading::Symmetric).unwrap();
        assert_eq!(g.n(), 10);
        assert!(is_2sc(&g) && g.is_triangle_free());
    }

    #[test]
    fn json_document() {
        let spec = GcbSpec::complete_bipartite(2, 3);
        let s = serde_json::to_string(&spec).unwrap();
        assert_eq!(s, r#"{"k":2,"l":3,"x":{"n":0,"edges":[]},"a_family":[],"b_family":[]}"#);
        assert_eq!(serde_json::from_str::<GcbSpec>(&s).unwrap(), spec);
    }
}
