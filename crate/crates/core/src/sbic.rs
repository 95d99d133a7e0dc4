//! Specialized bi-independent coverings.
//!
//! A triangle-free graph `X` carries an SBIC via two families of independent
//! sets `A_1..A_r` and `B_1..B_s` when
//!
//! 1. `X` is triangle-free;
//! 2. each family is a cover of `V(X)` by independent sets;
//! 3. every pair at distance at least 3 (or disconnected) shares some `A_i`
//!    or some `B_j`;
//! 4. whenever `d(u, A_i) >= 2` there is a `B_j` containing `u` and disjoint
//!    from `A_i`;
//! 5. the same with the families swapped.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{mask_of, Bits, Edge, Graph, Vertex};
use crate::metric::DistanceProfile;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    A,
    B,
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Family::A => "A",
            Family::B => "B",
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SbicError {
    #[error("set {family}{index} contains vertex {vertex}, outside a core of {n} vertices")]
    SetOutOfRange {
        family: Family,
        index: usize,
        vertex: Vertex,
        n: usize,
    },
    #[error("set {family}{index} is empty")]
    EmptySet { family: Family, index: usize },
    #[error("graph contains the triangle {0:?}")]
    HasTriangle([Vertex; 3]),
}

/// The two families, as sorted vertex lists. Sets may repeat.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SbicWitness {
    pub a_family: Vec<Vec<Vertex>>,
    pub b_family: Vec<Vec<Vertex>>,
}

impl SbicWitness {
    pub fn from_masks(a: &[u64], b: &[u64]) -> Self {
        SbicWitness {
            a_family: a.iter().map(|&m| Bits(m).collect()).collect(),
            b_family: b.iter().map(|&m| Bits(m).collect()).collect(),
        }
    }

    pub fn a_masks(&self) -> Vec<u64> {
        self.a_family.iter().map(|s| mask_of(s.iter().copied())).collect()
    }

    pub fn b_masks(&self) -> Vec<u64> {
        self.b_family.iter().map(|s| mask_of(s.iter().copied())).collect()
    }

    pub fn r(&self) -> usize {
        self.a_family.len()
    }

    pub fn s(&self) -> usize {
        self.b_family.len()
    }

    /// Rejects out-of-range members and empty sets.
    pub fn check_shape(&self, n: usize) -> Result<(), SbicError> {
        for (family, sets) in [(Family::A, &self.a_family), (Family::B, &self.b_family)] {
            for (index, set) in sets.iter().enumerate() {
                if set.is_empty() {
                    return Err(SbicError::EmptySet { family, index });
                }
                if let Some(&vertex) = set.iter().find(|&&v| v >= n) {
                    return Err(SbicError::SetOutOfRange {
                        family,
                        index,
                        vertex,
                        n,
                    });
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SbicViolation {
    Triangle {
        vertices: [Vertex; 3],
    },
    NotIndependent {
        family: Family,
        index: usize,
        edge: Edge,
    },
    Uncovered {
        family: Family,
        vertex: Vertex,
    },
    /// A pair at distance >= 3 that shares no set; `distance` is `None`
    /// for pairs in different components.
    DistantPairApart {
        pair: Edge,
        distance: Option<usize>,
    },
    /// `vertex` is at distance >= 2 from set `index` of `far_family`, and no
    /// set of the other family contains it while avoiding that set.
    NoDisjointPartner {
        far_family: Family,
        index: usize,
        vertex: Vertex,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionVerdict {
    pub holds: bool,
    pub counterexample: Option<SbicViolation>,
}

impl ConditionVerdict {
    fn from(counterexample: Option<SbicViolation>) -> Self {
        ConditionVerdict {
            holds: counterexample.is_none(),
            counterexample,
        }
    }
}

/// Per-condition verdicts, in the order listed in the module docs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SbicReport {
    pub triangle_free: ConditionVerdict,
    pub independent_covers: ConditionVerdict,
    pub distant_pairs_share_a_set: ConditionVerdict,
    pub a_sets_have_disjoint_b_partner: ConditionVerdict,
    pub b_sets_have_disjoint_a_partner: ConditionVerdict,
}

impl SbicReport {
    pub fn passes(&self) -> bool {
        self.conditions().iter().all(|c| c.holds)
    }

    pub fn conditions(&self) -> [&ConditionVerdict; 5] {
        [
            &self.triangle_free,
            &self.independent_covers,
            &self.distant_pairs_share_a_set,
            &self.a_sets_have_disjoint_b_partner,
            &self.b_sets_have_disjoint_a_partner,
        ]
    }

    pub fn first_failure(&self) -> Option<&SbicViolation> {
        self.conditions().into_iter().find_map(|c| c.counterexample.as_ref())
    }
}

pub fn verify_sbic(x: &Graph, w: &SbicWitness) -> Result<SbicReport, SbicError> {
    w.check_shape(x.n())?;
    let (a, b) = (w.a_masks(), w.b_masks());
    let profile = DistanceProfile::of(x);
    Ok(SbicReport {
        triangle_free: ConditionVerdict::from(x.triangles().first().map(|&t| SbicViolation::Triangle { vertices: t })),
        independent_covers: ConditionVerdict::from(
            cover_violation(x, Family::A, &a).or_else(|| cover_violation(x, Family::B, &b)),
        ),
        distant_pairs_share_a_set: ConditionVerdict::from(distant_pair_violation(x, &profile, &a, &b)),
        a_sets_have_disjoint_b_partner: ConditionVerdict::from(partner_violation(x, Family::A, &a, &b)),
        b_sets_have_disjoint_a_partner: ConditionVerdict::from(partner_violation(x, Family::B, &b, &a)),
    })
}

fn cover_violation(x: &Graph, family: Family, sets: &[u64]) -> Option<SbicViolation> {
    for (index, &set) in sets.iter().enumerate() {
        if let Some(u) = Bits(set).find(|&u| x.neighbors(u) & set != 0) {
            let v = (x.neighbors(u) & set).trailing_zeros() as Vertex;
            return Some(SbicViolation::NotIndependent {
                family,
                index,
                edge: Edge::new(u, v),
            });
        }
    }
    let covered = sets.iter().fold(0, |m, s| m | s);
    let missing = x.vertex_mask() & !covered;
    (missing != 0).then(|| SbicViolation::Uncovered {
        family,
        vertex: missing.trailing_zeros() as Vertex,
    })
}

fn distant_pair_violation(x: &Graph, profile: &DistanceProfile, a: &[u64], b: &[u64]) -> Option<SbicViolation> {
    let n = x.n();
    for u in 0..n {
        for v in u + 1..n {
            let d = profile.distance(u, v);
            if d < 3 {
                continue;
            }
            let pair = 1u64 << u | 1u64 << v;
            if !a.iter().chain(b).any(|s| s & pair == pair) {
                return Some(SbicViolation::DistantPairApart {
                    pair: Edge(u, v),
                    distance: profile.is_finite(d).then_some(d),
                });
            }
        }
    }
    None
}

/// `d(u, S) >= 2` means `u` is neither in `S` nor adjacent to it.
#[inline]
fn far_from(x: &Graph, u: Vertex, set: u64) -> bool {
    (1u64 << u | x.neighbors(u)) & set == 0
}

fn partner_violation(x: &Graph, far_family: Family, far: &[u64], other: &[u64]) -> Option<SbicViolation> {
    for (index, &set) in far.iter().enumerate() {
        for u in Bits(x.vertex_mask()) {
            if far_from(x, u, set) && !other.iter().any(|&o| o >> u & 1 == 1 && o & set == 0) {
                return Some(SbicViolation::NoDisjointPartner {
                    far_family,
                    index,
                    vertex: u,
                });
            }
        }
    }
    None
}

/// Builds a witness for a triangle-free graph.
///
/// Both families start as the singleton cover, which satisfies conditions
/// 1, 2, 4 and 5 outright. Each remaining deficit is repaired by adding one
/// greedily grown maximal independent set:
///
/// * a distant pair `{u, v}` gets an A-set grown from `{u, v}`;
/// * a vertex `u` far from `A_i` gets a B-set grown from `{u}` inside
///   `V \ A_i` (and symmetrically for far B-sets).
///
/// A repaired deficit stays repaired and every added set is new, so the loop
/// terminates.
pub fn construct_sbic(x: &Graph) -> Result<SbicWitness, SbicError> {
    if let Some(&t) = x.triangles().first() {
        return Err(SbicError::HasTriangle(t));
    }
    let singletons: Vec<u64> = (0..x.n()).map(|v| 1u64 << v).collect();
    Ok(construct_sbic_from(x, singletons.clone(), singletons))
}

/// Repair loop of [`construct_sbic`] starting from arbitrary independent
/// covers `a` and `b` of a triangle-free `x`.
pub fn construct_sbic_from(x: &Graph, mut a: Vec<u64>, mut b: Vec<u64>) -> SbicWitness {
    debug_assert!(x.is_triangle_free());
    let order: Vec<Vertex> = (0..x.n()).collect();
    let all = x.vertex_mask();
    let profile = DistanceProfile::of(x);
    loop {
        if let Some(SbicViolation::DistantPairApart { pair, .. }) = distant_pair_violation(x, &profile, &a, &b) {
            a.push(x.extend_independent(1 << pair.0 | 1 << pair.1, all, &order));
            continue;
        }
        if let Some(SbicViolation::NoDisjointPartner { index, vertex, .. }) = partner_violation(x, Family::A, &a, &b) {
            b.push(x.extend_independent(1 << vertex, all & !a[index], &order));
            continue;
        }
        if let Some(SbicViolation::NoDisjointPartner { index, vertex, .. }) = partner_violation(x, Family::B, &b, &a) {
            a.push(x.extend_independent(1 << vertex, all & !b[index], &order));
            continue;
        }
        break;
    }
    let w = SbicWitness::from_masks(&a, &b);
    debug_assert!(verify_sbic(x, &w).map(|r| r.passes()).unwrap_or(false));
    w
}
