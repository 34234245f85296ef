//! Kochen-Specker scenarios: intertwined contexts, {0,1} valuations,
//! parity certificates and noncontextual hidden-variable models.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use thiserror::Error;

use crate::exactlin::RVector;
use crate::qlogic::{validate_context, Context, ContextError, LogicError, Ray};

pub mod feasibility;
mod model;
mod search;

pub use model::{noncontextual_model, ModelError, ModelOutcome, NoncontextualModel};
pub use search::{count_valuations, enumerate_valuations, find_valuation, EXHAUSTIVE_BOUND};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScenarioError {
    #[error("scenario has no contexts")]
    Empty,
    #[error("ambient dimension must be at least 2, got {0}")]
    BadDimension(usize),
    #[error("context {index}: {source}")]
    InvalidContext {
        index: usize,
        #[source]
        source: ContextError,
    },
    #[error("ray {id}: {source}")]
    InvalidRay {
        id: String,
        #[source]
        source: LogicError,
    },
    #[error("ray id `{0}` names two different rays")]
    DuplicateId(String),
    #[error("{rays} rays exceed the exhaustive bound of {bound}")]
    ExceedsBound { rays: usize, bound: usize },
}

/// One ray occurrence inside a raw context.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawRay {
    pub id: String,
    pub coords: RVector,
}

impl RawRay {
    pub fn new(id: impl Into<String>, coords: RVector) -> Self {
        RawRay {
            id: id.into(),
            coords,
        }
    }

    pub fn from_ints(id: impl Into<String>, coords: &[i64]) -> Self {
        Self::new(id, RVector::from_ints(coords))
    }
}

/// Deduplicated rays plus the contexts that reference them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KSScenario {
    dim: usize,
    rays: Vec<Ray>,
    contexts: Vec<Context>,
    members: Vec<Vec<usize>>,
}

impl KSScenario {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[Ray] {
        &self.rays
    }

    pub fn contexts(&self) -> &[Context] {
        &self.contexts
    }

    /// Ray indices of each context, in context order.
    pub fn members(&self) -> &[Vec<usize>] {
        &self.members
    }

    pub fn ray_index(&self, id: &str) -> Option<usize> {
        self.rays.iter().position(|r| r.id() == id)
    }

    /// Number of contexts each ray belongs to.
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut counts = vec![0; self.rays.len()];
        for ctx in &self.members {
            for &r in ctx {
                counts[r] += 1;
            }
        }
        counts
    }

    /// The same scenario with context `index` removed and rays that are no
    /// longer referenced dropped.
    pub fn without_context(&self, index: usize) -> Result<KSScenario, ScenarioError> {
        let keep: Vec<usize> = (0..self.contexts.len()).filter(|&k| k != index).collect();
        self.sub_scenario(&keep)
    }

    /// Scenario formed by the listed contexts, in the given order.
    pub fn sub_scenario(&self, contexts: &[usize]) -> Result<KSScenario, ScenarioError> {
        let raw: Vec<Vec<RawRay>> = contexts
            .iter()
            .map(|&k| {
                self.contexts[k]
                    .rays()
                    .iter()
                    .map(|r| RawRay::new(r.id(), r.coords().clone()))
                    .collect()
            })
            .collect();
        build_scenario(self.dim, &raw, true)
    }
}

/// Builds a scenario from raw contexts.
///
/// With `merge`, proportional rays are one ray whose id is the id of its
/// first occurrence. Without it every occurrence is its own ray; ids that
/// occur in several contexts are suffixed `@k` with the 1-based context
/// number.
pub fn build_scenario(
    dim: usize,
    contexts: &[Vec<RawRay>],
    merge: bool,
) -> Result<KSScenario, ScenarioError> {
    if contexts.is_empty() {
        return Err(ScenarioError::Empty);
    }
    if dim < 2 {
        return Err(ScenarioError::BadDimension(dim));
    }
    let mut occurrences: HashMap<&str, usize> = HashMap::new();
    for ctx in contexts {
        for raw in ctx {
            *occurrences.entry(raw.id.as_str()).or_default() += 1;
        }
    }

    let mut rays: Vec<Ray> = Vec::new();
    let mut by_coords: HashMap<RVector, usize> = HashMap::new();
    let mut by_id: HashMap<String, usize> = HashMap::new();
    let mut members = Vec::with_capacity(contexts.len());
    let mut validated = Vec::with_capacity(contexts.len());

    for (k, ctx) in contexts.iter().enumerate() {
        let mut local = Vec::with_capacity(ctx.len());
        for raw in ctx {
            let ray = Ray::new(raw.id.clone(), &raw.coords).map_err(|source| {
                ScenarioError::InvalidRay {
                    id: raw.id.clone(),
                    source,
                }
            })?;
            local.push(ray);
        }
        let mut resolved = Vec::with_capacity(local.len());
        let mut indices = Vec::with_capacity(local.len());
        for ray in local {
            let index = if merge {
                let existing = by_coords.get(ray.coords()).copied();
                if let Some(&named) = by_id.get(ray.id()) {
                    if Some(named) != existing {
                        return Err(ScenarioError::DuplicateId(ray.id().to_string()));
                    }
                }
                match existing {
                    Some(i) => {
                        // aliases resolve to the first id
                        by_id.entry(ray.id().to_string()).or_insert(i);
                        i
                    }
                    None => push_ray(&mut rays, &mut by_id, ray.clone())?,
                }
            } else {
                let id = if occurrences[ray.id()] > 1 {
                    format!("{}@{}", ray.id(), k + 1)
                } else {
                    ray.id().to_string()
                };
                push_ray(&mut rays, &mut by_id, ray.with_id(id))?
            };
            if merge {
                by_coords.entry(ray.coords().clone()).or_insert(index);
            }
            resolved.push(rays[index].clone());
            indices.push(index);
        }
        let context = validate_context(&resolved, dim)
            .map_err(|source| ScenarioError::InvalidContext { index: k, source })?;
        validated.push(context);
        members.push(indices);
    }

    Ok(KSScenario {
        dim,
        rays,
        contexts: validated,
        members,
    })
}

fn push_ray(
    rays: &mut Vec<Ray>,
    by_id: &mut HashMap<String, usize>,
    ray: Ray,
) -> Result<usize, ScenarioError> {
    if let Some(&existing) = by_id.get(ray.id()) {
        if rays[existing].coords() != ray.coords() {
            return Err(ScenarioError::DuplicateId(ray.id().to_string()));
        }
        return Ok(existing);
    }
    let index = rays.len();
    by_id.insert(ray.id().to_string(), index);
    rays.push(ray);
    Ok(index)
}

/// An assignment of values to the rays of a scenario, indexed like
/// [`KSScenario::rays`]. Valuations returned by the search functions
/// satisfy the exactly-one rule in every context; hand-built ones may not,
/// which is what [`verify_func`] reports on.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Valuation {
    values: Vec<u8>,
}

impl Valuation {
    pub fn new(values: Vec<u8>) -> Self {
        Valuation { values }
    }

    pub fn from_ids<'a>(
        scenario: &KSScenario,
        ones: impl IntoIterator<Item = &'a str>,
    ) -> Option<Self> {
        let mut values = vec![0; scenario.rays.len()];
        for id in ones {
            values[scenario.ray_index(id)?] = 1;
        }
        Some(Valuation { values })
    }

    pub fn values(&self) -> &[u8] {
        &self.values
    }

    pub fn value(&self, ray: usize) -> u8 {
        self.values[ray]
    }

    /// Ids of the rays valued 1.
    pub fn true_rays<'s>(&'s self, scenario: &'s KSScenario) -> impl Iterator<Item = &'s str> {
        scenario
            .rays
            .iter()
            .zip(&self.values)
            .filter(|(_, &v)| v == 1)
            .map(|(r, _)| r.id())
    }

    pub fn as_map(&self, scenario: &KSScenario) -> BTreeMap<String, u8> {
        scenario
            .rays
            .iter()
            .zip(&self.values)
            .map(|(r, &v)| (r.id().to_string(), v))
            .collect()
    }
}

/// Proof of non-colorability by counting: every ray lies in an even number
/// of contexts while the number of contexts is odd.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParityCertificate {
    pub ray_multiplicities: BTreeMap<String, usize>,
    pub context_count: usize,
}

/// Summing the exactly-one rule over all contexts gives `context_count` on
/// one side and a sum of even multiples on the other, so a certificate
/// rules out every valuation. Returns `None` unless the parity structure is
/// present; this does not search for other proofs.
pub fn parity_certificate(s: &KSScenario) -> Option<ParityCertificate> {
    let mult = s.multiplicities();
    let count = s.contexts.len();
    if count % 2 == 0 || mult.iter().any(|m| m % 2 != 0) {
        return None;
    }
    Some(ParityCertificate {
        ray_multiplicities: s
            .rays
            .iter()
            .zip(mult)
            .map(|(r, m)| (r.id().to_string(), m))
            .collect(),
        context_count: count,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FuncViolation {
    /// Orthogonal rays of one context both valued nonzero.
    Product {
        context: usize,
        first: String,
        second: String,
    },
    /// `v(P)² ≠ v(P)`.
    NotIdempotent { ray: String, value: u8 },
    /// Context values do not sum to 1.
    Additivity { context: usize, sum: u64 },
}

impl fmt::Display for FuncViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FuncViolation::Product {
                context,
                first,
                second,
            } => write!(
                f,
                "context {}: v({first})·v({second}) ≠ 0 although the projectors are orthogonal",
                context + 1
            ),
            FuncViolation::NotIdempotent { ray, value } => {
                write!(f, "ray {ray}: value {value} is not idempotent")
            }
            FuncViolation::Additivity { context, sum } => {
                write!(f, "context {}: values sum to {sum}, not 1", context + 1)
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FuncReport {
    pub violations: Vec<FuncViolation>,
}

impl FuncReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("valuation has {found} values, scenario has {expected} rays")]
pub struct ValuationShapeError {
    pub found: usize,
    pub expected: usize,
}

/// Checks the product rule on orthogonal pairs sharing a context,
/// idempotence of every value, and the sum rule on every context.
pub fn verify_func(v: &Valuation, s: &KSScenario) -> Result<FuncReport, ValuationShapeError> {
    if v.values.len() != s.rays.len() {
        return Err(ValuationShapeError {
            found: v.values.len(),
            expected: s.rays.len(),
        });
    }
    let mut report = FuncReport::default();
    for (ray, &value) in s.rays.iter().zip(&v.values) {
        if value * value != value {
            report.violations.push(FuncViolation::NotIdempotent {
                ray: ray.id().to_string(),
                value,
            });
        }
    }
    for (k, ctx) in s.members.iter().enumerate() {
        for (i, &a) in ctx.iter().enumerate() {
            for &b in &ctx[i + 1..] {
                if v.values[a] != 0 && v.values[b] != 0 {
                    report.violations.push(FuncViolation::Product {
                        context: k,
                        first: s.rays[a].id().to_string(),
                        second: s.rays[b].id().to_string(),
                    });
                }
            }
        }
        let sum: u64 = ctx.iter().map(|&r| u64::from(v.values[r])).sum();
        if sum != 1 {
            report.violations.push(FuncViolation::Additivity { context: k, sum });
        }
    }
    Ok(report)
}

/// Orthogonality graph on the scenario's rays. Vertices are sorted by id;
/// each edge is stored with its endpoints in id order and the edge list is
/// sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrthogonalityGraph {
    pub vertices: Vec<String>,
    pub edges: Vec<(String, String)>,
}

impl OrthogonalityGraph {
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph orthogonality {\n");
        for v in &self.vertices {
            out.push_str(&format!("  \"{}\";\n", escape(v)));
        }
        for (a, b) in &self.edges {
            out.push_str(&format!("  \"{}\" -- \"{}\";\n", escape(a), escape(b)));
        }
        out.push_str("}\n");
        out
    }
}

fn escape(id: &str) -> String {
    id.replace('\\', "\\\\").replace('"', "\\\"")
}

pub fn orthogonality_graph(s: &KSScenario) -> OrthogonalityGraph {
    let mut vertices: Vec<String> = s.rays.iter().map(|r| r.id().to_string()).collect();
    vertices.sort();
    let mut edges = Vec::new();
    for (i, a) in s.rays.iter().enumerate() {
        for b in &s.rays[i + 1..] {
            if a.is_orthogonal(b).expect("scenario rays share a dimension") {
                let (x, y) = if a.id() <= b.id() { (a, b) } else { (b, a) };
                edges.push((x.id().to_string(), y.id().to_string()));
            }
        }
    }
    edges.sort();
    OrthogonalityGraph { vertices, edges }
}

/// Ray-index neighbourhoods: rays sharing at least one context.
pub(crate) fn context_neighbours(s: &KSScenario) -> Vec<Vec<usize>> {
    let mut sets: Vec<HashSet<usize>> = vec![HashSet::new(); s.rays.len()];
    for ctx in &s.members {
        for &a in ctx {
            for &b in ctx {
                if a != b {
                    sets[a].insert(b);
                }
            }
        }
    }
    sets.into_iter()
        .map(|set| {
            let mut v: Vec<usize> = set.into_iter().collect();
            v.sort_unstable();
            v
        })
        .collect()
}

/// The nine-context, eighteen-ray set in dimension four, as raw contexts.
/// Ray ids `v01`..`v18` follow first appearance.
pub fn cabello18_contexts() -> Vec<Vec<RawRay>> {
    const CONTEXTS: [[[i64; 4]; 4]; 9] = [
        [[0, 0, 0, 1], [0, 0, 1, 0], [1, 1, 0, 0], [1, -1, 0, 0]],
        [[0, 0, 0, 1], [0, 1, 0, 0], [1, 0, 1, 0], [1, 0, -1, 0]],
        [[1, -1, 1, -1], [1, -1, -1, 1], [1, 1, 0, 0], [0, 0, 1, 1]],
        [[1, -1, 1, -1], [1, 1, 1, 1], [1, 0, -1, 0], [0, 1, 0, -1]],
        [[0, 0, 1, 0], [0, 1, 0, 0], [1, 0, 0, 1], [1, 0, 0, -1]],
        [[1, -1, -1, 1], [1, 1, 1, 1], [1, 0, 0, -1], [0, 1, -1, 0]],
        [[1, 1, -1, 1], [1, 1, 1, -1], [1, -1, 0, 0], [0, 0, 1, 1]],
        [[1, 1, -1, 1], [-1, 1, 1, 1], [1, 0, 1, 0], [0, 1, 0, -1]],
        [[1, 1, 1, -1], [-1, 1, 1, 1], [1, 0, 0, 1], [0, 1, -1, 0]],
    ];
    let mut seen: Vec<RVector> = Vec::new();
    CONTEXTS
        .iter()
        .map(|ctx| {
            ctx.iter()
                .map(|c| {
                    let coords = RVector::from_ints(c);
                    let canonical = coords.primitive_integer().expect("nonzero");
                    let n = match seen.iter().position(|s| *s == canonical) {
                        Some(i) => i + 1,
                        None => {
                            seen.push(canonical);
                            seen.len()
                        }
                    };
                    RawRay::new(format!("v{n:02}"), coords)
                })
                .collect()
        })
        .collect()
}

pub fn cabello18(merge: bool) -> KSScenario {
    build_scenario(4, &cabello18_contexts(), merge).expect("fixture is valid")
}
