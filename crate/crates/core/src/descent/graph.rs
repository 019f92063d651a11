use std::collections::BTreeMap;
use std::str::FromStr;

use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use super::{is_base, is_reducible, reduction_step, DescentError, ReductionStep, BASE_WEIGHTS};
use crate::primes::PrimeTable;

/// Directed graph on the even weights `2..=max_k`; each reducible weight
/// points at its two candidate residual weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DescentGraph {
    max_k: u64,
    // indexed by k / 2
    steps: Vec<Option<ReductionStep>>,
}

impl DescentGraph {
    pub fn max_k(&self) -> u64 {
        self.max_k
    }

    pub fn base_set(&self) -> &'static [u64] {
        &BASE_WEIGHTS
    }

    pub fn nodes(&self) -> impl Iterator<Item = u64> + '_ {
        (1..self.steps.len() as u64).map(|i| 2 * i)
    }

    pub fn node_count(&self) -> usize {
        self.steps.len().saturating_sub(1)
    }

    pub fn step(&self, k: u64) -> Option<&ReductionStep> {
        if k % 2 != 0 {
            return None;
        }
        self.steps.get((k / 2) as usize).and_then(Option::as_ref)
    }

    pub fn steps(&self) -> impl Iterator<Item = &ReductionStep> {
        self.steps.iter().flatten()
    }

    /// `(k, (k_hi, k_lo))` in ascending `k`.
    pub fn edges(&self) -> impl Iterator<Item = (u64, (u64, u64))> + '_ {
        self.steps().map(|s| (s.k, s.targets()))
    }

    fn contains_node(&self, k: u64) -> bool {
        k >= 2 && k % 2 == 0 && k <= self.max_k
    }

    /// Longest number of reduction steps from each node down to the base set,
    /// or `None` for nodes whose descent leaves the graph or fails to shrink.
    fn depths(&self) -> Vec<Option<usize>> {
        let mut depth: Vec<Option<usize>> = vec![None; self.steps.len()];
        for k in self.nodes() {
            let idx = (k / 2) as usize;
            depth[idx] = if is_base(k) {
                Some(0)
            } else if let Some(step) = &self.steps[idx] {
                let child = |c: u64| -> Option<usize> {
                    if c < k && self.contains_node(c) {
                        depth[(c / 2) as usize]
                    } else {
                        None
                    }
                };
                match (child(step.k_hi), child(step.k_lo)) {
                    (Some(a), Some(b)) => Some(1 + a.max(b)),
                    _ => None,
                }
            } else {
                None
            };
        }
        depth
    }

    /// Follows one branch policy from `k` until a base weight.
    pub fn chain(&self, k: u64, policy: BranchPolicy) -> Result<Vec<ReductionStep>, DescentError> {
        let depths = self.depths();
        let mut path = Vec::new();
        let mut current = k;
        while !is_base(current) {
            let step = self
                .step(current)
                .ok_or(DescentError::NotReducible(current))?;
            let next = match policy {
                BranchPolicy::Hi => step.k_hi,
                BranchPolicy::Lo => step.k_lo,
                BranchPolicy::Longest => {
                    let d = |c: u64| {
                        if self.contains_node(c) {
                            depths[(c / 2) as usize]
                        } else {
                            None
                        }
                    };
                    if d(step.k_lo) > d(step.k_hi) {
                        step.k_lo
                    } else {
                        step.k_hi
                    }
                }
            };
            path.push(step.clone());
            if next >= current {
                break;
            }
            current = next;
        }
        Ok(path)
    }
}

#[derive(Serialize)]
struct EdgeRepr {
    from: u64,
    to: (u64, u64),
}

impl Serialize for DescentGraph {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("DescentGraph", 5)?;
        s.serialize_field("max_k", &self.max_k)?;
        s.serialize_field("base_set", &BASE_WEIGHTS)?;
        s.serialize_field("nodes", &self.nodes().collect::<Vec<_>>())?;
        let edges: Vec<EdgeRepr> = self
            .edges()
            .map(|(from, to)| EdgeRepr { from, to })
            .collect();
        s.serialize_field("edges", &edges)?;
        s.serialize_field("steps", &self.steps().collect::<Vec<_>>())?;
        s.end()
    }
}

pub fn build_graph(max_k: u64, table: &PrimeTable) -> Result<DescentGraph, DescentError> {
    if max_k < 14 {
        return Err(DescentError::GraphTooSmall(max_k));
    }
    let max_k = max_k - max_k % 2;
    let mut steps = Vec::with_capacity((max_k / 2 + 1) as usize);
    steps.push(None);
    for k in (2..=max_k).step_by(2) {
        steps.push(if is_reducible(k) {
            Some(reduction_step(k, table)?)
        } else {
            None
        });
    }
    Ok(DescentGraph { max_k, steps })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BranchPolicy {
    Hi,
    Lo,
    Longest,
}

impl FromStr for BranchPolicy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "hi" | "hi-branch" => Ok(BranchPolicy::Hi),
            "lo" | "lo-branch" => Ok(BranchPolicy::Lo),
            "longest" => Ok(BranchPolicy::Longest),
            other => Err(format!("unknown branch policy {other:?}")),
        }
    }
}

/// Descent path from `k` to the base set. Base weights give an empty path.
pub fn chain(
    k: u64,
    policy: BranchPolicy,
    table: &PrimeTable,
) -> Result<Vec<ReductionStep>, DescentError> {
    if is_base(k) {
        return Ok(Vec::new());
    }
    if !is_reducible(k) {
        return Err(DescentError::NotReducible(k));
    }
    build_graph(k.max(14), table)?.chain(k, policy)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkipRecord {
    pub k: u64,
    pub p: u64,
    pub prime_skips: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TerminationReport {
    pub max_k: u64,
    pub node_count: usize,
    pub edge_count: usize,
    pub terminates: bool,
    /// Nodes whose descent does not reach the base set.
    pub stuck: Vec<u64>,
    /// Nodes with a step invariant violation, with the reasons.
    pub invariant_failures: Vec<(u64, Vec<String>)>,
    pub longest_chain: usize,
    pub longest_path: Vec<u64>,
    pub skipped: Vec<SkipRecord>,
    pub skip_histogram: BTreeMap<u32, usize>,
}

impl TerminationReport {
    pub fn passed(&self) -> bool {
        self.terminates
    }
}

pub fn verify_termination(graph: &DescentGraph) -> TerminationReport {
    let depths = graph.depths();
    let stuck: Vec<u64> = graph
        .nodes()
        .filter(|&k| depths[(k / 2) as usize].is_none())
        .collect();
    let invariant_failures: Vec<(u64, Vec<String>)> = graph
        .steps()
        .filter_map(|s| {
            let v = s.invariant_violations();
            (!v.is_empty()).then_some((s.k, v))
        })
        .collect();

    let (mut longest_chain, mut deepest) = (0usize, 2u64);
    for k in graph.nodes() {
        if let Some(d) = depths[(k / 2) as usize] {
            if d > longest_chain {
                longest_chain = d;
                deepest = k;
            }
        }
    }
    let mut longest_path = vec![deepest];
    if stuck.is_empty() {
        if let Ok(path) = graph.chain(deepest, BranchPolicy::Longest) {
            longest_path.extend(path.iter().map(|s| {
                let depth = |c: u64| depths[(c / 2) as usize];
                if depth(s.k_lo) > depth(s.k_hi) {
                    s.k_lo
                } else {
                    s.k_hi
                }
            }));
        }
    }

    let mut skip_histogram = BTreeMap::new();
    let mut skipped = Vec::new();
    for s in graph.steps() {
        *skip_histogram.entry(s.prime_skips).or_insert(0) += 1;
        if s.prime_skips > 0 {
            skipped.push(SkipRecord {
                k: s.k,
                p: s.p,
                prime_skips: s.prime_skips,
            });
        }
    }

    let node_count = graph.node_count();
    TerminationReport {
        max_k: graph.max_k(),
        node_count,
        edge_count: graph.steps().count(),
        terminates: stuck.is_empty()
            && invariant_failures.is_empty()
            && longest_chain <= node_count,
        stuck,
        invariant_failures,
        longest_chain,
        longest_path,
        skipped,
        skip_histogram,
    }
}
