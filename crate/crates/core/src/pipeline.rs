//! Greedy contraction sequences gated by p-link conditions.

use std::collections::{BTreeMap, BTreeSet};

use crate::complex::{Simplex, SimplicialComplex};
use crate::contraction::{contract_edge_with, WeightMerge};
use crate::error::{invalid, Result};
use crate::homology::{homology_group, HomologyGroup};
use crate::matrix::boundary_matrix;
use crate::tu::{is_totally_unimodular, TuStrategy, TuVerdict};

/// Search budget for the TU verdicts in a [`TopologyReport`].
pub const DEFAULT_TU_BUDGET: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GateScope {
    /// The full link condition `Lk a ∩ Lk b = Lk ab`.
    FullLink,
    /// Only the listed p-link conditions.
    ListedOnly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GatePolicy {
    required: BTreeSet<usize>,
    scope: GateScope,
}

impl GatePolicy {
    pub fn new(required: impl IntoIterator<Item = usize>, scope: GateScope) -> Result<Self> {
        let required: BTreeSet<usize> = required.into_iter().collect();
        if scope == GateScope::ListedOnly && required.is_empty() {
            return invalid("a listed-only gate needs at least one p");
        }
        Ok(GatePolicy { required, scope })
    }

    pub fn full_link() -> Self {
        GatePolicy {
            required: BTreeSet::new(),
            scope: GateScope::FullLink,
        }
    }

    /// Gate on exactly the given p-link conditions.
    pub fn listed(required: impl IntoIterator<Item = usize>) -> Result<Self> {
        Self::new(required, GateScope::ListedOnly)
    }

    pub fn required(&self) -> &BTreeSet<usize> {
        &self.required
    }

    pub fn scope(&self) -> GateScope {
        self.scope
    }

    /// Verdicts for each checked p and whether the edge passes.
    fn evaluate(
        &self,
        complex: &SimplicialComplex,
        edge: &Simplex,
    ) -> (BTreeMap<usize, bool>, bool) {
        let links = complex
            .edge_links(edge)
            .expect("edge taken from the complex");
        match self.scope {
            GateScope::ListedOnly => {
                let verdicts: BTreeMap<usize, bool> = self
                    .required
                    .iter()
                    .map(|&p| (p, links.satisfies(p as i64)))
                    .collect();
                let pass = verdicts.values().all(|&v| v);
                (verdicts, pass)
            }
            GateScope::FullLink => {
                let top = complex.dim().unwrap_or(0);
                let verdicts = (0..=top).map(|p| (p, links.satisfies(p as i64))).collect();
                (verdicts, links.satisfies_all())
            }
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum EdgeOrder {
    /// Canonical simplex order.
    #[default]
    Lexicographic,
    /// Increasing edge weight, canonical order on ties.
    LightestFirst,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Action {
    Contracted,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContractionRecord {
    pub edge: Simplex,
    pub conditions: BTreeMap<usize, bool>,
    pub action: Action,
    /// Homology after the contraction, when snapshots are requested.
    pub snapshot: Option<Vec<HomologyGroup>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ContractionLog {
    pub records: Vec<ContractionRecord>,
}

impl ContractionLog {
    pub fn contracted(&self) -> impl Iterator<Item = &Simplex> + '_ {
        self.records
            .iter()
            .filter(|r| r.action == Action::Contracted)
            .map(|r| &r.edge)
    }

    pub fn steps(&self) -> usize {
        self.contracted().count()
    }

    /// Re-applies the contracted edges (smaller vertex kept) to `initial`.
    pub fn replay(&self, initial: &SimplicialComplex) -> Result<SimplicialComplex> {
        let mut k = initial.clone();
        for e in self.contracted() {
            k = contract_edge_with(&k, e, e.vertices()[0], WeightMerge::default())?.target;
        }
        Ok(k)
    }
}

/// p-link verdicts for `0 <= p <= max_p` (clamped to the dimension) of every edge.
pub fn scan_edges(
    complex: &SimplicialComplex,
    max_p: usize,
) -> BTreeMap<Simplex, BTreeMap<usize, bool>> {
    let top = max_p.min(complex.dim().unwrap_or(0));
    complex
        .edges()
        .map(|e| {
            let links = complex.edge_links(e).expect("edge of the complex");
            (
                e.clone(),
                (0..=top).map(|p| (p, links.satisfies(p as i64))).collect(),
            )
        })
        .collect()
}

fn ordered_edges(complex: &SimplicialComplex, order: EdgeOrder) -> Vec<Simplex> {
    let mut edges: Vec<Simplex> = complex.edges().cloned().collect();
    if order == EdgeOrder::LightestFirst {
        edges.sort_by(|x, y| {
            complex
                .weight(x)
                .cmp(&complex.weight(y))
                .then_with(|| x.cmp(y))
        });
    }
    edges
}

/// Options beyond the gate for [`reduce_with`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReduceOptions {
    pub order: EdgeOrder,
    pub max_steps: usize,
    /// Dimensions to snapshot after every contraction; empty disables snapshots.
    pub snapshot_dims: Vec<usize>,
}

/// Contracts the first passing edge (per `order`) until none passes or
/// `max_steps` contractions were made.
pub fn reduce(
    complex: &SimplicialComplex,
    policy: &GatePolicy,
    order: EdgeOrder,
    max_steps: usize,
) -> (SimplicialComplex, ContractionLog) {
    reduce_with(
        complex,
        policy,
        &ReduceOptions {
            order,
            max_steps,
            snapshot_dims: Vec::new(),
        },
    )
}

pub fn reduce_with(
    complex: &SimplicialComplex,
    policy: &GatePolicy,
    options: &ReduceOptions,
) -> (SimplicialComplex, ContractionLog) {
    let mut k = complex.clone();
    let mut log = ContractionLog::default();
    let mut steps = 0;
    while steps < options.max_steps {
        let mut chosen = None;
        for e in ordered_edges(&k, options.order) {
            let (conditions, pass) = policy.evaluate(&k, &e);
            if pass {
                chosen = Some((e, conditions));
                break;
            }
            log.records.push(ContractionRecord {
                edge: e,
                conditions,
                action: Action::Skipped,
                snapshot: None,
            });
        }
        let Some((edge, conditions)) = chosen else {
            break;
        };
        k = contract_edge_with(&k, &edge, edge.vertices()[0], WeightMerge::default())
            .expect("edge of the complex")
            .target;
        let snapshot = (!options.snapshot_dims.is_empty()).then(|| {
            options
                .snapshot_dims
                .iter()
                .map(|&p| homology_or_trivial(&k, p))
                .collect()
        });
        log.records.push(ContractionRecord {
            edge,
            conditions,
            action: Action::Contracted,
            snapshot,
        });
        steps += 1;
    }
    (k, log)
}

/// `H_p`, reported as trivial above the dimension.
fn homology_or_trivial(k: &SimplicialComplex, p: usize) -> HomologyGroup {
    homology_group(k, p).unwrap_or(HomologyGroup {
        p,
        betti: 0,
        torsion: Vec::new(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionReport {
    pub p: usize,
    pub before: HomologyGroup,
    pub after: HomologyGroup,
    pub betti_delta: i64,
    pub torsion_changed: bool,
    /// TU of `∂_{p+1}`; `None` when inconclusive. A complex without
    /// `(p+1)`-simplices counts as TU.
    pub tu_before: Option<bool>,
    pub tu_after: Option<bool>,
}

impl DimensionReport {
    /// Relative torsion in dimension p, i.e. `∂_{p+1}` not TU.
    pub fn relative_torsion(&self) -> (Option<bool>, Option<bool>) {
        (self.tu_before.map(|t| !t), self.tu_after.map(|t| !t))
    }

    pub fn unchanged(&self) -> bool {
        self.before == self.after && self.tu_before == self.tu_after
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TopologyReport {
    pub vertices: (usize, usize),
    pub simplices: (usize, usize),
    pub dims: Vec<DimensionReport>,
}

fn tu_of(k: &SimplicialComplex, p: usize, budget: u64) -> Option<bool> {
    let Ok(d) = boundary_matrix(k, p + 1) else {
        return Some(true);
    };
    match is_totally_unimodular(&d.entries, TuStrategy::Circuit, budget).verdict {
        TuVerdict::Unimodular => Some(true),
        TuVerdict::NotUnimodular(_) => Some(false),
        TuVerdict::Inconclusive => None,
    }
}

pub fn report(
    before: &SimplicialComplex,
    after: &SimplicialComplex,
    dims: &[usize],
) -> TopologyReport {
    report_with_budget(before, after, dims, DEFAULT_TU_BUDGET)
}

pub fn report_with_budget(
    before: &SimplicialComplex,
    after: &SimplicialComplex,
    dims: &[usize],
    budget: u64,
) -> TopologyReport {
    let dims = dims
        .iter()
        .map(|&p| {
            let (hb, ha) = (
                homology_or_trivial(before, p),
                homology_or_trivial(after, p),
            );
            DimensionReport {
                p,
                betti_delta: ha.betti as i64 - hb.betti as i64,
                torsion_changed: ha.torsion != hb.torsion,
                before: hb,
                after: ha,
                tu_before: tu_of(before, p, budget),
                tu_after: tu_of(after, p, budget),
            }
        })
        .collect();
    TopologyReport {
        vertices: (before.count_of_dim(0), after.count_of_dim(0)),
        simplices: (before.len(), after.len()),
        dims,
    }
}
