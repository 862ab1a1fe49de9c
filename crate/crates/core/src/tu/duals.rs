//! Dual-graph view of an edge contraction: mirror and collapsing duals, the
//! circuit map `f` and the construction of a preimage circuit `C_f`.

use std::collections::{BTreeMap, BTreeSet};

use crate::complex::Simplex;
use crate::contraction::{EdgeContraction, SimplexClass};
use crate::error::{invalid, DomainExclusion, Error, Result};
use crate::matrix::boundary_matrix_unchecked;

use super::graph::{Circuit, IncidenceGraph, SignedBipartiteGraph};

/// Tag of a dual vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VertexTag {
    /// Index of the partner on the same side of the graph.
    Mirror(usize),
    Collapsing,
    Injective,
}

/// Tag of a dual edge `(row, col)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EdgeTag {
    /// The edge with the same image under `γ_ab`.
    MirrorEdge((usize, usize)),
    /// The other half of the mirror connection through the same collapsing column.
    MirrorConnection((usize, usize)),
    /// Both endpoints collapsing.
    Collapsing,
    Plain,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualClassification {
    pub rows: Vec<VertexTag>,
    pub cols: Vec<VertexTag>,
    pub edges: BTreeMap<(usize, usize), EdgeTag>,
}

fn vertex_tags(contraction: &EdgeContraction, simplices: &[Simplex]) -> Vec<VertexTag> {
    simplices
        .iter()
        .map(
            |s| match contraction.class(s).expect("simplex of the source") {
                SimplexClass::Collapsing => VertexTag::Collapsing,
                SimplexClass::Injective => VertexTag::Injective,
                SimplexClass::Mirror(m) => VertexTag::Mirror(
                    simplices
                        .binary_search(m)
                        .expect("mirror has the same dimension"),
                ),
            },
        )
        .collect()
}

/// Tags every vertex and edge of `graph`, which must be a graph of `contraction.source`.
pub fn classify_duals(
    contraction: &EdgeContraction,
    graph: &IncidenceGraph,
) -> Result<DualClassification> {
    let expected = boundary_matrix_unchecked(&contraction.source, graph.p);
    if expected.row_simplices != graph.q_simplices || expected.col_simplices != graph.p_simplices {
        return invalid("graph was not built from the contraction's source complex");
    }
    let rows = vertex_tags(contraction, &graph.q_simplices);
    let cols = vertex_tags(contraction, &graph.p_simplices);
    let mut edges = BTreeMap::new();
    for (r, c, _) in graph.graph.edges() {
        let tag = match (&rows[r], &cols[c]) {
            (VertexTag::Collapsing, VertexTag::Collapsing) => EdgeTag::Collapsing,
            (_, VertexTag::Collapsing) => {
                let VertexTag::Mirror(r2) = rows[r] else {
                    unreachable!("a non-collapsing face of a collapsing simplex is a mirror")
                };
                EdgeTag::MirrorConnection((r2, c))
            }
            (row, VertexTag::Mirror(c2)) => {
                // The partner face is the mirror face, or the common face itself.
                let r2 = match row {
                    VertexTag::Mirror(r2) => *r2,
                    _ => r,
                };
                EdgeTag::MirrorEdge((r2, *c2))
            }
            _ => EdgeTag::Plain,
        };
        edges.insert((r, c), tag);
    }
    Ok(DualClassification { rows, cols, edges })
}

/// The circuit map between `G_{p+1}(K)` and `G_{p+1}(K')` for one contraction.
#[derive(Clone, Debug)]
pub struct CircuitTransport<'c> {
    pub contraction: &'c EdgeContraction,
    pub p: usize,
    pub source: IncidenceGraph,
    pub target: IncidenceGraph,
    pub duals: DualClassification,
}

fn graph_of(complex: &crate::SimplicialComplex, p: usize) -> IncidenceGraph {
    let d = boundary_matrix_unchecked(complex, p);
    let graph = SignedBipartiteGraph::from_matrix(&d.entries).expect("boundary entries are ±1");
    IncidenceGraph {
        p,
        q_simplices: d.row_simplices,
        p_simplices: d.col_simplices,
        graph,
    }
}

/// Intermediate subgraphs of the construction of `C_f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructTrace {
    pub input: Circuit,
    /// After removing collapsing edges.
    pub step1: Circuit,
    /// After moving b-side mirror edges to the a side.
    pub step2: Circuit,
    /// After negating mirror connections of odd mirror pairs.
    pub step3: Circuit,
    /// After negating single edges between odd vertices: `C_f`.
    pub step4: Circuit,
}

impl<'c> CircuitTransport<'c> {
    /// Works on `G_{p+1}` of source and target.
    pub fn new(contraction: &'c EdgeContraction, p: usize) -> Result<Self> {
        let source = graph_of(&contraction.source, p + 1);
        let target = graph_of(&contraction.target, p + 1);
        let duals = classify_duals(contraction, &source)?;
        Ok(CircuitTransport {
            contraction,
            p,
            source,
            target,
            duals,
        })
    }

    fn edge_image(&self, r: usize, c: usize) -> Option<(usize, usize)> {
        match self.duals.edges[&(r, c)] {
            EdgeTag::Collapsing | EdgeTag::MirrorConnection(_) => None,
            _ => {
                let q = self
                    .contraction
                    .image(&self.source.q_simplices[r])
                    .expect("source simplex");
                let s = self
                    .contraction
                    .image(&self.source.p_simplices[c])
                    .expect("source simplex");
                Some((
                    self.target.row_of(q).expect("image row"),
                    self.target.col_of(s).expect("image col"),
                ))
            }
        }
    }

    /// Which exclusion set, if any, contains the circuit.
    pub fn exclusion(&self, c: &Circuit) -> Option<DomainExclusion> {
        if c.edges
            .keys()
            .any(|&(r, _)| self.duals.rows[r] == VertexTag::Collapsing)
        {
            return Some(DomainExclusion::CollapsingVertex);
        }
        let cols: BTreeSet<usize> = c.edges.keys().map(|&(_, c)| c).collect();
        let mirrored = cols
            .iter()
            .any(|&col| matches!(self.duals.cols[col], VertexTag::Mirror(m) if cols.contains(&m)));
        mirrored.then_some(DomainExclusion::MirrorPair)
    }

    /// `g`: the image of any subgraph as a set of target edges, with target weights.
    pub fn image(&self, s: &Circuit) -> Circuit {
        let mut out = Circuit::default();
        for &(r, c) in s.edges.keys() {
            if let Some((r2, c2)) = self.edge_image(r, c) {
                let w = self
                    .target
                    .graph
                    .weight(r2, self.target.graph.col_node(c2))
                    .expect("image edge");
                out.edges.insert((r2, c2), w);
            }
        }
        out
    }

    /// `f(C)` for a circuit outside `C_L ∪ C_M`.
    pub fn map_circuit_f(&self, c: &Circuit) -> Result<Circuit> {
        if !c.is_circuit_of(&self.source.graph) {
            return invalid("not a circuit of the source graph");
        }
        if let Some(e) = self.exclusion(c) {
            return Err(Error::Domain(e));
        }
        Ok(self.image(c))
    }

    /// Every source edge whose image lies in `target`.
    pub fn full_preimage(&self, target: &Circuit) -> Circuit {
        let mut out = Circuit::default();
        for (r, c, w) in self.source.graph.edges() {
            if let Some(e) = self.edge_image(r, c) {
                if target.edges.contains_key(&e) {
                    out.edges.insert((r, c), w);
                }
            }
        }
        out
    }

    /// A circuit `C_f` in the domain of `f` with `f(C_f) = target`, built
    /// from the full preimage of `target`.
    pub fn construct_preimage_circuit(&self, target: &Circuit) -> Result<Circuit> {
        if !target.is_circuit_of(&self.target.graph) {
            return invalid("not a circuit of the target graph");
        }
        Ok(self
            .construct_cf_from_subgraph(&self.full_preimage(target))?
            .step4)
    }

    /// Runs Steps I-IV on a subgraph `S` whose image is a circuit.
    pub fn construct_cf_from_subgraph(&self, s: &Circuit) -> Result<ConstructTrace> {
        let edge = self.contraction.edge();
        if !self
            .contraction
            .source
            .satisfies_p_link(&edge, self.p as i64)?
        {
            return Err(Error::Precondition(format!(
                "{edge} violates the {}-link condition",
                self.p
            )));
        }
        let g = &self.source.graph;
        let weight = |r: usize, c: usize| g.weight(r, g.col_node(c)).expect("source edge");

        // Step I: drop collapsing edges.
        let mut cur = Circuit::default();
        for (&(r, c), &w) in &s.edges {
            if self.duals.edges.get(&(r, c)) != Some(&EdgeTag::Collapsing) {
                cur.edges.insert((r, c), w);
            }
        }
        let step1 = cur.clone();

        // Step II: b-side mirror edges move to their mirror, or vanish if it is present.
        let b = self.contraction.b;
        for &(r, c) in step1.edges.keys() {
            if let EdgeTag::MirrorEdge((r2, c2)) = self.duals.edges[&(r, c)] {
                if self.source.p_simplices[c].contains(b) {
                    cur.edges.remove(&(r, c));
                    if !step1.edges.contains_key(&(r2, c2)) {
                        cur.edges.insert((r2, c2), weight(r2, c2));
                    }
                }
            }
        }
        let step2 = cur.clone();

        // Step III: negate both mirror connections of every odd mirror pair.
        let (row_deg, _) = cur.degrees();
        let odd = |r: usize| row_deg.get(&r).copied().unwrap_or(0) % 2 == 1;
        for r in 0..self.duals.rows.len() {
            if let VertexTag::Mirror(r2) = self.duals.rows[r] {
                if r < r2 && odd(r) && odd(r2) {
                    let sigma = self.source.q_simplices[r].union(&self.source.q_simplices[r2]);
                    let c = self.source.col_of(&sigma).ok_or_else(|| {
                        Error::Precondition(format!("mirror connection through {sigma} is missing"))
                    })?;
                    cur.toggle(r, c, weight(r, c));
                    cur.toggle(r2, c, weight(r2, c));
                }
            }
        }
        let step3 = cur.clone();

        // Step IV: an odd collapsing column and its odd mirror face share one edge.
        let (row_deg, col_deg) = cur.degrees();
        for (&c, &d) in &col_deg {
            if d % 2 == 0 {
                continue;
            }
            let faces: Vec<usize> = g
                .neighbors(g.col_node(c))
                .iter()
                .map(|&(r, _)| r)
                .filter(|&r| row_deg.get(&r).copied().unwrap_or(0) % 2 == 1)
                .collect();
            match faces.as_slice() {
                [r] => cur.toggle(*r, c, weight(*r, c)),
                _ => return invalid("subgraph image is not a circuit: unmatched odd vertex"),
            }
        }
        let step4 = cur;
        if !step4.is_even() {
            return invalid("subgraph image is not a circuit");
        }
        Ok(ConstructTrace {
            input: s.clone(),
            step1,
            step2,
            step3,
            step4,
        })
    }
}
