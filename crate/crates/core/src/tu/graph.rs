//! Signed bipartite graphs of `{0, ±1}` matrices, circuits and b-parity.

use std::collections::{BTreeMap, BTreeSet};

use crate::complex::{Simplex, SimplicialComplex};
use crate::error::{invalid, Result};
use crate::matrix::{boundary_matrix, Matrix};

/// Bipartite graph whose weighted adjacency matrix is a given matrix.
///
/// Row `i` is node `i`, column `j` is node `rows + j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedBipartiteGraph {
    rows: usize,
    cols: usize,
    adj: Vec<Vec<(usize, i8)>>,
}

impl SignedBipartiteGraph {
    /// Fails on entries outside `{0, ±1}`.
    pub fn from_matrix(m: &Matrix<i64>) -> Result<Self> {
        let (rows, cols) = (m.rows(), m.cols());
        let mut adj = vec![Vec::new(); rows + cols];
        for i in 0..rows {
            for j in 0..cols {
                let w = *m.get(i, j);
                match w {
                    0 => {}
                    1 | -1 => {
                        adj[i].push((rows + j, w as i8));
                        adj[rows + j].push((i, w as i8));
                    }
                    _ => return invalid(format!("entry ({i},{j}) = {w} is not in {{0, ±1}}")),
                }
            }
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        Ok(SignedBipartiteGraph { rows, cols, adj })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn node_count(&self) -> usize {
        self.rows + self.cols
    }

    pub fn neighbors(&self, v: usize) -> &[(usize, i8)] {
        &self.adj[v]
    }

    pub fn row_node(&self, i: usize) -> usize {
        i
    }

    pub fn col_node(&self, j: usize) -> usize {
        self.rows + j
    }

    pub fn is_row(&self, v: usize) -> bool {
        v < self.rows
    }

    /// Weight of the edge between nodes `u` and `v`.
    pub fn weight(&self, u: usize, v: usize) -> Option<i8> {
        self.adj[u]
            .binary_search_by_key(&v, |&(x, _)| x)
            .ok()
            .map(|k| self.adj[u][k].1)
    }

    pub fn edge_count(&self) -> usize {
        self.adj[..self.rows].iter().map(Vec::len).sum()
    }

    /// All edges as `(row, col, weight)` in row-major order.
    pub fn edges(&self) -> Vec<(usize, usize, i8)> {
        (0..self.rows)
            .flat_map(|i| self.adj[i].iter().map(move |&(v, w)| (i, v - self.rows, w)))
            .collect()
    }

    pub fn adjacency_matrix(&self) -> Matrix<i64> {
        let mut m = Matrix::zeros(self.rows, self.cols);
        for (i, j, w) in self.edges() {
            m.set(i, j, w as i64);
        }
        m
    }

    /// The graph after negating the given rows and columns.
    pub fn reoriented(&self, row_signs: &[i8], col_signs: &[i8]) -> SignedBipartiteGraph {
        let sign = |v: usize| {
            if v < self.rows {
                row_signs[v]
            } else {
                col_signs[v - self.rows]
            }
        };
        let adj = self
            .adj
            .iter()
            .enumerate()
            .map(|(u, list)| {
                list.iter()
                    .map(|&(v, w)| (v, w * sign(u) * sign(v)))
                    .collect()
            })
            .collect();
        SignedBipartiteGraph {
            rows: self.rows,
            cols: self.cols,
            adj,
        }
    }

    /// Whether some edge outside `circuit` joins two of its vertices.
    pub fn chord_of(&self, circuit: &Circuit) -> Option<(usize, usize)> {
        let verts = circuit.vertices(self);
        for &u in verts.iter().filter(|&&u| self.is_row(u)) {
            for &(v, _) in &self.adj[u] {
                if verts.contains(&v) && !circuit.edges.contains_key(&(u, v - self.rows)) {
                    return Some((u, v - self.rows));
                }
            }
        }
        None
    }

    /// Fundamental cycles of a spanning forest, as edge sets.
    pub fn cycle_basis(&self) -> Vec<Circuit> {
        let n = self.node_count();
        let mut parent: Vec<Option<usize>> = vec![None; n];
        let mut seen = vec![false; n];
        let mut depth = vec![0usize; n];
        let mut tree = BTreeSet::new();
        for root in 0..n {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            let mut stack = vec![root];
            while let Some(u) = stack.pop() {
                for &(v, _) in &self.adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        parent[v] = Some(u);
                        depth[v] = depth[u] + 1;
                        tree.insert(self.key(u, v));
                        stack.push(v);
                    }
                }
            }
        }
        let mut basis = Vec::new();
        for (i, j, _) in self.edges() {
            if tree.contains(&(i, j)) {
                continue;
            }
            let mut c = Circuit::default();
            c.toggle(i, j, self.weight(i, self.rows + j).expect("edge"));
            let (mut u, mut v) = (i, self.rows + j);
            while u != v {
                if depth[u] < depth[v] {
                    std::mem::swap(&mut u, &mut v);
                }
                let pu = parent[u].expect("same component");
                let (r, c2) = self.key(u, pu);
                c.toggle(r, c2, self.weight(u, pu).expect("tree edge"));
                u = pu;
            }
            basis.push(c);
        }
        basis
    }

    fn key(&self, u: usize, v: usize) -> (usize, usize) {
        if u < self.rows {
            (u, v - self.rows)
        } else {
            (v, u - self.rows)
        }
    }
}

/// An edge set in which every vertex has even degree.
///
/// Edges are keyed by `(row, col)` and carry their weight; two circuits are
/// equal when they have the same edges with the same weights.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Circuit {
    pub edges: BTreeMap<(usize, usize), i8>,
}

/// Weight sum modulo 4.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BParity {
    BEven,
    BOdd,
    Neither,
}

impl Circuit {
    pub fn from_edges(edges: impl IntoIterator<Item = ((usize, usize), i8)>) -> Self {
        Circuit {
            edges: edges.into_iter().collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Symmetric difference with a single edge.
    pub fn toggle(&mut self, row: usize, col: usize, w: i8) {
        if self.edges.remove(&(row, col)).is_none() {
            self.edges.insert((row, col), w);
        }
    }

    /// Symmetric difference (sum in the cycle space).
    pub fn xor(&self, other: &Circuit) -> Circuit {
        let mut out = self.clone();
        for (&(r, c), &w) in &other.edges {
            out.toggle(r, c, w);
        }
        out
    }

    pub fn weight_sum(&self) -> i64 {
        self.edges.values().map(|&w| w as i64).sum()
    }

    /// Graph nodes touched by the circuit.
    pub fn vertices(&self, g: &SignedBipartiteGraph) -> BTreeSet<usize> {
        self.edges
            .keys()
            .flat_map(|&(r, c)| [r, g.col_node(c)])
            .collect()
    }

    /// Degrees of the touched rows and columns.
    pub fn degrees(&self) -> (BTreeMap<usize, usize>, BTreeMap<usize, usize>) {
        let mut rows = BTreeMap::new();
        let mut cols = BTreeMap::new();
        for &(r, c) in self.edges.keys() {
            *rows.entry(r).or_insert(0) += 1;
            *cols.entry(c).or_insert(0) += 1;
        }
        (rows, cols)
    }

    pub fn is_even(&self) -> bool {
        let (r, c) = self.degrees();
        r.values().chain(c.values()).all(|d| d % 2 == 0)
    }

    /// True if every edge exists in `g` with the stored weight and all degrees are even.
    pub fn is_circuit_of(&self, g: &SignedBipartiteGraph) -> bool {
        self.is_even()
            && self.edges.iter().all(|(&(r, c), &w)| {
                r < g.rows && c < g.cols && g.weight(r, g.col_node(c)) == Some(w)
            })
    }

    /// Same edges, weights read from `g`.
    pub fn reweighted(&self, g: &SignedBipartiteGraph) -> Option<Circuit> {
        let mut out = Circuit::default();
        for &(r, c) in self.edges.keys() {
            out.edges.insert((r, c), g.weight(r, g.col_node(c))?);
        }
        Some(out)
    }

    /// b-parity of an even edge set; fails on odd degrees.
    pub fn b_parity(&self) -> Result<BParity> {
        if !self.is_even() {
            return invalid("edge set has a vertex of odd degree");
        }
        Ok(match self.weight_sum().rem_euclid(4) {
            0 => BParity::BEven,
            2 => BParity::BOdd,
            _ => BParity::Neither,
        })
    }
}

/// Outcome of a budgeted search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome<T> {
    Found(T),
    /// Exhaustive search found nothing.
    Absent,
    /// The budget ran out first.
    Inconclusive,
}

/// First chordless b-odd cycle in depth-first order, with the work spent.
///
/// Cycles are grown as induced paths from their smallest node; a path is
/// only extended by nodes adjacent to its last node and to no other path
/// node, and closed when the new node also touches the start. Each cycle is
/// reported in one direction only (second node smaller than the last).
pub fn find_chordless_b_odd_circuit(
    g: &SignedBipartiteGraph,
    budget: u64,
) -> (SearchOutcome<Circuit>, u64) {
    let mut search = CycleSearch::new(g, budget);
    let found = search.run(&mut |cycle, sum| {
        if sum.rem_euclid(4) == 2 {
            Some(cycle.to_vec())
        } else {
            None
        }
    });
    let outcome = match found {
        Some(nodes) => SearchOutcome::Found(circuit_of_cycle(g, &nodes)),
        None if search.exhausted => SearchOutcome::Inconclusive,
        None => SearchOutcome::Absent,
    };
    (outcome, search.work)
}

/// Every chordless cycle of `g` (up to `budget` extension steps).
pub fn chordless_cycles(g: &SignedBipartiteGraph, budget: u64) -> (Vec<Circuit>, bool) {
    let mut search = CycleSearch::new(g, budget);
    let mut out = Vec::new();
    search.run(&mut |cycle, _| {
        out.push(circuit_of_cycle(g, cycle));
        None::<()>
    });
    (out, !search.exhausted)
}

fn circuit_of_cycle(g: &SignedBipartiteGraph, nodes: &[usize]) -> Circuit {
    let mut c = Circuit::default();
    for k in 0..nodes.len() {
        let (u, v) = (nodes[k], nodes[(k + 1) % nodes.len()]);
        let (r, col) = g.key(u, v);
        c.edges
            .insert((r, col), g.weight(u, v).expect("cycle edge"));
    }
    c
}

struct CycleSearch<'g> {
    g: &'g SignedBipartiteGraph,
    budget: u64,
    work: u64,
    exhausted: bool,
    path: Vec<usize>,
    on_path: Vec<bool>,
    // Number of path nodes adjacent to each node.
    touch: Vec<u32>,
}

impl<'g> CycleSearch<'g> {
    fn new(g: &'g SignedBipartiteGraph, budget: u64) -> Self {
        let n = g.node_count();
        CycleSearch {
            g,
            budget,
            work: 0,
            exhausted: false,
            path: Vec::new(),
            on_path: vec![false; n],
            touch: vec![0; n],
        }
    }

    fn push(&mut self, v: usize) {
        self.path.push(v);
        self.on_path[v] = true;
        for &(w, _) in self.g.neighbors(v) {
            self.touch[w] += 1;
        }
    }

    fn pop(&mut self) {
        let v = self.path.pop().expect("nonempty path");
        self.on_path[v] = false;
        for &(w, _) in self.g.neighbors(v) {
            self.touch[w] -= 1;
        }
    }

    fn run<T>(&mut self, visit: &mut impl FnMut(&[usize], i64) -> Option<T>) -> Option<T> {
        for s in 0..self.g.node_count() {
            self.push(s);
            let r = self.extend(s, 0, visit);
            self.pop();
            if r.is_some() || self.exhausted {
                return r;
            }
        }
        None
    }

    fn extend<T>(
        &mut self,
        start: usize,
        sum: i64,
        visit: &mut impl FnMut(&[usize], i64) -> Option<T>,
    ) -> Option<T> {
        let last = *self.path.last().expect("nonempty path");
        let g = self.g;
        for &(w, weight) in g.neighbors(last) {
            if w <= start || self.on_path[w] {
                continue;
            }
            self.work += 1;
            if self.work > self.budget {
                self.exhausted = true;
                return None;
            }
            let sum = sum + weight as i64;
            let closes = self.path.len() >= 3 && g.weight(w, start).is_some();
            if closes {
                // w touches last and start only.
                if self.touch[w] == 2 && self.path[1] < w {
                    self.push(w);
                    let closing = g.weight(w, start).expect("checked") as i64;
                    let r = visit(&self.path, sum + closing);
                    self.pop();
                    if r.is_some() {
                        return r;
                    }
                }
            } else if self.touch[w] == 1 {
                self.push(w);
                let r = self.extend(start, sum, visit);
                self.pop();
                if r.is_some() || self.exhausted {
                    return r;
                }
            }
        }
        None
    }
}

/// The `p`-graph `G_p(K)`: rows are `(p-1)`-simplices, columns `p`-simplices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceGraph {
    pub p: usize,
    pub q_simplices: Vec<Simplex>,
    pub p_simplices: Vec<Simplex>,
    pub graph: SignedBipartiteGraph,
}

/// A circuit edge with its endpoints named by simplices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct LabelledEdge {
    pub q: Simplex,
    pub p: Simplex,
    pub w: i8,
}

impl IncidenceGraph {
    pub fn row_of(&self, s: &Simplex) -> Option<usize> {
        self.q_simplices.binary_search(s).ok()
    }

    pub fn col_of(&self, s: &Simplex) -> Option<usize> {
        self.p_simplices.binary_search(s).ok()
    }

    pub fn edge_weight(&self, q: &Simplex, p: &Simplex) -> Option<i8> {
        let (r, c) = (self.row_of(q)?, self.col_of(p)?);
        self.graph.weight(r, self.graph.col_node(c))
    }

    pub fn labelled(&self, c: &Circuit) -> Vec<LabelledEdge> {
        c.edges
            .iter()
            .map(|(&(r, col), &w)| LabelledEdge {
                q: self.q_simplices[r].clone(),
                p: self.p_simplices[col].clone(),
                w,
            })
            .collect()
    }

    /// Circuit from labelled edges; weights are read from the graph.
    pub fn circuit_from_labels<'a>(
        &self,
        edges: impl IntoIterator<Item = (&'a Simplex, &'a Simplex)>,
    ) -> Result<Circuit> {
        let mut c = Circuit::default();
        for (q, p) in edges {
            let w = match self.edge_weight(q, p) {
                Some(w) => w,
                None => return invalid(format!("{q}{p} is not an edge of the graph")),
            };
            c.toggle(
                self.row_of(q).expect("checked"),
                self.col_of(p).expect("checked"),
                w,
            );
        }
        Ok(c)
    }

    /// The graph after reversing the orientation of the given simplices.
    pub fn reoriented(&self, flipped: &BTreeSet<Simplex>) -> IncidenceGraph {
        let sign = |s: &Simplex| if flipped.contains(s) { -1 } else { 1 };
        let rows: Vec<i8> = self.q_simplices.iter().map(sign).collect();
        let cols: Vec<i8> = self.p_simplices.iter().map(sign).collect();
        IncidenceGraph {
            graph: self.graph.reoriented(&rows, &cols),
            ..self.clone()
        }
    }
}

/// `G_p(K)` for `1 <= p <= dim K`.
pub fn build_p_graph(complex: &SimplicialComplex, p: usize) -> Result<IncidenceGraph> {
    let d = boundary_matrix(complex, p)?;
    let graph = SignedBipartiteGraph::from_matrix(&d.entries)?;
    Ok(IncidenceGraph {
        p,
        q_simplices: d.row_simplices,
        p_simplices: d.col_simplices,
        graph,
    })
}
