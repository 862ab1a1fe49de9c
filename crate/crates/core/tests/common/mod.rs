//! Seeded generators and independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use plink_core::tu::{Circuit, SignedBipartiteGraph};
use plink_core::{Simplex, SimplicialComplex, VertexId};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_simplex(rng: &mut ChaCha8Rng, vertices: VertexId, dim: usize) -> Simplex {
    let mut all: Vec<VertexId> = (1..=vertices).collect();
    all.shuffle(rng);
    Simplex::new(all[..=dim].iter().copied()).unwrap()
}

fn closure_size(s: &Simplex) -> usize {
    (1usize << (s.dim() + 1)) - 1
}

/// Random complex of dimension at most `max_dim` with at most `max_simplices` simplices.
pub fn random_complex(
    rng: &mut ChaCha8Rng,
    max_dim: usize,
    max_simplices: usize,
) -> SimplicialComplex {
    let vertices = rng.gen_range(max_dim as VertexId + 2..=max_dim as VertexId + 5);
    let mut k = SimplicialComplex::new();
    let mut failures = 0;
    while failures < 8 {
        let dim = rng.gen_range(1..=max_dim);
        let s = random_simplex(rng, vertices, dim);
        let mut trial = k.clone();
        trial.insert_closed(&s);
        if trial.len() == k.len() || trial.len() > max_simplices || closure_size(&s) > max_simplices
        {
            failures += 1;
            continue;
        }
        k = trial;
    }
    if k.is_empty() {
        k.insert_closed(&Simplex::edge(1, 2).unwrap());
    }
    k
}

/// Closure of `triangles` distinct random triangles on `vertices` vertices.
pub fn random_2complex(
    rng: &mut ChaCha8Rng,
    vertices: VertexId,
    triangles: usize,
) -> SimplicialComplex {
    let mut all = Vec::new();
    for a in 1..=vertices {
        for b in a + 1..=vertices {
            for c in b + 1..=vertices {
                all.push([a, b, c]);
            }
        }
    }
    all.shuffle(rng);
    all.truncate(triangles);
    SimplicialComplex::from_maximal(all).unwrap()
}

/// Random complex with a few tetrahedra and triangles, dimension 2 or 3.
pub fn random_3complex(
    rng: &mut ChaCha8Rng,
    vertices: VertexId,
    tets: usize,
    triangles: usize,
) -> SimplicialComplex {
    let mut k = SimplicialComplex::new();
    for _ in 0..tets {
        k.insert_closed(&random_simplex(rng, vertices, 3));
    }
    for _ in 0..triangles {
        k.insert_closed(&random_simplex(rng, vertices, 2));
    }
    k
}

/// Link by definition: `Lk X = cl(St X) \ St(cl X)`, for a single simplex `X`.
pub fn oracle_link(k: &SimplicialComplex, x: &Simplex) -> BTreeSet<Vec<VertexId>> {
    let all: Vec<BTreeSet<VertexId>> = k
        .simplices()
        .iter()
        .map(|s| s.vertices().iter().copied().collect())
        .collect();
    let xs: BTreeSet<VertexId> = x.vertices().iter().copied().collect();
    let star: Vec<&BTreeSet<VertexId>> = all.iter().filter(|s| xs.is_subset(s)).collect();
    let mut closure_of_star: BTreeSet<Vec<VertexId>> = BTreeSet::new();
    for s in &star {
        let v: Vec<VertexId> = s.iter().copied().collect();
        for mask in 1u32..(1 << v.len()) {
            closure_of_star.insert(
                (0..v.len())
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| v[i])
                    .collect(),
            );
        }
    }
    // St(cl X): simplices having a nonempty face of X as a face, i.e. meeting X.
    closure_of_star
        .into_iter()
        .filter(|s| s.iter().all(|v| !xs.contains(v)))
        .collect()
}

/// Link condition and p-link verdicts straight from the definitions.
pub fn oracle_link_verdicts(
    k: &SimplicialComplex,
    edge: &Simplex,
) -> (bool, BTreeMap<usize, bool>) {
    let (a, b) = (edge.vertices()[0], edge.vertices()[1]);
    let la = oracle_link(k, &Simplex::vertex(a));
    let lb = oracle_link(k, &Simplex::vertex(b));
    let lab = oracle_link(k, edge);
    let common: BTreeSet<Vec<VertexId>> = la.intersection(&lb).cloned().collect();
    let full = common == lab;
    let top = k.dim().unwrap_or(0);
    let mut per_p = BTreeMap::new();
    for p in 0..=top {
        let ok = p == 0
            || common
                .iter()
                .filter(|s| s.len() == p)
                .all(|s| lab.contains(s));
        per_p.insert(p, ok);
    }
    (full, per_p)
}

/// Every simple cycle of a bipartite graph, each once.
pub fn simple_cycles(g: &SignedBipartiteGraph, limit: usize) -> Vec<Circuit> {
    let n = g.node_count();
    let mut out = Vec::new();
    let mut path = Vec::new();
    let mut on_path = vec![false; n];
    for start in 0..n {
        path.push(start);
        on_path[start] = true;
        extend(g, start, start, &mut path, &mut on_path, &mut out, limit);
        on_path[start] = false;
        path.pop();
        if out.len() >= limit {
            break;
        }
    }
    out
}

fn edge_key(g: &SignedBipartiteGraph, u: usize, v: usize) -> (usize, usize) {
    if g.is_row(u) {
        (u, v - g.rows())
    } else {
        (v, u - g.rows())
    }
}

fn extend(
    g: &SignedBipartiteGraph,
    start: usize,
    v: usize,
    path: &mut Vec<usize>,
    on_path: &mut [bool],
    out: &mut Vec<Circuit>,
    limit: usize,
) {
    if out.len() >= limit {
        return;
    }
    for &(w, _) in g.neighbors(v) {
        if w == start && path.len() >= 4 && path[1] < path[path.len() - 1] {
            let mut c = Circuit::default();
            for i in 0..path.len() {
                let (x, y) = (path[i], path[(i + 1) % path.len()]);
                let (r, col) = edge_key(g, x, y);
                c.toggle(r, col, g.weight(x, y).unwrap());
            }
            out.push(c);
        } else if w > start && !on_path[w] {
            path.push(w);
            on_path[w] = true;
            extend(g, start, w, path, on_path, out, limit);
            on_path[w] = false;
            path.pop();
        }
    }
}

/// All nonempty even subgraphs (the cycle space), if the cycle rank is at most `max_rank`.
pub fn cycle_space(g: &SignedBipartiteGraph, max_rank: usize) -> Option<Vec<Circuit>> {
    let basis = g.cycle_basis();
    if basis.len() > max_rank {
        return None;
    }
    let mut out = Vec::new();
    for mask in 1u64..(1 << basis.len()) {
        let mut c = Circuit::default();
        for (i, b) in basis.iter().enumerate() {
            if mask >> i & 1 == 1 {
                c = c.xor(b);
            }
        }
        out.push(c);
    }
    Some(out)
}

/// True if no graph edge outside `c` joins two vertices of `c`.
pub fn is_chordless(g: &SignedBipartiteGraph, c: &Circuit) -> bool {
    let verts = c.vertices(g);
    g.edges().iter().all(|&(r, col, _)| {
        c.edges.contains_key(&(r, col)) || !(verts.contains(&r) && verts.contains(&g.col_node(col)))
    })
}
