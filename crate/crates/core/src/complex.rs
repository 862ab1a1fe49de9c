//! Simplicial complexes, star/link/closure and the (p-)link conditions.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{invalid, Result};
use crate::Rational;

pub type VertexId = u32;

/// A simplex stored in canonical (strictly ascending) vertex order.
///
/// Simplices order first by dimension and then lexicographically, so a
/// `BTreeSet<Simplex>` lists vertices, then edges, then triangles.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Simplex(Vec<VertexId>);

impl Simplex {
    /// Builds a simplex from vertices in any order. Duplicates are rejected.
    pub fn new(vertices: impl IntoIterator<Item = VertexId>) -> Result<Self> {
        let mut v: Vec<VertexId> = vertices.into_iter().collect();
        if v.is_empty() {
            return invalid("a simplex needs at least one vertex");
        }
        v.sort_unstable();
        if v.windows(2).any(|w| w[0] == w[1]) {
            return invalid(format!("repeated vertex in simplex {v:?}"));
        }
        Ok(Simplex(v))
    }

    pub fn vertex(v: VertexId) -> Self {
        Simplex(vec![v])
    }

    pub fn edge(a: VertexId, b: VertexId) -> Result<Self> {
        Simplex::new([a, b])
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_face_of(&self, other: &Simplex) -> bool {
        self.0.len() <= other.0.len() && self.0.iter().all(|v| other.contains(*v))
    }

    /// Codimension-one faces with their incidence signs `(-1)^i`.
    pub fn boundary(&self) -> Vec<(Simplex, i64)> {
        if self.0.len() == 1 {
            return Vec::new();
        }
        (0..self.0.len())
            .map(|i| {
                let mut f = self.0.clone();
                f.remove(i);
                (Simplex(f), if i % 2 == 0 { 1 } else { -1 })
            })
            .collect()
    }

    /// All nonempty faces, the simplex itself included.
    pub fn faces(&self) -> impl Iterator<Item = Simplex> + '_ {
        let n = self.0.len();
        (1u64..(1u64 << n)).map(move |mask| {
            Simplex(
                (0..n)
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| self.0[i])
                    .collect(),
            )
        })
    }

    pub fn union(&self, other: &Simplex) -> Simplex {
        let set: BTreeSet<VertexId> = self.0.iter().chain(other.0.iter()).copied().collect();
        Simplex(set.into_iter().collect())
    }

    pub fn is_disjoint(&self, other: &Simplex) -> bool {
        self.0.iter().all(|v| !other.contains(*v))
    }

    /// Lower bound for all simplices of dimension `p` in the canonical order.
    fn dim_floor(p: usize) -> Simplex {
        Simplex(vec![0; p + 1])
    }
}

impl Ord for Simplex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Simplex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A simplex together with an orientation relative to its canonical order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrientedSimplex {
    pub simplex: Simplex,
    /// `+1` if the orientation agrees with ascending order, `-1` otherwise.
    pub sign: i8,
}

impl OrientedSimplex {
    /// Orients a simplex by the given vertex sequence.
    pub fn from_ordered(vertices: &[VertexId]) -> Result<Self> {
        let simplex = Simplex::new(vertices.iter().copied())?;
        Ok(OrientedSimplex {
            simplex,
            sign: permutation_sign(vertices),
        })
    }
}

/// Sign of the permutation sorting `seq` (which must have distinct entries).
pub fn permutation_sign(seq: &[VertexId]) -> i8 {
    let mut inversions = 0usize;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                inversions += 1;
            }
        }
    }
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// A finite, face-closed simplicial complex with optional rational weights.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SimplicialComplex {
    simplices: BTreeSet<Simplex>,
    weights: BTreeMap<Simplex, Rational>,
}

impl SimplicialComplex {
    pub fn new() -> Self {
        Self::default()
    }

    /// The face closure of the given simplices.
    pub fn from_maximal<I, S>(generators: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: IntoIterator<Item = VertexId>,
    {
        let mut k = SimplicialComplex::new();
        for g in generators {
            k.insert_closed(&Simplex::new(g)?);
        }
        Ok(k)
    }

    /// Builds a complex from an explicit simplex list, which must already be face-closed.
    pub fn from_simplices(simplices: impl IntoIterator<Item = Simplex>) -> Result<Self> {
        let simplices: BTreeSet<Simplex> = simplices.into_iter().collect();
        for s in &simplices {
            for (f, _) in s.boundary() {
                if !simplices.contains(&f) {
                    return invalid(format!("not face-closed: {f} is missing (face of {s})"));
                }
            }
        }
        Ok(SimplicialComplex {
            simplices,
            weights: BTreeMap::new(),
        })
    }

    /// Adds a simplex and all its faces.
    pub fn insert_closed(&mut self, s: &Simplex) {
        if self.simplices.contains(s) {
            return;
        }
        for f in s.faces() {
            self.simplices.insert(f);
        }
    }

    /// Attaches a nonnegative weight to a simplex of the complex.
    pub fn set_weight(&mut self, s: &Simplex, w: Rational) -> Result<()> {
        if !self.simplices.contains(s) {
            return invalid(format!("cannot weight {s}: not in the complex"));
        }
        if w < Rational::zero() {
            return invalid(format!("negative weight {w} on {s}"));
        }
        self.weights.insert(s.clone(), w);
        Ok(())
    }

    /// Weight of a simplex; unweighted simplices weigh 1.
    pub fn weight(&self, s: &Simplex) -> Rational {
        self.weights.get(s).cloned().unwrap_or_else(Rational::one)
    }

    pub fn explicit_weight(&self, s: &Simplex) -> Option<&Rational> {
        self.weights.get(s)
    }

    pub fn weights(&self) -> &BTreeMap<Simplex, Rational> {
        &self.weights
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.simplices.contains(s)
    }

    pub fn simplices(&self) -> &BTreeSet<Simplex> {
        &self.simplices
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    /// Dimension of the complex, `None` when empty.
    pub fn dim(&self) -> Option<usize> {
        self.simplices.iter().next_back().map(Simplex::dim)
    }

    /// The `p`-simplices in canonical order.
    pub fn simplices_of_dim(&self, p: usize) -> impl Iterator<Item = &Simplex> + '_ {
        self.simplices
            .range(Simplex::dim_floor(p)..Simplex::dim_floor(p + 1))
    }

    pub fn count_of_dim(&self, p: usize) -> usize {
        self.simplices_of_dim(p).count()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.simplices_of_dim(0).map(|s| s.0[0])
    }

    pub fn edges(&self) -> impl Iterator<Item = &Simplex> + '_ {
        self.simplices_of_dim(1)
    }

    /// Simplices not properly contained in another simplex.
    pub fn maximal_simplices(&self) -> Vec<Simplex> {
        self.simplices
            .iter()
            .filter(|s| self.proper_cofaces(s).next().is_none())
            .cloned()
            .collect()
    }

    fn proper_cofaces<'a>(&'a self, s: &'a Simplex) -> impl Iterator<Item = &'a Simplex> + 'a {
        self.simplices
            .range(Simplex::dim_floor(s.dim() + 1)..)
            .filter(move |t| s.is_face_of(t))
    }

    /// True if every maximal simplex has dimension `p`.
    pub fn is_pure(&self, p: usize) -> bool {
        !self.is_empty() && self.maximal_simplices().iter().all(|s| s.dim() == p)
    }

    pub fn is_subcomplex_of(&self, other: &SimplicialComplex) -> bool {
        self.simplices.is_subset(&other.simplices)
    }

    fn check_subset(&self, subset: &BTreeSet<Simplex>) -> Result<()> {
        match subset.iter().find(|s| !self.contains(s)) {
            Some(s) => invalid(format!("{s} is not a simplex of the complex")),
            None => Ok(()),
        }
    }

    /// The subset together with all faces of its members.
    pub fn closure(&self, subset: &BTreeSet<Simplex>) -> Result<BTreeSet<Simplex>> {
        self.check_subset(subset)?;
        Ok(subset
            .iter()
            .flat_map(|s| s.faces().collect::<Vec<_>>())
            .collect())
    }

    /// All cofaces of members of the subset (members included).
    pub fn star(&self, subset: &BTreeSet<Simplex>) -> Result<BTreeSet<Simplex>> {
        self.check_subset(subset)?;
        Ok(self
            .simplices
            .iter()
            .filter(|t| subset.iter().any(|s| s.is_face_of(t)))
            .cloned()
            .collect())
    }

    /// `closure(star(X)) \ star(closure(X))`.
    pub fn link(&self, subset: &BTreeSet<Simplex>) -> Result<BTreeSet<Simplex>> {
        let closed_star = self.closure(&self.star(subset)?)?;
        let star_of_closure = self.star(&self.closure(subset)?)?;
        Ok(closed_star.difference(&star_of_closure).cloned().collect())
    }

    /// Link of a single simplex: `{ t : t ∩ s = ∅, t ∪ s ∈ K }`.
    pub fn simplex_link(&self, s: &Simplex) -> Result<BTreeSet<Simplex>> {
        if !self.contains(s) {
            return invalid(format!("{s} is not a simplex of the complex"));
        }
        let mut out = BTreeSet::new();
        for t in self.proper_cofaces(s) {
            let rest: Vec<VertexId> = t.0.iter().copied().filter(|v| !s.contains(*v)).collect();
            out.insert(Simplex(rest));
        }
        Ok(out)
    }

    /// Link data of an edge, from which every p-link verdict can be read.
    pub fn edge_links(&self, edge: &Simplex) -> Result<EdgeLinks> {
        if edge.dim() != 1 {
            return invalid(format!("{edge} is not an edge"));
        }
        if !self.contains(edge) {
            return invalid(format!("edge {edge} is not in the complex"));
        }
        let lk_a = self.simplex_link(&Simplex::vertex(edge.0[0]))?;
        let lk_b = self.simplex_link(&Simplex::vertex(edge.0[1]))?;
        let common = lk_a.intersection(&lk_b).cloned().collect();
        let link_ab = self.simplex_link(edge)?;
        Ok(EdgeLinks { common, link_ab })
    }

    /// p-link condition: `p <= 0`, or every `(p-1)`-simplex of `Lk a ∩ Lk b` lies in `Lk ab`.
    pub fn satisfies_p_link(&self, edge: &Simplex, p: i64) -> Result<bool> {
        Ok(self.edge_links(edge)?.satisfies(p))
    }

    /// Link condition: `Lk a ∩ Lk b = Lk ab`.
    pub fn satisfies_link_condition(&self, edge: &Simplex) -> Result<bool> {
        Ok(self.edge_links(edge)?.satisfies_all())
    }

    /// Restriction to the simplices of dimension at most `p`, weights kept.
    pub fn skeleton(&self, p: usize) -> SimplicialComplex {
        let simplices: BTreeSet<Simplex> = self
            .simplices
            .iter()
            .filter(|s| s.dim() <= p)
            .cloned()
            .collect();
        let weights = self
            .weights
            .iter()
            .filter(|(s, _)| s.dim() <= p)
            .map(|(s, w)| (s.clone(), w.clone()))
            .collect();
        SimplicialComplex { simplices, weights }
    }

    /// The subcomplex generated by the given simplices (weights kept).
    pub fn subcomplex(&self, generators: &[Simplex]) -> Result<SimplicialComplex> {
        let gens: BTreeSet<Simplex> = generators.iter().cloned().collect();
        let simplices = self.closure(&gens)?;
        let weights = self
            .weights
            .iter()
            .filter(|(s, _)| simplices.contains(*s))
            .map(|(s, w)| (s.clone(), w.clone()))
            .collect();
        Ok(SimplicialComplex { simplices, weights })
    }
}

/// `Lk a ∩ Lk b` and `Lk ab` for an edge `ab`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeLinks {
    pub common: BTreeSet<Simplex>,
    pub link_ab: BTreeSet<Simplex>,
}

impl EdgeLinks {
    pub fn satisfies(&self, p: i64) -> bool {
        if p <= 0 {
            return true;
        }
        let want = (p - 1) as usize;
        self.common
            .iter()
            .filter(|s| s.dim() == want)
            .all(|s| self.link_ab.contains(s))
    }

    pub fn satisfies_all(&self) -> bool {
        self.common == self.link_ab
    }

    /// Simplices of `Lk a ∩ Lk b` missing from `Lk ab`.
    pub fn violations(&self) -> impl Iterator<Item = &Simplex> + '_ {
        self.common.difference(&self.link_ab)
    }
}
