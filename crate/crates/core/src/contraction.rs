//! Edge contraction `γ_ab` induced by the vertex map `b ↦ a`.

use std::collections::BTreeMap;

use crate::chain::Chain;
use crate::complex::{permutation_sign, Simplex, SimplicialComplex, VertexId};
use crate::error::{invalid, Result};
use crate::scalar::Coefficient;

/// How a source simplex behaves under the contraction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SimplexClass {
    /// Shares its image with the given partner.
    Mirror(Simplex),
    /// Contains both endpoints; its image drops one dimension.
    Collapsing,
    /// Maps bijectively onto its image.
    Injective,
}

/// Rule for weights of target simplices hit by a mirror pair.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum WeightMerge {
    /// A target simplex that already existed in the source keeps its own
    /// weight; a simplex created by relabelling inherits its preimage's weight.
    #[default]
    KeepSurvivor,
    /// The smaller of the two mirror weights.
    Minimum,
}

/// The result of contracting one edge.
#[derive(Clone, Debug)]
pub struct EdgeContraction {
    pub source: SimplicialComplex,
    pub target: SimplicialComplex,
    /// Surviving endpoint.
    pub a: VertexId,
    /// Removed endpoint, `h(b) = a`.
    pub b: VertexId,
    pub simplex_map: BTreeMap<Simplex, Simplex>,
    pub classification: BTreeMap<Simplex, SimplexClass>,
    /// Target simplices whose mirror preimages carried different weights.
    pub weight_conflicts: Vec<Simplex>,
}

/// Contracts `edge`, keeping its smaller vertex.
pub fn contract_edge(complex: &SimplicialComplex, edge: &Simplex) -> Result<EdgeContraction> {
    contract_edge_with(complex, edge, edge.vertices()[0], WeightMerge::default())
}

/// Contracts `edge` onto the endpoint `keep`.
pub fn contract_edge_with(
    complex: &SimplicialComplex,
    edge: &Simplex,
    keep: VertexId,
    merge: WeightMerge,
) -> Result<EdgeContraction> {
    if edge.dim() != 1 {
        return invalid(format!("{edge} is not an edge"));
    }
    if !complex.contains(edge) {
        return invalid(format!("edge {edge} is not in the complex"));
    }
    let (u, v) = (edge.vertices()[0], edge.vertices()[1]);
    let (a, b) = if keep == u {
        (u, v)
    } else if keep == v {
        (v, u)
    } else {
        return invalid(format!("vertex {keep} is not an endpoint of {edge}"));
    };

    let map_vertex = |x: VertexId| if x == b { a } else { x };
    let mut simplex_map = BTreeMap::new();
    let mut classification = BTreeMap::new();
    let mut target = SimplicialComplex::new();
    for s in complex.simplices() {
        let image = Simplex::new(
            s.vertices()
                .iter()
                .map(|&x| map_vertex(x))
                .collect::<std::collections::BTreeSet<_>>(),
        )
        .expect("image of a simplex is nonempty");
        let class = if s.contains(a) && s.contains(b) {
            SimplexClass::Collapsing
        } else if s.contains(a) || s.contains(b) {
            let (from, to) = if s.contains(a) { (a, b) } else { (b, a) };
            let partner =
                Simplex::new(s.vertices().iter().map(|&x| if x == from { to } else { x })).unwrap();
            if complex.contains(&partner) {
                SimplexClass::Mirror(partner)
            } else {
                SimplexClass::Injective
            }
        } else {
            SimplexClass::Injective
        };
        target.insert_closed(&image);
        simplex_map.insert(s.clone(), image);
        classification.insert(s.clone(), class);
    }

    let mut weight_conflicts = Vec::new();
    let mut preimage_weights: BTreeMap<&Simplex, Vec<(&Simplex, &crate::Rational)>> =
        BTreeMap::new();
    for (s, w) in complex.weights() {
        if classification[s] != SimplexClass::Collapsing {
            preimage_weights
                .entry(&simplex_map[s])
                .or_default()
                .push((s, w));
        }
    }
    for (image, pre) in preimage_weights {
        if pre.len() > 1 && pre.windows(2).any(|p| p[0].1 != p[1].1) {
            weight_conflicts.push(image.clone());
        }
        let w = match merge {
            WeightMerge::KeepSurvivor => pre
                .iter()
                .find(|(s, _)| *s == image)
                .or_else(|| pre.first())
                .map(|(_, w)| (*w).clone()),
            WeightMerge::Minimum => pre.iter().map(|(_, w)| (*w).clone()).min(),
        };
        if let Some(w) = w {
            target.set_weight(image, w)?;
        }
    }

    Ok(EdgeContraction {
        source: complex.clone(),
        target,
        a,
        b,
        simplex_map,
        classification,
        weight_conflicts,
    })
}

impl EdgeContraction {
    pub fn edge(&self) -> Simplex {
        Simplex::edge(self.a, self.b).unwrap()
    }

    pub fn image(&self, s: &Simplex) -> Option<&Simplex> {
        self.simplex_map.get(s)
    }

    pub fn class(&self, s: &Simplex) -> Option<&SimplexClass> {
        self.classification.get(s)
    }

    pub fn is_collapsing(&self, s: &Simplex) -> bool {
        matches!(self.class(s), Some(SimplexClass::Collapsing))
    }

    pub fn mirror_of(&self, s: &Simplex) -> Option<&Simplex> {
        match self.class(s) {
            Some(SimplexClass::Mirror(m)) => Some(m),
            _ => None,
        }
    }

    /// The vertex sequence `h(s)` in the order of `s`'s canonical vertices.
    fn relabelled(&self, s: &Simplex) -> Vec<VertexId> {
        s.vertices()
            .iter()
            .map(|&x| if x == self.b { self.a } else { x })
            .collect()
    }

    /// Induced chain map: collapsing simplices go to zero, everything else to
    /// its image with the sign of the relabelled vertex order.
    pub fn push_chain<R: Coefficient>(&self, chain: &Chain<R>) -> Result<Chain<R>> {
        chain.check_supported(&self.source)?;
        let mut out = Chain::zero(chain.dim());
        for (s, r) in chain.terms() {
            if self.is_collapsing(s) {
                continue;
            }
            let sign = permutation_sign(&self.relabelled(s));
            out.add_unchecked(
                self.simplex_map[s].clone(),
                r.clone() * R::from_int(sign as i64),
            );
        }
        Ok(out)
    }

    /// Orientation of each target simplex induced from one chosen preimage.
    ///
    /// The preimage avoiding `b` is preferred, so simplices already present in
    /// the source keep their canonical orientation.
    pub fn induced_orientation(&self) -> BTreeMap<Simplex, i8> {
        let mut out = BTreeMap::new();
        for s in self.source.simplices() {
            if self.is_collapsing(s) {
                continue;
            }
            let image = &self.simplex_map[s];
            let sign = permutation_sign(&self.relabelled(s));
            if !s.contains(self.b) {
                out.insert(image.clone(), sign);
            } else {
                out.entry(image.clone()).or_insert(sign);
            }
        }
        out
    }

    /// Source simplices mapping onto `target_simplex` without collapsing.
    pub fn preimages(&self, target_simplex: &Simplex) -> Vec<&Simplex> {
        self.simplex_map
            .iter()
            .filter(|(s, t)| *t == target_simplex && !self.is_collapsing(s))
            .map(|(s, _)| s)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::Rational;
    use num_bigint::BigInt;

    fn s(v: &[u32]) -> Simplex {
        Simplex::new(v.iter().copied()).unwrap()
    }

    #[test]
    fn triangle_collapses_to_edge() {
        let k = SimplicialComplex::from_maximal([[1, 2, 3]]).unwrap();
        let c = contract_edge(&k, &s(&[1, 2])).unwrap();
        assert_eq!(c.target, SimplicialComplex::from_maximal([[1, 3]]).unwrap());
        assert!(c.target.vertices().all(|v| v != 2));
        assert_eq!(c.class(&s(&[1, 2, 3])), Some(&SimplexClass::Collapsing));
        assert_eq!(c.class(&s(&[1])), Some(&SimplexClass::Mirror(s(&[2]))));
    }

    #[test]
    fn classification_on_tetrahedron_graph_fixture() {
        // a=1 b=2 d=4 e=5
        let k = fixtures::two_graph_complex();
        let c = contract_edge(&k, &s(&[1, 2])).unwrap();
        assert_eq!(
            c.class(&s(&[1, 4])),
            Some(&SimplexClass::Mirror(s(&[2, 4])))
        );
        assert_eq!(
            c.class(&s(&[1, 4, 5])),
            Some(&SimplexClass::Mirror(s(&[2, 4, 5])))
        );
        for col in [&[1, 2][..], &[1, 2, 4], &[1, 2, 5], &[1, 2, 4, 5]] {
            assert!(c.is_collapsing(&s(col)));
        }
        assert_eq!(c.class(&s(&[4, 5])), Some(&SimplexClass::Injective));
    }

    #[test]
    fn unknown_edge_is_an_error() {
        let k = SimplicialComplex::from_maximal([[1, 2, 3]]).unwrap();
        assert!(contract_edge(&k, &s(&[1, 4])).is_err());
        assert!(contract_edge_with(&k, &s(&[1, 2]), 3, WeightMerge::default()).is_err());
        let c = contract_edge_with(&k, &s(&[1, 2]), 2, WeightMerge::default()).unwrap();
        assert_eq!((c.a, c.b), (2, 1));
        assert_eq!(c.target, SimplicialComplex::from_maximal([[2, 3]]).unwrap());
    }

    #[test]
    fn push_chain_examples() {
        let k = fixtures::two_graph_complex();
        let c = contract_edge(&k, &s(&[1, 2])).unwrap();
        let tri: Chain<BigInt> = Chain::from_terms(2, [(s(&[1, 2, 4]), BigInt::from(1))]).unwrap();
        assert!(c.push_chain(&tri).unwrap().is_zero());
        let bd: Chain<BigInt> = Chain::from_terms(1, [(s(&[2, 4]), BigInt::from(1))]).unwrap();
        assert_eq!(
            c.push_chain(&bd).unwrap(),
            Chain::from_terms(1, [(s(&[1, 4]), BigInt::from(1))]).unwrap()
        );
        let outside: Chain<BigInt> = Chain::from_terms(1, [(s(&[7, 8]), BigInt::from(1))]).unwrap();
        assert!(c.push_chain(&outside).is_err());
    }

    #[test]
    fn push_chain_sign_when_b_is_largest() {
        // Edge 1-3 contracted keeping 3: [1 2] ↦ [3 2] = -[2 3].
        let k = SimplicialComplex::from_maximal([[1, 2], [1, 3]]).unwrap();
        let c = contract_edge_with(&k, &s(&[1, 3]), 3, WeightMerge::default()).unwrap();
        let e: Chain<i64> = Chain::from_terms(1, [(s(&[1, 2]), 1)]).unwrap();
        assert_eq!(c.push_chain(&e).unwrap().coefficient(&s(&[2, 3])), -1);
    }

    #[test]
    fn weights_follow_survivor_or_minimum() {
        let mut k = SimplicialComplex::from_maximal([[1, 2, 4]]).unwrap();
        let q = |n: i64, d: i64| Rational::new(n.into(), d.into());
        k.set_weight(&s(&[1, 4]), q(1, 1)).unwrap();
        k.set_weight(&s(&[2, 4]), q(1, 10)).unwrap();
        let keep = contract_edge(&k, &s(&[1, 2])).unwrap();
        assert_eq!(keep.target.weight(&s(&[1, 4])), q(1, 1));
        assert_eq!(keep.weight_conflicts, vec![s(&[1, 4])]);
        let min = contract_edge_with(&k, &s(&[1, 2]), 1, WeightMerge::Minimum).unwrap();
        assert_eq!(min.target.weight(&s(&[1, 4])), q(1, 10));
    }

    #[test]
    fn induced_orientation_prefers_a_side() {
        let k = fixtures::two_graph_complex();
        let c = contract_edge(&k, &s(&[1, 2])).unwrap();
        let o = c.induced_orientation();
        assert_eq!(o[&s(&[1, 4, 5])], 1);
        assert_eq!(o.len(), c.target.len());
    }
}
