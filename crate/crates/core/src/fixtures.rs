//! Named example complexes.
//!
//! Letters in comments follow the usual a=1, b=2, c=3, ... convention.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::chain::Chain;
use crate::complex::{Simplex, SimplicialComplex, VertexId};
use crate::error::{invalid, Error, Result};
use crate::Rational;

/// Triangles `{P_i, P_{i+1}, P_{i+2}}` (indices mod `labels.len()`).
fn strip(labels: &[VertexId], skip: &[usize]) -> SimplicialComplex {
    let n = labels.len();
    let mut k = SimplicialComplex::new();
    for i in (0..n).filter(|i| !skip.contains(i)) {
        let t = Simplex::new([labels[i], labels[(i + 1) % n], labels[(i + 2) % n]])
            .expect("distinct strip labels");
        k.insert_closed(&t);
    }
    k
}

/// The `k`-triangle Möbius strip on vertices `1..=k`; `k` odd, at least 5.
pub fn mobius(k: usize) -> Result<SimplicialComplex> {
    if k < 5 || k.is_multiple_of(2) {
        return invalid(format!("mobius({k}) needs an odd k >= 5"));
    }
    let labels: Vec<VertexId> = (1..=k as VertexId).collect();
    Ok(strip(&labels, &[]))
}

/// Boundary cycle `{i, i+2}` of [`mobius`] / [`annulus`] as a pure 1-complex.
pub fn strip_boundary(k: usize) -> SimplicialComplex {
    let mut out = SimplicialComplex::new();
    for i in 0..k {
        let e = Simplex::edge(i as VertexId + 1, ((i + 2) % k) as VertexId + 1).expect("k >= 3");
        out.insert_closed(&e);
    }
    out
}

/// The `k`-triangle annulus on vertices `1..=k`; `k` even, at least 6.
pub fn annulus(k: usize) -> Result<SimplicialComplex> {
    if k < 6 || k % 2 == 1 {
        return invalid(format!("annulus({k}) needs an even k >= 6"));
    }
    let labels: Vec<VertexId> = (1..=k as VertexId).collect();
    Ok(strip(&labels, &[]))
}

/// A `k`-triangle Möbius strip with the triangle abc removed.
///
/// The removed triangle sits at strip positions `P0 P1 P2` labelled a, c, b,
/// so ab is a boundary edge lying in no triangle; every other position `i`
/// gets the label `i + 1`. The edge ab is the first edge in canonical order.
pub fn punctured_mobius(k: usize) -> Result<SimplicialComplex> {
    if k < 7 || k.is_multiple_of(2) {
        return invalid(format!("punctured-mobius({k}) needs an odd k >= 7"));
    }
    let labels: Vec<VertexId> = (0..k)
        .map(|i| match i {
            0 => 1,
            1 => 3,
            2 => 2,
            i => i as VertexId + 1,
        })
        .collect();
    let mut m = strip(&labels, &[0]);
    m.insert_closed(&Simplex::edge(1, 2).expect("distinct"));
    Ok(m)
}

/// Tetrahedron abde plus the edges ac, bc.
/// ab satisfies the 2-link but not the 1-link condition.
pub fn plink_left() -> SimplicialComplex {
    SimplicialComplex::from_maximal([vec![1, 2, 4, 5], vec![1, 3], vec![2, 3]]).expect("valid")
}

/// Tetrahedron abde plus triangle abc; ab satisfies the link condition.
pub fn plink_right() -> SimplicialComplex {
    SimplicialComplex::from_maximal([vec![1, 2, 4, 5], vec![1, 2, 3]]).expect("valid")
}

/// Closure of abde; its 2-graph has mirror triangles ade/bde and the
/// collapsing triangles abd, abe.
pub fn two_graph_complex() -> SimplicialComplex {
    SimplicialComplex::from_maximal([[1, 2, 4, 5]]).expect("valid")
}

/// A 4-simplex abhij with the tetrahedra hijk and bhik attached.
///
/// With `p = 2`, contracting ab merges the mirror tetrahedra ahij/bhij and
/// turns bhik into ahik, so the 3-graph of the result has the 6-cycle
/// ahi, ahij, hij, hijk, hik, ahik; ab satisfies the 2-link condition.
pub fn three_graph_complex() -> SimplicialComplex {
    SimplicialComplex::from_maximal([vec![1, 2, 8, 9, 10], vec![8, 9, 10, 11], vec![2, 8, 9, 11]])
        .expect("valid")
}

/// Apex 0 joined to the path `1 - 2 - ... - n`.
pub fn cone(n: usize) -> Result<SimplicialComplex> {
    if n < 1 {
        return invalid("cone(n) needs n >= 1");
    }
    if n == 1 {
        return SimplicialComplex::from_maximal([[0, 1]]);
    }
    SimplicialComplex::from_maximal((1..n as VertexId).map(|i| [0, i, i + 1]))
}

// Strip positions of the weighted Möbius example; d (4) occurs twice.
const FIG2_POSITIONS: [VertexId; 15] = [2, 14, 13, 12, 11, 10, 1, 4, 7, 8, 9, 6, 5, 4, 3];

/// Weighted 15-triangle Möbius strip pinched at d, with triangles abd and abm
/// closing a second loop through the edge ab.
///
/// Weights: boundary edges 1/20 except bd and bm (1/10), am 1/20, every
/// other edge (rungs, ef, ab) 1.
pub fn fig2_k() -> SimplicialComplex {
    let mut k = strip(&FIG2_POSITIONS, &[]);
    k.insert_closed(&Simplex::new([1, 2, 4]).expect("abd"));
    k.insert_closed(&Simplex::new([1, 2, 13]).expect("abm"));
    let q = |n: i64, d: i64| Rational::new(BigInt::from(n), BigInt::from(d));
    let edges: Vec<Simplex> = k.edges().cloned().collect();
    for e in &edges {
        k.set_weight(e, q(1, 1)).expect("edge present");
    }
    let n = FIG2_POSITIONS.len();
    for i in 0..n {
        let e = Simplex::edge(FIG2_POSITIONS[i], FIG2_POSITIONS[(i + 2) % n]).expect("distinct");
        k.set_weight(&e, q(1, 20)).expect("boundary edge");
    }
    for (u, v, w) in [(2, 4, q(1, 10)), (2, 13, q(1, 10)), (1, 13, q(1, 20))] {
        k.set_weight(&Simplex::edge(u, v).expect("distinct"), w)
            .expect("edge present");
    }
    k
}

/// The input chain of the weighted example: the edge ef with coefficient 1.
pub fn fig2_chain() -> Chain<BigInt> {
    Chain::from_terms(1, [(Simplex::edge(5, 6).expect("ef"), BigInt::from(1))]).expect("1-simplex")
}

/// A named, parameterised fixture.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fixture {
    Mobius(usize),
    PuncturedMobius(usize),
    Annulus(usize),
    PlinkLeft,
    PlinkRight,
    TwoGraph,
    ThreeGraph,
    Fig2K,
    Cone(usize),
}

impl Fixture {
    pub fn generate(self) -> Result<SimplicialComplex> {
        match self {
            Fixture::Mobius(k) => mobius(k),
            Fixture::PuncturedMobius(k) => punctured_mobius(k),
            Fixture::Annulus(k) => annulus(k),
            Fixture::PlinkLeft => Ok(plink_left()),
            Fixture::PlinkRight => Ok(plink_right()),
            Fixture::TwoGraph => Ok(two_graph_complex()),
            Fixture::ThreeGraph => Ok(three_graph_complex()),
            Fixture::Fig2K => Ok(fig2_k()),
            Fixture::Cone(n) => cone(n),
        }
    }

    pub fn names() -> &'static [&'static str] {
        &[
            "mobius(k)",
            "punctured-mobius(k)",
            "annulus(k)",
            "fig-plink-left",
            "fig-plink-right",
            "two-graph",
            "three-graph",
            "fig2-K",
            "cone(n)",
        ]
    }
}

impl FromStr for Fixture {
    type Err = Error;

    /// Accepts `mobius(5)`, `mobius:5`, `fig2-K`, ...
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (name, arg) = match s.find(['(', ':']) {
            Some(i) => (&s[..i], Some(s[i + 1..].trim_end_matches(')').trim())),
            None => (s, None),
        };
        let int = |default: Option<usize>| -> Result<usize> {
            match arg {
                Some(a) => a
                    .parse()
                    .map_err(|_| Error::InvalidArgument(format!("bad fixture parameter {a:?}"))),
                None => default.ok_or_else(|| {
                    Error::InvalidArgument(format!("fixture {name} needs a parameter"))
                }),
            }
        };
        let f = match name.to_ascii_lowercase().as_str() {
            "mobius" => Fixture::Mobius(int(Some(5))?),
            "punctured-mobius" => Fixture::PuncturedMobius(int(Some(15))?),
            "annulus" => Fixture::Annulus(int(Some(6))?),
            "fig-plink-left" => Fixture::PlinkLeft,
            "fig-plink-right" => Fixture::PlinkRight,
            "two-graph" => Fixture::TwoGraph,
            "three-graph" => Fixture::ThreeGraph,
            "fig2-k" => Fixture::Fig2K,
            "cone" => Fixture::Cone(int(Some(4))?),
            _ => {
                return invalid(format!(
                    "unknown fixture {s:?}; known: {}",
                    Fixture::names().join(", ")
                ))
            }
        };
        Ok(f)
    }
}

impl fmt::Display for Fixture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Fixture::Mobius(k) => write!(f, "mobius({k})"),
            Fixture::PuncturedMobius(k) => write!(f, "punctured-mobius({k})"),
            Fixture::Annulus(k) => write!(f, "annulus({k})"),
            Fixture::PlinkLeft => write!(f, "fig-plink-left"),
            Fixture::PlinkRight => write!(f, "fig-plink-right"),
            Fixture::TwoGraph => write!(f, "two-graph"),
            Fixture::ThreeGraph => write!(f, "three-graph"),
            Fixture::Fig2K => write!(f, "fig2-K"),
            Fixture::Cone(n) => write!(f, "cone({n})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mobius_counts() {
        let m = mobius(5).unwrap();
        assert_eq!(
            (m.count_of_dim(0), m.count_of_dim(1), m.count_of_dim(2)),
            (5, 10, 5)
        );
        assert!(mobius(6).is_err());
        assert!(strip_boundary(5).is_subcomplex_of(&m));
    }

    #[test]
    fn punctured_strip_shape() {
        let m = punctured_mobius(15).unwrap();
        assert_eq!(m.count_of_dim(2), 14);
        let ab = Simplex::edge(1, 2).unwrap();
        assert_eq!(m.edges().next(), Some(&ab));
        assert!(m.simplex_link(&ab).unwrap().is_empty());
    }

    #[test]
    fn fig2_shape() {
        let k = fig2_k();
        assert_eq!(
            k.vertices().collect::<Vec<_>>(),
            (1..=14).collect::<Vec<_>>()
        );
        assert_eq!(k.count_of_dim(2), 17);
        let q = |n: i64, d: i64| Rational::new(n.into(), d.into());
        assert_eq!(k.weight(&Simplex::edge(2, 4).unwrap()), q(1, 10));
        assert_eq!(k.weight(&Simplex::edge(5, 6).unwrap()), q(1, 1));
        assert_eq!(k.weight(&Simplex::edge(1, 13).unwrap()), q(1, 20));
        assert!(k
            .satisfies_link_condition(&Simplex::edge(1, 2).unwrap())
            .unwrap());
    }

    #[test]
    fn fixture_names_parse() {
        assert_eq!("mobius(7)".parse::<Fixture>().unwrap(), Fixture::Mobius(7));
        assert_eq!("fig2-K".parse::<Fixture>().unwrap(), Fixture::Fig2K);
        assert_eq!("cone:3".parse::<Fixture>().unwrap(), Fixture::Cone(3));
        assert!("nope".parse::<Fixture>().is_err());
        for f in [
            Fixture::Mobius(5),
            Fixture::PuncturedMobius(9),
            Fixture::Annulus(8),
            Fixture::ThreeGraph,
            Fixture::Fig2K,
            Fixture::Cone(2),
        ] {
            assert_eq!(f.to_string().parse::<Fixture>().unwrap(), f);
            f.generate().unwrap();
        }
    }
}
