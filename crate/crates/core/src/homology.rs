//! Absolute and relative integer homology, and relative-torsion detection.

use std::fmt;

use num_traits::ToPrimitive;

use crate::complex::{Simplex, SimplicialComplex};
use crate::error::{invalid, Result};
use crate::matrix::{boundary_matrix, boundary_matrix_unchecked, IntegerMatrix};
use crate::snf::{smith_normal_form, smith_normal_form_of};
use crate::tu::{self, TuStrategy, TuVerdict, TuWitness};
use crate::Integer;

/// `Z^betti ⊕ Z/t1 ⊕ ... ⊕ Z/tk` with `t_i | t_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyGroup {
    pub p: usize,
    pub betti: usize,
    pub torsion: Vec<Integer>,
}

impl HomologyGroup {
    pub fn is_torsion_free(&self) -> bool {
        self.torsion.is_empty()
    }

    /// `(betti, torsion)` without the dimension, for comparisons across complexes.
    pub fn invariants(&self) -> (usize, &[Integer]) {
        (self.betti, &self.torsion)
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.betti > 0 {
            parts.push(if self.betti == 1 {
                "Z".to_string()
            } else {
                format!("Z^{}", self.betti)
            });
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "H_{} = 0", self.p)
        } else {
            write!(f, "H_{} = {}", self.p, parts.join(" + "))
        }
    }
}

fn rank_of(m: &IntegerMatrix) -> usize {
    if m.rows() == 0 || m.cols() == 0 {
        return 0;
    }
    smith_normal_form_of::<Integer>(m).rank
}

/// `H_p(K)` over the integers.
pub fn homology_group(complex: &SimplicialComplex, p: usize) -> Result<HomologyGroup> {
    let dim = match complex.dim() {
        Some(d) if p <= d => d,
        _ => return invalid(format!("homology dimension {p} outside 0..=dim")),
    };
    let chains = complex.count_of_dim(p);
    let rank_p = if p == 0 {
        0
    } else {
        rank_of(&boundary_matrix(complex, p)?)
    };
    let (rank_next, torsion) = if p < dim {
        let snf = smith_normal_form_of::<Integer>(&boundary_matrix(complex, p + 1)?);
        (snf.rank, snf.torsion())
    } else {
        (0, Vec::new())
    };
    Ok(HomologyGroup {
        p,
        betti: chains - rank_p - rank_next,
        torsion,
    })
}

/// A pure `(p+1)`-dimensional `L` with a pure `p`-dimensional `L0 ⊆ L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubcomplexPair {
    pub l: SimplicialComplex,
    pub l0: SimplicialComplex,
    pub p: usize,
}

impl SubcomplexPair {
    pub fn new(l: SimplicialComplex, l0: SimplicialComplex, p: usize) -> Result<Self> {
        if !l.is_pure(p + 1) {
            return invalid(format!("L must be pure of dimension {}", p + 1));
        }
        if !l0.is_pure(p) {
            return invalid(format!("L0 must be pure of dimension {p}"));
        }
        if !l0.is_subcomplex_of(&l) {
            return invalid("L0 is not a subcomplex of L");
        }
        Ok(SubcomplexPair { l, l0, p })
    }

    /// The pair spanned by `(p+1)`-simplices `top` and `p`-simplices `base` of `complex`.
    pub fn spanned_by(
        complex: &SimplicialComplex,
        top: &[Simplex],
        base: &[Simplex],
        p: usize,
    ) -> Result<Self> {
        SubcomplexPair::new(complex.subcomplex(top)?, complex.subcomplex(base)?, p)
    }

    fn relative(&self, k: usize) -> Vec<Simplex> {
        self.l
            .simplices_of_dim(k)
            .filter(|s| !self.l0.contains(s))
            .cloned()
            .collect()
    }
}

/// `[∂_{p+1}(L, L0)]`: columns are the `(p+1)`-simplices of `L`, rows the
/// `p`-simplices of `L` outside `L0`.
pub fn relative_boundary_matrix(pair: &SubcomplexPair) -> IntegerMatrix {
    IntegerMatrix::boundary_between(pair.relative(pair.p), pair.relative(pair.p + 1))
}

/// `H_p(L, L0)` over the integers.
pub fn relative_homology_group(pair: &SubcomplexPair) -> HomologyGroup {
    let p = pair.p;
    let chains = pair.relative(p);
    let rank_p = if p == 0 {
        0
    } else {
        rank_of(&IntegerMatrix::boundary_between(
            pair.relative(p - 1),
            chains.clone(),
        ))
    };
    let top = relative_boundary_matrix(pair);
    let snf = smith_normal_form_of::<Integer>(&top);
    HomologyGroup {
        p,
        betti: chains.len() - rank_p - snf.rank,
        torsion: snf.torsion(),
    }
}

/// One item of [`enumerate_pure_pairs`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PairItem {
    Pair(SubcomplexPair),
    /// The budget ran out before the enumeration finished.
    Truncated {
        yielded: u64,
    },
}

/// Deterministic enumeration of pure pairs by bit masks.
///
/// `L` runs over nonempty sets of `(p+1)`-simplices (mask order over the
/// canonical simplex order); for each `L`, `L0` runs over nonempty sets of
/// `p`-simplices of `L`.
#[derive(Clone, Debug)]
struct PairMasks {
    tops: Vec<Simplex>,
    faces: Vec<Simplex>,
    // For each top simplex, the bit mask of its p-faces in `faces`.
    top_faces: Vec<u64>,
    l_mask: u64,
    l_faces: Vec<usize>,
    l0_mask: u64,
}

impl PairMasks {
    fn new(complex: &SimplicialComplex, p: usize) -> Result<Self> {
        let tops: Vec<Simplex> = complex.simplices_of_dim(p + 1).cloned().collect();
        let faces: Vec<Simplex> = complex.simplices_of_dim(p).cloned().collect();
        if tops.len() > 63 || faces.len() > 63 {
            return invalid(format!(
                "pair enumeration supports at most 63 {}-simplices and 63 {p}-simplices",
                p + 1
            ));
        }
        let top_faces = tops
            .iter()
            .map(|t| {
                t.boundary()
                    .iter()
                    .map(|(f, _)| 1u64 << faces.binary_search(f).expect("face-closed"))
                    .fold(0, |a, b| a | b)
            })
            .collect();
        Ok(PairMasks {
            tops,
            faces,
            top_faces,
            l_mask: 0,
            l_faces: Vec::new(),
            l0_mask: 0,
        })
    }

    /// Advances to the next `(L mask, L0 mask over l_faces)`.
    fn advance(&mut self) -> Option<(u64, u64)> {
        let n = self.tops.len();
        if n == 0 {
            return None;
        }
        if self.l_mask == 0 || self.l0_mask + 1 >= 1u64 << self.l_faces.len() {
            if self.l_mask + 1 >= 1u64 << n {
                return None;
            }
            self.l_mask += 1;
            let faces = (0..n)
                .filter(|i| self.l_mask >> i & 1 == 1)
                .fold(0u64, |a, i| a | self.top_faces[i]);
            self.l_faces = (0..64).filter(|i| faces >> i & 1 == 1).collect();
            self.l0_mask = 0;
        }
        self.l0_mask += 1;
        Some((self.l_mask, self.l0_mask))
    }

    fn pair(
        &self,
        complex: &SimplicialComplex,
        l_mask: u64,
        l0_mask: u64,
        p: usize,
    ) -> SubcomplexPair {
        let top: Vec<Simplex> = (0..self.tops.len())
            .filter(|i| l_mask >> i & 1 == 1)
            .map(|i| self.tops[i].clone())
            .collect();
        let base: Vec<Simplex> = (0..self.l_faces.len())
            .filter(|i| l0_mask >> i & 1 == 1)
            .map(|i| self.faces[self.l_faces[i]].clone())
            .collect();
        SubcomplexPair::spanned_by(complex, &top, &base, p).expect("enumerated pairs are valid")
    }
}

/// Lazily enumerates every pure pair `(L, L0)` of `complex` at dimension `p`,
/// stopping with [`PairItem::Truncated`] after `budget` pairs.
pub fn enumerate_pure_pairs(
    complex: &SimplicialComplex,
    p: usize,
    budget: u64,
) -> Result<impl Iterator<Item = PairItem> + '_> {
    let masks = PairMasks::new(complex, p)?;
    Ok(PairIter {
        complex,
        p,
        masks,
        budget,
        yielded: 0,
        done: false,
    })
}

struct PairIter<'a> {
    complex: &'a SimplicialComplex,
    p: usize,
    masks: PairMasks,
    budget: u64,
    yielded: u64,
    done: bool,
}

impl Iterator for PairIter<'_> {
    type Item = PairItem;

    fn next(&mut self) -> Option<PairItem> {
        if self.done {
            return None;
        }
        let Some((l, l0)) = self.masks.advance() else {
            self.done = true;
            return None;
        };
        if self.yielded >= self.budget {
            self.done = true;
            return Some(PairItem::Truncated {
                yielded: self.yielded,
            });
        }
        self.yielded += 1;
        Some(PairItem::Pair(self.masks.pair(self.complex, l, l0, self.p)))
    }
}

/// Total number of pure pairs, `Σ_L (2^{#p-faces(L)} − 1)`.
pub fn count_pure_pairs(complex: &SimplicialComplex, p: usize) -> Result<u128> {
    let m = PairMasks::new(complex, p)?;
    let n = m.tops.len();
    Ok((1u64..1u64 << n)
        .map(|l| {
            let faces = (0..n)
                .filter(|i| l >> i & 1 == 1)
                .fold(0u64, |a, i| a | m.top_faces[i]);
            (1u128 << faces.count_ones()) - 1
        })
        .sum())
}

/// How [`has_relative_torsion`] decides.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TorsionMode {
    /// Exhaustive pair enumeration with a Smith normal form per pair.
    Oracle,
    /// Total unimodularity of `[∂_{p+1}]` via the circuit criterion.
    Tu,
}

/// Evidence of relative torsion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TorsionWitness {
    Pair {
        pair: SubcomplexPair,
        group: HomologyGroup,
    },
    Tu(TuWitness),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TorsionVerdict {
    Torsion(Box<TorsionWitness>),
    TorsionFree,
    /// The budget ran out; nothing was proved.
    Inconclusive {
        explored: u64,
    },
}

impl TorsionVerdict {
    /// `Some(true)` for torsion, `Some(false)` for torsion-free, `None` if undecided.
    pub fn decided(&self) -> Option<bool> {
        match self {
            TorsionVerdict::Torsion(_) => Some(true),
            TorsionVerdict::TorsionFree => Some(false),
            TorsionVerdict::Inconclusive { .. } => None,
        }
    }
}

/// Whether some pure pair `(L, L0)` of `complex` has torsion in `H_p(L, L0)`.
///
/// The oracle returns the first torsion pair in enumeration order.
pub fn has_relative_torsion(
    complex: &SimplicialComplex,
    p: usize,
    mode: TorsionMode,
    budget: u64,
) -> Result<TorsionVerdict> {
    if complex.dim().is_none_or(|d| d <= p) {
        return invalid(format!(
            "relative torsion at p = {p} needs a complex of dimension > {p}"
        ));
    }
    match mode {
        TorsionMode::Oracle => oracle_torsion(complex, p, budget),
        TorsionMode::Tu => {
            let d = boundary_matrix_unchecked(complex, p + 1);
            let report = tu::is_totally_unimodular(&d.entries, TuStrategy::Circuit, budget);
            Ok(match report.verdict {
                TuVerdict::Unimodular => TorsionVerdict::TorsionFree,
                TuVerdict::NotUnimodular(w) => {
                    TorsionVerdict::Torsion(Box::new(TorsionWitness::Tu(w)))
                }
                TuVerdict::Inconclusive => TorsionVerdict::Inconclusive {
                    explored: report.work,
                },
            })
        }
    }
}

fn oracle_torsion(complex: &SimplicialComplex, p: usize, budget: u64) -> Result<TorsionVerdict> {
    let mut masks = PairMasks::new(complex, p)?;
    // Relative torsion of (L, L0) is the torsion of [∂_{p+1}] restricted to
    // the columns of L and the rows of L's p-faces outside L0, so the
    // enumeration only needs the one dense matrix.
    let full = boundary_matrix_unchecked(complex, p + 1).to_scalar::<i128>();
    let mut explored = 0u64;
    while let Some((l, l0)) = masks.advance() {
        if explored >= budget {
            return Ok(TorsionVerdict::Inconclusive { explored });
        }
        explored += 1;
        let cols: Vec<usize> = (0..masks.tops.len()).filter(|i| l >> i & 1 == 1).collect();
        let rows: Vec<usize> = (0..masks.l_faces.len())
            .filter(|i| l0 >> i & 1 == 0)
            .map(|i| masks.l_faces[i])
            .collect();
        if rows.is_empty() {
            continue;
        }
        if smith_normal_form(&full.select(&rows, &cols)).has_torsion() {
            let pair = masks.pair(complex, l, l0, p);
            let group = relative_homology_group(&pair);
            debug_assert!(!group.is_torsion_free());
            return Ok(TorsionVerdict::Torsion(Box::new(TorsionWitness::Pair {
                pair,
                group,
            })));
        }
    }
    Ok(TorsionVerdict::TorsionFree)
}

/// Torsion coefficients as machine integers, for reports.
pub fn torsion_u64(group: &HomologyGroup) -> Vec<u64> {
    group
        .torsion
        .iter()
        .map(|t| t.to_u64().unwrap_or(u64::MAX))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn s(v: &[u32]) -> Simplex {
        Simplex::new(v.iter().copied()).unwrap()
    }

    fn z(v: i64) -> Integer {
        Integer::from(v)
    }

    #[test]
    fn circle_and_mobius_homology() {
        let circle = SimplicialComplex::from_maximal([[1, 2], [2, 3], [1, 3]]).unwrap();
        assert_eq!(
            homology_group(&circle, 1).unwrap(),
            HomologyGroup {
                p: 1,
                betti: 1,
                torsion: vec![]
            }
        );
        assert_eq!(homology_group(&circle, 0).unwrap().betti, 1);
        assert!(homology_group(&circle, 2).is_err());

        let m = fixtures::mobius(5).unwrap();
        assert_eq!(
            homology_group(&m, 1).unwrap(),
            HomologyGroup {
                p: 1,
                betti: 1,
                torsion: vec![]
            }
        );
        assert_eq!(homology_group(&m, 0).unwrap().betti, 1);
        assert_eq!(homology_group(&m, 2).unwrap().betti, 0);
    }

    #[test]
    fn projective_plane_has_z2() {
        // Six-vertex real projective plane.
        let rp2 = SimplicialComplex::from_maximal([
            [1, 2, 3],
            [1, 3, 4],
            [1, 4, 5],
            [1, 5, 6],
            [1, 2, 6],
            [2, 3, 5],
            [3, 4, 6],
            [2, 4, 5],
            [3, 5, 6],
            [2, 4, 6],
        ])
        .unwrap();
        let h1 = homology_group(&rp2, 1).unwrap();
        assert_eq!((h1.betti, h1.torsion.clone()), (0, vec![z(2)]));
        assert_eq!(homology_group(&rp2, 2).unwrap().betti, 0);
        assert_eq!(h1.to_string(), "H_1 = Z/2");
    }

    #[test]
    fn mobius_relative_to_boundary_is_z2() {
        let m = fixtures::mobius(5).unwrap();
        let pair = SubcomplexPair::new(m, fixtures::strip_boundary(5), 1).unwrap();
        let g = relative_homology_group(&pair);
        assert_eq!(g.torsion, vec![z(2)]);
        assert_eq!(g.betti, 0);
        let d = relative_boundary_matrix(&pair);
        assert_eq!((d.rows(), d.cols()), (5, 5));
    }

    #[test]
    fn triangle_relative_to_its_edges() {
        let t = SimplicialComplex::from_maximal([[1, 2, 3]]).unwrap();
        let pair = SubcomplexPair::spanned_by(
            &t,
            &[s(&[1, 2, 3])],
            &[s(&[1, 2]), s(&[1, 3]), s(&[2, 3])],
            1,
        )
        .unwrap();
        let g = relative_homology_group(&pair);
        assert_eq!((g.betti, g.torsion.len()), (0, 0));
    }

    #[test]
    fn invalid_pairs() {
        let t = SimplicialComplex::from_maximal([[1, 2, 3]]).unwrap();
        let edge = SimplicialComplex::from_maximal([[1, 2]]).unwrap();
        assert!(SubcomplexPair::new(edge.clone(), edge.clone(), 1).is_err());
        assert!(SubcomplexPair::new(t.clone(), t.clone(), 1).is_err());
        let far = SimplicialComplex::from_maximal([[7, 8]]).unwrap();
        assert!(SubcomplexPair::new(t, far, 1).is_err());
    }

    #[test]
    fn pair_counts_match_formula() {
        // Two triangles sharing an edge: L = one triangle (3 edges) twice, or both (5 edges).
        let k = SimplicialComplex::from_maximal([[1, 2, 3], [2, 3, 4]]).unwrap();
        let items: Vec<PairItem> = enumerate_pure_pairs(&k, 1, u64::MAX).unwrap().collect();
        let expect = 2 * ((1 << 3) - 1) + ((1 << 5) - 1);
        assert_eq!(items.len(), expect);
        assert_eq!(count_pure_pairs(&k, 1).unwrap(), expect as u128);
        assert!(items.iter().all(|i| matches!(i, PairItem::Pair(_))));

        let edge = SimplicialComplex::from_maximal([[1, 2]]).unwrap();
        assert_eq!(enumerate_pure_pairs(&edge, 1, 10).unwrap().count(), 0);

        let first: Vec<PairItem> = enumerate_pure_pairs(&k, 1, 0).unwrap().collect();
        assert_eq!(first, vec![PairItem::Truncated { yielded: 0 }]);
        let some: Vec<PairItem> = enumerate_pure_pairs(&k, 1, 4).unwrap().collect();
        assert_eq!(some.len(), 5);
        assert_eq!(some[4], PairItem::Truncated { yielded: 4 });
    }

    #[test]
    fn oracle_finds_mobius_torsion() {
        let m = fixtures::mobius(5).unwrap();
        match has_relative_torsion(&m, 1, TorsionMode::Oracle, u64::MAX).unwrap() {
            TorsionVerdict::Torsion(w) => match *w {
                TorsionWitness::Pair { group, .. } => assert_eq!(group.torsion, vec![z(2)]),
                other => panic!("unexpected witness {other:?}"),
            },
            other => panic!("expected torsion, got {other:?}"),
        }
        let solid = SimplicialComplex::from_maximal([[1, 2, 3]]).unwrap();
        assert_eq!(
            has_relative_torsion(&solid, 1, TorsionMode::Oracle, u64::MAX).unwrap(),
            TorsionVerdict::TorsionFree
        );
        assert_eq!(
            has_relative_torsion(&solid, 1, TorsionMode::Tu, u64::MAX).unwrap(),
            TorsionVerdict::TorsionFree
        );
        assert!(matches!(
            has_relative_torsion(&fixtures::annulus(6).unwrap(), 1, TorsionMode::Oracle, 3)
                .unwrap(),
            TorsionVerdict::Inconclusive { explored: 3 }
        ));
        assert!(has_relative_torsion(&solid, 2, TorsionMode::Oracle, 1).is_err());
    }

    #[test]
    fn oracle_agrees_with_pair_by_pair_computation() {
        let k =
            SimplicialComplex::from_maximal([[1, 2, 3], [2, 3, 4], [3, 4, 5], [1, 4, 5]]).unwrap();
        let slow = enumerate_pure_pairs(&k, 1, u64::MAX)
            .unwrap()
            .filter_map(|i| match i {
                PairItem::Pair(pair) => Some(pair),
                PairItem::Truncated { .. } => None,
            })
            .find(|pair| !relative_homology_group(pair).is_torsion_free());
        let fast = has_relative_torsion(&k, 1, TorsionMode::Oracle, u64::MAX).unwrap();
        match (slow, fast) {
            (None, TorsionVerdict::TorsionFree) => {}
            (Some(a), TorsionVerdict::Torsion(w)) => match *w {
                TorsionWitness::Pair { pair, .. } => assert_eq!(a, pair),
                other => panic!("unexpected witness {other:?}"),
            },
            (a, b) => panic!("disagreement: {a:?} vs {b:?}"),
        }
    }
}
