//! Optimal homologous chains as exact linear and integer programs.
//!
//! Given a p-chain `c` and nonnegative weights `f` on p-simplices, find the
//! chain `x = c + ∂y` of least weight `Σ f|x|`. The program splits `x` and
//! `y` into nonnegative parts:
//!
//! ```text
//! min  Σ f (x⁺ + x⁻)
//! s.t. x⁺ − x⁻ − ∂(y⁺ − y⁻) = c,   x⁺, x⁻, y⁺, y⁻ ≥ 0
//! ```

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use crate::chain::Chain;
use crate::complex::{Simplex, SimplicialComplex, VertexId};
use crate::contraction::{contract_edge_with, EdgeContraction, WeightMerge};
use crate::error::{invalid, Result};
use crate::lp::{self, LinearProgram, LpStatus};
use crate::matrix::{boundary_matrix_unchecked, solve_linear, IntegerMatrix, Matrix};
use crate::snf::smith_normal_form;
use crate::{IntChain, Integer, RatChain, Rational};

/// Pivot budget used when a caller does not supply one.
pub const DEFAULT_LP_BUDGET: u64 = 1_000_000;
/// Branch-and-bound node budget used when a caller does not supply one.
pub const DEFAULT_ILP_BUDGET: u64 = 10_000;

#[derive(Clone, Debug, PartialEq)]
pub struct OhcpInstance {
    pub complex: SimplicialComplex,
    pub p: usize,
    pub chain: IntChain,
    /// Weight of every p-simplex of the complex.
    pub weights: BTreeMap<Simplex, Rational>,
}

impl OhcpInstance {
    /// Instance with the complex's own weights (unweighted simplices weigh 1).
    pub fn new(complex: SimplicialComplex, p: usize, chain: IntChain) -> Result<Self> {
        let weights = complex
            .simplices_of_dim(p)
            .map(|s| (s.clone(), complex.weight(s)))
            .collect();
        Self::with_weights(complex, p, chain, weights)
    }

    pub fn with_weights(
        complex: SimplicialComplex,
        p: usize,
        chain: IntChain,
        weights: BTreeMap<Simplex, Rational>,
    ) -> Result<Self> {
        if chain.dim() != p {
            return invalid(format!(
                "input chain has dimension {}, expected {p}",
                chain.dim()
            ));
        }
        chain.check_supported(&complex)?;
        for s in complex.simplices_of_dim(p) {
            match weights.get(s) {
                None => return invalid(format!("no weight for {s}")),
                Some(w) if w.is_negative() => {
                    return invalid(format!("negative weight {w} on {s}"))
                }
                Some(_) => {}
            }
        }
        if let Some(s) = weights
            .keys()
            .find(|s| s.dim() != p || !complex.contains(s))
        {
            return invalid(format!(
                "weight on {s}, which is not a {p}-simplex of the complex"
            ));
        }
        Ok(OhcpInstance {
            complex,
            p,
            chain,
            weights,
        })
    }

    /// Weight of a chain, `Σ f|x|`.
    pub fn weight_of(&self, x: &RatChain) -> Rational {
        x.terms().fold(Rational::zero(), |acc, (s, v)| {
            acc + self.weights[s].clone() * v.abs()
        })
    }

    /// Transports the instance across the contraction of `edge` onto `keep`.
    ///
    /// The chain is pushed forward; weights follow `merge`. Simplices whose
    /// mirror preimages disagree on weight are listed in
    /// [`EdgeContraction::weight_conflicts`].
    pub fn push_forward(
        &self,
        edge: &Simplex,
        keep: VertexId,
        merge: WeightMerge,
    ) -> Result<(OhcpInstance, EdgeContraction)> {
        let mut weighted = self.complex.clone();
        for (s, w) in &self.weights {
            weighted.set_weight(s, w.clone())?;
        }
        let contraction = contract_edge_with(&weighted, edge, keep, merge)?;
        let chain = contraction.push_chain(&self.chain)?;
        let instance = OhcpInstance::new(contraction.target.clone(), self.p, chain)?;
        Ok((instance, contraction))
    }
}

/// The standard-form program of an instance plus its variable layout:
/// `x⁺ (n_p), x⁻ (n_p), y⁺ (n_q), y⁻ (n_q)` with simplices in canonical order.
#[derive(Clone, Debug)]
pub struct OhcpProgram {
    pub lp: LinearProgram<Rational>,
    pub p: usize,
    pub p_simplices: Vec<Simplex>,
    pub q_simplices: Vec<Simplex>,
    pub input: RatChain,
    boundary: IntegerMatrix,
}

pub fn formulate(instance: &OhcpInstance) -> OhcpProgram {
    let d = boundary_matrix_unchecked(&instance.complex, instance.p + 1);
    let (np, nq) = (d.rows(), d.cols());
    let mut a = Matrix::zeros(np, 2 * np + 2 * nq);
    for i in 0..np {
        a.set(i, i, Rational::one());
        a.set(i, np + i, -Rational::one());
        for j in 0..nq {
            let v = d.get(i, j);
            if v != 0 {
                a.set(i, 2 * np + j, Rational::from_integer((-v).into()));
                a.set(i, 2 * np + nq + j, Rational::from_integer(v.into()));
            }
        }
    }
    let input = instance.chain.map(|v| Rational::from_integer(v.clone()));
    let b = input.to_dense(&d.row_simplices);
    let mut c: Vec<Rational> = d
        .row_simplices
        .iter()
        .map(|s| instance.weights[s].clone())
        .collect();
    c.extend_from_within(..);
    c.extend((0..2 * nq).map(|_| Rational::zero()));
    OhcpProgram {
        lp: LinearProgram::new(a, b, c),
        p: instance.p,
        p_simplices: d.row_simplices.clone(),
        q_simplices: d.col_simplices.clone(),
        input,
        boundary: d,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LpSolution {
    pub status: LpStatus,
    /// Optimal (or best incumbent) chain `x`.
    pub chain: Option<RatChain>,
    pub objective: Option<Rational>,
    /// `y` with `x = c + ∂y`.
    pub certificate: Option<RatChain>,
    /// Simplex pivots (LP) or relaxations solved (ILP).
    pub work: u64,
    /// `x = c + ∂y` re-checked exactly after the solve.
    pub certified: bool,
}

impl LpSolution {
    /// True if every coefficient of `x` is an integer.
    pub fn is_integral(&self) -> bool {
        self.chain
            .as_ref()
            .is_some_and(|x| x.terms().all(|(_, v)| v.is_integer()))
    }

    /// True if every coefficient of `x` is a multiple of 1/2.
    pub fn is_half_integral(&self) -> bool {
        let two = Rational::from_integer(2.into());
        self.chain
            .as_ref()
            .is_some_and(|x| x.terms().all(|(_, v)| (v * &two).is_integer()))
    }

    pub fn integral_chain(&self) -> Option<IntChain> {
        let x = self.chain.as_ref()?;
        if !self.is_integral() {
            return None;
        }
        Some(x.map(|v| v.to_integer()))
    }
}

impl OhcpProgram {
    fn decode(&self, v: &[Rational]) -> (RatChain, RatChain) {
        let (np, nq) = (self.p_simplices.len(), self.q_simplices.len());
        let x: Vec<Rational> = (0..np).map(|i| &v[i] - &v[np + i]).collect();
        let y: Vec<Rational> = (0..nq)
            .map(|j| &v[2 * np + j] - &v[2 * np + nq + j])
            .collect();
        (
            Chain::from_dense(self.p, &self.p_simplices, &x),
            Chain::from_dense(self.p + 1, &self.q_simplices, &y),
        )
    }

    /// Checks `x = c + ∂y` exactly.
    pub fn certifies(&self, x: &RatChain, y: &RatChain) -> bool {
        let dy = self
            .boundary
            .entries
            .map(|&v| Rational::from_integer(v.into()))
            .mul_vec(&y.to_dense(&self.q_simplices));
        let c = self.input.to_dense(&self.p_simplices);
        let lhs = x.to_dense(&self.p_simplices);
        lhs.iter()
            .zip(c.iter().zip(&dy))
            .all(|(x, (c, d))| *x == c + d)
    }

    fn solution(&self, status: LpStatus, values: Option<&[Rational]>, work: u64) -> LpSolution {
        match values {
            Some(v) => {
                let (x, y) = self.decode(v);
                let certified = self.certifies(&x, &y);
                let objective = Some(self.lp.value(v));
                LpSolution {
                    status,
                    chain: Some(x),
                    objective,
                    certificate: Some(y),
                    work,
                    certified,
                }
            }
            None => LpSolution {
                status,
                chain: None,
                objective: None,
                certificate: None,
                work,
                certified: false,
            },
        }
    }
}

/// Exact LP relaxation by the simplex method (Bland's rule).
pub fn solve_lp_exact(program: &OhcpProgram, pivot_budget: u64) -> LpSolution {
    let r = lp::solve(&program.lp, pivot_budget);
    let values = (r.status == LpStatus::Optimal).then_some(&r.x[..]);
    program.solution(r.status, values, r.pivots)
}

/// Integral optimum by branch and bound on the most fractional variable.
pub fn solve_ilp(program: &OhcpProgram, node_budget: u64) -> LpSolution {
    let r = lp::solve_integer(&program.lp, node_budget);
    program.solution(r.status, r.x.as_deref(), r.nodes)
}

/// Coefficient ring for [`verify_homologous`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoefficientRing {
    Integer,
    Rational,
}

/// A `(p+1)`-chain `y` with `∂y = x − c`, or `None` if `x` and `c` are not
/// homologous over the ring.
pub fn verify_homologous(
    complex: &SimplicialComplex,
    p: usize,
    c: &RatChain,
    x: &RatChain,
    ring: CoefficientRing,
) -> Result<Option<RatChain>> {
    if c.dim() != p || x.dim() != p {
        return invalid(format!(
            "chains of dimension {} and {}, expected {p}",
            c.dim(),
            x.dim()
        ));
    }
    c.check_supported(complex)?;
    x.check_supported(complex)?;
    let d = boundary_matrix_unchecked(complex, p + 1);
    let diff = x.sub(c)?.to_dense(&d.row_simplices);
    let y = match ring {
        CoefficientRing::Integer => {
            if diff.iter().any(|v| !v.is_integer()) {
                return invalid("integer mode needs integral chains");
            }
            let rhs: Vec<Integer> = diff.iter().map(|v| v.to_integer()).collect();
            let snf = smith_normal_form(&d.to_scalar::<Integer>());
            snf.solve(&rhs).map(|y| {
                y.into_iter()
                    .map(Rational::from_integer)
                    .collect::<Vec<_>>()
            })
        }
        CoefficientRing::Rational => {
            let a = d.entries.map(|&v| Rational::from_integer(v.into()));
            solve_linear(&a, &diff)
        }
    };
    Ok(y.map(|y| Chain::from_dense(p + 1, &d.col_simplices, &y)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn circle() -> SimplicialComplex {
        SimplicialComplex::from_maximal([[1, 2], [2, 3], [1, 3]]).unwrap()
    }

    #[test]
    fn zero_chain_has_zero_optimum() {
        let inst = OhcpInstance::new(fixtures::mobius(5).unwrap(), 1, Chain::zero(1)).unwrap();
        let prog = formulate(&inst);
        let lp = solve_lp_exact(&prog, DEFAULT_LP_BUDGET);
        assert_eq!(lp.objective, Some(q(0, 1)));
        assert!(lp.chain.unwrap().is_zero());
        assert_eq!(
            solve_ilp(&prog, DEFAULT_ILP_BUDGET).objective,
            Some(q(0, 1))
        );
    }

    #[test]
    fn boundary_of_triangle_is_null_homologous() {
        let k = SimplicialComplex::from_maximal([[1, 2, 3]]).unwrap();
        let t = Simplex::new([1, 2, 3]).unwrap();
        let c = Chain::from_terms(2, [(t, Integer::from(1))])
            .unwrap()
            .boundary();
        let inst = OhcpInstance::new(k, 1, c).unwrap();
        let lp = solve_lp_exact(&formulate(&inst), DEFAULT_LP_BUDGET);
        assert_eq!(lp.status, LpStatus::Optimal);
        assert_eq!(lp.objective, Some(q(0, 1)));
    }

    #[test]
    fn already_optimal_chain_keeps_its_weight() {
        // A single heavy-free edge in a path: nothing to trade it for.
        let k = SimplicialComplex::from_maximal([[1, 2], [2, 3]]).unwrap();
        let c = Chain::from_terms(1, [(Simplex::edge(1, 2).unwrap(), Integer::from(-3))]).unwrap();
        let inst = OhcpInstance::new(k, 1, c).unwrap();
        let lp = solve_lp_exact(&formulate(&inst), DEFAULT_LP_BUDGET);
        assert_eq!(lp.objective, Some(q(3, 1)));
    }

    #[test]
    fn rejects_bad_instances() {
        let k = circle();
        let mut w: BTreeMap<Simplex, Rational> = k.edges().map(|e| (e.clone(), q(1, 1))).collect();
        w.insert(Simplex::edge(1, 2).unwrap(), q(-1, 1));
        assert!(OhcpInstance::with_weights(k.clone(), 1, Chain::zero(1), w).is_err());
        assert!(OhcpInstance::new(k, 1, Chain::zero(0)).is_err());
    }

    #[test]
    fn fig2_lp_is_half_integral() {
        let inst = OhcpInstance::new(fixtures::fig2_k(), 1, fixtures::fig2_chain()).unwrap();
        let prog = formulate(&inst);
        let lp = solve_lp_exact(&prog, DEFAULT_LP_BUDGET);
        assert_eq!(lp.status, LpStatus::Optimal);
        assert_eq!(lp.objective, Some(q(17, 40)));
        assert!(lp.is_half_integral() && !lp.is_integral());
        let x = lp.chain.clone().unwrap();
        assert_eq!(x.len(), 15);
        assert!(x.terms().all(|(_, v)| v.abs() == q(1, 2)));
        assert!(lp.certified && prog.certifies(&x, lp.certificate.as_ref().unwrap()));
        let y = lp.certificate.unwrap();
        assert!(y.terms().all(|(_, v)| v.abs() == q(1, 2)));
        assert_eq!(y.len(), 15);
        assert_eq!(y.coefficient(&Simplex::new([1, 2, 4]).unwrap()), q(0, 1));
    }

    #[test]
    fn fig2_ilp_and_contraction() {
        let inst = OhcpInstance::new(fixtures::fig2_k(), 1, fixtures::fig2_chain()).unwrap();
        let ilp = solve_ilp(&formulate(&inst), DEFAULT_ILP_BUDGET);
        assert_eq!(ilp.status, LpStatus::Optimal);
        assert_eq!(ilp.objective, Some(q(9, 20)));
        // a=1 ... n=14
        let expected: Vec<Simplex> = [
            (1, 11),
            (11, 13),
            (1, 13),
            (3, 5),
            (3, 14),
            (12, 14),
            (10, 12),
            (4, 10),
            (4, 6),
        ]
        .iter()
        .map(|&(u, v)| Simplex::edge(u, v).unwrap())
        .collect();
        let x = ilp.integral_chain().unwrap();
        let mut support: Vec<Simplex> = x.support().cloned().collect();
        support.sort();
        let mut want = expected.clone();
        want.sort();
        assert_eq!(support, want);

        let (pushed, contraction) = inst
            .push_forward(&Simplex::edge(1, 2).unwrap(), 1, WeightMerge::KeepSurvivor)
            .unwrap();
        assert!(!contraction.weight_conflicts.is_empty());
        let prog = formulate(&pushed);
        let lp = solve_lp_exact(&prog, DEFAULT_LP_BUDGET);
        assert_eq!(lp.objective, Some(q(9, 20)));
        assert!(lp.is_integral());
        let x2 = lp.integral_chain().unwrap();
        let mut support: Vec<Simplex> = x2.support().cloned().collect();
        support.sort();
        assert_eq!(support, want);
        let y = lp.certificate.unwrap();
        assert!(y.terms().all(|(_, v)| v.abs() == q(1, 1)));
    }

    #[test]
    fn homologous_checks() {
        let k = circle();
        let e = |u, v| Simplex::edge(u, v).unwrap();
        let c = Chain::from_terms(1, [(e(1, 2), q(1, 1))]).unwrap();
        for ring in [CoefficientRing::Integer, CoefficientRing::Rational] {
            let y = verify_homologous(&k, 1, &c, &c, ring).unwrap().unwrap();
            assert!(y.is_zero());
            let cycle = Chain::from_terms(
                1,
                [(e(1, 2), q(1, 1)), (e(2, 3), q(1, 1)), (e(1, 3), q(-1, 1))],
            )
            .unwrap();
            assert_eq!(
                verify_homologous(&k, 1, &Chain::zero(1), &cycle, ring).unwrap(),
                None
            );
        }
        assert!(verify_homologous(&k, 0, &c, &c, CoefficientRing::Integer).is_err());
        let half = c.scale(&q(1, 2));
        assert!(verify_homologous(&k, 1, &c, &half, CoefficientRing::Integer).is_err());
    }
}
