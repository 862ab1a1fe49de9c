//! Text formats and JSON reports.
//!
//! `.scx`: one simplex per line as whitespace-separated vertex ids, with an
//! optional trailing `w <rational>`; `#` starts a comment line. Faces are
//! added automatically.
//!
//! `.chn`: lines `<coefficient> <vertex ids...>`, coefficients integer or
//! rational.
//!
//! Every rational in a report is the exact string `"num/den"`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::chain::Chain;
use crate::complex::{Simplex, SimplicialComplex, VertexId};
use crate::error::{Error, Result};
use crate::homology::{torsion_u64, HomologyGroup, SubcomplexPair, TorsionVerdict, TorsionWitness};
use crate::lp::LpStatus;
use crate::matrix::IntegerMatrix;
use crate::ohcp::LpSolution;
use crate::pipeline::{Action, ContractionLog, TopologyReport};
use crate::scalar::{parse_rational, ratio_string};
use crate::tu::{Circuit, TuReport, TuStrategy, TuVerdict, TuWitness};
use crate::{RatChain, Rational};

fn parse_error<T>(line: usize, message: impl Into<String>) -> Result<T> {
    Err(Error::Parse {
        line,
        message: message.into(),
    })
}

fn parse_vertices(line: usize, tokens: &[&str]) -> Result<Simplex> {
    let mut vs = Vec::with_capacity(tokens.len());
    for t in tokens {
        match t.parse::<VertexId>() {
            Ok(v) => vs.push(v),
            Err(_) => return parse_error(line, format!("bad vertex id {t:?}")),
        }
    }
    Simplex::new(vs).or_else(|e| parse_error(line, e.to_string()))
}

/// Parses a complex, taking the face closure.
pub fn parse_scx(text: &str) -> Result<SimplicialComplex> {
    let mut k = SimplicialComplex::new();
    let mut weights: Vec<(Simplex, Rational)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.trim();
        if body.is_empty() || body.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = body.split_whitespace().collect();
        let (verts, weight) = match tokens.iter().position(|t| *t == "w") {
            Some(pos) => {
                if pos + 2 != tokens.len() {
                    return parse_error(line, "expected a single rational after 'w'");
                }
                let Some(w) = parse_rational(tokens[pos + 1]) else {
                    return parse_error(line, format!("bad weight {:?}", tokens[pos + 1]));
                };
                if w < Rational::from_integer(0.into()) {
                    return Err(Error::InvalidArgument(format!(
                        "line {line}: negative weight {w}"
                    )));
                }
                (&tokens[..pos], Some(w))
            }
            None => (&tokens[..], None),
        };
        if verts.is_empty() {
            return parse_error(line, "no vertices");
        }
        let s = parse_vertices(line, verts)?;
        k.insert_closed(&s);
        if let Some(w) = weight {
            weights.push((s, w));
        }
    }
    for (s, w) in weights {
        k.set_weight(&s, w)?;
    }
    Ok(k)
}

/// Canonical text: maximal and weighted simplices in canonical order.
pub fn serialize_scx(k: &SimplicialComplex) -> String {
    let maximal: std::collections::BTreeSet<Simplex> = k.maximal_simplices().into_iter().collect();
    let mut out = String::new();
    for s in k.simplices() {
        let w = k.explicit_weight(s);
        if !maximal.contains(s) && w.is_none() {
            continue;
        }
        let vs: Vec<String> = s.vertices().iter().map(|v| v.to_string()).collect();
        out.push_str(&vs.join(" "));
        if let Some(w) = w {
            let _ = write!(out, " w {}", ratio_string(w));
        }
        out.push('\n');
    }
    out
}

/// Parses a chain; `p` fixes the dimension of an empty chain and is checked
/// against the lines otherwise.
pub fn parse_chn(text: &str, p: Option<usize>) -> Result<RatChain> {
    let mut terms: Vec<(Simplex, Rational)> = Vec::new();
    let mut dim = p;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.trim();
        if body.is_empty() || body.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = body.split_whitespace().collect();
        if tokens.len() < 2 {
            return parse_error(line, "expected '<coefficient> <vertex ids...>'");
        }
        let Some(coeff) = parse_rational(tokens[0]) else {
            return parse_error(line, format!("bad coefficient {:?}", tokens[0]));
        };
        let s = parse_vertices(line, &tokens[1..])?;
        match dim {
            Some(d) if d != s.dim() => {
                return parse_error(line, format!("{s} is not a {d}-simplex"))
            }
            _ => dim = Some(s.dim()),
        }
        terms.push((s, coeff));
    }
    let Some(dim) = dim else {
        return Err(Error::InvalidArgument(
            "empty chain needs an explicit dimension".into(),
        ));
    };
    Chain::from_terms(dim, terms)
}

pub fn serialize_chn(c: &RatChain) -> String {
    let mut out = String::new();
    for (s, v) in c.terms() {
        let coeff = if v.is_integer() {
            v.numer().to_string()
        } else {
            ratio_string(v)
        };
        let vs: Vec<String> = s.vertices().iter().map(|v| v.to_string()).collect();
        let _ = writeln!(out, "{coeff} {}", vs.join(" "));
    }
    out
}

pub fn rational_json(r: &Rational) -> Value {
    Value::String(ratio_string(r))
}

pub fn simplex_json(s: &Simplex) -> Value {
    json!(s.vertices())
}

pub fn homology_json(g: &HomologyGroup) -> Value {
    json!({ "p": g.p, "betti": g.betti, "torsion": torsion_u64(g) })
}

pub fn chain_json(c: &RatChain) -> Value {
    Value::Array(
        c.terms()
            .map(|(s, v)| json!({ "simplex": simplex_json(s), "coefficient": rational_json(v) }))
            .collect(),
    )
}

/// Circuit edges `{"q", "p", "w"}`, named by the matrix's row (`q`) and column (`p`) simplices.
pub fn circuit_json(m: &IntegerMatrix, c: &Circuit) -> Value {
    Value::Array(
        c.edges
            .iter()
            .map(|(&(r, col), &w)| json!({ "q": simplex_json(&m.row_simplices[r]), "p": simplex_json(&m.col_simplices[col]), "w": w }))
            .collect(),
    )
}

pub fn tu_witness_json(m: &IntegerMatrix, w: &TuWitness) -> Value {
    let names = |idx: &[usize], of: &[Simplex]| {
        Value::Array(idx.iter().map(|&i| simplex_json(&of[i])).collect())
    };
    match w {
        TuWitness::Entry { row, col, value } => json!({
            "kind": "entry",
            "row": simplex_json(&m.row_simplices[*row]),
            "col": simplex_json(&m.col_simplices[*col]),
            "value": value,
        }),
        TuWitness::Circuit(c) => json!({
            "kind": "circuit",
            "edges": circuit_json(m, c),
            "weight_sum": c.weight_sum(),
        }),
        TuWitness::Submatrix { rows, cols, det } => json!({
            "kind": "submatrix",
            "rows": names(rows, &m.row_simplices),
            "cols": names(cols, &m.col_simplices),
            "det": det,
        }),
    }
}

fn strategy_name(s: TuStrategy) -> &'static str {
    match s {
        TuStrategy::Circuit => "circuit",
        TuStrategy::Determinant => "determinant",
    }
}

/// `{"p", "strategy", "budget", "work", "unimodular": bool|null, "witness"}`.
pub fn tu_report_json(p: usize, m: &IntegerMatrix, r: &TuReport, budget: u64) -> Value {
    let witness = match &r.verdict {
        TuVerdict::NotUnimodular(w) => tu_witness_json(m, w),
        _ => Value::Null,
    };
    json!({
        "p": p,
        "strategy": strategy_name(r.strategy),
        "budget": budget,
        "work": r.work,
        "unimodular": r.decided(),
        "witness": witness,
    })
}

pub fn pair_json(pair: &SubcomplexPair) -> Value {
    json!({ "p": pair.p, "l": serialize_scx(&pair.l), "l0": serialize_scx(&pair.l0) })
}

/// `{"p", "torsion": bool|null, "explored", "witness"}`; TU witnesses are
/// labelled by `m`, the matrix `[∂_{p+1}]`.
pub fn torsion_verdict_json(p: usize, m: &IntegerMatrix, v: &TorsionVerdict) -> Value {
    let (explored, witness) = match v {
        TorsionVerdict::Inconclusive { explored } => (Some(*explored), Value::Null),
        TorsionVerdict::TorsionFree => (None, Value::Null),
        TorsionVerdict::Torsion(w) => match w.as_ref() {
            TorsionWitness::Pair { pair, group } => (
                None,
                json!({ "kind": "pair", "pair": pair_json(pair), "group": homology_json(group) }),
            ),
            TorsionWitness::Tu(w) => (None, tu_witness_json(m, w)),
        },
    };
    json!({ "p": p, "torsion": v.decided(), "explored": explored, "witness": witness })
}

pub fn status_name(s: LpStatus) -> &'static str {
    match s {
        LpStatus::Optimal => "optimal",
        LpStatus::Infeasible => "infeasible",
        LpStatus::Unbounded => "unbounded",
        LpStatus::BudgetExceeded => "budget_exceeded",
    }
}

/// `{"status", "objective": "num/den"|null, "chain", "certificate", ...}`.
pub fn lp_solution_json(s: &LpSolution) -> Value {
    json!({
        "status": status_name(s.status),
        "objective": s.objective.as_ref().map(rational_json),
        "chain": s.chain.as_ref().map(chain_json),
        "certificate": s.certificate.as_ref().map(chain_json),
        "integral": s.is_integral(),
        "certified": s.certified,
        "work": s.work,
    })
}

pub fn conditions_json(c: &BTreeMap<usize, bool>) -> Value {
    Value::Object(
        c.iter()
            .map(|(p, v)| (p.to_string(), Value::Bool(*v)))
            .collect(),
    )
}

pub fn scan_json(
    scan: &BTreeMap<Simplex, BTreeMap<usize, bool>>,
    full: &BTreeMap<Simplex, bool>,
) -> Value {
    Value::Array(
        scan.iter()
            .map(|(e, c)| json!({ "edge": simplex_json(e), "p_link": conditions_json(c), "link_condition": full.get(e) }))
            .collect(),
    )
}

pub fn log_json(log: &ContractionLog) -> Value {
    Value::Array(
        log.records
            .iter()
            .map(|r| {
                json!({
                    "edge": simplex_json(&r.edge),
                    "conditions": conditions_json(&r.conditions),
                    "action": match r.action { Action::Contracted => "contracted", Action::Skipped => "skipped" },
                    "snapshot": r.snapshot.as_ref().map(|s| s.iter().map(homology_json).collect::<Vec<_>>()),
                })
            })
            .collect(),
    )
}

pub fn topology_report_json(r: &TopologyReport) -> Value {
    json!({
        "vertices": { "before": r.vertices.0, "after": r.vertices.1 },
        "simplices": { "before": r.simplices.0, "after": r.simplices.1 },
        "dims": r.dims.iter().map(|d| json!({
            "p": d.p,
            "before": homology_json(&d.before),
            "after": homology_json(&d.after),
            "betti_delta": d.betti_delta,
            "torsion_changed": d.torsion_changed,
            "tu_before": d.tu_before,
            "tu_after": d.tu_after,
        })).collect::<Vec<_>>(),
    })
}
