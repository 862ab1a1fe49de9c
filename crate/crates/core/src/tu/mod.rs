//! Total unimodularity of boundary matrices through their bipartite graphs.

pub mod duals;
pub mod graph;
pub mod unimodular;

pub use duals::{
    classify_duals, CircuitTransport, ConstructTrace, DualClassification, EdgeTag, VertexTag,
};
pub use graph::{
    build_p_graph, chordless_cycles, find_chordless_b_odd_circuit, BParity, Circuit,
    IncidenceGraph, LabelledEdge, SearchOutcome, SignedBipartiteGraph,
};
pub use unimodular::{
    determinant_tu, is_totally_unimodular, TuReport, TuStrategy, TuVerdict, TuWitness,
    DEFAULT_MAX_ORDER,
};
