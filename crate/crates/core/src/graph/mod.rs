//! Incidence and cycle graphs, chordality, and the Koszul obstruction.

pub mod bipartite;
pub mod chordal;
pub mod cycles;
pub mod koszul;

pub use bipartite::BipartiteGraph;
pub use chordal::{is_chordal_bipartite, ChordalMethod, ChordalVerdict};
pub use cycles::{
    admissible_cycles, binomial_to_cycle, cycle_family, cycle_graph, cycle_to_binomial, CycleError,
    CycleGraph, EvenCycle, RightVertex,
};
