//! Iterated cloning graphs (ILT, ILAT, ILM, IIM) and exact solvers for zero
//! forcing, failed zero forcing, forts and graph burning.

mod bitset;
pub mod error;
pub mod forcing;
pub mod graph;
pub mod graph6;
pub mod harness;
pub mod iterated;
pub mod solvers;

pub use bitset::{Ones, VertexSet};
pub use error::{Error, Result};
pub use forcing::{
    apply_schedule, closure, is_fort, is_zero_forcing_set, loop_closure, replay_schedule,
    Chronology, Force, ReplayError,
};
pub use graph::Graph;
pub use harness::{Certificate, Family, Instance, TheoremReport, Verdict};
pub use graph6::{emit_graph6, parse_graph6, parse_graph6_lines};
pub use iterated::{
    enumerate_plans, level_range, lineage_index, CloningPlan, IteratedGraph, Lineage, Mode,
    PlanSpec, PlanStream, VertexKind,
};
pub use solvers::{
    burning_number, failed_zero_forcing_number, min_fort, superfluous_burning_number,
    zero_forcing_number, zf_lower_bounds, BoundsReport, Budget, Parameter, SolverReport,
};
