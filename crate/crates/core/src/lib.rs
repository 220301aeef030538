//! Acyclic edge coloring toolkit.
//!
//! * [`graph`]: simple undirected graphs and the degree vocabulary.
//! * [`coloring`]: edge colorings, bichromatic components and swaps.
//! * [`solver`]: exact acyclic chromatic index and criticality.
//! * [`mad`]: exact maximum average degree via max-flow.
//! * [`colorer`]: incremental colorer with recoloring moves.
//! * [`lab`]: structural predicates for critical graphs and discharging.
//! * [`exec`]: parallel or sequential execution of batch work.

pub mod colorer;
pub mod coloring;
pub mod exec;
mod flow;
pub mod generate;
pub mod graph;
pub mod io;
pub mod lab;
pub mod mad;
pub mod rational;
pub mod solver;

pub use coloring::{Color, EdgeColoring};
pub use exec::Execution;
pub use graph::{EdgeId, Girth, Graph, VertexId};
pub use rational::Rational;
