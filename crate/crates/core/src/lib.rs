//! Oriented matroid programming: program digraphs, monotone paths built from
//! single-element extensions, and Holt-Klee verification with path and cut
//! certificates.

pub mod catalog;
pub mod chirotope;
pub mod digraph;
pub mod error;
pub mod exact;
pub mod extension;
pub mod holt_klee;
pub mod io;
pub mod dot;
pub mod limits;
pub mod om;
pub mod pomcp;
pub mod program;
pub mod sign;
pub mod tracer;

pub use chirotope::Chirotope;
pub use digraph::Digraph;
pub use error::{OmError, Result};
pub use exact::{Rational, RationalMatrix};
pub use extension::{LexRule, Localization};
pub use om::{AxiomReport, OrientedMatroid};
pub use program::{Face, OmProgram, ProgramDigraph};
pub use sign::{ElementSet, GroundSet, Sign, SignVector};
