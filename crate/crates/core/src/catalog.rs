//! Built-in examples: digraphs transcribed from drawings, realizable
//! programs, and complementarity instances.

use serde::Serialize;

use crate::digraph::Digraph;
use crate::error::{OmError, Result};
use crate::exact::{rational, ratio, Rational, RationalMatrix};
use crate::pomcp::PomcpInstance;
use crate::program::OmProgram;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EntryKind {
    DigraphOnly,
    Program,
    Pomcp,
}

#[derive(Debug, Clone)]
pub enum Payload {
    Digraph(Digraph),
    Program(OmProgram),
    Pomcp(PomcpInstance),
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub kind: EntryKind,
    pub provenance: &'static str,
    pub payload: Payload,
}

impl CatalogEntry {
    pub fn digraph(&self) -> Option<&Digraph> {
        match &self.payload {
            Payload::Digraph(d) => Some(d),
            _ => None,
        }
    }

    /// The program, or an error naming the entry when it is not a program.
    pub fn program(&self) -> Result<&OmProgram> {
        match &self.payload {
            Payload::Program(p) => Ok(p),
            Payload::Digraph(_) => Err(OmError::DigraphOnly(self.name.to_string())),
            Payload::Pomcp(_) => Err(OmError::InvalidInput(format!("{} is a complementarity instance", self.name))),
        }
    }

    pub fn pomcp(&self) -> Result<&PomcpInstance> {
        match &self.payload {
            Payload::Pomcp(p) => Ok(p),
            Payload::Digraph(_) => Err(OmError::DigraphOnly(self.name.to_string())),
            Payload::Program(_) => Err(OmError::InvalidInput(format!("{} is a program", self.name))),
        }
    }
}

pub const NAMES: [&str; 8] = [
    "fig1-prism",
    "fig1-cyclic",
    "fig1-cube",
    "fig2-cycle",
    "cube3-program",
    "prism3-program",
    "pomcp-identity-2",
    "pomcp-pd-3",
];

pub fn names() -> &'static [&'static str] {
    &NAMES
}

pub fn get(name: &str) -> Result<CatalogEntry> {
    let (kind, provenance, payload) = match name {
        "fig1-prism" => (
            EntryKind::DigraphOnly,
            "triangular prism orientation with only two independent monotone paths (left drawing of the first figure)",
            Payload::Digraph(fig1_prism()),
        ),
        "fig1-cyclic" => (
            EntryKind::DigraphOnly,
            "orientation of the cyclic 3-polytope with six vertices (middle drawing of the first figure)",
            Payload::Digraph(fig1_cyclic()),
        ),
        "fig1-cube" => (
            EntryKind::DigraphOnly,
            "3-cube orientation with only two independent monotone paths (right drawing of the first figure)",
            Payload::Digraph(fig1_cube()),
        ),
        "fig2-cycle" => (
            EntryKind::DigraphOnly,
            "rank-4 program digraph on 8 elements with a monotone cycle through all internal nodes (second figure)",
            Payload::Digraph(fig2_cycle()),
        ),
        "cube3-program" => (
            EntryKind::Program,
            "max y1+y2+y3 subject to y_i + s_i = 1, y, s >= 0",
            Payload::Program(cube3_program()),
        ),
        "prism3-program" => (
            EntryKind::Program,
            "max y1+2y2+4y4 over a triangle times an interval in standard form",
            Payload::Program(prism3_program()),
        ),
        "pomcp-identity-2" => (
            EntryKind::Pomcp,
            "identity P-matrix of order 2 with the default lexicographic extension",
            Payload::Pomcp(PomcpInstance::from_matrix(&RationalMatrix::identity(2), None)?),
        ),
        "pomcp-pd-3" => (
            EntryKind::Pomcp,
            "positive definite matrix of order 3 with the default lexicographic extension",
            Payload::Pomcp(PomcpInstance::from_matrix(&pd3_matrix(), None)?),
        ),
        other => {
            return Err(OmError::InvalidInput(format!(
                "unknown catalog entry {other:?}; available: {}",
                NAMES.join(", ")
            )))
        }
    };
    let name = NAMES.iter().copied().find(|n| *n == name).expect("matched above");
    Ok(CatalogEntry { name, kind, provenance, payload })
}

fn build(name: &str, labels: &[&str], arcs: &[(&str, &str)], source: &str, sink: &str, dim: usize) -> Digraph {
    let mut d = Digraph::new(name, labels.iter().copied()).expect("catalog labels are valid");
    for &(u, v) in arcs {
        d.add_arc_labels(u, v).expect("catalog arcs are valid");
    }
    let (s, t) = (d.index_of(source).unwrap(), d.index_of(sink).unwrap());
    d.set_source_sink(s, t).expect("catalog source and sink are valid");
    d.set_dim(Some(dim));
    d
}

/// Nodes in reading order; `A` and `B` mark the two nodes covering all monotone paths.
pub fn fig1_prism() -> Digraph {
    build(
        "fig1-prism",
        &["n1", "A", "n3", "B", "n5", "n6"],
        &[
            ("A", "n5"),
            ("n6", "n3"),
            ("B", "n5"),
            ("B", "n6"),
            ("n1", "A"),
            ("n1", "n3"),
            ("n3", "A"),
            ("n1", "B"),
            ("n6", "n5"),
        ],
        "n1",
        "n5",
        3,
    )
}

/// The quadrilateral facet of the prism drawing through source and sink.
pub fn fig1_prism_facet() -> [&'static str; 4] {
    ["n1", "A", "B", "n5"]
}

pub fn fig1_cyclic() -> Digraph {
    build(
        "fig1-cyclic",
        &["A", "n2", "n3", "n4", "n5", "B"],
        &[
            ("A", "B"),
            ("n4", "n2"),
            ("n4", "A"),
            ("n4", "B"),
            ("n3", "n2"),
            ("n3", "n5"),
            ("n2", "B"),
            ("A", "n2"),
            ("A", "n3"),
            ("A", "n5"),
            ("n3", "B"),
            ("B", "n5"),
        ],
        "n4",
        "n5",
        3,
    )
}

pub fn fig1_cube() -> Digraph {
    build(
        "fig1-cube",
        &["n1", "n2", "n3", "B", "A", "n6", "n7", "n8"],
        &[
            ("n1", "n2"),
            ("n1", "A"),
            ("n1", "n3"),
            ("A", "n6"),
            ("n3", "B"),
            ("n2", "B"),
            ("A", "n7"),
            ("n7", "n3"),
            ("n6", "n2"),
            ("n7", "n8"),
            ("n6", "n8"),
            ("B", "n8"),
        ],
        "n1",
        "n8",
        3,
    )
}

/// Source `v`, sink `w`; the internal nodes carry a directed 6-cycle.
pub fn fig2_cycle() -> Digraph {
    build(
        "fig2-cycle",
        &["v", "n2", "n3", "n4", "n5", "n6", "n7", "w"],
        &[
            ("v", "n2"),
            ("v", "n5"),
            ("v", "n3"),
            ("n6", "n5"),
            ("n3", "n4"),
            ("n4", "n2"),
            ("n5", "n7"),
            ("n7", "n3"),
            ("n2", "n6"),
            ("n7", "w"),
            ("n6", "w"),
            ("n4", "w"),
        ],
        "v",
        "w",
        3,
    )
}

fn ints(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| rational(x)).collect()
}

fn named_labels(names: &[&str]) -> Option<Vec<String>> {
    Some(names.iter().map(|s| s.to_string()).collect())
}

/// The unit 3-cube: `y_i + s_i = 1`, maximize the coordinate sum.
pub fn cube3_program() -> OmProgram {
    let a = RationalMatrix::from_i64(&[&[1, 0, 0, 1, 0, 0], &[0, 1, 0, 0, 1, 0], &[0, 0, 1, 0, 0, 1]]);
    let labels = named_labels(&["y1", "y2", "y3", "s1", "s2", "s3", "f", "g"]);
    OmProgram::from_lp(&a, &ints(&[1, 1, 1]), &ints(&[1, 1, 1, 0, 0, 0]), ratio(1, 2), labels)
        .expect("cube program is well formed")
        .with_name("cube3-program")
}

/// Triangle `y1+y2+y3 = 1` times interval `y4+y5 = 1`.
pub fn prism3_program() -> OmProgram {
    let a = RationalMatrix::from_i64(&[&[1, 1, 1, 0, 0], &[0, 0, 0, 1, 1]]);
    OmProgram::from_lp(&a, &ints(&[1, 1]), &ints(&[1, 2, 0, 4, 0]), ratio(1, 2), None)
        .expect("prism program is well formed")
        .with_name("prism3-program")
}

pub fn pd3_matrix() -> RationalMatrix {
    RationalMatrix::from_i64(&[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 2]])
}
