//! Oriented matroid programs: validity, the face poset, the graph of
//! rank-`(r-1)` faces and its orientation by the objective.

use std::collections::HashMap;
use std::sync::OnceLock;

use serde::Serialize;

use crate::digraph::Digraph;
use crate::error::{OmError, Result};
use crate::exact::{Rational, RationalMatrix};
use crate::om::OrientedMatroid;
use crate::sign::{ElementSet, GroundSet, Sign, SignVector};

/// An oriented matroid together with an objective element `f` and a
/// right-hand-side element `g`. The remaining elements form the constraint set.
#[derive(Debug, Clone)]
pub struct OmProgram {
    name: String,
    om: OrientedMatroid,
    f: usize,
    g: usize,
    contract_g: OnceLock<OrientedMatroid>,
    delete_f: OnceLock<OrientedMatroid>,
    contract_fg: OnceLock<OrientedMatroid>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProgramReport {
    pub bounded: bool,
    pub acyclic: bool,
    pub f_nondegenerate: bool,
    pub details: Vec<String>,
}

impl ProgramReport {
    pub fn is_valid(&self) -> bool {
        self.bounded && self.acyclic && self.f_nondegenerate
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Face {
    pub elements: ElementSet,
    pub rank: usize,
}

/// The oriented graph of a program. Node `i` of `digraph` is the face `nodes[i]`.
#[derive(Debug, Clone)]
pub struct ProgramDigraph {
    pub digraph: Digraph,
    /// Element sets (indices into the program's ground set).
    pub nodes: Vec<ElementSet>,
    /// Cocircuit of the full oriented matroid for each node, positive on `g`.
    pub node_cocircuits: Vec<SignVector>,
    /// For each arc `(u, v)`: the cocircuit vanishing on `g` and on the common
    /// ridge, negative on `u \ v` and positive on `v \ u`.
    pub arc_cocircuits: Vec<SignVector>,
    /// Number of (edge, base) pairs on which the fundamental-circuit rule was checked.
    pub bases_checked: usize,
}

impl ProgramDigraph {
    pub fn node_of(&self, set: ElementSet) -> Option<usize> {
        self.nodes.iter().position(|&v| v == set)
    }

    pub fn source(&self) -> usize {
        self.digraph.source().expect("program digraphs carry a source")
    }

    pub fn sink(&self) -> usize {
        self.digraph.sink().expect("program digraphs carry a sink")
    }

    /// Nodes whose element set contains `face`.
    pub fn nodes_containing(&self, face: ElementSet) -> Vec<usize> {
        (0..self.nodes.len()).filter(|&i| face.is_subset(self.nodes[i])).collect()
    }
}

/// Undirected graph of the rank-`(r-1)` faces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmGraph {
    pub nodes: Vec<ElementSet>,
    pub edges: Vec<(usize, usize)>,
}

impl OmProgram {
    pub fn new(om: OrientedMatroid, f: &str, g: &str) -> Result<Self> {
        let fi = om.index_of(f)?;
        let gi = om.index_of(g)?;
        if fi == gi {
            return Err(OmError::InvalidProgram("objective and right-hand side must differ".into()));
        }
        Ok(OmProgram {
            name: "program".into(),
            om,
            f: fi,
            g: gi,
            contract_g: OnceLock::new(),
            delete_f: OnceLock::new(),
            contract_fg: OnceLock::new(),
        })
    }

    /// The program of `max c·y + β` over `{y ≥ 0 : A y = b}`, realized by the
    /// kernel of `[A 0 -b; -c 1 -β]`. Labels are `y1..yn`, `f`, `g` unless given.
    pub fn from_lp(
        a: &RationalMatrix,
        b: &[Rational],
        c: &[Rational],
        beta: Rational,
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        let (m, n) = (a.nrows(), a.ncols());
        if b.len() != m || c.len() != n {
            return Err(OmError::InvalidInput(format!(
                "LP shape mismatch: A is {m}x{n}, b has {}, c has {}",
                b.len(),
                c.len()
            )));
        }
        let mut rows = Vec::with_capacity(m + 1);
        for i in 0..m {
            let mut row = a.row(i).to_vec();
            row.push(Rational::from_integer(0.into()));
            row.push(-b[i].clone());
            rows.push(row);
        }
        let mut last: Vec<Rational> = c.iter().map(|x| -x.clone()).collect();
        last.push(Rational::from_integer(1.into()));
        last.push(-beta);
        rows.push(last);
        let t = RationalMatrix::from_rows(rows)?;
        if t.rank() != m + 1 {
            return Err(OmError::InvalidProgram("constraint rows are linearly dependent".into()));
        }
        let labels = labels.unwrap_or_else(|| {
            (1..=n).map(|i| format!("y{i}")).chain(["f".to_string(), "g".to_string()]).collect()
        });
        if labels.len() != n + 2 {
            return Err(OmError::InvalidInput(format!("{} labels for {} elements", labels.len(), n + 2)));
        }
        let (fl, gl) = (labels[n].clone(), labels[n + 1].clone());
        let om = OrientedMatroid::from_matrix(GroundSet::new(labels)?, t.nullspace())?;
        OmProgram::new(om, &fl, &gl)
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn om(&self) -> &OrientedMatroid {
        &self.om
    }

    pub fn f(&self) -> usize {
        self.f
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn f_label(&self) -> &str {
        self.om.label(self.f)
    }

    pub fn g_label(&self) -> &str {
        self.om.label(self.g)
    }

    pub fn rank(&self) -> usize {
        self.om.rank()
    }

    /// The constraint elements (everything but `f` and `g`).
    pub fn constraints(&self) -> ElementSet {
        ElementSet::full(self.om.len()).without(self.f).without(self.g)
    }

    pub fn format_set(&self, s: ElementSet) -> String {
        self.om.ground().format_set(s)
    }

    fn cached(
        cell: &OnceLock<OrientedMatroid>,
        build: impl FnOnce() -> Result<OrientedMatroid>,
    ) -> Result<&OrientedMatroid> {
        if let Some(m) = cell.get() {
            return Ok(m);
        }
        let m = build()?;
        Ok(cell.get_or_init(|| m))
    }

    /// `M / g`.
    pub fn contract_g(&self) -> Result<&OrientedMatroid> {
        Self::cached(&self.contract_g, || self.om.contract(self.g))
    }

    /// `M \ f`.
    pub fn delete_f(&self) -> Result<&OrientedMatroid> {
        Self::cached(&self.delete_f, || self.om.delete(self.f))
    }

    /// `M / {f, g}`.
    pub fn contract_fg(&self) -> Result<&OrientedMatroid> {
        Self::cached(&self.contract_fg, || {
            let mg = self.contract_g()?;
            mg.contract(mg.index_of(self.f_label())?)
        })
    }

    /// The same program with the objective negated.
    pub fn reversed(&self) -> Result<OmProgram> {
        let om = self.om.reorient(self.f)?;
        Ok(OmProgram::new(om, self.f_label(), self.g_label())?.with_name(&self.name))
    }

    pub fn validate(&self) -> Result<ProgramReport> {
        let mf = self.delete_f()?;
        let g = self.g - usize::from(self.g > self.f);
        let mut details = Vec::new();
        let nonneg: Vec<SignVector> = mf.signed_cocircuits().filter(|y| y.is_nonnegative()).collect();
        let mut bounded = true;
        for y in &nonneg {
            if y.get(g) == Sign::Zero {
                bounded = false;
                details.push(format!("nonnegative cocircuit {y} of the deletion avoids {}", self.g_label()));
                break;
            }
        }
        let mut acyclic = true;
        for e in self.constraints().iter() {
            let ei = e - usize::from(e > self.f);
            if !nonneg.iter().any(|y| y.get(ei) == Sign::Plus) {
                acyclic = false;
                details.push(format!("no nonnegative cocircuit is positive on {}", self.om.label(e)));
                break;
            }
        }
        let r = self.rank();
        let mut f_nondegenerate = true;
        for x in self.om.circuits()? {
            if x.get(self.f) != Sign::Zero && x.support().len() != r + 1 {
                f_nondegenerate = false;
                details.push(format!(
                    "circuit {} through {} has {} elements, expected {}",
                    self.format_set(x.support()),
                    self.f_label(),
                    x.support().len(),
                    r + 1
                ));
                break;
            }
        }
        Ok(ProgramReport { bounded, acyclic, f_nondegenerate, details })
    }

    fn require_valid(&self, allow_degenerate: bool) -> Result<()> {
        let report = self.validate()?;
        let ok = report.bounded && report.acyclic && (allow_degenerate || report.f_nondegenerate);
        if ok {
            return Ok(());
        }
        let detail = report.details.join("; ");
        if report.bounded && report.acyclic {
            Err(OmError::Degenerate(detail))
        } else {
            Err(OmError::InvalidProgram(detail))
        }
    }

    fn faces_unchecked(&self) -> Result<Vec<Face>> {
        let mf = self.delete_f()?;
        let n_set = self.constraints();
        let mut sets: Vec<ElementSet> = mf
            .covector_span()?
            .iter()
            .filter(|y| y.is_nonnegative())
            .map(|y| n_set.difference(lift_set(y.support(), self.f)))
            .collect();
        sets.sort();
        sets.dedup();

        let mfg = mf.delete(self.g - usize::from(self.g > self.f))?;
        let mut other: Vec<ElementSet> = mfg
            .covector_span()?
            .iter()
            .filter(|y| y.is_nonnegative())
            .map(|y| {
                let s = lift_set(lift_set(y.support(), self.g.min(self.f)), self.g.max(self.f));
                n_set.difference(s)
            })
            .collect();
        other.sort();
        other.dedup();
        if sets != other {
            return Err(OmError::Internal(
                "face posets computed with and without the right-hand side differ".into(),
            ));
        }
        let mut faces: Vec<Face> =
            sets.into_iter().map(|s| Face { elements: s, rank: self.om.rank_of(s) }).collect();
        faces.sort_by(|a, b| a.rank.cmp(&b.rank).then_with(|| a.elements.to_vec().cmp(&b.elements.to_vec())));
        Ok(faces)
    }

    /// All faces (zero sets on the constraints of nonnegative covectors of
    /// `M \ f`), sorted by rank and then by element list.
    pub fn faces(&self) -> Result<Vec<Face>> {
        self.require_valid(true)?;
        self.faces_unchecked()
    }

    pub fn em_graph(&self) -> Result<EmGraph> {
        self.require_valid(true)?;
        self.em_graph_unchecked()
    }

    fn em_graph_unchecked(&self) -> Result<EmGraph> {
        let r = self.rank();
        let nodes: Vec<ElementSet> =
            self.faces_unchecked()?.into_iter().filter(|f| f.rank + 1 == r).map(|f| f.elements).collect();
        let mut edges = Vec::new();
        for i in 0..nodes.len() {
            for j in i + 1..nodes.len() {
                if r >= 2 && self.om.rank_of(nodes[i].intersection(nodes[j])) == r - 2 {
                    edges.push((i, j));
                }
            }
        }
        Ok(EmGraph { nodes, edges })
    }

    /// The cocircuit of `M` for a node: zero exactly on the node within the
    /// constraints, nonnegative there, positive on `g`.
    fn node_cocircuit(&self, v: ElementSet) -> Result<SignVector> {
        let n_set = self.constraints();
        self.om
            .signed_cocircuits()
            .find(|y| {
                y.get(self.g) == Sign::Plus && y.is_nonnegative_on(n_set) && y.zero_set().intersection(n_set) == v
            })
            .ok_or_else(|| OmError::Internal(format!("no cocircuit for node {}", self.format_set(v))))
    }

    /// The cocircuit `Y''` for moving from `v` to `w`: zero on `g` and `v ∩ w`,
    /// positive on `w \ v`, negative on `v \ w`.
    fn crossing_cocircuit(&self, v: ElementSet, w: ElementSet) -> Result<SignVector> {
        let ridge = v.intersection(w);
        let n_set = self.constraints();
        self.om
            .signed_cocircuits()
            .find(|y| {
                y.get(self.g) == Sign::Zero
                    && y.support().intersection(ridge).is_empty()
                    && w.difference(v).is_subset(y.positive())
                    && v.difference(w).is_subset(y.negative())
                    && y.support().intersection(n_set).is_subset(v.difference(w).union(w.difference(v)))
            })
            .ok_or_else(|| {
                OmError::Internal(format!(
                    "no crossing cocircuit between {} and {}",
                    self.format_set(v),
                    self.format_set(w)
                ))
            })
    }

    /// Orientation read off the fundamental circuit of `f` for every base
    /// inside the zero set of the crossing cocircuit plus `e` and `g`.
    /// Returns the number of bases checked.
    fn check_circuit_rule(&self, y2: &SignVector, v: ElementSet, w: ElementSet, forward: bool) -> Result<usize> {
        let r = self.rank();
        let mut checked = 0;
        let zero_n = self.constraints().difference(y2.support());
        for e in v.difference(w).iter() {
            let pool = zero_n.with(e).with(self.g);
            let indep = self.om.independent_subset(pool);
            if indep.len() < r {
                continue;
            }
            for b in crate::chirotope::subsets(pool.len(), r) {
                let members = pool.to_vec();
                let base = ElementSet::from_indices(b.iter().map(|&i| members[i]));
                if !base.contains(e) || !self.om.is_base(base) {
                    continue;
                }
                let x = self.om.fundamental_circuit(base, self.f)?;
                let leaves = match x.get(e) {
                    Sign::Minus => true,
                    Sign::Plus => false,
                    Sign::Zero => {
                        return Err(OmError::Degenerate(format!(
                            "fundamental circuit of {} in base {} misses {}",
                            self.f_label(),
                            self.format_set(base),
                            self.om.label(e)
                        )))
                    }
                };
                if leaves != forward {
                    return Err(OmError::Internal(format!(
                        "orientation rules disagree on the edge {} -- {}",
                        self.format_set(v),
                        self.format_set(w)
                    )));
                }
                checked += 1;
            }
        }
        Ok(checked)
    }

    /// Orient every edge of the face graph by the objective.
    pub fn orient(&self) -> Result<ProgramDigraph> {
        self.require_valid(false)?;
        let graph = self.em_graph_unchecked()?;
        let node_cocircuits =
            graph.nodes.iter().map(|&v| self.node_cocircuit(v)).collect::<Result<Vec<_>>>()?;
        let labels: Vec<String> = graph.nodes.iter().map(|&v| self.format_set(v)).collect();
        let mut digraph = Digraph::new(&self.name, labels)?;
        let mut arc_cocircuits = Vec::with_capacity(graph.edges.len());
        let mut bases_checked = 0;
        for &(i, j) in &graph.edges {
            let (v, w) = (graph.nodes[i], graph.nodes[j]);
            let y2 = self.crossing_cocircuit(v, w)?;
            let forward = match y2.get(self.f) {
                Sign::Minus => true,
                Sign::Plus => false,
                Sign::Zero => {
                    return Err(OmError::Internal(format!(
                        "crossing cocircuit between {} and {} vanishes on the objective",
                        self.format_set(v),
                        self.format_set(w)
                    )))
                }
            };
            bases_checked += self.check_circuit_rule(&y2, v, w, forward)?;
            if forward {
                digraph.add_arc(i, j)?;
                arc_cocircuits.push(y2);
            } else {
                digraph.add_arc(j, i)?;
                arc_cocircuits.push(-y2);
            }
        }
        digraph.detect_source_sink()?;
        digraph.set_dim(Some(self.rank() - 1));
        let pd = ProgramDigraph { digraph, nodes: graph.nodes, node_cocircuits, arc_cocircuits, bases_checked };
        self.check_conv(&pd)?;
        Ok(pd)
    }

    /// The source covers `f` and the sink covers `-f` in `M / g`.
    fn check_conv(&self, pd: &ProgramDigraph) -> Result<()> {
        let mg = self.contract_g()?;
        let f = self.f - usize::from(self.f > self.g);
        let source = pd.nodes[pd.source()].drop_index(self.g);
        let sink = pd.nodes[pd.sink()].drop_index(self.g);
        if !mg.conv_membership(f, source, true)? {
            return Err(OmError::SourceSink(format!(
                "source {} does not cover the objective",
                self.format_set(pd.nodes[pd.source()])
            )));
        }
        if !mg.conv_membership(f, sink, false)? {
            return Err(OmError::SourceSink(format!(
                "sink {} does not cover the negated objective",
                self.format_set(pd.nodes[pd.sink()])
            )));
        }
        Ok(())
    }

    /// Check that every face induces a subdigraph with exactly one sink and
    /// one source. Returns the number of faces checked.
    pub fn check_face_sinks(&self, pd: &ProgramDigraph) -> Result<usize> {
        let mut checked = 0;
        for face in self.faces()? {
            let members = pd.nodes_containing(face.elements);
            if members.is_empty() {
                continue;
            }
            let sinks = pd.digraph.induced_sinks(&members);
            let sources = pd.digraph.induced_sources(&members);
            if sinks.len() != 1 || sources.len() != 1 {
                return Err(OmError::SourceSink(format!(
                    "face {} has {} sinks and {} sources",
                    self.format_set(face.elements),
                    sinks.len(),
                    sources.len()
                )));
            }
            checked += 1;
        }
        Ok(checked)
    }
}

/// Reinsert a removed index into a set of the smaller ground set.
fn lift_set(s: ElementSet, removed: usize) -> ElementSet {
    s.open_index(removed)
}

/// Map of node element sets to indices, for lookups by set.
pub fn node_index(nodes: &[ElementSet]) -> HashMap<ElementSet, usize> {
    nodes.iter().enumerate().map(|(i, &v)| (v, i)).collect()
}
