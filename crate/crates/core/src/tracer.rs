//! Monotone source-to-sink paths built from a single-element extension of
//! the contraction by the right-hand side.

use serde::Serialize;

use crate::digraph::Digraph;
use crate::error::{OmError, Result};
use crate::extension::{extend, is_general_position, lift_extension, localization_from_lex, perturbation_extension};
use crate::extension::{LexRule, Localization};
use crate::om::OrientedMatroid;
use crate::program::{OmProgram, ProgramDigraph};
use crate::sign::{ElementSet, GroundSet, Sign, SignVector};

/// Sign patterns selecting the nodes of the three interval subdigraphs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Interval {
    /// Vector positive exactly on the node, negative on `f` and `h`.
    FH,
    /// Vector positive exactly on the node and `h`, negative on `f`.
    FMinusH,
    /// Nonnegative vector with positive part the node plus `f` and `h`.
    MinusHMinusF,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TracedPath {
    /// Node indices of the program digraph, source first.
    pub nodes: Vec<usize>,
    /// Element sets of the nodes, formatted.
    pub labels: Vec<String>,
    /// Position in `nodes` of the sink of the alternate orientation, where
    /// the two segments meet.
    pub joint: usize,
}

impl TracedPath {
    pub fn arc_count(&self) -> usize {
        self.nodes.len().saturating_sub(1)
    }

    pub fn first_segment(&self) -> &[usize] {
        &self.nodes[..=self.joint]
    }

    pub fn second_segment(&self) -> &[usize] {
        &self.nodes[self.joint..]
    }

    pub fn internal(&self) -> &[usize] {
        if self.nodes.len() <= 2 {
            &[]
        } else {
            &self.nodes[1..self.nodes.len() - 1]
        }
    }
}

/// The extended oriented matroid `M̂` of `M / g` by `h`, the alternate
/// orientation `K_h`, and the interval tests built on them.
#[derive(Debug, Clone)]
pub struct Tracer<'a> {
    program: &'a OmProgram,
    kf: &'a ProgramDigraph,
    ext: OrientedMatroid,
    f: usize,
    h: usize,
    node_sets: Vec<ElementSet>,
    kh: Digraph,
}

/// A label not yet in the ground set, starting from `base`.
pub fn fresh_label(ground: &GroundSet, base: &str) -> String {
    if ground.index_of(base).is_err() {
        return base.to_string();
    }
    (1..).map(|i| format!("{base}{i}")).find(|l| ground.index_of(l).is_err()).expect("unbounded labels")
}

/// Lexicographic rule over the first base of `M / {f, g}` in element order,
/// lifted to `M / g`.
pub fn default_localization(program: &OmProgram) -> Result<Localization> {
    let mfg = program.contract_fg()?;
    let base = mfg.bases().into_iter().next().ok_or_else(|| OmError::InvalidProgram("no base".into()))?;
    let labels: Vec<&str> = base.iter().map(|i| mfg.label(i)).collect();
    let label = fresh_label(program.om().ground(), "h");
    let tilde = localization_from_lex(mfg, &LexRule::positive(&labels), &label)?;
    lift_extension(program, &tilde)
}

/// Lift a lexicographic rule on `M / {f, g}` to a localization of `M / g`.
pub fn lifted_lex(program: &OmProgram, rule: &LexRule) -> Result<Localization> {
    let label = fresh_label(program.om().ground(), "h");
    let tilde = localization_from_lex(program.contract_fg()?, rule, &label)?;
    lift_extension(program, &tilde)
}

impl<'a> Tracer<'a> {
    /// Extend `M / g` by `sigma` and orient the program's edges by the new element.
    pub fn new(program: &'a OmProgram, kf: &'a ProgramDigraph, sigma: &Localization) -> Result<Self> {
        let mg = program.contract_g()?;
        let ext = extend(mg, sigma)?;
        let h = ext.len() - 1;
        let f = ext.index_of(program.f_label())?;
        if !is_general_position(&ext, h)? {
            return Err(OmError::NotGeneralPosition(sigma.label().to_string()));
        }
        let ext_f = ext.delete(f)?;
        let h_f = ext_f.len() - 1;
        if !is_general_position(&ext_f, h_f)? {
            return Err(OmError::NotGeneralPosition(format!(
                "{} after deleting {}",
                sigma.label(),
                program.f_label()
            )));
        }
        let g = program.g();
        let node_sets: Vec<ElementSet> = kf.nodes.iter().map(|v| v.drop_index(g)).collect();

        let mut kh = Digraph::new(&format!("{}-{}", program.name(), sigma.label()), kf.digraph.labels().to_vec())?;
        for (k, &(u, w)) in kf.digraph.arcs().iter().enumerate() {
            // cocircuit of M vanishing on g and the ridge, restricted to the constraints
            let target = kf.arc_cocircuits[k].delete(g).delete(f);
            let hat = ext_f
                .signed_cocircuits()
                .find(|y| y.delete(h_f) == target)
                .ok_or_else(|| OmError::Internal(format!("no extended cocircuit restricting to {target}")))?;
            match hat.get(h_f) {
                Sign::Minus => kh.add_arc(u, w)?,
                Sign::Plus => kh.add_arc(w, u)?,
                Sign::Zero => return Err(OmError::NotGeneralPosition(sigma.label().to_string())),
            }
        }
        kh.detect_source_sink()?;
        Ok(Tracer { program, kf, ext, f, h, node_sets, kh })
    }

    pub fn program(&self) -> &OmProgram {
        self.program
    }

    pub fn kh(&self) -> &Digraph {
        &self.kh
    }

    /// The extended oriented matroid (ground set `E \ g` plus the new element).
    pub fn extension(&self) -> &OrientedMatroid {
        &self.ext
    }

    pub fn h(&self) -> usize {
        self.h
    }

    fn pattern(&self, set: ElementSet, pattern: Interval) -> SignVector {
        let n = self.ext.len();
        let (pos, neg) = match pattern {
            Interval::FH => (set, ElementSet::EMPTY.with(self.f).with(self.h)),
            Interval::FMinusH => (set.with(self.h), ElementSet::singleton(self.f)),
            Interval::MinusHMinusF => (set.with(self.f).with(self.h), ElementSet::EMPTY),
        };
        SignVector::from_parts(n, pos, neg)
    }

    /// Whether the node lies in the interval subdigraph for `pattern`.
    pub fn membership(&self, node: usize, pattern: Interval) -> bool {
        self.ext.is_vector(&self.pattern(self.node_sets[node], pattern))
    }

    fn ridge_membership(&self, u: usize, w: usize, pattern: Interval) -> bool {
        let ridge = self.node_sets[u].intersection(self.node_sets[w]);
        self.ext.is_vector(&self.pattern(ridge, pattern))
    }

    /// A nonzero nonnegative vector of the extension supported in the node plus `h`.
    pub fn has_positive_vector_with_h(&self, node: usize) -> Result<bool> {
        let allowed = self.node_sets[node].with(self.h);
        Ok(self
            .ext
            .circuits()?
            .iter()
            .flat_map(|&x| [x, -x])
            .any(|x| x.negative().is_empty() && x.support().is_subset(allowed)))
    }

    fn walk(&self, start: usize, stop: usize, pattern: Interval) -> Result<Vec<usize>> {
        let d = &self.kf.digraph;
        let mut path = vec![start];
        let mut cur = start;
        while cur != stop {
            let candidates: Vec<usize> =
                d.successors(cur).iter().copied().filter(|&w| self.ridge_membership(cur, w, pattern)).collect();
            match candidates.as_slice() {
                [next] => {
                    if path.contains(next) {
                        return Err(OmError::Internal(format!("walk revisits {}", d.label(*next))));
                    }
                    path.push(*next);
                    cur = *next;
                }
                [] => {
                    return Err(OmError::Internal(format!(
                        "walk stalled at {} before reaching {}",
                        d.label(cur),
                        d.label(stop)
                    )))
                }
                _ => {
                    return Err(OmError::Degenerate(format!(
                        "{} admissible ridges leave {}",
                        candidates.len(),
                        d.label(cur)
                    )))
                }
            }
        }
        Ok(path)
    }

    /// Walk from the source of `K_f` to the sink of `K_h`, then on to the sink
    /// of `K_f`, and verify the result.
    pub fn trace(&self) -> Result<TracedPath> {
        let d = &self.kf.digraph;
        let (source, sink) = (self.kf.source(), self.kf.sink());
        let joint = self.kh.sink().expect("set at construction");
        let first = self.walk(source, joint, Interval::FMinusH)?;
        let second = self.walk(joint, sink, Interval::MinusHMinusF)?;
        for &v in &first {
            if !self.membership(v, Interval::FMinusH) {
                return Err(OmError::Internal(format!("{} is off its interval", d.label(v))));
            }
        }
        for &v in &second {
            if !self.membership(v, Interval::MinusHMinusF) {
                return Err(OmError::Internal(format!("{} is off its interval", d.label(v))));
            }
        }
        if first.iter().filter(|v| second.contains(v)).count() != 1 {
            return Err(OmError::Internal("segments share more than the joint".into()));
        }
        if !self.has_positive_vector_with_h(joint)? {
            return Err(OmError::Internal(format!("joint {} is not covered by h", d.label(joint))));
        }
        let joint_at = first.len() - 1;
        let mut nodes = first;
        nodes.extend_from_slice(&second[1..]);
        if !d.is_simple_directed_path(&nodes) {
            return Err(OmError::Internal("traced path is not a directed path".into()));
        }
        let labels = nodes.iter().map(|&v| d.label(v).to_string()).collect();
        Ok(TracedPath { nodes, labels, joint: joint_at })
    }
}

/// Trace a monotone path with the given localization of `M / g`.
pub fn trace_path(program: &OmProgram, kf: &ProgramDigraph, sigma: &Localization) -> Result<TracedPath> {
    Tracer::new(program, kf, sigma)?.trace()
}

/// A monotone path whose internal nodes avoid the constraint `e`, which must
/// belong to both the source and the sink.
pub fn trace_facet_avoiding(program: &OmProgram, kf: &ProgramDigraph, e: &str) -> Result<TracedPath> {
    let ei = program.om().index_of(e)?;
    if !program.constraints().contains(ei) {
        return Err(OmError::InvalidInput(format!("{e} is not a constraint element")));
    }
    if !kf.nodes[kf.source()].contains(ei) || !kf.nodes[kf.sink()].contains(ei) {
        return Err(OmError::InvalidInput(format!("{e} does not contain both the source and the sink")));
    }
    let label = fresh_label(program.om().ground(), "h");
    let sigma = perturbation_extension(program, e, &label)?;
    let path = trace_path(program, kf, &sigma)?;
    if let Some(&v) = path.internal().iter().find(|&&v| kf.nodes[v].contains(ei)) {
        return Err(OmError::Internal(format!("internal node {} lies on {e}", kf.digraph.label(v))));
    }
    Ok(path)
}

/// Whether some directed source-to-sink path has no internal node in `blocked`.
pub fn avoiding_path_exists(d: &Digraph, blocked: &[bool]) -> Result<bool> {
    let (s, t) = d.require_source_sink()?;
    let mut block = blocked.to_vec();
    block.resize(d.node_count(), false);
    block[s] = false;
    block[t] = false;
    if d.has_arc(s, t) {
        return Ok(true);
    }
    Ok(d.reachable(s, &block)[t])
}
