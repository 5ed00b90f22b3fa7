//! Labelled digraphs with a designated source and sink.

use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use crate::error::{OmError, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    name: String,
    labels: Vec<String>,
    index: HashMap<String, usize>,
    arcs: Vec<(usize, usize)>,
    out: Vec<Vec<usize>>,
    inn: Vec<Vec<usize>>,
    source: Option<usize>,
    sink: Option<usize>,
    dim: Option<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct DigraphSummary {
    pub name: String,
    pub nodes: usize,
    pub arcs: usize,
    pub source: Option<String>,
    pub sink: Option<String>,
    pub dim: Option<usize>,
    pub acyclic: bool,
}

impl Digraph {
    pub fn new<S: Into<String>>(name: &str, labels: impl IntoIterator<Item = S>) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let mut index = HashMap::new();
        for (i, l) in labels.iter().enumerate() {
            if l.is_empty() || l.chars().any(char::is_whitespace) {
                return Err(OmError::InvalidInput(format!("invalid node label {l:?}")));
            }
            if index.insert(l.clone(), i).is_some() {
                return Err(OmError::InvalidInput(format!("duplicate node {l:?}")));
            }
        }
        let n = labels.len();
        Ok(Digraph {
            name: name.to_string(),
            labels,
            index,
            arcs: Vec::new(),
            out: vec![Vec::new(); n],
            inn: vec![Vec::new(); n],
            source: None,
            sink: None,
            dim: None,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: &str) {
        self.name = name.to_string();
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.index.get(label).copied().ok_or_else(|| OmError::UnknownElement(label.to_string()))
    }

    /// Arcs in insertion order.
    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn successors(&self, u: usize) -> &[usize] {
        &self.out[u]
    }

    pub fn predecessors(&self, u: usize) -> &[usize] {
        &self.inn[u]
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.out[u].contains(&v)
    }

    pub fn add_arc(&mut self, u: usize, v: usize) -> Result<()> {
        if u >= self.node_count() || v >= self.node_count() {
            return Err(OmError::InvalidInput(format!("arc ({u},{v}) out of range")));
        }
        if u == v {
            return Err(OmError::InvalidInput(format!("self-arc at {}", self.labels[u])));
        }
        if self.has_arc(u, v) || self.has_arc(v, u) {
            return Err(OmError::InvalidInput(format!(
                "more than one arc between {} and {}",
                self.labels[u], self.labels[v]
            )));
        }
        self.arcs.push((u, v));
        self.out[u].push(v);
        self.inn[v].push(u);
        Ok(())
    }

    pub fn add_arc_labels(&mut self, u: &str, v: &str) -> Result<()> {
        let (a, b) = (self.index_of(u)?, self.index_of(v)?);
        self.add_arc(a, b)
    }

    pub fn source(&self) -> Option<usize> {
        self.source
    }

    pub fn sink(&self) -> Option<usize> {
        self.sink
    }

    pub fn dim(&self) -> Option<usize> {
        self.dim
    }

    pub fn set_dim(&mut self, d: Option<usize>) {
        self.dim = d;
    }

    /// Declare the source and sink; each must be the unique node of in-degree
    /// (respectively out-degree) zero.
    pub fn set_source_sink(&mut self, source: usize, sink: usize) -> Result<()> {
        let sources = self.sources();
        let sinks = self.sinks();
        if sources != [source] {
            return Err(OmError::SourceSink(format!(
                "declared source {} but nodes without incoming arcs are {:?}",
                self.labels[source],
                sources.iter().map(|&i| self.label(i)).collect::<Vec<_>>()
            )));
        }
        if sinks != [sink] {
            return Err(OmError::SourceSink(format!(
                "declared sink {} but nodes without outgoing arcs are {:?}",
                self.labels[sink],
                sinks.iter().map(|&i| self.label(i)).collect::<Vec<_>>()
            )));
        }
        self.source = Some(source);
        self.sink = Some(sink);
        Ok(())
    }

    /// Set source and sink from the degree structure.
    pub fn detect_source_sink(&mut self) -> Result<(usize, usize)> {
        let (sources, sinks) = (self.sources(), self.sinks());
        if sources.len() != 1 || sinks.len() != 1 {
            return Err(OmError::SourceSink(format!(
                "{} sources and {} sinks",
                sources.len(),
                sinks.len()
            )));
        }
        self.source = Some(sources[0]);
        self.sink = Some(sinks[0]);
        Ok((sources[0], sinks[0]))
    }

    pub fn require_source_sink(&self) -> Result<(usize, usize)> {
        match (self.source, self.sink) {
            (Some(s), Some(t)) => Ok((s, t)),
            _ => Err(OmError::SourceSink(format!("digraph {} has no designated source and sink", self.name))),
        }
    }

    pub fn sources(&self) -> Vec<usize> {
        (0..self.node_count()).filter(|&i| self.inn[i].is_empty()).collect()
    }

    pub fn sinks(&self) -> Vec<usize> {
        (0..self.node_count()).filter(|&i| self.out[i].is_empty()).collect()
    }

    /// Sinks of the subdigraph induced on `nodes`.
    pub fn induced_sinks(&self, nodes: &[usize]) -> Vec<usize> {
        let mut inside = vec![false; self.node_count()];
        for &v in nodes {
            inside[v] = true;
        }
        nodes.iter().copied().filter(|&v| !self.out[v].iter().any(|&w| inside[w])).collect()
    }

    pub fn induced_sources(&self, nodes: &[usize]) -> Vec<usize> {
        let mut inside = vec![false; self.node_count()];
        for &v in nodes {
            inside[v] = true;
        }
        nodes.iter().copied().filter(|&v| !self.inn[v].iter().any(|&w| inside[w])).collect()
    }

    /// Nodes reachable from `from` without passing through `blocked` nodes.
    pub fn reachable(&self, from: usize, blocked: &[bool]) -> Vec<bool> {
        let mut seen = vec![false; self.node_count()];
        if blocked.get(from).copied().unwrap_or(false) {
            return seen;
        }
        seen[from] = true;
        let mut queue = VecDeque::from([from]);
        while let Some(u) = queue.pop_front() {
            for &v in &self.out[u] {
                if !seen[v] && !blocked.get(v).copied().unwrap_or(false) {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        seen
    }

    /// A directed cycle, if any (nodes in cycle order).
    pub fn find_cycle(&self) -> Option<Vec<usize>> {
        // 0 = unvisited, 1 = on stack, 2 = done
        let n = self.node_count();
        let mut state = vec![0u8; n];
        let mut parent = vec![usize::MAX; n];
        for root in 0..n {
            if state[root] != 0 {
                continue;
            }
            let mut stack = vec![(root, 0usize)];
            state[root] = 1;
            while let Some(&mut (u, ref mut k)) = stack.last_mut() {
                if *k < self.out[u].len() {
                    let v = self.out[u][*k];
                    *k += 1;
                    match state[v] {
                        0 => {
                            state[v] = 1;
                            parent[v] = u;
                            stack.push((v, 0));
                        }
                        1 => {
                            let mut cycle = vec![v];
                            let mut w = u;
                            while w != v {
                                cycle.push(w);
                                w = parent[w];
                            }
                            cycle[1..].reverse();
                            return Some(cycle);
                        }
                        _ => {}
                    }
                } else {
                    state[u] = 2;
                    stack.pop();
                }
            }
        }
        None
    }

    pub fn is_acyclic(&self) -> bool {
        self.find_cycle().is_none()
    }

    /// Every consecutive pair of `path` is an arc and no node repeats.
    pub fn is_simple_directed_path(&self, path: &[usize]) -> bool {
        let mut seen = vec![false; self.node_count()];
        for &v in path {
            if v >= self.node_count() || seen[v] {
                return false;
            }
            seen[v] = true;
        }
        path.windows(2).all(|w| self.has_arc(w[0], w[1]))
    }

    /// Every consecutive pair of the cyclic sequence is an arc.
    pub fn is_directed_cycle(&self, cycle: &[usize]) -> bool {
        !cycle.is_empty()
            && (0..cycle.len()).all(|i| self.has_arc(cycle[i], cycle[(i + 1) % cycle.len()]))
            && {
                let mut s = cycle.to_vec();
                s.sort();
                s.dedup();
                s.len() == cycle.len()
            }
    }

    /// The digraph with every arc reversed (source and sink swapped).
    pub fn reversed(&self) -> Digraph {
        let mut d = Digraph::new(&self.name, self.labels.clone()).expect("labels already valid");
        for &(u, v) in &self.arcs {
            d.add_arc(v, u).expect("reversal keeps arcs simple");
        }
        d.source = self.sink;
        d.sink = self.source;
        d.dim = self.dim;
        d
    }

    pub fn summary(&self) -> DigraphSummary {
        DigraphSummary {
            name: self.name.clone(),
            nodes: self.node_count(),
            arcs: self.arc_count(),
            source: self.source.map(|s| self.labels[s].clone()),
            sink: self.sink.map(|s| self.labels[s].clone()),
            dim: self.dim,
            acyclic: self.is_acyclic(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path4() -> Digraph {
        let mut d = Digraph::new("p", ["a", "b", "c", "d"]).unwrap();
        d.add_arc_labels("a", "b").unwrap();
        d.add_arc_labels("b", "c").unwrap();
        d.add_arc_labels("c", "d").unwrap();
        d
    }

    #[test]
    fn source_sink_detection() {
        let mut d = path4();
        assert_eq!(d.detect_source_sink().unwrap(), (0, 3));
        assert!(d.set_source_sink(1, 3).is_err());
        assert!(d.is_acyclic());
        assert!(d.is_simple_directed_path(&[0, 1, 2, 3]));
        assert!(!d.is_simple_directed_path(&[0, 2, 3]));
    }

    #[test]
    fn rejects_duplicate_and_self_arcs() {
        let mut d = path4();
        assert!(d.add_arc_labels("b", "a").is_err());
        assert!(d.add_arc_labels("a", "a").is_err());
        assert!(Digraph::new("x", ["a", "a"]).is_err());
    }

    #[test]
    fn finds_cycles() {
        let mut d = Digraph::new("c", ["a", "b", "c"]).unwrap();
        d.add_arc(0, 1).unwrap();
        d.add_arc(1, 2).unwrap();
        d.add_arc(2, 0).unwrap();
        let c = d.find_cycle().unwrap();
        assert!(d.is_directed_cycle(&c));
        assert_eq!(c.len(), 3);
    }
}
