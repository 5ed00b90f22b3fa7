//! Independent monotone paths and vertex cuts (Menger), program-level
//! Holt-Klee verdicts, and checks of path-avoidance certificates.

use std::collections::VecDeque;

use itertools::Itertools;
use serde::Serialize;

use crate::digraph::Digraph;
use crate::error::{OmError, Result};
use crate::extension::{extend, lift_extension, localization_from_lex, LexRule, Localization};
use crate::om::OrientedMatroid;
use crate::program::{OmProgram, ProgramDigraph};
use crate::sign::{ElementSet, GroundSet, Sign, SignVector};
use crate::tracer::{fresh_label, trace_path, TracedPath};

pub const DEFAULT_SEARCH_BUDGET: usize = 10_000;

/// Internally vertex-disjoint directed source-to-sink paths.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PathSystem {
    pub paths: Vec<Vec<usize>>,
}

/// Internal nodes meeting every directed source-to-sink path. When the
/// source has a direct arc to the sink no node set can cut it; `direct_arc`
/// records that the arc counts as one path of its own.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CutCertificate {
    pub nodes: Vec<usize>,
    pub direct_arc: bool,
}

impl CutCertificate {
    pub fn size(&self) -> usize {
        self.nodes.len() + usize::from(self.direct_arc)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Menger {
    pub k: usize,
    pub paths: PathSystem,
    pub cut: CutCertificate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HoltKleeVerdict {
    pub holds: bool,
    pub k: usize,
    pub dim: usize,
    pub paths: PathSystem,
    pub cut: CutCertificate,
}

/// Flow network on split nodes: node `v` becomes `2v -> 2v+1` with unit capacity.
struct Network {
    head: Vec<usize>,
    cap: Vec<i32>,
    adj: Vec<Vec<usize>>,
}

impl Network {
    fn new(nodes: usize) -> Self {
        Network { head: Vec::new(), cap: Vec::new(), adj: vec![Vec::new(); nodes] }
    }

    fn add(&mut self, u: usize, v: usize, c: i32) {
        self.adj[u].push(self.head.len());
        self.head.push(v);
        self.cap.push(c);
        self.adj[v].push(self.head.len());
        self.head.push(u);
        self.cap.push(0);
    }

    /// Push one unit along a shortest augmenting path, if there is one.
    fn augment(&mut self, s: usize, t: usize) -> bool {
        let mut prev: Vec<Option<usize>> = vec![None; self.adj.len()];
        let mut seen = vec![false; self.adj.len()];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            if u == t {
                break;
            }
            for &e in &self.adj[u] {
                let v = self.head[e];
                if self.cap[e] > 0 && !seen[v] {
                    seen[v] = true;
                    prev[v] = Some(e);
                    queue.push_back(v);
                }
            }
        }
        if !seen[t] {
            return false;
        }
        let mut v = t;
        while let Some(e) = prev[v] {
            self.cap[e] -= 1;
            self.cap[e ^ 1] += 1;
            v = self.head[e ^ 1];
        }
        true
    }

    fn residual_reachable(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.adj.len()];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &e in &self.adj[u] {
                let v = self.head[e];
                if self.cap[e] > 0 && !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        seen
    }
}

/// Maximum number of internally disjoint paths from `s` to `t` in the graph
/// with adjacency lists `out`, with a path system and a minimum cut.
pub fn menger_on_adjacency(out: &[Vec<usize>], s: usize, t: usize) -> Menger {
    let n = out.len();
    let big = n as i32 + 1;
    let mut net = Network::new(2 * n);
    for v in 0..n {
        let c = if v == s || v == t { big } else { 1 };
        net.add(2 * v, 2 * v + 1, c);
    }
    let direct_arc = out[s].contains(&t);
    for u in 0..n {
        let mut succ = out[u].clone();
        succ.sort_unstable();
        for v in succ {
            if (u == s && v == t) || v == s || u == t {
                continue;
            }
            net.add(2 * u + 1, 2 * v, big);
        }
    }
    let (source, target) = (2 * s + 1, 2 * t);
    let mut flow = 0;
    while net.augment(source, target) {
        flow += 1;
    }

    // decompose: follow flow-carrying arcs from the source
    let mut carried: Vec<i32> = (0..net.head.len()).map(|e| if e % 2 == 0 { net.cap[e ^ 1] } else { 0 }).collect();
    let mut paths = Vec::new();
    for _ in 0..flow {
        let mut path = vec![s];
        let mut u = source;
        while u != target {
            let e = net.adj[u]
                .iter()
                .copied()
                .find(|&e| carried[e] > 0 && {
                    let v = net.head[e];
                    // a node-to-node edge leaves an odd (out) copy
                    u % 2 == 1 && v.is_multiple_of(2)
                })
                .expect("flow decomposes into paths");
            carried[e] -= 1;
            let v = net.head[e];
            path.push(v / 2);
            u = if v == target { v } else { v + 1 };
        }
        paths.push(path);
    }
    if direct_arc {
        paths.push(vec![s, t]);
    }

    let reach = net.residual_reachable(source);
    let cut: Vec<usize> = (0..n).filter(|&v| v != s && v != t && reach[2 * v] && !reach[2 * v + 1]).collect();
    let k = flow + usize::from(direct_arc);
    Menger { k, paths: PathSystem { paths }, cut: CutCertificate { nodes: cut, direct_arc } }
}

/// Menger certificates for the digraph between its declared source and sink,
/// each verified before return.
pub fn max_independent_paths(d: &Digraph) -> Result<Menger> {
    let (s, t) = d.require_source_sink()?;
    max_independent_paths_between(d, s, t)
}

pub fn max_independent_paths_between(d: &Digraph, s: usize, t: usize) -> Result<Menger> {
    if !d.reachable(s, &[])[t] {
        return Err(OmError::Unreachable { from: d.label(s).to_string(), to: d.label(t).to_string() });
    }
    let out: Vec<Vec<usize>> = (0..d.node_count()).map(|u| d.successors(u).to_vec()).collect();
    let m = menger_on_adjacency(&out, s, t);
    if !verify_path_system(d, s, t, &m.paths) || m.paths.paths.len() != m.k {
        return Err(OmError::Internal("path system failed verification".into()));
    }
    if !verify_cut(d, s, t, &m.cut) || m.cut.size() != m.k {
        return Err(OmError::Internal("cut certificate failed verification".into()));
    }
    Ok(m)
}

/// Every path is a directed `s`-`t` path and no two share an internal node.
pub fn verify_path_system(d: &Digraph, s: usize, t: usize, system: &PathSystem) -> bool {
    let mut used = vec![false; d.node_count()];
    let mut direct = 0;
    for p in &system.paths {
        if p.first() != Some(&s) || p.last() != Some(&t) || !d.is_simple_directed_path(p) {
            return false;
        }
        if p.len() == 2 {
            direct += 1;
        }
        for &v in &p[1..p.len() - 1] {
            if used[v] {
                return false;
            }
            used[v] = true;
        }
    }
    direct <= 1
}

/// Removing the cut nodes leaves no `s`-`t` path other than a direct arc
/// (which must then be flagged).
pub fn verify_cut(d: &Digraph, s: usize, t: usize, cut: &CutCertificate) -> bool {
    if cut.nodes.iter().any(|&v| v == s || v == t || v >= d.node_count()) {
        return false;
    }
    if cut.direct_arc != d.has_arc(s, t) {
        return false;
    }
    let mut blocked = vec![false; d.node_count()];
    for &v in &cut.nodes {
        blocked[v] = true;
    }
    let mut reach = vec![false; d.node_count()];
    reach[s] = true;
    let mut queue = VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        for &v in d.successors(u) {
            if u == s && v == t {
                continue;
            }
            if !reach[v] && !blocked[v] {
                reach[v] = true;
                queue.push_back(v);
            }
        }
    }
    !reach[t]
}

/// Holt-Klee verdict for a digraph with a dimension `dim`.
pub fn check_digraph(d: &Digraph, dim: usize) -> Result<HoltKleeVerdict> {
    let m = max_independent_paths(d)?;
    Ok(HoltKleeVerdict { holds: m.k >= dim, k: m.k, dim, paths: m.paths, cut: m.cut })
}

/// Holt-Klee verdict for a program: at least `rank - 1` independent paths.
pub fn check_holt_klee(program: &OmProgram) -> Result<(ProgramDigraph, HoltKleeVerdict)> {
    let kf = program.orient()?;
    let verdict = check_digraph(&kf.digraph, program.rank() - 1)?;
    Ok((kf, verdict))
}

/// Whether the undirected graph is `k`-connected: more than `k` nodes and at
/// least `k` internally disjoint paths between every pair.
pub fn is_k_connected(nodes: usize, edges: &[(usize, usize)], k: usize) -> bool {
    if nodes <= k {
        return false;
    }
    let mut adj = vec![Vec::new(); nodes];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    (0..nodes).tuple_combinations().all(|(s, t)| menger_on_adjacency(&adj, s, t).k >= k)
}

/// Translate an element set between ground sets by label.
fn map_set(from: &GroundSet, to: &GroundSet, set: ElementSet) -> Result<ElementSet> {
    let mut out = ElementSet::EMPTY;
    for i in set.iter() {
        out.insert(to.index_of(from.label(i))?);
    }
    Ok(out)
}

/// A covector of `M / {f, g}` positive on every element of an internal node,
/// composed from cocircuits nonnegative on the node.
pub fn covering_covector(program: &OmProgram, kf: &ProgramDigraph, node: usize) -> Result<SignVector> {
    let mfg = program.contract_fg()?;
    let v = map_set(program.om().ground(), mfg.ground(), kf.nodes[node])?;
    let mut y = SignVector::zero(mfg.len());
    for e in v.iter() {
        match mfg.signed_cocircuits().find(|z| z.get(e) == Sign::Plus && z.is_nonnegative_on(v)) {
            Some(z) => y = y.compose(&z),
            None => {
                let mg = program.contract_g()?;
                let f = mg.index_of(program.f_label())?;
                let vg = map_set(program.om().ground(), mg.ground(), kf.nodes[node])?;
                let eg = mg.index_of(mfg.label(e))?;
                let witness = mg
                    .circuits()?
                    .iter()
                    .flat_map(|&x| [x, -x])
                    .find(|x| {
                        x.get(eg) == Sign::Plus
                            && x.get(f) != Sign::Zero
                            && x.support().is_subset(vg.with(f))
                            && x.is_nonnegative_on(vg)
                    })
                    .map_or_else(|| "none found".to_string(), |x| x.to_string());
                return Err(OmError::SourceSink(format!(
                    "node {} is the source or sink: no cocircuit nonnegative on it is positive on {} (circuit witness {witness})",
                    kf.digraph.label(node),
                    mfg.label(e)
                )));
            }
        }
    }
    Ok(y)
}

/// An extension of `M / {f, g}` by `h` with one cocircuit per node, each
/// positive on `h` and nonnegative on its node.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AvoidanceCertificate {
    #[serde(serialize_with = "serialize_rule")]
    pub rule: LexRule,
    #[serde(skip)]
    pub localization: Localization,
    pub cocircuits: Vec<SignVector>,
}

fn serialize_rule<S: serde::Serializer>(rule: &LexRule, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&rule.to_string())
}

fn check_nodes(kf: &ProgramDigraph, nodes: &[usize]) -> Result<()> {
    for &v in nodes {
        if v >= kf.nodes.len() {
            return Err(OmError::InvalidInput(format!("node index {v} out of range")));
        }
        if v == kf.source() || v == kf.sink() {
            return Err(OmError::InvalidInput(format!(
                "{} is the source or sink; only internal nodes can be avoided",
                kf.digraph.label(v)
            )));
        }
    }
    Ok(())
}

/// Check the certificate's cocircuits against the extension it defines, then
/// lift the extension, trace a path, and require the path to miss every node.
/// Returns the traced path when the certificate is valid.
pub fn verify_avoidance_certificate(
    program: &OmProgram,
    kf: &ProgramDigraph,
    nodes: &[usize],
    cert: &AvoidanceCertificate,
) -> Result<Option<TracedPath>> {
    check_nodes(kf, nodes)?;
    let mfg = program.contract_fg()?;
    let ext = extend(mfg, &cert.localization)?;
    let h = ext.len() - 1;
    if cert.cocircuits.len() != nodes.len() {
        return Ok(None);
    }
    for (&v, z) in nodes.iter().zip(&cert.cocircuits) {
        let vs = map_set(program.om().ground(), mfg.ground(), kf.nodes[v])?;
        if z.len() != ext.len() || !ext.is_cocircuit(z) || z.get(h) != Sign::Plus || !z.is_nonnegative_on(vs) {
            return Ok(None);
        }
    }
    let sigma = lift_extension(program, &cert.localization)?;
    let path = trace_path(program, kf, &sigma)?;
    if let Some(v) = path.nodes.iter().find(|v| nodes.contains(v)) {
        return Err(OmError::Internal(format!(
            "traced path meets {} despite a valid avoidance certificate",
            kf.digraph.label(*v)
        )));
    }
    Ok(Some(path))
}

/// Search lexicographic extensions of `M / {f, g}` (over bases, orders and
/// sign patterns) for an avoidance certificate. `Ok(None)` means the search
/// space was exhausted; running out of budget is an error.
pub fn search_avoiding_extension(
    program: &OmProgram,
    kf: &ProgramDigraph,
    nodes: &[usize],
    budget: usize,
) -> Result<Option<(AvoidanceCertificate, TracedPath)>> {
    check_nodes(kf, nodes)?;
    let mfg = program.contract_fg()?;
    let label = fresh_label(program.om().ground(), "h");
    let node_sets: Vec<ElementSet> = nodes
        .iter()
        .map(|&v| map_set(program.om().ground(), mfg.ground(), kf.nodes[v]))
        .collect::<Result<_>>()?;
    let mut tried = 0;
    for base in mfg.bases() {
        let elems = base.to_vec();
        for perm in elems.iter().copied().permutations(elems.len()) {
            for pattern in 0u32..(1 << perm.len()) {
                if tried >= budget {
                    return Err(OmError::BudgetExhausted(budget));
                }
                tried += 1;
                let rule = LexRule::new(perm.iter().enumerate().map(|(k, &e)| {
                    let s = if pattern >> k & 1 == 0 { Sign::Plus } else { Sign::Minus };
                    (mfg.label(e).to_string(), s)
                }));
                let localization = localization_from_lex(mfg, &rule, &label)?;
                let ext = extend(mfg, &localization)?;
                let h = ext.len() - 1;
                let found: Option<Vec<SignVector>> = node_sets
                    .iter()
                    .map(|&v| ext.signed_cocircuits().find(|z| z.get(h) == Sign::Plus && z.is_nonnegative_on(v)))
                    .collect();
                let Some(cocircuits) = found else { continue };
                let cert = AvoidanceCertificate { rule, localization, cocircuits };
                match verify_avoidance_certificate(program, kf, nodes, &cert) {
                    Ok(Some(path)) => return Ok(Some((cert, path))),
                    Ok(None)
                    | Err(OmError::NotGeneralPosition(_))
                    | Err(OmError::Degenerate(_))
                    | Err(OmError::InvalidLocalization(_)) => continue,
                    Err(e) => return Err(e),
                }
            }
        }
    }
    Ok(None)
}

/// Each `W^i` is a covector of the extension of `m` by `sigma`, vanishing on
/// the new element and agreeing with `Y^i` elsewhere.
pub fn verify_levi_certificate(
    m: &OrientedMatroid,
    ys: &[SignVector],
    sigma: &Localization,
    ws: &[SignVector],
) -> Result<bool> {
    let ext = extend(m, sigma)?;
    let h = ext.len() - 1;
    if ys.len() != ws.len() {
        return Ok(false);
    }
    for (y, w) in ys.iter().zip(ws) {
        if w.len() != ext.len() || y.len() != m.len() || w.get(h) != Sign::Zero || w.delete(h) != *y {
            return Ok(false);
        }
        if !m.is_covector(y)? || !ext.is_covector(w)? {
            return Ok(false);
        }
    }
    Ok(true)
}
