//! Test-side oracles shared by the integration suites. Nothing here calls the
//! library's combinatorial algorithms; answers come from coordinates or
//! exhaustive search.

#![allow(dead_code)]

pub mod kernel;
pub mod suites;

use std::collections::BTreeSet;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Vertices of a polytope with tight-constraint labels and objective values.
pub struct GeometricVertex {
    pub tight: BTreeSet<String>,
    pub value: i64,
}

/// Unit cube `[0,1]^3`, tight labels `y_i` at `x_i = 0` and `s_i` at `x_i = 1`,
/// objective the coordinate sum. Adjacent iff the vertices differ in one coordinate.
pub fn cube_vertices() -> (Vec<GeometricVertex>, Vec<(usize, usize)>) {
    let mut verts = Vec::new();
    for mask in 0..8u32 {
        let mut tight = BTreeSet::new();
        let mut value = 0;
        for i in 0..3 {
            if mask >> i & 1 == 1 {
                tight.insert(format!("s{}", i + 1));
                value += 1;
            } else {
                tight.insert(format!("y{}", i + 1));
            }
        }
        verts.push(GeometricVertex { tight, value });
    }
    let mut edges = Vec::new();
    for a in 0..8u32 {
        for b in a + 1..8u32 {
            if (a ^ b).count_ones() == 1 {
                edges.push((a as usize, b as usize));
            }
        }
    }
    (verts, edges)
}

/// Triangle `{x >= 0, x1+x2+x3 = 1}` times `[0,1]`, coordinates
/// `(x1, x2, x3, z, 1-z)`, objective `x1 + 2 x2 + 4 z`.
pub fn prism_vertices() -> (Vec<GeometricVertex>, Vec<(usize, usize)>) {
    let mut verts = Vec::new();
    let mut coords = Vec::new();
    for z in 0..2 {
        for j in 0..3 {
            let mut tight = BTreeSet::new();
            for k in 0..3 {
                if k != j {
                    tight.insert(format!("y{}", k + 1));
                }
            }
            tight.insert(if z == 0 { "y4".to_string() } else { "y5".to_string() });
            let value = [1, 2, 0][j] + 4 * z;
            verts.push(GeometricVertex { tight, value });
            coords.push((j, z));
        }
    }
    let mut edges = Vec::new();
    for a in 0..6 {
        for b in a + 1..6 {
            let ((ja, za), (jb, zb)) = (coords[a], coords[b]);
            if (za == zb) != (ja == jb) {
                edges.push((a, b));
            }
        }
    }
    (verts, edges)
}

/// Directed arcs between the tight-set labels, from lower to higher objective.
pub fn geometric_arcs(verts: &[GeometricVertex], edges: &[(usize, usize)]) -> BTreeSet<(String, String)> {
    let fmt = |s: &BTreeSet<String>, order: &[&str]| -> String {
        let items: Vec<&str> = order.iter().copied().filter(|l| s.contains(*l)).collect();
        format!("{{{}}}", items.join(","))
    };
    let order = ["y1", "y2", "y3", "y4", "y5", "s1", "s2", "s3"];
    edges
        .iter()
        .map(|&(a, b)| {
            let (lo, hi) = if verts[a].value < verts[b].value { (a, b) } else { (b, a) };
            (fmt(&verts[lo].tight, &order), fmt(&verts[hi].tight, &order))
        })
        .collect()
}

/// Maximum number of internally disjoint `s`-`t` paths by exhaustive search
/// over families of simple paths.
pub fn brute_force_disjoint_paths(n: usize, arcs: &[(usize, usize)], s: usize, t: usize) -> usize {
    let mut out = vec![Vec::new(); n];
    for &(u, v) in arcs {
        out[u].push(v);
    }
    let mut paths: Vec<u32> = Vec::new();
    let mut direct = false;
    fn dfs(u: usize, t: usize, out: &[Vec<usize>], used: u32, inner: u32, paths: &mut Vec<u32>, direct: &mut bool, start: usize) {
        for &v in &out[u] {
            if v == t {
                if u == start {
                    *direct = true;
                } else {
                    paths.push(inner);
                }
            } else if used >> v & 1 == 0 {
                dfs(v, t, out, used | 1 << v, inner | 1 << v, paths, direct, start);
            }
        }
    }
    dfs(s, t, &out, 1 << s, 0, &mut paths, &mut direct, s);
    paths.sort_unstable();
    paths.dedup();
    // keep only inclusion-minimal internal sets; any family can use those instead
    let minimal: Vec<u32> =
        paths.iter().copied().filter(|&p| !paths.iter().any(|&q| q != p && q & p == q)).collect();
    let limit = out[s].len().min(arcs.iter().filter(|&&(_, v)| v == t).count()) - usize::from(direct);
    fn best(minimal: &[u32], from: usize, used: u32, count: usize, limit: usize, top: &mut usize) {
        if count > *top {
            *top = count;
        }
        if *top >= limit {
            return;
        }
        for i in from..minimal.len() {
            if minimal[i] & used == 0 {
                best(minimal, i + 1, used | minimal[i], count + 1, limit, top);
            }
        }
    }
    let mut top = 0;
    best(&minimal, 0, 0, 0, limit, &mut top);
    top + usize::from(direct)
}

/// Smallest set of internal nodes meeting every `s`-`t` path other than a
/// direct arc, by trying subsets in order of size.
pub fn brute_force_min_cut(n: usize, arcs: &[(usize, usize)], s: usize, t: usize) -> usize {
    let internal: Vec<usize> = (0..n).filter(|&v| v != s && v != t).collect();
    let mut best = usize::MAX;
    for mask in 0u32..(1 << internal.len()) {
        let size = mask.count_ones() as usize;
        if size >= best {
            continue;
        }
        let mut blocked = vec![false; n];
        for (k, &v) in internal.iter().enumerate() {
            if mask >> k & 1 == 1 {
                blocked[v] = true;
            }
        }
        let mut seen = vec![false; n];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &(a, b) in arcs {
                if a == u && !(a == s && b == t) && !seen[b] && !blocked[b] {
                    seen[b] = true;
                    stack.push(b);
                }
            }
        }
        if !seen[t] {
            best = size;
        }
    }
    best + usize::from(arcs.contains(&(s, t)))
}

/// Random simple digraph on `n` nodes with arc probability `p`; when `dag`,
/// arcs only go from lower to higher index.
pub fn random_digraph(rng: &mut ChaCha8Rng, n: usize, p: f64, dag: bool) -> Vec<(usize, usize)> {
    let mut arcs = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                if dag || rng.gen_bool(0.5) {
                    arcs.push((u, v));
                } else {
                    arcs.push((v, u));
                }
            }
        }
    }
    arcs
}
