//! Randomized comparison drivers shared by the integration tests and the
//! acceptance suite. Each returns a list of discrepancies.

use omp_core::exact::ratio;
use omp_core::holt_klee::max_independent_paths_between;
use omp_core::pomcp::{check_pomcp_holt_klee, check_property_p, complementarity_om, p_matrix_check, PomcpInstance};
use omp_core::{Digraph, OmError, RationalMatrix};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{brute_force_disjoint_paths, brute_force_min_cut, random_digraph};

/// Compare max-flow certificates with exhaustive search on `count` random
/// digraphs, alternating DAGs and general digraphs, with at most 12 nodes.
pub fn menger_discrepancies(seed: u64, count: usize) -> Vec<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bad = Vec::new();
    for i in 0..count {
        let n = rng.gen_range(2..=12);
        let p = rng.gen_range(0.2..0.6);
        let dag = i % 2 == 0;
        let arcs = random_digraph(&mut rng, n, p, dag);
        let (s, t) = (0, n - 1);
        let labels: Vec<String> = (0..n).map(|v| format!("v{v}")).collect();
        let mut d = Digraph::new("random", labels).unwrap();
        for &(u, v) in &arcs {
            d.add_arc(u, v).unwrap();
        }
        let expected = brute_force_disjoint_paths(n, &arcs, s, t);
        let cut = brute_force_min_cut(n, &arcs, s, t);
        if expected != cut {
            bad.push(format!("case {i}: oracle paths {expected} but oracle cut {cut}"));
        }
        match max_independent_paths_between(&d, s, t) {
            Ok(m) => {
                if m.k != expected || m.cut.size() != m.k || m.paths.paths.len() != m.k {
                    bad.push(format!(
                        "case {i} ({n} nodes, {arcs:?}): k={} cut={} paths={} oracle={expected}",
                        m.k,
                        m.cut.size(),
                        m.paths.paths.len()
                    ));
                }
            }
            Err(OmError::Unreachable { .. }) if expected == 0 => {}
            Err(e) => bad.push(format!("case {i}: {e}")),
        }
    }
    bad
}

/// Random square matrix with rational entries in `[-3, 3]`; when `dominant`,
/// strictly diagonally dominant with positive diagonal.
pub fn random_matrix(rng: &mut ChaCha8Rng, n: usize, dominant: bool) -> RationalMatrix {
    let mut m = RationalMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let den = rng.gen_range(1..=2);
            let num = if dominant && i != j {
                rng.gen_range(-2..=2)
            } else {
                rng.gen_range(-3 * den..=3 * den)
            };
            m.set(i, j, ratio(num, den));
        }
    }
    if dominant {
        for i in 0..n {
            let off: omp_core::Rational = (0..n).filter(|&j| j != i).map(|j| num::abs(m.get(i, j).clone())).sum();
            let diag = off + ratio(1, 2);
            m.set(i, i, diag.min(ratio(3, 1)).max(ratio(1, 2)));
        }
    }
    m
}

pub struct PomcpSummary {
    pub instances: usize,
    pub p_matrices: usize,
    pub faces_checked: usize,
    pub failures: Vec<String>,
}

/// Compare the principal-minor test with property (P) on `count` random
/// matrices, and run the cube checks on every P-matrix instance.
pub fn pomcp_sweep(seed: u64, count: usize) -> PomcpSummary {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut summary = PomcpSummary { instances: count, p_matrices: 0, faces_checked: 0, failures: Vec::new() };
    for i in 0..count {
        let n = rng.gen_range(1..=4);
        let m = random_matrix(&mut rng, n, i % 2 == 0);
        let p = p_matrix_check(&m).unwrap();
        let om = complementarity_om(&m).unwrap();
        let prop = check_property_p(&om).unwrap().is_none();
        if p != prop {
            summary.failures.push(format!("case {i}: P-matrix {p} but property (P) {prop} for\n{m}"));
        }
        if !p {
            continue;
        }
        summary.p_matrices += 1;
        let result = PomcpInstance::from_matrix(&m, None).and_then(|inst| check_pomcp_holt_klee(&inst));
        match result {
            Ok((_, report)) => {
                summary.faces_checked += report.faces_checked;
                if report.verdict.k != n || !report.verdict.holds {
                    summary.failures.push(format!("case {i}: k = {} for n = {n}", report.verdict.k));
                }
            }
            Err(e) => summary.failures.push(format!("case {i}: {e} for\n{m}")),
        }
    }
    summary
}
