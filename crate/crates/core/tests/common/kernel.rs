//! Property checks for the oriented matroid kernel and the matrix families
//! they run on.

use itertools::Itertools;
use omp_core::sign::canonical_set;
use omp_core::{ElementSet, OrientedMatroid, RationalMatrix, SignVector};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

fn same(a: &[SignVector], b: &[SignVector]) -> bool {
    canonical_set(a.iter().copied()) == canonical_set(b.iter().copied())
}

/// Every `[I | A]` with `A` over {-1,0,1}, for all ranks `1..n`.
pub fn exhaustive_small(n: usize) -> Vec<RationalMatrix> {
    let mut out = Vec::new();
    for r in 1..n {
        let free = r * (n - r);
        for code in 0..3usize.pow(free as u32) {
            let mut c = code;
            let rows: Vec<Vec<i64>> = (0..r)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            if j < r {
                                (i == j) as i64
                            } else {
                                let v = (c % 3) as i64 - 1;
                                c /= 3;
                                v
                            }
                        })
                        .collect()
                })
                .collect();
            let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
            out.push(RationalMatrix::from_i64(&refs));
        }
    }
    out
}

/// Random full-row-rank `r x n` integer matrix with entries in `[-bound, bound]`
/// and shuffled columns.
pub fn random_full_rank(rng: &mut ChaCha8Rng, r: usize, n: usize, bound: i64) -> RationalMatrix {
    loop {
        let mut cols: Vec<usize> = (0..n).collect();
        cols.shuffle(rng);
        let rows: Vec<Vec<i64>> = (0..r).map(|_| (0..n).map(|_| rng.gen_range(-bound..=bound)).collect()).collect();
        let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
        let m = RationalMatrix::from_i64(&refs).select_columns(&cols);
        if m.rank() == r {
            return m;
        }
    }
}

/// Failed properties of the OM of `m`, described for assertion messages.
pub fn kernel_failures(m: &RationalMatrix) -> Vec<String> {
    let mut fails = Vec::new();
    let om = OrientedMatroid::from_matrix_numbered(m.clone()).unwrap();
    let plain = om.without_accelerators();
    let report = plain.verify_axioms().unwrap();
    if !report.passed() {
        fails.push(format!("{} axiom violations, first {:?}", report.total, report.violations.first()));
    }
    let circuits = om.circuits().unwrap().to_vec();
    if !same(&circuits, plain.circuits().unwrap()) {
        fails.push("circuits from the matrix differ from circuits derived from cocircuits".into());
    }
    for x in &circuits {
        for y in om.cocircuits() {
            if !x.orthogonal(y) {
                fails.push(format!("circuit {x} not orthogonal to cocircuit {y}"));
            }
        }
    }
    let dual = om.dual().unwrap();
    if !same(dual.cocircuits(), &circuits) || !same(dual.dual().unwrap().cocircuits(), om.cocircuits()) {
        fails.push("dual is not an involution".into());
    }
    let plain_dual = plain.dual().unwrap();
    if !same(plain_dual.dual().unwrap().cocircuits(), om.cocircuits()) {
        fails.push("combinatorial dual is not an involution".into());
    }
    for e in 0..om.len() {
        let lhs = om.delete(e).unwrap().dual().unwrap();
        let rhs = dual.contract(e).unwrap();
        if lhs.rank() != rhs.rank() || !same(lhs.cocircuits(), rhs.cocircuits()) {
            fails.push(format!("(M\\{e})* differs from M*/{e}"));
        }
        let lhs = plain.delete(e).unwrap().dual().unwrap();
        let rhs = plain_dual.contract(e).unwrap();
        if !same(lhs.cocircuits(), rhs.cocircuits()) {
            fails.push(format!("combinatorial (M\\{e})* differs from M*/{e}"));
        }
    }
    for base in om.bases() {
        let outside = ElementSet::full(om.len()).difference(base);
        for (p, q) in outside.iter().cartesian_product(base.to_vec()) {
            let x = om.fundamental_circuit(base, p).unwrap();
            let y = om.fundamental_cocircuit(base, q).unwrap();
            if !x.orthogonal(&y) {
                fails.push(format!("fundamental circuit {x} and cocircuit {y} not orthogonal"));
            }
        }
    }
    fails
}
