//! Oriented matroids stored by their cocircuits.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;

use crate::chirotope::Chirotope;
use crate::error::{OmError, Result};
use crate::exact::{sign_of, RationalMatrix};
use crate::limits::check_cap;
use crate::sign::{canonical_set, ElementSet, GroundSet, Sign, SignVector};

pub struct OrientedMatroid {
    ground: GroundSet,
    rank: usize,
    cocircuits: Vec<SignVector>,
    chirotope: Option<Chirotope>,
    realization: Option<RationalMatrix>,
    circuits: OnceLock<Vec<SignVector>>,
    covectors: OnceLock<Vec<SignVector>>,
}

impl Clone for OrientedMatroid {
    fn clone(&self) -> Self {
        OrientedMatroid {
            ground: self.ground.clone(),
            rank: self.rank,
            cocircuits: self.cocircuits.clone(),
            chirotope: self.chirotope.clone(),
            realization: self.realization.clone(),
            circuits: self.circuits.clone(),
            covectors: self.covectors.clone(),
        }
    }
}

impl PartialEq for OrientedMatroid {
    fn eq(&self, other: &Self) -> bool {
        self.ground == other.ground && self.rank == other.rank && self.cocircuits == other.cocircuits
    }
}

impl Eq for OrientedMatroid {}

impl fmt::Debug for OrientedMatroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("OrientedMatroid")
            .field("labels", &self.ground.labels())
            .field("rank", &self.rank)
            .field("cocircuits", &self.cocircuits)
            .finish()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Axiom {
    /// The zero vector is a covector.
    Y0,
    /// Closure under negation.
    Y1,
    /// Closure under composition.
    Y2,
    /// Elimination.
    Y3,
    /// Declared cocircuits are exactly the minimal nonzero covectors.
    Minimality,
    /// Declared rank equals the length of a maximal covector chain.
    Rank,
}

#[derive(Debug, Clone, Serialize)]
pub struct Violation {
    pub axiom: Axiom,
    pub witnesses: Vec<SignVector>,
    pub detail: String,
}

/// Outcome of [`OrientedMatroid::verify_axioms`]. At most
/// [`AxiomReport::MAX_LISTED`] violations are listed; `total` counts all.
#[derive(Debug, Clone, Serialize)]
pub struct AxiomReport {
    pub covector_count: usize,
    pub chain_length: usize,
    pub violations: Vec<Violation>,
    pub total: usize,
}

impl AxiomReport {
    pub const MAX_LISTED: usize = 1000;

    pub fn passed(&self) -> bool {
        self.total == 0
    }

    fn push(&mut self, axiom: Axiom, witnesses: Vec<SignVector>, detail: String) {
        self.total += 1;
        if self.violations.len() < Self::MAX_LISTED {
            self.violations.push(Violation { axiom, witnesses, detail });
        }
    }
}

impl OrientedMatroid {
    /// OM whose covectors are the sign vectors of the row space of `m`.
    pub fn from_matrix(ground: GroundSet, m: RationalMatrix) -> Result<Self> {
        if ground.len() != m.ncols() {
            return Err(OmError::GroundMismatch { left: ground.len(), right: m.ncols() });
        }
        let actual = m.rank();
        if actual != m.nrows() {
            return Err(OmError::MatrixRank { expected: m.nrows(), actual });
        }
        let chirotope = Chirotope::from_matrix(&m)?;
        let cocircuits = chirotope.cocircuits();
        Ok(OrientedMatroid {
            ground,
            rank: m.nrows(),
            cocircuits,
            chirotope: Some(chirotope),
            realization: Some(m),
            circuits: OnceLock::new(),
            covectors: OnceLock::new(),
        })
    }

    /// Same as [`from_matrix`](Self::from_matrix) with labels `e1..en`.
    pub fn from_matrix_numbered(m: RationalMatrix) -> Result<Self> {
        Self::from_matrix(GroundSet::numbered(m.ncols()), m)
    }

    pub fn from_chirotope(ground: GroundSet, chirotope: Chirotope) -> Result<Self> {
        if ground.len() != chirotope.len() {
            return Err(OmError::GroundMismatch { left: ground.len(), right: chirotope.len() });
        }
        Ok(OrientedMatroid {
            ground,
            rank: chirotope.rank(),
            cocircuits: chirotope.cocircuits(),
            chirotope: Some(chirotope),
            realization: None,
            circuits: OnceLock::new(),
            covectors: OnceLock::new(),
        })
    }

    /// Store a cocircuit set without validating the axioms.
    pub fn from_cocircuits(ground: GroundSet, rank: usize, cocircuits: Vec<SignVector>) -> Result<Self> {
        if let Some(bad) = cocircuits.iter().find(|y| y.len() != ground.len()) {
            return Err(OmError::GroundMismatch { left: ground.len(), right: bad.len() });
        }
        let set = canonical_set(cocircuits.into_iter().filter(|y| !y.is_zero()));
        if set.is_empty() {
            return Err(OmError::EmptyCocircuits);
        }
        Ok(Self::raw(ground, rank, set))
    }

    /// Internal constructor: accepts an empty set (rank-0 minors and duals).
    pub(crate) fn raw(ground: GroundSet, rank: usize, cocircuits: Vec<SignVector>) -> Self {
        OrientedMatroid {
            ground,
            rank,
            cocircuits: canonical_set(cocircuits.into_iter().filter(|y| !y.is_zero())),
            chirotope: None,
            realization: None,
            circuits: OnceLock::new(),
            covectors: OnceLock::new(),
        }
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn labels(&self) -> &[String] {
        self.ground.labels()
    }

    pub fn len(&self) -> usize {
        self.ground.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ground.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.ground.index_of(label)
    }

    pub fn label(&self, i: usize) -> &str {
        self.ground.label(i)
    }

    /// Canonical cocircuits: one representative per `{Y, -Y}`, sorted.
    pub fn cocircuits(&self) -> &[SignVector] {
        &self.cocircuits
    }

    /// Every cocircuit with both signs.
    pub fn signed_cocircuits(&self) -> impl Iterator<Item = SignVector> + '_ {
        self.cocircuits.iter().flat_map(|&y| [y, -y])
    }

    pub fn chirotope(&self) -> Option<&Chirotope> {
        self.chirotope.as_ref()
    }

    pub fn realization(&self) -> Option<&RationalMatrix> {
        self.realization.as_ref()
    }

    /// Drop the cached chirotope and realization, keeping only cocircuits.
    pub fn without_accelerators(&self) -> Self {
        Self::raw(self.ground.clone(), self.rank, self.cocircuits.clone())
    }

    pub fn is_cocircuit(&self, y: &SignVector) -> bool {
        y.len() == self.len() && !y.is_zero() && self.cocircuits.binary_search(&y.canonical()).is_ok()
    }

    /// A sign vector is a vector iff it is orthogonal to every cocircuit.
    pub fn is_vector(&self, x: &SignVector) -> bool {
        x.len() == self.len() && self.cocircuits.iter().all(|y| x.orthogonal(y))
    }

    /// A sign vector is a covector iff it is orthogonal to every circuit.
    pub fn is_covector(&self, y: &SignVector) -> Result<bool> {
        if y.len() != self.len() {
            return Ok(false);
        }
        Ok(self.circuits()?.iter().all(|x| y.orthogonal(x)))
    }

    /// All covectors: closure of the cocircuits and zero under composition.
    pub fn covector_span(&self) -> Result<&[SignVector]> {
        if let Some(v) = self.covectors.get() {
            return Ok(v);
        }
        check_cap(self.len())?;
        let gens: Vec<SignVector> = self.signed_cocircuits().collect();
        let zero = SignVector::zero(self.len());
        let mut seen: HashSet<SignVector> = HashSet::from([zero]);
        let mut queue = VecDeque::from([zero]);
        while let Some(x) = queue.pop_front() {
            for c in &gens {
                let z = x.compose(c);
                if seen.insert(z) {
                    queue.push_back(z);
                }
            }
        }
        let mut all: Vec<SignVector> = seen.into_iter().collect();
        all.sort();
        let _ = self.covectors.set(all);
        Ok(self.covectors.get().expect("just set"))
    }

    /// Circuits, from the chirotope when available, otherwise by brute force.
    pub fn circuits(&self) -> Result<&[SignVector]> {
        if let Some(v) = self.circuits.get() {
            return Ok(v);
        }
        let computed = match &self.chirotope {
            Some(chi) => chi.circuits(),
            None => self.circuits_brute_force()?,
        };
        let _ = self.circuits.set(computed);
        Ok(self.circuits.get().expect("just set"))
    }

    /// Minimal nonzero sign vectors orthogonal to every cocircuit, by enumeration.
    pub fn circuits_brute_force(&self) -> Result<Vec<SignVector>> {
        let n = self.len();
        check_cap(n)?;
        let mut supports: Vec<u32> = (1..(1u32 << n)).collect();
        supports.sort_by_key(|s| (s.count_ones(), *s));
        let mut found: Vec<SignVector> = Vec::new();
        let mut found_supports: Vec<u32> = Vec::new();
        for s in supports {
            if found_supports.iter().any(|&c| ElementSet(c).is_subset(ElementSet(s))) {
                continue;
            }
            let elems = ElementSet(s).to_vec();
            let k = elems.len();
            // lowest element fixed to PLUS: one representative per sign pair
            for pattern in 0..(1u32 << (k - 1)) {
                let mut neg = ElementSet::EMPTY;
                for (j, &e) in elems.iter().enumerate().skip(1) {
                    if pattern >> (j - 1) & 1 == 1 {
                        neg.insert(e);
                    }
                }
                let x = SignVector::from_parts(n, ElementSet(s).difference(neg), neg);
                if self.is_vector(&x) {
                    found.push(x);
                    found_supports.push(s);
                }
            }
        }
        Ok(canonical_set(found))
    }

    /// Circuits computed from the chirotope, if one is stored.
    pub fn circuits_from_chirotope(&self) -> Option<Vec<SignVector>> {
        self.chirotope.as_ref().map(Chirotope::circuits)
    }

    /// Check the covector axioms on the span of the declared cocircuits.
    pub fn verify_axioms(&self) -> Result<AxiomReport> {
        let cov = self.covector_span()?;
        let n = self.len();
        let set: HashSet<SignVector> = cov.iter().copied().collect();
        let mut report = AxiomReport { covector_count: cov.len(), chain_length: 0, violations: Vec::new(), total: 0 };

        let zero = SignVector::zero(n);
        if !set.contains(&zero) {
            report.push(Axiom::Y0, vec![], "zero vector missing".into());
        }
        for x in cov {
            if !set.contains(&-*x) {
                report.push(Axiom::Y1, vec![*x], "negation missing".into());
            }
        }
        for x in cov {
            for y in cov {
                let z = x.compose(y);
                if !set.contains(&z) {
                    report.push(Axiom::Y2, vec![*x, *y], format!("composition {z} missing"));
                }
            }
        }
        self.check_elimination(cov, &mut report);

        // minimal nonzero covectors versus declared cocircuits
        let nonzero: Vec<&SignVector> = cov.iter().filter(|x| !x.is_zero()).collect();
        let minimal: Vec<SignVector> = canonical_set(
            nonzero
                .iter()
                .filter(|x| !nonzero.iter().any(|y| y.support() != x.support() && y.support().is_subset(x.support())))
                .map(|x| **x),
        );
        for y in &self.cocircuits {
            if minimal.binary_search(y).is_err() {
                report.push(Axiom::Minimality, vec![*y], "declared cocircuit is not support-minimal".into());
            }
        }
        for y in &minimal {
            if self.cocircuits.binary_search(y).is_err() {
                report.push(Axiom::Minimality, vec![*y], "minimal covector not declared as a cocircuit".into());
            }
        }

        report.chain_length = longest_chain(cov);
        if report.chain_length != self.rank {
            report.push(
                Axiom::Rank,
                vec![],
                format!("declared rank {} but maximal covector chains have length {}", self.rank, report.chain_length),
            );
        }
        Ok(report)
    }

    fn check_elimination(&self, cov: &[SignVector], report: &mut AxiomReport) {
        // For a pair X, Y and e in S(X,Y), a witness Z has Z_e = 0 and agrees with
        // X∘Y off S(X,Y). Witness sets are indexed by (S, e).
        let mut index: HashMap<(u32, usize), HashSet<(u32, u32)>> = HashMap::new();
        for (i, x) in cov.iter().enumerate() {
            for y in &cov[i + 1..] {
                let sep = x.separation(y);
                if sep.is_empty() {
                    continue;
                }
                let xy = x.compose(y);
                let key = (xy.positive().0 & !sep.0, xy.negative().0 & !sep.0);
                for e in sep.iter() {
                    let witnesses = index.entry((sep.0, e)).or_insert_with(|| {
                        cov.iter()
                            .filter(|z| z.get(e) == Sign::Zero)
                            .map(|z| (z.positive().0 & !sep.0, z.negative().0 & !sep.0))
                            .collect()
                    });
                    if !witnesses.contains(&key) {
                        report.push(
                            Axiom::Y3,
                            vec![*x, *y],
                            format!("no elimination witness at {}", self.label(e)),
                        );
                    }
                }
            }
        }
    }

    /// Rank of a subset, by greedy growth of an independent set.
    pub fn rank_of(&self, a: ElementSet) -> usize {
        self.independent_subset(a).len()
    }

    /// A maximal independent subset of `a`, chosen greedily in element order.
    pub fn independent_subset(&self, a: ElementSet) -> ElementSet {
        let mut indep = ElementSet::EMPTY;
        for e in a.iter() {
            if !self.in_closure(indep, e) {
                indep.insert(e);
            }
        }
        indep
    }

    /// `e ∈ cl(I)`: every cocircuit vanishing on `I` vanishes on `e`.
    pub fn in_closure(&self, indep: ElementSet, e: usize) -> bool {
        !self.cocircuits.iter().any(|y| y.get(e) != Sign::Zero && y.support().intersection(indep).is_empty())
    }

    pub fn closure(&self, a: ElementSet) -> ElementSet {
        let base = self.independent_subset(a);
        ElementSet::from_indices((0..self.len()).filter(|&e| self.in_closure(base, e)))
    }

    pub fn is_base(&self, b: ElementSet) -> bool {
        b.len() == self.rank && self.rank_of(b) == self.rank
    }

    /// All bases, in lexicographic order of their sorted element lists.
    pub fn bases(&self) -> Vec<ElementSet> {
        crate::chirotope::subsets(self.len(), self.rank)
            .map(ElementSet::from_indices)
            .filter(|&b| self.is_base(b))
            .collect()
    }

    pub fn is_loop(&self, e: usize) -> bool {
        self.cocircuits.iter().all(|y| y.get(e) == Sign::Zero)
    }

    pub fn is_coloop(&self, e: usize) -> bool {
        self.cocircuits.iter().any(|y| y.support() == ElementSet::singleton(e))
    }

    pub fn dual(&self) -> Result<OrientedMatroid> {
        if let Some(m) = &self.realization {
            let ns = m.nullspace();
            if ns.nrows() > 0 {
                return OrientedMatroid::from_matrix(self.ground.clone(), ns);
            }
        }
        let circuits = self.circuits()?.to_vec();
        let dual = Self::raw(self.ground.clone(), self.len() - self.rank, circuits);
        let _ = dual.circuits.set(self.cocircuits.clone());
        Ok(dual)
    }

    fn check_element(&self, e: usize) -> Result<()> {
        if e < self.len() {
            Ok(())
        } else {
            Err(OmError::UnknownElement(format!("index {e}")))
        }
    }

    /// Deletion `M \ e`.
    pub fn delete(&self, e: usize) -> Result<OrientedMatroid> {
        self.check_element(e)?;
        let ground = self.ground.without(e);
        if let Some(m) = &self.realization {
            let dropped = m.drop_column(e);
            let basis = if dropped.rank() == dropped.nrows() { dropped } else { dropped.row_space_basis() };
            if basis.nrows() > 0 {
                return OrientedMatroid::from_matrix(ground, basis);
            }
        }
        let restricted: Vec<SignVector> =
            self.cocircuits.iter().map(|y| y.delete(e)).filter(|y| !y.is_zero()).collect();
        let minimal: Vec<SignVector> = restricted
            .iter()
            .filter(|y| {
                !restricted.iter().any(|z| z.support() != y.support() && z.support().is_subset(y.support()))
            })
            .copied()
            .collect();
        let rank = if self.is_coloop(e) { self.rank - 1 } else { self.rank };
        Ok(Self::raw(ground, rank, minimal))
    }

    /// Contraction `M / e`.
    pub fn contract(&self, e: usize) -> Result<OrientedMatroid> {
        self.check_element(e)?;
        if self.is_loop(e) {
            return self.delete(e);
        }
        let ground = self.ground.without(e);
        if let Some(m) = &self.realization {
            if self.rank > 1 {
                let p = (0..m.nrows()).find(|&i| !num::Zero::is_zero(m.get(i, e))).expect("not a loop");
                let mut rows = Vec::new();
                for i in (0..m.nrows()).filter(|&i| i != p) {
                    let factor = m.get(i, e) / m.get(p, e);
                    rows.push((0..m.ncols()).map(|j| m.get(i, j) - &factor * m.get(p, j)).collect::<Vec<_>>());
                }
                let reduced = RationalMatrix::from_rows(rows)?.drop_column(e);
                return OrientedMatroid::from_matrix(ground, reduced);
            }
        }
        let cocircuits: Vec<SignVector> =
            self.cocircuits.iter().filter(|y| y.get(e) == Sign::Zero).map(|y| y.delete(e)).collect();
        Ok(Self::raw(ground, self.rank - 1, cocircuits))
    }

    pub fn delete_label(&self, label: &str) -> Result<OrientedMatroid> {
        self.delete(self.index_of(label)?)
    }

    pub fn contract_label(&self, label: &str) -> Result<OrientedMatroid> {
        self.contract(self.index_of(label)?)
    }

    /// Negate element `e` in every covector.
    pub fn reorient(&self, e: usize) -> Result<OrientedMatroid> {
        self.check_element(e)?;
        if let Some(m) = &self.realization {
            let mut flipped = m.clone();
            for i in 0..m.nrows() {
                flipped.set(i, e, -m.get(i, e));
            }
            return OrientedMatroid::from_matrix(self.ground.clone(), flipped);
        }
        Ok(Self::raw(self.ground.clone(), self.rank, self.cocircuits.iter().map(|y| y.reorient(e)).collect()))
    }

    /// The circuit with support in `B ∪ {p}`, signed so that `X_p = +`.
    pub fn fundamental_circuit(&self, base: ElementSet, p: usize) -> Result<SignVector> {
        self.check_element(p)?;
        if !self.is_base(base) {
            return Err(OmError::NotABase(self.ground.format_set(base)));
        }
        if base.contains(p) {
            return Err(OmError::InvalidInput(format!("{} is in the base", self.label(p))));
        }
        let allowed = base.with(p);
        self.circuits()?
            .iter()
            .flat_map(|&x| [x, -x])
            .find(|x| x.support().is_subset(allowed) && x.get(p) == Sign::Plus)
            .ok_or_else(|| OmError::Internal("fundamental circuit not found".into()))
    }

    /// The cocircuit with support in `(E \ B) ∪ {q}`, signed so that `Y_q = +`.
    pub fn fundamental_cocircuit(&self, base: ElementSet, q: usize) -> Result<SignVector> {
        self.check_element(q)?;
        if !self.is_base(base) {
            return Err(OmError::NotABase(self.ground.format_set(base)));
        }
        if !base.contains(q) {
            return Err(OmError::InvalidInput(format!("{} is not in the base", self.label(q))));
        }
        let rest = base.without(q);
        self.signed_cocircuits()
            .find(|y| y.support().intersection(rest).is_empty() && y.get(q) == Sign::Plus)
            .ok_or_else(|| OmError::Internal("fundamental cocircuit not found".into()))
    }

    /// Circuit witnessing `p ∈ conv(A)` (`positive`) or `-p ∈ conv(A)`.
    pub fn conv_witness(&self, p: usize, a: ElementSet, positive: bool) -> Result<Option<SignVector>> {
        self.check_element(p)?;
        if a.contains(p) {
            return Err(OmError::InvalidInput(format!("{} belongs to the set", self.label(p))));
        }
        let found = self.circuits()?.iter().flat_map(|&x| [x, -x]).find(|x| {
            if positive {
                x.negative() == ElementSet::singleton(p) && x.positive().is_subset(a)
            } else {
                x.negative().is_empty() && x.positive().contains(p) && x.positive().is_subset(a.with(p))
            }
        });
        Ok(found)
    }

    pub fn conv_membership(&self, p: usize, a: ElementSet, positive: bool) -> Result<bool> {
        Ok(self.conv_witness(p, a, positive)?.is_some())
    }
}

/// Length of a longest chain `0 < X1 < ... < Xk` in the conformal order.
fn longest_chain(cov: &[SignVector]) -> usize {
    let mut order: Vec<&SignVector> = cov.iter().collect();
    order.sort_by_key(|x| x.support().len());
    let mut best: Vec<usize> = vec![0; order.len()];
    let mut overall = 0;
    for i in 0..order.len() {
        let x = order[i];
        if x.is_zero() {
            continue;
        }
        let mut b = 1;
        for j in 0..i {
            let y = order[j];
            if y.support().len() < x.support().len() && y.conforms_to(x) && !y.is_zero() {
                b = b.max(best[j] + 1);
            }
        }
        best[i] = b;
        overall = overall.max(b);
    }
    overall
}

/// Signs of a rational vector.
pub fn sign_vector_of(values: &[crate::exact::Rational]) -> SignVector {
    SignVector::from_signs(&values.iter().map(sign_of).collect::<Vec<_>>())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::RationalMatrix;

    fn sv(s: &str) -> SignVector {
        s.parse().unwrap()
    }

    fn example() -> OrientedMatroid {
        OrientedMatroid::from_matrix_numbered(RationalMatrix::from_i64(&[&[1, 0, 1], &[0, 1, 1]])).unwrap()
    }

    #[test]
    fn matrix_example_cocircuits() {
        let m = example();
        assert_eq!(m.rank(), 2);
        assert_eq!(m.cocircuits(), canonical_set([sv("0++"), sv("+0+"), sv("+-0")]).as_slice());
        assert_eq!(m.covector_span().unwrap().len(), 13);
        assert_eq!(m.circuits().unwrap(), &[sv("++-")]);
        assert!(m.verify_axioms().unwrap().passed());
    }

    #[test]
    fn identity_is_coordinate() {
        let m = OrientedMatroid::from_matrix_numbered(RationalMatrix::identity(3)).unwrap();
        assert_eq!(m.cocircuits(), &[sv("+00"), sv("0+0"), sv("00+")]);
        assert!(m.circuits().unwrap().is_empty());
        assert_eq!(m.dual().unwrap().rank(), 0);
    }

    #[test]
    fn positive_row_scaling_is_invisible() {
        let scaled =
            OrientedMatroid::from_matrix_numbered(RationalMatrix::from_i64(&[&[3, 0, 3], &[0, 5, 5]])).unwrap();
        assert_eq!(scaled, example());
    }

    #[test]
    fn rank_mismatch_is_rejected() {
        let m = RationalMatrix::from_i64(&[&[1, 2], &[2, 4]]);
        assert!(matches!(
            OrientedMatroid::from_matrix_numbered(m),
            Err(OmError::MatrixRank { expected: 2, actual: 1 })
        ));
    }

    #[test]
    fn from_cocircuits_canonicalizes() {
        let g = GroundSet::numbered(3);
        let m = OrientedMatroid::from_cocircuits(g.clone(), 2, vec![sv("+-0"), sv("-+0"), sv("0++"), sv("+0+")]).unwrap();
        assert_eq!(m, example());
        assert!(matches!(OrientedMatroid::from_cocircuits(g.clone(), 2, vec![]), Err(OmError::EmptyCocircuits)));
        assert!(OrientedMatroid::from_cocircuits(g, 2, vec![sv("+-")]).is_err());
    }

    #[test]
    fn minimality_violation_reported() {
        let m = OrientedMatroid::from_cocircuits(GroundSet::numbered(3), 1, vec![sv("++0"), sv("+00")]).unwrap();
        let report = m.verify_axioms().unwrap();
        assert!(report.violations.iter().any(|v| v.axiom == Axiom::Minimality && v.witnesses == vec![sv("++0")]));
    }

    #[test]
    fn elimination_violation_reported() {
        // three vectors in a half-plane where no element separates the other two
        let m = OrientedMatroid::from_cocircuits(GroundSet::numbered(3), 2, vec![sv("0++"), sv("+0+"), sv("++0")])
            .unwrap();
        let report = m.verify_axioms().unwrap();
        assert!(report.violations.iter().any(|v| v.axiom == Axiom::Y3));
    }

    #[test]
    fn contraction_example() {
        let c = example().contract(2).unwrap();
        assert_eq!(c.rank(), 1);
        assert_eq!(c.cocircuits(), &[sv("+-")]);
        assert_eq!(c.labels(), &["e1", "e2"]);
    }

    #[test]
    fn deletion_and_contraction_without_realization_agree() {
        let m = example();
        let bare = m.without_accelerators();
        for e in 0..3 {
            assert_eq!(m.delete(e).unwrap(), bare.delete(e).unwrap());
            assert_eq!(m.contract(e).unwrap(), bare.contract(e).unwrap());
        }
    }

    #[test]
    fn rank_of_examples() {
        let m = example();
        assert_eq!(m.rank_of(ElementSet::full(3)), 2);
        assert_eq!(m.rank_of(ElementSet::EMPTY), 0);
        assert_eq!(m.rank_of(ElementSet::singleton(0)), 1);
    }

    #[test]
    fn fundamental_examples() {
        let m = example();
        let b = ElementSet::from_indices([0, 1]);
        assert_eq!(m.fundamental_circuit(b, 2).unwrap(), sv("--+"));
        assert_eq!(m.fundamental_cocircuit(b, 0).unwrap(), sv("+0+"));
        assert!(m.fundamental_circuit(ElementSet::singleton(0), 2).is_err());
        assert!(m.fundamental_cocircuit(b, 2).is_err());
    }

    #[test]
    fn conv_examples() {
        let m = example();
        assert!(m.conv_membership(2, ElementSet::from_indices([0, 1]), true).unwrap());
        assert!(!m.conv_membership(2, ElementSet::EMPTY, true).unwrap());
        assert!(m.conv_membership(2, ElementSet::singleton(2), true).is_err());
    }

    #[test]
    fn rank_one_single_element() {
        let m = OrientedMatroid::from_matrix_numbered(RationalMatrix::from_i64(&[&[1]])).unwrap();
        assert_eq!(m.covector_span().unwrap(), &[sv("+"), sv("0"), sv("-")]);
    }

    #[test]
    fn brute_force_refused_above_cap() {
        let n = crate::limits::brute_force_cap() + 1;
        let m = OrientedMatroid::raw(GroundSet::numbered(n), 1, vec![SignVector::zero(n).with(0, Sign::Plus)]);
        assert!(matches!(m.circuits_brute_force(), Err(OmError::CapExceeded { .. })));
    }
}
