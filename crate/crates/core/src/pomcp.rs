//! Subdivisions, their digraphs, property (P) and complementarity problems
//! over the cube subdivision.

use serde::Serialize;

use crate::digraph::Digraph;
use crate::error::{OmError, Result};
use crate::exact::{sign_of, RationalMatrix};
use crate::extension::{extend, is_general_position, localization_from_lex, LexRule, Localization};
use crate::holt_klee::{check_digraph, HoltKleeVerdict};
use crate::om::OrientedMatroid;
use crate::sign::{ElementSet, GroundSet, Sign, SignVector};

/// All principal minors positive.
pub fn p_matrix_check(m: &RationalMatrix) -> Result<bool> {
    let n = m.nrows();
    if m.ncols() != n {
        return Err(OmError::InvalidInput(format!("matrix is {}x{}, not square", n, m.ncols())));
    }
    for mask in 1u32..(1 << n) {
        let idx: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        if sign_of(&m.minor(&idx, &idx)) != Sign::Plus {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The oriented matroid whose circuits span the rows of `[M | I]`.
pub fn complementarity_om(m: &RationalMatrix) -> Result<OrientedMatroid> {
    let n = m.nrows();
    if m.ncols() != n {
        return Err(OmError::InvalidInput(format!("matrix is {}x{}, not square", n, m.ncols())));
    }
    let realization = RationalMatrix::identity(n).hstack(&m.transpose().neg())?;
    OrientedMatroid::from_matrix(GroundSet::numbered(2 * n), realization)
}

/// `None` when every circuit has a complementary pair `i, n+i` with equal
/// nonzero signs; otherwise a violating circuit.
pub fn check_property_p(om: &OrientedMatroid) -> Result<Option<SignVector>> {
    let len = om.len();
    if !len.is_multiple_of(2) || om.rank() * 2 != len {
        return Err(OmError::InvalidInput(format!(
            "property (P) needs rank n on 2n elements, got rank {} on {len}",
            om.rank()
        )));
    }
    let n = len / 2;
    Ok(om
        .circuits()?
        .iter()
        .find(|x| !(0..n).any(|i| x.get(i) != Sign::Zero && x.get(i) == x.get(n + i)))
        .copied())
}

/// Cells choosing one of `i`, `n+i` for every `i`, ordered by the bits of
/// their choice pattern (bit `i` set picks `n+i`).
pub fn cube_subdivision(n: usize) -> Vec<ElementSet> {
    (0u32..(1 << n))
        .map(|mask| ElementSet::from_indices((0..n).map(|i| if mask >> i & 1 == 1 { n + i } else { i })))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubdivisionReport {
    pub full_rank_cells: bool,
    pub common_faces: bool,
    pub facets_shared: bool,
    pub no_nonnegative_cocircuit: bool,
    /// Result of the covering condition over the sampled extensions only.
    pub covering_sampled: bool,
    pub extensions_sampled: usize,
    pub violations: Vec<String>,
}

impl SubdivisionReport {
    /// All exactly checked conditions pass (the sampled condition is reported separately).
    pub fn passes_exact_checks(&self) -> bool {
        self.full_rank_cells && self.common_faces && self.facets_shared && self.no_nonnegative_cocircuit
    }
}

/// Faces of the restriction to `cell`: complements within the cell of the
/// supports of its nonnegative covectors.
fn restriction_faces(covectors: &[SignVector], cell: ElementSet) -> Vec<ElementSet> {
    let mut faces: Vec<ElementSet> = covectors
        .iter()
        .filter(|y| y.is_nonnegative_on(cell))
        .map(|y| cell.difference(y.support()))
        .collect();
    faces.sort();
    faces.dedup();
    faces
}

/// Lexicographic extensions `[b1+, ..., bk+]` over every base, in order.
pub fn default_extension_sample(om: &OrientedMatroid, label: &str) -> Result<Vec<Localization>> {
    om.bases()
        .into_iter()
        .map(|b| {
            let labels: Vec<&str> = b.iter().map(|i| om.label(i)).collect();
            localization_from_lex(om, &LexRule::positive(&labels), label)
        })
        .collect()
}

pub fn validate_subdivision(
    om: &OrientedMatroid,
    cells: &[ElementSet],
    sample: &[Localization],
) -> Result<SubdivisionReport> {
    let r = om.rank();
    let mut violations = Vec::new();
    let fmt = |s: ElementSet| om.ground().format_set(s);

    let mut full_rank_cells = true;
    for &c in cells {
        if om.rank_of(c) != r {
            full_rank_cells = false;
            violations.push(format!("cell {} has rank {}, expected {r}", fmt(c), om.rank_of(c)));
        }
    }

    let covectors = om.covector_span()?;
    let faces: Vec<Vec<ElementSet>> = cells.iter().map(|&c| restriction_faces(covectors, c)).collect();
    let mut common_faces = true;
    for i in 0..cells.len() {
        for j in i + 1..cells.len() {
            let meet = cells[i].intersection(cells[j]);
            if !faces[i].contains(&meet) || !faces[j].contains(&meet) {
                common_faces = false;
                violations.push(format!("{} and {} meet outside a common face", fmt(cells[i]), fmt(cells[j])));
            }
        }
    }

    let nonneg: Vec<SignVector> = om.signed_cocircuits().filter(|y| y.is_nonnegative()).collect();
    let no_nonnegative_cocircuit = nonneg.is_empty();
    if let Some(y) = nonneg.first() {
        violations.push(format!("nonnegative cocircuit {y}"));
    }
    let outer_facets: Vec<ElementSet> = nonneg.iter().map(|y| y.zero_set()).collect();

    let mut facets_shared = true;
    for (i, &c) in cells.iter().enumerate() {
        for &facet in faces[i].iter().filter(|&&f| r >= 1 && om.rank_of(f) + 1 == r) {
            if outer_facets.iter().any(|&o| facet.is_subset(o)) {
                continue;
            }
            let holders = cells.iter().filter(|&&d| facet.is_subset(d)).count();
            if holders != 2 {
                facets_shared = false;
                violations.push(format!("facet {} of cell {} lies in {holders} cells", fmt(facet), fmt(c)));
            }
        }
    }

    let mut covering_sampled = true;
    for sigma in sample {
        let ext = extend(om, sigma)?;
        let f = ext.len() - 1;
        let covered: Vec<bool> =
            cells.iter().map(|&c| ext.conv_membership(f, c, true)).collect::<Result<_>>()?;
        for i in 0..cells.len() {
            for j in i + 1..cells.len() {
                if covered[i] && covered[j] && !ext.conv_membership(f, cells[i].intersection(cells[j]), true)? {
                    covering_sampled = false;
                    violations.push(format!(
                        "extension {} is covered by {} and {} but not by their meet",
                        sigma.label(),
                        fmt(cells[i]),
                        fmt(cells[j])
                    ));
                }
            }
        }
    }

    Ok(SubdivisionReport {
        full_rank_cells,
        common_faces,
        facets_shared,
        no_nonnegative_cocircuit,
        covering_sampled,
        extensions_sampled: sample.len(),
        violations,
    })
}

/// The digraph of a subdivision oriented by a new element.
#[derive(Debug, Clone)]
pub struct SubdivisionDigraph {
    pub digraph: Digraph,
    pub cells: Vec<ElementSet>,
    /// The extended oriented matroid; the new element is last.
    pub extension: OrientedMatroid,
}

pub fn subdivision_digraph(om: &OrientedMatroid, cells: &[ElementSet], sigma: &Localization) -> Result<SubdivisionDigraph> {
    let ext = extend(om, sigma)?;
    let f = ext.len() - 1;
    if !is_general_position(&ext, f)? {
        return Err(OmError::NotGeneralPosition(sigma.label().to_string()));
    }
    let r = om.rank();
    let fmt = |s: ElementSet| om.ground().format_set(s);
    let mut d = Digraph::new("subdivision", cells.iter().map(|&c| fmt(c)))?;
    for i in 0..cells.len() {
        for j in i + 1..cells.len() {
            let meet = cells[i].intersection(cells[j]);
            if r < 1 || om.rank_of(meet) + 1 != r {
                continue;
            }
            let y = ext
                .signed_cocircuits()
                .find(|y| y.get(f) == Sign::Plus && y.support().intersection(meet).is_empty())
                .ok_or_else(|| OmError::Internal(format!("no cocircuit through {}", fmt(meet))))?;
            let (a, b) = (cells[i].difference(cells[j]), cells[j].difference(cells[i]));
            if a.is_subset(y.positive()) && b.is_subset(y.negative()) {
                d.add_arc(i, j)?;
            } else if b.is_subset(y.positive()) && a.is_subset(y.negative()) {
                d.add_arc(j, i)?;
            } else {
                return Err(OmError::InvalidInput(format!(
                    "cells {} and {} are not separated by their common ridge",
                    fmt(cells[i]),
                    fmt(cells[j])
                )));
            }
        }
    }
    d.detect_source_sink()?;
    let n = ext.len();
    let covers = |pos: fn(ElementSet, usize) -> ElementSet, neg: fn(usize) -> ElementSet| -> Vec<usize> {
        (0..cells.len())
            .filter(|&i| ext.is_vector(&SignVector::from_parts(n, pos(cells[i], f), neg(f))))
            .collect()
    };
    let source_cover = covers(|c, _| c, ElementSet::singleton);
    let sink_cover = covers(|c, f| c.with(f), |_| ElementSet::EMPTY);
    if source_cover != [d.source().unwrap()] || sink_cover != [d.sink().unwrap()] {
        return Err(OmError::SourceSink(format!(
            "covering cells {:?} / {:?} disagree with the digraph's source and sink",
            source_cover, sink_cover
        )));
    }
    Ok(SubdivisionDigraph { digraph: d, cells: cells.to_vec(), extension: ext })
}

/// Check every face of the cube (a partial choice of one element per
/// complementary pair) induces a subdigraph with one sink and one source.
/// Returns the number of faces checked.
pub fn check_cube_face_sinks(sd: &SubdivisionDigraph, n: usize) -> Result<usize> {
    let mut checked = 0;
    // each pair is free (0), fixed low (1) or fixed high (2)
    for code in 0..3usize.pow(n as u32) {
        let mut c = code;
        let mut low = ElementSet::EMPTY;
        for i in 0..n {
            match c % 3 {
                1 => low.insert(i),
                2 => low.insert(n + i),
                _ => {}
            }
            c /= 3;
        }
        let members: Vec<usize> = (0..sd.cells.len()).filter(|&k| low.is_subset(sd.cells[k])).collect();
        let sinks = sd.digraph.induced_sinks(&members);
        let sources = sd.digraph.induced_sources(&members);
        if sinks.len() != 1 || sources.len() != 1 {
            return Err(OmError::SourceSink(format!(
                "cube face fixing {:?} has {} sinks and {} sources",
                low.to_vec(),
                sinks.len(),
                sources.len()
            )));
        }
        checked += 1;
    }
    Ok(checked)
}

/// A complementarity problem: the oriented matroid of `[M | I]` and an
/// extension by the new element `f`.
#[derive(Debug, Clone)]
pub struct PomcpInstance {
    pub matrix: RationalMatrix,
    pub om: OrientedMatroid,
    pub rule: LexRule,
    pub localization: Localization,
}

impl PomcpInstance {
    /// Defaults to the positive lexicographic rule over the first base.
    pub fn from_matrix(m: &RationalMatrix, rule: Option<LexRule>) -> Result<Self> {
        let om = complementarity_om(m)?;
        let rule = match rule {
            Some(r) => r,
            None => {
                let base = om.bases().into_iter().next().ok_or_else(|| OmError::InvalidInput("no base".into()))?;
                let labels: Vec<&str> = base.iter().map(|i| om.label(i)).collect();
                LexRule::positive(&labels)
            }
        };
        let localization = localization_from_lex(&om, &rule, "f")?;
        Ok(PomcpInstance { matrix: m.clone(), om, rule, localization })
    }

    pub fn n(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn digraph(&self) -> Result<SubdivisionDigraph> {
        subdivision_digraph(&self.om, &cube_subdivision(self.n()), &self.localization)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PomcpReport {
    pub n: usize,
    pub p_matrix: bool,
    pub property_p: bool,
    pub faces_checked: usize,
    pub verdict: HoltKleeVerdict,
}

/// Build the cube digraph of a property-(P) instance, check unique sinks on
/// every face and count independent monotone paths (expected: `n`).
pub fn check_pomcp_holt_klee(instance: &PomcpInstance) -> Result<(SubdivisionDigraph, PomcpReport)> {
    if let Some(x) = check_property_p(&instance.om)? {
        return Err(OmError::InvalidInput(format!("property (P) fails at circuit {x}")));
    }
    let sd = instance.digraph()?;
    let faces_checked = check_cube_face_sinks(&sd, instance.n())?;
    let verdict = check_digraph(&sd.digraph, instance.n())?;
    let report = PomcpReport {
        n: instance.n(),
        p_matrix: p_matrix_check(&instance.matrix)?,
        property_p: true,
        faces_checked,
        verdict,
    };
    Ok((sd, report))
}
