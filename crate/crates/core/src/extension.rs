//! Single-element extensions given by localizations (signings of cocircuits).

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{OmError, Result};
use crate::om::OrientedMatroid;
use crate::program::OmProgram;
use crate::sign::{ElementSet, Sign, SignVector};

/// A signing of the cocircuits of an oriented matroid, with `σ(-Y) = -σ(Y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Localization {
    label: String,
    entries: Vec<(SignVector, Sign)>,
}

impl Localization {
    /// Evaluate `sign` on every canonical cocircuit of `om`.
    pub fn from_fn(om: &OrientedMatroid, label: &str, mut sign: impl FnMut(&SignVector) -> Sign) -> Self {
        let entries = om.cocircuits().iter().map(|y| (*y, sign(y))).collect();
        Localization { label: label.to_string(), entries }
    }

    /// Signs aligned with `om.cocircuits()`.
    pub fn from_signs(om: &OrientedMatroid, label: &str, signs: &[Sign]) -> Result<Self> {
        if signs.len() != om.cocircuits().len() {
            return Err(OmError::InvalidLocalization(format!(
                "{} signs given for {} cocircuits",
                signs.len(),
                om.cocircuits().len()
            )));
        }
        let entries = om.cocircuits().iter().copied().zip(signs.iter().copied()).collect();
        Ok(Localization { label: label.to_string(), entries })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: &str) -> Self {
        self.label = label.to_string();
        self
    }

    /// `σ(Y)` for a cocircuit of either sign; `None` if `Y` is not signed here.
    pub fn sign(&self, y: &SignVector) -> Option<Sign> {
        let c = y.canonical();
        let i = self.entries.binary_search_by(|(z, _)| z.cmp(&c)).ok()?;
        let s = self.entries[i].1;
        Some(if c == *y { s } else { -s })
    }

    /// Signs aligned with the canonical cocircuit order.
    pub fn signs(&self) -> Vec<Sign> {
        self.entries.iter().map(|(_, s)| *s).collect()
    }

    pub fn entries(&self) -> &[(SignVector, Sign)] {
        &self.entries
    }

    /// The localization of the reoriented new element.
    pub fn negated(&self) -> Self {
        Localization { label: self.label.clone(), entries: self.entries.iter().map(|(y, s)| (*y, -*s)).collect() }
    }

    pub fn is_identically_zero(&self) -> bool {
        self.entries.iter().all(|(_, s)| s.is_zero())
    }

    fn check_base(&self, om: &OrientedMatroid) -> Result<()> {
        let matches = self.entries.len() == om.cocircuits().len()
            && self.entries.iter().zip(om.cocircuits()).all(|((a, _), b)| a == b);
        if matches {
            Ok(())
        } else {
            Err(OmError::InvalidLocalization("signing does not match the cocircuits of the oriented matroid".into()))
        }
    }
}

/// Ordered signed element list `[e1^s1, ..., ek^sk]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LexRule {
    pub entries: Vec<(String, Sign)>,
}

impl LexRule {
    pub fn new<S: Into<String>>(entries: impl IntoIterator<Item = (S, Sign)>) -> Self {
        LexRule { entries: entries.into_iter().map(|(e, s)| (e.into(), s)).collect() }
    }

    /// All-positive rule over the given labels.
    pub fn positive<S: AsRef<str>>(labels: &[S]) -> Self {
        LexRule::new(labels.iter().map(|l| (l.as_ref().to_string(), Sign::Plus)))
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

impl fmt::Display for LexRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|(e, s)| format!("{e}{s}")).collect();
        write!(f, "lex:{}", parts.join(","))
    }
}

impl FromStr for LexRule {
    type Err = OmError;

    /// Parses `lex:e1+,e4-,e2+`.
    fn from_str(s: &str) -> Result<Self> {
        let err = |column: usize, message: String| OmError::Parse { line: 0, column, message };
        let body = s.strip_prefix("lex:").ok_or_else(|| err(1, format!("expected `lex:` prefix in {s:?}")))?;
        let mut entries = Vec::new();
        let mut column = 5;
        for part in body.split(',') {
            let part_trim = part.trim();
            let mut chars = part_trim.chars();
            let last = chars.next_back().ok_or_else(|| err(column, "empty rule entry".into()))?;
            let sign = match last {
                '+' => Sign::Plus,
                '-' => Sign::Minus,
                other => return Err(err(column + part.len() - 1, format!("expected + or - after element, got {other:?}"))),
            };
            let label = chars.as_str();
            if label.is_empty() {
                return Err(err(column, "missing element label".into()));
            }
            entries.push((label.to_string(), sign));
            column += part.len() + 1;
        }
        Ok(LexRule { entries })
    }
}

/// `σ(Y) = s_i Y_{e_i}` for the first `i` with `Y_{e_i} ≠ 0`, else zero.
pub fn localization_from_lex(om: &OrientedMatroid, rule: &LexRule, label: &str) -> Result<Localization> {
    if rule.is_empty() {
        return Err(OmError::InvalidInput("empty lexicographic rule".into()));
    }
    let mut resolved = Vec::with_capacity(rule.entries.len());
    for (l, s) in &rule.entries {
        let i = om.index_of(l)?;
        if resolved.iter().any(|&(j, _)| j == i) {
            return Err(OmError::InvalidInput(format!("element {l} repeated in lexicographic rule")));
        }
        resolved.push((i, *s));
    }
    Ok(Localization::from_fn(om, label, |y| {
        resolved.iter().find(|(e, _)| y.get(*e) != Sign::Zero).map_or(Sign::Zero, |(e, s)| y.get(*e).mul(*s))
    }))
}

#[derive(Debug, Clone, Serialize)]
pub struct LocalizationViolation {
    /// Elements of the corank-2 flat (empty for global violations).
    pub flat: Vec<String>,
    /// Cocircuits vanishing on the flat, in cyclic order, with their signs.
    pub cycle: Vec<(SignVector, Sign)>,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct LocalizationReport {
    pub flats_checked: usize,
    pub violations: Vec<LocalizationViolation>,
}

impl LocalizationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Corank-2 flats, each as the set of signed cocircuits vanishing on it.
fn corank_two_flats(om: &OrientedMatroid) -> Vec<(ElementSet, Vec<SignVector>)> {
    let r = om.rank();
    if r < 2 {
        return Vec::new();
    }
    let coc = om.cocircuits();
    let mut rank_cache: HashMap<u32, usize> = HashMap::new();
    let mut flats: Vec<ElementSet> = Vec::new();
    for (i, a) in coc.iter().enumerate() {
        for b in &coc[i + 1..] {
            let f = a.zero_set().intersection(b.zero_set());
            let rk = *rank_cache.entry(f.0).or_insert_with(|| om.rank_of(f));
            if rk == r - 2 && !flats.contains(&f) {
                flats.push(f);
            }
        }
    }
    flats.sort();
    flats
        .into_iter()
        .map(|f| (f, om.signed_cocircuits().filter(|y| f.is_subset(y.zero_set())).collect()))
        .collect()
}

/// Order the cocircuits of a rank-2 contraction around their cycle.
fn cyclic_order(cocircuits: &[SignVector]) -> Option<Vec<SignVector>> {
    let adjacent = |x: &SignVector, y: &SignVector| *x != *y && *x != -*y && x.separation(y).is_empty();
    let first = *cocircuits.first()?;
    let mut order = vec![first];
    let mut prev: Option<SignVector> = None;
    let mut cur = first;
    loop {
        let neighbours: Vec<SignVector> = cocircuits.iter().copied().filter(|y| adjacent(&cur, y)).collect();
        if neighbours.len() != 2 {
            return None;
        }
        let next = if Some(neighbours[0]) == prev { neighbours[1] } else { neighbours[0] };
        if next == first {
            break;
        }
        if order.contains(&next) || order.len() > cocircuits.len() {
            return None;
        }
        order.push(next);
        prev = Some(cur);
        cur = next;
    }
    (order.len() == cocircuits.len()).then_some(order)
}

/// Whether a cyclic sign sequence (antipodally symmetric) is a rank-2 localization.
fn valid_rank_two_pattern(signs: &[Sign]) -> bool {
    let zeros: Vec<usize> = (0..signs.len()).filter(|&i| signs[i].is_zero()).collect();
    if zeros.len() == signs.len() {
        return true;
    }
    let half = signs.len() / 2;
    match zeros.len() {
        0 => {
            let changes = (0..signs.len()).filter(|&i| signs[i] != signs[(i + 1) % signs.len()]).count();
            changes == 2
        }
        2 if zeros[1] - zeros[0] == half => {
            let arc = |from: usize| -> Vec<Sign> { (1..half).map(|k| signs[(from + k) % signs.len()]).collect() };
            let a = arc(zeros[0]);
            let b = arc(zeros[1]);
            a.iter().all(|&s| s == a[0]) && b.iter().all(|&s| s == b[0]) && a[0] != b[0]
        }
        _ => false,
    }
}

/// Check the signing on every rank-2 contraction.
pub fn validate_localization(om: &OrientedMatroid, sigma: &Localization) -> LocalizationReport {
    let mut report = LocalizationReport { flats_checked: 0, violations: Vec::new() };
    if let Err(e) = sigma.check_base(om) {
        report.violations.push(LocalizationViolation { flat: vec![], cycle: vec![], detail: e.to_string() });
        return report;
    }
    if om.rank() >= 1 && sigma.is_identically_zero() {
        report.violations.push(LocalizationViolation {
            flat: vec![],
            cycle: vec![],
            detail: "signing is identically zero: the new element would be a loop".into(),
        });
    }
    for (flat, cocircuits) in corank_two_flats(om) {
        report.flats_checked += 1;
        let labels: Vec<String> = flat.iter().map(|e| om.label(e).to_string()).collect();
        let Some(order) = cyclic_order(&cocircuits) else {
            report.violations.push(LocalizationViolation {
                flat: labels,
                cycle: cocircuits.iter().map(|y| (*y, sigma.sign(y).unwrap_or(Sign::Zero))).collect(),
                detail: "cocircuits of the rank-2 contraction do not form a cycle".into(),
            });
            continue;
        };
        let signs: Vec<Sign> = order.iter().map(|y| sigma.sign(y).expect("signed cocircuit")).collect();
        if !valid_rank_two_pattern(&signs) {
            report.violations.push(LocalizationViolation {
                flat: labels,
                cycle: order.into_iter().zip(signs).collect(),
                detail: "no consistent insertion point for the new element".into(),
            });
        }
    }
    report
}

/// The single-element extension defined by a valid localization; the new element is appended.
pub fn extend(om: &OrientedMatroid, sigma: &Localization) -> Result<OrientedMatroid> {
    let report = validate_localization(om, sigma);
    if let Some(v) = report.violations.first() {
        let at = if v.flat.is_empty() { String::new() } else { format!(" at flat {{{}}}", v.flat.join(",")) };
        return Err(OmError::InvalidLocalization(format!("{}{at}", v.detail)));
    }
    Ok(extend_unchecked(om, sigma))
}

pub(crate) fn extend_unchecked(om: &OrientedMatroid, sigma: &Localization) -> OrientedMatroid {
    let ground = om.ground().with_label(sigma.label()).expect("fresh label");
    let r = om.rank();
    let mut cocircuits: Vec<SignVector> =
        om.cocircuits().iter().map(|y| y.push(sigma.sign(y).expect("signed cocircuit"))).collect();
    let plus: Vec<SignVector> = om.signed_cocircuits().filter(|y| sigma.sign(y) == Some(Sign::Plus)).collect();
    let minus: Vec<SignVector> = om.signed_cocircuits().filter(|y| sigma.sign(y) == Some(Sign::Minus)).collect();
    let mut rank_cache: HashMap<u32, usize> = HashMap::new();
    for a in &plus {
        for b in &minus {
            if *a == -*b || !a.separation(b).is_empty() {
                continue;
            }
            let f = a.zero_set().intersection(b.zero_set());
            let rk = *rank_cache.entry(f.0).or_insert_with(|| om.rank_of(f));
            if r >= 2 && rk == r - 2 {
                cocircuits.push(a.compose(b).push(Sign::Zero));
            }
        }
    }
    OrientedMatroid::raw(ground, r, cocircuits)
}

/// Every circuit through `e` has `rank + 1` elements.
pub fn is_general_position(om: &OrientedMatroid, e: usize) -> Result<bool> {
    if e >= om.len() {
        return Err(OmError::UnknownElement(format!("index {e}")));
    }
    let r = om.rank();
    Ok(om.circuits()?.iter().all(|x| x.get(e) == Sign::Zero || x.support().len() == r + 1))
}

/// Lift a localization of `M/{f,g}` to one of `M/g`: copy `f` where it is
/// nonzero, otherwise defer to `tilde`.
pub fn lift_extension(program: &OmProgram, tilde: &Localization) -> Result<Localization> {
    let mg = program.contract_g()?;
    let mfg = program.contract_fg()?;
    let report = validate_localization(mfg, tilde);
    if !report.is_valid() {
        return Err(OmError::InvalidLocalization(format!(
            "localization of the contraction by objective and right-hand side: {}",
            report.violations[0].detail
        )));
    }
    let f = mg.index_of(program.f_label())?;
    let mut missing = None;
    let sigma = Localization::from_fn(mg, tilde.label(), |y| {
        let yf = y.get(f);
        if yf != Sign::Zero {
            return yf;
        }
        let restricted = y.delete(f);
        tilde.sign(&restricted).unwrap_or_else(|| {
            missing = Some(restricted);
            Sign::Zero
        })
    });
    if let Some(y) = missing {
        return Err(OmError::Internal(format!("{y} is not a cocircuit of the double contraction")));
    }
    let lifted = validate_localization(mg, &sigma);
    if !lifted.is_valid() {
        return Err(OmError::Internal(format!("lifted localization invalid: {}", lifted.violations[0].detail)));
    }
    Ok(sigma)
}

/// A localization of `M/g` whose new element perturbs `e`: lexicographic
/// `[e+, b2+, ...]` over a base of `M\f/g` through `e`.
pub fn perturbation_extension(program: &OmProgram, e: &str, label: &str) -> Result<Localization> {
    let mg = program.contract_g()?;
    let ei = mg.index_of(e)?;
    let fi = mg.index_of(program.f_label())?;
    if ei == fi {
        return Err(OmError::InvalidInput("the perturbed element must not be the objective".into()));
    }
    if mg.is_loop(ei) {
        return Err(OmError::InvalidInput(format!("{e} is a loop")));
    }
    let mut base = ElementSet::singleton(ei);
    let mut order = vec![ei];
    for x in (0..mg.len()).filter(|&x| x != ei && x != fi) {
        if !mg.in_closure(base, x) {
            base.insert(x);
            order.push(x);
        }
    }
    let labels: Vec<&str> = order.iter().map(|&i| mg.label(i)).collect();
    let sigma = localization_from_lex(mg, &LexRule::positive(&labels), label)?;
    let ext = extend(mg, &sigma)?;
    let h = ext.len() - 1;
    for y in ext.cocircuits() {
        let (ye, yh) = (y.get(ei), y.get(h));
        if ye != Sign::Zero && yh != Sign::Zero && ye != yh {
            return Err(OmError::Internal(format!("perturbation cocircuit {y} has opposite signs on {e} and {label}")));
        }
    }
    Ok(sigma)
}
