//! Sign vectors over a small finite ground set.
//!
//! A [`SignVector`] stores its entries as a pair of bitmasks (positive and
//! negative parts), one tri-state entry per ground-set index. Ground sets are
//! capped at [`MAX_GROUND`] elements.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::Neg;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{OmError, Result};

/// Hard upper bound on ground-set size imposed by the bitmask storage.
pub const MAX_GROUND: usize = 32;

/// Default configured cap on ground-set size.
pub const DEFAULT_GROUND_CAP: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Zero,
    Minus,
}

impl Sign {
    pub fn from_char(c: char) -> Option<Sign> {
        match c {
            '+' => Some(Sign::Plus),
            '0' => Some(Sign::Zero),
            '-' => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn to_char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Zero => '0',
            Sign::Minus => '-',
        }
    }

    pub fn is_zero(self) -> bool {
        self == Sign::Zero
    }

    /// Product of two signs.
    pub fn mul(self, other: Sign) -> Sign {
        match (self, other) {
            (Sign::Zero, _) | (_, Sign::Zero) => Sign::Zero,
            (a, b) if a == b => Sign::Plus,
            _ => Sign::Minus,
        }
    }

    pub fn of_i32(v: i32) -> Sign {
        match v.cmp(&0) {
            Ordering::Greater => Sign::Plus,
            Ordering::Equal => Sign::Zero,
            Ordering::Less => Sign::Minus,
        }
    }

    fn rank(self) -> u8 {
        match self {
            Sign::Plus => 0,
            Sign::Zero => 1,
            Sign::Minus => 2,
        }
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Zero => Sign::Zero,
            Sign::Minus => Sign::Plus,
        }
    }
}

// PLUS < ZERO < MINUS
impl Ord for Sign {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rank().cmp(&other.rank())
    }
}

impl PartialOrd for Sign {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

/// A subset of ground-set indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct ElementSet(pub u32);

impl ElementSet {
    pub const EMPTY: ElementSet = ElementSet(0);

    pub fn singleton(i: usize) -> Self {
        ElementSet(1 << i)
    }

    /// All indices `0..n`.
    pub fn full(n: usize) -> Self {
        if n >= 32 {
            ElementSet(u32::MAX)
        } else {
            ElementSet((1u32 << n) - 1)
        }
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        ElementSet(iter.into_iter().fold(0, |acc, i| acc | (1 << i)))
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1 << i;
    }

    pub fn remove(&mut self, i: usize) {
        self.0 &= !(1 << i);
    }

    pub fn with(self, i: usize) -> Self {
        ElementSet(self.0 | (1 << i))
    }

    pub fn without(self, i: usize) -> Self {
        ElementSet(self.0 & !(1 << i))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, o: Self) -> Self {
        ElementSet(self.0 | o.0)
    }

    pub fn intersection(self, o: Self) -> Self {
        ElementSet(self.0 & o.0)
    }

    pub fn difference(self, o: Self) -> Self {
        ElementSet(self.0 & !o.0)
    }

    pub fn is_subset(self, o: Self) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }

    /// Remove index `i` and shift every higher index down by one.
    pub fn drop_index(self, i: usize) -> Self {
        ElementSet(squeeze(self.0, i))
    }

    /// Insert a fresh (absent) index at position `i`, shifting higher indices up.
    pub fn open_index(self, i: usize) -> Self {
        ElementSet(unsqueeze(self.0, i))
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

fn squeeze(bits: u32, i: usize) -> u32 {
    let low = bits & ((1u32 << i) - 1);
    let high = if i + 1 >= 32 { 0 } else { (bits >> (i + 1)) << i };
    low | high
}

fn unsqueeze(bits: u32, i: usize) -> u32 {
    let low = bits & ((1u32 << i) - 1);
    let high = if i >= 32 { 0 } else { (bits >> i) << (i + 1) };
    low | high
}

/// Ordered, labelled ground set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroundSet {
    labels: Vec<String>,
    index: HashMap<String, usize>,
}

impl GroundSet {
    pub fn new<S: Into<String>, I: IntoIterator<Item = S>>(labels: I) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.len() > MAX_GROUND {
            return Err(OmError::CapExceeded {
                what: "ground set size",
                size: labels.len(),
                cap: MAX_GROUND,
            });
        }
        let mut index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if l.is_empty() || l.contains(|c: char| c == ',' || c.is_whitespace()) {
                return Err(OmError::InvalidInput(format!("invalid element label {l:?}")));
            }
            if index.insert(l.clone(), i).is_some() {
                return Err(OmError::InvalidInput(format!("duplicate element label {l:?}")));
            }
        }
        Ok(GroundSet { labels, index })
    }

    /// Labels `e1, e2, ..., en`.
    pub fn numbered(n: usize) -> Self {
        GroundSet::new((1..=n).map(|i| format!("e{i}"))).expect("generated labels are valid")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| OmError::UnknownElement(label.to_string()))
    }

    pub fn set_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<ElementSet> {
        let mut s = ElementSet::EMPTY;
        for l in labels {
            s.insert(self.index_of(l.as_ref())?);
        }
        Ok(s)
    }

    pub fn without(&self, i: usize) -> GroundSet {
        let mut labels = self.labels.clone();
        labels.remove(i);
        GroundSet::new(labels).expect("subset of a valid ground set")
    }

    pub fn with_label(&self, label: &str) -> Result<GroundSet> {
        let mut labels = self.labels.clone();
        labels.push(label.to_string());
        GroundSet::new(labels)
    }

    /// Render a subset as `{a,b,c}`.
    pub fn format_set(&self, s: ElementSet) -> String {
        let parts: Vec<&str> = s.iter().map(|i| self.label(i)).collect();
        format!("{{{}}}", parts.join(","))
    }
}

/// A sign vector of fixed length.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct SignVector {
    len: u8,
    pos: u32,
    neg: u32,
}

impl SignVector {
    pub fn zero(len: usize) -> Self {
        assert!(len <= MAX_GROUND, "sign vector longer than {MAX_GROUND}");
        SignVector { len: len as u8, pos: 0, neg: 0 }
    }

    pub fn from_parts(len: usize, pos: ElementSet, neg: ElementSet) -> Self {
        assert!(len <= MAX_GROUND);
        assert!(pos.0 & neg.0 == 0, "positive and negative parts overlap");
        assert!(pos.union(neg).is_subset(ElementSet::full(len)));
        SignVector { len: len as u8, pos: pos.0, neg: neg.0 }
    }

    pub fn from_signs(signs: &[Sign]) -> Self {
        let mut v = SignVector::zero(signs.len());
        for (i, s) in signs.iter().enumerate() {
            v.set(i, *s);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> Sign {
        debug_assert!(i < self.len());
        if self.pos >> i & 1 == 1 {
            Sign::Plus
        } else if self.neg >> i & 1 == 1 {
            Sign::Minus
        } else {
            Sign::Zero
        }
    }

    pub fn set(&mut self, i: usize, s: Sign) {
        assert!(i < self.len());
        let bit = 1u32 << i;
        self.pos &= !bit;
        self.neg &= !bit;
        match s {
            Sign::Plus => self.pos |= bit,
            Sign::Minus => self.neg |= bit,
            Sign::Zero => {}
        }
    }

    pub fn with(mut self, i: usize, s: Sign) -> Self {
        self.set(i, s);
        self
    }

    pub fn signs(&self) -> impl Iterator<Item = Sign> + '_ {
        (0..self.len()).map(move |i| self.get(i))
    }

    pub fn support(&self) -> ElementSet {
        ElementSet(self.pos | self.neg)
    }

    pub fn zero_set(&self) -> ElementSet {
        ElementSet(!(self.pos | self.neg) & ElementSet::full(self.len()).0)
    }

    pub fn positive(&self) -> ElementSet {
        ElementSet(self.pos)
    }

    pub fn negative(&self) -> ElementSet {
        ElementSet(self.neg)
    }

    pub fn is_zero(&self) -> bool {
        self.pos == 0 && self.neg == 0
    }

    pub fn is_nonnegative(&self) -> bool {
        self.neg == 0
    }

    /// Nonnegative on every index of `on`.
    pub fn is_nonnegative_on(&self, on: ElementSet) -> bool {
        self.neg & on.0 == 0
    }

    fn check_len(&self, other: &SignVector) -> Result<()> {
        if self.len == other.len {
            Ok(())
        } else {
            Err(OmError::GroundMismatch { left: self.len(), right: other.len() })
        }
    }

    pub fn try_compose(&self, other: &SignVector) -> Result<SignVector> {
        self.check_len(other)?;
        Ok(self.compose(other))
    }

    /// `(X ∘ Y)_e = X_e` if `X_e != 0`, else `Y_e`. Panics on length mismatch.
    pub fn compose(&self, other: &SignVector) -> SignVector {
        assert_eq!(self.len, other.len, "ground-set mismatch");
        let supp = self.pos | self.neg;
        SignVector {
            len: self.len,
            pos: self.pos | (other.pos & !supp),
            neg: self.neg | (other.neg & !supp),
        }
    }

    pub fn try_separation(&self, other: &SignVector) -> Result<ElementSet> {
        self.check_len(other)?;
        Ok(self.separation(other))
    }

    /// Elements where the two vectors have opposite nonzero signs.
    pub fn separation(&self, other: &SignVector) -> ElementSet {
        assert_eq!(self.len, other.len, "ground-set mismatch");
        ElementSet((self.pos & other.neg) | (self.neg & other.pos))
    }

    pub fn try_orthogonal(&self, other: &SignVector) -> Result<bool> {
        self.check_len(other)?;
        Ok(self.orthogonal(other))
    }

    pub fn orthogonal(&self, other: &SignVector) -> bool {
        assert_eq!(self.len, other.len, "ground-set mismatch");
        let opposite = (self.pos & other.neg) | (self.neg & other.pos);
        let agree = (self.pos & other.pos) | (self.neg & other.neg);
        (opposite == 0) == (agree == 0)
    }

    /// `self ≤ other` in the conformal order: `self ∘ other == other`.
    pub fn conforms_to(&self, other: &SignVector) -> bool {
        self.pos & !other.pos == 0 && self.neg & !other.neg == 0
    }

    /// Representative of `{X, -X}` whose first nonzero entry is PLUS.
    pub fn canonical(&self) -> SignVector {
        if self.is_canonical() {
            *self
        } else {
            -*self
        }
    }

    pub fn is_canonical(&self) -> bool {
        let supp = self.pos | self.neg;
        supp == 0 || self.pos & (supp & supp.wrapping_neg()) != 0
    }

    /// Drop entry `i`.
    pub fn delete(&self, i: usize) -> SignVector {
        assert!(i < self.len());
        SignVector {
            len: self.len - 1,
            pos: squeeze(self.pos, i),
            neg: squeeze(self.neg, i),
        }
    }

    /// Append an entry at the end.
    pub fn push(&self, s: Sign) -> SignVector {
        let mut v = SignVector { len: self.len + 1, pos: self.pos, neg: self.neg };
        assert!(v.len() <= MAX_GROUND);
        v.set(self.len(), s);
        v
    }

    /// Keep only the entries in `keep`, compacting indices in order.
    pub fn restrict(&self, keep: ElementSet) -> SignVector {
        let mut out = SignVector::zero(keep.len());
        for (j, i) in keep.iter().enumerate() {
            out.set(j, self.get(i));
        }
        out
    }

    /// Negate entry `i`.
    pub fn reorient(&self, i: usize) -> SignVector {
        let s = self.get(i);
        self.with(i, -s)
    }

    /// Every sign vector of length `n`, in canonical sign-vector order.
    pub fn all(n: usize) -> impl Iterator<Item = SignVector> {
        let total = 3usize.pow(n as u32);
        (0..total).map(move |mut code| {
            let mut v = SignVector::zero(n);
            for i in (0..n).rev() {
                let s = match code % 3 {
                    0 => Sign::Plus,
                    1 => Sign::Zero,
                    _ => Sign::Minus,
                };
                v.set(i, s);
                code /= 3;
            }
            v
        })
    }
}

impl Neg for SignVector {
    type Output = SignVector;
    fn neg(self) -> SignVector {
        SignVector { len: self.len, pos: self.neg, neg: self.pos }
    }
}

impl Ord for SignVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len.cmp(&other.len).then_with(|| {
            for i in 0..self.len() {
                match self.get(i).cmp(&other.get(i)) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for SignVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in self.signs() {
            write!(f, "{}", s.to_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SignVector({self})")
    }
}

impl FromStr for SignVector {
    type Err = OmError;
    fn from_str(s: &str) -> Result<Self> {
        let chars: Vec<char> = s.chars().collect();
        if chars.len() > MAX_GROUND {
            return Err(OmError::CapExceeded {
                what: "sign vector length",
                size: chars.len(),
                cap: MAX_GROUND,
            });
        }
        let mut v = SignVector::zero(chars.len());
        for (i, c) in chars.into_iter().enumerate() {
            let sign = Sign::from_char(c).ok_or_else(|| OmError::Parse {
                line: 0,
                column: i + 1,
                message: format!("unknown sign character {c:?}"),
            })?;
            v.set(i, sign);
        }
        Ok(v)
    }
}

impl Serialize for SignVector {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for SignVector {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Canonicalize, deduplicate and sort a collection of sign vectors.
pub fn canonical_set<I: IntoIterator<Item = SignVector>>(iter: I) -> Vec<SignVector> {
    let mut v: Vec<SignVector> = iter.into_iter().map(|x| x.canonical()).collect();
    v.sort();
    v.dedup();
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sv(s: &str) -> SignVector {
        s.parse().unwrap()
    }

    #[test]
    fn compose_examples() {
        assert_eq!(sv("+0-").compose(&sv("0++")), sv("++-"));
        assert_eq!(sv("+-").compose(&sv("00")), sv("+-"));
        assert_eq!(sv("00").compose(&sv("+-")), sv("+-"));
        assert_eq!(sv("+0").compose(&sv("--")), sv("+-"));
        assert!(sv("+0").try_compose(&sv("+00")).is_err());
    }

    #[test]
    fn separation_examples() {
        assert_eq!(sv("+-0").separation(&sv("--+")), ElementSet::singleton(0));
        let x = sv("+-0+");
        assert!(x.separation(&x).is_empty());
        assert_eq!(x.separation(&-x), x.support());
    }

    #[test]
    fn orthogonality_examples() {
        assert!(sv("++0").orthogonal(&sv("+-0")));
        assert!(!sv("+00").orthogonal(&sv("+00")));
        assert!(sv("+00").orthogonal(&sv("0-+")));
        assert!(sv("+0").try_orthogonal(&sv("+")).is_err());
    }

    #[test]
    fn ordering_puts_plus_before_zero_before_minus() {
        assert!(sv("+") < sv("0"));
        assert!(sv("0") < sv("-"));
        assert!(sv("0+-") < sv("0-+"));
    }

    #[test]
    fn canonical_representative_starts_with_plus() {
        assert_eq!(sv("0-+").canonical(), sv("0+-"));
        assert_eq!(sv("0+-").canonical(), sv("0+-"));
        assert_eq!(sv("000").canonical(), sv("000"));
        assert_eq!(canonical_set([sv("+-"), sv("-+"), sv("0+")]), vec![sv("+-"), sv("0+")]);
    }

    #[test]
    fn parse_error_names_position() {
        match "+0x-".parse::<SignVector>() {
            Err(OmError::Parse { column, .. }) => assert_eq!(column, 3),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn delete_push_restrict() {
        let x = sv("+0-+");
        assert_eq!(x.delete(1), sv("+-+"));
        assert_eq!(x.delete(3), sv("+0-"));
        assert_eq!(x.push(Sign::Minus), sv("+0-+-"));
        assert_eq!(x.restrict(ElementSet::from_indices([0, 2])), sv("+-"));
        assert_eq!(ElementSet::from_indices([0, 2, 3]).drop_index(2), ElementSet::from_indices([0, 2]));
        assert_eq!(ElementSet::from_indices([0, 2]).open_index(1), ElementSet::from_indices([0, 3]));
    }

    #[test]
    fn compose_is_associative_exhaustively() {
        for n in 0..=4 {
            let all: Vec<_> = SignVector::all(n).collect();
            for x in &all {
                for y in &all {
                    let xy = x.compose(y);
                    for z in &all {
                        assert_eq!(xy.compose(z), x.compose(&y.compose(z)));
                    }
                }
            }
        }
    }

    #[test]
    fn all_enumerates_in_canonical_order() {
        let all: Vec<_> = SignVector::all(3).collect();
        assert_eq!(all.len(), 27);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn ground_set_rejects_duplicates() {
        assert!(GroundSet::new(["a", "b", "a"]).is_err());
        assert!(GroundSet::new(["a b"]).is_err());
        let g = GroundSet::new(["a", "b", "c"]).unwrap();
        assert_eq!(g.index_of("c").unwrap(), 2);
        assert_eq!(g.format_set(ElementSet::from_indices([0, 2])), "{a,c}");
    }
}
