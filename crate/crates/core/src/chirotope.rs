//! Basis orientations: an alternating sign map on `r`-subsets of the ground set.

use std::collections::HashMap;
use std::fmt;

use itertools::Itertools;

use crate::error::{OmError, Result};
use crate::exact::{sign_of, RationalMatrix};
use crate::sign::{canonical_set, ElementSet, Sign, SignVector};

#[derive(Clone, PartialEq, Eq)]
pub struct Chirotope {
    n: usize,
    rank: usize,
    signs: Vec<Sign>,
    index: HashMap<u32, usize>,
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..n).combinations(k)
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

impl Chirotope {
    /// Signs listed for the `rank`-subsets of `0..n` in lexicographic order.
    pub fn new(n: usize, rank: usize, signs: Vec<Sign>) -> Result<Self> {
        let expected = binomial(n, rank);
        if signs.len() != expected {
            return Err(OmError::InvalidInput(format!(
                "chirotope of rank {rank} on {n} elements needs {expected} signs, got {}",
                signs.len()
            )));
        }
        if signs.iter().all(|s| s.is_zero()) {
            return Err(OmError::InvalidInput("chirotope is identically zero".into()));
        }
        let index = subsets(n, rank)
            .enumerate()
            .map(|(i, s)| (ElementSet::from_indices(s).0, i))
            .collect();
        Ok(Chirotope { n, rank, signs, index })
    }

    pub fn parse(s: &str, n: usize, rank: usize) -> Result<Self> {
        let mut signs = Vec::with_capacity(s.len());
        for (i, c) in s.chars().enumerate() {
            signs.push(Sign::from_char(c).ok_or_else(|| OmError::Parse {
                line: 0,
                column: i + 1,
                message: format!("unknown sign character {c:?} in chirotope"),
            })?);
        }
        Chirotope::new(n, rank, signs)
    }

    /// Signs of the maximal minors of a full-row-rank matrix.
    pub fn from_matrix(m: &RationalMatrix) -> Result<Self> {
        let r = m.nrows();
        let rows: Vec<usize> = (0..r).collect();
        let signs = subsets(m.ncols(), r).map(|cols| sign_of(&m.minor(&rows, &cols))).collect();
        Chirotope::new(m.ncols(), r, signs)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    /// Sign of the sorted subset `set` (which must have `rank` elements).
    pub fn basis_sign(&self, set: ElementSet) -> Sign {
        self.index.get(&set.0).map_or(Sign::Zero, |&i| self.signs[i])
    }

    /// Sign of an ordered tuple, extended alternately from the sorted subsets.
    pub fn tuple_sign(&self, tuple: &[usize]) -> Sign {
        let set = ElementSet::from_indices(tuple.iter().copied());
        if set.len() != tuple.len() || tuple.len() != self.rank {
            return Sign::Zero;
        }
        let mut inversions = 0;
        for i in 0..tuple.len() {
            for j in i + 1..tuple.len() {
                if tuple[i] > tuple[j] {
                    inversions += 1;
                }
            }
        }
        let s = self.basis_sign(set);
        if inversions % 2 == 0 {
            s
        } else {
            -s
        }
    }

    /// One cocircuit per hyperplane: `Y_e = χ(S, e)` for each independent `(r-1)`-set `S`.
    pub fn cocircuits(&self) -> Vec<SignVector> {
        if self.rank == 0 {
            return Vec::new();
        }
        let mut out = Vec::new();
        for s in subsets(self.n, self.rank - 1) {
            let mut y = SignVector::zero(self.n);
            let mut tuple = s.clone();
            tuple.push(0);
            for e in 0..self.n {
                *tuple.last_mut().unwrap() = e;
                y.set(e, self.tuple_sign(&tuple));
            }
            if !y.is_zero() {
                out.push(y);
            }
        }
        canonical_set(out)
    }

    /// Circuits from `(r+1)`-subsets: `X_{x_i} = (-1)^i χ(x_0..x̂_i..x_r)`.
    pub fn circuits(&self) -> Vec<SignVector> {
        let mut out = Vec::new();
        for s in subsets(self.n, self.rank + 1) {
            let mut x = SignVector::zero(self.n);
            for i in 0..s.len() {
                let rest = ElementSet::from_indices(s.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &e)| e));
                let sign = self.basis_sign(rest);
                x.set(s[i], if i % 2 == 0 { sign } else { -sign });
            }
            if !x.is_zero() {
                out.push(x);
            }
        }
        canonical_set(out)
    }
}

impl fmt::Display for Chirotope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.signs {
            write!(f, "{}", s.to_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for Chirotope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Chirotope(rank={}, n={}, {self})", self.rank, self.n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alternating_extension() {
        let m = RationalMatrix::from_i64(&[&[1, 0, 1], &[0, 1, 1]]);
        let chi = Chirotope::from_matrix(&m).unwrap();
        assert_eq!(chi.to_string(), "++-");
        assert_eq!(chi.tuple_sign(&[1, 0]), Sign::Minus);
        assert_eq!(chi.tuple_sign(&[1, 1]), Sign::Zero);
    }

    #[test]
    fn rejects_wrong_length_and_zero() {
        assert!(Chirotope::parse("++", 3, 2).is_err());
        assert!(Chirotope::parse("000", 3, 2).is_err());
        assert!(Chirotope::parse("+x-", 3, 2).is_err());
    }
}
