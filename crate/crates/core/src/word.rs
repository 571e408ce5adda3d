//! Words (noncommutative monomials) and multidegrees.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

/// A finite sequence of variable indices. The empty word is the unit.
///
/// Words are ordered by length first, then lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(Vec<u32>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(v: u32) -> Self {
        Word(vec![v])
    }

    pub fn new(letters: Vec<u32>) -> Self {
        Word(letters)
    }

    pub fn letters(&self) -> &[u32] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<u32> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn power(v: u32, e: u32) -> Word {
        Word(vec![v; e as usize])
    }

    pub fn multidegree(&self) -> MultiDegree {
        let mut d = MultiDegree::zero();
        for &v in &self.0 {
            d.bump(v, 1);
        }
        d
    }
}

impl From<Vec<u32>> for Word {
    fn from(v: Vec<u32>) -> Self {
        Word(v)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    /// Runs of a repeated letter are written as powers: `x1^2*x2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        let mut i = 0;
        while i < self.0.len() {
            let v = self.0[i];
            let mut j = i + 1;
            while j < self.0.len() && self.0[j] == v {
                j += 1;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if j - i == 1 {
                write!(f, "x{v}")?;
            } else {
                write!(f, "x{v}^{}", j - i)?;
            }
            i = j;
        }
        Ok(())
    }
}

/// Per-variable occurrence counts. Zero counts are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiDegree(BTreeMap<u32, u32>);

impl MultiDegree {
    pub fn zero() -> Self {
        MultiDegree(BTreeMap::new())
    }

    pub fn from_pairs<I: IntoIterator<Item = (u32, u32)>>(pairs: I) -> Self {
        let mut d = MultiDegree::zero();
        for (v, c) in pairs {
            d.bump(v, c);
        }
        d
    }

    pub fn get(&self, v: u32) -> u32 {
        self.0.get(&v).copied().unwrap_or(0)
    }

    pub fn bump(&mut self, v: u32, by: u32) {
        if by > 0 {
            *self.0.entry(v).or_insert(0) += by;
        }
    }

    pub fn total(&self) -> u32 {
        self.0.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Variables with nonzero count, ascending.
    pub fn support(&self) -> impl Iterator<Item = u32> + '_ {
        self.0.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.0.iter().map(|(&v, &c)| (v, c))
    }

    pub fn add(&self, other: &MultiDegree) -> MultiDegree {
        let mut d = self.clone();
        for (v, c) in other.iter() {
            d.bump(v, c);
        }
        d
    }

    /// `self - other`, or `None` if some count would go negative.
    pub fn checked_sub(&self, other: &MultiDegree) -> Option<MultiDegree> {
        let mut out = self.clone();
        for (v, c) in other.iter() {
            let have = out.get(v);
            if have < c {
                return None;
            }
            if have == c {
                out.0.remove(&v);
            } else {
                out.0.insert(v, have - c);
            }
        }
        Some(out)
    }

    pub fn le(&self, other: &MultiDegree) -> bool {
        self.iter().all(|(v, c)| other.get(v) >= c)
    }

    /// All multidegrees `e` with `0 <= e <= self` componentwise, in a fixed order.
    pub fn sub_degrees(&self) -> Vec<MultiDegree> {
        let entries: Vec<(u32, u32)> = self.iter().collect();
        let mut out = vec![MultiDegree::zero()];
        for (v, c) in entries {
            let mut next = Vec::with_capacity(out.len() * (c as usize + 1));
            for d in &out {
                for k in 0..=c {
                    let mut e = d.clone();
                    e.bump(v, k);
                    next.push(e);
                }
            }
            out = next;
        }
        out
    }

    /// Every nonzero multidegree in `x1..x_vars` of total degree at most `total`.
    pub fn all_up_to(total: u32, vars: u32) -> Vec<MultiDegree> {
        MultiDegree::from_pairs((1..=vars).map(|v| (v, total)))
            .sub_degrees()
            .into_iter()
            .filter(|d| !d.is_zero() && d.total() <= total)
            .collect()
    }

    /// Number of words with exactly this multidegree (a multinomial).
    pub fn word_count(&self) -> u128 {
        let mut acc: u128 = 1;
        let mut n: u128 = 0;
        for (_, c) in self.iter() {
            for k in 1..=c as u128 {
                n += 1;
                acc = acc * n / k;
            }
        }
        acc
    }
}

impl fmt::Display for MultiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (v, c)) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "x{v}:{c}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_length_then_lex() {
        let a = Word::new(vec![2]);
        let b = Word::new(vec![1, 1]);
        let c = Word::new(vec![1, 2]);
        assert!(a < b);
        assert!(b < c);
        assert!(Word::empty() < a);
    }

    #[test]
    fn multidegree_counts() {
        let w = Word::new(vec![1, 2, 1]);
        assert_eq!(w.multidegree(), MultiDegree::from_pairs([(1, 2), (2, 1)]));
        assert_eq!(MultiDegree::from_pairs([(1, 3), (2, 3)]).word_count(), 20);
        assert_eq!(MultiDegree::from_pairs([(1, 2), (2, 1)]).word_count(), 3);
        assert_eq!(
            MultiDegree::from_pairs([(1, 3), (2, 3), (3, 3), (4, 3)]).word_count(),
            369_600
        );
    }

    #[test]
    fn display_compresses_runs() {
        assert_eq!(Word::new(vec![1, 1, 2, 1]).to_string(), "x1^2*x2*x1");
        assert_eq!(Word::empty().to_string(), "1");
    }

    #[test]
    fn concat_adds_multidegrees() {
        let a = Word::new(vec![1, 3, 3]);
        let b = Word::new(vec![2, 3]);
        assert_eq!(
            a.concat(&b).multidegree(),
            a.multidegree().add(&b.multidegree())
        );
    }

    #[test]
    fn sub_degrees_enumerates_box() {
        let d = MultiDegree::from_pairs([(1, 2), (2, 1)]);
        assert_eq!(d.sub_degrees().len(), 6);
        assert!(d.sub_degrees().iter().all(|e| e.le(&d)));
    }
}
