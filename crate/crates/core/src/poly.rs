//! Polynomials in the free associative algebra over F_p, with or without unit.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::word::{MultiDegree, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Unitary,
    Nonunitary,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Unitary => "unitary",
            Mode::Nonunitary => "nonunitary",
        }
    }
}

/// A finite linear combination of words with nonzero coefficients in F_p.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    field: Field,
    mode: Mode,
    terms: BTreeMap<Word, u32>,
}

impl Polynomial {
    pub fn zero(field: Field, mode: Mode) -> Self {
        Polynomial {
            field,
            mode,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(field: Field) -> Self {
        Self::monomial(field, Mode::Unitary, Word::empty(), 1).expect("unit is unitary")
    }

    /// Scalar `c` in unitary mode.
    pub fn constant(field: Field, c: i64) -> Self {
        Self::monomial(field, Mode::Unitary, Word::empty(), field.reduce(c)).expect("unitary")
    }

    pub fn var(field: Field, mode: Mode, v: u32) -> Self {
        Self::monomial(field, mode, Word::letter(v), 1).expect("letters are nonunitary")
    }

    pub fn monomial(field: Field, mode: Mode, word: Word, coef: u32) -> Result<Self> {
        let mut p = Self::zero(field, mode);
        p.add_term(word, coef)?;
        Ok(p)
    }

    pub fn from_terms<I: IntoIterator<Item = (Word, i64)>>(
        field: Field,
        mode: Mode,
        terms: I,
    ) -> Result<Self> {
        let mut p = Self::zero(field, mode);
        for (w, c) in terms {
            p.add_term(w, field.reduce(c))?;
        }
        Ok(p)
    }

    /// Adds `coef * word` in place, keeping the canonical form.
    pub fn add_term(&mut self, word: Word, coef: u32) -> Result<()> {
        let coef = coef % self.field.p();
        if coef == 0 {
            return Ok(());
        }
        if word.is_empty() && self.mode == Mode::Nonunitary {
            return Err(AlgebraError::UnitInNonunitary);
        }
        let f = self.field;
        match self.terms.entry(word) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coef);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = f.add(*e.get(), coef);
                if s == 0 {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
        Ok(())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &Word) -> u32 {
        self.terms.get(w).copied().unwrap_or(0)
    }

    /// Terms in canonical order (length, then lexicographic).
    pub fn terms(&self) -> impl Iterator<Item = (&Word, u32)> + '_ {
        self.terms.iter().map(|(w, &c)| (w, c))
    }

    pub fn variables(&self) -> BTreeSet<u32> {
        self.terms
            .keys()
            .flat_map(|w| w.letters().iter().copied())
            .collect()
    }

    pub fn max_variable(&self) -> Option<u32> {
        self.variables().into_iter().next_back()
    }

    fn compatible(&self, other: &Polynomial) -> Result<()> {
        if self.field != other.field {
            return Err(AlgebraError::FieldMismatch {
                left: self.field.p(),
                right: other.field.p(),
            });
        }
        if self.mode != other.mode {
            return Err(AlgebraError::ModeMismatch {
                left: self.mode.name(),
                right: other.mode.name(),
            });
        }
        Ok(())
    }

    /// Same polynomial viewed in the unitary algebra.
    pub fn to_unitary(&self) -> Polynomial {
        Polynomial {
            field: self.field,
            mode: Mode::Unitary,
            terms: self.terms.clone(),
        }
    }

    pub fn to_nonunitary(&self) -> Result<Polynomial> {
        if self.terms.contains_key(&Word::empty()) {
            return Err(AlgebraError::UnitInNonunitary);
        }
        Ok(Polynomial {
            field: self.field,
            mode: Mode::Nonunitary,
            terms: self.terms.clone(),
        })
    }

    pub fn with_mode(&self, mode: Mode) -> Result<Polynomial> {
        match mode {
            Mode::Unitary => Ok(self.to_unitary()),
            Mode::Nonunitary => self.to_nonunitary(),
        }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (w, &c) in &other.terms {
            out.add_term(w.clone(), c)?;
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.try_add(&other.neg_ref())
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.compatible(other)?;
        let f = self.field;
        let mut out = Polynomial::zero(f, self.mode);
        for (a, &ca) in &self.terms {
            for (b, &cb) in &other.terms {
                out.add_term(a.concat(b), f.mul(ca, cb))?;
            }
        }
        Ok(out)
    }

    /// `[f, g] = fg - gf`.
    pub fn commutator(&self, other: &Polynomial) -> Result<Polynomial> {
        self.try_mul(other)?.try_sub(&other.try_mul(self)?)
    }

    pub fn scale(&self, c: u32) -> Polynomial {
        let c = c % self.field.p();
        let mut out = Polynomial::zero(self.field, self.mode);
        if c == 0 {
            return out;
        }
        for (w, &a) in &self.terms {
            out.terms.insert(w.clone(), self.field.mul(a, c));
        }
        out
    }

    fn neg_ref(&self) -> Polynomial {
        self.scale(self.field.p() - 1)
    }

    /// `self^n`; `n = 0` requires unitary mode.
    pub fn pow(&self, n: u32) -> Result<Polynomial> {
        if n == 0 {
            if self.mode == Mode::Nonunitary {
                return Err(AlgebraError::UnitInNonunitary);
            }
            return Ok(Polynomial::one(self.field));
        }
        let mut acc = self.clone();
        for _ in 1..n {
            acc = acc.try_mul(self)?;
        }
        Ok(acc)
    }

    /// Image under the endomorphism `x_v -> assignment[v]`.
    ///
    /// In unitary mode unassigned variables are fixed. In nonunitary mode every
    /// variable of `self` needs an image, and images must be nonunitary.
    pub fn substitute(&self, assignment: &BTreeMap<u32, Polynomial>) -> Result<Polynomial> {
        let f = self.field;
        let mut images: BTreeMap<u32, Polynomial> = BTreeMap::new();
        for v in self.variables() {
            let img = match (assignment.get(&v), self.mode) {
                (Some(g), Mode::Unitary) => {
                    self.compatible(&g.to_unitary())?;
                    g.to_unitary()
                }
                (Some(g), Mode::Nonunitary) => {
                    self.compatible(g)?;
                    g.clone()
                }
                (None, Mode::Unitary) => Polynomial::var(f, Mode::Unitary, v),
                (None, Mode::Nonunitary) => return Err(AlgebraError::MissingAssignment(v)),
            };
            images.insert(v, img);
        }
        let mut out = Polynomial::zero(f, self.mode);
        for (w, &c) in &self.terms {
            let mut prod = match self.mode {
                Mode::Unitary => Polynomial::one(f),
                Mode::Nonunitary => {
                    // Nonunitary words are nonempty; seed with the first image.
                    if w.is_empty() {
                        return Err(AlgebraError::UnitInNonunitary);
                    }
                    images[&w.letters()[0]].clone()
                }
            };
            let skip = usize::from(self.mode == Mode::Nonunitary);
            for v in &w.letters()[skip..] {
                if prod.is_zero() {
                    break;
                }
                prod = prod.try_mul(&images[v])?;
            }
            out = out.try_add(&prod.scale(c))?;
        }
        Ok(out)
    }

    /// Common multidegree of all terms, if there is one. The zero polynomial
    /// has none.
    pub fn multidegree(&self) -> Option<MultiDegree> {
        let mut it = self.terms.keys();
        let first = it.next()?.multidegree();
        for w in it {
            if w.multidegree() != first {
                return None;
            }
        }
        Some(first)
    }

    /// Every term uses each of the polynomial's variables exactly once.
    pub fn is_multilinear(&self) -> bool {
        match self.multidegree() {
            Some(d) => d.iter().all(|(_, c)| c == 1),
            None => false,
        }
    }

    /// Splits into multihomogeneous components.
    pub fn components(&self) -> BTreeMap<MultiDegree, Polynomial> {
        let mut out: BTreeMap<MultiDegree, Polynomial> = BTreeMap::new();
        for (w, &c) in &self.terms {
            out.entry(w.multidegree())
                .or_insert_with(|| Polynomial::zero(self.field, self.mode))
                .terms
                .insert(w.clone(), c);
        }
        out
    }

    /// Renames variables by `map`; unmapped variables are kept.
    pub fn rename(&self, map: &BTreeMap<u32, u32>) -> Polynomial {
        let mut out = Polynomial::zero(self.field, self.mode);
        for (w, &c) in &self.terms {
            let letters = w
                .letters()
                .iter()
                .map(|v| *map.get(v).unwrap_or(v))
                .collect();
            out.add_term(Word::new(letters), c)
                .expect("renaming keeps word length");
        }
        out
    }
}

impl fmt::Display for Polynomial {
    /// Re-parseable rendering in canonical term order; coefficients in `1..p`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, &c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            match (c, w.is_empty()) {
                (_, true) => write!(f, "{c}")?,
                (1, false) => write!(f, "{w}")?,
                (_, false) => write!(f, "{c}*{w}")?,
            }
        }
        Ok(())
    }
}

macro_rules! checked_op {
    ($trait:ident, $method:ident, $call:ident) => {
        impl<'a> $trait<&'a Polynomial> for &'a Polynomial {
            type Output = Polynomial;

            /// Panics on field or mode mismatch; use the `try_` form to handle it.
            fn $method(self, rhs: &'a Polynomial) -> Polynomial {
                self.$call(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }

        impl $trait<Polynomial> for Polynomial {
            type Output = Polynomial;

            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
    };
}

checked_op!(Add, add, try_add);
checked_op!(Sub, sub, try_sub);
checked_op!(Mul, mul, try_mul);

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        self.neg_ref()
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        self.neg_ref()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> Field {
        Field::new(3).unwrap()
    }

    fn x(v: u32) -> Polynomial {
        Polynomial::var(f3(), Mode::Nonunitary, v)
    }

    fn w(letters: &[u32]) -> Word {
        Word::new(letters.to_vec())
    }

    #[test]
    fn add_examples() {
        assert!((&x(1) + &(-&x(1))).is_zero());
        let xy = &x(1) * &x(2);
        let twice = &xy + &xy;
        assert_eq!(twice.coeff(&w(&[1, 2])), 2);
        let s = &x(1) + &x(2);
        assert_eq!(s.len(), 2);
    }

    #[test]
    fn mul_examples() {
        assert_eq!((&x(1) * &x(2)).coeff(&w(&[1, 2])), 1);
        let p = &(&x(1) + &x(2)) * &x(1);
        assert_eq!(p.coeff(&w(&[1, 1])), 1);
        assert_eq!(p.coeff(&w(&[2, 1])), 1);
        let f = (&x(1) * &x(2)).to_unitary();
        assert_eq!(&Polynomial::one(f3()) * &f, f);
    }

    #[test]
    fn commutator_examples() {
        let c = x(1).commutator(&x(2)).unwrap();
        assert_eq!(c.coeff(&w(&[1, 2])), 1);
        assert_eq!(c.coeff(&w(&[2, 1])), 2);
        assert!(x(1).commutator(&x(1)).unwrap().is_zero());
        assert_eq!((&x(1) + &x(2)).commutator(&x(2)).unwrap(), c);
    }

    #[test]
    fn substitute_examples() {
        let sq = &x(1) * &x(1);
        let img = BTreeMap::from([(1, &x(1) + &x(2))]);
        let out = sq.substitute(&img).unwrap();
        assert_eq!(out.len(), 4);
        let c = x(1).commutator(&x(2)).unwrap();
        let img = BTreeMap::from([(1, x(2)), (2, x(2))]);
        assert!(c.substitute(&img).unwrap().is_zero());
        let img = BTreeMap::from([(1, Polynomial::zero(f3(), Mode::Nonunitary))]);
        assert!(x(1).substitute(&img).unwrap().is_zero());
    }

    #[test]
    fn nonunitary_needs_full_assignment() {
        let c = x(1).commutator(&x(2)).unwrap();
        let img = BTreeMap::from([(1, x(2))]);
        assert_eq!(c.substitute(&img), Err(AlgebraError::MissingAssignment(2)));
        let u = c.to_unitary();
        assert_eq!(
            u.substitute(&BTreeMap::from([(1, x(2))])).unwrap(),
            Polynomial::zero(f3(), Mode::Unitary)
        );
    }

    #[test]
    fn mismatch_is_an_error() {
        let f5 = Field::new(5).unwrap();
        let y = Polynomial::var(f5, Mode::Nonunitary, 1);
        assert!(matches!(
            x(1).try_add(&y),
            Err(AlgebraError::FieldMismatch { .. })
        ));
        assert!(matches!(
            x(1).try_mul(&x(1).to_unitary()),
            Err(AlgebraError::ModeMismatch { .. })
        ));
        assert!(Polynomial::one(f3()).to_nonunitary().is_err());
    }

    #[test]
    fn multidegree_queries() {
        assert_eq!(
            w(&[1, 2, 1]).multidegree(),
            MultiDegree::from_pairs([(1, 2), (2, 1)])
        );
        assert_eq!((&x(1) + &(&x(1) * &x(1))).multidegree(), None);
        assert!(x(1).commutator(&x(2)).unwrap().is_multilinear());
    }

    #[test]
    fn display_is_canonical() {
        let p = Polynomial::from_terms(f3(), Mode::Nonunitary, [(w(&[2, 1]), -1), (w(&[1, 2]), 1)])
            .unwrap();
        assert_eq!(p.to_string(), "x1*x2 + 2*x2*x1");
        assert_eq!(Polynomial::zero(f3(), Mode::Nonunitary).to_string(), "0");
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    coef: u32,
    word: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    p: u32,
    mode: Mode,
    terms: Vec<TermRepr>,
}

impl Serialize for Polynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolyRepr {
            p: self.field.p(),
            mode: self.mode,
            terms: self
                .terms
                .iter()
                .map(|(w, &coef)| TermRepr {
                    coef,
                    word: w.letters().to_vec(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error;
        let repr = PolyRepr::deserialize(d)?;
        let field = Field::new(repr.p).map_err(D::Error::custom)?;
        let mut out = Polynomial::zero(field, repr.mode);
        for t in repr.terms {
            out.add_term(Word::new(t.word), t.coef)
                .map_err(D::Error::custom)?;
        }
        Ok(out)
    }
}
