//! Finite-rank Grassmann algebras `G` (unitary) and `G0` (nonunitary) over F_p.
//!
//! Basis elements `e_S = e_{i1} e_{i2} ... e_{ik}` (`i1 < ... < ik`) are keyed by
//! a `u64` bitset; generator `e_i` is bit `i - 1`.

mod check;
mod sample;

pub use check::{
    check_central, check_identity, strategy, strategy_names, Assignment, CentralVerdict,
    ExhaustiveBasis, IdentityStrategy, IdentityVerdict, RandomTrials, Witness,
};
pub use sample::{random_element, SamplerConfig};

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::poly::{Mode, Polynomial};

/// A set of generators, as a bitset.
pub type Subset = u64;

pub const MAX_RANK: u32 = 64;

/// Product of basis elements `e_s * e_t`: `None` if they share a generator,
/// else `(negative, s | t)` where `negative` is the parity of the number of
/// pairs `(i in s, j in t)` with `i > j`.
#[inline]
pub fn basis_mul(s: Subset, t: Subset) -> Option<(bool, Subset)> {
    if s & t != 0 {
        return None;
    }
    let mut parity = 0u32;
    let mut rest = t;
    while rest != 0 {
        let j = rest.trailing_zeros();
        rest &= rest - 1;
        // generators of s above j
        let above = if j >= 63 { 0 } else { s >> (j + 1) };
        parity ^= above.count_ones() & 1;
    }
    Some((parity == 1, s | t))
}

pub fn subset_of(indices: &[u32]) -> Subset {
    indices.iter().fold(0, |acc, &i| acc | (1u64 << (i - 1)))
}

pub fn subset_indices(s: Subset) -> Vec<u32> {
    let mut out = Vec::with_capacity(s.count_ones() as usize);
    let mut rest = s;
    while rest != 0 {
        out.push(rest.trailing_zeros() + 1);
        rest &= rest - 1;
    }
    out
}

/// An element of the Grassmann algebra on generators `e_1..e_rank`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrassmannElement {
    field: Field,
    rank: u32,
    mode: Mode,
    coeffs: BTreeMap<Subset, u32>,
}

impl GrassmannElement {
    pub fn zero(field: Field, rank: u32, mode: Mode) -> Result<Self> {
        if rank == 0 || rank > MAX_RANK {
            return Err(AlgebraError::RankOutOfRange(rank));
        }
        Ok(GrassmannElement {
            field,
            rank,
            mode,
            coeffs: BTreeMap::new(),
        })
    }

    pub fn one(field: Field, rank: u32) -> Result<Self> {
        let mut g = Self::zero(field, rank, Mode::Unitary)?;
        g.add_term(0, 1)?;
        Ok(g)
    }

    pub fn generator(field: Field, rank: u32, mode: Mode, i: u32) -> Result<Self> {
        Self::basis(field, rank, mode, &[i])
    }

    /// `e_{i1} * ... * e_{ik}` for the given (not necessarily sorted) indices.
    pub fn basis(field: Field, rank: u32, mode: Mode, indices: &[u32]) -> Result<Self> {
        let mut acc = match mode {
            Mode::Unitary => Self::one(field, rank)?,
            Mode::Nonunitary => {
                if indices.is_empty() {
                    return Err(AlgebraError::UnitInNonunitary);
                }
                let mut g = Self::zero(field, rank, mode)?;
                g.check_index(indices[0])?;
                g.add_term(subset_of(&indices[..1]), 1)?;
                g
            }
        };
        let skip = usize::from(mode == Mode::Nonunitary);
        for &i in &indices[skip..] {
            acc.check_index(i)?;
            let mut e = Self::zero(field, rank, mode)?;
            e.add_term(subset_of(&[i]), 1)?;
            acc = acc.try_mul(&e)?;
        }
        Ok(acc)
    }

    fn check_index(&self, i: u32) -> Result<()> {
        if i == 0 || i > self.rank {
            return Err(AlgebraError::GeneratorOutOfRange {
                index: i,
                rank: self.rank,
            });
        }
        Ok(())
    }

    pub fn add_term(&mut self, s: Subset, c: u32) -> Result<()> {
        let c = c % self.field.p();
        if c == 0 {
            return Ok(());
        }
        if s == 0 && self.mode == Mode::Nonunitary {
            return Err(AlgebraError::UnitInNonunitary);
        }
        if self.rank < 64 && s >> self.rank != 0 {
            return Err(AlgebraError::GeneratorOutOfRange {
                index: 64 - s.leading_zeros(),
                rank: self.rank,
            });
        }
        let f = self.field;
        let e = self.coeffs.entry(s).or_insert(0);
        *e = f.add(*e, c);
        if *e == 0 {
            self.coeffs.remove(&s);
        }
        Ok(())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, s: Subset) -> u32 {
        self.coeffs.get(&s).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (Subset, u32)> + '_ {
        self.coeffs.iter().map(|(&s, &c)| (s, c))
    }

    pub fn to_unitary(&self) -> GrassmannElement {
        GrassmannElement {
            mode: Mode::Unitary,
            ..self.clone()
        }
    }

    fn compatible(&self, other: &GrassmannElement) -> Result<()> {
        if self.field != other.field {
            return Err(AlgebraError::FieldMismatch {
                left: self.field.p(),
                right: other.field.p(),
            });
        }
        if self.rank != other.rank {
            return Err(AlgebraError::RankMismatch {
                left: self.rank,
                right: other.rank,
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

    pub fn try_add(&self, other: &GrassmannElement) -> Result<GrassmannElement> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (s, c) in other.terms() {
            out.add_term(s, c)?;
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &GrassmannElement) -> Result<GrassmannElement> {
        self.try_add(&other.scale(self.field.p() - 1))
    }

    pub fn scale(&self, c: u32) -> GrassmannElement {
        let mut out = GrassmannElement {
            coeffs: BTreeMap::new(),
            ..self.clone()
        };
        for (s, a) in self.terms() {
            out.add_term(s, self.field.mul(a, c)).expect("same support");
        }
        out
    }

    pub fn try_mul(&self, other: &GrassmannElement) -> Result<GrassmannElement> {
        self.compatible(other)?;
        let f = self.field;
        let mut out = GrassmannElement {
            coeffs: BTreeMap::new(),
            ..self.clone()
        };
        for (s, a) in self.terms() {
            for (t, b) in other.terms() {
                if let Some((neg, u)) = basis_mul(s, t) {
                    let c = f.mul(a, b);
                    out.add_term(u, if neg { f.neg(c) } else { c })?;
                }
            }
        }
        Ok(out)
    }

    pub fn commutator(&self, other: &GrassmannElement) -> Result<GrassmannElement> {
        self.try_mul(other)?.try_sub(&other.try_mul(self)?)
    }

    /// Commutes with every generator `e_1..e_rank`.
    pub fn is_central(&self) -> bool {
        (1..=self.rank).all(|i| {
            let e = GrassmannElement::generator(self.field, self.rank, self.mode, i)
                .expect("index within rank");
            self.commutator(&e).expect("same shape").is_zero()
        })
    }

    /// Every basis element in the support has even size.
    pub fn is_even(&self) -> bool {
        self.coeffs.keys().all(|s| s.count_ones() % 2 == 0)
    }
}

impl fmt::Display for GrassmannElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, (s, c)) in self.terms().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let gens: Vec<String> = subset_indices(s).iter().map(|i| format!("e{i}")).collect();
            match (c, gens.is_empty()) {
                (_, true) => write!(f, "{c}")?,
                (1, false) => write!(f, "{}", gens.join("*"))?,
                (_, false) => write!(f, "{c}*{}", gens.join("*"))?,
            }
        }
        Ok(())
    }
}

/// Image of `f` under the homomorphism `x_v -> assignment[v]`.
pub fn evaluate(
    f: &Polynomial,
    assignment: &BTreeMap<u32, GrassmannElement>,
) -> Result<GrassmannElement> {
    let first = assignment.values().next().ok_or_else(|| {
        AlgebraError::MissingAssignment(f.variables().into_iter().next().unwrap_or(0))
    })?;
    let (field, rank) = (first.field(), first.rank());
    if field != f.field() {
        return Err(AlgebraError::FieldMismatch {
            left: f.field().p(),
            right: field.p(),
        });
    }
    let mut images = BTreeMap::new();
    for v in f.variables() {
        let g = assignment
            .get(&v)
            .ok_or(AlgebraError::MissingAssignment(v))?;
        if g.rank() != rank {
            return Err(AlgebraError::RankMismatch {
                left: rank,
                right: g.rank(),
            });
        }
        let g = match (f.mode(), g.mode()) {
            (Mode::Unitary, _) => g.to_unitary(),
            (Mode::Nonunitary, Mode::Nonunitary) => g.clone(),
            (Mode::Nonunitary, Mode::Unitary) => {
                return Err(AlgebraError::ModeMismatch {
                    left: "nonunitary",
                    right: "unitary",
                })
            }
        };
        images.insert(v, g);
    }
    let mut out = GrassmannElement::zero(field, rank, f.mode())?;
    for (w, c) in f.terms() {
        let mut acc: Option<GrassmannElement> = match f.mode() {
            Mode::Unitary => Some(GrassmannElement::one(field, rank)?),
            Mode::Nonunitary => None,
        };
        for v in w.letters() {
            let next = match acc {
                None => images[v].clone(),
                Some(a) => a.try_mul(&images[v])?,
            };
            if next.is_zero() {
                acc = Some(next);
                break;
            }
            acc = Some(next);
        }
        if let Some(a) = acc {
            out = out.try_add(&a.scale(c))?;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> Field {
        Field::new(3).unwrap()
    }

    fn e(rank: u32, idx: &[u32]) -> GrassmannElement {
        GrassmannElement::basis(f3(), rank, Mode::Nonunitary, idx).unwrap()
    }

    #[test]
    fn basis_mul_examples() {
        assert_eq!(
            basis_mul(subset_of(&[1, 2]), subset_of(&[3])),
            Some((false, subset_of(&[1, 2, 3])))
        );
        assert_eq!(
            basis_mul(subset_of(&[2]), subset_of(&[1])),
            Some((true, subset_of(&[1, 2])))
        );
        assert_eq!(
            basis_mul(subset_of(&[1, 3]), subset_of(&[2])),
            Some((true, subset_of(&[1, 2, 3])))
        );
        assert_eq!(basis_mul(subset_of(&[1]), subset_of(&[1, 2])), None);
        assert_eq!(
            basis_mul(subset_of(&[64]), subset_of(&[1])),
            Some((true, subset_of(&[1, 64])))
        );
    }

    #[test]
    fn square_of_mixed_element() {
        let a = e(3, &[1]).try_add(&e(3, &[2, 3])).unwrap();
        let sq = a.try_mul(&a).unwrap();
        assert_eq!(sq, e(3, &[1, 2, 3]).scale(2));
        assert!(e(3, &[1]).try_mul(&e(3, &[1])).unwrap().is_zero());
    }

    #[test]
    fn unit_times_conjugate() {
        let one = GrassmannElement::one(f3(), 2).unwrap();
        let e1 = GrassmannElement::generator(f3(), 2, Mode::Unitary, 1).unwrap();
        let prod = one
            .try_add(&e1)
            .unwrap()
            .try_mul(&one.try_sub(&e1).unwrap())
            .unwrap();
        assert_eq!(prod, one);
    }

    #[test]
    fn centrality_examples() {
        assert!(e(4, &[1, 2]).scale(2).is_central());
        assert!(!e(4, &[1]).is_central());
        assert!(GrassmannElement::one(f3(), 4).unwrap().is_central());
    }

    #[test]
    fn rank_and_mode_mismatches() {
        assert!(matches!(
            e(3, &[1]).try_mul(&e(4, &[1])),
            Err(AlgebraError::RankMismatch { .. })
        ));
        assert!(GrassmannElement::zero(f3(), 65, Mode::Unitary).is_err());
        assert!(GrassmannElement::generator(f3(), 3, Mode::Unitary, 4).is_err());
    }
}
