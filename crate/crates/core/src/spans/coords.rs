use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::words::component_words;
use crate::canonical::{enumerate, straighten_word, Modulus, SSTerm};
use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::poly::Polynomial;
use crate::word::{MultiDegree, Word};

/// How vectors of a fixed-multidegree component are written down.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Coordinates {
    /// One coordinate per word: the free algebra itself.
    Words,
    /// Normal-form coordinates modulo `T3`.
    SS,
    /// Normal-form coordinates modulo `TG0`.
    BSS,
}

impl Coordinates {
    pub fn modulus(self) -> Option<Modulus> {
        match self {
            Coordinates::Words => None,
            Coordinates::SS => Some(Modulus::T3),
            Coordinates::BSS => Some(Modulus::TG0),
        }
    }

    pub fn for_modulus(m: Option<Modulus>) -> Self {
        match m {
            None => Coordinates::Words,
            Some(Modulus::T3) => Coordinates::SS,
            Some(Modulus::TG0) => Coordinates::BSS,
        }
    }
}

impl fmt::Display for Coordinates {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Coordinates::Words => "words",
            Coordinates::SS => "ss",
            Coordinates::BSS => "bss",
        })
    }
}

impl FromStr for Coordinates {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "words" | "freewords" => Ok(Coordinates::Words),
            "ss" => Ok(Coordinates::SS),
            "bss" => Ok(Coordinates::BSS),
            other => Err(AlgebraError::BadSpace(format!(
                "unknown coordinates `{other}`"
            ))),
        }
    }
}

enum Index {
    Words(HashMap<Word, usize>),
    Terms(HashMap<SSTerm, usize>),
}

/// Coordinates on the multidegree-`d` component.
pub struct CoordSystem {
    coords: Coordinates,
    field: Field,
    degree: MultiDegree,
    labels: Vec<String>,
    index: Index,
}

impl CoordSystem {
    pub fn new(
        coords: Coordinates,
        degree: &MultiDegree,
        field: Field,
        max_words: u128,
    ) -> Result<Self> {
        let (labels, index) = match coords.modulus() {
            None => {
                let words = component_words(degree, max_words)?;
                let labels = words.iter().map(Word::to_string).collect();
                (
                    labels,
                    Index::Words(words.into_iter().enumerate().map(|(i, w)| (w, i)).collect()),
                )
            }
            Some(m) => {
                let terms = enumerate(degree, field, m);
                let labels = terms.iter().map(SSTerm::to_string).collect();
                (
                    labels,
                    Index::Terms(terms.into_iter().enumerate().map(|(i, t)| (t, i)).collect()),
                )
            }
        };
        Ok(CoordSystem {
            coords,
            field,
            degree: degree.clone(),
            labels,
            index,
        })
    }

    pub fn coordinates(&self) -> Coordinates {
        self.coords
    }

    pub fn degree(&self) -> &MultiDegree {
        &self.degree
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    /// Name of each coordinate (a word or a normal-form term).
    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Coordinates of `f`, which must lie in this component.
    pub fn vector(&self, f: &Polynomial) -> Result<Vec<u32>> {
        let mut v = vec![0u32; self.dim()];
        for (w, c) in f.terms() {
            if w.multidegree() != self.degree {
                return Err(AlgebraError::OutsideComponent);
            }
            self.add_word(&mut v, w, c);
        }
        Ok(v)
    }

    fn add_word(&self, v: &mut [u32], w: &Word, c: u32) {
        let f = self.field;
        match &self.index {
            Index::Words(ix) => {
                let i = ix[w];
                v[i] = f.add(v[i], c);
            }
            Index::Terms(ix) => {
                let cap = (self.coords == Coordinates::BSS).then(|| f.p());
                for (key, k) in straighten_word(w.letters(), f, cap) {
                    // Terms outside the index are non-BSS and vanish modulo TG0.
                    if let Some(&i) = ix.get(&key.to_term()) {
                        v[i] = f.add(v[i], f.mul(c, k));
                    }
                }
            }
        }
    }
}
