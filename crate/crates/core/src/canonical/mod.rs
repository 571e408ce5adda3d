//! Canonical forms modulo the triple-commutator T-ideal and modulo the
//! identities of the nonunitary Grassmann algebra.

mod rules;
mod straighten;
mod term;

pub use rules::{rule_table, Rule};
pub(crate) use straighten::straighten_word;
pub use straighten::{normal_form, normal_form_tg0, straighten_t3};
pub use term::{Bracket, SSNormalForm, SSTerm};

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::poly::Polynomial;
use crate::word::MultiDegree;

/// Which T-ideal a normal form is taken modulo.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Modulus {
    /// The T-ideal generated by `[[x1, x2], x3]`; coordinates in SS.
    T3,
    /// The identities of `G0`; coordinates in BSS.
    TG0,
}

impl FromStr for Modulus {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "t3" => Ok(Modulus::T3),
            "tg0" => Ok(Modulus::TG0),
            other => Err(AlgebraError::BadSpace(format!("unknown modulus `{other}`"))),
        }
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Modulus::T3 => "T3",
            Modulus::TG0 => "TG0",
        })
    }
}

/// Even-size subsets of `vars`, by size and then lexicographically.
fn even_subsets(vars: &[u32]) -> Vec<Vec<u32>> {
    let n = vars.len();
    let mut out: Vec<Vec<u32>> = (0u64..1 << n)
        .filter(|m| m.count_ones() % 2 == 0)
        .map(|m| {
            (0..n)
                .filter(|i| m >> i & 1 == 1)
                .map(|i| vars[i])
                .collect()
        })
        .collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// All SS terms of multidegree `d`: one per even-size subset of its support.
pub fn enumerate_ss(d: &MultiDegree) -> Vec<SSTerm> {
    let vars: Vec<u32> = d.support().collect();
    even_subsets(&vars)
        .iter()
        .map(|j| SSTerm::from_degree(d, j))
        .collect()
}

/// All BSS terms of multidegree `d` over F_p.
pub fn enumerate_bss(d: &MultiDegree, field: Field) -> Vec<SSTerm> {
    let p = field.p();
    enumerate_ss(d)
        .into_iter()
        .filter(|t| t.is_bss(p))
        .collect()
}

pub fn enumerate(d: &MultiDegree, field: Field, modulus: Modulus) -> Vec<SSTerm> {
    match modulus {
        Modulus::T3 => enumerate_ss(d),
        Modulus::TG0 => enumerate_bss(d, field),
    }
}

/// Normal-form coordinates of `f` in the enumerated basis of multidegree `d`.
pub fn nf_vector(f: &Polynomial, d: &MultiDegree, modulus: Modulus) -> Result<Vec<u32>> {
    if f.terms().any(|(w, _)| &w.multidegree() != d) {
        return Err(AlgebraError::NotMultihomogeneous);
    }
    let basis = enumerate(d, f.field(), modulus);
    let index: HashMap<&SSTerm, usize> = basis.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let mut v = vec![0u32; basis.len()];
    for (t, c) in normal_form(f, modulus).terms() {
        let i = index.get(t).ok_or(AlgebraError::OutsideComponent)?;
        v[*i] = c;
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Mode;
    use crate::word::Word;

    fn f3() -> Field {
        Field::new(3).unwrap()
    }

    fn md(pairs: &[(u32, u32)]) -> MultiDegree {
        MultiDegree::from_pairs(pairs.iter().copied())
    }

    fn names(ts: &[SSTerm]) -> Vec<String> {
        ts.iter().map(|t| t.to_string()).collect()
    }

    #[test]
    fn bss_of_bilinear_degree() {
        assert_eq!(
            names(&enumerate_bss(&md(&[(1, 1), (2, 1)]), f3())),
            ["x1*x2", "[x1,x2]"]
        );
    }

    #[test]
    fn bss_bound_at_p() {
        let ts = names(&enumerate_bss(&md(&[(1, 3), (2, 3)]), f3()));
        assert!(ts.contains(&"[x1,x2]*x1^2*x2^2".to_string()));
        assert!(!ts.contains(&"x1^3*x2^3".to_string()));
    }

    #[test]
    fn bss_trilinear() {
        assert_eq!(
            names(&enumerate_bss(&md(&[(1, 1), (2, 1), (3, 1)]), f3())),
            ["x1*x2*x3", "x3*[x1,x2]", "x2*[x1,x3]", "x1*[x2,x3]"]
        );
    }

    #[test]
    fn nf_vector_examples() {
        let k = Polynomial::from_terms(
            f3(),
            Mode::Nonunitary,
            [
                (Word::new(vec![1, 2, 1, 1, 2, 2]), 1),
                (Word::new(vec![2, 1, 1, 1, 2, 2]), -1),
            ],
        )
        .unwrap();
        let d = md(&[(1, 3), (2, 3)]);
        assert_eq!(nf_vector(&k, &d, Modulus::TG0).unwrap(), vec![1]);
        let cube = Polynomial::monomial(f3(), Mode::Nonunitary, Word::power(1, 3), 1).unwrap();
        assert_eq!(
            nf_vector(&cube, &md(&[(1, 3)]), Modulus::TG0).unwrap(),
            Vec::<u32>::new()
        );
        let yx = Polynomial::monomial(f3(), Mode::Nonunitary, Word::new(vec![2, 1]), 1).unwrap();
        assert_eq!(
            nf_vector(&yx, &md(&[(1, 1), (2, 1)]), Modulus::T3).unwrap(),
            vec![1, 2]
        );
        assert_eq!(
            nf_vector(&yx, &md(&[(1, 2)]), Modulus::T3),
            Err(AlgebraError::NotMultihomogeneous)
        );
    }
}
