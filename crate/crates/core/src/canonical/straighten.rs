//! Straightening modulo the T-ideal generated by `[[x1, x2], x3]`.
//!
//! Modulo that ideal every commutator is central, `[x^r, y] = r x^{r-1} [x, y]`,
//! and a product of letter commutators is an alternating function of its
//! letters (`[a,b][c,d] = -[a,c][b,d]`), so it vanishes on a repeated letter.
//! Every word therefore reduces to a combination of `x^e * C(J)`, where `x^e`
//! is a sorted monomial and `C(J) = [x_j1,x_j2]...[x_j(2s-1),x_j(2s)]` over
//! a sorted set `J` of distinct variables. We straighten by multiplying such
//! basis elements on the right by one letter at a time.

use std::collections::HashMap;

use super::term::{SSNormalForm, SSTerm};
use crate::field::Field;
use crate::poly::Polynomial;
use crate::word::MultiDegree;

/// `x^e * C(J)`: sorted `(variable, exponent)` pairs and sorted bracket letters.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub(crate) struct Key {
    exps: Vec<(u32, u32)>,
    brackets: Vec<u32>,
}

impl Key {
    fn degree_of(&self, v: u32) -> u32 {
        let e = self
            .exps
            .iter()
            .find(|&&(u, _)| u == v)
            .map_or(0, |&(_, c)| c);
        e + u32::from(self.brackets.binary_search(&v).is_ok())
    }

    pub(crate) fn to_term(&self) -> SSTerm {
        let mut d = MultiDegree::from_pairs(self.exps.iter().copied());
        for &j in &self.brackets {
            d.bump(j, 1);
        }
        SSTerm::from_degree(&d, &self.brackets)
    }

    /// Calls `emit` with the terms of `self * x_k` and their integer coefficients.
    fn times_letter(&self, k: u32, mut emit: impl FnMut(Key, i64)) {
        let mut main = self.clone();
        match main.exps.binary_search_by_key(&k, |&(v, _)| v) {
            Ok(i) => main.exps[i].1 += 1,
            Err(i) => main.exps.insert(i, (k, 1)),
        }
        emit(main, 1);
        if self.brackets.binary_search(&k).is_ok() {
            return;
        }
        // Moving x_k left past x_i^r (i > k) leaves -r x^{e - e_i} [x_k, x_i].
        let above_k = self.brackets.iter().filter(|&&j| j > k).count();
        for (pos, &(i, r)) in self.exps.iter().enumerate() {
            if i <= k || self.brackets.binary_search(&i).is_ok() {
                continue;
            }
            let above_i = self.brackets.iter().filter(|&&j| j > i).count();
            let sign = if (above_k + above_i) % 2 == 0 { -1 } else { 1 };
            let mut exps = self.exps.clone();
            if r == 1 {
                exps.remove(pos);
            } else {
                exps[pos].1 -= 1;
            }
            let mut brackets = self.brackets.clone();
            for v in [k, i] {
                let at = brackets.binary_search(&v).unwrap_err();
                brackets.insert(at, v);
            }
            emit(Key { exps, brackets }, sign * r as i64);
        }
    }
}

/// Straightens a single word. With `cap = Some(c)` terms in which some
/// variable's degree exceeds `c` are dropped as soon as they appear; degrees
/// never decrease along the way, so their descendants would exceed it too.
pub(crate) fn straighten_word(
    letters: &[u32],
    field: Field,
    cap: Option<u32>,
) -> HashMap<Key, u32> {
    let mut cur: HashMap<Key, u32> = HashMap::from([(Key::default(), 1)]);
    for &k in letters {
        let mut next: HashMap<Key, u32> = HashMap::with_capacity(cur.len() * 2);
        for (key, c) in &cur {
            key.times_letter(k, |nk, m| {
                if let Some(cap) = cap {
                    if nk.degree_of(k) > cap {
                        return;
                    }
                }
                let add = field.mul(*c, field.reduce(m));
                if add == 0 {
                    return;
                }
                let e = next.entry(nk).or_insert(0);
                *e = field.add(*e, add);
            });
        }
        next.retain(|_, c| *c != 0);
        cur = next;
    }
    cur
}

/// Normal form of `f` in the SS spanning set modulo the triple-commutator
/// T-ideal. The result `F` satisfies `f - F.embed()` in that T-ideal.
pub fn straighten_t3(f: &Polynomial) -> SSNormalForm {
    let field = f.field();
    let mut out = SSNormalForm::zero(field, f.mode());
    for (w, c) in f.terms() {
        for (key, k) in straighten_word(w.letters(), field, None) {
            out.add_term(key.to_term(), field.mul(c, k));
        }
    }
    out
}

/// Normal form modulo the identities of `G0`, supported on BSS.
///
/// Equivalent to `straighten_t3(f).reduce_tg0()`, but prunes terms of degree
/// above `p` in some variable during straightening.
pub fn normal_form_tg0(f: &Polynomial) -> SSNormalForm {
    let field = f.field();
    let mut out = SSNormalForm::zero(field, f.mode());
    for (w, c) in f.terms() {
        for (key, k) in straighten_word(w.letters(), field, Some(field.p())) {
            out.add_term(key.to_term(), field.mul(c, k));
        }
    }
    out.reduce_tg0()
}

/// Normal form for the requested modulus.
pub fn normal_form(f: &Polynomial, modulus: super::Modulus) -> SSNormalForm {
    match modulus {
        super::Modulus::T3 => straighten_t3(f),
        super::Modulus::TG0 => normal_form_tg0(f),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::term::Bracket;
    use crate::poly::Mode;
    use crate::word::Word;

    fn f3() -> Field {
        Field::new(3).unwrap()
    }

    fn word(l: &[u32]) -> Polynomial {
        Polynomial::monomial(f3(), Mode::Nonunitary, Word::new(l.to_vec()), 1).unwrap()
    }

    fn x(v: u32) -> Polynomial {
        Polynomial::var(f3(), Mode::Nonunitary, v)
    }

    #[test]
    fn swap_two_letters() {
        let nf = straighten_t3(&word(&[2, 1]));
        assert_eq!(nf.to_string(), "x1*x2 + 2*[x1,x2]");
    }

    #[test]
    fn two_straightening_steps() {
        let nf = straighten_t3(&word(&[2, 1, 1]));
        let m = SSTerm::new(vec![(1, 2), (2, 1)], vec![]).unwrap();
        let c = SSTerm::new(
            vec![],
            vec![Bracket {
                vars: (1, 2),
                powers: (1, 0),
            }],
        )
        .unwrap();
        assert_eq!(nf.coeff(&m), 1);
        assert_eq!(nf.coeff(&c), f3().reduce(-2));
        assert_eq!(nf.len(), 2);
    }

    #[test]
    fn repeated_bracket_letter_vanishes() {
        let a = x(1).commutator(&x(2)).unwrap();
        let b = x(1).commutator(&x(3)).unwrap();
        assert!(straighten_t3(&(&a * &b)).is_zero());
        assert!(straighten_t3(&(&a * &a)).is_zero());
    }

    #[test]
    fn kappa_is_already_straight() {
        let k = &(&x(1).commutator(&x(2)).unwrap() * &x(1).pow(2).unwrap()) * &x(2).pow(2).unwrap();
        let nf = straighten_t3(&k);
        assert_eq!(nf.to_string(), "[x1,x2]*x1^2*x2^2");
        assert_eq!(normal_form_tg0(&k), nf);
    }

    #[test]
    fn cube_vanishes_mod_tg0() {
        assert!(normal_form_tg0(&x(1).pow(3).unwrap()).is_zero());
        let m = &x(1).pow(3).unwrap() * &x(2).pow(3).unwrap();
        assert!(normal_form_tg0(&m).is_zero());
        assert!(!straighten_t3(&m).is_zero());
    }

    #[test]
    fn unit_passes_through() {
        let one = Polynomial::one(f3());
        let nf = straighten_t3(&one);
        assert_eq!(nf.coeff(&SSTerm::unit()), 1);
        assert_eq!(nf.embed(), one);
    }
}
