use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::poly::{Mode, Polynomial};
use crate::word::{MultiDegree, Word};

/// One factor `[x_a, x_b] x_a^{beta_a} x_b^{beta_b}` of the end of an SS term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Bracket {
    pub vars: (u32, u32),
    pub powers: (u32, u32),
}

/// An element of the structured spanning set: a beginning
/// `x_{i1}^{a1} ... x_{it}^{at}` followed by an end
/// `prod_r [x_{j(2r-1)}, x_{j(2r)}] x_{j(2r-1)}^{b} x_{j(2r)}^{b'}`.
///
/// Invariants: beginning indices strictly increase with exponents >= 1; the
/// flattened bracket indices strictly increase; the two index sets are disjoint.
/// A term is determined by its multidegree and its set of bracket variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SSTerm {
    beg: Vec<(u32, u32)>,
    end: Vec<Bracket>,
}

impl SSTerm {
    /// The empty term, representing 1.
    pub fn unit() -> Self {
        SSTerm {
            beg: Vec::new(),
            end: Vec::new(),
        }
    }

    /// Builds a term from explicit parts, validating the invariants.
    pub fn new(beg: Vec<(u32, u32)>, end: Vec<Bracket>) -> Result<Self> {
        let bad = |m: &str| AlgebraError::NotBss(format!("malformed SS term: {m}"));
        if beg.windows(2).any(|w| w[0].0 >= w[1].0) || beg.iter().any(|&(_, a)| a == 0) {
            return Err(bad(
                "beginning must be strictly increasing with positive exponents",
            ));
        }
        let flat: Vec<u32> = end.iter().flat_map(|b| [b.vars.0, b.vars.1]).collect();
        if flat.windows(2).any(|w| w[0] >= w[1]) {
            return Err(bad("bracket indices must be strictly increasing"));
        }
        if beg.iter().any(|(v, _)| flat.contains(v)) {
            return Err(bad("beginning and end share a variable"));
        }
        Ok(SSTerm { beg, end })
    }

    /// The term of multidegree `d` whose bracket variables are `brackets`
    /// (sorted, even length, inside the support of `d`).
    pub fn from_degree(d: &MultiDegree, brackets: &[u32]) -> SSTerm {
        debug_assert!(brackets.len().is_multiple_of(2));
        debug_assert!(brackets.windows(2).all(|w| w[0] < w[1]));
        let beg = d
            .iter()
            .filter(|(v, _)| brackets.binary_search(v).is_err())
            .collect();
        let end = brackets
            .chunks(2)
            .map(|c| Bracket {
                vars: (c[0], c[1]),
                powers: (d.get(c[0]) - 1, d.get(c[1]) - 1),
            })
            .collect();
        SSTerm { beg, end }
    }

    pub fn beg(&self) -> &[(u32, u32)] {
        &self.beg
    }

    pub fn end(&self) -> &[Bracket] {
        &self.end
    }

    pub fn lbeg(&self) -> usize {
        self.beg.len()
    }

    pub fn lend(&self) -> usize {
        self.end.len()
    }

    pub fn is_unit(&self) -> bool {
        self.beg.is_empty() && self.end.is_empty()
    }

    /// Sorted bracket variables `j1 < j2 < ... < j2s`.
    pub fn bracket_vars(&self) -> Vec<u32> {
        self.end.iter().flat_map(|b| [b.vars.0, b.vars.1]).collect()
    }

    pub fn multidegree(&self) -> MultiDegree {
        let mut d = MultiDegree::from_pairs(self.beg.iter().copied());
        for b in &self.end {
            d.bump(b.vars.0, b.powers.0 + 1);
            d.bump(b.vars.1, b.powers.1 + 1);
        }
        d
    }

    /// Membership in BSS: beginning exponents below `p`, bracket variables of
    /// total degree at most `p`.
    pub fn is_bss(&self, p: u32) -> bool {
        self.beg.iter().all(|&(_, a)| a < p)
            && self.end.iter().all(|b| b.powers.0 < p && b.powers.1 < p)
    }

    /// Some bracket variable has total degree below `p`. Errors if the term is
    /// not in BSS.
    pub fn is_spss(&self, p: u32) -> Result<bool> {
        if !self.is_bss(p) {
            return Err(AlgebraError::NotBss(self.to_string()));
        }
        Ok(self
            .end
            .iter()
            .any(|b| b.powers.0 + 1 < p || b.powers.1 + 1 < p))
    }

    /// The literal product this term denotes, as a polynomial.
    pub fn embed(&self, field: Field, mode: Mode) -> Polynomial {
        let unit = Polynomial::one(field);
        let mut acc = unit.clone();
        let x = |v: u32| Polynomial::var(field, Mode::Unitary, v);
        let pw = |v: u32, e: u32| {
            Polynomial::monomial(field, Mode::Unitary, Word::power(v, e), 1).expect("unitary")
        };
        for &(v, a) in &self.beg {
            acc = &acc * &pw(v, a);
        }
        for b in &self.end {
            let br = x(b.vars.0).commutator(&x(b.vars.1)).expect("same field");
            acc = &(&(&acc * &br) * &pw(b.vars.0, b.powers.0)) * &pw(b.vars.1, b.powers.1);
        }
        match mode {
            Mode::Unitary => acc,
            Mode::Nonunitary => acc.to_nonunitary().expect("non-unit term has no constant"),
        }
    }
}

impl Ord for SSTerm {
    /// Total degree, then number of brackets, then bracket letters.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let key = |t: &SSTerm| (t.multidegree().total(), t.lend(), t.bracket_vars());
        key(self)
            .cmp(&key(other))
            .then_with(|| self.beg.cmp(&other.beg))
            .then_with(|| self.end.cmp(&other.end))
    }
}

impl PartialOrd for SSTerm {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

fn write_power(f: &mut fmt::Formatter<'_>, v: u32, e: u32) -> fmt::Result {
    if e == 1 {
        write!(f, "x{v}")
    } else {
        write!(f, "x{v}^{e}")
    }
}

impl fmt::Display for SSTerm {
    /// Renders in the expression grammar, e.g. `x3*[x1,x2]*x1^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unit() {
            return write!(f, "1");
        }
        let mut first = true;
        let mut sep = |f: &mut fmt::Formatter<'_>| -> fmt::Result {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            Ok(())
        };
        for &(v, a) in &self.beg {
            sep(f)?;
            write_power(f, v, a)?;
        }
        for b in &self.end {
            sep(f)?;
            write!(f, "[x{},x{}]", b.vars.0, b.vars.1)?;
            for (v, e) in [(b.vars.0, b.powers.0), (b.vars.1, b.powers.1)] {
                if e > 0 {
                    sep(f)?;
                    write_power(f, v, e)?;
                }
            }
        }
        Ok(())
    }
}

/// A linear combination of SS terms; no zero coefficients are stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SSNormalForm {
    field: Field,
    mode: Mode,
    terms: BTreeMap<SSTerm, u32>,
}

impl SSNormalForm {
    pub fn zero(field: Field, mode: Mode) -> Self {
        SSNormalForm {
            field,
            mode,
            terms: BTreeMap::new(),
        }
    }

    pub fn add_term(&mut self, t: SSTerm, c: u32) {
        let c = c % self.field.p();
        if c == 0 {
            return;
        }
        use std::collections::btree_map::Entry;
        let f = self.field;
        match self.terms.entry(t) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let s = f.add(*e.get(), c);
                if s == 0 {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
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

    pub fn coeff(&self, t: &SSTerm) -> u32 {
        self.terms.get(t).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SSTerm, u32)> + '_ {
        self.terms.iter().map(|(t, &c)| (t, c))
    }

    pub fn add(&self, other: &SSNormalForm) -> SSNormalForm {
        let mut out = self.clone();
        for (t, c) in other.terms() {
            out.add_term(t.clone(), c);
        }
        out
    }

    pub fn scale(&self, c: u32) -> SSNormalForm {
        let mut out = SSNormalForm::zero(self.field, self.mode);
        for (t, a) in self.terms() {
            out.add_term(t.clone(), self.field.mul(a, c));
        }
        out
    }

    /// The polynomial `sum c_t * t`.
    pub fn embed(&self) -> Polynomial {
        let mut out = Polynomial::zero(self.field, self.mode);
        for (t, c) in self.terms() {
            out = &out + &t.embed(self.field, self.mode).scale(c);
        }
        out
    }

    /// Drops every term that is not in BSS. Each such term contains a factor
    /// `x^p` and hence lies in the T-ideal of identities of `G0`.
    pub fn reduce_tg0(&self) -> SSNormalForm {
        let p = self.field.p();
        SSNormalForm {
            field: self.field,
            mode: self.mode,
            terms: self
                .terms
                .iter()
                .filter(|(t, _)| t.is_bss(p))
                .map(|(t, &c)| (t.clone(), c))
                .collect(),
        }
    }
}

impl fmt::Display for SSNormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (t, c)) in self.terms().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            match (c, t.is_unit()) {
                (_, true) => write!(f, "{c}")?,
                (1, false) => write!(f, "{t}")?,
                (_, false) => write!(f, "{c}*{t}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accessors_and_validation() {
        let t = SSTerm::new(
            vec![(3, 1)],
            vec![Bracket {
                vars: (1, 2),
                powers: (0, 0),
            }],
        )
        .unwrap();
        assert_eq!((t.lbeg(), t.lend()), (1, 1));
        assert_eq!(t.to_string(), "x3*[x1,x2]");
        assert!(SSTerm::new(
            vec![(1, 1)],
            vec![Bracket {
                vars: (1, 2),
                powers: (0, 0)
            }]
        )
        .is_err());
        assert!(SSTerm::new(
            vec![],
            vec![Bracket {
                vars: (2, 1),
                powers: (0, 0)
            }]
        )
        .is_err());
        assert!(SSTerm::new(vec![(2, 1), (1, 1)], vec![]).is_err());
        assert!(SSTerm::new(vec![(1, 0)], vec![]).is_err());
    }

    #[test]
    fn bss_and_spss() {
        let w1 = SSTerm::new(
            vec![],
            vec![Bracket {
                vars: (1, 2),
                powers: (2, 2),
            }],
        )
        .unwrap();
        assert!(w1.is_bss(3));
        assert!(!w1.is_spss(3).unwrap());
        let c = SSTerm::new(
            vec![],
            vec![Bracket {
                vars: (1, 2),
                powers: (0, 0),
            }],
        )
        .unwrap();
        assert!(c.is_spss(3).unwrap());
        let m = SSTerm::new(vec![(1, 1), (2, 1)], vec![]).unwrap();
        assert!(!m.is_spss(3).unwrap());
        let big = SSTerm::new(vec![(1, 3)], vec![]).unwrap();
        assert!(!big.is_bss(3));
        assert!(big.is_spss(3).is_err());
    }

    #[test]
    fn from_degree_places_powers_after_brackets() {
        let d = MultiDegree::from_pairs([(1, 3), (2, 3)]);
        assert_eq!(
            SSTerm::from_degree(&d, &[1, 2]).to_string(),
            "[x1,x2]*x1^2*x2^2"
        );
        assert_eq!(SSTerm::from_degree(&d, &[]).to_string(), "x1^3*x2^3");
    }
}
