//! Identity and centrality checks, with interchangeable assignment strategies.

use std::collections::BTreeMap;
use std::ops::ControlFlow;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{evaluate, random_element, GrassmannElement, SamplerConfig, Subset};
use crate::error::{AlgebraError, Result};
use crate::poly::{Mode, Polynomial};

pub type Assignment = BTreeMap<u32, GrassmannElement>;

/// A way of producing Grassmann assignments for the variables of a polynomial.
pub trait IdentityStrategy: Send + Sync {
    fn name(&self) -> &'static str;

    /// Parameters needed to reproduce the run.
    fn describe(&self) -> String;

    /// Calls `visit` on each assignment until it breaks. Returns the number of
    /// assignments visited.
    fn for_each_assignment(
        &self,
        f: &Polynomial,
        algebra: Mode,
        rank: u32,
        visit: &mut dyn FnMut(&Assignment) -> ControlFlow<()>,
    ) -> Result<u64>;
}

/// Seeded random sparse elements.
#[derive(Debug, Clone, Copy)]
pub struct RandomTrials {
    pub trials: u64,
    pub seed: u64,
    pub sampler: SamplerConfig,
}

impl IdentityStrategy for RandomTrials {
    fn name(&self) -> &'static str {
        "random"
    }

    fn describe(&self) -> String {
        format!(
            "random(trials={}, seed={}, terms={}, max_support={})",
            self.trials, self.seed, self.sampler.terms, self.sampler.max_support
        )
    }

    fn for_each_assignment(
        &self,
        f: &Polynomial,
        algebra: Mode,
        rank: u32,
        visit: &mut dyn FnMut(&Assignment) -> ControlFlow<()>,
    ) -> Result<u64> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let vars = f.variables();
        let mut n = 0;
        for _ in 0..self.trials {
            let mut a = Assignment::new();
            for &v in &vars {
                a.insert(
                    v,
                    random_element(f.field(), rank, algebra, self.sampler, &mut rng)?,
                );
            }
            n += 1;
            if visit(&a).is_break() {
                break;
            }
        }
        Ok(n)
    }
}

/// Every assignment of basis elements to the variables of a multilinear
/// polynomial. Tuples whose supports overlap are skipped: every word uses each
/// variable once, so each word's image contains a repeated generator and is 0.
#[derive(Debug, Clone, Copy, Default)]
pub struct ExhaustiveBasis;

impl IdentityStrategy for ExhaustiveBasis {
    fn name(&self) -> &'static str {
        "exhaustive"
    }

    fn describe(&self) -> String {
        "exhaustive(basis tuples with pairwise disjoint supports)".to_string()
    }

    fn for_each_assignment(
        &self,
        f: &Polynomial,
        algebra: Mode,
        rank: u32,
        visit: &mut dyn FnMut(&Assignment) -> ControlFlow<()>,
    ) -> Result<u64> {
        if !f.is_multilinear() {
            return Err(AlgebraError::NotMultilinear);
        }
        let vars: Vec<u32> = f.variables().into_iter().collect();
        let k = vars.len() as u32;
        let total = (k as u128 + 1).checked_pow(rank).unwrap_or(u128::MAX);
        const LIMIT: u128 = 50_000_000;
        if total > LIMIT {
            return Err(AlgebraError::BudgetExceeded {
                what: "disjoint basis tuples",
                needed: total,
                limit: LIMIT,
            });
        }
        // owner[g] in 0..=k: 0 leaves generator g+1 unused, otherwise it goes
        // to variable owner[g]-1
        let mut owner = vec![0u32; rank as usize];
        let mut n = 0;
        loop {
            let mut subsets = vec![0 as Subset; k as usize];
            for (g, &o) in owner.iter().enumerate() {
                if o > 0 {
                    subsets[o as usize - 1] |= 1 << g;
                }
            }
            if algebra == Mode::Unitary || subsets.iter().all(|&s| s != 0) {
                let mut a = Assignment::new();
                for (&v, &s) in vars.iter().zip(&subsets) {
                    let mut g = GrassmannElement::zero(f.field(), rank, algebra)?;
                    g.add_term(s, 1)?;
                    a.insert(v, g);
                }
                n += 1;
                if visit(&a).is_break() {
                    return Ok(n);
                }
            }
            // advance the base-(k+1) counter
            let mut i = 0;
            loop {
                if i == owner.len() {
                    return Ok(n);
                }
                owner[i] += 1;
                if owner[i] <= k {
                    break;
                }
                owner[i] = 0;
                i += 1;
            }
        }
    }
}

pub fn strategy_names() -> &'static [&'static str] {
    &["random", "exhaustive"]
}

/// Looks up a strategy by name.
pub fn strategy(name: &str, trials: u64, seed: u64) -> Result<Box<dyn IdentityStrategy>> {
    match name {
        "random" => Ok(Box::new(RandomTrials {
            trials,
            seed,
            sampler: SamplerConfig::default(),
        })),
        "exhaustive" | "exhaustive_basis" => Ok(Box::new(ExhaustiveBasis)),
        other => Err(AlgebraError::UnknownStrategy(other.to_string())),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub assignment: Vec<(String, String)>,
    pub value: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub against: Option<String>,
}

impl Witness {
    fn new(a: &Assignment, value: &GrassmannElement, against: Option<String>) -> Self {
        Witness {
            assignment: a
                .iter()
                .map(|(v, g)| (format!("x{v}"), g.to_string()))
                .collect(),
            value: value.to_string(),
            against,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum IdentityVerdict {
    Holds {
        algebra: String,
        rank: u32,
        strategy: String,
        evaluations: u64,
    },
    Fails {
        algebra: String,
        rank: u32,
        strategy: String,
        witness: Witness,
    },
}

impl IdentityVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, IdentityVerdict::Holds { .. })
    }
}

fn algebra_name(m: Mode) -> String {
    match m {
        Mode::Unitary => "G".into(),
        Mode::Nonunitary => "G0".into(),
    }
}

/// Evaluates `f` under the strategy's assignments; fails at the first nonzero image.
pub fn check_identity(
    f: &Polynomial,
    algebra: Mode,
    rank: u32,
    strat: &dyn IdentityStrategy,
) -> Result<IdentityVerdict> {
    let f = if algebra == Mode::Unitary {
        f.to_unitary()
    } else {
        f.clone()
    };
    let mut failure = None;
    let mut err = None;
    let n = strat.for_each_assignment(&f, algebra, rank, &mut |a| match evaluate(&f, a) {
        Ok(v) if v.is_zero() => ControlFlow::Continue(()),
        Ok(v) => {
            failure = Some(Witness::new(a, &v, None));
            ControlFlow::Break(())
        }
        Err(e) => {
            err = Some(e);
            ControlFlow::Break(())
        }
    })?;
    if let Some(e) = err {
        return Err(e);
    }
    let (algebra, strategy) = (algebra_name(algebra), strat.describe());
    Ok(match failure {
        None => IdentityVerdict::Holds {
            algebra,
            rank,
            strategy,
            evaluations: n,
        },
        Some(witness) => IdentityVerdict::Fails {
            algebra,
            rank,
            strategy,
            witness,
        },
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CentralVerdict {
    pub algebra: String,
    pub rank: u32,
    pub strategy: String,
    pub evaluations: u64,
    /// Every sampled image commuted with every generator.
    pub central: bool,
    /// Some sampled image was nonzero, so `f` is not an identity.
    pub nonzero_seen: bool,
    pub non_central_witness: Option<Witness>,
    pub nonzero_witness: Option<Witness>,
}

impl CentralVerdict {
    pub fn is_central_polynomial(&self) -> bool {
        self.central && self.nonzero_seen
    }
}

fn first_noncommuting_generator(v: &GrassmannElement) -> Option<u32> {
    (1..=v.rank()).find(|&i| {
        let e = GrassmannElement::generator(v.field(), v.rank(), v.mode(), i).expect("in range");
        !v.commutator(&e).expect("same shape").is_zero()
    })
}

/// Checks that every sampled image of `f` is central, stopping at the first
/// non-central one, and records whether a nonzero image was seen.
pub fn check_central(
    f: &Polynomial,
    algebra: Mode,
    rank: u32,
    strat: &dyn IdentityStrategy,
) -> Result<CentralVerdict> {
    let f = if algebra == Mode::Unitary {
        f.to_unitary()
    } else {
        f.clone()
    };
    let mut non_central = None;
    let mut nonzero = None;
    let mut err = None;
    let n = strat.for_each_assignment(&f, algebra, rank, &mut |a| {
        let v = match evaluate(&f, a) {
            Ok(v) => v,
            Err(e) => {
                err = Some(e);
                return ControlFlow::Break(());
            }
        };
        if v.is_zero() {
            return ControlFlow::Continue(());
        }
        if nonzero.is_none() {
            nonzero = Some(Witness::new(a, &v, None));
        }
        match first_noncommuting_generator(&v) {
            None => ControlFlow::Continue(()),
            Some(i) => {
                non_central = Some(Witness::new(a, &v, Some(format!("e{i}"))));
                ControlFlow::Break(())
            }
        }
    })?;
    if let Some(e) = err {
        return Err(e);
    }
    Ok(CentralVerdict {
        algebra: algebra_name(algebra),
        rank,
        strategy: strat.describe(),
        evaluations: n,
        central: non_central.is_none(),
        nonzero_seen: nonzero.is_some(),
        non_central_witness: non_central,
        nonzero_witness: nonzero,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    fn x(v: u32) -> Polynomial {
        Polynomial::var(Field::new(3).unwrap(), Mode::Nonunitary, v)
    }

    #[test]
    fn cube_fails_on_unitary_algebra() {
        let cube = x(1).pow(3).unwrap();
        let s = strategy("random", 50, 1).unwrap();
        let v = check_identity(&cube, Mode::Unitary, 6, s.as_ref()).unwrap();
        assert!(!v.holds());
    }

    #[test]
    fn exhaustive_rejects_non_multilinear() {
        let sq = x(1).pow(2).unwrap();
        let r = check_identity(&sq, Mode::Nonunitary, 4, &ExhaustiveBasis);
        assert_eq!(r, Err(AlgebraError::NotMultilinear));
    }

    #[test]
    fn exhaustive_counts_disjoint_tuples() {
        // two variables, rank 3: 3^3 owner maps, of which those giving both
        // variables a nonempty support number 3^3 - 2*2^3 + 1 = 12.
        let c = x(1).commutator(&x(2)).unwrap();
        let mut n = 0;
        ExhaustiveBasis
            .for_each_assignment(&c, Mode::Nonunitary, 3, &mut |_| {
                n += 1;
                ControlFlow::Continue(())
            })
            .unwrap();
        assert_eq!(n, 12);
    }

    #[test]
    fn letter_is_not_central() {
        let v = check_central(&x(1), Mode::Nonunitary, 4, &ExhaustiveBasis).unwrap();
        assert!(!v.central);
        let w = v.non_central_witness.unwrap();
        assert_eq!(w.assignment[0].1, "e1");
        assert_eq!(w.against.as_deref(), Some("e2"));
    }

    #[test]
    fn unknown_strategy() {
        assert!(strategy("bogus", 1, 1).is_err());
    }
}
