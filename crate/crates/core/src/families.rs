//! Constructors for the polynomial families used throughout: the central
//! commutator products `kappa`, `w_m`, the sets `W_m`, and `phi'_m`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::poly::{Mode, Polynomial};

/// `kappa(u, v) = [u, v] u^{p-1} v^{p-1}`.
pub fn kappa(u: &Polynomial, v: &Polynomial) -> Result<Polynomial> {
    let e = u.field().p() - 1;
    u.commutator(v)?.try_mul(&u.pow(e)?)?.try_mul(&v.pow(e)?)
}

/// `w_m = kappa(x1, x2) kappa(x3, x4) ... kappa(x_{2m-1}, x_{2m})`; `w_0 = 1`
/// (unitary only).
pub fn w(m: u32, field: Field, mode: Mode) -> Result<Polynomial> {
    if m == 0 {
        return match mode {
            Mode::Unitary => Ok(Polynomial::one(field)),
            Mode::Nonunitary => Err(AlgebraError::UnitInNonunitary),
        };
    }
    let x = |v| Polynomial::var(field, mode, v);
    let mut acc = kappa(&x(1), &x(2))?;
    for r in 2..=m {
        acc = acc.try_mul(&kappa(&x(2 * r - 1), &x(2 * r))?)?;
    }
    Ok(acc)
}

/// `w_m(args[0], ..., args[2m-1])`.
pub fn w_of(args: &[Polynomial]) -> Result<Polynomial> {
    let first = args.first().ok_or(AlgebraError::MissingAssignment(1))?;
    let m = (args.len() / 2) as u32;
    let base = w(m, first.field(), first.mode())?;
    let assignment: BTreeMap<u32, Polynomial> = args
        .iter()
        .enumerate()
        .map(|(i, a)| (i as u32 + 1, a.clone()))
        .collect();
    base.substitute(&assignment)
}

/// All `w_j(x_{f(1)}, ..., x_{f(2j)})` for `1 <= j <= m` and strictly
/// increasing `f` into `1..=max_var`, ordered by `j` then lexicographically in `f`.
pub fn enumerate_w(m: u32, max_var: u32, field: Field, mode: Mode) -> Result<Vec<Polynomial>> {
    let mut out = Vec::new();
    for j in 1..=m {
        let base = w(j, field, mode)?;
        for f in increasing_maps(2 * j as usize, max_var) {
            let rename: BTreeMap<u32, u32> = f
                .iter()
                .enumerate()
                .map(|(i, &t)| (i as u32 + 1, t))
                .collect();
            out.push(base.rename(&rename));
        }
    }
    Ok(out)
}

/// Strictly increasing maps `{1..len} -> {1..max}`, lexicographic.
pub fn increasing_maps(len: usize, max: u32) -> Vec<Vec<u32>> {
    fn go(len: usize, start: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for v in start..=max {
            cur.push(v);
            go(len, v + 1, max, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(len, 1, max, &mut Vec::new(), &mut out);
    out
}

/// Readings of the displayed `phi'_m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PhiVariant {
    /// `prod x_{2i-1}^{p-1} x_{2i} x_{2i-1} x_{2i}^{p-1}`, the literal word product.
    AsPrinted,
    /// `prod x_{2i-1}^{p-1} [x_{2i-1}, x_{2i}] x_{2i}^{p-1}`.
    Bracketed,
}

impl FromStr for PhiVariant {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "as_printed" | "as-printed" | "printed" => Ok(PhiVariant::AsPrinted),
            "bracketed" => Ok(PhiVariant::Bracketed),
            other => Err(AlgebraError::UnknownStrategy(other.to_string())),
        }
    }
}

impl fmt::Display for PhiVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PhiVariant::AsPrinted => "as_printed",
            PhiVariant::Bracketed => "bracketed",
        })
    }
}

pub fn phi_prime(m: u32, variant: PhiVariant, field: Field, mode: Mode) -> Result<Polynomial> {
    if m == 0 {
        return Err(AlgebraError::DimensionMismatch {
            expected: 1,
            got: 0,
        });
    }
    let e = field.p() - 1;
    let x = |v| Polynomial::var(field, mode, v);
    let mut acc: Option<Polynomial> = None;
    for i in 1..=m {
        let (a, b) = (x(2 * i - 1), x(2 * i));
        let middle = match variant {
            PhiVariant::AsPrinted => b.try_mul(&a)?,
            PhiVariant::Bracketed => a.commutator(&b)?,
        };
        let factor = a.pow(e)?.try_mul(&middle)?.try_mul(&b.pow(e)?)?;
        acc = Some(match acc {
            None => factor,
            Some(prev) => prev.try_mul(&factor)?,
        });
    }
    Ok(acc.expect("m >= 1"))
}
