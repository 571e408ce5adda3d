use std::fmt;

use serde::{Serialize, Serializer};

use crate::canonical::Modulus;
use crate::error::{AlgebraError, Result};
use crate::expr;
use crate::families;
use crate::field::Field;
use crate::poly::{Mode, Polynomial};

/// Spaces with a fixed meaning.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NamedSpace {
    /// T-ideal of `[[x1, x2], x3]`.
    T3,
    /// T-space of `[x1, x2]`.
    S2,
    /// Identities of the nonunitary Grassmann algebra: T-ideal of `x1^p` plus `T3`.
    TG0,
    /// T-space of `w_1, ..., w_m`.
    W(u32),
    /// T-space of `x0^p w_0, ..., x0^p w_m`.
    X0pW(u32),
}

impl fmt::Display for NamedSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NamedSpace::T3 => write!(f, "T3"),
            NamedSpace::S2 => write!(f, "S2"),
            NamedSpace::TG0 => write!(f, "TG0"),
            NamedSpace::W(m) => write!(f, "W{m}"),
            NamedSpace::X0pW(m) => write!(f, "X0pW{m}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Summand {
    TIdeal(Polynomial),
    TSpace(Polynomial),
    Named(NamedSpace),
}

impl fmt::Display for Summand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Summand::TIdeal(g) => write!(f, "ideal({g})"),
            Summand::TSpace(g) => write!(f, "space({g})"),
            Summand::Named(n) => write!(f, "{n}"),
        }
    }
}

/// A sum of T-ideals and T-spaces, each given by generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpaceSpec {
    pub summands: Vec<Summand>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GeneratorKind {
    Ideal,
    Space,
}

/// One generator of a summand after named spaces are expanded.
#[derive(Debug, Clone)]
pub struct Generator {
    pub kind: GeneratorKind,
    pub poly: Polynomial,
    /// The summand this generator came from, for reports.
    pub origin: String,
    /// Member of a `W` family, whose general substitutions reduce to monomial
    /// ones modulo `S2 + TG0`.
    pub kappa_family: bool,
}

impl Generator {
    /// `c * [x_a, x_b]` for some `c != 0`, `a != b`.
    pub fn is_commutator(&self) -> bool {
        let terms: Vec<_> = self.poly.terms().collect();
        if terms.len() != 2 || terms[0].0.len() != 2 {
            return false;
        }
        let (w1, c1) = terms[0];
        let (w2, c2) = terms[1];
        let (a, b) = (w1.letters()[0], w1.letters()[1]);
        a != b && w2.letters() == [b, a] && self.poly.field().add(c1, c2) == 0
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            GeneratorKind::Ideal => write!(f, "ideal({})", self.poly),
            GeneratorKind::Space => write!(f, "space({})", self.poly),
        }
    }
}

impl SpaceSpec {
    pub fn named(spaces: &[NamedSpace]) -> Self {
        SpaceSpec {
            summands: spaces.iter().copied().map(Summand::Named).collect(),
        }
    }

    pub fn with(mut self, s: Summand) -> Self {
        self.summands.push(s);
        self
    }

    /// Parses `+`-separated summands: `T3`, `S2`, `TG0`, `W<m>`, `X0pW<m>`,
    /// `ideal(<expr>)`, `space(<expr>)`.
    pub fn parse(text: &str, field: Field, mode: Mode) -> Result<Self> {
        let mut summands = Vec::new();
        for part in split_top_level(text)? {
            summands.push(parse_summand(part.trim(), field, mode)?);
        }
        if summands.is_empty() {
            return Err(AlgebraError::BadSpace("empty space".into()));
        }
        Ok(SpaceSpec { summands })
    }

    fn has(&self, n: NamedSpace) -> bool {
        self.summands.contains(&Summand::Named(n))
    }

    /// The largest normal-form modulus known to lie inside the space.
    pub fn contained_modulus(&self) -> Option<Modulus> {
        if self.has(NamedSpace::TG0) {
            Some(Modulus::TG0)
        } else if self.has(NamedSpace::T3) {
            Some(Modulus::T3)
        } else {
            None
        }
    }

    pub fn generators(&self, field: Field, mode: Mode) -> Result<Vec<Generator>> {
        let x = |v| Polynomial::var(field, mode, v);
        let triple = x(1).commutator(&x(2))?.commutator(&x(3))?;
        let mut out = Vec::new();
        for s in &self.summands {
            let origin = s.to_string();
            let mut push = |kind, poly: Polynomial, kappa_family| {
                out.push(Generator {
                    kind,
                    poly,
                    origin: origin.clone(),
                    kappa_family,
                })
            };
            match s {
                Summand::TIdeal(g) => push(GeneratorKind::Ideal, g.with_mode(mode)?, false),
                Summand::TSpace(g) => push(GeneratorKind::Space, g.with_mode(mode)?, false),
                Summand::Named(NamedSpace::T3) => push(GeneratorKind::Ideal, triple.clone(), false),
                Summand::Named(NamedSpace::S2) => {
                    push(GeneratorKind::Space, x(1).commutator(&x(2))?, false)
                }
                Summand::Named(NamedSpace::TG0) => {
                    push(GeneratorKind::Ideal, x(1).pow(field.p())?, false);
                    push(GeneratorKind::Ideal, triple.clone(), false);
                }
                Summand::Named(NamedSpace::W(m)) => {
                    for j in 1..=*m {
                        push(GeneratorKind::Space, families::w(j, field, mode)?, true);
                    }
                }
                Summand::Named(NamedSpace::X0pW(m)) => {
                    let x0p = x(0).pow(field.p())?;
                    push(GeneratorKind::Space, x0p.clone(), false);
                    for j in 1..=*m {
                        push(
                            GeneratorKind::Space,
                            x0p.try_mul(&families::w(j, field, mode)?)?,
                            false,
                        );
                    }
                }
            }
        }
        Ok(out)
    }
}

impl fmt::Display for SpaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.summands.iter().enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl Serialize for SpaceSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn split_top_level(text: &str) -> Result<Vec<&str>> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            '+' if depth == 0 => {
                parts.push(&text[start..i]);
                start = i + 1;
            }
            _ => {}
        }
        if depth < 0 {
            return Err(AlgebraError::BadSpace(format!("unbalanced `{c}` at {i}")));
        }
    }
    if depth != 0 {
        return Err(AlgebraError::BadSpace("unbalanced brackets".into()));
    }
    parts.push(&text[start..]);
    Ok(parts)
}

fn parse_summand(s: &str, field: Field, mode: Mode) -> Result<Summand> {
    let lower = s.to_ascii_lowercase();
    let inner = |prefix: &str| {
        lower
            .strip_prefix(prefix)
            .and_then(|r| r.trim_start().strip_prefix('('))
            .and_then(|r| r.strip_suffix(')'))
            .map(|_| {
                let open = s.find('(').expect("checked above");
                &s[open + 1..s.len() - 1]
            })
    };
    if let Some(body) = inner("ideal") {
        return Ok(Summand::TIdeal(expr::parse(body, field, mode)?));
    }
    if let Some(body) = inner("space") {
        return Ok(Summand::TSpace(expr::parse(body, field, mode)?));
    }
    let index = |r: &str| {
        r.parse::<u32>()
            .map_err(|_| AlgebraError::BadSpace(format!("bad family index in `{s}`")))
    };
    Ok(Summand::Named(match lower.as_str() {
        "t3" => NamedSpace::T3,
        "s2" => NamedSpace::S2,
        "tg0" => NamedSpace::TG0,
        _ => {
            if let Some(r) = lower.strip_prefix("x0pw") {
                NamedSpace::X0pW(index(r)?)
            } else if let Some(r) = lower.strip_prefix('w') {
                NamedSpace::W(index(r)?)
            } else {
                return Err(AlgebraError::BadSpace(format!("unknown summand `{s}`")));
            }
        }
    }))
}
