//! Fixed-multidegree membership in sums of T-ideals and T-spaces.
//!
//! A space is given by generators. Its component of multidegree `d` is
//! approximated from below by substitution instances of the generators of
//! that multidegree; each generator reports whether its instances are known
//! to span the whole component (see [`Completeness`]). Vectors are written in
//! word coordinates, or in normal-form coordinates when the space contains the
//! ideal being quotiented by, and compared by Gaussian elimination over F_p.

mod coords;
mod instances;
mod linalg;
mod space;
mod words;

pub use coords::{CoordSystem, Coordinates};
pub use instances::Instance;
pub use linalg::{rank_f_p, solve_in_span, Echelon, Matrix};
pub use space::{Generator, GeneratorKind, NamedSpace, SpaceSpec, Summand};
pub use words::{component_words, for_each_cut, for_each_word};

use std::collections::BTreeMap;
use std::ops::ControlFlow;

use serde::Serialize;

use crate::canonical::{normal_form, Modulus};
use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::poly::{Mode, Polynomial};
use crate::word::MultiDegree;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpanConfig {
    /// Refuse components with more words than this.
    pub max_words: u128,
    /// Refuse to generate more substitution instances than this per component.
    pub max_instances: u64,
    /// Largest number of distinct monomials summed into one variable when
    /// substituting into a non-multilinear generator.
    pub sum_terms: usize,
    /// Longest monomial allowed inside such a sum (single monomials are not
    /// limited).
    pub sum_monomial_len: Option<usize>,
    /// Enumerate commutator instances `[m, x]` over all words `m` even in
    /// normal-form coordinates, instead of over the basis of `m`'s component.
    pub commutators_over_words: bool,
}

impl Default for SpanConfig {
    fn default() -> Self {
        SpanConfig {
            max_words: 500_000,
            max_instances: 200_000,
            sum_terms: 3,
            sum_monomial_len: None,
            commutators_over_words: false,
        }
    }
}

/// How much of a generator's component the enumerated instances are known to span.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Completeness {
    /// The generator lies in the ideal the coordinates quotient by.
    Absorbed,
    /// Multilinear generator: monomial substitutions span everything.
    Exact,
    /// A `W` family modulo `S2 + TG0`, where additivity in each argument and
    /// `kappa(u, vw) = 0` reduce every substitution to monomial ones.
    Reduction,
    /// Bounded sums of monomials only; the true component may be larger.
    Heuristic,
}

impl Completeness {
    pub fn is_exact(self) -> bool {
        self != Completeness::Heuristic
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeneratorReport {
    pub generator: String,
    pub origin: String,
    pub completeness: Completeness,
    pub instances: u64,
}

/// The span of all instances of a space at one multidegree.
pub struct InstanceSpan {
    pub system: CoordSystem,
    pub basis: Echelon,
    /// Instances that enlarged the span, with their coordinate vectors.
    pub accepted: Vec<(Instance, Vec<u32>)>,
    pub generators: Vec<GeneratorReport>,
    field: Field,
}

impl InstanceSpan {
    pub fn rank(&self) -> usize {
        self.basis.rank()
    }

    pub fn is_exact(&self) -> bool {
        self.generators.iter().all(|g| g.completeness.is_exact())
    }

    /// The accepted instance vectors as matrix columns.
    pub fn matrix(&self) -> Matrix {
        let cols: Vec<Vec<u32>> = self.accepted.iter().map(|(_, v)| v.clone()).collect();
        Matrix::from_columns(self.field, self.system.dim(), &cols).expect("consistent dimensions")
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        self.basis.contains(&self.system.vector(f)?)
    }
}

fn check_coordinates(spec: &SpaceSpec, coords: Coordinates) -> Result<()> {
    let have = spec.contained_modulus();
    let ok = match coords.modulus() {
        None => true,
        Some(Modulus::T3) => have.is_some(),
        Some(Modulus::TG0) => have == Some(Modulus::TG0),
    };
    if ok {
        Ok(())
    } else {
        Err(AlgebraError::BadSpace(format!(
            "{coords} coordinates need a space containing the quotient ideal, got `{spec}`"
        )))
    }
}

fn completeness(gen: &Generator, coords: Coordinates, has_commutators: bool) -> Completeness {
    if let Some(m) = coords.modulus() {
        if normal_form(&gen.poly, m).is_zero() {
            return Completeness::Absorbed;
        }
    }
    if gen.poly.is_multilinear() || (gen.kind == GeneratorKind::Space && gen.is_commutator()) {
        Completeness::Exact
    } else if gen.kappa_family && coords == Coordinates::BSS && has_commutators {
        Completeness::Reduction
    } else {
        Completeness::Heuristic
    }
}

/// Spans the multidegree-`d` component of `spec` in the given coordinates.
pub fn instance_span(
    spec: &SpaceSpec,
    d: &MultiDegree,
    coords: Coordinates,
    field: Field,
    mode: Mode,
    cfg: &SpanConfig,
) -> Result<InstanceSpan> {
    build_span(spec, d, coords, field, mode, cfg, None)
}

/// Like [`instance_span`], but stops early once `target` is in the span.
fn build_span(
    spec: &SpaceSpec,
    d: &MultiDegree,
    coords: Coordinates,
    field: Field,
    mode: Mode,
    cfg: &SpanConfig,
    target: Option<&[u32]>,
) -> Result<InstanceSpan> {
    check_coordinates(spec, coords)?;
    let system = CoordSystem::new(coords, d, field, cfg.max_words)?;
    let gens = spec.generators(field, mode)?;
    let has_commutators = gens
        .iter()
        .any(|g| g.kind == GeneratorKind::Space && g.is_commutator());
    let mut basis = Echelon::new(field, system.dim(), true);
    let mut accepted = Vec::new();
    let mut reports = Vec::new();
    let mut ctx = instances::Context {
        field,
        mode,
        coords,
        cfg,
        used: 0,
    };
    let mut done = target.is_some_and(|t| t.iter().all(|&x| x == 0)) || basis.is_full();
    for gen in &gens {
        let completeness = completeness(gen, coords, has_commutators);
        let before = ctx.used;
        if completeness != Completeness::Absorbed && !done {
            let mut sink = |inst: Instance| -> Result<ControlFlow<()>> {
                let v = system.vector(&inst.poly)?;
                if basis.insert(&v)?.is_none() {
                    return Ok(ControlFlow::Continue(()));
                }
                accepted.push((inst, v));
                let reached = basis.is_full() || target.map_or(Ok(false), |t| basis.contains(t))?;
                Ok(if reached {
                    ControlFlow::Break(())
                } else {
                    ControlFlow::Continue(())
                })
            };
            done = instances::generate(gen, d, &mut ctx, &mut sink)?.is_break();
        }
        reports.push(GeneratorReport {
            generator: gen.to_string(),
            origin: gen.origin.clone(),
            completeness,
            instances: ctx.used - before,
        });
    }
    Ok(InstanceSpan {
        system,
        basis,
        accepted,
        generators: reports,
        field,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Member,
    NotMember,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertificateEntry {
    pub coef: u32,
    pub instance: String,
    pub value: Polynomial,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentReport {
    pub multidegree: String,
    pub dim: usize,
    pub rank: usize,
    pub member: bool,
    /// Coordinates where the target's residual modulo the span is nonzero.
    pub residual: Vec<(String, u32)>,
    pub generators: Vec<GeneratorReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MembershipCertificate {
    pub verdict: Verdict,
    /// A member verdict always is; a non-member verdict is exact when every
    /// generator's instances span its whole component.
    pub exact: bool,
    pub certificate: Vec<CertificateEntry>,
    pub rank: usize,
    pub space: String,
    pub coordinates: Coordinates,
    pub components: Vec<ComponentReport>,
}

impl MembershipCertificate {
    pub fn is_member(&self) -> bool {
        self.verdict == Verdict::Member
    }

    /// Whether the certificate's combination equals `f`, exactly in word
    /// coordinates or up to the quotient ideal in normal-form coordinates.
    pub fn recheck(&self, f: &Polynomial) -> Result<bool> {
        if !self.is_member() {
            return Ok(false);
        }
        let mut diff = f.clone();
        for e in &self.certificate {
            diff = diff.try_sub(&e.value.scale(e.coef))?;
        }
        Ok(match self.coordinates.modulus() {
            None => diff.is_zero(),
            Some(m) => normal_form(&diff, m).is_zero(),
        })
    }
}

#[derive(Debug, Clone, Default)]
pub struct MemberOptions {
    /// Defaults to the finest coordinates the space allows.
    pub coords: Option<Coordinates>,
    pub config: SpanConfig,
}

/// Decides `f in spec` componentwise.
pub fn member(
    f: &Polynomial,
    spec: &SpaceSpec,
    opts: &MemberOptions,
) -> Result<MembershipCertificate> {
    let coords = opts
        .coords
        .unwrap_or_else(|| Coordinates::for_modulus(spec.contained_modulus()));
    check_coordinates(spec, coords)?;
    let field = f.field();
    let mut certificate = Vec::new();
    let mut components = Vec::new();
    let mut rank = 0;
    let mut all_member = true;
    let mut exact = true;
    let parts: BTreeMap<MultiDegree, Polynomial> = f.components();
    for (d, part) in &parts {
        let system = CoordSystem::new(coords, d, field, opts.config.max_words)?;
        let target = system.vector(part)?;
        let span = build_span(
            spec,
            d,
            coords,
            field,
            f.mode(),
            &opts.config,
            Some(&target),
        )?;
        rank += span.rank();
        exact &= span.is_exact();
        let report = match span.basis.express(&target)? {
            Some(combo) => {
                for (c, (inst, _)) in combo.iter().zip(&span.accepted) {
                    if *c != 0 {
                        certificate.push(CertificateEntry {
                            coef: *c,
                            instance: inst.label.clone(),
                            value: inst.poly.clone(),
                        });
                    }
                }
                ComponentReport {
                    multidegree: d.to_string(),
                    dim: span.system.dim(),
                    rank: span.rank(),
                    member: true,
                    residual: Vec::new(),
                    generators: span.generators,
                }
            }
            None => {
                all_member = false;
                let residual = span.basis.residual(&target)?.unwrap_or_default();
                ComponentReport {
                    multidegree: d.to_string(),
                    dim: span.system.dim(),
                    rank: span.rank(),
                    member: false,
                    residual: residual
                        .iter()
                        .enumerate()
                        .filter(|(_, &c)| c != 0)
                        .map(|(i, &c)| (span.system.labels()[i].clone(), c))
                        .collect(),
                    generators: span.generators,
                }
            }
        };
        components.push(report);
    }
    let verdict = if all_member {
        Verdict::Member
    } else {
        Verdict::NotMember
    };
    Ok(MembershipCertificate {
        verdict,
        exact: all_member || exact,
        certificate,
        rank,
        space: spec.to_string(),
        coordinates: coords,
        components,
    })
}
