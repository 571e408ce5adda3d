use std::collections::BTreeMap;

use serde_json::json;

use super::{LabParams, ReportBuilder, Verification, VerificationReport};
use crate::error::Result;
use crate::families::{w, w_of};
use crate::field::Field;
use crate::poly::{Mode, Polynomial};
use crate::spans::{member, Coordinates, MemberOptions, NamedSpace, SpaceSpec, SpanConfig};

/// Budget for the brute-force run, whose commutator instances range over all words.
const THOROUGH_INSTANCES: u64 = 5_000_000;

fn x(field: Field, v: u32) -> Polynomial {
    Polynomial::var(field, Mode::Nonunitary, v)
}

fn family_at(field: Field, vars: &[u32]) -> Result<Polynomial> {
    w_of(&vars.iter().map(|&v| x(field, v)).collect::<Vec<_>>())
}

/// `w_{m+1}` is not in `S2 + W_m + TG0`, so the spaces `W_m + S2 + TG0` strictly grow.
pub struct ChainStrictness;

impl ChainStrictness {
    fn runs(params: &LabParams) -> Vec<(&'static str, SpanConfig)> {
        let mut runs = vec![
            (
                "monomial substitutions",
                SpanConfig {
                    sum_terms: 1,
                    sum_monomial_len: None,
                    ..params.span.clone()
                },
            ),
            (
                "two-monomial sums of length <= 2",
                SpanConfig {
                    sum_terms: 2,
                    sum_monomial_len: Some(2),
                    ..params.span.clone()
                },
            ),
        ];
        if params.thorough {
            runs.push((
                "commutators over all words",
                SpanConfig {
                    sum_terms: 1,
                    sum_monomial_len: None,
                    commutators_over_words: true,
                    max_instances: params.span.max_instances.max(THOROUGH_INSTANCES),
                    ..params.span.clone()
                },
            ));
        }
        runs
    }
}

impl Verification for ChainStrictness {
    fn id(&self) -> &'static str {
        "chain"
    }

    fn title(&self) -> &'static str {
        "w_(m+1) lies outside S2 + W_m + TG0"
    }

    fn run(&self, params: &LabParams) -> Result<VerificationReport> {
        let field = params.field()?;
        let m = params.m;
        let nu = Mode::Nonunitary;
        let mut r = ReportBuilder::new(self, params);
        let target = w(m + 1, field, nu)?;
        let spec = SpaceSpec::named(&[NamedSpace::S2, NamedSpace::W(m), NamedSpace::TG0]);
        r.param("space", json!(spec.to_string()));
        r.param("target", json!(format!("w{}", m + 1)));

        for (label, cfg) in Self::runs(params) {
            r.param(
                &format!("config: {label}"),
                serde_json::to_value(&cfg).expect("plain struct"),
            );
            let cert = member(
                &target,
                &spec,
                &MemberOptions {
                    coords: Some(Coordinates::BSS),
                    config: cfg,
                },
            )?;
            r.claim(
                &format!("w{} not in {spec} ({label})", m + 1),
                !cert.is_member() && cert.exact,
                "not-member, exact",
                format!("{:?}, exact={}", cert.verdict, cert.exact),
            )
            .evidence(serde_json::to_value(&cert).expect("serializable"));
        }

        let bigger = SpaceSpec::named(&[NamedSpace::S2, NamedSpace::W(m + 1), NamedSpace::TG0]);
        let monomial = Self::runs(params).swap_remove(0).1;
        let cert = member(
            &target,
            &bigger,
            &MemberOptions {
                coords: Some(Coordinates::BSS),
                config: monomial,
            },
        )?;
        r.control(
            &format!("w{} not in {bigger}", m + 1),
            cert.is_member(),
            "member",
            format!("{:?}", cert.verdict),
        );

        // Specialization: in u = 2 w(x_f) + w(x_g) with f lexicographically
        // smallest, sending x_f(i) -> x_i and every other variable to zero
        // leaves 2 w.
        let n = 2 * (m + 1);
        let f: Vec<u32> = std::iter::once(1).chain(3..=n + 1).collect();
        let g: Vec<u32> = (2..=n + 1).collect();
        let u = family_at(field, &f)?
            .scale(2)
            .try_add(&family_at(field, &g)?)?;
        let mut theta: BTreeMap<u32, Polynomial> = (1..=n + 1)
            .map(|v| (v, Polynomial::zero(field, nu)))
            .collect();
        for (i, &fi) in f.iter().enumerate() {
            theta.insert(fi, x(field, i as u32 + 1));
        }
        let image = u.substitute(&theta)?;
        r.claim(
            "specialization isolates the smallest summand",
            image == target.scale(2),
            format!("2*w{}", m + 1),
            image.to_string(),
        )
        .evidence(json!({"f": f, "g": g}));
        let mut at_g: BTreeMap<u32, Polynomial> = (1..=n + 1)
            .map(|v| (v, Polynomial::zero(field, nu)))
            .collect();
        for (i, &gi) in g.iter().enumerate() {
            at_g.insert(gi, x(field, i as u32 + 1));
        }
        let image = u.substitute(&at_g)?;
        r.control(
            "specialization at a larger summand",
            image != target.scale(2),
            format!("not 2*w{}", m + 1),
            image.to_string(),
        );

        for i in 1..n {
            let mut vars: Vec<u32> = (1..=n).collect();
            vars.swap(i as usize - 1, i as usize);
            let swapped = family_at(field, &vars)?;
            r.vanishes_mod_t3(
                &format!("swapping x{i}, x{} negates w{}", i + 1, m + 1),
                &swapped.try_add(&target)?,
            );
            if i == 1 {
                r.survives_mod_t3(
                    &format!("swapping x1, x2 fixes w{}", m + 1),
                    &swapped.try_sub(&target)?,
                );
            }
        }
        Ok(r.finish())
    }
}
