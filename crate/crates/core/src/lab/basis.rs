use serde_json::json;

use super::{LabParams, ReportBuilder, Verification, VerificationReport};
use crate::canonical::{enumerate_bss, enumerate_ss, normal_form_tg0, SSNormalForm};
use crate::error::Result;
use crate::families::w;
use crate::field::Field;
use crate::poly::{Mode, Polynomial};
use crate::spans::{
    component_words, instance_span, member, Coordinates, MemberOptions, NamedSpace, SpaceSpec,
};
use crate::word::{MultiDegree, Word};

const MAX_TOTAL: u32 = 6;
const VARS: u32 = 3;

/// The SS and BSS term counts equal the codimensions of the instance spans.
pub struct BasisDimensions;

impl Verification for BasisDimensions {
    fn id(&self) -> &'static str {
        "bss-basis"
    }

    fn title(&self) -> &'static str {
        "SS and BSS terms count the quotients by T3 and TG0 in every small multidegree"
    }

    fn run(&self, params: &LabParams) -> Result<VerificationReport> {
        let field = params.field()?;
        let mut r = ReportBuilder::new(self, params);
        r.param("max_total_degree", json!(MAX_TOTAL));
        r.param("variables", json!(VARS));
        let degrees = MultiDegree::all_up_to(MAX_TOTAL, VARS);
        let mut words = 0u128;
        let mut ss_bad = Vec::new();
        let mut bss_bad = Vec::new();
        let mut t3_only_bad = 0usize;
        for d in &degrees {
            let n = d.word_count();
            words += n;
            let rank = |spec: &[NamedSpace]| -> Result<usize> {
                Ok(instance_span(
                    &SpaceSpec::named(spec),
                    d,
                    Coordinates::Words,
                    field,
                    Mode::Nonunitary,
                    &params.span,
                )?
                .rank())
            };
            let t3 = rank(&[NamedSpace::T3])?;
            let tg0 = rank(&[NamedSpace::TG0])?;
            let (ss, bss) = (enumerate_ss(d).len(), enumerate_bss(d, field).len());
            if n as usize - t3 != ss {
                ss_bad.push(
                    json!({"multidegree": d.to_string(), "codim": n as usize - t3, "terms": ss}),
                );
            }
            if n as usize - tg0 != bss {
                bss_bad.push(
                    json!({"multidegree": d.to_string(), "codim": n as usize - tg0, "terms": bss}),
                );
            }
        }
        // The control needs degrees that reach p, or T3 and TG0 coincide.
        let p = field.p();
        for d in [
            MultiDegree::from_pairs([(1, p)]),
            MultiDegree::from_pairs([(1, p), (2, 1)]),
        ] {
            let t3 = instance_span(
                &SpaceSpec::named(&[NamedSpace::T3]),
                &d,
                Coordinates::Words,
                field,
                Mode::Nonunitary,
                &params.span,
            )?;
            if d.word_count() as usize - t3.rank() != enumerate_bss(&d, field).len() {
                t3_only_bad += 1;
            }
        }
        r.param("components", json!(degrees.len()));
        r.param("words", json!(words as u64));
        r.claim(
            "#words - rank(T3) = #SS",
            ss_bad.is_empty(),
            "equal in every component",
            format!("{} mismatches", ss_bad.len()),
        )
        .evidence(json!(ss_bad));
        r.claim(
            "#words - rank(TG0) = #BSS",
            bss_bad.is_empty(),
            "equal in every component",
            format!("{} mismatches", bss_bad.len()),
        )
        .evidence(json!(bss_bad));
        r.control(
            "#words - rank(T3) = #BSS (power generator dropped)",
            t3_only_bad > 0,
            "some component disagrees",
            format!("{t3_only_bad} components disagree"),
        );
        Ok(r.finish())
    }
}

fn spss_violations(nf: &SSNormalForm, p: u32) -> Result<Vec<String>> {
    let mut bad = Vec::new();
    for (t, _) in nf.terms() {
        if !t.is_spss(p)? {
            bad.push(t.to_string());
        }
    }
    Ok(bad)
}

/// Commutators reduce modulo TG0 to combinations of SPSS terms only.
pub struct CommutatorSupport;

impl Verification for CommutatorSupport {
    fn id(&self) -> &'static str {
        "spss-containment"
    }

    fn title(&self) -> &'static str {
        "commutators are SPSS-supported modulo TG0"
    }

    fn run(&self, params: &LabParams) -> Result<VerificationReport> {
        let field = params.field()?;
        let p = field.p();
        let nu = Mode::Nonunitary;
        let mut r = ReportBuilder::new(self, params);
        r.param("max_total_degree", json!(MAX_TOTAL));
        r.param("variables", json!(VARS));

        let mut all_words: Vec<Word> = Vec::new();
        for d in MultiDegree::all_up_to(MAX_TOTAL - 1, VARS) {
            all_words.extend(component_words(&d, params.span.max_words)?);
        }
        let mut pairs = 0u64;
        let mut bad = Vec::new();
        for a in &all_words {
            for b in &all_words {
                if a.len() + b.len() > MAX_TOTAL as usize {
                    continue;
                }
                pairs += 1;
                let fa = Polynomial::monomial(field, nu, a.clone(), 1)?;
                let fb = Polynomial::monomial(field, nu, b.clone(), 1)?;
                let v = spss_violations(&normal_form_tg0(&fa.commutator(&fb)?), p)?;
                if !v.is_empty() && bad.len() < 10 {
                    bad.push(json!({"a": a.to_string(), "b": b.to_string(), "terms": v}));
                }
            }
        }
        r.claim(
            "[a,b] for monomials a,b",
            bad.is_empty(),
            "SPSS-supported",
            format!("{pairs} pairs, {} violations", bad.len()),
        )
        .evidence(json!(bad));

        let spec = SpaceSpec::named(&[NamedSpace::S2, NamedSpace::TG0]);
        let mut span_bad = Vec::new();
        let mut degrees = MultiDegree::all_up_to(MAX_TOTAL, VARS);
        degrees.push(MultiDegree::from_pairs([(1, p), (2, p)]));
        for d in &degrees {
            let span = instance_span(&spec, d, Coordinates::BSS, field, nu, &params.span)?;
            let basis = enumerate_bss(d, field);
            for (inst, v) in &span.accepted {
                let off: Vec<String> = v
                    .iter()
                    .enumerate()
                    .filter(|&(i, &c)| c != 0 && !basis[i].is_spss(p).unwrap_or(false))
                    .map(|(i, _)| basis[i].to_string())
                    .collect();
                if !off.is_empty() {
                    span_bad.push(
                        json!({"multidegree": d.to_string(), "instance": inst.label, "terms": off}),
                    );
                }
            }
        }
        r.claim(
            "S2 + TG0 instance spans",
            span_bad.is_empty(),
            "SPSS-supported in every component",
            format!(
                "{} components, {} violations",
                degrees.len(),
                span_bad.len()
            ),
        )
        .evidence(json!(span_bad));

        let w1 = w(1, field, nu)?;
        let v = spss_violations(&normal_form_tg0(&w1), p)?;
        r.control(
            "w1 is SPSS-supported",
            !v.is_empty(),
            "a non-SPSS term",
            format!("{v:?}"),
        );
        Ok(r.finish())
    }
}

/// `w_m` is not in `S2 + TG0`.
pub struct FamilyOutsideCommutators;

pub(crate) fn outside_commutators_check(
    r: &mut ReportBuilder,
    field: Field,
    m: u32,
    params: &LabParams,
) -> Result<()> {
    let wm = w(m, field, Mode::Nonunitary)?;
    let spec = SpaceSpec::named(&[NamedSpace::S2, NamedSpace::TG0]);
    let opts = MemberOptions {
        coords: Some(Coordinates::BSS),
        config: params.span.clone(),
    };
    let cert = member(&wm, &spec, &opts)?;
    r.claim(
        &format!("w{m} not in S2 + TG0"),
        !cert.is_member() && cert.exact,
        "not-member, exact",
        format!("{:?}, exact={}", cert.verdict, cert.exact),
    )
    .evidence(serde_json::to_value(&cert).expect("serializable"));
    Ok(())
}

impl Verification for FamilyOutsideCommutators {
    fn id(&self) -> &'static str {
        "w-outside"
    }

    fn title(&self) -> &'static str {
        "w_m lies outside S2 + TG0"
    }

    fn run(&self, params: &LabParams) -> Result<VerificationReport> {
        let field = params.field()?;
        let p = field.p();
        let nu = Mode::Nonunitary;
        let mut r = ReportBuilder::new(self, params);
        for m in 1..=params.m {
            let wm = w(m, field, nu)?;
            let nf = normal_form_tg0(&wm);
            let terms: Vec<(String, u32)> = nf.terms().map(|(t, c)| (t.to_string(), c)).collect();
            let unit_non_spss =
                terms.len() == 1 && terms[0].1 == 1 && !spss_violations(&nf, p)?.is_empty();
            r.claim(
                &format!("w{m} is a single non-SPSS BSS term"),
                unit_non_spss,
                "unit vector at a non-SPSS term",
                format!("{terms:?}"),
            );
            outside_commutators_check(&mut r, field, m, params)?;
        }
        let x = |v| Polynomial::var(field, nu, v);
        let near = x(1)
            .commutator(&x(2))?
            .try_mul(&x(1).pow(p - 1)?)?
            .try_mul(&x(2).pow(p - 2)?)?;
        let cert = member(
            &near,
            &SpaceSpec::named(&[NamedSpace::S2, NamedSpace::TG0]),
            &MemberOptions {
                coords: None,
                config: params.span.clone(),
            },
        )?;
        r.control(
            &format!("{near} not in S2 + TG0"),
            cert.is_member() && cert.recheck(&near)?,
            "member with a valid certificate",
            format!("{:?}", cert.verdict),
        )
        .evidence(serde_json::to_value(&cert).expect("serializable"));
        Ok(r.finish())
    }
}
