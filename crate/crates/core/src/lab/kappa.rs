use serde_json::json;

use super::{LabParams, ReportBuilder, Verification, VerificationReport};
use crate::canonical::straighten_t3;
use crate::error::Result;
use crate::families::{kappa, w_of};
use crate::field::Field;
use crate::poly::{Mode, Polynomial};
use crate::spans::{member, Coordinates, MemberOptions, NamedSpace, SpaceSpec};

fn x(field: Field, v: u32) -> Polynomial {
    Polynomial::var(field, Mode::Nonunitary, v)
}

/// `(i+1)^{-1} C(p-1, i)` for `i = 0..=p-2`.
pub fn correction_coefficients(field: Field) -> Result<Vec<u32>> {
    let p = field.p() as u64;
    (0..=p - 2)
        .map(|i| {
            Ok(field.mul(
                field.inv(field.reduce(i as i64 + 1))?,
                field.binomial(p - 1, i)?,
            ))
        })
        .collect()
}

/// `sum_i c_i [u, v^{i+1} w^{p-i-1} u^{p-1}]`.
fn correction_sum(
    u: &Polynomial,
    v: &Polynomial,
    wv: &Polynomial,
    coefs: &[u32],
) -> Result<Polynomial> {
    let field = u.field();
    let p = field.p();
    let mut acc = Polynomial::zero(field, u.mode());
    for (i, &c) in coefs.iter().enumerate() {
        let i = i as u32;
        let inner = v
            .pow(i + 1)?
            .try_mul(&wv.pow(p - i - 1)?)?
            .try_mul(&u.pow(p - 1)?)?;
        acc = acc.try_add(&u.commutator(&inner)?.scale(c))?;
    }
    Ok(acc)
}

/// `kappa(u, v + w)` splits into `kappa(u, v) + kappa(u, w)` plus commutators.
pub struct KappaSum;

impl Verification for KappaSum {
    fn id(&self) -> &'static str {
        "kappa-sum"
    }

    fn title(&self) -> &'static str {
        "kappa(u, v+w) = kappa(u,v) + kappa(u,w) + sum of commutators, modulo T3"
    }

    fn run(&self, params: &LabParams) -> Result<VerificationReport> {
        let field = params.field()?;
        let p = field.p();
        let mut r = ReportBuilder::new(self, params);
        let (u, v, wv) = (x(field, 1), x(field, 2), x(field, 3));
        let coefs = correction_coefficients(field)?;
        r.param("coefficients", json!(coefs));

        let lhs = kappa(&u, &v.try_add(&wv)?)?;
        let split = kappa(&u, &v)?.try_add(&kappa(&u, &wv)?)?;
        let full = split.try_add(&correction_sum(&u, &v, &wv, &coefs)?)?;
        r.vanishes_mod_t3("kappa(x1, x2+x3) - rhs", &lhs.try_sub(&full)?);

        let anti = kappa(&u, &v)?.try_add(&kappa(&v, &u)?)?;
        r.vanishes_mod_t3("kappa(x1,x2) + kappa(x2,x1)", &anti);

        r.survives_mod_t3("correction sum dropped", &lhs.try_sub(&split)?);
        let naive: Vec<u32> = (0..=p as u64 - 2)
            .map(|i| field.binomial(p as u64 - 1, i))
            .collect::<Result<_>>()?;
        if naive != coefs {
            let wrong = split.try_add(&correction_sum(&u, &v, &wv, &naive)?)?;
            r.survives_mod_t3("(i+1)^{-1} factor dropped", &lhs.try_sub(&wrong)?);
        }
        Ok(r.finish())
    }
}

/// `kappa(u, vw) = v^p kappa(u, w) + w^p kappa(u, v)` modulo T3, and its consequences.
pub struct KappaProduct;

impl Verification for KappaProduct {
    fn id(&self) -> &'static str {
        "kappa-product"
    }

    fn title(&self) -> &'static str {
        "kappa(u, vw) = v^p kappa(u,w) + w^p kappa(u,v) modulo T3, kappa(u, a v) = a^p kappa(u, v)"
    }

    fn run(&self, params: &LabParams) -> Result<VerificationReport> {
        let field = params.field()?;
        let p = field.p();
        let mut r = ReportBuilder::new(self, params);
        let (u, v, wv) = (x(field, 1), x(field, 2), x(field, 3));

        let lhs = kappa(&u, &v.try_mul(&wv)?)?;
        let first = v.pow(p)?.try_mul(&kappa(&u, &wv)?)?;
        let second = wv.pow(p)?.try_mul(&kappa(&u, &v)?)?;
        r.vanishes_mod_t3(
            "kappa(x1, x2*x3) - rhs",
            &lhs.try_sub(&first.try_add(&second)?)?,
        );
        r.survives_mod_t3("second summand dropped", &lhs.try_sub(&first)?);

        let cert = member(
            &lhs,
            &SpaceSpec::named(&[NamedSpace::TG0]),
            &MemberOptions {
                coords: Some(Coordinates::BSS),
                config: params.span.clone(),
            },
        )?;
        r.claim(
            "kappa(x1, x2*x3) in TG0",
            cert.is_member(),
            "member",
            format!("{:?}", cert.verdict),
        )
        .evidence(serde_json::to_value(&cert).expect("serializable"));
        let k = kappa(&u, &v)?;
        let cert = member(
            &k,
            &SpaceSpec::named(&[NamedSpace::TG0]),
            &MemberOptions {
                coords: Some(Coordinates::BSS),
                config: params.span.clone(),
            },
        )?;
        r.control(
            "kappa(x1, x2) in TG0",
            !cert.is_member() && cert.exact,
            "not-member",
            format!("{:?}", cert.verdict),
        );

        let alpha = 2;
        let scaled = kappa(&u, &v.scale(alpha))?;
        let ap = field.pow(alpha, p as u64);
        r.claim(
            "kappa(x1, 2*x2) = 2^p kappa(x1, x2)",
            scaled == k.scale(ap),
            format!("coefficient {ap}"),
            format!("equal={}", scaled == k.scale(ap)),
        );
        let ap1 = field.pow(alpha, p as u64 - 1);
        r.control(
            "kappa(x1, 2*x2) = 2^(p-1) kappa(x1, x2)",
            scaled != k.scale(ap1),
            "unequal",
            format!("equal={}", scaled == k.scale(ap1)),
        );

        let square = kappa(&u, &u)?;
        r.claim(
            "kappa(x1, x1) = 0",
            square.is_zero(),
            "0",
            square.to_string(),
        );
        Ok(r.finish())
    }
}

/// `w_m` is additive in each argument modulo `S2 + T3`.
pub struct FamilyAdditivity;

impl Verification for FamilyAdditivity {
    fn id(&self) -> &'static str {
        "w-additive"
    }

    fn title(&self) -> &'static str {
        "w_m is additive in each argument modulo S2 + T3"
    }

    fn run(&self, params: &LabParams) -> Result<VerificationReport> {
        let field = params.field()?;
        let m = params.m;
        let mut r = ReportBuilder::new(self, params);
        let args: Vec<Polynomial> = (1..=2 * m).map(|v| x(field, v)).collect();
        let extra = x(field, 2 * m + 1);
        let both = SpaceSpec::named(&[NamedSpace::S2, NamedSpace::T3]);
        let t3 = SpaceSpec::named(&[NamedSpace::T3]);
        let opts = MemberOptions {
            coords: Some(Coordinates::SS),
            config: params.span.clone(),
        };
        let base = w_of(&args)?;
        for slot in 0..args.len() {
            let mut summed = args.clone();
            summed[slot] = args[slot].try_add(&extra)?;
            let mut swapped = args.clone();
            swapped[slot] = extra.clone();
            let diff = w_of(&summed)?.try_sub(&base)?.try_sub(&w_of(&swapped)?)?;
            let name = format!("slot {}", slot + 1);

            let cert = member(&diff, &both, &opts)?;
            let ok = cert.is_member() && cert.recheck(&diff)?;
            r.claim(
                &format!("{name}: difference in S2 + T3"),
                ok,
                "member with a valid certificate",
                format!("{:?}", cert.verdict),
            )
            .evidence(json!({
                "components": cert.components.len(),
                "certificate_size": cert.certificate.len(),
                "rank": cert.rank,
            }));

            let alone = member(&diff, &t3, &opts)?;
            r.control(
                &format!("{name}: difference in T3 alone"),
                !alone.is_member(),
                "not-member",
                format!(
                    "{:?}, T3 residual has {} terms",
                    alone.verdict,
                    straighten_t3(&diff).len()
                ),
            );
        }
        Ok(r.finish())
    }
}
