use serde_json::json;

use super::{LabParams, ReportBuilder, Verification, VerificationReport};
use crate::error::Result;
use crate::families::w;
use crate::field::Field;
use crate::grassmann::{
    check_central, check_identity, evaluate, subset_of, Assignment, ExhaustiveBasis,
    GrassmannElement, IdentityStrategy, RandomTrials, SamplerConfig,
};
use crate::poly::{Mode, Polynomial};

/// Name, polynomial, algebra, rank and strategy of one identity check.
type IdentityCase = (
    &'static str,
    Polynomial,
    Mode,
    u32,
    Box<dyn IdentityStrategy>,
);

fn random(params: &LabParams, salt: u64) -> RandomTrials {
    RandomTrials {
        trials: params.trials,
        seed: params.seed.wrapping_add(salt),
        sampler: SamplerConfig::default(),
    }
}

fn x(field: Field, mode: Mode, v: u32) -> Polynomial {
    Polynomial::var(field, mode, v)
}

/// `x^p` and `[[x,y],z]` on the Grassmann algebras, and `x^(p^2) - x^p` on the unitary one.
pub struct PowerIdentity;

impl Verification for PowerIdentity {
    fn id(&self) -> &'static str {
        "power-identity"
    }

    fn title(&self) -> &'static str {
        "x^p vanishes on G0, [[x,y],z] and x^(p^2) - x^p vanish on G"
    }

    fn run(&self, params: &LabParams) -> Result<VerificationReport> {
        let field = params.field()?;
        let p = field.p();
        let mut r = ReportBuilder::new(self, params);
        r.param("ranks", json!({"power": 12, "triple": 10, "frobenius": 10}));

        let cases: [IdentityCase; 3] = [
            (
                "x^p on G0",
                x(field, Mode::Nonunitary, 1).pow(p)?,
                Mode::Nonunitary,
                12,
                Box::new(random(params, 1)),
            ),
            (
                "[[x1,x2],x3] on G",
                x(field, Mode::Unitary, 1)
                    .commutator(&x(field, Mode::Unitary, 2))?
                    .commutator(&x(field, Mode::Unitary, 3))?,
                Mode::Unitary,
                10,
                Box::new(ExhaustiveBasis),
            ),
            (
                "x^(p^2) - x^p on G",
                x(field, Mode::Unitary, 1)
                    .pow(p * p)?
                    .try_sub(&x(field, Mode::Unitary, 1).pow(p)?)?,
                Mode::Unitary,
                10,
                Box::new(random(params, 2)),
            ),
        ];
        for (name, f, algebra, rank, strat) in cases {
            let v = check_identity(&f, algebra, rank, strat.as_ref())?;
            r.claim(
                name,
                v.holds(),
                "identity",
                if v.holds() {
                    "identity"
                } else {
                    "witness found"
                },
            )
            .evidence(serde_json::to_value(&v).expect("serializable"));
        }

        let controls: [IdentityCase; 2] = [
            (
                "x^p on G (unit breaks it)",
                x(field, Mode::Unitary, 1).pow(p)?,
                Mode::Unitary,
                12,
                Box::new(random(params, 3)),
            ),
            (
                "[x1,x2] on G0",
                x(field, Mode::Nonunitary, 1).commutator(&x(field, Mode::Nonunitary, 2))?,
                Mode::Nonunitary,
                4,
                Box::new(ExhaustiveBasis),
            ),
        ];
        for (name, f, algebra, rank, strat) in controls {
            let v = check_identity(&f, algebra, rank, strat.as_ref())?;
            r.control(
                name,
                !v.holds(),
                "witness found",
                if v.holds() {
                    "identity"
                } else {
                    "witness found"
                },
            )
            .evidence(serde_json::to_value(&v).expect("serializable"));
        }
        // Sparse random elements rarely reach degree p - 1 in their even part,
        // so this control uses an explicit witness.
        let (single, rank) = top_degree_assignment(field, 1)?;
        let single: Assignment = single.into_iter().take(1).collect();
        let value = evaluate(&x(field, Mode::Nonunitary, 1).pow(p - 1)?, &single)?;
        r.control(
            "x^(p-1) on G0",
            !value.is_zero(),
            "nonzero value",
            value.to_string(),
        )
        .evidence(json!({"rank": rank, "x1": single[&1].to_string()}));
        Ok(r.finish())
    }
}

/// Images `x_(2i-1) -> e_a + e_(a+1) e_(a+2) + ...` with `p - 1` even pairs,
/// so each `kappa` factor gets exactly the generators it needs.
pub fn top_degree_assignment(field: Field, m: u32) -> Result<(Assignment, u32)> {
    let p = field.p();
    let block = 2 * p - 1;
    let rank = 2 * m * block;
    let mut a = Assignment::new();
    for v in 1..=2 * m {
        let base = (v - 1) * block;
        let mut g = GrassmannElement::generator(field, rank, Mode::Nonunitary, base + 1)?;
        for j in 0..p - 1 {
            let pair = GrassmannElement::basis(
                field,
                rank,
                Mode::Nonunitary,
                &[base + 2 + 2 * j, base + 3 + 2 * j],
            )?;
            g = g.try_add(&pair)?;
        }
        a.insert(v, g);
    }
    Ok((a, rank))
}

/// `w_m`, commutators and `x^p` take central values on the Grassmann algebras.
pub struct CentralFamily;

impl Verification for CentralFamily {
    fn id(&self) -> &'static str {
        "central-w"
    }

    fn title(&self) -> &'static str {
        "w_m and commutators are central polynomials"
    }

    fn run(&self, params: &LabParams) -> Result<VerificationReport> {
        let field = params.field()?;
        let p = field.p();
        let mut r = ReportBuilder::new(self, params);
        let nu = Mode::Nonunitary;

        for m in 1..=params.m {
            let wm = w(m, field, nu)?;
            let (assignment, rank) = top_degree_assignment(field, m)?;
            let value = evaluate(&wm, &assignment)?;
            let full: Vec<u32> = (1..=rank).collect();
            let top = value.coeff(subset_of(&full));
            let only_top = value.terms().count() == 1 && top != 0;
            let expected = if p == 3 && m == 1 {
                "2*e1*...*e10".to_string()
            } else {
                format!("nonzero multiple of e1*...*e{rank}")
            };
            let ok = only_top && (p != 3 || m != 1 || top == 2) && value.is_central();
            r.claim(&format!("w{m} witness is a central top-degree element"), ok, expected, value.to_string()).evidence(json!({
                "rank": rank,
                "assignment": assignment.iter().map(|(v, g)| (format!("x{v}"), g.to_string())).collect::<Vec<_>>(),
            }));

            let v = check_central(&wm, nu, rank, &random(params, 10 + m as u64))?;
            r.claim(
                &format!("w{m} central on G0"),
                v.central,
                "central",
                if v.central {
                    "central"
                } else {
                    "non-central value"
                },
            )
            .evidence(serde_json::to_value(&v).expect("serializable"));
        }

        let bracket = x(field, nu, 1).commutator(&x(field, nu, 2))?;
        let v = check_central(&bracket, nu, 6, &ExhaustiveBasis)?;
        r.claim(
            "[x1,x2] central on G0",
            v.is_central_polynomial(),
            "central, not an identity",
            format!("central={}, nonzero={}", v.central, v.nonzero_seen),
        )
        .evidence(serde_json::to_value(&v).expect("serializable"));

        let power = x(field, Mode::Unitary, 1).pow(p)?;
        let v = check_central(&power, Mode::Unitary, 10, &random(params, 20))?;
        r.claim(
            "x^p central on G",
            v.is_central_polynomial(),
            "central, not an identity",
            format!("central={}, nonzero={}", v.central, v.nonzero_seen),
        )
        .evidence(serde_json::to_value(&v).expect("serializable"));

        let controls = [
            ("x1 central on G0", x(field, nu, 1)),
            (
                "[x1,x2]*x3 central on G0",
                bracket.try_mul(&x(field, nu, 3))?,
            ),
        ];
        for (i, (name, f)) in controls.into_iter().enumerate() {
            let v = check_central(&f, nu, 8, &random(params, 30 + i as u64))?;
            r.control(
                name,
                !v.central,
                "non-central value",
                if v.central {
                    "central"
                } else {
                    "non-central value"
                },
            )
            .evidence(serde_json::to_value(&v).expect("serializable"));
        }
        Ok(r.finish())
    }
}
