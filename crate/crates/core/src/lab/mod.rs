//! Scripted verifications of the algebraic claims the library was built for.
//!
//! Each suite implements [`Verification`] and is looked up by id in a
//! [`Registry`]. A suite returns a [`VerificationReport`] holding one
//! [`Check`] per claim. Controls are deliberately broken variants of a claim;
//! a control passes when the broken variant is rejected, which guards the
//! suite against passing vacuously.

mod basis;
mod chain;
mod identities;
mod kappa;
mod unitary;

use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};

use crate::canonical::straighten_t3;
use crate::error::Result;
use crate::field::Field;
use crate::poly::Polynomial;
use crate::spans::SpanConfig;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LabParams {
    pub p: u32,
    /// Family index: how many `kappa` factors the largest `w` has.
    pub m: u32,
    pub seed: u64,
    /// Assignments per randomized Grassmann check.
    pub trials: u64,
    /// Run the slower brute-force cross-checks as well.
    pub thorough: bool,
    pub span: SpanConfig,
}

impl Default for LabParams {
    fn default() -> Self {
        LabParams {
            p: 3,
            m: 1,
            seed: 20_240_601,
            trials: 1000,
            thorough: false,
            span: SpanConfig::default(),
        }
    }
}

impl LabParams {
    pub fn field(&self) -> Result<Field> {
        Field::new(self.p)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckKind {
    /// The claim itself.
    Claim,
    /// A mutated claim that must be rejected.
    Control,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub kind: CheckKind,
    pub passed: bool,
    pub expected: String,
    pub observed: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub evidence: Option<Value>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub id: String,
    pub title: String,
    pub parameters: BTreeMap<String, Value>,
    pub checks: Vec<Check>,
    pub passed: bool,
    /// Wall-clock time; left out unless asked for, so reports stay byte-stable.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub duration_ms: Option<u64>,
}

impl VerificationReport {
    pub fn failed_checks(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Collects checks while a suite runs.
pub struct ReportBuilder {
    id: String,
    title: String,
    parameters: BTreeMap<String, Value>,
    checks: Vec<Check>,
}

impl ReportBuilder {
    pub fn new(suite: &dyn Verification, params: &LabParams) -> Self {
        let mut parameters = BTreeMap::new();
        parameters.insert("p".into(), json!(params.p));
        parameters.insert("m".into(), json!(params.m));
        parameters.insert("seed".into(), json!(params.seed));
        parameters.insert("trials".into(), json!(params.trials));
        parameters.insert("thorough".into(), json!(params.thorough));
        parameters.insert(
            "span".into(),
            serde_json::to_value(&params.span).expect("plain struct"),
        );
        ReportBuilder {
            id: suite.id().into(),
            title: suite.title().into(),
            parameters,
            checks: Vec::new(),
        }
    }

    pub fn param(&mut self, key: &str, value: Value) {
        self.parameters.insert(key.into(), value);
    }

    fn push(
        &mut self,
        kind: CheckKind,
        name: &str,
        passed: bool,
        expected: String,
        observed: String,
    ) -> &mut Check {
        self.checks.push(Check {
            name: name.into(),
            kind,
            passed,
            expected,
            observed,
            evidence: None,
        });
        self.checks.last_mut().expect("just pushed")
    }

    pub fn claim(
        &mut self,
        name: &str,
        passed: bool,
        expected: impl Into<String>,
        observed: impl Into<String>,
    ) -> &mut Check {
        self.push(
            CheckKind::Claim,
            name,
            passed,
            expected.into(),
            observed.into(),
        )
    }

    /// `rejected` is true when the mutated claim was correctly refused.
    pub fn control(
        &mut self,
        name: &str,
        rejected: bool,
        expected: impl Into<String>,
        observed: impl Into<String>,
    ) -> &mut Check {
        self.push(
            CheckKind::Control,
            name,
            rejected,
            expected.into(),
            observed.into(),
        )
    }

    /// Records that `f` reduces to zero modulo `T3`.
    pub fn vanishes_mod_t3(&mut self, name: &str, f: &Polynomial) -> &mut Check {
        let r = straighten_t3(f);
        self.claim(name, r.is_zero(), "0", r.to_string())
    }

    /// Records that the mutated congruence `f` does NOT reduce to zero modulo `T3`.
    pub fn survives_mod_t3(&mut self, name: &str, f: &Polynomial) -> &mut Check {
        let r = straighten_t3(f);
        self.control(name, !r.is_zero(), "nonzero residual", r.to_string())
    }

    pub fn finish(self) -> VerificationReport {
        let passed = self.checks.iter().all(|c| c.passed);
        VerificationReport {
            id: self.id,
            title: self.title,
            parameters: self.parameters,
            checks: self.checks,
            passed,
            duration_ms: None,
        }
    }
}

impl Check {
    pub fn evidence(&mut self, v: Value) -> &mut Self {
        self.evidence = Some(v);
        self
    }
}

/// One scripted verification.
pub trait Verification: Send + Sync {
    fn id(&self) -> &'static str;
    fn title(&self) -> &'static str;
    fn run(&self, params: &LabParams) -> Result<VerificationReport>;
}

pub struct Registry {
    suites: Vec<Box<dyn Verification>>,
}

impl Default for Registry {
    fn default() -> Self {
        Registry {
            suites: vec![
                Box::new(identities::PowerIdentity),
                Box::new(identities::CentralFamily),
                Box::new(basis::BasisDimensions),
                Box::new(basis::CommutatorSupport),
                Box::new(basis::FamilyOutsideCommutators),
                Box::new(kappa::KappaSum),
                Box::new(kappa::KappaProduct),
                Box::new(kappa::FamilyAdditivity),
                Box::new(chain::ChainStrictness),
                Box::new(unitary::UnitaryCase),
            ],
        }
    }
}

impl Registry {
    pub fn ids(&self) -> Vec<&'static str> {
        self.suites.iter().map(|s| s.id()).collect()
    }

    pub fn get(&self, id: &str) -> Option<&dyn Verification> {
        self.suites
            .iter()
            .find(|s| s.id() == id)
            .map(|s| s.as_ref())
    }

    pub fn iter(&self) -> impl Iterator<Item = &dyn Verification> {
        self.suites.iter().map(|s| s.as_ref())
    }

    pub fn register(&mut self, suite: Box<dyn Verification>) {
        self.suites.retain(|s| s.id() != suite.id());
        self.suites.push(suite);
    }
}

/// Runs a suite and stamps its duration.
pub fn run_timed(suite: &dyn Verification, params: &LabParams) -> Result<VerificationReport> {
    let start = Instant::now();
    let mut report = suite.run(params)?;
    report.duration_ms = Some(start.elapsed().as_millis() as u64);
    Ok(report)
}
