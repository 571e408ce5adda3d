//! The congruences the straightening engine relies on, as explicit data.
//!
//! Each rule states `lhs = rhs` modulo the triple-commutator T-ideal. The
//! span oracle checks every entry (see the `spans` tests), so the engine's
//! axioms are themselves tested.

use crate::field::Field;
use crate::poly::{Mode, Polynomial};
use crate::word::MultiDegree;

#[derive(Debug, Clone)]
pub struct Rule {
    pub name: &'static str,
    pub lhs: Polynomial,
    pub rhs: Polynomial,
}

impl Rule {
    pub fn difference(&self) -> Polynomial {
        &self.lhs - &self.rhs
    }

    pub fn multidegree(&self) -> MultiDegree {
        self.difference()
            .multidegree()
            .or_else(|| self.lhs.multidegree())
            .expect("rules are multihomogeneous")
    }
}

pub fn rule_table(field: Field) -> Vec<Rule> {
    let x = |v| Polynomial::var(field, Mode::Nonunitary, v);
    let br = |a: u32, b: u32| x(a).commutator(&x(b)).expect("same field");
    let zero = Polynomial::zero(field, Mode::Nonunitary);
    vec![
        Rule {
            name: "commutators are central",
            lhs: &br(1, 2) * &x(3),
            rhs: &x(3) * &br(1, 2),
        },
        Rule {
            name: "letter swap",
            lhs: &x(2) * &x(1),
            rhs: &(&x(1) * &x(2)) - &br(1, 2),
        },
        Rule {
            name: "power commutator",
            lhs: x(1).pow(2).unwrap().commutator(&x(2)).unwrap(),
            rhs: (&x(1) * &br(1, 2)).scale(2),
        },
        Rule {
            name: "commutator product alternates",
            lhs: &br(1, 2) * &br(3, 4),
            rhs: -(&br(1, 3) * &br(2, 4)),
        },
        Rule {
            name: "commutator squared",
            lhs: &br(1, 2) * &br(1, 2),
            rhs: zero.clone(),
        },
        Rule {
            name: "shared letter",
            lhs: &br(1, 2) * &br(1, 3),
            rhs: zero,
        },
        Rule {
            name: "commutator of a product",
            lhs: x(1).commutator(&(&x(2) * &x(3))).unwrap(),
            rhs: &(&br(1, 2) * &x(3)) + &(&br(1, 3) * &x(2)),
        },
    ]
}
