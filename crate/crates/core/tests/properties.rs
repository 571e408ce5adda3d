use std::collections::BTreeMap;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tspace_core::canonical::{normal_form_tg0, straighten_t3};
use tspace_core::expr::{parse, print};
use tspace_core::grassmann::{
    evaluate, random_element, Assignment, GrassmannElement, SamplerConfig,
};
use tspace_core::{Field, Mode, Polynomial, Word};

const VARS: u32 = 4;

fn field() -> impl Strategy<Value = Field> {
    prop::sample::select(vec![3u32, 5, 7]).prop_map(|p| Field::new(p).unwrap())
}

fn mode() -> impl Strategy<Value = Mode> {
    prop::bool::ANY.prop_map(|u| if u { Mode::Unitary } else { Mode::Nonunitary })
}

fn poly(field: Field, mode: Mode, rng: &mut ChaCha8Rng, max_len: usize) -> Polynomial {
    let mut f = Polynomial::zero(field, mode);
    let min = if mode == Mode::Unitary { 0 } else { 1 };
    for _ in 0..rng.gen_range(0..5) {
        let len = rng.gen_range(min..=max_len);
        let word = Word::new((0..len).map(|_| rng.gen_range(1..=VARS)).collect());
        f.add_term(word, rng.gen_range(1..field.p())).unwrap();
    }
    f
}

fn polys(n: usize, max_len: usize) -> impl Strategy<Value = (Field, Mode, Vec<Polynomial>)> {
    (field(), mode(), any::<u64>()).prop_map(move |(f, m, seed)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (
            f,
            m,
            (0..n).map(|_| poly(f, m, &mut rng, max_len)).collect(),
        )
    })
}

fn grassmann(field: Field, mode: Mode, rank: u32, seed: u64, n: usize) -> Vec<GrassmannElement> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cfg = SamplerConfig {
        terms: 4,
        max_support: 4,
    };
    (0..n)
        .map(|_| random_element(field, rank, mode, cfg, &mut rng).unwrap())
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn free_algebra_ring_axioms((_, _, v) in polys(3, 3)) {
        let (f, g, h) = (&v[0], &v[1], &v[2]);
        prop_assert_eq!(f.try_add(g)?.try_add(h)?, f.try_add(&g.try_add(h)?)?);
        prop_assert_eq!(f.try_add(g)?, g.try_add(f)?);
        prop_assert_eq!(f.try_mul(g)?.try_mul(h)?, f.try_mul(&g.try_mul(h)?)?);
        prop_assert_eq!(f.try_mul(&g.try_add(h)?)?, f.try_mul(g)?.try_add(&f.try_mul(h)?)?);
        prop_assert_eq!(g.try_add(h)?.try_mul(f)?, g.try_mul(f)?.try_add(&h.try_mul(f)?)?);
        prop_assert!(f.try_sub(f)?.is_zero());
        prop_assert_eq!(f.commutator(g)?, g.commutator(f)?.scale(f.field().p() - 1));
    }

    #[test]
    fn substitution_is_an_algebra_homomorphism((field, mode, v) in polys(2 + VARS as usize, 2)) {
        let theta: BTreeMap<u32, Polynomial> = (1..=VARS).map(|i| (i, v[1 + i as usize].clone())).collect();
        let (f, g) = (&v[0], &v[1]);
        let sub = |p: &Polynomial| p.substitute(&theta);
        prop_assert_eq!(sub(&f.try_mul(g)?)?, sub(f)?.try_mul(&sub(g)?)?);
        prop_assert_eq!(sub(&f.try_add(g)?)?, sub(f)?.try_add(&sub(g)?)?);
        prop_assert_eq!(sub(&f.scale(2))?, sub(f)?.scale(2));
        let identity: BTreeMap<u32, Polynomial> = (1..=VARS).map(|i| (i, Polynomial::var(field, mode, i))).collect();
        prop_assert_eq!(&f.substitute(&identity)?, f);
    }

    #[test]
    fn grassmann_multiplication_is_associative_and_distributive(f in field(), m in mode(), rank in 1u32..10, seed in any::<u64>()) {
        let v = grassmann(f, m, rank, seed, 3);
        let (a, b, c) = (&v[0], &v[1], &v[2]);
        prop_assert_eq!(a.try_mul(b)?.try_mul(c)?, a.try_mul(&b.try_mul(c)?)?);
        prop_assert_eq!(a.try_mul(&b.try_add(c)?)?, a.try_mul(b)?.try_add(&a.try_mul(c)?)?);
        if a.is_even() {
            prop_assert!(a.is_central());
        }
    }

    #[test]
    fn evaluation_commutes_with_substitution((field, mode, v) in polys(1 + VARS as usize, 2), seed in any::<u64>()) {
        let rank = 8;
        let images = grassmann(field, mode, rank, seed, VARS as usize);
        let a: Assignment = (1..=VARS).map(|i| (i, images[i as usize - 1].clone())).collect();
        let theta: BTreeMap<u32, Polynomial> = (1..=VARS).map(|i| (i, v[i as usize].clone())).collect();
        let zero = GrassmannElement::zero(field, rank, mode)?;
        let eval = |p: &Polynomial| -> Result<GrassmannElement, TestCaseError> {
            if p.is_zero() { Ok(zero.clone()) } else { Ok(evaluate(p, &a)?) }
        };
        let composed: Assignment = theta.iter().map(|(&k, p)| Ok((k, eval(p)?))).collect::<Result<_, TestCaseError>>()?;
        let f = &v[0];
        let lhs = eval(&f.substitute(&theta)?)?;
        let rhs = if f.is_zero() { zero.clone() } else { evaluate(f, &composed)? };
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn straightening_is_linear_and_idempotent((field, _, v) in polys(2, 5), c in 1u32..3) {
        let (f, g) = (&v[0], &v[1]);
        let c = c % field.p();
        for nf in [straighten_t3, normal_form_tg0] {
            let combo = nf(&f.try_add(&g.scale(c))?);
            prop_assert_eq!(combo, nf(f).add(&nf(g).scale(c)));
            let once = nf(f);
            prop_assert_eq!(nf(&once.embed()), once);
        }
    }

    #[test]
    fn straightening_preserves_values_on_grassmann((field, mode, v) in polys(1, 5), seed in any::<u64>()) {
        let f = &v[0];
        let rest = f.try_sub(&straighten_t3(f).embed())?;
        if !rest.is_zero() {
            let images = grassmann(field, mode, 10, seed, VARS as usize);
            let a: Assignment = (1..=VARS).map(|i| (i, images[i as usize - 1].clone())).collect();
            prop_assert!(evaluate(&rest, &a)?.is_zero());
        }
    }

    #[test]
    fn printing_then_parsing_is_the_identity((field, mode, v) in polys(1, 6)) {
        let f = &v[0];
        let text = print(f);
        prop_assert_eq!(&parse(&text, field, mode)?, f, "text `{}`", text);
    }
}
