use rand::seq::index;
use rand::Rng;

use super::{subset_of, GrassmannElement};
use crate::error::Result;
use crate::field::Field;
use crate::poly::Mode;

/// Shape of randomly sampled Grassmann elements.
///
/// Terms alternate between odd-size and even-size supports so that both the
/// anticommuting and the central parts of an element are exercised.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SamplerConfig {
    pub terms: usize,
    pub max_support: u32,
}

impl Default for SamplerConfig {
    fn default() -> Self {
        SamplerConfig {
            terms: 4,
            max_support: 4,
        }
    }
}

pub fn random_element<R: Rng + ?Sized>(
    field: Field,
    rank: u32,
    mode: Mode,
    cfg: SamplerConfig,
    rng: &mut R,
) -> Result<GrassmannElement> {
    let mut g = GrassmannElement::zero(field, rank, mode)?;
    let p = field.p();
    if mode == Mode::Unitary {
        g.add_term(0, rng.gen_range(0..p))?;
    }
    let cap = cfg.max_support.min(rank).max(1);
    for i in 0..cfg.terms {
        let want_odd = i % 2 == 0;
        let mut size = rng.gen_range(1..=cap);
        if (size % 2 == 1) != want_odd {
            size = if size > 1 {
                size - 1
            } else {
                (size + 1).min(cap)
            };
        }
        let picks = index::sample(rng, rank as usize, size as usize);
        let idx: Vec<u32> = picks.iter().map(|i| i as u32 + 1).collect();
        g.add_term(subset_of(&idx), rng.gen_range(1..p))?;
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn sampling_is_seeded() {
        let f = Field::new(3).unwrap();
        let a = random_element(
            f,
            10,
            Mode::Nonunitary,
            SamplerConfig::default(),
            &mut ChaCha8Rng::seed_from_u64(7),
        )
        .unwrap();
        let b = random_element(
            f,
            10,
            Mode::Nonunitary,
            SamplerConfig::default(),
            &mut ChaCha8Rng::seed_from_u64(7),
        )
        .unwrap();
        assert_eq!(a, b);
        assert!(a.coeff(0) == 0);
    }

    #[test]
    fn mixes_parities() {
        let f = Field::new(5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut odd = 0;
        let mut even = 0;
        for _ in 0..200 {
            let g = random_element(f, 12, Mode::Nonunitary, SamplerConfig::default(), &mut rng)
                .unwrap();
            for (s, _) in g.terms() {
                if s.count_ones() % 2 == 1 {
                    odd += 1
                } else {
                    even += 1
                }
            }
        }
        assert!(odd > 100 && even > 100);
    }
}
