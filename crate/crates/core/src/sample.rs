//! Seeded random polynomials for sampled property checks.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::poly::{monomials_up_to, ratio, Polynomial};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Up to `terms` random terms of degree at most `deg` with small rational coefficients.
pub fn random_polynomial(rng: &mut ChaCha8Rng, nvars: usize, deg: u32, terms: usize) -> Polynomial {
    let monos = monomials_up_to(nvars, deg);
    let mut p = Polynomial::zero(nvars);
    for _ in 0..terms {
        let m = monos[rng.random_range(0..monos.len())].clone();
        let num = rng.random_range(-5i64..=5);
        let den = rng.random_range(1i64..=3);
        p.add_term(m, ratio(num, den));
    }
    p
}

/// Random element of the ideal generated by `gens`: a combination with random cofactors.
pub fn random_combination(
    rng: &mut ChaCha8Rng,
    gens: &[Polynomial],
    nvars: usize,
    deg: u32,
) -> Polynomial {
    let mut f = Polynomial::zero(nvars);
    for g in gens {
        let c = random_polynomial(rng, nvars, deg, 3);
        f = &f + &(&c * g);
    }
    f
}
