//! Seeded pseudo-random scalars for sampled law checks.

use num::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Quaternion, RatFunc, RingKind, Scalar, UniPoly};

pub const DEFAULT_SEED: u64 = 0x0e5e_edc0_ffee;
pub const DEFAULT_SAMPLES: usize = 64;

/// Seed and sample count shared by every sampled certificate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SampleConfig {
    pub seed: u64,
    pub samples: usize,
}

impl Default for SampleConfig {
    fn default() -> Self {
        SampleConfig {
            seed: DEFAULT_SEED,
            samples: DEFAULT_SAMPLES,
        }
    }
}

impl SampleConfig {
    pub fn new(seed: u64, samples: usize) -> Self {
        SampleConfig { seed, samples }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

fn small_rational<R: Rng + ?Sized>(rng: &mut R) -> BigRational {
    let n: i64 = rng.gen_range(-5..=5);
    let d: i64 = rng.gen_range(1..=3);
    BigRational::new(n.into(), d.into())
}

/// A small random element of `kind`; may be zero.
pub fn random_scalar<R: Rng + ?Sized>(kind: RingKind, rng: &mut R) -> Scalar {
    match kind {
        RingKind::Rational => Scalar::Rational(small_rational(rng)),
        RingKind::RationalFunction => {
            let deg = rng.gen_range(0..=2);
            let num = UniPoly::from_coeffs((0..=deg).map(|_| small_rational(rng)).collect());
            let den = if rng.gen_bool(0.5) {
                UniPoly::one()
            } else {
                let c: i64 = rng.gen_range(-3..=3);
                UniPoly::from_coeffs(vec![
                    BigRational::from_integer(c.into()),
                    BigRational::from_integer(1.into()),
                ])
            };
            Scalar::RationalFunction(RatFunc::new(num, den).expect("monic denominator"))
        }
        RingKind::Quaternion => Scalar::Quaternion(Quaternion::new(
            small_rational(rng),
            small_rational(rng),
            small_rational(rng),
            small_rational(rng),
        )),
    }
}

pub fn random_nonzero_scalar<R: Rng + ?Sized>(kind: RingKind, rng: &mut R) -> Scalar {
    loop {
        let s = random_scalar(kind, rng);
        if !s.is_zero() {
            return s;
        }
    }
}
