//! Seeded random rational sample points for the numeric oracle.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use kndeg_core::curve::MarkingCase;
use kndeg_core::oracle::CurveSample;
use kndeg_core::{rat_frac, Rational};

pub const DEFAULT_SEED: u64 = 0x6b6e_6465_6730;

fn small_rational(rng: &mut ChaCha8Rng) -> Rational {
    rat_frac(rng.random_range(-12..=12), rng.random_range(1..=6))
}

/// `count` admissible samples: distinct roots, a marking off the two-torsion
/// points (`b^2 != 0`) and a regular evaluation point.
pub fn oracle_samples(case: MarkingCase, count: usize, seed: u64) -> Vec<CurveSample> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let s = CurveSample {
            case,
            e1: small_rational(&mut rng),
            e2: small_rational(&mut rng),
            a: small_rational(&mut rng),
            u0: small_rational(&mut rng),
        };
        let e3 = s.e3();
        let marking_ok = case == MarkingCase::TwoPoint || (s.a != s.e1 && s.a != s.e2 && s.a != e3);
        if s.is_admissible() && marking_ok {
            out.push(s);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_admissible() {
        let a = oracle_samples(MarkingCase::ThreePoint, 10, 7);
        assert_eq!(a, oracle_samples(MarkingCase::ThreePoint, 10, 7));
        assert!(a.iter().all(CurveSample::is_admissible));
        assert_ne!(a, oracle_samples(MarkingCase::ThreePoint, 10, 8));
    }
}
