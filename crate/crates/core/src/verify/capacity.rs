use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{record, ClaimId, VerificationReport};
use crate::circle::{circle_dist, CirclePoint};
use crate::coloring::{CapacityClaim, CertificateError};
use crate::rational::{format_rational, ratio, Rational};

const MAX_DENOMINATOR: i64 = 1_000_000;

fn min_pairwise(t: &[CirclePoint; 3]) -> Rational {
    let d01 = circle_dist(&t[0], &t[1]);
    let d02 = circle_dist(&t[0], &t[2]);
    let d12 = circle_dist(&t[1], &t[2]);
    d01.min(d02).min(d12)
}

// Equally spaced triples and small perturbations of them.
fn adversarial() -> Vec<[CirclePoint; 3]> {
    let pt = CirclePoint::from_ratio;
    let mut out = vec![[pt(0, 1), pt(1, 3), pt(2, 3)]];
    for (a, b) in [(1, 7), (1, 2), (5, 11), (999, 1000)] {
        let s = ratio(a, b);
        out.push([
            CirclePoint::reduce(&s),
            CirclePoint::reduce(&(&s + ratio(1, 3))),
            CirclePoint::reduce(&(&s + ratio(2, 3))),
        ]);
    }
    for m in [10, 1000, 1_000_000] {
        let t = ratio(1, m);
        let third = ratio(1, 3);
        let two = ratio(2, 3);
        out.push([
            pt(0, 1),
            CirclePoint::reduce(&(&third + &t)),
            CirclePoint::reduce(&(&two + &t)),
        ]);
        out.push([
            pt(0, 1),
            CirclePoint::reduce(&(&third - &t)),
            CirclePoint::reduce(&(&two + &t)),
        ]);
        out.push([
            pt(0, 1),
            CirclePoint::reduce(&(&third + &t)),
            CirclePoint::reduce(&(&two - &t)),
        ]);
    }
    out
}

/// Checks that the circle holds at most two points pairwise more than 1/3
/// apart, and that two such points exist.
///
/// Three points cut the circle into gaps summing to 1, so some gap, and
/// with it some pairwise distance, is at most 1/3. This is tested on the
/// equally spaced extremal triples, perturbations of them, and `samples`
/// seeded random rational triples. The pair `{0, 1/2}` is the lower
/// witness.
pub fn verify_capacity_circle(samples: u64, seed: u64) -> VerificationReport {
    let third = ratio(1, 3);
    let mut report = VerificationReport::new(
        ClaimId::CapacityCircle,
        record([("samples", samples.to_string()), ("eps", "1/3".into())]),
    );
    report.seed = Some(seed);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut triples = adversarial();
    let fixed = triples.len();
    triples.extend((0..samples).map(|_| {
        std::array::from_fn(|_| {
            let den = rng.gen_range(1..=MAX_DENOMINATOR);
            CirclePoint::from_ratio(rng.gen_range(0..den), den)
        })
    }));

    let mins: Vec<Rational> = triples.par_iter().map(min_pairwise).collect();
    let worst = mins
        .iter()
        .max()
        .cloned()
        .expect("at least the extremal triple");
    let extremal = &mins[0];
    if let Some(bad) = mins.iter().position(|m| *m > third) {
        let t = &triples[bad];
        report.fail(record([
            ("triple", format!("{}, {}, {}", t[0], t[1], t[2])),
            ("min_distance", format_rational(&mins[bad])),
        ]));
    }
    report.details.push(record([
        ("adversarial_triples", fixed.to_string()),
        ("random_triples", samples.to_string()),
        ("extremal_min_distance", format_rational(extremal)),
        ("largest_min_distance", format_rational(&worst)),
    ]));

    let pair = circle_dist(&CirclePoint::zero(), &CirclePoint::from_ratio(1, 2));
    report.details.push(record([
        ("pair", "0/1, 1/2".into()),
        ("distance", format_rational(&pair)),
    ]));
    if pair <= third {
        report.fail(record([
            ("pair", "0/1, 1/2".into()),
            ("distance", format_rational(&pair)),
        ]));
    }
    report
}

/// Turns a passing capacity report into a verified claim usable for
/// certificates.
pub fn capacity_claim(report: &VerificationReport) -> Result<CapacityClaim, CertificateError> {
    if report.claim_id == ClaimId::CapacityCircle && report.passed() {
        Ok(CapacityClaim::verified(2, ratio(1, 3)))
    } else {
        Err(CertificateError::UnverifiedCapacity)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn capacity_passes_and_is_seeded() {
        let a = verify_capacity_circle(2000, 7);
        assert!(a.passed());
        assert_eq!(a.details[0]["extremal_min_distance"], "1/3");
        assert_eq!(a.details[0]["largest_min_distance"], "1/3");
        assert_eq!(a.details[1]["distance"], "1/2");
        assert_eq!(a, verify_capacity_circle(2000, 7));
        assert_eq!(a.seed, Some(7));
    }

    #[test]
    fn only_passing_reports_give_claims() {
        let good = verify_capacity_circle(10, 1);
        let claim = capacity_claim(&good).unwrap();
        assert!(claim.is_verified());
        assert_eq!(claim.describe(), "C_d(T,1/3)=2");
        let mut bad = good.clone();
        bad.verdict = crate::verify::Verdict::Unsupported;
        assert!(capacity_claim(&bad).is_err());
    }
}
