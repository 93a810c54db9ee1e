use num::{BigInt, One, Zero};
use rayon::prelude::*;

use super::{record, ClaimId, Record, VerificationReport, VerifyError};
use crate::circle::CirclePoint;
use crate::dynamics::{bowen_ball, PLCircleMap};
use crate::rational::{format_rational, ratio, Rational};
use crate::separated::{certify_separated, exponential_bound, grid, packing_upper_bound};

fn times(p: u64) -> Result<PLCircleMap, VerifyError> {
    PLCircleMap::times_p(p).map_err(|e| VerifyError::InvalidParameters(e.to_string()))
}

fn six_power(l: u32) -> Result<u64, VerifyError> {
    6u64.checked_pow(l)
        .filter(|&p| p <= 1 << 40)
        .ok_or_else(|| VerifyError::InvalidParameters(format!("6^{l} is too large")))
}

fn q(x: &Rational) -> String {
    format_rational(x)
}

fn json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("serialisable")
}

/// Checks `B_n(x, eps) = x + B_n(0, eps)` under `×p` for every sample, by
/// exact arc-union equality.
pub fn verify_translation_equivariance(
    p: u64,
    n: usize,
    eps: &Rational,
    samples: &[CirclePoint],
) -> Result<VerificationReport, VerifyError> {
    let f = times(p)?;
    let mut report = VerificationReport::new(
        ClaimId::TranslationEquivariance,
        record([
            ("p", p.to_string()),
            ("n", n.to_string()),
            ("eps", q(eps)),
            ("samples", samples.len().to_string()),
        ]),
    );
    let base = bowen_ball(&f, &CirclePoint::zero(), n, eps)?;
    let rows = samples
        .par_iter()
        .map(|x| {
            let direct = bowen_ball(&f, x, n, eps)?;
            let shifted = base.translate(x);
            Ok((x, direct, shifted))
        })
        .collect::<Result<Vec<_>, VerifyError>>()?;
    for (x, direct, shifted) in rows {
        let equal = direct == shifted;
        report.details.push(record([
            ("x", x.to_string()),
            ("components", direct.components().len().to_string()),
            ("measure", q(&direct.measure())),
            ("equal", equal.to_string()),
        ]));
        if !equal {
            report.fail(record([
                ("x", x.to_string()),
                ("ball", json(&direct)),
                ("translated", json(&shifted)),
            ]));
        }
    }
    Ok(report)
}

/// For `p = 6^ℓ`, walks the components `J = (a, b)` of `B_n(0, 1/6)`.
///
/// Each component gets two checks: the endpoint hypothesis
/// `f^n(a) = f^n(b) = 0`, and `μ(B_{n+1} ∩ J) = μ(J) / 3`. The verdict
/// depends on the ratio for components meeting the hypothesis. Components
/// that miss the hypothesis are listed as `hypothesis_failure` records.
pub fn verify_component_thirds(l: u32, n: usize) -> Result<VerificationReport, VerifyError> {
    let params = record([("l", l.to_string()), ("n", n.to_string())]);
    if l == 0 {
        return Ok(VerificationReport::unsupported(
            ClaimId::ComponentThirds,
            params,
            "needs p = 6^l with l >= 1",
        ));
    }
    if n == 0 {
        return Err(VerifyError::InvalidParameters(
            "n must be at least 1".into(),
        ));
    }
    let p = six_power(l)?;
    let f = times(p)?;
    let r = ratio(1, 6);
    let third = ratio(1, 3);
    let ball = bowen_ball(&f, &CirclePoint::zero(), n, &r)?;
    let next = bowen_ball(&f, &CirclePoint::zero(), n + 1, &r)?;
    let mut report = VerificationReport::new(ClaimId::ComponentThirds, params);
    report.parameters.insert("p".into(), p.to_string());
    if !next.is_subset_of(&ball) {
        report.fail(record([
            ("nested", "false".into()),
            ("ball", json(&ball)),
            ("next", json(&next)),
        ]));
        return Ok(report);
    }
    // Each arc of the smaller ball lies inside exactly one component.
    let mut inside = vec![Rational::zero(); ball.components().len()];
    for arc in next.components() {
        let idx = ball.component_of(&arc.midpoint()).expect("nested balls");
        inside[idx] += arc.length();
    }
    let mut failures = Vec::new();
    for (idx, (arc, inside)) in ball.components().iter().zip(inside).enumerate() {
        let a = arc.start().clone();
        let b = arc.end();
        let hypothesis =
            f.apply_n(&a, n) == CirclePoint::zero() && f.apply_n(&b, n) == CirclePoint::zero();
        let share = &inside / arc.length();
        report.details.push(record([
            ("kind", "component".into()),
            ("index", idx.to_string()),
            ("a", a.to_string()),
            ("b", b.to_string()),
            ("length", q(arc.length())),
            ("inside", q(&inside)),
            ("ratio", q(&share)),
            ("hypothesis", hypothesis.to_string()),
        ]));
        if !hypothesis {
            failures.push(record([
                ("kind", "hypothesis_failure".into()),
                ("index", idx.to_string()),
                ("a", a.to_string()),
                ("b", b.to_string()),
                ("f^n(a)", f.apply_n(&a, n).to_string()),
                ("f^n(b)", f.apply_n(&b, n).to_string()),
            ]));
        } else if share != third {
            report.fail(record([
                ("index", idx.to_string()),
                ("a", a.to_string()),
                ("b", b.to_string()),
                ("ratio", q(&share)),
            ]));
        }
    }
    report.details.push(record([
        ("kind", "summary".into()),
        ("components", ball.components().len().to_string()),
        ("hypothesis_failures", failures.len().to_string()),
    ]));
    report.details.extend(failures);
    Ok(report)
}

/// For `p = 6^ℓ` and `k = 1..=n`, checks `μ(B_k(0, 1/6)) = 3^-k` and the
/// step `μ(B_k) = μ(B_{k-1}) / 3`, then that the packing bound is `3^n`.
pub fn verify_ball_measure(l: u32, n: usize) -> Result<VerificationReport, VerifyError> {
    let params = record([("l", l.to_string()), ("n", n.to_string())]);
    if l == 0 {
        return Ok(VerificationReport::unsupported(
            ClaimId::BallMeasure,
            params,
            "needs p = 6^l with l >= 1",
        ));
    }
    if n == 0 {
        return Err(VerifyError::InvalidParameters(
            "n must be at least 1".into(),
        ));
    }
    let p = six_power(l)?;
    let f = times(p)?;
    let mut report = VerificationReport::new(ClaimId::BallMeasure, params);
    report.parameters.insert("p".into(), p.to_string());
    let measures = (1..=n)
        .into_par_iter()
        .map(|k| Ok(bowen_ball(&f, &CirclePoint::zero(), k, &ratio(1, 6))?.measure()))
        .collect::<Result<Vec<Rational>, VerifyError>>()?;
    for (k, m) in (1..=n).zip(&measures) {
        let expected = Rational::new(BigInt::one(), exponential_bound(k));
        let chain = (k >= 2).then(|| *m == &measures[k - 2] / Rational::from_integer(3.into()));
        report.details.push(record([
            ("n", k.to_string()),
            ("measure", q(m)),
            ("expected", q(&expected)),
            ("chain", chain.map_or("-".into(), |c| c.to_string())),
        ]));
        if *m != expected || chain == Some(false) {
            report.fail(record([
                ("n", k.to_string()),
                ("measure", q(m)),
                ("expected", q(&expected)),
            ]));
        }
    }
    let bound = packing_upper_bound(&f, n, &ratio(1, 3))?;
    let expected = exponential_bound(n);
    report.details.push(record([
        ("packing_bound", bound.to_string()),
        ("expected", expected.to_string()),
    ]));
    if bound != expected {
        report.fail(record([
            ("packing_bound", bound.to_string()),
            ("expected", expected.to_string()),
        ]));
    }
    Ok(report)
}

/// Certifies `{i / 2^r}` as `(r, 1/3)`-separated under doubling by direct
/// orbit comparison of every pair.
pub fn verify_dyadic_grid(r: usize) -> Result<VerificationReport, VerifyError> {
    if !(1..=20).contains(&r) {
        return Err(VerifyError::InvalidParameters(format!(
            "r = {r} outside 1..=20"
        )));
    }
    let f2 = times(2)?;
    let points = grid(1 << r);
    let summary = certify_separated(&f2, &points, r, &ratio(1, 3))?;
    let mut report =
        VerificationReport::new(ClaimId::DyadicGridSeparated, record([("r", r.to_string())]));
    let opt = |x: &Option<Rational>| x.as_ref().map_or("-".into(), q);
    let mut row: Record = record([
        ("size", summary.size.to_string()),
        ("pairs", summary.pairs.to_string()),
        ("certified", summary.certified.to_string()),
        ("min_witness", opt(&summary.min_witness)),
        ("max_witness", opt(&summary.max_witness)),
    ]);
    row.insert(
        "max_index".into(),
        summary.max_index.map_or("-".into(), |k| k.to_string()),
    );
    report.details.push(row);
    if let Some((i, j)) = summary.first_failure {
        report.fail(record([
            ("x", points[i].to_string()),
            ("y", points[j].to_string()),
        ]));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::Verdict;

    fn pt(n: i64, d: i64) -> CirclePoint {
        CirclePoint::from_ratio(n, d)
    }

    #[test]
    fn translation_examples() {
        let r = verify_translation_equivariance(6, 2, &ratio(1, 6), &[pt(1, 2)]).unwrap();
        assert!(r.passed());
        let r = verify_translation_equivariance(2, 3, &ratio(1, 5), &[pt(1, 3)]).unwrap();
        assert!(r.passed());
        let samples: Vec<_> = (0..7).map(|i| pt(i, 7)).collect();
        let r = verify_translation_equivariance(5, 1, &ratio(2, 7), &samples).unwrap();
        assert!(r.passed());
        assert_eq!(r.details.len(), 7);
    }

    #[test]
    fn component_thirds_small_cases() {
        let r = verify_component_thirds(1, 1).unwrap();
        assert!(r.passed());
        let comp = &r.details[0];
        assert_eq!(comp["a"], "5/6");
        assert_eq!(comp["b"], "1/6");
        assert_eq!(comp["inside"], "1/9");
        assert_eq!(comp["ratio"], "1/3");
        assert_eq!(comp["hypothesis"], "true");

        let r = verify_component_thirds(1, 2).unwrap();
        assert!(r.passed());
        let comps: Vec<_> = r
            .details
            .iter()
            .filter(|d| d["kind"] == "component")
            .collect();
        assert_eq!(comps.len(), 3);
        assert!(comps
            .iter()
            .all(|c| c["ratio"] == "1/3" && c["hypothesis"] == "true"));

        assert!(verify_component_thirds(2, 1).unwrap().passed());
        assert_eq!(
            verify_component_thirds(0, 1).unwrap().verdict,
            Verdict::Unsupported
        );
    }

    #[test]
    fn ball_measure_examples() {
        let r = verify_ball_measure(1, 3).unwrap();
        assert!(r.passed());
        assert_eq!(r.details[2]["measure"], "1/27");
        assert_eq!(r.details[3]["packing_bound"], "27");
        let r = verify_ball_measure(1, 1).unwrap();
        assert_eq!(r.details[0]["measure"], "1/3");
        assert_eq!(r.details[1]["packing_bound"], "3");
        let r = verify_ball_measure(2, 2).unwrap();
        assert!(r.passed());
        assert_eq!(r.details[1]["measure"], "1/9");
        assert_eq!(r.details[2]["packing_bound"], "9");
    }

    #[test]
    fn dyadic_grid_small() {
        for r in 1..=6 {
            let rep = verify_dyadic_grid(r).unwrap();
            assert!(rep.passed(), "r = {r}");
            assert_eq!(rep.details[0]["max_witness"], "1/2");
        }
        assert!(verify_dyadic_grid(0).is_err());
    }
}
