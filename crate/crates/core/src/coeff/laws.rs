//! Sampled and constructor-level certification of map laws, and conjugacy.

use serde::Serialize;

use super::sample::random_scalar;
use super::{MapRole, RingKind, RingMap, SampleConfig, Scalar, ScalarError};

/// Anything that sends scalars to scalars. Implemented by [`RingMap`] and by
/// plain closures, so that non-members of the closed family can be tested
/// against the derivation laws.
pub trait ScalarMap {
    fn apply_scalar(&self, r: &Scalar) -> Result<Scalar, ScalarError>;

    fn as_ring_map(&self) -> Option<&RingMap> {
        None
    }
}

impl ScalarMap for RingMap {
    fn apply_scalar(&self, r: &Scalar) -> Result<Scalar, ScalarError> {
        self.apply(r)
    }

    fn as_ring_map(&self) -> Option<&RingMap> {
        Some(self)
    }
}

impl<F> ScalarMap for F
where
    F: Fn(&Scalar) -> Scalar,
{
    fn apply_scalar(&self, r: &Scalar) -> Result<Scalar, ScalarError> {
        Ok(self(r))
    }
}

/// Outcome of one law checked on a batch of samples.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LawReport {
    pub law: String,
    pub samples: usize,
    pub failures: usize,
    /// `Some(true)` when the law also follows from the constructor shape,
    /// `Some(false)` when the shape refutes it, `None` when unknown.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub analytic: Option<bool>,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.failures == 0 && self.analytic != Some(false)
    }
}

/// A list of law reports; passes when all of them do.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub checks: Vec<LawReport>,
}

impl Certificate {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(LawReport::passed)
    }

    pub fn failed(&self) -> impl Iterator<Item = &LawReport> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn push(&mut self, report: LawReport) {
        self.checks.push(report);
    }
}

fn count_failures(samples: usize, mut ok: impl FnMut() -> Result<bool, ScalarError>) -> usize {
    (0..samples).filter(|_| !ok().unwrap_or(false)).count()
}

/// Twisted Leibniz rule and additivity of `der` against `aut`.
pub fn derivation_report(aut: &RingMap, der: &dyn ScalarMap, kind: RingKind, cfg: &SampleConfig) -> LawReport {
    let mut rng = cfg.rng();
    let failures = count_failures(cfg.samples, || {
        let a = random_scalar(kind, &mut rng);
        let b = random_scalar(kind, &mut rng);
        let lhs = der.apply_scalar(&a.checked_mul(&b)?)?;
        let rhs = aut
            .apply(&a)?
            .checked_mul(&der.apply_scalar(&b)?)?
            .checked_add(&der.apply_scalar(&a)?.checked_mul(&b)?)?;
        let sum = der.apply_scalar(&a.checked_add(&b)?)?;
        let parts = der.apply_scalar(&a)?.checked_add(&der.apply_scalar(&b)?)?;
        Ok(lhs == rhs && sum == parts)
    });
    let analytic = der.as_ring_map().and_then(|m| {
        let certified = m.role() == MapRole::Derivation
            && m.validate(kind).is_ok()
            && aut.validate(kind).is_ok()
            && m.paired_aut().is_some_and(|p| p.equivalent_aut(aut));
        certified.then_some(true)
    });
    LawReport {
        law: format!(
            "leibniz({aut}, {})",
            der.as_ring_map().map_or("<fn>".to_string(), |m| m.to_string())
        ),
        samples: cfg.samples,
        failures,
        analytic,
    }
}

/// `δ(ab) = ω(a)δ(b) + δ(a)b` and additivity on sampled pairs.
pub fn check_derivation(aut: &RingMap, der: &dyn ScalarMap, kind: RingKind, cfg: &SampleConfig) -> bool {
    derivation_report(aut, der, kind, cfg).passed()
}

/// Multiplicativity, additivity, `ω(1) = 1` and invertibility of an automorphism.
pub fn automorphism_report(aut: &RingMap, kind: RingKind, cfg: &SampleConfig) -> LawReport {
    let mut rng = cfg.rng();
    let inverse = aut.inverse();
    let failures = count_failures(cfg.samples, || {
        let a = random_scalar(kind, &mut rng);
        let b = random_scalar(kind, &mut rng);
        let one = Scalar::one(kind);
        let hom = aut.apply(&a.checked_mul(&b)?)? == aut.apply(&a)?.checked_mul(&aut.apply(&b)?)?;
        let add = aut.apply(&a.checked_add(&b)?)? == aut.apply(&a)?.checked_add(&aut.apply(&b)?)?;
        let unit = aut.apply(&one)? == one;
        let inv = match &inverse {
            Ok(inv) => inv.apply(&aut.apply(&a)?)? == a,
            Err(_) => false,
        };
        Ok(hom && add && unit && inv)
    });
    let analytic = (aut.role() == MapRole::Automorphism && aut.validate(kind).is_ok()).then_some(true);
    LawReport {
        law: format!("automorphism({aut})"),
        samples: cfg.samples,
        failures,
        analytic,
    }
}

/// Whether `c` is fixed by (automorphism) or killed by (derivation) `m`,
/// with a derivation's own twist also fixing it.
fn coefficient_passes(m: &RingMap, c: &Scalar) -> bool {
    match m.role() {
        MapRole::Automorphism => m.apply(c).is_ok_and(|v| v == *c),
        MapRole::Derivation => {
            m.apply(c).is_ok_and(|v| v.is_zero()) && m.paired_aut().is_some_and(|a| a.apply(c).is_ok_and(|v| v == *c))
        }
    }
}

/// Constructor-level answer to "do `f` and `g` commute under composition".
fn analytic_commutation(f: &RingMap, g: &RingMap) -> Option<bool> {
    if f == g || f.is_identity_aut() || g.is_identity_aut() || f.is_zero_der() || g.is_zero_der() {
        return Some(true);
    }
    match (f, g) {
        (RingMap::Inner(a), RingMap::Inner(b)) => {
            let ab = a.checked_mul(b).ok()?;
            let ba_inv = b.checked_mul(a).ok()?.inv().ok()?;
            Some(ab.checked_mul(&ba_inv).ok()?.is_central())
        }
        (RingMap::QShift(_), RingMap::QShift(_)) => Some(true),
        (RingMap::LinComb { terms, .. }, other) | (other, RingMap::LinComb { terms, .. }) => {
            // bilinear in the summands, provided coefficients pass through the other map
            let mut all = true;
            for (c, d) in terms {
                if !coefficient_passes(other, c) {
                    return None;
                }
                if let RingMap::LinComb { terms: inner, .. } = other {
                    if inner.iter().any(|(c2, _)| !coefficient_passes(d, c2)) {
                        return None;
                    }
                }
                all &= analytic_commutation(d, other)?;
            }
            Some(all)
        }
        _ => None,
    }
}

/// Sampled check of `f ∘ g = g ∘ f`.
pub fn commutation_report(f: &RingMap, g: &RingMap, kind: RingKind, cfg: &SampleConfig) -> LawReport {
    let mut rng = cfg.rng();
    let failures = count_failures(cfg.samples, || {
        let r = random_scalar(kind, &mut rng);
        Ok(f.apply(&g.apply(&r)?)? == g.apply(&f.apply(&r)?)?)
    });
    LawReport {
        law: format!("commute({f}, {g})"),
        samples: cfg.samples,
        failures,
        analytic: analytic_commutation(f, g),
    }
}

/// True iff every pair commutes under composition on the sampled inputs.
pub fn check_commutation(pairs: &[(RingMap, RingMap)], kind: RingKind, cfg: &SampleConfig) -> bool {
    pairs.iter().all(|(f, g)| commutation_report(f, g, kind, cfg).passed())
}

/// Conjugacy in the active division ring.
///
/// In a field this is equality. In the rational quaternions two non-central
/// elements are conjugate iff they share the minimal polynomial over ℚ,
/// i.e. the reduced trace and norm (Skolem–Noether); a central element is
/// conjugate only to itself.
pub fn are_conjugate(a: &Scalar, b: &Scalar) -> Result<bool, ScalarError> {
    b.expect_kind(a.kind())?;
    Ok(match (a, b) {
        (Scalar::Quaternion(p), Scalar::Quaternion(q)) => {
            if p.is_real() || q.is_real() {
                p == q
            } else {
                p.trace() == q.trace() && p.norm() == q.norm()
            }
        }
        _ => a == b,
    })
}
