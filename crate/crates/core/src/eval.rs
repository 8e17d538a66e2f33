//! Automorphic elements, evaluation homomorphisms and derivation mixing.
//!
//! An element `s` of a ring `S ⊇ D` is automorphic for `(ω, δ)` when
//! `s·r = ω(r)·s + δ(r)` for every scalar `r`. A certified tuple of pairwise
//! commuting automorphic elements determines a ring homomorphism out of the
//! skew polynomial ring with the same twists, sending `tᵢ ↦ sᵢ` and fixing
//! the coefficients.

use std::sync::Arc;

use thiserror::Error;

use crate::coeff::sample::random_scalar;
use crate::coeff::{
    commutation_report, derivation_report, is_in_fixed_field, Certificate, LawReport, MapRole, RingKind, RingMap,
    SampleConfig, Scalar, ScalarError, Twist,
};
use crate::ore::{Exponents, OreError, OreRing, SkewPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error(transparent)]
    Ore(#[from] OreError),
    #[error("certificate failed: {}", .0.join("; "))]
    CertificateFailed(Vec<String>),
    #[error("twist of variable {var} is {found}, expected {expected}")]
    TwistMismatch {
        var: usize,
        expected: String,
        found: String,
    },
    #[error("{0} is not in the central fixed subfield")]
    NotInF(String),
    #[error("derivations do not share a twisting automorphism")]
    NoSharedAutomorphism,
}

impl From<ScalarError> for EvalError {
    fn from(e: ScalarError) -> Self {
        EvalError::Ore(e.into())
    }
}

/// `ω` equivalent and `δ` equal, treating all zero derivations as equal.
pub fn twist_matches(a: &Twist, b: &Twist) -> bool {
    a.aut.equivalent_aut(&b.aut) && (a.der == b.der || (a.der.is_zero_der() && b.der.is_zero_der()))
}

fn describe(t: &Twist) -> String {
    format!("({}, {})", t.aut, t.der)
}

/// Whether `s` is a linear form `Σ cⱼ tⱼ` whose coefficients lie in the
/// central fixed subfield of its ring and whose induced twist is `twist`.
/// In that case `s·r = ω(r)s + Σ cⱼδⱼ(r)` holds identically.
fn linear_form_certifies(s: &SkewPoly, twist: &Twist) -> bool {
    let ring = s.ring();
    let maps = ring.all_maps();
    let mut terms = Vec::new();
    for (e, c) in s.terms() {
        if e.total() != 1 || !is_in_fixed_field(c, &maps) {
            return false;
        }
        let var = e.as_slice().iter().position(|&k| k == 1).expect("degree one");
        let t = ring.twist(var);
        if !t.aut.equivalent_aut(&twist.aut) {
            return false;
        }
        terms.push((c.clone(), t.der.clone()));
    }
    if terms.is_empty() {
        return false;
    }
    RingMap::lin_comb(twist.aut.clone(), terms).is_ok_and(|d| twist_matches(&Twist::new(twist.aut.clone(), d), twist))
}

/// Sampled check of `s·r = ω(r)·s + δ(r)`, with the linear-form shortcut
/// recorded as the analytic verdict.
pub fn automorphic_report(s: &SkewPoly, twist: &Twist, cfg: &SampleConfig) -> Result<LawReport, EvalError> {
    let ring = s.ring();
    ring.require_compatible()?;
    let kind = ring.kind();
    twist.aut.validate(kind)?;
    twist.der.validate(kind)?;
    let mut rng = cfg.rng();
    let mut failures = 0;
    for _ in 0..cfg.samples {
        let r = random_scalar(kind, &mut rng);
        let rp = SkewPoly::constant(ring, r.clone())?;
        let lhs = s.mul(&rp)?;
        let rhs = s
            .left_scale(&twist.aut.apply(&r)?)?
            .add(&SkewPoly::constant(ring, twist.der.apply(&r)?)?)?;
        if lhs != rhs {
            failures += 1;
        }
    }
    Ok(LawReport {
        law: format!("automorphic({s}; {}, {})", twist.aut, twist.der),
        samples: cfg.samples,
        failures,
        analytic: linear_form_certifies(s, twist).then_some(true),
    })
}

/// True iff `s·r = ω(r)·s + δ(r)` on every sampled scalar.
pub fn is_automorphic(s: &SkewPoly, aut: &RingMap, der: &RingMap, cfg: &SampleConfig) -> bool {
    automorphic_report(s, &Twist::new(aut.clone(), der.clone()), cfg).is_ok_and(|r| r.passed())
}

/// Elements `s₁, …, sₙ` of a ring `S` with claimed twists, and the
/// certificate recording whether they are automorphic and commute.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutomorphicTuple {
    target: Arc<OreRing>,
    elements: Vec<SkewPoly>,
    twists: Vec<Twist>,
    certificate: Certificate,
}

impl AutomorphicTuple {
    pub fn new(elements: Vec<SkewPoly>, twists: Vec<Twist>) -> Result<Self, EvalError> {
        let target = elements
            .first()
            .map(|s| s.ring().clone())
            .ok_or(OreError::ArityMismatch {
                expected: twists.len().max(1),
                found: 0,
            })?;
        Self::with_sampling(elements, twists, *target.sampling())
    }

    pub fn with_sampling(elements: Vec<SkewPoly>, twists: Vec<Twist>, cfg: SampleConfig) -> Result<Self, EvalError> {
        if elements.len() != twists.len() || elements.is_empty() {
            return Err(OreError::ArityMismatch {
                expected: twists.len(),
                found: elements.len(),
            }
            .into());
        }
        let target = elements[0].ring().clone();
        if elements.iter().any(|s| s.ring() != &target) {
            return Err(OreError::RingMismatch.into());
        }
        let mut certificate = Certificate::default();
        for (s, t) in elements.iter().zip(&twists) {
            certificate.push(automorphic_report(s, t, &cfg)?);
        }
        for (a, sa) in elements.iter().enumerate() {
            for sb in &elements[a + 1..] {
                let commute = sa.mul(sb)? == sb.mul(sa)?;
                certificate.push(LawReport {
                    law: format!("commute({sa}, {sb})"),
                    samples: 1,
                    failures: usize::from(!commute),
                    analytic: None,
                });
            }
        }
        Ok(AutomorphicTuple {
            target,
            elements,
            twists,
            certificate,
        })
    }

    /// The variables of `ring` themselves, with the ring's own twists.
    pub fn identity(ring: &Arc<OreRing>) -> Result<Self, EvalError> {
        let elements = (0..ring.var_count())
            .map(|i| SkewPoly::var(ring, i))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(elements, ring.twists())
    }

    pub fn target(&self) -> &Arc<OreRing> {
        &self.target
    }

    pub fn elements(&self) -> &[SkewPoly] {
        &self.elements
    }

    pub fn twists(&self) -> &[Twist] {
        &self.twists
    }

    pub fn certificate(&self) -> &Certificate {
        &self.certificate
    }

    pub fn require_certified(&self) -> Result<(), EvalError> {
        if self.certificate.passed() {
            Ok(())
        } else {
            Err(EvalError::CertificateFailed(
                self.certificate.failed().map(|c| c.law.clone()).collect(),
            ))
        }
    }
}

/// `Σ b_I s₁^{i₁}⋯sₙ^{iₙ}` in the tuple's ring, multiplying left to right.
pub fn evaluate(f: &SkewPoly, tuple: &AutomorphicTuple) -> Result<SkewPoly, EvalError> {
    tuple.require_certified()?;
    let ring = f.ring();
    if ring.var_count() != tuple.elements.len() {
        return Err(OreError::ArityMismatch {
            expected: ring.var_count(),
            found: tuple.elements.len(),
        }
        .into());
    }
    if ring.kind() != tuple.target.kind() {
        return Err(OreError::RingMismatch.into());
    }
    for (var, (own, claimed)) in ring.twists().iter().zip(&tuple.twists).enumerate() {
        if !twist_matches(own, claimed) {
            return Err(EvalError::TwistMismatch {
                var,
                expected: describe(own),
                found: describe(claimed),
            });
        }
    }
    let mut powers: Vec<Vec<SkewPoly>> = vec![vec![SkewPoly::one(&tuple.target)]; tuple.elements.len()];
    let mut power = |var: usize, k: u32| -> Result<SkewPoly, OreError> {
        while powers[var].len() <= k as usize {
            let next = powers[var].last().expect("seeded").mul(&tuple.elements[var])?;
            powers[var].push(next);
        }
        Ok(powers[var][k as usize].clone())
    };
    let mut out = SkewPoly::zero(&tuple.target);
    for (e, b) in f.terms() {
        let mut term = SkewPoly::constant(&tuple.target, b.clone())?;
        for (var, &k) in e.as_slice().iter().enumerate() {
            if k > 0 {
                term = term.mul(&power(var, k)?)?;
            }
        }
        out = out.add(&term)?;
    }
    Ok(out)
}

/// Derivations `dᵢ = δᵢ + aᵢδ_target` (and `d_target = δ_target`) together
/// with the certificate of their laws.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedTower {
    pub aut: RingMap,
    pub target: usize,
    pub coefficients: Vec<Scalar>,
    pub derivations: Vec<RingMap>,
    pub certificate: Certificate,
}

impl MixedTower {
    pub fn twists(&self) -> Vec<Twist> {
        self.derivations
            .iter()
            .map(|d| Twist::new(self.aut.clone(), d.clone()))
            .collect()
    }
}

fn shared_aut(ders: &[RingMap]) -> Result<RingMap, EvalError> {
    let mut auts = ders.iter().map(|d| d.paired_aut());
    let first = auts.next().flatten().ok_or(EvalError::NoSharedAutomorphism)?;
    for a in auts {
        match a {
            Some(a) if a.equivalent_aut(&first) => {}
            _ => return Err(EvalError::NoSharedAutomorphism),
        }
    }
    Ok(first)
}

/// Mixes into the last derivation.
pub fn mix_derivations(
    kind: RingKind,
    ders: &[RingMap],
    coefficients: &[Scalar],
    cfg: &SampleConfig,
) -> Result<MixedTower, EvalError> {
    mix_derivations_at(kind, ders, ders.len().saturating_sub(1), coefficients, cfg)
}

/// `coefficients` holds one `aᵢ` per index other than `target`, in order.
pub fn mix_derivations_at(
    kind: RingKind,
    ders: &[RingMap],
    target: usize,
    coefficients: &[Scalar],
    cfg: &SampleConfig,
) -> Result<MixedTower, EvalError> {
    if target >= ders.len() {
        return Err(OreError::VariableIndex(target).into());
    }
    if coefficients.len() + 1 != ders.len() {
        return Err(OreError::ArityMismatch {
            expected: ders.len() - 1,
            found: coefficients.len(),
        }
        .into());
    }
    for d in ders {
        if d.role() != MapRole::Derivation {
            return Err(ScalarError::RoleMismatch {
                expected: MapRole::Derivation,
                map: d.to_string(),
            }
            .into());
        }
        d.validate(kind)?;
    }
    let aut = shared_aut(ders)?;
    let mut maps = vec![aut.clone()];
    maps.extend(ders.iter().cloned());
    for a in coefficients {
        a.expect_kind(kind)?;
        if !is_in_fixed_field(a, &maps) {
            return Err(EvalError::NotInF(a.to_string()));
        }
    }
    let mut coeffs = coefficients.iter();
    let mut derivations = Vec::with_capacity(ders.len());
    for (i, d) in ders.iter().enumerate() {
        if i == target {
            derivations.push(d.clone());
            continue;
        }
        let a = coeffs.next().expect("length checked");
        let mixed = RingMap::lin_comb(
            aut.clone(),
            vec![(Scalar::one(kind), d.clone()), (a.clone(), ders[target].clone())],
        )?;
        derivations.push(mixed);
    }
    let mut certificate = Certificate::default();
    for d in &derivations {
        certificate.push(derivation_report(&aut, d, kind, cfg));
        certificate.push(commutation_report(&aut, d, kind, cfg));
    }
    for (a, da) in derivations.iter().enumerate() {
        for db in &derivations[a + 1..] {
            certificate.push(commutation_report(da, db, kind, cfg));
        }
    }
    Ok(MixedTower {
        aut,
        target,
        coefficients: coefficients.to_vec(),
        derivations,
        certificate,
    })
}

/// `uᵢ = sᵢ + aᵢ·s_n` for `i < n`, `uₙ = sₙ`, re-certified against the
/// mixed derivations.
pub fn mix_elements(
    tuple: &AutomorphicTuple,
    coefficients: &[Scalar],
) -> Result<(AutomorphicTuple, MixedTower), EvalError> {
    mix_elements_at(tuple, tuple.elements.len().saturating_sub(1), coefficients)
}

pub fn mix_elements_at(
    tuple: &AutomorphicTuple,
    target: usize,
    coefficients: &[Scalar],
) -> Result<(AutomorphicTuple, MixedTower), EvalError> {
    tuple.require_certified()?;
    let kind = tuple.target.kind();
    let cfg = *tuple.target.sampling();
    let ders: Vec<RingMap> = tuple.twists.iter().map(|t| t.der.clone()).collect();
    if tuple.twists.iter().any(|t| !t.aut.equivalent_aut(&tuple.twists[0].aut)) {
        return Err(EvalError::NoSharedAutomorphism);
    }
    let tower = mix_derivations_at(kind, &ders, target, coefficients, &cfg)?;
    let mut coeffs = coefficients.iter();
    let pivot = &tuple.elements[target];
    let mut elements = Vec::with_capacity(tuple.elements.len());
    for (i, s) in tuple.elements.iter().enumerate() {
        if i == target {
            elements.push(s.clone());
        } else {
            let a = coeffs.next().expect("length checked");
            elements.push(s.add(&pivot.left_scale(a)?)?);
        }
    }
    let mixed = AutomorphicTuple::with_sampling(elements, tower.twists(), cfg)?;
    mixed.require_certified()?;
    Ok((mixed, tower))
}

/// The linear form `Σ cⱼ tⱼ` in `ring`.
pub fn linear_form(ring: &Arc<OreRing>, coefficients: &[Scalar]) -> Result<SkewPoly, OreError> {
    let n = ring.var_count();
    SkewPoly::from_terms(
        ring,
        coefficients
            .iter()
            .enumerate()
            .map(|(j, c)| (Exponents::unit(n, j, 1), c.clone())),
    )
}
