//! Monic relations by central changes of variables, and the resulting chain
//! of eliminations.
//!
//! Given a nonzero relation `f` of total degree `N` in a commuting-variable
//! ring with a shared automorphism, `monicize` finds central fixed constants
//! `u` and a scale `a` such that `g = a·f(y₁+u₁y_m, …, y_m)` is monic of
//! degree `N` in `y_m`. Reading `g` in the variables `tᵢ = xᵢ − uᵢxₙ` gives a
//! monic relation for `tₙ` over the remaining variables, which
//! `reduce_by_monic` uses to bound `tₙ`-degrees.

use std::collections::BTreeMap;
use std::sync::Arc;

use thiserror::Error;

use crate::cns::{formal_substitute, CnsError};
use crate::coeff::{central_fixed_stream, RingMap, Scalar, ScalarError, Twist};
use crate::eval::{evaluate, mix_derivations_at, AutomorphicTuple, EvalError, MixedTower};
use crate::ore::{leading_form, Exponents, OreError, OreRing, SkewPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NormError {
    #[error(transparent)]
    Ore(#[from] OreError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("relation is a nonzero constant")]
    ConstantRelation,
    #[error("no central fixed point avoids the leading form")]
    SearchExhausted,
    #[error("replay mismatch: {0}")]
    ReplayMismatch(String),
    #[error("{0} is not monic")]
    NotMonic(String),
}

impl From<ScalarError> for NormError {
    fn from(e: ScalarError) -> Self {
        NormError::Ore(e.into())
    }
}

/// The change of variables `yᵢ ↦ yᵢ + uᵢ·y_target` and the left scale `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Substitution {
    pub target: usize,
    /// One constant per variable other than `target`, in order.
    pub u: Vec<Scalar>,
    pub scale: Scalar,
    /// `h(u)`, the leading form at `u`; `scale` is its inverse.
    pub leading_value: Scalar,
}

impl Substitution {
    /// `u` spread over all variables, with zero at `target`.
    pub fn full_u(&self) -> Vec<Scalar> {
        let mut all = self.u.clone();
        all.insert(self.target, Scalar::zero(self.scale.kind()));
        all
    }
}

/// `t^m + ε₁t^{m−1} + ⋯ + ε_m` in the variable `var`, each `εₖ` free of it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonicRelation {
    pub var: usize,
    pub degree: u32,
    pub eps: Vec<SkewPoly>,
}

impl MonicRelation {
    /// Reads a polynomial monic in `var` as a relation.
    pub fn from_poly(g: &SkewPoly, var: usize) -> Result<Self, NormError> {
        let degree = g.degree_in(var).ok_or(OreError::ZeroPolynomial)?;
        let parts = g.collect_in(var);
        let lead = parts[&degree].as_constant();
        if !lead.is_some_and(|c| c.is_one()) {
            return Err(NormError::NotMonic(format!("{g} in variable {var}")));
        }
        let ring = g.ring();
        let eps = (1..=degree)
            .map(|k| {
                parts
                    .get(&(degree - k))
                    .cloned()
                    .unwrap_or_else(|| SkewPoly::zero(ring))
            })
            .collect();
        Ok(MonicRelation { var, degree, eps })
    }

    pub fn ring(&self) -> &Arc<OreRing> {
        self.eps[0].ring()
    }

    /// The relation as a single polynomial.
    pub fn poly(&self) -> SkewPoly {
        let ring = self.ring();
        let n = ring.var_count();
        let mut out = SkewPoly::monomial(
            ring,
            Exponents::unit(n, self.var, self.degree),
            Scalar::one(ring.kind()),
        )
        .expect("unit coefficient");
        for (k, e) in self.eps.iter().enumerate() {
            let shift = Exponents::unit(n, self.var, self.degree - 1 - k as u32);
            for (j, c) in e.terms() {
                out.add_term(j.add(&shift), c.clone());
            }
        }
        out
    }
}

/// A point found by [`find_nonvanishing_point`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSearch {
    pub point: Vec<Scalar>,
    /// Specializations tested, one per candidate value tried.
    pub examined: usize,
}

type TermList = Vec<(Vec<u32>, Scalar)>;

fn specialize_first(terms: &TermList, c: &Scalar) -> TermList {
    let mut out: BTreeMap<Vec<u32>, Scalar> = BTreeMap::new();
    for (e, b) in terms {
        let v = b * &c.pow(e[0]);
        let key = e[1..].to_vec();
        let sum = match out.remove(&key) {
            Some(old) => &old + &v,
            None => v,
        };
        if !sum.is_zero() {
            out.insert(key, sum);
        }
    }
    out.into_iter().collect()
}

/// A point of `F^k` where the untwisted polynomial `h` does not vanish,
/// specializing one coordinate at a time to the first candidate that keeps
/// the remaining polynomial nonzero. Only the first `deg h + 1` candidates
/// are tried per coordinate; a nonzero polynomial of degree `d` in one
/// central variable has at most `d` central roots, so this suffices.
pub fn find_nonvanishing_point(h: &SkewPoly, candidates: &[Scalar]) -> Result<PointSearch, NormError> {
    let degree = h.total_degree().finite().ok_or(OreError::ZeroPolynomial)?;
    let per_coordinate = &candidates[..candidates.len().min(degree as usize + 1)];
    let mut terms: TermList = h.terms().map(|(e, c)| (e.as_slice().to_vec(), c.clone())).collect();
    let mut point = Vec::new();
    let mut examined = 0;
    for _ in 0..h.ring().var_count() {
        let mut next = None;
        for c in per_coordinate {
            examined += 1;
            let s = specialize_first(&terms, c);
            if !s.is_empty() {
                next = Some((c.clone(), s));
                break;
            }
        }
        let (c, s) = next.ok_or(NormError::SearchExhausted)?;
        point.push(c);
        terms = s;
    }
    Ok(PointSearch { point, examined })
}

/// Output of [`monicize`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monicized {
    pub substitution: Substitution,
    /// `a·f(y + u·y_target)`, in the ring whose twists are `tower`'s.
    pub g: SkewPoly,
    /// Derivations `δᵢ − uᵢδ_target` of the ring holding `g`.
    pub tower: MixedTower,
    pub examined: usize,
}

fn derivations(ring: &OreRing) -> Vec<RingMap> {
    ring.twists().into_iter().map(|t| t.der).collect()
}

/// The ring with derivations `δᵢ − uᵢδ_target`, and the tuple
/// `(yᵢ + uᵢy_target)` in it, which carries the original twists.
fn shifted_tuple(
    ring: &Arc<OreRing>,
    target: usize,
    u: &[Scalar],
) -> Result<(Arc<OreRing>, MixedTower, AutomorphicTuple), NormError> {
    let neg: Vec<Scalar> = u.iter().map(Scalar::neg).collect();
    let tower = mix_derivations_at(ring.kind(), &derivations(ring), target, &neg, ring.sampling())?;
    let shifted = ring.with_twists(tower.twists())?;
    let tuple = linear_tuple(&shifted, target, u, ring.twists())?;
    Ok((shifted, tower, tuple))
}

/// `(tᵢ + cᵢ·t_target)` in `ring` with the given claimed twists.
fn linear_tuple(
    ring: &Arc<OreRing>,
    target: usize,
    c: &[Scalar],
    twists: Vec<Twist>,
) -> Result<AutomorphicTuple, NormError> {
    let pivot = SkewPoly::var(ring, target)?;
    let mut coeffs = c.iter();
    let mut elements = Vec::with_capacity(ring.var_count());
    for i in 0..ring.var_count() {
        let v = SkewPoly::var(ring, i)?;
        if i == target {
            elements.push(v);
        } else {
            let a = coeffs.next().ok_or(OreError::ArityMismatch {
                expected: ring.var_count() - 1,
                found: c.len(),
            })?;
            elements.push(v.add(&pivot.left_scale(a)?)?);
        }
    }
    let tuple = AutomorphicTuple::new(elements, twists)?;
    tuple.require_certified()?;
    Ok(tuple)
}

/// Makes `f` monic in `y_target` by a central linear change of variables and
/// a left scale.
pub fn monicize(f: &SkewPoly, target: usize) -> Result<Monicized, NormError> {
    let ring = f.ring();
    if target >= ring.var_count() {
        return Err(OreError::VariableIndex(target).into());
    }
    let degree = f.total_degree().finite().ok_or(OreError::ZeroPolynomial)?;
    if degree == 0 {
        return Err(NormError::ConstantRelation);
    }
    ring.require_compatible()?;
    if ring.shared_aut().is_none() {
        return Err(EvalError::NoSharedAutomorphism.into());
    }
    let h = leading_form(f, target)?;
    let candidates = central_fixed_stream(ring.kind(), &ring.all_maps())
        .take_verified(degree as usize + 1)
        .map_err(|_| NormError::SearchExhausted)?;
    let search = find_nonvanishing_point(&h, &candidates)?;
    let leading_value = formal_substitute(&h, &search.point).map_err(|e| match e {
        CnsError::Ore(o) => NormError::Ore(o),
        other => NormError::ReplayMismatch(other.to_string()),
    })?;
    let scale = leading_value.inv()?;
    let (_, tower, tuple) = shifted_tuple(ring, target, &search.point)?;
    let g = evaluate(f, &tuple)?.left_scale(&scale)?;
    let lead = g.coeff_or_zero(Exponents::unit(ring.var_count(), target, degree).as_slice());
    if g.degree_in(target) != Some(degree) || !lead.is_one() {
        return Err(NormError::ReplayMismatch(format!(
            "{g} is not monic of degree {degree}"
        )));
    }
    Ok(Monicized {
        substitution: Substitution {
            target,
            u: search.point,
            scale,
            leading_value,
        },
        g,
        tower,
        examined: search.examined,
    })
}

/// One elimination: the witness it consumed, in the working ring before the
/// step, and what it produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizationStep {
    pub witness: SkewPoly,
    pub substitution: Substitution,
    pub tower: MixedTower,
    pub relation: MonicRelation,
    pub examined: usize,
}

impl NormalizationStep {
    /// The ring of the new variables `t`.
    pub fn ring_after(&self) -> &Arc<OreRing> {
        self.relation.ring()
    }

    /// `g(x₁ − u₁xₙ, …, xₙ) − a·f`, which is zero for a sound step.
    pub fn replay_discrepancy(&self) -> Result<SkewPoly, NormError> {
        replay_discrepancy(&self.witness, &self.substitution, &self.relation)
    }
}

/// `g(x₁ − u₁xₙ, …, xₙ) − a·f` where `g` is the relation polynomial and
/// `x` the variables of `f`'s ring.
pub fn replay_discrepancy(
    witness: &SkewPoly,
    substitution: &Substitution,
    relation: &MonicRelation,
) -> Result<SkewPoly, NormError> {
    let before = witness.ring();
    let neg: Vec<Scalar> = substitution.u.iter().map(Scalar::neg).collect();
    let back = linear_tuple(before, substitution.target, &neg, relation.ring().twists())?;
    let lhs = evaluate(&relation.poly(), &back)?;
    Ok(lhs.sub(&witness.left_scale(&substitution.scale)?)?)
}

/// Monicizes `f` in the last variable and reads the result as a monic
/// relation for `tₙ` in the variables `tᵢ = xᵢ − uᵢxₙ`.
pub fn normalize_step(f: &SkewPoly) -> Result<NormalizationStep, NormError> {
    let n = f.ring().var_count();
    if n == 0 {
        return Err(NormError::ConstantRelation);
    }
    let m = monicize(f, n - 1)?;
    let relation = MonicRelation::from_poly(&m.g, n - 1)?;
    let step = NormalizationStep {
        witness: f.clone(),
        substitution: m.substitution,
        tower: m.tower,
        relation,
        examined: m.examined,
    };
    let d = step.replay_discrepancy()?;
    if !d.is_zero() {
        return Err(NormError::ReplayMismatch(format!("discrepancy {d}")));
    }
    Ok(step)
}

/// `e = q·rel + r` with `deg_var(r) < m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub quotient: SkewPoly,
    pub remainder: SkewPoly,
}

/// Rewrites the highest power of the relation's variable until its degree
/// drops below the relation's.
pub fn reduce_by_monic(e: &SkewPoly, rel: &MonicRelation) -> Result<Reduction, NormError> {
    let p = rel.poly();
    if e.ring() != p.ring() {
        return Err(OreError::RingMismatch.into());
    }
    let mut rem = e.clone();
    let mut quotient = SkewPoly::zero(p.ring());
    while let Some(k) = rem.degree_in(rel.var).filter(|&k| k >= rel.degree) {
        let (exps, c) = rem
            .terms()
            .rev()
            .find(|(x, _)| x.get(rel.var) == k)
            .map(|(x, c)| (x.clone(), c.clone()))
            .expect("a term attains the degree");
        let q = SkewPoly::monomial(p.ring(), exps.with(rel.var, k - rel.degree), c)?;
        rem = rem.sub(&q.mul(&p)?)?;
        quotient = quotient.add(&q)?;
    }
    Ok(Reduction {
        quotient,
        remainder: rem,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SkipReason {
    /// Vanished after substitution and reduction.
    BecameZero,
    /// Still involves a variable eliminated by an earlier step.
    InvolvesEliminatedVariable,
    /// A nonzero constant, or no variables are left to eliminate.
    ConstantRelation,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkippedRelation {
    pub index: usize,
    pub reason: SkipReason,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizationResult {
    pub ring: Arc<OreRing>,
    pub steps: Vec<NormalizationStep>,
    pub skipped: Vec<SkippedRelation>,
    /// Variables left after the last elimination.
    pub remaining: usize,
}

impl NormalizationResult {
    /// For each eliminated variable, the powers `0..m` that generate the
    /// ring over the next smaller subring.
    pub fn generator_bounds(&self) -> Vec<u32> {
        self.steps.iter().map(|s| s.relation.degree).collect()
    }

    /// The subring generated by the remaining variables.
    pub fn final_ring(&self) -> Result<Arc<OreRing>, NormError> {
        match self.steps.last() {
            Some(s) => Ok(s.ring_after().prefix(self.remaining)?),
            None => Ok(self.ring.clone()),
        }
    }

    /// Re-checks every step's replay identity.
    pub fn replay(&self) -> Result<(), NormError> {
        for (n, step) in self.steps.iter().enumerate() {
            let d = step.replay_discrepancy()?;
            if !d.is_zero() {
                return Err(NormError::ReplayMismatch(format!("step {n}: discrepancy {d}")));
            }
        }
        Ok(())
    }
}

/// Carries `f` from the original variables through the completed steps:
/// substitute `xᵢ = tᵢ + uᵢtₙ`, reduce by the step's relation, and drop the
/// eliminated variable.
pub fn re_express(f: &SkewPoly, steps: &[NormalizationStep]) -> Result<Result<SkewPoly, SkipReason>, NormError> {
    let mut value = f.clone();
    for step in steps {
        let before = value.ring().clone();
        let after = step.ring_after();
        let target = step.substitution.target;
        let tuple = linear_tuple(after, target, &step.substitution.u, before.twists())?;
        let reduced = reduce_by_monic(&evaluate(&value, &tuple)?, &step.relation)?.remainder;
        if reduced.is_zero() {
            return Ok(Err(SkipReason::BecameZero));
        }
        if reduced.degree_in(target).is_some_and(|k| k > 0) {
            return Ok(Err(SkipReason::InvolvesEliminatedVariable));
        }
        value = reduced.restrict_or_extend(&after.prefix(target)?)?;
    }
    Ok(Ok(value))
}

/// Consumes relations in order, each eliminating the current last variable.
/// Relations are written in the variables of `ring`.
pub fn normalize(ring: &Arc<OreRing>, relations: &[SkewPoly]) -> Result<NormalizationResult, NormError> {
    let mut steps: Vec<NormalizationStep> = Vec::new();
    let mut skipped = Vec::new();
    for (index, f) in relations.iter().enumerate() {
        if f.ring() != ring {
            return Err(OreError::RingMismatch.into());
        }
        let g = match re_express(f, &steps)? {
            Ok(g) => g,
            Err(reason) => {
                skipped.push(SkippedRelation { index, reason });
                continue;
            }
        };
        if g.is_zero() {
            skipped.push(SkippedRelation {
                index,
                reason: SkipReason::BecameZero,
            });
            continue;
        }
        if g.ring().var_count() == 0 || g.total_degree().finite() == Some(0) {
            skipped.push(SkippedRelation {
                index,
                reason: SkipReason::ConstantRelation,
            });
            continue;
        }
        steps.push(normalize_step(&g)?);
    }
    Ok(NormalizationResult {
        ring: ring.clone(),
        remaining: ring.var_count() - steps.len(),
        steps,
        skipped,
    })
}
