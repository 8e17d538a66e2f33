//! Moving scalars left past monomials, and related normal-form operations.

use std::sync::Arc;

use super::{Exponents, Flavor, OreError, OreRing, SkewPoly};
use crate::coeff::Scalar;

/// Coefficients `c_0, …, c_k` with `t^k·r = Σ c_j t^j` for a single twist,
/// built one step at a time from `t·c = ω(c)t + δ(c)`.
fn power_coefficients(ring: &OreRing, var: usize, k: u32, r: &Scalar) -> Result<Vec<Scalar>, OreError> {
    let twist = ring.twist(var);
    let mut coeffs = vec![r.clone()];
    for _ in 0..k {
        let mut next = Vec::with_capacity(coeffs.len() + 1);
        for (j, c) in coeffs.iter().enumerate() {
            let mut v = twist.der.apply(c)?;
            if j > 0 {
                v = v.checked_add(&twist.aut.apply(&coeffs[j - 1])?)?;
            }
            next.push(v);
        }
        next.push(twist.aut.apply(coeffs.last().expect("nonempty"))?);
        coeffs = next;
    }
    Ok(coeffs)
}

/// Normal form of `t_var^k · r`.
pub fn var_power_times_scalar(ring: &Arc<OreRing>, var: usize, k: u32, r: &Scalar) -> Result<SkewPoly, OreError> {
    if var >= ring.var_count() {
        return Err(OreError::VariableIndex(var));
    }
    r.expect_kind(ring.kind())?;
    let n = ring.var_count();
    let coeffs = power_coefficients(ring, var, k, r)?;
    SkewPoly::from_terms(
        ring,
        coeffs
            .into_iter()
            .enumerate()
            .map(|(j, c)| (Exponents::unit(n, var, j as u32), c)),
    )
}

/// Normal form of `t₁^{i₁}⋯tₙ^{iₙ} · r`, moving `r` past `tₙ^{iₙ}` first.
pub fn monomial_times_scalar(ring: &Arc<OreRing>, exps: &Exponents, r: &Scalar) -> Result<SkewPoly, OreError> {
    let n = ring.var_count();
    if exps.len() != n {
        return Err(OreError::ArityMismatch {
            expected: n,
            found: exps.len(),
        });
    }
    r.expect_kind(ring.kind())?;
    let mut acc = SkewPoly::constant(ring, r.clone())?;
    for var in (0..n).rev() {
        let k = exps.get(var);
        if k == 0 {
            continue;
        }
        let mut next = SkewPoly::zero(ring);
        for (e, c) in acc.terms() {
            for (j, d) in power_coefficients(ring, var, k, c)?.into_iter().enumerate() {
                next.add_term(e.with(var, e.get(var) + j as u32), d);
            }
        }
        acc = next;
    }
    Ok(acc)
}

/// Normal form of `(r·t_var)^m`.
pub fn scalar_var_power(ring: &Arc<OreRing>, r: &Scalar, var: usize, m: u32) -> Result<SkewPoly, OreError> {
    if var >= ring.var_count() {
        return Err(OreError::VariableIndex(var));
    }
    let base = SkewPoly::monomial(ring, Exponents::unit(ring.var_count(), var, 1), r.clone())?;
    let mut acc = SkewPoly::one(ring);
    for _ in 0..m {
        acc = acc.mul_unchecked(&base)?;
    }
    Ok(acc)
}

/// Reads a commuting-variable ring as the iterated extension in which each
/// twist fixes and kills the earlier variables. Both readings share one
/// normal form, so the result differs only in its flavor.
pub fn convert_commuting_to_tower(ring: &Arc<OreRing>) -> Result<Arc<OreRing>, OreError> {
    if ring.flavor() != Flavor::Commuting {
        return Err(OreError::FlavorMismatch(Flavor::Commuting));
    }
    ring.require_compatible()?;
    Ok(ring.relabelled(Flavor::Tower))
}

/// `h = Σ_{|I|=N} b_I x^{I∖excluded}`, the top-degree part of `f` with the
/// excluded variable dropped, as an element of an untwisted ring on the
/// remaining variables.
pub fn leading_form(f: &SkewPoly, excluded: usize) -> Result<SkewPoly, OreError> {
    let ring = f.ring();
    if excluded >= ring.var_count() {
        return Err(OreError::VariableIndex(excluded));
    }
    let top = f.total_degree().finite().ok_or(OreError::ZeroPolynomial)?;
    let mut names = ring.names();
    names.remove(excluded);
    let target = OreRing::trivial(ring.kind(), &names)?;
    SkewPoly::from_terms(
        &target,
        f.terms()
            .filter(|(e, _)| e.total() == top)
            .map(|(e, c)| (e.without(excluded), c.clone())),
    )
}
