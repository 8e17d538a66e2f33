//! Symbolic automorphisms and twisted derivations of the coefficient rings.
//!
//! The family is closed: every map is built from a handful of constructors
//! whose laws are known, so application is exact and certification can use
//! the constructor shape as well as sampling.

use std::fmt;

use num::{BigRational, One, Zero};

use super::{RatFunc, RingKind, Scalar, ScalarError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MapRole {
    Automorphism,
    Derivation,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RingMap {
    /// `r ↦ r`.
    Identity,
    /// `r ↦ c r c⁻¹`.
    Inner(Scalar),
    /// `f(x) ↦ f(qx)` on ℚ(x).
    QShift(BigRational),
    /// The zero derivation twisted by the boxed automorphism.
    ZeroDer(Box<RingMap>),
    /// `d/dx` on ℚ(x), an ordinary derivation.
    Ddx,
    /// `r ↦ c r − ω(r) c`.
    InnerDer { c: Scalar, aut: Box<RingMap> },
    /// `f ↦ (f(qx) − f(x)) / ((q − 1) x)`, twisted by `QShift(q)`.
    QDiff(BigRational),
    /// `Σ cₖ δₖ` with central coefficients and a common twisting automorphism.
    LinComb {
        aut: Box<RingMap>,
        terms: Vec<(Scalar, RingMap)>,
    },
}

/// The pair `(ω, δ)` attached to one variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Twist {
    pub aut: RingMap,
    pub der: RingMap,
}

impl Twist {
    pub fn new(aut: RingMap, der: RingMap) -> Self {
        Twist { aut, der }
    }

    /// `(id, 0)`.
    pub fn trivial() -> Self {
        Twist {
            aut: RingMap::Identity,
            der: RingMap::zero_der(RingMap::Identity),
        }
    }
}

impl RingMap {
    pub fn zero_der(aut: RingMap) -> Self {
        RingMap::ZeroDer(Box::new(aut))
    }

    pub fn inner_der(c: Scalar, aut: RingMap) -> Self {
        RingMap::InnerDer { c, aut: Box::new(aut) }
    }

    /// Canonical linear combination `Σ cₖ δₖ` twisted by `aut`.
    ///
    /// Nested combinations are flattened, equal summands merged in order of
    /// first appearance and zero summands dropped. An empty sum is the zero
    /// derivation and a single summand with coefficient one is returned as is.
    pub fn lin_comb(aut: RingMap, terms: Vec<(Scalar, RingMap)>) -> Result<Self, ScalarError> {
        let mut merged: Vec<(Scalar, RingMap)> = Vec::new();
        for (c, der) in terms {
            if der.role() != MapRole::Derivation {
                return Err(ScalarError::RoleMismatch {
                    expected: MapRole::Derivation,
                    map: der.to_string(),
                });
            }
            if !c.is_central() {
                return Err(ScalarError::NotCentral(c.to_string()));
            }
            let paired = der.paired_aut().expect("derivation has a paired automorphism");
            if !paired.equivalent_aut(&aut) {
                return Err(ScalarError::PairingMismatch {
                    der: der.to_string(),
                    aut: aut.to_string(),
                });
            }
            for (c2, base) in der.linear_terms() {
                let coeff = c.checked_mul(&c2)?;
                match merged.iter_mut().find(|(_, b)| *b == base) {
                    Some(slot) => slot.0 = slot.0.checked_add(&coeff)?,
                    None => merged.push((coeff, base)),
                }
            }
        }
        merged.retain(|(c, _)| !c.is_zero());
        Ok(match merged.len() {
            0 => RingMap::zero_der(aut),
            1 if merged[0].0.is_one() => merged.pop().expect("one term").1,
            _ => RingMap::LinComb {
                aut: Box::new(aut),
                terms: merged,
            },
        })
    }

    /// The derivation as a list of `(coefficient, base derivation)` summands.
    pub fn linear_terms(&self) -> Vec<(Scalar, RingMap)> {
        match self {
            RingMap::ZeroDer(_) => Vec::new(),
            RingMap::LinComb { terms, .. } => terms.clone(),
            RingMap::InnerDer { c, .. } => vec![(Scalar::one(c.kind()), self.clone())],
            // d/dx and q-differences only exist on ℚ(x)
            other => vec![(Scalar::one(RingKind::RationalFunction), other.clone())],
        }
    }

    pub fn role(&self) -> MapRole {
        match self {
            RingMap::Identity | RingMap::Inner(_) | RingMap::QShift(_) => MapRole::Automorphism,
            _ => MapRole::Derivation,
        }
    }

    /// The automorphism a derivation is twisted by; `None` for automorphisms.
    pub fn paired_aut(&self) -> Option<RingMap> {
        match self {
            RingMap::Identity | RingMap::Inner(_) | RingMap::QShift(_) => None,
            RingMap::ZeroDer(a) => Some((**a).clone()),
            RingMap::Ddx => Some(RingMap::Identity),
            RingMap::InnerDer { aut, .. } => Some((**aut).clone()),
            RingMap::QDiff(q) => Some(RingMap::QShift(q.clone())),
            RingMap::LinComb { aut, .. } => Some((**aut).clone()),
        }
    }

    /// True for `Identity` and for automorphisms that act as the identity.
    pub fn is_identity_aut(&self) -> bool {
        match self {
            RingMap::Identity => true,
            RingMap::Inner(c) => c.is_central(),
            RingMap::QShift(q) => q.is_one(),
            _ => false,
        }
    }

    pub fn is_zero_der(&self) -> bool {
        matches!(self, RingMap::ZeroDer(_))
    }

    /// Semantic equality of two automorphisms.
    pub fn equivalent_aut(&self, other: &RingMap) -> bool {
        if self == other || (self.is_identity_aut() && other.is_identity_aut()) {
            return true;
        }
        match (self, other) {
            // c₁ r c₁⁻¹ = c₂ r c₂⁻¹ for all r iff c₂⁻¹c₁ is central.
            (RingMap::Inner(a), RingMap::Inner(b)) => b
                .inv()
                .and_then(|bi| bi.checked_mul(a))
                .map(|q| q.is_central())
                .unwrap_or(false),
            _ => false,
        }
    }

    /// Inverse of an automorphism.
    pub fn inverse(&self) -> Result<RingMap, ScalarError> {
        match self {
            RingMap::Identity => Ok(RingMap::Identity),
            RingMap::Inner(c) => Ok(RingMap::Inner(c.inv()?)),
            RingMap::QShift(q) if q.is_zero() => Err(ScalarError::DivisionByZero),
            RingMap::QShift(q) => Ok(RingMap::QShift(q.recip())),
            other => Err(ScalarError::RoleMismatch {
                expected: MapRole::Automorphism,
                map: other.to_string(),
            }),
        }
    }

    /// Checks that the map and its parameters are meaningful on `kind`.
    pub fn validate(&self, kind: RingKind) -> Result<(), ScalarError> {
        let unsupported = || ScalarError::UnsupportedRing {
            map: self.to_string(),
            ring: kind,
        };
        match self {
            RingMap::Identity => Ok(()),
            RingMap::Inner(c) => {
                c.expect_kind(kind)?;
                if c.is_zero() {
                    Err(ScalarError::DivisionByZero)
                } else {
                    Ok(())
                }
            }
            RingMap::QShift(q) => {
                if kind != RingKind::RationalFunction {
                    Err(unsupported())
                } else if q.is_zero() {
                    Err(ScalarError::InvalidParameter("q-shift by 0 is not invertible".into()))
                } else {
                    Ok(())
                }
            }
            RingMap::ZeroDer(a) => a.validate_aut(kind),
            RingMap::Ddx => {
                if kind == RingKind::RationalFunction {
                    Ok(())
                } else {
                    Err(unsupported())
                }
            }
            RingMap::InnerDer { c, aut } => {
                c.expect_kind(kind)?;
                aut.validate_aut(kind)
            }
            RingMap::QDiff(q) => {
                if kind != RingKind::RationalFunction {
                    Err(unsupported())
                } else if q.is_zero() || q.is_one() {
                    Err(ScalarError::InvalidParameter(format!(
                        "q-difference needs q ∉ {{0, 1}}, got {q}"
                    )))
                } else {
                    Ok(())
                }
            }
            RingMap::LinComb { aut, terms } => {
                aut.validate_aut(kind)?;
                for (c, d) in terms {
                    c.expect_kind(kind)?;
                    if !c.is_central() {
                        return Err(ScalarError::NotCentral(c.to_string()));
                    }
                    d.validate(kind)?;
                }
                Ok(())
            }
        }
    }

    fn validate_aut(&self, kind: RingKind) -> Result<(), ScalarError> {
        if self.role() != MapRole::Automorphism {
            return Err(ScalarError::RoleMismatch {
                expected: MapRole::Automorphism,
                map: self.to_string(),
            });
        }
        self.validate(kind)
    }

    /// Exact image of `r`.
    pub fn apply(&self, r: &Scalar) -> Result<Scalar, ScalarError> {
        let unsupported = || ScalarError::UnsupportedRing {
            map: self.to_string(),
            ring: r.kind(),
        };
        match self {
            RingMap::Identity => Ok(r.clone()),
            RingMap::Inner(c) => {
                if c.is_central() {
                    r.expect_kind(c.kind())?;
                    return Ok(r.clone());
                }
                c.checked_mul(r)?.checked_mul(&c.inv()?)
            }
            RingMap::QShift(q) => match r {
                Scalar::RationalFunction(f) => Ok(Scalar::RationalFunction(f.scale_argument(q))),
                _ => Err(unsupported()),
            },
            RingMap::ZeroDer(_) => Ok(Scalar::zero(r.kind())),
            RingMap::Ddx => match r {
                Scalar::RationalFunction(f) => Ok(Scalar::RationalFunction(f.derivative())),
                _ => Err(unsupported()),
            },
            RingMap::InnerDer { c, aut } => {
                let left = c.checked_mul(r)?;
                let right = aut.apply(r)?.checked_mul(c)?;
                left.checked_sub(&right)
            }
            RingMap::QDiff(q) => match r {
                Scalar::RationalFunction(f) => {
                    let diff = f.scale_argument(q).sub(f);
                    let denom = RatFunc::x().scale(&(q - BigRational::one()));
                    Ok(Scalar::RationalFunction(
                        diff.mul(&denom.inv().ok_or(ScalarError::DivisionByZero)?),
                    ))
                }
                _ => Err(unsupported()),
            },
            RingMap::LinComb { terms, .. } => {
                let mut acc = Scalar::zero(r.kind());
                for (c, d) in terms {
                    acc = acc.checked_add(&c.checked_mul(&d.apply(r)?)?)?;
                }
                Ok(acc)
            }
        }
    }

    /// `self` applied `k` times.
    pub fn apply_power(&self, k: u32, r: &Scalar) -> Result<Scalar, ScalarError> {
        match (self, r) {
            (_, _) if k == 0 => return Ok(r.clone()),
            (RingMap::Identity, _) => return Ok(r.clone()),
            (RingMap::QShift(q), Scalar::RationalFunction(f)) => {
                return Ok(Scalar::RationalFunction(
                    f.scale_argument(&num::pow(q.clone(), k as usize)),
                ));
            }
            (RingMap::Inner(c), _) if !c.is_central() => {
                let ck = c.pow(k);
                return ck.checked_mul(r)?.checked_mul(&ck.inv()?);
            }
            _ => {}
        }
        let mut acc = r.clone();
        for _ in 0..k {
            acc = self.apply(&acc)?;
        }
        Ok(acc)
    }
}

impl fmt::Display for RingMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingMap::Identity => write!(f, "id"),
            RingMap::Inner(c) => write!(f, "inner({c})"),
            RingMap::QShift(q) => write!(f, "qshift({q})"),
            RingMap::ZeroDer(a) => write!(f, "zero[{a}]"),
            RingMap::Ddx => write!(f, "d/dx"),
            RingMap::InnerDer { c, aut } => write!(f, "innerder({c}; {aut})"),
            RingMap::QDiff(q) => write!(f, "qdiff({q})"),
            RingMap::LinComb { terms, .. } => {
                for (n, (c, d)) in terms.iter().enumerate() {
                    if n > 0 {
                        write!(f, " + ")?;
                    }
                    if c.is_atomic_text() {
                        write!(f, "{c}*{d}")?;
                    } else {
                        write!(f, "({c})*{d}")?;
                    }
                }
                Ok(())
            }
        }
    }
}
