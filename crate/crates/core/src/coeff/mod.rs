//! Coefficient division rings and the twisting maps that act on them.
//!
//! Three rings are supported: ℚ, the rational-function field ℚ(x) and the
//! rational quaternions. A [`Scalar`] carries its ring as the enum variant;
//! mixing variants is an error on the checked API and a panic on the
//! operator API, which is reserved for values already validated against a
//! ring.

mod central;
mod laws;
mod map;
pub mod quaternion;
pub mod ratfunc;
pub mod sample;
pub mod upoly;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigRational, One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use central::{central_fixed_stream, is_in_fixed_field, CentralFixedStream};
pub use laws::{
    are_conjugate, automorphism_report, check_commutation, check_derivation, commutation_report, derivation_report,
    Certificate, LawReport, ScalarMap,
};
pub use map::{MapRole, RingMap, Twist};
pub use quaternion::Quaternion;
pub use ratfunc::RatFunc;
pub use sample::SampleConfig;
pub use upoly::UniPoly;

/// Which division ring the scalars of a computation live in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RingKind {
    #[serde(rename = "Q")]
    Rational,
    #[serde(rename = "Qx")]
    RationalFunction,
    #[serde(rename = "HQ")]
    Quaternion,
}

impl fmt::Display for RingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RingKind::Rational => "Q",
            RingKind::RationalFunction => "Qx",
            RingKind::Quaternion => "HQ",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("scalar variant mismatch: expected {expected}, found {found}")]
    VariantMismatch { expected: RingKind, found: RingKind },
    #[error("division by zero")]
    DivisionByZero,
    #[error("map {map} is not defined on {ring}")]
    UnsupportedRing { map: String, ring: RingKind },
    #[error("{0} is not central")]
    NotCentral(String),
    #[error("expected {expected:?}, got map {map}")]
    RoleMismatch { expected: MapRole, map: String },
    #[error("derivation {der} is not paired with automorphism {aut}")]
    PairingMismatch { der: String, aut: String },
    #[error("invalid map parameter: {0}")]
    InvalidParameter(String),
    #[error("no candidate in the built-in family passed the fixed-field checks")]
    ExhaustedCandidates,
}

/// An element of the active division ring, always in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    RationalFunction(RatFunc),
    Quaternion(Quaternion),
}

fn mismatch(a: &Scalar, b: &Scalar) -> ScalarError {
    ScalarError::VariantMismatch {
        expected: a.kind(),
        found: b.kind(),
    }
}

impl Scalar {
    pub fn kind(&self) -> RingKind {
        match self {
            Scalar::Rational(_) => RingKind::Rational,
            Scalar::RationalFunction(_) => RingKind::RationalFunction,
            Scalar::Quaternion(_) => RingKind::Quaternion,
        }
    }

    /// Embeds a rational number into `kind`.
    pub fn from_rational(kind: RingKind, q: BigRational) -> Self {
        match kind {
            RingKind::Rational => Scalar::Rational(q),
            RingKind::RationalFunction => Scalar::RationalFunction(RatFunc::constant(q)),
            RingKind::Quaternion => Scalar::Quaternion(Quaternion::real(q)),
        }
    }

    pub fn from_int(kind: RingKind, n: i64) -> Self {
        Self::from_rational(kind, BigRational::from_integer(n.into()))
    }

    pub fn zero(kind: RingKind) -> Self {
        Self::from_rational(kind, BigRational::zero())
    }

    pub fn one(kind: RingKind) -> Self {
        Self::from_rational(kind, BigRational::one())
    }

    /// The indeterminate `x` of ℚ(x).
    pub fn x() -> Self {
        Scalar::RationalFunction(RatFunc::x())
    }

    pub fn i() -> Self {
        Scalar::Quaternion(Quaternion::unit_i())
    }

    pub fn j() -> Self {
        Scalar::Quaternion(Quaternion::unit_j())
    }

    pub fn k() -> Self {
        Scalar::Quaternion(Quaternion::unit_k())
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::RationalFunction(f) => f.is_zero(),
            Scalar::Quaternion(q) => q.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        *self == Self::one(self.kind())
    }

    /// Whether the element commutes with the whole ring.
    pub fn is_central(&self) -> bool {
        match self {
            Scalar::Quaternion(q) => q.is_real(),
            _ => true,
        }
    }

    /// The value as a rational number, if it is one.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self {
            Scalar::Rational(q) => Some(q.clone()),
            Scalar::RationalFunction(f) => f.as_constant(),
            Scalar::Quaternion(q) if q.is_real() => Some(q.w.clone()),
            Scalar::Quaternion(_) => None,
        }
    }

    /// Fails unless `self` lives in `kind`.
    pub fn expect_kind(&self, kind: RingKind) -> Result<(), ScalarError> {
        if self.kind() == kind {
            Ok(())
        } else {
            Err(ScalarError::VariantMismatch {
                expected: kind,
                found: self.kind(),
            })
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::RationalFunction(a), Scalar::RationalFunction(b)) => Scalar::RationalFunction(a.add(b)),
            (Scalar::Quaternion(a), Scalar::Quaternion(b)) => Scalar::Quaternion(a.add(b)),
            _ => return Err(mismatch(self, other)),
        })
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::RationalFunction(a), Scalar::RationalFunction(b)) => Scalar::RationalFunction(a.mul(b)),
            (Scalar::Quaternion(a), Scalar::Quaternion(b)) => Scalar::Quaternion(a.mul(b)),
            _ => return Err(mismatch(self, other)),
        })
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::RationalFunction(a) => Scalar::RationalFunction(a.neg()),
            Scalar::Quaternion(a) => Scalar::Quaternion(a.neg()),
        }
    }

    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        match self {
            Scalar::Rational(a) if a.is_zero() => Err(ScalarError::DivisionByZero),
            Scalar::Rational(a) => Ok(Scalar::Rational(a.recip())),
            Scalar::RationalFunction(a) => a.inv().map(Scalar::RationalFunction).ok_or(ScalarError::DivisionByZero),
            Scalar::Quaternion(a) => a.inv().map(Scalar::Quaternion).ok_or(ScalarError::DivisionByZero),
        }
    }

    /// Multiplies by a rational number (which is central in every ring).
    pub fn scale(&self, c: &BigRational) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(a * c),
            Scalar::RationalFunction(a) => Scalar::RationalFunction(a.scale(c)),
            Scalar::Quaternion(a) => Scalar::Quaternion(a.scale(c)),
        }
    }

    pub fn pow(&self, mut e: u32) -> Scalar {
        let mut base = self.clone();
        let mut acc = Scalar::one(self.kind());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Canonical text is a single factor in the expression grammar when this
    /// returns true, so it can be juxtaposed with `*` without parentheses.
    pub(crate) fn is_atomic_text(&self) -> bool {
        let s = self.to_string();
        !s.contains(' ') && !s.contains('(')
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => write!(f, "{q}"),
            Scalar::RationalFunction(r) => write!(f, "{r}"),
            Scalar::Quaternion(q) => write!(f, "{q}"),
        }
    }
}

impl Add for &Scalar {
    type Output = Scalar;

    /// Panics on mixed variants; use [`Scalar::checked_add`] for unvalidated input.
    fn add(self, rhs: &Scalar) -> Scalar {
        self.checked_add(rhs).expect("mixed scalar variants")
    }
}

impl Sub for &Scalar {
    type Output = Scalar;

    fn sub(self, rhs: &Scalar) -> Scalar {
        self.checked_sub(rhs).expect("mixed scalar variants")
    }
}

impl Mul for &Scalar {
    type Output = Scalar;

    fn mul(self, rhs: &Scalar) -> Scalar {
        self.checked_mul(rhs).expect("mixed scalar variants")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        Scalar::neg(self)
    }
}
