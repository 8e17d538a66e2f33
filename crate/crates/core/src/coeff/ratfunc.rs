//! Elements of ℚ(x), kept as reduced fractions with a monic denominator.

use std::fmt;

use num::{BigRational, One, Zero};

use super::upoly::UniPoly;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: UniPoly,
    den: UniPoly,
}

impl RatFunc {
    /// Reduces `num / den`. Returns `None` when `den` is zero.
    pub fn new(num: UniPoly, den: UniPoly) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        if num.is_zero() {
            return Some(Self::zero());
        }
        if den.degree() == Some(0) {
            return Some(Self::normalized(num, den));
        }
        let g = num.gcd(&den);
        Some(Self::divided(num, den, &g))
    }

    fn divided(num: UniPoly, den: UniPoly, g: &UniPoly) -> Self {
        if g.degree().is_none_or(|d| d == 0) {
            Self::normalized(num, den)
        } else {
            Self::normalized(num.div_rem(g).0, den.div_rem(g).0)
        }
    }

    /// `num / den` for coprime `num` and `den`.
    fn normalized(num: UniPoly, den: UniPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let (lc, den) = den.monic();
        let num = if lc.is_one() { num } else { num.scale(&lc.recip()) };
        RatFunc { num, den }
    }

    pub fn zero() -> Self {
        RatFunc {
            num: UniPoly::zero(),
            den: UniPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        RatFunc {
            num: UniPoly::constant(c),
            den: UniPoly::one(),
        }
    }

    pub fn x() -> Self {
        Self::from_poly(UniPoly::x())
    }

    pub fn from_poly(num: UniPoly) -> Self {
        RatFunc {
            num,
            den: UniPoly::one(),
        }
    }

    pub fn numerator(&self) -> &UniPoly {
        &self.num
    }

    pub fn denominator(&self) -> &UniPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The value if this is a constant of ℚ.
    pub fn as_constant(&self) -> Option<BigRational> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            return Self::new(self.num.add(&other.num), self.den.clone()).expect("nonzero denominator");
        }
        // With g = gcd(d₁, d₂), any common factor of the new numerator and
        // denominator divides g.
        let g = self.den.gcd(&other.den);
        if g.is_one() {
            let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
            return Self::normalized(num, self.den.mul(&other.den));
        }
        let d1 = self.den.div_rem(&g).0;
        let d2 = other.den.div_rem(&g).0;
        let num = self.num.mul(&d2).add(&other.num.mul(&d1));
        let h = num.gcd(&g);
        Self::divided(num, d1.mul(&other.den), &h)
    }

    pub fn neg(&self) -> Self {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let (n1, d2) = cancel(&self.num, &other.den);
        let (n2, d1) = cancel(&other.num, &self.den);
        Self::normalized(n1.mul(&n2), d1.mul(&d2))
    }

    pub fn inv(&self) -> Option<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// d/dx.
    pub fn derivative(&self) -> Self {
        let num = self
            .num
            .derivative()
            .mul(&self.den)
            .sub(&self.num.mul(&self.den.derivative()));
        Self::new(num, self.den.mul(&self.den)).expect("nonzero denominator")
    }

    /// `f(x) ↦ f(qx)`; `q` must be nonzero.
    pub fn scale_argument(&self, q: &BigRational) -> Self {
        // Scaling the argument preserves coprimality.
        Self::normalized(self.num.scale_argument(q), self.den.scale_argument(q))
    }
}

fn cancel(a: &UniPoly, b: &UniPoly) -> (UniPoly, UniPoly) {
    if b.degree() == Some(0) || a.degree() == Some(0) {
        return (a.clone(), b.clone());
    }
    let g = a.gcd(b);
    if g.is_one() {
        (a.clone(), b.clone())
    } else {
        (a.div_rem(&g).0, b.div_rem(&g).0)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        if self.num.term_count() > 1 {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        if self.den.term_count() > 1 {
            write!(f, "/({})", self.den)
        } else {
            write!(f, "/{}", self.den)
        }
    }
}
