//! The rational quaternion algebra (−1, −1 / ℚ).

use std::fmt;

use num::{BigRational, One, Signed, Zero};

/// `w + a·i + b·j + c·k` with rational components.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quaternion {
    pub w: BigRational,
    pub i: BigRational,
    pub j: BigRational,
    pub k: BigRational,
}

impl Quaternion {
    pub fn new(w: BigRational, i: BigRational, j: BigRational, k: BigRational) -> Self {
        Quaternion { w, i, j, k }
    }

    pub fn zero() -> Self {
        Self::real(BigRational::zero())
    }

    pub fn one() -> Self {
        Self::real(BigRational::one())
    }

    pub fn real(w: BigRational) -> Self {
        Quaternion {
            w,
            i: BigRational::zero(),
            j: BigRational::zero(),
            k: BigRational::zero(),
        }
    }

    pub fn unit_i() -> Self {
        Quaternion {
            i: BigRational::one(),
            ..Self::zero()
        }
    }

    pub fn unit_j() -> Self {
        Quaternion {
            j: BigRational::one(),
            ..Self::zero()
        }
    }

    pub fn unit_k() -> Self {
        Quaternion {
            k: BigRational::one(),
            ..Self::zero()
        }
    }

    pub fn is_zero(&self) -> bool {
        self.w.is_zero() && self.is_pure_real_free()
    }

    fn is_pure_real_free(&self) -> bool {
        self.i.is_zero() && self.j.is_zero() && self.k.is_zero()
    }

    /// Central elements of the quaternion algebra are exactly the rationals.
    pub fn is_real(&self) -> bool {
        self.is_pure_real_free()
    }

    pub fn add(&self, o: &Self) -> Self {
        Quaternion {
            w: &self.w + &o.w,
            i: &self.i + &o.i,
            j: &self.j + &o.j,
            k: &self.k + &o.k,
        }
    }

    pub fn neg(&self) -> Self {
        Quaternion {
            w: -&self.w,
            i: -&self.i,
            j: -&self.j,
            k: -&self.k,
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    /// Hamilton product; `ij = k`, `jk = i`, `ki = j`.
    pub fn mul(&self, o: &Self) -> Self {
        let (a1, b1, c1, d1) = (&self.w, &self.i, &self.j, &self.k);
        let (a2, b2, c2, d2) = (&o.w, &o.i, &o.j, &o.k);
        Quaternion {
            w: a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            i: a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            j: a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            k: a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Quaternion {
            w: &self.w * c,
            i: &self.i * c,
            j: &self.j * c,
            k: &self.k * c,
        }
    }

    pub fn conjugate(&self) -> Self {
        Quaternion {
            w: self.w.clone(),
            i: -&self.i,
            j: -&self.j,
            k: -&self.k,
        }
    }

    /// Reduced norm `w² + a² + b² + c²`.
    pub fn norm(&self) -> BigRational {
        &self.w * &self.w + &self.i * &self.i + &self.j * &self.j + &self.k * &self.k
    }

    /// Reduced trace `2w`.
    pub fn trace(&self) -> BigRational {
        &self.w + &self.w
    }

    pub fn inv(&self) -> Option<Self> {
        let n = self.norm();
        if n.is_zero() {
            None
        } else {
            Some(self.conjugate().scale(&n.recip()))
        }
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts = [(&self.w, ""), (&self.i, "i"), (&self.j, "j"), (&self.k, "k")];
        let mut first = true;
        for (c, unit) in parts {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { '-' } else { '+' })?;
            }
            first = false;
            let abs = c.abs();
            match (unit.is_empty(), abs.is_one()) {
                (true, _) => write!(f, "{abs}")?,
                (false, true) => write!(f, "{unit}")?,
                (false, false) => write!(f, "{abs}*{unit}")?,
            }
        }
        Ok(())
    }
}
