use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::commute::monomial_times_scalar;
use super::{Degree, Exponents, OreError, OreRing};
use crate::coeff::Scalar;

/// An element of an [`OreRing`] in left normal form `Σ b_I t^I`.
#[derive(Clone, Debug)]
pub struct SkewPoly {
    ring: Arc<OreRing>,
    terms: BTreeMap<Exponents, Scalar>,
}

impl PartialEq for SkewPoly {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for SkewPoly {}

pub(crate) fn same_ring(a: &Arc<OreRing>, b: &Arc<OreRing>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// One stored term, as written in structured output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SerialTerm {
    pub exponents: Vec<u32>,
    pub coeff: String,
}

impl SkewPoly {
    pub fn zero(ring: &Arc<OreRing>) -> Self {
        SkewPoly {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: &Arc<OreRing>, r: Scalar) -> Result<Self, OreError> {
        Self::monomial(ring, Exponents::zero(ring.var_count()), r)
    }

    pub fn one(ring: &Arc<OreRing>) -> Self {
        Self::constant(ring, Scalar::one(ring.kind())).expect("unit has the ring's kind")
    }

    /// The variable `t_var`.
    pub fn var(ring: &Arc<OreRing>, var: usize) -> Result<Self, OreError> {
        if var >= ring.var_count() {
            return Err(OreError::VariableIndex(var));
        }
        Self::monomial(
            ring,
            Exponents::unit(ring.var_count(), var, 1),
            Scalar::one(ring.kind()),
        )
    }

    /// `r·t^exps`.
    pub fn monomial(ring: &Arc<OreRing>, exps: Exponents, r: Scalar) -> Result<Self, OreError> {
        Self::from_terms(ring, [(exps, r)])
    }

    /// Sums the given left terms; repeated exponents are added.
    pub fn from_terms(
        ring: &Arc<OreRing>,
        terms: impl IntoIterator<Item = (Exponents, Scalar)>,
    ) -> Result<Self, OreError> {
        let mut p = SkewPoly::zero(ring);
        for (e, c) in terms {
            if e.len() != ring.var_count() {
                return Err(OreError::ArityMismatch {
                    expected: ring.var_count(),
                    found: e.len(),
                });
            }
            c.expect_kind(ring.kind())?;
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub(crate) fn add_term(&mut self, e: Exponents, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&e) {
            Some(old) => {
                let sum = &old + &c;
                if !sum.is_zero() {
                    self.terms.insert(e, sum);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn ring(&self) -> &Arc<OreRing> {
        &self.ring
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponents, &Scalar)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e: &Exponents) -> Option<&Scalar> {
        self.terms.get(e)
    }

    /// Coefficient at `e`, zero when absent.
    pub fn coeff_or_zero(&self, e: &[u32]) -> Scalar {
        self.terms
            .get(&Exponents::new(e.to_vec()))
            .cloned()
            .unwrap_or_else(|| Scalar::zero(self.ring.kind()))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The scalar value of a constant polynomial.
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero(self.ring.kind())),
            1 => {
                let (e, c) = self.terms.iter().next()?;
                (e.total() == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn total_degree(&self) -> Degree {
        self.terms
            .keys()
            .next_back()
            .map_or(Degree::NegInfinity, |e| Degree::Finite(e.total()))
    }

    /// Largest exponent of `t_var`, or `None` for the zero polynomial.
    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|e| e.get(var)).max()
    }

    /// Groups terms by the exponent of `t_var`: `self = Σ_k c_k·t_var^k` with
    /// each `c_k` free of `t_var`.
    pub fn collect_in(&self, var: usize) -> BTreeMap<u32, SkewPoly> {
        let mut out: BTreeMap<u32, SkewPoly> = BTreeMap::new();
        for (e, c) in &self.terms {
            out.entry(e.get(var))
                .or_insert_with(|| SkewPoly::zero(&self.ring))
                .terms
                .insert(e.with(var, 0), c.clone());
        }
        out
    }

    fn check_ring(&self, other: &SkewPoly) -> Result<(), OreError> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(OreError::RingMismatch)
        }
    }

    pub fn add(&self, other: &SkewPoly) -> Result<SkewPoly, OreError> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> SkewPoly {
        SkewPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &SkewPoly) -> Result<SkewPoly, OreError> {
        self.add(&other.neg())
    }

    /// `c·self`.
    pub fn left_scale(&self, c: &Scalar) -> Result<SkewPoly, OreError> {
        c.expect_kind(self.ring.kind())?;
        let mut out = SkewPoly::zero(&self.ring);
        for (e, b) in &self.terms {
            out.add_term(e.clone(), c * b);
        }
        Ok(out)
    }

    /// The ring product, distributing each term `b_J t^J` of `other` through
    /// `self` by commuting `b_J` left past every monomial of `self`.
    pub fn mul(&self, other: &SkewPoly) -> Result<SkewPoly, OreError> {
        self.check_ring(other)?;
        self.ring.require_compatible()?;
        self.mul_unchecked(other)
    }

    pub(crate) fn mul_unchecked(&self, other: &SkewPoly) -> Result<SkewPoly, OreError> {
        let mut out = SkewPoly::zero(&self.ring);
        for (j, b) in &other.terms {
            for (i, a) in &self.terms {
                let moved = monomial_times_scalar(&self.ring, i, b)?;
                for (k, c) in moved.terms {
                    out.add_term(k.add(j), a * &c);
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, mut e: u32) -> Result<SkewPoly, OreError> {
        let mut base = self.clone();
        let mut acc = SkewPoly::one(&self.ring);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// The same coefficient data read in another ring with the same kind and
    /// number of variables.
    pub fn reinterpret(&self, ring: &Arc<OreRing>) -> Result<SkewPoly, OreError> {
        if ring.kind() != self.ring.kind() {
            return Err(OreError::RingMismatch);
        }
        if ring.var_count() != self.ring.var_count() {
            return Err(OreError::ArityMismatch {
                expected: ring.var_count(),
                found: self.ring.var_count(),
            });
        }
        Ok(SkewPoly {
            ring: ring.clone(),
            terms: self.terms.clone(),
        })
    }

    /// Moves the data into a ring with `ring.var_count()` variables by
    /// padding exponent vectors with zeros or dropping trailing coordinates.
    /// Fails if a dropped coordinate is used.
    pub fn restrict_or_extend(&self, ring: &Arc<OreRing>) -> Result<SkewPoly, OreError> {
        if ring.kind() != self.ring.kind() {
            return Err(OreError::RingMismatch);
        }
        let n = ring.var_count();
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let s = e.as_slice();
            if s.iter().skip(n).any(|&k| k > 0) {
                return Err(OreError::VariableIndex(n));
            }
            let mut v: Vec<u32> = s.iter().take(n).copied().collect();
            v.resize(n, 0);
            terms.insert(Exponents::new(v), c.clone());
        }
        Ok(SkewPoly {
            ring: ring.clone(),
            terms,
        })
    }

    pub fn to_serial(&self) -> Vec<SerialTerm> {
        self.terms
            .iter()
            .rev()
            .map(|(e, c)| SerialTerm {
                exponents: e.as_slice().to_vec(),
                coeff: c.to_string(),
            })
            .collect()
    }
}
