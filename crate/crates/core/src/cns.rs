//! Non-vanishing points on grids of pairwise non-conjugate elements, and the
//! conjugacy-class bound for roots of left polynomials.
//!
//! Substitution here is the formal left sum `Σ b_I a₁^{i₁}⋯aₙ^{iₙ}`; twists
//! play no role and the map is not multiplicative.

use num::BigRational;
use serde::Serialize;
use thiserror::Error;

use crate::coeff::{are_conjugate, RingKind, Scalar, ScalarError};
use crate::ore::{OreError, SkewPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CnsError {
    #[error(transparent)]
    Ore(#[from] OreError),
    #[error("no point with nonzero value; the grid hypotheses must have been violated")]
    NoWitnessFound,
    #[error("evaluation sets fail the hypotheses: {0}")]
    InvalidSets(String),
    #[error("{0} is not a root")]
    NotARoot(String),
    #[error("roots fall into {classes} conjugacy classes, more than the degree {degree}")]
    BoundViolated { classes: usize, degree: u32 },
}

impl From<ScalarError> for CnsError {
    fn from(e: ScalarError) -> Self {
        CnsError::Ore(e.into())
    }
}

/// An ordered finite set of scalars with its pairwise conjugacy record.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvaluationSet {
    elements: Vec<Scalar>,
    conjugate_pairs: Vec<(usize, usize)>,
}

impl EvaluationSet {
    pub fn new(elements: Vec<Scalar>) -> Result<Self, CnsError> {
        let mut conjugate_pairs = Vec::new();
        for (a, x) in elements.iter().enumerate() {
            for (b, y) in elements.iter().enumerate().skip(a + 1) {
                if are_conjugate(x, y)? {
                    conjugate_pairs.push((a, b));
                }
            }
        }
        Ok(EvaluationSet {
            elements,
            conjugate_pairs,
        })
    }

    pub fn elements(&self) -> &[Scalar] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Index pairs of conjugate (including equal) elements.
    pub fn conjugate_pairs(&self) -> &[(usize, usize)] {
        &self.conjugate_pairs
    }

    pub fn is_non_conjugate(&self) -> bool {
        self.conjugate_pairs.is_empty()
    }
}

/// `Σ b_I a₁^{i₁}⋯aₙ^{iₙ}` by plain scalar arithmetic.
pub fn formal_substitute(f: &SkewPoly, point: &[Scalar]) -> Result<Scalar, CnsError> {
    let ring = f.ring();
    if point.len() != ring.var_count() {
        return Err(OreError::ArityMismatch {
            expected: ring.var_count(),
            found: point.len(),
        }
        .into());
    }
    for a in point {
        a.expect_kind(ring.kind())?;
    }
    let mut acc = Scalar::zero(ring.kind());
    for (e, b) in f.terms() {
        let mut term = b.clone();
        for (a, &k) in point.iter().zip(e.as_slice()) {
            if k > 0 {
                term = &term * &a.pow(k);
            }
        }
        acc = &acc + &term;
    }
    Ok(acc)
}

fn set_problem(sets: &[EvaluationSet], m: u32) -> Option<String> {
    for (n, s) in sets.iter().enumerate() {
        if let Some((a, b)) = s.conjugate_pairs.first() {
            return Some(format!(
                "set {n}: {} and {} are conjugate",
                s.elements[*a], s.elements[*b]
            ));
        }
        if s.len() <= m as usize {
            return Some(format!("set {n} has {} elements, needs more than {m}", s.len()));
        }
    }
    None
}

/// Every set is pairwise non-conjugate and has more than `m` elements.
pub fn validate_sets(sets: &[EvaluationSet], m: u32) -> bool {
    set_problem(sets, m).is_none()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub point: Vec<Scalar>,
    pub value: Scalar,
    /// Points examined, including the witness.
    pub scanned: usize,
}

/// The first point of `A₁ × ⋯ × Aₙ` in lexicographic order (last coordinate
/// fastest) at which `f` does not vanish.
pub fn cns_witness(f: &SkewPoly, sets: &[EvaluationSet]) -> Result<Witness, CnsError> {
    let degree = f.total_degree().finite().ok_or(OreError::ZeroPolynomial)?;
    let n = f.ring().var_count();
    if sets.len() != n {
        return Err(OreError::ArityMismatch {
            expected: n,
            found: sets.len(),
        }
        .into());
    }
    if let Some(problem) = set_problem(sets, degree) {
        return Err(CnsError::InvalidSets(problem));
    }
    let mut index = vec![0usize; n];
    let mut scanned = 0;
    loop {
        let point: Vec<Scalar> = index.iter().zip(sets).map(|(&i, s)| s.elements[i].clone()).collect();
        scanned += 1;
        let value = formal_substitute(f, &point)?;
        if !value.is_zero() {
            return Ok(Witness { point, value, scanned });
        }
        let mut pos = n;
        loop {
            if pos == 0 {
                return Err(CnsError::NoWitnessFound);
            }
            pos -= 1;
            index[pos] += 1;
            if index[pos] < sets[pos].len() {
                break;
            }
            index[pos] = 0;
        }
    }
}

/// One conjugacy class of roots, labelled by reduced trace and norm when the
/// coefficients are quaternions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootClass {
    #[serde(serialize_with = "as_strings")]
    pub members: Vec<Scalar>,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "opt_as_string")]
    pub trace: Option<BigRational>,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "opt_as_string")]
    pub norm: Option<BigRational>,
}

fn as_strings<S: serde::Serializer>(v: &[Scalar], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

fn opt_as_string<S: serde::Serializer>(v: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(q) => s.serialize_str(&q.to_string()),
        None => s.serialize_none(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GordonMotzkinReport {
    pub degree: u32,
    pub classes: Vec<RootClass>,
}

/// Verifies that each supplied element is a root of the univariate `f`,
/// groups them by conjugacy, and checks that at most `deg f` classes occur.
/// The twists of `f`'s ring are ignored.
pub fn gordon_motzkin_check(f: &SkewPoly, roots: &[Scalar]) -> Result<GordonMotzkinReport, CnsError> {
    let ring = f.ring();
    if ring.var_count() != 1 {
        return Err(OreError::ArityMismatch {
            expected: 1,
            found: ring.var_count(),
        }
        .into());
    }
    let degree = f.total_degree().finite().ok_or(OreError::ZeroPolynomial)?;
    let mut classes: Vec<RootClass> = Vec::new();
    for r in roots {
        if !formal_substitute(f, std::slice::from_ref(r))?.is_zero() {
            return Err(CnsError::NotARoot(r.to_string()));
        }
        let mut placed = false;
        for class in classes.iter_mut() {
            if are_conjugate(&class.members[0], r)? {
                if !class.members.contains(r) {
                    class.members.push(r.clone());
                }
                placed = true;
                break;
            }
        }
        if !placed {
            let (trace, norm) = match r {
                Scalar::Quaternion(q) if ring.kind() == RingKind::Quaternion => (Some(q.trace()), Some(q.norm())),
                _ => (None, None),
            };
            classes.push(RootClass {
                members: vec![r.clone()],
                trace,
                norm,
            });
        }
    }
    if classes.len() > degree as usize {
        return Err(CnsError::BoundViolated {
            classes: classes.len(),
            degree,
        });
    }
    Ok(GordonMotzkinReport { degree, classes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ore::{Exponents, OreRing};

    fn h(n: i64) -> Scalar {
        Scalar::from_int(RingKind::Quaternion, n)
    }

    fn poly(kind: RingKind, names: &[&str], terms: &[(&[u32], Scalar)]) -> SkewPoly {
        let names: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        let ring = OreRing::trivial(kind, &names).unwrap();
        SkewPoly::from_terms(
            &ring,
            terms.iter().map(|(e, c)| (Exponents::new(e.to_vec()), c.clone())),
        )
        .unwrap()
    }

    fn set(v: Vec<Scalar>) -> EvaluationSet {
        EvaluationSet::new(v).unwrap()
    }

    #[test]
    fn substitution_examples() {
        let f = poly(RingKind::Quaternion, &["t"], &[(&[2], h(1)), (&[0], h(1))]);
        assert!(formal_substitute(&f, &[Scalar::i()]).unwrap().is_zero());
        assert_eq!(formal_substitute(&f, &[h(0)]).unwrap(), h(1));
        let g = poly(RingKind::Quaternion, &["t1", "t2"], &[(&[1, 1], Scalar::i())]);
        assert_eq!(formal_substitute(&g, &[Scalar::j(), Scalar::k()]).unwrap(), h(-1));
        assert!(matches!(
            formal_substitute(&g, &[h(1)]),
            Err(CnsError::Ore(OreError::ArityMismatch { .. }))
        ));
    }

    #[test]
    fn set_validation() {
        assert!(validate_sets(&[set(vec![h(0), h(1), Scalar::i()])], 2));
        assert!(!validate_sets(&[set(vec![Scalar::i(), Scalar::j()])], 1));
        assert!(!validate_sets(&[set(vec![h(0), h(1)])], 2));
    }

    #[test]
    fn witnesses() {
        let f = poly(RingKind::Quaternion, &["t"], &[(&[2], h(1)), (&[0], h(1))]);
        let w = cns_witness(&f, &[set(vec![h(0), h(1), Scalar::i()])]).unwrap();
        assert_eq!((w.point, w.value, w.scanned), (vec![h(0)], h(1), 1));

        let q = |n: i64| Scalar::from_int(RingKind::Rational, n);
        let f = poly(RingKind::Rational, &["t1", "t2"], &[(&[1, 1], q(1))]);
        let a = set(vec![q(0), q(1), q(2)]);
        let w = cns_witness(&f, &[a.clone(), a]).unwrap();
        assert_eq!(w.point, vec![q(1), q(1)]);
        assert_eq!(w.scanned, 5);

        let f = poly(RingKind::Rational, &["t"], &[(&[2], q(1)), (&[1], q(-3)), (&[0], q(2))]);
        let w = cns_witness(&f, &[set(vec![q(0), q(1), q(2), q(3)])]).unwrap();
        assert_eq!((w.point, w.value), (vec![q(0)], q(2)));
    }

    #[test]
    fn witness_refuses_bad_sets() {
        let f = poly(RingKind::Quaternion, &["t"], &[(&[2], h(1)), (&[0], h(1))]);
        let err = cns_witness(&f, &[set(vec![Scalar::i(), Scalar::j(), Scalar::k()])]);
        assert!(matches!(err, Err(CnsError::InvalidSets(_))));
    }

    #[test]
    fn gordon_motzkin_examples() {
        let f = poly(RingKind::Quaternion, &["x"], &[(&[2], h(1)), (&[0], h(1))]);
        let report = gordon_motzkin_check(&f, &[Scalar::i(), Scalar::j(), Scalar::k()]).unwrap();
        assert_eq!(report.classes.len(), 1);
        assert_eq!(report.classes[0].trace, Some(BigRational::from_integer(0.into())));
        assert_eq!(report.classes[0].norm, Some(BigRational::from_integer(1.into())));
        assert_eq!(
            gordon_motzkin_check(&f, &[Scalar::i(), h(1)]),
            Err(CnsError::NotARoot("1".into()))
        );

        let g = poly(
            RingKind::Quaternion,
            &["x"],
            &[(&[2], h(1)), (&[1], h(-3)), (&[0], h(2))],
        );
        assert_eq!(gordon_motzkin_check(&g, &[h(1), h(2)]).unwrap().classes.len(), 2);
    }
}
