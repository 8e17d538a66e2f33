#![allow(dead_code)]

use std::sync::Arc;

use ore_algebra::coeff::sample::{random_nonzero_scalar, random_scalar};
use ore_algebra::coeff::{RingKind, RingMap, Scalar};
use ore_algebra::ore::{Exponents, Flavor, OreRing, SkewPoly, Variable};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn q(n: i64) -> Scalar {
    Scalar::from_int(RingKind::Rational, n)
}

pub fn hq(a: i64, b: i64, c: i64, d: i64) -> Scalar {
    let [a, b, c, d] = [a, b, c, d].map(|n| Scalar::from_int(RingKind::Quaternion, n));
    &(&(&a + &(&b * &Scalar::i())) + &(&c * &Scalar::j())) + &(&d * &Scalar::k())
}

pub fn rat(kind: RingKind, n: i64, d: i64) -> Scalar {
    Scalar::from_rational(kind, num::BigRational::new(n.into(), d.into()))
}

pub fn weyl() -> Arc<OreRing> {
    OreRing::commuting(
        RingKind::RationalFunction,
        vec![Variable::new("t", RingMap::Identity, RingMap::Ddx)],
    )
    .unwrap()
}

/// `(id, d/dx)` twice and a plain commuting variable.
pub fn qx_three() -> Arc<OreRing> {
    OreRing::commuting(
        RingKind::RationalFunction,
        vec![
            Variable::new("x1", RingMap::Identity, RingMap::Ddx),
            Variable::new("x2", RingMap::Identity, RingMap::Ddx),
            Variable::new("x3", RingMap::Identity, RingMap::zero_der(RingMap::Identity)),
        ],
    )
    .unwrap()
}

/// The q-Weyl algebra: `t·f(x) = f(2x)·t + (f(2x) − f(x))/x`.
pub fn q_weyl() -> Arc<OreRing> {
    let two = num::BigRational::from_integer(2.into());
    OreRing::commuting(
        RingKind::RationalFunction,
        vec![Variable::new("t", RingMap::QShift(two.clone()), RingMap::QDiff(two))],
    )
    .unwrap()
}

/// Two variables twisted by `x ↦ 2x`, with the inner σ-derivations
/// `f ↦ c·(f − σ(f))` for `c = 1, 3`.
pub fn qx_shift() -> Arc<OreRing> {
    let aut = RingMap::QShift(num::BigRational::from_integer(2.into()));
    let der = |c| RingMap::inner_der(Scalar::from_int(RingKind::RationalFunction, c), aut.clone());
    OreRing::commuting(
        RingKind::RationalFunction,
        vec![
            Variable::new("s", aut.clone(), der(1)),
            Variable::new("t", aut.clone(), der(3)),
        ],
    )
    .unwrap()
}

pub fn q_three() -> Arc<OreRing> {
    OreRing::trivial(RingKind::Rational, &names(3)).unwrap()
}

/// Inner twists by `i`, `j`, `k`, two of them with inner derivations.
pub fn hq_tower() -> Arc<OreRing> {
    OreRing::new(
        RingKind::Quaternion,
        vec![
            Variable::new(
                "t1",
                RingMap::Inner(Scalar::i()),
                RingMap::inner_der(hq(1, 1, 0, 0), RingMap::Inner(Scalar::i())),
            ),
            Variable::new(
                "t2",
                RingMap::Inner(Scalar::j()),
                RingMap::zero_der(RingMap::Inner(Scalar::j())),
            ),
            Variable::new(
                "t3",
                RingMap::Inner(Scalar::k()),
                RingMap::inner_der(hq(1, 0, 0, 1), RingMap::Inner(Scalar::k())),
            ),
        ],
        Flavor::Tower,
    )
    .unwrap()
}

/// `vars` variables twisted by conjugation with `i`, with inner derivations
/// by `1 + i`, `2 + i`, ... and a zero derivation on the last one.
pub fn hq_shared(vars: usize) -> Arc<OreRing> {
    let aut = RingMap::Inner(Scalar::i());
    let list = (0..vars)
        .map(|n| {
            let der = if n + 1 == vars && vars > 1 {
                RingMap::zero_der(aut.clone())
            } else {
                RingMap::inner_der(hq(n as i64 + 1, 1, 0, 0), aut.clone())
            };
            Variable::new(format!("y{}", n + 1), aut.clone(), der)
        })
        .collect();
    OreRing::commuting(RingKind::Quaternion, list).unwrap()
}

pub fn hq_plain(vars: usize) -> Arc<OreRing> {
    OreRing::trivial(RingKind::Quaternion, &names(vars)).unwrap()
}

pub fn names(n: usize) -> Vec<String> {
    (1..=n).map(|k| format!("x{k}")).collect()
}

pub fn random_exponents<R: Rng>(n: usize, max_degree: u32, rng: &mut R) -> Exponents {
    let total = rng.gen_range(0..=max_degree);
    let mut e = vec![0u32; n];
    if n > 0 {
        for _ in 0..total {
            e[rng.gen_range(0..n)] += 1;
        }
    }
    Exponents::new(e)
}

/// Up to `terms` random terms of total degree at most `max_degree`.
pub fn random_poly<R: Rng>(ring: &Arc<OreRing>, max_degree: u32, terms: usize, rng: &mut R) -> SkewPoly {
    let n = ring.var_count();
    let count = rng.gen_range(0..=terms);
    SkewPoly::from_terms(
        ring,
        (0..count).map(|_| (random_exponents(n, max_degree, rng), random_scalar(ring.kind(), rng))),
    )
    .unwrap()
}

/// A polynomial of total degree exactly `degree`.
pub fn random_poly_of_degree<R: Rng>(ring: &Arc<OreRing>, degree: u32, terms: usize, rng: &mut R) -> SkewPoly {
    let n = ring.var_count();
    loop {
        let mut top = vec![0u32; n];
        for _ in 0..degree {
            top[rng.gen_range(0..n)] += 1;
        }
        let lead = SkewPoly::monomial(ring, Exponents::new(top), random_nonzero_scalar(ring.kind(), rng)).unwrap();
        let p = lead.add(&random_poly(ring, degree, terms, rng)).unwrap();
        if p.total_degree().finite() == Some(degree) {
            return p;
        }
    }
}

#[derive(Clone, Debug)]
pub enum Letter {
    Coeff(Box<Scalar>),
    Var(usize),
}

/// Normal form of a word in scalars and variables, built by pushing each
/// letter in from the left with the single rule `t·c = ω(c)t + δ(c)`.
pub fn word_normal_form(ring: &Arc<OreRing>, word: &[Letter]) -> SkewPoly {
    let mut p = SkewPoly::one(ring);
    for letter in word.iter().rev() {
        p = match letter {
            Letter::Coeff(c) => p.left_scale(c).unwrap(),
            Letter::Var(v) => {
                let tw = ring.twist(*v);
                let mut out = Vec::new();
                for (e, c) in p.terms() {
                    let mut up = e.as_slice().to_vec();
                    up[*v] += 1;
                    out.push((Exponents::new(up), tw.aut.apply(c).unwrap()));
                    out.push((e.clone(), tw.der.apply(c).unwrap()));
                }
                SkewPoly::from_terms(ring, out).unwrap()
            }
        };
    }
    p
}

/// Word for `r·t^e`.
pub fn monomial_word(e: &[u32], r: &Scalar) -> Vec<Letter> {
    let mut w = vec![Letter::Coeff(Box::new(r.clone()))];
    for (v, &k) in e.iter().enumerate() {
        w.extend((0..k).map(|_| Letter::Var(v)));
    }
    w
}

/// Normal form of the product `f·g` computed term by term as words.
pub fn word_product(f: &SkewPoly, g: &SkewPoly) -> SkewPoly {
    let ring = f.ring();
    let mut acc = SkewPoly::zero(ring);
    for (e, a) in f.terms() {
        for (d, b) in g.terms() {
            let mut w = monomial_word(e.as_slice(), a);
            w.extend(monomial_word(d.as_slice(), b));
            acc = acc.add(&word_normal_form(ring, &w)).unwrap();
        }
    }
    acc
}

/// Non-conjugate quaternions drawn from a fixed pool, at most `size` of them.
pub fn non_conjugate_set<R: Rng>(size: usize, rng: &mut R) -> Vec<Scalar> {
    let mut pool = vec![
        hq(0, 0, 0, 0),
        hq(1, 0, 0, 0),
        hq(2, 0, 0, 0),
        hq(3, 0, 0, 0),
        hq(4, 0, 0, 0),
        hq(0, 1, 0, 0),
        hq(1, 1, 0, 0),
        hq(2, 1, 0, 0),
        hq(1, 2, 0, 0),
        hq(0, 0, 1, 0),
        hq(1, 0, 1, 0),
        hq(0, 1, 1, 0),
        hq(2, 0, 0, 1),
        hq(1, 1, 1, 1),
        hq(-1, 0, 2, 0),
    ];
    pool.shuffle(rng);
    let mut out: Vec<Scalar> = Vec::new();
    for c in pool {
        if out.len() == size {
            break;
        }
        if out.iter().all(|d| !ore_algebra::coeff::are_conjugate(&c, d).unwrap()) {
            out.push(c);
        }
    }
    out
}
