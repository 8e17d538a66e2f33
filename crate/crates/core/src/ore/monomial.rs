use std::cmp::Ordering;
use std::fmt;

/// Exponent vector `(i₁, …, iₙ)` of the basis monomial `t₁^{i₁}⋯tₙ^{iₙ}`.
///
/// Ordered graded-lexicographically: first by total degree, then
/// lexicographically with `t₁ > t₂ > ⋯`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Exponents(Vec<u32>);

impl Exponents {
    pub fn new(exps: Vec<u32>) -> Self {
        Exponents(exps)
    }

    pub fn zero(n: usize) -> Self {
        Exponents(vec![0; n])
    }

    /// `e_var · k`.
    pub fn unit(n: usize, var: usize, k: u32) -> Self {
        let mut e = vec![0; n];
        e[var] = k;
        Exponents(e)
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn get(&self, var: usize) -> u32 {
        self.0[var]
    }

    pub fn add(&self, other: &Exponents) -> Exponents {
        Exponents(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn with(&self, var: usize, k: u32) -> Exponents {
        let mut e = self.0.clone();
        e[var] = k;
        Exponents(e)
    }

    /// Drops coordinate `var`.
    pub fn without(&self, var: usize) -> Exponents {
        let mut e = self.0.clone();
        e.remove(var);
        Exponents(e)
    }

    /// Componentwise `≤`.
    pub fn divides(&self, other: &Exponents) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl From<Vec<u32>> for Exponents {
    fn from(v: Vec<u32>) -> Self {
        Exponents(v)
    }
}

impl Ord for Exponents {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total().cmp(&other.total()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Exponents {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Total degree; the zero polynomial has degree −∞.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(u32),
}

impl Degree {
    pub fn finite(self) -> Option<u32> {
        match self {
            Degree::Finite(d) => Some(d),
            Degree::NegInfinity => None,
        }
    }

    /// Degree of a product bound: `−∞` absorbs.
    pub fn saturating_add(self, other: Degree) -> Degree {
        match (self, other) {
            (Degree::Finite(a), Degree::Finite(b)) => Degree::Finite(a + b),
            _ => Degree::NegInfinity,
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}
