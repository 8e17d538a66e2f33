//! Skew polynomial rings over a coefficient division ring.
//!
//! A ring is an ordered list of variables, each carrying a twist `(ω, δ)`
//! acting on the coefficients. Variables commute with each other; a
//! coefficient moves past a variable by `t·r = ω(r)·t + δ(r)`. Every element
//! has a unique normal form `Σ b_I t₁^{i₁}⋯tₙ^{iₙ}` with coefficients on the
//! left.
//!
//! Both flavors share this normal form. A commuting-variable ring is read as
//! the tower obtained by letting each `ωᵢ` fix and each `δᵢ` kill the
//! earlier variables; that tower is well defined exactly when the twists of
//! different variables commute, which the ring's certificate records.

mod commute;
mod format;
mod monomial;
mod poly;

use std::sync::Arc;

use thiserror::Error;

use crate::coeff::{
    automorphism_report, commutation_report, derivation_report, Certificate, LawReport, MapRole, RingKind, RingMap,
    SampleConfig, ScalarError, Twist,
};

pub use commute::{
    convert_commuting_to_tower, leading_form, monomial_times_scalar, scalar_var_power, var_power_times_scalar,
};
pub use monomial::{Degree, Exponents};
pub use poly::{SerialTerm, SkewPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OreError {
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("operands belong to different rings")]
    RingMismatch,
    #[error("twists are not compatible: {}", .0.join("; "))]
    IncompatibleMaps(Vec<String>),
    #[error("duplicate variable name {0:?}")]
    DuplicateVariable(String),
    #[error("invalid variable name {0:?}")]
    InvalidVariableName(String),
    #[error("expected {expected} variables, got {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("variable index {0} out of range")]
    VariableIndex(usize),
    #[error("operation needs a nonzero polynomial")]
    ZeroPolynomial,
    #[error("operation needs a {0:?} ring")]
    FlavorMismatch(Flavor),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Flavor {
    /// Iterated extension `D[t₁;ω₁,δ₁]⋯[tₙ;ωₙ,δₙ]`.
    Tower,
    /// `D[t₁,…,tₙ; (ω₁,δ₁),…,(ωₙ,δₙ)]` with commuting variables.
    Commuting,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Variable {
    pub name: String,
    pub twist: Twist,
}

impl Variable {
    pub fn new(name: impl Into<String>, aut: RingMap, der: RingMap) -> Self {
        Variable {
            name: name.into(),
            twist: Twist::new(aut, der),
        }
    }
}

/// Names that the expression grammar reserves as scalar literals in `kind`.
pub fn reserved_names(kind: RingKind) -> &'static [&'static str] {
    match kind {
        RingKind::Rational => &[],
        RingKind::RationalFunction => &["x"],
        RingKind::Quaternion => &["i", "j", "k"],
    }
}

#[derive(Clone, Debug)]
pub struct OreRing {
    kind: RingKind,
    vars: Vec<Variable>,
    flavor: Flavor,
    certificate: Certificate,
    sampling: SampleConfig,
}

impl PartialEq for OreRing {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind && self.flavor == other.flavor && self.vars == other.vars
    }
}

impl Eq for OreRing {}

impl OreRing {
    pub fn new(kind: RingKind, vars: Vec<Variable>, flavor: Flavor) -> Result<Arc<Self>, OreError> {
        Self::with_sampling(kind, vars, flavor, SampleConfig::default())
    }

    pub fn commuting(kind: RingKind, vars: Vec<Variable>) -> Result<Arc<Self>, OreError> {
        Self::new(kind, vars, Flavor::Commuting)
    }

    /// Validates names and maps, then certifies the twists.
    pub fn with_sampling(
        kind: RingKind,
        vars: Vec<Variable>,
        flavor: Flavor,
        sampling: SampleConfig,
    ) -> Result<Arc<Self>, OreError> {
        for (n, v) in vars.iter().enumerate() {
            let valid_ident = v
                .name
                .chars()
                .next()
                .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && v.name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid_ident || reserved_names(kind).contains(&v.name.as_str()) {
                return Err(OreError::InvalidVariableName(v.name.clone()));
            }
            if vars[..n].iter().any(|w| w.name == v.name) {
                return Err(OreError::DuplicateVariable(v.name.clone()));
            }
            for (map, role) in [
                (&v.twist.aut, MapRole::Automorphism),
                (&v.twist.der, MapRole::Derivation),
            ] {
                if map.role() != role {
                    return Err(ScalarError::RoleMismatch {
                        expected: role,
                        map: map.to_string(),
                    }
                    .into());
                }
                map.validate(kind)?;
            }
        }
        let certificate = certify(kind, &vars, &sampling);
        Ok(Arc::new(OreRing {
            kind,
            vars,
            flavor,
            certificate,
            sampling,
        }))
    }

    /// A ring whose variables have trivial twists `(id, 0)`: ordinary
    /// polynomials with left coefficients.
    pub fn trivial(kind: RingKind, names: &[String]) -> Result<Arc<Self>, OreError> {
        let vars = names
            .iter()
            .map(|n| Variable {
                name: n.clone(),
                twist: Twist::trivial(),
            })
            .collect();
        Self::new(kind, vars, Flavor::Commuting)
    }

    pub fn kind(&self) -> RingKind {
        self.kind
    }

    pub fn vars(&self) -> &[Variable] {
        &self.vars
    }

    pub fn var_count(&self) -> usize {
        self.vars.len()
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn certificate(&self) -> &Certificate {
        &self.certificate
    }

    pub fn sampling(&self) -> &SampleConfig {
        &self.sampling
    }

    pub fn twist(&self, var: usize) -> &Twist {
        &self.vars[var].twist
    }

    pub fn twists(&self) -> Vec<Twist> {
        self.vars.iter().map(|v| v.twist.clone()).collect()
    }

    pub fn names(&self) -> Vec<String> {
        self.vars.iter().map(|v| v.name.clone()).collect()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v.name == name)
    }

    pub fn is_compatible(&self) -> bool {
        self.certificate.passed()
    }

    /// Fails with the list of failing laws unless the certificate passes.
    pub fn require_compatible(&self) -> Result<(), OreError> {
        if self.is_compatible() {
            Ok(())
        } else {
            Err(OreError::IncompatibleMaps(
                self.certificate.failed().map(|c| c.law.clone()).collect(),
            ))
        }
    }

    /// Every automorphism and derivation attached to a variable.
    pub fn all_maps(&self) -> Vec<RingMap> {
        self.vars
            .iter()
            .flat_map(|v| [v.twist.aut.clone(), v.twist.der.clone()])
            .collect()
    }

    /// The common automorphism, when all variables share one.
    pub fn shared_aut(&self) -> Option<RingMap> {
        let first = &self.vars.first()?.twist.aut;
        self.vars
            .iter()
            .all(|v| v.twist.aut.equivalent_aut(first))
            .then(|| first.clone())
    }

    /// Same names and flavor, new twists.
    pub fn with_twists(&self, twists: Vec<Twist>) -> Result<Arc<Self>, OreError> {
        if twists.len() != self.vars.len() {
            return Err(OreError::ArityMismatch {
                expected: self.vars.len(),
                found: twists.len(),
            });
        }
        let vars = self
            .vars
            .iter()
            .zip(twists)
            .map(|(v, twist)| Variable {
                name: v.name.clone(),
                twist,
            })
            .collect();
        Self::with_sampling(self.kind, vars, self.flavor, self.sampling)
    }

    /// The subring on the first `n` variables.
    pub fn prefix(&self, n: usize) -> Result<Arc<Self>, OreError> {
        if n > self.vars.len() {
            return Err(OreError::VariableIndex(n));
        }
        Self::with_sampling(self.kind, self.vars[..n].to_vec(), self.flavor, self.sampling)
    }

    pub(crate) fn relabelled(&self, flavor: Flavor) -> Arc<Self> {
        Arc::new(OreRing { flavor, ..self.clone() })
    }
}

fn prefixed(names: &str, mut report: LawReport) -> LawReport {
    report.law = format!("{names}: {}", report.law);
    report
}

/// Per-variable automorphism and twisted-Leibniz laws, plus pairwise
/// commutation of all twists of distinct variables.
fn certify(kind: RingKind, vars: &[Variable], cfg: &SampleConfig) -> Certificate {
    let mut cert = Certificate::default();
    for v in vars {
        cert.push(prefixed(&v.name, automorphism_report(&v.twist.aut, kind, cfg)));
        cert.push(prefixed(
            &v.name,
            derivation_report(&v.twist.aut, &v.twist.der, kind, cfg),
        ));
    }
    for (a, va) in vars.iter().enumerate() {
        for vb in &vars[a + 1..] {
            let names = format!("{},{}", va.name, vb.name);
            let (ta, tb) = (&va.twist, &vb.twist);
            for (f, g) in [
                (&ta.aut, &tb.aut),
                (&ta.aut, &tb.der),
                (&tb.aut, &ta.der),
                (&ta.der, &tb.der),
            ] {
                cert.push(prefixed(&names, commutation_report(f, g, kind, cfg)));
            }
        }
    }
    cert
}
