use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::parse::{parse_expr, parse_scalar, ParseError};
use super::{content_lines, read, CliError, Command, Context, Format};
use crate::cns::{cns_witness, gordon_motzkin_check, EvaluationSet, GordonMotzkinReport};
use crate::coeff::{LawReport, Scalar};
use crate::eval::{evaluate, mix_derivations_at, mix_elements_at, AutomorphicTuple};
use crate::normalize::{
    monicize, normalize, re_express, reduce_by_monic, MonicRelation, NormError, NormalizationStep, SkipReason,
    Substitution,
};
use crate::ore::{OreRing, SkewPoly};
use crate::serial::{MapDescriptor, RingConfig};

fn expr(src: &str, ring: &Arc<OreRing>) -> Result<SkewPoly, CliError> {
    parse_expr(src, ring).map_err(|source| CliError::Parse {
        context: String::new(),
        source,
    })
}

fn located(what: &str, line: usize, e: ParseError) -> CliError {
    CliError::Parse {
        context: format!("{what} line {line}: "),
        source: e,
    }
}

fn scalar(src: &str, ring: &OreRing) -> Result<Scalar, CliError> {
    parse_scalar(src, ring.kind()).map_err(|source| CliError::Parse {
        context: format!("scalar {src:?}: "),
        source,
    })
}

fn strings<T: ToString>(v: &[T]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

fn var_arg(ring: &OreRing, arg: &Option<String>) -> Result<usize, CliError> {
    let n = ring.var_count();
    match arg {
        None if n > 0 => Ok(n - 1),
        None => Err(CliError::Usage("the ring has no variables".into())),
        Some(s) => ring
            .var_index(s)
            .or_else(|| s.parse().ok().filter(|&i: &usize| i < n))
            .ok_or_else(|| CliError::Usage(format!("no variable {s:?}"))),
    }
}

fn emit<T: Serialize>(format: Format, report: &T, text: impl FnOnce(&T) -> String) -> Result<String, CliError> {
    Ok(match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Text => text(report),
    })
}

fn degree_of(p: &SkewPoly) -> Option<u32> {
    p.total_degree().finite()
}

#[derive(Serialize)]
struct NormalFormEntry {
    input: String,
    normal_form: String,
    degree: Option<u32>,
    terms: Vec<crate::ore::SerialTerm>,
}

#[derive(Serialize)]
struct NormalFormReport {
    results: Vec<NormalFormEntry>,
}

#[derive(Serialize)]
struct ProductReport {
    left: String,
    right: String,
    product: String,
    degree: Option<u32>,
}

#[derive(Serialize)]
struct EvaluationReport {
    input: String,
    images: Vec<String>,
    value: String,
    certificate: Vec<LawReport>,
}

#[derive(Serialize)]
struct MixReport {
    target: usize,
    coefficients: Vec<String>,
    derivations: Vec<MapDescriptor>,
    elements: Vec<String>,
    derivation_checks: Vec<LawReport>,
    element_checks: Vec<LawReport>,
}

#[derive(Serialize)]
struct MonicizeReport {
    input: String,
    target: usize,
    u: Vec<String>,
    scale: String,
    leading_value: String,
    examined: usize,
    monic: String,
    mixed_derivations: Vec<MapDescriptor>,
}

#[derive(Serialize)]
struct WitnessReport {
    input: String,
    degree: Option<u32>,
    sets: Vec<Vec<String>>,
    point: Vec<String>,
    value: String,
    scanned: usize,
}

#[derive(Serialize)]
struct RootsReport {
    input: String,
    #[serde(flatten)]
    report: GordonMotzkinReport,
}

#[derive(Serialize)]
struct ReductionReport {
    input: String,
    relation: String,
    var: String,
    remainder: String,
    quotient: String,
    check: bool,
}

/// One elimination, with enough data to re-check it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepReport {
    pub relation_index: usize,
    pub eliminated: String,
    /// The relation re-expressed in the variables before this step.
    pub witness: String,
    pub u: Vec<String>,
    pub scale: String,
    pub leading_value: String,
    pub examined: usize,
    pub degree: u32,
    /// `ε₁, …, ε_m` of `t^m + ε₁t^{m−1} + ⋯ + ε_m`.
    pub eps: Vec<String>,
    pub relation: String,
    pub mixed_derivations: Vec<MapDescriptor>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkipReport {
    pub index: usize,
    pub reason: SkipReason,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalizationReport {
    pub ring: RingConfig,
    pub relations: Vec<String>,
    pub steps: Vec<StepReport>,
    pub skipped: Vec<SkipReport>,
    pub remaining: Vec<String>,
    pub generator_bounds: Vec<u32>,
}

#[derive(Serialize)]
struct ReplayEntry {
    step: usize,
    discrepancy: String,
    witness_matches: bool,
    derivations_match: bool,
}

#[derive(Serialize)]
struct ReplayReport {
    steps: Vec<ReplayEntry>,
    ok: bool,
}

pub(super) fn execute(cmd: &Command, ctx: &Context, format: Format) -> Result<String, CliError> {
    match cmd {
        Command::Normalform { exprs } => {
            let ring = ctx.ring()?;
            let mut results = Vec::new();
            for src in exprs {
                let p = expr(src, &ring)?;
                results.push(NormalFormEntry {
                    input: src.clone(),
                    normal_form: p.to_string(),
                    degree: degree_of(&p),
                    terms: p.to_serial(),
                });
            }
            emit(format, &NormalFormReport { results }, |r| {
                r.results.iter().map(|e| format!("{}\n", e.normal_form)).collect()
            })
        }
        Command::Multiply { left, right } => {
            let ring = ctx.ring()?;
            let (a, b) = (expr(left, &ring)?, expr(right, &ring)?);
            let p = a.mul(&b)?;
            let report = ProductReport {
                left: a.to_string(),
                right: b.to_string(),
                product: p.to_string(),
                degree: degree_of(&p),
            };
            emit(format, &report, |r| format!("{}\n", r.product))
        }
        Command::Evaluate {
            expr: src,
            at,
            target_ring,
        } => {
            let ring = ctx.ring()?;
            let target = match target_ring {
                Some(path) => ctx.load_ring(path)?,
                None => ring.clone(),
            };
            let f = expr(src, &ring)?;
            let images = at.iter().map(|s| expr(s, &target)).collect::<Result<Vec<_>, _>>()?;
            let tuple = AutomorphicTuple::new(images, ring.twists())?;
            let value = evaluate(&f, &tuple)?;
            let report = EvaluationReport {
                input: f.to_string(),
                images: strings(tuple.elements()),
                value: value.to_string(),
                certificate: tuple.certificate().checks.clone(),
            };
            emit(format, &report, |r| format!("{}\n", r.value))
        }
        Command::Mix { coeffs, target } => {
            let ring = ctx.ring()?;
            let t = var_arg(&ring, target)?;
            let a = coeffs.iter().map(|s| scalar(s, &ring)).collect::<Result<Vec<_>, _>>()?;
            let tuple = AutomorphicTuple::identity(&ring)?;
            let (mixed, tower) = mix_elements_at(&tuple, t, &a)?;
            let report = MixReport {
                target: t,
                coefficients: strings(&a),
                derivations: tower.derivations.iter().map(MapDescriptor::from_map).collect(),
                elements: strings(mixed.elements()),
                derivation_checks: tower.certificate.checks.clone(),
                element_checks: mixed.certificate().checks.clone(),
            };
            let names = ring.names();
            emit(format, &report, |r| {
                let mut s = String::new();
                for (n, d) in tower.derivations.iter().enumerate() {
                    let _ = writeln!(s, "d{} = {d}", n + 1);
                }
                for (name, u) in names.iter().zip(&r.elements) {
                    let _ = writeln!(s, "{name} -> {u}");
                }
                s
            })
        }
        Command::Monicize { expr: src, target } => {
            let ring = ctx.ring()?;
            let t = var_arg(&ring, target)?;
            let f = expr(src, &ring)?;
            let m = monicize(&f, t)?;
            let report = MonicizeReport {
                input: f.to_string(),
                target: t,
                u: strings(&m.substitution.u),
                scale: m.substitution.scale.to_string(),
                leading_value: m.substitution.leading_value.to_string(),
                examined: m.examined,
                monic: m.g.to_string(),
                mixed_derivations: m.tower.derivations.iter().map(MapDescriptor::from_map).collect(),
            };
            emit(format, &report, |r| {
                format!("u = ({})\na = {}\ng = {}\n", r.u.join(", "), r.scale, r.monic)
            })
        }
        Command::CnsSearch { expr: src, sets } => {
            let ring = ctx.ring()?;
            let f = expr(src, &ring)?;
            let text = read(sets)?;
            let mut parsed = Vec::new();
            for (line, l) in content_lines(&text) {
                let elems = l
                    .split(',')
                    .map(|s| parse_scalar(s.trim(), ring.kind()).map_err(|e| located("sets", line, e)))
                    .collect::<Result<Vec<_>, _>>()?;
                parsed.push(EvaluationSet::new(elems)?);
            }
            let w = cns_witness(&f, &parsed)?;
            let report = WitnessReport {
                input: f.to_string(),
                degree: degree_of(&f),
                sets: parsed.iter().map(|s| strings(s.elements())).collect(),
                point: strings(&w.point),
                value: w.value.to_string(),
                scanned: w.scanned,
            };
            emit(format, &report, |r| {
                format!(
                    "point: ({})\nvalue: {}\nscanned: {}\n",
                    r.point.join(", "),
                    r.value,
                    r.scanned
                )
            })
        }
        Command::GmCheck { expr: src, roots } => {
            let ring = ctx.ring()?;
            let f = expr(src, &ring)?;
            let text = read(roots)?;
            let rs = content_lines(&text)
                .into_iter()
                .map(|(line, l)| parse_scalar(l, ring.kind()).map_err(|e| located("roots", line, e)))
                .collect::<Result<Vec<_>, _>>()?;
            let report = RootsReport {
                input: f.to_string(),
                report: gordon_motzkin_check(&f, &rs)?,
            };
            emit(format, &report, |r| {
                let mut s = format!("degree: {}\nclasses: {}\n", r.report.degree, r.report.classes.len());
                for c in &r.report.classes {
                    let label = match (&c.trace, &c.norm) {
                        (Some(t), Some(n)) => format!(" (trace {t}, norm {n})"),
                        _ => String::new(),
                    };
                    let _ = writeln!(s, "{}{label}", strings(&c.members).join(", "));
                }
                s
            })
        }
        Command::Normalize { relations, replay } => match (relations, replay) {
            (_, Some(path)) => replay_report(path, ctx, format),
            (Some(path), None) => normalize_command(path, ctx, format),
            (None, None) => Err(CliError::Usage("normalize needs --relations or --replay".into())),
        },
        Command::Reduce {
            expr: src,
            relation,
            var,
        } => {
            let ring = ctx.ring()?;
            let v = var_arg(&ring, var)?;
            let e = expr(src, &ring)?;
            let rel = MonicRelation::from_poly(&expr(relation, &ring)?, v)?;
            let red = reduce_by_monic(&e, &rel)?;
            let check = red.quotient.mul(&rel.poly())?.add(&red.remainder)? == e;
            if !check {
                return Err(CliError::Check("division re-check failed".into()));
            }
            let report = ReductionReport {
                input: e.to_string(),
                relation: rel.poly().to_string(),
                var: ring.names()[v].clone(),
                remainder: red.remainder.to_string(),
                quotient: red.quotient.to_string(),
                check,
            };
            emit(format, &report, |r| format!("{}\n", r.remainder))
        }
    }
}

fn step_report(step: &NormalizationStep, relation_index: usize) -> StepReport {
    let ring = step.ring_after();
    StepReport {
        relation_index,
        eliminated: ring.names()[step.relation.var].clone(),
        witness: step.witness.to_string(),
        u: strings(&step.substitution.u),
        scale: step.substitution.scale.to_string(),
        leading_value: step.substitution.leading_value.to_string(),
        examined: step.examined,
        degree: step.relation.degree,
        eps: strings(&step.relation.eps),
        relation: step.relation.poly().to_string(),
        mixed_derivations: step.tower.derivations.iter().map(MapDescriptor::from_map).collect(),
    }
}

fn normalize_command(path: &Path, ctx: &Context, format: Format) -> Result<String, CliError> {
    let ring = ctx.ring()?;
    let text = read(path)?;
    let mut sources = Vec::new();
    let mut rels = Vec::new();
    for (line, l) in content_lines(&text) {
        rels.push(parse_expr(l, &ring).map_err(|e| located("relations", line, e))?);
        sources.push(l.to_string());
    }
    let result = normalize(&ring, &rels)?;
    let skipped: Vec<usize> = result.skipped.iter().map(|s| s.index).collect();
    let used = (0..rels.len()).filter(|i| !skipped.contains(i));
    let report = NormalizationReport {
        ring: RingConfig::from_ring(&ring),
        relations: strings(&rels),
        steps: result.steps.iter().zip(used).map(|(s, i)| step_report(s, i)).collect(),
        skipped: result
            .skipped
            .iter()
            .map(|s| SkipReport {
                index: s.index,
                reason: s.reason,
            })
            .collect(),
        remaining: ring.names()[..result.remaining].to_vec(),
        generator_bounds: result.generator_bounds(),
    };
    emit(format, &report, |r| {
        let mut s = String::new();
        for (n, st) in r.steps.iter().enumerate() {
            let _ = writeln!(
                s,
                "step {}: relation {} eliminates {} with u = ({}), a = {}",
                n + 1,
                st.relation_index + 1,
                st.eliminated,
                st.u.join(", "),
                st.scale
            );
            let _ = writeln!(s, "  monic relation: {} = 0", st.relation);
        }
        for sk in &r.skipped {
            let _ = writeln!(s, "skipped relation {}: {:?}", sk.index + 1, sk.reason);
        }
        let _ = writeln!(s, "remaining variables: {}", r.remaining.join(", "));
        s
    })
}

fn replay_report(path: &Path, ctx: &Context, format: Format) -> Result<String, CliError> {
    let report: NormalizationReport =
        serde_json::from_str(&read(path)?).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    let ring0 = report.ring.build(ctx.sampling)?;
    let relations = report
        .relations
        .iter()
        .enumerate()
        .map(|(n, s)| parse_expr(s, &ring0).map_err(|e| located("report relation", n + 1, e)))
        .collect::<Result<Vec<_>, _>>()?;
    let mut working = ring0.clone();
    let mut steps: Vec<NormalizationStep> = Vec::new();
    let mut entries = Vec::new();
    for (n, st) in report.steps.iter().enumerate() {
        let vars = working.var_count();
        if vars == 0 {
            return Err(CliError::Check(format!("step {}: no variables left", n + 1)));
        }
        let target = vars - 1;
        let witness = expr(&st.witness, &working)?;
        let u =
            st.u.iter()
                .map(|s| scalar(s, &working))
                .collect::<Result<Vec<_>, _>>()?;
        let neg: Vec<Scalar> = u.iter().map(Scalar::neg).collect();
        let ders: Vec<_> = working.twists().into_iter().map(|t| t.der).collect();
        let tower = mix_derivations_at(working.kind(), &ders, target, &neg, &ctx.sampling)?;
        let claimed = st
            .mixed_derivations
            .iter()
            .zip(working.twists())
            .map(|(d, t)| d.to_map(working.kind(), &t.aut))
            .collect::<Result<Vec<_>, _>>()?;
        let derivations_match = claimed == tower.derivations;
        let after = working.with_twists(tower.twists())?;
        let eps = st.eps.iter().map(|s| expr(s, &after)).collect::<Result<Vec<_>, _>>()?;
        let relation = MonicRelation {
            var: target,
            degree: st.degree,
            eps,
        };
        let substitution = Substitution {
            target,
            u,
            scale: scalar(&st.scale, &working)?,
            leading_value: scalar(&st.leading_value, &working)?,
        };
        let step = NormalizationStep {
            witness,
            substitution,
            tower,
            relation,
            examined: st.examined,
        };
        let discrepancy = step.replay_discrepancy()?;
        let source = relations
            .get(st.relation_index)
            .ok_or_else(|| CliError::Check(format!("step {}: no relation {}", n + 1, st.relation_index)))?;
        let witness_matches = matches!(re_express(source, &steps)?, Ok(w) if w == step.witness);
        entries.push(ReplayEntry {
            step: n + 1,
            discrepancy: discrepancy.to_string(),
            witness_matches,
            derivations_match,
        });
        working = after.prefix(target).map_err(NormError::from)?;
        steps.push(step);
    }
    let ok = entries
        .iter()
        .all(|e| e.discrepancy == "0" && e.witness_matches && e.derivations_match);
    let out = ReplayReport { steps: entries, ok };
    let text = emit(format, &out, |r| {
        let mut s = String::new();
        for e in &r.steps {
            let _ = writeln!(
                s,
                "step {}: discrepancy {}, witness {}, derivations {}",
                e.step,
                e.discrepancy,
                if e.witness_matches { "matches" } else { "differs" },
                if e.derivations_match { "match" } else { "differ" }
            );
        }
        let _ = writeln!(s, "{}", if r.ok { "replay ok" } else { "replay FAILED" });
        s
    })?;
    if ok {
        Ok(text)
    } else {
        Err(CliError::Check(format!("replay failed\n{text}")))
    }
}
