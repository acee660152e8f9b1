//! One function per subcommand, each turning validated arguments into a [`Report`].

use serde_json::{json, Value};
use splitcheck::bbfix::{check_split_homog, BbAnalysis, CertificateStatus, OneParamSubgroup};
use splitcheck::error::Error;
use splitcheck::grassmod::{
    catalog, catalog_ppos, cross_validate_bb, latex_table, pic_cyclic, pic_cyclic_check,
    reduction_plan, Genericity, GrassmannianModel, ModelKind, Rule, SubFamily,
};
use splitcheck::parabolic::Parabolic;
use splitcheck::poscalc::{self, Provenance, ZeroLocusVariant};
use splitcheck::rootsys::{
    BwbResult, CartanType, RootSystem, Weight, WeylElement, DEFAULT_WEYL_CAP,
};

use crate::args::{
    BbArgs, BwbArgs, CatalogArgs, CrosscheckArgs, DynkinArgs, Format, Indices, Ints, OnesplitArgs,
    PposArgs, ReduceArgs, RuleArg,
};
use crate::report::Report;

/// Why a command did not produce a report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Failure {
    /// Bad input; the message names the offending flag.
    Usage(String),
    /// A library consistency check failed.
    Internal(String),
}

pub type Outcome<T> = Result<T, Failure>;

fn usage(flag: &str, msg: impl std::fmt::Display) -> Failure {
    Failure::Usage(format!("{flag}: {msg}"))
}

/// Attributes a library error to the flag that caused it.
fn lift(flag: &'static str) -> impl Fn(Error) -> Failure {
    move |e| match e {
        Error::Inconsistent(_) | Error::Overflow(_) => Failure::Internal(e.to_string()),
        Error::InvalidModel(_) | Error::NoRealization(_) => usage("--model", e),
        Error::FamilyMismatch { .. } => usage("--family", e),
        Error::TrivialAction => usage("--lambda", e),
        Error::EnumerationCap { .. } => usage("--type", e),
        _ => usage(flag, e),
    }
}

fn one_based(idx: &[usize]) -> Vec<usize> {
    idx.iter().map(|i| i + 1).collect()
}

fn word(w: &WeylElement) -> Value {
    json!(one_based(w.word()))
}

fn tag(path: &str, p: Provenance) -> (String, Provenance) {
    (path.to_string(), p)
}

fn model_json(m: &GrassmannianModel) -> Value {
    json!({
        "notation": m.spec_string(),
        "name": m.to_string(),
        "kind": m.kind.as_str(),
        "k": m.k,
        "D": m.d,
        "kappa": m.kappa,
        "dim": m.dim(),
    })
}

fn check_levi(rs: &RootSystem, levi: &Indices) -> Outcome<()> {
    match levi.0.iter().find(|&&i| i >= rs.rank()) {
        Some(i) => Err(usage(
            "--levi",
            format!("index {} exceeds the rank {}", i + 1, rs.rank()),
        )),
        None => Ok(()),
    }
}

fn check_len(flag: &str, v: &Ints, rank: usize) -> Outcome<()> {
    if v.0.len() != rank {
        return Err(usage(
            flag,
            format!(
                "expected {rank} comma-separated integers, got {}",
                v.0.len()
            ),
        ));
    }
    Ok(())
}

fn reject_latex(format: Format) -> Outcome<()> {
    if format == Format::Latex {
        return Err(usage(
            "--format",
            "latex output is only available for catalog",
        ));
    }
    Ok(())
}

pub fn dynkin(a: &DynkinArgs) -> Outcome<Report> {
    reject_latex(a.output.format)?;
    let rs = RootSystem::build(a.cartan_type);
    let highest = rs
        .positive_roots()
        .last()
        .expect("rank is positive")
        .clone();
    let mut payload = json!({
        "type": rs.label(),
        "rank": rs.rank(),
        "cartan_matrix": rs.cartan_matrix(),
        "root_count": rs.root_count(),
        "positive_root_count": rs.positive_roots().len(),
        "weyl_order": u64::try_from(rs.weyl_order()).map_err(|_| Failure::Internal("Weyl order overflow".into()))?,
        "highest_root": highest.0,
        "rho": rs.rho().0,
        "parabolic": Value::Null,
    });
    if let Some(levi) = &a.levi {
        check_levi(&rs, levi)?;
        let par = Parabolic::new(&rs, &levi.0).map_err(lift("--levi"))?;
        let reps = rs
            .minimal_coset_reps(&levi.0, DEFAULT_WEYL_CAP)
            .map_err(lift("--levi"))?;
        payload["parabolic"] = json!({
            "levi": one_based(&levi.0),
            "dimension": par.dimension(),
            "picard_rank": par.picard_lattice_basis().len(),
            "fixed_points": reps.len(),
            "tilde_I": one_based(&par.tilde_i()),
        });
    }
    Ok(Report::new(
        "dynkin",
        payload,
        vec![],
        Provenance::Certified,
        &[],
    ))
}

pub fn onesplit(a: &OnesplitArgs) -> Outcome<Report> {
    reject_latex(a.output.format)?;
    if a.bound < 0 {
        return Err(usage("--bound", "must be non-negative"));
    }
    let rs = RootSystem::build(a.cartan_type);
    check_levi(&rs, &a.levi)?;
    let par = Parabolic::new(&rs, &a.levi.0).map_err(lift("--levi"))?;
    let r = par.one_splitting(a.bound).map_err(lift("--levi"))?;
    let witness = match &r.witness {
        Some(w) => {
            let bwb = rs.bwb_cohomology(w).map_err(lift("--levi"))?;
            let BwbResult::NonZero {
                degree,
                highest_weight,
                ..
            } = bwb
            else {
                return Err(Failure::Internal("witness has no cohomology".into()));
            };
            let dim = rs.weyl_dimension(&highest_weight).map_err(lift("--levi"))?;
            json!({"weight": w.0, "degree": degree, "dimension": dim as u64})
        }
        None => Value::Null,
    };
    let source_step = match par.iterate_source() {
        Ok(step) => json!({
            "alpha0": step.alpha0 + 1,
            "child_type": step.child_system.label(),
            "child_levi": one_based(&step.child_levi),
            "lambda": step.lambda,
        }),
        Err(Error::Hypothesis(msg)) => json!({"unavailable": msg}),
        Err(e) => return Err(lift("--levi")(e)),
    };
    let payload = json!({
        "type": rs.label(),
        "levi": one_based(&a.levi.0),
        "dimension": par.dimension(),
        "is_one_splitting": r.is_one_splitting,
        "tilde_I": one_based(&r.tilde_i),
        "perpendicular_root": r.perpendicular_root.map(|b| b + 1),
        "witness": witness,
        "search_exhausted": r.search_exhausted,
        "bound": a.bound,
        "source_step": source_step,
    });
    let citations = vec![
        "one-splitting-dynkin-criterion".to_string(),
        "borel-weil-bott".to_string(),
        "one-splitting-source-iteration".to_string(),
    ];
    Ok(Report::new(
        "onesplit",
        payload,
        citations,
        Provenance::Certified,
        &[],
    ))
}

pub fn bwb(a: &BwbArgs) -> Outcome<Report> {
    reject_latex(a.output.format)?;
    let rs = RootSystem::build(a.cartan_type);
    check_len("--weight", &a.weight, rs.rank())?;
    let chi = Weight(a.weight.0.clone());
    let mut levi = Value::Null;
    if let Some(l) = &a.levi {
        check_levi(&rs, l)?;
        let par = Parabolic::new(&rs, &l.0).map_err(lift("--levi"))?;
        if !par.in_picard_lattice(&chi) {
            return Err(usage(
                "--weight",
                "does not lie in the Picard lattice of G/P (nonzero coordinate on a Levi root)",
            ));
        }
        levi = json!(one_based(&l.0));
    }
    let payload = match rs.bwb_cohomology(&chi).map_err(lift("--weight"))? {
        BwbResult::Zero => json!({
            "type": rs.label(),
            "levi": levi,
            "weight": chi.0,
            "vanishes": true,
            "degree": Value::Null,
            "highest_weight": Value::Null,
            "element": Value::Null,
            "dimension": 0,
        }),
        BwbResult::NonZero {
            degree,
            highest_weight,
            element,
        } => {
            let dim = rs
                .weyl_dimension(&highest_weight)
                .map_err(lift("--weight"))?;
            json!({
                "type": rs.label(),
                "levi": levi,
                "weight": chi.0,
                "vanishes": false,
                "degree": degree,
                "highest_weight": highest_weight.0,
                "element": word(&element),
                "dimension": dim as u64,
            })
        }
    };
    Ok(Report::new(
        "bwb",
        payload,
        vec!["borel-weil-bott".into()],
        Provenance::Certified,
        &[],
    ))
}

pub fn bb(a: &BbArgs) -> Outcome<Report> {
    reject_latex(a.output.format)?;
    let rs = RootSystem::build(a.cartan_type);
    check_levi(&rs, &a.levi)?;
    check_len("--lambda", &a.lambda, rs.rank())?;
    let lambda = OneParamSubgroup::new(a.lambda.0.clone());
    let bb =
        BbAnalysis::new(&rs, &a.levi.0, &lambda, DEFAULT_WEYL_CAP).map_err(lift("--lambda"))?;
    let split =
        check_split_homog(&rs, &a.levi.0, &lambda, DEFAULT_WEYL_CAP).map_err(lift("--lambda"))?;
    let components: Vec<Value> = bb
        .components
        .iter()
        .map(|c| {
            json!({
                "rep": word(&c.rep),
                "fixed_points": c.orbit.len(),
                "comp_dim": c.comp_dim,
                "plus_cell_dim": c.plus_cell_dim,
                "minus_cell_dim": c.minus_cell_dim(),
                "pos_count": c.pos_count,
                "neg_count": c.neg_count,
                "weights": c.weights,
                "is_source": c.is_source,
                "is_sink": c.is_sink,
            })
        })
        .collect();
    let cert = bb.certificate();
    let (is_scalar, scalar) = bb.normal_is_scalar();
    let payload = json!({
        "type": rs.label(),
        "levi": one_based(&a.levi.0),
        "lambda": lambda.pairings,
        "dim": bb.dim,
        "components": components,
        "source": bb.source,
        "sink": bb.sink,
        "cd_complement": bb.cd_complement(),
        "gap": bb.gap(),
        "codim_source": bb.codim_source(),
        "normal_is_scalar": is_scalar,
        "normal_weight": scalar,
        "certificate": serde_json::to_value(&cert).expect("serializable"),
        "pic_source_iso": bb.pic_source_iso(),
        "split_homog": serde_json::to_value(&split).expect("serializable"),
    });
    let mut citations = vec![
        "bialynicki-birula-decomposition".to_string(),
        "bb-source-cohomological-dimension".to_string(),
    ];
    if cert.status == CertificateStatus::Certified {
        citations.push("bb-source-positivity".into());
    }
    citations.push("split-homogeneous-criterion".into());
    Ok(Report::new(
        "bb",
        payload,
        citations,
        Provenance::Certified,
        &[],
    ))
}

fn rule_name(r: RuleArg) -> &'static str {
    match r {
        RuleArg::QampleToPpos => "qample-to-ppos",
        RuleArg::PposToQample => "ppos-to-qample",
        RuleArg::Blowup => "blowup",
        RuleArg::BlowupInverse => "blowup-inverse",
        RuleArg::Transitivity => "transitivity",
        RuleArg::Fiber => "fiber",
        RuleArg::SommeseZeroLocus => "sommese-zero-locus",
        RuleArg::Pullback => "pullback",
        RuleArg::PullbackLine => "pullback-line",
        RuleArg::Intersections => "intersections",
        RuleArg::IntersectionsCd => "intersections-cd",
        RuleArg::PicZeroLociSommese => "pic-zero-loci-sommese",
        RuleArg::PicZeroLociFiber => "pic-zero-loci-fiber",
        RuleArg::PicRestriction => "pic-restriction",
        RuleArg::SommeseVsFiber => "sommese-vs-fiber",
        RuleArg::PicCyclic => "pic-cyclic",
    }
}

fn rule_params(r: RuleArg) -> &'static [&'static str] {
    match r {
        RuleArg::QampleToPpos => &["dim_sub", "q"],
        RuleArg::PposToQample => &["dim_sub", "p"],
        RuleArg::Blowup => &["q", "codim"],
        RuleArg::BlowupInverse => &["q_exceptional", "codim"],
        RuleArg::Transitivity => &["dim_x", "dim_y", "dim_z", "r", "p"],
        RuleArg::Fiber => &["dim_x", "dim_image"],
        RuleArg::SommeseZeroLocus => &["dim_x", "rank", "q"],
        RuleArg::Pullback => &["p"],
        RuleArg::PullbackLine => &["q", "fibre_dim"],
        RuleArg::Intersections => &["codim", "p"],
        RuleArg::IntersectionsCd => &["dim_x", "codim", "cd"],
        RuleArg::PicZeroLociSommese => &["dim_x", "rank", "q"],
        RuleArg::PicZeroLociFiber => &["rank", "fibre_dim"],
        RuleArg::PicRestriction => &["p"],
        RuleArg::SommeseVsFiber => &["rank", "u"],
        RuleArg::PicCyclic => &["k", "D", "kappa"],
    }
}

fn rule_citation(r: RuleArg) -> &'static str {
    match r {
        RuleArg::QampleToPpos | RuleArg::PposToQample => "ppos-qample-equivalence",
        RuleArg::Blowup | RuleArg::BlowupInverse => "blowup-exceptional-amplitude",
        RuleArg::Transitivity => "positivity-transitivity",
        RuleArg::Fiber => "evaluation-fibre-criterion",
        RuleArg::SommeseZeroLocus => "sommese-zero-locus",
        RuleArg::Pullback | RuleArg::PullbackLine => "flat-pullback",
        RuleArg::Intersections | RuleArg::IntersectionsCd => "generic-translate-intersections",
        RuleArg::PicZeroLociSommese | RuleArg::PicZeroLociFiber => "zero-locus-picard-group",
        RuleArg::PicRestriction => "picard-restriction",
        RuleArg::SommeseVsFiber => "sommese-comparison",
        RuleArg::PicCyclic => "symplectic-cyclic-picard",
    }
}

fn eval_rule(r: RuleArg, x: &[i64]) -> splitcheck::error::Result<Value> {
    Ok(match r {
        RuleArg::QampleToPpos => json!({"p": poscalc::qample_to_ppos(x[0], x[1])}),
        RuleArg::PposToQample => json!({"q": poscalc::ppos_to_qample(x[0], x[1])}),
        RuleArg::Blowup => json!({"q_exceptional": poscalc::blowup_index(x[0], x[1])?}),
        RuleArg::BlowupInverse => json!({"q": poscalc::blowup_index_inverse(x[0], x[1])?}),
        RuleArg::Transitivity => {
            let t = poscalc::transitivity(x[0], x[1], x[2], x[3], x[4])?;
            serde_json::to_value(t).expect("serializable")
        }
        RuleArg::Fiber => json!({"p": poscalc::fiber_criterion(x[0], x[1])?}),
        RuleArg::SommeseZeroLocus => {
            json!({"p": poscalc::sommese_zero_locus_ppos(x[0], x[1], x[2])?})
        }
        RuleArg::Pullback => json!({"p": poscalc::pullback_ppos(x[0])}),
        RuleArg::PullbackLine => json!({"q": poscalc::pullback_line_amplitude(x[0], x[1])?}),
        RuleArg::Intersections => json!({"holds": poscalc::intersections_ok(x[0], x[1])?}),
        RuleArg::IntersectionsCd => {
            json!({"holds": poscalc::intersections_ok_cd(x[0], x[1], x[2])?})
        }
        RuleArg::PicZeroLociSommese => json!({
            "holds": poscalc::pic_0loci_check(ZeroLocusVariant::Sommese, x[0], x[1], x[2])
        }),
        RuleArg::PicZeroLociFiber => json!({
            "holds": poscalc::pic_0loci_check(ZeroLocusVariant::Fiber, 0, x[0], x[1])
        }),
        RuleArg::PicRestriction => json!({"holds": poscalc::pic_restriction_iso(x[0])}),
        RuleArg::SommeseVsFiber => {
            let c = poscalc::sommese_vs_fiber(x[0], x[1])?;
            let mut v = serde_json::to_value(&c).expect("serializable");
            v["difference"] = json!(c.difference());
            v
        }
        RuleArg::PicCyclic => json!({"holds": pic_cyclic(x[0], x[1], x[2])}),
    })
}

pub fn ppos(a: &PposArgs) -> Outcome<Report> {
    reject_latex(a.output.format)?;
    if let Some(rule) = a.rule {
        let params = rule_params(rule);
        let values = &a.args.as_ref().expect("clap enforces --args").0;
        if values.len() != params.len() {
            return Err(usage(
                "--args",
                format!(
                    "rule {} takes {} integers ({}), got {}",
                    rule_name(rule),
                    params.len(),
                    params.join(", "),
                    values.len()
                ),
            ));
        }
        let result = eval_rule(rule, values).map_err(lift("--args"))?;
        let named: serde_json::Map<String, Value> = params
            .iter()
            .zip(values)
            .map(|(p, v)| (p.to_string(), json!(v)))
            .collect();
        let payload = json!({"rule": rule_name(rule), "args": named, "result": result});
        return Ok(Report::new(
            "ppos",
            payload,
            vec![rule_citation(rule).into()],
            Provenance::Derived,
            &[],
        ));
    }
    let m = a.model.expect("clap enforces --model");
    let family = a
        .family
        .ok_or_else(|| usage("--family", "required together with --model"))?;
    let e = catalog_ppos(&m, family.into(), DEFAULT_WEYL_CAP).map_err(lift("--family"))?;
    let mut citations = vec![e.citation.to_string()];
    if e.certificate.is_some() {
        citations.push("bb-source-positivity".into());
    }
    let payload = json!({
        "model": model_json(&m),
        "family": e.family.as_str(),
        "sub": e.sub,
        "fact": serde_json::to_value(&e.fact).expect("serializable"),
        "certificate": e.certificate.as_ref().map(|c| serde_json::to_value(c).expect("serializable")),
    });
    Ok(Report::new(
        "ppos",
        payload,
        citations,
        Provenance::Derived,
        &[
            tag("fact.p", e.fact.kind),
            tag("certificate", Provenance::Certified),
        ],
    ))
}

fn rule_str(r: Rule) -> &'static str {
    match r {
        Rule::HyperplaneSection => "hyperplane",
        Rule::PointReduction => "point",
    }
}

fn genericity_str(g: Genericity) -> &'static str {
    match g {
        Genericity::Arbitrary => "arbitrary",
        Genericity::VeryGeneral => "very general",
    }
}

/// The report for `reduce`, plus the number of annotations that `--strict` rejects.
pub fn reduce(a: &ReduceArgs) -> Outcome<(Report, usize)> {
    reject_latex(a.output.format)?;
    let plan = reduction_plan(&a.model).map_err(lift("--model"))?;
    let mut strict_hits = 0;
    let mut citations = vec![plan.citation.to_string()];
    let mut overrides = Vec::new();
    let steps: Vec<Value> = plan
        .steps
        .iter()
        .enumerate()
        .map(|(i, s)| {
            citations.push(s.justification.to_string());
            overrides.push(tag(&format!("steps[{i}].p"), s.step_ppos.kind));
            if !s.hypothesis_check.passed() {
                strict_hits += 1;
            }
            json!({
                "from": s.from.spec_string(),
                "to": s.to.spec_string(),
                "rule": rule_str(s.rule),
                "justification": s.justification,
                "dim_from": s.from.dim(),
                "dim_to": s.to.dim(),
                "p": s.step_ppos.p,
                "check": if s.hypothesis_check.passed() { "Pass" } else { "Fail" },
                "check_text": s.hypothesis_check.text(),
                "weak_check": s.weak_check.as_ref().map(|w| json!({
                    "check": if w.passed() { "Pass" } else { "Fail" },
                    "check_text": w.text(),
                })),
                "genericity": genericity_str(s.genericity),
            })
        })
        .collect();
    if !plan.agrees {
        strict_hits += 1;
    }
    if plan.composed_genericity == Some(Provenance::Asserted) {
        strict_hits += 1;
    }
    let payload = json!({
        "start": model_json(&plan.start),
        "terminal": model_json(&plan.terminal),
        "theorem_terminal": model_json(&plan.theorem_terminal),
        "agrees": plan.agrees,
        "genericity": genericity_str(plan.genericity),
        "composed_genericity": plan.composed_genericity.map(Provenance::as_str),
        "discrepancies": plan.discrepancies,
        "steps": steps,
    });
    let report = Report::new(
        "reduce",
        payload,
        citations,
        Provenance::Derived,
        &overrides,
    );
    Ok((report, strict_hits))
}

/// The report for `catalog`, and the LaTeX table when that format was requested.
pub fn catalog_cmd(a: &CatalogArgs) -> Outcome<(Report, Option<String>)> {
    let m = a.model;
    let entries = catalog(&m, DEFAULT_WEYL_CAP).map_err(lift("--model"))?;
    let mut citations = Vec::new();
    let mut overrides = Vec::new();
    let rows: Vec<Value> = entries
        .iter()
        .enumerate()
        .map(|(i, e)| {
            citations.push(e.citation.to_string());
            overrides.push(tag(&format!("entries[{i}].p"), e.fact.kind));
            overrides.push(tag(&format!("entries[{i}].q"), e.fact.kind));
            overrides.push(tag(
                &format!("entries[{i}].cd_complement"),
                Provenance::Certified,
            ));
            json!({
                "family": e.family.as_str(),
                "sub": e.sub,
                "dim_sub": e.fact.dim_sub,
                "codim": e.fact.codim(),
                "p": e.fact.p,
                "q": e.fact.q(),
                "provenance": e.fact.kind.as_str(),
                "citation": e.citation,
                "note": e.fact.note,
                "certificate": e.certificate.as_ref().map(|c| match c.status {
                    CertificateStatus::Certified => "certified",
                    CertificateStatus::CdOnly => "cd only",
                }),
                "cd_complement": e.certificate.as_ref().map(|c| c.cd_complement),
            })
        })
        .collect();
    let pic = match m.kind {
        ModelKind::Symplectic => json!(pic_cyclic_check(&m).map_err(lift("--model"))?),
        _ => Value::Null,
    };
    if pic.is_boolean() {
        citations.push("symplectic-cyclic-picard".into());
    }
    let payload = json!({
        "model": model_json(&m),
        "entries": rows,
        "pic_cyclic": pic,
    });
    let latex = (a.output.format == Format::Latex).then(|| latex_table(&entries));
    Ok((
        Report::new(
            "catalog",
            payload,
            citations,
            Provenance::Derived,
            &overrides,
        ),
        latex,
    ))
}

pub fn crosscheck(a: &CrosscheckArgs) -> Outcome<Report> {
    reject_latex(a.output.format)?;
    let family: SubFamily = a.family.into();
    let c = cross_validate_bb(&a.model, family, DEFAULT_WEYL_CAP).map_err(lift("--family"))?;
    let entry = catalog_ppos(&a.model, family, DEFAULT_WEYL_CAP).map_err(lift("--family"))?;
    let realization_type: CartanType = c.realization.cartan_type;
    let payload = json!({
        "model": model_json(&a.model),
        "family": family.as_str(),
        "realization": {
            "type": realization_type.to_string(),
            "levi": one_based(&c.realization.levi),
        },
        "lambda": c.lambda,
        "catalog_p": c.catalog_p,
        "certificate": serde_json::to_value(&c.certificate).expect("serializable"),
        "compared": c.compared,
        "expected": c.expected,
        "found": c.found,
        "matches": c.matches,
    });
    Ok(Report::new(
        "crosscheck",
        payload,
        vec![entry.citation.to_string(), "bb-source-positivity".into()],
        Provenance::Certified,
        &[
            tag("catalog_p", Provenance::Asserted),
            tag("expected", Provenance::Asserted),
            tag("model", Provenance::Derived),
        ],
    ))
}
