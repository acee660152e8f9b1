//! Linear, symplectic and orthogonal Grassmannians in closed form, their positivity
//! catalog, and reduction planners for splitting problems.
//!
//! Models are written `(k, D, κ)`: `k`-dimensional isotropic subspaces of a
//! `D`-dimensional space whose form has a `κ`-dimensional kernel. The classical
//! literature often uses `u = k - 1` and `w = D - 1`; every inequality is translated
//! once, here:
//!
//! | rule                  | in `(u, w)`              | in `(k, D)`                |
//! |-----------------------|--------------------------|----------------------------|
//! | symplectic hyperplane | `w ≥ 2u + 3 + κ`         | `D - 1 ≥ 2k + 1 + κ`       |
//! | symplectic point      | `w ≥ 2u + 1 + κ`, `u ≥ 2`| `D - 1 ≥ 2k - 1 + κ`, `k ≥ 3` |
//! | orthogonal hyperplane | `w ≥ 2u + 4`             | `D - 1 ≥ 2k + 2`           |
//! | orthogonal point      | `w ≥ 2u + 1`, `u ≥ 3`    | `D - 1 ≥ 2k - 1`, `k ≥ 4`  |
//! | cyclic Picard group   | `w ≥ 2u + 1 + κ`         | `D - 1 ≥ 2k - 1 + κ`       |
//!
//! Linear steps are checked against the requirement that the step be at least
//! 2-positive.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bbfix::{BbAnalysis, CertificateStatus, OneParamSubgroup, PositivityCertificate};
use crate::error::{Error, Result};
use crate::parabolic::Parabolic;
use crate::poscalc::{PositivityFact, Provenance};
use crate::rootsys::{CartanType, Family, RootSystem};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ModelKind {
    Linear,
    Symplectic,
    Orthogonal,
}

impl ModelKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ModelKind::Linear => "linear",
            ModelKind::Symplectic => "symplectic",
            ModelKind::Orthogonal => "orthogonal",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GrassmannianModel {
    pub kind: ModelKind,
    pub k: i64,
    pub d: i64,
    pub kappa: i64,
}

impl GrassmannianModel {
    pub fn new(kind: ModelKind, k: i64, d: i64, kappa: i64) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidModel(msg));
        if k < 1 {
            return bad(format!("k = {k} must be at least 1"));
        }
        match kind {
            ModelKind::Linear => {
                if kappa != 0 {
                    return bad("linear models have κ = 0".into());
                }
                if k > d - 1 {
                    return bad(format!("need 1 ≤ k ≤ D - 1, got k = {k}, D = {d}"));
                }
            }
            ModelKind::Symplectic => {
                if kappa != 0 && kappa != 1 {
                    return bad(format!("κ = {kappa} must be 0 or 1"));
                }
                if (d - kappa).rem_euclid(2) != 0 {
                    return bad(format!("κ = {kappa} must have the parity of D = {d}"));
                }
                if d - kappa < 2 * k {
                    return bad(format!(
                        "need D - κ ≥ 2k, got D = {d}, κ = {kappa}, k = {k}"
                    ));
                }
            }
            ModelKind::Orthogonal => {
                if kappa != 0 {
                    return bad("orthogonal models have κ = 0".into());
                }
                if d < 3 {
                    return bad(format!("need D ≥ 3, got D = {d}"));
                }
                if d < 2 * k {
                    return bad(format!("need D ≥ 2k, got D = {d}, k = {k}"));
                }
            }
        }
        Ok(GrassmannianModel { kind, k, d, kappa })
    }

    pub fn linear(k: i64, d: i64) -> Result<Self> {
        Self::new(ModelKind::Linear, k, d, 0)
    }

    pub fn symplectic(k: i64, d: i64, kappa: i64) -> Result<Self> {
        Self::new(ModelKind::Symplectic, k, d, kappa)
    }

    pub fn orthogonal(k: i64, d: i64) -> Result<Self> {
        Self::new(ModelKind::Orthogonal, k, d, 0)
    }

    pub fn u(&self) -> i64 {
        self.k - 1
    }

    pub fn w(&self) -> i64 {
        self.d - 1
    }

    pub fn dim(&self) -> i64 {
        dim_formula(self.kind, self.k, self.d)
    }

    /// The compact `kind:k,D[,κ]` notation used on the command line.
    pub fn spec_string(&self) -> String {
        match self.kind {
            ModelKind::Linear => format!("gl:{},{}", self.k, self.d),
            ModelKind::Symplectic => format!("sp:{},{},{}", self.k, self.d, self.kappa),
            ModelKind::Orthogonal => format!("o:{},{}", self.k, self.d),
        }
    }
}

impl fmt::Display for GrassmannianModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            ModelKind::Linear => write!(f, "Grs({};{})", self.k, self.d),
            ModelKind::Symplectic if self.kappa == 1 => {
                write!(f, "spGrs({};{}) with 1-dim kernel", self.k, self.d)
            }
            ModelKind::Symplectic => write!(f, "spGrs({};{})", self.k, self.d),
            ModelKind::Orthogonal => write!(f, "oGrs({};{})", self.k, self.d),
        }
    }
}

fn dim_formula(kind: ModelKind, k: i64, d: i64) -> i64 {
    match kind {
        ModelKind::Linear => k * (d - k),
        ModelKind::Symplectic => k * (2 * d - 3 * k + 1) / 2,
        ModelKind::Orthogonal => k * (2 * d - 3 * k - 1) / 2,
    }
}

pub fn dim_model(m: &GrassmannianModel) -> i64 {
    m.dim()
}

/// `D - 1 ≥ 2k - 1 + κ` on raw integers, without checking that `(k, D, κ)` is a model.
pub fn pic_cyclic(k: i64, d: i64, kappa: i64) -> bool {
    d - 1 >= 2 * (k - 1) + 1 + kappa
}

/// Whether the Picard group of a symplectic model is generated by `O(1)`.
pub fn pic_cyclic_check(m: &GrassmannianModel) -> Result<bool> {
    if m.kind != ModelKind::Symplectic {
        return Err(Error::FamilyMismatch {
            family: "cyclic Picard group",
            kind: m.kind.as_str(),
            detail: String::new(),
        });
    }
    Ok(pic_cyclic(m.k, m.d, m.kappa))
}

/// Subvarieties whose positivity is catalogued.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SubFamily {
    /// Subspaces inside a hyperplane.
    Hyperplane,
    /// Subspaces through a fixed (isotropic) vector.
    Point,
    /// Subspaces of a fixed Lagrangian subspace.
    Lagrangian,
}

impl SubFamily {
    pub fn as_str(self) -> &'static str {
        match self {
            SubFamily::Hyperplane => "hyperplane",
            SubFamily::Point => "point",
            SubFamily::Lagrangian => "lagrangian",
        }
    }
}

/// A homogeneous model `G/P_I` of a Grassmannian.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Realization {
    pub cartan_type: CartanType,
    pub levi: Vec<usize>,
}

/// Writes a model as `G/P_I`. Symplectic models with a kernel are not homogeneous, and
/// orthogonal models with `D = 4` are skipped.
pub fn realize(m: &GrassmannianModel) -> Result<Realization> {
    let all_but = |rank: usize, omit: &[usize]| -> Vec<usize> {
        (0..rank).filter(|i| !omit.contains(i)).collect()
    };
    let k = m.k as usize;
    let (cartan_type, levi) = match m.kind {
        ModelKind::Linear => {
            let n = (m.d - 1) as usize;
            (CartanType::new(Family::A, n)?, all_but(n, &[k - 1]))
        }
        ModelKind::Symplectic => {
            if m.kappa != 0 {
                return Err(Error::NoRealization(format!(
                    "{m} is not homogeneous (the form has a kernel)"
                )));
            }
            let n = (m.d / 2) as usize;
            let family = if n == 1 { Family::A } else { Family::C };
            (CartanType::new(family, n)?, all_but(n, &[k - 1]))
        }
        ModelKind::Orthogonal => {
            let n = (m.d / 2) as usize;
            if m.d % 2 == 1 {
                let family = if n == 1 { Family::A } else { Family::B };
                (CartanType::new(family, n)?, all_but(n, &[k - 1]))
            } else if n < 3 {
                return Err(Error::NoRealization(format!(
                    "{m} has a non-simple orthogonal group"
                )));
            } else if k + 1 < n {
                (CartanType::new(Family::D, n)?, all_but(n, &[k - 1]))
            } else if k + 1 == n {
                (CartanType::new(Family::D, n)?, all_but(n, &[n - 2, n - 1]))
            } else {
                (CartanType::new(Family::D, n)?, all_but(n, &[n - 1]))
            }
        }
    };
    let rs = RootSystem::build(cartan_type);
    let dim = Parabolic::new(&rs, &levi)?.dimension() as i64;
    if dim != m.dim() {
        return Err(Error::Inconsistent(format!(
            "{cartan_type} with Levi {levi:?} has dimension {dim}, expected {}",
            m.dim()
        )));
    }
    Ok(Realization { cartan_type, levi })
}

/// The one-parameter subgroup whose source is the catalogued subvariety, if any.
pub fn source_lambda(m: &GrassmannianModel, family: SubFamily) -> Option<Vec<i64>> {
    let rank = match m.kind {
        ModelKind::Linear => (m.d - 1) as usize,
        _ => (m.d / 2) as usize,
    };
    if rank == 0 {
        return None;
    }
    let mut lambda = vec![0; rank];
    match (m.kind, family) {
        (ModelKind::Linear, SubFamily::Point)
        | (ModelKind::Symplectic, SubFamily::Point)
        | (ModelKind::Orthogonal, SubFamily::Point) => lambda[0] = -1,
        (ModelKind::Linear, SubFamily::Hyperplane) => lambda[rank - 1] = -1,
        (ModelKind::Symplectic, SubFamily::Lagrangian) => lambda[rank - 1] = -2,
        _ => return None,
    }
    Some(lambda)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub model: GrassmannianModel,
    pub family: SubFamily,
    pub sub: String,
    pub fact: PositivityFact,
    pub citation: &'static str,
    /// Fixed-point certificate, when the model is homogeneous and the subvariety is a
    /// source.
    pub certificate: Option<PositivityCertificate>,
}

struct FamilyData {
    sub: String,
    dim_sub: i64,
    p: i64,
    citation: &'static str,
    note: String,
}

fn family_data(m: &GrassmannianModel, family: SubFamily) -> Result<FamilyData> {
    let mismatch = |detail: String| Error::FamilyMismatch {
        family: family.as_str(),
        kind: m.kind.as_str(),
        detail,
    };
    let sub_model = |kind, k, d, kappa| {
        GrassmannianModel::new(kind, k, d, kappa).map_err(|e| mismatch(format!(": {e}")))
    };
    let (k, d) = (m.k, m.d);
    Ok(match (m.kind, family) {
        (ModelKind::Linear, SubFamily::Point) => {
            if k < 2 {
                return Err(mismatch(": needs k ≥ 2".into()));
            }
            let s = sub_model(ModelKind::Linear, k - 1, d - 1, 0)?;
            FamilyData {
                sub: s.to_string(),
                dim_sub: s.dim(),
                p: k - 1,
                citation: "grassmannian-point-source",
                note: "subspaces through a fixed vector".into(),
            }
        }
        (ModelKind::Linear, SubFamily::Hyperplane) => {
            let s = sub_model(ModelKind::Linear, k, d - 1, 0)
                .map_err(|_| mismatch(": needs D - k ≥ 2".into()))?;
            FamilyData {
                sub: s.to_string(),
                dim_sub: s.dim(),
                p: d - k - 1,
                citation: "grassmannian-hyperplane-source",
                note: "subspaces of a fixed hyperplane (dual to the point family)".into(),
            }
        }
        (ModelKind::Symplectic, SubFamily::Hyperplane) => {
            if k < 2 {
                return Err(mismatch(": needs k ≥ 2".into()));
            }
            let s = sub_model(ModelKind::Symplectic, k, d - 1, 1 - m.kappa)?;
            FamilyData {
                sub: s.to_string(),
                dim_sub: s.dim(),
                p: d - 2 * k,
                citation: "symplectic-hyperplane-positivity",
                note: "isotropic subspaces of a hyperplane".into(),
            }
        }
        (ModelKind::Symplectic, SubFamily::Point) => {
            if k < 2 {
                return Err(mismatch(": needs k ≥ 2".into()));
            }
            let s = sub_model(ModelKind::Symplectic, k - 1, d - 2, m.kappa)?;
            FamilyData {
                sub: s.to_string(),
                dim_sub: s.dim(),
                p: k - 1,
                citation: "symplectic-point-positivity",
                note: "isotropic subspaces through a fixed vector".into(),
            }
        }
        (ModelKind::Symplectic, SubFamily::Lagrangian) => {
            if m.kappa != 0 {
                return Err(mismatch(": needs a non-degenerate form".into()));
            }
            let half = d / 2;
            FamilyData {
                sub: if k == half {
                    "point".to_string()
                } else {
                    format!("Grs({k};{half})")
                },
                dim_sub: k * (half - k),
                p: (d - 2 * k) / 2,
                citation: "lagrangian-levi-source",
                note: "subspaces of a fixed Lagrangian subspace".into(),
            }
        }
        (ModelKind::Orthogonal, SubFamily::Hyperplane) => {
            if k < 2 || d < 2 * k + 1 {
                return Err(mismatch(": needs k ≥ 2 and D ≥ 2k + 1".into()));
            }
            let s = sub_model(ModelKind::Orthogonal, k, d - 1, 0)?;
            FamilyData {
                sub: s.to_string(),
                dim_sub: s.dim(),
                p: d - 2 * k - 1,
                citation: "orthogonal-hyperplane-positivity",
                note: "isotropic subspaces of a non-degenerate hyperplane".into(),
            }
        }
        (ModelKind::Orthogonal, SubFamily::Point) => {
            let maximal = d == 2 * k;
            if k < 2 || (maximal && k < 3) {
                return Err(mismatch(": needs k ≥ 2 (k ≥ 3 when D = 2k)".into()));
            }
            let s = sub_model(ModelKind::Orthogonal, k - 1, d - 2, 0)
                .map_err(|e| mismatch(format!(": {e}")))?;
            FamilyData {
                sub: s.to_string(),
                dim_sub: s.dim(),
                p: if maximal { k - 2 } else { k - 1 },
                citation: "orthogonal-point-positivity",
                note: "isotropic subspaces through a fixed isotropic vector".into(),
            }
        }
        (ModelKind::Linear, SubFamily::Lagrangian)
        | (ModelKind::Orthogonal, SubFamily::Lagrangian) => {
            return Err(mismatch(String::new()));
        }
    })
}

/// Computes the fixed-point certificate for the catalogued subvariety, when the model
/// is homogeneous and the subvariety is the source of a known one-parameter subgroup.
pub fn certify(
    m: &GrassmannianModel,
    family: SubFamily,
    cap: usize,
) -> Result<Option<PositivityCertificate>> {
    let lambda = match source_lambda(m, family) {
        Some(l) => l,
        None => return Ok(None),
    };
    let real = match realize(m) {
        Ok(r) => r,
        Err(Error::NoRealization(_)) => return Ok(None),
        Err(e) => return Err(e),
    };
    let rs = RootSystem::build(real.cartan_type);
    match BbAnalysis::new(&rs, &real.levi, &OneParamSubgroup::new(lambda), cap) {
        Ok(bb) => Ok(Some(bb.certificate())),
        Err(Error::EnumerationCap { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Positivity of the catalogued subvariety of `m`.
pub fn catalog_ppos(m: &GrassmannianModel, family: SubFamily, cap: usize) -> Result<CatalogEntry> {
    let data = family_data(m, family)?;
    let certificate = certify(m, family, cap)?;
    let mut kind = Provenance::Asserted;
    let mut note = data.note;
    if let Some(cert) = &certificate {
        if (cert.dim - cert.codim_source) as i64 != data.dim_sub {
            return Err(Error::Inconsistent(format!(
                "source of dimension {} does not match {} of dimension {}",
                cert.dim - cert.codim_source,
                data.sub,
                data.dim_sub
            )));
        }
        match (cert.status, cert.p) {
            (CertificateStatus::Certified, Some(p)) if p == data.p => {
                kind = Provenance::Certified;
            }
            (CertificateStatus::Certified, Some(p)) => {
                return Err(Error::Inconsistent(format!(
                    "fixed-point certificate gives p = {p}, catalog gives {}",
                    data.p
                )));
            }
            _ => {
                note.push_str(&format!(
                    "; normal weights are not scalar, so only cd(X∖Y) = {} is certified and p = {} is not machine-checked",
                    cert.cd_complement, data.p
                ));
            }
        }
    }
    Ok(CatalogEntry {
        model: *m,
        family,
        sub: data.sub,
        fact: PositivityFact::new(m.dim(), data.dim_sub, data.p, kind, note)?,
        citation: data.citation,
        certificate,
    })
}

/// All catalog entries that apply to `m`, in family order.
pub fn catalog(m: &GrassmannianModel, cap: usize) -> Result<Vec<CatalogEntry>> {
    let mut out = Vec::new();
    for family in [
        SubFamily::Hyperplane,
        SubFamily::Point,
        SubFamily::Lagrangian,
    ] {
        match catalog_ppos(m, family, cap) {
            Ok(e) => out.push(e),
            Err(Error::FamilyMismatch { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

/// Renders catalog entries as a LaTeX `tabular`.
pub fn latex_table(entries: &[CatalogEntry]) -> String {
    let mut s = String::from(
        "\\begin{tabular}{llrrrl}\n\\hline\nambient & subvariety & $\\dim X$ & $\\dim Y$ & $p$ & provenance \\\\\n\\hline\n",
    );
    for e in entries {
        s.push_str(&format!(
            "${}$ & ${}$ & {} & {} & {} & {} \\\\\n",
            latex_model(&e.model.to_string()),
            latex_model(&e.sub),
            e.fact.dim_ambient,
            e.fact.dim_sub,
            e.fact.p,
            e.fact.kind.as_str()
        ));
    }
    s.push_str("\\hline\n\\end{tabular}\n");
    s
}

fn latex_model(s: &str) -> String {
    let s = s.replace(" with 1-dim kernel", "^{\\kappa=1}");
    let s = s.replace("spGrs", "\\mathrm{spGrs}");
    let s = s.replace("oGrs", "\\mathrm{oGrs}");
    if let Some(rest) = s.strip_prefix("Grs") {
        return format!("\\mathrm{{Grs}}{rest}");
    }
    if s == "point" {
        return "\\mathrm{pt}".to_string();
    }
    s
}

/// Agreement between the catalog and a fixed-point computation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossCheck {
    pub model: GrassmannianModel,
    pub family: SubFamily,
    pub realization: Realization,
    pub lambda: Vec<i64>,
    pub catalog_p: i64,
    pub certificate: PositivityCertificate,
    /// What was compared, e.g. `p` or `cd`.
    pub compared: String,
    pub expected: i64,
    pub found: i64,
    pub matches: bool,
}

/// Compares the catalog with a fixed-point computation on the homogeneous realization.
pub fn cross_validate_bb(
    m: &GrassmannianModel,
    family: SubFamily,
    cap: usize,
) -> Result<CrossCheck> {
    let data = family_data(m, family)?;
    let lambda = source_lambda(m, family).ok_or_else(|| {
        Error::NoRealization(format!(
            "no one-parameter subgroup has the {} family of {m} as its source",
            family.as_str()
        ))
    })?;
    let realization = realize(m)?;
    let rs = RootSystem::build(realization.cartan_type);
    let bb = BbAnalysis::new(
        &rs,
        &realization.levi,
        &OneParamSubgroup::new(lambda.clone()),
        cap,
    )?;
    let certificate = bb.certificate();
    let (compared, expected, found) = match certificate.p {
        Some(p) => ("p".to_string(), data.p, p),
        None => (
            "cd".to_string(),
            m.dim() - (m.u() + 1),
            certificate.cd_complement as i64,
        ),
    };
    Ok(CrossCheck {
        model: *m,
        family,
        realization,
        lambda,
        catalog_p: data.p,
        certificate,
        compared,
        expected,
        found,
        matches: expected == found,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Rule {
    HyperplaneSection,
    PointReduction,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Genericity {
    Arbitrary,
    VeryGeneral,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum HypothesisCheck {
    Pass { text: String },
    Fail { text: String },
}

impl HypothesisCheck {
    fn from_conditions(conds: &[(String, bool)]) -> Self {
        let text = conds
            .iter()
            .map(|(t, ok)| format!("{t} ({})", if *ok { "holds" } else { "fails" }))
            .collect::<Vec<_>>()
            .join(", ");
        if conds.iter().all(|c| c.1) {
            HypothesisCheck::Pass { text }
        } else {
            HypothesisCheck::Fail { text }
        }
    }

    pub fn passed(&self) -> bool {
        matches!(self, HypothesisCheck::Pass { .. })
    }

    pub fn text(&self) -> &str {
        match self {
            HypothesisCheck::Pass { text } | HypothesisCheck::Fail { text } => text,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionStep {
    pub from: GrassmannianModel,
    pub to: GrassmannianModel,
    pub rule: Rule,
    pub justification: &'static str,
    pub step_ppos: PositivityFact,
    pub hypothesis_check: HypothesisCheck,
    /// Verdict of the weaker bound obtained from the strict inequality, reported for
    /// symplectic hyperplane steps only.
    pub weak_check: Option<HypothesisCheck>,
    pub genericity: Genericity,
}

fn ineq(lhs_text: &str, lhs: i64, rhs_text: &str, rhs: i64) -> (String, bool) {
    (
        format!("{lhs_text} ≥ {rhs_text}: {lhs} ≥ {rhs}"),
        lhs >= rhs,
    )
}

/// One reduction step applied to `m`.
pub fn step(m: &GrassmannianModel, rule: Rule) -> Result<ReductionStep> {
    let (k, d, kappa) = (m.k, m.d, m.kappa);
    let reject = |why: &str| {
        Err(Error::Hypothesis(format!(
            "{} does not apply to {m}: {why}",
            match rule {
                Rule::HyperplaneSection => "hyperplane section",
                Rule::PointReduction => "point reduction",
            }
        )))
    };
    let (to, justification, conds, weak, p, genericity) = match (m.kind, rule) {
        (ModelKind::Linear, Rule::PointReduction) => {
            if k < 2 {
                return reject("needs k ≥ 2");
            }
            let p = k - 1;
            (
                GrassmannianModel::linear(k - 1, d - 1)?,
                "grassmannian-point-step",
                vec![ineq("p = k - 1", p, "2", 2)],
                None,
                p,
                Genericity::Arbitrary,
            )
        }
        (ModelKind::Linear, Rule::HyperplaneSection) => {
            if d - k < 2 {
                return reject("needs D - k ≥ 2");
            }
            let p = d - k - 1;
            (
                GrassmannianModel::linear(k, d - 1)?,
                "grassmannian-hyperplane-step",
                vec![ineq("p = D - k - 1", p, "2", 2)],
                None,
                p,
                Genericity::Arbitrary,
            )
        }
        (ModelKind::Symplectic, Rule::HyperplaneSection) => {
            let to = GrassmannianModel::symplectic(k, d - 1, 1 - kappa);
            if k < 2 || to.is_err() {
                return reject("the hyperplane section would be empty or k < 2");
            }
            (
                to?,
                "symplectic-hyperplane-step",
                vec![ineq("D - 1", d - 1, "2k + 1 + κ", 2 * k + 1 + kappa)],
                Some(HypothesisCheck::from_conditions(&[ineq(
                    "D - 1",
                    d - 1,
                    "2k + κ",
                    2 * k + kappa,
                )])),
                d - 2 * k,
                Genericity::VeryGeneral,
            )
        }
        (ModelKind::Symplectic, Rule::PointReduction) => {
            if k < 2 {
                return reject("needs k ≥ 2");
            }
            (
                GrassmannianModel::symplectic(k - 1, d - 2, kappa)?,
                "symplectic-point-step",
                vec![
                    ineq("D - 1", d - 1, "2k - 1 + κ", 2 * k - 1 + kappa),
                    ineq("k", k, "3", 3),
                ],
                None,
                k - 1,
                Genericity::VeryGeneral,
            )
        }
        (ModelKind::Orthogonal, Rule::HyperplaneSection) => {
            if k < 2 || d - 1 < 2 * k {
                return reject("needs k ≥ 2 and D - 1 ≥ 2k");
            }
            (
                GrassmannianModel::orthogonal(k, d - 1)?,
                "orthogonal-hyperplane-step",
                vec![ineq("D - 1", d - 1, "2k + 2", 2 * k + 2)],
                None,
                d - 2 * k - 1,
                Genericity::VeryGeneral,
            )
        }
        (ModelKind::Orthogonal, Rule::PointReduction) => {
            let to = GrassmannianModel::orthogonal(k - 1, d - 2);
            if k < 2 || to.is_err() {
                return reject("needs k ≥ 2 and D ≥ 2k");
            }
            (
                to?,
                "orthogonal-point-step",
                vec![
                    ineq("D - 1", d - 1, "2k - 1", 2 * k - 1),
                    ineq("k", k, "4", 4),
                ],
                None,
                if d == 2 * k { k - 2 } else { k - 1 },
                Genericity::VeryGeneral,
            )
        }
    };
    let step_ppos = PositivityFact::new(
        m.dim(),
        to.dim(),
        p,
        Provenance::Asserted,
        "closed-form positivity of the step",
    )?;
    Ok(ReductionStep {
        from: *m,
        to,
        rule,
        justification,
        step_ppos,
        hypothesis_check: HypothesisCheck::from_conditions(&conds),
        weak_check: weak,
        genericity,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionPlan {
    pub start: GrassmannianModel,
    pub steps: Vec<ReductionStep>,
    pub terminal: GrassmannianModel,
    pub theorem_terminal: GrassmannianModel,
    pub agrees: bool,
    pub genericity: Genericity,
    /// Set when genericity of the composed reduction rests on an unverified claim.
    pub composed_genericity: Option<Provenance>,
    /// Every failed per-step check and every terminal mismatch, spelled out.
    pub discrepancies: Vec<String>,
    pub citation: &'static str,
}

/// The terminal model named by the splitting theorem for `m`.
pub fn theorem_terminal(m: &GrassmannianModel) -> Result<GrassmannianModel> {
    match m.kind {
        ModelKind::Linear => {
            if m.k < 2 || m.d < m.k + 2 {
                return Err(Error::Hypothesis(format!(
                    "linear reduction needs k ≥ 2 and D ≥ k + 2, got {m}"
                )));
            }
            GrassmannianModel::linear(2, 4)
        }
        ModelKind::Symplectic => {
            if m.k < 2 {
                return Err(Error::Hypothesis(format!(
                    "symplectic reduction needs k ≥ 2, got {m}"
                )));
            }
            GrassmannianModel::symplectic(2, 4 + m.kappa, m.kappa)
        }
        ModelKind::Orthogonal => {
            if m.k < 3 {
                return Err(Error::Hypothesis(format!(
                    "orthogonal reduction needs k ≥ 3, got {m}"
                )));
            }
            let excess = (m.d - 2 * m.k).min(2);
            GrassmannianModel::orthogonal(3, 6 + excess)
        }
    }
}

/// Builds the reduction of `m` to the theorem's terminal model: hyperplane sections
/// first, then point reductions.
pub fn reduction_plan(m: &GrassmannianModel) -> Result<ReductionPlan> {
    let theorem = theorem_terminal(m)?;
    let (citation, genericity) = match m.kind {
        ModelKind::Linear => ("linear-splitting-theorem", Genericity::Arbitrary),
        ModelKind::Symplectic => ("symplectic-splitting-theorem", Genericity::VeryGeneral),
        ModelKind::Orthogonal => ("orthogonal-splitting-theorem", Genericity::VeryGeneral),
    };
    // Symplectic sections stop at D = 2k + κ of the start, so parity returns κ to its
    // starting value.
    let hyper_until = |c: &GrassmannianModel| match m.kind {
        ModelKind::Linear => c.d - c.k > 2,
        ModelKind::Symplectic => c.d > 2 * c.k + m.kappa,
        ModelKind::Orthogonal => c.d > 2 * c.k + 2,
    };
    let point_until = match m.kind {
        ModelKind::Orthogonal => 3,
        _ => 2,
    };
    let mut steps = Vec::new();
    let mut cur = *m;
    while hyper_until(&cur) {
        let s = step(&cur, Rule::HyperplaneSection)?;
        cur = s.to;
        steps.push(s);
    }
    while cur.k > point_until {
        let s = step(&cur, Rule::PointReduction)?;
        cur = s.to;
        steps.push(s);
    }
    let mut discrepancies = Vec::new();
    for (i, s) in steps.iter().enumerate() {
        if let HypothesisCheck::Fail { text } = &s.hypothesis_check {
            let weak = match &s.weak_check {
                Some(w) if w.passed() => "; the weaker bound holds",
                Some(_) => "; the weaker bound also fails",
                None => "",
            };
            discrepancies.push(format!(
                "step {} ({} -> {}): {text}{weak}",
                i + 1,
                s.from,
                s.to
            ));
        }
        if s.hypothesis_check.passed() && s.step_ppos.p < 2 {
            return Err(Error::Inconsistent(format!(
                "step {} passes its check but is only {}-positive",
                i + 1,
                s.step_ppos.p
            )));
        }
    }
    let agrees = cur == theorem;
    if !agrees {
        discrepancies.push(format!(
            "steps end at {cur} but the theorem names {theorem}"
        ));
    }
    let composed_genericity =
        (genericity == Genericity::VeryGeneral && steps.len() > 1).then_some(Provenance::Asserted);
    Ok(ReductionPlan {
        start: *m,
        steps,
        terminal: cur,
        theorem_terminal: theorem,
        agrees,
        genericity,
        composed_genericity,
        discrepancies,
        citation,
    })
}
