//! Integer bookkeeping for positivity of subvarieties.
//!
//! A subvariety `Y ⊂ X` is called `p`-positive when it is `q`-ample with
//! `q = dim Y - p`. The functions here only transform indices; none of them asserts that
//! any geometric object exists. Each value that leaves this module is tagged with a
//! [`Provenance`].

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Where a number came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Provenance {
    /// Computed by this crate by exact enumeration, e.g. a fixed-point analysis.
    Certified,
    /// Taken from a published statement without machine verification.
    Asserted,
    /// Obtained by applying the arithmetic rules of this module.
    Derived,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::Certified => "Certified",
            Provenance::Asserted => "Asserted",
            Provenance::Derived => "Derived",
        }
    }
}

/// `Y ⊂ X` is `p`-positive.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PositivityFact {
    pub dim_ambient: i64,
    pub dim_sub: i64,
    pub p: i64,
    pub kind: Provenance,
    pub note: String,
}

impl PositivityFact {
    pub fn new(
        dim_ambient: i64,
        dim_sub: i64,
        p: i64,
        kind: Provenance,
        note: impl Into<String>,
    ) -> Result<Self> {
        if dim_sub < 0 || dim_sub >= dim_ambient {
            return Err(Error::Hypothesis(format!(
                "need 0 ≤ dim Y < dim X, got dim Y = {dim_sub}, dim X = {dim_ambient}"
            )));
        }
        if p > dim_sub {
            return Err(Error::Hypothesis(format!(
                "positivity index {p} exceeds dim Y = {dim_sub}"
            )));
        }
        Ok(PositivityFact {
            dim_ambient,
            dim_sub,
            p,
            kind,
            note: note.into(),
        })
    }

    pub fn codim(&self) -> i64 {
        self.dim_ambient - self.dim_sub
    }

    /// The equivalent ampleness index `q = dim Y - p`.
    pub fn q(&self) -> i64 {
        ppos_to_qample(self.dim_sub, self.p)
    }
}

/// An amplitude index `q` for a line or vector bundle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AmpleBound {
    pub q: i64,
    pub context: String,
}

pub fn qample_to_ppos(dim_sub: i64, q: i64) -> i64 {
    dim_sub - q
}

pub fn ppos_to_qample(dim_sub: i64, p: i64) -> i64 {
    dim_sub - p
}

/// Amplitude of the exceptional divisor of the blow-up along a `q`-ample subvariety of
/// codimension `δ`.
pub fn blowup_index(q: i64, delta: i64) -> Result<i64> {
    if delta < 1 {
        return Err(Error::Hypothesis(format!(
            "codimension must be ≥ 1, got {delta}"
        )));
    }
    Ok(q + delta - 1)
}

/// Recovers `q` from the exceptional-divisor amplitude.
pub fn blowup_index_inverse(q_exceptional: i64, delta: i64) -> Result<i64> {
    if delta < 1 {
        return Err(Error::Hypothesis(format!(
            "codimension must be ≥ 1, got {delta}"
        )));
    }
    Ok(q_exceptional - delta + 1)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transitivity {
    /// The normal bundle of `Z` in `X` is this-ample.
    pub normal_ample_bound: i64,
    /// Upper bound for `cd(X ∖ Z)`.
    pub cd_bound: i64,
    /// `Z ⊂ X` is `p_composed`-positive.
    pub p_composed: i64,
    /// `min(r, p)`, valid only in the approximate sense recorded in `note`.
    pub p_approx: i64,
    pub note: String,
}

/// Composes `Z ⊂ Y` (`p`-positive) with `Y ⊂ X` (`r`-positive).
pub fn transitivity(dim_x: i64, dim_y: i64, dim_z: i64, r: i64, p: i64) -> Result<Transitivity> {
    if !(0 <= dim_z && dim_z <= dim_y && dim_y <= dim_x) {
        return Err(Error::Hypothesis(format!(
            "need dim Z ≤ dim Y ≤ dim X, got {dim_z}, {dim_y}, {dim_x}"
        )));
    }
    if p > dim_z || r > dim_y {
        return Err(Error::Hypothesis(format!(
            "need p ≤ dim Z and r ≤ dim Y, got p = {p}, r = {r}"
        )));
    }
    Ok(Transitivity {
        normal_ample_bound: dim_y + dim_z - (r + p),
        cd_bound: dim_x - (r.min(p) + 1),
        p_composed: p - (dim_y - r),
        p_approx: r.min(p),
        note: "p_approx holds only for cohomology restricted through the formal \
               neighbourhood (approximate positivity), not in the strict sense"
            .to_string(),
    })
}

/// Positivity from the dimension of the image of the evaluation map.
pub fn fiber_criterion(dim_x_total: i64, dim_image: i64) -> Result<i64> {
    if dim_image >= dim_x_total || dim_image < 0 {
        return Err(Error::Hypothesis(format!(
            "need 0 ≤ dim image < dim X, got {dim_image} and {dim_x_total}"
        )));
    }
    Ok(dim_x_total - dim_image - 1)
}

/// Positivity of the zero locus of a section of a `q`-ample rank `ν` bundle.
pub fn sommese_zero_locus_ppos(dim_x: i64, nu: i64, q: i64) -> Result<i64> {
    if nu < 1 || q < 0 || q > dim_x {
        return Err(Error::Hypothesis(format!(
            "need ν ≥ 1 and 0 ≤ q ≤ dim X, got ν = {nu}, q = {q}, dim X = {dim_x}"
        )));
    }
    Ok(dim_x - nu - q)
}

/// Positivity is preserved by flat pullback.
pub fn pullback_ppos(p: i64) -> i64 {
    p
}

/// Amplitude of a pulled-back line bundle along a smooth map with `d`-dimensional fibres.
pub fn pullback_line_amplitude(q: i64, d: i64) -> Result<i64> {
    if d < 0 {
        return Err(Error::Hypothesis(format!(
            "fibre dimension must be ≥ 0, got {d}"
        )));
    }
    Ok(q + d)
}

/// Whether double and triple intersections of generic translates of a `p`-positive
/// subvariety of codimension `δ` are nonempty and connected.
pub fn intersections_ok(delta: i64, p: i64) -> Result<bool> {
    if delta < 1 {
        return Err(Error::Hypothesis(format!(
            "codimension must be ≥ 1, got {delta}"
        )));
    }
    Ok(2 * delta + 1 <= p)
}

/// The same check phrased through `cd(X ∖ Y)`.
pub fn intersections_ok_cd(dim_x: i64, delta: i64, cd: i64) -> Result<bool> {
    if delta < 1 {
        return Err(Error::Hypothesis(format!(
            "codimension must be ≥ 1, got {delta}"
        )));
    }
    Ok(cd <= dim_x - 2 * delta - 2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ZeroLocusVariant {
    /// Uses the amplitude `q` of the bundle.
    Sommese,
    /// Uses the dimension of the fibres of the evaluation map.
    Fiber,
}

/// Picard-group condition for zero loci of rank `ν` bundles. The last argument is `q`
/// for [`ZeroLocusVariant::Sommese`] and the fibre dimension for
/// [`ZeroLocusVariant::Fiber`]; `dim_x` is ignored by the latter.
pub fn pic_0loci_check(variant: ZeroLocusVariant, dim_x: i64, nu: i64, value: i64) -> bool {
    match variant {
        ZeroLocusVariant::Sommese => {
            if nu >= 2 {
                dim_x - value >= 3 * nu + 1
            } else {
                dim_x - value >= 5
            }
        }
        ZeroLocusVariant::Fiber => nu >= 2 && value >= 2 * (nu + 1),
    }
}

/// Restriction of Picard groups to a `p`-positive subvariety is an isomorphism.
pub fn pic_restriction_iso(p: i64) -> bool {
    p >= 3
}

/// The two positivity estimates for the zero locus `Grs(ν+u; ν)` of a generic section
/// of the universal quotient bundle on `Grs(ν+u+1; ν)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SommeseComparison {
    pub nu: i64,
    pub u: i64,
    pub dim_x: i64,
    pub p_fiber: i64,
    pub p_sommese: i64,
}

impl SommeseComparison {
    pub fn difference(&self) -> i64 {
        self.p_fiber - self.p_sommese
    }
}

/// Compares the fibre criterion with Sommese's criterion on the Grassmannian of
/// `ν`-dimensional quotients of a `(ν+u+1)`-dimensional space.
pub fn sommese_vs_fiber(nu: i64, u: i64) -> Result<SommeseComparison> {
    if nu < 1 || u < 0 {
        return Err(Error::Hypothesis(format!(
            "need ν ≥ 1 and u ≥ 0, got ν = {nu}, u = {u}"
        )));
    }
    let dim_x = nu * (u + 1);
    let dim_image = (nu - 1) * (u + 1);
    let p_fiber = fiber_criterion(dim_x, dim_image)?;
    let q = dim_x - (u + 1);
    let p_sommese = sommese_zero_locus_ppos(dim_x, nu, q)?;
    Ok(SommeseComparison {
        nu,
        u,
        dim_x,
        p_fiber,
        p_sommese,
    })
}
