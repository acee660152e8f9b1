//! Bialynicki-Birula decompositions of `X = G/P_I` under a one-parameter subgroup `λ`
//! of the maximal torus.
//!
//! `λ` is given by its pairings `⟨α_i, λ⟩` with the simple roots. The tangent space of
//! `X` at the base point has roots `Ψ⁻ ∖ Ψ⁻_I`; at the fixed point `w P_I` the roots are
//! moved by `w`. The source is the fixed component with no negative tangent weight.
//!
//! Translations of the usual matrix-form subgroups into pairings:
//!
//! | variety                  | type  | `λ`                 |
//! |--------------------------|-------|---------------------|
//! | `Grs(k; D)`, point       | `A`   | `(-1, 0, ..., 0)`   |
//! | `spGrs(k; D)`, point     | `C`   | `(-1, 0, ..., 0)`   |
//! | `spGrs(k; D)`, Lagrangian| `C`   | `(0, ..., 0, -2)`   |
//! | `oGrs(k; D)`, point      | `B/D` | `(-1, 0, ..., 0)`   |

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::parabolic::{Parabolic, DEFAULT_WITNESS_BOUND};
use crate::rootsys::{Root, RootSystem, Weight, WeylElement};

/// A cocharacter of the maximal torus, recorded by its pairings with the simple roots.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct OneParamSubgroup {
    pub pairings: Vec<i64>,
}

impl OneParamSubgroup {
    pub fn new(pairings: Vec<i64>) -> Self {
        OneParamSubgroup { pairings }
    }

    /// `⟨γ, λ⟩` for a root (or any vector) in the simple-root basis.
    pub fn pair(&self, root: &Root) -> i64 {
        root.0.iter().zip(&self.pairings).map(|(k, l)| k * l).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.pairings.iter().all(|&l| l == 0)
    }

    pub fn negated(&self) -> Self {
        OneParamSubgroup::new(self.pairings.iter().map(|l| -l).collect())
    }

    pub fn scaled(&self, c: i64) -> Self {
        OneParamSubgroup::new(self.pairings.iter().map(|l| c * l).collect())
    }
}

impl From<Vec<i64>> for OneParamSubgroup {
    fn from(v: Vec<i64>) -> Self {
        OneParamSubgroup::new(v)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedComponent {
    /// Minimal-length coset representative lying in the component.
    pub rep: WeylElement,
    /// Minimal coset representatives of all torus-fixed points in the component.
    pub orbit: Vec<WeylElement>,
    pub comp_dim: usize,
    pub plus_cell_dim: usize,
    pub pos_count: usize,
    pub neg_count: usize,
    /// Sorted multiset of tangent `λ`-weights at the representative.
    pub weights: Vec<i64>,
    pub is_source: bool,
    pub is_sink: bool,
}

impl FixedComponent {
    pub fn minus_cell_dim(&self) -> usize {
        self.comp_dim + self.neg_count
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CertificateStatus {
    /// `p` follows because `λ` acts on the normal bundle of the source by a scalar.
    Certified,
    /// Only the cohomological dimension of the complement is known.
    CdOnly,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PositivityCertificate {
    pub status: CertificateStatus,
    pub p: Option<i64>,
    pub dim: usize,
    pub cd_complement: usize,
    pub gap: usize,
    pub scalar_weight: Option<i64>,
    pub codim_source: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitHomogReport {
    pub one_splitting: bool,
    pub gap: usize,
    pub codim: usize,
    /// `gap ≥ 2·codim + 2`.
    pub gap_bound: bool,
    /// `2·codim + 2 ≥ 6`.
    pub codim_bound: bool,
    pub inequality_holds: bool,
    /// `codim + 2 ≤ gap`, the condition for the Picard group of generic double
    /// intersections of sources.
    pub double_intersection_bound: bool,
    pub transversality: String,
}

/// The full decomposition data for one `(G/P_I, λ)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BbAnalysis {
    pub dim: usize,
    pub components: Vec<FixedComponent>,
    pub source: usize,
    pub sink: usize,
}

struct PointData {
    weights: Vec<i64>,
}

fn tangent_weights(rs: &RootSystem, mu: &Weight, lambda: &OneParamSubgroup) -> Vec<i64> {
    let mut out = Vec::new();
    for (k, root) in rs.positive_roots().iter().enumerate() {
        let p: i64 = rs
            .positive_coroot(k)
            .iter()
            .zip(&mu.0)
            .map(|(c, x)| c * x)
            .sum();
        if p < 0 {
            out.push(lambda.pair(root));
        } else if p > 0 {
            out.push(-lambda.pair(root));
        }
    }
    out.sort_unstable();
    out
}

/// Simple roots of the subsystem `{γ : ⟨γ, λ⟩ = 0}`, as positive-root indices.
fn zero_simple_roots(rs: &RootSystem, lambda: &OneParamSubgroup) -> Vec<usize> {
    let zero: Vec<usize> = (0..rs.positive_roots().len())
        .filter(|&k| lambda.pair(&rs.positive_roots()[k]) == 0)
        .collect();
    let set: std::collections::HashSet<&Vec<i64>> =
        zero.iter().map(|&k| &rs.positive_roots()[k].0).collect();
    zero.iter()
        .copied()
        .filter(|&k| {
            let g = &rs.positive_roots()[k].0;
            !zero.iter().any(|&j| {
                let a = &rs.positive_roots()[j].0;
                let diff: Vec<i64> = g.iter().zip(a).map(|(x, y)| x - y).collect();
                diff.iter().all(|&c| c >= 0) && diff.iter().any(|&c| c > 0) && set.contains(&diff)
            })
        })
        .collect()
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

impl BbAnalysis {
    pub fn new(
        rs: &RootSystem,
        levi: &[usize],
        lambda: &OneParamSubgroup,
        cap: usize,
    ) -> Result<Self> {
        if lambda.pairings.len() != rs.rank() {
            return Err(Error::LengthMismatch {
                what: "lambda",
                expected: rs.rank(),
                found: lambda.pairings.len(),
            });
        }
        let dim = Parabolic::new(rs, levi)?.dimension();
        let points = rs.coset_orbit(levi, cap)?;
        let index: HashMap<&Weight, usize> = points
            .iter()
            .enumerate()
            .map(|(k, p)| (&p.weight, k))
            .collect();

        let mut parent: Vec<usize> = (0..points.len()).collect();
        for k in zero_simple_roots(rs, lambda) {
            let coroot = rs.positive_coroot(k);
            let gw = rs.positive_root_weight(k);
            for (a, p) in points.iter().enumerate() {
                let c: i64 = coroot.iter().zip(&p.weight.0).map(|(x, y)| x * y).sum();
                if c == 0 {
                    continue;
                }
                let image = Weight(
                    p.weight
                        .0
                        .iter()
                        .zip(&gw.0)
                        .map(|(x, g)| x - c * g)
                        .collect(),
                );
                let b = *index
                    .get(&image)
                    .ok_or_else(|| Error::Inconsistent("reflection left the Weyl orbit".into()))?;
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                if ra != rb {
                    parent[ra.max(rb)] = ra.min(rb);
                }
            }
        }

        let data: Vec<PointData> = points
            .iter()
            .map(|p| PointData {
                weights: tangent_weights(rs, &p.weight, lambda),
            })
            .collect();

        let mut groups: Vec<(usize, Vec<usize>)> = Vec::new();
        let mut slot: HashMap<usize, usize> = HashMap::new();
        for a in 0..points.len() {
            let r = find(&mut parent, a);
            let g = *slot.entry(r).or_insert_with(|| {
                groups.push((a, Vec::new()));
                groups.len() - 1
            });
            groups[g].1.push(a);
        }
        if groups.len() < 2 {
            return Err(Error::TrivialAction);
        }

        let mut components = Vec::with_capacity(groups.len());
        for (rep, members) in groups {
            let weights = data[rep].weights.clone();
            for &m in &members {
                if data[m].weights != weights {
                    return Err(Error::Inconsistent(format!(
                        "tangent weights differ inside the component of {:?}",
                        points[rep].element.word()
                    )));
                }
            }
            let comp_dim = weights.iter().filter(|&&x| x == 0).count();
            let pos_count = weights.iter().filter(|&&x| x > 0).count();
            let neg_count = weights.iter().filter(|&&x| x < 0).count();
            debug_assert_eq!(comp_dim + pos_count + neg_count, dim);
            components.push(FixedComponent {
                rep: points[rep].element.clone(),
                orbit: members.iter().map(|&m| points[m].element.clone()).collect(),
                comp_dim,
                plus_cell_dim: comp_dim + pos_count,
                pos_count,
                neg_count,
                weights,
                is_source: neg_count == 0,
                is_sink: pos_count == 0,
            });
        }
        components.sort_by(|a, b| a.rep.word().cmp(b.rep.word()));

        let sources: Vec<usize> = (0..components.len())
            .filter(|&c| components[c].is_source)
            .collect();
        let sinks: Vec<usize> = (0..components.len())
            .filter(|&c| components[c].is_sink)
            .collect();
        if sources.len() != 1 || sinks.len() != 1 {
            return Err(Error::Inconsistent(format!(
                "found {} sources and {} sinks",
                sources.len(),
                sinks.len()
            )));
        }
        Ok(BbAnalysis {
            dim,
            components,
            source: sources[0],
            sink: sinks[0],
        })
    }

    pub fn source(&self) -> &FixedComponent {
        &self.components[self.source]
    }

    pub fn sink(&self) -> &FixedComponent {
        &self.components[self.sink]
    }

    /// `cd(X ∖ Y) = dim(X ∖ Y⁺)`, the largest plus cell other than the source's.
    pub fn cd_complement(&self) -> usize {
        self.components
            .iter()
            .filter(|c| !c.is_source)
            .map(|c| c.plus_cell_dim)
            .max()
            .unwrap_or(0)
    }

    /// `dim X - dim(X ∖ Y⁺)`.
    pub fn gap(&self) -> usize {
        self.dim - self.cd_complement()
    }

    pub fn codim_source(&self) -> usize {
        self.dim - self.source().comp_dim
    }

    /// Whether `λ` acts on the normal bundle of the source by a single weight, checked
    /// at every torus-fixed point of the source.
    pub fn normal_is_scalar(&self) -> (bool, Option<i64>) {
        let positive: Vec<i64> = self
            .source()
            .weights
            .iter()
            .copied()
            .filter(|&x| x > 0)
            .collect();
        match positive.first() {
            Some(&w) if positive.iter().all(|&x| x == w) => (true, Some(w)),
            _ => (false, None),
        }
    }

    pub fn certificate(&self) -> PositivityCertificate {
        let (scalar, weight) = self.normal_is_scalar();
        let cd = self.cd_complement();
        let gap = self.gap();
        PositivityCertificate {
            status: if scalar {
                CertificateStatus::Certified
            } else {
                CertificateStatus::CdOnly
            },
            p: scalar.then_some(gap as i64 - 1),
            dim: self.dim,
            cd_complement: cd,
            gap,
            scalar_weight: weight,
            codim_source: self.codim_source(),
        }
    }

    pub fn pic_source_iso(&self) -> bool {
        self.gap() >= 2
    }
}

/// Transversality of generic translates of the source is not decided by this crate.
pub const TRANSVERSALITY_NOT_CHECKED: &str =
    "not checked: transversality is outside the scope of this tool";

pub fn fixed_components(
    rs: &RootSystem,
    levi: &[usize],
    lambda: &OneParamSubgroup,
    cap: usize,
) -> Result<Vec<FixedComponent>> {
    Ok(BbAnalysis::new(rs, levi, lambda, cap)?.components)
}

pub fn cd_complement(
    rs: &RootSystem,
    levi: &[usize],
    lambda: &OneParamSubgroup,
    cap: usize,
) -> Result<usize> {
    Ok(BbAnalysis::new(rs, levi, lambda, cap)?.cd_complement())
}

pub fn normal_is_scalar(
    rs: &RootSystem,
    levi: &[usize],
    lambda: &OneParamSubgroup,
    cap: usize,
) -> Result<(bool, Option<i64>)> {
    Ok(BbAnalysis::new(rs, levi, lambda, cap)?.normal_is_scalar())
}

pub fn ppos_certificate(
    rs: &RootSystem,
    levi: &[usize],
    lambda: &OneParamSubgroup,
    cap: usize,
) -> Result<PositivityCertificate> {
    Ok(BbAnalysis::new(rs, levi, lambda, cap)?.certificate())
}

pub fn pic_source_iso(
    rs: &RootSystem,
    levi: &[usize],
    lambda: &OneParamSubgroup,
    cap: usize,
) -> Result<bool> {
    Ok(BbAnalysis::new(rs, levi, lambda, cap)?.pic_source_iso())
}

/// Evaluates the numerical hypotheses for splitting along sources on `G/P_I`.
pub fn check_split_homog(
    rs: &RootSystem,
    levi: &[usize],
    lambda: &OneParamSubgroup,
    cap: usize,
) -> Result<SplitHomogReport> {
    let bb = BbAnalysis::new(rs, levi, lambda, cap)?;
    let one_splitting = Parabolic::new(rs, levi)?
        .one_splitting(DEFAULT_WITNESS_BOUND)?
        .is_one_splitting;
    let gap = bb.gap();
    let codim = bb.codim_source();
    let gap_bound = gap >= 2 * codim + 2;
    let codim_bound = 2 * codim + 2 >= 6;
    Ok(SplitHomogReport {
        one_splitting,
        gap,
        codim,
        gap_bound,
        codim_bound,
        inequality_holds: gap_bound && codim_bound,
        double_intersection_bound: codim + 2 <= gap,
        transversality: TRANSVERSALITY_NOT_CHECKED.to_string(),
    })
}
