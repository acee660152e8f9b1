//! Parabolic subsets `I ⊆ Δ`, the varieties `G/P_I`, and the Dynkin test for
//! vanishing first cohomology of line bundles.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rootsys::{BwbResult, Root, RootSystem, Weight};

/// Default bound on the coefficient sum of `χ_+` in the witness search.
pub const DEFAULT_WITNESS_BOUND: i64 = 10;

/// A parabolic subgroup `P_I`, given by the simple roots `I` of its Levi factor.
#[derive(Debug, Clone)]
pub struct Parabolic<'a> {
    rs: &'a RootSystem,
    levi: BTreeSet<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OneSplittingReport {
    pub tilde_i: Vec<usize>,
    pub is_one_splitting: bool,
    /// A weight of `Λ(I)` whose line bundle has nonzero first cohomology.
    pub witness: Option<Weight>,
    /// The simple root orthogonal to `I` used to build the witness.
    pub perpendicular_root: Option<usize>,
    /// Set when the search bound ran out before a witness was found.
    pub search_exhausted: bool,
}

/// One step of passing from `G/P_I` to the source of a `G_m`-action, which is the
/// homogeneous variety of the Levi `G(λ)` with simple roots `Δ∖{α_0}`.
#[derive(Debug, Clone)]
pub struct IterateStep {
    pub alpha0: usize,
    /// Simple roots of `G(λ)`, as indices of the parent system.
    pub child_nodes: Vec<usize>,
    pub child_system: RootSystem,
    /// Levi of the child parabolic, as indices of `child_system`.
    pub child_levi: Vec<usize>,
    /// Pairings of a one-parameter subgroup whose source is the child variety.
    pub lambda: Vec<i64>,
}

impl<'a> Parabolic<'a> {
    pub fn new(rs: &'a RootSystem, levi: &[usize]) -> Result<Self> {
        rs.levi_mask(levi)?;
        Ok(Parabolic {
            rs,
            levi: levi.iter().copied().collect(),
        })
    }

    pub fn root_system(&self) -> &'a RootSystem {
        self.rs
    }

    pub fn levi(&self) -> Vec<usize> {
        self.levi.iter().copied().collect()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.levi.contains(&i)
    }

    /// Whether a root lies in the span of the Levi simple roots.
    pub fn in_levi_span(&self, root: &Root) -> bool {
        root.0
            .iter()
            .enumerate()
            .all(|(i, &c)| c == 0 || self.levi.contains(&i))
    }

    /// `Ψ⁻ ∖ Ψ⁻_I`: the tangent roots of `G/P_I` at the base point.
    pub fn radical_roots(&self) -> Vec<Root> {
        self.rs
            .positive_roots()
            .iter()
            .filter(|r| !self.in_levi_span(r))
            .map(|r| -r)
            .collect()
    }

    pub fn dimension(&self) -> usize {
        self.rs
            .positive_roots()
            .iter()
            .filter(|r| !self.in_levi_span(r))
            .count()
    }

    /// `{ω_α : α ∉ I}`.
    pub fn picard_lattice_basis(&self) -> Vec<Weight> {
        (0..self.rs.rank())
            .filter(|i| !self.levi.contains(i))
            .map(|i| self.rs.fundamental_weight(i))
            .collect()
    }

    pub fn in_picard_lattice(&self, weight: &Weight) -> bool {
        weight.rank() == self.rs.rank() && self.levi.iter().all(|&i| weight.0[i] == 0)
    }

    /// `I` together with every simple root adjacent to some root of `I`.
    pub fn tilde_i(&self) -> Vec<usize> {
        (0..self.rs.rank())
            .filter(|&b| {
                self.levi.contains(&b) || self.levi.iter().any(|&a| self.rs.adjacent(a, b))
            })
            .collect()
    }

    /// Simple roots outside `I` orthogonal to every root of `I`.
    pub fn perpendicular_roots(&self) -> Vec<usize> {
        (0..self.rs.rank())
            .filter(|b| !self.levi.contains(b))
            .filter(|&b| {
                self.levi
                    .iter()
                    .all(|&a| self.rs.gram()[a][b] == num_traits::Zero::zero())
            })
            .collect()
    }

    /// Decides whether every line bundle on `G/P_I` has vanishing `H^1`, producing a
    /// witness when it does not.
    pub fn one_splitting(&self, bound: i64) -> Result<OneSplittingReport> {
        let tilde = self.tilde_i();
        let by_adjacency = tilde.len() == self.rs.rank();
        let perp = self.perpendicular_roots();
        if by_adjacency != perp.is_empty() {
            return Err(Error::Inconsistent(format!(
                "adjacency test gives {by_adjacency} but perpendicular roots are {perp:?}"
            )));
        }
        let mut report = OneSplittingReport {
            tilde_i: tilde,
            is_one_splitting: by_adjacency,
            witness: None,
            perpendicular_root: None,
            search_exhausted: false,
        };
        if by_adjacency {
            return Ok(report);
        }
        let beta = perp[0];
        report.perpendicular_root = Some(beta);
        let outside: Vec<usize> = (0..self.rs.rank())
            .filter(|i| !self.levi.contains(i))
            .collect();
        let beta_w = self.rs.root_to_weight(&self.rs.simple_root(beta));
        for total in 0..=bound {
            for coeffs in compositions(total, outside.len()) {
                let mut plus = Weight::zero(self.rs.rank());
                for (&i, c) in outside.iter().zip(coeffs) {
                    plus.0[i] = c;
                }
                let chi = self.rs.simple_reflect(beta, &(&plus + &beta_w));
                debug_assert!(self.in_picard_lattice(&chi));
                if let BwbResult::NonZero { degree: 1, .. } = self.rs.bwb_cohomology(&chi)? {
                    report.witness = Some(chi);
                    return Ok(report);
                }
            }
        }
        report.search_exhausted = true;
        Ok(report)
    }

    /// Chooses `α_0 ∈ I` so that the source `G(λ)/(P_I ∩ G(λ))` of the action with
    /// Levi `Δ∖{α_0}` is again one-splitting.
    pub fn iterate_source(&self) -> Result<IterateStep> {
        if self.tilde_i().len() != self.rs.rank() {
            return Err(Error::Hypothesis("the variety is not one-splitting".into()));
        }
        let rank = self.rs.rank();
        if 2 * self.levi.len() < 1 + rank {
            return Err(Error::Hypothesis(format!(
                "2·|I| = {} is smaller than 1 + rank = {}",
                2 * self.levi.len(),
                1 + rank
            )));
        }
        let outside: Vec<usize> = (0..rank).filter(|i| !self.levi.contains(i)).collect();
        let alpha0 = self
            .levi
            .iter()
            .copied()
            .find(|&a| {
                outside.iter().all(|&b| {
                    let nbrs: Vec<usize> = self
                        .levi
                        .iter()
                        .copied()
                        .filter(|&c| self.rs.adjacent(b, c))
                        .collect();
                    nbrs != [a]
                })
            })
            .ok_or_else(|| {
                Error::Inconsistent(
                    "no simple root of I can be removed while keeping one-splitting".into(),
                )
            })?;
        let child_nodes: Vec<usize> = (0..rank).filter(|&i| i != alpha0).collect();
        let child_system = self.rs.subsystem(&child_nodes)?;
        let child_levi = child_nodes
            .iter()
            .enumerate()
            .filter(|(_, n)| self.levi.contains(n))
            .map(|(k, _)| k)
            .collect();
        let mut lambda = vec![0; rank];
        lambda[alpha0] = -1;
        Ok(IterateStep {
            alpha0,
            child_nodes,
            child_system,
            child_levi,
            lambda,
        })
    }
}

/// All vectors of `parts` non-negative integers summing to `total`, in lexicographic
/// order of their reversal (so earlier coordinates grow first).
fn compositions(total: i64, parts: usize) -> Vec<Vec<i64>> {
    if parts == 0 {
        return if total == 0 {
            vec![Vec::new()]
        } else {
            Vec::new()
        };
    }
    let mut out = Vec::new();
    for last in 0..=total {
        for mut head in compositions(total - last, parts - 1) {
            head.push(last);
            out.push(head);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::CartanType;

    fn rs(s: &str) -> RootSystem {
        RootSystem::build(s.parse::<CartanType>().unwrap())
    }

    fn binom(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn radical_root_examples() {
        let a1 = rs("A1");
        let p = Parabolic::new(&a1, &[]).unwrap();
        assert_eq!(p.radical_roots(), vec![Root(vec![-1])]);
        let a3 = rs("A3");
        assert_eq!(
            Parabolic::new(&a3, &[0, 2]).unwrap().dimension(),
            2 * (4 - 2)
        );
        let c2 = rs("C2");
        assert_eq!(Parabolic::new(&c2, &[0]).unwrap().radical_roots().len(), 3);
    }

    #[test]
    fn grassmannian_dimensions_match_k_times_n_minus_k() {
        for n in 1..=7 {
            let a = rs(&format!("A{n}"));
            for k in 1..=n {
                let levi: Vec<usize> = (0..n).filter(|&i| i != k - 1).collect();
                let p = Parabolic::new(&a, &levi).unwrap();
                assert_eq!(p.dimension(), k * (n + 1 - k));
            }
            let flag = Parabolic::new(&a, &[]).unwrap();
            assert_eq!(flag.dimension(), binom(n + 1, 2));
        }
    }

    #[test]
    fn picard_basis_examples() {
        let a3 = rs("A3");
        assert!(Parabolic::new(&a3, &[0, 1, 2])
            .unwrap()
            .picard_lattice_basis()
            .is_empty());
        assert_eq!(
            Parabolic::new(&a3, &[0, 2]).unwrap().picard_lattice_basis(),
            vec![Weight(vec![0, 1, 0])]
        );
        let a2 = rs("A2");
        assert_eq!(
            Parabolic::new(&a2, &[]).unwrap().picard_lattice_basis(),
            vec![Weight(vec![1, 0]), Weight(vec![0, 1])]
        );
    }

    #[test]
    fn tilde_examples() {
        let a3 = rs("A3");
        assert!(Parabolic::new(&a3, &[]).unwrap().tilde_i().is_empty());
        assert_eq!(Parabolic::new(&a3, &[1]).unwrap().tilde_i(), vec![0, 1, 2]);
        assert_eq!(Parabolic::new(&a3, &[0]).unwrap().tilde_i(), vec![0, 1]);
    }

    #[test]
    fn one_splitting_examples() {
        let a3 = rs("A3");
        let r = Parabolic::new(&a3, &[1])
            .unwrap()
            .one_splitting(10)
            .unwrap();
        assert!(r.is_one_splitting);
        assert!(r.witness.is_none());

        let p = Parabolic::new(&a3, &[0]).unwrap();
        let r = p.one_splitting(10).unwrap();
        assert!(!r.is_one_splitting);
        let w = r.witness.unwrap();
        assert!(p.in_picard_lattice(&w));
        assert_eq!(a3.bwb_cohomology(&w).unwrap().degree(), Some(1));

        for s in ["A1", "B2", "G2", "F4", "E6"] {
            let sys = rs(s);
            let r = Parabolic::new(&sys, &[])
                .unwrap()
                .one_splitting(10)
                .unwrap();
            assert!(!r.is_one_splitting, "{s}");
            assert!(r.witness.is_some());
        }
    }

    #[test]
    fn iterate_source_examples() {
        let a3 = rs("A3");
        let step = Parabolic::new(&a3, &[0, 1])
            .unwrap()
            .iterate_source()
            .unwrap();
        let child = Parabolic::new(&step.child_system, &step.child_levi).unwrap();
        assert!(child.one_splitting(10).unwrap().is_one_splitting);
        // removing α_2 would leave α_3 with no neighbour in I
        assert_eq!(step.alpha0, 0);

        let a5 = rs("A5");
        let step = Parabolic::new(&a5, &[0, 1, 2, 3])
            .unwrap()
            .iterate_source()
            .unwrap();
        assert_eq!(step.child_system.label(), "A4");
        let child = Parabolic::new(&step.child_system, &step.child_levi).unwrap();
        assert!(child.one_splitting(10).unwrap().is_one_splitting);

        let a1 = rs("A1");
        let step = Parabolic::new(&a1, &[0]).unwrap().iterate_source().unwrap();
        assert_eq!(step.child_system.rank(), 0);
        let child = Parabolic::new(&step.child_system, &step.child_levi).unwrap();
        assert_eq!(child.dimension(), 0);
        assert!(child.one_splitting(10).unwrap().is_one_splitting);
    }

    #[test]
    fn iterate_source_rejections() {
        let a3 = rs("A3");
        assert!(matches!(
            Parabolic::new(&a3, &[1]).unwrap().iterate_source(),
            Err(Error::Hypothesis(_))
        ));
        assert!(matches!(
            Parabolic::new(&a3, &[0]).unwrap().iterate_source(),
            Err(Error::Hypothesis(_))
        ));
    }

    #[test]
    fn compositions_enumerate_simplex() {
        assert_eq!(compositions(0, 0), vec![Vec::<i64>::new()]);
        assert_eq!(compositions(2, 2), vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert_eq!(compositions(3, 3).len(), binom(5, 2));
    }
}
