//! Parabolic, fixed-point and Grassmannian computations checked against direct
//! enumeration and classical formulas.

use proptest::prelude::*;
use splitcheck::bbfix::{BbAnalysis, CertificateStatus, OneParamSubgroup};
use splitcheck::grassmod::{
    catalog, cross_validate_bb, realize, reduction_plan, GrassmannianModel, ModelKind, Rule,
};
use splitcheck::parabolic::{Parabolic, DEFAULT_WITNESS_BOUND};
use splitcheck::rootsys::{BwbResult, CartanType, RootSystem, Weight, DEFAULT_WEYL_CAP};

fn rs(s: &str) -> RootSystem {
    RootSystem::build(s.parse::<CartanType>().unwrap())
}

fn subsets(n: usize) -> Vec<Vec<usize>> {
    (0u32..(1 << n))
        .map(|mask| (0..n).filter(|i| mask >> i & 1 == 1).collect())
        .collect()
}

/// Every weight of the Picard lattice with coordinates in `-r..=r`.
fn picard_box(rank: usize, levi: &[usize], r: i64) -> Vec<Weight> {
    let free: Vec<usize> = (0..rank).filter(|i| !levi.contains(i)).collect();
    let mut out = Vec::new();
    let mut coeffs = vec![-r; free.len()];
    loop {
        let mut w = Weight::zero(rank);
        for (&i, &c) in free.iter().zip(&coeffs) {
            w.0[i] = c;
        }
        out.push(w);
        let mut k = 0;
        while k < free.len() && coeffs[k] == r {
            coeffs[k] = -r;
            k += 1;
        }
        if k == free.len() {
            return out;
        }
        coeffs[k] += 1;
    }
}

#[test]
fn one_splitting_agrees_with_bounded_cohomology_search() {
    for t in ["A3", "A4", "B3", "C3", "D4", "G2", "B4"] {
        let sys = rs(t);
        for levi in subsets(sys.rank()) {
            if levi.len() == sys.rank() {
                continue;
            }
            let par = Parabolic::new(&sys, &levi).unwrap();
            let report = par.one_splitting(DEFAULT_WITNESS_BOUND).unwrap();
            let h1_found = picard_box(sys.rank(), &levi, 4).iter().any(|chi| {
                matches!(
                    sys.bwb_cohomology(chi).unwrap(),
                    BwbResult::NonZero { degree: 1, .. }
                )
            });
            assert_eq!(report.is_one_splitting, !h1_found, "{t} I={levi:?}");
            if let Some(w) = &report.witness {
                assert!(par.in_picard_lattice(w));
                assert!(matches!(
                    sys.bwb_cohomology(w).unwrap(),
                    BwbResult::NonZero { degree: 1, .. }
                ));
            }
            assert_eq!(report.is_one_splitting, report.witness.is_none());
        }
    }
}

#[test]
fn pos_count_is_bruhat_length_for_regular_dominant_action() {
    for t in ["A3", "B3", "C3", "D4", "G2"] {
        let sys = rs(t);
        let n = sys.rank();
        for levi in subsets(n) {
            if levi.len() == n {
                continue;
            }
            let dominant = OneParamSubgroup::new((1..=n as i64).collect());
            let bb = BbAnalysis::new(&sys, &levi, &dominant, DEFAULT_WEYL_CAP).unwrap();
            let reps = sys.minimal_coset_reps(&levi, DEFAULT_WEYL_CAP).unwrap();
            assert_eq!(bb.components.len(), reps.len());
            for c in &bb.components {
                assert_eq!(c.comp_dim, 0);
                assert_eq!(c.orbit.len(), 1);
                assert_eq!(c.pos_count, c.rep.length(), "{t} {levi:?}");
                assert_eq!(c.pos_count + c.neg_count, bb.dim);
            }
            let anti = BbAnalysis::new(&sys, &levi, &dominant.negated(), DEFAULT_WEYL_CAP).unwrap();
            for c in &anti.components {
                assert_eq!(c.neg_count, c.rep.length(), "{t} {levi:?}");
            }
        }
    }
}

#[test]
fn fixed_points_partition_among_components() {
    for (t, levi, lambda) in [
        ("A3", vec![0, 2], vec![-1, 0, 0]),
        ("C3", vec![0, 2], vec![0, 0, -2]),
        ("C3", vec![0, 2], vec![-1, 0, 0]),
        ("B3", vec![1], vec![0, 1, -1]),
        ("D4", vec![1, 2], vec![1, 0, 0, -1]),
    ] {
        let sys = rs(t);
        let bb = BbAnalysis::new(
            &sys,
            &levi,
            &OneParamSubgroup::new(lambda),
            DEFAULT_WEYL_CAP,
        )
        .unwrap();
        let points: usize = bb.components.iter().map(|c| c.orbit.len()).sum();
        let reps = sys.minimal_coset_reps(&levi, DEFAULT_WEYL_CAP).unwrap();
        assert_eq!(points, reps.len(), "{t}");
        for c in &bb.components {
            assert_eq!(c.comp_dim + c.pos_count + c.neg_count, bb.dim);
            assert_eq!(c.weights.len(), bb.dim);
            assert_eq!(c.weights.iter().filter(|&&x| x == 0).count(), c.comp_dim);
        }
        assert_eq!(bb.source().neg_count, 0);
        assert_eq!(bb.sink().pos_count, 0);
    }
}

#[test]
fn negating_lambda_swaps_source_and_sink() {
    for (t, levi, lambda) in [
        ("A3", vec![0, 2], vec![-1, 0, 0]),
        ("C3", vec![0, 2], vec![0, 0, -2]),
        ("A4", vec![1], vec![2, -1, 0, 1]),
        ("B3", vec![0], vec![0, -1, 1]),
    ] {
        let sys = rs(t);
        let l = OneParamSubgroup::new(lambda);
        let a = BbAnalysis::new(&sys, &levi, &l, DEFAULT_WEYL_CAP).unwrap();
        let b = BbAnalysis::new(&sys, &levi, &l.negated(), DEFAULT_WEYL_CAP).unwrap();
        let orbit = |bb: &BbAnalysis, k: usize| {
            let mut o: Vec<_> = bb.components[k]
                .orbit
                .iter()
                .map(|w| w.word().to_vec())
                .collect();
            o.sort();
            o
        };
        assert_eq!(orbit(&a, a.source), orbit(&b, b.sink), "{t}");
        assert_eq!(orbit(&a, a.sink), orbit(&b, b.source), "{t}");
        assert_eq!(a.source().comp_dim, b.sink().comp_dim);
    }
}

#[test]
fn certificates_are_invariant_under_positive_scaling() {
    for (t, levi, lambda) in [
        ("A3", vec![0, 2], vec![-1, 0, 0]),
        ("C3", vec![0, 2], vec![0, 0, -2]),
        ("C3", vec![0, 2], vec![-1, 0, 0]),
    ] {
        let sys = rs(t);
        let l = OneParamSubgroup::new(lambda);
        let base = BbAnalysis::new(&sys, &levi, &l, DEFAULT_WEYL_CAP)
            .unwrap()
            .certificate();
        for c in 2..=4 {
            let scaled = BbAnalysis::new(&sys, &levi, &l.scaled(c), DEFAULT_WEYL_CAP)
                .unwrap()
                .certificate();
            assert_eq!(scaled.status, base.status);
            assert_eq!(scaled.p, base.p);
            assert_eq!(scaled.cd_complement, base.cd_complement);
            assert_eq!(scaled.gap, base.gap);
            assert_eq!(scaled.scalar_weight, base.scalar_weight.map(|s| s * c));
        }
    }
}

#[test]
fn certified_p_matches_cd_of_complement() {
    let sys = rs("A3");
    let cert = BbAnalysis::new(
        &sys,
        &[0, 2],
        &OneParamSubgroup::new(vec![-1, 0, 0]),
        DEFAULT_WEYL_CAP,
    )
    .unwrap()
    .certificate();
    assert_eq!(cert.status, CertificateStatus::Certified);
    assert_eq!(cert.p, Some((cert.dim - cert.cd_complement) as i64 - 1));
}

fn binom(n: i64, k: i64) -> i64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Dimensions from the tangent space `Hom(W, V/W)` cut down by the isotropy conditions.
fn classical_dim(m: &GrassmannianModel) -> i64 {
    let hom = m.k * (m.d - m.k);
    match m.kind {
        ModelKind::Linear => hom,
        ModelKind::Symplectic => hom - binom(m.k, 2),
        ModelKind::Orthogonal => hom - binom(m.k + 1, 2),
    }
}

fn all_models(max_d: i64) -> Vec<GrassmannianModel> {
    let mut out = Vec::new();
    for d in 2..=max_d {
        for k in 1..=d {
            for kappa in 0..=1 {
                for kind in [
                    ModelKind::Linear,
                    ModelKind::Symplectic,
                    ModelKind::Orthogonal,
                ] {
                    if let Ok(m) = GrassmannianModel::new(kind, k, d, kappa) {
                        out.push(m);
                    }
                }
            }
        }
    }
    out
}

#[test]
fn model_dimensions_match_classical_formulas() {
    for m in all_models(20) {
        assert_eq!(m.dim(), classical_dim(&m), "{m}");
    }
}

#[test]
fn realizations_have_the_model_dimension() {
    let mut realized = 0;
    for m in all_models(11) {
        if let Ok(r) = realize(&m) {
            let sys = RootSystem::build(r.cartan_type);
            let dim = Parabolic::new(&sys, &r.levi).unwrap().dimension() as i64;
            assert_eq!(dim, classical_dim(&m), "{m}");
            realized += 1;
        }
    }
    assert!(realized > 50);
}

#[test]
fn catalog_cross_checks_agree() {
    for m in all_models(10) {
        let Ok(entries) = catalog(&m, DEFAULT_WEYL_CAP) else {
            continue;
        };
        for e in entries {
            if e.certificate.is_none() {
                continue;
            }
            let check = cross_validate_bb(&m, e.family, DEFAULT_WEYL_CAP).unwrap();
            assert!(check.matches, "{m} {:?}: {check:?}", e.family);
        }
    }
}

#[test]
fn reduction_plans_are_well_formed() {
    for m in all_models(16) {
        let Ok(plan) = reduction_plan(&m) else {
            continue;
        };
        let mut current = plan.start;
        for s in &plan.steps {
            assert_eq!(s.from, current);
            assert_eq!(s.to.kind, m.kind);
            let point_drop = if m.kind == ModelKind::Linear { 1 } else { 2 };
            match s.rule {
                Rule::HyperplaneSection => {
                    assert_eq!((s.to.k, s.to.d), (s.from.k, s.from.d - 1));
                    if m.kind == ModelKind::Symplectic {
                        assert_eq!(s.to.kappa, 1 - s.from.kappa);
                    }
                }
                Rule::PointReduction => {
                    assert_eq!((s.to.k, s.to.d), (s.from.k - 1, s.from.d - point_drop));
                    assert_eq!(s.to.kappa, s.from.kappa);
                }
            }
            if s.hypothesis_check.passed() {
                assert!(s.step_ppos.p >= 2, "{m}: {s:?}");
            }
            if m.kind == ModelKind::Symplectic {
                assert_eq!((s.to.d - s.to.kappa) % 2, 0);
            }
            if m.kind == ModelKind::Linear {
                assert!(s.hypothesis_check.passed(), "{m}: {s:?}");
            }
            current = s.to;
        }
        assert_eq!(plan.terminal, current);
        assert_eq!(plan.agrees, plan.terminal == plan.theorem_terminal);
        if m.kind == ModelKind::Linear {
            assert!(plan.discrepancies.is_empty(), "{m}");
        }
    }
}

proptest! {
    #[test]
    fn reduction_plan_is_deterministic(k in 2i64..6, extra in 0i64..8, kappa in 0i64..2) {
        let d = 2 * k + kappa + 2 * (extra / 2);
        let m = GrassmannianModel::symplectic(k, d, kappa).unwrap();
        prop_assert_eq!(reduction_plan(&m).unwrap(), reduction_plan(&m).unwrap());
    }

    #[test]
    fn linear_dimension_is_symmetric(k in 1i64..12, extra in 1i64..12) {
        let d = k + extra;
        let a = GrassmannianModel::linear(k, d).unwrap();
        let b = GrassmannianModel::linear(d - k, d).unwrap();
        prop_assert_eq!(a.dim(), b.dim());
    }
}
