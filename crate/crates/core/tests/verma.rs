use branching_core::catalog::{catalog, lookup};
use branching_core::character::{freudenthal_character, strip_to_highest_weights, tensor_character, weyl_dimension};
use branching_core::embedding::{parabolic_from_h, ParabolicDatum, ReductivePair};
use branching_core::linalg;
use branching_core::rational::{q, qf, Q};
use branching_core::root_system::{RootSystem, Weight};
use branching_core::verma::*;
use proptest::prelude::*;

fn self_parabolic(label: &str, h: &[Q]) -> ParabolicDatum {
    let g = RootSystem::build(label).unwrap();
    let n = g.dim();
    let pair = ReductivePair::new(label, g.clone(), g, linalg::identity(n), None, None, None).unwrap();
    parabolic_from_h(&pair, h).unwrap()
}

fn ambient(p: &ParabolicDatum, f: Weight) -> VermaDescriptor {
    VermaDescriptor::new(p.clone(), f, Side::Ambient).unwrap()
}

fn catalog_descriptor(name: &str, f: Weight) -> VermaDescriptor {
    ambient(&lookup(name).unwrap().parabolic().unwrap(), f)
}

/// `⟨x, α∨⟩ = n` in A1 simple-root coordinates.
fn a1(n: i64) -> Weight {
    Weight(vec![qf(n, 2)])
}

#[test]
fn a1_borel_examples() {
    let p = self_parabolic("A1", &[q(1)]);
    let v = ambient(&p, a1(-3));
    let ic = v.infinitesimal_character().unwrap();
    assert_eq!(ic.orbit.elements.iter().cloned().collect::<Vec<_>>(), vec![a1(-2), a1(2)]);
    assert!(v.is_good_range());
    assert_eq!(v.verma_irreducibility(), Irreducibility::CertifiedIrreducible);

    let trivial = ambient(&p, a1(0));
    assert!(!trivial.is_good_range());
    assert_eq!(trivial.verma_irreducibility(), Irreducibility::CriterionInconclusive);

    let half = ambient(&p, Weight(vec![qf(-1, 4)]));
    assert_eq!(half.verma_irreducibility(), Irreducibility::CertifiedIrreducible);
}

#[test]
fn a2_trivial_character_is_rho_orbit() {
    let p = self_parabolic("A2", &[q(1), q(1)]);
    let v = ambient(&p, Weight::zero(2));
    let ic = v.infinitesimal_character().unwrap();
    let rho = p.pair.g.rho();
    assert_eq!(ic, InfinitesimalCharacter { algebra: "A2".into(), orbit: p.pair.g.weyl_orbit(&rho).unwrap() });
    assert_eq!(ic.orbit.len(), 6);
}

#[test]
fn c2_siegel_infinitesimal_character_and_good_range() {
    let p = self_parabolic("C2", &[q(0), q(2)]);
    // ν = -4(e1 + e2) = (-4, -4) in simple coordinates.
    let nu = Weight::from_ints(&[-4, -4]);
    let v = ambient(&p, nu.clone());
    let rho_l = Weight(vec![qf(1, 2), q(0)]);
    let rho_u = Weight(vec![qf(3, 2), qf(3, 2)]);
    let rep = &(&nu + &rho_l) + &rho_u;
    assert!(v.infinitesimal_character().unwrap().orbit.contains(&rep));
    assert!(v.is_good_range());
}

#[test]
fn non_dominant_f_is_rejected() {
    let p = self_parabolic("C2", &[q(0), q(2)]);
    // ⟨F, α1∨⟩ = -1 for F = (-1/2, 0).
    let err = VermaDescriptor::new(p, Weight(vec![qf(-1, 2), q(0)]), Side::Ambient).unwrap_err();
    assert!(matches!(err, VermaError::NotHighestWeight(_)));
}

#[test]
fn fdual_on_torus_levi() {
    let p = lookup("diag-a1").unwrap().parabolic().unwrap();
    for mu in [-7, -2, 0, 3] {
        assert_eq!(fdual(&a1(mu), &p).unwrap(), a1(-mu - 2));
    }
}

#[test]
fn fdual_is_an_involution_with_unique_twist() {
    let p = self_parabolic("C2", &[q(0), q(2)]);
    let two_rho = p.rho_u_prime().scale(q(2));
    for (a, b) in [(0, 0), (1, 0), (2, -3), (3, 5)] {
        // ⟨F', α1∨⟩ = a, and an arbitrary value on the center direction.
        let f = Weight(vec![qf(a, 2) + qf(b, 2), qf(b, 2)]);
        assert!(p.levi_prime.is_dominant_integral(&f));
        let d = fdual(&f, &p).unwrap();
        assert_eq!(fdual(&d, &p).unwrap(), f);
        assert_eq!(weyl_dimension(&p.levi_prime, &d).unwrap(), weyl_dimension(&p.levi_prime, &f).unwrap());
        let prod = tensor_character(
            &freudenthal_character(&p.levi_prime, &d).unwrap(),
            &freudenthal_character(&p.levi_prime, &f).unwrap(),
        )
        .unwrap();
        let parts = strip_to_highest_weights(&p.levi_prime, &prod).unwrap().parts;
        let twist: Vec<u64> = parts.iter().filter(|(hw, _)| *hw == -&two_rho).map(|(_, m)| *m).collect();
        assert_eq!(twist, vec![1]);
    }
}

#[test]
fn diag_a1_closed_form() {
    let v = catalog_descriptor("diag-a1", Weight(vec![qf(-3, 2), qf(-3, 2)]));
    let t = branch(&v, Depth { max_degree: 3 }).unwrap();
    let got: Vec<(Weight, u64, usize)> = t.summands.iter().map(|s| (s.hw.clone(), s.mult, s.grade.degree)).collect();
    let want: Vec<(Weight, u64, usize)> = (0..4).map(|k| (a1(-6 - 2 * k as i64), 1, k)).collect();
    assert_eq!(got, want);
    assert!(t.stats.multiplicity_free);
    assert!(t.summands.iter().all(|s| s.good_range && s.irreducible));
    assert_eq!(t.depth.complete_to_level, Some(q(-6)));
    assert_eq!(t.verdicts.completely_reducible, CompleteReducibility::Certified);
    assert_eq!(compare_with_oracle(&t, q(-6), DEFAULT_LEVEL_CAP).unwrap(), None);
}

#[test]
fn depth_zero_is_the_restriction_of_f() {
    for e in catalog() {
        let p = e.parabolic().unwrap();
        for f in &e.sample_f {
            let v = ambient(&p, f.clone());
            let t = branch(&v, Depth { max_degree: 0 }).unwrap();
            let restricted = v.f_character().unwrap().restrict(&p.pair.restriction);
            let parts = strip_to_highest_weights(&p.levi_prime, &restricted).unwrap().parts;
            let mut got: Vec<(Weight, u64)> = t.summands.iter().map(|s| (s.hw.clone(), s.mult)).collect();
            let mut want = parts;
            got.sort();
            want.sort();
            assert_eq!(got, want, "{}", e.name);
            if v.f_character().unwrap().dimension() == 1 {
                assert_eq!(t.summands.len(), 1);
                assert_eq!(t.summands[0].mult, 1);
            }
        }
    }
}

#[test]
fn weil_entry_is_not_multiplicity_free() {
    let e = lookup("weil-sp4").unwrap();
    let v = ambient(&e.parabolic().unwrap(), e.sample_f[0].clone());
    let t = branch(&v, Depth { max_degree: 6 }).unwrap();
    assert!(!t.stats.multiplicity_free);
    assert!(t.summands.iter().any(|s| s.mult == 2));
    assert_eq!(t.verdicts.completely_reducible, CompleteReducibility::Certified);
    // S^k of two copies of the same weight: multiplicity k + 1 at degree k.
    for s in &t.summands {
        assert_eq!(s.mult, s.grade.degree as u64 + 1);
    }
    let hom = hom_space_report(&t, &t.summands[1].hw).unwrap();
    assert_eq!((hom.dimension, hom.exact, hom.irreducible), (2, true, true));
}

#[test]
fn verdict_routes() {
    let t = branch(&catalog_descriptor("diag-a2-borel", Weight::from_ints(&[-10, -10, -10, -10])), Depth { max_degree: 4 })
        .unwrap();
    assert!(!t.verdicts.quasi_abelian);
    assert_eq!(complete_reducibility_verdict(&t), CompleteReducibility::CertifiedViaSummands);

    let t = branch(&catalog_descriptor("diag-a1", Weight::zero(2)), Depth { max_degree: 2 }).unwrap();
    assert!(!t.verdicts.source_good_range);
    assert_eq!(complete_reducibility_verdict(&t), CompleteReducibility::Unknown);
}

#[test]
fn hom_space_reports() {
    let t = branch(&catalog_descriptor("diag-a1", Weight(vec![qf(-3, 2), qf(-3, 2)])), Depth { max_degree: 3 }).unwrap();
    let h = hom_space_report(&t, &a1(-8)).unwrap();
    assert_eq!((h.dimension, h.exact, h.irreducible, h.zero), (1, true, true, false));
    let h = hom_space_report(&t, &a1(-7)).unwrap();
    assert_eq!((h.dimension, h.exact, h.zero), (0, true, true));
    // Beyond the complete range, only a lower bound.
    let h = hom_space_report(&t, &a1(-20)).unwrap();
    assert!(!h.exact && !h.zero);

    // g' = g: the table is finite and complete.
    let p = self_parabolic("A2", &[q(1), q(1)]);
    let t = branch(&ambient(&p, Weight::from_ints(&[-2, -2])), Depth { max_degree: 2 }).unwrap();
    assert!(t.depth.fully_complete);
    assert_eq!(t.summands.len(), 1);
    let h = hom_space_report(&t, &Weight::from_ints(&[-3, -2])).unwrap();
    assert!(h.zero && h.exact);

    let p = self_parabolic("C2", &[q(0), q(2)]);
    let t = branch(&ambient(&p, Weight::from_ints(&[-4, -4])), Depth { max_degree: 1 }).unwrap();
    let err = hom_space_report(&t, &Weight(vec![qf(-1, 2), q(0)])).unwrap_err();
    assert!(matches!(err, VermaError::NotHighestWeight(_)));
}

#[test]
fn hom_dimension_is_monotone_in_depth() {
    let e = lookup("principal-a1-in-a2").unwrap();
    let v = ambient(&e.parabolic().unwrap(), e.sample_f[0].clone());
    let tables: Vec<BranchingTable> = (0..5).map(|d| branch(&v, Depth { max_degree: d }).unwrap()).collect();
    let targets: Vec<Weight> = tables.last().unwrap().summands.iter().map(|s| s.hw.clone()).collect();
    for f in targets {
        let dims: Vec<u64> = tables.iter().map(|t| hom_space_report(t, &f).unwrap().dimension).collect();
        assert!(dims.windows(2).all(|w| w[0] <= w[1]), "{f}: {dims:?}");
    }
}

#[test]
fn transfer_report() {
    let e = lookup("holomorphic-c2").unwrap();
    let v = ambient(&e.parabolic().unwrap(), e.sample_f[0].clone());
    let t = branch(&v, Depth { max_degree: 3 }).unwrap();
    let full = Assertions { theta_stable: Some(true), transitivity_asserted: Some(true) };
    let r = cohomological_transfer_report(&t, full).unwrap();
    assert_eq!(r.s, Some(0));
    assert!(r.banner.is_none());
    assert!(r.all_good_range);
    assert_eq!(r.entries.len(), t.summands.len());
    assert!(r.entries[0].label.starts_with("L^0_q'"));

    let partial = Assertions { theta_stable: Some(true), transitivity_asserted: Some(false) };
    let r2 = cohomological_transfer_report(&t, partial).unwrap();
    assert!(r2.banner.is_some());
    assert_eq!(r2.entries, r.entries);

    let e = lookup("diag-a1").unwrap();
    let t = branch(&ambient(&e.parabolic().unwrap(), Weight::zero(2)), Depth { max_degree: 1 }).unwrap();
    assert_eq!(cohomological_transfer_report(&t, full).unwrap_err(), VermaError::NotCertified);
    let t = branch(&ambient(&e.parabolic().unwrap(), e.sample_f[0].clone()), Depth { max_degree: 1 }).unwrap();
    assert_eq!(cohomological_transfer_report(&t, full).unwrap().s, None);
}

#[test]
fn oracle_examples() {
    let v = catalog_descriptor("diag-a1", Weight(vec![qf(-3, 2), qf(-3, 2)]));
    let o = truncated_character_oracle(&v, q(-10), DEFAULT_LEVEL_CAP).unwrap();
    for k in 0..=5i64 {
        assert_eq!(o[&q(-2 * k)].dimension(), k as u64 + 1);
    }
    let e = lookup("holomorphic-c2").unwrap();
    let f = e.sample_f[1].clone();
    let v = ambient(&e.parabolic().unwrap(), f);
    let o = truncated_character_oracle(&v, q(0), DEFAULT_LEVEL_CAP).unwrap();
    assert_eq!(o[&q(0)].dimension(), v.f_character().unwrap().dimension());
    assert_eq!(o[&q(0)].dimension(), 2);
    assert_eq!(
        truncated_character_oracle(&v, q(-40), 50).unwrap_err(),
        VermaError::TruncationTooDeep { cap: 50 }
    );
}

#[test]
fn oracle_agrees_on_every_catalog_entry() {
    for e in catalog() {
        let p = e.parabolic().unwrap();
        for f in &e.sample_f {
            let t = branch(&ambient(&p, f.clone()), Depth { max_degree: 3 }).unwrap();
            let level = comparison_level(&t);
            assert_eq!(compare_with_oracle(&t, level, DEFAULT_LEVEL_CAP).unwrap(), None, "{} {f}", e.name);
        }
    }
}

#[test]
fn summands_propagate_good_range_when_certified() {
    for e in catalog() {
        let p = e.parabolic().unwrap();
        for f in &e.sample_f {
            let t = branch(&ambient(&p, f.clone()), Depth { max_degree: 4 }).unwrap();
            assert!(t.verdicts.source_good_range, "{} {f}", e.name);
            if t.verdicts.completely_reducible == CompleteReducibility::Certified {
                assert!(t.summands.iter().all(|s| s.good_range && s.irreducible), "{} {f}", e.name);
            }
        }
    }
}

#[test]
fn multiplicity_flags_match_tables() {
    for e in catalog() {
        let t = branch(&ambient(&e.parabolic().unwrap(), e.sample_f[0].clone()), Depth { max_degree: 4 }).unwrap();
        assert_eq!(t.stats.multiplicity_free, e.flags.multiplicity_free, "{}", e.name);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn good_range_is_levi_weyl_invariant(idx in 0usize..5, fi in 0usize..3, word in proptest::collection::vec(0usize..4, 0..6)) {
        let e = &catalog()[idx];
        let p = e.parabolic().unwrap();
        let v = ambient(&p, e.sample_f[fi].clone());
        let ind = v.induction();
        let lam = ind.levi_parameter(&v.f_hw);
        let mut moved = lam.clone();
        for i in word {
            if p.levi.rank() > 0 {
                moved = p.levi.simple_reflection(&moved, i % p.levi.rank());
            }
        }
        prop_assert_eq!(ind.good_range_at(&moved), ind.good_range_at(&lam));
        prop_assert_eq!(ind.irreducibility_at(&moved), ind.irreducibility_at(&lam));
    }
}
