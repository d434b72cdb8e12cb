mod support;

use branching_core::character::*;
use branching_core::rational::{q, Q};
use branching_core::root_system::{RootSystem, Weight};
use proptest::prelude::*;
use support::kostant_multiplicity;

fn fund(g: &RootSystem, f: &[i64]) -> Weight {
    let f: Vec<Q> = f.iter().map(|&x| q(x)).collect();
    g.from_fundamental_coords(&f).unwrap()
}

/// Dominant weights of `g` (rank 1 or 2) with Weyl dimension at most `cap`.
pub fn dominant_up_to(g: &RootSystem, cap: u64) -> Vec<Weight> {
    let mut out = Vec::new();
    if g.rank() == 1 {
        for a in 0.. {
            let w = fund(g, &[a]);
            if weyl_dimension(g, &w).unwrap() > cap {
                break;
            }
            out.push(w);
        }
        return out;
    }
    for a in 0.. {
        if weyl_dimension(g, &fund(g, &[a, 0])).unwrap() > cap {
            break;
        }
        for b in 0.. {
            let w = fund(g, &[a, b]);
            if weyl_dimension(g, &w).unwrap() > cap {
                break;
            }
            out.push(w);
        }
    }
    out
}

#[test]
fn freudenthal_matches_weyl_up_to_ten_thousand() {
    for label in ["A1", "A2", "C2"] {
        let g = RootSystem::build(label).unwrap();
        let ws = dominant_up_to(&g, 10_000);
        assert!(ws.len() > 10, "{label}");
        for w in &ws {
            let ch = freudenthal_character(&g, w).unwrap();
            assert_eq!(ch.dimension(), weyl_dimension(&g, w).unwrap(), "{label} {w}");
        }
    }
}

#[test]
fn a2_adjoint_zero_weight_from_kostant() {
    let g = RootSystem::build("A2").unwrap();
    let adj = fund(&g, &[1, 1]);
    assert_eq!(kostant_multiplicity(&g, &adj, &Weight::zero(2)), 2);
    assert_eq!(freudenthal_character(&g, &adj).unwrap().multiplicity(&Weight::zero(2)), 2);
}

#[test]
fn freudenthal_matches_kostant_weight_by_weight() {
    for (label, hws) in [
        ("A2", vec![[2, 1], [3, 3], [0, 4]]),
        ("C2", vec![[1, 1], [2, 2], [0, 3]]),
        ("B2", vec![[1, 2], [2, 1]]),
        ("G2", vec![[1, 0], [0, 1], [1, 1]]),
    ] {
        let g = RootSystem::build(label).unwrap();
        for f in hws {
            let hw = fund(&g, &f);
            let ch = freudenthal_character(&g, &hw).unwrap();
            for (mu, m) in ch.entries() {
                assert_eq!(kostant_multiplicity(&g, &hw, mu), *m as i64, "{label} {hw} at {mu}");
            }
        }
    }
}

#[test]
fn a3_and_b3_spot_checks() {
    let g = RootSystem::build("A3").unwrap();
    let adj = fund(&g, &[1, 0, 1]);
    let ch = freudenthal_character(&g, &adj).unwrap();
    assert_eq!(ch.dimension(), 15);
    assert_eq!(ch.multiplicity(&Weight::zero(3)), 3);
    assert_eq!(kostant_multiplicity(&g, &adj, &Weight::zero(3)), 3);
    let g = RootSystem::build("B3").unwrap();
    let spin = fund(&g, &[0, 0, 1]);
    assert_eq!(freudenthal_character(&g, &spin).unwrap().dimension(), 8);
}

#[test]
fn decomposition_examples() {
    let a1 = RootSystem::build("A1").unwrap();
    let v2 = freudenthal_character(&a1, &fund(&a1, &[2])).unwrap();
    let v0 = freudenthal_character(&a1, &fund(&a1, &[0])).unwrap();
    let d = strip_to_highest_weights(&a1, &v2.merged(&v0)).unwrap();
    assert_eq!(d.parts, vec![(fund(&a1, &[2]), 1), (fund(&a1, &[0]), 1)]);

    let a2 = RootSystem::build("A2").unwrap();
    let w1 = freudenthal_character(&a2, &fund(&a2, &[1, 0])).unwrap();
    let w2 = freudenthal_character(&a2, &fund(&a2, &[0, 1])).unwrap();
    let d = strip_to_highest_weights(&a2, &tensor_character(&w1, &w2).unwrap()).unwrap();
    assert_eq!(d.parts, vec![(fund(&a2, &[1, 1]), 1), (fund(&a2, &[0, 0]), 1)]);
    assert_eq!(dual_character(&w1).entries(), w2.entries());
}

#[test]
fn weyl_dimension_closed_forms() {
    let a2 = RootSystem::build("A2").unwrap();
    let c2 = RootSystem::build("C2").unwrap();
    for a in 0..6i64 {
        for b in 0..6i64 {
            let d = weyl_dimension(&a2, &fund(&a2, &[a, b])).unwrap() as i64;
            assert_eq!(d, (a + 1) * (b + 1) * (a + b + 2) / 2);
            // C2 with α1 short: dim = (a+1)(b+1)(a+b+2)(a+2b+3)/6.
            let d = weyl_dimension(&c2, &fund(&c2, &[a, b])).unwrap() as i64;
            assert_eq!(d, (a + 1) * (b + 1) * (a + b + 2) * (a + 2 * b + 3) / 6);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn tensor_dimension_is_multiplicative(a in 0i64..4, b in 0i64..4, c in 0i64..4, d in 0i64..4) {
        let g = RootSystem::build("C2").unwrap();
        let x = fund(&g, &[a, b]);
        let y = fund(&g, &[c, d]);
        let prod = tensor_character(&freudenthal_character(&g, &x).unwrap(), &freudenthal_character(&g, &y).unwrap()).unwrap();
        let parts = strip_to_highest_weights(&g, &prod).unwrap();
        prop_assert_eq!(parts.total_dimension(&g).unwrap(), weyl_dimension(&g, &x).unwrap() * weyl_dimension(&g, &y).unwrap());
        // The top summand is V(x + y) with multiplicity one.
        prop_assert!(parts.parts.contains(&(&x + &y, 1)));
    }

    #[test]
    fn characters_are_weyl_invariant(a in 0i64..4, b in 0i64..4) {
        let g = RootSystem::build("A2").unwrap();
        let ch = freudenthal_character(&g, &fund(&g, &[a, b])).unwrap();
        for s in g.simple_roots() {
            for (mu, m) in ch.entries() {
                prop_assert_eq!(ch.multiplicity(&g.reflect(mu, s)), *m);
            }
        }
    }
}

