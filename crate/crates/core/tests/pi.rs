use branching_core::catalog::lookup;
use branching_core::pi::*;
use branching_core::verma::{branch, Depth, Side, VermaDescriptor};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn perms(m: usize) -> Vec<(Vec<usize>, bool)> {
    // (permutation, is_even) by inserting the last element into every slot.
    if m == 0 {
        return vec![(Vec::new(), true)];
    }
    let mut out = Vec::new();
    for (p, even) in perms(m - 1) {
        for slot in 0..m {
            let mut q = p.clone();
            q.insert(slot, m - 1);
            // Moving m-1 from the end to `slot` takes m-1-slot transpositions.
            out.push((q, even == ((m - 1 - slot) % 2 == 0)));
        }
    }
    out
}

fn naive_standard(xs: &[RationalMatrix]) -> RationalMatrix {
    let n = xs[0].size();
    let mut acc = RationalMatrix::zero(n);
    for (p, even) in perms(xs.len()) {
        let mut prod = RationalMatrix::identity(n);
        for &i in &p {
            prod = prod.mul(&xs[i]);
        }
        if even {
            acc.add_assign(&prod);
        } else {
            acc.sub_assign(&prod);
        }
    }
    acc
}

fn matrix_strategy(n: usize) -> impl Strategy<Value = RationalMatrix> {
    proptest::collection::vec((-5i64..=5, 1i64..=3), n * n).prop_map(move |v| {
        let rows: Vec<Vec<BigRational>> = v
            .chunks(n)
            .map(|r| r.iter().map(|&(a, b)| BigRational::new(BigInt::from(a), BigInt::from(b))).collect())
            .collect();
        RationalMatrix::from_rows(&rows).unwrap()
    })
}

fn tuple_strategy() -> impl Strategy<Value = Vec<RationalMatrix>> {
    (1usize..=3, 2usize..=5).prop_flat_map(|(n, m)| proptest::collection::vec(matrix_strategy(n), m))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn agrees_with_permutation_sum(xs in tuple_strategy()) {
        prop_assert_eq!(standard_polynomial_eval(xs.len(), &xs).unwrap(), naive_standard(&xs));
    }

    #[test]
    fn alternating(xs in tuple_strategy(), i in 0usize..5, j in 0usize..5) {
        let m = xs.len();
        let (i, j) = (i % m, j % m);
        prop_assume!(i != j);
        let base = standard_polynomial_eval(m, &xs).unwrap();
        let mut swapped = xs.clone();
        swapped.swap(i, j);
        let mut sum = standard_polynomial_eval(m, &swapped).unwrap();
        sum.add_assign(&base);
        prop_assert!(sum.is_zero());
        let mut repeated = xs.clone();
        repeated[j] = repeated[i].clone();
        prop_assert!(standard_polynomial_eval(m, &repeated).unwrap().is_zero());
    }

    #[test]
    fn multilinear(xs in tuple_strategy(), y in matrix_strategy(3), i in 0usize..5, c in -4i64..=4) {
        let m = xs.len();
        let n = xs[0].size();
        prop_assume!(n == 3);
        let i = i % m;
        let c = BigRational::from_integer(BigInt::from(c));
        let mut combo = xs[i].scale(&c);
        combo.add_assign(&y);
        let mut with_combo = xs.clone();
        with_combo[i] = combo;
        let mut with_y = xs.clone();
        with_y[i] = y;
        let mut want = standard_polynomial_eval(m, &xs).unwrap().scale(&c);
        want.add_assign(&standard_polynomial_eval(m, &with_y).unwrap());
        prop_assert_eq!(standard_polynomial_eval(m, &with_combo).unwrap(), want);
    }
}

#[test]
fn amitsur_levitzki_small_sizes() {
    for n in 1..=3 {
        let r = amitsur_levitzki_test(n, 200, 7).unwrap();
        assert!(r.passed, "n = {n}");
        assert_eq!(r.vanishing_trials, 200);
        match (&r.witness, n) {
            (None, 1) => {}
            (Some(w), _) => {
                assert_eq!(w.degree, 2 * n - 1);
                assert!(w.verify());
                assert_eq!(naive_standard(&w.matrices), w.value);
            }
            _ => panic!("missing witness for n = {n}"),
        }
    }
}

#[test]
fn odd_degree_below_the_bound_is_not_an_identity_on_random_input() {
    // s_3 on 2x2 matrices is generically nonzero; s_2 on 1x1 is not.
    let w = find_witness(2, 3, 11).unwrap();
    assert!(w.verify());
    assert_eq!(find_witness(1, 2, 0).unwrap_err(), PiError::NoWitness { n: 1, m: 2 });
}

fn table(name: &str, idx: usize, depth: usize) -> branching_core::verma::BranchingTable {
    let e = lookup(name).unwrap();
    let v = VermaDescriptor::new(e.parabolic().unwrap(), e.sample_f[idx].clone(), Side::Ambient).unwrap();
    branch(&v, Depth { max_degree: depth }).unwrap()
}

#[test]
fn pi_reports() {
    let t = table("diag-a1", 0, 4);
    let r = pi_degree_report(&t, true);
    assert_eq!((r.pi_degree_lower_bound, r.exact, r.commutative_predicted), (Some(1), true, Some(true)));
    let r = pi_degree_report(&t, false);
    assert_eq!((r.pi_degree_lower_bound, r.exact, r.commutative_predicted), (Some(1), false, None));

    let t = table("weil-sp4", 0, 6);
    let r = pi_degree_report(&t, false);
    assert!(r.observed_sup >= 2);
    assert!(r.pi_degree_lower_bound.unwrap() >= 2);
    assert_eq!(r.commutative_predicted, Some(false));
    assert!(!r.multiplicity_free_so_far);
}

#[test]
fn pi_report_needs_certification() {
    let e = lookup("diag-a1").unwrap();
    let v = VermaDescriptor::new(e.parabolic().unwrap(), branching_core::root_system::Weight::zero(2), Side::Ambient)
        .unwrap();
    let t = branch(&v, Depth { max_degree: 2 }).unwrap();
    let r = pi_degree_report(&t, true);
    assert_eq!((r.pi_degree_lower_bound, r.commutative_predicted, r.exact), (None, None, false));
}

#[test]
fn pi_report_degenerate_guard() {
    let mut t = table("diag-a1", 0, 0);
    t.summands.clear();
    let r = pi_degree_report(&t, true);
    assert_eq!((r.observed_sup, r.pi_degree_lower_bound, r.commutative_predicted), (0, None, None));
}

#[test]
fn observed_sup_bounded_by_oracle_multiplicities() {
    use branching_core::verma::{comparison_level, truncated_character_oracle, DEFAULT_LEVEL_CAP};
    for name in ["diag-a1", "weil-sp4", "principal-a1-in-a2", "holomorphic-c2"] {
        let t = table(name, 0, 4);
        let r = pi_degree_report(&t, false);
        let oracle = truncated_character_oracle(&t.descriptor, comparison_level(&t), DEFAULT_LEVEL_CAP).unwrap();
        // Each summand contributes its multiplicity to the weight space of its
        // own highest weight, so the oracle weight multiplicity bounds it.
        let mut bound = 0;
        for s in t.summands.iter().filter(|s| s.complete) {
            let m = oracle.get(&s.grade.level).map(|ch| ch.multiplicity(&s.hw)).unwrap_or(0);
            assert!(s.mult <= m, "{name} {}", s.hw);
            bound = bound.max(m);
        }
        assert!(r.observed_sup <= bound, "{name}");
    }
}
