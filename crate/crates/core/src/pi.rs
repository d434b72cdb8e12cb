//! Standard polynomials on exact rational matrices, the Amitsur–Levitzki
//! harness, and the multiplicity/PI-degree report for branching tables.

use crate::verma::{BranchingTable, CompleteReducibility};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt;

/// Largest degree accepted by [`standard_polynomial_eval`].
pub const MAX_STANDARD_DEGREE: usize = 8;
/// Largest matrix size accepted by [`amitsur_levitzki_test`].
pub const MAX_AL_SIZE: usize = 4;
/// Number of small-entry tuples tried before the witness search gives up.
pub const WITNESS_BUDGET: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PiError {
    #[error("degree cap exceeded: {got} > {cap}")]
    DegreeCap { got: usize, cap: usize },
    #[error("size mismatch: expected {want} matrices of size {size}, got {detail}")]
    SizeMismatch { want: usize, size: usize, detail: String },
    #[error("matrix size {0} is outside 1..=4")]
    BadSize(usize),
    #[error("no witness found for s_{m} on {n}x{n} matrices")]
    NoWitness { n: usize, m: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    n: usize,
    entries: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn zero(n: usize) -> Self {
        RationalMatrix { n, entries: vec![BigRational::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.entries[i * n + i] = BigRational::one();
        }
        m
    }

    /// Matrix unit `E_ij`.
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zero(n);
        m.entries[i * n + j] = BigRational::one();
        m
    }

    pub fn from_rows(rows: &[Vec<BigRational>]) -> Option<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return None;
        }
        Some(RationalMatrix { n, entries: rows.iter().flatten().cloned().collect() })
    }

    pub fn from_ints(rows: &[&[i64]]) -> Option<Self> {
        let rows: Vec<Vec<BigRational>> =
            rows.iter().map(|r| r.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect()).collect();
        Self::from_rows(&rows)
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.entries[i * self.n + j]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|x| x.is_zero())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.n;
        let mut out = Self::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self.entries[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other.entries[k * n + j];
                    if !b.is_zero() {
                        out.entries[i * n + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (a, b) in self.entries.iter_mut().zip(&other.entries) {
            *a += b;
        }
    }

    pub fn sub_assign(&mut self, other: &Self) {
        for (a, b) in self.entries.iter_mut().zip(&other.entries) {
            *a -= b;
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        RationalMatrix { n: self.n, entries: self.entries.iter().map(|x| x * c).collect() }
    }

    pub fn rows(&self) -> Vec<Vec<String>> {
        (0..self.n).map(|i| (0..self.n).map(|j| self.get(i, j).to_string()).collect()).collect()
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.rows().iter().map(|r| format!("[{}]", r.join(", "))).collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

impl Serialize for RationalMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.rows().serialize(s)
    }
}

/// `s_m(X_1, …, X_m) = Σ_w sgn(w) X_{w(1)}···X_{w(m)}`.
///
/// The alternating sum is accumulated over subsets: the signed sum of all
/// orderings of a subset `S` is `Σ_{i∈S} ± X_i · T(S∖i)`, with the sign
/// given by the position of `i` in `S`.
pub fn standard_polynomial_eval(m: usize, matrices: &[RationalMatrix]) -> Result<RationalMatrix, PiError> {
    if m > MAX_STANDARD_DEGREE {
        return Err(PiError::DegreeCap { got: m, cap: MAX_STANDARD_DEGREE });
    }
    let size = matrices.first().map(|x| x.n).unwrap_or(0);
    if m == 0 || matrices.len() != m || matrices.iter().any(|x| x.n != size) {
        let sizes: Vec<String> = matrices.iter().map(|x| x.n.to_string()).collect();
        return Err(PiError::SizeMismatch { want: m, size, detail: format!("sizes [{}]", sizes.join(", ")) });
    }
    let full = (1usize << m) - 1;
    let mut table: Vec<Option<RationalMatrix>> = vec![None; full + 1];
    table[0] = Some(RationalMatrix::identity(size));
    for set in 1..=full {
        let mut acc = RationalMatrix::zero(size);
        let mut pos = 0;
        for (i, x) in matrices.iter().enumerate() {
            if set & (1 << i) == 0 {
                continue;
            }
            let rest = table[set & !(1 << i)].as_ref().expect("subsets come first");
            let term = x.mul(rest);
            if pos % 2 == 0 {
                acc.add_assign(&term);
            } else {
                acc.sub_assign(&term);
            }
            pos += 1;
        }
        table[set] = Some(acc);
    }
    Ok(table[full].take().expect("filled"))
}

fn random_matrix(n: usize, rng: &mut ChaCha8Rng) -> RationalMatrix {
    let entries = (0..n * n)
        .map(|_| {
            let num: i64 = rng.gen_range(-9..=9);
            let den: i64 = rng.gen_range(1..=4);
            BigRational::new(BigInt::from(num), BigInt::from(den))
        })
        .collect();
    RationalMatrix { n, entries }
}

fn small_matrix(n: usize, rng: &mut ChaCha8Rng) -> RationalMatrix {
    let entries = (0..n * n).map(|_| BigRational::from_integer(BigInt::from(rng.gen_range(-1i64..=1)))).collect();
    RationalMatrix { n, entries }
}

fn trial_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub degree: usize,
    pub matrices: Vec<RationalMatrix>,
    pub value: RationalMatrix,
}

impl Witness {
    /// Recomputes `s_m` on the stored tuple.
    pub fn verify(&self) -> bool {
        match standard_polynomial_eval(self.degree, &self.matrices) {
            Ok(v) => !v.is_zero() && v == self.value,
            Err(_) => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlReport {
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    /// Trials on which `s_{2n}` vanished.
    pub vanishing_trials: usize,
    /// First trial index with a nonzero value of `s_{2n}`.
    pub first_failure: Option<usize>,
    /// Nonzero value of `s_{2n-1}`; `None` for `n = 1`, where `s_1(X) = X`.
    pub witness: Option<Witness>,
    pub passed: bool,
}

/// Checks `s_{2n} ≡ 0` on seeded random rational tuples and finds a tuple
/// with `s_{2n-1} ≠ 0`.
pub fn amitsur_levitzki_test(n: usize, trials: usize, seed: u64) -> Result<AlReport, PiError> {
    if n == 0 || n > MAX_AL_SIZE {
        return Err(PiError::BadSize(n));
    }
    let m = 2 * n;
    let results: Vec<bool> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(seed, t as u64);
            let xs: Vec<RationalMatrix> = (0..m).map(|_| random_matrix(n, &mut rng)).collect();
            standard_polynomial_eval(m, &xs).map(|v| v.is_zero()).unwrap_or(false)
        })
        .collect();
    let first_failure = results.iter().position(|ok| !ok);
    let vanishing_trials = results.iter().filter(|ok| **ok).count();
    let witness = if n == 1 { None } else { Some(find_witness(n, m - 1, seed)?) };
    Ok(AlReport {
        n,
        trials,
        seed,
        vanishing_trials,
        first_failure,
        passed: first_failure.is_none(),
        witness,
    })
}

/// Searches matrix-unit staircases first, then seeded tuples with entries
/// in `{-1, 0, 1}`.
pub fn find_witness(n: usize, m: usize, seed: u64) -> Result<Witness, PiError> {
    let mut stair = Vec::with_capacity(m);
    for k in 0..m {
        let i = k / 2;
        let j = i + k % 2;
        if j >= n {
            break;
        }
        stair.push(RationalMatrix::unit(n, i, j));
    }
    let mut candidates = Vec::new();
    if stair.len() == m {
        candidates.push(stair);
    }
    let mut rng = trial_rng(seed, u64::MAX);
    for cand in candidates.into_iter().chain(
        std::iter::repeat_with(|| (0..m).map(|_| small_matrix(n, &mut rng)).collect::<Vec<_>>()).take(WITNESS_BUDGET),
    ) {
        let value = standard_polynomial_eval(m, &cand)?;
        if !value.is_zero() {
            return Ok(Witness { degree: m, matrices: cand, value });
        }
    }
    Err(PiError::NoWitness { n, m })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PiReport {
    /// Largest multiplicity among summands in the complete range.
    pub observed_sup: u64,
    pub multiplicity_free_so_far: bool,
    /// Set only when the table's complete reducibility is certified.
    pub pi_degree_lower_bound: Option<u64>,
    /// The bound is the PI degree: finite table or asserted stabilization.
    pub exact: bool,
    pub commutative_predicted: Option<bool>,
    pub depth: usize,
    pub stabilization_asserted: bool,
    pub note: String,
}

pub fn pi_degree_report(table: &BranchingTable, stabilization_asserted: bool) -> PiReport {
    let mut mults: BTreeMap<_, u64> = BTreeMap::new();
    for s in table.summands.iter().filter(|s| s.complete) {
        *mults.entry(&s.hw).or_default() += s.mult;
    }
    let depth = table.depth.max_degree;
    let certified = table.verdicts.completely_reducible != CompleteReducibility::Unknown;
    if mults.is_empty() {
        return PiReport {
            observed_sup: 0,
            multiplicity_free_so_far: true,
            pi_degree_lower_bound: None,
            exact: false,
            commutative_predicted: None,
            depth,
            stabilization_asserted,
            note: "no summand lies in the complete range".into(),
        };
    }
    let sup = mults.values().copied().max().unwrap_or(0);
    let exact = certified && (table.depth.fully_complete || stabilization_asserted);
    let commutative_predicted = match (certified, sup) {
        (false, _) => None,
        (true, 1) if exact => Some(true),
        (true, 1) => None,
        (true, _) => Some(false),
    };
    let note = if !certified {
        "complete reducibility not certified; no bound reported".to_string()
    } else if exact {
        format!("PI degree {sup}")
    } else {
        format!("lower bound at depth {depth}")
    };
    PiReport {
        observed_sup: sup,
        multiplicity_free_so_far: sup <= 1,
        pi_degree_lower_bound: certified.then_some(sup),
        exact,
        commutative_predicted,
        depth,
        stabilization_asserted,
        note,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> RationalMatrix {
        RationalMatrix::from_ints(rows).unwrap()
    }

    #[test]
    fn low_degrees() {
        let x = m(&[&[1, 2], &[3, 4]]);
        let y = m(&[&[0, 1], &[5, -1]]);
        assert_eq!(standard_polynomial_eval(1, &[x.clone()]).unwrap(), x);
        let mut comm = x.mul(&y);
        comm.sub_assign(&y.mul(&x));
        assert_eq!(standard_polynomial_eval(2, &[x, y]).unwrap(), comm);
        let d1 = m(&[&[2, 0], &[0, 3]]);
        let d2 = m(&[&[-1, 0], &[0, 7]]);
        assert!(standard_polynomial_eval(2, &[d1, d2]).unwrap().is_zero());
    }

    #[test]
    fn guards() {
        let x = RationalMatrix::identity(2);
        assert_eq!(
            standard_polynomial_eval(9, &vec![x.clone(); 9]).unwrap_err(),
            PiError::DegreeCap { got: 9, cap: 8 }
        );
        assert!(matches!(
            standard_polynomial_eval(2, &[x.clone(), RationalMatrix::identity(3)]),
            Err(PiError::SizeMismatch { .. })
        ));
        assert!(matches!(standard_polynomial_eval(3, &[x]), Err(PiError::SizeMismatch { .. })));
        assert_eq!(amitsur_levitzki_test(5, 1, 0).unwrap_err(), PiError::BadSize(5));
    }

    #[test]
    fn staircase_witness_for_two_by_two() {
        let w = find_witness(2, 3, 0).unwrap();
        assert_eq!(w.matrices[0], RationalMatrix::unit(2, 0, 0));
        assert!(w.verify());
    }
}
