//! Characters of finite-dimensional modules over reductive Levi factors.
//!
//! A [`FormalCharacter`] is a full sparse weight table (never compressed to
//! Weyl orbits). It may carry a grading functional `H`, in which case the
//! H-level of a weight `x` is the pairing `x . H` in the same coordinates.

use crate::linalg;
use crate::rational::{format_q, lcm_of_denominators, Q};
use crate::root_system::{RootSystem, Weight};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use std::collections::{BTreeMap, HashMap};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CharError {
    #[error("not a highest weight: {0}")]
    NotHighestWeight(String),
    #[error("torus mismatch: {0} vs {1}")]
    TorusMismatch(usize, usize),
    #[error("not a module character: residual multiplicity {mult} at {weight}")]
    NotModuleCharacter { weight: String, mult: i128 },
    #[error("weight too deep for the packed Freudenthal index")]
    TooDeep,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FormalCharacter {
    entries: BTreeMap<Weight, u64>,
    grading: Option<Vec<Q>>,
}

impl FormalCharacter {
    pub fn new() -> Self {
        Self::default()
    }

    /// The character `{w: 1}` of a one-dimensional module.
    pub fn singleton(w: Weight) -> Self {
        let mut c = Self::new();
        c.add(w, 1);
        c
    }

    pub fn trivial(dim: usize) -> Self {
        Self::singleton(Weight::zero(dim))
    }

    pub fn from_entries(entries: impl IntoIterator<Item = (Weight, u64)>) -> Self {
        let mut c = Self::new();
        for (w, m) in entries {
            c.add(w, m);
        }
        c
    }

    /// Builds from distinct weights in any order.
    fn from_distinct(entries: impl IntoIterator<Item = (Weight, u64)>) -> Self {
        FormalCharacter { entries: entries.into_iter().collect(), grading: None }
    }

    pub fn with_grading(mut self, h: Vec<Q>) -> Self {
        self.grading = Some(h);
        self
    }

    pub fn grading(&self) -> Option<&[Q]> {
        self.grading.as_deref()
    }

    pub fn add(&mut self, w: Weight, m: u64) {
        if m > 0 {
            *self.entries.entry(w).or_insert(0) += m;
        }
    }

    pub fn entries(&self) -> &BTreeMap<Weight, u64> {
        &self.entries
    }

    pub fn multiplicity(&self, w: &Weight) -> u64 {
        self.entries.get(w).copied().unwrap_or(0)
    }

    pub fn dimension(&self) -> u64 {
        self.entries.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Coordinate dimension of the torus, if any weight is present.
    pub fn torus_dim(&self) -> Option<usize> {
        self.entries.keys().next().map(Weight::dim)
    }

    pub fn h_level(&self, w: &Weight) -> Option<Q> {
        self.grading.as_ref().map(|h| linalg::dot(&w.0, h))
    }

    /// Sum of two characters (direct sum of modules).
    pub fn merged(&self, other: &FormalCharacter) -> FormalCharacter {
        let mut out = self.clone();
        for (w, m) in &other.entries {
            out.add(w.clone(), *m);
        }
        if out.grading.is_none() {
            out.grading = other.grading.clone();
        }
        out
    }

    /// Pushes every weight through a restriction matrix.
    pub fn restrict(&self, r: &linalg::Matrix) -> FormalCharacter {
        let mut out = FormalCharacter::new();
        for (w, m) in &self.entries {
            out.add(w.restrict(r), *m);
        }
        out
    }

    pub fn shifted(&self, by: &Weight) -> FormalCharacter {
        FormalCharacter {
            entries: self.entries.iter().map(|(w, m)| (w + by, *m)).collect(),
            grading: self.grading.clone(),
        }
    }

    pub fn scaled(&self, factor: u64) -> FormalCharacter {
        FormalCharacter {
            entries: self.entries.iter().map(|(w, m)| (w.clone(), m * factor)).collect(),
            grading: self.grading.clone(),
        }
    }
}

#[derive(Serialize)]
struct EntryView<'a> {
    weight: &'a Weight,
    multiplicity: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    h_level: Option<String>,
}

impl Serialize for FormalCharacter {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.entries.len()))?;
        for (w, m) in &self.entries {
            seq.serialize_element(&EntryView {
                weight: w,
                multiplicity: *m,
                h_level: self.h_level(w).map(|l| format_q(&l)),
            })?;
        }
        seq.end()
    }
}

/// Irreducible constituents of a finite-dimensional character.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct HWDecomposition {
    pub parts: Vec<(Weight, u64)>,
}

impl HWDecomposition {
    pub fn total_dimension(&self, system: &RootSystem) -> Result<u64, CharError> {
        self.parts
            .iter()
            .map(|(hw, m)| weyl_dimension(system, hw).map(|d| d * m))
            .sum()
    }

    pub fn to_character(&self, system: &RootSystem) -> Result<FormalCharacter, CharError> {
        let mut out = FormalCharacter::new();
        for (hw, m) in &self.parts {
            out = out.merged(&freudenthal_character(system, hw)?.scaled(*m));
        }
        Ok(out)
    }
}

fn check_highest_weight(system: &RootSystem, hw: &Weight) -> Result<(), CharError> {
    if hw.dim() != system.dim() {
        return Err(CharError::TorusMismatch(hw.dim(), system.dim()));
    }
    if !system.is_dominant_integral(hw) {
        return Err(CharError::NotHighestWeight(hw.to_string()));
    }
    Ok(())
}

/// Coefficients of every positive root in the simple roots of `system`.
fn simple_coefficients(system: &RootSystem) -> Vec<Vec<i64>> {
    let simple = system.simple_roots();
    // Solve sum_i c_i a_i = beta via the Gram matrix of the simple roots.
    let gram: linalg::Matrix = simple
        .iter()
        .map(|a| simple.iter().map(|b| system.inner(a, b)).collect())
        .collect();
    let inv = linalg::inverse(&gram).expect("simple roots are independent");
    system
        .positive_roots()
        .iter()
        .map(|beta| {
            let rhs: Vec<Q> = simple.iter().map(|a| system.inner(beta, a)).collect();
            let c = linalg::vec_mat(&rhs, &inv);
            c.iter()
                .map(|x| {
                    assert!(x.is_integer() && !x.is_negative(), "positive root not in the positive cone");
                    x.to_integer()
                })
                .collect()
        })
        .collect()
}

/// Coefficients of `x` in the simple roots of `system`.
fn simple_expansion(system: &RootSystem, x: &Weight) -> Vec<Q> {
    let simple = system.simple_roots();
    let gram: linalg::Matrix = simple
        .iter()
        .map(|a| simple.iter().map(|b| system.inner(a, b)).collect())
        .collect();
    let inv = linalg::inverse(&gram).expect("simple roots are independent");
    let rhs: Vec<Q> = simple.iter().map(|a| system.inner(x, a)).collect();
    linalg::vec_mat(&rhs, &inv)
}

/// Largest box the dense Freudenthal index may allocate.
const DENSE_LIMIT: usize = 1 << 22;

/// Slots of the depth vectors `n` (with `mu = hw - sum n_i a_i`) seen so far.
enum Index {
    /// Grid over `0 <= n_i <= bound_i`.
    Dense { bound: Vec<u32>, strides: Vec<usize>, slots: Vec<u32>, stamp: Vec<u32> },
    Sparse { slots: HashMap<Vec<u32>, u32>, seen: std::collections::HashSet<Vec<u32>> },
}

const EMPTY: u32 = u32::MAX;

impl Index {
    fn new(bound: Vec<u32>) -> Self {
        let size = bound.iter().try_fold(1usize, |acc, &b| acc.checked_mul(b as usize + 1));
        match size {
            Some(size) if size <= DENSE_LIMIT => {
                let mut strides = vec![1usize; bound.len()];
                for i in (0..bound.len().saturating_sub(1)).rev() {
                    strides[i] = strides[i + 1] * (bound[i + 1] as usize + 1);
                }
                Index::Dense { bound, strides, slots: vec![EMPTY; size], stamp: vec![0; size] }
            }
            _ => Index::Sparse { slots: HashMap::new(), seen: std::collections::HashSet::new() },
        }
    }

    fn flat(bound: &[u32], strides: &[usize], n: &[u32]) -> Option<usize> {
        let mut k = 0;
        for ((&x, &b), &s) in n.iter().zip(bound).zip(strides) {
            if x > b {
                return None;
            }
            k += x as usize * s;
        }
        Some(k)
    }

    fn get(&self, n: &[u32]) -> Option<u32> {
        match self {
            Index::Dense { bound, strides, slots, .. } => {
                Self::flat(bound, strides, n).map(|k| slots[k]).filter(|&s| s != EMPTY)
            }
            Index::Sparse { slots, .. } => slots.get(n).copied(),
        }
    }

    fn insert(&mut self, n: &[u32], slot: u32) {
        match self {
            Index::Dense { bound, strides, slots, .. } => {
                let k = Self::flat(bound, strides, n).expect("inside the weight box");
                slots[k] = slot;
            }
            Index::Sparse { slots, .. } => {
                slots.insert(n.to_vec(), slot);
            }
        }
    }

    /// First visit of `n` during level `level`; false outside the box.
    fn first_visit(&mut self, n: &[u32], level: u32) -> bool {
        match self {
            Index::Dense { bound, strides, stamp, .. } => match Self::flat(bound, strides, n) {
                Some(k) if stamp[k] != level => {
                    stamp[k] = level;
                    true
                }
                _ => false,
            },
            Index::Sparse { seen, .. } => seen.insert(n.to_vec()),
        }
    }
}

/// Weight multiplicities of the irreducible module with highest weight `hw`.
pub fn freudenthal_character(system: &RootSystem, hw: &Weight) -> Result<FormalCharacter, CharError> {
    check_highest_weight(system, hw)?;
    let rank = system.rank();
    if rank == 0 {
        return Ok(FormalCharacter::singleton(hw.clone()));
    }
    let simple = system.simple_roots();
    let npos = system.positive_roots().len();
    let coeffs = simple_coefficients(system);
    let rho = system.rho();

    let gram: Vec<Vec<Q>> = simple.iter().map(|a| simple.iter().map(|b| system.inner(a, b)).collect()).collect();
    let lam: Vec<Q> = simple.iter().map(|a| system.inner(hw, a)).collect();
    let rh: Vec<Q> = simple.iter().map(|a| system.inner(&rho, a)).collect();
    let scale = lcm_of_denominators(gram.iter().flatten().chain(&lam).chain(&rh)) as i128;
    let to_int = |x: &Q| (*x.numer() as i128) * (scale / *x.denom() as i128);
    let gram: Vec<Vec<i128>> = gram.iter().map(|r| r.iter().map(to_int).collect()).collect();
    let lam: Vec<i128> = lam.iter().map(to_int).collect();
    let lam_rho: Vec<i128> = lam.iter().zip(rh.iter().map(to_int)).map(|(a, b)| a + b).collect();

    // (mu, beta_b) scaled is root0[b] - sum_i n_i root_gram[b][i].
    let root0: Vec<i128> = coeffs.iter().map(|c| (0..rank).map(|j| c[j] as i128 * lam[j]).sum()).collect();
    let root_gram: Vec<Vec<i128>> = coeffs
        .iter()
        .map(|c| (0..rank).map(|i| (0..rank).map(|j| c[j] as i128 * gram[i][j]).sum()).collect())
        .collect();
    // 2(hw + rho, nu) - (nu, nu) for nu = sum n_i a_i.
    let denominator = |n: &[u32]| -> i128 {
        let lin: i128 = (0..rank).map(|i| n[i] as i128 * lam_rho[i]).sum();
        let quad: i128 = (0..rank)
            .map(|i| (0..rank).map(|j| n[i] as i128 * n[j] as i128 * gram[i][j]).sum::<i128>())
            .sum();
        2 * lin - quad
    };

    // Every weight lies between hw and its antidominant conjugate.
    let span = simple_expansion(system, &(hw - &system.antidominant_conjugate(hw)));
    let bound: Vec<u32> = span
        .iter()
        .map(|x| u32::try_from(x.to_integer()).map_err(|_| CharError::TooDeep))
        .collect::<Result<_, _>>()?;
    let mut index = Index::new(bound);

    let mut depths: Vec<u32> = vec![0; rank];
    let mut mults: Vec<u64> = vec![1];
    let mut tails: Vec<i128> = vec![0; npos];
    index.insert(&depths[..rank], 0);

    let mut lo = 0usize;
    let mut stamp = 0u32;
    let mut cand = vec![0u32; rank];
    let mut up = vec![0i64; rank];
    let mut upn = vec![0u32; rank];
    let mut node_tails = vec![0i128; npos];
    while lo < mults.len() {
        let hi = mults.len();
        stamp += 1;
        for parent in lo..hi {
            for i in 0..rank {
                cand.copy_from_slice(&depths[parent * rank..(parent + 1) * rank]);
                cand[i] += 1;
                if !index.first_visit(&cand, stamp) {
                    continue;
                }
                for (b, c) in coeffs.iter().enumerate() {
                    // Walk up the beta-string until a stored weight or the top boundary.
                    for k in 0..rank {
                        up[k] = cand[k] as i64;
                    }
                    let mut tail = 0i128;
                    loop {
                        for k in 0..rank {
                            up[k] -= c[k];
                        }
                        if up.iter().any(|&x| x < 0) {
                            break;
                        }
                        for k in 0..rank {
                            upn[k] = up[k] as u32;
                        }
                        if let Some(slot) = index.get(&upn) {
                            let slot = slot as usize;
                            let pair: i128 =
                                root0[b] - (0..rank).map(|k| upn[k] as i128 * root_gram[b][k]).sum::<i128>();
                            tail = mults[slot] as i128 * pair + tails[slot * npos + b];
                            break;
                        }
                    }
                    node_tails[b] = tail;
                }
                let num: i128 = 2 * node_tails.iter().sum::<i128>();
                let den = denominator(&cand);
                if num == 0 || den == 0 {
                    continue;
                }
                debug_assert_eq!(num % den, 0, "Freudenthal quotient must be integral");
                let m = num / den;
                if m <= 0 {
                    continue;
                }
                let slot = u32::try_from(mults.len()).map_err(|_| CharError::TooDeep)?;
                index.insert(&cand, slot);
                depths.extend_from_slice(&cand);
                mults.push(m as u64);
                tails.extend_from_slice(&node_tails);
            }
        }
        lo = hi;
    }

    // mu = hw - sum n_i a_i, in integers over a common denominator.
    let d = lcm_of_denominators(hw.coords().iter().chain(simple.iter().flat_map(|a| a.coords().iter())));
    let to_scaled = |x: &Q| *x.numer() * (d / *x.denom());
    let hw_scaled: Vec<i64> = hw.coords().iter().map(to_scaled).collect();
    let simple_scaled: Vec<Vec<i64>> = simple.iter().map(|a| a.coords().iter().map(to_scaled).collect()).collect();
    let dim = hw.dim();
    let entries = mults.iter().enumerate().map(|(slot, &m)| {
        let n = &depths[slot * rank..(slot + 1) * rank];
        let coords = (0..dim)
            .map(|k| {
                let x = hw_scaled[k] - (0..rank).map(|i| n[i] as i64 * simple_scaled[i][k]).sum::<i64>();
                Q::new(x, d)
            })
            .collect();
        (Weight(coords), m)
    });
    Ok(FormalCharacter::from_distinct(entries))
}

/// `prod_{beta > 0} (hw + rho, beta) / (rho, beta)`.
pub fn weyl_dimension(system: &RootSystem, hw: &Weight) -> Result<u64, CharError> {
    check_highest_weight(system, hw)?;
    let rho = system.rho();
    let shifted = hw + &rho;
    let big = |x: Q| BigRational::new(BigInt::from(*x.numer()), BigInt::from(*x.denom()));
    let mut prod = BigRational::one();
    for beta in system.positive_roots() {
        prod *= big(system.inner(&shifted, beta)) / big(system.inner(&rho, beta));
    }
    assert!(prod.is_integer());
    Ok(prod.to_integer().to_u64().expect("dimension fits in u64"))
}

pub fn tensor_character(a: &FormalCharacter, b: &FormalCharacter) -> Result<FormalCharacter, CharError> {
    if let (Some(da), Some(db)) = (a.torus_dim(), b.torus_dim()) {
        if da != db {
            return Err(CharError::TorusMismatch(da, db));
        }
    }
    let mut out = FormalCharacter::new();
    for (wa, ma) in &a.entries {
        for (wb, mb) in &b.entries {
            out.add(wa + wb, ma * mb);
        }
    }
    out.grading = a.grading.clone().or_else(|| b.grading.clone());
    Ok(out)
}

type IntChar = BTreeMap<Weight, i128>;

fn int_mul(a: &IntChar, b: &IntChar) -> IntChar {
    let mut out = IntChar::new();
    for (wa, ma) in a {
        for (wb, mb) in b {
            *out.entry(wa + wb).or_insert(0) += ma * mb;
        }
    }
    out.retain(|_, m| *m != 0);
    out
}

/// Characters of `S^0(v), ..., S^max(v)`, by the Newton recursion
/// `k h_k = sum_{i=1..k} p_i h_{k-i}` with Adams operations `p_i`.
pub fn sym_power_series(v: &FormalCharacter, max: usize) -> Vec<FormalCharacter> {
    sym_power_series_in(v, v.torus_dim().unwrap_or(0), max)
}

/// As [`sym_power_series`], with the torus dimension given explicitly so
/// that the empty character still has a trivial `S^0` of the right size.
pub fn sym_power_series_in(v: &FormalCharacter, dim: usize, max: usize) -> Vec<FormalCharacter> {
    let mut h: Vec<IntChar> = vec![IntChar::from([(Weight::zero(dim), 1)])];
    let adams = |i: usize| -> IntChar {
        v.entries
            .iter()
            .map(|(w, m)| (w.scale(Q::from(i as i64)), *m as i128))
            .fold(IntChar::new(), |mut acc, (w, m)| {
                *acc.entry(w).or_insert(0) += m;
                acc
            })
    };
    let powers: Vec<IntChar> = (1..=max).map(adams).collect();
    for k in 1..=max {
        let mut acc = IntChar::new();
        for i in 1..=k {
            for (w, m) in int_mul(&powers[i - 1], &h[k - i]) {
                *acc.entry(w).or_insert(0) += m;
            }
        }
        let hk: IntChar = acc
            .into_iter()
            .filter(|(_, m)| *m != 0)
            .map(|(w, m)| {
                debug_assert_eq!(m % k as i128, 0);
                (w, m / k as i128)
            })
            .collect();
        h.push(hk);
    }
    h.into_iter()
        .map(|c| {
            let mut fc = FormalCharacter::from_entries(c.into_iter().map(|(w, m)| {
                assert!(m > 0, "symmetric power multiplicities are positive");
                (w, m as u64)
            }));
            fc.grading = v.grading.clone();
            fc
        })
        .collect()
}

pub fn sym_power_character(v: &FormalCharacter, k: usize) -> FormalCharacter {
    sym_power_series(v, k).pop().expect("series is non-empty")
}

pub fn dual_character(chi: &FormalCharacter) -> FormalCharacter {
    FormalCharacter {
        entries: chi.entries.iter().map(|(w, m)| (-w, *m)).collect(),
        grading: chi.grading.clone(),
    }
}

/// Decomposes a character into irreducible highest weight constituents by
/// repeatedly removing the character of the highest remaining weight.
///
/// "Highest" is measured by the pairing with the half sum of positive
/// coroots (ties broken by coordinates), which refines the dominance order.
pub fn strip_to_highest_weights(system: &RootSystem, chi: &FormalCharacter) -> Result<HWDecomposition, CharError> {
    if let Some(d) = chi.torus_dim() {
        if d != system.dim() {
            return Err(CharError::TorusMismatch(d, system.dim()));
        }
    }
    let rc = system.rho_check_vector();
    let key = |w: &Weight| (system.inner(w, &rc), w.clone());
    let mut residual: BTreeMap<(Q, Weight), i128> =
        chi.entries.iter().map(|(w, m)| (key(w), *m as i128)).collect();
    let mut parts = Vec::new();
    while let Some((k, m)) = residual.iter().next_back().map(|(k, m)| (k.clone(), *m)) {
        let w = k.1.clone();
        if m < 0 || !system.is_dominant_integral(&w) {
            return Err(CharError::NotModuleCharacter { weight: w.to_string(), mult: m });
        }
        let irr = freudenthal_character(system, &w)?;
        for (x, mx) in irr.entries() {
            let e = residual.entry(key(x)).or_insert(0);
            *e -= m * *mx as i128;
        }
        residual.retain(|_, v| *v != 0);
        parts.push((w, m as u64));
    }
    Ok(HWDecomposition { parts })
}
