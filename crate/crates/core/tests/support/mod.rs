//! Test-only oracles that share no code with the library algorithms.

#![allow(dead_code)]

use branching_core::rational::Q;
use branching_core::root_system::{RootSystem, Weight};
use std::collections::{BTreeMap, HashMap, VecDeque};

/// Weyl group as `(w(ρ), sign)` pairs; `w` is determined by `w(ρ)`.
pub fn weyl_elements(g: &RootSystem) -> Vec<(Vec<Q>, i64)> {
    let rho = g.rho();
    let mut seen: BTreeMap<Vec<Q>, i64> = BTreeMap::new();
    let mut queue = VecDeque::new();
    seen.insert(rho.0.clone(), 1);
    queue.push_back((rho.0.clone(), 1i64));
    while let Some((v, s)) = queue.pop_front() {
        for a in g.simple_roots() {
            let r = g.reflect(&Weight(v.clone()), a).0;
            if !seen.contains_key(&r) {
                seen.insert(r.clone(), -s);
                queue.push_back((r, -s));
            }
        }
    }
    seen.into_iter().collect()
}

/// Applies the Weyl element sending `ρ` to `w_rho` to `x`, by walking a
/// reduced word found from `w_rho` back to `ρ`.
pub fn apply(g: &RootSystem, w_rho: &[Q], x: &Weight) -> Weight {
    // Reflections taking w(ρ) to the dominant chamber give w^{-1} as a word
    // s_k ... s_1; then w = s_1 ... s_k.
    let mut v = Weight(w_rho.to_vec());
    let mut word = Vec::new();
    while let Some(i) = g.simple_roots().iter().position(|a| g.inner(&v, a) < Q::from(0)) {
        v = g.reflect(&v, &g.simple_roots()[i]);
        word.push(i);
    }
    let mut out = x.clone();
    for &i in word.iter().rev() {
        out = g.reflect(&out, &g.simple_roots()[i]);
    }
    out
}

pub struct Kostant {
    roots: Vec<Vec<i64>>,
    memo: HashMap<(Vec<i64>, usize), u64>,
}

impl Kostant {
    /// Positive roots must have integer coordinates.
    pub fn new(g: &RootSystem) -> Self {
        let roots = g
            .positive_roots()
            .iter()
            .map(|r| r.0.iter().map(|c| c.to_integer()).collect())
            .collect();
        Kostant { roots, memo: HashMap::new() }
    }

    /// Number of ways to write `v` as a non-negative integer combination of
    /// positive roots.
    pub fn partitions(&mut self, v: &[i64]) -> u64 {
        self.count(v.to_vec(), 0)
    }

    fn count(&mut self, v: Vec<i64>, i: usize) -> u64 {
        if v.iter().all(|&c| c == 0) {
            return 1;
        }
        if i == self.roots.len() || v.iter().any(|&c| c < 0) {
            return 0;
        }
        if let Some(&c) = self.memo.get(&(v.clone(), i)) {
            return c;
        }
        let beta = self.roots[i].clone();
        let mut total = 0;
        let mut cur = v.clone();
        while cur.iter().all(|&c| c >= 0) {
            total += self.count(cur.clone(), i + 1);
            for (c, b) in cur.iter_mut().zip(&beta) {
                *c -= b;
            }
        }
        self.memo.insert((v, i), total);
        total
    }
}

/// Kostant's alternating sum `m_λ(μ) = Σ_w sgn(w) P(w(λ+ρ) − (μ+ρ))`.
pub fn kostant_multiplicity(g: &RootSystem, lambda: &Weight, mu: &Weight) -> i64 {
    let rho = g.rho();
    let shifted = lambda + &rho;
    let target = mu + &rho;
    let mut k = Kostant::new(g);
    let mut total = 0i64;
    for (w_rho, sign) in weyl_elements(g) {
        let d = &apply(g, &w_rho, &shifted) - &target;
        if d.0.iter().all(|c| c.is_integer()) {
            let v: Vec<i64> = d.0.iter().map(|c| c.to_integer()).collect();
            total += sign * k.partitions(&v) as i64;
        }
    }
    total
}
