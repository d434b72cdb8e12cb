//! Generalized Verma modules `ind_q^g(F)`: infinitesimal characters,
//! good-range and irreducibility tests, the graded branching table of the
//! restriction to `g'`, and the reports read off from it.
//!
//! Conventions: `F` is an irreducible module of the Levi factor with `u`
//! acting trivially, highest weights are taken for positive systems inside
//! `q`, and the good range is the strict inequality `(λ + ρ(u), α) < 0` for
//! every root `α` of `u`, with `λ = F_hw + ρ(l)`.

use crate::character::{
    freudenthal_character, strip_to_highest_weights, sym_power_series_in, tensor_character, weyl_dimension,
    CharError, FormalCharacter,
};
use crate::embedding::{check_quasi_abelian, check_weakly_compatible, EmbeddingError, ParabolicDatum};
use crate::rational::{format_q, is_positive_integer, serialize_opt_q, serialize_q, Q};
use crate::root_system::{RootSystem, Weight, WeylOrbit};
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use std::collections::BTreeMap;

/// Default bound on the number of monomials the oracle may enumerate.
pub const DEFAULT_LEVEL_CAP: usize = 2_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum VermaError {
    #[error("not a highest weight: {0}")]
    NotHighestWeight(String),
    #[error(transparent)]
    Embedding(#[from] EmbeddingError),
    #[error(transparent)]
    Character(#[from] CharError),
    #[error("branching is only defined for modules induced on the ambient side")]
    WrongSide,
    #[error("refused: complete reducibility is not certified for this table")]
    NotCertified,
    #[error("truncation too deep: more than {cap} monomials")]
    TruncationTooDeep { cap: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Ambient,
    Subalgebra,
}

/// The pieces of `q = l ⊕ u ⊂ g` needed by the induced-module tests, on
/// either side of the pair.
#[derive(Debug, Clone, Copy)]
pub struct Induction<'a> {
    pub full: &'a RootSystem,
    pub levi: &'a RootSystem,
    pub delta_u: &'a [Weight],
}

impl<'a> Induction<'a> {
    pub fn ambient(p: &'a ParabolicDatum) -> Self {
        Induction { full: &p.pair.g, levi: &p.levi, delta_u: &p.delta_u }
    }

    pub fn subalgebra(p: &'a ParabolicDatum) -> Self {
        Induction { full: &p.pair.g_prime, levi: &p.levi_prime, delta_u: &p.u_prime }
    }

    pub fn rho_u(&self) -> Weight {
        crate::root_system::rho_of(self.delta_u, self.full.dim())
    }

    /// `F_hw + ρ(l)`.
    pub fn levi_parameter(&self, hw: &Weight) -> Weight {
        hw + &self.levi.rho()
    }

    pub fn check_highest_weight(&self, hw: &Weight) -> Result<(), VermaError> {
        if hw.dim() != self.full.dim() || !self.levi.is_dominant_integral(hw) {
            return Err(VermaError::NotHighestWeight(hw.to_string()));
        }
        Ok(())
    }

    /// Good range for an explicit Levi parameter `λ`.
    pub fn good_range_at(&self, lambda: &Weight) -> bool {
        let x = lambda + &self.rho_u();
        self.delta_u.iter().all(|a| self.full.inner(&x, a).is_negative())
    }

    /// Sufficient irreducibility criterion for an explicit Levi parameter `λ`:
    /// `2(λ + ρ(u), α)/(α, α)` is never a positive integer.
    pub fn irreducibility_at(&self, lambda: &Weight) -> Irreducibility {
        let x = lambda + &self.rho_u();
        if self.delta_u.iter().any(|a| is_positive_integer(&self.full.coroot_pairing(&x, a))) {
            Irreducibility::CriterionInconclusive
        } else {
            Irreducibility::CertifiedIrreducible
        }
    }

    pub fn is_good_range(&self, hw: &Weight) -> bool {
        self.good_range_at(&self.levi_parameter(hw))
    }

    pub fn irreducibility(&self, hw: &Weight) -> Irreducibility {
        self.irreducibility_at(&self.levi_parameter(hw))
    }

    pub fn infinitesimal_character(&self, hw: &Weight) -> Result<InfinitesimalCharacter, VermaError> {
        let rep = &self.levi_parameter(hw) + &self.rho_u();
        let orbit = self.full.weyl_orbit(&rep).map_err(|e| VermaError::NotHighestWeight(e.to_string()))?;
        Ok(InfinitesimalCharacter { algebra: self.full.label().to_string(), orbit })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Irreducibility {
    CertifiedIrreducible,
    CriterionInconclusive,
}

impl Irreducibility {
    pub fn is_certified(self) -> bool {
        self == Irreducibility::CertifiedIrreducible
    }
}

/// A Weyl orbit; two infinitesimal characters are equal when their orbits are.
#[derive(Debug, Clone)]
pub struct InfinitesimalCharacter {
    pub algebra: String,
    pub orbit: WeylOrbit,
}

impl PartialEq for InfinitesimalCharacter {
    fn eq(&self, other: &Self) -> bool {
        self.algebra == other.algebra && self.orbit.elements == other.orbit.elements
    }
}

impl Eq for InfinitesimalCharacter {}

impl Serialize for InfinitesimalCharacter {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("InfinitesimalCharacter", 2)?;
        st.serialize_field("algebra", &self.algebra)?;
        st.serialize_field("orbit", &self.orbit.elements.iter().collect::<Vec<_>>())?;
        st.end()
    }
}

#[derive(Debug, Clone)]
pub struct VermaDescriptor {
    pub parabolic: ParabolicDatum,
    pub f_hw: Weight,
    pub side: Side,
}

impl VermaDescriptor {
    pub fn new(parabolic: ParabolicDatum, f_hw: Weight, side: Side) -> Result<Self, VermaError> {
        let d = VermaDescriptor { parabolic, f_hw, side };
        d.induction().check_highest_weight(&d.f_hw)?;
        Ok(d)
    }

    pub fn induction(&self) -> Induction<'_> {
        match self.side {
            Side::Ambient => Induction::ambient(&self.parabolic),
            Side::Subalgebra => Induction::subalgebra(&self.parabolic),
        }
    }

    pub fn infinitesimal_character(&self) -> Result<InfinitesimalCharacter, VermaError> {
        self.induction().infinitesimal_character(&self.f_hw)
    }

    pub fn is_good_range(&self) -> bool {
        self.induction().is_good_range(&self.f_hw)
    }

    pub fn verma_irreducibility(&self) -> Irreducibility {
        self.induction().irreducibility(&self.f_hw)
    }

    /// Character of `F` on the torus of its own side.
    pub fn f_character(&self) -> Result<FormalCharacter, VermaError> {
        Ok(freudenthal_character(self.induction().levi, &self.f_hw)?)
    }
}

/// Highest weight of `(F')* ⊗ C_{-2ρ(u')}`.
pub fn fdual(f_prime: &Weight, p: &ParabolicDatum) -> Result<Weight, VermaError> {
    let ind = Induction::subalgebra(p);
    ind.check_highest_weight(f_prime)?;
    let lowest = p.levi_prime.antidominant_conjugate(f_prime);
    Ok(&(-&lowest) - &p.rho_u_prime().scale(Q::from(2)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Depth {
    pub max_degree: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Grade {
    pub degree: usize,
    #[serde(serialize_with = "serialize_q")]
    pub level: Q,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BranchSummand {
    pub hw: Weight,
    pub mult: u64,
    pub grade: Grade,
    pub good_range: bool,
    pub irreducible: bool,
    /// `false` when higher symmetric degrees could still add to this level.
    pub complete: bool,
    pub infl_char: InfinitesimalCharacter,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CompleteReducibility {
    Certified,
    CertifiedViaSummands,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdicts {
    pub weakly_compatible: bool,
    pub quasi_abelian: bool,
    pub source_good_range: bool,
    pub source_irreducible: bool,
    pub completely_reducible: CompleteReducibility,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DepthReport {
    pub max_degree: usize,
    /// Lowest relative H-level at which the table is provably complete;
    /// `None` when the whole table is finite and complete.
    #[serde(serialize_with = "serialize_opt_q")]
    pub complete_to_level: Option<Q>,
    /// Every level strictly above this bound is complete.
    #[serde(serialize_with = "serialize_opt_q")]
    pub complete_above: Option<Q>,
    pub fully_complete: bool,
}

impl DepthReport {
    pub fn is_complete_at(&self, level: &Q) -> bool {
        match &self.complete_above {
            None => true,
            Some(b) => level > b,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MultiplicityStats {
    /// Largest total multiplicity of one `F'` within the complete range.
    pub sup_observed: u64,
    pub multiplicity_free: bool,
    pub summand_count: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct SourceReport {
    pub pair: String,
    pub g: String,
    pub g_prime: String,
    #[serde(serialize_with = "crate::rational::serialize_q_vec")]
    pub h: Vec<Q>,
    pub levi_refinement: Vec<Weight>,
    pub f_hw: Weight,
    pub f_dimension: u64,
    pub infl_char: InfinitesimalCharacter,
}

#[derive(Debug, Clone, Serialize)]
pub struct BranchingTable {
    pub source: SourceReport,
    pub depth: DepthReport,
    pub verdicts: Verdicts,
    pub summands: Vec<BranchSummand>,
    pub stats: MultiplicityStats,
    #[serde(skip)]
    pub descriptor: VermaDescriptor,
    /// Character of `F` restricted to `t'`.
    #[serde(skip)]
    pub f_restricted: FormalCharacter,
}

impl BranchingTable {
    /// Total multiplicity of each `F'` over the complete range.
    pub fn multiplicities(&self) -> BTreeMap<Weight, u64> {
        let mut m = BTreeMap::new();
        for s in self.summands.iter().filter(|s| s.complete) {
            *m.entry(s.hw.clone()).or_insert(0) += s.mult;
        }
        m
    }

    pub fn parabolic(&self) -> &ParabolicDatum {
        &self.descriptor.parabolic
    }

    /// H-level of `F'` relative to the level of `F`.
    pub fn relative_level(&self, f_prime: &Weight) -> Q {
        let p = self.parabolic();
        p.level(f_prime) - p.level(&p.pair.restrict(&self.descriptor.f_hw))
    }
}

fn character_of(weights: &[Weight], h: &[Q]) -> FormalCharacter {
    FormalCharacter::from_entries(weights.iter().map(|w| (w.clone(), 1))).with_grading(h.to_vec())
}

/// The graded branching law of `ind_q^g(F)` restricted to `g'`, through
/// symmetric degree `depth.max_degree` of `ū''`.
pub fn branch(v: &VermaDescriptor, depth: Depth) -> Result<BranchingTable, VermaError> {
    if v.side != Side::Ambient {
        return Err(VermaError::WrongSide);
    }
    let p = &v.parabolic;
    let wc = check_weakly_compatible(p);
    if let Some(id) = wc.violated {
        return Err(EmbeddingError::NotWeaklyCompatible(id).into());
    }
    let pair = &p.pair;
    let dim_p = pair.g_prime.dim();
    let f_char = v.f_character()?;
    let f_restricted = f_char.restrict(&pair.restriction).with_grading(p.h.clone());
    let ubar = p.ubar_dprime();
    let ubar_char = character_of(&ubar, &p.h);
    let series = sym_power_series_in(&ubar_char, dim_p, depth.max_degree);

    // Completeness bound from the smallest |H-level| on ū''.
    let min_level = ubar.iter().map(|w| -p.level(w)).min();
    let f_level = p.level(&pair.restrict(&v.f_hw));
    let (complete_above, complete_to_level) = match min_level {
        None => (None, None),
        Some(m) => {
            let bound = -(m * Q::from((depth.max_degree + 1) as i64));
            let lowest = series
                .iter()
                .flat_map(|s| s.entries().keys().map(|w| p.level(w)))
                .filter(|l| *l > bound)
                .min();
            (Some(bound), lowest)
        }
    };
    let depth_report = DepthReport {
        max_degree: depth.max_degree,
        complete_to_level,
        complete_above,
        fully_complete: min_level.is_none(),
    };

    let levi_prime = &p.levi_prime;
    let parts: Vec<Vec<(usize, Weight, u64)>> = series
        .par_iter()
        .enumerate()
        .map(|(k, s)| -> Result<Vec<(usize, Weight, u64)>, VermaError> {
            let chi = tensor_character(&f_restricted, s)?;
            let dec = strip_to_highest_weights(levi_prime, &chi)?;
            Ok(dec.parts.into_iter().map(|(hw, m)| (k, hw, m)).collect())
        })
        .collect::<Result<_, _>>()?;

    let sub = Induction::subalgebra(p);
    let mut summands = Vec::new();
    for (k, hw, mult) in parts.into_iter().flatten() {
        let level = p.level(&hw) - f_level;
        let lambda = sub.levi_parameter(&hw);
        summands.push(BranchSummand {
            good_range: sub.good_range_at(&lambda),
            irreducible: sub.irreducibility_at(&lambda).is_certified(),
            complete: depth_report.is_complete_at(&level),
            infl_char: sub.infinitesimal_character(&hw)?,
            grade: Grade { degree: k, level },
            hw,
            mult,
        });
    }
    summands.sort_by(|a, b| (a.grade.degree, &a.hw).cmp(&(b.grade.degree, &b.hw)));

    let quasi_abelian = check_quasi_abelian(p).passed;
    let source_good_range = v.is_good_range();
    let complete: Vec<&BranchSummand> = summands.iter().filter(|s| s.complete).collect();
    let completely_reducible = if quasi_abelian && source_good_range {
        CompleteReducibility::Certified
    } else if !complete.is_empty() && complete.iter().all(|s| s.irreducible) {
        CompleteReducibility::CertifiedViaSummands
    } else {
        CompleteReducibility::Unknown
    };
    let verdicts = Verdicts {
        weakly_compatible: true,
        quasi_abelian,
        source_good_range,
        source_irreducible: v.verma_irreducibility().is_certified(),
        completely_reducible,
    };
    let mut table = BranchingTable {
        source: SourceReport {
            pair: pair.name.clone(),
            g: pair.g.label().to_string(),
            g_prime: pair.g_prime.label().to_string(),
            h: p.h.clone(),
            levi_refinement: p.refinement.clone(),
            f_hw: v.f_hw.clone(),
            f_dimension: f_char.dimension(),
            infl_char: v.infinitesimal_character()?,
        },
        depth: depth_report,
        verdicts,
        summands,
        stats: MultiplicityStats { sup_observed: 0, multiplicity_free: true, summand_count: 0 },
        descriptor: v.clone(),
        f_restricted,
    };
    let mults = table.multiplicities();
    let sup = mults.values().copied().max().unwrap_or(0);
    table.stats = MultiplicityStats {
        sup_observed: sup,
        multiplicity_free: sup <= 1,
        summand_count: table.summands.len(),
    };
    Ok(table)
}

pub fn complete_reducibility_verdict(table: &BranchingTable) -> CompleteReducibility {
    table.verdicts.completely_reducible
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomReport {
    pub f_prime: Weight,
    pub dimension: u64,
    /// `false` means the dimension is only a lower bound.
    pub exact: bool,
    pub irreducible: bool,
    pub zero: bool,
}

/// Dimension of `Hom_{g'}(ind_{q'}^{g'}(F'), ind_q^g(F))` read off the table.
pub fn hom_space_report(table: &BranchingTable, f_prime: &Weight) -> Result<HomReport, VermaError> {
    Induction::subalgebra(table.parabolic()).check_highest_weight(f_prime)?;
    let level = table.relative_level(f_prime);
    let exact = table.depth.is_complete_at(&level);
    let dimension: u64 = table.summands.iter().filter(|s| &s.hw == f_prime).map(|s| s.mult).sum();
    Ok(HomReport {
        f_prime: f_prime.clone(),
        dimension,
        exact,
        irreducible: table.verdicts.completely_reducible == CompleteReducibility::Certified && dimension > 0,
        zero: dimension == 0 && exact,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct Assertions {
    pub theta_stable: Option<bool>,
    pub transitivity_asserted: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransferEntry {
    pub label: String,
    pub hw: Weight,
    pub mult: u64,
    pub grade: Grade,
    pub good_range: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransferReport {
    /// Number of compact roots in `u'`; `None` without involution data.
    pub s: Option<usize>,
    pub entries: Vec<TransferEntry>,
    pub all_good_range: bool,
    pub statement: String,
    pub hypotheses: Vec<String>,
    pub banner: Option<String>,
}

/// Relabels the summands of a certified table as cohomologically induced
/// modules and re-verifies the good range of each one.
pub fn cohomological_transfer_report(table: &BranchingTable, a: Assertions) -> Result<TransferReport, VermaError> {
    if table.verdicts.completely_reducible != CompleteReducibility::Certified {
        return Err(VermaError::NotCertified);
    }
    let p = table.parabolic();
    let s = p.pair.theta.as_ref().map(|_| {
        p.u_prime
            .iter()
            .filter(|r| p.pair.is_compact_prime_root(r) == Some(true))
            .count()
    });
    let s_label = s.map_or("S".to_string(), |n| n.to_string());
    let sub = Induction::subalgebra(p);
    let entries: Vec<TransferEntry> = table
        .summands
        .iter()
        .map(|x| TransferEntry {
            label: format!("L^{s_label}_q'({})", x.hw),
            hw: x.hw.clone(),
            mult: x.mult,
            grade: x.grade.clone(),
            good_range: sub.is_good_range(&x.hw),
        })
        .collect();
    let mut missing = Vec::new();
    if a.theta_stable != Some(true) {
        missing.push("theta_stable");
    }
    if a.transitivity_asserted != Some(true) {
        missing.push("transitivity_asserted");
    }
    Ok(TransferReport {
        s,
        all_good_range: entries.iter().all(|e| e.good_range),
        entries,
        statement: format!(
            "Hom_g'(ind_q'(F'), ind_q(F)) ≅ Hom_(g',K')(L^{s_label}_q'(F'), L_q(F)) for every F' in the table"
        ),
        hypotheses: vec![
            "q is theta-stable".into(),
            "K' acts transitively on K/L_K".into(),
            "F is in the good range".into(),
            "q is quasi-abelian with respect to g'".into(),
        ],
        banner: (!missing.is_empty()).then(|| format!("hypotheses unverified: {}", missing.join(", "))),
    })
}

/// Per-level data: dimension and `t'`-character.
pub type LevelTable = BTreeMap<Q, FormalCharacter>;

/// Monomial cap for the oracle, from `BRANCH_LEVEL_CAP` when set.
pub fn level_cap() -> usize {
    std::env::var("BRANCH_LEVEL_CAP")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_LEVEL_CAP)
}

/// Characters of `ind_q^g(F) ≅ S(ū) ⊗ F` per relative H-level down to
/// `max_level`, by direct enumeration of monomials in the roots of `ū`.
pub fn truncated_character_oracle(v: &VermaDescriptor, max_level: Q, cap: usize) -> Result<LevelTable, VermaError> {
    let p = &v.parabolic;
    let pair = &p.pair;
    let roots: Vec<(Weight, Q)> = p
        .delta_ubar()
        .iter()
        .map(|r| {
            let y = pair.restrict(r);
            let l = p.level(&y);
            (y, l)
        })
        .collect();
    // Monomial t'-weights grouped by level.
    let mut monomials: BTreeMap<Q, BTreeMap<Weight, u64>> = BTreeMap::new();
    let mut count = 0usize;
    let mut stack: Vec<(usize, Weight, Q)> = vec![(0, Weight::zero(pair.g_prime.dim()), Q::zero())];
    while let Some((start, w, l)) = stack.pop() {
        count += 1;
        if count > cap {
            return Err(VermaError::TruncationTooDeep { cap });
        }
        *monomials.entry(l).or_default().entry(w.clone()).or_insert(0) += 1;
        for (i, (y, ly)) in roots.iter().enumerate().skip(start) {
            let nl = l + *ly;
            if nl >= max_level {
                stack.push((i, &w + y, nl));
            }
        }
    }
    let f = v.f_character()?.restrict(&pair.restriction);
    let mut out = LevelTable::new();
    for (l, ws) in monomials {
        let chi = tensor_character(&FormalCharacter::from_entries(ws), &f)?;
        out.insert(l, chi);
    }
    Ok(out)
}

/// Rebuilds per-level characters from a table:
/// `Σ mult · [S(ū') ⊗ F']`, truncated at `max_level`.
pub fn reconstruct_from_table(table: &BranchingTable, max_level: Q) -> Result<LevelTable, VermaError> {
    let p = table.parabolic();
    let ubar_prime: Vec<Weight> = p.u_prime.iter().map(|r| -r).collect();
    let min_level = ubar_prime.iter().map(|w| -p.level(w)).min();
    let mut out = LevelTable::new();
    let relevant: Vec<&BranchSummand> = table
        .summands
        .iter()
        .filter(|s| s.grade.level >= max_level)
        .collect();
    let top = relevant.iter().map(|s| s.grade.level).max();
    let Some(top) = top else { return Ok(out) };
    let max_k = match min_level {
        None => 0,
        Some(m) => ((top - max_level) / m).to_integer().max(0) as usize,
    };
    let series = sym_power_series_in(
        &FormalCharacter::from_entries(ubar_prime.iter().map(|w| (w.clone(), 1))),
        p.pair.g_prime.dim(),
        max_k,
    );
    let f_level = p.level(&p.pair.restrict(&table.descriptor.f_hw));
    for s in relevant {
        let fp = freudenthal_character(&p.levi_prime, &s.hw)?;
        for sk in &series {
            for (w, m) in tensor_character(&fp, sk)?.entries() {
                let l = p.level(w) - f_level;
                if l >= max_level {
                    out.entry(l).or_default().add(w.clone(), m * s.mult);
                }
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleDiscrepancy {
    #[serde(serialize_with = "serialize_q")]
    pub level: Q,
    pub table: FormalCharacter,
    pub oracle: FormalCharacter,
}

impl std::fmt::Display for OracleDiscrepancy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let show = |c: &FormalCharacter| {
            c.entries()
                .iter()
                .map(|(w, m)| format!("{w}:{m}"))
                .collect::<Vec<_>>()
                .join(" ")
        };
        write!(
            f,
            "oracle mismatch at level {}: table {{{}}} oracle {{{}}}",
            format_q(&self.level),
            show(&self.table),
            show(&self.oracle)
        )
    }
}

/// Level down to which the oracle comparison is run for a table.
pub fn comparison_level(table: &BranchingTable) -> Q {
    if let Some(l) = table.depth.complete_to_level {
        return l;
    }
    // Finite branching: compare through the same number of ū' steps.
    let p = table.parabolic();
    let m = p.u_prime.iter().map(|r| p.level(r)).min().unwrap_or(Q::zero());
    -(m * Q::from(table.depth.max_degree as i64))
}

/// First level where the reconstructed and oracle characters differ.
pub fn compare_with_oracle(
    table: &BranchingTable,
    max_level: Q,
    cap: usize,
) -> Result<Option<OracleDiscrepancy>, VermaError> {
    let oracle = truncated_character_oracle(&table.descriptor, max_level, cap)?;
    let rebuilt = reconstruct_from_table(table, max_level)?;
    let mut levels: Vec<Q> = oracle.keys().chain(rebuilt.keys()).copied().collect();
    levels.sort();
    levels.dedup();
    for l in levels.into_iter().rev() {
        let a = rebuilt.get(&l).cloned().unwrap_or_default();
        let b = oracle.get(&l).cloned().unwrap_or_default();
        if a.entries() != b.entries() {
            return Ok(Some(OracleDiscrepancy { level: l, table: a, oracle: b }));
        }
    }
    Ok(None)
}

/// Dimension of `F'` for a summand, via the Weyl formula on `l'`.
pub fn summand_dimension(p: &ParabolicDatum, hw: &Weight) -> Result<u64, VermaError> {
    Ok(weyl_dimension(&p.levi_prime, hw)?)
}
