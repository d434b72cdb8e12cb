//! Reductive pairs `g' ⊂ g` at weight level, parabolics `q(H)` and their
//! refinements, and the structural checks run on them.
//!
//! Weights of `g` are written in the ambient coordinates of `g`, weights of
//! `g'` in those of `g'`. The restriction `t* -> t'*` is the row-vector map
//! `x -> x R`. An element `H` of `t'` is given by its values on the `t'*`
//! coordinate basis, so the H-level of a `t'`-weight `y` is `y . H`.

use crate::convex;
use crate::linalg::{self, Matrix};
use crate::rational::Q;
use crate::root_system::{RootSystem, Weight};
use num_traits::{Signed, Zero};
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EmbeddingError {
    #[error("restriction matrix has shape {rows}x{cols}, expected {want_rows}x{want_cols}")]
    RestrictionShape { rows: usize, cols: usize, want_rows: usize, want_cols: usize },
    #[error("inconsistent embedding: {0}")]
    Inconsistent(String),
    #[error("H has {got} entries, expected {want}")]
    HShape { got: usize, want: usize },
    #[error("not a Levi subsystem: {0}")]
    NotLeviSubsystem(String),
    #[error("not weakly compatible: {0} violated")]
    NotWeaklyCompatible(String),
    #[error("not a restricted root: {0}")]
    NotRestrictedRoot(String),
    #[error("convexity violation at {0}")]
    ConvexityViolation(String),
    #[error("no involution data")]
    NoInvolutionData,
    #[error("unknown catalog entry `{0}`")]
    UnknownCatalogEntry(String),
}

/// Involution metadata: the compact roots and the action on coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThetaData {
    /// Roots of `g` (either sign may be listed) whose root spaces lie in `k`.
    pub compact_roots: Vec<Weight>,
    /// Action on `t*` coordinates (row-vector convention), a signed permutation.
    pub action: Matrix,
}

impl ThetaData {
    pub fn inner(compact_roots: Vec<Weight>, dim: usize) -> Self {
        ThetaData { compact_roots, action: linalg::identity(dim) }
    }

    pub fn is_compact(&self, root: &Weight) -> bool {
        self.compact_roots.iter().any(|c| c == root || &(-c) == root)
    }
}

/// An ideal `k1` of `k` inside `g'`, given by its roots (in `t'*`
/// coordinates) and the restriction `t'* -> t_{k1}*`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct K1Data {
    pub roots: Vec<Weight>,
    pub projection: Matrix,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductivePair {
    pub name: String,
    pub g: RootSystem,
    pub g_prime: RootSystem,
    pub restriction: Matrix,
    /// For each root of `g'`, the roots of `g` whose root vectors combine
    /// into it.
    pub support: BTreeMap<Weight, Vec<Weight>>,
    pub theta: Option<ThetaData>,
    pub k1: Option<K1Data>,
}

fn multiset<I: IntoIterator<Item = Weight>>(it: I) -> BTreeMap<Weight, usize> {
    let mut m = BTreeMap::new();
    for w in it {
        *m.entry(w).or_insert(0) += 1;
    }
    m
}

impl ReductivePair {
    /// Validates the weight-level consistency of a claimed embedding. When
    /// `support` is `None`, every root of `g'` is supported on its full fiber.
    pub fn new(
        name: impl Into<String>,
        g: RootSystem,
        g_prime: RootSystem,
        restriction: Matrix,
        support: Option<BTreeMap<Weight, Vec<Weight>>>,
        theta: Option<ThetaData>,
        k1: Option<K1Data>,
    ) -> Result<Self, EmbeddingError> {
        let (rows, cols) = (restriction.len(), restriction.first().map_or(0, Vec::len));
        if rows != g.dim() || cols != g_prime.dim() || restriction.iter().any(|r| r.len() != cols) {
            return Err(EmbeddingError::RestrictionShape {
                rows,
                cols,
                want_rows: g.dim(),
                want_cols: g_prime.dim(),
            });
        }
        if linalg::rank(&restriction) != g_prime.dim() {
            return Err(EmbeddingError::Inconsistent("restriction is not surjective onto t'*".into()));
        }
        let mut pair = ReductivePair {
            name: name.into(),
            g,
            g_prime,
            restriction,
            support: BTreeMap::new(),
            theta,
            k1,
        };
        let weights = multiset(pair.g_weight_multiset());
        let prime = multiset(pair.g_prime.roots());
        for (r, n) in &prime {
            if weights.get(r).copied().unwrap_or(0) < *n {
                return Err(EmbeddingError::Inconsistent(format!("root {r} of g' is not a weight of g")));
            }
        }
        let total: usize = weights.values().sum();
        if total != pair.g.roots().len() + pair.g.dim() {
            return Err(EmbeddingError::Inconsistent("weight count of g does not match".into()));
        }
        pair.check_induced_form()?;
        let support = match support {
            Some(s) => s,
            None => pair.g_prime.roots().into_iter().map(|r| (r.clone(), pair.fiber(&r))).collect(),
        };
        for r in pair.g_prime.roots() {
            let s = support
                .get(&r)
                .ok_or_else(|| EmbeddingError::Inconsistent(format!("no support given for root {r}")))?;
            if s.is_empty() || s.iter().any(|b| !pair.g.is_root(b) || pair.restrict(b) != r) {
                return Err(EmbeddingError::Inconsistent(format!("bad support for root {r}")));
            }
        }
        pair.support = support;
        if let Some(theta) = &pair.theta {
            pair.check_theta(theta)?;
        }
        if let Some(k1) = &pair.k1 {
            if k1.projection.len() != pair.g_prime.dim() {
                return Err(EmbeddingError::Inconsistent("k1 projection has the wrong number of rows".into()));
            }
        }
        Ok(pair)
    }

    fn check_theta(&self, theta: &ThetaData) -> Result<(), EmbeddingError> {
        let n = self.g.dim();
        let a = &theta.action;
        let signed_perm = a.len() == n
            && a.iter().all(|row| {
                row.len() == n
                    && row.iter().filter(|x| !x.is_zero()).count() == 1
                    && row.iter().all(|x| x.is_zero() || x.abs() == Q::from(1))
            })
            && linalg::rank(a) == n;
        if !signed_perm {
            return Err(EmbeddingError::Inconsistent("theta action is not a signed permutation".into()));
        }
        for r in self.g.roots() {
            if !self.g.is_root(&Weight(linalg::vec_mat(&r.0, a))) {
                return Err(EmbeddingError::Inconsistent("theta does not permute the roots".into()));
            }
        }
        if let Some(c) = theta.compact_roots.iter().find(|c| !self.g.is_root(c)) {
            return Err(EmbeddingError::Inconsistent(format!("compact root {c} is not a root")));
        }
        Ok(())
    }

    pub fn restrict(&self, x: &Weight) -> Weight {
        x.restrict(&self.restriction)
    }

    /// Restrictions of all roots of `g`, followed by `dim t` zero weights.
    pub fn g_weight_multiset(&self) -> Vec<Weight> {
        let mut v: Vec<Weight> = self.g.roots().iter().map(|r| self.restrict(r)).collect();
        v.extend(std::iter::repeat_n(Weight::zero(self.g_prime.dim()), self.g.dim()));
        v
    }

    /// Roots of `g` restricting to `w`.
    pub fn fiber(&self, w: &Weight) -> Vec<Weight> {
        self.g.roots().into_iter().filter(|r| &self.restrict(r) == w).collect()
    }

    /// Form on `t'*` induced from `g`: the inverse of `R^T B^{-1} R`.
    pub fn induced_form(&self) -> Matrix {
        induced_form(self.g.form(), &self.restriction)
    }

    /// The induced form must agree with the form of `g'` up to a positive
    /// scalar on each simple factor, with distinct factors orthogonal.
    fn check_induced_form(&self) -> Result<(), EmbeddingError> {
        let f = self.induced_form();
        let own = self.g_prime.form();
        let blocks: Vec<(usize, usize, bool)> = if self.g_prime.components().is_empty() {
            vec![(0, self.g_prime.dim(), true)]
        } else {
            self.g_prime
                .components()
                .iter()
                .map(|c| (c.offset, c.rank, c.family != crate::root_system::Family::T))
                .collect()
        };
        let block_of = |i: usize| blocks.iter().position(|&(o, r, _)| i >= o && i < o + r).unwrap();
        for i in 0..f.len() {
            for j in 0..f.len() {
                if block_of(i) != block_of(j) && !f[i][j].is_zero() {
                    return Err(EmbeddingError::Inconsistent("induced form mixes factors of g'".into()));
                }
            }
        }
        for &(o, r, simple) in &blocks {
            if !simple {
                continue;
            }
            let ratio = f[o][o] / own[o][o];
            if !ratio.is_positive() {
                return Err(EmbeddingError::Inconsistent("induced form is not positive".into()));
            }
            for i in o..o + r {
                for j in o..o + r {
                    if f[i][j] != ratio * own[i][j] {
                        return Err(EmbeddingError::Inconsistent(
                            "induced form is not proportional to the form of g'".into(),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    /// Embeds a `t'*` weight into `t*` orthogonally to the kernel of the
    /// restriction.
    pub fn lift(&self, y: &Weight) -> Weight {
        let binv = linalg::inverse(self.g.form()).expect("form is non-degenerate");
        let c = linalg::vec_mat(&y.0, &self.induced_form());
        let rt = linalg::transpose(&self.restriction);
        Weight(linalg::vec_mat(&linalg::vec_mat(&c, &rt), &binv))
    }

    pub fn prime_inner(&self, x: &Weight, y: &Weight) -> Q {
        self.g_prime.inner(x, y)
    }

    /// Root of `g'` compact under theta: all of its supporting roots are.
    pub fn is_compact_prime_root(&self, r: &Weight) -> Option<bool> {
        let theta = self.theta.as_ref()?;
        Some(self.support.get(r).is_some_and(|s| s.iter().all(|b| theta.is_compact(b))))
    }
}

pub fn induced_form(form: &Matrix, restriction: &Matrix) -> Matrix {
    let binv = linalg::inverse(form).expect("form is non-degenerate");
    let rt = linalg::transpose(restriction);
    let m = linalg::mat_mul(&linalg::mat_mul(&rt, &binv), restriction);
    linalg::inverse(&m).expect("restriction is surjective")
}

/// `q = l ⊕ u` together with its splitting along `g'`.
#[derive(Debug, Clone)]
pub struct ParabolicDatum {
    pub pair: ReductivePair,
    pub h: Vec<Q>,
    pub delta_u: Vec<Weight>,
    /// Roots of the Levi factor of `g`, both signs.
    pub delta_l: Vec<Weight>,
    /// Levi factor of `g` with the positive system used for highest weights.
    pub levi: RootSystem,
    /// Roots of `g'` inside `u`.
    pub u_prime: Vec<Weight>,
    /// `t'`-weights of `u'' = u ∩ (g')^⊥`, with multiplicity; zeros included.
    pub u_dprime: Vec<Weight>,
    /// Levi factor `l'` of `q' = q ∩ g'`.
    pub levi_prime: RootSystem,
    /// The roots of `u(H)` moved into the Levi factor (empty for `q(H)`).
    pub refinement: Vec<Weight>,
    h_delta_u: Vec<Weight>,
    h_delta_l: Vec<Weight>,
}

impl ParabolicDatum {
    pub fn level(&self, y: &Weight) -> Q {
        linalg::dot(&y.0, &self.h)
    }

    pub fn g_level(&self, x: &Weight) -> Q {
        self.level(&self.pair.restrict(x))
    }

    pub fn restricted_u(&self) -> Vec<Weight> {
        self.delta_u.iter().map(|r| self.pair.restrict(r)).collect()
    }

    /// Non-zero weights of `u''`.
    pub fn u_dprime_nonzero(&self) -> Vec<Weight> {
        self.u_dprime.iter().filter(|w| !w.is_zero()).cloned().collect()
    }

    /// `t'`-weights of `ū''`, with multiplicity.
    pub fn ubar_dprime(&self) -> Vec<Weight> {
        self.u_dprime.iter().map(|w| -w).collect()
    }

    /// Roots of `ū` (negatives of `delta_u`).
    pub fn delta_ubar(&self) -> Vec<Weight> {
        self.delta_u.iter().map(|r| -r).collect()
    }

    pub fn rho_u(&self) -> Weight {
        crate::root_system::rho_of(&self.delta_u, self.pair.g.dim())
    }

    pub fn rho_u_prime(&self) -> Weight {
        crate::root_system::rho_of(&self.u_prime, self.pair.g_prime.dim())
    }

    pub fn is_refined(&self) -> bool {
        !self.refinement.is_empty()
    }
}

fn lex_positive(v: &[Q]) -> bool {
    v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_positive())
}

/// Positive system on the Levi roots of `g`: lexicographic on the
/// restriction first, then on the ambient coordinates. Restricting first
/// keeps it compatible with the positive system of `g'`.
fn levi_positive(pair: &ReductivePair, delta_l: &[Weight]) -> Vec<Weight> {
    delta_l
        .iter()
        .filter(|b| {
            let mut key = pair.restrict(b).0;
            key.extend(b.0.iter().copied());
            lex_positive(&key)
        })
        .cloned()
        .collect()
}

fn supported_in(pair: &ReductivePair, r: &Weight, set: &BTreeSet<&Weight>) -> bool {
    pair.support.get(r).is_some_and(|s| s.iter().all(|b| set.contains(b)))
}

fn build_datum(
    pair: &ReductivePair,
    h: Vec<Q>,
    delta_u: Vec<Weight>,
    delta_l: Vec<Weight>,
    refinement: Vec<Weight>,
    h_delta_u: Vec<Weight>,
    h_delta_l: Vec<Weight>,
) -> ParabolicDatum {
    let levi = pair.g.subsystem("l", levi_positive(pair, &delta_l));
    let u_set: BTreeSet<&Weight> = delta_u.iter().collect();
    let l_set: BTreeSet<&Weight> = delta_l.iter().collect();
    let u_prime: Vec<Weight> = pair
        .g_prime
        .roots()
        .into_iter()
        .filter(|r| supported_in(pair, r, &u_set))
        .collect();
    let mut rest = multiset(delta_u.iter().map(|r| pair.restrict(r)));
    for r in &u_prime {
        let e = rest.get_mut(r).expect("u' roots are restrictions of u roots");
        *e -= 1;
    }
    let u_dprime: Vec<Weight> = rest
        .into_iter()
        .flat_map(|(w, n)| std::iter::repeat_n(w, n))
        .collect();
    let lp: Vec<Weight> = pair
        .g_prime
        .positive_roots()
        .iter()
        .filter(|r| supported_in(pair, r, &l_set))
        .cloned()
        .collect();
    let levi_prime = pair.g_prime.subsystem("l'", lp);
    ParabolicDatum {
        pair: pair.clone(),
        h,
        delta_u,
        delta_l,
        levi,
        u_prime,
        u_dprime,
        levi_prime,
        refinement,
        h_delta_u,
        h_delta_l,
    }
}

/// `q(H)`: roots with positive H-level form `u`, level zero forms `l`.
pub fn parabolic_from_h(pair: &ReductivePair, h: &[Q]) -> Result<ParabolicDatum, EmbeddingError> {
    if h.len() != pair.g_prime.dim() {
        return Err(EmbeddingError::HShape { got: h.len(), want: pair.g_prime.dim() });
    }
    let level = |r: &Weight| linalg::dot(&pair.restrict(r).0, h);
    let roots = pair.g.roots();
    let delta_u: Vec<Weight> = roots.iter().filter(|r| level(r).is_positive()).cloned().collect();
    let delta_l: Vec<Weight> = roots.iter().filter(|r| level(r).is_zero()).cloned().collect();
    Ok(build_datum(
        pair,
        h.to_vec(),
        delta_u.clone(),
        delta_l.clone(),
        Vec::new(),
        delta_u,
        delta_l,
    ))
}

/// Enlarges `q(H)` by moving `extra ⊂ Δ(u(H))` into the Levi factor.
pub fn refine_parabolic(base: &ParabolicDatum, extra: &[Weight]) -> Result<ParabolicDatum, EmbeddingError> {
    if extra.is_empty() {
        return Ok(base.clone());
    }
    let g = &base.pair.g;
    for e in extra {
        if !base.h_delta_u.contains(e) {
            return Err(EmbeddingError::NotLeviSubsystem(format!("{e} is not a root of u(H)")));
        }
    }
    let mut l: BTreeSet<Weight> = base.h_delta_l.iter().cloned().collect();
    for e in extra {
        l.insert(e.clone());
        l.insert(-e);
    }
    let u: Vec<Weight> = base.h_delta_u.iter().filter(|r| !l.contains(*r)).cloned().collect();
    for a in &l {
        for b in &l {
            let s = a + b;
            if g.is_root(&s) && !l.contains(&s) {
                return Err(EmbeddingError::NotLeviSubsystem(format!("{a} + {b} leaves the Levi roots")));
            }
        }
    }
    let q: BTreeSet<&Weight> = l.iter().chain(u.iter()).collect();
    for a in &q {
        for b in &q {
            let s = *a + *b;
            if g.is_root(&s) && !q.contains(&s) {
                return Err(EmbeddingError::NotLeviSubsystem(format!("{a} + {b} leaves q")));
            }
        }
    }
    let delta_l: Vec<Weight> = g.roots().into_iter().filter(|r| l.contains(r)).collect();
    let datum = build_datum(
        &base.pair,
        base.h.clone(),
        u,
        delta_l,
        extra.to_vec(),
        base.h_delta_u.clone(),
        base.h_delta_l.clone(),
    );
    let wc = check_weakly_compatible(&datum);
    if let Some(id) = wc.violated {
        return Err(EmbeddingError::NotWeaklyCompatible(id));
    }
    Ok(datum)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeakCompatibility {
    pub passed: bool,
    pub violated: Option<String>,
}

pub const IDENTITIES: [&str; 4] = ["q(H)∩g' = q∩g'", "l(H)∩g' = l∩g'", "u(H)∩g' = u∩g'", "ū(H)∩g' = ū∩g'"];

/// The four splitting identities, compared on the roots of `g'`.
pub fn check_weakly_compatible(p: &ParabolicDatum) -> WeakCompatibility {
    let pair = &p.pair;
    let neg = |v: &[Weight]| v.iter().map(|r| -r).collect::<Vec<_>>();
    let q_h: Vec<Weight> = p.h_delta_l.iter().chain(&p.h_delta_u).cloned().collect();
    let q: Vec<Weight> = p.delta_l.iter().chain(&p.delta_u).cloned().collect();
    let sides = [
        (q_h, q),
        (p.h_delta_l.clone(), p.delta_l.clone()),
        (p.h_delta_u.clone(), p.delta_u.clone()),
        (neg(&p.h_delta_u), neg(&p.delta_u)),
    ];
    for (name, (a, b)) in IDENTITIES.iter().zip(sides) {
        let sa: BTreeSet<&Weight> = a.iter().collect();
        let sb: BTreeSet<&Weight> = b.iter().collect();
        let differs = pair
            .g_prime
            .roots()
            .iter()
            .any(|r| supported_in(pair, r, &sa) != supported_in(pair, r, &sb));
        if differs {
            return WeakCompatibility { passed: false, violated: Some(name.to_string()) };
        }
    }
    WeakCompatibility { passed: true, violated: None }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuasiAbelian {
    pub passed: bool,
    /// First pair `(α, β, (α, β))` with a negative inner product.
    pub witness: Option<(Weight, Weight, String)>,
}

/// `(α, β) >= 0` for all `α ∈ Δ(u')` and non-zero `β ∈ Δ(u'')`.
pub fn check_quasi_abelian(p: &ParabolicDatum) -> QuasiAbelian {
    let beta = p.u_dprime_nonzero();
    for a in &p.u_prime {
        for b in &beta {
            let v = p.pair.prime_inner(a, b);
            if v.is_negative() {
                return QuasiAbelian {
                    passed: false,
                    witness: Some((a.clone(), b.clone(), crate::rational::format_q(&v))),
                };
            }
        }
    }
    QuasiAbelian { passed: true, witness: None }
}

/// Weight-level form of `[u', u''] = 0`: no sum `α + β` with `α ∈ Δ(u')`,
/// `β ∈ Δ(u'')` is again a weight of `u''`.
pub fn check_commutator_vanishing(p: &ParabolicDatum) -> bool {
    let weights: BTreeSet<Weight> = p.u_dprime.iter().cloned().collect();
    let beta = p.u_dprime_nonzero();
    !p.u_prime.iter().any(|a| beta.iter().any(|b| weights.contains(&(a + b))))
}

pub fn has_abelian_nilradical(p: &ParabolicDatum) -> bool {
    let g = &p.pair.g;
    !p.delta_u.iter().any(|a| p.delta_u.iter().any(|b| g.is_root(&(a + b))))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConvexityCertificate {
    pub root: Weight,
    pub fiber: Vec<Weight>,
    #[serde(serialize_with = "crate::rational::serialize_q_vec")]
    pub coefficients: Vec<Q>,
}

impl ConvexityCertificate {
    /// Re-checks the certificate in `t*` and after restriction.
    pub fn verify(&self, pair: &ReductivePair) -> bool {
        let pts: Vec<Vec<Q>> = self.fiber.iter().map(|b| b.0.clone()).collect();
        let restricted: Vec<Vec<Q>> = self.fiber.iter().map(|b| pair.restrict(b).0).collect();
        convex::verify_combination(&pts, &self.coefficients, &pair.lift(&self.root).0)
            && convex::verify_combination(&restricted, &self.coefficients, &self.root.0)
    }
}

/// Writes the lift of `α ∈ Δ(u')` to `t*` as a convex combination of the
/// roots of `u` restricting to `α`.
pub fn convexity_certificate(p: &ParabolicDatum, alpha: &Weight) -> Result<ConvexityCertificate, EmbeddingError> {
    let fiber: Vec<Weight> = p
        .delta_u
        .iter()
        .filter(|b| &p.pair.restrict(b) == alpha)
        .cloned()
        .collect();
    if fiber.is_empty() {
        return Err(EmbeddingError::NotRestrictedRoot(alpha.to_string()));
    }
    let pts: Vec<Vec<Q>> = fiber.iter().map(|b| b.0.clone()).collect();
    let target = p.pair.lift(alpha);
    let coefficients = convex::convex_combination(&pts, &target.0)
        .ok_or_else(|| EmbeddingError::ConvexityViolation(alpha.to_string()))?;
    Ok(ConvexityCertificate { root: alpha.clone(), fiber, coefficients })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RhoPositivity {
    /// `(ρ(u), α) > 0` for all `α ∈ Δ(u)`.
    pub u_positive: bool,
    /// `(ρ(u)|t', α') > 0` for all `α' ∈ Δ(u')`.
    pub restricted_positive: bool,
    /// `(ρ(u)|t' + ρ(l)|t' - ρ(l') - ρ(u'), α') >= 0` for all `α' ∈ Δ(u')`.
    pub levi_inequality: bool,
    pub passed: bool,
}

pub fn rho_positivity_check(p: &ParabolicDatum) -> RhoPositivity {
    let pair = &p.pair;
    let rho_u = p.rho_u();
    let u_positive = p.delta_u.iter().all(|a| pair.g.inner(&rho_u, a).is_positive());
    let ru = pair.restrict(&rho_u);
    let restricted_positive = p.u_prime.iter().all(|a| pair.prime_inner(&ru, a).is_positive());
    let shift = &(&ru + &pair.restrict(&p.levi.rho())) - &(&p.levi_prime.rho() + &p.rho_u_prime());
    let levi_inequality = p.u_prime.iter().all(|a| !pair.prime_inner(&shift, a).is_negative());
    RhoPositivity {
        u_positive,
        restricted_positive,
        levi_inequality,
        passed: u_positive && restricted_positive && levi_inequality,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "detail", rename_all = "snake_case")]
pub enum TransferVerdict {
    NotApplicable,
    HypothesisFails(String),
    Confirmed,
    /// The hypotheses held but the conclusion failed; never expected.
    Violated(String),
}

/// Quasi-abelian with respect to `k1` implies quasi-abelian with respect to
/// `g'`; both sides are evaluated independently.
pub fn quasi_abelian_transfer_check(p: &ParabolicDatum) -> Result<TransferVerdict, EmbeddingError> {
    let pair = &p.pair;
    let theta = pair.theta.as_ref().ok_or(EmbeddingError::NoInvolutionData)?;
    let Some(k1) = &pair.k1 else {
        return Ok(TransferVerdict::NotApplicable);
    };
    let prime_roots: BTreeSet<Weight> = pair.g_prime.roots().into_iter().collect();
    if let Some(r) = k1.roots.iter().find(|r| !prime_roots.contains(*r)) {
        return Ok(TransferVerdict::HypothesisFails(format!("k1 root {r} is not a root of g'")));
    }
    for a in p.delta_u.iter().filter(|a| theta.is_compact(a)) {
        let r = pair.restrict(a);
        if !k1.roots.contains(&r) {
            return Ok(TransferVerdict::HypothesisFails(format!("compact root {a} of u is not in k1")));
        }
    }
    if linalg::solve(&k1.projection, &p.h).is_none() {
        return Ok(TransferVerdict::HypothesisFails("H is not in k1".into()));
    }
    let full = linalg::mat_mul(&pair.restriction, &k1.projection);
    let form = induced_form(pair.g.form(), &full);
    let project = |w: &Weight| w.restrict(&k1.projection);
    let alphas: Vec<Weight> = p.u_prime.iter().map(project).filter(|w| !w.is_zero()).collect();
    let betas: Vec<Weight> = p.u_dprime.iter().map(project).filter(|w| !w.is_zero()).collect();
    let qa_k1 = alphas
        .iter()
        .all(|a| betas.iter().all(|b| !linalg::bilinear(&a.0, &form, &b.0).is_negative()));
    if !qa_k1 {
        return Ok(TransferVerdict::HypothesisFails("not quasi-abelian with respect to k1".into()));
    }
    let qa = check_quasi_abelian(p);
    Ok(if qa.passed {
        TransferVerdict::Confirmed
    } else {
        let (a, b, v) = qa.witness.expect("failure carries a witness");
        TransferVerdict::Violated(format!("({a}, {b}) = {v}"))
    })
}
