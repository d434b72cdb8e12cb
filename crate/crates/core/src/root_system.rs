//! Root systems, weights and Weyl group actions in exact arithmetic.
//!
//! A [`RootSystem`] lives in an ambient coordinate space with a Gram matrix.
//! Systems built from a Cartan label use simple-root coordinates (followed
//! by one coordinate per central torus dimension); Levi subsystems reuse the
//! coordinates of the system they were cut out of.
//!
//! The form is normalized so that short roots have squared length 2 in every
//! simple component.

use crate::linalg::{self, Matrix};
use crate::rational::{format_q, is_integer, is_negative_integer, is_positive_integer, q, Q};
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::ops::{Add, Neg, Sub};

/// Default bound on the size of a computed Weyl orbit.
pub const DEFAULT_ORBIT_CAP: usize = 200_000;

/// A weight in the ambient coordinates of some torus.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight(pub Vec<Q>);

impl Weight {
    pub fn zero(dim: usize) -> Self {
        Weight(vec![Q::zero(); dim])
    }

    pub fn from_ints(v: &[i64]) -> Self {
        Weight(v.iter().map(|&x| q(x)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Q] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: Q) -> Self {
        Weight(self.0.iter().map(|x| *x * c).collect())
    }

    /// Coordinates after applying a restriction matrix (row vector times matrix).
    pub fn restrict(&self, r: &Matrix) -> Self {
        Weight(linalg::vec_mat(&self.0, r))
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(format_q).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl Serialize for Weight {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        crate::rational::serialize_q_vec(&self.0, s)
    }
}

impl<'de> Deserialize<'de> for Weight {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v: Vec<crate::rational::Rat> = Vec::deserialize(d)?;
        Ok(Weight(v.into_iter().map(|r| r.0).collect()))
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, o: &Weight) -> Weight {
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| *a + *b).collect())
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, o: &Weight) -> Weight {
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| *a - *b).collect())
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|a| -*a).collect())
    }
}

impl Add for Weight {
    type Output = Weight;
    fn add(self, o: Weight) -> Weight {
        &self + &o
    }
}

impl Sub for Weight {
    type Output = Weight;
    fn sub(self, o: Weight) -> Weight {
        &self - &o
    }
}

impl Neg for Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        -&self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RootError {
    #[error("unknown Cartan type `{0}`")]
    UnknownType(String),
    #[error("empty system")]
    EmptySystem,
    #[error("orbit overflow: more than {cap} elements")]
    OrbitOverflow { cap: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    G,
    /// A central torus, contributing coordinates but no roots.
    T,
}

/// One factor of a product system, with its position among the coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Component {
    pub family: Family,
    pub rank: usize,
    pub offset: usize,
}

impl Component {
    pub fn label(&self) -> String {
        format!("{:?}{}", self.family, self.rank)
    }

    fn weyl_order(&self) -> u64 {
        let n = self.rank as u64;
        let fact = |k: u64| (1..=k).product::<u64>();
        match self.family {
            Family::A => fact(n + 1),
            Family::B | Family::C => (1u64 << n) * fact(n),
            Family::D => (1u64 << (n - 1)) * fact(n),
            Family::G => 12,
            Family::T => 1,
        }
    }

    /// Gram matrix of the simple roots (or the identity on a torus block).
    fn gram(&self) -> Vec<Vec<i64>> {
        let n = self.rank;
        let mut g = vec![vec![0i64; n]; n];
        match self.family {
            Family::A => {
                for i in 0..n {
                    g[i][i] = 2;
                    if i + 1 < n {
                        g[i][i + 1] = -1;
                        g[i + 1][i] = -1;
                    }
                }
            }
            Family::B => {
                for i in 0..n {
                    g[i][i] = if i + 1 == n { 2 } else { 4 };
                    if i + 1 < n {
                        g[i][i + 1] = -2;
                        g[i + 1][i] = -2;
                    }
                }
            }
            Family::C => {
                for i in 0..n {
                    g[i][i] = if i + 1 == n { 4 } else { 2 };
                    if i + 1 < n {
                        let v = if i + 2 == n { -2 } else { -1 };
                        g[i][i + 1] = v;
                        g[i + 1][i] = v;
                    }
                }
            }
            Family::D => {
                for i in 0..n {
                    g[i][i] = 2;
                }
                for i in 0..n - 2 {
                    g[i][i + 1] = -1;
                    g[i + 1][i] = -1;
                }
                g[n - 3][n - 1] = -1;
                g[n - 1][n - 3] = -1;
                g[n - 2][n - 1] = 0;
                g[n - 1][n - 2] = 0;
                if n == 3 {
                    // D3: node 0 is joined to both 1 and 2.
                    g[0][2] = -1;
                    g[2][0] = -1;
                }
            }
            Family::G => {
                g = vec![vec![2, -3], vec![-3, 6]];
            }
            Family::T => {
                for i in 0..n {
                    g[i][i] = 1;
                }
            }
        }
        g
    }
}

fn parse_component(tok: &str) -> Result<(Family, usize), RootError> {
    let err = || RootError::UnknownType(tok.to_string());
    let mut chars = tok.chars();
    let fam = match chars.next().ok_or_else(err)?.to_ascii_uppercase() {
        'A' => Family::A,
        'B' => Family::B,
        'C' => Family::C,
        'D' => Family::D,
        'G' => Family::G,
        'T' => Family::T,
        _ => return Err(err()),
    };
    let n: usize = chars.as_str().parse().map_err(|_| err())?;
    if n == 0 {
        return Err(RootError::EmptySystem);
    }
    let ok = match fam {
        Family::A => n <= 6,
        Family::B | Family::C => (2..=6).contains(&n),
        Family::D => (3..=6).contains(&n),
        Family::G => n == 2,
        Family::T => n <= 6,
    };
    if ok {
        Ok((fam, n))
    } else {
        Err(err())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSystem {
    label: String,
    components: Vec<Component>,
    form: Matrix,
    simple_roots: Vec<Weight>,
    cartan: Vec<Vec<i64>>,
    positive_roots: Vec<Weight>,
}

/// Half the sum of a multiset of weights.
pub fn rho_of(roots: &[Weight], dim: usize) -> Weight {
    let sum = roots.iter().fold(Weight::zero(dim), |acc, r| &acc + r);
    sum.scale(Q::new(1, 2))
}

impl RootSystem {
    /// Builds a system from a label such as `"A2"`, `"C2"`, `"A1xA1"` or `"A1xT1"`.
    pub fn build(label: &str) -> Result<Self, RootError> {
        let tokens: Vec<&str> = label
            .split(['x', 'X', '×'])
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .collect();
        if tokens.is_empty() {
            return Err(RootError::EmptySystem);
        }
        let mut components = Vec::new();
        let mut offset = 0;
        for t in &tokens {
            let (family, rank) = parse_component(t)?;
            components.push(Component { family, rank, offset });
            offset += rank;
        }
        let dim = offset;
        let mut form = linalg::zeros(dim, dim);
        for c in &components {
            let g = c.gram();
            for i in 0..c.rank {
                for j in 0..c.rank {
                    form[c.offset + i][c.offset + j] = q(g[i][j]);
                }
            }
        }
        let mut simple_roots = Vec::new();
        for c in components.iter().filter(|c| c.family != Family::T) {
            for i in 0..c.rank {
                let mut v = vec![Q::zero(); dim];
                v[c.offset + i] = q(1);
                simple_roots.push(Weight(v));
            }
        }
        let label = components.iter().map(Component::label).collect::<Vec<_>>().join("x");
        let mut sys = RootSystem {
            label,
            components,
            form,
            cartan: Vec::new(),
            simple_roots,
            positive_roots: Vec::new(),
        };
        sys.cartan = sys.compute_cartan();
        sys.positive_roots = sys.close_positive_roots();
        Ok(sys)
    }

    /// A subsystem with the given positive roots, in the same coordinates.
    ///
    /// `positive` must be a positive system of a closed symmetric subset of
    /// roots; the simple roots are its indecomposable elements.
    pub fn subsystem(&self, label: impl Into<String>, positive: Vec<Weight>) -> Self {
        let set: HashSet<&Weight> = positive.iter().collect();
        let simple_roots: Vec<Weight> = positive
            .iter()
            .filter(|a| !positive.iter().any(|b| set.contains(&(*a - b)) && b != *a))
            .cloned()
            .collect();
        let mut sys = RootSystem {
            label: label.into(),
            components: Vec::new(),
            form: self.form.clone(),
            cartan: Vec::new(),
            simple_roots,
            positive_roots: Vec::new(),
        };
        sys.cartan = sys.compute_cartan();
        let mut pos = positive;
        pos.sort_by_key(|a| sys.height_key(a));
        sys.positive_roots = pos;
        sys
    }

    fn compute_cartan(&self) -> Vec<Vec<i64>> {
        self.simple_roots
            .iter()
            .map(|a| {
                self.simple_roots
                    .iter()
                    .map(|b| {
                        let v = self.coroot_pairing(a, b);
                        debug_assert!(v.is_integer());
                        v.to_integer()
                    })
                    .collect()
            })
            .collect()
    }

    /// Positive roots generated from the simple roots by root strings.
    fn close_positive_roots(&self) -> Vec<Weight> {
        let mut all: Vec<Weight> = self.simple_roots.clone();
        let mut known: HashSet<Weight> = all.iter().cloned().collect();
        let mut layer = self.simple_roots.clone();
        while !layer.is_empty() {
            let mut next = Vec::new();
            for beta in &layer {
                for (i, a) in self.simple_roots.iter().enumerate() {
                    if beta == a {
                        continue;
                    }
                    let mut p = 0i64;
                    let mut down = beta - a;
                    while known.contains(&down) {
                        p += 1;
                        down = &down - a;
                    }
                    let pairing = self.coroot_pairing(beta, &self.simple_roots[i]);
                    let qv = q(p) - pairing;
                    if qv.is_positive() {
                        let up = beta + a;
                        if known.insert(up.clone()) {
                            next.push(up);
                        }
                    }
                }
            }
            all.extend(next.iter().cloned());
            layer = next;
        }
        all.sort_by_key(|a| self.height_key(a));
        all
    }

    /// Sort key: height (sum of coordinates), then coordinates in descending order.
    fn height_key(&self, w: &Weight) -> (Q, std::cmp::Reverse<Weight>) {
        (w.0.iter().copied().sum(), std::cmp::Reverse(w.clone()))
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn rank(&self) -> usize {
        self.simple_roots.len()
    }

    /// Dimension of the ambient coordinate space.
    pub fn dim(&self) -> usize {
        self.form.len()
    }

    pub fn form(&self) -> &Matrix {
        &self.form
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn simple_roots(&self) -> &[Weight] {
        &self.simple_roots
    }

    pub fn positive_roots(&self) -> &[Weight] {
        &self.positive_roots
    }

    /// All roots: positive ones followed by their negatives.
    pub fn roots(&self) -> Vec<Weight> {
        let mut v = self.positive_roots.clone();
        v.extend(self.positive_roots.iter().map(|r| -r));
        v
    }

    pub fn is_root(&self, w: &Weight) -> bool {
        self.positive_roots.iter().any(|r| r == w || &(-r) == w)
    }

    pub fn inner(&self, x: &Weight, y: &Weight) -> Q {
        linalg::bilinear(&x.0, &self.form, &y.0)
    }

    /// `2(x, a) / (a, a)`.
    pub fn coroot_pairing(&self, x: &Weight, a: &Weight) -> Q {
        q(2) * self.inner(x, a) / self.inner(a, a)
    }

    pub fn reflect(&self, x: &Weight, a: &Weight) -> Weight {
        x - &a.scale(self.coroot_pairing(x, a))
    }

    pub fn simple_reflection(&self, x: &Weight, i: usize) -> Weight {
        self.reflect(x, &self.simple_roots[i])
    }

    /// `<x, a_i^v>` for every simple root.
    pub fn fundamental_coords(&self, x: &Weight) -> Vec<Q> {
        self.simple_roots.iter().map(|a| self.coroot_pairing(x, a)).collect()
    }

    /// Inverse of [`fundamental_coords`](Self::fundamental_coords) for
    /// semisimple systems in simple-root coordinates.
    pub fn from_fundamental_coords(&self, f: &[Q]) -> Option<Weight> {
        if self.dim() != self.rank() || f.len() != self.rank() {
            return None;
        }
        // x C = f where C[i][j] = <a_i, a_j^v>.
        let c: Matrix = self
            .cartan
            .iter()
            .map(|row| row.iter().map(|&v| q(v)).collect())
            .collect();
        let ct = linalg::transpose(&c);
        linalg::solve(&ct, f).map(Weight)
    }

    pub fn is_dominant_integral(&self, x: &Weight) -> bool {
        self.fundamental_coords(x)
            .iter()
            .all(|v| is_integer(v) && !v.is_negative())
    }

    pub fn rho(&self) -> Weight {
        rho_of(&self.positive_roots, self.dim())
    }

    /// Vector dual to the half sum of positive coroots: pairs to 1 with
    /// every simple root and positively with every positive root.
    pub fn rho_check_vector(&self) -> Weight {
        self.positive_roots
            .iter()
            .fold(Weight::zero(self.dim()), |acc, b| &acc + &b.scale(Q::from_integer(1) / self.inner(b, b)))
    }

    /// Sort key refining the dominance order of this system: if `x - y` is a
    /// non-zero sum of positive roots, then `key(x) > key(y)`.
    pub fn dominance_key(&self, x: &Weight) -> (Q, Weight) {
        (self.inner(x, &self.rho_check_vector()), x.clone())
    }

    /// Moves `x` into the dominant chamber; returns the image and the
    /// number of simple reflections used.
    pub fn dominant_conjugate(&self, x: &Weight) -> (Weight, usize) {
        let mut cur = x.clone();
        let mut steps = 0;
        'outer: loop {
            for i in 0..self.rank() {
                if self.coroot_pairing(&cur, &self.simple_roots[i]).is_negative() {
                    cur = self.simple_reflection(&cur, i);
                    steps += 1;
                    continue 'outer;
                }
            }
            return (cur, steps);
        }
    }

    /// Image of `x` in the anti-dominant chamber (the lowest element of its orbit).
    pub fn antidominant_conjugate(&self, x: &Weight) -> Weight {
        -&self.dominant_conjugate(&-x).0
    }

    /// Integral dominance test over an arbitrary list of roots:
    /// `2(x,a)/(a,a)` avoids the negative integers (resp. the positive
    /// integers when `anti` is set) for every supplied root.
    pub fn is_integrally_dominant(&self, x: &Weight, roots: &[Weight], anti: bool) -> bool {
        roots.iter().all(|a| {
            let v = self.coroot_pairing(x, a);
            if anti {
                !is_positive_integer(&v)
            } else {
                !is_negative_integer(&v)
            }
        })
    }

    pub fn weyl_orbit(&self, x: &Weight) -> Result<WeylOrbit, RootError> {
        self.weyl_orbit_capped(x, DEFAULT_ORBIT_CAP)
    }

    pub fn weyl_orbit_capped(&self, x: &Weight, cap: usize) -> Result<WeylOrbit, RootError> {
        if x.dim() != self.dim() {
            return Err(RootError::DimensionMismatch { expected: self.dim(), got: x.dim() });
        }
        let mut seen = BTreeSet::new();
        seen.insert(x.clone());
        let mut frontier = vec![x.clone()];
        while let Some(w) = frontier.pop() {
            for i in 0..self.rank() {
                let r = self.simple_reflection(&w, i);
                if seen.insert(r.clone()) {
                    if seen.len() > cap {
                        return Err(RootError::OrbitOverflow { cap });
                    }
                    frontier.push(r);
                }
            }
        }
        Ok(WeylOrbit { base: x.clone(), elements: seen })
    }

    /// Order of the Weyl group, from the Cartan type when known and from
    /// the orbit of the (regular) weight rho otherwise.
    pub fn weyl_group_order(&self) -> u64 {
        if !self.components.is_empty() {
            return self.components.iter().map(Component::weyl_order).product();
        }
        self.weyl_orbit(&self.rho()).map(|o| o.len() as u64).unwrap_or(0)
    }

    /// Positive roots of the closed subsystem spanned by a subset of the
    /// simple roots.
    pub fn levi_from_simple(&self, simple: &[usize]) -> RootSystem {
        let pos: Vec<Weight> = self
            .positive_roots
            .iter()
            .filter(|r| {
                r.0.iter().enumerate().all(|(k, c)| {
                    c.is_zero() || simple.iter().any(|&i| !self.simple_roots[i].0[k].is_zero())
                })
            })
            .cloned()
            .collect();
        self.subsystem(format!("levi of {}", self.label), pos)
    }
}

/// A Weyl group orbit, stored as a deduplicated ordered set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylOrbit {
    pub base: Weight,
    pub elements: BTreeSet<Weight>,
}

impl WeylOrbit {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, w: &Weight) -> bool {
        self.elements.contains(w)
    }
}
