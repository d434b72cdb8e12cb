//! Exact convex geometry on small point sets.
//!
//! Hull membership, `sum c_i p_i = x, sum c_i = 1, c >= 0`, is decided by
//! phase one of the simplex method in exact arithmetic. Explicit convex
//! combinations come from enumerating basic solutions instead: every vertex
//! of the feasible polytope is supported on an affinely independent subset
//! of the points, so trying all subsets of size at most `dim + 1` is
//! exhaustive.

use crate::linalg::{self, Matrix};
use crate::rational::Q;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeSet;

fn subsets(n: usize, max: usize, f: &mut impl FnMut(&[usize])) {
    fn rec(start: usize, n: usize, max: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if !cur.is_empty() {
            f(cur);
        }
        if cur.len() == max {
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, max, cur, f);
            cur.pop();
        }
    }
    rec(0, n, max, &mut Vec::new(), f);
}

/// All vertices of `{c >= 0 : sum c_i = 1, sum c_i p_i = target}`, as
/// coefficient vectors over `points`.
pub fn feasible_vertices(points: &[Vec<Q>], target: &[Q]) -> Vec<Vec<Q>> {
    let dim = target.len();
    let mut out: BTreeSet<Vec<Q>> = BTreeSet::new();
    subsets(points.len(), dim + 1, &mut |idx| {
        // Columns (p_i, 1).
        let m: Matrix = (0..=dim)
            .map(|r| {
                idx.iter()
                    .map(|&i| if r < dim { points[i][r] } else { Q::one() })
                    .collect()
            })
            .collect();
        if linalg::rank(&m) < idx.len() {
            return;
        }
        let mut rhs = target.to_vec();
        rhs.push(Q::one());
        if let Some(c) = linalg::solve(&m, &rhs) {
            if c.iter().all(|x| !x.is_negative()) {
                let mut full = vec![Q::zero(); points.len()];
                for (k, &i) in idx.iter().enumerate() {
                    full[i] = c[k];
                }
                out.insert(full);
            }
        }
    });
    out.into_iter().collect()
}

/// A convex combination of `points` equal to `target`, if one exists.
///
/// The centroid of all feasible vertices is returned, so symmetric inputs
/// get symmetric coefficients.
pub fn convex_combination(points: &[Vec<Q>], target: &[Q]) -> Option<Vec<Q>> {
    let verts = feasible_vertices(points, target);
    if verts.is_empty() {
        return None;
    }
    let n = Q::from(verts.len() as i64);
    let mut c = vec![Q::zero(); points.len()];
    for v in &verts {
        for (a, b) in c.iter_mut().zip(v) {
            *a += *b;
        }
    }
    Some(c.into_iter().map(|x| x / n).collect())
}

/// Re-checks a coefficient vector returned by [`convex_combination`].
pub fn verify_combination(points: &[Vec<Q>], coeffs: &[Q], target: &[Q]) -> bool {
    if coeffs.len() != points.len() || coeffs.iter().any(|c| c.is_negative()) {
        return false;
    }
    if coeffs.iter().copied().sum::<Q>() != Q::one() {
        return false;
    }
    (0..target.len()).all(|k| points.iter().zip(coeffs).map(|(p, c)| p[k] * *c).sum::<Q>() == target[k])
}

pub fn in_hull(points: &[Vec<Q>], x: &[Q]) -> bool {
    if points.is_empty() {
        return false;
    }
    let n = points.len();
    let m = x.len() + 1;
    let rhs = n + m;
    // Tableau [A | I | b] with one artificial variable per row, b >= 0.
    let mut t: Vec<Vec<Q>> = (0..m)
        .map(|r| {
            let mut row = vec![Q::zero(); rhs + 1];
            for (i, p) in points.iter().enumerate() {
                row[i] = if r + 1 < m { p[r] } else { Q::one() };
            }
            row[rhs] = if r + 1 < m { x[r] } else { Q::one() };
            if row[rhs].is_negative() {
                for j in (0..n).chain([rhs]) {
                    row[j] = -row[j];
                }
            }
            row[n + r] = Q::one();
            row
        })
        .collect();
    let mut basis: Vec<usize> = (n..n + m).collect();
    // Reduced costs of the phase-one objective (sum of artificials).
    let mut z: Vec<Q> = (0..=rhs)
        .map(|j| if (n..n + m).contains(&j) { Q::zero() } else { -t.iter().map(|row| row[j]).sum::<Q>() })
        .collect();
    // Bland's rule: smallest improving column, ties by smallest basic index.
    while let Some(j) = (0..rhs).find(|&j| z[j].is_negative()) {
        let mut pivot: Option<(usize, Q)> = None;
        for r in 0..m {
            if t[r][j].is_positive() {
                let ratio = t[r][rhs] / t[r][j];
                let better = match &pivot {
                    None => true,
                    Some((pr, best)) => ratio < *best || (ratio == *best && basis[r] < basis[*pr]),
                };
                if better {
                    pivot = Some((r, ratio));
                }
            }
        }
        let Some((r, _)) = pivot else { break };
        let p = t[r][j];
        for v in t[r].iter_mut() {
            *v /= p;
        }
        let prow = t[r].clone();
        for (k, row) in t.iter_mut().enumerate() {
            if k != r && !row[j].is_zero() {
                let f = row[j];
                for (v, w) in row.iter_mut().zip(&prow) {
                    *v -= f * *w;
                }
            }
        }
        let f = z[j];
        for (v, w) in z.iter_mut().zip(&prow) {
            *v -= f * *w;
        }
        basis[r] = j;
    }
    z[rhs].is_zero()
}

/// Extreme points of the convex hull, sorted.
pub fn extreme_points(points: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let distinct: Vec<Vec<Q>> = points.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    distinct
        .iter()
        .enumerate()
        .filter(|(i, p)| {
            let others: Vec<Vec<Q>> = distinct
                .iter()
                .enumerate()
                .filter(|(j, _)| j != i)
                .map(|(_, q)| q.clone())
                .collect();
            !in_hull(&others, p)
        })
        .map(|(_, p)| p.clone())
        .collect()
}

pub fn minkowski_sum(a: &[Vec<Q>], b: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let mut out = BTreeSet::new();
    for x in a {
        for y in b {
            out.insert(x.iter().zip(y).map(|(u, v)| *u + *v).collect::<Vec<Q>>());
        }
    }
    out.into_iter().collect()
}

/// `Co(a) + Co(b) = Co(c)`, by comparing extreme points and checking
/// containment both ways.
pub fn minkowski_hulls_agree(a: &[Vec<Q>], b: &[Vec<Q>], c: &[Vec<Q>]) -> bool {
    let sum = minkowski_sum(a, b);
    let ext_sum = extreme_points(&sum);
    let ext_c = extreme_points(c);
    ext_sum == ext_c && ext_c.iter().all(|p| in_hull(&sum, p)) && ext_sum.iter().all(|p| in_hull(c, p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qf};

    fn pts(v: &[&[i64]]) -> Vec<Vec<Q>> {
        v.iter().map(|p| p.iter().map(|&x| q(x)).collect()).collect()
    }

    #[test]
    fn symmetric_pair_gets_half_half() {
        let p = pts(&[&[1], &[1]]);
        let c = convex_combination(&p, &[q(1)]).unwrap();
        assert_eq!(c, vec![qf(1, 2), qf(1, 2)]);
        assert!(verify_combination(&p, &c, &[q(1)]));
    }

    #[test]
    fn single_point_fiber() {
        let p = pts(&[&[2, 1]]);
        assert_eq!(convex_combination(&p, &[q(2), q(1)]).unwrap(), vec![q(1)]);
        assert!(convex_combination(&p, &[q(1), q(1)]).is_none());
    }

    #[test]
    fn square_hull() {
        let sq = pts(&[&[0, 0], &[2, 0], &[0, 2], &[2, 2], &[1, 1]]);
        let ext = extreme_points(&sq);
        assert_eq!(ext.len(), 4);
        assert!(in_hull(&sq, &[qf(1, 3), qf(5, 3)]));
        assert!(!in_hull(&sq, &[q(3), q(0)]));
        let c = convex_combination(&sq, &[q(1), q(1)]).unwrap();
        assert!(verify_combination(&sq, &c, &[q(1), q(1)]));
    }

    #[test]
    fn segment_minkowski() {
        let a = pts(&[&[-1], &[1]]);
        let c = pts(&[&[-2], &[2]]);
        assert!(minkowski_hulls_agree(&a, &a, &c));
        assert!(!minkowski_hulls_agree(&a, &a, &a));
    }

    proptest::proptest! {
        #[test]
        fn simplex_agrees_with_enumeration(
            pts in proptest::collection::vec(proptest::collection::vec(-3i64..=3, 2), 1..7),
            x in proptest::collection::vec((-6i64..=6, 1i64..=2), 2),
        ) {
            let p: Vec<Vec<Q>> = pts.iter().map(|v| v.iter().map(|&a| q(a)).collect()).collect();
            let x: Vec<Q> = x.iter().map(|&(a, b)| qf(a, b)).collect();
            proptest::prop_assert_eq!(in_hull(&p, &x), !feasible_vertices(&p, &x).is_empty());
        }
    }
}
