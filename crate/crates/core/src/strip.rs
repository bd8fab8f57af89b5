//! Determinant characterization of the strip `S = E_n + Ω_k`,
//! `Ω_k = [−0.5, 0.5]^k`.
//!
//! Each strictly increasing (n+1)-tuple of superspace coordinates labels a
//! family of parallel faces of the hypercube. For such a tuple, the
//! (n+1)×(n+1) determinant whose first row is `(x_{i_1}, …, x_{i_{n+1}})`
//! and whose remaining rows are the physical coordinates of
//! `v_{i_1}, …, v_{i_{n+1}}` is linear in `x`:
//!
//! ```text
//! det = Σ_j c_j · x_{i_j}
//! ```
//!
//! with `c_j` the signed minors of the first-row expansion. A point lies in
//! the strip iff `|det| ≤ d` for every tuple, where `d` is the maximum of
//! `|det|` over the hypercube vertices, i.e. `d = 0.5 · Σ_j |c_j|`.
//!
//! The cofactors are precomputed once; membership is then a sequence of
//! short dot products, which is what makes superspaces of dimension 31
//! (31465 tuples for n = 3) practical.

use std::fmt;

use crate::embedding::Embedding;
use crate::error::{Error, Result};
use crate::linalg::determinant;

/// Relative width of the closed-membership tolerance band.
pub const BOUNDARY_REL_TOL: f64 = 1e-9;

/// Strictly increasing tuple of 0-based superspace coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexTuple(Vec<usize>);

impl IndexTuple {
    pub fn new(indices: Vec<usize>) -> Result<Self> {
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidArgument(format!(
                "index tuple {indices:?} is not strictly increasing"
            )));
        }
        Ok(IndexTuple(indices))
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }
}

impl fmt::Display for IndexTuple {
    /// 1-based, as the coordinates are usually written.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (p, i) in self.0.iter().enumerate() {
            if p > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        f.write_str(")")
    }
}

/// All strictly increasing (n+1)-tuples from `0..k`, lexicographic.
pub fn index_tuples(n: usize, k: usize) -> Result<Vec<IndexTuple>> {
    if n == 0 || n >= k {
        return Err(Error::InvalidArgument(format!(
            "index tuples need 1 <= n < k, got n = {n}, k = {k}"
        )));
    }
    let r = n + 1;
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..r).collect();
    loop {
        out.push(IndexTuple(cur.clone()));
        // rightmost position that can still advance
        let Some(pos) = (0..r).rev().find(|&p| cur[p] < k - r + p) else {
            break;
        };
        cur[pos] += 1;
        for p in pos + 1..r {
            cur[p] = cur[p - 1] + 1;
        }
    }
    Ok(out)
}

/// `C(k, r)` without overflow for the sizes used here.
pub fn binomial(k: u64, r: u64) -> u64 {
    if r > k {
        return 0;
    }
    let r = r.min(k - r);
    (0..r).fold(1u64, |acc, i| acc * (k - i) / (i + 1))
}

#[derive(Debug, Clone, PartialEq)]
pub struct StripConstraint {
    pub tuple: IndexTuple,
    pub cofactors: Vec<f64>,
    pub bound: f64,
}

impl StripConstraint {
    /// The determinant with first row taken from `x`.
    pub fn value(&self, x: &[f64]) -> f64 {
        self.tuple
            .indices()
            .iter()
            .zip(&self.cofactors)
            .map(|(&i, c)| c * x[i])
            .sum()
    }

    pub fn tolerance(&self) -> f64 {
        BOUNDARY_REL_TOL * self.bound.max(1.0)
    }
}

/// Signed first-row cofactors for the tuple: `c_j = (−1)^j · det(M_j)`,
/// where `M_j` is the n×n matrix of physical coordinates of the tuple's
/// cluster points with point `j` left out.
pub fn tuple_cofactors(emb: &Embedding, tuple: &IndexTuple) -> Vec<f64> {
    let n = emb.n;
    let idx = tuple.indices();
    let mut minor = vec![0.0; n * n];
    (0..=n)
        .map(|skip| {
            let cols = idx
                .iter()
                .enumerate()
                .filter(|&(p, _)| p != skip)
                .map(|(_, &i)| i);
            for (col, i) in cols.enumerate() {
                for m in 0..n {
                    minor[m * n + col] = emb.cluster.coordinate(m, i);
                }
            }
            let sign = if skip % 2 == 0 { 1.0 } else { -1.0 };
            sign * determinant(n, &minor)
        })
        .collect()
}

/// The retained strip constraints, with a packed copy in evaluation order
/// for the membership loop.
#[derive(Debug, Clone)]
pub struct StripConstraintSet {
    pub n: usize,
    pub k: usize,
    /// Retained constraints in lexicographic tuple order.
    pub constraints: Vec<StripConstraint>,
    /// Number of tuples dropped because their bound was below `drop_tolerance`.
    pub dropped: usize,
    pub drop_tolerance: f64,
    /// Permutation of `constraints` used by `in_strip`.
    pub evaluation_order: Vec<usize>,
    stride: usize,
    packed_indices: Vec<u32>,
    packed_cofactors: Vec<f64>,
    packed_limits: Vec<f64>,
}

pub fn build_constraints(emb: &Embedding) -> Result<StripConstraintSet> {
    let (n, k) = (emb.n, emb.k);
    let drop_tolerance = 1e-12 * emb.kappa.powi(n as i32);
    let mut constraints = Vec::new();
    let mut dropped = 0;
    for tuple in index_tuples(n, k)? {
        let cofactors = tuple_cofactors(emb, &tuple);
        let bound = 0.5 * cofactors.iter().map(|c| c.abs()).sum::<f64>();
        if bound < drop_tolerance {
            dropped += 1;
            continue;
        }
        constraints.push(StripConstraint {
            tuple,
            cofactors,
            bound,
        });
    }

    // most discriminating first: largest max_j |c_j| / d
    let score = |c: &StripConstraint| {
        c.cofactors.iter().fold(0.0f64, |m, x| m.max(x.abs())) / c.bound
    };
    let mut evaluation_order: Vec<usize> = (0..constraints.len()).collect();
    evaluation_order.sort_by(|&a, &b| score(&constraints[b]).total_cmp(&score(&constraints[a])));

    let stride = n + 1;
    let mut packed_indices = Vec::with_capacity(constraints.len() * stride);
    let mut packed_cofactors = Vec::with_capacity(constraints.len() * stride);
    let mut packed_limits = Vec::with_capacity(constraints.len());
    for &ci in &evaluation_order {
        let c = &constraints[ci];
        packed_indices.extend(c.tuple.indices().iter().map(|&i| i as u32));
        packed_cofactors.extend_from_slice(&c.cofactors);
        packed_limits.push(c.bound + c.tolerance());
    }

    Ok(StripConstraintSet {
        n,
        k,
        constraints,
        dropped,
        drop_tolerance,
        evaluation_order,
        stride,
        packed_indices,
        packed_cofactors,
        packed_limits,
    })
}

/// Coordinates accepted by the membership test.
pub trait Coordinate: Copy {
    fn to_f64(self) -> f64;
}

impl Coordinate for f64 {
    #[inline(always)]
    fn to_f64(self) -> f64 {
        self
    }
}

impl Coordinate for i32 {
    #[inline(always)]
    fn to_f64(self) -> f64 {
        self as f64
    }
}

impl StripConstraintSet {
    pub fn len(&self) -> usize {
        self.constraints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.constraints.is_empty()
    }

    /// Closed membership `|det| ≤ d + ε_b` for every retained constraint,
    /// exiting on the first violation.
    pub fn in_strip<T: Coordinate>(&self, x: &[T]) -> bool {
        debug_assert_eq!(x.len(), self.k);
        match self.stride {
            2 => self.check::<T, 2>(x),
            3 => self.check::<T, 3>(x),
            4 => self.check::<T, 4>(x),
            _ => self.check_dyn(x),
        }
    }

    #[inline(always)]
    fn check<T: Coordinate, const S: usize>(&self, x: &[T]) -> bool {
        let idx = self.packed_indices.chunks_exact(S);
        let cof = self.packed_cofactors.chunks_exact(S);
        for ((i, c), &limit) in idx.zip(cof).zip(&self.packed_limits) {
            let mut v = 0.0;
            for s in 0..S {
                v += c[s] * x[i[s] as usize].to_f64();
            }
            if v.abs() > limit {
                return false;
            }
        }
        true
    }

    fn check_dyn<T: Coordinate>(&self, x: &[T]) -> bool {
        let s = self.stride;
        let idx = self.packed_indices.chunks_exact(s);
        let cof = self.packed_cofactors.chunks_exact(s);
        idx.zip(cof).zip(&self.packed_limits).all(|((i, c), &limit)| {
            let v: f64 = i
                .iter()
                .zip(c)
                .map(|(&i, c)| c * x[i as usize].to_f64())
                .sum();
            v.abs() <= limit
        })
    }

    /// True when some constraint value lies within its tolerance of `±d`,
    /// i.e. the point sits on the boundary up to rounding.
    pub fn in_boundary_band(&self, x: &[f64]) -> bool {
        self.constraints
            .iter()
            .any(|c| (c.value(x).abs() - c.bound).abs() <= c.tolerance())
    }

    /// Largest `|det| − d` over all constraints (≤ 0 inside the strip).
    pub fn max_excess(&self, x: &[f64]) -> f64 {
        self.constraints
            .iter()
            .map(|c| c.value(x).abs() - c.bound)
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;
    use crate::embedding::build_embedding;
    use crate::group::{build_cluster, dihedral_generators, golden_ratio, orbit, Cluster};

    fn fibonacci() -> Embedding {
        let t = golden_ratio();
        build_embedding(Cluster::from_half_points(vec![vec![1.0], vec![t]]).unwrap()).unwrap()
    }

    fn decagon(seeds: &[[f64; 2]]) -> Embedding {
        let g = dihedral_generators(5).unwrap();
        let shells: Vec<_> = seeds.iter().map(|s| orbit(&g, s, 1e-9).unwrap()).collect();
        build_embedding(build_cluster(&shells).unwrap()).unwrap()
    }

    #[test]
    fn tuple_counts() {
        assert_eq!(index_tuples(2, 10).unwrap().len(), 120);
        assert_eq!(index_tuples(3, 31).unwrap().len(), 31465);
        assert_eq!(binomial(31, 4), 31465);
        let t = index_tuples(1, 2).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t[0].to_string(), "(1,2)");
        assert!(index_tuples(3, 3).is_err());
        assert!(index_tuples(0, 3).is_err());
    }

    #[test]
    fn tuples_are_lexicographic_and_increasing() {
        let t = index_tuples(2, 7).unwrap();
        assert_eq!(t.len() as u64, binomial(7, 3));
        assert!(t.windows(2).all(|w| w[0] < w[1]));
        assert!(t.iter().all(|x| x.indices().windows(2).all(|w| w[0] < w[1])));
        assert_eq!(t[0].indices(), &[0, 1, 2]);
        assert_eq!(t.last().unwrap().indices(), &[4, 5, 6]);
        assert!(IndexTuple::new(vec![2, 1]).is_err());
    }

    #[test]
    fn fibonacci_single_constraint() {
        let t = golden_ratio();
        let cs = build_constraints(&fibonacci()).unwrap();
        assert_eq!(cs.len(), 1);
        let c = &cs.constraints[0];
        assert!((c.cofactors[0] - t).abs() < 1e-15);
        assert!((c.cofactors[1] + 1.0).abs() < 1e-15);
        assert!((c.bound - (1.0 + t) / 2.0).abs() < 1e-15);
        assert!((c.bound - 1.309_017_0).abs() < 1e-7);
    }

    #[test]
    fn fibonacci_membership_by_hand() {
        let cs = build_constraints(&fibonacci()).unwrap();
        assert!(cs.in_strip(&[0, 0]));
        assert!(cs.in_strip(&[1, 1]));
        assert!(!cs.in_strip(&[2, 0]));
        assert!(cs.in_strip(&[0.0, 0.0]));
        assert!(cs.in_strip(&[0, 1]) && cs.in_strip(&[0, -1]));
        assert!(!cs.in_strip(&[1, 0]) && !cs.in_strip(&[-1, 0]));
    }

    #[test]
    fn bound_matches_vertex_maximization() {
        let emb = decagon(&[[1.1, 1.3], [1.0, 0.0]]);
        let cs = build_constraints(&emb).unwrap();
        assert!(cs.len() <= 120);
        assert_eq!(cs.len() + cs.dropped, 120);
        for c in &cs.constraints {
            assert!(c.bound > 0.0);
            // max over the 2^(n+1) sign patterns of the first row
            let r = c.cofactors.len();
            let vertex_max = (0..1u32 << r)
                .map(|mask| {
                    (0..r)
                        .map(|j| {
                            let a = if mask >> j & 1 == 1 { 0.5 } else { -0.5 };
                            a * c.cofactors[j]
                        })
                        .sum::<f64>()
                        .abs()
                })
                .fold(0.0, f64::max);
            assert!((vertex_max - c.bound).abs() <= 1e-12 * c.bound);
        }
    }

    #[test]
    fn repeated_row_determinant_vanishes() {
        let emb = decagon(&[[1.1, 1.3], [1.0, 0.0]]);
        let cs = build_constraints(&emb).unwrap();
        for c in &cs.constraints {
            for m in 0..emb.n {
                let s: f64 = c
                    .tuple
                    .indices()
                    .iter()
                    .zip(&c.cofactors)
                    .map(|(&i, cj)| cj * emb.cluster.coordinate(m, i))
                    .sum();
                assert!(s.abs() < 1e-9, "{} row {m}: {s}", c.tuple);
            }
        }
    }

    #[test]
    fn cofactors_reproduce_full_determinant() {
        // first-row expansion against a direct 3×3 determinant
        let emb = decagon(&[[1.0, 0.0]]);
        let cs = build_constraints(&emb).unwrap();
        let x = [0.3, -1.7, 2.0, 0.4, -0.9];
        for c in &cs.constraints {
            let i = c.tuple.indices();
            let m = [
                x[i[0]],
                x[i[1]],
                x[i[2]],
                emb.cluster.coordinate(0, i[0]),
                emb.cluster.coordinate(0, i[1]),
                emb.cluster.coordinate(0, i[2]),
                emb.cluster.coordinate(1, i[0]),
                emb.cluster.coordinate(1, i[1]),
                emb.cluster.coordinate(1, i[2]),
            ];
            assert!((determinant(3, &m) - c.value(&x)).abs() < 1e-12);
        }
    }

    #[test]
    fn degenerate_tuples_are_dropped() {
        // three collinear cluster points: every minor of tuple (1,2,3) vanishes
        let c = Cluster::from_half_points(vec![
            vec![1.0, 0.0],
            vec![2.0, 0.0],
            vec![3.0, 0.0],
            vec![0.0, 1.0],
            vec![0.0, 1.0 + 1e-3],
        ])
        .unwrap();
        let emb = Embedding::unchecked(c);
        let cs = build_constraints(&emb).unwrap();
        assert!(cs.dropped >= 1);
        assert!(cs.constraints.iter().all(|c| c.bound >= cs.drop_tolerance));
    }

    #[test]
    fn evaluation_order_is_a_permutation() {
        let emb = decagon(&[[1.1, 1.3], [1.0, 0.0]]);
        let cs = build_constraints(&emb).unwrap();
        let mut o = cs.evaluation_order.clone();
        o.sort_unstable();
        assert_eq!(o, (0..cs.len()).collect::<Vec<_>>());
    }

    proptest! {
        #[test]
        fn membership_is_symmetric_and_order_free(x in prop::collection::vec(-6i32..=6, 10)) {
            let emb = decagon(&[[1.1, 1.3], [1.0, 0.0]]);
            let cs = build_constraints(&emb).unwrap();
            let neg: Vec<i32> = x.iter().map(|v| -v).collect();
            prop_assert_eq!(cs.in_strip(&x), cs.in_strip(&neg));
            let xf: Vec<f64> = x.iter().map(|&v| v as f64).collect();
            let slow = cs.constraints.iter().all(|c| c.value(&xf).abs() <= c.bound + c.tolerance());
            prop_assert_eq!(cs.in_strip(&x), slow);
        }
    }
}
