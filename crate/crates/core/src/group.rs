//! Finite point groups in physical space and the origin-symmetric clusters
//! built from their orbits.
//!
//! Two families are supported: the dihedral groups `D_{2m}` acting on the
//! plane (rotation by π/m plus the reflection `(α, β) ↦ (α, −β)`) and the
//! icosahedral rotation group `Y = 235` acting on `R³` through the
//! two-generator representation with golden-ratio entries.

use std::cmp::Ordering;
use std::ops::Range;

use crate::error::{Error, Result};
use crate::linalg::{dot, Matrix};

/// Default absolute per-coordinate tolerance used to merge orbit points.
pub const DEFAULT_DEDUP_TOL: f64 = 1e-9;

/// Tolerance for "equal or antipodal" checks between cluster points.
pub const CLUSTER_TOL: f64 = 1e-9;

const ORTHOGONALITY_TOL: f64 = 1e-12;
const RELATION_TOL: f64 = 1e-10;

/// The golden ratio τ = (1 + √5)/2.
pub fn golden_ratio() -> f64 {
    (1.0 + 5f64.sqrt()) / 2.0
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupKind {
    /// `D_{2m}`, the symmetry group of the regular 2m-gon.
    Dihedral(u32),
    Icosahedral,
}

impl GroupKind {
    /// Number of group elements.
    pub fn order(&self) -> usize {
        match *self {
            GroupKind::Dihedral(m) => 4 * m as usize,
            GroupKind::Icosahedral => 60,
        }
    }
}

/// A relation `word^order = e`, the word written as generator indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub word: Vec<usize>,
    pub order: u32,
}

#[derive(Debug, Clone)]
pub struct GeneratorSet {
    pub dimension: usize,
    pub generators: Vec<Matrix>,
    pub relations: Vec<Relation>,
    pub kind: GroupKind,
}

impl GeneratorSet {
    fn new(kind: GroupKind, generators: Vec<Matrix>, relations: Vec<Relation>) -> Result<Self> {
        let dimension = generators[0].dim();
        let gens = GeneratorSet {
            dimension,
            generators,
            relations,
            kind,
        };
        gens.verify()?;
        Ok(gens)
    }

    /// Product of the generators named by `word`, applied left to right
    /// as a matrix product (`[0, 1]` is `a·b`).
    pub fn word_matrix(&self, word: &[usize]) -> Matrix {
        word.iter()
            .fold(Matrix::identity(self.dimension), |acc, &g| acc.mul(&self.generators[g]))
    }

    /// Checks orthogonality of every generator and every declared relation.
    pub fn verify(&self) -> Result<()> {
        let id = Matrix::identity(self.dimension);
        for (i, g) in self.generators.iter().enumerate() {
            let err = g.transpose().mul(g).max_abs_diff(&id);
            if err > ORTHOGONALITY_TOL {
                return Err(Error::Invariant(format!(
                    "generator {i} is not orthogonal (max |MᵀM − I| = {err:e})"
                )));
            }
        }
        for rel in &self.relations {
            let err = self.word_matrix(&rel.word).pow(rel.order).max_abs_diff(&id);
            if err > RELATION_TOL {
                return Err(Error::Invariant(format!(
                    "relation {:?}^{} fails by {err:e}",
                    rel.word, rel.order
                )));
            }
        }
        Ok(())
    }
}

/// Rotation `a` by π/m and reflection `b(α, β) = (α, −β)` generating `D_{2m}`.
pub fn dihedral_generators(m: u32) -> Result<GeneratorSet> {
    if m < 2 {
        return Err(Error::InvalidArgument(format!(
            "dihedral group needs m >= 2, got {m}"
        )));
    }
    let angle = std::f64::consts::PI / m as f64;
    let (s, c) = angle.sin_cos();
    let a = Matrix::from_rows(&[&[c, -s], &[s, c]]);
    let b = Matrix::from_rows(&[&[1.0, 0.0], &[0.0, -1.0]]);
    GeneratorSet::new(
        GroupKind::Dihedral(m),
        vec![a, b],
        vec![
            Relation { word: vec![0], order: 2 * m },
            Relation { word: vec![1], order: 2 },
            Relation { word: vec![0, 1], order: 2 },
        ],
    )
}

/// The order-5 rotation `a` and the half-turn `b(α, β, γ) = (−α, −β, γ)`
/// generating the icosahedral group in `R³`.
pub fn icosahedral_generators() -> GeneratorSet {
    let t = golden_ratio();
    let a = Matrix::from_rows(&[
        &[(t - 1.0) / 2.0, -t / 2.0, 0.5],
        &[t / 2.0, 0.5, (t - 1.0) / 2.0],
        &[-0.5, (t - 1.0) / 2.0, t / 2.0],
    ]);
    let b = Matrix::from_rows(&[&[-1.0, 0.0, 0.0], &[0.0, -1.0, 0.0], &[0.0, 0.0, 1.0]]);
    GeneratorSet::new(
        GroupKind::Icosahedral,
        vec![a, b],
        vec![
            Relation { word: vec![0], order: 5 },
            Relation { word: vec![1], order: 2 },
            Relation { word: vec![0, 1], order: 3 },
        ],
    )
    .expect("icosahedral generators satisfy their relations")
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrbitPoints {
    pub points: Vec<Vec<f64>>,
    pub seed: Vec<f64>,
    pub dedup_tolerance: f64,
}

impl OrbitPoints {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Index of the point matching `p` within the dedup tolerance.
    pub fn find(&self, p: &[f64]) -> Option<usize> {
        self.points
            .iter()
            .position(|q| approx_eq(q, p, self.dedup_tolerance))
    }
}

fn approx_eq(a: &[f64], b: &[f64], tol: f64) -> bool {
    a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
}

fn lex_cmp(a: &[f64], b: &[f64]) -> Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.total_cmp(y))
        .find(|o| o.is_ne())
        .unwrap_or(Ordering::Equal)
}

/// Rounding noise below `tol` is flushed to an exact zero (and −0 to +0)
/// so that sorting and the sign rule see clean coordinates.
fn snap(mut p: Vec<f64>, tol: f64) -> Vec<f64> {
    for c in &mut p {
        if c.abs() <= tol {
            *c = 0.0;
        }
    }
    p
}

/// Orbit of `seed` under the group.
///
/// Dihedral orbits are the 2m rotation images `a^j(seed)`; icosahedral
/// orbits are the closure under both generators. Output is sorted
/// lexicographically.
pub fn orbit(gens: &GeneratorSet, seed: &[f64], tol: f64) -> Result<OrbitPoints> {
    if seed.len() != gens.dimension {
        return Err(Error::DimensionMismatch {
            expected: gens.dimension,
            found: seed.len(),
        });
    }
    if seed.iter().any(|c| !c.is_finite()) {
        return Err(Error::InvalidArgument("orbit seed must be finite".into()));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "dedup tolerance must be positive, got {tol}"
        )));
    }
    let cap = 4 * gens.kind.order();
    let mut points: Vec<Vec<f64>> = vec![snap(seed.to_vec(), tol)];
    let push = |points: &mut Vec<Vec<f64>>, p: Vec<f64>| -> Result<bool> {
        if points.iter().any(|q| approx_eq(q, &p, tol)) {
            return Ok(false);
        }
        if points.len() >= cap {
            return Err(Error::OrbitOverflow { cap });
        }
        points.push(p);
        Ok(true)
    };

    match gens.kind {
        GroupKind::Dihedral(m) => {
            let a = &gens.generators[0];
            let mut p = seed.to_vec();
            for _ in 1..2 * m {
                p = a.apply(&p);
                push(&mut points, snap(p.clone(), tol))?;
            }
        }
        GroupKind::Icosahedral => {
            let mut frontier = 0;
            while frontier < points.len() {
                let p = points[frontier].clone();
                for g in &gens.generators {
                    push(&mut points, snap(g.apply(&p), tol))?;
                }
                frontier += 1;
            }
        }
    }

    points.sort_by(|a, b| lex_cmp(a, b));
    Ok(OrbitPoints {
        points,
        seed: seed.to_vec(),
        dedup_tolerance: tol,
    })
}

/// Half of an origin-symmetric cluster: the full cluster is `{±v_j}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Cluster {
    pub n: usize,
    pub half_points: Vec<Vec<f64>>,
    /// Ranges into `half_points`, one per input shell.
    pub shell_boundaries: Vec<Range<usize>>,
}

impl Cluster {
    /// Builds a cluster directly from chosen half-points `v_1 … v_k`, treated
    /// as a single shell. Used for clusters that do not come from one of the
    /// supported groups (for example the one-dimensional Fibonacci row).
    pub fn from_half_points(half_points: Vec<Vec<f64>>) -> Result<Cluster> {
        let k = half_points.len();
        let cluster = Cluster {
            n: half_points.first().map_or(0, Vec::len),
            half_points,
            shell_boundaries: vec![0..k],
        };
        cluster.validate()?;
        Ok(cluster)
    }

    /// Superspace dimension, i.e. the number of half-points.
    pub fn k(&self) -> usize {
        self.half_points.len()
    }

    /// Coordinate `m` of half-point `j`.
    pub fn coordinate(&self, m: usize, j: usize) -> f64 {
        self.half_points[j][m]
    }

    /// All `2k` points `v_1, …, v_k, −v_1, …, −v_k`.
    pub fn full_points(&self) -> Vec<Vec<f64>> {
        let neg = self
            .half_points
            .iter()
            .map(|p| p.iter().map(|c| -c).collect::<Vec<_>>());
        self.half_points.iter().cloned().chain(neg).collect()
    }

    fn validate(&self) -> Result<()> {
        if self.half_points.is_empty() || self.n == 0 {
            return Err(Error::InvalidCluster("cluster is empty".into()));
        }
        for (j, p) in self.half_points.iter().enumerate() {
            if p.len() != self.n {
                return Err(Error::DimensionMismatch {
                    expected: self.n,
                    found: p.len(),
                });
            }
            if p.iter().any(|c| !c.is_finite()) {
                return Err(Error::InvalidCluster(format!("point {j} is not finite")));
            }
            if p.iter().all(|c| c.abs() <= CLUSTER_TOL) {
                return Err(Error::InvalidCluster(format!(
                    "point {j} is the origin; clusters are built from nonzero points"
                )));
            }
        }
        for i in 0..self.k() {
            for j in i + 1..self.k() {
                let (p, q) = (&self.half_points[i], &self.half_points[j]);
                let same = approx_eq(p, q, CLUSTER_TOL);
                let opposite = p.iter().zip(q).all(|(a, b)| (a + b).abs() <= CLUSTER_TOL);
                if same || opposite {
                    return Err(Error::InvalidCluster(format!(
                        "points {i} and {j} are equal or antipodal"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// True when the first coordinate that is nonzero beyond `tol` is positive.
pub fn is_positive_representative(p: &[f64], tol: f64) -> bool {
    p.iter().find(|c| c.abs() > tol).is_some_and(|&c| c > 0.0)
}

/// Concatenates origin-symmetric shells into a cluster, keeping from each
/// `±` pair the point whose first nonzero coordinate is positive.
pub fn build_cluster(shells: &[OrbitPoints]) -> Result<Cluster> {
    if shells.is_empty() {
        return Err(Error::InvalidCluster("no shells given".into()));
    }
    let mut half_points = Vec::new();
    let mut shell_boundaries = Vec::with_capacity(shells.len());
    for (s, shell) in shells.iter().enumerate() {
        let start = half_points.len();
        for p in &shell.points {
            let neg: Vec<f64> = p.iter().map(|c| -c).collect();
            if !shell.points.iter().any(|q| approx_eq(q, &neg, CLUSTER_TOL)) {
                return Err(Error::InvalidCluster(format!(
                    "shell {s} is not symmetric with respect to the origin"
                )));
            }
            if is_positive_representative(p, CLUSTER_TOL) {
                half_points.push(p.clone());
            }
        }
        if 2 * (half_points.len() - start) != shell.len() {
            return Err(Error::InvalidCluster(format!(
                "shell {s} does not split into ± pairs"
            )));
        }
        shell_boundaries.push(start..half_points.len());
    }
    let cluster = Cluster {
        n: shells[0].points[0].len(),
        half_points,
        shell_boundaries,
    };
    cluster.validate()?;
    Ok(cluster)
}

/// Euclidean norms of the points, for shell homogeneity checks.
pub fn norms(points: &[Vec<f64>]) -> Vec<f64> {
    points.iter().map(|p| dot(p, p).sqrt()).collect()
}
