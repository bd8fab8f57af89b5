//! Independent strip membership via linear feasibility.
//!
//! `x ∈ S = E_n + Ω_k` iff some `t ∈ R^n` satisfies
//! `|x_j − Σ_i t_i w_{ij}| ≤ 0.5` for every `j`. This never touches the
//! determinant constraints, which makes it a cross-check for them.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::embedding::Embedding;
use crate::error::{Error, Result};
use crate::linalg::{dot, solve};
use crate::strip::StripConstraintSet;

/// Half the hypercube edge.
pub const HALF_EDGE: f64 = 0.5;

/// Default feasibility tolerance used by [`agreement_report`].
pub const ORACLE_TOL: f64 = 1e-9;

const MAX_ORACLE_DIM: usize = 3;

/// Slab system `|x_j − ⟨t, v_j⟩| ≤ slack` in the unknown `t ∈ R^n`.
#[derive(Debug, Clone)]
pub struct FeasibilityProblem<'a> {
    pub emb: &'a Embedding,
    pub x: Vec<f64>,
    pub slack: f64,
}

impl<'a> FeasibilityProblem<'a> {
    pub fn new(emb: &'a Embedding, x: &[f64]) -> Result<Self> {
        if emb.n > MAX_ORACLE_DIM {
            return Err(Error::InvalidArgument(format!(
                "feasibility oracle supports n <= {MAX_ORACLE_DIM}, got n = {}",
                emb.n
            )));
        }
        if x.len() != emb.k {
            return Err(Error::DimensionMismatch {
                expected: emb.k,
                found: x.len(),
            });
        }
        Ok(FeasibilityProblem {
            emb,
            x: x.to_vec(),
            slack: HALF_EDGE,
        })
    }

    fn v(&self, j: usize) -> &[f64] {
        &self.emb.cluster.half_points[j]
    }

    fn satisfies(&self, t: &[f64], half: f64) -> bool {
        (0..self.emb.k).all(|j| (self.x[j] - dot(t, self.v(j))).abs() <= half)
    }

    pub fn is_feasible(&self, tol: f64) -> bool {
        let half = self.slack + tol;
        match self.emb.n {
            1 => self.interval_feasible(half),
            _ => self.vertex_feasible(half),
        }
    }

    fn interval_feasible(&self, half: f64) -> bool {
        let mut lo = f64::NEG_INFINITY;
        let mut hi = f64::INFINITY;
        for j in 0..self.emb.k {
            let a = self.v(j)[0];
            let xj = self.x[j];
            if a == 0.0 {
                if xj.abs() > half {
                    return false;
                }
                continue;
            }
            let (p, q) = ((xj - half) / a, (xj + half) / a);
            lo = lo.max(p.min(q));
            hi = hi.min(p.max(q));
        }
        lo <= hi
    }

    /// A nonempty bounded polytope has a vertex where `n` linearly
    /// independent slab faces meet; try them all.
    fn vertex_feasible(&self, half: f64) -> bool {
        let (n, k) = (self.emb.n, self.emb.k);
        let scale = self.x.iter().fold(1.0f64, |m, c| m.max(c.abs()));
        let check = half + 1e-12 * scale;

        // least-squares point first; it is the answer for most inside points
        let k2 = self.emb.kappa * self.emb.kappa;
        let t0: Vec<f64> = self
            .emb
            .project_physical(&self.x)
            .iter()
            .map(|c| c / k2)
            .collect();
        if self.satisfies(&t0, check) {
            return true;
        }

        let mut a = vec![0.0; n * n];
        let mut b = vec![0.0; n];
        let mut subset: Vec<usize> = (0..n).collect();
        loop {
            for (row, &j) in subset.iter().enumerate() {
                a[row * n..(row + 1) * n].copy_from_slice(self.v(j));
            }
            for signs in 0..1u32 << n {
                for (row, &j) in subset.iter().enumerate() {
                    let s = if signs >> row & 1 == 1 { half } else { -half };
                    b[row] = self.x[j] + s;
                }
                if let Some(t) = solve(n, &a, &b, 1e-12) {
                    if self.satisfies(&t, check) {
                        return true;
                    }
                }
            }
            let Some(pos) = (0..n).rev().find(|&p| subset[p] < k - n + p) else {
                return false;
            };
            subset[pos] += 1;
            for p in pos + 1..n {
                subset[p] = subset[p - 1] + 1;
            }
        }
    }
}

/// Decides `x ∈ E_n + [−0.5 − tol, 0.5 + tol]^k` by linear feasibility.
pub fn lp_strip_membership(emb: &Embedding, x: &[f64], tol: f64) -> Result<bool> {
    Ok(FeasibilityProblem::new(emb, x)?.is_feasible(tol))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AgreementReport {
    pub n: usize,
    pub k: usize,
    pub samples: usize,
    pub coordinate_range: i32,
    pub seed: u64,
    /// Samples both deciders place inside the strip.
    pub inside: usize,
    pub agreements: usize,
    /// Disagreements outside the boundary band.
    pub disagreements: usize,
    pub boundary_band: usize,
    pub boundary_disagreements: usize,
    /// First (at most 10) out-of-band disagreeing vectors.
    pub examples: Vec<Vec<i32>>,
}

impl AgreementReport {
    pub fn passed(&self) -> bool {
        self.disagreements == 0
    }
}

impl fmt::Display for AgreementReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n: {}", self.n)?;
        writeln!(f, "k: {}", self.k)?;
        writeln!(f, "samples: {}", self.samples)?;
        writeln!(f, "range: [-{0}, {0}]", self.coordinate_range)?;
        writeln!(f, "seed: {}", self.seed)?;
        writeln!(f, "inside: {}", self.inside)?;
        writeln!(f, "agreements: {}", self.agreements)?;
        writeln!(f, "disagreements: {}", self.disagreements)?;
        writeln!(f, "boundary_band: {}", self.boundary_band)?;
        writeln!(f, "boundary_disagreements: {}", self.boundary_disagreements)?;
        for x in &self.examples {
            let s: Vec<String> = x.iter().map(i32::to_string).collect();
            writeln!(f, "disagreement: {}", s.join(","))?;
        }
        write!(f, "result: {}", if self.passed() { "PASS" } else { "FAIL" })
    }
}

/// Samples integer vectors uniformly from `[−range, range]^k` and compares
/// the determinant test against the feasibility oracle.
pub fn agreement_report(
    cs: &StripConstraintSet,
    emb: &Embedding,
    sample_count: usize,
    coordinate_range: i32,
    seed: u64,
) -> Result<AgreementReport> {
    if emb.n > MAX_ORACLE_DIM {
        return Err(Error::InvalidArgument(format!(
            "feasibility oracle supports n <= {MAX_ORACLE_DIM}, got n = {}",
            emb.n
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = AgreementReport {
        n: emb.n,
        k: emb.k,
        samples: sample_count,
        coordinate_range,
        seed,
        inside: 0,
        agreements: 0,
        disagreements: 0,
        boundary_band: 0,
        boundary_disagreements: 0,
        examples: Vec::new(),
    };
    for _ in 0..sample_count {
        let x: Vec<i32> = (0..emb.k)
            .map(|_| rng.gen_range(-coordinate_range..=coordinate_range))
            .collect();
        let xf: Vec<f64> = x.iter().map(|&c| c as f64).collect();
        let det = cs.in_strip(&x);
        let lp = lp_strip_membership(emb, &xf, ORACLE_TOL)?;
        let band = cs.in_boundary_band(&xf);
        if band {
            report.boundary_band += 1;
        }
        if det == lp {
            report.agreements += 1;
            if det {
                report.inside += 1;
            }
        } else if band {
            report.boundary_disagreements += 1;
        } else {
            report.disagreements += 1;
            if report.examples.len() < 10 {
                report.examples.push(x);
            }
        }
    }
    Ok(report)
}
