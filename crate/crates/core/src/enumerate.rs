//! Selection of `S ∩ Z^k` and its projection to physical space.
//!
//! The search starts at the origin (always inside the strip) and expands
//! level by level over the unit steps `x ± e_j`. Candidates of one level
//! are generated sequentially from the sorted frontier, classified in
//! parallel, and merged back in sorted order, so the result does not
//! depend on the worker count. Connectivity of `S ∩ Z^k` under unit steps
//! is assumed; [`box_scan`] provides an exhaustive cross-check for small k.

use std::collections::HashSet;

use rayon::prelude::*;

use crate::embedding::Embedding;
use crate::error::{Error, LimitKind, Result};
use crate::strip::StripConstraintSet;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnumerationLimits {
    pub max_points: Option<usize>,
    /// Bound on `‖P_n x‖`, in the same (unnormalized) units as the
    /// physical coordinates.
    pub max_physical_radius: Option<f64>,
    /// Safety cap on `|x_j|`.
    pub max_coordinate: i32,
}

impl Default for EnumerationLimits {
    fn default() -> Self {
        EnumerationLimits {
            max_points: Some(10_000),
            max_physical_radius: None,
            max_coordinate: 1_000,
        }
    }
}

impl EnumerationLimits {
    pub fn validate(&self) -> Result<()> {
        if self.max_points.is_none() && self.max_physical_radius.is_none() {
            return Err(Error::validation(
                "limits",
                "at least one of max_points and max_radius must be set",
            ));
        }
        if self.max_points == Some(0) {
            return Err(Error::validation("limits.max_points", "must be positive"));
        }
        if let Some(r) = self.max_physical_radius {
            if !(r > 0.0) {
                return Err(Error::validation("limits.max_radius", "must be positive"));
            }
        }
        if self.max_coordinate <= 0 {
            return Err(Error::validation("limits.max_coordinate", "must be positive"));
        }
        Ok(())
    }

    fn within_radius(&self, physical: &[f64]) -> bool {
        match self.max_physical_radius {
            Some(r) => physical.iter().map(|c| c * c).sum::<f64>() <= r * r,
            None => true,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PackingPoint {
    pub lattice: Vec<i32>,
    pub physical: Vec<f64>,
    /// Entry `2j` is `x + e_j ∈ S`, entry `2j + 1` is `x − e_j ∈ S`.
    pub occupancy: Vec<bool>,
}

impl PackingPoint {
    pub fn occupancy_count(&self) -> usize {
        self.occupancy.iter().filter(|&&b| b).count()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Packing {
    pub n: usize,
    pub k: usize,
    /// Sorted by lattice vector.
    pub points: Vec<PackingPoint>,
    pub emb_fingerprint: String,
}

impl Packing {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn find(&self, lattice: &[i32]) -> Option<&PackingPoint> {
        self.points
            .binary_search_by(|p| p.lattice.as_slice().cmp(lattice))
            .ok()
            .map(|i| &self.points[i])
    }
}

/// Occupancy of the `2k` unit-step neighbours of `x`.
pub fn occupancy_profile(cs: &StripConstraintSet, x: &[i32]) -> Vec<bool> {
    let mut y = x.to_vec();
    let mut out = Vec::with_capacity(2 * x.len());
    for j in 0..x.len() {
        for step in [1, -1] {
            y[j] = x[j] + step;
            out.push(cs.in_strip(&y));
        }
        y[j] = x[j];
    }
    out
}

enum Verdict {
    Accept(Vec<f64>),
    Reject,
    OverCoordinate,
}

fn classify(
    cs: &StripConstraintSet,
    emb: &Embedding,
    limits: &EnumerationLimits,
    y: &[i32],
) -> Verdict {
    let physical = emb.project_lattice(y);
    if !limits.within_radius(&physical) || !cs.in_strip(y) {
        return Verdict::Reject;
    }
    if y.iter().any(|c| c.abs() > limits.max_coordinate) {
        return Verdict::OverCoordinate;
    }
    Verdict::Accept(physical)
}

fn finish(
    cs: &StripConstraintSet,
    emb: &Embedding,
    mut found: Vec<(Vec<i32>, Vec<f64>)>,
) -> Packing {
    found.sort_by(|a, b| a.0.cmp(&b.0));
    let points = found
        .into_par_iter()
        .map(|(lattice, physical)| {
            let occupancy = occupancy_profile(cs, &lattice);
            PackingPoint {
                lattice,
                physical,
                occupancy,
            }
        })
        .collect();
    Packing {
        n: emb.n,
        k: emb.k,
        points,
        emb_fingerprint: emb.fingerprint(),
    }
}

fn check_dims(cs: &StripConstraintSet, emb: &Embedding) -> Result<()> {
    if cs.k != emb.k || cs.n != emb.n {
        return Err(Error::DimensionMismatch {
            expected: emb.k,
            found: cs.k,
        });
    }
    Ok(())
}

/// Breadth-first selection of strip points reachable from the origin.
///
/// On hitting `max_points` or `max_coordinate` with work remaining, the
/// points found so far are returned inside [`Error::LimitExceeded`].
pub fn enumerate_packing(
    cs: &StripConstraintSet,
    emb: &Embedding,
    limits: &EnumerationLimits,
) -> Result<Packing> {
    limits.validate()?;
    check_dims(cs, emb)?;
    let k = emb.k;
    let origin = vec![0i32; k];
    debug_assert!(cs.in_strip(&origin));

    let mut seen: HashSet<Vec<i32>> = HashSet::new();
    seen.insert(origin.clone());
    let mut found = vec![(origin.clone(), emb.project_lattice(&origin))];
    let mut frontier = vec![origin];
    let mut limit_hit = None;

    while !frontier.is_empty() {
        let mut candidates = Vec::new();
        for x in &frontier {
            for j in 0..k {
                for step in [1, -1] {
                    let mut y = x.clone();
                    y[j] += step;
                    if seen.insert(y.clone()) {
                        candidates.push(y);
                    }
                }
            }
        }
        candidates.sort_unstable();

        let verdicts: Vec<Verdict> = candidates
            .par_iter()
            .map(|y| classify(cs, emb, limits, y))
            .collect();

        let mut next = Vec::new();
        for (y, v) in candidates.into_iter().zip(verdicts) {
            match v {
                Verdict::Accept(p) => next.push((y, p)),
                Verdict::OverCoordinate => limit_hit = Some(LimitKind::MaxCoordinate),
                Verdict::Reject => {}
            }
        }
        if let Some(max) = limits.max_points {
            let room = max - found.len();
            if next.len() > room {
                next.truncate(room);
                limit_hit = Some(LimitKind::MaxPoints);
            }
        }
        frontier = next.iter().map(|(y, _)| y.clone()).collect();
        found.extend(next);
        if limit_hit == Some(LimitKind::MaxPoints) {
            break;
        }
    }

    let packing = finish(cs, emb, found);
    match limit_hit {
        None => Ok(packing),
        Some(reason) => Err(Error::LimitExceeded {
            reason,
            partial: Box::new(packing),
        }),
    }
}

/// Exhaustive scan of every lattice vector with `|x_j| ≤ max_coordinate`
/// (and within the radius limit, if any). `max_points` is not applied.
/// Refuses boxes with more than `MAX_BOX_POINTS` lattice vectors.
pub fn box_scan(
    cs: &StripConstraintSet,
    emb: &Embedding,
    limits: &EnumerationLimits,
) -> Result<Packing> {
    const MAX_BOX_POINTS: f64 = 2e9;
    check_dims(cs, emb)?;
    let k = emb.k;
    let m = limits.max_coordinate;
    if m <= 0 {
        return Err(Error::validation("limits.max_coordinate", "must be positive"));
    }
    let side = 2 * m + 1;
    if (side as f64).powi(k as i32) > MAX_BOX_POINTS {
        return Err(Error::InvalidArgument(format!(
            "box scan of {side}^{k} lattice vectors is too large"
        )));
    }
    let found: Vec<(Vec<i32>, Vec<f64>)> = (-m..=m)
        .into_par_iter()
        .flat_map_iter(|first| {
            let mut hits = Vec::new();
            let mut x = vec![-m; k];
            x[0] = first;
            loop {
                if cs.in_strip(&x) {
                    let p = emb.project_lattice(&x);
                    if limits.within_radius(&p) {
                        hits.push((x.clone(), p));
                    }
                }
                // odometer over coordinates 1..k
                let mut j = k;
                loop {
                    j -= 1;
                    if j == 0 {
                        return hits;
                    }
                    if x[j] < m {
                        x[j] += 1;
                        break;
                    }
                    x[j] = -m;
                }
            }
        })
        .collect();
    Ok(finish(cs, emb, found))
}
