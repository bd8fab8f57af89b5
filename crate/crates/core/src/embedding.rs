//! Physical space as an n-dimensional subspace of the superspace `R^k`.
//!
//! Row `i` of the stacked half-points gives `w_i = (v_{i1}, …, v_{ik})`.
//! For clusters coming from an irreducible representation these rows are
//! orthogonal with a common norm κ; that is validated, never assumed.

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::group::Cluster;
use crate::linalg::dot;

const ORTHOGONALITY_REL_TOL: f64 = 1e-9;

#[derive(Debug, Clone)]
pub struct Embedding {
    pub k: usize,
    pub n: usize,
    /// Row-major `n × k`: row `i` is `w_i`.
    w: Vec<f64>,
    pub kappa: f64,
    pub cluster: Cluster,
}

pub fn build_embedding(cluster: Cluster) -> Result<Embedding> {
    let (n, k) = (cluster.n, cluster.k());
    if k < n + 1 {
        return Err(Error::EmbeddingInvalid(format!(
            "superspace dimension k = {k} must exceed physical dimension n = {n}"
        )));
    }
    let mut w = vec![0.0; n * k];
    for (j, p) in cluster.half_points.iter().enumerate() {
        for (i, &c) in p.iter().enumerate() {
            w[i * k + j] = c;
        }
    }
    let row = |i: usize| &w[i * k..(i + 1) * k];
    let kappa = dot(row(0), row(0)).sqrt();
    if !(kappa > 0.0) {
        return Err(Error::EmbeddingInvalid("w_1 has zero norm".into()));
    }
    let kappa2 = kappa * kappa;
    for i in 0..n {
        let norm_i = dot(row(i), row(i)).sqrt();
        if (norm_i - kappa).abs() > ORTHOGONALITY_REL_TOL * kappa {
            return Err(Error::EmbeddingInvalid(format!(
                "‖w_{}‖ = {norm_i} differs from κ = {kappa}",
                i + 1
            )));
        }
        for j in i + 1..n {
            let ip = dot(row(i), row(j));
            if ip.abs() > ORTHOGONALITY_REL_TOL * kappa2 {
                return Err(Error::EmbeddingInvalid(format!(
                    "⟨w_{}, w_{}⟩ = {ip:e} is not zero (κ² = {kappa2})",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    Ok(Embedding {
        k,
        n,
        w,
        kappa,
        cluster,
    })
}

impl Embedding {
    /// Assembles `w` without the orthogonality checks.
    #[cfg(test)]
    pub(crate) fn unchecked(cluster: Cluster) -> Embedding {
        let (n, k) = (cluster.n, cluster.k());
        let mut w = vec![0.0; n * k];
        for (j, p) in cluster.half_points.iter().enumerate() {
            for (i, &c) in p.iter().enumerate() {
                w[i * k + j] = c;
            }
        }
        let kappa = dot(&w[..k], &w[..k]).sqrt();
        Embedding { k, n, w, kappa, cluster }
    }

    /// `w_i` for `i` in `0..n`.
    pub fn w(&self, i: usize) -> &[f64] {
        &self.w[i * self.k..(i + 1) * self.k]
    }

    /// Gram matrix `⟨w_i, w_j⟩ / κ²`, row-major `n × n`.
    pub fn normalized_gram(&self) -> Vec<f64> {
        let k2 = self.kappa * self.kappa;
        let mut g = Vec::with_capacity(self.n * self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                g.push(dot(self.w(i), self.w(j)) / k2);
            }
        }
        g
    }

    /// `(⟨x, w_1⟩, …, ⟨x, w_n⟩)`: unnormalized physical coordinates, so
    /// that the basis vector `e_j` maps to the cluster point `v_j`.
    pub fn project_physical(&self, x: &[f64]) -> Vec<f64> {
        debug_assert_eq!(x.len(), self.k);
        // + 0.0 turns a -0.0 result into +0.0
        (0..self.n).map(|i| dot(x, self.w(i)) + 0.0).collect()
    }

    pub fn project_lattice(&self, x: &[i32]) -> Vec<f64> {
        debug_assert_eq!(x.len(), self.k);
        (0..self.n)
            .map(|i| {
                x.iter()
                    .zip(self.w(i))
                    .map(|(&a, &b)| a as f64 * b)
                    .sum::<f64>()
                    + 0.0
            })
            .collect()
    }

    /// Orthogonal projection of `x` onto the physical subspace, as a k-vector.
    pub fn physical_component(&self, x: &[f64]) -> Vec<f64> {
        let k2 = self.kappa * self.kappa;
        let coeffs = self.project_physical(x);
        let mut out = vec![0.0; self.k];
        for (i, c) in coeffs.iter().enumerate() {
            for (o, w) in out.iter_mut().zip(self.w(i)) {
                *o += c / k2 * w;
            }
        }
        out
    }

    /// `x − π x`, the component of `x` in the internal space.
    pub fn internal_residual(&self, x: &[f64]) -> Vec<f64> {
        let p = self.physical_component(x);
        x.iter().zip(p).map(|(a, b)| a - b).collect()
    }

    /// Stable hex digest of `(n, k, w)` used to tag exported packings.
    pub fn fingerprint(&self) -> String {
        let mut h = Sha256::new();
        h.update((self.n as u64).to_le_bytes());
        h.update((self.k as u64).to_le_bytes());
        for x in &self.w {
            h.update(x.to_bits().to_le_bytes());
        }
        let digest = h.finalize();
        digest[..8].iter().map(|b| format!("{b:02x}")).collect()
    }
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;
    use crate::group::{build_cluster, dihedral_generators, orbit, DEFAULT_DEDUP_TOL};

    fn decagon_single() -> Embedding {
        let g = dihedral_generators(5).unwrap();
        let s = orbit(&g, &[1.0, 0.0], DEFAULT_DEDUP_TOL).unwrap();
        build_embedding(build_cluster(&[s]).unwrap()).unwrap()
    }

    fn decagon_two_shell() -> Embedding {
        let g = dihedral_generators(5).unwrap();
        let shells = [
            orbit(&g, &[1.1, 1.3], DEFAULT_DEDUP_TOL).unwrap(),
            orbit(&g, &[1.0, 0.0], DEFAULT_DEDUP_TOL).unwrap(),
        ];
        build_embedding(build_cluster(&shells).unwrap()).unwrap()
    }

    #[test]
    fn single_decagon_kappa_squared() {
        // squared cosines of the five representatives 0°, ±36°, ±72°
        let expected: f64 = [0.0f64, 36.0, -36.0, 72.0, -72.0]
            .iter()
            .map(|d| d.to_radians().cos().powi(2))
            .sum();
        assert!((expected - 2.5).abs() < 1e-12);
        let e = decagon_single();
        assert_eq!(e.k, 5);
        assert!((e.kappa * e.kappa - expected).abs() < 1e-12);
    }

    #[test]
    fn two_shell_rows_are_orthogonal() {
        let e = decagon_two_shell();
        let g = e.normalized_gram();
        assert!(g[1].abs() < 1e-9);
        assert!((g[3] - 1.0).abs() < 1e-9);
    }

    #[test]
    fn basis_vectors_project_exactly_onto_cluster_points() {
        let e = decagon_two_shell();
        for j in 0..e.k {
            let mut x = vec![0.0; e.k];
            x[j] = 1.0;
            assert_eq!(e.project_physical(&x), e.cluster.half_points[j]);
            let mut xi = vec![0; e.k];
            xi[j] = 1;
            assert_eq!(e.project_lattice(&xi), e.cluster.half_points[j]);
        }
        let zero = e.project_physical(&vec![0.0; e.k]);
        assert!(zero.iter().all(|c| *c == 0.0 && c.is_sign_positive()));
        let mut x = vec![0.0; e.k];
        x[0] = 1.0;
        x[1] = 1.0;
        let p = e.project_physical(&x);
        for m in 0..2 {
            let s = e.cluster.half_points[0][m] + e.cluster.half_points[1][m];
            assert!((p[m] - s).abs() < 1e-12);
        }
    }

    #[test]
    fn internal_residual_of_w_vanishes() {
        let e = decagon_two_shell();
        let r = e.internal_residual(e.w(0));
        assert!(r.iter().all(|c| c.abs() < 1e-10 * e.kappa));
    }

    #[test]
    fn rejects_non_orthogonal_rows() {
        let c = Cluster::from_half_points(vec![
            vec![1.0, 0.0],
            vec![1.0, 1.0],
            vec![0.0, 1.0],
        ])
        .unwrap();
        assert!(matches!(build_embedding(c), Err(Error::EmbeddingInvalid(_))));
        let too_small = Cluster::from_half_points(vec![vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        assert!(build_embedding(too_small).is_err());
    }

    #[test]
    fn fingerprint_is_stable_and_discriminating() {
        let a = decagon_two_shell();
        assert_eq!(a.fingerprint(), decagon_two_shell().fingerprint());
        assert_eq!(a.fingerprint().len(), 16);
        assert_ne!(a.fingerprint(), decagon_single().fingerprint());
    }

    proptest! {
        #[test]
        fn projector_identities(x in prop::collection::vec(-20.0f64..20.0, 10)) {
            let e = decagon_two_shell();
            let k2 = e.kappa * e.kappa;
            let xn = crate::linalg::norm(&x).max(1e-300);
            let r = e.internal_residual(&x);
            for i in 0..e.n {
                prop_assert!(dot(&r, e.w(i)).abs() <= 1e-9 * k2 * xn);
            }
            let rr = e.internal_residual(&r);
            for (a, b) in rr.iter().zip(&r) {
                prop_assert!((a - b).abs() <= 1e-9 * xn);
            }
            // reconstruct π x from the unnormalized coordinates
            let coeffs = e.project_physical(&x);
            for j in 0..e.k {
                let px: f64 = (0..e.n).map(|i| coeffs[i] * e.w(i)[j] / k2).sum();
                prop_assert!((px + r[j] - x[j]).abs() <= 1e-10 * xn.max(1.0));
            }
            let phys2: f64 = coeffs.iter().map(|c| c * c).sum::<f64>() / k2;
            let total = dot(&x, &x);
            prop_assert!((phys2 + dot(&r, &r) - total).abs() <= 1e-9 * total.max(1.0));
        }
    }
}
