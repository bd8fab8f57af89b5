//! Static SVG scatter plots of packings. Three-dimensional packings are
//! viewed down an axis (typically a fivefold axis of the icosahedral group).

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::enumerate::Packing;
use crate::error::{Error, Result};
use crate::group::{is_positive_representative, GeneratorSet, GroupKind};
use crate::linalg::{cross, dot, Matrix};

const AXIS_UNIT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Projection {
    /// Physical coordinates as they are (n = 1 is drawn on the x-axis).
    Direct,
    /// Orthogonal projection onto the plane normal to a unit 3-vector.
    Axis([f64; 3]),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RenderView {
    pub projection: Projection,
    pub point_radius: f64,
    pub canvas_size: f64,
    /// Pixels per physical unit; `None` fits the packing to the canvas.
    pub scale: Option<f64>,
}

impl Default for RenderView {
    fn default() -> Self {
        RenderView {
            projection: Projection::Direct,
            point_radius: 2.0,
            canvas_size: 800.0,
            scale: None,
        }
    }
}

/// Unit vector fixed by the order-5 generator, first nonzero coordinate
/// positive.
pub fn fivefold_axis(gens: &GeneratorSet) -> Result<[f64; 3]> {
    if gens.kind != GroupKind::Icosahedral {
        return Err(Error::InvalidArgument(
            "fivefold axis needs the icosahedral group".into(),
        ));
    }
    let a = &gens.generators[0];
    fixed_axis(a)
}

/// Solves `(A − I) u = 0` for a rotation `A` with a one-dimensional
/// fixed space: `u` is the largest cross product of two rows of `A − I`.
fn fixed_axis(a: &Matrix) -> Result<[f64; 3]> {
    let row = |i: usize| -> [f64; 3] {
        let r = a.row(i);
        let mut out = [r[0], r[1], r[2]];
        out[i] -= 1.0;
        out
    };
    let candidates = [cross(&row(0), &row(1)), cross(&row(0), &row(2)), cross(&row(1), &row(2))];
    let best = candidates
        .iter()
        .max_by(|x, y| dot(&x[..], &x[..]).total_cmp(&dot(&y[..], &y[..])))
        .copied()
        .unwrap();
    let len = dot(&best, &best).sqrt();
    if len < 1e-9 {
        return Err(Error::Invariant("generator has no one-dimensional fixed space".into()));
    }
    let mut u = best.map(|c| c / len);
    if !is_positive_representative(&u, 1e-12) {
        u = u.map(|c| -c);
    }
    let au = a.apply(&u);
    if au.iter().zip(&u).any(|(x, y)| (x - y).abs() > 1e-9) {
        return Err(Error::Invariant("computed axis is not fixed by the generator".into()));
    }
    Ok(u.map(|c| c + 0.0))
}

/// In-plane basis `{b1, b2}` completing the unit axis `u`: Gram–Schmidt on
/// `(u, x̂, ŷ)`, falling back to `ẑ` when a candidate is nearly parallel.
pub fn plane_basis(u: [f64; 3]) -> ([f64; 3], [f64; 3]) {
    let mut basis: Vec<[f64; 3]> = vec![u];
    for cand in [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]] {
        if basis.len() == 3 {
            break;
        }
        let mut v = cand;
        for b in &basis {
            let p = dot(&v, b);
            for i in 0..3 {
                v[i] -= p * b[i];
            }
        }
        let len = dot(&v, &v).sqrt();
        if len > 1e-6 {
            basis.push(v.map(|c| c / len));
        }
    }
    (basis[1], basis[2])
}

fn check_axis(u: [f64; 3]) -> Result<()> {
    let len = dot(&u, &u).sqrt();
    if (len - 1.0).abs() > AXIS_UNIT_TOL {
        return Err(Error::validation("axis", format!("must be a unit vector, norm is {len}")));
    }
    Ok(())
}

/// 2-d coordinates (in physical units) of every packing point under `view`.
pub fn project_points(p: &Packing, view: &RenderView) -> Result<Vec<[f64; 2]>> {
    match view.projection {
        Projection::Direct => match p.n {
            1 => Ok(p.points.iter().map(|q| [q.physical[0], 0.0]).collect()),
            2 => Ok(p.points.iter().map(|q| [q.physical[0], q.physical[1]]).collect()),
            found => Err(Error::DimensionMismatch { expected: 2, found }),
        },
        Projection::Axis(u) => {
            if p.n != 3 {
                return Err(Error::DimensionMismatch {
                    expected: 3,
                    found: p.n,
                });
            }
            check_axis(u)?;
            let (b1, b2) = plane_basis(u);
            Ok(p.points
                .iter()
                .map(|q| [dot(&q.physical, &b1), dot(&q.physical, &b2)])
                .collect())
        }
    }
}

pub fn svg_string(p: &Packing, view: &RenderView) -> Result<String> {
    let pts = project_points(p, view)?;
    let size = view.canvas_size;
    let center = size / 2.0;
    let scale = view.scale.unwrap_or_else(|| {
        let extent = pts
            .iter()
            .flat_map(|q| q.iter().map(|c| c.abs()))
            .fold(0.0, f64::max);
        if extent > 0.0 {
            (center - 2.0 * view.point_radius) / extent
        } else {
            1.0
        }
    });

    let mut s = String::new();
    s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{size}\" height=\"{size}\" viewBox=\"0 0 {size} {size}\">"
    );
    s.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    s.push_str("<g fill=\"black\">\n");
    for q in &pts {
        let cx = center + scale * q[0];
        let cy = center - scale * q[1];
        let _ = writeln!(
            s,
            "<circle cx=\"{:.4}\" cy=\"{:.4}\" r=\"{:.4}\"/>",
            cx + 0.0,
            cy + 0.0,
            view.point_radius
        );
    }
    s.push_str("</g>\n</svg>\n");
    Ok(s)
}

pub fn render_svg(p: &Packing, view: &RenderView, path: &Path) -> Result<()> {
    let s = svg_string(p, view)?;
    fs::write(path, s).map_err(|e| Error::io(format!("writing {}", path.display()), e))
}
