//! Packing files.
//!
//! CSV layout:
//!
//! ```text
//! # n=2,k=10,points=3,fingerprint=0123456789abcdef
//! x1,x2,l1,…,l10,occupancy,occupancy_mask
//! 0,0,0,…,0,4,01100000000000101000
//! ```
//!
//! Floats are written in shortest round-trip form, so reading a file back
//! gives bit-identical coordinates. `occupancy_mask` holds the `2k` flags
//! in the order `+e_1, −e_1, +e_2, …`. The JSON form carries the same fields.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::enumerate::{Packing, PackingPoint};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown format {other:?} (expected csv or json)")),
        }
    }
}

impl Format {
    /// Guess from the file extension; anything but `.json` is CSV.
    pub fn from_path(path: &Path) -> Format {
        match path.extension().and_then(|e| e.to_str()) {
            Some(e) if e.eq_ignore_ascii_case("json") => Format::Json,
            _ => Format::Csv,
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PackingFile {
    n: usize,
    k: usize,
    point_count: usize,
    fingerprint: String,
    points: Vec<PointRecord>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PointRecord {
    physical: Vec<f64>,
    lattice: Vec<i32>,
    occupancy_count: usize,
    occupancy: Vec<bool>,
}

pub fn export_packing(p: &Packing, path: &Path, format: Format) -> Result<()> {
    let text = match format {
        Format::Csv => to_csv(p),
        Format::Json => to_json(p),
    };
    fs::write(path, text).map_err(|e| Error::io(format!("writing {}", path.display()), e))
}

pub fn import_packing(path: &Path) -> Result<Packing> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::io(format!("reading {}", path.display()), e))?;
    match Format::from_path(path) {
        Format::Csv => from_csv(&text, path),
        Format::Json => from_json(&text, path),
    }
}

fn mask(occ: &[bool]) -> String {
    occ.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

pub fn to_csv(p: &Packing) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "# n={},k={},points={},fingerprint={}",
        p.n,
        p.k,
        p.points.len(),
        p.emb_fingerprint
    );
    let mut header: Vec<String> = (1..=p.n).map(|i| format!("x{i}")).collect();
    header.extend((1..=p.k).map(|j| format!("l{j}")));
    header.push("occupancy".into());
    header.push("occupancy_mask".into());
    out.push_str(&header.join(","));
    out.push('\n');
    for q in &p.points {
        for c in &q.physical {
            let _ = write!(out, "{c},");
        }
        for l in &q.lattice {
            let _ = write!(out, "{l},");
        }
        let _ = writeln!(out, "{},{}", q.occupancy_count(), mask(&q.occupancy));
    }
    out
}

pub fn to_json(p: &Packing) -> String {
    let file = PackingFile {
        n: p.n,
        k: p.k,
        point_count: p.points.len(),
        fingerprint: p.emb_fingerprint.clone(),
        points: p
            .points
            .iter()
            .map(|q| PointRecord {
                physical: q.physical.clone(),
                lattice: q.lattice.clone(),
                occupancy_count: q.occupancy_count(),
                occupancy: q.occupancy.clone(),
            })
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&file).expect("packing serializes");
    s.push('\n');
    s
}

fn parse_err(path: &Path, line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        path: path.to_path_buf(),
        line,
        column: 1,
        message: message.into(),
    }
}

pub fn from_csv(text: &str, path: &Path) -> Result<Packing> {
    let mut lines = text.lines().enumerate();
    let (_, meta) = lines
        .next()
        .ok_or_else(|| parse_err(path, 1, "empty file"))?;
    let meta = meta
        .strip_prefix("# ")
        .ok_or_else(|| parse_err(path, 1, "missing '# n=…' header line"))?;
    let (mut n, mut k, mut count, mut fingerprint) = (None, None, None, None);
    for field in meta.split(',') {
        let (key, value) = field
            .split_once('=')
            .ok_or_else(|| parse_err(path, 1, format!("bad header field {field:?}")))?;
        let bad = |_| parse_err(path, 1, format!("bad value for {key}"));
        match key {
            "n" => n = Some(value.parse::<usize>().map_err(bad)?),
            "k" => k = Some(value.parse::<usize>().map_err(bad)?),
            "points" => count = Some(value.parse::<usize>().map_err(bad)?),
            "fingerprint" => fingerprint = Some(value.to_string()),
            _ => return Err(parse_err(path, 1, format!("unknown header field {key:?}"))),
        }
    }
    let (Some(n), Some(k), Some(count), Some(fingerprint)) = (n, k, count, fingerprint) else {
        return Err(parse_err(path, 1, "header must give n, k, points and fingerprint"));
    };
    lines
        .next()
        .ok_or_else(|| parse_err(path, 2, "missing column header"))?;

    let mut points = Vec::with_capacity(count);
    for (idx, line) in lines {
        let lineno = idx + 1;
        if line.is_empty() {
            continue;
        }
        let cols: Vec<&str> = line.split(',').collect();
        if cols.len() != n + k + 2 {
            return Err(parse_err(
                path,
                lineno,
                format!("expected {} columns, got {}", n + k + 2, cols.len()),
            ));
        }
        let physical = cols[..n]
            .iter()
            .map(|c| c.parse::<f64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| parse_err(path, lineno, e.to_string()))?;
        let lattice = cols[n..n + k]
            .iter()
            .map(|c| c.parse::<i32>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| parse_err(path, lineno, e.to_string()))?;
        let occ_count: usize = cols[n + k]
            .parse()
            .map_err(|_| parse_err(path, lineno, "bad occupancy count"))?;
        let occupancy: Vec<bool> = cols[n + k + 1]
            .chars()
            .map(|c| match c {
                '1' => Ok(true),
                '0' => Ok(false),
                _ => Err(parse_err(path, lineno, "occupancy mask must be 0/1")),
            })
            .collect::<Result<_>>()?;
        if occupancy.len() != 2 * k || occupancy.iter().filter(|&&b| b).count() != occ_count {
            return Err(parse_err(path, lineno, "occupancy mask inconsistent"));
        }
        points.push(PackingPoint {
            lattice,
            physical,
            occupancy,
        });
    }
    if points.len() != count {
        return Err(parse_err(
            path,
            1,
            format!("header promises {count} points, file has {}", points.len()),
        ));
    }
    Ok(Packing {
        n,
        k,
        points,
        emb_fingerprint: fingerprint,
    })
}

pub fn from_json(text: &str, path: &Path) -> Result<Packing> {
    let file: PackingFile = serde_json::from_str(text).map_err(|e| Error::Parse {
        path: path.to_path_buf(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    if file.points.len() != file.point_count {
        return Err(parse_err(path, 1, "point_count does not match points"));
    }
    let points = file
        .points
        .into_iter()
        .map(|r| {
            if r.physical.len() != file.n || r.lattice.len() != file.k || r.occupancy.len() != 2 * file.k {
                return Err(parse_err(path, 1, "point record has wrong dimensions"));
            }
            Ok(PackingPoint {
                lattice: r.lattice,
                physical: r.physical,
                occupancy: r.occupancy,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Packing {
        n: file.n,
        k: file.k,
        points,
        emb_fingerprint: file.fingerprint,
    })
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;

    fn origin_only() -> Packing {
        let mut occupancy = vec![false; 20];
        occupancy[3] = true;
        occupancy[10] = true;
        Packing {
            n: 2,
            k: 10,
            points: vec![PackingPoint {
                lattice: vec![0; 10],
                physical: vec![0.0, 0.0],
                occupancy,
            }],
            emb_fingerprint: "00ff00ff00ff00ff".into(),
        }
    }

    #[test]
    fn origin_only_csv_row() {
        let csv = to_csv(&origin_only());
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "# n=2,k=10,points=1,fingerprint=00ff00ff00ff00ff");
        assert_eq!(
            lines[1],
            "x1,x2,l1,l2,l3,l4,l5,l6,l7,l8,l9,l10,occupancy,occupancy_mask"
        );
        assert_eq!(lines[2], "0,0,0,0,0,0,0,0,0,0,0,0,2,00010000001000000000");
        assert_eq!(lines.len(), 3);
    }

    #[test]
    fn files_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let p = origin_only();
        for (name, fmt) in [("p.csv", Format::Csv), ("p.json", Format::Json)] {
            let path = dir.path().join(name);
            export_packing(&p, &path, fmt).unwrap();
            assert_eq!(import_packing(&path).unwrap(), p);
        }
    }

    #[test]
    fn malformed_csv_is_rejected() {
        let path = Path::new("bad.csv");
        assert!(from_csv("", path).is_err());
        assert!(from_csv("n=1\n", path).is_err());
        let text = "# n=1,k=2,points=1,fingerprint=x\nx1,l1,l2,occupancy,occupancy_mask\n0.5,1,2,1,0110\n";
        match from_csv(text, path) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
    }

    proptest! {
        #[test]
        fn csv_is_lossless(
            rows in prop::collection::vec(
                (prop::collection::vec(any::<f64>().prop_filter("finite", |x| x.is_finite()), 3),
                 prop::collection::vec(-1000i32..1000, 4),
                 prop::collection::vec(any::<bool>(), 8)),
                0..20)
        ) {
            let p = Packing {
                n: 3,
                k: 4,
                points: rows
                    .into_iter()
                    .map(|(physical, lattice, occupancy)| PackingPoint { lattice, physical, occupancy })
                    .collect(),
                emb_fingerprint: "abc".into(),
            };
            let back = from_csv(&to_csv(&p), Path::new("x.csv")).unwrap();
            prop_assert_eq!(&back, &p);
            let back = from_json(&to_json(&p), Path::new("x.json")).unwrap();
            prop_assert_eq!(back, p);
        }
    }
}
