//! Text formats: point lists (plain or OFF) and meshes with their certificate
//! and statistics.
//!
//! Mesh files are sectioned:
//!
//! ```text
//! [vertices]
//! 0 1 0 0 exterior
//! [tets]
//! 0 0 1 2 3
//! [ham]
//! path 0
//! [stats]
//! m 4
//! ```

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::geom::{format_rational, parse_rational, Point3, Tetra};
use crate::mesh::{MeshVertex, Origin, TetId, TetMesh};
use crate::pipeline::{CertKind, HamCertificate, Stats};

/// Yields `(line number, content)` for lines that are not blank or `#` comments.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
}

fn parse_point(line: usize, fields: &[&str]) -> Result<Point3> {
    if fields.len() != 3 {
        return Err(Error::parse(
            line,
            format!("expected 3 coordinates, found {}", fields.len()),
        ));
    }
    let c: Vec<_> = fields
        .iter()
        .map(|f| parse_rational(f).map_err(|m| Error::parse(line, m)))
        .collect::<Result<_>>()?;
    let [x, y, z]: [_; 3] = c.try_into().unwrap();
    Ok(Point3::new(x, y, z))
}

fn parse_count(line: usize, s: &str, what: &str) -> Result<usize> {
    s.parse().map_err(|_| Error::parse(line, format!("bad {what} {s:?}")))
}

/// Parses a point list: a count `n`, then `n` lines `x y z`. Files starting
/// with `OFF` are read as OFF, ignoring the face list.
pub fn parse_points(text: &str) -> Result<Vec<Point3>> {
    let mut lines = content_lines(text);
    let Some((first_line, first)) = lines.next() else {
        return Err(Error::parse(1, "empty file"));
    };
    let (n, count_line) = if let Some(rest) = first.strip_prefix("OFF") {
        let rest = rest.trim();
        let (line, header) = if rest.is_empty() {
            lines
                .next()
                .ok_or_else(|| Error::parse(first_line, "missing OFF counts"))?
        } else {
            (first_line, rest)
        };
        let counts: Vec<&str> = header.split_whitespace().collect();
        if counts.len() < 2 {
            return Err(Error::parse(line, "expected vertex and face counts"));
        }
        (parse_count(line, counts[0], "vertex count")?, line)
    } else {
        let fields: Vec<&str> = first.split_whitespace().collect();
        if fields.len() != 1 {
            return Err(Error::parse(first_line, "expected the point count"));
        }
        (parse_count(first_line, fields[0], "point count")?, first_line)
    };
    let mut points = Vec::with_capacity(n);
    for _ in 0..n {
        let (line, l) = lines
            .next()
            .ok_or_else(|| Error::parse(count_line, format!("expected {n} points, found {}", points.len())))?;
        let fields: Vec<&str> = l.split_whitespace().collect();
        points.push(parse_point(line, &fields)?);
    }
    if !first.starts_with("OFF") {
        if let Some((line, _)) = lines.next() {
            return Err(Error::parse(line, format!("more than {n} points")));
        }
    }
    Ok(points)
}

pub fn write_points(points: &[Point3]) -> String {
    let mut out = format!("{}\n", points.len());
    for p in points {
        let [x, y, z] = p.coords();
        writeln!(
            out,
            "{} {} {}",
            format_rational(x),
            format_rational(y),
            format_rational(z)
        )
        .unwrap();
    }
    out
}

/// A parsed mesh file.
#[derive(Clone, Debug)]
pub struct MeshFile {
    pub mesh: TetMesh,
    pub certificate: Option<HamCertificate>,
    pub stats: Option<Stats>,
}

const STAT_KEYS: [&str; 8] = [
    "m",
    "m_prime",
    "m_hat",
    "peels",
    "initial_cycles",
    "short_cycles",
    "joins",
    "steiner_count",
];

fn stat_fields(s: &Stats) -> [usize; 8] {
    [
        s.m,
        s.m_prime,
        s.m_hat,
        s.peels,
        s.initial_cycles,
        s.short_cycles,
        s.joins,
        s.steiner_count,
    ]
}

pub fn write_mesh(mesh: &TetMesh, certificate: Option<&HamCertificate>, stats: Option<&Stats>) -> String {
    let mut out = String::from("[vertices]\n");
    for (i, v) in mesh.vertices().iter().enumerate() {
        let [x, y, z] = v.point.coords();
        writeln!(
            out,
            "{i} {} {} {} {}",
            format_rational(x),
            format_rational(y),
            format_rational(z),
            v.origin.as_str()
        )
        .unwrap();
    }
    out.push_str("[tets]\n");
    for (id, t) in mesh.live() {
        writeln!(out, "{} {} {} {} {}", id.0, t.0[0], t.0[1], t.0[2], t.0[3]).unwrap();
    }
    if let Some(c) = certificate {
        out.push_str("[ham]\n");
        out.push_str(c.kind.as_str());
        for t in &c.order {
            write!(out, " {}", t.0).unwrap();
        }
        out.push('\n');
    }
    if let Some(s) = stats {
        out.push_str("[stats]\n");
        for (k, v) in STAT_KEYS.iter().zip(stat_fields(s)) {
            writeln!(out, "{k} {v}").unwrap();
        }
    }
    out
}

fn parse_ids(line: usize, fields: &[&str]) -> Result<Vec<usize>> {
    fields.iter().map(|f| parse_count(line, f, "id")).collect()
}

pub fn parse_mesh(text: &str) -> Result<MeshFile> {
    let mut section = "";
    let mut vertices: Vec<MeshVertex> = vec![];
    let mut tets: Vec<(TetId, Tetra)> = vec![];
    let mut certificate = None;
    let mut stats: Option<Stats> = None;
    for (line, l) in content_lines(text) {
        if l.starts_with('[') {
            section = match l {
                "[vertices]" | "[tets]" | "[ham]" | "[stats]" => l,
                _ => return Err(Error::parse(line, format!("unknown section {l}"))),
            };
            if section == "[stats]" {
                stats = Some(Stats::default());
            }
            continue;
        }
        let fields: Vec<&str> = l.split_whitespace().collect();
        match section {
            "[vertices]" => {
                if fields.len() != 5 {
                    return Err(Error::parse(line, "expected `id x y z origin`"));
                }
                if parse_count(line, fields[0], "vertex id")? != vertices.len() {
                    return Err(Error::parse(line, "vertex ids must be consecutive from 0"));
                }
                let point = parse_point(line, &fields[1..4])?;
                let origin = Origin::parse(fields[4])
                    .ok_or_else(|| Error::parse(line, format!("bad origin {:?}", fields[4])))?;
                vertices.push(MeshVertex { point, origin });
            }
            "[tets]" => {
                if fields.len() != 5 {
                    return Err(Error::parse(line, "expected `id v0 v1 v2 v3`"));
                }
                let ids = parse_ids(line, &fields)?;
                tets.push((TetId(ids[0]), Tetra([ids[1], ids[2], ids[3], ids[4]])));
            }
            "[ham]" => {
                if certificate.is_some() {
                    return Err(Error::parse(line, "more than one certificate line"));
                }
                let kind = CertKind::parse(fields[0])
                    .ok_or_else(|| Error::parse(line, format!("bad certificate kind {:?}", fields[0])))?;
                let order = parse_ids(line, &fields[1..])?.into_iter().map(TetId).collect();
                certificate = Some(HamCertificate { order, kind });
            }
            "[stats]" => {
                let s = stats.as_mut().unwrap();
                if fields.len() != 2 {
                    return Err(Error::parse(line, "expected `key value`"));
                }
                let v = parse_count(line, fields[1], "statistic")?;
                let slot = match fields[0] {
                    "m" => &mut s.m,
                    "m_prime" => &mut s.m_prime,
                    "m_hat" => &mut s.m_hat,
                    "peels" => &mut s.peels,
                    "initial_cycles" => &mut s.initial_cycles,
                    "short_cycles" => &mut s.short_cycles,
                    "joins" => &mut s.joins,
                    "steiner_count" => &mut s.steiner_count,
                    k => return Err(Error::parse(line, format!("unknown statistic {k:?}"))),
                };
                *slot = v;
            }
            _ => return Err(Error::parse(line, "content before the first section")),
        }
    }
    let mesh = TetMesh::from_parts(vertices, tets)?;
    Ok(MeshFile {
        mesh,
        certificate,
        stats,
    })
}
