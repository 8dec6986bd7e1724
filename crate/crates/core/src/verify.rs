//! Independent checks for meshes and certificates.
//!
//! Nothing here trusts the mesh's own face index: faces and adjacency are
//! recomputed from the live tetrahedra.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use crate::geom::{
    det_sign, exact_sum, orient3d_value, tetra_contains, tetra_volume6, Containment, Point3, Sign, Tetra, VertexId,
    VertexStore,
};
use crate::hull::convex_hull;
use crate::mesh::{Origin, TetId, TetMesh};
use crate::pipeline::{CertKind, HamCertificate};

/// Outcome of [`verify_mesh`] (and optionally [`verify_certificate`]).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub orientation_ok: bool,
    pub face_consistency_ok: bool,
    pub volume_ok: bool,
    pub containment_ok: bool,
    /// `None` when no certificate was checked.
    pub certificate_ok: Option<bool>,
    /// `None` when the pairwise oracle was not run.
    pub pairwise_ok: Option<bool>,
    pub tets: usize,
    pub steiner_points: usize,
    pub boundary_faces: usize,
    pub first_failure: Option<String>,
}

impl VerifyReport {
    pub fn all_ok(&self) -> bool {
        self.orientation_ok
            && self.face_consistency_ok
            && self.volume_ok
            && self.containment_ok
            && self.certificate_ok != Some(false)
            && self.pairwise_ok != Some(false)
    }

    fn fail(&mut self, msg: String) {
        if self.first_failure.is_none() {
            self.first_failure = Some(msg);
        }
    }

    pub fn with_certificate(mut self, check: &CertificateCheck) -> Self {
        self.certificate_ok = Some(check.ok());
        if let Some((i, msg)) = &check.violation {
            self.fail(format!("certificate position {i}: {msg}"));
        }
        self
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let opt = |b: Option<bool>| b.map_or("skipped".to_string(), |b| b.to_string());
        writeln!(f, "all_ok: {}", self.all_ok())?;
        writeln!(f, "orientation_ok: {}", self.orientation_ok)?;
        writeln!(f, "face_consistency_ok: {}", self.face_consistency_ok)?;
        writeln!(f, "volume_ok: {}", self.volume_ok)?;
        writeln!(f, "containment_ok: {}", self.containment_ok)?;
        writeln!(f, "certificate_ok: {}", opt(self.certificate_ok))?;
        writeln!(f, "pairwise_ok: {}", opt(self.pairwise_ok))?;
        writeln!(f, "tets: {}", self.tets)?;
        writeln!(f, "steiner_points: {}", self.steiner_points)?;
        writeln!(f, "boundary_faces: {}", self.boundary_faces)?;
        writeln!(f, "first_failure: {}", self.first_failure.as_deref().unwrap_or("none"))
    }
}

fn sorted3(mut f: [VertexId; 3]) -> [VertexId; 3] {
    f.sort_unstable();
    f
}

struct Bbox {
    lo: [f64; 3],
    hi: [f64; 3],
}

impl Bbox {
    fn of<S: VertexStore + ?Sized>(t: &Tetra, store: &S) -> Bbox {
        let mut lo = [f64::INFINITY; 3];
        let mut hi = [f64::NEG_INFINITY; 3];
        for &v in &t.0 {
            let a = store.point(v).approx();
            for k in 0..3 {
                lo[k] = lo[k].min(a[k]);
                hi[k] = hi[k].max(a[k]);
            }
        }
        // Widen so that rounding in the approximations can never exclude a true hit.
        for k in 0..3 {
            let slack = 1e-9 * (1.0 + lo[k].abs().max(hi[k].abs()));
            lo[k] -= slack;
            hi[k] += slack;
        }
        Bbox { lo, hi }
    }

    fn contains(&self, p: [f64; 3]) -> bool {
        (0..3).all(|k| self.lo[k] <= p[k] && p[k] <= self.hi[k])
    }

    fn overlaps(&self, o: &Bbox) -> bool {
        (0..3).all(|k| self.lo[k] <= o.hi[k] && o.lo[k] <= self.hi[k])
    }
}

/// Checks that `mesh` tetrahedralizes the convex hull of `points`: positive
/// orientation, faces shared by at most two tetrahedra with the boundary faces
/// equal to the hull facets, exact volume equal to the hull volume, and no
/// vertex strictly inside a tetrahedron. Every input point must be a vertex.
pub fn verify_mesh(points: &[Point3], mesh: &TetMesh) -> VerifyReport {
    let mut r = VerifyReport {
        orientation_ok: true,
        face_consistency_ok: true,
        volume_ok: true,
        containment_ok: true,
        steiner_points: mesh.steiner_count(),
        ..Default::default()
    };
    let tets: Vec<(TetId, Tetra)> = mesh.live().map(|(id, t)| (id, *t)).collect();
    r.tets = tets.len();

    for (id, t) in &tets {
        let distinct: BTreeSet<VertexId> = t.0.iter().copied().collect();
        if distinct.len() != 4 || t.orientation(mesh) != Sign::Positive {
            r.orientation_ok = false;
            r.fail(format!("tetrahedron {id} is not positively oriented"));
        }
    }

    let mut face_count: BTreeMap<[VertexId; 3], usize> = BTreeMap::new();
    for (_, t) in &tets {
        for f in t.faces() {
            *face_count.entry(f).or_default() += 1;
        }
    }
    if let Some((f, c)) = face_count.iter().find(|(_, &c)| c > 2) {
        r.face_consistency_ok = false;
        r.fail(format!("face {f:?} is shared by {c} tetrahedra"));
    }
    let boundary: BTreeSet<[VertexId; 3]> = face_count.iter().filter(|(_, &c)| c == 1).map(|(f, _)| *f).collect();
    r.boundary_faces = boundary.len();

    let mut by_coords: HashMap<&Point3, VertexId> = HashMap::new();
    for (v, mv) in mesh.vertices().iter().enumerate() {
        if mv.origin != Origin::Steiner {
            by_coords.entry(&mv.point).or_insert(v);
        }
    }
    let used: BTreeSet<VertexId> = tets.iter().flat_map(|(_, t)| t.0).collect();
    for (i, p) in points.iter().enumerate() {
        match by_coords.get(p) {
            Some(v) if used.contains(v) => {}
            _ => {
                r.containment_ok = false;
                r.fail(format!("input point {i} is not a vertex of the mesh"));
            }
        }
    }

    match convex_hull(points) {
        Err(e) => {
            r.face_consistency_ok = false;
            r.volume_ok = false;
            r.fail(format!("hull of the input failed: {e}"));
        }
        Ok(hull) => {
            let mut expected = BTreeSet::new();
            let mut mapped = true;
            for f in hull.mesh.facets() {
                match (
                    by_coords.get(&points[f[0]]),
                    by_coords.get(&points[f[1]]),
                    by_coords.get(&points[f[2]]),
                ) {
                    (Some(&a), Some(&b), Some(&c)) => {
                        expected.insert(sorted3([a, b, c]));
                    }
                    _ => mapped = false,
                }
            }
            if !mapped || expected != boundary {
                r.face_consistency_ok = false;
                let extra = boundary.difference(&expected).next();
                let missing = expected.difference(&boundary).next();
                r.fail(format!(
                    "boundary faces differ from hull facets (extra {extra:?}, missing {missing:?})"
                ));
            }
            let f0 = hull.mesh.facets()[0][0];
            let apex = &points[f0];
            let hull_vol = -exact_sum(
                hull.mesh
                    .facets()
                    .iter()
                    .map(|f| orient3d_value(&points[f[0]], &points[f[1]], &points[f[2]], apex)),
            );
            let vol = exact_sum(tets.iter().map(|(_, t)| tetra_volume6(t, mesh)));
            if vol != hull_vol {
                r.volume_ok = false;
                r.fail(format!(
                    "tetrahedra volume {vol} differs from hull volume {hull_vol} (times 6)"
                ));
            }
        }
    }

    'outer: for (id, t) in &tets {
        let bb = Bbox::of(t, mesh);
        for v in &used {
            if t.contains_vertex(*v) || !bb.contains(mesh.point(*v).approx()) {
                continue;
            }
            if tetra_contains(t, mesh.point(*v), mesh) == Containment::Interior {
                r.containment_ok = false;
                r.fail(format!("vertex {v} lies inside tetrahedron {id}"));
                break 'outer;
            }
        }
    }
    r
}

/// Result of [`verify_certificate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateCheck {
    /// Position in the certificate and a description of the first problem.
    pub violation: Option<(usize, String)>,
}

impl CertificateCheck {
    pub fn ok(&self) -> bool {
        self.violation.is_none()
    }
}

fn share_face(a: &Tetra, b: &Tetra) -> bool {
    a.0.iter().filter(|v| b.contains_vertex(**v)).count() == 3
}

/// Checks that `cert` visits every live tetrahedron once and that consecutive
/// entries (and last/first for cycles) share a face.
pub fn verify_certificate(mesh: &TetMesh, cert: &HamCertificate) -> CertificateCheck {
    let fail = |i: usize, msg: String| CertificateCheck {
        violation: Some((i, msg)),
    };
    let mut seen = BTreeSet::new();
    for (i, id) in cert.order.iter().enumerate() {
        if !mesh.is_live(*id) {
            return fail(i, format!("tetrahedron {id} is not live"));
        }
        if !seen.insert(*id) {
            return fail(i, format!("tetrahedron {id} appears twice"));
        }
    }
    if seen.len() != mesh.num_live() {
        return fail(
            cert.order.len(),
            format!("certificate has {} of {} tetrahedra", seen.len(), mesh.num_live()),
        );
    }
    let n = cert.order.len();
    let links = match cert.kind {
        CertKind::Path => n.saturating_sub(1),
        CertKind::Cycle => {
            if n < 3 {
                return fail(0, format!("a cycle needs at least 3 tetrahedra, got {n}"));
            }
            n
        }
    };
    for i in 0..links {
        let (a, b) = (cert.order[i], cert.order[(i + 1) % n]);
        if !share_face(mesh.tet(a).unwrap(), mesh.tet(b).unwrap()) {
            return fail(i, format!("tetrahedra {a} and {b} do not share a face"));
        }
    }
    CertificateCheck { violation: None }
}

const EDGES: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Whether the interiors of two tetrahedra are disjoint, by the separating axis
/// theorem over face normals and edge-edge cross products. An axis `n`
/// separates when `n · (q - p)` has the same weak sign for every corner `p` of
/// `a` and `q` of `b`.
pub fn interiors_disjoint<S: VertexStore + ?Sized>(a: &Tetra, b: &Tetra, store: &S) -> bool {
    let ids = [a.0, b.0];
    let pt = |t: usize, k: usize| store.point(ids[t][k]);
    let edge = |t: usize, e: usize| (pt(t, EDGES[e].0), pt(t, EDGES[e].1));
    let edge_ids = |t: usize, e: usize| [ids[t][EDGES[e].0], ids[t][EDGES[e].1]];
    let mut axes: Vec<(usize, usize, usize, usize)> = vec![];
    // Edge pairs (01,02), (01,03), (02,03), (12,13) span the four faces.
    for t in 0..2 {
        for (i, j) in [(0, 1), (0, 2), (1, 2), (3, 4)] {
            axes.push((t, i, t, j));
        }
    }
    for i in 0..6 {
        for j in 0..6 {
            axes.push((0, i, 1, j));
        }
    }
    axes.into_iter().any(|(t1, e1, t2, e2)| {
        let (x, y) = (edge(t1, e1), edge(t2, e2));
        let (xi, yi) = (edge_ids(t1, e1), edge_ids(t2, e2));
        let mut pos = false;
        let mut neg = false;
        for i in 0..4 {
            for j in 0..4 {
                // Differences among at most three distinct points span a plane at most.
                let mut span = [xi[0], xi[1], yi[0], yi[1], ids[0][i], ids[1][j]];
                span.sort_unstable();
                if span.windows(2).filter(|w| w[0] != w[1]).count() < 3 {
                    continue;
                }
                match det_sign(x, y, (pt(0, i), pt(1, j))) {
                    Sign::Positive => pos = true,
                    Sign::Negative => neg = true,
                    Sign::Zero => {}
                }
                if pos && neg {
                    return false;
                }
            }
        }
        // Parallel edges give a zero axis: all signs vanish and nothing is proved.
        pos || neg
    })
}

/// Pairwise interior-disjointness over all live tetrahedra; returns the first
/// overlapping pair. Quadratic, meant for small meshes.
pub fn pairwise_overlap(mesh: &TetMesh) -> Option<(TetId, TetId)> {
    let tets: Vec<(TetId, Tetra, Bbox)> = mesh.live().map(|(id, t)| (id, *t, Bbox::of(t, mesh))).collect();
    for i in 0..tets.len() {
        for j in i + 1..tets.len() {
            let (ia, ta, ba) = &tets[i];
            let (ib, tb, bb) = &tets[j];
            if ba.overlaps(bb) && !interiors_disjoint(ta, tb, mesh) {
                return Some((*ia, *ib));
            }
        }
    }
    None
}

/// [`verify_mesh`] plus the pairwise oracle.
pub fn verify_mesh_with_oracle(points: &[Point3], mesh: &TetMesh) -> VerifyReport {
    let mut r = verify_mesh(points, mesh);
    let overlap = pairwise_overlap(mesh);
    r.pairwise_ok = Some(overlap.is_none());
    if let Some((a, b)) = overlap {
        r.fail(format!("tetrahedra {a} and {b} overlap"));
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit() -> (Vec<Point3>, TetMesh) {
        let pts = vec![
            Point3::from_ints(0, 0, 0),
            Point3::from_ints(1, 0, 0),
            Point3::from_ints(0, 1, 0),
            Point3::from_ints(0, 0, 1),
        ];
        let mut m = TetMesh::new();
        for p in &pts {
            m.add_vertex(p.clone(), Origin::Exterior);
        }
        m.insert(Tetra([0, 1, 2, 3])).unwrap();
        (pts, m)
    }

    #[test]
    fn single_tet_is_valid() {
        let (pts, m) = unit();
        let cert = HamCertificate {
            order: vec![TetId(0)],
            kind: CertKind::Path,
        };
        let r = verify_mesh_with_oracle(&pts, &m).with_certificate(&verify_certificate(&m, &cert));
        assert!(r.all_ok(), "{r}");
        assert_eq!(r.boundary_faces, 4);
    }

    #[test]
    fn negative_tet_is_flagged() {
        let (pts, _) = unit();
        let mut m = TetMesh::new();
        for p in &pts {
            m.add_vertex(p.clone(), Origin::Exterior);
        }
        m.insert_oriented(Tetra([1, 0, 2, 3])).unwrap();
        let r = verify_mesh(&pts, &m);
        assert!(!r.orientation_ok);
        assert!(!r.all_ok());
    }

    #[test]
    fn overlapping_tets_are_flagged_by_both_checks() {
        // Two tetrahedra on the same base with apexes on the same side.
        let pts = vec![
            Point3::from_ints(0, 0, 0),
            Point3::from_ints(4, 0, 0),
            Point3::from_ints(0, 4, 0),
            Point3::from_ints(0, 0, 4),
            Point3::from_ints(1, 1, 1),
        ];
        let mut m = TetMesh::new();
        for p in &pts {
            m.add_vertex(p.clone(), Origin::Exterior);
        }
        m.insert(Tetra([0, 1, 2, 3])).unwrap();
        m.insert(Tetra([0, 1, 2, 4])).unwrap();
        let r = verify_mesh_with_oracle(&pts, &m);
        assert!(!r.all_ok());
        assert_eq!(r.pairwise_ok, Some(false));
        assert!(!r.face_consistency_ok || !r.volume_ok || !r.containment_ok);
    }

    #[test]
    fn swapped_certificate_reports_position() {
        let pts = vec![
            Point3::from_ints(0, 0, 0),
            Point3::from_ints(1, 0, 0),
            Point3::from_ints(0, 1, 0),
            Point3::from_ints(0, 0, 1),
            Point3::from_ratios((1, 5), (1, 5), (1, 5)),
        ];
        let mut m = TetMesh::new();
        for p in &pts {
            m.add_vertex(p.clone(), Origin::Exterior);
        }
        let ids: Vec<TetId> = (0..4)
            .map(|k| {
                let mut v = [0, 1, 2, 3];
                v[k] = 4;
                m.insert(Tetra(v)).unwrap()
            })
            .collect();
        let cert = HamCertificate {
            order: ids.clone(),
            kind: CertKind::Cycle,
        };
        assert!(verify_certificate(&m, &cert).ok());
        let dup = HamCertificate {
            order: vec![ids[0], ids[1], ids[1], ids[3]],
            kind: CertKind::Cycle,
        };
        assert_eq!(verify_certificate(&m, &dup).violation.unwrap().0, 2);
    }
}
