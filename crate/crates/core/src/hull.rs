//! Incremental 3D convex hull with conflict lists.
//!
//! A point conflicts with a facet when it lies strictly beyond the facet's
//! plane. Coplanar encounters during construction are tolerated; the finished
//! hull is then required to be simplicial and strictly convex, and every
//! non-hull point must lie strictly inside it. Anything else is reported as a
//! general-position violation.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::geom::{collinear, orient3d, Point3, Sign, VertexId};

/// Triangulated boundary of a convex polytope.
///
/// Facets are stored counterclockwise as seen from outside, so
/// `orient3d(f0, f1, f2, q) < 0` for every interior point `q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HullMesh {
    vertices: Vec<VertexId>,
    facets: Vec<[VertexId; 3]>,
    edge_facets: BTreeMap<(VertexId, VertexId), [usize; 2]>,
}

impl HullMesh {
    /// Builds a hull mesh from outward facets, checking that it is a closed
    /// triangulated sphere (each edge in two facets, consistent orientation,
    /// Euler characteristic 2).
    pub fn from_facets(facets: Vec<[VertexId; 3]>) -> Result<Self> {
        let mut facets: Vec<[VertexId; 3]> = facets.into_iter().map(canonical_facet).collect();
        facets.sort_unstable();
        let mut directed: HashMap<(VertexId, VertexId), usize> = HashMap::new();
        for (i, f) in facets.iter().enumerate() {
            for k in 0..3 {
                let e = (f[k], f[(k + 1) % 3]);
                if e.0 == e.1 || directed.insert(e, i).is_some() {
                    return Err(Error::Internal(format!("hull edge {e:?} used twice in one direction")));
                }
            }
        }
        let mut edge_facets = BTreeMap::new();
        for (&(a, b), &i) in &directed {
            let j = *directed
                .get(&(b, a))
                .ok_or_else(|| Error::Internal(format!("hull edge ({a}, {b}) has one facet")))?;
            if a < b {
                edge_facets.insert((a, b), [i, j]);
            }
        }
        let vertices: BTreeSet<VertexId> = facets.iter().flatten().copied().collect();
        let vertices: Vec<VertexId> = vertices.into_iter().collect();
        let (v, e, f) = (vertices.len() as i64, edge_facets.len() as i64, facets.len() as i64);
        if v - e + f != 2 {
            return Err(Error::Internal(format!("hull Euler check failed: V={v} E={e} F={f}")));
        }
        Ok(HullMesh {
            vertices,
            facets,
            edge_facets,
        })
    }

    /// Hull vertices in ascending order.
    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn facets(&self) -> &[[VertexId; 3]] {
        &self.facets
    }

    /// Undirected 1-skeleton edges `(a, b)` with `a < b`, ascending.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.edge_facets.keys().copied()
    }

    pub fn num_edges(&self) -> usize {
        self.edge_facets.len()
    }

    /// The two facets incident to edge `{a, b}`.
    pub fn edge_facets(&self, a: VertexId, b: VertexId) -> Option<[usize; 2]> {
        self.edge_facets.get(&(a.min(b), a.max(b))).copied()
    }

    /// Facets across the edges `(f0,f1)`, `(f1,f2)`, `(f2,f0)` of facet `i`.
    pub fn facet_neighbors(&self, i: usize) -> [usize; 3] {
        let f = self.facets[i];
        let across = |a: VertexId, b: VertexId| {
            let [x, y] = self.edge_facets(a, b).expect("facet edge is a hull edge");
            if x == i {
                y
            } else {
                x
            }
        };
        [across(f[0], f[1]), across(f[1], f[2]), across(f[2], f[0])]
    }

    /// Facet indices containing `v`, ascending.
    pub fn facets_around(&self, v: VertexId) -> Vec<usize> {
        (0..self.facets.len())
            .filter(|&i| self.facets[i].contains(&v))
            .collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edge_facets.len() as i64 + self.facets.len() as i64
    }
}

/// Rotates a facet so its smallest vertex comes first, keeping orientation.
pub(crate) fn canonical_facet(f: [VertexId; 3]) -> [VertexId; 3] {
    let k = (0..3).min_by_key(|&i| f[i]).unwrap();
    [f[k], f[(k + 1) % 3], f[(k + 2) % 3]]
}

/// Result of a hull computation: the boundary plus the point classification.
#[derive(Clone, Debug)]
pub struct Hull {
    pub mesh: HullMesh,
    pub exterior: Vec<VertexId>,
    pub interior: Vec<VertexId>,
}

struct Face {
    v: [VertexId; 3],
    alive: bool,
    conflicts: Vec<VertexId>,
}

fn beyond(points: &[Point3], f: &[VertexId; 3], q: VertexId) -> Sign {
    orient3d(&points[f[0]], &points[f[1]], &points[f[2]], &points[q])
}

/// Computes the convex hull of `points` and classifies each point as exterior
/// (a hull vertex) or interior (strictly inside).
pub fn convex_hull(points: &[Point3]) -> Result<Hull> {
    let n = points.len();
    if n < 4 {
        return Err(Error::TooFewPoints(n));
    }
    let [a, b, c, d] = initial_simplex(points)?;

    let mut faces: Vec<Face> = Vec::new();
    let mut point_conflicts: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut edge_map: HashMap<(VertexId, VertexId), usize> = HashMap::new();
    let mut done = vec![false; n];
    for v in [a, b, c, d] {
        done[v] = true;
    }

    let simplex = [[a, b, c], [a, b, d], [a, c, d], [b, c, d]];
    let opposite = [d, c, b, a];
    for (tri, opp) in simplex.iter().zip(opposite) {
        let mut f = *tri;
        if beyond(points, &f, opp) == Sign::Positive {
            f.swap(1, 2);
        }
        let id = faces.len();
        for k in 0..3 {
            edge_map.insert((f[k], f[(k + 1) % 3]), id);
        }
        faces.push(Face {
            v: f,
            alive: true,
            conflicts: Vec::new(),
        });
    }
    for q in (0..n).filter(|&q| !done[q]) {
        for (id, face) in faces.iter_mut().enumerate() {
            if beyond(points, &face.v, q) == Sign::Positive {
                face.conflicts.push(q);
                point_conflicts[q].push(id);
            }
        }
    }

    let mut candidate_stamp = vec![usize::MAX; n];
    for p in 0..n {
        if done[p] {
            continue;
        }
        done[p] = true;
        let visible: Vec<usize> = point_conflicts[p].iter().copied().filter(|&f| faces[f].alive).collect();
        point_conflicts[p] = Vec::new();
        if visible.is_empty() {
            continue;
        }
        let visible_set: BTreeSet<usize> = visible.iter().copied().collect();

        let mut horizon = Vec::new();
        for &f in &visible {
            let v = faces[f].v;
            for k in 0..3 {
                let (s, t) = (v[k], v[(k + 1) % 3]);
                let g = edge_map[&(t, s)];
                if !visible_set.contains(&g) {
                    horizon.push((s, t, f, g));
                }
            }
        }

        let mut created = Vec::with_capacity(horizon.len());
        for &(s, t, f, g) in &horizon {
            let nv = [s, t, p];
            let id = faces.len() + created.len();
            let mut conflicts = Vec::new();
            let stamp = id;
            for &q in faces[f].conflicts.iter().chain(faces[g].conflicts.iter()) {
                if done[q] || candidate_stamp[q] == stamp {
                    continue;
                }
                candidate_stamp[q] = stamp;
                if beyond(points, &nv, q) == Sign::Positive {
                    conflicts.push(q);
                    point_conflicts[q].push(id);
                }
            }
            created.push(Face {
                v: nv,
                alive: true,
                conflicts,
            });
        }
        for &f in &visible {
            let v = faces[f].v;
            for k in 0..3 {
                edge_map.remove(&(v[k], v[(k + 1) % 3]));
            }
            faces[f].alive = false;
            faces[f].conflicts = Vec::new();
        }
        for face in created {
            let id = faces.len();
            for k in 0..3 {
                edge_map.insert((face.v[k], face.v[(k + 1) % 3]), id);
            }
            faces.push(face);
        }
    }

    let facets: Vec<[VertexId; 3]> = faces.iter().filter(|f| f.alive).map(|f| f.v).collect();
    let mesh = HullMesh::from_facets(facets)?;
    check_strict_convexity(points, &mesh)?;

    let on_hull: BTreeSet<VertexId> = mesh.vertices().iter().copied().collect();
    let interior: Vec<VertexId> = (0..n).filter(|v| !on_hull.contains(v)).collect();
    for &q in &interior {
        for f in mesh.facets() {
            match beyond(points, f, q) {
                Sign::Negative => {}
                Sign::Zero => {
                    return Err(Error::GeneralPosition(format!(
                        "point {q} lies on the plane of hull facet {f:?}"
                    )))
                }
                Sign::Positive => return Err(Error::Internal(format!("point {q} lies outside hull facet {f:?}"))),
            }
        }
    }
    Ok(Hull {
        mesh,
        exterior: on_hull.into_iter().collect(),
        interior,
    })
}

fn initial_simplex(points: &[Point3]) -> Result<[VertexId; 4]> {
    let n = points.len();
    let a = 0;
    let b = (1..n)
        .find(|&i| points[i] != points[a])
        .ok_or_else(|| Error::GeneralPosition("all points coincide".into()))?;
    let c = (b + 1..n)
        .find(|&i| !collinear(&points[a], &points[b], &points[i]))
        .ok_or_else(|| Error::GeneralPosition("all points are collinear".into()))?;
    let d = (c + 1..n)
        .find(|&i| orient3d(&points[a], &points[b], &points[c], &points[i]) != Sign::Zero)
        .ok_or_else(|| Error::GeneralPosition("all points are coplanar".into()))?;
    Ok([a, b, c, d])
}

// Across every hull edge the far vertex of the neighbouring facet must lie
// strictly below the facet plane.
fn check_strict_convexity(points: &[Point3], mesh: &HullMesh) -> Result<()> {
    for (a, b) in mesh.edges() {
        let [i, j] = mesh.edge_facets(a, b).unwrap();
        let (fi, fj) = (mesh.facets()[i], mesh.facets()[j]);
        let far = fj.iter().copied().find(|v| !fi.contains(v)).unwrap();
        match beyond(points, &fi, far) {
            Sign::Negative => {}
            Sign::Zero => {
                return Err(Error::GeneralPosition(format!(
                    "hull facets {fi:?} and {fj:?} are coplanar"
                )))
            }
            Sign::Positive => return Err(Error::Internal(format!("hull is reflex at edge ({a}, {b})"))),
        }
    }
    Ok(())
}

/// Degree of every hull vertex in the 1-skeleton.
pub fn skeleton_degrees(h: &HullMesh) -> BTreeMap<VertexId, usize> {
    let mut deg: BTreeMap<VertexId, usize> = h.vertices().iter().map(|&v| (v, 0)).collect();
    for (a, b) in h.edges() {
        *deg.get_mut(&a).unwrap() += 1;
        *deg.get_mut(&b).unwrap() += 1;
    }
    deg
}
