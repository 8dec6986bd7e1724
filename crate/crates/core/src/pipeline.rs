//! Hamiltonian tetrahedralization with few Steiner points.
//!
//! The hull of the exterior points is peeled of degree-3 vertices, the reduced
//! hull is fanned from an interior center, a perfect matching of the fan's
//! cubic dual splits the tetrahedra into cycles, and cycles are merged by
//! join operations that each add one Steiner point. Peeled vertices and then
//! interior points are reinserted one at a time, each time splicing the new
//! tetrahedra into the Hamiltonian cycle.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::geom::{
    centroid_of, exact_sum, orient3d, tetra_contains, tetra_volume6, Containment, Point3, Sign, Tetra, VertexId,
    VertexStore,
};
use crate::graph::dual_of_mesh;
use crate::hull::{canonical_facet, convex_hull, HullMesh};
use crate::matching::perfect_matching;
use crate::mesh::{Origin, TetId, TetMesh};

/// Whether a certificate closes up into a cycle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CertKind {
    Cycle,
    Path,
}

impl CertKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CertKind::Cycle => "cycle",
            CertKind::Path => "path",
        }
    }

    pub fn parse(s: &str) -> Option<CertKind> {
        match s {
            "cycle" => Some(CertKind::Cycle),
            "path" => Some(CertKind::Path),
            _ => None,
        }
    }
}

/// An ordering of the live tetrahedra in which consecutive entries share a face.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HamCertificate {
    pub order: Vec<TetId>,
    pub kind: CertKind,
}

impl HamCertificate {
    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }
}

/// One degree-3 peel: the removed vertex and the outward facet that replaced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Peel {
    pub vertex: VertexId,
    pub face: [VertexId; 3],
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PeelRecord {
    /// In peel order; reinsertion walks this backwards.
    pub peels: Vec<Peel>,
    pub interior: Vec<VertexId>,
}

/// Removes degree-3 vertices (smallest id first) until none is left or the
/// hull is a tetrahedron.
pub fn peel_degree3(h: &HullMesh) -> Result<(HullMesh, PeelRecord)> {
    let mut around: BTreeMap<VertexId, BTreeSet<[VertexId; 3]>> = BTreeMap::new();
    for f in h.facets() {
        for &v in f {
            around.entry(v).or_default().insert(*f);
        }
    }
    let mut queue: BTreeSet<VertexId> = around.iter().filter(|(_, s)| s.len() == 3).map(|(&v, _)| v).collect();
    let mut rec = PeelRecord::default();
    while around.len() > 4 {
        let Some(x) = queue.pop_first() else { break };
        let facets = around.remove(&x).unwrap();
        debug_assert_eq!(facets.len(), 3);
        let mut next = BTreeMap::new();
        for f in &facets {
            let k = f.iter().position(|&v| v == x).unwrap();
            next.insert(f[(k + 1) % 3], f[(k + 2) % 3]);
        }
        let a = *next.keys().next().unwrap();
        let b = next[&a];
        let c = next[&b];
        if next.get(&c) != Some(&a) {
            return Err(Error::Internal(format!("link of hull vertex {x} is not a triangle")));
        }
        let face = canonical_facet([a, b, c]);
        for f in &facets {
            for v in f.iter().filter(|&&v| v != x) {
                around.get_mut(v).unwrap().remove(f);
            }
        }
        for v in face {
            let s = around.get_mut(&v).unwrap();
            s.insert(face);
            if s.len() == 3 {
                queue.insert(v);
            } else {
                queue.remove(&v);
            }
        }
        rec.peels.push(Peel { vertex: x, face });
    }
    let facets: BTreeSet<[VertexId; 3]> = around.values().flatten().copied().collect();
    Ok((HullMesh::from_facets(facets.into_iter().collect())?, rec))
}

fn guard_ok<S: VertexStore + ?Sized>(
    store: &S,
    p: &Point3,
    planes: &[(VertexId, VertexId)],
    guard: &[VertexId],
) -> bool {
    guard.iter().all(|&g| {
        let q = store.point(g);
        q != p
            && planes
                .iter()
                .all(|&(u, v)| orient3d(p, store.point(u), store.point(v), q) != Sign::Zero)
    })
}

/// Candidate points near `p`: `p` itself first if its coordinates are short,
/// then dyadic roundings of growing precision, then `p`. Short coordinates
/// keep the later exact arithmetic cheap.
fn simple_candidates(p: &Point3) -> Vec<Point3> {
    let short = p
        .coords()
        .iter()
        .all(|c| c.numer().bits() <= 64 && c.denom().bits() <= 64);
    let rounded = (3..14).map(|k| {
        let scale = ((4 * k) as f64).exp2();
        let a = p.approx();
        let c = |x: f64| BigRational::from_float((x * scale).round() / scale).unwrap_or_else(BigRational::zero);
        Point3::new(c(a[0]), c(a[1]), c(a[2]))
    });
    short
        .then(|| p.clone())
        .into_iter()
        .chain(rounded)
        .chain((!short).then(|| p.clone()))
        .collect()
}

/// A point strictly inside the hull, off every facet plane, and off every
/// plane through itself and a hull edge that contains a `guard` point.
pub fn place_center<S: VertexStore + ?Sized>(h: &HullMesh, store: &S, guard: &[VertexId]) -> Result<Point3> {
    let mut approx = [0.0f64; 3];
    for &v in h.vertices() {
        let a = store.point(v).approx();
        (0..3).for_each(|k| approx[k] += a[k] / h.num_vertices() as f64);
    }
    let edges: Vec<(VertexId, VertexId)> = h.edges().collect();
    let ok = |p: &Point3| {
        h.facets()
            .iter()
            .all(|f| orient3d(store.point(f[0]), store.point(f[1]), store.point(f[2]), p) == Sign::Negative)
            && guard_ok(store, p, &edges, guard)
    };
    let near = Point3::new(
        BigRational::from_float(approx[0]).unwrap_or_else(BigRational::zero),
        BigRational::from_float(approx[1]).unwrap_or_else(BigRational::zero),
        BigRational::from_float(approx[2]).unwrap_or_else(BigRational::zero),
    );
    // The exact centroid is only needed when none of its short neighbours qualify;
    // for many vertices with unrelated denominators it is expensive.
    if let Some(p) = simple_candidates(&near).into_iter().find(|p| ok(p)) {
        return Ok(p);
    }
    let c = centroid_of(h.vertices().iter().map(|&v| store.point(v)))?;
    if ok(&c) {
        return Ok(c);
    }
    // Moving toward a hull vertex stays on a line through it, which can be
    // coplanar with a guard point and every edge at that vertex; unevenly
    // weighted facet points avoid that.
    let mut targets: Vec<Point3> = h.vertices().iter().take(8).map(|&v| store.point(v).clone()).collect();
    for f in h.facets().iter().take(8) {
        let [a, b, c] = f.map(|v| store.point(v));
        targets.push(centroid_of([a, b, b, c, c, c, c])?);
    }
    let mut t = BigRational::new(1.into(), 8.into());
    for _ in 0..64 {
        for target in &targets {
            let p = c.lerp(target, &t);
            if let Some(p) = simple_candidates(&p).into_iter().find(|p| ok(p)) {
                return Ok(p);
            }
        }
        t /= BigRational::from_integer(2.into());
    }
    Err(Error::GeneralPosition("no admissible center point found".into()))
}

/// One tetrahedron per hull facet, joined to `center`.
pub fn fan_tetrahedralize(h: &HullMesh, mesh: &mut TetMesh, center: VertexId) -> Result<Vec<TetId>> {
    h.facets()
        .iter()
        .map(|f| mesh.insert(Tetra([f[0], f[1], f[2], center])))
        .collect()
}

/// A partition of the live tetrahedra into dual cycles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleState {
    cycles: Vec<Vec<TetId>>,
}

impl CycleState {
    pub fn new(cycles: Vec<Vec<TetId>>) -> Self {
        CycleState { cycles }
    }

    pub fn cycles(&self) -> &[Vec<TetId>] {
        &self.cycles
    }

    pub fn num_cycles(&self) -> usize {
        self.cycles.len()
    }

    pub fn membership(&self) -> BTreeMap<TetId, usize> {
        let mut m = BTreeMap::new();
        for (i, c) in self.cycles.iter().enumerate() {
            for &t in c {
                m.insert(t, i);
            }
        }
        m
    }

    /// Checks disjointness, coverage of the live tetrahedra, and adjacency
    /// along every cycle.
    pub fn validate(&self, mesh: &TetMesh) -> Result<()> {
        let m = self.membership();
        let total: usize = self.cycles.iter().map(Vec::len).sum();
        if m.len() != total || total != mesh.num_live() || m.keys().any(|&t| !mesh.is_live(t)) {
            return Err(Error::Internal("cycles do not partition the live tetrahedra".into()));
        }
        for c in &self.cycles {
            for i in 0..c.len() {
                let (a, b) = (c[i], c[(i + 1) % c.len()]);
                if c.len() > 1 && !mesh.adjacent(a, b) {
                    return Err(Error::Internal(format!("cycle link {a}-{b} is not a shared face")));
                }
            }
        }
        Ok(())
    }
}

/// Cycles left after removing a perfect matching from the (cubic) dual graph.
pub fn initial_cycle_partition(mesh: &TetMesh) -> Result<CycleState> {
    let dual = dual_of_mesh(mesh)?;
    let g = dual.graph();
    g.check_cubic()?;
    let matching = perfect_matching(g)?;
    let n = g.num_vertices();
    let rest: Vec<Vec<usize>> = (0..n)
        .map(|v| {
            let mut l: Vec<usize> = g
                .neighbors(v)
                .iter()
                .copied()
                .filter(|&w| !matching.contains(v, w))
                .collect();
            l.sort_unstable();
            l
        })
        .collect();
    let mut seen = vec![false; n];
    let mut cycles = vec![];
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut cycle = vec![dual.nodes()[s]];
        seen[s] = true;
        let (mut prev, mut cur) = (s, rest[s][0]);
        while cur != s {
            seen[cur] = true;
            cycle.push(dual.nodes()[cur]);
            let nxt = if rest[cur][0] == prev {
                rest[cur][1]
            } else {
                rest[cur][0]
            };
            prev = cur;
            cur = nxt;
        }
        cycles.push(cycle);
    }
    Ok(CycleState { cycles })
}

fn check_positive(mesh: &TetMesh, t: &Tetra, p: &Point3, slot: usize) -> bool {
    let mut pts = [
        mesh.point(t.0[0]),
        mesh.point(t.0[1]),
        mesh.point(t.0[2]),
        mesh.point(t.0[3]),
    ];
    pts[slot] = p;
    orient3d(pts[0], pts[1], pts[2], pts[3]) == Sign::Positive
}

/// Steiner point for joining `tau1` and `tau2` across their shared face: on the
/// segment from the face centroid toward the apex of `tau1`, close enough to the
/// face that the six replacement tetrahedra are positively oriented.
pub fn place_steiner(mesh: &TetMesh, tau1: TetId, tau2: TetId, guard: &[VertexId]) -> Result<Point3> {
    let face = mesh
        .shared_face(tau1, tau2)
        .ok_or_else(|| Error::Internal(format!("tetrahedra {tau1} and {tau2} share no face")))?;
    let t1 = *mesh.tet(tau1).unwrap();
    let t2 = *mesh.tet(tau2).unwrap();
    let a = t1.apex(&face).unwrap();
    let q = t2.apex(&face).unwrap();
    let planes: Vec<(VertexId, VertexId)> = vec![
        (a, face[0]),
        (a, face[1]),
        (a, face[2]),
        (q, face[0]),
        (q, face[1]),
        (q, face[2]),
        (face[0], face[1]),
        (face[1], face[2]),
        (face[0], face[2]),
    ];
    let ok = |p: &Point3| {
        face.iter().all(|w| {
            let s1 = t1.0.iter().position(|v| v == w).unwrap();
            let s2 = t2.0.iter().position(|v| v == w).unwrap();
            check_positive(mesh, &t1, p, s1) && check_positive(mesh, &t2, p, s2)
        }) && guard_ok(mesh, p, &planes, guard)
    };
    let fp = face.map(|v| mesh.point(v).clone());
    let one = BigRational::one();
    let two = BigRational::from_integer(2.into());
    let mut bases = vec![centroid_of(fp.iter())?];
    for k in 0..3 {
        let heavy = [&fp[k], &fp[k], &fp[(k + 1) % 3], &fp[(k + 2) % 3]];
        bases.push(centroid_of(heavy)?);
    }
    let apex = mesh.point(a);
    for c in &bases {
        let mut t = &one / BigRational::from_integer(4.into());
        for _ in 0..64 {
            let p = c.lerp(apex, &t);
            if let Some(p) = simple_candidates(&p).into_iter().find(|p| ok(p)) {
                return Ok(p);
            }
            t /= &two;
        }
    }
    Err(Error::GeneralPosition(format!(
        "no admissible Steiner point between tetrahedra {tau1} and {tau2}"
    )))
}

fn volume_sum(mesh: &TetMesh, ids: &[TetId]) -> BigRational {
    exact_sum(ids.iter().map(|&id| mesh.volume6(id)))
}

/// All orderings of `0..n` in lexicographic order.
fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![];
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            break;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}

/// A cyclic arrangement described by its junctions: each entry is a tetrahedron
/// and whether the link to the next entry is already known to be valid.
fn closes(mesh: &TetMesh, items: &[(TetId, bool)]) -> bool {
    (0..items.len()).all(|i| {
        let (a, given) = items[i];
        given || mesh.adjacent(a, items[(i + 1) % items.len()].0)
    })
}

fn push_path(items: &mut Vec<(TetId, bool)>, path: &[TetId]) {
    match path {
        [] => {}
        [x] => items.push((*x, false)),
        [x, .., y] => {
            items.push((*x, true));
            items.push((*y, false));
        }
    }
}

/// Replaces `tau1` (in cycle `ia`) and `tau2` (in cycle `ib`) by the six new
/// tetrahedra, merging both cycles into one.
fn splice_join(
    mesh: &TetMesh,
    cs: &mut CycleState,
    ia: usize,
    ib: usize,
    tau1: TetId,
    tau2: TetId,
    new: &[TetId],
) -> Result<()> {
    let open = |c: &[TetId], t: TetId| -> Vec<TetId> {
        let i = c.iter().position(|&x| x == t).unwrap();
        c[i + 1..].iter().chain(&c[..i]).copied().collect()
    };
    let pa = open(&cs.cycles[ia], tau1);
    let pb_fwd = open(&cs.cycles[ib], tau2);
    let pb_rev: Vec<TetId> = pb_fwd.iter().rev().copied().collect();
    for perm in permutations(new.len()) {
        let seq: Vec<TetId> = perm.iter().map(|&i| new[i]).collect();
        for k in 0..=seq.len() {
            for pb in [&pb_fwd, &pb_rev] {
                let mut items = vec![];
                push_path(&mut items, &pa);
                seq[..k].iter().for_each(|&t| items.push((t, false)));
                push_path(&mut items, pb);
                seq[k..].iter().for_each(|&t| items.push((t, false)));
                if closes(mesh, &items) {
                    let merged: Vec<TetId> = pa
                        .iter()
                        .chain(&seq[..k])
                        .chain(pb.iter())
                        .chain(&seq[k..])
                        .copied()
                        .collect();
                    let (lo, hi) = (ia.min(ib), ia.max(ib));
                    cs.cycles.remove(hi);
                    cs.cycles[lo] = merged;
                    return Ok(());
                }
            }
        }
    }
    Err(Error::SpliceFailure(format!(
        "cannot merge cycles through {tau1} and {tau2}"
    )))
}

/// Outcome of one join operation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Join {
    pub tau1: TetId,
    pub tau2: TetId,
    pub face: [VertexId; 3],
    pub steiner: VertexId,
    pub new_tets: Vec<TetId>,
}

/// Joins the cycles through `tau1` and `tau2` with one Steiner point.
pub fn join_cycles(
    mesh: &mut TetMesh,
    cs: &mut CycleState,
    tau1: TetId,
    tau2: TetId,
    guard: &[VertexId],
) -> Result<Join> {
    let member = cs.membership();
    let (ia, ib) = (member[&tau1], member[&tau2]);
    if ia == ib {
        return Err(Error::Internal(format!("{tau1} and {tau2} are already on one cycle")));
    }
    let p = place_steiner(mesh, tau1, tau2, guard)?;
    let face = mesh.shared_face(tau1, tau2).unwrap();
    let before = volume_sum(mesh, &[tau1, tau2]);
    let s = mesh.add_vertex(p, Origin::Steiner);
    let t1 = mesh.remove(tau1)?;
    let t2 = mesh.remove(tau2)?;
    let mut new_tets = vec![];
    for t in [t1, t2] {
        for w in face {
            let mut v = t.0;
            let slot = v.iter().position(|&x| x == w).unwrap();
            v[slot] = s;
            new_tets.push(mesh.insert_oriented(Tetra(v))?);
        }
    }
    if volume_sum(mesh, &new_tets) != before {
        return Err(Error::Internal(format!(
            "join at {tau1}/{tau2} does not conserve volume"
        )));
    }
    splice_join(mesh, cs, ia, ib, tau1, tau2, &new_tets)?;
    Ok(Join {
        tau1,
        tau2,
        face,
        steiner: s,
        new_tets,
    })
}

/// The smallest face (in ascending vertex order) whose two tetrahedra lie on
/// different cycles.
fn connecting_face(mesh: &TetMesh, member: &BTreeMap<TetId, usize>) -> Option<(TetId, TetId)> {
    mesh.faces().find_map(|(_, ts)| match ts {
        [a, b] if member[a] != member[b] => Some((*a, *b)),
        _ => None,
    })
}

/// Joins cycles until one is left. Returns the joins performed.
pub fn join_all_cycles(mesh: &mut TetMesh, cs: &mut CycleState, guard: &[VertexId]) -> Result<Vec<Join>> {
    let mut joins = vec![];
    while cs.num_cycles() > 1 {
        let (a, b) = connecting_face(mesh, &cs.membership()).ok_or(Error::NoConnectingFace)?;
        joins.push(join_cycles(mesh, cs, a, b, guard)?);
    }
    Ok(joins)
}

/// Replaces `old` in the certificate by an ordering of `new` that keeps every
/// link a shared face. Paths of three or more tetrahedra whose ends meet are
/// closed into cycles.
fn splice_replace(mesh: &TetMesh, cert: &mut HamCertificate, old: TetId, new: &[TetId]) -> Result<()> {
    let n = cert.order.len();
    let i = cert
        .order
        .iter()
        .position(|&t| t == old)
        .ok_or_else(|| Error::Internal(format!("tetrahedron {old} is not on the certificate")))?;
    let cyclic = cert.kind == CertKind::Cycle && n > 1;
    let pred = if i > 0 {
        Some(cert.order[i - 1])
    } else if cyclic {
        Some(cert.order[n - 1])
    } else {
        None
    };
    let succ = if i + 1 < n {
        Some(cert.order[i + 1])
    } else if cyclic {
        Some(cert.order[0])
    } else {
        None
    };
    let found = permutations(new.len()).into_iter().find(|perm| {
        let seq: Vec<TetId> = perm.iter().map(|&k| new[k]).collect();
        pred.is_none_or(|p| mesh.adjacent(p, seq[0]))
            && succ.is_none_or(|s| mesh.adjacent(seq[seq.len() - 1], s))
            && seq.windows(2).all(|w| mesh.adjacent(w[0], w[1]))
    });
    let perm = found.ok_or_else(|| Error::SpliceFailure(format!("no ordering replaces tetrahedron {old}")))?;
    cert.order.splice(i..=i, perm.iter().map(|&k| new[k]));
    if cert.kind == CertKind::Path && cert.order.len() >= 3 && mesh.adjacent(cert.order[0], *cert.order.last().unwrap())
    {
        cert.kind = CertKind::Cycle;
    }
    Ok(())
}

/// Reinserts a peeled degree-3 vertex: the tetrahedron on its replacement face
/// is split into three tetrahedra joining the vertex to the other faces.
pub fn reinsert_degree3(mesh: &mut TetMesh, cert: &mut HamCertificate, peel: &Peel) -> Result<Vec<TetId>> {
    let mut face = peel.face;
    face.sort_unstable();
    let tau1 = match mesh.face_tets(&face) {
        [t] => *t,
        other => {
            return Err(Error::Internal(format!(
                "peel face {face:?} has {} tetrahedra, expected one",
                other.len()
            )))
        }
    };
    let x = peel.vertex;
    let t1 = *mesh.tet(tau1).unwrap();
    let q = t1.apex(&face).unwrap();
    let cap = Tetra([face[0], face[1], face[2], x]);
    let before = mesh.volume6(tau1) + tetra_volume6(&cap, mesh).abs();
    let mut tets = vec![];
    for (u, v) in [(face[0], face[1]), (face[1], face[2]), (face[0], face[2])] {
        let t = Tetra([x, q, u, v]);
        match t.orientation(mesh) {
            Sign::Positive => tets.push(t),
            Sign::Negative => tets.push(t.flipped()),
            Sign::Zero => {
                return Err(Error::GeneralPosition(format!(
                    "vertex {x} is coplanar with {q}, {u}, {v}"
                )))
            }
        }
    }
    let after = exact_sum(tets.iter().map(|t| tetra_volume6(t, mesh)));
    if after != before {
        return Err(Error::Internal(format!(
            "reinserting vertex {x} over {face:?} does not conserve volume"
        )));
    }
    mesh.remove(tau1)?;
    let ids = tets
        .into_iter()
        .map(|t| mesh.insert_oriented(t))
        .collect::<Result<Vec<_>>>()?;
    splice_replace(mesh, cert, tau1, &ids)?;
    Ok(ids)
}

/// Inserts vertex `x` into the tetrahedron that strictly contains it, splitting
/// it into four.
pub fn reinsert_interior(mesh: &mut TetMesh, cert: &mut HamCertificate, x: VertexId) -> Result<Vec<TetId>> {
    let p = mesh.point(x).clone();
    let mut host = None;
    for (id, t) in mesh.live() {
        if t.contains_vertex(x) {
            continue;
        }
        match tetra_contains(t, &p, mesh) {
            Containment::Interior => {
                host = Some((id, *t));
                break;
            }
            Containment::Boundary => {
                return Err(Error::GeneralPosition(format!(
                    "point {x} lies on the boundary of tetrahedron {id}"
                )))
            }
            Containment::Exterior => {}
        }
    }
    let (tau, t) = host.ok_or(Error::LocationFailure(x))?;
    let before = mesh.volume6(tau);
    mesh.remove(tau)?;
    let mut ids = vec![];
    for slot in 0..4 {
        let mut v = t.0;
        v[slot] = x;
        ids.push(mesh.insert_oriented(Tetra(v))?);
    }
    if volume_sum(mesh, &ids) != before {
        return Err(Error::Internal(format!("inserting point {x} does not conserve volume")));
    }
    splice_replace(mesh, cert, tau, &ids)?;
    Ok(ids)
}

/// Counters reported for a pipeline run.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Stats {
    /// Exterior points of the input.
    pub m: usize,
    /// Interior points of the input.
    pub m_prime: usize,
    /// Hull vertices left after peeling.
    pub m_hat: usize,
    pub peels: usize,
    pub initial_cycles: usize,
    /// Initial cycles shorter than four tetrahedra.
    pub short_cycles: usize,
    pub joins: usize,
    pub steiner_count: usize,
}

impl Stats {
    /// `⌊(m−2)/2⌋` for the input's exterior point count.
    pub fn steiner_bound(&self) -> usize {
        self.m.saturating_sub(2) / 2
    }

    /// `⌊(2m̂−4)/4⌋` for the peeled hull.
    pub fn cycle_bound(&self) -> usize {
        (2 * self.m_hat).saturating_sub(4) / 4
    }
}

/// A pipeline milestone at which the certificate is complete.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Step {
    /// The reduced hull is tetrahedralized and its cycles joined.
    Core,
    ReinsertDegree3(VertexId),
    ReinsertInterior(VertexId),
}

#[derive(Clone, Debug)]
pub struct Tetrahedralization {
    pub mesh: TetMesh,
    pub certificate: HamCertificate,
    pub stats: Stats,
}

pub fn hamiltonian_tetrahedralization(points: &[Point3]) -> Result<Tetrahedralization> {
    hamiltonian_tetrahedralization_with(points, |_, _, _| Ok(()))
}

/// Runs the pipeline, calling `observer` after the core stage and after every
/// reinsertion. An observer error aborts the run.
pub fn hamiltonian_tetrahedralization_with<F>(points: &[Point3], mut observer: F) -> Result<Tetrahedralization>
where
    F: FnMut(&Step, &TetMesh, &HamCertificate) -> Result<()>,
{
    let hull = convex_hull(points)?;
    let mut mesh = TetMesh::new();
    let exterior: BTreeSet<VertexId> = hull.exterior.iter().copied().collect();
    for (i, p) in points.iter().enumerate() {
        let origin = if exterior.contains(&i) {
            Origin::Exterior
        } else {
            Origin::Interior
        };
        mesh.add_vertex(p.clone(), origin);
    }
    let (reduced, mut rec) = peel_degree3(&hull.mesh)?;
    rec.interior = hull.interior.clone();
    let mut stats = Stats {
        m: hull.exterior.len(),
        m_prime: hull.interior.len(),
        m_hat: reduced.num_vertices(),
        peels: rec.peels.len(),
        ..Default::default()
    };
    let guard: Vec<VertexId> = rec
        .peels
        .iter()
        .map(|p| p.vertex)
        .chain(rec.interior.iter().copied())
        .collect();

    let mut cert = if reduced.num_vertices() == 4 {
        let v = reduced.vertices();
        let id = mesh.insert(Tetra([v[0], v[1], v[2], v[3]]))?;
        HamCertificate {
            order: vec![id],
            kind: CertKind::Path,
        }
    } else {
        let p0 = place_center(&reduced, &mesh, &guard)?;
        let center = mesh.add_vertex(p0, Origin::Steiner);
        fan_tetrahedralize(&reduced, &mut mesh, center)?;
        let mut cs = initial_cycle_partition(&mesh)?;
        stats.initial_cycles = cs.num_cycles();
        stats.short_cycles = cs.cycles().iter().filter(|c| c.len() < 4).count();
        let joins = join_all_cycles(&mut mesh, &mut cs, &guard)?;
        stats.joins = joins.len();
        HamCertificate {
            order: cs.cycles[0].clone(),
            kind: CertKind::Cycle,
        }
    };
    observer(&Step::Core, &mesh, &cert)?;
    for peel in rec.peels.iter().rev() {
        reinsert_degree3(&mut mesh, &mut cert, peel)?;
        observer(&Step::ReinsertDegree3(peel.vertex), &mesh, &cert)?;
    }
    for &x in &rec.interior {
        reinsert_interior(&mut mesh, &mut cert, x)?;
        observer(&Step::ReinsertInterior(x), &mesh, &cert)?;
    }
    stats.steiner_count = mesh.steiner_count();
    Ok(Tetrahedralization {
        mesh,
        certificate: cert,
        stats,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutations_are_lexicographic() {
        let p = permutations(3);
        assert_eq!(p.len(), 6);
        assert_eq!(p[0], vec![0, 1, 2]);
        assert_eq!(p[1], vec![0, 2, 1]);
        assert_eq!(p[5], vec![2, 1, 0]);
        assert_eq!(permutations(6).len(), 720);
    }

    #[test]
    fn four_points_give_one_tetrahedron() {
        let pts = vec![
            Point3::from_ints(0, 0, 0),
            Point3::from_ints(1, 0, 0),
            Point3::from_ints(0, 1, 0),
            Point3::from_ints(0, 0, 1),
        ];
        let out = hamiltonian_tetrahedralization(&pts).unwrap();
        assert_eq!(out.mesh.num_live(), 1);
        assert_eq!(out.stats.steiner_count, 0);
        assert_eq!(out.certificate.kind, CertKind::Path);
        assert_eq!(out.certificate.order.len(), 1);
    }
}
