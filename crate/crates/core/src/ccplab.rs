//! Cubic planar graph experiments: the blow-up operation and the
//! non-Hamiltonian constructions built from it, exhaustive Hamiltonicity
//! search, and pulling tetrahedralizations of convex point sets.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::geom::{Point3, Tetra, VertexId};
use crate::graph::{hull_dual, parse_graph_text, trace_faces, Graph, RotGraph};
use crate::hull::convex_hull;
use crate::matching::perfect_matching;
use crate::mesh::{Origin, TetMesh};
use crate::pipeline::{CertKind, HamCertificate};

/// A cubic graph with a rotation system and, per vertex, the index of the
/// blown-in copy it belongs to (if any).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddedCubic {
    pub rot: RotGraph,
    pub copies: Vec<Option<usize>>,
}

impl EmbeddedCubic {
    pub fn new(rot: RotGraph) -> Result<Self> {
        rot.graph().check_cubic()?;
        let n = rot.graph().num_vertices();
        Ok(EmbeddedCubic {
            rot,
            copies: vec![None; n],
        })
    }

    pub fn graph(&self) -> &Graph {
        self.rot.graph()
    }

    pub fn num_vertices(&self) -> usize {
        self.graph().num_vertices()
    }

    /// Copy labels, if every vertex has one.
    pub fn copy_labels(&self) -> Option<Vec<usize>> {
        self.copies.iter().copied().collect()
    }
}

pub fn k4() -> EmbeddedCubic {
    let rot = RotGraph::from_rotations(vec![vec![1, 2, 3], vec![0, 3, 2], vec![0, 1, 3], vec![0, 2, 1]]).unwrap();
    EmbeddedCubic::new(rot).unwrap()
}

/// The cube graph, embedded.
pub fn q3() -> EmbeddedCubic {
    // Bottom square 0-1-2-3, top square 4-5-6-7, vertical edges i to i+4.
    let rot = vec![
        vec![1, 3, 4],
        vec![2, 0, 5],
        vec![3, 1, 6],
        vec![0, 2, 7],
        vec![0, 7, 5],
        vec![1, 4, 6],
        vec![2, 5, 7],
        vec![3, 6, 4],
    ];
    EmbeddedCubic::new(RotGraph::from_rotations(rot).unwrap()).unwrap()
}

/// A 38-vertex cubic, planar, 3-connected graph without a Hamiltonian cycle.
/// Its properties are re-checked by the test suite rather than assumed.
pub fn gadget38() -> EmbeddedCubic {
    let file = parse_graph_text(include_str!("../data/gadget38.txt")).expect("bundled graph parses");
    EmbeddedCubic::new(file.graph).expect("bundled graph is cubic")
}

/// Replaces vertex `u` of `g` by a copy of `h` with vertex `v` removed and a
/// path `v1'-v2'-w-v3'` added, where `v1, v2, v3` are the neighbours of `v` in
/// rotation order and `vi` is joined to `vi'`. The neighbours `u1, u2, u3` of
/// `u` (rotation order, starting at slot `face_choice`) attach to `v1'`, `w`
/// and `v3'`. The copy's vertices are labelled `copy`.
///
/// Vertices of `g` keep their ids, shifted down by one above `u`; the copy
/// follows, then `v1', v2', w, v3'`.
pub fn blow_up(
    g: &EmbeddedCubic,
    u: usize,
    h: &EmbeddedCubic,
    v: usize,
    face_choice: usize,
    copy: usize,
) -> Result<EmbeddedCubic> {
    g.graph().check_cubic()?;
    h.graph().check_cubic()?;
    let (ng, nh) = (g.num_vertices(), h.num_vertices());
    if u >= ng || v >= nh {
        return Err(Error::InvalidGraph(format!(
            "blow-up vertex out of range ({u} of {ng}, {v} of {nh})"
        )));
    }
    let gid = |x: usize| if x < u { x } else { x - 1 };
    let hid = |y: usize| ng - 1 + if y < v { y } else { y - 1 };
    let base = ng - 1 + nh - 1;
    let (v1p, v2p, w, v3p) = (base, base + 1, base + 2, base + 3);
    let ru = g.rot.rotation(u);
    let (u1, u2, u3) = (
        ru[face_choice % 3],
        ru[(face_choice + 1) % 3],
        ru[(face_choice + 2) % 3],
    );
    let rv = h.rot.rotation(v);
    let (v1, v2, v3) = (rv[0], rv[1], rv[2]);
    let attach = |x: usize| {
        if x == u1 {
            v1p
        } else if x == u2 {
            w
        } else {
            v3p
        }
    };
    let prime = |y: usize| {
        if y == v1 {
            v1p
        } else if y == v2 {
            v2p
        } else {
            v3p
        }
    };

    let mut g_part: Vec<Vec<usize>> = vec![];
    for x in (0..ng).filter(|&x| x != u) {
        g_part.push(
            g.rot
                .rotation(x)
                .iter()
                .map(|&y| if y == u { attach(x) } else { gid(y) })
                .collect(),
        );
    }
    let h_part = |mirror: bool| -> Vec<Vec<usize>> {
        (0..nh)
            .filter(|&y| y != v)
            .map(|y| {
                let mut r: Vec<usize> = h
                    .rot
                    .rotation(y)
                    .iter()
                    .map(|&z| if z == v { prime(y) } else { hid(z) })
                    .collect();
                if mirror {
                    r.reverse();
                }
                r
            })
            .collect()
    };
    let path_nbrs = [
        [gid(u1), v2p, hid(v1)],
        [v1p, w, hid(v2)],
        [v2p, gid(u2), v3p],
        [w, hid(v3), gid(u3)],
    ];
    // The embedding of the new path is fixed up to the orientation of each of
    // its four vertices; take the first combination that is planar.
    for mirror in [false, true] {
        for mask in 0..16u32 {
            let mut rot = g_part.clone();
            rot.extend(h_part(mirror));
            for (k, nb) in path_nbrs.iter().enumerate() {
                let mut r = nb.to_vec();
                if mask & (1 << k) != 0 {
                    r.swap(1, 2);
                }
                rot.push(r);
            }
            let rg = RotGraph::from_rotations(rot)?;
            if rg.euler_characteristic()? == 2 {
                let mut copies: Vec<Option<usize>> = (0..ng).filter(|&x| x != u).map(|x| g.copies[x]).collect();
                copies.extend(std::iter::repeat_n(Some(copy), nh - 1 + 4));
                return Ok(EmbeddedCubic { rot: rg, copies });
            }
        }
    }
    Err(Error::InvalidGraph(
        "blow-up has no planar embedding; inputs are not planar".into(),
    ))
}

/// Blows up every vertex of `base` with a copy of `h` (removing `h`'s vertex 0),
/// copy `i` replacing base vertex `i`. At vertex `i` the gadget sits in the
/// face opposite the neighbour that follows `i` in cyclic id order. The result
/// is renumbered so that each copy occupies a contiguous id range.
pub fn lower_bound_family(base: &EmbeddedCubic, h: &EmbeddedCubic) -> Result<EmbeddedCubic> {
    let n = base.num_vertices();
    let mut g = base.clone();
    // Descending order keeps the ids of base vertices not yet replaced.
    for i in (0..n).rev() {
        let rot = base.rot.rotation(i);
        let next = *rot.iter().min_by_key(|&&j| (j + n - i) % n).unwrap();
        let slot = rot.iter().position(|&j| j == next).unwrap();
        g = blow_up(&g, i, h, 0, (slot + 2) % 3, i)?;
    }
    let labels: Vec<usize> = g
        .copies
        .iter()
        .map(|c| c.expect("every base vertex was replaced"))
        .collect();
    let mut order: Vec<usize> = (0..g.num_vertices()).collect();
    order.sort_by_key(|&x| (labels[x], x));
    let mut perm = vec![0; order.len()];
    for (new, &old) in order.iter().enumerate() {
        perm[old] = new;
    }
    let rot = RotGraph::new(g.graph().relabel(&perm));
    let copies = order.iter().map(|&old| Some(labels[old])).collect();
    Ok(EmbeddedCubic { rot, copies })
}

/// K4 with each vertex blown up by a copy of `h`, each copy in a different face.
pub fn k4_counterexample(h: &EmbeddedCubic) -> Result<EmbeddedCubic> {
    lower_bound_family(&k4(), h)
}

/// Cycles left after removing a perfect matching from cubic `g`, each listed
/// from its smallest vertex.
pub fn matching_partition(g: &Graph) -> Result<Vec<Vec<usize>>> {
    g.check_cubic()?;
    let m = perfect_matching(g)?;
    let n = g.num_vertices();
    let mut seen = vec![false; n];
    let mut cycles = vec![];
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut cycle = vec![start];
        seen[start] = true;
        let (mut prev, mut cur) = (usize::MAX, start);
        loop {
            let next = g
                .neighbors(cur)
                .iter()
                .copied()
                .filter(|&x| m.mate(cur) != Some(x) && x != prev)
                .min()
                .unwrap();
            if next == start {
                break;
            }
            seen[next] = true;
            cycle.push(next);
            prev = cur;
            cur = next;
        }
        cycles.push(cycle);
    }
    Ok(cycles)
}

/// For each copy label, the number of cycles whose vertices all carry it.
pub fn dedicated_cycles(cycles: &[Vec<usize>], labels: &[usize]) -> BTreeMap<usize, usize> {
    let mut out: BTreeMap<usize, usize> = labels.iter().map(|&l| (l, 0)).collect();
    for c in cycles {
        let l = labels[c[0]];
        if c.iter().all(|&x| labels[x] == l) {
            *out.get_mut(&l).unwrap() += 1;
        }
    }
    out
}

/// Outcome of a budgeted Hamiltonicity search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HamSearch {
    Found(Vec<usize>),
    /// The search space was exhausted.
    Absent,
    BudgetExhausted,
}

impl HamSearch {
    pub fn found(&self) -> Option<&[usize]> {
        match self {
            HamSearch::Found(c) => Some(c),
            _ => None,
        }
    }
}

#[derive(Clone)]
struct SearchState {
    state: Vec<i8>,
    deg_in: Vec<usize>,
    deg_out: Vec<usize>,
    /// For a fragment endpoint, the other endpoint of its path fragment.
    end: Vec<usize>,
    in_edges: usize,
}

struct Searcher<'a> {
    n: usize,
    edges: Vec<(usize, usize)>,
    inc: Vec<Vec<usize>>,
    edge_of: std::collections::HashMap<(usize, usize), usize>,
    g: &'a Graph,
    nodes: u64,
    budget: u64,
}

impl<'a> Searcher<'a> {
    fn new(g: &'a Graph, budget: u64) -> Self {
        let edges = g.edges();
        let mut inc = vec![vec![]; g.num_vertices()];
        let mut edge_of = std::collections::HashMap::new();
        for (i, &(a, b)) in edges.iter().enumerate() {
            inc[a].push(i);
            inc[b].push(i);
            edge_of.insert((a, b), i);
        }
        Searcher {
            n: g.num_vertices(),
            edges,
            inc,
            edge_of,
            g,
            nodes: 0,
            budget,
        }
    }

    fn edge(&self, a: usize, b: usize) -> Option<usize> {
        self.edge_of.get(&(a.min(b), a.max(b))).copied()
    }

    /// Sets edge `e` to in (`1`) or out (`-1`) and propagates; false on contradiction.
    fn set(&self, s: &mut SearchState, e: usize, val: i8) -> bool {
        let mut work = vec![(e, val)];
        while let Some((e, val)) = work.pop() {
            match s.state[e] {
                0 => {}
                x if x == val => continue,
                _ => return false,
            }
            s.state[e] = val;
            let (a, b) = self.edges[e];
            if val == 1 {
                if s.end[a] == b && s.deg_in[a] > 0 {
                    // Closes a fragment into a cycle: only allowed as the last edge.
                    if s.in_edges + 1 != self.n {
                        return false;
                    }
                }
                s.in_edges += 1;
                s.deg_in[a] += 1;
                s.deg_in[b] += 1;
                if s.deg_in[a] > 2 || s.deg_in[b] > 2 {
                    return false;
                }
                let (ea, eb) = (s.end[a], s.end[b]);
                if ea != b {
                    s.end[ea] = eb;
                    s.end[eb] = ea;
                    if s.in_edges + 1 < self.n {
                        if let Some(c) = self.edge(ea, eb) {
                            if s.state[c] == 0 {
                                work.push((c, -1));
                            }
                        }
                    }
                }
            } else {
                s.deg_out[a] += 1;
                s.deg_out[b] += 1;
            }
            for x in [a, b] {
                let deg = self.g.degree(x);
                if deg - s.deg_out[x] < 2 {
                    return false;
                }
                if s.deg_in[x] == 2 {
                    for &f in &self.inc[x] {
                        if s.state[f] == 0 {
                            work.push((f, -1));
                        }
                    }
                } else if deg - s.deg_out[x] == 2 {
                    for &f in &self.inc[x] {
                        if s.state[f] == 0 {
                            work.push((f, 1));
                        }
                    }
                }
            }
        }
        true
    }

    fn search(&mut self, s: SearchState) -> Option<HamSearch> {
        if s.in_edges == self.n {
            return Some(HamSearch::Found(self.extract(&s)));
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return Some(HamSearch::BudgetExhausted);
        }
        // Extend a fragment end if there is one, else start at the smallest free vertex.
        let pick = (0..self.n)
            .filter(|&x| s.deg_in[x] < 2 && self.inc[x].iter().any(|&f| s.state[f] == 0))
            .min_by_key(|&x| {
                (
                    s.deg_in[x] != 1,
                    self.inc[x].iter().filter(|&&f| s.state[f] == 0).count(),
                    x,
                )
            })?;
        let e = *self.inc[pick].iter().find(|&&f| s.state[f] == 0).unwrap();
        for val in [1i8, -1] {
            let mut t = s.clone();
            if self.set(&mut t, e, val) {
                if let Some(r) = self.search(t) {
                    return Some(r);
                }
            }
        }
        None
    }

    fn extract(&self, s: &SearchState) -> Vec<usize> {
        let mut cycle = vec![0];
        let mut prev = usize::MAX;
        let mut cur = 0;
        loop {
            let next = self.inc[cur]
                .iter()
                .filter(|&&f| s.state[f] == 1)
                .map(|&f| {
                    if self.edges[f].0 == cur {
                        self.edges[f].1
                    } else {
                        self.edges[f].0
                    }
                })
                .find(|&x| x != prev)
                .unwrap();
            if next == 0 {
                break;
            }
            cycle.push(next);
            prev = cur;
            cur = next;
        }
        cycle
    }
}

/// Backtracking search for a Hamiltonian cycle, visiting at most `budget` nodes.
pub fn find_ham_cycle(g: &Graph, budget: u64) -> HamSearch {
    let n = g.num_vertices();
    if n < 3 || !g.is_connected() {
        return HamSearch::Absent;
    }
    let mut searcher = Searcher::new(g, budget);
    let mut s = SearchState {
        state: vec![0; searcher.edges.len()],
        deg_in: vec![0; n],
        deg_out: vec![0; n],
        end: (0..n).collect(),
        in_edges: 0,
    };
    // Vertices of degree two force both their edges.
    for x in 0..n {
        if g.degree(x) < 2 {
            return HamSearch::Absent;
        }
        if g.degree(x) == 2 {
            for &f in &searcher.inc[x].clone() {
                if !searcher.set(&mut s, f, 1) {
                    return HamSearch::Absent;
                }
            }
        }
    }
    searcher.search(s).unwrap_or(HamSearch::Absent)
}

/// Hamiltonian path search: a Hamiltonian cycle through an added apex joined to
/// every vertex.
pub fn find_ham_path(g: &Graph, budget: u64) -> HamSearch {
    let n = g.num_vertices();
    match n {
        0 => return HamSearch::Absent,
        1 => return HamSearch::Found(vec![0]),
        2 => {
            return if g.has_edge(0, 1) {
                HamSearch::Found(vec![0, 1])
            } else {
                HamSearch::Absent
            };
        }
        _ => {}
    }
    let mut adj: Vec<Vec<usize>> = g.adjacency().to_vec();
    for l in adj.iter_mut() {
        l.push(n);
    }
    adj.push((0..n).collect());
    let aug = Graph::from_adjacency(adj).expect("apex extension is a simple graph");
    match find_ham_cycle(&aug, budget) {
        HamSearch::Found(c) => {
            let k = c.iter().position(|&x| x == n).unwrap();
            HamSearch::Found(c[k + 1..].iter().chain(&c[..k]).copied().collect())
        }
        other => other,
    }
}

pub fn is_ham_cycle(g: &Graph, c: &[usize]) -> bool {
    let n = g.num_vertices();
    c.len() == n
        && n >= 3
        && c.iter().copied().collect::<BTreeSet<_>>().len() == n
        && c.iter().all(|&x| x < n)
        && (0..n).all(|i| g.has_edge(c[i], c[(i + 1) % n]))
}

pub fn is_ham_path(g: &Graph, p: &[usize]) -> bool {
    let n = g.num_vertices();
    p.len() == n
        && p.iter().all(|&x| x < n)
        && p.iter().copied().collect::<BTreeSet<_>>().len() == n
        && p.windows(2).all(|w| g.has_edge(w[0], w[1]))
}

/// A face found from a Hamiltonian cycle, and a Hamiltonian path of the graph
/// with that face's vertices removed (in original vertex ids).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PullingFace {
    pub face: Vec<usize>,
    pub chord: (usize, usize),
    pub path: Vec<usize>,
}

/// Takes a chord of the Hamiltonian cycle `cycle` whose endpoints are closest
/// along the cycle (ties by ascending endpoint pair); the shorter cycle arc
/// plus the chord bounds a face, and the rest of the cycle is a Hamiltonian
/// path of the remaining vertices.
pub fn pulling_face(g: &RotGraph, cycle: &[usize]) -> Result<PullingFace> {
    let graph = g.graph();
    let n = graph.num_vertices();
    if !is_ham_cycle(graph, cycle) {
        return Err(Error::InvalidGraph("not a Hamiltonian cycle".into()));
    }
    let mut pos = vec![0; n];
    for (i, &x) in cycle.iter().enumerate() {
        pos[x] = i;
    }
    let dist = |x: usize, y: usize| {
        let d = pos[x].abs_diff(pos[y]);
        d.min(n - d)
    };
    let (x, y) = graph
        .edges()
        .into_iter()
        .filter(|&(a, b)| dist(a, b) > 1)
        .min_by_key(|&(a, b)| (dist(a, b), a, b))
        .ok_or(Error::NotAFace(0, 0))?;
    let d = dist(x, y);
    let faces = trace_faces(g)?;
    let face_sets: Vec<BTreeSet<usize>> = faces.iter().map(|f| f.iter().copied().collect()).collect();
    // Arcs of length d from x toward y, in either direction around the cycle.
    for step in [1, n - 1] {
        let arc: Vec<usize> = (0..=d).map(|k| cycle[(pos[x] + k * step) % n]).collect();
        if *arc.last().unwrap() != y {
            continue;
        }
        let set: BTreeSet<usize> = arc.iter().copied().collect();
        if let Some(i) = face_sets.iter().position(|f| *f == set) {
            let path: Vec<usize> = (1..n - d).map(|k| cycle[(pos[y] + k * step) % n]).collect();
            return Ok(PullingFace {
                face: faces[i].clone(),
                chord: (x, y),
                path,
            });
        }
    }
    Err(Error::NotAFace(x, y))
}

/// Result of [`pulling_tetrahedralization`].
#[derive(Clone, Debug)]
pub enum Pulling {
    Success {
        mesh: TetMesh,
        certificate: HamCertificate,
        apex: VertexId,
    },
    /// The hull dual's Hamiltonian cycle search did not produce a cycle.
    NoCycle(HamSearch),
}

/// Tetrahedralizes a convex point set by joining one hull vertex `p` to every
/// facet not containing it, with `p` chosen so that the tetrahedra admit a
/// Hamiltonian path.
pub fn pulling_tetrahedralization(points: &[Point3], budget: u64) -> Result<Pulling> {
    let hull = convex_hull(points)?;
    if !hull.interior.is_empty() {
        return Err(Error::InteriorPointsPresent(hull.interior.len()));
    }
    let dual = hull_dual(&hull.mesh);
    let cycle = match find_ham_cycle(dual.graph(), budget) {
        HamSearch::Found(c) => c,
        other => return Ok(Pulling::NoCycle(other)),
    };
    let pf = pulling_face(&dual, &cycle)?;
    let facets = hull.mesh.facets();
    let mut common: BTreeSet<VertexId> = facets[pf.face[0]].iter().copied().collect();
    for &f in &pf.face[1..] {
        let s: BTreeSet<VertexId> = facets[f].iter().copied().collect();
        common = common.intersection(&s).copied().collect();
    }
    let apex = match common.iter().collect::<Vec<_>>()[..] {
        [&p] => p,
        _ => {
            return Err(Error::Internal(format!(
                "dual face {:?} is not the star of a hull vertex",
                pf.face
            )))
        }
    };
    let mut mesh = TetMesh::new();
    for p in points {
        mesh.add_vertex(p.clone(), Origin::Exterior);
    }
    let mut order = vec![];
    for &f in &pf.path {
        let [a, b, c] = facets[f];
        order.push(mesh.insert(Tetra([a, b, c, apex]))?);
    }
    if mesh.num_live() + pf.face.len() != facets.len() {
        return Err(Error::Internal(
            "pulled tetrahedra do not match the facets away from the apex".into(),
        ));
    }
    Ok(Pulling::Success {
        mesh,
        certificate: HamCertificate {
            order,
            kind: CertKind::Path,
        },
        apex,
    })
}
