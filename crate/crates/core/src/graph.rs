//! Combinatorial graphs: dual graphs of meshes, duals of hull skeletons, and
//! embedded cubic graphs carried as rotation systems.
//!
//! Text format: a header line `V E`, then `V` lines where line `i` lists the
//! neighbours of vertex `i` in rotation order, space separated, 0-indexed.
//! Lines starting with `#` are comments; a `# copy <id>` comment assigns the
//! vertex lines that follow it to copy `<id>`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::geom::VertexId;
use crate::hull::HullMesh;
use crate::mesh::{TetId, TetMesh};

/// Simple undirected graph on `0..n` as adjacency lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Validates symmetry, and the absence of loops and parallel edges.
    pub fn from_adjacency(adj: Vec<Vec<usize>>) -> Result<Self> {
        let n = adj.len();
        for (v, list) in adj.iter().enumerate() {
            let mut seen = BTreeSet::new();
            for &w in list {
                if w >= n {
                    return Err(Error::InvalidGraph(format!("vertex {v} lists missing vertex {w}")));
                }
                if w == v {
                    return Err(Error::InvalidGraph(format!("loop at vertex {v}")));
                }
                if !seen.insert(w) {
                    return Err(Error::InvalidGraph(format!("parallel edge {v}-{w}")));
                }
                if !adj[w].contains(&v) {
                    return Err(Error::InvalidGraph(format!("edge {v}-{w} is not symmetric")));
                }
            }
        }
        Ok(Graph { adj })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::InvalidGraph(format!("edge {a}-{b} out of range")));
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        Self::from_adjacency(adj)
    }

    pub fn num_vertices(&self) -> usize {
        self.adj.len()
    }

    pub fn num_edges(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn adjacency(&self) -> &[Vec<usize>] {
        &self.adj
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].contains(&b)
    }

    /// Edges `(a, b)` with `a < b`, ascending.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = self
            .adj
            .iter()
            .enumerate()
            .flat_map(|(a, l)| l.iter().filter(move |&&b| a < b).map(move |&b| (a, b)))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn is_cubic(&self) -> bool {
        self.adj.iter().all(|l| l.len() == 3)
    }

    pub fn check_cubic(&self) -> Result<()> {
        match self.adj.iter().position(|l| l.len() != 3) {
            Some(v) => Err(Error::NotCubic {
                vertex: v,
                degree: self.adj[v].len(),
            }),
            None => Ok(()),
        }
    }

    pub fn is_connected(&self) -> bool {
        self.is_connected_without(&[])
    }

    /// Connectivity of the graph with `removed` deleted. Empty graphs count as connected.
    pub fn is_connected_without(&self, removed: &[usize]) -> bool {
        let n = self.adj.len();
        let mut seen = vec![false; n];
        for &r in removed {
            seen[r] = true;
        }
        let Some(start) = (0..n).find(|&v| !seen[v]) else {
            return true;
        };
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        while let Some(v) = queue.pop_front() {
            for &w in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen.iter().all(|&s| s)
    }

    /// Deletes a vertex set. Returns the remaining graph and, for each new
    /// vertex, its identifier in `self`.
    pub fn without_vertices(&self, removed: &[usize]) -> (Graph, Vec<usize>) {
        let gone: BTreeSet<usize> = removed.iter().copied().collect();
        let keep: Vec<usize> = (0..self.adj.len()).filter(|v| !gone.contains(v)).collect();
        let mut new_id = vec![usize::MAX; self.adj.len()];
        for (i, &v) in keep.iter().enumerate() {
            new_id[v] = i;
        }
        let adj = keep
            .iter()
            .map(|&v| {
                self.adj[v]
                    .iter()
                    .filter(|w| !gone.contains(w))
                    .map(|&w| new_id[w])
                    .collect()
            })
            .collect();
        (Graph { adj }, keep)
    }

    /// Relabels vertices: old vertex `v` becomes `perm[v]`. Rotation order is kept.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        let mut adj = vec![Vec::new(); self.adj.len()];
        for (v, list) in self.adj.iter().enumerate() {
            adj[perm[v]] = list.iter().map(|&w| perm[w]).collect();
        }
        Graph { adj }
    }
}

/// A graph whose adjacency lists are a rotation system (cyclic neighbour order).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RotGraph(Graph);

impl RotGraph {
    pub fn new(graph: Graph) -> Self {
        RotGraph(graph)
    }

    pub fn from_rotations(rot: Vec<Vec<usize>>) -> Result<Self> {
        Graph::from_adjacency(rot).map(RotGraph)
    }

    pub fn graph(&self) -> &Graph {
        &self.0
    }

    pub fn into_graph(self) -> Graph {
        self.0
    }

    pub fn rotation(&self, v: usize) -> &[usize] {
        self.0.neighbors(v)
    }

    /// Euler characteristic `V - E + F` of the traced embedding.
    pub fn euler_characteristic(&self) -> Result<i64> {
        let f = trace_faces(self)?.len() as i64;
        Ok(self.0.num_vertices() as i64 - self.0.num_edges() as i64 + f)
    }

    /// Reverses every rotation, giving the mirror-image embedding.
    pub fn mirrored(&self) -> RotGraph {
        let adj = self.0.adj.iter().map(|l| l.iter().rev().copied().collect()).collect();
        RotGraph(Graph { adj })
    }
}

/// Traces the faces of the embedding given by a rotation system.
///
/// From the directed edge `u -> v` the walk continues with `v -> w`, where `w`
/// follows `u` in the rotation at `v`. Every directed edge lies on exactly one face.
pub fn trace_faces(g: &RotGraph) -> Result<Vec<Vec<usize>>> {
    let adj = &g.0.adj;
    let mut used: Vec<Vec<bool>> = adj.iter().map(|l| vec![false; l.len()]).collect();
    let mut faces = Vec::new();
    for start in 0..adj.len() {
        for start_slot in 0..adj[start].len() {
            if used[start][start_slot] {
                continue;
            }
            let mut face = Vec::new();
            let (mut u, mut slot) = (start, start_slot);
            loop {
                if used[u][slot] {
                    return Err(Error::NonClosingTrace(format!(
                        "walk from {start} re-entered dart {u}->{}",
                        adj[u][slot]
                    )));
                }
                used[u][slot] = true;
                face.push(u);
                let v = adj[u][slot];
                let back = adj[v]
                    .iter()
                    .position(|&x| x == u)
                    .ok_or_else(|| Error::NonClosingTrace(format!("{v} does not list {u} in its rotation")))?;
                let next = (back + 1) % adj[v].len();
                u = v;
                slot = next;
                if u == start && slot == start_slot {
                    break;
                }
            }
            faces.push(face);
        }
    }
    Ok(faces)
}

/// True iff no set of at most two vertices disconnects the graph (and it has at least 4 vertices).
pub fn is_three_connected(g: &Graph) -> bool {
    let n = g.num_vertices();
    if n < 4 || !g.is_connected() {
        return false;
    }
    for a in 0..n {
        if !g.is_connected_without(&[a]) {
            return false;
        }
        for b in a + 1..n {
            if !g.is_connected_without(&[a, b]) {
                return false;
            }
        }
    }
    true
}

/// Dual of a tetrahedralization: one node per live tetrahedron, one edge per shared face.
#[derive(Clone, Debug)]
pub struct DualGraph {
    nodes: Vec<TetId>,
    index: BTreeMap<TetId, usize>,
    graph: Graph,
    shared: BTreeMap<(usize, usize), [VertexId; 3]>,
}

impl DualGraph {
    /// Tetrahedron identifiers; node `i` of [`DualGraph::graph`] is `nodes()[i]`.
    pub fn nodes(&self) -> &[TetId] {
        &self.nodes
    }

    pub fn index_of(&self, t: TetId) -> Option<usize> {
        self.index.get(&t).copied()
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// The face shared by two adjacent nodes.
    pub fn shared_face(&self, a: usize, b: usize) -> Option<[VertexId; 3]> {
        self.shared.get(&(a.min(b), a.max(b))).copied()
    }
}

/// Builds the dual graph from scratch out of the mesh's tetrahedra.
pub fn dual_of_mesh(mesh: &TetMesh) -> Result<DualGraph> {
    let nodes: Vec<TetId> = mesh.live_ids();
    let index: BTreeMap<TetId, usize> = nodes.iter().enumerate().map(|(i, &t)| (t, i)).collect();
    let mut by_face: BTreeMap<[VertexId; 3], Vec<usize>> = BTreeMap::new();
    for (i, &t) in nodes.iter().enumerate() {
        for face in mesh.tet(t).unwrap().faces() {
            by_face.entry(face).or_default().push(i);
        }
    }
    let mut adj = vec![Vec::new(); nodes.len()];
    let mut shared = BTreeMap::new();
    for (face, owners) in by_face {
        match owners.len() {
            1 => {}
            2 => {
                let (a, b) = (owners[0], owners[1]);
                adj[a].push(b);
                adj[b].push(a);
                shared.insert((a.min(b), a.max(b)), face);
            }
            count => return Err(Error::FaceInconsistency { face, count }),
        }
    }
    for list in &mut adj {
        list.sort_unstable();
    }
    let graph = Graph::from_adjacency(adj).map_err(|e| Error::Internal(format!("dual graph is not simple: {e}")))?;
    Ok(DualGraph {
        nodes,
        index,
        graph,
        shared,
    })
}

/// Dual of a hull's 1-skeleton: node `i` is facet `i`; its rotation lists the
/// facets across `(f0,f1)`, `(f1,f2)`, `(f2,f0)`, the counterclockwise order
/// seen from outside.
pub fn hull_dual(h: &HullMesh) -> RotGraph {
    let rot = (0..h.facets().len()).map(|i| h.facet_neighbors(i).to_vec()).collect();
    RotGraph(Graph { adj: rot })
}

/// Parsed graph file: the embedding and optional per-vertex copy labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphFile {
    pub graph: RotGraph,
    pub copies: Option<Vec<usize>>,
}

pub fn parse_graph_text(text: &str) -> Result<GraphFile> {
    let mut header: Option<(usize, usize)> = None;
    let mut rows: Vec<Vec<usize>> = Vec::new();
    let mut copies: Vec<Option<usize>> = Vec::new();
    let mut current_copy: Option<usize> = None;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            let mut words = comment.split_whitespace();
            if words.next() == Some("copy") {
                let id = words
                    .next()
                    .and_then(|w| w.parse().ok())
                    .ok_or_else(|| Error::parse(line_no, "malformed copy label"))?;
                current_copy = Some(id);
            }
            continue;
        }
        let nums: Vec<usize> = line
            .split_whitespace()
            .map(|w| {
                w.parse()
                    .map_err(|_| Error::parse(line_no, format!("not a vertex id: {w:?}")))
            })
            .collect::<Result<_>>()?;
        if header.is_none() {
            if nums.len() != 2 {
                return Err(Error::parse(line_no, "header must be `V E`"));
            }
            header = Some((nums[0], nums[1]));
            continue;
        }
        rows.push(nums);
        copies.push(current_copy);
        if rows.len() > header.unwrap().0 {
            return Err(Error::parse(line_no, "more vertex lines than announced"));
        }
    }
    let (v, e) = header.ok_or_else(|| Error::parse(1, "missing header"))?;
    if rows.len() != v {
        return Err(Error::parse(
            text.lines().count(),
            format!("expected {v} vertex lines, found {}", rows.len()),
        ));
    }
    let graph = Graph::from_adjacency(rows)?;
    if graph.num_edges() != e {
        return Err(Error::parse(
            1,
            format!("header announces {e} edges, found {}", graph.num_edges()),
        ));
    }
    let copies = if copies.iter().all(Option::is_some) && !copies.is_empty() {
        Some(copies.into_iter().map(Option::unwrap).collect())
    } else {
        None
    };
    Ok(GraphFile {
        graph: RotGraph(graph),
        copies,
    })
}

pub fn write_graph_text(g: &RotGraph, copies: Option<&[usize]>) -> String {
    let graph = g.graph();
    let mut out = format!("{} {}\n", graph.num_vertices(), graph.num_edges());
    let mut last_copy = None;
    for v in 0..graph.num_vertices() {
        if let Some(c) = copies.map(|c| c[v]) {
            if last_copy != Some(c) {
                let _ = writeln!(out, "# copy {c}");
                last_copy = Some(c);
            }
        }
        let row: Vec<String> = graph.neighbors(v).iter().map(usize::to_string).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    out
}
