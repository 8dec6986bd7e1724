//! Maximum cardinality matching in general graphs (Edmonds' blossom algorithm),
//! used to obtain the perfect matching that every bridgeless cubic graph has.
//!
//! Vertices and neighbours are scanned in ascending order, so the result is
//! a deterministic function of the graph.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// A set of vertex-disjoint edges, each stored as `(a, b)` with `a < b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching {
    pairs: Vec<(usize, usize)>,
    mate: Vec<Option<usize>>,
}

impl Matching {
    pub fn from_mates(mate: Vec<Option<usize>>) -> Self {
        let pairs = mate
            .iter()
            .enumerate()
            .filter_map(|(v, m)| m.filter(|&w| v < w).map(|w| (v, w)))
            .collect();
        Matching { pairs, mate }
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn mate(&self, v: usize) -> Option<usize> {
        self.mate[v]
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.mate.get(a).copied().flatten() == Some(b)
    }

    /// Structural check against `g`: every pair is an edge and endpoints are disjoint.
    pub fn is_valid_for(&self, g: &Graph) -> bool {
        let mut used = vec![false; g.num_vertices()];
        for &(a, b) in &self.pairs {
            if a >= used.len() || b >= used.len() || !g.has_edge(a, b) || used[a] || used[b] {
                return false;
            }
            used[a] = true;
            used[b] = true;
        }
        true
    }

    pub fn is_perfect_for(&self, g: &Graph) -> bool {
        self.is_valid_for(g) && 2 * self.pairs.len() == g.num_vertices()
    }
}

/// Maximum cardinality matching of `g`.
pub fn maximum_matching(g: &Graph) -> Matching {
    let n = g.num_vertices();
    let mut adj: Vec<Vec<usize>> = g.adjacency().to_vec();
    for l in &mut adj {
        l.sort_unstable();
    }
    let mut b = Blossom::new(&adj);
    // Greedy start; the blossom search only has to repair what is left.
    for (v, nbrs) in adj.iter().enumerate() {
        if b.mate[v].is_none() {
            if let Some(&w) = nbrs.iter().find(|&&w| b.mate[w].is_none()) {
                b.mate[v] = Some(w);
                b.mate[w] = Some(v);
            }
        }
    }
    for root in 0..n {
        if b.mate[root].is_none() {
            if let Some(end) = b.find_path(root) {
                b.augment(end);
            }
        }
    }
    Matching::from_mates(b.mate)
}

/// A perfect matching of `g`, or `NoPerfectMatching` if none exists.
pub fn perfect_matching(g: &Graph) -> Result<Matching> {
    let m = maximum_matching(g);
    debug_assert!(m.is_valid_for(g));
    if !m.is_valid_for(g) {
        return Err(Error::Internal("blossom search produced an invalid matching".into()));
    }
    if 2 * m.len() != g.num_vertices() {
        return Err(Error::NoPerfectMatching {
            matched: 2 * m.len(),
            vertices: g.num_vertices(),
        });
    }
    Ok(m)
}

struct Blossom<'a> {
    adj: &'a [Vec<usize>],
    mate: Vec<Option<usize>>,
    parent: Vec<Option<usize>>,
    base: Vec<usize>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
    queue: VecDeque<usize>,
}

impl<'a> Blossom<'a> {
    fn new(adj: &'a [Vec<usize>]) -> Self {
        let n = adj.len();
        Blossom {
            adj,
            mate: vec![None; n],
            parent: vec![None; n],
            base: (0..n).collect(),
            used: vec![false; n],
            in_blossom: vec![false; n],
            queue: VecDeque::new(),
        }
    }

    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; self.adj.len()];
        loop {
            a = self.base[a];
            seen[a] = true;
            match self.mate[a] {
                Some(m) => a = self.parent[m].expect("matched vertex on an alternating path"),
                None => break,
            }
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            let m = self.mate[b].expect("path from b reaches the root");
            b = self.parent[m].expect("matched vertex on an alternating path");
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            let m = self.mate[v].unwrap();
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[m]] = true;
            self.parent[v] = Some(child);
            child = m;
            v = self.parent[m].unwrap();
        }
    }

    fn find_path(&mut self, root: usize) -> Option<usize> {
        let n = self.adj.len();
        self.used.iter_mut().for_each(|u| *u = false);
        self.parent.iter_mut().for_each(|p| *p = None);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.used[root] = true;
        self.queue.clear();
        self.queue.push_back(root);
        while let Some(v) = self.queue.pop_front() {
            for k in 0..self.adj[v].len() {
                let to = self.adj[v][k];
                if self.base[v] == self.base[to] || self.mate[v] == Some(to) {
                    continue;
                }
                let to_is_outer = to == root || self.mate[to].is_some_and(|m| self.parent[m].is_some());
                if to_is_outer {
                    let cur = self.lca(v, to);
                    self.in_blossom.iter_mut().for_each(|b| *b = false);
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for i in 0..n {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                self.queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to].is_none() {
                    self.parent[to] = Some(v);
                    match self.mate[to] {
                        None => return Some(to),
                        Some(m) => {
                            self.used[m] = true;
                            self.queue.push_back(m);
                        }
                    }
                }
            }
        }
        None
    }

    fn augment(&mut self, end: usize) {
        let mut v = Some(end);
        while let Some(x) = v {
            let px = self.parent[x].unwrap();
            let next = self.mate[px];
            self.mate[x] = Some(px);
            self.mate[px] = Some(x);
            v = next;
        }
    }
}
