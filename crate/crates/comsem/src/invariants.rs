use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::par;

/// Vertex count limit for the exact chromatic solver.
pub const CHROMATIC_LIMIT: usize = 64;
/// Vertex count limit for the exact isomorphism solver.
pub const ISOMORPHISM_LIMIT: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Girth {
    Finite(usize),
    /// Acyclic graph.
    Infinite,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Diameter {
    Finite(usize),
    Disconnected,
}

/// Fixed-size bitset over vertex indices.
#[derive(Clone, PartialEq, Eq)]
struct Bits {
    words: Vec<u64>,
}

impl Bits {
    fn empty(n: usize) -> Bits {
        Bits {
            words: vec![0; n.div_ceil(64)],
        }
    }

    fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    fn clear(&mut self, i: usize) {
        self.words[i / 64] &= !(1 << (i % 64));
    }

    fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    fn and(&self, other: &Bits) -> Bits {
        Bits {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    fn and_count(&self, other: &Bits) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    fn minus(&self, other: &Bits) -> Bits {
        Bits {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & !b)
                .collect(),
        }
    }

    fn ones(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (wi, &w) in self.words.iter().enumerate() {
            let mut w = w;
            while w != 0 {
                let b = w.trailing_zeros() as usize;
                out.push(wi * 64 + b);
                w &= w - 1;
            }
        }
        out
    }
}

fn adjacency_bits(g: &Graph) -> Vec<Bits> {
    let n = g.order();
    (0..n)
        .map(|v| {
            let mut b = Bits::empty(n);
            for &u in g.neighbors(v) {
                b.set(u);
            }
            b
        })
        .collect()
}

/// A maximum clique, found by Bron-Kerbosch with pivoting and a size bound.
/// Deterministic: candidates expand in ascending vertex order.
pub fn max_clique(g: &Graph) -> Vec<usize> {
    let n = g.order();
    if n == 0 {
        return Vec::new();
    }
    let adj = adjacency_bits(g);
    let mut p = Bits::empty(n);
    for v in 0..n {
        p.set(v);
    }
    let mut best = Vec::new();
    let mut current = Vec::new();
    expand(&adj, &mut current, p, Bits::empty(n), &mut best);
    best
}

fn expand(adj: &[Bits], current: &mut Vec<usize>, mut p: Bits, mut x: Bits, best: &mut Vec<usize>) {
    if p.is_empty() && x.is_empty() {
        if current.len() > best.len() {
            *best = current.clone();
        }
        return;
    }
    if current.len() + p.count() <= best.len() {
        return;
    }
    // pivot on the vertex covering most of p
    let mut pivot = None;
    let mut pivot_cover = 0;
    for u in p.ones().into_iter().chain(x.ones()) {
        let cover = p.and_count(&adj[u]);
        if pivot.is_none() || cover > pivot_cover {
            pivot = Some(u);
            pivot_cover = cover;
        }
    }
    let candidates = match pivot {
        Some(u) => p.minus(&adj[u]).ones(),
        None => p.ones(),
    };
    for v in candidates {
        current.push(v);
        expand(adj, current, p.and(&adj[v]), x.and(&adj[v]), best);
        current.pop();
        p.clear(v);
        x.set(v);
    }
}

pub fn clique_number(g: &Graph) -> usize {
    max_clique(g).len()
}

pub fn is_clique(g: &Graph, vertices: &[usize]) -> bool {
    vertices
        .iter()
        .enumerate()
        .all(|(i, &u)| vertices[i + 1..].iter().all(|&v| g.has_edge(u, v)))
}

/// Exact girth. For each root, a BFS tree is built and every non-tree edge
/// closes a cycle of length at most `dist[u] + dist[w] + 1`; the minimum of
/// those bounds over all roots is the girth.
pub fn girth(g: &Graph) -> Girth {
    let n = g.order();
    if g.size() == 0 {
        return Girth::Infinite;
    }
    let per_root = par::map_range(n, |root| {
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        let mut queue = VecDeque::new();
        dist[root] = 0;
        queue.push_back(root);
        let mut best = usize::MAX;
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbors(u) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                } else if parent[w] != u && parent[u] != w {
                    best = best.min(dist[u] + dist[w] + 1);
                }
            }
        }
        best
    });
    match per_root.into_iter().min() {
        Some(b) if b != usize::MAX => Girth::Finite(b),
        _ => Girth::Infinite,
    }
}

fn bfs_distances(g: &Graph, root: usize) -> Vec<usize> {
    let n = g.order();
    let mut dist = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    dist[root] = 0;
    queue.push_back(root);
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Exact diameter by breadth-first search from every vertex. The empty and
/// one-vertex graphs have diameter 0.
pub fn diameter(g: &Graph) -> Diameter {
    let n = g.order();
    if n == 0 {
        return Diameter::Finite(0);
    }
    let eccentricities = par::map_range(n, |root| {
        let dist = bfs_distances(g, root);
        dist.into_iter().max().expect("nonempty")
    });
    let mut diam = 0;
    for e in eccentricities {
        if e == usize::MAX {
            return Diameter::Disconnected;
        }
        diam = diam.max(e);
    }
    Diameter::Finite(diam)
}

pub fn is_connected(g: &Graph) -> bool {
    let n = g.order();
    if n <= 1 {
        return true;
    }
    bfs_distances(g, 0).into_iter().all(|d| d != usize::MAX)
}

/// A vertex adjacent to everything else. Graphs on at most one vertex have
/// none by convention.
pub fn star_vertex(g: &Graph) -> Option<usize> {
    let n = g.order();
    if n <= 1 {
        return None;
    }
    (0..n).find(|&v| g.degree(v) == n - 1)
}

pub fn is_star_free(g: &Graph) -> bool {
    star_vertex(g).is_none()
}

/// Exact chromatic number for graphs on at most `CHROMATIC_LIMIT` vertices.
/// Branch and bound between the clique lower bound and a greedy upper
/// bound, with DSATUR vertex selection and new colors capped at one past
/// the current maximum.
pub fn chromatic_number(g: &Graph) -> Result<usize> {
    let n = g.order();
    if n == 0 {
        return Ok(0);
    }
    if n > CHROMATIC_LIMIT {
        return Err(Error::TooLarge {
            solver: "chromatic number",
            order: n,
            limit: CHROMATIC_LIMIT,
        });
    }
    if g.size() == 0 {
        return Ok(1);
    }
    let clique = max_clique(g);
    let lower = clique.len();
    let upper = greedy_bound(g);
    if lower == upper {
        return Ok(lower);
    }
    for k in lower..upper {
        if k_colorable(g, k, &clique) {
            return Ok(k);
        }
    }
    Ok(upper)
}

fn greedy_bound(g: &Graph) -> usize {
    let n = g.order();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
    let mut colors = vec![usize::MAX; n];
    let mut used = 0;
    for v in order {
        let mut taken = 0u64;
        for &u in g.neighbors(v) {
            if colors[u] != usize::MAX {
                taken |= 1 << colors[u];
            }
        }
        let c = (0..64).find(|&c| taken >> c & 1 == 0).expect("n <= 64");
        colors[v] = c;
        used = used.max(c + 1);
    }
    used
}

struct ColorSearch<'a> {
    g: &'a Graph,
    k: usize,
    colors: Vec<usize>,
    /// bitmask of colors on each vertex's neighbors
    saturation: Vec<u64>,
    uncolored: usize,
}

impl ColorSearch<'_> {
    fn solve(&mut self, max_used: usize) -> bool {
        if self.uncolored == 0 {
            return true;
        }
        // DSATUR: most saturated vertex, then highest degree, then index
        let v = (0..self.g.order())
            .filter(|&v| self.colors[v] == usize::MAX)
            .max_by_key(|&v| (self.saturation[v].count_ones(), self.g.degree(v), std::cmp::Reverse(v)))
            .expect("some vertex uncolored");
        let cap = self.k.min(max_used + 1);
        for c in 0..cap {
            if self.saturation[v] >> c & 1 == 1 {
                continue;
            }
            self.colors[v] = c;
            self.uncolored -= 1;
            let mut touched = Vec::new();
            for &u in self.g.neighbors(v) {
                if self.saturation[u] >> c & 1 == 0 {
                    self.saturation[u] |= 1 << c;
                    touched.push(u);
                }
            }
            if self.solve(max_used.max(c + 1)) {
                return true;
            }
            for u in touched {
                self.saturation[u] &= !(1 << c);
            }
            self.colors[v] = usize::MAX;
            self.uncolored += 1;
        }
        false
    }
}

fn k_colorable(g: &Graph, k: usize, clique: &[usize]) -> bool {
    let n = g.order();
    if clique.len() > k {
        return false;
    }
    let mut search = ColorSearch {
        g,
        k,
        colors: vec![usize::MAX; n],
        saturation: vec![0; n],
        uncolored: n,
    };
    // precolor a maximum clique; its colors are forced up to symmetry
    for (c, &v) in clique.iter().enumerate() {
        search.colors[v] = c;
        search.uncolored -= 1;
        for &u in g.neighbors(v) {
            search.saturation[u] |= 1 << c;
        }
    }
    search.solve(clique.len())
}

/// Exact isomorphism test for graphs on at most `ISOMORPHISM_LIMIT`
/// vertices: degree-pruned backtracking on vertex maps.
pub fn are_isomorphic(g: &Graph, h: &Graph) -> Result<bool> {
    let n = g.order();
    let limit = ISOMORPHISM_LIMIT;
    if n > limit || h.order() > limit {
        return Err(Error::TooLarge {
            solver: "isomorphism",
            order: n.max(h.order()),
            limit,
        });
    }
    if n != h.order() || g.size() != h.size() {
        return Ok(false);
    }
    let mut gd: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut hd: Vec<usize> = (0..n).map(|v| h.degree(v)).collect();
    gd.sort_unstable();
    hd.sort_unstable();
    if gd != hd {
        return Ok(false);
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    Ok(extend_map(g, h, &order, 0, &mut map, &mut used))
}

fn extend_map(
    g: &Graph,
    h: &Graph,
    order: &[usize],
    depth: usize,
    map: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> bool {
    if depth == order.len() {
        return true;
    }
    let v = order[depth];
    for u in 0..h.order() {
        if used[u] || h.degree(u) != g.degree(v) {
            continue;
        }
        let consistent = order[..depth].iter().all(|&w| {
            g.has_edge(v, w) == h.has_edge(u, map[w])
        });
        if !consistent {
            continue;
        }
        map[v] = u;
        used[u] = true;
        if extend_map(g, h, order, depth + 1, map, used) {
            return true;
        }
        used[u] = false;
        map[v] = usize::MAX;
    }
    false
}

/// The full invariant bundle for one graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphInvariants {
    pub order: usize,
    pub size: usize,
    pub clique_number: usize,
    /// `None` when the graph is acyclic.
    pub girth: Option<usize>,
    /// Distinguishes "acyclic" from a missing value when reading the JSON.
    pub girth_finite: bool,
    /// `None` when the graph is disconnected.
    pub diameter: Option<usize>,
    pub chromatic_number: usize,
    pub is_connected: bool,
    pub is_star_free: bool,
}

impl GraphInvariants {
    pub fn compute(g: &Graph) -> Result<GraphInvariants> {
        let girth = match girth(g) {
            Girth::Finite(k) => Some(k),
            Girth::Infinite => None,
        };
        Ok(GraphInvariants {
            order: g.order(),
            size: g.size(),
            clique_number: clique_number(g),
            girth,
            girth_finite: girth.is_some(),
            diameter: match diameter(g) {
                Diameter::Finite(d) => Some(d),
                Diameter::Disconnected => None,
            },
            chromatic_number: chromatic_number(g)?,
            is_connected: is_connected(g),
            is_star_free: is_star_free(g),
        })
    }
}
