//! Digraphs, homomorphism brute force, and bipartiteness.

use crate::error::{Error, Result};

/// Default cap on the brute-force homomorphism search space.
pub const DEFAULT_SEARCH_CAP: u128 = 50_000_000;

/// A digraph on vertices `1..=vertex_count` with an ordered list of directed
/// edges. Loops are allowed; duplicate edges are not.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
}

impl Digraph {
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if vertex_count == 0 {
            return Err(Error::Argument("digraph needs at least one vertex".into()));
        }
        let mut seen = std::collections::HashSet::new();
        for &(u, v) in &edges {
            if u == 0 || v == 0 || u > vertex_count || v > vertex_count {
                return Err(Error::Argument(format!(
                    "edge ({u},{v}) out of range for {vertex_count} vertices"
                )));
            }
            if !seen.insert((u, v)) {
                return Err(Error::Argument(format!("duplicate edge ({u},{v})")));
            }
        }
        Ok(Digraph { vertex_count, edges })
    }

    /// The clique on `n` vertices: every ordered pair of distinct vertices.
    pub fn clique(n: usize) -> Result<Self> {
        let mut edges = Vec::new();
        for u in 1..=n {
            for v in 1..=n {
                if u != v {
                    edges.push((u, v));
                }
            }
        }
        Digraph::new(n, edges)
    }

    /// The directed cycle on `n` vertices; `n = 1` is a single loop.
    pub fn cycle(n: usize) -> Result<Self> {
        let edges = (1..=n).map(|u| (u, u % n + 1)).collect();
        Digraph::new(n, edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u, v))
    }

    pub fn is_loopless(&self) -> bool {
        self.edges.iter().all(|&(u, v)| u != v)
    }

    /// Undirected adjacency, ignoring edge orientation.
    fn undirected_neighbours(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertex_count + 1];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }
}

/// Exhaustive search for a homomorphism from `g` to `h`: a vertex map such
/// that every edge of `g` lands on an edge of `h`. Returns the
/// lexicographically first homomorphism as a 1-based image vector, if any.
pub fn brute_homomorphism(g: &Digraph, h: &Digraph) -> Result<Option<Vec<usize>>> {
    brute_homomorphism_capped(g, h, DEFAULT_SEARCH_CAP)
}

/// As [`brute_homomorphism`] with an explicit cap on `|V(h)|^{|V(g)|}`.
pub fn brute_homomorphism_capped(
    g: &Digraph,
    h: &Digraph,
    cap: u128,
) -> Result<Option<Vec<usize>>> {
    let space = (h.vertex_count as u128)
        .checked_pow(g.vertex_count as u32)
        .unwrap_or(u128::MAX);
    if space > cap {
        return Err(Error::Capacity(format!(
            "homomorphism search space {space} exceeds cap {cap}"
        )));
    }
    let mut edge_set = std::collections::HashSet::new();
    for &(u, v) in h.edges() {
        edge_set.insert((u, v));
    }
    let mut image = vec![0usize; g.vertex_count + 1];
    if assign(g, h.vertex_count, &edge_set, &mut image, 1) {
        return Ok(Some(image[1..].to_vec()));
    }
    Ok(None)
}

fn assign(
    g: &Digraph,
    h_vertices: usize,
    h_edges: &std::collections::HashSet<(usize, usize)>,
    image: &mut Vec<usize>,
    vertex: usize,
) -> bool {
    if vertex > g.vertex_count() {
        return true;
    }
    'candidates: for a in 1..=h_vertices {
        image[vertex] = a;
        for &(u, v) in g.edges() {
            if u <= vertex && v <= vertex && !h_edges.contains(&(image[u], image[v])) {
                continue 'candidates;
            }
        }
        if assign(g, h_vertices, h_edges, image, vertex + 1) {
            return true;
        }
    }
    image[vertex] = 0;
    false
}

/// Whether the underlying undirected graph is 2-colourable.
pub fn is_bipartite(g: &Digraph) -> bool {
    let adj = g.undirected_neighbours();
    let mut colour = vec![0u8; g.vertex_count() + 1];
    for start in 1..=g.vertex_count() {
        if colour[start] != 0 {
            continue;
        }
        colour[start] = 1;
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if colour[v] == 0 {
                    colour[v] = 3 - colour[u];
                    queue.push_back(v);
                } else if colour[v] == colour[u] {
                    return false;
                }
            }
        }
    }
    true
}
