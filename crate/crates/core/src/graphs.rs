//! Dual polar graphs, collinearity graphs, distances and spectral checks.

use crate::error::{Error, Result};
use crate::exactla::{self, ExactMatrix};
use crate::forms::PolarSpaceDescriptor;
use crate::isotropic::{self, Subspace};

use num::BigInt;

/// A finite simple graph, stored both as an adjacency matrix and as
/// neighbor lists (the two consumers here want different access patterns).
#[derive(Clone, Debug)]
pub struct Graph {
    n: usize,
    adj: Vec<bool>,
    nbrs: Vec<Vec<usize>>,
}

impl Graph {
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Graph {
        let mut adj = vec![false; n * n];
        let mut nbrs = vec![Vec::new(); n];
        for &(i, j) in edges {
            assert!(i != j && i < n && j < n, "bad edge ({i}, {j})");
            if !adj[i * n + j] {
                adj[i * n + j] = true;
                adj[j * n + i] = true;
                nbrs[i].push(j);
                nbrs[j].push(i);
            }
        }
        for list in &mut nbrs {
            list.sort_unstable();
        }
        Graph { n, adj, nbrs }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_edge(&self, i: usize, j: usize) -> bool {
        self.adj[i * self.n + j]
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.nbrs[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.nbrs[i].len()
    }

    pub fn edge_count(&self) -> usize {
        self.nbrs.iter().map(|l| l.len()).sum::<usize>() / 2
    }

    /// Edges as (i, j) with i < j, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for i in 0..self.n {
            for &j in &self.nbrs[i] {
                if i < j {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

/// Vertices are generators; adjacency is intersection in dimension d-1.
pub fn dual_polar_graph(p: &PolarSpaceDescriptor, generators: &[Subspace]) -> Graph {
    let f = p.field();
    let d = p.d();
    let mut edges = Vec::new();
    for i in 0..generators.len() {
        for j in i + 1..generators.len() {
            let dim = isotropic::intersection_dim(f, &generators[i], &generators[j])
                .expect("generators share an ambient space");
            if dim == d - 1 {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(generators.len(), &edges)
}

/// Vertices are points; adjacency is a totally isotropic span.
pub fn collinearity_graph(p: &PolarSpaceDescriptor, points: &[Subspace]) -> Graph {
    let mut edges = Vec::new();
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let u = points[i].point_vector();
            let v = points[j].point_vector();
            // Both endpoints are singular points, so the span is totally
            // isotropic exactly when they are orthogonal.
            if p.b_eval(u, v).unwrap().is_zero() {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(points.len(), &edges)
}

/// BFS distances from one source.  Errors if the graph is disconnected.
pub fn bfs_distances(g: &Graph, source: usize) -> Result<Vec<u32>> {
    let mut dist = vec![u32::MAX; g.n()];
    let mut queue = std::collections::VecDeque::new();
    dist[source] = 0;
    queue.push_back(source);
    while let Some(v) = queue.pop_front() {
        for &w in g.neighbors(v) {
            if dist[w] == u32::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    if dist.iter().any(|&d| d == u32::MAX) {
        return Err(Error::InvariantViolation(format!(
            "graph is disconnected from vertex {source}"
        )));
    }
    Ok(dist)
}

pub fn all_pairs_distances(g: &Graph) -> Result<Vec<Vec<u32>>> {
    (0..g.n()).map(|v| bfs_distances(g, v)).collect()
}

/// BFS distance must equal d - dim(U intersect W) for every pair of
/// generators.  Errors with the first violating pair.
pub fn check_distance_law(
    p: &PolarSpaceDescriptor,
    g: &Graph,
    generators: &[Subspace],
) -> Result<()> {
    let f = p.field();
    let d = p.d();
    let dist = all_pairs_distances(g)?;
    for i in 0..generators.len() {
        for j in 0..generators.len() {
            let dim = isotropic::intersection_dim(f, &generators[i], &generators[j])?;
            if dist[i][j] as usize != d - dim {
                return Err(Error::InvariantViolation(format!(
                    "distance law fails at pair ({i}, {j}): bfs {} vs {}",
                    dist[i][j],
                    d - dim
                )));
            }
        }
    }
    Ok(())
}

/// Measured strongly regular parameters.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct SrgParams {
    pub n: usize,
    pub k: usize,
    pub a: usize,
    pub c: usize,
}

/// Verify regularity and constant common-neighbor counts exhaustively, and
/// return the measured (n, k, a, c).
pub fn measure_srg(g: &Graph) -> Result<SrgParams> {
    let n = g.n();
    if n == 0 {
        return Err(Error::InvalidParameter("empty graph".into()));
    }
    let k = g.degree(0);
    for v in 1..n {
        if g.degree(v) != k {
            return Err(Error::InvariantViolation(format!(
                "not regular: deg({v}) = {} vs deg(0) = {k}",
                g.degree(v)
            )));
        }
    }
    let mut a: Option<usize> = None;
    let mut c: Option<usize> = None;
    for i in 0..n {
        for j in i + 1..n {
            let common = g
                .neighbors(i)
                .iter()
                .filter(|&&x| g.is_edge(j, x))
                .count();
            let slot = if g.is_edge(i, j) { &mut a } else { &mut c };
            match *slot {
                None => *slot = Some(common),
                Some(prev) if prev != common => {
                    return Err(Error::InvariantViolation(format!(
                        "common-neighbor count not constant at pair ({i}, {j}): {common} vs {prev}"
                    )));
                }
                _ => {}
            }
        }
    }
    let a = a.ok_or_else(|| Error::InvariantViolation("graph has no edges".into()))?;
    let c = c.ok_or_else(|| Error::InvariantViolation("graph is complete".into()))?;
    Ok(SrgParams { n, k, a, c })
}

/// Geometric multiplicity of an integer eigenvalue candidate, via the exact
/// rank of A - theta I over the rationals.  Zero for non-eigenvalues.
pub fn eigen_multiplicity(g: &Graph, theta: i64) -> usize {
    let n = g.n();
    let m = ExactMatrix::from_fn(n, n, |i, j| {
        let mut v = BigInt::from(g.is_edge(i, j) as i64);
        if i == j {
            v -= BigInt::from(theta);
        }
        v
    });
    n - exactla::rank_exact(&m)
}
