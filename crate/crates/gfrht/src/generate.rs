//! Generators for the graph families used in the experiments.
//!
//! Every generator is a pure function of `(spec, seed)` and produces the
//! same adjacency matrix bit for bit on every run; see [`crate::rng`] for
//! the generator algorithm.

use ndarray::Array2;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng::SplitMix64;
use crate::scalar::Scalar;

/// Reverse-direction weight on scale-free edges; the dominant direction has
/// weight 1.
pub const SCALE_FREE_BACK_WEIGHT: f64 = 0.25;

/// The five-person directed social network used as the running example:
/// an entry of 1 at (i, j) means person i influences person j.
pub const SOCIAL5: [[f64; 5]; 5] = [
    [0.0, 1.0, 1.0, 0.0, 1.0],
    [0.0, 0.0, 0.0, 1.0, 0.0],
    [0.0, 0.0, 0.0, 1.0, 0.0],
    [0.0, 0.0, 0.0, 0.0, 1.0],
    [1.0, 0.0, 0.0, 0.0, 0.0],
];

/// Graph family specification.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum GraphSpec {
    /// The fixed 5-node social network.
    Social5,
    /// Directed cycle on `n` vertices (the cyclic shift matrix).
    DirectedCycle { n: usize },
    /// Periodic 2-D pixel grid of side `side`: the Kronecker product of two
    /// cyclic shifts, one per image axis.
    Grid2D { side: usize },
    /// Weighted community graph: dense blocks with intra weights uniform in
    /// `(0, 1)`, plus `round(inter_density * cross_pairs)` directed
    /// cross-community edges with weights uniform in `(0, 0.5)`. Returned
    /// spectral-radius normalized.
    Community {
        communities: usize,
        size: usize,
        inter_density: f64,
    },
    /// Scale-free graph: undirected preferential attachment with
    /// `edges_per_node` links per new vertex. Each edge gets a dominant
    /// direction by a fair coin (weight 1) and keeps the reverse direction
    /// at weight [`SCALE_FREE_BACK_WEIGHT`]; a one-way orientation leaves
    /// sinks and acyclic chains whose adjacency is defective and unusable
    /// for spectral filtering. Returned spectral-radius normalized.
    ScaleFree { n: usize, edges_per_node: usize },
}

impl GraphSpec {
    /// Number of vertices the spec produces.
    pub fn node_count(&self) -> usize {
        match self {
            GraphSpec::Social5 => 5,
            GraphSpec::DirectedCycle { n } => *n,
            GraphSpec::Grid2D { side } => side * side,
            GraphSpec::Community {
                communities, size, ..
            } => communities * size,
            GraphSpec::ScaleFree { n, .. } => *n,
        }
    }

    /// Builds the graph. Deterministic given `(self, seed)`.
    pub fn generate<T: Scalar>(&self, seed: u64) -> Result<Graph<T>> {
        match *self {
            GraphSpec::Social5 => {
                let m = Array2::from_shape_fn((5, 5), |(i, j)| T::from_f64(SOCIAL5[i][j]).unwrap());
                Graph::from_adjacency(m, "social5")
            }
            GraphSpec::DirectedCycle { n } => {
                if n < 2 {
                    return Err(Error::BadSpec(format!("cycle needs n >= 2, got {n}")));
                }
                Graph::from_adjacency(cyclic_shift::<T>(n), format!("cycle{n}"))
            }
            GraphSpec::Grid2D { side } => {
                if side < 2 {
                    return Err(Error::BadSpec(format!("grid needs side >= 2, got {side}")));
                }
                let c = cyclic_shift::<T>(side);
                Graph::from_adjacency(kronecker(&c, &c), format!("grid{side}x{side}"))
            }
            GraphSpec::Community {
                communities,
                size,
                inter_density,
            } => {
                if communities == 0 || size == 0 || communities * size < 2 {
                    return Err(Error::BadSpec(format!(
                        "community graph needs at least 2 nodes, got {communities}x{size}"
                    )));
                }
                if !(inter_density > 0.0 && inter_density < 1.0) {
                    return Err(Error::BadSpec(format!(
                        "inter_density must lie in (0, 1), got {inter_density}"
                    )));
                }
                community::<T>(communities, size, inter_density, seed)?.normalize_spectral_radius()
            }
            GraphSpec::ScaleFree { n, edges_per_node } => {
                if n < 2 {
                    return Err(Error::BadSpec(format!("scale-free needs n >= 2, got {n}")));
                }
                if edges_per_node == 0 || edges_per_node >= n {
                    return Err(Error::BadSpec(format!(
                        "edges_per_node must lie in [1, n), got {edges_per_node}"
                    )));
                }
                scale_free::<T>(n, edges_per_node, seed)?.normalize_spectral_radius()
            }
        }
    }
}

/// The `n x n` cyclic shift: row i has a single 1 in column `(i + 1) mod n`.
fn cyclic_shift<T: Scalar>(n: usize) -> Array2<T> {
    let mut m = Array2::zeros((n, n));
    for i in 0..n {
        m[(i, (i + 1) % n)] = T::one();
    }
    m
}

/// Dense Kronecker product.
pub fn kronecker<T: Scalar>(a: &Array2<T>, b: &Array2<T>) -> Array2<T> {
    let (ar, ac) = a.dim();
    let (br, bc) = b.dim();
    let mut out = Array2::zeros((ar * br, ac * bc));
    for ((i, j), &av) in a.indexed_iter() {
        if av == T::zero() {
            continue;
        }
        for ((k, l), &bv) in b.indexed_iter() {
            out[(i * br + k, j * bc + l)] = av * bv;
        }
    }
    out
}

fn community<T: Scalar>(
    communities: usize,
    size: usize,
    inter_density: f64,
    seed: u64,
) -> Result<Graph<T>> {
    let n = communities * size;
    let mut rng = SplitMix64::new(seed);
    let mut m = Array2::<T>::zeros((n, n));

    // dense intra-community blocks, row-major draw order
    for c in 0..communities {
        let base = c * size;
        for i in 0..size {
            for j in 0..size {
                if i != j {
                    m[(base + i, base + j)] = T::from_f64(rng.uniform(0.0, 1.0)).unwrap();
                }
            }
        }
    }

    // ordered cross-community pairs, enumerated row-major
    let mut cross: Vec<(usize, usize)> = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            if i != j && i / size != j / size {
                cross.push((i, j));
            }
        }
    }
    let count = (inter_density * cross.len() as f64).round() as usize;
    // partial Fisher-Yates: the first `count` entries become the sample
    for k in 0..count.min(cross.len()) {
        let pick = k + rng.below(cross.len() - k);
        cross.swap(k, pick);
    }
    for &(i, j) in cross.iter().take(count) {
        m[(i, j)] = T::from_f64(rng.uniform(0.0, 0.5)).unwrap();
    }

    Graph::from_adjacency(
        m,
        format!("community-{communities}x{size}-d{inter_density}-s{seed}"),
    )
}

fn scale_free<T: Scalar>(n: usize, m_edges: usize, seed: u64) -> Result<Graph<T>> {
    let mut rng = SplitMix64::new(seed);
    // undirected preferential attachment: new vertex v picks m distinct
    // targets from the degree-weighted multiset of earlier endpoints; the
    // first vertex past the seed set connects to all seed vertices
    let mut repeated: Vec<usize> = Vec::new();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut targets: Vec<usize> = (0..m_edges).collect();
    for v in m_edges..n {
        for &t in &targets {
            edges.push((v, t));
        }
        repeated.extend(targets.iter().copied());
        repeated.extend(std::iter::repeat_n(v, m_edges));
        let mut next: Vec<usize> = Vec::with_capacity(m_edges);
        while next.len() < m_edges {
            let cand = repeated[rng.below(repeated.len())];
            if !next.contains(&cand) {
                next.push(cand);
            }
        }
        targets = next;
    }

    // dominant direction by a fair coin, in insertion order; the reverse
    // link stays at the fixed back weight
    let back = T::from_f64(SCALE_FREE_BACK_WEIGHT).unwrap();
    let mut adj = Array2::<T>::zeros((n, n));
    for (u, v) in edges {
        if rng.next_u64() & 1 == 0 {
            adj[(u, v)] = T::one();
            adj[(v, u)] = back;
        } else {
            adj[(v, u)] = T::one();
            adj[(u, v)] = back;
        }
    }
    Graph::from_adjacency(adj, format!("scalefree-{n}-m{m_edges}-s{seed}"))
}
