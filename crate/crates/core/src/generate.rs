//! Seeded random graph generators.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::MetrizedGraph;

/// Parameters for [`random_graph`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RandomGraphSpec {
    pub n: usize,
    pub edge_prob: f64,
    pub min_length: f64,
    pub max_length: f64,
    pub seed: u64,
}

impl RandomGraphSpec {
    pub fn new(n: usize, edge_prob: f64, seed: u64) -> Self {
        Self {
            n,
            edge_prob,
            min_length: 0.1,
            max_length: 10.0,
            seed,
        }
    }

    pub fn lengths(mut self, min: f64, max: f64) -> Self {
        self.min_length = min;
        self.max_length = max;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::Domain(format!("random graph needs n ≥ 2, got {}", self.n)));
        }
        if !(0.0..=1.0).contains(&self.edge_prob) {
            return Err(Error::Domain(format!(
                "edge probability must lie in [0, 1], got {}",
                self.edge_prob
            )));
        }
        if !(self.min_length > 0.0 && self.min_length <= self.max_length && self.max_length.is_finite()) {
            return Err(Error::Domain(format!(
                "length range must satisfy 0 < min ≤ max < ∞, got [{}, {}]",
                self.min_length, self.max_length
            )));
        }
        Ok(())
    }
}

fn length(rng: &mut ChaCha8Rng, spec: &RandomGraphSpec) -> f64 {
    if spec.min_length == spec.max_length {
        spec.min_length
    } else {
        rng.random_range(spec.min_length..spec.max_length)
    }
}

fn random_tree(rng: &mut ChaCha8Rng, n: usize) -> Vec<(usize, usize)> {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    (1..n)
        .map(|i| {
            let j = rng.random_range(0..i);
            (order[j].min(order[i]), order[j].max(order[i]))
        })
        .collect()
}

fn build(edges: Vec<(usize, usize, f64)>) -> Result<MetrizedGraph> {
    MetrizedGraph::from_edges(
        edges
            .into_iter()
            .map(|(a, b, l)| (format!("v{a}"), format!("v{b}"), l)),
    )
}

/// Connected simple graph on vertices `v0..v{n-1}`: a random spanning tree
/// plus every other pair independently with probability `edge_prob`.
/// Lengths are uniform on `[min_length, max_length)`.
pub fn random_graph(spec: RandomGraphSpec) -> Result<MetrizedGraph> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let tree = random_tree(&mut rng, spec.n);
    let mut present = vec![false; spec.n * spec.n];
    for &(a, b) in &tree {
        present[a * spec.n + b] = true;
    }
    let mut edges: Vec<(usize, usize, f64)> = tree
        .into_iter()
        .map(|(a, b)| (a, b, length(&mut rng, &spec)))
        .collect();
    for a in 0..spec.n {
        for b in a + 1..spec.n {
            if !present[a * spec.n + b] && rng.random_bool(spec.edge_prob) {
                edges.push((a, b, length(&mut rng, &spec)));
            }
        }
    }
    build(edges)
}

/// Connected multigraph: a random spanning tree plus `extra` edges whose
/// endpoints are drawn uniformly (so self-loops and parallel edges occur),
/// and `loops` guaranteed self-loops.
pub fn random_multigraph(spec: RandomGraphSpec, extra: usize, loops: usize) -> Result<MetrizedGraph> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut edges: Vec<(usize, usize, f64)> = random_tree(&mut rng, spec.n)
        .into_iter()
        .map(|(a, b)| (a, b, length(&mut rng, &spec)))
        .collect();
    for _ in 0..extra {
        let a = rng.random_range(0..spec.n);
        let b = rng.random_range(0..spec.n);
        edges.push((a, b, length(&mut rng, &spec)));
    }
    for _ in 0..loops {
        let a = rng.random_range(0..spec.n);
        edges.push((a, a, length(&mut rng, &spec)));
    }
    // Duplicate a few edges outright so parallel bundles are always present.
    if let Some(&(a, b, _)) = edges.first() {
        let l = length(&mut rng, &spec);
        edges.push((a, b, l));
    }
    edges.shuffle(&mut rng);
    build(edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_vertices_give_single_edge() {
        for prob in [0.0, 0.5, 1.0] {
            let g = random_graph(RandomGraphSpec::new(2, prob, 3)).unwrap();
            assert_eq!((g.n(), g.e()), (2, 1));
        }
    }

    #[test]
    fn generated_graphs_are_connected_and_optimal() {
        let g = random_graph(RandomGraphSpec::new(50, 0.1, 7)).unwrap();
        assert_eq!(g.n(), 50);
        assert!(g.is_optimal());
        assert!(g.e() >= 49);
        assert!(g
            .edges()
            .iter()
            .all(|e| (0.1..10.0).contains(&e.length)));
    }

    #[test]
    fn generation_is_deterministic() {
        let spec = RandomGraphSpec::new(30, 0.2, 11);
        assert_eq!(random_graph(spec).unwrap(), random_graph(spec).unwrap());
        assert_ne!(
            random_graph(spec).unwrap(),
            random_graph(RandomGraphSpec { seed: 12, ..spec }).unwrap()
        );
    }

    #[test]
    fn complete_graph_at_probability_one() {
        let g = random_graph(RandomGraphSpec::new(6, 1.0, 1)).unwrap();
        assert_eq!(g.e(), 15);
    }

    #[test]
    fn multigraph_has_loops_and_parallels() {
        let g = random_multigraph(RandomGraphSpec::new(8, 0.0, 5), 10, 2).unwrap();
        assert!(!g.is_optimal());
        assert!(g.edges().iter().any(|e| e.is_loop()));
    }

    #[test]
    fn bad_parameters() {
        assert!(random_graph(RandomGraphSpec::new(1, 0.5, 0)).is_err());
        assert!(random_graph(RandomGraphSpec::new(5, 1.5, 0)).is_err());
        assert!(random_graph(RandomGraphSpec::new(5, 0.5, 0).lengths(0.0, 1.0)).is_err());
        assert!(random_graph(RandomGraphSpec::new(5, 0.5, 0).lengths(2.0, 1.0)).is_err());
    }
}
