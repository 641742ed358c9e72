//! The reversible random walk of a resistive network.
//!
//! From vertex `i` the walk steps to a neighbour `t` with probability
//! `p_it = C_it / C_i`.

use std::sync::{Arc, Mutex};

use nalgebra::DMatrix;
use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::ConductanceProfile;

/// Walks simulated per RNG stream in [`TransitionKernel::simulate_kstep_frequencies`].
pub const WALKS_PER_SHARD: usize = 1 << 16;

/// Row-stochastic transition matrix with memoized powers.
#[derive(Debug)]
pub struct TransitionKernel {
    conductances: Vec<f64>,
    /// `powers[k - 1]` is `P^k`.
    powers: Mutex<Vec<Arc<DMatrix<f64>>>>,
    neighbours: Vec<(Vec<usize>, WeightedIndex<f64>)>,
}

impl TransitionKernel {
    pub fn new(profile: &ConductanceProfile) -> Result<Self> {
        let n = profile.n();
        if n < 2 {
            return Err(Error::Domain(
                "transition kernel needs at least two vertices".into(),
            ));
        }
        let mut p = DMatrix::zeros(n, n);
        let mut neighbours = Vec::with_capacity(n);
        for i in 0..n {
            let ci = profile.vertex(i);
            let adj = profile.neighbours(i);
            for &(t, c) in &adj {
                p[(i, t)] = c / ci;
            }
            let (targets, weights): (Vec<_>, Vec<_>) = adj.into_iter().unzip();
            let dist = WeightedIndex::new(weights)
                .map_err(|e| Error::Domain(format!("vertex {i}: {e}")))?;
            neighbours.push((targets, dist));
        }
        Ok(Self {
            conductances: profile.vertex_conductances().to_vec(),
            powers: Mutex::new(vec![Arc::new(p)]),
            neighbours,
        })
    }

    pub fn n(&self) -> usize {
        self.conductances.len()
    }

    /// `C_i`, the stationary weights of the chain up to normalisation.
    pub fn conductances(&self) -> &[f64] {
        &self.conductances
    }

    /// The one-step matrix `P`.
    pub fn matrix(&self) -> Arc<DMatrix<f64>> {
        self.powers.lock().expect("power cache poisoned")[0].clone()
    }

    /// `P^k` for `k ≥ 1`, computed by repeated multiplication and cached.
    pub fn kstep(&self, k: usize) -> Result<Arc<DMatrix<f64>>> {
        if k == 0 {
            return Err(Error::Domain("step count k must be at least 1".into()));
        }
        let mut powers = self.powers.lock().expect("power cache poisoned");
        while powers.len() < k {
            let next = &*powers[powers.len() - 1] * &*powers[0];
            powers.push(Arc::new(next));
        }
        Ok(powers[k - 1].clone())
    }

    /// `[tr(P^1), …, tr(P^kmax)]`.
    pub fn trace_sequence(&self, kmax: usize) -> Result<Vec<f64>> {
        (1..=kmax).map(|k| Ok(self.kstep(k)?.trace())).collect()
    }

    /// Empirical distribution of the walk position after exactly `k` steps
    /// from `start`, over `walks` independent walks.
    ///
    /// Walks are split into shards of [`WALKS_PER_SHARD`]; shard `j` draws
    /// from ChaCha8 stream `j` keyed by `seed`, so the result depends only on
    /// `(start, k, walks, seed)`.
    pub fn simulate_kstep_frequencies(
        &self,
        start: usize,
        k: usize,
        walks: usize,
        seed: u64,
    ) -> Result<Vec<f64>> {
        let n = self.n();
        if start >= n {
            return Err(Error::VertexOutOfRange { index: start, n });
        }
        if walks == 0 {
            return Err(Error::Domain("number of walks must be at least 1".into()));
        }
        let shards = walks.div_ceil(WALKS_PER_SHARD);
        let counts = (0..shards)
            .into_par_iter()
            .map(|shard| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(shard as u64);
                let len = WALKS_PER_SHARD.min(walks - shard * WALKS_PER_SHARD);
                let mut counts = vec![0u64; n];
                for _ in 0..len {
                    let mut at = start;
                    for _ in 0..k {
                        let (targets, dist) = &self.neighbours[at];
                        at = targets[dist.sample(&mut rng)];
                    }
                    counts[at] += 1;
                }
                counts
            })
            .reduce(
                || vec![0u64; n],
                |mut a, b| {
                    a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                    a
                },
            );
        Ok(counts.into_iter().map(|c| c as f64 / walks as f64).collect())
    }
}
