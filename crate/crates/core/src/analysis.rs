//! Everything derived from one optimal graph, computed once.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::graph::{ConductanceProfile, MetrizedGraph};
use crate::markov::TransitionKernel;
use crate::network::{EquilibriumSystem, ResistanceMatrix};
use crate::spectral::{DiscreteLaplacian, PseudoInverse};

/// A graph on an optimal vertex set together with its Laplacian,
/// pseudoinverse, resistances and transition kernel. Equilibrium measures
/// need `n` extra solves and are computed on first use.
#[derive(Debug)]
pub struct NetworkAnalysis {
    graph: MetrizedGraph,
    conductance: ConductanceProfile,
    laplacian: DiscreteLaplacian,
    pinv: PseudoInverse,
    resistance: ResistanceMatrix,
    kernel: TransitionKernel,
    equilibria: OnceLock<EquilibriumSystem>,
}

impl NetworkAnalysis {
    /// Optimalizes `graph` (a no-op when it is already optimal) and runs the
    /// dense computations. Needs at least two vertices after optimalization.
    pub fn new(graph: &MetrizedGraph) -> Result<Self> {
        let graph = graph.optimalize();
        if graph.n() < 2 {
            return Err(Error::Domain("network analysis needs at least two vertices".into()));
        }
        let conductance = ConductanceProfile::new(&graph)?;
        let laplacian = DiscreteLaplacian::new(&graph)?;
        let pinv = PseudoInverse::new(&laplacian)?;
        let resistance = ResistanceMatrix::from_pseudo_inverse(&pinv);
        let kernel = TransitionKernel::new(&conductance)?;
        Ok(Self {
            graph,
            conductance,
            laplacian,
            pinv,
            resistance,
            kernel,
            equilibria: OnceLock::new(),
        })
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn graph(&self) -> &MetrizedGraph {
        &self.graph
    }

    pub fn conductance(&self) -> &ConductanceProfile {
        &self.conductance
    }

    pub fn laplacian(&self) -> &DiscreteLaplacian {
        &self.laplacian
    }

    pub fn pinv(&self) -> &PseudoInverse {
        &self.pinv
    }

    pub fn resistance(&self) -> &ResistanceMatrix {
        &self.resistance
    }

    pub fn kernel(&self) -> &TransitionKernel {
        &self.kernel
    }

    pub fn equilibria(&self) -> Result<&EquilibriumSystem> {
        if let Some(sys) = self.equilibria.get() {
            return Ok(sys);
        }
        let sys = EquilibriumSystem::new(&self.laplacian)?;
        Ok(self.equilibria.get_or_init(|| sys))
    }

    /// `j_p(q,s)` from the pseudoinverse.
    pub fn voltage(&self, p: usize, q: usize, s: usize) -> f64 {
        crate::network::voltage(&self.pinv, p, q, s)
    }
}
