//! Weighted graphs as resistive electrical networks.
//!
//! `netid` builds the discrete Laplacian `L = D − A` of a metrized graph,
//! its Moore–Penrose pseudoinverse `L⁺`, effective resistances, three-point
//! voltages `j_p(q,s)`, equilibrium measures and the reversible random walk
//! `p_it = C_it / C_i`, and certifies the voltage analogues of the extended
//! Foster identities to floating-point precision.
//!
//! ```
//! use netid::{Certifier, MetrizedGraph, NetworkAnalysis, Sources};
//!
//! let g = MetrizedGraph::parse_edge_list("a b 1\nb c 1\nc a 1")?;
//! let net = NetworkAnalysis::new(&g)?;
//! assert!((net.resistance().get(0, 1) - 2.0 / 3.0).abs() < 1e-12);
//!
//! let report = Certifier::new(&net, 1e-8).full_report(Sources::All, 5)?;
//! assert!(report.pass);
//! # Ok::<(), netid::Error>(())
//! ```
//!
//! Runnable walkthroughs live in `examples/`; the `netid` binary exposes the
//! same computations from the command line.

pub mod analysis;
pub mod cli;
pub mod error;
pub mod format;
pub mod foster;
pub mod generate;
pub mod graph;
pub mod markov;
pub mod network;
pub mod spectral;

pub use analysis::NetworkAnalysis;
pub use error::{Error, Result};
pub use foster::{Certifier, IdentityCheck, IdentityName, IdentityReport, Sources, DEFAULT_TOLERANCE};
pub use generate::{random_graph, random_multigraph, RandomGraphSpec};
pub use graph::{ConductanceProfile, Edge, MetrizedGraph};
pub use markov::TransitionKernel;
pub use network::{EquilibriumMeasure, EquilibriumSystem, ResistanceMatrix, YReduction};
pub use spectral::{DiscreteLaplacian, PenroseResiduals, PseudoInverse};
