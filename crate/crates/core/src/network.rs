//! Resistance and voltage functions at vertices, the three-point
//! Y-reduction, and equilibrium measures.
//!
//! Voltages have two independent derivations: from `L⁺` directly and from
//! the equilibrium measures `ν^i`. Both agree with the resistance-based
//! formula `2 j_p(q,s) = r(p,q) + r(p,s) − r(q,s)`.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::spectral::{DiscreteLaplacian, PseudoInverse};

/// Tolerance below which a strictly positive equilibrium value is reported.
pub const EQUILIBRIUM_POSITIVITY_TOLERANCE: f64 = 1e-12;

/// Effective resistances `r(p,q)` between all vertex pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct ResistanceMatrix {
    matrix: DMatrix<f64>,
}

impl ResistanceMatrix {
    /// `r(p,q) = l⁺_pp − 2 l⁺_pq + l⁺_qq`.
    pub fn from_pseudo_inverse(lp: &PseudoInverse) -> Self {
        let n = lp.n();
        let matrix = DMatrix::from_fn(n, n, |p, q| {
            if p == q {
                0.0
            } else {
                (lp.get(p, p) + lp.get(q, q)) - 2.0 * lp.get(p, q)
            }
        });
        Self { matrix }
    }

    pub fn from_matrix(matrix: DMatrix<f64>) -> Self {
        Self { matrix }
    }

    pub fn n(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn get(&self, p: usize, q: usize) -> f64 {
        self.matrix[(p, q)]
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    /// Sum of resistances over unordered pairs (the Kirchhoff index).
    pub fn kirchhoff_index(&self) -> f64 {
        self.matrix.sum() / 2.0
    }
}

pub fn resistance_matrix(lp: &PseudoInverse) -> ResistanceMatrix {
    ResistanceMatrix::from_pseudo_inverse(lp)
}

/// `j_p(q,s) = l⁺_pp − l⁺_pq − l⁺_ps + l⁺_qs`: the potential at `q`, relative
/// to `p`, when unit current enters at `s` and leaves at `p`.
pub fn voltage(lp: &PseudoInverse, p: usize, q: usize, s: usize) -> f64 {
    // Grouped so that swapping q and s gives a bitwise-identical result.
    (lp.get(p, p) + lp.get(q, s)) - (lp.get(p, q) + lp.get(p, s))
}

/// `j_p(q,s) = (r(p,q) + r(p,s) − r(q,s)) / 2`.
pub fn voltage_from_resistance(r: &ResistanceMatrix, p: usize, q: usize, s: usize) -> f64 {
    0.5 * ((r.get(p, q) + r.get(p, s)) - r.get(q, s))
}

/// Branch values of the Y-network equivalent to the terminals `x`, `p`, `q`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct YReduction {
    /// `j_p(x,q)`, the branch at `p`.
    pub at_p: f64,
    /// `j_q(x,p)`, the branch at `q`.
    pub at_q: f64,
    /// `j_x(p,q)`, the branch at `x`.
    pub at_x: f64,
}

impl YReduction {
    /// Pairwise resistances reproduced by the star: `(r(p,x), r(q,x), r(p,q))`.
    pub fn resistances(&self) -> (f64, f64, f64) {
        (self.at_p + self.at_x, self.at_q + self.at_x, self.at_q + self.at_p)
    }
}

/// Y-reduction with respect to three distinct vertices.
pub fn y_reduction(r: &ResistanceMatrix, x: usize, p: usize, q: usize) -> Result<YReduction> {
    if x == p || x == q || p == q {
        return Err(Error::Domain(
            "Y-reduction needs three distinct vertices".into(),
        ));
    }
    Ok(YReduction {
        at_p: voltage_from_resistance(r, p, x, q),
        at_q: voltage_from_resistance(r, q, x, p),
        at_x: voltage_from_resistance(r, x, p, q),
    })
}

/// Solution `ν^i` of `L u = e − n e^i` with `ν^i_i = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct EquilibriumMeasure {
    pub base: usize,
    pub values: DVector<f64>,
}

pub fn equilibrium_measure(lap: &DiscreteLaplacian, i: usize) -> Result<EquilibriumMeasure> {
    let n = lap.n();
    if i >= n {
        return Err(Error::VertexOutOfRange { index: i, n });
    }
    let mut b = DVector::from_element(n, 1.0);
    b[i] -= n as f64;
    let values = lap.solve_centered(&b, i)?;
    for (t, &v) in values.iter().enumerate() {
        if t != i && v <= EQUILIBRIUM_POSITIVITY_TOLERANCE {
            log::warn!("equilibrium measure ν^{i} is not positive at vertex {t}: {v:e}");
        }
    }
    Ok(EquilibriumMeasure { base: i, values })
}

/// All equilibrium measures of a network, one per base vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct EquilibriumSystem {
    /// Row `i` holds `ν^i`.
    measures: DMatrix<f64>,
}

impl EquilibriumSystem {
    pub fn new(lap: &DiscreteLaplacian) -> Result<Self> {
        let n = lap.n();
        let mut measures = DMatrix::zeros(n, n);
        for i in 0..n {
            let nu = equilibrium_measure(lap, i)?;
            measures.row_mut(i).copy_from(&nu.values.transpose());
        }
        Ok(Self { measures })
    }

    pub fn n(&self) -> usize {
        self.measures.nrows()
    }

    /// `ν^i_t`.
    pub fn value(&self, i: usize, t: usize) -> f64 {
        self.measures[(i, t)]
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.measures
    }

    /// `r(i,t) = (ν^i_t + ν^t_i) / n`.
    pub fn resistance(&self, i: usize, t: usize) -> f64 {
        (self.value(i, t) + self.value(t, i)) / self.n() as f64
    }

    /// `2 j_i(s,t) = (ν^i_s + ν^s_i + ν^i_t + ν^t_i − ν^s_t − ν^t_s) / n`.
    pub fn voltage(&self, i: usize, s: usize, t: usize) -> f64 {
        let sum = self.value(i, s) + self.value(s, i) + self.value(i, t) + self.value(t, i)
            - self.value(s, t)
            - self.value(t, s);
        sum / (2.0 * self.n() as f64)
    }
}
