//! Numerical certification of the voltage analogues of the extended Foster
//! identities.
//!
//! For an optimal graph with `n` vertices, every source `s` and `k ≥ 1`:
//!
//! ```text
//! Σ_{i,t} C_i j_i(s,t) p_it^(k)        = n − k + Σ_{m<k} tr(P^m)     (theorem_main)
//! ½ Σ_{i,t} C_i r(i,t) p_it^(k)        = n − k + Σ_{m<k} tr(P^m)     (corollary_main)
//! Σ C_i l⁺_it p_it^(k+1)               = 1 − tr(P^k) + Σ C_i l⁺_it p_it^(k)   (recurrence)
//! Σ C_i l⁺_it p_it^(k)                 = k − n − Σ_{m<k} tr(P^m) + Σ C_i l⁺_ii (trans2)
//! (1/n) Σ C_i ν^i_t p_it^(k)           = n − k + Σ_{m<k} tr(P^m)     (equilibrium_form)
//! ```
//!
//! plus the four low-order path identities, whose left-hand sides are
//! evaluated in symmetrized form over all ordered paths (see
//! [`Certifier::low_order`]) and whose right-hand sides are evaluated from
//! conductance sums rather than traces.
//!
//! A [`Certifier`] reads potentials (`L⁺`, `r`, `ν`) from one analysis and
//! conductances/transition probabilities from another. Normally both are
//! the same network; pointing the potentials at a perturbed copy is the
//! negative control.

use std::fmt;

use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analysis::NetworkAnalysis;
use crate::error::{Error, Result};
use crate::format::{deserialize_g17, serialize_g17};

pub const DEFAULT_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum IdentityName {
    #[serde(rename = "theorem_main")]
    TheoremMain,
    #[serde(rename = "corollary_main")]
    CorollaryMain,
    #[serde(rename = "recurrence")]
    Recurrence,
    #[serde(rename = "trans2")]
    Trans2,
    #[serde(rename = "equilibrium_form")]
    EquilibriumForm,
    #[serde(rename = "low_order_1")]
    LowOrder1,
    #[serde(rename = "low_order_2")]
    LowOrder2,
    #[serde(rename = "low_order_3")]
    LowOrder3,
    #[serde(rename = "low_order_4")]
    LowOrder4,
}

impl IdentityName {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::TheoremMain => "theorem_main",
            Self::CorollaryMain => "corollary_main",
            Self::Recurrence => "recurrence",
            Self::Trans2 => "trans2",
            Self::EquilibriumForm => "equilibrium_form",
            Self::LowOrder1 => "low_order_1",
            Self::LowOrder2 => "low_order_2",
            Self::LowOrder3 => "low_order_3",
            Self::LowOrder4 => "low_order_4",
        }
    }

    fn low_order(order: usize) -> Result<Self> {
        match order {
            1 => Ok(Self::LowOrder1),
            2 => Ok(Self::LowOrder2),
            3 => Ok(Self::LowOrder3),
            4 => Ok(Self::LowOrder4),
            _ => Err(Error::Domain(format!(
                "low-order identity order must be 1..=4, got {order}"
            ))),
        }
    }
}

impl fmt::Display for IdentityName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One evaluated identity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub name: IdentityName,
    pub k: usize,
    /// Source vertex id, for identities that depend on one.
    pub s: Option<String>,
    #[serde(serialize_with = "serialize_g17", deserialize_with = "deserialize_g17")]
    pub lhs: f64,
    #[serde(serialize_with = "serialize_g17", deserialize_with = "deserialize_g17")]
    pub rhs: f64,
    #[serde(serialize_with = "serialize_g17", deserialize_with = "deserialize_g17")]
    pub residual: f64,
    pub pass: bool,
}

impl IdentityCheck {
    /// Records `lhs` against `rhs`; passes iff `|lhs − rhs| ≤ tol·max(1, |rhs|)`.
    pub fn new(name: IdentityName, k: usize, s: Option<String>, lhs: f64, rhs: f64, tol: f64) -> Self {
        let residual = (lhs - rhs).abs();
        let pass = residual <= tol * rhs.abs().max(1.0);
        Self {
            name,
            k,
            s,
            lhs,
            rhs,
            residual,
            pass,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphSummary {
    pub n: usize,
    pub e: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub graph: GraphSummary,
    #[serde(serialize_with = "serialize_g17", deserialize_with = "deserialize_g17")]
    pub tolerance: f64,
    pub checks: Vec<IdentityCheck>,
    pub pass: bool,
}

impl IdentityReport {
    pub fn failures(&self) -> impl Iterator<Item = &IdentityCheck> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Domain(format!("invalid report JSON: {e}")))
    }

    /// One line per check: `name k s lhs rhs residual pass`.
    pub fn to_tsv(&self) -> String {
        use crate::format::g17;
        let mut out = String::from("name\tk\ts\tlhs\trhs\tresidual\tpass\n");
        for c in &self.checks {
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
                c.name,
                c.k,
                c.s.as_deref().unwrap_or("-"),
                g17(c.lhs),
                g17(c.rhs),
                g17(c.residual),
                c.pass
            ));
        }
        out
    }
}

/// Which source vertices to certify the source-dependent identities for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sources {
    All,
    One(usize),
}

/// Conductance sums compared against traces of `P` powers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceBridges {
    /// `Σ_{p~q} C_pq² / (C_p C_q)` over ordered adjacent pairs.
    pub pair_sum: f64,
    pub trace_p2: f64,
    /// `Σ_{p~q~w~p} C_pw C_wq C_qp / (C_p C_w C_q)` over ordered triangles.
    pub triangle_sum: f64,
    pub trace_p3: f64,
}

pub struct Certifier<'a> {
    potentials: &'a NetworkAnalysis,
    chain: &'a NetworkAnalysis,
    tol: f64,
}

impl<'a> Certifier<'a> {
    pub fn new(net: &'a NetworkAnalysis, tol: f64) -> Self {
        Self {
            potentials: net,
            chain: net,
            tol,
        }
    }

    /// Left-hand-side potentials come from `potentials`; everything else
    /// from `chain`. Both must share the vertex order.
    pub fn with_potentials(
        chain: &'a NetworkAnalysis,
        potentials: &'a NetworkAnalysis,
        tol: f64,
    ) -> Result<Self> {
        if chain.graph().vertices() != potentials.graph().vertices() {
            return Err(Error::Domain(
                "potential and chain networks must share the vertex set".into(),
            ));
        }
        Ok(Self {
            potentials,
            chain,
            tol,
        })
    }

    pub fn tolerance(&self) -> f64 {
        self.tol
    }

    fn n(&self) -> usize {
        self.chain.n()
    }

    fn source_name(&self, s: usize) -> Option<String> {
        Some(self.chain.graph().name(s).to_string())
    }

    fn check_vertex(&self, s: usize) -> Result<()> {
        let n = self.n();
        if s >= n {
            return Err(Error::VertexOutOfRange { index: s, n });
        }
        Ok(())
    }

    fn check_k(k: usize) -> Result<()> {
        if k == 0 {
            return Err(Error::Domain("step count k must be at least 1".into()));
        }
        Ok(())
    }

    /// `n − k + Σ_{m=1}^{k−1} tr(P^m)`.
    pub fn main_rhs(&self, k: usize) -> Result<f64> {
        Self::check_k(k)?;
        let traces = self.chain.kernel().trace_sequence(k - 1)?;
        Ok(self.n() as f64 - k as f64 + traces.iter().sum::<f64>())
    }

    /// `Σ_{i,t} C_i w(i,t) p_it^(k)` for a weight function `w`.
    fn weighted_kernel_sum(&self, k: usize, weight: impl Fn(usize, usize) -> f64) -> Result<f64> {
        let pk = self.chain.kernel().kstep(k)?;
        let c = self.chain.conductance().vertex_conductances();
        let n = self.n();
        Ok((0..n)
            .map(|i| c[i] * (0..n).map(|t| weight(i, t) * pk[(i, t)]).sum::<f64>())
            .sum())
    }

    /// Left-hand side of the main theorem for source `s`.
    pub fn theorem_main_lhs(&self, s: usize, k: usize) -> Result<f64> {
        self.check_vertex(s)?;
        Self::check_k(k)?;
        let pot = self.potentials;
        self.weighted_kernel_sum(k, |i, t| pot.voltage(i, s, t))
    }

    pub fn theorem_main(&self, s: usize, k: usize) -> Result<IdentityCheck> {
        let lhs = self.theorem_main_lhs(s, k)?;
        let rhs = self.main_rhs(k)?;
        Ok(IdentityCheck::new(IdentityName::TheoremMain, k, self.source_name(s), lhs, rhs, self.tol))
    }

    /// Main theorem left-hand side with voltages taken from the equilibrium
    /// measures instead of `L⁺`.
    pub fn theorem_main_lhs_via_equilibrium(&self, s: usize, k: usize) -> Result<f64> {
        self.check_vertex(s)?;
        Self::check_k(k)?;
        let eq = self.potentials.equilibria()?;
        self.weighted_kernel_sum(k, |i, t| eq.voltage(i, s, t))
    }

    /// Largest minus smallest main-theorem left-hand side over all sources.
    pub fn source_spread(&self, k: usize) -> Result<f64> {
        let values = (0..self.n())
            .map(|s| self.theorem_main_lhs(s, k))
            .collect::<Result<Vec<_>>>()?;
        let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let min = values.iter().copied().fold(f64::INFINITY, f64::min);
        Ok(max - min)
    }

    /// Extended Foster identity; at `k = 1` this is Foster's first identity.
    pub fn extended_foster(&self, k: usize) -> Result<IdentityCheck> {
        Self::check_k(k)?;
        let r = self.potentials.resistance();
        let lhs = 0.5 * self.weighted_kernel_sum(k, |i, t| r.get(i, t))?;
        let rhs = self.main_rhs(k)?;
        Ok(IdentityCheck::new(IdentityName::CorollaryMain, k, None, lhs, rhs, self.tol))
    }

    /// `Σ_{i,t} C_i l⁺_it p_it^(k)`.
    pub fn pinv_kernel_sum(&self, k: usize) -> Result<f64> {
        let lp = self.potentials.pinv();
        self.weighted_kernel_sum(k, |i, t| lp.get(i, t))
    }

    /// The one-step recurrence between levels `k` and `k + 1`, and the
    /// closed form at level `k`.
    pub fn recurrence(&self, k: usize) -> Result<[IdentityCheck; 2]> {
        Self::check_k(k)?;
        let kernel = self.chain.kernel();
        let at_k = self.pinv_kernel_sum(k)?;
        let at_next = self.pinv_kernel_sum(k + 1)?;
        let trace_k = kernel.kstep(k)?.trace();
        let step = IdentityCheck::new(
            IdentityName::Recurrence,
            k,
            None,
            at_next,
            1.0 - trace_k + at_k,
            self.tol,
        );

        let c = self.chain.conductance().vertex_conductances();
        let lp = self.potentials.pinv();
        let diagonal: f64 = (0..self.n()).map(|i| c[i] * lp.get(i, i)).sum();
        let earlier: f64 = kernel.trace_sequence(k - 1)?.iter().sum();
        let closed = IdentityCheck::new(
            IdentityName::Trans2,
            k,
            None,
            at_k,
            k as f64 - self.n() as f64 - earlier + diagonal,
            self.tol,
        );
        Ok([step, closed])
    }

    /// `(1/n) Σ C_i ν^i_t p_it^(k)` against the main right-hand side.
    pub fn equilibrium_form(&self, k: usize) -> Result<IdentityCheck> {
        Self::check_k(k)?;
        let eq = self.potentials.equilibria()?;
        let lhs = self.weighted_kernel_sum(k, |i, t| eq.value(i, t))? / self.n() as f64;
        let rhs = self.main_rhs(k)?;
        Ok(IdentityCheck::new(IdentityName::EquilibriumForm, k, None, lhs, rhs, self.tol))
    }

    /// Path weights `M[w,t] = Σ C_{w m1} C_{m1 m2} ⋯ C_{m_{L−1} t} / (C_{m1} ⋯ C_{m_{L−1}})`
    /// over walks with `order` edges, built from conductances alone.
    pub fn path_weights(&self, order: usize) -> Result<DMatrix<f64>> {
        Self::check_k(order)?;
        let profile = self.chain.conductance();
        let cm = profile.matrix();
        let n = self.n();
        let mut weights = cm.clone();
        for _ in 1..order {
            let mut scaled = weights.clone();
            for m in 0..n {
                let cv = profile.vertex(m);
                scaled.column_mut(m).iter_mut().for_each(|x| *x /= cv);
            }
            weights = scaled * cm;
        }
        Ok(weights)
    }

    fn low_order_rhs(&self, order: usize) -> Result<f64> {
        let base = (self.n() as f64 - order as f64) / 2.0;
        let bridges = self.conductance_bridges();
        Ok(match order {
            1 | 2 => base,
            3 => base + 0.5 * bridges.pair_sum,
            4 => base + 0.5 * bridges.pair_sum + 0.5 * bridges.triangle_sum,
            _ => unreachable!("order validated by caller"),
        })
    }

    /// Low-order path identity (`order` edges) for source `s`.
    ///
    /// The left-hand side sums `j_w(t,s)·M[w,t]` over all ordered endpoint
    /// pairs and halves the result, which makes it independent of vertex
    /// order. The right-hand side is `(n − order)/2` plus the conductance
    /// pair and triangle sums where they apply.
    pub fn low_order(&self, s: usize, order: usize) -> Result<IdentityCheck> {
        let name = IdentityName::low_order(order)?;
        self.check_vertex(s)?;
        let weights = self.path_weights(order)?;
        let n = self.n();
        let pot = self.potentials;
        let mut lhs = 0.0;
        for w in 0..n {
            for t in 0..n {
                lhs += pot.voltage(w, t, s) * weights[(w, t)];
            }
        }
        lhs *= 0.5;
        let rhs = self.low_order_rhs(order)?;
        Ok(IdentityCheck::new(name, order, self.source_name(s), lhs, rhs, self.tol))
    }

    /// The low-order left-hand side restricted to endpoint pairs `w < t`
    /// in vertex order. This value depends on the vertex order and is
    /// reported for inspection only.
    pub fn low_order_literal(&self, s: usize, order: usize) -> Result<f64> {
        IdentityName::low_order(order)?;
        self.check_vertex(s)?;
        let weights = self.path_weights(order)?;
        let n = self.n();
        let mut sum = 0.0;
        for w in 0..n {
            for t in w + 1..n {
                sum += self.potentials.voltage(w, t, s) * weights[(w, t)];
            }
        }
        Ok(sum)
    }

    pub fn conductance_bridges(&self) -> TraceBridges {
        let profile = self.chain.conductance();
        let n = self.n();
        let adjacency: Vec<Vec<(usize, f64)>> = (0..n).map(|p| profile.neighbours(p)).collect();
        let mut pair_sum = 0.0;
        let mut triangle_sum = 0.0;
        for p in 0..n {
            let cp = profile.vertex(p);
            for &(q, cpq) in &adjacency[p] {
                let cq = profile.vertex(q);
                pair_sum += cpq * cpq / (cp * cq);
                for &(w, cqw) in &adjacency[q] {
                    let cwp = profile.pair(w, p);
                    if cwp > 0.0 {
                        triangle_sum += cpq * cqw * cwp / (cp * cq * profile.vertex(w));
                    }
                }
            }
        }
        let kernel = self.chain.kernel();
        TraceBridges {
            pair_sum,
            trace_p2: kernel.kstep(2).map(|m| m.trace()).unwrap_or(f64::NAN),
            triangle_sum,
            trace_p3: kernel.kstep(3).map(|m| m.trace()).unwrap_or(f64::NAN),
        }
    }

    /// Runs every identity for the requested sources and `k = 1..=kmax`.
    /// Checks are ordered by identity name, then source, then `k`.
    pub fn full_report(&self, sources: Sources, kmax: usize) -> Result<IdentityReport> {
        if kmax == 0 {
            return Err(Error::Domain("kmax must be at least 1".into()));
        }
        let sources: Vec<usize> = match sources {
            Sources::All => (0..self.n()).collect(),
            Sources::One(s) => {
                self.check_vertex(s)?;
                vec![s]
            }
        };
        // Fill the power cache up front so parallel readers do not contend.
        self.chain.kernel().kstep(kmax + 1)?;

        let mut checks = Vec::new();
        let per_source: Vec<Vec<IdentityCheck>> = sources
            .par_iter()
            .map(|&s| (1..=kmax).map(|k| self.theorem_main(s, k)).collect())
            .collect::<Result<_>>()?;
        checks.extend(per_source.into_iter().flatten());

        let mut recurrence = Vec::with_capacity(kmax);
        let mut closed = Vec::with_capacity(kmax);
        for k in 1..=kmax {
            checks.push(self.extended_foster(k)?);
            let [step, form] = self.recurrence(k)?;
            recurrence.push(step);
            closed.push(form);
        }
        checks.extend(recurrence);
        checks.extend(closed);
        for k in 1..=kmax {
            checks.push(self.equilibrium_form(k)?);
        }
        for order in 1..=4 {
            for &s in &sources {
                checks.push(self.low_order(s, order)?);
            }
        }
        let pass = checks.iter().all(|c| c.pass);
        Ok(IdentityReport {
            graph: GraphSummary {
                n: self.n(),
                e: self.chain.graph().e(),
            },
            tolerance: self.tol,
            checks,
            pass,
        })
    }
}
