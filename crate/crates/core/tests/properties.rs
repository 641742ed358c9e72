//! Property tests over random connected graphs.

#![allow(clippy::needless_range_loop)]

mod common;

use approx::assert_abs_diff_eq;
use common::*;
use nalgebra::DVector;
use netid::network::{voltage_from_resistance, y_reduction};
use netid::{
    random_graph, random_multigraph, Certifier, IdentityReport, MetrizedGraph, NetworkAnalysis,
    PenroseResiduals, RandomGraphSpec, Sources, DEFAULT_TOLERANCE,
};
use proptest::prelude::*;

fn graphs(max_n: usize) -> impl Strategy<Value = MetrizedGraph> {
    (2..=max_n, 0.0f64..0.5, any::<u64>())
        .prop_map(|(n, prob, seed)| random_graph(RandomGraphSpec::new(n, prob, seed)).unwrap())
}

fn scale(x: f64) -> f64 {
    x.abs().max(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn pseudo_inverse_identities(g in graphs(40)) {
        let net = NetworkAnalysis::new(&g).unwrap();
        let res = PenroseResiduals::compute(net.laplacian(), net.pinv());
        prop_assert!(res.max() <= 1e-9 * scale(net.pinv().matrix().amax()), "{res:?}");
        prop_assert!(net.pinv().min_eigenvalue() >= -1e-9);
        let pinv = net.pinv().matrix();
        prop_assert_eq!(pinv, &pinv.transpose());
        for row in pinv.row_iter() {
            prop_assert!(row.sum().abs() <= 1e-9 * scale(pinv.amax()));
        }
    }

    #[test]
    fn laplacian_matches_conductances(g in graphs(30)) {
        let net = NetworkAnalysis::new(&g).unwrap();
        let (c, l) = (net.conductance(), net.laplacian());
        for p in 0..g.n() {
            prop_assert_eq!(c.vertex(p), l.get(p, p));
            prop_assert!(c.vertex(p) > 0.0);
            for q in 0..g.n() {
                if p != q {
                    prop_assert_eq!(c.pair(p, q), -l.get(p, q));
                    prop_assert_eq!(c.pair(p, q), c.pair(q, p));
                }
            }
        }
    }

    #[test]
    fn pinned_solve(g in graphs(30), raw in proptest::collection::vec(-5.0f64..5.0, 30), pin in any::<proptest::sample::Index>()) {
        let net = NetworkAnalysis::new(&g).unwrap();
        let n = g.n();
        let mut b = DVector::from_iterator(n, raw.into_iter().take(n));
        let mean = b.mean();
        b.add_scalar_mut(-mean);
        let pin = pin.index(n);
        let u = net.laplacian().solve_centered(&b, pin).unwrap();
        prop_assert_eq!(u[pin], 0.0);
        let residual = (net.laplacian().matrix() * &u - &b).amax();
        prop_assert!(residual <= 1e-9 * scale(b.amax()), "{residual}");
    }

    #[test]
    fn resistance_is_a_metric_and_voltages_are_bounded(g in graphs(16)) {
        let net = NetworkAnalysis::new(&g).unwrap();
        let r = net.resistance();
        let n = g.n();
        for p in 0..n {
            prop_assert_eq!(r.get(p, p), 0.0);
            for q in 0..n {
                prop_assert_eq!(r.get(p, q), r.get(q, p));
                if p != q {
                    prop_assert!(r.get(p, q) > 0.0);
                }
                for s in 0..n {
                    prop_assert!(r.get(p, q) <= r.get(p, s) + r.get(s, q) + 1e-10);
                    let j = net.voltage(p, q, s);
                    prop_assert_eq!(j, net.voltage(p, s, q));
                    prop_assert!(j >= -1e-10);
                    prop_assert!(j <= r.get(p, q).min(r.get(p, s)) + 1e-10);
                    // r(i,t) = j_i(t,s) + j_t(i,s)
                    let split = net.voltage(p, q, s) + net.voltage(q, p, s);
                    prop_assert!((split - r.get(p, q)).abs() <= 1e-10 * scale(r.get(p, q)));
                }
                prop_assert!((net.voltage(p, q, q) - r.get(p, q)).abs() <= 1e-10 * scale(r.get(p, q)));
            }
        }
    }

    #[test]
    fn y_reduction_reproduces_resistances(g in graphs(12)) {
        prop_assume!(g.n() >= 3);
        let net = NetworkAnalysis::new(&g).unwrap();
        let r = net.resistance();
        let y = y_reduction(r, 0, 1, 2).unwrap();
        let (px, qx, pq) = y.resistances();
        prop_assert!((px - r.get(1, 0)).abs() <= 1e-12 * scale(px));
        prop_assert!((qx - r.get(2, 0)).abs() <= 1e-12 * scale(qx));
        prop_assert!((pq - r.get(1, 2)).abs() <= 1e-12 * scale(pq));
        prop_assert!((y.at_x - net.voltage(0, 1, 2)).abs() <= 1e-9 * scale(y.at_x));
    }

    #[test]
    fn equilibrium_measures(g in graphs(25)) {
        let net = NetworkAnalysis::new(&g).unwrap();
        let eq = net.equilibria().unwrap();
        let n = g.n();
        for i in 0..n {
            prop_assert_eq!(eq.value(i, i), 0.0);
            let mut b = DVector::from_element(n, 1.0);
            b[i] -= n as f64;
            let nu = DVector::from_iterator(n, eq.matrix().row(i).iter().copied());
            prop_assert!((net.laplacian().matrix() * nu - b).amax() <= 1e-9 * n as f64);
            for t in 0..n {
                if t != i {
                    prop_assert!(eq.value(i, t) > 0.0);
                }
                let r = net.resistance().get(i, t);
                prop_assert!((eq.resistance(i, t) - r).abs() <= 1e-9 * scale(r));
                prop_assert!((eq.voltage(i, i, t)).abs() <= 1e-9 * scale(r));
                prop_assert!((eq.voltage(i, t, t) - r).abs() <= 1e-9 * scale(r));
            }
        }
    }

    #[test]
    fn chain_laws(g in graphs(40)) {
        let net = NetworkAnalysis::new(&g).unwrap();
        let kernel = net.kernel();
        let c = kernel.conductances();
        prop_assert_eq!(kernel.matrix().trace(), 0.0);
        for k in 1..=10 {
            let pk = kernel.kstep(k).unwrap();
            for i in 0..g.n() {
                prop_assert!((pk.row(i).sum() - 1.0).abs() <= 1e-10);
                let inflow: f64 = (0..g.n()).map(|j| c[j] * pk[(j, i)]).sum();
                prop_assert!((inflow - c[i]).abs() <= 1e-9 * c[i]);
                for t in 0..g.n() {
                    let gap = (c[i] * pk[(i, t)] - c[t] * pk[(t, i)]).abs();
                    prop_assert!(gap <= 1e-10 * c[i].max(c[t]));
                }
            }
        }
    }

    #[test]
    fn identity_structure(g in graphs(30), s in any::<proptest::sample::Index>()) {
        let net = NetworkAnalysis::new(&g).unwrap();
        let cert = Certifier::new(&net, DEFAULT_TOLERANCE);
        let s = s.index(g.n());
        let traces = net.kernel().trace_sequence(10).unwrap();
        for k in 1..=10 {
            // telescoping right-hand side
            let step = cert.main_rhs(k + 1).unwrap() - cert.main_rhs(k).unwrap();
            prop_assert!((step - (traces[k - 1] - 1.0)).abs() <= 1e-10 * scale(cert.main_rhs(k).unwrap()));
            // second proof route through equilibrium measures
            let via_eq = cert.theorem_main_lhs_via_equilibrium(s, k).unwrap();
            let rhs = cert.main_rhs(k).unwrap();
            prop_assert!((via_eq - rhs).abs() <= 1e-8 * scale(rhs));
            prop_assert!(cert.equilibrium_form(k).unwrap().pass);
        }
        for order in 1..=4 {
            let half = 0.5 * cert.theorem_main_lhs(s, order).unwrap();
            let low = cert.low_order(s, order).unwrap();
            prop_assert!((low.lhs - half).abs() <= 1e-9 * scale(half));
        }
        let b = cert.conductance_bridges();
        prop_assert!((b.pair_sum - b.trace_p2).abs() <= 1e-10);
        prop_assert!((b.triangle_sum - b.trace_p3).abs() <= 1e-10);
    }

    #[test]
    fn path_weights_match_enumeration(g in graphs(7)) {
        let net = NetworkAnalysis::new(&g).unwrap();
        let cert = Certifier::new(&net, DEFAULT_TOLERANCE);
        for order in 1..=4 {
            let fast = cert.path_weights(order).unwrap();
            let slow = enumerate_path_weights(&g, order);
            for w in 0..g.n() {
                for t in 0..g.n() {
                    prop_assert!((fast[(w, t)] - slow[w][t]).abs() <= 1e-12 * scale(slow[w][t]));
                }
            }
        }
    }

    #[test]
    fn optimalize_preserves_resistance(n in 2usize..=20, extra in 0usize..20, loops in 0usize..4, seed in any::<u64>()) {
        let g = random_multigraph(RandomGraphSpec::new(n, 0.0, seed), extra, loops).unwrap();
        let oracle = nodal_resistances(&g);
        let net = NetworkAnalysis::new(&g).unwrap();
        for p in 0..n {
            for q in 0..n {
                let r = net.resistance().get(p, q);
                prop_assert!((r - oracle[p][q]).abs() <= 1e-10 * scale(oracle[p][q]));
            }
        }
    }

    #[test]
    fn report_json_round_trips(g in graphs(8), kmax in 1usize..4) {
        let net = NetworkAnalysis::new(&g).unwrap();
        let report = Certifier::new(&net, DEFAULT_TOLERANCE).full_report(Sources::All, kmax).unwrap();
        prop_assert!(report.pass);
        prop_assert_eq!(IdentityReport::from_json(&report.to_json()).unwrap(), report);
    }
}

#[test]
fn theorem_main_is_source_independent() {
    let g = random_graph(RandomGraphSpec::new(40, 0.15, 99)).unwrap();
    let net = NetworkAnalysis::new(&g).unwrap();
    let cert = Certifier::new(&net, DEFAULT_TOLERANCE);
    for k in 1..=10 {
        let rhs = cert.main_rhs(k).unwrap();
        assert!(cert.source_spread(k).unwrap() <= 1e-8 * scale(rhs));
    }
}

#[test]
fn random_graph_full_report_passes() {
    let g = random_graph(RandomGraphSpec::new(50, 0.1, 7)).unwrap();
    let net = NetworkAnalysis::new(&g).unwrap();
    let report = Certifier::new(&net, DEFAULT_TOLERANCE)
        .full_report(Sources::All, 10)
        .unwrap();
    assert!(report.pass, "{:?}", report.failures().next());
}

#[test]
fn voltage_routes_on_triangle_fixture() {
    let net = NetworkAnalysis::new(&parse(TRIANGLE)).unwrap();
    assert_abs_diff_eq!(
        voltage_from_resistance(net.resistance(), 0, 1, 2),
        net.voltage(0, 1, 2),
        epsilon = 1e-14
    );
}

#[test]
fn monte_carlo_on_random_graph() {
    let g = random_graph(RandomGraphSpec::new(12, 0.3, 5)).unwrap();
    let net = NetworkAnalysis::new(&g).unwrap();
    let walks = 200_000;
    for k in 1..=4 {
        let exact = net.kernel().kstep(k).unwrap();
        let freq = net.kernel().simulate_kstep_frequencies(0, k, walks, 17).unwrap();
        for t in 0..g.n() {
            let p = exact[(0, t)];
            let se = (p * (1.0 - p) / walks as f64).sqrt();
            assert!((freq[t] - p).abs() <= 4.0 * se + 1e-12, "k={k} t={t}");
        }
    }
}
