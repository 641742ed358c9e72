//! The main identity one k at a time: the left side summed from a chosen
//! source, the right side from traces of the transition matrix, and the
//! same sum reached through equilibrium measures.

use netid::{Certifier, MetrizedGraph, NetworkAnalysis, DEFAULT_TOLERANCE};

fn main() -> netid::Result<()> {
    let g = MetrizedGraph::parse_edge_list("a b 1\nb c 0.5\nc d 2\nd a 1\nb d 3\n")?;
    let net = NetworkAnalysis::new(&g)?;
    let cert = Certifier::new(&net, DEFAULT_TOLERANCE);
    let s = g.index_of("c")?;

    println!("{:>2} {:>18} {:>18} {:>18}", "k", "lhs (voltages)", "lhs (equilibria)", "rhs");
    for k in 1..=8 {
        println!(
            "{k:>2} {:>18.12} {:>18.12} {:>18.12}",
            cert.theorem_main_lhs(s, k)?,
            cert.theorem_main_lhs_via_equilibrium(s, k)?,
            cert.main_rhs(k)?
        );
    }

    println!("\nextended Foster sums:");
    for k in 1..=4 {
        let c = cert.extended_foster(k)?;
        println!("  k = {k}: {:.12} vs {:.12}", c.lhs, c.rhs);
    }

    let b = cert.conductance_bridges();
    println!("\npair sum {:.12} = tr P^2 {:.12}", b.pair_sum, b.trace_p2);
    println!("triangle sum {:.12} = tr P^3 {:.12}", b.triangle_sum, b.trace_p3);
    Ok(())
}
