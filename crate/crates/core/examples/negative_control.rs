//! A 1% change to one edge, applied only to the potentials on the left
//! side, should break every identity. This is how the checker is shown to
//! be sensitive.

use netid::{random_graph, Certifier, NetworkAnalysis, RandomGraphSpec, Sources, DEFAULT_TOLERANCE};

fn main() -> netid::Result<()> {
    let g = random_graph(RandomGraphSpec::new(10, 0.3, 5))?;
    let net = NetworkAnalysis::new(&g)?;
    let bent = NetworkAnalysis::new(&g.with_edge_length(0, g.edges()[0].length * 1.01)?)?;

    let clean = Certifier::new(&net, DEFAULT_TOLERANCE).full_report(Sources::All, 5)?;
    let perturbed = Certifier::with_potentials(&net, &bent, DEFAULT_TOLERANCE)?.full_report(Sources::All, 5)?;

    println!("unperturbed: {} of {} checks fail", clean.failures().count(), clean.checks.len());
    println!("perturbed:   {} of {} checks fail", perturbed.failures().count(), perturbed.checks.len());
    if let Some(c) = perturbed.failures().next() {
        println!("first failure: {} k={} lhs={:.9} rhs={:.9}", c.name.as_str(), c.k, c.lhs, c.rhs);
    }
    Ok(())
}
