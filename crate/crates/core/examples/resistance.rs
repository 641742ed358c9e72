//! Effective resistances and the Kirchhoff index of a small network.
//!
//! ```text
//! cargo run -p netid --example resistance
//! ```

use netid::{MetrizedGraph, NetworkAnalysis};

const WHEATSTONE: &str = "\
a b 1
a c 2
b c 1
b d 2
c d 1
";

fn main() -> netid::Result<()> {
    let g = MetrizedGraph::parse_edge_list(WHEATSTONE)?;
    let net = NetworkAnalysis::new(&g)?;
    let r = net.resistance();

    println!("effective resistances:");
    for p in 0..net.n() {
        for q in p + 1..net.n() {
            println!("  r({}, {}) = {:.6}", g.name(p), g.name(q), r.get(p, q));
        }
    }
    println!("Kirchhoff index: {:.6}", r.kirchhoff_index());
    println!("pseudoinverse condition estimate: {:.3e}", net.pinv().condition());

    // Foster's first theorem: sum over edges of c(e) r(e) = n - 1.
    let foster: f64 = g
        .edges()
        .iter()
        .map(|e| e.conductance() * r.get(e.a, e.b))
        .sum();
    println!("sum of c(e) r(e) over edges = {foster:.12} (n - 1 = {})", net.n() - 1);
    Ok(())
}
