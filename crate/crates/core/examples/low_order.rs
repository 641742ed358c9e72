//! Low-order identities in their symmetrized form, next to the literal
//! half-sum over `w < t`. The literal form depends on vertex order.

use netid::{Certifier, MetrizedGraph, NetworkAnalysis, DEFAULT_TOLERANCE};

fn main() -> netid::Result<()> {
    for text in ["a b 1\nb c 1\n", "b a 1\na c 1\n"] {
        let g = MetrizedGraph::parse_edge_list(text)?;
        let net = NetworkAnalysis::new(&g)?;
        let cert = Certifier::new(&net, DEFAULT_TOLERANCE);
        let s = g.index_of("a")?;
        println!("vertex order {:?}, source a", g.vertices());
        for order in 1..=2 {
            let check = cert.low_order(s, order)?;
            println!(
                "  order {order}: symmetrized {:.6} vs {:.6} ({}), literal {:.6}",
                check.lhs,
                check.rhs,
                if check.pass { "pass" } else { "FAIL" },
                cert.low_order_literal(s, order)?
            );
        }
    }
    Ok(())
}
