//! Multigraphs with loops and parallel edges are rewritten into an
//! equivalent simple graph before analysis. Resistances between the
//! original vertices are unchanged.

use netid::{MetrizedGraph, NetworkAnalysis};

fn main() -> netid::Result<()> {
    let g = MetrizedGraph::parse_edge_list("a b 1\na b 1\nb c 2\nc c 3\na c 1\n")?;
    println!("input: n = {}, e = {}, simple = {}", g.n(), g.e(), g.is_optimal());

    let simple = g.optimalize();
    println!("optimal model: n = {}, e = {}", simple.n(), simple.e());
    print!("{}", simple.to_edge_list());

    let net = NetworkAnalysis::new(&g)?;
    let r = net.resistance();
    println!("r(a,b) = {:.12} (two unit edges in parallel with a 3-ohm path)", r.get(0, 1));
    println!("r(a,c) = {:.12}", r.get(0, 2));
    Ok(())
}
