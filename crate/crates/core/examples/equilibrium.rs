//! Equilibrium measures: the potential `nu^i` solving `L u = 1 - n e_i`
//! with `u(i) = 0`. Resistances and voltages can be read off them.

use netid::{MetrizedGraph, NetworkAnalysis};

fn main() -> netid::Result<()> {
    let g = MetrizedGraph::parse_edge_list("a b 1\nb c 1\nc d 1\nd a 1\na c 1\n")?;
    let net = NetworkAnalysis::new(&g)?;
    let eq = net.equilibria()?;

    for i in 0..net.n() {
        let row: Vec<String> = (0..net.n()).map(|t| format!("{:8.4}", eq.value(i, t))).collect();
        println!("nu^{} = [{}]", g.name(i), row.join(" "));
    }

    let (a, b, d) = (0, 1, 3);
    println!(
        "r(a,b): from measures {:.12}, from pseudoinverse {:.12}",
        eq.resistance(a, b),
        net.resistance().get(a, b)
    );
    println!(
        "j_a(b,d): from measures {:.12}, from pseudoinverse {:.12}",
        eq.voltage(a, b, d),
        net.voltage(a, b, d)
    );
    Ok(())
}
