//! Voltages j_x(y, z) and the Y-reduction of three vertices.
//!
//! Grounding `z` and sending unit current in at `x` puts `x` at potential
//! `r(x, z)`; `j_x(y, z)` is the potential then seen at `y`.

use netid::network::{voltage_from_resistance, y_reduction};
use netid::{MetrizedGraph, NetworkAnalysis};

fn main() -> netid::Result<()> {
    let g = MetrizedGraph::parse_edge_list("a b 1\nb c 2\nc d 1\nd a 3\na c 4\n")?;
    let net = NetworkAnalysis::new(&g)?;
    let (a, b, c) = (g.index_of("a")?, g.index_of("b")?, g.index_of("c")?);

    let j = net.voltage(a, b, c);
    println!("j_a(b, c) from the pseudoinverse: {j:.12}");
    println!("j_a(b, c) from resistances:       {:.12}", voltage_from_resistance(net.resistance(), a, b, c));
    println!("symmetric in the last two slots:   {:.12}", net.voltage(a, c, b));

    let y = y_reduction(net.resistance(), a, b, c)?;
    println!("Y-reduction centred on a: branch a = {:.6}, b = {:.6}, c = {:.6}", y.at_x, y.at_p, y.at_q);
    let (ba, ca, bc) = y.resistances();
    println!("star reproduces r(b,a) = {ba:.6}, r(c,a) = {ca:.6}, r(b,c) = {bc:.6}");
    println!(
        "network values     r(b,a) = {:.6}, r(c,a) = {:.6}, r(b,c) = {:.6}",
        net.resistance().get(b, a),
        net.resistance().get(c, a),
        net.resistance().get(b, c)
    );
    Ok(())
}
