//! The conductance random walk: k-step kernels, return-probability traces,
//! and a seeded Monte-Carlo check of one row.

use netid::{random_graph, NetworkAnalysis, RandomGraphSpec};

fn main() -> netid::Result<()> {
    let g = random_graph(RandomGraphSpec::new(8, 0.3, 11))?;
    let net = NetworkAnalysis::new(&g)?;
    let kernel = net.kernel();

    let traces = kernel.trace_sequence(6)?;
    for (k, t) in traces.iter().enumerate() {
        println!("tr P^{} = {t:.10}", k + 1);
    }

    let (start, k, walks) = (0, 3, 500_000);
    let exact = kernel.kstep(k)?;
    let freq = kernel.simulate_kstep_frequencies(start, k, walks, 42)?;
    println!("\n{k}-step distribution from {}:", g.name(start));
    println!("{:>6} {:>10} {:>10} {:>7}", "vertex", "exact", "empirical", "z");
    for t in 0..net.n() {
        let p = exact[(start, t)];
        let se = (p * (1.0 - p) / walks as f64).sqrt();
        let z = if se > 0.0 { (freq[t] - p) / se } else { 0.0 };
        println!("{:>6} {p:>10.6} {:>10.6} {z:>7.2}", g.name(t), freq[t]);
    }
    Ok(())
}
