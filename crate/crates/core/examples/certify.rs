//! Certify the full identity family on a random network and print the
//! report, or only its failures when run with `--failures`.

use netid::{random_graph, Certifier, NetworkAnalysis, RandomGraphSpec, Sources, DEFAULT_TOLERANCE};

fn main() -> netid::Result<()> {
    let only_failures = std::env::args().any(|a| a == "--failures");
    let g = random_graph(RandomGraphSpec::new(12, 0.25, 2024))?;
    let net = NetworkAnalysis::new(&g)?;
    let report = Certifier::new(&net, DEFAULT_TOLERANCE).full_report(Sources::All, 6)?;

    if only_failures {
        for c in report.failures() {
            println!("{c:?}");
        }
    } else {
        print!("{}", report.to_tsv());
    }
    let worst = report
        .checks
        .iter()
        .map(|c| c.residual / c.rhs.abs().max(1.0))
        .fold(0.0, f64::max);
    eprintln!(
        "{} checks on n = {}, e = {}; pass = {}; worst scaled residual {worst:.2e}",
        report.checks.len(),
        report.graph.n,
        report.graph.e,
        report.pass
    );
    Ok(())
}
