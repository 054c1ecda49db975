//! Counts on a graph G_0 with a path hung from one vertex, and how far they
//! stray from the path recurrence. Exploratory: the stack window is widened
//! until two successive counts agree, nothing proves that is enough.

use pdiffusion::counting::conjecture_recurrence_check;
use pdiffusion::oracle::enumerate_p2_on_bridge_graph;
use pdiffusion::parse_graph;

fn main() -> pdiffusion::Result<()> {
    for (name, text) in [
        ("single vertex", "vertices 1\n"),
        ("triangle", "1 2\n2 3\n3 1\n"),
        ("star", "1 2\n1 3\n1 4\n"),
    ] {
        let g0 = parse_graph(text)?;
        let mut counts = Vec::new();
        for k in 0..=7 {
            let b = enumerate_p2_on_bridge_graph(&g0, 1, k, 3)?;
            counts.push(b.count as i128);
        }
        let residuals = conjecture_recurrence_check(&counts)?;
        println!("{name:<14} counts {counts:?}");
        println!("{:<14} residuals k=4.. {residuals:?}", "");
    }
    Ok(())
}
