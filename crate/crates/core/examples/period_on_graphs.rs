//! Period detection on arbitrary graphs. Every run ends in period 1 or 2.

use pdiffusion::diffusion::default_max_steps;
use pdiffusion::{detect_period, parse_graph, Configuration};
use rand::rngs::StdRng;
use rand::{RngExt, SeedableRng};

const PETERSEN: &str = "\
# outer cycle, spokes, inner pentagram
1 2
2 3
3 4
4 5
5 1
1 6
2 7
3 8
4 9
5 10
6 8
8 10
10 7
7 9
9 6
";

fn main() -> pdiffusion::Result<()> {
    let graph = parse_graph(PETERSEN)?;
    let mut rng = StdRng::seed_from_u64(7);
    let mut tally = [0usize; 3];

    for _ in 0..200 {
        let stacks = (0..graph.vertex_count()).map(|_| rng.random_range(-6..=6)).collect();
        let c = Configuration::new(stacks);
        let report = detect_period(&graph, &c, default_max_steps(&graph, &c))?;
        tally[report.period] += 1;
    }
    println!(
        "petersen, 200 random starts: period 1 x{}, period 2 x{}",
        tally[1], tally[2]
    );

    // constant stacks are fixed immediately
    let flat = Configuration::new(vec![3; 10]);
    println!("{:?}", detect_period(&graph, &flat, 10)?);
    Ok(())
}
