//! Fire a five-vertex path until it settles into a 2-cycle.
//!
//! Stacks are listed `v_1` first, and `v_1` is the rightmost vertex.
//!
//!     cargo run --example simulate_path

use pdiffusion::{detect_period, run_sequence, Configuration, PathGraph};

fn main() -> pdiffusion::Result<()> {
    let path = PathGraph::new(5)?;
    let graph = path.to_graph();
    let start: Configuration = "0,2,0,4,1".parse()?;

    let trace = run_sequence(&graph, &start, 6)?;
    for (t, c) in trace.steps.iter().enumerate() {
        let orient = pdiffusion::induced_orientation(&path, c)?;
        println!("t={t}  {c:<12} {orient}");
    }

    let report = detect_period(&graph, &start, 100)?;
    println!("preperiod {}, period {}", report.preperiod, report.period);
    print!("{}", trace.to_json_lines());
    Ok(())
}
