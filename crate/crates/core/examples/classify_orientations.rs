//! Which edge orientations of a path can occur inside a 2-cycle.
//!
//! Senses are written `e_1` first: `R` points toward `v_1`, `L` away from it,
//! `F` is an edge between equal stacks.

use pdiffusion::rules::{count_p2_orientations_recurrence, PatternRule};
use pdiffusion::{check_p2_orientation, enumerate_p2_orientations, witness_configuration, PathOrientation};

fn main() -> pdiffusion::Result<()> {
    for s in ["RLRL", "RFLR", "RRLR", "FRL", "RFFL", "LRFR"] {
        let o: PathOrientation = s.parse()?;
        let report = check_p2_orientation(&o);
        if report.legal {
            let w = witness_configuration(&o)?;
            println!("{s:<6} legal, witness {w}");
        } else {
            let rules: Vec<PatternRule> = report.violations.iter().map(|v| v.rule).collect();
            println!("{s:<6} illegal {rules:?}");
        }
    }

    println!();
    println!("n   enumerated  recurrence");
    for n in 1..=14 {
        let listed = enumerate_p2_orientations(n)?.len();
        println!("{n:<3} {listed:<11} {}", count_p2_orientations_recurrence(n)?);
    }
    Ok(())
}
