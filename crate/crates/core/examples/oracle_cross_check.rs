//! Brute force over stack differences, using nothing but the firing rule,
//! against the multiplier counts.
//!
//!     cargo run --release --example oracle_cross_check -- 9

use std::time::Instant;

use pdiffusion::counting::{count_t_recurrence, per_orientation_counts};
use pdiffusion::oracle::{counts_by_orientation, enumerate_p2_configurations, oracle_csv};
use pdiffusion::Limits;

fn main() -> pdiffusion::Result<()> {
    let max_n: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(8);
    let mut rows = Vec::new();
    for n in 2..=max_n {
        let started = Instant::now();
        let result = enumerate_p2_configurations(n, 3)?;
        let elapsed = started.elapsed();

        let by_orient = counts_by_orientation(&result);
        let mismatches = per_orientation_counts(n, &Limits::default())?
            .into_iter()
            .filter(|c| by_orient.get(&c.orientation).copied().unwrap_or(0) as u128 != c.configurations)
            .count();
        println!(
            "n={n:<2} oracle={:<7} recurrence={:<7} orientation mismatches={mismatches}",
            result.count,
            count_t_recurrence(n)?
        );
        rows.push((result, elapsed));
    }
    println!();
    print!("{}", oracle_csv(&rows));
    Ok(())
}
