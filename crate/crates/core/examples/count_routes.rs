//! T_n three ways, plus the sequence table as CSV.

use pdiffusion::counting::{count_t_summation_with, sequence_csv, AgreeingLimit, CountLedger};
use pdiffusion::Limits;

fn main() -> pdiffusion::Result<()> {
    let limits = Limits::default();
    for n in 2..=16 {
        let ledger = CountLedger::build(n, &limits)?;
        let t = &ledger.totals;
        println!(
            "n={n:<2} R={:<6} recurrence={:<10} summation={:<10} direct={:<10} agree={}",
            t.r_n,
            t.t_recurrence,
            t.t_summation,
            t.t_direct,
            ledger.routes_agree()
        );
    }

    // stopping the agreeing-first sum one term early loses configurations
    let short = count_t_summation_with(5, AgreeingLimit::Truncated, &limits)?;
    let full = count_t_summation_with(5, AgreeingLimit::Full, &limits)?;
    println!("\nn=5 truncated {short}, full {full}\n");

    print!("{}", sequence_csv(12)?);
    Ok(())
}
