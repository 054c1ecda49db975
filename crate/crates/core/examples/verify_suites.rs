//! Run the property suites with small sizes and print one line per property.

use pdiffusion::verify::{verify, Suite, VerifyConfig};

fn main() {
    let config = VerifyConfig {
        max_n_oracle: 7,
        random_trials: 100,
        ..VerifyConfig::default()
    };
    let report = verify(&[Suite::Engine, Suite::Orientation, Suite::Counting], &config);
    for o in &report.outcomes {
        let mark = if o.passed { "ok  " } else { "FAIL" };
        println!("{mark} {:<12} {}", o.suite.name(), o.property);
        if let Some(c) = &o.counterexample {
            println!("     {c}");
        }
    }
    std::process::exit(if report.all_passed { 0 } else { 3 });
}
