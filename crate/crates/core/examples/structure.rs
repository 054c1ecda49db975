//! Severing at flat edges and contracting agreeing pairs, checked on every
//! legal orientation of a few small paths.

use pdiffusion::counting::{contract_agreeing, per_orientation_counts, sever_at_flats, StageTable};
use pdiffusion::{count_configs_on_orientation, Limits};

fn main() -> pdiffusion::Result<()> {
    let limits = Limits::default();
    let o = "RLRRLRLR".parse()?;
    let c = contract_agreeing(&o, 4)?;
    println!("{o} contracted at e_3,e_4 -> {c}");
    println!(
        "counts {} and {}",
        count_configs_on_orientation(&o)?,
        count_configs_on_orientation(&c)?
    );

    let f = "RLFRLRFL".parse()?;
    let parts = sever_at_flats(&f)?;
    let product: u128 = parts.iter().map(|p| count_configs_on_orientation(p).unwrap()).product();
    let names: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
    println!(
        "{f} severs into {}, {} = {product}",
        names.join(" | "),
        count_configs_on_orientation(&f)?
    );

    for n in 4..=9 {
        let mut checked = 0;
        for entry in per_orientation_counts(n, &limits)? {
            let senses = entry.orientation.senses();
            for i in 2..=senses.len() {
                if senses[i - 2].agrees(senses[i - 1]) {
                    let smaller = contract_agreeing(&entry.orientation, i)?;
                    assert_eq!(count_configs_on_orientation(&smaller)?, entry.configurations);
                    checked += 1;
                }
            }
        }
        let stages = StageTable::new(n, &limits)?;
        let row: Vec<u128> = (0..n).map(|k| stages.stage(k)).collect();
        println!("n={n}: {checked} contractions ok, stages {row:?}");
    }
    Ok(())
}
