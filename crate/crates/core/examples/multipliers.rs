//! Per-vertex multipliers: how many stack values each vertex can take given
//! everything to its right. Their product counts the 2-cycle configurations
//! on one orientation.

use pdiffusion::multiplier::MULTIPLIER_TABLE;
use pdiffusion::{MultiplierVector, PathOrientation};

fn main() -> pdiffusion::Result<()> {
    let o: PathOrientation = "LRLRRLFRL".parse()?;
    let m = MultiplierVector::of(&o)?;
    println!("{o}: {:?} -> {}", m.values(), m.product());

    println!("\n(e_k, e_k-1, e_k-2) multiplier");
    for ((a, b, c), value) in MULTIPLIER_TABLE {
        if let Some(v) = value {
            println!("{}{}{}  {v}", a.symbol(), b.symbol(), c.symbol());
        }
    }
    Ok(())
}
