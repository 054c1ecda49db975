//! Roots of the T_n characteristic polynomial and the fitted growth constant.

use pdiffusion::asymptotics::{characteristic_roots, growth_ratio};
use pdiffusion::counting::count_t_recurrence;

fn main() -> pdiffusion::Result<()> {
    let model = characteristic_roots()?;
    for (re, im) in &model.roots {
        println!("root {re:+.6} {im:+.6}i   |z| = {:.4}", re.hypot(*im));
    }
    println!(
        "dominant {:.6}, second real {:.6}",
        model.dominant_root, model.second_real_root
    );
    println!("T_n ~ {:.5} * {:.5}^n", model.dominant_coefficient, model.dominant_root);

    for n in [10, 20, 30] {
        let t = count_t_recurrence(n)? as f64;
        let approx = model.dominant_coefficient * model.dominant_root.powi(n as i32);
        println!(
            "n={n:<2} T={t:<16e} approx={approx:<16e} T_(n+1)/T_n={:.6}",
            growth_ratio(n)?
        );
    }
    Ok(())
}
