//! Terminating Gauss series 2F1(-k, b; c; x).

use curved_kepler::{gauss_2f1_polynomial, gauss_2f1_terms};

fn main() -> curved_kepler::Result<()> {
    for k in 0..=4 {
        let terms = gauss_2f1_terms(k, 3.5, 1.5, 0.25)?;
        let value = gauss_2f1_polynomial(k, 3.5, 1.5, 0.25)?;
        println!("k = {k}: {} terms, value {value:.15}", terms.len());
    }

    // Legendre: P_k(t) = 2F1(-k, k+1; 1; (1-t)/2)
    let t: f64 = 0.3;
    let p3 = gauss_2f1_polynomial(3, 4.0, 1.0, (1.0 - t) / 2.0)?;
    println!(
        "P_3({t}) = {p3:.15}  (direct {:.15})",
        0.5 * (5.0 * t.powi(3) - 3.0 * t)
    );

    // c = -j for some j < k hits a pole of the Pochhammer symbol
    match gauss_2f1_polynomial(5, 1.0, -2.0, 0.5) {
        Err(e) => println!("c = -2: {e}"),
        Ok(v) => println!("c = -2 unexpectedly gave {v}"),
    }
    Ok(())
}
