//! Paired Wilcoxon signed-rank tests: small exact cases, a tied case that
//! falls back to the normal approximation, and Spearman's rho.

use kmbench::stats::{spearman_rho, wilcoxon_signed_rank, PairedSample};

fn show(label: &str, a: Vec<f64>, b: Vec<f64>) -> kmbench::Result<()> {
    let t = wilcoxon_signed_rank(&PairedSample::new(a, b)?);
    println!(
        "{label:<22} W+ {:>6.1}  W- {:>6.1}  p {:.5} {:<4} ({}, n = {})",
        t.w_plus,
        t.w_minus,
        t.p_value,
        t.stars,
        if t.exact { "exact" } else { "normal" },
        t.n_effective
    );
    Ok(())
}

fn main() -> kmbench::Result<()> {
    show("all positive, n = 4", vec![1.0, 2.0, 3.0, 4.0], vec![0.0; 4])?;
    show("all positive, n = 5", vec![1.0, 2.0, 3.0, 4.0, 5.0], vec![0.0; 5])?;
    show("mixed signs", vec![0.9, 0.8, 0.7, 0.75, 0.6, 0.95], vec![0.85, 0.82, 0.6, 0.68, 0.47, 0.91])?;
    show("with ties", vec![1.0, 1.0, 2.0, 2.0, 3.0, -1.0], vec![0.0; 6])?;

    let a: Vec<f64> = (0..40).map(|i| 0.8 + 0.001 * i as f64).collect();
    let b: Vec<f64> = a.iter().enumerate().map(|(i, v)| v - 0.01 - 0.0001 * i as f64).collect();
    show("dominance, n = 40", a, b)?;

    let x = [1.0, 2.0, 3.0, 4.0, 5.0];
    let y = [2.0, 1.0, 4.0, 3.0, 5.0];
    println!("spearman rho = {:.3}", spearman_rho(&x, &y)?);
    Ok(())
}
