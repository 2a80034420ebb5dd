//! Sample a self-adjoint antilinear operator, decompose it, print the ledger.
//!
//!     cargo run --release -p antilin --example decompose -- [n] [epsilon] [p] [seed]

use antilin::{sample, wvn_decompose, SchattenParams};

fn main() -> antilin::Result<()> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(12);
    let epsilon: f64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(0.05);
    let p: f64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(2.0);
    let seed: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(0);

    let a = sample::selfadjoint_antilinear(n, seed);
    let params = SchattenParams::new(p)?;
    let dec = wvn_decompose(&a, epsilon, &params, 1e-8)?;

    println!("n = {n}, epsilon = {epsilon}, p = {p}, seed = {seed}");
    println!("|A|   = {:.6}", a.operator_norm());
    println!("|K|_p = {:.3e}  (< {epsilon})", dec.achieved_norm());
    println!("step ledger:");
    for (j, s) in dec.steps().iter().enumerate() {
        println!(
            "  step {:>3}: m = {:>7}, rank = {:>3}, |K_j|_p = {:.3e} (budget {:.3e})",
            j + 1,
            s.m,
            s.rank,
            s.k_norm,
            s.budget
        );
    }
    let values = dec.eigenvalues();
    println!("diagonal values (descending head): {:?}", &values[..values.len().min(6)]);
    Ok(())
}
