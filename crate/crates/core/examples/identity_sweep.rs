//! Runs every q-series identity over a parameter grid and prints a per-identity tally.
//!
//!     cargo run --example identity_sweep -- 10 2,3,4,5,7,8,9

use qsteiner::identities::{sweep, SweepConfig};

fn main() {
    let mut args = std::env::args().skip(1);
    let max_n: i64 = args.next().map_or(6, |s| s.parse().expect("max n"));
    let qs: Vec<u64> = args
        .next()
        .map_or_else(|| vec![2, 3], |s| s.split(',').map(|x| x.parse().expect("q")).collect());

    let started = std::time::Instant::now();
    let result = sweep(&SweepConfig { qs: qs.clone(), max_n });
    println!("q in {qs:?}, n <= {max_n}: {:.1?}", started.elapsed());
    for (name, (checked, failed)) in result.summary() {
        println!("  {name:<20} {checked:>7} checked  {failed} failed");
    }
    println!("  skipped tuples: {}", result.skipped.len());
    let first_failure = result.failures().next().cloned();
    if let Some(bad) = first_failure {
        println!("first failure: {} {}", bad.identity_name, bad.parameter_string());
        std::process::exit(1);
    }
}
