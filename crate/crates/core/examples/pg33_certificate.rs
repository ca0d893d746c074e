//! Rank certificate for line spreads of PG(3,3): the span of all spreads has
//! dimension [4 2]_3 - [4 1]_3 + 1 = 91.
//!
//! Usage: cargo run --example pg33_certificate [seed]

use std::time::Instant;

use qsteiner::steiner::certificate::{rank_certificate, saturate};
use qsteiner::steiner::gram::{check_intersect_counts, dimension_formula};
use qsteiner::steiner::{verify, ParamSet};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let seed: u64 = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(1);
    let params = ParamSet::new(1, 2, 4, 3)?;
    let target: usize = dimension_formula(&params).try_into()?;
    let start = Instant::now();

    let run = saturate(&params, seed, target, 32, 10)?;
    println!("sampled {} spreads, {} independent", run.sampled, run.independent.len());
    for d in &run.independent {
        assert!(verify(d)?.valid);
    }
    let ic = check_intersect_counts(&params, &run.independent)?;
    println!("blocks meeting a block in a fixed point: {:?} (expected {})", ic.observed, ic.expected[0]);

    let cert = rank_certificate(&params, &run.independent)?;
    println!(
        "rank W = {}, rank D = {}, bounds {} <= rank U <= {}, dimension {}",
        cert.rank_w, cert.rank_d, cert.lower_bound, cert.upper_bound, cert.dimension
    );
    println!("{} in {:.1?}", if cert.meets { "bounds meet" } else { "bounds open" }, start.elapsed());
    std::process::exit(if cert.meets && ic.passed { 0 } else { 1 });
}
