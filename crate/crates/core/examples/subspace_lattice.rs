//! Subspaces of F_q^n: canonical enumeration, indexing and the counting
//! formulas checked against brute force.
//!
//!     cargo run --example subspace_lattice -- 4 2

use qsteiner::gfspaces::{
    count_fixed_intersection, count_fixed_intersection_bruteforce, enumerate_subspaces, intersection_dim,
    spanning_count_formula, spanning_count_table, FieldSpec, GrassmannIndexer,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().map_or(Ok(4), |s| s.parse())?;
    let q: u64 = args.next().map_or(Ok(2), |s| s.parse())?;
    let field = FieldSpec::new(q)?;

    for k in 0..=n {
        let subs = enumerate_subspaces(n, k, &field);
        let idx = GrassmannIndexer::new(&field, n, k)?;
        assert!(subs.iter().enumerate().all(|(i, s)| idx.index_of(s).unwrap() == i));
        println!("Gr({n},{k}) over F_{q}: {} subspaces", subs.len());
    }

    let lines = enumerate_subspaces(n, 2.min(n), &field);
    let mut by_meet = vec![0usize; 3];
    for l in &lines {
        by_meet[intersection_dim(&field, &lines[0], l)?] += 1;
    }
    println!("lines by intersection with the first line: {by_meet:?}");

    let d = 3.min(n);
    let table = spanning_count_table(d, &field)?;
    for (m, brute) in table.iter().enumerate().skip(1).take(6) {
        println!("  {m} points spanning F_{q}^{d}: {brute} (formula {})", spanning_count_formula(m as u64, d as u64, q)?);
    }

    let (a, b, u) = (1, 2, 2);
    let (x, y) = count_fixed_intersection(a, b, u, n as u64, q)?;
    let brute = count_fixed_intersection_bruteforce(a as usize, b as usize, u as usize, n, &field)?;
    println!("{u}-spaces meeting a fixed {b}-space in a fixed {a}-space: {x}, at least: {y}; brute force {brute:?}");
    Ok(())
}
