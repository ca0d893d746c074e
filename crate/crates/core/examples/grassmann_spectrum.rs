//! Eigenvalues of the Grassmann scheme, checked against exact ranks of
//! `A_i - nu I`.
//!
//!     cargo run --example grassmann_spectrum -- 5 2 2

use qsteiner::exactq::fraction_string;
use qsteiner::gfspaces::FieldSpec;
use qsteiner::grassmann::{structure_constants, verify_spectrum, SchemeInstance};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<usize> = std::env::args().skip(1).map(|s| s.parse()).collect::<Result<_, _>>()?;
    let (n, k, q) = match args[..] {
        [n, k, q] => (n, k, q as u64),
        _ => (4, 2, 2),
    };
    let scheme = SchemeInstance::new(n, k, FieldSpec::new(q)?)?;
    let report = verify_spectrum(&scheme)?;
    println!("J_{q}({n},{k}): {} points", report.points);
    for rel in &report.relations {
        let values: Vec<String> = rel.eigenvalues.iter().map(|e| fraction_string(&e.value)).collect();
        let ranks_ok = rel.eigenvalues.iter().all(|e| e.rank_ok && e.formulas_agree);
        println!("  A_{} valency {:>4}: eigenvalues [{}] {}", rel.i, rel.valency, values.join(", "), if ranks_ok { "ok" } else { "MISMATCH" });
    }
    if let Some(p) = structure_constants(&scheme)? {
        println!("  p^1_11 = {}, p^0_11 = {}", p[1][1][1], p[0][1][1]);
    }
    println!("{}", if report.passed { "spectrum verified" } else { "spectrum check failed" });
    std::process::exit(if report.passed { 0 } else { 1 });
}
