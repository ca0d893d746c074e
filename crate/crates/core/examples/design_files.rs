//! Writing and verifying design files: a PG(5,2) spread survives the round
//! trip, a damaged copy is rejected with a witness.
//!
//!     cargo run --example design_files -- /tmp/spread.json

use std::path::PathBuf;

use qsteiner::steiner::io::{load_design_file, save_design_file, DesignFile};
use qsteiner::steiner::{sample_steiner, verify_design, ParamSet};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = std::env::args().nth(1).map_or_else(|| std::env::temp_dir().join("pg52_spread.json"), PathBuf::from);
    let p = ParamSet::new(1, 2, 6, 2)?;
    let spread = sample_steiner(&p, 5, 1)?.designs.remove(0);
    save_design_file(&path, &DesignFile::from_design(&spread)?)?;
    println!("wrote {} blocks to {}", spread.len(), path.display());

    let loaded = load_design_file(&path)?;
    let ok = verify_design(&loaded.blocks, &loaded.params, loaded.lambda)?;
    println!("reloaded design valid: {}", ok.valid);

    let mut damaged = loaded.blocks.clone();
    damaged.swap_remove(3);
    let bad = verify_design(&damaged, &loaded.params, loaded.lambda)?;
    let w = bad.witness.expect("a missing block leaves points uncovered");
    println!("damaged copy valid: {}; point {:?} lies in {} blocks", bad.valid, w.subspace.basis(), w.coverage);
    Ok(())
}
