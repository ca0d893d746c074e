//! All 56 line spreads of PG(3,2) and the Gram matrix of their incidence matrix.
//!
//!     cargo run --example pg32_spreads

use qsteiner::exactq::{fraction_string, rat};
use qsteiner::grassmann::SchemeInstance;
use qsteiner::linalg::rank_exact;
use qsteiner::steiner::{
    dimension_formula, empirical_coefficients, enumerate_steiner, gram_check, gram_matrix, incidence_matrix,
    mu_eigenvalue, spectral_check, GramCoefficients, ParamSet,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p = ParamSet::new(1, 2, 4, 2)?;
    let spreads = enumerate_steiner(&p)?;
    println!("{p}: {} labeled spreads of {} lines each", spreads.len(), spreads[0].len());
    println!("first: {:?}", spreads[0].blocks());

    let scheme = SchemeInstance::new(4, 2, p.field().clone())?;
    let emp = empirical_coefficients(&p, &spreads, &scheme)?;
    let closed = GramCoefficients::closed_form(spreads.len() as u64, &p);
    println!(
        "kappa = {} (closed form {}), kappa_0 = {} (closed form {})",
        emp.coefficients.kappa, closed.kappa, emp.coefficients.kappa_i[0], closed.kappa_i[0]
    );
    let u = incidence_matrix(&p, &spreads)?;
    println!("UU^T = kappa I + kappa_0 A_2: {}", gram_check(&u, &closed, &scheme)?);

    let spec = spectral_check(&p, &gram_matrix(&p, &spreads)?, &closed.kappa)?;
    for m in &spec.eigenvalues {
        println!("  mu_{} = {:>3}, multiplicity {:>2}, rank(UU^T - mu I) = {}", m.r, fraction_string(&m.mu), fraction_string(&m.multiplicity), m.rank);
    }
    println!("trace {} = 35 * {}", spec.trace, closed.kappa);
    assert_eq!(mu_eigenvalue(&p, 1, &rat(8))?, rat(0));
    println!("rank U = {}, [4 2] - [4 1] + 1 = {}", rank_exact(&u), dimension_formula(&p));
    Ok(())
}
