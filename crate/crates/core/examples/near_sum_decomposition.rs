//! Splitting a Jordan isomorphism into a homomorphism and an anti-homomorphism.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use fialg::algebra::{FinSeries, IncidenceAlgebra};
use fialg::jordan::{decompose, near_sum_build, random_jordan_iso, JordanEngine, Side};
use fialg::poset::validate_poset;
use fialg::random::{random_rebase, random_series};
use fialg::ring::RingSpec;

pub fn run_example() -> fialg::Result<()> {
    let ring = RingSpec::modular(9)?;
    let two = validate_poset(&["1", "2", "3", "4"], &[("1", "2"), ("3", "4")])?;
    let fi = IncidenceAlgebra::new(Arc::new(two), ring);

    // a Jordan isomorphism onto the same algebra written in another basis
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let phi = random_rebase(&random_jordan_iso(&fi, 1)?, &mut rng, 8)?;

    let d = decompose(&fi, &phi, false)?;
    for check in &d.report.checks {
        println!("{:<24} {}", check.name, if check.pass { "pass" } else { "FAIL" });
    }
    assert_eq!(near_sum_build(&d.psi_tilde, &d.theta_tilde, &d.split)?, phi);

    for i in fi.basis().strict_indices() {
        let psi_zero = d.psi_tilde.column(i).iter().all(|v| v.is_zero());
        let side = if psi_zero { "anti-homomorphism" } else { "homomorphism" };
        println!("{} goes to the {side} side", fi.algebra().labels()[i]);
    }

    // the pointwise construction through phi^-1 gives the same values
    let engine = JordanEngine::new(&fi, phi.clone(), false)?;
    let f: FinSeries = random_series(&fi, &mut rng, 1, 1);
    let oracle = engine.extend_via_inverse(&f, Side::Psi)?;
    assert_eq!(oracle.coords(), engine.psi_tilde().apply_vec(&fi.coord_vec(&f)?));
    println!("oracle agrees on a random series");
    Ok(())
}

#[allow(dead_code)]
fn main() -> fialg::Result<()> {
    run_example()
}
