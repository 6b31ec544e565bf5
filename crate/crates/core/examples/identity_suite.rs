//! Evaluating the whole chain of identities behind the decomposition, and
//! watching it break on a map that is not Jordan.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use fialg::algebra::IncidenceAlgebra;
use fialg::jordan::{random_jordan_iso, verify_paper_identities, IdentityOptions};
use fialg::linmap::LinMap;
use fialg::poset::Poset;
use fialg::random::random_unimodular;
use fialg::ring::RingSpec;

pub fn run_example() -> fialg::Result<()> {
    let fi = IncidenceAlgebra::new(Arc::new(Poset::diamond()), RingSpec::Rationals);
    let opts = IdentityOptions {
        seed: 1,
        samples: 3,
        ..IdentityOptions::default()
    };

    let phi = random_jordan_iso(&fi, 3)?;
    let report = verify_paper_identities(&fi, &phi, false, &opts)?;
    for c in &report.checks {
        println!(
            "{:<26} {:>6} instances  {}",
            c.name,
            c.instances,
            if c.pass { "pass" } else { "FAIL" }
        );
    }
    assert!(report.all_pass());

    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let t = random_unimodular(fi.ring(), fi.dim(), &mut rng, 10);
    let random = LinMap::from_matrix(fi.algebra().clone(), fi.algebra().clone(), t)?;
    let report = verify_paper_identities(&fi, &random, false, &opts)?;
    let failing: Vec<_> = report.failing().map(|c| c.name.as_str()).collect();
    println!(
        "a random invertible matrix fails {} identities: {failing:?}",
        failing.len()
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> fialg::Result<()> {
    run_example()
}
