//! Reading and writing the JSON formats used by the command line.

use std::sync::Arc;

use fialg::algebra::IncidenceAlgebra;
use fialg::io;
use fialg::jordan::{decompose, random_jordan_iso};

pub fn run_example() -> fialg::Result<()> {
    let poset = io::poset_from_json(r#"{"elements": ["1", "2", "3"], "relations": [["1", "2"], ["2", "3"]]}"#)?;
    let ring = io::ring_from_json(r#"{"ring": {"modular": 9}}"#)?;
    let fi = IncidenceAlgebra::new(Arc::new(poset), ring);

    let phi = random_jordan_iso(&fi, 5)?;
    let text = io::to_canonical_string(&io::linmap_to_json(&phi));
    let alg = fi.algebra().clone();
    assert_eq!(io::linmap_from_json(alg.clone(), alg, &text)?, phi);

    let d = decompose(&fi, &phi, false)?;
    let report = io::to_canonical_string(&io::decomposition_to_json(&d.report, &d.psi_tilde, &d.theta_tilde));
    println!("{}", report.lines().take(12).collect::<Vec<_>>().join("\n"));
    Ok(())
}

#[allow(dead_code)]
fn main() -> fialg::Result<()> {
    run_example()
}
