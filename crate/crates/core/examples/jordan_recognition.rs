//! Recognising homomorphisms, anti-homomorphisms and Jordan maps, with
//! witnesses for the failures.

use std::sync::Arc;

use fialg::algebra::IncidenceAlgebra;
use fialg::jordan::{from_order_map, random_jordan_iso};
use fialg::linmap::LinMap;
use fialg::poset::{order_isomorphisms, validate_poset, Poset};
use fialg::ring::{RingSpec, RingValue};

pub fn run_example() -> fialg::Result<()> {
    let ring = RingSpec::Rationals;
    let fi = IncidenceAlgebra::new(Arc::new(Poset::chain(2)), ring);

    let swap = &order_isomorphisms(fi.poset(), fi.poset(), true)?[0];
    let transpose = from_order_map(swap, &fi, &fi)?;
    println!("transpose is anti: {}", transpose.check_homomorphism(true).all_pass());
    let hom = transpose.check_homomorphism(false);
    let w = &hom.checks[0].witnesses[0];
    println!(
        "transpose is not a homomorphism, e.g. at {:?}: {:?} vs {:?}",
        w.at, w.lhs, w.rhs
    );

    // one entry off the identity: e_1 -> e_1 + e_12
    let bent = LinMap::identity(fi.algebra().clone()).perturbed(2, 0, &RingValue::from_i64(ring, 1));
    let report = bent.check_jordan(false)?;
    for check in report.failing() {
        println!("{} fails at {:?}", check.name, check.witnesses[0].at);
    }
    assert!(!report.all_pass());

    let two = validate_poset(&["1", "2", "3", "4"], &[("1", "2"), ("3", "4")])?;
    let mixed = IncidenceAlgebra::new(Arc::new(two), ring);
    let phi = random_jordan_iso(&mixed, 1)?;
    println!(
        "random Jordan map: jordan {}, hom {}, anti {}",
        phi.check_jordan(false)?.all_pass(),
        phi.check_homomorphism(false).all_pass(),
        phi.check_homomorphism(true).all_pass()
    );

    let z6 = RingSpec::modular(6)?;
    let fi6 = IncidenceAlgebra::new(Arc::new(Poset::chain(2)), z6);
    println!(
        "over {z6}: {}",
        LinMap::identity(fi6.algebra().clone()).check_jordan(false).unwrap_err()
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> fialg::Result<()> {
    run_example()
}
