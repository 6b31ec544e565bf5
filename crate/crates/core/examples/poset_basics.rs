//! Building posets from generating relations, intervals, and order
//! (anti-)automorphisms.

use std::sync::Arc;

use fialg::poset::{generate_random_poset, order_isomorphisms, validate_poset, EdgeProbability, Poset};

pub fn run_example() -> fialg::Result<()> {
    // only covers are given; the closure supplies 0 <= 1
    let diamond = Arc::new(validate_poset(
        &["0", "a", "b", "1"],
        &[("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")],
    )?);
    println!("[0,1] = {:?}", diamond.interval("0", "1")?);
    println!("[a,b] = {:?}", diamond.interval("a", "b")?);

    let autos = order_isomorphisms(&diamond, &diamond, false)?;
    let antis = order_isomorphisms(&diamond, &diamond, true)?;
    println!(
        "diamond: {} automorphisms, {} anti-automorphisms",
        autos.len(),
        antis.len()
    );
    assert_eq!((autos.len(), antis.len()), (2, 2));

    let cycle = validate_poset(&["1", "2", "3"], &[("1", "2"), ("2", "3"), ("3", "1")]);
    println!("a 3-cycle is rejected: {}", cycle.unwrap_err());

    let p = generate_random_poset(6, EdgeProbability::parse("1/3")?, 42)?;
    println!("random poset: {} elements, covers {:?}", p.len(), p.cover_relations());
    println!("components: {:?}", p.components());
    assert_eq!(generate_random_poset(5, EdgeProbability::ONE, 3)?, Poset::chain(5));
    Ok(())
}

#[allow(dead_code)]
fn main() -> fialg::Result<()> {
    run_example()
}
