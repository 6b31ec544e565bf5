//! Exact scalars over the integers, the rationals and `Z/n`.

use fialg::ring::{ring_arithmetic, RingOp, RingSpec};

pub fn run_example() -> fialg::Result<()> {
    let q = RingSpec::Rationals;
    let sum = ring_arithmetic(&q.parse("1/2")?, &q.parse("1/3")?, RingOp::Add)?;
    println!("1/2 + 1/3 = {sum}");

    let z9 = RingSpec::modular(9)?;
    let prod = ring_arithmetic(&z9.parse("5")?, &z9.parse("4")?, RingOp::Mul)?;
    println!("5 * 4 = {prod} in {z9}");
    println!("inverse of 2 in {z9}: {}", z9.parse("2")?.try_invert()?);
    println!("3 in {z9}: {}", z9.parse("3")?.try_invert().unwrap_err());

    for n in [6, 9] {
        let ring = RingSpec::modular(n)?;
        println!("{ring} is 2-torsionfree: {}", ring.is_two_torsionfree());
    }
    // mixing rings is an error, not a coercion
    assert!(ring_arithmetic(&q.one(), &z9.one(), RingOp::Add).is_err());
    Ok(())
}

#[allow(dead_code)]
fn main() -> fialg::Result<()> {
    run_example()
}
