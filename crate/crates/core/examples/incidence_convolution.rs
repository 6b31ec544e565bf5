//! Series on a poset, their convolution product and the structure-constant
//! form of `FI(X, R)`.

use std::sync::Arc;

use fialg::algebra::{FinSeries, IncidenceAlgebra, Truncation};
use fialg::poset::Poset;
use fialg::ring::{RingSpec, RingValue};

pub fn run_example() -> fialg::Result<()> {
    let q = RingSpec::Rationals;
    let chain = Arc::new(Poset::chain(3));
    let unit = |x, y| FinSeries::unit_series(chain.clone(), q, x, y);

    let e13 = unit(0, 1)?.convolve(&unit(1, 2)?)?;
    assert_eq!(e13, unit(0, 2)?);
    let zeta = FinSeries::zeta(chain.clone(), q);
    let zz = zeta.convolve(&zeta)?;
    println!("zeta^2(1,3) = {}", zz.get(0, 2));

    // e_x f e_y keeps only f(x, y)
    println!("e_1 zeta^2 e_3 = {}", show(&zz.sandwich(0, 2)));

    let (d, z) = zz.split_diag();
    println!(
        "diagonal part has {} entries, strict part {}",
        d.support_len(),
        z.support_len()
    );
    println!("truncation above 2: {}", show(&zeta.truncate(1, Truncation::Above)));

    let u = &FinSeries::delta(chain.clone(), q) + &zeta.scale(&RingValue::from_i64(q, 2));
    let u_inv = u.try_inverse()?;
    assert_eq!(u.convolve(&u_inv)?, FinSeries::delta(chain.clone(), q));
    println!("(d + 2 zeta)^-1 at (1,3) = {}", u_inv.get(0, 2));

    let fi = IncidenceAlgebra::new(chain, q);
    println!("dim FI = {}, basis {:?}", fi.dim(), fi.algebra().labels());
    let product = fi.algebra().mul(&fi.coord_vec(&zeta)?, &fi.coord_vec(&zeta)?);
    assert_eq!(fi.series_from_coords(&product)?, zz);
    Ok(())
}

fn show(f: &FinSeries) -> String {
    let p = f.poset();
    let terms: Vec<String> = f
        .entries()
        .map(|((x, y), v)| format!("{v} e({},{})", p.label(x), p.label(y)))
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

#[allow(dead_code)]
fn main() -> fialg::Result<()> {
    run_example()
}
