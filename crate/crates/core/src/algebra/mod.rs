//! Incidence algebras of finite posets and structure-constant algebras.
//!
//! [`FinSeries`] is the native sparse representation of an element of the
//! incidence algebra. [`StructAlgebra`] is a generic finite-dimensional unital
//! algebra given by structure constants; it serves as the codomain of the maps
//! studied in [`crate::jordan`]. [`IncidenceAlgebra`] ties the two together in
//! the canonical matrix-unit basis.

mod incidence;
mod series;
mod structure;

pub use incidence::{to_struct_algebra, AlgBasis, IncidenceAlgebra};
pub use series::{FinSeries, Truncation};
pub use structure::{AlgElem, StructAlgebra};

use crate::ring::{RingSpec, RingValue};

pub(crate) fn zero_vec(ring: RingSpec, d: usize) -> Vec<RingValue> {
    vec![ring.zero(); d]
}

pub(crate) fn add_vec(a: &[RingValue], b: &[RingValue]) -> Vec<RingValue> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub(crate) fn sub_vec(a: &[RingValue], b: &[RingValue]) -> Vec<RingValue> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub(crate) fn scale_vec(s: &RingValue, a: &[RingValue]) -> Vec<RingValue> {
    a.iter().map(|x| s * x).collect()
}

pub(crate) fn is_zero_vec(a: &[RingValue]) -> bool {
    a.iter().all(RingValue::is_zero)
}
