//! Weierstrass semigroups, Feng–Rao bounds and quantum code parameters for
//! the second generalized Giulietti–Korchmáros curve GK(2, n).

pub mod curve;
pub mod error;
pub mod fengrao;
pub mod gf;
pub mod gk2;
pub mod params;
pub mod quantum;
pub mod reference;
pub mod semigroup;

pub use error::{Error, Result};
pub use gk2::Orbit;
pub use params::CurveParams;
pub use semigroup::NumericalSemigroup;

#[cfg(feature = "parallel")]
pub(crate) fn par_map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn par_map<T, R>(items: &[T], f: impl Fn(&T) -> R) -> Vec<R> {
    items.iter().map(f).collect()
}
