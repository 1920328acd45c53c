//! Iterated Morse indices and nullities of closed geodesics.
//!
//! [`PoincareNormalForm`] covers the general normal form of a Poincaré map.
//! [`BumpyGeodesicConfig`] is the specialization to a bumpy metric on an
//! odd-dimensional space form, where the index is determined by `k`
//! irrational rotation fractions whose sum is fixed by the mean index.

mod bumpy;
mod normal_form;

pub use bumpy::{BumpyGeodesicConfig, BumpySpec, Classification};
pub use normal_form::{NormalFormSpec, PoincareNormalForm};
