//! Closed geodesics of bumpy Finsler metrics on spherical space forms.
//!
//! * [`rational`] and [`symbolic`]: exact rationals and integer combinations
//!   of named irrational constants, evaluated through certified enclosures.
//! * [`iteration`]: Morse indices and nullities of iterated geodesics.
//! * [`topology`]: equivariant Betti numbers of the non-contractible loop
//!   space components.
//! * [`resonance`]: mean Euler numbers, the resonance identity and
//!   Morse-type numbers.
//! * [`systems`]: rank-one irrational systems and their difference numbers.
//! * [`kronecker`]: searches over fractional parts and the collision
//!   scenario.
//! * [`config`] and [`cli`]: the `cgeo` command-line tool.
//!
//! ```
//! use closed_geodesics::topology::{average_betti, SpaceFormSpec};
//!
//! let s3 = SpaceFormSpec::new(3, 2).unwrap();
//! assert_eq!(average_betti(&s3).to_string(), "1/1");
//! ```

pub mod cli;
pub mod config;
pub mod error;
pub mod iteration;
pub mod kronecker;
pub mod rational;
pub mod resonance;
pub mod symbolic;
pub mod systems;
pub mod topology;

pub use error::{Error, Result};
pub use rational::Rational;
