//! Kronecker-type searches over fractional parts `{m theta}`, the auxiliary
//! functions `f_L` of a rank-one configuration and the collision scenario
//! built on them.

mod aux;
mod scenario;
mod search;

pub use aux::AuxContext;
pub use scenario::{
    interval_membership_scenario, BasePoint, Collision, IterateRow, ScenarioOptions, ScenarioReport, Transport,
    DEFAULT_M_CAP,
};
pub use search::{frac_mul, kronecker_search, Congruence, SearchTask, Target};
