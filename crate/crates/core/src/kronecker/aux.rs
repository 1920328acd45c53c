//! The auxiliary functions
//! `f_L(x) = sum_{j >= 2} {{p_j x + xi_j} + p_bar L theta_hat_j}` of a
//! rank-one system whose first `k1` equations carry the nonzero offsets.
//! Only `theta_hat_j mod 1` enters, so `theta_hat_j = p_j theta + xi_j` is
//! taken from the system itself.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::symbolic::SymbolicReal;
use crate::systems::IrrationalSystem;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuxContext {
    system: IrrationalSystem,
    theta_hats: Vec<SymbolicReal>,
    p_bar: u32,
    k1: usize,
}

impl AuxContext {
    /// The nonzero offsets of `system` must form a nonempty prefix.
    pub fn new(system: IrrationalSystem, p_bar: u32) -> Result<Self> {
        let k1 = system.offsets().iter().take_while(|xi| !xi.is_zero()).count();
        if k1 == 0 || system.offsets()[k1..].iter().any(|xi| !xi.is_zero()) {
            return Err(Error::invalid("nonzero offsets must form a nonempty prefix"));
        }
        let theta_hats = system.theta_hats();
        Ok(AuxContext { system, theta_hats, p_bar, k1 })
    }

    pub fn p_bar(&self) -> u32 {
        self.p_bar
    }

    pub fn system(&self) -> &IrrationalSystem {
        &self.system
    }

    pub fn k1(&self) -> usize {
        self.k1
    }

    /// `f_L(x)` for `x` in `[0, 1]`, exact. At `x = 0` and `x = 1` the
    /// definition is applied literally; inside `(0, 1)` a jump of any
    /// fractional part is reported as [`Error::Discontinuity`].
    pub fn aux_f(&self, big_l: i64, x: &SymbolicReal) -> Result<SymbolicReal> {
        let below = x.cmp_rational(&Rational::zero())?;
        let above = x.cmp_rational(&Rational::one())?;
        if below == Ordering::Less || above == Ordering::Greater {
            return Err(Error::invalid(format!("x = {x} is outside [0, 1]")));
        }
        let interior = below == Ordering::Greater && above == Ordering::Less;
        let shift = i64::from(self.p_bar) * big_l;
        let mut total = SymbolicReal::rational(x.basis(), Rational::zero());
        for j in 1..self.system.len() {
            let inner = x.mul_int(self.system.weights()[j]).add_rational(&self.system.offsets()[j]);
            let inner = fractional(&inner, interior, j, "inner")?;
            let outer = inner.add(&self.theta_hats[j].mul_int(shift))?;
            total = total.add(&fractional(&outer, interior, j, "outer")?)?;
        }
        Ok(total)
    }

    /// `lim_{a -> 0+} f_0(a)`.
    pub fn limit_at_zero(&self) -> Rational {
        self.one_sided(false)
    }

    /// `lim_{b -> 1-} f_0(b)`.
    pub fn limit_at_one(&self) -> Rational {
        self.one_sided(true)
    }

    fn one_sided(&self, at_one: bool) -> Rational {
        self.system.weights()[1..]
            .iter()
            .zip(&self.system.offsets()[1..])
            .map(|(&p, xi)| {
                if !xi.is_zero() {
                    xi.clone()
                } else if (p > 0) == at_one {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            })
            .sum()
    }

    /// `|lim f(b) - lim f(a)|` as `a -> 0+`, `b -> 1-`.
    pub fn boundary_gap(&self) -> Rational {
        (self.limit_at_one() - self.limit_at_zero()).abs()
    }
}

fn fractional(v: &SymbolicReal, interior: bool, j: usize, which: &str) -> Result<SymbolicReal> {
    if interior && v.as_rational().is_some_and(Rational::is_integer) {
        return Err(Error::Discontinuity(format!("{which} fractional part of term {j} jumps here")));
    }
    Ok(v.add_rational(&-Rational::from(v.floor()?)))
}
