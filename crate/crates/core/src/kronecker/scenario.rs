//! Searches a rank-one bumpy configuration for `beta + 1` iterates sharing
//! one Morse index, where `beta` is the Betti number of that degree.
//!
//! Iterates `m_l = p_bar (n + 1) q_bar l + 1` have `{m_l theta_hat_j}`
//! governed by `{m_l theta}`. Two such iterates, one with `{m_l theta}` near
//! 0 and one near 1, fall into different intervals, while their
//! neighbours `m_l + p_bar L`, `1 <= |L| <= N_bar`, fall into the same
//! intervals at both levels. Counting the neighbours of one level that
//! share its index then exhibits the collision.

use num_integer::Integer;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use super::aux::AuxContext;
use super::search::frac_mul;
use crate::error::{Error, Result};
use crate::iteration::BumpyGeodesicConfig;
use crate::rational::Rational;
use crate::symbolic::{Enclosure, SymbolicReal};
use crate::systems::{difference_witness, IntegerDecomposition, IrrationalSystem};
use crate::topology::{betti, SpaceFormSpec};

pub const DEFAULT_M_CAP: u64 = 1_000_000;
const PAIRS_PER_WINDOW: usize = 64;
const MAX_WINDOW_DOUBLINGS: u32 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScenarioOptions {
    pub n_bar: u32,
    pub m_cap: u64,
}

impl ScenarioOptions {
    pub fn new(n_bar: u32) -> Self {
        ScenarioOptions { n_bar, m_cap: DEFAULT_M_CAP }
    }
}

/// One iterate `m = p_bar (n + 1) q_bar l + p_bar L + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct IterateRow {
    pub m: u64,
    pub l: i64,
    #[serde(rename = "L")]
    pub big_l: i64,
    pub interval: u32,
    pub index: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BasePoint {
    pub frac: Enclosure,
    pub iterate: IterateRow,
}

/// An iterate at the colliding level and its partner `m_l' + p_bar L` at
/// the other level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Transport {
    pub iterate: IterateRow,
    pub partner: IterateRow,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Collision {
    pub index: i64,
    pub beta: u32,
    /// `"near_zero"` or `"near_one"`.
    pub level: &'static str,
    pub iterates: Vec<IterateRow>,
    pub transports: Vec<Transport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScenarioReport {
    pub witness_required: bool,
    pub eta: Rational,
    /// Original position of each equation after moving `K1` to the front.
    pub order: Vec<usize>,
    pub system: IrrationalSystem,
    pub k1: usize,
    pub boundary_gap: Rational,
    pub q_bar: u64,
    pub step: u64,
    pub n_bar: u32,
    /// `a = 1/window`, `b = 1 - 1/window`.
    pub window: u64,
    pub f_a: Rational,
    pub f_b: Rational,
    pub near_zero: BasePoint,
    pub near_one: BasePoint,
    pub collision: Collision,
    pub scanned_to_m: u64,
}

struct Prepared {
    config: BumpyGeodesicConfig,
    ctx: AuxContext,
    witness_required: bool,
    eta: Rational,
    order: Vec<usize>,
    q_bar: u64,
    step: u64,
}

/// Rank-one system of `config`, corrected by a difference witness when the
/// absolute difference at `eta = 0` vanishes, with `K1` moved to the front.
fn prepare(config: &BumpyGeodesicConfig) -> Result<Prepared> {
    let dec = IntegerDecomposition::from_basis(config.theta_hats())?;
    if dec.rank() != 1 {
        return Err(Error::invalid(format!("rotation values have rank {}, the scenario needs rank 1", dec.rank())));
    }
    let original = dec.rank_one_system()?;
    let witness_required = original.absolute_difference(&Rational::zero()) == 0;
    let eta = if witness_required { difference_witness(&original)? } else { Rational::zero() };
    let sys = original.eta_action(&eta);
    let part = sys.partition();
    let order: Vec<usize> = part.k1.iter().chain(&part.k0_plus).chain(&part.k0_minus).copied().collect();
    let weights = order.iter().map(|&j| sys.weights()[j]).collect();
    let offsets: Vec<Rational> = order.iter().map(|&j| sys.offsets()[j].clone()).collect();
    let sys = IrrationalSystem::new(weights, offsets, sys.generator().clone())?;
    let thetas = order.iter().map(|&j| config.theta_hats()[j].clone()).collect();
    let config = BumpyGeodesicConfig::new(config.n_half(), config.p_bar(), thetas)?;
    let k1 = part.k1.len();
    let q_bar = sys.offsets()[..k1]
        .iter()
        .map(|xi| xi.denom().to_u64().expect("offset denominators are small"))
        .fold(1u64, |acc, d| acc.lcm(&d));
    let step = config.block() as u64 * q_bar;
    let ctx = AuxContext::new(sys, config.p_bar())?;
    Ok(Prepared { config, ctx, witness_required, eta, order, q_bar, step })
}

/// Runs the scenario. Exhausting the `m` range without a collision is
/// reported as [`Error::SearchExhausted`].
pub fn interval_membership_scenario(config: &BumpyGeodesicConfig, options: ScenarioOptions) -> Result<ScenarioReport> {
    let n = i64::from(config.n_half());
    if i64::from(options.n_bar) <= 2 * (n + 1) {
        return Err(Error::invalid(format!("N_bar = {} must exceed 2(n + 1) = {}", options.n_bar, 2 * (n + 1))));
    }
    let prep = prepare(config)?;
    let theta = prep.ctx.system().generator().clone();
    let l_max = (options.m_cap.saturating_sub(1) / prep.step) as i64;
    let fracs: Vec<Scanned> = (1..=l_max)
        .into_par_iter()
        .map(|l| {
            let e = frac_mul(&theta, prep.step * l as u64 + 1)?.enclose(64)?;
            Ok((l, e))
        })
        .collect::<Result<_>>()?;
    let space = SpaceFormSpec::new(2 * config.n_half() + 1, 2)?;
    let mut window: u64 = 4;
    for _ in 0..MAX_WINDOW_DOUBLINGS {
        let a = Rational::new(1, window)?;
        let b = Rational::one() - a.clone();
        let near_zero: Vec<&Scanned> = fracs.iter().filter(|f| f.1.hi <= a).collect();
        let near_one: Vec<&Scanned> = fracs.iter().filter(|f| f.1.lo >= b).collect();
        if near_zero.is_empty() || near_one.is_empty() {
            break;
        }
        let basis = theta.basis();
        let ends = prep
            .ctx
            .aux_f(0, &SymbolicReal::rational(basis, a.clone()))
            .and_then(|fa| Ok((fa, prep.ctx.aux_f(0, &SymbolicReal::rational(basis, b.clone()))?)));
        let (f_a, f_b) = match ends {
            Ok(v) => v,
            Err(Error::Discontinuity(_)) => {
                window *= 2;
                continue;
            }
            Err(e) => return Err(e),
        };
        let pairs = closest_pairs(&near_zero, &near_one);
        for (z, o) in pairs.into_iter().take(PAIRS_PER_WINDOW) {
            if let Some(collision) = try_pair(&prep, &space, options.n_bar, z.0, o.0)? {
                let base = |l: i64, e: &Enclosure| -> Result<BasePoint> {
                    Ok(BasePoint { frac: e.clone(), iterate: row(&prep, l, 0)? })
                };
                return Ok(ScenarioReport {
                    witness_required: prep.witness_required,
                    eta: prep.eta.clone(),
                    order: prep.order.clone(),
                    system: prep.ctx.system().clone(),
                    k1: prep.ctx.k1(),
                    boundary_gap: prep.ctx.boundary_gap(),
                    q_bar: prep.q_bar,
                    step: prep.step,
                    n_bar: options.n_bar,
                    window,
                    f_a: f_a.as_rational().cloned().expect("rational at L = 0"),
                    f_b: f_b.as_rational().cloned().expect("rational at L = 0"),
                    near_zero: base(z.0, &z.1)?,
                    near_one: base(o.0, &o.1)?,
                    collision,
                    scanned_to_m: prep.step * l_max as u64 + 1,
                });
            }
        }
        window *= 2;
    }
    Err(Error::SearchExhausted(format!(
        "no collision among iterates up to m = {} (windows down to 1/{window})",
        prep.step * l_max as u64 + 1
    )))
}

type Scanned = (i64, Enclosure);

/// Pairs of levels ordered by distance `|l_z - l_o|`, then by the smaller
/// level; each near-zero level is paired with its nearest near-one levels
/// on either side.
fn closest_pairs<'a>(near_zero: &[&'a Scanned], near_one: &[&'a Scanned]) -> Vec<(&'a Scanned, &'a Scanned)> {
    let mut pairs = Vec::new();
    for z in near_zero {
        let pos = near_one.partition_point(|o| o.0 < z.0);
        for o in [pos.checked_sub(1), Some(pos)].into_iter().flatten().filter_map(|i| near_one.get(i)) {
            pairs.push((*z, *o));
        }
    }
    pairs.sort_by_key(|(z, o)| ((z.0 - o.0).abs(), z.0.min(o.0)));
    pairs
}

/// Classification of `m_l + p_bar L` with the decomposition `(q_bar l, L)`.
fn row(prep: &Prepared, l: i64, big_l: i64) -> Result<IterateRow> {
    let lq = l * prep.q_bar as i64;
    let m = prep.config.compose(lq, big_l);
    if m < 1 {
        return Err(Error::invalid("iterate number must be positive"));
    }
    let c = prep.config.classify_with(m as u64, lq, big_l)?;
    Ok(IterateRow { m: m as u64, l: lq, big_l, interval: c.interval, index: c.index })
}

fn try_pair(prep: &Prepared, space: &SpaceFormSpec, n_bar: u32, lz: i64, lo: i64) -> Result<Option<Collision>> {
    let (rz, ro) = (row(prep, lz, 0)?, row(prep, lo, 0)?);
    if rz.interval == ro.interval {
        return Ok(None);
    }
    let n_bar = i64::from(n_bar);
    for (level, l, other) in [("near_one", lo, lz), ("near_zero", lz, lo)] {
        let target = if l == lo { ro.index } else { rz.index };
        let beta = betti(space, target.unsigned_abs());
        let mut iterates = Vec::new();
        let mut transports = Vec::new();
        let mut transported = true;
        for big_l in -n_bar..=n_bar {
            if prep.config.compose(l * prep.q_bar as i64, big_l) < 1 || prep.config.compose(other * prep.q_bar as i64, big_l) < 1 {
                continue;
            }
            let r = row(prep, l, big_l)?;
            if r.index != target {
                continue;
            }
            iterates.push(r);
            if big_l != 0 {
                let partner = row(prep, other, big_l)?;
                transported &= partner.interval == r.interval;
                transports.push(Transport { iterate: r, partner });
            }
        }
        if transported && iterates.len() > beta as usize {
            return Ok(Some(Collision { index: target, beta, level, iterates, transports }));
        }
    }
    Ok(None)
}
