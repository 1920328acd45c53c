//! Integer decompositions `theta_hat_j = sum_l p_jl theta_l + xi_j` and the
//! rank-one system attached to a decomposition of rank at least 2.

use serde::Serialize;

use super::system::IrrationalSystem;
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::symbolic::{self, SymbolicReal};

/// `theta_hat_j = sum_l weights[j][l] generators[l] + offsets[j]` with
/// rationally independent generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerDecomposition {
    generators: Vec<SymbolicReal>,
    weights: Vec<Vec<i64>>,
    offsets: Vec<Rational>,
}

impl IntegerDecomposition {
    /// Checks that the generators are independent and that every
    /// `theta_hat_j - sum_l p_jl theta_l` is rational.
    pub fn new(thetas: &[SymbolicReal], generators: Vec<SymbolicReal>, weights: Vec<Vec<i64>>) -> Result<Self> {
        if thetas.len() != weights.len() {
            return Err(Error::invalid(format!("{} values but {} weight rows", thetas.len(), weights.len())));
        }
        if generators.is_empty() {
            return Err(Error::invalid("at least one generator is needed"));
        }
        if let Some(j) = weights.iter().position(|row| row.len() != generators.len()) {
            return Err(Error::invalid(format!("weight row {j} has the wrong length")));
        }
        if symbolic::rank(&generators)? != generators.len() || generators.iter().any(SymbolicReal::is_rational) {
            return Err(Error::invalid("generators must be rationally independent irrationals"));
        }
        let mut offsets = Vec::with_capacity(thetas.len());
        for (j, (theta, row)) in thetas.iter().zip(&weights).enumerate() {
            let mut rest = theta.clone();
            for (g, &p) in generators.iter().zip(row) {
                rest = rest.sub(&g.mul_int(p))?;
            }
            let xi = rest
                .as_rational()
                .ok_or_else(|| Error::invalid(format!("value {j} is not an integer combination of the generators")))?;
            offsets.push(xi.clone());
        }
        Ok(IntegerDecomposition { generators, weights, offsets })
    }

    /// The decomposition whose generators are the basis elements that occur
    /// in some value.
    pub fn from_basis(thetas: &[SymbolicReal]) -> Result<Self> {
        let first = thetas.first().ok_or_else(|| Error::invalid("no values given"))?;
        let basis = first.basis();
        let used: Vec<usize> = (0..basis.len()).filter(|&i| thetas.iter().any(|t| t.coeffs()[i] != 0)).collect();
        let generators = used
            .iter()
            .map(|&i| SymbolicReal::element(basis, basis.elements()[i].name()))
            .collect::<Result<Vec<_>>>()?;
        let weights = thetas.iter().map(|t| used.iter().map(|&i| t.coeffs()[i]).collect()).collect();
        Self::new(thetas, generators, weights)
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[SymbolicReal] {
        &self.generators
    }

    pub fn weights(&self) -> &[Vec<i64>] {
        &self.weights
    }

    pub fn offsets(&self) -> &[Rational] {
        &self.offsets
    }

    /// For rank 1, the system `p_j theta_1 + {xi_j}`.
    pub fn rank_one_system(&self) -> Result<IrrationalSystem> {
        if self.rank() != 1 {
            return Err(Error::invalid(format!("decomposition has rank {}, not 1", self.rank())));
        }
        let weights = self.weights.iter().map(|row| row[0]).collect();
        IrrationalSystem::new(weights, self.fractional_offsets(), self.generators[0].clone())
    }

    fn fractional_offsets(&self) -> Vec<Rational> {
        self.offsets.iter().map(Rational::frac).collect()
    }
}

/// The rank-one system attached to a higher-rank decomposition by the
/// substitution `theta_l = theta~_l + s_l theta_1`, `l >= 2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankOneShadow {
    /// Integral point off every hyperplane `sum_l s_l p_jl = 0`, `p_j1 = 0`.
    pub direction: Vec<i64>,
    /// Multiple of `direction` used; 0 when no first coefficient vanishes.
    pub n_bar: i64,
    /// `s_2, ..., s_r`.
    pub shifts: Vec<i64>,
    /// `theta~_l = theta_l - s_l theta_1` for `l >= 2`.
    pub new_generators: Vec<SymbolicReal>,
    /// `p~_j1 = p_j1 + sum_l s_l p_jl` paired with `theta_1` and `{xi_j}`.
    pub system: IrrationalSystem,
}

const MAX_RADIUS: i64 = 64;

/// Finds `s_2, ..., s_r` with every `p~_j1` nonzero and returns the
/// associated rank-one system.
pub fn rank_one_shadow(dec: &IntegerDecomposition) -> Result<RankOneShadow> {
    let r = dec.rank();
    if r < 2 {
        return Err(Error::invalid("the shadow needs rank at least 2"));
    }
    if let Some(j) = dec.weights.iter().position(|row| row.iter().all(|&p| p == 0)) {
        return Err(Error::invalid(format!("value {j} has no irrational part")));
    }
    let zero_first: Vec<&[i64]> = dec.weights.iter().filter(|row| row[0] == 0).map(|row| &row[1..]).collect();
    let (direction, n_bar) = if zero_first.is_empty() {
        (vec![0; r - 1], 0)
    } else {
        let direction = off_hyperplanes(&zero_first, r - 1)?;
        let n_bar = (1..=dec.weights.len() as i64 + 1)
            .find(|&n| dec.weights.iter().all(|row| shifted_weight(row, &direction, n) != 0))
            .expect("each row rules out at most one multiple");
        (direction, n_bar)
    };
    let shifts: Vec<i64> = direction.iter().map(|s| s * n_bar).collect();
    let weights: Vec<i64> = dec.weights.iter().map(|row| shifted_weight(row, &shifts, 1)).collect();
    let theta_1 = &dec.generators[0];
    let new_generators = dec.generators[1..]
        .iter()
        .zip(&shifts)
        .map(|(g, &s)| g.sub(&theta_1.mul_int(s)))
        .collect::<Result<_>>()?;
    let system = IrrationalSystem::new(weights, dec.fractional_offsets(), theta_1.clone())?;
    Ok(RankOneShadow { direction, n_bar, shifts, new_generators, system })
}

fn shifted_weight(row: &[i64], direction: &[i64], n: i64) -> i64 {
    row[0] + n * row[1..].iter().zip(direction).map(|(p, s)| p * s).sum::<i64>()
}

/// Smallest integral vector, ordered by max-norm and then coordinatewise by
/// `0, 1, -1, 2, -2, ...`, on none of the hyperplanes `row . s = 0`.
fn off_hyperplanes(rows: &[&[i64]], dim: usize) -> Result<Vec<i64>> {
    let zigzag = |v: i64| 2 * v.abs() - i64::from(v > 0);
    for radius in 1..=MAX_RADIUS {
        let side = (2 * radius + 1) as usize;
        let mut box_points: Vec<Vec<i64>> = (0..side.pow(dim as u32))
            .map(|mut code| {
                (0..dim)
                    .map(|_| {
                        let v = (code % side) as i64 - radius;
                        code /= side;
                        v
                    })
                    .collect::<Vec<i64>>()
            })
            .filter(|s| s.iter().any(|v| v.abs() == radius))
            .collect();
        box_points.sort_by_key(|s| s.iter().map(|&v| zigzag(v)).collect::<Vec<_>>());
        let hit = box_points
            .into_iter()
            .find(|s| rows.iter().all(|row| row.iter().zip(s).map(|(p, v)| p * v).sum::<i64>() != 0));
        if let Some(s) = hit {
            return Ok(s);
        }
    }
    Err(Error::SearchExhausted(format!("no integral point off the hyperplanes within radius {MAX_RADIUS}")))
}
