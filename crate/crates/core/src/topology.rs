//! Rational `S^1`-equivariant Betti numbers of the component of the free
//! loop space of a spherical space form `S^n / G` selected by a
//! non-trivial class `h` of order `p`.
//!
//! The Poincaré series is
//!
//! * `(1 - t^(2k+2)) / ((1 - t^2)(1 - t^(2k)))` for odd `n = 2k + 1`,
//! * `(1 - t^(4k)) / ((1 - t^2)(1 - t^(4k-2)))` for even `n = 2k`,
//!
//! so `beta_q` is 2 on the multiples `j d` (`j >= 1`) of `d = n - 1` (odd
//! `n`) or `d = 2(n - 1)` (even `n`), 1 on the remaining even degrees and 0
//! in odd degrees.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// A space form `S^n / G` together with the order of the chosen class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceFormSpec {
    pub n_dim: u32,
    pub p_order: u32,
}

impl SpaceFormSpec {
    pub fn new(n_dim: u32, p_order: u32) -> Result<Self> {
        let spec = SpaceFormSpec { n_dim, p_order };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_dim < 2 {
            return Err(Error::invalid("n_dim must be at least 2"));
        }
        if self.p_order < 2 {
            return Err(Error::invalid("p_order must be at least 2"));
        }
        if self.n_dim.is_multiple_of(2) && self.p_order != 2 {
            return Err(Error::invalid(format!(
                "only Z/2 acts freely on S^{}, so p_order must be 2",
                self.n_dim
            )));
        }
        Ok(())
    }

    /// Spacing of the degrees where the Betti number is 2.
    fn period(&self) -> u64 {
        let d = u64::from(self.n_dim) - 1;
        if self.n_dim % 2 == 1 {
            d
        } else {
            2 * d
        }
    }
}

/// `beta_q` from the closed form.
pub fn betti(spec: &SpaceFormSpec, q: u64) -> u32 {
    if q % 2 == 1 {
        0
    } else if q > 0 && q.is_multiple_of(spec.period()) {
        2
    } else {
        1
    }
}

/// Coefficients of the Poincaré series through degree `q_max`, by power
/// series division of the numerator by the denominator.
pub fn poincare_coeffs(spec: &SpaceFormSpec, q_max: usize) -> Vec<i64> {
    let (num_deg, d) = if spec.n_dim % 2 == 1 {
        let k = (spec.n_dim as usize - 1) / 2;
        (2 * k + 2, 2 * k)
    } else {
        let k = spec.n_dim as usize / 2;
        (4 * k, 4 * k - 2)
    };
    // numerator 1 - t^num_deg, denominator (1 - t^2)(1 - t^d)
    let numerator = [(0usize, 1i64), (num_deg, -1)];
    let mut denominator = vec![(0usize, 1i64), (2, -1), (d, -1), (d + 2, 1)];
    denominator.sort_unstable();
    let mut merged: Vec<(usize, i64)> = Vec::new();
    for (e, c) in denominator {
        match merged.last_mut() {
            Some((le, lc)) if *le == e => *lc += c,
            _ => merged.push((e, c)),
        }
    }
    let mut out = vec![0i64; q_max + 1];
    for q in 0..=q_max {
        let mut acc: i64 = numerator.iter().filter(|(e, _)| *e == q).map(|(_, c)| c).sum();
        for &(e, c) in merged.iter().filter(|(e, _)| *e > 0 && *e <= q) {
            acc -= c * out[q - e];
        }
        out[q] = acc; // constant term of the denominator is 1
    }
    out
}

/// `lim (1/q) sum_{k <= q} (-1)^k beta_k`.
pub fn average_betti(spec: &SpaceFormSpec) -> Rational {
    let n = i64::from(spec.n_dim);
    if n % 2 == 1 {
        Rational::ratio(n + 1, 2 * (n - 1))
    } else {
        Rational::ratio(n, 2 * (n - 1))
    }
}

/// The Cesàro mean `(1/q) sum_{k <= q} (-1)^k beta_k` for `q >= 1`.
pub fn cesaro_mean(spec: &SpaceFormSpec, q: u64) -> Rational {
    let total: i64 = (0..=q)
        .map(|k| if k % 2 == 0 { 1 } else { -1 } * i64::from(betti(spec, k)))
        .sum();
    Rational::ratio(total, q.max(1) as i64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(n: u32) -> SpaceFormSpec {
        SpaceFormSpec::new(n, 2).unwrap()
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!((betti(&spec(3), 2), betti(&spec(3), 0), betti(&spec(3), 1)), (2, 1, 0));
        assert_eq!((betti(&spec(5), 4), betti(&spec(5), 2)), (2, 1));
        assert_eq!((betti(&spec(2), 2), betti(&spec(2), 0)), (2, 1));
    }

    #[test]
    fn series_examples() {
        assert_eq!(poincare_coeffs(&spec(3), 6), vec![1, 0, 2, 0, 2, 0, 2]);
        assert_eq!(poincare_coeffs(&spec(5), 4), vec![1, 0, 1, 0, 2]);
        assert_eq!(poincare_coeffs(&spec(2), 4), vec![1, 0, 2, 0, 2]);
    }

    #[test]
    fn averages() {
        assert_eq!(average_betti(&spec(3)), Rational::one());
        assert_eq!(average_betti(&spec(5)), Rational::ratio(3, 4));
        assert_eq!(average_betti(&spec(2)), Rational::one());
    }

    #[test]
    fn series_matches_closed_form() {
        for n in 2..=12 {
            let s = spec(n);
            let series = poincare_coeffs(&s, 600);
            for (q, c) in series.iter().enumerate() {
                assert_eq!(*c, i64::from(betti(&s, q as u64)), "n = {n}, q = {q}");
            }
        }
    }

    #[test]
    fn cesaro_means_converge() {
        for n in [2, 3, 4, 7] {
            let s = spec(n);
            for q in [100u64, 1000, 10_000] {
                let gap = (cesaro_mean(&s, q) - average_betti(&s)).abs();
                assert!(gap <= Rational::ratio(4, q as i64), "n = {n}, q = {q}");
            }
        }
    }

    #[test]
    fn even_spheres_need_order_two() {
        assert!(SpaceFormSpec::new(4, 3).is_err());
        assert!(SpaceFormSpec::new(5, 3).is_ok());
        assert!(SpaceFormSpec::new(1, 2).is_err());
    }
}
