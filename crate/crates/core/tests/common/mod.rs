#![allow(dead_code)]

use std::sync::Arc;

use closed_geodesics::iteration::{BumpyGeodesicConfig, PoincareNormalForm};
use closed_geodesics::symbolic::{BasisElementSpec, ConstantKind, IrrationalBasis, SymbolicReal};
use closed_geodesics::systems::IrrationalSystem;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub use closed_geodesics::Rational;

pub fn q(s: &str) -> Rational {
    s.parse().unwrap()
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(n, d).unwrap()
}

/// `t = sqrt(2) / 10`.
pub fn t_basis() -> Arc<IrrationalBasis> {
    IrrationalBasis::new(vec![BasisElementSpec {
        name: "t".into(),
        kind: ConstantKind::ScaledSqrt { n: 2, scale: q("1/10"), offset: q("0") },
    }])
    .unwrap()
}

/// `r + c t` over [`t_basis`].
pub fn t_value(b: &Arc<IrrationalBasis>, r: Rational, c: i64) -> SymbolicReal {
    SymbolicReal::from_parts(b, r, vec![c]).unwrap()
}

fn in_unit_interval(x: &SymbolicReal) -> bool {
    x.cmp_rational(&Rational::zero()).unwrap().is_gt() && x.cmp_rational(&Rational::one()).unwrap().is_lt()
}

/// An angle in `(0, 1)` other than 1/2, rational or of the form `u/12 + c t`.
pub fn random_angle(rng: &mut ChaCha8Rng, b: &Arc<IrrationalBasis>) -> SymbolicReal {
    loop {
        let d = rng.gen_range(2..=12);
        let r = ratio(rng.gen_range(1..d), d);
        let c = if rng.gen_bool(0.5) { 0 } else { rng.gen_range(-2..=2) };
        let x = t_value(b, r, c);
        if in_unit_interval(&x) && x.as_rational() != Some(&q("1/2")) {
            return x;
        }
    }
}

pub fn random_normal_form(rng: &mut ChaCha8Rng) -> PoincareNormalForm {
    let b = t_basis();
    let dim = rng.gen_range(1..=6u32);
    let mut nf = PoincareNormalForm::empty(&b, dim);
    nf.h = 0;
    nf.i_base = rng.gen_range(-3..=12);
    let mut left = dim;
    while left > 0 {
        match rng.gen_range(0..10) {
            0 => nf.p_minus += 1,
            1 => nf.p_zero += 1,
            2 => nf.p_plus += 1,
            3 => nf.q_minus += 1,
            4 => nf.q_zero += 1,
            5 => nf.q_plus += 1,
            6 => nf.h += 1,
            7 if left >= 2 => nf.nontrivial_angles.push(random_angle(rng, &b)),
            8 if left >= 2 => nf.trivial_angles.push(random_angle(rng, &b)),
            _ => nf.rotations.push(random_angle(rng, &b)),
        }
        left = dim - nf.block_dimension() as u32;
    }
    nf.validate().unwrap();
    nf
}

/// A valid bumpy configuration on `S^(2n+1)` with `n` in `n_range`,
/// `theta_hat_j = r_j + c_j t`, `sum c_j = 0` and `r_j` multiples of 1/12
/// except the last.
pub fn random_bumpy(rng: &mut ChaCha8Rng, n_range: std::ops::RangeInclusive<u32>) -> BumpyGeodesicConfig {
    let b = t_basis();
    loop {
        let n = rng.gen_range(n_range.clone());
        let p_bar = rng.gen_range(2..=6u32);
        let k = rng.gen_range(2..=2 * n);
        if (k * p_bar) % 2 != 0 {
            continue;
        }
        let mut coeffs: Vec<i64> = (0..k - 1).map(|_| rng.gen_range(-3..=3)).collect();
        coeffs.push(-coeffs.iter().sum::<i64>());
        if coeffs.contains(&0) {
            continue;
        }
        let total = ratio(i64::from(k), 2) + ratio(i64::from(n), i64::from(p_bar * (n + 1)));
        let mut rs: Vec<Rational> = (0..k - 1).map(|_| ratio(rng.gen_range(1..12), 12)).collect();
        let partial: Rational = rs.iter().sum();
        rs.push(total - partial);
        let thetas = rs.into_iter().zip(coeffs).map(|(r, c)| t_value(&b, r, c)).collect();
        if let Ok(cfg) = BumpyGeodesicConfig::new(n, p_bar, thetas) {
            return cfg;
        }
    }
}

/// A valid system with `k <= k_max` equations, `|p_j| <= p_max` and offset
/// denominators at most `d_max`, over the generator `sqrt 2`.
pub fn random_system(rng: &mut ChaCha8Rng, k_max: usize, p_max: i64, d_max: i64) -> IrrationalSystem {
    let b = IrrationalBasis::sqrt(&[2]).unwrap();
    let theta = SymbolicReal::element(&b, "sqrt2").unwrap();
    loop {
        let k = rng.gen_range(2..=k_max);
        let mut weights: Vec<i64> =
            (0..k - 1).map(|_| if rng.gen_bool(0.5) { rng.gen_range(1..=p_max) } else { -rng.gen_range(1..=p_max) }).collect();
        let last = -weights.iter().sum::<i64>();
        if last == 0 || last.abs() > p_max {
            continue;
        }
        weights.push(last);
        let offsets = (0..k)
            .map(|_| {
                if rng.gen_bool(0.3) {
                    Rational::zero()
                } else {
                    let d = rng.gen_range(1..=d_max);
                    ratio(rng.gen_range(0..d), d)
                }
            })
            .collect();
        if let Ok(sys) = IrrationalSystem::new(weights, offsets, theta.clone()) {
            return sys;
        }
    }
}

/// `|#K0+(eta) - #K0-(eta)|` straight from the definition.
pub fn absolute_difference_oracle(weights: &[i64], offsets: &[Rational], eta: &Rational) -> u64 {
    let (mut plus, mut minus) = (0i64, 0i64);
    for (&p, xi) in weights.iter().zip(offsets) {
        let shifted = xi - &eta.mul_int(p);
        if shifted.is_integer() {
            if p > 0 {
                plus += 1;
            } else {
                minus += 1;
            }
        }
    }
    (plus - minus).unsigned_abs()
}

/// Maximum of the absolute difference over every `eta = a / D` in `[0, 1)`,
/// where `D` is the lcm of `|p_j|` times the denominator of `xi_j`.
pub fn effective_difference_oracle(sys: &IrrationalSystem) -> u64 {
    use num_integer::Integer;
    use num_traits::ToPrimitive;
    let d = sys
        .weights()
        .iter()
        .zip(sys.offsets())
        .fold(1i64, |acc, (p, x)| acc.lcm(&(p.abs() * x.denom().to_i64().unwrap())));
    (0..d)
        .map(|a| absolute_difference_oracle(sys.weights(), sys.offsets(), &ratio(a, d)))
        .max()
        .unwrap()
}
