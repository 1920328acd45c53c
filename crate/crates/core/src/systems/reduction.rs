//! Reduction of a rank-one system to unit weights, and extraction of an
//! `eta` with nonzero absolute difference.

use serde::Serialize;

use super::system::IrrationalSystem;
use crate::error::{Error, Result};
use crate::rational::Rational;

/// One recorded action of [`reduce`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ReductionStep {
    EtaShift { eta: Rational },
    Expand { position: usize, multiplicity: u64 },
    Cutoff { position_pair: (usize, usize) },
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct ReductionTranscript {
    pub steps: Vec<ReductionStep>,
    pub cumulative_eta: Rational,
}

impl ReductionTranscript {
    fn push(&mut self, step: ReductionStep) {
        if let ReductionStep::EtaShift { eta } = &step {
            self.cumulative_eta += eta;
        }
        self.steps.push(step);
    }
}

/// Replaces the equation `p theta` at `position` by the `|p|` equations
/// `sgn(p) theta + l/|p|`, `0 <= l < |p|`, in place.
pub fn expand(sys: &IrrationalSystem, position: usize) -> Result<IrrationalSystem> {
    let Some(&p) = sys.weights().get(position) else {
        return Err(Error::invalid(format!("position {position} out of range")));
    };
    if !sys.offsets()[position].is_zero() {
        return Err(Error::invalid(format!(
            "offset at position {position} is {}, expansion needs 0",
            sys.offsets()[position]
        )));
    }
    let n = p.abs();
    let mut weights = sys.weights().to_vec();
    let mut offsets = sys.offsets().to_vec();
    weights.splice(position..=position, std::iter::repeat_n(p.signum(), n as usize));
    offsets.splice(position..=position, (0..n).map(|l| Rational::ratio(l, n)));
    Ok(IrrationalSystem::from_parts(weights, offsets, sys.generator().clone()))
}

/// Pairs removed by [`cutoff`]: greedily, each unmatched equation is paired
/// with the lowest later one with `p p' = -1` and `{xi + xi'} = 0`.
pub fn superfluous_pairs(sys: &IrrationalSystem) -> Vec<(usize, usize)> {
    let (p, xi) = (sys.weights(), sys.offsets());
    let mut used = vec![false; p.len()];
    let mut pairs = Vec::new();
    for i in 0..p.len() {
        if used[i] {
            continue;
        }
        let partner = (i + 1..p.len()).find(|&j| !used[j] && p[i] * p[j] == -1 && (&xi[i] + &xi[j]).is_integer());
        if let Some(j) = partner {
            used[i] = true;
            used[j] = true;
            pairs.push((i, j));
        }
    }
    pairs
}

/// Removes all superfluous pairs.
pub fn cutoff(sys: &IrrationalSystem) -> IrrationalSystem {
    cutoff_pairs(sys, &superfluous_pairs(sys))
}

fn cutoff_pairs(sys: &IrrationalSystem, pairs: &[(usize, usize)]) -> IrrationalSystem {
    let mut drop = vec![false; sys.len()];
    for &(i, j) in pairs {
        drop[i] = true;
        drop[j] = true;
    }
    let keep = |j: &usize| !drop[*j];
    let weights = (0..sys.len()).filter(keep).map(|j| sys.weights()[j]).collect();
    let offsets = (0..sys.len()).filter(keep).map(|j| sys.offsets()[j].clone()).collect();
    IrrationalSystem::from_parts(weights, offsets, sys.generator().clone())
}

/// Reduces `sys` to unit weights.
///
/// For `j = k, ..., 1` the system is shifted by `eta = xi_j / p_j`, which
/// zeroes the current offset of equation `j`, and that equation is then
/// expanded. Working from the last equation keeps the positions of the
/// remaining original equations fixed. Superfluous pairs are cut off last.
pub fn reduce(sys: &IrrationalSystem) -> (IrrationalSystem, ReductionTranscript) {
    let mut transcript = ReductionTranscript::default();
    let mut cur = sys.clone();
    for j in (0..sys.len()).rev() {
        let p = cur.weights()[j];
        let eta = cur.offsets()[j].clone() * Rational::ratio(1, p);
        cur = cur.eta_action(&eta);
        transcript.push(ReductionStep::EtaShift { eta });
        if p.abs() > 1 {
            cur = expand(&cur, j).expect("offset was just zeroed");
            transcript.push(ReductionStep::Expand { position: j, multiplicity: p.unsigned_abs() });
        }
    }
    let pairs = superfluous_pairs(&cur);
    let reduced = cutoff_pairs(&cur, &pairs);
    for pair in pairs {
        transcript.push(ReductionStep::Cutoff { position_pair: pair });
    }
    (reduced, transcript)
}

/// An `eta` in `[0, 1)` with absolute difference at least 1 on `sys`.
///
/// On the reduced system the first equation of weight `+1` is zeroed by
/// `eta_bar = xi'`; after the cutoff no equation of weight `-1` vanishes
/// with it. Expansion and cutoff preserve the absolute difference at every
/// `eta`, so the value is pulled back by adding the accumulated shift.
pub fn difference_witness(sys: &IrrationalSystem) -> Result<Rational> {
    let (reduced, transcript) = reduce(sys);
    let i1 = reduced
        .weights()
        .iter()
        .position(|&p| p == 1)
        .ok_or_else(|| Error::Inconsistent("reduced system has no equation of weight +1".into()))?;
    let eta_bar = &reduced.offsets()[i1];
    Ok((eta_bar + &transcript.cumulative_eta).frac())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::{IrrationalBasis, SymbolicReal};

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn sys(p: &[i64], xi: &[&str]) -> IrrationalSystem {
        let b = IrrationalBasis::sqrt(&[3]).unwrap();
        let theta = SymbolicReal::element(&b, "sqrt3").unwrap();
        IrrationalSystem::unchecked(p.to_vec(), xi.iter().map(|s| q(s)).collect(), theta).unwrap()
    }

    fn qs(xs: &[&str]) -> Vec<Rational> {
        xs.iter().map(|s| q(s)).collect()
    }

    #[test]
    fn expansion_examples() {
        let e = expand(&sys(&[3, -3], &["0", "1/4"]), 0).unwrap();
        assert_eq!(e.weights(), &[1, 1, 1, -3]);
        assert_eq!(e.offsets(), qs(&["0", "1/3", "2/3", "1/4"]).as_slice());
        let e = expand(&sys(&[2, -2], &["1/4", "0"]), 1).unwrap();
        assert_eq!(e.weights(), &[2, -1, -1]);
        assert_eq!(e.offsets(), qs(&["1/4", "0", "1/2"]).as_slice());
        let s = sys(&[1, -1], &["0", "1/3"]);
        assert_eq!(expand(&s, 0).unwrap(), s);
        assert!(expand(&s, 1).is_err());
        assert!(expand(&s, 2).is_err());
    }

    #[test]
    fn cutoff_examples() {
        let s = sys(&[2, 1, -1, -2], &["1/7", "1/3", "2/3", "2/7"]);
        assert_eq!(superfluous_pairs(&s), vec![(1, 2)]);
        let c = cutoff(&s);
        assert_eq!(c.weights(), &[2, -2]);
        assert_eq!(c.offsets(), qs(&["1/7", "2/7"]).as_slice());
        let s = sys(&[1, 1, -1, -1], &["1/5", "1/5", "2/5", "2/5"]);
        assert_eq!(cutoff(&s), s);
        // lowest-index matching
        let s = sys(&[1, -1, -1], &["1/4", "3/4", "3/4"]);
        assert_eq!(superfluous_pairs(&s), vec![(0, 1)]);
    }

    #[test]
    fn reduce_three_minus_three() {
        let s = sys(&[3, -3], &["0", "1/4"]);
        let (r, t) = reduce(&s);
        assert_eq!(r.weights(), &[1, 1, 1, -1, -1, -1]);
        assert_eq!(r.offsets(), qs(&["0", "1/3", "2/3", "1/12", "5/12", "3/4"]).as_slice());
        assert_eq!(
            t.steps,
            vec![
                ReductionStep::EtaShift { eta: q("-1/12") },
                ReductionStep::Expand { position: 1, multiplicity: 3 },
                ReductionStep::EtaShift { eta: q("1/12") },
                ReductionStep::Expand { position: 0, multiplicity: 3 },
            ]
        );
        assert_eq!(t.cumulative_eta, q("0"));
        assert!(s.pointwise_equivalent(&r));
    }

    #[test]
    fn reduce_unit_system_records_only_shifts() {
        let s = sys(&[1, 1, -1, -1], &["1/5", "1/5", "2/5", "2/5"]);
        let (r, t) = reduce(&s);
        assert!(t.steps.iter().all(|st| matches!(st, ReductionStep::EtaShift { .. })));
        assert_eq!(t.steps.len(), 4);
        assert_eq!(r.len(), 4);
        let sum: Rational = t
            .steps
            .iter()
            .map(|st| match st {
                ReductionStep::EtaShift { eta } => eta.clone(),
                _ => Rational::zero(),
            })
            .sum();
        assert_eq!(sum, t.cumulative_eta);
    }

    #[test]
    fn witnesses() {
        let s = sys(&[1, -1], &["1/3", "1/3"]);
        assert_eq!(difference_witness(&s).unwrap(), q("1/3"));
        let s = sys(&[1, 1, -1, -1], &["1/5", "1/5", "2/5", "2/5"]);
        assert_eq!(difference_witness(&s).unwrap(), q("1/5"));
        let s = sys(&[3, -3], &["0", "1/4"]);
        let w = difference_witness(&s).unwrap();
        assert!(s.absolute_difference(&w) >= 1);
    }

    #[test]
    fn transcript_serializes() {
        let (_, t) = reduce(&sys(&[2, -2], &["1/3", "1/4"]));
        let json = serde_json::to_value(&t).unwrap();
        assert_eq!(json["steps"][0]["eta_shift"]["eta"], "-1/8");
        assert_eq!(json["steps"][1]["expand"]["multiplicity"], 2);
    }
}
