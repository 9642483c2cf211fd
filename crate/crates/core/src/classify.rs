//! Enumerations behind the classification: fiber pairs over the two fixed
//! points of an order-`p` base action, orbit counts of the moving fibers,
//! Néron–Severi candidates for orders 3, 9, 27 and the rank bound for primes.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::autom::{chi_fixed_trace, AutomError};
use crate::cyclotomic::{divisors, phi_euler};
use crate::kodaira::FiberType;
use crate::lattice::{is_prime, parse_lattice_spec, IntLattice, LatticeError};

/// Primes `p` with `p − 1 ≤ 20` and `p ≥ 5`.
pub const PRIMES: [u32; 6] = [19, 17, 13, 11, 7, 5];

/// Longest `I_n` or `I_n^*` allowed on a K3 surface (`deg Δ ≤ 24`).
pub const MAX_FIBER_INDEX: u32 = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("{0} is not one of 3, 9, 27")]
    NotPowerOfThree(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("p - 1 = {0} exceeds 21: no such automorphism on a K3 surface")]
    TooLarge(u64),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Autom(#[from] AutomError),
}

/// Unordered pair of fiber types over `t = 0` and `t = ∞`, stored with the
/// larger Euler number first (ties broken by type order).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct StablePair {
    pub first: FiberType,
    pub second: FiberType,
}

impl StablePair {
    pub fn new(x: FiberType, y: FiberType) -> Self {
        let key = |f: FiberType| (f.euler_number(), f);
        if key(x) >= key(y) {
            StablePair { first: x, second: y }
        } else {
            StablePair { first: y, second: x }
        }
    }

    pub fn euler(&self) -> u32 {
        self.first.euler_number() + self.second.euler_number()
    }

    pub fn contains_orientation(&self, x: FiberType, y: FiberType) -> bool {
        *self == StablePair::new(x, y)
    }
}

impl fmt::Display for StablePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.first, self.second)
    }
}

fn stable_candidates(p: u32, include_i0_star: bool) -> Vec<FiberType> {
    FiberType::all_up_to(24)
        .into_iter()
        .filter(|f| match f {
            FiberType::I(n) | FiberType::IStar(n) => *n <= MAX_FIBER_INDEX,
            _ => true,
        })
        .filter(|f| f.stable_type_allowed(p))
        .filter(|f| include_i0_star || *f != FiberType::IStar(0))
        .collect()
}

/// Unordered pairs of allowed stable types whose Euler numbers add up to `24 − p`.
pub fn enumerate_stable_pairs(p: u32) -> BTreeSet<StablePair> {
    enumerate_stable_pairs_with(p, true)
}

/// As [`enumerate_stable_pairs`], optionally dropping `I0*` from the candidates.
pub fn enumerate_stable_pairs_with(p: u32, include_i0_star: bool) -> BTreeSet<StablePair> {
    let Some(target) = 24u32.checked_sub(p) else { return BTreeSet::new() };
    let cands = stable_candidates(p, include_i0_star);
    let mut out = BTreeSet::new();
    for (i, &x) in cands.iter().enumerate() {
        for &y in &cands[i..] {
            if x.euler_number() + y.euler_number() == target {
                out.insert(StablePair::new(x, y));
            }
        }
    }
    out
}

/// The pairs as listed in the classification, in the listed order and orientation.
pub fn listed_stable_pairs(p: u32) -> Vec<(FiberType, FiberType)> {
    use FiberType::*;
    match p {
        19 => vec![(II, III)],
        17 => vec![(IV, III)],
        13 => vec![(II, IIIStar), (IVStar, III)],
        11 => vec![(IIStar, III), (IV, IIIStar), (I(11), II)],
        7 => vec![(IVStar, IIIStar), (IV, IStar(7)), (I(7), IIStar), (III, I(14))],
        5 => vec![(IIStar, IIIStar), (IVStar, IStar(5)), (III, IStar(10)), (IIIStar, I(10)), (IV, I(15))],
        _ => Vec::new(),
    }
}

/// Non-negative `(c1, c2)` with `24 − chi_pair = r·c1 + 2r·c2`.
pub fn orbit_count_solutions(r: u64, chi_pair: u64) -> BTreeSet<(u64, u64)> {
    let mut out = BTreeSet::new();
    let Some(residual) = 24u64.checked_sub(chi_pair) else { return out };
    if r == 0 {
        return out;
    }
    for c2 in 0..=residual / (2 * r) {
        let rest = residual - 2 * r * c2;
        if rest.is_multiple_of(r) {
            out.insert((rest / r, c2));
        }
    }
    out
}

pub fn candidate_ns_lattices(n: u64) -> Result<IntLattice, ClassifyError> {
    let spec = match n {
        27 => "U+A2",
        9 => "U+E8+E6",
        3 => "U+E8+E8+A2",
        other => return Err(ClassifyError::NotPowerOfThree(other)),
    };
    Ok(parse_lattice_spec(spec)?)
}

/// Numerical feasibility of base order `r` for an automorphism of order `n`
/// acting trivially on a Néron–Severi lattice of rank `22 − φ(n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseOrderOption {
    pub base_order: u64,
    pub stable_euler: i64,
    pub solutions: BTreeSet<(u64, u64)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerOfThreeReport {
    pub n: u64,
    pub lattice: IntLattice,
    pub rank: usize,
    pub fixed_trace: i64,
    pub options: Vec<BaseOrderOption>,
}

/// The candidate lattice for `n` and, for each base order `r > 1` dividing
/// `n`, the orbit counts compatible with a stable Euler sum equal to the
/// Lefschetz number of `g`.
pub fn power_of_three_report(n: u64) -> Result<PowerOfThreeReport, ClassifyError> {
    let lattice = candidate_ns_lattices(n)?;
    let rank = lattice.rank();
    let fixed_trace = chi_fixed_trace(rank as u64, n, 1)?;
    let options = divisors(n)
        .into_iter()
        .filter(|&r| r > 1)
        .map(|r| BaseOrderOption {
            base_order: r,
            stable_euler: fixed_trace,
            solutions: u64::try_from(fixed_trace).map_or(BTreeSet::new(), |chi| orbit_count_solutions(r, chi)),
        })
        .collect();
    Ok(PowerOfThreeReport { n, lattice, rank, fixed_trace, options })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RankCheck {
    pub rank_s: u64,
    pub forces_trivial_action: bool,
}

/// `rank S = 22 − (p − 1)`; when this is below `p − 1` no nonzero
/// `Z[ζ_p]`-module fits in `S`, so the action on `S` is trivial.
pub fn trivial_action_rank_check(p: u64) -> Result<RankCheck, ClassifyError> {
    if !is_prime(p) {
        return Err(ClassifyError::NotPrime(p));
    }
    let phi = phi_euler(p);
    if phi > 21 {
        return Err(ClassifyError::TooLarge(phi));
    }
    let rank_s = 22 - phi;
    Ok(RankCheck { rank_s, forces_trivial_action: rank_s < phi })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::DiscriminantGroup;
    use num_bigint::BigInt;
    use FiberType::*;

    #[test]
    fn stable_pair_examples() {
        assert_eq!(enumerate_stable_pairs(19), BTreeSet::from([StablePair::new(II, III)]));
        let five: BTreeSet<_> = [(IIStar, IIIStar), (IVStar, IStar(5)), (III, IStar(10)), (IIIStar, I(10)), (IV, I(15))]
            .into_iter()
            .map(|(x, y)| StablePair::new(x, y))
            .collect();
        assert_eq!(enumerate_stable_pairs(5), five);
        assert!(enumerate_stable_pairs(23).is_empty());
    }

    #[test]
    fn listed_pairs_match_enumeration() {
        for p in PRIMES {
            let listed: BTreeSet<_> = listed_stable_pairs(p).into_iter().map(|(x, y)| StablePair::new(x, y)).collect();
            assert_eq!(enumerate_stable_pairs(p), listed, "p = {p}");
            assert_eq!(enumerate_stable_pairs_with(p, false), listed, "p = {p} without I0*");
        }
        let sizes: Vec<usize> = PRIMES.iter().map(|&p| enumerate_stable_pairs(p).len()).collect();
        assert_eq!(sizes, vec![1, 1, 2, 3, 4, 5]);
    }

    #[test]
    fn orbit_counts() {
        assert_eq!(orbit_count_solutions(19, 5), BTreeSet::from([(1, 0)]));
        assert_eq!(orbit_count_solutions(5, 19), BTreeSet::from([(1, 0)]));
        assert!(orbit_count_solutions(9, 18).is_empty());
        assert_eq!(orbit_count_solutions(3, 18), BTreeSet::from([(2, 0), (0, 1)]));
        for p in PRIMES {
            for pair in enumerate_stable_pairs(p) {
                assert_eq!(orbit_count_solutions(u64::from(p), u64::from(pair.euler())), BTreeSet::from([(1, 0)]));
            }
        }
    }

    #[test]
    fn candidate_lattices() {
        for (n, rank) in [(27, 4), (9, 16), (3, 20)] {
            let l = candidate_ns_lattices(n).unwrap();
            assert_eq!(l.rank(), rank);
            assert_eq!(rank as u64, 22 - phi_euler(n));
            assert!(l.is_even());
            assert_eq!(l.signature().unwrap(), (1, rank - 1));
            assert_eq!(
                l.discriminant_group().unwrap(),
                DiscriminantGroup { invariant_factors: vec![BigInt::from(3)] }
            );
            assert_eq!(l.p_elementary_profile(3).unwrap(), (true, 1));
        }
        assert_eq!(candidate_ns_lattices(81), Err(ClassifyError::NotPowerOfThree(81)));
    }

    #[test]
    fn power_of_three_feasibility() {
        let r = power_of_three_report(9).unwrap();
        assert_eq!(r.fixed_trace, 18);
        let by_order = |r: &PowerOfThreeReport, k: u64| r.options.iter().find(|o| o.base_order == k).unwrap().solutions.clone();
        assert!(by_order(&r, 9).is_empty());
        assert_eq!(by_order(&r, 3), BTreeSet::from([(2, 0), (0, 1)]));
        let r = power_of_three_report(27).unwrap();
        assert_eq!(r.fixed_trace, 6);
        assert!(by_order(&r, 27).is_empty());
        assert_eq!(by_order(&r, 9), BTreeSet::from([(2, 0), (0, 1)]));
    }

    #[test]
    fn rank_checks() {
        let rc = |p| trivial_action_rank_check(p).unwrap();
        assert_eq!(rc(19), RankCheck { rank_s: 4, forces_trivial_action: true });
        assert_eq!(rc(17), RankCheck { rank_s: 6, forces_trivial_action: true });
        assert_eq!(rc(13), RankCheck { rank_s: 10, forces_trivial_action: true });
        assert_eq!(rc(11), RankCheck { rank_s: 12, forces_trivial_action: false });
        assert_eq!(trivial_action_rank_check(23), Err(ClassifyError::TooLarge(22)));
        assert_eq!(trivial_action_rank_check(15), Err(ClassifyError::NotPrime(15)));
    }
}
