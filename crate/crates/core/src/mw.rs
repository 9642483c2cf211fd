//! Mordell–Weil arithmetic on a fiber configuration: height pairing of a
//! section given by numerical data, torsion bound, Shioda–Tate rank and the
//! determinant relation between Néron–Severi, trivial and Mordell–Weil lattices.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::arith::{format_rat, rat, Rat};
use crate::fibration::{analyze, trivial_lattice, FiberConfiguration, FibrationError, WeierstrassModel};
use crate::kodaira::FiberType;

/// `χ(O_X)` of a K3 surface.
pub const K3_CHI: u32 = 2;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MwError {
    #[error("{found} component choices for {expected} reducible fibers")]
    ChoiceCount { found: usize, expected: usize },
    #[error("{value} is not a contribution of fiber {fiber} (reducible fiber #{index})")]
    InvalidChoice { index: usize, fiber: FiberType, value: String },
    #[error("rho = {rho} is below the trivial lattice rank {trivial}")]
    RhoTooSmall { rho: u64, trivial: u64 },
    #[error("determinants and torsion order must be positive")]
    ZeroInput,
    #[error("no height context for p = {0}")]
    UnknownPrime(u32),
    #[error(transparent)]
    Fibration(#[from] FibrationError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeightContext {
    pub chi_structure: u32,
    pub config: FiberConfiguration,
}

impl HeightContext {
    pub fn k3(config: FiberConfiguration) -> Self {
        HeightContext { chi_structure: K3_CHI, config }
    }

    /// Reducible fibers, one per geometric point, in the order that
    /// [`SectionData::contributions`] follows.
    pub fn reducible_fibers(&self) -> Vec<FiberType> {
        self.config.reducible_fibers()
    }
}

/// A section described by `P·O` and its local contribution at each
/// reducible fiber.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectionData {
    pub intersection_with_zero: u32,
    pub contributions: Vec<Rat>,
}

/// `2χ + 2(P·O) − Σ contr_v(P)`.
pub fn height(ctx: &HeightContext, s: &SectionData) -> Result<Rat, MwError> {
    let fibers = ctx.reducible_fibers();
    if fibers.len() != s.contributions.len() {
        return Err(MwError::ChoiceCount { found: s.contributions.len(), expected: fibers.len() });
    }
    for (index, (f, c)) in fibers.iter().zip(&s.contributions).enumerate() {
        if !f.contribution_values().contains(c) {
            return Err(MwError::InvalidChoice { index, fiber: *f, value: format_rat(c) });
        }
    }
    let total: Rat = s.contributions.iter().sum();
    Ok(rat(2 * i64::from(ctx.chi_structure)) + rat(2 * i64::from(s.intersection_with_zero)) - total)
}

/// Smallest height of a section disjoint from the zero section. Torsion
/// sections have height 0, so a positive bound rules them out.
pub fn torsion_free_bound(ctx: &HeightContext) -> Rat {
    let max: Rat = ctx.reducible_fibers().iter().map(|f| f.max_contribution()).sum();
    rat(2 * i64::from(ctx.chi_structure)) - max
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShiodaTate {
    pub mw_rank: u64,
    pub trivial_rank: u64,
}

pub fn shioda_tate(ctx: &HeightContext, rho: u64) -> Result<ShiodaTate, MwError> {
    let trivial = trivial_lattice(&ctx.config).rank() as u64;
    if rho < trivial {
        return Err(MwError::RhoTooSmall { rho, trivial });
    }
    Ok(ShiodaTate { mw_rank: rho - trivial, trivial_rank: trivial })
}

/// `|det MW| = |det S| · |tors|² / |det Triv|`.
pub fn mw_determinant(det_s_abs: u64, det_trivial_abs: u64, torsion_order: u64) -> Result<Rat, MwError> {
    if det_s_abs == 0 || det_trivial_abs == 0 || torsion_order == 0 {
        return Err(MwError::ZeroInput);
    }
    let num = BigInt::from(det_s_abs) * BigInt::from(torsion_order).pow(2);
    Ok(Rat::new(num, BigInt::from(det_trivial_abs)))
}

/// `|det|` of the trivial lattice of the context.
pub fn trivial_determinant(ctx: &HeightContext) -> u64 {
    trivial_lattice(&ctx.config)
        .determinant()
        .abs()
        .to_u64()
        .expect("trivial lattice determinants are small")
}

/// Every section datum with `P·O ≤ max_po` whose height equals `target`,
/// with `P·O` ascending and choices in lexicographic order.
pub fn realize_height(ctx: &HeightContext, target: &Rat, max_po: u32) -> Vec<SectionData> {
    let choices: Vec<Vec<Rat>> =
        ctx.reducible_fibers().iter().map(|f| f.contribution_values().into_iter().collect()).collect();
    let mut out = Vec::new();
    for po in 0..=max_po {
        let mut idx = vec![0usize; choices.len()];
        loop {
            let s = SectionData {
                intersection_with_zero: po,
                contributions: idx.iter().zip(&choices).map(|(&i, c)| c[i].clone()).collect(),
            };
            if height(ctx, &s).as_ref() == Ok(target) {
                out.push(s);
            }
            let mut pos = idx.len();
            let exhausted = loop {
                if pos == 0 {
                    break true;
                }
                pos -= 1;
                idx[pos] += 1;
                if idx[pos] < choices[pos].len() {
                    break false;
                }
                idx[pos] = 0;
            };
            if exhausted {
                break;
            }
        }
    }
    out
}

/// The first section datum realizing `p / |det Triv|`, the height a rank-one
/// torsion-free Mordell–Weil group must have when `|det S| = p`.
pub fn realize_prime_determinant(ctx: &HeightContext, p: u64) -> Result<Option<SectionData>, MwError> {
    let target = mw_determinant(p, trivial_determinant(ctx), 1)?;
    Ok(realize_height(ctx, &target, 3).into_iter().next())
}

/// Weierstrass models whose fibers are the height context for each prime:
/// `(II, III)`, `(IV, III)`, `(IV*, III)`, `(II*, III)`, `(IV*, III*)`,
/// `(II*, III*)` at `(0, ∞)` plus one orbit of `p` fibers `I1`.
pub const PRIME_CONTEXT_MODELS: [(u32, usize, usize); 6] =
    [(19, 7, 1), (17, 7, 2), (13, 7, 4), (11, 7, 5), (7, 5, 4), (5, 5, 5)];

pub fn prime_context(p: u32) -> Result<HeightContext, MwError> {
    let &(_, m, n) = PRIME_CONTEXT_MODELS.iter().find(|r| r.0 == p).ok_or(MwError::UnknownPrime(p))?;
    Ok(HeightContext::k3(analyze(&WeierstrassModel::monomial(m, n))?))
}

pub fn is_torsion_free(ctx: &HeightContext) -> bool {
    torsion_free_bound(ctx) > Rat::zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{parse_poly, ratio};
    use crate::fibration::Place;
    use FiberType::*;

    #[test]
    fn height_examples() {
        let ctx = prime_context(13).unwrap();
        assert_eq!(ctx.reducible_fibers(), vec![IVStar, III]);
        let s = SectionData { intersection_with_zero: 0, contributions: vec![ratio(4, 3), ratio(1, 2)] };
        assert_eq!(height(&ctx, &s).unwrap(), ratio(13, 6));
        let s = SectionData { intersection_with_zero: 0, contributions: vec![rat(0), rat(0)] };
        assert_eq!(height(&ctx, &s).unwrap(), rat(4));

        let ctx = prime_context(19).unwrap();
        let s = SectionData { intersection_with_zero: 3, contributions: vec![ratio(1, 2)] };
        assert_eq!(height(&ctx, &s).unwrap(), ratio(19, 2));
    }

    #[test]
    fn height_rejects_bad_choices() {
        let ctx = prime_context(13).unwrap();
        let s = SectionData { intersection_with_zero: 0, contributions: vec![ratio(1, 2), ratio(1, 2)] };
        assert!(matches!(height(&ctx, &s), Err(MwError::InvalidChoice { index: 0, .. })));
        let s = SectionData { intersection_with_zero: 0, contributions: vec![rat(0)] };
        assert_eq!(height(&ctx, &s), Err(MwError::ChoiceCount { found: 1, expected: 2 }));
    }

    #[test]
    fn torsion_bounds() {
        assert_eq!(torsion_free_bound(&prime_context(13).unwrap()), ratio(13, 6));
        assert_eq!(torsion_free_bound(&prime_context(7).unwrap()), ratio(7, 6));
        let smooth = FiberConfiguration::from_fibers(vec![(Place::Finite(parse_poly("t^24 - 2").unwrap()), I(1))]);
        assert_eq!(torsion_free_bound(&HeightContext::k3(smooth)), rat(4));
        for (p, _, _) in PRIME_CONTEXT_MODELS {
            assert!(is_torsion_free(&prime_context(p).unwrap()), "p = {p}");
        }
    }

    #[test]
    fn shioda_tate_examples() {
        assert_eq!(
            shioda_tate(&prime_context(13).unwrap(), 10).unwrap(),
            ShiodaTate { mw_rank: 1, trivial_rank: 9 }
        );
        assert_eq!(shioda_tate(&prime_context(19).unwrap(), 4).unwrap(), ShiodaTate { mw_rank: 1, trivial_rank: 3 });
        let c = analyze(&WeierstrassModel::parse("0", "t^2(t^2-1)^5").unwrap()).unwrap();
        assert_eq!(shioda_tate(&HeightContext::k3(c), 20).unwrap(), ShiodaTate { mw_rank: 0, trivial_rank: 20 });
        assert_eq!(
            shioda_tate(&prime_context(19).unwrap(), 2),
            Err(MwError::RhoTooSmall { rho: 2, trivial: 3 })
        );
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(mw_determinant(13, 6, 1).unwrap(), ratio(13, 6));
        assert_eq!(mw_determinant(19, 2, 1).unwrap(), ratio(19, 2));
        assert_eq!(mw_determinant(17, 6, 1).unwrap(), ratio(17, 6));
        assert_eq!(mw_determinant(3, 3, 2).unwrap(), rat(4));
        assert_eq!(mw_determinant(0, 6, 1), Err(MwError::ZeroInput));
    }

    #[test]
    fn prime_determinants_are_realized() {
        let expected = [(19, 3), (17, 0), (13, 0), (11, 1), (7, 0), (5, 0)];
        for (p, po) in expected {
            let ctx = prime_context(p).unwrap();
            let s = realize_prime_determinant(&ctx, u64::from(p)).unwrap().expect("realizable");
            assert_eq!(s.intersection_with_zero, po, "p = {p}");
            assert_eq!(shioda_tate(&ctx, 22 - (u64::from(p) - 1)).unwrap().mw_rank, 1);
        }
        let s = realize_prime_determinant(&prime_context(17).unwrap(), 17).unwrap().unwrap();
        assert_eq!(s.contributions, vec![ratio(2, 3), ratio(1, 2)]);
    }

    #[test]
    fn realize_without_reducible_fibers() {
        let smooth = FiberConfiguration::from_fibers(vec![(Place::Finite(parse_poly("t^24 - 2").unwrap()), I(1))]);
        let found = realize_height(&HeightContext::k3(smooth), &rat(6), 3);
        assert_eq!(found.len(), 1);
        assert_eq!(found[0].intersection_with_zero, 1);
    }
}
