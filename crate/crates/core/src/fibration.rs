//! Weierstrass models `y² = x³ + a(t)x + b(t)` over the projective `t`-line:
//! minimalization, decomposition of the discriminant into places, fiber
//! classification and the trivial lattice.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::arith::{format_rat, parse_poly, rat, ArithError, ExtVal, QPoly, Rat};
use crate::kodaira::{classify_valuations, FiberType, KodairaError};
use crate::lattice::{lattice_from_summands, IntLattice, Summand};

/// Degree bounds for `a` and `b` on a K3 surface (sections of O(8), O(12)).
pub const K3_WEIGHT_A: usize = 8;
pub const K3_WEIGHT_B: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FibrationError {
    #[error("discriminant 4a^3 + 27b^2 vanishes identically")]
    ZeroDiscriminant,
    #[error("deg {which} = {degree} exceeds the K3 bound {bound}")]
    DegreeBound { which: char, degree: usize, bound: usize },
    #[error("Euler number sum is 12: rational elliptic surface, not K3")]
    RationalElliptic,
    #[error("Euler number sum is {0}, expected 24 for a K3 surface")]
    EulerMismatch(u32),
    #[error("base scaling factor must be nonzero")]
    ZeroScale,
    #[error("invalid place {0:?}")]
    InvalidPlace(String),
    #[error(transparent)]
    Kodaira(#[from] KodairaError),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeierstrassModel {
    pub a: QPoly,
    pub b: QPoly,
}

impl WeierstrassModel {
    pub fn new(a: QPoly, b: QPoly) -> Self {
        WeierstrassModel { a, b }
    }

    pub fn parse(a: &str, b: &str) -> Result<Self, ArithError> {
        Ok(WeierstrassModel { a: parse_poly(a)?, b: parse_poly(b)? })
    }

    /// `(t^m, t^n)`
    pub fn monomial(m: usize, n: usize) -> Self {
        WeierstrassModel { a: QPoly::monomial(rat(1), m), b: QPoly::monomial(rat(1), n) }
    }

    /// `4a³ + 27b²`.
    pub fn discriminant(&self) -> Result<QPoly, FibrationError> {
        let d = self.a.pow(3).scale(&rat(4)) + self.b.pow(2).scale(&rat(27));
        if d.is_zero() {
            Err(FibrationError::ZeroDiscriminant)
        } else {
            Ok(d)
        }
    }

    /// Smallest `k` with `deg a ≤ 4k` and `deg b ≤ 6k`; the surface is K3
    /// exactly when this is 2 (rational elliptic for 1, a product for 0).
    pub fn weight_index(&self) -> u32 {
        let need = |p: &QPoly, w: usize| p.degree().map_or(0, |d| d.div_ceil(w));
        need(&self.a, 4).max(need(&self.b, 6)) as u32
    }

    pub fn check_k3_degrees(&self) -> Result<(), FibrationError> {
        for (which, p, bound) in [('a', &self.a, K3_WEIGHT_A), ('b', &self.b, K3_WEIGHT_B)] {
            if let Some(d) = p.degree().filter(|&d| d > bound) {
                return Err(FibrationError::DegreeBound { which, degree: d, bound });
            }
        }
        Ok(())
    }
}

impl fmt::Display for WeierstrassModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y^2 = x^3 + ({})x + ({})", self.a, self.b)
    }
}

/// A Galois-stable cluster of points of the base: the roots of a monic
/// squarefree rational polynomial, or the point at infinity.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Place {
    Finite(QPoly),
    Infinity,
}

impl Place {
    /// Number of geometric points.
    pub fn degree(&self) -> usize {
        match self {
            Place::Finite(p) => p.degree().expect("places are non-constant"),
            Place::Infinity => 1,
        }
    }

    pub fn is_zero_point(&self) -> bool {
        matches!(self, Place::Finite(p) if *p == QPoly::t())
    }

    pub fn is_infinity(&self) -> bool {
        *self == Place::Infinity
    }

    /// `t` first, then other finite places by degree and coefficients,
    /// infinity last.
    fn sort_key(&self) -> (u8, Option<&QPoly>) {
        match self {
            Place::Finite(p) if *p == QPoly::t() => (0, None),
            Place::Finite(p) => (1, Some(p)),
            Place::Infinity => (2, None),
        }
    }
}

impl Ord for Place {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl PartialOrd for Place {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(p) => write!(f, "{p}"),
            Place::Infinity => f.write_str("inf"),
        }
    }
}

impl FromStr for Place {
    type Err = FibrationError;

    fn from_str(s: &str) -> Result<Self, FibrationError> {
        let s = s.trim();
        if s == "inf" || s == "∞" {
            return Ok(Place::Infinity);
        }
        let p = parse_poly(s)?;
        if p.is_constant() || !p.is_monic() || !p.is_squarefree() {
            return Err(FibrationError::InvalidPlace(s.to_string()));
        }
        Ok(Place::Finite(p))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Valuations {
    pub va: ExtVal,
    pub vb: ExtVal,
    pub vd: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberAssignment {
    pub place: Place,
    pub fiber: FiberType,
    pub valuations: Valuations,
}

/// Normalized `J = 4a³/Δ` (so `J = 0` for `a = 0` and `J = 1` for `b = 0`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum JInvariant {
    Constant(Rat),
    Varying,
}

impl fmt::Display for JInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            JInvariant::Constant(c) => write!(f, "constant {}", format_rat(c)),
            JInvariant::Varying => f.write_str("varying"),
        }
    }
}

/// Singular fibers of a minimal model, one entry per place with `v(Δ) > 0`
/// plus the point at infinity (which is always listed).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberConfiguration {
    pub assignments: Vec<FiberAssignment>,
}

impl FiberConfiguration {
    /// Builds a configuration from fiber types alone, using representative
    /// valuations. Infinity is added as a smooth fiber when absent.
    pub fn from_fibers(fibers: Vec<(Place, FiberType)>) -> Self {
        let mut assignments: Vec<FiberAssignment> = fibers
            .into_iter()
            .map(|(place, fiber)| {
                let (va, vb, vd) = fiber.representative_valuations();
                FiberAssignment { place, fiber, valuations: Valuations { va, vb, vd } }
            })
            .collect();
        if !assignments.iter().any(|a| a.place.is_infinity()) {
            let (va, vb, vd) = FiberType::I(0).representative_valuations();
            assignments.push(FiberAssignment {
                place: Place::Infinity,
                fiber: FiberType::I(0),
                valuations: Valuations { va, vb, vd },
            });
        }
        assignments.sort_by(|x, y| x.place.cmp(&y.place));
        FiberConfiguration { assignments }
    }

    /// `Σ degree(place) · e(fiber)`.
    pub fn euler_total(&self) -> u32 {
        self.assignments.iter().map(|a| a.place.degree() as u32 * a.fiber.euler_number()).sum()
    }

    pub fn fiber_at(&self, place: &Place) -> FiberType {
        self.assignments
            .iter()
            .find(|a| &a.place == place)
            .map_or(FiberType::I(0), |a| a.fiber)
    }

    pub fn fiber_at_zero(&self) -> FiberType {
        self.fiber_at(&Place::Finite(QPoly::t()))
    }

    pub fn fiber_at_infinity(&self) -> FiberType {
        self.fiber_at(&Place::Infinity)
    }

    /// Singular fiber types counted over geometric points.
    pub fn fiber_counts(&self) -> BTreeMap<FiberType, u32> {
        let mut out = BTreeMap::new();
        for a in self.assignments.iter().filter(|a| a.fiber.is_singular()) {
            *out.entry(a.fiber).or_insert(0) += a.place.degree() as u32;
        }
        out
    }

    /// Singular places other than `t = 0` and `t = ∞`.
    pub fn moving_places(&self) -> impl Iterator<Item = &FiberAssignment> {
        self.assignments
            .iter()
            .filter(|a| a.fiber.is_singular() && !a.place.is_zero_point() && !a.place.is_infinity())
    }

    /// One root-lattice summand per geometric reducible fiber, canonically sorted.
    pub fn root_summands(&self) -> Vec<Summand> {
        let mut out: Vec<Summand> = self
            .assignments
            .iter()
            .filter_map(|a| a.fiber.root_lattice().map(|r| (r, a.place.degree())))
            .flat_map(|(r, d)| std::iter::repeat_n(r, d))
            .collect();
        out.sort();
        out
    }

    /// Reducible fibers expanded over geometric points, in assignment order.
    pub fn reducible_fibers(&self) -> Vec<FiberType> {
        self.assignments
            .iter()
            .filter(|a| a.fiber.is_reducible())
            .flat_map(|a| std::iter::repeat_n(a.fiber, a.place.degree()))
            .collect()
    }

    /// `(fiber at 0, fiber at ∞)`.
    pub fn stable_pair(&self) -> (FiberType, FiberType) {
        (self.fiber_at_zero(), self.fiber_at_infinity())
    }

    /// Exchange the roles of `0` and `∞` in the summary data only.
    pub fn swapped_pair(&self) -> (FiberType, FiberType) {
        (self.fiber_at_infinity(), self.fiber_at_zero())
    }
}

/// `U ⊕` the root lattices of all reducible fibers.
pub fn trivial_lattice(c: &FiberConfiguration) -> IntLattice {
    let mut parts = vec![Summand::U];
    parts.extend(c.root_summands());
    lattice_from_summands(&parts).expect("root summands are valid")
}

/// Refines monic squarefree polynomials into pairwise coprime monic
/// squarefree factors, each dividing or coprime to every input.
fn coprime_refinement(mut polys: Vec<QPoly>) -> Vec<QPoly> {
    polys.retain(|p| !p.is_constant());
    'outer: loop {
        for i in 0..polys.len() {
            for j in i + 1..polys.len() {
                let g = polys[i].gcd(&polys[j]).expect("nonzero inputs");
                if g.is_constant() {
                    continue;
                }
                if polys[i] == polys[j] {
                    polys.swap_remove(j);
                    continue 'outer;
                }
                let pi = polys[i].div_exact(&g).expect("gcd divides");
                let pj = polys[j].div_exact(&g).expect("gcd divides");
                polys.swap_remove(j);
                polys.swap_remove(i);
                polys.extend([g, pi, pj].into_iter().filter(|p| !p.is_constant()));
                continue 'outer;
            }
        }
        polys.sort();
        return polys;
    }
}

fn squarefree_layers(p: &QPoly) -> Vec<QPoly> {
    if p.is_zero() {
        return Vec::new();
    }
    p.squarefree_decomposition()
        .expect("nonzero")
        .into_iter()
        .map(|(f, _)| f)
        .collect()
}

/// Divides out `f⁴, f⁶` wherever `v_f(a) ≥ 4` and `v_f(b) ≥ 6`. Non-minimality
/// at infinity is absorbed by [`WeierstrassModel::weight_index`].
pub fn minimalize(m: &WeierstrassModel) -> Result<WeierstrassModel, FibrationError> {
    m.discriminant()?;
    let mut layers = squarefree_layers(&m.a);
    layers.extend(squarefree_layers(&m.b));
    let mut out = m.clone();
    for f in coprime_refinement(layers) {
        let va = out.a.valuation_at(&f)?;
        let vb = out.b.valuation_at(&f)?;
        let k = match (va.finite(), vb.finite()) {
            (Some(x), Some(y)) => (x / 4).min(y / 6),
            (Some(x), None) => x / 4,
            (None, Some(y)) => y / 6,
            (None, None) => unreachable!("discriminant is nonzero"),
        };
        if k > 0 {
            out.a = out.a.div_exact(&f.pow(4 * k)).unwrap_or_else(QPoly::zero);
            out.b = out.b.div_exact(&f.pow(6 * k)).unwrap_or_else(QPoly::zero);
        }
    }
    Ok(out)
}

/// Finite places carrying singular fibers, refined until `(v(a), v(b), v(Δ))`
/// is the same at every geometric point of each place, followed by infinity.
pub fn decompose_places(m: &WeierstrassModel) -> Result<Vec<Place>, FibrationError> {
    let delta = m.discriminant()?;
    let mut layers = vec![QPoly::t()];
    layers.extend(squarefree_layers(&m.a));
    layers.extend(squarefree_layers(&m.b));
    layers.extend(squarefree_layers(&delta));
    let mut places = Vec::new();
    for f in coprime_refinement(layers) {
        if f.divides(&delta) {
            places.push(Place::Finite(f));
        }
    }
    places.sort();
    places.push(Place::Infinity);
    Ok(places)
}

fn valuations_at(
    m: &WeierstrassModel,
    delta: &QPoly,
    place: &Place,
    weight: usize,
) -> Result<Valuations, FibrationError> {
    match place {
        Place::Finite(f) => {
            let vd = delta.valuation_at(f)?.finite().expect("Δ ≠ 0");
            Ok(Valuations { va: m.a.valuation_at(f)?, vb: m.b.valuation_at(f)?, vd })
        }
        Place::Infinity => {
            let at_inf = |p: &QPoly, w: usize| match p.degree() {
                None => ExtVal::Infinite,
                Some(d) => ExtVal::Finite((w - d) as u32),
            };
            let vd = at_inf(delta, 12 * weight).finite().expect("Δ ≠ 0");
            Ok(Valuations { va: at_inf(&m.a, 4 * weight), vb: at_inf(&m.b, 6 * weight), vd })
        }
    }
}

/// Classifies every place of a minimal model at its natural weight, without
/// insisting on the K3 Euler sum.
pub fn configuration(m: &WeierstrassModel) -> Result<FiberConfiguration, FibrationError> {
    let delta = m.discriminant()?;
    let weight = m.weight_index() as usize;
    let mut assignments = Vec::new();
    for place in decompose_places(m)? {
        let valuations = valuations_at(m, &delta, &place, weight)?;
        let fiber = classify_valuations(valuations.va, valuations.vb, valuations.vd)?;
        assignments.push(FiberAssignment { place, fiber, valuations });
    }
    Ok(FiberConfiguration { assignments })
}

/// Fiber configuration of a minimal K3 model; the Euler numbers must add up to 24.
pub fn analyze(m: &WeierstrassModel) -> Result<FiberConfiguration, FibrationError> {
    m.check_k3_degrees()?;
    let c = configuration(m)?;
    match c.euler_total() {
        24 => Ok(c),
        12 => Err(FibrationError::RationalElliptic),
        other => Err(FibrationError::EulerMismatch(other)),
    }
}

pub fn j_invariant(m: &WeierstrassModel) -> Result<JInvariant, FibrationError> {
    let delta = m.discriminant()?;
    if m.a.is_zero() {
        return Ok(JInvariant::Constant(rat(0)));
    }
    let num = m.a.pow(3).scale(&rat(4));
    let c = num.leading().expect("a ≠ 0") / delta.leading().expect("Δ ≠ 0");
    if num == delta.scale(&c) {
        Ok(JInvariant::Constant(c))
    } else {
        Ok(JInvariant::Varying)
    }
}

/// `lim_{t→∞} 4a³/Δ`; `None` for a pole.
pub fn j_at_infinity(m: &WeierstrassModel) -> Result<Option<Rat>, FibrationError> {
    let delta = m.discriminant()?;
    if m.a.is_zero() {
        return Ok(Some(rat(0)));
    }
    let num = m.a.pow(3).scale(&rat(4));
    let (dn, dd) = (num.degree().expect("a ≠ 0"), delta.degree().expect("Δ ≠ 0"));
    Ok(match dn.cmp(&dd) {
        std::cmp::Ordering::Less => Some(rat(0)),
        std::cmp::Ordering::Equal => Some(num.leading().unwrap() / delta.leading().unwrap()),
        std::cmp::Ordering::Greater => None,
    })
}

fn proportional(p: &QPoly, q: &QPoly) -> Option<Rat> {
    if p.is_zero() || q.is_zero() {
        return None;
    }
    let c = q.leading().unwrap() / p.leading().unwrap();
    (p.scale(&c) == *q).then_some(c)
}

/// `a₂ = λ_a a₁`, `b₂ = λ_b b₁` with `λ_a³ = λ_b²`: isomorphic over the
/// algebraic closure by `(x, y) ↦ (u²x, u³y)`.
pub fn twist_equivalent(m1: &WeierstrassModel, m2: &WeierstrassModel) -> bool {
    let la = if m1.a.is_zero() && m2.a.is_zero() {
        None
    } else {
        match proportional(&m1.a, &m2.a) {
            Some(l) => Some(l),
            None => return false,
        }
    };
    let lb = if m1.b.is_zero() && m2.b.is_zero() {
        None
    } else {
        match proportional(&m1.b, &m2.b) {
            Some(l) => Some(l),
            None => return false,
        }
    };
    match (la, lb) {
        (Some(la), Some(lb)) => &la * &la * &la == &lb * &lb,
        _ => true,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BaseMap {
    /// `t ↦ λt`
    Scale(Rat),
    /// `t ↦ 1/t`
    Invert,
}

pub fn base_transform(m: &WeierstrassModel, map: &BaseMap) -> Result<WeierstrassModel, FibrationError> {
    m.check_k3_degrees()?;
    match map {
        BaseMap::Scale(l) if l.is_zero() => Err(FibrationError::ZeroScale),
        BaseMap::Scale(l) if l.is_one() => Ok(m.clone()),
        BaseMap::Scale(l) => {
            Ok(WeierstrassModel::new(m.a.rescale_variable(l), m.b.rescale_variable(l)))
        }
        BaseMap::Invert => minimalize(&WeierstrassModel::new(
            m.a.reverse_at_infinity(K3_WEIGHT_A)?,
            m.b.reverse_at_infinity(K3_WEIGHT_B)?,
        )),
    }
}

/// Fibers at `0` and `∞` of the monomial model for each prime order:
/// (II, III) for 19, (IV, III) for 17, (II, III*) for 13, (II*, III) for 11,
/// (IV*, III*) for 7, (II*, III*) for 5.
pub const PRIME_FIBRATION_ROWS: [(u32, FiberType, FiberType); 6] = [
    (19, FiberType::II, FiberType::III),
    (17, FiberType::IV, FiberType::III),
    (13, FiberType::II, FiberType::IIIStar),
    (11, FiberType::IIStar, FiberType::III),
    (7, FiberType::IVStar, FiberType::IIIStar),
    (5, FiberType::IIStar, FiberType::IIIStar),
];

pub fn prime_row(p: u32) -> Option<(FiberType, FiberType)> {
    PRIME_FIBRATION_ROWS.iter().find(|r| r.0 == p).map(|r| (r.1, r.2))
}

/// True when `c` has the given stable pair at `{0, ∞}` (either orientation)
/// and every other singular fiber is `I_1`, forming one place of degree `p`.
pub fn matches_prime_row(c: &FiberConfiguration, p: u32, row: (FiberType, FiberType)) -> bool {
    let pair = c.stable_pair();
    if pair != row && pair != (row.1, row.0) {
        return false;
    }
    let moving: Vec<_> = c.moving_places().collect();
    moving.len() == 1 && moving[0].fiber == FiberType::I(1) && moving[0].place.degree() == p as usize
}

/// All `(m, n)` with `0 ≤ m ≤ 8`, `0 ≤ n ≤ 12` such that `y² = x³ + t^m x + t^n`
/// is a minimal K3 model with the fiber row for `p`, up to swapping `0, ∞`.
pub fn reconstruct_monomial_model(p: u32) -> Vec<(usize, usize)> {
    let Some(row) = prime_row(p) else { return Vec::new() };
    let mut out = Vec::new();
    for m in 0..=K3_WEIGHT_A {
        for n in 0..=K3_WEIGHT_B {
            if m >= 4 && n >= 6 {
                continue;
            }
            let model = WeierstrassModel::monomial(m, n);
            if let Ok(c) = analyze(&model) {
                if matches_prime_row(&c, p, row) {
                    out.push((m, n));
                }
            }
        }
    }
    out
}

/// True when every model is twist-equivalent to the first one, directly or
/// after `t ↦ 1/t`.
pub fn single_twist_class(models: &[WeierstrassModel]) -> bool {
    let Some(first) = models.first() else { return false };
    models.iter().all(|m| {
        twist_equivalent(first, m)
            || base_transform(m, &BaseMap::Invert).is_ok_and(|inv| twist_equivalent(first, &inv))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{parse_poly, ratio};
    use FiberType::*;

    fn model(a: &str, b: &str) -> WeierstrassModel {
        WeierstrassModel::parse(a, b).unwrap()
    }

    fn fin(s: &str) -> Place {
        Place::Finite(parse_poly(s).unwrap().monic())
    }

    fn fibers(c: &FiberConfiguration) -> Vec<(Place, FiberType, usize)> {
        c.assignments.iter().map(|a| (a.place.clone(), a.fiber, a.place.degree())).collect()
    }

    #[test]
    fn discriminants() {
        assert_eq!(model("t^7", "t").discriminant().unwrap(), parse_poly("4t^21 + 27t^2").unwrap());
        assert_eq!(
            model("0", "t^2(t^10-1)").discriminant().unwrap(),
            parse_poly("27 t^4 (t^10 - 1)^2").unwrap()
        );
        assert_eq!(
            model("t^5", "t^4").discriminant().unwrap(),
            parse_poly("t^8 (4 t^7 + 27)").unwrap()
        );
        assert_eq!(model("0", "0").discriminant(), Err(FibrationError::ZeroDiscriminant));
        // 4(-3)^3 + 27(2)^2 = 0
        assert_eq!(model("-3", "2").discriminant(), Err(FibrationError::ZeroDiscriminant));
    }

    #[test]
    fn minimalize_examples() {
        assert_eq!(minimalize(&model("t^11", "t^7")).unwrap(), model("t^7", "t"));
        let m = model("t^7", "t");
        assert_eq!(minimalize(&m).unwrap(), m);
        assert_eq!(minimalize(&model("t^4", "t^6")).unwrap(), model("1", "1"));
        assert_eq!(minimalize(&model("0", "t^13")).unwrap(), model("0", "t"));
        let twice = minimalize(&model("(t-1)^8 t", "(t-1)^12")).unwrap();
        assert_eq!(twice, model("t", "1"));
        assert_eq!(minimalize(&twice).unwrap(), twice);
    }

    #[test]
    fn weight_index_values() {
        assert_eq!(model("t^7", "t").weight_index(), 2);
        assert_eq!(model("1", "1").weight_index(), 0);
        assert_eq!(model("t^4", "t^6").weight_index(), 1);
        assert_eq!(model("0", "t^12").weight_index(), 2);
        assert_eq!(model("t^9", "1").weight_index(), 3);
    }

    #[test]
    fn places_of_x19() {
        let places = decompose_places(&model("t^7", "t")).unwrap();
        assert_eq!(places, vec![fin("t"), fin("4t^19 + 27"), Place::Infinity]);
    }

    #[test]
    fn places_of_printed_n3() {
        let m = model("0", "t^2(t^10-1)");
        assert_eq!(decompose_places(&m).unwrap(), vec![fin("t"), fin("t^10 - 1"), Place::Infinity]);
        let c = analyze(&m).unwrap();
        let ten = &c.assignments[1];
        assert_eq!(ten.valuations, Valuations { va: ExtVal::Infinite, vb: ExtVal::Finite(1), vd: 2 });
    }

    #[test]
    fn constant_discriminant_has_only_infinity() {
        assert_eq!(decompose_places(&model("1", "1")).unwrap(), vec![Place::Infinity]);
    }

    #[test]
    fn analyze_x19() {
        let c = analyze(&model("t^7", "t")).unwrap();
        assert_eq!(
            fibers(&c),
            vec![(fin("t"), II, 1), (fin("4t^19+27"), I(1), 19), (Place::Infinity, III, 1)]
        );
        assert_eq!(c.euler_total(), 24);
    }

    #[test]
    fn analyze_printed_x13() {
        let c = analyze(&model("t^5", "t^4")).unwrap();
        assert_eq!(
            fibers(&c),
            vec![(fin("t"), IVStar, 1), (fin("4t^7+27"), I(1), 7), (Place::Infinity, IIIStar, 1)]
        );
        let v = |i: usize| c.assignments[i].valuations;
        assert_eq!((v(0).va, v(0).vb, v(0).vd), (ExtVal::Finite(5), ExtVal::Finite(4), 8));
        assert_eq!((v(2).va, v(2).vb, v(2).vd), (ExtVal::Finite(3), ExtVal::Finite(8), 9));
    }

    #[test]
    fn analyze_corrected_n3() {
        let c = analyze(&model("0", "t^2 (t^2-1)^5")).unwrap();
        assert_eq!(
            fibers(&c),
            vec![(fin("t"), IV, 1), (fin("t^2-1"), IIStar, 2), (Place::Infinity, I(0), 1)]
        );
        assert_eq!(trivial_lattice(&c).name(), Some("U+E8+E8+A2"));
    }

    #[test]
    fn analyze_n9() {
        let c = analyze(&model("0", "t^5(t^3-1)")).unwrap();
        assert_eq!(
            fibers(&c),
            vec![(fin("t"), IIStar, 1), (fin("t^3-1"), II, 3), (Place::Infinity, IVStar, 1)]
        );
    }

    #[test]
    fn non_k3_models() {
        assert_eq!(analyze(&model("t", "t^2+1")), Err(FibrationError::RationalElliptic));
        assert_eq!(analyze(&model("1", "1")), Err(FibrationError::EulerMismatch(0)));
        assert!(matches!(
            analyze(&model("t^9", "1")),
            Err(FibrationError::DegreeBound { which: 'a', degree: 9, bound: 8 })
        ));
        assert!(matches!(
            analyze(&model("t^4", "t^6 + t^7")),
            Err(FibrationError::Kodaira(KodairaError::NonMinimal { .. }))
        ));
    }

    #[test]
    fn trivial_lattices() {
        let c = analyze(&model("t^7", "t")).unwrap();
        let l = trivial_lattice(&c);
        assert_eq!((l.name(), l.rank()), (Some("U+A1"), 3));
        let all_i1 = FiberConfiguration::from_fibers(vec![(fin("t^24 + 1"), I(1))]);
        assert_eq!(trivial_lattice(&all_i1).name(), Some("U"));
    }

    #[test]
    fn twists() {
        let base = model("0", "t^2(t^10-1)");
        for c in [-5, 2, 7] {
            let scaled = WeierstrassModel::new(QPoly::zero(), base.b.scale(&rat(c)));
            assert!(twist_equivalent(&scaled, &base));
        }
        let d = ratio(3, 2);
        let twisted = WeierstrassModel::new(
            parse_poly("t^7").unwrap().scale(&d.pow(4)),
            QPoly::t().scale(&d.pow(6)),
        );
        assert!(twist_equivalent(&twisted, &model("t^7", "t")));
        assert!(!twist_equivalent(&model("t^7", "t"), &model("t^7", "t^2")));
        // λ_a = 2, λ_b = 2 fails 8 = 4
        assert!(!twist_equivalent(&model("t^7", "t"), &model("2t^7", "2t")));
        assert!(!twist_equivalent(&model("0", "t"), &model("t", "t")));
    }

    #[test]
    fn base_transforms() {
        assert_eq!(base_transform(&model("t^3", "t^8"), &BaseMap::Invert).unwrap(), model("t^5", "t^4"));
        let m = model("t^7 + 2t", "t - 3");
        assert_eq!(base_transform(&m, &BaseMap::Scale(rat(1))).unwrap(), m);
        let inv = base_transform(&m, &BaseMap::Invert).unwrap();
        assert_eq!(base_transform(&inv, &BaseMap::Invert).unwrap(), m);
        assert_eq!(base_transform(&m, &BaseMap::Scale(rat(0))), Err(FibrationError::ZeroScale));
        assert!(matches!(
            base_transform(&model("t^13", "1"), &BaseMap::Invert),
            Err(FibrationError::DegreeBound { .. })
        ));
    }

    #[test]
    fn j_values() {
        assert_eq!(j_invariant(&model("0", "t")).unwrap(), JInvariant::Constant(rat(0)));
        assert_eq!(j_invariant(&model("t", "0")).unwrap(), JInvariant::Constant(rat(1)));
        assert_eq!(j_invariant(&model("t^7", "t")).unwrap(), JInvariant::Varying);
        // a³ ∝ b²: a = 3t², b = 2t³ gives 4·27/(4·27 + 27·4) = 1/2
        assert_eq!(j_invariant(&model("3t^2", "2t^3")).unwrap(), JInvariant::Constant(ratio(1, 2)));
        assert_eq!(j_at_infinity(&model("t^7", "t")).unwrap(), Some(rat(1)));
        assert_eq!(j_at_infinity(&model("t^3", "t^8")).unwrap(), Some(rat(0)));
    }

    #[test]
    fn reconstruct_examples() {
        assert_eq!(reconstruct_monomial_model(19), vec![(1, 11), (7, 1)]);
        assert_eq!(reconstruct_monomial_model(5), vec![(3, 7), (5, 5)]);
        assert_eq!(reconstruct_monomial_model(7), vec![(3, 8), (5, 4)]);
        assert!(reconstruct_monomial_model(23).is_empty());
        for (p, _, _) in PRIME_FIBRATION_ROWS {
            let models: Vec<_> =
                reconstruct_monomial_model(p).into_iter().map(|(m, n)| WeierstrassModel::monomial(m, n)).collect();
            assert!(single_twist_class(&models), "p = {p}");
        }
        assert!(!single_twist_class(&[model("t^7", "t"), model("t^7", "t^2")]));
    }

    #[test]
    fn place_parsing() {
        assert_eq!("inf".parse::<Place>().unwrap(), Place::Infinity);
        assert_eq!("t^3 - 1".parse::<Place>().unwrap(), fin("t^3-1"));
        assert!("2t".parse::<Place>().is_err());
        assert!("t^2".parse::<Place>().is_err());
        assert!("3".parse::<Place>().is_err());
    }
}
