//! Diagonal automorphisms `(x, y, t) ↦ (ζ^α x, ζ^β y, ζ^γ t)` of Weierstrass
//! models and of weighted hypersurfaces, with their action on the 2-form,
//! on the base and on the fixed-point data.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{parse_rat, rat, Rat};
use crate::cyclotomic::ramanujan_sum;
use crate::fibration::{FiberConfiguration, Place, WeierstrassModel};
use crate::kodaira::FiberType;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AutomError {
    #[error("automorphism order must be positive")]
    ZeroOrder,
    #[error("place {0} is not stable under the base action")]
    UnstablePlace(String),
    #[error("place of degree {degree} cannot split into orbits of size {orbit}")]
    OrbitSizeMismatch { degree: usize, orbit: u64 },
    #[error("fiber {0} moves under the base action but is not of type I1 or II")]
    MovingFiberType(FiberType),
    #[error("g^{k} is the identity for N = {n}")]
    TrivialPower { n: u64, k: u64 },
    #[error("{0} exponents given for {1} coordinates")]
    LengthMismatch(usize, usize),
    #[error("monomial {index} has weighted degree {found}, expected {expected}")]
    NotHomogeneous { index: usize, found: u64, expected: u64 },
    #[error("weights sum to {sum}, degree is {degree}: not a K3 hypersurface")]
    NotK3 { sum: u64, degree: u64 },
    #[error("cannot parse equation: {0}")]
    Parse(String),
}

/// `(x, y, t) ↦ (ζ_N^α x, ζ_N^β y, ζ_N^γ t)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MonomialAutomorphism {
    pub n: u64,
    pub alpha: u64,
    pub beta: u64,
    pub gamma: u64,
}

impl MonomialAutomorphism {
    pub fn new(n: u64, alpha: i64, beta: i64, gamma: i64) -> Result<Self, AutomError> {
        if n == 0 {
            return Err(AutomError::ZeroOrder);
        }
        let r = |v: i64| v.rem_euclid(n as i64) as u64;
        Ok(MonomialAutomorphism { n, alpha: r(alpha), beta: r(beta), gamma: r(gamma) })
    }

    pub fn identity(n: u64) -> Self {
        MonomialAutomorphism { n, alpha: 0, beta: 0, gamma: 0 }
    }

    pub fn is_identity(&self) -> bool {
        self.alpha == 0 && self.beta == 0 && self.gamma == 0
    }

    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "composing automorphisms of different N");
        let n = self.n;
        MonomialAutomorphism {
            n,
            alpha: (self.alpha + other.alpha) % n,
            beta: (self.beta + other.beta) % n,
            gamma: (self.gamma + other.gamma) % n,
        }
    }

    pub fn power(&self, k: u64) -> Self {
        let n = self.n;
        let m = |v: u64| ((v as u128 * k as u128) % n as u128) as u64;
        MonomialAutomorphism { n, alpha: m(self.alpha), beta: m(self.beta), gamma: m(self.gamma) }
    }

    pub fn inverse(&self) -> Self {
        let n = self.n;
        let neg = |v: u64| (n - v) % n;
        MonomialAutomorphism { n, alpha: neg(self.alpha), beta: neg(self.beta), gamma: neg(self.gamma) }
    }

    fn exponent_triple(&self) -> (u64, u64, u64) {
        (self.gamma, self.beta, self.alpha)
    }
}

impl fmt::Display for MonomialAutomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}; {}, {}, {})", self.n, self.alpha, self.beta, self.gamma)
    }
}

/// Which term of `y² = x³ + a(t)x + b(t)` a congruence comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EquationTerm {
    Cubic,
    A(usize),
    B(usize),
}

impl fmt::Display for EquationTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EquationTerm::Cubic => f.write_str("x^3"),
            EquationTerm::A(m) => write!(f, "t^{m} x"),
            EquationTerm::B(m) => write!(f, "t^{m}"),
        }
    }
}

/// A term whose weight `found` differs from the weight `2β` of `y²`, mod N.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruenceFailure {
    pub term: EquationTerm,
    pub found: u64,
    pub expected: u64,
}

impl fmt::Display for CongruenceFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} != {}", self.term, self.found, self.expected)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvarianceCheck {
    pub valid: bool,
    pub failures: Vec<CongruenceFailure>,
}

pub fn check_weierstrass_invariance(m: &WeierstrassModel, g: &MonomialAutomorphism) -> InvarianceCheck {
    let n = g.n;
    let expected = (2 * g.beta) % n;
    let mut terms = vec![(EquationTerm::Cubic, (3 * g.alpha) % n)];
    for k in m.a.support() {
        terms.push((EquationTerm::A(k), ((k as u64 % n) * g.gamma + g.alpha) % n));
    }
    for k in m.b.support() {
        terms.push((EquationTerm::B(k), ((k as u64 % n) * g.gamma) % n));
    }
    let failures: Vec<CongruenceFailure> = terms
        .into_iter()
        .filter(|&(_, found)| found != expected)
        .map(|(term, found)| CongruenceFailure { term, found, expected })
        .collect();
    InvarianceCheck { valid: failures.is_empty(), failures }
}

/// `k` with `g*ω = ζ^k ω` for `ω = dx∧dt / 2y`.
pub fn omega_multiplier(g: &MonomialAutomorphism) -> u64 {
    (g.alpha + g.gamma + g.n - g.beta) % g.n
}

pub fn omega_is_primitive(g: &MonomialAutomorphism) -> bool {
    omega_multiplier(g).gcd(&g.n) == 1
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Orders {
    pub total: u64,
    pub base: u64,
}

pub fn orders(g: &MonomialAutomorphism) -> Orders {
    let n = g.n;
    let common = n.gcd(&g.alpha).gcd(&g.beta).gcd(&g.gamma);
    Orders { total: n / common, base: n / n.gcd(&g.gamma) }
}

/// A base-stable place other than `0, ∞`: its points fall into `count`
/// orbits of `size` points each.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaceOrbits {
    pub place: Place,
    pub fiber: FiberType,
    pub size: u64,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitStructure {
    /// Places whose points are all fixed by the base action.
    pub fixed: Vec<(Place, FiberType)>,
    pub orbits: Vec<PlaceOrbits>,
}

/// Splits the places of `c` under `t ↦ ζ^γ t`. A finite place is mapped to
/// itself exactly when its exponents agree mod the base order; any other
/// place would have to be permuted with a different place, which a single
/// rational place cannot express, so it is rejected.
pub fn orbit_structure(c: &FiberConfiguration, g: &MonomialAutomorphism) -> Result<OrbitStructure, AutomError> {
    let r = orders(g).base;
    let mut fixed = Vec::new();
    let mut orbits = Vec::new();
    for a in &c.assignments {
        if r == 1 || a.place.is_infinity() || a.place.is_zero_point() {
            fixed.push((a.place.clone(), a.fiber));
            continue;
        }
        let Place::Finite(f) = &a.place else { unreachable!() };
        let support = f.support();
        let residue = support[0] as u64 % r;
        if support.iter().any(|&k| k as u64 % r != residue) {
            return Err(AutomError::UnstablePlace(a.place.to_string()));
        }
        let degree = a.place.degree();
        if !(degree as u64).is_multiple_of(r) {
            return Err(AutomError::OrbitSizeMismatch { degree, orbit: r });
        }
        orbits.push(PlaceOrbits { place: a.place.clone(), fiber: a.fiber, size: r, count: degree / r as usize });
    }
    Ok(OrbitStructure { fixed, orbits })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitIdentity {
    pub chi_stable: u32,
    pub residual: i64,
    /// Orbits of `I1` fibers.
    pub c1: u64,
    /// Orbits of `II` fibers.
    pub c2: u64,
    pub consistent: bool,
}

/// Checks `24 = χ(stable fibers) + r·c1 + 2r·c2` against the orbits that
/// actually occur, `r` being the base order.
pub fn euler_orbit_identity(c: &FiberConfiguration, g: &MonomialAutomorphism) -> Result<OrbitIdentity, AutomError> {
    let s = orbit_structure(c, g)?;
    let r = orders(g).base;
    let chi_stable: u32 = s.fixed.iter().map(|(p, f)| p.degree() as u32 * f.euler_number()).sum();
    let (mut c1, mut c2) = (0u64, 0u64);
    for o in s.orbits.iter().filter(|o| o.fiber.is_singular()) {
        match o.fiber {
            FiberType::I(1) => c1 += o.count as u64,
            FiberType::II => c2 += o.count as u64,
            other => return Err(AutomError::MovingFiberType(other)),
        }
    }
    let residual = 24 - chi_stable as i64;
    let consistent = residual == (r * c1 + 2 * r * c2) as i64;
    Ok(OrbitIdentity { chi_stable, residual, c1, c2, consistent })
}

/// Lefschetz number of `g^k` when `g` acts trivially on a Néron–Severi
/// lattice of rank `rank_s` and by `ζ_N` on its complement.
pub fn chi_fixed_trace(rank_s: u64, n: u64, k: u64) -> Result<i64, AutomError> {
    if n == 0 {
        return Err(AutomError::ZeroOrder);
    }
    if k.is_multiple_of(n) {
        return Err(AutomError::TrivialPower { n, k });
    }
    Ok(2 + rank_s as i64 + ramanujan_sum(n, k))
}

/// All exponent triples mod `n` leaving `m` invariant, in lexicographic order.
pub fn solve_automorphisms(m: &WeierstrassModel, n: u64) -> Vec<MonomialAutomorphism> {
    let mut out = Vec::new();
    for alpha in 0..n {
        for beta in 0..n {
            if (3 * alpha) % n != (2 * beta) % n {
                continue;
            }
            for gamma in 0..n {
                let g = MonomialAutomorphism { n, alpha, beta, gamma };
                if check_weierstrass_invariance(m, &g).valid {
                    out.push(g);
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicGroup {
    pub generator: MonomialAutomorphism,
    pub elements: BTreeSet<MonomialAutomorphism>,
}

impl CyclicGroup {
    pub fn generated_by(g: MonomialAutomorphism) -> Self {
        let mut elements = BTreeSet::new();
        let mut x = MonomialAutomorphism::identity(g.n);
        loop {
            elements.insert(x);
            x = x.compose(&g);
            if x.is_identity() {
                break;
            }
        }
        CyclicGroup { generator: g, elements }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

/// The maximal cyclic subgroups spanned by `solutions`, each with the
/// generator of smallest nonzero base exponent `γ`.
pub fn cyclic_groups(solutions: &[MonomialAutomorphism]) -> Vec<CyclicGroup> {
    let mut groups: Vec<CyclicGroup> = Vec::new();
    for &g in solutions {
        let h = CyclicGroup::generated_by(g);
        if groups.iter().any(|k| h.elements.is_subset(&k.elements)) {
            continue;
        }
        groups.retain(|k| !k.elements.is_subset(&h.elements));
        groups.push(h);
    }
    for grp in &mut groups {
        let size = grp.order();
        grp.generator = *grp
            .elements
            .iter()
            .filter(|e| CyclicGroup::generated_by(**e).order() == size)
            .min_by_key(|e| {
                let (gamma, beta, alpha) = e.exponent_triple();
                (gamma == 0, gamma, beta, alpha)
            })
            .expect("a cyclic group has a generator");
    }
    groups.sort_by_key(|g| (std::cmp::Reverse(g.order()), g.generator));
    groups
}

/// `Σ c_e · Π x_i^{e_i} = 0` in weighted projective space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedHypersurface {
    pub weights: Vec<u64>,
    pub degree: u64,
    pub monomials: Vec<(Vec<u64>, Rat)>,
}

impl WeightedHypersurface {
    pub fn new(weights: Vec<u64>, degree: u64, monomials: Vec<(Vec<u64>, Rat)>) -> Result<Self, AutomError> {
        let sum: u64 = weights.iter().sum();
        if sum != degree {
            return Err(AutomError::NotK3 { sum, degree });
        }
        for (index, (e, _)) in monomials.iter().enumerate() {
            if e.len() != weights.len() {
                return Err(AutomError::LengthMismatch(e.len(), weights.len()));
            }
            let found: u64 = e.iter().zip(&weights).map(|(a, w)| a * w).sum();
            if found != degree {
                return Err(AutomError::NotHomogeneous { index, found, expected: degree });
            }
        }
        Ok(WeightedHypersurface { weights, degree, monomials })
    }

    /// Parses a sum of monomials such as `y^2 + x0^6 + 2*x0*x1^5` in the
    /// given variables; the degree is taken to be the weight sum.
    pub fn parse(weights: Vec<u64>, vars: &[&str], equation: &str) -> Result<Self, AutomError> {
        if vars.len() != weights.len() {
            return Err(AutomError::LengthMismatch(vars.len(), weights.len()));
        }
        let degree = weights.iter().sum();
        let monomials = parse_monomials(vars, equation)?;
        WeightedHypersurface::new(weights, degree, monomials)
    }
}

fn parse_monomials(vars: &[&str], equation: &str) -> Result<Vec<(Vec<u64>, Rat)>, AutomError> {
    let err = |m: &str| AutomError::Parse(m.to_string());
    let src: String = equation.chars().filter(|c| !c.is_whitespace()).collect();
    if src.is_empty() {
        return Err(err("empty equation"));
    }
    let mut terms = Vec::new();
    let mut start = 0;
    for (i, ch) in src.char_indices() {
        if (ch == '+' || ch == '-') && i > 0 && !src[..i].ends_with('^') {
            terms.push(&src[start..i]);
            start = i;
        }
    }
    terms.push(&src[start..]);
    let mut out: Vec<(Vec<u64>, Rat)> = Vec::new();
    for term in terms {
        let (sign, body) = match term.strip_prefix('-') {
            Some(rest) => (rat(-1), rest),
            None => (rat(1), term.strip_prefix('+').unwrap_or(term)),
        };
        if body.is_empty() {
            return Err(err("dangling sign"));
        }
        let mut coeff = sign;
        let mut exps = vec![0u64; vars.len()];
        for factor in body.split('*') {
            if factor.is_empty() {
                return Err(err("empty factor"));
            }
            if let Some(c) = parse_rat(factor) {
                coeff *= c;
                continue;
            }
            let (name, power) = match factor.split_once('^') {
                Some((n, p)) => (n, p.parse::<u64>().map_err(|_| err(&format!("bad exponent in {factor}")))?),
                None => (factor, 1),
            };
            let idx = vars
                .iter()
                .position(|v| *v == name)
                .ok_or_else(|| err(&format!("unknown variable {name}")))?;
            exps[idx] += power;
        }
        match out.iter_mut().find(|(e, _)| *e == exps) {
            Some((_, c)) => *c += coeff,
            None => out.push((exps, coeff)),
        }
    }
    out.retain(|(_, c)| !c.is_zero());
    Ok(out)
}

/// `x_i ↦ ζ_N^{e_i} x_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedAutomorphism {
    pub n: u64,
    pub exponents: Vec<u64>,
}

impl WeightedAutomorphism {
    pub fn new(n: u64, exponents: Vec<i64>) -> Result<Self, AutomError> {
        if n == 0 {
            return Err(AutomError::ZeroOrder);
        }
        Ok(WeightedAutomorphism {
            n,
            exponents: exponents.into_iter().map(|e| e.rem_euclid(n as i64) as u64).collect(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedCheck {
    pub valid: bool,
    /// `a_f` with `f ∘ g = ζ^{a_f} f`, when valid.
    pub equation_multiplier: Option<u64>,
    pub omega_multiplier: Option<u64>,
    /// Whether the 2-form multiplier is coprime to N, when valid.
    pub omega_primitive: Option<bool>,
    /// Weight of each monomial under `g`, mod N.
    pub monomial_weights: Vec<u64>,
}

pub fn check_weighted_invariance(
    h: &WeightedHypersurface,
    g: &WeightedAutomorphism,
) -> Result<WeightedCheck, AutomError> {
    if g.exponents.len() != h.weights.len() {
        return Err(AutomError::LengthMismatch(g.exponents.len(), h.weights.len()));
    }
    let n = g.n;
    let monomial_weights: Vec<u64> = h
        .monomials
        .iter()
        .map(|(e, _)| e.iter().zip(&g.exponents).map(|(a, x)| (a % n) * x % n).sum::<u64>() % n)
        .collect();
    let first = monomial_weights.first().copied().unwrap_or(0);
    let valid = monomial_weights.iter().all(|&w| w == first);
    let (equation_multiplier, omega_multiplier) = if valid {
        let total: u64 = g.exponents.iter().sum::<u64>() % n;
        (Some(first), Some((total + n - first) % n))
    } else {
        (None, None)
    };
    let omega_primitive = omega_multiplier.map(|k| k.gcd(&n) == 1);
    Ok(WeightedCheck { valid, equation_multiplier, omega_multiplier, omega_primitive, monomial_weights })
}

/// Order of `g` as an automorphism of weighted projective space: the least
/// `k > 0` with `k·e ≡ c·w (mod N)` for some `c`.
pub fn weighted_order(weights: &[u64], g: &WeightedAutomorphism) -> u64 {
    let n = g.n;
    (1..=n)
        .find(|&k| {
            (0..n).any(|c| g.exponents.iter().zip(weights).all(|(e, w)| (k * e) % n == (c * w) % n))
        })
        .unwrap_or(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::parse_poly;
    use crate::fibration::analyze;
    use FiberType::*;

    fn g(n: u64, a: i64, b: i64, c: i64) -> MonomialAutomorphism {
        MonomialAutomorphism::new(n, a, b, c).unwrap()
    }

    fn model(a: &str, b: &str) -> WeierstrassModel {
        WeierstrassModel::parse(a, b).unwrap()
    }

    #[test]
    fn invariance_examples() {
        assert!(check_weierstrass_invariance(&model("t^7", "t"), &g(19, 7, 1, 2)).valid);
        let bad = check_weierstrass_invariance(&model("t^5", "t^4"), &g(13, 5, 1, 2));
        assert!(!bad.valid);
        assert_eq!(
            bad.failures,
            vec![CongruenceFailure { term: EquationTerm::B(4), found: 8, expected: 2 }]
        );
        assert!(check_weierstrass_invariance(&model("t^3 + 5", "t - 1"), &g(7, 0, 0, 0)).valid);
    }

    #[test]
    fn multipliers_and_orders() {
        assert_eq!(omega_multiplier(&g(19, 7, 1, 2)), 8);
        assert_eq!(omega_multiplier(&g(27, 2, 3, 6)), 5);
        assert_eq!(omega_multiplier(&g(3, 1, 0, 0)), 1);
        assert_eq!(orders(&g(19, 7, 1, 2)), Orders { total: 19, base: 19 });
        assert_eq!(orders(&g(9, 2, 3, 3)), Orders { total: 9, base: 3 });
        assert_eq!(orders(&g(3, 1, 0, 0)), Orders { total: 3, base: 1 });
    }

    #[test]
    fn orbits_of_x19_and_x9() {
        let c = analyze(&model("t^7", "t")).unwrap();
        let s = orbit_structure(&c, &g(19, 7, 1, 2)).unwrap();
        assert_eq!(s.fixed.iter().map(|x| x.1).collect::<Vec<_>>(), vec![II, III]);
        assert_eq!(s.orbits.len(), 1);
        assert_eq!((s.orbits[0].size, s.orbits[0].count, s.orbits[0].place.degree()), (19, 1, 19));

        let c = analyze(&model("0", "t^5(t^3-1)")).unwrap();
        let s = orbit_structure(&c, &g(9, 2, 3, 3)).unwrap();
        assert_eq!(s.fixed.iter().map(|x| x.1).collect::<Vec<_>>(), vec![IIStar, IVStar]);
        assert_eq!((s.orbits[0].fiber, s.orbits[0].size, s.orbits[0].count), (II, 3, 1));

        let c = analyze(&model("0", "t^2(t^10-1)")).unwrap();
        let s = orbit_structure(&c, &g(3, 1, 0, 0)).unwrap();
        assert!(s.orbits.is_empty());
        assert_eq!(s.fixed.len(), c.assignments.len());
    }

    #[test]
    fn unstable_place_is_rejected() {
        let c = FiberConfiguration::from_fibers(vec![(Place::Finite(parse_poly("t - 1").unwrap()), I(1))]);
        assert!(matches!(orbit_structure(&c, &g(5, 0, 0, 1)), Err(AutomError::UnstablePlace(_))));
    }

    #[test]
    fn orbit_identities() {
        let c = analyze(&model("t^7", "t")).unwrap();
        let id = euler_orbit_identity(&c, &g(19, 7, 1, 2)).unwrap();
        assert_eq!((id.chi_stable, id.residual, id.c1, id.c2, id.consistent), (5, 19, 1, 0, true));

        let c = analyze(&model("0", "t(t^9-1)")).unwrap();
        let id = euler_orbit_identity(&c, &g(27, 2, 3, 6)).unwrap();
        assert_eq!((id.chi_stable, id.residual, id.c1, id.c2, id.consistent), (6, 18, 0, 1, true));
    }

    #[test]
    fn moving_fiber_of_wrong_type() {
        let c = FiberConfiguration::from_fibers(vec![(Place::Finite(parse_poly("t^5 + 1").unwrap()), I(2))]);
        assert_eq!(euler_orbit_identity(&c, &g(5, 0, 0, 1)), Err(AutomError::MovingFiberType(I(2))));
    }

    #[test]
    fn trace_examples() {
        assert_eq!(chi_fixed_trace(4, 19, 1), Ok(5));
        assert_eq!(chi_fixed_trace(16, 9, 1), Ok(18));
        assert_eq!(chi_fixed_trace(10, 13, 1), Ok(11));
        assert_eq!(chi_fixed_trace(4, 19, 38), Err(AutomError::TrivialPower { n: 19, k: 38 }));
    }

    #[test]
    fn solve_examples() {
        let sols = solve_automorphisms(&model("t^5", "t"), 13);
        assert_eq!(sols.len(), 13);
        let groups = cyclic_groups(&sols);
        assert_eq!(groups.len(), 1);
        assert_eq!(groups[0].generator, g(13, 9, 7, 1));

        let sols = solve_automorphisms(&model("t^5", "t^4"), 13);
        assert!(sols.iter().all(|s| s.gamma == 0));
        assert_eq!(sols, vec![MonomialAutomorphism::identity(13)]);

        assert_eq!(solve_automorphisms(&model("t^7", "t"), 1), vec![MonomialAutomorphism::identity(1)]);
    }

    #[test]
    fn solutions_form_a_group() {
        for (a, b, n) in [("t^7", "t", 19), ("0", "t^5(t^3-1)", 9), ("t^5", "t^5", 10), ("t", "0", 12)] {
            let sols: BTreeSet<_> = solve_automorphisms(&model(a, b), n).into_iter().collect();
            for x in &sols {
                assert!(sols.contains(&x.inverse()));
                for y in &sols {
                    assert!(sols.contains(&x.compose(y)));
                }
            }
        }
    }

    fn x25() -> WeightedHypersurface {
        WeightedHypersurface::parse(vec![1, 1, 1, 3], &["x0", "x1", "x2", "y"], "y^2 + x0^6 + x0*x1^5 + x1*x2^5")
            .unwrap()
    }

    #[test]
    fn weighted_x25() {
        let h = x25();
        let g = WeightedAutomorphism::new(25, vec![0, 20, 1, 0]).unwrap();
        let r = check_weighted_invariance(&h, &g).unwrap();
        assert!(r.valid);
        assert_eq!((r.equation_multiplier, r.omega_multiplier), (Some(0), Some(21)));
        assert_eq!(weighted_order(&h.weights, &g), 25);

        let id = WeightedAutomorphism::new(25, vec![0, 0, 0, 0]).unwrap();
        let r = check_weighted_invariance(&h, &id).unwrap();
        assert_eq!((r.valid, r.equation_multiplier, r.omega_multiplier), (true, Some(0), Some(0)));

        let bad = WeightedAutomorphism::new(25, vec![0, 20, 2, 0]).unwrap();
        let r = check_weighted_invariance(&h, &bad).unwrap();
        assert!(!r.valid);
        assert_eq!(r.monomial_weights, vec![0, 0, 0, 5]);
    }

    #[test]
    fn weighted_validation() {
        assert!(matches!(
            WeightedHypersurface::parse(vec![1, 1, 1, 3], &["x0", "x1", "x2", "y"], "y^2 + x0^5"),
            Err(AutomError::NotHomogeneous { index: 1, found: 5, expected: 6 })
        ));
        assert!(matches!(
            WeightedHypersurface::parse(vec![1, 1, 1, 3], &["x0", "x1", "x2", "y"], "y^2 + z^6"),
            Err(AutomError::Parse(_))
        ));
        let h = WeightedHypersurface::parse(vec![1, 1, 1, 3], &["x0", "x1", "x2", "y"], "y^2 - 1/2*x0^6 + x0^6").unwrap();
        assert_eq!(h.monomials[1].1, crate::arith::ratio(1, 2));
    }
}
