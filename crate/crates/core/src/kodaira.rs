//! Kodaira fiber types in characteristic zero: classification from the
//! orders of vanishing of `a`, `b` and `Δ = 4a³ + 27b²`, plus the numerical
//! data attached to each type.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::arith::{rat, ratio, ExtVal, Rat};
use crate::lattice::Summand;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FiberType {
    /// `I_0` is a smooth fiber.
    I(u32),
    IStar(u32),
    II,
    III,
    IV,
    IVStar,
    IIIStar,
    IIStar,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KodairaError {
    #[error("non-minimal valuations (va={va}, vb={vb}): a Weierstrass model must be minimalized first")]
    NonMinimal { va: ExtVal, vb: ExtVal },
    #[error("valuation triple (va={va}, vb={vb}, vd={vd}) is inconsistent")]
    Inconsistent { va: ExtVal, vb: ExtVal, vd: u32 },
    #[error("unknown fiber type {0:?}")]
    UnknownName(String),
}

/// Looks up the fiber type of a minimal short Weierstrass model from
/// `(v(a), v(b), v(Δ))`.
pub fn classify_valuations(va: ExtVal, vb: ExtVal, vd: u32) -> Result<FiberType, KodairaError> {
    use FiberType::*;
    if va.at_least(4) && vb.at_least(6) {
        return Err(KodairaError::NonMinimal { va, vb });
    }
    let inconsistent = || KodairaError::Inconsistent { va, vb, vd };
    // v(Δ) >= min(3va, 2vb), with equality unless the two orders tie.
    let (a3, b2) = (va.scale(3), vb.scale(2));
    let floor = a3.min(b2).finite().ok_or_else(inconsistent)?;
    let consistent = if a3 == b2 { vd >= floor } else { vd == floor };
    if !consistent {
        return Err(inconsistent());
    }
    let t = match (va.finite(), vb.finite()) {
        _ if vd == 0 => I(0),
        (Some(0), _) => I(vd),
        _ if vb == 1 => II,
        (Some(1), _) => III,
        _ if vb == 2 => IV,
        (Some(2), Some(3)) => IStar(vd - 6),
        _ if vb == 3 || va == 2 => IStar(0),
        _ if vb == 4 => IVStar,
        (Some(3), _) => IIIStar,
        _ if vb == 5 => IIStar,
        _ => return Err(inconsistent()),
    };
    Ok(t)
}

impl FiberType {
    pub fn euler_number(self) -> u32 {
        use FiberType::*;
        match self {
            I(n) => n,
            IStar(n) => n + 6,
            II => 2,
            III => 3,
            IV => 4,
            IVStar => 8,
            IIIStar => 9,
            IIStar => 10,
        }
    }

    /// Irreducible components; a smooth fiber counts as one.
    pub fn component_count(self) -> u32 {
        use FiberType::*;
        match self {
            I(0) => 1,
            I(n) => n,
            IStar(n) => n + 5,
            II => 1,
            III => 2,
            IV => 3,
            IVStar => 7,
            IIIStar => 8,
            IIStar => 9,
        }
    }

    /// Root lattice spanned by the components missing the zero section.
    pub fn root_lattice(self) -> Option<Summand> {
        use FiberType::*;
        match self {
            I(n) if n >= 2 => Some(Summand::A(n as usize - 1)),
            III => Some(Summand::A(1)),
            IV => Some(Summand::A(2)),
            IStar(n) => Some(Summand::D(n as usize + 4)),
            IVStar => Some(Summand::E(6)),
            IIIStar => Some(Summand::E(7)),
            IIStar => Some(Summand::E(8)),
            _ => None,
        }
    }

    pub fn is_singular(self) -> bool {
        self != FiberType::I(0)
    }

    pub fn is_reducible(self) -> bool {
        self.root_lattice().is_some()
    }

    /// Local height corrections for a section meeting each possible
    /// component of the fiber (0 for the identity component).
    pub fn contribution_values(self) -> BTreeSet<Rat> {
        use FiberType::*;
        let mut out = BTreeSet::from([rat(0)]);
        match self {
            I(n) if n >= 2 => {
                let n = i64::from(n);
                out.extend((1..n).map(|i| ratio(i * (n - i), n)));
            }
            III => {
                out.insert(ratio(1, 2));
            }
            IV => {
                out.insert(ratio(2, 3));
            }
            IStar(n) => {
                out.insert(rat(1));
                out.insert(rat(1) + ratio(i64::from(n), 4));
            }
            IVStar => {
                out.insert(ratio(4, 3));
            }
            IIIStar => {
                out.insert(ratio(3, 2));
            }
            _ => {}
        }
        out
    }

    pub fn max_contribution(self) -> Rat {
        self.contribution_values().into_iter().next_back().expect("0 is always present")
    }

    /// Types that a fiber over a fixed point of an order-`p` base action can
    /// have: `I_{pm}`, `I_{pm}^*` (m ≥ 0), `II`, `III`, `IV`, `II^*`, `III^*`, `IV^*`.
    pub fn stable_type_allowed(self, p: u32) -> bool {
        match self {
            FiberType::I(n) | FiberType::IStar(n) => n % p == 0,
            _ => true,
        }
    }

    /// A valuation triple `(v(a), v(b), v(Δ))` realizing this type.
    pub fn representative_valuations(self) -> (ExtVal, ExtVal, u32) {
        use FiberType::*;
        let f = ExtVal::Finite;
        match self {
            I(n) => (f(0), f(0), n),
            IStar(n) => (f(2), f(3), 6 + n),
            II => (f(1), f(1), 2),
            III => (f(1), f(2), 3),
            IV => (f(2), f(2), 4),
            IVStar => (f(3), f(4), 8),
            IIIStar => (f(3), f(5), 9),
            IIStar => (f(4), f(5), 10),
        }
    }

    /// Every type with Euler number at most `max_euler`.
    pub fn all_up_to(max_euler: u32) -> Vec<FiberType> {
        use FiberType::*;
        let mut out: Vec<FiberType> = (0..=max_euler).map(I).collect();
        out.extend((0..=max_euler.saturating_sub(6)).map(IStar).filter(|t| t.euler_number() <= max_euler));
        out.extend(
            [II, III, IV, IVStar, IIIStar, IIStar].into_iter().filter(|t| t.euler_number() <= max_euler),
        );
        out.sort();
        out
    }
}

impl fmt::Display for FiberType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use FiberType::*;
        match self {
            I(n) => write!(f, "I{n}"),
            IStar(n) => write!(f, "I{n}*"),
            II => f.write_str("II"),
            III => f.write_str("III"),
            IV => f.write_str("IV"),
            IVStar => f.write_str("IV*"),
            IIIStar => f.write_str("III*"),
            IIStar => f.write_str("II*"),
        }
    }
}

impl FromStr for FiberType {
    type Err = KodairaError;

    /// Accepts `I3`, `I_3`, `I3*`, `II`, `III*`, ...
    fn from_str(s: &str) -> Result<Self, KodairaError> {
        use FiberType::*;
        let raw = s.trim();
        let unknown = || KodairaError::UnknownName(raw.to_string());
        let (body, star) = match raw.strip_suffix('*') {
            Some(b) => (b, true),
            None => (raw, false),
        };
        let named = match body {
            "II" => Some(if star { IIStar } else { II }),
            "III" => Some(if star { IIIStar } else { III }),
            "IV" => Some(if star { IVStar } else { IV }),
            _ => None,
        };
        if let Some(t) = named {
            return Ok(t);
        }
        let digits = body.strip_prefix('I').ok_or_else(unknown)?.trim_start_matches('_');
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(unknown());
        }
        let n: u32 = digits.parse().map_err(|_| unknown())?;
        Ok(if star { IStar(n) } else { I(n) })
    }
}

impl Serialize for FiberType {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for FiberType {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use FiberType::*;

    const INF: ExtVal = ExtVal::Infinite;

    fn f(v: u32) -> ExtVal {
        ExtVal::Finite(v)
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify_valuations(f(7), f(1), 2).unwrap(), II);
        assert_eq!(classify_valuations(f(1), f(11), 3).unwrap(), III);
        assert_eq!(classify_valuations(INF, f(5), 10).unwrap(), IIStar);
        assert_eq!(classify_valuations(f(0), f(0), 1).unwrap(), I(1));
        assert_eq!(classify_valuations(f(2), f(3), 9).unwrap(), IStar(3));
        assert_eq!(classify_valuations(f(3), f(3), 6).unwrap(), IStar(0));
        assert_eq!(classify_valuations(f(5), f(4), 8).unwrap(), IVStar);
        assert_eq!(classify_valuations(f(3), f(8), 9).unwrap(), IIIStar);
        assert_eq!(classify_valuations(f(1), f(0), 0).unwrap(), I(0));
    }

    #[test]
    fn classify_errors() {
        assert!(matches!(classify_valuations(f(4), f(6), 12), Err(KodairaError::NonMinimal { .. })));
        assert!(matches!(classify_valuations(INF, INF, 0), Err(KodairaError::NonMinimal { .. })));
        assert!(matches!(classify_valuations(f(1), f(1), 3), Err(KodairaError::Inconsistent { .. })));
        assert!(matches!(classify_valuations(f(0), f(1), 2), Err(KodairaError::Inconsistent { .. })));
        assert!(matches!(classify_valuations(f(2), f(4), 7), Err(KodairaError::Inconsistent { .. })));
    }

    #[test]
    fn numerical_data() {
        assert_eq!(IIStar.euler_number(), 10);
        assert_eq!(I(0).euler_number(), 0);
        assert_eq!(IVStar.euler_number() + 3 * II.euler_number() + IIStar.euler_number(), 24);
        assert_eq!(III.component_count(), 2);
        assert_eq!(IIStar.component_count(), 9);
        assert_eq!(I(3).component_count(), 3);
        assert_eq!(IIStar.root_lattice(), Some(Summand::E(8)));
        assert_eq!(IV.root_lattice(), Some(Summand::A(2)));
        assert_eq!(I(1).root_lattice(), None);
        assert_eq!(IStar(2).root_lattice(), Some(Summand::D(6)));
    }

    #[test]
    fn contributions() {
        assert_eq!(IVStar.contribution_values(), BTreeSet::from([rat(0), ratio(4, 3)]));
        assert_eq!(III.contribution_values(), BTreeSet::from([rat(0), ratio(1, 2)]));
        assert_eq!(II.contribution_values(), BTreeSet::from([rat(0)]));
        assert_eq!(
            I(4).contribution_values(),
            BTreeSet::from([rat(0), ratio(3, 4), rat(1)])
        );
        assert_eq!(IStar(2).contribution_values(), BTreeSet::from([rat(0), rat(1), ratio(3, 2)]));
    }

    #[test]
    fn max_contribution_below_two() {
        // Holds for every additive type up to II* and for I_n with n < 8;
        // I_8, I_9, I_10 and I_4* reach or exceed 2.
        for t in FiberType::all_up_to(10) {
            let m = t.max_contribution();
            match t {
                I(8) | IStar(4) => assert_eq!(m, rat(2)),
                I(9) => assert_eq!(m, ratio(20, 9)),
                I(10) => assert_eq!(m, ratio(5, 2)),
                _ => assert!(m < rat(2), "{t}: {m}"),
            }
        }
    }

    #[test]
    fn stable_types() {
        assert!(I(11).stable_type_allowed(11));
        assert!(!I(3).stable_type_allowed(11));
        assert!(IStar(0).stable_type_allowed(5));
        assert!(I(0).stable_type_allowed(7));
        assert!(IIIStar.stable_type_allowed(13));
    }

    #[test]
    fn names_round_trip() {
        for t in FiberType::all_up_to(24) {
            assert_eq!(t.to_string().parse::<FiberType>().unwrap(), t);
        }
        assert_eq!("I_3".parse::<FiberType>().unwrap(), I(3));
        assert_eq!("I3*".parse::<FiberType>().unwrap(), IStar(3));
        for bad in ["V", "I", "I*", "Ix", "IIII", ""] {
            assert!(bad.parse::<FiberType>().is_err(), "{bad}");
        }
    }

    #[test]
    fn representatives_classify_back() {
        for t in FiberType::all_up_to(24) {
            let (va, vb, vd) = t.representative_valuations();
            assert_eq!(classify_valuations(va, vb, vd).unwrap(), t);
        }
    }

    #[test]
    fn reducible_rank_matches_components() {
        for t in FiberType::all_up_to(24) {
            if let Some(r) = t.root_lattice() {
                assert_eq!(r.rank() as u32, t.component_count() - 1, "{t}");
            }
        }
    }
}
