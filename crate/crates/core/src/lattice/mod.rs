//! Integral symmetric bilinear forms: root lattices, direct sums, inertia,
//! Smith normal form and discriminant groups.

mod matrix;
mod snf;

pub use matrix::{is_unimodular, IntMatrix};
pub use snf::{smith_normal_form, SmithForm};

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::arith::Rat;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("unknown lattice name {0:?}")]
    UnknownName(String),
    #[error("invalid rank {n} for {family}")]
    InvalidRank { family: char, n: usize },
    #[error("Gram matrix is not symmetric")]
    NotSymmetric,
    #[error("Gram matrix is degenerate")]
    Degenerate,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("empty direct sum")]
    EmptySum,
}

/// Irreducible building blocks of the lattices that occur here.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Summand {
    /// Hyperbolic plane.
    U,
    A(usize),
    D(usize),
    E(usize),
}

impl Summand {
    pub fn rank(self) -> usize {
        match self {
            Summand::U => 2,
            Summand::A(n) | Summand::D(n) | Summand::E(n) => n,
        }
    }

    fn validate(self) -> Result<Self, LatticeError> {
        match self {
            Summand::A(n) if n < 1 => Err(LatticeError::InvalidRank { family: 'A', n }),
            Summand::D(n) if n < 4 => Err(LatticeError::InvalidRank { family: 'D', n }),
            Summand::E(n) if !(6..=8).contains(&n) => {
                Err(LatticeError::InvalidRank { family: 'E', n })
            }
            s => Ok(s),
        }
    }

    /// `U` first, then `E`, `D`, `A`, larger rank first within a family.
    fn sort_key(self) -> (u8, std::cmp::Reverse<usize>) {
        match self {
            Summand::U => (0, std::cmp::Reverse(2)),
            Summand::E(n) => (1, std::cmp::Reverse(n)),
            Summand::D(n) => (2, std::cmp::Reverse(n)),
            Summand::A(n) => (3, std::cmp::Reverse(n)),
        }
    }
}

impl Ord for Summand {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl PartialOrd for Summand {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Summand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Summand::U => f.write_str("U"),
            Summand::A(n) => write!(f, "A{n}"),
            Summand::D(n) => write!(f, "D{n}"),
            Summand::E(n) => write!(f, "E{n}"),
        }
    }
}

impl FromStr for Summand {
    type Err = LatticeError;

    /// Accepts `U`, `A2`, `A_2`, `E8`, `D4`, ...
    fn from_str(s: &str) -> Result<Self, LatticeError> {
        let s = s.trim();
        let unknown = || LatticeError::UnknownName(s.to_string());
        if s == "U" {
            return Ok(Summand::U);
        }
        let mut chars = s.chars();
        let family = chars.next().ok_or_else(unknown)?;
        let rest = chars.as_str().trim_start_matches('_');
        let n: usize = rest.parse().map_err(|_| unknown())?;
        let out = match family {
            'A' => Summand::A(n),
            'D' => Summand::D(n),
            'E' => Summand::E(n),
            _ => return Err(unknown()),
        };
        out.validate()
    }
}

/// Symmetric integral Gram matrix with an optional label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntLattice {
    gram: IntMatrix,
    name: Option<String>,
}

/// Invariant factors `d_1 | d_2 | ...` of `L^*/L`, each greater than one.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DiscriminantGroup {
    pub invariant_factors: Vec<BigInt>,
}

impl DiscriminantGroup {
    pub fn order(&self) -> BigInt {
        self.invariant_factors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    /// Minimal number of generators.
    pub fn length(&self) -> usize {
        self.invariant_factors.len()
    }
}

impl fmt::Display for DiscriminantGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return f.write_str("0");
        }
        let parts: Vec<String> =
            self.invariant_factors.iter().map(|d| format!("Z/{d}")).collect();
        f.write_str(&parts.join(" + "))
    }
}

impl IntLattice {
    pub fn new(gram: IntMatrix, name: Option<String>) -> Result<Self, LatticeError> {
        if !gram.is_symmetric() {
            return Err(LatticeError::NotSymmetric);
        }
        Ok(IntLattice { gram, name })
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn is_even(&self) -> bool {
        (0..self.rank()).all(|i| (&self.gram[(i, i)] % 2u32).is_zero())
    }

    pub fn determinant(&self) -> BigInt {
        self.gram.determinant()
    }

    /// Sylvester inertia `(positive, negative)` via rational congruence
    /// diagonalization.
    pub fn signature(&self) -> Result<(usize, usize), LatticeError> {
        let n = self.rank();
        let mut a: Vec<Vec<Rat>> = self
            .gram
            .to_rows()
            .into_iter()
            .map(|r| r.into_iter().map(Rat::from_integer).collect())
            .collect();
        let (mut pos, mut neg) = (0, 0);
        for k in 0..n {
            if a[k][k].is_zero() {
                if let Some(j) = (k + 1..n).find(|&j| !a[j][j].is_zero()) {
                    a.swap(k, j);
                    for row in a.iter_mut() {
                        row.swap(k, j);
                    }
                } else if let Some(j) = (k + 1..n).find(|&j| !a[k][j].is_zero()) {
                    // e_k += e_j makes the diagonal 2 a_kj.
                    for c in 0..n {
                        let v = a[j][c].clone();
                        a[k][c] += v;
                    }
                    for row in a.iter_mut() {
                        let v = row[j].clone();
                        row[k] += v;
                    }
                } else {
                    return Err(LatticeError::Degenerate);
                }
            }
            let pivot = a[k][k].clone();
            if pivot.is_positive() {
                pos += 1;
            } else {
                neg += 1;
            }
            for i in k + 1..n {
                let f = &a[i][k] / &pivot;
                if f.is_zero() {
                    continue;
                }
                for c in 0..n {
                    let v = &f * &a[k][c];
                    a[i][c] -= v;
                }
                for row in a.iter_mut() {
                    let v = &f * &row[k];
                    row[i] -= v;
                }
            }
        }
        Ok((pos, neg))
    }

    pub fn discriminant_group(&self) -> Result<DiscriminantGroup, LatticeError> {
        let d = smith_normal_form(&self.gram).diagonal();
        if d.iter().any(Zero::is_zero) {
            return Err(LatticeError::Degenerate);
        }
        Ok(DiscriminantGroup {
            invariant_factors: d.into_iter().filter(|x| !x.is_one()).collect(),
        })
    }

    /// `(is p-elementary, number of invariant factors)`.
    pub fn p_elementary_profile(&self, p: u64) -> Result<(bool, usize), LatticeError> {
        if !is_prime(p) {
            return Err(LatticeError::NotPrime(p));
        }
        let g = self.discriminant_group()?;
        let pb = BigInt::from(p);
        Ok((g.invariant_factors.iter().all(|d| *d == pb), g.length()))
    }
}

impl fmt::Display for IntLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name.as_deref().unwrap_or("<lattice>"))
    }
}

/// Gram matrix of a named lattice. Root lattices are negative definite.
pub fn named_lattice(s: Summand) -> Result<IntLattice, LatticeError> {
    let s = s.validate()?;
    let n = s.rank();
    let mut g = IntMatrix::zeros(n, n);
    let mut link = |i: usize, j: usize| {
        g[(i, j)] = BigInt::one();
        g[(j, i)] = BigInt::one();
    };
    match s {
        Summand::U => link(0, 1),
        // chain 0 - 1 - ... - (n-1)
        Summand::A(_) => (1..n).for_each(|i| link(i - 1, i)),
        // chain of n-1 nodes, last node attached to the third from the end
        Summand::D(_) => {
            (1..n - 1).for_each(|i| link(i - 1, i));
            link(n - 3, n - 1);
        }
        // chain of n-1 nodes, last node attached to chain node 2
        Summand::E(_) => {
            (1..n - 1).for_each(|i| link(i - 1, i));
            link(2, n - 1);
        }
    }
    if s != Summand::U {
        for i in 0..n {
            g[(i, i)] = BigInt::from(-2);
        }
    }
    IntLattice::new(g, Some(s.to_string()))
}

pub fn direct_sum(parts: &[IntLattice]) -> Result<IntLattice, LatticeError> {
    if parts.is_empty() {
        return Err(LatticeError::EmptySum);
    }
    let grams: Vec<&IntMatrix> = parts.iter().map(|p| &p.gram).collect();
    let name = parts.iter().map(|p| p.to_string()).collect::<Vec<_>>().join("+");
    IntLattice::new(IntMatrix::block_diagonal(&grams), Some(name))
}

/// Direct sum of named summands in the given order.
pub fn lattice_from_summands(parts: &[Summand]) -> Result<IntLattice, LatticeError> {
    let lats = parts.iter().map(|&s| named_lattice(s)).collect::<Result<Vec<_>, _>>()?;
    direct_sum(&lats)
}

/// Parses `U+E8+E8+A2`.
pub fn parse_lattice_spec(spec: &str) -> Result<IntLattice, LatticeError> {
    let parts = spec.split('+').map(str::parse).collect::<Result<Vec<Summand>, _>>()?;
    lattice_from_summands(&parts)
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// `|det|` as a machine integer, for the small lattices in play here.
pub fn abs_det_u64(l: &IntLattice) -> Option<u64> {
    l.determinant().abs().to_u64()
}
