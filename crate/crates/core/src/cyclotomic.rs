//! Cyclotomic polynomials and the action of a primitive `N`-th root of unity
//! on `Z[ζ_N]`, written in the power basis `1, ζ, ..., ζ^{φ(N)-1}`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::arith::{rat, QPoly};
use crate::lattice::{is_prime, IntMatrix};

/// Orders with non-unimodular transcendental lattice: 3^k (k ≤ 3), 5^l (l ≤ 2), 7, 11, 13, 17, 19.
pub const OMEGA: [u64; 10] = [3, 9, 27, 5, 25, 7, 11, 13, 17, 19];

/// Orders with unimodular transcendental lattice.
pub const SIGMA: [u64; 6] = [66, 44, 42, 36, 28, 12];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycloError {
    #[error("order must be positive")]
    ZeroOrder,
    #[error("{0} is not in the order set {{3, 9, 27, 5, 25, 7, 11, 13, 17, 19}}")]
    NotInOmega(u64),
    #[error("{p} does not divide {n}")]
    NotDivisor { p: u64, n: u64 },
    #[error("{0} is not prime")]
    NotPrime(u64),
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut out: Vec<u64> = (1..=n).filter(|d| n.is_multiple_of(*d)).collect();
    out.sort_unstable();
    out
}

pub fn phi_euler(n: u64) -> u64 {
    (1..=n).filter(|k| k.gcd(&n) == 1).count() as u64
}

pub fn mobius(n: u64) -> i64 {
    let mut m = n;
    let mut sign = 1;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            m /= p;
            if m.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if m > 1 {
        sign = -sign;
    }
    sign
}

/// `c_N(k) = Σ_{d | gcd(N, k)} d μ(N/d)`, the sum of the k-th powers of the
/// primitive N-th roots of unity.
pub fn ramanujan_sum(n: u64, k: u64) -> i64 {
    let g = n.gcd(&k);
    divisors(g).into_iter().map(|d| d as i64 * mobius(n / d)).sum()
}

/// `Φ_N`, obtained by dividing `x^N - 1` by every `Φ_d` with `d | N`, `d < N`.
pub fn cyclotomic_poly(n: u64) -> Result<QPoly, CycloError> {
    if n == 0 {
        return Err(CycloError::ZeroOrder);
    }
    let mut out = x_n_minus_one(n);
    for d in divisors(n).into_iter().filter(|&d| d < n) {
        let phi_d = cyclotomic_poly(d)?;
        out = out.div_exact(&phi_d).expect("Φ_d divides x^N - 1");
    }
    Ok(out)
}

fn x_n_minus_one(n: u64) -> QPoly {
    &QPoly::monomial(rat(1), n as usize) - &QPoly::one()
}

/// Multiplication by `ζ_N` on `Z[ζ_N]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycloModel {
    pub order: u64,
    pub phi: usize,
    pub companion: IntMatrix,
}

impl CycloModel {
    pub fn new(order: u64) -> Result<Self, CycloError> {
        let poly = cyclotomic_poly(order)?;
        let phi = poly.degree().expect("cyclotomic polynomials are nonzero");
        let mut c = IntMatrix::zeros(phi, phi);
        for j in 0..phi {
            if j + 1 < phi {
                c[(j + 1, j)] = BigInt::from(1);
            } else {
                // ζ^φ = -(c_0 + c_1 ζ + ... + c_{φ-1} ζ^{φ-1})
                for i in 0..phi {
                    c[(i, j)] = -poly.coeff(i).to_integer();
                }
            }
        }
        Ok(CycloModel { order, phi, companion: c })
    }

    /// `Φ_N(companion)`, evaluated by Horner's rule; zero for a correct model.
    pub fn minimal_polynomial_residual(&self) -> IntMatrix {
        let poly = cyclotomic_poly(self.order).expect("order checked at construction");
        let mut acc = IntMatrix::zeros(self.phi, self.phi);
        for c in poly.coeffs().iter().rev() {
            acc = &acc * &self.companion;
            let c = c.to_integer();
            for i in 0..self.phi {
                acc[(i, i)] += &c;
            }
        }
        acc
    }

    /// Basis of `ker(companion^k - I)` over `F_p`.
    pub fn fixed_kernel_mod(&self, p: u64, k: u32) -> Vec<Vec<u64>> {
        let mut m = self.companion.pow(k);
        for i in 0..self.phi {
            m[(i, i)] -= 1;
        }
        m.kernel_mod_p(p)
    }
}

/// `trace(companion^k)`; agrees with [`ramanujan_sum`].
pub fn trace_power(n: u64, k: u32) -> Result<i64, CycloError> {
    let model = CycloModel::new(n)?;
    Ok(model.companion.pow(k).trace().to_i64().expect("trace bounded by φ(N)"))
}

/// Dimension over `F_p` of the classes `y = a/p` in `(1/p)T/T` with
/// `g(y) - y ∈ T`, where `T ≅ Z[ζ_N]` and `g` acts as multiplication by `ζ_N`.
pub fn fixed_discriminant_dimension(n: u64, p: u64) -> Result<usize, CycloError> {
    if !OMEGA.contains(&n) {
        return Err(CycloError::NotInOmega(n));
    }
    if !is_prime(p) {
        return Err(CycloError::NotPrime(p));
    }
    if !n.is_multiple_of(p) {
        return Err(CycloError::NotDivisor { p, n });
    }
    Ok(CycloModel::new(n)?.fixed_kernel_mod(p, 1).len())
}

/// `Π_{d | N} Φ_d`.
pub fn product_over_divisors(n: u64) -> QPoly {
    divisors(n)
        .into_iter()
        .map(|d| cyclotomic_poly(d).expect("d >= 1"))
        .fold(QPoly::one(), |acc, f| &acc * &f)
}

pub fn is_x_n_minus_one(p: &QPoly, n: u64) -> bool {
    (p - &x_n_minus_one(n)).is_zero()
}
