use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{format_rat, ArithError, ExtVal, Rat};

/// Dense polynomial in `t` with rational coefficients, lowest degree first.
///
/// Canonical form: no trailing zero coefficient, so the zero polynomial has
/// an empty coefficient vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct QPoly {
    coeffs: Vec<Rat>,
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    /// The variable `t`.
    pub fn t() -> Self {
        Self::monomial(Rat::one(), 1)
    }

    pub fn constant(c: Rat) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn monomial(c: Rat, k: usize) -> Self {
        let mut coeffs = vec![Rat::zero(); k + 1];
        coeffs[k] = c;
        Self::from_coeffs(coeffs)
    }

    /// Coefficients listed from degree 0 upwards.
    pub fn from_coeffs(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| super::rat(c)).collect())
    }

    /// Builds `Σ c·t^k` from `(k, c)` pairs; repeated exponents accumulate.
    pub fn from_terms(terms: &[(usize, i64)]) -> Self {
        let top = terms.iter().map(|&(k, _)| k).max().unwrap_or(0);
        let mut coeffs = vec![Rat::zero(); top + 1];
        for &(k, c) in terms {
            coeffs[k] += super::rat(c);
        }
        Self::from_coeffs(coeffs)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// `None` stands for the degree `-∞` of the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    /// Exponents carrying a nonzero coefficient, ascending.
    pub fn support(&self) -> Vec<usize> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, _)| k)
            .collect()
    }

    pub fn scale(&self, c: &Rat) -> QPoly {
        if c.is_zero() {
            return QPoly::zero();
        }
        QPoly { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// Divides by the leading coefficient; zero stays zero.
    pub fn monic(&self) -> QPoly {
        match self.leading() {
            None => QPoly::zero(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn pow(&self, e: u32) -> QPoly {
        let mut acc = QPoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn derivative(&self) -> QPoly {
        QPoly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * super::rat(k as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        self.coeffs.iter().rev().fold(Rat::zero(), |acc, c| acc * x + c)
    }

    /// `p(λ t)`.
    pub fn rescale_variable(&self, lambda: &Rat) -> QPoly {
        let mut power = Rat::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c * &power);
            power *= lambda;
        }
        QPoly::from_coeffs(out)
    }

    /// Quotient and remainder with `deg(rem) < deg(divisor)`.
    pub fn divrem(&self, divisor: &QPoly) -> Result<(QPoly, QPoly), ArithError> {
        let dd = divisor.degree().ok_or(ArithError::DivisionByZero)?;
        let lc_inv = divisor.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((QPoly::zero(), self.clone()));
        }
        let mut quot = vec![Rat::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &lc_inv;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &c * d;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((QPoly::from_coeffs(quot), QPoly::from_coeffs(rem)))
    }

    /// `Some(self / divisor)` when the division is exact.
    pub fn div_exact(&self, divisor: &QPoly) -> Option<QPoly> {
        match self.divrem(divisor) {
            Ok((q, r)) if r.is_zero() => Some(q),
            _ => None,
        }
    }

    pub fn divides(&self, other: &QPoly) -> bool {
        other.div_exact(self).is_some()
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &QPoly) -> Result<QPoly, ArithError> {
        if self.is_zero() && other.is_zero() {
            return Err(ArithError::GcdOfZeros);
        }
        let mut a = self.monic();
        let mut b = other.monic();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b)?;
            a = b;
            b = r.monic();
        }
        Ok(a)
    }

    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && self.gcd(&self.derivative()).is_ok_and(|g| g.is_constant())
    }

    /// Yun's algorithm: monic, pairwise coprime, squarefree `A_m` with
    /// `self = lc · Π A_m^m`. Trivial factors are omitted.
    pub fn squarefree_decomposition(&self) -> Result<Vec<(QPoly, u32)>, ArithError> {
        if self.is_zero() {
            return Err(ArithError::ZeroPolynomial);
        }
        let f = self.monic();
        let mut out = Vec::new();
        if f.is_constant() {
            return Ok(out);
        }
        let df = f.derivative();
        let a0 = f.gcd(&df)?;
        let mut b = f.div_exact(&a0).expect("gcd divides f");
        let c = df.div_exact(&a0).expect("gcd divides f'");
        let mut d = &c - &b.derivative();
        let mut m = 1;
        while !b.is_constant() {
            let a = b.gcd(&d)?;
            if !a.is_constant() {
                out.push((a.clone(), m));
            }
            let c_next = d.div_exact(&a).expect("gcd divides d");
            b = b.div_exact(&a).expect("gcd divides b");
            d = &c_next - &b.derivative();
            m += 1;
        }
        Ok(out)
    }

    /// Largest `k` with `place^k | self`; `+∞` for the zero polynomial.
    pub fn valuation_at(&self, place: &QPoly) -> Result<ExtVal, ArithError> {
        if !place.is_monic() || place.is_constant() || !place.is_squarefree() {
            return Err(ArithError::InvalidPlace(place.to_string()));
        }
        if self.is_zero() {
            return Ok(ExtVal::Infinite);
        }
        let mut k = 0;
        let mut cur = self.clone();
        while let Some(q) = cur.div_exact(place) {
            cur = q;
            k += 1;
        }
        Ok(ExtVal::Finite(k))
    }

    /// `s^weight · p(1/s)`, the chart change to the point at infinity.
    pub fn reverse_at_infinity(&self, weight: usize) -> Result<QPoly, ArithError> {
        match self.degree() {
            None => Ok(QPoly::zero()),
            Some(d) if d > weight => Err(ArithError::WeightOverflow { degree: d, weight }),
            Some(_) => {
                let mut out = vec![Rat::zero(); weight + 1];
                for (k, c) in self.coeffs.iter().enumerate() {
                    out[weight - k] = c.clone();
                }
                Ok(QPoly::from_coeffs(out))
            }
        }
    }
}

impl Ord for QPoly {
    /// By degree, then by coefficients from the top down.
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl PartialOrd for QPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add<&QPoly> for &QPoly {
    type Output = QPoly;
    fn add(self, rhs: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        QPoly::from_coeffs((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub<&QPoly> for &QPoly {
    type Output = QPoly;
    fn sub(self, rhs: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        QPoly::from_coeffs((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul<&QPoly> for &QPoly {
    type Output = QPoly;
    fn mul(self, rhs: &QPoly) -> QPoly {
        if self.is_zero() || rhs.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPoly::from_coeffs(out)
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr<QPoly> for QPoly {
            type Output = QPoly;
            fn $m(self, rhs: QPoly) -> QPoly { (&self).$m(&rhs) }
        }
        impl $tr<&QPoly> for QPoly {
            type Output = QPoly;
            fn $m(self, rhs: &QPoly) -> QPoly { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul);

impl Neg for QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        -&self
    }
}

impl fmt::Display for QPoly {
    /// Descending powers, e.g. `4*t^21 + 27*t^2`, `-3/4*t + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            let var = match k {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{k}"),
            };
            match (mag.is_one(), var.is_empty()) {
                (_, true) => f.write_str(&format_rat(&mag))?,
                (true, false) => f.write_str(&var)?,
                (false, false) => write!(f, "{}*{}", format_rat(&mag), var)?,
            }
        }
        Ok(())
    }
}
