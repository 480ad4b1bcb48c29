//! Exact arithmetic in `Z[zeta_p]`.
//!
//! Values are stored as `p` coefficients on `1, zeta, ..., zeta^{p-1}` and
//! kept canonical by using `1 + zeta + ... + zeta^{p-1} = 0` to clear the
//! last coefficient.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CyclotomicInteger {
    p: u32,
    coeffs: Vec<BigInt>,
}

impl fmt::Debug for CyclotomicInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CyclotomicInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => c.to_string(),
                _ => format!("{c}*z^{i}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl CyclotomicInteger {
    pub fn zero(p: u32) -> Self {
        Self {
            p,
            coeffs: vec![BigInt::zero(); p as usize],
        }
    }

    pub fn from_integer(p: u32, v: impl Into<BigInt>) -> Self {
        let mut z = Self::zero(p);
        z.coeffs[0] = v.into();
        z
    }

    pub fn one(p: u32) -> Self {
        Self::from_integer(p, 1)
    }

    /// `zeta_p^k` for any integer `k`.
    pub fn root_power(p: u32, k: i64) -> Self {
        let mut z = Self::zero(p);
        z.coeffs[k.rem_euclid(i64::from(p)) as usize] = BigInt::one();
        z.canonicalize();
        z
    }

    /// Builds from raw coefficients (length `p`) and canonicalises.
    pub fn from_coeffs(p: u32, coeffs: Vec<BigInt>) -> Result<Self> {
        if coeffs.len() != p as usize {
            return Err(Error::LengthMismatch {
                expected: p as usize,
                got: coeffs.len(),
            });
        }
        let mut z = Self { p, coeffs };
        z.canonicalize();
        Ok(z)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    fn canonicalize(&mut self) {
        let last = self.coeffs[self.p as usize - 1].clone();
        if !last.is_zero() {
            for c in self.coeffs.iter_mut() {
                *c -= &last;
            }
        }
    }

    fn check_same_ring(&self, other: &Self) {
        assert_eq!(self.p, other.p, "cyclotomic rings differ");
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_rational_integer(&self) -> bool {
        self.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn to_integer(&self) -> Result<BigInt> {
        if self.is_rational_integer() {
            Ok(self.coeffs[0].clone())
        } else {
            Err(Error::NonIntegral(self.to_string()))
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self {
            p: self.p,
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// Multiplication by `zeta^k`, a rotation of the coefficients.
    pub fn mul_root(&self, k: i64) -> Self {
        let p = self.p as usize;
        let shift = k.rem_euclid(p as i64) as usize;
        let mut coeffs = vec![BigInt::zero(); p];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[(i + shift) % p] = c.clone();
        }
        let mut z = Self { p: self.p, coeffs };
        z.canonicalize();
        z
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.p);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Exact division of every coefficient; fails if any is not divisible.
    pub fn div_exact(&self, d: &BigInt) -> Result<Self> {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            let (q, r) = c.div_rem(d);
            if !r.is_zero() {
                return Err(Error::NonIntegral(format!("({self}) / {d}")));
            }
            coeffs.push(q);
        }
        Ok(Self { p: self.p, coeffs })
    }
}

impl Add for &CyclotomicInteger {
    type Output = CyclotomicInteger;

    fn add(self, rhs: Self) -> CyclotomicInteger {
        self.check_same_ring(rhs);
        let mut z = CyclotomicInteger {
            p: self.p,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        };
        z.canonicalize();
        z
    }
}

impl Sub for &CyclotomicInteger {
    type Output = CyclotomicInteger;

    fn sub(self, rhs: Self) -> CyclotomicInteger {
        self + &(-rhs)
    }
}

impl Neg for &CyclotomicInteger {
    type Output = CyclotomicInteger;

    fn neg(self) -> CyclotomicInteger {
        CyclotomicInteger {
            p: self.p,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &CyclotomicInteger {
    type Output = CyclotomicInteger;

    fn mul(self, rhs: Self) -> CyclotomicInteger {
        self.check_same_ring(rhs);
        let p = self.p as usize;
        let mut coeffs = vec![BigInt::zero(); p];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[(i + j) % p] += a * b;
                }
            }
        }
        let mut z = CyclotomicInteger { p: self.p, coeffs };
        z.canonicalize();
        z
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for CyclotomicInteger {
            type Output = CyclotomicInteger;
            fn $m(self, rhs: Self) -> CyclotomicInteger {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const PRIMES: [u32; 5] = [2, 3, 5, 7, 11];

    #[test]
    fn full_root_sum_vanishes() {
        for p in PRIMES {
            let s = (0..p).fold(CyclotomicInteger::zero(p), |acc, j| {
                &acc + &CyclotomicInteger::root_power(p, i64::from(j))
            });
            assert!(s.is_zero(), "p={p}");
        }
    }

    #[test]
    fn partial_root_sums() {
        // removing one term leaves its negative
        for p in PRIMES {
            for c in 1..p {
                for skip in 0..p {
                    let s = (0..p)
                        .filter(|&j| j != skip)
                        .fold(CyclotomicInteger::zero(p), |acc, j| {
                            &acc + &CyclotomicInteger::root_power(p, i64::from(j * c))
                        });
                    let want = -&CyclotomicInteger::root_power(p, i64::from(skip * c));
                    assert_eq!(s, want);
                }
            }
        }
    }

    #[test]
    fn roots_multiply() {
        let a = CyclotomicInteger::root_power(3, 1);
        let b = CyclotomicInteger::root_power(3, 2);
        assert_eq!(&a * &b, CyclotomicInteger::one(3));
        assert_eq!(a.mul_root(2), CyclotomicInteger::one(3));
        assert_eq!(a.pow(3), CyclotomicInteger::one(3));
        assert!(a.to_integer().is_err());
        assert_eq!(
            CyclotomicInteger::from_integer(7, 5).to_integer().unwrap(),
            BigInt::from(5)
        );
    }

    fn element(p: u32) -> impl Strategy<Value = CyclotomicInteger> {
        proptest::collection::vec(-50i64..50, p as usize)
            .prop_map(move |cs| CyclotomicInteger::from_coeffs(p, cs.into_iter().map(BigInt::from).collect()).unwrap())
    }

    fn triple() -> impl Strategy<Value = (CyclotomicInteger, CyclotomicInteger, CyclotomicInteger)> {
        proptest::sample::select(PRIMES.to_vec()).prop_flat_map(|p| (element(p), element(p), element(p)))
    }

    proptest! {
        #[test]
        fn ring_laws((a, b, c) in triple()) {
            prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert!((&a - &a).is_zero());
            prop_assert_eq!(a.coeffs()[a.p() as usize - 1].clone(), BigInt::zero());
        }
    }
}
