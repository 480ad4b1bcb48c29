//! Exact upper bounds on the size of grain-error-correcting codes.
//!
//! Everything here is exact rational arithmetic.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{precondition, Result};

/// Arbitrary-precision rational in canonical form.
pub type ExactRational = BigRational;

/// Largest supported `n` for the bound computations.
pub const MAX_BOUND_N: u32 = 10_000;

fn int(v: impl Into<BigInt>) -> ExactRational {
    ExactRational::from_integer(v.into())
}

fn pow2(e: u32) -> BigInt {
    BigInt::one() << e as usize
}

/// Pascal rows, reused by the sums below.
fn binomial_row(n: u32) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for k in 0..n {
        let next = &row[k as usize] * BigInt::from(n - k) / BigInt::from(k + 1);
        row.push(next);
    }
    row
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

fn check_range(n: u32, t: u32) -> Result<()> {
    if t == 0 || t >= n || n > MAX_BOUND_N {
        return precondition(format!("need 1 <= t < n <= {MAX_BOUND_N}, got n={n}, t={t}"));
    }
    Ok(())
}

/// `sum_{k=0}^{n-1} C(n-1,k) / sum_{j<=min(t,k)} C(k,j)`.
pub fn transversal_sum(n: u32, t: u32) -> Result<ExactRational> {
    check_range(n, t)?;
    let outer = binomial_row(n - 1);
    let mut total = ExactRational::zero();
    // the denominator depends only on k, so build each row incrementally
    let mut row_k = vec![BigInt::one()];
    for (k, c) in outer.iter().enumerate() {
        if k > 0 {
            let mut next = vec![BigInt::one(); k + 1];
            for j in 1..k {
                next[j] = &row_k[j - 1] + &row_k[j];
            }
            row_k = next;
        }
        let denom: BigInt = row_k.iter().take(t as usize + 1).sum();
        total += ExactRational::new(c.clone(), denom);
    }
    Ok(total)
}

/// Largest even integer not exceeding `2 * value`.
pub fn even_floor(value: &ExactRational) -> BigInt {
    value.floor().to_integer() * 2
}

/// Fractional transversal bound, rounded down to an even integer.
pub fn upper_bound(n: u32, t: u32) -> Result<BigInt> {
    Ok(even_floor(&transversal_sum(n, t)?))
}

/// Closed form of the `t = 1` bound, `2 floor((2^{n+1} - 2) / (2n))`.
pub fn closed_form_t1(n: u32) -> Result<BigInt> {
    check_range(n, 1)?;
    let num: BigInt = pow2(n + 1) - 2;
    Ok(num.div_floor(&BigInt::from(2 * n)) * 2)
}

/// Closed-form bound for `t = 2`, valid for `n >= 14`.
pub fn closed_form_t2(n: u32) -> Result<BigInt> {
    if !(14..=MAX_BOUND_N).contains(&n) {
        return precondition(format!("closed form for t=2 needs n >= 14, got {n}"));
    }
    let n_i = i64::from(n);
    let inner = int(2) + ExactRational::new(BigInt::from(2), BigInt::from(n_i - 6));
    let v = int(pow2(n + 2)) * inner / int(2 * n_i * (n_i - 3));
    Ok(even_floor(&v))
}

/// Closed-form bound for `t = 3`, valid for `n >= 24`.
pub fn closed_form_t3(n: u32) -> Result<BigInt> {
    if !(24..=MAX_BOUND_N).contains(&n) {
        return precondition(format!("closed form for t=3 needs n >= 24, got {n}"));
    }
    let n_i = i64::from(n);
    let r = |a: i64, b: i64| ExactRational::new(BigInt::from(a), BigInt::from(b));
    let num = int(8) + r(44, n_i - 7) + r(1, n_i) - r(2, (n_i - 2) * (n_i - 2));
    let den_inner = int(n_i - 3) - r(2, n_i - 7) + r(2, (n_i - 2) * (n_i - 2));
    let den = int(n_i * (n_i - 1)) * den_inner;
    let v = int(pow2(n) * 3) * num / den;
    Ok(even_floor(&v))
}

/// Relation asserted between the two sides of a checked statement.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Equal,
    LessEqual,
}

/// Both sides of an identity or inequality, evaluated independently.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub lhs: ExactRational,
    pub rhs: ExactRational,
    pub relation: Relation,
}

impl IdentityCheck {
    pub fn holds(&self) -> bool {
        match self.relation {
            Relation::Equal => self.lhs == self.rhs,
            Relation::LessEqual => self.lhs <= self.rhs,
        }
    }
}

fn sum_binomial_over(n: u32, from: u32, div: impl Fn(u32) -> i64) -> ExactRational {
    let row = binomial_row(n);
    (from..=n)
        .map(|k| ExactRational::new(row[k as usize].clone(), BigInt::from(div(k))))
        .sum()
}

fn harmonic_pow2(n: u32) -> ExactRational {
    (1..=n).map(|k| ExactRational::new(pow2(k) - 1, BigInt::from(k))).sum()
}

/// `sum_{k=2}^n C(n,k)/(k+1) = (2^{n+1} - 2 - 3n/2 - n^2/2) / (n+1)`, `n >= 2`.
pub fn binomial_over_k_plus_1(n: u32) -> Result<IdentityCheck> {
    if n < 2 {
        return precondition("identity needs n >= 2");
    }
    let lhs = sum_binomial_over(n, 2, |k| i64::from(k) + 1);
    let n_q = int(n);
    let rhs = (int(pow2(n + 1)) - int(2) - int(3) * &n_q / int(2) - &n_q * &n_q / int(2)) / (n_q + int(1));
    Ok(IdentityCheck {
        lhs,
        rhs,
        relation: Relation::Equal,
    })
}

/// `sum_{k=1}^n C(n,k)/k <= 2^{n+1} / (n - 1 - 2/(n-5))`, `n >= 14`.
pub fn binomial_over_k_bound(n: u32) -> Result<IdentityCheck> {
    if n < 14 {
        return precondition("inequality needs n >= 14");
    }
    let lhs = sum_binomial_over(n, 1, i64::from);
    let d = int(i64::from(n) - 1) - ExactRational::new(BigInt::from(2), BigInt::from(i64::from(n) - 5));
    Ok(IdentityCheck {
        lhs,
        rhs: int(pow2(n + 1)) / d,
        relation: Relation::LessEqual,
    })
}

/// `sum_{k=1}^n C(n,k)/k = sum_{k=1}^n (2^k - 1)/k`, `n >= 1`.
pub fn binomial_over_k_identity(n: u32) -> Result<IdentityCheck> {
    if n < 1 {
        return precondition("identity needs n >= 1");
    }
    Ok(IdentityCheck {
        lhs: sum_binomial_over(n, 1, i64::from),
        rhs: harmonic_pow2(n),
        relation: Relation::Equal,
    })
}

/// `sum_{k=2}^n C(n,k)/(k-1) = n sum_{k=1}^{n-1} (2^k-1)/k - 2^n + n + 1`, `n >= 2`.
pub fn binomial_over_k_minus_1(n: u32) -> Result<IdentityCheck> {
    if n < 2 {
        return precondition("identity needs n >= 2");
    }
    let lhs = sum_binomial_over(n, 2, |k| i64::from(k) - 1);
    let rhs = int(n) * harmonic_pow2(n - 1) - int(pow2(n)) + int(n + 1);
    Ok(IdentityCheck {
        lhs,
        rhs,
        relation: Relation::Equal,
    })
}

/// `sum_{k=1}^n (2^k-1)/k <= 2^{n+1} / (n - 1 - 2/(n-5) + 1/n^2)`, `n >= 17`.
pub fn harmonic_pow2_bound(n: u32) -> Result<IdentityCheck> {
    if n < 17 {
        return precondition("inequality needs n >= 17");
    }
    let n_i = i64::from(n);
    let d = int(n_i - 1) - ExactRational::new(BigInt::from(2), BigInt::from(n_i - 5))
        + ExactRational::new(BigInt::one(), BigInt::from(n_i * n_i));
    Ok(IdentityCheck {
        lhs: harmonic_pow2(n),
        rhs: int(pow2(n + 1)) / d,
        relation: Relation::LessEqual,
    })
}

/// Summary of the bounds for one `(n, t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub n: u32,
    pub t: u32,
    pub exact_sum: ExactRational,
    pub even_floor_bound: BigInt,
    pub closed_form_bound: Option<BigInt>,
}

impl BoundReport {
    /// The closed form is attached whenever one applies to `(n, t)`.
    pub fn compute(n: u32, t: u32) -> Result<Self> {
        let exact_sum = transversal_sum(n, t)?;
        let even_floor_bound = even_floor(&exact_sum);
        let closed_form_bound = match t {
            1 => Some(closed_form_t1(n)?),
            2 if n >= 14 => Some(closed_form_t2(n)?),
            3 if n >= 24 => Some(closed_form_t3(n)?),
            _ => None,
        };
        Ok(Self {
            n,
            t,
            exact_sum,
            even_floor_bound,
            closed_form_bound,
        })
    }
}

/// Decimal approximation of a rational, for human-readable output only.
pub fn to_f64(value: &ExactRational) -> f64 {
    let (n, d) = (value.numer(), value.denom());
    match (n.to_f64(), d.to_f64()) {
        (Some(a), Some(b)) if a.is_finite() && b.is_finite() => a / b,
        _ => {
            // scale both down to keep the quotient representable
            let shift = n.bits().max(d.bits()).saturating_sub(1000) as usize;
            let a = (n.abs() >> shift).to_f64().unwrap_or(f64::MAX);
            let b = (d >> shift).to_f64().unwrap_or(f64::MAX);
            if n.is_negative() {
                -a / b
            } else {
                a / b
            }
        }
    }
}

/// Convenience conversion for callers that hold unsigned counts.
pub fn to_biguint(v: &BigInt) -> Option<BigUint> {
    v.to_biguint()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{ball, ball_size_grain, ErrorModel};
    use crate::word::BitWord;

    fn q(a: i64, b: i64) -> ExactRational {
        ExactRational::new(BigInt::from(a), BigInt::from(b))
    }

    #[test]
    fn transversal_sum_examples() {
        assert_eq!(transversal_sum(9, 1).unwrap(), q(511, 9));
        assert_eq!(transversal_sum(2, 1).unwrap(), q(3, 2));
        let s = transversal_sum(15, 2).unwrap();
        assert!(s > int(703) && s <= int(704));
        assert!(transversal_sum(3, 3).is_err());
        assert!(transversal_sum(3, 0).is_err());
    }

    #[test]
    fn upper_bound_examples() {
        assert_eq!(upper_bound(9, 1).unwrap(), BigInt::from(112));
        assert_eq!(upper_bound(10, 1).unwrap(), BigInt::from(204));
        assert_eq!(upper_bound(20, 1).unwrap(), BigInt::from(104856));
    }

    #[test]
    fn t1_bound_equals_closed_form() {
        for n in 2..=200 {
            assert_eq!(upper_bound(n, 1).unwrap(), closed_form_t1(n).unwrap(), "n={n}");
        }
    }

    #[test]
    fn closed_forms_dominate() {
        for n in 14..=64 {
            assert!(closed_form_t2(n).unwrap() >= upper_bound(n, 2).unwrap(), "t=2 n={n}");
        }
        for n in 24..=64 {
            assert!(closed_form_t3(n).unwrap() >= upper_bound(n, 3).unwrap(), "t=3 n={n}");
        }
        assert!(closed_form_t2(13).is_err());
        assert!(closed_form_t3(23).is_err());
    }

    #[test]
    fn binomial_sum_statements_hold() {
        for n in 1..=64 {
            assert!(binomial_over_k_identity(n).unwrap().holds());
            if n >= 2 {
                assert!(binomial_over_k_plus_1(n).unwrap().holds());
                assert!(binomial_over_k_minus_1(n).unwrap().holds());
            }
            if n >= 14 {
                assert!(binomial_over_k_bound(n).unwrap().holds());
            }
            if n >= 17 {
                assert!(harmonic_pow2_bound(n).unwrap().holds());
            }
        }
        assert!(binomial_over_k_bound(13).is_err());
        assert!(harmonic_pow2_bound(16).is_err());
        assert!(binomial_over_k_plus_1(1).is_err());
    }

    #[test]
    fn binomial_sum_base_values() {
        let c4 = binomial_over_k_identity(1).unwrap();
        assert_eq!(c4.lhs, int(1));
        assert_eq!(c4.rhs, int(1));
        let c2 = binomial_over_k_plus_1(2).unwrap();
        assert_eq!(c2.lhs, q(1, 3));
        assert_eq!(c2.rhs, q(1, 3));
        let c3 = binomial_over_k_bound(14).unwrap();
        assert!((to_f64(&c3.lhs) - 2562.01).abs() < 0.01);
        assert!((to_f64(&c3.rhs) - 2564.45).abs() < 0.01);
        let li = harmonic_pow2_bound(17).unwrap();
        assert!((to_f64(&li.lhs) - 16552.47).abs() < 0.01);
        assert!((to_f64(&li.rhs) - 16552.85).abs() < 0.01);
    }

    #[test]
    fn sum_matches_word_enumeration() {
        // words of length n with k boundaries number 2 C(n-1, k)
        for n in 2..=14 {
            for t in 1..n.min(5) {
                let total: ExactRational = BitWord::all(n as usize)
                    .unwrap()
                    .map(|y| ExactRational::new(BigInt::one(), BigInt::from(ball_size_grain(&y, t))))
                    .sum();
                assert_eq!(total, transversal_sum(n, t).unwrap() * int(2), "n={n} t={t}");
            }
        }
    }

    #[test]
    fn weighting_is_feasible() {
        // every grain ball carries total weight at least one
        for n in 1..=12 {
            for t in 1..=3u32 {
                for x in BitWord::all(n).unwrap() {
                    let total: ExactRational = ball(&x, ErrorModel::grain(t))
                        .iter()
                        .map(|y| ExactRational::new(BigInt::one(), BigInt::from(ball_size_grain(y, t))))
                        .sum();
                    assert!(total >= int(1), "x={x} t={t}");
                }
            }
        }
    }

    #[test]
    fn report_is_even_and_below_twice_the_sum() {
        for (n, t) in [(9, 1), (13, 2), (30, 3), (14, 2)] {
            let r = BoundReport::compute(n, t).unwrap();
            assert!(r.even_floor_bound.is_even());
            assert!(int(r.even_floor_bound.clone()) <= &r.exact_sum * int(2));
        }
        assert!(BoundReport::compute(14, 2).unwrap().closed_form_bound.is_some());
        assert!(BoundReport::compute(13, 2).unwrap().closed_form_bound.is_none());
    }
}
