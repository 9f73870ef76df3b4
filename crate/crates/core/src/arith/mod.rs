//! Exact integer and rational arithmetic plus the classical number-theoretic
//! primitives (factorization, Jacobi symbol, two-square decomposition).

mod factor;
mod symbols;

pub use factor::{factorize, is_prime, Factorization};
pub use symbols::{cornacchia_sum_two_squares, jacobi, legendre, sqrt_mod_prime};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational number, always kept in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// p-adic valuation of a nonzero integer.
pub fn ord_p_int(n: &BigInt, p: u64) -> u32 {
    assert!(!n.is_zero(), "valuation of zero");
    let p = BigInt::from(p);
    let mut n = n.clone();
    let mut k = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return k;
        }
        n = q;
        k += 1;
    }
}

/// p-adic valuation of a nonzero rational.
pub fn ord_p_rat(x: &Rational, p: u64) -> i64 {
    ord_p_int(x.numer(), p) as i64 - ord_p_int(x.denom(), p) as i64
}

/// Least nonnegative residue of `x` modulo `m` (m > 0) as i128.
pub fn mod_i128(x: &BigInt, m: i128) -> i128 {
    let r = x.mod_floor(&BigInt::from(m));
    r.to_i128().expect("residue fits")
}

pub fn modinv(a: i128, m: i128) -> Option<i128> {
    let g = num_integer::Integer::extended_gcd(&a.rem_euclid(m), &m);
    if g.gcd != 1 {
        return None;
    }
    Some(g.x.rem_euclid(m))
}

pub fn mulmod(a: i128, b: i128, m: i128) -> i128 {
    // operands are reduced below 2^62 by the callers
    (a * b).rem_euclid(m)
}

pub fn powmod(mut b: i128, mut e: u128, m: i128) -> i128 {
    let mut r = 1i128.rem_euclid(m);
    b = b.rem_euclid(m);
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, b, m);
        }
        b = mulmod(b, b, m);
        e >>= 1;
    }
    r
}

/// Exact square root of a nonnegative integer if it is a perfect square.
pub fn exact_isqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Exact square root of a rational if it is a square in Q.
pub fn rational_sqrt(x: &Rational) -> Option<Rational> {
    let n = exact_isqrt(x.numer())?;
    let d = exact_isqrt(x.denom())?;
    Some(Rational::new(n, d))
}

pub fn is_squarefree(n: i64) -> bool {
    if n == 0 {
        return false;
    }
    match factorize(n as i128) {
        Ok(f) => f.factors.iter().all(|&(_, e)| e == 1),
        Err(_) => false,
    }
}

pub fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

pub fn is_integer(x: &Rational) -> bool {
    x.denom().is_one()
}
