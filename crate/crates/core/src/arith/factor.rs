use crate::error::{Error, Result};
use serde::Serialize;

const TRIAL_LIMIT: u64 = 1_000_000;

/// Signed prime factorization with primes strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Factorization {
    pub sign: i8,
    pub factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn value(&self) -> i128 {
        self.factors.iter().fold(self.sign as i128, |acc, &(p, e)| acc * (p as i128).pow(e))
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }
}

fn mul_u(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_u(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_u(r, b, m);
        }
        b = mul_u(b, b, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin for 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_u(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_u(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn pollard_rho(n: u64) -> u64 {
    if n % 2 == 0 {
        return 2;
    }
    for c in 1u64.. {
        let f = |x: u64| (mul_u(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd(x.abs_diff(y), n);
        }
        if d != n {
            return d;
        }
    }
    unreachable!()
}

fn split(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let d = pollard_rho(n);
    split(d, out);
    split(n / d, out);
}

/// Factor a nonzero integer: trial division up to 10^6, Pollard rho beyond.
pub fn factorize(n: i128) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::Input("cannot factor 0".into()));
    }
    let sign = if n < 0 { -1 } else { 1 };
    let mut m = n.unsigned_abs();
    let mut primes = Vec::new();
    let mut p = 2u128;
    while p <= TRIAL_LIMIT as u128 && p * p <= m {
        while m % p == 0 {
            primes.push(p as u64);
            m /= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if m > 1 {
        let m64 = u64::try_from(m).map_err(|_| Error::Factorization(n.to_string()))?;
        split(m64, &mut primes);
    }
    primes.sort_unstable();
    let mut factors: Vec<(u64, u32)> = Vec::new();
    for q in primes {
        match factors.last_mut() {
            Some((last, e)) if *last == q => *e += 1,
            _ => factors.push((q, 1)),
        }
    }
    Ok(Factorization { sign, factors })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        assert_eq!(factorize(1).unwrap(), Factorization { sign: 1, factors: vec![] });
        assert_eq!(factorize(-12).unwrap(), Factorization { sign: -1, factors: vec![(2, 2), (3, 1)] });
        assert_eq!(factorize(77).unwrap().factors, vec![(7, 1), (11, 1)]);
        assert!(factorize(0).is_err());
    }

    #[test]
    fn large_semiprime_goes_through_rho() {
        let p = 1_000_003u64;
        let q = 998_244_353u64;
        let f = factorize(p as i128 * q as i128).unwrap();
        assert_eq!(f.factors, vec![(p, 1), (q, 1)]);
    }

    #[test]
    fn random_products_reassemble() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1000 {
            let n: i128 = rng.gen_range(2..=1_000_000);
            let f = factorize(n).unwrap();
            assert_eq!(f.value(), n);
            assert!(f.primes().all(is_prime));
            assert!(f.factors.windows(2).all(|w| w[0].0 < w[1].0));
        }
    }
}
