use super::factor::factorize;
use super::{mulmod, powmod};
use crate::error::{Error, Result};

/// Jacobi symbol (a/n) for odd positive n.
pub fn jacobi(a: i128, n: i128) -> Result<i8> {
    if n <= 0 || n % 2 == 0 {
        return Err(Error::Input(format!("jacobi symbol needs odd positive modulus, got {n}")));
    }
    let mut a = a.rem_euclid(n);
    let mut n = n;
    let mut t = 1i8;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            let r = n % 8;
            if r == 3 || r == 5 {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            t = -t;
        }
        a %= n;
    }
    Ok(if n == 1 { t } else { 0 })
}

/// Legendre symbol for an odd prime p.
pub fn legendre(a: i128, p: u64) -> i8 {
    jacobi(a, p as i128).expect("odd prime modulus")
}

/// Square root of `a` modulo an odd prime (Tonelli-Shanks).
pub fn sqrt_mod_prime(a: i128, p: u64) -> Option<i128> {
    let p = p as i128;
    let a = a.rem_euclid(p);
    if a == 0 {
        return Some(0);
    }
    if p == 2 {
        return Some(a);
    }
    if legendre(a, p as u64) != 1 {
        return None;
    }
    let mut q = p - 1;
    let mut s = 0u32;
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let mut z = 2;
    while legendre(z, p as u64) != -1 {
        z += 1;
    }
    let mut m = s;
    let mut c = powmod(z, q as u128, p);
    let mut t = powmod(a, q as u128, p);
    let mut r = powmod(a, ((q + 1) / 2) as u128, p);
    while t != 1 {
        let mut i = 0;
        let mut tt = t;
        while tt != 1 {
            tt = mulmod(tt, tt, p);
            i += 1;
        }
        let b = powmod(c, 1u128 << (m - i - 1), p);
        m = i;
        c = mulmod(b, b, p);
        t = mulmod(t, c, p);
        r = mulmod(r, b, p);
    }
    Some(r)
}

/// x^2 + y^2 = p for a prime p = 2 or p ≡ 1 mod 4 (Cornacchia).
fn two_squares_prime(p: u64) -> (i128, i128) {
    if p == 2 {
        return (1, 1);
    }
    let p = p as i128;
    let mut r0 = sqrt_mod_prime(-1, p as u64).expect("p = 1 mod 4");
    if r0 < p / 2 {
        r0 = p - r0;
    }
    let (mut a, mut b) = (p, r0);
    while b * b > p {
        (a, b) = (b, a % b);
    }
    let y2 = p - b * b;
    let y = (y2 as f64).sqrt().round() as i128;
    debug_assert_eq!(y * y, y2);
    (b, y)
}

/// A representation n = x^2 + y^2 with x ≥ y ≥ 0, or `None` when n has a prime
/// factor ≡ 3 mod 4 to an odd power.
pub fn cornacchia_sum_two_squares(n: u64) -> Option<(u64, u64)> {
    assert!(n >= 1, "n must be positive");
    let f = factorize(n as i128).ok()?;
    let (mut x, mut y) = (1i128, 0i128);
    for &(p, e) in &f.factors {
        if p % 4 == 3 {
            if e % 2 == 1 {
                return None;
            }
            let s = (p as i128).pow(e / 2);
            x *= s;
            y *= s;
        } else {
            let (a, b) = two_squares_prime(p);
            for _ in 0..e {
                (x, y) = (x * a - y * b, x * b + y * a);
            }
        }
    }
    let (x, y) = (x.unsigned_abs() as u64, y.unsigned_abs() as u64);
    Some((x.max(y), x.min(y)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_two_squares(n: u64) -> Option<(u64, u64)> {
        (0..=n).take_while(|y| y * y * 2 <= n).find_map(|y| {
            let r = n - y * y;
            let x = (r as f64).sqrt().round() as u64;
            (x * x == r).then_some((x, y))
        })
    }

    fn euler(a: i128, p: u64) -> i8 {
        match powmod(a, ((p - 1) / 2) as u128, p as i128) {
            0 => 0,
            1 => 1,
            _ => -1,
        }
    }

    #[test]
    fn jacobi_examples() {
        assert_eq!(jacobi(1, 3).unwrap(), 1);
        assert_eq!(jacobi(-5, 13).unwrap(), -1);
        let squares_mod_13: Vec<i128> = (1..13).map(|x| x * x % 13).collect();
        assert!(!squares_mod_13.contains(&(-5i128).rem_euclid(13)));
        // (2/15) = (2/3)(2/5) = (-1)(-1)
        assert_eq!(jacobi(2, 15).unwrap(), 1);
        assert!(jacobi(3, 10).is_err());
        assert!(jacobi(3, -7).is_err());
    }

    #[test]
    fn jacobi_matches_euler_criterion() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let primes: Vec<u64> = (3..1000).filter(|&p| crate::arith::is_prime(p)).collect();
        for _ in 0..2000 {
            let p = primes[rng.gen_range(0..primes.len())];
            let a: i128 = rng.gen_range(-5000..5000);
            assert_eq!(jacobi(a, p as i128).unwrap(), euler(a, p), "a={a} p={p}");
        }
    }

    #[test]
    fn tonelli_shanks_roots() {
        for p in [3u64, 5, 7, 13, 17, 41, 97, 193] {
            for a in 0..p as i128 {
                if let Some(r) = sqrt_mod_prime(a, p) {
                    assert_eq!(r * r % p as i128, a);
                }
            }
        }
    }

    #[test]
    fn cornacchia_examples() {
        assert_eq!(cornacchia_sum_two_squares(1), Some((1, 0)));
        assert_eq!(cornacchia_sum_two_squares(74), Some((7, 5)));
        assert_eq!(cornacchia_sum_two_squares(21), None);
        assert_eq!(brute_two_squares(21), None);
    }

    #[test]
    fn cornacchia_agrees_with_exhaustive_search() {
        for n in 1..=10_000u64 {
            let got = cornacchia_sum_two_squares(n);
            assert_eq!(got.is_some(), brute_two_squares(n).is_some(), "n={n}");
            if let Some((x, y)) = got {
                assert_eq!(x * x + y * y, n);
            }
        }
    }
}
