//! Enumeration inside ideals: small elements, prime factorizations, divisors.

use super::Ideal;
use crate::arith::{factorize, int, modinv, mulmod, ord_p_rat, sqrt_mod_prime, Rational};
use crate::error::{input, Error, Result};
use crate::field::{Elem, NumberField};
use num_traits::{Signed, ToPrimitive};
use std::cmp::Ordering;

/// Orders elements by norm, then by coordinates in decreasing order, so that
/// 1 + w comes before 1 - w and 2 before -2.
pub fn small_first(x: &Elem, y: &Elem) -> Ordering {
    x.norm().abs().cmp(&y.norm().abs()).then_with(|| y.a.cmp(&x.a)).then_with(|| y.b.cmp(&x.b))
}

/// The prime ideals above a rational prime, with their ramification index.
pub fn primes_above_with_e(field: NumberField, p: u64) -> Result<Vec<(Ideal, i64)>> {
    if field.degree() == 1 {
        return Ok(vec![(Ideal::principal(&field.int(p as i64))?, 1)]);
    }
    let (t, n) = field.omega_relation();
    let pi = p as i128;
    // roots of X^2 - tX - n mod p
    let roots: Vec<i128> = if p == 2 {
        (0..2).filter(|r| (r * r - t as i128 * r - n as i128).rem_euclid(2) == 0).collect()
    } else {
        let disc = (t as i128 * t as i128 + 4 * n as i128).rem_euclid(pi);
        let half = modinv(2, pi).expect("p is odd");
        match sqrt_mod_prime(disc, p) {
            Some(s) => {
                let r1 = mulmod((t as i128 + s).rem_euclid(pi), half, pi);
                let r2 = (t as i128 - r1).rem_euclid(pi);
                if r1 == r2 {
                    vec![r1]
                } else {
                    vec![r1, r2]
                }
            }
            None => vec![],
        }
    };
    let w = field.omega();
    let pe = field.int(p as i64);
    let ramified = field.discriminant() % p as i64 == 0;
    match roots.as_slice() {
        [] => Ok(vec![(Ideal::principal(&pe)?, 1)]),
        _ => roots
            .iter()
            .map(|&r| {
                let g = &w - &field.int(r as i64);
                Ok((Ideal::from_generators(field, &[pe.clone(), g])?, if ramified { 2 } else { 1 }))
            })
            .collect(),
    }
}

/// The prime ideals above a rational prime.
pub fn primes_above(field: NumberField, p: u64) -> Result<Vec<Ideal>> {
    Ok(primes_above_with_e(field, p)?.into_iter().map(|(q, _)| q).collect())
}

fn rational_to_i128(x: &Rational) -> Result<(i128, i128)> {
    let n = x.numer().to_i128().ok_or_else(|| Error::Factorization(x.to_string()))?;
    let d = x.denom().to_i128().ok_or_else(|| Error::Factorization(x.to_string()))?;
    Ok((n, d))
}

impl Ideal {
    /// Nonzero elements with |N(x)| <= bound, smallest first.
    pub fn elements_up_to_norm(&self, bound: i64) -> Vec<Elem> {
        let k = self.field;
        let mut out = Vec::new();
        if k.degree() == 1 {
            let s = &self.scale;
            let mut m = 1i64;
            while (s * int(m)).abs() <= int(bound) {
                out.push(k.from_rational(s * int(m)));
                out.push(k.from_rational(-(s * int(m))));
                m += 1;
            }
            out.sort_by(small_first);
            return out;
        }
        let [g1, g2] = self.generators();
        // N(x g1 + y g2) = A x^2 + B xy + C y^2
        let (a_, b_, c_) = (g1.norm(), (&g1 * &g2.conj()).trace(), g2.norm());
        let to_f = |r: &Rational| r.to_f64().unwrap();
        let (a, b, c) = (to_f(&a_), to_f(&b_), to_f(&c_));
        let disc = 4.0 * a * c - b * b;
        let bound_f = bound as f64;
        let ymax = (4.0 * a * bound_f / disc).sqrt().floor() as i64 + 1;
        for y in -ymax..=ymax {
            let yf = y as f64;
            let rad = b * b * yf * yf - 4.0 * a * (c * yf * yf - bound_f);
            if rad < 0.0 {
                continue;
            }
            let lo = ((-b * yf - rad.sqrt()) / (2.0 * a)).floor() as i64 - 1;
            let hi = ((-b * yf + rad.sqrt()) / (2.0 * a)).ceil() as i64 + 1;
            for x in lo..=hi {
                if x == 0 && y == 0 {
                    continue;
                }
                let e = &g1.scale(&int(x)) + &g2.scale(&int(y));
                if e.norm() <= int(bound) {
                    out.push(e);
                }
            }
        }
        out.sort_by(small_first);
        out.dedup();
        out
    }

    /// Prime factorization of a nonzero fractional ideal, exponents may be
    /// negative.
    pub fn factor(&self) -> Result<Vec<(Ideal, i64)>> {
        let (n, d) = rational_to_i128(&self.norm())?;
        let mut ps: Vec<u64> = Vec::new();
        for v in [n, d] {
            if v > 1 {
                ps.extend(factorize(v)?.primes());
            }
        }
        ps.sort_unstable();
        ps.dedup();
        let mut out = Vec::new();
        for p in ps {
            for (q, e) in primes_above_with_e(self.field, p)? {
                let v = self.valuation_at(&q, p, e);
                if v != 0 {
                    out.push((q, v));
                }
            }
        }
        Ok(out)
    }

    /// Valuation at a prime q above p with ramification index e.
    pub fn valuation_at(&self, q: &Ideal, p: u64, e: i64) -> i64 {
        let mut v = ord_p_rat(&self.scale, p) * e;
        let qinv = q.inverse();
        let mut j = Ideal { scale: Rational::from_integer(1.into()), ..self.clone() };
        if self.field.degree() == 1 {
            return v;
        }
        loop {
            let next = j.mul(&qinv);
            if !next.is_integral() {
                return v;
            }
            v += 1;
            j = next;
        }
    }

    /// Integral ideals dividing this integral ideal, by increasing norm.
    pub fn divisors(&self) -> Result<Vec<Ideal>> {
        if !self.is_integral() {
            return input("divisors of a non-integral ideal");
        }
        let mut out = vec![Ideal::unit(self.field)];
        for (p, e) in self.factor()? {
            let mut next = Vec::new();
            for d in &out {
                let mut q = d.clone();
                for _ in 0..=e {
                    next.push(q.clone());
                    q = q.mul(&p);
                }
            }
            out = next;
        }
        out.sort_by(|x, y| x.norm().cmp(&y.norm()).then_with(|| x.a.cmp(&y.a)).then_with(|| x.b.cmp(&y.b)));
        Ok(out)
    }

    /// Multiplies by the denominator of the scale, giving an integral ideal
    /// in the same class; returns the ideal and the multiplier.
    pub fn integral_multiple(&self) -> (Ideal, Rational) {
        let den = Rational::from_integer(self.scale.denom().clone());
        let k = self.field;
        (self.scale_by(&k.from_rational(den.clone())), den)
    }

    /// Intersection of two fractional ideals.
    pub fn intersect(&self, o: &Ideal) -> Ideal {
        self.inverse().add(&o.inverse()).inverse()
    }
}
