//! Unit-shift certificates: polynomials f, g with f(0) = 1, both monic of
//! degree m, and delta^m g(x) = gamma^m f((1 + delta x)/gamma). A root u of
//! f is then a unit with gamma u = 1 + delta x for a root x of g.

use super::ring::RadicalRing;
use crate::arith::{int, Rational};
use crate::error::{input, Error, Result};
use crate::field::Elem;
use crate::global::Ideal;
use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::Signed;
use serde_json::{json, Value};

/// Largest multiplicative order searched for gamma modulo delta.
pub const ORDER_BOUND: u64 = 1 << 21;

#[derive(Debug, Clone, PartialEq)]
pub struct UnitShiftCertificate {
    pub gamma: Elem,
    pub delta: Elem,
    /// 0 for the degenerate cases (delta zero or a unit, or gamma a unit)
    pub m: u32,
    /// coefficients from the constant term up
    pub f: Vec<Elem>,
    pub g: Vec<Elem>,
}

fn is_unit(x: &Elem) -> bool {
    x.is_integral() && x.norm().abs() == int(1)
}

fn binom(n: u32, k: u32) -> Rational {
    Rational::from_integer(binomial(BigInt::from(n), BigInt::from(k)))
}

/// A representative of x modulo m, with floored coordinates of x/m.
pub fn reduce_mod(x: &Elem, m: &Elem) -> Elem {
    let q = x / m;
    let k = x.field;
    let fl = k.elem(q.a.floor(), q.b.floor());
    x - &(m * &fl)
}

fn poly_eval_shift(f: &[Elem], gamma: &Elem, delta: &Elem) -> Vec<Elem> {
    // coefficients in x of gamma^m f((1 + delta x)/gamma) = sum a_j gamma^(m-j) (1 + delta x)^j
    let k = gamma.field;
    let m = f.len() - 1;
    let powers = |x: &Elem| {
        let mut v = vec![k.one()];
        for i in 0..m {
            v.push(&v[i] * x);
        }
        v
    };
    let (gp, dp) = (powers(gamma), powers(delta));
    let mut out = vec![k.zero(); m + 1];
    for (j, a) in f.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let base = a * &gp[m - j];
        let mut c = Rational::from_integer(1.into());
        for i in 0..=j {
            let t = &base * &dp[i].scale(&c);
            out[i] = &out[i] + &t;
            // C(j, i+1) = C(j, i) (j - i)/(i + 1)
            c = c * int((j - i) as i64) / int(i as i64 + 1);
        }
    }
    out
}

impl UnitShiftCertificate {
    /// delta^m g(x) = gamma^m f((1 + delta x)/gamma), coefficientwise.
    pub fn verify(&self) -> bool {
        let m = self.m as usize;
        if self.f.len() != m + 1 || self.g.len() != m + 1 {
            return false;
        }
        let k = self.gamma.field;
        let monic = self.f[m] == k.one() && self.g[m] == k.one() && self.f[0] == k.one();
        let integral = self.f.iter().chain(&self.g).all(Elem::is_integral);
        let lhs: Vec<Elem> = self.g.iter().map(|b| b * &self.delta.pow(self.m)).collect();
        monic && integral && lhs == poly_eval_shift(&self.f, &self.gamma, &self.delta)
    }

    /// For m = 2: a root u of f and x = (gamma u - 1)/delta, a root of the
    /// monic g and hence integral, checked exactly after adjoining the square
    /// root of the discriminant of f.
    pub fn quadratic_root_check(&self) -> Result<Option<bool>> {
        if self.m != 2 {
            return Ok(None);
        }
        let k = self.gamma.field;
        let mut r = RadicalRing::new(k);
        let (a1, a0) = (&self.f[1], &self.f[0]);
        let disc = &(a1 * a1) - &a0.scale(&int(4));
        let s = r.adjoin_sqrt(&disc)?;
        let half = k.from_rational(crate::arith::rat(1, 2));
        let u = r.scale(&r.sub(&s, &r.from_base(a1)), &half);
        // x = (gamma u - 1)/delta must satisfy g
        let x = r.scale(&r.sub(&r.scale(&u, &self.gamma), &r.one()), &self.delta.inv());
        let gx = r.add(&r.add(&r.mul(&x, &x), &r.scale(&x, &self.g[1])), &r.from_base(&self.g[0]));
        let fu = r.add(&r.add(&r.mul(&u, &u), &r.scale(&u, a1)), &r.from_base(a0));
        Ok(Some(gx.is_zero() && fu.is_zero()))
    }

    pub fn to_json(&self) -> Value {
        let s = |v: &[Elem]| v.iter().map(Elem::to_json_string).collect::<Vec<_>>();
        json!({
            "gamma": self.gamma.to_json_string(),
            "delta": self.delta.to_json_string(),
            "m": self.m,
            "f_coeffs": s(&self.f),
            "g_coeffs": s(&self.g),
            "verified": self.verify(),
        })
    }
}

/// Smallest even m with gamma^m = 1 mod delta: the order, doubled if odd.
fn even_order(gamma: &Elem, delta: &Elem) -> Result<u32> {
    let one = gamma.field.one();
    let mut x = reduce_mod(gamma, delta);
    for n in 1..=ORDER_BOUND {
        if ((&x - &one) / delta).is_integral() {
            return Ok(if n % 2 == 0 { n as u32 } else { 2 * n as u32 });
        }
        x = reduce_mod(&(&x * gamma), delta);
    }
    Err(Error::Unsupported(format!("order of {gamma} mod {delta} exceeds {ORDER_BOUND}")))
}

/// Builds the certificate. Locally at primes dividing delta the choice
/// b_0 = ... = b_{m-2} = 0, b_{m-1} = (1 - gamma^m)/delta works; the a_j
/// it forces are lifted modulo delta^m, which keeps every b_j integral.
pub fn unit_shift_certificate(gamma: &Elem, delta: &Elem) -> Result<UnitShiftCertificate> {
    let k = gamma.field;
    if delta.field != k || !gamma.is_integral() || !delta.is_integral() {
        return input("gamma and delta must be integers of the same field");
    }
    if gamma.is_zero() {
        return input("gamma must be nonzero");
    }
    let trivial =
        UnitShiftCertificate { gamma: gamma.clone(), delta: delta.clone(), m: 0, f: vec![k.one()], g: vec![k.one()] };
    if delta.is_zero() || is_unit(delta) {
        return Ok(trivial);
    }
    let coprime = Ideal::principal(gamma)?.add(&Ideal::principal(delta)?).is_unit_ideal();
    if !coprime {
        return input(format!("{gamma} and {delta} are not coprime"));
    }
    if is_unit(gamma) {
        return Ok(trivial);
    }
    let m = even_order(gamma, delta)?;
    let gm = gamma.pow(m);
    let beta = &(&k.one() - &gm) / delta;
    let bd = &beta * delta;
    let dm = delta.pow(m);
    // gamma^(-m) = (1 - beta delta)^(-1) = sum_{t<m} (beta delta)^t mod delta^m
    let mut inv_gm = k.zero();
    let mut p = k.one();
    for _ in 0..m {
        inv_gm = reduce_mod(&(&inv_gm + &p), &dm);
        p = reduce_mod(&(&p * &bd), &dm);
    }
    let sign = |e: u32| if e % 2 == 0 { int(1) } else { int(-1) };
    let mut f = vec![k.one()];
    let mut gj = k.one();
    for j in 1..m {
        gj = reduce_mod(&(&gj * gamma), &dm);
        let c = &bd.scale(&(binom(m - 1, j) * sign(m - 1 - j))) + &k.from_rational(binom(m, j) * sign(m - j));
        f.push(reduce_mod(&(&(&c * &gj) * &inv_gm), &dm));
    }
    f.push(k.one());
    let shifted = poly_eval_shift(&f, gamma, delta);
    let g: Vec<Elem> = shifted.iter().map(|c| c / &dm).collect();
    let cert = UnitShiftCertificate { gamma: gamma.clone(), delta: delta.clone(), m, f, g };
    if !cert.verify() {
        return Err(Error::Unsupported(format!("certificate for ({gamma}, {delta}) failed to verify")));
    }
    Ok(cert)
}
