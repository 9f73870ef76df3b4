//! The base fields: Q and imaginary quadratic fields Q(sqrt d), with elements
//! written a + b·w in the integral basis {1, w}.

use crate::arith::{int, is_integer, is_squarefree, rational_sqrt, Rational};
use crate::error::{input, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum NumberField {
    #[serde(rename = "Q")]
    Rational,
    #[serde(rename = "imquad")]
    ImagQuad { d: i64 },
}

impl NumberField {
    pub fn imag_quad(d: i64) -> Result<Self> {
        if d >= 0 || !is_squarefree(d) {
            return input(format!("d = {d} must be negative and squarefree"));
        }
        Ok(NumberField::ImagQuad { d })
    }

    pub fn degree(&self) -> u32 {
        match self {
            NumberField::Rational => 1,
            NumberField::ImagQuad { .. } => 2,
        }
    }

    pub fn d(&self) -> Option<i64> {
        match self {
            NumberField::Rational => None,
            NumberField::ImagQuad { d } => Some(*d),
        }
    }

    /// w^2 = t·w + n.
    pub fn omega_relation(&self) -> (i64, i64) {
        match self {
            NumberField::Rational => (0, 0),
            NumberField::ImagQuad { d } if d.rem_euclid(4) == 1 => (1, (d - 1) / 4),
            NumberField::ImagQuad { d } => (0, *d),
        }
    }

    /// Field discriminant (1 for Q).
    pub fn discriminant(&self) -> i64 {
        match self {
            NumberField::Rational => 1,
            NumberField::ImagQuad { d } if d.rem_euclid(4) == 1 => *d,
            NumberField::ImagQuad { d } => 4 * d,
        }
    }

    pub fn elem(&self, a: Rational, b: Rational) -> Elem {
        Elem::new(*self, a, b)
    }

    pub fn int(&self, n: i64) -> Elem {
        Elem::new(*self, int(n), Rational::zero())
    }

    pub fn from_rational(&self, x: Rational) -> Elem {
        Elem::new(*self, x, Rational::zero())
    }

    pub fn omega(&self) -> Elem {
        assert!(self.degree() == 2, "Q has no w");
        Elem::new(*self, Rational::zero(), Rational::one())
    }

    /// a + b·w with integer coordinates.
    pub fn ints(&self, a: i64, b: i64) -> Elem {
        if self.degree() == 1 {
            assert_eq!(b, 0, "Q element with w-part");
        }
        Elem::new(*self, int(a), int(b))
    }

    pub fn zero(&self) -> Elem {
        self.int(0)
    }

    pub fn one(&self) -> Elem {
        self.int(1)
    }

    /// Units of the ring of integers.
    pub fn units(&self) -> Vec<Elem> {
        match self {
            NumberField::Rational => vec![self.int(1), self.int(-1)],
            NumberField::ImagQuad { d: -1 } => {
                vec![self.int(1), self.int(-1), self.ints(0, 1), self.ints(0, -1)]
            }
            NumberField::ImagQuad { d: -3 } => {
                // w = (1+sqrt -3)/2 is a primitive sixth root of unity
                let w = self.omega();
                let mut out = vec![self.one()];
                for _ in 1..6 {
                    let next = out.last().unwrap() * &w;
                    out.push(next);
                }
                out
            }
            _ => vec![self.int(1), self.int(-1)],
        }
    }

    /// Square root of `x` in the field, if `x` is a square.
    pub fn sqrt(&self, x: &Elem) -> Option<Elem> {
        if x.is_zero() {
            return Some(self.zero());
        }
        let Some(d) = self.d() else {
            return rational_sqrt(&x.a).map(|r| self.from_rational(r));
        };
        // rewrite x = p + q·sqrt(d)
        let (p, q) = x.sqrt_d_coords();
        let d_r = int(d);
        let candidates = |p: &Rational, q: &Rational| -> Vec<(Rational, Rational)> {
            let mut out = Vec::new();
            if q.is_zero() {
                if let Some(u) = rational_sqrt(p) {
                    out.push((u, Rational::zero()));
                }
                if let Some(v) = rational_sqrt(&(p / &d_r)) {
                    out.push((Rational::zero(), v));
                }
                return out;
            }
            let nrm = p * p - &d_r * q * q;
            let Some(n) = rational_sqrt(&nrm) else { return out };
            for s in [&n, &-n.clone()] {
                let u2 = (p + s) / int(2);
                if let Some(u) = rational_sqrt(&u2) {
                    if !u.is_zero() {
                        let v = q / (int(2) * &u);
                        out.push((u, v));
                    }
                }
            }
            out
        };
        for (u, v) in candidates(&p, &q) {
            let y = Elem::from_sqrt_d_coords(*self, u, v);
            if &(&y * &y) == x {
                return Some(y);
            }
        }
        None
    }

    pub fn is_square(&self, x: &Elem) -> bool {
        self.sqrt(x).is_some()
    }
}

impl fmt::Display for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NumberField::Rational => write!(f, "Q"),
            NumberField::ImagQuad { d } => write!(f, "Q(sqrt({d}))"),
        }
    }
}

/// Element a + b·w of a base field, exact rational coordinates.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Elem {
    pub field: NumberField,
    pub a: Rational,
    pub b: Rational,
}

impl Elem {
    pub fn new(field: NumberField, a: Rational, b: Rational) -> Self {
        Elem { field, a, b }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn is_integral(&self) -> bool {
        is_integer(&self.a) && is_integer(&self.b)
    }

    pub fn conj(&self) -> Elem {
        // conj(w) = t - w
        let (t, _) = self.field.omega_relation();
        Elem::new(self.field, &self.a + &self.b * int(t), -self.b.clone())
    }

    pub fn norm(&self) -> Rational {
        if self.field.degree() == 1 {
            return self.a.clone();
        }
        (self * &self.conj()).a
    }

    pub fn trace(&self) -> Rational {
        if self.field.degree() == 1 {
            return self.a.clone();
        }
        (self + &self.conj()).a
    }

    pub fn inv(&self) -> Elem {
        assert!(!self.is_zero(), "inverse of zero");
        let n = self.norm();
        let c = if self.field.degree() == 1 { self.field.one() } else { self.conj() };
        Elem::new(self.field, c.a / &n, c.b / &n)
    }

    pub fn pow(&self, e: u32) -> Elem {
        let mut r = self.field.one();
        for _ in 0..e {
            r = &r * self;
        }
        r
    }

    pub fn scale(&self, r: &Rational) -> Elem {
        Elem::new(self.field, &self.a * r, &self.b * r)
    }

    /// Coordinates (p, q) with self = p + q·sqrt(d).
    pub fn sqrt_d_coords(&self) -> (Rational, Rational) {
        let (t, _) = self.field.omega_relation();
        if t == 1 {
            // w = (1 + sqrt d)/2
            let half = Rational::new(1.into(), 2.into());
            (&self.a + &self.b * &half, &self.b * &half)
        } else {
            (self.a.clone(), self.b.clone())
        }
    }

    pub fn from_sqrt_d_coords(field: NumberField, p: Rational, q: Rational) -> Elem {
        let (t, _) = field.omega_relation();
        if t == 1 {
            // p + q sqrt d = (p - q) + 2q·w
            Elem::new(field, &p - &q, q * int(2))
        } else {
            Elem::new(field, p, q)
        }
    }

    /// Least common denominator of the coordinates.
    pub fn denominator(&self) -> BigInt {
        num_integer::Integer::lcm(self.a.denom(), self.b.denom())
    }

    pub fn to_i64_pair(&self) -> Option<(i64, i64)> {
        if !self.is_integral() {
            return None;
        }
        Some((self.a.to_integer().to_i64()?, self.b.to_integer().to_i64()?))
    }

    pub fn to_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.a.clone())
    }

    /// Exact string form `a/b+c/e*w` (integers print without denominator).
    pub fn to_json_string(&self) -> String {
        fn r(x: &Rational) -> String {
            if x.denom().is_one() {
                x.numer().to_string()
            } else {
                format!("{}/{}", x.numer(), x.denom())
            }
        }
        if self.b.is_zero() {
            return r(&self.a);
        }
        let sign = if self.b.is_negative() { '-' } else { '+' };
        let bb = self.b.abs();
        let coef = if bb.is_one() { String::new() } else { format!("{}*", r(&bb)) };
        format!("{}{}{}w", r(&self.a), sign, coef)
    }

    pub fn parse(field: NumberField, s: &str) -> Result<Elem> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return input("empty element");
        }
        // split into rational part and w part at the last +/- that is not leading
        let (ra, rb) = match s.rfind(|c| c == '+' || c == '-').filter(|&i| i > 0 && s.ends_with('w')) {
            Some(i) => (&s[..i], &s[i..]),
            None if s.ends_with('w') => ("0", s.as_str()),
            None => (s.as_str(), ""),
        };
        let parse_rat = |t: &str| -> Result<Rational> {
            t.parse::<Rational>().or_else(|_| input(format!("bad rational '{t}' in '{s}'")))
        };
        let a = parse_rat(ra)?;
        let b = if rb.is_empty() {
            Rational::zero()
        } else {
            if field.degree() == 1 {
                return input(format!("element '{s}' uses w over Q"));
            }
            let body = &rb[..rb.len() - 1];
            let body = body.strip_suffix('*').unwrap_or(body);
            match body {
                "" | "+" => Rational::one(),
                "-" => -Rational::one(),
                t => parse_rat(t.strip_prefix('+').unwrap_or(t))?,
            }
        };
        Ok(Elem::new(field, a, b))
    }
}

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_json_string())
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.to_json_string();
        if self.a.is_zero() && !self.b.is_zero() {
            // drop the zero rational part: w, -w, 3*w
            let t = s.trim_start_matches('0');
            return write!(f, "{}", t.strip_prefix('+').unwrap_or(t));
        }
        write!(f, "{s}")
    }
}

impl<'a> Add<&'a Elem> for &'a Elem {
    type Output = Elem;
    fn add(self, o: &Elem) -> Elem {
        debug_assert_eq!(self.field, o.field);
        Elem::new(self.field, &self.a + &o.a, &self.b + &o.b)
    }
}

impl<'a> Sub<&'a Elem> for &'a Elem {
    type Output = Elem;
    fn sub(self, o: &Elem) -> Elem {
        debug_assert_eq!(self.field, o.field);
        Elem::new(self.field, &self.a - &o.a, &self.b - &o.b)
    }
}

impl<'a> Mul<&'a Elem> for &'a Elem {
    type Output = Elem;
    fn mul(self, o: &Elem) -> Elem {
        debug_assert_eq!(self.field, o.field);
        let (t, n) = self.field.omega_relation();
        // (a + b w)(c + e w) = ac + (ae + bc) w + be (t w + n)
        let be = &self.b * &o.b;
        let a = &self.a * &o.a + &be * int(n);
        let b = &self.a * &o.b + &self.b * &o.a + &be * int(t);
        Elem::new(self.field, a, b)
    }
}

impl<'a> Div<&'a Elem> for &'a Elem {
    type Output = Elem;
    fn div(self, o: &Elem) -> Elem {
        self * &o.inv()
    }
}

impl Neg for &Elem {
    type Output = Elem;
    fn neg(self) -> Elem {
        Elem::new(self.field, -self.a.clone(), -self.b.clone())
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Elem> for Elem {
            type Output = Elem;
            fn $m(self, o: Elem) -> Elem { (&self).$m(&o) }
        }
        impl<'a> $tr<&'a Elem> for Elem {
            type Output = Elem;
            fn $m(self, o: &Elem) -> Elem { (&self).$m(o) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul, Div div);

impl Neg for Elem {
    type Output = Elem;
    fn neg(self) -> Elem {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k5() -> NumberField {
        NumberField::imag_quad(-5).unwrap()
    }

    #[test]
    fn rejects_bad_d() {
        assert!(NumberField::imag_quad(-4).is_err());
        assert!(NumberField::imag_quad(5).is_err());
    }

    #[test]
    fn arithmetic_in_q_sqrt_m5() {
        let k = k5();
        let x = k.ints(1, 1);
        assert_eq!(x.norm(), int(6));
        assert_eq!(&x * &x.conj(), k.int(6));
        assert_eq!(&x * &x, k.ints(-4, 2));
        assert_eq!(&(&x / &x), &k.one());
    }

    #[test]
    fn half_integral_basis() {
        let k = NumberField::imag_quad(-23).unwrap();
        let w = k.omega();
        // w^2 = w - 6
        assert_eq!(&w * &w, k.ints(-6, 1));
        assert_eq!(w.norm(), int(6));
        assert_eq!(w.trace(), int(1));
    }

    #[test]
    fn square_roots() {
        let k = k5();
        let r = k.sqrt(&k.int(-5)).unwrap();
        assert_eq!(&r * &r, k.int(-5));
        assert!(k.is_square(&k.int(-5)));
        assert!(k.is_square(&k.ints(-4, 2)));
        assert!(!k.is_square(&k.int(-1)));
        assert!(!k.is_square(&k.int(2)));
        let q = NumberField::Rational;
        assert!(q.is_square(&q.from_rational(Rational::new(9.into(), 4.into()))));
        assert!(!q.is_square(&q.int(-1)));
    }

    #[test]
    fn string_round_trip() {
        let k = k5();
        for s in ["1/2", "-3", "1+w", "1-w", "1/2+3/4*w", "-2/3-5*w", "0+w"] {
            let e = Elem::parse(k, s).unwrap();
            assert_eq!(Elem::parse(k, &e.to_json_string()).unwrap(), e, "{s}");
        }
        assert_eq!(Elem::parse(k, "1/1+1/1*w").unwrap(), k.ints(1, 1));
        assert_eq!(Elem::parse(k, "w").unwrap(), k.omega());
        assert!(Elem::parse(NumberField::Rational, "1+w").is_err());
    }
}
