//! Fractional ideals of Q and of imaginary quadratic orders, stored as
//! scale·(Za + Z(b + w)) with the integral part primitive.

use crate::arith::{int, Rational};
use crate::error::{input, Result};
use crate::field::{Elem, NumberField};
use crate::localfield::LocalContext;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Ideal {
    pub field: NumberField,
    /// positive rational factor
    pub scale: Rational,
    /// primitive integral part Za + Z(b + w); a = 1, b = 0 over Q
    pub a: BigInt,
    pub b: BigInt,
}

fn elem_coords(x: &Elem, den: &BigInt) -> (BigInt, BigInt) {
    let d = Rational::from_integer(den.clone());
    ((&x.a * &d).to_integer(), (&x.b * &d).to_integer())
}

impl Ideal {
    pub fn unit(field: NumberField) -> Ideal {
        Ideal { field, scale: Rational::one(), a: BigInt::one(), b: BigInt::zero() }
    }

    pub fn principal(x: &Elem) -> Result<Ideal> {
        Ideal::from_generators(x.field, std::slice::from_ref(x))
    }

    /// The ideal generated by the given elements over the maximal order.
    pub fn from_generators(field: NumberField, gens: &[Elem]) -> Result<Ideal> {
        let gens: Vec<&Elem> = gens.iter().filter(|g| !g.is_zero()).collect();
        if gens.is_empty() {
            return input("zero ideal");
        }
        let den = gens.iter().fold(BigInt::one(), |acc, g| acc.lcm(&g.denominator()));
        if field.degree() == 1 {
            let g = gens.iter().map(|x| elem_coords(x, &den).0.abs()).fold(BigInt::zero(), |acc, v| acc.gcd(&v));
            return Ok(Ideal { field, scale: Rational::new(g, den), a: BigInt::one(), b: BigInt::zero() });
        }
        let w = field.omega();
        let mut vecs = Vec::new();
        for g in &gens {
            vecs.push(elem_coords(g, &den));
            vecs.push(elem_coords(&(*g * &w), &den));
        }
        let (aa, bb, cc) = hnf(&vecs);
        let cont = aa.gcd(&bb).gcd(&cc);
        let (aa, bb, cc) = (&aa / &cont, &bb / &cont, &cc / &cont);
        debug_assert!(cc.is_one(), "module is not an ideal");
        let _ = cc;
        Ok(Ideal { field, scale: Rational::new(cont, den), b: bb.mod_floor(&aa), a: aa })
    }

    /// Two generators.
    pub fn generators(&self) -> [Elem; 2] {
        let k = self.field;
        let g1 = k.from_rational(&self.scale * Rational::from_integer(self.a.clone()));
        let g2 = if k.degree() == 1 {
            g1.clone()
        } else {
            Elem::new(k, Rational::from_integer(self.b.clone()), int(1)).scale(&self.scale)
        };
        [g1, g2]
    }

    /// Absolute norm (a positive rational).
    pub fn norm(&self) -> Rational {
        if self.field.degree() == 1 {
            return self.scale.clone();
        }
        &self.scale * &self.scale * Rational::from_integer(self.a.clone())
    }

    pub fn mul(&self, o: &Ideal) -> Ideal {
        let g = self.generators();
        let h = o.generators();
        let prods: Vec<Elem> = g.iter().flat_map(|x| h.iter().map(move |y| x * y)).collect();
        Ideal::from_generators(self.field, &prods).expect("nonzero product")
    }

    pub fn conj(&self) -> Ideal {
        let g = self.generators().map(|x| x.conj());
        Ideal::from_generators(self.field, &g).unwrap()
    }

    pub fn inverse(&self) -> Ideal {
        if self.field.degree() == 1 {
            return Ideal { scale: Rational::one() / &self.scale, ..self.clone() };
        }
        let n = self.norm();
        let c = self.conj();
        let g = c.generators().map(|x| x.scale(&(Rational::one() / &n)));
        Ideal::from_generators(self.field, &g).unwrap()
    }

    pub fn pow(&self, e: i32) -> Ideal {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut r = Ideal::unit(self.field);
        for _ in 0..e.unsigned_abs() {
            r = r.mul(&base);
        }
        r
    }

    pub fn add(&self, o: &Ideal) -> Ideal {
        let mut g = self.generators().to_vec();
        g.extend(o.generators());
        Ideal::from_generators(self.field, &g).unwrap()
    }

    pub fn scale_by(&self, x: &Elem) -> Ideal {
        let g = self.generators().map(|y| &y * x);
        Ideal::from_generators(self.field, &g).unwrap()
    }

    pub fn contains(&self, x: &Elem) -> bool {
        if x.is_zero() {
            return true;
        }
        let y = x.scale(&(Rational::one() / &self.scale));
        if !y.is_integral() {
            return false;
        }
        if self.field.degree() == 1 {
            return true;
        }
        let u = y.a.to_integer();
        let v = y.b.to_integer();
        ((u - v * &self.b) % &self.a).is_zero()
    }

    pub fn contains_ideal(&self, o: &Ideal) -> bool {
        o.generators().iter().all(|g| self.contains(g))
    }

    pub fn is_integral(&self) -> bool {
        self.contains_ideal(&self.clone()) && self.scale.is_integer()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.scale.is_one() && self.a.is_one()
    }

    /// ord_v of the ideal.
    pub fn valuation(&self, ctx: &LocalContext) -> i64 {
        self.generators().iter().filter_map(|g| ctx.valuation(g)).min().unwrap()
    }

    /// A generator of the completion at `ctx`: the generator of least valuation.
    pub fn local_generator(&self, ctx: &LocalContext) -> Elem {
        let [g1, g2] = self.generators();
        match (ctx.valuation(&g1), ctx.valuation(&g2)) {
            (Some(v1), Some(v2)) if v2 < v1 => g2,
            _ => g1,
        }
    }

    pub fn to_i64_parts(&self) -> Option<(i64, i64)> {
        Some((self.a.to_i64()?, self.b.to_i64()?))
    }
}

/// Lower-triangular basis (a, 0), (b, c) of the Z-span of integer vectors.
fn hnf(vecs: &[(BigInt, BigInt)]) -> (BigInt, BigInt, BigInt) {
    // second basis vector: combination with gcd of second coordinates
    let mut g = BigInt::zero();
    let mut wu = BigInt::zero();
    for (u, v) in vecs {
        if v.is_zero() {
            continue;
        }
        if g.is_zero() {
            g = v.clone();
            wu = u.clone();
            continue;
        }
        let e = g.extended_gcd(v);
        wu = &e.x * &wu + &e.y * u;
        g = e.gcd;
    }
    if g.is_negative() {
        g = -g;
        wu = -wu;
    }
    let mut a = BigInt::zero();
    for (u, v) in vecs {
        let k = if g.is_zero() { BigInt::zero() } else { v / &g };
        let r = u - k * &wu;
        a = a.gcd(&r);
    }
    let b = if a.is_zero() { wu } else { wu.mod_floor(&a) };
    (a, b, g)
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [g1, g2] = self.generators();
        write!(f, "({g1}, {g2})")
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}
