//! Exact arithmetic in k(sqrt c_1, ..., sqrt c_n), with the c_i independent
//! modulo squares of k. Elements are coefficient vectors on the products of
//! square roots indexed by bitmask.

use crate::error::{input, Result};
use crate::field::{Elem, NumberField};

#[derive(Debug, Clone, PartialEq)]
pub struct RadicalRing {
    pub field: NumberField,
    pub radicands: Vec<Elem>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RElem {
    pub coeffs: Vec<Elem>,
}

impl RadicalRing {
    pub fn new(field: NumberField) -> RadicalRing {
        RadicalRing { field, radicands: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        1 << self.radicands.len()
    }

    pub fn from_base(&self, x: &Elem) -> RElem {
        let mut c = vec![self.field.zero(); self.dim()];
        c[0] = x.clone();
        RElem { coeffs: c }
    }

    pub fn zero(&self) -> RElem {
        self.from_base(&self.field.zero())
    }

    pub fn one(&self) -> RElem {
        self.from_base(&self.field.one())
    }

    /// The product of the square roots in the mask.
    pub fn basis(&self, mask: usize) -> RElem {
        let mut e = self.zero();
        e.coeffs[mask] = self.field.one();
        e
    }

    fn radicand_of(&self, mask: usize) -> Elem {
        let mut p = self.field.one();
        for (i, c) in self.radicands.iter().enumerate() {
            if mask >> i & 1 == 1 {
                p = &p * c;
            }
        }
        p
    }

    /// A square root of c, adjoining a new radical only when c is not a
    /// square times a product of the existing radicands. Existing elements
    /// stay valid after `lift`.
    pub fn adjoin_sqrt(&mut self, c: &Elem) -> Result<RElem> {
        if c.is_zero() {
            return Ok(self.zero());
        }
        if c.field != self.field {
            return input("radicand over the wrong field");
        }
        for mask in 0..self.dim() {
            if let Some(t) = self.field.sqrt(&(c / &self.radicand_of(mask))) {
                let mut e = self.zero();
                e.coeffs[mask] = t;
                return Ok(e);
            }
        }
        self.radicands.push(c.clone());
        Ok(self.basis(self.dim() / 2))
    }

    /// Pads an element of a smaller ring created before later adjunctions.
    pub fn lift(&self, x: &RElem) -> Result<RElem> {
        if x.coeffs.len() > self.dim() || !x.coeffs.len().is_power_of_two() {
            return input("element does not belong to this ring");
        }
        let mut c = x.coeffs.clone();
        c.resize(self.dim(), self.field.zero());
        Ok(RElem { coeffs: c })
    }

    fn check(&self, x: &RElem) -> Result<()> {
        if x.coeffs.len() != self.dim() {
            return input("element does not belong to this ring");
        }
        Ok(())
    }

    pub fn add(&self, x: &RElem, y: &RElem) -> RElem {
        RElem { coeffs: x.coeffs.iter().zip(&y.coeffs).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, x: &RElem, y: &RElem) -> RElem {
        RElem { coeffs: x.coeffs.iter().zip(&y.coeffs).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, x: &RElem, s: &Elem) -> RElem {
        RElem { coeffs: x.coeffs.iter().map(|a| a * s).collect() }
    }

    pub fn mul(&self, x: &RElem, y: &RElem) -> RElem {
        let mut out = self.zero();
        for (i, a) in x.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                // sqrt(c_S) sqrt(c_T) = c_{S∩T} sqrt(c_{S△T})
                let t = &(a * b) * &self.radicand_of(i & j);
                out.coeffs[i ^ j] = &out.coeffs[i ^ j] + &t;
            }
        }
        out
    }

    pub fn pow(&self, x: &RElem, e: u32) -> RElem {
        (0..e).fold(self.one(), |acc, _| self.mul(&acc, x))
    }

    pub fn checked_mul(&self, x: &RElem, y: &RElem) -> Result<RElem> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.mul(x, y))
    }

    /// Whether all coefficients on the radical basis are integral; a
    /// sufficient condition for integrality.
    pub fn has_integral_coords(&self, x: &RElem) -> bool {
        x.coeffs.iter().all(Elem::is_integral)
    }

    pub fn to_base(&self, x: &RElem) -> Option<Elem> {
        x.coeffs[1..].iter().all(Elem::is_zero).then(|| x.coeffs[0].clone())
    }

    pub fn format(&self, x: &RElem) -> String {
        let mut parts = Vec::new();
        for (mask, c) in x.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let roots: Vec<String> = (0..self.radicands.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| format!("sqrt({})", self.radicands[i].to_json_string()))
                .collect();
            parts.push(if roots.is_empty() {
                c.to_json_string()
            } else {
                format!("({})*{}", c.to_json_string(), roots.join("*"))
            });
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

impl RElem {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Elem::is_zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_roots_square_back() {
        let q = NumberField::Rational;
        let mut r = RadicalRing::new(q);
        let s2 = r.adjoin_sqrt(&q.int(2)).unwrap();
        let s3 = r.adjoin_sqrt(&q.int(3)).unwrap();
        let s6 = r.adjoin_sqrt(&q.int(24)).unwrap();
        assert_eq!(r.radicands.len(), 2);
        let s2 = r.lift(&s2).unwrap();
        assert_eq!(r.mul(&s2, &s2), r.from_base(&q.int(2)));
        assert_eq!(r.mul(&s3, &s3), r.from_base(&q.int(3)));
        assert_eq!(r.mul(&s6, &s6), r.from_base(&q.int(24)));
        assert_eq!(r.mul(&s2, &s3), r.scale(&s6, &q.from_rational(crate::arith::rat(1, 2))));
        let s4 = r.adjoin_sqrt(&q.int(4)).unwrap();
        assert_eq!(s4, r.from_base(&q.int(2)));
    }

    #[test]
    fn ring_laws_on_samples() {
        let k = NumberField::imag_quad(-5).unwrap();
        let mut r = RadicalRing::new(k);
        r.adjoin_sqrt(&k.int(-1)).unwrap();
        r.adjoin_sqrt(&k.ints(1, 1)).unwrap();
        let x = RElem { coeffs: vec![k.ints(1, 2), k.int(3), k.ints(0, 1), k.int(-2)] };
        let y = RElem { coeffs: vec![k.int(2), k.ints(-1, 1), k.int(1), k.ints(4, 0)] };
        let z = RElem { coeffs: vec![k.int(0), k.int(5), k.ints(2, -3), k.int(1)] };
        assert_eq!(r.mul(&x, &y), r.mul(&y, &x));
        assert_eq!(r.mul(&r.mul(&x, &y), &z), r.mul(&x, &r.mul(&y, &z)));
        assert_eq!(r.mul(&x, &r.add(&y, &z)), r.add(&r.mul(&x, &y), &r.mul(&x, &z)));
        assert!(r.checked_mul(&x, &RElem { coeffs: vec![k.one()] }).is_err());
    }
}
