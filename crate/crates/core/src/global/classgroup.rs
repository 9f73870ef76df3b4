//! Class groups of imaginary quadratic fields via reduced binary forms.

use super::Ideal;
use crate::arith::{is_squarefree, Rational};
use crate::error::{input, Result};
use crate::field::{Elem, NumberField};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use std::collections::HashMap;

/// A primitive positive definite form a·x^2 + b·xy + c·y^2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Form {
    pub a: i128,
    pub b: i128,
    pub c: i128,
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let e = a.extended_gcd(&b);
    (e.x, e.y, e.gcd)
}

impl Form {
    pub fn new(a: i128, b: i128, c: i128) -> Form {
        Form { a, b, c }
    }

    pub fn disc(&self) -> i128 {
        self.b * self.b - 4 * self.a * self.c
    }

    pub fn eval(&self, x: i128, y: i128) -> i128 {
        self.a * x * x + self.b * x * y + self.c * y * y
    }

    pub fn is_reduced(&self) -> bool {
        let (a, b, c) = (self.a, self.b, self.c);
        b.abs() <= a && a <= c && !((b.abs() == a || a == c) && b < 0)
    }

    /// The reduced form and the unimodular change (columns are the new basis
    /// vectors in old coordinates).
    pub fn reduce_with_matrix(&self) -> (Form, [[i128; 2]; 2]) {
        let (mut a, mut b, mut c) = (self.a, self.b, self.c);
        let mut m = [[1i128, 0], [0, 1]];
        loop {
            if b > a || b <= -a {
                // x -> x + k·y
                let k = (a - b).div_euclid(2 * a);
                let nb = b + 2 * k * a;
                c += k * (b + k * a);
                b = nb;
                m = [[m[0][0], m[0][1] + k * m[0][0]], [m[1][0], m[1][1] + k * m[1][0]]];
                continue;
            }
            if a > c || (a == c && b < 0) {
                // (x, y) -> (-y, x)
                (a, c) = (c, a);
                b = -b;
                m = [[m[0][1], -m[0][0]], [m[1][1], -m[1][0]]];
                continue;
            }
            break;
        }
        (Form { a, b, c }, m)
    }

    pub fn reduce(&self) -> Form {
        self.reduce_with_matrix().0
    }

    pub fn inverse(&self) -> Form {
        Form { a: self.a, b: -self.b, c: self.c }.reduce()
    }

    /// Gaussian composition by Dirichlet's united forms.
    pub fn compose(&self, o: &Form) -> Form {
        let (f1, f2) = if self.a > o.a { (o, self) } else { (self, o) };
        let disc = f1.disc();
        let s = (f1.b + f2.b) / 2;
        let n = f2.b - s;
        let (y1, d) = if f2.a % f1.a == 0 {
            (0, f1.a)
        } else {
            let (u, _, d) = ext_gcd(f2.a, f1.a);
            (u, d)
        };
        let (x2, y2, d1) = if s % d == 0 {
            (0, -1, d)
        } else {
            let (x2, y2, d1) = ext_gcd(s, d);
            (x2, -y2, d1)
        };
        let v1 = f1.a / d1;
        let v2 = f2.a / d1;
        let r = ((y1 as i128 * y2 as i128 * n as i128 - x2 as i128 * f2.c as i128).rem_euclid(v1 as i128)) as i128;
        let b3 = f2.b + 2 * v2 * r;
        let a3 = v1 * v2;
        let c3 = (b3 * b3 - disc) / (4 * a3);
        Form { a: a3, b: b3, c: c3 }.reduce()
    }
}

#[derive(Debug, Clone)]
pub struct ClassGroup {
    pub field: NumberField,
    pub disc: i64,
    /// reduced forms, identity first
    pub forms: Vec<Form>,
    pub table: Vec<Vec<usize>>,
    index: HashMap<Form, usize>,
}

pub fn class_group(d: i64) -> Result<ClassGroup> {
    if d >= 0 || !is_squarefree(d) {
        return input(format!("{d} is not a negative squarefree integer"));
    }
    if d.abs() > 10_000 {
        return input(format!("|d| = {} exceeds 10^4", d.abs()));
    }
    let field = NumberField::imag_quad(d)?;
    let disc = field.discriminant();
    let mut forms = Vec::new();
    let amax = ((-disc) as f64 / 3.0).sqrt() as i64 + 1;
    for a in 1..=amax {
        for b in -a + 1..=a {
            let num = b * b - disc;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            let f = Form::new(a.into(), b.into(), c.into());
            if f.is_reduced() && a.gcd(&b).gcd(&c) == 1 {
                forms.push(f);
            }
        }
    }
    forms.sort();
    let index: HashMap<Form, usize> = forms.iter().enumerate().map(|(i, f)| (*f, i)).collect();
    let table = forms.iter().map(|f| forms.iter().map(|g| index[&f.compose(g)]).collect()).collect();
    Ok(ClassGroup { field, disc, forms, table, index })
}

impl ClassGroup {
    pub fn order(&self) -> usize {
        self.forms.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn index_of(&self, f: &Form) -> usize {
        self.index[&f.reduce()]
    }

    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.table[i][j]
    }

    pub fn inverse(&self, i: usize) -> usize {
        self.index_of(&self.forms[i].inverse())
    }

    pub fn pow(&self, i: usize, e: i64) -> usize {
        let base = if e < 0 { self.inverse(i) } else { i };
        (0..e.unsigned_abs()).fold(self.identity(), |acc, _| self.mul(acc, base))
    }

    pub fn element_order(&self, i: usize) -> usize {
        let mut x = i;
        let mut n = 1;
        while x != self.identity() {
            x = self.mul(x, i);
            n += 1;
        }
        n
    }

    /// The class of a fractional ideal.
    pub fn ideal_class(&self, ideal: &Ideal) -> usize {
        self.index_of(&ideal_form(ideal))
    }

    pub fn is_principal(&self, ideal: &Ideal) -> bool {
        self.ideal_class(ideal) == self.identity()
    }

    /// A primitive integral ideal in the class of a form.
    pub fn form_ideal(&self, f: &Form) -> Ideal {
        form_ideal(self.field, f)
    }

    /// [Pic : Pic^2].
    pub fn two_part(&self) -> usize {
        let mut squares: Vec<usize> = (0..self.order()).map(|i| self.mul(i, i)).collect();
        squares.sort_unstable();
        squares.dedup();
        self.order() / squares.len()
    }
}

pub fn pic_two_part(d: i64) -> Result<usize> {
    Ok(class_group(d)?.two_part())
}

fn wide(n: i128) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// The form N(x·a + y·beta)/a of the primitive part Za + Z·beta.
pub fn ideal_form(ideal: &Ideal) -> Form {
    let k = ideal.field;
    let t = k.omega_relation().0 as i128;
    let disc = k.discriminant() as i128;
    let a = ideal.a.to_i128().expect("ideal norm fits in i128");
    let b = -(2 * ideal.b.to_i128().expect("fits") + t);
    let b = b.rem_euclid(2 * a);
    let b = if b > a { b - 2 * a } else { b };
    let c = (b * b - disc) / (4 * a);
    Form { a, b, c }
}

/// The ideal Za + Z(-b + sqrt D)/2 of a form.
pub fn form_ideal(k: NumberField, f: &Form) -> Ideal {
    let t = k.omega_relation().0 as i128;
    // (-b + sqrt D)/2 = (-b - t)/2 + w, since sqrt D = 2w - t
    let shift = Rational::new(BigInt::from(-f.b - t), BigInt::from(2));
    let beta = &k.from_rational(shift) + &k.omega();
    Ideal::from_generators(k, &[k.from_rational(wide(f.a)), beta]).expect("nonzero")
}

/// A generator of a principal ideal.
pub fn principal_generator(ideal: &Ideal) -> Option<Elem> {
    let k = ideal.field;
    if k.degree() == 1 {
        return Some(k.from_rational(ideal.scale.clone()));
    }
    let f = ideal_form(ideal);
    let (r, m) = f.reduce_with_matrix();
    if r.a != 1 {
        return None;
    }
    // the form is N(x·a + y·gamma)/a with gamma = (b - sqrt D)/2 = (b + t)/2 - w
    let t = k.omega_relation().0 as i128;
    let a = k.from_rational(wide(f.a));
    let gamma = &k.from_rational(Rational::new(BigInt::from(f.b + t), BigInt::from(2))) - &k.omega();
    let (x, y) = (m[0][0], m[1][0]);
    let g = &a.scale(&wide(x)) + &gamma.scale(&wide(y));
    Some(g.scale(&ideal.scale))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn class_numbers() {
        assert_eq!(class_group(-1).unwrap().order(), 1);
        assert_eq!(class_group(-5).unwrap().order(), 2);
        assert_eq!(class_group(-23).unwrap().order(), 3);
        assert_eq!(class_group(-3).unwrap().order(), 1);
        assert_eq!(class_group(-14).unwrap().order(), 4);
        assert_eq!(class_group(-163).unwrap().order(), 1);
        assert_eq!(class_group(-51).unwrap().order(), 2);
        assert!(class_group(5).is_err());
        assert!(class_group(-12).is_err());
    }

    #[test]
    fn two_parts() {
        assert_eq!(pic_two_part(-5).unwrap(), 2);
        assert_eq!(pic_two_part(-1).unwrap(), 1);
        assert_eq!(pic_two_part(-51).unwrap(), 2);
        assert_eq!(pic_two_part(-23).unwrap(), 1);
        // Q(sqrt -14) has cyclic class group of order 4
        assert_eq!(pic_two_part(-14).unwrap(), 2);
        // Q(sqrt -21): (Z/2)^2
        assert_eq!(pic_two_part(-21).unwrap(), 4);
    }

    #[test]
    fn group_axioms() {
        for d in [-5, -14, -21, -23, -47, -65, -71, -105, -161, -1001] {
            let g = class_group(d).unwrap();
            let h = g.order();
            for i in 0..h {
                assert_eq!(g.mul(i, g.identity()), i);
                assert_eq!(g.mul(i, g.inverse(i)), g.identity());
                let mut row = g.table[i].clone();
                row.sort_unstable();
                assert_eq!(row, (0..h).collect::<Vec<_>>());
                for j in 0..h {
                    assert_eq!(g.mul(i, j), g.mul(j, i));
                    for l in 0..h {
                        assert_eq!(g.mul(g.mul(i, j), l), g.mul(i, g.mul(j, l)));
                    }
                }
            }
        }
    }

    #[test]
    fn composition_matches_ideal_products() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for d in [-5, -23, -14, -21, -71, -1001] {
            let g = class_group(d).unwrap();
            for _ in 0..40 {
                let i = rng.gen_range(0..g.order());
                let j = rng.gen_range(0..g.order());
                let a = g.form_ideal(&g.forms[i]);
                let b = g.form_ideal(&g.forms[j]);
                assert_eq!(g.ideal_class(&a), i);
                assert_eq!(g.ideal_class(&a.mul(&b)), g.mul(i, j), "d={d} {:?} {:?}", g.forms[i], g.forms[j]);
            }
        }
    }

    #[test]
    fn principal_ideals() {
        let k = NumberField::imag_quad(-5).unwrap();
        let g = class_group(-5).unwrap();
        let a = Ideal::from_generators(k, &[k.int(2), k.ints(1, 1)]).unwrap();
        assert!(!g.is_principal(&a));
        assert!(principal_generator(&a).is_none());
        let a2 = a.mul(&a);
        assert!(g.is_principal(&a2));
        let gen = principal_generator(&a2).unwrap();
        assert_eq!(Ideal::principal(&gen).unwrap(), a2);
        let x = k.ints(7, -3);
        let gx = principal_generator(&Ideal::principal(&x).unwrap()).unwrap();
        assert!((&gx / &x).norm() == crate::arith::int(1));
        let mut rng = ChaCha8Rng::seed_from_u64(32);
        for d in [-1, -3, -5, -23, -14] {
            let k = NumberField::imag_quad(d).unwrap();
            let g = class_group(d).unwrap();
            for _ in 0..50 {
                let x = k.ints(rng.gen_range(-30..30), rng.gen_range(-30..30));
                if x.is_zero() {
                    continue;
                }
                let i = Ideal::principal(&x).unwrap();
                assert!(g.is_principal(&i));
                let gx = principal_generator(&i).unwrap();
                assert_eq!(Ideal::principal(&gx).unwrap(), i);
            }
        }
        let half = Ideal::principal(&k.from_rational(crate::arith::rat(3, 2))).unwrap();
        assert_eq!(Ideal::principal(&principal_generator(&half).unwrap()).unwrap(), half);
    }
}
