//! Explicit lattices that are locally universal but not globally: the
//! hyperbolic binary ax + a^{-1}y on a free basis, and its ternary extensions
//! by an orthogonal line of norm 4a.

use super::{class_group, primes_above, small_first, Ideal};
use crate::arith::{factorize, is_prime, rat, Rational};
use crate::error::{input, Error, Result};
use crate::field::{Elem, NumberField};
use crate::lattice::QuadLattice;
use crate::localfield::{local_contexts_default, quadratic_defect, Defect};
use num_traits::ToPrimitive;
use std::cmp::Ordering;

/// The hyperbolic binary lattice on a pseudo-basis and on a free basis.
#[derive(Debug, Clone)]
pub struct BinaryConstruction {
    /// integral representative of the class used for the construction
    pub ideal: Ideal,
    pub pseudo: QuadLattice,
    pub free: QuadLattice,
    /// free basis vectors as coordinates (on x, on y)
    pub basis: [(Elem, Elem); 2],
}

/// The lattice ax + a^{-1}y with Q(x) = Q(y) = 0 and B(x, y) = 1/2.
pub fn hyperbolic_pseudo(a: &Ideal) -> Result<QuadLattice> {
    let k = a.field;
    let h = k.from_rational(rat(1, 2));
    QuadLattice::with_ideals(k, Some(vec![a.clone(), a.inverse()]), vec![vec![k.zero(), h.clone()], vec![h, k.zero()]])
}

fn gram_of(u: &Elem, up: &Elem, vp: &Elem) -> Vec<Vec<Elem>> {
    let half = rat(1, 2);
    let b = (&(u * vp) + up).scale(&half);
    vec![vec![u.clone(), b.clone()], vec![b, up * vp]]
}

/// Candidates v' in a^{-1} with u v' - 1 in a, scored by the norm of
/// Q(e2) = (u v' - 1) v'. The search radius doubles until something is
/// found and then once more.
fn best_completion(a: &Ideal, inv: &Ideal, u: &Elem) -> Option<(Elem, Elem)> {
    let k = a.field;
    let one = k.one();
    let cand = |vp: &Elem| {
        let up = &(u * vp) - &one;
        a.contains(&up).then(|| (up, vp.clone()))
    };
    let mut best: Option<(Elem, Elem)> = cand(&k.zero());
    let better = |x: &(Elem, Elem), y: &(Elem, Elem)| {
        let (qx, qy) = (&x.0 * &x.1, &y.0 * &y.1);
        small_first(&qx, &qy).then_with(|| small_first(&x.1, &y.1)) == Ordering::Less
    };
    let base = inv.norm().ceil().to_i64().unwrap_or(1).max(1);
    let mut radius = base * 4;
    let mut extra = 1;
    loop {
        for vp in inv.elements_up_to_norm(radius) {
            if let Some(c) = cand(&vp) {
                if best.as_ref().map_or(true, |b| better(&c, b)) {
                    best = Some(c);
                }
            }
        }
        if best.is_some() {
            if extra == 0 {
                return best;
            }
            extra -= 1;
        }
        if radius > 1 << 24 {
            return best;
        }
        radius *= 2;
    }
}

/// Builds the hyperbolic lattice of an ideal class together with a free
/// basis e1 = u x + y, e2 = u' x + v' y with u v' - u' = 1.
pub fn construct_binary(a: &Ideal) -> Result<BinaryConstruction> {
    let k = a.field;
    let (a, _) = a.integral_multiple();
    let inv = a.inverse();
    let pseudo = hyperbolic_pseudo(&a)?;
    let mut us: Vec<Elem> = Vec::new();
    if a.is_unit_ideal() {
        us.push(k.zero());
    }
    let Some(n) = a.norm().to_i64() else { return input("ideal norm too large") };
    let mut bound = 4 * n;
    while us.len() <= 1 {
        us.extend(a.elements_up_to_norm(bound));
        bound *= 2;
    }
    us.sort_by(|x, y| match (x.is_zero(), y.is_zero()) {
        (true, _) => Ordering::Less,
        (_, true) => Ordering::Greater,
        _ => small_first(x, y),
    });
    us.dedup();
    let unit = Ideal::unit(k);
    for u in us {
        let coprime = if u.is_zero() { a.is_unit_ideal() } else { Ideal::principal(&u)?.mul(&inv).add(&a) == unit };
        if !coprime {
            continue;
        }
        let Some((mut up, mut vp)) = best_completion(&a, &inv, &u) else { continue };
        let mut gram = gram_of(&u, &up, &vp);
        if gram[0][1].sqrt_d_coords().0 < Rational::from_integer(0.into()) {
            up = -&up;
            vp = -&vp;
            gram = gram_of(&u, &up, &vp);
        }
        let free = QuadLattice::new(k, gram)?;
        return Ok(BinaryConstruction { ideal: a.clone(), pseudo, free, basis: [(u, k.one()), (up, vp)] });
    }
    Err(Error::Unsupported(format!("no free basis found for {a}")))
}

/// Whether k(sqrt a)/k is unramified at every finite place: (a) is the
/// square of an ideal and at dyadic places the unit part of a has defect
/// inside 4o.
pub fn is_unramified_kummer(field: NumberField, a: &Elem) -> Result<bool> {
    if a.is_zero() || field.is_square(a) {
        return Ok(false);
    }
    if Ideal::principal(a)?.factor()?.iter().any(|(_, e)| e % 2 != 0) {
        return Ok(false);
    }
    for c in local_contexts_default(field, 2)? {
        let v = c.valuation(a).expect("nonzero");
        match quadratic_defect(a, &c)? {
            Defect::Zero => {}
            Defect::PiPower(e) if e >= v + 2 * c.e2 as i64 => {}
            Defect::PiPower(_) => return Ok(false),
        }
    }
    Ok(true)
}

/// A small a with k(sqrt a)/k unramified, or None when the class number
/// is odd. Tries -1, then the prime discriminants dividing the field
/// discriminant, then small integers.
pub fn find_unramified_quadratic(d: i64) -> Result<Option<Elem>> {
    let cg = class_group(d)?;
    if cg.order() % 2 == 1 {
        return Ok(None);
    }
    let k = cg.field;
    let disc = k.discriminant();
    let mut cands: Vec<i64> = vec![-1];
    for p in factorize(disc.unsigned_abs() as i128)?.primes() {
        let p = p as i64;
        if p == 2 {
            cands.extend([2, -2]);
        } else {
            cands.push(if p % 4 == 1 { p } else { -p });
        }
    }
    for n in 2..=50i64 {
        cands.extend([n, -n]);
    }
    let mut seen = Vec::new();
    for c in cands {
        if seen.contains(&c) {
            continue;
        }
        seen.push(c);
        let a = k.int(c);
        if is_unramified_kummer(k, &a)? {
            return Ok(Some(a));
        }
    }
    Err(Error::Unsupported(format!("no unramified quadratic extension found for d = {d}")))
}

/// The quadratic character attached to k(sqrt a) on an ideal class,
/// read off at a prime q not dividing 2a in the class.
pub fn artin_character(a_elem: &Elem, ideal: &Ideal) -> Result<i8> {
    let k = ideal.field;
    let cg = class_group(k.d().unwrap())?;
    let target = cg.ideal_class(ideal);
    let two_a = a_elem.scale(&Rational::from_integer(2.into()));
    for p in (3u64..10_000).filter(|&p| is_prime(p)) {
        for c in local_contexts_default(k, p)? {
            if c.valuation(&two_a) != Some(0) {
                continue;
            }
            let (g1, g2) = c.prime_ideal_generators();
            if cg.ideal_class(&Ideal::from_generators(k, &[g1, g2])?) == target {
                return c.chi(a_elem);
            }
        }
    }
    Err(Error::Unsupported("no prime found in the class".into()))
}

/// The ternary lattices M = (ax + a^{-1}y) ⊥ o z with Q(z) = 4a, and
/// M_i with o replaced by the prime p_i o.
#[derive(Debug, Clone)]
pub struct TernaryFamily {
    pub a: Elem,
    pub binary: BinaryConstruction,
    pub base: QuadLattice,
    pub members: Vec<(u64, QuadLattice)>,
}

fn with_line(b: &QuadLattice, q: Elem) -> Result<QuadLattice> {
    let k = b.field;
    let mut g = b.gram.clone();
    for row in g.iter_mut() {
        row.push(k.zero());
    }
    g.push(vec![k.zero(), k.zero(), q]);
    QuadLattice::new(k, g)
}

pub fn construct_ternary_family(d: i64, ideal: &Ideal, primes: &[u64]) -> Result<TernaryFamily> {
    let k = NumberField::imag_quad(d)?;
    if ideal.field != k {
        return input("ideal is over a different field");
    }
    let Some(a) = find_unramified_quadratic(d)? else {
        return input(format!("class number of d = {d} is odd"));
    };
    if artin_character(&a, ideal)? != -1 {
        return input(format!("{ideal} has trivial Artin symbol in k(sqrt {a})"));
    }
    let binary = construct_binary(ideal)?;
    let four_a = a.scale(&Rational::from_integer(4.into()));
    let base = with_line(&binary.free, four_a.clone())?;
    let mut members = Vec::new();
    for &p in primes {
        if p == 2 || !is_prime(p) {
            return input(format!("{p} is not an odd prime"));
        }
        if primes_above(k, p)?.len() != 1 || k.discriminant() % p as i64 == 0 {
            return input(format!("{p} is not inert in k"));
        }
        if d == -5 && p % 4 != 1 {
            return input(format!("{p} is not 1 mod 4"));
        }
        let pp = Rational::from_integer(((p * p) as i64).into());
        members.push((p, with_line(&binary.free, four_a.scale(&pp))?));
    }
    Ok(TernaryFamily { a, binary, base, members })
}
