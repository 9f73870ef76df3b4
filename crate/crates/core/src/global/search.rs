//! Bounded searches for representations, used as cross-checks of exact
//! verdicts and as the last, inconclusive step of the global cascade.

use super::Ideal;
use crate::arith::int;
use crate::error::{Error, Result};
use crate::field::{Elem, NumberField};
use crate::lattice::QuadLattice;

/// Q(v) for coordinates on the basis of the Gram matrix.
pub fn evaluate(gram: &[Vec<Elem>], v: &[Elem]) -> Elem {
    let k = v[0].field;
    let mut s = k.zero();
    for i in 0..v.len() {
        for j in 0..v.len() {
            s = &s + &(&gram[i][j] * &(&v[i] * &v[j]));
        }
    }
    s
}

/// Integers of the field with all integer coordinates in [-h, h].
fn box_elements(k: NumberField, h: i64) -> Vec<Elem> {
    let mut out = Vec::new();
    for a in -h..=h {
        if k.degree() == 1 {
            out.push(k.int(a));
        } else {
            for b in -h..=h {
                out.push(k.ints(a, b));
            }
        }
    }
    out
}

/// Roots in o of a t^2 + b t + c.
fn integral_roots(k: NumberField, a: &Elem, b: &Elem, c: &Elem) -> Vec<Elem> {
    let mut out = Vec::new();
    if a.is_zero() {
        if !b.is_zero() {
            out.push(-&(c / b));
        } else if c.is_zero() {
            out.push(k.zero());
        }
    } else {
        let disc = &(b * b) - &(&(a * c).scale(&int(4)));
        if let Some(s) = k.sqrt(&disc) {
            let two_a = a.scale(&int(2));
            out.push(&(&s - b) / &two_a);
            out.push(&(&(-&s) - b) / &two_a);
        }
    }
    out.retain(Elem::is_integral);
    out
}

/// A vector of the free lattice with Q(v) = alpha whose first n - 1
/// coordinates have integer coordinates bounded by `height`; the last
/// coordinate is solved for exactly.
pub fn search_representation(l: &QuadLattice, alpha: &Elem, height: i64) -> Result<Option<Vec<Elem>>> {
    if l.coeff_ideals.is_some() {
        return Err(Error::Unsupported("search needs a free lattice".into()));
    }
    let k = l.field;
    let n = l.rank();
    let g = &l.gram;
    let els = box_elements(k, height);
    let mut idx = vec![0usize; n - 1];
    loop {
        let head: Vec<Elem> = idx.iter().map(|&i| els[i].clone()).collect();
        // Q(head, t) = g_nn t^2 + 2 B(head, e_n) t + Q(head)
        let mut lin = k.zero();
        for (i, x) in head.iter().enumerate() {
            lin = &lin + &(&g[i][n - 1] * x);
        }
        let mut q0 = k.zero();
        for i in 0..n - 1 {
            for j in 0..n - 1 {
                q0 = &q0 + &(&g[i][j] * &(&head[i] * &head[j]));
            }
        }
        for t in integral_roots(k, &g[n - 1][n - 1], &lin.scale(&int(2)), &(&q0 - alpha)) {
            let mut v = head.clone();
            v.push(t);
            return Ok(Some(v));
        }
        let mut i = 0;
        loop {
            if i == n - 1 {
                return Ok(None);
            }
            idx[i] += 1;
            if idx[i] < els.len() {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
    }
}

/// Elements a in the ideal with |N(a)| <= bound and alpha / a in its
/// inverse: a search for alpha on ax + a^{-1}y.
pub fn hyperbolic_search(a: &Ideal, alpha: &Elem, bound: i64) -> Option<(Elem, Elem)> {
    let inv = a.inverse();
    a.elements_up_to_norm(bound).into_iter().find_map(|x| {
        let y = alpha / &x;
        inv.contains(&y).then_some((x, y))
    })
}

/// Nonzero integers of the field with |N| <= bound, smallest first.
pub fn small_integers(k: NumberField, bound: i64) -> Vec<Elem> {
    Ideal::unit(k).elements_up_to_norm(bound)
}
