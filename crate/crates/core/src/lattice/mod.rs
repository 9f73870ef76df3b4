//! Quadratic lattices with pseudo-bases, their completions, Jordan splittings
//! and the dyadic invariants used by the local classifiers.

mod isotropy;
mod jordan;
mod json;

pub use isotropy::{is_isotropic, is_isotropic_global, relevant_places};
pub use jordan::{jordan_split, minimal_norm_refine, weight_and_norm_group, JordanComponent, JordanSplitting};
pub use json::{field_to_value, lattice_from_json, lattice_from_value, lattice_to_json, lattice_to_json_value};

use crate::error::{input, Result};
use crate::field::{Elem, NumberField};
use crate::global::Ideal;
use crate::localfield::LocalContext;

/// An o-lattice x_1·a_1 + ... + x_n·a_n with Gram matrix B(x_i, x_j).
#[derive(Debug, Clone, PartialEq)]
pub struct QuadLattice {
    pub field: NumberField,
    /// coefficient ideals; None means a free lattice on the given basis
    pub coeff_ideals: Option<Vec<Ideal>>,
    pub gram: Vec<Vec<Elem>>,
}

impl QuadLattice {
    pub fn new(field: NumberField, gram: Vec<Vec<Elem>>) -> Result<Self> {
        Self::with_ideals(field, None, gram)
    }

    pub fn with_ideals(field: NumberField, coeff_ideals: Option<Vec<Ideal>>, gram: Vec<Vec<Elem>>) -> Result<Self> {
        let n = gram.len();
        if n == 0 {
            return input("empty Gram matrix");
        }
        for (i, row) in gram.iter().enumerate() {
            if row.len() != n {
                return input("Gram matrix is not square");
            }
            for (j, e) in row.iter().enumerate() {
                if e.field != field {
                    return input("Gram entry over the wrong field");
                }
                if *e != gram[j][i] {
                    return input("Gram matrix is not symmetric");
                }
            }
        }
        if let Some(ids) = &coeff_ideals {
            if ids.len() != n {
                return input("need one coefficient ideal per basis vector");
            }
        }
        if det(&gram).is_zero() {
            return input("degenerate Gram matrix");
        }
        let coeff_ideals = coeff_ideals.filter(|ids| !ids.iter().all(Ideal::is_unit_ideal));
        Ok(QuadLattice { field, coeff_ideals, gram })
    }

    /// Diagonal lattice from integers.
    pub fn diag(field: NumberField, d: &[i64]) -> Result<Self> {
        let n = d.len();
        let gram = (0..n).map(|i| (0..n).map(|j| field.int(if i == j { d[i] } else { 0 })).collect()).collect();
        Self::new(field, gram)
    }

    /// Lattice from a matrix of rationals given as (numerator, denominator).
    pub fn from_rationals(field: NumberField, m: &[&[(i64, i64)]]) -> Result<Self> {
        let gram = m
            .iter()
            .map(|row| row.iter().map(|&(a, b)| field.from_rational(crate::arith::rat(a, b))).collect())
            .collect();
        Self::new(field, gram)
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn ideal(&self, i: usize) -> Ideal {
        match &self.coeff_ideals {
            Some(ids) => ids[i].clone(),
            None => Ideal::unit(self.field),
        }
    }

    /// det of the Gram matrix on the given (pseudo-)basis.
    pub fn gram_det(&self) -> Elem {
        det(&self.gram)
    }

    /// The scale ideal, generated by B(x_i, x_j)·a_i·a_j.
    pub fn scale_ideal(&self) -> Ideal {
        let mut gens = Vec::new();
        for i in 0..self.rank() {
            for j in 0..self.rank() {
                if !self.gram[i][j].is_zero() {
                    gens.extend(self.ideal(i).mul(&self.ideal(j)).scale_by(&self.gram[i][j]).generators());
                }
            }
        }
        Ideal::from_generators(self.field, &gens).expect("nondegenerate")
    }

    /// The norm ideal, generated by Q(x_i)·a_i^2 and 2·s(L).
    pub fn norm_ideal(&self) -> Ideal {
        let two = self.field.int(2);
        let mut gens: Vec<Elem> = self.scale_ideal().scale_by(&two).generators().to_vec();
        for i in 0..self.rank() {
            if !self.gram[i][i].is_zero() {
                gens.extend(self.ideal(i).mul(&self.ideal(i)).scale_by(&self.gram[i][i]).generators());
            }
        }
        Ideal::from_generators(self.field, &gens).unwrap()
    }

    /// Whether every value Q(x) is integral.
    pub fn is_integral_norm(&self) -> bool {
        self.norm_ideal().is_integral()
    }

    /// The completion at `ctx` on a free local basis, with the precision raised
    /// if the determinant needs it.
    pub fn localize(&self, ctx: &LocalContext) -> Result<LocalLattice> {
        let gens: Vec<Elem> = (0..self.rank()).map(|i| self.ideal(i).local_generator(ctx)).collect();
        let gram: Vec<Vec<Elem>> = (0..self.rank())
            .map(|i| (0..self.rank()).map(|j| &(&gens[i] * &gens[j]) * &self.gram[i][j]).collect())
            .collect();
        let d = det(&gram);
        let vd = ctx.valuation(&d).unwrap_or(0).max(0) as u32;
        let mut need = 2 * vd + 2 * ctx.e2 + 3;
        // entries of negative valuation shift everything
        let vmin = gram.iter().flatten().filter_map(|e| ctx.valuation(e)).min().unwrap_or(0);
        need += (-vmin).max(0) as u32 * 2;
        let ctx = if need > ctx.precision { ctx.with_precision(need)? } else { ctx.clone() };
        Ok(LocalLattice { ctx, gram })
    }
}

/// A lattice over the completion, on a free basis given by global vectors.
#[derive(Debug, Clone)]
pub struct LocalLattice {
    pub ctx: LocalContext,
    pub gram: Vec<Vec<Elem>>,
}

impl LocalLattice {
    pub fn new(ctx: LocalContext, gram: Vec<Vec<Elem>>) -> Self {
        LocalLattice { ctx, gram }
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn det(&self) -> Elem {
        det(&self.gram)
    }

    pub fn ord(&self, x: &Elem) -> Option<i64> {
        self.ctx.valuation(x)
    }

    /// ord of the scale ideal.
    pub fn scale_exponent(&self) -> i64 {
        self.gram.iter().flatten().filter_map(|e| self.ord(e)).min().expect("nonzero Gram")
    }

    /// ord of the norm ideal.
    pub fn norm_exponent(&self) -> i64 {
        let s = self.scale_exponent() + self.ctx.e2 as i64;
        (0..self.rank()).filter_map(|i| self.ord(&self.gram[i][i])).fold(s, i64::min)
    }

    /// Whether the lattice is unimodular.
    pub fn is_unimodular(&self) -> bool {
        self.scale_exponent() == 0 && self.ord(&self.det()) == Some(0)
    }
}

/// Determinant by exact elimination.
pub fn det(m: &[Vec<Elem>]) -> Elem {
    let n = m.len();
    let k = m[0][0].field;
    let mut a: Vec<Vec<Elem>> = m.to_vec();
    let mut d = k.one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return k.zero();
        };
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        d = &d * &a[c][c];
        let inv = a[c][c].inv();
        for r in c + 1..n {
            if a[r][c].is_zero() {
                continue;
            }
            let f = &a[r][c] * &inv;
            for j in c..n {
                let t = &f * &a[c][j];
                a[r][j] = &a[r][j] - &t;
            }
        }
    }
    d
}

/// Congruence diagonalization over k: an orthogonal basis's Q values.
pub fn diagonalize(gram: &[Vec<Elem>]) -> Vec<Elem> {
    let n = gram.len();
    let mut g: Vec<Vec<Elem>> = gram.to_vec();
    let mut alive: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    while !alive.is_empty() {
        let piv = alive.iter().copied().find(|&i| !g[i][i].is_zero());
        let i = match piv {
            Some(i) => i,
            None => {
                let pair = alive
                    .iter()
                    .flat_map(|&i| alive.iter().map(move |&j| (i, j)))
                    .find(|&(i, j)| i != j && !g[i][j].is_zero());
                let Some((i, j)) = pair else {
                    // remaining block is zero: degenerate
                    for _ in &alive {
                        out.push(gram[0][0].field.zero());
                    }
                    return out;
                };
                // x_i <- x_i + x_j
                add_to(&mut g, i, j, &gram[0][0].field.one());
                i
            }
        };
        let gi = g[i][i].clone();
        let others: Vec<usize> = alive.iter().copied().filter(|&k| k != i).collect();
        for &k in &others {
            let c = &g[i][k] / &gi;
            add_to(&mut g, k, i, &-c);
        }
        out.push(gi);
        alive.retain(|&k| k != i);
    }
    out
}

/// Basis change x_i <- x_i + c·x_j applied to a Gram matrix.
pub(crate) fn add_to(g: &mut [Vec<Elem>], i: usize, j: usize, c: &Elem) {
    let n = g.len();
    // rows/columns: B(x_i + c x_j, y) = B(x_i, y) + c B(x_j, y)
    let gjj = g[j][j].clone();
    let gij = g[i][j].clone();
    for k in 0..n {
        if k == i {
            continue;
        }
        let v = &g[i][k] + &(c * &g[j][k]);
        g[i][k] = v.clone();
        g[k][i] = v;
    }
    let two = c.field.int(2);
    g[i][i] = &(&g[i][i] + &(&(&two * c) * &gij)) + &(&(c * c) * &gjj);
}

#[cfg(test)]
mod tests;
