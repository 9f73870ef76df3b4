//! Integer ternary forms representing every integer in a window without
//! being universal.

use super::search::search_representation;
use crate::arith::{cornacchia_sum_two_squares, is_prime};
use crate::error::{input, Result};
use crate::field::NumberField;
use crate::lattice::QuadLattice;
use crate::local_universality::{is_locally_universal, LocalUniversality};
use num_traits::ToPrimitive;
use serde_json::{json, Value};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RangeEntry {
    pub n: i64,
    pub witness: Option<Vec<i64>>,
}

#[derive(Debug, Clone)]
pub struct RangeReport {
    pub entries: Vec<RangeEntry>,
}

impl RangeReport {
    /// Targets without a witness, n = 0 excluded.
    pub fn unresolved(&self) -> Vec<i64> {
        self.entries.iter().filter(|e| e.witness.is_none() && e.n != 0).map(|e| e.n).collect()
    }

    pub fn all_represented(&self) -> bool {
        self.unresolved().is_empty()
    }

    pub fn witness(&self, n: i64) -> Option<&Vec<i64>> {
        self.entries.iter().find(|e| e.n == n)?.witness.as_ref()
    }

    pub fn to_json(&self) -> Value {
        let entries: Vec<Value> =
            self.entries.iter().map(|e| json!({"n": e.n, "witness": e.witness, "trivial_zero": e.n == 0})).collect();
        json!({"entries": entries, "unresolved": self.unresolved()})
    }
}

/// D when the lattice is x^2 + y^2 - D z^2 over the integers.
fn sum_of_squares_shape(f: &QuadLattice) -> Option<i64> {
    let k = f.field;
    if k != NumberField::Rational || f.rank() != 3 || f.coeff_ideals.is_some() {
        return None;
    }
    let g = &f.gram;
    let off_zero = (0..3).all(|i| (0..3).all(|j| i == j || g[i][j].is_zero()));
    if !off_zero || g[0][0] != k.one() || g[1][1] != k.one() {
        return None;
    }
    let d = -g[2][2].to_rational()?;
    let d = d.is_integer().then(|| d.to_integer().to_i64()).flatten()?;
    (d > 0).then_some(d)
}

fn shape_witness(d: i64, n: i64, z_bound: i64) -> Option<Vec<i64>> {
    for z in 0..=z_bound {
        let m = n as i128 + d as i128 * (z * z) as i128;
        if m == 0 {
            return Some(vec![0, 0, z]);
        }
        if m > 0 {
            if let Some((x, y)) = cornacchia_sum_two_squares(m as u64) {
                return Some(vec![x as i64, y as i64, z]);
            }
        }
    }
    None
}

/// Witnesses for every n in [-N, N]. The shape x^2 + y^2 - D z^2 scans
/// 0 <= z <= z_bound and splits n + D z^2 as a sum of two squares; other
/// ternaries fall back to a box search of height z_bound.
pub fn represents_range_check(f: &QuadLattice, n: i64, z_bound: i64) -> Result<RangeReport> {
    if f.field != NumberField::Rational {
        return input("range checks are over the integers");
    }
    let shape = sum_of_squares_shape(f);
    let mut entries = Vec::new();
    for t in -n..=n {
        let witness = if t == 0 {
            Some(vec![0; f.rank()])
        } else if let Some(d) = shape {
            shape_witness(d, t, z_bound)
        } else {
            search_representation(f, &f.field.int(t), z_bound)?
                .map(|v| v.iter().map(|x| x.to_rational().unwrap().to_integer().to_i64().unwrap()).collect())
        };
        entries.push(RangeEntry { n: t, witness });
    }
    Ok(RangeReport { entries })
}

/// The form x^2 + y^2 - pq z^2 with p < q the two smallest primes above N
/// that are 3 mod 4, with its local verdicts and the range check.
#[derive(Debug, Clone)]
pub struct Counterexample {
    pub p: u64,
    pub q: u64,
    pub form: QuadLattice,
    pub local: LocalUniversality,
    pub range: RangeReport,
}

pub fn counterexample_family(n: i64, z_bound: i64) -> Result<Counterexample> {
    if n < 1 {
        return input("N must be at least 1");
    }
    let mut ps = (n as u64 + 1..).filter(|&p| p % 4 == 3 && is_prime(p));
    let (p, q) = (ps.next().unwrap(), ps.next().unwrap());
    let form = QuadLattice::diag(NumberField::Rational, &[1, 1, -((p * q) as i64)])?;
    let local = is_locally_universal(&form)?;
    let range = represents_range_check(&form, n, z_bound)?;
    Ok(Counterexample { p, q, form, local, range })
}
