use crate::arith::factorize;
use crate::error::{input, Result};
use crate::field::{Elem, NumberField};
use crate::localfield::{hilbert_symbol, is_square_local, local_contexts_default, Place};
use num_traits::{Signed, ToPrimitive};
use std::collections::BTreeSet;

/// Whether the diagonal space <a_1, ..., a_n> is isotropic at a place.
pub fn is_isotropic(coeffs: &[Elem], place: &Place) -> Result<bool> {
    if coeffs.iter().any(Elem::is_zero) {
        return input("degenerate diagonal coefficients");
    }
    let n = coeffs.len();
    if n <= 1 {
        return Ok(false);
    }
    match place {
        Place::Complex => Ok(true),
        Place::Real => {
            let mut pos = false;
            let mut neg = false;
            for c in coeffs {
                let Some(r) = c.to_rational() else {
                    return input("real place needs rational coefficients");
                };
                if r.is_positive() {
                    pos = true;
                } else {
                    neg = true;
                }
            }
            Ok(pos && neg)
        }
        Place::Finite(ctx) => {
            let h = |a: &Elem, b: &Elem| hilbert_symbol(a, b, place);
            match n {
                2 => is_square_local(&-(&coeffs[0] * &coeffs[1]), ctx),
                3 => {
                    let (a, b, c) = (&coeffs[0], &coeffs[1], &coeffs[2]);
                    Ok(h(&-(a * c), &-(b * c))? == 1)
                }
                4 => {
                    let d = coeffs.iter().skip(1).fold(coeffs[0].clone(), |acc, c| &acc * c);
                    if !is_square_local(&d, ctx)? {
                        return Ok(true);
                    }
                    let mut hasse = 1;
                    for i in 0..4 {
                        for j in i + 1..4 {
                            hasse *= h(&coeffs[i], &coeffs[j])?;
                        }
                    }
                    let m1 = coeffs[0].field.int(-1);
                    Ok(hasse == h(&m1, &m1)?)
                }
                _ => Ok(true),
            }
        }
    }
}

/// Rational primes dividing 2 and the norms of the given elements.
fn bad_primes(coeffs: &[Elem]) -> Result<BTreeSet<u64>> {
    let mut ps: BTreeSet<u64> = [2].into_iter().collect();
    for c in coeffs {
        let n = c.norm();
        for part in [n.numer(), n.denom()] {
            let v = part.abs().to_i128().ok_or_else(|| crate::Error::Factorization(part.to_string()))?;
            if v > 1 {
                ps.extend(factorize(v)?.primes());
            }
        }
    }
    Ok(ps)
}

/// Every place where a diagonal form with these coefficients can be anisotropic.
pub fn relevant_places(field: NumberField, coeffs: &[Elem]) -> Result<Vec<Place>> {
    let mut out = Vec::new();
    for p in bad_primes(coeffs)? {
        for ctx in local_contexts_default(field, p)? {
            out.push(Place::Finite(ctx));
        }
    }
    out.push(if field.degree() == 1 { Place::Real } else { Place::Complex });
    Ok(out)
}

/// Global isotropy by the local-global principle.
pub fn is_isotropic_global(field: NumberField, coeffs: &[Elem]) -> Result<bool> {
    for place in relevant_places(field, coeffs)? {
        if !is_isotropic(coeffs, &place)? {
            return Ok(false);
        }
    }
    Ok(true)
}
