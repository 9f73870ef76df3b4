//! Representation by the hyperbolic binary lattice ax + a^{-1}y, where
//! Q(sx + ty) = st.

use super::{class_group, principal_generator, small_first, Ideal};
use crate::error::{input, Result};
use crate::field::Elem;

/// The preferred generator of a principal ideal among its unit multiples.
pub fn normalized_generator(ideal: &Ideal) -> Option<Elem> {
    let g = principal_generator(ideal)?;
    ideal.field.units().iter().map(|u| u * &g).min_by(small_first)
}

/// Decides whether alpha = ab with a in the ideal and b in its inverse.
/// The witness is a generator of a c for the smallest divisor c of (alpha)
/// completing the class of the ideal.
pub fn binary_hyperbolic_represents(a: &Ideal, alpha: &Elem) -> Result<Option<(Elem, Elem)>> {
    if alpha.is_zero() {
        return input("alpha must be nonzero");
    }
    if alpha.field != a.field {
        return input("alpha and the ideal live in different fields");
    }
    let k = a.field;
    if k.degree() == 1 {
        let s = k.from_rational(a.scale.clone());
        return Ok(Some((s.clone(), alpha * &s.inv())));
    }
    let cg = class_group(k.d().unwrap())?;
    let target = cg.inverse(cg.ideal_class(a));
    let principal_alpha = Ideal::principal(alpha)?;
    let (alpha_int, _) = principal_alpha.integral_multiple();
    if alpha_int != principal_alpha {
        return input("alpha must be integral");
    }
    for c in principal_alpha.divisors()? {
        if cg.ideal_class(&c) != target {
            continue;
        }
        let g = normalized_generator(&a.mul(&c)).expect("class is trivial");
        let b = alpha * &g.inv();
        return Ok(Some((g, b)));
    }
    Ok(None)
}
