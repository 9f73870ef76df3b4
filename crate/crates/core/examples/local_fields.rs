//! Valuations, square classes and Hilbert symbols at a few places.

use quniv::field::NumberField;
use quniv::localfield::{hilbert_symbol, is_square_local, local_contexts_default, quadratic_defect, Place};

pub fn main() -> quniv::Result<()> {
    let q = NumberField::Rational;
    let q2 = local_contexts_default(q, 2)?.remove(0);
    for n in [3, 5, 7, 12, 17] {
        println!("Q_2: {n} square {} defect {:?}", is_square_local(&q.int(n), &q2)?, quadratic_defect(&q.int(n), &q2)?);
    }

    let k = NumberField::imag_quad(-5)?;
    for p in [2, 3, 5, 7] {
        for ctx in local_contexts_default(k, p)? {
            let place = Place::Finite(ctx.clone());
            let h = hilbert_symbol(&k.int(-1), &k.int(p as i64), &place)?;
            println!("{k} at {}: e2 = {}, (-1, {p}) = {h}", ctx.describe(), ctx.e2);
        }
    }
    Ok(())
}
