//! Jordan splittings of a ternary lattice at its bad primes.

use quniv::field::NumberField;
use quniv::lattice::{jordan_split, QuadLattice};
use quniv::local_universality::bad_primes;
use quniv::localfield::local_contexts_default;

pub fn main() -> quniv::Result<()> {
    let q = NumberField::Rational;
    let l = QuadLattice::from_rationals(
        q,
        &[&[(2, 1), (1, 2), (0, 1)], &[(1, 2), (6, 1), (3, 1)], &[(0, 1), (3, 1), (36, 1)]],
    )?;
    println!("det = {}", l.gram_det());
    for p in bad_primes(&l)? {
        let ctx = local_contexts_default(q, p)?.remove(0);
        let split = jordan_split(&l.localize(&ctx)?)?;
        println!("p = {p}: ranks {:?} scales {:?} norms {:?}", split.ranks(), split.scales(), split.norms());
    }
    Ok(())
}
