//! Potential universality: decisions, explicit witnesses and unit shift
//! certificates.

use quniv::field::NumberField;
use quniv::lattice::QuadLattice;
use quniv::potential::{is_potentially_universal, potential_witness, unit_shift_certificate};

pub fn main() -> quniv::Result<()> {
    let q = NumberField::Rational;
    for d in [[2, 3], [2, 4], [1, -1], [1, 7]] {
        println!("diag{d:?}: {}", is_potentially_universal(&QuadLattice::diag(q, &d)?)?);
    }
    let w = potential_witness(&q.int(5), &q.int(-1))?;
    println!("5 = X^2 - Y^2 with {}", w.to_json());
    let c = unit_shift_certificate(&q.int(3), &q.int(2))?;
    println!("certificate for (3, 2): {}", c.to_json());
    Ok(())
}
