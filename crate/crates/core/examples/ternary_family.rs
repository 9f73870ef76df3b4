//! Ternary lattices that are locally universal but never represent 1
//! within the searched range.

use quniv::global::{construct_ternary_family, is_globally_universal, Ideal};
use quniv::local_universality::is_locally_universal;

pub fn main() -> quniv::Result<()> {
    let k = quniv::field::NumberField::imag_quad(-5)?;
    let ideal = Ideal::from_generators(k, &[k.int(2), k.ints(1, 1)])?;
    let fam = construct_ternary_family(-5, &ideal, &[13, 17, 37])?;
    println!("unramified extension k(sqrt {})", fam.a);
    for (p, m) in &fam.members {
        println!(
            "p = {p}: last coefficient {}, locally universal {}, {}",
            m.gram[2][2],
            is_locally_universal(m)?.universal,
            is_globally_universal(m, 300)?.to_json()
        );
    }
    Ok(())
}
