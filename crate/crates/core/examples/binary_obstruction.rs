//! A locally universal binary lattice over Q(sqrt -5) that misses 1.

use quniv::global::{construct_binary, hyperbolic_search, is_globally_universal, Ideal};
use quniv::local_universality::is_locally_universal;

pub fn main() -> quniv::Result<()> {
    let k = quniv::field::NumberField::imag_quad(-5)?;
    for gens in [[k.int(2), k.ints(1, 1)], [k.int(3), k.ints(1, 1)], [k.int(1), k.zero()]] {
        let a = Ideal::from_generators(k, &gens)?;
        let b = construct_binary(&a)?;
        let g = &b.free.gram;
        println!("ideal {a}: ({})x^2 + ({})xy + ({})y^2", g[0][0], &g[0][1] + &g[1][0], g[1][1]);
        println!("  locally universal: {}", is_locally_universal(&b.free)?.universal);
        println!("  global: {}", is_globally_universal(&b.free, 100)?.to_json());
        println!("  1 = xy with x in a, y in a^-1 up to norm 1000: {:?}", hyperbolic_search(&a, &k.one(), 1000));
    }
    Ok(())
}
