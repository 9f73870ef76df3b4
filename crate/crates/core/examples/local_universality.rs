//! Place-by-place universality verdicts, with witnesses where one fails.

use quniv::field::NumberField;
use quniv::lattice::QuadLattice;
use quniv::local_universality::is_locally_universal;

pub fn main() -> quniv::Result<()> {
    let q = NumberField::Rational;
    let k = NumberField::imag_quad(-1)?;
    let cases = [
        ("x^2+y^2+z^2", QuadLattice::diag(q, &[1, 1, 1])?),
        ("x^2+y^2-z^2", QuadLattice::diag(q, &[1, 1, -1])?),
        ("x^2+y^2-77z^2", QuadLattice::diag(q, &[1, 1, -77])?),
        ("x^2+y^2 over Z[i]", QuadLattice::diag(k, &[1, 1])?),
        ("x^2+y^2+z^2 over Z[i]", QuadLattice::diag(k, &[1, 1, 1])?),
    ];
    for (name, l) in cases {
        let v = is_locally_universal(&l)?;
        println!("{name}: {}", if v.universal { "locally universal" } else { "not locally universal" });
        for p in &v.places {
            let w = p.verdict.witness.as_ref().map(|w| format!(", misses {w}")).unwrap_or_default();
            println!("  {:>8} {:<5} {}{w}", p.place, p.verdict.universal, p.verdict.rule.label());
        }
    }
    Ok(())
}
