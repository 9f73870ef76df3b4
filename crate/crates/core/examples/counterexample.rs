//! x^2 + y^2 - pq z^2 represents every small integer yet is not universal.

use quniv::global::counterexample_family;

pub fn main() -> quniv::Result<()> {
    for n in [2, 5, 10] {
        let c = counterexample_family(n, 10)?;
        let failing: Vec<&str> = c.local.failures().iter().map(|f| f.place.as_str()).collect();
        println!("N = {n}: p = {}, q = {}, fails at {failing:?}", c.p, c.q);
        for e in c.range.entries.iter().filter(|e| e.n > 0) {
            println!("  {:>3} = {:?}", e.n, e.witness);
        }
    }
    Ok(())
}
