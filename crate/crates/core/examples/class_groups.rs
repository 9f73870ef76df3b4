//! Class groups of imaginary quadratic fields from reduced forms.

use quniv::global::class_group;

pub fn main() -> quniv::Result<()> {
    for d in [-1, -2, -5, -6, -14, -21, -23, -51, -105] {
        let cg = class_group(d)?;
        let orders: Vec<usize> = (0..cg.order()).map(|i| cg.element_order(i)).collect();
        println!("Q(sqrt {d}): h = {}, [Pic:Pic^2] = {}, element orders {orders:?}", cg.order(), cg.two_part());
    }
    Ok(())
}
