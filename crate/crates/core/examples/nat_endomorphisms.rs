//! Natural endomorphisms of the identity functor, as a commutative monoid.

use dblcat::cat::FiniteCategory;
use dblcat::instances::nat::{nat_endomorphisms, nat_endomorphisms_monoid};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (name, cat) in [
        ("Z/4", FiniteCategory::cyclic_group(4)),
        ("0 < 1 < 2", FiniteCategory::chain(2)),
        ("two points", FiniteCategory::discrete(2)),
    ] {
        let nats = nat_endomorphisms(&cat);
        let m = nat_endomorphisms_monoid(&cat)?;
        println!("{name}: {} transformations, monoid of size {}", nats.len(), m.size());
        for alpha in &nats {
            println!("  {alpha:?}");
        }
    }
    Ok(())
}
