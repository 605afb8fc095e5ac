//! γC, the length-one test and canonical decompositions. The vertical embedding of a 2-category
//! with Z/2 cells has length one but a square with no canonical decomposition.

use dblcat::instances::spec::{build_instance, InstanceKind, InstanceSpec, RestrictionKind};
use dblcat::length::{canonical_decomposition, first_non_canonical, globularly_generated_piece, is_length_one};
use dblcat::DEFAULT_BUDGET;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (name, spec) in [
        ("length two", InstanceSpec::new(InstanceKind::LengthTwo)),
        ("Rel*(2)", InstanceSpec::restricted(InstanceKind::Rel { n: 2 }, RestrictionKind::Star)),
    ] {
        let c = build_instance(&spec, DEFAULT_BUDGET)?;
        let gamma = globularly_generated_piece(&c);
        let l = is_length_one(&c);
        println!("{name}: {} squares, γC {}, length one {}", c.square_count(), gamma.len(), l.holds);
        match first_non_canonical(&c) {
            Some(s) => println!("  {s} has no canonical decomposition"),
            None => {
                let s = *gamma.squares.last().unwrap();
                println!("  every square is canonical, e.g. {s} = {:?}", canonical_decomposition(&c, s).unwrap());
            }
        }
    }
    Ok(())
}
