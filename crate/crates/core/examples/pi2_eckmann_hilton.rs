//! π₂ of monoid bundles: the two pastings of globular squares at one object agree and commute.

use dblcat::cat::CommMonoidPresentation;
use dblcat::ids::ObjId;
use dblcat::instances::spec::{build_instance, InstanceKind, InstanceSpec};
use dblcat::pi2::{eckmann_hilton_check, pi2_monoid};
use dblcat::DEFAULT_BUDGET;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let klein = CommMonoidPresentation::from_fn(4, 0, |a, b| a ^ b)?;
    let max = CommMonoidPresentation::from_fn(3, 0, |a, b| a.max(b))?;
    for (name, m) in [("Z/4", CommMonoidPresentation::cyclic(4)), ("Klein", klein), ("max on 3", max)] {
        let c = build_instance(&InstanceSpec::new(InstanceKind::MonoidBundle { monoid: m.clone() }), DEFAULT_BUDGET)?;
        let a = ObjId(0);
        let pi2 = pi2_monoid(&c, a)?;
        println!("{name}: π₂ has {} elements {:?}", pi2.size(), pi2.elements);
        println!("  same monoid as the input: {}", pi2.presentation == m);
        println!("  Eckmann-Hilton violations: {}", eckmann_hilton_check(&c, a).violations.len());
    }
    Ok(())
}
