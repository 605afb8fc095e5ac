//! Two crossed-product squares over the same frame and upper cell, in distinct classes, that the
//! evaluation functor identifies. Rel*(3) is searched without tabulation and has none.

use dblcat::implicit::evaluation_injectivity_implicit;
use dblcat::instances::rel::{FrameClass, RelDoubleCategory};
use dblcat::instances::spec::{build_instance, InstanceKind, InstanceSpec};
use dblcat::instances::witness::{noninjectivity_search, replay_witness};
use dblcat::DEFAULT_BUDGET;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let c = build_instance(&InstanceSpec::new(InstanceKind::FrameWitness), DEFAULT_BUDGET)?;
    let found = noninjectivity_search(&c, DEFAULT_BUDGET)?;
    let w = found.witness.expect("the frame product has a witness");
    println!("first  {:?} in class {}", w.first, w.first_class);
    println!("second {:?} in class {}", w.second, w.second_class);
    println!("both evaluate to {}", w.image);
    println!("replay {}", replay_witness(&found.crossed, &found.bang, &w)?);

    let rel = RelDoubleCategory::new(&[1, 2, 3], FrameClass::Bijective)?;
    let e = evaluation_injectivity_implicit(&rel, DEFAULT_BUDGET)?;
    println!("Rel*(3): {} triples in {} classes, witness {:?}", e.triples, e.classes, e.witness);
    Ok(())
}
