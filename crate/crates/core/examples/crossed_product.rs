//! The crossed product of the identity opindexing on the Z/2 bundle, and of the opindexing the
//! Z/3 double groupoid induces.

use dblcat::cat::CommMonoidPresentation;
use dblcat::crossprod::build_crossed_product;
use dblcat::doublecat::validate_double_category;
use dblcat::indexing::{induce_opindexing, validate_indexing, Direction, Pi2Indexing};
use dblcat::instances::spec::{build_instance, InstanceKind, InstanceSpec};
use dblcat::length::is_length_one;
use dblcat::twocat::decorated_horizontalization;
use dblcat::DEFAULT_BUDGET;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let bundle = build_instance(
        &InstanceSpec::new(InstanceKind::MonoidBundle { monoid: CommMonoidPresentation::cyclic(2) }),
        DEFAULT_BUDGET,
    )?;
    let phi = Pi2Indexing::from_fn(Direction::Opindexing, decorated_horizontalization(&bundle)?, |_, x| x)?;
    assert!(validate_indexing(&phi).is_empty());
    report("Z/2 bundle, identity", &phi)?;

    let groupoid = build_instance(&InstanceSpec::new(InstanceKind::GroupDoubleGroupoid { order: 3 }), DEFAULT_BUDGET)?;
    report("Z/3 double groupoid, induced", &induce_opindexing(&groupoid)?)?;
    Ok(())
}

fn report(name: &str, phi: &Pi2Indexing) -> Result<(), Box<dyn std::error::Error>> {
    let q = build_crossed_product(phi, DEFAULT_BUDGET)?;
    println!("{name}");
    println!("  squares          {}", q.double.square_count());
    println!("  laws hold        {}", validate_double_category(&q.double).is_empty());
    println!("  length one       {}", is_length_one(&q.double).holds);
    for (i, class) in q.classes().iter().enumerate().filter(|(_, c)| c.len() > 1) {
        println!("  class s{i}: {class:?}");
    }
    Ok(())
}
