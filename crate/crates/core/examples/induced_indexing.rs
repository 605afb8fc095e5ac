//! The π₂-opindexing and π₂-indexing induced by unique factorization through unit squares.

use dblcat::indexing::{induce_indexing, induce_opindexing, Pi2Indexing};
use dblcat::instances::spec::{build_instance, InstanceKind, InstanceSpec};
use dblcat::DEFAULT_BUDGET;

fn show(name: &str, phi: &Pi2Indexing) {
    println!("{name} ({:?})", phi.direction);
    for (a, m) in phi.monoids.iter().enumerate() {
        println!("  π₂ at {a}: {} elements", m.size());
    }
    for (f, row) in phi.maps.iter().enumerate() {
        println!("  Φ_m{f} = {row:?}");
    }
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let c = build_instance(&InstanceSpec::new(InstanceKind::GroupDoubleGroupoid { order: 3 }), DEFAULT_BUDGET)?;
    show("Z/3 double groupoid", &induce_opindexing(&c)?);
    show("Z/3 double groupoid", &induce_indexing(&c)?);

    let boxed = build_instance(
        &InstanceSpec::new(InstanceKind::CommutingSquares {
            category: dblcat::instances::spec::NamedCategory::Chain { length: 2 },
        }),
        DEFAULT_BUDGET,
    )?;
    match induce_opindexing(&boxed) {
        Ok(phi) => show("⊡(0 < 1 < 2)", &phi),
        Err(e) => println!("⊡(0 < 1 < 2): {e}"),
    }
    Ok(())
}
