//! The evaluation functor out of the crossed product of the induced opindexing, checked for
//! functoriality, for H*! = id and for fullness on γC.

use dblcat::crossprod::{build_crossed_product, check_eval_injective, check_eval_properties, evaluation_functor};
use dblcat::indexing::induce_opindexing;
use dblcat::instances::spec::{build_instance, InstanceKind, InstanceSpec, RestrictionKind};
use dblcat::DEFAULT_BUDGET;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let specs = [
        ("Z/2 double groupoid", InstanceSpec::new(InstanceKind::GroupDoubleGroupoid { order: 2 })),
        ("Rel*(2)", InstanceSpec::restricted(InstanceKind::Rel { n: 2 }, RestrictionKind::Star)),
        ("frame product", InstanceSpec::new(InstanceKind::FrameWitness)),
    ];
    for (name, spec) in specs {
        let c = build_instance(&spec, DEFAULT_BUDGET)?;
        let q = build_crossed_product(&induce_opindexing(&c)?, DEFAULT_BUDGET)?;
        let bang = evaluation_functor(&q, &c)?;
        let props = check_eval_properties(&bang, &q, &c)?;
        println!("{name}: {} -> {} squares", q.double.square_count(), c.square_count());
        println!("  violations {}", props.violations.len());
        for note in &props.notes {
            println!("  {note}");
        }
        match check_eval_injective(&bang) {
            Some((a, b)) => println!("  not injective: {a} and {b} have the same image"),
            None => println!("  injective"),
        }
    }
    Ok(())
}
