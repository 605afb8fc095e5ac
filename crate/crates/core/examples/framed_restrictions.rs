//! Framedness of a few instances, and the restrictions C*, C̃ and Ĉ of Rel(2).

use dblcat::cat::FiniteCategory;
use dblcat::framed::{is_absolutely_dense, is_framed, is_fully_faithful, restrict_hat, restrict_star, restrict_tilde};
use dblcat::instances::commuting::build_commuting_squares;
use dblcat::instances::rel::build_rel;
use dblcat::DEFAULT_BUDGET;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let boxed = build_commuting_squares(&FiniteCategory::chain(2))?;
    let r = is_framed(&boxed);
    println!("⊡(0 < 1 < 2): framed {}", r.is_framed());
    if let Some(v) = r.report.violations.first() {
        println!("  first failure {v}");
    }

    let rel = build_rel(2, DEFAULT_BUDGET)?;
    let r = is_framed(&rel);
    println!("Rel(2): {} squares, framed {}, normal {}, split {}", rel.square_count(), r.is_framed(), r.normal, r.split);
    for (name, restricted) in [("star", restrict_star(&rel)?), ("tilde", restrict_tilde(&rel)?), ("hat", restrict_hat(&rel)?)] {
        let d = &restricted.double;
        println!(
            "  {name:<5} {:>4} squares, {:>2} frames, ff {:?}, ad {:?}",
            d.square_count(),
            d.vertical().morphism_count(),
            is_fully_faithful(d)?,
            is_absolutely_dense(d)?,
        );
    }
    Ok(())
}
