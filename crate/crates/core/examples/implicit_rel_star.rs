//! Rel*(3) has too many squares to tabulate, but framedness, full faithfulness and length one can
//! still be decided through the trait.

use std::time::Instant;

use dblcat::framed::is_fully_faithful;
use dblcat::implicit::is_length_one_implicit;
use dblcat::instances::rel::{FrameClass, RelDoubleCategory};
use dblcat::DEFAULT_BUDGET;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let t = Instant::now();
    let rel = RelDoubleCategory::new(&[1, 2, 3], FrameClass::Bijective)?;
    println!("{} squares", rel.count_squares());
    // fails with NotFramed unless every niche and co-niche has a filler
    println!("framed and fully faithful {}", is_fully_faithful(&rel)?);
    let l = is_length_one_implicit(&rel, DEFAULT_BUDGET)?;
    println!("{} globular squares, γC {}, length one {}", l.globular, l.gamma, l.holds);
    println!("{:.1} s", t.elapsed().as_secs_f64());
    Ok(())
}
