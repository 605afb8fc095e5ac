//! Fully faithful and absolutely dense frames of Rel over sets of size at most 3, decided on the
//! implicit model without tabulating any squares.

use dblcat::framed::classify_morphisms;
use dblcat::instances::rel::RelDoubleCategory;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let rel = RelDoubleCategory::up_to(3)?;
    let classes = classify_morphisms(&rel);
    for k in &classes {
        let f = k.morphism;
        println!(
            "{:>3} {:?}  ff={:<5} ad={:<5} injective={:<5} surjective={}",
            f.to_string(),
            rel.frames.function(f),
            k.fully_faithful,
            k.absolutely_dense,
            rel.frames.is_injective(f),
            rel.frames.is_surjective(f),
        );
    }
    let exact = classes.iter().all(|k| {
        k.fully_faithful == rel.frames.is_injective(k.morphism) && k.absolutely_dense == rel.frames.is_surjective(k.morphism)
    });
    println!("{} functions, ff = injective and ad = surjective: {exact}", classes.len());
    Ok(())
}
