//! Writing, reading and rejecting documents.

use dblcat::cat::FiniteCategory;
use dblcat::io::{parse_document, serialize_document, Document};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let doc = Document::Category(FiniteCategory::chain(1));
    let text = serialize_document(&doc);
    print!("{text}");
    assert_eq!(parse_document(&text)?, doc);

    let broken = text.replace("[1, 1, 1]", "[1, 1, 7]");
    match parse_document(&broken) {
        Err(e) => println!("rejected: {e}"),
        Ok(_) => println!("accepted"),
    }
    let unknown = text.replace("\"objects\"", "\"colour\": 3, \"objects\"");
    if let Err(e) = parse_document(&unknown) {
        println!("rejected: {e}");
    }
    if let Err(e) = parse_document("{\"format_version\": 1,") {
        println!("rejected: {e}");
    }
    Ok(())
}
