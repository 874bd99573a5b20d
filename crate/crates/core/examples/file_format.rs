//! Reading and writing the text format.
//!
//! cargo run --example file_format

use irsearch::{canonical_form, parse_graph, write_graph};

const TEXT: &str = "\
c a 4-cycle with one vertex colored apart
p edge 4 4
n 3 1
e 1 2
e 2 3
e 3 4
e 4 1
";

fn main() -> irsearch::Result<()> {
    let g = parse_graph(TEXT)?;
    println!("coloring {}", g.coloring());
    print!("normalized:\n{}", write_graph(&g));
    let c = canonical_form(&g);
    print!("canonical:\n{}", write_graph(&c.canonical));

    for bad in ["p edge 2 2\ne 1 2\ne 2 1\n", "p edge 2 1\ne 1 3\n", "e 1 2\n"] {
        match parse_graph(bad) {
            Ok(_) => println!("unexpectedly parsed {bad:?}"),
            Err(e) => println!("{e}"),
        }
    }
    Ok(())
}
