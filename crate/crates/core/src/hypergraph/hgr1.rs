//! The `HGR1` class-list format:
//!
//! ```text
//! HGR1 <k> <n> <count> <filter-tag>
//! <canonical edge mask, lowercase hex>
//! ...
//! ```
//!
//! Masks use the colex slot order (bit 0 least significant) and appear in
//! strictly ascending order.

use std::io::{BufRead, Write};

use super::{Catalog, ClassFilter, Hypergraph};
use crate::error::{Error, Result};

pub const MAGIC: &str = "HGR1";

pub fn write<W: Write>(out: &mut W, catalog: &Catalog) -> std::io::Result<()> {
    writeln!(
        out,
        "{MAGIC} {} {} {} {}",
        catalog.k(),
        catalog.n(),
        catalog.len(),
        catalog.filter().tag()
    )?;
    for g in catalog.graphs() {
        writeln!(out, "{:x}", g.mask())?;
    }
    Ok(())
}

pub fn to_string(catalog: &Catalog) -> String {
    let mut buf = Vec::new();
    write(&mut buf, catalog).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("ascii output")
}

pub fn read<R: BufRead>(input: R) -> Result<Catalog> {
    let mut lines = input.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::Format("empty file".into()))?
        .map_err(|e| Error::Format(e.to_string()))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 5 || fields[0] != MAGIC {
        return Err(Error::Format(format!("bad header {header:?}")));
    }
    let parse = |s: &str, what: &str| {
        s.parse::<usize>()
            .map_err(|_| Error::Format(format!("bad {what} {s:?} in header")))
    };
    let k = parse(fields[1], "k")?;
    let n = parse(fields[2], "n")?;
    let count = parse(fields[3], "count")?;
    let filter: ClassFilter = fields[4]
        .parse()
        .map_err(|_| Error::Format(format!("bad filter tag {:?}", fields[4])))?;

    let mut graphs = Vec::with_capacity(count);
    for line in lines {
        let line = line.map_err(|e| Error::Format(e.to_string()))?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if line.bytes().any(|b| b.is_ascii_uppercase()) {
            return Err(Error::Format(format!("mask {line:?} is not lowercase hex")));
        }
        let mask = u128::from_str_radix(line, 16)
            .map_err(|_| Error::Format(format!("bad hex mask {line:?}")))?;
        let g = Hypergraph::from_mask(n, k, mask).map_err(|e| Error::Format(e.to_string()))?;
        graphs.push(g);
    }
    if graphs.len() != count {
        return Err(Error::Format(format!(
            "header promises {count} classes, found {}",
            graphs.len()
        )));
    }
    Catalog::from_graphs(n, k, filter, graphs)
}
