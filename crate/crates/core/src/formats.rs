//! Text formats for lattices, functional tables, capacities and maps.
//!
//! All formats are UTF-8 and line based. Blank lines and lines starting with
//! `#` are ignored; line numbers in errors count every physical line.
//!
//! Lattice:
//!
//! ```text
//! lattice n5
//! elements: 0 x y z 1
//! covers: 0<x x<z z<1
//! covers: 0<y y<1
//! ```
//!
//! Functional table, one line per input tuple (any order, each exactly once):
//!
//! ```text
//! functional k=2 lattice=chain3
//! 0 0 -> 0
//! a 0 -> 0
//! ...
//! ```
//!
//! Capacity, one line per subset of `{1..k}` (`{}` for the empty set):
//!
//! ```text
//! capacity k=2 lattice=chain3
//! {} -> 0
//! {1} -> a
//! {2} -> 0
//! {1,2} -> 1
//! ```
//!
//! Map: `map: 0->0 a->b b->b 1->1`, every element exactly once.

use std::collections::HashMap;
use std::path::Path;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::functionals::{Capacity, FunctionalTable};
use crate::lattice::{Element, Lattice};
use crate::maps::EndoMap;
use crate::subset::IndexSet;
use crate::suite::catalog_lattice;

fn format_err(path: &str, line: usize, message: impl Into<String>) -> Error {
    Error::Format { path: path.to_string(), line, message: message.into() }
}

/// Non-comment, non-blank lines with their one-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

pub fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

/// A catalog name such as `n5`, otherwise a lattice file path.
pub fn resolve_lattice(source: &str) -> Result<Lattice> {
    if let Some(l) = catalog_lattice(source) {
        return Ok(l);
    }
    let path = Path::new(source);
    parse_lattice(&read_file(path)?, source)
}

pub fn parse_lattice(text: &str, path: &str) -> Result<Lattice> {
    let mut lines = content_lines(text);
    let (ln, header) = lines.next().ok_or_else(|| format_err(path, 1, "empty lattice file"))?;
    let name = header
        .strip_prefix("lattice ")
        .map(str::trim)
        .filter(|n| !n.is_empty())
        .ok_or_else(|| format_err(path, ln, "expected `lattice <name>`"))?;
    let (ln, elements) = lines.next().ok_or_else(|| format_err(path, ln + 1, "missing `elements:` line"))?;
    let names: Vec<&str> = elements
        .strip_prefix("elements:")
        .ok_or_else(|| format_err(path, ln, "expected `elements: e1 e2 ...`"))?
        .split_whitespace()
        .collect();
    let mut covers = Vec::new();
    for (ln, line) in lines {
        let body = line
            .strip_prefix("covers:")
            .ok_or_else(|| format_err(path, ln, "expected `covers: a<b ...`"))?;
        for pair in body.split_whitespace() {
            let (lo, hi) = pair
                .split_once('<')
                .filter(|(a, b)| !a.is_empty() && !b.is_empty())
                .ok_or_else(|| format_err(path, ln, format!("`{pair}` is not of the form a<b")))?;
            covers.push((lo, hi));
        }
    }
    Lattice::from_covers(name, &names, &covers)
}

/// Reads `key=value` fields of a `functional`/`capacity` header and checks
/// that the lattice matches.
fn parse_header(path: &str, ln: usize, line: &str, kind: &str, l: &Lattice) -> Result<usize> {
    let rest = line
        .strip_prefix(kind)
        .ok_or_else(|| format_err(path, ln, format!("expected `{kind} k=<arity> lattice=<name>`")))?;
    let fields: HashMap<&str, &str> = rest.split_whitespace().filter_map(|f| f.split_once('=')).collect();
    let k = fields
        .get("k")
        .and_then(|k| k.parse::<usize>().ok())
        .ok_or_else(|| format_err(path, ln, "missing or invalid `k=<arity>`"))?;
    match fields.get("lattice") {
        Some(&name) if name == l.name() => Ok(k),
        Some(name) => Err(format_err(
            path,
            ln,
            format!("file is for lattice `{name}`, but `{}` was given", l.name()),
        )),
        None => Err(format_err(path, ln, "missing `lattice=<name>`")),
    }
}

fn element(path: &str, ln: usize, l: &Lattice, name: &str) -> Result<Element> {
    l.element(name).ok_or_else(|| format_err(path, ln, format!("unknown element `{name}`")))
}

pub fn parse_table(text: &str, path: &str, lattice: Arc<Lattice>) -> Result<FunctionalTable> {
    let mut lines = content_lines(text);
    let (ln, header) = lines.next().ok_or_else(|| format_err(path, 1, "empty table file"))?;
    let k = parse_header(path, ln, header, "functional", &lattice)?;
    // Validates arity and size before any allocation.
    let shape = FunctionalTable::constant(lattice.clone(), k, lattice.bottom())?;
    let mut values: Vec<Option<Element>> = vec![None; shape.input_count()];
    for (ln, line) in lines {
        let (lhs, rhs) = line
            .split_once("->")
            .ok_or_else(|| format_err(path, ln, "expected `v1 ... vk -> w`"))?;
        let input = lhs
            .split_whitespace()
            .map(|n| element(path, ln, &lattice, n))
            .collect::<Result<Vec<_>>>()?;
        if input.len() != k {
            return Err(format_err(path, ln, format!("expected {k} input values, found {}", input.len())));
        }
        let value = element(path, ln, &lattice, rhs.trim())?;
        let slot = &mut values[shape.encode(&input)];
        if slot.is_some() {
            return Err(format_err(path, ln, format!("duplicate input {}", lhs.trim())));
        }
        *slot = Some(value);
    }
    if let Some(missing) = values.iter().position(Option::is_none) {
        let names: Vec<&str> = shape.decode(missing).iter().map(|&e| lattice.element_name(e)).collect();
        return Err(format_err(path, text.lines().count(), format!("missing input {}", names.join(" "))));
    }
    FunctionalTable::new(lattice, k, values.into_iter().map(Option::unwrap).collect())
}

pub fn parse_capacity(text: &str, path: &str, lattice: Arc<Lattice>) -> Result<Capacity> {
    let mut lines = content_lines(text);
    let (ln, header) = lines.next().ok_or_else(|| format_err(path, 1, "empty capacity file"))?;
    let k = parse_header(path, ln, header, "capacity", &lattice)?;
    if k == 0 || k > crate::subset::MAX_ARITY {
        return Err(format_err(path, ln, format!("arity {k} out of range")));
    }
    let mut values: Vec<Option<Element>> = vec![None; 1 << k];
    for (ln, line) in lines {
        let (lhs, rhs) = line
            .split_once("->")
            .ok_or_else(|| format_err(path, ln, "expected `{i,j,...} -> w`"))?;
        let set: IndexSet = lhs.trim().parse().map_err(|e: Error| format_err(path, ln, e.to_string()))?;
        if set.max_index() > k {
            return Err(format_err(path, ln, format!("{set} is not a subset of {{1..{k}}}")));
        }
        let value = element(path, ln, &lattice, rhs.trim())?;
        let slot = &mut values[set.bits() as usize];
        if slot.is_some() {
            return Err(format_err(path, ln, format!("duplicate subset {set}")));
        }
        *slot = Some(value);
    }
    if let Some(missing) = values.iter().position(Option::is_none) {
        return Err(format_err(path, text.lines().count(), format!("missing subset {}", IndexSet::from_bits(missing as u32))));
    }
    Capacity::new(lattice, k, values.into_iter().map(Option::unwrap).collect())
}

/// Parses `map: e1->v1 e2->v2 ...`; the `map:` prefix is optional.
pub fn parse_map(text: &str, lattice: Arc<Lattice>) -> Result<EndoMap> {
    let body = text.trim();
    let body = body.strip_prefix("map:").unwrap_or(body);
    let mut image: Vec<Option<Element>> = vec![None; lattice.len()];
    for pair in body.split_whitespace() {
        let (from, to) = pair.split_once("->").ok_or_else(|| Error::SyntaxError {
            position: 0,
            message: format!("`{pair}` is not of the form e->v"),
        })?;
        let from = lattice.element_or_err(from)?;
        let to = lattice.element_or_err(to)?;
        if image[from.index()].replace(to).is_some() {
            return Err(Error::DuplicateName(lattice.element_name(from).to_string()));
        }
    }
    let image = image
        .iter()
        .enumerate()
        .map(|(i, e)| e.ok_or_else(|| Error::UnknownElement(format!("no image for {}", lattice.element_name(Element::new(i))))))
        .collect::<Result<Vec<_>>>()?;
    EndoMap::new(lattice, image)
}
