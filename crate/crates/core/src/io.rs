//! The document format: a versioned JSON envelope around index-based tables.
//!
//! ```json
//! { "format_version": 1, "kind": "category", "payload": { ... } }
//! ```
//!
//! Every id in a payload is an index into a table of the same payload. Unknown fields are
//! rejected. [`serialize_document`] is canonical: keys are sorted, composition tables are sorted,
//! and scalar arrays are written on one line.

use std::fmt::Write as _;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::cat::{FiniteCategory, Morphism};
use crate::doublecat::{Boundary, DoubleCategoryParts, FiniteDoubleCategory, HorCell};
use crate::error::CoreError;
use crate::ids::{ElemId, HorId, MorId, ObjId, OneCellId, SqId, TwoCellId};
use crate::indexing::{Direction, Pi2Indexing};
use crate::instances::spec::InstanceSpec;
use crate::twocat::{DecoratedTwoCategory, FiniteTwoCategory, OneCell, TwoCategoryParts, TwoCell};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("schema error at {path}: {message}")]
    Schema { path: String, message: String },
    #[error("range error at {path}: {message}")]
    Range { path: String, message: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DocumentKind {
    Category,
    TwoCategory,
    Decorated,
    DoubleCategory,
    Indexing,
    InstanceSpec,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Envelope {
    format_version: u32,
    kind: DocumentKind,
    payload: Value,
}

/// A parsed document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Document {
    Category(FiniteCategory),
    TwoCategory(FiniteTwoCategory),
    Decorated(DecoratedTwoCategory),
    DoubleCategory(FiniteDoubleCategory),
    Indexing(Pi2Indexing),
    InstanceSpec(InstanceSpec),
}

impl Document {
    pub fn kind(&self) -> DocumentKind {
        match self {
            Document::Category(_) => DocumentKind::Category,
            Document::TwoCategory(_) => DocumentKind::TwoCategory,
            Document::Decorated(_) => DocumentKind::Decorated,
            Document::DoubleCategory(_) => DocumentKind::DoubleCategory,
            Document::Indexing(_) => DocumentKind::Indexing,
            Document::InstanceSpec(_) => DocumentKind::InstanceSpec,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CategoryDoc {
    objects: usize,
    /// `[source, target]`
    morphisms: Vec<[u32; 2]>,
    identities: Vec<u32>,
    /// `[second, first, composite]`
    composition: Vec<[u32; 3]>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TwoCategoryDoc {
    objects: usize,
    one_cells: Vec<[u32; 2]>,
    one_identities: Vec<u32>,
    /// `[left, right, composite]`
    one_composition: Vec<[u32; 3]>,
    two_cells: Vec<[u32; 2]>,
    two_identities: Vec<u32>,
    /// `[top, bottom, composite]`
    vertical: Vec<[u32; 3]>,
    /// `[left, right, composite]`
    horizontal: Vec<[u32; 3]>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DecoratedDoc {
    bstar: CategoryDoc,
    b: TwoCategoryDoc,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DoubleCategoryDoc {
    vertical: CategoryDoc,
    horizontal_cells: Vec<[u32; 2]>,
    horizontal_units: Vec<u32>,
    horizontal_composition: Vec<[u32; 3]>,
    /// `[left, right, top, bottom]`
    squares: Vec<[u32; 4]>,
    vcomp: Vec<[u32; 3]>,
    hcomp: Vec<[u32; 3]>,
    unit_squares: Vec<u32>,
    vertical_identities: Vec<u32>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct IndexingDoc {
    direction: Direction,
    base: DecoratedDoc,
    /// For each morphism of B*, the image of each element of π₂ at its domain.
    maps: Vec<Vec<u32>>,
}

struct Ranges<'a> {
    path: &'a str,
}

impl Ranges<'_> {
    fn check(&self, field: &str, ids: impl IntoIterator<Item = (usize, Vec<u32>)>, bound: usize) -> Result<(), FormatError> {
        for (i, row) in ids {
            for (j, &x) in row.iter().enumerate() {
                if x as usize >= bound {
                    return Err(FormatError::Range {
                        path: format!("{}.{field}[{i}]{}", self.path, if row.len() > 1 { format!("[{j}]") } else { String::new() }),
                        message: format!("id {x} out of range (< {bound})"),
                    });
                }
            }
        }
        Ok(())
    }

    fn rows<const N: usize>(v: &[[u32; N]]) -> impl Iterator<Item = (usize, Vec<u32>)> + '_ {
        v.iter().enumerate().map(|(i, r)| (i, r.to_vec()))
    }

    fn scalars(v: &[u32]) -> impl Iterator<Item = (usize, Vec<u32>)> + '_ {
        v.iter().enumerate().map(|(i, &x)| (i, vec![x]))
    }

    fn sub(&self, field: &str) -> String {
        format!("{}.{field}", self.path)
    }

    fn built<T>(&self, r: Result<T, CoreError>) -> Result<T, FormatError> {
        r.map_err(|e| match e {
            CoreError::Range(message) => FormatError::Range {
                path: self.path.to_string(),
                message,
            },
            other => FormatError::Schema {
                path: self.path.to_string(),
                message: other.to_string(),
            },
        })
    }
}

fn category_from_doc(d: &CategoryDoc, path: &str) -> Result<FiniteCategory, FormatError> {
    let r = Ranges { path };
    let m = d.morphisms.len();
    r.check("morphisms", Ranges::rows(&d.morphisms), d.objects)?;
    r.check("identities", Ranges::scalars(&d.identities), m)?;
    r.check("composition", Ranges::rows(&d.composition), m)?;
    r.built(FiniteCategory::new(
        d.objects,
        d.morphisms
            .iter()
            .map(|&[s, t]| Morphism {
                source: ObjId(s),
                target: ObjId(t),
            })
            .collect(),
        d.identities.iter().map(|&i| MorId(i)).collect(),
        d.composition.iter().map(|&[s, f, x]| (MorId(s), MorId(f), MorId(x))),
    ))
}

fn category_to_doc(c: &FiniteCategory) -> CategoryDoc {
    let mut composition: Vec<[u32; 3]> = c.composition_entries().map(|(s, f, x)| [s.0, f.0, x.0]).collect();
    composition.sort_unstable();
    CategoryDoc {
        objects: c.object_count(),
        morphisms: c.morphisms().iter().map(|m| [m.source.0, m.target.0]).collect(),
        identities: c.identities().iter().map(|i| i.0).collect(),
        composition,
    }
}

fn two_category_from_doc(d: &TwoCategoryDoc, path: &str) -> Result<FiniteTwoCategory, FormatError> {
    let r = Ranges { path };
    let (n1, n2) = (d.one_cells.len(), d.two_cells.len());
    r.check("one_cells", Ranges::rows(&d.one_cells), d.objects)?;
    r.check("one_identities", Ranges::scalars(&d.one_identities), n1)?;
    r.check("one_composition", Ranges::rows(&d.one_composition), n1)?;
    r.check("two_cells", Ranges::rows(&d.two_cells), n1)?;
    r.check("two_identities", Ranges::scalars(&d.two_identities), n2)?;
    r.check("vertical", Ranges::rows(&d.vertical), n2)?;
    r.check("horizontal", Ranges::rows(&d.horizontal), n2)?;
    let triple = |v: &[[u32; 3]]| v.iter().map(|&[a, b, c]| (a, b, c)).collect::<Vec<_>>();
    r.built(FiniteTwoCategory::new(TwoCategoryParts {
        object_count: d.objects,
        one_cells: d
            .one_cells
            .iter()
            .map(|&[s, t]| OneCell {
                source: ObjId(s),
                target: ObjId(t),
            })
            .collect(),
        one_identities: d.one_identities.iter().map(|&i| OneCellId(i)).collect(),
        one_composition: triple(&d.one_composition)
            .into_iter()
            .map(|(a, b, c)| (OneCellId(a), OneCellId(b), OneCellId(c)))
            .collect(),
        two_cells: d
            .two_cells
            .iter()
            .map(|&[s, t]| TwoCell {
                source: OneCellId(s),
                target: OneCellId(t),
            })
            .collect(),
        two_identities: d.two_identities.iter().map(|&i| TwoCellId(i)).collect(),
        vertical: triple(&d.vertical)
            .into_iter()
            .map(|(a, b, c)| (TwoCellId(a), TwoCellId(b), TwoCellId(c)))
            .collect(),
        horizontal: triple(&d.horizontal)
            .into_iter()
            .map(|(a, b, c)| (TwoCellId(a), TwoCellId(b), TwoCellId(c)))
            .collect(),
    }))
}

fn two_category_to_doc(b: &FiniteTwoCategory) -> TwoCategoryDoc {
    let p = b.parts();
    TwoCategoryDoc {
        objects: p.object_count,
        one_cells: p.one_cells.iter().map(|c| [c.source.0, c.target.0]).collect(),
        one_identities: p.one_identities.iter().map(|i| i.0).collect(),
        one_composition: p.one_composition.iter().map(|(a, b, c)| [a.0, b.0, c.0]).collect(),
        two_cells: p.two_cells.iter().map(|t| [t.source.0, t.target.0]).collect(),
        two_identities: p.two_identities.iter().map(|i| i.0).collect(),
        vertical: p.vertical.iter().map(|(a, b, c)| [a.0, b.0, c.0]).collect(),
        horizontal: p.horizontal.iter().map(|(a, b, c)| [a.0, b.0, c.0]).collect(),
    }
}

fn decorated_from_doc(d: &DecoratedDoc, path: &str) -> Result<DecoratedTwoCategory, FormatError> {
    let r = Ranges { path };
    let bstar = category_from_doc(&d.bstar, &r.sub("bstar"))?;
    let b = two_category_from_doc(&d.b, &r.sub("b"))?;
    if bstar.object_count() != b.object_count() {
        return Err(FormatError::Schema {
            path: path.to_string(),
            message: format!("bstar has {} objects but b has {}", bstar.object_count(), b.object_count()),
        });
    }
    Ok(DecoratedTwoCategory { bstar, b })
}

fn decorated_to_doc(d: &DecoratedTwoCategory) -> DecoratedDoc {
    DecoratedDoc {
        bstar: category_to_doc(&d.bstar),
        b: two_category_to_doc(&d.b),
    }
}

fn double_from_doc(d: &DoubleCategoryDoc, path: &str) -> Result<FiniteDoubleCategory, FormatError> {
    let r = Ranges { path };
    let vertical = category_from_doc(&d.vertical, &r.sub("vertical"))?;
    let (nh, ns, nv) = (d.horizontal_cells.len(), d.squares.len(), vertical.morphism_count());
    r.check("horizontal_cells", Ranges::rows(&d.horizontal_cells), vertical.object_count())?;
    r.check("horizontal_units", Ranges::scalars(&d.horizontal_units), nh)?;
    r.check("horizontal_composition", Ranges::rows(&d.horizontal_composition), nh)?;
    for (i, &[l, rr, t, b]) in d.squares.iter().enumerate() {
        r.check("squares", [(i, vec![l, rr])], nv)?;
        if t as usize >= nh || b as usize >= nh {
            return Err(FormatError::Range {
                path: format!("{path}.squares[{i}]"),
                message: format!("horizontal 1-cell out of range (< {nh})"),
            });
        }
    }
    r.check("vcomp", Ranges::rows(&d.vcomp), ns)?;
    r.check("hcomp", Ranges::rows(&d.hcomp), ns)?;
    r.check("unit_squares", Ranges::scalars(&d.unit_squares), ns)?;
    r.check("vertical_identities", Ranges::scalars(&d.vertical_identities), ns)?;
    let sq = |v: &[[u32; 3]]| v.iter().map(|&[a, b, c]| (SqId(a), SqId(b), SqId(c))).collect();
    r.built(FiniteDoubleCategory::new(DoubleCategoryParts {
        vertical,
        horizontal_cells: d
            .horizontal_cells
            .iter()
            .map(|&[s, t]| HorCell {
                source: ObjId(s),
                target: ObjId(t),
            })
            .collect(),
        horizontal_units: d.horizontal_units.iter().map(|&h| HorId(h)).collect(),
        horizontal_composition: d
            .horizontal_composition
            .iter()
            .map(|&[a, b, c]| (HorId(a), HorId(b), HorId(c)))
            .collect(),
        squares: d
            .squares
            .iter()
            .map(|&[l, r, t, b]| Boundary {
                left: MorId(l),
                right: MorId(r),
                top: HorId(t),
                bottom: HorId(b),
            })
            .collect(),
        vcomp: sq(&d.vcomp),
        hcomp: sq(&d.hcomp),
        unit_squares: d.unit_squares.iter().map(|&s| SqId(s)).collect(),
        vertical_identities: d.vertical_identities.iter().map(|&s| SqId(s)).collect(),
    }))
}

fn double_to_doc(c: &FiniteDoubleCategory) -> DoubleCategoryDoc {
    let p = c.parts();
    let tri = |v: &[(SqId, SqId, SqId)]| v.iter().map(|(a, b, x)| [a.0, b.0, x.0]).collect();
    DoubleCategoryDoc {
        vertical: category_to_doc(&p.vertical),
        horizontal_cells: p.horizontal_cells.iter().map(|h| [h.source.0, h.target.0]).collect(),
        horizontal_units: p.horizontal_units.iter().map(|h| h.0).collect(),
        horizontal_composition: p.horizontal_composition.iter().map(|(a, b, x)| [a.0, b.0, x.0]).collect(),
        squares: p.squares.iter().map(|b| [b.left.0, b.right.0, b.top.0, b.bottom.0]).collect(),
        vcomp: tri(&p.vcomp),
        hcomp: tri(&p.hcomp),
        unit_squares: p.unit_squares.iter().map(|s| s.0).collect(),
        vertical_identities: p.vertical_identities.iter().map(|s| s.0).collect(),
    }
}

fn indexing_from_doc(d: &IndexingDoc, path: &str) -> Result<Pi2Indexing, FormatError> {
    let r = Ranges { path };
    let base = decorated_from_doc(&d.base, &r.sub("base"))?;
    let nm = base.bstar.morphism_count();
    if d.maps.len() != nm {
        return Err(FormatError::Schema {
            path: r.sub("maps"),
            message: format!("{} maps for {nm} morphisms", d.maps.len()),
        });
    }
    let mut phi = r.built(Pi2Indexing::new(d.direction, base, Vec::new()))?;
    for (f, row) in d.maps.iter().enumerate() {
        let f = MorId::from(f);
        let (dom, cod) = (phi.domain_object(f), phi.codomain_object(f));
        let (nd, nc) = (phi.monoids[dom.index()].size(), phi.monoids[cod.index()].size());
        if row.len() != nd {
            return Err(FormatError::Schema {
                path: format!("{path}.maps[{}]", f.0),
                message: format!("{} entries, π₂ at the domain has {nd} elements", row.len()),
            });
        }
        r.check(&format!("maps[{}]", f.0), Ranges::scalars(row), nc)?;
    }
    phi.maps = d.maps.iter().map(|row| row.iter().map(|&x| ElemId(x)).collect()).collect();
    Ok(phi)
}

fn indexing_to_doc(phi: &Pi2Indexing) -> IndexingDoc {
    IndexingDoc {
        direction: phi.direction,
        base: decorated_to_doc(&phi.base),
        maps: phi.maps.iter().map(|row| row.iter().map(|x| x.0).collect()).collect(),
    }
}

fn schema_error(path: String, e: serde_json::Error) -> FormatError {
    FormatError::Schema {
        path: if path.is_empty() || path == "." { "$".into() } else { path },
        message: e.to_string(),
    }
}

fn payload<T: DeserializeOwned>(v: Value) -> Result<T, FormatError> {
    serde_path_to_error::deserialize(v).map_err(|e| {
        let path = format!("payload.{}", e.path());
        schema_error(path.trim_end_matches('.').to_string(), e.into_inner())
    })
}

/// Parses and range-checks a document. Laws are not checked here.
pub fn parse_document(text: &str) -> Result<Document, FormatError> {
    let value: Value = serde_json::from_str(text).map_err(|e| FormatError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let env: Envelope = serde_path_to_error::deserialize(value).map_err(|e| {
        let path = e.path().to_string();
        schema_error(path, e.into_inner())
    })?;
    if env.format_version != FORMAT_VERSION {
        return Err(FormatError::Schema {
            path: "format_version".into(),
            message: format!("unsupported version {}, expected {FORMAT_VERSION}", env.format_version),
        });
    }
    let p = env.payload;
    Ok(match env.kind {
        DocumentKind::Category => Document::Category(category_from_doc(&payload(p)?, "payload")?),
        DocumentKind::TwoCategory => Document::TwoCategory(two_category_from_doc(&payload(p)?, "payload")?),
        DocumentKind::Decorated => Document::Decorated(decorated_from_doc(&payload(p)?, "payload")?),
        DocumentKind::DoubleCategory => Document::DoubleCategory(double_from_doc(&payload(p)?, "payload")?),
        DocumentKind::Indexing => Document::Indexing(indexing_from_doc(&payload(p)?, "payload")?),
        DocumentKind::InstanceSpec => Document::InstanceSpec(payload(p)?),
    })
}

/// The canonical text of a document.
pub fn serialize_document(doc: &Document) -> String {
    let payload = match doc {
        Document::Category(c) => to_value(&category_to_doc(c)),
        Document::TwoCategory(b) => to_value(&two_category_to_doc(b)),
        Document::Decorated(d) => to_value(&decorated_to_doc(d)),
        Document::DoubleCategory(c) => to_value(&double_to_doc(c)),
        Document::Indexing(phi) => to_value(&indexing_to_doc(phi)),
        Document::InstanceSpec(s) => to_value(s),
    };
    let env = Envelope {
        format_version: FORMAT_VERSION,
        kind: doc.kind(),
        payload,
    };
    canonical_json(&to_value(&env))
}

/// `serde_json::to_value` for types whose serialization cannot fail.
pub fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable value")
}

/// Sorted keys, two-space indentation, arrays of scalars on one line, trailing newline.
pub fn canonical_json(v: &Value) -> String {
    let mut out = String::new();
    write_value(&mut out, v, 0);
    out.push('\n');
    out
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

fn write_value(out: &mut String, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth + 1);
    match v {
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            let mut keys: Vec<&String> = map.keys().collect();
            keys.sort();
            out.push_str("{\n");
            for (i, k) in keys.iter().enumerate() {
                let _ = write!(out, "{pad}{}: ", Value::String((*k).clone()));
                write_value(out, &map[*k], depth + 1);
                out.push_str(if i + 1 < keys.len() { ",\n" } else { "\n" });
            }
            let _ = write!(out, "{}}}", "  ".repeat(depth));
        }
        Value::Array(items) if items.iter().all(is_scalar) => {
            out.push('[');
            for (i, x) in items.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                out.push_str(&x.to_string());
            }
            out.push(']');
        }
        Value::Array(items) => {
            out.push_str("[\n");
            for (i, x) in items.iter().enumerate() {
                out.push_str(&pad);
                write_value(out, x, depth + 1);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            let _ = write!(out, "{}]", "  ".repeat(depth));
        }
        scalar => out.push_str(&scalar.to_string()),
    }
}
