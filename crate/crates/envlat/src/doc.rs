//! Input/output documents: the JSON lattice format, the raw Pervin-space
//! format, and DOT rendering of order diagrams and polarities.

use crate::duality::Polarity;
use crate::error::{Error, Result};
use crate::finlat::{FinLattice, Poset};
use crate::pervin::{pervin, PervinSpace};
use serde::{Deserialize, Serialize};

/// A lattice described by named elements and cover pairs:
/// `{"name": "...", "elements": [...], "covers": [["0","a"], ...]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LatticeDocument {
    pub name: String,
    pub elements: Vec<String>,
    pub covers: Vec<(String, String)>,
}

impl LatticeDocument {
    pub fn parse(text: &str) -> Result<LatticeDocument> {
        serde_json::from_str(text)
            .map_err(|e| Error::ParseError(format!("lattice document: {e}")))
    }

    /// Validates labels and builds the lattice (cover closure + lattice
    /// axioms), reporting offenders by name.
    pub fn to_lattice(&self) -> Result<FinLattice> {
        let n = self.elements.len();
        let mut seen = std::collections::BTreeSet::new();
        for label in &self.elements {
            if !seen.insert(label) {
                return Err(Error::ParseError(format!("duplicate element label {label:?}")));
            }
        }
        let index = |label: &str| -> Result<usize> {
            self.elements.iter().position(|e| e == label).ok_or_else(|| {
                Error::ParseError(format!("cover references undeclared element {label:?}"))
            })
        };
        let covers = self
            .covers
            .iter()
            .map(|(a, b)| Ok((index(a)?, index(b)?)))
            .collect::<Result<Vec<_>>>()?;
        FinLattice::build_lattice(n, &covers, Some(self.elements.clone()))
    }

    pub fn from_lattice(name: &str, l: &FinLattice) -> LatticeDocument {
        let covers = l
            .poset()
            .cover_pairs()
            .into_iter()
            .map(|(a, b)| (l.name(a).to_string(), l.name(b).to_string()))
            .collect();
        LatticeDocument {
            name: name.to_string(),
            elements: l.names().to_vec(),
            covers,
        }
    }

    pub fn emit(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }
}

/// A raw Pervin space: `{"points": 3, "family": [[0,1],[2]]}`. Points are
/// indices 0..points; each family entry lists the members of one generator.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RawPervinDocument {
    pub points: usize,
    pub family: Vec<Vec<usize>>,
}

impl RawPervinDocument {
    pub fn parse(text: &str) -> Result<RawPervinDocument> {
        serde_json::from_str(text)
            .map_err(|e| Error::ParseError(format!("pervin document: {e}")))
    }

    pub fn to_space(&self) -> Result<PervinSpace> {
        let k = self
            .family
            .iter()
            .map(|gen| {
                gen.iter().try_fold(0u64, |m, &p| {
                    if p >= self.points {
                        Err(Error::ParseError(format!(
                            "family member {p} out of range for {} points",
                            self.points
                        )))
                    } else {
                        Ok(m | 1 << p)
                    }
                })
            })
            .collect::<Result<Vec<u64>>>()?;
        pervin(self.points, k, None)
    }
}

/// Distinguishes the two document kinds by their required fields.
pub enum InputDocument {
    Lattice(LatticeDocument),
    Pervin(RawPervinDocument),
}

pub fn parse_input(text: &str) -> Result<InputDocument> {
    let value: serde_json::Value = serde_json::from_str(text)
        .map_err(|e| Error::ParseError(format!("input document: {e}")))?;
    if value.get("points").is_some() {
        Ok(InputDocument::Pervin(RawPervinDocument::parse(text)?))
    } else {
        Ok(InputDocument::Lattice(LatticeDocument::parse(text)?))
    }
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Order diagram as a DOT digraph: one edge per cover, drawn upward.
pub fn lattice_dot(name: &str, l: &FinLattice) -> String {
    let mut out = String::new();
    out.push_str(&format!("digraph {} {{\n", quote(name)));
    out.push_str("  rankdir=BT;\n  node [shape=plaintext];\n");
    for i in 0..l.n() {
        out.push_str(&format!("  n{} [label={}];\n", i, quote(l.name(i))));
    }
    for (a, b) in l.cover_pairs() {
        out.push_str(&format!("  n{a} -> n{b};\n"));
    }
    out.push_str("}\n");
    out
}

/// A bare poset as a DOT digraph, one edge per cover.
pub fn poset_dot(name: &str, p: &Poset) -> String {
    let mut out = String::new();
    out.push_str(&format!("digraph {} {{\n", quote(name)));
    out.push_str("  rankdir=BT;\n  node [shape=plaintext];\n");
    for i in 0..p.n() {
        out.push_str(&format!("  n{} [label={}];\n", i, quote(p.name(i))));
    }
    for (a, b) in p.cover_pairs() {
        out.push_str(&format!("  n{a} -> n{b};\n"));
    }
    out.push_str("}\n");
    out
}

/// A polarity as a DOT digraph: one subgraph per side (cover edges of the
/// induced quasi-orders), with the relation drawn across.
pub fn polarity_dot(name: &str, pol: &Polarity) -> String {
    let mut out = String::new();
    out.push_str(&format!("digraph {} {{\n", quote(name)));
    out.push_str("  rankdir=BT;\n  node [shape=plaintext];\n");
    let side = |out: &mut String, label: &str, prefix: &str, names: &[String], le: &dyn Fn(usize, usize) -> bool| {
        out.push_str(&format!("  subgraph cluster_{prefix} {{\n    label={};\n", quote(label)));
        for (i, n) in names.iter().enumerate() {
            out.push_str(&format!("    {prefix}{} [label={}];\n", i, quote(n)));
        }
        for a in 0..names.len() {
            for b in 0..names.len() {
                let covers = a != b
                    && le(a, b)
                    && !(0..names.len()).any(|c| c != a && c != b && le(a, c) && le(c, b));
                if covers {
                    out.push_str(&format!("    {prefix}{a} -> {prefix}{b};\n"));
                }
            }
        }
        out.push_str("  }\n");
    };
    side(&mut out, "X", "x", pol.x_names(), &|a, b| pol.x_le(a, b));
    side(&mut out, "Y", "y", pol.y_names(), &|a, b| pol.y_le(a, b));
    for x in 0..pol.x_size() {
        for y in 0..pol.y_size() {
            if pol.r(x, y) {
                out.push_str(&format!("  x{x} -> y{y} [style=dashed, constraint=false];\n"));
            }
        }
    }
    out.push_str("}\n");
    out
}
