//! Map text format and its JSON mirror.
//!
//! ```text
//! # comment
//! map K1 vertices=12
//! f 0 2 3 4
//! f 1 7 v u
//! ```
//!
//! Labels are decimal integers; when the map has at most 12 vertices the
//! letters `u` and `v` stand for 10 and 11. The JSON mirror is an object
//! `{"name": ..., "vertices": [0, 1, ...], "faces": [[...], ...]}`.

use std::collections::HashSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::map::{Face, PolyhedralMap, Vertex};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapDocument {
    pub name: String,
    pub map: PolyhedralMap,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct ParseOptions {
    /// Drop repeated faces instead of failing.
    pub dedupe: bool,
}

pub fn parse_map(text: &str) -> Result<MapDocument> {
    parse_map_with(text, ParseOptions::default())
}

/// Parses the text format, or the JSON mirror when the input starts with `{`.
pub fn parse_map_with(text: &str, options: ParseOptions) -> Result<MapDocument> {
    if text.trim_start().starts_with('{') {
        parse_json(text, options)
    } else {
        parse_text(text, options)
    }
}

fn parse_label(token: &str, n: usize, line: usize) -> Result<Vertex> {
    let v = match token {
        "u" if n <= 12 => 10,
        "v" if n <= 12 => 11,
        _ => token.parse().map_err(|_| Error::Parse {
            line,
            message: format!("bad vertex label {token:?}"),
        })?,
    };
    if v >= n {
        return Err(Error::Parse {
            line,
            message: format!("vertex {v} is not declared (vertices={n})"),
        });
    }
    Ok(v)
}

fn parse_text(text: &str, options: ParseOptions) -> Result<MapDocument> {
    let mut header: Option<(String, usize)> = None;
    let mut faces: Vec<Vec<Vertex>> = Vec::new();
    let mut seen: HashSet<Face> = HashSet::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap().trim();
        if content.is_empty() {
            continue;
        }
        let mut tokens = content.split_whitespace();
        let keyword = tokens.next().unwrap();
        match (keyword, &header) {
            ("map", None) => {
                let name = tokens.next().ok_or_else(|| Error::Parse {
                    line,
                    message: "header needs a name".into(),
                })?;
                let count = tokens
                    .next()
                    .and_then(|t| t.strip_prefix("vertices="))
                    .and_then(|t| t.parse::<usize>().ok())
                    .ok_or_else(|| Error::Parse {
                        line,
                        message: "header needs vertices=<n>".into(),
                    })?;
                if tokens.next().is_some() {
                    return Err(Error::Parse {
                        line,
                        message: "trailing tokens after header".into(),
                    });
                }
                header = Some((name.to_string(), count));
            }
            ("map", Some(_)) => {
                return Err(Error::Parse {
                    line,
                    message: "second header".into(),
                })
            }
            ("f", Some((_, n))) => {
                let face = tokens
                    .map(|t| parse_label(t, *n, line))
                    .collect::<Result<Vec<_>>>()?;
                let norm = Face::new(face.clone());
                if !seen.insert(norm.clone()) {
                    if options.dedupe {
                        continue;
                    }
                    return Err(Error::DuplicateFace { line, face: norm });
                }
                faces.push(face);
            }
            ("f", None) => {
                return Err(Error::Parse {
                    line,
                    message: "face before the `map` header".into(),
                })
            }
            (other, _) => {
                return Err(Error::Parse {
                    line,
                    message: format!("unknown keyword {other:?}"),
                })
            }
        }
    }
    let (name, n) = header.ok_or(Error::Parse {
        line: 0,
        message: "missing `map <name> vertices=<n>` header".into(),
    })?;
    Ok(MapDocument {
        name,
        map: PolyhedralMap::new(n, faces)?,
    })
}

#[derive(Deserialize)]
#[serde(untagged)]
enum JsonVertices {
    Count(usize),
    Labels(Vec<usize>),
}

#[derive(Deserialize)]
struct JsonMap {
    name: String,
    vertices: JsonVertices,
    faces: Vec<Vec<usize>>,
}

fn parse_json(text: &str, options: ParseOptions) -> Result<MapDocument> {
    let raw: JsonMap = serde_json::from_str(text)?;
    let n = match raw.vertices {
        JsonVertices::Count(n) => n,
        JsonVertices::Labels(labels) => {
            if labels.iter().enumerate().any(|(i, &v)| i != v) {
                return Err(Error::Parse {
                    line: 0,
                    message: "JSON vertices must be 0..n-1 in order".into(),
                });
            }
            labels.len()
        }
    };
    let mut seen = HashSet::new();
    let mut faces = Vec::new();
    for (i, face) in raw.faces.into_iter().enumerate() {
        if let Some(&v) = face.iter().find(|&&v| v >= n) {
            return Err(Error::Parse {
                line: 0,
                message: format!("face {i}: vertex {v} is not declared (vertices={n})"),
            });
        }
        let norm = Face::new(face.clone());
        if !seen.insert(norm.clone()) {
            if options.dedupe {
                continue;
            }
            return Err(Error::DuplicateFace {
                line: 0,
                face: norm,
            });
        }
        faces.push(face);
    }
    Ok(MapDocument {
        name: raw.name,
        map: PolyhedralMap::new(n, faces)?,
    })
}

/// The normalized text form: faces in normal form, sorted, integer labels.
pub fn serialize_text(doc: &MapDocument) -> String {
    let mut out = format!("map {} vertices={}\n", doc.name, doc.map.vertex_count());
    for face in doc.map.faces() {
        out.push('f');
        for v in face.vertices() {
            let _ = write!(out, " {v}");
        }
        out.push('\n');
    }
    out
}

#[derive(Serialize)]
struct JsonOut<'a> {
    name: &'a str,
    vertices: Vec<usize>,
    faces: Vec<&'a [Vertex]>,
}

pub fn serialize_json(doc: &MapDocument) -> String {
    let out = JsonOut {
        name: &doc.name,
        vertices: doc.map.vertices().collect(),
        faces: doc.map.faces().iter().map(|f| f.vertices()).collect(),
    };
    serde_json::to_string_pretty(&out).expect("serializable")
}
