use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use semmap_core::enumerate::SeedMode;
use semmap_core::transforms::{add_cylinders, CylinderSearchOptions};
use semmap_core::{
    are_isomorphic, automorphism_group, catalog, catalog_entry, cylinder_search, double_cover,
    enumerate_sems, g_t_graph_with, parse_map, semi_equivelar_type, serialize_json, serialize_text,
    stack_faces, surface_profile, validate, vertex_link, Adjacency, CylinderKind, CylinderSpec,
    EnumerateOptions, FaceRef, FaceSequence, Gluing, MapDocument, PolyhedralMap,
};

#[derive(Parser)]
#[command(
    name = "semmap",
    version,
    about = "Semi-equivelar maps on closed surfaces"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Adj {
    Cofacial,
    Edge,
}

#[derive(Clone, Copy, ValueEnum)]
enum Seed {
    Link,
    Face,
}

#[derive(Subcommand)]
enum Command {
    /// Check the polyhedral map axioms; exit 1 if any fails.
    Validate { map: String },
    /// Euler characteristic, orientability, type and vertex links.
    Profile { map: String },
    /// Decide isomorphism; exit 1 if the maps are not isomorphic.
    Iso { first: String, second: String },
    /// Automorphism group: order, generators and vertex orbits.
    Aut { map: String },
    /// Edges of G_t: pairs of vertices with exactly t common neighbours.
    Gt {
        map: String,
        /// Only this t; all t with a non-empty graph otherwise.
        #[arg(long)]
        t: Option<usize>,
        /// Neighbours share a face (cofacial) or an edge (edge).
        #[arg(long, value_enum, default_value_t = Adj::Cofacial)]
        adjacency: Adj,
    },
    /// Exhaustive search for maps of a given type and Euler characteristic.
    Enumerate {
        /// Face sequence, e.g. "3^5,4".
        #[arg(long = "type")]
        ty: String,
        #[arg(long, allow_hyphen_values = true)]
        chi: i64,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Stop after this many search nodes.
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long, value_enum, default_value_t = Seed::Link)]
        seed: Seed,
        /// Keep every solution instead of one per isomorphism class.
        #[arg(long)]
        no_dedup: bool,
        /// Print search statistics only.
        #[arg(long)]
        stats: bool,
        /// Write each map to DIR/<name>.map.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Orientation double cover of a non-orientable map.
    Cover { map: String },
    /// Stack every face with a new central vertex.
    Stack { map: String },
    /// Add one or more cylinders, within one map or between two.
    Cylinder {
        #[arg(long, value_enum)]
        kind: KindArg,
        /// Pairs of faces, e.g. --faces 0,2,3,4 --faces 5,6,9,8. With two
        /// maps the first face of each pair is in the first map and the
        /// second in the second.
        #[arg(long, required = true)]
        faces: Vec<String>,
        /// Gluing offset per pair (repeat or give once for all).
        #[arg(long, default_value = "0")]
        offset: Vec<usize>,
        /// Reflect the gluing of every pair.
        #[arg(long)]
        reflect: bool,
        #[arg(required = true, num_args = 1..=2)]
        maps: Vec<String>,
    },
    /// Search cylinder placements over base maps for a target type.
    CylinderSearch {
        #[arg(long = "type")]
        ty: String,
        #[arg(long, allow_hyphen_values = true)]
        chi: i64,
        /// Comma-separated base maps (catalog names or files).
        #[arg(long, default_value = "K1,K2,K3")]
        bases: String,
        /// Stop after this many isomorphism classes.
        #[arg(long)]
        limit: Option<usize>,
        #[arg(long, default_value_t = 2)]
        max_bases: usize,
        /// Count classes without keeping the maps.
        #[arg(long)]
        count_only: bool,
        /// Write each map to DIR/<name>.map.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List the built-in maps, or print one.
    Catalog { name: Option<String> },
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Quad,
    Tri,
}

impl From<KindArg> for CylinderKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Quad => CylinderKind::Quad,
            KindArg::Tri => CylinderKind::Tri,
        }
    }
}

/// Result of a command: what to print and whether it is a refutation.
struct Report {
    text: String,
    json: Value,
    ok: bool,
}

impl Report {
    fn ok(text: String, json: Value) -> Self {
        Report {
            text,
            json,
            ok: true,
        }
    }
}

fn load(arg: &str) -> anyhow::Result<MapDocument> {
    let path = Path::new(arg);
    if path.exists() {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {arg}"))?;
        return parse_map(&text).with_context(|| format!("parsing {arg}"));
    }
    match catalog_entry(arg) {
        Ok(e) => Ok(MapDocument {
            name: e.name.to_string(),
            map: e.map.clone(),
        }),
        Err(_) => bail!("{arg:?} is neither a file nor a catalog entry"),
    }
}

fn parse_type(s: &str) -> anyhow::Result<FaceSequence> {
    s.parse::<FaceSequence>().map_err(Into::into)
}

fn parse_face(s: &str) -> anyhow::Result<Vec<usize>> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<usize>()
                .with_context(|| format!("bad vertex {t:?} in face {s:?}"))
        })
        .collect()
}

fn map_json(doc: &MapDocument) -> Value {
    serde_json::from_str(&serialize_json(doc)).expect("serializer emits JSON")
}

/// Map text followed by the provenance record as a comment line.
fn map_text(doc: &MapDocument, provenance: &Value) -> String {
    format!("{}# provenance: {provenance}\n", serialize_text(doc))
}

fn write_maps(dir: &Path, docs: &[MapDocument]) -> anyhow::Result<()> {
    std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    for doc in docs {
        let path = dir.join(format!("{}.map", doc.name));
        std::fs::write(&path, serialize_text(doc))
            .with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn profile_json(map: &PolyhedralMap) -> Value {
    let p = surface_profile(map);
    json!({
        "vertices": p.vertex_count,
        "edges": p.edge_count,
        "faces": p.face_count,
        "chi": p.euler_characteristic,
        "orientable": p.orientable,
        "type": semi_equivelar_type(map).ok().map(|t| t.to_string()),
    })
}

fn run(cli: &Cli) -> anyhow::Result<Report> {
    match &cli.command {
        Command::Validate { map } => {
            let doc = load(map)?;
            let report = validate(&doc.map);
            Ok(Report {
                text: format!("{}: {report}\n", doc.name),
                json: json!({
                    "name": doc.name,
                    "valid": report.is_valid(),
                    "violations": report.violations,
                }),
                ok: report.is_valid(),
            })
        }
        Command::Profile { map } => {
            let doc = load(map)?;
            let report = validate(&doc.map);
            if !report.is_valid() {
                return Ok(Report {
                    text: format!("{}: {report}\n", doc.name),
                    json: json!({"name": doc.name, "valid": false, "violations": report.violations}),
                    ok: false,
                });
            }
            let p = surface_profile(&doc.map);
            let ty = semi_equivelar_type(&doc.map);
            let links: Vec<String> = doc
                .map
                .vertices()
                .map(|v| vertex_link(&doc.map, v).map(|l| l.to_string()))
                .collect::<Result<_, _>>()?;
            let mut text = format!("{}: {p}\n", doc.name);
            match &ty {
                Ok(t) => text.push_str(&format!("type {t}\n")),
                Err(e) => text.push_str(&format!("not semi-equivelar: {e}\n")),
            }
            for (v, l) in links.iter().enumerate() {
                text.push_str(&format!("lk({v}) = {l}\n"));
            }
            let mut json = profile_json(&doc.map);
            json["name"] = json!(doc.name);
            json["links"] = json!(links);
            Ok(Report::ok(text, json))
        }
        Command::Iso { first, second } => {
            let (a, b) = (load(first)?, load(second)?);
            let witness = are_isomorphic(&a.map, &b.map)?;
            let text = match &witness {
                Some(w) => format!("{} ~ {}: isomorphic via {w:?}\n", a.name, b.name),
                None => format!("{} ~ {}: not isomorphic\n", a.name, b.name),
            };
            Ok(Report {
                text,
                json: json!({"first": a.name, "second": b.name, "isomorphic": witness.is_some(), "witness": witness}),
                ok: witness.is_some(),
            })
        }
        Command::Aut { map } => {
            let doc = load(map)?;
            let g = automorphism_group(&doc.map)?;
            let text = format!(
                "{}: order {}, {} orbit(s) {:?}, vertex-transitive: {}\ngenerators: {:?}\n",
                doc.name,
                g.order,
                g.orbits.len(),
                g.orbits,
                g.is_transitive(),
                g.generators
            );
            Ok(Report::ok(
                text,
                json!({"name": doc.name, "order": g.order, "generators": g.generators,
                       "orbits": g.orbits, "vertex_transitive": g.is_transitive()}),
            ))
        }
        Command::Gt { map, t, adjacency } => {
            let adjacency = match adjacency {
                Adj::Cofacial => Adjacency::Cofacial,
                Adj::Edge => Adjacency::Edge,
            };
            let doc = load(map)?;
            let n = doc.map.vertex_count();
            let ts: Vec<usize> = match t {
                Some(t) => vec![*t],
                None => (0..n)
                    .filter(|&t| g_t_graph_with(&doc.map, t, adjacency).edge_count() > 0)
                    .collect(),
            };
            let mut text = String::new();
            let mut out = Vec::new();
            for t in ts {
                let g = g_t_graph_with(&doc.map, t, adjacency);
                let edges: Vec<(usize, usize)> = g.edges().collect();
                text.push_str(&format!("G_{t}: {} edge(s) {edges:?}\n", edges.len()));
                out.push(json!({"t": t, "edge_count": edges.len(), "edges": edges,
                                "components": g.component_shape()}));
            }
            Ok(Report::ok(text, json!({"name": doc.name, "graphs": out})))
        }
        Command::Enumerate {
            ty,
            chi,
            jobs,
            budget,
            seed,
            no_dedup,
            stats,
            out,
        } => {
            let target = parse_type(ty)?;
            let options = EnumerateOptions {
                jobs: *jobs,
                node_budget: *budget,
                seed: match seed {
                    Seed::Link => SeedMode::Link,
                    Seed::Face => SeedMode::Face,
                },
                dedup: !no_dedup,
            };
            let result = enumerate_sems(&target, *chi, &options)?;
            let docs: Vec<MapDocument> = result
                .maps
                .iter()
                .enumerate()
                .map(|(i, m)| MapDocument {
                    name: format!("E{}", i + 1),
                    map: m.clone(),
                })
                .collect();
            if let Some(dir) = out {
                write_maps(dir, &docs)?;
            }
            let provenance = json!({
                "command": "enumerate",
                "type": target.to_string(),
                "chi": chi,
                "vertex_count": result.vertex_count,
                "stats": result.stats,
                "note": result.note,
            });
            let mut text = String::new();
            if !stats {
                for doc in &docs {
                    text.push_str(&serialize_text(doc));
                    text.push('\n');
                }
            }
            text.push_str(&format!("# provenance: {provenance}\n"));
            let maps: Vec<Value> = if *stats {
                Vec::new()
            } else {
                docs.iter().map(map_json).collect()
            };
            Ok(Report::ok(
                text,
                json!({"maps": maps, "provenance": provenance}),
            ))
        }
        Command::Cover { map } => {
            let doc = load(map)?;
            let (cover, witness) = double_cover(&doc.map)?;
            let out = MapDocument {
                name: format!("{}_cover", doc.name),
                map: cover,
            };
            let provenance = json!({
                "command": "cover",
                "base": doc.name,
                "vertex_map": witness.vertex_map,
                "profile": profile_json(&out.map),
            });
            Ok(Report::ok(
                map_text(&out, &provenance),
                json!({"map": map_json(&out), "provenance": provenance}),
            ))
        }
        Command::Stack { map } => {
            let doc = load(map)?;
            let out = MapDocument {
                name: format!("{}_stacked", doc.name),
                map: stack_faces(&doc.map),
            };
            let provenance = json!({
                "command": "stack",
                "base": doc.name,
                "profile": profile_json(&out.map),
            });
            Ok(Report::ok(
                map_text(&out, &provenance),
                json!({"map": map_json(&out), "provenance": provenance}),
            ))
        }
        Command::Cylinder {
            kind,
            faces,
            offset,
            reflect,
            maps,
        } => {
            let docs: Vec<MapDocument> = maps
                .iter()
                .map(|m| load(m))
                .collect::<anyhow::Result<_>>()?;
            if faces.len() % 2 != 0 {
                bail!("--faces takes pairs of faces");
            }
            let pairs = faces.len() / 2;
            if offset.len() != 1 && offset.len() != pairs {
                bail!("give one --offset, or one per pair of faces");
            }
            let second = if docs.len() == 2 { 1 } else { 0 };
            let mut specs = Vec::with_capacity(pairs);
            for i in 0..pairs {
                specs.push(CylinderSpec {
                    kind: (*kind).into(),
                    site_a: FaceRef {
                        map: 0,
                        face: parse_face(&faces[2 * i])?,
                    },
                    site_b: FaceRef {
                        map: second,
                        face: parse_face(&faces[2 * i + 1])?,
                    },
                    gluing: Gluing {
                        offset: offset[if offset.len() == 1 { 0 } else { i }],
                        reflect: *reflect,
                    },
                });
            }
            let refs: Vec<&PolyhedralMap> = docs.iter().map(|d| &d.map).collect();
            let (map, deltas) = add_cylinders(&refs, &specs)?;
            let name = docs
                .iter()
                .map(|d| d.name.as_str())
                .collect::<Vec<_>>()
                .join("_")
                + "_cyl";
            let out = MapDocument { name, map };
            let provenance = json!({
                "command": "cylinder",
                "bases": docs.iter().map(|d| d.name.clone()).collect::<Vec<_>>(),
                "specs": specs,
                "chi_deltas": deltas,
                "profile": profile_json(&out.map),
            });
            Ok(Report::ok(
                map_text(&out, &provenance),
                json!({"map": map_json(&out), "provenance": provenance}),
            ))
        }
        Command::CylinderSearch {
            ty,
            chi,
            bases,
            limit,
            max_bases,
            count_only,
            out,
        } => {
            let target = parse_type(ty)?;
            let base_docs: Vec<(String, PolyhedralMap)> = bases
                .split(',')
                .filter(|s| !s.trim().is_empty())
                .map(|s| load(s.trim()).map(|d| (d.name, d.map)))
                .collect::<anyhow::Result<_>>()?;
            let options = CylinderSearchOptions {
                max_bases: *max_bases,
                limit: *limit,
                keep_maps: !count_only,
                ..Default::default()
            };
            let result = cylinder_search(&base_docs, &target, *chi, &options)?;
            let docs: Vec<MapDocument> = result
                .classes
                .iter()
                .enumerate()
                .map(|(i, c)| MapDocument {
                    name: format!("{}_{}", c.bases.join(""), i + 1),
                    map: c.map.clone(),
                })
                .collect();
            if let Some(dir) = out {
                write_maps(dir, &docs)?;
            }
            let provenance = json!({
                "command": "cylinder-search",
                "type": target.to_string(),
                "chi": chi,
                "vertex_count": result.vertex_count,
                "kind": result.kind,
                "bundles_built": result.bundles_built,
                "valid_maps": result.valid_maps,
                "classes": result.class_count,
                "truncated": result.truncated,
                "note": result.note,
            });
            let mut text = String::new();
            for (doc, found) in docs.iter().zip(&result.classes) {
                text.push_str(&serialize_text(doc));
                let record = json!({"bases": found.bases, "specs": found.specs});
                text.push_str(&format!("# provenance: {record}\n\n"));
            }
            text.push_str(&format!("# provenance: {provenance}\n"));
            let maps: Vec<Value> = docs
                .iter()
                .zip(&result.classes)
                .map(|(d, f)| json!({"map": map_json(d), "bases": f.bases, "specs": f.specs}))
                .collect();
            Ok(Report::ok(
                text,
                json!({"maps": maps, "provenance": provenance}),
            ))
        }
        Command::Catalog { name: None } => {
            let mut text = String::new();
            let mut out = Vec::new();
            for e in catalog() {
                text.push_str(&format!(
                    "{:<12} n={:<3} chi={:<3} {:<14} {}\n",
                    e.name,
                    e.map.vertex_count(),
                    e.expected.chi,
                    e.expected.face_sequence.to_string(),
                    if e.expected.orientable {
                        "orientable"
                    } else {
                        "non-orientable"
                    }
                ));
                out.push(json!({
                    "name": e.name,
                    "vertices": e.map.vertex_count(),
                    "chi": e.expected.chi,
                    "orientable": e.expected.orientable,
                    "type": e.expected.face_sequence.to_string(),
                    "vertex_transitive": e.expected.vertex_transitive,
                    "note": e.note,
                }));
            }
            Ok(Report::ok(text, json!({"entries": out})))
        }
        Command::Catalog { name: Some(name) } => {
            let e = catalog_entry(name)?;
            let doc = MapDocument {
                name: e.name.to_string(),
                map: e.map.clone(),
            };
            let provenance = json!({"command": "catalog", "note": e.note});
            Ok(Report::ok(
                map_text(&doc, &provenance),
                json!({"map": map_json(&doc), "provenance": provenance}),
            ))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            let body = match cli.format {
                Format::Text => report.text,
                Format::Json => {
                    serde_json::to_string_pretty(&report.json).expect("JSON values serialize")
                        + "\n"
                }
            };
            // a closed pipe (e.g. `| head`) is not an error
            let _ = std::io::stdout().lock().write_all(body.as_bytes());
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            match e.downcast_ref::<semmap_core::Error>() {
                Some(semmap_core::Error::InvalidMap(_)) => ExitCode::from(1),
                _ => ExitCode::from(2),
            }
        }
    }
}
