use std::fmt::Write as _;
use std::path::Path;

use nccount_core::nc::{curve_graph, to_dot, CountRecord};
use nccount_core::quiver::{classify as classify_quiver, ComponentType, Quiver};
use nccount_core::weight::Orientation;
use nccount_core::{
    count_Cl, decide_embedding, enumerate_exceptional, gram_witness_search, Embedding, ExcCollection,
    NcError, WeightSequence,
};
use serde::Serialize;

use crate::{CliError, Format};

/// Builtin name, `T(p1,p2,p3)`, or a path to a JSON quiver file.
pub fn load_quiver(source: &str) -> Result<Quiver, CliError> {
    let trimmed = source.trim();
    let path = Path::new(trimmed);
    if path.is_file() {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
        let name = path.file_stem().map_or_else(|| trimmed.to_string(), |s| s.to_string_lossy().into_owned());
        let q = Quiver::from_json(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        return Ok(q.with_name(name));
    }
    if let Some(inner) = trimmed.strip_prefix("T(").and_then(|s| s.strip_suffix(')')) {
        let p: WeightSequence = inner.parse()?;
        return Ok(p.to_quiver(Orientation::default())?.with_name(trimmed));
    }
    if trimmed.starts_with('{') {
        return Ok(Quiver::from_json(trimmed)?);
    }
    match Quiver::parse(trimmed) {
        Ok(q) => Ok(q.with_name(trimmed)),
        Err(e @ NcError::InvalidQuiver(_)) => {
            Err(CliError::Input(format!("{e} (not a builtin name and no such file)")))
        }
        Err(e) => Err(e.into()),
    }
}

pub fn load_quivers(sources: &[String]) -> Result<Vec<Quiver>, CliError> {
    sources.iter().map(|s| load_quiver(s)).collect()
}

fn check_window(window: i64) -> Result<(), CliError> {
    if window < 1 {
        return Err(CliError::Input(format!("window must be >= 1, got {window}")));
    }
    Ok(())
}

fn check_genus(genus: &[i64]) -> Result<(), CliError> {
    match genus.iter().find(|&&l| l < -1) {
        Some(l) => Err(CliError::Input(format!("genus must be >= -1, got {l}"))),
        None => Ok(()),
    }
}

fn unsupported(cmd: &str, format: Format) -> CliError {
    CliError::Input(format!("{cmd} does not support --format {format:?}").to_lowercase())
}

fn json_line<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("records serialize");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct ClassifyRecord<'a> {
    quiver: String,
    kind: String,
    rank: usize,
    null_root: Option<&'a [i64]>,
    components: Vec<String>,
}

fn component_label(kind: &ComponentType) -> String {
    match kind {
        ComponentType::Dynkin(t) => format!("Dynkin {t}"),
        ComponentType::ExtendedDynkin { kind, .. } => format!("ExtendedDynkin {kind}"),
        ComponentType::Wild => "Wild".to_string(),
    }
}

pub fn classify(quivers: &[Quiver], format: Format) -> Result<String, CliError> {
    let mut out = String::new();
    for q in quivers {
        let c = classify_quiver(q);
        let components: Vec<String> = c.components.iter().map(|cc| component_label(&cc.kind)).collect();
        let delta = c.null_root();
        match format {
            Format::Tsv => {
                let mut line = format!("{}\t{}, rank {}", q.display_name(), components.join(" + "), q.vertex_count());
                if let Some(d) = delta {
                    let _ = write!(line, ", δ={d}");
                }
                out.push_str(&line);
                out.push('\n');
            }
            Format::Json => out.push_str(&json_line(&ClassifyRecord {
                quiver: q.display_name(),
                kind: format!("{:?}", c.overall()),
                rank: q.vertex_count(),
                null_root: delta.map(|d| d.entries()),
                components,
            })),
            Format::Dot => return Err(unsupported("classify", format)),
        }
    }
    Ok(out)
}

pub fn enumerate(quivers: &[Quiver], window: i64, format: Format) -> Result<String, CliError> {
    check_window(window)?;
    let mut out = String::new();
    for q in quivers {
        let e = enumerate_exceptional(q, window)?;
        match format {
            Format::Json => out.push_str(&e.to_json_lines()),
            Format::Tsv => {
                for (i, o) in e.objects().iter().enumerate() {
                    let _ = writeln!(out, "{}\t{window}\t{i}\t{}", q.display_name(), o.dims());
                }
            }
            Format::Dot => return Err(unsupported("enumerate", format)),
        }
        if e.truncated() {
            eprintln!("nccount: {}: mutation closure left the window {window}; objects outside were dropped", q.display_name());
        }
    }
    Ok(out)
}

pub fn count(quivers: &[Quiver], genus: &[i64], window: i64, format: Format) -> Result<String, CliError> {
    check_window(window)?;
    check_genus(genus)?;
    let mut out = String::new();
    if format == Format::Tsv {
        out.push_str("quiver\tl\twindow\tcount\ttruncated\n");
    }
    for q in quivers {
        for &l in genus {
            let r = count_Cl(q, l, window)?;
            match format {
                Format::Tsv => {
                    let _ = writeln!(out, "{}\t{l}\t{window}\t{}\t{}", r.quiver, r.count, r.truncated);
                }
                Format::Json => out.push_str(&json_line::<CountRecord>(&r.record())),
                Format::Dot => return Err(unsupported("count", format)),
            }
            if r.undecided > 0 {
                eprintln!(
                    "nccount: {} l={l} W={window}: {} curve(s) undecided in this window",
                    r.quiver, r.undecided
                );
            }
        }
    }
    Ok(out)
}

#[derive(Serialize)]
struct WitnessRecord {
    window: i64,
    objects: Vec<String>,
    hom: Vec<Vec<usize>>,
}

#[derive(Serialize)]
struct EmbedRecord {
    from: String,
    into: String,
    verdict: Embedding,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<Option<WitnessRecord>>,
}

fn find_witness(from: &WeightSequence, into: &WeightSequence, max_window: i64) -> Result<Option<WitnessRecord>, CliError> {
    let q = into.to_quiver(Orientation::default())?;
    for w in 1..=max_window {
        if let Some(c) = gram_witness_search(from, &q, w)? {
            return Ok(Some(witness_record(w, &c)?));
        }
    }
    Ok(None)
}

fn witness_record(window: i64, c: &ExcCollection) -> Result<WitnessRecord, CliError> {
    Ok(WitnessRecord {
        window,
        objects: c.objects().iter().map(ToString::to_string).collect(),
        hom: c.hom_matrix()?,
    })
}

pub fn embed(from: &str, into: &str, witness: bool, window: i64, format: Format) -> Result<String, CliError> {
    check_window(window)?;
    let p_sub: WeightSequence = from.parse()?;
    let p: WeightSequence = into.parse()?;
    let verdict = decide_embedding(&p_sub, &p)?;
    let found = if witness { Some(find_witness(&p_sub, &p, window)?) } else { None };
    let mut out = String::new();
    match format {
        Format::Tsv => {
            let _ = writeln!(out, "{verdict}");
            match &found {
                Some(Some(w)) => {
                    let _ = writeln!(out, "witness in T{p} at window {}: {}", w.window, w.objects.join(" "));
                    for row in &w.hom {
                        let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
                        let _ = writeln!(out, "{}", cells.join("\t"));
                    }
                }
                Some(None) => {
                    let _ = writeln!(out, "no witness in T{p} up to window {window}");
                }
                None => {}
            }
        }
        Format::Json => out.push_str(&json_line(&EmbedRecord {
            from: p_sub.to_string(),
            into: p.to_string(),
            verdict,
            witness: found,
        })),
        Format::Dot => return Err(unsupported("embed", format)),
    }
    Ok(out)
}

#[derive(Serialize)]
struct GraphRecord {
    quiver: String,
    l: i64,
    window: i64,
    nodes: Vec<Vec<String>>,
    edges: Vec<(usize, usize)>,
}

pub fn graph(quivers: &[Quiver], genus: &[i64], window: i64, format: Format) -> Result<String, CliError> {
    check_window(window)?;
    check_genus(genus)?;
    let mut out = String::new();
    for q in quivers {
        for &l in genus {
            let r = count_Cl(q, l, window)?;
            match format {
                Format::Dot => out.push_str(&to_dot(&r)?),
                Format::Json => {
                    let curves = &r.clustering.curves;
                    out.push_str(&json_line(&GraphRecord {
                        quiver: r.quiver.clone(),
                        l,
                        window,
                        nodes: curves.iter().map(|c| c.ladder.iter().map(ToString::to_string).collect()).collect(),
                        edges: curve_graph(curves)?,
                    }));
                }
                Format::Tsv => {
                    for (a, b) in curve_graph(&r.clustering.curves)? {
                        let _ = writeln!(out, "{}\t{l}\t{window}\tc{a}\tc{b}", r.quiver);
                    }
                }
            }
        }
    }
    Ok(out)
}
