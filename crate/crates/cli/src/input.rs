use std::fs;
use std::path::Path;

use clap::ValueEnum;
use vizing_core::{parse_edgelist, parse_graph6, parse_graph6_lines, Graph};

use crate::Failure;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// graph6, one graph per line.
    G6,
    /// Vertex count on the first line, then one `u v` pair per line.
    El,
}

impl Format {
    pub fn from_path(path: &Path) -> Option<Format> {
        match path.extension()?.to_str()? {
            "g6" => Some(Format::G6),
            "el" => Some(Format::El),
            _ => None,
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

pub fn read_graph(path: &Path, format: Option<Format>) -> Result<Graph, Failure> {
    let format = format.or_else(|| Format::from_path(path)).ok_or_else(|| {
        Failure::Usage(format!(
            "{}: cannot infer the format from the extension; pass --format g6 or --format el",
            path.display()
        ))
    })?;
    let text = read(path)?;
    let parsed = match format {
        Format::G6 => {
            let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
            match (lines.next(), lines.next()) {
                (Some(line), None) => parse_graph6(line),
                (None, _) => return Err(Failure::Usage(format!("{}: no graph found", path.display()))),
                (Some(_), Some(_)) => {
                    return Err(Failure::Usage(format!("{}: expected exactly one graph", path.display())))
                }
            }
        }
        Format::El => parse_edgelist(&text),
    };
    parsed.map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

pub fn read_corpus(path: &Path) -> Result<Vec<Graph>, Failure> {
    parse_graph6_lines(&read(path)?).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}
