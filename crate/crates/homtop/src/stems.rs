//! Stable stems tables.
//!
//! Line format, one stem per line, `#` starts a comment:
//!
//! ```text
//! 0: Z
//! 3: Z/24
//! 4: 0
//! 8: Z/2 + Z/2
//! ```
//!
//! The same data is accepted as JSON, either
//! `{"source_note": "...", "stems": {"0": "Z", "3": "Z/24"}}` or with group
//! objects `{"free_rank": 0, "torsion": [8, 3]}` as values. Comment lines
//! before the first entry become the table's source note.

use std::collections::BTreeMap;
use std::path::Path;

use homtop_core::{DirectSum, FinAbGroup, StemsTable};
use serde::Deserialize;
use thiserror::Error;

use crate::json::GroupDoc;

const BUNDLED: &str = include_str!("../data/stems.txt");

#[derive(Debug, Error)]
pub enum StemsError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid stems table: {0}")]
    Validation(String),
    #[error("cannot read stems file {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

/// The bundled table, stems 0..=19.
pub fn bundled() -> StemsTable {
    load_stems_table(BUNDLED).expect("bundled stems table is valid")
}

pub fn load_stems_file(path: &Path) -> Result<StemsTable, StemsError> {
    let text = std::fs::read_to_string(path).map_err(|source| StemsError::Io {
        path: path.display().to_string(),
        source,
    })?;
    load_stems_table(&text)
}

/// Parses a stems document in either format and validates it.
pub fn load_stems_table(text: &str) -> Result<StemsTable, StemsError> {
    let (entries, note) = if text.trim_start().starts_with('{') {
        parse_json(text)?
    } else {
        parse_lines(text)?
    };
    assemble(entries, note)
}

/// One group: `Z`, `0`, `Z/a`, or a `+`-separated sum of those.
pub fn parse_group(spec: &str) -> Result<FinAbGroup, String> {
    let mut acc = FinAbGroup::trivial();
    for term in spec.split('+') {
        let term = term.trim();
        let summand = match term {
            "Z" => FinAbGroup::free(1),
            "0" => FinAbGroup::trivial(),
            "" => return Err(format!("empty summand in {spec:?}")),
            _ => {
                let order = term
                    .strip_prefix("Z/")
                    .ok_or_else(|| format!("unrecognized summand {term:?}"))?
                    .trim()
                    .parse::<u64>()
                    .map_err(|e| format!("bad order in {term:?}: {e}"))?;
                if order == 0 {
                    return Err(format!("order must be positive in {term:?}"));
                }
                FinAbGroup::cyclic(order)
            }
        };
        acc = acc.direct_sum(&summand);
    }
    Ok(acc)
}

fn parse_lines(text: &str) -> Result<(BTreeMap<usize, FinAbGroup>, String), StemsError> {
    let mut entries = BTreeMap::new();
    let mut note: Vec<&str> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let (content, comment) = match raw.split_once('#') {
            Some((c, rest)) => (c.trim(), Some(rest.trim())),
            None => (raw.trim(), None),
        };
        if content.is_empty() {
            if let Some(c) = comment.filter(|c| !c.is_empty()) {
                if entries.is_empty() {
                    note.push(c);
                }
            }
            continue;
        }
        let err = |message: String| StemsError::Parse {
            line: line_no,
            message,
        };
        let (index, spec) = content
            .split_once(':')
            .ok_or_else(|| err(format!("expected `n: group`, found {content:?}")))?;
        let index: usize = index
            .trim()
            .parse()
            .map_err(|e| err(format!("bad stem index {:?}: {e}", index.trim())))?;
        let group = parse_group(spec).map_err(err)?;
        if entries.insert(index, group).is_some() {
            return Err(err(format!("stem {index} given twice")));
        }
    }
    Ok((entries, note.join(" ")))
}

#[derive(Deserialize)]
#[serde(untagged)]
enum JsonGroup {
    Text(String),
    Object(GroupDoc),
}

#[derive(Deserialize)]
struct JsonStems {
    #[serde(default)]
    source_note: String,
    stems: BTreeMap<String, JsonGroup>,
}

fn parse_json(text: &str) -> Result<(BTreeMap<usize, FinAbGroup>, String), StemsError> {
    let doc: JsonStems = serde_json::from_str(text).map_err(|e| StemsError::Parse {
        line: e.line(),
        message: e.to_string(),
    })?;
    let mut entries = BTreeMap::new();
    for (key, value) in doc.stems {
        let field_err = |message: String| StemsError::Parse {
            line: 0,
            message: format!("stems.{key}: {message}"),
        };
        let index: usize = key
            .parse()
            .map_err(|e| field_err(format!("bad stem index: {e}")))?;
        let group = match value {
            JsonGroup::Text(s) => parse_group(&s).map_err(field_err)?,
            JsonGroup::Object(g) => g.to_group().map_err(field_err)?,
        };
        entries.insert(index, group);
    }
    Ok((entries, doc.source_note))
}

fn assemble(entries: BTreeMap<usize, FinAbGroup>, note: String) -> Result<StemsTable, StemsError> {
    if let Some(gap) = entries
        .keys()
        .enumerate()
        .find(|(i, k)| i != *k)
        .map(|(i, _)| i)
    {
        return Err(StemsError::Validation(format!("stem {gap} is missing")));
    }
    if entries.get(&0) != Some(&FinAbGroup::free(1)) {
        return Err(StemsError::Validation("stem 0 must be Z".into()));
    }
    StemsTable::validated(entries.into_values().collect(), note)
        .map_err(|e| StemsError::Validation(e.to_string()))
}
