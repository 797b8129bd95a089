use std::fs;
use std::path::{Path, PathBuf};

use indres::permgrp::{GroupDefinition, PermGroup};
use indres::{Limits, Result as CoreResult};
use sha2::{Digest, Sha256};

/// Failure to read or parse a group file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub path: PathBuf,
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}:{}: {}", self.path.display(), self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

/// A parsed group file. The group itself is built on demand so that
/// construction errors can be reported per entry.
#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: String,
    pub path: PathBuf,
    pub definition: GroupDefinition,
    /// Hex SHA-256 of the canonical definition JSON.
    pub content_hash: String,
}

impl CorpusEntry {
    pub fn from_definition(path: PathBuf, definition: GroupDefinition) -> Self {
        let canonical = serde_json::to_string(&definition).expect("definitions serialize");
        CorpusEntry {
            name: definition.name.clone(),
            path,
            content_hash: hex::encode(Sha256::digest(canonical.as_bytes())),
            definition,
        }
    }

    pub fn build(&self, limits: &Limits) -> CoreResult<PermGroup> {
        self.definition.build(limits)
    }

    pub fn tags(&self) -> &[String] {
        &self.definition.tags
    }
}

/// Reads one group definition file.
pub fn load_group(path: &Path) -> Result<CorpusEntry, ParseError> {
    let text = fs::read_to_string(path).map_err(|e| ParseError {
        path: path.to_path_buf(),
        line: 0,
        column: 0,
        message: e.to_string(),
    })?;
    let definition: GroupDefinition = serde_json::from_str(&text).map_err(|e| ParseError {
        path: path.to_path_buf(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    // generator syntax errors are parse errors too
    definition.permutations().map_err(|e| ParseError {
        path: path.to_path_buf(),
        line: 0,
        column: 0,
        message: e.to_string(),
    })?;
    Ok(CorpusEntry::from_definition(path.to_path_buf(), definition))
}

/// All `*.json` files of a directory in file-name order; unparsable files
/// are returned separately instead of aborting the load.
pub fn load_corpus(dir: &Path) -> std::io::Result<(Vec<CorpusEntry>, Vec<ParseError>)> {
    let mut paths: Vec<PathBuf> = fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    let mut entries = Vec::new();
    let mut errors = Vec::new();
    for p in paths {
        match load_group(&p) {
            Ok(e) => entries.push(e),
            Err(e) => errors.push(e),
        }
    }
    Ok((entries, errors))
}
