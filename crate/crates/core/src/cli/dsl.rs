//! Line-oriented scenario format.
//!
//! ```text
//! # comment
//! dim 4
//! ray v01 0 0 0 1
//! ray h 1/2 -1/2 0 0
//! context v01 v02 v03 v04
//! ```
//!
//! Exactly one `dim` line, before any `ray` or `context`. Coordinates are
//! integers or `p/q`. Every declared ray must be used by some context.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::exactlin::{parse_rational, RVector};
use crate::ksengine::{build_scenario, KSScenario, RawRay, ScenarioError};

/// A diagnostic with a 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    fn at(token: &Token<'_>, message: impl Into<String>) -> Self {
        ParseError {
            line: token.line,
            column: token.column,
            message: message.into(),
        }
    }

    fn line(line: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            column: 1,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct Token<'a> {
    pub text: &'a str,
    pub line: usize,
    pub column: usize,
}

/// Splits `text` into whitespace-separated tokens per line, dropping
/// comments and blank lines.
pub(crate) fn tokenize(text: &str) -> Vec<Vec<Token<'_>>> {
    let mut lines = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("");
        let mut tokens = Vec::new();
        let mut start = None;
        for (i, ch) in content.char_indices().chain(std::iter::once((content.len(), ' '))) {
            match (ch.is_whitespace(), start) {
                (false, None) => start = Some(i),
                (true, Some(s)) => {
                    tokens.push(Token {
                        text: &content[s..i],
                        line: n + 1,
                        column: content[..s].chars().count() + 1,
                    });
                    start = None;
                }
                _ => {}
            }
        }
        if !tokens.is_empty() {
            lines.push(tokens);
        }
    }
    lines
}

pub(crate) fn parse_coords(tokens: &[Token<'_>]) -> Result<RVector, ParseError> {
    let entries = tokens
        .iter()
        .map(|t| {
            parse_rational(t.text)
                .map_err(|_| ParseError::at(t, format!("invalid rational `{}`", t.text)))
        })
        .collect::<Result<Vec<_>, _>>()?;
    RVector::new(entries).map_err(|e| ParseError::line(tokens.first().map_or(0, |t| t.line), e.to_string()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RayDeclaration {
    pub id: String,
    pub coords: RVector,
    pub line: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContextDeclaration {
    pub ray_ids: Vec<String>,
    pub line: usize,
}

/// Syntactic content of a scenario file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScenarioDocument {
    pub dim: usize,
    pub rays: Vec<RayDeclaration>,
    pub contexts: Vec<ContextDeclaration>,
}

impl ScenarioDocument {
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut dim: Option<usize> = None;
        let mut rays: Vec<RayDeclaration> = Vec::new();
        let mut index: HashMap<String, usize> = HashMap::new();
        let mut contexts = Vec::new();
        let mut last_line = 0;

        for tokens in tokenize(text) {
            let head = tokens[0];
            last_line = head.line;
            let args = &tokens[1..];
            match head.text {
                "dim" => {
                    if dim.is_some() {
                        return Err(ParseError::at(&head, "duplicate dim declaration"));
                    }
                    if !rays.is_empty() || !contexts.is_empty() {
                        return Err(ParseError::at(&head, "dim must come before any ray or context"));
                    }
                    let [n] = args else {
                        return Err(ParseError::at(
                            &head,
                            format!("dim takes 1 argument, found {}", args.len()),
                        ));
                    };
                    let d: usize = n
                        .text
                        .parse()
                        .ok()
                        .filter(|&d| d >= 2)
                        .ok_or_else(|| ParseError::at(n, format!("invalid dimension `{}`", n.text)))?;
                    dim = Some(d);
                }
                "ray" => {
                    let d = dim.ok_or_else(|| ParseError::at(&head, "ray declared before dim"))?;
                    let Some((id, coords)) = args.split_first() else {
                        return Err(ParseError::at(&head, "ray needs an id"));
                    };
                    if coords.len() != d {
                        return Err(ParseError::at(
                            id,
                            format!("ray {} has {} coordinates, needs {d}", id.text, coords.len()),
                        ));
                    }
                    if index.contains_key(id.text) {
                        return Err(ParseError::at(id, format!("duplicate ray id `{}`", id.text)));
                    }
                    let coords = parse_coords(coords)?;
                    if coords.is_zero() {
                        return Err(ParseError::at(id, format!("ray {} is the zero vector", id.text)));
                    }
                    index.insert(id.text.to_string(), rays.len());
                    rays.push(RayDeclaration {
                        id: id.text.to_string(),
                        coords,
                        line: head.line,
                    });
                }
                "context" => {
                    let d = dim.ok_or_else(|| ParseError::at(&head, "context declared before dim"))?;
                    if args.len() != d {
                        return Err(ParseError::at(
                            &head,
                            format!(
                                "context has {} ray{}, needs {d}",
                                args.len(),
                                if args.len() == 1 { "" } else { "s" }
                            ),
                        ));
                    }
                    for t in args {
                        if !index.contains_key(t.text) {
                            return Err(ParseError::at(t, format!("undeclared ray `{}`", t.text)));
                        }
                    }
                    contexts.push(ContextDeclaration {
                        ray_ids: args.iter().map(|t| t.text.to_string()).collect(),
                        line: head.line,
                    });
                }
                other => {
                    return Err(ParseError::at(&head, format!("unknown keyword `{other}`")));
                }
            }
        }

        let dim = dim.ok_or_else(|| ParseError::line(last_line.max(1), "missing dim declaration"))?;
        if contexts.is_empty() {
            return Err(ParseError::line(last_line.max(1), "no contexts declared"));
        }
        let mut used = vec![false; rays.len()];
        for c in &contexts {
            for id in &c.ray_ids {
                used[index[id]] = true;
            }
        }
        if let Some(r) = rays.iter().zip(&used).find(|(_, &u)| !u).map(|(r, _)| r) {
            return Err(ParseError::line(
                r.line,
                format!("ray {} is not used by any context", r.id),
            ));
        }
        Ok(ScenarioDocument { dim, rays, contexts })
    }

    pub fn to_scenario(&self, merge: bool) -> Result<KSScenario, ParseError> {
        let by_id: HashMap<&str, &RayDeclaration> =
            self.rays.iter().map(|r| (r.id.as_str(), r)).collect();
        let raw: Vec<Vec<RawRay>> = self
            .contexts
            .iter()
            .map(|c| {
                c.ray_ids
                    .iter()
                    .map(|id| RawRay::new(id.clone(), by_id[id.as_str()].coords.clone()))
                    .collect()
            })
            .collect();
        build_scenario(self.dim, &raw, merge).map_err(|e| match &e {
            ScenarioError::InvalidContext { index, source } => {
                ParseError::line(self.contexts[*index].line, source.to_string())
            }
            ScenarioError::InvalidRay { id, .. } | ScenarioError::DuplicateId(id) => {
                let line = by_id.get(id.as_str()).map_or(1, |r| r.line);
                ParseError::line(line, e.to_string())
            }
            _ => ParseError::line(1, e.to_string()),
        })
    }
}

impl From<&KSScenario> for ScenarioDocument {
    fn from(s: &KSScenario) -> Self {
        ScenarioDocument {
            dim: s.dim(),
            rays: s
                .rays()
                .iter()
                .map(|r| RayDeclaration {
                    id: r.id().to_string(),
                    coords: r.coords().clone(),
                    line: 0,
                })
                .collect(),
            contexts: s
                .contexts()
                .iter()
                .map(|c| ContextDeclaration {
                    ray_ids: c.ray_ids().map(str::to_string).collect(),
                    line: 0,
                })
                .collect(),
        }
    }
}

impl fmt::Display for ScenarioDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "dim {}", self.dim)?;
        for r in &self.rays {
            write!(f, "ray {}", r.id)?;
            for c in r.coords.entries() {
                write!(f, " {c}")?;
            }
            writeln!(f)?;
        }
        for c in &self.contexts {
            writeln!(f, "context {}", c.ray_ids.join(" "))?;
        }
        Ok(())
    }
}

pub fn parse_scenario(text: &str, merge: bool) -> Result<KSScenario, ParseError> {
    ScenarioDocument::parse(text)?.to_scenario(merge)
}

pub fn serialize_scenario(s: &KSScenario) -> String {
    ScenarioDocument::from(s).to_string()
}
