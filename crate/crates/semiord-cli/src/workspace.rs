//! Workspace documents: a TOML file naming backends, points (a backend with
//! a basepoint), and families (lists of points). Commands may refer to any
//! declared name; every reference is resolved eagerly at load time so a bad
//! document fails before any computation starts.
//!
//! ```toml
//! [backends.q]
//! kind = "rational"
//!
//! [backends.root2]
//! kind = "quadratic"
//! p = "0"
//! q = "1"
//! d = 2
//!
//! [points.unit]
//! backend = "q"
//! base = "1"
//!
//! [families.pair]
//! members = ["unit", "unit"]
//! ```

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use semiord::{
    make_backend, parse_backend_descriptor, parse_element, Backend, PointedBackend, PointedFamily,
};
use toml::Value;

use crate::CliError;

#[derive(Debug, Clone, Default)]
pub struct Workspace {
    backends: BTreeMap<String, Backend>,
    points: BTreeMap<String, PointedBackend>,
    families: BTreeMap<String, PointedFamily>,
}

fn bad(message: String) -> CliError {
    CliError::Input(message)
}

fn entries<'v>(
    section: &str,
    value: &'v Value,
) -> Result<impl Iterator<Item = (&'v String, &'v toml::Table)>, CliError> {
    let table = value
        .as_table()
        .ok_or_else(|| bad(format!("workspace: [{section}] must be a table of tables")))?;
    let mut out = Vec::with_capacity(table.len());
    for (name, entry) in table {
        let entry = entry.as_table().ok_or_else(|| {
            bad(format!("workspace: [{section}.{name}] must be a table"))
        })?;
        out.push((name, entry));
    }
    Ok(out.into_iter())
}

fn string_key(place: &str, entry: &toml::Table, key: &str) -> Result<String, CliError> {
    match entry.get(key) {
        Some(Value::String(s)) => Ok(s.clone()),
        Some(_) => Err(bad(format!("workspace: {place}: '{key}' must be a string"))),
        None => Err(bad(format!("workspace: {place}: missing '{key}'"))),
    }
}

fn resolve_backend(name: &str, entry: &toml::Table) -> Result<Backend, CliError> {
    let place = format!("[backends.{name}]");
    for key in entry.keys() {
        if !matches!(key.as_str(), "kind" | "p" | "q" | "d" | "dual") {
            return Err(bad(format!("workspace: {place}: unknown key '{key}'")));
        }
    }
    let kind = string_key(&place, entry, "kind")?;
    let dual = match entry.get("dual") {
        Some(Value::Boolean(b)) => *b,
        Some(_) => return Err(bad(format!("workspace: {place}: 'dual' must be a boolean"))),
        None => false,
    };
    let mut text = String::new();
    if dual {
        text.push_str("dual:");
    }
    if kind == "quadratic" {
        let p = string_key(&place, entry, "p")?;
        let q = string_key(&place, entry, "q")?;
        let d = match entry.get("d") {
            Some(Value::Integer(d)) if *d >= 0 => *d,
            Some(_) => {
                return Err(bad(format!(
                    "workspace: {place}: 'd' must be a non-negative integer"
                )))
            }
            None => return Err(bad(format!("workspace: {place}: missing 'd'"))),
        };
        text.push_str(&format!("quadratic({p},{q},{d})"));
    } else {
        if entry.contains_key("p") || entry.contains_key("q") || entry.contains_key("d") {
            return Err(bad(format!(
                "workspace: {place}: only quadratic backends take p, q, d"
            )));
        }
        text.push_str(&kind);
    }
    let descriptor = parse_backend_descriptor(&text)
        .map_err(|e| bad(format!("workspace: {place}: {e}")))?;
    make_backend(&descriptor).map_err(|e| bad(format!("workspace: {place}: {e}")))
}

impl Workspace {
    pub fn empty() -> Self {
        Workspace::default()
    }

    pub fn load(path: &Path, max_gallop: u32) -> Result<Self, CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| bad(format!("cannot read workspace {}: {e}", path.display())))?;
        Workspace::parse(&text, max_gallop)
    }

    /// Duplicate names surface as TOML redefinition errors with positions;
    /// dangling references and malformed entries surface with the offending
    /// section named.
    pub fn parse(text: &str, max_gallop: u32) -> Result<Self, CliError> {
        let doc: toml::Table = text
            .parse()
            .map_err(|e| bad(format!("workspace: {e}")))?;
        for key in doc.keys() {
            if !matches!(key.as_str(), "backends" | "points" | "families") {
                return Err(bad(format!("workspace: unknown section '{key}'")));
            }
        }
        let mut workspace = Workspace::empty();
        if let Some(value) = doc.get("backends") {
            for (name, entry) in entries("backends", value)? {
                let backend = resolve_backend(name, entry)?;
                workspace.backends.insert(name.clone(), backend);
            }
        }
        if let Some(value) = doc.get("points") {
            for (name, entry) in entries("points", value)? {
                let place = format!("[points.{name}]");
                for key in entry.keys() {
                    if !matches!(key.as_str(), "backend" | "base") {
                        return Err(bad(format!("workspace: {place}: unknown key '{key}'")));
                    }
                }
                let backend_name = string_key(&place, entry, "backend")?;
                let backend = workspace.backends.get(&backend_name).cloned().ok_or_else(|| {
                    bad(format!(
                        "workspace: {place}: unknown backend '{backend_name}'"
                    ))
                })?;
                let base_text = string_key(&place, entry, "base")?;
                let base = parse_element(&backend, &base_text)
                    .map_err(|e| CliError::Context { context: format!("workspace: {place}"), source: e })?;
                let pointed = PointedBackend::new(backend, base)
                    .map_err(|e| CliError::Context { context: format!("workspace: {place}"), source: e })?
                    .with_max_gallop(max_gallop);
                workspace.points.insert(name.clone(), pointed);
            }
        }
        if let Some(value) = doc.get("families") {
            for (name, entry) in entries("families", value)? {
                let place = format!("[families.{name}]");
                for key in entry.keys() {
                    if key != "members" {
                        return Err(bad(format!("workspace: {place}: unknown key '{key}'")));
                    }
                }
                let list = match entry.get("members") {
                    Some(Value::Array(items)) if !items.is_empty() => items,
                    Some(Value::Array(_)) => {
                        return Err(bad(format!(
                            "workspace: {place}: 'members' must be nonempty"
                        )))
                    }
                    _ => {
                        return Err(bad(format!(
                            "workspace: {place}: missing 'members' list"
                        )))
                    }
                };
                let mut members = Vec::with_capacity(list.len());
                for item in list {
                    let point_name = item.as_str().ok_or_else(|| {
                        bad(format!("workspace: {place}: members must be point names"))
                    })?;
                    let point = workspace.points.get(point_name).cloned().ok_or_else(|| {
                        bad(format!(
                            "workspace: {place}: unknown point '{point_name}'"
                        ))
                    })?;
                    members.push(point);
                }
                let family = PointedFamily::new(members)
                    .map_err(|e| CliError::Context { context: format!("workspace: {place}"), source: e })?;
                workspace.families.insert(name.clone(), family);
            }
        }
        Ok(workspace)
    }

    /// A backend by declared name, else an inline descriptor such as
    /// `rational` or `quadratic(0,1,2)`.
    pub fn backend(&self, token: &str) -> Result<Backend, CliError> {
        if let Some(backend) = self.backends.get(token) {
            return Ok(backend.clone());
        }
        let descriptor = parse_backend_descriptor(token)?;
        Ok(make_backend(&descriptor)?)
    }

    /// A pointed backend by declared name, else `BACKEND:BASE` where BACKEND
    /// is resolved as in [`Workspace::backend`] and BASE is an element
    /// literal. The split is at the last colon, so dual descriptors keep
    /// their prefix.
    pub fn pointed(&self, token: &str, max_gallop: u32) -> Result<PointedBackend, CliError> {
        if let Some(point) = self.points.get(token) {
            return Ok(point.clone().with_max_gallop(max_gallop));
        }
        let (backend_text, base_text) = token.rsplit_once(':').ok_or_else(|| {
            bad(format!(
                "'{token}' is neither a workspace point nor BACKEND:BASE"
            ))
        })?;
        let backend = self.backend(backend_text)?;
        let base = parse_element(&backend, base_text)?;
        Ok(PointedBackend::new(backend, base)?.with_max_gallop(max_gallop))
    }

    /// A family by declared name, else built from `--member` point tokens.
    pub fn family(
        &self,
        name: Option<&str>,
        member_tokens: &[String],
        max_gallop: u32,
    ) -> Result<PointedFamily, CliError> {
        if let Some(name) = name {
            return self
                .families
                .get(name)
                .cloned()
                .ok_or_else(|| bad(format!("unknown workspace family '{name}'")));
        }
        let mut members = Vec::with_capacity(member_tokens.len());
        for token in member_tokens {
            members.push(self.pointed(token, max_gallop)?);
        }
        Ok(PointedFamily::new(members)?)
    }
}
