//! One function per subcommand. Each returns the text for stdout and any
//! warnings for stderr; errors carry their exit code.

use std::fs;
use std::io::Read;

use serde_json::json;

use crate::document::{Loaded, StackyFanDocument};
use crate::error::CliError;
use crate::gallery::{self, FamilyParams};
use crate::report::{render_pretty, ReportDocument, Style};
use crate::sweep::{self, SweepRequest};

#[derive(Debug, Default)]
pub struct Output {
    pub stdout: String,
    pub stderr: Vec<String>,
}

/// Reads a document from a path, or from stdin when the path is `-`.
pub fn read_document(path: &str) -> Result<StackyFanDocument, CliError> {
    let text = if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| CliError::Io(format!("stdin: {e}")))?;
        s
    } else {
        fs::read_to_string(path).map_err(|e| CliError::Io(format!("{path}: {e}")))?
    };
    StackyFanDocument::from_json(&text)
}

fn load(path: &str) -> Result<Loaded, CliError> {
    read_document(path)?.load()
}

pub fn validate(path: &str) -> Result<Output, CliError> {
    let loaded = load(path)?;
    let body = json!({
        "valid": true,
        "rays": loaded.fan.ray_count(),
        "max_cones": loaded.fan.fan().max_cones().len(),
        "polytope": loaded.polytope.is_some(),
    });
    Ok(Output {
        stdout: serde_json::to_string_pretty(&body).unwrap(),
        stderr: loaded.warnings.iter().map(|w| format!("warning: {w}")).collect(),
    })
}

/// Machine-readable description of a validation failure.
pub fn violations_json(err: &CliError) -> Option<String> {
    match err {
        CliError::Invalid(v) => Some(serde_json::to_string_pretty(&json!({ "valid": false, "violations": v })).unwrap()),
        _ => None,
    }
}

pub fn report(path: &str, as_json: bool, style: Style) -> Result<Output, CliError> {
    let loaded = load(path)?;
    let r = ReportDocument::build(&loaded)?;
    let stdout = if as_json { r.to_json() } else { render_pretty(&r, style) };
    Ok(Output {
        stdout,
        stderr: if as_json { loaded.warnings.iter().map(|w| format!("warning: {w}")).collect() } else { vec![] },
    })
}

pub fn cover(path: &str) -> Result<Output, CliError> {
    let loaded = load(path)?;
    let up = loaded.fan.universal_cover();
    let doc = StackyFanDocument::from_fan(&up, loaded.polytope.as_ref().map(|sp| sp.offsets()));
    Ok(Output {
        stdout: doc.to_json(),
        stderr: loaded.warnings.iter().map(|w| format!("warning: {w}")).collect(),
    })
}

pub fn gallery_list() -> Output {
    let entries = gallery::entries();
    let width = entries.iter().map(|e| e.name.len()).max().unwrap_or(0);
    let stdout = entries.iter().map(|e| format!("{:<width$}  {}\n", e.name, e.summary)).collect();
    Output { stdout, stderr: vec![] }
}

pub fn gallery_entry(name: &str, params: &FamilyParams) -> Result<Output, CliError> {
    let doc = gallery::get(name, params)?;
    // refuse to emit a document that does not load
    doc.load()?;
    Ok(Output { stdout: doc.to_json(), stderr: vec![] })
}

pub fn sweep(req: &SweepRequest, csv: bool) -> Result<Output, CliError> {
    let rows = sweep::run(req)?;
    let stdout = if csv { sweep::render_csv(&rows) } else { sweep::render_table(&rows) };
    Ok(Output { stdout, stderr: vec![] })
}
