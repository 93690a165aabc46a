//! File output shared by the subcommands.

use std::fs;
use std::path::PathBuf;

use serde::Serialize;
use serde_json::{json, Value};

use crate::{Common, Failure, Format, VERSION};

/// Wraps a result with the tool version and the full run configuration.
pub fn envelope<T: Serialize>(command: &str, config: Value, result: &T) -> Value {
    json!({
        "tool": "ratdec",
        "version": VERSION,
        "command": command,
        "config": config,
        "result": result,
    })
}

pub fn to_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("value serializes");
    s.push('\n');
    s
}

/// Writes `name` under the output directory and returns its path.
pub fn write(common: &Common, name: &str, contents: &str) -> Result<PathBuf, Failure> {
    let dir = common.out.as_ref().expect("caller checked --out");
    fs::create_dir_all(dir).map_err(|e| Failure::io(format!("{}: {e}", dir.display())))?;
    let path = dir.join(name);
    fs::write(&path, contents).map_err(|e| Failure::io(format!("{}: {e}", path.display())))?;
    Ok(path)
}

pub const REPORT_FORMATS: [Format; 2] = [Format::Json, Format::Text];

/// Writes the JSON and text reports under `--out`, and prints the text (or
/// the JSON when only JSON was requested).
pub fn emit(common: &Common, stem: &str, json: &Value, text: &str, formats: &[Format]) -> Result<(), Failure> {
    let wants = |f| formats.contains(&f);
    if common.out.is_some() {
        if wants(Format::Json) {
            write(common, &format!("{stem}.json"), &to_json(json))?;
        }
        if wants(Format::Text) {
            write(common, &format!("{stem}.txt"), text)?;
        }
    }
    if wants(Format::Json) && !wants(Format::Text) && common.out.is_none() {
        print!("{}", to_json(json));
    } else {
        print!("{text}");
    }
    Ok(())
}
