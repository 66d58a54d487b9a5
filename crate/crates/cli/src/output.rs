use std::fs::File;
use std::io::{self, BufWriter, Write};

use anyhow::{Context, Result};
use serde::Serialize;

/// Buffered writer to a file, or to stdout for `None` and `-`.
pub fn open(path: Option<&str>) -> Result<Box<dyn Write>> {
    match path {
        None | Some("-") => Ok(Box::new(BufWriter::new(io::stdout().lock()))),
        Some(p) => {
            let f = File::create(p).with_context(|| format!("cannot write `{p}`"))?;
            Ok(Box::new(BufWriter::new(f)))
        }
    }
}

pub fn write_text(path: Option<&str>, text: &str) -> Result<()> {
    let mut w = open(path)?;
    w.write_all(text.as_bytes())?;
    w.flush()?;
    Ok(())
}

pub fn write_json<T: Serialize>(path: Option<&str>, value: &T) -> Result<()> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    write_text(path, &s)
}

/// One line; vertex lists get long.
pub fn write_json_compact<T: Serialize>(path: Option<&str>, value: &T) -> Result<()> {
    let mut s = serde_json::to_string(value)?;
    s.push('\n');
    write_text(path, &s)
}
