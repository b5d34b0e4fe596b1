//! Deterministic CSV emission. Every file gets a header row, rows in a fixed
//! order, and a trailing `# seed=<s> version=<v>` metadata comment; floats go
//! through the shortest-round-trip formatter so reruns are byte-identical.

use std::path::Path;

use qjsd::error::Result;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub fn write_csv(path: &Path, header: &str, rows: &[String], seed: u64) -> Result<()> {
    let mut text = String::new();
    text.push_str(header);
    text.push('\n');
    for row in rows {
        text.push_str(row);
        text.push('\n');
    }
    text.push_str(&format!("# seed={seed} version={VERSION}\n"));
    if let Some(parent) = path.parent() {
        std::fs::create_dir_all(parent)?;
    }
    std::fs::write(path, text)?;
    Ok(())
}

/// Shortest representation that round-trips; `Display` for floats does this.
pub fn fmt_f64(x: f64) -> String {
    format!("{x}")
}
