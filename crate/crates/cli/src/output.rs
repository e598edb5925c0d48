//! CSV and mesh writers. Numbers carry 17 significant digits so that
//! every f64 round-trips; the first line names the tool and config hash.

use std::io::Write;

/// Round-trip representation of an f64.
pub fn num(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn banner(config_hash: &str) -> String {
    format!("# generated-by xispec {}, config-hash {config_hash}", env!("CARGO_PKG_VERSION"))
}

/// A table with comment lines, one header row and numeric rows. Cells may
/// be empty.
pub struct Table {
    comments: Vec<String>,
    header: Vec<String>,
    rows: Vec<Vec<Option<f64>>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Self { comments: Vec::new(), header: header.iter().map(|h| h.to_string()).collect(), rows: Vec::new() }
    }

    pub fn comment(&mut self, text: impl Into<String>) {
        self.comments.push(text.into());
    }

    pub fn row(&mut self, cells: Vec<Option<f64>>) {
        debug_assert_eq!(cells.len(), self.header.len());
        self.rows.push(cells);
    }

    pub fn write_csv(&self, out: &mut impl Write, config_hash: &str) -> std::io::Result<()> {
        writeln!(out, "{}", banner(config_hash))?;
        for c in &self.comments {
            writeln!(out, "# {c}")?;
        }
        writeln!(out, "{}", self.header.join(","))?;
        for r in &self.rows {
            let cells: Vec<String> = r.iter().map(|c| c.map(num).unwrap_or_default()).collect();
            writeln!(out, "{}", cells.join(","))?;
        }
        Ok(())
    }
}

/// Points as `x y z` lines after the banner.
pub fn write_mesh(out: &mut impl Write, points: &[[f64; 3]], comment: &str, config_hash: &str) -> std::io::Result<()> {
    writeln!(out, "{}", banner(config_hash))?;
    writeln!(out, "# {comment}")?;
    for p in points {
        writeln!(out, "{} {} {}", num(p[0]), num(p[1]), num(p[2]))?;
    }
    Ok(())
}
