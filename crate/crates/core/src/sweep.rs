//! Parameter grids and tabular results with a lossless CSV form.
//!
//! Numbers are written with `{:e}`, the shortest representation that parses
//! back to the same `f64`, so a table survives a write/read cycle bit for
//! bit. Metadata travels as `#key=value` lines above the header.

use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scale {
    Linear,
    Log,
}

/// `points` values from `start` to `stop` inclusive.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepGrid {
    pub variable: String,
    pub start: f64,
    pub stop: f64,
    pub points: usize,
    pub scale: Scale,
}

impl SweepGrid {
    pub fn new(variable: &str, start: f64, stop: f64, points: usize, scale: Scale) -> Result<Self> {
        if !(start.is_finite() && stop.is_finite()) {
            return Err(Error::InvalidInput(format!("{variable}: grid ends must be finite")));
        }
        if points < 2 {
            return Err(Error::InvalidInput(format!("{variable}: need at least 2 points, got {points}")));
        }
        if start >= stop {
            return Err(Error::InvalidInput(format!("{variable}: start {start} must be below stop {stop}")));
        }
        if scale == Scale::Log && start <= 0.0 {
            return Err(Error::InvalidInput(format!("{variable}: log grid needs start > 0")));
        }
        Ok(SweepGrid { variable: variable.to_string(), start, stop, points, scale })
    }

    /// Parse `START:STOP:POINTS` or `START:STOP:POINTS:log`.
    pub fn parse(variable: &str, spec: &str) -> Result<Self> {
        let bad = || Error::InvalidInput(format!("{variable}: expected START:STOP:POINTS[:log], got '{spec}'"));
        let parts: Vec<&str> = spec.split(':').map(str::trim).collect();
        if !(3..=4).contains(&parts.len()) {
            return Err(bad());
        }
        let start: f64 = parts[0].parse().map_err(|_| bad())?;
        let stop: f64 = parts[1].parse().map_err(|_| bad())?;
        let points: usize = parts[2].parse().map_err(|_| bad())?;
        let scale = match parts.get(3) {
            None => Scale::Linear,
            Some(s) if s.eq_ignore_ascii_case("log") => Scale::Log,
            Some(s) if s.eq_ignore_ascii_case("linear") => Scale::Linear,
            Some(_) => return Err(bad()),
        };
        Self::new(variable, start, stop, points, scale)
    }

    /// Grid values, with both ends hit exactly.
    pub fn values(&self) -> Vec<f64> {
        let n = self.points - 1;
        (0..=n)
            .map(|i| {
                if i == n {
                    return self.stop;
                }
                let t = i as f64 / n as f64;
                match self.scale {
                    Scale::Linear => self.start + t * (self.stop - self.start),
                    Scale::Log => self.start * (self.stop / self.start).powf(t),
                }
            })
            .collect()
    }
}

impl fmt::Display for SweepGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.start, self.stop, self.points)?;
        if self.scale == Scale::Log {
            f.write_str(":log")?;
        }
        Ok(())
    }
}

/// A rectangular table of reals with ordered metadata.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SweepResult {
    pub metadata: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl SweepResult {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        SweepResult { metadata: Vec::new(), columns: columns.into_iter().map(Into::into).collect(), rows: Vec::new() }
    }

    /// Set a metadata entry, replacing any earlier value for the key.
    pub fn set_meta(&mut self, key: &str, value: impl fmt::Display) {
        let value = value.to_string();
        match self.metadata.iter_mut().find(|(k, _)| k == key) {
            Some(slot) => slot.1 = value,
            None => self.metadata.push((key.to_string(), value)),
        }
    }

    pub fn meta(&self, key: &str) -> Option<&str> {
        self.metadata.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn push_row(&mut self, row: Vec<f64>) -> Result<()> {
        if row.len() != self.columns.len() {
            return Err(Error::InvalidInput(format!(
                "row has {} values, table has {} columns",
                row.len(),
                self.columns.len()
            )));
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[i]).collect())
    }

    fn check_text(&self) -> Result<()> {
        for (k, v) in &self.metadata {
            if k.is_empty() || k.contains(['=', '\n', '\r']) || v.contains(['\n', '\r']) {
                return Err(Error::InvalidInput(format!("metadata entry '{k}' cannot be written")));
            }
        }
        for c in &self.columns {
            if c.is_empty() || c.contains([',', '\n', '\r']) || c.starts_with('#') {
                return Err(Error::InvalidInput(format!("column name '{c}' cannot be written")));
            }
        }
        Ok(())
    }

    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        self.check_text().map_err(|e| io::Error::new(io::ErrorKind::InvalidInput, e.to_string()))?;
        for (k, v) in &self.metadata {
            writeln!(w, "#{k}={v}")?;
        }
        writeln!(w, "{}", self.columns.join(","))?;
        let mut line = String::new();
        for row in &self.rows {
            line.clear();
            for (i, v) in row.iter().enumerate() {
                if i > 0 {
                    line.push(',');
                }
                line.push_str(&format!("{v:e}"));
            }
            writeln!(w, "{line}")?;
        }
        Ok(())
    }

    pub fn to_csv_string(&self) -> Result<String> {
        self.check_text()?;
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory");
        Ok(String::from_utf8(buf).expect("csv output is ascii"))
    }
}

impl FromStr for SweepResult {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut out = SweepResult::default();
        let mut header = false;
        for (n, line) in text.lines().enumerate() {
            let bad = |what: &str| Error::InvalidInput(format!("line {}: {what}", n + 1));
            if !header {
                if let Some(rest) = line.strip_prefix('#') {
                    let (k, v) = rest.split_once('=').ok_or_else(|| bad("metadata without '='"))?;
                    out.metadata.push((k.to_string(), v.to_string()));
                    continue;
                }
                out.columns = line.split(',').map(str::to_string).collect();
                header = true;
                continue;
            }
            if line.is_empty() {
                continue;
            }
            let row = line
                .split(',')
                .map(|t| t.trim().parse::<f64>().map_err(|_| bad(&format!("bad number '{t}'"))))
                .collect::<Result<Vec<_>>>()?;
            if row.len() != out.columns.len() {
                return Err(bad("row width differs from header"));
            }
            out.rows.push(row);
        }
        if !header {
            return Err(Error::InvalidInput("no header line".into()));
        }
        Ok(out)
    }
}
