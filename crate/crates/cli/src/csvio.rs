//! CSV dataset format: one row per point, `x_1,...,x_d,label`, UTF-8
//! with LF line endings and `.` as the decimal separator. The label is
//! the last column and may be any token without commas. An optional
//! header is detected by the first row failing numeric parsing in any
//! coordinate column; the dimension is the column count minus one.

use border_core::{LabeledPointSet, Point};

use crate::CliError;

pub fn read_csv(path: &std::path::Path) -> Result<LabeledPointSet, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
    parse_csv(&text, path)
}

pub fn parse_csv(text: &str, path: &std::path::Path) -> Result<LabeledPointSet, CliError> {
    let mut points: Vec<Point> = Vec::new();
    let mut labels: Vec<String> = Vec::new();
    let mut width: Option<usize> = None;

    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim_end_matches('\r');
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() < 2 {
            return Err(CliError::Usage(format!(
                "{}:{}: expected at least one coordinate and a label",
                path.display(),
                lineno + 1
            )));
        }
        match width {
            None => width = Some(fields.len()),
            Some(w) if w != fields.len() => {
                return Err(CliError::Usage(format!(
                    "{}:{}: row has {} columns, expected {}",
                    path.display(),
                    lineno + 1,
                    fields.len(),
                    w
                )));
            }
            _ => {}
        }
        let coord_fields = &fields[..fields.len() - 1];
        let parsed: Result<Vec<f64>, _> =
            coord_fields.iter().map(|f| f.trim().parse::<f64>()).collect();
        match parsed {
            Ok(coords) => {
                let point = Point::new(coords).map_err(|e| {
                    CliError::Usage(format!("{}:{}: {e}", path.display(), lineno + 1))
                })?;
                points.push(point);
                labels.push(fields[fields.len() - 1].trim().to_string());
            }
            Err(e) => {
                // A non-numeric first row is a header; anywhere else it
                // is malformed data.
                if points.is_empty() && lineno == 0 {
                    continue;
                }
                return Err(CliError::Usage(format!(
                    "{}:{}: bad coordinate: {e}",
                    path.display(),
                    lineno + 1
                )));
            }
        }
    }

    LabeledPointSet::new(points, labels).map_err(CliError::from_core)
}

/// Renders the set in the CSV format. Floats use the shortest
/// representation that parses back to the same value, so a write/read
/// round trip is exact.
pub fn csv_string(set: &LabeledPointSet) -> String {
    let mut out = String::new();
    for i in 0..set.len() {
        for c in set.point(i) {
            out.push_str(&format!("{c}"));
            out.push(',');
        }
        out.push_str(set.label(i));
        out.push('\n');
    }
    out
}

pub fn write_csv(set: &LabeledPointSet, path: &std::path::Path) -> Result<(), CliError> {
    std::fs::write(path, csv_string(set))
        .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}

/// Reads an indices file: ascending zero-based integers, one per line.
pub fn read_indices(path: &std::path::Path) -> Result<Vec<usize>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
    let mut out = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let idx: usize = line.parse().map_err(|e| {
            CliError::Usage(format!("{}:{}: bad index: {e}", path.display(), lineno + 1))
        })?;
        out.push(idx);
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

pub fn write_indices(indices: &[usize], path: &std::path::Path) -> Result<(), CliError> {
    let mut out = String::new();
    for i in indices {
        out.push_str(&i.to_string());
        out.push('\n');
    }
    std::fs::write(path, out)
        .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}
