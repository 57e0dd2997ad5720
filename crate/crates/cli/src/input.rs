//! Column extraction from user-supplied CSV files.
//!
//! Lines starting with `#` and blank lines are skipped, so a section cut
//! from a rendered CSV report feeds straight back in. Empty cells are
//! treated as missing values.

use std::collections::HashMap;
use std::path::Path;

use stats_tests::FinalFourObservation;

use crate::CliError;

fn read_rows(path: &Path) -> Result<(Vec<String>, Vec<Vec<String>>), CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|err| CliError::Data(format!("{}: {err}", path.display())))?;
    let body = text
        .lines()
        .filter(|line| !line.trim().is_empty() && !line.trim_start().starts_with('#'))
        .collect::<Vec<_>>()
        .join("\n");
    let mut reader = csv::ReaderBuilder::new()
        .flexible(true)
        .from_reader(body.as_bytes());
    let header: Vec<String> = reader
        .headers()
        .map_err(|err| CliError::Data(format!("{}: {err}", path.display())))?
        .iter()
        .map(str::to_string)
        .collect();
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|err| CliError::Data(format!("{}: {err}", path.display())))?;
        rows.push(record.iter().map(str::to_string).collect());
    }
    if header.is_empty() {
        return Err(CliError::Data(format!("{}: no header row", path.display())));
    }
    Ok((header, rows))
}

fn column_index(path: &Path, header: &[String], name: &str) -> Result<usize, CliError> {
    header.iter().position(|h| h == name).ok_or_else(|| {
        CliError::Data(format!(
            "{}: no column '{name}' (header: {})",
            path.display(),
            header.join(", ")
        ))
    })
}

fn parse_cell(path: &Path, row: usize, name: &str, cell: &str) -> Result<f64, CliError> {
    cell.trim().parse::<f64>().map_err(|_| {
        CliError::Data(format!(
            "{}: row {row}, column '{name}': cannot parse '{cell}' as a number",
            path.display()
        ))
    })
}

fn cell<'a>(row_data: &'a [String], index: usize) -> &'a str {
    row_data.get(index).map_or("", |s| s.trim())
}

/// One numeric column; empty cells are skipped.
pub fn numeric_column(path: &Path, name: &str) -> Result<Vec<f64>, CliError> {
    let (header, rows) = read_rows(path)?;
    let index = column_index(path, &header, name)?;
    let mut values = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        let text = cell(row, index);
        if !text.is_empty() {
            values.push(parse_cell(path, i + 2, name, text)?);
        }
    }
    Ok(values)
}

/// Two aligned numeric columns; rows where either cell is empty are skipped.
pub fn paired_columns(path: &Path, x: &str, y: &str) -> Result<(Vec<f64>, Vec<f64>), CliError> {
    let (header, rows) = read_rows(path)?;
    let xi = column_index(path, &header, x)?;
    let yi = column_index(path, &header, y)?;
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        let (xc, yc) = (cell(row, xi), cell(row, yi));
        if xc.is_empty() || yc.is_empty() {
            continue;
        }
        xs.push(parse_cell(path, i + 2, x, xc)?);
        ys.push(parse_cell(path, i + 2, y, yc)?);
    }
    Ok((xs, ys))
}

/// Several aligned numeric columns; rows with any empty listed cell are
/// skipped.
pub fn numeric_matrix(path: &Path, names: &[String]) -> Result<Vec<Vec<f64>>, CliError> {
    let (header, rows) = read_rows(path)?;
    let indices = names
        .iter()
        .map(|name| column_index(path, &header, name))
        .collect::<Result<Vec<_>, _>>()?;
    let mut matrix = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        if indices.iter().any(|&idx| cell(row, idx).is_empty()) {
            continue;
        }
        let mut out = Vec::with_capacity(indices.len());
        for (&idx, name) in indices.iter().zip(names) {
            out.push(parse_cell(path, i + 2, name, cell(row, idx))?);
        }
        matrix.push(out);
    }
    Ok(matrix)
}

/// One numeric column plus its labels (row positions when no label column
/// is named). Rows with an empty value cell are skipped.
pub fn labelled_column(
    path: &Path,
    value: &str,
    label: Option<&str>,
) -> Result<(Vec<f64>, Vec<String>), CliError> {
    let (header, rows) = read_rows(path)?;
    let vi = column_index(path, &header, value)?;
    let li = label.map(|name| column_index(path, &header, name)).transpose()?;
    let mut values = Vec::new();
    let mut labels = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        let text = cell(row, vi);
        if text.is_empty() {
            continue;
        }
        values.push(parse_cell(path, i + 2, value, text)?);
        labels.push(match li {
            Some(idx) => cell(row, idx).to_string(),
            None => (values.len()).to_string(),
        });
    }
    Ok((values, labels))
}

/// Final-four rows: four participant columns, the winner listed first.
/// Team names are assigned dense ids in order of first appearance.
pub fn final_four_observations(
    path: &Path,
    names: &[String],
) -> Result<Vec<FinalFourObservation>, CliError> {
    if names.len() != 4 {
        return Err(CliError::Usage(format!(
            "multinomial needs exactly 4 columns, got {}",
            names.len()
        )));
    }
    let (header, rows) = read_rows(path)?;
    let indices = names
        .iter()
        .map(|name| column_index(path, &header, name))
        .collect::<Result<Vec<_>, _>>()?;
    let mut ids: HashMap<String, u32> = HashMap::new();
    let mut observations = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        let mut participants = [0u32; 4];
        for (slot, &idx) in indices.iter().enumerate() {
            let team = cell(row, idx);
            if team.is_empty() {
                return Err(CliError::Data(format!(
                    "{}: row {}, column '{}': empty team name",
                    path.display(),
                    i + 2,
                    names[slot]
                )));
            }
            let next = ids.len() as u32;
            participants[slot] = *ids.entry(team.to_string()).or_insert(next);
        }
        observations.push(FinalFourObservation {
            participants,
            winner: participants[0],
        });
    }
    Ok(observations)
}
