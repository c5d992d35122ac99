//! Point-set and matrix file ingestion.
//!
//! The point-set text format: one point per line, coordinates whitespace
//! separated, each either `p/q` (integers, `q != 0`) or a decimal literal
//! parsed exactly (`0.25` -> 1/4). Blank lines and `#` comments are ignored
//! and every data line must have the same arity.

use thiserror::Error;

use tricensus::float::FloatConfig;
use tricensus::geometry::{GeometryError, Point, PointConfig, SquaredDistanceMatrix};
use tricensus::rat::{parse_rational, rat_to_f64};

#[derive(Debug, Error, PartialEq)]
pub enum PointFileError {
    #[error("line {line}: expected {expected} coordinates, got {got}")]
    RaggedArity {
        line: usize,
        expected: usize,
        got: usize,
    },
    #[error("line {line}: malformed coordinate literal {token:?}")]
    MalformedLiteral { line: usize, token: String },
    #[error("line {line}: duplicate of the point first given on line {first_line}")]
    DuplicatePoint { line: usize, first_line: usize },
    #[error("input contains no points")]
    EmptyInput,
}

impl PointFileError {
    /// Each ingestion failure mode has its own exit code.
    pub fn exit_code(&self) -> u8 {
        match self {
            PointFileError::RaggedArity { .. } => 10,
            PointFileError::MalformedLiteral { .. } => 11,
            PointFileError::DuplicatePoint { .. } => 12,
            PointFileError::EmptyInput => 13,
        }
    }
}

/// Parses the point-set text format into an exact configuration.
pub fn parse_point_file(text: &str) -> Result<PointConfig, PointFileError> {
    let mut rows: Vec<(usize, Point)> = Vec::new();
    let mut arity: Option<usize> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.is_empty() {
            continue;
        }
        if let Some(expected) = arity {
            if tokens.len() != expected {
                return Err(PointFileError::RaggedArity {
                    line: line_no,
                    expected,
                    got: tokens.len(),
                });
            }
        } else {
            arity = Some(tokens.len());
        }
        let mut coords = Vec::with_capacity(tokens.len());
        for token in tokens {
            let value = parse_rational(token).ok_or_else(|| PointFileError::MalformedLiteral {
                line: line_no,
                token: token.to_string(),
            })?;
            coords.push(value);
        }
        let point = Point::new(coords).expect("nonempty coordinate list");
        if let Some((first_line, _)) = rows.iter().find(|(_, p)| *p == point) {
            return Err(PointFileError::DuplicatePoint {
                line: line_no,
                first_line: *first_line,
            });
        }
        rows.push((line_no, point));
    }
    if rows.is_empty() {
        return Err(PointFileError::EmptyInput);
    }
    let points = rows.into_iter().map(|(_, p)| p).collect();
    Ok(PointConfig::new(points).expect("validated line by line"))
}

#[derive(Debug, Error, PartialEq)]
pub enum FloatParseError {
    #[error(transparent)]
    Point(#[from] PointFileError),
    #[error("a coordinate does not fit the double range")]
    OutOfRange,
}

/// Parses a point file and rounds the exact coordinates to doubles.
/// Coordinates beyond the double range are rejected.
pub fn parse_point_file_float(text: &str) -> Result<FloatConfig, FloatParseError> {
    let cfg = parse_point_file(text)?;
    let coords: Vec<f64> = cfg
        .points()
        .iter()
        .flat_map(|p| p.coords().iter().map(rat_to_f64))
        .collect();
    if coords.iter().any(|c| !c.is_finite()) {
        return Err(FloatParseError::OutOfRange);
    }
    Ok(FloatConfig::new(cfg.n_points(), cfg.ambient_dim(), coords)
        .expect("shape validated by the exact parse"))
}

/// Reads a squared-distance matrix for `realize`.
///
/// The native format (a count line followed by the upper triangle) is
/// detected by its single-token first line; a point-set file is accepted
/// too and converted through its exact distance matrix, so `construct`
/// output can be piped straight in. A file that fails the native parse is
/// retried as points (a one-dimensional point file also starts with a
/// single integer), and the native error wins if both readings fail.
pub fn parse_matrix_input(text: &str) -> Result<SquaredDistanceMatrix, String> {
    let first_data_line = text
        .lines()
        .map(|l| match l.find('#') {
            Some(pos) => &l[..pos],
            None => l,
        })
        .find(|l| l.split_whitespace().next().is_some());
    let looks_like_matrix = first_data_line
        .map(|l| {
            let tokens: Vec<&str> = l.split_whitespace().collect();
            tokens.len() == 1 && tokens[0].parse::<usize>().is_ok()
        })
        .unwrap_or(false);
    let as_points = |primary_error: Option<String>| -> Result<SquaredDistanceMatrix, String> {
        let cfg = match parse_point_file(text) {
            Ok(cfg) => cfg,
            Err(e) => return Err(primary_error.unwrap_or_else(|| e.to_string())),
        };
        if cfg.n_points() < 2 {
            return Err(primary_error
                .unwrap_or_else(|| "a distance matrix needs at least 2 points".into()));
        }
        Ok(tricensus::geometry::distance_matrix(&cfg))
    };
    if looks_like_matrix {
        match SquaredDistanceMatrix::parse_text(text) {
            Ok(matrix) => Ok(matrix),
            Err(e) => as_points(Some(e.to_string())),
        }
    } else {
        as_points(None)
    }
}

/// Renders a configuration in the point-set text format, exact rationals.
pub fn format_point_config(cfg: &PointConfig) -> String {
    let mut out = String::new();
    for point in cfg.points() {
        let row: Vec<String> = point
            .coords()
            .iter()
            .map(tricensus::rat::format_rat)
            .collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// Renders a floating configuration in the point-set text format.
pub fn format_float_config(cfg: &FloatConfig) -> String {
    let mut out = String::new();
    for i in 0..cfg.n_points() {
        let row: Vec<String> = cfg.point(i).iter().map(|c| format!("{c}")).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// Maps core geometry errors from direct construction paths onto strings
/// suitable for stderr.
pub fn describe_geometry_error(err: &GeometryError) -> String {
    err.to_string()
}
