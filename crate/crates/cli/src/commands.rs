//! Typed implementations of the subcommands; `main` only parses flags and
//! routes file contents here, so every behavior is exercisable in tests.

use thiserror::Error;

use tricensus::combinatorics::{
    enumerate_one_triangle_labelings, CombinatoricsError, TriangleType,
};
use tricensus::constructions::{construct, Family};
use tricensus::float::epsilon_census;
use tricensus::geometry::{census, CensusReport, TriangleKind};
use tricensus::rat::{format_rat, parse_rational, rat_to_f64};
use tricensus::realizability::{realize_coordinates, embedding_dimension, RealizabilityError};
use tricensus::search::{minimize_defect, SearchConfig};

use crate::input::{
    format_float_config, format_point_config, parse_matrix_input, parse_point_file,
    parse_point_file_float, PointFileError,
};
use crate::report::Report;
use crate::verify::{default_isosceles_grid, default_scalene_grid, grid_display, run_verify};

/// Exit codes: 0 success / PASS, 2 input format, 3 precondition violations,
/// 4 FAIL verdicts, 10-13 the point-file failure modes.
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_PRECONDITION: u8 = 3;
pub const EXIT_VERIFY_FAILED: u8 = 4;

#[derive(Debug, Error, PartialEq)]
pub enum CliError {
    #[error("{0}")]
    PointFile(#[from] PointFileError),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("{0}")]
    Precondition(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::PointFile(e) => e.exit_code(),
            CliError::Input(_) => EXIT_INPUT,
            CliError::Precondition(_) => EXIT_PRECONDITION,
        }
    }
}

pub struct CmdOutput {
    pub stdout: String,
    pub code: u8,
    /// Diagnostic for standard error when the exit code is nonzero.
    pub diagnostic: Option<String>,
}

impl CmdOutput {
    fn ok(stdout: String) -> Self {
        Self {
            stdout,
            code: 0,
            diagnostic: None,
        }
    }
}

fn precondition(msg: impl std::fmt::Display) -> CliError {
    CliError::Precondition(msg.to_string())
}

pub fn parse_kind(name: &str) -> Result<TriangleKind, CliError> {
    match name {
        "eq" | "equilateral" => Ok(TriangleKind::Equilateral),
        "iso" | "isosceles" => Ok(TriangleKind::Isosceles),
        "sca" | "scalene" => Ok(TriangleKind::Scalene),
        other => Err(precondition(format!(
            "unknown triangle type {other:?} (expected eq, iso or sca)"
        ))),
    }
}

fn push_census(report: &mut Report, census: &CensusReport, as_float: bool) {
    let value = |r: &tricensus::rat::Rat| -> String {
        if as_float {
            format!("{}", rat_to_f64(r))
        } else {
            format_rat(r)
        }
    };
    report.field("n-points", census.n_points);
    report.field("distinct-distances", census.distinct_distance_count());
    let values: Vec<String> = census.distinct_squared_distances.iter().map(&value).collect();
    report.field("squared-distance-values", format!("[{}]", values.join(", ")));
    report.field("triangle-classes", census.class_count());
    for (sig, mult) in &census.triangle_classes {
        let (a, b, c) = sig.sides();
        report.field(
            "class",
            format!(
                "({}, {}, {}) x{} kind={}",
                value(a),
                value(b),
                value(c),
                mult,
                sig.kind()
            ),
        );
    }
    report.field("degenerate-triples", census.degenerate_triples);
}

pub fn cmd_census(file_text: &str, eps: Option<f64>) -> Result<CmdOutput, CliError> {
    let eps_label = match eps {
        Some(e) => format!("eps={e:e}"),
        None => "eps=none".into(),
    };
    let mut report = Report::new("census", &[file_text, &eps_label]);
    match eps {
        None => {
            let cfg = parse_point_file(file_text)?;
            let result = census(&cfg).map_err(precondition)?;
            report.field("mode", "exact");
            report.field("ambient-dim", cfg.ambient_dim());
            push_census(&mut report, &result, false);
        }
        Some(eps) => {
            let cfg = parse_point_file_float(file_text).map_err(|e| match e {
                crate::input::FloatParseError::Point(p) => CliError::PointFile(p),
                out_of_range => precondition(out_of_range),
            })?;
            let result = epsilon_census(&cfg, eps).map_err(precondition)?;
            report.field("mode", "epsilon");
            report.field("eps", format!("{eps:e}"));
            report.field("ambient-dim", cfg.dim());
            push_census(&mut report, &result, true);
        }
    }
    Ok(CmdOutput::ok(report.render()))
}

pub fn cmd_realize(file_text: &str, dim: usize) -> Result<CmdOutput, CliError> {
    if dim < 1 {
        return Err(precondition("--dim must be at least 1"));
    }
    let matrix = parse_matrix_input(file_text).map_err(CliError::Input)?;
    let verdict = embedding_dimension(&matrix);
    let mut report = Report::new("realize", &[file_text, &format!("dim={dim}")]);
    report.field("n-points", matrix.n());
    report.field("psd", verdict.psd);
    report.field("rank", verdict.rank);
    report.field("min-embedding-dim", verdict.min_embedding_dim);
    match &verdict.witness {
        Some(v) => {
            let parts: Vec<String> = v.iter().map(format_rat).collect();
            report.field("witness", format!("[{}]", parts.join(", ")));
            let gram =
                tricensus::realizability::gram_from_squared_distances(&matrix, 0).expect("base 0");
            report.field("witness-value", format_rat(&gram.quadratic_form(v)));
        }
        None => {
            report.field("witness", "none");
        }
    }
    report.field("requested-dim", dim);
    match realize_coordinates(&matrix, dim) {
        Ok(realization) => {
            report.field("realizable-in-requested-dim", true);
            report.field(
                "max-rel-residual",
                format!("{:e}", realization.max_rel_residual),
            );
            report.field("coordinates", "");
            report.block(&format_float_config(&realization.config));
            Ok(CmdOutput::ok(report.render()))
        }
        Err(e @ RealizabilityError::NotRealizable { .. }) => {
            report.field("realizable-in-requested-dim", false);
            Ok(CmdOutput {
                stdout: report.render(),
                code: EXIT_PRECONDITION,
                diagnostic: Some(e.to_string()),
            })
        }
        Err(e) => Err(precondition(e)),
    }
}

pub fn cmd_enumerate(n: usize, type_name: &str) -> Result<CmdOutput, CliError> {
    let kind = parse_kind(type_name)?;
    let ty = TriangleType::new(kind);
    let result = enumerate_one_triangle_labelings(n, &ty).map_err(|e| match e {
        CombinatoricsError::VertexCountOutOfRange(_) => precondition(e),
        other => CliError::Input(other.to_string()),
    })?;
    let mut report = Report::new("enumerate", &[&format!("n={n}"), &format!("type={kind}")]);
    report.field("n", n);
    report.field("type", kind);
    report.field("count", result.count);
    for labeling in &result.representatives {
        report.field("representative", labeling.edge_list(&ty));
    }
    Ok(CmdOutput::ok(report.render()))
}

pub fn cmd_construct(family_name: &str, params_csv: &str) -> Result<CmdOutput, CliError> {
    let family = Family::from_name(family_name).ok_or_else(|| {
        precondition(format!(
            "unknown family {family_name:?} (expected simplex, rectangle, iso-tet or opp-edge-tet)"
        ))
    })?;
    let params: Vec<tricensus::rat::Rat> = params_csv
        .split(',')
        .map(|token| {
            parse_rational(token)
                .ok_or_else(|| precondition(format!("malformed parameter {token:?}")))
        })
        .collect::<Result<_, _>>()?;
    let cfg = construct(family, &params).map_err(precondition)?;
    let mut out = format!(
        "# tricensus construct family={} params={}\n",
        family.name(),
        params_csv
    );
    out.push_str(&format_point_config(&cfg));
    Ok(CmdOutput::ok(out))
}

#[allow(clippy::too_many_arguments)]
pub fn cmd_search(
    n: usize,
    dim: usize,
    restarts: usize,
    seed: u64,
    max_iters: usize,
    step: f64,
    shrink: f64,
    margin: f64,
) -> Result<CmdOutput, CliError> {
    let cfg = SearchConfig {
        n,
        dim,
        restarts,
        max_iters,
        seed,
        step_init: step,
        shrink,
        degeneracy_margin: margin,
    };
    let result = minimize_defect(&cfg).map_err(precondition)?;
    let digest = format!(
        "n={n} dim={dim} restarts={restarts} seed={seed} max-iters={max_iters} \
         step={step:e} shrink={shrink:e} margin={margin:e}"
    );
    let mut report = Report::new("search", &[&digest]);
    report.field("n", n);
    report.field("dim", dim);
    report.field("restarts", restarts);
    report.field("max-iters", max_iters);
    report.field("seed", seed);
    report.field("step-init", format!("{step:e}"));
    report.field("shrink", format!("{shrink:e}"));
    report.field("margin", format!("{margin:e}"));
    report.field("best-defect", format!("{:e}", result.best_defect));
    report.field("iterations-used", result.iterations_used);
    for record in &result.per_restart {
        report.field(
            "restart",
            format!("seed={} final-defect={:e}", record.seed, record.final_defect),
        );
    }
    report.field("best-configuration", "");
    report.block("# point-set format");
    report.block(&format_float_config(&result.best_config));
    Ok(CmdOutput::ok(report.render()))
}

pub fn cmd_verify(d_min: usize, d_max: usize) -> Result<CmdOutput, CliError> {
    let outcome = run_verify(d_min, d_max).map_err(precondition)?;
    let mut report = Report::new("verify", &[&format!("dmin={d_min} dmax={d_max}")]);
    report.field("dmin", d_min);
    report.field("dmax", d_max);
    report.field("grid-isosceles", grid_display(&default_isosceles_grid()));
    report.field("grid-scalene", grid_display(&default_scalene_grid()));
    for record in &outcome.records {
        report.field("row", record);
    }
    report.field("verdict", if outcome.pass { "PASS" } else { "FAIL" });
    Ok(CmdOutput {
        stdout: report.render(),
        code: if outcome.pass { 0 } else { EXIT_VERIFY_FAILED },
        diagnostic: (!outcome.pass).then(|| "verification failed".to_string()),
    })
}
