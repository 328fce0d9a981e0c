use std::f64::consts::{FRAC_PI_2, PI};

use chandist::hamiltonian::{optimal_time_scan, TimeMeasure, TimeScan};
use serde_json::json;

use crate::output::{emit, pretty, Cell, Table};
use crate::{check_theta, CliError, Ctx, Format};

#[derive(Debug, clap::Args)]
pub struct Args {
    /// Angle between the two Hamiltonian axes.
    #[arg(long, default_value_t = FRAC_PI_2)]
    theta: f64,
    /// Decoherence rates, comma separated.
    #[arg(long = "gamma", value_delimiter = ',', default_values_t = [0.0, 0.25, 0.5, 1.0, 2.0])]
    gammas: Vec<f64>,
    /// Time points t_max·i/n for i = 1..n.
    #[arg(long, default_value_t = 512)]
    t_points: usize,
    #[arg(long, default_value_t = PI)]
    t_max: f64,
}

const MEASURES: [(TimeMeasure, &str); 4] = [
    (TimeMeasure::DtIso, "d_t_iso"),
    (TimeMeasure::DtK1, "d_t_K1"),
    (TimeMeasure::Bures, "D_B"),
    (TimeMeasure::PError, "p_error"),
];

/// The error probability refers to the orthogonal-axes setup only.
pub fn error_probability_applies(theta: f64) -> bool {
    (theta - FRAC_PI_2).abs() <= 1e-12
}

pub fn run(ctx: &Ctx, args: &Args) -> Result<(), CliError> {
    let theta = check_theta(args.theta)?;
    if args.t_points == 0 || !(args.t_max > 0.0) {
        return Err(CliError::Schema("time grid needs t_points >= 1 and t_max > 0".into()));
    }
    if let Some(&g) = args.gammas.iter().find(|g| !(**g >= 0.0)) {
        return Err(CliError::Schema(format!("gamma must be nonnegative, got {g}")));
    }
    let grid: Vec<f64> = (1..=args.t_points).map(|i| args.t_max * i as f64 / args.t_points as f64).collect();
    let with_error = error_probability_applies(theta);

    let mut rows = Table::new(vec!["gamma", "t", "d_t_iso", "d_t_K1", "D_B", "p_error"]);
    let mut summary = Table::new(vec!["gamma", "measure", "t_star", "value"]);
    for &gamma in &args.gammas {
        let scans: Vec<Option<TimeScan>> = MEASURES
            .iter()
            .map(|&(m, _)| {
                if m == TimeMeasure::PError && !with_error {
                    Ok(None)
                } else {
                    optimal_time_scan(theta, gamma, m, &grid).map(Some)
                }
            })
            .collect::<Result<_, _>>()?;
        for (i, &t) in grid.iter().enumerate() {
            let mut row = vec![Cell::Num(gamma), Cell::Num(t)];
            row.extend(scans.iter().map(|s| s.as_ref().map_or(Cell::Empty, |s| Cell::Num(s.curve[i].1))));
            rows.push(row);
        }
        for (scan, &(_, name)) in scans.iter().zip(&MEASURES) {
            if let Some(s) = scan {
                summary.push(vec![Cell::Num(gamma), Cell::Text(name.into()), Cell::Num(s.t_star), Cell::Num(s.value)]);
            }
        }
    }
    let text = match ctx.format_or(Format::Csv) {
        Format::Csv => format!("{}\n{}", rows.to_csv(), summary.to_csv()),
        Format::Json => pretty(&json!({ "theta": theta, "rows": rows.to_json(), "summary": summary.to_json() })),
    };
    emit(ctx.out.as_deref(), &text)
}
