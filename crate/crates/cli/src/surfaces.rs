use chandist::channel::in_tetrahedron;
use chandist::{choi_map_distances, d_t_pauli_iso, entropic_divergence_pauli_closed, PauliChannel};
use rayon::prelude::*;
use serde_json::json;

use crate::output::{emit, pretty, Cell, Table};
use crate::{check_unit_open, CliError, Ctx, Format};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Center {
    /// The completely depolarizing channel, c = (0, 0, 0).
    Depolarizing0,
    /// The identity channel, c = (1, 1, 1).
    Identity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum SurfaceMeasure {
    #[value(name = "d_t_iso")]
    DtIso,
    #[value(name = "d_t_K1")]
    DtK1,
}

#[derive(Debug, clap::Args)]
pub struct TetraArgs {
    #[arg(long, value_enum, default_value = "depolarizing0")]
    center: Center,
    #[arg(long, value_enum, default_value = "d_t_iso")]
    measure: SurfaceMeasure,
    /// Level to extract; repeatable. Defaults depend on center and measure.
    #[arg(long = "radius")]
    radii: Vec<f64>,
    /// Lattice points per axis.
    #[arg(long, default_value_t = 41)]
    grid: usize,
    /// Half-width of the band |d - r| kept for each level.
    #[arg(long, default_value_t = 0.01)]
    band_width: f64,
    /// Emit every lattice point inside the tetrahedron, not only band members.
    #[arg(long)]
    all: bool,
}

pub fn default_radii(center: Center, measure: SurfaceMeasure) -> Vec<f64> {
    match (center, measure) {
        (Center::Identity, _) => vec![0.8, 0.6, 0.4, 0.2],
        (Center::Depolarizing0, SurfaceMeasure::DtIso) => vec![0.56, 0.42, 0.28, 0.14],
        (Center::Depolarizing0, SurfaceMeasure::DtK1) => vec![0.4, 0.3, 0.2, 0.1],
    }
}

pub fn run_tetra(ctx: &Ctx, args: &TetraArgs) -> Result<(), CliError> {
    if !(2..=256).contains(&args.grid) {
        return Err(CliError::Schema(format!("grid must lie in [2, 256], got {}", args.grid)));
    }
    if !(args.band_width > 0.0) {
        return Err(CliError::Schema(format!("band width must be positive, got {}", args.band_width)));
    }
    let radii = if args.radii.is_empty() { default_radii(args.center, args.measure) } else { args.radii.clone() };
    for &r in &radii {
        check_unit_open("radius", r)?;
    }
    let center = match args.center {
        Center::Depolarizing0 => PauliChannel::depolarizing(1.0)?,
        Center::Identity => PauliChannel::identity(),
    };
    let n = args.grid;
    let coord = |i: usize| -1.0 + 2.0 * i as f64 / (n - 1) as f64;
    let rows: Vec<([f64; 3], f64)> = (0..n * n * n)
        .into_par_iter()
        .filter_map(|idx| {
            let c = [coord(idx / (n * n)), coord((idx / n) % n), coord(idx % n)];
            if !in_tetrahedron(&c) {
                return None;
            }
            let p = PauliChannel::from_c(c).ok()?;
            let d = match args.measure {
                SurfaceMeasure::DtIso => d_t_pauli_iso(&p, &center),
                SurfaceMeasure::DtK1 => entropic_divergence_pauli_closed(&p, &center).value,
            };
            Some((c, d))
        })
        .collect();

    let mut t = Table::new(vec!["c1", "c2", "c3", "distance", "level"]);
    for (c, d) in rows {
        let level = radii
            .iter()
            .filter(|&&r| (d - r).abs() <= args.band_width)
            .min_by(|a, b| (d - **a).abs().total_cmp(&(d - **b).abs()));
        if level.is_none() && !args.all {
            continue;
        }
        t.push(vec![c[0].into(), c[1].into(), c[2].into(), d.into(), level.map_or(Cell::Empty, |&r| Cell::Num(r))]);
    }
    let text = match ctx.format_or(Format::Csv) {
        Format::Csv => t.to_csv(),
        Format::Json => pretty(&t.to_json()),
    };
    emit(ctx.out.as_deref(), &text)
}

#[derive(Debug, clap::Args)]
pub struct TeleportArgs {
    /// Number of equally spaced noise strengths on [0, 1].
    #[arg(long, default_value_t = 101)]
    x_grid: usize,
}

pub struct TeleportRow {
    pub x: f64,
    pub dtiso: [f64; 3],
    pub trace: [f64; 3],
    pub dt_k1: f64,
}

/// Distances for pairs (pf, I), (pf, D), (I, D) at noise strength x.
pub fn teleport_row(x: f64) -> Result<TeleportRow, CliError> {
    let pf = PauliChannel::phase_flip(x)?;
    let id = PauliChannel::identity();
    let dep = PauliChannel::depolarizing(x)?;
    let pairs = [(pf, id), (pf, dep), (id, dep)];
    let mut dtiso = [0.0; 3];
    let mut trace = [0.0; 3];
    for (i, (a, b)) in pairs.iter().enumerate() {
        dtiso[i] = d_t_pauli_iso(a, b);
        trace[i] = choi_map_distances(a, b)?.trace;
    }
    let dt_k1 = entropic_divergence_pauli_closed(&id, &dep).value;
    Ok(TeleportRow { x, dtiso, trace, dt_k1 })
}

const EQUAL_TOL: f64 = 1e-12;

/// d_iso(pf,I) < d_iso(pf,D) < d_iso(I,D) and T(pf,D) = T(pf,I) < T(I,D).
pub fn orderings_hold(r: &TeleportRow) -> (bool, bool) {
    let iso = r.dtiso[0] < r.dtiso[1] && r.dtiso[1] < r.dtiso[2];
    let tr = (r.trace[1] - r.trace[0]).abs() <= EQUAL_TOL && r.trace[0] < r.trace[2];
    (iso, tr)
}

pub fn run_teleport(ctx: &Ctx, args: &TeleportArgs) -> Result<(), CliError> {
    if args.x_grid < 2 {
        return Err(CliError::Schema(format!("x grid needs at least 2 points, got {}", args.x_grid)));
    }
    let n = args.x_grid;
    let rows: Vec<TeleportRow> =
        (0..n).into_par_iter().map(|i| teleport_row(i as f64 / (n - 1) as f64)).collect::<Result<_, _>>()?;

    let mut t = Table::new(vec!["x", "dtiso_pf_I", "dtiso_pf_D", "dtiso_I_D", "T_pf_I", "T_pf_D", "T_I_D", "dtK1"]);
    let (mut iso_ok, mut tr_ok) = (true, true);
    for r in &rows {
        if r.x > 0.0 {
            let (a, b) = orderings_hold(r);
            iso_ok &= a;
            tr_ok &= b;
        }
        let mut row = vec![Cell::Num(r.x)];
        row.extend(r.dtiso.iter().chain(&r.trace).map(|&v| Cell::Num(v)));
        row.push(Cell::Num(r.dt_k1));
        t.push(row);
    }
    let text = match ctx.format_or(Format::Csv) {
        Format::Csv => t.to_csv(),
        Format::Json => pretty(&json!({
            "rows": t.to_json(),
            "ordering_dtiso": iso_ok,
            "ordering_trace": tr_ok,
        })),
    };
    emit(ctx.out.as_deref(), &text)?;
    eprintln!("ordering d_t_iso(pf,I) < d_t_iso(pf,D) < d_t_iso(I,D) for x > 0: {iso_ok}");
    eprintln!("ordering T(pf,D) = T(pf,I) < T(I,D) for x > 0: {tr_ok}");
    if iso_ok && tr_ok {
        Ok(())
    } else {
        Err(CliError::Check("noise orderings violated".into()))
    }
}
