use std::path::{Path, PathBuf};
use std::time::Instant;

use chandist::channel::schema::channel_from_json;
use chandist::metrics::{trace_divergence_k1_numeric, Argmax, Method};
use chandist::{
    choi_map_distances, d_t_iso, entropic_divergence_k, entropic_divergence_pauli_closed,
    trace_channel_divergence_unital, Channel, DivergenceOptions, QuantumChannel,
};
use serde_json::{json, Map, Value};

use crate::output::{emit, num, pretty, Cell, Table};
use crate::{CliError, Ctx, Format};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Measure {
    /// Transmission distance between the Choi states.
    #[value(name = "d_t_iso")]
    DtIso,
    /// Entropic channel divergence without a reference system (K = 1).
    #[value(name = "d_t_K1")]
    DtK1,
    /// Entropic channel divergence with a K-dimensional reference (see --k).
    #[value(name = "d_t_K")]
    DtK,
    /// Trace channel divergence with K = 1.
    #[value(name = "d_tr_K1")]
    DtrK1,
    /// Trace distance between the Choi states.
    #[value(name = "T_iso")]
    TIso,
    /// Fidelity between the Choi states.
    #[value(name = "F_iso")]
    FIso,
    /// Bures distance between the Choi states.
    #[value(name = "D_B_iso")]
    DbIso,
    /// Entropic distance between the Choi states.
    #[value(name = "D_E_iso")]
    DeIso,
}

impl Measure {
    fn name(self) -> &'static str {
        match self {
            Measure::DtIso => "d_t_iso",
            Measure::DtK1 => "d_t_K1",
            Measure::DtK => "d_t_K",
            Measure::DtrK1 => "d_tr_K1",
            Measure::TIso => "T_iso",
            Measure::FIso => "F_iso",
            Measure::DbIso => "D_B_iso",
            Measure::DeIso => "D_E_iso",
        }
    }
}

#[derive(Debug, clap::Args)]
pub struct Args {
    channel_a: PathBuf,
    channel_b: PathBuf,
    #[arg(long, value_enum, default_value = "d_t_iso")]
    measure: Measure,
    /// Reference dimension for d_t_K.
    #[arg(long, default_value_t = 1)]
    k: usize,
    /// Random restarts of the amplitude search (K > 1 or N > 2).
    #[arg(long, default_value_t = 32)]
    restarts: usize,
    /// Iteration cap for each simplex search.
    #[arg(long)]
    max_iters: Option<usize>,
}

pub struct Outcome {
    pub value: f64,
    pub method: &'static str,
    pub argmax: Option<Value>,
    pub converged: bool,
}

fn load(path: &Path) -> Result<Channel, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Schema(format!("{}: {e}", path.display())))?;
    channel_from_json(&text).map_err(|e| match CliError::from(e) {
        CliError::Schema(m) => CliError::Schema(format!("{}: {m}", path.display())),
        CliError::Invariant(m) => CliError::Invariant(format!("{}: {m}", path.display())),
        other => other,
    })
}

fn argmax_json(a: &Argmax) -> Value {
    match a {
        Argmax::State(psi) => {
            let amps = psi.amplitudes();
            json!({
                "re": amps.iter().map(|z| num(z.re)).collect::<Vec<_>>(),
                "im": amps.iter().map(|z| num(z.im)).collect::<Vec<_>>(),
            })
        }
        Argmax::Bloch(r) => json!({ "bloch": r.components().map(num) }),
        Argmax::Axes(axes) => json!({ "axes": axes.iter().map(|&i| ["x", "y", "z"][i]).collect::<Vec<_>>() }),
    }
}

fn method_name(m: Method) -> &'static str {
    match m {
        Method::ClosedForm => "closed_form",
        Method::GridRefine => "grid_refine",
    }
}

pub fn evaluate(a: &Channel, b: &Channel, measure: Measure, k: usize, opts: &DivergenceOptions) -> Result<Outcome, CliError> {
    let exact = |value: f64| Outcome { value, method: "exact", argmax: None, converged: true };
    let choi = || choi_map_distances(a, b);
    Ok(match measure {
        Measure::DtIso => exact(d_t_iso(a, b)?),
        Measure::TIso => exact(choi()?.trace),
        Measure::FIso => exact(choi()?.fidelity),
        Measure::DbIso => exact(choi()?.bures),
        Measure::DeIso => exact(choi()?.entropic),
        Measure::DtK1 | Measure::DtK => {
            let k = if measure == Measure::DtK1 { 1 } else { k };
            let r = match (k, a.as_pauli(), b.as_pauli()) {
                (1, Some(p), Some(q)) => entropic_divergence_pauli_closed(p, q),
                _ => entropic_divergence_k(a, b, k, opts)?,
            };
            Outcome {
                value: r.value,
                method: method_name(r.method),
                argmax: Some(argmax_json(&r.argmax)),
                converged: r.converged,
            }
        }
        Measure::DtrK1 => {
            if a.dim() == 2 && b.dim() == 2 && a.is_unital() && b.is_unital() {
                Outcome { value: trace_channel_divergence_unital(a, b)?, method: "closed_form", argmax: None, converged: true }
            } else {
                let r = trace_divergence_k1_numeric(a, b, opts)?;
                Outcome {
                    value: r.value,
                    method: method_name(r.method),
                    argmax: Some(argmax_json(&r.argmax)),
                    converged: r.converged,
                }
            }
        }
    })
}

pub fn run(ctx: &Ctx, args: &Args) -> Result<(), CliError> {
    let a = load(&args.channel_a)?;
    let b = load(&args.channel_b)?;
    if a.dim() != b.dim() {
        return Err(CliError::Schema(format!("channel dimensions differ: {} vs {}", a.dim(), b.dim())));
    }
    if args.k == 0 {
        return Err(CliError::Schema("--k must be at least 1".into()));
    }
    let mut opts = DivergenceOptions { seed: ctx.seed, restarts: args.restarts, ..DivergenceOptions::default() };
    if let Some(n) = args.max_iters {
        opts.refine_iters = n;
        opts.restart_iters = n;
    }
    let start = Instant::now();
    let outcome = evaluate(&a, &b, args.measure, args.k, &opts)?;
    let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;

    let text = match ctx.format_or(Format::Json) {
        Format::Json => {
            let mut obj = Map::new();
            obj.insert("measure".into(), args.measure.name().into());
            if args.measure == Measure::DtK {
                obj.insert("K".into(), args.k.into());
            }
            obj.insert("value".into(), num(outcome.value));
            obj.insert("method".into(), outcome.method.into());
            if let Some(arg) = &outcome.argmax {
                obj.insert("argmax".into(), arg.clone());
            }
            obj.insert("elapsed_ms".into(), num(elapsed_ms));
            pretty(&Value::Object(obj))
        }
        Format::Csv => {
            let mut t = Table::new(vec!["measure", "value", "method", "elapsed_ms"]);
            t.push(vec![
                Cell::Text(args.measure.name().into()),
                Cell::Num(outcome.value),
                Cell::Text(outcome.method.into()),
                Cell::Num(elapsed_ms),
            ]);
            t.to_csv()
        }
    };
    emit(ctx.out.as_deref(), &text)?;
    if outcome.converged {
        Ok(())
    } else {
        Err(CliError::NotConverged(format!("{} search hit its iteration limit", args.measure.name())))
    }
}
