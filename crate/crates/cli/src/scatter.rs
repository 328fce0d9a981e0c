use chandist::channel::random_pauli_with;
use chandist::map_bounds_report;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

use crate::output::{emit, pretty, Cell, Table};
use crate::{CliError, Ctx, Format};

#[derive(Debug, clap::Args)]
pub struct Args {
    #[arg(long, default_value_t = 1000)]
    n_pairs: usize,
}

#[derive(Debug, Default, PartialEq, Eq)]
pub struct SideCounts {
    /// √T below D_E.
    pub sqrt_t_tighter: usize,
    pub de_tighter: usize,
    pub equal: usize,
}

pub fn run(ctx: &Ctx, args: &Args) -> Result<(), CliError> {
    if args.n_pairs == 0 {
        return Err(CliError::Schema("n_pairs must be at least 1".into()));
    }
    // Draw sequentially so the pairs depend only on the seed.
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
    let pairs: Vec<_> = (0..args.n_pairs).map(|_| (random_pauli_with(&mut rng), random_pauli_with(&mut rng))).collect();
    let reports = pairs.par_iter().map(|(p, q)| map_bounds_report(p, q)).collect::<Result<Vec<_>, _>>()?;

    let mut t = Table::new(vec!["sqrtT", "DE", "dtiso"]);
    let mut counts = SideCounts::default();
    let mut violations = 0;
    for r in &reports {
        if r.d_t_iso > r.upper_sqrt_t.min(r.upper_de) + 1e-9 {
            violations += 1;
        }
        match r.upper_sqrt_t.total_cmp(&r.upper_de) {
            std::cmp::Ordering::Less => counts.sqrt_t_tighter += 1,
            std::cmp::Ordering::Greater => counts.de_tighter += 1,
            std::cmp::Ordering::Equal => counts.equal += 1,
        }
        t.push(vec![Cell::Num(r.upper_sqrt_t), Cell::Num(r.upper_de), Cell::Num(r.d_t_iso)]);
    }
    let text = match ctx.format_or(Format::Csv) {
        Format::Csv => t.to_csv(),
        Format::Json => pretty(&json!({
            "rows": t.to_json(),
            "sqrtT_below_DE": counts.sqrt_t_tighter,
            "DE_below_sqrtT": counts.de_tighter,
            "equal": counts.equal,
            "violations": violations,
        })),
    };
    emit(ctx.out.as_deref(), &text)?;
    eprintln!(
        "sqrtT < DE: {}, DE < sqrtT: {}, equal: {}, sandwich violations: {violations}",
        counts.sqrt_t_tighter, counts.de_tighter, counts.equal
    );
    if violations > 0 {
        return Err(CliError::Check(format!("{violations} rows exceed min(sqrtT, DE)")));
    }
    Ok(())
}
