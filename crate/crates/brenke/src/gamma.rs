//! Parallel γ tables.

use brenke_core::zetacoeffs::{piece_moments, table_from_moments, QuadratureParams, ZetaCoefficientTable};
use rayon::prelude::*;

use crate::error::{AppError, Result};

fn pool(jobs: Option<usize>) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()
        .map_err(|e| AppError::Usage(format!("thread pool: {e}")))
}

/// `γ_0 … γ_N` at `bits` bits. Pieces are integrated in parallel and summed in
/// piece order, so the result does not depend on `jobs`.
pub fn parallel_gamma_table(n_max: usize, bits: u32, jobs: Option<usize>) -> Result<ZetaCoefficientTable> {
    if bits < 64 {
        return Err(brenke_core::Error::InvalidParameter("at least 64 bits are required".into()).into());
    }
    let params = QuadratureParams::for_bits(bits);
    let pieces = pool(jobs)?.install(|| {
        (0..params.piece_count())
            .into_par_iter()
            .map(|i| piece_moments(&params, i, n_max))
            .collect::<brenke_core::Result<Vec<_>>>()
    })?;
    Ok(table_from_moments(&params, &pieces, n_max)?)
}

/// Runs `f` on a pool with `jobs` threads (all cores when `None`).
pub fn with_jobs<R: Send>(jobs: Option<usize>, f: impl FnOnce() -> R + Send) -> Result<R> {
    Ok(pool(jobs)?.install(f))
}
