//! Deterministic chunked Monte Carlo.
//!
//! The replication index space `0..R` is cut into chunks of `chunk_size`.
//! Chunk `c` draws from its own ChaCha8 stream, seeded with the plan seed and
//! selected with `set_stream(c)`. Replication `r` therefore always sees the
//! same noise vector regardless of how many worker threads run or in what
//! order chunks finish, and callers that evaluate several tests or several
//! alternatives on one draw get common random numbers for free.
//!
//! Gaussian variates come from `rand_distr::StandardNormal` (ziggurat). The
//! crate version is pinned in the workspace manifest.

use std::fmt;
use std::sync::Arc;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::error::{Error, Result};

pub const DEFAULT_CHUNK_SIZE: usize = 512;

type DrawFn = dyn Fn(&mut dyn RngCore) -> f64 + Send + Sync;

/// Law of the noise ε_i.
#[derive(Clone, Default)]
pub enum ErrorSampler {
    #[default]
    StandardNormal,
    /// Any symmetric law, for exploratory runs. None of the calibration
    /// theory is claimed for it.
    CustomSymmetric { label: String, draw: Arc<DrawFn> },
}

impl ErrorSampler {
    pub fn custom<F>(label: impl Into<String>, draw: F) -> Self
    where
        F: Fn(&mut dyn RngCore) -> f64 + Send + Sync + 'static,
    {
        ErrorSampler::CustomSymmetric { label: label.into(), draw: Arc::new(draw) }
    }

    pub fn label(&self) -> &str {
        match self {
            ErrorSampler::StandardNormal => "standard_normal",
            ErrorSampler::CustomSymmetric { label, .. } => label,
        }
    }

    #[inline]
    fn fill(&self, rng: &mut ChaCha8Rng, buf: &mut [f64]) {
        match self {
            ErrorSampler::StandardNormal => {
                for v in buf.iter_mut() {
                    *v = rng.sample(StandardNormal);
                }
            }
            ErrorSampler::CustomSymmetric { draw, .. } => {
                for v in buf.iter_mut() {
                    *v = draw(rng);
                }
            }
        }
    }
}

impl fmt::Debug for ErrorSampler {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Replication count, seed and chunking of one Monte-Carlo run.
#[derive(Debug, Clone)]
pub struct MonteCarloPlan {
    pub replications: usize,
    pub seed: u64,
    pub chunk_size: usize,
    pub sampler: ErrorSampler,
}

impl MonteCarloPlan {
    pub fn new(replications: usize, seed: u64) -> Self {
        MonteCarloPlan {
            replications,
            seed,
            chunk_size: DEFAULT_CHUNK_SIZE,
            sampler: ErrorSampler::StandardNormal,
        }
    }

    pub fn with_chunk_size(mut self, chunk_size: usize) -> Self {
        self.chunk_size = chunk_size;
        self
    }

    pub fn with_sampler(mut self, sampler: ErrorSampler) -> Self {
        self.sampler = sampler;
        self
    }

    pub fn with_seed(&self, seed: u64) -> Self {
        MonteCarloPlan { seed, ..self.clone() }
    }

    pub fn with_replications(&self, replications: usize) -> Self {
        MonteCarloPlan { replications, ..self.clone() }
    }

    pub fn validate(&self) -> Result<()> {
        if self.replications == 0 {
            return Err(Error::config("replications must be at least 1"));
        }
        if self.chunk_size == 0 {
            return Err(Error::config("chunk size must be at least 1"));
        }
        Ok(())
    }

    pub fn n_chunks(&self) -> usize {
        self.replications.div_ceil(self.chunk_size)
    }

    fn chunk_rng(&self, chunk: usize) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(chunk as u64);
        rng
    }
}

/// Draw `plan.replications` noise vectors of length `d` and map each through
/// `f`. Results come back in replication order.
///
/// `f` receives the noise vector and the replication index. It may keep
/// per-chunk scratch state created by `init`.
pub fn run_chunked<S, T, I, F>(plan: &MonteCarloPlan, d: usize, init: I, f: F) -> Result<Vec<T>>
where
    T: Send,
    I: Fn() -> S + Sync,
    F: Fn(&mut S, &[f64], usize) -> T + Sync,
{
    plan.validate()?;
    let chunks: Vec<Vec<T>> = (0..plan.n_chunks())
        .into_par_iter()
        .map(|c| {
            let start = c * plan.chunk_size;
            let end = (start + plan.chunk_size).min(plan.replications);
            let mut rng = plan.chunk_rng(c);
            let mut state = init();
            let mut eps = vec![0.0; d];
            let mut out = Vec::with_capacity(end - start);
            for r in start..end {
                plan.sampler.fill(&mut rng, &mut eps);
                out.push(f(&mut state, &eps, r));
            }
            out
        })
        .collect();
    Ok(chunks.into_iter().flatten().collect())
}

/// Like [`run_chunked`] but folds each chunk into an accumulator and merges
/// the accumulators in chunk order.
pub fn fold_chunked<A, I, F, M>(plan: &MonteCarloPlan, d: usize, init: I, f: F, merge: M) -> Result<A>
where
    A: Send,
    I: Fn() -> A + Sync,
    F: Fn(&mut A, &[f64], usize) + Sync,
    M: Fn(A, A) -> A,
{
    plan.validate()?;
    let parts: Vec<A> = (0..plan.n_chunks())
        .into_par_iter()
        .map(|c| {
            let start = c * plan.chunk_size;
            let end = (start + plan.chunk_size).min(plan.replications);
            let mut rng = plan.chunk_rng(c);
            let mut acc = init();
            let mut eps = vec![0.0; d];
            for r in start..end {
                plan.sampler.fill(&mut rng, &mut eps);
                f(&mut acc, &eps, r);
            }
            acc
        })
        .collect();
    let mut it = parts.into_iter();
    let first = it.next().ok_or_else(|| Error::Internal("no chunks".into()))?;
    Ok(it.fold(first, merge))
}

/// Run `f` inside a dedicated rayon pool with `workers` threads.
pub fn with_workers<R, F>(workers: usize, f: F) -> Result<R>
where
    R: Send,
    F: FnOnce() -> R + Send,
{
    if workers == 0 {
        return Err(Error::config("worker count must be at least 1"));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::config(format!("cannot build thread pool: {e}")))?;
    Ok(pool.install(f))
}

/// 1-based index k = ⌈R(1−α)⌉ of the order statistic used as an empirical
/// (1−α)-quantile. A relative slack of 1e-9 absorbs binary rounding of R(1−α).
pub fn upper_order_index(replications: usize, alpha: f64) -> usize {
    let x = replications as f64 * (1.0 - alpha);
    let k = (x - 1e-9 * x.max(1.0)).ceil() as usize;
    k.clamp(1, replications)
}

/// The k-th smallest value (1-based), partially reordering `values`.
pub fn order_statistic(values: &mut [f64], k: usize) -> f64 {
    debug_assert!(k >= 1 && k <= values.len());
    let (_, v, _) = values.select_nth_unstable_by(k - 1, |a, b| a.total_cmp(b));
    *v
}
