// Copyright 2026 The pulseforge Authors
// SPDX-License-Identifier: Apache-2.0

//! Grid evaluation with an optional rayon backend.
//!
//! Without the `parallel` feature every strategy runs sequentially. Results
//! always come back in input order.

use std::num::NonZeroUsize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

impl Execution {
    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Execution::Parallel => {
                use rayon::prelude::*;
                items.par_iter().map(f).collect()
            }
            _ => items.iter().map(f).collect(),
        }
    }

    pub fn try_map<T, R, F>(self, items: &[T], f: F) -> Result<Vec<R>>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> Result<R> + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Execution::Parallel => {
                use rayon::prelude::*;
                items.par_iter().map(f).collect()
            }
            _ => items.iter().map(f).collect(),
        }
    }
}

/// Runs `op` with parallel sweeps capped at `threads` workers.
///
/// `None` uses the global pool. Without the `parallel` feature the cap is
/// accepted and ignored.
pub fn with_thread_cap<R, F>(threads: Option<NonZeroUsize>, op: F) -> Result<R>
where
    R: Send,
    F: FnOnce() -> R + Send,
{
    match threads {
        None => Ok(op()),
        #[cfg(feature = "parallel")]
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n.get())
                .build()
                .map_err(|e| Error::InvalidGrid(format!("thread pool: {e}")))?;
            Ok(pool.install(op))
        }
        #[cfg(not(feature = "parallel"))]
        Some(_) => Ok(op()),
    }
}

/// Parses a positive thread count, as read from `PULSEFORGE_THREADS`.
pub fn parse_thread_cap(value: &str) -> Result<NonZeroUsize> {
    value
        .trim()
        .parse::<NonZeroUsize>()
        .map_err(|_| Error::InvalidGrid(format!("thread cap must be a positive integer, got '{value}'")))
}
