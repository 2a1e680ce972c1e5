//! Execution settings shared by the enumeration kernels.

use crate::error::{Error, Result};
use std::sync::atomic::{AtomicUsize, Ordering};

/// Environment variable consulted for the default cell cap.
pub const MAX_CELLS_ENV: &str = "CUBIX_MAX_CELLS";
pub const DEFAULT_MAX_CELLS: usize = 2_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Config {
    pub exec: Exec,
    pub max_cells: usize,
    /// Validate cubical identities when building sets.
    pub validate: bool,
}

impl Default for Config {
    fn default() -> Self {
        let max_cells = std::env::var(MAX_CELLS_ENV)
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .unwrap_or(DEFAULT_MAX_CELLS);
        Config {
            exec: Exec::default(),
            max_cells,
            validate: true,
        }
    }
}

impl Config {
    pub fn sequential() -> Self {
        Config {
            exec: Exec::Sequential,
            ..Config::default()
        }
    }

    pub fn with_exec(mut self, exec: Exec) -> Self {
        self.exec = exec;
        self
    }

    pub fn with_max_cells(mut self, n: usize) -> Self {
        self.max_cells = n;
        self
    }

    pub fn check(&self, what: &str, n: usize) -> Result<()> {
        if n > self.max_cells {
            Err(Error::Resource {
                what: what.to_string(),
                bound: self.max_cells,
            })
        } else {
            Ok(())
        }
    }
}

/// Shared counter that trips once the cap is reached.
pub(crate) struct Budget<'a> {
    used: AtomicUsize,
    cfg: &'a Config,
    what: &'a str,
}

impl<'a> Budget<'a> {
    pub fn new(cfg: &'a Config, what: &'a str) -> Self {
        Budget {
            used: AtomicUsize::new(0),
            cfg,
            what,
        }
    }

    pub fn take(&self, n: usize) -> Result<()> {
        let prev = self.used.fetch_add(n, Ordering::Relaxed);
        self.cfg.check(self.what, prev + n)
    }
}

/// Map `f` over `items`, preserving order.
pub fn map_ordered<T, R, F>(exec: Exec, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Exec::Parallel => {
            use rayon::prelude::*;
            items.par_iter().map(f).collect()
        }
        _ => items.iter().map(f).collect(),
    }
}

/// Run `a` and `b`, concurrently under [`Exec::Parallel`].
pub fn join<A, B, RA, RB>(exec: Exec, a: A, b: B) -> (RA, RB)
where
    A: FnOnce() -> RA + Send,
    B: FnOnce() -> RB + Send,
    RA: Send,
    RB: Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Exec::Parallel => rayon::join(a, b),
        _ => (a(), b()),
    }
}

/// Like [`map_ordered`] for fallible work; the first error in order wins.
pub fn try_map_ordered<T, R, F>(exec: Exec, items: &[T], f: F) -> Result<Vec<R>>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> Result<R> + Sync + Send,
{
    map_ordered(exec, items, f).into_iter().collect()
}
