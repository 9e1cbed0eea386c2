//! Execution mode for the data-parallel hot loops.
//!
//! With the `parallel` feature (default) [`Mode::Parallel`] fans work out on
//! the rayon pool; without it, or with [`Mode::Sequential`], everything runs
//! on the calling thread. Results are collected in input order either way.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
pub enum Mode {
    Sequential,
    #[default]
    Parallel,
}

impl Mode {
    pub fn available() -> bool {
        cfg!(feature = "parallel")
    }
}

pub fn par_map<T, R, F>(mode: Mode, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if mode == Mode::Parallel {
        use rayon::prelude::*;
        return items.par_iter().map(&f).collect();
    }
    let _ = mode;
    items.iter().map(f).collect()
}
