//! Sequential or data-parallel execution of independent work items.

use std::str::FromStr;

use crate::error::Error;

/// How independent tasks (discriminants, candidate branches) are run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Execution {
    #[default]
    Sequential,
    /// Rayon pool with the given number of workers (`0` = rayon default).
    /// Falls back to sequential when the `parallel` feature is off.
    Parallel(usize),
}

impl Execution {
    /// Reads `QLAT_JOBS`; unset or `1` means sequential.
    pub fn from_env() -> Self {
        match std::env::var("QLAT_JOBS").ok().and_then(|s| s.parse::<usize>().ok()) {
            Some(n) if n != 1 => Execution::Parallel(n),
            _ => Execution::Sequential,
        }
    }

    pub fn jobs(jobs: usize) -> Self {
        if jobs == 1 {
            Execution::Sequential
        } else {
            Execution::Parallel(jobs)
        }
    }

    /// Maps `f` over `items`, preserving input order in the output.
    pub fn map<T, R, F>(self, items: Vec<T>, f: F) -> Vec<R>
    where
        T: Send,
        R: Send,
        F: Fn(T) -> R + Sync + Send,
    {
        match self {
            Execution::Sequential => items.into_iter().map(f).collect(),
            Execution::Parallel(n) => par_map(n, items, f),
        }
    }
}

#[cfg(feature = "parallel")]
fn par_map<T, R, F>(n: usize, items: Vec<T>, f: F) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Sync + Send,
{
    use rayon::prelude::*;
    let run = || items.into_par_iter().map(&f).collect();
    if n == 0 {
        return run();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
        Ok(pool) => pool.install(run),
        Err(_) => run(),
    }
}

#[cfg(not(feature = "parallel"))]
fn par_map<T, R, F>(_n: usize, items: Vec<T>, f: F) -> Vec<R>
where
    F: Fn(T) -> R,
{
    items.into_iter().map(f).collect()
}

impl FromStr for Execution {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "seq" | "sequential" => Ok(Execution::Sequential),
            "par" | "parallel" => Ok(Execution::Parallel(0)),
            _ => s
                .parse::<usize>()
                .map(Execution::jobs)
                .map_err(|_| Error::InvalidArgument(format!("execution mode {s:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_preserved() {
        let v: Vec<u64> = (0..200).collect();
        let seq = Execution::Sequential.map(v.clone(), |x| x * x);
        let par = Execution::Parallel(4).map(v, |x| x * x);
        assert_eq!(seq, par);
    }

    #[test]
    fn parse_modes() {
        assert_eq!("1".parse::<Execution>().unwrap(), Execution::Sequential);
        assert_eq!("8".parse::<Execution>().unwrap(), Execution::Parallel(8));
        assert!("x".parse::<Execution>().is_err());
    }
}
