//! Fan-out over independent parameter points.
//!
//! With the `parallel` feature the work runs on the rayon pool; without it,
//! or when [`Execution::Sequential`] is requested, it runs in order on the
//! calling thread. Results always come back in input order.

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

impl Execution {
    /// Whether `Parallel` actually uses worker threads in this build.
    pub fn parallel_available() -> bool {
        cfg!(feature = "parallel")
    }
}

pub fn map<T, U, F>(exec: Execution, items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            items.par_iter().map(f).collect()
        }
        _ => items.iter().map(f).collect(),
    }
}

/// First `Some` in input order.
pub fn find_first<T, U, F>(exec: Execution, items: &[T], f: F) -> Option<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> Option<U> + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            items.par_iter().find_map_first(f)
        }
        _ => items.iter().find_map(f),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_preserved() {
        let xs: Vec<u64> = (0..500).collect();
        for exec in [Execution::Sequential, Execution::Parallel] {
            assert_eq!(map(exec, &xs, |x| x * x), xs.iter().map(|x| x * x).collect::<Vec<_>>());
            assert_eq!(find_first(exec, &xs, |&x| (x % 97 == 96).then_some(x)), Some(96));
        }
    }
}
