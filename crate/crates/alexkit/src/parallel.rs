//! Minor enumeration and per-character work spread over a rayon pool.
//!
//! `ALEXKIT_THREADS` sets the pool size; by default all cores are used.
//! Results are collected in input order, so output does not depend on the
//! thread count.

use alexkit_core::alexander::{elementary_ideal_minors, minors_for_row_subset, row_subsets, AlexanderMatrix};
use alexkit_core::laurent::{gcd_many, LaurentPoly};
use alexkit_core::Result;
use rayon::prelude::*;

pub fn thread_count() -> usize {
    std::env::var("ALEXKIT_THREADS")
        .ok()
        .and_then(|s| s.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

pub fn pool() -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new()
        .num_threads(thread_count())
        .build()
        .expect("thread pool")
}

/// Same generators, in the same order, as the sequential enumeration.
pub fn elementary_ideal_minors_par(m: &AlexanderMatrix, i: usize) -> Result<Vec<LaurentPoly>> {
    let k = m.num_cols().saturating_sub(i);
    if i >= m.num_cols() || k > m.num_rows() {
        return elementary_ideal_minors(m, i);
    }
    m.check_caps()?;
    let rs = row_subsets(m, k);
    let chunks: Vec<Vec<LaurentPoly>> =
        pool().install(|| rs.par_iter().map(|r| minors_for_row_subset(m, r)).collect());
    Ok(chunks.into_iter().flatten().collect())
}

pub fn alexander_poly_par(m: &AlexanderMatrix, i: usize) -> Result<LaurentPoly> {
    Ok(gcd_many(&elementary_ideal_minors_par(m, i)?))
}

/// Apply `f` to every item on the pool, keeping input order.
pub fn map_ordered<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    pool().install(|| items.par_iter().map(f).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use alexkit_core::alexander::alexander_poly;
    use alexkit_core::laurent::parse_poly;

    #[test]
    fn matches_sequential() {
        let vars: Vec<String> = ["x1", "x2", "x3"].iter().map(|s| s.to_string()).collect();
        let e = |s: &str| parse_poly(s, &vars).unwrap();
        let rows = vec![
            vec![e("(x2-1)*(x1*x3-1)"), e("(1-x1)*(x1*x3-1)"), e("0")],
            vec![e("0"), e("(x3-1)*(x1*x3-1)"), e("(1-x2)*(x1*x3-1)")],
            vec![e("(x3-1)*(x1*x2-1)"), e("0"), e("(1-x1)*(x1*x2-1)")],
        ];
        let m = AlexanderMatrix::from_entries(vars.clone(), rows, 3).unwrap();
        for i in 0..4 {
            assert_eq!(
                elementary_ideal_minors_par(&m, i).unwrap(),
                elementary_ideal_minors(&m, i).unwrap()
            );
            assert_eq!(alexander_poly_par(&m, i).unwrap(), alexander_poly(&m, i).unwrap());
        }
        assert_eq!(map_ordered(&[3, 1, 2], |x| x * 10), vec![30, 10, 20]);
    }
}
