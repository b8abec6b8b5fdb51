//! Parallel Hindman search.
//!
//! Each least element is searched on its own; `find_map_first` keeps the
//! result equal to the sequential one, whatever order the branches finish in.

use hypergerm_core::hindman::{check_shape, search_from, Coloring, HindmanCertificate};
use hypergerm_core::{Config, Result};
use rayon::prelude::*;

pub fn par_search_monochromatic(coloring: &Coloring, k: usize, window: u64, cfg: &Config) -> Result<Option<HindmanCertificate>> {
    check_shape(k, window)?;
    let colors = coloring.table(window, cfg)?;
    Ok((1..=window).into_par_iter().find_map_first(|first| search_from(&colors, k, first)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use hypergerm_core::hindman::search_monochromatic;

    #[test]
    fn parallel_matches_sequential() {
        let cfg = Config::default();
        for spec in ["mod:2", "mod:3", "mod:5", "expr:floor(n/4)-2*floor(n/8)"] {
            let c = Coloring::parse(spec).unwrap();
            for (k, n) in [(2, 30), (3, 60), (4, 200)] {
                let a = par_search_monochromatic(&c, k, n, &cfg).unwrap();
                let b = search_monochromatic(&c, k, n, &cfg).unwrap();
                assert_eq!(a, b, "{} k={} N={}", spec, k, n);
            }
        }
    }
}
