//! Deterministic instance streams shared by the integration suites.

use jcd_core::gen::{gen_commuting_instance, gen_instance, GenConfig};
use jcd_core::Mat;

pub fn cfg(n: usize, seed: u64, multiplicity: bool) -> GenConfig {
    GenConfig {
        n,
        seed,
        diag_range: 4,
        entry_range: 3,
        multiplicity,
    }
}

/// `(n, seed, S, N)` tuples with `S` upper triangular diagonalizable and `N`
/// strictly upper; odd seeds allow repeated diagonal values.
pub fn instances(sizes: &[usize], seeds: u64) -> Vec<(usize, u64, Mat, Mat)> {
    let mut out = Vec::new();
    for &n in sizes {
        for seed in 0..seeds {
            let multiplicity = n > 1 && seed % 2 == 1;
            let (s, nm) = gen_instance(&cfg(n, seed, multiplicity)).expect("valid config");
            out.push((n, seed, s, nm));
        }
    }
    out
}

/// As [`instances`] but with `[S, N] = 0` by construction.
#[allow(dead_code)]
pub fn commuting_instances(sizes: &[usize], seeds: u64) -> Vec<(usize, u64, Mat, Mat)> {
    let mut out = Vec::new();
    for &n in sizes {
        for seed in 0..seeds {
            let multiplicity = n > 1 && seed % 2 == 1;
            let (s, nm) =
                gen_commuting_instance(&cfg(n, seed, multiplicity)).expect("valid config");
            out.push((n, seed, s, nm));
        }
    }
    out
}
