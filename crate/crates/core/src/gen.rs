//! Seeded random generation of valid problem instances.
//!
//! `S` is built as `U D U^-1` with `D` an integer diagonal and `U` unit
//! upper triangular, so it is upper triangular and diagonalizable by
//! construction; `N` is strictly upper triangular. Instances are a pure
//! function of the config: the stream is ChaCha8 seeded by `seed` alone and
//! the draw order (diagonal, then `U`, then `N`) is part of the format.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ratmat::{rat, Mat};
use crate::{Error, Result};

/// Identifier of the pseudo-random stream, recorded in emitted metadata.
pub const GENERATOR_ID: &str = "chacha8";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenConfig {
    pub n: usize,
    pub seed: u64,
    /// Diagonal entries are drawn from `-diag_range ..= diag_range`.
    pub diag_range: i64,
    /// Entries of `U` and `N` are drawn from `-entry_range ..= entry_range`.
    pub entry_range: i64,
    /// Allow repeated diagonal values; without it the spectrum is distinct.
    pub multiplicity: bool,
}

impl GenConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n < 1 {
            return Err(Error::Precondition("gen: n must be at least 1".into()));
        }
        if self.diag_range < 1 || self.entry_range < 1 {
            return Err(Error::Precondition("gen: ranges must be at least 1".into()));
        }
        if !self.multiplicity && 2 * self.diag_range + 1 < self.n as i64 {
            return Err(Error::Precondition(format!(
                "gen: a distinct spectrum of size {} does not fit in [-{}, {}]",
                self.n, self.diag_range, self.diag_range
            )));
        }
        Ok(())
    }

    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

fn draw_diagonal(cfg: &GenConfig, rng: &mut ChaCha8Rng) -> Vec<i64> {
    if cfg.multiplicity {
        (0..cfg.n)
            .map(|_| rng.gen_range(-cfg.diag_range..=cfg.diag_range))
            .collect()
    } else {
        let width = (2 * cfg.diag_range + 1) as usize;
        rand::seq::index::sample(rng, width, cfg.n)
            .into_iter()
            .map(|i| i as i64 - cfg.diag_range)
            .collect()
    }
}

fn draw_unit_upper(cfg: &GenConfig, rng: &mut ChaCha8Rng) -> Mat {
    let mut u = Mat::identity(cfg.n);
    for i in 0..cfg.n {
        for j in i + 1..cfg.n {
            u.set(i, j, rat(rng.gen_range(-cfg.entry_range..=cfg.entry_range)));
        }
    }
    u
}

/// A random valid instance: `S` upper triangular diagonalizable, `N`
/// strictly upper triangular. Deterministic per config.
pub fn gen_instance(cfg: &GenConfig) -> Result<(Mat, Mat)> {
    cfg.validate()?;
    let mut rng = cfg.rng();
    let diag = draw_diagonal(cfg, &mut rng);
    let u = draw_unit_upper(cfg, &mut rng);
    let mut n_mat = Mat::zero(cfg.n);
    for i in 0..cfg.n {
        for j in i + 1..cfg.n {
            n_mat.set(i, j, rat(rng.gen_range(-cfg.entry_range..=cfg.entry_range)));
        }
    }
    let s = conjugate_diagonal(&diag, &u);
    Ok((s, n_mat))
}

/// As [`gen_instance`] but with `bracket(S, N) = 0`: the nilpotent part is
/// drawn from the strictly upper centralizer of the diagonal (entries only
/// where diagonal values coincide) and conjugated by the same `U`.
pub fn gen_commuting_instance(cfg: &GenConfig) -> Result<(Mat, Mat)> {
    cfg.validate()?;
    let mut rng = cfg.rng();
    let diag = draw_diagonal(cfg, &mut rng);
    let u = draw_unit_upper(cfg, &mut rng);
    let mut n0 = Mat::zero(cfg.n);
    for i in 0..cfg.n {
        for j in i + 1..cfg.n {
            if diag[i] == diag[j] {
                n0.set(i, j, rat(rng.gen_range(-cfg.entry_range..=cfg.entry_range)));
            }
        }
    }
    let s = conjugate_diagonal(&diag, &u);
    let u_inv = u.inverse().expect("unit triangular is invertible");
    let n_mat = u
        .mul(&n0)
        .expect("same dimension")
        .mul(&u_inv)
        .expect("same dimension");
    Ok((s, n_mat))
}

fn conjugate_diagonal(diag: &[i64], u: &Mat) -> Mat {
    let d = Mat::diagonal(&diag.iter().map(|&v| rat(v)).collect::<Vec<_>>());
    let u_inv = u.inverse().expect("unit triangular is invertible");
    u.mul(&d)
        .expect("same dimension")
        .mul(&u_inv)
        .expect("same dimension")
}
