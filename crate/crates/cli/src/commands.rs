//! Implementations of the five subcommands. Every function returns
//! `Err(CliError)` for the caller to translate into an exit code.

use std::collections::BTreeMap;
use std::path::Path;

use clap::ValueEnum;
use jcd_core::gen::{gen_commuting_instance, gen_instance, GenConfig, GENERATOR_ID};
use jcd_core::jcd::{jc_d_via, FirstInCollectOrder, JcdResult, LowestBandFirst, PickStrategy, Via};
use jcd_core::liealg::{direct_sum_rep, lie_closure};
use jcd_core::oracle::chevalley_jcd;
use jcd_core::Mat;

use crate::files::{
    self, format_rational, mat_from_strings, mat_to_strings, InstanceFile, Metadata, ResultFile,
    TraceEntry, FORMAT_VERSION,
};
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PickArg {
    /// First nonzero-eigenvalue component in sequence order.
    First,
    /// Lowest nonzero band, ties broken by smallest eigenvalue (default).
    LowestBand,
}

impl PickArg {
    fn strategy(self) -> &'static dyn PickStrategy {
        match self {
            PickArg::First => &FirstInCollectOrder,
            PickArg::LowestBand => &LowestBandFirst,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ViaArg {
    /// Transport the remaining components with the shift procedure (default).
    Neweigm,
    /// Recompute the decomposition from scratch each round.
    Decomp,
}

impl From<ViaArg> for Via {
    fn from(v: ViaArg) -> Via {
        match v {
            ViaArg::Neweigm => Via::NewEigM,
            ViaArg::Decomp => Via::Decomp,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TraceArg {
    /// Per-round measure and chosen eigenvalue only.
    Summary,
    /// Additionally the full matrices of every round.
    Full,
}

fn certification_checks(a: &Mat, res: &JcdResult) -> Result<BTreeMap<String, bool>, CliError> {
    let mut checks = BTreeMap::new();
    checks.insert("conservation".into(), res.s_prime.add(&res.n_prime)? == *a);
    checks.insert(
        "commutation".into(),
        res.s_prime.bracket(&res.n_prime)?.is_zero(),
    );
    checks.insert("semisimple".into(), res.s_prime.is_diagonalizable());
    checks.insert("nilpotent".into(), res.n_prime.is_nilpotent());
    Ok(checks)
}

fn result_file(
    res: &JcdResult,
    checks: BTreeMap<String, bool>,
    trace: Option<TraceArg>,
) -> ResultFile {
    let gamma_trace = res
        .trace
        .steps
        .iter()
        .map(|st| st.gamma.counts().to_vec())
        .collect();
    let trace = trace.map(|mode| {
        res.trace
            .steps
            .iter()
            .map(|st| TraceEntry {
                gamma: st.gamma.counts().to_vec(),
                chosen_eigenvalue: st.chosen_eigenvalue.as_ref().map(format_rational),
                s: (mode == TraceArg::Full).then(|| mat_to_strings(&st.s)),
                n_part: (mode == TraceArg::Full).then(|| mat_to_strings(&st.n)),
                chosen_matrix: match (mode, &st.chosen_matrix) {
                    (TraceArg::Full, Some(m)) => Some(mat_to_strings(m)),
                    _ => None,
                },
            })
            .collect()
    });
    ResultFile {
        format: FORMAT_VERSION,
        s_prime: mat_to_strings(&res.s_prime),
        n_prime: mat_to_strings(&res.n_prime),
        loops: res.trace.loops(),
        gamma_trace,
        checks,
        trace,
    }
}

/// Writes one line to stdout; a closed pipe (e.g. downstream `head`) ends
/// the process quietly instead of panicking.
fn print_line(text: &str) -> Result<(), CliError> {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    match writeln!(out, "{text}") {
        Ok(()) => Ok(()),
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => std::process::exit(0),
        Err(e) => Err(CliError::Check(format!("stdout: {e}"))),
    }
}

fn print_result(file: &ResultFile) -> Result<(), CliError> {
    let json = serde_json::to_string_pretty(file)
        .map_err(|e| CliError::Check(format!("serialization failed: {e}")))?;
    print_line(&json)
}

fn fail_if_any(checks: &BTreeMap<String, bool>) -> Result<(), CliError> {
    let failed: Vec<&str> = checks
        .iter()
        .filter(|(_, ok)| !**ok)
        .map(|(name, _)| name.as_str())
        .collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Check(failed.join(", ")))
    }
}

pub fn decompose(
    input: &Path,
    pick: PickArg,
    via: ViaArg,
    trace: Option<TraceArg>,
) -> Result<(), CliError> {
    let (_, s, n_part) = files::read_instance(input)?;
    let res = jc_d_via(&s, &n_part, pick.strategy(), via.into())?;
    let checks = certification_checks(&s.add(&n_part)?, &res)?;
    let file = result_file(&res, checks, trace);
    print_result(&file)?;
    fail_if_any(&file.checks)
}

/// Runs the decomposition and the full battery of named checks. Returns the
/// serializable report and the list of failed check names.
pub fn run_verify(
    s: &Mat,
    n_part: &Mat,
    expect: Option<&ResultFile>,
) -> Result<(ResultFile, Vec<String>), CliError> {
    let n = s.dim();
    let a = s.add(n_part)?;
    let base = jc_d_via(s, n_part, &LowestBandFirst, Via::NewEigM)?;
    let mut checks = certification_checks(&a, &base)?;

    let gammas: Vec<&[usize]> = base
        .trace
        .steps
        .iter()
        .map(|st| st.gamma.counts())
        .collect();
    checks.insert(
        "gamma_strict_decrease".into(),
        gammas.windows(2).all(|w| w[1] < w[0]),
    );
    checks.insert(
        "gamma_counts_bound".into(),
        gammas
            .iter()
            .all(|g| g.iter().all(|&c| c <= n * (n - 1) / 2)),
    );
    checks.insert(
        "loop_bound".into(),
        base.trace.loops() <= n * (n - 1) * (n - 1) / 2,
    );

    let closure = lie_closure(n, &[s.clone(), n_part.clone()])?;
    checks.insert(
        "closure_membership".into(),
        closure.contains(&base.s_prime)? && closure.contains(&base.n_prime)?,
    );

    let (oracle_s, oracle_n) = chevalley_jcd(&a);
    checks.insert(
        "oracle_agreement".into(),
        base.s_prime == oracle_s && base.n_prime == oracle_n,
    );

    let doubled = jc_d_via(
        &direct_sum_rep(s, 2),
        &direct_sum_rep(n_part, 2),
        &LowestBandFirst,
        Via::NewEigM,
    )?;
    checks.insert(
        "representation_commutation".into(),
        doubled.s_prime == direct_sum_rep(&base.s_prime, 2)
            && doubled.n_prime == direct_sum_rep(&base.n_prime, 2),
    );

    let other_pick = jc_d_via(s, n_part, &FirstInCollectOrder, Via::NewEigM)?;
    checks.insert(
        "pick_independence".into(),
        other_pick.s_prime == base.s_prime && other_pick.n_prime == base.n_prime,
    );
    let other_via = jc_d_via(s, n_part, &LowestBandFirst, Via::Decomp)?;
    checks.insert(
        "via_independence".into(),
        other_via.s_prime == base.s_prime && other_via.n_prime == base.n_prime,
    );

    if let Some(expected) = expect {
        let exp_s = mat_from_strings(n, &expected.s_prime, "expected S_prime")?;
        let exp_n = mat_from_strings(n, &expected.n_prime, "expected N_prime")?;
        checks.insert(
            "expect_match".into(),
            exp_s == base.s_prime && exp_n == base.n_prime,
        );
    }

    let failed = checks
        .iter()
        .filter(|(_, ok)| !**ok)
        .map(|(name, _)| name.clone())
        .collect();
    Ok((result_file(&base, checks, None), failed))
}

pub fn verify(input: &Path, expect: Option<&Path>) -> Result<(), CliError> {
    let (_, s, n_part) = files::read_instance(input)?;
    let expected = expect.map(files::read_result).transpose()?;
    let (file, failed) = run_verify(&s, &n_part, expected.as_ref())?;
    print_result(&file)?;
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Check(failed.join(", ")))
    }
}

pub fn oracle(input: &Path) -> Result<(), CliError> {
    let a = files::read_oracle_input(input)?;
    let (s_prime, n_prime) = chevalley_jcd(&a);
    let mut checks = BTreeMap::new();
    checks.insert("conservation".into(), s_prime.add(&n_prime)? == a);
    checks.insert("commutation".into(), s_prime.bracket(&n_prime)?.is_zero());
    checks.insert("semisimple".into(), s_prime.is_diagonalizable());
    checks.insert("nilpotent".into(), n_prime.is_nilpotent());
    let file = ResultFile {
        format: FORMAT_VERSION,
        s_prime: mat_to_strings(&s_prime),
        n_prime: mat_to_strings(&n_prime),
        loops: 0,
        gamma_trace: Vec::new(),
        checks,
        trace: None,
    };
    print_result(&file)?;
    fail_if_any(&file.checks)
}

fn gen_config(n: usize, seed: u64, multiplicity: bool) -> GenConfig {
    GenConfig {
        n,
        seed,
        diag_range: 4,
        entry_range: 3,
        multiplicity,
    }
}

pub fn gen(
    n: usize,
    seed: u64,
    count: u64,
    commuting: bool,
    multiplicity: bool,
    out_dir: Option<&Path>,
) -> Result<(), CliError> {
    if let Some(dir) = out_dir {
        std::fs::create_dir_all(dir)
            .map_err(|e| CliError::Parse(format!("{}: {e}", dir.display())))?;
    }
    for k in 0..count {
        let cfg = gen_config(n, seed + k, multiplicity);
        let (s, n_part) = if commuting {
            gen_commuting_instance(&cfg)?
        } else {
            gen_instance(&cfg)?
        };
        let file = InstanceFile::from_matrices(
            &s,
            &n_part,
            Some(Metadata {
                seed: Some(cfg.seed),
                generator: Some(GENERATOR_ID.into()),
            }),
        );
        match out_dir {
            Some(dir) => {
                let path = dir.join(format!("instance-n{n}-seed{}.json", cfg.seed));
                let json = serde_json::to_string_pretty(&file)
                    .map_err(|e| CliError::Check(format!("serialization failed: {e}")))?;
                std::fs::write(&path, json + "\n")
                    .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
            }
            None => {
                let json = serde_json::to_string(&file)
                    .map_err(|e| CliError::Check(format!("serialization failed: {e}")))?;
                print_line(&json)?;
            }
        }
    }
    Ok(())
}

fn parse_seed_range(text: &str) -> Result<(u64, u64), CliError> {
    let (a, b) = text
        .split_once("..")
        .ok_or_else(|| CliError::Parse(format!("seed range {text:?} must look like a..b")))?;
    let start: u64 = a
        .trim()
        .parse()
        .map_err(|_| CliError::Parse(format!("bad seed range start {a:?}")))?;
    let end: u64 = b
        .trim()
        .parse()
        .map_err(|_| CliError::Parse(format!("bad seed range end {b:?}")))?;
    if end < start {
        return Err(CliError::Parse(format!(
            "seed range {text:?} runs backwards"
        )));
    }
    Ok((start, end))
}

/// Verifies every seed in a half-open range, alternating distinct and
/// repeated spectra by seed parity, and prints a one-line summary.
pub fn batch(n: usize, seeds: &str) -> Result<(), CliError> {
    let (start, end) = parse_seed_range(seeds)?;
    let mut passed = 0u64;
    let mut failures = Vec::new();
    let mut max_loops = 0usize;
    let mut max_c1 = 0usize;
    for seed in start..end {
        let multiplicity = n > 1 && seed % 2 == 1;
        let (s, n_part) = gen_instance(&gen_config(n, seed, multiplicity))?;
        let (file, failed) = run_verify(&s, &n_part, None)?;
        max_loops = max_loops.max(file.loops);
        let c1 = file
            .gamma_trace
            .iter()
            .filter_map(|g| g.first().copied())
            .max()
            .unwrap_or(0);
        max_c1 = max_c1.max(c1);
        if failed.is_empty() {
            passed += 1;
        } else {
            print_line(&format!("seed {seed}: FAILED {}", failed.join(", ")))?;
            failures.push(seed);
        }
    }
    let total = end - start;
    print_line(&format!(
        "n={n} seeds={start}..{end}: pass {passed}/{total}, max loops {max_loops} (bound {}), max c1 {max_c1} (bound {})",
        n * (n - 1) * (n - 1) / 2,
        n * (n - 1) / 2,
    ))?;
    if failures.is_empty() {
        Ok(())
    } else {
        Err(CliError::Check(format!(
            "{} of {total} seeds failed verification",
            failures.len()
        )))
    }
}
