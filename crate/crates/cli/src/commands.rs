//! Argument definitions and subcommand handlers.

use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use boundstate_core::determinant::{antisymmetric_zeros, full_zeros, Gram2Table, Gram7Table};
use boundstate_core::oracle::{oracle_counts, BoxSpec, Sector, DEFAULT_DELTA};
use boundstate_core::phase::{c_minus, c_plus, classify, DEFAULT_EPS_B};
use boundstate_core::zeros::Zero;
use boundstate_core::{edge_constants, essential_band, Couplings, EdgeConstants, GridSpec, Momentum, ScanOptions};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::constants::constants_report;
use crate::kparse::momentum_arg;
use crate::output::{emit, float, Format, Table};
use crate::samples::momentum_grid;
use crate::suite::{axis, run_all, Check, SuiteOptions};

pub const JOBS_ENV: &str = "BOUNDSTATE_ATLAS_JOBS";

#[derive(Debug, Parser)]
#[command(name = "boundstate-atlas", version, about = "Bound states of a two-boson lattice fiber Hamiltonian")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Quadrature points per torus axis (even, at least 16).
    #[arg(long, global = true, default_value_t = GridSpec::DEFAULT_N)]
    pub grid_n: usize,
    /// Half-width of the oracle box.
    #[arg(long, global = true, default_value_t = 30)]
    pub box_l: usize,
    /// Worker threads; 0 uses every core.
    #[arg(long, global = true, env = JOBS_ENV, default_value_t = 0)]
    pub jobs: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Output file; stdout if absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Essential band [e_min, e_max] at given quasimomenta.
    ///
    /// CSV columns: k1,k2,e_min,e_max
    Band(BandArgs),
    /// Bound-state energies from determinant zeros.
    ///
    /// CSV columns: side,z,residual,bracket (side is `below` or `above`;
    /// residual is |det| at z; bracket is the final bisection width).
    Zeros(ZerosArgs),
    /// Region labels (and optionally counts) over a (lambda, mu) rectangle.
    ///
    /// CSV columns: lambda,mu,c_minus,c_plus,k_minus,k_plus, then
    /// det_minus,det_plus with --with-det and
    /// oracle_minus,oracle_plus,oracle_indeterminate with --with-oracle.
    /// Counts are `0`, `1`, `2` or `B` on a threshold curve. Rows run over
    /// lambda (outer) and mu (inner).
    PhaseScan(PhaseScanArgs),
    /// Edge constants against closed forms and published values.
    ///
    /// CSV columns: quantity,computed,reference,reference_expr,source,abs_diff,status
    VerifyConstants,
    /// Full verification suite; exits 1 on any failure.
    ///
    /// CSV columns: id,title,status,detail. Failures are listed on stderr.
    VerifyTheorems,
}

#[derive(Debug, Args)]
pub struct BandArgs {
    /// Quasimomentum `k1,k2`, e.g. `pi,pi/2`; repeatable.
    #[arg(long = "K", value_parser = momentum_arg, allow_hyphen_values = true)]
    pub k: Vec<Momentum>,
    /// Uniform N x N grid over the torus instead of explicit momenta.
    #[arg(long, conflicts_with = "k")]
    pub sweep: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DetSector {
    /// Swap-antisymmetric two-kernel determinant (K = 0 only).
    Antisym2,
    /// Full seven-kernel determinant.
    Full7,
}

#[derive(Debug, Args)]
pub struct CouplingArgs {
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub gamma: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub mu: f64,
}

#[derive(Debug, Args)]
pub struct ZerosArgs {
    #[command(flatten)]
    pub couplings: CouplingArgs,
    #[arg(long = "K", value_parser = momentum_arg, default_value = "0,0", allow_hyphen_values = true)]
    pub k: Momentum,
    #[arg(long, value_enum, default_value_t = DetSector::Full7)]
    pub sector: DetSector,
}

#[derive(Debug, Args)]
pub struct PhaseScanArgs {
    /// `lo,hi`
    #[arg(long, value_parser = range_arg, default_value = "-30,30", allow_hyphen_values = true)]
    pub lambda_range: (f64, f64),
    #[arg(long, value_parser = range_arg, default_value = "-30,30", allow_hyphen_values = true)]
    pub mu_range: (f64, f64),
    /// Points per axis.
    #[arg(long, default_value_t = 41)]
    pub resolution: usize,
    #[arg(long, default_value_t = DEFAULT_EPS_B)]
    pub eps_b: f64,
    /// Add K = 0 antisymmetric determinant counts.
    #[arg(long)]
    pub with_det: bool,
    /// Add oracle counts in the swap-antisymmetric sector at K = 0.
    #[arg(long)]
    pub with_oracle: bool,
}

fn range_arg(s: &str) -> Result<(f64, f64), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("range must be `lo,hi`, got `{s}`"))?;
    let lo: f64 = a.trim().parse().map_err(|_| format!("invalid bound `{a}`"))?;
    let hi: f64 = b.trim().parse().map_err(|_| format!("invalid bound `{b}`"))?;
    if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
        return Err(format!("invalid range `{s}`"));
    }
    Ok((lo, hi))
}

pub fn run(cli: Cli) -> Result<i32> {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(cli.global.jobs).build()?;
    pool.install(|| dispatch(&cli))
}

fn dispatch(cli: &Cli) -> Result<i32> {
    let g = &cli.global;
    let grid = GridSpec::new(g.grid_n).with_context(|| format!("--grid-n {}", g.grid_n))?;
    match &cli.command {
        Command::Band(a) => band(g, a),
        Command::Zeros(a) => zeros(g, grid, a),
        Command::PhaseScan(a) => phase_scan(g, grid, a),
        Command::VerifyConstants => {
            let r = constants_report(grid);
            emit(g.format, g.out.as_deref(), &r.table(), &r)?;
            Ok(if r.identities_hold { 0 } else { 1 })
        }
        Command::VerifyTheorems => verify_theorems(g, grid),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BandRow {
    pub k1: f64,
    pub k2: f64,
    pub e_min: f64,
    pub e_max: f64,
}

fn band(g: &Global, a: &BandArgs) -> Result<i32> {
    let ks = match (a.sweep, a.k.is_empty()) {
        (Some(0), _) => bail!("--sweep must be positive"),
        (Some(n), _) => momentum_grid(n),
        (None, false) => a.k.clone(),
        (None, true) => vec![Momentum::zero()],
    };
    let rows: Vec<BandRow> = ks
        .iter()
        .map(|&k| {
            let b = essential_band(k);
            BandRow { k1: k.k1, k2: k.k2, e_min: b.e_min, e_max: b.e_max }
        })
        .collect();
    let mut t = Table::new(&["k1", "k2", "e_min", "e_max"]);
    for r in &rows {
        t.push(vec![float(r.k1), float(r.k2), float(r.e_min), float(r.e_max)]);
    }
    emit(g.format, g.out.as_deref(), &t, &rows)?;
    Ok(0)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZeroRow {
    pub z: f64,
    pub residual: f64,
    pub bracket: f64,
}

impl From<&Zero<f64>> for ZeroRow {
    fn from(z: &Zero<f64>) -> Self {
        Self { z: z.z, residual: z.residual, bracket: z.bracket }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZerosOutput {
    pub gamma: f64,
    pub lambda: f64,
    pub mu: f64,
    pub k1: f64,
    pub k2: f64,
    pub sector: String,
    pub e_min: f64,
    pub e_max: f64,
    pub n_below: usize,
    pub n_above: usize,
    pub below: Vec<ZeroRow>,
    pub above: Vec<ZeroRow>,
}

pub fn compute_zeros(c: &Couplings, k: Momentum, sector: DetSector, grid: GridSpec) -> Result<ZerosOutput> {
    let opts = ScanOptions::default();
    let report = match sector {
        DetSector::Antisym2 => {
            if !k.is_zero() {
                bail!("the antisym2 sector is defined only at K = 0");
            }
            antisymmetric_zeros(c.lambda, c.mu, &Gram2Table::new(grid), &opts)?
        }
        DetSector::Full7 => full_zeros(c, &Gram7Table::new(k, grid), &opts)?,
    };
    let band = essential_band(k);
    Ok(ZerosOutput {
        gamma: c.gamma,
        lambda: c.lambda,
        mu: c.mu,
        k1: k.k1,
        k2: k.k2,
        sector: match sector {
            DetSector::Antisym2 => "antisym2",
            DetSector::Full7 => "full7",
        }
        .to_string(),
        e_min: band.e_min,
        e_max: band.e_max,
        n_below: report.below.len(),
        n_above: report.above.len(),
        below: report.below.iter().map(ZeroRow::from).collect(),
        above: report.above.iter().map(ZeroRow::from).collect(),
    })
}

fn zeros(g: &Global, grid: GridSpec, a: &ZerosArgs) -> Result<i32> {
    let c = Couplings::new(a.couplings.gamma, a.couplings.lambda, a.couplings.mu)?;
    let out = compute_zeros(&c, a.k, a.sector, grid)?;
    let mut t = Table::new(&["side", "z", "residual", "bracket"]);
    for (side, zs) in [("below", &out.below), ("above", &out.above)] {
        for z in zs {
            t.push(vec![side.to_string(), float(z.z), float(z.residual), float(z.bracket)]);
        }
    }
    emit(g.format, g.out.as_deref(), &t, &out)?;
    Ok(0)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhaseRow {
    pub lambda: f64,
    pub mu: f64,
    pub c_minus: f64,
    pub c_plus: f64,
    /// Count label: `0`, `1`, `2` or `B` on a threshold curve.
    pub k_minus: String,
    pub k_plus: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub det_minus: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub det_plus: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub oracle_minus: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub oracle_plus: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub oracle_indeterminate: Option<usize>,
}

pub fn phase_rows(grid: GridSpec, a: &PhaseScanArgs, box_l: usize) -> Result<Vec<PhaseRow>> {
    if a.resolution == 0 {
        bail!("--resolution must be positive");
    }
    let e: EdgeConstants = edge_constants(grid);
    let table = Gram2Table::new(grid);
    let opts = ScanOptions::default();
    let ls = axis(a.lambda_range.0, a.lambda_range.1, a.resolution);
    let ms = axis(a.mu_range.0, a.mu_range.1, a.resolution);
    let pts: Vec<(f64, f64)> = ls.iter().flat_map(|&l| ms.iter().map(move |&m| (l, m))).collect();
    let bx = if a.with_oracle { Some(BoxSpec::new(box_l, Sector::SwapAntisymmetric)?) } else { None };
    pts.par_iter()
        .map(|&(l, m)| {
            let label = classify(l, m, &e, a.eps_b);
            let mut row = PhaseRow {
                lambda: l,
                mu: m,
                c_minus: c_minus(l, m, &e),
                c_plus: c_plus(l, m, &e),
                k_minus: label.k_minus.to_string(),
                k_plus: label.k_plus.to_string(),
                det_minus: None,
                det_plus: None,
                oracle_minus: None,
                oracle_plus: None,
                oracle_indeterminate: None,
            };
            if a.with_det {
                let (b, u) = antisymmetric_zeros(l, m, &table, &opts)?.counts();
                row.det_minus = Some(b);
                row.det_plus = Some(u);
            }
            if let Some(bx) = bx {
                let o = oracle_counts(&Couplings::new(0.0, l, m)?, Momentum::zero(), bx, DEFAULT_DELTA)?;
                row.oracle_minus = Some(o.below.len());
                row.oracle_plus = Some(o.above.len());
                row.oracle_indeterminate = Some(o.indeterminate.len());
            }
            Ok(row)
        })
        .collect()
}

pub fn phase_table(rows: &[PhaseRow], with_det: bool, with_oracle: bool) -> Table {
    let mut h = vec!["lambda", "mu", "c_minus", "c_plus", "k_minus", "k_plus"];
    if with_det {
        h.extend(["det_minus", "det_plus"]);
    }
    if with_oracle {
        h.extend(["oracle_minus", "oracle_plus", "oracle_indeterminate"]);
    }
    let mut t = Table::new(&h);
    let n = |x: Option<usize>| x.map(|v| v.to_string()).unwrap_or_default();
    for r in rows {
        let mut cells = vec![float(r.lambda), float(r.mu), float(r.c_minus), float(r.c_plus), r.k_minus.clone(), r.k_plus.clone()];
        if with_det {
            cells.extend([n(r.det_minus), n(r.det_plus)]);
        }
        if with_oracle {
            cells.extend([n(r.oracle_minus), n(r.oracle_plus), n(r.oracle_indeterminate)]);
        }
        t.push(cells);
    }
    t
}

fn phase_scan(g: &Global, grid: GridSpec, a: &PhaseScanArgs) -> Result<i32> {
    let rows = phase_rows(grid, a, g.box_l)?;
    emit(g.format, g.out.as_deref(), &phase_table(&rows, a.with_det, a.with_oracle), &rows)?;
    Ok(0)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRow {
    pub id: String,
    pub title: String,
    pub passed: bool,
    pub detail: String,
    pub failures: Vec<String>,
}

impl From<&Check> for CheckRow {
    fn from(c: &Check) -> Self {
        Self { id: c.id.clone(), title: c.title.to_string(), passed: c.passed, detail: c.detail.clone(), failures: c.failures.clone() }
    }
}

fn verify_theorems(g: &Global, grid: GridSpec) -> Result<i32> {
    let opts = SuiteOptions { grid_n: grid.n(), box_l: g.box_l, ..SuiteOptions::default() };
    let checks = run_all(&opts)?;
    for c in &checks {
        eprintln!("{c}");
    }
    let rows: Vec<CheckRow> = checks.iter().map(CheckRow::from).collect();
    let mut t = Table::new(&["id", "title", "status", "detail"]);
    for r in &rows {
        let quote = |s: &str| format!("\"{}\"", s.replace('"', "\"\""));
        t.push(vec![r.id.clone(), quote(&r.title), if r.passed { "PASS" } else { "FAIL" }.to_string(), quote(&r.detail)]);
    }
    emit(g.format, g.out.as_deref(), &t, &rows)?;
    Ok(if rows.iter().all(|r| r.passed) { 0 } else { 1 })
}
