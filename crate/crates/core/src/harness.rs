//! Experiment drivers: condition-number and discrepancy tables, noisy
//! ensembles with discrepancy-principle cut-off selection, and single
//! reconstructions. Everything is driven by one JSON document and rendered as
//! CSV with a header row.

use crate::error::{Error, Result};
use crate::forward::boundary_trace;
use crate::inverse::{profile_rel_error, select_cutoff, solve};
use crate::model::{PhysicalConfig, Pulse, Signal, SourceSpec};
use crate::noiselab::{perturb, NoiseSpec, DEFAULT_NOISE_NODES};
use crate::numerics::condition_number;
use crate::spectral::{assemble, kernel_functions, profile_grid, synthesize, Basis, KernelFamily};
use crate::volterra::{reconstruct_from_trace, DEFAULT_SMOOTHING_STEPS};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;
use std::path::Path;

pub const TABLE_OMEGAS: [f64; 2] = [1.0, 8.0];
pub const TABLE_CUTOFFS: [usize; 6] = [5, 8, 11, 14, 17, 20];
pub const TABLE_ALPHAS: [f64; 6] = [0.0, 1e-5, 1e-4, 1e-3, 1e-2, 1e-1];
pub const NOISE_LEVELS: [f64; 7] = [0.0, 0.01, 0.03, 0.05, 0.07, 0.10, 0.20];
pub const DEFAULT_SEED_COUNT: usize = 11;

/// Largest cut-off considered by the ensemble runs.
pub const MAX_CUTOFF: usize = 20;

/// Cut-offs judged admissible for each noise level of [`NOISE_LEVELS`], per pulse.
pub fn reference_cutoffs(omega: f64) -> Option<[usize; 7]> {
    if omega == 8.0 {
        Some([20, 17, 14, 11, 11, 11, 9])
    } else if omega == 1.0 {
        Some([20, 13, 11, 10, 10, 9, 9])
    } else {
        None
    }
}

pub fn cutoff_scan() -> Vec<usize> {
    (5..=MAX_CUTOFF).collect()
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    #[default]
    Spectral,
    Volterra,
}

/// One experiment definition. Unknown fields are rejected.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub c: f64,
    pub c0: f64,
    #[serde(rename = "T")]
    pub t_max: f64,
    #[serde(rename = "M")]
    pub samples: usize,
    pub kappa: f64,
    pub omega: f64,
    pub nu: f64,
    #[serde(rename = "N")]
    pub cutoff: usize,
    pub alpha: f64,
    pub gamma: f64,
    pub seed: u64,
    pub seeds: Option<Vec<u64>>,
    pub source: SourceSpec,
    pub method: Method,
    pub oversample: usize,
    pub noise_nodes: usize,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        let phys = PhysicalConfig::default();
        Self {
            c: phys.c,
            c0: phys.c0,
            t_max: phys.t_max,
            samples: phys.samples,
            kappa: phys.kappa,
            omega: 1.0,
            nu: 0.2,
            cutoff: MAX_CUTOFF,
            alpha: 0.0,
            gamma: 0.0,
            seed: 1,
            seeds: None,
            source: SourceSpec::two_gaussian(),
            method: Method::Spectral,
            oversample: 2,
            noise_nodes: DEFAULT_NOISE_NODES,
        }
    }
}

fn config_error(field: &str, message: impl Into<String>) -> Error {
    Error::Config {
        field: field.into(),
        message: message.into(),
    }
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let cfg: Self = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            let field = if path == "." { "config".to_string() } else { path };
            config_error(&field, e.into_inner().to_string())
        })?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("cannot read config {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn physical(&self) -> PhysicalConfig {
        PhysicalConfig {
            c: self.c,
            c0: self.c0,
            t_max: self.t_max,
            kappa: self.kappa,
            samples: self.samples,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.physical().validate()?;
        if !(self.omega > 0.0 && self.omega.is_finite()) {
            return Err(config_error("omega", format!("must be positive, got {}", self.omega)));
        }
        if !(self.nu >= 0.0 && self.nu.is_finite()) {
            return Err(config_error("nu", format!("must be >= 0, got {}", self.nu)));
        }
        if self.cutoff == 0 {
            return Err(config_error("N", "cut-off must be at least 1"));
        }
        if !(self.alpha >= 0.0 && self.alpha.is_finite()) {
            return Err(config_error("alpha", format!("must be >= 0, got {}", self.alpha)));
        }
        if !(self.gamma >= 0.0 && self.gamma.is_finite()) {
            return Err(config_error("gamma", format!("must be >= 0, got {}", self.gamma)));
        }
        if self.oversample == 0 {
            return Err(config_error("oversample", "must be at least 1"));
        }
        if self.noise_nodes == 0 {
            return Err(config_error("noise_nodes", "must be at least 1"));
        }
        if matches!(&self.seeds, Some(s) if s.is_empty()) {
            return Err(config_error("seeds", "seed list is empty"));
        }
        self.source
            .validate()
            .map_err(|e| config_error("source", e.to_string()))?;
        Ok(())
    }

    /// Explicit `seeds`, or `count` consecutive seeds starting at `seed`.
    pub fn seed_list(&self, count: usize) -> Vec<u64> {
        match &self.seeds {
            Some(s) => s.clone(),
            None => (0..count as u64).map(|i| self.seed.wrapping_add(i)).collect(),
        }
    }

    pub fn pulse(&self, omega: f64) -> Result<Pulse> {
        Pulse::damped_sine(omega, self.nu)
    }

    fn noise(&self, gamma: f64, seed: u64) -> NoiseSpec {
        NoiseSpec::new(gamma, seed).with_nodes(self.noise_nodes)
    }
}

/// A record that renders as one CSV line.
pub trait CsvRow {
    const HEADER: &'static str;
    fn fields(&self) -> Vec<String>;
}

fn real(v: f64) -> String {
    format!("{v:.15e}")
}

pub fn to_csv<R: CsvRow>(rows: &[R]) -> String {
    let mut out = String::new();
    out.push_str(R::HEADER);
    out.push('\n');
    for r in rows {
        let _ = writeln!(out, "{}", r.fields().join(","));
    }
    out
}

pub fn write_csv<R: CsvRow>(path: &Path, rows: &[R]) -> Result<()> {
    std::fs::write(path, to_csv(rows)).map_err(|e| Error::Io(format!("cannot write {}: {e}", path.display())))
}

#[derive(Clone, Debug, PartialEq)]
pub struct Table1Row {
    pub omega: f64,
    pub n: usize,
    pub alpha: f64,
    pub cond: f64,
    /// `√N · C(A, α)`, the selection diagnostic.
    pub sqrt_n_cond: f64,
}

impl CsvRow for Table1Row {
    const HEADER: &'static str = "omega,N,alpha,cond,sqrt_n_cond";
    fn fields(&self) -> Vec<String> {
        vec![real(self.omega), self.n.to_string(), real(self.alpha), real(self.cond), real(self.sqrt_n_cond)]
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Table2Row {
    pub omega: f64,
    pub n: usize,
    pub alpha: f64,
    pub eta: f64,
    pub eta_over_gnorm: f64,
}

impl CsvRow for Table2Row {
    const HEADER: &'static str = "omega,N,alpha,eta,eta_over_gnorm";
    fn fields(&self) -> Vec<String> {
        vec![real(self.omega), self.n.to_string(), real(self.alpha), real(self.eta), real(self.eta_over_gnorm)]
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Table3Row {
    pub omega: f64,
    pub gamma: f64,
    /// Absolute noise level `γ‖g‖`.
    pub gamma1: f64,
    /// Median over seeds of the discrepancy-principle cut-off.
    pub n_selected: usize,
    pub eps_f_median: f64,
    pub eta_median: f64,
    pub n_reference: usize,
    pub eps_f_reference_median: f64,
    pub eta_reference_median: f64,
}

impl CsvRow for Table3Row {
    const HEADER: &'static str =
        "omega,gamma,gamma1,N_selected,eps_F_median,eta_median,N_reference,eps_F_reference_median,eta_reference_median";
    fn fields(&self) -> Vec<String> {
        vec![
            real(self.omega),
            real(self.gamma),
            real(self.gamma1),
            self.n_selected.to_string(),
            real(self.eps_f_median),
            real(self.eta_median),
            self.n_reference.to_string(),
            real(self.eps_f_reference_median),
            real(self.eta_reference_median),
        ]
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TraceRow {
    pub t: f64,
    pub g_clean: f64,
    pub g_noisy: f64,
}

impl CsvRow for TraceRow {
    const HEADER: &'static str = "t,g_clean,g_noisy";
    fn fields(&self) -> Vec<String> {
        vec![real(self.t), real(self.g_clean), real(self.g_noisy)]
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProfileRow {
    pub x: f64,
    pub f_true: f64,
    pub f_rec: f64,
}

impl CsvRow for ProfileRow {
    const HEADER: &'static str = "x,F_true,F_rec";
    fn fields(&self) -> Vec<String> {
        vec![real(self.x), real(self.f_true), real(self.f_rec)]
    }
}

/// Median of a non-empty sample (mean of the middle pair for even counts).
pub fn median(values: &[f64]) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

fn median_index(values: &[usize]) -> usize {
    let mut v = values.to_vec();
    v.sort_unstable();
    v[(v.len() - 1) / 2]
}

fn kernels_for(cfg: &ExperimentConfig, omega: f64, modes: usize) -> Result<KernelFamily> {
    let phys = cfg.physical();
    let basis = Basis::new(phys.depth(), modes)?;
    Ok(kernel_functions(&phys, &cfg.pulse(omega)?, &basis))
}

/// Condition numbers of the leading Gram blocks over the table grid.
pub fn table1(cfg: &ExperimentConfig) -> Result<Vec<Table1Row>> {
    let phys = cfg.physical();
    let mut rows = Vec::new();
    for omega in TABLE_OMEGAS {
        let kernels = kernels_for(cfg, omega, MAX_CUTOFF)?;
        let full = assemble(&kernels, &Signal::zeros(phys.time_grid()), 0.0)?;
        for n in TABLE_CUTOFFS {
            let a = full.leading(n)?;
            for alpha in TABLE_ALPHAS {
                let cond = condition_number(a.matrix(), alpha)?;
                rows.push(Table1Row {
                    omega,
                    n,
                    alpha,
                    cond,
                    sqrt_n_cond: (n as f64).sqrt() * cond,
                });
            }
        }
    }
    Ok(rows)
}

/// Discrepancies of noise-free reconstructions over the table grid.
pub fn table2(cfg: &ExperimentConfig) -> Result<Vec<Table2Row>> {
    let phys = cfg.physical();
    let mut rows = Vec::new();
    for omega in TABLE_OMEGAS {
        let pulse = cfg.pulse(omega)?;
        let g = boundary_trace(&phys, &pulse, &cfg.source, cfg.oversample)?;
        let g_norm = g.l2_norm();
        let kernels = kernels_for(cfg, omega, MAX_CUTOFF)?;
        let full = assemble(&kernels, &g, 0.0)?;
        for n in TABLE_CUTOFFS {
            let lead = full.leading(n)?;
            for alpha in TABLE_ALPHAS {
                let eta = solve(&lead.with_alpha(alpha)?)?.discrepancy;
                rows.push(Table2Row {
                    omega,
                    n,
                    alpha,
                    eta,
                    eta_over_gnorm: eta / g_norm,
                });
            }
        }
    }
    Ok(rows)
}

struct SeedOutcome {
    gamma1: f64,
    n_selected: usize,
    eps: f64,
    eta: f64,
    eps_ref: f64,
    eta_ref: f64,
}

/// Noisy ensembles over [`NOISE_LEVELS`]: per seed, the cut-off is chosen by
/// the discrepancy principle and, separately, fixed at the reference value.
pub fn table3(cfg: &ExperimentConfig, seeds: &[u64]) -> Result<Vec<Table3Row>> {
    if seeds.is_empty() {
        return Err(config_error("seeds", "seed list is empty"));
    }
    let phys = cfg.physical();
    let scan = cutoff_scan();
    let mut rows = Vec::new();
    for omega in TABLE_OMEGAS {
        let pulse = cfg.pulse(omega)?;
        let g = boundary_trace(&phys, &pulse, &cfg.source, cfg.oversample)?;
        let kernels = kernels_for(cfg, omega, MAX_CUTOFF)?;
        let references = reference_cutoffs(omega).expect("table pulses have reference cut-offs");
        for (gamma, n_ref) in NOISE_LEVELS.into_iter().zip(references) {
            let outcomes = seeds
                .par_iter()
                .map(|&seed| -> Result<SeedOutcome> {
                    let (noisy, gamma1) = perturb(&g, &cfg.noise(gamma, seed))?;
                    let n_sel = select_cutoff(&kernels, &noisy, gamma1, &scan)?;
                    let full = assemble(&kernels, &noisy, 0.0)?;
                    let at = |n: usize| -> Result<(f64, f64)> {
                        let rec = solve(&full.leading(n)?)?;
                        let basis = Basis::new(phys.depth(), n)?;
                        Ok((crate::inverse::rel_error(&cfg.source, &rec, &basis, &phys)?, rec.discrepancy))
                    };
                    let (eps, eta) = at(n_sel)?;
                    let (eps_ref, eta_ref) = at(n_ref)?;
                    Ok(SeedOutcome {
                        gamma1,
                        n_selected: n_sel,
                        eps,
                        eta,
                        eps_ref,
                        eta_ref,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            let pick = |f: fn(&SeedOutcome) -> f64| median(&outcomes.iter().map(f).collect::<Vec<_>>());
            rows.push(Table3Row {
                omega,
                gamma,
                gamma1: outcomes[0].gamma1,
                n_selected: median_index(&outcomes.iter().map(|o| o.n_selected).collect::<Vec<_>>()),
                eps_f_median: pick(|o| o.eps),
                eta_median: pick(|o| o.eta),
                n_reference: n_ref,
                eps_f_reference_median: pick(|o| o.eps_ref),
                eta_reference_median: pick(|o| o.eta_ref),
            });
        }
    }
    Ok(rows)
}

/// Result of a single reconstruction.
#[derive(Clone, Debug, PartialEq)]
pub struct ReconstructOutput {
    pub method: Method,
    pub trace: Vec<TraceRow>,
    pub profile: Vec<ProfileRow>,
    pub rel_error: f64,
    /// Data residual of the spectral solution; not defined for the Volterra path.
    pub discrepancy: Option<f64>,
    pub gamma1: f64,
}

/// Forward data for `cfg.source`, optional noise, and one inversion.
pub fn reconstruct(cfg: &ExperimentConfig) -> Result<ReconstructOutput> {
    let phys = cfg.physical();
    let pulse = cfg.pulse(cfg.omega)?;
    let g = boundary_trace(&phys, &pulse, &cfg.source, cfg.oversample)?;
    let (noisy, gamma1) = perturb(&g, &cfg.noise(cfg.gamma, cfg.seed))?;
    let trace = g
        .grid()
        .nodes()
        .zip(g.values().iter().zip(noisy.values()))
        .map(|(t, (a, b))| TraceRow {
            t,
            g_clean: *a,
            g_noisy: *b,
        })
        .collect();

    let l = phys.depth();
    let grid = profile_grid(l);
    let (values, discrepancy) = match cfg.method {
        Method::Spectral => {
            let basis = Basis::new(l, cfg.cutoff)?;
            let kernels = kernel_functions(&phys, &pulse, &basis);
            let rec = solve(&assemble(&kernels, &noisy, cfg.alpha)?)?;
            let values = grid
                .nodes()
                .map(|x| synthesize(&basis, &rec.coeffs, x))
                .collect::<Result<Vec<f64>>>()?;
            (values, Some(rec.discrepancy))
        }
        Method::Volterra => {
            let smoothing = if cfg.gamma > 0.0 { DEFAULT_SMOOTHING_STEPS } else { 0.0 };
            let f = reconstruct_from_trace(&phys, &pulse, &noisy, smoothing)?;
            (grid.nodes().map(|x| f.sample(x)).collect(), None)
        }
    };
    let profile_signal = Signal::new(grid, values)?;
    let rel_error = profile_rel_error(&cfg.source, &profile_signal, l)?;
    let profile = grid
        .nodes()
        .zip(profile_signal.values())
        .map(|(x, f)| ProfileRow {
            x,
            f_true: cfg.source.value(l, x),
            f_rec: *f,
        })
        .collect();
    Ok(ReconstructOutput {
        method: cfg.method,
        trace,
        profile,
        rel_error,
        discrepancy,
        gamma1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_parse_from_empty_document() {
        let cfg = ExperimentConfig::from_json("{}").unwrap();
        assert_eq!(cfg, ExperimentConfig::default());
        assert_eq!(cfg.seed_list(3), vec![1, 2, 3]);
    }

    #[test]
    fn full_document_round_trips() {
        let text = r#"{"c":0.15,"c0":0.3,"T":12,"M":600,"kappa":1,"omega":8,"nu":0.2,"N":11,
            "alpha":0.001,"gamma":0.05,"seed":7,"seeds":[1,2],"source":{"variant":"hat"},
            "method":"volterra","oversample":3,"noise_nodes":90}"#;
        let cfg = ExperimentConfig::from_json(text).unwrap();
        assert_eq!(cfg.samples, 600);
        assert_eq!(cfg.cutoff, 11);
        assert_eq!(cfg.method, Method::Volterra);
        assert_eq!(cfg.source, SourceSpec::Hat);
        assert_eq!(cfg.seed_list(11), vec![1, 2]);
        let back = ExperimentConfig::from_json(&serde_json::to_string(&cfg).unwrap()).unwrap();
        assert_eq!(back, cfg);
    }

    fn field_of(text: &str) -> String {
        match ExperimentConfig::from_json(text) {
            Err(Error::Config { field, .. }) => field,
            other => panic!("expected a config error, got {other:?}"),
        }
    }

    #[test]
    fn errors_name_the_field() {
        assert_eq!(field_of(r#"{"alpha":"big"}"#), "alpha");
        assert_eq!(field_of(r#"{"alpha":-1}"#), "alpha");
        assert_eq!(field_of(r#"{"M":1}"#), "M");
        assert_eq!(field_of(r#"{"c":0}"#), "c");
        assert_eq!(field_of(r#"{"source":{"variant":"box","params":{"amplitude":1,"from":0.7,"to":0.2}}}"#), "source");
        assert!(field_of(r#"{"source":{"variant":"spiral"}}"#).starts_with("source"));
        let err = ExperimentConfig::from_json(r#"{"gamm":0.1}"#).unwrap_err();
        assert!(err.to_string().contains("gamm"), "{err}");
    }

    #[test]
    fn median_of_odd_and_even_samples() {
        assert_eq!(median(&[3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(&[4.0, 1.0, 2.0, 3.0]), 2.5);
        assert_eq!(median_index(&[9, 11, 10]), 10);
    }

    #[test]
    fn csv_has_header_and_precision() {
        let rows = vec![TraceRow {
            t: 0.1,
            g_clean: 1.0 / 3.0,
            g_noisy: -2.0,
        }];
        let text = to_csv(&rows);
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("t,g_clean,g_noisy"));
        let fields: Vec<&str> = lines.next().unwrap().split(',').collect();
        let v: f64 = fields[1].parse().unwrap();
        assert!((v - 1.0 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn reference_cutoffs_cover_table_pulses() {
        for omega in TABLE_OMEGAS {
            let r = reference_cutoffs(omega).unwrap();
            assert_eq!(r[0], MAX_CUTOFF);
            assert!(r.windows(2).all(|w| w[1] <= w[0]));
        }
        assert!(reference_cutoffs(3.0).is_none());
    }
}
