//! Monte-Carlo trials, parameter sweeps and CSV output.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::channel::{compose_channels, draw_fading};
use crate::error::{Error, Result};
use crate::optimizer::{optimize_flow, Strategy};
use crate::scenario::{build_geometry, ScenarioConfig};
use crate::scheduler::{schedule, FlowRequest};

const FLOW_STREAM: u64 = 6;
const SCHEME_STREAM: u64 = 7;

pub const TRIAL_CSV_HEADER: &str =
    "axis,value,scheme,trial,completed_flows,slots_used,secrecy_bps,throughput_bps";
pub const SUMMARY_CSV_HEADER: &str =
    "axis,value,scheme,mean_completed,se_completed,mean_secrecy_bps,se_secrecy_bps";

/// Parameter varied by a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Axis {
    RequestedFlows,
    NumSlots,
    RisElements,
    QuantBits,
    RisMrDistance,
    RisPositionY,
    PMax,
}

impl Axis {
    pub const ALL: [Axis; 7] = [
        Axis::RequestedFlows,
        Axis::NumSlots,
        Axis::RisElements,
        Axis::QuantBits,
        Axis::RisMrDistance,
        Axis::RisPositionY,
        Axis::PMax,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Axis::RequestedFlows => "requested_flows",
            Axis::NumSlots => "num_slots",
            Axis::RisElements => "ris_elements",
            Axis::QuantBits => "quant_bits",
            Axis::RisMrDistance => "ris_mr_distance",
            Axis::RisPositionY => "ris_position_y",
            Axis::PMax => "p_max",
        }
    }

    /// Returns `base` with this axis set to `value`, validated.
    pub fn apply(self, base: &ScenarioConfig, value: f64) -> Result<ScenarioConfig> {
        let count = |v: f64| -> Result<usize> {
            if v.is_finite() && v >= 0.0 && v.fract() == 0.0 && v <= u32::MAX as f64 {
                Ok(v as usize)
            } else {
                Err(Error::config(format!(
                    "axis `{}` needs a non-negative integer, got {v}",
                    self.name()
                )))
            }
        };
        let mut cfg = base.clone();
        match self {
            Axis::RequestedFlows => cfg.num_flows = count(value)?,
            Axis::NumSlots => cfg.num_slots = count(value)?,
            Axis::RisElements => cfg.num_ris_elements = count(value)?,
            Axis::QuantBits => cfg.quant_bits = count(value)? as u32,
            Axis::RisMrDistance => cfg.ris_mr_distance_m = value,
            Axis::RisPositionY => cfg.ris_y_m = Some(value),
            Axis::PMax => cfg.p_max_dbm = value,
        }
        cfg.validate()
            .map_err(|e| Error::config(format!("{} = {value}: {e}", self.name())))?;
        Ok(cfg)
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Axis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Axis::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::config(format!("unknown axis `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub axis: Axis,
    pub values: Vec<f64>,
    pub schemes: Vec<Strategy>,
    pub trials: usize,
    pub seed: u64,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if self.values.is_empty() {
            return Err(Error::config("sweep needs at least one value"));
        }
        if self
            .values
            .windows(2)
            .any(|w| w[0].partial_cmp(&w[1]) != Some(std::cmp::Ordering::Less))
        {
            return Err(Error::config("sweep values must be strictly increasing"));
        }
        if self.schemes.is_empty() {
            return Err(Error::config("sweep needs at least one scheme"));
        }
        if self.trials == 0 {
            return Err(Error::config("trials must be at least 1"));
        }
        Ok(())
    }
}

/// Outcome of one (configuration, scheme, seed) trial.
///
/// `secrecy_bps` and `throughput_bps` are averaged over the requested flows;
/// flows that were not scheduled contribute zero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub axis: Option<Axis>,
    pub value: Option<f64>,
    pub scheme: Strategy,
    pub trial: usize,
    pub requested: usize,
    pub completed: usize,
    pub slots_used: usize,
    pub secrecy_bps: f64,
    pub throughput_bps: f64,
}

impl TrialRecord {
    pub fn csv_row(&self) -> String {
        let axis = self.axis.map_or("none", Axis::name);
        let value = self.value.map(|v| v.to_string()).unwrap_or_default();
        format!(
            "{axis},{value},{},{},{},{},{},{}",
            self.scheme,
            self.trial,
            self.completed,
            self.slots_used,
            self.secrecy_bps,
            self.throughput_bps
        )
    }
}

/// Seed of trial `trial` under master seed `master`: SplitMix64 finalisers
/// chained over both inputs. Stable across platforms and releases.
pub fn trial_seed(master: u64, trial: u64) -> u64 {
    fn mix(mut z: u64) -> u64 {
        z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
    mix(mix(master) ^ trial)
}

fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Draws `F` flows on distinct MRs with QoS uniform over the configured range.
pub fn draw_flows(cfg: &ScenarioConfig, seed: u64) -> Vec<FlowRequest> {
    let mut rng = stream_rng(seed, FLOW_STREAM);
    let (lo, hi) = cfg.qos_range_bps;
    let mrs = sample(&mut rng, cfg.num_mrs, cfg.num_flows);
    mrs.iter()
        .enumerate()
        .map(|(flow_id, mr_index)| FlowRequest {
            flow_id,
            mr_index,
            qos_bps: if lo < hi {
                rng.random_range(lo..=hi)
            } else {
                lo
            },
        })
        .collect()
}

/// One full trial: fresh geometry and fading, `F` flow requests, per-flow
/// optimisation under `scheme`, then scheduling.
///
/// Everything except the RPS phase draw is independent of `scheme`, so
/// schemes run with the same seed see identical channels and requests.
pub fn run_trial(cfg: &ScenarioConfig, scheme: Strategy, seed: u64) -> Result<TrialRecord> {
    cfg.validate()?;
    let geom = build_geometry(cfg, seed)?;
    let fading = draw_fading(&geom, cfg, seed);
    let channels = compose_channels(&geom, &fading, cfg)?;
    let flows = draw_flows(cfg, seed);

    let mut scheme_rng = stream_rng(seed, SCHEME_STREAM);
    let links = flows
        .iter()
        .map(|f| optimize_flow(&channels, f.mr_index, cfg, scheme, &mut scheme_rng))
        .collect::<Result<Vec<_>>>()?;
    let outcome = schedule(&flows, &links, cfg)?;

    let per_flow = |total: f64| {
        if flows.is_empty() {
            0.0
        } else {
            total / flows.len() as f64
        }
    };
    Ok(TrialRecord {
        axis: None,
        value: None,
        scheme,
        trial: 0,
        requested: flows.len(),
        completed: outcome.completed,
        slots_used: outcome.slots_used,
        secrecy_bps: per_flow(outcome.total_secrecy_bps),
        throughput_bps: per_flow(outcome.total_throughput_bps),
    })
}

/// Runs every (value, scheme, trial) cell, in parallel on the current rayon
/// pool. Records come back ordered by value, then scheme (as listed), then
/// trial, whatever the degree of parallelism.
///
/// Trial `t` uses [`trial_seed`]`(spec.seed, t)` for every value and scheme,
/// so all cells of one trial share their random draws.
pub fn run_sweep(spec: &SweepSpec, base_cfg: &ScenarioConfig) -> Result<Vec<TrialRecord>> {
    spec.validate()?;
    let configs = spec
        .values
        .iter()
        .map(|&v| spec.axis.apply(base_cfg, v))
        .collect::<Result<Vec<_>>>()?;

    let per_value = spec.schemes.len() * spec.trials;
    (0..configs.len() * per_value)
        .into_par_iter()
        .map(|cell| {
            let (vi, rest) = (cell / per_value, cell % per_value);
            let (si, trial) = (rest / spec.trials, rest % spec.trials);
            let seed = trial_seed(spec.seed, trial as u64);
            let mut rec =
                run_trial(&configs[vi], spec.schemes[si], seed).map_err(|e| Error::Trial {
                    trial,
                    seed,
                    source: Box::new(e),
                })?;
            rec.axis = Some(spec.axis);
            rec.value = Some(spec.values[vi]);
            rec.trial = trial;
            Ok(rec)
        })
        .collect()
}

pub fn write_trials_csv<W: Write>(mut out: W, records: &[TrialRecord]) -> Result<()> {
    writeln!(out, "{TRIAL_CSV_HEADER}")?;
    for r in records {
        writeln!(out, "{}", r.csv_row())?;
    }
    Ok(())
}

/// Mean and standard error of one (value, scheme) cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub axis: Option<Axis>,
    pub value: Option<f64>,
    pub scheme: Strategy,
    pub trials: usize,
    pub mean_completed: f64,
    pub se_completed: f64,
    pub mean_secrecy_bps: f64,
    pub se_secrecy_bps: f64,
}

/// Sample mean and standard error; the error is 0 for fewer than two samples.
pub fn mean_se(xs: &[f64]) -> (f64, f64) {
    let n = xs.len();
    if n == 0 {
        return (0.0, 0.0);
    }
    let mean = xs.iter().sum::<f64>() / n as f64;
    if n < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
    (mean, (var / n as f64).sqrt())
}

/// Groups records by (value, scheme) in first-appearance order.
pub fn summarize(records: &[TrialRecord]) -> Vec<SummaryRow> {
    let mut keys: Vec<(Option<Axis>, Option<u64>, Strategy)> = Vec::new();
    for r in records {
        let key = (r.axis, r.value.map(f64::to_bits), r.scheme);
        if !keys.contains(&key) {
            keys.push(key);
        }
    }
    keys.into_iter()
        .map(|(axis, value, scheme)| {
            let cell: Vec<&TrialRecord> = records
                .iter()
                .filter(|r| {
                    r.axis == axis && r.value.map(f64::to_bits) == value && r.scheme == scheme
                })
                .collect();
            let completed: Vec<f64> = cell.iter().map(|r| r.completed as f64).collect();
            let secrecy: Vec<f64> = cell.iter().map(|r| r.secrecy_bps).collect();
            let (mean_completed, se_completed) = mean_se(&completed);
            let (mean_secrecy_bps, se_secrecy_bps) = mean_se(&secrecy);
            SummaryRow {
                axis,
                value: value.map(f64::from_bits),
                scheme,
                trials: cell.len(),
                mean_completed,
                se_completed,
                mean_secrecy_bps,
                se_secrecy_bps,
            }
        })
        .collect()
}

pub fn write_summary_csv<W: Write>(mut out: W, rows: &[SummaryRow]) -> Result<()> {
    writeln!(out, "{SUMMARY_CSV_HEADER}")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            r.axis.map_or("none", Axis::name),
            r.value.map(|v| v.to_string()).unwrap_or_default(),
            r.scheme,
            r.mean_completed,
            r.se_completed,
            r.mean_secrecy_bps,
            r.se_secrecy_bps
        )?;
    }
    Ok(())
}
