//! Run configuration and cell geometry.
//!
//! The frame is centred on the base station: BS at the origin, the track runs
//! parallel to the y-axis at `x = bs_track_offset_m`, and all heights are
//! along z. The RIS sits on the BS side of the track at a perpendicular
//! distance `ris_mr_distance_m` from it.

use std::fmt::Write as _;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Sub-stream of the trial seed used for the eavesdropper draw.
pub(crate) const GEOMETRY_STREAM: u64 = 1;

/// Every scalar knob of a run. `Default` reproduces the reference scenario
/// (28 GHz, 100 MHz, M = 4, L = 30, 24 MRs over a 200 m train).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioConfig {
    /// Carrier frequency in Hz. Informational; the path-loss model is
    /// frequency-independent.
    pub carrier_freq: f64,
    /// Bandwidth in Hz.
    pub bandwidth: f64,
    pub num_antennas: usize,
    pub num_mrs: usize,
    pub num_ris_elements: usize,
    pub quant_bits: u32,
    pub path_loss_intercept_db: f64,
    pub alpha_los: f64,
    pub alpha_nlos: f64,
    pub rician_factor: f64,
    pub noise_psd_dbm_per_mhz: f64,
    pub p_max_dbm: f64,
    pub beacon_period_s: f64,
    pub slot_time_s: f64,
    pub num_slots: usize,
    pub num_flows: usize,
    /// Inclusive range `(low, high)` of the uniform per-flow QoS draw, bit/s.
    pub qos_range_bps: (f64, f64),
    pub train_length_m: f64,
    pub bs_track_offset_m: f64,
    pub bs_ris_distance_m: f64,
    /// Perpendicular distance between the RIS and the track.
    pub ris_mr_distance_m: f64,
    pub mr_height_m: f64,
    pub bs_height_m: f64,
    pub ris_height_m: f64,
    /// Radius of the disc around an MR in which the eavesdropper is dropped.
    pub eve_radius_m: f64,
    /// Explicit RIS position along the track axis. When absent the RIS is
    /// placed so that the BS-RIS distance equals `bs_ris_distance_m`.
    pub ris_y_m: Option<f64>,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self {
            carrier_freq: 28e9,
            bandwidth: 100e6,
            num_antennas: 4,
            num_mrs: 24,
            num_ris_elements: 30,
            quant_bits: 3,
            path_loss_intercept_db: -61.3,
            alpha_los: 2.5,
            alpha_nlos: 3.6,
            rician_factor: 4.0,
            noise_psd_dbm_per_mhz: -134.0,
            p_max_dbm: 23.0,
            beacon_period_s: 850e-6,
            slot_time_s: 18e-6,
            num_slots: 2000,
            num_flows: 15,
            qos_range_bps: (5e6, 100e6),
            train_length_m: 200.0,
            bs_track_offset_m: 75.0,
            bs_ris_distance_m: 50.0,
            ris_mr_distance_m: 30.0,
            mr_height_m: 4.0,
            bs_height_m: 4.0,
            ris_height_m: 4.0,
            eve_radius_m: 10.0,
            ris_y_m: None,
        }
    }
}

/// Highest supported quantisation depth; `2^e` candidates are enumerated per element.
pub const MAX_QUANT_BITS: u32 = 16;

impl ScenarioConfig {
    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("carrier_freq", self.carrier_freq),
            ("bandwidth", self.bandwidth),
            ("slot_time_s", self.slot_time_s),
            ("train_length_m", self.train_length_m),
            ("bs_track_offset_m", self.bs_track_offset_m),
            ("bs_ris_distance_m", self.bs_ris_distance_m),
            ("ris_mr_distance_m", self.ris_mr_distance_m),
        ];
        for (name, v) in positive {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::config(format!("{name} must be positive, got {v}")));
            }
        }
        let finite = [
            ("path_loss_intercept_db", self.path_loss_intercept_db),
            ("alpha_los", self.alpha_los),
            ("alpha_nlos", self.alpha_nlos),
            ("noise_psd_dbm_per_mhz", self.noise_psd_dbm_per_mhz),
            ("p_max_dbm", self.p_max_dbm),
            ("mr_height_m", self.mr_height_m),
            ("bs_height_m", self.bs_height_m),
            ("ris_height_m", self.ris_height_m),
        ];
        for (name, v) in finite {
            if !v.is_finite() {
                return Err(Error::config(format!("{name} must be finite, got {v}")));
            }
        }
        for (name, n) in [
            ("num_antennas", self.num_antennas),
            ("num_mrs", self.num_mrs),
            ("num_ris_elements", self.num_ris_elements),
            ("num_slots", self.num_slots),
        ] {
            if n == 0 {
                return Err(Error::config(format!("{name} must be at least 1")));
            }
        }
        if self.quant_bits == 0 || self.quant_bits > MAX_QUANT_BITS {
            return Err(Error::config(format!(
                "quant_bits must be in 1..={MAX_QUANT_BITS}, got {}",
                self.quant_bits
            )));
        }
        if self.num_flows > self.num_mrs {
            return Err(Error::config(format!(
                "num_flows ({}) exceeds num_mrs ({})",
                self.num_flows, self.num_mrs
            )));
        }
        let (lo, hi) = self.qos_range_bps;
        if !(lo.is_finite() && hi.is_finite() && lo > 0.0 && lo <= hi) {
            return Err(Error::config(format!(
                "qos_range_bps must satisfy 0 < low <= high, got ({lo}, {hi})"
            )));
        }
        if !(self.beacon_period_s.is_finite() && self.beacon_period_s >= 0.0) {
            return Err(Error::config("beacon_period_s must be non-negative"));
        }
        if !(self.rician_factor.is_finite() && self.rician_factor >= 0.0) {
            return Err(Error::config("rician_factor must be non-negative"));
        }
        if !(self.eve_radius_m.is_finite() && self.eve_radius_m >= 0.0) {
            return Err(Error::config("eve_radius_m must be non-negative"));
        }
        if let Some(y) = self.ris_y_m {
            if !y.is_finite() {
                return Err(Error::config("ris_y_m must be finite"));
            }
        }
        Ok(())
    }

    /// Noise power in watts over the configured bandwidth.
    pub fn noise_power_w(&self) -> f64 {
        let dbm = self.noise_psd_dbm_per_mhz + 10.0 * (self.bandwidth / 1e6).log10();
        dbm_to_watts(dbm)
    }

    pub fn p_max_w(&self) -> f64 {
        dbm_to_watts(self.p_max_dbm)
    }

    /// Superframe duration `T_s + K * dT`.
    pub fn superframe_s(&self) -> f64 {
        self.beacon_period_s + self.num_slots as f64 * self.slot_time_s
    }

    /// Number of discrete phase levels, `2^e`.
    pub fn phase_levels(&self) -> usize {
        1usize << self.quant_bits
    }

    pub fn mr_spacing_m(&self) -> f64 {
        self.train_length_m / self.num_mrs as f64
    }

    /// Parses a flat `key = value` file. Blank lines and `#` comments are
    /// ignored; unknown or repeated keys are errors. Missing keys keep their
    /// defaults.
    pub fn from_config_str(text: &str) -> Result<Self> {
        let mut cfg = Self::default();
        let mut seen = std::collections::HashSet::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::config(format!("line {}: expected `key = value`", lineno + 1))
            })?;
            let (key, value) = (key.trim(), value.trim());
            if !seen.insert(key.to_string()) {
                return Err(Error::config(format!(
                    "line {}: duplicate key `{key}`",
                    lineno + 1
                )));
            }
            cfg.set(key, value).map_err(|e| match e {
                Error::Config(msg) => Error::config(format!("line {}: {msg}", lineno + 1)),
                other => other,
            })?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_config_str(&text)
    }

    /// Renders the configuration in the format accepted by [`Self::from_config_str`].
    pub fn to_config_string(&self) -> String {
        let mut out = String::new();
        let mut put = |k: &str, v: String| {
            let _ = writeln!(out, "{k} = {v}");
        };
        put("carrier_freq", self.carrier_freq.to_string());
        put("bandwidth", self.bandwidth.to_string());
        put("num_antennas", self.num_antennas.to_string());
        put("num_mrs", self.num_mrs.to_string());
        put("num_ris_elements", self.num_ris_elements.to_string());
        put("quant_bits", self.quant_bits.to_string());
        put(
            "path_loss_intercept_db",
            self.path_loss_intercept_db.to_string(),
        );
        put("alpha_los", self.alpha_los.to_string());
        put("alpha_nlos", self.alpha_nlos.to_string());
        put("rician_factor", self.rician_factor.to_string());
        put(
            "noise_psd_dbm_per_mhz",
            self.noise_psd_dbm_per_mhz.to_string(),
        );
        put("p_max_dbm", self.p_max_dbm.to_string());
        put("beacon_period_s", self.beacon_period_s.to_string());
        put("slot_time_s", self.slot_time_s.to_string());
        put("num_slots", self.num_slots.to_string());
        put("num_flows", self.num_flows.to_string());
        put(
            "qos_range_bps",
            format!("{}, {}", self.qos_range_bps.0, self.qos_range_bps.1),
        );
        put("train_length_m", self.train_length_m.to_string());
        put("bs_track_offset_m", self.bs_track_offset_m.to_string());
        put("bs_ris_distance_m", self.bs_ris_distance_m.to_string());
        put("ris_mr_distance_m", self.ris_mr_distance_m.to_string());
        put("mr_height_m", self.mr_height_m.to_string());
        put("bs_height_m", self.bs_height_m.to_string());
        put("ris_height_m", self.ris_height_m.to_string());
        put("eve_radius_m", self.eve_radius_m.to_string());
        if let Some(y) = self.ris_y_m {
            put("ris_y_m", y.to_string());
        }
        out
    }

    /// Sets one field from its textual value. Does not re-validate.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        fn float(key: &str, v: &str) -> Result<f64> {
            v.parse::<f64>()
                .map_err(|_| Error::config(format!("`{key}`: `{v}` is not a number")))
        }
        fn count(key: &str, v: &str) -> Result<usize> {
            v.parse::<usize>()
                .map_err(|_| Error::config(format!("`{key}`: `{v}` is not a non-negative integer")))
        }
        match key {
            "carrier_freq" => self.carrier_freq = float(key, value)?,
            "bandwidth" => self.bandwidth = float(key, value)?,
            "num_antennas" => self.num_antennas = count(key, value)?,
            "num_mrs" => self.num_mrs = count(key, value)?,
            "num_ris_elements" => self.num_ris_elements = count(key, value)?,
            "quant_bits" => {
                self.quant_bits = u32::try_from(count(key, value)?)
                    .map_err(|_| Error::config("`quant_bits` out of range"))?
            }
            "path_loss_intercept_db" => self.path_loss_intercept_db = float(key, value)?,
            "alpha_los" => self.alpha_los = float(key, value)?,
            "alpha_nlos" => self.alpha_nlos = float(key, value)?,
            "rician_factor" => self.rician_factor = float(key, value)?,
            "noise_psd_dbm_per_mhz" => self.noise_psd_dbm_per_mhz = float(key, value)?,
            "p_max_dbm" => self.p_max_dbm = float(key, value)?,
            "beacon_period_s" => self.beacon_period_s = float(key, value)?,
            "slot_time_s" => self.slot_time_s = float(key, value)?,
            "num_slots" => self.num_slots = count(key, value)?,
            "num_flows" => self.num_flows = count(key, value)?,
            "qos_range_bps" => {
                let parts: Vec<&str> = value.split(',').map(str::trim).collect();
                if parts.len() != 2 {
                    return Err(Error::config(
                        "`qos_range_bps` expects two comma-separated numbers",
                    ));
                }
                self.qos_range_bps = (float(key, parts[0])?, float(key, parts[1])?);
            }
            "train_length_m" => self.train_length_m = float(key, value)?,
            "bs_track_offset_m" => self.bs_track_offset_m = float(key, value)?,
            "bs_ris_distance_m" => self.bs_ris_distance_m = float(key, value)?,
            "ris_mr_distance_m" => self.ris_mr_distance_m = float(key, value)?,
            "mr_height_m" => self.mr_height_m = float(key, value)?,
            "bs_height_m" => self.bs_height_m = float(key, value)?,
            "ris_height_m" => self.ris_height_m = float(key, value)?,
            "eve_radius_m" => self.eve_radius_m = float(key, value)?,
            "ris_y_m" => self.ris_y_m = Some(float(key, value)?),
            other => return Err(Error::config(format!("unknown key `{other}`"))),
        }
        Ok(())
    }
}

pub fn dbm_to_watts(dbm: f64) -> f64 {
    10f64.powf(dbm / 10.0) * 1e-3
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Point3 {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn distance(&self, other: &Point3) -> f64 {
        let (dx, dy, dz) = (self.x - other.x, self.y - other.y, self.z - other.z);
        (dx * dx + dy * dy + dz * dz).sqrt()
    }
}

/// Node positions and every link distance used by the channel model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Geometry {
    pub bs_position: Point3,
    pub ris_position: Point3,
    pub mr_positions: Vec<Point3>,
    pub eve_position: Point3,
    /// MR the eavesdropper was dropped around.
    pub eve_anchor: usize,
    pub d_bs_mr: Vec<f64>,
    pub d_bs_ris: f64,
    pub d_ris_mr: Vec<f64>,
    pub d_bs_eve: f64,
    pub d_ris_eve: f64,
}

impl Geometry {
    pub fn num_mrs(&self) -> usize {
        self.mr_positions.len()
    }

    fn recompute_distances(&mut self) {
        let bs = self.bs_position;
        let ris = self.ris_position;
        self.d_bs_mr = self.mr_positions.iter().map(|p| bs.distance(p)).collect();
        self.d_ris_mr = self.mr_positions.iter().map(|p| ris.distance(p)).collect();
        self.d_bs_ris = bs.distance(&ris);
        self.d_bs_eve = bs.distance(&self.eve_position);
        self.d_ris_eve = ris.distance(&self.eve_position);
    }
}

/// Lays out the cell for one trial.
///
/// MR `i` sits at the centre of the `i`-th of `N` equal train segments, with
/// the train spanning `[s/2, train_length + s/2]` along the track (`s` the MR
/// spacing), so the first MR is a half-spacing past the BS foot point and a
/// lone MR lands on the train midpoint. The eavesdropper is dropped uniformly
/// in a disc of radius `eve_radius_m` around a uniformly chosen MR.
pub fn build_geometry(cfg: &ScenarioConfig, rng_seed: u64) -> Result<Geometry> {
    cfg.validate()?;
    let spacing = cfg.mr_spacing_m();
    if !(spacing.is_finite() && spacing > 0.0) {
        return Err(Error::config("MR spacing must be positive"));
    }
    let bs = Point3::new(0.0, 0.0, cfg.bs_height_m);
    let mr_positions: Vec<Point3> = (0..cfg.num_mrs)
        .map(|i| {
            Point3::new(
                cfg.bs_track_offset_m,
                (i + 1) as f64 * spacing,
                cfg.mr_height_m,
            )
        })
        .collect();

    let ris_x = cfg.bs_track_offset_m - cfg.ris_mr_distance_m;
    let ris_dz = cfg.ris_height_m - cfg.bs_height_m;
    let ris_y = match cfg.ris_y_m {
        Some(y) => y,
        None => {
            let fixed = ris_x * ris_x + ris_dz * ris_dz;
            let target = cfg.bs_ris_distance_m * cfg.bs_ris_distance_m;
            if target < fixed {
                return Err(Error::config(format!(
                    "bs_ris_distance_m ({}) is shorter than the RIS offset from the BS ({:.3} m)",
                    cfg.bs_ris_distance_m,
                    fixed.sqrt()
                )));
            }
            (target - fixed).sqrt()
        }
    };
    let ris = Point3::new(ris_x, ris_y, cfg.ris_height_m);

    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    rng.set_stream(GEOMETRY_STREAM);
    let anchor = rng.random_range(0..cfg.num_mrs);
    let radius = cfg.eve_radius_m * rng.random::<f64>().sqrt();
    let theta = rng.random_range(0.0..std::f64::consts::TAU);
    let a = mr_positions[anchor];
    let eve = Point3::new(a.x + radius * theta.cos(), a.y + radius * theta.sin(), a.z);

    let mut geom = Geometry {
        bs_position: bs,
        ris_position: ris,
        mr_positions,
        eve_position: eve,
        eve_anchor: anchor,
        d_bs_mr: Vec::new(),
        d_bs_ris: 0.0,
        d_ris_mr: Vec::new(),
        d_bs_eve: 0.0,
        d_ris_eve: 0.0,
    };
    geom.recompute_distances();
    check_distances(&geom)?;
    Ok(geom)
}

/// Moves the RIS along the track axis to `y_r` and refreshes the RIS distances.
pub fn place_ris(geom: &Geometry, y_r: f64) -> Geometry {
    let mut out = geom.clone();
    out.ris_position.y = y_r;
    out.recompute_distances();
    out
}

fn check_distances(geom: &Geometry) -> Result<()> {
    let all = geom.d_bs_mr.iter().chain(&geom.d_ris_mr).chain([
        &geom.d_bs_ris,
        &geom.d_bs_eve,
        &geom.d_ris_eve,
    ]);
    for &d in all {
        if !(d.is_finite() && d > 0.0) {
            return Err(Error::config(format!(
                "geometry produced a non-positive link distance ({d})"
            )));
        }
    }
    Ok(())
}
