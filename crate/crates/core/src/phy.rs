//! Link-level quantities: RIS reflection, received SNR, per-slot rate,
//! superframe throughput and secrecy capacity.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::channel::ChannelSet;
use crate::error::{Error, Result};
use crate::scenario::ScenarioConfig;
use crate::{CMatrix, CVector, Complex64};

/// Minimum share of the legitimate throughput that must survive as secrecy
/// capacity for a flow to be schedulable.
pub const SECRECY_FRACTION: f64 = 0.1;

/// Quantised RIS configuration: element `l` applies phase `2 m_l pi / (2^e - 1)`.
///
/// With this grid the top index `2^e - 1` lands on `2 pi`, i.e. the same
/// reflection as index 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PhaseConfig {
    indices: Vec<u32>,
    quant_bits: u32,
}

impl PhaseConfig {
    pub fn new(indices: Vec<u32>, quant_bits: u32) -> Result<Self> {
        if quant_bits == 0 || quant_bits > crate::scenario::MAX_QUANT_BITS {
            return Err(Error::config(format!(
                "invalid quantisation depth {quant_bits}"
            )));
        }
        let levels = 1u64 << quant_bits;
        if let Some(&bad) = indices.iter().find(|&&m| u64::from(m) >= levels) {
            return Err(Error::config(format!(
                "phase index {bad} out of range for {quant_bits}-bit quantisation"
            )));
        }
        Ok(Self {
            indices,
            quant_bits,
        })
    }

    pub fn zeros(num_elements: usize, quant_bits: u32) -> Self {
        Self::new(vec![0; num_elements], quant_bits).expect("zero indices are always valid")
    }

    /// Independent uniform index per element.
    pub fn random<R: Rng + ?Sized>(num_elements: usize, quant_bits: u32, rng: &mut R) -> Self {
        let levels = 1u32 << quant_bits;
        let indices = (0..num_elements)
            .map(|_| rng.random_range(0..levels))
            .collect();
        Self::new(indices, quant_bits).expect("sampled indices are in range")
    }

    pub fn indices(&self) -> &[u32] {
        &self.indices
    }

    pub fn quant_bits(&self) -> u32 {
        self.quant_bits
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn levels(&self) -> u32 {
        1 << self.quant_bits
    }

    pub(crate) fn set_index(&mut self, element: usize, m: u32) {
        debug_assert!(m < self.levels());
        self.indices[element] = m;
    }

    /// Phase of element `l` in radians, in `[0, 2 pi]`.
    pub fn phase(&self, element: usize) -> f64 {
        phase_of(self.indices[element], self.quant_bits)
    }

    /// `e^{j phi_l}`.
    pub fn phasor(&self, element: usize) -> Complex64 {
        phasor_of(self.indices[element], self.quant_bits)
    }

    /// Diagonal of the reflection matrix.
    pub fn reflection(&self) -> CVector {
        CVector::from_iterator(self.len(), (0..self.len()).map(|l| self.phasor(l)))
    }
}

pub(crate) fn phase_of(m: u32, quant_bits: u32) -> f64 {
    let span = f64::from((1u32 << quant_bits) - 1);
    2.0 * f64::from(m) * std::f64::consts::PI / span
}

pub(crate) fn phasor_of(m: u32, quant_bits: u32) -> Complex64 {
    // Reduce on the integer grid first so 2 pi maps to exactly 1 + 0j.
    let span = (1u32 << quant_bits) - 1;
    Complex64::from_polar(1.0, phase_of(m % span, quant_bits))
}

/// Transmit weight vector `w` (amplitudes in sqrt-watts).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Beamformer {
    pub w: CVector,
}

impl Beamformer {
    /// Wraps `w`, rejecting vectors that exceed the power budget.
    pub fn new(w: CVector, p_max: f64) -> Result<Self> {
        let bf = Self { w };
        if bf.power() > p_max + 1e-9 {
            return Err(Error::Domain(format!(
                "beamformer power {} exceeds budget {p_max}",
                bf.power()
            )));
        }
        Ok(bf)
    }

    pub fn zeros(num_antennas: usize) -> Self {
        Self {
            w: CVector::zeros(num_antennas),
        }
    }

    pub fn power(&self) -> f64 {
        self.w.norm_squared()
    }

    /// Unit-power direction `w / sqrt(p_max)`.
    pub fn direction(&self, p_max: f64) -> CVector {
        &self.w / Complex64::from(p_max.sqrt())
    }
}

/// Effective channel `d + h Phi G` seen by one receiver, length `M`.
pub fn composite_channel(
    direct: &CVector,
    ris: &CVector,
    g: &CMatrix,
    phases: &PhaseConfig,
) -> Result<CVector> {
    let (l, m) = g.shape();
    if direct.len() != m {
        return Err(Error::Dimension {
            context: "direct channel vs antennas",
            expected: m,
            actual: direct.len(),
        });
    }
    if ris.len() != l || phases.len() != l {
        return Err(Error::Dimension {
            context: "RIS channel/phases vs elements",
            expected: l,
            actual: if ris.len() != l {
                ris.len()
            } else {
                phases.len()
            },
        });
    }
    let mut out = direct.clone();
    for (elem, h) in ris.iter().enumerate() {
        let coeff = h * phases.phasor(elem);
        for (o, gv) in out.iter_mut().zip(g.row(elem).iter()) {
            *o += coeff * gv;
        }
    }
    Ok(out)
}

/// `|c w|^2` with `c` a row channel.
pub(crate) fn gain(channel: &CVector, w: &CVector) -> f64 {
    channel
        .iter()
        .zip(w.iter())
        .fold(Complex64::new(0.0, 0.0), |acc, (c, w)| acc + c * w)
        .norm_sqr()
}

/// Received SNR `|(d + h Phi G) w|^2 / noise` for a scheduled slot.
pub fn snr(
    direct: &CVector,
    ris: &CVector,
    g: &CMatrix,
    phases: &PhaseConfig,
    bf: &Beamformer,
    noise_power: f64,
) -> Result<f64> {
    if noise_power.is_nan() || noise_power <= 0.0 {
        return Err(Error::Domain(format!(
            "noise power must be positive, got {noise_power}"
        )));
    }
    let c = composite_channel(direct, ris, g, phases)?;
    if bf.w.len() != c.len() {
        return Err(Error::Dimension {
            context: "beamformer vs antennas",
            expected: c.len(),
            actual: bf.w.len(),
        });
    }
    Ok(gain(&c, &bf.w) / noise_power)
}

/// Shannon rate `W log2(1 + snr)` in bit/s.
pub fn rate_per_slot(snr: f64, bandwidth: f64) -> f64 {
    bandwidth * snr.ln_1p() / std::f64::consts::LN_2
}

/// Superframe-averaged throughput of a flow holding `slots` slots at a
/// constant per-slot rate.
pub fn throughput(rate_per_slot: f64, slots: usize, cfg: &ScenarioConfig) -> Result<f64> {
    if slots > cfg.num_slots {
        return Err(Error::Domain(format!(
            "{slots} slots assigned but the superframe only has {}",
            cfg.num_slots
        )));
    }
    Ok(slots as f64 * rate_per_slot * cfg.slot_time_s / cfg.superframe_s())
}

/// `[legit - eve]^+`.
pub fn secrecy_capacity(legit: f64, eve: f64) -> f64 {
    (legit - eve).max(0.0)
}

/// Whether the secrecy capacity keeps at least [`SECRECY_FRACTION`] of the
/// legitimate rate. Scale-free, so it may be applied to per-slot rates or
/// to throughputs alike.
pub fn secrecy_feasible(legit: f64, eve: f64) -> bool {
    secrecy_capacity(legit, eve) >= SECRECY_FRACTION * legit
}

/// SNRs, rates and secrecy for one flow at a given slot allocation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinkMetrics {
    pub snr_mr: f64,
    pub snr_eve: f64,
    /// bit/s while the flow is on air.
    pub rate_mr: f64,
    pub rate_eve: f64,
    pub throughput_mr: f64,
    pub throughput_eve: f64,
    pub secrecy: f64,
}

impl LinkMetrics {
    pub fn evaluate(
        channels: &ChannelSet,
        mr_index: usize,
        phases: &PhaseConfig,
        bf: &Beamformer,
        slots: usize,
        cfg: &ScenarioConfig,
    ) -> Result<Self> {
        let (d, h) = mr_channels(channels, mr_index)?;
        let noise = cfg.noise_power_w();
        let snr_mr = snr(d, h, &channels.g, phases, bf, noise)?;
        let snr_eve = snr(&channels.d_e, &channels.h_e, &channels.g, phases, bf, noise)?;
        let rate_mr = rate_per_slot(snr_mr, cfg.bandwidth);
        let rate_eve = rate_per_slot(snr_eve, cfg.bandwidth);
        let throughput_mr = throughput(rate_mr, slots, cfg)?;
        let throughput_eve = throughput(rate_eve, slots, cfg)?;
        Ok(Self {
            snr_mr,
            snr_eve,
            rate_mr,
            rate_eve,
            throughput_mr,
            throughput_eve,
            secrecy: secrecy_capacity(throughput_mr, throughput_eve),
        })
    }
}

pub(crate) fn mr_channels(channels: &ChannelSet, mr_index: usize) -> Result<(&CVector, &CVector)> {
    match (channels.d.get(mr_index), channels.h.get(mr_index)) {
        (Some(d), Some(h)) => Ok((d, h)),
        _ => Err(Error::Dimension {
            context: "MR index",
            expected: channels.num_mrs(),
            actual: mr_index,
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn scalar_case() -> (CVector, CVector, CMatrix, PhaseConfig) {
        (
            CVector::from_element(1, c(1.0, 0.0)),
            CVector::from_element(1, c(1.0, 0.0)),
            CMatrix::from_element(1, 1, c(1.0, 0.0)),
            PhaseConfig::zeros(1, 2),
        )
    }

    #[test]
    fn phase_grid() {
        let p = PhaseConfig::new(vec![0, 1, 2, 3], 2).unwrap();
        let expected = [
            0.0,
            2.0 * std::f64::consts::PI / 3.0,
            4.0 * std::f64::consts::PI / 3.0,
        ];
        for (l, e) in expected.iter().enumerate() {
            assert!((p.phase(l) - e).abs() < 1e-15);
        }
        assert!((p.phase(3) - std::f64::consts::TAU).abs() < 1e-15);
        assert_eq!(p.phasor(3), c(1.0, 0.0));
        assert_eq!(p.phasor(0), p.phasor(3));

        let one_bit = PhaseConfig::new(vec![0, 1], 1).unwrap();
        assert_eq!(one_bit.phasor(0), one_bit.phasor(1));
        assert!(PhaseConfig::new(vec![4], 2).is_err());
        assert!(PhaseConfig::new(vec![0], 0).is_err());
    }

    #[test]
    fn snr_examples() {
        let (d, h, g, p) = scalar_case();
        let zero = Beamformer::zeros(1);
        assert_eq!(snr(&d, &h, &g, &p, &zero, 1.0).unwrap(), 0.0);
        let unit = Beamformer {
            w: CVector::from_element(1, c(1.0, 0.0)),
        };
        assert_eq!(snr(&d, &h, &g, &p, &unit, 1.0).unwrap(), 4.0);

        // No RIS path and |d w|^2 equal to the noise power.
        let d2 = CVector::from_vec(vec![c(3.0, 4.0), c(0.0, 0.0)]);
        let h0 = CVector::zeros(1);
        let g2 = CMatrix::from_element(1, 2, c(1.0, 0.0));
        let w = Beamformer {
            w: CVector::from_vec(vec![c(1.0, 0.0), c(0.0, 0.0)]),
        };
        assert!((snr(&d2, &h0, &g2, &p, &w, 25.0).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn snr_errors() {
        let (d, h, g, p) = scalar_case();
        let w2 = Beamformer::zeros(2);
        assert!(matches!(
            snr(&d, &h, &g, &p, &w2, 1.0),
            Err(Error::Dimension { .. })
        ));
        let p3 = PhaseConfig::zeros(3, 1);
        let w1 = Beamformer::zeros(1);
        assert!(matches!(
            snr(&d, &h, &g, &p3, &w1, 1.0),
            Err(Error::Dimension { .. })
        ));
        assert!(snr(&d, &h, &g, &p, &w1, 0.0).is_err());
    }

    #[test]
    fn rate_examples() {
        assert_eq!(rate_per_slot(0.0, 100e6), 0.0);
        assert!((rate_per_slot(1.0, 1.0) - 1.0).abs() < 1e-15);
        assert!((rate_per_slot(3.0, 100e6) - 200e6).abs() < 1e-6);
    }

    #[test]
    fn throughput_examples() {
        let cfg = ScenarioConfig::default();
        assert_eq!(throughput(100e6, 0, &cfg).unwrap(), 0.0);
        let full = ScenarioConfig {
            beacon_period_s: 0.0,
            ..Default::default()
        };
        assert!((throughput(7e6, full.num_slots, &full).unwrap() - 7e6).abs() < 1e-6);
        // 103 * 1e8 * 18e-6 / (850e-6 + 2000 * 18e-6)
        let expected: f64 = 103.0 * 1e8 * 18e-6 / 0.03685;
        assert!((expected - 5.031e6).abs() < 1e3);
        assert!((throughput(100e6, 103, &cfg).unwrap() - expected).abs() < 1e-6);
        assert!(throughput(1.0, 2001, &cfg).is_err());
    }

    #[test]
    fn secrecy_examples() {
        assert_eq!(secrecy_capacity(5.0, 7.0), 0.0);
        assert!(!secrecy_feasible(5.0, 7.0));
        assert_eq!(secrecy_capacity(3.0, 0.0), 3.0);
        assert!(secrecy_feasible(3.0, 0.0));
        assert!((secrecy_capacity(10.0, 9.05) - 0.95).abs() < 1e-12);
        assert!(!secrecy_feasible(10.0, 9.05));
        assert!(secrecy_feasible(10.0, 9.0));
    }

    #[test]
    fn link_metrics_consistency() {
        use crate::channel::{compose_channels, draw_fading};
        use crate::scenario::build_geometry;
        let cfg = ScenarioConfig::default();
        let geom = build_geometry(&cfg, 2).unwrap();
        let ch = compose_channels(&geom, &draw_fading(&geom, &cfg, 2), &cfg).unwrap();
        let p = PhaseConfig::zeros(cfg.num_ris_elements, cfg.quant_bits);
        let amp = (cfg.p_max_w() / cfg.num_antennas as f64).sqrt();
        let bf = Beamformer::new(CVector::from_element(4, c(amp, 0.0)), cfg.p_max_w()).unwrap();
        let m = LinkMetrics::evaluate(&ch, 3, &p, &bf, 250, &cfg).unwrap();
        assert_eq!(m.secrecy, (m.throughput_mr - m.throughput_eve).max(0.0));
        assert!(m.rate_mr >= 0.0 && m.rate_eve >= 0.0);
        assert!(LinkMetrics::evaluate(&ch, 99, &p, &bf, 1, &cfg).is_err());
    }

    fn arb_complex() -> impl Strategy<Value = Complex64> {
        (-2.0f64..2.0, -2.0f64..2.0).prop_map(|(a, b)| c(a, b))
    }

    fn arb_vec(n: usize) -> impl Strategy<Value = CVector> {
        proptest::collection::vec(arb_complex(), n).prop_map(CVector::from_vec)
    }

    proptest! {
        #[test]
        fn reflection_is_unit_modulus(
            bits in 1u32..6,
            raw in proptest::collection::vec(any::<u32>(), 1..12),
        ) {
            let levels = 1u32 << bits;
            let p = PhaseConfig::new(raw.iter().map(|m| m % levels).collect(), bits).unwrap();
            for z in p.reflection().iter() {
                prop_assert!((z.norm() - 1.0).abs() < 1e-15);
            }
            // Reflection never changes a row norm of G.
            let g = CMatrix::from_fn(p.len(), 3, |i, j| c(i as f64 + 1.0, j as f64 - 1.0));
            let diag = CMatrix::from_diagonal(&p.reflection());
            let pg = &diag * &g;
            for r in 0..p.len() {
                prop_assert!((pg.row(r).norm() - g.row(r).norm()).abs() < 1e-12);
            }
        }

        #[test]
        fn snr_scales_with_beamformer_magnitude(
            d in arb_vec(3), h in arb_vec(2), w in arb_vec(3),
            scale in arb_complex(), m0 in 0u32..4, m1 in 0u32..4,
        ) {
            let g = CMatrix::from_fn(2, 3, |i, j| c((i + 2 * j) as f64 * 0.3, 0.7 - i as f64));
            let p = PhaseConfig::new(vec![m0, m1], 2).unwrap();
            let base = snr(&d, &h, &g, &p, &Beamformer { w: w.clone() }, 0.5).unwrap();
            let scaled = snr(&d, &h, &g, &p, &Beamformer { w: &w * scale }, 0.5).unwrap();
            prop_assert!((scaled - scale.norm_sqr() * base).abs() <= 1e-9 * (1.0 + scaled.abs()));
        }

        #[test]
        fn rate_is_strictly_increasing(a in 0.0f64..1e6, delta in 1e-6f64..1e3) {
            prop_assert!(rate_per_slot(a + delta, 1e8) > rate_per_slot(a, 1e8));
        }

        #[test]
        fn throughput_is_linear_in_slots(rate in 0.0f64..1e10, k in 0usize..1000) {
            let cfg = ScenarioConfig::default();
            let one = throughput(rate, 1, &cfg).unwrap();
            let many = throughput(rate, k, &cfg).unwrap();
            prop_assert!((many - k as f64 * one).abs() <= 1e-9 * many.abs().max(1.0));
        }

        #[test]
        fn secrecy_is_clamped_difference(a in 0.0f64..1e9, b in 0.0f64..1e9) {
            let s = secrecy_capacity(a, b);
            prop_assert!(s >= 0.0);
            prop_assert_eq!(s, (a - b).max(0.0));
        }
    }
}
