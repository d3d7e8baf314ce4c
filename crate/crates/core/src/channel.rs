//! Large-scale path loss, Rician small-scale fading and the composite
//! BS→MR, BS→RIS→MR and eavesdropper channels built from them.

use nalgebra::{DMatrix, DVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scenario::{Geometry, ScenarioConfig};
use crate::{CMatrix, CVector, Complex64};

// Fading sub-streams of a trial seed. Each link family draws from its own
// stream so that resizing one dimension (e.g. the RIS) leaves the others
// untouched; per-MR RIS rows get one stream each.
const STREAM_BS_MR: u64 = 2;
const STREAM_BS_EVE: u64 = 3;
const STREAM_BS_RIS: u64 = 4;
const STREAM_RIS_EVE: u64 = 5;
const STREAM_RIS_MR_BASE: u64 = 1 << 16;

/// `10^(C/10) * dist^-exponent`, the linear power gain of one link.
pub fn path_loss(dist: f64, exponent: f64, intercept_db: f64) -> Result<f64> {
    if !(dist.is_finite() && dist > 0.0) {
        return Err(Error::Domain(format!(
            "path loss needs a positive distance, got {dist}"
        )));
    }
    Ok(10f64.powf(intercept_db / 10.0) * dist.powf(-exponent))
}

/// One realisation of the small-scale fading on every link.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FadingDraw {
    /// Per MR, length `M`.
    pub q_bs_mr: Vec<CVector>,
    /// `L x M`.
    pub q_bs_ris: CMatrix,
    /// Per MR, length `L`.
    pub q_ris_mr: Vec<CVector>,
    pub q_bs_eve: CVector,
    pub q_ris_eve: CVector,
}

/// Rician fading sampler: `sqrt(b/(b+1)) + sqrt(1/(b+1)) * z` with `z`
/// circularly-symmetric complex Gaussian of unit variance.
#[derive(Debug, Clone, Copy)]
pub struct Rician {
    los: f64,
    scatter: f64,
}

impl Rician {
    pub fn new(k_factor: f64) -> Self {
        Self {
            los: (k_factor / (k_factor + 1.0)).sqrt(),
            scatter: (1.0 / (k_factor + 1.0)).sqrt(),
        }
    }
}

impl Distribution<Complex64> for Rician {
    fn sample<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> Complex64 {
        let re: f64 = StandardNormal.sample(rng);
        let im: f64 = StandardNormal.sample(rng);
        let s = self.scatter * std::f64::consts::FRAC_1_SQRT_2;
        Complex64::new(self.los + s * re, s * im)
    }
}

fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn sample_vec(rng: &mut ChaCha8Rng, dist: Rician, len: usize) -> CVector {
    DVector::from_iterator(len, (0..len).map(|_| dist.sample(rng)))
}

/// Draws i.i.d. Rician entries for every link of the geometry.
pub fn draw_fading(geom: &Geometry, cfg: &ScenarioConfig, seed: u64) -> FadingDraw {
    let dist = Rician::new(cfg.rician_factor);
    let (m, l) = (cfg.num_antennas, cfg.num_ris_elements);

    let mut rng = stream_rng(seed, STREAM_BS_MR);
    let q_bs_mr = (0..geom.num_mrs())
        .map(|_| sample_vec(&mut rng, dist, m))
        .collect();

    let q_bs_eve = sample_vec(&mut stream_rng(seed, STREAM_BS_EVE), dist, m);

    // Row-major so that element l's row does not depend on L.
    let mut rng = stream_rng(seed, STREAM_BS_RIS);
    let q_bs_ris = DMatrix::from_row_iterator(l, m, (0..l * m).map(|_| dist.sample(&mut rng)));

    let q_ris_mr = (0..geom.num_mrs())
        .map(|n| {
            sample_vec(
                &mut stream_rng(seed, STREAM_RIS_MR_BASE + n as u64),
                dist,
                l,
            )
        })
        .collect();
    let q_ris_eve = sample_vec(&mut stream_rng(seed, STREAM_RIS_EVE), dist, l);

    FadingDraw {
        q_bs_mr,
        q_bs_ris,
        q_ris_mr,
        q_bs_eve,
        q_ris_eve,
    }
}

/// Composite channels of one fading realisation.
///
/// Row vectors are stored as column `DVector`s; `d_n` and `d_e` have length
/// `M`, `h_n` and `h_e` length `L`, and `g` is `L x M`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChannelSet {
    pub d: Vec<CVector>,
    pub g: CMatrix,
    pub h: Vec<CVector>,
    pub d_e: CVector,
    pub h_e: CVector,
}

impl ChannelSet {
    /// Assembles a channel set from raw parts, checking shapes.
    pub fn from_parts(
        d: Vec<CVector>,
        g: CMatrix,
        h: Vec<CVector>,
        d_e: CVector,
        h_e: CVector,
    ) -> Result<Self> {
        let (l, m) = g.shape();
        if d.len() != h.len() {
            return Err(Error::Dimension {
                context: "per-MR channel count",
                expected: d.len(),
                actual: h.len(),
            });
        }
        for v in d.iter().chain(std::iter::once(&d_e)) {
            check_len("direct channel", m, v.len())?;
        }
        for v in h.iter().chain(std::iter::once(&h_e)) {
            check_len("RIS-receiver channel", l, v.len())?;
        }
        let set = Self { d, g, h, d_e, h_e };
        if !set.is_finite() {
            return Err(Error::Domain("channel contains non-finite entries".into()));
        }
        Ok(set)
    }

    pub fn num_antennas(&self) -> usize {
        self.g.ncols()
    }

    pub fn num_elements(&self) -> usize {
        self.g.nrows()
    }

    pub fn num_mrs(&self) -> usize {
        self.d.len()
    }

    fn is_finite(&self) -> bool {
        let fin = |c: &Complex64| c.re.is_finite() && c.im.is_finite();
        self.d.iter().chain(&self.h).all(|v| v.iter().all(fin))
            && self.g.iter().all(fin)
            && self.d_e.iter().all(fin)
            && self.h_e.iter().all(fin)
    }
}

fn check_len(context: &'static str, expected: usize, actual: usize) -> Result<()> {
    if expected != actual {
        return Err(Error::Dimension {
            context,
            expected,
            actual,
        });
    }
    Ok(())
}

/// Scales each fading block by the square root of its link's path loss.
/// LoS exponent on the direct links, NLoS exponent on both RIS hops.
pub fn compose_channels(
    geom: &Geometry,
    fading: &FadingDraw,
    cfg: &ScenarioConfig,
) -> Result<ChannelSet> {
    let n = geom.num_mrs();
    check_len("fading BS-MR rows", n, fading.q_bs_mr.len())?;
    check_len("fading RIS-MR rows", n, fading.q_ris_mr.len())?;
    check_len("RIS-MR distances", n, geom.d_ris_mr.len())?;
    let c = cfg.path_loss_intercept_db;
    let amp = |dist: f64, alpha: f64| path_loss(dist, alpha, c).map(f64::sqrt);

    let d = geom
        .d_bs_mr
        .iter()
        .zip(&fading.q_bs_mr)
        .map(|(&dist, q)| Ok(q * Complex64::from(amp(dist, cfg.alpha_los)?)))
        .collect::<Result<Vec<_>>>()?;
    let g = &fading.q_bs_ris * Complex64::from(amp(geom.d_bs_ris, cfg.alpha_nlos)?);
    let h = geom
        .d_ris_mr
        .iter()
        .zip(&fading.q_ris_mr)
        .map(|(&dist, q)| Ok(q * Complex64::from(amp(dist, cfg.alpha_nlos)?)))
        .collect::<Result<Vec<_>>>()?;
    let d_e = &fading.q_bs_eve * Complex64::from(amp(geom.d_bs_eve, cfg.alpha_los)?);
    let h_e = &fading.q_ris_eve * Complex64::from(amp(geom.d_ris_eve, cfg.alpha_nlos)?);

    ChannelSet::from_parts(d, g, h, d_e, h_e)
}
