//! Per-flow joint design of the transmit beamformer and the RIS phases.
//!
//! For fixed phases the secrecy-optimal beamformer maximises the generalised
//! Rayleigh quotient `w^H X_n w / w^H X_e w` with
//! `X_i = I + (P/sigma^2) c_i^H c_i` and `c_i = d_i + h_i Phi G`. The phases
//! are then improved one element at a time over the discrete grid,
//! re-solving the beamformer for every candidate.

use std::fmt;
use std::str::FromStr;

use nalgebra::linalg::{Cholesky, SymmetricEigen};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::channel::ChannelSet;
use crate::error::{Error, Result};
use crate::phy::{composite_channel, gain, mr_channels, phasor_of, Beamformer, PhaseConfig};
use crate::scenario::ScenarioConfig;
use crate::{CMatrix, CVector, Complex64};

/// Upper bound on full coordinate passes over the RIS elements.
pub const MAX_PASSES: usize = 100;

const EIGEN_EPS: f64 = 1e-14;
const EIGEN_MAX_ITER: usize = 10_000;

/// The Hermitian pencil `(X_n, X_e)` of one flow at fixed phases.
#[derive(Debug, Clone, PartialEq)]
pub struct SecrecyQuotient {
    pub x_n: CMatrix,
    pub x_e: CMatrix,
}

impl SecrecyQuotient {
    /// Builds `X_i = I + snr_scale * c_i^H c_i` for the legitimate and the
    /// eavesdropper composite channels, `snr_scale = P_max / sigma^2`.
    pub fn new(legit: &CVector, eve: &CVector, snr_scale: f64) -> Result<Self> {
        if legit.len() != eve.len() {
            return Err(Error::Dimension {
                context: "eavesdropper vs legitimate channel",
                expected: legit.len(),
                actual: eve.len(),
            });
        }
        Ok(Self {
            x_n: gram(legit, snr_scale),
            x_e: gram(eve, snr_scale),
        })
    }

    pub fn dim(&self) -> usize {
        self.x_n.nrows()
    }

    /// `(u^H X_n u) / (u^H X_e u)`.
    pub fn value(&self, u: &CVector) -> f64 {
        quadratic_form(&self.x_n, u) / quadratic_form(&self.x_e, u)
    }
}

fn gram(c: &CVector, scale: f64) -> CMatrix {
    let m = c.len();
    CMatrix::from_fn(m, m, |i, j| {
        let outer = c[i].conj() * c[j] * scale;
        if i == j {
            outer + Complex64::new(1.0, 0.0)
        } else {
            outer
        }
    })
}

fn quadratic_form(x: &CMatrix, u: &CVector) -> f64 {
    u.dotc(&(x * u)).re
}

/// Secrecy-optimal beamformer at full power: `sqrt(P_max) v` with `v` the
/// unit principal generalised eigenvector of `(X_n, X_e)`.
///
/// Solved by Cholesky reduction `X_e = L L^H`: the principal eigenvector `y`
/// of `L^-1 X_n L^-H` maps back through `v = L^-H y`. The returned vector is
/// phase-normalised so its first non-negligible entry is real and positive.
pub fn optimal_beamformer(quotient: &SecrecyQuotient, p_max: f64) -> Result<Beamformer> {
    let m = quotient.dim();
    if quotient.x_e.shape() != (m, m) || quotient.x_n.shape() != (m, m) {
        return Err(Error::Dimension {
            context: "secrecy pencil",
            expected: m,
            actual: quotient.x_e.nrows(),
        });
    }
    let chol = Cholesky::new(quotient.x_e.clone())
        .ok_or_else(|| Error::Solver("X_e is not positive definite".into()))?;
    let lower = chol.l();
    // The complex factorisation takes square roots of negative pivots too.
    if lower
        .diagonal()
        .iter()
        .any(|z| !(z.re > 0.0 && z.im.abs() <= 1e-12 * z.re))
    {
        return Err(Error::Solver("X_e is not positive definite".into()));
    }
    let a = lower
        .solve_lower_triangular(&quotient.x_n)
        .ok_or_else(|| Error::Solver("singular Cholesky factor".into()))?;
    let reduced = lower
        .solve_lower_triangular(&a.adjoint())
        .ok_or_else(|| Error::Solver("singular Cholesky factor".into()))?;
    let hermitian = (&reduced + reduced.adjoint()) * Complex64::new(0.5, 0.0);

    let eig = SymmetricEigen::try_new(hermitian, EIGEN_EPS, EIGEN_MAX_ITER)
        .ok_or_else(|| Error::Solver("Hermitian eigen-decomposition did not converge".into()))?;
    let mut top = 0;
    for (i, &lambda) in eig.eigenvalues.iter().enumerate() {
        if !lambda.is_finite() {
            return Err(Error::Solver("non-finite eigenvalue".into()));
        }
        if lambda > eig.eigenvalues[top] {
            top = i;
        }
    }
    let y: CVector = eig.eigenvectors.column(top).into_owned();
    let mut v = lower
        .adjoint()
        .solve_upper_triangular(&y)
        .ok_or_else(|| Error::Solver("singular Cholesky factor".into()))?;

    let norm = v.norm();
    if !(norm.is_finite() && norm > 0.0) {
        return Err(Error::Solver(format!(
            "degenerate eigenvector (norm {norm})"
        )));
    }
    let pivot = v
        .iter()
        .find(|z| z.norm() > 1e-12 * norm)
        .copied()
        .unwrap_or(Complex64::new(1.0, 0.0));
    let rotate = pivot.conj() / pivot.norm();
    v *= rotate * Complex64::from(p_max.sqrt() / norm);
    if v.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
        return Err(Error::Solver("non-finite beamformer".into()));
    }
    Ok(Beamformer { w: v })
}

/// Result of optimising one flow. Rates are per-slot spectral
/// efficiencies in bit/s/Hz.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimizedLink {
    pub w_star: Beamformer,
    pub phases_star: PhaseConfig,
    pub secrecy_rate: f64,
    pub legit_rate: f64,
    pub eve_rate: f64,
    /// Coordinate passes performed (0 for strategies without a phase search).
    pub passes: usize,
}

/// How a flow's beamformer and RIS phases are chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    /// Coordinate phase search with the optimal beamformer per candidate.
    Proposed,
    /// Direct link only; optimal beamformer on the direct channels.
    WithoutRis,
    /// Random phases, then the optimal beamformer.
    Rps,
    /// Equal per-antenna power co-phased to the legitimate channel, then
    /// phase search with that beamformer held fixed.
    Apt,
}

impl Strategy {
    pub const ALL: [Strategy; 4] = [
        Strategy::Proposed,
        Strategy::WithoutRis,
        Strategy::Rps,
        Strategy::Apt,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Strategy::Proposed => "proposed",
            Strategy::WithoutRis => "without_ris",
            Strategy::Rps => "rps",
            Strategy::Apt => "apt",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Strategy::ALL
            .into_iter()
            .find(|st| st.name() == s)
            .ok_or_else(|| Error::config(format!("unknown scheme `{s}`")))
    }
}

/// Beamformer rule used while scoring phase candidates.
#[derive(Debug, Clone, Copy)]
enum BeamPolicy<'a> {
    Optimal,
    Fixed(&'a Beamformer),
}

#[derive(Debug, Clone)]
struct Scored {
    w: Beamformer,
    legit: f64,
    eve: f64,
}

impl Scored {
    /// Unclamped secrecy rate; the clamp only flattens the landscape.
    fn objective(&self) -> f64 {
        self.legit - self.eve
    }
}

struct Evaluator {
    p_max: f64,
    snr_scale: f64,
    noise: f64,
}

impl Evaluator {
    fn new(cfg: &ScenarioConfig) -> Self {
        let noise = cfg.noise_power_w();
        let p_max = cfg.p_max_w();
        Self {
            p_max,
            snr_scale: p_max / noise,
            noise,
        }
    }

    fn score(&self, legit: &CVector, eve: &CVector, policy: BeamPolicy<'_>) -> Result<Scored> {
        let w = match policy {
            BeamPolicy::Optimal => optimal_beamformer(
                &SecrecyQuotient::new(legit, eve, self.snr_scale)?,
                self.p_max,
            )?,
            BeamPolicy::Fixed(w) => w.clone(),
        };
        let rate = |c: &CVector| (gain(c, &w.w) / self.noise).ln_1p() / std::f64::consts::LN_2;
        Ok(Scored {
            legit: rate(legit),
            eve: rate(eve),
            w,
        })
    }
}

/// Per-element reflected contributions `h_l G_l` (rows, without phase).
struct Cascade<'a> {
    direct: &'a CVector,
    terms: CMatrix,
}

impl<'a> Cascade<'a> {
    fn new(direct: &'a CVector, ris: &CVector, g: &CMatrix) -> Self {
        let terms = CMatrix::from_fn(g.nrows(), g.ncols(), |l, m| ris[l] * g[(l, m)]);
        Self { direct, terms }
    }

    /// `d + sum_k e^{j phi_k} h_k G_k` with element `swap.0` forced to index
    /// `swap.1`. Always summed in element order so a configuration scores
    /// identically whichever element is being varied.
    fn composite(&self, phases: &PhaseConfig, swap: Option<(usize, u32)>) -> CVector {
        let mut out = self.direct.clone();
        for l in 0..self.terms.nrows() {
            let m = match swap {
                Some((el, m)) if el == l => m,
                _ => phases.indices()[l],
            };
            let ph = phasor_of(m, phases.quant_bits());
            for (o, t) in out.iter_mut().zip(self.terms.row(l).iter()) {
                *o += ph * t;
            }
        }
        out
    }
}

/// Coordinate search over the discrete phase grid with the optimal
/// beamformer re-solved per candidate. See [`local_search_trace`].
pub fn local_search_phases(
    channels: &ChannelSet,
    mr_index: usize,
    cfg: &ScenarioConfig,
    init: &PhaseConfig,
) -> Result<OptimizedLink> {
    local_search_trace(channels, mr_index, cfg, init).map(|(link, _)| link)
}

/// Runs the coordinate phase search and also returns the objective
/// (unclamped secrecy rate, bit/s/Hz) after the initial evaluation and after
/// every pass.
///
/// Each pass visits elements `0..L` in order and tries all `2^e` indices for
/// the element with the others fixed, keeping the best (lowest index on exact
/// ties). Passes repeat until one changes nothing or [`MAX_PASSES`] is hit.
pub fn local_search_trace(
    channels: &ChannelSet,
    mr_index: usize,
    cfg: &ScenarioConfig,
    init: &PhaseConfig,
) -> Result<(OptimizedLink, Vec<f64>)> {
    search(channels, mr_index, cfg, init, BeamPolicy::Optimal)
}

fn search(
    channels: &ChannelSet,
    mr_index: usize,
    cfg: &ScenarioConfig,
    init: &PhaseConfig,
    policy: BeamPolicy<'_>,
) -> Result<(OptimizedLink, Vec<f64>)> {
    let (d, h) = mr_channels(channels, mr_index)?;
    let l_count = channels.num_elements();
    if init.len() != l_count {
        return Err(Error::Dimension {
            context: "initial phases vs RIS elements",
            expected: l_count,
            actual: init.len(),
        });
    }
    let eval = Evaluator::new(cfg);
    let legit = Cascade::new(d, h, &channels.g);
    let eve = Cascade::new(&channels.d_e, &channels.h_e, &channels.g);

    let mut phases = init.clone();
    let mut current = eval.score(
        &legit.composite(&phases, None),
        &eve.composite(&phases, None),
        policy,
    )?;
    let mut trace = vec![current.objective()];
    let mut passes = 0;

    while passes < MAX_PASSES {
        passes += 1;
        let mut changed = false;
        for el in 0..l_count {
            let mut best: Option<(u32, Scored)> = None;
            for m in 0..phases.levels() {
                let cand = eval.score(
                    &legit.composite(&phases, Some((el, m))),
                    &eve.composite(&phases, Some((el, m))),
                    policy,
                )?;
                if best
                    .as_ref()
                    .is_none_or(|(_, b)| cand.objective() > b.objective())
                {
                    best = Some((m, cand));
                }
            }
            let (m, scored) = best.expect("at least one phase level");
            if m != phases.indices()[el] {
                phases.set_index(el, m);
                changed = true;
            }
            current = scored;
        }
        trace.push(current.objective());
        if !changed {
            break;
        }
    }

    Ok((finish(current, phases, passes), trace))
}

fn finish(scored: Scored, phases: PhaseConfig, passes: usize) -> OptimizedLink {
    OptimizedLink {
        secrecy_rate: scored.objective().max(0.0),
        legit_rate: scored.legit,
        eve_rate: scored.eve,
        w_star: scored.w,
        phases_star: phases,
        passes,
    }
}

/// Equal-gain transmission: `|w_m| = sqrt(P/M)`, phases conjugate to `channel`.
pub fn equal_gain_beamformer(channel: &CVector, p_max: f64) -> Beamformer {
    let amp = (p_max / channel.len() as f64).sqrt();
    let w = channel.map(|c| {
        let mag = c.norm();
        if mag > 0.0 {
            c.conj() * (amp / mag)
        } else {
            Complex64::new(amp, 0.0)
        }
    });
    Beamformer { w }
}

/// Optimises one flow under `strategy`. `rng` is only consumed by
/// [`Strategy::Rps`].
pub fn optimize_flow<R: Rng + ?Sized>(
    channels: &ChannelSet,
    mr_index: usize,
    cfg: &ScenarioConfig,
    strategy: Strategy,
    rng: &mut R,
) -> Result<OptimizedLink> {
    let l_count = channels.num_elements();
    let zeros = PhaseConfig::zeros(l_count, cfg.quant_bits);
    match strategy {
        Strategy::Proposed => local_search_phases(channels, mr_index, cfg, &zeros),
        Strategy::WithoutRis => {
            let (d, _) = mr_channels(channels, mr_index)?;
            let scored = Evaluator::new(cfg).score(d, &channels.d_e, BeamPolicy::Optimal)?;
            Ok(finish(scored, zeros, 0))
        }
        Strategy::Rps => {
            let phases = PhaseConfig::random(l_count, cfg.quant_bits, rng);
            let (d, h) = mr_channels(channels, mr_index)?;
            let legit = composite_channel(d, h, &channels.g, &phases)?;
            let eve = composite_channel(&channels.d_e, &channels.h_e, &channels.g, &phases)?;
            let scored = Evaluator::new(cfg).score(&legit, &eve, BeamPolicy::Optimal)?;
            Ok(finish(scored, phases, 0))
        }
        Strategy::Apt => {
            let (d, h) = mr_channels(channels, mr_index)?;
            let legit = composite_channel(d, h, &channels.g, &zeros)?;
            let w = equal_gain_beamformer(&legit, cfg.p_max_w());
            search(channels, mr_index, cfg, &zeros, BeamPolicy::Fixed(&w)).map(|(link, _)| link)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use rand_distr::{Distribution, StandardNormal};

    fn cgauss(rng: &mut ChaCha8Rng) -> Complex64 {
        let re: f64 = StandardNormal.sample(rng);
        let im: f64 = StandardNormal.sample(rng);
        Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
    }

    fn cvec(rng: &mut ChaCha8Rng, n: usize) -> CVector {
        CVector::from_iterator(n, (0..n).map(|_| cgauss(rng)))
    }

    fn random_unit(rng: &mut ChaCha8Rng, n: usize) -> CVector {
        let v = cvec(rng, n);
        let norm = v.norm();
        v / Complex64::from(norm)
    }

    #[test]
    fn scalar_pencil() {
        let q = SecrecyQuotient::new(
            &CVector::from_element(1, Complex64::new(2.0, 1.0)),
            &CVector::from_element(1, Complex64::new(0.5, 0.0)),
            3.0,
        )
        .unwrap();
        let bf = optimal_beamformer(&q, 4.0).unwrap();
        assert!((bf.power() - 4.0).abs() < 1e-12);
        assert!((bf.w[0] - Complex64::new(2.0, 0.0)).norm() < 1e-12);
        let u = bf.direction(4.0);
        let expected = (1.0 + 3.0 * 5.0) / (1.0 + 3.0 * 0.25);
        assert!((q.value(&u) - expected).abs() < 1e-12);
    }

    #[test]
    fn quotient_matrices_are_identity_plus_rank_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let (a, b) = (cvec(&mut rng, 4), cvec(&mut rng, 4));
        let q = SecrecyQuotient::new(&a, &b, 7.0).unwrap();
        for x in [&q.x_n, &q.x_e] {
            assert!((x - x.adjoint()).norm() < 1e-12);
            let eig = SymmetricEigen::new(x.clone());
            assert!(eig.eigenvalues.iter().all(|&l| l >= 1.0 - 1e-12));
        }
        assert!(SecrecyQuotient::new(&a, &CVector::zeros(3), 1.0).is_err());
    }

    #[test]
    fn no_eavesdropper_gives_maximum_ratio_transmission() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let c = cvec(&mut rng, 4);
        let q = SecrecyQuotient::new(&c, &CVector::zeros(4), 50.0).unwrap();
        let bf = optimal_beamformer(&q, 1.0).unwrap();
        let mrt = c.map(|z| z.conj()) / Complex64::from(c.norm());
        // Collinear with c^H.
        assert!((bf.w.dotc(&mrt).norm() - 1.0).abs() < 1e-10);
        let best = q.value(&bf.w);
        for _ in 0..10_000 {
            let u = random_unit(&mut rng, 4);
            assert!(best >= q.value(&u) - 1e-9);
        }
    }

    #[test]
    fn beamformer_beats_random_search() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        for m in [2usize, 4] {
            let q = SecrecyQuotient::new(&cvec(&mut rng, m), &cvec(&mut rng, m), 30.0).unwrap();
            let bf = optimal_beamformer(&q, 2.0).unwrap();
            assert!((bf.power() - 2.0).abs() < 2.0 * 1e-9);
            let best = q.value(&bf.direction(2.0));
            let oracle = (0..100_000)
                .map(|_| q.value(&random_unit(&mut rng, m)))
                .fold(f64::MIN, f64::max);
            assert!(best >= oracle * (1.0 - 1e-6), "m={m}: {best} vs {oracle}");
        }
    }

    #[test]
    fn strategy_names_round_trip() {
        for s in Strategy::ALL {
            assert_eq!(s.name().parse::<Strategy>().unwrap(), s);
        }
        assert!("manifold".parse::<Strategy>().is_err());
    }

    fn synthetic_channels(rng: &mut ChaCha8Rng, m: usize, l: usize) -> ChannelSet {
        // Unit-scale links so the reflected path is comparable to the direct one.
        let g = CMatrix::from_fn(l, m, |_, _| cgauss(rng) * 0.3);
        ChannelSet::from_parts(
            vec![cvec(rng, m), cvec(rng, m)],
            g,
            vec![cvec(rng, l), cvec(rng, l)],
            cvec(rng, m) * Complex64::from(0.8),
            cvec(rng, l),
        )
        .unwrap()
    }

    fn unit_snr_cfg(m: usize, l: usize, e: u32) -> ScenarioConfig {
        // P_max = 1 W, noise = 1 W.
        ScenarioConfig {
            num_antennas: m,
            num_ris_elements: l,
            quant_bits: e,
            p_max_dbm: 30.0,
            noise_psd_dbm_per_mhz: 30.0 - 20.0,
            ..Default::default()
        }
    }

    #[test]
    fn single_element_one_bit_is_exhaustive() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let ch = synthetic_channels(&mut rng, 3, 1);
        let cfg = unit_snr_cfg(3, 1, 1);
        let out = local_search_phases(&ch, 0, &cfg, &PhaseConfig::zeros(1, 1)).unwrap();
        // Both one-bit levels reflect identically, so the lower index is kept.
        assert_eq!(out.phases_star.indices(), &[0]);
        assert_eq!(out.passes, 1);
    }

    #[test]
    fn search_reaches_coordinate_optimum() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let cfg = unit_snr_cfg(4, 3, 2);
        for _ in 0..20 {
            let ch = synthetic_channels(&mut rng, 4, 3);
            let out = local_search_phases(&ch, 1, &cfg, &PhaseConfig::zeros(3, 2)).unwrap();
            assert!(out.passes < MAX_PASSES);
            for el in 0..3 {
                for m in 0..4 {
                    let mut p = out.phases_star.clone();
                    p.set_index(el, m);
                    let legit = composite_channel(&ch.d[1], &ch.h[1], &ch.g, &p).unwrap();
                    let eve = composite_channel(&ch.d_e, &ch.h_e, &ch.g, &p).unwrap();
                    let s = Evaluator::new(&cfg)
                        .score(&legit, &eve, BeamPolicy::Optimal)
                        .unwrap();
                    assert!(s.objective().max(0.0) <= out.secrecy_rate + 1e-9);
                }
            }
        }
    }

    #[test]
    fn passes_are_monotone() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let cfg = unit_snr_cfg(4, 8, 3);
        for _ in 0..10 {
            let ch = synthetic_channels(&mut rng, 4, 8);
            let (_, trace) = local_search_trace(&ch, 0, &cfg, &PhaseConfig::zeros(8, 3)).unwrap();
            for w in trace.windows(2) {
                assert!(w[1] >= w[0] - 1e-12, "{trace:?}");
            }
        }
    }

    #[test]
    fn strategies_use_full_power() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let cfg = unit_snr_cfg(4, 6, 2);
        let ch = synthetic_channels(&mut rng, 4, 6);
        for s in Strategy::ALL {
            let out = optimize_flow(&ch, 0, &cfg, s, &mut rng).unwrap();
            assert!(((out.w_star.power() - 1.0) / 1.0).abs() < 1e-9, "{s}");
            assert_eq!(out.secrecy_rate, (out.legit_rate - out.eve_rate).max(0.0));
        }
    }

    #[test]
    fn apt_has_equal_antenna_power() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let cfg = unit_snr_cfg(4, 5, 2);
        let ch = synthetic_channels(&mut rng, 4, 5);
        let out = optimize_flow(&ch, 1, &cfg, Strategy::Apt, &mut rng).unwrap();
        for w in out.w_star.w.iter() {
            assert!((w.norm() - 0.5).abs() < 1e-12);
        }
    }

    #[test]
    fn without_ris_ignores_the_surface() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let cfg = unit_snr_cfg(4, 6, 2);
        let ch = synthetic_channels(&mut rng, 4, 6);
        let a = optimize_flow(&ch, 0, &cfg, Strategy::WithoutRis, &mut rng).unwrap();
        let mut other = ch.clone();
        other.g = CMatrix::from_fn(9, 4, |_, _| cgauss(&mut rng));
        other.h = vec![cvec(&mut rng, 9), cvec(&mut rng, 9)];
        other.h_e = cvec(&mut rng, 9);
        let cfg9 = unit_snr_cfg(4, 9, 2);
        let b = optimize_flow(&other, 0, &cfg9, Strategy::WithoutRis, &mut rng).unwrap();
        assert_eq!(a.w_star, b.w_star);
        assert_eq!(a.secrecy_rate, b.secrecy_rate);
    }

    #[test]
    fn solver_rejects_indefinite_pencil() {
        let q = SecrecyQuotient {
            x_n: CMatrix::identity(2, 2),
            x_e: -CMatrix::identity(2, 2),
        };
        assert!(matches!(optimal_beamformer(&q, 1.0), Err(Error::Solver(_))));
    }
}
