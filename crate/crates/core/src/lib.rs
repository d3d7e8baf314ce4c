//! Simulation and optimisation for RIS-assisted secure downlink scheduling
//! in a high-speed-rail mmWave cell.
//!
//! A trial builds the cell geometry ([`scenario`]), draws one Rician fading
//! realisation and forms the composite channels ([`channel`]), optimises each
//! flow's beamformer and discrete RIS phases ([`optimizer`]), and packs the
//! flows that pass the secrecy gate into the superframe ([`scheduler`]).
//! [`harness`] runs Monte-Carlo trials and sweeps and writes CSV.

pub mod channel;
pub mod error;
pub mod harness;
pub mod optimizer;
pub mod phy;
pub mod scenario;
pub mod scheduler;

pub use nalgebra::Complex;

/// Complex baseband sample.
pub type Complex64 = Complex<f64>;
pub type CVector = nalgebra::DVector<Complex64>;
pub type CMatrix = nalgebra::DMatrix<Complex64>;

pub use channel::{compose_channels, draw_fading, path_loss, ChannelSet, FadingDraw};
pub use error::{Error, Result};
pub use harness::{run_sweep, run_trial, Axis, SweepSpec, TrialRecord};
pub use optimizer::{
    local_search_phases, optimal_beamformer, optimize_flow, OptimizedLink, SecrecyQuotient,
    Strategy,
};
pub use phy::{Beamformer, LinkMetrics, PhaseConfig};
pub use scenario::{build_geometry, place_ris, Geometry, ScenarioConfig};
pub use scheduler::{schedule, FlowRequest, ScheduleOutcome};
