//! Greedy TDMA packing of flows into one superframe.

use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::optimizer::OptimizedLink;
use crate::phy::{secrecy_capacity, secrecy_feasible, throughput};
use crate::scenario::ScenarioConfig;

/// A downlink request from one MR with a minimum throughput.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FlowRequest {
    pub flow_id: usize,
    pub mr_index: usize,
    pub qos_bps: f64,
}

/// Flow priority: the share of a superframe's slots one slot of the flow
/// covers, `R dT / (q (T_s + K dT))`. `None` when the flow cannot make any
/// progress (zero rate).
pub fn priority(rate_per_slot: f64, qos: f64, cfg: &ScenarioConfig) -> Option<f64> {
    if !(rate_per_slot > 0.0 && qos > 0.0) {
        return None;
    }
    Some(rate_per_slot * cfg.slot_time_s / (qos * cfg.superframe_s()))
}

/// Whole slots needed to meet the QoS target, `ceil(1 / priority)`.
///
/// Reciprocals within 1e-12 (relative) of an integer are snapped to it so
/// that exact fits are not pushed up by rounding noise.
pub fn slots_needed(priority: f64) -> usize {
    let exact = priority.recip();
    let nearest = exact.round();
    let t = if (exact - nearest).abs() <= 1e-12 * nearest.max(1.0) {
        nearest
    } else {
        exact.ceil()
    };
    if t >= usize::MAX as f64 {
        usize::MAX
    } else {
        t as usize
    }
}

/// Result of scheduling one superframe. Per-flow vectors follow the order
/// of the input flows.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScheduleOutcome {
    pub delta: Vec<bool>,
    /// Slots each flow needs; `None` when it failed the secrecy gate or has no rate.
    pub slots: Vec<Option<usize>>,
    pub priority: Vec<Option<f64>>,
    pub assignment: Vec<Option<Range<usize>>>,
    pub slots_used: usize,
    pub completed: usize,
    pub total_secrecy_bps: f64,
    pub total_throughput_bps: f64,
}

impl ScheduleOutcome {
    fn empty(n: usize) -> Self {
        Self {
            delta: vec![false; n],
            slots: vec![None; n],
            priority: vec![None; n],
            assignment: vec![None; n],
            slots_used: 0,
            completed: 0,
            total_secrecy_bps: 0.0,
            total_throughput_bps: 0.0,
        }
    }
}

/// Gate, prioritise and greedily pack flows.
///
/// Flows whose per-slot secrecy rate is below the required share of their
/// legitimate rate are dropped. The rest are visited in decreasing priority
/// (stable on ties) and accepted while they fit in the remaining slots; a
/// flow that does not fit is skipped and the scan continues. Accepted flows
/// get contiguous slot ranges in acceptance order.
pub fn schedule(
    flows: &[FlowRequest],
    links: &[OptimizedLink],
    cfg: &ScenarioConfig,
) -> Result<ScheduleOutcome> {
    if flows.len() != links.len() {
        return Err(Error::Dimension {
            context: "optimised links vs flows",
            expected: flows.len(),
            actual: links.len(),
        });
    }
    let mut out = ScheduleOutcome::empty(flows.len());
    let mut candidates = Vec::with_capacity(flows.len());
    for (i, (flow, link)) in flows.iter().zip(links).enumerate() {
        let rate = cfg.bandwidth * link.legit_rate;
        let eve_rate = cfg.bandwidth * link.eve_rate;
        if !secrecy_feasible(rate, eve_rate) {
            continue;
        }
        let Some(p) = priority(rate, flow.qos_bps, cfg) else {
            continue;
        };
        out.priority[i] = Some(p);
        out.slots[i] = Some(slots_needed(p));
        candidates.push(i);
    }
    candidates.sort_by(|&a, &b| {
        let (pa, pb) = (out.priority[a].unwrap(), out.priority[b].unwrap());
        pb.total_cmp(&pa)
    });

    let k = cfg.num_slots;
    for i in candidates {
        let need = out.slots[i].expect("candidate has a slot count");
        if need <= k - out.slots_used {
            let start = out.slots_used;
            out.assignment[i] = Some(start..start + need);
            out.slots_used += need;
            out.delta[i] = true;
            out.completed += 1;

            let legit = throughput(cfg.bandwidth * links[i].legit_rate, need, cfg)?;
            let eve = throughput(cfg.bandwidth * links[i].eve_rate, need, cfg)?;
            out.total_secrecy_bps += secrecy_capacity(legit, eve);
            out.total_throughput_bps += legit;
        }
    }
    Ok(out)
}
