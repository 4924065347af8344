//! The two per-codon state machines driving strand splitting.
//!
//! `StrandLocation` lets a codon work out whether it sits at an extreme end
//! of a (possibly incomplete) double strand. `SplitPhase` then runs the
//! handshake: readiness spreads from the end with no red neighbour to the end
//! with no blue neighbour, which can only succeed on a complete double
//! strand; the splitting wave then travels back, and each codon entering it
//! releases its vertical bond and fires its yellow field.
//!
//! Updates are synchronous: every transition reads a snapshot of the
//! neighbours' previous states. Codons stuck next to a gap sit in
//! `EndCandidate`, which blocks the readiness wave until the gap fills.

use crate::model::{CodonId, SplitPhase, StrandLocation};

/// Neighbour snapshot for one codon, taken before a synchronous update phase.
#[derive(Clone, Copy, Debug, Default)]
pub struct NeighborView {
    pub red: Option<NeighborState>,
    pub blue: Option<NeighborState>,
    pub vertical: Option<NeighborState>,
}

#[derive(Clone, Copy, Debug)]
pub struct NeighborState {
    pub id: CodonId,
    pub strand_location: StrandLocation,
    pub split_phase: SplitPhase,
}

impl NeighborView {
    fn horizontal_count(&self) -> u32 {
        self.red.is_some() as u32 + self.blue.is_some() as u32
    }
}

/// One strand-location transition. Rules, applied to the snapshot:
/// - NotEnd -> EndCandidate when the codon has exactly one red-or-blue
///   neighbour and a vertical neighbour.
/// - EndCandidate -> NotEnd when either condition fails.
/// - EndCandidate -> EndConfirmed when, additionally, the vertical neighbour
///   is itself EndCandidate or EndConfirmed.
/// - EndConfirmed -> NotEnd when an end condition fails or the vertical
///   neighbour drops back to NotEnd.
pub fn update_strand_location(current: StrandLocation, nv: &NeighborView) -> StrandLocation {
    let one_horizontal = nv.horizontal_count() == 1;
    let vertical = nv.vertical;
    match current {
        StrandLocation::NotEnd => {
            if one_horizontal && vertical.is_some() {
                StrandLocation::EndCandidate
            } else {
                StrandLocation::NotEnd
            }
        }
        StrandLocation::EndCandidate => {
            if !one_horizontal || vertical.is_none() {
                StrandLocation::NotEnd
            } else if matches!(
                vertical.map(|v| v.strand_location),
                Some(StrandLocation::EndCandidate) | Some(StrandLocation::EndConfirmed)
            ) {
                StrandLocation::EndConfirmed
            } else {
                StrandLocation::EndCandidate
            }
        }
        StrandLocation::EndConfirmed => {
            if !one_horizontal
                || vertical.is_none()
                || vertical.map(|v| v.strand_location) == Some(StrandLocation::NotEnd)
            {
                StrandLocation::NotEnd
            } else {
                StrandLocation::EndConfirmed
            }
        }
    }
}

/// Inputs to a splitting transition. Strand-location values are the ones
/// committed by this step's location phase; split phases are the previous
/// step's.
#[derive(Clone, Copy, Debug)]
pub struct SplitInputs {
    pub my_location: StrandLocation,
    /// Vertical neighbour's strand location; `None` when unbonded.
    pub vertical_location: Option<StrandLocation>,
    pub red_phase: Option<SplitPhase>,
    pub blue_phase: Option<SplitPhase>,
    /// Steps spent in `Splitting` so far.
    pub z_steps: u64,
    /// Step threshold for leaving `Splitting` at a no-red end.
    pub split_window: u64,
}

impl SplitInputs {
    /// The wave predicates require that neither this codon nor its vertical
    /// neighbour is a gap-edge `EndCandidate`. A missing vertical neighbour
    /// does not block: the bond may legitimately have been released already
    /// by the partner's own split.
    fn not_blocked(&self) -> bool {
        self.my_location != StrandLocation::EndCandidate
            && self.vertical_location != Some(StrandLocation::EndCandidate)
    }

    fn confirmed_end_pair(&self) -> bool {
        self.my_location == StrandLocation::EndConfirmed
            && self.vertical_location == Some(StrandLocation::EndConfirmed)
    }
}

/// One splitting transition:
/// - Idle -> Ready at a confirmed end pair with no red neighbour, or when the
///   red neighbour is Ready and nothing blocks.
/// - Ready -> Splitting at a confirmed end pair with no blue neighbour, or
///   when the blue neighbour is Splitting and nothing blocks.
/// - Splitting -> Idle after the split window at a no-red end, or when the
///   red neighbour is already Idle.
pub fn update_splitting(current: SplitPhase, inputs: &SplitInputs) -> SplitPhase {
    match current {
        SplitPhase::Idle => {
            let end_start = inputs.confirmed_end_pair() && inputs.red_phase.is_none();
            let wave = inputs.not_blocked() && inputs.red_phase == Some(SplitPhase::Ready);
            if end_start || wave {
                SplitPhase::Ready
            } else {
                SplitPhase::Idle
            }
        }
        SplitPhase::Ready => {
            let end_start = inputs.confirmed_end_pair() && inputs.blue_phase.is_none();
            let wave = inputs.not_blocked() && inputs.blue_phase == Some(SplitPhase::Splitting);
            if end_start || wave {
                SplitPhase::Splitting
            } else {
                SplitPhase::Ready
            }
        }
        SplitPhase::Splitting => {
            let timed_out = inputs.red_phase.is_none() && inputs.z_steps >= inputs.split_window;
            let follow = inputs.red_phase == Some(SplitPhase::Idle);
            if timed_out || follow {
                SplitPhase::Idle
            } else {
                SplitPhase::Splitting
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nb(sl: StrandLocation, sp: SplitPhase) -> NeighborState {
        NeighborState {
            id: CodonId(0),
            strand_location: sl,
            split_phase: sp,
        }
    }

    #[test]
    fn free_codon_stays_not_end() {
        let nv = NeighborView::default();
        assert_eq!(
            update_strand_location(StrandLocation::NotEnd, &nv),
            StrandLocation::NotEnd
        );
    }

    #[test]
    fn one_horizontal_plus_vertical_becomes_candidate() {
        let nv = NeighborView {
            red: Some(nb(StrandLocation::NotEnd, SplitPhase::Idle)),
            blue: None,
            vertical: Some(nb(StrandLocation::NotEnd, SplitPhase::Idle)),
        };
        assert_eq!(
            update_strand_location(StrandLocation::NotEnd, &nv),
            StrandLocation::EndCandidate
        );
    }

    #[test]
    fn interior_codon_never_promotes() {
        let nv = NeighborView {
            red: Some(nb(StrandLocation::NotEnd, SplitPhase::Idle)),
            blue: Some(nb(StrandLocation::NotEnd, SplitPhase::Idle)),
            vertical: Some(nb(StrandLocation::EndConfirmed, SplitPhase::Idle)),
        };
        assert_eq!(
            update_strand_location(StrandLocation::NotEnd, &nv),
            StrandLocation::NotEnd
        );
        assert_eq!(
            update_strand_location(StrandLocation::EndCandidate, &nv),
            StrandLocation::NotEnd
        );
    }

    #[test]
    fn candidate_confirms_when_partner_agrees() {
        let nv = NeighborView {
            red: Some(nb(StrandLocation::NotEnd, SplitPhase::Idle)),
            blue: None,
            vertical: Some(nb(StrandLocation::EndCandidate, SplitPhase::Idle)),
        };
        assert_eq!(
            update_strand_location(StrandLocation::EndCandidate, &nv),
            StrandLocation::EndConfirmed
        );
    }

    #[test]
    fn confirmed_drops_when_partner_resets() {
        let nv = NeighborView {
            red: Some(nb(StrandLocation::NotEnd, SplitPhase::Idle)),
            blue: None,
            vertical: Some(nb(StrandLocation::NotEnd, SplitPhase::Idle)),
        };
        assert_eq!(
            update_strand_location(StrandLocation::EndConfirmed, &nv),
            StrandLocation::NotEnd
        );
    }

    #[test]
    fn ready_starts_at_no_red_confirmed_end() {
        let inputs = SplitInputs {
            my_location: StrandLocation::EndConfirmed,
            vertical_location: Some(StrandLocation::EndConfirmed),
            red_phase: None,
            blue_phase: Some(SplitPhase::Idle),
            z_steps: 0,
            split_window: 1000,
        };
        assert_eq!(update_splitting(SplitPhase::Idle, &inputs), SplitPhase::Ready);
    }

    #[test]
    fn ready_wave_follows_red_neighbor() {
        // Interior codon: NotEnd, vertical partner NotEnd, red neighbour Ready.
        let inputs = SplitInputs {
            my_location: StrandLocation::NotEnd,
            vertical_location: Some(StrandLocation::NotEnd),
            red_phase: Some(SplitPhase::Ready),
            blue_phase: Some(SplitPhase::Idle),
            z_steps: 0,
            split_window: 1000,
        };
        assert_eq!(update_splitting(SplitPhase::Idle, &inputs), SplitPhase::Ready);
    }

    #[test]
    fn gap_edge_blocks_ready_wave() {
        // A codon whose vertical partner sits at a gap edge must not go Ready.
        let inputs = SplitInputs {
            my_location: StrandLocation::NotEnd,
            vertical_location: Some(StrandLocation::EndCandidate),
            red_phase: Some(SplitPhase::Ready),
            blue_phase: None,
            z_steps: 0,
            split_window: 1000,
        };
        assert_eq!(update_splitting(SplitPhase::Idle, &inputs), SplitPhase::Idle);
        // Likewise when the codon itself is a gap edge.
        let inputs = SplitInputs {
            my_location: StrandLocation::EndCandidate,
            vertical_location: Some(StrandLocation::NotEnd),
            red_phase: Some(SplitPhase::Ready),
            blue_phase: None,
            z_steps: 0,
            split_window: 1000,
        };
        assert_eq!(update_splitting(SplitPhase::Idle, &inputs), SplitPhase::Idle);
    }

    #[test]
    fn splitting_starts_at_no_blue_confirmed_end() {
        let inputs = SplitInputs {
            my_location: StrandLocation::EndConfirmed,
            vertical_location: Some(StrandLocation::EndConfirmed),
            red_phase: Some(SplitPhase::Ready),
            blue_phase: None,
            z_steps: 0,
            split_window: 1000,
        };
        assert_eq!(update_splitting(SplitPhase::Ready, &inputs), SplitPhase::Splitting);
    }

    #[test]
    fn splitting_wave_follows_blue_neighbor_even_after_release() {
        // The codon's own vertical bond may already be gone (released by the
        // partner's split); the wave must still pass through.
        let inputs = SplitInputs {
            my_location: StrandLocation::NotEnd,
            vertical_location: None,
            red_phase: Some(SplitPhase::Ready),
            blue_phase: Some(SplitPhase::Splitting),
            z_steps: 0,
            split_window: 1000,
        };
        assert_eq!(update_splitting(SplitPhase::Ready, &inputs), SplitPhase::Splitting);
    }

    #[test]
    fn splitting_resets_after_window_at_no_red_end() {
        let mut inputs = SplitInputs {
            my_location: StrandLocation::NotEnd,
            vertical_location: None,
            red_phase: None,
            blue_phase: Some(SplitPhase::Splitting),
            z_steps: 999,
            split_window: 1000,
        };
        assert_eq!(update_splitting(SplitPhase::Splitting, &inputs), SplitPhase::Splitting);
        inputs.z_steps = 1000;
        assert_eq!(update_splitting(SplitPhase::Splitting, &inputs), SplitPhase::Idle);
    }

    #[test]
    fn splitting_reset_follows_red_neighbor() {
        let inputs = SplitInputs {
            my_location: StrandLocation::NotEnd,
            vertical_location: None,
            red_phase: Some(SplitPhase::Idle),
            blue_phase: None,
            z_steps: 3,
            split_window: 1000,
        };
        assert_eq!(update_splitting(SplitPhase::Splitting, &inputs), SplitPhase::Idle);
    }
}
