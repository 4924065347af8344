//! The simulation engine: scenario construction, the committed step in a
//! fixed phase order, and the run driver with metrics, snapshots, and stop
//! rules.
//!
//! Phase order within one step (fixed; required for determinism):
//!   1. rebuild the spatial index, detect field contacts
//!   2. break designated bonds whose circles separated
//!   3. form new bonds over eligible contacts, in canonical order
//!   4. field-size bookkeeping
//!   5. strand-location transitions, then splitting transitions (synchronous,
//!      on snapshots)
//!   6. execute splits for codons that entered the splitting phase
//!   7. physics: brownian, pair forces, pair damping, viscosity, integrate,
//!      container walls
//!   8. timers
//!
//! All randomness is drawn from per-(step, codon) substreams of the master
//! seed, so a run can be replayed from any snapshot.

use crate::analytics::{extract_strands, StrandTracker};
use crate::bonding::{
    bond_separated_at, break_bond, collect_bonds, compute_tips, detect_contacts, form_bond,
    green_purple_aligned, red_blue_aligned, Bond, ContactPair, SpatialIndex,
};
use crate::config::{ConfigError, Params, SimulationConfig};
use crate::events::{EventKind, EventRecord};
use crate::fsm::{
    update_splitting, update_strand_location, NeighborState, NeighborView, SplitInputs,
};
use crate::model::{
    field_radius, CodonId, CodonState, CodonType, FieldSize, FieldSlot, SplitPhase,
    StrandLocation,
};
use crate::physics::{
    absorb_forces, advance_pose, apply_brownian, apply_spring_damping, apply_viscosity,
    attractive_spring_at, enforce_container, pair_arm_force, repulsive_yellow_at,
    straightening_torque, ForceAccumulator,
};
use crate::rng::{substream, PURPOSE_BROWNIAN, PURPOSE_INIT};
use crate::vec2::{wrap_angle, Vec2};
use std::f64::consts::{FRAC_PI_2, PI};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum EngineError {
    #[error(transparent)]
    Config(#[from] ConfigError),
}

/// Build a pre-assembled strand: one codon per bit, middles colinear at the
/// tip-coincident equilibrium spacing, consecutive red-blue bonds designated
/// with both fields large. The codon with no blue bond carries bit 0, and
/// traversal toward red neighbours reads the string in order.
pub fn encode_seed_strand(
    bits: &str,
    center: Vec2,
    angle: f64,
    p: &Params,
) -> Result<Vec<(CodonType, CodonState)>, ConfigError> {
    if bits.is_empty() {
        return Err(ConfigError::SeedBits("seed bits must be nonempty".into()));
    }
    let types: Vec<CodonType> = bits
        .chars()
        .map(|c| {
            CodonType::from_bit(c).ok_or_else(|| {
                ConfigError::SeedBits(format!("invalid seed bit {c:?}; only '0' and '1' allowed"))
            })
        })
        .collect::<Result<_, _>>()?;
    let n = types.len();
    let spacing = p.arm_length.red + p.arm_length.blue;
    // The strand axis points along the blue arms; placement i carries bit
    // n-1-i so that the blue-free end (the last placement) is bit 0.
    let axis = crate::model::unit_heading(angle - FRAC_PI_2);
    let mut codons: Vec<(CodonType, CodonState)> = (0..n)
        .map(|i| {
            let offset = (i as f64 - (n as f64 - 1.0) / 2.0) * spacing;
            let ty = types[n - 1 - i];
            (ty, CodonState::free_at(center + axis * offset, wrap_angle(angle)))
        })
        .collect();
    for i in 0..n - 1 {
        form_bond(
            &mut codons,
            Bond {
                a: CodonId(i as u32),
                slot_a: FieldSlot::Blue,
                b: CodonId(i as u32 + 1),
                slot_b: FieldSlot::Red,
            },
        );
    }
    for (_, st) in codons.iter_mut() {
        if st.horizontal_neighbors() > 0 {
            st.field_size.set(FieldSlot::Vertical, FieldSize::Large);
        }
    }
    Ok(codons)
}

pub struct Engine {
    cfg: SimulationConfig,
    params: Params,
    codons: Vec<(CodonType, CodonState)>,
    step: u64,
    // Reused per-step buffers.
    index: SpatialIndex,
    tips: Vec<[crate::vec2::Vec2; 4]>,
    contacts: Vec<ContactPair>,
    bonds: Vec<Bond>,
    forces: ForceAccumulator,
    location_snapshot: Vec<StrandLocation>,
    split_snapshot: Vec<SplitPhase>,
    entered_split: Vec<usize>,
}

impl Engine {
    /// Initialize the soup: the optional seed strand at its pose, then free
    /// codons (all type 0, then all type 1) at uniform random positions and
    /// headings, everything at rest.
    pub fn new(cfg: SimulationConfig) -> Result<Engine, EngineError> {
        cfg.validate()?;
        let params = Params::derive(&cfg);
        let mut codons = Vec::new();
        if let Some(seed) = &cfg.seed_strand {
            let strand =
                encode_seed_strand(&seed.bits, Vec2::new(seed.x, seed.y), seed.angle, &params)?;
            for (_, st) in &strand {
                if st.position.x < 0.0
                    || st.position.x > params.container_width
                    || st.position.y < 0.0
                    || st.position.y > params.container_height
                {
                    return Err(EngineError::Config(ConfigError::SeedPlacement(format!(
                        "codon middle at ({:.3}, {:.3}) lies outside the {} x {} container",
                        st.position.x,
                        st.position.y,
                        params.container_width,
                        params.container_height
                    ))));
                }
            }
            codons = strand;
        }
        let mut rng = substream(cfg.rng_seed, PURPOSE_INIT, 0, 0);
        let mut place_free = |ty: CodonType, count: u32, codons: &mut Vec<(CodonType, CodonState)>| {
            for _ in 0..count {
                let x = rng.next_f64() * params.container_width;
                let y = rng.next_f64() * params.container_height;
                let angle = wrap_angle(rng.next_symmetric() * PI);
                codons.push((ty, CodonState::free_at(Vec2::new(x, y), angle)));
            }
        };
        place_free(CodonType::Type0, cfg.free_codons_type0, &mut codons);
        place_free(CodonType::Type1, cfg.free_codons_type1, &mut codons);

        let index = SpatialIndex::new(&params);
        let n = codons.len();
        Ok(Engine {
            cfg,
            params,
            codons,
            step: 0,
            index,
            tips: Vec::with_capacity(n),
            contacts: Vec::new(),
            bonds: Vec::new(),
            forces: ForceAccumulator::new(n),
            location_snapshot: Vec::with_capacity(n),
            split_snapshot: Vec::with_capacity(n),
            entered_split: Vec::new(),
        })
    }

    /// Rebuild an engine around an existing state (snapshot restore).
    pub fn from_parts(
        cfg: SimulationConfig,
        codons: Vec<(CodonType, CodonState)>,
        step: u64,
    ) -> Result<Engine, EngineError> {
        cfg.validate()?;
        let params = Params::derive(&cfg);
        let index = SpatialIndex::new(&params);
        let n = codons.len();
        Ok(Engine {
            cfg,
            params,
            codons,
            step,
            index,
            tips: Vec::with_capacity(n),
            contacts: Vec::new(),
            bonds: Vec::new(),
            forces: ForceAccumulator::new(n),
            location_snapshot: Vec::with_capacity(n),
            split_snapshot: Vec::with_capacity(n),
            entered_split: Vec::new(),
        })
    }

    pub fn config(&self) -> &SimulationConfig {
        &self.cfg
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn codons(&self) -> &[(CodonType, CodonState)] {
        &self.codons
    }

    pub fn step_count(&self) -> u64 {
        self.step
    }

    pub fn normalized_time(&self) -> f64 {
        self.step as f64 * self.params.dt
    }

    /// Direct state access for scenario construction in tests and the
    /// verification harness.
    pub fn codons_mut(&mut self) -> &mut Vec<(CodonType, CodonState)> {
        &mut self.codons
    }

    /// Advance one step, appending this step's events (stamped with the new
    /// step number) to `events`.
    pub fn advance(&mut self, events: &mut Vec<EventRecord>) {
        let stamp = self.step + 1;
        let n = self.codons.len();

        // Phase 1: contacts from the current poses and field sizes. The tip
        // buffer stays valid through the force phase: positions only change
        // at the end of the step.
        compute_tips(&self.codons, &self.params, &mut self.tips);
        detect_contacts(&self.codons, &self.tips, &self.params, &mut self.index, &mut self.contacts);

        // Phase 2: break bonds whose field circles separated.
        collect_bonds(&self.codons, &mut self.bonds);
        for i in 0..self.bonds.len() {
            let bond = self.bonds[i];
            let tip_a = self.tips[bond.a.index()][bond.slot_a.index()];
            let tip_b = self.tips[bond.b.index()][bond.slot_b.index()];
            if bond_separated_at(
                &self.codons[bond.a.index()].1,
                &self.codons[bond.b.index()].1,
                tip_a,
                tip_b,
                bond,
                &self.params,
            ) {
                break_bond(&mut self.codons, bond);
                events.push(EventRecord {
                    step: stamp,
                    kind: EventKind::BondBroken {
                        a: bond.a,
                        slot_a: bond.slot_a,
                        b: bond.b,
                        slot_b: bond.slot_b,
                    },
                });
            }
        }

        // Phase 3: bond formation over the contacts detected in phase 1, in
        // canonical order. When several contacts compete for one slot, the
        // canonically smallest wins and the rest are ignored this step.
        for i in 0..self.contacts.len() {
            let c = self.contacts[i];
            match (c.slot_a, c.slot_b) {
                (FieldSlot::Red, FieldSlot::Blue) | (FieldSlot::Blue, FieldSlot::Red) => {
                    // Initiation requires both fields small at detection.
                    if c.size_a == FieldSize::Large || c.size_b == FieldSize::Large {
                        continue;
                    }
                    let (red_id, blue_id) = if c.slot_a == FieldSlot::Red {
                        (c.a, c.b)
                    } else {
                        (c.b, c.a)
                    };
                    if self.codons[red_id.index()].1.bond_red.is_some()
                        || self.codons[blue_id.index()].1.bond_blue.is_some()
                    {
                        continue;
                    }
                    let angle_red = self.codons[red_id.index()].1.angle;
                    let angle_blue = self.codons[blue_id.index()].1.angle;
                    if !red_blue_aligned(angle_red, angle_blue, &self.params) {
                        continue;
                    }
                    let spontaneous = self.codons[red_id.index()].1.is_free()
                        && self.codons[blue_id.index()].1.is_free();
                    form_bond(
                        &mut self.codons,
                        Bond {
                            a: red_id,
                            slot_a: FieldSlot::Red,
                            b: blue_id,
                            slot_b: FieldSlot::Blue,
                        },
                    );
                    events.push(EventRecord {
                        step: stamp,
                        kind: EventKind::BondFormed {
                            a: red_id,
                            slot_a: FieldSlot::Red,
                            b: blue_id,
                            slot_b: FieldSlot::Blue,
                        },
                    });
                    if spontaneous {
                        events.push(EventRecord {
                            step: stamp,
                            kind: EventKind::SpontaneousDimer { a: red_id, b: blue_id },
                        });
                    }
                }
                (FieldSlot::Vertical, FieldSlot::Vertical) => {
                    // Purple bonds only to green; two large fields can only
                    // maintain an existing bond, never initiate one.
                    if self.codons[c.a.index()].0 == self.codons[c.b.index()].0 {
                        continue;
                    }
                    if c.size_a == FieldSize::Large && c.size_b == FieldSize::Large {
                        continue;
                    }
                    if self.codons[c.a.index()].1.bond_vertical.is_some()
                        || self.codons[c.b.index()].1.bond_vertical.is_some()
                    {
                        continue;
                    }
                    let angle_a = self.codons[c.a.index()].1.angle;
                    let angle_b = self.codons[c.b.index()].1.angle;
                    if !green_purple_aligned(angle_a, angle_b, &self.params) {
                        continue;
                    }
                    form_bond(
                        &mut self.codons,
                        Bond {
                            a: c.a,
                            slot_a: FieldSlot::Vertical,
                            b: c.b,
                            slot_b: FieldSlot::Vertical,
                        },
                    );
                    events.push(EventRecord {
                        step: stamp,
                        kind: EventKind::BondFormed {
                            a: c.a,
                            slot_a: FieldSlot::Vertical,
                            b: c.b,
                            slot_b: FieldSlot::Vertical,
                        },
                    });
                }
                _ => {}
            }
        }

        // Phase 4: field sizes follow the bond state; expired yellows shrink.
        for (_, st) in self.codons.iter_mut() {
            crate::bonding::update_field_sizes(st, &self.params);
        }

        // Phase 5a: strand-location transitions on a synchronous snapshot.
        self.location_snapshot.clear();
        self.location_snapshot
            .extend(self.codons.iter().map(|(_, st)| st.strand_location));
        self.split_snapshot.clear();
        self.split_snapshot
            .extend(self.codons.iter().map(|(_, st)| st.split_phase));
        let neighbor = |id: Option<CodonId>, snap_loc: &[StrandLocation], snap_split: &[SplitPhase]| {
            id.map(|nid| NeighborState {
                id: nid,
                strand_location: snap_loc[nid.index()],
                split_phase: snap_split[nid.index()],
            })
        };
        let mut new_locations = Vec::with_capacity(n);
        for (_, st) in self.codons.iter() {
            let nv = NeighborView {
                red: neighbor(st.bond_red, &self.location_snapshot, &self.split_snapshot),
                blue: neighbor(st.bond_blue, &self.location_snapshot, &self.split_snapshot),
                vertical: neighbor(st.bond_vertical, &self.location_snapshot, &self.split_snapshot),
            };
            new_locations.push(update_strand_location(st.strand_location, &nv));
        }
        for (i, (_, st)) in self.codons.iter_mut().enumerate() {
            st.strand_location = new_locations[i];
        }

        // Phase 5b: splitting transitions, reading the locations committed
        // above and the previous step's split phases.
        self.entered_split.clear();
        let mut new_phases = Vec::with_capacity(n);
        for (i, (_, st)) in self.codons.iter().enumerate() {
            let inputs = SplitInputs {
                my_location: st.strand_location,
                vertical_location: st
                    .bond_vertical
                    .map(|v| self.codons[v.index()].1.strand_location),
                red_phase: st.bond_red.map(|v| self.split_snapshot[v.index()]),
                blue_phase: st.bond_blue.map(|v| self.split_snapshot[v.index()]),
                z_steps: st.z_steps,
                split_window: self.params.iterations_after_split,
            };
            let next = update_splitting(self.split_snapshot[i], &inputs);
            if next == SplitPhase::Splitting && self.split_snapshot[i] != SplitPhase::Splitting {
                self.entered_split.push(i);
            }
            new_phases.push(next);
        }
        for (i, (_, st)) in self.codons.iter_mut().enumerate() {
            st.split_phase = new_phases[i];
            if new_phases[i] == SplitPhase::Splitting && self.split_snapshot[i] != SplitPhase::Splitting
            {
                st.z_steps = 0;
            }
        }

        // Phase 6: splits. Release the vertical bond (the partner may already
        // have released it) and fire the yellow field.
        for k in 0..self.entered_split.len() {
            let i = self.entered_split[k];
            if let Some(partner) = self.codons[i].1.bond_vertical {
                self.codons[i].1.bond_vertical = None;
                self.codons[partner.index()].1.bond_vertical = None;
            }
            self.codons[i].1.field_size.set(FieldSlot::Yellow, FieldSize::Large);
            self.codons[i].1.yellow_steps_large = 0;
            events.push(EventRecord {
                step: stamp,
                kind: EventKind::SplitTriggered { codon: CodonId(i as u32) },
            });
        }

        // Phase 7: physics.
        for (i, (_, st)) in self.codons.iter_mut().enumerate() {
            let mut rng = substream(self.cfg.rng_seed, PURPOSE_BROWNIAN, stamp, i as u64);
            apply_brownian(st, &mut rng, &self.params);
        }

        self.forces.reset(n);
        collect_bonds(&self.codons, &mut self.bonds);
        for bond in &self.bonds {
            let (ty_a, ref st_a) = self.codons[bond.a.index()];
            let (ty_b, ref st_b) = self.codons[bond.b.index()];
            let tip_a = self.tips[bond.a.index()][bond.slot_a.index()];
            let tip_b = self.tips[bond.b.index()][bond.slot_b.index()];
            let k = pair_arm_force(bond.slot_a, bond.slot_b, ty_a, ty_b, &self.params);
            attractive_spring_at(
                bond.a.index(), st_a.position, tip_a,
                bond.b.index(), st_b.position, tip_b,
                k, &mut self.forces,
            );
            straightening_torque(
                bond.a.index(), st_a, ty_a, bond.slot_a, st_b, &self.params, &mut self.forces,
            );
            straightening_torque(
                bond.b.index(), st_b, ty_b, bond.slot_b, st_a, &self.params, &mut self.forces,
            );
        }
        // Yellow repulsion over the contacts detected in phase 1, for pairs
        // whose fields are still large now. There are no designated pairs:
        // every intersecting pair of large yellows repels.
        for c in &self.contacts {
            if c.slot_a != FieldSlot::Yellow || c.slot_b != FieldSlot::Yellow {
                continue;
            }
            let (_, ref st_a) = self.codons[c.a.index()];
            let (_, ref st_b) = self.codons[c.b.index()];
            if !st_a.field_size.yellow || !st_b.field_size.yellow {
                continue;
            }
            let yellow = FieldSlot::Yellow.index();
            let ra = field_radius(FieldSize::Large, FieldSlot::Yellow, &self.params);
            repulsive_yellow_at(
                c.a.index(), st_a.position, self.tips[c.a.index()][yellow],
                c.b.index(), st_b.position, self.tips[c.b.index()][yellow],
                ra, ra, self.params.arm_force.yellow, &mut self.forces,
            );
        }

        for (i, (_, st)) in self.codons.iter_mut().enumerate() {
            absorb_forces(st, self.forces.force[i], self.forces.torque[i], &self.params);
        }
        for i in 0..self.bonds.len() {
            let bond = self.bonds[i];
            let (a, b) = pair_mut(&mut self.codons, bond.a.index(), bond.b.index());
            apply_spring_damping(&mut a.1, &mut b.1, &self.params);
        }
        for (_, st) in self.codons.iter_mut() {
            apply_viscosity(st, &self.params);
            advance_pose(st, &self.params);
            enforce_container(st, &self.params);
        }

        // Phase 8: timers.
        for (_, st) in self.codons.iter_mut() {
            if st.field_size.yellow {
                st.yellow_steps_large += 1;
            }
            if st.split_phase == SplitPhase::Splitting {
                st.z_steps += 1;
            }
        }

        self.step = stamp;
    }
}

/// Two distinct mutable entries of the codon vector.
fn pair_mut(
    codons: &mut [(CodonType, CodonState)],
    i: usize,
    j: usize,
) -> (&mut (CodonType, CodonState), &mut (CodonType, CodonState)) {
    debug_assert!(i != j);
    if i < j {
        let (left, right) = codons.split_at_mut(j);
        (&mut left[i], &mut right[0])
    } else {
        let (left, right) = codons.split_at_mut(i);
        (&mut right[0], &mut left[j])
    }
}

/// Condition that ends a run early.
#[derive(Clone, Debug, PartialEq)]
pub enum StopRule {
    /// First spontaneous red-blue dimer.
    SpontaneousDimer,
    /// First split trigger.
    SplitTriggered,
    /// First completed detached strand with exactly this pattern, observed at
    /// an analysis point.
    StrandBits(String),
    /// First completed detached strand with this pattern after step 0 (i.e.
    /// excluding a seed strand present at initialization).
    NewStrandBits(String),
}

impl StopRule {
    fn matches(&self, ev: &EventRecord) -> bool {
        match self {
            StopRule::SpontaneousDimer => ev.is_spontaneous_dimer(),
            StopRule::SplitTriggered => ev.is_split(),
            StopRule::StrandBits(bits) => ev.completed_bits() == Some(bits),
            StopRule::NewStrandBits(bits) => ev.step > 0 && ev.completed_bits() == Some(bits),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    /// Override the configured step budget.
    pub max_steps: Option<u64>,
    pub stop: Option<StopRule>,
}

/// Per-analysis-point metrics.
#[derive(Clone, Debug, PartialEq)]
pub struct MetricsRow {
    pub step: u64,
    pub normalized_time: f64,
    pub free_codons: u64,
    /// Red-blue paths of length >= 2.
    pub strands: u64,
    /// Strands that are additionally detached from any double-strand
    /// assembly.
    pub complete_strands: u64,
    /// Events emitted so far, including this step's.
    pub events_cum: u64,
}

/// Receives run outputs. File-backed implementations report IO failures,
/// which abort the run.
pub trait RunObserver {
    fn on_events(&mut self, events: &[EventRecord]) -> std::io::Result<()>;
    fn on_metrics(&mut self, row: &MetricsRow) -> std::io::Result<()>;
    fn on_snapshot(&mut self, engine: &Engine) -> std::io::Result<()>;
}

/// Observer that collects everything in memory.
#[derive(Default)]
pub struct CollectingObserver {
    pub events: Vec<EventRecord>,
    pub metrics: Vec<MetricsRow>,
    pub snapshot_steps: Vec<u64>,
}

impl RunObserver for CollectingObserver {
    fn on_events(&mut self, events: &[EventRecord]) -> std::io::Result<()> {
        self.events.extend_from_slice(events);
        Ok(())
    }
    fn on_metrics(&mut self, row: &MetricsRow) -> std::io::Result<()> {
        self.metrics.push(row.clone());
        Ok(())
    }
    fn on_snapshot(&mut self, _engine: &Engine) -> std::io::Result<()> {
        self.snapshot_steps.push(_engine.step_count());
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct RunSummary {
    pub steps: u64,
    pub normalized_time: f64,
    pub events_total: u64,
    pub stopped_by_rule: bool,
    pub first_spontaneous_dimer: Option<u64>,
    pub first_split: Option<u64>,
    /// Every strand completion: (step, bits).
    pub completions: Vec<(u64, String)>,
}

#[derive(Debug, Error)]
pub enum RunError {
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error("output error: {0}")]
    Io(#[from] std::io::Error),
}

/// Drives an engine until the step budget or the stop rule hits. Emits an
/// analysis pass (strand extraction, strand events, metrics) at step 0, every
/// `metrics_every` steps, and at the final step; snapshots every
/// `snapshot_every` steps and at the final step.
pub struct Runner {
    pub engine: Engine,
    tracker: StrandTracker,
    events_cum: u64,
    initial_emission: bool,
}

impl Runner {
    pub fn new(cfg: SimulationConfig) -> Result<Runner, EngineError> {
        let lineage = cfg.seed_strand.as_ref().map(|s| s.bits.clone());
        let engine = Engine::new(cfg)?;
        Ok(Runner {
            engine,
            tracker: StrandTracker::new(lineage.as_deref()),
            events_cum: 0,
            initial_emission: true,
        })
    }

    /// Resume from a restored engine. The strand tracker is reconstructed
    /// from the current state: strands already present are marked as seen
    /// without re-emitting completion events.
    pub fn resume(engine: Engine) -> Runner {
        let lineage = engine.config().seed_strand.as_ref().map(|s| s.bits.clone());
        let mut tracker = StrandTracker::new(lineage.as_deref());
        tracker.observe_silent(&extract_strands(engine.codons()));
        Runner {
            engine,
            tracker,
            events_cum: 0,
            initial_emission: false,
        }
    }

    pub fn run(
        &mut self,
        opts: &RunOptions,
        observer: &mut dyn RunObserver,
    ) -> Result<RunSummary, RunError> {
        let cfg = self.engine.config().clone();
        let start = self.engine.step_count();
        let budget = opts.max_steps.unwrap_or(cfg.max_steps);
        let end = start + budget;
        let mut summary = RunSummary {
            steps: start,
            normalized_time: self.engine.normalized_time(),
            events_total: 0,
            stopped_by_rule: false,
            first_spontaneous_dimer: None,
            first_split: None,
            completions: Vec::new(),
        };
        let mut step_events: Vec<EventRecord> = Vec::new();

        if self.initial_emission {
            self.initial_emission = false;
            let strands = extract_strands(self.engine.codons());
            let events = self.tracker.detect_events(&strands, self.engine.step_count());
            Self::digest_events(&events, &mut summary);
            self.events_cum += events.len() as u64;
            observer.on_events(&events)?;
            observer.on_metrics(&self.metrics_row(&strands))?;
            observer.on_snapshot(&self.engine)?;
        }

        let mut stopped = false;
        while self.engine.step_count() < end && !stopped {
            step_events.clear();
            self.engine.advance(&mut step_events);
            let step = self.engine.step_count();
            let finishing = step == end;
            let analysis_point = step % cfg.metrics_every == 0 || finishing;

            let strands = if analysis_point {
                let strands = extract_strands(self.engine.codons());
                let strand_events = self.tracker.detect_events(&strands, step);
                step_events.extend(strand_events);
                Some(strands)
            } else {
                None
            };

            Self::digest_events(&step_events, &mut summary);
            self.events_cum += step_events.len() as u64;
            observer.on_events(&step_events)?;

            if let Some(rule) = &opts.stop {
                if step_events.iter().any(|e| rule.matches(e)) {
                    stopped = true;
                    summary.stopped_by_rule = true;
                }
            }

            if let Some(strands) = &strands {
                observer.on_metrics(&self.metrics_row(strands))?;
            } else if stopped {
                let strands = extract_strands(self.engine.codons());
                observer.on_metrics(&self.metrics_row(&strands))?;
            }
            if step % cfg.snapshot_every == 0 || finishing || stopped {
                observer.on_snapshot(&self.engine)?;
            }
        }

        summary.steps = self.engine.step_count();
        summary.normalized_time = self.engine.normalized_time();
        summary.events_total = self.events_cum;
        Ok(summary)
    }

    fn digest_events(events: &[EventRecord], summary: &mut RunSummary) {
        for ev in events {
            match &ev.kind {
                EventKind::SpontaneousDimer { .. } => {
                    summary.first_spontaneous_dimer.get_or_insert(ev.step);
                }
                EventKind::SplitTriggered { .. } => {
                    summary.first_split.get_or_insert(ev.step);
                }
                EventKind::StrandCompleted { bits, .. } => {
                    summary.completions.push((ev.step, bits.clone()));
                }
                _ => {}
            }
        }
    }

    fn metrics_row(&self, strands: &[crate::analytics::StrandRecord]) -> MetricsRow {
        let codons = self.engine.codons();
        MetricsRow {
            step: self.engine.step_count(),
            normalized_time: self.engine.normalized_time(),
            free_codons: codons.iter().filter(|(_, st)| st.is_free()).count() as u64,
            strands: strands.iter().filter(|s| s.complete).count() as u64,
            complete_strands: strands.iter().filter(|s| s.complete && !s.attached).count() as u64,
            events_cum: self.events_cum,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quiet_cfg() -> SimulationConfig {
        let mut cfg = SimulationConfig::default();
        cfg.free_codons_type0 = 0;
        cfg.free_codons_type1 = 0;
        cfg.brownian_linear_amplitude = 0.0;
        cfg.brownian_angular_amplitude = 0.0;
        cfg
    }

    #[test]
    fn encode_single_bit_is_free_codon() {
        let p = Params::derive(&SimulationConfig::default());
        let codons = encode_seed_strand("0", Vec2::new(10.0, 10.0), FRAC_PI_2, &p).unwrap();
        assert_eq!(codons.len(), 1);
        assert_eq!(codons[0].0, CodonType::Type0);
        assert!(codons[0].1.is_free());
        assert!(!codons[0].1.field_size.vertical);
    }

    #[test]
    fn encode_pair_geometry() {
        let p = Params::derive(&SimulationConfig::default());
        let codons = encode_seed_strand("01", Vec2::new(0.0, 0.0), FRAC_PI_2, &p).unwrap();
        assert_eq!(codons.len(), 2);
        // Middles 14 apart along +x; one red-blue bond; placement 0 carries
        // bit 1 (the blue-free end is bit 0).
        assert!((codons[0].1.position - Vec2::new(-7.0, 0.0)).length() < 1e-12);
        assert!((codons[1].1.position - Vec2::new(7.0, 0.0)).length() < 1e-12);
        assert_eq!(codons[0].0, CodonType::Type1);
        assert_eq!(codons[1].0, CodonType::Type0);
        assert_eq!(codons[0].1.bond_blue, Some(CodonId(1)));
        assert_eq!(codons[1].1.bond_red, Some(CodonId(0)));
        assert!(codons[0].1.field_size.vertical && codons[1].1.field_size.vertical);
        // Decodes back to the input.
        let strands = extract_strands(&codons);
        assert_eq!(strands.len(), 1);
        assert_eq!(strands[0].bits, "01");
    }

    #[test]
    fn encode_rejects_bad_bits() {
        let p = Params::derive(&SimulationConfig::default());
        assert!(encode_seed_strand("", Vec2::ZERO, 0.0, &p).is_err());
        assert!(encode_seed_strand("01x", Vec2::ZERO, 0.0, &p).is_err());
    }

    #[test]
    fn seed_strand_round_trips_through_soup() {
        let mut cfg = SimulationConfig::seeded_replication();
        cfg.free_codons_type0 = 3;
        cfg.free_codons_type1 = 2;
        let engine = Engine::new(cfg).unwrap();
        assert_eq!(engine.codons().len(), 13);
        let strands = extract_strands(engine.codons());
        let complete: Vec<_> = strands.iter().filter(|s| s.complete).collect();
        assert_eq!(complete.len(), 1);
        assert_eq!(complete[0].bits, "00011001");
    }

    #[test]
    fn seed_longer_than_container_is_rejected() {
        let mut cfg = SimulationConfig::seeded_replication();
        cfg.seed_strand.as_mut().unwrap().bits = "0101010101010101".into(); // 16 codons, 210 wide
        assert!(Engine::new(cfg).is_err());
    }

    #[test]
    fn identical_seeds_give_identical_soups() {
        let cfg = SimulationConfig::seeded_replication();
        let a = Engine::new(cfg.clone()).unwrap();
        let b = Engine::new(cfg).unwrap();
        assert_eq!(a.codons(), b.codons());
    }

    #[test]
    fn empty_soup_step_advances_counter_only() {
        let mut engine = Engine::new(quiet_cfg()).unwrap();
        let mut events = Vec::new();
        engine.advance(&mut events);
        assert_eq!(engine.step_count(), 1);
        assert!(events.is_empty());
        assert!(engine.codons().is_empty());
    }

    #[test]
    fn single_codon_ballistic_with_viscosity() {
        let mut cfg = quiet_cfg();
        cfg.free_codons_type0 = 1;
        let mut engine = Engine::new(cfg).unwrap();
        engine.codons_mut()[0].1.position = Vec2::new(10.0, 75.0);
        let start = engine.codons()[0].1.position;
        engine.codons_mut()[0].1.velocity = Vec2::new(1.0, 0.0);
        let mut events = Vec::new();
        let keep = 1.0 - engine.params().linear_viscosity_step;
        let mut expect_x = start.x;
        let mut v = 1.0;
        for _ in 0..100 {
            engine.advance(&mut events);
            v *= keep;
            expect_x += v * 0.15;
        }
        assert!((engine.codons()[0].1.position.x - expect_x).abs() < 1e-9);
        assert!(events.is_empty());
    }

    #[test]
    fn replay_from_parts_matches_fresh_run() {
        let mut cfg = SimulationConfig::seeded_replication();
        cfg.free_codons_type0 = 10;
        cfg.free_codons_type1 = 10;
        let mut a = Engine::new(cfg.clone()).unwrap();
        let mut events = Vec::new();
        for _ in 0..500 {
            a.advance(&mut events);
        }
        // Clone state at step 500, continue both, compare.
        let mut b = Engine::from_parts(cfg, a.codons().to_vec(), a.step_count()).unwrap();
        let mut ea = Vec::new();
        let mut eb = Vec::new();
        for _ in 0..500 {
            a.advance(&mut ea);
            b.advance(&mut eb);
        }
        assert_eq!(a.codons(), b.codons());
        assert_eq!(ea, eb);
    }

    #[test]
    fn runner_zero_steps_emits_initial_state_only() {
        let mut runner = Runner::new(SimulationConfig::seeded_replication()).unwrap();
        let mut obs = CollectingObserver::default();
        let summary = runner
            .run(&RunOptions { max_steps: Some(0), stop: None }, &mut obs)
            .unwrap();
        assert_eq!(summary.steps, 0);
        assert_eq!(obs.snapshot_steps, vec![0]);
        assert_eq!(obs.metrics.len(), 1);
        // The seed registers as a completed strand at step 0.
        assert_eq!(summary.completions.len(), 1);
        assert_eq!(summary.completions[0], (0, "00011001".to_string()));
    }

    #[test]
    fn runner_metrics_are_monotone() {
        let mut cfg = SimulationConfig::default();
        cfg.free_codons_type0 = 5;
        cfg.free_codons_type1 = 5;
        cfg.metrics_every = 50;
        cfg.snapshot_every = 200;
        let mut runner = Runner::new(cfg).unwrap();
        let mut obs = CollectingObserver::default();
        runner
            .run(&RunOptions { max_steps: Some(310), stop: None }, &mut obs)
            .unwrap();
        let steps: Vec<u64> = obs.metrics.iter().map(|m| m.step).collect();
        assert_eq!(steps, vec![0, 50, 100, 150, 200, 250, 300, 310]);
        for m in &obs.metrics {
            assert_eq!(m.normalized_time, m.step as f64 * 0.15);
        }
        assert_eq!(obs.snapshot_steps, vec![0, 200, 310]);
    }
}
