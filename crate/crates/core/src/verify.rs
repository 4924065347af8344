//! Runtime invariant checks over committed simulation states, used by the
//! `verify` CLI subcommand and the acceptance suite.

use crate::bonding::{compute_tips, detect_contacts, detect_contacts_brute_force, SpatialIndex};
use crate::config::SimulationConfig;
use crate::engine::Engine;
use crate::model::{CodonId, FieldSlot, StrandLocation};
use std::fmt;

#[derive(Clone, Debug, PartialEq)]
pub struct Violation {
    pub step: u64,
    pub invariant: &'static str,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "step {}: {}: {}", self.step, self.invariant, self.detail)
    }
}

/// Check every structural invariant of a committed state. Returns all
/// violations found (empty means the state is consistent).
pub fn check_invariants(engine: &Engine) -> Vec<Violation> {
    let mut violations = Vec::new();
    let step = engine.step_count();
    let codons = engine.codons();
    let p = engine.params();
    let mut push = |invariant: &'static str, detail: String| {
        violations.push(Violation { step, invariant, detail });
    };

    for (i, (ty, st)) in codons.iter().enumerate() {
        let id = CodonId(i as u32);
        // Bond reciprocity and no self-bonds.
        for (slot, counterpart) in [
            (FieldSlot::Red, FieldSlot::Blue),
            (FieldSlot::Blue, FieldSlot::Red),
            (FieldSlot::Vertical, FieldSlot::Vertical),
        ] {
            if let Some(partner) = st.bond(slot) {
                if partner == id {
                    push("bond_reciprocity", format!("codon {i} bonded to itself on {slot:?}"));
                    continue;
                }
                if partner.index() >= codons.len() {
                    push("bond_reciprocity", format!("codon {i} bonded to missing {partner:?}"));
                    continue;
                }
                let back = codons[partner.index()].1.bond(counterpart);
                if back != Some(id) {
                    push(
                        "bond_reciprocity",
                        format!("codon {i} {slot:?} -> {partner:?} but reverse is {back:?}"),
                    );
                }
            }
        }
        // Vertical bonds pair opposite types only.
        if let Some(partner) = st.bond_vertical {
            if partner.index() < codons.len() && codons[partner.index()].0 == *ty {
                push(
                    "vertical_complementarity",
                    format!("codon {i} vertically bonded to same type {partner:?}"),
                );
            }
        }
        // Red/blue field size tracks the bond; vertical tracks red-or-blue.
        if st.field_size.red != st.bond_red.is_some() {
            push("field_bond_consistency", format!("codon {i} red size vs bond"));
        }
        if st.field_size.blue != st.bond_blue.is_some() {
            push("field_bond_consistency", format!("codon {i} blue size vs bond"));
        }
        if st.field_size.vertical != (st.horizontal_neighbors() > 0) {
            push("field_bond_consistency", format!("codon {i} vertical size vs bonds"));
        }
        // Yellow timer never exceeds the split window while large.
        if st.field_size.yellow && st.yellow_steps_large > p.iterations_after_split {
            push("yellow_timer", format!("codon {i} yellow large too long"));
        }
        // Middles confined to the container.
        if st.position.x < 0.0
            || st.position.x > p.container_width
            || st.position.y < 0.0
            || st.position.y > p.container_height
        {
            push("containment", format!("codon {i} at {:?}", st.position));
        }
        // Angles wrapped, values finite.
        if !(st.angle > -std::f64::consts::PI - 1e-12 && st.angle <= std::f64::consts::PI + 1e-12) {
            push("angle_wrapped", format!("codon {i} angle {}", st.angle));
        }
        if !st.position.is_finite()
            || !st.velocity.is_finite()
            || !st.angle.is_finite()
            || !st.angular_velocity.is_finite()
        {
            push("finite_state", format!("codon {i} has a non-finite component"));
        }
        // A codon that believes it is a confirmed strand end must have
        // exactly one horizontal neighbour.
        if st.strand_location == StrandLocation::EndConfirmed && st.horizontal_neighbors() != 1 {
            push(
                "end_confirmed_safety",
                format!(
                    "codon {i} confirmed end with {} horizontal neighbours",
                    st.horizontal_neighbors()
                ),
            );
        }
    }
    violations
}

/// Compare indexed contact detection against the brute-force scan for the
/// current state.
pub fn check_contact_oracle(engine: &Engine) -> Option<Violation> {
    let p = engine.params();
    let mut index = SpatialIndex::new(p);
    let mut tips = Vec::new();
    compute_tips(engine.codons(), p, &mut tips);
    let mut fast = Vec::new();
    detect_contacts(engine.codons(), &tips, p, &mut index, &mut fast);
    let brute = detect_contacts_brute_force(engine.codons(), p);
    if fast == brute {
        None
    } else {
        Some(Violation {
            step: engine.step_count(),
            invariant: "contact_oracle",
            detail: format!("indexed {} contacts, brute force {}", fast.len(), brute.len()),
        })
    }
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub steps: u64,
    pub checks: Vec<(&'static str, u64)>,
    pub violations: Vec<Violation>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Run a short simulation, checking all invariants after every committed
/// step and the contact oracle every `oracle_every` steps.
pub fn run_verification(
    cfg: SimulationConfig,
    steps: u64,
    oracle_every: u64,
) -> Result<VerificationReport, crate::engine::EngineError> {
    let mut engine = Engine::new(cfg)?;
    let mut events = Vec::new();
    let mut violations = check_invariants(&engine);
    let mut state_checks = 1;
    let mut oracle_checks = 0;
    if let Some(v) = check_contact_oracle(&engine) {
        violations.push(v);
    }
    oracle_checks += 1;
    for s in 1..=steps {
        events.clear();
        engine.advance(&mut events);
        violations.extend(check_invariants(&engine));
        state_checks += 1;
        if s % oracle_every == 0 {
            if let Some(v) = check_contact_oracle(&engine) {
                violations.push(v);
            }
            oracle_checks += 1;
        }
        if violations.len() > 50 {
            break; // enough evidence
        }
    }
    Ok(VerificationReport {
        steps,
        checks: vec![("state_invariants", state_checks), ("contact_oracle", oracle_checks)],
        violations,
    })
}
