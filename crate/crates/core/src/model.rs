//! Codon identity, per-particle state, and arm/field geometry.
//!
//! A codon is a T-shaped particle: three arms (red, blue, vertical) joined at
//! the middle, plus a short yellow arm along the vertical one. The middle is
//! the center of mass and the rotation center; mass and moment of inertia are
//! both one unit. Every codon has its red arm on the left and its blue arm on
//! the right when the vertical arm points up.

use crate::config::Params;
use crate::vec2::Vec2;
use serde::{Deserialize, Serialize};
use std::f64::consts::FRAC_PI_2;

/// Which of the two codon species a particle is. The type never changes and
/// fixes the color of the vertical field: type 0 is purple, type 1 is green.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CodonType {
    Type0,
    Type1,
}

impl CodonType {
    pub fn bit(self) -> char {
        match self {
            CodonType::Type0 => '0',
            CodonType::Type1 => '1',
        }
    }

    pub fn from_bit(c: char) -> Option<CodonType> {
        match c {
            '0' => Some(CodonType::Type0),
            '1' => Some(CodonType::Type1),
            _ => None,
        }
    }

    pub fn opposite(self) -> CodonType {
        match self {
            CodonType::Type0 => CodonType::Type1,
            CodonType::Type1 => CodonType::Type0,
        }
    }
}

/// One of the four field positions on a codon. `Vertical` is the purple or
/// green field depending on the codon type.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FieldSlot {
    Red,
    Blue,
    Vertical,
    Yellow,
}

impl FieldSlot {
    pub const ALL: [FieldSlot; 4] = [
        FieldSlot::Red,
        FieldSlot::Blue,
        FieldSlot::Vertical,
        FieldSlot::Yellow,
    ];

    /// Slots that can hold a designated bond (yellow never bonds).
    pub const BONDABLE: [FieldSlot; 3] = [FieldSlot::Red, FieldSlot::Blue, FieldSlot::Vertical];

    /// Index for flat per-slot arrays.
    pub fn index(self) -> usize {
        match self {
            FieldSlot::Red => 0,
            FieldSlot::Blue => 1,
            FieldSlot::Vertical => 2,
            FieldSlot::Yellow => 3,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FieldSize {
    Small,
    Large,
}

/// Stable identity of a codon: its index in the simulation's codon vector.
/// Codons are never created or destroyed during a run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CodonId(pub u32);

impl CodonId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Whether a codon believes it sits at the end of a double strand.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StrandLocation {
    /// Not at the end of a double strand.
    NotEnd,
    /// Exactly one horizontal neighbour plus a vertical neighbour: this codon
    /// may be at the end of a (possibly incomplete) double strand.
    EndCandidate,
    /// The vertical partner also believes it is at an end.
    EndConfirmed,
}

/// Progress of a codon through the strand-splitting handshake.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SplitPhase {
    /// Not ready to split.
    Idle,
    /// Ready to split; spreads from the end with no red neighbour.
    Ready,
    /// Splitting: vertical bond released, yellow field large.
    Splitting,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct FieldSizes {
    #[serde(with = "size_as_bool")]
    pub red: bool,
    #[serde(with = "size_as_bool")]
    pub blue: bool,
    #[serde(with = "size_as_bool")]
    pub vertical: bool,
    #[serde(with = "size_as_bool")]
    pub yellow: bool,
}

/// Field sizes are stored as `large?` booleans but serialized as the
/// small/large tokens for readability.
mod size_as_bool {
    use super::FieldSize;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(large: &bool, s: S) -> Result<S::Ok, S::Error> {
        let size = if *large { FieldSize::Large } else { FieldSize::Small };
        size.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<bool, D::Error> {
        Ok(FieldSize::deserialize(d)? == FieldSize::Large)
    }
}

impl FieldSizes {
    pub fn get(&self, slot: FieldSlot) -> FieldSize {
        let large = match slot {
            FieldSlot::Red => self.red,
            FieldSlot::Blue => self.blue,
            FieldSlot::Vertical => self.vertical,
            FieldSlot::Yellow => self.yellow,
        };
        if large {
            FieldSize::Large
        } else {
            FieldSize::Small
        }
    }

    pub fn set(&mut self, slot: FieldSlot, size: FieldSize) {
        let large = size == FieldSize::Large;
        match slot {
            FieldSlot::Red => self.red = large,
            FieldSlot::Blue => self.blue = large,
            FieldSlot::Vertical => self.vertical = large,
            FieldSlot::Yellow => self.yellow = large,
        }
    }
}

/// Full per-particle state.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CodonState {
    pub position: Vec2,
    /// Heading of the vertical arm, wrapped to `(-pi, pi]`.
    pub angle: f64,
    pub velocity: Vec2,
    pub angular_velocity: f64,
    pub field_size: FieldSizes,
    pub bond_red: Option<CodonId>,
    pub bond_blue: Option<CodonId>,
    pub bond_vertical: Option<CodonId>,
    pub strand_location: StrandLocation,
    pub split_phase: SplitPhase,
    /// Steps the yellow field has spent large since its last activation.
    pub yellow_steps_large: u64,
    /// Steps spent in the splitting phase since entering it.
    pub z_steps: u64,
}

impl CodonState {
    pub fn free_at(position: Vec2, angle: f64) -> CodonState {
        CodonState {
            position,
            angle,
            velocity: Vec2::ZERO,
            angular_velocity: 0.0,
            field_size: FieldSizes::default(),
            bond_red: None,
            bond_blue: None,
            bond_vertical: None,
            strand_location: StrandLocation::NotEnd,
            split_phase: SplitPhase::Idle,
            yellow_steps_large: 0,
            z_steps: 0,
        }
    }

    pub fn bond(&self, slot: FieldSlot) -> Option<CodonId> {
        match slot {
            FieldSlot::Red => self.bond_red,
            FieldSlot::Blue => self.bond_blue,
            FieldSlot::Vertical => self.bond_vertical,
            FieldSlot::Yellow => None,
        }
    }

    pub fn set_bond(&mut self, slot: FieldSlot, partner: Option<CodonId>) {
        match slot {
            FieldSlot::Red => self.bond_red = partner,
            FieldSlot::Blue => self.bond_blue = partner,
            FieldSlot::Vertical => self.bond_vertical = partner,
            FieldSlot::Yellow => panic!("yellow fields never bond"),
        }
    }

    /// Number of red/blue (horizontal) neighbours: 0, 1 or 2.
    pub fn horizontal_neighbors(&self) -> u32 {
        self.bond_red.is_some() as u32 + self.bond_blue.is_some() as u32
    }

    pub fn is_free(&self) -> bool {
        self.bond_red.is_none() && self.bond_blue.is_none() && self.bond_vertical.is_none()
    }
}

/// Unit vector for a heading angle.
pub fn unit_heading(angle: f64) -> Vec2 {
    Vec2::new(angle.cos(), angle.sin())
}

/// Direction of an arm given the codon heading. The vertical and yellow arms
/// point along the heading; red is rotated +90 degrees (left of the heading)
/// and blue -90 degrees.
pub fn arm_direction(angle: f64, slot: FieldSlot) -> Vec2 {
    unit_heading(arm_angle(angle, slot))
}

/// Absolute angle of an arm.
pub fn arm_angle(angle: f64, slot: FieldSlot) -> f64 {
    match slot {
        FieldSlot::Vertical | FieldSlot::Yellow => angle,
        FieldSlot::Red => angle + FRAC_PI_2,
        FieldSlot::Blue => angle - FRAC_PI_2,
    }
}

/// Length of an arm; the vertical arm's length follows the codon type.
pub fn arm_length(slot: FieldSlot, ty: CodonType, p: &Params) -> f64 {
    match slot {
        FieldSlot::Red => p.arm_length.red,
        FieldSlot::Blue => p.arm_length.blue,
        FieldSlot::Vertical => match ty {
            CodonType::Type0 => p.arm_length.purple,
            CodonType::Type1 => p.arm_length.green,
        },
        FieldSlot::Yellow => p.arm_length.yellow,
    }
}

/// World position of an arm tip; fields are centered here in both sizes.
/// Indexes into `all_tips` so every caller sees identical coordinates.
pub fn tip_position(state: &CodonState, ty: CodonType, slot: FieldSlot, p: &Params) -> Vec2 {
    all_tips(state, ty, p)[slot.index()]
}

/// All four arm tips from one heading evaluation: the red arm is the heading
/// rotated +90 degrees, blue -90, yellow along the heading. Indexed by
/// `FieldSlot::index`.
pub fn all_tips(state: &CodonState, ty: CodonType, p: &Params) -> [Vec2; 4] {
    let heading = unit_heading(state.angle);
    let vertical_len = match ty {
        CodonType::Type0 => p.arm_length.purple,
        CodonType::Type1 => p.arm_length.green,
    };
    [
        state.position + heading.perp() * p.arm_length.red,
        state.position - heading.perp() * p.arm_length.blue,
        state.position + heading * vertical_len,
        state.position + heading * p.arm_length.yellow,
    ]
}

/// Current radius of a field circle.
pub fn field_radius(size: FieldSize, slot: FieldSlot, p: &Params) -> f64 {
    match size {
        FieldSize::Small => p.small_field_radius,
        FieldSize::Large => match slot {
            FieldSlot::Yellow => p.large_field_radius.yellow,
            _ => p.large_field_radius.other,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::SimulationConfig;
    use crate::vec2::wrap_angle;
    use std::f64::consts::{FRAC_PI_4, PI};

    fn params() -> Params {
        Params::derive(&SimulationConfig::default())
    }

    fn assert_vec_close(a: Vec2, b: Vec2, tol: f64) {
        assert!(
            (a - b).length() <= tol,
            "expected {b:?}, got {a:?} (tol {tol})"
        );
    }

    #[test]
    fn unit_heading_axis_cases() {
        assert_vec_close(unit_heading(0.0), Vec2::new(1.0, 0.0), 1e-15);
        assert_vec_close(unit_heading(FRAC_PI_2), Vec2::new(0.0, 1.0), 1e-15);
        assert_vec_close(
            unit_heading(FRAC_PI_4),
            Vec2::new(0.7071067811865476, 0.7071067811865476),
            1e-12,
        );
        assert!((unit_heading(1.234).length() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn tip_positions_heading_up() {
        let p = params();
        let st = CodonState::free_at(Vec2::ZERO, FRAC_PI_2);
        // Vertical arm straight up, length 4.
        assert_vec_close(
            tip_position(&st, CodonType::Type1, FieldSlot::Vertical, &p),
            Vec2::new(0.0, 4.0),
            1e-12,
        );
        // Red arm on the left.
        assert_vec_close(
            tip_position(&st, CodonType::Type1, FieldSlot::Red, &p),
            Vec2::new(-7.0, 0.0),
            1e-12,
        );
        // Blue arm on the right.
        assert_vec_close(
            tip_position(&st, CodonType::Type1, FieldSlot::Blue, &p),
            Vec2::new(7.0, 0.0),
            1e-12,
        );
        // Yellow along the vertical arm, length 1.
        assert_vec_close(
            tip_position(&st, CodonType::Type1, FieldSlot::Yellow, &p),
            Vec2::new(0.0, 1.0),
            1e-12,
        );
    }

    #[test]
    fn field_radii() {
        let p = params();
        assert_eq!(field_radius(FieldSize::Small, FieldSlot::Red, &p), 0.01);
        assert_eq!(field_radius(FieldSize::Large, FieldSlot::Yellow, &p), 6.0);
        assert_eq!(field_radius(FieldSize::Large, FieldSlot::Vertical, &p), 4.0);
    }

    #[test]
    fn tips_rotate_with_the_codon() {
        let p = params();
        // Rotating the heading by delta rotates every tip about the middle.
        let mut rng = 0x1234_5678_u64;
        let mut next = move || {
            rng ^= rng << 13;
            rng ^= rng >> 7;
            rng ^= rng << 17;
            (rng >> 11) as f64 / (1u64 << 53) as f64
        };
        for _ in 0..200 {
            let base = CodonState::free_at(
                Vec2::new(next() * 100.0 - 50.0, next() * 100.0 - 50.0),
                wrap_angle(next() * 10.0),
            );
            let delta = next() * 6.0 - 3.0;
            let mut rotated = base.clone();
            rotated.angle = wrap_angle(base.angle + delta);
            for slot in FieldSlot::ALL {
                let t0 = tip_position(&base, CodonType::Type0, slot, &p) - base.position;
                let t1 = tip_position(&rotated, CodonType::Type0, slot, &p) - base.position;
                let expect = Vec2::new(
                    t0.x * delta.cos() - t0.y * delta.sin(),
                    t0.x * delta.sin() + t0.y * delta.cos(),
                );
                assert_vec_close(t1, expect, 1e-12);
            }
        }
    }

    #[test]
    fn vertical_arm_length_follows_type() {
        let mut cfg = SimulationConfig::default();
        cfg.arm_length.green = 5.0;
        cfg.arm_length.purple = 3.0;
        let p = Params::derive(&cfg);
        let st = CodonState::free_at(Vec2::ZERO, 0.0);
        assert_vec_close(
            tip_position(&st, CodonType::Type0, FieldSlot::Vertical, &p),
            Vec2::new(3.0, 0.0),
            1e-12,
        );
        assert_vec_close(
            tip_position(&st, CodonType::Type1, FieldSlot::Vertical, &p),
            Vec2::new(5.0, 0.0),
            1e-12,
        );
    }
}
