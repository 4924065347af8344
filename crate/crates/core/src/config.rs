//! Simulation configuration: every tunable of the model plus the scenario
//! description (container, codon counts, optional seed strand, RNG seed,
//! run budgets).
//!
//! Viscosity and spring-damping values are stored as base rates per unit of
//! simulated time; the per-step fractions actually applied by the physics are
//! derived as `1 - (1 - rate)^timestep_duration`, so changing
//! `timestep_duration` rescales them consistently.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SimulationConfig {
    /// Container width in length units. Codon middles are confined to the
    /// container interior.
    pub container_width: f64,
    /// Container height in length units.
    pub container_height: f64,
    /// Free type-0 (purple) codons scattered at random.
    pub free_codons_type0: u32,
    /// Free type-1 (green) codons scattered at random.
    pub free_codons_type1: u32,
    /// Optional pre-assembled strand placed into the soup.
    pub seed_strand: Option<SeedStrand>,
    /// Master seed for all random number streams.
    pub rng_seed: u64,
    /// Step budget for `run`.
    pub max_steps: u64,
    /// Snapshot interval in steps.
    pub snapshot_every: u64,
    /// Metrics/strand-analysis interval in steps.
    pub metrics_every: u64,

    /// Duration of one simulation step.
    pub timestep_duration: f64,
    /// Linear viscosity base rate per time unit.
    pub linear_viscosity: f64,
    /// Angular viscosity base rate per time unit.
    pub angular_viscosity: f64,
    /// Linear spring-damping base rate per time unit (bonded pairs only).
    pub linear_spring_damping: f64,
    /// Angular spring-damping base rate per time unit (bonded pairs only).
    pub angular_spring_damping: f64,
    /// Steps a yellow field stays large and a codon waits in the splitting
    /// state; defaults to `(150 / timestep_duration)` truncated.
    pub iterations_after_split: Option<u64>,

    pub arm_length: ArmLengths,
    /// Radius of every field in its small state.
    pub small_field_radius: f64,
    pub large_field_radius: LargeFieldRadii,
    /// Spring strength of the attractive (and yellow repulsive) fields.
    pub arm_force: ArmForces,
    /// Maximum misalignment, in radians, at which a bond can initiate.
    pub angle_tolerance: AngleTolerances,
    /// Torque per radian twisting a bonded arm onto the line joining middles.
    pub straightening_force: StraighteningForces,

    /// Half-width of the uniform per-step kick added to linear velocity,
    /// scaled by sqrt(timestep_duration).
    pub brownian_linear_amplitude: f64,
    /// Half-width of the uniform per-step kick added to angular velocity,
    /// scaled by sqrt(timestep_duration).
    pub brownian_angular_amplitude: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeedStrand {
    /// Bit string over {0,1}; one codon per bit.
    pub bits: String,
    /// Center of the strand.
    pub x: f64,
    pub y: f64,
    /// Heading of the vertical arms; the strand extends perpendicular to it.
    pub angle: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ArmLengths {
    pub red: f64,
    pub blue: f64,
    pub green: f64,
    pub purple: f64,
    pub yellow: f64,
}

impl Default for ArmLengths {
    fn default() -> Self {
        ArmLengths { red: 7.0, blue: 7.0, green: 4.0, purple: 4.0, yellow: 1.0 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct LargeFieldRadii {
    pub yellow: f64,
    pub other: f64,
}

impl Default for LargeFieldRadii {
    fn default() -> Self {
        LargeFieldRadii { yellow: 6.0, other: 4.0 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ArmForces {
    pub red: f64,
    pub blue: f64,
    pub green: f64,
    pub purple: f64,
    pub yellow: f64,
}

impl Default for ArmForces {
    fn default() -> Self {
        ArmForces { red: 1.8, blue: 1.8, green: 1.0, purple: 1.0, yellow: 1.0 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct AngleTolerances {
    pub red: f64,
    pub blue: f64,
    pub green: f64,
    pub purple: f64,
}

impl Default for AngleTolerances {
    fn default() -> Self {
        AngleTolerances {
            red: PI / 256.0,
            blue: PI / 256.0,
            green: PI / 3.0,
            purple: PI / 3.0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct StraighteningForces {
    pub red: f64,
    pub blue: f64,
    pub green: f64,
    pub purple: f64,
}

impl Default for StraighteningForces {
    fn default() -> Self {
        StraighteningForces { red: 1.0, blue: 1.0, green: 0.5, purple: 0.5 }
    }
}

impl Default for SimulationConfig {
    fn default() -> Self {
        SimulationConfig {
            container_width: 150.0,
            container_height: 150.0,
            free_codons_type0: 44,
            free_codons_type1: 44,
            seed_strand: None,
            rng_seed: 1,
            max_steps: 200_000,
            snapshot_every: 10_000,
            metrics_every: 100,
            timestep_duration: 0.15,
            linear_viscosity: 0.10,
            angular_viscosity: 0.05,
            linear_spring_damping: 0.90,
            angular_spring_damping: 0.99,
            iterations_after_split: None,
            arm_length: ArmLengths::default(),
            small_field_radius: 0.01,
            large_field_radius: LargeFieldRadii::default(),
            arm_force: ArmForces::default(),
            angle_tolerance: AngleTolerances::default(),
            straightening_force: StraighteningForces::default(),
            brownian_linear_amplitude: 0.15,
            brownian_angular_amplitude: 0.30,
        }
    }
}

impl SimulationConfig {
    /// The seeded-replication scenario: a strand encoding "00011001" placed
    /// at the container center in a soup of 80 free codons.
    pub fn seeded_replication() -> Self {
        SimulationConfig {
            free_codons_type0: 40,
            free_codons_type1: 40,
            seed_strand: Some(SeedStrand {
                bits: "00011001".to_string(),
                x: 75.0,
                y: 75.0,
                angle: PI / 2.0,
            }),
            ..SimulationConfig::default()
        }
    }

    /// The spontaneous-formation scenario: 88 free codons and no seed.
    pub fn spontaneous() -> Self {
        SimulationConfig::default()
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        fn positive(name: &'static str, v: f64) -> Result<(), ConfigError> {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(ConfigError::OutOfRange { key: name, value: v, expected: "> 0" })
            }
        }
        fn rate(name: &'static str, v: f64) -> Result<(), ConfigError> {
            if (0.0..1.0).contains(&v) {
                Ok(())
            } else {
                Err(ConfigError::OutOfRange { key: name, value: v, expected: "in [0, 1)" })
            }
        }
        fn tolerance(name: &'static str, v: f64) -> Result<(), ConfigError> {
            if v > 0.0 && v <= PI {
                Ok(())
            } else {
                Err(ConfigError::OutOfRange { key: name, value: v, expected: "in (0, pi]" })
            }
        }
        fn non_negative(name: &'static str, v: f64) -> Result<(), ConfigError> {
            if v >= 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(ConfigError::OutOfRange { key: name, value: v, expected: ">= 0" })
            }
        }

        positive("container_width", self.container_width)?;
        positive("container_height", self.container_height)?;
        positive("timestep_duration", self.timestep_duration)?;
        rate("linear_viscosity", self.linear_viscosity)?;
        rate("angular_viscosity", self.angular_viscosity)?;
        rate("linear_spring_damping", self.linear_spring_damping)?;
        rate("angular_spring_damping", self.angular_spring_damping)?;
        positive("arm_length.red", self.arm_length.red)?;
        positive("arm_length.blue", self.arm_length.blue)?;
        positive("arm_length.green", self.arm_length.green)?;
        positive("arm_length.purple", self.arm_length.purple)?;
        positive("arm_length.yellow", self.arm_length.yellow)?;
        positive("small_field_radius", self.small_field_radius)?;
        positive("large_field_radius.yellow", self.large_field_radius.yellow)?;
        positive("large_field_radius.other", self.large_field_radius.other)?;
        non_negative("arm_force.red", self.arm_force.red)?;
        non_negative("arm_force.blue", self.arm_force.blue)?;
        non_negative("arm_force.green", self.arm_force.green)?;
        non_negative("arm_force.purple", self.arm_force.purple)?;
        non_negative("arm_force.yellow", self.arm_force.yellow)?;
        tolerance("angle_tolerance.red", self.angle_tolerance.red)?;
        tolerance("angle_tolerance.blue", self.angle_tolerance.blue)?;
        tolerance("angle_tolerance.green", self.angle_tolerance.green)?;
        tolerance("angle_tolerance.purple", self.angle_tolerance.purple)?;
        non_negative("straightening_force.red", self.straightening_force.red)?;
        non_negative("straightening_force.blue", self.straightening_force.blue)?;
        non_negative("straightening_force.green", self.straightening_force.green)?;
        non_negative("straightening_force.purple", self.straightening_force.purple)?;
        non_negative("brownian_linear_amplitude", self.brownian_linear_amplitude)?;
        non_negative("brownian_angular_amplitude", self.brownian_angular_amplitude)?;
        if self.snapshot_every == 0 {
            return Err(ConfigError::OutOfRange {
                key: "snapshot_every",
                value: 0.0,
                expected: ">= 1",
            });
        }
        if self.metrics_every == 0 {
            return Err(ConfigError::OutOfRange {
                key: "metrics_every",
                value: 0.0,
                expected: ">= 1",
            });
        }
        if let Some(seed) = &self.seed_strand {
            if seed.bits.is_empty() {
                return Err(ConfigError::SeedBits("seed_strand.bits must be nonempty".into()));
            }
            if let Some(c) = seed.bits.chars().find(|c| *c != '0' && *c != '1') {
                return Err(ConfigError::SeedBits(format!(
                    "seed_strand.bits contains invalid character {c:?}; only '0' and '1' allowed"
                )));
            }
        }
        Ok(())
    }

    /// Per-step fraction for a base rate: `1 - (1 - rate)^dt`.
    pub fn per_step_fraction(&self, rate: f64) -> f64 {
        1.0 - (1.0 - rate).powf(self.timestep_duration)
    }

    pub fn derived_iterations_after_split(&self) -> u64 {
        self.iterations_after_split
            .unwrap_or((150.0 / self.timestep_duration) as u64)
    }

    /// Hex SHA-256 over the canonical JSON encoding; stamped into snapshots
    /// so replays can verify they use the producing configuration.
    pub fn digest(&self) -> String {
        use sha2::{Digest, Sha256};
        let canonical = serde_json::to_string(self).expect("config serializes");
        let hash = Sha256::digest(canonical.as_bytes());
        let mut out = String::with_capacity(64);
        for byte in hash {
            out.push_str(&format!("{byte:02x}"));
        }
        out
    }
}

/// Everything the inner loop needs, derived once from a validated config.
#[derive(Clone, Debug)]
pub struct Params {
    pub dt: f64,
    pub sqrt_dt: f64,
    pub container_width: f64,
    pub container_height: f64,
    /// Per-step velocity retention is `1 - linear_viscosity_step`.
    pub linear_viscosity_step: f64,
    pub angular_viscosity_step: f64,
    pub linear_damping_step: f64,
    pub angular_damping_step: f64,
    pub iterations_after_split: u64,
    pub arm_length: ArmLengths,
    pub small_field_radius: f64,
    pub large_field_radius: LargeFieldRadii,
    pub arm_force: ArmForces,
    pub angle_tolerance: AngleTolerances,
    pub straightening_force: StraighteningForces,
    pub brownian_linear_amplitude: f64,
    pub brownian_angular_amplitude: f64,
}

impl Params {
    pub fn derive(cfg: &SimulationConfig) -> Params {
        Params {
            dt: cfg.timestep_duration,
            sqrt_dt: cfg.timestep_duration.sqrt(),
            container_width: cfg.container_width,
            container_height: cfg.container_height,
            linear_viscosity_step: cfg.per_step_fraction(cfg.linear_viscosity),
            angular_viscosity_step: cfg.per_step_fraction(cfg.angular_viscosity),
            linear_damping_step: cfg.per_step_fraction(cfg.linear_spring_damping),
            angular_damping_step: cfg.per_step_fraction(cfg.angular_spring_damping),
            iterations_after_split: cfg.derived_iterations_after_split(),
            arm_length: cfg.arm_length,
            small_field_radius: cfg.small_field_radius,
            large_field_radius: cfg.large_field_radius,
            arm_force: cfg.arm_force,
            angle_tolerance: cfg.angle_tolerance,
            straightening_force: cfg.straightening_force,
            brownian_linear_amplitude: cfg.brownian_linear_amplitude,
            brownian_angular_amplitude: cfg.brownian_angular_amplitude,
        }
    }

    /// Misalignment tolerance for a red-blue bond: the stricter of the two arms.
    pub fn red_blue_tolerance(&self) -> f64 {
        self.angle_tolerance.red.min(self.angle_tolerance.blue)
    }

    /// Misalignment tolerance for a green-purple bond.
    pub fn green_purple_tolerance(&self) -> f64 {
        self.angle_tolerance.green.min(self.angle_tolerance.purple)
    }
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("config key {key} = {value} out of range (expected {expected})")]
    OutOfRange {
        key: &'static str,
        value: f64,
        expected: &'static str,
    },
    #[error("{0}")]
    SeedBits(String),
    #[error("seed strand does not fit inside the container: {0}")]
    SeedPlacement(String),
}
