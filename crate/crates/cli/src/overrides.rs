//! Dotted-path config overrides for `--set` and `sweep --param`.

use std::f64::consts::PI;
use strandsim::config::{SeedStrand, SimulationConfig};

pub fn apply_override(cfg: &mut SimulationConfig, path: &str, value: &str) -> Result<(), String> {
    fn f64v(value: &str) -> Result<f64, String> {
        value
            .parse::<f64>()
            .map_err(|e| format!("expected a number, got {value:?}: {e}"))
    }
    fn u64v(value: &str) -> Result<u64, String> {
        value
            .parse::<u64>()
            .map_err(|e| format!("expected an integer, got {value:?}: {e}"))
    }
    fn u32v(value: &str) -> Result<u32, String> {
        value
            .parse::<u32>()
            .map_err(|e| format!("expected an integer, got {value:?}: {e}"))
    }

    match path {
        "container_width" => cfg.container_width = f64v(value)?,
        "container_height" => cfg.container_height = f64v(value)?,
        "free_codons_type0" => cfg.free_codons_type0 = u32v(value)?,
        "free_codons_type1" => cfg.free_codons_type1 = u32v(value)?,
        "rng_seed" => cfg.rng_seed = u64v(value)?,
        "max_steps" => cfg.max_steps = u64v(value)?,
        "snapshot_every" => cfg.snapshot_every = u64v(value)?,
        "metrics_every" => cfg.metrics_every = u64v(value)?,
        "timestep_duration" => cfg.timestep_duration = f64v(value)?,
        "linear_viscosity" => cfg.linear_viscosity = f64v(value)?,
        "angular_viscosity" => cfg.angular_viscosity = f64v(value)?,
        "linear_spring_damping" => cfg.linear_spring_damping = f64v(value)?,
        "angular_spring_damping" => cfg.angular_spring_damping = f64v(value)?,
        "iterations_after_split" => cfg.iterations_after_split = Some(u64v(value)?),
        "brownian_linear_amplitude" => cfg.brownian_linear_amplitude = f64v(value)?,
        "brownian_angular_amplitude" => cfg.brownian_angular_amplitude = f64v(value)?,
        "small_field_radius" => cfg.small_field_radius = f64v(value)?,
        "large_field_radius.yellow" => cfg.large_field_radius.yellow = f64v(value)?,
        "large_field_radius.other" => cfg.large_field_radius.other = f64v(value)?,
        "arm_length.red" => cfg.arm_length.red = f64v(value)?,
        "arm_length.blue" => cfg.arm_length.blue = f64v(value)?,
        "arm_length.green" => cfg.arm_length.green = f64v(value)?,
        "arm_length.purple" => cfg.arm_length.purple = f64v(value)?,
        "arm_length.yellow" => cfg.arm_length.yellow = f64v(value)?,
        "arm_force.red" => cfg.arm_force.red = f64v(value)?,
        "arm_force.blue" => cfg.arm_force.blue = f64v(value)?,
        "arm_force.green" => cfg.arm_force.green = f64v(value)?,
        "arm_force.purple" => cfg.arm_force.purple = f64v(value)?,
        "arm_force.yellow" => cfg.arm_force.yellow = f64v(value)?,
        "angle_tolerance.red" => cfg.angle_tolerance.red = parse_angle(value)?,
        "angle_tolerance.blue" => cfg.angle_tolerance.blue = parse_angle(value)?,
        "angle_tolerance.green" => cfg.angle_tolerance.green = parse_angle(value)?,
        "angle_tolerance.purple" => cfg.angle_tolerance.purple = parse_angle(value)?,
        // Conveniences: set both arms of a bonding pair at once.
        "angle_tolerance.red_blue" => {
            let v = parse_angle(value)?;
            cfg.angle_tolerance.red = v;
            cfg.angle_tolerance.blue = v;
        }
        "angle_tolerance.green_purple" => {
            let v = parse_angle(value)?;
            cfg.angle_tolerance.green = v;
            cfg.angle_tolerance.purple = v;
        }
        "straightening_force.red" => cfg.straightening_force.red = f64v(value)?,
        "straightening_force.blue" => cfg.straightening_force.blue = f64v(value)?,
        "straightening_force.green" => cfg.straightening_force.green = f64v(value)?,
        "straightening_force.purple" => cfg.straightening_force.purple = f64v(value)?,
        "seed_strand" if value == "none" => cfg.seed_strand = None,
        "seed_strand.bits" => {
            let seed = cfg.seed_strand.get_or_insert_with(|| SeedStrand {
                bits: String::new(),
                x: cfg.container_width / 2.0,
                y: cfg.container_height / 2.0,
                angle: PI / 2.0,
            });
            seed.bits = value.to_string();
        }
        "seed_strand.x" => {
            seed_mut(cfg)?.x = f64v(value)?;
        }
        "seed_strand.y" => {
            seed_mut(cfg)?.y = f64v(value)?;
        }
        "seed_strand.angle" => {
            seed_mut(cfg)?.angle = parse_angle(value)?;
        }
        other => return Err(format!("unknown parameter path {other:?}")),
    }
    Ok(())
}

fn seed_mut(cfg: &mut SimulationConfig) -> Result<&mut SeedStrand, String> {
    cfg.seed_strand
        .as_mut()
        .ok_or_else(|| "no seed strand configured; set seed_strand.bits first".to_string())
}

/// Angles accept plain radians or the `pi/N` shorthand.
fn parse_angle(value: &str) -> Result<f64, String> {
    if let Some(den) = value.strip_prefix("pi/") {
        let d: f64 = den
            .parse()
            .map_err(|e| format!("bad angle {value:?}: {e}"))?;
        if d == 0.0 {
            return Err("angle denominator must be nonzero".into());
        }
        Ok(PI / d)
    } else {
        value
            .parse::<f64>()
            .map_err(|e| format!("bad angle {value:?}: {e}"))
    }
}

/// Parse a `key=value` pair.
pub fn parse_set(arg: &str) -> Result<(String, String), String> {
    match arg.split_once('=') {
        Some((k, v)) if !k.is_empty() => Ok((k.to_string(), v.to_string())),
        _ => Err(format!("--set expects key=value, got {arg:?}")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overrides_apply() {
        let mut cfg = SimulationConfig::default();
        apply_override(&mut cfg, "angle_tolerance.red_blue", "pi/16").unwrap();
        assert!((cfg.angle_tolerance.red - PI / 16.0).abs() < 1e-12);
        assert!((cfg.angle_tolerance.blue - PI / 16.0).abs() < 1e-12);
        apply_override(&mut cfg, "rng_seed", "99").unwrap();
        assert_eq!(cfg.rng_seed, 99);
        apply_override(&mut cfg, "seed_strand.bits", "0101").unwrap();
        assert_eq!(cfg.seed_strand.as_ref().unwrap().bits, "0101");
        apply_override(&mut cfg, "seed_strand", "none").unwrap();
        assert!(cfg.seed_strand.is_none());
        assert!(apply_override(&mut cfg, "nope", "1").is_err());
        assert!(apply_override(&mut cfg, "rng_seed", "x").is_err());
    }
}
