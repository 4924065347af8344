//! Shared scenario builders for integration tests.

use strandsim::config::Params;
use strandsim::engine::{encode_seed_strand, Engine};
use strandsim::model::{CodonId, CodonState, CodonType, FieldSize, FieldSlot};
use strandsim::vec2::Vec2;
use strandsim::SimulationConfig;
use std::f64::consts::FRAC_PI_2;

/// A quiet config: no free codons, no brownian motion, nothing but what the
/// test constructs.
pub fn quiet_config() -> SimulationConfig {
    let mut cfg = SimulationConfig::default();
    cfg.free_codons_type0 = 0;
    cfg.free_codons_type1 = 0;
    cfg.seed_strand = None;
    cfg.brownian_linear_amplitude = 0.0;
    cfg.brownian_angular_amplitude = 0.0;
    cfg
}

/// Build a complete or gapped double strand at mechanical equilibrium:
/// a template strand encoding `bits` (headings up, laid along +x) plus one
/// daughter codon of the opposite type over every placement in
/// `daughter_placements` (headings down, vertical tips coincident with the
/// template's), with red-blue bonds between adjacent daughters.
///
/// Template codons get ids `0..n`; daughters follow in placement order.
pub fn double_strand_engine(
    cfg: SimulationConfig,
    bits: &str,
    daughter_placements: &[usize],
) -> Engine {
    let params = Params::derive(&cfg);
    let n = bits.len();
    let center = Vec2::new(cfg.container_width / 2.0, cfg.container_height / 2.0);
    let mut codons = encode_seed_strand(bits, center, FRAC_PI_2, &params).expect("valid bits");

    let vertical_gap = params.arm_length.green + params.arm_length.purple;
    let mut daughter_id_of_placement = vec![None; n];
    for &placement in daughter_placements {
        let (template_ty, template_state) = &codons[placement];
        let ty = template_ty.opposite();
        let position = template_state.position + Vec2::new(0.0, vertical_gap);
        let mut st = CodonState::free_at(position, -FRAC_PI_2);
        st.bond_vertical = Some(CodonId(placement as u32));
        daughter_id_of_placement[placement] = Some(codons.len() as u32);
        codons.push((ty, st));
        let daughter_id = (codons.len() - 1) as u32;
        codons[placement].1.bond_vertical = Some(CodonId(daughter_id));
    }
    // Red-blue bonds between daughters on adjacent placements. A daughter
    // heading down has its red arm toward +x, so the daughter over placement
    // i red-bonds the daughter over placement i+1.
    for placement in 0..n.saturating_sub(1) {
        if let (Some(a), Some(b)) = (
            daughter_id_of_placement[placement],
            daughter_id_of_placement[placement + 1],
        ) {
            codons[a as usize].1.bond_red = Some(CodonId(b));
            codons[b as usize].1.bond_blue = Some(CodonId(a));
            codons[a as usize].1.field_size.set(FieldSlot::Red, FieldSize::Large);
            codons[b as usize].1.field_size.set(FieldSlot::Blue, FieldSize::Large);
        }
    }
    for (_, st) in codons.iter_mut() {
        if st.horizontal_neighbors() > 0 {
            st.field_size.set(FieldSlot::Vertical, FieldSize::Large);
        }
    }
    Engine::from_parts(cfg, codons, 0).expect("valid scenario")
}

/// Ids of the template codons for a strand of length `n`.
pub fn template_ids(n: usize) -> Vec<usize> {
    (0..n).collect()
}

/// Ids of the daughters for `double_strand_engine` with all placements.
pub fn daughter_ids(n: usize) -> Vec<usize> {
    (n..2 * n).collect()
}

/// Smallest distance between any vertical tip of `a_ids` and any vertical
/// tip of `b_ids`.
pub fn min_vertical_tip_distance(engine: &Engine, a_ids: &[usize], b_ids: &[usize]) -> f64 {
    let p = engine.params();
    let codons = engine.codons();
    let mut min = f64::INFINITY;
    for &i in a_ids {
        let (ty_i, st_i) = &codons[i];
        let tip_i = strandsim::model::tip_position(st_i, *ty_i, FieldSlot::Vertical, p);
        for &j in b_ids {
            let (ty_j, st_j) = &codons[j];
            let tip_j = strandsim::model::tip_position(st_j, *ty_j, FieldSlot::Vertical, p);
            min = min.min((tip_i - tip_j).length());
        }
    }
    min
}

/// Type of the codon that would sit at `placement` in a daughter strand
/// assembled on a template encoding `bits`.
pub fn opposite_bit(bits: &str, placement: usize) -> CodonType {
    let n = bits.len();
    let bit = bits.as_bytes()[n - 1 - placement] as char;
    CodonType::from_bit(bit).unwrap().opposite()
}
