//! Field-circle contact detection and the bond life cycle.
//!
//! Fields only affect each other while their circles intersect. Contacts are
//! found with a uniform grid over field tips (cell size equal to the largest
//! interaction diameter, so the 3x3 neighborhood is exhaustive) and reported
//! in canonical order. Bonds form between eligible contacts when the arms are
//! aligned within the slot tolerance, and break when the two field circles
//! separate.

use crate::config::Params;
use crate::model::{
    field_radius, tip_position, CodonId, CodonState, CodonType, FieldSize, FieldSlot,
};
use crate::vec2::{angle_difference, Vec2};
use std::f64::consts::PI;

/// A detected intersection between two field circles of distinct codons,
/// canonically ordered (`a < b`).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ContactPair {
    pub a: CodonId,
    pub slot_a: FieldSlot,
    pub b: CodonId,
    pub slot_b: FieldSlot,
    /// Distance between the two field centers.
    pub distance: f64,
    /// Field sizes at detection time.
    pub size_a: FieldSize,
    pub size_b: FieldSize,
}

impl ContactPair {
    fn key(&self) -> (u32, u32, usize, usize) {
        (self.a.0, self.b.0, self.slot_a.index(), self.slot_b.index())
    }
}

/// Uniform grid over field tips. Cell size must be at least the maximum
/// interaction diameter so that all contacts fall within one cell of each
/// other. Tips are bucketed into a flat array by counting sort; buckets keep
/// canonical (codon, slot) order, so the contact scan is deterministic.
pub struct SpatialIndex {
    cell_size: f64,
    origin: Vec2,
    nx: i32,
    ny: i32,
    starts: Vec<u32>,
    entries: Vec<TipRef>,
    cell_ids: Vec<u32>,
    cursors: Vec<u32>,
}

#[derive(Clone, Copy, Debug, Default)]
struct TipRef {
    codon: u32,
    slot: u32,
    tip: Vec2,
    radius: f64,
}

impl SpatialIndex {
    /// Grid extents cover the container plus the farthest a tip can stick
    /// out (the longest arm).
    pub fn new(p: &Params) -> SpatialIndex {
        let cell_size = 2.0 * p.large_field_radius.yellow.max(p.large_field_radius.other);
        let reach = p
            .arm_length
            .red
            .max(p.arm_length.blue)
            .max(p.arm_length.green)
            .max(p.arm_length.purple)
            .max(p.arm_length.yellow);
        let origin = Vec2::new(-reach - cell_size, -reach - cell_size);
        let span_x = p.container_width + 2.0 * (reach + cell_size);
        let span_y = p.container_height + 2.0 * (reach + cell_size);
        let nx = (span_x / cell_size).ceil() as i32 + 1;
        let ny = (span_y / cell_size).ceil() as i32 + 1;
        SpatialIndex {
            cell_size,
            origin,
            nx,
            ny,
            starts: vec![0; (nx * ny) as usize + 1],
            entries: Vec::new(),
            cell_ids: Vec::new(),
            cursors: vec![0; (nx * ny) as usize],
        }
    }

    pub fn cell_size(&self) -> f64 {
        self.cell_size
    }

    fn cell_of(&self, pos: Vec2) -> i32 {
        let cx = (((pos.x - self.origin.x) / self.cell_size).floor() as i32).clamp(0, self.nx - 1);
        let cy = (((pos.y - self.origin.y) / self.cell_size).floor() as i32).clamp(0, self.ny - 1);
        cy * self.nx + cx
    }

    fn rebuild(&mut self, codons: &[(CodonType, CodonState)], tips: &[[Vec2; 4]], p: &Params) {
        let ncells = (self.nx * self.ny) as usize;
        self.starts.clear();
        self.starts.resize(ncells + 1, 0);
        self.cell_ids.clear();
        for (i, _) in codons.iter().enumerate() {
            for slot in FieldSlot::ALL {
                let cell = self.cell_of(tips[i][slot.index()]) as u32;
                self.cell_ids.push(cell);
                self.starts[cell as usize + 1] += 1;
            }
        }
        for c in 0..ncells {
            self.starts[c + 1] += self.starts[c];
        }
        self.entries.clear();
        self.entries.resize(self.cell_ids.len(), TipRef::default());
        self.cursors.clear();
        self.cursors.extend_from_slice(&self.starts[..ncells]);
        let mut flat = 0;
        for (i, (_, st)) in codons.iter().enumerate() {
            for slot in FieldSlot::ALL {
                let cell = self.cell_ids[flat] as usize;
                let at = self.cursors[cell] as usize;
                self.cursors[cell] += 1;
                self.entries[at] = TipRef {
                    codon: i as u32,
                    slot: slot.index() as u32,
                    tip: tips[i][slot.index()],
                    radius: field_radius(st.field_size.get(slot), slot, p),
                };
                flat += 1;
            }
        }
    }

    fn cell_entries(&self, cell: i32) -> &[TipRef] {
        let c = cell as usize;
        &self.entries[self.starts[c] as usize..self.starts[c + 1] as usize]
    }
}

/// Arm tips for every codon, one heading evaluation each.
pub fn compute_tips(codons: &[(CodonType, CodonState)], p: &Params, out: &mut Vec<[Vec2; 4]>) {
    out.clear();
    out.extend(
        codons
            .iter()
            .map(|(ty, st)| crate::model::all_tips(st, *ty, p)),
    );
}

/// Rebuild the index and return every intersecting field-circle pair between
/// distinct codons, sorted by (a, b, slot_a, slot_b). `tips` must come from
/// `compute_tips` on the same state. Matches the brute-force all-pairs scan
/// exactly.
pub fn detect_contacts(
    codons: &[(CodonType, CodonState)],
    tips: &[[Vec2; 4]],
    p: &Params,
    index: &mut SpatialIndex,
    out: &mut Vec<ContactPair>,
) {
    out.clear();
    index.rebuild(codons, tips, p);
    let check = |e1: &TipRef, e2: &TipRef, out: &mut Vec<ContactPair>| {
        if e1.codon == e2.codon {
            return;
        }
        let reach = e1.radius + e2.radius;
        let d2 = (e1.tip - e2.tip).length_squared();
        if d2 <= reach * reach {
            let (lo, hi) = if e1.codon < e2.codon { (e1, e2) } else { (e2, e1) };
            out.push(ContactPair {
                a: CodonId(lo.codon),
                slot_a: SLOTS[lo.slot as usize],
                b: CodonId(hi.codon),
                slot_b: SLOTS[hi.slot as usize],
                distance: d2.sqrt(),
                size_a: if lo.radius > p.small_field_radius {
                    FieldSize::Large
                } else {
                    FieldSize::Small
                },
                size_b: if hi.radius > p.small_field_radius {
                    FieldSize::Large
                } else {
                    FieldSize::Small
                },
            });
        }
    };
    // Each unordered cell pair is visited once: a cell against itself and
    // against its east, south-west, south, and south-east neighbours.
    for cy in 0..index.ny {
        for cx in 0..index.nx {
            let cell = cy * index.nx + cx;
            let own = index.cell_entries(cell);
            if own.is_empty() {
                continue;
            }
            for (k, e1) in own.iter().enumerate() {
                for e2 in &own[k + 1..] {
                    check(e1, e2, out);
                }
            }
            for (dx, dy) in [(1, 0), (-1, 1), (0, 1), (1, 1)] {
                let ox = cx + dx;
                let oy = cy + dy;
                if ox < 0 || ox >= index.nx || oy >= index.ny {
                    continue;
                }
                let other = index.cell_entries(oy * index.nx + ox);
                for e1 in own {
                    for e2 in other {
                        check(e1, e2, out);
                    }
                }
            }
        }
    }
    out.sort_by_key(|c| c.key());
}

const SLOTS: [FieldSlot; 4] = FieldSlot::ALL;

/// Reference contact detector: all tip pairs, no index.
pub fn detect_contacts_brute_force(
    codons: &[(CodonType, CodonState)],
    p: &Params,
) -> Vec<ContactPair> {
    let mut out = Vec::new();
    let mut tips = Vec::new();
    compute_tips(codons, p, &mut tips);
    for i in 0..codons.len() {
        for j in (i + 1)..codons.len() {
            let (_, st_i) = &codons[i];
            let (_, st_j) = &codons[j];
            for slot_a in FieldSlot::ALL {
                for slot_b in FieldSlot::ALL {
                    let tip_a = tips[i][slot_a.index()];
                    let tip_b = tips[j][slot_b.index()];
                    let size_a = st_i.field_size.get(slot_a);
                    let size_b = st_j.field_size.get(slot_b);
                    let ra = field_radius(size_a, slot_a, p);
                    let rb = field_radius(size_b, slot_b, p);
                    let d2 = (tip_a - tip_b).length_squared();
                    if d2 <= (ra + rb) * (ra + rb) {
                        out.push(ContactPair {
                            a: CodonId(i as u32),
                            slot_a,
                            b: CodonId(j as u32),
                            slot_b,
                            distance: d2.sqrt(),
                            size_a,
                            size_b,
                        });
                    }
                }
            }
        }
    }
    out.sort_by_key(|c| c.key());
    out
}

/// A designated bond, canonically ordered (`a < b`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bond {
    pub a: CodonId,
    pub slot_a: FieldSlot,
    pub b: CodonId,
    pub slot_b: FieldSlot,
}

/// Collect the current bonds in canonical order, each reported once.
pub fn collect_bonds(codons: &[(CodonType, CodonState)], out: &mut Vec<Bond>) {
    out.clear();
    for (i, (_, st)) in codons.iter().enumerate() {
        let id = CodonId(i as u32);
        if let Some(partner) = st.bond_red {
            if partner.0 > id.0 {
                out.push(Bond { a: id, slot_a: FieldSlot::Red, b: partner, slot_b: FieldSlot::Blue });
            }
        }
        if let Some(partner) = st.bond_blue {
            if partner.0 > id.0 {
                out.push(Bond { a: id, slot_a: FieldSlot::Blue, b: partner, slot_b: FieldSlot::Red });
            }
        }
        if let Some(partner) = st.bond_vertical {
            if partner.0 > id.0 {
                out.push(Bond {
                    a: id,
                    slot_a: FieldSlot::Vertical,
                    b: partner,
                    slot_b: FieldSlot::Vertical,
                });
            }
        }
    }
    out.sort_by_key(|b| (b.a.0, b.slot_a.index(), b.b.0));
}

/// Designate a bond on both sides and, for red-blue bonds, switch both fields
/// large.
pub fn form_bond(codons: &mut [(CodonType, CodonState)], bond: Bond) {
    codons[bond.a.index()].1.set_bond(bond.slot_a, Some(bond.b));
    codons[bond.b.index()].1.set_bond(bond.slot_b, Some(bond.a));
    if bond.slot_a != FieldSlot::Vertical {
        codons[bond.a.index()].1.field_size.set(bond.slot_a, FieldSize::Large);
        codons[bond.b.index()].1.field_size.set(bond.slot_b, FieldSize::Large);
    }
}

/// Dissolve a bond on both sides; red and blue fields revert to small.
pub fn break_bond(codons: &mut [(CodonType, CodonState)], bond: Bond) {
    codons[bond.a.index()].1.set_bond(bond.slot_a, None);
    codons[bond.b.index()].1.set_bond(bond.slot_b, None);
    if bond.slot_a != FieldSlot::Vertical {
        codons[bond.a.index()].1.field_size.set(bond.slot_a, FieldSize::Small);
        codons[bond.b.index()].1.field_size.set(bond.slot_b, FieldSize::Small);
    }
}

/// Misalignment of two arms that should be antiparallel, in `[0, pi]`.
pub fn antiparallel_error(arm_angle_a: f64, arm_angle_b: f64) -> f64 {
    angle_difference(arm_angle_a, arm_angle_b + PI).abs()
}

/// Red-blue formation test for a small-red/small-blue contact: both slots
/// free and the arms antiparallel within the red-blue tolerance. Third fields
/// touching an existing bond are ignored because their slot is taken.
pub fn red_blue_aligned(angle_red_codon: f64, angle_blue_codon: f64, p: &Params) -> bool {
    let red_arm = crate::model::arm_angle(angle_red_codon, FieldSlot::Red);
    let blue_arm = crate::model::arm_angle(angle_blue_codon, FieldSlot::Blue);
    antiparallel_error(red_arm, blue_arm) <= p.red_blue_tolerance()
}

/// Green-purple formation test: arms antiparallel within the vertical
/// tolerance. Size eligibility (not both large) is checked by the caller.
pub fn green_purple_aligned(angle_a: f64, angle_b: f64, p: &Params) -> bool {
    antiparallel_error(angle_a, angle_b) <= p.green_purple_tolerance()
}

/// True when the two field circles of a designated bond no longer intersect,
/// using the current field sizes.
pub fn bond_separated(codons: &[(CodonType, CodonState)], bond: Bond, p: &Params) -> bool {
    let (ty_a, st_a) = &codons[bond.a.index()];
    let (ty_b, st_b) = &codons[bond.b.index()];
    let tip_a = tip_position(st_a, *ty_a, bond.slot_a, p);
    let tip_b = tip_position(st_b, *ty_b, bond.slot_b, p);
    bond_separated_at(st_a, st_b, tip_a, tip_b, bond, p)
}

/// `bond_separated` with precomputed tips.
pub fn bond_separated_at(
    st_a: &CodonState,
    st_b: &CodonState,
    tip_a: Vec2,
    tip_b: Vec2,
    bond: Bond,
    p: &Params,
) -> bool {
    let ra = field_radius(st_a.field_size.get(bond.slot_a), bond.slot_a, p);
    let rb = field_radius(st_b.field_size.get(bond.slot_b), bond.slot_b, p);
    (tip_a - tip_b).length_squared() > (ra + rb) * (ra + rb)
}

/// Per-codon field-size bookkeeping: the vertical field is large exactly when
/// a red or blue bond exists; a yellow field that has been large for the full
/// split window reverts to small.
pub fn update_field_sizes(state: &mut CodonState, p: &Params) {
    let vertical = if state.horizontal_neighbors() > 0 {
        FieldSize::Large
    } else {
        FieldSize::Small
    };
    state.field_size.set(FieldSlot::Vertical, vertical);
    if state.field_size.yellow && state.yellow_steps_large >= p.iterations_after_split {
        state.field_size.set(FieldSlot::Yellow, FieldSize::Small);
        state.yellow_steps_large = 0;
    }
}
