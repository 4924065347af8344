//! Read-only strand analysis over committed simulation states.
//!
//! Strands are emergent: the simulation itself keeps no strand data
//! structure. This module recovers them as connected components of the
//! red-blue bond graph (always simple paths, since each codon has at most one
//! red and one blue bond), decodes their bit patterns, and derives
//! strand-level events. It also implements the pattern algebra used to
//! reason about replication: one replication round turns a pattern X into its
//! negative mirror image r(n(X)).

use crate::events::{EventKind, EventRecord};
use crate::model::{CodonId, CodonState, CodonType};
use std::collections::HashSet;

/// An extracted single strand (or a lone codon).
#[derive(Clone, Debug, PartialEq)]
pub struct StrandRecord {
    /// Members in canonical order: the codon with no blue bond first, then
    /// following red bonds.
    pub ids: Vec<CodonId>,
    /// One character per member; bit i belongs to ids[i].
    pub bits: String,
    /// True for a real strand: a path of length >= 2 (every interior arm
    /// bonded by construction). Lone codons report false.
    pub complete: bool,
    /// Index of the strand record reachable through the lowest-id member's
    /// vertical bond, when any member is vertically bonded.
    pub partner: Option<usize>,
    /// True when some member is vertically bonded into another strand of
    /// length >= 2, i.e. this strand is still part of a double-strand
    /// assembly. Captured lone codons do not count.
    pub attached: bool,
}

/// Extract all strands in canonical order (by smallest member id).
pub fn extract_strands(codons: &[(CodonType, CodonState)]) -> Vec<StrandRecord> {
    let n = codons.len();
    let mut component: Vec<usize> = vec![usize::MAX; n];
    let mut records: Vec<StrandRecord> = Vec::new();

    for start in 0..n {
        if component[start] != usize::MAX {
            continue;
        }
        // Walk to the blue-free end; a cycle (geometrically impossible, but
        // guarded) canonically starts at the entry codon.
        let mut head = start;
        loop {
            match codons[head].1.bond_blue {
                Some(next) if next.index() != start => head = next.index(),
                _ => break,
            }
        }
        let record_index = records.len();
        let mut ids = Vec::new();
        let mut bits = String::new();
        let mut cursor = head;
        loop {
            if component[cursor] != usize::MAX {
                break; // cycle guard
            }
            component[cursor] = record_index;
            ids.push(CodonId(cursor as u32));
            bits.push(codons[cursor].0.bit());
            match codons[cursor].1.bond_red {
                Some(next) => cursor = next.index(),
                None => break,
            }
        }
        let complete = ids.len() >= 2;
        records.push(StrandRecord {
            ids,
            bits,
            complete,
            partner: None,
            attached: false,
        });
    }

    // Second pass: vertical-bond relationships.
    for r in 0..records.len() {
        let mut partner = None;
        let mut attached = false;
        for id in &records[r].ids {
            if let Some(v) = codons[id.index()].1.bond_vertical {
                let other = component[v.index()];
                if partner.is_none() {
                    partner = Some(other);
                }
                if records[other].ids.len() >= 2 {
                    attached = true;
                }
            }
        }
        records[r].partner = partner;
        records[r].attached = attached;
    }
    records
}

/// Reference extraction: depth-first search over the undirected red-blue
/// adjacency, then canonical orientation. Used to cross-check
/// `extract_strands`.
pub fn extract_strands_brute_force(codons: &[(CodonType, CodonState)]) -> Vec<StrandRecord> {
    let n = codons.len();
    let mut seen = vec![false; n];
    let mut memberships: Vec<Vec<usize>> = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut stack = vec![start];
        let mut members = Vec::new();
        seen[start] = true;
        while let Some(c) = stack.pop() {
            members.push(c);
            for nb in [codons[c].1.bond_red, codons[c].1.bond_blue].into_iter().flatten() {
                if !seen[nb.index()] {
                    seen[nb.index()] = true;
                    stack.push(nb.index());
                }
            }
        }
        members.sort_unstable();
        memberships.push(members);
    }
    memberships.sort_by_key(|m| m[0]);
    // Orient each component the canonical way.
    memberships
        .iter()
        .map(|members| {
            let mut head = members[0];
            let member_set: HashSet<usize> = members.iter().copied().collect();
            let mut hops = 0;
            while let Some(next) = codons[head].1.bond_blue {
                if !member_set.contains(&next.index()) || hops > members.len() {
                    break;
                }
                head = next.index();
                hops += 1;
            }
            let mut ids = Vec::new();
            let mut bits = String::new();
            let mut cursor = head;
            loop {
                ids.push(CodonId(cursor as u32));
                bits.push(codons[cursor].0.bit());
                if ids.len() >= members.len() {
                    break;
                }
                match codons[cursor].1.bond_red {
                    Some(next) => cursor = next.index(),
                    None => break,
                }
            }
            StrandRecord {
                ids,
                bits,
                complete: members.len() >= 2,
                partner: None,
                attached: false,
            }
        })
        .collect()
}

/// n(X): flip every bit.
pub fn negate(bits: &str) -> String {
    bits.chars()
        .map(|c| match c {
            '0' => '1',
            '1' => '0',
            other => other,
        })
        .collect()
}

/// r(X): reverse the character order.
pub fn reverse(bits: &str) -> String {
    bits.chars().rev().collect()
}

/// g(X) = X concatenated with r(n(X)). The result equals its own negative
/// mirror image, so replication reproduces it exactly.
pub fn symmetrize(bits: &str) -> String {
    let mut out = String::with_capacity(bits.len() * 2);
    out.push_str(bits);
    out.push_str(&reverse(&negate(bits)));
    out
}

/// Strand-level event detection with persistent identity: a strand "counts"
/// the first time its exact codon membership is observed as a complete,
/// detached path. Keyed by membership, so a later granddaughter carrying the
/// original pattern still registers.
#[derive(Clone, Debug, Default)]
pub struct StrandTracker {
    seen: HashSet<Vec<CodonId>>,
    /// Seed pattern and its negative mirror image; completions outside this
    /// pair are mutations.
    lineage: Option<(String, String)>,
}

impl StrandTracker {
    pub fn new(seed_bits: Option<&str>) -> StrandTracker {
        StrandTracker {
            seen: HashSet::new(),
            lineage: seed_bits.map(|x| (x.to_string(), reverse(&negate(x)))),
        }
    }

    /// Mark the currently present strands as seen without emitting events.
    /// Used when resuming from a snapshot, which does not carry tracker
    /// state.
    pub fn observe_silent(&mut self, strands: &[StrandRecord]) {
        for s in strands {
            if s.complete && !s.attached {
                self.seen.insert(Self::key(s));
            }
        }
    }

    /// Compare the new strand set against everything seen so far and emit
    /// completion/mutation events.
    pub fn detect_events(&mut self, strands: &[StrandRecord], step: u64) -> Vec<EventRecord> {
        let mut events = Vec::new();
        for s in strands {
            if !s.complete || s.attached {
                continue;
            }
            let key = Self::key(s);
            if self.seen.insert(key) {
                events.push(EventRecord {
                    step,
                    kind: EventKind::StrandCompleted {
                        ids: s.ids.clone(),
                        bits: s.bits.clone(),
                    },
                });
                if let Some((x, rnx)) = &self.lineage {
                    if &s.bits != x && &s.bits != rnx {
                        events.push(EventRecord {
                            step,
                            kind: EventKind::Mutation {
                                ids: s.ids.clone(),
                                bits: s.bits.clone(),
                            },
                        });
                    }
                }
            }
        }
        events
    }

    fn key(s: &StrandRecord) -> Vec<CodonId> {
        let mut ids = s.ids.clone();
        ids.sort_unstable();
        ids
    }
}
