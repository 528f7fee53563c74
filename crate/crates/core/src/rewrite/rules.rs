//! The deformation rules as data. The matcher in `super` interprets each
//! entry; nothing about a particular move lives anywhere else.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MoveKind {
    I,
    II,
    III,
    IV,
}

/// What the left-hand side of a rule looks like.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Pattern {
    /// An embedded circle bounding a disk of label ε.
    CircleComponent,
    /// A loop based at a self-crossing, bounding a disk of label ε.
    LoopComponent,
    /// Two dotted arcs on the boundary of one region of label ε, the region on
    /// the same side of both (so the arcs admit induced orientations after
    /// reconnection). `adjacent`: the arcs meet at a crossing of the region,
    /// possibly after sliding a dot past crossings with overlapping circles.
    ArcPair { adjacent: bool },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DotCount {
    Exactly(u32),
    AtLeast(u32),
}

impl DotCount {
    pub fn admits(self, n: u32) -> bool {
        match self {
            DotCount::Exactly(k) => n == k,
            DotCount::AtLeast(k) => n >= k,
        }
    }
}

/// Right-hand side.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Effect {
    /// Remove the matched curve; strands crossing it are rejoined.
    Delete,
    /// Cut both arcs at a dot (the dots are used up) and reconnect across the
    /// region.
    Saddle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rule {
    pub name: &'static str,
    pub kind: MoveKind,
    pub pattern: Pattern,
    /// Dots required on the matched component, or on each arc of a pair.
    pub dots: DotCount,
    pub effect: Effect,
    /// Whether the region may be overlapped by regions of label ε.
    pub overlap: bool,
    /// Good deformation (I, II, III, IVa).
    pub good: bool,
}

pub const RULE_TABLE: &[Rule] = &[
    Rule {
        name: "I",
        kind: MoveKind::I,
        pattern: Pattern::CircleComponent,
        dots: DotCount::Exactly(0),
        effect: Effect::Delete,
        overlap: false,
        good: true,
    },
    Rule {
        name: "II",
        kind: MoveKind::II,
        pattern: Pattern::CircleComponent,
        dots: DotCount::AtLeast(1),
        effect: Effect::Delete,
        overlap: true,
        good: true,
    },
    Rule {
        name: "III",
        kind: MoveKind::III,
        pattern: Pattern::LoopComponent,
        dots: DotCount::AtLeast(0),
        effect: Effect::Delete,
        overlap: true,
        good: true,
    },
    Rule {
        name: "IV",
        kind: MoveKind::IV,
        pattern: Pattern::ArcPair { adjacent: false },
        dots: DotCount::AtLeast(1),
        effect: Effect::Saddle,
        overlap: true,
        good: false,
    },
    Rule {
        name: "IVa",
        kind: MoveKind::IV,
        pattern: Pattern::ArcPair { adjacent: true },
        dots: DotCount::AtLeast(1),
        effect: Effect::Saddle,
        overlap: true,
        good: true,
    },
];
