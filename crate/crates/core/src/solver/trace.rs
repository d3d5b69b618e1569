//! Per-step records of the reduction replay.

use serde::Serialize;

use crate::colorset::ColorSet;
use crate::graph::Vertex;

/// Bumped whenever a field of [`StepRecord`] changes meaning.
pub const TRACE_FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Branch {
    /// One edge re-inserted into a graph of maximum degree at most 3.
    Subcubic,
    /// Pivot of degree 4 with exactly one neighbour of degree at most 3.
    SmallPivot,
    /// Two removed pivot edges whose far ends form a support pair, and the
    /// pair's remaining edges share a color.
    CaseAEq,
    /// As `CaseAEq` with differently colored remaining edges.
    CaseANeq,
    /// Two removed pivot edges whose far ends are not a support pair.
    CaseB,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Resolution {
    /// Smallest color free around the edge and the support partners.
    SmallestFree,
    /// The first of the two candidate colors for the pivot edge worked.
    FirstColor,
    SecondColor,
    /// Pivot recolored to a color missing from the third high neighbour.
    RecolorUncovered,
    /// Pivot recolored to a color present around, but not on, the third
    /// high neighbour.
    RecolorCovered,
    /// One of four or more non-equivalent extensions.
    Claim1,
    /// Three extensions, one of which already distinguished the pivot.
    Claim2Direct,
    /// Three extensions, pivot recolored to a leftover color.
    Claim2Recolor,
}

/// One replayed reduction step. Vertex ids are 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StepRecord {
    pub version: u32,
    /// Position in replay order, starting at 0.
    pub step: usize,
    pub branch: Branch,
    pub pivot: Option<Vertex>,
    pub removed: Vec<(Vertex, Vertex)>,
    pub v_primed: Vec<Vertex>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x: Option<ColorSet>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y: Option<ColorSet>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x1: Option<ColorSet>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x2: Option<ColorSet>,
    /// Number of non-equivalent extensions considered.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classes: Option<usize>,
    pub resolution: Resolution,
    /// The edge between the primed vertices was recolored out of `x`.
    pub star_recolor: bool,
}

impl StepRecord {
    pub(crate) fn new(branch: Branch, pivot: Option<Vertex>, removed: Vec<(Vertex, Vertex)>) -> Self {
        StepRecord {
            version: TRACE_FORMAT_VERSION,
            step: 0,
            branch,
            pivot,
            removed,
            v_primed: Vec::new(),
            x: None,
            y: None,
            x1: None,
            x2: None,
            classes: None,
            resolution: Resolution::SmallestFree,
            star_recolor: false,
        }
    }
}

/// How often each branch fired.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct BranchCounts {
    pub subcubic: usize,
    pub small_pivot: usize,
    pub small_pivot_recolor: usize,
    pub case_a_eq: usize,
    pub case_a_neq: usize,
    pub case_b: usize,
    pub claim1: usize,
    pub claim2: usize,
    pub claim2_recolor: usize,
    pub star_recolor: usize,
}

impl BranchCounts {
    pub fn record(&mut self, rec: &StepRecord) {
        match rec.branch {
            Branch::Subcubic => self.subcubic += 1,
            Branch::SmallPivot => self.small_pivot += 1,
            Branch::CaseAEq => self.case_a_eq += 1,
            Branch::CaseANeq => self.case_a_neq += 1,
            Branch::CaseB => self.case_b += 1,
        }
        match rec.resolution {
            Resolution::RecolorUncovered | Resolution::RecolorCovered => {
                self.small_pivot_recolor += 1
            }
            Resolution::Claim1 => self.claim1 += 1,
            Resolution::Claim2Direct => self.claim2 += 1,
            Resolution::Claim2Recolor => {
                self.claim2 += 1;
                self.claim2_recolor += 1;
            }
            Resolution::SmallestFree | Resolution::FirstColor | Resolution::SecondColor => {}
        }
        if rec.star_recolor {
            self.star_recolor += 1;
        }
    }

    /// `(name, count)` for every counter, in declaration order.
    pub fn entries(&self) -> [(&'static str, usize); 10] {
        [
            ("subcubic", self.subcubic),
            ("small-pivot", self.small_pivot),
            ("small-pivot-recolor", self.small_pivot_recolor),
            ("case-a-eq", self.case_a_eq),
            ("case-a-neq", self.case_a_neq),
            ("case-b", self.case_b),
            ("claim1", self.claim1),
            ("claim2", self.claim2),
            ("claim2-recolor", self.claim2_recolor),
            ("star-recolor", self.star_recolor),
        ]
    }
}

impl std::ops::AddAssign for BranchCounts {
    fn add_assign(&mut self, o: Self) {
        self.subcubic += o.subcubic;
        self.small_pivot += o.small_pivot;
        self.small_pivot_recolor += o.small_pivot_recolor;
        self.case_a_eq += o.case_a_eq;
        self.case_a_neq += o.case_a_neq;
        self.case_b += o.case_b;
        self.claim1 += o.claim1;
        self.claim2 += o.claim2;
        self.claim2_recolor += o.claim2_recolor;
        self.star_recolor += o.star_recolor;
    }
}
