//! Overlapping / overlapped regions for a split of the immersed circles into
//! two sub-diagrams.

use super::faces::{Labels, Structure};
use super::DottedGraph;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OverlapPair {
    /// Faces of the overlapping region of the first part.
    pub overlapping: Vec<usize>,
    /// Faces of the overlapped region of the second part.
    pub overlapped: Vec<usize>,
    /// Label of the overlapping region, counted over the first part only.
    pub label: i32,
}

/// `second[c]` puts circle `c` into the second part. Only bounded regions
/// are considered.
pub fn overlap_relation(st: &Structure, labels: &Labels, second: &[bool]) -> Vec<OverlapPair> {
    let in_second = |s: usize| second[st.strand_circle[s]];
    let r1 = st.regions(|s| !in_second(s));
    let r2 = st.regions(in_second);
    let label1 = |f: usize| -> i32 {
        labels.winding[f].iter().enumerate().filter(|&(c, _)| !second.get(c).copied().unwrap_or(false)).map(|(_, w)| *w).sum()
    };
    let n1 = r1.iter().max().map_or(0, |m| m + 1);
    let n2 = r2.iter().max().map_or(0, |m| m + 1);
    let nf = st.n_faces();
    let mut out = Vec::new();
    for a in 1..n1 {
        let fa: Vec<usize> = (0..nf).filter(|&f| r1[f] == a).collect();
        for b in 1..n2 {
            let fb: Vec<usize> = (0..nf).filter(|&f| r2[f] == b).collect();
            let meets = fb.iter().any(|&f| r1[f] == a);
            let rest: Vec<usize> = fb.iter().copied().filter(|&f| r1[f] != a).collect();
            if meets && !rest.is_empty() && rest.iter().all(|&f| label1(f) == 0) {
                out.push(OverlapPair { overlapping: fa.clone(), overlapped: fb, label: label1(fa[0]) });
            }
        }
    }
    out
}

impl DottedGraph {
    pub fn overlapped_regions(&self, second: &[bool]) -> Vec<OverlapPair> {
        let st = self.structure();
        let labels = st.labels(self).expect("valid diagram");
        overlap_relation(&st, &labels, second)
    }
}
