//! Link-diagram data model and combinatorial queries.
//!
//! A [`LinkDiagram`] is an oriented 4-valent planar diagram given by its
//! crossings. Each arc (an edge between two consecutive crossing passages)
//! is a positive integer label that occurs exactly twice over all crossing
//! slots: once entering a crossing and once leaving one. Zero-crossing
//! components are invisible to this encoding, so the diagram carries an
//! explicit `unknots` count of marked circles.
//!
//! Crossing chirality cannot be recovered from the four slot arcs alone,
//! so every crossing stores its sign: `+1` iff the frame (over-tangent,
//! under-tangent) is positively oriented in the plane.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{DiagramError, EvalError};

pub mod braid;
pub mod moves;
pub mod pd;

/// Arc label; positive in well-formed diagrams.
pub type ArcId = u32;

/// Crossing sign relative to the plane orientation.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn as_f64(self) -> f64 {
        self.value() as f64
    }

    pub fn flipped(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }

    pub fn from_int(v: i64) -> Option<Sign> {
        match v {
            1 => Some(Sign::Positive),
            -1 => Some(Sign::Negative),
            _ => None,
        }
    }
}

impl Serialize for Sign {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_i8(self.value() as i8)
    }
}

impl<'de> Deserialize<'de> for Sign {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = i64::deserialize(d)?;
        Sign::from_int(v).ok_or_else(|| serde::de::Error::custom("sign must be 1 or -1"))
    }
}

/// A crossing with its four arc slots and sign.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize, PartialOrd, Ord)]
pub struct Crossing {
    pub over_in: ArcId,
    pub over_out: ArcId,
    pub under_in: ArcId,
    pub under_out: ArcId,
    pub sign: Sign,
}

impl Crossing {
    pub fn new(over_in: ArcId, over_out: ArcId, under_in: ArcId, under_out: ArcId, sign: Sign) -> Self {
        Crossing { over_in, over_out, under_in, under_out, sign }
    }

    fn in_slots(&self) -> [ArcId; 2] {
        [self.over_in, self.under_in]
    }

    fn out_slots(&self) -> [ArcId; 2] {
        [self.over_out, self.under_out]
    }
}

/// Per-crossing choice for the oriented state-sum engine.
///
/// `Flat` keeps both strands passing through (the bare/virtual crossing of
/// the transfer-matrix expansion); `Smooth` is the orientation-preserving
/// reconnection (over-in to under-out, under-in to over-out).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Resolution {
    Flat,
    Smooth,
}

/// Per-crossing choice for the unoriented bracket state sum.
///
/// `A` is the smoothing obtained by rotating the over-strand
/// counterclockwise onto the under-strand; `B` is the other one. For a
/// positive crossing the `A`-smoothing coincides with the oriented
/// reconnection, for a negative crossing it is the disoriented one.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Smoothing {
    A,
    B,
}

/// A full assignment of oriented resolutions, indexed by crossing.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ResolutionState {
    choices: Vec<Resolution>,
}

impl ResolutionState {
    pub fn new(choices: Vec<Resolution>) -> Self {
        ResolutionState { choices }
    }

    pub fn all_flat(d: &LinkDiagram) -> Self {
        ResolutionState { choices: vec![Resolution::Flat; d.crossing_count()] }
    }

    pub fn choices(&self) -> &[Resolution] {
        &self.choices
    }

    /// Number of closed loops this state induces on the diagram.
    pub fn loop_count(&self, d: &LinkDiagram) -> Result<usize, EvalError> {
        d.resolve(&self.choices)
    }
}

/// Invariant violation reported by [`LinkDiagram::validate_parts`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Violation {
    /// Arc does not occur exactly twice across all crossing slots.
    ArcMultiplicity { arc: ArcId, count: usize },
    /// Arc occurs twice but not once-in/once-out, so strands cannot close.
    Unbalanced { arc: ArcId, ins: usize, outs: usize },
    /// Crossing references an arc missing from the declared arc set.
    DanglingArc { crossing: usize, arc: ArcId },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::ArcMultiplicity { arc, count } => {
                write!(f, "arc multiplicity: arc {arc} occurs {count} times")
            }
            Violation::Unbalanced { arc, ins, outs } => {
                write!(f, "non-closable: arc {arc} has {ins} in-slots and {outs} out-slots")
            }
            Violation::DanglingArc { crossing, arc } => {
                write!(f, "dangling arc: crossing {crossing} references unknown arc {arc}")
            }
        }
    }
}

/// An oriented link diagram: crossings plus a count of crossing-free circles.
///
/// Immutable after construction; all queries are read-only.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct LinkDiagram {
    crossings: Vec<Crossing>,
    unknots: usize,
    #[serde(skip)]
    arcs: BTreeSet<ArcId>,
    #[serde(skip)]
    component_of: BTreeMap<ArcId, usize>,
    #[serde(skip)]
    component_count: usize,
}

impl LinkDiagram {
    /// Build and validate a diagram from crossings and marked circles.
    pub fn new(crossings: Vec<Crossing>, unknots: usize) -> Result<Self, DiagramError> {
        let violations = Self::validate_parts(&crossings, None);
        if !violations.is_empty() {
            return Err(DiagramError::Invalid(violations));
        }
        let arcs: BTreeSet<ArcId> = crossings
            .iter()
            .flat_map(|c| [c.over_in, c.over_out, c.under_in, c.under_out])
            .collect();
        let mut d = LinkDiagram {
            crossings,
            unknots,
            arcs,
            component_of: BTreeMap::new(),
            component_count: 0,
        };
        d.compute_components();
        Ok(d)
    }

    /// The empty diagram (no crossings, no circles).
    pub fn empty() -> Self {
        Self::new(Vec::new(), 0).expect("empty diagram is valid")
    }

    /// `k` disjoint crossing-free circles.
    pub fn unknot_circles(k: usize) -> Self {
        Self::new(Vec::new(), k).expect("circles are valid")
    }

    /// Check the arc double-occurrence and closure invariants of raw parts.
    ///
    /// When `arcs` is given, slot references outside it are reported as
    /// dangling. Returns the (possibly empty) violation list instead of
    /// failing; idempotent.
    pub fn validate_parts(crossings: &[Crossing], arcs: Option<&BTreeSet<ArcId>>) -> Vec<Violation> {
        let mut violations = Vec::new();
        if let Some(arcs) = arcs {
            for (i, c) in crossings.iter().enumerate() {
                for a in [c.over_in, c.over_out, c.under_in, c.under_out] {
                    if !arcs.contains(&a) {
                        violations.push(Violation::DanglingArc { crossing: i, arc: a });
                    }
                }
            }
        }
        let mut ins: BTreeMap<ArcId, usize> = BTreeMap::new();
        let mut outs: BTreeMap<ArcId, usize> = BTreeMap::new();
        for c in crossings {
            for a in c.in_slots() {
                *ins.entry(a).or_insert(0) += 1;
            }
            for a in c.out_slots() {
                *outs.entry(a).or_insert(0) += 1;
            }
        }
        let all: BTreeSet<ArcId> = ins.keys().chain(outs.keys()).copied().collect();
        for a in all {
            let i = ins.get(&a).copied().unwrap_or(0);
            let o = outs.get(&a).copied().unwrap_or(0);
            if i + o != 2 {
                violations.push(Violation::ArcMultiplicity { arc: a, count: i + o });
            } else if i != 1 {
                violations.push(Violation::Unbalanced { arc: a, ins: i, outs: o });
            }
        }
        violations
    }

    /// Re-check this diagram's invariants (empty for diagrams built by `new`).
    pub fn validate(&self) -> Vec<Violation> {
        Self::validate_parts(&self.crossings, Some(&self.arcs))
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn unknot_count(&self) -> usize {
        self.unknots
    }

    pub fn arcs(&self) -> impl Iterator<Item = ArcId> + '_ {
        self.arcs.iter().copied()
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    fn compute_components(&mut self) {
        // successor along the strand: the out-arc of the slot pair where an
        // arc enters a crossing.
        let mut successor: BTreeMap<ArcId, ArcId> = BTreeMap::new();
        for c in &self.crossings {
            successor.insert(c.over_in, c.over_out);
            successor.insert(c.under_in, c.under_out);
        }
        let mut component_of = BTreeMap::new();
        let mut count = 0;
        for &start in &self.arcs {
            if component_of.contains_key(&start) {
                continue;
            }
            let idx = count;
            count += 1;
            let mut a = start;
            loop {
                component_of.insert(a, idx);
                a = successor[&a];
                if a == start {
                    break;
                }
            }
        }
        self.component_of = component_of;
        self.component_count = count + self.unknots;
    }

    /// Number of closed strand cycles, marked circles included.
    pub fn component_count(&self) -> usize {
        self.component_count
    }

    /// Component index of an arc; indices are ordered by smallest arc label,
    /// with marked circles taking the final indices.
    pub fn component_of(&self, arc: ArcId) -> Option<usize> {
        self.component_of.get(&arc).copied()
    }

    /// Sum of all crossing signs.
    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|c| c.sign.value()).sum()
    }

    /// Symmetric matrix: off-diagonal entries are linking numbers (half the
    /// signed count of mutual crossings), diagonal entries are per-component
    /// self-writhes.
    pub fn linking_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.component_count;
        let mut twice = vec![vec![0i64; n]; n];
        for c in &self.crossings {
            let i = self.component_of[&c.over_in];
            let j = self.component_of[&c.under_in];
            twice[i][j] += c.sign.value();
            twice[j][i] += c.sign.value();
        }
        // mutual entries hold twice the linking number, diagonal entries
        // twice the self-writhe; both halve to integers.
        twice
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|v| {
                        debug_assert!(v % 2 == 0);
                        v / 2
                    })
                    .collect()
            })
            .collect()
    }

    /// Linking number between two components.
    pub fn linking_number(&self, i: usize, j: usize) -> i64 {
        self.linking_matrix()[i][j]
    }

    /// Loop count of the pairing induced by per-crossing Flat/Smooth choices.
    pub fn resolve(&self, choices: &[Resolution]) -> Result<usize, EvalError> {
        if choices.len() != self.crossings.len() {
            return Err(EvalError::MissingChoice(choices.len().min(self.crossings.len())));
        }
        let mut uf = UnionFind::over(&self.arcs);
        for (c, choice) in self.crossings.iter().zip(choices) {
            match choice {
                Resolution::Flat => {
                    uf.union(c.over_in, c.over_out);
                    uf.union(c.under_in, c.under_out);
                }
                Resolution::Smooth => {
                    uf.union(c.over_in, c.under_out);
                    uf.union(c.under_in, c.over_out);
                }
            }
        }
        Ok(uf.class_count() + self.unknots)
    }

    /// Loop count of the planar `A`/`B` smoothing state (Kauffman bracket).
    pub fn resolve_smoothings(&self, choices: &[Smoothing]) -> Result<usize, EvalError> {
        if choices.len() != self.crossings.len() {
            return Err(EvalError::MissingChoice(choices.len().min(self.crossings.len())));
        }
        let mut uf = UnionFind::over(&self.arcs);
        for (c, choice) in self.crossings.iter().zip(choices) {
            let (p, q) = smoothing_pairs(c, *choice);
            uf.union(p.0, p.1);
            uf.union(q.0, q.1);
        }
        Ok(uf.class_count() + self.unknots)
    }

    /// The same diagram with crossing `j` switched (over/under exchanged).
    pub fn switched(&self, j: usize) -> Result<LinkDiagram, DiagramError> {
        let c = *self.crossings.get(j).ok_or(DiagramError::CrossingIndex(j))?;
        let mut crossings = self.crossings.clone();
        crossings[j] = Crossing {
            over_in: c.under_in,
            over_out: c.under_out,
            under_in: c.over_in,
            under_out: c.over_out,
            sign: c.sign.flipped(),
        };
        LinkDiagram::new(crossings, self.unknots)
    }

    /// The mirror image: every crossing switched.
    pub fn mirror(&self) -> LinkDiagram {
        let crossings = self
            .crossings
            .iter()
            .map(|c| Crossing {
                over_in: c.under_in,
                over_out: c.under_out,
                under_in: c.over_in,
                under_out: c.over_out,
                sign: c.sign.flipped(),
            })
            .collect();
        LinkDiagram::new(crossings, self.unknots).expect("mirror preserves validity")
    }

    /// Surgery: remove crossing `j`, reconnecting by the oriented smoothing.
    pub fn smoothed_oriented(&self, j: usize) -> Result<LinkDiagram, DiagramError> {
        let c = *self.crossings.get(j).ok_or(DiagramError::CrossingIndex(j))?;
        let mut crossings = self.crossings.clone();
        crossings.remove(j);
        merge_arc_pairs(
            crossings,
            self.unknots,
            [(c.over_in, c.under_out), (c.under_in, c.over_out)],
        )
    }

    /// Surgery: remove crossing `j`, reconnecting by the `A` or `B` smoothing.
    ///
    /// A disoriented smoothing reverses part of a strand, so crossings along
    /// the reversed stretch come back with slots swapped and signs flipped.
    /// The unoriented bracket is indifferent to this; oriented quantities of
    /// the result correspond to the rebuilt orientation.
    pub fn smoothed_ab(&self, j: usize, s: Smoothing) -> Result<LinkDiagram, DiagramError> {
        let c = *self.crossings.get(j).ok_or(DiagramError::CrossingIndex(j))?;
        let (p, q) = smoothing_pairs(&c, s);
        if (p, q) == ((c.over_in, c.under_out), (c.under_in, c.over_out)) {
            return self.smoothed_oriented(j);
        }
        // Disoriented: joins head-to-head and tail-to-tail.
        let mut crossings = self.crossings.clone();
        crossings.remove(j);
        let joins = [
            ((c.over_in, End::Head), (c.under_in, End::Head)),
            ((c.over_out, End::Tail), (c.under_out, End::Tail)),
        ];
        let reoriented = reorient_curves(crossings, joins)?;
        merge_arc_pairs(
            reoriented,
            self.unknots,
            [(c.over_in, c.under_in), (c.over_out, c.under_out)],
        )
    }

    /// Disjoint union; the other diagram's arcs are shifted past this one's.
    pub fn disjoint_union(&self, other: &LinkDiagram) -> LinkDiagram {
        let offset = self.arcs.iter().max().copied().unwrap_or(0);
        let mut crossings = self.crossings.clone();
        crossings.extend(other.crossings.iter().map(|c| Crossing {
            over_in: c.over_in + offset,
            over_out: c.over_out + offset,
            under_in: c.under_in + offset,
            under_out: c.under_out + offset,
            sign: c.sign,
        }));
        LinkDiagram::new(crossings, self.unknots + other.unknots)
            .expect("disjoint union of valid diagrams is valid")
    }

    /// Canonical relabeling: components ordered by smallest arc label, arcs
    /// renumbered along each strand starting from the smallest, crossings
    /// sorted. Two diagrams are declared isomorphic when their canonical
    /// forms are equal; this is a cheap traversal normal form, not
    /// planar-isotopy equivalence.
    pub fn canonical(&self) -> LinkDiagram {
        let mut successor: BTreeMap<ArcId, ArcId> = BTreeMap::new();
        for c in &self.crossings {
            successor.insert(c.over_in, c.over_out);
            successor.insert(c.under_in, c.under_out);
        }
        let mut map: BTreeMap<ArcId, ArcId> = BTreeMap::new();
        let mut next: ArcId = 1;
        for &start in &self.arcs {
            if map.contains_key(&start) {
                continue;
            }
            let mut a = start;
            loop {
                map.insert(a, next);
                next += 1;
                a = successor[&a];
                if a == start {
                    break;
                }
            }
        }
        let mut crossings: Vec<Crossing> = self
            .crossings
            .iter()
            .map(|c| Crossing {
                over_in: map[&c.over_in],
                over_out: map[&c.over_out],
                under_in: map[&c.under_in],
                under_out: map[&c.under_out],
                sign: c.sign,
            })
            .collect();
        crossings.sort();
        LinkDiagram::new(crossings, self.unknots).expect("relabeling preserves validity")
    }

    /// Equality after canonical relabeling.
    pub fn isomorphic(&self, other: &LinkDiagram) -> bool {
        self.canonical() == other.canonical()
    }

    /// Native JSON serialization.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("diagram serializes")
    }

    /// Parse the native JSON format:
    /// `{"crossings":[{"over_in":..,"over_out":..,"under_in":..,"under_out":..,"sign":..}],"unknots":k}`.
    pub fn from_json(text: &str) -> Result<LinkDiagram, DiagramError> {
        #[derive(Deserialize)]
        struct Raw {
            #[serde(default)]
            crossings: Vec<Crossing>,
            #[serde(default)]
            unknots: usize,
        }
        let raw: Raw =
            serde_json::from_str(text).map_err(|e| DiagramError::NativeJson(e.to_string()))?;
        LinkDiagram::new(raw.crossings, raw.unknots)
    }
}

/// The two arc pairs joined by an `A` or `B` smoothing of a crossing.
///
/// Rotating the over-strand counterclockwise onto the under-strand sweeps
/// the two regions whose join is the `A` smoothing. In slot terms the `A`
/// smoothing of a positive crossing joins over-in to under-out and under-in
/// to over-out (the oriented reconnection), while for a negative crossing it
/// joins over-in to under-in and over-out to under-out.
pub fn smoothing_pairs(c: &Crossing, s: Smoothing) -> ((ArcId, ArcId), (ArcId, ArcId)) {
    let oriented = ((c.over_in, c.under_out), (c.under_in, c.over_out));
    let disoriented = ((c.over_in, c.under_in), (c.over_out, c.under_out));
    match (c.sign, s) {
        (Sign::Positive, Smoothing::A) | (Sign::Negative, Smoothing::B) => oriented,
        (Sign::Positive, Smoothing::B) | (Sign::Negative, Smoothing::A) => disoriented,
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
enum End {
    Tail, // at the out-slot where the arc starts
    Head, // at the in-slot where the arc ends
}

/// Re-trace all curves of a crossing list whose strand ends are connected by
/// the given extra joins, choosing a direction per curve; crossings traversed
/// against their stored direction come back with the affected slots swapped
/// (sign flips when exactly one strand reverses). The joins may be
/// head-to-head / tail-to-tail; the output is orientation-consistent.
fn reorient_curves(
    crossings: Vec<Crossing>,
    joins: [((ArcId, End), (ArcId, End)); 2],
) -> Result<Vec<Crossing>, DiagramError> {
    let mut conn: BTreeMap<(ArcId, End), (ArcId, End)> = BTreeMap::new();
    for c in &crossings {
        conn.insert((c.over_in, End::Head), (c.over_out, End::Tail));
        conn.insert((c.over_out, End::Tail), (c.over_in, End::Head));
        conn.insert((c.under_in, End::Head), (c.under_out, End::Tail));
        conn.insert((c.under_out, End::Tail), (c.under_in, End::Head));
    }
    for (x, y) in joins {
        conn.insert(x, y);
        conn.insert(y, x);
    }
    let arcs: BTreeSet<ArcId> = conn.keys().map(|(a, _)| *a).collect();
    let mut forward: BTreeMap<ArcId, bool> = BTreeMap::new();
    let step_cap = 2 * arcs.len() + 2;
    for &start in &arcs {
        if forward.contains_key(&start) {
            continue;
        }
        let mut a = start;
        let mut fwd = true;
        let mut steps = 0;
        loop {
            steps += 1;
            if steps > step_cap {
                return Err(DiagramError::NativeJson(
                    "strand tracing did not close up (non-planar slot data)".into(),
                ));
            }
            forward.insert(a, fwd);
            let exit = if fwd { End::Head } else { End::Tail };
            let &(b, entered) = conn
                .get(&(a, exit))
                .ok_or_else(|| DiagramError::NativeJson(format!("open strand end at arc {a}")))?;
            if b == start && entered == End::Tail {
                break;
            }
            a = b;
            // entering at the tail means the next arc is traversed forward
            fwd = entered == End::Tail;
        }
    }
    Ok(crossings
        .into_iter()
        .map(|c| {
            let over_back = !forward.get(&c.over_in).copied().unwrap_or(true);
            let under_back = !forward.get(&c.under_in).copied().unwrap_or(true);
            let mut nc = c;
            if over_back {
                std::mem::swap(&mut nc.over_in, &mut nc.over_out);
            }
            if under_back {
                std::mem::swap(&mut nc.under_in, &mut nc.under_out);
            }
            if over_back != under_back {
                nc.sign = nc.sign.flipped();
            }
            nc
        })
        .collect())
}

/// Merge each arc pair into a single label (first id kept); a pair that has
/// already collapsed to one arc closes a crossing-free circle.
fn merge_arc_pairs(
    mut crossings: Vec<Crossing>,
    mut unknots: usize,
    pairs: [(ArcId, ArcId); 2],
) -> Result<LinkDiagram, DiagramError> {
    let mut rename: BTreeMap<ArcId, ArcId> = BTreeMap::new();
    let resolve = |rename: &BTreeMap<ArcId, ArcId>, mut a: ArcId| {
        while let Some(&b) = rename.get(&a) {
            a = b;
        }
        a
    };
    for (keep, drop) in pairs {
        let keep = resolve(&rename, keep);
        let drop = resolve(&rename, drop);
        if keep == drop {
            unknots += 1;
        } else {
            rename.insert(drop, keep);
        }
    }
    for c in crossings.iter_mut() {
        c.over_in = resolve(&rename, c.over_in);
        c.over_out = resolve(&rename, c.over_out);
        c.under_in = resolve(&rename, c.under_in);
        c.under_out = resolve(&rename, c.under_out);
    }
    LinkDiagram::new(crossings, unknots)
}

/// Union-find over arc ids with path compression.
pub(crate) struct UnionFind {
    index: BTreeMap<ArcId, usize>,
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn over(arcs: &BTreeSet<ArcId>) -> Self {
        let index: BTreeMap<ArcId, usize> =
            arcs.iter().enumerate().map(|(i, a)| (*a, i)).collect();
        let parent = (0..index.len()).collect();
        UnionFind { index, parent }
    }

    fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] != i {
            self.parent[i] = self.parent[self.parent[i]];
            i = self.parent[i];
        }
        i
    }

    pub(crate) fn union(&mut self, a: ArcId, b: ArcId) {
        let (i, j) = (self.index[&a], self.index[&b]);
        let (ri, rj) = (self.find(i), self.find(j));
        if ri != rj {
            self.parent[ri] = rj;
        }
    }

    pub(crate) fn class_count(&mut self) -> usize {
        let n = self.parent.len();
        let mut roots = BTreeSet::new();
        for i in 0..n {
            let r = self.find(i);
            roots.insert(r);
        }
        roots.len()
    }
}

#[cfg(test)]
mod tests {
    use super::braid;
    use super::*;

    fn hopf() -> LinkDiagram {
        pd::parse_pd("X[1,3,2,4], X[3,1,4,2]").unwrap()
    }

    #[test]
    fn hopf_structure() {
        let d = hopf();
        assert_eq!(d.crossing_count(), 2);
        assert_eq!(d.arc_count(), 4);
        assert_eq!(d.component_count(), 2);
        assert_eq!(d.writhe(), 2);
        assert_eq!(d.linking_number(0, 1), 1);
        assert!(d.validate().is_empty());
    }

    #[test]
    fn marked_circles() {
        let d = LinkDiagram::unknot_circles(3);
        assert_eq!(d.component_count(), 3);
        assert_eq!(d.writhe(), 0);
        assert_eq!(d.resolve(&[]).unwrap(), 3);
    }

    #[test]
    fn validate_reports_multiplicity() {
        // arc 3 used three times
        let crossings = vec![
            Crossing::new(3, 2, 1, 3, Sign::Positive),
            Crossing::new(3, 1, 2, 4, Sign::Positive),
        ];
        let v = LinkDiagram::validate_parts(&crossings, None);
        assert!(v
            .iter()
            .any(|v| matches!(v, Violation::ArcMultiplicity { arc: 3, count: 3 })));
    }

    #[test]
    fn validate_reports_dangling() {
        let crossings = vec![Crossing::new(1, 2, 3, 4, Sign::Positive)];
        let arcs: BTreeSet<ArcId> = [1, 2, 3].into_iter().collect();
        let v = LinkDiagram::validate_parts(&crossings, Some(&arcs));
        assert!(v
            .iter()
            .any(|v| matches!(v, Violation::DanglingArc { crossing: 0, arc: 4 })));
    }

    #[test]
    fn validate_reports_unbalanced() {
        // arc 1 incoming twice, arc 2 outgoing twice: counts fine, closure not
        let crossings = vec![Crossing::new(1, 2, 1, 2, Sign::Positive)];
        let v = LinkDiagram::validate_parts(&crossings, None);
        assert!(v
            .iter()
            .any(|v| matches!(v, Violation::Unbalanced { arc: 1, ins: 2, outs: 0 })));
    }

    #[test]
    fn hopf_resolutions() {
        let d = hopf();
        use Resolution::*;
        assert_eq!(d.resolve(&[Flat, Flat]).unwrap(), 2);
        assert_eq!(d.resolve(&[Smooth, Smooth]).unwrap(), 2);
        assert_eq!(d.resolve(&[Flat, Smooth]).unwrap(), 1);
        assert_eq!(d.resolve(&[Smooth, Flat]).unwrap(), 1);
        assert!(d.resolve(&[Flat]).is_err());
    }

    #[test]
    fn all_flat_is_components() {
        for seed in 0..30u64 {
            let d = braid::random_closure(seed, 4, 8);
            let flat = ResolutionState::all_flat(&d);
            assert_eq!(flat.loop_count(&d).unwrap(), d.component_count());
        }
    }

    #[test]
    fn trefoil_all_a_state() {
        let d = braid::trefoil();
        let loops = d
            .resolve_smoothings(&[Smoothing::A, Smoothing::A, Smoothing::A])
            .unwrap();
        assert_eq!(loops, 2);
    }

    #[test]
    fn mirror_negates_writhe() {
        for seed in 0..20u64 {
            let d = braid::random_closure(seed, 4, 8);
            assert_eq!(d.mirror().writhe(), -d.writhe());
        }
    }

    #[test]
    fn double_occurrence_totals() {
        for seed in 0..20u64 {
            let d = braid::random_closure(seed, 4, 8);
            // 4 slot occurrences per crossing, each arc twice
            assert_eq!(4 * d.crossing_count(), 2 * d.arc_count());
        }
    }

    #[test]
    fn switch_flips_sign_and_restores() {
        let d = braid::trefoil();
        let s = d.switched(0).unwrap();
        assert_eq!(s.crossings()[0].sign, d.crossings()[0].sign.flipped());
        assert!(d.switched(0).unwrap().switched(0).unwrap().isomorphic(&d));
    }

    #[test]
    fn smoothing_kink_gives_circle() {
        // one-crossing kink: oriented smoothing splits off a circle
        let d = LinkDiagram::new(vec![Crossing::new(2, 1, 1, 2, Sign::Positive)], 0).unwrap();
        assert_eq!(d.component_count(), 1);
        let s = d.smoothed_oriented(0).unwrap();
        assert_eq!(s.crossing_count(), 0);
        assert_eq!(s.component_count(), 2);
    }

    #[test]
    fn smoothing_surgery_matches_state_resolution() {
        // smoothing crossing 0 by surgery, then resolving the rest, must give
        // the same loop count as resolving the original diagram with the
        // same joint state. Single-strand reversals flip stored signs but
        // leave the geometric A/B pairings alone, so states correspond
        // index-wise.
        for seed in 0..25u64 {
            let d = braid::random_closure(seed, 3, 6);
            if d.crossing_count() == 0 {
                continue;
            }
            for s in [Smoothing::A, Smoothing::B] {
                let surgered = d.smoothed_ab(0, s).unwrap();
                assert!(surgered.validate().is_empty(), "seed {seed}");
                let k1 = surgered.crossing_count();
                for bits in 0..(1u32 << k1) {
                    let rest: Vec<Smoothing> = (0..k1)
                        .map(|i| if bits >> i & 1 == 0 { Smoothing::A } else { Smoothing::B })
                        .collect();
                    let mut full = vec![s];
                    full.extend(&rest);
                    assert_eq!(
                        d.resolve_smoothings(&full).unwrap(),
                        surgered.resolve_smoothings(&rest).unwrap(),
                        "seed {seed} smoothing {s:?} state {bits:b}"
                    );
                }
            }
        }
    }

    #[test]
    fn disjoint_union_counts() {
        let d = hopf().disjoint_union(&braid::trefoil());
        assert_eq!(d.crossing_count(), 5);
        assert_eq!(d.component_count(), 3);
        assert!(d.validate().is_empty());
        assert_eq!(d.writhe(), 5);
    }

    #[test]
    fn json_round_trip() {
        let d = hopf();
        let j = d.to_json();
        let back = LinkDiagram::from_json(&j).unwrap();
        assert_eq!(back, d);
        let circles = LinkDiagram::from_json(r#"{"crossings":[],"unknots":1}"#).unwrap();
        assert_eq!(circles.component_count(), 1);
    }
}
