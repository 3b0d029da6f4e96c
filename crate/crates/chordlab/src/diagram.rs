//! Rooted chord diagrams and their structural decompositions: crossings,
//! connectivity, the root component, dangling diagrams, indecomposable
//! factorization, and root removal with a marked interval.
//!
//! A diagram on n chords is a perfect matching of the positions 1..=2n in
//! linear representation; the chord containing position 1 is the root
//! chord. Interval i is the space immediately to the right of position i,
//! so there are 2n intervals including the one after the last position.
//! Diagrams are immutable values stored canonically: chords as (left,
//! right) pairs sorted by left endpoint, optional distinct labels riding
//! along with their chords.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    /// Unreadable text input; carries the offending token.
    #[error("parse error at `{token}`: {reason}")]
    Parse { token: String, reason: String },
    /// A structurally invalid chord or label set.
    #[error("invalid diagram: {0}")]
    Invalid(String),
    /// The operation needs at least one chord.
    #[error("operation requires a nonempty diagram")]
    EmptyDiagram,
    /// The addressed chord lies outside the root component.
    #[error("chord {0} is not in the root component")]
    NotRootComponent(usize),
    /// Internal consistency violation (a dangling chord spanning two gaps
    /// would contradict the root-component decomposition).
    #[error("structure violation: {0}")]
    Structure(String),
    /// Input outside the operation's stated domain.
    #[error("domain error: {0}")]
    Domain(String),
}

/// A rooted chord diagram in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ChordDiagram {
    chords: Vec<(usize, usize)>,
    labels: Option<Vec<u32>>,
}

impl ChordDiagram {
    pub fn empty() -> Self {
        ChordDiagram {
            chords: Vec::new(),
            labels: None,
        }
    }

    /// The one-chord diagram.
    pub fn single() -> Self {
        ChordDiagram {
            chords: vec![(1, 2)],
            labels: None,
        }
    }

    /// Build from endpoint pairs; order and within-pair orientation are
    /// normalized. The endpoints must be exactly {1..2n}, each used once.
    pub fn new(chords: Vec<(usize, usize)>) -> Result<Self, DiagramError> {
        let n = chords.len();
        let mut seen = vec![false; 2 * n + 1];
        for &(a, b) in &chords {
            for p in [a, b] {
                if p == 0 || p > 2 * n {
                    return Err(DiagramError::Invalid(format!(
                        "endpoint {p} outside 1..={}",
                        2 * n
                    )));
                }
                if seen[p] {
                    return Err(DiagramError::Invalid(format!("duplicate endpoint {p}")));
                }
                seen[p] = true;
            }
            if a == b {
                return Err(DiagramError::Invalid(format!("degenerate chord {a}-{b}")));
            }
        }
        let mut chords: Vec<(usize, usize)> = chords
            .into_iter()
            .map(|(a, b)| (a.min(b), a.max(b)))
            .collect();
        chords.sort_unstable();
        Ok(ChordDiagram {
            chords,
            labels: None,
        })
    }

    /// Attach one distinct label per chord, aligned with the canonical
    /// chord order. An empty diagram stays unlabelled.
    pub fn with_labels(mut self, labels: Vec<u32>) -> Result<Self, DiagramError> {
        if labels.len() != self.n() {
            return Err(DiagramError::Invalid(format!(
                "{} labels for {} chords",
                labels.len(),
                self.n()
            )));
        }
        let distinct: BTreeSet<u32> = labels.iter().copied().collect();
        if distinct.len() != labels.len() {
            return Err(DiagramError::Invalid("labels must be distinct".into()));
        }
        self.labels = if labels.is_empty() { None } else { Some(labels) };
        Ok(self)
    }

    /// Rebuild from (chord, optional label) pairs in any order; used by the
    /// bijections when repositioning chords. Labels are kept only when
    /// every chord carries one.
    pub(crate) fn from_parts(
        parts: Vec<((usize, usize), Option<u32>)>,
    ) -> Result<Self, DiagramError> {
        let mut parts: Vec<((usize, usize), Option<u32>)> = parts
            .into_iter()
            .map(|((a, b), l)| ((a.min(b), a.max(b)), l))
            .collect();
        parts.sort_unstable();
        let chords: Vec<(usize, usize)> = parts.iter().map(|&(c, _)| c).collect();
        let labels: Option<Vec<u32>> = parts.iter().map(|&(_, l)| l).collect();
        let diagram = ChordDiagram::new(chords)?;
        match labels {
            Some(labels) => diagram.with_labels(labels),
            None => Ok(diagram),
        }
    }

    pub fn n(&self) -> usize {
        self.chords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chords.is_empty()
    }

    pub fn chords(&self) -> &[(usize, usize)] {
        &self.chords
    }

    pub fn labels(&self) -> Option<&[u32]> {
        self.labels.as_deref()
    }

    pub fn label_of(&self, chord: usize) -> Option<u32> {
        self.labels.as_ref().map(|l| l[chord])
    }

    pub fn strip_labels(mut self) -> Self {
        self.labels = None;
        self
    }

    /// Parse the canonical text format `"a-b,c-d,..."`; the empty string is
    /// the empty diagram.
    pub fn parse(text: &str) -> Result<Self, DiagramError> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(ChordDiagram::empty());
        }
        let mut chords = Vec::new();
        for token in text.split(',') {
            let token = token.trim();
            let parse_endpoint = |part: &str| {
                part.trim().parse::<usize>().map_err(|_| DiagramError::Parse {
                    token: token.to_owned(),
                    reason: "expected `a-b` with positive integers".into(),
                })
            };
            let (a, b) = token.split_once('-').ok_or_else(|| DiagramError::Parse {
                token: token.to_owned(),
                reason: "expected `a-b` with positive integers".into(),
            })?;
            chords.push((parse_endpoint(a)?, parse_endpoint(b)?));
        }
        // Re-walk the tokens for endpoint errors so the offending pair is named.
        let n = chords.len();
        let mut seen = vec![false; 2 * n + 1];
        for &(a, b) in &chords {
            for p in [a, b] {
                if p == 0 || p > 2 * n {
                    return Err(DiagramError::Parse {
                        token: format!("{a}-{b}"),
                        reason: format!("endpoint {p} outside 1..={}", 2 * n),
                    });
                }
                if seen[p] {
                    return Err(DiagramError::Parse {
                        token: format!("{a}-{b}"),
                        reason: format!("duplicate endpoint {p}"),
                    });
                }
                seen[p] = true;
            }
        }
        ChordDiagram::new(chords)
    }

    /// Whether chords i and j cross: v1 < w1 < v2 < w2 in either role.
    pub fn crossing(&self, i: usize, j: usize) -> bool {
        let (v1, v2) = self.chords[i];
        let (w1, w2) = self.chords[j];
        (v1 < w1 && w1 < v2 && v2 < w2) || (w1 < v1 && v1 < w2 && w2 < v2)
    }

    pub fn intersection_graph(&self) -> IntersectionGraph {
        let n = self.n();
        let mut edges = BTreeSet::new();
        for i in 0..n {
            for j in i + 1..n {
                if self.crossing(i, j) {
                    edges.insert((i, j));
                }
            }
        }
        IntersectionGraph { vertices: n, edges }
    }

    /// Chord indices grouped by connected component of the intersection
    /// graph, ordered by first endpoint in the diagram.
    pub fn component_indices(&self) -> Vec<Vec<usize>> {
        self.intersection_graph().components()
    }

    pub fn component_count(&self) -> usize {
        self.component_indices().len()
    }

    pub fn is_connected(&self) -> bool {
        !self.is_empty() && self.component_count() == 1
    }

    /// Components as diagrams, endpoints relabelled order-preservingly.
    pub fn connected_components(&self) -> Vec<ChordDiagram> {
        self.component_indices()
            .iter()
            .map(|indices| self.restrict(indices))
            .collect()
    }

    pub fn root_component_indices(&self) -> Result<Vec<usize>, DiagramError> {
        if self.is_empty() {
            return Err(DiagramError::EmptyDiagram);
        }
        // Chord 0 has the smallest endpoint, so its component sorts first.
        Ok(self.component_indices().swap_remove(0))
    }

    pub fn root_component(&self) -> Result<ChordDiagram, DiagramError> {
        Ok(self.restrict(&self.root_component_indices()?))
    }

    /// The sub-diagram on the given chord indices, endpoints relabelled
    /// order-preservingly to 1..2k, labels riding along.
    pub fn restrict(&self, indices: &[usize]) -> ChordDiagram {
        let mut indices: Vec<usize> = indices.to_vec();
        indices.sort_unstable();
        let mut positions: Vec<usize> = indices
            .iter()
            .flat_map(|&i| {
                let (a, b) = self.chords[i];
                [a, b]
            })
            .collect();
        positions.sort_unstable();
        let rank = |p: usize| positions.binary_search(&p).expect("own endpoint") + 1;
        let chords: Vec<(usize, usize)> = indices
            .iter()
            .map(|&i| {
                let (a, b) = self.chords[i];
                (rank(a), rank(b))
            })
            .collect();
        let labels = self
            .labels
            .as_ref()
            .map(|l| indices.iter().map(|&i| l[i]).collect());
        // Relative chord order is preserved, so the result is canonical.
        ChordDiagram { chords, labels }
    }

    /// The dangling pair (d_l, d_r) of a root-component chord: the
    /// sub-diagrams in the gaps immediately right of its two endpoints.
    pub fn dangling_pair(
        &self,
        chord: usize,
    ) -> Result<(ChordDiagram, ChordDiagram), DiagramError> {
        if chord >= self.n() {
            return Err(DiagramError::Domain(format!(
                "chord index {chord} out of range"
            )));
        }
        let root_indices = self.root_component_indices()?;
        if !root_indices.contains(&chord) {
            return Err(DiagramError::NotRootComponent(chord));
        }
        let mut boundary: Vec<usize> = root_indices
            .iter()
            .flat_map(|&i| {
                let (a, b) = self.chords[i];
                [a, b]
            })
            .collect();
        boundary.sort_unstable();
        // Gap g holds the positions strictly between boundary[g-1] and the
        // next boundary endpoint; a non-root-component chord must keep both
        // endpoints in one gap.
        let gap_of = |p: usize| boundary.partition_point(|&b| b < p);
        let in_root = {
            let mut mask = vec![false; self.n()];
            for &i in &root_indices {
                mask[i] = true;
            }
            mask
        };
        let mut per_gap: Vec<Vec<usize>> = vec![Vec::new(); 2 * root_indices.len() + 1];
        for i in 0..self.n() {
            if in_root[i] {
                continue;
            }
            let (a, b) = self.chords[i];
            let (ga, gb) = (gap_of(a), gap_of(b));
            if ga != gb {
                return Err(DiagramError::Structure(format!(
                    "chord {a}-{b} spans root-component gaps {ga} and {gb}"
                )));
            }
            per_gap[ga].push(i);
        }
        let (a, b) = self.chords[chord];
        let gap_index = |p: usize| boundary.binary_search(&p).expect("endpoint in root") + 1;
        Ok((
            self.restrict(&per_gap[gap_index(a)]),
            self.restrict(&per_gap[gap_index(b)]),
        ))
    }

    /// Split the chords in `indices` into minimal consecutive blocks of the
    /// positions they occupy; each block is internally matched.
    fn factor_blocks(&self, indices: &[usize]) -> Vec<Vec<usize>> {
        let mut indices: Vec<usize> = indices.to_vec();
        indices.sort_unstable();
        let mut positions: Vec<(usize, usize)> = Vec::new();
        for &i in &indices {
            let (a, b) = self.chords[i];
            positions.push((a, i));
            positions.push((b, i));
        }
        positions.sort_unstable();
        let mut blocks = Vec::new();
        let mut current: Vec<usize> = Vec::new();
        let mut open = 0usize;
        let mut fringe: std::collections::HashSet<usize> = Default::default();
        for (p, i) in positions {
            let _ = p;
            if fringe.insert(i) {
                current.push(i);
                open += 1;
            } else {
                open -= 1;
            }
            if open == 0 {
                blocks.push(std::mem::take(&mut current));
                fringe.clear();
            }
        }
        blocks
    }

    /// The unique maximal factorization into nonempty indecomposable
    /// diagrams laid side by side. The empty diagram has no factors.
    pub fn concat_factorization(&self) -> Vec<ChordDiagram> {
        let all: Vec<usize> = (0..self.n()).collect();
        self.factor_blocks(&all)
            .iter()
            .map(|block| self.restrict(block))
            .collect()
    }

    pub fn is_indecomposable(&self) -> bool {
        self.concat_factorization().len() <= 1
    }

    /// Side-by-side concatenation; inverse of `concat_factorization`.
    /// Labels are kept only when every part carries them.
    pub fn concat(parts: &[ChordDiagram]) -> ChordDiagram {
        let mut chords = Vec::new();
        let mut labels: Option<Vec<u32>> = Some(Vec::new());
        let mut offset = 0usize;
        for part in parts {
            for (i, &(a, b)) in part.chords.iter().enumerate() {
                chords.push((a + offset, b + offset));
                match (labels.as_mut(), part.label_of(i)) {
                    (Some(ls), Some(l)) => ls.push(l),
                    _ => labels = None,
                }
            }
            offset += 2 * part.n();
        }
        let labels = labels.filter(|l| !l.is_empty());
        // Parts are laid out left to right, so the chord list stays sorted.
        ChordDiagram { chords, labels }
    }

    /// Remove the root chord of a nonempty indecomposable diagram (which
    /// must not be a single chord) and factor what remains. Returns the
    /// factors plus the interval of the last factor in which the removed
    /// root's right endpoint lay.
    pub fn root_removal_decomposition(
        &self,
    ) -> Result<(Vec<ChordDiagram>, usize), DiagramError> {
        if self.is_empty() {
            return Err(DiagramError::Domain("empty diagram".into()));
        }
        if !self.is_indecomposable() {
            return Err(DiagramError::Domain(
                "root removal needs an indecomposable diagram".into(),
            ));
        }
        if self.n() == 1 {
            return Err(DiagramError::Domain(
                "the single chord has no root-removal decomposition".into(),
            ));
        }
        let root_right = self.chords[0].1;
        let rest: Vec<usize> = (1..self.n()).collect();
        let blocks = self.factor_blocks(&rest);
        let last = blocks.last().expect("nonempty remainder");
        let marked = last
            .iter()
            .flat_map(|&i| {
                let (a, b) = self.chords[i];
                [a, b]
            })
            .filter(|&p| p < root_right)
            .count();
        if marked == 0 {
            return Err(DiagramError::Structure(
                "root right endpoint precedes the last factor".into(),
            ));
        }
        let factors = blocks.iter().map(|b| self.restrict(b)).collect();
        Ok((factors, marked))
    }

    /// Inverse of `root_removal_decomposition`: wrap a root chord around
    /// the factors, its right endpoint landing in `marked_interval` of the
    /// last factor. The factors must be nonempty and indecomposable. The
    /// result is unlabelled (the inserted root has no label to carry).
    pub fn root_removal_recompose(
        factors: &[ChordDiagram],
        marked_interval: usize,
    ) -> Result<ChordDiagram, DiagramError> {
        let last = factors
            .last()
            .ok_or_else(|| DiagramError::Domain("at least one factor required".into()))?;
        if factors.iter().any(|f| f.is_empty() || !f.is_indecomposable()) {
            return Err(DiagramError::Domain(
                "factors must be nonempty and indecomposable".into(),
            ));
        }
        if marked_interval == 0 || marked_interval > 2 * last.n() {
            return Err(DiagramError::Domain(format!(
                "marked interval {marked_interval} outside 1..={}",
                2 * last.n()
            )));
        }
        let body = ChordDiagram::concat(factors);
        let tail_start = 2 * (body.n() - last.n());
        let split = tail_start + marked_interval; // body positions ≤ split precede the root's right end
        let mut chords = vec![(1, split + 2)];
        for &(a, b) in &body.chords {
            let remap = |p: usize| if p <= split { p + 1 } else { p + 2 };
            chords.push((remap(a), remap(b)));
        }
        ChordDiagram::new(chords)
    }
}

impl fmt::Display for ChordDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for &(a, b) in &self.chords {
            if !first {
                f.write_str(",")?;
            }
            write!(f, "{a}-{b}")?;
            first = false;
        }
        Ok(())
    }
}

impl FromStr for ChordDiagram {
    type Err = DiagramError;
    fn from_str(s: &str) -> Result<Self, DiagramError> {
        ChordDiagram::parse(s)
    }
}

#[derive(Serialize, Deserialize)]
struct DiagramRepr {
    n: usize,
    chords: Vec<(usize, usize)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<u32>>,
}

impl Serialize for ChordDiagram {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        DiagramRepr {
            n: self.n(),
            chords: self.chords.clone(),
            labels: self.labels.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ChordDiagram {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = DiagramRepr::deserialize(deserializer)?;
        if repr.chords.len() != repr.n {
            return Err(D::Error::custom(format!(
                "n = {} does not match {} chords",
                repr.n,
                repr.chords.len()
            )));
        }
        let diagram = ChordDiagram::new(repr.chords).map_err(D::Error::custom)?;
        match repr.labels {
            Some(labels) => diagram.with_labels(labels).map_err(D::Error::custom),
            None => Ok(diagram),
        }
    }
}

/// Chords as vertices, crossings as edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionGraph {
    vertices: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl IntersectionGraph {
    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.edges
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.edges.contains(&(i.min(j), i.max(j)))
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut adjacency = vec![Vec::new(); self.vertices];
        for &(i, j) in &self.edges {
            adjacency[i].push(j);
            adjacency[j].push(i);
        }
        let mut assigned = vec![false; self.vertices];
        let mut components = Vec::new();
        for start in 0..self.vertices {
            if assigned[start] {
                continue;
            }
            let mut stack = vec![start];
            let mut component = Vec::new();
            assigned[start] = true;
            while let Some(v) = stack.pop() {
                component.push(v);
                for &w in &adjacency[v] {
                    if !assigned[w] {
                        assigned[w] = true;
                        stack.push(w);
                    }
                }
            }
            component.sort_unstable();
            components.push(component);
        }
        components
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(text: &str) -> ChordDiagram {
        ChordDiagram::parse(text).unwrap()
    }

    #[test]
    fn parse_basics() {
        assert_eq!(d(""), ChordDiagram::empty());
        assert_eq!(d("1-3,2-4").chords(), &[(1, 3), (2, 4)]);
        // normalization: orientation and order
        assert_eq!(d("4-2,3-1"), d("1-3,2-4"));
        assert_eq!(d("1-3,2-4").to_string(), "1-3,2-4");
    }

    #[test]
    fn parse_errors_name_the_token() {
        match ChordDiagram::parse("1-3,2+4").unwrap_err() {
            DiagramError::Parse { token, .. } => assert_eq!(token, "2+4"),
            other => panic!("unexpected {other:?}"),
        }
        match ChordDiagram::parse("1-2,2-3").unwrap_err() {
            DiagramError::Parse { reason, .. } => assert!(reason.contains("duplicate")),
            other => panic!("unexpected {other:?}"),
        }
        match ChordDiagram::parse("1-5,2-3").unwrap_err() {
            DiagramError::Parse { reason, .. } => assert!(reason.contains("outside")),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn crossing_pair_versus_nested_pair() {
        let crossing = d("1-3,2-4");
        assert!(crossing.crossing(0, 1));
        assert!(crossing.is_connected());
        let nested = d("1-4,2-3");
        assert!(!nested.crossing(0, 1));
        assert_eq!(nested.component_count(), 2);
    }

    #[test]
    fn triangle_intersection_graph() {
        // (1,4)-(2,6) cross, (2,6)-(3,5) cross, and (1,4)-(3,5) cross.
        let g = d("1-4,2-6,3-5").intersection_graph();
        assert!(g.has_edge(0, 1) && g.has_edge(1, 2) && g.has_edge(0, 2));
        assert_eq!(g.edges().len(), 3);
    }

    #[test]
    fn components_relabel_canonically() {
        assert!(ChordDiagram::empty().connected_components().is_empty());
        let nested = d("1-4,2-3");
        let parts = nested.connected_components();
        assert_eq!(parts, vec![ChordDiagram::single(), ChordDiagram::single()]);
        let connected = d("1-3,2-4");
        assert_eq!(connected.connected_components(), vec![connected.clone()]);
    }

    #[test]
    fn root_component_cases() {
        assert!(ChordDiagram::empty().root_component().is_err());
        let connected = d("1-3,2-4");
        assert_eq!(connected.root_component().unwrap(), connected);
        assert_eq!(
            d("1-2,3-6,4-5").root_component().unwrap(),
            ChordDiagram::single()
        );
        assert_eq!(
            d("1-4,2-3").root_component().unwrap(),
            ChordDiagram::single()
        );
    }

    #[test]
    fn dangling_pairs() {
        let connected = d("1-3,2-4");
        for chord in 0..2 {
            let (l, r) = connected.dangling_pair(chord).unwrap();
            assert!(l.is_empty() && r.is_empty());
        }
        let (l, r) = d("1-4,2-3").dangling_pair(0).unwrap();
        assert_eq!(l, ChordDiagram::single());
        assert!(r.is_empty());
        let (l, r) = d("1-2,3-4").dangling_pair(0).unwrap();
        assert!(l.is_empty());
        assert_eq!(r, ChordDiagram::single());
        assert_eq!(
            d("1-4,2-3").dangling_pair(1).unwrap_err(),
            DiagramError::NotRootComponent(1)
        );
    }

    #[test]
    fn dangling_carries_labels() {
        let labelled = d("1-4,2-3").with_labels(vec![7, 9]).unwrap();
        let (l, _) = labelled.dangling_pair(0).unwrap();
        assert_eq!(l.labels(), Some(&[9][..]));
    }

    #[test]
    fn factorization_cases() {
        assert!(ChordDiagram::empty().concat_factorization().is_empty());
        let crossing = d("1-3,2-4");
        assert_eq!(crossing.concat_factorization(), vec![crossing.clone()]);
        assert_eq!(
            d("1-2,3-4").concat_factorization(),
            vec![ChordDiagram::single(), ChordDiagram::single()]
        );
        // nested pair is indecomposable but disconnected
        assert!(d("1-4,2-3").is_indecomposable());
        assert!(!d("1-2,3-4").is_indecomposable());
    }

    #[test]
    fn concat_inverts_factorization() {
        for text in ["", "1-3,2-4", "1-2,3-4", "1-4,2-3,5-6", "1-2,3-6,4-5,7-8"] {
            let diagram = d(text);
            assert_eq!(
                ChordDiagram::concat(&diagram.concat_factorization()),
                diagram
            );
        }
    }

    #[test]
    fn root_removal_examples() {
        let (factors, marked) = d("1-3,2-4").root_removal_decomposition().unwrap();
        assert_eq!(factors, vec![ChordDiagram::single()]);
        assert_eq!(marked, 1);
        let (factors, marked) = d("1-4,2-3").root_removal_decomposition().unwrap();
        assert_eq!(factors, vec![ChordDiagram::single()]);
        assert_eq!(marked, 2);

        assert!(d("1-2,3-4").root_removal_decomposition().is_err());
        assert!(ChordDiagram::single().root_removal_decomposition().is_err());
        assert!(ChordDiagram::empty().root_removal_decomposition().is_err());
    }

    #[test]
    fn root_removal_round_trips() {
        for text in ["1-3,2-4", "1-4,2-3", "1-3,2-5,4-6", "1-6,2-3,4-5"] {
            let diagram = d(text);
            let (factors, marked) = diagram.root_removal_decomposition().unwrap();
            assert_eq!(
                ChordDiagram::root_removal_recompose(&factors, marked).unwrap(),
                diagram,
                "round trip failed for {text}"
            );
        }
    }

    #[test]
    fn recompose_rejects_bad_inputs() {
        assert!(ChordDiagram::root_removal_recompose(&[], 1).is_err());
        let decomposable = d("1-2,3-4");
        assert!(ChordDiagram::root_removal_recompose(&[decomposable], 1).is_err());
        let single = ChordDiagram::single();
        assert!(ChordDiagram::root_removal_recompose(&[single.clone()], 0).is_err());
        assert!(ChordDiagram::root_removal_recompose(&[single], 3).is_err());
    }

    #[test]
    fn labels_validate() {
        let diagram = d("1-3,2-4");
        assert!(diagram.clone().with_labels(vec![1]).is_err());
        assert!(diagram.clone().with_labels(vec![2, 2]).is_err());
        let labelled = diagram.with_labels(vec![5, 1]).unwrap();
        assert_eq!(labelled.label_of(1), Some(1));
    }

    #[test]
    fn json_format() {
        let labelled = d("1-3,2-4").with_labels(vec![5, 1]).unwrap();
        let json = serde_json::to_string(&labelled).unwrap();
        assert_eq!(json, r#"{"n":2,"chords":[[1,3],[2,4]],"labels":[5,1]}"#);
        let back: ChordDiagram = serde_json::from_str(&json).unwrap();
        assert_eq!(back, labelled);
        let plain = serde_json::to_string(&d("1-2")).unwrap();
        assert_eq!(plain, r#"{"n":1,"chords":[[1,2]]}"#);
        assert!(serde_json::from_str::<ChordDiagram>(r#"{"n":2,"chords":[[1,2]]}"#).is_err());
    }
}
