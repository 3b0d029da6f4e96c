//! The two executable bijections: Φ between connected diagrams on at least
//! two chords and indecomposable diagrams with exactly two components, and
//! Θ between labelled pending chords and rooted trees whose vertices are
//! stacks of labelled nodes carrying a ≤2-component diagram structure over
//! their children.
//!
//! Both maps are pure functions over immutable values and both inverses are
//! implemented; exhaustive round-trip tests certify them.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::{ChordDiagram, DiagramError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BijectionError {
    /// Input outside the map's stated domain.
    #[error("domain error: {0}")]
    Domain(String),
    /// Missing or colliding chord labels.
    #[error("label error: {0}")]
    Label(String),
    /// A tree that violates the four-case taxonomy or the vertex invariants.
    #[error("malformed tree: {0}")]
    MalformedTree(String),
    /// A structural failure surfaced by a diagram operation.
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

/// A marked chord with its ordered pair of dangling diagrams; the queue
/// entry of the tree-building algorithm. Labels across the whole object
/// (the marked chord plus every chord inside) must be distinct.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PendingChord {
    pub label: u32,
    #[serde(rename = "dl")]
    pub left: ChordDiagram,
    #[serde(rename = "dr")]
    pub right: ChordDiagram,
}

impl PendingChord {
    /// Total chord count: the marked chord plus both dangling diagrams.
    pub fn size(&self) -> usize {
        1 + self.left.n() + self.right.n()
    }

    /// All labels in presentation order; chords without labels are skipped.
    pub fn all_labels(&self) -> Vec<u32> {
        let mut labels = vec![self.label];
        for side in [&self.left, &self.right] {
            if let Some(ls) = side.labels() {
                labels.extend_from_slice(ls);
            }
        }
        labels
    }

    /// Check the object invariant: every chord labelled, labels distinct.
    pub fn validate(&self) -> Result<(), BijectionError> {
        for side in [&self.left, &self.right] {
            if !side.is_empty() && side.labels().is_none() {
                return Err(BijectionError::Label(
                    "dangling diagram is missing chord labels".into(),
                ));
            }
        }
        let labels = self.all_labels();
        let mut seen = HashSet::new();
        for label in labels {
            if !seen.insert(label) {
                return Err(BijectionError::Label(format!("duplicate label {label}")));
            }
        }
        Ok(())
    }
}

/// A rooted tree whose vertices are nonempty stacks of labelled nodes,
/// with a labelled ≤2-component diagram over each vertex's children. The
/// child-to-chord correspondence is by label equality: the structure's
/// label set equals the children's top-node labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ZTree {
    pub stack: Vec<u32>,
    pub structure: ChordDiagram,
    pub children: Vec<ZTree>,
}

impl ZTree {
    /// One-node leaf vertex.
    pub fn leaf(label: u32) -> Self {
        ZTree {
            stack: vec![label],
            structure: ChordDiagram::empty(),
            children: Vec::new(),
        }
    }

    /// Total node count across all stacks.
    pub fn node_count(&self) -> usize {
        self.stack.len() + self.children.iter().map(ZTree::node_count).sum::<usize>()
    }
}

/// The root share decomposition of a connected diagram with at least two
/// chords: `first_component` is the first connected component after root
/// removal, `root_part` is the rest (still containing the root), and
/// `interval` locates the original root's right endpoint among the first
/// component's intervals, never its last.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootShare {
    pub interval: usize,
    pub root_part: ChordDiagram,
    pub first_component: ChordDiagram,
}

pub fn root_share(diagram: &ChordDiagram) -> Result<RootShare, BijectionError> {
    if diagram.n() < 2 || !diagram.is_connected() {
        return Err(BijectionError::Domain(
            "root share needs a connected diagram with at least two chords".into(),
        ));
    }
    let root_right = diagram.chords()[0].1;
    let rest: Vec<usize> = (1..diagram.n()).collect();
    // restrict preserves chord order, so component j of the restriction
    // holds the original indices shifted by one.
    let components = diagram.restrict(&rest).component_indices();
    let first: Vec<usize> = components[0].iter().map(|&i| i + 1).collect();
    let first_set: HashSet<usize> = first.iter().copied().collect();
    let remainder: Vec<usize> = (0..diagram.n()).filter(|i| !first_set.contains(i)).collect();
    let interval = first
        .iter()
        .flat_map(|&i| {
            let (a, b) = diagram.chords()[i];
            [a, b]
        })
        .filter(|&p| p < root_right)
        .count();
    Ok(RootShare {
        interval,
        root_part: diagram.restrict(&remainder),
        first_component: diagram.restrict(&first),
    })
}

/// Inverse of `root_share`: lay the root part as a block inside the given
/// interval of the first component, then pull its root's left end to the
/// front.
pub fn root_share_recompose(share: &RootShare) -> Result<ChordDiagram, BijectionError> {
    let outer = &share.first_component;
    if outer.is_empty() || share.root_part.is_empty() {
        return Err(BijectionError::Domain(
            "root share parts must be nonempty".into(),
        ));
    }
    if share.interval == 0 || share.interval >= 2 * outer.n() {
        return Err(BijectionError::Domain(format!(
            "root share interval {} outside 1..={}",
            share.interval,
            2 * outer.n() - 1
        )));
    }
    let merged = insert_block(outer, &share.root_part, share.interval);
    Ok(pull_to_front(&merged, share.interval + 1))
}

/// Φ: place the whole root part of the root share decomposition as one
/// contiguous block at the interval of the first component where the
/// original root's right end lay. The image is indecomposable with exactly
/// two components.
pub fn phi(diagram: &ChordDiagram) -> Result<ChordDiagram, BijectionError> {
    let share = root_share(diagram)?;
    Ok(insert_block(
        &share.first_component,
        &share.root_part,
        share.interval,
    ))
}

/// Φ⁻¹: the outer component is the one holding position 1, the inner one
/// sits contiguously inside it; pull the inner root's first end to the
/// leftmost position.
pub fn phi_inv(image: &ChordDiagram) -> Result<ChordDiagram, BijectionError> {
    let components = image.component_indices();
    if components.len() != 2 {
        return Err(BijectionError::Domain(format!(
            "expected exactly two components, found {}",
            components.len()
        )));
    }
    if !image.is_indecomposable() {
        return Err(BijectionError::Domain(
            "expected an indecomposable diagram".into(),
        ));
    }
    // Components are ordered by first endpoint, so the second is the inner
    // one. Its positions must be contiguous; report any counterexample
    // rather than guessing.
    let positions: Vec<usize> = components[1]
        .iter()
        .flat_map(|&i| {
            let (a, b) = image.chords()[i];
            [a, b]
        })
        .collect();
    let lo = *positions.iter().min().expect("nonempty component");
    let hi = *positions.iter().max().expect("nonempty component");
    if hi - lo + 1 != positions.len() {
        return Err(BijectionError::Domain(format!(
            "inner component of {image} is not contiguous"
        )));
    }
    Ok(pull_to_front(image, lo))
}

/// Insert `inner` as a contiguous block into the given interval of
/// `outer` (the space right of outer's interval-th endpoint).
fn insert_block(outer: &ChordDiagram, inner: &ChordDiagram, interval: usize) -> ChordDiagram {
    let shift = 2 * inner.n();
    let mut parts = Vec::with_capacity(outer.n() + inner.n());
    for (i, &(a, b)) in outer.chords().iter().enumerate() {
        let remap = |p: usize| if p <= interval { p } else { p + shift };
        parts.push(((remap(a), remap(b)), outer.label_of(i)));
    }
    for (i, &(a, b)) in inner.chords().iter().enumerate() {
        parts.push(((a + interval, b + interval), inner.label_of(i)));
    }
    ChordDiagram::from_parts(parts).expect("block insertion keeps a valid matching")
}

/// Move the endpoint at `position` to the front, shifting earlier
/// positions right by one.
fn pull_to_front(diagram: &ChordDiagram, position: usize) -> ChordDiagram {
    let remap = |p: usize| {
        if p == position {
            1
        } else if p < position {
            p + 1
        } else {
            p
        }
    };
    let parts = diagram
        .chords()
        .iter()
        .enumerate()
        .map(|(i, &(a, b))| ((remap(a), remap(b)), diagram.label_of(i)))
        .collect();
    ChordDiagram::from_parts(parts).expect("repositioning keeps a valid matching")
}

/// Which branch of the queue algorithm an iteration took.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThetaCase {
    /// Both dangling diagrams empty: pop.
    BothEmpty,
    /// Only the right dangling diagram nonempty.
    RightOnly,
    /// Both dangling diagrams nonempty.
    BothSides,
    /// Right empty, left's root component a single chord: absorb a node.
    AbsorbSingle,
    /// Right empty, left's root component larger: children under Φ.
    LeftOnly,
}

impl fmt::Display for ThetaCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self {
            ThetaCase::BothEmpty => "2",
            ThetaCase::RightOnly => "3",
            ThetaCase::BothSides => "4",
            ThetaCase::AbsorbSingle => "5a",
            ThetaCase::LeftOnly => "5b",
        };
        f.write_str(tag)
    }
}

/// One line of the Θ trace: queue length when the entry was processed
/// (including the entry itself), the case taken, and the chord label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub iteration: usize,
    pub queue_len: usize,
    pub case: ThetaCase,
    pub vertex: u32,
}

impl fmt::Display for TraceStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "iter={} queue={} case={} vertex={}",
            self.iteration, self.queue_len, self.case, self.vertex
        )
    }
}

struct VertexData {
    stack: Vec<u32>,
    children: Vec<usize>,
    structure: ChordDiagram,
}

/// Θ: run the queue algorithm on a labelled pending chord.
pub fn theta(pending: &PendingChord) -> Result<ZTree, BijectionError> {
    theta_traced(pending).map(|(tree, _)| tree)
}

/// Θ with per-iteration trace, for reproducing worked examples.
pub fn theta_traced(
    pending: &PendingChord,
) -> Result<(ZTree, Vec<TraceStep>), BijectionError> {
    pending.validate()?;
    let mut arena = vec![VertexData {
        stack: vec![pending.label],
        children: Vec::new(),
        structure: ChordDiagram::empty(),
    }];
    let mut registry: HashMap<u32, usize> = HashMap::from([(pending.label, 0)]);
    let mut queue: VecDeque<(u32, ChordDiagram, ChordDiagram)> = VecDeque::new();
    queue.push_back((pending.label, pending.left.clone(), pending.right.clone()));
    let mut trace = Vec::new();
    let mut iteration = 0usize;

    while let Some((label, d_left, d_right)) = queue.pop_front() {
        iteration += 1;
        let queue_len = queue.len() + 1;
        let vertex = registry[&label];
        let case = match (d_left.is_empty(), d_right.is_empty()) {
            (true, true) => ThetaCase::BothEmpty,
            (true, false) => {
                let rc = spawn_children(&mut arena, &mut registry, &mut queue, vertex, &d_right)?;
                arena[vertex].structure = rc;
                ThetaCase::RightOnly
            }
            (false, false) => {
                let rc_left =
                    spawn_children(&mut arena, &mut registry, &mut queue, vertex, &d_left)?;
                let rc_right =
                    spawn_children(&mut arena, &mut registry, &mut queue, vertex, &d_right)?;
                arena[vertex].structure = ChordDiagram::concat(&[rc_left, rc_right]);
                ThetaCase::BothSides
            }
            (false, true) => {
                let rc_indices = d_left.root_component_indices()?;
                if rc_indices.len() == 1 {
                    let chord = rc_indices[0];
                    let absorbed = require_label(&d_left, chord)?;
                    let (dl, dr) = d_left.dangling_pair(chord)?;
                    arena[vertex].stack.push(absorbed);
                    if registry.insert(absorbed, vertex).is_some() {
                        return Err(BijectionError::Label(format!(
                            "duplicate label {absorbed}"
                        )));
                    }
                    queue.push_back((absorbed, dl, dr));
                    ThetaCase::AbsorbSingle
                } else {
                    let rc =
                        spawn_children(&mut arena, &mut registry, &mut queue, vertex, &d_left)?;
                    arena[vertex].structure = phi(&rc)?;
                    ThetaCase::LeftOnly
                }
            }
        };
        trace.push(TraceStep {
            iteration,
            queue_len,
            case,
            vertex: label,
        });
    }
    Ok((build_tree(&arena, 0), trace))
}

fn require_label(diagram: &ChordDiagram, chord: usize) -> Result<u32, BijectionError> {
    diagram
        .label_of(chord)
        .ok_or_else(|| BijectionError::Label("chord is missing a label".into()))
}

/// Create one child vertex per root-component chord of `host`, enqueue
/// each chord with its dangling pair, and return the root component.
fn spawn_children(
    arena: &mut Vec<VertexData>,
    registry: &mut HashMap<u32, usize>,
    queue: &mut VecDeque<(u32, ChordDiagram, ChordDiagram)>,
    parent: usize,
    host: &ChordDiagram,
) -> Result<ChordDiagram, BijectionError> {
    let rc_indices = host.root_component_indices()?;
    for &chord in &rc_indices {
        let label = require_label(host, chord)?;
        let id = arena.len();
        arena.push(VertexData {
            stack: vec![label],
            children: Vec::new(),
            structure: ChordDiagram::empty(),
        });
        if registry.insert(label, id).is_some() {
            return Err(BijectionError::Label(format!("duplicate label {label}")));
        }
        arena[parent].children.push(id);
        let (dl, dr) = host.dangling_pair(chord)?;
        queue.push_back((label, dl, dr));
    }
    Ok(host.restrict(&rc_indices))
}

fn build_tree(arena: &[VertexData], id: usize) -> ZTree {
    ZTree {
        stack: arena[id].stack.clone(),
        structure: arena[id].structure.clone(),
        children: arena[id]
            .children
            .iter()
            .map(|&child| build_tree(arena, child))
            .collect(),
    }
}

/// Θ⁻¹: classify each vertex's child structure under the four-case
/// taxonomy and reassemble the dangling diagrams bottom-up.
pub fn theta_inv(tree: &ZTree) -> Result<PendingChord, BijectionError> {
    let (label, left, right) = reconstruct(tree)?;
    let pending = PendingChord { label, left, right };
    pending.validate()?;
    Ok(pending)
}

fn reconstruct(tree: &ZTree) -> Result<(u32, ChordDiagram, ChordDiagram), BijectionError> {
    if tree.stack.is_empty() {
        return Err(BijectionError::MalformedTree("empty vertex stack".into()));
    }
    let mut danglers: HashMap<u32, (ChordDiagram, ChordDiagram)> = HashMap::new();
    for child in &tree.children {
        let (label, dl, dr) = reconstruct(child)?;
        if danglers.insert(label, (dl, dr)).is_some() {
            return Err(BijectionError::MalformedTree(format!(
                "duplicate child label {label}"
            )));
        }
    }
    // The deepest node of the stack owns the children.
    let (mut left, mut right) = if tree.children.is_empty() {
        if !tree.structure.is_empty() {
            return Err(BijectionError::MalformedTree(
                "leaf vertex carries a nonempty child structure".into(),
            ));
        }
        (ChordDiagram::empty(), ChordDiagram::empty())
    } else {
        let structure = &tree.structure;
        if structure.n() != tree.children.len() {
            return Err(BijectionError::MalformedTree(format!(
                "structure has {} chords for {} children",
                structure.n(),
                tree.children.len()
            )));
        }
        match structure.component_count() {
            1 => (ChordDiagram::empty(), assemble(structure, &danglers)?),
            2 => {
                let factors = structure.concat_factorization();
                if factors.len() == 2 {
                    // Concatenation of two connected components: both
                    // danglers were nonempty, left component first.
                    (
                        assemble(&factors[0], &danglers)?,
                        assemble(&factors[1], &danglers)?,
                    )
                } else {
                    // Indecomposable with two components: only the left
                    // dangler was nonempty, its root component under Φ.
                    let preimage = phi_inv(structure).map_err(|e| {
                        BijectionError::MalformedTree(format!(
                            "two-component structure outside the Φ image: {e}"
                        ))
                    })?;
                    (assemble(&preimage, &danglers)?, ChordDiagram::empty())
                }
            }
            k => {
                return Err(BijectionError::MalformedTree(format!(
                    "structure has {k} components"
                )))
            }
        }
    };
    // Unwind absorptions: each node above the deepest had a left dangling
    // diagram whose root component is the single chord right below it.
    for idx in (1..tree.stack.len()).rev() {
        let node = tree.stack[idx];
        left = embed_single(node, &left, &right)?;
        right = ChordDiagram::empty();
    }
    Ok((tree.stack[0], left, right))
}

/// The diagram whose root component is one labelled chord with the given
/// dangling pair.
fn embed_single(
    label: u32,
    left: &ChordDiagram,
    right: &ChordDiagram,
) -> Result<ChordDiagram, BijectionError> {
    let chord = ChordDiagram::single()
        .with_labels(vec![label])
        .expect("one label for one chord");
    let mut danglers = HashMap::new();
    danglers.insert(label, (left.clone(), right.clone()));
    assemble(&chord, &danglers)
}

/// Rebuild a diagram from its root component and the dangling pair of each
/// root-component chord, matched by label.
fn assemble(
    root_component: &ChordDiagram,
    danglers: &HashMap<u32, (ChordDiagram, ChordDiagram)>,
) -> Result<ChordDiagram, BijectionError> {
    let k = root_component.n();
    let mut gaps: Vec<Option<&ChordDiagram>> = vec![None; 2 * k + 1];
    for i in 0..k {
        let label = root_component.label_of(i).ok_or_else(|| {
            BijectionError::MalformedTree("structure chord is missing a label".into())
        })?;
        let (dl, dr) = danglers.get(&label).ok_or_else(|| {
            BijectionError::MalformedTree(format!("no child with top label {label}"))
        })?;
        let (a, b) = root_component.chords()[i];
        gaps[a] = Some(dl);
        gaps[b] = Some(dr);
    }
    let mut parts = Vec::new();
    let mut position_of = vec![0usize; 2 * k + 1];
    let mut global = 0usize;
    for p in 1..=2 * k {
        global += 1;
        position_of[p] = global;
        if let Some(gap) = gaps[p] {
            for (i, &(a, b)) in gap.chords().iter().enumerate() {
                parts.push(((a + global, b + global), gap.label_of(i)));
            }
            global += 2 * gap.n();
        }
    }
    for (i, &(a, b)) in root_component.chords().iter().enumerate() {
        parts.push((
            (position_of[a], position_of[b]),
            root_component.label_of(i),
        ));
    }
    ChordDiagram::from_parts(parts)
        .map_err(|e| BijectionError::MalformedTree(e.to_string()))
}

/// Check every ZTree invariant: nonempty stacks, globally distinct labels,
/// and per vertex a ≤2-component labelled structure whose chord count and
/// label set match the children's top nodes.
pub fn validate_ztree(tree: &ZTree) -> Result<(), BijectionError> {
    let mut seen = HashSet::new();
    validate_vertex(tree, &mut seen)
}

fn validate_vertex(tree: &ZTree, seen: &mut HashSet<u32>) -> Result<(), BijectionError> {
    if tree.stack.is_empty() {
        return Err(BijectionError::MalformedTree("empty vertex stack".into()));
    }
    for &label in &tree.stack {
        if !seen.insert(label) {
            return Err(BijectionError::MalformedTree(format!(
                "duplicate label {label}"
            )));
        }
    }
    if tree.children.is_empty() {
        if !tree.structure.is_empty() {
            return Err(BijectionError::MalformedTree(
                "leaf vertex carries a nonempty child structure".into(),
            ));
        }
    } else {
        if tree.structure.n() != tree.children.len() {
            return Err(BijectionError::MalformedTree(format!(
                "structure has {} chords for {} children",
                tree.structure.n(),
                tree.children.len()
            )));
        }
        let structure_labels: BTreeSet<u32> = tree
            .structure
            .labels()
            .ok_or_else(|| {
                BijectionError::MalformedTree("child structure is missing labels".into())
            })?
            .iter()
            .copied()
            .collect();
        let top_labels: BTreeSet<u32> = tree
            .children
            .iter()
            .map(|c| {
                c.stack.first().copied().ok_or_else(|| {
                    BijectionError::MalformedTree("empty vertex stack".into())
                })
            })
            .collect::<Result<_, _>>()?;
        if structure_labels != top_labels {
            return Err(BijectionError::MalformedTree(
                "structure labels differ from the children's top labels".into(),
            ));
        }
        if tree.structure.component_count() > 2 {
            return Err(BijectionError::MalformedTree(
                "child structure has more than two components".into(),
            ));
        }
    }
    for child in &tree.children {
        validate_vertex(child, seen)?;
    }
    Ok(())
}
