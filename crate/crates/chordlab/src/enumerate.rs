//! Exhaustive generators for the diagram classes: the ground truth behind
//! every counting and bijectivity claim.
//!
//! Generation always pairs the smallest free position with each larger free
//! position in increasing order, so the stream is deterministic and in
//! lexicographic order of the canonical chord list. Streams are lazy;
//! counting runs in constant memory.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;

use crate::bijection::PendingChord;
use crate::diagram::ChordDiagram;

/// The diagram classes named in the class catalog: D, C, C*, I, D_{≤2}, I_2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiagramClass {
    All,
    Connected,
    ConnectedNoSingle,
    Indecomposable,
    AtMostTwoComponents,
    IndecomposableTwoComponents,
}

impl DiagramClass {
    pub const ALL_CLASSES: [DiagramClass; 6] = [
        DiagramClass::All,
        DiagramClass::Connected,
        DiagramClass::ConnectedNoSingle,
        DiagramClass::Indecomposable,
        DiagramClass::AtMostTwoComponents,
        DiagramClass::IndecomposableTwoComponents,
    ];

    pub fn contains(&self, diagram: &ChordDiagram) -> bool {
        match self {
            DiagramClass::All => true,
            DiagramClass::Connected => diagram.is_connected(),
            DiagramClass::ConnectedNoSingle => diagram.n() >= 2 && diagram.is_connected(),
            DiagramClass::Indecomposable => diagram.is_indecomposable(),
            DiagramClass::AtMostTwoComponents => diagram.component_count() <= 2,
            DiagramClass::IndecomposableTwoComponents => {
                diagram.component_count() == 2 && diagram.is_indecomposable()
            }
        }
    }
}

impl FromStr for DiagramClass {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "all" | "D" => Ok(DiagramClass::All),
            "connected" | "C" => Ok(DiagramClass::Connected),
            "connectedNoSingle" | "connected-no-single" | "C*" => {
                Ok(DiagramClass::ConnectedNoSingle)
            }
            "indecomposable" | "I" => Ok(DiagramClass::Indecomposable),
            "atMostTwoComponents" | "at-most-two-components" | "Dle2" => {
                Ok(DiagramClass::AtMostTwoComponents)
            }
            "indecomposableTwoComponents" | "indecomposable-two-components" | "I2" => {
                Ok(DiagramClass::IndecomposableTwoComponents)
            }
            other => Err(format!("unknown diagram class `{other}`")),
        }
    }
}

impl fmt::Display for DiagramClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self {
            DiagramClass::All => "all",
            DiagramClass::Connected => "connected",
            DiagramClass::ConnectedNoSingle => "connectedNoSingle",
            DiagramClass::Indecomposable => "indecomposable",
            DiagramClass::AtMostTwoComponents => "atMostTwoComponents",
            DiagramClass::IndecomposableTwoComponents => "indecomposableTwoComponents",
        };
        f.write_str(tag)
    }
}

/// Streaming generator over all matchings of {1..2n}.
pub struct AllDiagrams {
    n: usize,
    // (left, partner) per depth; `used` is a bitmask over positions 1..=2n.
    stack: Vec<(usize, usize)>,
    used: u64,
    started: bool,
    done: bool,
}

impl AllDiagrams {
    fn new(n: usize) -> Self {
        assert!(n <= 31, "position bitmask holds at most 62 positions");
        AllDiagrams {
            n,
            stack: Vec::with_capacity(n),
            used: 0,
            started: false,
            done: false,
        }
    }

    fn smallest_free(&self) -> usize {
        (1..=2 * self.n)
            .find(|&p| self.used & (1 << p) == 0)
            .expect("free position exists")
    }

    fn next_free_after(&self, p: usize) -> Option<usize> {
        (p + 1..=2 * self.n).find(|&q| self.used & (1 << q) == 0)
    }

    /// Complete the partial matching by always taking the smallest free
    /// partner; a full matching always exists from any partial state.
    fn descend(&mut self) {
        while self.stack.len() < self.n {
            let left = self.smallest_free();
            self.used |= 1 << left;
            let partner = self.next_free_after(left).expect("even free count");
            self.used |= 1 << partner;
            self.stack.push((left, partner));
        }
    }

    fn emit(&self) -> ChordDiagram {
        ChordDiagram::new(self.stack.clone()).expect("generated matching is valid")
    }
}

impl Iterator for AllDiagrams {
    type Item = ChordDiagram;

    fn next(&mut self) -> Option<ChordDiagram> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            self.descend();
            return Some(self.emit());
        }
        // Backtrack: advance the deepest frame with a larger partner.
        while let Some((left, partner)) = self.stack.pop() {
            self.used &= !(1 << partner);
            if let Some(next) = self.next_free_after(partner) {
                self.used |= 1 << next;
                self.stack.push((left, next));
                self.descend();
                return Some(self.emit());
            }
            self.used &= !(1 << left);
        }
        self.done = true;
        None
    }
}

/// Every rooted chord diagram on n chords, (2n−1)!! of them, each exactly
/// once.
pub fn all_diagrams(n: usize) -> AllDiagrams {
    AllDiagrams::new(n)
}

/// The members of a class at size n, in generation order.
pub fn filter_class(class: DiagramClass, n: usize) -> impl Iterator<Item = ChordDiagram> {
    all_diagrams(n).filter(move |d| class.contains(d))
}

/// Streaming count of a class at size n.
pub fn count_class(class: DiagramClass, n: usize) -> u64 {
    filter_class(class, n).count() as u64
}

/// Every labelled pending chord of total size n: a marked chord plus an
/// ordered pair of dangling diagrams holding the other n−1 chords, under
/// every assignment of the labels {1..n}. There are n!·[x^n](x·D²) of them.
pub fn all_pending(n: usize) -> impl Iterator<Item = PendingChord> {
    assert!(n >= 1, "pending chords have at least the marked chord");
    (0..n).flat_map(move |left_size| {
        all_diagrams(left_size).flat_map(move |left| {
            all_diagrams(n - 1 - left_size).flat_map(move |right| {
                let left = left.clone();
                (1..=n as u32).permutations(n).map(move |labels| {
                    let with = |d: &ChordDiagram, slice: &[u32]| {
                        d.clone()
                            .with_labels(slice.to_vec())
                            .expect("permutation labels are distinct")
                    };
                    PendingChord {
                        label: labels[0],
                        left: with(&left, &labels[1..=left_size]),
                        right: with(&right, &labels[1 + left_size..]),
                    }
                })
            })
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn stream_counts_are_double_factorials() {
        let expect = [1u64, 1, 3, 15, 105, 945, 10395];
        for (n, &total) in expect.iter().enumerate() {
            assert_eq!(all_diagrams(n).count() as u64, total, "n = {n}");
        }
    }

    #[test]
    fn stream_is_duplicate_free_and_sorted() {
        for n in 0..=5 {
            let rendered: Vec<String> =
                all_diagrams(n).map(|d| format!("{d}")).collect();
            let distinct: HashSet<&String> = rendered.iter().collect();
            assert_eq!(distinct.len(), rendered.len());
            let chord_lists: Vec<Vec<(usize, usize)>> =
                all_diagrams(n).map(|d| d.chords().to_vec()).collect();
            let mut sorted = chord_lists.clone();
            sorted.sort();
            assert_eq!(chord_lists, sorted);
        }
    }

    #[test]
    fn class_counts_match_printed_values() {
        assert_eq!(count_class(DiagramClass::Connected, 3), 4);
        assert_eq!(count_class(DiagramClass::Indecomposable, 4), 74);
        assert_eq!(count_class(DiagramClass::IndecomposableTwoComponents, 3), 4);
        assert_eq!(count_class(DiagramClass::AtMostTwoComponents, 3), 10);
        assert_eq!(count_class(DiagramClass::AtMostTwoComponents, 4), 63);
        assert_eq!(count_class(DiagramClass::All, 5), 945);
        assert_eq!(count_class(DiagramClass::ConnectedNoSingle, 1), 0);
    }

    #[test]
    fn pending_counts() {
        assert_eq!(all_pending(1).count(), 1);
        assert_eq!(all_pending(3).count(), 42);
        assert_eq!(all_pending(4).count(), 864);
    }

    #[test]
    fn pending_objects_are_distinct_and_well_labelled() {
        let all: Vec<PendingChord> = all_pending(3).collect();
        let distinct: HashSet<String> =
            all.iter().map(|p| format!("{p:?}")).collect();
        assert_eq!(distinct.len(), all.len());
        for p in &all {
            let mut labels = p.all_labels();
            labels.sort_unstable();
            assert_eq!(labels, vec![1, 2, 3]);
        }
    }

    #[test]
    fn class_tags_round_trip() {
        for class in DiagramClass::ALL_CLASSES {
            assert_eq!(class.to_string().parse::<DiagramClass>().unwrap(), class);
        }
        assert!("nonsense".parse::<DiagramClass>().is_err());
    }
}
