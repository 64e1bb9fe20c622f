//! Comparator networks: construction, evaluation, decomposition and rendering.
//!
//! Wires and levels are 1-based throughout, matching the usual notation for
//! Knuth diagrams. Level 0 denotes the network input; a network of depth `d`
//! has wire values at levels `0..=d`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NetworkError {
    #[error("comparator ({lo}, {hi}, {level}) must satisfy 1 <= lo < hi")]
    BadWires { lo: usize, hi: usize, level: usize },
    #[error("comparator ({lo}, {hi}, {level}) lies outside width {width} and depth {depth}")]
    OutOfRange {
        lo: usize,
        hi: usize,
        level: usize,
        width: usize,
        depth: usize,
    },
    #[error("comparators {0} and {1} share a wire on the same level")]
    Incompatible(Comparator, Comparator),
    #[error("input has length {got}, network width is {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("confined network: {0}")]
    BadConfinement(String),
    #[error("decomposition: {0}")]
    BadDecomposition(String),
    #[error("annotation at wire {wire} level {level} is outside the network")]
    AnnotationOutOfRange { wire: usize, level: usize },
}

/// A compare-exchange between wires `lo < hi` at `level`. After the layer the
/// smaller value sits on `lo` and the larger on `hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Comparator {
    pub lo: usize,
    pub hi: usize,
    pub level: usize,
}

impl Comparator {
    pub fn new(lo: usize, hi: usize, level: usize) -> Result<Self, NetworkError> {
        if lo == 0 || lo >= hi || level == 0 {
            return Err(NetworkError::BadWires { lo, hi, level });
        }
        Ok(Comparator { lo, hi, level })
    }

    pub fn touches(&self, wire: usize) -> bool {
        self.lo == wire || self.hi == wire
    }

    /// Two comparators are compatible when their wire sets are disjoint or
    /// their levels differ.
    pub fn compatible(&self, other: &Comparator) -> bool {
        self.level != other.level
            || (self.lo != other.lo && self.lo != other.hi && self.hi != other.lo && self.hi != other.hi)
    }
}

impl fmt::Display for Comparator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.lo, self.hi, self.level)
    }
}

/// A validated comparator network. Comparators are kept sorted by
/// `(level, lo, hi)`; the declared depth may exceed the highest used level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Network {
    width: usize,
    depth: usize,
    comparators: Vec<Comparator>,
}

impl Network {
    pub fn new(
        width: usize,
        depth: usize,
        comparators: impl IntoIterator<Item = Comparator>,
    ) -> Result<Self, NetworkError> {
        let mut sorted: Vec<Comparator> = comparators.into_iter().collect();
        sorted.sort_by_key(|c| (c.level, c.lo, c.hi));
        sorted.dedup();
        for c in &sorted {
            if c.lo == 0 || c.lo >= c.hi || c.level == 0 {
                return Err(NetworkError::BadWires {
                    lo: c.lo,
                    hi: c.hi,
                    level: c.level,
                });
            }
            if c.hi > width || c.level > depth {
                return Err(NetworkError::OutOfRange {
                    lo: c.lo,
                    hi: c.hi,
                    level: c.level,
                    width,
                    depth,
                });
            }
        }
        // sorted by level, so incompatible pairs are within one run
        let mut start = 0;
        while start < sorted.len() {
            let level = sorted[start].level;
            let end = start + sorted[start..].iter().take_while(|c| c.level == level).count();
            let mut seen: BTreeMap<usize, Comparator> = BTreeMap::new();
            for c in &sorted[start..end] {
                for w in [c.lo, c.hi] {
                    if let Some(prev) = seen.insert(w, *c) {
                        return Err(NetworkError::Incompatible(prev, *c));
                    }
                }
            }
            start = end;
        }
        Ok(Network {
            width,
            depth,
            comparators: sorted,
        })
    }

    /// Convenience constructor from `(lo, hi, level)` triples.
    pub fn from_triples(width: usize, depth: usize, triples: &[(usize, usize, usize)]) -> Result<Self, NetworkError> {
        let comparators = triples
            .iter()
            .map(|&(lo, hi, level)| Comparator::new(lo, hi, level))
            .collect::<Result<Vec<_>, _>>()?;
        Network::new(width, depth, comparators)
    }

    pub fn empty(width: usize) -> Self {
        Network {
            width,
            depth: 0,
            comparators: Vec::new(),
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn size(&self) -> usize {
        self.comparators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.comparators.is_empty()
    }

    pub fn comparators(&self) -> &[Comparator] {
        &self.comparators
    }

    /// The comparators at one level.
    pub fn layer(&self, level: usize) -> &[Comparator] {
        let start = self.comparators.partition_point(|c| c.level < level);
        let end = self.comparators.partition_point(|c| c.level <= level);
        &self.comparators[start..end]
    }

    /// Wire values at every level for the given input.
    pub fn apply<T: Ord + Clone>(&self, input: &[T]) -> Result<WireValues<T>, NetworkError> {
        self.check_len(input.len())?;
        let mut columns = Vec::with_capacity(self.depth + 1);
        columns.push(input.to_vec());
        for level in 1..=self.depth {
            let mut next = columns[level - 1].clone();
            for c in self.layer(level) {
                if next[c.lo - 1] > next[c.hi - 1] {
                    next.swap(c.lo - 1, c.hi - 1);
                }
            }
            columns.push(next);
        }
        Ok(WireValues { columns })
    }

    /// Output column only.
    pub fn output<T: Ord + Clone>(&self, input: &[T]) -> Result<Vec<T>, NetworkError> {
        self.check_len(input.len())?;
        let mut values = input.to_vec();
        for c in &self.comparators {
            if values[c.lo - 1] > values[c.hi - 1] {
                values.swap(c.lo - 1, c.hi - 1);
            }
        }
        Ok(values)
    }

    /// The permutation `sigma` (1-based, `sigma[i - 1] = sigma(i)`) with
    /// `input[i] == output[sigma(i)]`. Equal values keep their relative order,
    /// since a comparator only swaps strictly out-of-order pairs.
    pub fn permutation_of<T: Ord + Clone>(&self, input: &[T]) -> Result<Vec<usize>, NetworkError> {
        self.check_len(input.len())?;
        // track which input index currently sits on each wire
        let mut values = input.to_vec();
        let mut origin: Vec<usize> = (0..input.len()).collect();
        for c in &self.comparators {
            let (a, b) = (c.lo - 1, c.hi - 1);
            if values[a] > values[b] {
                values.swap(a, b);
                origin.swap(a, b);
            }
        }
        let mut sigma = vec![0; input.len()];
        for (wire, &from) in origin.iter().enumerate() {
            sigma[from] = wire + 1;
        }
        Ok(sigma)
    }

    /// Keep only comparators at levels `<= max_depth`.
    pub fn limit_depth(&self, max_depth: usize) -> Network {
        Network {
            width: self.width,
            depth: self.depth.min(max_depth),
            comparators: self
                .comparators
                .iter()
                .copied()
                .filter(|c| c.level <= max_depth)
                .collect(),
        }
    }

    /// True iff every binary input leaves the network sorted. Exhaustive, so
    /// only sensible for small widths.
    pub fn sorts_all_binary_inputs(&self) -> bool {
        assert!(self.width < 32, "exhaustive zero-one check needs width < 32");
        let n = self.width;
        (0u32..(1u32 << n)).all(|mask| {
            let input: Vec<u8> = (0..n).map(|i| ((mask >> i) & 1) as u8).collect();
            let out = self.output(&input).expect("width checked");
            out.windows(2).all(|w| w[0] <= w[1])
        })
    }

    fn check_len(&self, got: usize) -> Result<(), NetworkError> {
        if got != self.width {
            return Err(NetworkError::LengthMismatch {
                expected: self.width,
                got,
            });
        }
        Ok(())
    }
}

/// Batcher's odd-even merge sorter on `n` wires.
///
/// The network is built for the next power of two and comparators that touch
/// wires above `n` are dropped; those phantom wires would carry `+inf` and
/// never move. Each `(p, k)` round of the iterative formulation is one layer.
pub fn oe_sorter(n: usize) -> Network {
    if n <= 1 {
        return Network::empty(n);
    }
    let padded = n.next_power_of_two();
    let mut comparators = Vec::new();
    let mut level = 0;
    let mut p = 1;
    while p < padded {
        let mut k = p;
        while k >= 1 {
            level += 1;
            let mut j = k % p;
            while j + k < padded {
                for i in 0..k.min(padded - j - k) {
                    let (a, b) = (i + j, i + j + k);
                    if a / (2 * p) == b / (2 * p) && b < n {
                        comparators.push(Comparator {
                            lo: a + 1,
                            hi: b + 1,
                            level,
                        });
                    }
                }
                j += 2 * k;
            }
            k /= 2;
        }
        p *= 2;
    }
    let depth = comparators.iter().map(|c| c.level).max().unwrap_or(0);
    Network::new(n, depth, comparators).expect("odd-even construction yields a valid network")
}

/// Wire values `x[i][l]` stored column by column (one column per level).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WireValues<T> {
    columns: Vec<Vec<T>>,
}

impl<T> WireValues<T> {
    pub fn columns(&self) -> &[Vec<T>] {
        &self.columns
    }

    pub fn column(&self, level: usize) -> &[T] {
        &self.columns[level]
    }

    pub fn output(&self) -> &[T] {
        self.columns.last().expect("at least the input column")
    }

    /// Value on 1-based `wire` after `level`.
    pub fn get(&self, wire: usize, level: usize) -> &T {
        &self.columns[level][wire - 1]
    }
}

/// A network together with the wires and contiguous level interval it is
/// confined to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfinedNetwork {
    comparators: Vec<Comparator>,
    wires: BTreeSet<usize>,
    first_level: usize,
    last_level: usize,
}

impl ConfinedNetwork {
    pub fn new(
        comparators: Vec<Comparator>,
        wires: BTreeSet<usize>,
        first_level: usize,
        last_level: usize,
    ) -> Result<Self, NetworkError> {
        if first_level == 0 || first_level > last_level {
            return Err(NetworkError::BadConfinement(format!(
                "level interval {first_level}..={last_level} must be nonempty and start at 1 or later"
            )));
        }
        if let Some(c) = comparators
            .iter()
            .find(|c| !wires.contains(&c.lo) || !wires.contains(&c.hi) || c.level < first_level || c.level > last_level)
        {
            return Err(NetworkError::BadConfinement(format!(
                "comparator {c} escapes wires {wires:?} / levels {first_level}..={last_level}"
            )));
        }
        Ok(ConfinedNetwork {
            comparators,
            wires,
            first_level,
            last_level,
        })
    }

    /// The whole network as one component.
    pub fn whole(network: &Network) -> Result<Self, NetworkError> {
        ConfinedNetwork::new(
            network.comparators().to_vec(),
            (1..=network.width()).collect(),
            1,
            network.depth().max(1),
        )
    }

    pub fn comparators(&self) -> &[Comparator] {
        &self.comparators
    }

    pub fn wires(&self) -> &BTreeSet<usize> {
        &self.wires
    }

    pub fn first_level(&self) -> usize {
        self.first_level
    }

    pub fn last_level(&self) -> usize {
        self.last_level
    }

    pub fn compatible(&self, other: &ConfinedNetwork) -> bool {
        self.wires.is_disjoint(&other.wires)
            || self.last_level < other.first_level
            || other.last_level < self.first_level
    }
}

/// An ordered list of mutually compatible confined networks covering a network.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    components: Vec<ConfinedNetwork>,
}

impl Decomposition {
    /// Validate `components` against `network`: pairwise compatibility, exact
    /// cover of the comparator set, and an order in which no component comes
    /// before one it could depend on.
    pub fn new(network: &Network, components: Vec<ConfinedNetwork>) -> Result<Self, NetworkError> {
        for (a, ca) in components.iter().enumerate() {
            if ca.last_level > network.depth() || ca.wires.iter().any(|&w| w == 0 || w > network.width()) {
                return Err(NetworkError::BadDecomposition(format!(
                    "component {a} lies outside the network shape"
                )));
            }
            for (b, cb) in components.iter().enumerate().skip(a + 1) {
                if !ca.compatible(cb) {
                    return Err(NetworkError::BadDecomposition(format!(
                        "components {a} and {b} are not compatible"
                    )));
                }
                if ca.first_level > cb.last_level {
                    return Err(NetworkError::BadDecomposition(format!(
                        "component {a} is ordered before {b} but starts after it ends"
                    )));
                }
            }
        }
        let mut covered: Vec<Comparator> = components.iter().flat_map(|c| c.comparators.iter().copied()).collect();
        covered.sort_by_key(|c| (c.level, c.lo, c.hi));
        if covered != network.comparators() {
            return Err(NetworkError::BadDecomposition(
                "components do not cover the comparators exactly once".into(),
            ));
        }
        Ok(Decomposition { components })
    }

    /// The whole network as a single component.
    pub fn single(network: &Network) -> Result<Self, NetworkError> {
        if network.depth() == 0 {
            return Ok(Decomposition { components: Vec::new() });
        }
        Decomposition::new(network, vec![ConfinedNetwork::whole(network)?])
    }

    pub fn components(&self) -> &[ConfinedNetwork] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }
}

/// The sparse decomposition with sparseness factor `k`.
///
/// Levels are cut into blocks `1..=k`, `k+1..=2k`, ... (the last block ends at
/// the depth). Within a block the wires are split into connected components of
/// the block's comparators; wires touched by no comparator of the block form
/// one extra component. Components are ordered by block, then by smallest wire.
pub fn decompose_sparse(network: &Network, k: usize) -> Decomposition {
    assert!(k >= 1, "sparseness factor must be positive");
    let depth = network.depth();
    let width = network.width();
    let mut components = Vec::new();
    let mut first = 1;
    while first <= depth {
        let last = (first + k - 1).min(depth);
        let block: Vec<Comparator> = network
            .comparators()
            .iter()
            .copied()
            .filter(|c| c.level >= first && c.level <= last)
            .collect();
        let mut parent: Vec<usize> = (0..=width).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut root = x;
            while parent[root] != root {
                root = parent[root];
            }
            let mut cur = x;
            while parent[cur] != root {
                let next = parent[cur];
                parent[cur] = root;
                cur = next;
            }
            root
        }
        let mut touched = vec![false; width + 1];
        for c in &block {
            touched[c.lo] = true;
            touched[c.hi] = true;
            let (ra, rb) = (find(&mut parent, c.lo), find(&mut parent, c.hi));
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
        let mut groups: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
        let mut inert = BTreeSet::new();
        for w in 1..=width {
            if touched[w] {
                let root = find(&mut parent, w);
                groups.entry(root).or_default().insert(w);
            } else {
                inert.insert(w);
            }
        }
        let mut parts: Vec<BTreeSet<usize>> = groups.into_values().collect();
        if !inert.is_empty() {
            parts.push(inert);
        }
        parts.sort_by_key(|p| *p.iter().next().expect("nonempty part"));
        for wires in parts {
            let comps: Vec<Comparator> = block.iter().copied().filter(|c| wires.contains(&c.lo)).collect();
            components.push(ConfinedNetwork {
                comparators: comps,
                wires,
                first_level: first,
                last_level: last,
            });
        }
        first = last + 1;
    }
    Decomposition { components }
}

/// Optional text labels at `(wire, level)` positions of a diagram.
pub type Annotations = BTreeMap<(usize, usize), String>;

/// Render a Knuth diagram as monospace text, one row per wire (wire 1 on
/// top). Each layer is drawn as one or more columns of vertical connectors;
/// `o` marks comparator endpoints and `|` a connector crossing a wire. Labels
/// for level `l` are printed right after layer `l` (level 0 before the first
/// layer), right-aligned within their column.
pub fn render_diagram(network: &Network, annotations: &Annotations) -> Result<String, NetworkError> {
    let width = network.width();
    let depth = network.depth();
    for &(wire, level) in annotations.keys() {
        if wire == 0 || wire > width || level > depth {
            return Err(NetworkError::AnnotationOutOfRange { wire, level });
        }
    }
    let mut rows: Vec<String> = vec!["-".to_string(); width];
    let push_labels = |rows: &mut Vec<String>, level: usize| {
        let col_width = (1..=width)
            .filter_map(|w| annotations.get(&(w, level)).map(|s| s.chars().count()))
            .max();
        if let Some(cw) = col_width {
            for (idx, row) in rows.iter_mut().enumerate() {
                let label = annotations.get(&(idx + 1, level)).map(String::as_str).unwrap_or("");
                let pad = cw - label.chars().count();
                row.push_str(&"-".repeat(pad));
                row.push_str(label);
                row.push('-');
            }
        }
    };
    push_labels(&mut rows, 0);
    for level in 1..=depth {
        // pack the layer into columns whose vertical spans do not overlap
        let mut columns: Vec<Vec<Comparator>> = Vec::new();
        for c in network.layer(level) {
            let slot = columns
                .iter()
                .position(|col| col.iter().all(|o| o.hi < c.lo || c.hi < o.lo));
            match slot {
                Some(i) => columns[i].push(*c),
                None => columns.push(vec![*c]),
            }
        }
        for col in &columns {
            for (idx, row) in rows.iter_mut().enumerate() {
                let wire = idx + 1;
                let glyph = if col.iter().any(|c| c.touches(wire)) {
                    'o'
                } else if col.iter().any(|c| c.lo < wire && wire < c.hi) {
                    '|'
                } else {
                    '-'
                };
                row.push(glyph);
                row.push('-');
            }
        }
        push_labels(&mut rows, level);
    }
    let mut out = String::new();
    for row in rows {
        out.push_str(&row);
        out.push('\n');
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn four_wire() -> Network {
        Network::from_triples(4, 3, &[(1, 2, 1), (3, 4, 1), (1, 3, 2), (2, 4, 2), (2, 3, 3)]).unwrap()
    }

    #[test]
    fn constructs_the_four_wire_sorter() {
        let n = four_wire();
        assert_eq!(n.width(), 4);
        assert_eq!(n.depth(), 3);
        assert_eq!(n.size(), 5);
        assert!(n.sorts_all_binary_inputs());
    }

    #[test]
    fn empty_network_is_accepted() {
        let n = Network::new(3, 0, Vec::new()).unwrap();
        assert!(n.is_empty());
        assert_eq!(n.depth(), 0);
    }

    #[test]
    fn rejects_overlapping_wires_on_one_level() {
        let err = Network::from_triples(4, 1, &[(1, 2, 1), (2, 3, 1)]).unwrap_err();
        assert!(matches!(err, NetworkError::Incompatible(..)));
    }

    #[test]
    fn rejects_bad_and_out_of_range_comparators() {
        assert!(Comparator::new(2, 2, 1).is_err());
        assert!(Comparator::new(3, 1, 1).is_err());
        assert!(Comparator::new(1, 2, 0).is_err());
        assert!(matches!(
            Network::from_triples(2, 1, &[(1, 3, 1)]),
            Err(NetworkError::OutOfRange { .. })
        ));
        assert!(matches!(
            Network::from_triples(2, 1, &[(1, 2, 2)]),
            Err(NetworkError::OutOfRange { .. })
        ));
    }

    #[test]
    fn duplicates_are_merged() {
        let n = Network::from_triples(2, 1, &[(1, 2, 1), (1, 2, 1)]).unwrap();
        assert_eq!(n.size(), 1);
    }

    #[test]
    fn apply_reproduces_sorter_columns() {
        let v = four_wire().apply(&[2, 3, 4, 1]).unwrap();
        assert_eq!(
            v.columns(),
            &[vec![2, 3, 4, 1], vec![2, 3, 1, 4], vec![1, 3, 2, 4], vec![1, 2, 3, 4]]
        );
        let b = four_wire().apply(&[0, 1, 1, 0]).unwrap();
        assert_eq!(b.output(), &[0, 0, 1, 1]);
    }

    #[test]
    fn apply_on_empty_network_is_identity() {
        let v = Network::empty(2).apply(&[5, 1]).unwrap();
        assert_eq!(v.columns(), &[vec![5, 1]]);
    }

    #[test]
    fn apply_rejects_wrong_length() {
        assert_eq!(
            four_wire().apply(&[1, 2]).unwrap_err(),
            NetworkError::LengthMismatch { expected: 4, got: 2 }
        );
    }

    #[test]
    fn permutation_traces_values() {
        let sigma = four_wire().permutation_of(&[2, 3, 4, 1]).unwrap();
        assert_eq!(sigma, vec![2, 3, 4, 1]);
        assert_eq!(Network::empty(3).permutation_of(&[9, 8, 7]).unwrap(), vec![1, 2, 3]);
        let single = Network::from_triples(2, 1, &[(1, 2, 1)]).unwrap();
        assert_eq!(single.permutation_of(&[7, 7]).unwrap(), vec![1, 2]);
        assert!(four_wire().permutation_of(&[1]).is_err());
    }

    #[test]
    fn oe_sorter_small_cases() {
        assert_eq!(oe_sorter(4), four_wire());
        assert!(oe_sorter(1).is_empty());
        assert!(oe_sorter(0).is_empty());
        let eight = oe_sorter(8);
        assert_eq!(eight.depth(), 6);
        assert_eq!(eight.size(), 19);
        assert!(eight.sorts_all_binary_inputs());
    }

    #[test]
    fn limit_depth_filters_levels() {
        let l1 = four_wire().limit_depth(1);
        assert_eq!(l1, Network::from_triples(4, 1, &[(1, 2, 1), (3, 4, 1)]).unwrap());
        let l0 = four_wire().limit_depth(0);
        assert!(l0.is_empty());
        assert_eq!(l0.depth(), 0);
        assert_eq!(four_wire().limit_depth(7), four_wire());
    }

    fn block_fragment() -> Network {
        Network::from_triples(
            10,
            6,
            &[
                (1, 2, 1),
                (4, 5, 1),
                (6, 7, 1),
                (8, 9, 1),
                (2, 3, 2),
                (6, 8, 2),
                (7, 10, 2),
                (1, 4, 3),
                (7, 8, 3),
                (9, 10, 3),
                (3, 5, 3),
                (2, 4, 4),
                (6, 7, 4),
                (8, 9, 4),
                (1, 2, 5),
                (3, 4, 5),
                (7, 8, 5),
                (3, 7, 6),
            ],
        )
        .unwrap()
    }

    fn wire_sets(d: &Decomposition) -> Vec<(Vec<usize>, usize, usize)> {
        d.components()
            .iter()
            .map(|c| (c.wires().iter().copied().collect(), c.first_level(), c.last_level()))
            .collect()
    }

    #[test]
    fn sparse_decomposition_of_the_ten_wire_network() {
        let net = block_fragment();
        let d = decompose_sparse(&net, 2);
        assert_eq!(
            wire_sets(&d),
            vec![
                (vec![1, 2, 3], 1, 2),
                (vec![4, 5], 1, 2),
                (vec![6, 7, 8, 9, 10], 1, 2),
                (vec![1, 2, 4], 3, 4),
                (vec![3, 5], 3, 4),
                (vec![6, 7, 8, 9, 10], 3, 4),
                (vec![1, 2], 5, 6),
                (vec![3, 4, 7, 8], 5, 6),
                // wires untouched in levels 5..=6 are grouped together
                (vec![5, 6, 9, 10], 5, 6),
            ]
        );
        assert!(Decomposition::new(&net, d.components().to_vec()).is_ok());
    }

    #[test]
    fn coarse_and_fine_decompositions() {
        let net = oe_sorter(8);
        let whole = decompose_sparse(&net, net.depth());
        assert_eq!(whole.len(), 1);
        assert_eq!(whole.components()[0].comparators().len(), net.size());

        let fine = decompose_sparse(&four_wire(), 1);
        // level 3 leaves wires 1 and 4 free: one inert component
        assert_eq!(
            wire_sets(&fine),
            vec![
                (vec![1, 2], 1, 1),
                (vec![3, 4], 1, 1),
                (vec![1, 3], 2, 2),
                (vec![2, 4], 2, 2),
                (vec![1, 4], 3, 3),
                (vec![2, 3], 3, 3),
            ]
        );
        assert!(fine.components().iter().all(|c| c.comparators().len() <= 1));
    }

    #[test]
    fn decomposition_validation_catches_errors() {
        let net = four_wire();
        let mut comps = decompose_sparse(&net, 1).components().to_vec();
        comps.swap(0, 5);
        assert!(Decomposition::new(&net, comps).is_err());
        let partial = decompose_sparse(&net, 1).components()[..3].to_vec();
        assert!(Decomposition::new(&net, partial).is_err());
    }

    #[test]
    fn confined_network_rejects_escaping_comparators() {
        let c = Comparator::new(1, 2, 1).unwrap();
        assert!(ConfinedNetwork::new(vec![c], [1, 3].into_iter().collect(), 1, 1).is_err());
        assert!(ConfinedNetwork::new(vec![c], [1, 2].into_iter().collect(), 2, 3).is_err());
        assert!(ConfinedNetwork::new(vec![], [1].into_iter().collect(), 2, 1).is_err());
    }

    #[test]
    fn render_empty_two_wire_network() {
        let text = render_diagram(&Network::empty(2), &Annotations::new()).unwrap();
        assert_eq!(text, "-\n-\n");
    }

    #[test]
    fn render_rejects_bad_annotation() {
        let mut ann = Annotations::new();
        ann.insert((3, 0), "x".into());
        assert!(render_diagram(&Network::empty(2), &ann).is_err());
    }
}
