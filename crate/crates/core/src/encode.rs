//! Rule encoding of comparator networks.
//!
//! Every wire value `x[i][l]` becomes an atom. A comparator `(i, j, l)`
//! contributes `x[i][l] :- x[i][l-1], x[j][l-1]` (the minimum) and
//! `x[j][l] :- x[i][l-1]`, `x[j][l] :- x[j][l-1]` (the maximum); wires without
//! a comparator on a level copy their value with an inertia rule.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt::Write as _;

use thiserror::Error;

use crate::asplang::{Atom, AtomAllocator, NormalRule};
use crate::network::Network;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EncodeError {
    #[error("atom map is {width}x{levels}, network needs {want_width}x{want_levels}")]
    ShapeMismatch {
        width: usize,
        levels: usize,
        want_width: usize,
        want_levels: usize,
    },
    #[error("atom map needs {expected} atoms, got {got}")]
    WrongAtomCount { expected: usize, got: usize },
    #[error("atom {0} is assigned to more than one wire position")]
    DuplicateAtom(Atom),
    #[error("input entry {index} is {value}, expected 0 or 1")]
    NonBinary { index: usize, value: u8 },
    #[error("input has length {got}, map width is {expected}")]
    LengthMismatch { expected: usize, got: usize },
}

/// Injective assignment of atoms to the positions `(wire, level)` with
/// `wire` in `1..=width` and `level` in `0..=depth`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WireAtomMap {
    width: usize,
    depth: usize,
    // level-major
    atoms: Vec<Atom>,
}

impl WireAtomMap {
    /// Build from atoms listed level by level, wires ascending within a level.
    pub fn new(width: usize, depth: usize, atoms: Vec<Atom>) -> Result<Self, EncodeError> {
        let expected = width * (depth + 1);
        if atoms.len() != expected {
            return Err(EncodeError::WrongAtomCount {
                expected,
                got: atoms.len(),
            });
        }
        let mut seen = HashSet::with_capacity(atoms.len());
        for &a in &atoms {
            if !seen.insert(a) {
                return Err(EncodeError::DuplicateAtom(a));
            }
        }
        Ok(WireAtomMap { width, depth, atoms })
    }

    /// Fresh atoms for every position, allocated in (level, wire) order.
    pub fn allocate(width: usize, depth: usize, fresh: &mut AtomAllocator) -> Self {
        let atoms = (0..width * (depth + 1)).map(|_| fresh.fresh()).collect();
        WireAtomMap { width, depth, atoms }
    }

    /// Use `inputs` for level 0 and fresh atoms for the remaining levels.
    /// The caller must make sure `fresh` cannot hand out any of `inputs`.
    pub fn with_inputs(inputs: &[Atom], depth: usize, fresh: &mut AtomAllocator) -> Result<Self, EncodeError> {
        let width = inputs.len();
        let mut atoms = inputs.to_vec();
        atoms.extend((0..width * depth).map(|_| fresh.fresh()));
        WireAtomMap::new(width, depth, atoms)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Atom of wire `wire` (1-based) at `level`.
    pub fn get(&self, wire: usize, level: usize) -> Atom {
        assert!(
            (1..=self.width).contains(&wire) && level <= self.depth,
            "position ({wire}, {level}) outside {}x{}",
            self.width,
            self.depth
        );
        self.atoms[level * self.width + wire - 1]
    }

    pub fn column(&self, level: usize) -> &[Atom] {
        &self.atoms[level * self.width..(level + 1) * self.width]
    }

    pub fn inputs(&self) -> &[Atom] {
        self.column(0)
    }

    pub fn outputs(&self) -> &[Atom] {
        self.column(self.depth)
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    /// Reverse lookup as `(wire, level)`.
    pub fn position_of(&self, atom: Atom) -> Option<(usize, usize)> {
        let idx = self.atoms.iter().position(|&a| a == atom)?;
        Some((idx % self.width + 1, idx / self.width))
    }

    /// Debug listing, one `wire i level l atom id` line per position.
    pub fn sidecar(&self) -> String {
        let mut out = String::new();
        for level in 0..=self.depth {
            for wire in 1..=self.width {
                let _ = writeln!(out, "wire {wire} level {level} atom {}", self.get(wire, level));
            }
        }
        out
    }

    fn check_shape(&self, network: &Network) -> Result<(), EncodeError> {
        if self.width != network.width() || self.depth != network.depth() {
            return Err(EncodeError::ShapeMismatch {
                width: self.width,
                levels: self.depth + 1,
                want_width: network.width(),
                want_levels: network.depth() + 1,
            });
        }
        Ok(())
    }
}

/// The rules of asp(N). Rules come level by level and, within a level, by
/// wire; a comparator's three rules appear at its lower wire.
pub fn asp_of_network(network: &Network, map: &WireAtomMap) -> Result<Vec<NormalRule>, EncodeError> {
    map.check_shape(network)?;
    let n = network.width();
    let mut rules = Vec::new();
    for level in 1..=network.depth() {
        let mut partner: Vec<Option<(usize, bool)>> = vec![None; n + 1];
        for c in network.layer(level) {
            partner[c.lo] = Some((c.hi, true));
            partner[c.hi] = Some((c.lo, false));
        }
        for wire in 1..=n {
            let prev = map.get(wire, level - 1);
            let here = map.get(wire, level);
            match partner[wire] {
                None => rules.push(NormalRule::new(here, [prev.pos()])),
                Some((hi, true)) => {
                    let hi_prev = map.get(hi, level - 1);
                    let hi_here = map.get(hi, level);
                    rules.push(NormalRule::new(here, [prev.pos(), hi_prev.pos()]));
                    rules.push(NormalRule::new(hi_here, [prev.pos()]));
                    rules.push(NormalRule::new(hi_here, [hi_prev.pos()]));
                }
                Some((_, false)) => {}
            }
        }
    }
    Ok(rules)
}

/// Facts `x[i][0].` for the 1-entries of `input`.
pub fn input_facts(input: &[u8], map: &WireAtomMap) -> Result<Vec<NormalRule>, EncodeError> {
    if input.len() != map.width() {
        return Err(EncodeError::LengthMismatch {
            expected: map.width(),
            got: input.len(),
        });
    }
    let mut facts = Vec::new();
    for (index, &value) in input.iter().enumerate() {
        match value {
            0 => {}
            1 => facts.push(NormalRule::fact(map.get(index + 1, 0))),
            _ => return Err(EncodeError::NonBinary { index, value }),
        }
    }
    Ok(facts)
}

/// Keep only the rules some atom of `roots` depends on.
///
/// An atom that is needed keeps all rules defining it, and the body atoms of
/// those rules become needed too. Atoms that are dropped appear in no kept
/// rule at all, so they simply vanish from the program.
pub fn prune_dead_wires(rules: Vec<NormalRule>, roots: &BTreeSet<Atom>) -> Vec<NormalRule> {
    let mut by_head: HashMap<Atom, Vec<usize>> = HashMap::new();
    for (i, r) in rules.iter().enumerate() {
        by_head.entry(r.head).or_default().push(i);
    }
    let mut needed: HashSet<Atom> = roots.iter().copied().collect();
    let mut stack: Vec<Atom> = roots.iter().copied().collect();
    let mut keep = vec![false; rules.len()];
    while let Some(atom) = stack.pop() {
        for &i in by_head.get(&atom).map(Vec::as_slice).unwrap_or(&[]) {
            if keep[i] {
                continue;
            }
            keep[i] = true;
            for a in rules[i].pos_body.iter().chain(&rules[i].neg_body) {
                if needed.insert(*a) {
                    stack.push(*a);
                }
            }
        }
    }
    rules
        .into_iter()
        .zip(keep)
        .filter_map(|(r, k)| k.then_some(r))
        .collect()
}
