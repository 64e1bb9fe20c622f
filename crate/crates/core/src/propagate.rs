//! Wire weights and weight propagation over comparator networks.
//!
//! A weight matrix assigns a non-negative integer to every `(wire, level)`
//! position. Together with a network it defines the linear function
//! `sum a[i][l] * x[i][l]` over the wire values `x`. The propagation
//! operations move weight from the inputs of a (confined) network to its
//! outputs without changing that function.

use std::fmt;

use thiserror::Error;

use crate::network::{ConfinedNetwork, Decomposition, Network, NetworkError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PropagateError {
    #[error("weight {0} is negative")]
    NegativeWeight(i64),
    #[error("weight matrix is {width}x{levels}, network needs {want_width}x{want_levels}")]
    ShapeMismatch {
        width: usize,
        levels: usize,
        want_width: usize,
        want_levels: usize,
    },
    #[error("confined network on wires {wires:?} levels {first}..={last} does not fit the matrix")]
    ComponentOutOfShape {
        wires: Vec<usize>,
        first: usize,
        last: usize,
    },
    #[error("weight arithmetic overflowed")]
    Overflow,
    #[error(transparent)]
    Network(#[from] NetworkError),
}

/// Non-negative weights indexed by wire `1..=width` and level `0..=depth`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightMatrix {
    width: usize,
    depth: usize,
    // level-major: entry (wire, level) at level * width + (wire - 1)
    weights: Vec<u64>,
}

impl WeightMatrix {
    pub fn zeros(width: usize, depth: usize) -> Self {
        WeightMatrix {
            width,
            depth,
            weights: vec![0; width * (depth + 1)],
        }
    }

    /// Input weights in column 0, zeros elsewhere.
    pub fn from_input_weights(input: &[u64], depth: usize) -> Self {
        let mut m = WeightMatrix::zeros(input.len(), depth);
        m.weights[..input.len()].copy_from_slice(input);
        m
    }

    /// Like [`WeightMatrix::from_input_weights`] but from signed integers,
    /// rejecting negative entries.
    pub fn from_signed_input_weights(input: &[i64], depth: usize) -> Result<Self, PropagateError> {
        let unsigned = input
            .iter()
            .map(|&w| u64::try_from(w).map_err(|_| PropagateError::NegativeWeight(w)))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(WeightMatrix::from_input_weights(&unsigned, depth))
    }

    /// Build from explicit columns, one per level.
    pub fn from_columns(columns: &[Vec<u64>]) -> Self {
        let width = columns.first().map_or(0, Vec::len);
        assert!(columns.iter().all(|c| c.len() == width), "ragged columns");
        WeightMatrix {
            width,
            depth: columns.len().saturating_sub(1),
            weights: columns.concat(),
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn get(&self, wire: usize, level: usize) -> u64 {
        self.weights[self.index(wire, level)]
    }

    pub fn set(&mut self, wire: usize, level: usize, value: u64) {
        let idx = self.index(wire, level);
        self.weights[idx] = value;
    }

    pub fn column(&self, level: usize) -> &[u64] {
        &self.weights[level * self.width..(level + 1) * self.width]
    }

    pub fn columns(&self) -> impl Iterator<Item = &[u64]> {
        (0..=self.depth).map(move |l| self.column(l))
    }

    /// Sum of all entries, or `None` on overflow.
    pub fn total(&self) -> Option<u64> {
        self.weights.iter().try_fold(0u64, |acc, &w| acc.checked_add(w))
    }

    /// Nonzero entries as `(wire, level, weight)`, ordered by level then wire.
    pub fn nonzero(&self) -> Vec<(usize, usize, u64)> {
        let mut out = Vec::new();
        for level in 0..=self.depth {
            for wire in 1..=self.width {
                let w = self.get(wire, level);
                if w != 0 {
                    out.push((wire, level, w));
                }
            }
        }
        out
    }

    pub fn check_shape(&self, network: &Network) -> Result<(), PropagateError> {
        if self.width != network.width() || self.depth != network.depth() {
            return Err(PropagateError::ShapeMismatch {
                width: self.width,
                levels: self.depth + 1,
                want_width: network.width(),
                want_levels: network.depth() + 1,
            });
        }
        Ok(())
    }

    fn index(&self, wire: usize, level: usize) -> usize {
        assert!(
            wire >= 1 && wire <= self.width && level <= self.depth,
            "({wire}, {level}) outside {}x{}",
            self.width,
            self.depth + 1
        );
        level * self.width + wire - 1
    }
}

impl fmt::Display for WeightMatrix {
    /// One line per level: `level l: w1 w2 ... wn`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (level, col) in self.columns().enumerate() {
            let cells: Vec<String> = col.iter().map(u64::to_string).collect();
            writeln!(f, "level {level}: {}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// The weight function value `sum_i sum_l a[i][l] * x[i][l]` for `input`.
pub fn weight_function(network: &Network, weights: &WeightMatrix, input: &[i64]) -> Result<i128, PropagateError> {
    weights.check_shape(network)?;
    let values = network.apply(input)?;
    let mut sum: i128 = 0;
    for (level, col) in values.columns().iter().enumerate() {
        for (idx, &x) in col.iter().enumerate() {
            let a = i128::from(weights.get(idx + 1, level));
            let term = a.checked_mul(i128::from(x)).ok_or(PropagateError::Overflow)?;
            sum = sum.checked_add(term).ok_or(PropagateError::Overflow)?;
        }
    }
    Ok(sum)
}

/// Move the smallest input weight of the whole network from every input to
/// every output.
pub fn propagate_full(weights: &WeightMatrix) -> Result<WeightMatrix, PropagateError> {
    if weights.depth == 0 || weights.width == 0 {
        return Ok(weights.clone());
    }
    let wires: Vec<usize> = (1..=weights.width).collect();
    shift(weights, &wires, 1, weights.depth)
}

/// Move the smallest weight found at level `first - 1` on the component's
/// wires to level `last` on the same wires.
pub fn propagate_confined(weights: &WeightMatrix, component: &ConfinedNetwork) -> Result<WeightMatrix, PropagateError> {
    let first = component.first_level();
    let last = component.last_level();
    let wires: Vec<usize> = component.wires().iter().copied().collect();
    if last > weights.depth || wires.iter().any(|&w| w == 0 || w > weights.width) {
        return Err(PropagateError::ComponentOutOfShape { wires, first, last });
    }
    shift(weights, &wires, first, last)
}

/// Fold [`propagate_confined`] over the components in order.
pub fn propagate_decomposition(
    weights: &WeightMatrix,
    decomposition: &Decomposition,
) -> Result<WeightMatrix, PropagateError> {
    let mut current = weights.clone();
    for component in decomposition.components() {
        current = propagate_confined(&current, component)?;
    }
    Ok(current)
}

fn shift(weights: &WeightMatrix, wires: &[usize], first: usize, last: usize) -> Result<WeightMatrix, PropagateError> {
    let amount = wires.iter().map(|&w| weights.get(w, first - 1)).min().unwrap_or(0);
    if amount == 0 {
        return Ok(weights.clone());
    }
    let mut out = weights.clone();
    for &w in wires {
        let from = out.get(w, first - 1) - amount;
        out.set(w, first - 1, from);
        let to = out.get(w, last).checked_add(amount).ok_or(PropagateError::Overflow)?;
        out.set(w, last, to);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::{decompose_sparse, Comparator};
    use std::collections::BTreeSet;

    #[test]
    fn input_weight_matrix() {
        let m = WeightMatrix::from_input_weights(&[40, 50, 90, 70], 3);
        assert_eq!(m.column(0), &[40, 50, 90, 70]);
        for l in 1..=3 {
            assert_eq!(m.column(l), &[0, 0, 0, 0]);
        }
        let empty = WeightMatrix::from_input_weights(&[], 0);
        assert_eq!(empty.width(), 0);
        assert_eq!(empty.total(), Some(0));
        assert_eq!(WeightMatrix::from_input_weights(&[0, 0], 2).total(), Some(0));
        assert_eq!(
            WeightMatrix::from_signed_input_weights(&[1, -2], 1).unwrap_err(),
            PropagateError::NegativeWeight(-2)
        );
    }

    #[test]
    fn example_weight_function_value() {
        let net = Network::from_triples(3, 2, &[(1, 2, 1), (2, 3, 2)]).unwrap();
        let w = WeightMatrix::from_columns(&[vec![0, 10, 0], vec![0, 0, 20], vec![30, 40, 40]]);
        assert_eq!(weight_function(&net, &w, &[1, 2, 0]).unwrap(), 130);
        assert_eq!(
            weight_function(&net, &WeightMatrix::zeros(3, 2), &[5, -3, 9]).unwrap(),
            0
        );
    }

    #[test]
    fn empty_network_weight_function_is_a_dot_product() {
        let net = Network::empty(3);
        let w = WeightMatrix::from_input_weights(&[2, 3, 4], 0);
        assert_eq!(weight_function(&net, &w, &[1, -1, 5]).unwrap(), 2 - 3 + 20);
    }

    #[test]
    fn weight_function_checks_shape() {
        let net = Network::from_triples(2, 1, &[(1, 2, 1)]).unwrap();
        let w = WeightMatrix::zeros(2, 2);
        assert!(matches!(
            weight_function(&net, &w, &[0, 1]),
            Err(PropagateError::ShapeMismatch { .. })
        ));
    }

    #[test]
    fn full_propagation_over_one_comparator() {
        let w = WeightMatrix::from_input_weights(&[40, 50], 1);
        let u = propagate_full(&w).unwrap();
        assert_eq!(u.column(0), &[0, 10]);
        assert_eq!(u.column(1), &[40, 40]);
    }

    #[test]
    fn full_propagation_with_uniform_weights_empties_the_inputs() {
        let w = WeightMatrix::from_input_weights(&[10; 5], 5);
        let u = propagate_full(&w).unwrap();
        assert_eq!(u.column(0), &[0; 5]);
        assert_eq!(u.column(5), &[10; 5]);
        assert_eq!(u.total(), w.total());
    }

    #[test]
    fn zero_input_weight_is_a_fixed_point() {
        let w = WeightMatrix::from_input_weights(&[0, 7, 3], 2);
        assert_eq!(propagate_full(&w).unwrap(), w);
        let depth0 = WeightMatrix::from_input_weights(&[4, 5], 0);
        assert_eq!(propagate_full(&depth0).unwrap(), depth0);
    }

    #[test]
    fn confined_step_moves_the_component_minimum() {
        let before = WeightMatrix::from_columns(&[
            vec![80, 20, 0, 70, 30],
            vec![90, 40, 10, 20, 50],
            vec![50, 0, 90, 90, 80],
            vec![60, 50, 0, 10, 30],
            vec![30, 70, 20, 50, 20],
        ]);
        let comps = vec![
            Comparator::new(1, 4, 2).unwrap(),
            Comparator::new(3, 5, 2).unwrap(),
            Comparator::new(4, 5, 3).unwrap(),
        ];
        let c = ConfinedNetwork::new(comps, [1, 3, 4, 5].into_iter().collect(), 2, 3).unwrap();
        let after = propagate_confined(&before, &c).unwrap();
        assert_eq!(after.column(0), before.column(0));
        assert_eq!(after.column(1), &[80, 40, 0, 10, 40]);
        assert_eq!(after.column(2), before.column(2));
        assert_eq!(after.column(3), &[70, 50, 10, 20, 40]);
        assert_eq!(after.column(4), before.column(4));
    }

    #[test]
    fn confined_step_with_zero_minimum_changes_nothing() {
        let w = WeightMatrix::from_columns(&[vec![0, 5, 5], vec![0, 0, 0]]);
        let c = ConfinedNetwork::new(vec![], [1, 2].into_iter().collect(), 1, 1).unwrap();
        assert_eq!(propagate_confined(&w, &c).unwrap(), w);
    }

    #[test]
    fn comparator_free_component_still_moves_weight() {
        let w = WeightMatrix::from_columns(&[vec![6, 9], vec![0, 0], vec![0, 0]]);
        let c = ConfinedNetwork::new(vec![], [1, 2].into_iter().collect(), 1, 2).unwrap();
        let u = propagate_confined(&w, &c).unwrap();
        assert_eq!(u.column(0), &[0, 3]);
        assert_eq!(u.column(2), &[6, 6]);
    }

    #[test]
    fn confined_component_outside_shape_is_rejected() {
        let w = WeightMatrix::zeros(2, 1);
        let c = ConfinedNetwork::new(vec![], BTreeSet::from([3]), 1, 1).unwrap();
        assert!(propagate_confined(&w, &c).is_err());
    }

    #[test]
    fn fine_grained_propagation_on_the_four_wire_sorter() {
        let net = crate::network::oe_sorter(4);
        let w = WeightMatrix::from_input_weights(&[40, 50, 90, 70], 3);
        let d = decompose_sparse(&net, 1);
        let comps = d.components();

        let mut cur = w.clone();
        for c in &comps[..2] {
            cur = propagate_confined(&cur, c).unwrap();
        }
        assert_eq!(cur.column(0), &[0, 10, 20, 0]);
        assert_eq!(cur.column(1), &[40, 40, 70, 70]);
        for c in &comps[2..4] {
            cur = propagate_confined(&cur, c).unwrap();
        }
        assert_eq!(cur.column(1), &[0, 0, 30, 30]);
        assert_eq!(cur.column(2), &[40, 40, 40, 40]);

        let done = propagate_decomposition(&w, &d).unwrap();
        assert_eq!(done.column(0), &[0, 10, 20, 0]);
        assert_eq!(done.column(1), &[0, 0, 30, 30]);
        assert_eq!(done.column(2), &[0, 0, 0, 0]);
        assert_eq!(done.column(3), &[40, 40, 40, 40]);
    }

    #[test]
    fn sparse_propagation_on_the_five_wire_fragment() {
        let net = Network::from_triples(
            5,
            4,
            &[(1, 2, 1), (4, 5, 1), (2, 3, 2), (1, 4, 3), (3, 5, 3), (2, 4, 4)],
        )
        .unwrap();
        let w = WeightMatrix::from_input_weights(&[20, 90, 80, 30, 70], 4);
        let u = propagate_decomposition(&w, &decompose_sparse(&net, 2)).unwrap();
        assert_eq!(u.column(0), &[0, 70, 60, 0, 40]);
        assert_eq!(u.column(1), &[0; 5]);
        assert_eq!(u.column(2), &[0, 0, 0, 10, 10]);
        assert_eq!(u.column(3), &[0; 5]);
        assert_eq!(u.column(4), &[20, 20, 20, 20, 20]);
    }

    #[test]
    fn single_component_matches_full_propagation() {
        let net = crate::network::oe_sorter(5);
        let w = WeightMatrix::from_input_weights(&[3, 8, 1, 9, 4], net.depth());
        let d = Decomposition::single(&net).unwrap();
        assert_eq!(propagate_decomposition(&w, &d).unwrap(), propagate_full(&w).unwrap());
    }

    #[test]
    fn overflow_is_reported() {
        let w = WeightMatrix::from_columns(&[vec![5, 5], vec![u64::MAX, 0]]);
        assert_eq!(propagate_full(&w).unwrap_err(), PropagateError::Overflow);
    }
}
