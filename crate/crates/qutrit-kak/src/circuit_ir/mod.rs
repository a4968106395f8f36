//! Gate-level circuits: simulator, rewrite passes, counting and a line-based
//! text format. Gates are listed in application order, so the circuit
//! unitary is the product of gate matrices in reverse order.

mod gate;
mod passes;
mod text;

pub use gate::{apply_gate, Gate};
pub use passes::{
    commutes, normalize_angle, pass_cancel, pass_collect_phases, pass_commute_reorder, pass_expand_local_x,
    pass_fuse_cinc, pass_gcx_pair, PassConfig, DEFAULT_WINDOW,
};
pub use text::{deserialize, serialize, ParseError};

use crate::numkernel::ComplexMatrix;
use crate::trit_algebra::dim;
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CircuitError {
    #[error("qutrit index {index} out of range for width {width}")]
    QutritOutOfRange { index: usize, width: usize },
    #[error("control and target coincide at qutrit {index}")]
    ControlIsTarget { index: usize },
    #[error("control value {value} is not a qutrit level")]
    BadControlValue { value: usize },
    #[error("non-finite rotation angle or phase")]
    NonFiniteAngle,
    #[error("circuit widths differ: {left} vs {right}")]
    WidthMismatch { left: usize, right: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    pub width: usize,
    pub gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(width: usize) -> Self {
        Self {
            width,
            gates: Vec::new(),
        }
    }

    pub fn from_gates(width: usize, gates: Vec<Gate>) -> Self {
        Self { width, gates }
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn push(&mut self, g: Gate) {
        self.gates.push(g);
    }

    /// Appends `other`, whose qutrit i becomes qutrit i + offset here.
    pub fn append_shifted(&mut self, other: &Circuit, offset: usize) {
        assert!(other.width + offset <= self.width, "embedded circuit too wide");
        self.gates.extend(other.gates.iter().map(|g| g.shifted(offset)));
    }

    pub fn append(&mut self, other: &Circuit) {
        self.append_shifted(other, 0);
    }

    pub fn reversed(&self) -> Circuit {
        Circuit::from_gates(self.width, self.gates.iter().rev().cloned().collect())
    }

    pub fn validate(&self) -> Result<(), CircuitError> {
        self.gates.iter().try_for_each(|g| g.validate(self.width))
    }

    pub fn count(&self) -> CountReport {
        count(self)
    }

    pub fn two_qutrit_count(&self) -> usize {
        self.gates.iter().filter(|g| g.is_two_qutrit()).count()
    }
}

/// Unitary implemented by the circuit.
pub fn eval(c: &Circuit) -> Result<ComplexMatrix, CircuitError> {
    c.validate()?;
    let mut m = ComplexMatrix::identity(dim(c.width));
    for g in &c.gates {
        apply_gate(&mut m, c.width, g);
    }
    Ok(m)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct CountReport {
    pub rotations: usize,
    pub rotations_x: usize,
    pub rotations_y: usize,
    pub rotations_z: usize,
    pub local_x: usize,
    pub gcx: usize,
    pub cinc: usize,
    pub phases: usize,
    pub two_qutrit: usize,
    pub total: usize,
}

pub fn count(c: &Circuit) -> CountReport {
    use crate::trit_algebra::Axis;
    let mut r = CountReport::default();
    for g in &c.gates {
        match g {
            Gate::Rotation { axis, .. } => {
                r.rotations += 1;
                match axis {
                    Axis::X => r.rotations_x += 1,
                    Axis::Y => r.rotations_y += 1,
                    Axis::Z => r.rotations_z += 1,
                }
            }
            Gate::LocalX { .. } => r.local_x += 1,
            Gate::Gcx { .. } => r.gcx += 1,
            Gate::Cinc { .. } => r.cinc += 1,
            Gate::GlobalPhase { .. } => r.phases += 1,
        }
    }
    r.two_qutrit = r.gcx + r.cinc;
    r.total = r.rotations + r.local_x + r.two_qutrit + r.phases;
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkernel::unitary_distance;
    use crate::trit_algebra::{gcx_matrix, generator, Axis, GeneratorId, Level};

    #[test]
    fn empty_circuit_is_identity() {
        assert_eq!(eval(&Circuit::new(2)).unwrap(), ComplexMatrix::identity(9));
        assert_eq!(count(&Circuit::new(2)), CountReport::default());
    }

    #[test]
    fn single_gcx_matches_definition() {
        let c = Circuit::from_gates(2, vec![Gate::gcx(0, 1, 1, Level::L01)]);
        let id = ComplexMatrix::identity(3);
        let expect = ComplexMatrix::block_diag(&[&id, &generator(GeneratorId::X01), &id]);
        assert_eq!(eval(&c).unwrap(), expect);
    }

    #[test]
    fn gate_matrix_agrees_with_dense_constructor() {
        for (c, t) in [(0, 2), (2, 0), (1, 2)] {
            let g = Gate::gcx(c, 2, t, Level::L12);
            assert_eq!(g.matrix(3), gcx_matrix(3, c, 2, t, Level::L12).unwrap());
        }
    }

    #[test]
    fn sequence_order_is_application_order() {
        let a = Gate::Rotation {
            axis: Axis::X,
            level: Level::L01,
            qutrit: 0,
            theta: 0.4,
        };
        let b = Gate::gcx(0, 1, 1, Level::L02);
        let c = Circuit::from_gates(2, vec![a, b]);
        let expect = b.matrix(2).matmul(&a.matrix(2));
        assert!(unitary_distance(&eval(&c).unwrap(), &expect).unwrap() < 1e-14);
    }

    #[test]
    fn invalid_gate_rejected() {
        let c = Circuit::from_gates(2, vec![Gate::gcx(0, 1, 0, Level::L01)]);
        assert_eq!(eval(&c), Err(CircuitError::ControlIsTarget { index: 0 }));
        let c = Circuit::from_gates(2, vec![Gate::rz(Level::L01, 2, 0.1)]);
        assert!(matches!(eval(&c), Err(CircuitError::QutritOutOfRange { .. })));
    }
}
