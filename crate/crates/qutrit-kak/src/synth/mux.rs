use crate::circuit_ir::{Circuit, Gate};
use crate::trit_algebra::Level;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TargetPosition {
    First,
    Last,
}

/// exp(−i σz^{ij} ⊗ diag(angles)) with the target as the first qutrit of
/// `span`, or exp(−i diag(angles) ⊗ σz^{ij}) with the target last. `span`
/// lists circuit qutrits by significance; angles are indexed by the
/// remaining qutrits in that order.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiplexedRotation {
    pub level: Level,
    pub target: TargetPosition,
    pub span: Vec<usize>,
    pub angles: Vec<f64>,
}

fn digit_reverse(angles: &[f64], digits: usize) -> Vec<f64> {
    (0..angles.len())
        .map(|j| {
            let (mut x, mut r) = (j, 0);
            for _ in 0..digits {
                r = r * 3 + x % 3;
                x /= 3;
            }
            angles[r]
        })
        .collect()
}

/// Uniformly controlled z rotation, peeling the last control:
/// N(θ) = [N(a3), GCX(c=2), N(a2) reversed, X, GCX(c=0), N(a1), GCX(c=1)]
/// with a1 = (θ0−θ1)/2, a2 = (θ0−θ2)/2, a3 = (θ1+θ2)/2 per block of c.
fn emit_controlled(level: Level, target: usize, controls: &[usize], angles: &[f64], out: &mut Vec<Gate>) {
    let Some((&c, rest)) = controls.split_last() else {
        out.push(Gate::rz(level, target, 2.0 * angles[0]));
        return;
    };
    let b = angles.len() / 3;
    let th = |m: usize, j: usize| angles[j * 3 + m];
    let a1: Vec<f64> = (0..b).map(|j| (th(0, j) - th(1, j)) / 2.0).collect();
    let a2: Vec<f64> = (0..b).map(|j| (th(0, j) - th(2, j)) / 2.0).collect();
    let a3: Vec<f64> = (0..b).map(|j| (th(1, j) + th(2, j)) / 2.0).collect();
    emit_controlled(level, target, rest, &a3, out);
    out.push(Gate::gcx(c, 2, target, level));
    let mut inner = Vec::new();
    emit_controlled(level, target, rest, &a2, &mut inner);
    out.extend(inner.into_iter().rev());
    out.push(Gate::LocalX { level, qutrit: target });
    out.push(Gate::gcx(c, 0, target, level));
    emit_controlled(level, target, rest, &a1, out);
    out.push(Gate::gcx(c, 1, target, level));
}

/// Raw emission (no passes) on a circuit of the given width.
pub fn emit_multiplexed_z(m: &MultiplexedRotation, width: usize) -> Circuit {
    let k = m.span.len();
    assert!(k >= 1, "multiplexer needs at least one qutrit");
    assert_eq!(m.angles.len(), crate::trit_algebra::dim(k - 1), "angle vector length");
    let mut gates = Vec::new();
    match m.target {
        TargetPosition::First => emit_controlled(m.level, m.span[0], &m.span[1..], &m.angles, &mut gates),
        TargetPosition::Last => {
            // peel controls from the most significant end
            let controls: Vec<usize> = m.span[..k - 1].iter().rev().cloned().collect();
            let angles = digit_reverse(&m.angles, k - 1);
            emit_controlled(m.level, m.span[k - 1], &controls, &angles, &mut gates);
        }
    }
    Circuit::from_gates(width, gates)
}
