use super::mux::{emit_multiplexed_z, MultiplexedRotation, TargetPosition};
use crate::circuit_ir::{Circuit, Gate};
use crate::kak::NonlocalKind;
use crate::trit_algebra::{dim, Axis, Level};
use std::f64::consts::FRAC_PI_2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DVariant {
    D,
    DBar,
}

fn ry(level: Level, theta: f64) -> Gate {
    Gate::Rotation {
        axis: Axis::Y,
        level,
        qutrit: 0,
        theta,
    }
}

fn sigma_x_factor(theta: &[f64], n: usize, level: Level, absorb: bool) -> Circuit {
    assert_eq!(theta.len(), dim(n - 1), "angle vector length must be 3^(n-1)");
    let m = MultiplexedRotation {
        level,
        target: TargetPosition::First,
        span: (0..n).collect(),
        angles: theta.to_vec(),
    };
    let mut inner = emit_multiplexed_z(&m, n).gates;
    if absorb {
        // the mux ends with GCX(q1=1) … GCX(q_{n-1}=1) on qutrit 0
        let keep = inner.len() - (n - 1);
        debug_assert!(inner[keep..].iter().all(|g| matches!(
            g,
            Gate::Gcx {
                value: 1,
                target: 0,
                ..
            }
        )));
        inner.truncate(keep);
    }
    let mut gates = Vec::with_capacity(inner.len() + 2);
    gates.push(ry(level, -FRAC_PI_2));
    gates.extend(inner);
    gates.push(ry(level, FRAC_PI_2));
    Circuit::from_gates(n, gates)
}

/// exp(−i σx01 ⊗ diag Θ). With `absorb` the result implements
/// compensator · exp(...), see `kak::absorption_compensator`.
pub fn emit_a(theta: &[f64], n: usize, absorb: bool) -> Circuit {
    sigma_x_factor(theta, n, Level::L01, absorb)
}

/// exp(−i σx12 ⊗ diag Θ), same absorption contract as `emit_a`.
pub fn emit_a1(theta: &[f64], n: usize, absorb: bool) -> Circuit {
    sigma_x_factor(theta, n, Level::L12, absorb)
}

/// exp(−i σz12 ⊗ diag Λ).
pub fn emit_a2(lambda: &[f64], n: usize) -> Circuit {
    let m = MultiplexedRotation {
        level: Level::L12,
        target: TargetPosition::First,
        span: (0..n).collect(),
        angles: lambda.to_vec(),
    };
    emit_multiplexed_z(&m, n)
}

/// exp(−i D ⊗ diag Λ) or exp(−i D̄ ⊗ diag Λ) on qutrits 0..n, exact phase.
pub fn emit_a3(lambda: &[f64], n: usize, variant: DVariant) -> Circuit {
    assert!(n >= 1);
    assert_eq!(lambda.len(), dim(n - 1), "angle vector length must be 3^(n-1)");
    let mut c = Circuit::new(n);
    if n == 1 {
        // D = −I/3 + 2σz01/3 + 2σz02/3 and D̄ = −I/3 + 2σz01/3 − 4σz02/3
        let t = lambda[0];
        let k02 = match variant {
            DVariant::D => 4.0 * t / 3.0,
            DVariant::DBar => -8.0 * t / 3.0,
        };
        c.push(Gate::GlobalPhase { phi: t / 3.0 });
        c.push(Gate::rz(Level::L01, 0, 4.0 * t / 3.0));
        c.push(Gate::rz(Level::L02, 0, k02));
        return c;
    }
    let last = n - 1;
    let b = lambda.len() / 3;
    let th = |m: usize, j: usize| lambda[j * 3 + m];
    let t4: Vec<f64> = (0..b).map(|j| (2.0 * th(2, j) - th(0, j) - th(1, j)) / 3.0).collect();
    let t5: Vec<f64> = (0..b).map(|j| (2.0 * th(1, j) - th(0, j) - th(2, j)) / 3.0).collect();
    let t6: Vec<f64> = (0..b).map(|j| (th(0, j) + th(1, j) + th(2, j)) / 3.0).collect();
    let m0 = match variant {
        DVariant::D => 0,
        DVariant::DBar => 2,
    };
    c.append(&emit_a3(&t6, n - 1, variant));
    let span: Vec<usize> = (1..n).collect();
    for (level, angles) in [(Level::L01, t5), (Level::L02, t4)] {
        let m = MultiplexedRotation {
            level,
            target: TargetPosition::Last,
            span: span.clone(),
            angles,
        };
        c.push(Gate::gcx(0, m0, last, level));
        c.append(&emit_multiplexed_z(&m, n));
        c.push(Gate::gcx(0, m0, last, level));
    }
    c
}

/// Raw emission of a factorization entry on n qutrits.
pub fn emit_nonlocal(kind: NonlocalKind, angles: &[f64], n: usize, absorb: bool) -> Circuit {
    match kind {
        NonlocalKind::A => emit_a(angles, n, absorb),
        NonlocalKind::A1 => emit_a1(angles, n, absorb),
        NonlocalKind::A2 => emit_a2(angles, n),
        NonlocalKind::A3 => emit_a3(angles, n, DVariant::D),
        NonlocalKind::A3Bar => emit_a3(angles, n, DVariant::DBar),
    }
}
