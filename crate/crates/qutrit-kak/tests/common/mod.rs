#![allow(dead_code)]

use qutrit_kak::circuit_ir::{Circuit, Gate};
use qutrit_kak::numkernel::{hermitian_eig, ComplexMatrix, C64};
use qutrit_kak::trit_algebra::{generator, Axis, GeneratorId, Level};
use std::f64::consts::{FRAC_PI_2, PI};

pub fn real(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// exp(−i H) for Hermitian H, through a Hermitian eigendecomposition.
pub fn expm_hermitian(h: &ComplexMatrix) -> ComplexMatrix {
    let (vals, v) = hermitian_eig(h).expect("hermitian");
    let phases: Vec<f64> = vals.iter().map(|l| -l).collect();
    v.matmul(&ComplexMatrix::phase_diag(&phases)).matmul(&v.adjoint())
}

/// Σ_k c_k G_k for single-qutrit generators.
pub fn combo(terms: &[(f64, GeneratorId)]) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(3, 3);
    for (c, g) in terms {
        m = m.add(&generator(*g).scale(real(*c)));
    }
    m
}

/// exp(−i G ⊗ H) on two qutrits.
pub fn two_qutrit_exp(g: GeneratorId, h: &ComplexMatrix) -> ComplexMatrix {
    expm_hermitian(&generator(g).kron(h))
}

pub fn rot(axis: Axis, level: Level, qutrit: usize, theta: f64) -> Gate {
    Gate::Rotation {
        axis,
        level,
        qutrit,
        theta,
    }
}

pub fn rz(level: Level, qutrit: usize, theta: f64) -> Gate {
    rot(Axis::Z, level, qutrit, theta)
}

/// One printed two-qutrit circuit together with its defining exponential
/// and the diagonal angle vector our emitters consume.
pub struct Golden {
    pub name: &'static str,
    pub circuit: Circuit,
    pub oracle: ComplexMatrix,
    pub diag: Vec<f64>,
}

pub fn golden_a(t1: f64, t2: f64, t3: f64) -> Golden {
    let (p1, p2, p3) = (2.0 * t3 - t1 - t2, t1 + 2.0 * t2 + PI / 3.0, 2.0 * t1 + t2);
    let gates = vec![
        Gate::GlobalPhase { phi: PI / 3.0 },
        rot(Axis::Y, Level::L01, 0, -FRAC_PI_2),
        rz(Level::L01, 0, p1),
        Gate::gcx(1, 2, 0, Level::L01),
        rz(Level::L01, 0, p2),
        rz(Level::L02, 0, -2.0 * PI / 3.0),
        rot(Axis::X, Level::L01, 0, PI),
        Gate::gcx(1, 0, 0, Level::L01),
        rz(Level::L01, 0, p3),
        Gate::gcx(1, 1, 0, Level::L01),
        rot(Axis::Y, Level::L01, 0, FRAC_PI_2),
    ];
    let h = combo(&[(t1, GeneratorId::SZ01), (t2, GeneratorId::SZ02), (t3, GeneratorId::I3)]);
    Golden {
        name: "A",
        circuit: Circuit::from_gates(2, gates),
        oracle: two_qutrit_exp(GeneratorId::SX01, &h),
        diag: vec![t1 + t2 + t3, t3 - t1, t3 - t2],
    }
}

pub fn golden_a1(t4: f64, t5: f64, t6: f64) -> Golden {
    let (p4, p5, p6) = (2.0 * t6 - t4 - t5, t4 + 2.0 * t5 + PI / 3.0, 2.0 * t4 + t5);
    let gates = vec![
        Gate::GlobalPhase { phi: PI / 3.0 },
        rot(Axis::Y, Level::L12, 0, -FRAC_PI_2),
        rz(Level::L12, 0, p4),
        Gate::gcx(1, 2, 0, Level::L12),
        rz(Level::L12, 0, p5),
        rz(Level::L01, 0, 2.0 * PI / 3.0),
        rot(Axis::X, Level::L12, 0, PI),
        Gate::gcx(1, 0, 0, Level::L12),
        rz(Level::L12, 0, p6),
        Gate::gcx(1, 1, 0, Level::L12),
        rot(Axis::Y, Level::L12, 0, FRAC_PI_2),
    ];
    let h = combo(&[(t4, GeneratorId::SZ01), (t5, GeneratorId::SZ02), (t6, GeneratorId::I3)]);
    Golden {
        name: "A1",
        circuit: Circuit::from_gates(2, gates),
        oracle: two_qutrit_exp(GeneratorId::SX12, &h),
        diag: vec![t4 + t5 + t6, t6 - t4, t6 - t5],
    }
}

pub fn golden_a2(t7: f64, t8: f64, t9: f64) -> Golden {
    let (p7, p8, p9) = (2.0 * t7 - 2.0 * t8, 2.0 * t8 + t9 + PI / 3.0, 2.0 * t8 - t9);
    let gates = vec![
        Gate::GlobalPhase { phi: PI / 3.0 },
        rz(Level::L12, 0, p7),
        Gate::gcx(1, 2, 0, Level::L12),
        rz(Level::L12, 0, p8),
        rz(Level::L01, 0, 2.0 * PI / 3.0),
        rot(Axis::X, Level::L12, 0, PI),
        Gate::gcx(1, 0, 0, Level::L12),
        rz(Level::L12, 0, p9),
        Gate::gcx(1, 1, 0, Level::L12),
    ];
    let h = combo(&[(t7, GeneratorId::I3), (t8, GeneratorId::D), (t9, GeneratorId::SZ12)]);
    Golden {
        name: "A2",
        circuit: Circuit::from_gates(2, gates),
        oracle: two_qutrit_exp(GeneratorId::SZ12, &h),
        diag: vec![t7 + t8, t7 - t8 + t9, t7 - t8 - t9],
    }
}

fn d_sandwich(m: usize, q0_01: f64, q1_01: f64, q0_02: f64, q1_02: f64, phase: f64, cinc: bool) -> Vec<Gate> {
    let mut gates = vec![
        Gate::GlobalPhase { phi: phase },
        Gate::gcx(0, m, 1, Level::L01),
        rz(Level::L01, 0, q0_01),
        rz(Level::L01, 1, q1_01),
    ];
    if cinc {
        gates.push(Gate::Cinc {
            control: 0,
            value: m,
            target: 1,
        });
    } else {
        gates.push(Gate::gcx(0, m, 1, Level::L01));
        gates.push(Gate::gcx(0, m, 1, Level::L02));
    }
    gates.extend([
        rz(Level::L02, 0, q0_02),
        rz(Level::L02, 1, q1_02),
        Gate::gcx(0, m, 1, Level::L02),
    ]);
    gates
}

pub fn golden_a3(t10: f64, t11: f64, t12: f64, cinc: bool) -> Golden {
    let p10 = 4.0 * t10 / 3.0 - 4.0 * t11 / 9.0;
    let p11 = -2.0 * t12 - 4.0 * t11 / 3.0;
    let p12 = 2.0 * t12 - 4.0 * t11 / 3.0;
    let gates = d_sandwich(0, p10, p12, p10, p11, p10 / 4.0, cinc);
    let h = combo(&[(t10, GeneratorId::I3), (t11, GeneratorId::D), (t12, GeneratorId::SZ12)]);
    Golden {
        name: if cinc { "A3 (CINC)" } else { "A3" },
        circuit: Circuit::from_gates(2, gates),
        oracle: two_qutrit_exp(GeneratorId::D, &h),
        diag: vec![t10 + t11, t10 - t11 + t12, t10 - t11 - t12],
    }
}

pub fn golden_a3bar(t13: f64, t14: f64, t15: f64, cinc: bool) -> Golden {
    let p13 = 4.0 * t13 / 3.0 - 4.0 * t14 / 9.0;
    let p14 = 8.0 * t14 / 3.0;
    let p15 = -2.0 * t15 - 4.0 * t14 / 3.0;
    let gates = d_sandwich(2, p13, p15, -2.0 * p13, p14, p13 / 4.0, cinc);
    let h = combo(&[
        (t13, GeneratorId::I3),
        (t14, GeneratorId::DBAR),
        (t15, GeneratorId::SZ01),
    ]);
    Golden {
        name: if cinc { "A3bar (CINC)" } else { "A3bar" },
        circuit: Circuit::from_gates(2, gates),
        oracle: two_qutrit_exp(GeneratorId::DBAR, &h),
        diag: vec![t13 - t14 + t15, t13 - t14 - t15, t13 + t14],
    }
}

pub fn all_golden(t: [f64; 15]) -> Vec<Golden> {
    vec![
        golden_a(t[0], t[1], t[2]),
        golden_a1(t[3], t[4], t[5]),
        golden_a2(t[6], t[7], t[8]),
        golden_a3(t[9], t[10], t[11], false),
        golden_a3(t[9], t[10], t[11], true),
        golden_a3bar(t[12], t[13], t[14], false),
        golden_a3bar(t[12], t[13], t[14], true),
    ]
}
