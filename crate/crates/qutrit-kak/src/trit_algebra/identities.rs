use super::gates::{
    cinc_matrix, controlled_local, embed_local, gcx_matrix, generator, rotation, Axis, GeneratorId, Level,
};
use crate::numkernel::{ComplexMatrix, C64};
use serde::Serialize;
use std::f64::consts::PI;

/// X^{ij} = e^{i·phase} · (product of rotations), rotations listed in
/// application order.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalXExpansion {
    pub phase: f64,
    pub rotations: Vec<(Axis, Level, f64)>,
}

impl LocalXExpansion {
    pub fn matrix(&self) -> ComplexMatrix {
        let mut m = ComplexMatrix::identity(3);
        for (axis, level, theta) in &self.rotations {
            m = rotation(*axis, *level, *theta).matmul(&m);
        }
        m.scale(C64::from_polar(1.0, self.phase))
    }
}

pub fn local_x_expansion(level: Level) -> LocalXExpansion {
    match level {
        Level::L01 => LocalXExpansion {
            phase: PI / 3.0,
            rotations: vec![
                (Axis::Z, Level::L01, PI / 3.0),
                (Axis::Z, Level::L02, -2.0 * PI / 3.0),
                (Axis::X, Level::L01, PI),
            ],
        },
        Level::L12 => LocalXExpansion {
            phase: PI / 3.0,
            rotations: vec![
                (Axis::Z, Level::L12, PI / 3.0),
                (Axis::Z, Level::L01, 2.0 * PI / 3.0),
                (Axis::X, Level::L12, PI),
            ],
        },
        Level::L02 => {
            let a = local_x_expansion(Level::L01);
            let b = local_x_expansion(Level::L12);
            let mut rotations = a.rotations.clone();
            rotations.extend(b.rotations.iter().cloned());
            rotations.extend(a.rotations.iter().cloned());
            LocalXExpansion {
                phase: 2.0 * a.phase + b.phase,
                rotations,
            }
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub cases: usize,
    pub max_residual: f64,
    pub passed: bool,
}

const IDENTITY_TOL: f64 = 1e-12;

struct Collector {
    checks: Vec<IdentityCheck>,
}

impl Collector {
    fn record(&mut self, name: &str, residuals: impl IntoIterator<Item = f64>) {
        let (mut cases, mut worst) = (0, 0.0f64);
        for r in residuals {
            cases += 1;
            worst = worst.max(r);
        }
        self.checks.push(IdentityCheck {
            name: name.to_string(),
            cases,
            max_residual: worst,
            passed: worst < IDENTITY_TOL,
        });
    }
}

fn placements(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|c| (0..n).filter(move |t| *t != c).map(move |t| (c, t)))
        .collect()
}

/// Exact-equality checks of the single-qutrit and controlled-gate identities.
pub fn identity_suite() -> Vec<IdentityCheck> {
    let mut col = Collector { checks: Vec::new() };
    let thetas: Vec<f64> = (0..20).map(|k| -3.1 + 0.337 * k as f64).collect();

    col.record(
        "Ry(-pi/2) Rx(t) Ry(pi/2) = Rz(t)",
        Level::ALL.iter().flat_map(|&l| {
            thetas.iter().map(move |&t| {
                rotation(Axis::Y, l, -PI / 2.0)
                    .matmul(&rotation(Axis::X, l, t))
                    .matmul(&rotation(Axis::Y, l, PI / 2.0))
                    .distance(&rotation(Axis::Z, l, t))
            })
        }),
    );

    let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let mut res = Vec::new();
    for level in Level::ALL {
        for (c, t) in placements(2) {
            let x = embed_local(&generator(GeneratorId::local_x(level)), 2, t).unwrap();
            for [m, m1, m2] in perms {
                let lhs = gcx_matrix(2, c, m, t, level)
                    .unwrap()
                    .matmul(&gcx_matrix(2, c, m1, t, level).unwrap());
                let rhs = gcx_matrix(2, c, m2, t, level).unwrap().matmul(&x);
                res.push(lhs.distance(&rhs));
            }
        }
    }
    col.record("GCX(m) GCX(m') = GCX(m'') X", res);

    let mut res = Vec::new();
    for n in [2, 3] {
        for (c, t) in placements(n) {
            for m in 0..3 {
                let lhs = cinc_matrix(n, c, m, t).unwrap();
                let rhs = gcx_matrix(n, c, m, t, Level::L02)
                    .unwrap()
                    .matmul(&gcx_matrix(n, c, m, t, Level::L01).unwrap());
                res.push(lhs.distance(&rhs));
            }
        }
    }
    col.record("CINC = GCX(02) GCX(01)", res);

    for level in Level::ALL {
        let e = local_x_expansion(level);
        col.record(
            &format!("X{level} rotation expansion"),
            [e.matrix().distance(&generator(GeneratorId::local_x(level)))],
        );
    }

    let sz01 = generator(GeneratorId::SZ01);
    let sz02 = generator(GeneratorId::SZ02);
    let id = ComplexMatrix::identity(3);
    let lin = |a: f64, b: f64, c: f64| {
        id.scale(C64::new(a, 0.0))
            .add(&sz01.scale(C64::new(b, 0.0)))
            .add(&sz02.scale(C64::new(c, 0.0)))
    };
    col.record(
        "D and Dbar in the sigma_z basis",
        [
            lin(-1.0 / 3.0, 2.0 / 3.0, 2.0 / 3.0).distance(&generator(GeneratorId::D)),
            lin(-1.0 / 3.0, 2.0 / 3.0, -4.0 / 3.0).distance(&generator(GeneratorId::DBAR)),
        ],
    );

    col.record(
        "rotation period 4pi",
        Level::ALL.iter().flat_map(|&l| {
            [Axis::X, Axis::Y, Axis::Z].into_iter().flat_map(move |a| {
                (0..5).map(move |k| {
                    let t = 0.9 * k as f64 - 1.7;
                    rotation(a, l, t + 4.0 * PI).distance(&rotation(a, l, t))
                })
            })
        }),
    );

    let mut res = Vec::new();
    for (c, t) in placements(3) {
        let g = controlled_local(3, c, 1, t, &generator(GeneratorId::X12)).unwrap();
        res.push(g.matmul(&g).distance(&ComplexMatrix::identity(27)));
    }
    col.record("GCX involution", res);
    col.checks
}
