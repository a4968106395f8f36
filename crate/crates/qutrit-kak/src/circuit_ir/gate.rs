use crate::numkernel::{ComplexMatrix, C64};
use crate::trit_algebra::{dim, generator, rotation, Axis, GeneratorId, Level};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Gate {
    Rotation {
        axis: Axis,
        level: Level,
        qutrit: usize,
        theta: f64,
    },
    LocalX {
        level: Level,
        qutrit: usize,
    },
    Gcx {
        control: usize,
        value: usize,
        target: usize,
        level: Level,
    },
    Cinc {
        control: usize,
        value: usize,
        target: usize,
    },
    GlobalPhase {
        phi: f64,
    },
}

impl Gate {
    pub fn rz(level: Level, qutrit: usize, theta: f64) -> Gate {
        Gate::Rotation {
            axis: Axis::Z,
            level,
            qutrit,
            theta,
        }
    }

    pub fn gcx(control: usize, value: usize, target: usize, level: Level) -> Gate {
        Gate::Gcx {
            control,
            value,
            target,
            level,
        }
    }

    pub fn is_two_qutrit(&self) -> bool {
        matches!(self, Gate::Gcx { .. } | Gate::Cinc { .. })
    }

    pub fn qutrits(&self) -> Vec<usize> {
        match *self {
            Gate::Rotation { qutrit, .. } | Gate::LocalX { qutrit, .. } => vec![qutrit],
            Gate::Gcx { control, target, .. } | Gate::Cinc { control, target, .. } => {
                vec![control, target]
            }
            Gate::GlobalPhase { .. } => Vec::new(),
        }
    }

    /// Renumbers qutrits by adding `offset`.
    pub fn shifted(&self, offset: usize) -> Gate {
        let mut g = *self;
        match &mut g {
            Gate::Rotation { qutrit, .. } | Gate::LocalX { qutrit, .. } => *qutrit += offset,
            Gate::Gcx { control, target, .. } | Gate::Cinc { control, target, .. } => {
                *control += offset;
                *target += offset;
            }
            Gate::GlobalPhase { .. } => {}
        }
        g
    }

    /// 3×3 operator on the acting (target) qutrit.
    pub fn local_matrix(&self) -> ComplexMatrix {
        match *self {
            Gate::Rotation { axis, level, theta, .. } => rotation(axis, level, theta),
            Gate::LocalX { level, .. } | Gate::Gcx { level, .. } => generator(GeneratorId::local_x(level)),
            Gate::Cinc { .. } => generator(GeneratorId::INC),
            Gate::GlobalPhase { phi } => ComplexMatrix::identity(3).scale(C64::from_polar(1.0, phi)),
        }
    }

    pub fn validate(&self, width: usize) -> Result<(), super::CircuitError> {
        use super::CircuitError;
        for q in self.qutrits() {
            if q >= width {
                return Err(CircuitError::QutritOutOfRange { index: q, width });
            }
        }
        match *self {
            Gate::Gcx {
                control, value, target, ..
            }
            | Gate::Cinc { control, value, target } => {
                if control == target {
                    return Err(CircuitError::ControlIsTarget { index: control });
                }
                if value > 2 {
                    return Err(CircuitError::BadControlValue { value });
                }
            }
            Gate::Rotation { theta, .. } if !theta.is_finite() => return Err(CircuitError::NonFiniteAngle),
            Gate::GlobalPhase { phi } if !phi.is_finite() => return Err(CircuitError::NonFiniteAngle),
            _ => {}
        }
        Ok(())
    }

    /// Dense 3^width matrix of this gate alone.
    pub fn matrix(&self, width: usize) -> ComplexMatrix {
        let mut m = ComplexMatrix::identity(dim(width));
        apply_gate(&mut m, width, self);
        m
    }
}

/// Applies `g` to the rows of `m` in place (m ← G·m).
pub fn apply_gate(m: &mut ComplexMatrix, width: usize, g: &Gate) {
    match *g {
        Gate::GlobalPhase { phi } => {
            let s = C64::from_polar(1.0, phi);
            for z in m.data_mut() {
                *z *= s;
            }
        }
        Gate::Rotation { qutrit, .. } | Gate::LocalX { qutrit, .. } => {
            apply_local(m, width, qutrit, None, &g.local_matrix())
        }
        Gate::Gcx {
            control, value, target, ..
        }
        | Gate::Cinc { control, value, target } => {
            apply_local(m, width, target, Some((control, value)), &g.local_matrix())
        }
    }
}

fn apply_local(m: &mut ComplexMatrix, width: usize, target: usize, control: Option<(usize, usize)>, u: &ComplexMatrix) {
    let d = dim(width);
    let cols = m.cols();
    let stride = dim(width - 1 - target);
    let u = [
        [u[(0, 0)], u[(0, 1)], u[(0, 2)]],
        [u[(1, 0)], u[(1, 1)], u[(1, 2)]],
        [u[(2, 0)], u[(2, 1)], u[(2, 2)]],
    ];
    let data = m.data_mut();
    for base in 0..d {
        if !(base / stride).is_multiple_of(3) {
            continue;
        }
        if let Some((c, v)) = control {
            if (base / dim(width - 1 - c)) % 3 != v {
                continue;
            }
        }
        let rows = [base, base + stride, base + 2 * stride];
        for col in 0..cols {
            let x = [
                data[rows[0] * cols + col],
                data[rows[1] * cols + col],
                data[rows[2] * cols + col],
            ];
            for a in 0..3 {
                data[rows[a] * cols + col] = u[a][0] * x[0] + u[a][1] * x[1] + u[a][2] * x[2];
            }
        }
    }
}
