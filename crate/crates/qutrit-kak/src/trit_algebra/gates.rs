use crate::numkernel::{ComplexMatrix, C64, I, ONE, ZERO};
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Axis {
    X,
    Y,
    Z,
}

/// Two-level subspace {|i⟩, |j⟩} of a qutrit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Level {
    L01,
    L02,
    L12,
}

impl Level {
    pub const ALL: [Level; 3] = [Level::L01, Level::L02, Level::L12];

    pub fn pair(self) -> (usize, usize) {
        match self {
            Level::L01 => (0, 1),
            Level::L02 => (0, 2),
            Level::L12 => (1, 2),
        }
    }

    /// Swaps the two levels of a basis value, leaving the third fixed.
    pub fn swap(self, v: usize) -> usize {
        let (i, j) = self.pair();
        if v == i {
            j
        } else if v == j {
            i
        } else {
            v
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Level::L01 => "01",
            Level::L02 => "02",
            Level::L12 => "12",
        }
    }

    pub fn parse(s: &str) -> Option<Level> {
        match s {
            "01" => Some(Level::L01),
            "02" => Some(Level::L02),
            "12" => Some(Level::L12),
            _ => None,
        }
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl Axis {
    pub fn label(self) -> &'static str {
        match self {
            Axis::X => "x",
            Axis::Y => "y",
            Axis::Z => "z",
        }
    }

    pub fn parse(s: &str) -> Option<Axis> {
        match s {
            "x" => Some(Axis::X),
            "y" => Some(Axis::Y),
            "z" => Some(Axis::Z),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GeneratorId {
    SX01,
    SX02,
    SX12,
    SY01,
    SY02,
    SY12,
    SZ01,
    SZ02,
    SZ12,
    D,
    DBAR,
    I3,
    X01,
    X02,
    X12,
    INC,
}

impl GeneratorId {
    pub const ALL: [GeneratorId; 16] = [
        GeneratorId::SX01,
        GeneratorId::SX02,
        GeneratorId::SX12,
        GeneratorId::SY01,
        GeneratorId::SY02,
        GeneratorId::SY12,
        GeneratorId::SZ01,
        GeneratorId::SZ02,
        GeneratorId::SZ12,
        GeneratorId::D,
        GeneratorId::DBAR,
        GeneratorId::I3,
        GeneratorId::X01,
        GeneratorId::X02,
        GeneratorId::X12,
        GeneratorId::INC,
    ];

    pub fn sigma(axis: Axis, level: Level) -> GeneratorId {
        use GeneratorId::*;
        match (axis, level) {
            (Axis::X, Level::L01) => SX01,
            (Axis::X, Level::L02) => SX02,
            (Axis::X, Level::L12) => SX12,
            (Axis::Y, Level::L01) => SY01,
            (Axis::Y, Level::L02) => SY02,
            (Axis::Y, Level::L12) => SY12,
            (Axis::Z, Level::L01) => SZ01,
            (Axis::Z, Level::L02) => SZ02,
            (Axis::Z, Level::L12) => SZ12,
        }
    }

    pub fn local_x(level: Level) -> GeneratorId {
        match level {
            Level::L01 => GeneratorId::X01,
            Level::L02 => GeneratorId::X02,
            Level::L12 => GeneratorId::X12,
        }
    }
}

fn pauli(axis: Axis, level: Level) -> ComplexMatrix {
    let (i, j) = level.pair();
    let mut m = ComplexMatrix::zeros(3, 3);
    match axis {
        Axis::X => {
            m[(i, j)] = ONE;
            m[(j, i)] = ONE;
        }
        Axis::Y => {
            m[(i, j)] = -I;
            m[(j, i)] = I;
        }
        Axis::Z => {
            m[(i, i)] = ONE;
            m[(j, j)] = -ONE;
        }
    }
    m
}

fn transposition(level: Level) -> ComplexMatrix {
    ComplexMatrix::from_fn(3, 3, |r, c| if level.swap(c) == r { ONE } else { ZERO })
}

fn real_diag(d: [f64; 3]) -> ComplexMatrix {
    ComplexMatrix::from_diag(&d.map(|x| C64::new(x, 0.0)))
}

/// The fixed 3×3 constant for a generator tag.
pub fn generator(id: GeneratorId) -> ComplexMatrix {
    use GeneratorId::*;
    match id {
        SX01 => pauli(Axis::X, Level::L01),
        SX02 => pauli(Axis::X, Level::L02),
        SX12 => pauli(Axis::X, Level::L12),
        SY01 => pauli(Axis::Y, Level::L01),
        SY02 => pauli(Axis::Y, Level::L02),
        SY12 => pauli(Axis::Y, Level::L12),
        SZ01 => pauli(Axis::Z, Level::L01),
        SZ02 => pauli(Axis::Z, Level::L02),
        SZ12 => pauli(Axis::Z, Level::L12),
        D => real_diag([1.0, -1.0, -1.0]),
        DBAR => real_diag([-1.0, -1.0, 1.0]),
        I3 => ComplexMatrix::identity(3),
        X01 => transposition(Level::L01),
        X02 => transposition(Level::L02),
        X12 => transposition(Level::L12),
        INC => transposition(Level::L02).matmul(&transposition(Level::L01)),
    }
}

/// exp(−i·θ/2·σ_axis^{ij}) in closed form.
pub fn rotation(axis: Axis, level: Level, theta: f64) -> ComplexMatrix {
    let (i, j) = level.pair();
    let (s, c) = (theta / 2.0).sin_cos();
    let mut m = ComplexMatrix::identity(3);
    let (a, b, cc, d) = match axis {
        Axis::X => (C64::new(c, 0.0), C64::new(0.0, -s), C64::new(0.0, -s), C64::new(c, 0.0)),
        Axis::Y => (C64::new(c, 0.0), C64::new(-s, 0.0), C64::new(s, 0.0), C64::new(c, 0.0)),
        Axis::Z => (C64::new(c, -s), ZERO, ZERO, C64::new(c, s)),
    };
    m[(i, i)] = a;
    m[(i, j)] = b;
    m[(j, i)] = cc;
    m[(j, j)] = d;
    m
}

pub fn dim(n: usize) -> usize {
    3usize.pow(n as u32)
}

/// Digit of qutrit `q` in basis index `idx` of an n-qutrit register.
pub fn digit(idx: usize, n: usize, q: usize) -> usize {
    (idx / dim(n - 1 - q)) % 3
}

/// I_{3^t} ⊗ g ⊗ I_{3^{n−t−1}}.
pub fn embed_local(g: &ComplexMatrix, n: usize, t: usize) -> Result<ComplexMatrix, AlgebraError> {
    if t >= n {
        return Err(AlgebraError::QutritOutOfRange { index: t, width: n });
    }
    Ok(ComplexMatrix::identity(dim(t))
        .kron(g)
        .kron(&ComplexMatrix::identity(dim(n - t - 1))))
}

/// Applies g on qutrit t iff qutrit c reads m.
pub fn controlled_local(
    n: usize,
    c: usize,
    m: usize,
    t: usize,
    g: &ComplexMatrix,
) -> Result<ComplexMatrix, AlgebraError> {
    if c == t {
        return Err(AlgebraError::ControlIsTarget { index: c });
    }
    for q in [c, t] {
        if q >= n {
            return Err(AlgebraError::QutritOutOfRange { index: q, width: n });
        }
    }
    if m > 2 {
        return Err(AlgebraError::BadControlValue { value: m });
    }
    let d = dim(n);
    let stride = dim(n - 1 - t);
    Ok(ComplexMatrix::from_fn(d, d, |r, col| {
        if digit(col, n, c) != m {
            return if r == col { ONE } else { ZERO };
        }
        let (tr, tc) = (digit(r, n, t), digit(col, n, t));
        if r - tr * stride + tc * stride != col {
            return ZERO;
        }
        g[(tr, tc)]
    }))
}

pub fn gcx_matrix(n: usize, c: usize, m: usize, t: usize, level: Level) -> Result<ComplexMatrix, AlgebraError> {
    controlled_local(n, c, m, t, &generator(GeneratorId::local_x(level)))
}

pub fn cinc_matrix(n: usize, c: usize, m: usize, t: usize) -> Result<ComplexMatrix, AlgebraError> {
    controlled_local(n, c, m, t, &generator(GeneratorId::INC))
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("qutrit index {index} out of range for width {width}")]
    QutritOutOfRange { index: usize, width: usize },
    #[error("control and target coincide at qutrit {index}")]
    ControlIsTarget { index: usize },
    #[error("control value {value} is not a qutrit level")]
    BadControlValue { value: usize },
    #[error("matrix dimension {actual} does not match 3^{n}")]
    DimensionMismatch { actual: usize, n: usize },
}
