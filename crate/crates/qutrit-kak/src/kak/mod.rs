//! Recursive Cartan factorization of an n-qutrit unitary into nine
//! (n−1)-qutrit unitaries acting on qutrits 1..n and eight nonlocal factors
//! parameterized by real angle vectors.

mod stages;

pub use stages::{
    demux_l1, demux_l2, demux_l2bar, rearrange, stage1, stage2, Demux, StageFactors, StageTag, SHAPE_TOL,
};

use crate::numkernel::{det, require_unitary, ComplexMatrix, NumError, C64};
use crate::trit_algebra::{dim, group_shape_residual, GroupShape};
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum KakError {
    #[error(transparent)]
    Numeric(#[from] NumError),
    #[error("{stage}: block structure violated (residual {residual:.3e})")]
    Shape { stage: &'static str, residual: f64 },
    #[error("dimension {dim} is not 3^n with n >= 2")]
    BadDimension { dim: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum NonlocalKind {
    /// exp(−i σx01 ⊗ diag Θ)
    A,
    /// exp(−i σx12 ⊗ diag Θ)
    A1,
    /// exp(−i σz12 ⊗ diag Λ)
    A2,
    /// exp(−i D ⊗ diag Λ), D = diag(1, −1, −1)
    A3,
    /// exp(−i D̄ ⊗ diag Λ), D̄ = diag(−1, −1, 1)
    A3Bar,
}

impl NonlocalKind {
    pub fn label(self) -> &'static str {
        match self {
            NonlocalKind::A => "A",
            NonlocalKind::A1 => "A1",
            NonlocalKind::A2 => "A2",
            NonlocalKind::A3 => "A3",
            NonlocalKind::A3Bar => "A3bar",
        }
    }
}

/// Dense matrix of a nonlocal factor on n qutrits (leading qutrit is 0).
pub fn nonlocal_matrix(kind: NonlocalKind, angles: &[f64], n: usize) -> ComplexMatrix {
    let b = dim(n - 1);
    assert_eq!(angles.len(), b, "angle vector length must be 3^(n-1)");
    let diag3 = |signs: [f64; 3]| {
        let mut d = Vec::with_capacity(3 * b);
        for s in signs {
            d.extend(angles.iter().map(|a| C64::from_polar(1.0, -s * a)));
        }
        ComplexMatrix::from_diag(&d)
    };
    match kind {
        NonlocalKind::A => stages::cs_middle(angles, 0, 1, b),
        NonlocalKind::A1 => stages::cs_middle(angles, 1, 2, b),
        NonlocalKind::A2 => diag3([0.0, 1.0, -1.0]),
        NonlocalKind::A3 => diag3([1.0, -1.0, -1.0]),
        NonlocalKind::A3Bar => diag3([-1.0, -1.0, 1.0]),
    }
}

/// Signs (−1)^{number of digits equal to 1} over the 3^(n−1) configurations
/// of qutrits 1..n.
pub fn control_parity(n: usize) -> Vec<f64> {
    (0..dim(n - 1))
        .map(|mut j| {
            let mut s = 1.0;
            for _ in 0..n - 1 {
                if j % 3 == 1 {
                    s = -s;
                }
                j /= 3;
            }
            s
        })
        .collect()
}

/// Diagonal factor left over when the trailing GCX run of an A (A1)
/// emission is dropped: blockdiag(Z', I, I) (blockdiag(I, Z', I)).
pub fn absorption_compensator(kind: NonlocalKind, n: usize) -> Option<ComplexMatrix> {
    let block = match kind {
        NonlocalKind::A => 0,
        NonlocalKind::A1 => 1,
        _ => return None,
    };
    let b = dim(n - 1);
    let z = control_parity(n);
    let mut d = vec![C64::new(1.0, 0.0); 3 * b];
    for (k, s) in z.iter().enumerate() {
        d[block * b + k] = C64::new(*s, 0.0);
    }
    Some(ComplexMatrix::from_diag(&d))
}

#[derive(Debug, Clone)]
pub struct NonlocalFactor {
    pub kind: NonlocalKind,
    pub angles: Vec<f64>,
    /// The adjacent K already carries the compensator; this entry stands for
    /// compensator · exp(...).
    pub absorbed: bool,
}

impl NonlocalFactor {
    pub fn matrix(&self, n: usize) -> ComplexMatrix {
        let m = nonlocal_matrix(self.kind, &self.angles, n);
        match (self.absorbed, absorption_compensator(self.kind, n)) {
            (true, Some(g)) => g.matmul(&m),
            _ => m,
        }
    }
}

#[derive(Debug, Clone)]
pub enum Factor {
    /// I_3 ⊗ W
    K(ComplexMatrix),
    Nonlocal(NonlocalFactor),
}

/// M = e^{i·phase} · F_1 · F_2 ⋯ F_17 (matrix order).
#[derive(Debug, Clone)]
pub struct FactorizationNode {
    pub n: usize,
    pub phase: f64,
    pub factors: Vec<Factor>,
}

impl FactorizationNode {
    pub fn k_factors(&self) -> impl Iterator<Item = &ComplexMatrix> {
        self.factors.iter().filter_map(|f| match f {
            Factor::K(w) => Some(w),
            _ => None,
        })
    }

    pub fn nonlocal_factors(&self) -> impl Iterator<Item = &NonlocalFactor> {
        self.factors.iter().filter_map(|f| match f {
            Factor::Nonlocal(a) => Some(a),
            _ => None,
        })
    }

    pub fn factor_matrix(&self, f: &Factor) -> ComplexMatrix {
        match f {
            Factor::K(w) => ComplexMatrix::identity(3).kron(w),
            Factor::Nonlocal(a) => a.matrix(self.n),
        }
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        let mut m = ComplexMatrix::identity(dim(self.n)).scale(C64::from_polar(1.0, self.phase));
        for f in &self.factors {
            m = m.matmul(&self.factor_matrix(f));
        }
        m
    }

    /// Largest distance of an embedded K factor from the I_3 ⊗ W pattern.
    pub fn k_shape_residual(&self) -> f64 {
        self.k_factors()
            .map(|w| {
                let lifted = ComplexMatrix::identity(3).kron(w);
                group_shape_residual(&lifted, GroupShape::L3).max(w.unitarity_residual())
            })
            .fold(0.0, f64::max)
    }
}

/// Factorizes M (3^n × 3^n, n ≥ 2). With `absorb`, the A and A1 entries
/// stand for compensator · exp(...) and the compensators are folded into
/// the neighbouring K factors, so each saves its trailing GCX run.
pub fn factorize(m: &ComplexMatrix, absorb: bool) -> Result<FactorizationNode, KakError> {
    let d = require_unitary(m)?;
    let n = (1..=8)
        .find(|&k| dim(k) == d)
        .filter(|&k| k >= 2)
        .ok_or(KakError::BadDimension { dim: d })?;
    let phase = det(m)?.arg() / d as f64;
    let m = m.scale(C64::from_polar(1.0, -phase));

    let s1 = stage1(&m)?;
    let mut top = stage2(&s1.left)?;
    let mut bottom = stage2(&s1.right)?;
    // a zero-angle factor emits nothing, so there is no GCX to save
    let nonzero = |a: &[f64]| a.iter().any(|t| t.abs() > 1e-14);
    let absorb_a = absorb && nonzero(&s1.angles);
    let absorb_top = absorb && nonzero(&top.angles);
    let absorb_bottom = absorb && nonzero(&bottom.angles);
    {
        let ga = absorption_compensator(NonlocalKind::A, n).expect("A compensator");
        let g1 = absorption_compensator(NonlocalKind::A1, n).expect("A1 compensator");
        if absorb_top {
            top.left = top.left.matmul(&g1);
        }
        if absorb_a {
            top.right = top.right.matmul(&ga);
        }
        if absorb_bottom {
            bottom.left = bottom.left.matmul(&g1);
        }
    }
    let [k1, k2, k3, k4] = rearrange([&top.left, &top.right, &bottom.left, &bottom.right])?;
    let d1 = demux_l2bar(&k1)?;
    let d2 = demux_l2(&k2)?;
    let d3 = demux_l2bar(&k3)?;
    let (k7, a2, k8) = demux_l1(&k4)?;
    let d4 = demux_l2(&k8)?;

    let nl = |kind, angles: Vec<f64>, absorbed| Factor::Nonlocal(NonlocalFactor { kind, angles, absorbed });
    let factors = vec![
        Factor::K(d1.v),
        nl(NonlocalKind::A3Bar, d1.lambda, false),
        Factor::K(d1.w),
        nl(NonlocalKind::A1, top.angles, absorb_top),
        Factor::K(d2.v),
        nl(NonlocalKind::A3, d2.lambda, false),
        Factor::K(d2.w),
        nl(NonlocalKind::A, s1.angles, absorb_a),
        Factor::K(d3.v),
        nl(NonlocalKind::A3Bar, d3.lambda, false),
        Factor::K(d3.w),
        nl(NonlocalKind::A1, bottom.angles, absorb_bottom),
        Factor::K(k7),
        nl(NonlocalKind::A2, a2, false),
        Factor::K(d4.v),
        nl(NonlocalKind::A3, d4.lambda, false),
        Factor::K(d4.w),
    ];
    Ok(FactorizationNode { n, phase, factors })
}
