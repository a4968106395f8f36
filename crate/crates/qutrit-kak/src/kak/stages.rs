use super::KakError;
use crate::numkernel::{csd, unitary_eig, ComplexMatrix, C64, I, ONE};
use crate::trit_algebra::{group_shape_residual, GroupShape};
use std::f64::consts::FRAC_PI_2;

/// Block-shape tolerance for inputs that must already be block diagonal.
pub const SHAPE_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StageTag {
    /// exp(l) · exp(−i σx01 ⊗ diag Θ) · exp(l)
    First,
    /// exp(l1) · exp(−i σx12 ⊗ diag Θ) · exp(l1)
    Second,
}

#[derive(Debug, Clone)]
pub struct StageFactors {
    pub left: ComplexMatrix,
    pub angles: Vec<f64>,
    pub right: ComplexMatrix,
    pub tag: StageTag,
}

impl StageFactors {
    pub fn middle(&self) -> ComplexMatrix {
        let n = self.angles.len();
        match self.tag {
            StageTag::First => cs_middle(&self.angles, 0, 1, n),
            StageTag::Second => cs_middle(&self.angles, 1, 2, n),
        }
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.left.matmul(&self.middle()).matmul(&self.right)
    }
}

/// exp(−i σx^{ij} ⊗ diag Θ) on the leading qutrit; blocks of size len(Θ).
pub(crate) fn cs_middle(theta: &[f64], i: usize, j: usize, b: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::identity(3 * b);
    for (k, t) in theta.iter().enumerate() {
        let (s, c) = t.sin_cos();
        let (r, q) = (i * b + k, j * b + k);
        m[(r, r)] = C64::new(c, 0.0);
        m[(q, q)] = C64::new(c, 0.0);
        m[(r, q)] = C64::new(0.0, -s);
        m[(q, r)] = C64::new(0.0, -s);
    }
    m
}

/// Per-index phases turning [[C,−S],[S,C]] into [[C,−iS],[−iS,C]]:
/// [[C,−S],[S,C]] = diag(I, F) · [[C,−iS],[−iS,C]] · diag(I, F†), F = diag(f),
/// f = i unless θ is zero, where any phase works and 1 keeps K trivial.
fn cs_phase_fix(theta: &[f64]) -> Vec<C64> {
    theta.iter().map(|t| if t.abs() < 1e-14 { ONE } else { I }).collect()
}

/// Cosine-sine split with partition (b, 2b), CS middle put in −iS form.
pub fn stage1(u: &ComplexMatrix) -> Result<StageFactors, KakError> {
    let d = u.rows();
    if !d.is_multiple_of(3) || d < 9 {
        return Err(KakError::BadDimension { dim: d });
    }
    let b = d / 3;
    let r = csd(u, b, 2 * b)?;
    let mut f = cs_phase_fix(&r.theta);
    let f_conj: Vec<C64> = f.iter().map(|z| z.conj()).chain(std::iter::repeat_n(ONE, b)).collect();
    f.extend(std::iter::repeat_n(ONE, b));
    let left = ComplexMatrix::block_diag(&[&r.l1, &r.l2.scale_columns(&f)]);
    let right = ComplexMatrix::block_diag(&[&r.r1.adjoint(), &r.r2.adjoint().scale_rows(&f_conj)]);
    Ok(StageFactors {
        left,
        angles: r.theta,
        right,
        tag: StageTag::First,
    })
}

/// Splits an element blockdiag(P, Q) of exp(l) through a CSD of Q.
pub fn stage2(l: &ComplexMatrix) -> Result<StageFactors, KakError> {
    let d = l.rows();
    if !d.is_multiple_of(3) || d < 9 {
        return Err(KakError::BadDimension { dim: d });
    }
    let residual = group_shape_residual(l, GroupShape::L);
    if residual > SHAPE_TOL {
        return Err(KakError::Shape {
            stage: "stage2 input",
            residual,
        });
    }
    let b = d / 3;
    let p = l.block(0, 0, b, b);
    let q = l.block(b, b, 2 * b, 2 * b);
    let r = csd(&q, b, b)?;
    let f = cs_phase_fix(&r.theta);
    let f_conj: Vec<C64> = f.iter().map(|z| z.conj()).collect();
    let left = ComplexMatrix::block_diag(&[&p, &r.l1, &r.l2.scale_columns(&f)]);
    let right = ComplexMatrix::block_diag(&[
        &ComplexMatrix::identity(b),
        &r.r1.adjoint(),
        &r.r2.adjoint().scale_rows(&f_conj),
    ]);
    Ok(StageFactors {
        left,
        angles: r.theta,
        right,
        tag: StageTag::Second,
    })
}

fn three_blocks(k: &ComplexMatrix, what: &'static str) -> Result<[ComplexMatrix; 3], KakError> {
    let residual = group_shape_residual(k, GroupShape::L1);
    if residual > SHAPE_TOL {
        return Err(KakError::Shape { stage: what, residual });
    }
    let b = k.rows() / 3;
    Ok([k.block(0, 0, b, b), k.block(b, b, b, b), k.block(2 * b, 2 * b, b, b)])
}

fn join(blocks: [&ComplexMatrix; 3]) -> ComplexMatrix {
    ComplexMatrix::block_diag(&blocks)
}

/// Pulls block factors through the neighbouring CS middles so that
/// K1'' ∈ exp(l2bar), K2'' ∈ exp(l2), K3'' ∈ exp(l2bar) and K4'' stays in
/// exp(l1). The product K1'·A1·K2'·A·K3'·A1·K4' is unchanged.
pub fn rearrange(k: [&ComplexMatrix; 4]) -> Result<[ComplexMatrix; 4], KakError> {
    let [u1, u2, u3, u4] = [
        three_blocks(k[0], "rearrange K1'")?,
        three_blocks(k[1], "rearrange K2'")?,
        three_blocks(k[2], "rearrange K3'")?,
        three_blocks(k[3], "rearrange K4'")?,
    ];
    let k1 = join([&u1[1], &u1[1], &u1[2]]);
    let x = u1[1].adjoint_mul(&u1[0]).matmul(&u2[0]);
    let k2 = join([&x, &u2[1], &u2[1]]);
    let z = u2[1].adjoint_mul(&u2[2]).matmul(&u3[2]);
    let k3 = join([&u3[1], &u3[1], &z]);
    let y = u3[1].adjoint_mul(&u3[0]).matmul(&u4[0]);
    let k4 = join([&y, &u4[1], &u4[2]]);
    Ok([k1, k2, k3, k4])
}

/// K = (I ⊗ v) · middle(lambda) · (I ⊗ w)
#[derive(Debug, Clone)]
pub struct Demux {
    pub v: ComplexMatrix,
    pub lambda: Vec<f64>,
    pub w: ComplexMatrix,
}

/// Solves P·Q† = V e^{−2iΛ} V†, Λ ∈ (−π/2, π/2]; returns (V, Λ, e^{iΛ}V†P).
fn ratio_split(p: &ComplexMatrix, q: &ComplexMatrix) -> Result<Demux, KakError> {
    let e = unitary_eig(&p.matmul(&q.adjoint()))?;
    let lambda: Vec<f64> = e
        .phases
        .iter()
        .map(|phi| {
            let l = -phi / 2.0;
            if l <= -FRAC_PI_2 + 1e-15 {
                l + std::f64::consts::PI
            } else {
                l
            }
        })
        .collect();
    let s: Vec<C64> = lambda.iter().map(|l| C64::from_polar(1.0, *l)).collect();
    let w = e.vectors.adjoint_mul(p).scale_rows(&s);
    Ok(Demux {
        v: e.vectors,
        lambda,
        w,
    })
}

fn require_equal(a: &ComplexMatrix, b: &ComplexMatrix, what: &'static str) -> Result<(), KakError> {
    let residual = a.distance(b);
    if residual > SHAPE_TOL {
        return Err(KakError::Shape { stage: what, residual });
    }
    Ok(())
}

/// blockdiag(U1, U2, U3) = (I ⊗ V) · exp(−i σz12 ⊗ diag Λ) · blockdiag(V†U1, W, W).
pub fn demux_l1(k: &ComplexMatrix) -> Result<(ComplexMatrix, Vec<f64>, ComplexMatrix), KakError> {
    let [u1, u2, u3] = three_blocks(k, "demux_l1 input")?;
    let Demux { v, lambda, w } = ratio_split(&u2, &u3)?;
    let k8 = join([&v.adjoint_mul(&u1), &w, &w]);
    Ok((v, lambda, k8))
}

/// blockdiag(P, Q, Q) = (I ⊗ V) · exp(−i D ⊗ diag Λ) · (I ⊗ W).
pub fn demux_l2(k: &ComplexMatrix) -> Result<Demux, KakError> {
    let [p, q, q2] = three_blocks(k, "demux_l2 input")?;
    require_equal(&q, &q2, "demux_l2 input")?;
    ratio_split(&p, &q)
}

/// blockdiag(Q, Q, P) = (I ⊗ V) · exp(−i D̄ ⊗ diag Λ) · (I ⊗ W).
pub fn demux_l2bar(k: &ComplexMatrix) -> Result<Demux, KakError> {
    let [q, q2, p] = three_blocks(k, "demux_l2bar input")?;
    require_equal(&q, &q2, "demux_l2bar input")?;
    ratio_split(&p, &q)
}
