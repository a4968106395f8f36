use super::matrix::{
    complete_basis, dot, from_columns, orthonormalize_against, vec_norm, ComplexMatrix, C64, ONE, ZERO,
};
use super::NumError;
use std::f64::consts::PI;

pub const UNITARITY_TOL: f64 = 1e-10;
const HERMITIAN_TOL: f64 = 1e-10;
const MAX_SWEEPS: usize = 60;

pub(crate) fn require_square(m: &ComplexMatrix) -> Result<usize, NumError> {
    if !m.is_square() {
        return Err(NumError::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    if !m.is_finite() {
        return Err(NumError::NonFinite);
    }
    Ok(m.rows())
}

pub fn require_unitary(m: &ComplexMatrix) -> Result<usize, NumError> {
    let d = require_square(m)?;
    let deviation = m.unitarity_residual();
    if deviation >= UNITARITY_TOL {
        return Err(NumError::NotUnitary { deviation });
    }
    Ok(d)
}

/// LU factorization with partial pivoting, P·A = L·U packed in one matrix.
#[derive(Debug, Clone)]
pub struct Lu {
    lu: ComplexMatrix,
    perm: Vec<usize>,
    sign: f64,
}

impl Lu {
    pub fn new(a: &ComplexMatrix) -> Result<Self, NumError> {
        let n = require_square(a)?;
        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut sign = 1.0;
        let scale = a.max_abs().max(f64::MIN_POSITIVE);
        for k in 0..n {
            let mut p = k;
            let mut best = lu[(k, k)].norm();
            for r in k + 1..n {
                let v = lu[(r, k)].norm();
                if v > best {
                    best = v;
                    p = r;
                }
            }
            if best <= 1e-14 * scale {
                return Err(NumError::Singular);
            }
            if p != k {
                for c in 0..n {
                    let t = lu[(k, c)];
                    lu[(k, c)] = lu[(p, c)];
                    lu[(p, c)] = t;
                }
                perm.swap(k, p);
                sign = -sign;
            }
            let pivot = lu[(k, k)];
            for r in k + 1..n {
                let f = lu[(r, k)] / pivot;
                lu[(r, k)] = f;
                if f == ZERO {
                    continue;
                }
                for c in k + 1..n {
                    let u = lu[(k, c)];
                    lu[(r, c)] -= f * u;
                }
            }
        }
        Ok(Self { lu, perm, sign })
    }

    pub fn det(&self) -> C64 {
        let mut d = C64::new(self.sign, 0.0);
        for k in 0..self.lu.rows() {
            d *= self.lu[(k, k)];
        }
        d
    }

    /// Solves A·X = B.
    pub fn solve(&self, b: &ComplexMatrix) -> ComplexMatrix {
        let n = self.lu.rows();
        let mut x = ComplexMatrix::from_fn(n, b.cols(), |r, c| b[(self.perm[r], c)]);
        for c in 0..b.cols() {
            for r in 0..n {
                let mut s = x[(r, c)];
                for k in 0..r {
                    s -= self.lu[(r, k)] * x[(k, c)];
                }
                x[(r, c)] = s;
            }
            for r in (0..n).rev() {
                let mut s = x[(r, c)];
                for k in r + 1..n {
                    s -= self.lu[(r, k)] * x[(k, c)];
                }
                x[(r, c)] = s / self.lu[(r, r)];
            }
        }
        x
    }
}

pub fn det(a: &ComplexMatrix) -> Result<C64, NumError> {
    Ok(Lu::new(a)?.det())
}

/// Unitary 2×2 rotation on the (p, q) plane that diagonalizes the Hermitian
/// pair [[app, apq], [conj(apq), aqq]] when applied as J†·H·J.
/// Returned as (j_pp, j_pq, j_qp, j_qq).
fn jacobi_rotation(app: f64, aqq: f64, apq: C64) -> (C64, C64, C64, C64) {
    let mag = apq.norm();
    let phase = C64::from_polar(1.0, -apq.arg());
    let zeta = (aqq - app) / (2.0 * mag);
    let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
    let t = if zeta == 0.0 { 1.0 } else { t };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    (C64::new(c, 0.0), C64::new(s, 0.0), -phase * s, phase * c)
}

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi.
/// Eigenvalues ascending; columns of the returned matrix are eigenvectors.
pub fn hermitian_eig(h: &ComplexMatrix) -> Result<(Vec<f64>, ComplexMatrix), NumError> {
    let n = require_square(h)?;
    let deviation = h.hermiticity_residual();
    if deviation >= HERMITIAN_TOL * h.max_abs().max(1.0) {
        return Err(NumError::NotHermitian { deviation });
    }
    let mut a = ComplexMatrix::from_fn(n, n, |r, c| (h[(r, c)] + h[(c, r)].conj()) * 0.5);
    let mut v = ComplexMatrix::identity(n);
    let total = a.frobenius_norm().max(f64::MIN_POSITIVE);
    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|r| (0..n).filter(move |c| *c != r).map(move |c| (r, c)))
            .map(|(r, c)| a[(r, c)].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off <= 1e-15 * total {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                if apq.norm() <= 1e-300 {
                    continue;
                }
                let (j00, j01, j10, j11) = jacobi_rotation(a[(p, p)].re, a[(q, q)].re, apq);
                for k in 0..n {
                    let (x, y) = (a[(k, p)], a[(k, q)]);
                    a[(k, p)] = x * j00 + y * j10;
                    a[(k, q)] = x * j01 + y * j11;
                }
                for k in 0..n {
                    let (x, y) = (a[(p, k)], a[(q, k)]);
                    a[(p, k)] = j00.conj() * x + j10.conj() * y;
                    a[(q, k)] = j01.conj() * x + j11.conj() * y;
                }
                a[(p, q)] = ZERO;
                a[(q, p)] = ZERO;
                a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
                a[(q, q)] = C64::new(a[(q, q)].re, 0.0);
                for k in 0..n {
                    let (x, y) = (v[(k, p)], v[(k, q)]);
                    v[(k, p)] = x * j00 + y * j10;
                    v[(k, q)] = x * j01 + y * j11;
                }
            }
        }
    }
    let vals: Vec<f64> = (0..n).map(|k| a[(k, k)].re).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| vals[x].total_cmp(&vals[y]).then(x.cmp(&y)));
    let sorted: Vec<f64> = order.iter().map(|&k| vals[k]).collect();
    Ok((sorted, v.permute_columns(&order)))
}

/// Singular value decomposition A = U·diag(σ)·V† with σ descending,
/// square input, one-sided complex Jacobi.
#[derive(Debug, Clone)]
pub struct Svd {
    pub u: ComplexMatrix,
    pub sigma: Vec<f64>,
    pub v: ComplexMatrix,
}

pub fn svd(a: &ComplexMatrix) -> Result<Svd, NumError> {
    let n = require_square(a)?;
    let mut w: Vec<Vec<C64>> = (0..n).map(|c| a.column(c)).collect();
    let mut v: Vec<Vec<C64>> = (0..n)
        .map(|c| {
            let mut e = vec![ZERO; n];
            e[c] = ONE;
            e
        })
        .collect();
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for i in 0..n {
            for j in i + 1..n {
                let alpha = dot(&w[i], &w[i]).re;
                let beta = dot(&w[j], &w[j]).re;
                let gamma = dot(&w[i], &w[j]);
                if gamma.norm() <= 1e-15 * (alpha * beta).sqrt() || gamma.norm() <= 1e-300 {
                    continue;
                }
                rotated = true;
                let (j00, j01, j10, j11) = jacobi_rotation(alpha, beta, gamma);
                for cols in [&mut w, &mut v] {
                    #[allow(clippy::needless_range_loop)]
                    for k in 0..n {
                        let (x, y) = (cols[i][k], cols[j][k]);
                        cols[i][k] = x * j00 + y * j10;
                        cols[j][k] = x * j01 + y * j11;
                    }
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let norms: Vec<f64> = w.iter().map(|c| vec_norm(c)).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| norms[y].total_cmp(&norms[x]).then(x.cmp(&y)));
    let scale = norms.iter().cloned().fold(0.0, f64::max).max(f64::MIN_POSITIVE);
    let mut ucols: Vec<Vec<C64>> = Vec::with_capacity(n);
    let mut sigma = Vec::with_capacity(n);
    let mut vcols = Vec::with_capacity(n);
    let mut pending = Vec::new();
    for &k in &order {
        sigma.push(norms[k]);
        vcols.push(v[k].clone());
        if norms[k] > 1e-13 * scale {
            let mut col = w[k].clone();
            orthonormalize_against(&mut col, &ucols);
            ucols.push(col);
        } else {
            pending.push(ucols.len());
            ucols.push(Vec::new());
        }
    }
    if !pending.is_empty() {
        let mut known: Vec<Vec<C64>> = ucols.iter().filter(|c| !c.is_empty()).cloned().collect();
        let have = known.len();
        complete_basis(&mut known, n, n);
        for (slot, extra) in pending.iter().zip(known.into_iter().skip(have)) {
            ucols[*slot] = extra;
        }
    }
    Ok(Svd {
        u: from_columns(n, &ucols),
        sigma,
        v: from_columns(n, &vcols),
    })
}

#[derive(Debug, Clone)]
pub struct EigResult {
    /// Eigenphases in (−π, π], ascending.
    pub phases: Vec<f64>,
    /// Unitary matrix whose columns are the eigenvectors.
    pub vectors: ComplexMatrix,
}

fn wrap_phase(p: f64) -> f64 {
    let mut x = p % (2.0 * PI);
    if x <= -PI {
        x += 2.0 * PI;
    } else if x > PI {
        x -= 2.0 * PI;
    }
    x
}

/// Eigendecomposition of a unitary matrix. The matrix is rotated so that −1
/// sits in the widest spectral gap and then mapped through the Cayley
/// transform to a Hermitian matrix that shares its eigenvectors.
pub fn unitary_eig(u: &ComplexMatrix) -> Result<EigResult, NumError> {
    let n = require_unitary(u)?;
    let re_part = ComplexMatrix::from_fn(n, n, |r, c| (u[(r, c)] + u[(c, r)].conj()) * 0.5);
    let (cosines, _) = hermitian_eig(&re_part)?;
    let mut candidates: Vec<f64> = cosines
        .iter()
        .flat_map(|c| {
            let a = c.clamp(-1.0, 1.0).acos();
            [a, -a]
        })
        .collect();
    candidates.sort_by(f64::total_cmp);
    let mut best_gap = -1.0;
    let mut centre = 0.0;
    for k in 0..candidates.len() {
        let lo = candidates[k];
        let hi = if k + 1 < candidates.len() {
            candidates[k + 1]
        } else {
            candidates[0] + 2.0 * PI
        };
        if hi - lo > best_gap {
            best_gap = hi - lo;
            centre = 0.5 * (lo + hi);
        }
    }
    let shift = C64::from_polar(1.0, PI - centre);
    let w = u.scale(shift);
    let id = ComplexMatrix::identity(n);
    let lu = Lu::new(&id.add(&w))?;
    let x = lu.solve(&id.sub(&w));
    let h = ComplexMatrix::from_fn(n, n, |r, c| {
        (x[(r, c)] * crate::numkernel::I + (x[(c, r)] * crate::numkernel::I).conj()) * 0.5
    });
    let (_, vecs) = hermitian_eig(&h)?;
    let diag = vecs.adjoint_mul(&u.matmul(&vecs)).diagonal();
    let phases: Vec<f64> = diag.iter().map(|z| wrap_phase(z.arg())).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| phases[a].total_cmp(&phases[b]).then(a.cmp(&b)));
    let sorted: Vec<f64> = order.iter().map(|&k| phases[k]).collect();
    let mut cols: Vec<Vec<C64>> = Vec::with_capacity(n);
    for &k in &order {
        let mut c = vecs.column(k);
        orthonormalize_against(&mut c, &cols);
        cols.push(c);
    }
    let vectors = from_columns(n, &cols);
    Ok(EigResult {
        phases: sorted,
        vectors,
    })
}

#[derive(Debug, Clone)]
pub struct CsdResult {
    pub l1: ComplexMatrix,
    pub l2: ComplexMatrix,
    pub r1: ComplexMatrix,
    pub r2: ComplexMatrix,
    pub theta: Vec<f64>,
}

impl CsdResult {
    /// [[C, −S, 0], [S, C, 0], [0, 0, I]]
    pub fn sigma(&self, q: usize) -> ComplexMatrix {
        let p = self.theta.len();
        let mut m = ComplexMatrix::identity(p + q);
        for (k, t) in self.theta.iter().enumerate() {
            let (s, c) = t.sin_cos();
            m[(k, k)] = C64::new(c, 0.0);
            m[(p + k, p + k)] = C64::new(c, 0.0);
            m[(k, p + k)] = C64::new(-s, 0.0);
            m[(p + k, k)] = C64::new(s, 0.0);
        }
        m
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        let q = self.l2.rows();
        let left = ComplexMatrix::block_diag(&[&self.l1, &self.l2]);
        let right = ComplexMatrix::block_diag(&[&self.r1, &self.r2]);
        left.matmul(&self.sigma(q)).matmul(&right.adjoint())
    }
}

/// Cosine-sine decomposition with partition (p, q):
/// U = blockdiag(L1, L2) · Σ(θ) · blockdiag(R1, R2)†.
pub fn csd(u: &ComplexMatrix, p: usize, q: usize) -> Result<CsdResult, NumError> {
    let d = require_unitary(u)?;
    if p + q != d {
        return Err(NumError::DimensionMismatch {
            expected: d,
            actual: p + q,
        });
    }
    if p > q {
        return Err(NumError::InvalidPartition { p, q });
    }
    let u11 = u.block(0, 0, p, p);
    let u12 = u.block(0, p, p, q);
    let u21 = u.block(p, 0, q, p);
    let u22 = u.block(p, p, q, q);

    let s11 = svd(&u11)?;
    let l1 = s11.u;
    let r1 = s11.v;
    let c: Vec<f64> = s11.sigma.iter().map(|x| x.min(1.0)).collect();

    let t = u21.matmul(&r1);
    let s: Vec<f64> = (0..p).map(|k| vec_norm(&t.column(k))).collect();
    let mut by_s: Vec<usize> = (0..p).collect();
    by_s.sort_by(|&a, &b| s[b].total_cmp(&s[a]).then(a.cmp(&b)));
    let mut l2_cols: Vec<Option<Vec<C64>>> = vec![None; p];
    let mut accepted: Vec<Vec<C64>> = Vec::new();
    let mut missing = Vec::new();
    for &k in &by_s {
        let mut col = t.column(k);
        let res = orthonormalize_against(&mut col, &accepted);
        if res > 1e-7 {
            accepted.push(col.clone());
            l2_cols[k] = Some(col);
        } else {
            missing.push(k);
        }
    }
    let have = accepted.len();
    complete_basis(&mut accepted, q, q);
    let mut extra = accepted[have..].iter().cloned();
    for k in missing {
        l2_cols[k] = extra.next();
    }
    let mut cols: Vec<Vec<C64>> = l2_cols.into_iter().map(|c| c.expect("column")).collect();
    cols.extend(extra);
    let l2 = from_columns(q, &cols);

    let y = l2.adjoint_mul(&u22);
    let z = l1.adjoint_mul(&u12);
    let mut rows: Vec<Vec<C64>> = Vec::with_capacity(q);
    for k in 0..q {
        let row: Vec<C64> = if k < p {
            if c[k] >= s[k] {
                y.row(k).iter().map(|x| x / c[k]).collect()
            } else {
                z.row(k).iter().map(|x| -x / s[k]).collect()
            }
        } else {
            y.row(k).to_vec()
        };
        rows.push(row);
    }
    // rows of R2† are orthonormal; re-orthonormalize as conjugated columns
    let mut r2_cols: Vec<Vec<C64>> = Vec::with_capacity(q);
    for row in rows {
        let mut col: Vec<C64> = row.iter().map(|x| x.conj()).collect();
        orthonormalize_against(&mut col, &r2_cols);
        r2_cols.push(col);
    }
    let r2 = from_columns(q, &r2_cols);
    let theta = c.iter().zip(&s).map(|(c, s)| s.atan2(*c)).collect();
    Ok(CsdResult { l1, l2, r1, r2, theta })
}

/// min over φ of ‖U − e^{iφ}V‖_F.
pub fn unitary_distance(u: &ComplexMatrix, v: &ComplexMatrix) -> Result<f64, NumError> {
    if (u.rows(), u.cols()) != (v.rows(), v.cols()) {
        return Err(NumError::DimensionMismatch {
            expected: u.rows(),
            actual: v.rows(),
        });
    }
    let tr: C64 = u.data().iter().zip(v.data()).map(|(a, b)| b.conj() * a).sum();
    let phase = if tr.norm() > 0.0 { tr / tr.norm() } else { ONE };
    Ok(u.data()
        .iter()
        .zip(v.data())
        .map(|(a, b)| (a - phase * b).norm_sqr())
        .sum::<f64>()
        .sqrt())
}

/// Unitary polar factor of A.
pub fn nearest_unitary(a: &ComplexMatrix) -> Result<ComplexMatrix, NumError> {
    require_square(a)?;
    let s = svd(a)?;
    let top = s.sigma.first().copied().unwrap_or(0.0);
    let bottom = s.sigma.last().copied().unwrap_or(0.0);
    if bottom <= 1e-12 * top.max(f64::MIN_POSITIVE) {
        return Err(NumError::Singular);
    }
    Ok(s.u.matmul(&s.v.adjoint()))
}
