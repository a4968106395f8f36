use super::gates::{dim, generator, AlgebraError, GeneratorId};
use crate::numkernel::{ComplexMatrix, C64, I};

/// Lie subalgebras of u(3^n) appearing in the chain of Cartan splits, plus
/// the three diagonal bases.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SubspaceTag {
    L,
    P,
    A,
    L1,
    P1,
    A1,
    L2,
    P2,
    A2,
    L2Bar,
    P2Bar,
    L3,
    P3,
    P3Bar,
    A3,
    A3Bar,
    Alpha,
    AlphaTilde,
    AlphaBar,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SubspaceId {
    pub tag: SubspaceTag,
    pub n: usize,
}

impl SubspaceId {
    pub fn new(tag: SubspaceTag, n: usize) -> Self {
        Self { tag, n }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiagonalKind {
    Alpha,
    AlphaTilde,
    AlphaBar,
}

/// Recursive tensor basis: {G ⊗ A | G ∈ seed, A ∈ basis(n−1)} times i.
pub fn diagonal_basis(kind: DiagonalKind, n: usize) -> Vec<ComplexMatrix> {
    if n == 0 {
        return Vec::new();
    }
    let seeds = match kind {
        DiagonalKind::Alpha => [GeneratorId::I3, GeneratorId::SZ01, GeneratorId::SZ02],
        DiagonalKind::AlphaTilde => [GeneratorId::I3, GeneratorId::D, GeneratorId::SZ12],
        DiagonalKind::AlphaBar => [GeneratorId::I3, GeneratorId::DBAR, GeneratorId::SZ01],
    };
    let mut basis: Vec<ComplexMatrix> = vec![ComplexMatrix::identity(1)];
    for _ in 0..n {
        basis = seeds
            .iter()
            .flat_map(|g| {
                let g = generator(*g);
                basis.iter().map(move |a| g.kron(a)).collect::<Vec<_>>()
            })
            .collect();
    }
    basis.into_iter().map(|m| m.scale(I)).collect()
}

struct Blocks {
    b: usize,
    m: ComplexMatrix,
}

impl Blocks {
    fn get(&self, r: usize, c: usize) -> ComplexMatrix {
        self.m.block(r * self.b, c * self.b, self.b, self.b)
    }
}

fn assemble(b: usize, entries: &[(usize, usize, ComplexMatrix)]) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(3 * b, 3 * b);
    for (r, c, m) in entries {
        out.set_block(r * b, c * b, m);
    }
    out
}

fn imag_diag(m: &ComplexMatrix) -> ComplexMatrix {
    ComplexMatrix::from_diag(&m.diagonal().iter().map(|z| C64::new(0.0, z.im)).collect::<Vec<_>>())
}

fn avg(a: &ComplexMatrix, b: &ComplexMatrix, sign: f64) -> ComplexMatrix {
    a.add(&b.scale(C64::new(sign, 0.0))).scale(C64::new(0.5, 0.0))
}

fn combo3(blocks: [&ComplexMatrix; 3], signs: [f64; 3]) -> ComplexMatrix {
    let mut acc = blocks[0].scale(C64::new(signs[0] / 3.0, 0.0));
    for k in 1..3 {
        acc = acc.add(&blocks[k].scale(C64::new(signs[k] / 3.0, 0.0)));
    }
    acc
}

/// Orthogonal (real Frobenius) projection onto the subspace.
pub fn project(m: &ComplexMatrix, s: SubspaceId) -> Result<ComplexMatrix, AlgebraError> {
    let d = dim(s.n);
    if m.rows() != d || m.cols() != d {
        return Err(AlgebraError::DimensionMismatch {
            actual: m.rows(),
            n: s.n,
        });
    }
    let skew = m.sub(&m.adjoint()).scale(C64::new(0.5, 0.0));
    use SubspaceTag::*;
    if matches!(s.tag, Alpha | AlphaTilde | AlphaBar) {
        return Ok(imag_diag(&skew));
    }
    let b = d / 3;
    let bl = Blocks { b, m: skew };
    let g = |r, c| bl.get(r, c);
    let signed = |a: &ComplexMatrix, sg: f64| a.scale(C64::new(sg, 0.0));
    let out = match s.tag {
        L => assemble(
            b,
            &[
                (0, 0, g(0, 0)),
                (1, 1, g(1, 1)),
                (1, 2, g(1, 2)),
                (2, 1, g(2, 1)),
                (2, 2, g(2, 2)),
            ],
        ),
        P => assemble(b, &[(0, 1, g(0, 1)), (0, 2, g(0, 2)), (1, 0, g(1, 0)), (2, 0, g(2, 0))]),
        A => {
            let x = imag_diag(&avg(&g(0, 1), &g(1, 0), 1.0));
            assemble(b, &[(0, 1, x.clone()), (1, 0, x)])
        }
        L1 => assemble(b, &[(0, 0, g(0, 0)), (1, 1, g(1, 1)), (2, 2, g(2, 2))]),
        P1 => assemble(b, &[(1, 2, g(1, 2)), (2, 1, g(2, 1))]),
        A1 => {
            let x = imag_diag(&avg(&g(1, 2), &g(2, 1), 1.0));
            assemble(b, &[(1, 2, x.clone()), (2, 1, x)])
        }
        L2 => {
            let y = avg(&g(1, 1), &g(2, 2), 1.0);
            assemble(b, &[(0, 0, g(0, 0)), (1, 1, y.clone()), (2, 2, y)])
        }
        P2 | A2 => {
            let mut a = avg(&g(1, 1), &g(2, 2), -1.0);
            if s.tag == A2 {
                a = imag_diag(&a);
            }
            assemble(b, &[(1, 1, a.clone()), (2, 2, signed(&a, -1.0))])
        }
        L2Bar => {
            let y = avg(&g(0, 0), &g(1, 1), 1.0);
            assemble(b, &[(0, 0, y.clone()), (1, 1, y), (2, 2, g(2, 2))])
        }
        P2Bar => {
            let a = avg(&g(0, 0), &g(1, 1), -1.0);
            assemble(b, &[(0, 0, a.clone()), (1, 1, signed(&a, -1.0))])
        }
        L3 | P3 | P3Bar | A3 | A3Bar => {
            let pattern = match s.tag {
                L3 => [1.0, 1.0, 1.0],
                P3 | A3 => [1.0, -1.0, -1.0],
                _ => [-1.0, -1.0, 1.0],
            };
            let mut a = combo3([&g(0, 0), &g(1, 1), &g(2, 2)], pattern);
            if matches!(s.tag, A3 | A3Bar) {
                a = imag_diag(&a);
            }
            assemble(
                b,
                &[
                    (0, 0, signed(&a, pattern[0])),
                    (1, 1, signed(&a, pattern[1])),
                    (2, 2, signed(&a, pattern[2])),
                ],
            )
        }
        Alpha | AlphaTilde | AlphaBar => unreachable!(),
    };
    Ok(out)
}

/// Membership of a (skew-Hermitian) algebra element: the Frobenius residual
/// of the projection and whether it is below `tol`.
pub fn subspace_membership(m: &ComplexMatrix, s: SubspaceId, tol: f64) -> Result<(bool, f64), AlgebraError> {
    let p = project(m, s)?;
    let r = m.distance(&p);
    Ok((r < tol, r))
}

/// Block shapes of group elements exp(𝔨) for the compact subalgebras.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupShape {
    /// blockdiag(3^{n−1}, 2·3^{n−1})
    L,
    /// blockdiag(U1, U2, U3)
    L1,
    /// blockdiag(P, Q, Q)
    L2,
    /// blockdiag(Q, Q, P)
    L2Bar,
    /// I_3 ⊗ W
    L3,
}

/// Frobenius distance of a unitary from the block pattern.
pub fn group_shape_residual(u: &ComplexMatrix, shape: GroupShape) -> f64 {
    let b = u.rows() / 3;
    let bl = Blocks { b, m: u.clone() };
    let norm2 = |r, c| bl.get(r, c).frobenius_norm().powi(2);
    let diff2 = |x: (usize, usize), y: (usize, usize)| bl.get(x.0, x.1).distance(&bl.get(y.0, y.1)).powi(2);
    let mut acc = norm2(0, 1) + norm2(0, 2) + norm2(1, 0) + norm2(2, 0);
    if shape != GroupShape::L {
        acc += norm2(1, 2) + norm2(2, 1);
    }
    match shape {
        GroupShape::L2 => acc += diff2((1, 1), (2, 2)),
        GroupShape::L2Bar => acc += diff2((0, 0), (1, 1)),
        GroupShape::L3 => acc += diff2((0, 0), (1, 1)) + diff2((1, 1), (2, 2)),
        _ => {}
    }
    acc.sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkernel::random::random_skew_hermitian;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn id(tag: SubspaceTag) -> SubspaceId {
        SubspaceId::new(tag, 2)
    }

    #[test]
    fn alpha_basis_at_one_qutrit() {
        let b = diagonal_basis(DiagonalKind::Alpha, 1);
        assert_eq!(b[0], ComplexMatrix::identity(3).scale(I));
        assert_eq!(b[1], generator(GeneratorId::SZ01).scale(I));
        assert_eq!(b[2], generator(GeneratorId::SZ02).scale(I));
        let t = diagonal_basis(DiagonalKind::AlphaTilde, 1);
        assert_eq!(t[1], generator(GeneratorId::D).scale(I));
        assert_eq!(t[2], generator(GeneratorId::SZ12).scale(I));
    }

    #[test]
    fn block_diagonal_log_is_in_l() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let a = random_skew_hermitian(3, &mut rng);
        let b = random_skew_hermitian(6, &mut rng);
        let m = ComplexMatrix::block_diag(&[&a, &b]);
        assert!(subspace_membership(&m, id(SubspaceTag::L), 1e-12).unwrap().0);
    }

    #[test]
    fn sx01_sz01_is_cartan_not_compact() {
        let m = generator(GeneratorId::SX01)
            .kron(&generator(GeneratorId::SZ01))
            .scale(I);
        assert!(subspace_membership(&m, id(SubspaceTag::A), 1e-12).unwrap().0);
        assert!(subspace_membership(&m, id(SubspaceTag::P), 1e-12).unwrap().0);
        assert!(!subspace_membership(&m, id(SubspaceTag::L), 1e-12).unwrap().0);
    }

    #[test]
    fn dense_element_not_in_p2() {
        let m = random_skew_hermitian(9, &mut ChaCha8Rng::seed_from_u64(4));
        let sz12 = generator(GeneratorId::SZ12);
        // explicit projection onto σz12 ⊗ u(3): coefficient (B11 − B22)/2
        let b11 = m.block(3, 3, 3, 3);
        let b22 = m.block(6, 6, 3, 3);
        let coeff = b11.sub(&b22).scale(C64::new(0.5, 0.0));
        let oracle = sz12.kron(&coeff);
        let (member, residual) = subspace_membership(&m, id(SubspaceTag::P2), 1e-10).unwrap();
        assert!(!member && residual > 0.1);
        assert!((residual - m.distance(&oracle)).abs() < 1e-12);
    }

    #[test]
    fn group_shapes() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let w = crate::numkernel::random::haar_unitary(3, &mut rng);
        let k = ComplexMatrix::identity(3).kron(&w);
        assert!(group_shape_residual(&k, GroupShape::L3) < 1e-15);
        let v = crate::numkernel::random::haar_unitary(3, &mut rng);
        let l2 = ComplexMatrix::block_diag(&[&v, &w, &w]);
        assert!(group_shape_residual(&l2, GroupShape::L2) < 1e-15);
        assert!(group_shape_residual(&l2, GroupShape::L2Bar) > 0.1);
    }

    #[test]
    fn wrong_dimension_rejected() {
        let m = ComplexMatrix::identity(3);
        assert!(project(&m, id(SubspaceTag::L)).is_err());
    }
}
