use super::gates::{dim, generator, GeneratorId};
use super::subspace::{diagonal_basis, subspace_membership, DiagonalKind, SubspaceId, SubspaceTag};
use crate::numkernel::random::{gaussian_complex, random_hermitian};
use crate::numkernel::{ComplexMatrix, C64, I, ZERO};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;
use std::collections::HashMap;

pub const SELFTEST_TOL: f64 = 1e-10;

/// Generator constants used to build random algebra elements. The faulty
/// variant flips the sign of the lower entry of σ_y^{12}, a negative
/// control for the self-tests.
#[derive(Debug, Clone)]
pub struct GeneratorTable {
    table: HashMap<GeneratorId, ComplexMatrix>,
}

impl GeneratorTable {
    pub fn standard() -> Self {
        Self {
            table: GeneratorId::ALL.iter().map(|g| (*g, generator(*g))).collect(),
        }
    }

    pub fn with_sy12_fault() -> Self {
        let mut t = Self::standard();
        let m = t.table.get_mut(&GeneratorId::SY12).expect("σy12");
        m[(2, 1)] = -m[(2, 1)];
        t
    }

    pub fn get(&self, id: GeneratorId) -> &ComplexMatrix {
        &self.table[&id]
    }
}

fn spanning_generators(tag: SubspaceTag) -> &'static [GeneratorId] {
    use GeneratorId::*;
    use SubspaceTag::*;
    match tag {
        L => &[SX12, SY12, SZ01, SZ02, I3],
        P => &[SX01, SX02, SY01, SY02],
        L1 => &[SZ01, SZ02, I3],
        P1 => &[SX12, SY12],
        L2 => &[I3, D],
        P2 => &[SZ12],
        L2Bar => &[I3, DBAR],
        P2Bar => &[SZ01],
        L3 => &[I3],
        P3 => &[D],
        P3Bar => &[DBAR],
        A => &[SX01],
        A1 => &[SX12],
        A2 => &[SZ12],
        A3 => &[D],
        A3Bar => &[DBAR],
        Alpha | AlphaTilde | AlphaBar => &[],
    }
}

fn random_real_diag<R: Rng>(d: usize, rng: &mut R) -> ComplexMatrix {
    ComplexMatrix::from_diag(
        &(0..d)
            .map(|_| C64::new(rng.sample::<f64, _>(StandardNormal), 0.0))
            .collect::<Vec<_>>(),
    )
}

/// Random element i·Σ_k G_k ⊗ H_k of a subspace, with Gaussian coefficients
/// over the Hermitian (or real diagonal, for Cartan subalgebras) factors.
pub fn random_element<R: Rng>(s: SubspaceId, table: &GeneratorTable, rng: &mut R) -> ComplexMatrix {
    use SubspaceTag::*;
    let b = dim(s.n - 1);
    if matches!(s.tag, Alpha | AlphaTilde | AlphaBar) {
        return random_real_diag(dim(s.n), rng).scale(I);
    }
    let cartan = matches!(s.tag, A | A1 | A2 | A3 | A3Bar);
    let mut acc = ComplexMatrix::zeros(3 * b, 3 * b);
    for g in spanning_generators(s.tag) {
        let h = if cartan {
            random_real_diag(b, rng)
        } else {
            random_hermitian(b, rng)
        };
        acc = acc.add(&table.get(*g).kron(&h));
    }
    acc.scale(I)
}

#[derive(Debug, Clone, Serialize)]
pub struct RelationResult {
    pub name: String,
    pub trials: usize,
    pub max_residual: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SelfTestReport {
    pub n: usize,
    pub relations: Vec<RelationResult>,
}

impl SelfTestReport {
    pub fn passed(&self) -> bool {
        self.relations.iter().all(|r| r.passed)
    }
}

/// (name of the ambient algebra, compact part, complement)
pub const STAGES: [(&str, SubspaceTag, SubspaceTag); 6] = [
    ("u", SubspaceTag::L, SubspaceTag::P),
    ("l", SubspaceTag::L1, SubspaceTag::P1),
    ("l1", SubspaceTag::L2, SubspaceTag::P2),
    ("l1/bar", SubspaceTag::L2Bar, SubspaceTag::P2Bar),
    ("l2", SubspaceTag::L3, SubspaceTag::P3),
    ("l2bar", SubspaceTag::L3, SubspaceTag::P3Bar),
];

/// Cartan subalgebras paired with the complement that must contain them.
pub const CARTANS: [(SubspaceTag, SubspaceTag); 5] = [
    (SubspaceTag::A, SubspaceTag::P),
    (SubspaceTag::A1, SubspaceTag::P1),
    (SubspaceTag::A2, SubspaceTag::P2),
    (SubspaceTag::A3, SubspaceTag::P3),
    (SubspaceTag::A3Bar, SubspaceTag::P3Bar),
];

pub fn commutation_selftest(n: usize, seed: u64, trials: usize) -> SelfTestReport {
    commutation_selftest_with(n, seed, trials, &GeneratorTable::standard())
}

/// Samples commutators for every Cartan-pair relation [l,l]⊆l, [l,p]⊆p,
/// [p,p]⊆l of each stage, and checks each Cartan subalgebra is an Abelian
/// subspace of its complement.
pub fn commutation_selftest_with(n: usize, seed: u64, trials: usize, table: &GeneratorTable) -> SelfTestReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut relations = Vec::new();
    for (name, l, p) in STAGES {
        let (l, p) = (SubspaceId::new(l, n), SubspaceId::new(p, n));
        for (x, y, into, label) in [(l, l, l, "[l,l]⊆l"), (l, p, p, "[l,p]⊆p"), (p, p, l, "[p,p]⊆l")] {
            let mut worst: f64 = 0.0;
            for _ in 0..trials {
                let a = random_element(x, table, &mut rng);
                let b = random_element(y, table, &mut rng);
                let (_, r) = subspace_membership(&a.commutator(&b), into, SELFTEST_TOL).expect("dimensions agree");
                worst = worst.max(r);
            }
            relations.push(RelationResult {
                name: format!("{name}: {label}"),
                trials,
                max_residual: worst,
                passed: worst < SELFTEST_TOL,
            });
        }
    }
    for (a_tag, p_tag) in CARTANS {
        let (a_id, p_id) = (SubspaceId::new(a_tag, n), SubspaceId::new(p_tag, n));
        let mut worst: f64 = 0.0;
        for _ in 0..trials {
            let a = random_element(a_id, table, &mut rng);
            let b = random_element(a_id, table, &mut rng);
            let (_, r) = subspace_membership(&a, p_id, SELFTEST_TOL).expect("dimensions agree");
            worst = worst.max(r).max(a.commutator(&b).frobenius_norm());
        }
        relations.push(RelationResult {
            name: format!("{a_tag:?} abelian in {p_tag:?}"),
            trials,
            max_residual: worst,
            passed: worst < SELFTEST_TOL,
        });
    }
    SelfTestReport { n, relations }
}

/// Projects M onto the commutant of a set of diagonal matrices: entry (a,b)
/// survives only if every basis element has equal diagonal values at a, b.
fn project_commutant(m: &ComplexMatrix, basis: &[ComplexMatrix]) -> ComplexMatrix {
    let d = m.rows();
    ComplexMatrix::from_fn(d, d, |a, b| {
        let keeps = basis.iter().all(|g| (g[(a, a)] - g[(b, b)]).norm() < 1e-14);
        if keeps {
            m[(a, b)]
        } else {
            ZERO
        }
    })
}

/// Gram-Schmidt rank of the diagonals, and the residual of projecting `m`'s
/// diagonal+off-diagonal content onto their span.
fn span_residual(basis: &[ComplexMatrix], m: &ComplexMatrix) -> (usize, f64) {
    let d = m.rows();
    let mut ortho: Vec<Vec<f64>> = Vec::new();
    for g in basis {
        let mut v: Vec<f64> = (0..d).map(|k| g[(k, k)].im).collect();
        for _ in 0..2 {
            for o in &ortho {
                let p: f64 = o.iter().zip(&v).map(|(a, b)| a * b).sum();
                for (x, y) in v.iter_mut().zip(o) {
                    *x -= p * y;
                }
            }
        }
        let nrm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if nrm > 1e-9 {
            ortho.push(v.into_iter().map(|x| x / nrm).collect());
        }
    }
    let target: Vec<f64> = (0..d).map(|k| m[(k, k)].im).collect();
    let mut rest = target.clone();
    for o in &ortho {
        let p: f64 = o.iter().zip(&rest).map(|(a, b)| a * b).sum();
        for (x, y) in rest.iter_mut().zip(o) {
            *x -= p * y;
        }
    }
    let mut off = 0.0;
    for a in 0..d {
        off += m[(a, a)].re * m[(a, a)].re;
        for b in 0..d {
            if a != b {
                off += m[(a, b)].norm_sqr();
            }
        }
    }
    let diag_res: f64 = rest.iter().map(|x| x * x).sum();
    (ortho.len(), (diag_res + off).sqrt())
}

#[derive(Debug, Clone, Serialize)]
pub struct AbelianReport {
    pub n: usize,
    pub basis_rank: usize,
    pub max_basis_commutator: f64,
    pub max_span_residual: f64,
    pub min_offdiag_commutator: f64,
    pub trials: usize,
    pub passed: bool,
}

/// Brute-force check that span α(3^n) is maximal Abelian in u(3^n).
pub fn maximal_abelian_check(n: usize, seed: u64, trials: usize) -> AbelianReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let basis = diagonal_basis(DiagonalKind::Alpha, n);
    let d = dim(n);
    let mut max_comm: f64 = 0.0;
    for a in &basis {
        for b in &basis {
            max_comm = max_comm.max(a.commutator(b).max_abs());
        }
    }
    let mut max_res: f64 = 0.0;
    let mut min_off = f64::INFINITY;
    let mut rank = 0;
    for _ in 0..trials {
        let raw = crate::numkernel::random::random_skew_hermitian(d, &mut rng);
        let m = project_commutant(&raw, &basis);
        let comm = basis.iter().map(|g| g.commutator(&m).max_abs()).fold(0.0, f64::max);
        let (r, res) = span_residual(&basis, &m);
        rank = r;
        max_res = max_res.max(res).max(comm);
        // an element with a single off-diagonal entry fails to commute
        let (a, b) = (rng.gen_range(0..d), rng.gen_range(0..d));
        let b = if a == b { (b + 1) % d } else { b };
        let mut e = ComplexMatrix::zeros(d, d);
        let z = gaussian_complex(&mut rng);
        e[(a, b)] = z;
        e[(b, a)] = -z.conj();
        let worst = basis.iter().map(|g| g.commutator(&e).max_abs()).fold(0.0, f64::max);
        min_off = min_off.min(worst / z.norm());
    }
    let passed = max_comm == 0.0 && rank == d && max_res < SELFTEST_TOL && min_off > 0.5;
    AbelianReport {
        n,
        basis_rank: rank,
        max_basis_commutator: max_comm,
        max_span_residual: max_res,
        min_offdiag_commutator: min_off,
        trials,
        passed,
    }
}
