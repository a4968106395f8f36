use crate::circuit_ir::{Circuit, Gate};
use crate::numkernel::{ComplexMatrix, C64};
use crate::trit_algebra::{Axis, Level};

/// Rz(a)·Ry(b)·Rz(c) (matrix order) on one level, as (a, b, c).
type Zyz = (f64, f64, f64);

/// Rotation on the two-level block (i, j) mapping (x, y) to (r, 0):
/// G = (1/r)[[x*, y*], [−y, x]].
fn givens(x: C64, y: C64) -> Option<(Zyz, [[C64; 2]; 2])> {
    let r = (x.norm_sqr() + y.norm_sqr()).sqrt();
    if y.norm() <= 1e-15 * r.max(1e-300) {
        return None;
    }
    let g = [[x.conj() / r, y.conj() / r], [-y / r, x / r]];
    let (alpha, gamma) = (g[0][0], g[1][0]);
    let b = 2.0 * gamma.norm().atan2(alpha.norm());
    let (pa, pg) = (if alpha.norm() > 0.0 { alpha.arg() } else { 0.0 }, gamma.arg());
    Some(((pg - pa, b, -pa - pg), g))
}

fn apply_rows(u: &mut ComplexMatrix, (i, j): (usize, usize), g: &[[C64; 2]; 2]) {
    for c in 0..3 {
        let (x, y) = (u[(i, c)], u[(j, c)]);
        u[(i, c)] = g[0][0] * x + g[0][1] * y;
        u[(j, c)] = g[1][0] * x + g[1][1] * y;
    }
}

/// Exact circuit for a single-qutrit unitary: a phase, two z rotations for
/// the diagonal, then up to three z-y-z Givens rotations on levels 12, 01, 12.
pub fn synthesize_single(u: &ComplexMatrix) -> Circuit {
    assert_eq!((u.rows(), u.cols()), (3, 3));
    let mut w = u.clone();
    let mut ladder: Vec<(Level, Zyz)> = Vec::new();
    for (level, (col, lo, hi)) in [
        (Level::L12, (0, 1, 2)),
        (Level::L01, (0, 0, 1)),
        (Level::L12, (1, 1, 2)),
    ] {
        if let Some((zyz, g)) = givens(w[(lo, col)], w[(hi, col)]) {
            apply_rows(&mut w, (lo, hi), &g);
            ladder.push((level, zyz));
        }
    }
    // w = G3·G2·G1·U is diagonal = e^{iφ} Rz01(α) Rz12(β)
    let args = [w[(0, 0)].arg(), w[(1, 1)].arg(), w[(2, 2)].arg()];
    let phi = (args[0] + args[1] + args[2]) / 3.0;
    let alpha = 2.0 * (phi - args[0]);
    let beta = 2.0 * (args[2] - phi);
    let mut c = Circuit::new(1);
    c.push(Gate::GlobalPhase { phi });
    c.push(Gate::rz(Level::L12, 0, beta));
    c.push(Gate::rz(Level::L01, 0, alpha));
    // U = G1†·G2†·G3†·w, so G3† is applied first
    for (level, (a, b, cc)) in ladder.into_iter().rev() {
        c.push(Gate::rz(level, 0, -a));
        c.push(Gate::Rotation {
            axis: Axis::Y,
            level,
            qutrit: 0,
            theta: -b,
        });
        c.push(Gate::rz(level, 0, -cc));
    }
    c
}
