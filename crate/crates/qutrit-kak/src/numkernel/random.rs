use super::matrix::{from_columns, orthonormalize_against, ComplexMatrix, C64};
use rand::Rng;
use rand_distr::StandardNormal;

pub fn gaussian_complex<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

pub fn gaussian_matrix<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| gaussian_complex(rng))
}

/// Haar-distributed unitary: Gram-Schmidt on a complex Ginibre matrix. The
/// implied triangular factor has a positive real diagonal, which is the phase
/// normalization that makes the distribution exactly Haar.
pub fn haar_unitary<R: Rng + ?Sized>(d: usize, rng: &mut R) -> ComplexMatrix {
    let g = gaussian_matrix(d, d, rng);
    let mut cols: Vec<Vec<C64>> = Vec::with_capacity(d);
    for c in 0..d {
        let mut v = g.column(c);
        orthonormalize_against(&mut v, &cols);
        cols.push(v);
    }
    from_columns(d, &cols)
}

pub fn random_hermitian<R: Rng + ?Sized>(d: usize, rng: &mut R) -> ComplexMatrix {
    let g = gaussian_matrix(d, d, rng);
    ComplexMatrix::from_fn(d, d, |r, c| (g[(r, c)] + g[(c, r)].conj()) * 0.5)
}

pub fn random_skew_hermitian<R: Rng + ?Sized>(d: usize, rng: &mut R) -> ComplexMatrix {
    random_hermitian(d, rng).scale(super::I)
}
