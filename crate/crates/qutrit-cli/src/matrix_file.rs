use qutrit_kak::numkernel::{ComplexMatrix, C64};
use serde::{Deserialize, Serialize};

/// JSON matrix: row-major entries as [re, im] pairs.
#[derive(Debug, Serialize, Deserialize)]
pub struct MatrixFile {
    pub qutrits: usize,
    pub dim: usize,
    pub matrix: Vec<Vec<[f64; 2]>>,
}

impl MatrixFile {
    pub fn from_matrix(m: &ComplexMatrix) -> Self {
        let mut qutrits = 0;
        while 3usize.pow(qutrits as u32) < m.rows() {
            qutrits += 1;
        }
        let matrix = (0..m.rows())
            .map(|i| (0..m.cols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
            .collect();
        Self {
            qutrits,
            dim: m.rows(),
            matrix,
        }
    }

    pub fn to_matrix(&self) -> Result<ComplexMatrix, String> {
        if self.dim != 3usize.pow(self.qutrits as u32) {
            return Err(format!("dim {} is not 3^{}", self.dim, self.qutrits));
        }
        if self.matrix.len() != self.dim || self.matrix.iter().any(|r| r.len() != self.dim) {
            return Err(format!("matrix must be {0}x{0}", self.dim));
        }
        if self.matrix.iter().flatten().flatten().any(|x| !x.is_finite()) {
            return Err("matrix has non-finite entries".into());
        }
        Ok(ComplexMatrix::from_fn(self.dim, self.dim, |i, j| {
            let [re, im] = self.matrix[i][j];
            C64::new(re, im)
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_shape_checks() {
        let m = ComplexMatrix::from_fn(9, 9, |i, j| C64::new(i as f64, -(j as f64)));
        let f = MatrixFile::from_matrix(&m);
        assert_eq!((f.qutrits, f.dim), (2, 9));
        assert_eq!(f.to_matrix().unwrap().distance(&m), 0.0);
        let bad = MatrixFile {
            qutrits: 2,
            dim: 8,
            matrix: vec![],
        };
        assert!(bad.to_matrix().is_err());
        let ragged = MatrixFile {
            qutrits: 1,
            dim: 3,
            matrix: vec![vec![[0.0; 2]; 3], vec![[0.0; 2]; 2], vec![[0.0; 2]; 3]],
        };
        assert!(ragged.to_matrix().is_err());
    }
}
