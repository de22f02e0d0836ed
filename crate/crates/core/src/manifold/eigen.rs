use nalgebra::DMatrix;
use ndarray::{Array1, Array2};

/// Eigendecomposition of a symmetric matrix, eigenvalues sorted descending.
///
/// Each eigenvector is sign-fixed so its largest-magnitude entry (lowest
/// index on ties) is positive, making the decomposition deterministic even
/// under eigenvalue ties.
pub fn symmetric_eig_desc(matrix: &Array2<f64>) -> (Array1<f64>, Array2<f64>) {
    let n = matrix.nrows();
    assert_eq!(n, matrix.ncols(), "matrix must be square");
    let m = DMatrix::from_fn(n, n, |r, c| matrix[[r, c]]);
    let eig = m.symmetric_eigen();

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        eig.eigenvalues[b]
            .partial_cmp(&eig.eigenvalues[a])
            .expect("eigenvalues must be finite")
    });

    let values = Array1::from_iter(order.iter().map(|&i| eig.eigenvalues[i]));
    let mut vectors = Array2::zeros((n, n));
    for (out_col, &src_col) in order.iter().enumerate() {
        let col = eig.eigenvectors.column(src_col);
        let mut best = 0usize;
        for r in 1..n {
            if col[r].abs() > col[best].abs() {
                best = r;
            }
        }
        let flip = if col[best] < 0.0 { -1.0 } else { 1.0 };
        for r in 0..n {
            vectors[[r, out_col]] = flip * col[r];
        }
    }
    (values, vectors)
}
