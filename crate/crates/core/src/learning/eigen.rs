//! Symmetric eigendecomposition by cyclic Jacobi rotations.
//!
//! Each sweep visits every off-diagonal entry and applies the plane
//! rotation that zeroes it; sweeps repeat until the largest off-diagonal
//! magnitude drops below 1e-12. Convergence is quadratic, so a handful of
//! sweeps suffices for the matrix sizes this crate meets.

const OFF_DIAGONAL_TOLERANCE: f64 = 1e-12;
// Safety valve; Jacobi normally converges in well under ten sweeps.
const MAX_SWEEPS: usize = 64;

/// Eigenpairs of a symmetric matrix, sorted by eigenvalue descending.
/// `vectors[i]` is the unit eigenvector for `values[i]`, its sign fixed
/// so the entry of largest magnitude is positive.
pub(crate) struct SymmetricEigen {
    pub values: Vec<f64>,
    pub vectors: Vec<Vec<f64>>,
}

pub(crate) fn symmetric_eigen(mut a: Vec<Vec<f64>>) -> SymmetricEigen {
    let n = a.len();
    // v accumulates the rotations; its columns end up as eigenvectors.
    let mut v = vec![vec![0.0f64; n]; n];
    for (i, row) in v.iter_mut().enumerate() {
        row[i] = 1.0;
    }

    for _ in 0..MAX_SWEEPS {
        let mut max_off = 0.0f64;
        for p in 0..n {
            for q in p + 1..n {
                max_off = max_off.max(a[p][q].abs());
            }
        }
        if max_off < OFF_DIAGONAL_TOLERANCE {
            break;
        }

        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p][q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                // Smaller-angle root of t^2 + 2 t theta - 1 = 0; the
                // direct形 overflows for huge theta, so fall back to the
                // asymptotic 1 / (2 theta).
                let t = if theta.abs() > 1e150 {
                    1.0 / (2.0 * theta)
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;

                // A <- J^T A J on columns then rows p, q.
                for i in 0..n {
                    let aip = a[i][p];
                    let aiq = a[i][q];
                    a[i][p] = c * aip - s * aiq;
                    a[i][q] = s * aip + c * aiq;
                }
                for i in 0..n {
                    let api = a[p][i];
                    let aqi = a[q][i];
                    a[p][i] = c * api - s * aqi;
                    a[q][i] = s * api + c * aqi;
                }
                // V <- V J.
                for row in v.iter_mut() {
                    let vip = row[p];
                    let viq = row[q];
                    row[p] = c * vip - s * viq;
                    row[q] = s * vip + c * viq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[j][j].total_cmp(&a[i][i]));

    let mut values = Vec::with_capacity(n);
    let mut vectors = Vec::with_capacity(n);
    for &col in &order {
        values.push(a[col][col]);
        let mut vector: Vec<f64> = v.iter().map(|row| row[col]).collect();
        fix_sign(&mut vector);
        vectors.push(vector);
    }
    SymmetricEigen { values, vectors }
}

// Flip the vector so its largest-magnitude entry is positive (first such
// entry on exact magnitude ties).
fn fix_sign(vector: &mut [f64]) {
    let mut lead = 0usize;
    for (i, v) in vector.iter().enumerate() {
        if v.abs() > vector[lead].abs() {
            lead = i;
        }
    }
    if vector[lead] < 0.0 {
        for v in vector.iter_mut() {
            *v = -*v;
        }
    }
}
