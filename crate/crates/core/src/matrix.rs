//! Minimal dense square-matrix support for the collocation kernel.

/// Row-major dense square matrix.
#[derive(Debug, Clone)]
pub struct SquareMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SquareMatrix {
    pub fn zeros(n: usize) -> Self {
        SquareMatrix {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Self {
        let n = rows.len();
        let mut m = SquareMatrix::zeros(n);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), n, "matrix must be square");
            m.row_mut(i).copy_from_slice(row);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [f64] {
        &mut self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn row_sums(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.row(i).iter().sum()).collect()
    }

    /// out = M v.
    pub fn mul_vec(&self, v: &[f64], out: &mut [f64]) {
        assert_eq!(v.len(), self.n);
        assert_eq!(out.len(), self.n);
        for (o, row) in out.iter_mut().zip(self.data.chunks_exact(self.n)) {
            *o = row.iter().zip(v).map(|(m, x)| m * x).sum();
        }
    }

    /// Osborne balancing with power-of-two factors: replaces M by D^-1 M D
    /// with row and column 1-norms approximately equal, and returns D.
    ///
    /// Eigenvalues are preserved exactly even in floating point, because the
    /// scale factors are powers of two. Balancing tames the huge dynamic
    /// range the transfer matrix develops at large |t|, where the leading
    /// eigenvalue would otherwise sit below the rounding floor of the norm.
    pub fn balance(&mut self) -> Vec<f64> {
        let n = self.n;
        let mut d = vec![1.0; n];
        for _sweep in 0..100 {
            let mut converged = true;
            #[allow(clippy::needless_range_loop)] // i indexes rows, columns, and d alike
            for i in 0..n {
                let mut c: f64 = (0..n)
                    .filter(|&k| k != i)
                    .map(|k| self.get(k, i).abs())
                    .sum();
                let mut r: f64 = (0..n)
                    .filter(|&k| k != i)
                    .map(|k| self.get(i, k).abs())
                    .sum();
                if c == 0.0 || r == 0.0 || !c.is_finite() || !r.is_finite() {
                    continue;
                }
                let s = c + r;
                let mut f = 1.0;
                while c < r / 2.0 {
                    c *= 2.0;
                    r /= 2.0;
                    f *= 2.0;
                }
                while c >= r * 2.0 {
                    c /= 2.0;
                    r *= 2.0;
                    f *= 0.5;
                }
                if c + r < 0.95 * s {
                    converged = false;
                    d[i] *= f;
                    let inv = 1.0 / f;
                    for k in 0..n {
                        let v = self.get(k, i) * f;
                        self.set(k, i, v);
                    }
                    for k in 0..n {
                        let v = self.get(i, k) * inv;
                        self.set(i, k, v);
                    }
                }
            }
            if converged {
                break;
            }
        }
        d
    }
}
