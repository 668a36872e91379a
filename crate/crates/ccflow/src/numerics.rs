//! Dense little linear-algebra helpers sized for chart dimensions.

/// An LU factorization with partial pivoting of a row-major square matrix.
pub(crate) struct Lu {
    n: usize,
    a: Vec<f64>,
    pivots: Vec<usize>,
    sign: f64,
}

pub(crate) fn lu_decompose(n: usize, mut a: Vec<f64>) -> Option<Lu> {
    debug_assert_eq!(a.len(), n * n);
    let mut pivots = vec![0usize; n];
    let mut sign = 1.0;
    for k in 0..n {
        let mut best = k;
        let mut best_abs = a[k * n + k].abs();
        for r in k + 1..n {
            let v = a[r * n + k].abs();
            if v > best_abs {
                best = r;
                best_abs = v;
            }
        }
        if best_abs == 0.0 {
            return None;
        }
        pivots[k] = best;
        if best != k {
            for c in 0..n {
                a.swap(k * n + c, best * n + c);
            }
            sign = -sign;
        }
        let pivot = a[k * n + k];
        for r in k + 1..n {
            let factor = a[r * n + k] / pivot;
            a[r * n + k] = factor;
            for c in k + 1..n {
                a[r * n + c] -= factor * a[k * n + c];
            }
        }
    }
    Some(Lu { n, a, pivots, sign })
}

impl Lu {
    pub(crate) fn det(&self) -> f64 {
        let mut d = self.sign;
        for k in 0..self.n {
            d *= self.a[k * self.n + k];
        }
        d
    }

    pub(crate) fn solve_into(&self, b: &mut [f64]) {
        let n = self.n;
        for k in 0..n {
            b.swap(k, self.pivots[k]);
        }
        for r in 1..n {
            let acc: f64 = (0..r).map(|c| self.a[r * n + c] * b[c]).sum();
            b[r] -= acc;
        }
        for r in (0..n).rev() {
            let acc: f64 = (r + 1..n).map(|c| self.a[r * n + c] * b[c]).sum();
            b[r] = (b[r] - acc) / self.a[r * n + r];
        }
    }
}

/// Determinant of a row-major square matrix; zero when singular.
pub(crate) fn det(n: usize, a: &[f64]) -> f64 {
    lu_decompose(n, a.to_vec()).map_or(0.0, |lu| lu.det())
}

/// Least-squares line through the points, as (slope, intercept).
pub(crate) fn fit_line(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    debug_assert_eq!(xs.len(), ys.len());
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for (x, y) in xs.iter().zip(ys) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    let slope = sxy / sxx;
    (slope, my - slope * mx)
}
