//! Dense complex LU factorization with partial (row) pivoting.

use num_complex::Complex64;

/// Factors are kept in compressed-row form: interconnection matrices are
/// mostly zeros, and the triangular solves dominate the cost.
pub(crate) struct Lu {
    n: usize,
    perm: Vec<usize>,
    diag: Vec<Complex64>,
    // strictly lower L and strictly upper U, row r spanning ptr[r]..ptr[r + 1]
    l: Csr,
    u: Csr,
}

struct Csr {
    ptr: Vec<usize>,
    idx: Vec<usize>,
    val: Vec<Complex64>,
}

impl Csr {
    fn from_dense(a: &[Complex64], n: usize, keep: impl Fn(usize, usize) -> bool) -> Csr {
        let mut m = Csr {
            ptr: Vec::with_capacity(n + 1),
            idx: Vec::new(),
            val: Vec::new(),
        };
        m.ptr.push(0);
        for r in 0..n {
            for c in 0..n {
                let v = a[r * n + c];
                if keep(r, c) && v != Complex64::new(0.0, 0.0) {
                    m.idx.push(c);
                    m.val.push(v);
                }
            }
            m.ptr.push(m.idx.len());
        }
        m
    }

    #[inline]
    fn row(&self, r: usize) -> impl Iterator<Item = (usize, Complex64)> + '_ {
        let span = self.ptr[r]..self.ptr[r + 1];
        self.idx[span.clone()].iter().copied().zip(self.val[span].iter().copied())
    }
}

impl Lu {
    /// Factors the row-major `n × n` matrix `a`. Returns `None` on an exactly
    /// zero pivot.
    pub fn factor(mut a: Vec<Complex64>, n: usize) -> Option<Lu> {
        debug_assert_eq!(a.len(), n * n);
        let mut perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let (p, pmag) = (k..n)
                .map(|r| (r, a[r * n + k].norm_sqr()))
                .fold((k, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
            if pmag == 0.0 {
                return None;
            }
            if p != k {
                for c in 0..n {
                    a.swap(k * n + c, p * n + c);
                }
                perm.swap(k, p);
            }
            let pivot = a[k * n + k];
            for r in (k + 1)..n {
                let factor = a[r * n + k] / pivot;
                if factor == Complex64::new(0.0, 0.0) {
                    continue;
                }
                a[r * n + k] = factor;
                for c in (k + 1)..n {
                    let u = a[k * n + c];
                    if u != Complex64::new(0.0, 0.0) {
                        a[r * n + c] -= factor * u;
                    }
                }
            }
        }
        Some(Lu {
            n,
            diag: (0..n).map(|i| a[i * n + i]).collect(),
            l: Csr::from_dense(&a, n, |r, c| c < r),
            u: Csr::from_dense(&a, n, |r, c| c > r),
            perm,
        })
    }

    /// Solves `A x = b` in place.
    pub fn solve(&self, b: &mut [Complex64]) {
        let n = self.n;
        let mut x: Vec<Complex64> = self.perm.iter().map(|&p| b[p]).collect();
        for r in 0..n {
            let mut acc = x[r];
            for (c, v) in self.l.row(r) {
                acc -= v * x[c];
            }
            x[r] = acc;
        }
        for r in (0..n).rev() {
            let mut acc = x[r];
            for (c, v) in self.u.row(r) {
                acc -= v * x[c];
            }
            x[r] = acc / self.diag[r];
        }
        b.copy_from_slice(&x);
    }

    /// Solves `Aᴴ x = b` in place.
    pub fn solve_adjoint(&self, b: &mut [Complex64]) {
        let n = self.n;
        // Aᴴ = Uᴴ Lᴴ P: solve Uᴴ y = b, then Lᴴ z = y, then x = Pᵀ z,
        // sweeping rows of U and L outward
        let mut y = b.to_vec();
        for r in 0..n {
            y[r] /= self.diag[r].conj();
            let yr = y[r];
            for (c, v) in self.u.row(r) {
                y[c] -= v.conj() * yr;
            }
        }
        for r in (0..n).rev() {
            let yr = y[r];
            for (c, v) in self.l.row(r) {
                y[c] -= v.conj() * yr;
            }
        }
        for (i, &p) in self.perm.iter().enumerate() {
            b[p] = y[i];
        }
    }

    /// Estimate of `‖A⁻¹‖₁` by Hager's method with Higham's refinements:
    /// a few solves with `A` and `Aᴴ` instead of forming the inverse. Never
    /// exceeds the true norm and is usually within a small factor of it.
    pub fn inverse_norm1_estimate(&self) -> f64 {
        let n = self.n;
        let zero = Complex64::new(0.0, 0.0);
        let mut x = vec![Complex64::new(1.0 / n as f64, 0.0); n];
        let mut est = 0.0;
        let mut last_j = usize::MAX;
        for iter in 0..5 {
            self.solve(&mut x);
            let new_est: f64 = x.iter().map(|&v| abs(v)).sum();
            if iter > 0 && new_est <= est {
                break;
            }
            est = new_est;
            let mut z: Vec<Complex64> = x
                .iter()
                .map(|&v| {
                    let m = abs(v);
                    if m == 0.0 {
                        Complex64::new(1.0, 0.0)
                    } else {
                        v / m
                    }
                })
                .collect();
            self.solve_adjoint(&mut z);
            let (j, zmax) = z
                .iter()
                .enumerate()
                .map(|(i, &v)| (i, abs(v)))
                .fold((0, -1.0), |b, c| if c.1 > b.1 { c } else { b });
            if zmax <= 0.0 {
                break;
            }
            if j == last_j {
                break;
            }
            last_j = j;
            x.iter_mut().for_each(|v| *v = zero);
            x[j] = Complex64::new(1.0, 0.0);
        }
        // alternating test vector guards against unlucky starts
        let mut alt: Vec<Complex64> = (0..n)
            .map(|i| {
                let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
                let scale = if n > 1 { i as f64 / (n - 1) as f64 } else { 0.0 };
                Complex64::new(sign * (1.0 + scale), 0.0)
            })
            .collect();
        self.solve(&mut alt);
        let alt_est = 2.0 * alt.iter().map(|&v| abs(v)).sum::<f64>() / (3.0 * n as f64);
        est.max(alt_est)
    }

    /// Exact `‖A⁻¹‖₁`, formed column by column.
    #[cfg(test)]
    pub fn inverse_norm1(&self) -> f64 {
        let n = self.n;
        let mut worst: f64 = 0.0;
        let mut col = vec![Complex64::new(0.0, 0.0); n];
        for j in 0..n {
            col.iter_mut().for_each(|v| *v = Complex64::new(0.0, 0.0));
            col[j] = Complex64::new(1.0, 0.0);
            self.solve(&mut col);
            worst = worst.max(col.iter().map(|&v| abs(v)).sum());
        }
        worst
    }
}

pub(crate) fn norm1(a: &[Complex64], n: usize) -> f64 {
    (0..n)
        .map(|c| (0..n).map(|r| abs(a[r * n + c])).sum::<f64>())
        .fold(0.0, f64::max)
}

// plain sqrt instead of hypot; overflow is not a concern for S-parameters
#[inline]
fn abs(v: Complex64) -> f64 {
    v.norm_sqr().sqrt()
}
