use crate::error::{Error, Result};

/// Dense real symmetric matrix, lower triangle stored row by row.
#[derive(Clone, Debug, PartialEq)]
pub struct SymMatrix {
    order: usize,
    lower: Vec<f64>,
}

#[inline]
fn packed(i: usize, j: usize) -> usize {
    let (r, c) = if i >= j { (i, j) } else { (j, i) };
    r * (r + 1) / 2 + c
}

impl SymMatrix {
    pub fn zeros(order: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::invalid("matrix order must be >= 1"));
        }
        Ok(Self {
            order,
            lower: vec![0.0; order * (order + 1) / 2],
        })
    }

    pub fn identity(order: usize) -> Result<Self> {
        Self::diagonal(&vec![1.0; order])
    }

    pub fn diagonal(diag: &[f64]) -> Result<Self> {
        let mut m = Self::zeros(diag.len())?;
        for (i, d) in diag.iter().enumerate() {
            m.set(i, i, *d);
        }
        Ok(m)
    }

    /// Builds the matrix from `f(i, j)` evaluated for `j <= i` only.
    pub fn from_lower_fn(order: usize, mut f: impl FnMut(usize, usize) -> f64) -> Result<Self> {
        let mut m = Self::zeros(order)?;
        for i in 0..order {
            for j in 0..=i {
                m.lower[packed(i, j)] = f(i, j);
            }
        }
        Ok(m)
    }

    /// Reads the lower triangle of a dense row-major matrix.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::invalid("matrix rows must form a square matrix"));
        }
        Self::from_lower_fn(n, |i, j| rows[i][j])
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.lower[packed(i, j)]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        self.lower[packed(i, j)] = value;
    }

    pub fn is_finite(&self) -> bool {
        self.lower.iter().all(|v| v.is_finite())
    }

    pub fn max_diagonal(&self) -> f64 {
        (0..self.order).map(|i| self.get(i, i)).fold(f64::NEG_INFINITY, f64::max)
    }

    /// `A + shift * I`.
    pub fn shifted(&self, shift: f64) -> Self {
        let mut m = self.clone();
        for i in 0..self.order {
            m.lower[packed(i, i)] += shift;
        }
        m
    }

    /// Leading principal `n × n` block.
    pub fn leading(&self, n: usize) -> Result<Self> {
        if n == 0 || n > self.order {
            return Err(Error::invalid(format!(
                "leading block of order {n} requested from a matrix of order {}",
                self.order
            )));
        }
        Ok(Self {
            order: n,
            lower: self.lower[..n * (n + 1) / 2].to_vec(),
        })
    }

    /// `P A Pᵀ` where row `i` of the result is row `perm[i]` of `A`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.order {
            return Err(Error::invalid("permutation length does not match matrix order"));
        }
        Self::from_lower_fn(self.order, |i, j| self.get(perm[i], perm[j]))
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        (0..self.order)
            .map(|i| (0..self.order).map(|j| self.get(i, j) * x[j]).sum())
            .collect()
    }

    pub fn frobenius_norm(&self) -> f64 {
        let mut s = 0.0;
        for i in 0..self.order {
            for j in 0..=i {
                let v = self.get(i, j);
                s += if i == j { v * v } else { 2.0 * v * v };
            }
        }
        s.sqrt()
    }

    fn to_dense(&self) -> Vec<Vec<f64>> {
        (0..self.order)
            .map(|i| (0..self.order).map(|j| self.get(i, j)).collect())
            .collect()
    }
}

/// Lower Cholesky factor `L` with `A = L Lᵀ`.
#[derive(Clone, Debug)]
pub struct Cholesky {
    factor: SymMatrix,
}

impl Cholesky {
    pub fn solve(&self, b: &[f64]) -> Result<Vec<f64>> {
        let n = self.factor.order;
        if b.len() != n {
            return Err(Error::invalid(format!(
                "right-hand side has length {}, matrix order is {n}",
                b.len()
            )));
        }
        let l = &self.factor;
        let mut y = b.to_vec();
        for i in 0..n {
            let mut s = y[i];
            for k in 0..i {
                s -= l.get(i, k) * y[k];
            }
            y[i] = s / l.get(i, i);
        }
        for i in (0..n).rev() {
            let mut s = y[i];
            for k in i + 1..n {
                s -= l.get(k, i) * y[k];
            }
            y[i] = s / l.get(i, i);
        }
        Ok(y)
    }

    pub fn determinant(&self) -> f64 {
        (0..self.factor.order)
            .map(|i| self.factor.get(i, i))
            .product::<f64>()
            .powi(2)
    }
}

/// Factors an SPD matrix. Pivots at or below `1e-14 · max diag` are rejected.
pub fn cholesky(a: &SymMatrix) -> Result<Cholesky> {
    if !a.is_finite() {
        return Err(Error::invalid("matrix has non-finite entries"));
    }
    let n = a.order;
    let tol = 1e-14 * a.max_diagonal().max(0.0);
    let mut l = SymMatrix::zeros(n)?;
    for j in 0..n {
        let mut d = a.get(j, j);
        for k in 0..j {
            d -= l.get(j, k).powi(2);
        }
        if !(d > tol) {
            return Err(Error::NotPositiveDefinite { index: j, pivot: d });
        }
        let djj = d.sqrt();
        l.set(j, j, djj);
        for i in j + 1..n {
            let mut s = a.get(i, j);
            for k in 0..j {
                s -= l.get(i, k) * l.get(j, k);
            }
            l.set(i, j, s / djj);
        }
    }
    Ok(Cholesky { factor: l })
}

pub fn cholesky_solve(a: &SymMatrix, b: &[f64]) -> Result<Vec<f64>> {
    cholesky(a)?.solve(b)
}

/// All eigenvalues, ascending, by cyclic Jacobi rotations.
///
/// Sweeps continue until the off-diagonal Frobenius norm falls below
/// `1e-12 · ‖A‖_F`.
pub fn sym_eigvals(a: &SymMatrix) -> Result<Vec<f64>> {
    if !a.is_finite() {
        return Err(Error::invalid("matrix has non-finite entries"));
    }
    const MAX_SWEEPS: usize = 100;
    let n = a.order;
    let mut m = a.to_dense();
    let target = 1e-12 * a.frobenius_norm();

    let off_norm = |m: &Vec<Vec<f64>>| {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..i {
                s += 2.0 * m[i][j] * m[i][j];
            }
        }
        s.sqrt()
    };

    for _ in 0..MAX_SWEEPS {
        if off_norm(&m) <= target {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[p][q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (m[q][q] - m[p][p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let mkp = m[k][p];
                    let mkq = m[k][q];
                    m[k][p] = c * mkp - s * mkq;
                    m[k][q] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let mpk = m[p][k];
                    let mqk = m[q][k];
                    m[p][k] = c * mpk - s * mqk;
                    m[q][k] = s * mpk + c * mqk;
                }
                m[p][q] = 0.0;
                m[q][p] = 0.0;
            }
        }
    }

    let mut eig: Vec<f64> = (0..n).map(|i| m[i][i]).collect();
    eig.sort_by(|a, b| a.total_cmp(b));
    Ok(eig)
}

/// 2-norm condition number of `A + αI` for symmetric PSD `A`.
pub fn condition_number(a: &SymMatrix, alpha: f64) -> Result<f64> {
    if !(alpha >= 0.0) {
        return Err(Error::invalid(format!("alpha must be >= 0, got {alpha}")));
    }
    let eig = sym_eigvals(a)?;
    let lo = eig[0] + alpha;
    let hi = eig[eig.len() - 1] + alpha;
    if !(lo > 0.0) {
        return Err(Error::Singular(lo));
    }
    Ok(hi / lo)
}
