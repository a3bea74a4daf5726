//! Dense matrices over `F_p` and exact Gaussian elimination.

use std::fmt;
use std::ops::{Index, IndexMut};

use rand::Rng;

use crate::field::Fp;

/// Row-major dense matrix over `F_p`.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    modulus: u64,
    data: Vec<Fp>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize, modulus: u64) -> Self {
        Matrix {
            rows,
            cols,
            modulus,
            data: vec![Fp::zero(modulus); rows * cols],
        }
    }

    pub fn identity(n: usize, modulus: u64) -> Self {
        let mut m = Self::zeros(n, n, modulus);
        for i in 0..n {
            m[(i, i)] = Fp::one(modulus);
        }
        m
    }

    /// `data` must be nonempty (the modulus is read from it) unless
    /// `rows * cols == 0`, in which case use [`Matrix::zeros`].
    pub fn from_vec(rows: usize, cols: usize, data: Vec<Fp>) -> Self {
        assert_eq!(rows * cols, data.len());
        let modulus = data.first().map(|x| x.modulus()).expect("empty data");
        Matrix {
            rows,
            cols,
            modulus,
            data,
        }
    }

    /// Builds a matrix from integer rows, reducing mod `p`.
    pub fn from_rows(rows: &[Vec<i64>], p: u64) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(r, c, p);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &v) in row.iter().enumerate() {
                m[(i, j)] = Fp::from_i64(v, p);
            }
        }
        m
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize, p: u64) -> Self {
        let mut m = Self::zeros(rows, cols, p);
        for x in &mut m.data {
            *x = Fp::new(rng.gen_range(0..p), p);
        }
        m
    }

    /// The elementary matrix with a one at `(i, j)`.
    pub fn unit(n: usize, i: usize, j: usize, p: u64) -> Self {
        let mut m = Self::zeros(n, n, p);
        m[(i, j)] = Fp::one(p);
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn data(&self) -> &[Fp] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Fp] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Self::zeros(self.cols, self.rows, self.modulus);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "inner dimensions differ");
        let mut out = Self::zeros(self.rows, rhs.cols, self.modulus);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(&a, &b)| a + b)
            .collect();
        Matrix { data, ..*self }
    }

    pub fn sub(&self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(&a, &b)| a - b)
            .collect();
        Matrix { data, ..*self }
    }

    pub fn scale(&self, c: Fp) -> Matrix {
        let data = self.data.iter().map(|&a| a * c).collect();
        Matrix { data, ..*self }
    }

    pub fn pow(&self, mut e: u64) -> Matrix {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Self::identity(self.rows, self.modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn trace(&self) -> Fp {
        assert!(self.is_square());
        (0..self.rows).fold(Fp::zero(self.modulus), |acc, i| acc + self[(i, i)])
    }

    /// `[self, rhs] = self * rhs - rhs * self`.
    pub fn commutator(&self, rhs: &Matrix) -> Matrix {
        self.mul(rhs).sub(&rhs.mul(self))
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = m[(r, c)].inv().expect("pivot is nonzero");
            for j in c..m.cols {
                m[(r, j)] *= inv;
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m[(i, c)];
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let v = m[(r, j)];
                    m[(i, j)] -= f * v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space `{v : self * v = 0}`, one vector per
    /// free column, in increasing free-column order.
    pub fn kernel(&self) -> Vec<Vec<Fp>> {
        let (red, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let zero = Fp::zero(self.modulus);
        let one = Fp::one(self.modulus);
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![zero; self.cols];
                v[free] = one;
                for (k, &pc) in pivots.iter().enumerate() {
                    v[pc] = -red[(k, free)];
                }
                v
            })
            .collect()
    }

    /// Stacks equal-length vectors as rows.
    pub fn from_row_vecs(vecs: &[Vec<Fp>], cols: usize, modulus: u64) -> Matrix {
        let mut m = Self::zeros(vecs.len(), cols, modulus);
        for (i, v) in vecs.iter().enumerate() {
            assert_eq!(v.len(), cols);
            m.data[i * cols..(i + 1) * cols].copy_from_slice(v);
        }
        m
    }

    pub fn apply(&self, v: &[Fp]) -> Vec<Fp> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(Fp::zero(self.modulus), |acc, (&a, &b)| acc + a * b)
            })
            .collect()
    }

    pub fn det(&self) -> Fp {
        assert!(self.is_square());
        let mut m = self.clone();
        let n = self.rows;
        let mut det = Fp::one(self.modulus);
        for c in 0..n {
            let Some(pr) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return Fp::zero(self.modulus);
            };
            if pr != c {
                m.swap_rows(c, pr);
                det = -det;
            }
            let piv = m[(c, c)];
            det *= piv;
            let inv = piv.inv().expect("pivot is nonzero");
            for i in c + 1..n {
                let f = m[(i, c)] * inv;
                if f.is_zero() {
                    continue;
                }
                for j in c..n {
                    let v = m[(c, j)];
                    m[(i, j)] -= f * v;
                }
            }
        }
        det
    }

    /// Inverse by Gauss-Jordan on `[self | I]`, or `None` when singular.
    pub fn inverse(&self) -> Option<Matrix> {
        assert!(self.is_square());
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n, self.modulus);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)];
            }
            aug[(i, n + i)] = Fp::one(self.modulus);
        }
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Self::zeros(n, n, self.modulus);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = red[(i, n + j)];
            }
        }
        Some(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Fp;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Fp {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Fp {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "Matrix {}x{} over F_{} [",
            self.rows, self.cols, self.modulus
        )?;
        for i in 0..self.rows {
            let row: Vec<u64> = self.row(i).iter().map(|x| x.value()).collect();
            writeln!(f, "  {row:?}")?;
        }
        write!(f, "]")
    }
}

/// Rank of the span of a family of vectors.
pub fn span_rank(vecs: &[Vec<Fp>], dim: usize, modulus: u64) -> usize {
    if vecs.is_empty() {
        return 0;
    }
    Matrix::from_row_vecs(vecs, dim, modulus).rank()
}

/// True when the two families span the same subspace.
pub fn same_span(a: &[Vec<Fp>], b: &[Vec<Fp>], dim: usize, modulus: u64) -> bool {
    let ra = span_rank(a, dim, modulus);
    let rb = span_rank(b, dim, modulus);
    let both: Vec<Vec<Fp>> = a.iter().chain(b).cloned().collect();
    ra == rb && span_rank(&both, dim, modulus) == ra
}

/// True when every vector of `sub` lies in the span of `sup`.
pub fn span_contains(sup: &[Vec<Fp>], sub: &[Vec<Fp>], dim: usize, modulus: u64) -> bool {
    let r = span_rank(sup, dim, modulus);
    let both: Vec<Vec<Fp>> = sup.iter().chain(sub).cloned().collect();
    span_rank(&both, dim, modulus) == r
}
