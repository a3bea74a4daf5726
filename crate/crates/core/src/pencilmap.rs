//! The map `A = (A_1, ..., A_r) -> det(x_0 I + x_1 A_1 + ... + x_r A_r)`,
//! its differential, and exact rank and kernel computations for it.
//!
//! Coordinates on the target are the coefficients of every monomial of
//! degree `n` in `x_0..x_r` except `x_0^n`, whose coefficient is always 1.
//! Coordinates on the source are the `r n^2` matrix entries, slot-major and
//! row-major within each slot.

use std::collections::{BTreeMap, HashMap};

use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{FieldCtx, Fp};
use crate::matrix::{same_span, span_contains, span_rank, Matrix};
use crate::poly::{Monomial, MultiPoly, PolyMatrix};

/// A point of `M_n^r`: `r` square matrices of one size over one field.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MatrixTuple {
    n: usize,
    modulus: u64,
    mats: Vec<Matrix>,
}

impl MatrixTuple {
    pub fn new(mats: Vec<Matrix>) -> Result<Self> {
        let first = mats
            .first()
            .ok_or_else(|| Error::ShapeMismatch("a tuple needs at least one matrix".into()))?;
        let n = first.rows();
        let modulus = first.modulus();
        for (k, m) in mats.iter().enumerate() {
            if m.rows() != n || m.cols() != n || m.modulus() != modulus {
                return Err(Error::ShapeMismatch(format!(
                    "slot {} is {}x{} over F_{}, expected {n}x{n} over F_{modulus}",
                    k + 1,
                    m.rows(),
                    m.cols(),
                    m.modulus()
                )));
            }
        }
        Ok(MatrixTuple { n, modulus, mats })
    }

    pub fn zeros(n: usize, r: usize, modulus: u64) -> Self {
        MatrixTuple {
            n,
            modulus,
            mats: vec![Matrix::zeros(n, n, modulus); r],
        }
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R, n: usize, r: usize, modulus: u64) -> Self {
        MatrixTuple {
            n,
            modulus,
            mats: (0..r).map(|_| Matrix::random(rng, n, n, modulus)).collect(),
        }
    }

    /// Inverse of [`MatrixTuple::to_vec`].
    pub fn from_flat(n: usize, r: usize, flat: &[Fp]) -> Result<Self> {
        if flat.len() != r * n * n || flat.is_empty() {
            return Err(Error::ShapeMismatch(format!(
                "{} entries cannot fill {r} matrices of size {n}x{n}",
                flat.len()
            )));
        }
        let mats = flat
            .chunks(n * n)
            .map(|c| Matrix::from_vec(n, n, c.to_vec()))
            .collect();
        Self::new(mats)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.mats.len()
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn mats(&self) -> &[Matrix] {
        &self.mats
    }

    pub fn slot(&self, m: usize) -> &Matrix {
        &self.mats[m]
    }

    /// Slot-major, row-major flattening of length `r n^2`.
    pub fn to_vec(&self) -> Vec<Fp> {
        self.mats
            .iter()
            .flat_map(|m| m.data().iter().copied())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.mats.iter().all(Matrix::is_zero)
    }

    pub fn map(&self, f: impl Fn(&Matrix) -> Matrix) -> Self {
        MatrixTuple {
            n: self.n,
            modulus: self.modulus,
            mats: self.mats.iter().map(f).collect(),
        }
    }

    fn check_same_shape(&self, other: &MatrixTuple) -> Result<()> {
        if self.n != other.n || self.r() != other.r() || self.modulus != other.modulus {
            return Err(Error::ShapeMismatch(format!(
                "tuple of {} {}x{} matrices over F_{} vs {} {}x{} over F_{}",
                self.r(),
                self.n,
                self.n,
                self.modulus,
                other.r(),
                other.n,
                other.n,
                other.modulus
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &MatrixTuple) -> Result<Self> {
        self.check_same_shape(other)?;
        let mats = self
            .mats
            .iter()
            .zip(&other.mats)
            .map(|(a, b)| a.add(b))
            .collect();
        Ok(MatrixTuple { mats, ..*self })
    }

    pub fn scale(&self, c: Fp) -> Self {
        self.map(|m| m.scale(c))
    }

    fn pencil(&self) -> PolyMatrix {
        PolyMatrix::pencil(&self.mats, self.n, self.modulus).expect("tuple shapes are validated")
    }
}

/// The target coordinates: every monomial of degree `n` in `r + 1`
/// variables except `x_0^n`, in descending graded-lex order.
pub fn coeff_indices(n: usize, r: usize) -> Vec<Monomial> {
    let mut all = Monomial::all_of_degree(r + 1, n);
    all.remove(0);
    all
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Coefficients of a normalized degree-`n` form, leading `x_0^n` dropped.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CoeffVector {
    indices: Vec<Monomial>,
    values: Vec<Fp>,
}

impl CoeffVector {
    fn from_poly(poly: &MultiPoly, n: usize, r: usize) -> Self {
        let indices = coeff_indices(n, r);
        let values = indices
            .iter()
            .map(|m| poly.coeff(m).expect("index arity matches"))
            .collect();
        CoeffVector { indices, values }
    }

    pub fn indices(&self) -> &[Monomial] {
        &self.indices
    }

    pub fn values(&self) -> &[Fp] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, m: &Monomial) -> Option<Fp> {
        self.indices
            .iter()
            .position(|x| x == m)
            .map(|k| self.values[k])
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }
}

/// `det(x_0 I + x_1 A_1 + ... + x_r A_r)` as a polynomial.
pub fn char_poly(a: &MatrixTuple) -> MultiPoly {
    a.pencil().det()
}

/// Coefficient vector of the characteristic form of `a`.
pub fn char_coeffs(a: &MatrixTuple) -> Result<CoeffVector> {
    let det = char_poly(a);
    let mut lead = vec![0u8; a.r() + 1];
    lead[0] = a.n() as u8;
    if !det.coeff(&Monomial::new(&lead))?.is_one() {
        return Err(Error::InvariantViolation(
            "leading coefficient of the pencil determinant is not 1".into(),
        ));
    }
    Ok(CoeffVector::from_poly(&det, a.n(), a.r()))
}

/// Directional derivative of the characteristic form at `a` along `b`:
/// the coefficients of `Tr(adj(x_0 I + sum x_m A_m) * sum x_m B_m)`.
pub fn differential(a: &MatrixTuple, b: &MatrixTuple) -> Result<CoeffVector> {
    a.check_same_shape(b)?;
    let n = a.n();
    let r = a.r();
    let p = a.modulus();
    let adj = a.pencil().adjugate();
    let mut acc = MultiPoly::zero(r + 1, p);
    for i in 0..n {
        for j in 0..n {
            let mut lin = MultiPoly::zero(r + 1, p);
            for (m, bm) in b.mats().iter().enumerate() {
                lin.add_term(Monomial::var(r + 1, m + 1), bm[(i, j)]);
            }
            if !lin.is_zero() {
                acc = &acc + &(adj.get(j, i) * &lin);
            }
        }
    }
    Ok(CoeffVector::from_poly(&acc, n, r))
}

/// Matrix of the differential: rows are target coordinates, columns are
/// source coordinates (slot-major, row-major within each slot).
#[derive(Clone, Debug)]
pub struct JacobianMatrix {
    n: usize,
    r: usize,
    matrix: Matrix,
}

impl JacobianMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    /// Kernel of the differential, reshaped into tuples.
    pub fn kernel(&self) -> KernelBasis {
        let p = self.matrix.modulus();
        let elements = self
            .matrix
            .kernel()
            .iter()
            .map(|v| MatrixTuple::from_flat(self.n, self.r, v).expect("kernel vector length"))
            .collect();
        KernelBasis {
            n: self.n,
            r: self.r,
            modulus: p,
            elements,
        }
    }
}

pub fn jacobian(a: &MatrixTuple) -> JacobianMatrix {
    let n = a.n();
    let r = a.r();
    let p = a.modulus();
    let indices = coeff_indices(n, r);
    let row_of: HashMap<&Monomial, usize> =
        indices.iter().enumerate().map(|(k, m)| (m, k)).collect();
    let adj = a.pencil().adjugate();
    let mut matrix = Matrix::zeros(indices.len(), r * n * n, p);
    for m in 0..r {
        for i in 0..n {
            for j in 0..n {
                let col = m * n * n + i * n + j;
                // direction E_ij in slot m contributes x_m * adj_{ji}
                for (mono, c) in adj.get(j, i).shift(m + 1).terms() {
                    let row = row_of[mono];
                    matrix[(row, col)] = c;
                }
            }
        }
    }
    JacobianMatrix { n, r, matrix }
}

/// A list of tuples spanning a subspace of `M_n^r`.
#[derive(Clone, Debug)]
pub struct KernelBasis {
    n: usize,
    r: usize,
    modulus: u64,
    elements: Vec<MatrixTuple>,
}

impl KernelBasis {
    pub fn new(n: usize, r: usize, modulus: u64, elements: Vec<MatrixTuple>) -> Self {
        KernelBasis {
            n,
            r,
            modulus,
            elements,
        }
    }

    pub fn elements(&self) -> &[MatrixTuple] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn ambient_dim(&self) -> usize {
        self.r * self.n * self.n
    }

    pub fn vectors(&self) -> Vec<Vec<Fp>> {
        self.elements.iter().map(MatrixTuple::to_vec).collect()
    }

    /// Dimension of the span (equal to `len` for a basis).
    pub fn span_dim(&self) -> usize {
        span_rank(&self.vectors(), self.ambient_dim(), self.modulus)
    }

    pub fn same_span(&self, other: &KernelBasis) -> bool {
        self.ambient_dim() == other.ambient_dim()
            && same_span(
                &self.vectors(),
                &other.vectors(),
                self.ambient_dim(),
                self.modulus,
            )
    }

    /// True when every element of `other` lies in this span.
    pub fn contains_span(&self, other: &KernelBasis) -> bool {
        self.ambient_dim() == other.ambient_dim()
            && span_contains(
                &self.vectors(),
                &other.vectors(),
                self.ambient_dim(),
                self.modulus,
            )
    }

    pub fn contains(&self, t: &MatrixTuple) -> bool {
        span_contains(
            &self.vectors(),
            &[t.to_vec()],
            self.ambient_dim(),
            self.modulus,
        )
    }
}

/// Powers of the linear matrix form `sum_i x_i M_i`, as maps from
/// monomials in `x_1..x_k` (stored as `k`-variable exponent vectors) to
/// coefficient matrices. Entry `d` of the result is the `d`-th power.
pub fn linear_form_powers(mats: &[Matrix], max_power: usize) -> Vec<BTreeMap<Monomial, Matrix>> {
    let k = mats.len();
    let n = mats[0].rows();
    let p = mats[0].modulus();
    let mut out = Vec::with_capacity(max_power + 1);
    let mut cur = BTreeMap::new();
    cur.insert(Monomial::one(k), Matrix::identity(n, p));
    for _ in 0..max_power {
        let mut next: BTreeMap<Monomial, Matrix> = BTreeMap::new();
        for (mono, c) in &cur {
            for (i, mi) in mats.iter().enumerate() {
                let mut e = mono.exponents().to_vec();
                e[i] += 1;
                let prod = c.mul(mi);
                next.entry(Monomial::new(&e))
                    .and_modify(|acc| *acc = acc.add(&prod))
                    .or_insert(prod);
            }
        }
        out.push(std::mem::replace(&mut cur, next));
    }
    out.push(cur);
    out
}

/// Kernel of the differential via the trace-power criterion: the tuples
/// `B` with `Tr((sum x_i A_i)^d (sum x_i B_i)) = 0` identically for
/// `d = 0..n-1`.
///
/// Valid when some linear combination of the `A_i` has `n` distinct
/// eigenvalues; this is certified by finding a random combination whose
/// characteristic polynomial is squarefree (at most `attempts` tries).
pub fn kernel_via_traces<R: Rng + ?Sized>(
    a: &MatrixTuple,
    rng: &mut R,
    attempts: usize,
) -> Result<KernelBasis> {
    if find_regular_combination(a, rng, attempts).is_none() {
        return Err(Error::Precondition(format!(
            "no squarefree characteristic polynomial among {attempts} random combinations"
        )));
    }
    Ok(trace_power_system(a).kernel())
}

/// The linear system of the trace-power criterion, one row per degree and
/// monomial, over the same columns as the Jacobian.
pub fn trace_power_system(a: &MatrixTuple) -> JacobianMatrix {
    let n = a.n();
    let r = a.r();
    let p = a.modulus();
    let powers = linear_form_powers(a.mats(), n - 1);
    let mut rows: Vec<Vec<Fp>> = Vec::new();
    for (d, table) in powers.iter().enumerate() {
        for mono in Monomial::all_of_degree(r, d + 1) {
            let mut row = vec![Fp::zero(p); r * n * n];
            for m in 0..r {
                if mono.exponent(m) == 0 {
                    continue;
                }
                let mut e = mono.exponents().to_vec();
                e[m] -= 1;
                let Some(c) = table.get(&Monomial::new(&e)) else {
                    continue;
                };
                // Tr(C B_m) = sum_{i,j} C_{ji} (B_m)_{ij}
                for i in 0..n {
                    for j in 0..n {
                        row[m * n * n + i * n + j] += c[(j, i)];
                    }
                }
            }
            if row.iter().any(|x| !x.is_zero()) {
                rows.push(row);
            }
        }
    }
    let matrix = if rows.is_empty() {
        Matrix::zeros(1, r * n * n, p)
    } else {
        Matrix::from_row_vecs(&rows, r * n * n, p)
    };
    JacobianMatrix { n, r, matrix }
}

/// A random linear combination of the slots with squarefree
/// characteristic polynomial, if one is found.
pub fn find_regular_combination<R: Rng + ?Sized>(
    a: &MatrixTuple,
    rng: &mut R,
    attempts: usize,
) -> Option<Matrix> {
    let p = a.modulus();
    (0..attempts).find_map(|_| {
        let combo = a
            .mats()
            .iter()
            .map(|m| m.scale(Fp::new(rng.gen_range(0..p), p)))
            .reduce(|x, y| x.add(&y))
            .expect("tuple is nonempty");
        has_distinct_eigenvalues(&combo).then_some(combo)
    })
}

/// Squarefreeness of the characteristic polynomial, i.e. `n` distinct
/// eigenvalues over the algebraic closure.
pub fn has_distinct_eigenvalues(m: &Matrix) -> bool {
    let cp = univariate_char_poly(m);
    let deriv: Vec<Fp> = cp
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, &c)| c * Fp::new(k as u64, m.modulus()))
        .collect();
    upoly_degree(&upoly_gcd(cp, deriv)) == Some(0)
}

/// Coefficients (low degree first) of `det(t I - M)`.
pub fn univariate_char_poly(m: &Matrix) -> Vec<Fp> {
    let n = m.rows();
    let p = m.modulus();
    let neg = m.scale(-Fp::one(p));
    let det = PolyMatrix::pencil(&[neg], n, p)
        .expect("square matrix")
        .det();
    // det(x_0 I - x_1 M) at x_1 = 1
    (0..=n)
        .map(|k| {
            det.coeff(&Monomial::new(&[k as u8, (n - k) as u8]))
                .expect("two variables")
        })
        .collect()
}

fn upoly_degree(f: &[Fp]) -> Option<usize> {
    f.iter().rposition(|c| !c.is_zero())
}

fn upoly_gcd(mut a: Vec<Fp>, mut b: Vec<Fp>) -> Vec<Fp> {
    while let Some(db) = upoly_degree(&b) {
        let lead_inv = b[db].inv().expect("leading coefficient is nonzero");
        while let Some(da) = upoly_degree(&a) {
            if da < db {
                break;
            }
            let f = a[da] * lead_inv;
            for k in 0..=db {
                let v = b[k];
                a[da - db + k] -= f * v;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    a
}

/// Basis of the tangent space to the conjugation orbit through `a`:
/// the span of `([C, A_1], ..., [C, A_r])` over trace-zero `C`.
pub fn pgl_tangent(a: &MatrixTuple) -> KernelBasis {
    let n = a.n();
    let r = a.r();
    let p = a.modulus();
    let mut generators = Vec::with_capacity(n * n - 1);
    for i in 0..n {
        for j in 0..n {
            if i != j {
                generators.push(Matrix::unit(n, i, j, p));
            }
        }
    }
    for i in 0..n - 1 {
        generators.push(Matrix::unit(n, i, i, p).sub(&Matrix::unit(n, n - 1, n - 1, p)));
    }
    let vecs: Vec<Vec<Fp>> = generators
        .iter()
        .map(|c| a.map(|am| c.commutator(am)).to_vec())
        .collect();
    let dim = r * n * n;
    let (red, pivots) = Matrix::from_row_vecs(&vecs, dim, p).rref();
    let elements = (0..pivots.len())
        .map(|k| MatrixTuple::from_flat(n, r, red.row(k)).expect("row length"))
        .collect();
    KernelBasis::new(n, r, p, elements)
}

/// Generic rank of the differential predicted by the dimension count:
/// `min(r n^2, (r-1) n^2 + 1, C(r+n, n) - 1)`.
pub fn expected_rank(n: usize, r: usize) -> usize {
    let src = r * n * n;
    let quotient = (r - 1) * n * n + 1;
    let target = binomial(r + n, n) - 1;
    src.min(quotient).min(target)
}

/// Outcome of sampling random points and measuring the Jacobian rank.
#[derive(Clone, Debug)]
pub struct RankCertificate {
    pub n: usize,
    pub r: usize,
    pub p: u64,
    pub ranks: Vec<usize>,
    pub max_rank: usize,
    pub witness: MatrixTuple,
}

impl RankCertificate {
    pub fn expected(&self) -> usize {
        expected_rank(self.n, self.r)
    }

    /// Trials that fell short of the maximum observed rank.
    pub fn deficient_trials(&self) -> usize {
        self.ranks.iter().filter(|&&k| k < self.max_rank).count()
    }
}

/// Samples `trials` uniform points of `M_n^r` over `ctx` and keeps the
/// one with the largest Jacobian rank (first one on ties).
pub fn certify_rank<R: Rng + ?Sized>(
    ctx: &FieldCtx,
    r: usize,
    trials: usize,
    rng: &mut R,
) -> Result<RankCertificate> {
    if trials == 0 {
        return Err(Error::InvalidArgument(
            "at least one trial is required".into(),
        ));
    }
    let n = ctx.n();
    let p = ctx.p();
    // sample sequentially so the draw order is fixed, then rank in parallel
    let points: Vec<MatrixTuple> = (0..trials)
        .map(|_| MatrixTuple::random(rng, n, r, p))
        .collect();
    let ranks: Vec<usize> = points.par_iter().map(|a| jacobian(a).rank()).collect();
    let best = (0..trials)
        .max_by_key(|&k| (ranks[k], std::cmp::Reverse(k)))
        .expect("trials > 0");
    Ok(RankCertificate {
        n,
        r,
        p,
        max_rank: ranks[best],
        witness: points[best].clone(),
        ranks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn tuple(rows: &[&[Vec<i64>]], p: u64) -> MatrixTuple {
        MatrixTuple::new(rows.iter().map(|m| Matrix::from_rows(m, p)).collect()).unwrap()
    }

    #[test]
    fn char_coeffs_examples() {
        let a = tuple(&[&[vec![4]]], 7);
        let c = char_coeffs(&a).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c.get(&Monomial::new(&[0, 1])).unwrap().value(), 4);

        let id = MatrixTuple::new(vec![Matrix::identity(2, 5)]).unwrap();
        let c = char_coeffs(&id).unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(c.get(&Monomial::new(&[1, 1])).unwrap().value(), 2);
        assert_eq!(c.get(&Monomial::new(&[0, 2])).unwrap().value(), 1);
    }

    #[test]
    fn coeff_vector_length() {
        for n in 1..=4 {
            for r in 1..=4 {
                assert_eq!(coeff_indices(n, r).len(), binomial(r + n, n) - 1);
            }
        }
    }

    #[test]
    fn differential_of_zero_direction_vanishes() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let a = MatrixTuple::random(&mut rng, 3, 2, 7);
        let d = differential(&a, &MatrixTuple::zeros(3, 2, 7)).unwrap();
        assert!(d.is_zero());
        let bad = MatrixTuple::zeros(2, 2, 7);
        assert!(differential(&a, &bad).is_err());
    }

    #[test]
    fn jacobian_at_origin_has_rank_r() {
        for (n, r) in [(2, 2), (2, 3), (3, 2), (3, 3)] {
            let j = jacobian(&MatrixTuple::zeros(n, r, 7));
            assert_eq!(j.rank(), r, "n={n} r={r}");
        }
    }

    #[test]
    fn jacobian_columns_are_differentials() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let (n, r, p) = (2, 2, 5);
        let a = MatrixTuple::random(&mut rng, n, r, p);
        let j = jacobian(&a);
        for col in 0..r * n * n {
            let mut flat = vec![Fp::zero(p); r * n * n];
            flat[col] = Fp::one(p);
            let e = MatrixTuple::from_flat(n, r, &flat).unwrap();
            let d = differential(&a, &e).unwrap();
            for (row, &v) in d.values().iter().enumerate() {
                assert_eq!(j.matrix()[(row, col)], v);
            }
        }
    }

    #[test]
    fn diagonal_single_matrix_kernel() {
        // A_1 = diag(1, 2, 3) over F_7: kernel is the zero-diagonal matrices
        let p = 7;
        let n = 3;
        let mut d = Matrix::zeros(n, n, p);
        for i in 0..n {
            d[(i, i)] = Fp::new(i as u64 + 1, p);
        }
        let a = MatrixTuple::new(vec![d]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let k = kernel_via_traces(&a, &mut rng, 20).unwrap();
        assert_eq!(k.len(), n * n - n);
        for b in k.elements() {
            for i in 0..n {
                assert!(b.slot(0)[(i, i)].is_zero());
            }
        }
        assert!(k.same_span(&jacobian(&a).kernel()));
    }

    #[test]
    fn trace_system_degree_zero_rows_are_traces() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let a = MatrixTuple::random(&mut rng, 2, 3, 5);
        let sys = trace_power_system(&a);
        // the first r rows come from d = 0: Tr(B_m) = 0
        for m in 0..3 {
            let row = sys.matrix().row(m);
            for (c, v) in row.iter().enumerate() {
                let slot = c / 4;
                let (i, j) = ((c % 4) / 2, c % 2);
                let expect = slot == m && i == j;
                assert_eq!(v.is_one(), expect);
            }
        }
    }

    #[test]
    fn precondition_failure_is_reported() {
        // scalar matrices never have distinct eigenvalues
        let a = MatrixTuple::new(vec![Matrix::identity(3, 7), Matrix::identity(3, 7)]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(matches!(
            kernel_via_traces(&a, &mut rng, 20),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn squarefree_detection() {
        let p = 7;
        let mut d = Matrix::zeros(2, 2, p);
        d[(0, 0)] = Fp::new(1, p);
        d[(1, 1)] = Fp::new(2, p);
        assert!(has_distinct_eigenvalues(&d));
        assert!(!has_distinct_eigenvalues(&Matrix::identity(2, p)));
        let jordan = Matrix::from_rows(&[vec![1, 1], vec![0, 1]], p);
        assert!(!has_distinct_eigenvalues(&jordan));
        // x^2 + 1 is irreducible over F_7 but squarefree
        let rot = Matrix::from_rows(&[vec![0, -1], vec![1, 0]], p);
        assert!(has_distinct_eigenvalues(&rot));
        assert_eq!(
            univariate_char_poly(&rot)
                .iter()
                .map(|c| c.value())
                .collect::<Vec<_>>(),
            vec![1, 0, 1]
        );
    }

    #[test]
    fn pgl_tangent_examples() {
        let id = MatrixTuple::new(vec![Matrix::identity(3, 5); 2]).unwrap();
        assert!(pgl_tangent(&id).is_empty());
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let a = MatrixTuple::random(&mut rng, 2, 3, 5);
        let t = pgl_tangent(&a);
        assert_eq!(t.len(), 3);
        let k = jacobian(&a).kernel();
        assert!(k.contains_span(&t));
    }

    #[test]
    fn expected_rank_table() {
        assert_eq!(expected_rank(2, 3), 9);
        assert_eq!(expected_rank(2, 2), 5);
        assert_eq!(expected_rank(3, 3), 19);
        assert_eq!(expected_rank(3, 2), 9);
        assert_eq!(expected_rank(4, 3), 33);
        assert_eq!(expected_rank(5, 2), 20);
    }
}
