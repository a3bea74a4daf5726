//! Sparse multivariate polynomials over `F_p` and exact determinants and
//! adjugates of matrices with polynomial entries.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::field::Fp;
use crate::matrix::Matrix;

/// Exponent vector `(i_0, ..., i_k)` of `x_0^{i_0} ... x_k^{i_k}`.
///
/// Ordered graded-lexicographically: higher total degree is greater, and
/// within a degree a larger power of an earlier variable is greater, so
/// `x_0^n` is the largest monomial of degree `n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial(SmallVec<[u8; 12]>);

impl Monomial {
    pub fn new(exponents: &[u8]) -> Self {
        Monomial(SmallVec::from_slice(exponents))
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    /// The single variable `x_var`.
    pub fn var(nvars: usize, var: usize) -> Self {
        let mut m = Self::one(nvars);
        m.0[var] = 1;
        m
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn exponents(&self) -> &[u8] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn exponent(&self, var: usize) -> u8 {
        self.0[var]
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// All exponent vectors of total degree `degree` in `nvars` variables,
    /// in descending graded-lex order.
    pub fn all_of_degree(nvars: usize, degree: usize) -> Vec<Monomial> {
        fn rec(nvars: usize, left: usize, prefix: &mut Vec<u8>, out: &mut Vec<Monomial>) {
            if prefix.len() + 1 == nvars {
                prefix.push(left as u8);
                out.push(Monomial::new(prefix));
                prefix.pop();
                return;
            }
            for e in (0..=left).rev() {
                prefix.push(e as u8);
                rec(nvars, left - e, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if nvars == 0 {
            if degree == 0 {
                out.push(Monomial::one(0));
            }
            return out;
        }
        rec(nvars, degree, &mut Vec::with_capacity(nvars), &mut out);
        out
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "x{i}")?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// Sparse polynomial in a fixed number of variables over `F_p`.
///
/// No zero coefficient is ever stored, so structural equality is
/// polynomial equality.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    nvars: usize,
    modulus: u64,
    terms: BTreeMap<Monomial, Fp>,
}

impl MultiPoly {
    pub fn zero(nvars: usize, modulus: u64) -> Self {
        MultiPoly {
            nvars,
            modulus,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Fp) -> Self {
        Self::term(Monomial::one(nvars), c)
    }

    pub fn term(m: Monomial, c: Fp) -> Self {
        let mut p = Self::zero(m.nvars(), c.modulus());
        p.add_term(m, c);
        p
    }

    /// `c * x_var`.
    pub fn linear(nvars: usize, var: usize, c: Fp) -> Self {
        Self::term(Monomial::var(nvars, var), c)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in descending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, Fp)> {
        self.terms.iter().rev().map(|(m, &c)| (m, c))
    }

    pub fn add_term(&mut self, m: Monomial, c: Fp) {
        debug_assert_eq!(m.nvars(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = *o.get() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    /// Stored coefficient of `m`, or zero.
    pub fn coeff(&self, m: &Monomial) -> Result<Fp> {
        if m.nvars() != self.nvars {
            return Err(Error::ShapeMismatch(format!(
                "monomial has {} exponents, polynomial has {} variables",
                m.nvars(),
                self.nvars
            )));
        }
        Ok(self
            .terms
            .get(m)
            .copied()
            .unwrap_or_else(|| Fp::zero(self.modulus)))
    }

    /// `Some(d)` if every term has total degree `d`; the zero polynomial is
    /// homogeneous of every degree and reports `None`.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut degs = self.terms.keys().map(Monomial::degree);
        let d = degs.next()?;
        degs.all(|e| e == d).then_some(d)
    }

    pub fn total_degree(&self) -> Option<usize> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn scale(&self, c: Fp) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars, self.modulus);
        }
        MultiPoly {
            nvars: self.nvars,
            modulus: self.modulus,
            terms: self
                .terms
                .iter()
                .map(|(m, &v)| (m.clone(), v * c))
                .collect(),
        }
    }

    /// Evaluates at a point of `F_p^{nvars}`.
    pub fn eval(&self, point: &[Fp]) -> Fp {
        assert_eq!(point.len(), self.nvars);
        let mut acc = Fp::zero(self.modulus);
        for (m, &c) in &self.terms {
            let mut t = c;
            for (x, &e) in point.iter().zip(m.exponents()) {
                t *= x.pow(e as u64);
            }
            acc += t;
        }
        acc
    }

    /// Multiplies by `x_var`.
    pub fn shift(&self, var: usize) -> Self {
        let x = Monomial::var(self.nvars, var);
        MultiPoly {
            nvars: self.nvars,
            modulus: self.modulus,
            terms: self.terms.iter().map(|(m, &c)| (m.mul(&x), c)).collect(),
        }
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if m.degree() == 0 {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{c}*{m}")?;
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, &c) in &rhs.terms {
            out.add_term(m.clone(), c);
        }
        out
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, &c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(-Fp::one(self.modulus))
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        debug_assert_eq!(self.nvars, rhs.nvars);
        let mut out = MultiPoly::zero(self.nvars, self.modulus);
        for (ma, &ca) in &self.terms {
            for (mb, &cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

/// Square matrix with polynomial entries.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyMatrix {
    size: usize,
    nvars: usize,
    modulus: u64,
    entries: Vec<MultiPoly>,
}

impl PolyMatrix {
    pub fn zeros(size: usize, nvars: usize, modulus: u64) -> Self {
        PolyMatrix {
            size,
            nvars,
            modulus,
            entries: vec![MultiPoly::zero(nvars, modulus); size * size],
        }
    }

    pub fn from_entries(size: usize, entries: Vec<MultiPoly>) -> Result<Self> {
        if entries.len() != size * size || size == 0 {
            return Err(Error::ShapeMismatch(format!(
                "{} entries do not form a nonempty {size}x{size} matrix",
                entries.len()
            )));
        }
        let nvars = entries[0].nvars();
        let modulus = entries[0].modulus();
        if entries
            .iter()
            .any(|e| e.nvars() != nvars || e.modulus() != modulus)
        {
            return Err(Error::ShapeMismatch("entries disagree on ring".into()));
        }
        Ok(PolyMatrix {
            size,
            nvars,
            modulus,
            entries,
        })
    }

    /// `x_0 I + x_1 A_1 + ... + x_r A_r` in the variables `x_0..x_r`.
    pub fn pencil(mats: &[Matrix], size: usize, modulus: u64) -> Result<Self> {
        Self::pencil_in(mats, size, modulus, mats.len() + 1)
    }

    /// Same as [`PolyMatrix::pencil`], embedded in a ring with `nvars`
    /// variables (extra trailing variables stay free).
    pub fn pencil_in(mats: &[Matrix], size: usize, modulus: u64, nvars: usize) -> Result<Self> {
        if nvars < mats.len() + 1 {
            return Err(Error::ShapeMismatch(
                "not enough variables for pencil".into(),
            ));
        }
        for (k, a) in mats.iter().enumerate() {
            if a.rows() != size || a.cols() != size {
                return Err(Error::ShapeMismatch(format!(
                    "slot {} is {}x{}, expected {size}x{size}",
                    k + 1,
                    a.rows(),
                    a.cols()
                )));
            }
            if a.modulus() != modulus {
                return Err(Error::ShapeMismatch(format!(
                    "slot {} lives over F_{}, expected F_{modulus}",
                    k + 1,
                    a.modulus()
                )));
            }
        }
        let mut out = Self::zeros(size, nvars, modulus);
        for i in 0..size {
            for j in 0..size {
                let e = &mut out.entries[i * size + j];
                if i == j {
                    e.add_term(Monomial::var(nvars, 0), Fp::one(modulus));
                }
                for (k, a) in mats.iter().enumerate() {
                    e.add_term(Monomial::var(nvars, k + 1), a[(i, j)]);
                }
            }
        }
        Ok(out)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn get(&self, i: usize, j: usize) -> &MultiPoly {
        &self.entries[i * self.size + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: MultiPoly) {
        self.entries[i * self.size + j] = v;
    }

    pub fn mul(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.size, other.size);
        let n = self.size;
        let mut out = Self::zeros(n, self.nvars, self.modulus);
        for i in 0..n {
            for j in 0..n {
                let mut acc = MultiPoly::zero(self.nvars, self.modulus);
                for k in 0..n {
                    acc = &acc + &(self.get(i, k) * other.get(k, j));
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn trace(&self) -> MultiPoly {
        (0..self.size).fold(MultiPoly::zero(self.nvars, self.modulus), |acc, i| {
            &acc + self.get(i, i)
        })
    }

    /// Numeric specialization at a point.
    pub fn eval(&self, point: &[Fp]) -> Matrix {
        let data = self.entries.iter().map(|e| e.eval(point)).collect();
        Matrix::from_vec(self.size, self.size, data)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(MultiPoly::is_zero)
    }

    pub fn det(&self) -> MultiPoly {
        let rows: Vec<usize> = (0..self.size).collect();
        let full = (1u32 << self.size) - 1;
        self.minors(&rows)
            .remove(&full)
            .expect("full column set is always computed")
    }

    /// Classical adjoint: entry `(i, j)` is `(-1)^{i+j}` times the minor
    /// with row `j` and column `i` deleted.
    pub fn adjugate(&self) -> PolyMatrix {
        let n = self.size;
        let mut out = Self::zeros(n, self.nvars, self.modulus);
        if n == 1 {
            out.set(0, 0, MultiPoly::constant(self.nvars, Fp::one(self.modulus)));
            return out;
        }
        let full = (1u32 << n) - 1;
        for j in 0..n {
            let rows: Vec<usize> = (0..n).filter(|&r| r != j).collect();
            let minors = self.minors(&rows);
            for i in 0..n {
                let m = &minors[&(full & !(1 << i))];
                let v = if (i + j) % 2 == 0 { m.clone() } else { -m };
                out.set(i, j, v);
            }
        }
        out
    }

    /// Determinants of the submatrices formed by `rows` (in order) and every
    /// column subset of size `rows.len()`, keyed by column bitmask.
    ///
    /// Laplace expansion along the first listed row, memoized on column
    /// subsets from the last row upward.
    fn minors(&self, rows: &[usize]) -> BTreeMap<u32, MultiPoly> {
        let n = self.size;
        let k = rows.len();
        let mut level: BTreeMap<u32, MultiPoly> = BTreeMap::new();
        level.insert(0, MultiPoly::constant(self.nvars, Fp::one(self.modulus)));
        // level t holds determinants of rows[k-t..] against t-subsets
        for t in 1..=k {
            let row = rows[k - t];
            let mut next = BTreeMap::new();
            for mask in subsets_of_size(n, t) {
                let mut acc = MultiPoly::zero(self.nvars, self.modulus);
                let mut sign_pos = 0;
                for col in 0..n {
                    if mask & (1 << col) == 0 {
                        continue;
                    }
                    let entry = self.get(row, col);
                    if !entry.is_zero() {
                        let sub = &level[&(mask & !(1 << col))];
                        if !sub.is_zero() {
                            let prod = entry * sub;
                            acc = if sign_pos % 2 == 0 {
                                &acc + &prod
                            } else {
                                &acc - &prod
                            };
                        }
                    }
                    sign_pos += 1;
                }
                next.insert(mask, acc);
            }
            level = next;
        }
        level
    }
}

fn subsets_of_size(n: usize, t: usize) -> impl Iterator<Item = u32> {
    (0u32..(1u32 << n)).filter(move |m| m.count_ones() as usize == t)
}
