//! Clock and shift matrices `A_1 = diag(1, q, ..., q^{n-1})`, `A_2` a cyclic
//! permutation with `A_2 A_1 = q A_1 A_2`, and `A_3 = A_1 A_2`, together
//! with closed forms for powers of `x_1 A_1 + x_2 A_2 + x_3 A_1 A_2` in the
//! basis `A_1^{e_1} A_2^{e_2}`.
//!
//! Every closed form is checked against brute-force matrix arithmetic
//! before it is returned.

use crate::error::{Error, Result};
use crate::field::Fp;
use crate::matrix::Matrix;
use crate::pencilmap::{linear_form_powers, MatrixTuple};
use crate::poly::{Monomial, MultiPoly};
use crate::qcomb::QContext;

#[derive(Clone, Debug)]
pub struct WeylPair {
    qc: QContext,
    a1: Matrix,
    a2: Matrix,
    a1_inv: Matrix,
    a2_inv: Matrix,
}

/// One term `coeff * x_1^a x_2^b x_3^c * A_1^{e_1} A_2^{e_2}` of a pencil power.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PencilTerm {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub coeff: Fp,
    pub e1: usize,
    pub e2: usize,
}

/// Cyclic shift with ones at `(i, i+1)` and `(n-1, 0)`.
fn cyclic_shift(n: usize, p: u64) -> Matrix {
    let mut s = Matrix::zeros(n, n, p);
    for i in 0..n {
        s[(i, (i + 1) % n)] = Fp::one(p);
    }
    s
}

impl WeylPair {
    pub fn new(qc: QContext) -> Result<Self> {
        let n = qc.n();
        let p = qc.p();
        let q = qc.q();
        let mut a1 = Matrix::zeros(n, n, p);
        for i in 0..n {
            a1[(i, i)] = q.pow(i as u64);
        }
        let a1a2_scaled = |a2: &Matrix| a1.mul(a2).scale(q);
        let shift = cyclic_shift(n, p);
        let a2 = [shift.clone(), shift.transpose()]
            .into_iter()
            .find(|s| s.mul(&a1) == a1a2_scaled(s))
            .ok_or_else(|| {
                Error::InvariantViolation("no cyclic shift satisfies A2 A1 = q A1 A2".into())
            })?;
        let a1_inv = a1.pow(n as u64 - 1);
        let a2_inv = a2.pow(n as u64 - 1);
        let pair = WeylPair {
            qc,
            a1,
            a2,
            a1_inv,
            a2_inv,
        };
        pair.validate()?;
        Ok(pair)
    }

    pub fn for_size(n: usize) -> Result<Self> {
        Self::new(QContext::for_size(n)?)
    }

    fn validate(&self) -> Result<()> {
        let n = self.n();
        let p = self.qc.p();
        let id = Matrix::identity(n, p);
        if self.a1.pow(n as u64) != id || self.a2.pow(n as u64) != id {
            return Err(Error::InvariantViolation("A1^n or A2^n is not I".into()));
        }
        if self.a2.mul(&self.a1) != self.a1.mul(&self.a2).scale(self.qc.q()) {
            return Err(Error::InvariantViolation("A2 A1 != q A1 A2".into()));
        }
        if self.basis_rank() != n * n {
            return Err(Error::InvariantViolation(
                "the monomials A1^e1 A2^e2 are not a basis".into(),
            ));
        }
        Ok(())
    }

    /// Rank of the `n^2 x n^2` matrix whose rows are the flattened basis
    /// monomials.
    pub fn basis_rank(&self) -> usize {
        let n = self.n();
        let rows: Vec<Vec<Fp>> = (0..n)
            .flat_map(|e1| (0..n).map(move |e2| (e1, e2)))
            .map(|(e1, e2)| self.basis_monomial(e1 as i64, e2 as i64).data().to_vec())
            .collect();
        Matrix::from_row_vecs(&rows, n * n, self.qc.p()).rank()
    }

    pub fn qc(&self) -> &QContext {
        &self.qc
    }

    pub fn n(&self) -> usize {
        self.qc.n()
    }

    pub fn a1(&self) -> &Matrix {
        &self.a1
    }

    pub fn a2(&self) -> &Matrix {
        &self.a2
    }

    pub fn a3(&self) -> Matrix {
        self.a1.mul(&self.a2)
    }

    /// The point `(A_1, A_2, A_1 A_2)` of `M_n^3`.
    pub fn triple(&self) -> MatrixTuple {
        MatrixTuple::new(vec![self.a1.clone(), self.a2.clone(), self.a3()]).expect("same shape")
    }

    fn reduce(&self, e: i64) -> u64 {
        e.rem_euclid(self.n() as i64) as u64
    }

    /// `A_1^{e_1} A_2^{e_2}` with exponents read mod `n`.
    pub fn basis_monomial(&self, e1: i64, e2: i64) -> Matrix {
        self.a1
            .pow(self.reduce(e1))
            .mul(&self.a2.pow(self.reduce(e2)))
    }

    /// `A_1 X A_1^{-1}`.
    pub fn conj_a1(&self, x: &Matrix) -> Matrix {
        self.a1.mul(x).mul(&self.a1_inv)
    }

    /// `A_2 X A_2^{-1}`.
    pub fn conj_a2(&self, x: &Matrix) -> Matrix {
        self.a2.mul(x).mul(&self.a2_inv)
    }

    fn check_degree(&self, d: usize) -> Result<()> {
        if d >= self.n() {
            return Err(Error::Domain(format!(
                "degree {d} must be below n = {}",
                self.n()
            )));
        }
        Ok(())
    }

    /// `(X + Y)^d = sum_{a+b=d} binom_q(d; a, b) X^a Y^b` for `YX = qXY`,
    /// the relation satisfied by `X = A_1`, `Y = A_2`.
    /// Returns the `(a, b, coefficient)` terms.
    pub fn skew_binomial_expand(
        &self,
        x: &Matrix,
        y: &Matrix,
        d: usize,
    ) -> Result<Vec<(usize, usize, Fp)>> {
        self.check_degree(d)?;
        if y.mul(x) != x.mul(y).scale(self.qc.q()) {
            return Err(Error::Precondition("Y X != q X Y".into()));
        }
        let terms: Vec<(usize, usize, Fp)> = (0..=d)
            .map(|a| {
                let b = d - a;
                let c = self.qc.q_binom(d as i64, a as i64, b as i64)?;
                Ok((a, b, c))
            })
            .collect::<Result<_>>()?;
        let n = self.n();
        let p = self.qc.p();
        let sum = terms
            .iter()
            .fold(Matrix::zeros(n, n, p), |acc, &(a, b, c)| {
                acc.add(&x.pow(a as u64).mul(&y.pow(b as u64)).scale(c))
            });
        if sum != x.add(y).pow(d as u64) {
            return Err(Error::InvariantViolation(format!(
                "skew binomial expansion differs from (X+Y)^{d}"
            )));
        }
        Ok(terms)
    }

    /// Terms of `(x_1 A_1 + x_2 A_2 + x_3 A_1 A_2)^d`: the monomial
    /// `x_1^a x_2^b x_3^c` carries `q^{c(c-1)/2} trinom_q(d; a, b, c)` times
    /// `A_1^{a+c} A_2^{b+c}`.
    pub fn pencil_power(&self, d: usize) -> Result<Vec<PencilTerm>> {
        self.check_degree(d)?;
        let n = self.n();
        let mut terms = Vec::new();
        for mono in Monomial::all_of_degree(3, d) {
            let [a, b, c] = [0, 1, 2].map(|k| mono.exponent(k) as usize);
            let coeff = self.qc.q_pow((c * c.saturating_sub(1) / 2) as i64)
                * self.qc.q_trinom(d as i64, a as i64, b as i64, c as i64)?;
            terms.push(PencilTerm {
                a,
                b,
                c,
                coeff,
                e1: (a + c) % n,
                e2: (b + c) % n,
            });
        }
        let brute = &linear_form_powers(&[self.a1.clone(), self.a2.clone(), self.a3()], d)[d];
        for t in &terms {
            let expect = self.basis_monomial(t.e1 as i64, t.e2 as i64).scale(t.coeff);
            let got = &brute[&Monomial::new(&[t.a as u8, t.b as u8, t.c as u8])];
            if *got != expect {
                return Err(Error::InvariantViolation(format!(
                    "pencil power closed form fails at d={d}, (a,b,c)=({}, {}, {})",
                    t.a, t.b, t.c
                )));
            }
        }
        Ok(terms)
    }

    /// Closed form of `Tr((x_1 A_1 + x_2 A_2 + x_3 A_1 A_2)^d A_1^{e_1} A_2^{e_2})`
    /// as a polynomial in the three variables `x_1, x_2, x_3` (indices 0, 1, 2).
    pub fn trace_with_monomial(&self, d: usize, e1: i64, e2: i64) -> Result<MultiPoly> {
        self.check_degree(d)?;
        let n = self.n() as i64;
        let p = self.qc.p();
        let nn = Fp::new(n as u64, p);
        let mut poly = MultiPoly::zero(3, p);
        for mono in Monomial::all_of_degree(3, d) {
            let [a, b, c] = [0, 1, 2].map(|k| mono.exponent(k) as i64);
            if (a + c + e1).rem_euclid(n) != 0 || (b + c + e2).rem_euclid(n) != 0 {
                continue;
            }
            let coeff = nn
                * self.qc.q_pow(e1 * (b + c) + c * (c - 1) / 2)
                * self.qc.q_trinom(d as i64, a, b, c)?;
            poly.add_term(mono, coeff);
        }
        let brute = self.brute_trace_with_monomial(d, e1, e2);
        if poly != brute {
            return Err(Error::InvariantViolation(format!(
                "trace closed form fails at d={d}, (e1,e2)=({e1}, {e2})"
            )));
        }
        Ok(poly)
    }

    /// The same trace computed from explicit matrix powers.
    pub fn brute_trace_with_monomial(&self, d: usize, e1: i64, e2: i64) -> MultiPoly {
        let p = self.qc.p();
        let table = &linear_form_powers(&[self.a1.clone(), self.a2.clone(), self.a3()], d)[d];
        let m = self.basis_monomial(e1, e2);
        let mut poly = MultiPoly::zero(3, p);
        for (mono, c) in table {
            poly.add_term(mono.clone(), c.mul(&m).trace());
        }
        poly
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldCtx;

    fn pair(p: u64, n: usize) -> WeylPair {
        WeylPair::new(QContext::new(FieldCtx::with_root(p, n).unwrap()).unwrap()).unwrap()
    }

    #[test]
    fn n2_over_f3() {
        let w = pair(3, 2);
        assert_eq!(*w.a1(), Matrix::from_rows(&[vec![1, 0], vec![0, 2]], 3));
        assert_eq!(*w.a2(), Matrix::from_rows(&[vec![0, 1], vec![1, 0]], 3));
    }

    #[test]
    fn clock_diagonal_and_shift_is_permutation() {
        for n in 2..=6 {
            let w = WeylPair::for_size(n).unwrap();
            let q = w.qc().q();
            for i in 0..n {
                assert_eq!(w.a1()[(i, i)], q.pow(i as u64));
            }
            for i in 0..n {
                let ones = (0..n).filter(|&j| w.a2()[(i, j)].is_one()).count();
                let zeros = (0..n).filter(|&j| w.a2()[(i, j)].is_zero()).count();
                assert_eq!((ones, zeros), (1, n - 1));
            }
            let det = w.a2().det();
            assert!(det.is_one() || (-det).is_one());
        }
    }

    #[test]
    fn basis_monomial_traces() {
        for n in 2..=6 {
            let w = WeylPair::for_size(n).unwrap();
            assert_eq!(w.basis_monomial(0, 0), Matrix::identity(n, w.qc().p()));
            for e1 in 0..n as i64 {
                for e2 in 0..n as i64 {
                    let t = w.basis_monomial(e1, e2).trace();
                    let expect = if e1 == 0 && e2 == 0 { n as u64 } else { 0 };
                    assert_eq!(t.value(), expect);
                }
            }
            // exponents are read mod n
            assert_eq!(
                w.basis_monomial(-1, n as i64 + 1),
                w.basis_monomial(n as i64 - 1, 1)
            );
        }
    }

    #[test]
    fn power_of_a3() {
        for n in 2..=6 {
            let w = WeylPair::for_size(n).unwrap();
            for c in 0..n {
                let lhs = w.a3().pow(c as u64);
                let rhs = w
                    .basis_monomial(c as i64, c as i64)
                    .scale(w.qc().q_pow((c * c.saturating_sub(1) / 2) as i64));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn skew_binomial_examples() {
        let w = pair(7, 3);
        let (x, y) = (w.a1().clone(), w.a2().clone());
        assert!(w.skew_binomial_expand(&y, &x, 1).is_err());
        let t0 = w.skew_binomial_expand(&x, &y, 0).unwrap();
        assert_eq!(t0, vec![(0, 0, Fp::one(7))]);
        let t2 = w.skew_binomial_expand(&x, &y, 2).unwrap();
        let q = w.qc().q();
        let coeffs: Vec<u64> = t2.iter().map(|t| t.2.value()).collect();
        assert_eq!(coeffs, vec![1, (Fp::one(7) + q).value(), 1]);
        assert!(w.skew_binomial_expand(&x, &y, 3).is_err());
    }

    #[test]
    fn pencil_power_examples() {
        let w = pair(7, 3);
        let t0 = w.pencil_power(0).unwrap();
        assert_eq!(t0.len(), 1);
        assert!(t0[0].coeff.is_one() && (t0[0].e1, t0[0].e2) == (0, 0));
        let t1 = w.pencil_power(1).unwrap();
        assert!(t1.iter().all(|t| t.coeff.is_one()));
        let t2 = w.pencil_power(2).unwrap();
        let cc = t2.iter().find(|t| (t.a, t.b, t.c) == (0, 0, 2)).unwrap();
        assert_eq!(cc.coeff, w.qc().q());
    }

    #[test]
    fn trace_with_monomial_examples() {
        let w = pair(7, 3);
        let t = w.trace_with_monomial(0, 0, 0).unwrap();
        assert_eq!(t, MultiPoly::constant(3, Fp::new(3, 7)));
        assert!(w.trace_with_monomial(0, 1, 2).unwrap().is_zero());

        let w = pair(3, 2);
        let t = w.trace_with_monomial(1, 1, 0).unwrap();
        assert_eq!(t, MultiPoly::linear(3, 0, Fp::new(2, 3)));
    }

    #[test]
    fn conjugation_characters() {
        for n in 2..=8 {
            let w = WeylPair::for_size(n).unwrap();
            for e1 in 0..n as i64 {
                for e2 in 0..n as i64 {
                    let m = w.basis_monomial(e1, e2);
                    assert_eq!(w.conj_a1(&m), m.scale(w.qc().q_pow(-e2)));
                    assert_eq!(w.conj_a2(&m), m.scale(w.qc().q_pow(e1)));
                }
            }
        }
    }
}
