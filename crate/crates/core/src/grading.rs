//! The `(Z/n)^2`-grading of the kernel of the differential at the Weyl
//! triple `(A_1, A_2, A_1 A_2)`.
//!
//! The character space `W(e1, e2)` is spanned by
//! `(A_1^{e1+1} A_2^{e2}, 0, 0)`, `(0, A_1^{e1} A_2^{e2+1}, 0)` and
//! `(0, 0, A_1^{e1+1} A_2^{e2+1})`; an element is written by its
//! coordinates `(t1, t2, t3)` in that basis. Membership in the kernel is a
//! linear condition on `(t1, t2, t3)`, one row per exponent triple
//! `(α, β, γ)` of a monomial `x_1^α x_2^β x_3^γ`.

use crate::error::{Error, Result};
use crate::field::Fp;
use crate::matrix::span_rank;
use crate::pencilmap::{KernelBasis, MatrixTuple};
use crate::poly::Monomial;
use crate::qcomb::projectively_equal;
use crate::weylpair::WeylPair;

pub type Triple = (i64, i64, i64);

/// One row of a constraint system with the exponent triple it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstraintRow {
    pub source: Triple,
    pub coeffs: [Fp; 3],
}

#[derive(Clone, Debug)]
pub struct ConstraintSystem {
    pub e1: i64,
    pub e2: i64,
    pub rows: Vec<ConstraintRow>,
}

impl ConstraintSystem {
    pub fn rank(&self, modulus: u64) -> usize {
        let vecs: Vec<Vec<Fp>> = self.rows.iter().map(|r| r.coeffs.to_vec()).collect();
        span_rank(&vecs, 3, modulus)
    }

    pub fn annihilates(&self, t: &[Fp; 3]) -> bool {
        self.rows
            .iter()
            .all(|r| (r.coeffs[0] * t[0] + r.coeffs[1] * t[1] + r.coeffs[2] * t[2]).is_zero())
    }
}

/// Character-space computations over a fixed Weyl pair.
pub struct Grading<'a> {
    w: &'a WeylPair,
}

impl<'a> Grading<'a> {
    pub fn new(w: &'a WeylPair) -> Self {
        Grading { w }
    }

    pub fn weyl(&self) -> &WeylPair {
        self.w
    }

    fn n(&self) -> i64 {
        self.w.n() as i64
    }

    fn q_pow(&self, e: i64) -> Fp {
        self.w.qc().q_pow(e)
    }

    fn reduce(&self, e: i64) -> i64 {
        e.rem_euclid(self.n())
    }

    fn satisfies_congruences(&self, e1: i64, e2: i64, (a, b, c): Triple) -> bool {
        let n = self.n();
        a >= 0
            && b >= 0
            && c >= 0
            && (1..=n).contains(&(a + b + c))
            && (a + c + e1).rem_euclid(n) == 0
            && (b + c + e2).rem_euclid(n) == 0
    }

    /// Nonzero triples `(α, β, γ)` with `α + β + γ <= n`,
    /// `α + γ + e1 ≡ 0` and `β + γ + e2 ≡ 0 (mod n)`.
    pub fn enumerate_triples(&self, e1: i64, e2: i64) -> Vec<Triple> {
        let n = self.n();
        let mut out = Vec::new();
        for a in 0..=n {
            for b in 0..=n - a {
                for c in 0..=n - a - b {
                    if self.satisfies_congruences(e1, e2, (a, b, c)) {
                        out.push((a, b, c));
                    }
                }
            }
        }
        out
    }

    fn check_triple(&self, e1: i64, e2: i64, t: Triple) -> Result<()> {
        if !self.satisfies_congruences(e1, e2, t) {
            return Err(Error::Domain(format!(
                "{t:?} is not an admissible triple for ({e1}, {e2})"
            )));
        }
        Ok(())
    }

    /// Coefficients of `(t1, t2, t3)` in the condition from the monomial
    /// `x_1^α x_2^β x_3^γ`, after dividing out `n q^{e1(β+γ) + γ(γ-1)/2}`:
    /// `(q^{β+γ} T(α-1,β,γ), q^{-e1} T(α,β-1,γ), q^{β-e1} T(α,β,γ-1))`
    /// where `T` is the q-trinomial of degree `α + β + γ - 1`.
    pub fn constraint_row(&self, e1: i64, e2: i64, t: Triple) -> Result<[Fp; 3]> {
        self.check_triple(e1, e2, t)?;
        let (a, b, c) = t;
        let d = a + b + c - 1;
        let qc = self.w.qc();
        Ok([
            self.q_pow(b + c) * qc.q_trinom(d, a - 1, b, c)?,
            self.q_pow(-e1) * qc.q_trinom(d, a, b - 1, c)?,
            self.q_pow(b - e1) * qc.q_trinom(d, a, b, c - 1)?,
        ])
    }

    /// `(q^{-e2} - q^{d+1}, q^{-e1} - q^{d+1}, q^{d+1} - q^{-e1-e2})` with
    /// `d + 1 = α + β + γ`. Checked to be projectively equal to
    /// [`Grading::constraint_row`] whenever both are nonzero.
    pub fn constraint_row_symmetric(&self, e1: i64, e2: i64, t: Triple) -> Result<[Fp; 3]> {
        self.check_triple(e1, e2, t)?;
        let s = t.0 + t.1 + t.2;
        let qs = self.q_pow(s);
        let row = [
            self.q_pow(-e2) - qs,
            self.q_pow(-e1) - qs,
            qs - self.q_pow(-e1 - e2),
        ];
        let plain = self.constraint_row(e1, e2, t)?;
        let nonzero = |v: &[Fp; 3]| v.iter().any(|x| !x.is_zero());
        if nonzero(&row) && nonzero(&plain) && !projectively_equal(&row, &plain) {
            return Err(Error::InvariantViolation(format!(
                "symmetric row not proportional to plain row at ({e1}, {e2}), {t:?}"
            )));
        }
        Ok(row)
    }

    /// The same condition read off the trace closed forms, without the
    /// normalization: coefficient of `x_1^α x_2^β x_3^γ` in
    /// `t1 x1 Tr(P^d A_1^{e1+1} A_2^{e2}) + t2 x2 Tr(P^d A_1^{e1} A_2^{e2+1})
    ///  + t3 x3 Tr(P^d A_1^{e1+1} A_2^{e2+1})`.
    pub fn constraint_row_from_traces(&self, e1: i64, e2: i64, t: Triple) -> Result<[Fp; 3]> {
        self.check_triple(e1, e2, t)?;
        let (a, b, c) = t;
        let d = (a + b + c - 1) as usize;
        let shifts = [(1, 0, 0usize), (0, 1, 1), (1, 1, 2)];
        let mut out = [Fp::zero(self.w.qc().p()); 3];
        for (k, &(s1, s2, var)) in shifts.iter().enumerate() {
            let mut e = [a, b, c];
            e[var] -= 1;
            if e[var] < 0 {
                continue;
            }
            let tr = self.w.trace_with_monomial(d, e1 + s1, e2 + s2)?;
            out[k] = tr.coeff(&Monomial::new(&[e[0] as u8, e[1] as u8, e[2] as u8]))?;
        }
        Ok(out)
    }

    /// The factor `n q^{e1(β+γ) + γ(γ-1)/2}` relating the two row forms.
    pub fn normalization(&self, e1: i64, t: Triple) -> Fp {
        let (_, b, c) = t;
        Fp::new(self.n() as u64, self.w.qc().p()) * self.q_pow(e1 * (b + c) + c * (c - 1) / 2)
    }

    pub fn constraint_system(&self, e1: i64, e2: i64) -> Result<ConstraintSystem> {
        let (e1, e2) = (self.reduce(e1), self.reduce(e2));
        let rows = self
            .enumerate_triples(e1, e2)
            .into_iter()
            .map(|t| {
                Ok(ConstraintRow {
                    source: t,
                    coeffs: self.constraint_row(e1, e2, t)?,
                })
            })
            .collect::<Result<_>>()?;
        Ok(ConstraintSystem { e1, e2, rows })
    }

    /// `3 - rank` of the full constraint system of `W(e1, e2)`.
    pub fn dim_v(&self, e1: i64, e2: i64) -> Result<usize> {
        Ok(3 - self.constraint_system(e1, e2)?.rank(self.w.qc().p()))
    }

    /// `n x n` table of `dim_v`, indexed `[e1][e2]`.
    pub fn dim_table(&self) -> Result<Vec<Vec<usize>>> {
        (0..self.n())
            .map(|e1| (0..self.n()).map(|e2| self.dim_v(e1, e2)).collect())
            .collect()
    }

    /// Coordinates of the commutator `[x_1 A_1 + x_2 A_2 + x_3 A_1 A_2, A_1^{e1} A_2^{e2}]`:
    /// `(1 - q^{e2}, q^{e1} - 1, q^{e1} - q^{e2})`.
    pub fn commutator_witness(&self, e1: i64, e2: i64) -> [Fp; 3] {
        let one = self.w.qc().field().one();
        let (q1, q2) = (self.q_pow(e1), self.q_pow(e2));
        [one - q2, q1 - one, q1 - q2]
    }

    /// The concrete element of `M_n^3` with coordinates `t` in `W(e1, e2)`.
    pub fn to_tuple(&self, e1: i64, e2: i64, t: &[Fp; 3]) -> MatrixTuple {
        let w = self.w;
        MatrixTuple::new(vec![
            w.basis_monomial(e1 + 1, e2).scale(t[0]),
            w.basis_monomial(e1, e2 + 1).scale(t[1]),
            w.basis_monomial(e1 + 1, e2 + 1).scale(t[2]),
        ])
        .expect("same shape")
    }

    /// Two admissible triples with degree sums distinct mod `n`.
    pub fn degree_witnesses(&self, e1: i64, e2: i64) -> Result<(Triple, Triple)> {
        let n = self.n();
        let (e1, e2) = (self.reduce(e1), self.reduce(e2));
        if (e1, e2) == (0, 0) {
            return Err(Error::Domain(
                "no degree witnesses for the trivial character".into(),
            ));
        }
        let swap = e2 > e1;
        let (f1, f2) = if swap { (e2, e1) } else { (e1, e2) };
        let (t1, t2) = if f2 >= 1 {
            ((0, f1 - f2, n - f1), (1, f1 - f2 + 1, n - f1 - 1))
        } else {
            ((0, f1, n - f1), (n - f1, 0, 0))
        };
        let (t1, t2) = if swap {
            ((t1.1, t1.0, t1.2), (t2.1, t2.0, t2.2))
        } else {
            (t1, t2)
        };
        for t in [t1, t2] {
            if !self.satisfies_congruences(e1, e2, t) {
                return Err(Error::InvariantViolation(format!(
                    "witness {t:?} is not admissible for ({e1}, {e2})"
                )));
            }
        }
        let (s1, s2) = (t1.0 + t1.1 + t1.2, t2.0 + t2.1 + t2.2);
        if (s1 - s2).rem_euclid(n) == 0 {
            return Err(Error::InvariantViolation(format!(
                "witness degree sums {s1} and {s2} agree mod {n}"
            )));
        }
        Ok((t1, t2))
    }

    /// Rank of the 2x3 system of symmetric rows at the degree witnesses.
    pub fn witness_rank(&self, e1: i64, e2: i64) -> Result<usize> {
        let (t1, t2) = self.degree_witnesses(e1, e2)?;
        let rows = vec![
            self.constraint_row_symmetric(e1, e2, t1)?.to_vec(),
            self.constraint_row_symmetric(e1, e2, t2)?.to_vec(),
        ];
        Ok(span_rank(&rows, 3, self.w.qc().p()))
    }

    /// `σ: (B1, B2, B3) -> (Conj_{A1} B1, q Conj_{A1} B2, q Conj_{A1} B3)`.
    pub fn sigma(&self, b: &MatrixTuple) -> MatrixTuple {
        let q = self.w.qc().q();
        MatrixTuple::new(vec![
            self.w.conj_a1(b.slot(0)),
            self.w.conj_a1(b.slot(1)).scale(q),
            self.w.conj_a1(b.slot(2)).scale(q),
        ])
        .expect("same shape")
    }

    /// `τ: (B1, B2, B3) -> (q^{-1} Conj_{A2} B1, Conj_{A2} B2, q^{-1} Conj_{A2} B3)`.
    pub fn tau(&self, b: &MatrixTuple) -> MatrixTuple {
        let qi = self.q_pow(-1);
        MatrixTuple::new(vec![
            self.w.conj_a2(b.slot(0)).scale(qi),
            self.w.conj_a2(b.slot(1)),
            self.w.conj_a2(b.slot(2)).scale(qi),
        ])
        .expect("same shape")
    }

    /// True when `σ` and `τ` map every element of `k` back into its span.
    pub fn verify_group_action(&self, k: &KernelBasis) -> bool {
        let images: Vec<MatrixTuple> = k
            .elements()
            .iter()
            .flat_map(|b| [self.sigma(b), self.tau(b)])
            .collect();
        let images = KernelBasis::new(self.w.n(), 3, self.w.qc().p(), images);
        k.contains_span(&images)
    }

    /// All `n^2 - 1` nontrivial commutator witnesses as tuples.
    pub fn witness_tuples(&self) -> Vec<MatrixTuple> {
        let n = self.n();
        (0..n)
            .flat_map(|e1| (0..n).map(move |e2| (e1, e2)))
            .filter(|&e| e != (0, 0))
            .map(|(e1, e2)| self.to_tuple(e1, e2, &self.commutator_witness(e1, e2)))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pencilmap::jacobian;

    #[test]
    fn triple_enumeration_examples() {
        let w = WeylPair::for_size(3).unwrap();
        let g = Grading::new(&w);
        let t00 = g.enumerate_triples(0, 0);
        assert_eq!(t00, vec![(0, 0, 3), (0, 3, 0), (3, 0, 0)]);
        let t10 = g.enumerate_triples(1, 0);
        assert!(t10.contains(&(0, 1, 2)) && t10.contains(&(2, 0, 0)));

        let w = WeylPair::for_size(5).unwrap();
        let g = Grading::new(&w);
        for e1 in 1..5 {
            for e2 in 1..=e1 {
                let ts = g.enumerate_triples(e1, e2);
                assert!(ts.contains(&(0, e1 - e2, 5 - e1)));
                assert!(ts.contains(&(1, e1 - e2 + 1, 5 - e1 - 1)));
            }
        }
    }

    #[test]
    fn trivial_character_rows() {
        for n in 2..=6 {
            let w = WeylPair::for_size(n).unwrap();
            let g = Grading::new(&w);
            let n = n as i64;
            let one = w.qc().field().one();
            let zero = w.qc().field().zero();
            assert_eq!(
                g.constraint_row(0, 0, (n, 0, 0)).unwrap(),
                [one, zero, zero]
            );
            let r = g.constraint_row(0, 0, (0, n, 0)).unwrap();
            assert!(r[0].is_zero() && !r[1].is_zero() && r[2].is_zero());
            let s = g.constraint_row_symmetric(0, 0, (0, n, 0)).unwrap();
            assert!(s.iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn invalid_triple_is_rejected() {
        let w = WeylPair::for_size(3).unwrap();
        let g = Grading::new(&w);
        assert!(g.constraint_row(1, 0, (1, 1, 1)).is_err());
        assert!(g.constraint_row_symmetric(0, 0, (0, 0, 0)).is_err());
        assert!(g.degree_witnesses(0, 0).is_err());
        assert!(g.degree_witnesses(3, 3).is_err());
    }

    #[test]
    fn rows_match_trace_expansion() {
        for n in 2..=5 {
            let w = WeylPair::for_size(n).unwrap();
            let g = Grading::new(&w);
            for e1 in 0..n as i64 {
                for e2 in 0..n as i64 {
                    for t in g.enumerate_triples(e1, e2) {
                        let row = g.constraint_row(e1, e2, t).unwrap();
                        let raw = g.constraint_row_from_traces(e1, e2, t).unwrap();
                        let f = g.normalization(e1, t);
                        assert_eq!(raw, row.map(|x| x * f), "n={n} e=({e1},{e2}) t={t:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn degree_witness_examples() {
        let w = WeylPair::for_size(3).unwrap();
        let g = Grading::new(&w);
        assert_eq!(g.degree_witnesses(1, 0).unwrap(), ((0, 1, 2), (2, 0, 0)));
        assert_eq!(g.degree_witnesses(0, 1).unwrap(), ((1, 0, 2), (0, 2, 0)));
        let w = WeylPair::for_size(4).unwrap();
        let g = Grading::new(&w);
        assert_eq!(g.degree_witnesses(2, 1).unwrap(), ((0, 1, 2), (1, 2, 1)));
    }

    #[test]
    fn commutator_witness_examples() {
        let w = WeylPair::for_size(3).unwrap();
        let g = Grading::new(&w);
        assert!(g.commutator_witness(0, 0).iter().all(|x| x.is_zero()));
        for e1 in 0..3 {
            for e2 in 0..3 {
                let t = g.commutator_witness(e1, e2);
                assert!(g.constraint_system(e1, e2).unwrap().annihilates(&t));
                assert_eq!(t.iter().all(|x| x.is_zero()), (e1, e2) == (0, 0));
            }
        }
    }

    #[test]
    fn sigma_tau_basics() {
        let w = WeylPair::for_size(3).unwrap();
        let g = Grading::new(&w);
        let zero = MatrixTuple::zeros(3, 3, 7);
        assert_eq!(g.sigma(&zero), zero);
        let b = g.to_tuple(1, 2, &[w.qc().field().one(); 3]);
        let mut s = b.clone();
        let mut t = b.clone();
        for _ in 0..3 {
            s = g.sigma(&s);
            t = g.tau(&t);
        }
        assert_eq!(s, b);
        assert_eq!(t, b);
        assert_eq!(g.sigma(&g.tau(&b)), g.tau(&g.sigma(&b)));
        // W(e1, e2) is an eigenspace with characters q^{-e2} and q^{e1}
        assert_eq!(g.sigma(&b), b.scale(w.qc().q_pow(-2)));
        assert_eq!(g.tau(&b), b.scale(w.qc().q_pow(1)));
    }

    #[test]
    fn kernel_at_weyl_triple_is_graded() {
        let w = WeylPair::for_size(3).unwrap();
        let g = Grading::new(&w);
        let k = jacobian(&w.triple()).kernel();
        assert_eq!(k.len(), 8);
        assert!(g.verify_group_action(&k));
        assert!(g.verify_group_action(&KernelBasis::new(3, 3, 7, vec![])));
    }
}
