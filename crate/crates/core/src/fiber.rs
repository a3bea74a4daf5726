//! Transpose symmetry of the characteristic form and the invariants that
//! separate a tuple from its transpose.

use crate::error::{Error, Result};
use crate::field::Fp;
use crate::matrix::Matrix;
use crate::pencilmap::{CoeffVector, MatrixTuple};
use crate::poly::Monomial;

/// Slotwise transpose `(A_1^t, ..., A_r^t)`.
pub fn transpose_tuple(a: &MatrixTuple) -> MatrixTuple {
    a.map(Matrix::transpose)
}

/// `Tr(A_1 A_2 A_1^2 A_2^2) - Tr(A_2^2 A_1^2 A_2 A_1)`.
///
/// Conjugation invariant and odd under simultaneous transpose.
pub fn witness_f(a1: &Matrix, a2: &Matrix) -> Fp {
    let a1sq = a1.mul(a1);
    let a2sq = a2.mul(a2);
    let lhs = a1.mul(a2).mul(&a1sq).mul(&a2sq).trace();
    let rhs = a2sq.mul(&a1sq).mul(a2).mul(a1).trace();
    lhs - rhs
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Conjugacy {
    /// `f(A) != 0`, so `A` and `A^t` lie in different orbits.
    NotConjugate,
    /// `f(A) = 0`; nothing is claimed.
    Inconclusive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConjugacyReport {
    pub f_value: Fp,
    pub verdict: Conjugacy,
}

/// One-sided certificate that `A` and its transpose are not simultaneously
/// conjugate. Needs `p > 2` so that `f = -f` forces `f = 0`.
pub fn nonconjugacy_check(a: &MatrixTuple) -> Result<ConjugacyReport> {
    if a.r() < 2 {
        return Err(Error::ShapeMismatch("need at least two matrices".into()));
    }
    if a.modulus() == 2 {
        return Err(Error::Precondition(
            "characteristic 2 cannot separate f from -f".into(),
        ));
    }
    let f_value = witness_f(a.slot(0), a.slot(1));
    let verdict = if f_value.is_zero() {
        Conjugacy::Inconclusive
    } else {
        Conjugacy::NotConjugate
    };
    Ok(ConjugacyReport { f_value, verdict })
}

/// The generators `Tr A_1, Tr A_2, det A_1, det A_2, Tr A_1 A_2` of the
/// invariants of a pair of 2x2 matrices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PairInvariants {
    pub tr_a1: Fp,
    pub tr_a2: Fp,
    pub det_a1: Fp,
    pub det_a2: Fp,
    pub tr_a1a2: Fp,
}

impl PairInvariants {
    /// Computed directly from the matrices.
    pub fn of(a1: &Matrix, a2: &Matrix) -> Self {
        PairInvariants {
            tr_a1: a1.trace(),
            tr_a2: a2.trace(),
            det_a1: a1.det(),
            det_a2: a2.det(),
            tr_a1a2: a1.mul(a2).trace(),
        }
    }
}

/// Recovers the pair invariants from the coefficients of
/// `det(x_0 I + x_1 A_1 + x_2 A_2)` for 2x2 matrices.
pub fn reconstruct_2x2(coeffs: &CoeffVector) -> Result<PairInvariants> {
    let shape_ok = coeffs.indices().first().map(Monomial::nvars) == Some(3)
        && coeffs.indices()[0].degree() == 2;
    if !shape_ok {
        return Err(Error::ShapeMismatch(
            "reconstruction needs the coefficients of a 2x2 pencil in two slots".into(),
        ));
    }
    let c = |e: [u8; 3]| coeffs.get(&Monomial::new(&e)).expect("index present");
    let tr_a1 = c([1, 1, 0]);
    let tr_a2 = c([1, 0, 1]);
    Ok(PairInvariants {
        tr_a1,
        tr_a2,
        det_a1: c([0, 2, 0]),
        det_a2: c([0, 0, 2]),
        tr_a1a2: tr_a1 * tr_a2 - c([0, 1, 1]),
    })
}

/// Checks `det X = (Tr(X)^2 - Tr(X^2)) / 2` for a 2x2 matrix.
pub fn det_trace_identity_2x2(x: &Matrix) -> Result<bool> {
    if x.rows() != 2 || !x.is_square() {
        return Err(Error::ShapeMismatch("expected a 2x2 matrix".into()));
    }
    let half = Fp::new(2, x.modulus()).inv()?;
    let t = x.trace();
    Ok(x.det() == half * (t * t - x.mul(x).trace()))
}
