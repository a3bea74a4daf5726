//! q-integers, q-factorials and q-binomial/trinomial coefficients evaluated
//! at a primitive `n`-th root of unity `q` in `F_p`.
//!
//! Coefficients are only defined up to `d = n - 1`: `[n]_q = 0` at a
//! primitive root, so larger factorials vanish.

use crate::error::{Error, Result};
use crate::field::{FieldCtx, Fp};

#[derive(Clone, Debug)]
pub struct QContext {
    ctx: FieldCtx,
    q: Fp,
    /// `[0]_q!, ..., [n-1]_q!`
    factorials: Vec<Fp>,
    inv_factorials: Vec<Fp>,
}

impl QContext {
    pub fn new(ctx: FieldCtx) -> Result<Self> {
        let q = ctx.q().ok_or(Error::MissingRoot)?;
        let n = ctx.n();
        let mut factorials = Vec::with_capacity(n);
        let mut acc = ctx.one();
        factorials.push(acc);
        for a in 1..n {
            acc *= q_int_at(q, a as u64);
            factorials.push(acc);
        }
        let inv_factorials = factorials
            .iter()
            .map(|f| {
                f.inv()
                    .map_err(|_| Error::InvariantViolation("q-factorial below n vanished".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(QContext {
            ctx,
            q,
            factorials,
            inv_factorials,
        })
    }

    /// Smallest root prime for `n` with its smallest primitive root.
    pub fn for_size(n: usize) -> Result<Self> {
        Self::new(FieldCtx::default_with_root(n)?)
    }

    pub fn field(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn n(&self) -> usize {
        self.ctx.n()
    }

    pub fn p(&self) -> u64 {
        self.ctx.p()
    }

    pub fn q(&self) -> Fp {
        self.q
    }

    /// `q^e` for any integer `e`, using `q^n = 1`.
    pub fn q_pow(&self, e: i64) -> Fp {
        self.q.pow(e.rem_euclid(self.n() as i64) as u64)
    }

    /// `[a]_q = (1 - q^a) / (1 - q)`.
    pub fn q_int(&self, a: u64) -> Fp {
        q_int_at(self.q, a)
    }

    pub fn q_factorial(&self, d: usize) -> Result<Fp> {
        self.factorials
            .get(d)
            .copied()
            .ok_or_else(|| Error::Domain(format!("[{d}]_q! needs d < n = {}", self.n())))
    }

    fn check_degree(&self, d: i64) -> Result<()> {
        if d < 0 || d >= self.n() as i64 {
            return Err(Error::Domain(format!(
                "degree {d} outside 0..={}",
                self.n() as i64 - 1
            )));
        }
        Ok(())
    }

    /// `[d]_q! / ([a]_q! [b]_q!)` with `a + b = d`; zero if `a` or `b` is
    /// negative.
    pub fn q_binom(&self, d: i64, a: i64, b: i64) -> Result<Fp> {
        self.check_degree(d)?;
        if a + b != d {
            return Err(Error::Domain(format!("{a} + {b} != {d}")));
        }
        if a < 0 || b < 0 {
            return Ok(self.ctx.zero());
        }
        Ok(self.factorials[d as usize]
            * self.inv_factorials[a as usize]
            * self.inv_factorials[b as usize])
    }

    /// `[d]_q! / ([a]_q! [b]_q! [c]_q!)` with `a + b + c = d`; zero if any
    /// part is negative.
    pub fn q_trinom(&self, d: i64, a: i64, b: i64, c: i64) -> Result<Fp> {
        self.check_degree(d)?;
        if a + b + c != d {
            return Err(Error::Domain(format!("{a} + {b} + {c} != {d}")));
        }
        if a < 0 || b < 0 || c < 0 {
            return Ok(self.ctx.zero());
        }
        Ok(self.factorials[d as usize]
            * self.inv_factorials[a as usize]
            * self.inv_factorials[b as usize]
            * self.inv_factorials[c as usize])
    }

    /// The two projective triples related by the ratio identity: the
    /// trinomials at `(α-1, β, γ)`, `(α, β-1, γ)`, `(α, β, γ-1)` and the
    /// differences `(1 - q^α, 1 - q^β, 1 - q^γ)`.
    pub fn ratio_triple(&self, alpha: i64, beta: i64, gamma: i64) -> Result<RatioTriple> {
        let n = self.n() as i64;
        let in_range = |x: i64| (0..n).contains(&x);
        let s = alpha + beta + gamma;
        if !(in_range(alpha) && in_range(beta) && in_range(gamma)) || !(1..=n).contains(&s) {
            return Err(Error::Domain(format!(
                "({alpha}, {beta}, {gamma}) outside the ratio identity range for n = {n}"
            )));
        }
        let d = s - 1;
        let trinomials = [
            self.q_trinom(d, alpha - 1, beta, gamma)?,
            self.q_trinom(d, alpha, beta - 1, gamma)?,
            self.q_trinom(d, alpha, beta, gamma - 1)?,
        ];
        let one = self.ctx.one();
        let differences = [
            one - self.q_pow(alpha),
            one - self.q_pow(beta),
            one - self.q_pow(gamma),
        ];
        let t = RatioTriple {
            trinomials,
            differences,
        };
        if !t.proportional() {
            return Err(Error::InvariantViolation(format!(
                "ratio identity fails at ({alpha}, {beta}, {gamma})"
            )));
        }
        Ok(t)
    }
}

fn q_int_at(q: Fp, a: u64) -> Fp {
    let mut acc = Fp::zero(q.modulus());
    let mut pw = Fp::one(q.modulus());
    for _ in 0..a {
        acc += pw;
        pw *= q;
    }
    acc
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RatioTriple {
    pub trinomials: [Fp; 3],
    pub differences: [Fp; 3],
}

impl RatioTriple {
    /// Equal as points of the projective plane (or both zero).
    pub fn proportional(&self) -> bool {
        projectively_equal(&self.trinomials, &self.differences)
    }
}

/// `u` and `v` are nonzero multiples of each other, or both zero.
pub fn projectively_equal(u: &[Fp], v: &[Fp]) -> bool {
    assert_eq!(u.len(), v.len());
    let zu = u.iter().all(|x| x.is_zero());
    let zv = v.iter().all(|x| x.is_zero());
    if zu || zv {
        return zu && zv;
    }
    // all 2x2 minors of the stacked pair vanish
    (0..u.len()).all(|i| (i + 1..u.len()).all(|j| u[i] * v[j] == u[j] * v[i]))
}
