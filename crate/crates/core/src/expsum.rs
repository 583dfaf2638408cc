//! Exponential sums S(alpha, beta, gamma) held exactly in Z[zeta_3].
//!
//! For p = 3 every character sum sum_x zeta^(Tr f(x)) is the Eisenstein integer
//! N0 + N1 zeta + N2 zeta^2 = (N0 - N2) + (N1 - N2) zeta, where Nk counts the
//! x with trace value k. Quadratic-form sums are either +-3^e (even rank) or
//! +-(1 + 2 zeta) 3^e (odd rank), and 1 + 2 zeta = i sqrt(3).

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{FieldContext, FieldElement};

/// a0 + a1 * zeta_3 with zeta_3 = exp(2 pi i / 3).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct EisensteinInteger {
    pub a0: BigInt,
    pub a1: BigInt,
}

impl EisensteinInteger {
    pub fn new(a0: impl Into<BigInt>, a1: impl Into<BigInt>) -> Self {
        EisensteinInteger {
            a0: a0.into(),
            a1: a1.into(),
        }
    }

    pub fn rational(a0: impl Into<BigInt>) -> Self {
        Self::new(a0, 0)
    }

    pub fn zero() -> Self {
        Self::rational(0)
    }

    pub fn one() -> Self {
        Self::rational(1)
    }

    /// zeta_3 itself.
    pub fn zeta() -> Self {
        Self::new(0, 1)
    }

    /// 1 + 2 zeta_3, the square root of -3 with positive imaginary part.
    pub fn sqrt_minus_three() -> Self {
        Self::new(1, 2)
    }

    /// Builds N0 + N1 zeta + N2 zeta^2 from a trace tally.
    pub fn from_tally(tally: [u64; 3]) -> Self {
        let n2 = tally[2] as i128;
        Self::new(tally[0] as i128 - n2, tally[1] as i128 - n2)
    }

    pub fn is_rational(&self) -> bool {
        self.a1.is_zero()
    }

    /// Complex conjugate: zeta maps to zeta^2 = -1 - zeta.
    pub fn conj(&self) -> Self {
        EisensteinInteger {
            a0: &self.a0 - &self.a1,
            a1: -&self.a1,
        }
    }

    /// Multiplication by zeta^k.
    pub fn mul_zeta_pow(&self, k: u32) -> Self {
        let mut out = self.clone();
        for _ in 0..k % 3 {
            // zeta (a0 + a1 zeta) = -a1 + (a0 - a1) zeta
            out = EisensteinInteger {
                a0: -&out.a1,
                a1: &out.a0 - &out.a1,
            };
        }
        out
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        EisensteinInteger {
            a0: &self.a0 * k,
            a1: &self.a1 * k,
        }
    }

    /// The components as machine integers, when they fit.
    pub fn to_i64_pair(&self) -> Option<(i64, i64)> {
        Some((self.a0.to_i64()?, self.a1.to_i64()?))
    }
}

impl fmt::Debug for EisensteinInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}ζ", self.a0, self.a1)
    }
}

impl fmt::Display for EisensteinInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.a1.is_zero() {
            write!(f, "{}", self.a0)
        } else if self.a1.is_negative() {
            write!(f, "{} - {}ζ", self.a0, -&self.a1)
        } else {
            write!(f, "{} + {}ζ", self.a0, self.a1)
        }
    }
}

impl<'a> Add<&'a EisensteinInteger> for &'a EisensteinInteger {
    type Output = EisensteinInteger;
    fn add(self, o: &EisensteinInteger) -> EisensteinInteger {
        EisensteinInteger {
            a0: &self.a0 + &o.a0,
            a1: &self.a1 + &o.a1,
        }
    }
}

impl Add for EisensteinInteger {
    type Output = EisensteinInteger;
    fn add(self, o: EisensteinInteger) -> EisensteinInteger {
        &self + &o
    }
}

impl AddAssign<&EisensteinInteger> for EisensteinInteger {
    fn add_assign(&mut self, o: &EisensteinInteger) {
        self.a0 += &o.a0;
        self.a1 += &o.a1;
    }
}

impl<'a> Sub<&'a EisensteinInteger> for &'a EisensteinInteger {
    type Output = EisensteinInteger;
    fn sub(self, o: &EisensteinInteger) -> EisensteinInteger {
        EisensteinInteger {
            a0: &self.a0 - &o.a0,
            a1: &self.a1 - &o.a1,
        }
    }
}

impl<'a> Mul<&'a EisensteinInteger> for &'a EisensteinInteger {
    type Output = EisensteinInteger;
    fn mul(self, o: &EisensteinInteger) -> EisensteinInteger {
        // zeta^2 = -1 - zeta
        let bd = &self.a1 * &o.a1;
        EisensteinInteger {
            a0: &self.a0 * &o.a0 - &bd,
            a1: &self.a0 * &o.a1 + &self.a1 * &o.a0 - bd,
        }
    }
}

impl Mul for EisensteinInteger {
    type Output = EisensteinInteger;
    fn mul(self, o: EisensteinInteger) -> EisensteinInteger {
        &self * &o
    }
}

impl Neg for EisensteinInteger {
    type Output = EisensteinInteger;
    fn neg(self) -> EisensteinInteger {
        EisensteinInteger {
            a0: -self.a0,
            a1: -self.a1,
        }
    }
}

// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SumKind {
    ZeroTriple,
    EvenRank,
    OddRank,
}

/// Which family a sum belongs to: `epsilon * 3^((m+j)/2)` for even rank,
/// `epsilon * i * 3^((m+j)/2)` for odd rank, where `j = m - rank`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ExpSumClass {
    pub kind: SumKind,
    pub epsilon: i8,
    pub rank: u32,
    pub j: u32,
}

impl ExpSumClass {
    pub fn zero_triple(m: u32) -> Self {
        ExpSumClass {
            kind: SumKind::ZeroTriple,
            epsilon: 1,
            rank: 0,
            j: m,
        }
    }

    /// Class of a quadratic form on F_3^m from its rank and the Legendre
    /// symbol of the product of its nonzero diagonal entries.
    pub fn from_rank(m: u32, rank: u32, delta_legendre: i8) -> Self {
        let half = rank / 2;
        let sign = if half % 2 == 0 { 1 } else { -1 };
        ExpSumClass {
            kind: if rank % 2 == 0 {
                SumKind::EvenRank
            } else {
                SumKind::OddRank
            },
            epsilon: sign * delta_legendre,
            rank,
            j: m - rank,
        }
    }

    /// The exact sum this class stands for, over a field of degree `m`.
    pub fn value(&self, m: u32) -> EisensteinInteger {
        let three = BigInt::from(3);
        match self.kind {
            SumKind::ZeroTriple => EisensteinInteger::rational(three.pow(m)),
            SumKind::EvenRank => {
                EisensteinInteger::rational(three.pow(m - self.rank / 2) * self.epsilon)
            }
            SumKind::OddRank => EisensteinInteger::sqrt_minus_three()
                .scale(&(three.pow(m - (self.rank + 1) / 2) * self.epsilon)),
        }
    }

    /// R = S(a) + S(2a): twice the real part, zero for odd rank.
    pub fn r_value(&self, m: u32) -> BigInt {
        match self.kind {
            SumKind::OddRank => BigInt::zero(),
            _ => self.value(m).a0 * 2,
        }
    }
}

/// Identifies the family of an exponential sum.
///
/// `zero_triple` marks the sum of the all-zero coefficient triple, which must
/// equal q. Other sums equal to q (rank-0 forms of nonzero triples, possible
/// for m <= 4) are reported as even rank 0.
pub fn classify(s: &EisensteinInteger, m: u32, zero_triple: bool) -> Result<ExpSumClass> {
    if m % 2 != 0 {
        return Err(Error::Hypothesis(format!(
            "sum classification requires even m, got {m}"
        )));
    }
    let q = BigInt::from(3).pow(m);
    if zero_triple {
        if s.is_rational() && s.a0 == q {
            return Ok(ExpSumClass::zero_triple(m));
        }
        return Err(Error::Inconsistency(format!(
            "zero triple has sum {s}, expected {q}"
        )));
    }
    let no_match = || Error::Inconsistency(format!("sum {s} matches no family for m = {m}"));
    let (magnitude, sign, odd) = if s.is_rational() {
        (s.a0.abs(), s.a0.signum(), false)
    } else if s.a1 == &s.a0 * 2 {
        (s.a0.abs(), s.a0.signum(), true)
    } else {
        return Err(no_match());
    };
    let e = power_of_three(&magnitude).ok_or_else(no_match)?;
    // even: 3^(m - r/2); odd: 3^(m - (r+1)/2)
    if e > m {
        return Err(no_match());
    }
    let rank = if odd {
        2 * (m - e) as i64 - 1
    } else {
        2 * (m - e) as i64
    };
    if rank < 0 || rank > m as i64 {
        return Err(no_match());
    }
    let rank = rank as u32;
    Ok(ExpSumClass {
        kind: if odd {
            SumKind::OddRank
        } else {
            SumKind::EvenRank
        },
        epsilon: if sign.is_positive() { 1 } else { -1 },
        rank,
        j: m - rank,
    })
}

fn power_of_three(n: &BigInt) -> Option<u32> {
    if !n.is_positive() {
        return None;
    }
    let mut n = n.clone();
    let three = BigInt::from(3);
    let mut e = 0;
    while (&n % &three).is_zero() {
        n /= &three;
        e += 1;
    }
    n.is_one().then_some(e)
}

// ---------------------------------------------------------------------------

/// Exponents 2, p + 1 and p^2 + 1 of the three monomials.
pub fn exponents(p: u32) -> [u64; 3] {
    let p = p as u64;
    [2, p + 1, p * p + 1]
}

/// For every field element x (by index): x^2, x^(p+1), x^(p^2+1).
#[derive(Clone, Debug)]
pub struct MonomialTable {
    pub powers: Vec<[FieldElement; 3]>,
}

impl MonomialTable {
    pub fn new(ctx: &FieldContext) -> Self {
        let e = exponents(ctx.p());
        let powers = ctx
            .elements()
            .map(|x| [ctx.pow(x, e[0]), ctx.pow(x, e[1]), ctx.pow(x, e[2])])
            .collect();
        MonomialTable { powers }
    }

    #[inline]
    pub fn get(&self, ctx: &FieldContext, x: FieldElement) -> &[FieldElement; 3] {
        &self.powers[ctx.index(x) as usize]
    }
}

/// Counts of x in F_q with Tr(alpha x^2 + beta x^(p+1) + gamma x^(p^2+1)) = 0, 1, 2.
pub fn trace_tally(
    ctx: &FieldContext,
    table: &MonomialTable,
    alpha: FieldElement,
    beta: FieldElement,
    gamma: FieldElement,
) -> [u64; 3] {
    let mut tally = [0u64; 3];
    for pw in &table.powers {
        let f = ctx
            .mul(alpha, pw[0])
            .add(ctx.mul(beta, pw[1]))
            .add(ctx.mul(gamma, pw[2]));
        tally[ctx.trace(f) as usize] += 1;
    }
    tally
}

/// S(alpha, beta, gamma) by summing over every x in F_q.
pub fn direct_sum(
    ctx: &FieldContext,
    alpha: FieldElement,
    beta: FieldElement,
    gamma: FieldElement,
) -> EisensteinInteger {
    direct_sum_with(ctx, &MonomialTable::new(ctx), alpha, beta, gamma)
}

/// [`direct_sum`] reusing a precomputed monomial table.
pub fn direct_sum_with(
    ctx: &FieldContext,
    table: &MonomialTable,
    alpha: FieldElement,
    beta: FieldElement,
    gamma: FieldElement,
) -> EisensteinInteger {
    EisensteinInteger::from_tally(trace_tally(ctx, table, alpha, beta, gamma))
}

/// R(alpha, beta, gamma) = sum over a in F_3^* of S(a alpha, a beta, a gamma).
pub fn r_sum(
    ctx: &FieldContext,
    alpha: FieldElement,
    beta: FieldElement,
    gamma: FieldElement,
) -> Result<BigInt> {
    r_sum_with(ctx, &MonomialTable::new(ctx), alpha, beta, gamma)
}

pub fn r_sum_with(
    ctx: &FieldContext,
    table: &MonomialTable,
    alpha: FieldElement,
    beta: FieldElement,
    gamma: FieldElement,
) -> Result<BigInt> {
    let mut total = EisensteinInteger::zero();
    for a in 1..ctx.p() as u8 {
        total += &direct_sum_with(ctx, table, alpha.scale(a), beta.scale(a), gamma.scale(a));
    }
    if !total.is_rational() {
        return Err(Error::Inconsistency(format!(
            "R sum {total} has a nonzero zeta component"
        )));
    }
    Ok(total.a0)
}
