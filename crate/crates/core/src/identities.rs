//! MacWilliams transform, power-moment identities, dual low weights, and the
//! eight-equation system whose solution gives the weight distribution.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::code::WeightDistribution;
use crate::error::{Error, Result};
use crate::expsum::{ExpSumClass, SumKind};

fn big(v: impl Into<i128>) -> BigInt {
    BigInt::from(v.into())
}

fn rat(v: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(v.into())
}

fn pow(p: u32, e: u32) -> BigInt {
    BigInt::from(p).pow(e)
}

fn rat_to_string(r: &BigRational) -> String {
    if r.is_integer() {
        r.to_integer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn exact_integer(r: &BigRational, what: &str) -> Result<BigInt> {
    if r.is_integer() {
        Ok(r.to_integer())
    } else {
        Err(Error::Inconsistency(format!("{what} = {} is not an integer", rat_to_string(r))))
    }
}

fn require_theorem_range(p: u32, m: u32) -> Result<()> {
    if p != 3 || m % 2 != 0 || m < 6 {
        return Err(Error::Hypothesis(format!(
            "requires p = 3 and even m>=6, got p = {p}, m = {m}"
        )));
    }
    Ok(())
}

/// One side-by-side comparison of an identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub identity: String,
    pub lhs: String,
    pub rhs: String,
    #[serde(rename = "match")]
    pub matches: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl IdentityCheck {
    pub fn new(identity: impl Into<String>, lhs: &BigRational, rhs: &BigRational) -> Self {
        IdentityCheck {
            identity: identity.into(),
            lhs: rat_to_string(lhs),
            rhs: rat_to_string(rhs),
            matches: lhs == rhs,
            note: None,
        }
    }

    pub fn integers(identity: impl Into<String>, lhs: &BigInt, rhs: &BigInt) -> Self {
        Self::new(identity, &rat(lhs.clone()), &rat(rhs.clone()))
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

// ---------------------------------------------------------------------------

/// The weight R00 at the center and the offsets R_j, j = 0, 2, 4.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightLevels {
    pub r00: u64,
    pub r0: u64,
    pub r2: u64,
    pub r4: u64,
}

impl WeightLevels {
    pub fn new(p: u32, m: u32) -> Result<Self> {
        if m % 2 != 0 || m < 2 {
            return Err(Error::Hypothesis(format!("weight levels need even m >= 2, got {m}")));
        }
        let p64 = p as u64;
        let r = |j: u32| (p64 - 1) * p64.pow((m + j) / 2 - 1);
        Ok(WeightLevels {
            r00: p64.pow(m - 1) * (p64 - 1),
            r0: r(0),
            r2: r(2),
            r4: r(4),
        })
    }

    pub fn offset(&self, j: u32) -> u64 {
        match j {
            0 => self.r0,
            2 => self.r2,
            _ => self.r4,
        }
    }

    /// Weight of a codeword whose sum is `eps p^((m+j)/2)` (even j).
    pub fn weight(&self, eps: i8, j: u32) -> Option<u64> {
        if eps > 0 {
            self.r00.checked_sub(self.offset(j))
        } else {
            Some(self.r00 + self.offset(j))
        }
    }
}

// ---------------------------------------------------------------------------

/// Number of nonzero triples whose sum lies in each family.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct FrequencyCounts {
    #[serde(serialize_with = "crate::serde_decimal")]
    pub n_p0: BigUint,
    #[serde(serialize_with = "crate::serde_decimal")]
    pub n_m0: BigUint,
    #[serde(serialize_with = "crate::serde_decimal")]
    pub n_p2: BigUint,
    #[serde(serialize_with = "crate::serde_decimal")]
    pub n_m2: BigUint,
    #[serde(serialize_with = "crate::serde_decimal")]
    pub n_p4: BigUint,
    #[serde(serialize_with = "crate::serde_decimal")]
    pub n_m4: BigUint,
    #[serde(serialize_with = "crate::serde_decimal")]
    pub two_n1: BigUint,
    #[serde(serialize_with = "crate::serde_decimal")]
    pub two_n3: BigUint,
}

impl FrequencyCounts {
    /// Order used by the linear system.
    pub fn as_vec(&self) -> [BigInt; 8] {
        [
            &self.n_p0, &self.n_m0, &self.n_p2, &self.n_m2, &self.n_p4, &self.n_m4, &self.two_n1,
            &self.two_n3,
        ]
        .map(|v| BigInt::from(v.clone()))
    }

    fn from_ints(v: &[BigInt; 8], what: &str) -> Result<Self> {
        let u = |i: usize| {
            v[i].to_biguint()
                .ok_or_else(|| Error::Inconsistency(format!("{what}: negative frequency {}", v[i])))
        };
        Ok(FrequencyCounts {
            n_p0: u(0)?,
            n_m0: u(1)?,
            n_p2: u(2)?,
            n_m2: u(3)?,
            n_p4: u(4)?,
            n_m4: u(5)?,
            two_n1: u(6)?,
            two_n3: u(7)?,
        })
    }

    /// Tallies a class histogram. The zero triple is skipped; a class with
    /// j > 4 is an inconsistency.
    pub fn from_classes(hist: &BTreeMap<ExpSumClass, u64>) -> Result<Self> {
        let mut f = FrequencyCounts::default();
        for (c, &n) in hist {
            let n = BigUint::from(n);
            let slot = match (c.kind, c.j, c.epsilon > 0) {
                (SumKind::ZeroTriple, _, _) => continue,
                (SumKind::EvenRank, 0, true) => &mut f.n_p0,
                (SumKind::EvenRank, 0, false) => &mut f.n_m0,
                (SumKind::EvenRank, 2, true) => &mut f.n_p2,
                (SumKind::EvenRank, 2, false) => &mut f.n_m2,
                (SumKind::EvenRank, 4, true) => &mut f.n_p4,
                (SumKind::EvenRank, 4, false) => &mut f.n_m4,
                (SumKind::OddRank, 1, _) => &mut f.two_n1,
                (SumKind::OddRank, 3, _) => &mut f.two_n3,
                _ => {
                    return Err(Error::Inconsistency(format!("class {c:?} outside j in 0..=4")));
                }
            };
            *slot += n;
        }
        Ok(f)
    }

    pub fn total(&self) -> BigUint {
        self.as_vec().iter().sum::<BigInt>().to_biguint().expect("nonnegative")
    }

    /// Weight distribution, with the zero codeword.
    pub fn to_distribution(&self, p: u32, m: u32) -> Result<WeightDistribution> {
        let lv = WeightLevels::new(p, m)?;
        let l = (p as u64).pow(m) - 1;
        let mut d = WeightDistribution::new(l);
        d.add(0, BigUint::one());
        d.add(lv.r00, &self.two_n1 + &self.two_n3);
        for (j, plus, minus) in [
            (0, &self.n_p0, &self.n_m0),
            (2, &self.n_p2, &self.n_m2),
            (4, &self.n_p4, &self.n_m4),
        ] {
            for (eps, n) in [(1i8, plus), (-1, minus)] {
                if n.is_zero() {
                    continue;
                }
                let w = lv
                    .weight(eps, j)
                    .ok_or_else(|| Error::Inconsistency(format!("negative weight for j = {j}")))?;
                d.add(w, n.clone());
            }
        }
        Ok(d)
    }
}

/// Per odd j: (j, triples with eps = +1, triples with eps = -1).
pub fn odd_sign_balance(hist: &BTreeMap<ExpSumClass, u64>) -> Vec<(u32, u64, u64)> {
    let mut by_j: BTreeMap<u32, (u64, u64)> = BTreeMap::new();
    for (c, &n) in hist {
        if c.kind == SumKind::OddRank {
            let e = by_j.entry(c.j).or_default();
            if c.epsilon > 0 {
                e.0 += n;
            } else {
                e.1 += n;
            }
        }
    }
    by_j.into_iter().map(|(j, (a, b))| (j, a, b)).collect()
}

/// The six-variable count predicted from frequency counts:
/// n10 + n-10 + p^6 (n12 + n-12) + p^12 (n14 + n-14) - p^3 2n1 - p^9 2n3 + p^(3m).
pub fn m6_from_frequencies(f: &FrequencyCounts, p: u32, m: u32) -> BigInt {
    let v = f.as_vec();
    &v[0] + &v[1] + pow(p, 6) * (&v[2] + &v[3]) + pow(p, 12) * (&v[4] + &v[5])
        - pow(p, 3) * &v[6]
        - pow(p, 9) * &v[7]
        + pow(p, 3 * m)
}

// ---------------------------------------------------------------------------

/// Dual weight distribution: coefficients of
/// sum_i A_i (1 + (p-1) y)^(l-i) (1 - y)^i, divided by p^k.
pub fn macwilliams_transform(a: &WeightDistribution, k_dim: u32, p: u32) -> Result<WeightDistribution> {
    let l = a.l;
    if l == 0 {
        return Err(Error::NotLinearCode("length must be at least 1".into()));
    }
    let size = BigUint::from(p).pow(k_dim);
    if a.total() != size {
        return Err(Error::NotLinearCode(format!(
            "total {} differs from p^k = {size}",
            a.total()
        )));
    }
    if let Some(&w) = a.counts.keys().next_back() {
        if w > l {
            return Err(Error::NotLinearCode(format!("weight {w} exceeds length {l}")));
        }
    }
    let n = l as usize;
    let mut acc = vec![BigInt::zero(); n + 1];
    for (&i, count) in &a.counts {
        let c = BigInt::from(count.clone());
        for (j, kv) in krawtchouk_row(l, p as u64, i).into_iter().enumerate() {
            acc[j] += &c * kv;
        }
    }
    let size = BigInt::from(size);
    let mut out = WeightDistribution::new(l);
    for (j, v) in acc.into_iter().enumerate() {
        let (q, r) = v.div_rem(&size);
        if !r.is_zero() || q.is_negative() {
            return Err(Error::NotLinearCode(format!(
                "dual count at weight {j} is {}",
                rat_to_string(&BigRational::new(v, size.clone()))
            )));
        }
        out.add(j as u64, q.to_biguint().expect("nonnegative"));
    }
    Ok(out)
}

/// K_j(x) for j = 0..=n: the coefficients of (1 + (q-1) y)^(n-x) (1 - y)^x.
pub fn krawtchouk_row(n: u64, q: u64, x: u64) -> Vec<BigInt> {
    let (nb, qb, xb) = (big(n), big(q), big(x));
    let mut k = vec![BigInt::one()];
    if n == 0 {
        return k;
    }
    k.push((&nb) * (&qb - 1) - &qb * &xb);
    for j in 1..n {
        let jb = big(j);
        // (j+1) K_{j+1} = [(n-j)(q-1) + j - q x] K_j - (q-1)(n-j+1) K_{j-1}
        let a = (&nb - &jb) * (&qb - 1) + &jb - &qb * &xb;
        let b = (&qb - 1) * (&nb - &jb + 1);
        let next = (a * &k[j as usize] - b * &k[j as usize - 1]) / (&jb + 1);
        k.push(next);
    }
    k
}

fn falling(x: &BigInt, r: u32) -> BigInt {
    (0..r).fold(BigInt::one(), |acc, i| acc * (x - i))
}

/// Moments sum_i i(i-1)..(i-r+1) A_i checked against the dual counts:
///
/// p^(k-r) sum_{j<=r} (-1)^j C(r,j) j! (l-j)_(r-j) (p-1)^(r-j) A'_j.
///
/// For r = 1, 2, 4 this is the familiar form once A'_1 = A'_3 = 0; the
/// fourth identity is reported as inapplicable otherwise.
pub fn power_moments(a: &WeightDistribution, k_dim: u32, p: u32, dual_low: &[BigUint]) -> Vec<IdentityCheck> {
    let mut out = Vec::new();
    let l = big(a.l);
    let dual = |j: usize| BigInt::from(dual_low.get(j).cloned().unwrap_or_default());
    let a1_zero = dual(1).is_zero();
    let a3_zero = dual(3).is_zero();
    for r in [1u32, 2, 4] {
        let name = match r {
            1 => "power-moment-1",
            2 => "power-moment-2",
            _ => "power-moment-4",
        };
        if (r as usize) >= dual_low.len() {
            continue;
        }
        if r == 4 && !(a1_zero && a3_zero) {
            out.push(IdentityCheck {
                identity: name.into(),
                lhs: String::new(),
                rhs: String::new(),
                matches: false,
                note: Some("inapplicable: A'_1 or A'_3 is nonzero".into()),
            });
            continue;
        }
        let lhs: BigInt = a
            .counts
            .iter()
            .map(|(&i, c)| falling(&big(i), r) * BigInt::from(c.clone()))
            .sum();
        let mut s = BigInt::zero();
        for j in 0..=r {
            let term = binom(r, j)
                * falling(&big(j), j)
                * falling(&(&l - j), r - j)
                * pow(p - 1, r - j)
                * dual(j as usize);
            if j % 2 == 1 {
                s -= term;
            } else {
                s += term;
            }
        }
        let e = k_dim as i64 - r as i64;
        let scale = if e >= 0 {
            rat(pow(p, e as u32))
        } else {
            BigRational::new(BigInt::one(), pow(p, (-e) as u32))
        };
        let rhs = rat(s) * scale;
        let mut check = IdentityCheck::new(name, &rat(lhs), &rhs);
        if !(a1_zero && (r < 4 || a3_zero)) {
            check = check.with_note("general form: A'_1 is nonzero");
        }
        out.push(check);
    }
    out
}

fn binom(n: u32, k: u32) -> BigInt {
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// A'_0 .. A'_4 from the closed forms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualLowWeights {
    #[serde(serialize_with = "serialize_decimals")]
    pub weights: [BigUint; 5],
    /// False for m < 6, where the forms are evaluated but not claimed.
    pub within_hypothesis: bool,
}

fn serialize_decimals<S: serde::Serializer>(v: &[BigUint; 5], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(5))?;
    for x in v {
        seq.serialize_element(&x.to_string())?;
    }
    seq.end()
}

pub fn dual_low_weights_closed(p: u32, m: u32) -> Result<DualLowWeights> {
    if p != 3 {
        return Err(Error::Hypothesis(format!("dual low weights are stated for p = 3, got {p}")));
    }
    let pb = big(p);
    let q = pow(p, m);
    let t1: BigInt = (&q - 1) * (2 * &q - &pb - 3);
    let t2: BigInt = (&q - 1) * (&q - 3);
    let (a, r1) = t1.div_rem(&big(3));
    let (b, r2) = t2.div_rem(&big(2));
    if !r1.is_zero() || !r2.is_zero() {
        return Err(Error::Inconsistency(format!("A'_4 is not integral at m = {m}")));
    }
    let a4 = (a + b).to_biguint().ok_or_else(|| Error::Inconsistency("negative A'_4".into()))?;
    let a2 = (&q - 1u32).to_biguint().expect("q >= 3");
    Ok(DualLowWeights {
        weights: [BigUint::one(), BigUint::zero(), a2, BigUint::zero(), a4],
        within_hypothesis: m % 2 == 0 && m >= 6,
    })
}

// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityConstants {
    #[serde(serialize_with = "crate::serde_decimal")]
    pub c1: BigInt,
    #[serde(serialize_with = "crate::serde_decimal")]
    pub c2: BigInt,
    #[serde(serialize_with = "crate::serde_decimal")]
    pub c3: BigInt,
    #[serde(serialize_with = "crate::serde_decimal")]
    pub c4: BigInt,
    #[serde(serialize_with = "crate::serde_decimal")]
    pub c5: BigInt,
    #[serde(serialize_with = "crate::serde_decimal")]
    pub c6: BigInt,
    #[serde(serialize_with = "crate::serde_decimal")]
    pub a: BigInt,
    #[serde(serialize_with = "crate::serde_decimal")]
    pub b: BigInt,
}

/// Right-hand sides of the eight equations, from the dual counts A'_2, A'_4.
pub fn constants(p: u32, m: u32, a2: &BigUint, a4: &BigUint) -> Result<IdentityConstants> {
    require_theorem_range(p, m)?;
    let pb = big(p);
    let q = pow(p, m);
    let h = m / 2;
    let a2 = rat(BigInt::from(a2.clone()));
    let a4 = rat(BigInt::from(a4.clone()));
    let pm1: BigInt = &pb - 1;
    let c1 = pow(p, 3 * m) - 1;
    let c2 = pow(p, h) * (pow(p, 2 * m) - 1);
    let c3 = &q * (&q - 1);
    let c4 = (&pb + 1) * pow(p, 3 * h) * (&q - 1);
    let c5 = (8 * (&q - 1) * (&q - 1) - &q + 1) * &q;
    let c6 = (5 * (&q - 1) * (8 * &q - 2 * &pb - 10) - pow(p, 2 * m) + 1) * pow(p, h);

    let qr = rat(q.clone());
    let one = || rat(1);
    // sum i A_i
    let m1 = rat(&pm1 * (&q - 1) * pow(p, 3 * m - 1));
    // (p^3m - 2 p^2m + 1) p^(2(m-1)) (p-1)^2
    let k2 = rat(pow(p, 2 * (m - 1)) * pm1.pow(2) * (pow(p, 3 * m) - 2 * pow(p, 2 * m) + 1));
    let a_num = rat(pow(p, 3 * m - 2))
        * ((&qr - one()) * (&qr - rat(2)) * rat(pm1.pow(2)) + rat(2) * &a2)
        - &k2
        + &m1;
    let a = a_num / rat(pm1.pow(2) * pow(p, m - 2));

    let k3 = rat(pow(p, 3 * (m - 1)) * pm1.pow(3) * (pow(p, 3 * m) - pow(p, 2 * m + 1) - 4 * &q + 6));
    let k4 = rat(pow(p, 4 * (m - 1)) * pm1.pow(4) * (pow(p, 3 * m) - 4 * pow(p, 2 * m) - 16 * &q + 19));
    let b_num = rat(pow(p, 3 * m - 4))
        * ((&qr - one()) * (&qr - rat(2)) * (&qr - rat(3)) * (&qr - rat(4)) * rat(pm1.pow(4))
            + rat(12) * &a2 * (&qr - rat(3)) * (&qr - rat(4)) * rat(pm1.pow(2))
            + rat(24) * &a4)
        - rat(pm1.pow(5) * pow(p, 3 * (m - 1))) * &a
        - k4
        + rat(6) * (rat(pm1.pow(3) * pow(p, 2 * (m - 1))) * &a + k3)
        - rat(11) * (rat(pm1.pow(2) * pow(p, m - 2)) * &a + k2)
        + rat(6) * m1;
    let b = b_num / rat(pm1.pow(4) * pow(p, 2 * m - 4));

    Ok(IdentityConstants {
        c1,
        c2,
        c3,
        c4,
        c5,
        c6,
        a: exact_integer(&a, "a")?,
        b: exact_integer(&b, "b")?,
    })
}

/// Coefficient matrix of the eight equations, unknowns ordered as
/// [`FrequencyCounts::as_vec`].
pub fn system_matrix(p: u32) -> [[BigInt; 8]; 8] {
    let e = |k: u32| pow(p, k);
    let z = BigInt::zero;
    let o = BigInt::one;
    let diff = |k: u32| [o(), -o(), e(k), -e(k), e(2 * k), -e(2 * k), z(), z()];
    [
        [o(), o(), o(), o(), o(), o(), o(), o()],
        diff(1),
        [o(), o(), e(2), e(2), e(4), e(4), -e(1), -e(3)],
        diff(3),
        [o(), o(), e(4), e(4), e(8), e(8), e(2), e(6)],
        diff(5),
        [o(), o(), e(2), e(2), e(4), e(4), z(), z()],
        [o(), o(), e(4), e(4), e(8), e(8), z(), z()],
    ]
}

fn rhs_vector(c: &IdentityConstants) -> [BigInt; 8] {
    [&c.c1, &c.c2, &c.c3, &c.c4, &c.c5, &c.c6, &c.a, &c.b].map(Clone::clone)
}

/// Solves A x = b exactly; pivots are the first nonzero entry of each column.
pub fn solve_rational(a: &[[BigInt; 8]; 8], b: &[BigInt; 8]) -> Result<[BigRational; 8]> {
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(row, r)| row.iter().chain([r]).map(|v| rat(v.clone())).collect())
        .collect();
    for col in 0..8 {
        let piv = (col..8)
            .find(|&r| !m[r][col].is_zero())
            .ok_or_else(|| Error::Inconsistency("singular identity system".into()))?;
        m.swap(col, piv);
        let inv = m[col][col].recip();
        for v in m[col].iter_mut() {
            *v *= &inv;
        }
        for r in 0..8 {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..9 {
                    let d = &f * &m[col][c];
                    m[r][c] -= d;
                }
            }
        }
    }
    Ok(std::array::from_fn(|i| m[i][8].clone()))
}

/// The frequency counts by the printed closed-form expressions.
pub fn frequencies_closed_form(c: &IdentityConstants, p: u32) -> [BigRational; 8] {
    let pb = rat(p);
    let pp = |k: i32| pb.pow(k);
    let (a, b) = (rat(c.a.clone()), rat(c.b.clone()));
    let (c1, c2, c3, c4, c5, c6) = (
        rat(c.c1.clone()),
        rat(c.c2.clone()),
        rat(c.c3.clone()),
        rat(c.c4.clone()),
        rat(c.c5.clone()),
        rat(c.c6.clone()),
    );
    let d1 = rat(-2) * pp(6) + rat(2) * pp(4) + rat(2) * pp(2) - rat(2);
    let d2 = rat(2) * pp(7) - rat(4) * pp(5) + rat(2) * pp(3);
    let d3 = rat(2) * pp(10) - rat(2) * pp(8) - rat(2) * pp(6) + rat(2) * pp(4);
    let a25 = &a * (pp(2) + pp(3) + pp(4) + pp(5));

    let n10 = -(&b + &c6 - &a25 - &b * pp(2) + &c1 * pp(6) + &c2 * pp(6) + &c3 * pp(3) + &c3 * pp(5)
        - &c4 * pp(2)
        - &c4 * pp(4)
        + &c5 * pp(2))
        / &d1;
    let nm10 = -(&b - &c6 - &a25 - &b * pp(2) + &c1 * pp(6) - &c2 * pp(6) + &c3 * pp(3) + &c3 * pp(5)
        + &c4 * pp(2)
        + &c4 * pp(4)
        + &c5 * pp(2))
        / &d1;
    let two_n1 = -(&b - &c5 + &a * pp(3) - &c3 * pp(3)) / (pp(2) - pp(4));
    let n12 = (&c4 - &c6 + &a * &pb - &c5 * &pb + &a * pp(2) + &a * pp(4) + &a * pp(5)
        - &c1 * pp(5)
        - &c2 * pp(4)
        - &c3 * pp(2)
        - &c3 * pp(4)
        + &c4 * pp(4))
        / &d2;
    let nm12 = -(&c4 - &c6 - &a * &pb + &c5 * &pb - &a * pp(2) - &a * pp(4) - &a * pp(5)
        + &c1 * pp(5)
        - &c2 * pp(4)
        + &c3 * pp(2)
        + &c3 * pp(4)
        + &c4 * pp(4))
        / &d2;
    let two_n3 = (&b - &c5 + &a * &pb - &c3 * &pb) / (pp(4) - pp(6));
    let tail = &a * &pb - &c3 * &pb + &a * pp(2) + &a * pp(3) + &a * pp(4) - &b * pp(2) - &c1 * pp(4)
        - &c3 * pp(3);
    let n14 = -(&b + &c4 - &c5 - &c6 + &tail - &c2 * pp(2) + &c4 * pp(2)) / &d3;
    let nm14 = -(&b - &c4 - &c5 + &c6 + &tail + &c2 * pp(2) - &c4 * pp(2)) / &d3;
    [n10, nm10, n12, nm12, n14, nm14, two_n1, two_n3]
}

fn render(v: &[BigRational; 8]) -> String {
    let parts: Vec<String> = v.iter().map(rat_to_string).collect();
    format!("[{}]", parts.join(", "))
}

/// Frequencies from both the closed forms and an exact linear solve; the two
/// must agree and be nonnegative integers with even 2n1, 2n3.
pub fn solve_frequencies(c: &IdentityConstants, p: u32, m: u32) -> Result<FrequencyCounts> {
    require_theorem_range(p, m)?;
    let closed = frequencies_closed_form(c, p);
    let solved = solve_rational(&system_matrix(p), &rhs_vector(c))?;
    let fail = |msg: &str| Error::IdentitySystem {
        message: msg.to_string(),
        closed_form: render(&closed),
        linear_solve: render(&solved),
    };
    if closed != solved {
        return Err(fail("closed form and linear solve disagree"));
    }
    if closed.iter().any(|v| !v.is_integer() || v.is_negative()) {
        return Err(fail("frequencies are not nonnegative integers"));
    }
    let ints: [BigInt; 8] = std::array::from_fn(|i| closed[i].to_integer());
    if ints[6].is_odd() || ints[7].is_odd() {
        return Err(fail("2n1 or 2n3 is odd"));
    }
    FrequencyCounts::from_ints(&ints, "solve_frequencies")
}

/// The six frequency equations that hold for every even m, plus the two
/// MacWilliams equations when constants are given, evaluated on `f`.
pub fn frequency_equations(f: &FrequencyCounts, p: u32, m: u32, ab: Option<(&BigInt, &BigInt)>) -> Vec<IdentityCheck> {
    let pb = big(p);
    let q = pow(p, m);
    let h = m / 2;
    let rhs = [
        pow(p, 3 * m) - 1,
        pow(p, h) * (pow(p, 2 * m) - 1),
        &q * (&q - 1),
        (&pb + 1) * pow(p, 3 * h) * (&q - 1),
        (8 * (&q - 1) * (&q - 1) - &q + 1) * &q,
        (5 * (&q - 1) * (8 * &q - 2 * &pb - 10) - pow(p, 2 * m) + 1) * pow(p, h),
    ];
    let x = f.as_vec();
    let mat = system_matrix(p);
    let names = ["count", "moment-1", "moment-2", "moment-3", "moment-4", "moment-5", "macwilliams-a", "macwilliams-b"];
    let mut out = Vec::new();
    let lhs = |row: &[BigInt; 8]| row.iter().zip(&x).map(|(a, b)| a * b).sum::<BigInt>();
    for i in 0..6 {
        out.push(IdentityCheck::integers(format!("frequency-{}", names[i]), &lhs(&mat[i]), &rhs[i]));
    }
    if let Some((a, b)) = ab {
        out.push(IdentityCheck::integers("frequency-macwilliams-a", &lhs(&mat[6]), a));
        out.push(IdentityCheck::integers("frequency-macwilliams-b", &lhs(&mat[7]), b));
    }
    out
}

/// The weight distribution given by the closed forms, for p = 3, m >= 6 even.
pub fn theorem_table(p: u32, m: u32) -> Result<WeightDistribution> {
    require_theorem_range(p, m)?;
    let dual = dual_low_weights_closed(p, m)?;
    let c = constants(p, m, &dual.weights[2], &dual.weights[4])?;
    solve_frequencies(&c, p, m)?.to_distribution(p, m)
}

impl fmt::Display for IdentityCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} {} {}",
            self.identity,
            self.lhs,
            if self.matches { "==" } else { "!=" },
            self.rhs
        )
    }
}

/// Decimal `u64` view of a count, for callers that know it fits.
pub fn to_u64(v: &BigUint) -> Option<u64> {
    v.to_u64()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example_m6() -> WeightDistribution {
        WeightDistribution::from_counts(
            728,
            [
                (0u64, 1u64),
                (486, 124245576),
                (468, 128432304),
                (504, 119277522),
                (432, 8591310),
                (540, 6866496),
                (324, 4732),
                (648, 2548),
            ],
        )
    }

    #[test]
    fn levels_m6() {
        let l = WeightLevels::new(3, 6).unwrap();
        assert_eq!((l.r00, l.r0, l.r2, l.r4), (486, 18, 54, 162));
        assert_eq!(l.weight(1, 4), Some(324));
        assert_eq!(l.weight(-1, 4), Some(648));
        assert!(WeightLevels::new(3, 5).is_err());
    }

    #[test]
    fn theorem_table_m6_is_example() {
        assert_eq!(theorem_table(3, 6).unwrap(), example_m6());
    }

    #[test]
    fn theorem_table_rejects_small_or_odd_m() {
        for m in [2, 4, 7] {
            let e = theorem_table(3, m).unwrap_err();
            assert!(matches!(e, Error::Hypothesis(_)));
            assert!(e.to_string().contains("even m>=6"));
        }
    }

    #[test]
    fn constants_m6() {
        let c = constants(3, 6, &BigUint::from(728u32), &BigUint::from(616616u32)).unwrap();
        assert_eq!(c.c1, pow(3, 18) - 1);
        assert_eq!(c.c4, 4 * pow(3, 9) * 728);
        assert_eq!(c.a, big(387419760u64));
        assert_eq!(c.b, big(1547556192u64));
    }

    #[test]
    fn dual_low_m6_and_a2() {
        let d = dual_low_weights_closed(3, 6).unwrap();
        assert_eq!(d.weights.map(|v| v.to_u64().unwrap()), [1, 0, 728, 0, 616616]);
        assert!(d.within_hypothesis);
        for m in 1..=12 {
            let d = dual_low_weights_closed(3, m).unwrap();
            assert_eq!(d.weights[2], BigUint::from(3u64.pow(m) - 1));
        }
        assert!(!dual_low_weights_closed(3, 4).unwrap().within_hypothesis);
    }

    #[test]
    fn macwilliams_m6() {
        let d = macwilliams_transform(&example_m6(), 18, 3).unwrap();
        let low: Vec<u64> = (0..5).map(|j| d.get(j).to_u64().unwrap()).collect();
        assert_eq!(low, vec![1, 0, 728, 0, 616616]);
        assert_eq!(d.total(), BigUint::from(3u32).pow(728 - 18));
        let back = macwilliams_transform(&d, 728 - 18, 3).unwrap();
        assert_eq!(back, example_m6());
    }

    #[test]
    fn macwilliams_zero_code() {
        let zero = WeightDistribution::from_counts(7, [(0u64, 1u32)]);
        let d = macwilliams_transform(&zero, 0, 3).unwrap();
        for j in 0..=7u64 {
            let expected = binom(7, j as u32) * pow(2, j as u32);
            assert_eq!(BigInt::from(d.get(j)), expected);
        }
    }

    #[test]
    fn macwilliams_rejects_non_codes() {
        // dual coefficient of y^2 is -12/9
        let bad = WeightDistribution::from_counts(2, [(0u64, 1u32), (1, 8)]);
        assert!(matches!(macwilliams_transform(&bad, 2, 3), Err(Error::NotLinearCode(_))));
        let bad = WeightDistribution::from_counts(4, [(0u64, 1u32), (1, 1)]);
        assert!(matches!(macwilliams_transform(&bad, 1, 3), Err(Error::NotLinearCode(_))));
        let bad = WeightDistribution::from_counts(2, [(0u64, 1u32), (3, 2)]);
        assert!(matches!(macwilliams_transform(&bad, 1, 3), Err(Error::NotLinearCode(_))));
    }

    #[test]
    fn krawtchouk_small() {
        // (1 + 2y)^2 (1 - y)^1 = 1 + 3y + 0y^2 - 4y^3
        assert_eq!(krawtchouk_row(3, 3, 1), vec![big(1), big(3), big(0), big(-4)]);
    }

    #[test]
    fn moments_m6() {
        let low: Vec<BigUint> = [1u32, 0, 728, 0, 616616].map(BigUint::from).to_vec();
        let r = power_moments(&example_m6(), 18, 3, &low);
        assert_eq!(r.len(), 3);
        assert!(r.iter().all(|c| c.matches && c.note.is_none()), "{r:?}");
        assert_eq!(r[0].lhs, (big(2 * 728) * pow(3, 17)).to_string());
    }

    #[test]
    fn moments_zero_code() {
        let zero = WeightDistribution::from_counts(5, [(0u64, 1u32)]);
        let dual = macwilliams_transform(&zero, 0, 3).unwrap();
        let low: Vec<BigUint> = (0..5).map(|j| dual.get(j)).collect();
        assert_eq!(low[2], BigUint::from(40u32));
        let r = power_moments(&zero, 0, 3, &low);
        assert!(r[0].matches && r[1].matches);
        assert_eq!(r[0].lhs, "0");
        assert!(!r[2].matches && r[2].note.as_deref().unwrap().starts_with("inapplicable"));
    }

    #[test]
    fn solver_paths_agree_m6_to_m10() {
        for m in [6u32, 8, 10] {
            let d = dual_low_weights_closed(3, m).unwrap();
            let c = constants(3, m, &d.weights[2], &d.weights[4]).unwrap();
            let f = solve_frequencies(&c, 3, m).unwrap();
            assert_eq!(f.total() + 1u32, BigUint::from(3u32).pow(3 * m));
            assert!(frequency_equations(&f, 3, m, Some((&c.a, &c.b))).iter().all(|e| e.matches));
        }
    }

    #[test]
    fn solver_reports_both_candidates_on_disagreement() {
        let d = dual_low_weights_closed(3, 6).unwrap();
        let mut c = constants(3, 6, &d.weights[2], &d.weights[4]).unwrap();
        c.b += 1;
        match solve_frequencies(&c, 3, 6) {
            Err(Error::IdentitySystem { closed_form, linear_solve, .. }) => {
                assert!(closed_form.starts_with('['));
                assert!(linear_solve.starts_with('['));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn frequency_roundtrip_m6() {
        let d = theorem_table(3, 6).unwrap();
        assert_eq!(d.asymmetric_weights(486), Vec::<u64>::new());
        let f = FrequencyCounts {
            n_p0: 128432304u64.into(),
            n_m0: 119277522u64.into(),
            n_p2: 8591310u64.into(),
            n_m2: 6866496u64.into(),
            n_p4: 4732u64.into(),
            n_m4: 2548u64.into(),
            two_n1: 123655896u64.into(),
            two_n3: 589680u64.into(),
        };
        assert_eq!(f.to_distribution(3, 6).unwrap(), d);
    }
}
