//! Arithmetic in GF(3^m) for m <= 12, and in its quadratic extension.
//!
//! Elements are stored bit-sliced: one bitmask marks the coefficients equal to
//! 1 and a second marks those equal to 2, so addition is a handful of word
//! operations. Multiplication goes through discrete log tables built from the
//! powers of the primitive element, which are themselves produced by
//! schoolbook multiplication modulo the defining polynomial.

use std::fmt;
use std::path::Path;

use crate::error::{Error, Result};

/// Largest supported extension degree.
pub const MAX_DEGREE: u32 = 12;

/// Environment variable naming a file that replaces the built-in modulus table.
pub const MODULUS_TABLE_ENV: &str = "TERNCODE_MODULUS_TABLE";

/// One primitive polynomial per degree, coefficients low to high, monic.
/// For each entry the residue class of `x` generates the multiplicative group.
const PRIMITIVE_MODULI: [&[u8]; 12] = [
    &[1, 1],
    &[2, 1, 1],
    &[1, 2, 0, 1],
    &[2, 1, 0, 0, 1],
    &[1, 2, 0, 0, 0, 1],
    &[2, 1, 0, 0, 0, 0, 1],
    &[1, 0, 2, 0, 0, 0, 0, 1],
    &[2, 0, 0, 1, 0, 0, 0, 0, 1],
    &[1, 0, 0, 0, 2, 0, 0, 0, 0, 1],
    &[2, 1, 0, 1, 0, 0, 0, 0, 0, 0, 1],
    &[1, 0, 2, 0, 0, 0, 0, 0, 0, 0, 0, 1],
    &[2, 1, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1],
];

/// An element of GF(3^m) in the polynomial basis.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct FieldElement {
    ones: u16,
    twos: u16,
}

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement { ones: 0, twos: 0 };
    pub const ONE: FieldElement = FieldElement { ones: 1, twos: 0 };

    /// Builds an element from coefficients (low to high); each is reduced mod 3.
    pub fn from_coeffs(coeffs: &[u8]) -> Self {
        let mut e = FieldElement::ZERO;
        for (i, &c) in coeffs.iter().enumerate() {
            match c % 3 {
                1 => e.ones |= 1 << i,
                2 => e.twos |= 1 << i,
                _ => {}
            }
        }
        e
    }

    /// Coefficient vector of length `m`, low to high, each in `0..3`.
    pub fn coeffs(self, m: u32) -> Vec<u8> {
        (0..m).map(|i| self.coeff(i)).collect()
    }

    #[inline]
    pub fn coeff(self, i: u32) -> u8 {
        ((self.ones >> i) & 1) as u8 | ((((self.twos >> i) & 1) as u8) << 1)
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.ones | self.twos == 0
    }

    #[inline]
    pub fn add(self, rhs: Self) -> Self {
        let t = (self.ones | rhs.twos) ^ (self.twos | rhs.ones);
        FieldElement {
            ones: (self.twos | rhs.twos) ^ t,
            twos: (self.ones | rhs.ones) ^ t,
        }
    }

    #[inline]
    pub fn neg(self) -> Self {
        FieldElement {
            ones: self.twos,
            twos: self.ones,
        }
    }

    #[inline]
    pub fn sub(self, rhs: Self) -> Self {
        self.add(rhs.neg())
    }

    /// Multiplication by an element of the prime field.
    #[inline]
    pub fn scale(self, c: u8) -> Self {
        match c % 3 {
            0 => FieldElement::ZERO,
            1 => self,
            _ => self.neg(),
        }
    }

    pub(crate) fn planes(self) -> (u16, u16) {
        (self.ones, self.twos)
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..16 {
            if (self.ones | self.twos) >> i == 0 {
                break;
            }
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", self.coeff(i))?;
        }
        write!(f, "]")
    }
}

// ---------------------------------------------------------------------------
// Polynomials over F_3 as coefficient vectors, low to high.

fn trim(mut a: Vec<u8>) -> Vec<u8> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_rem(a: &[u8], modulus: &[u8]) -> Vec<u8> {
    let mut r = trim(a.to_vec());
    let dm = modulus.len() - 1;
    let lead_inv = modulus[dm] % 3; // 1 or 2 are self-inverse mod 3
    while r.len() > dm {
        let shift = r.len() - 1 - dm;
        let c = (r[r.len() - 1] * lead_inv) % 3;
        for (i, &mc) in modulus.iter().enumerate() {
            r[shift + i] = (r[shift + i] + 3 * 3 - c * mc % 3) % 3;
        }
        r = trim(r);
    }
    r
}

/// Schoolbook product of two polynomials reduced modulo `modulus`.
pub fn poly_mul_mod(a: &[u8], b: &[u8], modulus: &[u8]) -> Vec<u8> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u8; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % 3;
        }
    }
    poly_rem(&prod, modulus)
}

fn poly_pow_mod(base: &[u8], mut e: u64, modulus: &[u8]) -> Vec<u8> {
    let mut result = vec![1u8];
    let mut b = poly_rem(base, modulus);
    while e > 0 {
        if e & 1 == 1 {
            result = poly_mul_mod(&result, &b, modulus);
        }
        b = poly_mul_mod(&b, &b, modulus);
        e >>= 1;
    }
    result
}

fn poly_gcd(a: &[u8], b: &[u8]) -> Vec<u8> {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        let r = poly_rem(&a, &b);
        a = b;
        b = r;
    }
    a
}

fn is_irreducible(modulus: &[u8]) -> bool {
    let m = modulus.len() - 1;
    let x = [0u8, 1];
    let mut frob = poly_rem(&x, modulus);
    for _ in 1..=m / 2 {
        // frob <- frob^3, so frob = x^(3^k) mod f
        frob = poly_pow_mod(&frob, 3, modulus);
        let mut diff = frob.clone();
        diff.resize(diff.len().max(2), 0);
        diff[1] = (diff[1] + 2) % 3;
        let g = poly_gcd(modulus, &trim(diff));
        if g.len() != 1 {
            return false;
        }
    }
    true
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// ---------------------------------------------------------------------------

/// The field GF(p^m) together with its primitive element.
#[derive(Clone)]
pub struct FieldContext {
    p: u32,
    m: u32,
    q: u32,
    modulus: Vec<u8>,
    pi: FieldElement,
    /// `exp[k] = pi^k` for `k < q - 1`.
    exp: Vec<FieldElement>,
    /// Discrete log indexed by element index; entry 0 is unused.
    log: Vec<u32>,
    /// Base-3 value of a 12-bit coefficient mask.
    base3: Vec<u32>,
    trace_mask1: u16,
    trace_mask2: u16,
}

impl fmt::Debug for FieldContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldContext")
            .field("p", &self.p)
            .field("m", &self.m)
            .field("modulus", &self.modulus)
            .finish()
    }
}

/// Builds GF(p^m) from the modulus table (or its environment override).
pub fn field_context(p: u32, m: u32) -> Result<FieldContext> {
    if p != 3 {
        return Err(Error::Config(format!(
            "no modulus table for characteristic {p}; only p = 3 is shipped"
        )));
    }
    if m == 0 || m > MAX_DEGREE {
        return Err(Error::Config(format!(
            "extension degree {m} outside 1..={MAX_DEGREE}"
        )));
    }
    let modulus = match std::env::var_os(MODULUS_TABLE_ENV) {
        Some(path) => lookup_override(Path::new(&path), m)?,
        None => PRIMITIVE_MODULI[m as usize - 1].to_vec(),
    };
    FieldContext::with_modulus(&modulus)
}

fn lookup_override(path: &Path, m: u32) -> Result<Vec<u8>> {
    let text = std::fs::read_to_string(path)?;
    for poly in parse_modulus_table(&text)? {
        if poly.len() == m as usize + 1 {
            return Ok(poly);
        }
    }
    Err(Error::Config(format!(
        "modulus table {} has no polynomial of degree {m}",
        path.display()
    )))
}

/// Parses a modulus table: one polynomial per line, coefficients low to high
/// separated by whitespace or commas. Blank lines and `#` comments are skipped.
pub fn parse_modulus_table(text: &str) -> Result<Vec<Vec<u8>>> {
    let mut out = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let coeffs = line
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<u8>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| Error::Parse(format!("modulus table line {}: {e}", n + 1)))?;
        out.push(coeffs);
    }
    Ok(out)
}

impl FieldContext {
    /// Builds GF(3^m) from an explicit modulus (low to high, degree m, monic).
    ///
    /// The modulus must be irreducible and `x` must have order `3^m - 1`;
    /// a polynomial failing either check is reported as an integrity error.
    pub fn with_modulus(modulus: &[u8]) -> Result<Self> {
        let m = modulus.len().saturating_sub(1) as u32;
        if m == 0 || m > MAX_DEGREE {
            return Err(Error::Config(format!(
                "modulus degree {m} outside 1..={MAX_DEGREE}"
            )));
        }
        if modulus.iter().any(|&c| c > 2) {
            return Err(Error::Integrity("modulus coefficient outside 0..3".into()));
        }
        if modulus[m as usize] != 1 {
            return Err(Error::Integrity("modulus is not monic".into()));
        }
        if !is_irreducible(modulus) {
            return Err(Error::Integrity(format!(
                "modulus {modulus:?} is reducible over F_3"
            )));
        }
        let q = 3u32.pow(m);
        let l = (q - 1) as u64;
        let x = if m == 1 {
            poly_rem(&[0, 1], modulus)
        } else {
            vec![0, 1]
        };
        for r in prime_factors(l) {
            if poly_pow_mod(&x, l / r, modulus) == [1] {
                return Err(Error::Integrity(format!(
                    "x does not generate the multiplicative group modulo {modulus:?}"
                )));
            }
        }

        let base3: Vec<u32> = (0..1u32 << m)
            .map(|mask| {
                (0..m)
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| 3u32.pow(i))
                    .sum()
            })
            .collect();

        let mut exp = Vec::with_capacity(l as usize);
        let mut log = vec![0u32; q as usize];
        let mut cur = vec![1u8];
        for k in 0..l as u32 {
            let e = FieldElement::from_coeffs(&cur);
            let idx = (base3[e.ones as usize] + 2 * base3[e.twos as usize]) as usize;
            if k > 0 && idx == 1 {
                return Err(Error::Integrity("primitive element order too small".into()));
            }
            log[idx] = k;
            exp.push(e);
            cur = poly_mul_mod(&cur, &x, modulus);
        }
        let pi = exp[1 % exp.len()];

        let mut ctx = FieldContext {
            p: 3,
            m,
            q,
            modulus: modulus.to_vec(),
            pi,
            exp,
            log,
            base3,
            trace_mask1: 0,
            trace_mask2: 0,
        };
        for i in 0..m {
            let mut e = vec![0u8; i as usize + 1];
            e[i as usize] = 1;
            match ctx.trace_by_frobenius(FieldElement::from_coeffs(&e)) {
                1 => ctx.trace_mask1 |= 1 << i,
                2 => ctx.trace_mask2 |= 1 << i,
                _ => {}
            }
        }
        Ok(ctx)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// Field size p^m.
    pub fn q(&self) -> u32 {
        self.q
    }

    /// Order of the multiplicative group, which is also the code length.
    pub fn order(&self) -> u32 {
        self.q - 1
    }

    pub fn modulus(&self) -> &[u8] {
        &self.modulus
    }

    pub fn pi(&self) -> FieldElement {
        self.pi
    }

    /// Integer label in `0..q`: the coefficient vector read in base 3.
    #[inline]
    pub fn index(&self, x: FieldElement) -> u32 {
        self.base3[x.ones as usize] + 2 * self.base3[x.twos as usize]
    }

    pub fn element(&self, mut index: u32) -> FieldElement {
        let mut e = FieldElement::ZERO;
        for i in 0..self.m {
            match index % 3 {
                1 => e.ones |= 1 << i,
                2 => e.twos |= 1 << i,
                _ => {}
            }
            index /= 3;
        }
        e
    }

    /// All field elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.q).map(move |i| self.element(i))
    }

    pub fn contains(&self, x: FieldElement) -> bool {
        let mask = ((1u32 << self.m) - 1) as u16;
        x.ones & !mask == 0 && x.twos & !mask == 0 && x.ones & x.twos == 0
    }

    /// Discrete log base pi of a nonzero element.
    #[inline]
    pub fn log(&self, x: FieldElement) -> Option<u32> {
        if x.is_zero() {
            None
        } else {
            Some(self.log[self.index(x) as usize])
        }
    }

    /// pi^k, with `k` reduced modulo q - 1.
    #[inline]
    pub fn exp(&self, k: u64) -> FieldElement {
        self.exp[(k % self.order() as u64) as usize]
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.is_zero() || b.is_zero() {
            return FieldElement::ZERO;
        }
        let l = self.order();
        let s = self.log[self.index(a) as usize] + self.log[self.index(b) as usize];
        self.exp[(if s >= l { s - l } else { s }) as usize]
    }

    /// Product computed by schoolbook multiplication of coefficient vectors.
    pub fn mul_schoolbook(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement::from_coeffs(&poly_mul_mod(
            &a.coeffs(self.m),
            &b.coeffs(self.m),
            &self.modulus,
        ))
    }

    pub fn square(&self, a: FieldElement) -> FieldElement {
        self.mul(a, a)
    }

    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        if e == 0 {
            return FieldElement::ONE;
        }
        match self.log(a) {
            None => FieldElement::ZERO,
            Some(k) => self.exp(k as u64 * (e % self.order() as u64)),
        }
    }

    pub fn inv(&self, a: FieldElement) -> Option<FieldElement> {
        let k = self.log(a)?;
        Some(self.exp((self.order() - k) as u64))
    }

    /// pi^i for any integer `i`, reduced modulo q - 1 by square-and-multiply.
    pub fn primitive_power(&self, i: i64) -> FieldElement {
        let l = self.order() as i64;
        let mut e = i.rem_euclid(l) as u64;
        let mut base = self.pi;
        let mut acc = FieldElement::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_schoolbook(acc, base);
            }
            base = self.mul_schoolbook(base, base);
            e >>= 1;
        }
        acc
    }

    /// Tr(x) = x + x^3 + ... + x^(3^(m-1)), evaluated literally.
    pub fn trace_by_frobenius(&self, x: FieldElement) -> u8 {
        let mut acc = FieldElement::ZERO;
        let mut conj = x;
        for _ in 0..self.m {
            acc = acc.add(conj);
            let sq = self.mul_schoolbook(conj, conj);
            conj = self.mul_schoolbook(sq, conj);
        }
        debug_assert!(acc.ones >> 1 == 0 && acc.twos >> 1 == 0);
        acc.coeff(0)
    }

    /// Absolute trace to F_3, via the traces of the basis monomials.
    #[inline]
    pub fn trace(&self, x: FieldElement) -> u8 {
        let a = (x.ones & self.trace_mask1).count_ones() + (x.twos & self.trace_mask2).count_ones();
        let b = (x.ones & self.trace_mask2).count_ones() + (x.twos & self.trace_mask1).count_ones();
        ((a + 2 * b) % 3) as u8
    }

    pub fn quadratic_extension(&self) -> QuadraticExtension<'_> {
        QuadraticExtension::new(self)
    }
}

// ---------------------------------------------------------------------------

/// An element `re + im * t` of GF(q^2) = GF(q)[t] / (t^2 - d).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct ExtElement {
    pub re: FieldElement,
    pub im: FieldElement,
}

impl ExtElement {
    pub const ZERO: ExtElement = ExtElement {
        re: FieldElement::ZERO,
        im: FieldElement::ZERO,
    };

    pub fn is_zero(self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn add(self, o: Self) -> Self {
        ExtElement {
            re: self.re.add(o.re),
            im: self.im.add(o.im),
        }
    }

    pub fn sub(self, o: Self) -> Self {
        ExtElement {
            re: self.re.sub(o.re),
            im: self.im.sub(o.im),
        }
    }

    pub fn neg(self) -> Self {
        ExtElement {
            re: self.re.neg(),
            im: self.im.neg(),
        }
    }
}

/// GF(q^2) built as a quadratic extension of a [`FieldContext`] by the square
/// root of a fixed non-square `d`.
#[derive(Clone, Debug)]
pub struct QuadraticExtension<'a> {
    base: &'a FieldContext,
    nonsquare: FieldElement,
}

impl<'a> QuadraticExtension<'a> {
    fn new(base: &'a FieldContext) -> Self {
        let half = (base.order() / 2) as u64;
        let minus_one = FieldElement::ONE.neg();
        let nonsquare = base
            .elements()
            .find(|&e| !e.is_zero() && base.pow(e, half) == minus_one)
            .expect("odd field has a non-square");
        QuadraticExtension { base, nonsquare }
    }

    pub fn base(&self) -> &'a FieldContext {
        self.base
    }

    /// Number of elements, q^2.
    pub fn size(&self) -> u64 {
        self.base.q() as u64 * self.base.q() as u64
    }

    pub fn embed(&self, x: FieldElement) -> ExtElement {
        ExtElement {
            re: x,
            im: FieldElement::ZERO,
        }
    }

    pub fn one(&self) -> ExtElement {
        self.embed(FieldElement::ONE)
    }

    pub fn mul(&self, a: ExtElement, b: ExtElement) -> ExtElement {
        let f = self.base;
        let re = f
            .mul(a.re, b.re)
            .add(f.mul(self.nonsquare, f.mul(a.im, b.im)));
        let im = f.mul(a.re, b.im).add(f.mul(a.im, b.re));
        ExtElement { re, im }
    }

    pub fn square(&self, a: ExtElement) -> ExtElement {
        self.mul(a, a)
    }

    pub fn scale(&self, a: ExtElement, c: FieldElement) -> ExtElement {
        ExtElement {
            re: self.base.mul(a.re, c),
            im: self.base.mul(a.im, c),
        }
    }

    pub fn inv(&self, a: ExtElement) -> Option<ExtElement> {
        let f = self.base;
        // (re + im t)(re - im t) = re^2 - d im^2 lies in the base field
        let norm = f
            .square(a.re)
            .sub(f.mul(self.nonsquare, f.square(a.im)));
        let ninv = f.inv(norm)?;
        Some(ExtElement {
            re: f.mul(a.re, ninv),
            im: f.mul(a.im.neg(), ninv),
        })
    }

    /// Element with the given index in `0..q^2`.
    pub fn element(&self, index: u64) -> ExtElement {
        let q = self.base.q() as u64;
        ExtElement {
            re: self.base.element((index % q) as u32),
            im: self.base.element((index / q) as u32),
        }
    }

    pub fn index(&self, a: ExtElement) -> u64 {
        self.base.index(a.re) as u64 + self.base.q() as u64 * self.base.index(a.im) as u64
    }

    pub fn elements(&self) -> impl Iterator<Item = ExtElement> + '_ {
        (0..self.size()).map(move |i| self.element(i))
    }

    /// First element (in index order) whose square is `a`.
    pub fn find_sqrt(&self, a: ExtElement) -> Option<ExtElement> {
        self.elements().find(|&s| self.square(s) == a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bitsliced_addition_matches_digitwise() {
        for a in 0..3u8 {
            for b in 0..3u8 {
                let x = FieldElement::from_coeffs(&[a]);
                let y = FieldElement::from_coeffs(&[b]);
                assert_eq!(x.add(y).coeff(0), (a + b) % 3);
                assert_eq!(x.sub(y).coeff(0), (a + 3 - b) % 3);
            }
        }
    }

    #[test]
    fn prime_field_context() {
        let f = field_context(3, 1).unwrap();
        assert_eq!(f.q(), 3);
        assert_eq!(f.pi(), FieldElement::from_coeffs(&[2]));
        assert_eq!(f.mul(f.pi(), f.pi()), FieldElement::ONE);
    }

    #[test]
    fn pi_has_full_order_m2() {
        let f = field_context(3, 2).unwrap();
        let mut x = FieldElement::ONE;
        let mut order = 0;
        loop {
            x = f.mul_schoolbook(x, f.pi());
            order += 1;
            if x == FieldElement::ONE {
                break;
            }
        }
        assert_eq!(order, 8);
    }

    #[test]
    fn whole_table_is_primitive() {
        for m in 1..=MAX_DEGREE {
            let f = field_context(3, m).unwrap();
            assert_eq!(f.q(), 3u32.pow(m));
            assert_eq!(f.primitive_power(f.order() as i64), FieldElement::ONE);
        }
        assert_eq!(field_context(3, 6).unwrap().order(), 728);
    }

    #[test]
    fn unsupported_pairs_are_config_errors() {
        assert!(matches!(field_context(5, 2), Err(Error::Config(_))));
        assert!(matches!(field_context(3, 13), Err(Error::Config(_))));
        assert!(matches!(field_context(3, 0), Err(Error::Config(_))));
    }

    #[test]
    fn corrupted_moduli_are_integrity_errors() {
        // x^2 + 1 is irreducible but x has order 4, not 8
        assert!(matches!(
            FieldContext::with_modulus(&[1, 0, 1]),
            Err(Error::Integrity(_))
        ));
        // x^2 - 1 = (x - 1)(x + 1)
        assert!(matches!(
            FieldContext::with_modulus(&[2, 0, 1]),
            Err(Error::Integrity(_))
        ));
        // (x^2 + 1)^2, reducible with no linear factor
        assert!(matches!(
            FieldContext::with_modulus(&[1, 0, 2, 0, 1]),
            Err(Error::Integrity(_))
        ));
    }

    #[test]
    fn table_multiplication_matches_schoolbook() {
        let f = field_context(3, 3).unwrap();
        for a in f.elements() {
            for b in f.elements() {
                assert_eq!(f.mul(a, b), f.mul_schoolbook(a, b));
            }
        }
    }

    #[test]
    fn trace_small_cases() {
        for m in 1..=6 {
            let f = field_context(3, m).unwrap();
            assert_eq!(f.trace(FieldElement::ZERO), 0);
            assert_eq!(f.trace(FieldElement::ONE), (m % 3) as u8);
        }
        let f = field_context(3, 2).unwrap();
        let mut hist = [0; 3];
        for x in f.elements() {
            hist[f.trace(x) as usize] += 1;
        }
        assert_eq!(hist, [3, 3, 3]);
    }

    #[test]
    fn trace_agrees_with_frobenius_sum_and_is_frobenius_invariant() {
        for m in 1..=4 {
            let f = field_context(3, m).unwrap();
            for x in f.elements() {
                let t = f.trace(x);
                assert_eq!(t, f.trace_by_frobenius(x));
                assert_eq!(t, f.trace(f.pow(x, 3)));
            }
        }
    }

    #[test]
    fn primitive_power_edges() {
        let f = field_context(3, 4).unwrap();
        let l = f.order() as i64;
        assert_eq!(f.primitive_power(0), FieldElement::ONE);
        assert_eq!(f.primitive_power(l), FieldElement::ONE);
        let half = f.primitive_power(l / 2);
        assert_eq!(half, FieldElement::ONE.neg());
        assert_eq!(f.mul(half, half), FieldElement::ONE);
        assert_eq!(f.primitive_power(-1), f.inv(f.pi()).unwrap());
        assert_eq!(f.primitive_power(37), f.exp(37));
    }

    #[test]
    fn override_table_parses() {
        let t = parse_modulus_table("# comment\n2 1 1\n\n1,2,0,1\n").unwrap();
        assert_eq!(t, vec![vec![2, 1, 1], vec![1, 2, 0, 1]]);
        assert!(parse_modulus_table("1 x 1").is_err());
    }

    #[test]
    fn quadratic_extension_basics() {
        let f = field_context(3, 2).unwrap();
        let e = f.quadratic_extension();
        assert_eq!(e.size(), 81);
        assert_eq!(e.embed(FieldElement::ZERO), ExtElement::ZERO);
        assert_eq!(e.embed(FieldElement::ONE), e.one());
        let minus_one = e.embed(FieldElement::ONE.neg());
        let t = e.find_sqrt(minus_one).expect("-1 is a square in GF(81)");
        assert_eq!(e.square(t), minus_one);
        for a in e.elements().filter(|a| !a.is_zero()) {
            assert_eq!(e.mul(a, e.inv(a).unwrap()), e.one());
        }
        // group of units is cyclic of order 80
        let mut seen = std::collections::HashSet::new();
        for a in e.elements().filter(|a| !a.is_zero()) {
            let mut x = a;
            let mut k = 1u64;
            while x != e.one() {
                x = e.mul(x, a);
                k += 1;
            }
            assert_eq!(80 % k, 0);
            seen.insert(k);
        }
        assert!(seen.contains(&80));
    }
}
