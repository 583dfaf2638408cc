//! The quadratic form X -> Tr(alpha x^2 + beta x^(p+1) + gamma x^(p^2+1)) on
//! F_3^m, its Gram matrix, congruence diagonalization, and the Gauss-sum
//! evaluation that replaces a q-term summation by an m x m elimination.

use std::fmt;

use crate::error::{Error, Result};
use crate::expsum::{exponents, EisensteinInteger, ExpSumClass};
use crate::gf::{FieldContext, FieldElement};

#[inline]
fn add3(a: u8, b: u8) -> u8 {
    let s = a + b;
    if s >= 3 {
        s - 3
    } else {
        s
    }
}

#[inline]
fn mul3(a: u8, b: u8) -> u8 {
    (a * b) % 3
}

#[inline]
fn neg3(a: u8) -> u8 {
    if a == 0 {
        0
    } else {
        3 - a
    }
}

/// Square matrix over F_3, row-major. Used both for symmetric Gram matrices
/// and for the change-of-basis matrices produced by [`diagonalize`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SymmetricMatrix {
    n: usize,
    entries: Vec<u8>,
}

impl fmt::Debug for SymmetricMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.n {
            writeln!(f, "{:?}", &self.entries[r * self.n..(r + 1) * self.n])?;
        }
        Ok(())
    }
}

impl SymmetricMatrix {
    pub fn zero(n: usize) -> Self {
        SymmetricMatrix {
            n,
            entries: vec![0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from rows; entries are reduced mod 3.
    pub fn from_rows(rows: &[Vec<u8>]) -> Self {
        let n = rows.len();
        let mut m = Self::zero(n);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), n, "matrix must be square");
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, v % 3);
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.entries[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u8) {
        self.entries[i * self.n + j] = v;
    }

    pub fn entries(&self) -> &[u8] {
        &self.entries
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| i == j || self.get(i, j) == 0))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&v| v == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.n, o.n);
        let mut out = Self::zero(self.n);
        for i in 0..self.n {
            for k in 0..self.n {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..self.n {
                    let v = add3(out.get(i, j), mul3(a, o.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// P H P^T.
    pub fn congruent(&self, p: &Self) -> Self {
        p.mul(self).mul(&p.transpose())
    }

    /// Entry-wise sum.
    pub fn add(&self, o: &Self) -> Self {
        SymmetricMatrix {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&o.entries)
                .map(|(&a, &b)| add3(a, b))
                .collect(),
        }
    }

    /// X H X^T for a coordinate row vector X.
    pub fn eval(&self, x: &[u8]) -> u8 {
        let mut acc = 0u32;
        for i in 0..self.n {
            if x[i] == 0 {
                continue;
            }
            for j in 0..self.n {
                acc += (x[i] * self.get(i, j) * x[j]) as u32;
            }
        }
        (acc % 3) as u8
    }
}

/// Coordinate vector of the basis element x^j.
fn basis_element(j: usize) -> FieldElement {
    let mut c = vec![0u8; j + 1];
    c[j] = 1;
    FieldElement::from_coeffs(&c)
}

fn trace_form(
    ctx: &FieldContext,
    alpha: FieldElement,
    beta: FieldElement,
    gamma: FieldElement,
    x: FieldElement,
) -> u8 {
    let e = exponents(ctx.p());
    let f = ctx
        .mul(alpha, ctx.pow(x, e[0]))
        .add(ctx.mul(beta, ctx.pow(x, e[1])))
        .add(ctx.mul(gamma, ctx.pow(x, e[2])));
    ctx.trace(f)
}

/// Gram matrix H with X H X^T = Tr(f(x)) in the polynomial basis.
pub fn build_form(
    ctx: &FieldContext,
    alpha: FieldElement,
    beta: FieldElement,
    gamma: FieldElement,
) -> SymmetricMatrix {
    let n = ctx.m() as usize;
    let diag: Vec<u8> = (0..n)
        .map(|j| trace_form(ctx, alpha, beta, gamma, basis_element(j)))
        .collect();
    let mut h = SymmetricMatrix::zero(n);
    for j in 0..n {
        h.set(j, j, diag[j]);
        for k in j + 1..n {
            let both = trace_form(ctx, alpha, beta, gamma, basis_element(j).add(basis_element(k)));
            // 2^-1 = 2 in F_3
            let polar = mul3(2, add3(both, neg3(add3(diag[j], diag[k]))));
            h.set(j, k, polar);
            h.set(k, j, polar);
        }
    }
    h
}

/// Row rank over F_3.
pub fn rank(h: &SymmetricMatrix) -> u32 {
    let n = h.n;
    let mut a = h.entries.clone();
    let mut r = 0;
    for col in 0..n {
        let Some(piv) = (r..n).find(|&i| a[i * n + col] != 0) else {
            continue;
        };
        for c in 0..n {
            a.swap(r * n + c, piv * n + c);
        }
        // pivot entries 1 and 2 are their own inverses
        let inv = a[r * n + col];
        for c in 0..n {
            a[r * n + c] = mul3(a[r * n + c], inv);
        }
        for i in 0..n {
            if i != r && a[i * n + col] != 0 {
                let f = neg3(a[i * n + col]);
                for c in 0..n {
                    a[i * n + c] = add3(a[i * n + c], mul3(f, a[r * n + c]));
                }
            }
        }
        r += 1;
    }
    r as u32
}

/// Congruence diagonalization: returns (D, P) with P H P^T = D diagonal and P
/// invertible. The nonzero diagonal entries come first.
pub fn diagonalize(h: &SymmetricMatrix) -> (SymmetricMatrix, SymmetricMatrix) {
    let n = h.n;
    let mut d = h.clone();
    let mut p = SymmetricMatrix::identity(n);

    // row op on both d (rows and columns) and p (rows)
    fn add_multiple(d: &mut SymmetricMatrix, p: &mut SymmetricMatrix, dst: usize, src: usize, c: u8) {
        let n = d.n;
        for k in 0..n {
            let v = add3(d.get(dst, k), mul3(c, d.get(src, k)));
            d.set(dst, k, v);
        }
        for k in 0..n {
            let v = add3(d.get(k, dst), mul3(c, d.get(k, src)));
            d.set(k, dst, v);
        }
        for k in 0..n {
            let v = add3(p.get(dst, k), mul3(c, p.get(src, k)));
            p.set(dst, k, v);
        }
    }
    fn swap(d: &mut SymmetricMatrix, p: &mut SymmetricMatrix, a: usize, b: usize) {
        if a == b {
            return;
        }
        let n = d.n;
        for k in 0..n {
            d.entries.swap(a * n + k, b * n + k);
            p.entries.swap(a * n + k, b * n + k);
        }
        for k in 0..n {
            d.entries.swap(k * n + a, k * n + b);
        }
    }

    for k in 0..n {
        if let Some(i) = (k..n).find(|&i| d.get(i, i) != 0) {
            swap(&mut d, &mut p, k, i);
        } else {
            let partner = (k..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).find(|&(i, j)| d.get(i, j) != 0);
            let Some((i, j)) = partner else { break };
            // new d[i][i] = 2 d[i][j] != 0 since both diagonals vanish
            add_multiple(&mut d, &mut p, i, j, 1);
            swap(&mut d, &mut p, k, i);
        }
        let pivot = d.get(k, k);
        for i in k + 1..n {
            let v = d.get(i, k);
            if v != 0 {
                // pivot is self-inverse
                add_multiple(&mut d, &mut p, i, k, neg3(mul3(v, pivot)));
            }
        }
    }
    (d, p)
}

/// Legendre symbol (a / p) by Euler's criterion.
pub fn legendre(a: i64, p: u32) -> i8 {
    let p = p as i64;
    let a = a.rem_euclid(p);
    if a == 0 {
        return 0;
    }
    let mut e = (p - 1) / 2;
    let mut base = a;
    let mut acc = 1i64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    if acc == 1 {
        1
    } else {
        -1
    }
}

/// Rank and Legendre symbol of the product of nonzero pivots, computed in
/// place on a row-major `n x n` symmetric array.
pub(crate) fn rank_and_delta(a: &mut [u8], n: usize) -> (u32, i8) {
    let mut delta = 1u8;
    let mut k = 0;
    while k < n {
        let mut piv = n;
        for i in k..n {
            if a[i * n + i] != 0 {
                piv = i;
                break;
            }
        }
        if piv == n {
            let mut found = None;
            'search: for i in k..n {
                for j in i + 1..n {
                    if a[i * n + j] != 0 {
                        found = Some((i, j));
                        break 'search;
                    }
                }
            }
            let Some((i, j)) = found else { break };
            // row/col i += row/col j
            for c in 0..n {
                a[i * n + c] = add3(a[i * n + c], a[j * n + c]);
            }
            for r in 0..n {
                a[r * n + i] = add3(a[r * n + i], a[r * n + j]);
            }
            piv = i;
        }
        if piv != k {
            for c in 0..n {
                a.swap(k * n + c, piv * n + c);
            }
            for r in 0..n {
                a.swap(r * n + k, r * n + piv);
            }
        }
        let pivot = a[k * n + k];
        delta = mul3(delta, pivot);
        for i in k + 1..n {
            let v = a[i * n + k];
            if v == 0 {
                continue;
            }
            let f = neg3(mul3(v, pivot));
            // row operations alone produce the (symmetric) Schur complement
            for c in k + 1..n {
                a[i * n + c] = add3(a[i * n + c], mul3(f, a[k * n + c]));
            }
            a[i * n + k] = 0;
        }
        k += 1;
    }
    (k as u32, if delta == 1 { 1 } else { -1 })
}

/// [`rank_and_delta`] on a matrix whose row `i` is packed into a field
/// element with coefficient `j` holding entry `(i, j)`. Rows are consumed.
///
/// Pivots are taken in any order among the live indices; when every live
/// diagonal entry vanishes, a pair (i, j) with a_ij != 0 spans a hyperbolic
/// plane of determinant -a_ij^2 = -1 and is removed as a 2 x 2 block.
/// Only row operations are applied, so the live block stays the symmetric
/// Schur complement.
#[inline]
pub(crate) fn rank_and_delta_packed(rows: &mut [FieldElement], n: usize) -> (u32, i8) {
    let mut live: u16 = ((1u32 << n) - 1) as u16;
    let mut rank = 0u32;
    let mut delta = 1u8;
    while live != 0 {
        let mut diag = 0u16;
        let mut bits = live;
        while bits != 0 {
            let i = bits.trailing_zeros();
            bits &= bits - 1;
            if rows[i as usize].coeff(i) != 0 {
                diag |= 1 << i;
            }
        }
        if diag != 0 {
            let i = diag.trailing_zeros();
            let d = rows[i as usize].coeff(i);
            live &= !(1 << i);
            let pivot = rows[i as usize];
            let mut bits = live;
            while bits != 0 {
                let r = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                let v = rows[r].coeff(i);
                if v != 0 {
                    // row_r -= (v / d) row_i, with d^-1 = d
                    rows[r] = rows[r].sub(pivot.scale(mul3(v, d)));
                }
            }
            delta = mul3(delta, d);
            rank += 1;
            continue;
        }
        let mut found = None;
        let mut bits = live;
        while bits != 0 {
            let i = bits.trailing_zeros();
            bits &= bits - 1;
            let (o, t) = rows[i as usize].planes();
            let off = (o | t) & live;
            if off != 0 {
                found = Some((i, off.trailing_zeros()));
                break;
            }
        }
        let Some((i, j)) = found else { break };
        let a = rows[i as usize].coeff(j);
        live &= !((1 << i) | (1 << j));
        let (ri, rj) = (rows[i as usize], rows[j as usize]);
        let mut bits = live;
        while bits != 0 {
            let r = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            // block inverse is [[0, 1/a], [1/a, 0]] and 1/a = a
            let ci = mul3(rows[r].coeff(j), a);
            let cj = mul3(rows[r].coeff(i), a);
            rows[r] = rows[r].sub(ri.scale(ci)).sub(rj.scale(cj));
        }
        delta = mul3(delta, 2);
        rank += 2;
    }
    (rank, if delta == 1 { 1 } else { -1 })
}

/// Class of the Gauss sum of H over F_3^n, by the Legendre-symbol formula.
/// For p = 3 the sum is i^r (Delta / 3) 3^(n - r/2).
pub fn classify_via_legendre(h: &SymmetricMatrix, m: u32, zero_triple: bool) -> Result<ExpSumClass> {
    if m % 2 != 0 {
        return Err(Error::Hypothesis(format!(
            "sum classification requires even m, got {m}"
        )));
    }
    if h.n != m as usize {
        return Err(Error::Config(format!("matrix dimension {} != m = {m}", h.n)));
    }
    if zero_triple {
        return Ok(ExpSumClass::zero_triple(m));
    }
    let mut a = h.entries.clone();
    let (r, delta) = rank_and_delta(&mut a, h.n);
    Ok(ExpSumClass::from_rank(m, r, delta))
}

/// sum over X of zeta^(X H X^T), for any dimension.
pub fn gauss_sum(h: &SymmetricMatrix) -> EisensteinInteger {
    let n = h.n as u32;
    let mut a = h.entries.clone();
    let (r, delta) = rank_and_delta(&mut a, h.n);
    ExpSumClass::from_rank(n, r, delta).value(n)
}

/// Solves H y^T = b over F_3 (H symmetric); None if inconsistent.
fn solve(h: &SymmetricMatrix, b: &[u8]) -> Option<Vec<u8>> {
    let n = h.n;
    let w = n + 1;
    let mut a = vec![0u8; n * w];
    for i in 0..n {
        for j in 0..n {
            a[i * w + j] = h.get(i, j);
        }
        a[i * w + n] = b[i] % 3;
    }
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(piv) = (r..n).find(|&i| a[i * w + col] != 0) else {
            continue;
        };
        for c in 0..w {
            a.swap(r * w + c, piv * w + c);
        }
        let inv = a[r * w + col];
        for c in 0..w {
            a[r * w + c] = mul3(a[r * w + c], inv);
        }
        for i in 0..n {
            if i != r && a[i * w + col] != 0 {
                let f = neg3(a[i * w + col]);
                for c in 0..w {
                    a[i * w + c] = add3(a[i * w + c], mul3(f, a[r * w + c]));
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    if (r..n).any(|i| a[i * w + n] != 0) {
        return None;
    }
    let mut y = vec![0u8; n];
    for (row, &col) in pivots.iter().enumerate() {
        y[col] = a[row * w + n];
    }
    Some(y)
}

/// sum over X of zeta^(X H X^T + A X^T).
///
/// When 2 Y H + A = 0 has a solution B the sum is zeta^c times the Gauss sum
/// of H with c = A B^T / 2; otherwise it vanishes.
pub fn affine_exponential_sum(h: &SymmetricMatrix, a: &[u8]) -> EisensteinInteger {
    assert_eq!(a.len(), h.n, "linear part has wrong length");
    // 2 Y H = -A  <=>  Y H = A  (since -2^-1 = 1 in F_3)
    let Some(b) = solve(h, a) else {
        return EisensteinInteger::zero();
    };
    let dot: u32 = a.iter().zip(&b).map(|(&x, &y)| (x * y) as u32).sum();
    let c = mul3(2, (dot % 3) as u8);
    gauss_sum(h).mul_zeta_pow(c as u32)
}

/// Precomputed Gram matrices of the single-coefficient forms, so that the
/// matrix of any triple is a sum of three table entries.
pub struct FormTable {
    n: usize,
    /// `slots[s][index(x)]` is the matrix of the form with x in slot s.
    slots: [Vec<Vec<u8>>; 3],
    /// The same matrices with rows packed as in [`rank_and_delta_packed`].
    packed: [Vec<[FieldElement; 12]>; 3],
}

fn pack_rows(entries: &[u8], n: usize) -> [FieldElement; 12] {
    let mut rows = [FieldElement::ZERO; 12];
    for (i, row) in rows.iter_mut().take(n).enumerate() {
        *row = FieldElement::from_coeffs(&entries[i * n..(i + 1) * n]);
    }
    rows
}

impl FormTable {
    pub fn new(ctx: &FieldContext) -> Self {
        let z = FieldElement::ZERO;
        let build = |slot: usize| -> Vec<Vec<u8>> {
            ctx.elements()
                .map(|x| {
                    let h = match slot {
                        0 => build_form(ctx, x, z, z),
                        1 => build_form(ctx, z, x, z),
                        _ => build_form(ctx, z, z, x),
                    };
                    h.entries
                })
                .collect()
        };
        let n = ctx.m() as usize;
        let slots = [build(0), build(1), build(2)];
        let packed = [0, 1, 2].map(|s| slots[s].iter().map(|e| pack_rows(e, n)).collect());
        FormTable { n, slots, packed }
    }

    /// Gram matrix of the triple with the given element indices.
    pub fn matrix(&self, idx: [u32; 3]) -> SymmetricMatrix {
        let mut entries = vec![0u8; self.n * self.n];
        self.sum_into(idx, &mut entries);
        SymmetricMatrix { n: self.n, entries }
    }

    #[inline]
    pub(crate) fn sum_into(&self, idx: [u32; 3], out: &mut [u8]) {
        let a = &self.slots[0][idx[0] as usize];
        let b = &self.slots[1][idx[1] as usize];
        let c = &self.slots[2][idx[2] as usize];
        for k in 0..out.len() {
            let s = a[k] + b[k] + c[k];
            out[k] = s % 3;
        }
    }

    /// Packed rows of the matrix for alpha and beta (gamma = 0).
    #[inline]
    pub(crate) fn packed_pair(&self, a: u32, b: u32) -> [FieldElement; 12] {
        let (x, y) = (&self.packed[0][a as usize], &self.packed[1][b as usize]);
        std::array::from_fn(|i| x[i].add(y[i]))
    }

    /// `base` plus the packed gamma-slot matrix.
    #[inline]
    pub(crate) fn packed_with_gamma(&self, base: &[FieldElement; 12], c: u32) -> [FieldElement; 12] {
        let z = &self.packed[2][c as usize];
        std::array::from_fn(|i| base[i].add(z[i]))
    }

    /// Rank and Legendre symbol for the triple with the given indices.
    pub fn rank_and_delta(&self, idx: [u32; 3]) -> (u32, i8) {
        let mut buf = [0u8; 144];
        let a = &mut buf[..self.n * self.n];
        self.sum_into(idx, a);
        rank_and_delta(a, self.n)
    }

    pub fn dim(&self) -> usize {
        self.n
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expsum::SumKind;
    use crate::gf::field_context;
    use rand::{Rng, SeedableRng};

    fn coords(x: FieldElement, m: u32) -> Vec<u8> {
        x.coeffs(m)
    }

    fn random_symmetric(rng: &mut impl Rng, n: usize) -> SymmetricMatrix {
        let mut h = SymmetricMatrix::zero(n);
        for i in 0..n {
            for j in i..n {
                let v = rng.gen_range(0..3);
                h.set(i, j, v);
                h.set(j, i, v);
            }
        }
        h
    }

    fn random_invertible(rng: &mut impl Rng, n: usize) -> SymmetricMatrix {
        loop {
            let mut p = SymmetricMatrix::zero(n);
            for i in 0..n {
                for j in 0..n {
                    p.set(i, j, rng.gen_range(0..3));
                }
            }
            if rank(&p) == n as u32 {
                return p;
            }
        }
    }

    fn brute_sum(h: &SymmetricMatrix, a: &[u8]) -> EisensteinInteger {
        let n = h.dim();
        let mut tally = [0u64; 3];
        for code in 0..3usize.pow(n as u32) {
            let mut x = vec![0u8; n];
            let mut c = code;
            for v in x.iter_mut() {
                *v = (c % 3) as u8;
                c /= 3;
            }
            let lin: u32 = a.iter().zip(&x).map(|(&p, &q)| (p * q) as u32).sum();
            tally[((h.eval(&x) as u32 + lin) % 3) as usize] += 1;
        }
        EisensteinInteger::from_tally(tally)
    }

    #[test]
    fn zero_triple_gives_zero_matrix() {
        let f = field_context(3, 4).unwrap();
        let z = FieldElement::ZERO;
        assert!(build_form(&f, z, z, z).is_zero());
    }

    #[test]
    fn polarization_reproduces_trace_form_m2() {
        let f = field_context(3, 2).unwrap();
        for a in f.elements() {
            for b in f.elements() {
                for c in f.elements() {
                    let h = build_form(&f, a, b, c);
                    assert!(h.is_symmetric());
                    for x in f.elements() {
                        assert_eq!(h.eval(&coords(x, 2)), trace_form(&f, a, b, c, x));
                    }
                }
            }
        }
    }

    #[test]
    fn form_table_matches_direct_build() {
        let f = field_context(3, 4).unwrap();
        let t = FormTable::new(&f);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let idx = [0; 3].map(|_| rng.gen_range(0..f.q()));
            let h = build_form(&f, f.element(idx[0]), f.element(idx[1]), f.element(idx[2]));
            assert_eq!(t.matrix(idx), h);
        }
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&SymmetricMatrix::zero(4)), 0);
        assert_eq!(rank(&SymmetricMatrix::identity(6)), 6);
        let f = field_context(3, 2).unwrap();
        let z = FieldElement::ZERO;
        assert_eq!(rank(&build_form(&f, FieldElement::ONE, z, z)), 2);
    }

    #[test]
    fn diagonalize_zero_and_diagonal() {
        let (d, p) = diagonalize(&SymmetricMatrix::zero(3));
        assert!(d.is_zero());
        assert_eq!(p, SymmetricMatrix::identity(3));

        let h = SymmetricMatrix::from_rows(&[vec![0, 0, 0], vec![0, 2, 0], vec![0, 0, 1]]);
        let (d, p) = diagonalize(&h);
        assert_eq!(d.congruent(&SymmetricMatrix::identity(3)), d);
        assert_eq!(h.congruent(&p), d);
        let mut diag: Vec<u8> = (0..3).map(|i| d.get(i, i)).collect();
        diag.sort();
        assert_eq!(diag, vec![0, 1, 2]);
        // P only permutes
        assert!(p.entries().iter().all(|&v| v <= 1));
        for i in 0..3 {
            assert_eq!((0..3).filter(|&j| p.get(i, j) == 1).count(), 1);
        }
    }

    #[test]
    fn diagonalize_random_m6() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..1000 {
            let h = random_symmetric(&mut rng, 6);
            let (d, p) = diagonalize(&h);
            assert!(d.is_diagonal());
            assert_eq!(rank(&p), 6);
            assert_eq!(h.congruent(&p), d);
            let nonzero = (0..6).filter(|&i| d.get(i, i) != 0).count() as u32;
            assert_eq!(nonzero, rank(&h));
            let mut a = h.entries().to_vec();
            let (r, delta) = rank_and_delta(&mut a, 6);
            assert_eq!(r, nonzero);
            let prod = (0..6)
                .map(|i| d.get(i, i))
                .filter(|&v| v != 0)
                .fold(1u8, mul3);
            assert_eq!(delta, legendre(prod as i64, 3));
            let mut rows = pack_rows(h.entries(), 6);
            assert_eq!(rank_and_delta_packed(&mut rows[..6], 6), (r, delta));
        }
    }

    #[test]
    fn packed_elimination_on_degenerate_and_hyperbolic_forms() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for n in 1..=8usize {
            for trial in 0..400 {
                let mut h = random_symmetric(&mut rng, n);
                if trial % 2 == 0 {
                    for i in 0..n {
                        h.set(i, i, 0);
                    }
                }
                if trial % 3 == 0 {
                    // project onto a random subspace to lower the rank
                    let mut p = random_invertible(&mut rng, n);
                    for j in 0..n / 2 {
                        for i in 0..n {
                            p.entries[j * n + i] = 0;
                        }
                    }
                    h = h.congruent(&p);
                }
                let mut a = h.entries().to_vec();
                let expected = rank_and_delta(&mut a, n);
                assert_eq!(expected.0, rank(&h));
                let mut rows = pack_rows(h.entries(), n);
                assert_eq!(rank_and_delta_packed(&mut rows[..n], n), expected, "{h:?}");
            }
        }
    }

    #[test]
    fn hyperbolic_plane_needs_fixup() {
        let h = SymmetricMatrix::from_rows(&[vec![0, 1], vec![1, 0]]);
        let (d, p) = diagonalize(&h);
        assert!(d.is_diagonal());
        assert_eq!(h.congruent(&p), d);
        assert_eq!(rank(&d), 2);
    }

    #[test]
    fn legendre_mod_3() {
        assert_eq!(legendre(1, 3), 1);
        assert_eq!(legendre(2, 3), -1);
        assert_eq!(legendre(0, 3), 0);
        assert_eq!(legendre(-1, 3), -1);
        assert_eq!(legendre(4, 5), 1);
        assert_eq!(legendre(2, 5), -1);
    }

    #[test]
    fn rank_is_congruence_invariant() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..300 {
            let h = random_symmetric(&mut rng, 5);
            let p = random_invertible(&mut rng, 5);
            let g = h.congruent(&p);
            assert_eq!(rank(&g), rank(&h));
            assert_eq!(gauss_sum(&g), gauss_sum(&h));
        }
    }

    #[test]
    fn gauss_sum_matches_enumeration() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        for n in 1..=5 {
            for _ in 0..60 {
                let h = random_symmetric(&mut rng, n);
                assert_eq!(gauss_sum(&h), brute_sum(&h, &vec![0; n]), "{h:?}");
            }
        }
    }

    #[test]
    fn affine_sum_cases() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(13);
        let h = random_symmetric(&mut rng, 2);
        assert_eq!(affine_exponential_sum(&h, &[0, 0]), gauss_sum(&h));
        let zero = SymmetricMatrix::zero(2);
        assert_eq!(affine_exponential_sum(&zero, &[1, 2]), EisensteinInteger::zero());
        for _ in 0..100 {
            let h = random_symmetric(&mut rng, 2);
            let a: Vec<u8> = (0..2).map(|_| rng.gen_range(0..3)).collect();
            assert_eq!(affine_exponential_sum(&h, &a), brute_sum(&h, &a));
        }
        for n in 3..=5 {
            for _ in 0..50 {
                let h = random_symmetric(&mut rng, n);
                let a: Vec<u8> = (0..n).map(|_| rng.gen_range(0..3)).collect();
                assert_eq!(affine_exponential_sum(&h, &a), brute_sum(&h, &a));
            }
        }
    }

    #[test]
    fn classify_zero_matrix() {
        let c = classify_via_legendre(&SymmetricMatrix::zero(2), 2, true).unwrap();
        assert_eq!(c.kind, SumKind::ZeroTriple);
        assert_eq!(c.value(2), EisensteinInteger::rational(9));
        assert!(classify_via_legendre(&SymmetricMatrix::zero(3), 3, false).is_err());
    }
}
