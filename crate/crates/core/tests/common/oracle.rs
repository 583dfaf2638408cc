//! Brute-force reference for S(alpha, beta, gamma) and codeword weights,
//! built from the modulus polynomial alone: no log tables, no library
//! multiplication, no precomputed trace.

pub struct Oracle {
    pub m: usize,
    pub q: usize,
    /// Per x (by index): coefficients of x^2, x^4, x^10.
    mono: Vec<[Vec<u8>; 3]>,
    /// Per element a (by index): Tr(a x^j) for j < m.
    lin: Vec<Vec<u8>>,
}

/// Coefficients of the element with the given index (base-3 digits).
pub fn coeffs(mut idx: usize, m: usize) -> Vec<u8> {
    let mut v = vec![0u8; m];
    for c in v.iter_mut() {
        *c = (idx % 3) as u8;
        idx /= 3;
    }
    v
}

fn mulmod(a: &[u8], b: &[u8], modulus: &[u8]) -> Vec<u8> {
    let m = modulus.len() - 1;
    let mut prod = vec![0u32; 2 * m];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] += (x * y) as u32;
        }
    }
    // modulus is monic: x^m = -(lower terms)
    for k in (m..2 * m).rev() {
        let c = prod[k] % 3;
        prod[k] = 0;
        for i in 0..m {
            prod[k - m + i] += 3 * 3 - c * modulus[i] as u32;
        }
    }
    prod[..m].iter().map(|&v| (v % 3) as u8).collect()
}

fn pow(a: &[u8], e: u64, modulus: &[u8]) -> Vec<u8> {
    let m = modulus.len() - 1;
    let mut r = vec![0u8; m];
    r[0] = 1;
    for _ in 0..e {
        r = mulmod(&r, a, modulus);
    }
    r
}

fn trace(y: &[u8], modulus: &[u8]) -> u8 {
    let m = modulus.len() - 1;
    let mut acc = vec![0u8; m];
    let mut t = y.to_vec();
    for _ in 0..m {
        for (a, b) in acc.iter_mut().zip(&t) {
            *a = (*a + b) % 3;
        }
        t = mulmod(&mulmod(&t, &t, modulus), &t, modulus);
    }
    assert!(acc[1..].iter().all(|&c| c == 0), "trace left the prime field");
    acc[0]
}

impl Oracle {
    pub fn new(modulus: &[u8]) -> Self {
        let m = modulus.len() - 1;
        let q = 3usize.pow(m as u32);
        let mono = (0..q)
            .map(|i| {
                let x = coeffs(i, m);
                [2u64, 4, 10].map(|e| pow(&x, e, modulus))
            })
            .collect();
        let basis: Vec<Vec<u8>> = (0..m)
            .map(|j| {
                let mut v = vec![0u8; m];
                v[j] = 1;
                v
            })
            .collect();
        let lin = (0..q)
            .map(|a| {
                let av = coeffs(a, m);
                basis.iter().map(|b| trace(&mulmod(&av, b, modulus), modulus)).collect()
            })
            .collect();
        Oracle { m, q, mono, lin }
    }

    /// Number of x with Tr(alpha x^2 + beta x^4 + gamma x^10) = 0, 1, 2.
    pub fn tally(&self, idx: [u32; 3]) -> [u64; 3] {
        let mut t = [0u64; 3];
        let ws = idx.map(|i| &self.lin[i as usize]);
        for mono in &self.mono {
            let mut s = 0u32;
            for k in 0..3 {
                for j in 0..self.m {
                    s += (ws[k][j] * mono[k][j]) as u32;
                }
            }
            t[(s % 3) as usize] += 1;
        }
        t
    }

    /// S as (a0, a1) with S = a0 + a1 zeta.
    pub fn sum(&self, idx: [u32; 3]) -> (i64, i64) {
        let [n0, n1, n2] = self.tally(idx).map(|v| v as i64);
        (n0 - n2, n1 - n2)
    }

    /// Weight of the codeword: x = 0 always has trace 0.
    pub fn weight(&self, idx: [u32; 3]) -> u64 {
        self.q as u64 - self.tally(idx)[0]
    }
}
