//! The cyclic code itself: cyclotomic cosets, codewords
//! c_i = Tr(alpha pi^(2i) + beta pi^((p+1)i) + gamma pi^((p^2+1)i)),
//! Hamming weights, and full enumeration of the weight distribution.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{check_budget, Error, Result};
use crate::expsum::{
    classify, exponents, r_sum_with, EisensteinInteger, ExpSumClass,
    MonomialTable, SumKind,
};
use crate::gf::{FieldContext, FieldElement};
use crate::quadform::FormTable;

/// Default cap on elementary evaluations for exhaustive jobs.
pub const DEFAULT_BUDGET: u128 = 10_000_000_000;

/// Triples per checkpoint of a long enumeration.
pub const CHECKPOINT_INTERVAL: u64 = 1 << 24;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CycloCoset {
    pub s: u64,
    pub elements: Vec<u64>,
    pub size: usize,
}

/// The orbit of `s` under multiplication by `p` modulo `p^m - 1`.
pub fn cyclotomic_coset(s: u64, p: u64, m: u32) -> CycloCoset {
    let n = p.pow(m) - 1;
    let s = s % n;
    let mut elements = vec![s];
    let mut cur = s * p % n;
    while cur != s {
        elements.push(cur);
        cur = cur * p % n;
    }
    let size = elements.len();
    elements.sort_unstable();
    CycloCoset { s, elements, size }
}

/// Cosets of the three exponents 2, p + 1, p^2 + 1.
pub fn code_cosets(p: u64, m: u32) -> [CycloCoset; 3] {
    exponents(p as u32).map(|e| cyclotomic_coset(e, p, m))
}

/// Size of the coset of 1 + p^i predicted for `0 <= i <= floor(m/2)`:
/// m, except m/2 when m is even and i = m/2.
pub fn predicted_coset_size(m: u32, i: u32) -> Option<usize> {
    if i > m / 2 {
        return None;
    }
    Some(if m % 2 == 0 && i == m / 2 { m as usize / 2 } else { m as usize })
}

/// Dimension of the code: total size of the distinct cosets of its exponents.
pub fn code_dimension(p: u64, m: u32) -> usize {
    let mut seen: Vec<Vec<u64>> = Vec::new();
    for c in code_cosets(p, m) {
        if !seen.contains(&c.elements) {
            seen.push(c.elements);
        }
    }
    seen.iter().map(Vec::len).sum()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Codeword {
    pub symbols: Vec<u8>,
}

impl Codeword {
    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// (c_1, c_2, ..., c_{l-1}, c_0).
    pub fn rotate_left(&self) -> Codeword {
        let mut symbols = self.symbols.clone();
        symbols.rotate_left(1);
        Codeword { symbols }
    }

    pub fn add(&self, o: &Codeword) -> Codeword {
        Codeword {
            symbols: self
                .symbols
                .iter()
                .zip(&o.symbols)
                .map(|(&a, &b)| (a + b) % 3)
                .collect(),
        }
    }
}

/// Traces of the powers of pi, used to evaluate codewords coordinate by
/// coordinate without field multiplication.
#[derive(Clone, Debug)]
pub struct TraceTable {
    l: usize,
    /// `tr[k] = Tr(pi^k)`, stored twice over so that `k < 2l` needs no reduction.
    tr: Vec<u8>,
    exps: [usize; 3],
}

impl TraceTable {
    pub fn new(ctx: &FieldContext) -> Self {
        let l = ctx.order() as usize;
        let mut tr: Vec<u8> = (0..l as u64).map(|k| ctx.trace(ctx.exp(k))).collect();
        tr.extend_from_within(..);
        let exps = exponents(ctx.p()).map(|e| (e % l as u64) as usize);
        TraceTable { l, tr, exps }
    }

    fn fill(&self, ctx: &FieldContext, coeffs: [FieldElement; 3], out: &mut [u8]) {
        out.iter_mut().for_each(|v| *v = 0);
        for (slot, c) in coeffs.iter().enumerate() {
            let Some(lc) = ctx.log(*c) else { continue };
            let step = self.exps[slot];
            let mut k = lc as usize;
            for v in out.iter_mut() {
                *v += self.tr[k];
                k += step;
                if k >= self.l {
                    k -= self.l;
                }
            }
        }
        out.iter_mut().for_each(|v| *v %= 3);
    }

    /// Weight of the codeword with the given coefficients.
    pub fn weight(&self, ctx: &FieldContext, coeffs: [FieldElement; 3], scratch: &mut [u8]) -> u64 {
        self.fill(ctx, coeffs, scratch);
        scratch.iter().filter(|&&v| v != 0).count() as u64
    }
}

/// The codeword c(alpha, beta, gamma) of length q - 1.
pub fn codeword(
    ctx: &FieldContext,
    alpha: FieldElement,
    beta: FieldElement,
    gamma: FieldElement,
) -> Codeword {
    codeword_with(ctx, &TraceTable::new(ctx), alpha, beta, gamma)
}

pub fn codeword_with(
    ctx: &FieldContext,
    table: &TraceTable,
    alpha: FieldElement,
    beta: FieldElement,
    gamma: FieldElement,
) -> Codeword {
    let mut symbols = vec![0u8; table.l];
    table.fill(ctx, [alpha, beta, gamma], &mut symbols);
    Codeword { symbols }
}

/// Number of nonzero symbols.
pub fn weight_direct(cw: &Codeword) -> u64 {
    cw.symbols.iter().filter(|&&c| c != 0).count() as u64
}

/// Weight from R: p^(m-1) (p - 1) - R / p.
pub fn weight_from_r(ctx: &FieldContext, r: &BigInt) -> Result<u64> {
    let p = BigInt::from(ctx.p());
    if !(r % &p).is_zero() {
        return Err(Error::Inconsistency(format!("R = {r} is not divisible by p")));
    }
    let base = BigInt::from(ctx.p().pow(ctx.m() - 1) * (ctx.p() - 1));
    (base - r / p)
        .to_u64()
        .ok_or_else(|| Error::Inconsistency(format!("negative weight from R = {r}")))
}

/// Weight of c(alpha, beta, gamma) computed from exponential sums.
pub fn weight_via_expsum(
    ctx: &FieldContext,
    alpha: FieldElement,
    beta: FieldElement,
    gamma: FieldElement,
) -> Result<u64> {
    weight_via_expsum_with(ctx, &MonomialTable::new(ctx), alpha, beta, gamma)
}

pub fn weight_via_expsum_with(
    ctx: &FieldContext,
    table: &MonomialTable,
    alpha: FieldElement,
    beta: FieldElement,
    gamma: FieldElement,
) -> Result<u64> {
    weight_from_r(ctx, &r_sum_with(ctx, table, alpha, beta, gamma)?)
}

/// Weight of any codeword whose sum lies in `class`.
pub fn weight_from_class(ctx: &FieldContext, class: &ExpSumClass) -> Result<u64> {
    weight_from_r(ctx, &class.r_value(ctx.m()))
}

// ---------------------------------------------------------------------------

/// Exact map weight -> number of codewords.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightDistribution {
    pub l: u64,
    pub counts: BTreeMap<u64, BigUint>,
}

#[derive(Serialize, Deserialize)]
struct DistributionJson {
    l: u64,
    counts: serde_json::Map<String, serde_json::Value>,
}

impl WeightDistribution {
    pub fn new(l: u64) -> Self {
        WeightDistribution {
            l,
            counts: BTreeMap::new(),
        }
    }

    pub fn from_counts<I, C>(l: u64, counts: I) -> Self
    where
        I: IntoIterator<Item = (u64, C)>,
        C: Into<BigUint>,
    {
        let mut d = Self::new(l);
        for (w, c) in counts {
            d.add(w, c.into());
        }
        d
    }

    pub fn add(&mut self, weight: u64, count: BigUint) {
        if count.is_zero() {
            return;
        }
        *self.counts.entry(weight).or_default() += count;
    }

    pub fn get(&self, weight: u64) -> BigUint {
        self.counts.get(&weight).cloned().unwrap_or_default()
    }

    pub fn total(&self) -> BigUint {
        self.counts.values().sum()
    }

    /// Weights other than zero, ascending.
    pub fn nonzero_weights(&self) -> Vec<u64> {
        self.counts.keys().copied().filter(|&w| w != 0).collect()
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let mut counts = serde_json::Map::new();
        for (w, c) in &self.counts {
            counts.insert(w.to_string(), serde_json::Value::String(c.to_string()));
        }
        serde_json::json!({ "l": self.l, "counts": counts })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: DistributionJson =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let mut d = Self::new(raw.l);
        for (k, v) in raw.counts {
            let w = k
                .parse::<u64>()
                .map_err(|e| Error::Parse(format!("weight {k}: {e}")))?;
            let c = v
                .as_str()
                .and_then(|s| BigUint::from_str(s).ok())
                .ok_or_else(|| Error::Parse(format!("count for weight {w} must be a decimal string")))?;
            d.add(w, c);
        }
        Ok(d)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("weight,count\n");
        for (w, c) in &self.counts {
            out.push_str(&format!("{w},{c}\n"));
        }
        out
    }

    /// Nonzero weights `center + d` whose mirror `center - d` is absent.
    pub fn asymmetric_weights(&self, center: u64) -> Vec<u64> {
        self.nonzero_weights()
            .into_iter()
            .filter(|&w| {
                let mirror = (2 * center).checked_sub(w);
                mirror.map_or(true, |m| !self.counts.contains_key(&m))
            })
            .collect()
    }
}

// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// Generate every codeword and count its nonzero symbols.
    Direct,
    /// Classify every triple's quadratic form by rank and discriminant.
    Rank,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Direct => "direct",
            Method::Rank => "rank",
        })
    }
}

/// Progress callback: (triples done, triples total).
pub type Progress<'a> = &'a (dyn Fn(u64, u64) + Sync);

#[derive(Clone, Copy)]
pub struct EnumerateOptions<'a> {
    pub budget: u128,
    /// Directory for resumable partial results; `None` disables checkpoints.
    pub checkpoint_dir: Option<&'a Path>,
    pub progress: Option<Progress<'a>>,
}

impl Default for EnumerateOptions<'_> {
    fn default() -> Self {
        EnumerateOptions {
            budget: DEFAULT_BUDGET,
            checkpoint_dir: None,
            progress: None,
        }
    }
}

/// File name of the checkpoint for a given job.
pub fn checkpoint_file(dir: &Path, m: u32, job: &str) -> PathBuf {
    dir.join(format!("terncode-m{m}-{job}.checkpoint.json"))
}

#[derive(Serialize, Deserialize)]
struct Checkpoint<K> {
    m: u32,
    job: String,
    next_alpha: u32,
    entries: Vec<(K, u64)>,
}

/// Runs `per_alpha` for every alpha index, merging the partial histograms.
/// Work is split into blocks of about [`CHECKPOINT_INTERVAL`] triples; after
/// each block the running histogram is written to the checkpoint (if any) so
/// an interrupted run resumes where it stopped.
fn run_over_alpha<K, F>(
    ctx: &FieldContext,
    job: &str,
    opts: &EnumerateOptions<'_>,
    per_alpha: F,
) -> Result<BTreeMap<K, u64>>
where
    K: Ord + Clone + Send + Serialize + for<'de> Deserialize<'de>,
    F: Fn(u32) -> BTreeMap<K, u64> + Sync,
{
    let q = ctx.q();
    let per_alpha_triples = q as u64 * q as u64;
    let total = per_alpha_triples * q as u64;
    let path = opts.checkpoint_dir.map(|d| checkpoint_file(d, ctx.m(), job));

    let mut acc: BTreeMap<K, u64> = BTreeMap::new();
    let mut next = 0u32;
    if let Some(path) = path.as_ref().filter(|p| p.exists()) {
        let text = std::fs::read_to_string(path)?;
        let ck: Checkpoint<K> = serde_json::from_str(&text)
            .map_err(|e| Error::Parse(format!("checkpoint {}: {e}", path.display())))?;
        if ck.m != ctx.m() || ck.job != job {
            return Err(Error::Config(format!(
                "checkpoint {} belongs to another job",
                path.display()
            )));
        }
        next = ck.next_alpha;
        acc.extend(ck.entries);
    }

    let block = CHECKPOINT_INTERVAL.div_ceil(per_alpha_triples).max(1) as u32;
    while next < q {
        let end = (next + block).min(q);
        let part = (next..end)
            .into_par_iter()
            .map(&per_alpha)
            .reduce(BTreeMap::new, merge_histograms);
        acc = merge_histograms(acc, part);
        next = end;
        if let Some(path) = &path {
            let ck = Checkpoint {
                m: ctx.m(),
                job: job.to_string(),
                next_alpha: next,
                entries: acc.iter().map(|(k, v)| (k.clone(), *v)).collect(),
            };
            let tmp = path.with_extension("tmp");
            std::fs::write(&tmp, serde_json::to_vec(&ck).expect("serializable"))?;
            std::fs::rename(&tmp, path)?;
        }
        if let Some(progress) = opts.progress {
            progress(next as u64 * per_alpha_triples, total);
        }
    }
    Ok(acc)
}

fn merge_histograms<K: Ord>(mut a: BTreeMap<K, u64>, b: BTreeMap<K, u64>) -> BTreeMap<K, u64> {
    if a.len() < b.len() {
        return merge_histograms(b, a);
    }
    for (k, v) in b {
        *a.entry(k).or_insert(0) += v;
    }
    a
}

/// Number of triples in each exponential-sum class, over all q^3 triples,
/// with every class obtained from the rank and discriminant of the form.
pub fn class_histogram(
    ctx: &FieldContext,
    opts: &EnumerateOptions<'_>,
) -> Result<BTreeMap<ExpSumClass, u64>> {
    let m = ctx.m();
    if m % 2 != 0 {
        return Err(Error::Hypothesis(format!("class enumeration requires even m, got {m}")));
    }
    let q = ctx.q() as u128;
    check_budget(q * q * q, opts.budget)?;
    let forms = FormTable::new(ctx);
    let n = forms.dim();
    let raw = run_over_alpha(ctx, "rank", opts, |a| {
        // counts[rank][delta == -1]
        let mut counts = [[0u64; 2]; 13];
        for b in 0..ctx.q() {
            let base = forms.packed_pair(a, b);
            for c in 0..ctx.q() {
                let mut rows = forms.packed_with_gamma(&base, c);
                let (r, d) = crate::quadform::rank_and_delta_packed(&mut rows[..n], n);
                counts[r as usize][(d < 0) as usize] += 1;
            }
        }
        let mut out = BTreeMap::new();
        for (r, pair) in counts.iter().enumerate() {
            for (neg, &cnt) in pair.iter().enumerate() {
                if cnt > 0 {
                    out.insert((r as u32, neg as u8), cnt);
                }
            }
        }
        out
    })?;
    let mut hist = BTreeMap::new();
    for ((r, neg), cnt) in raw {
        let class = ExpSumClass::from_rank(m, r, if neg == 1 { -1 } else { 1 });
        *hist.entry(class).or_insert(0) += cnt;
    }
    // the zero triple was counted as a rank-0 form
    let rank0 = ExpSumClass::from_rank(m, 0, 1);
    let e = hist.get_mut(&rank0).expect("zero triple present");
    *e -= 1;
    if *e == 0 {
        hist.remove(&rank0);
    }
    hist.insert(ExpSumClass::zero_triple(m), 1);
    Ok(hist)
}

/// Class histogram obtained by summing every S(alpha, beta, gamma) directly
/// and classifying the result.
pub fn class_histogram_direct(
    ctx: &FieldContext,
    opts: &EnumerateOptions<'_>,
) -> Result<BTreeMap<ExpSumClass, u64>> {
    classes_from_sums(&sum_histogram(ctx, opts)?, ctx.m())
}

/// Classifies a histogram of sums taken over all q^3 triples.
pub fn classes_from_sums(
    values: &[(EisensteinInteger, u64)],
    m: u32,
) -> Result<BTreeMap<ExpSumClass, u64>> {
    let mut out = BTreeMap::new();
    for (s, count) in values {
        let class = classify(s, m, false)?;
        *out.entry(class).or_insert(0) += count;
    }
    // S = q for a nonzero triple (possible for m <= 4) is even rank 0; the
    // zero triple itself is always exactly one of the S = q triples.
    let rank0 = ExpSumClass::from_rank(m, 0, 1);
    let cnt = out
        .remove(&rank0)
        .ok_or_else(|| Error::Inconsistency("no sum equals q".into()))?;
    out.insert(ExpSumClass::zero_triple(m), 1);
    if cnt > 1 {
        out.insert(rank0, cnt - 1);
    }
    Ok(out)
}

/// Histogram of the exact values S(alpha, beta, gamma) over all triples,
/// each computed by a q-term summation.
pub fn sum_histogram(
    ctx: &FieldContext,
    opts: &EnumerateOptions<'_>,
) -> Result<Vec<(EisensteinInteger, u64)>> {
    let q = ctx.q() as u128;
    check_budget(q * q * q * q, opts.budget)?;
    let table = MonomialTable::new(ctx);
    let raw = run_over_alpha(ctx, "sums", opts, |a| {
        let alpha = ctx.element(a);
        let mut local: HashMap<[u64; 3], u64> = HashMap::new();
        for beta in ctx.elements() {
            for gamma in ctx.elements() {
                let t = crate::expsum::trace_tally(ctx, &table, alpha, beta, gamma);
                *local.entry(t).or_insert(0) += 1;
            }
        }
        local
            .into_iter()
            .map(|(t, c)| {
                let s = EisensteinInteger::from_tally(t);
                let (a0, a1) = s.to_i64_pair().expect("sum fits i64");
                ((a0, a1), c)
            })
            .fold(BTreeMap::new(), |mut acc, (k, c)| {
                *acc.entry(k).or_insert(0) += c;
                acc
            })
    })?;
    Ok(raw
        .into_iter()
        .map(|((a0, a1), c)| (EisensteinInteger::new(a0, a1), c))
        .collect())
}

/// Weight distribution over all q^3 coefficient triples.
pub fn enumerate_distribution(
    ctx: &FieldContext,
    method: Method,
    opts: &EnumerateOptions<'_>,
) -> Result<WeightDistribution> {
    let l = ctx.order() as u64;
    match method {
        Method::Rank => {
            let hist = class_histogram(ctx, opts)?;
            distribution_from_classes(ctx, &hist)
        }
        Method::Direct => {
            let q = ctx.q() as u128;
            check_budget(q * q * q * l as u128, opts.budget)?;
            let table = TraceTable::new(ctx);
            let hist = run_over_alpha(ctx, "direct", opts, |a| {
                let alpha = ctx.element(a);
                let mut scratch = vec![0u8; l as usize];
                let mut counts = vec![0u64; l as usize + 1];
                for beta in ctx.elements() {
                    for gamma in ctx.elements() {
                        let w = table.weight(ctx, [alpha, beta, gamma], &mut scratch);
                        counts[w as usize] += 1;
                    }
                }
                counts
                    .into_iter()
                    .enumerate()
                    .filter(|&(_, c)| c > 0)
                    .map(|(w, c)| (w as u64, c))
                    .collect()
            })?;
            Ok(WeightDistribution::from_counts(l, hist))
        }
    }
}

/// Weight distribution implied by a class histogram.
pub fn distribution_from_classes(
    ctx: &FieldContext,
    hist: &BTreeMap<ExpSumClass, u64>,
) -> Result<WeightDistribution> {
    let mut dist = WeightDistribution::new(ctx.order() as u64);
    for (class, &count) in hist {
        let w = match class.kind {
            SumKind::ZeroTriple => 0,
            _ => weight_from_class(ctx, class)?,
        };
        dist.add(w, BigUint::from(count));
    }
    Ok(dist)
}

/// sum over all triples of S(alpha, beta, gamma)^k, exactly.
///
/// For m <= 4 every sum is computed by direct summation; for larger m the
/// sums come from the rank classification of each triple's form.
pub fn moment_bruteforce(
    ctx: &FieldContext,
    k: u32,
    opts: &EnumerateOptions<'_>,
) -> Result<EisensteinInteger> {
    if !(1..=6).contains(&k) {
        return Err(Error::Config(format!("moment order {k} outside 1..=6")));
    }
    let values: Vec<(EisensteinInteger, u64)> = if ctx.m() <= 4 {
        sum_histogram(ctx, opts)?
    } else {
        class_histogram(ctx, opts)?
            .into_iter()
            .map(|(c, n)| (c.value(ctx.m()), n))
            .collect()
    };
    Ok(moment_from_values(&values, k))
}

/// sum of count * S^k over a value histogram.
pub fn moment_from_values(values: &[(EisensteinInteger, u64)], k: u32) -> EisensteinInteger {
    let mut acc = EisensteinInteger::zero();
    for (s, n) in values {
        acc += &s.pow(k).scale(&BigInt::from(*n));
    }
    acc
}

/// Dual codewords of weights `0..=max_weight`, by searching all supports and
/// symbol patterns for vectors orthogonal to the code.
pub fn dual_weight_search(ctx: &FieldContext, max_weight: usize, budget: u128) -> Result<Vec<BigUint>> {
    let l = ctx.order() as usize;
    let mut needed: u128 = 0;
    for w in 1..=max_weight.min(l) {
        needed += binomial(l as u128, w as u128) << (w - 1);
    }
    check_budget(needed, budget)?;
    let e = exponents(ctx.p());
    let columns: Vec<[FieldElement; 3]> = (0..l as u64)
        .map(|i| e.map(|s| ctx.exp(s * i)))
        .collect();
    let mut out = vec![BigUint::zero(); max_weight + 1];
    out[0] = BigUint::from(1u32);
    for w in 1..=max_weight.min(l) {
        // first nonzero symbol fixed to 1; the factor 2 restores the rest
        let count: u64 = (0..l)
            .into_par_iter()
            .map(|first| {
                let mut n = 0u64;
                let start = columns[first];
                search_supports(&columns, first + 1, w - 1, start, &mut n);
                n
            })
            .sum();
        out[w] = BigUint::from(count) * 2u32;
    }
    Ok(out)
}

fn search_supports(
    columns: &[[FieldElement; 3]],
    from: usize,
    remaining: usize,
    acc: [FieldElement; 3],
    count: &mut u64,
) {
    if remaining == 0 {
        if acc.iter().all(|x| x.is_zero()) {
            *count += 1;
        }
        return;
    }
    for i in from..=columns.len() - remaining {
        for sym in [1u8, 2] {
            let c = columns[i];
            let next = [
                acc[0].add(c[0].scale(sym)),
                acc[1].add(c[1].scale(sym)),
                acc[2].add(c[2].scale(sym)),
            ];
            search_supports(columns, i + 1, remaining - 1, next, count);
        }
    }
}

pub(crate) fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::field_context;
    use rand::{Rng, SeedableRng};

    #[test]
    fn coset_examples() {
        assert_eq!(cyclotomic_coset(28, 3, 6).size, 3);
        assert_eq!(cyclotomic_coset(4, 3, 6).size, 6);
        let z = cyclotomic_coset(0, 3, 6);
        assert_eq!(z.elements, vec![0]);
        assert_eq!(z.size, 1);
        for s in [1u64, 5, 28, 100] {
            let c = cyclotomic_coset(s, 3, 4);
            for &e in &c.elements {
                assert!(c.elements.contains(&(e * 3 % 80)));
            }
        }
    }

    #[test]
    fn dimension_is_3m_from_m6() {
        assert_eq!(code_dimension(3, 6), 18);
        assert_eq!(code_dimension(3, 8), 24);
        // small fields collapse: x^10 = x^2 on F_9, and D_10 has size 2 at m = 4
        assert_eq!(code_dimension(3, 2), 3);
        assert_eq!(code_dimension(3, 4), 10);
    }

    #[test]
    fn zero_codeword_and_all_ones() {
        let f = field_context(3, 4).unwrap();
        let z = FieldElement::ZERO;
        let cw = codeword(&f, z, z, z);
        assert_eq!(cw.len(), 80);
        assert_eq!(weight_direct(&cw), 0);
        assert_eq!(weight_direct(&Codeword { symbols: vec![1; 80] }), 80);
        assert_eq!(weight_via_expsum(&f, z, z, z).unwrap(), 0);
    }

    #[test]
    fn codeword_matches_definition() {
        let f = field_context(3, 2).unwrap();
        let e = exponents(3);
        for (a, b, c) in [(1u32, 2, 3), (4, 0, 8), (0, 7, 5)] {
            let (a, b, c) = (f.element(a), f.element(b), f.element(c));
            let cw = codeword(&f, a, b, c);
            for i in 0..8u64 {
                let v = f
                    .mul(a, f.exp(e[0] * i))
                    .add(f.mul(b, f.exp(e[1] * i)))
                    .add(f.mul(c, f.exp(e[2] * i)));
                assert_eq!(cw.symbols[i as usize], f.trace(v));
            }
        }
    }

    #[test]
    fn codewords_are_linear_and_cyclic() {
        let f = field_context(3, 4).unwrap();
        let e = exponents(3);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        for _ in 0..50 {
            let x = [0; 3].map(|_| f.element(rng.gen_range(0..f.q())));
            let y = [0; 3].map(|_| f.element(rng.gen_range(0..f.q())));
            let cx = codeword(&f, x[0], x[1], x[2]);
            let cy = codeword(&f, y[0], y[1], y[2]);
            let sum = codeword(&f, x[0].add(y[0]), x[1].add(y[1]), x[2].add(y[2]));
            assert_eq!(cx.add(&cy), sum);
            let shifted = codeword(
                &f,
                f.mul(x[0], f.exp(e[0])),
                f.mul(x[1], f.exp(e[1])),
                f.mul(x[2], f.exp(e[2])),
            );
            assert_eq!(cx.rotate_left(), shifted);
        }
    }

    #[test]
    fn weight_from_r_rejects_non_multiple() {
        let f = field_context(3, 2).unwrap();
        assert!(weight_from_r(&f, &BigInt::from(4)).is_err());
        assert_eq!(weight_from_r(&f, &BigInt::from(18)).unwrap(), 0);
    }

    #[test]
    fn distribution_serialization() {
        let d = WeightDistribution::from_counts(8, [(0u64, 1u32), (6, 4), (3, 10)]);
        assert_eq!(d.to_csv(), "weight,count\n0,1\n3,10\n6,4\n");
        let back = WeightDistribution::from_json(&d.to_json()).unwrap();
        assert_eq!(back, d);
        assert!(d.to_json().contains("\"6\": \"4\""));
        assert!(WeightDistribution::from_json(r#"{"l":3,"counts":{"1":5}}"#).is_err());
        assert_eq!(d.asymmetric_weights(6), vec![3]);
        assert_eq!(d.asymmetric_weights(4), vec![3, 6]);
    }

    #[test]
    fn budget_refusals() {
        let f = field_context(3, 6).unwrap();
        let opts = EnumerateOptions::default();
        assert!(matches!(
            enumerate_distribution(&f, Method::Direct, &opts),
            Err(Error::Budget { .. })
        ));
        let tight = EnumerateOptions { budget: 1000, ..Default::default() };
        assert!(matches!(
            enumerate_distribution(&f, Method::Rank, &tight),
            Err(Error::Budget { .. })
        ));
        assert!(matches!(dual_weight_search(&f, 4, 1000), Err(Error::Budget { .. })));
    }

    #[test]
    fn checkpoint_resumes() {
        let f = field_context(3, 2).unwrap();
        let dir = std::env::temp_dir().join(format!("terncode-ck-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let opts = EnumerateOptions {
            checkpoint_dir: Some(&dir),
            ..Default::default()
        };
        let first = enumerate_distribution(&f, Method::Rank, &opts).unwrap();
        assert!(checkpoint_file(&dir, 2, "rank").exists());
        // a finished checkpoint is reused without recomputation
        let again = enumerate_distribution(&f, Method::Rank, &opts).unwrap();
        assert_eq!(first, again);
        std::fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(80, 4), 1_581_580);
        assert_eq!(binomial(3, 5), 0);
    }
}
