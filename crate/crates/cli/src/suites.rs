//! Verification suites: each compares an exact computation with an
//! independent oracle and records the outcome as an [`IdentityCheck`].

use std::collections::BTreeMap;
use std::fmt::Display;

use num_bigint::{BigInt, BigUint};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use terncode::code::{
    class_histogram, classes_from_sums, code_dimension, codeword_with, cyclotomic_coset,
    enumerate_distribution, moment_from_values, predicted_coset_size, sum_histogram,
    weight_direct, weight_via_expsum_with, EnumerateOptions, Method, TraceTable,
    WeightDistribution,
};
use terncode::counting::{
    check_circle, circle_solutions, closed_form_count, count_bruteforce, variety_count, SystemId,
    TableId,
};
use terncode::expsum::{classify, direct_sum_with, EisensteinInteger, ExpSumClass, MonomialTable, SumKind};
use terncode::gf::{FieldContext, FieldElement};
use terncode::identities::{
    constants, dual_low_weights_closed, frequency_equations, m6_from_frequencies,
    macwilliams_transform, odd_sign_balance, power_moments, solve_frequencies, theorem_table,
    FrequencyCounts, IdentityCheck,
};
use terncode::quadform::{classify_via_legendre, FormTable};
use terncode::{Error, Result};

pub const CLASSIFY_SAMPLES: usize = 100_000;
pub const RANK_SAMPLES: usize = 1_000_000;
pub const WEIGHT_SAMPLES: usize = 1_000;
pub const CIRCLE_SAMPLES: usize = 5;
const LINEARITY_SAMPLES: usize = 100;
/// Largest q^3 handled exhaustively by the sampled suites.
const EXHAUSTIVE_TRIPLES: u64 = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Moments,
    Expsum,
    Variety,
    Codewords,
    Dual,
    All,
}

impl Suite {
    pub const EACH: [Suite; 5] = [Suite::Moments, Suite::Expsum, Suite::Variety, Suite::Codewords, Suite::Dual];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Moments => "moments",
            Suite::Expsum => "expsum",
            Suite::Variety => "variety",
            Suite::Codewords => "codewords",
            Suite::Dual => "dual",
            Suite::All => "all",
        }
    }

    fn needs_even_m(self) -> bool {
        matches!(self, Suite::Expsum | Suite::Dual)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Skipped {
    pub check: String,
    pub reason: String,
}

#[derive(Debug, Default, Serialize)]
pub struct SuiteReport {
    pub checks: Vec<IdentityCheck>,
    pub skipped: Vec<Skipped>,
}

impl SuiteReport {
    pub fn first_failure(&self) -> Option<&IdentityCheck> {
        self.checks.iter().find(|c| !c.matches)
    }

    fn push(&mut self, c: IdentityCheck) {
        self.checks.push(c);
    }

    fn skip(&mut self, check: impl Into<String>, reason: impl Into<String>) {
        self.skipped.push(Skipped { check: check.into(), reason: reason.into() });
    }

    /// `Ok(None)` and a skip entry when the step is refused by the budget.
    fn budgeted<T>(&mut self, check: &str, r: Result<T>) -> Result<Option<T>> {
        match r {
            Ok(v) => Ok(Some(v)),
            Err(e @ Error::Budget { .. }) => {
                self.skip(check, e.to_string());
                Ok(None)
            }
            Err(e) => Err(e),
        }
    }
}

pub struct SuiteConfig<'a> {
    pub ctx: &'a FieldContext,
    pub seed: u64,
    pub opts: EnumerateOptions<'a>,
}

impl SuiteConfig<'_> {
    fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut r = ChaCha8Rng::seed_from_u64(self.seed);
        r.set_stream(stream);
        r
    }

    fn random_triple(&self, rng: &mut ChaCha8Rng) -> [u32; 3] {
        let q = self.ctx.q();
        [rng.gen_range(0..q), rng.gen_range(0..q), rng.gen_range(0..q)]
    }

    fn exhaustive(&self) -> bool {
        (self.ctx.q() as u64).pow(3) <= EXHAUSTIVE_TRIPLES
    }
}

fn check(name: impl Into<String>, lhs: impl Display, rhs: impl Display) -> IdentityCheck {
    let (lhs, rhs) = (lhs.to_string(), rhs.to_string());
    IdentityCheck { identity: name.into(), matches: lhs == rhs, lhs, rhs, note: None }
}

pub fn run(suite: Suite, cfg: &SuiteConfig<'_>) -> Result<SuiteReport> {
    let mut report = SuiteReport::default();
    let m = cfg.ctx.m();
    let list: Vec<Suite> = if suite == Suite::All { Suite::EACH.to_vec() } else { vec![suite] };
    for s in list {
        if s.needs_even_m() && m % 2 != 0 {
            if suite == Suite::All {
                report.skip(s.name(), format!("suite requires even m, got {m}"));
                continue;
            }
            return Err(Error::Hypothesis(format!("suite {} requires even m, got {m}", s.name())));
        }
        match s {
            Suite::Moments => moments(cfg, &mut report)?,
            Suite::Expsum => expsum(cfg, &mut report)?,
            Suite::Variety => variety(cfg, &mut report)?,
            Suite::Codewords => codewords(cfg, &mut report)?,
            Suite::Dual => dual(cfg, &mut report)?,
            Suite::All => unreachable!(),
        }
    }
    Ok(report)
}

/// sum S^k over all triples divided by p^(3m), for k = 1..=5.
pub fn moment_factor(k: u32, p: u32, m: u32) -> BigInt {
    let p = BigInt::from(p);
    let q = p.pow(m);
    let one = BigInt::from(1);
    match k {
        1 | 2 => one,
        3 => (&p + 1) * (&q - 1) + 1,
        4 => 8 * (&q - 1) * (&q - 1) + 1,
        _ => 5 * (&q - 1) * (8 * &q - 2 * &p - 10) + 1,
    }
}

fn moments(cfg: &SuiteConfig<'_>, report: &mut SuiteReport) -> Result<()> {
    let ctx = cfg.ctx;
    let (p, m) = (ctx.p(), ctx.m());
    let p3m = BigInt::from(ctx.q()).pow(3);
    let (values, hist): (Vec<(EisensteinInteger, u64)>, Option<BTreeMap<ExpSumClass, u64>>) = if m <= 4 {
        let Some(v) = report.budgeted("moments", sum_histogram(ctx, &cfg.opts))? else { return Ok(()) };
        let h = if m % 2 == 0 { Some(classes_from_sums(&v, m)?) } else { None };
        (v, h)
    } else if m % 2 == 0 {
        let Some(h) = report.budgeted("moments", class_histogram(ctx, &cfg.opts))? else { return Ok(()) };
        (h.iter().map(|(c, &n)| (c.value(m), n)).collect(), Some(h))
    } else {
        report.skip("moments", format!("direct sums limited to m <= 4, got odd m = {m}"));
        return Ok(());
    };
    let top = if hist.is_some() { 5 } else { 2 };
    for k in 1..=top {
        let rhs = EisensteinInteger::rational(moment_factor(k, p, m) * &p3m);
        report.push(check(format!("moment-{k}"), moment_from_values(&values, k), rhs));
    }
    let Some(hist) = hist else {
        report.skip("moment-3..5", "closed forms are stated for even m");
        return Ok(());
    };
    let freq = FrequencyCounts::from_classes(&hist)?;
    let ab = if m >= 6 {
        let d = dual_low_weights_closed(p, m)?;
        let c = constants(p, m, &d.weights[2], &d.weights[4])?;
        Some((c.a, c.b))
    } else {
        None
    };
    report.checks.extend(frequency_equations(&freq, p, m, ab.as_ref().map(|(a, b)| (a, b))));
    let m6 = m6_from_frequencies(&freq, p, m);
    report.push(check("moment-6", moment_from_values(&values, 6), EisensteinInteger::rational(&m6 * &p3m)));
    if let Some(sys6) = report.budgeted("sys6-count", count_bruteforce(SystemId::SYS6_HOM, ctx, cfg.opts.budget))? {
        report.push(check("sys6-count-vs-frequencies", sys6.count, m6));
    }
    Ok(())
}

struct Differential {
    agree: u64,
    total: u64,
    first: Option<String>,
}

impl Differential {
    fn merge(mut self, o: Differential) -> Differential {
        self.agree += o.agree;
        self.total += o.total;
        if self.first.is_none() {
            self.first = o.first;
        }
        self
    }

    fn into_check(self, name: &str) -> IdentityCheck {
        let mut c = check(name, self.agree, self.total);
        if let Some(f) = self.first {
            c = c.with_note(f);
        }
        c
    }
}

fn classify_differential(
    cfg: &SuiteConfig<'_>,
    forms: &FormTable,
    table: &MonomialTable,
    idx: [u32; 3],
) -> Result<Option<String>> {
    let ctx = cfg.ctx;
    let m = ctx.m();
    let [a, b, c] = idx.map(|i| ctx.element(i));
    let zero = a.is_zero() && b.is_zero() && c.is_zero();
    let via_form = classify_via_legendre(&forms.matrix(idx), m, zero)?;
    let via_sum = classify(&direct_sum_with(ctx, table, a, b, c), m, zero)?;
    Ok((via_form != via_sum).then(|| format!("triple {idx:?}: legendre {via_form:?}, direct {via_sum:?}")))
}

fn triples(cfg: &SuiteConfig<'_>, stream: u64, samples: usize) -> Vec<[u32; 3]> {
    if cfg.exhaustive() {
        let q = cfg.ctx.q();
        (0..q)
            .flat_map(|a| (0..q).flat_map(move |b| (0..q).map(move |c| [a, b, c])))
            .collect()
    } else {
        let mut rng = cfg.rng(stream);
        (0..samples).map(|_| cfg.random_triple(&mut rng)).collect()
    }
}

fn differential<F>(list: &[[u32; 3]], f: F) -> Result<Differential>
where
    F: Fn([u32; 3]) -> Result<Option<String>> + Sync,
{
    list.par_chunks(4096)
        .map(|chunk| {
            let mut d = Differential { agree: 0, total: 0, first: None };
            for &t in chunk {
                d.total += 1;
                match f(t)? {
                    None => d.agree += 1,
                    Some(msg) => {
                        if d.first.is_none() {
                            d.first = Some(msg);
                        }
                    }
                }
            }
            Ok(d)
        })
        .collect::<Result<Vec<_>>>()
        .map(|v| {
            v.into_iter()
                .fold(Differential { agree: 0, total: 0, first: None }, Differential::merge)
        })
}

fn expsum(cfg: &SuiteConfig<'_>, report: &mut SuiteReport) -> Result<()> {
    let ctx = cfg.ctx;
    let m = ctx.m();
    let forms = FormTable::new(ctx);
    let table = MonomialTable::new(ctx);
    let list = triples(cfg, 1, CLASSIFY_SAMPLES);
    let d = differential(&list, |t| classify_differential(cfg, &forms, &table, t))?;
    let name = if cfg.exhaustive() { "classify-legendre-vs-direct-all" } else { "classify-legendre-vs-direct-sampled" };
    report.push(d.into_check(name));

    let low = m.saturating_sub(4);
    if cfg.exhaustive() {
        let hist = class_histogram(ctx, &cfg.opts)?;
        let direct = terncode::code::class_histogram_direct(ctx, &cfg.opts)?;
        report.push(check(
            "class-histogram-rank-vs-direct",
            serde_json::to_string(&hist.iter().collect::<Vec<_>>()).expect("serializable"),
            serde_json::to_string(&direct.iter().collect::<Vec<_>>()).expect("serializable"),
        ));
        for (j, plus, minus) in odd_sign_balance(&hist) {
            report.push(check(format!("odd-sign-balance-j{j}"), plus, minus));
        }
        let outside: u64 = hist
            .iter()
            .filter(|(c, _)| c.kind != SumKind::ZeroTriple && !(low..=m).contains(&c.rank))
            .map(|(_, n)| n)
            .sum();
        report.push(check("rank-bounds-all", outside, 0));
    } else {
        report.skip("odd-sign-balance", format!("exhaustive check limited to q^3 <= {EXHAUSTIVE_TRIPLES}"));
        let mut rng = cfg.rng(2);
        let samples: Vec<[u32; 3]> = (0..RANK_SAMPLES)
            .map(|_| loop {
                let t = cfg.random_triple(&mut rng);
                if t != [0, 0, 0] {
                    break t;
                }
            })
            .collect();
        let outside = samples
            .par_iter()
            .filter(|&&t| !(low..=m).contains(&forms.rank_and_delta(t).0))
            .count();
        report.push(check("rank-bounds-sampled", outside, 0));
    }
    Ok(())
}

fn variety(cfg: &SuiteConfig<'_>, report: &mut SuiteReport) -> Result<()> {
    let ctx = cfg.ctx;
    let budget = cfg.opts.budget;
    for t in TableId::ALL {
        let name = format!("{t}-vs-{}", t.system());
        let Some(vc) = report.budgeted(&name, variety_count(t, ctx, budget))? else { continue };
        let Some(bf) = report.budgeted(&name, count_bruteforce(t.system(), ctx, budget))? else { continue };
        report.push(check(name, vc.count, bf.count));
    }
    for id in SystemId::ALL {
        let name = format!("{id}-closed-form");
        let cf = match closed_form_count(id, ctx.p(), ctx.m()) {
            Ok(v) => v,
            Err(e @ (Error::NoClosedForm(_) | Error::Hypothesis(_))) => {
                report.skip(name, e.to_string());
                continue;
            }
            Err(e) => return Err(e),
        };
        let Some(bf) = report.budgeted(&name, count_bruteforce(id, ctx, budget))? else { continue };
        report.push(check(name, bf.count, cf));
    }
    let q2 = (ctx.q() as u64).pow(2);
    let mut rng = cfg.rng(3);
    let picks = rand::seq::index::sample(&mut rng, ctx.q() as usize - 1, CIRCLE_SAMPLES.min(ctx.q() as usize - 1));
    for i in picks.into_vec() {
        let a = ctx.element(i as u32 + 1);
        let sols = circle_solutions(ctx, a)?;
        let verified = if check_circle(ctx, a, &sols) { sols.len().to_string() } else { "invalid".into() };
        report.push(check(format!("circle-a{}", ctx.index(a)), verified, q2 - 1));
    }
    Ok(())
}

fn codewords(cfg: &SuiteConfig<'_>, report: &mut SuiteReport) -> Result<()> {
    let ctx = cfg.ctx;
    let (p, m) = (ctx.p(), ctx.m());
    let traces = TraceTable::new(ctx);
    let monomials = MonomialTable::new(ctx);
    let el = |t: [u32; 3]| t.map(|i| ctx.element(i));
    let exhaustive = ctx.q() <= 9;
    let list = if exhaustive { triples(cfg, 4, 0) } else {
        let mut rng = cfg.rng(4);
        (0..WEIGHT_SAMPLES).map(|_| cfg.random_triple(&mut rng)).collect()
    };
    let d = differential(&list, |t| {
        let [a, b, c] = el(t);
        let w1 = weight_direct(&codeword_with(ctx, &traces, a, b, c));
        let w2 = weight_via_expsum_with(ctx, &monomials, a, b, c)?;
        Ok((w1 != w2).then(|| format!("triple {t:?}: direct {w1}, via sums {w2}")))
    })?;
    report.push(d.into_check(if exhaustive { "weight-direct-vs-expsum-all" } else { "weight-direct-vs-expsum-sampled" }));

    let mut rng = cfg.rng(5);
    let shift = [2u64, p as u64 + 1, (p as u64).pow(2) + 1].map(|s| ctx.exp(s));
    let (mut linear, mut cyclic) = (0, 0);
    for _ in 0..LINEARITY_SAMPLES {
        let (x, y) = (el(cfg.random_triple(&mut rng)), el(cfg.random_triple(&mut rng)));
        let cx = codeword_with(ctx, &traces, x[0], x[1], x[2]);
        let cy = codeword_with(ctx, &traces, y[0], y[1], y[2]);
        let sum: [FieldElement; 3] = std::array::from_fn(|i| x[i].add(y[i]));
        linear += (cx.add(&cy) == codeword_with(ctx, &traces, sum[0], sum[1], sum[2])) as usize;
        let moved: [FieldElement; 3] = std::array::from_fn(|i| ctx.mul(x[i], shift[i]));
        cyclic += (cx.rotate_left() == codeword_with(ctx, &traces, moved[0], moved[1], moved[2])) as usize;
    }
    report.push(check("codeword-linearity", linear, LINEARITY_SAMPLES));
    report.push(check("codeword-cyclic-shift", cyclic, LINEARITY_SAMPLES));

    for i in 0..=m / 2 {
        let s = 1 + (p as u64).pow(i);
        let predicted = predicted_coset_size(m, i).expect("i <= m/2");
        report.push(check(format!("coset-size-{s}"), cyclotomic_coset(s, p as u64, m).size, predicted));
    }
    let k = code_dimension(p as u64, m);
    if m % 2 == 0 && m >= 6 {
        report.push(check("code-dimension", k, 3 * m));
    }
    if m % 2 == 0 && cfg.exhaustive() {
        let rank = enumerate_distribution(ctx, Method::Rank, &cfg.opts)?;
        if let Some(direct) = report.budgeted("distribution-direct", enumerate_distribution(ctx, Method::Direct, &cfg.opts))? {
            report.push(check("distribution-direct-vs-rank", direct.to_json(), rank.to_json()));
        }
        // each codeword arises from A_0 triples
        let q3 = BigUint::from(ctx.q()).pow(3);
        report.push(check("kernel-times-code-size", rank.get(0) * BigUint::from(p).pow(k as u32), q3));
    }
    Ok(())
}

/// Codeword weight distribution (each codeword once).
pub fn code_distribution(ctx: &FieldContext, opts: &EnumerateOptions<'_>) -> Result<WeightDistribution> {
    let m = ctx.m();
    if m >= 6 {
        return theorem_table(ctx.p(), m);
    }
    let triples = enumerate_distribution(ctx, Method::Rank, opts)?;
    let kernel = triples.get(0);
    let mut out = WeightDistribution::new(triples.l);
    for (&w, n) in &triples.counts {
        if (n % &kernel) != BigUint::default() {
            return Err(Error::Inconsistency(format!("A_{w} = {n} not divisible by A_0 = {kernel}")));
        }
        out.add(w, n / &kernel);
    }
    Ok(out)
}

fn dual(cfg: &SuiteConfig<'_>, report: &mut SuiteReport) -> Result<()> {
    let ctx = cfg.ctx;
    let (p, m) = (ctx.p(), ctx.m());
    let a = code_distribution(ctx, &cfg.opts)?;
    let k = code_dimension(p as u64, m) as u32;
    let dual = macwilliams_transform(&a, k, p)?;
    let low: Vec<BigUint> = (0..5).map(|j| dual.get(j)).collect();

    let closed = dual_low_weights_closed(p, m)?;
    for (j, (got, want)) in low.iter().zip(&closed.weights).enumerate() {
        let mut c = check(format!("dual-A{j}-closed-form"), got, want);
        if !closed.within_hypothesis {
            c = c.with_note("closed form evaluated outside m >= 6");
        }
        report.push(c);
    }
    if let Some(found) = report.budgeted("dual-search", terncode::code::dual_weight_search(ctx, 4, cfg.opts.budget))? {
        for (j, (got, want)) in low.iter().zip(&found).enumerate() {
            report.push(check(format!("dual-A{j}-search"), got, want));
        }
    }
    report.checks.extend(power_moments(&a, k, p, &low));
    let back = macwilliams_transform(&dual, a.l as u32 - k, p)?;
    report.push(check("macwilliams-roundtrip", back.to_json(), a.to_json()));

    if m >= 6 {
        let c = constants(p, m, &low[2], &low[4])?;
        match solve_frequencies(&c, p, m) {
            Ok(f) => {
                report.push(check("frequency-solver-agreement", "agree", "agree"));
                report.push(check("frequency-total", f.total() + 1u32, BigUint::from(ctx.q()).pow(3)));
                report.checks.extend(frequency_equations(&f, p, m, Some((&c.a, &c.b))));
            }
            Err(Error::IdentitySystem { message, closed_form, linear_solve }) => {
                report.push(check("frequency-solver-agreement", closed_form, linear_solve).with_note(message));
            }
            Err(e) => return Err(e),
        }
    }
    Ok(())
}
