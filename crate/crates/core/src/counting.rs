//! Solution counts of the power-sum systems
//!
//! sum_i s_i x_i^e + c = 0,   e in {2, p + 1, p^2 + 1},
//!
//! by exhaustive search, by closed form, and as the union of the component
//! varieties listed in three published tables.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{check_budget, Error, Result};
use crate::expsum::exponents;
use crate::gf::{ExtElement, FieldContext, FieldElement};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[allow(non_camel_case_types)]
pub enum SystemId {
    SYS2_HOM,
    SYS3_AFF,
    SYS3_HOM,
    SYS4_AFF,
    SYS4_HOM,
    SYS5_HOM,
    SYS6_HOM,
    DUAL_W3_SAME,
    DUAL_W3_MIX,
    DUAL_W4_PAIR,
    DUAL_W4_ONEFLIP,
    DUAL_W4_TWOFLIP,
}

/// One equation per exponent: sum of `signs[i] * x_i^e`, plus `constant`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SystemSpec {
    pub signs: &'static [i8],
    pub constant: i8,
}

impl SystemSpec {
    pub fn variables(&self) -> usize {
        self.signs.len()
    }
}

impl SystemId {
    pub const ALL: [SystemId; 12] = [
        SystemId::SYS2_HOM,
        SystemId::SYS3_AFF,
        SystemId::SYS3_HOM,
        SystemId::SYS4_AFF,
        SystemId::SYS4_HOM,
        SystemId::SYS5_HOM,
        SystemId::SYS6_HOM,
        SystemId::DUAL_W3_SAME,
        SystemId::DUAL_W3_MIX,
        SystemId::DUAL_W4_PAIR,
        SystemId::DUAL_W4_ONEFLIP,
        SystemId::DUAL_W4_TWOFLIP,
    ];

    pub fn spec(self) -> SystemSpec {
        use SystemId::*;
        let (signs, constant): (&'static [i8], i8) = match self {
            SYS2_HOM => (&[1, 1], 0),
            SYS3_AFF | DUAL_W3_SAME => (&[1, 1], 1),
            SYS3_HOM => (&[1, 1, 1], 0),
            SYS4_AFF => (&[1, 1, 1], 1),
            SYS4_HOM => (&[1, 1, 1, 1], 0),
            SYS5_HOM => (&[1, 1, 1, 1, 1], 0),
            SYS6_HOM => (&[1, 1, 1, 1, 1, 1], 0),
            DUAL_W3_MIX => (&[1, -1], 1),
            DUAL_W4_PAIR => (&[1, 1, -1], 0),
            DUAL_W4_ONEFLIP => (&[1, 1, 1, -1], 0),
            DUAL_W4_TWOFLIP => (&[1, 1, -1, -1], 0),
        };
        SystemSpec { signs, constant }
    }

    pub fn name(self) -> &'static str {
        use SystemId::*;
        match self {
            SYS2_HOM => "SYS2_HOM",
            SYS3_AFF => "SYS3_AFF",
            SYS3_HOM => "SYS3_HOM",
            SYS4_AFF => "SYS4_AFF",
            SYS4_HOM => "SYS4_HOM",
            SYS5_HOM => "SYS5_HOM",
            SYS6_HOM => "SYS6_HOM",
            DUAL_W3_SAME => "DUAL_W3_SAME",
            DUAL_W3_MIX => "DUAL_W3_MIX",
            DUAL_W4_PAIR => "DUAL_W4_PAIR",
            DUAL_W4_ONEFLIP => "DUAL_W4_ONEFLIP",
            DUAL_W4_TWOFLIP => "DUAL_W4_TWOFLIP",
        }
    }
}

impl fmt::Display for SystemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SystemId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SystemId::ALL
            .into_iter()
            .find(|id| id.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Config(format!("unknown system id {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SolutionCount {
    pub system_id: SystemId,
    pub m: u32,
    #[serde(serialize_with = "crate::serde_decimal")]
    pub count: BigUint,
}

type Triple = [FieldElement; 3];

fn triple_add(a: &Triple, b: &Triple) -> Triple {
    [a[0].add(b[0]), a[1].add(b[1]), a[2].add(b[2])]
}

fn triple_key(t: &Triple) -> u128 {
    let mut k = 0u128;
    for x in t {
        let (o, w) = x.planes();
        k = (k << 32) | ((o as u128) << 16) | w as u128;
    }
    k
}

/// `[s x^2, s x^(p+1), s x^(p^2+1)]` for every element index and both signs.
struct SignedPowers {
    plus: Vec<Triple>,
    minus: Vec<Triple>,
}

impl SignedPowers {
    fn new(ctx: &FieldContext) -> Self {
        let e = exponents(ctx.p());
        let plus: Vec<Triple> = (0..ctx.q())
            .map(|i| {
                let x = ctx.element(i);
                e.map(|k| ctx.pow(x, k))
            })
            .collect();
        let minus = plus.iter().map(|t| t.map(FieldElement::neg)).collect();
        SignedPowers { plus, minus }
    }

    fn get(&self, sign: i8) -> &[Triple] {
        if sign < 0 {
            &self.minus
        } else {
            &self.plus
        }
    }
}

/// All partial sums over the given sign pattern, one per tuple.
fn partial_sums(powers: &SignedPowers, signs: &[i8]) -> Vec<Triple> {
    let mut sums = vec![[FieldElement::ZERO; 3]];
    for &s in signs {
        let vals = powers.get(s);
        sums = sums
            .iter()
            .flat_map(|acc| vals.iter().map(move |v| triple_add(acc, v)))
            .collect();
    }
    sums
}

fn nominal_work(ctx: &FieldContext, vars: usize) -> u128 {
    (ctx.q() as u128).saturating_pow(vars as u32)
}

/// Exact number of solutions in F_q^k.
///
/// The budget is charged for the full q^k search space. The count itself
/// pairs a histogram of the right half's power sums with every left-half
/// tuple, so the work actually done is about q^(k/2) + q^(k - k/2).
pub fn count_bruteforce(id: SystemId, ctx: &FieldContext, budget: u128) -> Result<SolutionCount> {
    let spec = id.spec();
    let k = spec.variables();
    check_budget(nominal_work(ctx, k), budget)?;
    let powers = SignedPowers::new(ctx);

    let right = k / 2;
    let (left_signs, right_signs) = spec.signs.split_at(k - right);
    let mut hist: HashMap<u128, u64> = HashMap::new();
    for s in partial_sums(&powers, right_signs) {
        *hist.entry(triple_key(&s)).or_insert(0) += 1;
    }

    let one = FieldElement::ONE.scale(spec.constant.rem_euclid(3) as u8);
    let c: Triple = [one; 3];
    let inner = partial_sums(&powers, &left_signs[1..]);
    let first = powers.get(left_signs[0]);
    let count: u64 = first
        .par_iter()
        .map(|v0| {
            let base = triple_add(v0, &c);
            inner
                .iter()
                .map(|s| {
                    let t = triple_add(&base, s).map(FieldElement::neg);
                    hist.get(&triple_key(&t)).copied().unwrap_or(0)
                })
                .sum::<u64>()
        })
        .sum();
    Ok(SolutionCount {
        system_id: id,
        m: ctx.m(),
        count: BigUint::from(count),
    })
}

/// Literal nested enumeration of every tuple, computing each power with
/// square-and-multiply. Slow; kept as the reference for [`count_bruteforce`].
pub fn count_nested(id: SystemId, ctx: &FieldContext, budget: u128) -> Result<BigUint> {
    let spec = id.spec();
    check_budget(nominal_work(ctx, spec.variables()), budget)?;
    let e = exponents(ctx.p());
    let c = FieldElement::ONE.scale(spec.constant.rem_euclid(3) as u8);
    let mut tuple = vec![FieldElement::ZERO; spec.variables()];
    let mut count = 0u64;
    nested(ctx, &e, spec.signs, c, 0, &mut tuple, &mut count);
    Ok(BigUint::from(count))
}

fn nested(
    ctx: &FieldContext,
    e: &[u64; 3],
    signs: &[i8],
    c: FieldElement,
    depth: usize,
    tuple: &mut Vec<FieldElement>,
    count: &mut u64,
) {
    if depth == tuple.len() {
        let ok = e.iter().all(|&k| {
            let mut acc = c;
            for (x, &s) in tuple.iter().zip(signs) {
                acc = acc.add(pow_schoolbook(ctx, *x, k).scale(s.rem_euclid(3) as u8));
            }
            acc.is_zero()
        });
        if ok {
            *count += 1;
        }
        return;
    }
    for x in ctx.elements() {
        tuple[depth] = x;
        nested(ctx, e, signs, c, depth + 1, tuple, count);
    }
}

fn pow_schoolbook(ctx: &FieldContext, mut a: FieldElement, mut e: u64) -> FieldElement {
    let mut r = FieldElement::ONE;
    while e > 0 {
        if e & 1 == 1 {
            r = ctx.mul_schoolbook(r, a);
        }
        a = ctx.mul_schoolbook(a, a);
        e >>= 1;
    }
    r
}

/// Closed-form count, where one is known.
pub fn closed_form_count(id: SystemId, p: u32, m: u32) -> Result<BigUint> {
    use SystemId::*;
    if p % 4 != 3 {
        return Err(Error::Hypothesis(format!("closed forms need p = 3 mod 4, got p = {p}")));
    }
    let needs_three = matches!(id, SYS4_AFF | SYS4_HOM | SYS5_HOM);
    if needs_three && p != 3 {
        return Err(Error::Hypothesis(format!("{id} closed form is stated for p = 3 only")));
    }
    let pb = BigInt::from(p);
    let q = pb.pow(m);
    let one = BigInt::one();
    let v: BigInt = match id {
        SYS2_HOM => one,
        SYS3_AFF => &pb + 1,
        SYS3_HOM => (&pb + 1) * (&q - 1) + 1,
        SYS4_AFF => 4 * (2 * &q - 3),
        SYS4_HOM => 8 * (&q - 1) * (&q - 1) + 1,
        SYS5_HOM => 5 * (&q - 1) * (8 * &q - 2 * &pb - 10) + 1,
        _ => return Err(Error::NoClosedForm(id.to_string())),
    };
    if v.is_negative() {
        return Err(Error::Inconsistency(format!("{id} closed form is negative at m = {m}")));
    }
    Ok(v.to_biguint().expect("nonnegative"))
}

// ---------------------------------------------------------------------------
// Component tables

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[allow(non_camel_case_types)]
pub enum TableId {
    TABLE_I,
    TABLE_II,
    TABLE_III,
}

impl TableId {
    pub const ALL: [TableId; 3] = [TableId::TABLE_I, TableId::TABLE_II, TableId::TABLE_III];

    /// The full system whose solution set the table decomposes.
    pub fn system(self) -> SystemId {
        match self {
            TableId::TABLE_I => SystemId::SYS5_HOM,
            TableId::TABLE_II => SystemId::DUAL_W4_ONEFLIP,
            TableId::TABLE_III => SystemId::DUAL_W4_TWOFLIP,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            TableId::TABLE_I => "TABLE_I",
            TableId::TABLE_II => "TABLE_II",
            TableId::TABLE_III => "TABLE_III",
        }
    }

    /// Variable names in order.
    pub fn variables(self) -> &'static [char] {
        match self {
            TableId::TABLE_I => &['x', 'y', 'z', 'w', 'u'],
            _ => &['x', 'y', 'z', 'w'],
        }
    }

    /// Rows exactly as laid out in print: groups of rows, one block per column.
    pub fn layout(self) -> &'static [&'static [&'static [&'static str]]] {
        match self {
            TableId::TABLE_I => TABLE_I,
            TableId::TABLE_II => TABLE_II,
            TableId::TABLE_III => TABLE_III,
        }
    }

    /// Blocks of polynomials, read column by column within each row group.
    pub fn blocks(self) -> Vec<Vec<&'static str>> {
        let mut out = Vec::new();
        for group in self.layout() {
            for col in 0..group[0].len() {
                out.push(group.iter().map(|row| row[col]).collect());
            }
        }
        out
    }
}

impl fmt::Display for TableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TableId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TableId::ALL
            .into_iter()
            .find(|t| t.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Config(format!("unknown table id {s:?}")))
    }
}

const TABLE_I: &[&[&[&str]]] = &[
    &[
        &["x^2", "x^2", "x^2", "x^2", "x^2", "x^2", "x^2", "x^2"],
        &["y-w-u", "y-w-u", "y-w+u", "y-w+u", "y+w-u", "y+w-u", "y+w+u", "y+w+u"],
        &["z-w+u", "z+w-u", "z-w-u", "z+w+u", "z-w-u", "z+w+u", "z-w+u", "z+w-u"],
    ],
    &[
        &["y^2", "y^2", "y^2", "y^2", "y^2", "y^2", "y^2", "y^2"],
        &["x-w-u", "x-w-u", "x-w+u", "x-w+u", "x+w-u", "x+w-u", "x+w+u", "x+w+u"],
        &["z-w+u", "z+w-u", "z-w-u", "z+w+u", "z-w-u", "z+w+u", "z-w+u", "z+w-u"],
    ],
    &[
        &["z^2", "z^2", "z^2", "z^2", "z^2", "z^2", "z^2", "z^2"],
        &["x-w-u", "x-w-u", "x-w+u", "x-w+u", "x+w-u", "x+w-u", "x+w+u", "x+w+u"],
        &["y-w+u", "y+w-u", "y-w-u", "y+w+u", "y-w-u", "y+w+u", "y-w+u", "y+w-u"],
    ],
    &[
        &["w^2", "w^2", "w^2", "w^2", "w^2", "w^2", "w^2", "w^2"],
        &["x-z-u", "x-z-u", "x-z+u", "x-z+u", "x+z-u", "x+z-u", "x+z+u", "x+z+u"],
        &["y-z+u", "y+z-u", "y-z-u", "y+z+u", "y-z-u", "y+z+u", "y-z+u", "y+z-u"],
    ],
    &[
        &["u^2", "u^2", "u^2", "u^2", "u^2", "u^2", "u^2", "u^2"],
        &["x-z-w", "x-z-w", "x-z+w", "x-z+w", "x+z-w", "x+z-w", "x+z+w", "x+z+w"],
        &["y-z+w", "y+z-w", "y-z-w", "y+z+w", "y-z-w", "y+z+w", "y-z+w", "y+z-w"],
    ],
];

const TABLE_II: &[&[&[&str]]] = &[
    &[
        &["y^4", "y^4", "z^4", "z^4", "z^4"],
        &["x^2+y^2", "x^2+y^2", "x^2+z^2", "x^2+z^2", "y^2+z^2"],
        &["z-w", "z+w", "y-w", "y+w", "x-w"],
    ],
    &[
        &["z^4", "w^4", "w^4", "w^4", "w^4"],
        &["y^2+z^2", "y^2-yz+z^2+w^2", "y^2-yz+z^2+w^2", "y^2+yz+z^2+w^2", "y^2+yz+z^2+w^2"],
        &["x+w", "x-y+z", "x+y-z", "x-y-z", "x+y+z"],
    ],
];

const TABLE_III: &[&[&[&str]]] = &[&[
    &["x-z", "x-z", "x+z", "x+z", "x-w", "x-w", "x+w", "x+w"],
    &["y-w", "y+w", "y-w", "y+w", "y-z", "y+z", "y-z", "y+z"],
]];

/// A polynomial with small integer coefficients in up to five variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    /// (coefficient, exponent per variable)
    pub terms: Vec<(i64, [u32; 5])>,
}

impl Polynomial {
    /// Parses sums of monomials such as `y^2-yz+z^2+w^2` or `2x-w`.
    pub fn parse(text: &str, vars: &[char]) -> Result<Self> {
        let err = |msg: &str| Error::Parse(format!("polynomial {text:?}: {msg}"));
        let mut terms = Vec::new();
        let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
        if chars.is_empty() {
            return Err(err("empty"));
        }
        let mut i = 0;
        while i < chars.len() {
            let mut sign = 1i64;
            if chars[i] == '+' || chars[i] == '-' {
                if chars[i] == '-' {
                    sign = -1;
                }
                i += 1;
            } else if i > 0 {
                return Err(err("expected + or -"));
            }
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let coeff: i64 = if i > start {
                chars[start..i].iter().collect::<String>().parse().map_err(|_| err("bad coefficient"))?
            } else {
                1
            };
            let mut exps = [0u32; 5];
            let mut any = i > start;
            while i < chars.len() && chars[i].is_ascii_alphabetic() {
                let v = vars
                    .iter()
                    .position(|&c| c == chars[i])
                    .ok_or_else(|| err(&format!("unknown variable {}", chars[i])))?;
                i += 1;
                let mut e = 1u32;
                if i < chars.len() && chars[i] == '^' {
                    i += 1;
                    let s = i;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    e = chars[s..i].iter().collect::<String>().parse().map_err(|_| err("bad exponent"))?;
                }
                exps[v] += e;
                any = true;
            }
            if !any {
                return Err(err("empty term"));
            }
            terms.push((sign * coeff, exps));
        }
        Ok(Polynomial { terms })
    }

    pub fn eval(&self, ctx: &FieldContext, point: &[FieldElement]) -> FieldElement {
        let mut acc = FieldElement::ZERO;
        for (c, exps) in &self.terms {
            let mut t = FieldElement::ONE.scale(c.rem_euclid(3) as u8);
            for (x, &e) in point.iter().zip(exps) {
                if e > 0 {
                    t = ctx.mul(t, ctx.pow(*x, e as u64));
                }
            }
            acc = acc.add(t);
        }
        acc
    }

    fn is_linear(&self) -> bool {
        self.terms.iter().all(|(_, e)| e.iter().sum::<u32>() == 1)
    }

    /// `Some(v)` if the polynomial is a single power of variable `v`.
    fn monomial_variable(&self) -> Option<usize> {
        match self.terms.as_slice() {
            [(c, e)] if c.rem_euclid(3) != 0 && e.iter().filter(|&&k| k > 0).count() == 1 => {
                e.iter().position(|&k| k > 0)
            }
            _ => None,
        }
    }
}

/// How a block's solutions are generated: variables forced to zero, variables
/// solved from a linear polynomial, and the free variables enumerated.
#[derive(Clone, Debug)]
struct BlockPlan {
    polys: Vec<Polynomial>,
    zero: Vec<usize>,
    /// (variable, linear polynomial it is solved from, its coefficient mod 3)
    solved: Vec<(usize, usize, u8)>,
    free: Vec<usize>,
}

fn plan_block(block: &[&str], vars: &[char]) -> Result<BlockPlan> {
    let polys = block
        .iter()
        .map(|s| Polynomial::parse(s, vars))
        .collect::<Result<Vec<_>>>()?;
    let n = vars.len();
    let mut fixed = vec![false; n];
    let mut zero = Vec::new();
    for p in &polys {
        if let Some(v) = p.monomial_variable() {
            if !fixed[v] {
                fixed[v] = true;
                zero.push(v);
            }
        }
    }
    // each linear polynomial determines its first unfixed variable; a
    // variable may only be solved after every variable it depends on
    let mut solved = Vec::new();
    for (pi, p) in polys.iter().enumerate() {
        if !p.is_linear() || p.monomial_variable().is_some() {
            continue;
        }
        let pivot = p.terms.iter().find_map(|(c, e)| {
            let v = e.iter().position(|&k| k == 1)?;
            (!fixed[v] && c.rem_euclid(3) != 0).then_some((v, c.rem_euclid(3) as u8))
        });
        if let Some((v, c)) = pivot {
            fixed[v] = true;
            solved.push((v, pi, c));
        }
    }
    let free = (0..n).filter(|&v| !fixed[v]).collect();
    Ok(BlockPlan { polys, zero, solved, free })
}

fn tuple_key(ctx: &FieldContext, t: &[FieldElement]) -> u128 {
    t.iter().fold(0u128, |k, &x| (k << 20) | ctx.index(x) as u128)
}

/// Number of distinct points on the union of a table's components.
pub fn variety_count(table: TableId, ctx: &FieldContext, budget: u128) -> Result<SolutionCount> {
    let vars = table.variables();
    let plans = table
        .blocks()
        .iter()
        .map(|b| plan_block(b, vars))
        .collect::<Result<Vec<_>>>()?;
    let work: u128 = plans.iter().map(|p| nominal_work(ctx, p.free.len())).sum();
    check_budget(work, budget)?;
    let sets: Vec<HashSet<u128>> = plans
        .par_iter()
        .map(|plan| block_points(ctx, plan, vars.len()))
        .collect();
    let mut all: HashSet<u128> = HashSet::new();
    for s in sets {
        all.extend(s);
    }
    Ok(SolutionCount {
        system_id: table.system(),
        m: ctx.m(),
        count: BigUint::from(all.len()),
    })
}

/// Points of one block, as tuple keys.
fn block_points(ctx: &FieldContext, plan: &BlockPlan, n: usize) -> HashSet<u128> {
    let mut out = HashSet::new();
    let q = ctx.q() as u64;
    let total = q.pow(plan.free.len() as u32);
    let mut point = vec![FieldElement::ZERO; n];
    for code in 0..total {
        let mut c = code;
        for &v in &plan.free {
            point[v] = ctx.element((c % q) as u32);
            c /= q;
        }
        for &v in &plan.zero {
            point[v] = FieldElement::ZERO;
        }
        for &(v, pi, coeff) in &plan.solved {
            // coeff * x_v + rest = 0  =>  x_v = -rest / coeff, and 1/coeff = coeff
            point[v] = FieldElement::ZERO;
            let rest = plan.polys[pi].eval(ctx, &point);
            point[v] = rest.neg().scale(coeff);
        }
        if plan.polys.iter().all(|p| p.eval(ctx, &point).is_zero()) {
            out.insert(tuple_key(ctx, &point));
        }
    }
    out
}

/// Points of every block of a table, as explicit tuples (for membership checks).
pub fn variety_points(table: TableId, ctx: &FieldContext, budget: u128) -> Result<Vec<Vec<FieldElement>>> {
    let vars = table.variables();
    let plans = table
        .blocks()
        .iter()
        .map(|b| plan_block(b, vars))
        .collect::<Result<Vec<_>>>()?;
    let work: u128 = plans.iter().map(|p| nominal_work(ctx, p.free.len())).sum();
    check_budget(work, budget)?;
    let mut keys: Vec<u128> = plans
        .iter()
        .flat_map(|plan| block_points(ctx, plan, vars.len()))
        .collect::<HashSet<_>>()
        .into_iter()
        .collect();
    keys.sort_unstable();
    let n = vars.len();
    Ok(keys
        .into_iter()
        .map(|k| {
            (0..n)
                .map(|i| ctx.element(((k >> (20 * (n - 1 - i))) & 0xFFFFF) as u32))
                .collect()
        })
        .collect())
}

/// True when `point` solves every equation of `id`.
pub fn satisfies(id: SystemId, ctx: &FieldContext, point: &[FieldElement]) -> bool {
    let spec = id.spec();
    let c = FieldElement::ONE.scale(spec.constant.rem_euclid(3) as u8);
    exponents(ctx.p()).iter().all(|&k| {
        point
            .iter()
            .zip(spec.signs)
            .fold(c, |acc, (x, &s)| acc.add(ctx.pow(*x, k).scale(s.rem_euclid(3) as u8)))
            .is_zero()
    })
}

/// Tables I-III as plain text, one block per line.
pub fn dump_tables() -> String {
    let mut out = String::new();
    for t in TableId::ALL {
        let blocks = t.blocks();
        out.push_str(&format!("{} ({} blocks, system {})\n", t, blocks.len(), t.system()));
        for (i, b) in blocks.iter().enumerate() {
            out.push_str(&format!("  {:>2}: {}\n", i + 1, b.join(", ")));
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Circle parametrization

/// Every solution of x^2 + y^2 = a in GF(q^2), from
/// x = s (theta + 1/theta) / 2, y = s t (theta - 1/theta) / 2
/// with s^2 = a, t^2 = -1, as theta runs over GF(q^2)^*.
pub fn circle_solutions(ctx: &FieldContext, a: FieldElement) -> Result<Vec<(ExtElement, ExtElement)>> {
    if a.is_zero() {
        return Err(Error::Config("circle parameter a must be nonzero".into()));
    }
    let ext = ctx.quadratic_extension();
    let ae = ext.embed(a);
    let s = ext
        .find_sqrt(ae)
        .ok_or_else(|| Error::Inconsistency("no square root of a in GF(q^2)".into()))?;
    let t = ext
        .find_sqrt(ext.embed(FieldElement::ONE.neg()))
        .ok_or_else(|| Error::Inconsistency("no square root of -1 in GF(q^2)".into()))?;
    let half = FieldElement::ONE.scale(2); // 2 * 2 = 1 in characteristic 3
    let st = ext.mul(s, t);
    let mut out = Vec::with_capacity(ext.size() as usize - 1);
    for theta in ext.elements().filter(|e| !e.is_zero()) {
        let inv = ext.inv(theta).expect("nonzero");
        let x = ext.scale(ext.mul(s, theta.add(inv)), half);
        let y = ext.scale(ext.mul(st, theta.sub(inv)), half);
        out.push((x, y));
    }
    Ok(out)
}

/// Checks that every pair lies on the circle and that no pair repeats.
pub fn check_circle(ctx: &FieldContext, a: FieldElement, sols: &[(ExtElement, ExtElement)]) -> bool {
    let ext = ctx.quadratic_extension();
    let ae = ext.embed(a);
    let on_circle = sols
        .iter()
        .all(|&(x, y)| ext.square(x).add(ext.square(y)) == ae);
    let distinct = sols.iter().collect::<HashSet<_>>().len() == sols.len();
    on_circle && distinct
}
