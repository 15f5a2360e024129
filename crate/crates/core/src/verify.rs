//! The property suite behind `symeuclid verify`: exhaustive sweeps over all
//! `n` up to a bound, plus seeded random sequences for the continuant
//! identities.
//!
//! Sweeps run in increasing `n`, so the first recorded failure of a property
//! is also its smallest counterexample.

use std::collections::BTreeSet;

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::continuants::{
    back_recurrence_holds, cf_eval, continuant, euler_identity_holds, front_recurrence_holds, prefix_difference_holds,
    split_holds, ContinuantTable, QuotientSequence,
};
use crate::euclid::{euclid_trace, is_sqrt_minus_one, sqrt_minus_one_all, symmetric_trace, EuclidTrace, SweepLimit};
use crate::identities::{enumerate_identities, explicit_remainders, nest_chain, Family};
use crate::oracle::{brute_two_squares, cf_eval_fold, det_continuant};
use crate::two_squares::{brillhart, TwoSquares};
use crate::Result;

/// Outcome of one property.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub name: String,
    pub checked: u64,
    /// First counterexample, if any.
    pub failure: Option<String>,
}

impl PropertyReport {
    fn new(name: &str) -> Self {
        Self {
            name: name.to_string(),
            checked: 0,
            failure: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(describe());
        }
    }

    fn record_result(&mut self, outcome: Result<bool>, describe: impl FnOnce() -> String) {
        match outcome {
            Ok(ok) => self.record(ok, describe),
            Err(e) => self.record(false, || format!("{}: {e}", describe())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyConfig {
    pub max_n: u128,
    /// The all-pairs palindrome sweep is quadratic in `n`, so it stops at
    /// the smaller of this and `max_n`.
    pub perron_max_n: u128,
    pub seed: u64,
    pub cases: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            max_n: 10_000,
            perron_max_n: 3_000,
            seed: 0,
            cases: 1_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub max_n: u128,
    pub perron_max_n: u128,
    pub seed: u64,
    pub cases: usize,
    pub properties: Vec<PropertyReport>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.properties.iter().all(PropertyReport::passed)
    }
}

/// Runs every property. Fails only if `max_n` exceeds the sweep limit.
pub fn run(config: VerifyConfig, limit: SweepLimit) -> Result<VerifyReport> {
    limit.check(config.max_n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut properties = Vec::new();
    properties.extend(fuzz_continuants(&mut rng, config.cases));
    properties.extend(fuzz_euler(&mut rng, config.cases));
    properties.extend(fuzz_cf_eval(&mut rng, config.cases));
    let perron_max_n = config.perron_max_n.min(config.max_n);
    properties.extend(perron_sweep(perron_max_n));
    properties.extend(symmetric_sweep(config.max_n, limit));
    Ok(VerifyReport {
        max_n: config.max_n,
        perron_max_n,
        seed: config.seed,
        cases: config.cases,
        properties,
    })
}

fn random_sequence(rng: &mut impl Rng, max_len: usize, max_term: u128) -> QuotientSequence {
    let len = rng.gen_range(0..=max_len);
    QuotientSequence::new((0..len).map(|_| rng.gen_range(1..=max_term)).collect()).expect("terms are positive")
}

/// Recurrence against cofactor expansion, over every `1 <= i <= j <= t` of
/// random sequences (length <= 10, terms <= 9).
pub fn fuzz_continuants(rng: &mut impl Rng, cases: usize) -> Vec<PropertyReport> {
    let mut agree = PropertyReport::new("continuant = determinant");
    let mut table = PropertyReport::new("continuant table = continuant");
    for _ in 0..cases {
        let seq = random_sequence(rng, 10, 9);
        let t = seq.len();
        let mut ok = true;
        for i in 1..=t {
            for j in i..=t {
                ok &= matches!(
                    (continuant(&seq, i as i64, j as i64), det_continuant(&seq, i, j)),
                    (Ok(c), Ok(d)) if i128::try_from(c) == Ok(d)
                );
            }
        }
        agree.record(ok, || format!("sequence {seq}"));

        let tt = t as i64;
        let outcome = ContinuantTable::new(&seq).and_then(|tab| {
            let mut ok = true;
            for j in -1..=tt {
                ok &= tab.first_row(j) == Some(continuant(&seq, 1, j)?);
            }
            for i in 1..=tt + 2 {
                ok &= tab.to_last(i) == Some(continuant(&seq, i, tt)?);
            }
            for i in 1..=tt + 1 {
                ok &= tab.to_penultimate(i) == Some(continuant(&seq, i, tt - 1)?);
            }
            Ok(ok)
        });
        table.record_result(outcome, || format!("sequence {seq}"));
    }
    vec![agree, table]
}

/// Euler's identity at a random valid `(i, l, m, s)` and the four special
/// cases at the indices that instance supplies (length <= 12, terms <= 9).
pub fn fuzz_euler(rng: &mut impl Rng, cases: usize) -> Vec<PropertyReport> {
    let mut euler = PropertyReport::new("Euler identity");
    let mut prefix = PropertyReport::new("prefix difference (l, s)");
    let mut split = PropertyReport::new("split at m (i, m, s)");
    let mut front = PropertyReport::new("front recurrence (i, s)");
    let mut back = PropertyReport::new("back recurrence (i, s)");
    for _ in 0..cases {
        let seq = random_sequence(rng, 12, 9);
        let t = seq.len() as i64;
        let s = rng.gen_range(-1..=t);
        let m = rng.gen_range(-1..=s);
        let l = rng.gen_range(1..=m + 2);
        let i = rng.gen_range(1..=l);
        let at = || format!("sequence {seq}, (i, l, m, s) = ({i}, {l}, {m}, {s})");
        euler.record_result(euler_identity_holds(&seq, i, l, m, s), at);
        if s >= 0 && l <= s + 1 {
            prefix.record_result(prefix_difference_holds(&seq, l, s), at);
        }
        if i <= m + 1 {
            split.record_result(split_holds(&seq, i, m, s), at);
        }
        if i <= s {
            front.record_result(front_recurrence_holds(&seq, i, s), at);
            back.record_result(back_recurrence_holds(&seq, i, s), at);
        }
    }
    vec![euler, prefix, split, front, back]
}

/// Continuant evaluation against the rational fold, numerator reversal
/// invariance, and lowest terms (length <= 20, terms <= 9).
pub fn fuzz_cf_eval(rng: &mut impl Rng, cases: usize) -> Vec<PropertyReport> {
    let mut fold = PropertyReport::new("cf_eval = rational fold");
    let mut reversal = PropertyReport::new("numerator reversal invariance");
    let mut reduced = PropertyReport::new("cf_eval is reduced");
    for _ in 0..cases {
        let seq = random_sequence(rng, 20, 9);
        let at = || format!("sequence {seq}");
        match cf_eval(&seq) {
            Ok(value) => {
                fold.record(value == cf_eval_fold(&seq), at);
                reduced.record(value.numerator().gcd(&value.denominator()) == 1, at);
                reversal.record_result(
                    cf_eval(&seq.reverse()).map(|r| r.numerator() == value.numerator()),
                    at,
                );
            }
            Err(e) => fold.record(false, || format!("{}: {e}", at())),
        }
    }
    vec![fold, reversal, reduced]
}

/// Every trace satisfies `r_k = q_k r_{k+1} + r_{k+2}` and ends `..., gcd, 0`.
pub fn division_identity_holds(trace: &EuclidTrace) -> bool {
    let r = trace.remainders();
    let q = trace.quotients();
    r.len() == q.len() + 2
        && q.iter().enumerate().all(|(k, &qk)| {
            qk.checked_mul(r[k + 1])
                .and_then(|p| p.checked_add(r[k + 2]))
                .is_some_and(|v| v == r[k])
        })
        && r[r.len() - 1] == 0
        && r[r.len() - 2] == trace.n().gcd(&trace.a())
}

/// For every coprime `2 <= n <= max_n`, `1 <= a < n`: a palindromic trace
/// exists exactly when `a^2 = -1 (mod n)`, the plain and split forms are
/// never both palindromic, and every trace satisfies the division identity.
pub fn perron_sweep(max_n: u128) -> Vec<PropertyReport> {
    let mut perron = PropertyReport::new("palindromic iff a^2 = -1 (mod n)");
    let mut exclusive = PropertyReport::new("plain and split forms not both palindromic");
    let mut division = PropertyReport::new("division identity");
    for n in 2..=max_n {
        for a in 1..n {
            if n.gcd(&a) != 1 {
                continue;
            }
            let at = || format!("(n, a) = ({n}, {a})");
            let plain = match euclid_trace(n, a) {
                Ok(t) => t,
                Err(e) => {
                    division.record(false, || format!("{}: {e}", at()));
                    continue;
                }
            };
            division.record(division_identity_holds(&plain), at);
            let split = plain.apply_convention();
            if let Ok(split) = &split {
                division.record(division_identity_holds(split), at);
            }
            let plain_pal = plain.quotient_sequence().is_even_palindrome();
            let split_pal = split.is_ok_and(|t| t.quotient_sequence().is_even_palindrome());
            exclusive.record(!(plain_pal && split_pal), at);
            let symmetric = symmetric_trace(n, a);
            if let Ok(t) = &symmetric {
                division.record(division_identity_holds(t), at);
            }
            perron.record(symmetric.is_ok() == is_sqrt_minus_one(n, a), at);
        }
    }
    vec![perron, exclusive, division]
}

/// Everything that needs a palindromic trace, over every square root `a` of
/// -1 modulo every `2 <= n <= max_n`.
pub fn symmetric_sweep(max_n: u128, limit: SweepLimit) -> Vec<PropertyReport> {
    let mut roots_closed = PropertyReport::new("roots closed under a -> n - a");
    let mut two_squares = PropertyReport::new("brillhart gives a primitive representation");
    let mut middle = PropertyReport::new("brillhart = (r_{s+1}, r_{s+2})");
    let mut pair = PropertyReport::new("a and n - a give the same representation");
    let mut oracle = PropertyReport::new("representations = brute-force enumeration");
    let mut lemma = PropertyReport::new("trace ends with c(1,s), ..., c(1,-1)");
    let mut closed_form = PropertyReport::new("closed-form remainders");
    let mut forms = PropertyReport::new("quadratic-form identities");
    let mut vanishing = PropertyReport::new("minus forms vanish at i = s");
    let mut chain = PropertyReport::new("nest chain = palindromic tails");
    let mut first_step = PropertyReport::new("a^2 + 1 = n * [q_2..q_2] numerator");

    for n in 2..=max_n {
        let roots = match sqrt_minus_one_all(n, limit) {
            Ok(r) => r,
            Err(e) => {
                roots_closed.record(false, || format!("n = {n}: {e}"));
                continue;
            }
        };
        let set: BTreeSet<u128> = roots.iter().copied().collect();
        roots_closed.record(roots.iter().all(|&a| set.contains(&(n - a))), || format!("n = {n}"));

        let mut found = BTreeSet::new();
        for &a in &roots {
            let at = || format!("(n, a) = ({n}, {a})");
            let trace = match symmetric_trace(n, a) {
                Ok(t) => t,
                Err(e) => {
                    two_squares.record(false, || format!("{}: {e}", at()));
                    continue;
                }
            };
            let s = trace.half_length().expect("symmetric");
            let half = trace.half_quotients().expect("symmetric");

            match brillhart(n, a) {
                Ok(rep) => {
                    let primitive = rep.value() == Ok(n)
                        && rep.x.gcd(&rep.y) == 1
                        && rep.y >= 1
                        && (rep.x > rep.y || n == 2);
                    two_squares.record(primitive, at);
                    middle.record(
                        (Some(rep.x), Some(rep.y)) == (trace.remainder(s + 1), trace.remainder(s + 2)),
                        at,
                    );
                    pair.record_result(brillhart(n, n - a).map(|other| other == rep), at);
                    found.insert(rep);
                }
                Err(e) => two_squares.record(false, || format!("{}: {e}", at())),
            }

            let lemma_ok = ContinuantTable::new(&half).map(|table| {
                let tail = &trace.remainders()[trace.remainders().len() - (s + 2)..];
                tail.iter()
                    .zip((-1..=s as i64).rev())
                    .all(|(&r, j)| table.first_row(j) == Some(r))
            });
            lemma.record_result(lemma_ok, at);

            closed_form.record_result(
                explicit_remainders(&trace).map(|rows| rows.len() == s + 1 && rows.iter().all(|r| r.holds())),
                at,
            );

            match enumerate_identities(&trace) {
                Ok(ids) => {
                    forms.record(ids.len() == (s + 1) * (s + 2), at);
                    for id in ids.iter().filter(|id| id.family == Family::Minus && id.i == s) {
                        vanishing.record(id.multiplier == 0, || format!("{}, j = {}", at(), id.j));
                    }
                }
                Err(e) => forms.record(false, || format!("{}: {e}", at())),
            }

            let chain_ok = nest_chain(n, a).and_then(|c| {
                let mut ok = c.entries.len() == s && c.multipliers.len() + 1 == c.entries.len();
                for (k, entry) in c.entries.iter().enumerate() {
                    ok &= *entry == cf_eval(&half.window(k + 1, s).palindrome())?;
                }
                for (m, next) in c.multipliers.iter().zip(c.entries.iter().skip(1)) {
                    ok &= *m == next.numerator();
                }
                Ok(ok)
            });
            chain.record_result(chain_ok, at);

            let step_ok = cf_eval(&half.window(2, s).palindrome()).map(|inner| {
                n.checked_mul(inner.numerator())
                    .zip(a.checked_mul(a).and_then(|sq| sq.checked_add(1)))
                    .is_some_and(|(lhs, rhs)| lhs == rhs)
            });
            first_step.record_result(step_ok, at);
        }
        let found: BTreeSet<TwoSquares> = found;
        oracle.record(found == brute_two_squares(n), || format!("n = {n}"));
    }
    vec![
        roots_closed,
        two_squares,
        middle,
        pair,
        oracle,
        lemma,
        closed_form,
        forms,
        vanishing,
        chain,
        first_step,
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_run_passes() {
        let report = run(
            VerifyConfig {
                max_n: 200,
                perron_max_n: 200,
                seed: 7,
                cases: 200,
            },
            SweepLimit::default(),
        )
        .unwrap();
        for p in &report.properties {
            assert!(p.passed(), "{}: {:?}", p.name, p.failure);
            assert!(p.checked > 0, "{} checked nothing", p.name);
        }
    }

    #[test]
    fn smallest_sweep_covers_n_equals_two() {
        let reports = symmetric_sweep(2, SweepLimit::default());
        assert!(reports.iter().all(PropertyReport::passed));
        let reps = reports.iter().find(|p| p.name.starts_with("brillhart gives")).unwrap();
        assert_eq!(reps.checked, 1);
    }

    #[test]
    fn same_seed_same_report() {
        let config = VerifyConfig {
            max_n: 50,
            perron_max_n: 50,
            seed: 42,
            cases: 100,
        };
        let a = run(config, SweepLimit::default()).unwrap();
        let b = run(config, SweepLimit::default()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn limit_is_enforced() {
        let config = VerifyConfig {
            max_n: 101,
            ..VerifyConfig::default()
        };
        assert!(run(config, SweepLimit(100)).is_err());
    }

    #[test]
    fn first_failure_is_kept() {
        let mut p = PropertyReport::new("x");
        p.record(true, || unreachable!());
        p.record(false, || "first".into());
        p.record(false, || "second".into());
        assert_eq!(p.checked, 3);
        assert_eq!(p.failure.as_deref(), Some("first"));
    }
}
