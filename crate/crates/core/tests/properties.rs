use proptest::prelude::*;

use symeuclid::continuants::{cf_eval, continuant, euler_identity_holds, QuotientSequence};
use symeuclid::euclid::{euclid_trace, is_sqrt_minus_one, symmetric_trace};
use symeuclid::identities::{explicit_remainders, nest_chain};
use symeuclid::oracle::{cf_eval_fold, det_continuant};
use symeuclid::{brillhart, enumerate_identities, Error};

fn sequence(max_len: usize) -> impl Strategy<Value = QuotientSequence> {
    prop::collection::vec(1u128..=9, 0..=max_len).prop_map(|v| QuotientSequence::new(v).unwrap())
}

/// A half sequence whose palindrome gives a root of -1: n/a = cf_eval(palindrome).
/// At most six terms up to 30 keep n below 2^63.
fn palindromic_pair() -> impl Strategy<Value = (QuotientSequence, u128, u128)> {
    prop::collection::vec(1u128..=30, 1..=6).prop_map(|half| {
        let half = QuotientSequence::new(half).unwrap();
        let value = cf_eval(&half.palindrome()).unwrap();
        (half, value.numerator(), value.denominator())
    })
}

proptest! {
    #[test]
    fn recurrence_matches_determinant(seq in sequence(10)) {
        for i in 1..=seq.len() {
            for j in i..=seq.len() {
                prop_assert_eq!(continuant(&seq, i as i64, j as i64).unwrap() as i128, det_continuant(&seq, i, j).unwrap());
            }
        }
    }

    #[test]
    fn euler_identity_on_all_indices(seq in sequence(6)) {
        let t = seq.len() as i64;
        for s in -1..=t {
            for m in -1..=s {
                for l in 1..=m + 2 {
                    for i in 1..=l {
                        prop_assert!(euler_identity_holds(&seq, i, l, m, s).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn fold_and_reversal(seq in sequence(20)) {
        let value = cf_eval(&seq).unwrap();
        prop_assert_eq!(value, cf_eval_fold(&seq));
        prop_assert_eq!(value.numerator(), cf_eval(&seq.reverse()).unwrap().numerator());
    }

    #[test]
    fn palindromes_trace_back_to_themselves((half, n, a) in palindromic_pair()) {
        prop_assert!(is_sqrt_minus_one(n, a));
        let trace = symmetric_trace(n, a).unwrap();
        prop_assert_eq!(trace.half_quotients().unwrap(), half.clone());
        let s = half.len();
        let rep = brillhart(n, a).unwrap();
        prop_assert_eq!((Some(rep.x), Some(rep.y)), (trace.remainder(s + 1), trace.remainder(s + 2)));
        prop_assert!(explicit_remainders(&trace).unwrap().iter().all(|r| r.holds()));
        prop_assert_eq!(enumerate_identities(&trace).unwrap().len(), (s + 1) * (s + 2));
        let chain = nest_chain(n, a).unwrap();
        prop_assert_eq!(chain.entries.len(), s);
    }

    #[test]
    fn division_identity_holds(n in 2u128..100_000, a in 1u128..100_000) {
        prop_assume!(a < n);
        if let Ok(trace) = euclid_trace(n, a) {
            let r = trace.remainders();
            for (k, &q) in trace.quotients().iter().enumerate() {
                prop_assert_eq!(r[k], q * r[k + 1] + r[k + 2]);
            }
            prop_assert!(r[1..].windows(2).all(|w| w[0] > w[1]));
        }
    }
}

#[test]
fn oversized_products_are_errors_not_wraparound() {
    let half = QuotientSequence::new(vec![50; 8]).unwrap();
    let value = cf_eval(&half.palindrome()).unwrap();
    let trace = symmetric_trace(value.numerator(), value.denominator()).unwrap();
    assert!(matches!(enumerate_identities(&trace), Err(Error::Overflow(_))));
    // the two-squares path never squares anything above sqrt(n)
    assert!(brillhart(value.numerator(), value.denominator()).is_ok());
}
