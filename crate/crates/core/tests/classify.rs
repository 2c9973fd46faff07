use catembed_core::companion::order3_candidates;
use catembed_core::embed::{classify, Verdict, Witness};

fn word(s: &str) -> Vec<String> {
    s.chars().map(|c| c.to_string()).collect()
}

#[test]
fn embedding_one_is_not_strong() {
    let c = &order3_candidates()[0];
    let r = classify(c, 4).unwrap();
    assert_eq!(r.verdict, Verdict::NotStrong);
    assert_eq!(r.witness, Some(Witness::WordPair { left: word("RRR"), right: word("XX") }));
}

#[test]
fn embedding_two_is_strong_but_not_linear() {
    let c = &order3_candidates()[1];
    let r = classify(c, 5).unwrap();
    assert_eq!(r.verdict, Verdict::StrongNotLinear);
    let want = vec![("1".to_string(), "X".to_string()), ("1".into(), "RXR".into()), ("1".into(), "RRXRR".into())];
    let found = r.violations.iter().any(|v| {
        let mut t = v.normalized();
        t.sort();
        let mut w = want.clone();
        w.sort();
        t == w
    });
    assert!(found);
    match r.witness.unwrap() {
        Witness::Linear(l) => {
            let mut t = l.normalized();
            t.sort();
            let mut w = want;
            w.sort();
            assert_eq!(t, w);
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn embedding_three_is_linear_consistent() {
    let c = &order3_candidates()[2];
    let r = classify(c, 5).unwrap();
    assert_eq!(r.verdict, Verdict::LinearConsistent, "{:?}", r.witness);
}
