mod common;

use common::*;
use fsdsq::fsds::find_fs_double_squares;
use fsdsq::generators::{
    build_run, extend_equal_run, extend_unequal, StepKind, UnequalOptions, Variant,
};
use fsdsq::search::canonical::canonical_words;
use fsdsq::{s_sequence, Error};

/// Every canonical binary word up to 20 letters that is exactly SQ^2 of
/// its FS-double square at position 1.
fn seeds() -> Vec<fsdsq::Word> {
    (10..=20)
        .flat_map(|n| canonical_words(2, n))
        .filter(|w| {
            find_fs_double_squares(w)
                .unwrap()
                .first()
                .is_some_and(|d| d.position == 1 && d.end() == w.len())
        })
        .collect()
}

#[test]
fn equal_extension_stays_within_ceiling() {
    let seeds = seeds();
    assert!(seeds.contains(&word("abaababaab")));
    let mut extended = 0;
    for seed in &seeds {
        match extend_equal_run(seed) {
            Ok(r) => {
                let step = &r.steps[1];
                assert!(step.gained <= step.ceiling.unwrap(), "{seed}");
                assert!(r.findings.is_empty(), "{seed}: {:?}", r.findings);
                assert_eq!(naive_census(&r.word).s[..r.t], vec![2; r.t][..]);
                extended += 1;
            }
            Err(Error::NoEqualExtension) => {}
            Err(e) => panic!("{seed}: {e}"),
        }
    }
    assert!(extended > 0);
}

#[test]
fn build_run_doubles_at_every_unequal_step() {
    let r = build_run(5, 2).unwrap();
    assert!(r.t >= 5 && r.bound_holds, "T={} n={}", r.t, r.n);
    assert_eq!(s_sequence(&r.word).longest_run.length, r.t);
    let kinds: Vec<StepKind> = r.steps.iter().map(|s| s.kind).collect();
    assert_eq!(kinds[0], StepKind::Seed);
    assert!(kinds.contains(&StepKind::Equal) && kinds.contains(&StepKind::Unequal));
    for s in r.steps.iter().filter(|s| s.kind == StepKind::Unequal) {
        assert!(s.new_big_len.unwrap() > 2 * s.frontier_big_len);
    }
}

#[test]
fn ternary_alphabet_breaks_with_smallest_other_letter() {
    let opts = UnequalOptions {
        alphabet_size: 3,
        ..UnequalOptions::default()
    };
    let r = extend_unequal(&word("aabaaabaabaaab"), 1, Variant::Short, &opts).unwrap();
    assert_eq!(r.word, w1());
}

#[test]
fn json_shape() {
    let r = extend_equal_run(&word("abaababaabaababa")).unwrap();
    let v = serde_json::to_value(&r).unwrap();
    assert_eq!(v["word"], SEVENTEEN);
    assert_eq!(v["n"], 17);
    assert_eq!(v["T"], 2);
    assert_eq!(v["ratio"], serde_json::json!({"num": 2, "den": 17}));
    assert_eq!(v["steps"][1]["kind"], "equal");
}
