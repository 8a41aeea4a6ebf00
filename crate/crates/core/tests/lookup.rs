use std::collections::BTreeSet;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use seqgf::lookup::{
    apply_chain, find, findhard, transformation_catalog, Category, MatchResult, SequenceDB, SequenceRecord,
    BUILTIN_DB,
};

fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn builtin() -> SequenceDB {
    SequenceDB::parse(BUILTIN_DB)
}

#[test]
fn shifted_catalan_by_one_translation() {
    let db = builtin();
    let q = ints(&[0, 0, 1, 4, 13, 41, 131, 428]);
    let hits = findhard(&q, &db);
    let first = &hits[0];
    assert_eq!(first.render(), "lookup(A000108; chain=[add_1])");
    let catalog = transformation_catalog();
    let add_1 = catalog.iter().find(|s| s.name == "add_1").unwrap();
    assert_eq!(add_1.category, Category::Translation);
    assert!(hits.iter().all(|m| m.replay(&q, &db)));
    // replay notices a tampered chain
    let mut bad = first.clone();
    bad.chain = vec!["add_2".into()];
    assert!(!bad.replay(&q, &db));
}

#[test]
fn every_record_finds_itself() {
    let db = builtin();
    assert!(db.skipped().is_empty(), "{:?}", db.skipped());
    assert!(db.len() >= 40);
    for rec in db.records() {
        let hits = find(&rec.terms, &db);
        let own = hits.iter().find(|m| m.id == rec.id);
        let own = own.unwrap_or_else(|| panic!("{} does not find itself", rec.id));
        assert_eq!((own.query_shift, own.record_shift), (0, 0));
        assert!(own.replay(&rec.terms, &db));
    }
}

#[test]
fn short_and_malformed_records() {
    let text = "# comment\n\
                A1 ,1,2,3,4,5,6,7,8,9,10,11, Natural numbers, starting at 1\n\
                A2 ,1,2,3,\n\
                A3 ,1,x,3,\n\
                \n\
                A4 ,2,3,5,7,11,13,17,19,23,29,\n";
    let db = SequenceDB::parse(text);
    assert_eq!(db.len(), 3);
    assert_eq!(db.skipped().len(), 1);
    assert_eq!(db.get("A1").unwrap().name.as_deref(), Some("Natural numbers, starting at 1"));
    // too short to index
    assert_eq!(db.indexed_count(), 2);
    assert!(find(&ints(&[1, 2, 3]), &db).is_empty());
}

#[test]
fn index_agrees_with_a_linear_scan() {
    // random records over a small alphabet so that windows collide
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let records: Vec<SequenceRecord> = (0..60)
        .map(|i| SequenceRecord {
            id: format!("B{i:03}"),
            terms: (0..rng.gen_range(9..=20)).map(|_| BigInt::from(rng.gen_range(0..=1))).collect(),
            name: None,
        })
        .collect();
    let db = SequenceDB::from_records(records.clone());
    for _ in 0..100 {
        let q: Vec<BigInt> = (0..rng.gen_range(8..=20)).map(|_| BigInt::from(rng.gen_range(0..=1))).collect();
        let got: BTreeSet<String> = find(&q, &db).into_iter().map(|m| m.id).collect();
        let want: BTreeSet<String> = records
            .iter()
            .filter(|r| brute_match(&q, &r.terms))
            .map(|r| r.id.clone())
            .collect();
        assert_eq!(got, want);
    }
}

/// Same rule as the index, written out directly: windows start at rank 2
/// (index 1) plus a shift of 0..3 on either side, span up to 15 terms, and
/// need at least 7 of them in common.
fn brute_match(q: &[BigInt], r: &[BigInt]) -> bool {
    for qs in 0..=3 {
        for rs in 0..=3 {
            let (a, b) = (1 + qs, 1 + rs);
            if q.len() < a + 7 || r.len() < b + 7 {
                continue;
            }
            let qw = &q[a..(a + 15).min(q.len())];
            let rw = &r[b..(b + 15).min(r.len())];
            let n = qw.len().min(rw.len());
            if qw[..n] == rw[..n] {
                return true;
            }
        }
    }
    false
}

#[test]
fn inverse_pairs_undo_each_other() {
    let catalog = transformation_catalog();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let samples: Vec<Vec<BigInt>> = (0..20)
        .map(|i| {
            let mut v: Vec<BigInt> = (0..14).map(|_| BigInt::from(rng.gen_range(-20..=40))).collect();
            v[0] = BigInt::from(i % 2);
            v
        })
        .collect();
    let mut pairs = 0;
    for spec in &catalog {
        let Some(inv_name) = &spec.inverse else { continue };
        let inv = catalog.iter().find(|s| &s.name == inv_name).expect("inverse is in the catalog");
        let mut checked = 0;
        for x in &samples {
            let Some(y) = spec.apply(x) else { continue };
            let Some(back) = inv.apply(&y) else { continue };
            let n = back.len().min(x.len());
            assert!(n + 2 >= x.len(), "{} loses terms", spec.name);
            assert_eq!(back[..n], x[..n], "{} then {}", spec.name, inv.name);
            checked += 1;
        }
        assert!(checked > 0, "{} never applied", spec.name);
        pairs += 1;
    }
    assert!(pairs >= 8);
}

#[test]
fn chains_are_named_and_replayable() {
    let catalog = transformation_catalog();
    let names: BTreeSet<&str> = catalog.iter().map(|s| s.name.as_str()).collect();
    assert_eq!(names.len(), catalog.len());
    let q = ints(&[1, 2, 5, 14, 42, 132, 429, 1430, 4862]);
    let twice = apply_chain(&catalog, &["partial_sums".into(), "first_differences".into()], &q).unwrap();
    assert_eq!(twice, q);
    assert!(apply_chain(&catalog, &["no_such_map".into()], &q).is_none());
    let (id, chain) = MatchResult::parse("lookup(A000045; chain=[divide_by_gcd,shift_left])").unwrap();
    assert_eq!((id.as_str(), chain.len()), ("A000045", 2));
}

#[test]
fn doubled_fibonacci_divides_out() {
    let db = builtin();
    let q = ints(&[2, 2, 4, 6, 10, 16, 26, 42, 68, 110, 178, 288]);
    let hits = findhard(&q, &db);
    assert!(hits.iter().any(|m| m.render() == "lookup(A000045; chain=[divide_by_gcd])"));
}
