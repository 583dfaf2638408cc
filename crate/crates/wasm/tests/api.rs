use terncode_wasm::api;

#[test]
fn histogram_closed_form_m6() {
    let v = api::histogram(6).unwrap();
    assert_eq!(v["method"], "closed form");
    assert_eq!(v["counts"]["486"], "124245576");
    assert_eq!(v["counts"]["648"], "2548");
    assert_eq!(v["total"], "387420489");
}

#[test]
fn histogram_enumerated_small_m() {
    let v = api::histogram(2).unwrap();
    assert_eq!(v["method"], "enumeration");
    assert_eq!(v["counts"]["0"], "27");
    assert_eq!(v["total"], "729");
    assert!(api::histogram(3).is_err());
    assert!(api::histogram(0).is_err());
}

#[test]
fn classify_zero_and_nonzero_triples() {
    let z = api::classify_triple(4, "", "0", "0000").unwrap();
    assert_eq!(z["class"]["kind"], "zero-triple");
    assert_eq!(z["weight"], 0);
    for (a, b, c) in [("1", "0", "0"), ("0121", "2", "11"), ("2", "1", "2101"), ("1", "0", "2")] {
        let v = api::classify_triple(4, a, b, c).unwrap();
        assert_eq!(v["agree"], true, "{v}");
        assert_eq!(v["weight"], v["weight_counted"], "{v}");
    }
}

#[test]
fn classify_rejects_bad_input() {
    assert!(api::classify_triple(4, "3", "0", "0").is_err());
    assert!(api::classify_triple(2, "012", "0", "0").is_err());
    assert!(api::classify_triple(3, "1", "0", "0").is_err());
}

#[test]
fn cosets_m6() {
    let v = api::cosets(6).unwrap();
    assert_eq!(v["dimension"], 18);
    let sizes: Vec<u64> = v["one_plus_p_i"].as_array().unwrap().iter().map(|r| r["size"].as_u64().unwrap()).collect();
    assert_eq!(sizes, vec![6, 6, 6, 3]);
    assert!(api::cosets(13).is_err());
}
