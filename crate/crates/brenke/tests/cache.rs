use brenke::cache::{decode, encode, load, load_or_extend};
use brenke::AppError;

#[test]
fn warm_cache_returns_identical_balls() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.json");
    let cold = load_or_extend(&path, 4, 64, None).unwrap();
    let warm = load_or_extend(&path, 4, 64, None).unwrap();
    assert_eq!(encode(&cold), encode(&warm));
    assert_eq!(encode(&load(&path).unwrap().unwrap()), encode(&cold));
}

#[test]
fn extending_keeps_earlier_entries() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.json");
    let small = load_or_extend(&path, 3, 64, None).unwrap();
    let big = load_or_extend(&path, 6, 64, None).unwrap();
    assert_eq!(big.gammas.len(), 7);
    for (a, b) in small.gammas.iter().zip(&big.gammas) {
        assert_eq!(a.mid_decimal(), b.mid_decimal());
        assert_eq!(a.rad_decimal(), b.rad_decimal());
    }
}

#[test]
fn higher_precision_recomputes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.json");
    load_or_extend(&path, 3, 64, None).unwrap();
    let t = load_or_extend(&path, 3, 128, None).unwrap();
    assert_eq!(t.params.bits, 128);
    assert_eq!(load(&path).unwrap().unwrap().params.bits, 128);
    // a lower request is served by the better table
    assert_eq!(load_or_extend(&path, 3, 64, None).unwrap().params.bits, 128);
}

#[test]
fn round_trip_and_checksum() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.json");
    let t = load_or_extend(&path, 2, 64, None).unwrap();
    let text = encode(&t);
    assert_eq!(encode(&decode(&text).unwrap()), text);
    let tampered = text.replacen("\"bits\": 64", "\"bits\": 65", 1);
    assert!(decode(&tampered).unwrap_err().contains("checksum"));
    std::fs::write(&path, tampered).unwrap();
    assert!(matches!(load(&path), Err(AppError::CacheCorrupt { .. })));
}
