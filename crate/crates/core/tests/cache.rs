use std::io::Write;

use hardyz::experiments::{gram_z_values, prefix_sums};
use hardyz::gram::{gram_point, GramCache, DEFAULT_TOL};
use hardyz::zfun::Method;
use hardyz::Error;

#[test]
fn save_load_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let cache = GramCache::generate(0.0, 5000.0, 1.0, DEFAULT_TOL).unwrap();
    let path = dir.path().join("c.bin");
    cache.save(&path).unwrap();
    let back = GramCache::load(&path).unwrap();
    assert_eq!(back, cache);
    assert_eq!(back.len(), 5001);
    assert_eq!(back.t_at(4321).to_bits(), gram_point(4321.0, DEFAULT_TOL).unwrap().t.to_bits());
}

#[test]
fn rejects_bad_files() {
    let dir = tempfile::tempdir().unwrap();
    let cache = GramCache::generate(0.0, 10.0, 1.0, DEFAULT_TOL).unwrap();
    let path = dir.path().join("c.bin");
    cache.save(&path).unwrap();
    let mut bytes = std::fs::read(&path).unwrap();

    let mut wrong_version = bytes.clone();
    wrong_version[9] = 99;
    std::fs::write(&path, &wrong_version).unwrap();
    assert!(matches!(GramCache::load(&path), Err(Error::Format { .. })));

    bytes.push(0);
    std::fs::write(&path, &bytes).unwrap();
    assert!(matches!(GramCache::load(&path), Err(Error::Format { .. })));

    bytes.truncate(bytes.len() - 9);
    std::fs::write(&path, &bytes).unwrap();
    assert!(GramCache::load(&path).is_err());

    std::fs::File::create(&path).unwrap().write_all(b"NOTACACHE").unwrap();
    assert!(GramCache::load(&path).is_err());
    assert!(matches!(GramCache::load(&dir.path().join("missing")), Err(Error::Io { .. })));
}

#[test]
fn longer_cache_is_reused_and_truncated() {
    let dir = tempfile::tempdir().unwrap();
    let long = GramCache::load_or_generate(dir.path(), 0.0, 10_000.0, 1.0, DEFAULT_TOL).unwrap();
    let short = GramCache::load_or_generate(dir.path(), 0.0, 3000.0, 1.0, DEFAULT_TOL).unwrap();
    assert_eq!(short.len(), 3001);
    assert_eq!(short.abscissas(), &long.abscissas()[..3001]);
    let fresh = GramCache::generate(0.0, 3000.0, 1.0, DEFAULT_TOL).unwrap();
    assert_eq!(fresh, short);
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
}

#[test]
fn csv_export() {
    let cache = GramCache::generate(-1.0, 2.0, 1.0, DEFAULT_TOL).unwrap();
    let mut buf = Vec::new();
    cache.write_csv(&mut buf, ',').unwrap();
    let text = String::from_utf8(buf).unwrap();
    let lines: Vec<_> = text.lines().collect();
    assert_eq!(lines[0], "x,t,residual");
    assert_eq!(lines.len(), 5);
    let t: f64 = lines[1].split(',').nth(1).unwrap().parse().unwrap();
    assert!((t - 9.666908056130192).abs() < 1e-10);
}

#[test]
fn prefix_sums_match_independent_sums() {
    let cache = GramCache::generate(0.0, 20_000.0, 1.0, DEFAULT_TOL).unwrap();
    let idx: Vec<u64> = (2..=20_000).step_by(2).collect();
    let z = gram_z_values(&idx, Method::default(), &cache).unwrap();
    let ns = [1, 4095, 4096, 4097, 8192, 9000, z.len()];
    let all = prefix_sums(&z, &ns);
    for (&n, s) in ns.iter().zip(&all) {
        let alone = prefix_sums(&z[..n], &[n])[0];
        assert_eq!(s.to_bits(), alone.to_bits(), "n={n}");
    }
}
