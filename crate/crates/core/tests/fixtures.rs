use std::fs;
use std::path::Path;

use bicanon_core::maps::sigma;
use bicanon_core::moduli::builtin_actions;
use bicanon_core::report::input::{builtin_fixture, ingest, to_json};
use bicanon_core::report::{verify_fixtures, Fixtures};
use bicanon_core::{family, verify_all};

fn fixture_dir() -> &'static Path {
    Path::new(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures"))
}

#[test]
fn checked_in_fixtures_match_builtins() {
    for k in 1..=3 {
        let path = fixture_dir().join(format!("family-{k}.json"));
        let src = fs::read_to_string(&path).unwrap();
        assert_eq!(src, to_json(&builtin_fixture(k).unwrap()), "{}", path.display());
        let got = ingest(&src).unwrap();
        let fam = family(k).unwrap();
        assert_eq!(got.families[0].family, fam);
        assert_eq!(got.families[0].actions, builtin_actions(&fam, k));
        assert_eq!(got.maps[0].map, sigma(k).unwrap());
    }
}

#[test]
fn fixtures_reproduce_the_builtin_certificate() {
    let mut fx = Fixtures::builtin();
    for k in 1..=3 {
        let src = fs::read_to_string(fixture_dir().join(format!("family-{k}.json"))).unwrap();
        fx = {
            let ingested = ingest(&src).unwrap();
            let mut next = Fixtures::overridden_by(&ingested);
            for j in 0..3 {
                if j + 1 != k {
                    next.families[j] = fx.families[j].clone();
                    next.sigmas[j] = fx.sigmas[j].clone();
                }
            }
            next
        };
    }
    assert_eq!(verify_fixtures(&fx).to_json(), verify_all().to_json());
}

#[test]
fn golden_certificate() {
    let golden = include_str!("golden/certificate.json");
    assert_eq!(verify_all().to_json(), golden);
}
