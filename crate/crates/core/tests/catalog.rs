use pmspace::catalog::{catalog_map, catalog_space, Catalog, MapSpec, SPACE_IDS};
use pmspace::{q, PartialMetric, PmError, Point};

#[test]
fn evaluator_values() {
    let s = catalog_space("ex3.4").unwrap();
    assert_eq!(s.p(&Point::int(0), &Point::int(1)).unwrap(), q(4, 1));
    assert_eq!(catalog_space("ex3.1").unwrap().declared_rho(), Some(&q(1, 1)));
    let e = catalog_space("ex5.8").unwrap();
    assert_eq!(e.p(&Point::tag("a"), &Point::tag("a")).unwrap(), q(0, 1));
    let w = catalog_space("ex4.8").unwrap();
    assert_eq!(w.p(&Point::int(2), &Point::int(3)).unwrap(), q(1, 1) + q(1, 2) + q(1, 3));
    let f = catalog_space("ex5.4").unwrap();
    assert_eq!(f.p(&Point::num(1, 2), &Point::int(2)).unwrap(), q(2, 1));
}

#[test]
fn map_values() {
    assert_eq!(catalog_map("ex5.4.T").unwrap().apply(&Point::int(3)), Some(Point::num(5, 2)));
    assert_eq!(catalog_map("ex3.4.T").unwrap().apply(&Point::num(1, 2)), Some(Point::int(-7)));
    assert_eq!(catalog_map("ex3.4.T").unwrap().apply(&Point::num(1, 3)), Some(Point::int(-6)));
    let c = catalog_map("const.1/2").unwrap();
    for x in ["0", "3", "7/8"] {
        assert_eq!(c.apply(&x.parse().unwrap()), Some(Point::num(1, 2)));
    }
}

#[test]
fn maps_stay_in_their_space_on_the_sample() {
    let cat = Catalog::standard();
    for (space, map) in [("ex3.4", "ex3.4.T"), ("ex5.4", "ex5.4.T")] {
        let s = cat.space(space).unwrap();
        let m: MapSpec = cat.map(map).unwrap();
        for x in s.canonical_sample() {
            assert!(s.contains(&m.apply(x).unwrap()), "{map}({x})");
        }
    }
}

#[test]
fn every_sample_validates_against_declared_metadata() {
    let cat = Catalog::standard();
    for id in SPACE_IDS {
        let s = cat.space(id).unwrap();
        s.validate_sample(s.canonical_sample()).unwrap();
        s.validate_sample(&s.sample(99, 60)).unwrap();
    }
}

#[test]
fn unknown_names() {
    assert!(matches!(catalog_space("ex9.9"), Err(PmError::UnknownName(_))));
    assert!(matches!(catalog_map("nope"), Err(PmError::UnknownName(_))));
    let s = catalog_space("ex5.8").unwrap();
    assert!(matches!(s.p(&Point::tag("c"), &Point::tag("a")), Err(PmError::Domain(_))));
}
