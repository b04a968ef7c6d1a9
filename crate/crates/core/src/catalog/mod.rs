//! Registry of example spaces, maps and sequence generators.
//!
//! Identifiers are stable strings: spaces `ex3.1`, `ex3.2`, `ex3.4`,
//! `ex4.4`, `ex4.8`, `ex5.4`, `ex5.5`, `ex5.6`, `ex5.8`, `apex`; maps
//! `ex3.4.T`, `ex5.4.T`, `id`, `const.<point>`.

mod maps;
mod random;
mod spaces;

use std::collections::BTreeMap;

pub use maps::MapSpec;
pub use random::{random_metric, random_metric_space, random_pm_space, random_pm_space_with, RandomOptions};
pub use spaces::{apex, apex_point, apex_top, BottomDecl, CatalogSpace};

use crate::analysis::{SequenceJson, SequenceSpec};
use crate::error::{PmError, Result};
use crate::point::Point;
use crate::rational::{q, Rational};
use crate::space::PartialMetric;

/// Number of discrete points in the registered `apex` entry.
pub const APEX_DEFAULT_SIZE: usize = 4;

pub const SPACE_IDS: [&str; 10] = [
    "ex3.1", "ex3.2", "ex3.4", "ex4.4", "ex4.8", "ex5.4", "ex5.5", "ex5.6", "ex5.8", "apex",
];

/// One example: its space, the maps acting on it, and named sequences.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub space: CatalogSpace,
    pub maps: Vec<MapSpec>,
    pub generators: Vec<(String, SequenceSpec)>,
}

/// The self-map of the `ex3.4` space: collapses `{-7,-6,-5,0}` to `-5`,
/// sends `1/(2q)` to `-7` and every other positive point to `-6`.
pub fn ex3_4_map() -> MapSpec {
    MapSpec::new("ex3.4.T", |x| {
        let r = x.as_num()?;
        let neg = [-7, -6, -5].iter().any(|&k| *r == Rational::from_int(k));
        if neg || r.is_zero() {
            Some(Point::int(-5))
        } else if r.is_negative() {
            None
        } else if r.is_inverse_even() {
            Some(Point::int(-7))
        } else {
            Some(Point::int(-6))
        }
    })
}

/// The self-map of the `ex5.4` space: `(x+1)/2` on `[0,1]`, `(2+x)/2` on `[2,3]`.
pub fn ex5_4_map() -> MapSpec {
    MapSpec::new("ex5.4.T", |x| {
        let r = x.as_num()?;
        let (zero, one, two, three) = (
            Rational::zero(),
            Rational::one(),
            Rational::from_int(2),
            Rational::from_int(3),
        );
        if *r >= zero && *r <= one {
            Some(Point::Num((r + &one) * q(1, 2)))
        } else if *r >= two && *r <= three {
            Some(Point::Num((&two + r) * q(1, 2)))
        } else {
            None
        }
    })
}

#[derive(Clone, Debug)]
pub struct Catalog {
    entries: BTreeMap<String, CatalogEntry>,
    maps: BTreeMap<String, MapSpec>,
}

impl Default for Catalog {
    fn default() -> Self {
        Catalog::standard()
    }
}

impl Catalog {
    pub fn empty() -> Self {
        Catalog {
            entries: BTreeMap::new(),
            maps: BTreeMap::new(),
        }
    }

    pub fn standard() -> Self {
        let mut c = Catalog::empty();
        let t34 = ex3_4_map();
        let t54 = ex5_4_map();

        c.insert(CatalogEntry {
            space: spaces::ex3_1(),
            maps: vec![],
            generators: vec![],
        });
        c.insert(CatalogEntry {
            space: spaces::ex3_2(),
            maps: vec![],
            generators: vec![(
                "ex3.2.alternating".into(),
                // {a} at even indices, {b} at odd ones
                SequenceSpec::periodic(vec![Point::set("b"), Point::set("a")]),
            )],
        });
        let t = t34.clone();
        c.insert(CatalogEntry {
            space: spaces::ex3_4(),
            maps: vec![t34.clone()],
            generators: vec![
                ("ex3.4.inv".into(), SequenceSpec::generator("ex3.4.inv", 100, false, |n| {
                    Point::num(1, n as i64)
                })),
                ("ex3.4.T_inv".into(), SequenceSpec::generator("ex3.4.T_inv", 100, true, move |n| {
                    t.apply(&Point::num(1, n as i64)).expect("T is total on 1/n")
                })),
            ],
        });
        c.insert(CatalogEntry {
            space: spaces::ex4_4(),
            maps: vec![],
            generators: vec![],
        });
        c.insert(CatalogEntry {
            space: spaces::ex4_8(),
            maps: vec![],
            generators: vec![("ex4.8.n".into(), SequenceSpec::generator("ex4.8.n", 10_000, false, |n| {
                Point::int(n as i64)
            }))],
        });
        c.insert(CatalogEntry {
            space: spaces::ex5_4(),
            maps: vec![t54.clone()],
            generators: vec![
                ("ex5.4.orbit0".into(), SequenceSpec::generator("ex5.4.orbit0", 64, false, |n| {
                    Point::Num(Rational::one() - Rational::dyadic(n as u32))
                })),
                ("ex5.4.orbit3".into(), SequenceSpec::generator("ex5.4.orbit3", 64, false, |n| {
                    Point::Num(Rational::from_int(2) + Rational::dyadic(n as u32))
                })),
            ],
        });
        c.insert(CatalogEntry {
            space: spaces::ex5_5(),
            maps: vec![],
            generators: vec![("ex5.5.inv".into(), SequenceSpec::generator("ex5.5.inv", 10_000, true, |n| {
                Point::num(1, n as i64)
            }))],
        });
        c.insert(CatalogEntry {
            space: spaces::ex5_6(),
            maps: vec![],
            generators: vec![("ex5.6.inv".into(), SequenceSpec::generator("ex5.6.inv", 10_000, true, |n| {
                Point::num(1, n as i64 + 1)
            }))],
        });
        c.insert(CatalogEntry {
            space: spaces::ex5_8(),
            maps: vec![],
            generators: vec![(
                "ex5.8.alternating".into(),
                SequenceSpec::periodic(vec![Point::tag("a"), Point::tag("b")]),
            )],
        });
        c.insert(CatalogEntry {
            space: apex(APEX_DEFAULT_SIZE),
            maps: vec![],
            generators: vec![],
        });
        c
    }

    pub fn insert(&mut self, entry: CatalogEntry) {
        for m in &entry.maps {
            self.maps.insert(m.name().to_string(), m.clone());
        }
        self.entries.insert(entry.space.name().to_string(), entry);
    }

    /// Replaces a named map (used to probe the fact suite).
    pub fn with_map(mut self, name: &str, map: MapSpec) -> Self {
        let map = map.renamed(name);
        for e in self.entries.values_mut() {
            for m in e.maps.iter_mut().filter(|m| m.name() == name) {
                *m = map.clone();
            }
        }
        self.maps.insert(name.to_string(), map);
        self
    }

    /// Keeps only the named entries.
    pub fn subset(&self, names: &[&str]) -> Self {
        let mut c = Catalog::empty();
        for n in names {
            if let Some(e) = self.entries.get(*n) {
                c.insert(e.clone());
            }
        }
        for (k, m) in &self.maps {
            if c.maps.contains_key(k) {
                c.maps.insert(k.clone(), m.clone());
            }
        }
        c
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.entries.contains_key(name)
    }

    pub fn entry(&self, name: &str) -> Result<&CatalogEntry> {
        self.entries
            .get(name)
            .ok_or_else(|| PmError::UnknownName(name.to_string()))
    }

    pub fn space(&self, name: &str) -> Result<&CatalogSpace> {
        Ok(&self.entry(name)?.space)
    }

    pub fn map(&self, name: &str) -> Result<MapSpec> {
        if name == "id" {
            return Ok(MapSpec::identity());
        }
        if let Some(id) = name.strip_prefix("const.") {
            return Ok(MapSpec::constant(id.parse()?));
        }
        self.maps
            .get(name)
            .cloned()
            .ok_or_else(|| PmError::UnknownName(name.to_string()))
    }

    pub fn generator(&self, id: &str) -> Result<SequenceSpec> {
        self.entries
            .values()
            .flat_map(|e| e.generators.iter())
            .find(|(g, _)| g == id)
            .map(|(_, s)| s.clone())
            .ok_or_else(|| PmError::UnknownName(id.to_string()))
    }

    /// Turns a wire-form sequence into a [`SequenceSpec`], resolving
    /// generator ids against this catalog.
    pub fn resolve_sequence(&self, json: SequenceJson) -> Result<SequenceSpec> {
        match json {
            SequenceJson::Explicit { explicit } => Ok(SequenceSpec::Explicit(explicit)),
            SequenceJson::Periodic { prefix, cycle } => {
                if cycle.is_empty() {
                    return Err(PmError::Argument("periodic sequence needs a nonempty cycle".into()));
                }
                Ok(SequenceSpec::Periodic { prefix, cycle })
            }
            SequenceJson::Generator { generator, horizon } => Ok(self.generator(&generator)?.with_horizon(horizon)),
        }
    }

    pub fn map_names(&self) -> Vec<String> {
        self.maps.keys().cloned().collect()
    }

    pub fn generator_ids(&self) -> Vec<String> {
        self.entries
            .values()
            .flat_map(|e| e.generators.iter().map(|(g, _)| g.clone()))
            .collect()
    }
}

/// Looks a space up in the standard catalog.
pub fn catalog_space(name: &str) -> Result<CatalogSpace> {
    Catalog::standard().space(name).cloned()
}

/// Looks a map up in the standard catalog (`const.<point>` and `id` are
/// always available).
pub fn catalog_map(name: &str) -> Result<MapSpec> {
    Catalog::standard().map(name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::PartialMetric;

    #[test]
    fn lookups() {
        assert_eq!(catalog_space("ex3.4").unwrap().p(&Point::int(0), &Point::int(1)).unwrap(), q(4, 1));
        assert_eq!(catalog_space("ex3.1").unwrap().declared_rho(), Some(&q(1, 1)));
        assert_eq!(
            catalog_space("ex5.8").unwrap().p(&Point::tag("a"), &Point::tag("a")).unwrap(),
            Rational::zero()
        );
        assert!(matches!(catalog_space("ex9.9"), Err(PmError::UnknownName(_))));
        assert!(matches!(catalog_map("nope"), Err(PmError::UnknownName(_))));
    }

    #[test]
    fn map_values() {
        assert_eq!(catalog_map("ex5.4.T").unwrap().apply(&Point::int(3)), Some(Point::num(5, 2)));
        assert_eq!(catalog_map("ex5.4.T").unwrap().apply(&Point::int(0)), Some(Point::num(1, 2)));
        assert_eq!(catalog_map("ex5.4.T").unwrap().apply(&Point::num(3, 2)), None);
        let t = catalog_map("ex3.4.T").unwrap();
        assert_eq!(t.apply(&Point::num(1, 2)), Some(Point::int(-7)));
        assert_eq!(t.apply(&Point::num(1, 3)), Some(Point::int(-6)));
        assert_eq!(t.apply(&Point::int(1)), Some(Point::int(-6)));
        assert_eq!(t.apply(&Point::int(0)), Some(Point::int(-5)));
        assert_eq!(t.apply(&Point::int(-7)), Some(Point::int(-5)));
        let c = catalog_map("const.1/3").unwrap();
        for x in [Point::int(0), Point::tag("b"), Point::Set(3)] {
            assert_eq!(c.apply(&x), Some(Point::num(1, 3)));
        }
    }

    #[test]
    fn maps_stay_in_their_spaces() {
        let cat = Catalog::standard();
        for (space, map) in [("ex3.4", "ex3.4.T"), ("ex5.4", "ex5.4.T")] {
            let s = cat.space(space).unwrap();
            let m = cat.map(map).unwrap();
            for x in s.canonical_sample().iter().chain(s.sample(1, 50).iter()) {
                let y = m.apply(x).unwrap();
                assert!(s.contains(&y), "{map}({x}) = {y}");
            }
        }
    }

    #[test]
    fn wire_sequences_resolve() {
        let cat = Catalog::standard();
        let g = cat
            .resolve_sequence(SequenceJson::Generator { generator: "ex4.8.n".into(), horizon: 30 })
            .unwrap();
        assert_eq!(g.default_horizon(), Some(30));
        let empty = SequenceJson::Periodic { prefix: vec![], cycle: vec![] };
        assert!(cat.resolve_sequence(empty).is_err());
        assert_eq!(cat.map_names(), ["ex3.4.T", "ex5.4.T"]);
    }

    #[test]
    fn generators_resolve() {
        let cat = Catalog::standard();
        assert_eq!(cat.generator("ex4.8.n").unwrap().term(7), Some(Point::int(7)));
        assert_eq!(cat.generator("ex5.4.orbit3").unwrap().term(1), Some(Point::num(5, 2)));
        assert_eq!(cat.generator("ex3.4.T_inv").unwrap().term(2), Some(Point::int(-7)));
        assert!(cat.generator("ex0.0").is_err());
    }

    #[test]
    fn overrides_and_subsets() {
        let cat = Catalog::standard().with_map("ex5.4.T", MapSpec::identity());
        assert_eq!(cat.map("ex5.4.T").unwrap().apply(&Point::int(3)), Some(Point::int(3)));
        let sub = cat.subset(&["ex5.4"]);
        assert_eq!(sub.names().collect::<Vec<_>>(), ["ex5.4"]);
        assert_eq!(sub.map("ex5.4.T").unwrap().apply(&Point::int(3)), Some(Point::int(3)));
        assert!(Catalog::standard().subset(&[]).names().next().is_none());
    }
}
