//! Domain elements.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::PmError;
use crate::rational::Rational;

/// A point of some space.
///
/// Three kinds of elements occur in practice: rational scalars, finite sets
/// over a small ground alphabet (bit `i` stands for the letter `'a' + i`),
/// and symbolic tags. Two points are equal iff they denote the same element.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Point {
    Num(Rational),
    Set(u32),
    Tag(String),
}

impl Point {
    pub fn num(n: i64, d: i64) -> Point {
        Point::Num(Rational::new(n, d))
    }

    pub fn int(n: i64) -> Point {
        Point::Num(Rational::from_int(n))
    }

    pub fn tag(s: &str) -> Point {
        Point::Tag(s.to_string())
    }

    /// Set from its letters, e.g. `Point::set("ab")`.
    pub fn set(letters: &str) -> Point {
        let mask = letters
            .chars()
            .filter(|c| c.is_ascii_lowercase())
            .fold(0u32, |m, c| m | 1 << (c as u32 - 'a' as u32));
        Point::Set(mask)
    }

    pub fn as_num(&self) -> Option<&Rational> {
        match self {
            Point::Num(r) => Some(r),
            _ => None,
        }
    }

    pub fn as_set(&self) -> Option<u32> {
        match self {
            Point::Set(m) => Some(*m),
            _ => None,
        }
    }

    pub fn as_tag(&self) -> Option<&str> {
        match self {
            Point::Tag(t) => Some(t),
            _ => None,
        }
    }
}

impl From<Rational> for Point {
    fn from(r: Rational) -> Self {
        Point::Num(r)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Num(r) => write!(f, "{r}"),
            Point::Set(mask) => {
                let letters: Vec<String> = (0..26)
                    .filter(|i| mask & (1 << i) != 0)
                    .map(|i| char::from(b'a' + i as u8).to_string())
                    .collect();
                write!(f, "{{{}}}", letters.join(","))
            }
            Point::Tag(t) => f.write_str(t),
        }
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Point {
    type Err = PmError;

    /// `{a,b}` parses as a set, anything that parses as a rational becomes a
    /// number, everything else is a tag.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t.is_empty() {
            return Err(PmError::Argument("empty point id".into()));
        }
        if let Some(inner) = t.strip_prefix('{').and_then(|r| r.strip_suffix('}')) {
            let mut mask = 0u32;
            for part in inner.split(',').map(str::trim).filter(|p| !p.is_empty()) {
                let mut chars = part.chars();
                match (chars.next(), chars.next()) {
                    (Some(c), None) if c.is_ascii_lowercase() => {
                        mask |= 1 << (c as u32 - 'a' as u32);
                    }
                    _ => return Err(PmError::Argument(format!("bad set element `{part}` in `{t}`"))),
                }
            }
            return Ok(Point::Set(mask));
        }
        if let Ok(r) = t.parse::<Rational>() {
            return Ok(Point::Num(r));
        }
        Ok(Point::Tag(t.to_string()))
    }
}

impl Serialize for Point {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Point {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_kinds() {
        assert_eq!("1/2".parse::<Point>().unwrap(), Point::num(1, 2));
        assert_eq!("-7".parse::<Point>().unwrap(), Point::int(-7));
        assert_eq!("{b,a}".parse::<Point>().unwrap(), Point::set("ab"));
        assert_eq!("{}".parse::<Point>().unwrap(), Point::Set(0));
        assert_eq!("a".parse::<Point>().unwrap(), Point::tag("a"));
        assert!("{ab}".parse::<Point>().is_err());
    }

    #[test]
    fn display_roundtrip() {
        for p in [Point::num(-3, 4), Point::set("ac"), Point::Set(0), Point::tag("x3")] {
            assert_eq!(p.to_string().parse::<Point>().unwrap(), p);
        }
        assert_eq!(Point::set("ca").to_string(), "{a,c}");
        assert_eq!(Point::int(2).to_string(), "2/1");
    }
}
