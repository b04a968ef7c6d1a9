use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{PmError, Result};
use crate::point::Point;

type Gen = Arc<dyn Fn(usize) -> Point + Send + Sync>;

/// A sequence `x_1, x_2, ...` of points (indices start at 1).
#[derive(Clone)]
pub enum SequenceSpec {
    /// A finite prefix; nothing is known past its end.
    Explicit(Vec<Point>),
    /// `prefix` followed by `cycle` repeated forever. Limits are exact.
    Periodic { prefix: Vec<Point>, cycle: Vec<Point> },
    /// Closed-form terms. `exact_tail` marks generators whose gaps are
    /// eventually periodic in `n` by construction, which licenses exact
    /// refutations from the computed tail.
    Generator {
        id: String,
        term: Gen,
        horizon: usize,
        exact_tail: bool,
    },
}

impl fmt::Debug for SequenceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SequenceSpec::Explicit(v) => f.debug_tuple("Explicit").field(v).finish(),
            SequenceSpec::Periodic { prefix, cycle } => f
                .debug_struct("Periodic")
                .field("prefix", prefix)
                .field("cycle", cycle)
                .finish(),
            SequenceSpec::Generator { id, horizon, exact_tail, .. } => f
                .debug_struct("Generator")
                .field("id", id)
                .field("horizon", horizon)
                .field("exact_tail", exact_tail)
                .finish(),
        }
    }
}

impl SequenceSpec {
    pub fn constant(x: Point) -> Self {
        SequenceSpec::Periodic {
            prefix: Vec::new(),
            cycle: vec![x],
        }
    }

    pub fn periodic(cycle: Vec<Point>) -> Self {
        SequenceSpec::Periodic {
            prefix: Vec::new(),
            cycle,
        }
    }

    pub fn generator<F>(id: &str, horizon: usize, exact_tail: bool, f: F) -> Self
    where
        F: Fn(usize) -> Point + Send + Sync + 'static,
    {
        SequenceSpec::Generator {
            id: id.to_string(),
            term: Arc::new(f),
            horizon,
            exact_tail,
        }
    }

    /// Replaces the horizon of a generator; other variants are unchanged.
    pub fn with_horizon(self, n: usize) -> Self {
        match self {
            SequenceSpec::Generator { id, term, exact_tail, .. } => SequenceSpec::Generator {
                id,
                term,
                horizon: n,
                exact_tail,
            },
            other => other,
        }
    }

    /// The `n`-th term, `n >= 1`. `None` past the end of an explicit prefix.
    pub fn term(&self, n: usize) -> Option<Point> {
        assert!(n >= 1, "sequences are indexed from 1");
        match self {
            SequenceSpec::Explicit(v) => v.get(n - 1).cloned(),
            SequenceSpec::Periodic { prefix, cycle } => {
                if n <= prefix.len() {
                    Some(prefix[n - 1].clone())
                } else if cycle.is_empty() {
                    None
                } else {
                    Some(cycle[(n - 1 - prefix.len()) % cycle.len()].clone())
                }
            }
            SequenceSpec::Generator { term, .. } => Some(term(n)),
        }
    }

    /// Number of terms the analyzers look at, given a requested horizon.
    /// Explicit prefixes are capped at their length.
    pub fn effective_horizon(&self, requested: usize) -> usize {
        match self {
            SequenceSpec::Explicit(v) => v.len().min(requested.max(1)),
            _ => requested,
        }
    }

    pub fn default_horizon(&self) -> Option<usize> {
        match self {
            SequenceSpec::Explicit(v) => Some(v.len()),
            SequenceSpec::Generator { horizon, .. } => Some(*horizon),
            SequenceSpec::Periodic { .. } => None,
        }
    }

    /// Terms `x_1..=x_n`.
    pub fn terms(&self, n: usize) -> Vec<Point> {
        (1..=n).map_while(|i| self.term(i)).collect()
    }

    pub fn is_empty(&self) -> bool {
        match self {
            SequenceSpec::Explicit(v) => v.is_empty(),
            SequenceSpec::Periodic { prefix, cycle } => prefix.is_empty() && cycle.is_empty(),
            SequenceSpec::Generator { .. } => false,
        }
    }

    /// `(prefix, cycle)` for sequences with an exactly known periodic tail.
    /// An explicit list is read as its own periodic extension.
    pub fn periodic_parts(&self) -> Result<(Vec<Point>, Vec<Point>)> {
        match self {
            SequenceSpec::Periodic { prefix, cycle } if !cycle.is_empty() => {
                Ok((prefix.clone(), cycle.clone()))
            }
            SequenceSpec::Explicit(v) if !v.is_empty() => Ok((Vec::new(), v.clone())),
            SequenceSpec::Generator { id, .. } => Err(PmError::Unsupported(format!(
                "generator `{id}` has no exact periodic tail over a finite space"
            ))),
            _ => Err(PmError::Argument("empty sequence".into())),
        }
    }

    pub fn exact_tail(&self) -> bool {
        match self {
            SequenceSpec::Periodic { .. } => true,
            SequenceSpec::Generator { exact_tail, .. } => *exact_tail,
            SequenceSpec::Explicit(_) => false,
        }
    }
}

/// Wire form of a sequence. Generators are resolved by id through the catalog.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum SequenceJson {
    Explicit { explicit: Vec<Point> },
    Periodic { prefix: Vec<Point>, cycle: Vec<Point> },
    Generator { generator: String, horizon: usize },
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn periodic_indexing() {
        let s = SequenceSpec::Periodic {
            prefix: vec![Point::tag("p")],
            cycle: vec![Point::tag("a"), Point::tag("b")],
        };
        let t: Vec<String> = s.terms(5).iter().map(|p| p.to_string()).collect();
        assert_eq!(t, ["p", "a", "b", "a", "b"]);
    }

    #[test]
    fn explicit_stops() {
        let s = SequenceSpec::Explicit(vec![Point::int(1), Point::int(2)]);
        assert_eq!(s.terms(10).len(), 2);
        assert_eq!(s.effective_horizon(100), 2);
        assert!(s.term(3).is_none());
    }

    #[test]
    fn json_forms() {
        let a: SequenceJson = serde_json::from_str(r#"{"explicit":["1/2","a"]}"#).unwrap();
        assert_eq!(
            a,
            SequenceJson::Explicit {
                explicit: vec![Point::num(1, 2), Point::tag("a")]
            }
        );
        let g: SequenceJson = serde_json::from_str(r#"{"generator":"ex4.8.n","horizon":50}"#).unwrap();
        assert_eq!(
            g,
            SequenceJson::Generator {
                generator: "ex4.8.n".into(),
                horizon: 50
            }
        );
    }
}
