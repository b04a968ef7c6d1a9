use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::point::Point;

type MapFn = Arc<dyn Fn(&Point) -> Option<Point> + Send + Sync>;

/// A self-map of a space.
///
/// `apply` returns `None` for inputs outside the map's domain. `closed`
/// records whether the image is declared to stay inside the space; callers
/// still verify membership before trusting an image.
#[derive(Clone)]
pub struct MapSpec {
    name: String,
    f: MapFn,
    closed: bool,
}

impl fmt::Debug for MapSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MapSpec").field("name", &self.name).finish()
    }
}

impl MapSpec {
    pub fn new<F>(name: &str, f: F) -> Self
    where
        F: Fn(&Point) -> Option<Point> + Send + Sync + 'static,
    {
        MapSpec {
            name: name.to_string(),
            f: Arc::new(f),
            closed: true,
        }
    }

    pub fn identity() -> Self {
        MapSpec::new("id", |x| Some(x.clone()))
    }

    /// `T_z(x) = z`.
    pub fn constant(z: Point) -> Self {
        let name = format!("const.{z}");
        MapSpec::new(&name, move |_| Some(z.clone()))
    }

    /// Table-backed map; undefined outside the listed inputs.
    pub fn from_table(name: &str, table: Vec<(Point, Point)>) -> Self {
        let lookup: HashMap<Point, Point> = table.into_iter().collect();
        MapSpec::new(name, move |x| lookup.get(x).cloned())
    }

    pub fn renamed(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    pub fn with_closed(mut self, closed: bool) -> Self {
        self.closed = closed;
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn closed(&self) -> bool {
        self.closed
    }

    pub fn apply(&self, x: &Point) -> Option<Point> {
        (self.f)(x)
    }

    /// `T^k(x)`; `k = 0` is the identity.
    pub fn apply_n(&self, x: &Point, k: usize) -> Option<Point> {
        let mut cur = x.clone();
        for _ in 0..k {
            cur = self.apply(&cur)?;
        }
        Some(cur)
    }
}
