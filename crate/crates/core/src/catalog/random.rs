//! Random finite partial metric spaces.
//!
//! Construction: a random metric `d` (shortest-path closure of a complete
//! graph with positive rational weights), a nonnegative weight `f` that is
//! 1-Lipschitz for `d`, and `p(x,y) = (d(x,y) + f(x) + f(y)) / 2`. Such `p`
//! always satisfies the partial metric axioms, so no rejection loop is needed.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{PmError, Result};
use crate::point::Point;
use crate::rational::{min_of, q, Rational};
use crate::space::FinitePMSpace;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RandomOptions {
    /// Force `f ≡ 0`, producing `d/2`, a metric.
    pub metric_only: bool,
}

/// Random metric on `n` points: Floyd-Warshall closure of random weights.
#[allow(clippy::needless_range_loop)]
pub fn random_metric(rng: &mut ChaCha8Rng, n: usize) -> Vec<Vec<Rational>> {
    let dens = [1i64, 2, 3, 4, 6];
    let mut d = vec![vec![Rational::zero(); n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let w = q(rng.gen_range(1..=12), dens[rng.gen_range(0..dens.len())]);
            d[i][j] = w.clone();
            d[j][i] = w;
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = &d[i][k] + &d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    d
}

pub fn random_pm_space(seed: u64, n: usize) -> Result<FinitePMSpace> {
    random_pm_space_with(seed, n, RandomOptions::default())
}

pub fn random_metric_space(seed: u64, n: usize) -> Result<FinitePMSpace> {
    random_pm_space_with(seed, n, RandomOptions { metric_only: true })
}

pub fn random_pm_space_with(seed: u64, n: usize, opts: RandomOptions) -> Result<FinitePMSpace> {
    if n == 0 {
        return Err(PmError::Argument("random space needs at least one point".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = random_metric(&mut rng, n);

    // f = scale * dist(., anchors) + offset. With scale < 1 distinct points
    // stay separated (the ball topology is T1); scale = 1 allows p(x,y) =
    // p(x,x) for x ≠ y.
    let f: Vec<Rational> = if opts.metric_only {
        vec![Rational::zero(); n]
    } else {
        let anchor_count = rng.gen_range(1..=n.min(3));
        let anchors = sample(&mut rng, n, anchor_count).into_vec();
        let scale = q([0, 1, 2][rng.gen_range(0..3)], 2);
        let offset = q(rng.gen_range(0..=6), rng.gen_range(1..=3));
        (0..n)
            .map(|i| {
                let to_anchor = anchors
                    .iter()
                    .map(|&a| d[i][a].clone())
                    .reduce(|a, b| min_of(&a, &b))
                    .unwrap();
                &scale * &to_anchor + &offset
            })
            .collect()
    };

    let half = q(1, 2);
    let points: Vec<Point> = (0..n).map(|i| Point::Tag(format!("v{i}"))).collect();
    let matrix = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (&d[i][j] + &f[i] + &f[j]) * &half)
                .collect()
        })
        .collect();
    Ok(FinitePMSpace::new(points, matrix)?.named(&format!("random(seed={seed}, n={n})")))
}
