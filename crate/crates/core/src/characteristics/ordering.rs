use crate::fields::GridField2;
use crate::geometry::Vec2;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Outcome of testing `u(x)·(y-x) > 0 ⇒ u(y)·(y-x) > 0` on node pairs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrderingReport {
    pub pairs_tested: usize,
    /// Pairs with `u(x)·(y-x) < band`.
    pub excluded: usize,
    pub violations: usize,
    pub fraction: f64,
    pub band: f64,
    /// First violating pairs, at most `MAX_WITNESSES`.
    pub witnesses: Vec<(Vec2, Vec2)>,
}

const MAX_WITNESSES: usize = 32;

/// Checks the ordering principle on node index pairs. Pairs whose
/// projection `u(x)·(y-x)` is below `band` are excluded, so each unordered
/// pair should be listed in both orders.
pub fn ordering_check(u: &GridField2, pairs: &[(usize, usize)], band: f64) -> OrderingReport {
    let (mut tested, mut excluded, mut violations) = (0, 0, 0);
    let mut witnesses = Vec::new();
    for &(a, b) in pairs {
        let x = u.spec.node_at(a);
        let y = u.spec.node_at(b);
        let d = y - x;
        let pa = u.values[a].dot(d);
        if pa < band {
            excluded += 1;
            continue;
        }
        tested += 1;
        if u.values[b].dot(d) <= 0.0 {
            violations += 1;
            if witnesses.len() < MAX_WITNESSES {
                witnesses.push((x, y));
            }
        }
    }
    OrderingReport {
        pairs_tested: tested,
        excluded,
        violations,
        fraction: if tested > 0 {
            violations as f64 / tested as f64
        } else {
            0.0
        },
        band,
        witnesses,
    }
}

/// All ordered pairs of distinct nodes among `idx`.
pub fn grid_pairs(idx: &[usize]) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(idx.len() * idx.len().saturating_sub(1));
    for &a in idx {
        for &b in idx {
            if a != b {
                out.push((a, b));
            }
        }
    }
    out
}

/// `count` seeded random distinct pairs among the nodes `idx`.
pub fn random_pairs(idx: &[usize], count: usize, seed: u64) -> Vec<(usize, usize)> {
    if idx.len() < 2 {
        return Vec::new();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let a = rng.gen_range(0..idx.len());
            let mut b = rng.gen_range(0..idx.len() - 1);
            if b >= a {
                b += 1;
            }
            (idx[a], idx[b])
        })
        .collect()
}
