//! Deterministic grids and seeded random draws for bounded searches.

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::vector::{int, rat, Rat, Vector};

/// Denominator of the coarse grid used for rational domains.
pub const RATIONAL_DEN: i128 = 4;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// All multiples of `1/den` in `[lo, hi]`.
pub fn axis(lo: &Rat, hi: &Rat, den: i128) -> Vec<Rat> {
    let start = (lo * int(den)).ceil().to_integer();
    let end = (hi * int(den)).floor().to_integer();
    (start..=end).map(|k| rat(k, den)).collect()
}

/// Cartesian product of per-coordinate axes.
pub fn box_points(axes: &[Vec<Rat>]) -> Vec<Vector> {
    let mut out = vec![Vec::new()];
    for ax in axes {
        let mut next = Vec::with_capacity(out.len() * ax.len());
        for prefix in &out {
            for v in ax {
                let mut p = prefix.clone();
                p.push(*v);
                next.push(p);
            }
        }
        out = next;
    }
    out.into_iter().map(Vector::new).collect()
}

/// Box `[min(0,uᵢ) − w, max(0,uᵢ) + w]` around the segment from 0 to `u`.
pub fn window_box(u: &Vector, window: i128, den: i128) -> Vec<Vector> {
    let w = int(window);
    let axes: Vec<Vec<Rat>> = u
        .coords()
        .iter()
        .map(|c| {
            let lo = if c < &Rat::zero() { *c } else { Rat::zero() } - w;
            let hi = if c > &Rat::zero() { *c } else { Rat::zero() } + w;
            axis(&lo, &hi, den)
        })
        .collect();
    box_points(&axes)
}

/// Draws `n` ordered pairs from `points` (with replacement).
pub fn pairs<T: Clone>(points: &[T], n: usize, rng: &mut impl Rng) -> Vec<(T, T)> {
    if points.is_empty() {
        return Vec::new();
    }
    (0..n)
        .map(|_| {
            let a = points.choose(rng).unwrap().clone();
            let b = points.choose(rng).unwrap().clone();
            (a, b)
        })
        .collect()
}

/// Up to `n` distinct elements, all of them when `points` is small.
pub fn subset<T: Clone>(points: &[T], n: usize, rng: &mut impl Rng) -> Vec<T> {
    if points.len() <= n {
        return points.to_vec();
    }
    points.choose_multiple(rng, n).cloned().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axis_is_inclusive() {
        let a = axis(&int(-1), &int(1), 2);
        assert_eq!(a.len(), 5);
        assert_eq!(a[1], rat(-1, 2));
    }

    #[test]
    fn window_box_covers_unit() {
        let pts = window_box(&Vector::from_ints(&[1, 0]), 1, 1);
        assert_eq!(pts.len(), 4 * 3);
        assert!(pts.contains(&Vector::from_ints(&[2, -1])));
    }

    #[test]
    fn draws_are_seeded() {
        let pts: Vec<u32> = (0..50).collect();
        let a = pairs(&pts, 10, &mut rng(7));
        let b = pairs(&pts, 10, &mut rng(7));
        assert_eq!(a, b);
    }
}
