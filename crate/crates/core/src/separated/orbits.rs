use std::cmp::Ordering;

use num::{BigInt, Integer, One, ToPrimitive};
use rayon::prelude::*;

use crate::circle::{circle_dist, CirclePoint};
use crate::dynamics::PLCircleMap;
use crate::rational::Rational;

// Largest common denominator handled with machine integers. Keeps every
// product in `separated_at` below 2^127.
const FAST_DENOMINATOR_LIMIT: u64 = 1 << 62;

/// Orbits of a point list, evaluated once and queried per pair.
///
/// When all orbit points share a common denominator below 2^62 and the
/// threshold fits in 64 bits, distances are compared as exact integers
/// over that denominator. Otherwise every query goes through `Rational`.
/// Both routes give identical answers.
pub struct OrbitTable {
    n: usize,
    eps: Rational,
    points: Vec<Vec<CirclePoint>>,
    fast: Option<Lattice>,
}

struct Lattice {
    den: u64,
    nums: Vec<u64>,
    eps_num: u128,
    eps_den: u128,
}

impl Lattice {
    fn build(points: &[Vec<CirclePoint>], eps: &Rational) -> Option<Lattice> {
        if eps.numer() < &BigInt::from(0) {
            return None;
        }
        let eps_num = eps.numer().to_u64()? as u128;
        let eps_den = eps.denom().to_u64()? as u128;
        let mut den = BigInt::one();
        let limit = BigInt::from(FAST_DENOMINATOR_LIMIT);
        for p in points.iter().flatten() {
            den = den.lcm(p.value().denom());
            if den > limit {
                return None;
            }
        }
        let den_u = den.to_u64()?;
        let nums = points
            .iter()
            .flatten()
            .map(|p| {
                let v = p.value();
                (v.numer() * (&den / v.denom())).to_u64()
            })
            .collect::<Option<Vec<u64>>>()?;
        Some(Lattice {
            den: den_u,
            nums,
            eps_num,
            eps_den,
        })
    }

    fn dist_num(&self, a: u64, b: u64) -> u64 {
        let diff = a.abs_diff(b);
        diff.min(self.den - diff)
    }
}

impl OrbitTable {
    /// Panics if `n == 0`.
    pub fn new(map: &PLCircleMap, points: &[CirclePoint], n: usize, eps: &Rational) -> Self {
        assert!(n >= 1, "separation needs n >= 1");
        let orbits: Vec<Vec<CirclePoint>> = points
            .par_iter()
            .map(|x| map.iterate(x, n).points().to_vec())
            .collect();
        let fast = Lattice::build(&orbits, eps);
        OrbitTable {
            n,
            eps: eps.clone(),
            points: orbits,
            fast,
        }
    }

    /// Same table without the integer route, for cross-checking.
    pub fn without_fast_path(mut self) -> Self {
        self.fast = None;
        self
    }

    pub fn has_fast_path(&self) -> bool {
        self.fast.is_some()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn eps(&self) -> &Rational {
        &self.eps
    }

    pub fn orbit(&self, i: usize) -> &[CirclePoint] {
        &self.points[i]
    }

    /// `d(f^step x_i, f^step x_j)`.
    pub fn dist_at(&self, i: usize, j: usize, step: usize) -> Rational {
        match &self.fast {
            Some(l) => {
                let d = l.dist_num(l.nums[i * self.n + step], l.nums[j * self.n + step]);
                Rational::new(d.into(), l.den.into())
            }
            None => circle_dist(&self.points[i][step], &self.points[j][step]),
        }
    }

    /// Compares `d(f^k x_i, f^k x_j)` for two `(i, j, k)` triples.
    pub fn cmp_dist_at(&self, a: (usize, usize, usize), b: (usize, usize, usize)) -> Ordering {
        match &self.fast {
            Some(l) => {
                let at = |(i, j, k): (usize, usize, usize)| {
                    l.dist_num(l.nums[i * self.n + k], l.nums[j * self.n + k])
                };
                at(a).cmp(&at(b))
            }
            None => self
                .dist_at(a.0, a.1, a.2)
                .cmp(&self.dist_at(b.0, b.1, b.2)),
        }
    }

    fn separated_at(&self, i: usize, j: usize, step: usize) -> bool {
        match &self.fast {
            Some(l) => {
                let d = l.dist_num(l.nums[i * self.n + step], l.nums[j * self.n + step]) as u128;
                d * l.eps_den > l.eps_num * l.den as u128
            }
            None => circle_dist(&self.points[i][step], &self.points[j][step]) > self.eps,
        }
    }

    /// Least `step < n` at which the two orbits are more than `eps` apart.
    pub fn least_index(&self, i: usize, j: usize) -> Option<usize> {
        (0..self.n).find(|&step| self.separated_at(i, j, step))
    }

    /// Bowen distance `d_n(x_i, x_j)`.
    pub fn bowen_dist(&self, i: usize, j: usize) -> Rational {
        (0..self.n)
            .map(|step| self.dist_at(i, j, step))
            .max()
            .expect("n >= 1")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn fast_and_slow_agree_on_dyadic_grid() {
        let f2 = PLCircleMap::times_p(2).unwrap();
        let pts: Vec<CirclePoint> = (0..32).map(|i| CirclePoint::from_ratio(i, 32)).collect();
        let fast = OrbitTable::new(&f2, &pts, 5, &ratio(1, 3));
        assert!(fast.has_fast_path());
        let slow = OrbitTable::new(&f2, &pts, 5, &ratio(1, 3)).without_fast_path();
        for i in 0..32 {
            for j in i + 1..32 {
                assert_eq!(fast.least_index(i, j), slow.least_index(i, j));
                assert_eq!(fast.bowen_dist(i, j), slow.bowen_dist(i, j));
            }
        }
    }

    #[test]
    fn huge_denominators_fall_back() {
        let f3 = PLCircleMap::times_p(3).unwrap();
        let pts = vec![
            CirclePoint::from_ratio(1, 1_000_000_007),
            CirclePoint::from_ratio(1, 998_244_353),
            CirclePoint::from_ratio(1, 1_000_000_009),
        ];
        let t = OrbitTable::new(&f3, &pts, 3, &ratio(1, 3));
        assert!(!t.has_fast_path());
        assert_eq!(t.least_index(0, 1), None);
    }
}
