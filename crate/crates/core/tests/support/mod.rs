//! Brute-force reference implementations used by the acceptance suite.
//!
//! Everything here works on dense vectors of length 2^n indexed by subset
//! bits and enumerates the full power set with no sparsity, no shared code
//! paths and no reuse of the library's combination logic, so agreement
//! between the two is meaningful evidence rather than a tautology.

#![allow(dead_code)]

use crowd_belief::{Frame, MassFunction, ProductFrame, SubsetMask};
use rand::Rng;

/// A mass function as a dense vector: `m[s]` is the mass of the subset
/// whose bits are `s`.
#[derive(Clone, Debug)]
pub struct Dense {
    pub n: usize,
    pub m: Vec<f64>,
}

impl Dense {
    pub fn zero(n: usize) -> Self {
        Dense {
            n,
            m: vec![0.0; 1 << n],
        }
    }

    pub fn from_mass(mf: &MassFunction) -> Self {
        let mut out = Dense::zero(mf.frame().len());
        for (mask, value) in mf.focals() {
            out.m[mask.bits() as usize] += value;
        }
        out
    }

    /// Largest absolute entry-wise difference against a library mass.
    pub fn max_deviation(&self, mf: &MassFunction) -> f64 {
        let other = Dense::from_mass(mf);
        assert_eq!(self.n, other.n, "frame sizes differ");
        self.m
            .iter()
            .zip(&other.m)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// S-ary conjunctive combination by direct enumeration of every tuple of
/// subsets, one from each source, accumulating the product mass on the
/// tuple's intersection.
pub fn conjunctive(sources: &[Dense]) -> Dense {
    let n = sources[0].n;
    let full = (1usize << n) - 1;
    let mut out = Dense::zero(n);
    fn recurse(sources: &[Dense], inter: usize, weight: f64, out: &mut [f64]) {
        match sources {
            [] => out[inter] += weight,
            [head, rest @ ..] => {
                for (s, &w) in head.m.iter().enumerate() {
                    if w != 0.0 {
                        recurse(rest, inter & s, weight * w, out);
                    }
                }
            }
        }
    }
    recurse(sources, full, 1.0, &mut out.m);
    out
}

/// Conjunctive combination with the conflict moved to the full set.
pub fn yager(sources: &[Dense]) -> Dense {
    let mut out = conjunctive(sources);
    let full = out.m.len() - 1;
    out.m[full] += out.m[0];
    out.m[0] = 0.0;
    out
}

/// Bits of the cylinder of a left-factor subset in the joint frame, where
/// the pair (i, j) sits at bit i*n_right + j.
fn cylinder_left(left_bits: usize, n_left: usize, n_right: usize) -> usize {
    let mut out = 0usize;
    for i in 0..n_left {
        if left_bits >> i & 1 == 1 {
            for j in 0..n_right {
                out |= 1 << (i * n_right + j);
            }
        }
    }
    out
}

fn cylinder_right(right_bits: usize, n_left: usize, n_right: usize) -> usize {
    let mut out = 0usize;
    for j in 0..n_right {
        if right_bits >> j & 1 == 1 {
            for i in 0..n_left {
                out |= 1 << (i * n_right + j);
            }
        }
    }
    out
}

/// Vacuous extension of a left-factor mass onto the joint frame.
pub fn extend_left(mass: &Dense, n_right: usize) -> Dense {
    let n_left = mass.n;
    let mut out = Dense::zero(n_left * n_right);
    for (s, &w) in mass.m.iter().enumerate() {
        out.m[cylinder_left(s, n_left, n_right)] += w;
    }
    out
}

pub fn extend_right(mass: &Dense, n_left: usize) -> Dense {
    let n_right = mass.n;
    let mut out = Dense::zero(n_left * n_right);
    for (s, &w) in mass.m.iter().enumerate() {
        out.m[cylinder_right(s, n_left, n_right)] += w;
    }
    out
}

/// Projection of a joint-frame mass onto the left factor: an element i is
/// in the projection of S iff some pair (i, j) is in S.
pub fn marginal_left(joint: &Dense, n_left: usize, n_right: usize) -> Dense {
    assert_eq!(joint.n, n_left * n_right);
    let mut out = Dense::zero(n_left);
    for (s, &w) in joint.m.iter().enumerate() {
        let mut proj = 0usize;
        for i in 0..n_left {
            for j in 0..n_right {
                if s >> (i * n_right + j) & 1 == 1 {
                    proj |= 1 << i;
                }
            }
        }
        out.m[proj] += w;
    }
    out
}

pub fn marginal_right(joint: &Dense, n_left: usize, n_right: usize) -> Dense {
    assert_eq!(joint.n, n_left * n_right);
    let mut out = Dense::zero(n_right);
    for (s, &w) in joint.m.iter().enumerate() {
        let mut proj = 0usize;
        for i in 0..n_left {
            for j in 0..n_right {
                if s >> (i * n_right + j) & 1 == 1 {
                    proj |= 1 << j;
                }
            }
        }
        out.m[proj] += w;
    }
    out
}

/// Pignistic probabilities, or None when all mass sits on the empty set.
pub fn pignistic(mass: &Dense) -> Option<Vec<f64>> {
    let scale = 1.0 - mass.m[0];
    if scale <= 0.0 {
        return None;
    }
    let mut p = vec![0.0; mass.n];
    for (s, &w) in mass.m.iter().enumerate().skip(1) {
        let size = (s as u32).count_ones() as f64;
        for (i, slot) in p.iter_mut().enumerate() {
            if s >> i & 1 == 1 {
                *slot += w / size / scale;
            }
        }
    }
    Some(p)
}

/// Jousselme distance via the full 2^n x 2^n Jaccard matrix.
pub fn jousselme(a: &Dense, b: &Dense) -> f64 {
    assert_eq!(a.n, b.n);
    let size = 1usize << a.n;
    let diff: Vec<f64> = (0..size).map(|s| a.m[s] - b.m[s]).collect();
    let jaccard = |x: usize, y: usize| -> f64 {
        if x == y {
            1.0
        } else if x == 0 || y == 0 {
            0.0
        } else {
            (x & y).count_ones() as f64 / (x | y).count_ones() as f64
        }
    };
    let mut quad = 0.0;
    for (x, dx) in diff.iter().enumerate() {
        for (y, dy) in diff.iter().enumerate() {
            quad += dx * jaccard(x, y) * dy;
        }
    }
    (0.5 * quad).max(0.0).sqrt()
}

/// Specificity 1 - sum m(X) log2|X| / log2 n over non-empty subsets.
pub fn specificity(mass: &Dense) -> f64 {
    let denom = (mass.n as f64).log2();
    let spread: f64 = mass
        .m
        .iter()
        .enumerate()
        .skip(1)
        .map(|(s, &w)| w * ((s as u32).count_ones() as f64).log2())
        .sum();
    1.0 - spread / denom
}

/// Random normalized mass on a frame: up to `max_focals` distinct subsets
/// with uniform weights scaled to sum 1. `allow_empty` admits the empty
/// set as a focal, as arises in unnormalized combination results.
pub fn random_mass<R: Rng>(rng: &mut R, frame: &Frame, allow_empty: bool) -> MassFunction {
    let size = 1u32 << frame.len();
    let k = rng.random_range(1..=4usize);
    let mut pairs: Vec<(SubsetMask, f64)> = Vec::with_capacity(k);
    for _ in 0..k {
        let bits = if allow_empty && rng.random_range(0..8) == 0 {
            0
        } else {
            rng.random_range(1..size)
        };
        pairs.push((
            SubsetMask::from_bits(bits as u16),
            rng.random_range(0.05..1.0),
        ));
    }
    let total: f64 = pairs.iter().map(|(_, w)| w).sum();
    for pair in &mut pairs {
        pair.1 /= total;
    }
    MassFunction::from_masses(frame.clone(), pairs).expect("normalized by construction")
}

/// Random mass on the joint frame of a product.
pub fn random_joint_mass<R: Rng>(rng: &mut R, product: &ProductFrame) -> MassFunction {
    random_mass(rng, product.joint(), false)
}

pub fn grades(n: usize) -> Frame {
    Frame::grades(n).expect("small frames are valid")
}
