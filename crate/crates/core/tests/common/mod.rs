//! Test oracles. Nothing here calls into the library's evaluation,
//! probability or update code; sentences are walked directly and worlds are
//! enumerated as explicit name-to-value maps.

#![allow(dead_code)]

use std::collections::HashMap;

use beliefrev::Sentence;
use rand::Rng;

pub type Assignment = HashMap<String, bool>;

/// All assignments over `atoms`, in the library's documented order
/// (binary counting, first atom most significant).
pub fn assignments(atoms: &[&str]) -> Vec<Assignment> {
    let n = atoms.len();
    (0..1usize << n)
        .map(|i| {
            atoms
                .iter()
                .enumerate()
                .map(|(j, a)| (a.to_string(), (i >> (n - 1 - j)) & 1 == 1))
                .collect()
        })
        .collect()
}

pub fn holds(s: &Sentence, w: &Assignment) -> bool {
    match s {
        Sentence::True => true,
        Sentence::False => false,
        Sentence::Atom(a) => w[a.as_str()],
        Sentence::Not(x) => !holds(x, w),
        Sentence::And(a, b) => holds(a, w) && holds(b, w),
        Sentence::Or(a, b) => holds(a, w) || holds(b, w),
    }
}

/// Raw weights in canonical order; normalization happens here too.
pub fn prob(atoms: &[&str], weights: &[f64], s: &Sentence) -> f64 {
    let total: f64 = weights.iter().sum();
    assignments(atoms)
        .iter()
        .zip(weights)
        .filter(|(w, _)| holds(s, w))
        .map(|(_, p)| p / total)
        .sum()
}

pub fn conditional(atoms: &[&str], weights: &[f64], x: &Sentence, y: &Sentence) -> Option<f64> {
    let py = prob(atoms, weights, y);
    (py > 0.0).then(|| prob(atoms, weights, &x.clone().and(y.clone())) / py)
}

/// Weights after conditioning on every sentence in `evidence`.
pub fn condition_all(atoms: &[&str], weights: &[f64], evidence: &[Sentence]) -> Vec<f64> {
    let worlds = assignments(atoms);
    let kept: Vec<f64> = worlds
        .iter()
        .zip(weights)
        .map(|(w, &p)| if evidence.iter().all(|e| holds(e, w)) { p } else { 0.0 })
        .collect();
    let total: f64 = kept.iter().sum();
    kept.iter().map(|p| p / total).collect()
}

/// Soft evidence via an explicit extra atom `V`.
///
/// Builds the joint over `atoms + [V]` with `P(V | w) = α` on worlds where
/// `e` holds and `β` elsewhere, so `V` depends on the rest only through `e`,
/// picks `α, β` so that `P(e | V) = m`, conditions on `V` and sums `V` out.
pub fn extended_space_update(atoms: &[&str], weights: &[f64], e: &Sentence, m: f64) -> Vec<f64> {
    let total: f64 = weights.iter().sum();
    let worlds = assignments(atoms);
    let pe: f64 = worlds
        .iter()
        .zip(weights)
        .filter(|(w, _)| holds(e, w))
        .map(|(_, p)| p / total)
        .sum();
    let raw_alpha = if m == 0.0 { 0.0 } else { m / pe };
    let raw_beta = if m == 1.0 { 0.0 } else { (1.0 - m) / (1.0 - pe) };
    let scale = raw_alpha.max(raw_beta);
    let (alpha, beta) = (raw_alpha / scale, raw_beta / scale);

    let mut extended = atoms.to_vec();
    extended.push("__v");
    let joint: Vec<f64> = assignments(&extended)
        .iter()
        .map(|x| {
            let base_index = worlds
                .iter()
                .position(|w| atoms.iter().all(|a| w[*a] == x[*a]))
                .unwrap();
            let p = weights[base_index] / total;
            let likelihood = if holds(e, x) { alpha } else { beta };
            if x["__v"] {
                p * likelihood
            } else {
                p * (1.0 - likelihood)
            }
        })
        .collect();
    let v = Sentence::atom("__v");
    let pv = prob(&extended, &joint, &v);
    worlds
        .iter()
        .map(|w| {
            let world = Sentence::conjunction(atoms.iter().map(|a| {
                if w[*a] {
                    Sentence::atom(*a)
                } else {
                    Sentence::atom(*a).not()
                }
            }));
            prob(&extended, &joint, &world.and(v.clone())) / pv
        })
        .collect()
}

pub fn random_sentence<R: Rng>(rng: &mut R, atoms: &[&str], depth: u32) -> Sentence {
    if depth == 0 || rng.gen_bool(0.3) {
        return match rng.gen_range(0..10) {
            0 => Sentence::True,
            1 => Sentence::False,
            _ => Sentence::atom(atoms[rng.gen_range(0..atoms.len())]),
        };
    }
    match rng.gen_range(0..3) {
        0 => random_sentence(rng, atoms, depth - 1).not(),
        1 => random_sentence(rng, atoms, depth - 1).and(random_sentence(rng, atoms, depth - 1)),
        _ => random_sentence(rng, atoms, depth - 1).or(random_sentence(rng, atoms, depth - 1)),
    }
}

/// Random weights; roughly one world in five gets weight zero, but never all.
pub fn random_weights<R: Rng>(rng: &mut R, n_worlds: usize) -> Vec<f64> {
    loop {
        let w: Vec<f64> = (0..n_worlds)
            .map(|_| {
                if rng.gen_bool(0.2) {
                    0.0
                } else {
                    rng.gen_range(0.01..1.0)
                }
            })
            .collect();
        if w.iter().any(|&x| x > 0.0) {
            return w;
        }
    }
}

pub const ATOM_POOL: [&str; 3] = ["p", "q", "r"];

pub fn random_atoms<R: Rng>(rng: &mut R) -> Vec<&'static str> {
    ATOM_POOL[..rng.gen_range(1..=3)].to_vec()
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}
