use num_complex::Complex64;
use rayon::prelude::*;

use crate::rng::SplitMix64;

/// Outcome of the three-key depolarizer search.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchReport {
    /// Number of Euler-grid unitaries per slot.
    pub grid_size: usize,
    /// Channels `{I, U₂, U₃}` evaluated exhaustively.
    pub evaluated: usize,
    /// Smallest max-entry distance to the depolarizing process matrix.
    pub min_max_entry: f64,
    /// Smallest Frobenius distance over the same channels.
    pub min_frobenius: f64,
    /// Extra channels with all three unitaries drawn from the grid.
    pub sampled: usize,
    pub sampled_min_max_entry: f64,
}

/// `Rz(α) Ry(β) Rz(γ)` as its process-matrix vector
/// `[U₀₀, U₁₀, U₀₁, U₁₁]` (block `(x, y)` of `w w†` is `U|x⟩⟨y|U†`).
fn euler_vector(alpha: f64, beta: f64, gamma: f64) -> [Complex64; 4] {
    let (c, s) = ((beta / 2.0).cos(), (beta / 2.0).sin());
    let ph = |t: f64| Complex64::from_polar(1.0, t);
    let u00 = ph(-(alpha + gamma) / 2.0) * c;
    let u01 = -ph(-(alpha - gamma) / 2.0) * s;
    let u10 = ph((alpha - gamma) / 2.0) * s;
    let u11 = ph((alpha + gamma) / 2.0) * c;
    [u00, u10, u01, u11]
}

/// All unitaries with `α, γ ∈ {kπ/d : 0 ≤ k < 2d}` and `β ∈ {kπ/d : 0 ≤ k ≤ d}`.
fn euler_grid(divisions: usize) -> Vec<[Complex64; 4]> {
    let step = std::f64::consts::PI / divisions as f64;
    let mut out = Vec::with_capacity(4 * divisions * divisions * (divisions + 1));
    for a in 0..2 * divisions {
        for b in 0..=divisions {
            for g in 0..2 * divisions {
                out.push(euler_vector(a as f64 * step, b as f64 * step, g as f64 * step));
            }
        }
    }
    out
}

/// `(w₁w₁† + w₂w₂†)/3 − I₄/2`, upper triangle in row order.
fn partial_sum(a: &[Complex64; 4], b: &[Complex64; 4]) -> [Complex64; 10] {
    let mut out = [Complex64::new(0.0, 0.0); 10];
    let mut k = 0;
    for r in 0..4 {
        for c in r..4 {
            out[k] = (a[r] * a[c].conj() + b[r] * b[c].conj()) / 3.0;
            if r == c {
                out[k] -= 0.5;
            }
            k += 1;
        }
    }
    out
}

/// Distances of `partial + w w†/3` from zero: (max entry, Frobenius).
fn distances_with(partial: &[Complex64; 10], w: &[Complex64; 4]) -> (f64, f64) {
    let mut max_sq = 0.0f64;
    let mut frob = 0.0f64;
    let mut k = 0;
    for r in 0..4 {
        let wr = w[r] / 3.0;
        for c in r..4 {
            let a = (partial[k] + wr * w[c].conj()).norm_sqr();
            max_sq = max_sq.max(a);
            frob += if r == c { a } else { 2.0 * a };
            k += 1;
        }
    }
    (max_sq.sqrt(), frob.sqrt())
}

/// Entry-wise distances of `(w₁w₁† + w₂w₂† + w₃w₃†)/3` from `I₄/2`:
/// returns (max entry, Frobenius).
fn distances(ws: [&[Complex64; 4]; 3]) -> (f64, f64) {
    distances_with(&partial_sum(ws[0], ws[1]), ws[2])
}

const SAMPLED_TRIPLES: usize = 1_000_000;
const SAMPLE_SEED: u64 = 0xDE9_01A5;

/// Brute-force search for a uniform three-key single-qubit channel close to
/// the depolarizing channel `ρ ↦ I/2`.
///
/// The first unitary is fixed to the identity: composing a channel with a
/// unitary after its output leaves the depolarizing channel unchanged, and
/// the Frobenius distance between process matrices is invariant under it.
/// The second and third range over every unordered pair (repeats allowed) of
/// the Euler grid with step `π/divisions`. A further batch of fully random
/// grid triples is checked for the max-entry distance.
///
/// No three-key channel can be depolarizing; in fact the squared Frobenius
/// distance is `(3 + 2Σ_{i<j}|Tr(Uᵢ†Uⱼ)|²)/9 ≥ 1/3`.
pub fn search_three_term_depolarizers(divisions: usize) -> SearchReport {
    let grid = euler_grid(divisions.max(1));
    let identity = euler_vector(0.0, 0.0, 0.0);
    let g = grid.len();

    let (evaluated, min_max_entry, min_frobenius) = (0..g)
        .into_par_iter()
        .map(|j| {
            let partial = partial_sum(&identity, &grid[j]);
            let mut best = (0usize, f64::INFINITY, f64::INFINITY);
            for k in j..g {
                let (m, f) = distances_with(&partial, &grid[k]);
                best = (best.0 + 1, best.1.min(m), best.2.min(f));
            }
            best
        })
        .reduce(
            || (0, f64::INFINITY, f64::INFINITY),
            |a, b| (a.0 + b.0, a.1.min(b.1), a.2.min(b.2)),
        );

    let mut rng = SplitMix64::new(SAMPLE_SEED);
    let mut sampled_min_max_entry = f64::INFINITY;
    for _ in 0..SAMPLED_TRIPLES {
        let t = [
            &grid[rng.next_below(g)],
            &grid[rng.next_below(g)],
            &grid[rng.next_below(g)],
        ];
        sampled_min_max_entry = sampled_min_max_entry.min(distances(t).0);
    }

    SearchReport {
        grid_size: g,
        evaluated,
        min_max_entry,
        min_frobenius,
        sampled: SAMPLED_TRIPLES,
        sampled_min_max_entry,
    }
}
