//! Grid-plus-refinement searches over time.
//!
//! The grid is walked in fixed chunks. Each chunk re-anchors its phasors
//! with one direct evaluation and then advances them by multiplication, so
//! rounding does not accumulate across a long horizon. A chunk keeps its
//! best local extrema; the survivors are refined by golden-section search.
//! Chunk boundaries do not depend on the executor, so results are identical
//! for sequential and parallel runs.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::evolution::TransitionAmplitude;
use super::QuantumState;
use crate::exec::Exec;
use crate::optimize::golden_section_maximize;
use crate::spectral::SpectralData;

const CHUNK: usize = 1 << 13;
const CHUNKS_PER_BATCH: usize = 64;
const MAX_SAMPLES: usize = 256;

#[derive(Debug, Clone, Copy)]
pub struct SearchOptions {
    pub horizon: f64,
    pub threshold: f64,
    /// Local maxima per chunk kept for refinement.
    pub top_k: usize,
    /// Stop after the first batch of chunks whose best value reaches
    /// `threshold`.
    pub stop_on_threshold: bool,
    pub exec: Exec,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { horizon: 1e4, threshold: 0.999, top_k: 8, stop_on_threshold: false, exec: Exec::default() }
    }
}

/// Best fidelity found by [`pgst_evidence`]. Never a proof of anything.
#[derive(Debug, Clone, PartialEq)]
pub struct PgstEvidence {
    pub peak_fidelity: f64,
    pub peak_time: f64,
    pub threshold: f64,
    pub reached_threshold: bool,
    /// End of the scanned interval; less than the horizon after an early stop.
    pub scanned_to: f64,
    pub grid_step: f64,
    /// Downsampled `(t, fidelity)` grid values for plotting.
    pub samples: Vec<(f64, f64)>,
}

/// Grid estimate of `inf_{0 < t <= T} |U(t)_{aa}|`; an upper bound on the
/// true infimum.
#[derive(Debug, Clone, PartialEq)]
pub struct SedentaryEstimate {
    pub infimum_estimate: f64,
    pub time: f64,
    pub horizon: f64,
    pub grid_step: f64,
}

#[derive(Debug, Clone, Copy)]
enum Objective {
    Fidelity,
    /// Maximizes `-|amplitude|`.
    NegModulus,
}

impl Objective {
    fn score(self, z: Complex64) -> f64 {
        match self {
            Objective::Fidelity => z.norm_sqr().min(1.0),
            Objective::NegModulus => -z.norm(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Candidate {
    score: f64,
    time: f64,
}

fn better(a: &Candidate, b: &Candidate) -> bool {
    a.score > b.score || (a.score == b.score && a.time < b.time)
}

fn push_top(top: &mut Vec<Candidate>, c: Candidate, k: usize) {
    let pos = top.iter().position(|x| better(&c, x)).unwrap_or(top.len());
    if pos < k {
        top.insert(pos, c);
        top.truncate(k);
    }
}

struct ChunkResult {
    top: Vec<Candidate>,
    samples: Vec<(f64, f64)>,
}

struct Grid<'a> {
    amp: &'a TransitionAmplitude,
    objective: Objective,
    step: f64,
    points: usize,
    top_k: usize,
    sample_stride: usize,
}

impl Grid<'_> {
    fn time(&self, j: usize) -> f64 {
        j as f64 * self.step
    }

    fn score_at(&self, t: f64) -> f64 {
        self.objective.score(self.amp.amplitude(t))
    }

    /// Grid points `lo..hi` (1-based indices into `step, 2 step, ...`).
    fn chunk(&self, lo: usize, hi: usize) -> ChunkResult {
        let t0 = self.time(lo);
        let mut phasors: Vec<Complex64> =
            self.amp.lambdas.iter().zip(&self.amp.weights).map(|(&l, w)| w * Complex64::from_polar(1.0, t0 * l)).collect();
        let rot: Vec<Complex64> = self.amp.lambdas.iter().map(|&l| Complex64::from_polar(1.0, self.step * l)).collect();
        let mut prev = if lo > 1 { self.score_at(self.time(lo - 1)) } else { f64::NEG_INFINITY };
        let mut top = Vec::with_capacity(self.top_k + 1);
        let mut samples = Vec::new();
        let mut cur = self.objective.score(phasors.iter().sum());
        for j in lo..hi {
            for (p, r) in phasors.iter_mut().zip(&rot) {
                *p *= r;
            }
            let next = if j + 1 < hi {
                self.objective.score(phasors.iter().sum())
            } else if j < self.points {
                self.score_at(self.time(j + 1))
            } else {
                f64::NEG_INFINITY
            };
            if cur >= prev && cur >= next {
                push_top(&mut top, Candidate { score: cur, time: self.time(j) }, self.top_k);
            }
            if j % self.sample_stride == 0 {
                samples.push((self.time(j), cur));
            }
            prev = cur;
            cur = next;
        }
        ChunkResult { top, samples }
    }

    fn refine(&self, c: Candidate, horizon: f64) -> Candidate {
        let lo = (c.time - self.step).max(0.0);
        let hi = (c.time + self.step).min(horizon);
        let (t, s) = golden_section_maximize(|t| self.score_at(t), lo, hi, 1e-13 * c.time.max(1.0), 200);
        let t = if t <= 0.0 { c.time } else { t };
        if s >= c.score {
            Candidate { score: s, time: t }
        } else {
            c
        }
    }
}

struct ScanResult {
    best: Candidate,
    scanned_to: f64,
    step: f64,
    samples: Vec<(f64, f64)>,
}

fn scan(amp: &TransitionAmplitude, objective: Objective, step: f64, opts: &SearchOptions) -> ScanResult {
    let horizon = opts.horizon.max(step);
    let points = (horizon / step).ceil() as usize;
    let step = horizon / points as f64;
    let sample_stride = points.div_ceil(MAX_SAMPLES).max(1);
    let grid = Grid { amp, objective, step, points, top_k: opts.top_k.max(1), sample_stride };
    let chunks: Vec<(usize, usize)> = (0..points.div_ceil(CHUNK)).map(|c| (c * CHUNK + 1, ((c + 1) * CHUNK).min(points) + 1)).collect();

    let mut top: Vec<Candidate> = Vec::new();
    let mut samples = Vec::new();
    let mut scanned_to = 0.0;
    let batch = if opts.stop_on_threshold { CHUNKS_PER_BATCH } else { chunks.len().max(1) };
    for group in chunks.chunks(batch) {
        let results = opts.exec.map(group, |&(lo, hi)| grid.chunk(lo, hi));
        for r in results {
            for c in r.top {
                push_top(&mut top, c, grid.top_k);
            }
            samples.extend(r.samples);
        }
        scanned_to = grid.time(group.last().map(|c| c.1 - 1).unwrap_or(0));
        if opts.stop_on_threshold && top.first().is_some_and(|c| c.score >= opts.threshold) {
            break;
        }
    }
    let refined: Vec<Candidate> = opts.exec.map(&top, |&c| grid.refine(c, horizon));
    let mut best = Candidate { score: f64::NEG_INFINITY, time: step };
    for c in refined {
        if better(&c, &best) {
            best = c;
        }
    }
    ScanResult { best, scanned_to, step, samples }
}

/// Largest fidelity found for transfer between the two states of `amp` over
/// `(0, horizon]`, on a grid of step `pi / (50 lambda_max)`.
pub fn pgst_evidence(amp: &TransitionAmplitude, opts: &SearchOptions) -> PgstEvidence {
    let step = PI / (50.0 * amp.bandwidth().max(1.0));
    let r = scan(amp, Objective::Fidelity, step, opts);
    PgstEvidence {
        peak_fidelity: r.best.score,
        peak_time: r.best.time,
        threshold: opts.threshold,
        reached_threshold: r.best.score >= opts.threshold,
        scanned_to: r.scanned_to,
        grid_step: r.step,
        samples: r.samples,
    }
}

/// [`pgst_evidence`] for a pair of states.
pub fn pgst_evidence_for(spec: &SpectralData, source: &QuantumState, target: &QuantumState, opts: &SearchOptions) -> PgstEvidence {
    pgst_evidence(&TransitionAmplitude::new(spec, source, target), opts)
}

/// Grid minimum of `|U(t)_{aa}|` over `(0, horizon]` with step
/// `pi / (100 lambda_max)`, refined locally.
pub fn sedentary_bound(spec: &SpectralData, a: usize, horizon: f64, exec: Exec) -> SedentaryEstimate {
    let e = QuantumState::vertex(spec.n(), a).expect("vertex in range");
    let amp = TransitionAmplitude::new(spec, &e, &e);
    let step = PI / (100.0 * spec.spectral_radius().max(1.0));
    let opts = SearchOptions { horizon, exec, ..SearchOptions::default() };
    let r = scan(&amp, Objective::NegModulus, step, &opts);
    SedentaryEstimate { infimum_estimate: -r.best.score, time: r.best.time, horizon, grid_step: r.step }
}
