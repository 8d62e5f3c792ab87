//! Corpus generators and independent oracles shared by the integration
//! suites (and by the CLI acceptance runner via `#[path]`).
#![allow(dead_code)]

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use qwalk::graph::{attach_branches, build_family, cartesian_product, disjoint_union, FamilySpec};
use qwalk::optimize::golden_section_maximize;
use qwalk::{BranchPair, Graph};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

/// Random simple-support graph with integer weights in `1..=max_w`.
pub fn random_integer_graph(r: &mut ChaCha8Rng, n: usize, p: f64, max_w: i64) -> Graph {
    let mut w = vec![0.0; n * n];
    for u in 0..n {
        for v in u + 1..n {
            if r.gen_bool(p) {
                let x = r.gen_range(1..=max_w) as f64;
                w[u * n + v] = x;
                w[v * n + u] = x;
            }
        }
    }
    Graph::from_dense(n, w, false, None).unwrap()
}

/// Random connected graph: a random spanning tree plus extra edges.
pub fn random_connected_graph(r: &mut ChaCha8Rng, n: usize, p: f64, max_w: i64) -> Graph {
    let mut w = vec![0.0; n * n];
    let mut set = |u: usize, v: usize, x: f64| {
        w[u * n + v] = x;
        w[v * n + u] = x;
    };
    for v in 1..n {
        let u = r.gen_range(0..v);
        set(u, v, r.gen_range(1..=max_w) as f64);
    }
    for u in 0..n {
        for v in u + 1..n {
            if r.gen_bool(p) {
                set(u, v, r.gen_range(1..=max_w) as f64);
            }
        }
    }
    Graph::from_dense(n, w, false, None).unwrap()
}

pub fn relabel(g: &Graph, perm: &[usize]) -> Graph {
    let n = g.n();
    let mut w = vec![0.0; n * n];
    for u in 0..n {
        for v in 0..n {
            w[perm[u] * n + perm[v]] = g.weight(u, v);
        }
    }
    Graph::from_dense(n, w, g.loops_allowed(), None).unwrap()
}

fn fam(f: FamilySpec) -> Graph {
    build_family(&f).unwrap()
}

/// Graphs on at most 8 vertices with integer spectrum, assembled from
/// integral blocks by Cartesian products and disjoint unions, then randomly
/// relabelled.
pub fn integer_spectrum_graph(r: &mut ChaCha8Rng) -> Graph {
    let blocks = [
        fam(FamilySpec::Complete(1)),
        fam(FamilySpec::Complete(2)),
        fam(FamilySpec::Complete(3)),
        fam(FamilySpec::Complete(4)),
        fam(FamilySpec::Cycle(4)),
        fam(FamilySpec::Cycle(6)),
        fam(FamilySpec::Star(4)),
    ];
    loop {
        let mut g = blocks[r.gen_range(1..blocks.len())].clone();
        for _ in 0..3 {
            let h = &blocks[r.gen_range(0..blocks.len())];
            let cand = if r.gen_bool(0.5) { cartesian_product(&g, h) } else { disjoint_union(&g, h) };
            if cand.n() <= 8 {
                g = cand;
            }
        }
        if g.n() >= 3 {
            let mut perm: Vec<usize> = (0..g.n()).collect();
            perm.shuffle(r);
            return relabel(&g, &perm);
        }
    }
}

/// `attach_branches` over a random connected host (`n <= 10`) and a random
/// connected branch (`n <= 5`), integer weights in `1..=3`.
pub fn random_construction(r: &mut ChaCha8Rng) -> (Graph, BranchPair) {
    let nh = r.gen_range(1..=10);
    let n1 = r.gen_range(1..=5);
    let host = random_connected_graph(r, nh, 0.3, 3);
    let x1 = random_connected_graph(r, n1, 0.4, 3);
    let mut attach = Vec::new();
    for a in 0..n1 {
        for y in 0..nh {
            if r.gen_bool(0.3) {
                attach.push((a, y, r.gen_range(1..=3) as f64));
            }
        }
    }
    if attach.is_empty() {
        attach.push((r.gen_range(0..n1), r.gen_range(0..nh), 1.0));
    }
    attach_branches(&host, &x1, &attach).unwrap()
}

/// `exp(itA)` from nalgebra's symmetric eigensolver, without any grouping.
pub struct DenseWalk {
    values: Vec<f64>,
    vectors: DMatrix<f64>,
}

impl DenseWalk {
    pub fn new(g: &Graph) -> Self {
        let e = SymmetricEigen::new(g.adjacency());
        DenseWalk { values: e.eigenvalues.iter().copied().collect(), vectors: e.eigenvectors }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn unitary(&self, t: f64) -> DMatrix<Complex64> {
        let n = self.values.len();
        let v = self.vectors.map(|x| Complex64::new(x, 0.0));
        let d = DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(n, self.values.iter().map(|&l| Complex64::from_polar(1.0, l * t))));
        &v * d * v.transpose()
    }

    /// `<target| U(t) |source>` for real states, via per-eigenvector terms.
    pub fn amplitude_fn(&self, source: &[f64], target: &[f64]) -> impl Fn(f64) -> Complex64 + '_ {
        let n = self.values.len();
        let w: Vec<f64> = (0..n)
            .map(|k| {
                let col = self.vectors.column(k);
                let cs: f64 = col.iter().zip(source).map(|(a, b)| a * b).sum();
                let ct: f64 = col.iter().zip(target).map(|(a, b)| a * b).sum();
                cs * ct
            })
            .collect();
        move |t| w.iter().zip(&self.values).map(|(&c, &l)| Complex64::from_polar(c, l * t)).sum()
    }
}

pub fn max_abs(m: &DMatrix<Complex64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Brute-force PST oracle for integer spectra: scan `(0, 4 pi / g]` with
/// step `pi / 1000`, where `g` is the gcd of all eigenvalue differences, and
/// refine the best grid points. Returns the best fidelity found.
pub fn grid_oracle(walk: &DenseWalk, source: &[f64], target: &[f64]) -> f64 {
    let ints: Vec<i64> = walk.values().iter().map(|x| x.round() as i64).collect();
    let mut g = 0i64;
    for &x in &ints {
        g = gcd(g, x - ints[0]);
    }
    let g = g.max(1);
    let horizon = 4.0 * std::f64::consts::PI / g as f64;
    let step = std::f64::consts::PI / 1000.0;
    let amp = walk.amplitude_fn(source, target);
    let fid = |t: f64| amp(t).norm_sqr();
    let steps = (horizon / step).ceil() as usize;
    let mut grid: Vec<(f64, f64)> = (1..=steps).map(|k| (k as f64 * step, fid(k as f64 * step))).collect();
    grid.sort_by(|a, b| b.1.total_cmp(&a.1));
    grid.iter()
        .take(8)
        .map(|&(t, f)| golden_section_maximize(fid, (t - step).max(0.0), t + step, 1e-13, 200).1.max(f))
        .fold(0.0, f64::max)
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

pub fn vertex(n: usize, a: usize) -> Vec<f64> {
    let mut v = vec![0.0; n];
    v[a] = 1.0;
    v
}

pub fn pair(n: usize, a: usize, b: usize) -> Vec<f64> {
    let mut v = vec![0.0; n];
    let r = 1.0 / 2f64.sqrt();
    v[a] = r;
    v[b] = -r;
    v
}

/// Odd-part factorization oracle for `m = 2^k * odd`.
pub fn two_k_odd(mut m: u64) -> (u32, u64) {
    let mut k = 0;
    while m.is_multiple_of(2) && m > 0 {
        m /= 2;
        k += 1;
    }
    (k, m)
}

pub fn is_prime_naive(p: u64) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}
