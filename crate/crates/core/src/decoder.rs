//! Sum-product decoding on a redundant Tanner graph, and the Auto-Diversity
//! wrapper that retries on automorphism-permuted inputs before falling back to
//! a least-metric selection over the failed attempts.
//!
//! Permuting the columns of H by `σ` and decoding `SI` is the same as decoding
//! `σ^-1 SI` on the unpermuted graph, so the graph is built once and only the
//! input and output vectors are permuted.

use rand::Rng;

use crate::autgroup::Permutation;
use crate::codes::{CyclicCode, ParityCheckMatrix};
use crate::error::{Error, Result};

/// Default clip on message magnitudes, in LLR units.
pub const DEFAULT_CLIP: f64 = 25.0;

/// Bipartite check/variable adjacency, stored edge-major by check with a
/// per-variable edge index.
#[derive(Clone, Debug)]
pub struct TannerGraph {
    n: usize,
    check_offsets: Vec<usize>,
    edge_var: Vec<usize>,
    var_offsets: Vec<usize>,
    var_edges: Vec<usize>,
}

impl TannerGraph {
    pub fn from_matrix(h: &ParityCheckMatrix) -> Self {
        let n = h.n();
        let mut check_offsets = vec![0];
        let mut edge_var = Vec::with_capacity(h.edge_count());
        for row in h.rows() {
            edge_var.extend(row.exponents());
            check_offsets.push(edge_var.len());
        }
        let mut degree = vec![0usize; n];
        for &v in &edge_var {
            degree[v] += 1;
        }
        let mut var_offsets = vec![0; n + 1];
        for v in 0..n {
            var_offsets[v + 1] = var_offsets[v] + degree[v];
        }
        let mut fill = var_offsets.clone();
        let mut var_edges = vec![0; edge_var.len()];
        for (e, &v) in edge_var.iter().enumerate() {
            var_edges[fill[v]] = e;
            fill[v] += 1;
        }
        Self {
            n,
            check_offsets,
            edge_var,
            var_offsets,
            var_edges,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of check nodes.
    pub fn m(&self) -> usize {
        self.check_offsets.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.edge_var.len()
    }

    /// Variables attached to check `c`.
    pub fn check_vars(&self, c: usize) -> &[usize] {
        &self.edge_var[self.check_offsets[c]..self.check_offsets[c + 1]]
    }

    pub fn var_degree(&self, v: usize) -> usize {
        self.var_offsets[v + 1] - self.var_offsets[v]
    }

    pub fn syndrome_is_zero(&self, bits: &[u8]) -> bool {
        (0..self.m()).all(|c| self.check_vars(c).iter().fold(0u8, |acc, &v| acc ^ bits[v]) == 0)
    }
}

/// Outcome of one sum-product run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BpStatus {
    pub iterations: usize,
    pub converged: bool,
}

/// Flooding-schedule sum-product decoder with reusable message buffers.
#[derive(Clone, Debug)]
pub struct BpDecoder<'g> {
    graph: &'g TannerGraph,
    clip: f64,
    var_to_check: Vec<f64>,
    check_to_var: Vec<f64>,
    posterior: Vec<f64>,
    hard: Vec<u8>,
    scratch: Vec<f64>,
}

impl<'g> BpDecoder<'g> {
    pub fn new(graph: &'g TannerGraph, clip: f64) -> Self {
        let e = graph.edge_count();
        Self {
            graph,
            clip,
            var_to_check: vec![0.0; e],
            check_to_var: vec![0.0; e],
            posterior: vec![0.0; graph.n()],
            hard: vec![0; graph.n()],
            scratch: Vec::new(),
        }
    }

    pub fn graph(&self) -> &'g TannerGraph {
        self.graph
    }

    /// Hard decision of the last run.
    pub fn hard_decision(&self) -> &[u8] {
        &self.hard
    }

    /// Posterior LLRs of the last run.
    pub fn posterior(&self) -> &[f64] {
        &self.posterior
    }

    /// Runs up to `max_iterations` iterations, stopping after the first whose
    /// hard decision satisfies every check. A posterior of exactly zero
    /// decides bit 0 but blocks convergence.
    pub fn decode(&mut self, llr: &[f64], max_iterations: usize) -> BpStatus {
        assert_eq!(llr.len(), self.graph.n(), "LLR length");
        let clip = self.clip;
        for (e, &v) in self.graph.edge_var.iter().enumerate() {
            self.var_to_check[e] = llr[v].clamp(-clip, clip);
        }
        for iteration in 1..=max_iterations.max(1) {
            self.update_checks();
            self.update_variables(llr);
            if self.graph.syndrome_is_zero(&self.hard) && self.posterior.iter().all(|&p| p != 0.0) {
                return BpStatus {
                    iterations: iteration,
                    converged: true,
                };
            }
        }
        BpStatus {
            iterations: max_iterations.max(1),
            converged: false,
        }
    }

    fn update_checks(&mut self) {
        let clip = self.clip;
        for c in 0..self.graph.m() {
            let (lo, hi) = (self.graph.check_offsets[c], self.graph.check_offsets[c + 1]);
            let tanhs = &mut self.scratch;
            tanhs.clear();
            tanhs.extend(self.var_to_check[lo..hi].iter().map(|&q| (0.5 * q).tanh()));
            // check_to_var temporarily holds prefix products
            let mut prefix = 1.0;
            for (out, &t) in self.check_to_var[lo..hi].iter_mut().zip(tanhs.iter()) {
                *out = prefix;
                prefix *= t;
            }
            let mut suffix = 1.0;
            for (out, &t) in self.check_to_var[lo..hi].iter_mut().zip(tanhs.iter()).rev() {
                let product = *out * suffix;
                *out = (2.0 * product.atanh()).clamp(-clip, clip);
                suffix *= t;
            }
        }
    }

    fn update_variables(&mut self, llr: &[f64]) {
        let clip = self.clip;
        let g = self.graph;
        for (v, &l) in llr.iter().enumerate().take(g.n()) {
            let edges = &g.var_edges[g.var_offsets[v]..g.var_offsets[v + 1]];
            let total = l + edges.iter().map(|&e| self.check_to_var[e]).sum::<f64>();
            self.posterior[v] = total;
            self.hard[v] = u8::from(total < 0.0);
            for &e in edges {
                self.var_to_check[e] = (total - self.check_to_var[e]).clamp(-clip, clip);
            }
        }
    }
}

/// Plain sum-product decoding with the default clip: hard decision,
/// iterations used and convergence.
pub fn bp_decode(llr: &[f64], graph: &TannerGraph, max_iterations: usize) -> (Vec<u8>, usize, bool) {
    let mut bp = BpDecoder::new(graph, DEFAULT_CLIP);
    let status = bp.decode(llr, max_iterations);
    (bp.hard.clone(), status.iterations, status.converged)
}

/// Candidate selection rule after every diversity stage has failed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum LmsMetric {
    /// Minimum squared Euclidean distance between `y` and the BPSK image of
    /// the candidate.
    #[default]
    Euclidean,
    /// Maximum of `sum |y_v - c_v|` over raw candidate bits.
    AbsoluteDifference,
}

/// Auto-Diversity decoder parameters.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AdConfig {
    /// Sum-product iterations per stage.
    pub max_iterations: usize,
    /// Diversity stages, including the first unpermuted one.
    pub max_stages: usize,
    /// Message magnitude clip.
    pub clip: f64,
    pub lms_metric: LmsMetric,
}

impl Default for AdConfig {
    fn default() -> Self {
        Self {
            max_iterations: 50,
            max_stages: 30,
            clip: DEFAULT_CLIP,
            lms_metric: LmsMetric::Euclidean,
        }
    }
}

impl AdConfig {
    pub fn new(max_iterations: usize, max_stages: usize) -> Result<Self> {
        let cfg = Self {
            max_iterations,
            max_stages,
            ..Self::default()
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_iterations == 0 || self.max_stages == 0 {
            return Err(Error::invalid("iterations and diversity stages must be at least 1"));
        }
        if self.clip.is_nan() || self.clip <= 0.0 {
            return Err(Error::invalid("clip must be positive"));
        }
        Ok(())
    }
}

/// Decoder verdict for one frame.
#[derive(Clone, Debug, PartialEq)]
pub struct DecodeOutcome {
    pub codeword: Vec<u8>,
    pub converged: bool,
    pub stages: usize,
    pub iterations: usize,
    pub selected_by_lms: bool,
}

/// Index of the best candidate under `metric`; ties go to the earliest.
pub fn lms_select_with(candidates: &[Vec<u8>], y: &[f64], metric: LmsMetric) -> Result<usize> {
    if candidates.is_empty() {
        return Err(Error::EmptyCandidates);
    }
    let score = |c: &[u8]| -> f64 {
        match metric {
            // -|y - x|^2 up to a constant: sum y_v x_v
            LmsMetric::Euclidean => c
                .iter()
                .zip(y)
                .map(|(&b, &yv)| if b == 0 { yv } else { -yv })
                .sum(),
            LmsMetric::AbsoluteDifference => c
                .iter()
                .zip(y)
                .map(|(&b, &yv)| (yv - f64::from(b)).abs())
                .sum(),
        }
    };
    if let Some(c) = candidates.iter().find(|c| c.len() != y.len()) {
        return Err(Error::LengthMismatch {
            expected: y.len(),
            actual: c.len(),
        });
    }
    let mut best = 0;
    let mut best_score = score(&candidates[0]);
    for (i, c) in candidates.iter().enumerate().skip(1) {
        let s = score(c);
        if s > best_score {
            best = i;
            best_score = s;
        }
    }
    Ok(best)
}

/// Least-metric selection: the candidate whose BPSK image is closest to `y`.
pub fn lms_select(candidates: &[Vec<u8>], y: &[f64]) -> Result<Vec<u8>> {
    lms_select_with(candidates, y, LmsMetric::Euclidean).map(|i| candidates[i].clone())
}

/// Auto-Diversity decoder bound to one Tanner graph.
#[derive(Clone, Debug)]
pub struct AdDecoder<'g> {
    bp: BpDecoder<'g>,
    cfg: AdConfig,
    coset1_size: usize,
    permuted: Vec<f64>,
    candidates: Vec<Vec<u8>>,
}

impl<'g> AdDecoder<'g> {
    /// `coset1_size` bounds the Frobenius powers sampled; for a cyclic code of
    /// length n it is the order of 2 mod n.
    pub fn new(graph: &'g TannerGraph, coset1_size: usize, cfg: AdConfig) -> Result<Self> {
        cfg.validate()?;
        Ok(Self {
            bp: BpDecoder::new(graph, cfg.clip),
            cfg,
            coset1_size,
            permuted: vec![0.0; graph.n()],
            candidates: Vec::with_capacity(cfg.max_stages),
        })
    }

    pub fn for_code(graph: &'g TannerGraph, code: &CyclicCode, cfg: AdConfig) -> Result<Self> {
        if graph.n() != code.n() {
            return Err(Error::LengthMismatch {
                expected: code.n(),
                actual: graph.n(),
            });
        }
        Self::new(graph, code.coset1_size(), cfg)
    }

    pub fn config(&self) -> &AdConfig {
        &self.cfg
    }

    /// Decodes `apply(inverse(perm), si)` on the fixed graph and maps the hard
    /// decision back through `perm`, so the result is in the coordinates of
    /// `si`. Returns the BP status and the mapped word.
    pub fn decode_permuted(&mut self, si: &[f64], perm: &Permutation) -> (BpStatus, Vec<u8>) {
        perm.apply_inverse_into(si, &mut self.permuted);
        let status = self.bp.decode(&self.permuted, self.cfg.max_iterations);
        let mut word = vec![0u8; si.len()];
        perm.apply_into(self.bp.hard_decision(), &mut word);
        (status, word)
    }

    /// Decodes channel LLRs `si` for received symbols `y`.
    pub fn decode<R: Rng + ?Sized>(&mut self, si: &[f64], y: &[f64], rng: &mut R) -> Result<DecodeOutcome> {
        let n = self.bp.graph().n();
        for len in [si.len(), y.len()] {
            if len != n {
                return Err(Error::LengthMismatch {
                    expected: n,
                    actual: len,
                });
            }
        }
        self.candidates.clear();
        let mut iterations = 0;
        let mut perm = Permutation::identity(n);
        for stage in 1..=self.cfg.max_stages {
            if stage > 1 {
                let sigma = Permutation::sample_random(n, self.coset1_size, rng);
                perm = sigma.compose(&perm);
            }
            let (status, word) = self.decode_permuted(si, &perm);
            iterations += status.iterations;
            if status.converged && self.bp.graph().syndrome_is_zero(&word) {
                return Ok(DecodeOutcome {
                    codeword: word,
                    converged: true,
                    stages: stage,
                    iterations,
                    selected_by_lms: false,
                });
            }
            self.candidates.push(word);
        }
        let best = lms_select_with(&self.candidates, y, self.cfg.lms_metric)?;
        Ok(DecodeOutcome {
            codeword: std::mem::take(&mut self.candidates[best]),
            converged: false,
            stages: self.cfg.max_stages,
            iterations,
            selected_by_lms: true,
        })
    }
}

/// One-shot Auto-Diversity decode; see [`AdDecoder`].
pub fn ad_decode<R: Rng + ?Sized>(
    si: &[f64],
    graph: &TannerGraph,
    code: &CyclicCode,
    cfg: AdConfig,
    y: &[f64],
    rng: &mut R,
) -> Result<DecodeOutcome> {
    AdDecoder::for_code(graph, code, cfg)?.decode(si, y, rng)
}
