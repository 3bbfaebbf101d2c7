//! Monte Carlo error-rate simulation of Auto-Diversity decoding over BPSK/AWGN.
//!
//! Every frame draws its information word, noise and permutations from its own
//! stream keyed by `(seed, grid index, frame index)`. Frames are decoded in
//! parallel batches and folded in frame order, so results do not depend on the
//! worker count.

use rand::Rng;
use rayon::prelude::*;

use crate::channel::{frame_stream, llr, modulate, transmit, ChannelConfig};
use crate::codes::{CyclicCode, ParityCheckMatrix};
use crate::decoder::{AdConfig, AdDecoder, TannerGraph};
use crate::error::{Error, Result};

pub const DEFAULT_MIN_FRAME_ERRORS: u64 = 100;
pub const DEFAULT_MAX_FRAMES: u64 = 100_000_000;

const BATCH: u64 = 1024;

/// Which stopping rule ended a grid point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StopRule {
    MinFrameErrors,
    MaxFrames,
}

impl StopRule {
    pub fn as_str(self) -> &'static str {
        match self {
            StopRule::MinFrameErrors => "min_frame_errors",
            StopRule::MaxFrames => "max_frames",
        }
    }
}

/// Eb/N0 points `start, start + step, ..` up to and including `stop`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EbnoGrid {
    pub start: f64,
    pub step: f64,
    pub stop: f64,
}

impl EbnoGrid {
    pub fn single(ebno_db: f64) -> Self {
        Self {
            start: ebno_db,
            step: 1.0,
            stop: ebno_db,
        }
    }

    pub fn points(&self) -> Result<Vec<f64>> {
        if !(self.start.is_finite() && self.stop.is_finite()) || self.stop < self.start {
            return Err(Error::invalid("Eb/N0 grid must satisfy start <= stop"));
        }
        if self.stop > self.start && (self.step.is_nan() || self.step <= 0.0) {
            return Err(Error::invalid("Eb/N0 step must be positive"));
        }
        let mut out = vec![self.start];
        if self.stop > self.start {
            let count = ((self.stop - self.start) / self.step + 1e-9).floor() as usize;
            out.extend((1..=count).map(|i| self.start + i as f64 * self.step));
        }
        Ok(out)
    }
}

#[derive(Clone, Debug)]
pub struct SimulationPlan {
    pub code: CyclicCode,
    /// Parity-check rows used by the decoder.
    pub m: usize,
    pub ad: AdConfig,
    pub grid: EbnoGrid,
    pub min_frame_errors: u64,
    pub max_frames: u64,
    pub seed: u64,
    /// Worker threads; 0 uses every available core.
    pub workers: usize,
}

impl SimulationPlan {
    pub fn new(code: CyclicCode, m: usize, ad: AdConfig, grid: EbnoGrid) -> Self {
        Self {
            code,
            m,
            ad,
            grid,
            min_frame_errors: DEFAULT_MIN_FRAME_ERRORS,
            max_frames: DEFAULT_MAX_FRAMES,
            seed: 0,
            workers: 0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.ad.validate()?;
        self.grid.points()?;
        if self.min_frame_errors == 0 || self.max_frames == 0 {
            return Err(Error::invalid("min frame errors and max frames must be at least 1"));
        }
        Ok(())
    }
}

/// Counters for one grid point. Bit errors are counted over all `n` coded bits.
#[derive(Clone, Debug, PartialEq)]
pub struct SimulationRecord {
    pub ebno_db: f64,
    pub frames: u64,
    pub bit_errors: u64,
    pub frame_errors: u64,
    pub ber: f64,
    pub fer: f64,
    pub avg_iterations: f64,
    pub avg_stages: f64,
    pub lms_decisions: u64,
    /// Frames that converged to a valid codeword other than the one sent.
    pub undetected_errors: u64,
    pub stop_rule: StopRule,
}

#[derive(Clone, Copy, Debug, Default)]
struct FrameResult {
    bit_errors: u64,
    iterations: u64,
    stages: u64,
    lms: bool,
    undetected: bool,
}

#[derive(Default)]
struct Tally {
    frames: u64,
    bit_errors: u64,
    frame_errors: u64,
    iterations: u64,
    stages: u64,
    lms: u64,
    undetected: u64,
}

impl Tally {
    fn push(&mut self, f: &FrameResult) {
        self.frames += 1;
        self.bit_errors += f.bit_errors;
        self.frame_errors += u64::from(f.bit_errors > 0);
        self.iterations += f.iterations;
        self.stages += f.stages;
        self.lms += u64::from(f.lms);
        self.undetected += u64::from(f.undetected);
    }

    fn record(&self, ebno_db: f64, n: usize, stop_rule: StopRule) -> SimulationRecord {
        let frames = self.frames as f64;
        SimulationRecord {
            ebno_db,
            frames: self.frames,
            bit_errors: self.bit_errors,
            frame_errors: self.frame_errors,
            ber: self.bit_errors as f64 / (frames * n as f64),
            fer: self.frame_errors as f64 / frames,
            avg_iterations: self.iterations as f64 / frames,
            avg_stages: self.stages as f64 / frames,
            lms_decisions: self.lms,
            undetected_errors: self.undetected,
            stop_rule,
        }
    }
}

/// Runs the plan with `m` shifts of the dual idempotent, under the density guard.
pub fn run(plan: &SimulationPlan) -> Result<Vec<SimulationRecord>> {
    let h = ParityCheckMatrix::from_code(&plan.code, plan.m)?;
    run_with_matrix(plan, &h)
}

/// Runs the plan on caller-supplied parity-check rows; `plan.m` is ignored.
pub fn run_with_matrix(plan: &SimulationPlan, h: &ParityCheckMatrix) -> Result<Vec<SimulationRecord>> {
    run_observed(plan, h, |_| {})
}

/// [`run_with_matrix`], calling `on_record` as each grid point finishes.
pub fn run_observed(
    plan: &SimulationPlan,
    h: &ParityCheckMatrix,
    mut on_record: impl FnMut(&SimulationRecord) + Send,
) -> Result<Vec<SimulationRecord>> {
    plan.validate()?;
    let code = &plan.code;
    if h.n() != code.n() {
        return Err(Error::LengthMismatch {
            expected: code.n(),
            actual: h.n(),
        });
    }
    let required = code.n() - code.k();
    if h.rank() < required {
        return Err(Error::RankDeficient {
            rank: h.rank(),
            required,
        });
    }
    let graph = TannerGraph::from_matrix(h);
    // fail fast on a bad decoder configuration before spinning up workers
    AdDecoder::for_code(&graph, code, plan.ad)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(plan.workers)
        .build()
        .map_err(|e| Error::invalid(format!("worker pool: {e}")))?;
    let points = plan.grid.points()?;
    pool.install(|| {
        points
            .iter()
            .enumerate()
            .map(|(gi, &ebno)| {
                let rec = simulate_point(plan, &graph, gi, ebno)?;
                on_record(&rec);
                Ok(rec)
            })
            .collect()
    })
}

fn simulate_point(plan: &SimulationPlan, graph: &TannerGraph, grid_index: usize, ebno_db: f64) -> Result<SimulationRecord> {
    let code = &plan.code;
    let channel = ChannelConfig::new(ebno_db, code.rate())?;
    let mut tally = Tally::default();
    let mut next = 0u64;
    loop {
        let end = (next + BATCH).min(plan.max_frames);
        let batch: Vec<FrameResult> = (next..end)
            .into_par_iter()
            .map_init(
                || AdDecoder::for_code(graph, code, plan.ad).expect("validated decoder config"),
                |dec, f| simulate_frame(code, &channel, dec, plan.seed, grid_index, f),
            )
            .collect::<Result<_>>()?;
        for f in &batch {
            tally.push(f);
            if tally.frame_errors >= plan.min_frame_errors {
                return Ok(tally.record(ebno_db, code.n(), StopRule::MinFrameErrors));
            }
        }
        next = end;
        if next >= plan.max_frames {
            return Ok(tally.record(ebno_db, code.n(), StopRule::MaxFrames));
        }
    }
}

fn simulate_frame(
    code: &CyclicCode,
    channel: &ChannelConfig,
    decoder: &mut AdDecoder<'_>,
    seed: u64,
    grid_index: usize,
    frame: u64,
) -> Result<FrameResult> {
    let mut rng = frame_stream(seed, grid_index, frame);
    let info: Vec<u8> = (0..code.k()).map(|_| rng.random_range(0..2u8)).collect();
    let sent = code.encode(&info)?;
    let y = transmit(&modulate(&sent), channel, &mut rng);
    let si = llr(&y, channel)?;
    let out = decoder.decode(&si, &y, &mut rng)?;
    let bit_errors = out
        .codeword
        .iter()
        .zip(&sent)
        .filter(|(a, b)| a != b)
        .count() as u64;
    Ok(FrameResult {
        bit_errors,
        iterations: out.iterations as u64,
        stages: out.stages as u64,
        lms: out.selected_by_lms,
        undetected: out.converged && bit_errors > 0,
    })
}

/// Ratio of per-iteration Tanner graph edges `d_min(C_a^⊥) m / d_min(C_b^⊥) m`
/// at equal `m`.
pub fn relative_complexity(code_a: &CyclicCode, code_b: &CyclicCode) -> Result<f64> {
    let weight = |c: &CyclicCode| {
        c.dual_min_weight()
            .ok_or_else(|| Error::MissingDualWeight(format!("({}, {}) code", c.n(), c.k())))
    };
    Ok(edge_ratio(weight(code_a)?, weight(code_b)?))
}

/// `weight_a / weight_b`.
pub fn edge_ratio(weight_a: usize, weight_b: usize) -> f64 {
    weight_a as f64 / weight_b as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::CodeContext;
    use crate::gf2poly::BinaryPolynomial;

    fn hamming() -> CyclicCode {
        let ctx = CodeContext::new(7).unwrap();
        CyclicCode::from_dual_idempotent(&BinaryPolynomial::from_exponents([6, 5, 3, 0]), &ctx).unwrap()
    }

    fn golay_like() -> CyclicCode {
        let ctx = CodeContext::new(23).unwrap();
        let idual = crate::codes::candidate_dual_idempotent(&ctx, &[1]).unwrap();
        CyclicCode::from_dual_idempotent(&idual, &ctx).unwrap()
    }

    fn plan(code: CyclicCode, m: usize, grid: EbnoGrid) -> SimulationPlan {
        let mut p = SimulationPlan::new(code, m, AdConfig::new(20, 5).unwrap(), grid);
        p.seed = 11;
        p
    }

    #[test]
    fn grid_points() {
        let g = EbnoGrid {
            start: 1.0,
            step: 0.5,
            stop: 3.0,
        };
        assert_eq!(g.points().unwrap(), vec![1.0, 1.5, 2.0, 2.5, 3.0]);
        assert_eq!(EbnoGrid::single(4.55).points().unwrap(), vec![4.55]);
        let bad = EbnoGrid {
            start: 3.0,
            step: 0.5,
            stop: 1.0,
        };
        assert!(bad.points().is_err());
    }

    #[test]
    fn noiseless_frames_are_error_free() {
        let mut p = plan(golay_like(), 11, EbnoGrid::single(60.0));
        p.max_frames = 100;
        let r = &run(&p).unwrap()[0];
        assert_eq!(r.frames, 100);
        assert_eq!(r.bit_errors, 0);
        assert_eq!(r.avg_iterations, 1.0);
        assert_eq!(r.avg_stages, 1.0);
        assert_eq!(r.stop_rule, StopRule::MaxFrames);
    }

    #[test]
    fn worker_count_does_not_change_results() {
        let mut p = plan(
            golay_like(),
            11,
            EbnoGrid {
                start: 1.0,
                step: 1.0,
                stop: 3.0,
            },
        );
        p.min_frame_errors = 30;
        p.max_frames = 3000;
        p.workers = 1;
        let one = run(&p).unwrap();
        p.workers = 4;
        let four = run(&p).unwrap();
        assert_eq!(one, four);
        assert_eq!(run(&p).unwrap(), four);
    }

    #[test]
    fn record_invariants() {
        let mut p = plan(
            hamming(),
            3,
            EbnoGrid {
                start: 0.0,
                step: 2.0,
                stop: 6.0,
            },
        );
        p.min_frame_errors = 50;
        p.max_frames = 5000;
        let recs = run(&p).unwrap();
        for r in &recs {
            assert!(r.fer >= r.ber);
            assert!(r.avg_iterations >= 1.0);
            assert!(r.avg_iterations <= (p.ad.max_iterations * p.ad.max_stages) as f64);
            assert!(r.avg_stages <= p.ad.max_stages as f64);
            assert_eq!(r.ber, r.bit_errors as f64 / (r.frames as f64 * 7.0));
            match r.stop_rule {
                StopRule::MinFrameErrors => assert_eq!(r.frame_errors, p.min_frame_errors),
                StopRule::MaxFrames => assert_eq!(r.frames, p.max_frames),
            }
        }
        assert!(recs.first().unwrap().fer >= recs.last().unwrap().fer);
    }

    #[test]
    fn rank_deficient_matrix_is_rejected() {
        let p = plan(hamming(), 1, EbnoGrid::single(3.0));
        assert_eq!(
            run(&p).unwrap_err(),
            Error::RankDeficient {
                rank: 1,
                required: 3
            }
        );
    }

    #[test]
    fn relative_complexity_examples() {
        let a = hamming().with_dual_min_weight(4);
        let b = golay_like();
        assert!(matches!(relative_complexity(&a, &b), Err(Error::MissingDualWeight(_))));
        let b = b.with_dual_min_weight(8);
        assert_eq!(relative_complexity(&a, &b).unwrap(), 0.5);
        assert!((edge_ratio(32, 22) - 1.454).abs() < 1e-3);
    }
}
