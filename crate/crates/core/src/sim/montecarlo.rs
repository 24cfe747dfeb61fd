use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::SimError;
use crate::decode::{
    transmit_with, ChannelModel, DecoderConfig, HardDecoder, MinSumDecoder, Received,
};
use crate::graph::ParityCheckMatrix;

/// Column names of a simulation CSV row.
pub const CSV_HEADER: &str =
    "code,n,m,decoder,channel,param,frames,frame_errors,bit_errors,fer,ber,ci_lo,ci_hi,seed";

pub fn csv_header() -> &'static str {
    CSV_HEADER
}

/// Frames decoded per parallel round.
const ROUND: u64 = 4096;

/// Stop after `min_frame_errors` frame errors or `max_frames` frames,
/// whichever comes first.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StopRule {
    pub min_frame_errors: u64,
    pub max_frames: u64,
}

impl Default for StopRule {
    fn default() -> Self {
        StopRule {
            min_frame_errors: 100,
            max_frames: 10_000_000,
        }
    }
}

impl StopRule {
    pub fn new(min_frame_errors: u64, max_frames: u64) -> Result<Self, SimError> {
        let rule = StopRule {
            min_frame_errors,
            max_frames,
        };
        rule.validate()?;
        Ok(rule)
    }

    pub fn validate(&self) -> Result<(), SimError> {
        if self.min_frame_errors == 0 {
            return Err(SimError::StopRule(
                "minimum frame errors must be at least 1".into(),
            ));
        }
        if self.max_frames == 0 {
            return Err(SimError::StopRule(
                "maximum frames must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimResult {
    pub channel: ChannelModel,
    pub frames: u64,
    pub frame_errors: u64,
    pub bit_errors: u64,
    pub fer: f64,
    pub ber: f64,
    /// 95% normal-approximation interval for the FER.
    pub ci_lo: f64,
    pub ci_hi: f64,
    pub seed: u64,
    pub wall_clock: Duration,
}

impl SimResult {
    /// Every field except the wall-clock time.
    pub fn same_outcome(&self, other: &SimResult) -> bool {
        SimResult {
            wall_clock: Duration::ZERO,
            ..self.clone()
        } == SimResult {
            wall_clock: Duration::ZERO,
            ..other.clone()
        }
    }

    /// One CSV row in [`CSV_HEADER`] order.
    pub fn csv_row(&self, code: &str, n: usize, m: usize, decoder: &str) -> String {
        format!(
            "{code},{n},{m},{decoder},{},{},{},{},{},{:e},{:e},{:e},{:e},{}",
            self.channel.name(),
            self.channel.parameter(),
            self.frames,
            self.frame_errors,
            self.bit_errors,
            self.fer,
            self.ber,
            self.ci_lo,
            self.ci_hi,
            self.seed
        )
    }
}

enum FrameDecoder {
    Hard(HardDecoder),
    Soft(MinSumDecoder),
}

impl Clone for FrameDecoder {
    fn clone(&self) -> Self {
        match self {
            FrameDecoder::Hard(d) => FrameDecoder::Hard(d.clone()),
            FrameDecoder::Soft(d) => FrameDecoder::Soft(d.clone()),
        }
    }
}

/// Frame generator for frame `index`: ChaCha8 keyed by `seed`, one stream
/// per frame, so every frame is reproducible on its own.
fn frame_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Bit errors of one all-zero-codeword frame (0 means decoded correctly).
fn run_frame(
    dec: &mut FrameDecoder,
    channel: &ChannelModel,
    zero: &[u8],
    seed: u64,
    index: u64,
) -> u64 {
    let mut rng = frame_rng(seed, index);
    let received = transmit_with(zero, channel, &mut rng);
    let decision = match (dec, received) {
        (FrameDecoder::Hard(d), Received::Hard(bits)) => {
            d.decode(&bits).expect("length matches").decision
        }
        (FrameDecoder::Soft(d), Received::Soft(llr)) => {
            d.decode(&llr).expect("finite LLRs").decision
        }
        (FrameDecoder::Soft(d), Received::Hard(bits)) => {
            let ChannelModel::Bsc { crossover } = *channel else {
                unreachable!()
            };
            let mag = if crossover > 0.0 {
                ((1.0 - crossover) / crossover).ln()
            } else {
                1.0
            };
            let llr: Vec<f64> = bits
                .iter()
                .map(|&b| if b == 1 { -mag } else { mag })
                .collect();
            d.decode(&llr).expect("finite LLRs").decision
        }
        (FrameDecoder::Hard(_), Received::Soft(llr)) => {
            llr.iter().map(|&x| u8::from(x < 0.0)).collect()
        }
    };
    decision.iter().map(|&b| u64::from(b)).sum()
}

/// Transmits the all-zero codeword until the stop rule fires.
///
/// Frame `i` draws its noise from a generator derived from `(seed, i)` and
/// frames are tallied in index order, so the result does not depend on the
/// number of worker threads. Hard-decision decoders on the BIAWGN channel
/// see the sign of the LLRs.
pub fn monte_carlo(
    h: &ParityCheckMatrix,
    config: &DecoderConfig,
    channel: &ChannelModel,
    stop: StopRule,
    seed: u64,
) -> Result<SimResult, SimError> {
    stop.validate()?;
    let start = Instant::now();
    let template = if config.algorithm.is_hard_decision() {
        FrameDecoder::Hard(HardDecoder::new(h, config)?)
    } else {
        FrameDecoder::Soft(MinSumDecoder::new(h, config)?)
    };
    let hard_on_soft =
        matches!(template, FrameDecoder::Hard(_)) && matches!(channel, ChannelModel::BiAwgn { .. });
    let zero = vec![0u8; h.n()];
    let (mut frames, mut frame_errors, mut bit_errors) = (0u64, 0u64, 0u64);
    'rounds: while frames < stop.max_frames {
        let hi = (frames + ROUND).min(stop.max_frames);
        let errs: Vec<u64> = (frames..hi)
            .into_par_iter()
            .map_init(
                || template.clone(),
                |dec, i| {
                    if hard_on_soft {
                        let mut rng = frame_rng(seed, i);
                        let Received::Soft(llr) = transmit_with(&zero, channel, &mut rng) else {
                            unreachable!()
                        };
                        let bits: Vec<u8> = llr.iter().map(|&x| u8::from(x < 0.0)).collect();
                        let FrameDecoder::Hard(d) = dec else {
                            unreachable!()
                        };
                        d.decode(&bits)
                            .expect("length matches")
                            .decision
                            .iter()
                            .map(|&b| u64::from(b))
                            .sum()
                    } else {
                        run_frame(dec, channel, &zero, seed, i)
                    }
                },
            )
            .collect();
        for e in errs {
            frames += 1;
            if e > 0 {
                frame_errors += 1;
                bit_errors += e;
            }
            if frame_errors >= stop.min_frame_errors {
                break 'rounds;
            }
        }
    }
    let fer = frame_errors as f64 / frames as f64;
    let ber = bit_errors as f64 / (frames as f64 * h.n() as f64);
    let half = 1.96 * (fer * (1.0 - fer) / frames as f64).sqrt();
    Ok(SimResult {
        channel: *channel,
        frames,
        frame_errors,
        bit_errors,
        fer,
        ber,
        ci_lo: (fer - half).max(0.0),
        ci_hi: (fer + half).min(1.0),
        seed,
        wall_clock: start.elapsed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hamming74() -> ParityCheckMatrix {
        ParityCheckMatrix::from_dense(&[
            vec![1, 0, 1, 0, 1, 0, 1],
            vec![0, 1, 1, 0, 0, 1, 1],
            vec![0, 0, 0, 1, 1, 1, 1],
        ])
        .unwrap()
    }

    #[test]
    fn noiseless_channel_never_errs() {
        let r = monte_carlo(
            &hamming74(),
            &DecoderConfig::gallager_b(),
            &ChannelModel::bsc(0.0).unwrap(),
            StopRule::new(1, 5000).unwrap(),
            1,
        )
        .unwrap();
        assert_eq!((r.frames, r.frame_errors, r.fer), (5000, 0, 0.0));
    }

    #[test]
    fn stops_at_error_target() {
        let r = monte_carlo(
            &hamming74(),
            &DecoderConfig::gallager_b(),
            &ChannelModel::bsc(0.2).unwrap(),
            StopRule::new(50, 1_000_000).unwrap(),
            7,
        )
        .unwrap();
        assert_eq!(r.frame_errors, 50);
        assert!((r.fer - 50.0 / r.frames as f64).abs() < 1e-15);
        assert!(r.ci_lo <= r.fer && r.fer <= r.ci_hi);
    }

    #[test]
    fn bad_stop_rule() {
        assert!(StopRule::new(0, 10).is_err());
        assert!(StopRule::new(10, 0).is_err());
    }

    #[test]
    fn thread_count_does_not_matter() {
        let h = hamming74();
        let cfg = DecoderConfig::min_sum();
        let ch = ChannelModel::biawgn(0.8).unwrap();
        let stop = StopRule::new(30, 20_000).unwrap();
        let one = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap();
        let three = rayon::ThreadPoolBuilder::new()
            .num_threads(3)
            .build()
            .unwrap();
        let a = one.install(|| monte_carlo(&h, &cfg, &ch, stop, 99).unwrap());
        let b = three.install(|| monte_carlo(&h, &cfg, &ch, stop, 99).unwrap());
        assert!(a.same_outcome(&b));
    }

    #[test]
    fn csv_row_has_every_column() {
        let r = monte_carlo(
            &hamming74(),
            &DecoderConfig::gallager_a(),
            &ChannelModel::bsc(0.1).unwrap(),
            StopRule::new(5, 100).unwrap(),
            3,
        )
        .unwrap();
        let row = r.csv_row("hamming", 7, 3, "ga");
        assert_eq!(row.split(',').count(), CSV_HEADER.split(',').count());
        assert!(row.starts_with("hamming,7,3,ga,bsc,0.1,"));
    }
}
