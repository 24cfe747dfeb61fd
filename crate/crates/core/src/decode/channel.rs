use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use super::DecodeError;

/// Memoryless binary-input channels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ChannelModel {
    /// Binary symmetric channel with crossover probability `0 <= eps < 1/2`.
    Bsc { crossover: f64 },
    /// BPSK (`0 -> +1`, `1 -> -1`) plus Gaussian noise of deviation `sigma > 0`.
    BiAwgn { sigma: f64 },
}

impl ChannelModel {
    pub fn bsc(crossover: f64) -> Result<Self, DecodeError> {
        if !(0.0..0.5).contains(&crossover) {
            return Err(DecodeError::Channel(format!(
                "crossover {crossover} not in [0, 0.5)"
            )));
        }
        Ok(ChannelModel::Bsc { crossover })
    }

    pub fn biawgn(sigma: f64) -> Result<Self, DecodeError> {
        if !(sigma.is_finite() && sigma > 0.0) {
            return Err(DecodeError::Channel(format!(
                "noise deviation {sigma} must be positive"
            )));
        }
        Ok(ChannelModel::BiAwgn { sigma })
    }

    /// BIAWGN at `Eb/N0` (dB) for a code of the given rate: `sigma^2 = 1 / (2 R Eb/N0)`.
    pub fn biawgn_ebn0_db(ebn0_db: f64, rate: f64) -> Result<Self, DecodeError> {
        if !(rate > 0.0 && rate <= 1.0) {
            return Err(DecodeError::Channel(format!("rate {rate} not in (0, 1]")));
        }
        let ebn0 = 10f64.powf(ebn0_db / 10.0);
        Self::biawgn((1.0 / (2.0 * rate * ebn0)).sqrt())
    }

    /// The parameter as a plain number (crossover or sigma).
    pub fn parameter(&self) -> f64 {
        match *self {
            ChannelModel::Bsc { crossover } => crossover,
            ChannelModel::BiAwgn { sigma } => sigma,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            ChannelModel::Bsc { .. } => "bsc",
            ChannelModel::BiAwgn { .. } => "awgn",
        }
    }
}

/// Channel output: bits for the BSC, LLRs for the BIAWGN channel.
#[derive(Debug, Clone, PartialEq)]
pub enum Received {
    Hard(Vec<u8>),
    Soft(Vec<f64>),
}

/// Sends `codeword` through `channel` using a generator seeded from `seed`.
pub fn transmit(codeword: &[u8], channel: &ChannelModel, seed: u64) -> Received {
    transmit_with(codeword, channel, &mut ChaCha8Rng::seed_from_u64(seed))
}

pub fn transmit_with<R: Rng + ?Sized>(
    codeword: &[u8],
    channel: &ChannelModel,
    rng: &mut R,
) -> Received {
    match *channel {
        ChannelModel::Bsc { crossover } => Received::Hard(
            codeword
                .iter()
                .map(|&c| (c & 1) ^ u8::from(crossover > 0.0 && rng.random::<f64>() < crossover))
                .collect(),
        ),
        ChannelModel::BiAwgn { sigma } => {
            let scale = 2.0 / (sigma * sigma);
            Received::Soft(
                codeword
                    .iter()
                    .map(|&c| {
                        let x = 1.0 - 2.0 * f64::from(c & 1);
                        let noise: f64 = StandardNormal.sample(rng);
                        scale * (x + sigma * noise)
                    })
                    .collect(),
            )
        }
    }
}
