use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("tone {0} is outside 1..=12")]
    InvalidTone(i64),

    #[error("unknown note name {0:?}")]
    UnknownNoteName(String),

    #[error("scale tones must be strictly increasing and within 1..=12: {0:?}")]
    InvalidScale(Vec<i64>),

    #[error("a mode must start on tone 1: {0:?}")]
    NotCanonical(Vec<u8>),

    #[error("tone count {0} is outside 1..=12")]
    InvalidToneCount(usize),

    #[error("transposing to root {root} pushes tone {top} past 12")]
    TransposeOutOfRange { root: u8, top: u8 },

    #[error("interval sizes must be distinct and within 1..=11: {0:?}")]
    InvalidHarmonicSystem(Vec<u8>),

    #[error("tones {0:?} do not form a chord in this harmonic system")]
    NotAChord(Vec<u8>),

    #[error("rhythm palette must hold 1..=12 positive durations, got {0:?}")]
    InvalidPalette(Vec<u32>),

    #[error("base pitch {base} does not sound the root tone {root}")]
    BaseNotOnRoot { base: i64, root: u8 },

    #[error("sequence term {0} is not a positive integer")]
    InvalidTerm(String),

    #[error("sequence holds {available} terms but {requested} were requested")]
    ShortSequence { requested: usize, available: usize },

    #[error("{voice} pitch {pitch} on beat {beat} maps to MIDI note {note}, outside 0..=127")]
    PitchOutOfRange {
        beat: usize,
        voice: &'static str,
        pitch: i64,
        note: i64,
    },

    #[error("delta time {0} exceeds the 28-bit MIDI limit")]
    DeltaTooLarge(u64),

    #[error("reading {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}
