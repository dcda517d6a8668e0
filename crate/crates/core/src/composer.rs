//! Turns an integer sequence into a two-voice duet.
//!
//! Each term `a` drives three independent choices:
//!
//! * melody: `a mod (k + 1)` picks scale degree `1..=k` of the mode, `0` is a rest;
//! * harmony: `a mod (n + 1)` picks the n-th smallest harmonic interval, which is
//!   subtracted from the melody pitch; `0`, or a result outside the mode, is a rest;
//! * rhythm: `a mod (p + 1)` picks an entry of the duration palette, `0` falls
//!   back to the first entry.
//!
//! Pitches live on the unbounded line, so a harmony note below `1` simply
//! sounds in a lower octave.

use std::fs;
use std::path::PathBuf;

use crate::error::{Error, Result};
use crate::harmony::HarmonicSystem;
use crate::theory::{pitch_class, Interval, Mode, Pitch, Tone};

/// Ticks in a quarter note at the default MIDI division.
pub const QUARTER: u32 = 480;

/// First `n` primes.
pub fn primes(n: usize) -> Vec<u64> {
    if n == 0 {
        return Vec::new();
    }
    // p_n < n (ln n + ln ln n) for n >= 6
    let nf = n as f64;
    let mut limit = if n < 6 {
        15
    } else {
        (nf * (nf.ln() + nf.ln().ln())).ceil() as usize + 1
    };
    loop {
        let found = sieve(limit);
        if found.len() >= n {
            return found.into_iter().take(n).collect();
        }
        limit *= 2;
    }
}

fn sieve(limit: usize) -> Vec<u64> {
    let mut composite = vec![false; limit + 1];
    let mut out = Vec::new();
    for i in 2..=limit {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        let mut j = i * i;
        while j <= limit {
            composite[j] = true;
            j += i;
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SourceKind {
    Primes,
    File(PathBuf),
    List(Vec<u64>),
}

/// Where the terms come from and how many to take.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceSource {
    pub kind: SourceKind,
    /// `None` takes every term of a file or list.
    pub count: Option<usize>,
}

impl SequenceSource {
    pub fn primes(count: usize) -> Self {
        SequenceSource {
            kind: SourceKind::Primes,
            count: Some(count),
        }
    }

    pub fn list(terms: Vec<u64>) -> Self {
        SequenceSource {
            kind: SourceKind::List(terms),
            count: None,
        }
    }

    pub fn file(path: impl Into<PathBuf>, count: Option<usize>) -> Self {
        SequenceSource {
            kind: SourceKind::File(path.into()),
            count,
        }
    }

    /// Produces the terms, checking each is positive.
    pub fn terms(&self) -> Result<Vec<u64>> {
        let all = match &self.kind {
            SourceKind::Primes => return Ok(primes(self.count.unwrap_or(0))),
            SourceKind::List(v) => v.clone(),
            SourceKind::File(path) => {
                let text = fs::read_to_string(path).map_err(|source| Error::Io {
                    path: path.clone(),
                    source,
                })?;
                parse_terms(&text)?
            }
        };
        if let Some(bad) = all.iter().find(|&&t| t == 0) {
            return Err(Error::InvalidTerm(bad.to_string()));
        }
        match self.count {
            None => Ok(all),
            Some(n) if n <= all.len() => Ok(all[..n].to_vec()),
            Some(n) => Err(Error::ShortSequence {
                requested: n,
                available: all.len(),
            }),
        }
    }
}

/// Whitespace separated positive integers.
pub fn parse_terms(text: &str) -> Result<Vec<u64>> {
    text.split_whitespace()
        .map(|w| match w.parse::<u64>() {
            Ok(v) if v > 0 => Ok(v),
            _ => Err(Error::InvalidTerm(w.to_string())),
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComposerConfig {
    pub mode: Mode,
    pub root: Tone,
    /// Where degree 1 sounds. Must have the root's pitch class.
    pub base_pitch: Pitch,
    pub system: HarmonicSystem,
    /// Durations in ticks, 1 to 12 entries.
    pub rhythm_palette: Vec<u32>,
}

impl ComposerConfig {
    /// Builds a config with the base pitch on the root's own number.
    pub fn new(mode: Mode, root: Tone) -> Self {
        ComposerConfig {
            mode,
            root,
            base_pitch: Pitch::from(root),
            system: HarmonicSystem::standard(),
            rhythm_palette: vec![QUARTER],
        }
    }

    pub fn validate(&self) -> Result<()> {
        let p = &self.rhythm_palette;
        if p.is_empty() || p.len() > 12 || p.contains(&0) {
            return Err(Error::InvalidPalette(p.clone()));
        }
        if pitch_class(self.base_pitch) != self.root {
            return Err(Error::BaseNotOnRoot {
                base: self.base_pitch.value(),
                root: self.root.value(),
            });
        }
        Ok(())
    }

    /// Whether a pitch's class is a tone of the mode rooted at `root`.
    pub fn in_rooted_scale(&self, p: Pitch) -> bool {
        let offset = i64::from(self.root.value()) - 1;
        self.mode
            .canonical()
            .tones()
            .iter()
            .any(|t| pitch_class(Pitch(i64::from(t.value()) + offset)) == pitch_class(p))
    }
}

impl Default for ComposerConfig {
    /// Major mode on A, standard intervals, quarter notes.
    fn default() -> Self {
        ComposerConfig::new(Mode::major(), Tone::new(1).unwrap())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Beat {
    pub source_term: u64,
    pub melody: Option<Pitch>,
    pub harmony: Option<Pitch>,
    pub duration: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Duet {
    pub beats: Vec<Beat>,
    pub config: ComposerConfig,
}

impl Duet {
    pub fn total_ticks(&self) -> u64 {
        self.beats.iter().map(|b| u64::from(b.duration)).sum()
    }
}

/// Scale degree `1..=k` for a term, or `None` for a rest.
pub fn melody_degree(term: u64, k: usize) -> Option<usize> {
    match (term % (k as u64 + 1)) as usize {
        0 => None,
        r => Some(r),
    }
}

/// Pitch of a 1-based degree, with degree 1 at the base pitch.
pub fn realize_melody(degree: usize, cfg: &ComposerConfig) -> Pitch {
    let tone = cfg.mode.canonical().tones()[degree - 1];
    Pitch(cfg.base_pitch.value() + i64::from(tone.value()) - 1)
}

pub fn harmony_interval_for(term: u64, sys: &HarmonicSystem) -> Option<Interval> {
    let n = sys.intervals().len() as u64;
    sys.nth_interval((term % (n + 1)) as usize)
        .map(|s| Interval(u32::from(s)))
}

/// The pitch `iv` below the melody, if it belongs to the rooted scale.
pub fn derive_harmony(melody: Pitch, iv: Interval, cfg: &ComposerConfig) -> Option<Pitch> {
    let h = Pitch(melody.value() - i64::from(iv.semitones()));
    cfg.in_rooted_scale(h).then_some(h)
}

pub fn rhythm_duration(term: u64, palette: &[u32]) -> u32 {
    match (term % (palette.len() as u64 + 1)) as usize {
        0 => palette[0],
        r => palette[r - 1],
    }
}

pub fn compose_beat(term: u64, cfg: &ComposerConfig) -> Beat {
    let melody = melody_degree(term, cfg.mode.tone_count()).map(|d| realize_melody(d, cfg));
    let harmony = melody.and_then(|m| {
        harmony_interval_for(term, &cfg.system).and_then(|iv| derive_harmony(m, iv, cfg))
    });
    Beat {
        source_term: term,
        melody,
        harmony,
        duration: rhythm_duration(term, &cfg.rhythm_palette),
    }
}

pub fn compose(seq: &SequenceSource, cfg: &ComposerConfig) -> Result<Duet> {
    cfg.validate()?;
    let terms = seq.terms()?;
    Ok(compose_terms(&terms, cfg))
}

/// Composes already validated terms. The config must pass
/// [`ComposerConfig::validate`].
pub fn compose_terms(terms: &[u64], cfg: &ComposerConfig) -> Duet {
    Duet {
        beats: terms.iter().map(|&t| compose_beat(t, cfg)).collect(),
        config: cfg.clone(),
    }
}
