//! Harmonic intervals, chords and musicality.
//!
//! An interval is harmonic when its size belongs to the active
//! [`HarmonicSystem`]. A set of tones is a harmonic subset when every pair in
//! it is harmonic, and a three-tone harmonic subset of a scale is a chord.
//! The musicality of a mode is the number of three-tone chords in its
//! canonical scale; shifting a scale preserves every difference, so any
//! member of the mode gives the same count.
//!
//! Intervals are plain differences of tone numbers with no wrap at the
//! octave, so `{1, 10}` has interval 9 and not 3.
//!
//! The familiar list of triad step patterns is `(3,4)`, `(4,3)`, `(3,5)`,
//! `(5,3)` and `(4,4)`. Under the standard system `(4,5)` and `(5,4)` are
//! harmonic too (`{1,5,10}` has intervals 4, 5 and 9), and [`classify`]
//! follows the interval definition rather than that list.

use std::cmp::Reverse;
use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::theory::{enumerate_modes, Mode, Scale, Tone};

/// The set of interval sizes counted as harmonic.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HarmonicSystem {
    intervals: Vec<u8>,
    max_chord_size: usize,
}

impl HarmonicSystem {
    /// Intervals 3, 4, 5, 7, 8 and 9.
    pub fn standard() -> Self {
        Self::new(vec![3, 4, 5, 7, 8, 9]).unwrap()
    }

    /// The standard intervals plus the tritone (6).
    pub fn extended() -> Self {
        Self::new(vec![3, 4, 5, 6, 7, 8, 9]).unwrap()
    }

    /// Builds a system from arbitrary sizes in `1..=11`. The largest harmonic
    /// subset size is found by exhaustive search at construction.
    pub fn new(mut intervals: Vec<u8>) -> Result<Self> {
        let given = intervals.clone();
        intervals.sort_unstable();
        let dup = intervals.windows(2).any(|w| w[0] == w[1]);
        if dup || intervals.iter().any(|&i| !(1..=11).contains(&i)) {
            return Err(Error::InvalidHarmonicSystem(given));
        }
        let mut sys = HarmonicSystem {
            intervals,
            max_chord_size: 0,
        };
        sys.max_chord_size = search_max_subset(&sys);
        Ok(sys)
    }

    pub fn intervals(&self) -> &[u8] {
        &self.intervals
    }

    pub fn max_chord_size(&self) -> usize {
        self.max_chord_size
    }

    pub fn is_harmonic(&self, semitones: u32) -> bool {
        u8::try_from(semitones).is_ok_and(|s| self.intervals.binary_search(&s).is_ok())
    }

    /// The `n`-th smallest interval, 1-based.
    pub fn nth_interval(&self, n: usize) -> Option<u8> {
        n.checked_sub(1)
            .and_then(|i| self.intervals.get(i).copied())
    }
}

impl Default for HarmonicSystem {
    fn default() -> Self {
        Self::standard()
    }
}

/// Harmonic subset of size three or more, tones ascending.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Chord(Vec<Tone>);

impl Chord {
    pub fn new(mut tones: Vec<Tone>, sys: &HarmonicSystem) -> Result<Self> {
        tones.sort_unstable();
        let distinct = tones.windows(2).all(|w| w[0] < w[1]);
        if tones.len() < 3 || !distinct || !is_harmonic_subset(&tones, sys) {
            return Err(Error::NotAChord(tones.iter().map(|t| t.value()).collect()));
        }
        Ok(Chord(tones))
    }

    pub fn tones(&self) -> &[Tone] {
        &self.0
    }

    pub fn values(&self) -> Vec<u8> {
        self.0.iter().map(|t| t.value()).collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.0.iter().map(|t| t.name()).collect()
    }
}

impl fmt::Display for Chord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vals: Vec<String> = self.0.iter().map(|t| t.to_string()).collect();
        write!(f, "{{{}}}", vals.join(","))
    }
}

/// Consecutive differences of a chord's tones.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StepPattern(pub Vec<u8>);

impl StepPattern {
    pub fn steps(&self) -> &[u8] {
        &self.0
    }
}

impl fmt::Display for StepPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vals: Vec<String> = self.0.iter().map(|s| s.to_string()).collect();
        write!(f, "({})", vals.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MusicalityReport {
    pub mode: Mode,
    pub musicality: usize,
    /// Three-tone chords of the canonical scale.
    pub chords: Vec<Chord>,
}

pub fn is_harmonic_subset(tones: &[Tone], sys: &HarmonicSystem) -> bool {
    tones.iter().enumerate().all(|(i, a)| {
        tones[i + 1..]
            .iter()
            .all(|b| sys.is_harmonic(u32::from(a.value().abs_diff(b.value()))))
    })
}

fn search_max_subset(sys: &HarmonicSystem) -> usize {
    let mut best = 0;
    let mut tones = Vec::with_capacity(12);
    for mask in 1u16..(1 << 12) {
        let size = mask.count_ones() as usize;
        if size <= best {
            continue;
        }
        tones.clear();
        tones.extend(
            (0..12u8)
                .filter(|b| mask & (1 << b) != 0)
                .map(|b| Tone::new(b + 1).unwrap()),
        );
        if is_harmonic_subset(&tones, sys) {
            best = size;
        }
    }
    best
}

/// Size of the largest harmonic subset of `{1..12}`, by exhaustive search.
pub fn max_harmonic_subset_size(sys: &HarmonicSystem) -> usize {
    search_max_subset(sys)
}

/// Every harmonic subset of `{1..12}` of the maximum size.
pub fn max_harmonic_subsets(sys: &HarmonicSystem) -> Vec<Vec<Tone>> {
    let size = sys.max_chord_size();
    let chromatic = Scale::chromatic();
    let mut out = Vec::new();
    for_each_subset(chromatic.tones(), size, &mut |s| {
        if is_harmonic_subset(s, sys) {
            out.push(s.to_vec());
        }
    });
    out
}

fn for_each_subset(pool: &[Tone], size: usize, f: &mut impl FnMut(&[Tone])) {
    fn go(
        pool: &[Tone],
        start: usize,
        size: usize,
        cur: &mut Vec<Tone>,
        f: &mut impl FnMut(&[Tone]),
    ) {
        if cur.len() == size {
            f(cur);
            return;
        }
        let need = size - cur.len();
        for i in start..pool.len() {
            if pool.len() - i < need {
                break;
            }
            cur.push(pool[i]);
            go(pool, i + 1, size, cur, f);
            cur.pop();
        }
    }
    if size <= pool.len() {
        go(pool, 0, size, &mut Vec::with_capacity(size), f);
    }
}

/// Harmonic subsets of `s` with three up to `sys.max_chord_size()` tones,
/// sorted lexicographically.
pub fn enumerate_chords(s: &Scale, sys: &HarmonicSystem) -> Vec<Chord> {
    let mut out = Vec::new();
    for size in 3..=sys.max_chord_size().max(3) {
        for_each_subset(s.tones(), size, &mut |sub| {
            if is_harmonic_subset(sub, sys) {
                out.push(Chord(sub.to_vec()));
            }
        });
    }
    out.sort_unstable();
    out
}

/// Three-tone chords of `s` only.
pub fn enumerate_triads(s: &Scale, sys: &HarmonicSystem) -> Vec<Chord> {
    let mut out = Vec::new();
    for_each_subset(s.tones(), 3, &mut |sub| {
        if is_harmonic_subset(sub, sys) {
            out.push(Chord(sub.to_vec()));
        }
    });
    out
}

pub fn classify(tones: &[Tone], sys: &HarmonicSystem) -> Result<StepPattern> {
    let chord = Chord::new(tones.to_vec(), sys)?;
    Ok(StepPattern(
        chord
            .0
            .windows(2)
            .map(|w| w[1].value() - w[0].value())
            .collect(),
    ))
}

pub fn musicality(m: &Mode, sys: &HarmonicSystem) -> usize {
    enumerate_triads(m.canonical(), sys).len()
}

pub fn report(m: &Mode, sys: &HarmonicSystem) -> MusicalityReport {
    let chords = enumerate_triads(m.canonical(), sys);
    MusicalityReport {
        mode: m.clone(),
        musicality: chords.len(),
        chords,
    }
}

/// All `k`-tone modes, most musical first, ties in lexicographic order.
pub fn rank_modes(k: usize, sys: &HarmonicSystem) -> Result<Vec<MusicalityReport>> {
    let mut reports: Vec<_> = enumerate_modes(k)?.iter().map(|m| report(m, sys)).collect();
    reports.sort_by(|a, b| (Reverse(a.musicality), &a.mode).cmp(&(Reverse(b.musicality), &b.mode)));
    Ok(reports)
}

/// Maps a chord of `from` to the tones at the same scale positions in `to`.
/// Returns `None` when the scales differ in length or the chord is not
/// drawn from `from`.
pub fn relabel_chord(chord: &Chord, from: &Scale, to: &Scale) -> Option<Chord> {
    if from.len() != to.len() {
        return None;
    }
    chord
        .tones()
        .iter()
        .map(|t| from.tones().binary_search(t).ok().map(|i| to.tones()[i]))
        .collect::<Option<Vec<_>>>()
        .map(Chord)
}

/// Step pairs `(a, b)` with `a`, `b` and `a + b` all harmonic.
pub fn admissible_step_patterns(sys: &HarmonicSystem) -> BTreeSet<StepPattern> {
    let mut out = BTreeSet::new();
    for &a in sys.intervals() {
        for &b in sys.intervals() {
            if sys.is_harmonic(u32::from(a) + u32::from(b)) {
                out.insert(StepPattern(vec![a, b]));
            }
        }
    }
    out
}

/// Step patterns of the three-tone chords found in `s`.
pub fn realized_step_patterns(s: &Scale, sys: &HarmonicSystem) -> BTreeSet<StepPattern> {
    enumerate_triads(s, sys)
        .iter()
        .map(|c| classify(c.tones(), sys).expect("enumerated chords are harmonic"))
        .collect()
}
