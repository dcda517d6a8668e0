//! Tones, pitches, intervals, scales and modes.
//!
//! Tone numbers follow the table `A=1, A#=2, B=3, C=4, C#=5, D=6, D#=7,
//! E=8, F=9, F#=10, G=11, G#=12`. Note names are only used for display and
//! parsing; all arithmetic is on the numbers.

use std::fmt;
use std::str::FromStr;

use num_traits::PrimInt;

use crate::error::{Error, Result};
use crate::scalar::binomial;

/// Note names indexed by `tone - 1`.
pub const NOTE_NAMES: [&str; 12] = [
    "A", "A#", "B", "C", "C#", "D", "D#", "E", "F", "F#", "G", "G#",
];

/// A pitch class, `1..=12`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tone(u8);

impl Tone {
    pub const MIN: u8 = 1;
    pub const MAX: u8 = 12;

    pub fn new(value: u8) -> Result<Self> {
        if (Self::MIN..=Self::MAX).contains(&value) {
            Ok(Tone(value))
        } else {
            Err(Error::InvalidTone(value.into()))
        }
    }

    pub fn value(self) -> u8 {
        self.0
    }

    pub fn name(self) -> &'static str {
        NOTE_NAMES[usize::from(self.0 - 1)]
    }

    /// Parses a note name such as `C#` or `Bb`. Flats are folded onto the
    /// sharp below them.
    pub fn from_name(name: &str) -> Result<Self> {
        let trimmed = name.trim();
        let mut chars = trimmed.chars();
        let letter = chars.next().map(|c| c.to_ascii_uppercase());
        let natural: i64 = match letter {
            Some('A') => 1,
            Some('B') => 3,
            Some('C') => 4,
            Some('D') => 6,
            Some('E') => 8,
            Some('F') => 9,
            Some('G') => 11,
            _ => return Err(Error::UnknownNoteName(trimmed.to_string())),
        };
        let shift = match chars.as_str() {
            "" => 0,
            "#" | "s" => 1,
            "b" => -1,
            _ => return Err(Error::UnknownNoteName(trimmed.to_string())),
        };
        Ok(pitch_class(Pitch(natural + shift)))
    }
}

impl TryFrom<i64> for Tone {
    type Error = Error;

    fn try_from(value: i64) -> Result<Self> {
        u8::try_from(value)
            .ok()
            .and_then(|v| Tone::new(v).ok())
            .ok_or(Error::InvalidTone(value))
    }
}

impl FromStr for Tone {
    type Err = Error;

    /// Accepts either a number `1..=12` or a note name.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s.parse::<i64>() {
            Ok(n) => Tone::try_from(n),
            Err(_) => Tone::from_name(s),
        }
    }
}

impl fmt::Display for Tone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A tone number on the unbounded pitch line. `13` is `A` one octave above
/// `1`, `0` is the `G#` just below it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pitch(pub i64);

impl Pitch {
    pub fn value(self) -> i64 {
        self.0
    }

    pub fn class(self) -> Tone {
        pitch_class(self)
    }

    /// Octave offset relative to the `1..=12` band.
    pub fn octave(self) -> i64 {
        (self.0 - 1).div_euclid(12)
    }
}

impl From<Tone> for Pitch {
    fn from(t: Tone) -> Self {
        Pitch(t.0.into())
    }
}

impl fmt::Display for Pitch {
    /// Formats as note name plus octave offset, e.g. `B0` or `G#-1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.class().name(), self.octave())
    }
}

/// Distance between two pitches in semitones.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Interval(pub u32);

impl Interval {
    pub fn semitones(self) -> u32 {
        self.0
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub fn interval(a: Pitch, b: Pitch) -> Interval {
    Interval(a.0.abs_diff(b.0) as u32)
}

pub fn pitch_class(p: Pitch) -> Tone {
    Tone((p.0 - 1).rem_euclid(12) as u8 + 1)
}

/// A strictly increasing sequence of tones.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Scale(Vec<Tone>);

impl Scale {
    pub fn new(tones: Vec<Tone>) -> Result<Self> {
        if tones.is_empty() || tones.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidScale(
                tones.iter().map(|t| i64::from(t.0)).collect(),
            ));
        }
        Ok(Scale(tones))
    }

    pub fn from_values(values: &[i64]) -> Result<Self> {
        let tones = values
            .iter()
            .map(|&v| Tone::try_from(v).map_err(|_| Error::InvalidScale(values.to_vec())))
            .collect::<Result<Vec<_>>>()?;
        Scale::new(tones)
    }

    /// The twelve-tone scale `(1, 2, ..., 12)`.
    pub fn chromatic() -> Self {
        Scale((1..=12).map(Tone).collect())
    }

    pub fn tones(&self) -> &[Tone] {
        &self.0
    }

    pub fn values(&self) -> Vec<u8> {
        self.0.iter().map(|t| t.0).collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Tone {
        self.0[0]
    }

    pub fn contains(&self, tone: Tone) -> bool {
        self.0.binary_search(&tone).is_ok()
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.0.iter().map(|t| t.name()).collect()
    }
}

impl FromStr for Scale {
    type Err = Error;

    /// Parses a comma separated list of tone numbers or note names.
    fn from_str(s: &str) -> Result<Self> {
        let tones = s
            .split(',')
            .map(str::trim)
            .filter(|p| !p.is_empty())
            .map(Tone::from_str)
            .collect::<Result<Vec<_>>>()?;
        Scale::new(tones)
    }
}

impl fmt::Display for Scale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", t.0)?;
        }
        Ok(())
    }
}

/// A scale class under uniform shift, held as the member starting on 1.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mode {
    canonical: Scale,
}

impl Mode {
    pub fn new(canonical: Scale) -> Result<Self> {
        if canonical.first().0 != 1 {
            return Err(Error::NotCanonical(canonical.values()));
        }
        Ok(Mode { canonical })
    }

    pub fn canonical(&self) -> &Scale {
        &self.canonical
    }

    pub fn tone_count(&self) -> usize {
        self.canonical.len()
    }

    /// `A B C# D E F# G#`.
    pub fn major() -> Self {
        Mode::from_canonical_values(&[1, 3, 5, 6, 8, 10, 12])
    }

    /// `A B C D E F G`.
    pub fn minor() -> Self {
        Mode::from_canonical_values(&[1, 3, 4, 6, 8, 9, 11])
    }

    pub fn chromatic() -> Self {
        Mode {
            canonical: Scale::chromatic(),
        }
    }

    fn from_canonical_values(values: &[u8]) -> Self {
        Mode {
            canonical: Scale(values.iter().map(|&v| Tone(v)).collect()),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.canonical.fmt(f)
    }
}

pub fn canonicalize(s: &Scale) -> Mode {
    let offset = s.first().0 - 1;
    Mode {
        canonical: Scale(s.0.iter().map(|t| Tone(t.0 - offset)).collect()),
    }
}

/// True when both scales have the same length and differ by one common shift.
pub fn is_equivalent(a: &Scale, b: &Scale) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let shift = i16::from(b.first().0) - i16::from(a.first().0);
    a.0.iter()
        .zip(&b.0)
        .all(|(x, y)| i16::from(y.0) - i16::from(x.0) == shift)
}

/// Realizes `mode` starting on `root`, refusing to wrap past tone 12.
pub fn transpose(mode: &Mode, root: Tone) -> Result<Scale> {
    let offset = root.0 - 1;
    let top = mode.canonical.0.last().map_or(1, |t| t.0) + offset;
    if top > Tone::MAX {
        return Err(Error::TransposeOutOfRange { root: root.0, top });
    }
    Ok(Scale(
        mode.canonical
            .0
            .iter()
            .map(|t| Tone(t.0 + offset))
            .collect(),
    ))
}

fn check_tone_count(k: usize) -> Result<()> {
    if (1..=12).contains(&k) {
        Ok(())
    } else {
        Err(Error::InvalidToneCount(k))
    }
}

/// All `k`-tone modes in lexicographic order.
pub fn enumerate_modes(k: usize) -> Result<Vec<Mode>> {
    check_tone_count(k)?;
    let mut out = Vec::new();
    let mut picked = vec![Tone(1)];
    extend_modes(&mut picked, 2, k, &mut out);
    Ok(out)
}

fn extend_modes(picked: &mut Vec<Tone>, next: u8, k: usize, out: &mut Vec<Mode>) {
    if picked.len() == k {
        out.push(Mode {
            canonical: Scale(picked.clone()),
        });
        return;
    }
    let remaining = k - picked.len();
    for t in next..=Tone::MAX {
        if usize::from(Tone::MAX - t) + 1 < remaining {
            break;
        }
        picked.push(Tone(t));
        extend_modes(picked, t + 1, k, out);
        picked.pop();
    }
}

/// Number of `k`-tone modes, `C(11, k - 1)`, in any integer type wide enough.
pub fn count_modes<T: PrimInt>(k: usize) -> Result<T> {
    check_tone_count(k)?;
    Ok(binomial(11, k as u32 - 1).expect("C(11, j) fits every primitive integer"))
}

/// Modes of every size, `2^11`.
pub fn total_modes<T: PrimInt>() -> T {
    (1..=12).fold(T::zero(), |acc, k| acc + count_modes::<T>(k).unwrap())
}

/// Modes times the twelve possible starting tones.
pub fn total_rooted_scales<T: PrimInt>() -> T {
    total_modes::<T>() * T::from(12).unwrap()
}
