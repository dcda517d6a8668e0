//! Combinatorial toolkit for 12-tone modes.
//!
//! Tones are numbered `A = 1` through `G# = 12`. A [`Scale`] is a strictly
//! increasing run of tones and a [`Mode`] is the class of scales related by a
//! uniform shift, stored by its member that starts on tone 1. On top of that
//! the crate counts harmonic chords ([`harmony`]), draws chord charts
//! ([`chart`]), turns integer sequences into two-voice duets ([`composer`])
//! and writes them out as Standard MIDI Files or text ([`score`]).
//!
//! The geometry in [`chart`] is generic over the float type and the mode
//! counting in [`theory`] over the integer type; the aliases at the crate root
//! pick the usual concrete ones.

pub mod chart;
pub mod composer;
pub mod error;
pub mod harmony;
pub mod scalar;
pub mod score;
pub mod theory;

pub use chart::{ChartClique, ChartEdge, ChartEntry, ChartLayout, ChartOptions, Point};
pub use composer::{Beat, ComposerConfig, Duet, SequenceSource};
pub use error::{Error, Result};
pub use harmony::{Chord, HarmonicSystem, MusicalityReport, StepPattern};
pub use score::MidiConfig;
pub use theory::{Interval, Mode, Pitch, Scale, Tone};

/// Chart layout with `f64` coordinates.
pub type Layout = ChartLayout<f64>;
/// Chart layout with `f32` coordinates.
pub type LayoutF32 = ChartLayout<f32>;
/// Canvas point with `f64` coordinates.
pub type Point64 = Point<f64>;
/// Exact mode count type used by the CLI and reports.
pub type ModeCount = u64;
