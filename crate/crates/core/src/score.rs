//! Duet output: Standard MIDI Files and plain text scores.

use std::fmt::Write as _;

use crate::composer::{Beat, Duet};
use crate::error::{Error, Result};
use crate::theory::Pitch;

const MAX_DELTA: u64 = 0x0FFF_FFFF;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MidiConfig {
    pub ticks_per_quarter: u16,
    /// Microseconds per quarter note.
    pub tempo: u32,
    pub melody_program: u8,
    pub harmony_program: u8,
    /// MIDI note sounded by pitch 1. 57 is the A below middle C.
    pub base_note: u8,
    pub velocity: u8,
}

impl Default for MidiConfig {
    fn default() -> Self {
        MidiConfig {
            ticks_per_quarter: 480,
            tempo: 500_000,
            melody_program: 0,
            harmony_program: 0,
            base_note: 57,
            velocity: 80,
        }
    }
}

impl MidiConfig {
    pub fn midi_note(&self, p: Pitch) -> i64 {
        i64::from(self.base_note) + p.value() - 1
    }
}

/// Appends `v` as a variable-length quantity, 7 bits per byte, high first.
pub fn write_vlq(buf: &mut Vec<u8>, v: u32) {
    debug_assert!(u64::from(v) <= MAX_DELTA);
    let mut shift = 21;
    while shift > 0 && v >> shift == 0 {
        shift -= 7;
    }
    while shift > 0 {
        buf.push(((v >> shift) & 0x7f) as u8 | 0x80);
        shift -= 7;
    }
    buf.push((v & 0x7f) as u8);
}

fn delta(v: u64) -> Result<u32> {
    if v > MAX_DELTA {
        return Err(Error::DeltaTooLarge(v));
    }
    Ok(v as u32)
}

fn push_chunk(out: &mut Vec<u8>, tag: &[u8; 4], body: &[u8]) {
    out.extend_from_slice(tag);
    out.extend_from_slice(&(body.len() as u32).to_be_bytes());
    out.extend_from_slice(body);
}

fn meta(track: &mut Vec<u8>, kind: u8, data: &[u8]) {
    track.push(0x00);
    track.extend_from_slice(&[0xff, kind]);
    write_vlq(track, data.len() as u32);
    track.extend_from_slice(data);
}

fn tempo_track(cfg: &MidiConfig) -> Vec<u8> {
    let mut t = Vec::new();
    meta(&mut t, 0x51, &cfg.tempo.to_be_bytes()[1..]);
    // 4/4, 24 clocks per click, 8 32nds per quarter
    meta(&mut t, 0x58, &[4, 2, 24, 8]);
    t.extend_from_slice(&[0x00, 0xff, 0x2f, 0x00]);
    t
}

fn voice_track(
    d: &Duet,
    cfg: &MidiConfig,
    name: &str,
    channel: u8,
    program: u8,
    pick: impl Fn(&Beat) -> Option<Pitch>,
) -> Result<Vec<u8>> {
    let mut t = Vec::new();
    meta(&mut t, 0x03, name.as_bytes());
    t.extend_from_slice(&[0x00, 0xc0 | channel, program]);
    let mut gap = 0u64;
    for (i, beat) in d.beats.iter().enumerate() {
        let Some(p) = pick(beat) else {
            gap += u64::from(beat.duration);
            continue;
        };
        let note = cfg.midi_note(p);
        if !(0..=127).contains(&note) {
            return Err(Error::PitchOutOfRange {
                beat: i,
                voice: if channel == 0 { "melody" } else { "harmony" },
                pitch: p.value(),
                note,
            });
        }
        write_vlq(&mut t, delta(gap)?);
        t.extend_from_slice(&[0x90 | channel, note as u8, cfg.velocity]);
        write_vlq(&mut t, delta(u64::from(beat.duration))?);
        t.extend_from_slice(&[0x80 | channel, note as u8, 0]);
        gap = 0;
    }
    write_vlq(&mut t, delta(gap)?);
    t.extend_from_slice(&[0xff, 0x2f, 0x00]);
    Ok(t)
}

/// Format 1 file with a tempo track, a melody track (channel 1) and a
/// harmony track (channel 2). Rests are gaps between notes.
pub fn write_midi(d: &Duet, cfg: &MidiConfig) -> Result<Vec<u8>> {
    let melody = voice_track(d, cfg, "Melody", 0, cfg.melody_program, |b| b.melody)?;
    let harmony = voice_track(d, cfg, "Harmony", 1, cfg.harmony_program, |b| b.harmony)?;

    let mut header = Vec::with_capacity(6);
    header.extend_from_slice(&1u16.to_be_bytes());
    header.extend_from_slice(&3u16.to_be_bytes());
    header.extend_from_slice(&(cfg.ticks_per_quarter & 0x7fff).to_be_bytes());

    let mut out = Vec::new();
    push_chunk(&mut out, b"MThd", &header);
    push_chunk(&mut out, b"MTrk", &tempo_track(cfg));
    push_chunk(&mut out, b"MTrk", &melody);
    push_chunk(&mut out, b"MTrk", &harmony);
    Ok(out)
}

pub const TEXT_HEADER: &str = "beat\tterm\tmelody\tharmony\tduration";

fn voice_cell(p: Option<Pitch>) -> String {
    p.map_or_else(|| "rest".to_string(), |p| p.to_string())
}

/// One tab separated line per beat under a header line. Pitches print as
/// note name and octave offset, `B0`, `G#-1`.
pub fn write_text_score(d: &Duet) -> String {
    let mut out = String::new();
    out.push_str(TEXT_HEADER);
    out.push('\n');
    for (i, b) in d.beats.iter().enumerate() {
        let _ = writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}",
            i + 1,
            b.source_term,
            voice_cell(b.melody),
            voice_cell(b.harmony),
            b.duration
        );
    }
    out
}
