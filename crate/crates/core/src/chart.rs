//! Chord charts: tones evenly spaced on a circle, a line for every harmonic
//! pair, and each complete triangle (or 4-clique) shaded as a chord.
//!
//! The first tone sits at 12 o'clock and the rest follow clockwise. All
//! geometry constants live in this module and coordinates are printed with
//! three decimals so the SVG bytes only depend on the input.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::harmony::HarmonicSystem;
use crate::scalar::Coordinate;
use crate::theory::{interval, Interval, Pitch, Scale, Tone};

pub const CANVAS_SIZE: f64 = 1000.0;
pub const RADIUS: f64 = 400.0;
pub const LABEL_RADIUS: f64 = 450.0;
const POINT_RADIUS: f64 = 9.0;
const EDGE_WIDTH: f64 = 3.0;
const CLIQUE_OPACITY: f64 = 0.18;
const FALLBACK_COLOR: &str = "#7f7f7f";

/// Stroke color for an interval size.
pub fn interval_color(semitones: u32) -> &'static str {
    match semitones {
        3 => "#1f77b4",
        4 => "#d62728",
        5 => "#2ca02c",
        6 => "#9467bd",
        7 => "#ff7f0e",
        8 => "#17becf",
        9 => "#8c564b",
        _ => FALLBACK_COLOR,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point<T> {
    pub x: T,
    pub y: T,
}

impl<T: Coordinate> Point<T> {
    pub fn distance(self, other: Point<T>) -> T {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChartEntry<T> {
    pub tone: Tone,
    pub label: String,
    pub position: Point<T>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChartLayout<T> {
    pub entries: Vec<ChartEntry<T>>,
    pub radius: T,
    pub center: Point<T>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ChartEdge {
    pub low: Tone,
    pub high: Tone,
    pub interval: Interval,
}

impl ChartEdge {
    /// Builds the edge for an unordered pair.
    pub fn between(a: Tone, b: Tone) -> Self {
        let (low, high) = if a <= b { (a, b) } else { (b, a) };
        ChartEdge {
            low,
            high,
            interval: interval(Pitch::from(low), Pitch::from(high)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ChartClique {
    pub tones: Vec<Tone>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChartOptions {
    /// Shade each clique with a translucent polygon.
    pub fill_cliques: bool,
}

impl Default for ChartOptions {
    fn default() -> Self {
        ChartOptions { fill_cliques: true }
    }
}

fn lit<T: Coordinate>(v: f64) -> T {
    T::from(v).expect("chart constants fit every float type")
}

pub fn label_for(tone: Tone) -> String {
    format!("{} ({})", tone.name(), tone.value())
}

/// Angle of position `i` out of `k`, in radians, measured clockwise on
/// screen from 3 o'clock.
fn angle<T: Coordinate>(i: usize, k: usize) -> T {
    let i = T::from(i).unwrap();
    let k = T::from(k).unwrap();
    -T::FRAC_PI_2() + T::TAU() * i / k
}

fn on_circle<T: Coordinate>(center: Point<T>, r: T, theta: T) -> Point<T> {
    Point {
        x: center.x + r * theta.cos(),
        y: center.y + r * theta.sin(),
    }
}

pub fn layout<T: Coordinate>(s: &Scale) -> ChartLayout<T> {
    let half: T = lit(CANVAS_SIZE / 2.0);
    let center = Point { x: half, y: half };
    let radius: T = lit(RADIUS);
    let k = s.len();
    let entries = s
        .tones()
        .iter()
        .enumerate()
        .map(|(i, &tone)| ChartEntry {
            tone,
            label: label_for(tone),
            position: on_circle(center, radius, angle(i, k)),
        })
        .collect();
    ChartLayout {
        entries,
        radius,
        center,
    }
}

pub fn harmonic_edges(s: &Scale, sys: &HarmonicSystem) -> Vec<ChartEdge> {
    let tones = s.tones();
    let mut edges = Vec::new();
    for (i, &a) in tones.iter().enumerate() {
        for &b in &tones[i + 1..] {
            let e = ChartEdge::between(a, b);
            if sys.is_harmonic(e.interval.semitones()) {
                edges.push(e);
            }
        }
    }
    edges.sort_unstable();
    edges
}

/// All complete subgraphs with `3..=max_size` vertices, sorted by tone tuple.
pub fn find_cliques(edges: &[ChartEdge], max_size: usize) -> Vec<ChartClique> {
    let mut higher: BTreeMap<Tone, BTreeSet<Tone>> = BTreeMap::new();
    for e in edges {
        if e.low == e.high {
            continue;
        }
        higher.entry(e.low).or_default().insert(e.high);
        higher.entry(e.high).or_default();
    }

    // Grow each clique only with vertices above its current top; the
    // candidate set is the intersection of the members' higher neighbours.
    fn grow(
        clique: &mut Vec<Tone>,
        candidates: &BTreeSet<Tone>,
        higher: &BTreeMap<Tone, BTreeSet<Tone>>,
        max_size: usize,
        out: &mut Vec<ChartClique>,
    ) {
        if clique.len() >= 3 {
            out.push(ChartClique {
                tones: clique.clone(),
            });
        }
        if clique.len() == max_size {
            return;
        }
        for &v in candidates {
            let next: BTreeSet<Tone> = candidates.intersection(&higher[&v]).copied().collect();
            clique.push(v);
            grow(clique, &next, higher, max_size, out);
            clique.pop();
        }
    }

    let mut out = Vec::new();
    for (&v, up) in &higher {
        let mut clique = vec![v];
        grow(&mut clique, up, &higher, max_size, &mut out);
    }
    out.sort_unstable();
    out
}

fn fmt3(v: f64) -> String {
    // avoid "-0.000"
    let s = format!("{v:.3}");
    if s == "-0.000" {
        "0.000".to_string()
    } else {
        s
    }
}

/// Renders the chart as an SVG 1.1 document.
pub fn render_svg(s: &Scale, sys: &HarmonicSystem, options: ChartOptions) -> Vec<u8> {
    let lay = layout::<f64>(s);
    let pos: BTreeMap<Tone, Point<f64>> =
        lay.entries.iter().map(|e| (e.tone, e.position)).collect();
    let edges = harmonic_edges(s, sys);

    let mut out = String::new();
    let size = fmt3(CANVAS_SIZE);
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{size}\" height=\"{size}\" viewBox=\"0 0 {size} {size}\">"
    );
    let _ = writeln!(
        out,
        "  <rect x=\"0\" y=\"0\" width=\"{size}\" height=\"{size}\" fill=\"#ffffff\"/>"
    );
    let _ = writeln!(
        out,
        "  <circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"none\" stroke=\"#bbbbbb\" stroke-width=\"1.500\"/>",
        fmt3(lay.center.x),
        fmt3(lay.center.y),
        fmt3(lay.radius)
    );

    if options.fill_cliques {
        let cliques = find_cliques(&edges, sys.max_chord_size().max(3));
        out.push_str("  <g class=\"cliques\">\n");
        for c in &cliques {
            let points: Vec<String> = c
                .tones
                .iter()
                .map(|t| format!("{},{}", fmt3(pos[t].x), fmt3(pos[t].y)))
                .collect();
            let vals: Vec<String> = c.tones.iter().map(|t| t.to_string()).collect();
            let _ = writeln!(
                out,
                "    <polygon data-chord=\"{}\" points=\"{}\" fill=\"#f2c14e\" fill-opacity=\"{}\" stroke=\"none\"/>",
                vals.join(","),
                points.join(" "),
                fmt3(CLIQUE_OPACITY)
            );
        }
        out.push_str("  </g>\n");
    }

    out.push_str("  <g class=\"edges\">\n");
    for e in &edges {
        let (a, b) = (pos[&e.low], pos[&e.high]);
        let _ = writeln!(
            out,
            "    <line data-interval=\"{}\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{}\" stroke-width=\"{}\"/>",
            e.interval,
            fmt3(a.x),
            fmt3(a.y),
            fmt3(b.x),
            fmt3(b.y),
            interval_color(e.interval.semitones()),
            fmt3(EDGE_WIDTH)
        );
    }
    out.push_str("  </g>\n");

    out.push_str("  <g class=\"tones\" font-family=\"sans-serif\" font-size=\"28\" text-anchor=\"middle\" dominant-baseline=\"middle\">\n");
    let k = lay.entries.len();
    for (i, e) in lay.entries.iter().enumerate() {
        let label_at = on_circle(lay.center, LABEL_RADIUS, angle(i, k));
        let _ = writeln!(
            out,
            "    <circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"#222222\"/>",
            fmt3(e.position.x),
            fmt3(e.position.y),
            fmt3(POINT_RADIUS)
        );
        let _ = writeln!(
            out,
            "    <text x=\"{}\" y=\"{}\">{}</text>",
            fmt3(label_at.x),
            fmt3(label_at.y),
            e.label
        );
    }
    out.push_str("  </g>\n</svg>\n");
    out.into_bytes()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harmony::enumerate_chords;

    fn scale(v: &[i64]) -> Scale {
        Scale::from_values(v).unwrap()
    }

    fn clique_values(cs: &[ChartClique]) -> Vec<Vec<u8>> {
        cs.iter()
            .map(|c| c.tones.iter().map(|t| t.value()).collect())
            .collect()
    }

    #[test]
    fn layout_two_points_top_and_bottom() {
        let l = layout::<f64>(&scale(&[1, 7]));
        let top = l.entries[0].position;
        let bottom = l.entries[1].position;
        assert!((top.x - 500.0).abs() < 1e-9 && (top.y - 100.0).abs() < 1e-9);
        assert!((bottom.x - 500.0).abs() < 1e-9 && (bottom.y - 900.0).abs() < 1e-9);
        assert_eq!(l.entries[0].label, "A (1)");
        assert_eq!(l.entries[1].label, "D# (7)");
    }

    #[test]
    fn layout_single_point_on_top() {
        let l = layout::<f32>(&scale(&[1]));
        assert_eq!(l.entries.len(), 1);
        assert!((l.entries[0].position.y - 100.0).abs() < 1e-3);
    }

    #[test]
    fn layout_chromatic_spacing() {
        let l = layout::<f64>(&Scale::chromatic());
        assert_eq!(l.entries.len(), 12);
        // chord length for 30 degrees
        let expected = 2.0 * RADIUS * (std::f64::consts::PI / 12.0).sin();
        for i in 0..12 {
            let a = l.entries[i].position;
            let b = l.entries[(i + 1) % 12].position;
            assert!((a.distance(b) - expected).abs() < 1e-9);
            assert!((a.distance(l.center) - RADIUS).abs() < 1e-9);
        }
        // clockwise: second tone is right of the first
        assert!(l.entries[1].position.x > l.entries[0].position.x);
    }

    #[test]
    fn edges_examples() {
        let std = HarmonicSystem::standard();
        assert!(harmonic_edges(&scale(&[1, 2]), &std).is_empty());
        let e = harmonic_edges(&scale(&[1, 4, 8]), &std);
        let ivs: Vec<u32> = e.iter().map(|e| e.interval.semitones()).collect();
        assert_eq!(ivs, vec![3, 7, 4]);

        let e = harmonic_edges(&scale(&[1, 2, 3, 4, 5, 6, 7]), &std);
        assert!(e.iter().all(|e| (3..=5).contains(&e.interval.semitones())));
        // 4 pairs at distance 3, 3 at 4, 2 at 5
        assert_eq!(e.len(), 9);
        assert!(find_cliques(&e, 3).is_empty());
        let e = harmonic_edges(&scale(&[1, 2, 3, 4, 5, 6, 7]), &HarmonicSystem::extended());
        assert_eq!(clique_values(&find_cliques(&e, 4)), vec![vec![1, 4, 7]]);
    }

    #[test]
    fn cliques_examples() {
        let std = HarmonicSystem::standard();
        let e = harmonic_edges(&scale(&[1, 4, 8]), &std);
        assert_eq!(clique_values(&find_cliques(&e, 3)), vec![vec![1, 4, 8]]);
        assert!(find_cliques(&[], 3).is_empty());

        let minor = scale(&[1, 3, 4, 6, 8, 9, 11]);
        let from_chart = clique_values(&find_cliques(&harmonic_edges(&minor, &std), 3));
        let from_harmony: Vec<Vec<u8>> = enumerate_chords(&minor, &std)
            .iter()
            .map(|c| c.values())
            .collect();
        assert_eq!(from_chart, from_harmony);
    }

    #[test]
    fn four_cliques_in_extended_system() {
        let ext = HarmonicSystem::extended();
        let s = Scale::chromatic();
        let cl = find_cliques(&harmonic_edges(&s, &ext), 4);
        let from_harmony: Vec<Vec<u8>> = enumerate_chords(&s, &ext)
            .iter()
            .map(|c| c.values())
            .collect();
        assert_eq!(clique_values(&cl), from_harmony);
        assert_eq!(cl.iter().filter(|c| c.tones.len() == 4).count(), 3);
    }

    #[test]
    fn edge_reversal_is_symmetric() {
        let a = Tone::new(3).unwrap();
        let b = Tone::new(10).unwrap();
        assert_eq!(ChartEdge::between(a, b), ChartEdge::between(b, a));
        let e = harmonic_edges(&Scale::chromatic(), &HarmonicSystem::standard());
        let mut flipped: Vec<ChartEdge> = e
            .iter()
            .map(|e| ChartEdge::between(e.high, e.low))
            .collect();
        flipped.sort_unstable();
        assert_eq!(flipped, e);
    }

    #[test]
    fn svg_single_tone() {
        let svg = String::from_utf8(render_svg(
            &scale(&[1]),
            &HarmonicSystem::standard(),
            ChartOptions::default(),
        ))
        .unwrap();
        assert_eq!(svg.matches("<line").count(), 0);
        assert_eq!(svg.matches("<text").count(), 1);
        assert!(svg.contains("A (1)"));
    }

    #[test]
    fn svg_without_cliques() {
        let svg = String::from_utf8(render_svg(
            &Scale::chromatic(),
            &HarmonicSystem::standard(),
            ChartOptions {
                fill_cliques: false,
            },
        ))
        .unwrap();
        assert_eq!(svg.matches("<polygon").count(), 0);
        assert!(!svg.contains("-0.000"));
    }
}
