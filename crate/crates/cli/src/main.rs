use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use modalis::chart::{render_svg, ChartOptions};
use modalis::composer::{compose, ComposerConfig, SequenceSource};
use modalis::harmony::{classify, enumerate_chords, musicality, rank_modes};
use modalis::score::{write_midi, write_text_score, MidiConfig};
use modalis::theory::{canonicalize, enumerate_modes, Scale, Tone};
use modalis::{HarmonicSystem, Pitch};

#[derive(Debug, Parser)]
#[command(
    name = "modalis",
    version,
    about = "Enumerate, rank and chart 12-tone modes; compose duets from integer sequences"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print every k-tone mode with its musicality, in lexicographic order
    ListModes(RankArgs),
    /// Print every k-tone mode sorted by musicality, most musical first
    Rank(RankArgs),
    /// Print the chords and step patterns of a scale
    Analyze(AnalyzeArgs),
    /// Draw the chord chart of a scale as SVG
    Chart(ChartArgs),
    /// Compose a melody/harmony duet from an integer sequence
    Compose(ComposeArgs),
}

#[derive(Debug, Args)]
struct SystemArgs {
    /// Count the 6-semitone interval as harmonic
    #[arg(long)]
    extended: bool,
}

impl SystemArgs {
    fn system(&self) -> HarmonicSystem {
        if self.extended {
            HarmonicSystem::extended()
        } else {
            HarmonicSystem::standard()
        }
    }
}

#[derive(Debug, Args)]
struct RankArgs {
    /// Number of tones in the mode
    #[arg(long, short, value_parser = clap::value_parser!(u8).range(1..=12))]
    k: u8,
    #[command(flatten)]
    system: SystemArgs,
}

#[derive(Debug, Args)]
struct AnalyzeArgs {
    /// Scale as tone numbers (1,3,4,6) or note names (A,B,C,D)
    #[arg(long, short)]
    mode: String,
    #[command(flatten)]
    system: SystemArgs,
}

#[derive(Debug, Args)]
struct ChartArgs {
    /// Scale as tone numbers or note names
    #[arg(long, short)]
    mode: String,
    #[command(flatten)]
    system: SystemArgs,
    /// Leave chords unshaded
    #[arg(long)]
    no_cliques: bool,
    /// Output file; standard output when omitted
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ComposeArgs {
    /// Mode as tone numbers or note names; a scale not starting on A sets the root
    #[arg(long, short, default_value = "1,3,5,6,8,10,12")]
    mode: String,
    /// Root tone (number or note name); defaults to the first tone of --mode
    #[arg(long, short)]
    root: Option<String>,
    /// Pitch number where the root sounds; defaults to the root's own number
    #[arg(long, allow_hyphen_values = true)]
    base_pitch: Option<i64>,
    #[command(flatten)]
    system: SystemArgs,
    /// Use the first N primes
    #[arg(long, conflicts_with_all = ["sequence", "terms"])]
    primes: Option<usize>,
    /// Read whitespace separated positive integers from a file
    #[arg(long, conflicts_with = "terms")]
    sequence: Option<PathBuf>,
    /// Comma separated positive integers
    #[arg(long)]
    terms: Option<String>,
    /// Number of terms to take from --sequence
    #[arg(long, requires = "sequence")]
    count: Option<usize>,
    /// Comma separated durations in ticks, 1 to 12 entries
    #[arg(long, default_value = "480")]
    palette: String,
    /// Standard MIDI File output
    #[arg(long, short)]
    out: Option<PathBuf>,
    /// Text score output
    #[arg(long)]
    score: Option<PathBuf>,
    #[arg(long, default_value_t = 480)]
    ticks_per_quarter: u16,
    /// Microseconds per quarter note
    #[arg(long, default_value_t = 500_000)]
    tempo: u32,
    /// MIDI note for pitch 1
    #[arg(long, default_value_t = 57, value_parser = clap::value_parser!(u8).range(0..=127))]
    base_note: u8,
    #[arg(long, default_value_t = 0, value_parser = clap::value_parser!(u8).range(0..=127))]
    melody_program: u8,
    #[arg(long, default_value_t = 0, value_parser = clap::value_parser!(u8).range(0..=127))]
    harmony_program: u8,
}

#[derive(Debug)]
enum Failure {
    Invalid(String),
    Io(String),
    /// Reader went away, e.g. `| head`.
    ClosedPipe,
}

impl From<modalis::Error> for Failure {
    fn from(e: modalis::Error) -> Self {
        match e {
            modalis::Error::Io { .. } => Failure::Io(e.to_string()),
            _ => Failure::Invalid(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        if e.kind() == io::ErrorKind::BrokenPipe {
            return Failure::ClosedPipe;
        }
        Failure::Io(e.to_string())
    }
}

type CliResult = Result<(), Failure>;

fn parse_scale(spec: &str) -> Result<Scale, Failure> {
    spec.parse::<Scale>()
        .map_err(|e| Failure::Invalid(format!("bad mode spec {spec:?}: {e}")))
}

fn parse_list<T: std::str::FromStr>(what: &str, spec: &str) -> Result<Vec<T>, Failure> {
    spec.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<T>()
                .map_err(|_| Failure::Invalid(format!("bad {what} entry {s:?}")))
        })
        .collect()
}

fn write_file(path: &Path, bytes: &[u8]) -> CliResult {
    fs::write(path, bytes).map_err(|e| Failure::Io(format!("writing {}: {e}", path.display())))
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>, sep: &str) -> String {
    items
        .into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(sep)
}

fn list_modes(args: &RankArgs, out: &mut impl Write) -> CliResult {
    let sys = args.system.system();
    for m in enumerate_modes(args.k.into())? {
        writeln!(out, "{}\t{}", m, musicality(&m, &sys))?;
    }
    Ok(())
}

fn rank(args: &RankArgs, out: &mut impl Write) -> CliResult {
    let sys = args.system.system();
    for (i, r) in rank_modes(args.k.into(), &sys)?.iter().enumerate() {
        writeln!(
            out,
            "{}\t{}\t{}\t{}",
            i + 1,
            r.mode,
            r.musicality,
            join(&r.chords, " ")
        )?;
    }
    Ok(())
}

fn analyze(args: &AnalyzeArgs, out: &mut impl Write) -> CliResult {
    let sys = args.system.system();
    let scale = parse_scale(&args.mode)?;
    let mode = canonicalize(&scale);
    writeln!(out, "scale\t{scale}")?;
    writeln!(out, "names\t{}", scale.names().join(","))?;
    writeln!(out, "mode\t{mode}")?;
    writeln!(out, "intervals\t{}", join(sys.intervals(), ","))?;
    writeln!(out, "musicality\t{}", musicality(&mode, &sys))?;
    for c in enumerate_chords(&scale, &sys) {
        let pattern = classify(c.tones(), &sys)?;
        writeln!(
            out,
            "chord\t{}\t{}\t{}",
            join(c.values(), ","),
            c.names().join(","),
            pattern
        )?;
    }
    Ok(())
}

fn chart(args: &ChartArgs, out: &mut impl Write) -> CliResult {
    let scale = parse_scale(&args.mode)?;
    let options = ChartOptions {
        fill_cliques: !args.no_cliques,
    };
    let svg = render_svg(&scale, &args.system.system(), options);
    match &args.out {
        Some(path) => write_file(path, &svg),
        None => Ok(out.write_all(&svg)?),
    }
}

fn compose_cmd(args: &ComposeArgs, out: &mut impl Write) -> CliResult {
    let scale = parse_scale(&args.mode)?;
    let mode = canonicalize(&scale);
    let root = match &args.root {
        None => scale.first(),
        Some(spec) => {
            let root: Tone = spec
                .parse()
                .map_err(|e| Failure::Invalid(format!("bad root {spec:?}: {e}")))?;
            if scale.first().value() != 1 && root != scale.first() {
                return Err(Failure::Invalid(format!(
                    "--root {} conflicts with --mode {}, which starts on {}",
                    root.name(),
                    scale,
                    scale.first().name()
                )));
            }
            root
        }
    };
    let mut cfg = ComposerConfig::new(mode, root);
    cfg.system = args.system.system();
    cfg.rhythm_palette = parse_list("palette", &args.palette)?;
    if let Some(b) = args.base_pitch {
        cfg.base_pitch = Pitch(b);
    }

    let source = if let Some(path) = &args.sequence {
        SequenceSource::file(path, args.count)
    } else if let Some(list) = &args.terms {
        SequenceSource::list(parse_list("term", list)?)
    } else {
        SequenceSource::primes(args.primes.unwrap_or(500))
    };

    let duet = compose(&source, &cfg)?;
    let midi_cfg = MidiConfig {
        ticks_per_quarter: args.ticks_per_quarter,
        tempo: args.tempo,
        melody_program: args.melody_program,
        harmony_program: args.harmony_program,
        base_note: args.base_note,
        ..MidiConfig::default()
    };
    if let Some(path) = &args.out {
        write_file(path, &write_midi(&duet, &midi_cfg)?)?;
    }
    let text = write_text_score(&duet);
    if let Some(path) = &args.score {
        write_file(path, text.as_bytes())?;
    }
    if args.out.is_none() && args.score.is_none() {
        out.write_all(text.as_bytes())?;
    }
    Ok(())
}

fn run(cli: &Cli, out: &mut impl Write) -> CliResult {
    match &cli.command {
        Command::ListModes(a) => list_modes(a, out),
        Command::Rank(a) => rank(a, out),
        Command::Analyze(a) => analyze(a, out),
        Command::Chart(a) => chart(a, out),
        Command::Compose(a) => compose_cmd(a, out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let result = run(&cli, &mut out).and_then(|()| Ok(out.flush()?));
    match result {
        Ok(()) | Err(Failure::ClosedPipe) => ExitCode::SUCCESS,
        Err(Failure::Invalid(msg)) | Err(Failure::Io(msg)) => {
            eprintln!("modalis: {msg}");
            ExitCode::from(1)
        }
    }
}
