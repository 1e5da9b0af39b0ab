use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use commentkit_core::ablation::AblationSetting;
use commentkit_core::baselines::BaselineKind;
use commentkit_core::corpus::{ClassDistribution, SplitName, Track};
use commentkit_core::eval::{render_report, ReportStyle};
use commentkit_core::pipeline::{
    cmd_ablate, cmd_baseline, cmd_evaluate, cmd_preprocess, cmd_rebalance, cmd_reproduce, cmd_synth, BaselineOptions,
    Expectations, RunConfig, Table,
};
use commentkit_core::published;
use commentkit_core::resources::Resources;
use commentkit_core::Error;

const EXIT_INVALID: u8 = 1;
const EXIT_MISMATCH: u8 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "commentkit",
    version,
    about = "Preprocess, rebalance, classify and score comment corpora"
)]
struct Cli {
    #[command(flatten)]
    global: Global,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Global {
    /// Seed for every random stage; overrides the config file.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Run configuration (flat TOML).
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Emoji name table replacing the bundled one.
    #[arg(long, global = true)]
    emoji_table: Option<PathBuf>,

    /// Synonym lexicon replacing the bundled one.
    #[arg(long, global = true)]
    lexicon: Option<PathBuf>,

    /// Stopword list replacing the bundled one.
    #[arg(long, global = true)]
    stopwords: Option<PathBuf>,

    /// Track whose defaults apply; must agree with the config file.
    #[arg(long, global = true)]
    track: Option<Track>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Normalize the text column of a corpus file.
    Preprocess {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Oversample with EDA, then downsample, a labeled training file.
    Rebalance {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Fit a baseline on one file and predict another.
    Baseline {
        kind: Kind,
        /// Labeled training file.
        #[arg(long)]
        train: PathBuf,
        /// File to predict; scored when it has labels.
        #[arg(long)]
        eval: PathBuf,
        /// Feature file(s) for lr-embed, looked up by id.
        #[arg(long)]
        features: Vec<PathBuf>,
        /// Fit on the text as given instead of preprocessing it first.
        #[arg(long)]
        raw: bool,
        /// Where to write `id<TAB>predicted_label` rows.
        #[arg(long)]
        predictions: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Score a predictions file against a labeled file.
    Evaluate {
        /// Labeled reference file.
        #[arg(long)]
        gold: PathBuf,
        /// Predictions from `baseline --predictions`.
        #[arg(long)]
        predictions: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Rebuild the reference tables from synthetic fixtures.
    Reproduce {
        /// Comma-separated table numbers out of 1, 4, 7; empty runs none.
        #[arg(long, value_parser = parse_tables)]
        tables: Option<TableList>,
        /// Replace one expected value, e.g. `majority.english=0.31/0.33/0.32`,
        /// `rebalanced=2826/204/1500` or `total.tamil=4161`.
        #[arg(long = "expect", value_name = "KEY=VALUE")]
        overrides: Vec<String>,
    },
    /// Write a synthetic labeled split.
    Synth {
        #[arg(long)]
        split: Split,
        #[arg(long)]
        out: PathBuf,
        /// Homophobic/Transphobic/Non-anti counts; defaults to the published
        /// counts of the track and split.
        #[arg(long, value_parser = parse_counts)]
        counts: Option<ClassDistribution>,
    },
    /// Compare preprocessing and augmentation settings on the configured
    /// train and dev files.
    Ablate {
        kind: Kind,
        /// Comma-separated settings (base, +PRE, +DA, +PRE+DA); defaults to
        /// every setting valid for the track.
        #[arg(long, value_delimiter = ',')]
        settings: Vec<String>,
        #[arg(long)]
        features: Vec<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Kind {
    Majority,
    LrTfidf,
    LrEmbed,
}

impl From<Kind> for BaselineKind {
    fn from(kind: Kind) -> Self {
        match kind {
            Kind::Majority => BaselineKind::Majority,
            Kind::LrTfidf => BaselineKind::LrTfidf,
            Kind::LrEmbed => BaselineKind::LrEmbed,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Tsv,
}

impl From<Format> for ReportStyle {
    fn from(format: Format) -> Self {
        match format {
            Format::Text => ReportStyle::Text,
            Format::Tsv => ReportStyle::Tsv,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Split {
    Train,
    Dev,
    Test,
}

impl From<Split> for SplitName {
    fn from(split: Split) -> Self {
        match split {
            Split::Train => SplitName::Train,
            Split::Dev => SplitName::Dev,
            Split::Test => SplitName::Test,
        }
    }
}

#[derive(Debug, Clone)]
struct TableList(Vec<Table>);

fn parse_tables(s: &str) -> Result<TableList, String> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<Table>().map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()
        .map(TableList)
}

fn parse_counts(s: &str) -> Result<ClassDistribution, String> {
    let parts: Vec<usize> = s
        .split(['/', ','])
        .map(|p| p.trim().parse::<usize>().map_err(|_| format!("bad count {p:?}")))
        .collect::<Result<_, _>>()?;
    match parts[..] {
        [h, t, n] => Ok(ClassDistribution::new(h, t, n)),
        _ => Err("expected three counts: homophobic/transphobic/non-anti".into()),
    }
}

fn parse_triple(s: &str) -> Result<[f64; 3], Error> {
    let parts: Vec<f64> = s
        .split('/')
        .map(|p| p.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| Error::Config(format!("bad score triple {s:?}")))?;
    parts
        .try_into()
        .map_err(|_| Error::Config(format!("expected three scores P/R/F1, got {s:?}")))
}

fn track_index(name: &str) -> Result<usize, Error> {
    let track: Track = name
        .parse()
        .map_err(|_| Error::Config(format!("unknown track {name:?}")))?;
    Ok(Track::ALL.iter().position(|&t| t == track).expect("track listed"))
}

fn apply_override(expectations: &mut Expectations, raw: &str) -> Result<(), Error> {
    let (key, value) = raw
        .split_once('=')
        .ok_or_else(|| Error::Config(format!("expected KEY=VALUE, got {raw:?}")))?;
    match key.split_once('.') {
        Some(("majority", track)) => expectations.majority[track_index(track)?] = parse_triple(value)?,
        Some(("total", track)) => {
            expectations.track_totals[track_index(track)?] = value
                .parse()
                .map_err(|_| Error::Config(format!("bad total {value:?}")))?
        }
        None if key == "rebalanced" => expectations.rebalanced = parse_counts(value).map_err(Error::Config)?,
        _ => return Err(Error::Config(format!("unknown expectation {key:?}"))),
    }
    Ok(())
}

fn run_config(global: &Global) -> Result<RunConfig, Error> {
    let mut config = match (&global.config, global.track) {
        (Some(path), track) => {
            let config = RunConfig::load(path)?;
            if let Some(track) = track.filter(|&t| t != config.track) {
                return Err(Error::Config(format!(
                    "--track {track} conflicts with track {} in {}",
                    config.track,
                    path.display()
                )));
            }
            config
        }
        (None, track) => RunConfig::for_track(track.unwrap_or(Track::English)),
    };
    if let Some(seed) = global.seed {
        config = config.with_seed(seed);
    }
    Ok(config)
}

fn resources(global: &Global) -> Result<Resources, Error> {
    Resources::load(
        global.emoji_table.as_deref(),
        global.lexicon.as_deref(),
        global.stopwords.as_deref(),
    )
}

fn run(cli: Cli) -> Result<u8, Error> {
    let global = &cli.global;
    let config = run_config(global)?;
    match cli.command {
        Command::Preprocess { input, out } => {
            let summary = cmd_preprocess(&input, &out, config.recipe, &resources(global)?)?;
            eprintln!(
                "wrote {} rows to {} ({} unknown emoji dropped)",
                summary.rows,
                out.display(),
                summary.unknown_emoji
            );
        }
        Command::Rebalance { input, out } => {
            let dist = cmd_rebalance(&input, &out, &config, &resources(global)?)?;
            println!("{dist}");
        }
        Command::Baseline {
            kind,
            train,
            eval,
            features,
            raw,
            predictions,
            format,
        } => {
            let options = BaselineOptions {
                features,
                preprocess: !raw,
                predictions_out: predictions,
            };
            let outcome = cmd_baseline(kind.into(), &train, &eval, &config, &options, &resources(global)?)?;
            match outcome.report {
                Some(report) => print!("{}", render_report(&report, format.into())),
                None => eprintln!(
                    "{} predictions made; evaluation file has no gold labels",
                    outcome.predictions.len()
                ),
            }
        }
        Command::Evaluate {
            gold,
            predictions,
            format,
        } => {
            let report = cmd_evaluate(&gold, &predictions)?;
            print!("{}", render_report(&report, format.into()));
        }
        Command::Reproduce { tables, overrides } => {
            let tables = tables.map_or_else(|| Table::ALL.to_vec(), |t| t.0);
            let mut expectations = Expectations::published();
            for raw in &overrides {
                apply_override(&mut expectations, raw)?;
            }
            let report = cmd_reproduce(&tables, &expectations, &resources(global)?, config.seed)?;
            print!("{}", report.render());
            if !report.all_passed() {
                return Ok(EXIT_MISMATCH);
            }
        }
        Command::Synth { split, out, counts } => {
            let split = SplitName::from(split);
            let dist = counts.unwrap_or_else(|| published::split_counts(config.track, split));
            cmd_synth(split, &dist, &out, config.seed)?;
            println!("{dist}");
        }
        Command::Ablate {
            kind,
            settings,
            features,
        } => {
            let settings = if settings.is_empty() {
                AblationSetting::for_track(config.track)
            } else {
                settings
                    .iter()
                    .map(|s| s.parse::<AblationSetting>())
                    .collect::<Result<_, _>>()?
            };
            let table = cmd_ablate(kind.into(), &settings, &config, &features, &resources(global)?)?;
            print!("{}", table.to_tsv());
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(EXIT_INVALID);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INVALID)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;
    use commentkit_core::corpus::Label;

    #[test]
    fn cli_definition_is_valid() {
        Cli::command().debug_assert();
    }

    #[test]
    fn table_lists() {
        assert_eq!(parse_tables("1,7").unwrap().0, [Table::Counts, Table::Majority]);
        assert!(parse_tables("").unwrap().0.is_empty());
        assert!(parse_tables("3").is_err());
    }

    #[test]
    fn counts_and_overrides() {
        assert_eq!(parse_counts("1/2/3").unwrap(), ClassDistribution::new(1, 2, 3));
        assert!(parse_counts("1/2").is_err());
        let mut e = Expectations::published();
        apply_override(&mut e, "majority.tamil-english=0.1/0.2/0.3").unwrap();
        assert_eq!(e.majority[2], [0.1, 0.2, 0.3]);
        apply_override(&mut e, "rebalanced=1/2/3").unwrap();
        assert_eq!(e.rebalanced.get(Label::NonAntiLgbt), 3);
        assert!(apply_override(&mut e, "nothing=1").is_err());
    }
}
