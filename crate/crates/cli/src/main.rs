use clap::{Args, Parser, Subcommand, ValueEnum};
use fusionloc::commands::{cmd_build, cmd_classify, cmd_corpus, BuildOptions, CorpusOptions, ExportFormat, GroupSpec};
use fusionloc::input::{builtin_corpus, load_manifest, order_bound, CorpusEntry, Source};
use fusionloc::{EXIT_INPUT_ERROR, EXIT_OK, EXIT_VERIFICATION_FAILED};
use fusionloc_core::constructions::ObjectChoice;
use std::path::PathBuf;
use std::process::ExitCode;

/// Fusion systems, subcentric subgroups and localities of finite groups.
///
/// Exit status: 0 on success, 2 when a check fails, 3 on bad input. The group
/// order bound defaults to 5040 and can be changed with FUSIONLOC_ORDER_BOUND.
#[derive(Parser)]
#[command(name = "fusionloc", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GroupArgs {
    /// Builtin group: C1, S3, A4, S4, A5, D8, Q8, SL(2,3), C2xA5, C2xS4.
    #[arg(long, conflicts_with = "file")]
    builtin: Option<String>,
    /// JSON group file: {name, degree, generators} or {name, table}.
    #[arg(long)]
    file: Option<PathBuf>,
}

impl GroupArgs {
    fn spec(&self) -> GroupSpec {
        GroupSpec { builtin: self.builtin.clone(), file: self.file.clone() }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Objects {
    All,
    Delta,
    DeltaStar,
    Centric,
    Subcentric,
}

impl From<Objects> for ObjectChoice {
    fn from(o: Objects) -> Self {
        match o {
            Objects::All => ObjectChoice::All,
            Objects::Delta => ObjectChoice::Delta,
            Objects::DeltaStar => ObjectChoice::DeltaStar,
            Objects::Centric => ObjectChoice::Centric,
            Objects::Subcentric => ObjectChoice::Subcentric,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Export {
    Dot,
    Json,
}

#[derive(Args)]
struct ReportArgs {
    /// Stop after the first instance with a failing check.
    #[arg(long)]
    fail_fast: bool,
    /// Only report checks whose id matches this glob.
    #[arg(long)]
    only: Option<String>,
    /// Print the report as JSON.
    #[arg(long)]
    json: bool,
    /// Write the report to a file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl ReportArgs {
    fn options(&self) -> CorpusOptions {
        CorpusOptions { fail_fast: self.fail_fast, only: self.only.clone(), json: self.json, out: self.out.clone() }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Classify every subgroup of a Sylow subgroup in F_S(G).
    Classify {
        #[command(flatten)]
        group: GroupArgs,
        /// Prime; defaults to every prime dividing |G|.
        #[arg(long)]
        prime: Option<u64>,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build a locality, verify it and export it.
    Build {
        #[command(flatten)]
        group: GroupArgs,
        /// Prime; defaults to the smallest prime dividing |G|.
        #[arg(long)]
        prime: Option<u64>,
        #[arg(long, value_enum, default_value = "delta-star")]
        objects: Objects,
        /// Pass to L_{Delta*}(G)/Theta.
        #[arg(long)]
        quotient_theta: bool,
        /// Transporter category format.
        #[arg(long, value_enum)]
        export: Option<Export>,
        /// One DOT edge per pair of objects, labelled by multiplicity.
        #[arg(long)]
        collapse: bool,
        /// Directory for locality.json, the transporter export and check reports.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Print the check report as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Run every check on one group.
    Verify {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        prime: Option<u64>,
        #[command(flatten)]
        report: ReportArgs,
    },
    /// Run every check over a corpus: the builtins by default, or a manifest.
    Corpus {
        /// JSON list of {name?, builtin | file, prime?, notes?, allow_nondividing?}.
        #[arg(long)]
        manifest: Option<PathBuf>,
        #[command(flatten)]
        report: ReportArgs,
    },
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    let bound = order_bound()?;
    match cli.command {
        Command::Classify { group, prime, json, out } => cmd_classify(&group.spec(), prime, json, out.as_deref(), bound),
        Command::Build { group, prime, objects, quotient_theta, export, collapse, out, json } => {
            let export = export.map(|e| match e {
                Export::Dot => ExportFormat::Dot,
                Export::Json => ExportFormat::Json,
            });
            let opts = BuildOptions { prime, objects: objects.into(), quotient_theta, export, collapse, out, json };
            cmd_build(&group.spec(), &opts, bound)
        }
        Command::Verify { group, prime, report } => {
            let source = match (group.builtin, group.file) {
                (Some(b), None) => Source::Builtin(b),
                (None, Some(f)) => Source::File(f),
                _ => anyhow::bail!("give exactly one of --builtin and --file"),
            };
            let entry = CorpusEntry { name: None, source, prime, notes: String::new(), allow_nondividing: false };
            cmd_corpus(&[entry], &report.options(), bound)
        }
        Command::Corpus { manifest, report } => {
            let entries = match manifest {
                Some(m) => load_manifest(&m)?,
                None => builtin_corpus(),
            };
            cmd_corpus(&entries, &report.options(), bound)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT_ERROR } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::from(EXIT_OK),
        Ok(false) => ExitCode::from(EXIT_VERIFICATION_FAILED),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_INPUT_ERROR)
        }
    }
}
