mod commands;
mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use sepalg::format::parse_document;
use sepalg::representation::Variant;
use sepalg::separation::CHECK_SEP_CAP;
use sepalg::{Algebra, Error};

use commands::{Ctx, DotObject};

/// Finite preseparative algebras: axioms, spectra, separation, duality and
/// lattice representations.
#[derive(Parser)]
#[command(name = "sepalg", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Algebra document to read.
    #[arg(long)]
    file: PathBuf,
    /// Emit a JSON report instead of text.
    #[arg(long)]
    json: bool,
    /// Seed for the sampled checks.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Override the carrier cap of the exhaustive separation check.
    #[arg(long)]
    cap: Option<usize>,
}

#[derive(Args)]
struct VariantArg {
    /// Which spectrum to build; defaults to the proper multivalued one when
    /// the carrier designates xi0 and xi1.
    #[arg(long, value_enum)]
    variant: Option<VariantName>,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantName {
    MultiProper,
    MultiAll,
    SingleProper,
    SingleAll,
}

impl VariantArg {
    fn resolve(&self, alg: &Algebra) -> Variant {
        match self.variant {
            None => commands::default_variant(alg),
            Some(VariantName::MultiProper) => Variant::MultiProper,
            Some(VariantName::MultiAll) => Variant::MultiAll,
            Some(VariantName::SingleProper) => Variant::SingleProper,
            Some(VariantName::SingleAll) => Variant::SingleAll,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Object {
    Lattice,
    Spectrum,
}

#[derive(Subcommand)]
enum Command {
    /// Axioms, Sep0, Sep, the residual calculus and the closure laws.
    Check {
        #[command(flatten)]
        common: Common,
    },
    /// Prime-ideal points and both topologies of a spectrum.
    Spectrum {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        variant: VariantArg,
    },
    /// Extends a filter and an ideal, given by generators, to a prime pair.
    Separate {
        #[command(flatten)]
        common: Common,
        /// Comma-separated filter generators.
        #[arg(long)]
        filter: String,
        /// Comma-separated ideal generators.
        #[arg(long)]
        ideal: String,
    },
    /// Round trips between the spectrum, its coherent space and the lattice
    /// of compact opens.
    Dualize {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        variant: VariantArg,
    },
    /// The lattice L, the map phi and the representation checks.
    Represent {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        variant: VariantArg,
    },
    /// Tables of the radical operations.
    Radical {
        #[command(flatten)]
        common: Common,
    },
    /// Graphviz Hasse diagram of the representation lattice or of the
    /// specialization order.
    Dot {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        variant: VariantArg,
        #[arg(long, value_enum, default_value = "lattice")]
        object: Object,
    },
}

fn load(path: &Path) -> sepalg::Result<Algebra> {
    let read = |p: &Path| {
        fs::read_to_string(p).map_err(|e| Error::Malformed(format!("cannot read {}: {e}", p.display())))
    };
    let doc = parse_document(&read(path)?)?;
    let dir = path.parent().unwrap_or(Path::new("")).to_path_buf();
    doc.build(|table| read(&dir.join(table)))
}

fn error_code(e: &Error) -> u8 {
    match e {
        Error::Parse { .. } | Error::Malformed(_) | Error::InvalidArgument(_) => 2,
        Error::Capacity { .. } => 3,
        Error::Internal(_) => 1,
    }
}

fn fail(e: &Error, json: bool) -> ExitCode {
    let code = error_code(e);
    if json {
        println!("{}", serde_json::to_string_pretty(&json!({ "error": e.to_string(), "exit_code": code })).unwrap());
    }
    eprintln!("error: {e}");
    ExitCode::from(code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let common = match &cli.command {
        Command::Check { common }
        | Command::Spectrum { common, .. }
        | Command::Separate { common, .. }
        | Command::Dualize { common, .. }
        | Command::Represent { common, .. }
        | Command::Radical { common }
        | Command::Dot { common, .. } => common,
    };
    if let Some(cap) = common.cap {
        eprintln!(
            "WARNING: --cap {cap} replaces the separation-check cap of {CHECK_SEP_CAP} carrier elements; \
             the check enumerates every filter and ideal and may not finish"
        );
    }
    let alg = match load(&common.file) {
        Ok(alg) => alg,
        Err(e) => return fail(&e, common.json),
    };
    let ctx = Ctx { alg, file: common.file.display().to_string(), seed: common.seed, cap: common.cap };
    let result = match &cli.command {
        Command::Check { .. } => commands::check(&ctx),
        Command::Spectrum { variant, .. } => commands::spectrum(&ctx, variant.resolve(&ctx.alg)),
        Command::Separate { filter, ideal, .. } => commands::separate_cmd(&ctx, filter, ideal),
        Command::Dualize { variant, .. } => commands::dualize(&ctx, variant.resolve(&ctx.alg)),
        Command::Represent { variant, .. } => commands::represent(&ctx, variant.resolve(&ctx.alg)),
        Command::Radical { .. } => commands::radical(&ctx),
        Command::Dot { variant, object, .. } => {
            let object = match object {
                Object::Lattice => DotObject::Lattice,
                Object::Spectrum => DotObject::Spectrum,
            };
            match commands::dot(&ctx, object, variant.resolve(&ctx.alg)) {
                Ok(Ok(text)) => {
                    if common.json {
                        println!("{}", serde_json::to_string_pretty(&json!({ "dot": text })).unwrap());
                    } else {
                        print!("{text}");
                    }
                    return ExitCode::SUCCESS;
                }
                Ok(Err(report)) => Ok(report),
                Err(e) => Err(e),
            }
        }
    };
    match result {
        Ok(report) => {
            if common.json {
                print!("{}", report.render_json());
            } else {
                print!("{}", report.render_text());
            }
            ExitCode::from(report.status.exit_code())
        }
        Err(e) => fail(&e, common.json),
    }
}
