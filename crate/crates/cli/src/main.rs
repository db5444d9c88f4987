//! `contalg`: checks and measurements on finite contact algebras and
//! finite spaces.
//!
//! Exit status is 0 when every `PROP` line passes, 1 when one fails and 2
//! on unreadable or invalid input.

mod commands;
mod files;
mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use contalg_core::dimension::DEFAULT_N_CAP;
use contalg_core::search::RelationClass;
use contalg_core::topology::rc_algebra;
use contalg_core::{FiniteSpace, LocalContactAlgebra};

use files::{parse_point_map, parse_set, AlgebraFile, ParseError, SpaceFile};
use report::Report;

#[derive(Parser)]
#[command(name = "contalg", version, about = "Finite contact algebras and their spaces")]
struct Cli {
    /// Close every input relation before use (`rs`: reflexive and symmetric).
    #[arg(long, global = true, value_enum)]
    close: Option<Closure>,
    /// Refuse algebras with more atoms than this.
    #[arg(long, global = true, default_value_t = 12)]
    cap_atoms: usize,
    /// Worker threads for the searches. Output does not depend on it.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Highest dimension level tried.
    #[arg(long, global = true, default_value_t = DEFAULT_N_CAP, allow_negative_numbers = true)]
    max_n: i64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Closure {
    Rs,
}

#[derive(Clone, Copy, ValueEnum)]
enum ContactClass {
    Any,
    ReflexiveSymmetric,
}

#[derive(Subcommand)]
enum Command {
    /// Report every contact, way-below and local contact axiom.
    Check { algebra: PathBuf },
    /// The algebraic dimension, level by level.
    Dim {
        algebra: PathBuf,
        /// An element of the witness set D, as an atom set; repeat for more.
        #[arg(long)]
        subset: Vec<String>,
    },
    /// The algebraic weight with a minimum base.
    Weight { algebra: PathBuf },
    /// The algebraic pi-weight with a minimum dense set.
    Piweight { algebra: PathBuf },
    /// The product of the given algebras, as an algebra file.
    Product {
        #[arg(required = true)]
        algebras: Vec<PathBuf>,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// The relative algebra below an element, as an algebra file.
    Relative {
        algebra: PathBuf,
        /// The element, as an atom set.
        #[arg(long)]
        at: String,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Computations on a finite space and its regular closed algebra.
    Space {
        #[command(subcommand)]
        command: SpaceCommand,
    },
    /// Tabulate atom relations up to isomorphism.
    Search {
        /// Largest atom count; every smaller one is included.
        #[arg(long)]
        atoms: usize,
        #[arg(long, value_enum, default_value = "any")]
        contact_class: ContactClass,
    },
    /// Every agreement between a space and its regular closed algebra.
    Crosscheck { space: PathBuf },
}

#[derive(Subcommand)]
enum SpaceCommand {
    /// Regular closed sets and their algebra.
    Rc {
        space: PathBuf,
        /// Also write the algebra file here.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Regular open sets and the closure isomorphism.
    Ro { space: PathBuf },
    /// Covering dimension against the algebraic dimension.
    Dim { space: PathBuf },
    /// Weight against the algebraic weight.
    Weight { space: PathBuf },
    /// Pi-weight against the algebraic pi-weight.
    Piweight { space: PathBuf },
    /// Connectedness of the space and of its algebra.
    Connected { space: PathBuf },
    /// The morphism induced by a continuous self-map, or laws over all of them.
    LambdaT {
        space: PathBuf,
        /// Images of the points in order, as `0,0,1`.
        map: Option<String>,
    },
}

#[derive(Debug, thiserror::Error)]
enum InputError {
    #[error("{0}: {1}")]
    Io(PathBuf, std::io::Error),
    #[error("{0}: {1}")]
    Parse(PathBuf, ParseError),
    #[error("{0}: {1}")]
    Argument(&'static str, String),
    #[error("{0}")]
    Invalid(#[from] contalg_core::Error),
}

enum Output {
    Report(Report),
    File(String, Option<PathBuf>),
}

fn read(path: &Path) -> Result<String, InputError> {
    fs::read_to_string(path).map_err(|e| InputError::Io(path.to_owned(), e))
}

impl Cli {
    fn jobs(&self) -> usize {
        self.jobs
            .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
    }

    fn algebra(&self, path: &Path) -> Result<LocalContactAlgebra, InputError> {
        let file = AlgebraFile::parse(&read(path)?).map_err(|e| InputError::Parse(path.to_owned(), e))?;
        Ok(file.build(self.cap_atoms, self.close.is_some())?)
    }

    fn space(&self, path: &Path) -> Result<FiniteSpace, InputError> {
        let file = SpaceFile::parse(&read(path)?).map_err(|e| InputError::Parse(path.to_owned(), e))?;
        Ok(file.build()?)
    }

    fn run(&self) -> Result<Output, InputError> {
        let (max_n, jobs) = (self.max_n, self.jobs());
        let report = match &self.command {
            Command::Check { algebra } => commands::check(&self.algebra(algebra)?),
            Command::Dim { algebra, subset } => {
                let l = self.algebra(algebra)?;
                let d = if subset.is_empty() {
                    None
                } else {
                    let atoms = l.algebra().atom_count();
                    let d = subset
                        .iter()
                        .map(|s| parse_set(s, 1, atoms, "atom"))
                        .collect::<Result<Vec<_>, _>>()
                        .map_err(|e| InputError::Argument("--subset", e.message))?;
                    Some(d)
                };
                commands::dim(&l, d, max_n, jobs)?
            }
            Command::Weight { algebra } => commands::weight(&self.algebra(algebra)?)?,
            Command::Piweight { algebra } => commands::piweight(&self.algebra(algebra)?)?,
            Command::Product { algebras, output } => {
                let factors = algebras.iter().map(|p| self.algebra(p)).collect::<Result<_, _>>()?;
                return Ok(Output::File(commands::product(factors)?, output.clone()));
            }
            Command::Relative { algebra, at, output } => {
                let l = self.algebra(algebra)?;
                let m = parse_set(at, 1, l.algebra().atom_count(), "atom")
                    .map_err(|e| InputError::Argument("--at", e.message))?;
                return Ok(Output::File(commands::relative(&l, m)?, output.clone()));
            }
            Command::Space { command } => self.space_command(command)?,
            Command::Search { atoms, contact_class } => {
                let class = match contact_class {
                    ContactClass::Any => RelationClass::Any,
                    ContactClass::ReflexiveSymmetric => RelationClass::ReflexiveSymmetric,
                };
                commands::search(*atoms, class, max_n, jobs)?
            }
            Command::Crosscheck { space } => commands::crosscheck(&self.space(space)?, max_n, jobs)?,
        };
        Ok(Output::Report(report))
    }

    fn space_command(&self, command: &SpaceCommand) -> Result<Report, InputError> {
        let path = match command {
            SpaceCommand::Rc { space, .. }
            | SpaceCommand::Ro { space }
            | SpaceCommand::Dim { space }
            | SpaceCommand::Weight { space }
            | SpaceCommand::Piweight { space }
            | SpaceCommand::Connected { space }
            | SpaceCommand::LambdaT { space, .. } => space,
        };
        let x = self.space(path)?;
        let rc = rc_algebra(&x);
        let mut r = Report::new();
        match command {
            SpaceCommand::Rc { output, .. } => {
                commands::space_rc(&mut r, &rc);
                if let Some(out) = output {
                    let text = AlgebraFile::from_lca(rc.lca()).to_string();
                    fs::write(out, text).map_err(|e| InputError::Io(out.clone(), e))?;
                }
            }
            SpaceCommand::Ro { .. } => commands::space_ro(&mut r, &x, &rc),
            SpaceCommand::Dim { .. } => commands::space_dim(&mut r, &x, &rc, self.max_n)?,
            SpaceCommand::Weight { .. } => commands::space_weight(&mut r, &x, &rc),
            SpaceCommand::Piweight { .. } => commands::space_piweight(&mut r, &x, &rc),
            SpaceCommand::Connected { .. } => commands::space_connected(&mut r, &x, &rc)?,
            SpaceCommand::LambdaT { map, .. } => {
                let map = map
                    .as_deref()
                    .map(|m| parse_point_map(m, x.point_count()))
                    .transpose()
                    .map_err(|e| InputError::Argument("map", e.message))?;
                commands::space_lambda_t(&mut r, &x, &rc, map, self.jobs())?
            }
        }
        Ok(r)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.run() {
        Ok(Output::Report(r)) => {
            print!("{}", r.render());
            ExitCode::from(u8::from(r.failed()))
        }
        Ok(Output::File(text, None)) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Ok(Output::File(text, Some(path))) => match fs::write(&path, text) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: {}: {e}", path.display());
                ExitCode::from(2)
            }
        },
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
