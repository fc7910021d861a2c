//! Command-line surface: one thin binary over the library operations.
//!
//! Subcommands: `analyze`, `theta`, `member`, `decompose`, `numeq`,
//! `slice`, `imult`, `plot`. Query results print as JSON on stdout (or
//! to `--json PATH`); `member` and `numeq` exit 0/3 for scripting; exit
//! code 1 marks validation errors and 2 I/O or schema errors. Setting
//! `CMCONE_NO_COLOR` disables ANSI styling on diagnostics.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::cone::{chain_decompose, cm_cone, Membership};
use crate::grothendieck::{module_lattice, GClass};
use crate::hypersurface::{analyze, load_spec, validate, BranchSpec, SpecError, ValidatedSpec};
use crate::poly::{intersection_multiplicity, parse_poly};
use crate::rational::{format_rational, parse_rational};
use crate::svg::cone_figure;
use crate::theta::{ThetaMatrix, TrivialityVerdict};

#[derive(Parser)]
#[command(
    name = "cmcone",
    version,
    about = "Exact Cohen-Macaulay cones, theta pairings, and numerical-equivalence certificates for xi*eta + f hypersurfaces"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Run the full analysis pipeline on a branch spec
    Analyze {
        /// Path to the spec JSON document
        input: PathBuf,
        /// Write the report here instead of stdout
        #[arg(long)]
        json: Option<PathBuf>,
        /// Also write the cone figure here
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Theta matrix of an explicit spec
    Theta {
        input: PathBuf,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Cone membership of a class (exit 0 inside, 3 outside)
    Member {
        input: PathBuf,
        /// Coordinates as comma-separated rationals, e.g. "1/2,1/2"
        #[arg(long)]
        class: String,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Chain decomposition of a class over the subset ideal classes
    Decompose {
        input: PathBuf,
        #[arg(long)]
        class: String,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Numerical-triviality certificate (exit 0 trivial, 3 nontrivial)
    Numeq {
        input: PathBuf,
        #[arg(long)]
        class: String,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Lattice points on a rank slice of the cone
    Slice {
        input: PathBuf,
        #[arg(long)]
        rank: u32,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Intersection multiplicity of two plane-curve germs at the origin
    Imult {
        g: String,
        h: String,
        /// Variable names, comma separated
        #[arg(long, default_value = "x,y")]
        vars: String,
    },
    /// Cone figure as SVG (stdout unless --svg is given)
    Plot {
        input: PathBuf,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
}

/// Errors bucketed by exit code: validation failures exit 1, I/O and
/// schema problems exit 2.
#[derive(Debug)]
pub enum CliError {
    Validation(String),
    Io(String),
    Schema(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 1,
            CliError::Io(_) | CliError::Schema(_) => 2,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Validation(m) | CliError::Io(m) | CliError::Schema(m) => m,
        }
    }
}

impl From<SpecError> for CliError {
    fn from(e: SpecError) -> Self {
        match e {
            SpecError::Schema { .. } | SpecError::Poly { .. } => {
                CliError::Schema(e.to_string())
            }
            other => CliError::Validation(other.to_string()),
        }
    }
}

impl From<crate::cone::ConeError> for CliError {
    fn from(e: crate::cone::ConeError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<crate::theta::ThetaError> for CliError {
    fn from(e: crate::theta::ThetaError) -> Self {
        CliError::Validation(e.to_string())
    }
}

/// Runs a parsed command; returns the process exit code.
pub fn run(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Analyze { input, json, svg } => {
            let validated = load_validated(&input)?;
            let report = analyze(&validated)?;
            if let Some(svg_path) = svg {
                let figure = cone_figure(report.m)?;
                write_file(&svg_path, &figure)?;
            }
            emit(report.to_json_string(), json.as_deref())?;
            Ok(0)
        }
        Command::Theta { input, json } => {
            let validated = load_validated(&input)?;
            let matrix = ThetaMatrix::from_spec(validated.spec())?;
            let value = json!({ "m": matrix.m(), "matrix": matrix });
            emit(pretty(&value), json.as_deref())?;
            Ok(0)
        }
        Command::Member { input, class, json } => {
            let validated = load_validated(&input)?;
            let m = validated.spec().m();
            let class = parse_class(&class, m)?;
            let cone = cm_cone(m)?;
            let verdict = cone.contains(class.coords())?;
            let mut value = json!({ "class": class_strings(&class) });
            let obj = value.as_object_mut().unwrap();
            let code = match &verdict {
                Membership::Inside { combination } => {
                    obj.insert("member".into(), json!(true));
                    obj.insert(
                        "combination".into(),
                        json!(combination.iter().map(format_rational).collect::<Vec<_>>()),
                    );
                    0
                }
                Membership::Outside { separator } => {
                    obj.insert("member".into(), json!(false));
                    obj.insert(
                        "separating_facet".into(),
                        json!(separator
                            .iter()
                            .map(|c| c.to_string().parse::<i64>().unwrap_or_default())
                            .collect::<Vec<_>>()),
                    );
                    3
                }
            };
            emit(pretty(&value), json.as_deref())?;
            Ok(code)
        }
        Command::Decompose { input, class, json } => {
            let validated = load_validated(&input)?;
            let m = validated.spec().m();
            let class = parse_class(&class, m)?;
            let decomposition = chain_decompose(&class)?;
            let mut value = serde_json::to_value(&decomposition)
                .map_err(|e| CliError::Io(e.to_string()))?;
            value
                .as_object_mut()
                .unwrap()
                .insert("class".into(), json!(class_strings(&class)));
            emit(pretty(&value), json.as_deref())?;
            Ok(0)
        }
        Command::Numeq { input, class, json } => {
            let validated = load_validated(&input)?;
            let m = validated.spec().m();
            let class = parse_class(&class, m)?;
            let matrix = ThetaMatrix::from_spec(validated.spec())?;
            let verdict = matrix.certificate(&class)?;
            let mut value =
                serde_json::to_value(&verdict).map_err(|e| CliError::Io(e.to_string()))?;
            value
                .as_object_mut()
                .unwrap()
                .insert("class".into(), json!(class_strings(&class)));
            let code = match verdict {
                TrivialityVerdict::Trivial => 0,
                TrivialityVerdict::NonTrivial(_) => 3,
            };
            emit(pretty(&value), json.as_deref())?;
            Ok(code)
        }
        Command::Slice { input, rank, json } => {
            let validated = load_validated(&input)?;
            let m = validated.spec().m();
            let cone = cm_cone(m)?;
            let lattice = module_lattice(m)
                .map_err(|e| CliError::Validation(e.to_string()))?;
            let points = cone.rank_slice_lattice_points(rank, &lattice)?;
            let rendered: Vec<Vec<String>> = points
                .iter()
                .map(|p| p.iter().map(format_rational).collect())
                .collect();
            let value = json!({
                "rank": rank,
                "count": rendered.len(),
                "points": rendered,
            });
            emit(pretty(&value), json.as_deref())?;
            Ok(0)
        }
        Command::Imult { g, h, vars } => {
            let (x, y) = vars
                .split_once(',')
                .ok_or_else(|| CliError::Schema("--vars must look like \"x,y\"".into()))?;
            let (x, y) = (x.trim(), y.trim());
            let gp = parse_poly(&g, (x, y))
                .map_err(|e| CliError::Schema(format!("g: {e}")))?;
            let hp = parse_poly(&h, (x, y))
                .map_err(|e| CliError::Schema(format!("h: {e}")))?;
            let mult = intersection_multiplicity(&gp, &hp);
            let value = json!({
                "g": gp.to_string(),
                "h": hp.to_string(),
                "multiplicity": mult,
            });
            emit(pretty(&value), None)?;
            Ok(0)
        }
        Command::Plot { input, svg } => {
            let validated = load_validated(&input)?;
            let figure = cone_figure(validated.spec().m())?;
            match svg {
                Some(path) => write_file(&path, &figure)?,
                None => print!("{figure}"),
            }
            Ok(0)
        }
    }
}

/// Prints a diagnostic to stderr, styled unless `CMCONE_NO_COLOR` is set.
pub fn report_error(err: &CliError) {
    let plain = std::env::var_os("CMCONE_NO_COLOR").is_some();
    if plain {
        eprintln!("error: {}", err.message());
    } else {
        eprintln!("\x1b[31merror:\x1b[0m {}", err.message());
    }
}

fn load_validated(path: &Path) -> Result<ValidatedSpec, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let spec: BranchSpec = load_spec(&text)?;
    Ok(validate(spec)?)
}

fn parse_class(text: &str, m: usize) -> Result<GClass, CliError> {
    let coords: Result<Vec<_>, _> = text.split(',').map(|s| parse_rational(s)).collect();
    let coords =
        coords.map_err(|e| CliError::Schema(format!("--class: {e}")))?;
    if coords.len() != m {
        return Err(CliError::Validation(format!(
            "--class has {} coordinates but the spec has {m} branches",
            coords.len()
        )));
    }
    Ok(GClass(coords))
}

fn class_strings(class: &GClass) -> Vec<String> {
    class.coords().iter().map(format_rational).collect()
}

fn pretty(value: &Value) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("value serializes");
    out.push('\n');
    out
}

fn emit(content: String, path: Option<&Path>) -> Result<(), CliError> {
    match path {
        Some(p) => write_file(p, &content),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn write_file(path: &Path, content: &str) -> Result<(), CliError> {
    fs::write(path, content).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}
