use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use conevanish_core::parse::parse_document_with_field;
use conevanish_core::Field;

use crate::commands::{execute, Env, Invocation, OutcomeStatus};
use crate::report::{canonical_json, exit_code_for, render_outcome, Format, EXIT_USAGE};
use crate::scenario::Scenario;

#[derive(Debug, Parser)]
#[command(name = "conevanish", version, about = "Exact commutative algebra and blow-up certificate verifiers")]
pub struct Cli {
    /// Coefficient field, `Q` or `F<p>` (`Fp` means F31). Overrides declarations.
    #[arg(long, global = true)]
    pub field: Option<String>,
    /// Maximum number of S-pairs per Gröbner computation.
    #[arg(long, global = true)]
    pub budget_pairs: Option<u64>,
    /// Emit canonical JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Write the output to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct IdealInput {
    /// Declaration file.
    pub file: PathBuf,
    /// Ideal to use; defaults to the first one declared.
    #[arg(long)]
    pub ideal: Option<String>,
}

#[derive(Debug, Args)]
pub struct PairInput {
    /// Declaration file for V; its first ideal is used.
    #[arg(long)]
    pub iv: PathBuf,
    /// Declaration file for W; its first ideal is used.
    #[arg(long)]
    pub iw: PathBuf,
}

#[derive(Debug, Args)]
pub struct ReesInput {
    /// Declaration file holding the base and center ideals.
    #[arg(long, conflicts_with_all = ["iv", "iw"], requires = "center")]
    pub file: Option<PathBuf>,
    #[arg(long, requires = "file")]
    pub base: Option<String>,
    #[arg(long, requires = "file")]
    pub center: Option<String>,
    #[arg(long, requires = "iw")]
    pub iv: Option<PathBuf>,
    #[arg(long, requires = "iv")]
    pub iw: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Reduced Gröbner basis.
    Gb(IdealInput),
    /// Normal form of a polynomial modulo an ideal.
    Nf {
        #[command(flatten)]
        input: IdealInput,
        /// Polynomial expression in the ideal's ring.
        #[arg(long)]
        poly: String,
    },
    /// Eliminate all variables not listed.
    Eliminate {
        #[command(flatten)]
        input: IdealInput,
        /// Comma-separated variables to keep.
        #[arg(long)]
        keep: String,
    },
    /// Saturation, by default with respect to the irrelevant ideal.
    Saturate {
        #[command(flatten)]
        input: IdealInput,
        #[arg(long)]
        by: Option<String>,
    },
    /// Kernel of a declared ring map.
    Kernel {
        file: PathBuf,
        #[arg(long)]
        map: String,
        #[arg(long)]
        modulo: Option<String>,
    },
    /// Hilbert series and Hilbert function values.
    Hilbert {
        #[command(flatten)]
        input: IdealInput,
        #[arg(long, default_value_t = 10)]
        upto: i64,
    },
    /// Graded Betti table of the quotient ring.
    Betti(IdealInput),
    /// Cohen–Macaulay test.
    Cm(IdealInput),
    /// Graded Gorenstein test.
    Gorenstein(IdealInput),
    /// Sheaf cohomology dimension of a twist of the structure sheaf.
    Cohomology {
        #[command(flatten)]
        input: IdealInput,
        #[arg(long)]
        i: i64,
        #[arg(long, allow_hyphen_values = true)]
        twist: i64,
        /// Saturate first instead of rejecting unsaturated input.
        #[arg(long)]
        saturate: bool,
    },
    /// Segre ring and its 2×2 minors.
    Segre {
        #[arg(long)]
        n: i64,
        #[arg(long)]
        m: i64,
    },
    /// Product instance: the ideal of V×W and the cone divisor.
    Instance(PairInput),
    /// Rees algebra presentation.
    Rees(ReesInput),
    /// Special fiber of the blow-up.
    FiberCone(ReesInput),
    /// Affine chart of the blow-up.
    Chart {
        #[command(flatten)]
        input: ReesInput,
        #[arg(long)]
        j: i64,
    },
    /// Certificate verifiers.
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Run a scenario file.
    Run {
        scenario: PathBuf,
        /// Run independent invocations concurrently.
        #[arg(long)]
        parallel: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum VerifyCommand {
    /// Exceptional fiber of the blow-up along the cone divisor.
    #[command(alias = "prop32")]
    Fiber(PairInput),
    /// Projective normality of the Segre embedding of V×W.
    Normality {
        #[command(flatten)]
        input: PairInput,
        #[arg(long)]
        dmax: Option<i64>,
    },
    /// Gorenstein property of the blow-up.
    Gorenstein {
        #[command(flatten)]
        input: PairInput,
        #[arg(long, default_value = "hypothesis", value_parser = ["hypothesis", "direct"])]
        mode: String,
    },
    /// Nonvanishing example for a pair of smooth plane cubics (Fermat cubics by default).
    #[command(alias = "nonvanishing")]
    E1 {
        #[arg(long)]
        e1: Option<PathBuf>,
        #[arg(long)]
        e2: Option<PathBuf>,
        #[arg(long)]
        direct_gorenstein: bool,
    },
}

/// What the process should print and return.
#[derive(Debug)]
pub struct CliOutput {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

fn usage(msg: impl Into<String>) -> CliOutput {
    CliOutput { stdout: String::new(), stderr: format!("error: {}\n", msg.into()), code: EXIT_USAGE }
}

struct Loader {
    field: Option<Field>,
    env: Env,
}

impl Loader {
    fn doc_env(&self, path: &Path) -> Result<Env, String> {
        let src = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        let doc = parse_document_with_field(&src, self.field).map_err(|e| format!("{}: {e}", path.display()))?;
        Ok(Env::from_document(&doc))
    }

    /// Loads a whole file into the environment.
    fn load_all(&mut self, path: &Path) -> Result<(), String> {
        let e = self.doc_env(path)?;
        self.env.first_ideal = e.first_ideal.clone();
        self.env.ideals.extend(e.ideals);
        self.env.maps.extend(e.maps);
        self.env.polys.extend(e.polys);
        Ok(())
    }

    /// Loads the first ideal of a file under `name`.
    fn load_as(&mut self, path: &Path, name: &str) -> Result<(), String> {
        let e = self.doc_env(path)?;
        let first = e.first_ideal.ok_or_else(|| format!("{}: no ideal declared", path.display()))?;
        self.env.ideals.insert(name.to_string(), e.ideals[&first].clone());
        Ok(())
    }

    fn ideal_input(&mut self, input: &IdealInput, inv: Invocation) -> Result<Invocation, String> {
        self.load_all(&input.file)?;
        Ok(match &input.ideal {
            Some(n) => inv.arg("ideal", n),
            None => inv,
        })
    }

    fn pair(&mut self, p: &PairInput, inv: Invocation) -> Result<Invocation, String> {
        self.load_as(&p.iv, "iv")?;
        self.load_as(&p.iw, "iw")?;
        Ok(inv.arg("iv", "iv").arg("iw", "iw"))
    }

    fn rees(&mut self, r: &ReesInput, inv: Invocation) -> Result<Invocation, String> {
        match (&r.file, &r.iv, &r.iw) {
            (Some(f), _, _) => {
                self.load_all(f)?;
                let base = r.base.clone().or_else(|| self.env.first_ideal.clone()).ok_or("no base ideal")?;
                let center = r.center.clone().ok_or("--center is required")?;
                Ok(inv.arg("base", base).arg("center", center))
            }
            (None, Some(iv), Some(iw)) => self.pair(&PairInput { iv: iv.clone(), iw: iw.clone() }, inv),
            _ => Err("give either --file/--center or --iv/--iw".into()),
        }
    }
}

fn parse_field(s: &str) -> Result<Field, String> {
    let s = if s == "Fp" { "F31" } else { s };
    s.parse().map_err(|e: conevanish_core::AlgebraError| e.to_string())
}

/// Executes a parsed command line.
pub fn run(cli: &Cli) -> CliOutput {
    let field = match cli.field.as_deref().map(parse_field).transpose() {
        Ok(f) => f,
        Err(e) => return usage(e),
    };
    if let Some(b) = cli.budget_pairs {
        if b == 0 {
            return usage("--budget-pairs must be positive");
        }
        conevanish_core::groebner::set_default_pair_budget(b);
    }
    let format = if cli.json { Format::Json } else { Format::Text };

    if let Command::Run { scenario, parallel } = &cli.command {
        let sc = match Scenario::from_path(scenario, field) {
            Ok(s) => s,
            Err(e) => return usage(format!("{}: {e}", scenario.display())),
        };
        let sc = Scenario { budget_pairs: cli.budget_pairs.or(sc.budget_pairs), ..sc };
        let report = sc.run(*parallel);
        return CliOutput { stdout: report.emit(format), stderr: String::new(), code: report.exit_code() };
    }

    let mut loader = Loader { field, env: Env { field, ..Env::default() } };
    let built: Result<Invocation, String> = (|| {
        Ok(match &cli.command {
            Command::Gb(i) => loader.ideal_input(i, Invocation::new(&["gb"]))?,
            Command::Nf { input, poly } => loader.ideal_input(input, Invocation::new(&["nf"]).arg("expr", poly))?,
            Command::Eliminate { input, keep } => loader.ideal_input(input, Invocation::new(&["eliminate"]).arg("keep", keep))?,
            Command::Saturate { input, by } => {
                let inv = loader.ideal_input(input, Invocation::new(&["saturate"]))?;
                match by {
                    Some(b) => inv.arg("by", b),
                    None => inv,
                }
            }
            Command::Kernel { file, map, modulo } => {
                loader.load_all(file)?;
                let inv = Invocation::new(&["kernel"]).arg("map", map);
                match modulo {
                    Some(m) => inv.arg("modulo", m),
                    None => inv,
                }
            }
            Command::Hilbert { input, upto } => loader.ideal_input(input, Invocation::new(&["hilbert"]).arg("upto", upto))?,
            Command::Betti(i) => loader.ideal_input(i, Invocation::new(&["betti"]))?,
            Command::Cm(i) => loader.ideal_input(i, Invocation::new(&["cm"]))?,
            Command::Gorenstein(i) => loader.ideal_input(i, Invocation::new(&["gorenstein"]))?,
            Command::Cohomology { input, i, twist, saturate } => loader.ideal_input(
                input,
                Invocation::new(&["cohomology"]).arg("i", i).arg("twist", twist).arg("saturate", saturate),
            )?,
            Command::Segre { n, m } => Invocation::new(&["segre"]).arg("n", n).arg("m", m),
            Command::Instance(p) => loader.pair(p, Invocation::new(&["instance"]))?,
            Command::Rees(r) => loader.rees(r, Invocation::new(&["rees"]))?,
            Command::FiberCone(r) => loader.rees(r, Invocation::new(&["fiber-cone"]))?,
            Command::Chart { input, j } => loader.rees(input, Invocation::new(&["chart"]).arg("j", j))?,
            Command::Verify(v) => match v {
                VerifyCommand::Fiber(p) => loader.pair(p, Invocation::new(&["verify", "fiber"]))?,
                VerifyCommand::Normality { input, dmax } => {
                    let inv = loader.pair(input, Invocation::new(&["verify", "normality"]))?;
                    match dmax {
                        Some(d) => inv.arg("dmax", d),
                        None => inv,
                    }
                }
                VerifyCommand::Gorenstein { input, mode } => {
                    loader.pair(input, Invocation::new(&["verify", "gorenstein"]).arg("mode", mode))?
                }
                VerifyCommand::E1 { e1, e2, direct_gorenstein } => {
                    let mut inv = Invocation::new(&["verify", "e1"]).arg("direct", direct_gorenstein);
                    if let Some(p) = e1 {
                        loader.load_as(p, "e1")?;
                        inv = inv.arg("e1", "e1");
                    }
                    if let Some(p) = e2 {
                        loader.load_as(p, "e2")?;
                        inv = inv.arg("e2", "e2");
                    }
                    inv
                }
            },
            Command::Run { .. } => unreachable!("handled above"),
        })
    })();
    let inv = match built {
        Ok(i) => i,
        Err(e) => return usage(e),
    };
    let outcome = execute(&inv, &loader.env);
    if outcome.status == OutcomeStatus::Error {
        let msg = outcome.result["error"].as_str().unwrap_or("error").to_string();
        return usage(msg);
    }
    let stdout = match format {
        Format::Json => canonical_json(&outcome.result),
        Format::Text => render_outcome(&outcome),
    };
    CliOutput { stdout, stderr: String::new(), code: exit_code_for([outcome.status]) }
}
