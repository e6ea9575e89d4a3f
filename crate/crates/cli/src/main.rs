//! `adaptlearn`: validate catalogs, plan learning programs, replay
//! sessions and run the selection-fraction experiments.
//!
//! Exit status: 0 success, 1 invalid input, 2 infeasible program,
//! 3 I/O failure.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use adaptlearn_core::harness::{
    generate_corpus, run_bandwidth_sweep, run_device_matrix, sweep_points, CorpusSpec, Regime, DEFAULT_SEED,
};
use adaptlearn_core::model::{Catalog, DeviceProfile, SessionEnvironment, SubjectId, UserProfile};
use adaptlearn_core::ontology::{encode_acml, encode_program, parse_catalog, parse_uda_ontology, serialize_catalog, serialize_uda_ontology};
use adaptlearn_core::session::{run_session, ScriptedPolicy, SessionStatus};
use adaptlearn_core::skills::{available_skills, name_mismatches, remaining_subjects};
use adaptlearn_core::solver::{plan_program, PlanError};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "adaptlearn", version, about = "Device- and bandwidth-adaptive learning program planner")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a catalog and report every violation.
    Validate {
        catalog: PathBuf,
    },
    /// Compute the best learning program for one subject.
    Plan {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long)]
        target_subject: String,
        /// Write the dependency graph as a tab-separated edge list.
        #[arg(long)]
        sdg_out: Option<PathBuf>,
        /// Write the program as XML.
        #[arg(long)]
        program_out: Option<PathBuf>,
    },
    /// Replay a session driven by a choice script.
    Simulate {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long)]
        policy_file: PathBuf,
        /// Write every exchanged message as a numbered XML file.
        #[arg(long)]
        transcript_dir: Option<PathBuf>,
        /// Write the updated profile document.
        #[arg(long)]
        profile_out: Option<PathBuf>,
    },
    /// Selection fractions for the four device typologies.
    Matrix {
        #[arg(long)]
        regime: Regime,
        #[command(flatten)]
        report: ReportArgs,
    },
    /// Selection fractions on a text, audio and video device across
    /// bandwidths.
    Sweep {
        #[arg(long, default_value_t = 20)]
        points: u32,
        /// Spacing between points, kB/s.
        #[arg(long, default_value_t = 10)]
        step: u32,
        #[command(flatten)]
        report: ReportArgs,
    },
    /// Write a synthetic catalog.
    GenCorpus {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        subjects: Option<usize>,
        #[arg(long)]
        objects_per_subject: Option<usize>,
        /// Defaults to standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Skills the user has not acquired yet.
    Skills {
        #[arg(long)]
        catalog: PathBuf,
        #[arg(long)]
        profile: PathBuf,
    },
    /// Subjects of a skill the user does not know yet.
    Subjects {
        #[arg(long)]
        catalog: PathBuf,
        #[arg(long)]
        profile: PathBuf,
        /// Defaults to the profile's desired skill.
        #[arg(long)]
        skill: Option<String>,
    },
}

#[derive(Args)]
struct Inputs {
    #[arg(long)]
    catalog: PathBuf,
    /// User/device ontology document.
    #[arg(long)]
    profile: PathBuf,
    /// Network bandwidth, kB/s.
    #[arg(long)]
    bandwidth: f64,
}

#[derive(Args)]
struct ReportArgs {
    /// Corpus seed.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long)]
    csv: bool,
}

enum Failure {
    Invalid(String),
    Infeasible(String),
    Io(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Invalid(_) => 1,
            Failure::Infeasible(_) => 2,
            Failure::Io(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Invalid(m) | Failure::Infeasible(m) | Failure::Io(m) => m,
        }
    }
}

type Outcome = Result<(), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Outcome {
    fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn load_catalog(path: &Path) -> Result<Catalog, Failure> {
    let (catalog, report) =
        parse_catalog(&read(path)?).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))?;
    if !report.is_valid() {
        return Err(Failure::Invalid(format!("{}: invalid catalog\n{report}", path.display())));
    }
    Ok(catalog)
}

fn load_profile(path: &Path) -> Result<(DeviceProfile, UserProfile), Failure> {
    parse_uda_ontology(&read(path)?).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))
}

struct Loaded {
    catalog: Catalog,
    device: DeviceProfile,
    user: UserProfile,
    env: SessionEnvironment,
}

fn load(inputs: &Inputs) -> Result<Loaded, Failure> {
    let catalog = load_catalog(&inputs.catalog)?;
    let (device, user) = load_profile(&inputs.profile)?;
    let env = SessionEnvironment::new(inputs.bandwidth * 1000.0);
    env.check().map_err(|e| Failure::Invalid(e.to_string()))?;
    for m in name_mismatches(&catalog, &user) {
        match m.catalog_name {
            Some(name) => eprintln!(
                "warning: known subject {} is named {:?} in the profile but {:?} in the catalog",
                m.subject, m.profile_name, name
            ),
            None => eprintln!("warning: known subject {} is not in the catalog", m.subject),
        }
    }
    Ok(Loaded {
        catalog,
        device,
        user,
        env,
    })
}

fn validate(path: &Path) -> Outcome {
    let catalog = load_catalog(path)?;
    println!(
        "ok: {} subjects, {} learning objects, {} skills",
        catalog.subjects().len(),
        catalog.objects().len(),
        catalog.skills().len()
    );
    Ok(())
}

fn plan(inputs: &Inputs, target: &str, sdg_out: Option<&Path>, program_out: Option<&Path>) -> Outcome {
    let l = load(inputs)?;
    let target = SubjectId::from(target);
    let plan = match plan_program(&l.catalog, &l.device, &l.user, &l.env, &target) {
        Ok(plan) => plan,
        Err(PlanError::Infeasible(d)) => return Err(Failure::Infeasible(format!("infeasible: {d}"))),
        Err(e) => return Err(Failure::Invalid(e.to_string())),
    };
    if let Some(path) = sdg_out {
        write(path, &plan.sdg.edge_list())?;
    }
    if let Some(path) = program_out {
        write(path, &encode_program(&plan.program))?;
    }
    print!("{}", plan.program.report());
    println!(
        "# total duration {} s, objective {:.3} bytes/s",
        plan.program.total_duration(),
        plan.program.objective_f64()
    );
    Ok(())
}

fn simulate(inputs: &Inputs, policy_file: &Path, transcript_dir: Option<&Path>, profile_out: Option<&Path>) -> Outcome {
    let l = load(inputs)?;
    let mut policy = ScriptedPolicy::parse(&read(policy_file)?)
        .map_err(|e| Failure::Invalid(format!("{}: {e}", policy_file.display())))?;
    let out = run_session(&l.catalog, &l.device, &l.user, &l.env, &mut policy)
        .map_err(|e| Failure::Invalid(e.to_string()))?;

    if let Some(dir) = transcript_dir {
        fs::create_dir_all(dir).map_err(|e| Failure::Io(format!("{}: {e}", dir.display())))?;
        for (i, msg) in out.transcript().iter().enumerate() {
            write(&dir.join(format!("{:04}-{}.xml", i + 1, msg.message_type())), &encode_acml(msg))?;
        }
    }
    if let Some(path) = profile_out {
        write(path, &serialize_uda_ontology(&l.device, out.profile()))?;
    }
    for e in &out.events {
        println!("{e}");
    }
    let p = out.profile();
    println!("# known subjects: {}", p.known_subjects.keys().map(|s| s.as_str()).collect::<Vec<_>>().join(", "));
    println!("# acquired skills: {}", p.acquired_skills.iter().cloned().collect::<Vec<_>>().join(", "));
    match out.status {
        SessionStatus::Completed => {
            println!("# completed");
            Ok(())
        }
        SessionStatus::Interrupted => {
            println!("# interrupted");
            Ok(())
        }
        SessionStatus::Infeasible(d) => Err(Failure::Infeasible(format!("infeasible: {d}"))),
    }
}

fn emit(report: &adaptlearn_core::harness::SelectionFractionReport, csv: bool) {
    if csv {
        print!("{}", report.to_csv());
    } else {
        print!("{report}");
    }
}

fn corpus(seed: u64) -> Catalog {
    generate_corpus(&CorpusSpec {
        seed,
        ..CorpusSpec::default()
    })
}

fn gen_corpus(seed: u64, subjects: Option<usize>, objects: Option<usize>, out: Option<&Path>) -> Outcome {
    let defaults = CorpusSpec::default();
    let spec = CorpusSpec {
        seed,
        n_subjects: subjects.unwrap_or(defaults.n_subjects),
        objects_per_subject: objects.unwrap_or(defaults.objects_per_subject),
        ..defaults
    };
    spec.check().map_err(|e| Failure::Invalid(e.to_string()))?;
    let xml = serialize_catalog(&generate_corpus(&spec));
    match out {
        Some(path) => write(path, &xml),
        None => {
            print!("{xml}");
            Ok(())
        }
    }
}

fn skills(catalog: &Path, profile: &Path) -> Outcome {
    let catalog = load_catalog(catalog)?;
    let (_, user) = load_profile(profile)?;
    for name in available_skills(&catalog, &user.acquired_skills) {
        println!("{name}");
    }
    Ok(())
}

fn subjects(catalog: &Path, profile: &Path, skill: Option<&str>) -> Outcome {
    let catalog = load_catalog(catalog)?;
    let (_, user) = load_profile(profile)?;
    let skill = skill
        .or(user.desired_skill.as_deref())
        .ok_or_else(|| Failure::Invalid("no --skill given and the profile has no desired skill".into()))?;
    let left = remaining_subjects(&catalog, skill, &user.known_ids()).map_err(|e| Failure::Invalid(e.to_string()))?;
    for id in left {
        let name = catalog.subject(&id).map(|s| s.name.as_str()).unwrap_or("");
        println!("{id}\t{name}");
    }
    Ok(())
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Validate { catalog } => validate(&catalog),
        Command::Plan {
            inputs,
            target_subject,
            sdg_out,
            program_out,
        } => plan(&inputs, &target_subject, sdg_out.as_deref(), program_out.as_deref()),
        Command::Simulate {
            inputs,
            policy_file,
            transcript_dir,
            profile_out,
        } => simulate(&inputs, &policy_file, transcript_dir.as_deref(), profile_out.as_deref()),
        Command::Matrix { regime, report } => {
            emit(&run_device_matrix(&corpus(report.seed), regime), report.csv);
            Ok(())
        }
        Command::Sweep { points, step, report } => {
            if points == 0 || step == 0 {
                return Err(Failure::Invalid("--points and --step must be positive".into()));
            }
            emit(&run_bandwidth_sweep(&corpus(report.seed), &sweep_points(step, points)), report.csv);
            Ok(())
        }
        Command::GenCorpus {
            seed,
            subjects,
            objects_per_subject,
            out,
        } => gen_corpus(seed, subjects, objects_per_subject, out.as_deref()),
        Command::Skills { catalog, profile } => skills(&catalog, &profile),
        Command::Subjects { catalog, profile, skill } => subjects(&catalog, &profile, skill.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
