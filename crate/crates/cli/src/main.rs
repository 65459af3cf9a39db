//! `tl` — command-line workbench for propositional and modal team logics.
//!
//! Exit codes: 0 success/holds, 1 refuted with a witness (or a failed
//! precondition), 2 usage or parse error, 3 resource guard exceeded.

mod simplify;

use std::collections::BTreeSet;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use teamlog::bisim::{
    amalgamate, bounded_bisim, is_bisimulation, max_bisim, team_amalgamate, team_bisimilar,
    BisimError, Bisimulation, TeamBisim,
};
use teamlog::charform::{char_formula, team_char_formula, team_types, type_of};
use teamlog::interp::{
    bounded_entails_modal, check_interpolant, consequence_checks, uniform_interpolant_modal,
    BoundedEntailment, InterpError, Mode,
};
use teamlog::kripke::{eval_team, KripkeError, KripkeModel, TeamModel, WorldId};
use teamlog::limits::{CapExceeded, CapKind};
use teamlog::prop::{
    closure_report, entails_prop, eval_prop, models_of, uniform_interpolant_prop, Checked,
    Entailment, EvalError, Team, TeamProperty,
};
use teamlog::{parse, render, Formula, Limits, PropName};

#[derive(Parser)]
#[command(name = "tl", about = "Team-logic workbench: exact model checking, bisimulation, and uniform interpolation", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct FormulaInput {
    /// Formula text (see README for the grammar)
    #[arg(long, short = 'f', conflicts_with = "formula_file")]
    formula: Option<String>,
    /// Read the formula from a file instead
    #[arg(long)]
    formula_file: Option<PathBuf>,
}

impl FormulaInput {
    fn read(&self) -> Result<Formula, Failure> {
        let text = match (&self.formula, &self.formula_file) {
            (Some(t), None) => t.clone(),
            (None, Some(path)) => fs::read_to_string(path)
                .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?,
            _ => return Err(Failure::usage("exactly one of --formula/--formula-file is required".into())),
        };
        parse(text.trim()).map_err(|e| Failure::usage(format!("formula: {e}")))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a propositional team formula on a team
    Eval {
        #[command(flatten)]
        formula: FormulaInput,
        /// Team, e.g. "{p=1 q=1; p=0 q=1}" (empty: "{}")
        #[arg(long, conflicts_with = "team_file")]
        team: Option<String>,
        /// Team property file holding exactly one team
        #[arg(long)]
        team_file: Option<PathBuf>,
    },
    /// Evaluate a modal team formula on a Kripke team model
    EvalModal {
        #[command(flatten)]
        formula: FormulaInput,
        /// Model file (JSON)
        #[arg(long)]
        model: PathBuf,
        /// Team of worlds, overriding the model file's "team"
        #[arg(long)]
        team: Option<String>,
    },
    /// Enumerate the team models of a propositional formula
    Models {
        #[command(flatten)]
        formula: FormulaInput,
        /// Proposition domain (default: the formula language)
        #[arg(long)]
        props: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Closure analysis: downward, union, empty team, locality
    Closure {
        #[command(flatten)]
        formula: FormulaInput,
        #[arg(long)]
        props: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Least fragment of the team-logic table covering the formula
    Classify {
        #[command(flatten)]
        formula: FormulaInput,
    },
    /// Substitute top or bot for a proposition
    Subst {
        #[command(flatten)]
        formula: FormulaInput,
        #[arg(long, short = 'p')]
        prop: String,
        /// "top" or "bot"
        #[arg(long)]
        value: String,
    },
    /// Uniform interpolant with respect to a kept proposition set
    Interp {
        #[command(flatten)]
        formula: FormulaInput,
        /// Propositions to keep, e.g. "q" or "p q"
        #[arg(long)]
        keep: String,
        /// "exact" (default) or "bounded"
        #[arg(long, default_value = "exact")]
        mode: String,
        /// Optional consequences to verify the interpolant against
        #[arg(long = "consequence")]
        consequences: Vec<String>,
        #[arg(long)]
        json: bool,
    },
    /// Bisimulation between two models (dump format on stdout)
    Bisim {
        #[arg(long)]
        model_a: PathBuf,
        #[arg(long)]
        model_b: PathBuf,
        /// Bound k; omitted means the maximal (unbounded) bisimulation
        #[arg(long)]
        k: Option<usize>,
        /// Restriction set, e.g. "p q"
        #[arg(long)]
        props: String,
    },
    /// Characteristic formula of a pointed model or a team model
    Charform {
        #[arg(long)]
        model: PathBuf,
        /// A single world (default: the model file's team)
        #[arg(long)]
        world: Option<String>,
        #[arg(long)]
        props: String,
        #[arg(long)]
        k: usize,
    },
    /// Amalgamate two models along a shared-language bisimulation
    Amalgamate {
        #[arg(long)]
        model_a: PathBuf,
        #[arg(long)]
        model_b: PathBuf,
        /// Language of the first model, e.g. "p q"
        #[arg(long)]
        props_a: String,
        /// Language of the second model
        #[arg(long)]
        props_b: String,
        /// Bisimulation dump to glue along (default: the maximal one)
        #[arg(long)]
        bisim: Option<PathBuf>,
    },
    /// Entailment: exact for propositional formulas, bounded for modal
    Entails {
        /// Premise
        #[arg(long)]
        formula_a: String,
        /// Conclusion
        #[arg(long)]
        formula_b: String,
        /// World bound for the modal check (default from TL_MAX_WORLDS)
        #[arg(long)]
        max_worlds: Option<usize>,
    },
}

/// A failed run: message plus process exit code.
struct Failure {
    message: String,
    code: u8,
}

impl Failure {
    fn usage(message: String) -> Failure {
        Failure { message, code: 2 }
    }

    fn refuted(message: String) -> Failure {
        Failure { message, code: 1 }
    }

    fn cap(cap: CapExceeded) -> Failure {
        let advice = match cap.kind {
            CapKind::Props => "raise TL_MAX_PROPS to allow more propositions",
            CapKind::Worlds => "raise TL_MAX_WORLDS (hard ceiling 4)",
            CapKind::Types => "raise TL_TYPE_CAP",
            CapKind::ExactTypes => "switch to --mode bounded",
            CapKind::CoverWidth => "evaluate a smaller team or model",
        };
        Failure { message: format!("{cap} ({advice})"), code: 3 }
    }
}

impl From<EvalError> for Failure {
    fn from(e: EvalError) -> Failure {
        match e {
            EvalError::Cap(c) => Failure::cap(c),
            other => Failure::usage(other.to_string()),
        }
    }
}

impl From<KripkeError> for Failure {
    fn from(e: KripkeError) -> Failure {
        match e {
            KripkeError::Cap(c) => Failure::cap(c),
            other => Failure::usage(other.to_string()),
        }
    }
}

impl From<InterpError> for Failure {
    fn from(e: InterpError) -> Failure {
        match e {
            InterpError::Cap(c) => Failure::cap(c),
            InterpError::Kripke(KripkeError::Cap(c)) => Failure::cap(c),
            InterpError::Charform(teamlog::charform::CharformError::Cap(c)) => Failure::cap(c),
            InterpError::Prop(EvalError::Cap(c)) => Failure::cap(c),
            other => Failure::usage(other.to_string()),
        }
    }
}

impl From<BisimError> for Failure {
    fn from(e: BisimError) -> Failure {
        match e {
            BisimError::Kripke(KripkeError::Cap(c)) => Failure::cap(c),
            BisimError::EmptyBisimulation | BisimError::NotABisimulation(_) => {
                Failure::refuted(e.to_string())
            }
            BisimError::NotTeamBisimilar { .. } => Failure::refuted(e.to_string()),
            other => Failure::usage(other.to_string()),
        }
    }
}

fn limits_from_env() -> Result<Limits, Failure> {
    let mut limits = Limits::default();
    let read = |name: &str| -> Result<Option<u64>, Failure> {
        match std::env::var(name) {
            Ok(v) => v
                .parse::<u64>()
                .map(Some)
                .map_err(|_| Failure::usage(format!("{name} must be a number, got '{v}'"))),
            Err(_) => Ok(None),
        }
    };
    if let Some(v) = read("TL_MAX_PROPS")? {
        limits.max_props = v as usize;
    }
    if let Some(v) = read("TL_TYPE_CAP")? {
        limits.type_cap = v;
    }
    if let Some(v) = read("TL_MAX_WORLDS")? {
        limits.max_worlds = v as usize;
    }
    Ok(limits)
}

fn parse_props(text: &str) -> Result<BTreeSet<PropName>, Failure> {
    text.split_whitespace()
        .map(|s| PropName::new(s).map_err(|e| Failure::usage(e.to_string())))
        .collect()
}

fn read_model(path: &PathBuf) -> Result<(KripkeModel, Option<BTreeSet<WorldId>>), Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
    KripkeModel::from_json(&text).map_err(Failure::from)
}

fn read_team(
    inline: &Option<String>,
    file: &Option<PathBuf>,
    formula: &Formula,
) -> Result<Team, Failure> {
    let team = match (inline, file) {
        (Some(text), None) => Team::parse(text).map_err(|e| Failure::usage(e.to_string()))?,
        (None, Some(path)) => {
            let text = fs::read_to_string(path)
                .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
            let property =
                TeamProperty::parse(&text).map_err(|e| Failure::usage(e.to_string()))?;
            let mut teams: Vec<Team> = property.teams().cloned().collect();
            match teams.len() {
                1 => teams.pop().unwrap(),
                n => {
                    return Err(Failure::usage(format!(
                        "team file must hold exactly one team, found {n}"
                    )))
                }
            }
        }
        _ => return Err(Failure::usage("exactly one of --team/--team-file is required".into())),
    };
    // the empty team can be widened to the formula language for free
    team.extend_domain(&formula.free_props()).map_err(Failure::from)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> Result<u8, Failure> {
    let limits = limits_from_env()?;
    match command {
        Command::Eval { formula, team, team_file } => {
            let f = formula.read()?;
            let x = read_team(&team, &team_file, &f)?;
            let verdict = eval_prop(&f, &x, &limits)?;
            println!("{verdict}");
            Ok(u8::from(!verdict))
        }
        Command::EvalModal { formula, model, team } => {
            let f = formula.read()?;
            let (m, file_team) = read_model(&model)?;
            let worlds: BTreeSet<WorldId> = match team {
                Some(text) => text.split_whitespace().map(WorldId::new).collect(),
                None => file_team.ok_or_else(|| {
                    Failure::usage("no team: pass --team or add \"team\" to the model file".into())
                })?,
            };
            let verdict = eval_team(&f, &m, &worlds, &limits)?;
            println!("{verdict}");
            Ok(u8::from(!verdict))
        }
        Command::Models { formula, props, json } => {
            let f = formula.read()?;
            let domain = match props {
                Some(text) => parse_props(&text)?,
                None => f.free_props(),
            };
            let property = models_of(&f, &domain, &limits)?;
            if json {
                let teams: Vec<String> = property.teams().map(|t| t.to_string()).collect();
                let value = serde_json::json!({
                    "props": domain.iter().map(|p| p.as_str()).collect::<Vec<_>>(),
                    "count": teams.len(),
                    "teams": teams,
                });
                println!("{}", serde_json::to_string_pretty(&value).unwrap());
            } else {
                print!("{property}");
            }
            Ok(0)
        }
        Command::Closure { formula, props, json } => {
            let f = formula.read()?;
            let domain = match props {
                Some(text) => parse_props(&text)?,
                None => f.free_props(),
            };
            let report = closure_report(&f, &domain, &limits)?;
            if json {
                let pair = |flag: &Checked<(Team, Team)>| match flag {
                    Checked::Holds => serde_json::json!({"holds": true}),
                    Checked::Fails((a, b)) => serde_json::json!({
                        "holds": false,
                        "witness": [a.to_string(), b.to_string()],
                    }),
                };
                let single = |flag: &Checked<Team>| match flag {
                    Checked::Holds => serde_json::json!({"holds": true}),
                    Checked::Fails(t) => serde_json::json!({
                        "holds": false,
                        "witness": t.to_string(),
                    }),
                };
                let value = serde_json::json!({
                    "downward": pair(&report.downward),
                    "union": pair(&report.union),
                    "empty_team": single(&report.empty_team),
                    "local": pair(&report.local),
                });
                println!("{}", serde_json::to_string_pretty(&value).unwrap());
            } else {
                let show_pair = |name: &str, flag: &Checked<(Team, Team)>| match flag {
                    Checked::Holds => println!("{name}: holds"),
                    Checked::Fails((a, b)) => println!("{name}: fails  X={a}  Y={b}"),
                };
                show_pair("downward", &report.downward);
                show_pair("union", &report.union);
                match &report.empty_team {
                    Checked::Holds => println!("empty_team: holds"),
                    Checked::Fails(t) => println!("empty_team: fails  {t}"),
                }
                show_pair("local", &report.local);
            }
            Ok(0)
        }
        Command::Classify { formula } => {
            let f = formula.read()?;
            println!("{}", f.classify());
            if uses_nesplit(&f) {
                println!("note: \\/+ is attributed to the full team-logic rows");
            }
            Ok(0)
        }
        Command::Subst { formula, prop, value } => {
            let f = formula.read()?;
            let p = PropName::new(prop).map_err(|e| Failure::usage(e.to_string()))?;
            let v = match value.as_str() {
                "top" => true,
                "bot" => false,
                other => return Err(Failure::usage(format!("--value must be top or bot, got '{other}'"))),
            };
            println!("{}", render(&f.substitute_const(&p, v)));
            Ok(0)
        }
        Command::Interp { formula, keep, mode, consequences, json } => {
            let f = formula.read()?;
            let keep = parse_props(&keep)?;
            let mode = match mode.as_str() {
                "exact" => Mode::Exact,
                "bounded" => Mode::Bounded,
                other => return Err(Failure::usage(format!("--mode must be exact or bounded, got '{other}'"))),
            };
            let consequences: Vec<Formula> = consequences
                .iter()
                .map(|t| parse(t).map_err(|e| Failure::usage(format!("consequence: {e}"))))
                .collect::<Result<_, _>>()?;
            let propositional = f.is_propositional() && !f.has_bq();
            let (theta, report) = if propositional {
                let theta = uniform_interpolant_prop(&f, &keep, &limits)?;
                let report = check_interpolant(&f, &theta, &keep, &consequences, &limits)?;
                (theta, report)
            } else {
                // keep the construction report (mode, stats); add the
                // per-consequence verdicts
                let (theta, mut report) = uniform_interpolant_modal(&f, &keep, mode, &limits)?;
                report
                    .checks
                    .extend(consequence_checks(&f, &theta, &keep, &consequences, &limits)?);
                (theta, report)
            };
            if json {
                println!("{}", report.to_json());
            } else {
                println!("interpolant: {}", render(&theta));
                if let Some(simple) = simplify::equivalent_simple_form(&theta, &keep, &limits) {
                    println!("equivalent to: {simple}");
                }
                println!("{report}");
            }
            Ok(u8::from(!report.all_pass()))
        }
        Command::Bisim { model_a, model_b, k, props } => {
            let (ma, team_a) = read_model(&model_a)?;
            let (mb, team_b) = read_model(&model_b)?;
            let ps = parse_props(&props)?;
            let relation = match k {
                Some(k) => {
                    let fam = bounded_bisim(&ma, &mb, &ps, k);
                    Bisimulation::new(ps.clone(), fam.top().clone())
                }
                None => max_bisim(&ma, &mb, &ps),
            };
            print!("{}", relation.to_dump());
            match (team_a, team_b) {
                (Some(xa), Some(xb)) => {
                    let tm = TeamModel::new(ma, xa).map_err(Failure::from)?;
                    let tn = TeamModel::new(mb, xb).map_err(Failure::from)?;
                    match team_bisimilar(&tm, &tn, &ps, k) {
                        TeamBisim::Bisimilar { .. } => {
                            println!("# teams: bisimilar");
                            Ok(0)
                        }
                        TeamBisim::Blocked { side, world } => {
                            println!("# teams: blocked at {side} world '{world}'");
                            Ok(1)
                        }
                    }
                }
                _ => Ok(u8::from(relation.is_empty())),
            }
        }
        Command::Charform { model, world, props, k } => {
            let (m, team) = read_model(&model)?;
            let ps = parse_props(&props)?;
            match world {
                Some(name) => {
                    let w = WorldId::new(name);
                    let t = type_of(&m, &w, &ps, k).map_err(InterpError::from)?;
                    println!("type: {t}");
                    println!("formula: {}", render(&char_formula(&t)));
                }
                None => {
                    let team = team.ok_or_else(|| {
                        Failure::usage("pass --world or a model file with a \"team\"".into())
                    })?;
                    let tm = TeamModel::new(m, team).map_err(Failure::from)?;
                    for t in team_types(&tm, &ps, k).map_err(InterpError::from)? {
                        println!("type: {t}");
                    }
                    let chi = team_char_formula(&tm, &ps, k).map_err(InterpError::from)?;
                    println!("formula: {}", render(&chi));
                }
            }
            Ok(0)
        }
        Command::Amalgamate { model_a, model_b, props_a, props_b, bisim } => {
            let (ma, team_a) = read_model(&model_a)?;
            let (mb, team_b) = read_model(&model_b)?;
            let pa = parse_props(&props_a)?;
            let pb = parse_props(&props_b)?;
            match (team_a, team_b) {
                (Some(xa), Some(xb)) => {
                    let tm = TeamModel::new(ma, xa).map_err(Failure::from)?;
                    let tn = TeamModel::new(mb, xb).map_err(Failure::from)?;
                    let out = team_amalgamate(&tm, &pa, &tn, &pb).map_err(Failure::from)?;
                    println!("{}", out.amalgamation.model().to_json(Some(&out.team)));
                }
                _ => {
                    let shared: BTreeSet<PropName> = pa.intersection(&pb).cloned().collect();
                    let b = match bisim {
                        Some(path) => {
                            let text = fs::read_to_string(&path).map_err(|e| {
                                Failure::usage(format!("cannot read {}: {e}", path.display()))
                            })?;
                            Bisimulation::parse_dump(&text).map_err(Failure::from)?
                        }
                        None => max_bisim(&ma, &mb, &shared),
                    };
                    let out = amalgamate(&ma, &mb, &b, &pa, &pb).map_err(Failure::from)?;
                    debug_assert!(is_bisimulation(out.model(), &ma, &out.first_projection()).is_ok());
                    println!("{}", out.model().to_json(None));
                }
            }
            Ok(0)
        }
        Command::Entails { formula_a, formula_b, max_worlds } => {
            let f = parse(&formula_a).map_err(|e| Failure::usage(format!("formula-a: {e}")))?;
            let g = parse(&formula_b).map_err(|e| Failure::usage(format!("formula-b: {e}")))?;
            let propositional =
                f.is_propositional() && g.is_propositional() && !f.has_bq() && !g.has_bq();
            if propositional {
                match entails_prop(&f, &g, &limits)? {
                    Entailment::Holds => {
                        println!("true");
                        Ok(0)
                    }
                    Entailment::Refuted { witness } => {
                        println!("false");
                        println!("counterexample team: {witness}");
                        Ok(1)
                    }
                }
            } else {
                let bound = max_worlds.unwrap_or(limits.max_worlds);
                match bounded_entails_modal(&f, &g, bound, &limits)? {
                    BoundedEntailment::Holds { max_worlds, team_models_checked } => {
                        println!("true (no counterexample up to {max_worlds} worlds, {team_models_checked} team models checked)");
                        Ok(0)
                    }
                    BoundedEntailment::Refuted { model, team } => {
                        println!("false");
                        println!("counterexample: {}", model.to_json(Some(&team)));
                        Ok(1)
                    }
                }
            }
        }
    }
}

fn uses_nesplit(f: &Formula) -> bool {
    match f {
        Formula::NeSplit(_, _) => true,
        Formula::Prop(_) | Formula::NegProp(_) | Formula::Bottom | Formula::Top | Formula::Ne => false,
        Formula::Dep { args, target } => args.iter().any(uses_nesplit) || uses_nesplit(target),
        Formula::Inc { left, right } | Formula::Ind { left, right } => {
            left.iter().any(uses_nesplit) || right.iter().any(uses_nesplit)
        }
        Formula::And(l, r) | Formula::Split(l, r) | Formula::Or(l, r) => {
            uses_nesplit(l) || uses_nesplit(r)
        }
        Formula::Dia(g) | Formula::Box(g) | Formula::Bq(_, g) => uses_nesplit(g),
    }
}
