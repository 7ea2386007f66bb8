//! The `jstit` command line. [`run`] does all the work and returns the exit
//! code with the captured output, so the binary is a thin wrapper.
//!
//! Exit codes: 0 success, 1 negative verdict (invalid model, rejected
//! proof, falsified formula, fuzz counterexample), 2 usage or input error.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::harness::{
    fmp_demo, mutation_suite, prop1_agents, prop1_history_label, prop1_quotient, FuzzOptions, PROP1_ANTECEDENT,
    PROP1_WITNESS,
};
use crate::model::{load_model, validate, FiniteJstitModel};
use crate::proofkit::{check_proof, eliminate_s4, ConstantSpecification, Mode, Proof};
use crate::semantics::{EvalOptions, Evaluator};
use crate::syntax::{parse_formula, parse_formula_with, print_formula, AgentSet, Formula, ParseOptions};

#[derive(Parser, Debug)]
#[command(name = "jstit", version, about = "Explicit justification stit logic toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse formulas and print them in canonical form.
    Parse {
        #[arg(short = 'e', long = "expr", conflicts_with = "file", required_unless_present = "file")]
        expr: Option<String>,
        /// One formula per line; blank lines and `#` comments are skipped.
        #[arg(short = 'f', long = "file")]
        file: Option<PathBuf>,
        /// Accept the announcement atom `E t`.
        #[arg(long)]
        enable_et: bool,
    },
    /// Check a model file against every constraint.
    Validate { model: PathBuf },
    /// Evaluate a formula at one moment-history pair.
    Eval {
        model: PathBuf,
        #[arg(short = 'm', long = "moment")]
        moment: String,
        /// The leaf naming the history.
        #[arg(short = 'l', long = "leaf")]
        leaf: String,
        #[arg(short = 'e', long = "expr")]
        formula: String,
        #[command(flatten)]
        eval: EvalFlags,
    },
    /// Check a formula at every pair of a model.
    Valid {
        model: PathBuf,
        #[arg(short = 'e', long = "expr")]
        formula: String,
        #[command(flatten)]
        eval: EvalFlags,
    },
    /// Proof checking and transformation.
    #[command(subcommand)]
    Prove(ProveCommand),
    /// Fuzz the axiom schemes and rules against generated models.
    Fuzz {
        #[arg(long, default_value_t = 50)]
        models: usize,
        #[arg(long, default_value_t = 20)]
        instances: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        cs: Option<PathBuf>,
        /// Print every counterexample model in the model file format.
        #[arg(long)]
        emit_model: bool,
    },
    /// Built-in demonstrations.
    #[command(subcommand)]
    Demo(DemoCommand),
}

#[derive(Args, Debug)]
struct EvalFlags {
    /// Evaluate even if the model violates a constraint.
    #[arg(long)]
    waive_validation: bool,
    /// Accept the announcement atom `E t`.
    #[arg(long)]
    enable_et: bool,
}

impl EvalFlags {
    fn options(&self) -> EvalOptions {
        EvalOptions { waive_validation: self.waive_validation, enable_et: self.enable_et }
    }
}

#[derive(Subcommand, Debug)]
enum ProveCommand {
    /// Check a proof and print its conclusion.
    Check {
        proof: PathBuf,
        #[arg(long)]
        cs: Option<PathBuf>,
        /// Check with the S4 axiom scheme in place of the S4 rule.
        #[arg(long)]
        pi_prime: bool,
    },
    /// Rewrite S4 rule steps into S4 axiom instances.
    #[command(name = "eliminate-s4")]
    EliminateS4 {
        proof: PathBuf,
        #[arg(short = 'o', long = "out")]
        out: PathBuf,
        #[arg(long)]
        cs: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum DemoCommand {
    /// Evaluate the dense-time countermodel.
    Prop1,
    /// Finite models refute K(<>p & <>~p) and validate the dense-time formula.
    Fmp {
        #[arg(long, default_value_t = 100)]
        models: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Break each model constraint in turn and report what the validator says.
    Mutations {
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

/// Exit code and captured streams.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CliOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CliOutput {
    fn ok(stdout: String) -> Self {
        CliOutput { code: 0, stdout, stderr: String::new() }
    }

    fn verdict(pass: bool, stdout: String) -> Self {
        CliOutput { code: if pass { 0 } else { 1 }, stdout, stderr: String::new() }
    }

    fn negative(stdout: String, stderr: String) -> Self {
        CliOutput { code: 1, stdout, stderr }
    }

    fn usage(stderr: impl Into<String>) -> Self {
        CliOutput { code: 2, stdout: String::new(), stderr: stderr.into() }
    }
}

type Step<T> = Result<T, CliOutput>;

fn read(path: &Path) -> Step<String> {
    std::fs::read_to_string(path).map_err(|e| CliOutput::usage(format!("{}: {e}\n", path.display())))
}

fn model_file(path: &Path) -> Step<FiniteJstitModel> {
    load_model(&read(path)?).map_err(|e| CliOutput::usage(format!("{}: {e}\n", path.display())))
}

fn formula_for(model: &FiniteJstitModel, text: &str, et: bool) -> Step<Formula> {
    parse_formula_with(text, ParseOptions::new(model.agents()).with_et(et))
        .map_err(|e| CliOutput::usage(format!("formula: {e}\n")))
}

fn cs_file(path: Option<&Path>, agents: &AgentSet) -> Step<ConstantSpecification> {
    let Some(path) = path else { return Ok(ConstantSpecification::empty()) };
    let cs = ConstantSpecification::parse(&read(path)?, agents)
        .map_err(|e| CliOutput::usage(format!("{}: {e}\n", path.display())))?;
    cs.validate(agents).map_err(|e| CliOutput::usage(format!("{}: {e}\n", path.display())))?;
    Ok(cs)
}

fn evaluator<'m>(model: &'m FiniteJstitModel, flags: &EvalFlags) -> Step<Evaluator<'m>> {
    Evaluator::new(model, flags.options()).map_err(|e| CliOutput::negative(String::new(), format!("{e}\n")))
}

fn parse_cmd(expr: Option<String>, file: Option<PathBuf>, et: bool) -> Step<CliOutput> {
    let texts: Vec<String> = match (expr, file) {
        (Some(e), _) => vec![e],
        (None, Some(f)) => read(&f)?
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim().to_string())
            .filter(|l| !l.is_empty())
            .collect(),
        (None, None) => return Err(CliOutput::usage("parse: give -e EXPR or -f FILE\n")),
    };
    let mut out = String::new();
    for t in texts {
        let f = parse_formula_with(&t, ParseOptions::any_agents().with_et(et))
            .map_err(|e| CliOutput::usage(format!("{e}\n")))?;
        writeln!(out, "{}", print_formula(&f)).expect("string write");
    }
    Ok(CliOutput::ok(out))
}

fn eval_cmd(model: &Path, moment: &str, leaf: &str, formula: &str, flags: &EvalFlags) -> Step<CliOutput> {
    let model = model_file(model)?;
    let f = formula_for(&model, formula, flags.enable_et)?;
    let (m, h) = model.resolve_pair(moment, leaf).map_err(|e| CliOutput::usage(format!("{e}\n")))?;
    let mut ev = evaluator(&model, flags)?;
    let value = ev.eval(m, h, &f).map_err(|e| CliOutput::usage(format!("{e}\n")))?;
    Ok(CliOutput::verdict(value, format!("{value}\n")))
}

fn valid_cmd(model: &Path, formula: &str, flags: &EvalFlags) -> Step<CliOutput> {
    let model = model_file(model)?;
    let f = formula_for(&model, formula, flags.enable_et)?;
    let mut ev = evaluator(&model, flags)?;
    match ev.counterexample(&f).map_err(|e| CliOutput::usage(format!("{e}\n")))? {
        None => Ok(CliOutput::ok("valid\n".into())),
        Some((m, h)) => Ok(CliOutput::verdict(
            false,
            format!("falsified at ({},{})\n", model.moment_name(m), model.history_name(h)),
        )),
    }
}

fn proof_file(path: &Path) -> Step<Proof> {
    Proof::parse(&read(path)?).map_err(|e| CliOutput::usage(format!("{}: {e}\n", path.display())))
}

fn prove_cmd(cmd: ProveCommand) -> Step<CliOutput> {
    match cmd {
        ProveCommand::Check { proof, cs, pi_prime } => {
            let p = proof_file(&proof)?;
            let cs = cs_file(cs.as_deref(), &p.agents)?;
            let mode = if pi_prime { Mode::PiPrime } else { Mode::Pi };
            Ok(match check_proof(&p, &cs, mode) {
                Ok(c) => CliOutput::ok(format!("accepted: {}\n", print_formula(&c))),
                Err(r) => CliOutput::negative(format!("rejected: {r}\n"), String::new()),
            })
        }
        ProveCommand::EliminateS4 { proof, out, cs } => {
            let p = proof_file(&proof)?;
            let cs = cs_file(cs.as_deref(), &p.agents)?;
            match eliminate_s4(&p, &cs) {
                Ok(q) => {
                    std::fs::write(&out, q.to_text())
                        .map_err(|e| CliOutput::usage(format!("{}: {e}\n", out.display())))?;
                    let concl = q.conclusion().map(print_formula).unwrap_or_default();
                    Ok(CliOutput::ok(format!(
                        "wrote {}: {} lines, {} S4 steps replaced\nconclusion: {concl}\n",
                        out.display(),
                        q.len(),
                        p.s4_steps()
                    )))
                }
                Err(r) => Ok(CliOutput::negative(format!("rejected: {r}\n"), String::new())),
            }
        }
    }
}

fn fuzz_cmd(models: usize, instances: usize, seed: u64, cs: Option<PathBuf>, emit: bool) -> Step<CliOutput> {
    let agents = AgentSet::new(["i", "j"]).expect("valid agents");
    let cs = cs_file(cs.as_deref(), &agents)?;
    let opts = FuzzOptions { cs, emit_models: emit, ..FuzzOptions::new(models, instances, seed) };
    let report = crate::harness::fuzz(&opts);
    let mut out = report.to_string();
    if emit {
        for f in &report.findings {
            if let Some(text) = &f.model_text {
                writeln!(out, "# counterexample model, seed={} source={}", f.model_seed, f.source).expect("write");
                out.push_str(text);
            }
        }
    }
    Ok(CliOutput::verdict(report.is_clean(), out))
}

fn demo_prop1() -> CliOutput {
    let (model, a) = prop1_quotient();
    let agents = prop1_agents();
    let (m, h) = model.resolve_pair("0", "mid").expect("pair of the quotient");
    let mut ev = Evaluator::new(&model, EvalOptions::waived()).expect("waived");
    let at = format!("(0,{})", prop1_history_label(&model, h));
    let mut out = String::new();
    let mut pass = true;
    let mut line = |text: String, ok: bool| {
        pass &= ok;
        writeln!(out, "{text}").expect("write");
    };
    line("model: quotient of the dense-time countermodel; moments -1, 0, mid, a; h1 ends in a, h2 in mid".into(), true);
    line(format!("A := {}", print_formula(&a)), true);
    let value = ev.eval(m, h, &a).expect("fits");
    line(format!("A {} at {at}", if value { "true" } else { "falsified" }), !value);
    for (label, text) in [("antecedent", PROP1_ANTECEDENT), ("witness", PROP1_WITNESS)] {
        let f = parse_formula(text, &agents).expect("built-in formula");
        let v = ev.eval(m, h, &f).expect("fits");
        line(format!("{label} {text}: {v} at {at}"), v);
    }
    let report = validate(&model);
    for v in &report.violations {
        line(format!("constraint violated: {}", v.headline()), true);
    }
    let expected = report.violations.len() == 1 && report.violations[0].headline() == "no-new-proofs-guaranteed @ mid";
    line(format!("violations: {}", report.violations.len()), expected);
    CliOutput::verdict(pass, out)
}

fn demo_cmd(cmd: DemoCommand) -> CliOutput {
    match cmd {
        DemoCommand::Prop1 => demo_prop1(),
        DemoCommand::Fmp { models, seed } => {
            let r = fmp_demo(models, seed);
            CliOutput::verdict(r.holds(), format!("{r}\n"))
        }
        DemoCommand::Mutations { seed } => {
            let outcomes = mutation_suite(seed);
            let out: String = outcomes.iter().map(|o| format!("{o}\n")).collect();
            CliOutput::verdict(outcomes.iter().all(|o| o.exact()), out)
        }
    }
}

/// Runs the command line `argv` (program name first).
pub fn run<I, S>(argv: I) -> CliOutput
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() { CliOutput::usage(text) } else { CliOutput::ok(text) };
        }
    };
    let result = match cli.command {
        Command::Parse { expr, file, enable_et } => parse_cmd(expr, file, enable_et),
        Command::Validate { model } => model_file(&model).map(|m| {
            let report = validate(&m);
            CliOutput::verdict(report.is_clean(), format!("{}\n", report.to_string().trim_end()))
        }),
        Command::Eval { model, moment, leaf, formula, eval } => eval_cmd(&model, &moment, &leaf, &formula, &eval),
        Command::Valid { model, formula, eval } => valid_cmd(&model, &formula, &eval),
        Command::Prove(cmd) => prove_cmd(cmd),
        Command::Fuzz { models, instances, seed, cs, emit_model } => fuzz_cmd(models, instances, seed, cs, emit_model),
        Command::Demo(cmd) => Ok(demo_cmd(cmd)),
    };
    result.unwrap_or_else(|e| e)
}
