//! The `mvf` command line. [`run`] parses arguments, dispatches to the core
//! and returns the exit code with the text to print, so tests can drive it
//! without a subprocess.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use mvf_core::axioms::{axioms_check, Samples};
use mvf_core::cantor::{
    embed_algebra_in_model, extend_isomorphism, generated_model_subalgebra, DyadicElement,
    ModelIso, ModelOp, ModelSubalgebra, DEFAULT_DENOMINATOR_CAP,
};
use mvf_core::duality::{
    clop, dualize_hom, max_spectrum, round_trip_algebra, round_trip_space, MapMode, PointMap,
};
use mvf_core::fraisse::{
    amalgamate, extend_generic_chain, extension_property_check, generic_chain, joint_embed,
    square_commutes, Chain, ExtensionReport, VFormation,
};
use mvf_core::hom::{brute_force_homs, enumerate_homs, DEFAULT_ORACLE_BUDGET};
use mvf_core::ramsey::{
    default_schedule, epi_equality_check, set_problem, transfer_witness, ColoringProblem,
    DualInstance, EpiEqualityReport, MorphismClass, RamseyInstance, Verdict, WitnessCertificate,
    DEFAULT_COLORING_BUDGET,
};
use mvf_core::table::{OperationTable, MAX_TABLE_SIZE};
use mvf_core::transfer::{
    center_object, faithfulness_check, functor_laws_check, lex_order, order_preservation_check,
};
use mvf_core::{FiniteMvAlgebra, Hom, HomMode, MvElement, Op, OpValue};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::formats::{
    self, parse_algebra, parse_algebras, parse_dyadic, parse_dyadics, parse_element, parse_sigma,
    parse_space, CertificateJson, ChainDump, DyadicJson, FormatError, HomJson, TreePairJson,
};
use crate::selftest::{self, Level};
use crate::{dot, parallel};

/// Algebras up to this size get the exhaustive axiom check.
const EXHAUSTIVE_AXIOMS: u128 = 216;
const SAMPLED_TRIPLES: usize = 20_000;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_FAILED: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;

pub const BUDGET_ENV: &str = "RAMSEY_BUDGET";

#[derive(Parser, Debug)]
#[command(
    name = "mvf",
    version,
    about = "Finite MV-algebras, their duals and desk-scale Ramsey checks"
)]
struct Cli {
    /// Human-readable output.
    #[arg(long, global = true)]
    pretty: bool,
    /// Graphviz output, where the command has a graph to show.
    #[arg(long, global = true)]
    dot: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Structure of an algebra, or one operation on its elements.
    Algebra(AlgebraArgs),
    /// Homomorphisms between two algebras.
    Homs(HomsArgs),
    /// Dual spaces and dual maps.
    Dual(DualArgs),
    /// Amalgam of two embeddings with a common domain.
    Amalgamate(AmalgamateArgs),
    /// Joint embedding of two algebras.
    Jep(JepArgs),
    /// Builds or resumes the generic chain.
    Chain(ChainArgs),
    /// Elements and subalgebras of the dyadic model.
    Model(ModelArgs),
    /// Extends an isomorphism of model subalgebras to a tree pair.
    ExtendIso(ExtendIsoArgs),
    #[command(subcommand)]
    Ramsey(RamseyCommand),
    #[command(subcommand)]
    Transfer(TransferCommand),
    /// Runs the invariant suites.
    Selftest(SelftestArgs),
}

#[derive(Args, Debug)]
struct AlgebraArgs {
    #[arg(long = "A")]
    a: String,
    /// Operation name: oplus, neg, odot, ominus, join, meet, distance, leq, zero, one.
    #[arg(long)]
    op: Option<String>,
    #[arg(long)]
    x: Option<String>,
    #[arg(long)]
    y: Option<String>,
    /// Seed for the sampled axiom check of large algebras.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args, Debug)]
struct HomsArgs {
    #[arg(long = "A", required_unless_present = "among")]
    a: Option<String>,
    #[arg(long = "B", required_unless_present = "among")]
    b: Option<String>,
    /// all, embeddings, surjections or isomorphisms.
    #[arg(long, default_value = "all", value_parser = named::<HomMode>)]
    mode: HomMode,
    /// Cross-check against the brute-force enumeration.
    #[arg(long)]
    oracle: bool,
    /// List of algebras; reports embedding counts between them.
    #[arg(long, conflicts_with_all = ["a", "b"])]
    among: Option<String>,
}

#[derive(Args, Debug)]
struct DualArgs {
    #[arg(long = "A", conflicts_with = "space")]
    a: Option<String>,
    #[arg(long = "B", requires = "a")]
    b: Option<String>,
    #[arg(long, requires = "b")]
    sigma: Option<String>,
    #[arg(long, required_unless_present = "a")]
    space: Option<String>,
}

#[derive(Args, Debug)]
struct AmalgamateArgs {
    #[arg(long = "A")]
    a: String,
    #[arg(long = "B")]
    b: String,
    #[arg(long = "C")]
    c: String,
    /// σ of `A → B`.
    #[arg(long)]
    f: String,
    /// σ of `A → C`.
    #[arg(long)]
    g: String,
}

#[derive(Args, Debug)]
struct JepArgs {
    #[arg(long = "A")]
    a: String,
    #[arg(long = "B")]
    b: String,
}

#[derive(Args, Debug)]
struct ChainArgs {
    #[arg(long, required_unless_present = "resume", conflicts_with = "resume")]
    stages: Option<usize>,
    /// A chain dump to continue from.
    #[arg(long)]
    resume: Option<String>,
    /// Further stages to append.
    #[arg(long, default_value_t = 0)]
    extra: usize,
    /// Checks the extension property up to this size.
    #[arg(long = "check-ep")]
    check_ep: Option<u128>,
    #[arg(long = "max-listed", default_value_t = 8)]
    max_listed: usize,
}

#[derive(Args, Debug)]
struct ModelArgs {
    /// Embeds this algebra in the model.
    #[arg(long = "A", conflicts_with_all = ["gens", "op"])]
    a: Option<String>,
    /// Generators of a subalgebra.
    #[arg(long, conflicts_with = "op")]
    gens: Option<String>,
    #[arg(long, default_value_t = DEFAULT_DENOMINATOR_CAP)]
    cap: u64,
    /// oplus, neg, odot, ominus, join or meet.
    #[arg(long, requires = "x")]
    op: Option<String>,
    #[arg(long)]
    x: Option<String>,
    #[arg(long)]
    y: Option<String>,
}

#[derive(Args, Debug)]
struct ExtendIsoArgs {
    /// Generators of the domain.
    #[arg(long = "D")]
    d: String,
    /// Their images, in the same order.
    #[arg(long = "E")]
    e: String,
    #[arg(long, default_value_t = DEFAULT_DENOMINATOR_CAP)]
    cap: u64,
}

#[derive(Args, Debug)]
struct SearchOptions {
    /// Colouring budget, an integer or `2^k`.
    #[arg(long)]
    budget: Option<String>,
    /// Worker threads for the colouring search.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

#[derive(Subcommand, Debug)]
enum RamseyCommand {
    /// Whether D is a witness for (A, B, r).
    Check {
        #[arg(long = "A")]
        a: String,
        #[arg(long = "B")]
        b: String,
        #[arg(long)]
        r: usize,
        #[arg(long = "D")]
        d: String,
        /// embeddings, all or ordered.
        #[arg(long, default_value = "embeddings", value_parser = named::<MorphismClass>)]
        mode: MorphismClass,
        #[command(flatten)]
        search: SearchOptions,
        /// Replays a certificate instead of searching.
        #[arg(long = "verify-certificate")]
        verify_certificate: Option<String>,
    },
    /// Tries powers of the common chain until one is a witness.
    Search {
        #[arg(long = "A")]
        a: String,
        #[arg(long = "B")]
        b: String,
        #[arg(long)]
        r: usize,
        #[arg(long, default_value = "embeddings", value_parser = named::<MorphismClass>)]
        mode: MorphismClass,
        /// Candidates beyond the factor count of B.
        #[arg(long, default_value_t = 3)]
        extra: usize,
        #[command(flatten)]
        search: SearchOptions,
    },
    /// Whether Z is a dual witness for (X, Y, r).
    DualCheck {
        #[arg(long = "X")]
        x: String,
        #[arg(long = "Y")]
        y: String,
        #[arg(long = "Z")]
        z: String,
        #[arg(long)]
        r: usize,
        #[arg(long, default_value = "embeddings", value_parser = named::<MorphismClass>)]
        mode: MorphismClass,
        #[command(flatten)]
        search: SearchOptions,
        #[arg(long = "verify-certificate")]
        verify_certificate: Option<String>,
    },
    /// Builds a labelled dual witness from a set-level one of size z.
    Transfer {
        #[arg(long = "X")]
        x: String,
        #[arg(long = "Y")]
        y: String,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        z: usize,
        #[arg(long, default_value = "ordered", value_parser = named::<MorphismClass>)]
        mode: MorphismClass,
        #[command(flatten)]
        search: SearchOptions,
    },
    /// Compares continuous and plain maps Z → X of a kind.
    EpiEq {
        #[arg(long = "Z")]
        z: String,
        #[arg(long = "X")]
        x: String,
        /// all, surjective or rigid-surjective.
        #[arg(long, default_value = "surjective", value_parser = named::<MapMode>)]
        mode: MapMode,
    },
    /// Set-level dual witness check on sets of sizes x, y, z.
    SetCheck {
        #[arg(long)]
        x: usize,
        #[arg(long)]
        y: usize,
        #[arg(long)]
        z: usize,
        #[arg(long)]
        r: usize,
        #[arg(long, default_value = "embeddings", value_parser = named::<MorphismClass>)]
        mode: MorphismClass,
        #[command(flatten)]
        search: SearchOptions,
        #[arg(long = "verify-certificate")]
        verify_certificate: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
enum TransferCommand {
    /// Restriction of embeddings A → B to the Boolean centers.
    Report {
        #[arg(long = "A")]
        a: String,
        #[arg(long = "B")]
        b: String,
    },
    /// The Boolean center.
    Center {
        #[arg(long = "A")]
        a: String,
    },
    /// The lexicographic order of the elements.
    Lex {
        #[arg(long = "A")]
        a: String,
    },
    /// Functor laws on the embeddings among a list of algebras.
    Laws {
        #[arg(long)]
        among: String,
    },
    /// Whether a hom is monotone for the lexicographic orders.
    Order {
        #[arg(long = "A")]
        a: String,
        #[arg(long = "B")]
        b: String,
        #[arg(long)]
        sigma: String,
    },
}

#[derive(Args, Debug)]
struct SelftestArgs {
    #[arg(long, value_enum, default_value = "quick")]
    level: Level,
}

fn named<T: FromStr<Err = mvf_core::Error>>(s: &str) -> Result<T, String> {
    s.parse().map_err(|e: mvf_core::Error| e.to_string())
}

/// What a command produced: an exit code and the text for each channel.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Failed(String),
    Budget(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Failed(_) => EXIT_FAILED,
            CliError::Budget(_) => EXIT_BUDGET,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Failed(m) | CliError::Budget(m) => m,
        }
    }
}

impl From<mvf_core::Error> for CliError {
    fn from(e: mvf_core::Error) -> Self {
        use mvf_core::Error;
        match e {
            Error::InvalidProfile(_) | Error::Contract(_) => CliError::Usage(e.to_string()),
            Error::Budget { .. } => CliError::Budget(e.to_string()),
            Error::Inconsistency(_) => CliError::Failed(e.to_string()),
        }
    }
}

impl From<FormatError> for CliError {
    fn from(e: FormatError) -> Self {
        match e {
            FormatError::Core(e) => e.into(),
            other => CliError::Usage(other.to_string()),
        }
    }
}

type CliResult<T = Emit> = Result<T, CliError>;

/// A command's report. `ok` is false for refutations and failed checks.
struct Emit {
    json: Value,
    text: Option<String>,
    dot: Option<String>,
    ok: bool,
}

impl Emit {
    fn new(json: Value) -> Self {
        Self {
            json,
            text: None,
            dot: None,
            ok: true,
        }
    }

    fn ok(mut self, ok: bool) -> Self {
        self.ok = ok;
        self
    }

    fn text(mut self, text: String) -> Self {
        self.text = Some(text);
        self
    }

    fn dot(mut self, dot: String) -> Self {
        self.dot = Some(dot);
        self
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    match dispatch(&cli.command).and_then(|emit| render(&cli, emit)) {
        Ok((code, stdout)) => Outcome {
            code,
            stdout,
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: e.code(),
            stdout: String::new(),
            stderr: format!("mvf: {}\n", e.message()),
        },
    }
}

fn render(cli: &Cli, emit: Emit) -> CliResult<(i32, String)> {
    let code = if emit.ok { EXIT_OK } else { EXIT_FAILED };
    let mut out = if cli.dot {
        emit.dot
            .ok_or_else(|| CliError::Usage("--dot is not available for this command".into()))?
    } else if cli.pretty {
        match emit.text {
            Some(t) => t,
            None => serde_json::to_string_pretty(&emit.json).expect("values serialize"),
        }
    } else {
        serde_json::to_string(&emit.json).expect("values serialize")
    };
    if !out.ends_with('\n') {
        out.push('\n');
    }
    Ok((code, out))
}

fn dispatch(command: &Command) -> CliResult {
    match command {
        Command::Algebra(args) => algebra(args),
        Command::Homs(args) => homs(args),
        Command::Dual(args) => dual(args),
        Command::Amalgamate(args) => amalgamate_cmd(args),
        Command::Jep(args) => jep(args),
        Command::Chain(args) => chain(args),
        Command::Model(args) => model(args),
        Command::ExtendIso(args) => extend_iso(args),
        Command::Ramsey(cmd) => ramsey(cmd),
        Command::Transfer(cmd) => transfer(cmd),
        Command::Selftest(args) => selftest_cmd(args),
    }
}

fn chains(a: &FiniteMvAlgebra) -> Value {
    json!(a.chains())
}

fn hom_json(h: &Hom) -> Value {
    json!(HomJson::from(h))
}

fn element_json(x: &MvElement) -> Value {
    json!(x.numerators())
}

fn algebra(args: &AlgebraArgs) -> CliResult {
    let a = parse_algebra(&args.a)?;
    if let Some(name) = &args.op {
        let op: Op = name.parse()?;
        let operands: Vec<MvElement> = [&args.x, &args.y]
            .into_iter()
            .take(op.arity())
            .map(|arg| {
                let arg = arg.as_ref().ok_or_else(|| {
                    CliError::Usage(format!("{name} takes {} operands", op.arity()))
                })?;
                Ok(parse_element(&a, arg)?)
            })
            .collect::<CliResult<_>>()?;
        let refs: Vec<&MvElement> = operands.iter().collect();
        let value = match a.op_eval(op, &refs)? {
            OpValue::Element(x) => element_json(&x),
            OpValue::Bool(b) => json!(b),
        };
        return Ok(Emit::new(json!({ "op": op.name(), "value": value })));
    }
    let center = a.boolean_center();
    let ideals: Vec<Value> = a
        .maximal_ideals()
        .iter()
        .map(|i| json!(i.support()))
        .collect();
    let (axioms, ok) = if a.cardinality() <= MAX_TABLE_SIZE as u128 {
        let table = OperationTable::from_algebra(&a)?;
        let samples = if a.cardinality() <= EXHAUSTIVE_AXIOMS {
            Samples::Exhaustive
        } else {
            Samples::random(
                &table,
                SAMPLED_TRIPLES,
                &mut ChaCha8Rng::seed_from_u64(args.seed),
            )
        };
        let report = axioms_check(&table, &samples);
        let failure = report
            .failure
            .map(|f| json!({ "law": format!("{:?}", f.law), "witness": f.witness }));
        (
            json!({
                "exhaustive": matches!(samples, Samples::Exhaustive),
                "triples": report.triples_checked,
                "passed": report.passed(),
                "failure": failure,
            }),
            report.passed(),
        )
    } else {
        (Value::Null, true)
    };
    Ok(Emit::new(json!({
        "chains": chains(&a),
        "cardinality": a.cardinality().to_string(),
        "boolean": a.is_boolean(),
        "center": chains(&center.algebra),
        "maximal_ideals": ideals,
        "axioms": axioms,
    }))
    .ok(ok))
}

/// Element tables of `hom(A, B)` restricted to `mode`, from the brute-force
/// enumeration.
fn oracle_tables(
    a: &FiniteMvAlgebra,
    b: &FiniteMvAlgebra,
    mode: HomMode,
) -> CliResult<Vec<Vec<usize>>> {
    let mut tables = brute_force_homs(a, b, DEFAULT_ORACLE_BUDGET)?;
    tables.retain(|t| {
        let image: std::collections::BTreeSet<&usize> = t.iter().collect();
        let injective = image.len() == t.len();
        let surjective = image.len() as u128 == b.cardinality();
        match mode {
            HomMode::All => true,
            HomMode::Embeddings => injective,
            HomMode::Surjections => surjective,
            HomMode::Isomorphisms => injective && surjective,
        }
    });
    Ok(tables)
}

fn homs(args: &HomsArgs) -> CliResult {
    if let Some(among) = &args.among {
        let algebras = parse_algebras(among)?;
        let counts: Vec<Value> = algebras
            .iter()
            .flat_map(|a| {
                algebras.iter().map(move |b| {
                    json!({ "A": chains(a), "B": chains(b), "count": enumerate_homs(a, b, args.mode).len() })
                })
            })
            .collect();
        return Ok(Emit::new(json!(counts)).dot(dot::embedding_graph(&algebras)));
    }
    let a = parse_algebra(args.a.as_deref().expect("required by clap"))?;
    let b = parse_algebra(args.b.as_deref().expect("required by clap"))?;
    let homs = enumerate_homs(&a, &b, args.mode);
    let list: Vec<Value> = homs.iter().map(hom_json).collect();
    let mut text = format!("{} {} from {a} to {b}\n", homs.len(), args.mode.name());
    for h in &homs {
        let _ = writeln!(text, "  sigma {:?} scales {:?}", h.sigma(), h.scales());
    }
    if !args.oracle {
        return Ok(Emit::new(json!(list)).text(text));
    }
    let mut ours: Vec<Vec<usize>> = homs.iter().map(Hom::element_table).collect();
    ours.sort();
    let agrees = ours == oracle_tables(&a, &b, args.mode)?;
    let _ = writeln!(
        text,
        "oracle {}",
        if agrees { "agrees" } else { "disagrees" }
    );
    Ok(Emit::new(json!({ "homs": list, "oracle_agrees": agrees }))
        .text(text)
        .ok(agrees))
}

fn dual(args: &DualArgs) -> CliResult {
    if let Some(space) = &args.space {
        let s = parse_space(space)?;
        let c = clop(&s)?;
        let back = round_trip_space(&s)?;
        return Ok(Emit::new(json!({
            "space": s.labels(),
            "clop": chains(&c.algebra),
            "factor_of_point": c.factor_of_point,
            "round_trip": back.isomorphic,
        }))
        .ok(back.isomorphic));
    }
    let a = parse_algebra(args.a.as_deref().expect("required by clap"))?;
    let Some(b) = &args.b else {
        let back = round_trip_algebra(&a)?;
        return Ok(Emit::new(json!({
            "algebra": chains(&a),
            "space": back.spectrum.labels(),
            "clop": chains(&back.recovered),
            "round_trip": back.isomorphic,
        }))
        .text(format!("{a}  ↔  {}\n", back.spectrum))
        .ok(back.isomorphic));
    };
    let b = parse_algebra(b)?;
    let homs = match &args.sigma {
        Some(sigma) => vec![Hom::new(a.clone(), b.clone(), parse_sigma(sigma)?)?],
        None => enumerate_homs(&a, &b, HomMode::All),
    };
    let maps: Vec<PointMap> = homs
        .iter()
        .map(dualize_hom)
        .collect::<mvf_core::Result<_>>()?;
    let (sa, sb) = (max_spectrum(&a)?, max_spectrum(&b)?);
    let mut text = format!("{a} → {b}  ↔  {sb} → {sa}\n");
    let pairs: Vec<Value> = homs
        .iter()
        .zip(&maps)
        .map(|(h, f)| {
            let _ = writeln!(text, "  sigma {:?}  ↔  map {:?}", h.sigma(), f.map);
            json!({ "sigma": h.sigma(), "map": formats::point_map_json(f) })
        })
        .collect();
    let mut emit =
        Emit::new(json!({ "source": sb.labels(), "target": sa.labels(), "pairs": pairs }))
            .text(text);
    if let [f] = maps.as_slice() {
        emit = emit.dot(dot::space_map_graph(f));
    }
    Ok(emit)
}

fn amalgamate_cmd(args: &AmalgamateArgs) -> CliResult {
    let a = parse_algebra(&args.a)?;
    let f = Hom::new(a.clone(), parse_algebra(&args.b)?, parse_sigma(&args.f)?)?;
    let g = Hom::new(a, parse_algebra(&args.c)?, parse_sigma(&args.g)?)?;
    let v = VFormation::new(f, g)?;
    let m = amalgamate(&v)?;
    let commutes = square_commutes(&v, &m)?;
    Ok(Emit::new(json!({
        "d": chains(&m.d),
        "h": hom_json(&m.h),
        "k": hom_json(&m.k),
        "commutes": commutes,
    }))
    .ok(commutes))
}

fn jep(args: &JepArgs) -> CliResult {
    let j = joint_embed(&parse_algebra(&args.a)?, &parse_algebra(&args.b)?)?;
    Ok(Emit::new(
        json!({ "c": chains(&j.c), "f": hom_json(&j.f), "g": hom_json(&j.g) }),
    ))
}

fn extension_json(report: &ExtensionReport) -> Value {
    let unrealized: Vec<Value> = report
        .unrealized
        .iter()
        .map(|u| {
            json!({
                "stage": u.stage,
                "domain": chains(u.embedding.domain()),
                "embedding": hom_json(&u.embedding),
                "extension": { "codomain": chains(u.extension.codomain()), "sigma": u.extension.sigma() },
            })
        })
        .collect();
    json!({
        "bound": report.bound.to_string(),
        "algebras": report.algebras,
        "embeddings": report.embeddings.to_string(),
        "pairs_checked": report.pairs_checked.to_string(),
        "passed": report.passed(),
        "unrealized": unrealized,
    })
}

/// A dump, or the output of an earlier `chain --check-ep`.
fn load_chain(arg: &str) -> CliResult<Chain> {
    let value: Value = formats::parse(arg)?;
    let dump = value.get("chain").cloned().unwrap_or(value);
    let dump: ChainDump = serde_json::from_value(dump).map_err(FormatError::from)?;
    Ok(dump.to_chain()?)
}

fn chain(args: &ChainArgs) -> CliResult {
    let mut chain = match (&args.resume, args.stages) {
        (Some(file), _) => load_chain(file)?,
        (None, Some(n)) => generic_chain(n)?,
        (None, None) => unreachable!("required by clap"),
    };
    extend_generic_chain(&mut chain, args.extra)?;
    let dump = json!(ChainDump::from(&chain));
    let graph = dot::chain_graph(&chain);
    let Some(bound) = args.check_ep else {
        return Ok(Emit::new(dump).dot(graph));
    };
    let report = extension_property_check(&chain, bound, args.max_listed)?;
    Ok(
        Emit::new(json!({ "chain": dump, "extension_property": extension_json(&report) }))
            .dot(graph)
            .ok(report.passed()),
    )
}

fn dyadic_json(x: &DyadicElement) -> Value {
    json!(DyadicJson::from(x))
}

fn subalgebra_json(sub: &ModelSubalgebra) -> Value {
    let blocks: Vec<Value> = sub
        .blocks()
        .iter()
        .map(|b| {
            json!({
                "atom": dyadic_json(&b.atom),
                "cylinders": b.cylinders.iter().map(formats::format_word).collect::<Vec<_>>(),
                "chain": b.chain,
            })
        })
        .collect();
    json!({
        "profile": chains(sub.algebra()),
        "elements": sub.elements().len(),
        "blocks": blocks,
    })
}

fn model(args: &ModelArgs) -> CliResult {
    if let Some(a) = &args.a {
        let m = embed_algebra_in_model(&parse_algebra(a)?)?;
        return Ok(Emit::new(json!({
            "depth": m.depth,
            "generators": m.generators.iter().map(dyadic_json).collect::<Vec<_>>(),
            "subalgebra": subalgebra_json(&m.subalgebra),
        })));
    }
    if let Some(gens) = &args.gens {
        let sub = generated_model_subalgebra(&parse_dyadics(gens)?, args.cap)?;
        return Ok(Emit::new(subalgebra_json(&sub)));
    }
    let Some(name) = &args.op else {
        return Err(CliError::Usage("model needs --A, --gens or --op".into()));
    };
    let op: ModelOp = name.parse()?;
    let operands: Vec<DyadicElement> = [&args.x, &args.y]
        .into_iter()
        .take(op.arity())
        .map(|arg| {
            let arg = arg
                .as_ref()
                .ok_or_else(|| CliError::Usage(format!("{name} takes {} operands", op.arity())))?;
            Ok(parse_dyadic(arg)?)
        })
        .collect::<CliResult<_>>()?;
    let refs: Vec<&DyadicElement> = operands.iter().collect();
    let value = DyadicElement::op_eval(op, &refs)?;
    Ok(
        Emit::new(json!({ "op": op.name(), "value": dyadic_json(&value) }))
            .text(format!("{value}\n")),
    )
}

fn extend_iso(args: &ExtendIsoArgs) -> CliResult {
    let gens = parse_dyadics(&args.d)?;
    let images = parse_dyadics(&args.e)?;
    if gens.len() != images.len() {
        return Err(CliError::Usage(format!(
            "{} generators but {} images",
            gens.len(),
            images.len()
        )));
    }
    let domain = generated_model_subalgebra(&gens, args.cap)?;
    let codomain = generated_model_subalgebra(&images, args.cap)?;
    let pairs: Vec<(DyadicElement, DyadicElement)> = gens.into_iter().zip(images).collect();
    let f = ModelIso::from_generator_images(domain, codomain, &pairs)?;
    let g = extend_isomorphism(&f)?;
    for x in f.domain.elements() {
        if g.apply(&f.apply(x)?) != *x {
            return Err(CliError::Failed(format!(
                "the tree pair {g} does not undo the isomorphism at {x}"
            )));
        }
    }
    let mut out = json!(TreePairJson::from(&g));
    out["verified"] = json!(f.domain.elements().len());
    Ok(Emit::new(out).text(format!("{g}\n")))
}

/// `--budget`, then the environment, then the default.
fn budget(opts: &SearchOptions) -> CliResult<u128> {
    let parse = |s: &str, from: &str| -> CliResult<u128> {
        let s = s.trim();
        let value = match s.split_once('^') {
            Some(("2", exp)) => exp
                .trim()
                .parse()
                .ok()
                .and_then(|e: u32| 2u128.checked_pow(e)),
            Some(_) => None,
            None => s.parse().ok(),
        };
        value.ok_or_else(|| {
            CliError::Usage(format!("{from}: {s:?} is not a budget (an integer or 2^k)"))
        })
    };
    match (&opts.budget, std::env::var(BUDGET_ENV)) {
        (Some(b), _) => parse(b, "--budget"),
        (None, Ok(b)) => parse(&b, BUDGET_ENV),
        (None, Err(_)) => Ok(DEFAULT_COLORING_BUDGET),
    }
}

fn solve(problem: &ColoringProblem, opts: &SearchOptions) -> CliResult<WitnessCertificate> {
    if opts.jobs == 0 {
        return Err(CliError::Usage("--jobs must be at least 1".into()));
    }
    Ok(parallel::solve_parallel(problem, budget(opts)?, opts.jobs)?)
}

fn certificate_text(cert: &WitnessCertificate) -> String {
    let mut text = format!(
        "{}: {} positions, {} copies, {} colours\n",
        cert.verdict.name(),
        cert.positions,
        cert.copies,
        cert.colors
    );
    if let Some(c) = &cert.coloring {
        let _ = writeln!(text, "bad colouring {c:?}");
    }
    text
}

fn certificate_emit(cert: &WitnessCertificate) -> Emit {
    Emit::new(json!(CertificateJson::from(cert)))
        .text(certificate_text(cert))
        .ok(cert.is_verified())
}

/// Replays a certificate: a colouring is checked to be bad, a verified
/// verdict by searching again.
fn replay(problem: &ColoringProblem, file: &str, opts: &SearchOptions) -> CliResult {
    let cert: CertificateJson = formats::parse(file)?;
    let claimed = cert.verdict()?;
    let confirmed = match (&cert.coloring, claimed) {
        (Some(c), Verdict::Refuted) => {
            if c.len() != problem.positions() || c.iter().any(|&x| x as usize >= problem.colors()) {
                false
            } else {
                problem.is_bad(c)?
            }
        }
        (None, Verdict::Verified) => solve(problem, opts)?.is_verified(),
        _ => {
            return Err(CliError::Usage(
                "a refutation needs a colouring and a verification none".into(),
            ))
        }
    };
    let shape = cert.positions.is_none_or(|p| p == problem.positions())
        && cert.copies.is_none_or(|c| c == problem.copies().len());
    let confirmed = confirmed && shape;
    Ok(
        Emit::new(json!({ "verdict": claimed.name(), "confirmed": confirmed }))
            .text(format!(
                "{} certificate {}\n",
                claimed.name(),
                if confirmed { "confirmed" } else { "rejected" }
            ))
            .ok(confirmed),
    )
}

fn check_or_replay(
    problem: &ColoringProblem,
    opts: &SearchOptions,
    certificate: &Option<String>,
) -> CliResult {
    match certificate {
        Some(file) => replay(problem, file, opts),
        None => Ok(certificate_emit(&solve(problem, opts)?)),
    }
}

fn epi_json(r: &EpiEqualityReport) -> Value {
    json!({
        "continuous": r.continuous,
        "set_level": r.set_level,
        "equal": r.equal(),
        "witness": r.witness.as_ref().map(formats::point_map_json),
    })
}

fn ramsey(cmd: &RamseyCommand) -> CliResult {
    match cmd {
        RamseyCommand::Check {
            a,
            b,
            r,
            d,
            mode,
            search,
            verify_certificate,
        } => {
            let inst = RamseyInstance::new(parse_algebra(a)?, parse_algebra(b)?, *r, *mode)?;
            let problem = inst.problem(&parse_algebra(d)?)?;
            check_or_replay(&problem, search, verify_certificate)
        }
        RamseyCommand::Search {
            a,
            b,
            r,
            mode,
            extra,
            search,
        } => ramsey_search(
            &RamseyInstance::new(parse_algebra(a)?, parse_algebra(b)?, *r, *mode)?,
            *extra,
            search,
        ),
        RamseyCommand::DualCheck {
            x,
            y,
            z,
            r,
            mode,
            search,
            verify_certificate,
        } => {
            let inst = DualInstance::new(parse_space(x)?, parse_space(y)?, *r, *mode)?;
            let problem = inst.problem(&parse_space(z)?)?;
            check_or_replay(&problem, search, verify_certificate)
        }
        RamseyCommand::SetCheck {
            x,
            y,
            z,
            r,
            mode,
            search,
            verify_certificate,
        } => check_or_replay(
            &set_problem(*x, *y, *z, *r, *mode)?,
            search,
            verify_certificate,
        ),
        RamseyCommand::Transfer {
            x,
            y,
            r,
            z,
            mode,
            search,
        } => {
            let inst = DualInstance::new(parse_space(x)?, parse_space(y)?, *r, *mode)?;
            let report = transfer_witness(&inst, *z, budget(search)?)?;
            let dual = solve(&inst.problem(&report.z)?, search)?;
            let passed = report.passed() && dual.is_verified();
            Ok(Emit::new(json!({
                "n": report.n,
                "z": report.z.labels(),
                "set_certificate": CertificateJson::from(&report.set_certificate),
                "maps_to_y_continuous": report.maps_to_y_continuous,
                "epi_x": epi_json(&report.epi_x),
                "epi_y": epi_json(&report.epi_y),
                "families_included": report.families_included,
                "dual_check": CertificateJson::from(&dual),
                "passed": passed,
            }))
            .ok(passed))
        }
        RamseyCommand::EpiEq { z, x, mode } => {
            let report = epi_equality_check(&parse_space(z)?, &parse_space(x)?, *mode)?;
            Ok(Emit::new(epi_json(&report)).ok(report.equal()))
        }
    }
}

/// The candidates of the default schedule in order, stopping at the first
/// witness; over-budget candidates are skipped.
fn ramsey_search(inst: &RamseyInstance, extra: usize, opts: &SearchOptions) -> CliResult {
    let mut candidates = Vec::new();
    let mut text = String::new();
    let mut witness = Value::Null;
    let mut least_needed: Option<u128> = None;
    let mut any_checked = false;
    for d in default_schedule(inst, extra)? {
        let problem = inst.problem(&d)?;
        let entry = match solve(&problem, opts) {
            Ok(cert) => {
                any_checked = true;
                let _ = write!(text, "{d}: {}", certificate_text(&cert));
                if cert.is_verified() {
                    witness = chains(&d);
                }
                json!({ "d": chains(&d), "certificate": CertificateJson::from(&cert) })
            }
            Err(CliError::Budget(_)) => {
                let needed = problem.coloring_count();
                least_needed = Some(least_needed.map_or(needed, |n| n.min(needed)));
                let _ = writeln!(text, "{d}: over budget, needs {needed}");
                json!({ "d": chains(&d), "over_budget": needed.to_string() })
            }
            Err(e) => return Err(e),
        };
        candidates.push(entry);
        if !witness.is_null() {
            break;
        }
    }
    if let (false, Some(needed)) = (any_checked, least_needed) {
        return Err(CliError::Budget(format!(
            "every candidate is over budget; the smallest needs {needed}, budget {}",
            budget(opts)?
        )));
    }
    let found = !witness.is_null();
    Ok(Emit::new(
        json!({ "class": inst.class.name(), "candidates": candidates, "witness": witness }),
    )
    .text(text)
    .ok(found))
}

fn transfer(cmd: &TransferCommand) -> CliResult {
    match cmd {
        TransferCommand::Report { a, b } => {
            let r = faithfulness_check(&parse_algebra(a)?, &parse_algebra(b)?)?;
            Ok(Emit::new(json!({
                "embeddings": r.embeddings,
                "injective": r.injective,
                "image": r.image,
                "codomain": r.codomain,
                "surjective": r.surjective(),
            }))
            .ok(r.injective))
        }
        TransferCommand::Center { a } => {
            let a = parse_algebra(a)?;
            let center = a.boolean_center();
            Ok(Emit::new(json!({
                "center": chains(&center_object(&a)),
                "inclusion": hom_json(&center.inclusion),
            })))
        }
        TransferCommand::Lex { a } => {
            let ordered = lex_order(&parse_algebra(a)?);
            let order: Vec<Value> = ordered.order.iter().map(element_json).collect();
            Ok(
                Emit::new(json!({ "order": order, "total": ordered.is_total_order() }))
                    .ok(ordered.is_total_order()),
            )
        }
        TransferCommand::Laws { among } => {
            let r = functor_laws_check(&parse_algebras(among)?)?;
            Ok(Emit::new(json!({
                "identities": r.identities,
                "compositions": r.compositions,
                "left_inverse": r.left_inverse,
                "passed": r.passed(),
                "failure": r.failure,
            }))
            .ok(r.passed()))
        }
        TransferCommand::Order { a, b, sigma } => {
            let h = Hom::new(parse_algebra(a)?, parse_algebra(b)?, parse_sigma(sigma)?)?;
            let r = order_preservation_check(&h);
            let witness = r
                .witness
                .as_ref()
                .map(|(x, y)| json!([element_json(x), element_json(y)]));
            Ok(Emit::new(json!({
                "pairs_checked": r.pairs_checked,
                "monotone": r.monotone(),
                "rigid": h.is_rigid(),
                "witness": witness,
            }))
            .ok(r.monotone()))
        }
    }
}

fn selftest_cmd(args: &SelftestArgs) -> CliResult {
    let results = selftest::run(args.level);
    let passed = results.iter().all(|r| r.passed);
    let mut text = String::new();
    for r in &results {
        let _ = writeln!(
            text,
            "{:<9} {}  {}",
            r.name,
            if r.passed { "ok" } else { "FAILED" },
            r.detail
        );
    }
    Ok(Emit::new(json!({ "suites": results, "passed": passed }))
        .text(text)
        .ok(passed))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mvf(args: &[&str]) -> Outcome {
        run(std::iter::once("mvf").chain(args.iter().copied()))
    }

    #[test]
    fn budgets_parse() {
        let opts = |b: &str| SearchOptions {
            budget: Some(b.into()),
            jobs: 1,
        };
        assert_eq!(budget(&opts("2^10")).unwrap(), 1024);
        assert_eq!(budget(&opts("77")).unwrap(), 77);
        assert!(budget(&opts("3^2")).is_err());
        assert!(budget(&opts("lots")).is_err());
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(mvf(&["frobnicate"]).code, EXIT_USAGE);
        assert_eq!(mvf(&["algebra", "--A", "[0]"]).code, EXIT_USAGE);
        assert_eq!(mvf(&["algebra", "--A", "[1,"]).code, EXIT_USAGE);
        assert_eq!(
            mvf(&["jep", "--A", "[1]", "--B", "[2]", "--dot"]).code,
            EXIT_USAGE
        );
    }

    #[test]
    fn operations_evaluate() {
        let out = mvf(&[
            "algebra", "--A", "[2,3]", "--op", "oplus", "--x", "[1,2]", "--y", "[1,2]",
        ]);
        assert_eq!(out.code, 0, "{}", out.stderr);
        assert_eq!(out.stdout, "{\"op\":\"oplus\",\"value\":[2,3]}\n");
        let out = mvf(&[
            "algebra", "--A", "[2]", "--op", "leq", "--x", "[1]", "--y", "[0]",
        ]);
        assert_eq!(out.stdout, "{\"op\":\"leq\",\"value\":false}\n");
    }
}
