//! The `envlat` command line: parse lattice or Pervin-space documents,
//! dispatch the library computations, and emit reports as text, JSON, or
//! DOT. Exit codes: 0 pass, 1 mathematical failure (with witness), 2 usage
//! or parse error, 3 cap exceeded.

use crate::admissible::{
    aideal_generate, afilter_generate, is_join_admissible, is_meet_admissible, GenMethod, Method,
};
use crate::corpus;
use crate::doc::{
    lattice_dot, parse_input, polarity_dot, poset_dot, InputDocument, LatticeDocument,
};
use crate::duality::{
    check_tscp, classical_duals, dual_polarity, free_dadl, is_tight, Polarity,
};
use crate::envelope::{denv_join, denv_meet, galois_closed, galois_pair, DaDL, Envelope};
use crate::error::{Error, Result};
use crate::finlat::{hat_check, lattices_of_size, mask_name, FinLattice, Irr, LatticeMap};
use crate::morphisms::classify_map;
use crate::pervin::{j_space, m_space, PervinSpace};
use crate::selftest;
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use sha2::{Digest, Sha256};
use std::time::Instant;

#[derive(Parser)]
#[command(
    name = "envlat",
    version,
    about = "Distributive envelopes, polarities, and Pervin spaces for finite bounded lattices",
    after_help = "Inputs are JSON documents: a lattice {\"name\", \"elements\", \"covers\"} or a raw\n\
                  Pervin space {\"points\", \"family\"}. `corpus:<name>` uses a built-in lattice\n\
                  (see `envlat corpus`), and `-` reads standard input."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Emit the report as JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Emit a DOT diagram instead of a report (diagram-producing commands).
    #[arg(long, global = true)]
    dot: bool,

    /// Seed for the randomized suites.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,

    /// Ceiling on lattice size for enumeration suites.
    #[arg(long, global = true, value_name = "k")]
    max_n: Option<usize>,

    /// Abort with exit code 3 when a computed carrier or family would exceed
    /// this many members.
    #[arg(long, global = true, value_name = "members")]
    cap: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum EnvKindArg {
    /// The distributive ∧-envelope over J(L).
    Meet,
    /// The distributive ∨-envelope over M(L).
    Join,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum PairKindArg {
    /// The adjoint pair between the two envelopes of the input lattice.
    Galois,
    /// The free adjoint pair over a distributive input lattice.
    Free,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SideArg {
    /// The space on the join-irreducibles.
    J,
    /// The space on the meet-irreducibles.
    M,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SetKindArg {
    Join,
    Meet,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum GenMethodArg {
    Criterion,
    Fixpoint,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a lattice document and verify the lattice axioms.
    Validate { input: String },
    /// Print a lattice: elements, covers, bounds (--dot for the diagram).
    Show { input: String },
    /// List the join- and meet-irreducibles and every â and ǎ.
    Irreducibles { input: String },
    /// Decide whether a set of elements is join- (or meet-) admissible.
    Admissible {
        input: String,
        /// Comma-separated element names, e.g. --set a,b.
        #[arg(long, value_name = "elems")]
        set: String,
        #[arg(long, value_enum, default_value_t = SetKindArg::Join)]
        kind: SetKindArg,
    },
    /// Generate the least a-ideal (or a-filter) containing a set.
    Aideal {
        input: String,
        /// Comma-separated element names.
        #[arg(long, value_name = "elems")]
        set: String,
        #[arg(long, value_enum, default_value_t = GenMethodArg::Criterion)]
        method: GenMethodArg,
        /// Generate the a-filter instead of the a-ideal.
        #[arg(long)]
        filter: bool,
    },
    /// Compute a distributive envelope (--dot for its diagram).
    Envelope {
        input: String,
        #[arg(long, value_enum, default_value_t = EnvKindArg::Meet)]
        kind: EnvKindArg,
    },
    /// Build the envelope adjunction and recover the lattice from its
    /// Galois-closed elements.
    Galois { input: String },
    /// Classify a map between two lattices given by its value table.
    Classify {
        dom: String,
        cod: String,
        /// Comma-separated codomain element names, one per domain element in
        /// document order.
        #[arg(long, value_name = "elems")]
        table: String,
    },
    /// Build and validate a doubly dense adjoint pair of distributive
    /// lattices.
    Dadl {
        input: String,
        #[arg(long, value_enum, default_value_t = PairKindArg::Galois)]
        kind: PairKindArg,
    },
    /// The dual polarity of an adjoint pair: points, orders, relation
    /// (--dot for the two-sided diagram).
    Polarity {
        input: String,
        #[arg(long, value_enum, default_value_t = PairKindArg::Galois)]
        kind: PairKindArg,
    },
    /// Check separation, operationality, and total disconnectedness of the
    /// dual polarity.
    TscpCheck {
        input: String,
        #[arg(long, value_enum, default_value_t = PairKindArg::Galois)]
        kind: PairKindArg,
    },
    /// Check tightness of the dual polarity; failures name the unforced
    /// regular downsets.
    TightCheck {
        input: String,
        #[arg(long, value_enum, default_value_t = PairKindArg::Galois)]
        kind: PairKindArg,
    },
    /// The classical dual spaces: the irreducible polarity, both closed-set
    /// lattices, and the doubly ordered space of maximal pairs.
    Classical { input: String },
    /// Blocks of a Pervin space (a lattice side or a raw space), checked
    /// against the generated sublattice (--dot for the block diagram).
    PervinBlocks {
        input: String,
        #[arg(long, value_enum, default_value_t = SideArg::J)]
        side: SideArg,
    },
    /// Bicompletion points of a Pervin space, with η and the symmetrization
    /// classes (--dot for the point poset).
    Bicompletion {
        input: String,
        #[arg(long, value_enum, default_value_t = SideArg::J)]
        side: SideArg,
    },
    /// List the built-in lattices (with --max-n, also enumeration counts).
    Corpus,
    /// Run the embedded acceptance suite.
    Selftest,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Validate { .. } => "validate",
            Command::Show { .. } => "show",
            Command::Irreducibles { .. } => "irreducibles",
            Command::Admissible { .. } => "admissible",
            Command::Aideal { .. } => "aideal",
            Command::Envelope { .. } => "envelope",
            Command::Galois { .. } => "galois",
            Command::Classify { .. } => "classify",
            Command::Dadl { .. } => "dadl",
            Command::Polarity { .. } => "polarity",
            Command::TscpCheck { .. } => "tscp-check",
            Command::TightCheck { .. } => "tight-check",
            Command::Classical { .. } => "classical",
            Command::PervinBlocks { .. } => "pervin-blocks",
            Command::Bicompletion { .. } => "bicompletion",
            Command::Corpus => "corpus",
            Command::Selftest => "selftest",
        }
    }
}

/// The machine-readable result of one invocation. Field order is fixed.
/// `timing` is always null so that identical inputs yield byte-identical
/// reports; wall time goes to stderr.
#[derive(Serialize)]
pub struct RunReport {
    pub command: String,
    pub digest: String,
    pub outcome: String,
    pub witnesses: Vec<String>,
    pub timing: Option<f64>,
}

struct Output {
    report: RunReport,
    exit: i32,
    /// Raw pass-through (DOT); replaces the report on stdout.
    raw: Option<String>,
}

/// Resolves an input argument to its document text: a literal file path,
/// `corpus:<name>` for a built-in lattice, or `-` for stdin.
fn read_input(arg: &str) -> Result<String> {
    if let Some(name) = arg.strip_prefix("corpus:") {
        let l = corpus::by_name(name).ok_or_else(|| {
            Error::ParseError(format!("no corpus lattice named {name:?}; see `envlat corpus`"))
        })?;
        return Ok(LatticeDocument::from_lattice(name, &l).emit());
    }
    if arg == "-" {
        // Read once and cache: the digest pass and the load pass both come
        // through here, and stdin cannot be rewound.
        use std::sync::OnceLock;
        static STDIN: OnceLock<std::result::Result<String, String>> = OnceLock::new();
        return STDIN
            .get_or_init(|| {
                let mut text = String::new();
                use std::io::Read;
                std::io::stdin()
                    .read_to_string(&mut text)
                    .map_err(|e| format!("reading stdin: {e}"))?;
                Ok(text)
            })
            .clone()
            .map_err(Error::ParseError);
    }
    std::fs::read_to_string(arg).map_err(|e| Error::ParseError(format!("reading {arg}: {e}")))
}

fn sha256_hex(parts: &[&str]) -> String {
    let mut h = Sha256::new();
    for p in parts {
        h.update(p.as_bytes());
        h.update([0u8]);
    }
    let out = h.finalize();
    out.iter().map(|b| format!("{b:02x}")).collect()
}

/// Canonical digest of everything that determines the run's output.
fn digest_inputs(cli: &Cli) -> String {
    let mut parts: Vec<String> = vec![cli.command.name().to_string()];
    let mut push_input = |arg: &str| {
        parts.push(read_input(arg).unwrap_or_else(|_| format!("unreadable:{arg}")));
    };
    match &cli.command {
        Command::Validate { input }
        | Command::Show { input }
        | Command::Irreducibles { input }
        | Command::Galois { input }
        | Command::Classical { input } => push_input(input),
        Command::Admissible { input, set, kind } => {
            push_input(input);
            parts.push(format!("set={set} kind={kind:?}"));
        }
        Command::Aideal { input, set, method, filter } => {
            push_input(input);
            parts.push(format!("set={set} method={method:?} filter={filter}"));
        }
        Command::Envelope { input, kind } => {
            push_input(input);
            parts.push(format!("kind={kind:?}"));
        }
        Command::Classify { dom, cod, table } => {
            push_input(dom);
            push_input(cod);
            parts.push(format!("table={table}"));
        }
        Command::Dadl { input, kind }
        | Command::Polarity { input, kind }
        | Command::TscpCheck { input, kind }
        | Command::TightCheck { input, kind } => {
            push_input(input);
            parts.push(format!("kind={kind:?}"));
        }
        Command::PervinBlocks { input, side } | Command::Bicompletion { input, side } => {
            push_input(input);
            parts.push(format!("side={side:?}"));
        }
        Command::Corpus => parts.push(format!("max-n={:?}", cli.max_n)),
        Command::Selftest => {
            parts.push(format!("seed={} max-n={:?}", cli.seed, cli.max_n));
        }
    }
    let refs: Vec<&str> = parts.iter().map(|s| s.as_str()).collect();
    sha256_hex(&refs)
}

fn load_lattice(arg: &str) -> Result<(String, FinLattice)> {
    let text = read_input(arg)?;
    let doc = LatticeDocument::parse(&text)?;
    let l = doc.to_lattice()?;
    Ok((doc.name, l))
}

/// Loads an input that may be a lattice document (then: the chosen
/// irreducible side's space) or a raw Pervin space.
fn load_space(arg: &str, side: SideArg) -> Result<(String, PervinSpace)> {
    let text = read_input(arg)?;
    match parse_input(&text)? {
        InputDocument::Lattice(doc) => {
            let l = doc.to_lattice()?;
            let space = match side {
                SideArg::J => j_space(&l)?,
                SideArg::M => m_space(&l)?,
            };
            Ok((format!("{} ({:?} side)", doc.name, side), space))
        }
        InputDocument::Pervin(raw) => Ok((format!("{}-point space", raw.points), raw.to_space()?)),
    }
}

fn check_cap(what: &str, count: usize, cap: Option<usize>) -> Result<()> {
    match cap {
        Some(c) if count > c => Err(Error::SizeExceeded(format!(
            "{what} has {count} members, over the requested cap of {c}"
        ))),
        _ => Ok(()),
    }
}

fn parse_set(l: &FinLattice, set: &str) -> Result<Vec<usize>> {
    set.split(',')
        .filter(|s| !s.is_empty())
        .map(|name| {
            l.index_by_name(name.trim())
                .ok_or_else(|| Error::ParseError(format!("no element named {:?}", name.trim())))
        })
        .collect()
}

fn dadl_of(l: &FinLattice, kind: PairKindArg) -> Result<DaDL> {
    match kind {
        PairKindArg::Galois => galois_pair(l),
        PairKindArg::Free => free_dadl(l),
    }
}

fn describe_lattice(name: &str, l: &FinLattice, w: &mut Vec<String>) {
    w.push(format!(
        "{name}: {} elements, bottom {}, top {}",
        l.n(),
        l.name(l.bottom()),
        l.name(l.top())
    ));
}

fn envelope_of(l: &FinLattice, kind: EnvKindArg, cap: Option<usize>) -> Result<Envelope> {
    let env = match kind {
        EnvKindArg::Meet => denv_meet(l)?,
        EnvKindArg::Join => denv_join(l)?,
    };
    check_cap("the envelope carrier", env.lattice.n(), cap)?;
    Ok(env)
}

fn polarity_of(l: &FinLattice, kind: PairKindArg, cap: Option<usize>) -> Result<Polarity> {
    let pair = dadl_of(l, kind)?;
    check_cap("the adjoint pair's D side", pair.d.n(), cap)?;
    check_cap("the adjoint pair's E side", pair.e.n(), cap)?;
    dual_polarity(&pair)
}

fn relation_lines(pol: &Polarity, w: &mut Vec<String>) {
    w.push(format!(
        "X = {{{}}}; Y = {{{}}}",
        pol.x_names().join(", "),
        pol.y_names().join(", ")
    ));
    let mut pairs = Vec::new();
    for x in 0..pol.x_size() {
        for y in 0..pol.y_size() {
            if pol.r(x, y) {
                pairs.push(format!("{} R {}", pol.x_names()[x], pol.y_names()[y]));
            }
        }
    }
    w.push(if pairs.is_empty() {
        "R is empty".into()
    } else {
        format!("R: {}", pairs.join(", "))
    });
}

fn run_command(cli: &Cli) -> Result<Output> {
    if cli.dot
        && !matches!(
            cli.command,
            Command::Show { .. }
                | Command::Envelope { .. }
                | Command::Polarity { .. }
                | Command::PervinBlocks { .. }
                | Command::Bicompletion { .. }
        )
    {
        return Err(Error::ParseError(format!(
            "`{}` produces no diagram; --dot applies to show, envelope, polarity, pervin-blocks, and bicompletion",
            cli.command.name()
        )));
    }
    let digest = digest_inputs(cli);
    let mut w: Vec<String> = Vec::new();
    let mut exit = 0;
    let mut raw = None;
    let mut outcome = String::from("pass");

    match &cli.command {
        Command::Validate { input } => {
            let (name, l) = load_lattice(input)?;
            describe_lattice(&name, &l, &mut w);
            w.push(format!("{} cover pairs; lattice axioms verified", l.cover_pairs().len()));
        }
        Command::Show { input } => {
            let (name, l) = load_lattice(input)?;
            if cli.dot {
                raw = Some(lattice_dot(&name, &l));
            } else {
                describe_lattice(&name, &l, &mut w);
                w.push(format!("elements: {}", l.names().join(", ")));
                for (a, b) in l.cover_pairs() {
                    w.push(format!("{} ⋖ {}", l.name(a), l.name(b)));
                }
            }
        }
        Command::Irreducibles { input } => {
            let (name, l) = load_lattice(input)?;
            let irr = Irr::new(&l)?;
            describe_lattice(&name, &l, &mut w);
            w.push(format!("J = {}", l.set_name(&irr.j)));
            w.push(format!("M = {}", l.set_name(&irr.m)));
            for a in 0..l.n() {
                let (hat, check) = hat_check(&l, a)?;
                w.push(format!(
                    "{}: â = {}, ǎ = {}",
                    l.name(a),
                    l.set_name(&hat),
                    l.set_name(&check)
                ));
            }
        }
        Command::Admissible { input, set, kind } => {
            let (name, l) = load_lattice(input)?;
            let elems = parse_set(&l, set)?;
            let (word, def, irr) = match kind {
                SetKindArg::Join => (
                    "join",
                    is_join_admissible(&l, &elems, Method::Definition)?,
                    is_join_admissible(&l, &elems, Method::Irreducible)?,
                ),
                SetKindArg::Meet => (
                    "meet",
                    is_meet_admissible(&l, &elems, Method::Definition)?,
                    is_meet_admissible(&l, &elems, Method::Irreducible)?,
                ),
            };
            if def.admissible != irr.admissible {
                return Err(Error::TheoremViolation(format!(
                    "definition and irreducible criteria disagree on {} in {name}",
                    l.set_name(&elems)
                )));
            }
            if def.admissible {
                w.push(format!("{} is {word}-admissible in {name}", l.set_name(&elems)));
            } else {
                { outcome = "fail".into(); exit = 1; }
                w.push(format!("{} is not {word}-admissible in {name}", l.set_name(&elems)));
                if let Some(eq) = def.witness {
                    let (lhs_op, rhs_op) =
                        if *kind == SetKindArg::Join { ("∧ ⋁", "⋁ of meets") } else { ("∨ ⋀", "⋀ of joins") };
                    w.push(format!(
                        "distribution fails at {}: {} {} set = {}, {} = {}",
                        l.name(eq.element),
                        l.name(eq.element),
                        lhs_op,
                        l.name(eq.lhs),
                        rhs_op,
                        l.name(eq.rhs)
                    ));
                }
                if let Some(x) = irr.irr_witness {
                    w.push(format!("irreducible witness: {}", l.name(x)));
                }
            }
        }
        Command::Aideal { input, set, method, filter } => {
            let (name, l) = load_lattice(input)?;
            let elems = parse_set(&l, set)?;
            let method = match method {
                GenMethodArg::Criterion => GenMethod::Criterion,
                GenMethodArg::Fixpoint => GenMethod::Fixpoint,
            };
            let (word, members) = if *filter {
                ("a-filter", afilter_generate(&l, &elems, method)?)
            } else {
                ("a-ideal", aideal_generate(&l, &elems, method)?)
            };
            w.push(format!(
                "least {word} of {name} containing {}: {} ({} members)",
                l.set_name(&elems),
                l.set_name(&members),
                members.len()
            ));
        }
        Command::Envelope { input, kind } => {
            let (name, l) = load_lattice(input)?;
            let env = envelope_of(&l, *kind, cli.cap)?;
            if cli.dot {
                raw = Some(lattice_dot(&format!("{name} envelope"), &env.lattice));
            } else {
                let (symbol, base) = match kind {
                    EnvKindArg::Meet => ("∧", "J"),
                    EnvKindArg::Join => ("∨", "M"),
                };
                w.push(format!(
                    "{symbol}-envelope of {}: {} members over {base} = {{{}}}",
                    name,
                    env.lattice.n(),
                    env.carrier.base_names().join(", ")
                ));
                w.push(format!("members: {}", env.lattice.names().join(", ")));
                for a in 0..l.n() {
                    w.push(format!("η: {} ↦ {}", l.name(a), env.lattice.name(env.unit.apply(a))));
                }
            }
        }
        Command::Galois { input } => {
            let (name, l) = load_lattice(input)?;
            let pair = galois_pair(&l)?;
            check_cap("the adjoint pair's D side", pair.d.n(), cli.cap)?;
            check_cap("the adjoint pair's E side", pair.e.n(), cli.cap)?;
            let (closed, iso) = galois_closed(&pair)?;
            w.push(format!(
                "adjunction between the ∧-envelope ({} members) and the ∨-envelope ({} members) verified",
                pair.d.n(),
                pair.e.n()
            ));
            w.push(format!(
                "Galois-closed elements: {} — {}",
                closed.names().join(", "),
                match iso {
                    Some(_) => format!("isomorphic to {name}"),
                    None => "no source to compare against".into(),
                }
            ));
        }
        Command::Classify { dom, cod, table } => {
            let (dname, dl) = load_lattice(dom)?;
            let (cname, cl) = load_lattice(cod)?;
            let entries: Vec<&str> =
                table.split(',').map(|s| s.trim()).filter(|s| !s.is_empty()).collect();
            if entries.len() != dl.n() {
                return Err(Error::ParseError(format!(
                    "table has {} entries for the {} elements of {dname}",
                    entries.len(),
                    dl.n()
                )));
            }
            let tab = entries
                .iter()
                .map(|name| {
                    cl.index_by_name(name)
                        .ok_or_else(|| Error::ParseError(format!("no element named {name:?} in {cname}")))
                })
                .collect::<Result<Vec<usize>>>()?;
            let map = LatticeMap::new(dl.clone(), cl.clone(), tab)?;
            let c = classify_map(&map)?;
            w.push(format!("map {dname} → {cname} on {} elements", dl.n()));
            for (flag, value) in [
                ("monotone", c.monotone),
                ("meet_preserving", c.meet_preserving),
                ("join_preserving", c.join_preserving),
                ("homomorphism", c.homomorphism),
                ("preserves_admissible_joins", c.preserves_admissible_joins),
                ("preserves_admissible_meets", c.preserves_admissible_meets),
                ("sends_join_admissible_to_join_admissible", c.sends_join_admissible_to_join_admissible),
                ("sends_meet_admissible_to_meet_admissible", c.sends_meet_admissible_to_meet_admissible),
                ("surjective", c.surjective),
                ("injective", c.injective),
            ] {
                w.push(format!("{flag}: {value}"));
            }
            w.push(format!(
                "classes: wedge_avee {}, vee_awedge {}, admissible_homomorphism {}{}",
                c.wedge_avee(),
                c.vee_awedge(),
                c.admissible_homomorphism(),
                if c.sampled { " (subset flags sampled)" } else { "" }
            ));
            for witness in &c.witnesses {
                w.push(format!("{}: {}", witness.flag, witness.detail));
            }
        }
        Command::Dadl { input, kind } => {
            let (name, l) = load_lattice(input)?;
            let pair = dadl_of(&l, *kind)?;
            check_cap("the adjoint pair's D side", pair.d.n(), cli.cap)?;
            check_cap("the adjoint pair's E side", pair.e.n(), cli.cap)?;
            w.push(format!(
                "doubly dense adjoint pair over {name}: D has {} members, E has {}",
                pair.d.n(),
                pair.e.n()
            ));
            for a in 0..pair.d.n() {
                w.push(format!("f: {} ↦ {}", pair.d.name(a), pair.e.name(pair.f.apply(a))));
            }
            for b in 0..pair.e.n() {
                w.push(format!("g: {} ↦ {}", pair.e.name(b), pair.d.name(pair.g.apply(b))));
            }
        }
        Command::Polarity { input, kind } => {
            let (name, l) = load_lattice(input)?;
            let pol = polarity_of(&l, *kind, cli.cap)?;
            if cli.dot {
                raw = Some(polarity_dot(&format!("{name} polarity"), &pol));
            } else {
                w.push(format!(
                    "dual polarity of the {} pair over {name}",
                    match kind {
                        PairKindArg::Galois => "envelope",
                        PairKindArg::Free => "free",
                    }
                ));
                relation_lines(&pol, &mut w);
            }
        }
        Command::TscpCheck { input, kind } => {
            let (name, l) = load_lattice(input)?;
            let pol = polarity_of(&l, *kind, cli.cap)?;
            let rep = check_tscp(&pol);
            w.push(format!(
                "dual polarity of {name}: {} X points, {} Y points",
                pol.x_size(),
                pol.y_size()
            ));
            w.push(format!("R-separated: X {}, Y {}", rep.x_separated, rep.y_separated));
            w.push(format!("R-operational: {}", rep.operational));
            w.push(format!("totally R-disconnected: {}", rep.disconnected));
            w.push(rep.note.to_string());
            if let Some((a, b)) = &rep.x_collision {
                w.push(format!("X points {a} and {b} share a relational profile"));
            }
            if let Some((a, b)) = &rep.y_collision {
                w.push(format!("Y points {a} and {b} share a relational profile"));
            }
            if let Some((x, y)) = &rep.disconnection_failure {
                w.push(format!("no stable pair separates {x} from {y}"));
            }
            if !rep.passed() {
                { outcome = "fail".into(); exit = 1; }
            }
        }
        Command::TightCheck { input, kind } => {
            let (name, l) = load_lattice(input)?;
            let pol = polarity_of(&l, *kind, cli.cap)?;
            let rep = is_tight(&pol)?;
            w.push(format!(
                "dual polarity of {name}: tight = {}; {} of {} X points guarded, {} of {} Y points",
                rep.tight,
                rep.x_guarded.iter().filter(|&&g| g).count(),
                pol.x_size(),
                rep.y_guarded.iter().filter(|&&g| g).count(),
                pol.y_size()
            ));
            for f in &rep.x_failures {
                w.push(format!("R-regular but not R-closed on X: {f}"));
            }
            for f in &rep.y_failures {
                w.push(format!("coregular complement yet not R-open on Y: {f}"));
            }
            if !rep.tight {
                { outcome = "fail".into(); exit = 1; }
            }
        }
        Command::Classical { input } => {
            let (name, l) = load_lattice(input)?;
            let duals = classical_duals(&l)?;
            check_cap("the J-side closed-set family", duals.j_closed_sets.members().len(), cli.cap)?;
            check_cap("the M-side closed-set family", duals.m_closed_sets.members().len(), cli.cap)?;
            w.push(format!("classical duals of {name}"));
            relation_lines(&duals.hartung, &mut w);
            let family = |fam: &crate::finlat::SubsetFamilyLattice| -> String {
                fam.members().iter().map(|&m| mask_name(m, fam.base_names())).collect::<Vec<_>>().join(", ")
            };
            w.push(format!(
                "closed sets over J: {} ({} members)",
                family(&duals.j_closed_sets),
                duals.j_closed_sets.members().len()
            ));
            w.push(format!(
                "closed sets over M: {} ({} members)",
                family(&duals.m_closed_sets),
                duals.m_closed_sets.members().len()
            ));
            w.push(format!(
                "maximal-pair space: {} ({} points)",
                duals.urquhart.names.join(", "),
                duals.urquhart.names.len()
            ));
        }
        Command::PervinBlocks { input, side } => {
            let (name, space) = load_space(input, *side)?;
            let blocks = space.blocks()?;
            check_cap("the block family", blocks.members().len(), cli.cap)?;
            if cli.dot {
                raw = Some(lattice_dot(&format!("{name} blocks"), &blocks.to_lattice()?));
            } else {
                w.push(format!(
                    "{name}: {} points, {} generators",
                    space.x_size(),
                    space.family().len()
                ));
                for (x, row) in space.basis().iter().enumerate() {
                    w.push(format!(
                        "basis at {}: {}",
                        space.names()[x],
                        mask_name(*row, space.names())
                    ));
                }
                let names: Vec<String> =
                    blocks.members().iter().map(|&m| mask_name(m, space.names())).collect();
                w.push(format!("blocks: {} ({} of them)", names.join(", "), names.len()));
                w.push("block criterion agrees with the generated sublattice".into());
            }
        }
        Command::Bicompletion { input, side } => {
            let (name, space) = load_space(input, *side)?;
            let bic = space.bicompletion_points()?;
            check_cap("the bicompletion point set", bic.points.n(), cli.cap)?;
            if cli.dot {
                raw = Some(poset_dot(&format!("{name} bicompletion"), &bic.points));
            } else {
                w.push(format!(
                    "{name}: {} points complete to {} ({} blocks)",
                    space.x_size(),
                    bic.points.n(),
                    bic.blocks.members().len()
                ));
                for (x, &p) in bic.eta.iter().enumerate() {
                    w.push(format!("η: {} ↦ {}", space.names()[x], bic.points.name(p)));
                }
                w.push(format!(
                    "η bijective: {}{}",
                    bic.eta_bijective(),
                    if bic.eta_bijective() { " (already bicomplete)" } else { "" }
                ));
                let (classes, _) = space.symmetrize();
                let rendered: Vec<String> = classes
                    .iter()
                    .map(|cls| {
                        let names: Vec<&str> =
                            cls.iter().map(|&x| space.names()[x].as_str()).collect();
                        format!("{{{}}}", names.join(","))
                    })
                    .collect();
                w.push(format!("symmetrization classes: {}", rendered.join(", ")));
            }
        }
        Command::Corpus => {
            for (name, l) in corpus::corpus() {
                w.push(format!("{name}: {} elements", l.n()));
            }
            if let Some(max_n) = cli.max_n {
                for n in 1..=max_n {
                    w.push(format!("lattices of size {n}: {}", lattices_of_size(n)?.len()));
                }
            }
        }
        Command::Selftest => {
            let results = selftest::run_all(cli.seed, cli.max_n);
            let all = results.iter().all(|r| r.passed);
            for r in &results {
                w.push(r.line());
            }
            if !all {
                { outcome = "fail".into(); exit = 1; }
            }
        }
    }

    Ok(Output {
        report: RunReport {
            command: cli.command.name().to_string(),
            digest,
            outcome,
            witnesses: w,
            timing: None,
        },
        exit,
        raw,
    })
}

fn emit(report: &RunReport, json: bool) {
    if json {
        println!("{}", serde_json::to_string_pretty(report).expect("report serializes"));
    } else {
        println!("command: {}", report.command);
        println!("digest: {}", report.digest);
        println!("outcome: {}", report.outcome);
        for line in &report.witnesses {
            println!("  {line}");
        }
    }
}

/// Entry point used by the binary; returns the process exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let started = Instant::now();
    match run_command(&cli) {
        Ok(out) => {
            match &out.raw {
                Some(raw) => print!("{raw}"),
                None => emit(&out.report, cli.json),
            }
            eprintln!("elapsed: {:.1?}", started.elapsed());
            out.exit
        }
        Err(e) => {
            let exit = e.exit_code();
            let report = RunReport {
                command: cli.command.name().to_string(),
                digest: digest_inputs(&cli),
                outcome: if exit == 1 { "fail" } else { "error" }.to_string(),
                witnesses: vec![e.to_string()],
                timing: None,
            };
            emit(&report, cli.json);
            eprintln!("elapsed: {:.1?}", started.elapsed());
            exit
        }
    }
}
