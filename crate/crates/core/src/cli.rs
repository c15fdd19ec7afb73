//! Command-line front end. `run` is the whole program minus process exit, so
//! tests can drive it directly.

use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::absorbable::{
    bounded_search, classify_absorbable_small, decompose_delta_power, decompose_normalizer, decompose_parabolic,
    decompose_positive_conjugator, decompose_sub_delta_power, AbsorbableDecomposition,
};
use crate::atoms::AtomSet;
use crate::cal::{ball, vertex_of, AbsorbablePool, EdgeKind};
use crate::coxeter::{system, ArtinSystem, Side};
use crate::error::{GarsideError, Result};
use crate::freeprod::{search_candidate, verify_free_product, FreeProductParams, CONSTANTS};
use crate::garside::{GroupElement, LatticeOp, Order};
use crate::growth::{GrowthMode, GrowthReport};
use crate::parabolic::{factor_conjugator, ribbon};

/// Default cap on enumeration sizes; override with `GARSIDE_BUDGET`.
pub const DEFAULT_BUDGET: usize = 1 << 22;

pub fn budget_from_env() -> usize {
    std::env::var("GARSIDE_BUDGET").ok().and_then(|v| v.parse().ok()).unwrap_or(DEFAULT_BUDGET)
}

#[derive(Parser, Debug)]
#[command(name = "garside", version, about = "Garside normal forms, ribbons, absorbable elements and growth")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OpArg {
    Meet,
    Join,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OrderArg {
    Prefix,
    Suffix,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SideArg {
    Left,
    Right,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Decompose {
    Delta,
    SubDelta,
    Parabolic,
    Conjugator,
    Normalizer,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Monoid,
    Group,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Left normal form of a word.
    Nf {
        system: String,
        #[arg(allow_hyphen_values = true)]
        word: String,
    },
    /// Meet or join of two simple elements.
    Lattice {
        system: String,
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        #[arg(long, value_enum, default_value_t = OpArg::Meet)]
        op: OpArg,
        #[arg(long, value_enum, default_value_t = OrderArg::Prefix)]
        side: OrderArg,
    },
    /// The ribbon attached to an atom set and an extra atom.
    Ribbon {
        system: String,
        #[arg(long)]
        x: String,
        #[arg(long)]
        t: usize,
        #[arg(long, value_enum, default_value_t = SideArg::Right)]
        side: SideArg,
    },
    /// Factors a positive conjugator as a parabolic element times a ribbon chain.
    FactorConj {
        system: String,
        #[arg(long, allow_hyphen_values = true)]
        u: String,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
    },
    /// Absorbable decompositions and absorber search.
    Absorb {
        system: String,
        #[arg(long, value_enum)]
        decompose: Option<Decompose>,
        /// Exponent for `delta` and `sub-delta`.
        #[arg(long, allow_hyphen_values = true)]
        k: Option<i64>,
        /// Atom set for `sub-delta`, `parabolic` and `normalizer`.
        #[arg(long)]
        x: Option<String>,
        /// Element to decompose (`parabolic`, `conjugator`, `normalizer`).
        #[arg(long, allow_hyphen_values = true)]
        g: Option<String>,
        /// Conjugated element for `conjugator`.
        #[arg(long, allow_hyphen_values = true)]
        u: Option<String>,
        /// Search an absorber for this element instead of decomposing.
        #[arg(long, allow_hyphen_values = true)]
        search: Option<String>,
        #[arg(long, default_value_t = 2)]
        radius: usize,
    },
    /// Ball in the additional length graph.
    CalBall {
        system: String,
        #[arg(long, default_value_t = 1)]
        radius: usize,
        /// Center element (default: identity).
        #[arg(long, allow_hyphen_values = true, default_value = "")]
        center: String,
        /// Absorbable pool elements; each needs an absorber of length at most `--pool-radius`.
        #[arg(long, allow_hyphen_values = true)]
        pool: Vec<String>,
        #[arg(long, default_value_t = 2)]
        pool_radius: usize,
    },
    /// Ball counts and growth rate with respect to the simple elements.
    Growth {
        system: String,
        #[arg(long, default_value_t = 6)]
        horizon: usize,
        #[arg(long, value_enum, default_value_t = ModeArg::Group)]
        mode: ModeArg,
    },
    /// Bounded free-product check against a standard parabolic.
    Freeprod {
        system: String,
        #[arg(long)]
        x: String,
        /// Complement to test; searched when absent.
        #[arg(long, allow_hyphen_values = true)]
        g: Option<String>,
        #[arg(long = "L", default_value_t = 4)]
        l: usize,
        #[arg(long = "R", default_value_t = 2)]
        r: usize,
        #[arg(long = "E", default_value_t = 3)]
        e: i64,
    },
    /// Constants of the hyperbolicity argument.
    Constants,
}

/// Exit code and captured streams of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `1,3`, `{1,3}`, `1 3` or an empty string into an atom set.
pub fn parse_atoms(sys: &ArtinSystem, text: &str) -> Result<AtomSet> {
    let mut set = AtomSet::EMPTY;
    for tok in text.trim_matches(|c| c == '{' || c == '}').split(|c: char| c == ',' || c.is_whitespace()) {
        if tok.is_empty() {
            continue;
        }
        let v: i64 = tok.parse().map_err(|_| GarsideError::MalformedWord(format!("`{tok}` is not an atom")))?;
        if v < 1 || v as usize > sys.rank() {
            return Err(GarsideError::InvalidAtom(v));
        }
        set.insert(v as usize - 1);
    }
    Ok(set)
}

fn atom_index(sys: &ArtinSystem, t: usize) -> Result<usize> {
    if t == 0 || t > sys.rank() {
        return Err(GarsideError::InvalidAtom(t as i64));
    }
    Ok(t - 1)
}

fn simple_arg(sys: &Arc<ArtinSystem>, word: &str) -> Result<GroupElement> {
    let g = GroupElement::parse(sys, word)?;
    if g.as_simple().is_none() {
        return Err(GarsideError::Precondition(format!("`{word}` is not a simple element")));
    }
    Ok(g)
}

fn required<'a>(v: &'a Option<String>, flag: &str) -> Result<&'a str> {
    v.as_deref().ok_or_else(|| GarsideError::Precondition(format!("--{flag} is required here")))
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("values serialize") + "\n"
}

fn decomposition_text(d: &AbsorbableDecomposition) -> String {
    let mut out = format!("target {}\n{} factor(s), budget {}\n", d.target.render(), d.len(), d.budget);
    for (i, c) in d.certificates.iter().enumerate() {
        out.push_str(&format!("{}: {}  absorbed by {}\n", i + 1, c.absorbed.render(), c.absorber.render()));
    }
    out
}

fn execute(cli: &Cli) -> Result<String> {
    let format = cli.format;
    let budget = budget_from_env();
    let dot_only_for_balls = || GarsideError::Precondition("dot output is only available for cal-ball".into());
    if format == Format::Dot && !matches!(cli.command, Command::CalBall { .. }) {
        return Err(dot_only_for_balls());
    }
    let json = format == Format::Json;
    match &cli.command {
        Command::Nf { system: s, word } => {
            let sys = system(s)?;
            let g = GroupElement::parse(&sys, word)?;
            Ok(if json { to_json(&g) } else { g.render() + "\n" })
        }
        Command::Lattice { system: s, a, b, op, side } => {
            let sys = system(s)?;
            let (a, b) = (simple_arg(&sys, a)?, simple_arg(&sys, b)?);
            let op = match op {
                OpArg::Meet => LatticeOp::Meet,
                OpArg::Join => LatticeOp::Join,
            };
            let order = match side {
                OrderArg::Prefix => Order::Prefix,
                OrderArg::Suffix => Order::Suffix,
            };
            let s = sys.simple_lattice(&a.as_simple().unwrap(), &b.as_simple().unwrap(), op, order);
            let g = GroupElement::from_simple(&sys, s);
            Ok(if json { to_json(&g) } else { g.render() + "\n" })
        }
        Command::Ribbon { system: s, x, t, side } => {
            let sys = system(s)?;
            let x = parse_atoms(&sys, x)?;
            let side = match side {
                SideArg::Left => Side::Left,
                SideArg::Right => Side::Right,
            };
            let r = ribbon(&sys, x, atom_index(&sys, *t)?, side)?;
            Ok(if json {
                to_json(&r)
            } else {
                format!("ribbon {}\nsource {}\ntarget {}\n", r.value.render(), r.source, r.target)
            })
        }
        Command::FactorConj { system: s, u, x } => {
            let sys = system(s)?;
            let (u, x) = (GroupElement::parse(&sys, u)?, GroupElement::parse(&sys, x)?);
            let (alpha, chain) = factor_conjugator(&u, &x)?;
            Ok(if json {
                to_json(&json!({ "alpha": alpha, "chain": chain }))
            } else {
                let mut out = format!("alpha {}\n{} ribbon(s)\n", alpha.render(), chain.len());
                for (i, r) in chain.factors.iter().enumerate() {
                    out.push_str(&format!("{}: {} -> {} via {}\n", i + 1, r.source, r.target, r.value.render()));
                }
                out
            })
        }
        Command::Absorb { system: s, decompose, k, x, g, u, search, radius } => {
            let sys = system(s)?;
            if let Some(y) = search {
                let y = GroupElement::parse(&sys, y)?;
                let classified = if sys.family().is_small() { Some(classify_absorbable_small(&y)?) } else { None };
                let cert = bounded_search(&y, *radius, budget)?;
                return Ok(if json {
                    to_json(&json!({ "element": y, "radius": radius, "classified": classified, "certificate": cert }))
                } else {
                    let mut out = match &cert {
                        Some(c) => format!("{} absorbed by {}\n", y.render(), c.absorber.render()),
                        None => format!("{}: no absorber of canonical length ≤ {radius}\n", y.render()),
                    };
                    if let Some(c) = classified {
                        out.push_str(&format!("dihedral classifier: {}\n", if c { "absorbable" } else { "not absorbable" }));
                    }
                    out
                });
            }
            let Some(kind) = decompose else {
                return Err(GarsideError::Precondition("give --decompose or --search".into()));
            };
            let atoms = |name| -> Result<AtomSet> { parse_atoms(&sys, required(x, name)?) };
            let elem = |v: &Option<String>, name| -> Result<GroupElement> { GroupElement::parse(&sys, required(v, name)?) };
            let d = match kind {
                Decompose::Delta => decompose_delta_power(&sys, k.unwrap_or(1))?,
                Decompose::SubDelta => decompose_sub_delta_power(&sys, atoms("x")?, k.unwrap_or(1))?,
                Decompose::Parabolic => decompose_parabolic(&elem(g, "g")?, atoms("x")?)?,
                Decompose::Conjugator => decompose_positive_conjugator(&elem(u, "u")?, &elem(g, "g")?)?,
                Decompose::Normalizer => decompose_normalizer(&elem(g, "g")?, atoms("x")?)?,
            };
            Ok(if json { to_json(&d) } else { decomposition_text(&d) })
        }
        Command::CalBall { system: s, radius, center, pool, pool_radius } => {
            let sys = system(s)?;
            let mut certs = Vec::new();
            for w in pool {
                let y = GroupElement::parse(&sys, w)?;
                match bounded_search(&y, *pool_radius, budget)? {
                    Some(c) => certs.push(c),
                    None => {
                        return Err(GarsideError::NotFound(format!(
                            "no absorber of canonical length ≤ {pool_radius} for {}",
                            y.render()
                        )))
                    }
                }
            }
            let center = vertex_of(&GroupElement::parse(&sys, center)?);
            let b = ball(&center, *radius, &AbsorbablePool::new(certs)?, budget);
            Ok(match format {
                Format::Json => b.to_json() + "\n",
                Format::Dot => b.to_dot(),
                Format::Text => {
                    let mut out = format!(
                        "{} ball of radius {}: {} vertices, {} edges ({} simple, {} absorbable){}\n",
                        sys.name(),
                        radius,
                        b.vertices.len(),
                        b.edges.len(),
                        b.count_kind(EdgeKind::Simple),
                        b.count_kind(EdgeKind::Absorbable),
                        if b.truncated { ", truncated by budget" } else { "" }
                    );
                    for (v, d) in b.vertices.iter().zip(&b.distances) {
                        out.push_str(&format!("{d} {}\n", v.rep().render()));
                    }
                    out
                }
            })
        }
        Command::Growth { system: s, horizon, mode } => {
            let sys = system(s)?;
            let mode = match mode {
                ModeArg::Monoid => GrowthMode::Monoid,
                ModeArg::Group => GrowthMode::Group,
            };
            let report = GrowthReport::compute(&sys, *horizon, mode, budget)?;
            Ok(if json { to_json(&report) } else { report.to_table() })
        }
        Command::Freeprod { system: s, x, g, l, r, e } => {
            let sys = system(s)?;
            let x = parse_atoms(&sys, x)?;
            let params = FreeProductParams { blocks: *l, radius: *r, exponent: *e };
            let g = match g {
                Some(w) => GroupElement::parse(&sys, w)?,
                None => match search_candidate(&sys, CONSTANTS.g_len_bound as usize, params, budget)? {
                    Some(rep) => rep.g,
                    None => return Err(GarsideError::NotFound("no candidate within the length bound".into())),
                },
            };
            let c = verify_free_product(&g, x, params, budget)?;
            Ok(if json {
                to_json(&c)
            } else {
                let mut out = format!(
                    "g = {}\nX = {}\nL = {}, R = {}, E = {}\n{} parabolic elements, {} words checked\n",
                    c.g.render(),
                    c.atoms,
                    l,
                    r,
                    e,
                    c.parabolic_elements,
                    c.words_checked
                );
                match &c.witness {
                    None => out.push_str("verified: no trivial word\n"),
                    Some(w) => out.push_str(&format!("rejected: trivial word {}\n", serde_json::to_string(w).expect("serializes"))),
                }
                out
            })
        }
        Command::Constants => Ok(if json {
            to_json(&json!({
                "delta": CONSTANTS.delta,
                "g_len_bound": CONSTANTS.g_len_bound,
                "N": "4κ+319",
                "F": "8κ+638",
                "N_coefficients": [4, 319],
                "F_coefficients": [8, 638],
                "orbit_bound_parabolic": CONSTANTS.orbit_bound_parabolic,
                "orbit_bound_normalizer": CONSTANTS.orbit_bound_normalizer,
            }))
        } else {
            CONSTANTS.render()
        }),
    }
}

/// Runs one invocation: 0 on success, 1 on a domain error, 2 on a usage error.
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Output { code, stdout: text, stderr: String::new() }
            } else {
                Output { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match execute(&cli) {
        Ok(stdout) => Output { code: 0, stdout, stderr: String::new() },
        Err(err) if cli.format == Format::Json => Output {
            code: 1,
            stdout: to_json(&json!({ "error": { "kind": err.kind(), "message": err.to_string() } })),
            stderr: String::new(),
        },
        Err(err) => Output { code: 1, stdout: String::new(), stderr: format!("error[{}]: {err}\n", err.kind()) },
    }
}
