//! Command-line interface.

use crate::classification::{self, BoundContext, Witness};
use crate::disc::discriminant_module;
use crate::fixed_locus::{self, AutInvariants, GroupShape};
use crate::isometry::{self, IsometrySpec};
use crate::lattice::GramLattice;
use crate::niemeier::{self, HolyPair, LeechRoute};
use crate::{catalog, enumerate, verify, Error, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "hyperlat", version, about = "Exact computations on even integral lattices")]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List catalog lattices, or build one and check its published claims.
    Catalog { name: Option<String> },
    /// Build and verify Niemeier lattices.
    Niemeier { name: Option<String> },
    /// Build the Leech lattice by one or all routes.
    Leech {
        /// mod23, weyl, or holy:NAME.
        #[arg(long)]
        route: Option<String>,
    },
    /// Isometries of Niemeier lattices, and isometry tests between definite lattices.
    Isometry {
        #[command(subcommand)]
        action: IsometryCmd,
    },
    /// Co-invariant lattice of a named witness.
    Coinvariant {
        /// Witness name; omit to list them.
        #[arg(long)]
        witness: Option<String>,
    },
    /// Vector enumeration in definite lattices.
    Enumerate {
        #[command(subcommand)]
        action: EnumerateCmd,
    },
    /// Primitive embeddings into K3^[n]-type lattices.
    Embed {
        #[arg(long)]
        lattice: String,
        #[arg(long, default_value_t = 2)]
        from: i64,
        #[arg(long, default_value_t = 9)]
        to: i64,
    },
    /// Fixed-locus arithmetic.
    FixedLocus {
        #[command(subcommand)]
        action: FixedLocusCmd,
    },
    /// Prime-order co-invariant tables and order bounds.
    Classify {
        #[arg(long)]
        p: Option<u64>,
        /// Order bound context: k3, k3n, kummer, og6, og10, k3[2].
        #[arg(long)]
        bounds: Option<String>,
    },
    /// Run the verification suite.
    VerifyThesis {
        /// One of the section keys; all sections when omitted.
        #[arg(long)]
        section: Option<String>,
    },
}

#[derive(Args, Debug, Clone)]
pub struct LatticeArg {
    /// Catalog name.
    #[arg(long)]
    pub lattice: Option<String>,
    /// JSON file with {"name": ..., "gram": [[...]]}.
    #[arg(long)]
    pub file: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum IsometryCmd {
    /// Apply a combinatorial isometry given as JSON {"perm": [...], "diagram": [...], "glue": [...]}.
    Apply {
        #[arg(long)]
        host: String,
        #[arg(long)]
        spec: String,
        /// Act on the Leech lattice of the holy construction instead.
        #[arg(long)]
        leech: bool,
    },
    /// Decide whether two definite lattices are isometric.
    Compare {
        a: String,
        b: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum EnumerateCmd {
    /// Norm census up to a bound.
    Shorts {
        #[command(flatten)]
        input: LatticeArg,
        #[arg(long)]
        bound: i64,
    },
    /// A vector of given norm.
    Represents {
        #[command(flatten)]
        input: LatticeArg,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        #[arg(long)]
        primitive: bool,
        #[arg(long)]
        div: Option<i64>,
    },
}

#[derive(Subcommand, Debug)]
pub enum FixedLocusCmd {
    /// Fixed-locus labels of the co-invariant classes for a prime.
    Table {
        #[arg(long)]
        p: u64,
    },
    /// Dimension of the mod-p cohomology of the fixed locus.
    Bns {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        a: u64,
        #[arg(long)]
        m: u64,
    },
    /// Holomorphic Lefschetz census for order 3 or 5.
    Census {
        #[arg(long)]
        p: u64,
    },
    /// Euler characteristic of a divisor of square q on a K3^[n]-type manifold.
    Chi {
        #[arg(long)]
        q: i64,
        #[arg(long, default_value_t = 2)]
        n: u64,
    },
    /// Fixed points of a symplectic abelian group on a K3 surface, e.g. Z/9.
    K3 {
        #[arg(long)]
        group: String,
    },
    /// Polarization of the variety of sums of powers.
    Vsp,
}

/// Output of a command: text, JSON, and whether every check passed.
pub struct Output {
    pub text: String,
    pub json: Value,
    pub ok: bool,
}

impl Output {
    fn new(text: String, json: Value) -> Self {
        Output { text, json, ok: true }
    }
}

fn budget() -> u64 {
    enumerate::default_budget()
}

fn load(input: &LatticeArg) -> Result<GramLattice> {
    match (&input.lattice, &input.file) {
        (Some(n), None) => lattice_by_name(n),
        (None, Some(f)) => {
            let s = std::fs::read_to_string(f).map_err(|e| Error::Invalid(format!("{f}: {e}")))?;
            GramLattice::from_json(&s)
        }
        _ => Err(Error::Invalid("give exactly one of --lattice and --file".into())),
    }
}

fn lattice_by_name(name: &str) -> Result<GramLattice> {
    if let Some(w) = Witness::from_name(name) {
        return Ok(classification::witness_coinvariant(w)?.s_lattice);
    }
    if name.starts_with('N') && niemeier::TABLE.iter().any(|r| r.0 == name) {
        return Ok(niemeier::build_niemeier(name)?.lattice);
    }
    if name.eq_ignore_ascii_case("leech") {
        return niemeier::leech(&LeechRoute::Mod23);
    }
    Ok(catalog::make_named(name)?.lattice)
}

fn gram_json(l: &GramLattice) -> Value {
    json!(l.gram.iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>())
}

fn gram_text(l: &GramLattice) -> String {
    l.gram.iter().map(|r| r.iter().map(|x| format!("{x:>4}")).collect::<String>()).collect::<Vec<_>>().join("\n")
}

fn invariants_json(l: &GramLattice) -> Result<Value> {
    let d = discriminant_module(l)?;
    Ok(json!({
        "rank": l.rank(),
        "det": l.det().to_string(),
        "even": l.is_even(),
        "signature": l.signature(),
        "disc": d.fqm.orders,
    }))
}

fn cmd_catalog(name: Option<String>) -> Result<Output> {
    let Some(name) = name else {
        let es = catalog::entries();
        let text = es.iter().map(|e| format!("{:<12} {:?} {}", e.name, e.recipe, e.note).trim_end().to_string()).collect::<Vec<_>>().join("\n");
        return Ok(Output::new(text, serde_json::to_value(&es).unwrap()));
    };
    let b = catalog::make_named(&name)?;
    let inv = invariants_json(&b.lattice)?;
    let mut text = format!("{name}: rank {}, det {}, disc {}\n{}", inv["rank"], b.lattice.det(), inv["disc"], gram_text(&b.lattice));
    for c in &b.checks {
        text.push_str(&format!("\n{}: {} (expected {}, got {})", c.claim, if c.pass { "pass" } else { "fail" }, c.expected, c.got));
    }
    if let Some(s) = &b.transcription_suspect {
        text.push_str(&format!("\nprinted matrix rejected: {s}"));
    }
    let ok = b.checks.iter().all(|c| c.pass);
    Ok(Output {
        text,
        json: json!({"name": name, "invariants": inv, "gram": gram_json(&b.lattice), "checks": b.checks, "transcription_suspect": b.transcription_suspect}),
        ok,
    })
}

fn cmd_niemeier(name: Option<String>) -> Result<Output> {
    let names: Vec<&str> = match &name {
        Some(n) => vec![niemeier::TABLE.iter().find(|r| r.0 == n).map(|r| r.0).ok_or_else(|| Error::Invalid(format!("unknown Niemeier lattice {n}")))?],
        None => niemeier::TABLE.iter().map(|r| r.0).collect(),
    };
    let mut rows = vec![];
    let mut text = vec![];
    let mut ok = true;
    for n in names {
        let r = niemeier::verify_niemeier(&niemeier::build_niemeier(n)?)?;
        ok &= r.ok();
        text.push(format!("{:<4} roots {:>4} (expected {:>4}) det {} even {} : {}", r.name, r.roots, r.expected_roots, r.det, r.even, if r.ok() { "pass" } else { "fail" }));
        rows.push(serde_json::to_value(&r).unwrap());
    }
    Ok(Output { text: text.join("\n"), json: json!(rows), ok })
}

fn cmd_leech(route: Option<String>) -> Result<Output> {
    let routes = match route.as_deref() {
        None => vec![LeechRoute::Mod23, LeechRoute::Holy("N23".into()), LeechRoute::WeylQuotient],
        Some("mod23") => vec![LeechRoute::Mod23],
        Some("weyl") => vec![LeechRoute::WeylQuotient],
        Some(r) => match r.strip_prefix("holy:") {
            Some(n) => vec![LeechRoute::Holy(n.into())],
            None => return Err(Error::Invalid(format!("unknown route {r}"))),
        },
    };
    let mut text = vec![];
    let mut rows = vec![];
    for r in routes {
        let label = match &r {
            LeechRoute::Mod23 => "mod23".to_string(),
            LeechRoute::WeylQuotient => "weyl".to_string(),
            LeechRoute::Holy(n) => format!("holy:{n}"),
        };
        let rep = niemeier::certify_leech(&niemeier::leech(&r)?, &label)?;
        text.push(format!("{label}: rank {} det {} even {} roots {}", rep.rank, rep.det, rep.even, rep.roots));
        rows.push(serde_json::to_value(&rep).unwrap());
    }
    Ok(Output::new(text.join("\n"), json!(rows)))
}

fn cmd_isometry(action: IsometryCmd) -> Result<Output> {
    match action {
        IsometryCmd::Apply { host, spec, leech } => {
            let spec: IsometrySpec = serde_json::from_str(&spec).map_err(|e| Error::Invalid(format!("spec: {e}")))?;
            let g = if leech {
                isometry::from_spec_holy(&HolyPair::new(&host)?, &spec)?.on_leech
            } else if niemeier::pure_a_names().contains(&host.as_str()) && !spec.glue.is_empty() {
                isometry::from_spec_holy(&HolyPair::new(&host)?, &spec)?.on_niemeier
            } else {
                isometry::from_spec_rooted(&niemeier::build_niemeier(&host)?, &spec)?
            };
            let order = g.order()?;
            let fs = isometry::fixed_sublattices(&g.lattice, std::slice::from_ref(&g))?;
            let disc_trivial = match &fs.s_lattice {
                Some(s) => {
                    let m = isometry::restrict(&g, &fs.s.rows)?;
                    isometry::discriminant_action(&isometry::LatticeIsometry::new(s, m)?)?.trivial
                }
                None => true,
            };
            let text = format!("order {order}\ninvariant rank {}\nco-invariant rank {}\ntrivial on A_S {disc_trivial}", fs.t.rank(), fs.s.rank());
            Ok(Output::new(text, json!({"order": order, "invariant_rank": fs.t.rank(), "coinvariant_rank": fs.s.rank(), "disc_trivial": disc_trivial})))
        }
        IsometryCmd::Compare { a, b } => {
            let (la, lb) = (lattice_by_name(&a)?, lattice_by_name(&b)?);
            let v = enumerate::isometric(&la, &lb, budget())?;
            let detail = match &v {
                enumerate::IsoVerdict::Isometric(m) => json!(m.iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>()),
                enumerate::IsoVerdict::StrongInvariantMatch(s) | enumerate::IsoVerdict::NotIsometric(s) => json!(s),
                enumerate::IsoVerdict::Timeout => Value::Null,
            };
            Ok(Output::new(v.label().to_string(), json!({"verdict": v.label(), "detail": detail})))
        }
    }
}

fn cmd_coinvariant(witness: Option<String>) -> Result<Output> {
    let Some(name) = witness else {
        let ws = Witness::all();
        let text = ws.iter().map(|w| format!("{:<12} order {:>2} on {}", w.name(), w.order(), w.host())).collect::<Vec<_>>().join("\n");
        return Ok(Output::new(text, json!(ws.iter().map(|w| w.name()).collect::<Vec<_>>())));
    };
    let w = Witness::from_name(&name).ok_or_else(|| Error::Invalid(format!("unknown witness {name}")))?;
    let c = classification::leech_couple(w)?;
    let r = classification::witness_coinvariant(w)?;
    let inv = invariants_json(&r.s_lattice)?;
    let text = format!(
        "{} (order {}) acting on {}\ninvariant rank {}, co-invariant rank {}, det {}, disc {}\nrootless {}, trivial on A_S {}, Leech couple {}\n{}",
        w.name(),
        r.order,
        r.acting_on,
        r.t_rank,
        r.s_rank,
        r.s_lattice.det(),
        inv["disc"],
        c.rootless,
        r.disc_trivial,
        c.is_leech_couple(),
        gram_text(&r.s_lattice)
    );
    Ok(Output::new(
        text,
        json!({"witness": w.name(), "order": r.order, "acting_on": r.acting_on, "invariant_rank": r.t_rank, "coinvariant": inv, "rootless": c.rootless,
               "disc_trivial": r.disc_trivial, "same_on_both_sides": r.same_on_both_sides, "gram": gram_json(&r.s_lattice)}),
    ))
}

fn cmd_enumerate(action: EnumerateCmd) -> Result<Output> {
    match action {
        EnumerateCmd::Shorts { input, bound } => {
            let l = load(&input)?;
            let c = enumerate::short_vectors(&l, bound)?;
            let text = c.counts.iter().map(|(n, k)| format!("{n}: {k}")).collect::<Vec<_>>().join("\n");
            Ok(Output::new(text, json!({"bound": bound, "counts": c.counts})))
        }
        EnumerateCmd::Represents { input, n, primitive, div } => {
            let l = load(&input)?;
            let r = enumerate::represents(&l, n, primitive, div)?;
            let text = match &r {
                Some(v) => format!("{v:?}"),
                None => "none".into(),
            };
            Ok(Output::new(text, json!({"n": n, "primitive": primitive, "div": div, "vector": r})))
        }
    }
}

fn cmd_embed(lattice: &str, from: i64, to: i64) -> Result<Output> {
    if from < 2 || to < from {
        return Err(Error::Invalid("need 2 ≤ from ≤ to".into()));
    }
    let ns: Vec<i64> = (from..=to).collect();
    let r = classification::hilbert_embeddability(lattice, &ns, budget())?;
    let mut text = format!("{} ({})", r.lattice, r.route);
    for c in &r.checks {
        text.push_str(&format!("\n  {c}"));
    }
    for c in &r.cells {
        text.push_str(&format!("\nL_{}: {:?} (square {}) {}", c.n, c.status, c.square, c.reason));
    }
    Ok(Output::new(text, serde_json::to_value(&r).unwrap()))
}

fn cmd_fixed_locus(action: FixedLocusCmd) -> Result<Output> {
    match action {
        FixedLocusCmd::Table { p } => {
            let t = classification::prime_coinvariant_table(p, budget())?;
            let text = t
                .classes
                .iter()
                .map(|c| format!("{:<10} rank {:>2}  {}  bns {}", c.name, c.rank, c.fixed_locus.clone().unwrap_or_else(|| "-".into()), c.bns.map_or("-".into(), |b| b.to_string())))
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Output::new(text, serde_json::to_value(&t.classes).unwrap()))
        }
        FixedLocusCmd::Bns { p, a, m } => {
            let d = fixed_locus::bns_dimension(&AutInvariants { p, a, m })?;
            Ok(Output::new(d.to_string(), json!(d)))
        }
        FixedLocusCmd::Census { p } => {
            let profiles = match p {
                3 => fixed_locus::census_order3(),
                5 => fixed_locus::census_order5()?,
                _ => return Err(Error::Invalid("census is available for p = 3 and p = 5".into())),
            };
            let text = profiles
                .iter()
                .map(|pr| {
                    let c2: Vec<String> = pr.c2_integrals.iter().map(|x| x.to_string()).collect();
                    format!("a = {}: points {:?}, K3 {:?}, c2 integrals [{}], abelian ≥ {}", pr.a, pr.points, pr.k3, c2.join(", "), pr.abelian_at_least)
                })
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Output::new(text, serde_json::to_value(&profiles).unwrap()))
        }
        FixedLocusCmd::Chi { q, n } => {
            let c = fixed_locus::divisor_euler_characteristic(q, n)?;
            Ok(Output::new(c.to_string(), json!(c.to_string())))
        }
        FixedLocusCmd::K3 { group } => {
            let g = GroupShape::parse(&group).ok_or_else(|| Error::Invalid(format!("cannot parse group {group}")))?;
            let c = fixed_locus::k3_census(g)?;
            let counts: Vec<String> = c.counts.iter().map(|(m, k)| format!("t_{m} = {k}")).collect();
            Ok(Output::new(format!("{}\n{:?}", counts.join(", "), c.verdict), serde_json::to_value(&c).unwrap()))
        }
        FixedLocusCmd::Vsp => {
            let v = fixed_locus::vsp_polarization()?;
            Ok(Output::new(format!("l = {}h - 3δ, l² = {}, divisibility {}", v.a, v.square, v.divisibility), serde_json::to_value(&v).unwrap()))
        }
    }
}

fn cmd_classify(p: Option<u64>, bounds: Option<String>) -> Result<Output> {
    match (p, bounds) {
        (Some(p), None) => {
            let t = classification::prime_coinvariant_table(p, budget())?;
            let mut text = String::new();
            for e in &t.entries {
                text.push_str(&format!(
                    "{:<12} on {:<5} rank {:>2} det {:>5} disc {:?} rootless {} trivial {} class {} ({})\n",
                    e.witness, e.acting_on, e.rank, e.abs_det, e.disc, e.rootless, e.disc_trivial, e.class, e.proof
                ));
            }
            for (i, c) in t.classes.iter().enumerate() {
                text.push_str(&format!("class {i}: {} rank {} members {:?}", c.name, c.rank, c.members));
                if let Some(cc) = &c.catalog_check {
                    text.push_str(&format!(", catalog {cc}"));
                }
                if let Some(f) = &c.fixed_locus {
                    text.push_str(&format!(", fixed locus {f}"));
                }
                text.push('\n');
            }
            Ok(Output::new(text.trim_end().to_string(), serde_json::to_value(&t).unwrap()))
        }
        (None, Some(ctx)) => {
            let c = BoundContext::parse(&ctx).ok_or_else(|| Error::Invalid(format!("unknown context {ctx}")))?;
            let b = classification::order_bounds(c)?;
            let mut text = format!("{:?}: max order {}, max prime {}", b.context, b.max_order.map_or("-".into(), |x| x.to_string()), b.max_prime.map_or("-".into(), |x| x.to_string()));
            for c in &b.certificate {
                text.push_str(&format!("\n  {c}"));
            }
            Ok(Output::new(text, serde_json::to_value(&b).unwrap()))
        }
        _ => Err(Error::Invalid("give exactly one of --p and --bounds".into())),
    }
}

fn cmd_verify(section: Option<String>) -> Result<Output> {
    let r = verify::run(section.as_deref())?;
    Ok(Output { text: r.to_text().trim_end().to_string(), json: serde_json::to_value(&r).unwrap(), ok: r.passed() })
}

pub fn execute(cli: Cli) -> Result<Output> {
    match cli.command {
        Command::Catalog { name } => cmd_catalog(name),
        Command::Niemeier { name } => cmd_niemeier(name),
        Command::Leech { route } => cmd_leech(route),
        Command::Isometry { action } => cmd_isometry(action),
        Command::Coinvariant { witness } => cmd_coinvariant(witness),
        Command::Enumerate { action } => cmd_enumerate(action),
        Command::Embed { lattice, from, to } => cmd_embed(&lattice, from, to),
        Command::FixedLocus { action } => cmd_fixed_locus(action),
        Command::Classify { p, bounds } => cmd_classify(p, bounds),
        Command::VerifyThesis { section } => cmd_verify(section),
    }
}

/// Parses arguments, runs, prints; returns the process exit code.
pub fn main_with_args<I: IntoIterator<Item = String>>(args: I) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let json = cli.json;
    match execute(cli) {
        Ok(out) => {
            if json {
                println!("{}", serde_json::to_string_pretty(&out.json).unwrap());
            } else {
                println!("{}", out.text);
            }
            if out.ok {
                0
            } else {
                1
            }
        }
        Err(Error::Invalid(msg)) => {
            eprintln!("error: {msg}");
            2
        }
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}
