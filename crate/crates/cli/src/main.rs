//! `skewbool`: command-line front end.
//!
//! Exit codes: 0 for success or a relation that holds, 1 for a relation that
//! fails, 2 for usage and input errors.

use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};
use skewbool::free::{atom_count, free_center_size, free_signature, free_size};
use skewbool::models::{finite_to_pfun, pfun_signature, sx_closure_size, sx_verify_free, SxSpace};
use skewbool::structure::{rank_table, Binding};
use skewbool::word::{decide_leq, decide_preceq, identity_suite};
use skewbool::{
    decide_equal, decide_equal_nf, min_generators, rank, AlgebraSignature, Alphabet, FreeAlgebra, FreeElement,
    PrimitiveShape, Term, Variety, Verdict, Witness,
};

#[derive(Parser)]
#[command(name = "skewbool", version, about = "Free skew Boolean algebras: word problems, normal forms, ranks")]
struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide `t1 = t2`, `t1 <= t2` (natural order) or `t1 <~ t2` (natural preorder).
    Decide {
        #[arg(long, short)]
        variety: Variety,
        /// Use atom normal forms instead of evaluation in the generating algebras.
        #[arg(long)]
        nf: bool,
        query: String,
    },
    /// Atomic normal form of a term in a free algebra.
    Normalize {
        #[arg(long, short)]
        variety: Variety,
        /// Comma-separated generators; defaults to the term's variables in order of appearance.
        #[arg(long, short)]
        alphabet: Option<String>,
        term: String,
    },
    /// Size, atoms, signature and center of a finite free algebra.
    FreeInfo {
        #[arg(long, short)]
        variety: Variety,
        #[arg(short)]
        n: u32,
    },
    /// Least number of generators of a finite algebra.
    Rank {
        #[arg(long)]
        sig: AlgebraSignature,
    },
    /// Ranks of the powers of one primitive algebra.
    Ranktable {
        #[arg(long)]
        shape: PrimitiveShape,
        #[arg(long)]
        max: u64,
    },
    /// A generating set of least size.
    Mingen {
        #[arg(long)]
        sig: AlgebraSignature,
    },
    /// Intersection of two elements of a finite algebra, or of two terms in a free algebra.
    Intersect {
        #[command(flatten)]
        ambient: Ambient,
        x: String,
        y: String,
    },
    /// Center of a finite algebra (`--sig`) or of a free algebra (`--variety`, `-n`).
    Center {
        #[command(flatten)]
        ambient: Ambient,
        #[arg(short)]
        n: Option<u32>,
    },
    /// Check that the atomic terms separate in the set model on `n` generators.
    SxVerify {
        #[arg(short)]
        n: u32,
    },
    /// Generators of the partial maps {1..n} ⇀ {1..m}.
    PfunDemo {
        #[arg(short, default_value_t = 4)]
        n: u32,
        #[arg(short, default_value_t = 2)]
        m: u32,
    },
    /// Run the identity suite in every variety.
    Identities,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Ambient {
    #[arg(long)]
    sig: Option<AlgebraSignature>,
    #[arg(long, short)]
    variety: Option<Variety>,
}

/// What a command prints and how it exits.
struct Report {
    text: String,
    json: Value,
    holds: bool,
}

impl Report {
    fn ok(text: String, json: Value) -> Report {
        Report { text, json, holds: true }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(report) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&report.json).expect("values serialize"));
            } else {
                print!("{}", report.text);
            }
            if report.holds {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn parse_term(text: &str) -> Result<Term> {
    text.parse().with_context(|| format!("in term `{text}`"))
}

fn run(command: Command) -> Result<Report> {
    match command {
        Command::Decide { variety, nf, query } => decide(variety, nf, &query),
        Command::Normalize { variety, alphabet, term } => normalize(variety, alphabet.as_deref(), &term),
        Command::FreeInfo { variety, n } => free_info(variety, n),
        Command::Rank { sig } => rank_report(&sig),
        Command::Ranktable { shape, max } => ranktable(shape, max),
        Command::Mingen { sig } => mingen(&sig),
        Command::Intersect { ambient, x, y } => intersect(ambient, &x, &y),
        Command::Center { ambient, n } => center(ambient, n),
        Command::SxVerify { n } => sx_verify(n),
        Command::PfunDemo { n, m } => pfun_demo(n, m),
        Command::Identities => identities(),
    }
}

fn witness_json(w: &Witness) -> Value {
    let assignment: Vec<Value> = w.assignment.iter().map(|(x, v)| json!([x, w.model.label(*v)])).collect();
    json!({
        "model": w.model.to_string(),
        "assignment": assignment,
        "left": w.model.label(w.left),
        "right": w.model.label(w.right),
    })
}

fn decide(variety: Variety, nf: bool, query: &str) -> Result<Report> {
    // longest operators first so `<=` is not read as `=`
    let (relation, (lhs, rhs)) = ["<=", "<~", "≤", "⪯", "="]
        .iter()
        .find_map(|op| query.split_once(op).map(|parts| (*op, parts)))
        .ok_or_else(|| anyhow!("expected `t1 = t2`, `t1 <= t2` or `t1 <~ t2`"))?;
    let relation = match relation {
        "<=" | "≤" => "<=",
        "<~" | "⪯" => "<~",
        _ => "=",
    };
    let (t1, t2) = (parse_term(lhs.trim())?, parse_term(rhs.trim())?);
    let verdict: Verdict = match (relation, nf) {
        ("=", false) => decide_equal(variety, &t1, &t2)?,
        ("=", true) => decide_equal_nf(variety, &t1, &t2)?,
        (_, true) => bail!("--nf decides equations only"),
        ("<=", _) => decide_leq(variety, &t1, &t2)?,
        _ => decide_preceq(variety, &t1, &t2)?,
    };
    let mut text = format!("{} {relation} {}: {} in {variety}\n", t1, t2, if verdict.equal { "holds" } else { "fails" });
    if let Some(w) = &verdict.witness {
        text += &format!("witness in {}: {w}\n", w.model);
        text += &format!("values: {} vs {}\n", w.model.label(w.left), w.model.label(w.right));
    }
    let json = json!({
        "variety": variety,
        "relation": relation,
        "lhs": t1.to_string(),
        "rhs": t2.to_string(),
        "method": if nf { "normal-form" } else { "models" },
        "holds": verdict.equal,
        "witness": verdict.witness.as_ref().map(witness_json),
    });
    Ok(Report { text, json, holds: verdict.equal })
}

fn alphabet_for(spec: Option<&str>, terms: &[&Term]) -> Result<Alphabet> {
    match spec {
        Some(list) => Ok(Alphabet::new(list.split(',').map(str::trim))?),
        None => Ok(terms.iter().fold(Alphabet::default(), |a, t| a.union(&t.variables()))),
    }
}

fn normalize(variety: Variety, alphabet: Option<&str>, term: &str) -> Result<Report> {
    let t = parse_term(term)?;
    let free = FreeAlgebra::new(variety, alphabet_for(alphabet, &[&t])?)?;
    let e = free.eval(&t)?;
    Ok(Report::ok(format!("{}\n", e.render()), serde_json::to_value(e.to_json())?))
}

fn free_info(variety: Variety, n: u32) -> Result<Report> {
    if n > 63 {
        bail!("at most 63 generators are supported");
    }
    let sig = free_signature(variety, n);
    let (size, atoms, center) = (free_size(variety, n), atom_count(variety, n), free_center_size(variety, n));
    let text = format!(
        "variety: {variety}\ngenerators: {n}\nsize: {size}\natoms: {atoms}\nsignature: {sig}\ncenter: {center}\n"
    );
    let json = json!({
        "variety": variety,
        "generators": n,
        "size": size.to_string(),
        "atoms": atoms.to_string(),
        "signature": sig.to_string(),
        "center": center.to_string(),
    });
    Ok(Report::ok(text, json))
}

fn rank_report(sig: &AlgebraSignature) -> Result<Report> {
    let r = rank(sig);
    let mut text = format!("rank: {}\nvariety: {}\nfree cover: {}\n", r.rank, r.variety, r.free_cover);
    match &r.binding {
        Some(Binding::MinVariables { required }) => {
            text += &format!("{} generators fail: a class needs {required}\n", r.rank - 1)
        }
        Some(Binding::Gamma { k, gamma, required }) => {
            let n = r.rank - 1;
            text += &format!("{n} generators fail at k = {k}: Γ_{k}^{n} = {gamma} < {required}\n")
        }
        None => {}
    }
    Ok(Report::ok(text, serde_json::to_value(&r)?))
}

fn ranktable(shape: PrimitiveShape, max: u64) -> Result<Report> {
    let table = rank_table(shape, max);
    let mut text = format!("rank  powers of {shape}\n");
    for r in &table {
        let range = if r.from == r.to { r.from.to_string() } else { format!("{}..{}", r.from, r.to) };
        text += &format!("{:<4}  {range}\n", r.rank);
    }
    Ok(Report::ok(text, serde_json::to_value(&table)?))
}

fn mingen(sig: &AlgebraSignature) -> Result<Report> {
    let gens = min_generators(sig)?;
    let shown: Vec<String> = gens.iter().map(|g| sig.format_element(g)).collect();
    let text = shown.iter().map(|g| format!("{g}\n")).collect();
    Ok(Report::ok(text, json!(shown)))
}

fn free_pair(variety: Variety, x: &str, y: &str) -> Result<(FreeElement, FreeElement)> {
    let (t1, t2) = (parse_term(x)?, parse_term(y)?);
    let free = FreeAlgebra::new(variety, alphabet_for(None, &[&t1, &t2])?)?;
    Ok((free.eval(&t1)?, free.eval(&t2)?))
}

fn intersect(ambient: Ambient, x: &str, y: &str) -> Result<Report> {
    match (ambient.sig, ambient.variety) {
        (Some(sig), _) => {
            let (a, b) = (sig.parse_element(x)?, sig.parse_element(y)?);
            let shown = sig.format_element(&sig.intersection(&a, &b)?);
            Ok(Report::ok(format!("{shown}\n"), json!(shown)))
        }
        (None, Some(v)) => {
            let (a, b) = free_pair(v, x, y)?;
            let e = a.intersection(&b)?;
            Ok(Report::ok(format!("{}\n", e.render()), serde_json::to_value(e.to_json())?))
        }
        (None, None) => unreachable!("clap requires one of --sig and --variety"),
    }
}

fn center(ambient: Ambient, n: Option<u32>) -> Result<Report> {
    match (ambient.sig, ambient.variety) {
        (Some(sig), _) => {
            let elements: Vec<String> = sig.center()?.iter().map(|x| sig.format_element(x)).collect();
            let mut text = format!("size: {}\n", elements.len());
            for x in &elements {
                text += &format!("{x}\n");
            }
            Ok(Report::ok(text, json!({ "size": elements.len(), "elements": elements })))
        }
        (None, Some(v)) => {
            let n = n.ok_or_else(|| anyhow!("-n is required with --variety"))?;
            let size = free_center_size(v, n);
            let json = json!({ "variety": v, "generators": n, "size": size.to_string() });
            Ok(Report::ok(format!("size: {size}\n"), json))
        }
        (None, None) => unreachable!("clap requires one of --sig and --variety"),
    }
}

fn sx_verify(n: u32) -> Result<Report> {
    let space = SxSpace::new(n)?;
    let report = sx_verify_free(&space)?;
    let closure = if n <= 3 { Some(sx_closure_size(&space)?) } else { None };
    let mut text = format!(
        "atoms: {}\ndistinct nonempty values: {}\nfree: {}\n",
        report.atoms,
        report.distinct_nonempty,
        if report.is_free() { "yes" } else { "no" }
    );
    if let Some(c) = closure {
        text += &format!("generated subalgebra: {c}\n");
    }
    let json = json!({
        "n": n,
        "atoms": report.atoms,
        "distinct_nonempty": report.distinct_nonempty,
        "free": report.is_free(),
        "closure_size": closure,
    });
    Ok(Report { text, json, holds: report.is_free() })
}

#[derive(Serialize)]
struct Generator {
    tuple: String,
    map: String,
}

fn pfun_demo(n: u32, m: u32) -> Result<Report> {
    if n == 0 || m == 0 {
        bail!("domain and codomain must be nonempty");
    }
    let sig = pfun_signature(n, m);
    let describe = |gens: &[skewbool::FiniteElement]| -> Result<Vec<Generator>> {
        gens.iter()
            .map(|g| Ok(Generator { tuple: sig.format_element(g), map: finite_to_pfun(n, m, g)?.to_string() }))
            .collect()
    };
    let computed = describe(&min_generators(&sig)?)?;
    let mut text = format!("partial maps {{1..{n}}} ⇀ {{1..{m}}} form {}\n", sig);
    let mut json = json!({ "signature": sig.to_string(), "generators": computed });
    text += "generators:\n";
    for g in &computed {
        text += &format!("  {}  {}\n", g.tuple, g.map);
    }
    if (n, m) == (4, 2) {
        let triple: Vec<_> =
            ["(1, 1, 0, 1)", "(2, 0, 1, 2)", "(0, 2, 2, 2)"].iter().map(|t| sig.parse_element(t)).collect::<Result<_, _>>()?;
        let closure = sig.closure_size(&triple)?;
        text += "published triple:\n";
        for g in describe(&triple)? {
            text += &format!("  {}  {}\n", g.tuple, g.map);
        }
        text += &format!("closure of the published triple: {closure}\n");
        json["published"] = json!({ "generators": describe(&triple)?, "closure_size": closure });
    }
    Ok(Report::ok(text, json))
}

fn identities() -> Result<Report> {
    let rows = identity_suite()?;
    let width = rows.iter().map(|r| r.law.chars().count()).max().unwrap_or(0);
    let mut text = format!("{:width$}  {}\n", "law", Variety::ALL.map(|v| format!("{:<5}", v.name())).join(" ").trim_end());
    let mut json_rows = Vec::new();
    for chunk in rows.chunk_by(|a, b| a.law == b.law) {
        let cells: Vec<String> = chunk
            .iter()
            .map(|r| {
                let mark = if r.verdict.equal { "holds" } else { "fails" };
                if r.passed() { mark.to_string() } else { format!("{mark}!") }
            })
            .collect();
        text += &format!("{:width$}  {}\n", chunk[0].law, cells.join(" "));
        for r in chunk {
            json_rows.push(json!({
                "law": r.law,
                "variety": r.variety,
                "expected": r.expected,
                "holds": r.verdict.equal,
                "passed": r.passed(),
            }));
        }
    }
    let failed = rows.iter().filter(|r| !r.passed()).count();
    text += &format!("{} of {} checks as expected\n", rows.len() - failed, rows.len());
    Ok(Report { text, json: json!(json_rows), holds: failed == 0 })
}
