use std::io::Read;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand};
use legendrian::algebra::{Field, FqMatrix, SqrtQ};
use legendrian::dga::{build_dga, grading_census, verify_dga, Cedga, Gen};
use legendrian::diagram::{catalog, catalog_text, FrontDiagram, CATALOG};
use legendrian::repcat::{homotopy_cardinality, ruling_side, Cardinality};
use legendrian::reps::{enumerate_reps, equivalence_classes, Representation};
use legendrian::rulings::{enumerate_rulings, ruling_polynomial};
use legendrian::satellite::colored_ruling_polynomial;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "legendrian", version, about = "Exact invariants of Legendrian knots in plat front position")]
struct Cli {
    /// Emit a JSON report on stdout.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Thurston-Bennequin number, rotation number, writhe and crossing gradings.
    Invariants(Input),
    /// Generators, differential and a ∂² = 0 check.
    Dga(Input),
    /// Normal rulings and the ruling polynomial.
    Rulings {
        #[command(flatten)]
        input: Input,
        /// Graded modulo m (0 for graded rulings).
        #[arg(short = 'm', default_value_t = 0)]
        m: u32,
    },
    /// The n-colored ruling polynomial in s = q^{1/2}.
    ColoredRuling(Counting),
    /// Representations into Mat_n(F_q) and their equivalence classes.
    Reps(Counting),
    /// Homotopy cardinality of the representation category, class by class.
    Homcard(Counting),
    /// Check categorical, closed-form and ruling-side cardinalities agree.
    Verify(Counting),
    /// List built-in knots, or print one as a diagram file.
    Catalog { name: Option<String> },
}

#[derive(Args)]
struct Input {
    /// `catalog:NAME`, a diagram file, or `-` for stdin.
    input: String,
}

#[derive(Args)]
struct Counting {
    #[command(flatten)]
    input: Input,
    /// Matrix size.
    #[arg(short = 'n', default_value_t = 1)]
    n: usize,
    /// Field orders, comma separated.
    #[arg(short = 'q', value_delimiter = ',', default_value = "2")]
    q: Vec<u64>,
}

/// Failure of an identity rather than of the input.
#[derive(Debug)]
struct Mismatch(String);

impl std::fmt::Display for Mismatch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Mismatch {}

fn load(input: &str) -> anyhow::Result<FrontDiagram> {
    let text = if let Some(name) = input.strip_prefix("catalog:") {
        catalog_text(name)?.to_string()
    } else if input == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).context("reading stdin")?;
        s
    } else {
        std::fs::read_to_string(input).with_context(|| format!("reading {input}"))?
    };
    Ok(FrontDiagram::parse(&text)?)
}

fn fields(qs: &[u64]) -> anyhow::Result<Vec<Field>> {
    if qs.is_empty() {
        return Err(anyhow!("no field orders given"));
    }
    qs.iter().map(|&q| Ok(Field::new(q)?)).collect()
}

fn check_n(n: usize) -> anyhow::Result<()> {
    if n == 0 {
        return Err(anyhow!("n must be at least 1"));
    }
    Ok(())
}

fn superscript(m: u32) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    m.to_string().chars().map(|c| DIGITS[c.to_digit(10).unwrap() as usize]).collect()
}

fn letter(g: &Cedga, l: &Gen) -> String {
    match l {
        Gen::Chord { id, .. } => g.generators[*id].name.clone(),
        Gen::T(e) => format!("t^{e}"),
    }
}

fn matrix(m: &FqMatrix) -> Value {
    json!(m.to_rows())
}

fn rep_json(g: &Cedga, r: &Representation) -> Value {
    let chords: serde_json::Map<String, Value> = g
        .chords_of_grading(0)
        .into_iter()
        .map(|a| (g.generators[a].name.clone(), matrix(&r.chords[a])))
        .collect();
    json!({ "t": matrix(&r.t), "chords": chords })
}

fn rep_line(g: &Cedga, r: &Representation) -> String {
    let mut parts = vec![format!("t={:?}", r.t)];
    for a in g.chords_of_grading(0) {
        parts.push(format!("{}={:?}", g.generators[a].name, r.chords[a]));
    }
    parts.join(" ")
}

fn invariants(d: &FrontDiagram, json_out: bool) -> anyhow::Result<()> {
    let ci = d.classical_invariants();
    let chi = if ci.rotation == 0 {
        build_dga(d).ok().map(|g| grading_census(&g).chi_star)
    } else {
        None
    };
    if json_out {
        emit(json!({
            "command": "invariants",
            "components": d.components(),
            "tb": ci.tb,
            "rotation": ci.rotation,
            "writhe": ci.writhe,
            "right_cusps": ci.right_cusps,
            "crossing_gradings": ci.crossing_gradings,
            "chi_star": chi,
        }));
    } else {
        println!("tb = {}", ci.tb);
        println!("r = {}", ci.rotation);
        println!("writhe = {}", ci.writhe);
        println!("right cusps = {}", ci.right_cusps);
        if let Some(gr) = &ci.crossing_gradings {
            let s: Vec<String> = gr.iter().map(|(e, g)| format!("{}:{g}", e + 1)).collect();
            println!("crossing gradings (line:grading) = {}", s.join(" "));
        }
        if let Some(c) = chi {
            println!("χ* = {c}");
        }
    }
    Ok(())
}

fn dga(d: &FrontDiagram, json_out: bool) -> anyhow::Result<()> {
    let g = build_dga(d)?;
    let report = verify_dga(&g);
    let census = grading_census(&g);
    if json_out {
        let gens: Vec<Value> = g
            .generators
            .iter()
            .map(|c| json!({ "name": c.name, "grading": c.grading, "provenance": c.provenance }))
            .collect();
        let diff: Vec<Value> = g
            .generators
            .iter()
            .map(|c| {
                let terms: Vec<Value> = g.differential[c.id]
                    .terms()
                    .map(|(w, k)| json!([k, w.iter().map(|l| letter(&g, l)).collect::<Vec<_>>()]))
                    .collect();
                json!({ "generator": c.name, "terms": terms })
            })
            .collect();
        emit(json!({
            "command": "dga",
            "generators": gens,
            "differential": diff,
            "verify": report,
            "census": census,
        }));
    } else {
        for c in &g.generators {
            println!("|{}| = {}", c.name, c.grading);
        }
        for c in &g.generators {
            println!("∂{} = {}", c.name, g.format_poly(&g.differential[c.id]));
        }
        println!("χ* = {}", census.chi_star);
        match &report.witness {
            None => println!("∂² = 0 and deg ∂ = -1: ok"),
            Some(w) => println!("FAILED: {w}"),
        }
    }
    if !report.passed() {
        return Err(Mismatch(format!("DGA check failed: {}", report.witness.unwrap_or_default())).into());
    }
    Ok(())
}

fn rulings(d: &FrontDiagram, m: u32, json_out: bool) -> anyhow::Result<()> {
    let rs = enumerate_rulings(d, m)?;
    let p = ruling_polynomial(d, m)?;
    let name = format!("R{}(z)", superscript(m));
    if json_out {
        let list: Vec<Value> = rs.iter().map(|r| json!({ "switches": r.switches, "exponent": r.exponent(d) })).collect();
        emit(json!({ "command": "rulings", "m": m, "rulings": list, "polynomial": p, "display": p.to_string() }));
    } else {
        for r in &rs {
            let s: Vec<String> = r.switches.iter().map(|e| (e + 1).to_string()).collect();
            println!("switches at lines [{}]", s.join(", "));
        }
        println!("{name} = {p}");
    }
    Ok(())
}

fn colored(d: &FrontDiagram, c: &Counting, json_out: bool) -> anyhow::Result<()> {
    check_n(c.n)?;
    fields(&c.q)?;
    let tb = d.classical_invariants().tb;
    let r = colored_ruling_polynomial(d, c.n)?;
    let values: Vec<(u64, SqrtQ, SqrtQ)> = c.q.iter().map(|&q| (q, r.eval_sqrt(q), ruling_side(&r, tb, c.n, q))).collect();
    if json_out {
        let vals: Vec<Value> = values.iter().map(|(q, v, s)| json!({ "q": q, "value": v, "ruling_side": s })).collect();
        emit(json!({ "command": "colored-ruling", "n": c.n, "polynomial": r, "values": vals }));
    } else {
        println!("R_{}(s) = {r}   [s^2 = q]", c.n);
        for (q, v, s) in &values {
            println!("q={q}: R = {v}   q^(n²tb/2)·R = {s}");
        }
    }
    Ok(())
}

fn reps(d: &FrontDiagram, c: &Counting, json_out: bool) -> anyhow::Result<()> {
    check_n(c.n)?;
    let g = build_dga(d)?;
    let mut results = Vec::new();
    for f in fields(&c.q)? {
        let q = f.order();
        let reps = enumerate_reps(&f, &g, c.n);
        let classes = equivalence_classes(&f, &g, &reps)?;
        if json_out {
            results.push(json!({
                "q": q,
                "count": reps.len(),
                "representations": reps.iter().map(|r| rep_json(&g, r)).collect::<Vec<_>>(),
                "classes": classes,
            }));
        } else {
            println!("q={q}: {} representations in {} classes", reps.len(), classes.len());
            for (k, cl) in classes.iter().enumerate() {
                println!("  class {k} ({} members): {}", cl.members.len(), rep_line(&g, &reps[cl.representative]));
            }
        }
    }
    if json_out {
        emit(json!({ "command": "reps", "n": c.n, "results": results }));
    }
    Ok(())
}

struct Row {
    q: u64,
    card: Cardinality,
    ruling: SqrtQ,
    seconds: f64,
}

impl Row {
    fn agree(&self) -> (bool, bool) {
        (self.card.categorical == self.card.closed_form, self.card.closed_form == self.ruling)
    }

    fn summary(&self) -> Value {
        let (a, b) = self.agree();
        json!({
            "q": self.q,
            "rep_count": self.card.rep_count,
            "class_count": self.card.classes.len(),
            "categorical": self.card.categorical,
            "closed_form": self.card.closed_form,
            "ruling_side": self.ruling,
            "categorical_eq_closed_form": a,
            "closed_form_eq_ruling_side": b,
        })
    }
}

fn cardinalities(d: &FrontDiagram, c: &Counting) -> anyhow::Result<Vec<Row>> {
    check_n(c.n)?;
    let fs = fields(&c.q)?;
    let ci = d.classical_invariants();
    let g = build_dga(d)?;
    let colored = colored_ruling_polynomial(d, c.n)?;
    let mut rows = Vec::new();
    for f in fs {
        let start = Instant::now();
        let q = f.order() as u64;
        let card = homotopy_cardinality(&f, &g, ci.tb, c.n)?;
        let ruling = ruling_side(&colored, ci.tb, c.n, q);
        rows.push(Row {
            q,
            card,
            ruling,
            seconds: start.elapsed().as_secs_f64(),
        });
    }
    Ok(rows)
}

fn mismatches(rows: &[Row]) -> Vec<u64> {
    rows.iter().filter(|r| r.agree() != (true, true)).map(|r| r.q).collect()
}

fn homcard(d: &FrontDiagram, c: &Counting, json_out: bool) -> anyhow::Result<()> {
    let rows = cardinalities(d, c)?;
    if json_out {
        let results: Vec<Value> = rows
            .iter()
            .map(|r| {
                let mut v = r.summary();
                v["classes"] = json!(r.card.classes);
                v
            })
            .collect();
        emit(json!({ "command": "homcard", "n": c.n, "results": results }));
    } else {
        for r in &rows {
            println!("q={}: {} representations, {} classes", r.q, r.card.rep_count, r.card.classes.len());
            for (k, cl) in r.card.classes.iter().enumerate() {
                let h: Vec<String> = cl.cohomology.iter().map(|(d, n)| format!("H^{d}={n}")).collect();
                println!("  class {k}: size {} |Aut| = {} {}", cl.size, cl.aut, h.join(" "));
            }
            println!("  categorical = {}", r.card.categorical);
            println!("  closed form = {}", r.card.closed_form);
            println!("  ruling side = {}", r.ruling);
        }
    }
    let bad = mismatches(&rows);
    if !bad.is_empty() {
        return Err(Mismatch(format!("cardinalities disagree for q in {bad:?}")).into());
    }
    Ok(())
}

fn verify(d: &FrontDiagram, c: &Counting, input: &str, json_out: bool) -> anyhow::Result<()> {
    let rows = cardinalities(d, c)?;
    let bad = mismatches(&rows);
    if json_out {
        emit(json!({
            "command": "verify",
            "input": input,
            "n": c.n,
            "q": c.q,
            "results": rows.iter().map(Row::summary).collect::<Vec<_>>(),
            "all_agree": bad.is_empty(),
        }));
    } else {
        for r in &rows {
            let (a, b) = r.agree();
            let mark = if a && b { "ok" } else { "MISMATCH" };
            println!(
                "n={} q={}: reps={} categorical={} closed={} ruling={} {mark} ({:.2}s)",
                c.n, r.q, r.card.rep_count, r.card.categorical, r.card.closed_form, r.ruling, r.seconds
            );
        }
    }
    if !bad.is_empty() {
        return Err(Mismatch(format!("cardinalities disagree for q in {bad:?}")).into());
    }
    Ok(())
}

fn list_catalog(name: Option<&str>, json_out: bool) -> anyhow::Result<()> {
    match name {
        Some(n) => {
            let text = catalog_text(n)?;
            if json_out {
                emit(json!({ "command": "catalog", "name": n, "text": text }));
            } else {
                print!("{text}");
            }
        }
        None => {
            let mut rows = Vec::new();
            for n in CATALOG {
                let ci = catalog(n)?.classical_invariants();
                rows.push((n, ci.tb, ci.rotation));
            }
            if json_out {
                let knots: Vec<Value> = rows.iter().map(|(n, tb, r)| json!({ "name": n, "tb": tb, "rotation": r })).collect();
                emit(json!({ "command": "catalog", "knots": knots }));
            } else {
                for (n, tb, r) in rows {
                    println!("{n:<10} tb={tb:<3} r={r}");
                }
            }
        }
    }
    Ok(())
}

fn emit(mut v: Value) {
    v["schema"] = json!(1);
    println!("{}", serde_json::to_string_pretty(&v).expect("serializable report"));
}

fn run(cli: &Cli) -> anyhow::Result<()> {
    let j = cli.json;
    match &cli.command {
        Command::Catalog { name } => list_catalog(name.as_deref(), j),
        Command::Invariants(i) => invariants(&load(&i.input)?, j),
        Command::Dga(i) => dga(&load(&i.input)?, j),
        Command::Rulings { input, m } => rulings(&load(&input.input)?, *m, j),
        Command::ColoredRuling(c) => colored(&load(&c.input.input)?, c, j),
        Command::Reps(c) => reps(&load(&c.input.input)?, c, j),
        Command::Homcard(c) => homcard(&load(&c.input.input)?, c, j),
        Command::Verify(c) => verify(&load(&c.input.input)?, c, &c.input.input, j),
    }
}

fn exit_code(e: &anyhow::Error) -> u8 {
    if e.downcast_ref::<Mismatch>().is_some() {
        return 1;
    }
    match e.downcast_ref::<legendrian::Error>() {
        Some(legendrian::Error::Internal(_)) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(j) = cli.jobs {
        pool = pool.num_threads(j.max(1));
    }
    let result = match pool.build() {
        Ok(p) => p.install(|| run(&cli)),
        Err(e) => Err(anyhow!("thread pool: {e}")),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
