//! `residue`: evaluate Hilbert symbols and their residues at places of
//! `F_q(t)`, verify the residue identity on degenerating conic bundles over
//! the line, and run the seeded self-test suites.
//!
//! Exit codes: 0 success, 1 input error, 2 internal disagreement or suite
//! failure (a bug signal, not a domain outcome).

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use residue_core::suites::{run_suite, SuiteConfig, SuiteKind, SuiteReport};
use residue_core::{
    hilbert_symbol_tame, main_lemma_check, symbol::hilbert_symbol_conic_with_precision,
    verify_theorem, ConicBundle, Error, FqField, LocalElem, Place, Poly, ResidueReport,
};

#[derive(Parser)]
#[command(
    name = "residue",
    version,
    about = "Hilbert symbols, tame residues, and conic bundles over F_q(t), odd characteristic"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate the symbol (a, b) at a place, three ways, with its residue
    Symbol(SymbolArgs),
    /// Factor the discriminant data of x^2 - a y^2 - b z^2 and verify the
    /// residue identity on every component
    Bundle(BundleArgs),
    /// Run the seeded property suites
    Selftest(SelftestArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct Common {
    /// Odd prime characteristic of the base field
    #[arg(long)]
    p: u64,
    /// Extension degree of the base field over its prime field
    #[arg(long, default_value_t = 1)]
    d: usize,
    /// Master seed; falls back to the RESIDUE_SEED environment variable
    #[arg(long)]
    seed: Option<u64>,
    /// Number of unit coefficients carried by series witnesses
    #[arg(long, default_value_t = 24)]
    precision: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct SymbolArgs {
    #[command(flatten)]
    common: Common,
    /// The place: a monic irreducible polynomial in t, or `inf`
    #[arg(long)]
    place: String,
    #[arg(long)]
    a: String,
    #[arg(long)]
    b: String,
    /// Skip the conic-search oracle (required beyond the enumeration bound)
    #[arg(long)]
    no_conic: bool,
}

#[derive(Args)]
struct BundleArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long)]
    a: String,
    #[arg(long)]
    b: String,
}

#[derive(Args)]
struct SelftestArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long, default_value_t = 1000)]
    trials: u64,
}

fn main() {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e);
            1
        }
    };
    std::process::exit(code);
}

fn run(cli: Cli) -> Result<i32, Error> {
    match cli.cmd {
        Cmd::Symbol(args) => cmd_symbol(args),
        Cmd::Bundle(args) => cmd_bundle(args),
        Cmd::Selftest(args) => cmd_selftest(args),
    }
}

fn resolve_seed(flag: Option<u64>) -> Result<u64, Error> {
    if let Some(s) = flag {
        return Ok(s);
    }
    match std::env::var("RESIDUE_SEED") {
        Ok(v) => v
            .parse::<u64>()
            .map_err(|_| Error::InvalidInput(format!("RESIDUE_SEED is not a valid seed: {}", v))),
        Err(_) => Ok(0),
    }
}

fn base_field(common: &Common) -> Result<FqField, Error> {
    if common.precision == 0 {
        return Err(Error::InvalidInput("precision must be positive".into()));
    }
    FqField::new(common.p, common.d)
}

// ---- symbol ----

#[derive(Serialize)]
struct SymbolJson {
    p: u64,
    d: usize,
    place: String,
    a: String,
    b: String,
    tame: i8,
    conic: Option<i8>,
    agree: Option<bool>,
    residue_trivial: bool,
    residue_rep: String,
    main_lemma: Option<MainLemmaJson>,
    witness: Option<[String; 3]>,
    seed: u64,
}

#[derive(Serialize)]
struct MainLemmaJson {
    lhs_trivial: bool,
    rhs_trivial: bool,
    equal: bool,
}

fn cmd_symbol(args: SymbolArgs) -> Result<i32, Error> {
    let field = base_field(&args.common)?;
    let seed = resolve_seed(args.common.seed)?;
    let place = parse_place(&args.place, &field)?;
    let a = parse_elem(&args.a, &place)?;
    let b = parse_elem(&args.b, &place)?;
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroElement);
    }

    let tame = hilbert_symbol_tame(&a, &b)?;
    let conic = if args.no_conic {
        None
    } else {
        Some(hilbert_symbol_conic_with_precision(&a, &b, args.common.precision)?)
    };
    let residue = residue_core::gysin_residue(&a, &b)?;
    let lemma = if a.nu()? == 0 {
        Some(main_lemma_check(&a, &b)?)
    } else {
        None
    };
    let agree = conic.as_ref().map(|c| c.value == tame);

    let witness = conic.as_ref().and_then(|c| {
        c.witness.as_ref().map(|w| {
            [
                w.coords[0].to_string(),
                w.coords[1].to_string(),
                w.coords[2].to_string(),
            ]
        })
    });

    match args.common.format {
        Format::Json => {
            let json = SymbolJson {
                p: args.common.p,
                d: args.common.d,
                place: place.to_string(),
                a: args.a.clone(),
                b: args.b.clone(),
                tame: tame.to_i8(),
                conic: conic.as_ref().map(|c| c.value.to_i8()),
                agree,
                residue_trivial: residue.class.is_trivial(),
                residue_rep: residue
                    .class
                    .representative_residue()
                    .expect("residue-field class")
                    .to_string(),
                main_lemma: lemma.as_ref().map(|l| MainLemmaJson {
                    lhs_trivial: l.lhs.class.is_trivial(),
                    rhs_trivial: l.rhs.class.is_trivial(),
                    equal: l.equal,
                }),
                witness,
                seed,
            };
            println!("{}", serde_json::to_string_pretty(&json).expect("serializable"));
        }
        Format::Text => {
            println!("place: {} (residue field {})", place, place.residue_field());
            println!("a = {}", args.a);
            println!("b = {}", args.b);
            println!("tame symbol:  {}", tame);
            match &conic {
                None => println!("conic symbol: skipped"),
                Some(c) => match &c.witness {
                    Some(w) => println!("conic symbol: {} with witness {}", c.value, w),
                    None => println!("conic symbol: {} (no point)", c.value),
                },
            }
            match agree {
                Some(true) => println!("agreement:    yes"),
                Some(false) => println!("agreement:    NO (bug signal)"),
                None => println!("agreement:    not checked"),
            }
            println!("residue at {}: {}", place, residue.class);
            if let Some(l) = &lemma {
                println!(
                    "residue identity: lhs {}, rhs {}, equal: {}",
                    l.lhs.class,
                    l.rhs.class,
                    if l.equal { "yes" } else { "NO (bug signal)" }
                );
            }
        }
    }

    let disagreement =
        agree == Some(false) || lemma.as_ref().map(|l| !l.equal).unwrap_or(false);
    Ok(if disagreement { 2 } else { 0 })
}

fn parse_place(spec: &str, field: &FqField) -> Result<Place, Error> {
    if spec == "inf" {
        return Ok(Place::infinity(field));
    }
    Place::finite(Poly::parse(spec, field)?)
}

fn parse_elem(expr: &str, place: &Place) -> Result<LocalElem, Error> {
    let poly = Poly::parse(expr, place.base_field())?;
    Ok(LocalElem::from_poly(place, &poly))
}

// ---- bundle ----

#[derive(Serialize)]
struct BundleJson {
    p: u64,
    d: usize,
    a: String,
    b: String,
    components: Vec<ComponentJson>,
    reciprocity_ok: bool,
    remark13_ok: bool,
    seed: u64,
}

#[derive(Serialize)]
struct ComponentJson {
    place: String,
    tau: u32,
    role: String,
    alpha_trivial: bool,
    cover: String,
    residue_trivial: bool,
    residue_rep: String,
    #[serde(rename = "match")]
    matches: bool,
}

fn bundle_json(report: &ResidueReport, p: u64, d: usize, seed: u64) -> BundleJson {
    BundleJson {
        p,
        d,
        a: report.bundle.a().format_var('t'),
        b: report.bundle.b().format_var('t'),
        components: report
            .components
            .iter()
            .map(|c| ComponentJson {
                place: c.place.to_string(),
                tau: c.tau,
                role: c.role.to_string(),
                alpha_trivial: c.alpha.is_trivial(),
                cover: c.line_pair.cover_description(),
                residue_trivial: c.beta_residue.class.is_trivial(),
                residue_rep: c
                    .beta_residue
                    .class
                    .representative_residue()
                    .expect("residue-field class")
                    .to_string(),
                matches: c.matches,
            })
            .collect(),
        reciprocity_ok: report.reciprocity_ok,
        remark13_ok: report.remark13_ok,
        seed,
    }
}

fn cmd_bundle(args: BundleArgs) -> Result<i32, Error> {
    let field = base_field(&args.common)?;
    let seed = resolve_seed(args.common.seed)?;
    let a = Poly::parse(&args.a, &field)?;
    let b = Poly::parse(&args.b, &field)?;
    let bundle = ConicBundle::from_pair(a, b)?;
    let mut rng = residue_core::suites::derive_rng(seed, "bundle");
    let report = verify_theorem(&bundle, &mut rng)?;

    match args.common.format {
        Format::Json => {
            let json = bundle_json(&report, args.common.p, args.common.d, seed);
            println!("{}", serde_json::to_string_pretty(&json).expect("serializable"));
        }
        Format::Text => {
            println!(
                "bundle over {}: a = {}, b = {}",
                field,
                report.bundle.a(),
                report.bundle.b()
            );
            println!(
                "{:<16} {:<12} {:>3}  {:<22} {:<22} {}",
                "component", "role", "tau", "alpha (cover)", "residue", "match"
            );
            for c in &report.components {
                println!(
                    "{:<16} {:<12} {:>3}  {:<22} {:<22} {}",
                    c.place.to_string(),
                    c.role.to_string(),
                    c.tau,
                    format!(
                        "{} ({})",
                        if c.alpha.is_trivial() { "trivial" } else { "nontrivial" },
                        c.line_pair.cover_description()
                    ),
                    c.beta_residue.class.to_string(),
                    if c.matches { "yes" } else { "NO" }
                );
            }
            for note in &report.hypothesis_notes {
                println!("note: {}", note);
            }
            println!(
                "reciprocity product over all places: {} [global cross-check]",
                if report.reciprocity_ok { "+1" } else { "VIOLATED" }
            );
            println!(
                "vanishing consistency at tau = 1: {}",
                if report.remark13_ok { "ok" } else { "VIOLATED" }
            );
            println!(
                "result: {}",
                if report.all_match() && report.reciprocity_ok { "PASS" } else { "FAIL" }
            );
        }
    }

    Ok(if report.all_match() && report.reciprocity_ok && report.remark13_ok {
        0
    } else {
        2
    })
}

// ---- selftest ----

fn cmd_selftest(args: SelftestArgs) -> Result<i32, Error> {
    if args.trials == 0 {
        return Err(Error::InvalidInput("trials must be positive".into()));
    }
    let _ = base_field(&args.common)?; // validates p, d, precision
    let seed = resolve_seed(args.common.seed)?;
    let kind: SuiteKind = args.suite.parse()?;
    let cfg = SuiteConfig {
        p: args.common.p,
        d: args.common.d,
        seed,
        trials: args.trials,
        precision: args.common.precision,
    };
    let report = run_suite(kind, &cfg)?;

    match args.common.format {
        Format::Json => {
            println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
        }
        Format::Text => print_suite_text(&report),
    }
    Ok(if report.all_pass { 0 } else { 2 })
}

fn print_suite_text(report: &SuiteReport) {
    println!(
        "suite {} (p={}, d={}, seed={}, trials={})",
        report.suite, report.p, report.d, report.seed, report.trials
    );
    for c in &report.checks {
        println!("  {:<28} {:>8}/{:<8}", c.name, c.passes, c.trials);
        if let Some(ce) = &c.counterexample {
            println!("    counterexample: {}", ce);
        }
    }
    if report.all_pass {
        println!("all checks passed");
    } else {
        println!("FAILURES detected");
    }
}
