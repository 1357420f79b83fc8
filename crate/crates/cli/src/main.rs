use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand, ValueEnum};

use qsmash_core::actions::{check_module_algebra, derive_inverse_action, ActionTable};
use qsmash_core::decouple::centralizer_basis;
use qsmash_core::error::Error;
use qsmash_core::format::{parse_document, parse_expr, write_presentation, Document};
use qsmash_core::hopf::{check_hopf_axioms, HopfData};
use qsmash_core::ncpoly::{Alphabet, Letter};
use qsmash_core::presets::{load_preset, read_source, PresetBundle, Role, PRESETS};
use qsmash_core::products::{build_braided, build_cross, build_mixed, MixedKind};
use qsmash_core::report::Report;
use qsmash_core::rewrite::{check_admissible, critical_pairs, strategy, strategy_names, Presentation};
use qsmash_core::suites::{decompose, realize, run_suite, suite_names, SuiteOptions};

#[derive(Parser)]
#[command(name = "qsmash", version, about = "Exact rewriting for cross and braided products over Q(q, eta)")]
struct Cli {
    /// Output format for results and reports.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Copy, Clone, ValueEnum)]
enum Mixed {
    CrossThenBraided,
    BraidedThenCross,
    CrossOfBraided,
}

#[derive(Subcommand)]
enum Command {
    /// Parse files and report what they declare.
    ParseCheck { files: Vec<PathBuf> },
    /// Normal form of an expression.
    Normalize {
        file: PathBuf,
        expr: String,
        #[arg(long)]
        strategy: Option<String>,
    },
    /// Normal form of `a b - b a`.
    Commutator { file: PathBuf, a: String, b: String },
    /// Resolve all critical pairs up to the overlap bound.
    Confluence {
        file: PathBuf,
        #[arg(long, default_value_t = 3)]
        overlap: usize,
    },
    /// Coassociativity, counit and antipode laws, and compatibility with the rules.
    CheckHopf { file: PathBuf },
    /// Module-algebra axioms for an action table.
    CheckAction {
        algebra: PathBuf,
        hopf: PathBuf,
        table: PathBuf,
        /// Derive the action on the inverse of this letter.
        #[arg(long = "derive-inverse")]
        derive_inverse: Vec<String>,
    },
    /// Print the cross product presentation.
    BuildCross {
        algebra: PathBuf,
        hopf: PathBuf,
        table: Option<PathBuf>,
        /// The action table, as an alternative to the third positional argument.
        #[arg(long, conflicts_with = "table")]
        action: Option<PathBuf>,
        #[arg(long = "derive-inverse")]
        derive_inverse: Vec<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Print the braided tensor product presentation.
    BuildBraided {
        a1: PathBuf,
        a2: PathBuf,
        #[arg(value_name = "EXCHANGE")]
        table: Option<PathBuf>,
        /// The exchange rules, as an alternative to the third positional argument.
        #[arg(long, conflicts_with = "table")]
        exchange: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Compose a cross product with a braided product.
    ///
    /// cross-then-braided: BUNDLE A2 EXCHANGE; braided-then-cross: A1 BUNDLE EXCHANGE;
    /// cross-of-braided: BRAIDED-BUNDLE HOPF ACTION1 ACTION2.
    BuildMixed {
        #[arg(value_enum)]
        kind: Mixed,
        files: Vec<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Decoupled image of a Hopf generator.
    Zeta {
        bundle: PathBuf,
        #[arg(long)]
        gen: String,
        /// Realization map file replacing the bundle's map for the role.
        #[arg(long)]
        phi: Option<PathBuf>,
        #[arg(long, value_enum)]
        role: Option<RoleArg>,
        #[arg(long)]
        variant: Option<String>,
    },
    /// Run a named verification suite.
    Verify {
        bundle: PathBuf,
        #[arg(long)]
        suite: String,
        #[arg(long)]
        variant: Option<String>,
        #[arg(long = "phi-plus")]
        phi_plus: Option<PathBuf>,
        #[arg(long = "phi-minus")]
        phi_minus: Option<PathBuf>,
        #[arg(long, default_value_t = 2)]
        degree: usize,
        #[arg(long)]
        window: Option<usize>,
        /// Also write the JSON report here.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Basis of the elements commuting with the given letters.
    Centralizer {
        file: PathBuf,
        /// Space-separated generator names; empty for no constraint.
        #[arg(long, default_value = "")]
        subset: String,
        #[arg(long, default_value_t = 2)]
        degree: usize,
    },
    /// Check the bounded-degree decomposition of the cross product.
    Decompose {
        bundle: PathBuf,
        #[arg(long)]
        variant: Option<String>,
        #[arg(long, default_value_t = 2)]
        degree: usize,
        #[arg(long)]
        window: Option<usize>,
    },
}

#[derive(Copy, Clone, ValueEnum)]
enum RoleArg {
    Full,
    Plus,
    Minus,
}

impl From<RoleArg> for Role {
    fn from(r: RoleArg) -> Role {
        match r {
            RoleArg::Full => Role::Full,
            RoleArg::Plus => Role::Plus,
            RoleArg::Minus => Role::Minus,
        }
    }
}

/// Usage and input problems exit with 2, failed checks with 1.
struct Failure {
    code: u8,
    err: anyhow::Error,
}

impl From<anyhow::Error> for Failure {
    fn from(err: anyhow::Error) -> Self {
        let code = match err.downcast_ref::<Error>() {
            Some(
                Error::Syntax { .. }
                | Error::UnknownGenerator(_)
                | Error::UnknownPreset(_)
                | Error::Io(_)
                | Error::Invalid(_)
                | Error::MissingEntry(_),
            ) => 2,
            Some(_) => 1,
            // errors raised by the front end itself are about its arguments
            None => 2,
        };
        Failure { code, err }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        anyhow::Error::from(e).into()
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            eprintln!("error: {:#}", f.err);
            ExitCode::from(f.code)
        }
    }
}

fn is_bundle(path: &Path) -> bool {
    path.extension().is_some_and(|e| e == "bundle")
}

/// A bundle file, or a single `.alg` file wrapped as one.
fn load_bundle(path: &Path) -> anyhow::Result<PresetBundle> {
    if !path.exists() {
        if let Some(name) = path.to_str().filter(|n| PRESETS.iter().any(|(p, _)| p == n)) {
            return Ok(load_preset(name)?);
        }
    }
    if is_bundle(path) {
        return PresetBundle::load_file(path).with_context(|| format!("loading {}", path.display()));
    }
    let doc = load_doc(path, &Alphabet::default())?;
    let name = path.file_stem().and_then(|s| s.to_str()).unwrap_or("input");
    PresetBundle::from_document(name, &doc).with_context(|| format!("loading {}", path.display()))
}

fn load_doc(path: &Path, base: &Alphabet) -> anyhow::Result<Document> {
    let text = read_source(path)?;
    parse_document(&text, base).with_context(|| format!("parsing {}", path.display()))
}

/// The presentation a file declares; for bundles, the composite algebra.
fn load_presentation(path: &Path) -> anyhow::Result<Presentation> {
    if is_bundle(path) {
        let b = load_bundle(path)?;
        return b
            .main_presentation()
            .cloned()
            .ok_or_else(|| anyhow!("{} declares no algebra", path.display()));
    }
    Ok(load_doc(path, &Alphabet::default())?.presentation()?)
}

fn hopf_of(path: &Path) -> anyhow::Result<HopfData> {
    if is_bundle(path) {
        return load_bundle(path)?
            .hopf
            .ok_or_else(|| anyhow!("{} declares no Hopf algebra", path.display()));
    }
    Ok(load_doc(path, &Alphabet::default())?.hopf()?)
}

fn action_of(
    a: &Presentation,
    h: &HopfData,
    table: &Path,
    derive: &[String],
) -> anyhow::Result<ActionTable> {
    let alphabet = a.alphabet().merge(h.base().alphabet())?;
    let doc = load_doc(table, &alphabet)?;
    let mut t = ActionTable::new(doc.act.iter().map(|(x, g, e)| ((*x, *g), e.clone())));
    for name in derive {
        let l = a.letter(name)?;
        let inv = a
            .alphabet()
            .require(l)?
            .inverse_of
            .ok_or_else(|| anyhow!("`{name}` has no declared inverse"))?;
        for (g, e) in derive_inverse_action(&t, l, a, h)? {
            t.insert(inv, g, e);
        }
    }
    Ok(t)
}

fn emit(text: &str, output: Option<&Path>) -> anyhow::Result<()> {
    match output {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn print_value(format: Format, key: &str, value: &str) {
    match format {
        Format::Text => println!("{value}"),
        Format::Json => println!("{}", serde_json::json!({ key: value })),
    }
}

fn print_reports(format: Format, reports: &[Report]) -> bool {
    match format {
        Format::Text => {
            for r in reports {
                print!("{}", r.to_text());
            }
        }
        Format::Json => {
            println!("{}", serde_json::to_string_pretty(reports).expect("reports serialize"));
        }
    }
    reports.iter().all(Report::passed)
}

fn run(cli: &Cli) -> Result<bool, Failure> {
    let format = cli.format;
    match &cli.cmd {
        Command::ParseCheck { files } => {
            if files.is_empty() {
                return Err(anyhow!("no files given").into());
            }
            let mut reports = Vec::new();
            for f in files {
                let mut r = Report::new(format!("parse:{}", f.display()));
                if is_bundle(f) {
                    let b = load_bundle(f)?;
                    r.note(format!(
                        "bundle `{}`: {} expectations, variants [{}]",
                        b.name,
                        b.expects.len(),
                        b.variants().join(", ")
                    ));
                } else {
                    let doc = load_doc(f, &Alphabet::default())?;
                    r.note(format!(
                        "{} generators, {} rules, {} action entries, {} map entries",
                        doc.gens.len(),
                        doc.rules.len(),
                        doc.act.len(),
                        doc.map.len()
                    ));
                    if !doc.gens.is_empty() {
                        r.absorb(check_admissible(&doc.presentation()?));
                    }
                }
                reports.push(r);
            }
            Ok(print_reports(format, &reports))
        }
        Command::Normalize { file, expr, strategy: s } => {
            let p = load_presentation(file)?;
            let e = parse_expr(expr, p.alphabet())?;
            let nf = match s {
                Some(name) => {
                    let st = strategy(name).map_err(|_| {
                        anyhow!("unknown strategy `{name}` (known: {})", strategy_names().join(", "))
                    })?;
                    p.reducer_with(st).reduce(&e)?
                }
                None => p.normal_form(&e)?,
            };
            print_value(format, "normal_form", &p.format_poly(&nf));
            Ok(true)
        }
        Command::Commutator { file, a, b } => {
            let p = load_presentation(file)?;
            let x = parse_expr(a, p.alphabet())?;
            let y = parse_expr(b, p.alphabet())?;
            let c = p.reducer().commutator(&x, &y)?;
            print_value(format, "commutator", &p.format_poly(&c));
            Ok(true)
        }
        Command::Confluence { file, overlap } => {
            let p = load_presentation(file)?;
            let reports = [check_admissible(&p), critical_pairs(&p, (*overlap).max(p.max_lhs_len()))?];
            Ok(print_reports(format, &reports))
        }
        Command::CheckHopf { file } => {
            let h = hopf_of(file)?;
            Ok(print_reports(format, &[check_hopf_axioms(&h)]))
        }
        Command::CheckAction {
            algebra,
            hopf,
            table,
            derive_inverse,
        } => {
            let a = load_presentation(algebra)?;
            let h = hopf_of(hopf)?;
            let t = action_of(&a, &h, table, derive_inverse)?;
            Ok(print_reports(format, &[check_module_algebra(&a, &h, &t)]))
        }
        Command::BuildCross {
            algebra,
            hopf,
            table,
            action,
            derive_inverse,
            output,
        } => {
            let a = load_presentation(algebra)?;
            let h = hopf_of(hopf)?;
            let table = table.as_ref().or(action.as_ref()).ok_or_else(|| anyhow!("no action table given"))?;
            let t = action_of(&a, &h, table, derive_inverse)?;
            let c = build_cross(&a, &h, &t)?;
            let ok = c.reports.iter().all(Report::passed);
            for r in c.reports.iter().filter(|r| !r.passed()) {
                eprint!("{}", r.to_text());
            }
            emit(&write_presentation(&c.presentation, Some(&c.hopf)), output.as_deref())?;
            Ok(ok)
        }
        Command::BuildBraided {
            a1,
            a2,
            table,
            exchange,
            output,
        } => {
            let exchange = table.as_ref().or(exchange.as_ref()).ok_or_else(|| anyhow!("no exchange rules given"))?;
            let p1 = load_presentation(a1)?;
            let p2 = load_presentation(a2)?;
            let alphabet = p1.alphabet().merge(p2.alphabet())?;
            let ex = load_doc(exchange, &alphabet)?;
            let br = build_braided(&p1, &p2, &ex.rules)?;
            for r in br.reports.iter().filter(|r| !r.passed()) {
                eprint!("{}", r.to_text());
            }
            emit(&write_presentation(&br.presentation, None), output.as_deref())?;
            Ok(br.reports.iter().all(Report::passed))
        }
        Command::BuildMixed { kind, files, output } => {
            let (p, reports) = build_mixed(&mixed_kind(*kind, files)?)?;
            for r in reports.iter().filter(|r| !r.passed()) {
                eprint!("{}", r.to_text());
            }
            emit(&write_presentation(&p, None), output.as_deref())?;
            Ok(reports.iter().all(Report::passed))
        }
        Command::Zeta {
            bundle,
            gen,
            phi,
            role,
            variant,
        } => {
            let mut b = load_bundle(bundle)?;
            let cross = b
                .cross
                .as_ref()
                .ok_or_else(|| anyhow!("{} has no cross product", bundle.display()))?;
            let g = cross.presentation.letter(gen)?;
            let map = phi.as_ref().map(|path| load_doc(path, &b.alphabet)).transpose()?.map(|d| d.map);
            let role: Role = match role {
                Some(r) => (*r).into(),
                None if b.plus.contains(&g) && b.phis.iter().any(|p| p.role == Role::Plus) => Role::Plus,
                None if b.minus.contains(&g) && b.phis.iter().any(|p| p.role == Role::Minus) => Role::Minus,
                // a map defined on a proper Hopf subalgebra realizes a partial role
                None => match &map {
                    Some(images) if b.plus.is_empty() => {
                        let seeds: Vec<Letter> = images.iter().map(|(l, _)| *l).collect();
                        let closed = cross.hopf.closure(&seeds)?;
                        if closed.len() < cross.hopf.base().letters().len() {
                            Role::Plus
                        } else {
                            Role::Full
                        }
                    }
                    _ => Role::Full,
                },
            };
            let variant = match map {
                Some(images) => {
                    b.add_phi(role, "cli", images)?;
                    "cli".to_string()
                }
                None => variant
                    .clone()
                    .or_else(|| b.default_variant.clone())
                    .ok_or_else(|| anyhow!("no realization map: pass --phi"))?,
            };
            let r = realize(&b, role, &variant)?;
            let z = r
                .zetas
                .iter()
                .find(|z| z.source == g)
                .ok_or_else(|| anyhow!("`{gen}` is not acted on by the `{role}` map"))?;
            let cp = &b.cross.as_ref().expect("checked above").presentation;
            let mut com = qsmash_core::decouple::check_commutant(
                std::slice::from_ref(&z.image),
                &b.cross.as_ref().expect("checked above").algebra.letters(),
                cp,
            );
            com.note(format!("variant {variant}, role {role}"));
            match format {
                Format::Text => {
                    println!("{}", cp.format_poly(&z.image));
                    if !com.passed() {
                        eprint!("{}", com.to_text());
                    }
                }
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&serde_json::json!({
                        "generator": gen,
                        "variant": variant,
                        "role": role.to_string(),
                        "image": cp.format_poly(&z.image),
                        "commutant": com,
                    }))
                    .expect("json serializes")
                ),
            }
            Ok(com.passed())
        }
        Command::Verify {
            bundle,
            suite,
            variant,
            phi_plus,
            phi_minus,
            degree,
            window,
            report,
        } => {
            if !suite_names().contains(&suite.as_str()) {
                return Err(anyhow!("unknown suite `{suite}` (known: {})", suite_names().join(", ")).into());
            }
            let mut b = load_bundle(bundle)?;
            let mut variant = variant.clone();
            for (role, path) in [(Role::Plus, phi_plus), (Role::Minus, phi_minus)] {
                if let Some(path) = path {
                    let doc = load_doc(path, &b.alphabet)?;
                    b.add_phi(role, "cli", doc.map)?;
                    variant = Some("cli".into());
                }
            }
            if variant.as_deref() == Some("cli") && (phi_plus.is_none() || phi_minus.is_none()) {
                return Err(anyhow!("--phi-plus and --phi-minus must be given together").into());
            }
            let opts = SuiteOptions {
                variant,
                degree: *degree,
                window: *window,
                ..SuiteOptions::default()
            };
            let r = run_suite(suite, &b, &opts)?;
            if let Some(path) = report {
                std::fs::write(path, r.to_json() + "\n").with_context(|| format!("writing {}", path.display()))?;
            }
            match format {
                Format::Text => print!("{}", r.to_text()),
                Format::Json => println!("{}", r.to_json()),
            }
            Ok(r.passed())
        }
        Command::Centralizer { file, subset, degree } => {
            let p = load_presentation(file)?;
            let letters: Vec<Letter> = subset
                .split_whitespace()
                .map(|n| p.letter(n))
                .collect::<Result<_, _>>()?;
            let basis = centralizer_basis(&p, &letters, *degree)?;
            let printed: Vec<String> = basis.iter().map(|e| p.format_poly(e)).collect();
            match format {
                Format::Text => printed.iter().for_each(|s| println!("{s}")),
                Format::Json => println!("{}", serde_json::json!({ "basis": printed })),
            }
            Ok(true)
        }
        Command::Decompose {
            bundle,
            variant,
            degree,
            window,
        } => {
            let b = load_bundle(bundle)?;
            let opts = SuiteOptions {
                variant: variant.clone(),
                degree: *degree,
                window: *window,
                ..SuiteOptions::default()
            };
            let (v, mut r) = decompose(&b, &opts)?;
            if let Some(v) = v {
                r.note(format!("variant {v}"));
            }
            Ok(print_reports(format, &[r]))
        }
    }
}

fn mixed_kind(kind: Mixed, files: &[PathBuf]) -> anyhow::Result<MixedKind> {
    let want = if matches!(kind, Mixed::CrossOfBraided) { 4 } else { 3 };
    if files.len() != want {
        bail!("expected {want} files, got {}", files.len());
    }
    let cross_of = |p: &Path| -> anyhow::Result<_> {
        load_bundle(p)?
            .cross
            .ok_or_else(|| anyhow!("{} has no cross product", p.display()))
    };
    Ok(match kind {
        Mixed::CrossThenBraided => {
            let cross = cross_of(&files[0])?;
            let a2 = load_presentation(&files[1])?;
            let alphabet = cross.presentation.alphabet().merge(a2.alphabet())?;
            let exchange = load_doc(&files[2], &alphabet)?.rules;
            MixedKind::CrossThenBraided {
                cross: Box::new(cross),
                a2,
                exchange,
            }
        }
        Mixed::BraidedThenCross => {
            let a1 = load_presentation(&files[0])?;
            let cross = cross_of(&files[1])?;
            let alphabet = a1.alphabet().merge(cross.presentation.alphabet())?;
            let exchange = load_doc(&files[2], &alphabet)?.rules;
            MixedKind::BraidedThenCross {
                a1,
                cross: Box::new(cross),
                exchange,
            }
        }
        Mixed::CrossOfBraided => {
            let braided = load_bundle(&files[0])?
                .braided
                .ok_or_else(|| anyhow!("{} has no braided product", files[0].display()))?;
            let hopf = hopf_of(&files[1])?;
            let t1 = action_of(&braided.factor1, &hopf, &files[2], &[])?;
            let t2 = action_of(&braided.factor2, &hopf, &files[3], &[])?;
            MixedKind::CrossOfBraided {
                braided: Box::new(braided),
                hopf,
                action1: t1,
                action2: t2,
            }
        }
    })
}
