//! One pass/fail line per acceptance criterion.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use qsmash_core::coeff::Scalar;
use qsmash_core::decouple::{
    centralizer_basis, check_central, check_commutant, check_realization, check_unbraiding, in_span,
};
use qsmash_core::format::{parse_document, parse_expr, printer, write_action};
use qsmash_core::hopf::check_hopf_axioms;
use qsmash_core::ncpoly::{Alphabet, NCPoly};
use qsmash_core::presets::{embedded, load_preset, validate, PresetBundle, Role, FILES, PRESETS};
use qsmash_core::products::compare_cross_rules;
use qsmash_core::rewrite::{Presentation, Rule};
use qsmash_core::suites::{realize, run_suite, Realized, SuiteOptions};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<String, String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {t:.1?}, limit {limit:?}"))?;
    Ok(format!("{t:.1?}"))
}

fn embedded_bundle(file: &str) -> PresetBundle {
    PresetBundle::parse(embedded(file).expect("embedded bundle"), &|f: &str| {
        embedded(f)
            .map(str::to_string)
            .ok_or_else(|| qsmash_core::Error::Io(f.to_string()))
    })
    .expect("bundle parses")
}

fn preset(name: &str) -> PresetBundle {
    load_preset(name).unwrap_or_else(|e| panic!("preset {name}: {e}"))
}

fn zeta_of(r: &Realized, name: &str) -> NCPoly {
    r.zetas
        .iter()
        .find(|z| z.source.name() == name)
        .unwrap_or_else(|| panic!("no ζ̃({name})"))
        .image
        .clone()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    for (name, _) in PRESETS {
        load_preset(name).map_err(|e| format!("{name}: {e}"))?;
    }
    for (file, _) in FILES.iter().filter(|(f, _)| f.ends_with(".bundle")) {
        let b = embedded_bundle(file);
        for r in validate(&b, 3).map_err(|e| e.to_string())? {
            ensure(r.passed(), || format!("{file}: {}", r.to_text()))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} reports, {}", within(start, Duration::from_secs(60))?))
}

fn criterion_2() -> Outcome {
    for name in ["uq_so3", "classical_so3_weyl"] {
        let r = check_hopf_axioms(preset(name).hopf.as_ref().expect("hopf"));
        ensure(r.passed() && r.residuals.is_empty(), || r.to_text())?;
    }
    Ok("U_q so(3) and U(so(3)) exact".into())
}

fn criterion_3() -> Outcome {
    let b = preset("rq3_cross");
    let cross = b.cross.as_ref().expect("cross");
    ensure(b.rels.len() == 9, || format!("{} printed relations", b.rels.len()))?;
    let r = compare_cross_rules(cross, &b.rels).map_err(|e| e.to_string())?;
    ensure(r.passed(), || r.to_text())?;
    Ok(format!("{} printed relations regenerated", b.rels.len()))
}

fn criterion_4() -> Outcome {
    let b = preset("rq3_cross");
    let mut n = 0;
    for variant in ["paper-13", "paper-14"] {
        for role in [Role::Plus, Role::Minus] {
            let r = realize(&b, role, variant).map_err(|e| e.to_string())?;
            let rep = check_realization(&r.phi);
            ensure(rep.passed(), || format!("{variant} {role}: {}", rep.to_text()))?;
            n += 1;
        }
    }
    let c = preset("classical_so3_weyl");
    let r = realize(&c, Role::Full, "classical").map_err(|e| e.to_string())?;
    let rep = check_realization(&r.phi);
    ensure(rep.passed(), || rep.to_text())?;
    Ok(format!("{} maps", n + 1))
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let b = preset("rq3_cross");
    let cross = b.cross.as_ref().expect("cross");
    let a_letters = cross.algebra.letters();
    let mut pairs = 0;
    for variant in ["paper-13", "paper-14"] {
        for role in [Role::Plus, Role::Minus] {
            let r = realize(&b, role, variant).map_err(|e| e.to_string())?;
            let images: Vec<NCPoly> = r.zetas.iter().map(|z| z.image.clone()).collect();
            ensure(images.len() == 3, || format!("{} images for {role}", images.len()))?;
            let rep = check_commutant(&images, &a_letters, &cross.presentation);
            ensure(rep.passed(), || format!("{variant} {role}: {}", rep.to_text()))?;
            pairs += images.len() * a_letters.len();
        }
    }
    let c = preset("classical_so3_weyl");
    let cc = c.cross.as_ref().expect("cross");
    let r = realize(&c, Role::Full, "classical").map_err(|e| e.to_string())?;
    let images: Vec<NCPoly> = r.zetas.iter().map(|z| z.image.clone()).collect();
    let letters = cc.algebra.letters();
    ensure(images.len() * letters.len() == 18, || "expected 18 classical pairs".into())?;
    let rep = check_commutant(&images, &letters, &cc.presentation);
    ensure(rep.passed(), || rep.to_text())?;
    Ok(format!(
        "{pairs} quantum pairs, 18 classical pairs, {}",
        within(start, Duration::from_secs(120))?
    ))
}

fn criterion_6() -> Outcome {
    let b = preset("rq3_cross");
    let p = &b.cross.as_ref().expect("cross").presentation;
    let nf = |e: &NCPoly| p.normal_form(e).expect("normal form");
    let mut selected = Vec::new();
    for variant in ["paper-13", "paper-14"] {
        let plus = realize(&b, Role::Plus, variant).map_err(|e| e.to_string())?;
        let minus = realize(&b, Role::Minus, variant).map_err(|e| e.to_string())?;
        let k = zeta_of(&plus, "K");
        let kinv = zeta_of(&plus, "Kinv");
        let ep = zeta_of(&plus, "E+");
        let em = zeta_of(&minus, "E-");
        let q = Scalar::q();
        let qi = Scalar::q_pow(-1);
        ensure(nf(&k.mul(&ep).sub(&ep.mul(&k).scale(&q))).is_zero(), || format!("{variant}: k e+"))?;
        ensure(nf(&k.mul(&em).sub(&em.mul(&k).scale(&qi))).is_zero(), || format!("{variant}: k e-"))?;
        let q2m1 = q.mul(&q).sub(&Scalar::one());
        let bracket = ep.mul(&em).sub(&em.mul(&ep).scale(&qi)).scale(&q2m1);
        let charge = nf(&bracket.sub(&k.mul(&k)));
        let s = charge
            .as_scalar()
            .ok_or_else(|| format!("{variant}: charge is not a scalar: {}", p.format_poly(&charge)))?;
        ensure(s == Scalar::eta_pow(2) || s == Scalar::eta_pow(-2), || {
            format!("{variant}: charge {s}")
        })?;
        // c = e+ e- k^-1 / (1+q) + (k - q s k^-1) / (1-q^2)^2
        let one_q = Scalar::one().add(&q);
        let d = Scalar::one().sub(&q.mul(&q));
        let d2 = d.mul(&d);
        let c = ep
            .mul(&em)
            .mul(&kinv)
            .scale(&one_q.inv().expect("nonzero"))
            .add(&k.sub(&kinv.scale(&q.mul(&s))).scale(&d2.inv().expect("nonzero")));
        let rep = check_central(&nf(&c), p);
        ensure(rep.passed(), || format!("{variant}: Casimir {}", rep.to_text()))?;
        selected.push(format!("{variant}: {s}"));
    }
    Ok(format!("charges {}", selected.join(", ")))
}

fn criterion_7() -> Outcome {
    let b = preset("rq3_cross");
    let p = &b.cross.as_ref().expect("cross").presentation;
    let p2 = parse_expr("P^2", p.alphabet()).map_err(|e| e.to_string())?;
    let rep = check_central(&p2, p);
    ensure(rep.passed(), || rep.to_text())?;
    let n = p.letters().len();
    ensure(n == 10, || format!("{n} generators"))?;
    let s = preset("rq3_sphere_cross");
    let sp = &s.cross.as_ref().expect("cross").presentation;
    let nf = sp.normal_form(&NCPoly::letter(sp.letter("P").expect("P"))).map_err(|e| e.to_string())?;
    ensure(nf == NCPoly::one(), || format!("nf(P) = {}", sp.format_poly(&nf)))?;
    for variant in ["paper-13", "paper-14"] {
        let opts = SuiteOptions {
            variant: Some(variant.into()),
            ..SuiteOptions::default()
        };
        let r = run_suite("theorem2", &s, &opts).map_err(|e| e.to_string())?;
        ensure(r.passed(), || r.to_text())?;
    }
    Ok(format!("{n} commutators zero; sphere nf(P) = 1, suites pass"))
}

fn criterion_8() -> Outcome {
    let start = Instant::now();
    let c = preset("classical_so3_weyl");
    let opts = SuiteOptions {
        degree: 2,
        ..SuiteOptions::default()
    };
    let r = run_suite("theorem1", &c, &opts).map_err(|e| e.to_string())?;
    let d = r.check("decomposition").ok_or("no decomposition check")?;
    ensure(d.status.is_pass() && d.residual.is_empty(), || r.to_text())?;
    let b = preset("rq3_cross");
    for variant in ["paper-13", "paper-14"] {
        let opts = SuiteOptions {
            variant: Some(variant.into()),
            degree: 2,
            window: Some(6),
            ..SuiteOptions::default()
        };
        let r = run_suite("theorem2", &b, &opts).map_err(|e| e.to_string())?;
        let d = r.check("decomposition").ok_or("no decomposition check")?;
        ensure(d.status.is_pass() && d.residual.is_empty(), || r.to_text())?;
    }
    Ok(format!("classical and quantum full rank, {}", within(start, Duration::from_secs(600))?))
}

fn criterion_9() -> Outcome {
    let c = preset("classical_so3_weyl");
    let cross = c.cross.as_ref().expect("cross");
    let p = &cross.presentation;
    let basis = centralizer_basis(p, &cross.algebra.letters(), 2).map_err(|e| e.to_string())?;
    ensure(in_span(&NCPoly::one(), &basis, p).map_err(|e| e.to_string())?, || "1 missing".into())?;
    let r = realize(&c, Role::Full, "classical").map_err(|e| e.to_string())?;
    for z in &r.zetas {
        ensure(in_span(&z.image, &basis, p).map_err(|e| e.to_string())?, || {
            format!("ζ̃({}) missing", z.source)
        })?;
    }
    Ok(format!("basis of {} contains 1 and 3 images", basis.len()))
}

fn criterion_10() -> Outcome {
    let t = preset("trivial_braided");
    let reps = check_unbraiding(t.chi.as_ref().expect("chi"), t.braided.as_ref().expect("braided"), Some(2))
        .map_err(|e| e.to_string())?;
    ensure(reps.len() == 3, || format!("{} checks", reps.len()))?;
    for r in &reps {
        ensure(r.passed(), || r.to_text())?;
    }
    let toy = embedded_bundle("lambda_toy.bundle");
    let br = toy.braided.as_ref().expect("braided");
    let reps = check_unbraiding(toy.chi.as_ref().expect("chi"), br, None).map_err(|e| e.to_string())?;
    let com = reps
        .iter()
        .find(|r| r.check == "unbraiding-commutant")
        .ok_or("no commutant check")?;
    ensure(!com.passed(), || "naive inclusion passed the commutant check".into())?;
    let p = &br.presentation;
    let expected = parse_expr("(q - 1) a1 a2", p.alphabet()).map_err(|e| e.to_string())?;
    ensure(
        com.residuals.len() == 1 && com.residuals[0].expression == p.format_poly(&expected),
        || com.to_text(),
    )?;
    Ok(format!("trivial passes; toy residual {}", com.residuals[0].expression))
}

/// Criteria 1 through 6 on a bundle whose `rq3.alg` and `rq3_uq.tbl` are replaced.
fn mutant_detected(alg: &str, tbl: &str) -> bool {
    let read = |f: &str| -> qsmash_core::Result<String> {
        Ok(match f {
            "rq3.alg" => alg.to_string(),
            "rq3_uq.tbl" => tbl.to_string(),
            other => embedded(other).expect("embedded").to_string(),
        })
    };
    let outcome = catch_unwind(AssertUnwindSafe(|| -> Result<bool, String> {
        let b = PresetBundle::parse(embedded("rq3_cross.bundle").expect("bundle"), &read)
            .map_err(|e| e.to_string())?;
        for r in validate(&b, 3).map_err(|e| e.to_string())? {
            if !r.passed() {
                return Ok(true);
            }
        }
        let cross = b.cross.as_ref().expect("cross");
        if !compare_cross_rules(cross, &b.rels).map_err(|e| e.to_string())?.passed() {
            return Ok(true);
        }
        for variant in ["paper-13", "paper-14"] {
            for role in [Role::Plus, Role::Minus] {
                let r = realize(&b, role, variant).map_err(|e| e.to_string())?;
                if !check_realization(&r.phi).passed() {
                    return Ok(true);
                }
                let images: Vec<NCPoly> = r.zetas.iter().map(|z| z.image.clone()).collect();
                if !check_commutant(&images, &cross.algebra.letters(), &cross.presentation).passed() {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }));
    // an input the engine rejects outright is detected too
    !matches!(outcome, Ok(Ok(false)))
}

fn flip_term(e: &NCPoly, i: usize) -> NCPoly {
    NCPoly::from_terms(
        e.terms()
            .enumerate()
            .map(|(j, (w, c))| (w.clone(), if i == j { c.neg() } else { c.clone() })),
    )
}

fn render_alg(original: &str, rules: &[Rule], p: &Presentation) -> String {
    let mut out: String = original
        .lines()
        .filter(|l| !l.trim_start().starts_with("rule "))
        .map(|l| format!("{l}\n"))
        .collect();
    for r in rules {
        out.push_str(&format!("rule {} -> {}\n", r.lhs, printer::poly_to_string(&r.rhs, p.order())));
    }
    out
}

fn criterion_11() -> Outcome {
    let alg = embedded("rq3.alg").expect("rq3.alg");
    let tbl = embedded("rq3_uq.tbl").expect("rq3_uq.tbl");
    let adoc = parse_document(alg, &Alphabet::default()).map_err(|e| e.to_string())?;
    let p = adoc.presentation().map_err(|e| e.to_string())?;
    let hopf = parse_document(embedded("uq_so3.alg").expect("uq"), &Alphabet::default()).map_err(|e| e.to_string())?;
    let alphabet = p.alphabet().merge(&hopf.alphabet).map_err(|e| e.to_string())?;
    let tdoc = parse_document(tbl, &alphabet).map_err(|e| e.to_string())?;
    let mut mutants = Vec::new();
    for (ri, r) in adoc.rules.iter().enumerate() {
        for ti in 0..r.rhs.len() {
            let mut rules = adoc.rules.clone();
            rules[ri].rhs = flip_term(&r.rhs, ti);
            mutants.push((format!("rule {} term {ti}", r.lhs), render_alg(alg, &rules, &p), tbl.to_string()));
        }
    }
    let entries: BTreeMap<_, _> = tdoc.act.iter().map(|(a, g, e)| ((*a, *g), e.clone())).collect();
    for ((a, g), e) in &entries {
        for ti in 0..e.len() {
            let mut m = entries.clone();
            m.insert((*a, *g), flip_term(e, ti));
            mutants.push((format!("act {a} {g}"), alg.to_string(), write_action(&m, &p)));
        }
    }
    ensure(mutants.len() >= 10, || format!("only {} mutation sites", mutants.len()))?;
    // the unmutated inputs must pass, or detection means nothing
    ensure(!mutant_detected(alg, &write_action(&entries, &p)), || "unmutated data flagged".into())?;
    let missed: Vec<&str> = mutants
        .iter()
        .filter(|(_, a, t)| !mutant_detected(a, t))
        .map(|(what, _, _)| what.as_str())
        .collect();
    ensure(missed.is_empty(), || format!("undetected: {}", missed.join("; ")))?;
    Ok(format!("{} single-coefficient mutations all detected", mutants.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("preset validation", criterion_1),
        ("Hopf axioms", criterion_2),
        ("action round trip", criterion_3),
        ("realization maps", criterion_4),
        ("commutants", criterion_5),
        ("q-commutation identities and Casimir", criterion_6),
        ("centrality and sphere quotient", criterion_7),
        ("decomposition", criterion_8),
        ("centralizer", criterion_9),
        ("unbraiding", criterion_10),
        ("mutation sensitivity", criterion_11),
    ];
    let mut failed = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let n = i + 1;
        let outcome = catch_unwind(f).unwrap_or_else(|e| {
            Err(e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        match outcome {
            Ok(detail) => println!("criterion {n:>2} {name}: PASS ({detail})"),
            Err(why) => {
                println!("criterion {n:>2} {name}: FAIL ({why})");
                failed.push(n);
            }
        }
    }
    if failed.is_empty() {
        println!("acceptance: all {} criteria pass", criteria.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed criteria {failed:?}");
        ExitCode::FAILURE
    }
}
