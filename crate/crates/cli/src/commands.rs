use std::fmt::Write as _;

use serde::Serialize;
use serde_json::json;

use sturmian::generator::{
    build_sigma, characteristic_prefix, mechanical_word, DirectiveSequence, Rounding,
};
use sturmian::singular::{
    adjoining_singular, concat_factors, singular_word, ConjugateDecomposition, Decomposer, Factor,
    Target,
};
use sturmian::{BinaryMorphism, Certificate, Letter, PeriodicCf, Word};

use crate::render::Style;
use crate::verify::{self, SuiteReport};
use crate::{check_cap, parse_cf, parse_directive, parse_rho, CliError, SlopeArgs};

/// Prefix of `c_α` for any `α`; slopes above ½ go through `c_α = E(c_{1−α})`.
fn characteristic_of(cf: &PeriodicCf, len: usize) -> Result<Word, CliError> {
    if cf.partial_quotient(1)? >= 2 {
        return Ok(characteristic_prefix(
            &DirectiveSequence::Cf(cf.clone()),
            len,
        )?);
    }
    // [0; 1, x, rest] = 1 − [0; 1 + x, rest]
    let unrolled = cf.aligned(2).unwrap_or_else(|| {
        cf.aligned(cf.preperiod().len().max(2))
            .expect("aligning to the current preperiod length succeeds")
    });
    let mut preperiod = unrolled.preperiod()[1..].to_vec();
    preperiod[0] += 1;
    let complement = PeriodicCf::new(preperiod, unrolled.period().to_vec())?;
    Ok(characteristic_prefix(&DirectiveSequence::Cf(complement), len)?.exchanged())
}

pub(crate) fn gen(
    style: &Style,
    slope: &SlopeArgs,
    length: usize,
    mechanical: bool,
    rho: &str,
    ceiling: bool,
    cap: usize,
) -> Result<String, CliError> {
    check_cap(length, cap)?;
    let (source, word) = match (&slope.cf, &slope.directive) {
        (Some(text), None) => {
            let cf = parse_cf(text)?;
            let word = if mechanical {
                let rounding = if ceiling {
                    Rounding::Ceiling
                } else {
                    Rounding::Floor
                };
                mechanical_word(cf.surd_value()?, parse_rho(rho)?, rounding).prefix(length)
            } else {
                characteristic_of(&cf, length)?
            };
            (cf.to_string(), word)
        }
        (None, Some(text)) => {
            if mechanical {
                return Err(CliError::Parse("--mechanical needs --cf".to_string()));
            }
            let entries = parse_directive(text)?;
            let word = characteristic_prefix(&DirectiveSequence::Explicit(entries), length)?;
            (text.clone(), word)
        }
        _ => {
            return Err(CliError::Parse(
                "exactly one of --cf or --directive is required".to_string(),
            ))
        }
    };
    if style.json() {
        let key = if slope.cf.is_some() {
            "alpha"
        } else {
            "directive"
        };
        let mut value = json!({ key: source, "length": length, "word": word.to_string() });
        if mechanical {
            value["rho"] = json!(rho);
            value["rounding"] = json!(if ceiling { "ceiling" } else { "floor" });
        }
        return Ok(format!("{value}\n"));
    }
    Ok(format!("{word}\n"))
}

fn load_morphism(
    cf: Option<&str>,
    images: Option<&str>,
    cert: Option<&str>,
) -> Result<BinaryMorphism, CliError> {
    match (cf, images, cert) {
        (Some(text), None, None) => Ok(build_sigma(&parse_cf(text)?)?),
        (None, images, Some(cert)) => {
            let psi = BinaryMorphism::from_certificate(cert.parse::<Certificate>()?);
            if let Some(images) = images {
                let given: BinaryMorphism = images.parse()?;
                if !given.same_images(&psi) {
                    return Err(CliError::Parse(format!(
                        "certificate {cert} has images {psi}, not {given}"
                    )));
                }
            }
            Ok(psi)
        }
        (None, Some(images), None) => Ok(images.parse()?),
        _ => Err(CliError::Parse(
            "give --cf, or --images and/or --cert".to_string(),
        )),
    }
}

pub(crate) fn morphism(
    style: &Style,
    cf: Option<&str>,
    images: Option<&str>,
    cert: Option<&str>,
    power: usize,
    k: Option<usize>,
    cap: usize,
) -> Result<String, CliError> {
    let base = load_morphism(cf, images, cert)?;
    let mut psi = if power == 0 {
        BinaryMorphism::identity()
    } else {
        base.clone()
    };
    for _ in 1..power {
        psi = base.compose(&psi);
        check_cap(psi.image_len_ab(), cap)?;
    }
    let generates = psi.generates_infinite_word().ok();
    let conjugate = match k {
        Some(k) => Some((psi.conjugating_word(k)?, psi.right_conjugate(k.into())?)),
        None => None,
    };
    if style.json() {
        let mut value = json!({
            "a": psi.image(Letter::A).to_string(),
            "b": psi.image(Letter::B).to_string(),
            "certificate": psi.certificate().map(ToString::to_string),
            "power": power,
            "generates_infinite_word": generates,
        });
        if let (Some(k), Some((u, conj))) = (k, &conjugate) {
            value["k"] = json!(k);
            value["conjugating_word"] = json!(u.to_string());
            value["conjugate"] = json!({
                "a": conj.image(Letter::A).to_string(),
                "b": conj.image(Letter::B).to_string(),
            });
        }
        return Ok(format!("{value}\n"));
    }
    let mut out = String::new();
    writeln!(out, "a -> {}", style.word(psi.image(Letter::A))).unwrap();
    writeln!(out, "b -> {}", style.word(psi.image(Letter::B))).unwrap();
    if let Some(c) = psi.certificate() {
        writeln!(
            out,
            "certificate: {}",
            if c.generators().is_empty() {
                "id".to_string()
            } else {
                c.to_string()
            }
        )
        .unwrap();
    }
    if let Some(g) = generates {
        writeln!(
            out,
            "generates infinite word: {}",
            if g { "yes" } else { "no" }
        )
        .unwrap();
    }
    if let (Some(k), Some((u, conj))) = (k, &conjugate) {
        writeln!(out, "u_{k} = {}", style.word(u)).unwrap();
        writeln!(
            out,
            "conjugate {k}: a -> {}; b -> {}",
            style.word(conj.image(Letter::A)),
            style.word(conj.image(Letter::B))
        )
        .unwrap();
    }
    Ok(out)
}

pub(crate) fn singular(
    style: &Style,
    cf: &str,
    depth: i64,
    cap: usize,
) -> Result<String, CliError> {
    let cf = parse_cf(cf)?;
    let mut total = 0usize;
    let mut rows = Vec::new();
    for n in -2..=depth {
        let w = singular_word(&cf, n)?;
        let v = adjoining_singular(&cf, n)?;
        total += w.len() + v.len();
        check_cap(total, cap)?;
        rows.push((n, w, v));
    }
    if style.json() {
        let rows: Vec<_> = rows
            .iter()
            .map(|(n, w, v)| json!({ "n": n, "w": w.to_string(), "v": v.to_string() }))
            .collect();
        return Ok(format!(
            "{}\n",
            json!({ "alpha": cf.to_string(), "words": rows })
        ));
    }
    let mut out = String::new();
    for (n, w, v) in &rows {
        writeln!(out, "w_{n} = {}", style.word(w)).unwrap();
        writeln!(out, "v_{n} = {}", style.word(v)).unwrap();
    }
    Ok(out)
}

#[derive(Debug, Serialize)]
struct FactorJson {
    j: i64,
    word: String,
}

/// Machine-mode record of one decomposition.
#[derive(Debug, Serialize)]
struct DecompositionJson {
    alpha: String,
    k: usize,
    m: usize,
    p: usize,
    conj_index: i64,
    factors: Vec<FactorJson>,
    verified_prefix_len: usize,
}

/// Total letters of factors `j = m−1 ..= m−1+depth`, each `|σ^{j+1}(b)| = q_{j+2} − q_{j+1}`,
/// rejected before any factor is built if it exceeds the cap.
fn check_factor_budget(
    d: &Decomposer,
    m: usize,
    depth: usize,
    cap: usize,
) -> Result<usize, CliError> {
    let mut total = 0usize;
    for j in m as i64 - 1..=m as i64 - 1 + depth as i64 {
        total += d.q((j + 2) as usize) - d.q((j + 1) as usize);
        check_cap(total, cap)?;
    }
    Ok(total)
}

/// Builds a decomposition with `depth + 1` factors and verifies it on
/// `verify_len` letters.
fn decomposition(
    d: &Decomposer,
    k: usize,
    depth: usize,
    target: Target,
    verify_len: usize,
    cap: usize,
) -> Result<(ConjugateDecomposition, usize), CliError> {
    check_factor_budget(d, d.locate(k).m, depth, cap)?;
    check_cap(verify_len, cap)?;
    let dec = d.decompose(k, depth, target)?;
    if !dec.verify(verify_len) {
        return Err(CliError::Verification {
            output: String::new(),
            message: format!("decomposition of shift {k} disagrees with the shifted word within {verify_len} letters"),
        });
    }
    Ok((dec, verify_len))
}

/// The first `depth + 1` factors; verification may have materialized more.
fn leading_factors(dec: &ConjugateDecomposition, depth: usize) -> Vec<Factor> {
    let mut factors = dec.factors();
    factors.truncate(depth + 1);
    factors
}

fn to_json(
    cf: &PeriodicCf,
    dec: &ConjugateDecomposition,
    depth: usize,
    verified: usize,
) -> DecompositionJson {
    DecompositionJson {
        alpha: cf.to_string(),
        k: dec.k(),
        m: dec.m(),
        p: dec.p(),
        conj_index: dec.conjugate_index().value(),
        factors: leading_factors(dec, depth)
            .iter()
            .map(|f| FactorJson {
                j: f.j,
                word: f.word.to_string(),
            })
            .collect(),
        verified_prefix_len: verified,
    }
}

pub(crate) fn decompose(
    style: &Style,
    cf: &str,
    k: usize,
    depth: usize,
    hat: bool,
    cap: usize,
) -> Result<String, CliError> {
    let cf = parse_cf(cf)?;
    let d = Decomposer::new(&cf)?;
    let target = if hat {
        Target::Complement
    } else {
        Target::Alpha
    };
    let budget = check_factor_budget(&d, d.locate(k).m, depth, cap)?;
    let (dec, verified) = decomposition(&d, k, depth, target, budget, cap)?;
    if style.json() {
        let mut value = serde_json::to_value(to_json(&cf, &dec, depth, verified))
            .expect("plain data serializes");
        if hat {
            value["target"] = json!("complement");
        }
        return Ok(format!("{value}\n"));
    }
    let mut out = String::new();
    writeln!(
        out,
        "# alpha={} k={} m={} p={} t={} target={}",
        cf,
        dec.k(),
        dec.m(),
        dec.p(),
        dec.conjugate_index(),
        style.target_name(target)
    )
    .unwrap();
    for factor in leading_factors(&dec, depth) {
        writeln!(
            out,
            "{} = {}",
            style.factor_label(&factor, target),
            style.word(&factor.word)
        )
        .unwrap();
    }
    writeln!(out, "# verified {verified} letters").unwrap();
    Ok(out)
}

pub(crate) fn table(
    style: &Style,
    cf: &str,
    k_max: usize,
    depth: usize,
    max_len: usize,
    cap: usize,
) -> Result<String, CliError> {
    let cf = parse_cf(cf)?;
    let d = Decomposer::new(&cf)?;
    let target = Target::Alpha;
    check_cap(k_max.saturating_add(1), cap)?;
    let mut rows = Vec::new();
    let mut total = 0usize;
    for k in 0..=k_max {
        let (dec, verified) = decomposition(&d, k, depth, target, max_len, cap)?;
        total += concat_factors(&leading_factors(&dec, depth)).len() + k;
        check_cap(total, cap)?;
        rows.push((d.c_alpha().prefix(k), dec, verified));
    }
    if style.json() {
        let rows: Vec<_> = rows
            .iter()
            .map(|(u, dec, verified)| {
                let mut value = serde_json::to_value(to_json(&cf, dec, depth, *verified))
                    .expect("plain data serializes");
                value["prefix"] = json!(u.to_string());
                value
            })
            .collect();
        return Ok(format!(
            "{}\n",
            json!({ "alpha": cf.to_string(), "rows": rows })
        ));
    }
    let mut out = String::new();
    writeln!(
        out,
        "# alpha={cf} k=0..{k_max} verified {max_len} letters per row"
    )
    .unwrap();
    for (u, dec, _) in &rows {
        let heads: Vec<_> = leading_factors(dec, depth)
            .iter()
            .map(|f| style.factor_label(f, target))
            .collect();
        writeln!(
            out,
            "k={} m={} t={} ({})^{{-1}}{} = {} ...",
            dec.k(),
            dec.m(),
            dec.conjugate_index(),
            style.word(u),
            style.target_name(target),
            heads.join(" ")
        )
        .unwrap();
    }
    Ok(out)
}

fn render_reports(
    style: &Style,
    cf: &PeriodicCf,
    max_len: usize,
    reports: &[SuiteReport],
) -> String {
    let failed = reports.iter().filter(|r| !r.passed()).count();
    if style.json() {
        return format!(
            "{}\n",
            json!({ "alpha": cf.to_string(), "max_len": max_len, "suites": reports, "failed_suites": failed })
        );
    }
    let mut out = String::new();
    for r in reports {
        match &r.skipped {
            Some(reason) => writeln!(out, "{:<13} skipped: {reason}", r.name).unwrap(),
            None => {
                let status = if r.passed() { "ok" } else { "FAILED" };
                write!(
                    out,
                    "{:<13} {status} checks={} failures={}",
                    r.name, r.checks, r.failures
                )
                .unwrap();
                if let Some(example) = &r.counterexample {
                    write!(out, " first: {example}").unwrap();
                }
                out.push('\n');
            }
        }
    }
    let skipped = reports.iter().filter(|r| r.skipped.is_some()).count();
    writeln!(
        out,
        "summary: {} suites, {} failed, {} skipped",
        reports.len(),
        failed,
        skipped
    )
    .unwrap();
    out
}

pub(crate) fn verify(
    style: &Style,
    suite: &str,
    cf: &str,
    max_len: usize,
    cap: usize,
) -> Result<String, CliError> {
    let cf = parse_cf(cf)?;
    check_cap(max_len, cap)?;
    let names = verify::resolve(suite).map_err(CliError::Parse)?;
    let reports = verify::run_suites(&names, &cf, max_len);
    let out = render_reports(style, &cf, max_len, &reports);
    let failed = reports.iter().filter(|r| !r.passed()).count();
    if failed > 0 {
        return Err(CliError::Verification {
            output: out,
            message: format!("{failed} of {} suites failed", reports.len()),
        });
    }
    Ok(out)
}
