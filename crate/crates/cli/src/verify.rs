//! Named invariant suites run by `sturmian verify`.
//!
//! Suites run on separate threads; reports are collected in the order the
//! suites were requested so output stays deterministic.

use num_rational::Ratio;
use serde::Serialize;

use sturmian::generator::{
    build_sigma, build_sigma_hat, characteristic_word, mechanical_word, standard_word,
    DirectiveSequence, Rounding,
};
use sturmian::singular::{
    adjoining_singular, melancon_factors, singular_word, Decomposer, SingularError, Target,
};
use sturmian::{Letter, PeriodicCf, Word};

pub const SUITES: [&str; 8] = [
    "palindrome",
    "lengths",
    "fixedpoint",
    "lemma22",
    "theorem-main",
    "theorem-hat",
    "melancon",
    "mechanical",
];

/// Highest index of `w_n` / `v_n` checked by the word suites.
const MAX_INDEX: i64 = 12;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub checks: usize,
    pub failures: usize,
    pub counterexample: Option<String>,
    /// Why the suite did not apply to this continued fraction.
    pub skipped: Option<String>,
}

impl SuiteReport {
    fn new(name: &str) -> Self {
        SuiteReport {
            name: name.to_string(),
            checks: 0,
            failures: 0,
            counterexample: None,
            skipped: None,
        }
    }

    fn skipped(name: &str, reason: String) -> Self {
        SuiteReport {
            skipped: Some(reason),
            ..SuiteReport::new(name)
        }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures += 1;
            if self.counterexample.is_none() {
                self.counterexample = Some(describe());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// Expands `all` and validates suite names.
pub fn resolve(suite: &str) -> Result<Vec<&'static str>, String> {
    if suite == "all" {
        return Ok(SUITES.to_vec());
    }
    suite
        .split(',')
        .map(|name| {
            SUITES
                .iter()
                .find(|s| **s == name.trim())
                .copied()
                .ok_or_else(|| {
                    format!(
                        "unknown suite {name:?}; expected one of {} or all",
                        SUITES.join(", ")
                    )
                })
        })
        .collect()
}

/// Runs the suites in parallel and returns their reports in request order.
pub fn run_suites(names: &[&str], cf: &PeriodicCf, max_len: usize) -> Vec<SuiteReport> {
    std::thread::scope(|scope| {
        let handles: Vec<_> = names
            .iter()
            .map(|name| scope.spawn(move || run_suite(name, cf, max_len)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("suite thread panicked"))
            .collect()
    })
}

pub fn run_suite(name: &str, cf: &PeriodicCf, max_len: usize) -> SuiteReport {
    if let Err(e) = cf.type_i_form() {
        return SuiteReport::skipped(name, e.to_string());
    }
    let result = match name {
        "palindrome" => palindrome(cf, max_len),
        "lengths" => lengths(cf),
        "fixedpoint" => fixedpoint(cf, max_len),
        "lemma22" => lemma22(cf, max_len),
        "theorem-main" | "theorem-hat" => match Decomposer::new(cf) {
            Err(e @ SingularError::UnsupportedShape(_)) => {
                return SuiteReport::skipped(name, format!("needs α = [0;2,(r)]: {e}"))
            }
            Err(e) => Err(e.to_string()),
            Ok(d) => {
                let target = if name == "theorem-main" {
                    Target::Alpha
                } else {
                    Target::Complement
                };
                theorem(&d, max_len, target, name)
            }
        },
        "melancon" => melancon(cf),
        "mechanical" => mechanical(cf, max_len),
        _ => Err(format!("unknown suite {name:?}")),
    };
    // an error inside an applicable suite is a failure, not a skip
    result.unwrap_or_else(|reason| {
        let mut report = SuiteReport::new(name);
        report.check(false, || reason);
        report
    })
}

fn palindrome(cf: &PeriodicCf, max_len: usize) -> Result<SuiteReport, String> {
    let mut report = SuiteReport::new("palindrome");
    for n in -2..=MAX_INDEX {
        let w = singular_word(cf, n).map_err(|e| e.to_string())?;
        let v = adjoining_singular(cf, n).map_err(|e| e.to_string())?;
        if w.len().max(v.len()) > max_len {
            break;
        }
        report.check(w.is_palindrome(), || format!("w_{n} = {w}"));
        report.check(v.is_palindrome(), || format!("v_{n} = {v}"));
    }
    Ok(report)
}

fn lengths(cf: &PeriodicCf) -> Result<SuiteReport, String> {
    let mut report = SuiteReport::new("lengths");
    let q = cf
        .convergents(MAX_INDEX as usize + 2)
        .map_err(|e| e.to_string())?;
    let dir = DirectiveSequence::Cf(cf.clone());
    for n in 0..=MAX_INDEX {
        let s = standard_word(&dir, n).map_err(|e| e.to_string())?;
        let expected = q[n as usize].q;
        report.check(s.len() as u128 == expected, || {
            format!("|s_{n}| = {} but q_{n} = {expected}", s.len())
        });
    }
    for m in -1..=MAX_INDEX {
        let v = adjoining_singular(cf, m).map_err(|e| e.to_string())?;
        let expected = q[(m + 2) as usize].q - q[(m + 1) as usize].q;
        report.check(v.len() as u128 == expected, || {
            format!(
                "|v_{m}| = {} but q_{{m+2}} − q_{{m+1}} = {expected}",
                v.len()
            )
        });
    }
    Ok(report)
}

fn fixedpoint(cf: &PeriodicCf, max_len: usize) -> Result<SuiteReport, String> {
    let mut report = SuiteReport::new("fixedpoint");
    let sigma = build_sigma(cf).map_err(|e| e.to_string())?;
    let hat = build_sigma_hat(cf).map_err(|e| e.to_string())?;
    let c = characteristic_word(cf).map_err(|e| e.to_string())?;
    let prefix = c.prefix(max_len);
    report.check(sigma.apply_stream(&c).prefix(max_len) == prefix, || {
        format!("σ(c_α) differs from c_α within {max_len} letters")
    });
    let fixed = sigma.fixed_point(Letter::A).map_err(|e| e.to_string())?;
    report.check(fixed.prefix(max_len) == prefix, || {
        "σ^ω(a) differs from c_α".to_string()
    });
    let fixed_hat = hat.fixed_point(Letter::B).map_err(|e| e.to_string())?;
    report.check(fixed_hat.prefix(max_len) == prefix.exchanged(), || {
        "σ̂^ω(b) differs from E(c_α)".to_string()
    });
    report.check(sigma.generates_infinite_word().unwrap_or(false), || {
        format!(
            "certificate {} fails the generation criterion",
            sigma
                .certificate()
                .map(ToString::to_string)
                .unwrap_or_default()
        )
    });
    Ok(report)
}

fn lemma22(cf: &PeriodicCf, max_len: usize) -> Result<SuiteReport, String> {
    let mut report = SuiteReport::new("lemma22");
    let sigma = build_sigma(cf).map_err(|e| e.to_string())?;
    let c = characteristic_word(cf).map_err(|e| e.to_string())?;
    for m in 1..=3 {
        let power = sigma.power(m);
        for k in 0..=power.image_len_ab() - 2 {
            let conj = power.right_conjugate(k.into()).map_err(|e| e.to_string())?;
            let ok = conj.apply_stream(&c).prefix(max_len) == c.shift(k).prefix(max_len);
            report.check(ok, || format!("(σ^{m})_{k}(c_α) ≠ shift(c_α, {k})"));
        }
    }
    Ok(report)
}

/// For `m ∈ 0..=5` and every `p ∈ [2, q_{m+1} − q_m + 1]`, the shift
/// `k = q_{m+1} − p`.
pub fn theorem_shifts(d: &Decomposer) -> Vec<usize> {
    (0..=5)
        .flat_map(|m| {
            let top = d.q(m + 1);
            (2..=top - d.q(m) + 1).map(move |p| top - p)
        })
        .collect()
}

fn theorem(
    d: &Decomposer,
    max_len: usize,
    target: Target,
    name: &str,
) -> Result<SuiteReport, String> {
    let mut report = SuiteReport::new(name);
    for k in theorem_shifts(d) {
        let dec = d.decompose(k, 2, target).map_err(|e| e.to_string())?;
        report.check(dec.verify(max_len), || {
            format!("k={k}: product of factors differs from the shifted word")
        });
    }
    Ok(report)
}

fn melancon(cf: &PeriodicCf) -> Result<SuiteReport, String> {
    let mut report = SuiteReport::new("melancon");
    let c = characteristic_word(cf).map_err(|e| e.to_string())?;
    let factors = melancon_factors(cf, 4).map_err(|e| e.to_string())?;
    for (form, word) in [
        ("flat", factors.flat_word()),
        ("grouped", factors.grouped_word()),
    ] {
        report.check(c.prefix(word.len()) == word, || {
            format!("{form} product is not a prefix of c_α")
        });
    }
    Ok(report)
}

fn mechanical(cf: &PeriodicCf, max_len: usize) -> Result<SuiteReport, String> {
    let mut report = SuiteReport::new("mechanical");
    let alpha = cf.surd_value().map_err(|e| e.to_string())?;
    let c = characteristic_word(cf).map_err(|e| e.to_string())?;
    let zero = Ratio::from_integer(0);
    for (rounding, lead) in [(Rounding::Floor, Letter::A), (Rounding::Ceiling, Letter::B)] {
        let lhs = mechanical_word(alpha, zero, rounding).prefix(max_len);
        let rhs = c.prepend(&Word::letter(lead)).prefix(max_len);
        report.check(lhs == rhs, || {
            let at = lhs
                .iter()
                .zip(rhs.iter())
                .position(|(x, y)| x != y)
                .unwrap_or(0);
            format!(
                "{rounding:?} mechanical word differs from {}·c_α at letter {at}",
                lead.as_char()
            )
        });
    }
    Ok(report)
}
