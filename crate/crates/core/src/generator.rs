//! Standard sequences, characteristic Sturmian words and the morphisms fixing
//! them.

use num_rational::Ratio;
use thiserror::Error;

use crate::cf::{CfError, PeriodicCf, QuadraticSurd, TypeIForm};
use crate::morphism::{BinaryMorphism, Certificate, Generator};
use crate::word::{Letter, Word, WordStream};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error(transparent)]
    Cf(#[from] CfError),
    #[error("directive sequence has {available} entries, {needed} needed")]
    DirectiveTooShort { needed: usize, available: usize },
    #[error("characteristic words need d_1 ≥ 1")]
    ZeroFirstDirective,
    #[error("standard sequences are indexed from -1, got {0}")]
    IndexOutOfRange(i64),
    #[error("generator certificate {certificate} gives {from_certificate}, expected {expected}")]
    CertificateMismatch {
        certificate: Certificate,
        from_certificate: String,
        expected: String,
    },
}

/// The directive sequence `(d_1, d_2, …)` of `α = [0; 1+d_1, d_2, …]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DirectiveSequence {
    /// Read from a continued fraction, so infinite: `d_1 = a_1 − 1`, `d_i = a_i`.
    Cf(PeriodicCf),
    /// A finite list of entries; `d_1 = 0` is allowed.
    Explicit(Vec<u64>),
}

impl DirectiveSequence {
    /// `d_i`, or `None` past the end of an explicit list.
    pub fn get(&self, i: usize) -> Option<u64> {
        assert!(i >= 1, "directive entries are indexed from 1");
        match self {
            DirectiveSequence::Cf(cf) => {
                let a = cf.partial_quotient(i).expect("index ≥ 1");
                Some(if i == 1 { a - 1 } else { a })
            }
            DirectiveSequence::Explicit(entries) => entries.get(i - 1).copied(),
        }
    }

    fn require(&self, i: usize) -> Result<u64, GenError> {
        self.get(i).ok_or_else(|| GenError::DirectiveTooShort {
            needed: i,
            available: self.len().unwrap_or(usize::MAX),
        })
    }

    /// Number of available entries (`None` when infinite).
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> Option<usize> {
        match self {
            DirectiveSequence::Cf(_) => None,
            DirectiveSequence::Explicit(entries) => Some(entries.len()),
        }
    }
}

/// `s_{-1}, s_0, …, s_n` with `s_{-1} = b`, `s_0 = a`, `s_k = s_{k-1}^{d_k} s_{k-2}`.
pub fn standard_words(dir: &DirectiveSequence, n: i64) -> Result<Vec<Word>, GenError> {
    if n < -1 {
        return Err(GenError::IndexOutOfRange(n));
    }
    let mut words = vec![Word::letter(Letter::B), Word::letter(Letter::A)];
    for k in 1..=n.max(0) as usize {
        let d = dir.require(k)?;
        let next = words[k].pow(d as usize).concat(&words[k - 1]);
        words.push(next);
    }
    words.truncate((n + 2) as usize);
    Ok(words)
}

/// `s_n` for `n ≥ -1`.
pub fn standard_word(dir: &DirectiveSequence, n: i64) -> Result<Word, GenError> {
    Ok(standard_words(dir, n)?.pop().expect("n ≥ -1 yields a word"))
}

/// The standard sequence of a fixed directive, indexed from `-1`.
#[derive(Debug, Clone)]
pub struct StandardSequence {
    directive: DirectiveSequence,
}

impl StandardSequence {
    pub fn new(directive: DirectiveSequence) -> Self {
        StandardSequence { directive }
    }

    pub fn directive(&self) -> &DirectiveSequence {
        &self.directive
    }

    pub fn s(&self, n: i64) -> Result<Word, GenError> {
        standard_word(&self.directive, n)
    }
}

/// The shortest standard word `s_n` (n ≥ 0) with at least `len` letters.
fn standard_prefix(dir: &DirectiveSequence, len: usize) -> Result<Word, GenError> {
    let (mut prev, mut cur) = (Word::letter(Letter::B), Word::letter(Letter::A));
    let mut k = 1;
    while cur.len() < len {
        let d = dir.require(k)? as usize;
        let next = cur.pow(d).concat(&prev);
        prev = std::mem::replace(&mut cur, next);
        k += 1;
    }
    Ok(cur)
}

/// `c_α = lim s_n` for a type (i) Sturm number, generated through the
/// standard-sequence recurrence.
pub fn characteristic_word(cf: &PeriodicCf) -> Result<WordStream, GenError> {
    cf.type_i_form()?;
    let dir = DirectiveSequence::Cf(cf.clone());
    Ok(WordStream::new(move |len: usize| {
        standard_prefix(&dir, len).expect("continued-fraction directives are infinite")
    }))
}

/// `c_{1−α} = E(c_α)` for a type (i) Sturm number `α`.
pub fn complementary_word(cf: &PeriodicCf) -> Result<WordStream, GenError> {
    Ok(characteristic_word(cf)?.exchanged())
}

/// The first `len` letters of the characteristic word of a (possibly finite)
/// directive sequence with `d_1 ≥ 1`.
pub fn characteristic_prefix(dir: &DirectiveSequence, len: usize) -> Result<Word, GenError> {
    if dir.get(1).ok_or(GenError::DirectiveTooShort {
        needed: 1,
        available: 0,
    })? == 0
    {
        return Err(GenError::ZeroFirstDirective);
    }
    Ok(standard_prefix(dir, len)?.prefix(len))
}

/// Which rounding the mechanical word uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rounding {
    /// `s_{α,ρ}(n)` from `⌊(n+1)α + ρ⌋ − ⌊nα + ρ⌋`.
    Floor,
    /// `s'_{α,ρ}(n)` from `⌈(n+1)α + ρ⌉ − ⌈nα + ρ⌉`.
    Ceiling,
}

/// The mechanical word of slope `α` and intercept `ρ`: letter `n` is `a`
/// when the rounded values at `n` and `n+1` agree, `b` otherwise.
pub fn mechanical_word(alpha: QuadraticSurd, rho: Ratio<i64>, rounding: Rounding) -> WordStream {
    let value = move |n: u64| -> i128 {
        match rounding {
            Rounding::Floor => alpha.floor_multiple(n, rho),
            Rounding::Ceiling => alpha.ceil_multiple(n, rho),
        }
        .expect("mechanical word position within exact range")
    };
    WordStream::new(move |len: usize| {
        let mut prev = value(0);
        (1..=len as u64)
            .map(|n| {
                let cur = value(n);
                let letter = if cur == prev { Letter::A } else { Letter::B };
                prev = cur;
                letter
            })
            .collect()
    })
}

/// `(φE)^{d_1} E (φE)^{d_2} E ⋯ (φE)^{d_{n-1}} E (φE)^{d_n − d_1}`.
pub fn sigma_certificate(form: &TypeIForm) -> Certificate {
    let phi_e = Certificate::from_iter([Generator::Phi, Generator::E]);
    let e = Certificate::from_iter([Generator::E]);
    let mut cert = Certificate::identity();
    for i in 1..form.n() {
        cert = cert.then(&phi_e.repeat(form.d(i) as usize)).then(&e);
    }
    cert.then(&phi_e.repeat((form.d_n() - form.d1()) as usize))
}

fn check_images(
    psi: &BinaryMorphism,
    expected_a: &Word,
    expected_b: &Word,
) -> Result<(), GenError> {
    if psi.image(Letter::A) == expected_a && psi.image(Letter::B) == expected_b {
        return Ok(());
    }
    Err(GenError::CertificateMismatch {
        certificate: psi.certificate().cloned().unwrap_or_default(),
        from_certificate: psi.to_string(),
        expected: format!("a->{expected_a};b->{expected_b}"),
    })
}

/// The morphism `σ: a ↦ s_{n-1}, b ↦ s_{n-1}^{d_n − d_1} s_{n-2}` fixing `c_α`,
/// certified by its generator word and checked against those images.
pub fn build_sigma(cf: &PeriodicCf) -> Result<BinaryMorphism, GenError> {
    let form = cf.type_i_form()?;
    let n = form.n() as i64;
    let s = standard_words(&DirectiveSequence::Cf(cf.clone()), n - 1)?;
    // s[k + 1] holds s_k
    let s_n1 = &s[n as usize];
    let s_n2 = &s[n as usize - 1];
    let expected_b = s_n1.pow((form.d_n() - form.d1()) as usize).concat(s_n2);
    let sigma = BinaryMorphism::from_certificate(sigma_certificate(&form));
    check_images(&sigma, s_n1, &expected_b)?;
    Ok(sigma)
}

/// `σ̂ = EσE`, fixing `c_{1−α}`; checked against
/// `a ↦ ŝ_n^{d_n − d_1} ŝ_{n-1}, b ↦ ŝ_n` with `ŝ_k = E(s_{k-1})`.
pub fn build_sigma_hat(cf: &PeriodicCf) -> Result<BinaryMorphism, GenError> {
    let form = cf.type_i_form()?;
    let n = form.n() as i64;
    let s = standard_words(&DirectiveSequence::Cf(cf.clone()), n - 1)?;
    let hat = |k: i64| s[k as usize].exchanged();
    let expected_a = hat(n)
        .pow((form.d_n() - form.d1()) as usize)
        .concat(&hat(n - 1));
    let sigma_hat = build_sigma(cf)?.exchange_conjugate();
    check_images(&sigma_hat, &expected_a, &hat(n))?;
    Ok(sigma_hat)
}

/// Whether `σ^m(s_k) = s_{k + m(n−1)}`.
pub fn sigma_shifts_standard(cf: &PeriodicCf, k: usize, m: usize) -> Result<bool, GenError> {
    let form = cf.type_i_form()?;
    let sigma = build_sigma(cf)?;
    let dir = DirectiveSequence::Cf(cf.clone());
    let lhs = sigma.power(m).apply(&standard_word(&dir, k as i64)?);
    let rhs = standard_word(&dir, (k + m * (form.n() - 1)) as i64)?;
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::w;

    fn cf(s: &str) -> PeriodicCf {
        s.parse().unwrap()
    }

    fn explicit(d: &[u64]) -> DirectiveSequence {
        DirectiveSequence::Explicit(d.to_vec())
    }

    #[test]
    fn standard_words_from_recurrence() {
        let dir = explicit(&[1, 3, 3]);
        assert_eq!(standard_word(&dir, -1).unwrap(), w("b"));
        assert_eq!(standard_word(&dir, 0).unwrap(), w("a"));
        assert_eq!(standard_word(&dir, 1).unwrap(), w("ab"));
        assert_eq!(standard_word(&dir, 2).unwrap(), w("abababa"));
        assert_eq!(
            standard_word(&dir, 4),
            Err(GenError::DirectiveTooShort {
                needed: 4,
                available: 3
            })
        );
        assert_eq!(standard_word(&dir, -2), Err(GenError::IndexOutOfRange(-2)));
        // d_1 = 0 is a valid standard sequence
        assert_eq!(standard_word(&explicit(&[0, 2]), 2).unwrap(), w("bba"));
        assert_eq!(
            standard_word(&DirectiveSequence::Cf(cf("0;2,(3)")), 2).unwrap(),
            w("abababa")
        );
    }

    #[test]
    fn zero_exponent_yields_empty_power() {
        // [0;2,(1)]: d_n − d_1 = 0, so σ(b) = s_0.
        let sigma = build_sigma(&cf("0;2,(1)")).unwrap();
        assert_eq!(sigma.image(Letter::B), &w("a"));
    }

    #[test]
    fn characteristic_words() {
        let f = characteristic_word(&cf("0;2,(1)")).unwrap();
        assert_eq!(f.prefix(21), w("abaababaabaababaababa"));
        let c = characteristic_word(&cf("0;2,(3)")).unwrap();
        assert_eq!(c.prefix(22), w("abababaabababaabababaa"));
        let silver = characteristic_word(&cf("0;(2)")).unwrap();
        // s_3 = ababaababaab, s_4 = s_3² s_2
        assert_eq!(silver.prefix(17), w("ababaababaabababa"));
        assert!(characteristic_word(&cf("0;1,1,(3)")).is_err());
        assert_eq!(
            characteristic_prefix(&explicit(&[1, 3]), 7).unwrap(),
            w("abababa")
        );
        assert_eq!(
            characteristic_prefix(&explicit(&[0, 3]), 3),
            Err(GenError::ZeroFirstDirective)
        );
        assert!(characteristic_prefix(&explicit(&[1, 3]), 8).is_err());
    }

    #[test]
    fn mechanical_words() {
        let zero = Ratio::from_integer(0);
        let alpha = cf("0;2,(1)").surd_value().unwrap();
        let floor = mechanical_word(alpha, zero, Rounding::Floor);
        assert_eq!(floor.prefix(14), w("aabaababaabaab"));
        let ceil = mechanical_word(alpha, zero, Rounding::Ceiling);
        assert_eq!(ceil.prefix(6), w("babaab"));
    }

    #[test]
    fn sigma_images() {
        assert!(build_sigma(&cf("0;2,(1)"))
            .unwrap()
            .same_images(&BinaryMorphism::phi()));
        let s = build_sigma(&cf("0;2,(3)")).unwrap();
        assert_eq!(s.to_string(), "a->ab;b->ababa");
        assert_eq!(
            build_sigma(&cf("0;(2)")).unwrap().to_string(),
            "a->ab;b->aba"
        );
        assert_eq!(
            build_sigma(&cf("0;3,(2,3)")).unwrap().to_string(),
            "a->aabaaba;b->aabaabaaab"
        );
        assert!(matches!(
            build_sigma(&cf("0;3,(1)")),
            Err(GenError::Cf(CfError::NotTypeI(_)))
        ));
    }

    #[test]
    fn sigma_hat_images() {
        let hat = build_sigma_hat(&cf("0;2,(1)")).unwrap();
        assert_eq!(hat.to_string(), "a->b;b->ba");
        assert_eq!(hat.certificate().unwrap().to_string(), "EpEEE");
        let s = build_sigma(&cf("0;2,(3)")).unwrap();
        let hat = build_sigma_hat(&cf("0;2,(3)")).unwrap();
        assert_eq!(hat.image(Letter::A), &s.image(Letter::B).exchanged());
        assert_eq!(hat.image(Letter::B), &s.image(Letter::A).exchanged());
    }

    #[test]
    fn sigma_shifts() {
        assert!(sigma_shifts_standard(&cf("0;2,(3)"), 1, 1).unwrap());
        assert!(sigma_shifts_standard(&cf("0;2,(3)"), 4, 0).unwrap());
        assert!(sigma_shifts_standard(&cf("0;(2)"), 0, 3).unwrap());
        assert!(sigma_shifts_standard(&cf("0;3,(2,3)"), 2, 2).unwrap());
    }
}
