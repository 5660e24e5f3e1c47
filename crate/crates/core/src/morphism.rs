//! Non-erasing morphisms on `{a, b}`.
//!
//! A morphism is stored by its two letter images. Standard morphisms (those in
//! `{E, φ}*`) may additionally carry a *certificate*: the generator word that
//! produced them. Structural questions such as right conjugation or Séébold's
//! generation criterion are only answered for certified morphisms; nothing
//! here tries to recognise a standard morphism from its images.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::word::{Letter, Word, WordError, WordStream};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MorphismError {
    #[error("letter images must be nonempty")]
    Erasing,
    #[error("morphism is not prolongable on `{0}`")]
    NotProlongable(Letter),
    #[error("operation needs a morphism with an {{E, φ}} certificate")]
    NoCertificate,
    #[error("conjugate index {index} outside 0..={max}")]
    IndexOutOfRange { index: i64, max: i64 },
    #[error("letter images share no common prefix of length {0}")]
    NoCommonPrefix(usize),
    #[error("cannot parse morphism {input:?}: {reason}")]
    Parse { input: String, reason: String },
    #[error(transparent)]
    Word(#[from] WordError),
}

/// One of the two generators of the standard monoid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Generator {
    /// Letter exchange `a ↦ b, b ↦ a`.
    E,
    /// Fibonacci morphism `a ↦ ab, b ↦ a`.
    Phi,
}

impl Generator {
    fn images(self) -> (Word, Word) {
        match self {
            Generator::E => (Word::letter(Letter::B), Word::letter(Letter::A)),
            Generator::Phi => (
                Word::from_letters(vec![Letter::A, Letter::B]),
                Word::letter(Letter::A),
            ),
        }
    }
}

/// A word over `{E, φ}` read as a composition, leftmost generator applied last:
/// `"pE"` is `φ ∘ E`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Certificate(Vec<Generator>);

impl Certificate {
    pub fn identity() -> Self {
        Certificate(Vec::new())
    }

    pub fn generators(&self) -> &[Generator] {
        &self.0
    }

    pub fn then(&self, other: &Certificate) -> Certificate {
        let mut gens = self.0.clone();
        gens.extend_from_slice(&other.0);
        Certificate(gens)
    }

    pub fn repeat(&self, n: usize) -> Certificate {
        Certificate(self.0.repeat(n))
    }

    /// Removes every `EE` factor (`E² = Id`).
    pub fn reduced(&self) -> Certificate {
        let mut out: Vec<Generator> = Vec::with_capacity(self.0.len());
        for &g in &self.0 {
            if g == Generator::E && out.last() == Some(&Generator::E) {
                out.pop();
            } else {
                out.push(g);
            }
        }
        Certificate(out)
    }

    /// Letter images of the composed generators.
    pub fn images(&self) -> (Word, Word) {
        let mut acc = (Word::letter(Letter::A), Word::letter(Letter::B));
        for &g in &self.0 {
            let (ga, gb) = g.images();
            acc = (apply_images(&acc, &ga), apply_images(&acc, &gb));
        }
        acc
    }
}

impl FromIterator<Generator> for Certificate {
    fn from_iter<I: IntoIterator<Item = Generator>>(iter: I) -> Self {
        Certificate(iter.into_iter().collect())
    }
}

impl FromStr for Certificate {
    type Err = MorphismError;

    /// Parses a string over `{E, p}`, where `p` stands for `φ`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .map(|c| match c {
                'E' => Ok(Generator::E),
                'p' => Ok(Generator::Phi),
                other => Err(MorphismError::Parse {
                    input: s.to_string(),
                    reason: format!("unexpected certificate symbol {other:?}"),
                }),
            })
            .collect()
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for g in &self.0 {
            f.write_str(match g {
                Generator::E => "E",
                Generator::Phi => "p",
            })?;
        }
        Ok(())
    }
}

fn apply_images(images: &(Word, Word), x: &[Letter]) -> Word {
    let mut out = Word::empty();
    for &c in x {
        out.extend_from(match c {
            Letter::A => &images.0,
            Letter::B => &images.1,
        });
    }
    out
}

/// The right-conjugate index `t` of `(ψ)_t`, where `-1` stands for the
/// adjoining-singular-word convention rather than an actual conjugate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ConjugateIndex(i64);

impl ConjugateIndex {
    pub const SENTINEL: ConjugateIndex = ConjugateIndex(-1);

    pub fn new(value: i64) -> Option<Self> {
        (value >= -1).then_some(ConjugateIndex(value))
    }

    pub fn value(self) -> i64 {
        self.0
    }

    pub fn is_sentinel(self) -> bool {
        self.0 == -1
    }
}

impl From<usize> for ConjugateIndex {
    fn from(k: usize) -> Self {
        ConjugateIndex(k as i64)
    }
}

impl fmt::Display for ConjugateIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryMorphism {
    image_a: Word,
    image_b: Word,
    certificate: Option<Certificate>,
}

impl BinaryMorphism {
    pub fn new(image_a: Word, image_b: Word) -> Result<Self, MorphismError> {
        if image_a.is_empty() || image_b.is_empty() {
            return Err(MorphismError::Erasing);
        }
        Ok(BinaryMorphism {
            image_a,
            image_b,
            certificate: None,
        })
    }

    pub fn from_certificate(certificate: Certificate) -> Self {
        let (image_a, image_b) = certificate.images();
        BinaryMorphism {
            image_a,
            image_b,
            certificate: Some(certificate),
        }
    }

    pub fn identity() -> Self {
        Self::from_certificate(Certificate::identity())
    }

    pub fn exchange() -> Self {
        Self::from_certificate(Certificate(vec![Generator::E]))
    }

    pub fn phi() -> Self {
        Self::from_certificate(Certificate(vec![Generator::Phi]))
    }

    /// `a ↦ ba, b ↦ a`, which is Sturmian but not standard, so it has no certificate.
    pub fn phi_tilde() -> Self {
        BinaryMorphism {
            image_a: Word::from_letters(vec![Letter::B, Letter::A]),
            image_b: Word::letter(Letter::A),
            certificate: None,
        }
    }

    pub fn image(&self, c: Letter) -> &Word {
        match c {
            Letter::A => &self.image_a,
            Letter::B => &self.image_b,
        }
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        self.certificate.as_ref()
    }

    pub fn same_images(&self, other: &BinaryMorphism) -> bool {
        self.image_a == other.image_a && self.image_b == other.image_b
    }

    /// `|ψ(ab)|`.
    pub fn image_len_ab(&self) -> usize {
        self.image_a.len() + self.image_b.len()
    }

    pub fn apply(&self, x: &[Letter]) -> Word {
        let mut out = Word::empty();
        for &c in x {
            out.extend_from(self.image(c));
        }
        out
    }

    pub fn apply_stream(&self, x: &WordStream) -> WordStream {
        let psi = self.clone();
        let x = x.clone();
        // Non-erasing: the image of a length-L prefix has at least L letters.
        WordStream::new(move |len: usize| psi.apply(&x.prefix(len)))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &BinaryMorphism) -> BinaryMorphism {
        let certificate = match (&self.certificate, &other.certificate) {
            (Some(c1), Some(c2)) => Some(c1.then(c2)),
            _ => None,
        };
        BinaryMorphism {
            image_a: self.apply(&other.image_a),
            image_b: self.apply(&other.image_b),
            certificate,
        }
    }

    pub fn power(&self, m: usize) -> BinaryMorphism {
        let mut acc = BinaryMorphism::identity();
        if m > 0 && self.certificate.is_none() {
            acc.certificate = None;
        }
        for _ in 0..m {
            acc = self.compose(&acc);
        }
        acc
    }

    /// `E ∘ self ∘ E`.
    pub fn exchange_conjugate(&self) -> BinaryMorphism {
        let e = BinaryMorphism::exchange();
        e.compose(self).compose(&e)
    }

    pub fn is_prolongable(&self, c: Letter) -> bool {
        let img = self.image(c);
        img.len() >= 2 && img[0] == c
    }

    /// `ψ^ω(c)`.
    pub fn fixed_point(&self, c: Letter) -> Result<WordStream, MorphismError> {
        if !self.is_prolongable(c) {
            return Err(MorphismError::NotProlongable(c));
        }
        let psi = self.clone();
        Ok(WordStream::new(move |len: usize| {
            // x = ψ(x): the image of letter i lands right after ψ(x[..i]).
            let mut x = psi.image(c).clone();
            let mut i = 1;
            while x.len() < len {
                let next = psi.image(x[i]).clone();
                x.extend_from(&next);
                i += 1;
            }
            x
        }))
    }

    /// The word `u` of length `k` with `ψ(w)·u = u·ψ_k(w)`: the common prefix of
    /// `ψ(a)^ω` and `ψ(b)^ω`.
    pub fn conjugating_word(&self, k: usize) -> Result<Word, MorphismError> {
        let (ia, ib) = (&self.image_a, &self.image_b);
        (0..k)
            .map(|i| {
                let c = ia[i % ia.len()];
                if c == ib[i % ib.len()] {
                    Ok(c)
                } else {
                    Err(MorphismError::NoCommonPrefix(k))
                }
            })
            .collect()
    }

    /// The right conjugate `ψ_k`, defined for `0 ≤ k ≤ |ψ(ab)| − 2`.
    pub fn right_conjugate(&self, k: ConjugateIndex) -> Result<BinaryMorphism, MorphismError> {
        if self.certificate.is_none() {
            return Err(MorphismError::NoCertificate);
        }
        let max = self.image_len_ab() as i64 - 2;
        if k.value() < 0 || k.value() > max {
            return Err(MorphismError::IndexOutOfRange {
                index: k.value(),
                max,
            });
        }
        let k = k.value() as usize;
        let u = self.conjugating_word(k)?;
        let conj = |img: &Word| Word::from_letters(img.concat(&u)[k..].to_vec());
        Ok(BinaryMorphism {
            image_a: conj(&self.image_a),
            image_b: conj(&self.image_b),
            certificate: None,
        })
    }

    /// Séébold's criterion: the standard morphism generates an infinite word iff
    /// it lies in `{φ, Eφ, φE, EφE}⁺ \ ({Eφ}⁺ ∪ {φE}⁺)`.
    pub fn generates_infinite_word(&self) -> Result<bool, MorphismError> {
        let cert = self
            .certificate
            .as_ref()
            .ok_or(MorphismError::NoCertificate)?;
        Ok(in_generating_set(cert.reduced().generators()))
    }
}

/// Membership of an `EE`-free generator word in
/// `{φ, Eφ, φE, EφE}⁺ \ ({Eφ}⁺ ∪ {φE}⁺)`.
///
/// An `EE`-free word parses into the blocks `φ, Eφ, φE, EφE` exactly when it
/// contains a `φ`, so only the two excluded families need checking.
fn in_generating_set(gens: &[Generator]) -> bool {
    use Generator::{Phi, E};
    let has_phi = gens.contains(&Phi);
    let repeats = |block: [Generator; 2]| {
        gens.len().is_multiple_of(2) && gens.chunks(2).all(|pair| pair == block)
    };
    has_phi && !repeats([E, Phi]) && !repeats([Phi, E])
}

impl FromStr for BinaryMorphism {
    type Err = MorphismError;

    /// Parses `a->W1;b->W2`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let fail = |reason: &str| MorphismError::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let (lhs, rhs) = s.split_once(';').ok_or_else(|| fail("expected `;`"))?;
        let image_a = lhs
            .strip_prefix("a->")
            .ok_or_else(|| fail("expected `a->` first"))?
            .parse::<Word>()?;
        let image_b = rhs
            .strip_prefix("b->")
            .ok_or_else(|| fail("expected `b->` second"))?
            .parse::<Word>()?;
        BinaryMorphism::new(image_a, image_b)
    }
}

impl fmt::Display for BinaryMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a->{};b->{}", self.image_a, self.image_b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::w;

    fn m(s: &str) -> BinaryMorphism {
        s.parse().unwrap()
    }

    fn cert(s: &str) -> BinaryMorphism {
        BinaryMorphism::from_certificate(s.parse().unwrap())
    }

    fn idx(k: i64) -> ConjugateIndex {
        ConjugateIndex::new(k).unwrap()
    }

    #[test]
    fn generators() {
        assert!(BinaryMorphism::exchange().same_images(&m("a->b;b->a")));
        assert!(BinaryMorphism::phi().same_images(&m("a->ab;b->a")));
        assert!(BinaryMorphism::phi_tilde().same_images(&m("a->ba;b->a")));
        assert_eq!(BinaryMorphism::phi_tilde().certificate(), None);
        assert_eq!(
            BinaryMorphism::phi().certificate().unwrap().to_string(),
            "p"
        );
    }

    #[test]
    fn parse_display() {
        let psi = m("a->ab;b->ababa");
        assert_eq!(psi.to_string(), "a->ab;b->ababa");
        assert_eq!(m("a->ab;b->ababa"), psi);
        assert!(matches!(
            "a->;b->a".parse::<BinaryMorphism>(),
            Err(MorphismError::Erasing)
        ));
        assert!("a->ab,b->a".parse::<BinaryMorphism>().is_err());
        assert!("b->a;a->ab".parse::<BinaryMorphism>().is_err());
        assert!("a->ac;b->a".parse::<BinaryMorphism>().is_err());
        assert!("pEx".parse::<Certificate>().is_err());
    }

    #[test]
    fn apply_words() {
        assert_eq!(BinaryMorphism::phi().apply(&w("ab")), w("aba"));
        assert_eq!(BinaryMorphism::exchange().apply(&w("abab")), w("baba"));
        assert_eq!(m("a->ab;b->ababa").apply(&w("ab")), w("abababa"));
    }

    #[test]
    fn composition() {
        let (e, phi) = (BinaryMorphism::exchange(), BinaryMorphism::phi());
        assert!(e.compose(&e).same_images(&BinaryMorphism::identity()));
        let pe = phi.compose(&e);
        assert!(pe.same_images(&m("a->a;b->ab")));
        assert_eq!(pe.certificate().unwrap().to_string(), "pE");
        assert!(e.compose(&phi).same_images(&m("a->ba;b->b")));
        assert!(cert("pE").same_images(&pe));
        // uncertified operand drops the certificate
        assert_eq!(
            phi.compose(&BinaryMorphism::phi_tilde()).certificate(),
            None
        );
    }

    #[test]
    fn powers() {
        let phi = BinaryMorphism::phi();
        assert!(phi.power(2).same_images(&m("a->aba;b->ab")));
        assert!(phi.power(0).same_images(&BinaryMorphism::identity()));
        assert_eq!(phi.power(3).certificate().unwrap().to_string(), "ppp");
        assert_eq!(m("a->ab;b->b").power(2).certificate(), None);
    }

    #[test]
    fn prolongable() {
        let phi = BinaryMorphism::phi();
        assert!(phi.is_prolongable(Letter::A));
        assert!(!phi.is_prolongable(Letter::B));
        assert!(!BinaryMorphism::exchange().is_prolongable(Letter::A));
        assert!(matches!(
            phi.fixed_point(Letter::B),
            Err(MorphismError::NotProlongable(Letter::B))
        ));
    }

    #[test]
    fn fibonacci_fixed_point() {
        let f = BinaryMorphism::phi().fixed_point(Letter::A).unwrap();
        assert_eq!(f.prefix(34), w("abaababaabaababaababaabaababaabaab"));
        let image = BinaryMorphism::phi().apply_stream(&f);
        assert_eq!(image.prefix(500), f.prefix(500));
    }

    #[test]
    fn fixed_point_with_slow_growth() {
        let psi = m("a->ab;b->b");
        assert_eq!(psi.fixed_point(Letter::A).unwrap().prefix(6), w("abbbbb"));
    }

    #[test]
    fn right_conjugates_of_phi() {
        let phi = BinaryMorphism::phi();
        assert!(phi.right_conjugate(idx(0)).unwrap().same_images(&phi));
        assert!(phi
            .right_conjugate(idx(1))
            .unwrap()
            .same_images(&BinaryMorphism::phi_tilde()));
        assert!(matches!(
            phi.right_conjugate(idx(2)),
            Err(MorphismError::IndexOutOfRange { index: 2, max: 1 })
        ));
        assert!(matches!(
            phi.right_conjugate(ConjugateIndex::SENTINEL),
            Err(MorphismError::IndexOutOfRange { index: -1, .. })
        ));
        assert!(matches!(
            BinaryMorphism::phi_tilde().right_conjugate(idx(0)),
            Err(MorphismError::NoCertificate)
        ));
    }

    #[test]
    fn right_conjugate_of_sigma_silver() {
        // σ for [0;(2)] is a ↦ ab, b ↦ aba; u = a.
        let sigma = cert("pEEpE");
        assert!(sigma.same_images(&m("a->ab;b->aba")));
        let xi = sigma.right_conjugate(idx(1)).unwrap();
        assert_eq!(sigma.conjugating_word(1).unwrap(), w("a"));
        for z in [w("a"), w("b")] {
            assert_eq!(
                sigma.apply(&z).concat(&w("a")),
                w("a").concat(&xi.apply(&z))
            );
        }
        assert!(xi.same_images(&m("a->ba;b->baa")));
    }

    #[test]
    fn seebold_criterion() {
        assert!(BinaryMorphism::phi().generates_infinite_word().unwrap());
        assert!(!cert("pE").generates_infinite_word().unwrap());
        assert!(!cert("pEpE").generates_infinite_word().unwrap());
        assert!(!cert("EpEp").generates_infinite_word().unwrap());
        assert!(cert("EpE").generates_infinite_word().unwrap());
        assert!(cert("pEEpEpE").generates_infinite_word().unwrap());
        assert!(!cert("").generates_infinite_word().unwrap());
        assert!(!cert("EE").generates_infinite_word().unwrap());
        // E·E cancels: pE·Ep = pp
        assert!(cert("pEEp").generates_infinite_word().unwrap());
        assert!(matches!(
            BinaryMorphism::phi_tilde().generates_infinite_word(),
            Err(MorphismError::NoCertificate)
        ));
    }

    #[test]
    fn exchange_conjugate_involution() {
        let sigma = cert("pEEpEpE");
        assert!(sigma
            .exchange_conjugate()
            .exchange_conjugate()
            .same_images(&sigma));
    }
}
