//! Singular words `w_n`, adjoining singular words `v_n`, Melançon's
//! factorization of `c_α`, and the decomposition of every conjugate of `c_α`
//! and `c_{1−α}` into generalized adjoining singular words when
//! `α = [0; 2, (r)]`.
//!
//! For such `α` the `k`-th conjugate of `c_α` is
//!
//! ```text
//! (σ^m)_k(c_α) = ∏_{j ≥ m−1} (σ^{j+1})_t(b),    k = q_{m+1} − p,  t = q_{m+1} − q_m − p,
//! ```
//!
//! where `(σ^{j+1})_{-1}(b)` stands for `v_j`. [`Decomposer`] computes `m`,
//! `p` and `t` from `k` and produces the factors lazily.

use std::sync::{Arc, Mutex};

use thiserror::Error;

use crate::cf::{CfError, PeriodicCf};
use crate::generator::{self, DirectiveSequence, GenError};
use crate::morphism::{BinaryMorphism, ConjugateIndex, MorphismError};
use crate::word::{Letter, Word, WordError, WordStream};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SingularError {
    #[error(transparent)]
    Gen(#[from] GenError),
    #[error(transparent)]
    Morphism(#[from] MorphismError),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("index {0} out of range; singular words start at -2")]
    IndexOutOfRange(i64),
    #[error(
        "{0} is not of the form [0;2,(r)]; no decomposition of conjugates into \
         powers of σ is known when d_1 ≥ 2 or the period is longer"
    )]
    UnsupportedShape(PeriodicCf),
}

impl From<CfError> for SingularError {
    fn from(e: CfError) -> Self {
        SingularError::Gen(GenError::Cf(e))
    }
}

fn is_odd(n: i64) -> bool {
    n.rem_euclid(2) == 1
}

/// `x · body · y⁻¹` with `(x, y) = (a, b)` for odd `n` and `(b, a)` otherwise.
fn wrap_by_parity(n: i64, body: &Word) -> Result<Word, WordError> {
    let (x, y) = if is_odd(n) {
        (Letter::A, Letter::B)
    } else {
        (Letter::B, Letter::A)
    };
    Word::letter(x).concat(body).strip_suffix(&Word::letter(y))
}

/// The singular word `w_n` of `c_α`, `n ≥ −2`.
pub fn singular_word(cf: &PeriodicCf, n: i64) -> Result<Word, SingularError> {
    cf.type_i_form()?;
    match n {
        ..=-3 => Err(SingularError::IndexOutOfRange(n)),
        -2 => Ok(Word::empty()),
        -1 => Ok(Word::letter(Letter::A)),
        0 => Ok(Word::letter(Letter::B)),
        _ => {
            let s = generator::standard_word(&DirectiveSequence::Cf(cf.clone()), n)?;
            Ok(wrap_by_parity(n, &s)?)
        }
    }
}

/// The adjoining singular word `v_n = x s_{n+1}^{d_{n+2} − 1} s_n y⁻¹`, `n ≥ −2`.
pub fn adjoining_singular(cf: &PeriodicCf, n: i64) -> Result<Word, SingularError> {
    cf.type_i_form()?;
    if n < -2 {
        return Err(SingularError::IndexOutOfRange(n));
    }
    if n == -2 {
        return Ok(Word::empty());
    }
    let dir = DirectiveSequence::Cf(cf.clone());
    let s = generator::standard_words(&dir, n + 1)?;
    // s[k + 1] holds s_k
    let s_next = &s[(n + 2) as usize];
    let s_n = &s[(n + 1) as usize];
    let d = dir
        .get((n + 2) as usize)
        .expect("continued fractions are infinite");
    let body = s_next.pow((d - 1) as usize).concat(s_n);
    Ok(wrap_by_parity(n, &body)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FactorKind {
    /// An adjoining singular word `v_j`.
    V,
    /// A singular word `w_j`.
    W,
    /// A grouped Melançon factor `(v_{2j} w_{2j+1})^{d_{2j+3}}`.
    Group,
    /// `(σ^{j+1})_t(letter)` with `t ≥ 0`.
    ConjugatedImage,
}

/// One factor of a decomposition, indexed by `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factor {
    pub j: i64,
    pub kind: FactorKind,
    pub conjugate_index: ConjugateIndex,
    pub letter_arg: Letter,
    pub word: Word,
}

/// Both product forms of `c_α` up to index `J`:
/// `∏_{j=-1}^{J} v_j` and `∏_{j=-1}^{J} (v_{2j} w_{2j+1})^{d_{2j+3}}`.
#[derive(Debug, Clone)]
pub struct MelanconFactors {
    pub flat: Vec<Factor>,
    pub grouped: Vec<Factor>,
}

impl MelanconFactors {
    pub fn flat_word(&self) -> Word {
        concat_factors(&self.flat)
    }

    pub fn grouped_word(&self) -> Word {
        concat_factors(&self.grouped)
    }
}

pub fn concat_factors(factors: &[Factor]) -> Word {
    let mut out = Word::empty();
    for f in factors {
        out.extend_from(&f.word);
    }
    out
}

pub fn melancon_factors(cf: &PeriodicCf, depth: i64) -> Result<MelanconFactors, SingularError> {
    let dir = DirectiveSequence::Cf(cf.clone());
    let v_factor = |j: i64| -> Result<Factor, SingularError> {
        Ok(Factor {
            j,
            kind: FactorKind::V,
            conjugate_index: ConjugateIndex::SENTINEL,
            letter_arg: Letter::B,
            word: adjoining_singular(cf, j)?,
        })
    };
    let flat = (-1..=depth).map(v_factor).collect::<Result<Vec<_>, _>>()?;
    let grouped = (-1..=depth)
        .map(|j| -> Result<Factor, SingularError> {
            let d = dir
                .get((2 * j + 3) as usize)
                .expect("continued fractions are infinite");
            let pair = adjoining_singular(cf, 2 * j)?.concat(&singular_word(cf, 2 * j + 1)?);
            Ok(Factor {
                j,
                kind: FactorKind::Group,
                conjugate_index: ConjugateIndex::SENTINEL,
                letter_arg: Letter::B,
                word: pair.pow(d as usize),
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(MelanconFactors { flat, grouped })
}

/// Where a shift `k` falls: `q_m − 1 ≤ k ≤ q_{m+1} − 2` and `k = q_{m+1} − p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Location {
    pub m: usize,
    pub p: usize,
}

/// Which characteristic word is being decomposed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    /// `c_α`, factors `(σ^{j+1})_t(b)`.
    Alpha,
    /// `c_{1−α} = E(c_α)`, factors `(σ̂^{j+1})_t(a)`.
    Complement,
}

struct DecomposerInner {
    cf: PeriodicCf,
    r: u64,
    c_alpha: WordStream,
    sigma: BinaryMorphism,
    sigma_hat: BinaryMorphism,
    /// `q_0, q_1, …`, extended on demand.
    q: Mutex<Vec<usize>>,
    /// `σ^0, σ^1, …` and `σ̂^0, σ̂^1, …`.
    sigma_powers: Mutex<Vec<BinaryMorphism>>,
    sigma_hat_powers: Mutex<Vec<BinaryMorphism>>,
}

/// Decomposes conjugates of `c_α` and `c_{1−α}` for `α = [0; 2, (r)]`.
///
/// Cloning is cheap; clones share their caches of convergents and powers of
/// `σ`, so it is fine to hand clones to several threads.
#[derive(Clone)]
pub struct Decomposer {
    inner: Arc<DecomposerInner>,
}

impl Decomposer {
    pub fn new(cf: &PeriodicCf) -> Result<Self, SingularError> {
        let unsupported = || SingularError::UnsupportedShape(cf.clone());
        let form = cf.type_i_form().map_err(|_| unsupported())?;
        if form.d1() != 1 || form.n() != 2 {
            return Err(unsupported());
        }
        let aligned = form.to_cf();
        let sigma = generator::build_sigma(&aligned)?;
        let sigma_hat = generator::build_sigma_hat(&aligned)?;
        Ok(Decomposer {
            inner: Arc::new(DecomposerInner {
                r: form.d(2),
                c_alpha: generator::characteristic_word(&aligned)?,
                cf: aligned,
                sigma_powers: Mutex::new(vec![BinaryMorphism::identity(), sigma.clone()]),
                sigma_hat_powers: Mutex::new(vec![BinaryMorphism::identity(), sigma_hat.clone()]),
                sigma,
                sigma_hat,
                q: Mutex::new(vec![1, 2]),
            }),
        })
    }

    /// The continued fraction in the aligned form `[0; 2, (r)]`.
    pub fn cf(&self) -> &PeriodicCf {
        &self.inner.cf
    }

    pub fn r(&self) -> u64 {
        self.inner.r
    }

    pub fn sigma(&self) -> &BinaryMorphism {
        &self.inner.sigma
    }

    pub fn sigma_hat(&self) -> &BinaryMorphism {
        &self.inner.sigma_hat
    }

    pub fn c_alpha(&self) -> &WordStream {
        &self.inner.c_alpha
    }

    pub fn target_word(&self, target: Target) -> WordStream {
        match target {
            Target::Alpha => self.inner.c_alpha.clone(),
            Target::Complement => self.inner.c_alpha.exchanged(),
        }
    }

    /// `q_n`, the length of `s_n`.
    pub fn q(&self, n: usize) -> usize {
        let mut q = self.inner.q.lock().expect("convergent cache poisoned");
        while q.len() <= n {
            let len = q.len();
            let next = (self.inner.r as usize)
                .checked_mul(q[len - 1])
                .and_then(|x| x.checked_add(q[len - 2]))
                .expect("q_n exceeds the address space");
            q.push(next);
        }
        q[n]
    }

    /// `σ^m` (or `σ̂^m`), with certificate.
    pub fn sigma_power(&self, m: usize, target: Target) -> BinaryMorphism {
        let (cache, base) = match target {
            Target::Alpha => (&self.inner.sigma_powers, &self.inner.sigma),
            Target::Complement => (&self.inner.sigma_hat_powers, &self.inner.sigma_hat),
        };
        let mut powers = cache.lock().expect("power cache poisoned");
        while powers.len() <= m {
            let next = base.compose(powers.last().expect("σ^0 is cached"));
            powers.push(next);
        }
        powers[m].clone()
    }

    /// The unique `m` with `q_m − 1 ≤ k ≤ q_{m+1} − 2`, and `p = q_{m+1} − k`.
    pub fn locate(&self, k: usize) -> Location {
        let mut m = 0;
        while k > self.q(m + 1) - 2 {
            m += 1;
        }
        Location {
            m,
            p: self.q(m + 1) - k,
        }
    }

    /// `t = q_{m+1} − q_m − p` for the shift `k`.
    pub fn conjugate_index(&self, k: usize) -> ConjugateIndex {
        let Location { m, p } = self.locate(k);
        let t = (self.q(m + 1) - self.q(m)) as i64 - p as i64;
        ConjugateIndex::new(t).expect("p ≤ q_{m+1} − q_m + 1 keeps t ≥ −1")
    }

    /// `v_j` for `j ≥ −2`.
    pub fn v(&self, j: i64) -> Result<Word, SingularError> {
        adjoining_singular(&self.inner.cf, j)
    }

    /// The factor with index `j`: `(σ^{j+1})_t(b)`, or `v_j` when `t = −1`
    /// (and the `E`-images for the complementary word).
    pub fn factor(
        &self,
        j: i64,
        t: ConjugateIndex,
        target: Target,
    ) -> Result<Factor, SingularError> {
        if j < -1 {
            return Err(SingularError::IndexOutOfRange(j));
        }
        let letter_arg = match target {
            Target::Alpha => Letter::B,
            Target::Complement => Letter::A,
        };
        let (kind, word) = if t.is_sentinel() {
            let v = self.v(j)?;
            let word = match target {
                Target::Alpha => v,
                Target::Complement => v.exchanged(),
            };
            (FactorKind::V, word)
        } else {
            let power = self.sigma_power((j + 1) as usize, target);
            let conj = power.right_conjugate(t)?;
            (FactorKind::ConjugatedImage, conj.image(letter_arg).clone())
        };
        Ok(Factor {
            j,
            kind,
            conjugate_index: t,
            letter_arg,
            word,
        })
    }

    /// `u⁻¹ v_{m−1} v_m ⋯` with `u` the prefix of `v_{m−1}` of length
    /// `q_{m+1} − q_m + 1 − p`.
    pub fn removal_form(&self, k: usize) -> Result<RemovalForm, SingularError> {
        let Location { m, p } = self.locate(k);
        let first = m as i64 - 1;
        let u_len = self.q(m + 1) - self.q(m) + 1 - p;
        let u = self.v(first)?.prefix(u_len);
        Ok(RemovalForm {
            decomposer: self.clone(),
            k,
            m,
            p,
            u,
        })
    }

    /// The decomposition of the `k`-th conjugate of `c_α` (or `c_{1−α}`), with
    /// `depth + 1` factors materialized.
    pub fn decompose(
        &self,
        k: usize,
        depth: usize,
        target: Target,
    ) -> Result<ConjugateDecomposition, SingularError> {
        let Location { m, p } = self.locate(k);
        let decomposition = ConjugateDecomposition {
            inner: Arc::new(DecompositionInner {
                decomposer: self.clone(),
                target,
                k,
                m,
                p,
                conj_index: self.conjugate_index(k),
                factors: Mutex::new(Vec::new()),
            }),
        };
        decomposition.ensure(depth + 1)?;
        Ok(decomposition)
    }

    pub fn conjugate_decomposition(
        &self,
        k: usize,
        depth: usize,
    ) -> Result<ConjugateDecomposition, SingularError> {
        self.decompose(k, depth, Target::Alpha)
    }

    pub fn conjugate_decomposition_hat(
        &self,
        k: usize,
        depth: usize,
    ) -> Result<ConjugateDecomposition, SingularError> {
        self.decompose(k, depth, Target::Complement)
    }
}

/// `u⁻¹ ∏_{j ≥ m−1} v_j`, the prefix-removal form of the `k`-th conjugate.
#[derive(Clone)]
pub struct RemovalForm {
    decomposer: Decomposer,
    pub k: usize,
    pub m: usize,
    pub p: usize,
    pub u: Word,
}

impl RemovalForm {
    /// `v_{m−1+i}`.
    pub fn tail_factor(&self, i: usize) -> Result<Word, SingularError> {
        self.decomposer.v(self.m as i64 - 1 + i as i64)
    }

    pub fn stream(&self) -> Result<WordStream, SingularError> {
        let decomposer = self.decomposer.clone();
        let first = self.m as i64 - 1;
        let product = WordStream::from_factors(move |i| {
            decomposer
                .v(first + i as i64)
                .expect("adjoining singular words exist for every j ≥ −1")
        });
        Ok(product.strip_prefix(&self.u)?)
    }
}

struct DecompositionInner {
    decomposer: Decomposer,
    target: Target,
    k: usize,
    m: usize,
    p: usize,
    conj_index: ConjugateIndex,
    factors: Mutex<Vec<Factor>>,
}

/// `∏_{j ≥ m−1} (σ^{j+1})_t(b)` for one shift `k`; factors are produced on
/// demand and cached.
#[derive(Clone)]
pub struct ConjugateDecomposition {
    inner: Arc<DecompositionInner>,
}

impl ConjugateDecomposition {
    pub fn k(&self) -> usize {
        self.inner.k
    }

    pub fn m(&self) -> usize {
        self.inner.m
    }

    pub fn p(&self) -> usize {
        self.inner.p
    }

    /// `m − 1`.
    pub fn first_index(&self) -> i64 {
        self.inner.m as i64 - 1
    }

    pub fn conjugate_index(&self) -> ConjugateIndex {
        self.inner.conj_index
    }

    pub fn target(&self) -> Target {
        self.inner.target
    }

    /// Materializes at least `count` factors.
    pub fn ensure(&self, count: usize) -> Result<(), SingularError> {
        let mut factors = self.inner.factors.lock().expect("factor cache poisoned");
        while factors.len() < count {
            let j = self.first_index() + factors.len() as i64;
            let factor =
                self.inner
                    .decomposer
                    .factor(j, self.inner.conj_index, self.inner.target)?;
            factors.push(factor);
        }
        Ok(())
    }

    /// The materialized factors, in order.
    pub fn factors(&self) -> Vec<Factor> {
        self.inner
            .factors
            .lock()
            .expect("factor cache poisoned")
            .clone()
    }

    /// The `i`-th factor (index `j = m − 1 + i`), extending the list if needed.
    pub fn factor(&self, i: usize) -> Result<Factor, SingularError> {
        self.ensure(i + 1)?;
        Ok(self.inner.factors.lock().expect("factor cache poisoned")[i].clone())
    }

    /// Concatenation of the materialized factors.
    pub fn concat(&self) -> Word {
        concat_factors(&self.factors())
    }

    /// The whole infinite product.
    pub fn stream(&self) -> WordStream {
        let this = self.clone();
        WordStream::from_factors(move |i| {
            this.factor(i)
                .expect("decomposition factors exist for every j ≥ m − 1")
                .word
        })
    }

    /// The conjugate this decomposition describes, computed independently by
    /// dropping `k` letters from the target word.
    pub fn expected(&self) -> WordStream {
        self.inner
            .decomposer
            .target_word(self.inner.target)
            .shift(self.inner.k)
    }

    /// Whether the product agrees with the `k`-th conjugate on `len` letters.
    pub fn verify(&self, len: usize) -> bool {
        self.stream().prefix(len) == self.expected().prefix(len)
    }
}

/// Outcome of checking `(EψE)_k = E ψ_k E` on letter images.
#[derive(Debug, Clone)]
pub struct ExchangeRecord {
    pub k: usize,
    /// `(EψE)_k`.
    pub lhs: BinaryMorphism,
    /// `E ψ_k E`.
    pub rhs: BinaryMorphism,
    pub holds: bool,
}

pub fn exchange_conjugation(
    psi: &BinaryMorphism,
    k: usize,
) -> Result<ExchangeRecord, SingularError> {
    let lhs = psi.exchange_conjugate().right_conjugate(k.into())?;
    let rhs = psi.right_conjugate(k.into())?.exchange_conjugate();
    Ok(ExchangeRecord {
        k,
        holds: lhs.same_images(&rhs),
        lhs,
        rhs,
    })
}
