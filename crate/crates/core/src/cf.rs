//! Eventually periodic continued fractions `[0; a_1, a_2, …]`, their
//! convergents, Sturm-number classification and exact quadratic-surd values.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_integer::{Integer, Roots};
use num_rational::Ratio;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CfError {
    #[error("cannot parse continued fraction {input:?}: {reason}")]
    Parse { input: String, reason: String },
    #[error("partial quotients must be positive")]
    ZeroEntry,
    #[error("period must be nonempty")]
    EmptyPeriod,
    #[error("{0} is not a type (i) Sturm number")]
    NotTypeI(PeriodicCf),
    #[error("{0} is not a Sturm number")]
    NotSturm(PeriodicCf),
    #[error("partial quotients are indexed from 1")]
    ZeroIndex,
    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),
    #[error("invalid quadratic surd: {0}")]
    InvalidSurd(&'static str),
}

/// `[0; a_1, …, a_k, (b_1, …, b_m)]` with the period repeated forever.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PeriodicCf {
    preperiod: Vec<u64>,
    period: Vec<u64>,
}

/// Sturm-number type of a continued fraction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SturmType {
    /// `[0; 1+d_1, (d_2, …, d_n)]` with `d_n ≥ d_1 ≥ 1`.
    TypeI,
    /// `[0; 1, d_1, (d_2, …, d_n)]` with `d_n ≥ d_1`.
    TypeII,
    NotSturm,
}

impl fmt::Display for SturmType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SturmType::TypeI => "type-i",
            SturmType::TypeII => "type-ii",
            SturmType::NotSturm => "not-sturm",
        })
    }
}

/// `p_n / q_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Convergent {
    pub index: usize,
    pub p: u128,
    pub q: u128,
}

/// The directive data of a type (i) Sturm number
/// `[0; 1+d_1, (d_2, …, d_n)]` with `d_n ≥ d_1 ≥ 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeIForm {
    d1: u64,
    /// `(d_2, …, d_n)`.
    tail: Vec<u64>,
}

impl TypeIForm {
    pub fn d1(&self) -> u64 {
        self.d1
    }

    /// The period length `n` (so that the period carries `d_2, …, d_n`).
    pub fn n(&self) -> usize {
        self.tail.len() + 1
    }

    /// `d_i` for `i ≥ 1`, extended by `d_i = d_{i+n-1}` for `i ≥ 2`.
    pub fn d(&self, i: usize) -> u64 {
        assert!(i >= 1, "directive entries are indexed from 1");
        if i == 1 {
            self.d1
        } else {
            self.tail[(i - 2) % self.tail.len()]
        }
    }

    pub fn d_n(&self) -> u64 {
        *self.tail.last().expect("nonempty period")
    }

    pub fn to_cf(&self) -> PeriodicCf {
        PeriodicCf {
            preperiod: vec![self.d1 + 1],
            period: self.tail.clone(),
        }
    }
}

impl PeriodicCf {
    pub fn new(preperiod: Vec<u64>, period: Vec<u64>) -> Result<Self, CfError> {
        if period.is_empty() {
            return Err(CfError::EmptyPeriod);
        }
        if preperiod.iter().chain(&period).any(|&a| a == 0) {
            return Err(CfError::ZeroEntry);
        }
        Ok(PeriodicCf { preperiod, period })
    }

    pub fn preperiod(&self) -> &[u64] {
        &self.preperiod
    }

    pub fn period(&self) -> &[u64] {
        &self.period
    }

    /// `a_i` for `i ≥ 1`.
    pub fn partial_quotient(&self, i: usize) -> Result<u64, CfError> {
        if i == 0 {
            return Err(CfError::ZeroIndex);
        }
        Ok(self.a(i))
    }

    fn a(&self, i: usize) -> u64 {
        let k = self.preperiod.len();
        if i <= k {
            self.preperiod[i - 1]
        } else {
            self.period[(i - k - 1) % self.period.len()]
        }
    }

    /// Convergents `p_0/q_0 … p_n/q_n`, seeded with `p_0 = 0, p_1 = 1, q_0 = 1, q_1 = a_1`.
    pub fn convergents(&self, n: usize) -> Result<Vec<Convergent>, CfError> {
        let mut out = Vec::with_capacity(n + 1);
        out.push(Convergent {
            index: 0,
            p: 0,
            q: 1,
        });
        if n == 0 {
            return Ok(out);
        }
        out.push(Convergent {
            index: 1,
            p: 1,
            q: u128::from(self.a(1)),
        });
        for i in 2..=n {
            let a = u128::from(self.a(i));
            let (prev, prev2) = (out[i - 1], out[i - 2]);
            let p = a
                .checked_mul(prev.p)
                .and_then(|x| x.checked_add(prev2.p))
                .ok_or(CfError::Overflow("convergent numerator"))?;
            let q = a
                .checked_mul(prev.q)
                .and_then(|x| x.checked_add(prev2.q))
                .ok_or(CfError::Overflow("convergent denominator"))?;
            out.push(Convergent { index: i, p, q });
        }
        Ok(out)
    }

    pub fn convergent(&self, n: usize) -> Result<Convergent, CfError> {
        Ok(*self
            .convergents(n)?
            .last()
            .expect("at least one convergent"))
    }

    /// The same number written with the shortest preperiod and period.
    pub fn canonical(&self) -> PeriodicCf {
        let m = self.period.len();
        let min_len = (1..=m)
            .find(|&d| m.is_multiple_of(d) && (d..m).all(|i| self.period[i] == self.period[i - d]))
            .unwrap_or(m);
        let mut period = self.period[..min_len].to_vec();
        let mut preperiod = self.preperiod.clone();
        while let (Some(&last_pre), Some(&last_per)) = (preperiod.last(), period.last()) {
            if last_pre != last_per {
                break;
            }
            preperiod.pop();
            period.rotate_right(1);
        }
        PeriodicCf { preperiod, period }
    }

    /// The canonical form with the preperiod unrolled to exactly `len`
    /// entries, or `None` when the shortest preperiod is already longer.
    pub fn aligned(&self, len: usize) -> Option<PeriodicCf> {
        let PeriodicCf {
            mut preperiod,
            mut period,
        } = self.canonical();
        if preperiod.len() > len {
            return None;
        }
        while preperiod.len() < len {
            preperiod.push(period[0]);
            period.rotate_left(1);
        }
        Some(PeriodicCf { preperiod, period })
    }

    pub fn classify(&self) -> SturmType {
        if self.type_i_form().is_ok() {
            return SturmType::TypeI;
        }
        if let Some(cf) = self.aligned(2) {
            let (a1, d1) = (cf.preperiod[0], cf.preperiod[1]);
            let d_n = *cf.period.last().expect("nonempty period");
            if a1 == 1 && d_n >= d1 {
                return SturmType::TypeII;
            }
        }
        SturmType::NotSturm
    }

    /// The directive data of a type (i) Sturm number.
    pub fn type_i_form(&self) -> Result<TypeIForm, CfError> {
        let not_type_i = || CfError::NotTypeI(self.clone());
        let cf = self.aligned(1).ok_or_else(not_type_i)?;
        let a1 = cf.preperiod[0];
        if a1 < 2 {
            return Err(not_type_i());
        }
        let form = TypeIForm {
            d1: a1 - 1,
            tail: cf.period,
        };
        if form.d_n() >= form.d1 {
            Ok(form)
        } else {
            Err(not_type_i())
        }
    }

    /// The continued fraction of `1 − α`, mapping type (i) to type (ii) and
    /// back.
    pub fn complement(&self) -> Result<PeriodicCf, CfError> {
        match self.classify() {
            SturmType::TypeI => {
                let form = self.type_i_form()?;
                // keep the caller's period when it is already in the aligned shape
                let period = if self.preperiod.len() == 1 {
                    self.period.clone()
                } else {
                    form.tail
                };
                Ok(PeriodicCf {
                    preperiod: vec![1, form.d1],
                    period,
                })
            }
            SturmType::TypeII => {
                let cf = if self.preperiod.len() == 2 {
                    self.clone()
                } else {
                    self.aligned(2).expect("type (ii) aligns to two entries")
                };
                Ok(PeriodicCf {
                    preperiod: vec![cf.preperiod[1] + 1],
                    period: cf.period,
                })
            }
            SturmType::NotSturm => Err(CfError::NotSturm(self.clone())),
        }
    }

    /// The exact value of `α` as a quadratic surd in `(0, 1)`.
    pub fn surd_value(&self) -> Result<QuadraticSurd, CfError> {
        let ovf = |what| move || CfError::Overflow(what);
        // y = [b_1; b_2, …, b_m, y] is the fixed point of the period's Möbius map.
        let [[pa, pb], [pc, pd]] = mobius_product(&self.period).ok_or_else(ovf("period matrix"))?;
        // c·y² + (d − a)·y − b = 0, take the root > 1.
        let u = pa - pd;
        let disc = (pd - pa)
            .checked_mul(pd - pa)
            .and_then(|x| x.checked_add(4 * pb * pc))
            .ok_or_else(ovf("discriminant"))?;
        let (root_coeff, radicand) = split_square(disc);
        let v = 2 * pc;

        // α = [0; a_1, …, a_k, y] = (e·y + f)/(g·y + h).
        let prefix = mobius_product(&self.preperiod).ok_or_else(ovf("preperiod matrix"))?;
        let [[e, f], [g, h]] = mat_mul([[0, 1], [1, 0]], prefix).ok_or_else(ovf("matrix"))?;

        let mul = |x: i128, y: i128| x.checked_mul(y).ok_or(CfError::Overflow("surd value"));
        let x1 = mul(e, u)? + mul(f, v)?;
        let y1 = mul(e, root_coeff)?;
        let x2 = mul(g, u)? + mul(h, v)?;
        let y2 = mul(g, root_coeff)?;
        // Rationalize (x1 + y1√r)/(x2 + y2√r).
        let p0 = mul(x1, x2)? - mul(mul(y1, y2)?, radicand)?;
        let s = mul(y1, x2)? - mul(x1, y2)?;
        let q0 = mul(x2, x2)? - mul(mul(y2, y2)?, radicand)?;
        let g = p0.gcd(&s).gcd(&q0);
        let (mut p, mut s, mut q) = (p0 / g, s / g, q0 / g);
        if s < 0 {
            p = -p;
            s = -s;
            q = -q;
        }
        let d = mul(mul(s, s)?, radicand)?;
        QuadraticSurd::new(p, d, q)
    }
}

type Mat = [[i128; 2]; 2];

fn mat_mul(x: Mat, y: Mat) -> Option<Mat> {
    let entry = |i: usize, j: usize| {
        x[i][0]
            .checked_mul(y[0][j])?
            .checked_add(x[i][1].checked_mul(y[1][j])?)
    };
    Some([[entry(0, 0)?, entry(0, 1)?], [entry(1, 0)?, entry(1, 1)?]])
}

/// `∏ [[a_i, 1], [1, 0]]`, the matrix of `x ↦ [a_1; a_2, …, a_k, x]`.
fn mobius_product(entries: &[u64]) -> Option<Mat> {
    entries.iter().try_fold([[1, 0], [0, 1]], |acc, &a| {
        mat_mul(acc, [[i128::from(a), 1], [1, 0]])
    })
}

/// `n = c² · r` with `r` squarefree.
fn split_square(n: i128) -> (i128, i128) {
    let mut coeff = 1;
    let mut rest = n;
    let mut f = 2;
    while f * f <= rest {
        while rest % (f * f) == 0 {
            rest /= f * f;
            coeff *= f;
        }
        f += 1;
    }
    (coeff, rest)
}

impl FromStr for PeriodicCf {
    type Err = CfError;

    /// Parses `0;a1,a2,...,(b1,...,bm)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let fail = |reason: &str| CfError::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let body = s
            .strip_prefix("0;")
            .ok_or_else(|| fail("expected leading `0;`"))?;
        let open = body
            .find('(')
            .ok_or_else(|| fail("expected a parenthesized period"))?;
        let inner = body[open + 1..]
            .strip_suffix(')')
            .ok_or_else(|| fail("period must close with `)` at the end"))?;
        let pre_text = &body[..open];
        let pre_text = if pre_text.is_empty() {
            pre_text
        } else {
            pre_text
                .strip_suffix(',')
                .ok_or_else(|| fail("expected `,` before the period"))?
        };
        let parse_list = |text: &str| -> Result<Vec<u64>, CfError> {
            if text.is_empty() {
                return Ok(Vec::new());
            }
            text.split(',')
                .map(|t| {
                    t.parse::<u64>()
                        .map_err(|_| fail("entries must be positive integers"))
                })
                .collect()
        };
        let preperiod = parse_list(pre_text)?;
        let period = parse_list(inner)?;
        PeriodicCf::new(preperiod, period)
    }
}

impl fmt::Display for PeriodicCf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u64]| {
            v.iter()
                .map(|a| a.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        f.write_str("0;")?;
        if !self.preperiod.is_empty() {
            write!(f, "{},", join(&self.preperiod))?;
        }
        write!(f, "({})", join(&self.period))
    }
}

/// The real number `(P + √D) / Q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuadraticSurd {
    p: i128,
    d: i128,
    q: i128,
}

impl QuadraticSurd {
    pub fn new(p: i128, d: i128, q: i128) -> Result<Self, CfError> {
        if q == 0 {
            return Err(CfError::InvalidSurd("denominator is zero"));
        }
        if d <= 0 || is_square(d) {
            return Err(CfError::InvalidSurd(
                "radicand must be a positive nonsquare",
            ));
        }
        Ok(QuadraticSurd { p, d, q })
    }

    pub fn p(&self) -> i128 {
        self.p
    }

    pub fn d(&self) -> i128 {
        self.d
    }

    pub fn q(&self) -> i128 {
        self.q
    }

    pub fn to_f64(&self) -> f64 {
        (self.p as f64 + (self.d as f64).sqrt()) / self.q as f64
    }

    /// `⌊n·α + ρ⌋` in exact integer arithmetic.
    pub fn floor_multiple(&self, n: u64, rho: Ratio<i64>) -> Result<i128, CfError> {
        let ovf = || CfError::Overflow("floor_multiple");
        let n = i128::from(n);
        let (rn, rd) = (i128::from(*rho.numer()), i128::from(*rho.denom()));
        // n(P + √D)/Q + rn/rd = (n·rd·P + rn·Q + n·rd·√D) / (Q·rd)
        let x = n
            .checked_mul(rd)
            .and_then(|t| t.checked_mul(self.p))
            .and_then(|t| t.checked_add(rn.checked_mul(self.q)?))
            .ok_or_else(ovf)?;
        let y = n.checked_mul(rd).ok_or_else(ovf)?;
        let z = self.q.checked_mul(rd).ok_or_else(ovf)?;
        floor_surd(x, y, self.d, z).ok_or_else(ovf)
    }

    /// `⌈n·α + ρ⌉` in exact integer arithmetic.
    pub fn ceil_multiple(&self, n: u64, rho: Ratio<i64>) -> Result<i128, CfError> {
        // ⌈x⌉ = −⌊−x⌋, with −(nα + ρ) = n·(−P − √D)/Q − ρ = n·(P + √D)/(−Q) − ρ.
        let negated = QuadraticSurd {
            p: self.p,
            d: self.d,
            q: -self.q,
        };
        Ok(-negated.floor_multiple(n, -rho)?)
    }

    /// Expands the surd back into an eventually periodic continued fraction.
    /// The value must lie in `(0, 1)`.
    pub fn to_cf(&self) -> Result<PeriodicCf, CfError> {
        let (mut p, mut d, mut q) = (self.p, self.d, self.q);
        if (d - p * p) % q != 0 {
            let aq = q.abs();
            p = p
                .checked_mul(aq)
                .ok_or(CfError::Overflow("surd expansion"))?;
            d = d
                .checked_mul(q * q)
                .ok_or(CfError::Overflow("surd expansion"))?;
            q *= aq;
        }
        let a0 = floor_surd(p, 1, d, q).ok_or(CfError::Overflow("surd expansion"))?;
        if a0 != 0 {
            return Err(CfError::InvalidSurd("value is not in (0, 1)"));
        }
        let mut seen: HashMap<(i128, i128), usize> = HashMap::new();
        let mut quotients: Vec<u64> = Vec::new();
        let (mut p, mut q) = step(p, d, q, a0);
        loop {
            if let Some(&start) = seen.get(&(p, q)) {
                let period = quotients[start..].to_vec();
                quotients.truncate(start);
                return PeriodicCf::new(quotients, period);
            }
            seen.insert((p, q), quotients.len());
            let a = floor_surd(p, 1, d, q).ok_or(CfError::Overflow("surd expansion"))?;
            quotients.push(
                u64::try_from(a)
                    .map_err(|_| CfError::InvalidSurd("nonpositive partial quotient"))?,
            );
            (p, q) = step(p, d, q, a);
        }
    }
}

/// `x = (p + √d)/q ↦ 1/(x − a) = (p' + √d)/q'`; requires `q | d − p²`.
fn step(p: i128, d: i128, q: i128, a: i128) -> (i128, i128) {
    let p_next = a * q - p;
    (p_next, (d - p_next * p_next) / q)
}

fn is_square(n: i128) -> bool {
    n >= 0 && {
        let r = Roots::sqrt(&n);
        r * r == n
    }
}

/// `⌊(x + y·√d) / z⌋` for `d ≥ 0`, `z ≠ 0`.
fn floor_surd(x: i128, y: i128, d: i128, z: i128) -> Option<i128> {
    let (x, y, z) = if z < 0 { (-x, -y, -z) } else { (x, y, z) };
    let radicand = y.checked_mul(y)?.checked_mul(d)?;
    let root = Roots::sqrt(&radicand);
    let exact = root * root == radicand;
    let numer = if y >= 0 {
        // (x + √N)/z ≥ k  ⇔  ⌊√N⌋ ≥ kz − x
        x.checked_add(root)?
    } else {
        // (x − √N)/z ≥ k  ⇔  x − kz ≥ ⌈√N⌉
        x.checked_sub(if exact { root } else { root + 1 })?
    };
    Some(Integer::div_floor(&numer, &z))
}

impl fmt::Display for QuadraticSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q > 0 {
            write!(f, "({} + √{})/{}", self.p, self.d, self.q)
        } else {
            write!(f, "({} - √{})/{}", -self.p, self.d, -self.q)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cf(s: &str) -> PeriodicCf {
        s.parse().unwrap()
    }

    fn qs(n: &[u128]) -> Vec<u128> {
        n.to_vec()
    }

    #[test]
    fn parse_and_print() {
        let x = cf("0;2,(3)");
        assert_eq!(x.preperiod(), &[2]);
        assert_eq!(x.period(), &[3]);
        assert_eq!(x.to_string(), "0;2,(3)");
        assert_eq!(cf("0;(2)").to_string(), "0;(2)");
        assert_eq!(cf("0;3,(2,3)").to_string(), "0;3,(2,3)");
        for bad in [
            "2,(3)", "0;2,3", "0;2(3)", "0;2,()", "0;0,(1)", "0;2,(x)", "0;(3),1",
        ] {
            assert!(bad.parse::<PeriodicCf>().is_err(), "{bad} should not parse");
        }
    }

    #[test]
    fn partial_quotients() {
        assert_eq!(cf("0;2,(3)").partial_quotient(1).unwrap(), 2);
        assert_eq!(cf("0;2,(3)").partial_quotient(5).unwrap(), 3);
        assert_eq!(cf("0;(2)").partial_quotient(4).unwrap(), 2);
        assert_eq!(cf("0;(2)").partial_quotient(0), Err(CfError::ZeroIndex));
    }

    #[test]
    fn convergent_denominators() {
        let q = |s: &str, n| -> Vec<u128> {
            cf(s).convergents(n).unwrap().iter().map(|c| c.q).collect()
        };
        assert_eq!(q("0;2,(3)", 3), qs(&[1, 2, 7, 23]));
        assert_eq!(q("0;2,(1)", 4), qs(&[1, 2, 3, 5, 8]));
        assert_eq!(q("0;(2)", 3), qs(&[1, 2, 5, 12]));
        let c = cf("0;2,(3)").convergent(3).unwrap();
        assert_eq!((c.p, c.q), (10, 23));
    }

    #[test]
    fn classification() {
        assert_eq!(cf("0;2,(1)").classify(), SturmType::TypeI);
        assert_eq!(cf("0;1,1,(4)").classify(), SturmType::TypeII);
        assert_eq!(cf("0;(2)").classify(), SturmType::TypeI);
        // [0;(3,1)] = [0;3,(1,3)]: d_1 = 2, d_3 = 3 ≥ 2.
        assert_eq!(cf("0;(3,1)").classify(), SturmType::TypeI);
        // [0;(1,3)] = [0;1,3,(1,3)]: d_1 = 3, d_n = 3.
        assert_eq!(cf("0;(1,3)").classify(), SturmType::TypeII);
        // [0;3,(1)]: d_1 = 2 > d_n = 1.
        assert_eq!(cf("0;3,(1)").classify(), SturmType::NotSturm);
        // preperiod too long
        assert_eq!(cf("0;2,5,(1)").classify(), SturmType::NotSturm);
        // redundant writing of a type (i) number
        assert_eq!(cf("0;2,3,3,(3,3)").classify(), SturmType::TypeI);
        assert_eq!(cf("0;(1)").classify(), SturmType::TypeII);
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(cf("0;2,3,3,(3,3)").canonical(), cf("0;2,(3)"));
        assert_eq!(cf("0;(2)").aligned(1).unwrap(), cf("0;2,(2)"));
        assert_eq!(cf("0;(3,1)").aligned(1).unwrap(), cf("0;3,(1,3)"));
        assert_eq!(cf("0;2,5,(1)").aligned(1), None);
        let form = cf("0;(3,1)").type_i_form().unwrap();
        assert_eq!(
            (form.d1(), form.n(), form.d(2), form.d(3), form.d(4)),
            (2, 3, 1, 3, 1)
        );
    }

    #[test]
    fn complements() {
        assert_eq!(cf("0;2,(3)").complement().unwrap(), cf("0;1,1,(3)"));
        assert_eq!(cf("0;2,(1)").complement().unwrap(), cf("0;1,1,(1)"));
        assert_eq!(cf("0;3,(2,3)").complement().unwrap(), cf("0;1,2,(2,3)"));
        assert_eq!(cf("0;1,2,(2,3)").complement().unwrap(), cf("0;3,(2,3)"));
        assert!(matches!(
            cf("0;3,(1)").complement(),
            Err(CfError::NotSturm(_))
        ));
        let a = cf("0;3,(2,3)").surd_value().unwrap().to_f64();
        let b = cf("0;1,2,(2,3)").surd_value().unwrap().to_f64();
        assert!((a + b - 1.0).abs() < 1e-12);
    }

    #[test]
    fn surd_values() {
        let s = cf("0;2,(3)").surd_value().unwrap();
        assert_eq!((s.p(), s.d(), s.q()), (-1, 13, 6));
        assert_eq!(s.to_string(), "(-1 + √13)/6");
        let s = cf("0;2,(1)").surd_value().unwrap();
        assert_eq!(s.to_string(), "(3 - √5)/2");
        let s = cf("0;(2)").surd_value().unwrap();
        assert_eq!((s.p(), s.d(), s.q()), (-1, 2, 1));
    }

    #[test]
    fn surd_round_trip() {
        for s in [
            "0;2,(3)",
            "0;2,(1)",
            "0;(2)",
            "0;3,(2,3)",
            "0;1,1,(4)",
            "0;5,1,7,(2,9,4)",
        ] {
            let x = cf(s);
            assert_eq!(
                x.surd_value().unwrap().to_cf().unwrap(),
                x.canonical(),
                "{s}"
            );
        }
    }

    #[test]
    fn floor_multiples() {
        let zero = Ratio::from_integer(0);
        let fib = cf("0;2,(1)").surd_value().unwrap();
        assert_eq!(fib.floor_multiple(0, zero).unwrap(), 0);
        assert_eq!(fib.floor_multiple(5, zero).unwrap(), 1);
        let ex = cf("0;2,(3)").surd_value().unwrap();
        assert_eq!(ex.floor_multiple(7, zero).unwrap(), 3);
        assert_eq!(ex.ceil_multiple(7, zero).unwrap(), 4);
        assert_eq!(ex.ceil_multiple(0, zero).unwrap(), 0);
        // ⌊7α − 1/2⌋ with 7α ≈ 3.0389
        assert_eq!(ex.floor_multiple(7, Ratio::new(-1, 2)).unwrap(), 2);
    }

    #[test]
    fn split_square_extracts_factors() {
        assert_eq!(split_square(8), (2, 2));
        assert_eq!(split_square(13), (1, 13));
        assert_eq!(split_square(72), (6, 2));
    }
}
