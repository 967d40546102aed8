//! The ring QSym of quasisymmetric functions, in the monomial basis.
//!
//! An element is a finitely supported integer combination `Σ c_α M_α`. Two
//! products are provided: the overlapping shuffle `⊛` (the ring product, which
//! realizes disjoint union of posets) and the concatenation `∗` (which realizes
//! ordinal sum).

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;
use std::sync::atomic::{AtomicBool, Ordering as AtomicOrdering};

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::Value;

use crate::composition::Composition;
use crate::error::Error;

static CROSS_CHECK: AtomicBool = AtomicBool::new(false);

/// When enabled, every composition-level `⊛` is computed both by pattern
/// enumeration and by the three-term recurrence, and the results are asserted
/// equal.
pub fn set_cross_check(enabled: bool) {
    CROSS_CHECK.store(enabled, AtomicOrdering::Relaxed);
}

pub fn cross_check_enabled() -> bool {
    CROSS_CHECK.load(AtomicOrdering::Relaxed)
}

/// A quasisymmetric function with integer coefficients in the monomial basis.
///
/// No stored coefficient is zero; the zero element has empty support.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QSymElement {
    terms: BTreeMap<Composition, BigInt>,
}

impl QSymElement {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `M_∅ = 1`.
    pub fn one() -> Self {
        Self::monomial(Composition::empty())
    }

    /// `M_α`.
    pub fn monomial(alpha: Composition) -> Self {
        Self::term(alpha, BigInt::one())
    }

    /// `c · M_α`.
    pub fn term(alpha: Composition, coeff: impl Into<BigInt>) -> Self {
        let mut out = Self::zero();
        out.add_term(alpha, coeff.into());
        out
    }

    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Composition, C)>,
        C: Into<BigInt>,
    {
        let mut out = Self::zero();
        for (alpha, c) in terms {
            out.add_term(alpha, c.into());
        }
        out
    }

    /// Adds `c · M_α` in place, dropping the entry if it cancels.
    pub fn add_term(&mut self, alpha: Composition, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(alpha) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Composition::is_empty)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, alpha: &Composition) -> BigInt {
        self.terms.get(alpha).cloned().unwrap_or_default()
    }

    /// Terms in lex-descending order of their compositions.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Composition, &BigInt)> {
        self.terms.iter().rev()
    }

    pub fn support(&self) -> impl Iterator<Item = &Composition> {
        self.terms.keys().rev()
    }

    /// Maximum weight over the support (0 for constants and zero).
    pub fn degree(&self) -> usize {
        self.terms.keys().map(Composition::weight).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.terms.keys().map(Composition::weight).all_equal()
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        QSymElement {
            terms: self.terms.iter().map(|(a, x)| (a.clone(), x * c)).collect(),
        }
    }

    /// Overlapping shuffle product `p ⊛ q`, the ring multiplication.
    pub fn mul_oshuffle(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        let mut cache: HashMap<(&Composition, &Composition), QSymElement> = HashMap::new();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let prod = cache
                    .entry((a, b))
                    .or_insert_with(|| oshuffle_compositions(a, b));
                let c = x * y;
                for (g, z) in &prod.terms {
                    out.add_term(g.clone(), z * &c);
                }
            }
        }
        out
    }

    /// Concatenation product `p ∗ q`, the bilinear extension of `M_α ∗ M_β = M_{α∗β}`.
    pub fn mul_concat(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(a.concat(b), x * y);
            }
        }
        out
    }

    /// The involution `ρ` reversing every support composition.
    pub fn rho(&self) -> Self {
        QSymElement {
            terms: self
                .terms
                .iter()
                .map(|(a, c)| (a.reverse(), c.clone()))
                .collect(),
        }
    }

    /// The term with the lex-greatest composition.
    pub fn leading_term(&self) -> Result<(&Composition, &BigInt), Error> {
        self.terms.iter().next_back().ok_or(Error::ZeroElement)
    }

    /// Whether the gcd of all coefficients is 1.
    pub fn is_primitive(&self) -> Result<bool, Error> {
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        Ok(self.content().is_one())
    }

    /// gcd of the coefficients (0 for the zero element).
    pub fn content(&self) -> BigInt {
        self.terms
            .values()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// If every support composition starts with a part 1, returns `q` with
    /// `self = M_(1) ∗ q`.
    pub fn strip_leading_one(&self) -> Option<Self> {
        if self.is_zero() || !self.terms.keys().all(|a| a.first() == Some(1)) {
            return None;
        }
        Some(QSymElement {
            terms: self
                .terms
                .iter()
                .map(|(a, c)| (a.tail().expect("non-empty"), c.clone()))
                .collect(),
        })
    }

    /// If every support composition ends with a part 1, returns `q` with
    /// `self = q ∗ M_(1)`.
    pub fn strip_trailing_one(&self) -> Option<Self> {
        if self.is_zero() || !self.terms.keys().all(|a| a.last() == Some(1)) {
            return None;
        }
        Some(QSymElement {
            terms: self
                .terms
                .iter()
                .map(|(a, c)| (a.init().expect("non-empty"), c.clone()))
                .collect(),
        })
    }

    /// Certifies irreducibility when `self = M_(1) ∗ q` or `self = q ∗ M_(1)`
    /// with `q` primitive. `Inconclusive` makes no claim either way.
    pub fn irreducible_by_lemma(&self) -> Result<IrreducibilityCertificate, Error> {
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        if self.is_constant() {
            return Err(Error::ConstantElement("irreducibility certificate needs a non-constant element"));
        }
        let primitive = |q: Option<QSymElement>| q.is_some_and(|q| q.content().is_one());
        if primitive(self.strip_leading_one()) {
            Ok(IrreducibilityCertificate::Left)
        } else if primitive(self.strip_trailing_one()) {
            Ok(IrreducibilityCertificate::Right)
        } else {
            Ok(IrreducibilityCertificate::Inconclusive)
        }
    }

    /// Substitutes `M_α = Σ_{i₁<…<i_ℓ} x_{i₁}^{α₁}⋯x_{i_ℓ}^{α_ℓ}` in the variables
    /// `x_1..x_k`, dropping monomials of total degree above `max_degree`.
    pub fn expand_truncated(&self, k: usize, max_degree: usize) -> TruncatedPolynomial {
        assert!(k >= 1, "need at least one variable");
        let mut poly = TruncatedPolynomial::new(k, max_degree);
        for (alpha, c) in &self.terms {
            if alpha.weight() > max_degree || alpha.len() > k {
                continue;
            }
            for idx in (0..k).combinations(alpha.len()) {
                let mut exps = vec![0u32; k];
                for (&i, &p) in idx.iter().zip(alpha.parts()) {
                    exps[i] = p as u32;
                }
                poly.add_term(exps, c.clone());
            }
        }
        poly
    }

    /// `{"terms": [[[1,2], 1], [[1,1,1], 2]]}`, support sorted lex-descending.
    pub fn to_json_value(&self) -> Value {
        let terms = self
            .terms()
            .map(|(a, c)| {
                let parts = a.parts().iter().map(|&p| Value::from(p)).collect::<Vec<_>>();
                let coeff: serde_json::Number = c.to_string().parse().expect("integer literal");
                Value::Array(vec![Value::Array(parts), Value::Number(coeff)])
            })
            .collect();
        let mut obj = serde_json::Map::new();
        obj.insert("terms".into(), Value::Array(terms));
        Value::Object(obj)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("serializable")
    }

    pub fn from_json_value(v: &Value) -> Result<Self, Error> {
        let bad = |m: &str| Error::Json(m.to_string());
        let terms = v
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing \"terms\" array"))?;
        let mut out = Self::zero();
        for t in terms {
            let pair = t.as_array().filter(|p| p.len() == 2).ok_or_else(|| bad("term must be [composition, coefficient]"))?;
            let alpha: Composition =
                serde_json::from_value(pair[0].clone()).map_err(|e| Error::Json(e.to_string()))?;
            let coeff = match &pair[1] {
                Value::Number(n) => n
                    .to_string()
                    .parse::<BigInt>()
                    .map_err(|_| bad("coefficient must be an integer"))?,
                _ => return Err(bad("coefficient must be an integer")),
            };
            if out.terms.contains_key(&alpha) {
                return Err(Error::Json(format!("duplicate composition {alpha}")));
            }
            if coeff.is_zero() {
                return Err(Error::Json(format!("zero coefficient on {alpha}")));
            }
            out.add_term(alpha, coeff);
        }
        Ok(out)
    }

    pub fn from_json(s: &str) -> Result<Self, Error> {
        let v: Value = serde_json::from_str(s).map_err(|e| Error::Json(e.to_string()))?;
        Self::from_json_value(&v)
    }
}

/// Outcome of the `M_(1)`-factor irreducibility test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum IrreducibilityCertificate {
    Left,
    Right,
    Inconclusive,
}

impl IrreducibilityCertificate {
    pub fn is_certified(self) -> bool {
        !matches!(self, IrreducibilityCertificate::Inconclusive)
    }
}

impl fmt::Display for IrreducibilityCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IrreducibilityCertificate::Left => "left",
            IrreducibilityCertificate::Right => "right",
            IrreducibilityCertificate::Inconclusive => "inconclusive",
        })
    }
}

impl Add for &QSymElement {
    type Output = QSymElement;
    fn add(self, rhs: &QSymElement) -> QSymElement {
        let mut out = self.clone();
        for (a, c) in &rhs.terms {
            out.add_term(a.clone(), c.clone());
        }
        out
    }
}

impl Sub for &QSymElement {
    type Output = QSymElement;
    fn sub(self, rhs: &QSymElement) -> QSymElement {
        self + &(-rhs)
    }
}

impl Neg for &QSymElement {
    type Output = QSymElement;
    fn neg(self) -> QSymElement {
        QSymElement {
            terms: self.terms.iter().map(|(a, c)| (a.clone(), -c)).collect(),
        }
    }
}

/// Compact rendering `M_232 + 2M_2311 + …`, lex-descending. Compositions with
/// a part above 9 fall back to `M_(1,10)`; the constant term prints as its
/// coefficient.
impl fmt::Display for QSymElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (alpha, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if alpha.is_empty() {
                write!(f, "{mag}")?;
                continue;
            }
            if !mag.is_one() {
                write!(f, "{mag}")?;
            }
            match alpha.compact() {
                Some(s) => write!(f, "M_{s}")?,
                None => write!(f, "M_{alpha}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for QSymElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses the compact rendering produced by `Display`.
impl FromStr for QSymElement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || Error::Json(format!("cannot parse quasisymmetric function {s:?}"));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact == "0" {
            return Ok(Self::zero());
        }
        // split into signed chunks, keeping separators that sit outside parentheses
        let mut chunks: Vec<(bool, String)> = Vec::new();
        let mut depth = 0usize;
        let mut cur = String::new();
        let mut neg = false;
        for ch in compact.chars() {
            match ch {
                '(' => depth += 1,
                ')' => depth = depth.checked_sub(1).ok_or_else(bad)?,
                _ => {}
            }
            if depth == 0 && (ch == '+' || ch == '-') {
                if !cur.is_empty() {
                    chunks.push((neg, std::mem::take(&mut cur)));
                } else if !chunks.is_empty() || ch == '+' {
                    return Err(bad());
                }
                neg = ch == '-';
                continue;
            }
            cur.push(ch);
        }
        if cur.is_empty() {
            return Err(bad());
        }
        chunks.push((neg, cur));

        let mut out = Self::zero();
        for (neg, chunk) in chunks {
            let (coeff, alpha) = match chunk.find("M_") {
                Some(pos) => {
                    let c = if pos == 0 {
                        BigInt::one()
                    } else {
                        chunk[..pos].parse::<BigInt>().map_err(|_| bad())?
                    };
                    (c, chunk[pos + 2..].parse::<Composition>()?)
                }
                None => (chunk.parse::<BigInt>().map_err(|_| bad())?, Composition::empty()),
            };
            out.add_term(alpha, if neg { -coeff } else { coeff });
        }
        Ok(out)
    }
}

/// A map `[ℓ] → [n]` and `[m] → [n]`, both strictly increasing, jointly onto `[n]`.
///
/// Positions are 0-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OverlapPattern {
    pub f: Vec<usize>,
    pub g: Vec<usize>,
    pub n: usize,
}

impl OverlapPattern {
    /// `wt_{α,β}(f,g)`: part `k` is the sum of the parts of `α` and `β` landing on `k`.
    pub fn weight(&self, alpha: &Composition, beta: &Composition) -> Composition {
        let mut parts = vec![0usize; self.n];
        for (&k, &a) in self.f.iter().zip(alpha.parts()) {
            parts[k] += a;
        }
        for (&k, &b) in self.g.iter().zip(beta.parts()) {
            parts[k] += b;
        }
        Composition::from_parts_unchecked(parts)
    }
}

/// All overlap patterns for lengths `ℓ` and `m`, by increasing target size.
pub fn overlap_patterns(l: usize, m: usize) -> Vec<OverlapPattern> {
    let mut out = Vec::new();
    for n in l.max(m)..=l + m {
        let shared = l + m - n;
        for f in (0..n).combinations(l) {
            let rest: Vec<usize> = (0..n).filter(|k| !f.contains(k)).collect();
            for both in f.iter().copied().combinations(shared) {
                let mut g: Vec<usize> = rest.iter().copied().chain(both).collect();
                g.sort_unstable();
                out.push(OverlapPattern { f: f.clone(), g, n });
            }
        }
    }
    out
}

/// `α ⊛ β` by summing `M_{wt(f,g)}` over every overlap pattern.
pub fn oshuffle_compositions_direct(alpha: &Composition, beta: &Composition) -> QSymElement {
    let mut out = QSymElement::zero();
    for pat in overlap_patterns(alpha.len(), beta.len()) {
        out.add_term(pat.weight(alpha, beta), BigInt::one());
    }
    out
}

/// `α ⊛ β` by the recurrence
/// `(α₁)∗(α′⊛β) + (β₁)∗(α⊛β′) + (α₁+β₁)∗(α′⊛β′)`, memoized on suffix positions.
pub fn oshuffle_compositions_rec(alpha: &Composition, beta: &Composition) -> QSymElement {
    fn go(
        a: &[usize],
        b: &[usize],
        i: usize,
        j: usize,
        memo: &mut HashMap<(usize, usize), QSymElement>,
    ) -> QSymElement {
        if i == a.len() {
            return QSymElement::monomial(Composition::from_parts_unchecked(b[j..].to_vec()));
        }
        if j == b.len() {
            return QSymElement::monomial(Composition::from_parts_unchecked(a[i..].to_vec()));
        }
        if let Some(v) = memo.get(&(i, j)) {
            return v.clone();
        }
        let mut out = QSymElement::zero();
        for (head, rest) in [
            (a[i], go(a, b, i + 1, j, memo)),
            (b[j], go(a, b, i, j + 1, memo)),
            (a[i] + b[j], go(a, b, i + 1, j + 1, memo)),
        ] {
            for (g, c) in rest.terms {
                out.add_term(g.prepend(head), c);
            }
        }
        memo.insert((i, j), out.clone());
        out
    }
    go(alpha.parts(), beta.parts(), 0, 0, &mut HashMap::new())
}

/// `α ⊛ β` by the default (direct) route, cross-checked against the
/// recurrence when [`set_cross_check`] is on.
pub fn oshuffle_compositions(alpha: &Composition, beta: &Composition) -> QSymElement {
    let direct = oshuffle_compositions_direct(alpha, beta);
    if cross_check_enabled() {
        let rec = oshuffle_compositions_rec(alpha, beta);
        assert_eq!(direct, rec, "overlapping shuffle routes disagree on {alpha} ⊛ {beta}");
    }
    direct
}

/// A polynomial in `k` commuting variables with integer coefficients, with
/// all monomials of total degree above a bound discarded.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncatedPolynomial {
    vars: usize,
    max_degree: usize,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl TruncatedPolynomial {
    pub fn new(vars: usize, max_degree: usize) -> Self {
        TruncatedPolynomial { vars, max_degree, terms: BTreeMap::new() }
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: BigInt) {
        assert_eq!(exps.len(), self.vars);
        if c.is_zero() || exps.iter().sum::<u32>() as usize > self.max_degree {
            return;
        }
        let entry = self.terms.entry(exps).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn coefficient(&self, exps: &[u32]) -> BigInt {
        self.terms.get(exps).cloned().unwrap_or_default()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigInt)> {
        self.terms.iter()
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.vars, other.vars);
        let mut out = TruncatedPolynomial::new(self.vars, self.max_degree.min(other.max_degree));
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let exps = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(exps, c1 * c2);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::comp;
    use proptest::prelude::*;

    fn q(terms: &[(Composition, i64)]) -> QSymElement {
        QSymElement::from_terms(terms.iter().cloned())
    }

    #[test]
    fn oshuffle_examples() {
        let expected = q(&[
            (comp![4, 2], 1),
            (comp![1, 5], 1),
            (comp![1, 2, 3], 1),
            (comp![1, 3, 2], 1),
            (comp![3, 1, 2], 1),
        ]);
        assert_eq!(oshuffle_compositions_direct(&comp![1, 2], &comp![3]), expected);
        assert_eq!(oshuffle_compositions_rec(&comp![1, 2], &comp![3]), expected);

        let two = q(&[(comp![1, 1], 2), (comp![2], 1)]);
        assert_eq!(oshuffle_compositions_direct(&comp![1], &comp![1]), two);
        assert_eq!(oshuffle_compositions_rec(&comp![1], &comp![1]), two);

        assert_eq!(
            oshuffle_compositions_direct(&comp![], &comp![2, 2]),
            QSymElement::monomial(comp![2, 2])
        );
        assert_eq!(oshuffle_compositions_rec(&comp![2], &comp![]), QSymElement::monomial(comp![2]));
    }

    #[test]
    fn pattern_counts() {
        // |S(ℓ,m,n)| = C(n,ℓ)·C(ℓ,ℓ+m−n); for ℓ=m=2 the total is 6+12+6 = 13
        assert_eq!(overlap_patterns(2, 2).len(), 13);
        assert_eq!(overlap_patterns(0, 0).len(), 1);
        for pat in overlap_patterns(3, 2) {
            let mut img: Vec<usize> = pat.f.iter().chain(&pat.g).copied().collect();
            img.sort_unstable();
            img.dedup();
            assert_eq!(img, (0..pat.n).collect::<Vec<_>>());
        }
    }

    #[test]
    fn mul_examples() {
        let m1 = QSymElement::monomial(comp![1]);
        let m2 = QSymElement::monomial(comp![2]);
        assert_eq!(m1.mul_oshuffle(&m1), q(&[(comp![1, 1], 2), (comp![2], 1)]));
        assert_eq!(QSymElement::zero().mul_oshuffle(&m1), QSymElement::zero());
        assert_eq!(
            (&m1 + &m2).mul_oshuffle(&m1),
            q(&[(comp![1, 1], 2), (comp![2], 1), (comp![2, 1], 1), (comp![1, 2], 1), (comp![3], 1)])
        );

        assert_eq!(m1.mul_concat(&m2), QSymElement::monomial(comp![1, 2]));
        assert_eq!(
            QSymElement::monomial(comp![1, 2]).mul_concat(&QSymElement::one()),
            QSymElement::monomial(comp![1, 2])
        );
        assert_eq!(
            m1.mul_concat(&q(&[(comp![1, 1], 2), (comp![2], 1)])),
            q(&[(comp![1, 1, 1], 2), (comp![1, 2], 1)])
        );
    }

    #[test]
    fn rho_examples() {
        assert_eq!(QSymElement::monomial(comp![1, 2]).rho(), QSymElement::monomial(comp![2, 1]));
        let pal = q(&[(comp![1, 1], 2), (comp![2], 1)]);
        assert_eq!(pal.rho(), pal);
        let lhs = QSymElement::monomial(comp![1, 2]).mul_oshuffle(&QSymElement::monomial(comp![3])).rho();
        let rhs = QSymElement::monomial(comp![2, 1]).mul_oshuffle(&QSymElement::monomial(comp![3]));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn leading_term_examples() {
        let p = q(&[(comp![1, 1, 1], 2), (comp![1, 2], 1)]);
        let (a, c) = p.leading_term().unwrap();
        assert_eq!((a.clone(), c.clone()), (comp![1, 2], BigInt::from(1)));
        let prod = QSymElement::monomial(comp![1, 2]).mul_oshuffle(&QSymElement::monomial(comp![3]));
        assert_eq!(prod.leading_term().unwrap().0, &comp![4, 2]);
        assert_eq!(QSymElement::one().leading_term().unwrap().0, &comp![]);
        assert_eq!(QSymElement::zero().leading_term(), Err(Error::ZeroElement));
    }

    #[test]
    fn primitivity() {
        assert!(q(&[(comp![1, 1], 2), (comp![2], 1)]).is_primitive().unwrap());
        assert!(!q(&[(comp![1, 1], 2), (comp![2], 4)]).is_primitive().unwrap());
        assert!(QSymElement::monomial(comp![1]).is_primitive().unwrap());
        assert!(QSymElement::zero().is_primitive().is_err());
    }

    #[test]
    fn lemma_certificate() {
        use IrreducibilityCertificate::*;
        assert_eq!(q(&[(comp![1, 1, 1], 2), (comp![1, 2], 1)]).irreducible_by_lemma(), Ok(Left));
        assert_eq!(QSymElement::monomial(comp![2]).irreducible_by_lemma(), Ok(Inconclusive));
        assert_eq!(q(&[(comp![1, 1], 2)]).irreducible_by_lemma(), Ok(Inconclusive));
        assert_eq!(q(&[(comp![2, 1], 1), (comp![1, 1, 1], 3)]).irreducible_by_lemma(), Ok(Right));
        assert!(QSymElement::zero().irreducible_by_lemma().is_err());
        assert!(QSymElement::one().irreducible_by_lemma().is_err());
    }

    #[test]
    fn expand_examples() {
        let p = QSymElement::monomial(comp![1]).expand_truncated(2, 1);
        assert_eq!(p.num_terms(), 2);
        assert_eq!(p.coefficient(&[1, 0]), BigInt::from(1));
        assert_eq!(p.coefficient(&[0, 1]), BigInt::from(1));

        let p = QSymElement::monomial(comp![1, 2]).expand_truncated(2, 3);
        assert_eq!(p.num_terms(), 1);
        assert_eq!(p.coefficient(&[1, 2]), BigInt::from(1));

        let p = QSymElement::monomial(comp![2]).expand_truncated(3, 2);
        assert_eq!(p.num_terms(), 3);
        for e in [[2, 0, 0], [0, 2, 0], [0, 0, 2]] {
            assert_eq!(p.coefficient(&e), BigInt::from(1));
        }
        assert_eq!(QSymElement::monomial(comp![2]).expand_truncated(3, 1).num_terms(), 0);
    }

    #[test]
    fn json_format() {
        let p = q(&[(comp![1, 1, 1], 2), (comp![1, 2], 1)]);
        assert_eq!(p.to_json(), r#"{"terms":[[[1,2],1],[[1,1,1],2]]}"#);
        assert_eq!(QSymElement::from_json(r#"{"terms": [[[1,2], 1], [[1,1,1], 2]]}"#).unwrap(), p);
        let big = QSymElement::term(comp![3], "123456789012345678901234567890".parse::<BigInt>().unwrap());
        assert_eq!(QSymElement::from_json(&big.to_json()).unwrap(), big);
        assert!(QSymElement::from_json(r#"{"terms": [[[1,0], 1]]}"#).is_err());
        assert!(QSymElement::from_json(r#"{"terms": [[[1], 1], [[1], 2]]}"#).is_err());
        assert!(QSymElement::from_json(r#"{"terms": [[[1], 1.5]]}"#).is_err());
    }

    #[test]
    fn compact_rendering() {
        let p = q(&[(comp![1, 1, 1], 2), (comp![1, 2], 1)]);
        assert_eq!(p.to_string(), "M_12 + 2M_111");
        assert_eq!("2M_111 + M_12".parse::<QSymElement>().unwrap(), p);
        let r = q(&[(comp![10], -1), (comp![], 3)]);
        assert_eq!(r.to_string(), "-M_(10) + 3");
        assert_eq!(r.to_string().parse::<QSymElement>().unwrap(), r);
        assert_eq!(QSymElement::zero().to_string(), "0");
    }

    fn arb_comp(max_len: usize) -> impl Strategy<Value = Composition> {
        prop::collection::vec(1usize..4, 0..=max_len).prop_map(|v| Composition::new(v).unwrap())
    }

    fn arb_elem() -> impl Strategy<Value = QSymElement> {
        prop::collection::vec((arb_comp(3), -3i64..4), 0..4)
            .prop_map(QSymElement::from_terms)
    }

    proptest! {
        #[test]
        fn direct_matches_recurrence(a in arb_comp(4), b in arb_comp(3)) {
            prop_assert_eq!(oshuffle_compositions_direct(&a, &b), oshuffle_compositions_rec(&a, &b));
        }

        #[test]
        fn leading_is_dotplus(a in arb_comp(4), b in arb_comp(3)) {
            let p = oshuffle_compositions_direct(&a, &b);
            let (lead, c) = p.leading_term().unwrap();
            prop_assert_eq!(lead, &a.dotplus(&b));
            prop_assert_eq!(c, &BigInt::from(1));
        }

        #[test]
        fn ring_axioms(p in arb_elem(), r in arb_elem(), s in arb_elem()) {
            prop_assert_eq!(p.mul_oshuffle(&r), r.mul_oshuffle(&p));
            prop_assert_eq!(p.mul_oshuffle(&r).mul_oshuffle(&s), p.mul_oshuffle(&r.mul_oshuffle(&s)));
            prop_assert_eq!(p.mul_oshuffle(&(&r + &s)), &p.mul_oshuffle(&r) + &p.mul_oshuffle(&s));
            prop_assert_eq!(p.mul_concat(&r).mul_concat(&s), p.mul_concat(&r.mul_concat(&s)));
            prop_assert_eq!(p.mul_oshuffle(&QSymElement::one()), p.clone());
            prop_assert_eq!(p.mul_concat(&QSymElement::one()), p.clone());
            prop_assert_eq!(p.rho().rho(), p.clone());
            prop_assert_eq!(p.mul_oshuffle(&r).rho(), p.rho().mul_oshuffle(&r.rho()));
        }

        #[test]
        fn concat_cancellation(p in arb_elem(), r in arb_elem()) {
            let m1 = QSymElement::monomial(comp![1]);
            prop_assert_eq!(m1.mul_concat(&p) == m1.mul_concat(&r), p == r);
            prop_assert_eq!(p.mul_concat(&m1) == r.mul_concat(&m1), p == r);
        }

        #[test]
        fn json_round_trip(p in arb_elem()) {
            prop_assert_eq!(QSymElement::from_json(&p.to_json()).unwrap(), p.clone());
            prop_assert_eq!(p.to_string().parse::<QSymElement>().unwrap(), p);
        }
    }
}
