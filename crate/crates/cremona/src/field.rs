//! Finite fields F_{p^n} as explicit polynomial residue rings.
//!
//! A [`FieldTower`] is F_p[t]/(m(t)) for a deterministic monic irreducible
//! modulus m of degree n. Elements are canonical residues (coefficient
//! vectors of length n, constant term first, entries reduced mod p), so
//! equality is plain coefficient equality and every operation is exact.
//!
//! The modulus for given (p, n) is the first irreducible polynomial in
//! ascending value order: candidate k has coefficients given by the base-p
//! digits of k with the constant term as least significant digit, plus a
//! monic leading 1. This makes field construction reproducible everywhere,
//! and in particular selects t³+t+1 for F₈ and t²+t+1 for F₄.

use serde::ser::SerializeSeq;
use serde::{Deserialize, Serialize, Serializer};
use std::fmt;
use std::sync::Arc;

/// Largest field order `make_field` accepts unless the caller raises it.
pub const DEFAULT_ORDER_BOUND: u64 = 4096;

/// F_{p^n} presented as F_p[t]/(modulus).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldTower {
    /// Prime characteristic.
    pub p: u16,
    /// Extension degree over F_p.
    pub n: usize,
    /// Monic defining polynomial, constant term first, length n+1.
    pub modulus: Vec<u16>,
}

/// An element of a [`FieldTower`]: the canonical residue of degree < n.
#[derive(Debug, Clone)]
pub struct FieldElement {
    /// The field this element lives in.
    pub tower: Arc<FieldTower>,
    /// Residue coefficients, constant term first, always exactly n entries.
    pub coeffs: Vec<u16>,
}

/// Errors from field construction and subfield operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldError {
    /// The requested characteristic is not a prime number.
    CompositeCharacteristic(u64),
    /// The extension degree must be at least 1.
    ZeroDegree,
    /// p^n exceeds the configured enumeration bound.
    OrderBoundExceeded { p: u64, n: u64, bound: u64 },
    /// The subfield index does not divide the extension degree.
    NotASubfield { m: usize, n: usize },
    /// An operation required a quadratic extension but [L:k] ≠ 2.
    DegreeNotQuadratic { l_degree: usize, k_degree: usize },
    /// The two towers have different characteristic or no inclusion.
    NoEmbedding { src: String, dst: String },
}

impl fmt::Display for FieldError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldError::CompositeCharacteristic(p) => {
                write!(f, "characteristic {p} is not prime")
            }
            FieldError::ZeroDegree => write!(f, "extension degree must be at least 1"),
            FieldError::OrderBoundExceeded { p, n, bound } => {
                write!(f, "field order {p}^{n} exceeds the enumeration bound {bound}")
            }
            FieldError::NotASubfield { m, n } => {
                write!(f, "degree {m} does not divide {n}, so F_p^{m} is not a subfield")
            }
            FieldError::DegreeNotQuadratic { l_degree, k_degree } => write!(
                f,
                "expected a quadratic extension, got [L:k] = {l_degree}/{k_degree}"
            ),
            FieldError::NoEmbedding { src, dst } => {
                write!(f, "no embedding of {src} into {dst}")
            }
        }
    }
}

impl std::error::Error for FieldError {}

// ---------------------------------------------------------------------------
// Dense univariate arithmetic over F_p (private helpers).
//
// Polynomials are Vec<u16>, constant term first, no trailing zeros except
// that the zero polynomial is the empty vector.
// ---------------------------------------------------------------------------

fn trim(mut v: Vec<u16>) -> Vec<u16> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn fp_add(a: &[u16], b: &[u16], p: u64) -> Vec<u16> {
    let mut out = vec![0u16; a.len().max(b.len())];
    for (i, slot) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0) as u64;
        let y = b.get(i).copied().unwrap_or(0) as u64;
        *slot = ((x + y) % p) as u16;
    }
    trim(out)
}

fn fp_neg(a: &[u16], p: u64) -> Vec<u16> {
    a.iter()
        .map(|&x| if x == 0 { 0 } else { (p - x as u64) as u16 })
        .collect()
}

fn fp_sub(a: &[u16], b: &[u16], p: u64) -> Vec<u16> {
    fp_add(a, &fp_neg(b, p), p)
}

fn fp_mul(a: &[u16], b: &[u16], p: u64) -> Vec<u16> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % p;
        }
    }
    trim(out.into_iter().map(|c| c as u16).collect())
}

fn fp_scale(a: &[u16], s: u64, p: u64) -> Vec<u16> {
    trim(a.iter().map(|&x| ((x as u64 * s) % p) as u16).collect())
}

/// Multiplicative inverse in F_p by Fermat's little theorem.
fn fp_inv_scalar(x: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    let mut base = x % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

/// Remainder of a modulo m, where m need not be monic (its lead is inverted).
fn fp_rem(a: &[u16], m: &[u16], p: u64) -> Vec<u16> {
    let m = trim(m.to_vec());
    assert!(!m.is_empty(), "division by the zero polynomial");
    let lead_inv = fp_inv_scalar(*m.last().unwrap() as u64, p);
    let mut r = trim(a.to_vec());
    while r.len() >= m.len() {
        let shift = r.len() - m.len();
        let q = r.last().copied().unwrap() as u64 * lead_inv % p;
        for (i, &mc) in m.iter().enumerate() {
            let sub = q * mc as u64 % p;
            let cur = r[shift + i] as u64;
            r[shift + i] = ((cur + p - sub) % p) as u16;
        }
        r = trim(r);
    }
    r
}

/// Monic greatest common divisor.
fn fp_gcd(mut a: Vec<u16>, mut b: Vec<u16>, p: u64) -> Vec<u16> {
    a = trim(a);
    b = trim(b);
    while !b.is_empty() {
        let r = fp_rem(&a, &b, p);
        a = b;
        b = r;
    }
    if a.is_empty() {
        return a;
    }
    let inv = fp_inv_scalar(*a.last().unwrap() as u64, p);
    fp_scale(&a, inv, p)
}

/// base^e mod m.
fn fp_powmod(base: &[u16], mut e: u64, m: &[u16], p: u64) -> Vec<u16> {
    let mut acc = vec![1u16];
    let mut b = fp_rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = fp_rem(&fp_mul(&acc, &b, p), m, p);
        }
        b = fp_rem(&fp_mul(&b, &b, p), m, p);
        e >>= 1;
    }
    acc
}

/// Inverse of a modulo m (extended Euclid); None when gcd(a, m) ≠ 1.
fn fp_invmod(a: &[u16], m: &[u16], p: u64) -> Option<Vec<u16>> {
    // Invariant maintained mod m: r0 = s0·a and r1 = s1·a.
    let mut r0 = trim(m.to_vec());
    let mut r1 = fp_rem(a, m, p);
    let mut s0: Vec<u16> = Vec::new();
    let mut s1 = vec![1u16];
    while !r1.is_empty() {
        // One full division step r0 = q·r1 + r, mirrored on the s side.
        let lead_inv = fp_inv_scalar(*r1.last().unwrap() as u64, p);
        let mut r = r0;
        let mut s = s0;
        while r.len() >= r1.len() && !r.is_empty() {
            let shift = r.len() - r1.len();
            let q = *r.last().unwrap() as u64 * lead_inv % p;
            let mut qpoly = vec![0u16; shift + 1];
            qpoly[shift] = q as u16;
            r = fp_sub(&r, &fp_mul(&qpoly, &r1, p), p);
            s = fp_sub(&s, &fp_mul(&qpoly, &s1, p), p);
        }
        r0 = r1;
        s0 = s1;
        r1 = r;
        s1 = s;
    }
    if r0.len() != 1 {
        return None;
    }
    let inv = fp_inv_scalar(r0[0] as u64, p);
    Some(fp_rem(&fp_scale(&s0, inv, p), m, p))
}

/// Irreducibility over F_p: a monic f of degree n ≥ 1 is irreducible exactly
/// when it shares no factor with t^{p^d} − t for every d ≤ n/2, because that
/// polynomial is the product of all irreducibles of degree dividing d.
fn fp_irreducible(f: &[u16], p: u64) -> bool {
    let f = trim(f.to_vec());
    let n = f.len() - 1;
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    if f[0] == 0 {
        return false; // divisible by t
    }
    let t = vec![0u16, 1u16];
    for d in 1..=(n / 2) {
        let e = (p as u64).pow(d as u32);
        let tq = fp_powmod(&t, e, &f, p);
        let diff = fp_sub(&tq, &t, p);
        let g = fp_gcd(f.clone(), diff, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

// ---------------------------------------------------------------------------
// Field construction
// ---------------------------------------------------------------------------

/// Build F_{p^n} with the deterministic modulus, under the default order bound.
pub fn make_field(p: u64, n: u64) -> Result<Arc<FieldTower>, FieldError> {
    make_field_with_bound(p, n, DEFAULT_ORDER_BOUND)
}

/// Build F_{p^n} with an explicit order bound.
pub fn make_field_with_bound(p: u64, n: u64, bound: u64) -> Result<Arc<FieldTower>, FieldError> {
    if !is_prime(p) {
        return Err(FieldError::CompositeCharacteristic(p));
    }
    if n == 0 {
        return Err(FieldError::ZeroDegree);
    }
    let order = (p as u128).checked_pow(n as u32);
    match order {
        Some(o) if o <= bound as u128 => {}
        _ => return Err(FieldError::OrderBoundExceeded { p, n, bound }),
    }
    let n = n as usize;
    let modulus = if n == 1 {
        vec![0, 1] // residues mod t: the prime field itself
    } else {
        find_modulus(p, n)
    };
    Ok(Arc::new(FieldTower {
        p: p as u16,
        n,
        modulus,
    }))
}

/// First irreducible monic polynomial of degree n in ascending value order:
/// candidate k has coefficient i equal to the i-th base-p digit of k.
fn find_modulus(p: u64, n: usize) -> Vec<u16> {
    let count = (p as u128).pow(n as u32);
    let mut k: u128 = 0;
    while k < count {
        let mut coeffs = Vec::with_capacity(n + 1);
        let mut rest = k;
        for _ in 0..n {
            coeffs.push((rest % p as u128) as u16);
            rest /= p as u128;
        }
        coeffs.push(1);
        if fp_irreducible(&coeffs, p) {
            return coeffs;
        }
        k += 1;
    }
    unreachable!("an irreducible polynomial of every degree exists over F_p")
}

impl FieldTower {
    /// Number of elements p^n.
    pub fn order(&self) -> u64 {
        (self.p as u64).pow(self.n as u32)
    }

    /// True when both towers present the same field (same p, n, modulus).
    pub fn same_field(&self, other: &FieldTower) -> bool {
        self.p == other.p && self.n == other.n && self.modulus == other.modulus
    }

    /// Short display name such as "F_8".
    pub fn name(&self) -> String {
        format!("F_{}", self.order())
    }
}

/// Element-building and enumeration helpers. These take `&Arc<FieldTower>`
/// because elements hold a reference to their field.
pub trait TowerExt {
    fn zero(&self) -> FieldElement;
    fn one(&self) -> FieldElement;
    fn from_int(&self, v: i64) -> FieldElement;
    fn elem(&self, coeffs: Vec<u16>) -> FieldElement;
    fn elem_from_value(&self, k: u64) -> FieldElement;
    fn elements(&self) -> Vec<FieldElement>;
}

impl TowerExt for Arc<FieldTower> {
    fn zero(&self) -> FieldElement {
        FieldElement {
            tower: self.clone(),
            coeffs: vec![0; self.n],
        }
    }

    fn one(&self) -> FieldElement {
        self.from_int(1)
    }

    fn from_int(&self, v: i64) -> FieldElement {
        let p = self.p as i64;
        let r = ((v % p) + p) % p;
        let mut coeffs = vec![0; self.n];
        coeffs[0] = r as u16;
        FieldElement {
            tower: self.clone(),
            coeffs,
        }
    }

    /// Build an element from arbitrary coefficients: entries are reduced mod p
    /// and the vector is truncated or zero-padded to length n after reduction
    /// modulo the defining polynomial.
    fn elem(&self, coeffs: Vec<u16>) -> FieldElement {
        let p = self.p as u64;
        let reduced: Vec<u16> = coeffs.iter().map(|&c| (c as u64 % p) as u16).collect();
        let mut res = fp_rem(&reduced, &self.modulus, p);
        res.resize(self.n, 0);
        FieldElement {
            tower: self.clone(),
            coeffs: res,
        }
    }

    /// The k-th element in ascending value order (base-p digits of k).
    fn elem_from_value(&self, k: u64) -> FieldElement {
        let p = self.p as u64;
        let mut coeffs = Vec::with_capacity(self.n);
        let mut rest = k;
        for _ in 0..self.n {
            coeffs.push((rest % p) as u16);
            rest /= p;
        }
        debug_assert_eq!(rest, 0, "value {k} out of range for {}", self.name());
        FieldElement {
            tower: self.clone(),
            coeffs,
        }
    }

    /// All field elements in ascending value order.
    fn elements(&self) -> Vec<FieldElement> {
        (0..self.order()).map(|k| self.elem_from_value(k)).collect()
    }
}

// ---------------------------------------------------------------------------
// Element arithmetic
// ---------------------------------------------------------------------------

impl FieldElement {
    fn assert_same_tower(&self, other: &FieldElement) {
        debug_assert!(
            self.tower.same_field(&other.tower),
            "mixed fields: {} vs {}",
            self.tower.name(),
            other.tower.name()
        );
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0)
    }

    pub fn add(&self, rhs: &FieldElement) -> FieldElement {
        self.assert_same_tower(rhs);
        let p = self.tower.p as u64;
        let mut coeffs = fp_add(&self.coeffs, &rhs.coeffs, p);
        coeffs.resize(self.tower.n, 0);
        FieldElement {
            tower: self.tower.clone(),
            coeffs,
        }
    }

    pub fn sub(&self, rhs: &FieldElement) -> FieldElement {
        self.assert_same_tower(rhs);
        let p = self.tower.p as u64;
        let mut coeffs = fp_sub(&self.coeffs, &rhs.coeffs, p);
        coeffs.resize(self.tower.n, 0);
        FieldElement {
            tower: self.tower.clone(),
            coeffs,
        }
    }

    pub fn neg(&self) -> FieldElement {
        let p = self.tower.p as u64;
        let mut coeffs = fp_neg(&self.coeffs, p);
        coeffs.resize(self.tower.n, 0);
        FieldElement {
            tower: self.tower.clone(),
            coeffs,
        }
    }

    pub fn mul(&self, rhs: &FieldElement) -> FieldElement {
        self.assert_same_tower(rhs);
        let p = self.tower.p as u64;
        let prod = fp_mul(&self.coeffs, &rhs.coeffs, p);
        let mut coeffs = fp_rem(&prod, &self.tower.modulus, p);
        coeffs.resize(self.tower.n, 0);
        FieldElement {
            tower: self.tower.clone(),
            coeffs,
        }
    }

    /// Multiplicative inverse; None for zero.
    pub fn inv(&self) -> Option<FieldElement> {
        if self.is_zero() {
            return None;
        }
        let p = self.tower.p as u64;
        let mut coeffs = fp_invmod(&self.coeffs, &self.tower.modulus, p)?;
        coeffs.resize(self.tower.n, 0);
        Some(FieldElement {
            tower: self.tower.clone(),
            coeffs,
        })
    }

    pub fn div(&self, rhs: &FieldElement) -> Option<FieldElement> {
        Some(self.mul(&rhs.inv()?))
    }

    pub fn pow(&self, mut e: u64) -> FieldElement {
        let mut acc = self.tower.one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// x^{p^m}: the m-th power of the Frobenius automorphism.
    pub fn frobenius_iter(&self, m: usize) -> FieldElement {
        let mut out = self.clone();
        for _ in 0..(m % self.tower.n.max(1)) {
            out = out.pow(out.tower.p as u64);
        }
        out
    }

    /// The element's value index: coefficients read as base-p digits.
    pub fn value(&self) -> u64 {
        let p = self.tower.p as u64;
        self.coeffs
            .iter()
            .rev()
            .fold(0u64, |acc, &c| acc * p + c as u64)
    }

    /// The constant coefficient, when the element lies in the prime field.
    pub fn as_prime_int(&self) -> Option<u16> {
        if self.coeffs[1..].iter().all(|&c| c == 0) {
            Some(self.coeffs[0])
        } else {
            None
        }
    }
}

/// The Frobenius automorphism x ↦ x^p.
pub fn frobenius(x: &FieldElement) -> FieldElement {
    x.frobenius_iter(1)
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.tower, &other.tower) || self.tower.same_field(&other.tower))
            && self.coeffs == other.coeffs
    }
}

impl Eq for FieldElement {}

impl std::hash::Hash for FieldElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.tower.p.hash(state);
        self.tower.n.hash(state);
        self.coeffs.hash(state);
    }
}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FieldElement {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.coeffs
            .cmp(&other.coeffs)
            .then_with(|| self.tower.p.cmp(&other.tower.p))
            .then_with(|| self.tower.n.cmp(&other.tower.n))
            .then_with(|| self.tower.modulus.cmp(&other.tower.modulus))
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}]",
            self.coeffs
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(",")
        )
    }
}

impl Serialize for FieldElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            seq.serialize_element(c)?;
        }
        seq.end()
    }
}

impl std::ops::Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        FieldElement::add(self, rhs)
    }
}

impl std::ops::Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        FieldElement::sub(self, rhs)
    }
}

impl std::ops::Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        FieldElement::mul(self, rhs)
    }
}

impl std::ops::Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement::neg(self)
    }
}

// ---------------------------------------------------------------------------
// Minimal polynomials, norm-one subgroups, quadratic data
// ---------------------------------------------------------------------------

/// Monic minimal polynomial of x over the subfield F_{p^m} ⊆ F_{p^n},
/// returned as coefficients in F_{p^n} (constant term first, leading 1).
/// Its degree equals the size of the Frobenius^m-orbit of x, and each
/// coefficient is fixed by Frobenius^m, i.e. lies in the subfield.
pub fn minimal_polynomial(
    x: &FieldElement,
    m: usize,
) -> Result<Vec<FieldElement>, FieldError> {
    let n = x.tower.n;
    if m == 0 || n % m != 0 {
        return Err(FieldError::NotASubfield { m, n });
    }
    // Collect the Frobenius^m-orbit of x.
    let mut orbit = vec![x.clone()];
    loop {
        let next = orbit.last().unwrap().frobenius_iter(m);
        if next == orbit[0] {
            break;
        }
        orbit.push(next);
    }
    // Expand ∏ (T − root).
    let tower = &x.tower;
    let mut poly = vec![tower.one()];
    for root in &orbit {
        let mut next = vec![tower.zero(); poly.len() + 1];
        for (i, c) in poly.iter().enumerate() {
            next[i + 1] = next[i + 1].add(c); // T · c
            next[i] = next[i].sub(&root.mul(c)); // −root · c
        }
        poly = next;
    }
    debug_assert!(poly
        .iter()
        .all(|c| c.frobenius_iter(m) == *c), "minimal polynomial has a coefficient outside the subfield");
    Ok(poly)
}

/// All α ∈ L* with α·α^g = 1, where g = Frobenius^{[k]} generates Gal(L/k)
/// for the quadratic extension L/k. Returned in ascending value order; the
/// set is a cyclic group of order q+1 for |k| = q.
pub fn norm_one_subgroup(
    l: &Arc<FieldTower>,
    k: &FieldTower,
) -> Result<Vec<FieldElement>, FieldError> {
    if l.p != k.p || k.n == 0 || l.n != 2 * k.n {
        return Err(FieldError::DegreeNotQuadratic {
            l_degree: l.n,
            k_degree: k.n.max(1),
        });
    }
    let m = k.n;
    let mut out = Vec::new();
    for v in 1..l.order() {
        let alpha = l.elem_from_value(v);
        if alpha.mul(&alpha.frobenius_iter(m)).is_one() {
            out.push(alpha);
        }
    }
    Ok(out)
}

/// The canonical irreducible quadratic t² + a·t + ã over k: a = 1 in
/// characteristic 2 and a = 0 otherwise, with ã the first constant (in
/// ascending value order) making the polynomial irreducible over k.
pub fn canonical_quadratic_minpoly(k: &Arc<FieldTower>) -> (FieldElement, FieldElement) {
    let a = if k.p == 2 { k.one() } else { k.zero() };
    for v in 0..k.order() {
        let cand = k.elem_from_value(v);
        if quadratic_is_irreducible(&a, &cand) {
            return (a, cand);
        }
    }
    unreachable!("every finite field admits an irreducible quadratic")
}

/// Whether t² + a·t + ã has no root in the coefficient field.
pub fn quadratic_is_irreducible(a: &FieldElement, a_tilde: &FieldElement) -> bool {
    let k = &a.tower;
    for v in 0..k.order() {
        let t = k.elem_from_value(v);
        if t.mul(&t).add(&a.mul(&t)).add(a_tilde).is_zero() {
            return false;
        }
    }
    true
}

/// First root (ascending value order) of a univariate polynomial with
/// coefficients in `tower`, or None if it has none there.
pub fn least_root(coeffs: &[FieldElement], tower: &Arc<FieldTower>) -> Option<FieldElement> {
    for v in 0..tower.order() {
        let x = tower.elem_from_value(v);
        let mut acc = tower.zero();
        for c in coeffs.iter().rev() {
            acc = acc.mul(&x).add(c);
        }
        if acc.is_zero() {
            return Some(x);
        }
    }
    None
}

// ---------------------------------------------------------------------------
// Embeddings between towers
// ---------------------------------------------------------------------------

/// A field embedding F_{p^m} → F_{p^n} (m | n), sending the generator t of
/// the source to the first root of the source modulus in the destination,
/// scanning destination elements in ascending value order.
#[derive(Debug, Clone)]
pub struct Embedding {
    pub src: Arc<FieldTower>,
    pub dst: Arc<FieldTower>,
    /// Image of the source generator in the destination field.
    pub generator_image: FieldElement,
}

impl Embedding {
    pub fn new(src: &Arc<FieldTower>, dst: &Arc<FieldTower>) -> Result<Embedding, FieldError> {
        let incompatible = FieldError::NoEmbedding {
            src: src.name(),
            dst: dst.name(),
        };
        if src.p != dst.p || dst.n % src.n != 0 {
            return Err(incompatible);
        }
        // The source modulus, read with coefficients in the destination.
        let coeffs: Vec<FieldElement> = src
            .modulus
            .iter()
            .map(|&c| dst.from_int(c as i64))
            .collect();
        let image = least_root(&coeffs, dst).ok_or(incompatible)?;
        Ok(Embedding {
            src: src.clone(),
            dst: dst.clone(),
            generator_image: image,
        })
    }

    /// Identity embedding of a tower into itself.
    pub fn identity(tower: &Arc<FieldTower>) -> Embedding {
        Embedding {
            src: tower.clone(),
            dst: tower.clone(),
            generator_image: if tower.n == 1 {
                tower.zero() // t ≡ 0 in the prime field (modulus is t)
            } else {
                tower.elem_from_value(tower.p as u64) // the residue t itself
            },
        }
    }

    /// Apply the embedding: evaluate the residue polynomial at the generator image.
    pub fn apply(&self, x: &FieldElement) -> FieldElement {
        debug_assert!(x.tower.same_field(&self.src));
        let mut acc = self.dst.zero();
        for &c in x.coeffs.iter().rev() {
            acc = acc.mul(&self.generator_image).add(&self.dst.from_int(c as i64));
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f(p: u64, n: u64) -> Arc<FieldTower> {
        make_field(p, n).unwrap()
    }

    #[test]
    fn deterministic_moduli_are_the_frozen_ones() {
        assert_eq!(f(2, 1).modulus, vec![0, 1]);
        assert_eq!(f(2, 2).modulus, vec![1, 1, 1]); // t²+t+1
        assert_eq!(f(2, 3).modulus, vec![1, 1, 0, 1]); // t³+t+1
        assert_eq!(f(2, 4).modulus, vec![1, 1, 0, 0, 1]); // t⁴+t+1
        assert_eq!(f(2, 6).modulus, vec![1, 1, 0, 0, 0, 0, 1]); // t⁶+t+1
        assert_eq!(f(2, 8).modulus, vec![1, 1, 0, 1, 1, 0, 0, 0, 1]);
        assert_eq!(f(3, 2).modulus, vec![1, 0, 1]); // t²+1
        assert_eq!(f(3, 3).modulus, vec![1, 2, 0, 1]); // t³+2t+1
        assert_eq!(f(5, 2).modulus, vec![2, 0, 1]); // t²+2
    }

    #[test]
    fn moduli_are_irreducible_and_construction_is_reproducible() {
        for (p, n) in [(2, 5), (2, 6), (3, 4), (5, 3), (7, 2), (11, 2), (13, 2)] {
            let t1 = f(p, n);
            let t2 = f(p, n);
            assert_eq!(t1.modulus, t2.modulus);
            assert!(fp_irreducible(&t1.modulus, p));
        }
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            make_field(4, 1).unwrap_err(),
            FieldError::CompositeCharacteristic(4)
        );
        assert_eq!(
            make_field(1, 1).unwrap_err(),
            FieldError::CompositeCharacteristic(1)
        );
        assert_eq!(make_field(2, 0).unwrap_err(), FieldError::ZeroDegree);
        assert!(matches!(
            make_field(2, 13).unwrap_err(),
            FieldError::OrderBoundExceeded { .. }
        ));
        // The same order is fine with a raised bound.
        assert!(make_field_with_bound(2, 13, 1 << 14).is_ok());
    }

    #[test]
    fn field_axioms_exhaustive_small_orders() {
        for (p, n) in [(2, 1), (2, 2), (3, 1), (2, 3), (3, 2), (5, 2), (3, 3)] {
            let k = f(p, n);
            let elems = k.elements();
            assert_eq!(elems.len() as u64, k.order());
            for a in &elems {
                // Additive and multiplicative identities and inverses.
                assert_eq!(&a.add(&k.zero()), a);
                assert_eq!(&a.mul(&k.one()), a);
                assert!(a.add(&a.neg()).is_zero());
                if !a.is_zero() {
                    assert!(a.mul(&a.inv().unwrap()).is_one());
                }
                // x^{p^n} = x.
                assert_eq!(&a.pow(k.order()), a);
                for b in &elems {
                    assert_eq!(a.add(b), b.add(a));
                    assert_eq!(a.mul(b), b.mul(a));
                    for c in &elems {
                        assert_eq!(a.add(&b.add(c)), a.add(b).add(c));
                        assert_eq!(a.mul(&b.mul(c)), a.mul(b).mul(c));
                        assert_eq!(a.mul(&b.add(c)), a.mul(b).add(&a.mul(c)));
                    }
                }
            }
        }
    }

    #[test]
    fn inverses_exhaustive_up_to_64() {
        for (p, n) in [(2, 6), (7, 2), (3, 3), (5, 2), (2, 5), (31, 1), (61, 1)] {
            let k = f(p, n);
            for a in k.elements() {
                if a.is_zero() {
                    assert!(a.inv().is_none());
                } else {
                    assert!(a.mul(&a.inv().unwrap()).is_one());
                }
            }
        }
    }

    #[test]
    fn frobenius_orbit_of_cubic_generator() {
        let k8 = f(2, 3);
        let zeta = k8.elem_from_value(2); // the residue t
        let z2 = frobenius(&zeta);
        let z4 = frobenius(&z2);
        assert_eq!(z2.coeffs, vec![0, 0, 1]);
        assert_eq!(z4.coeffs, vec![0, 1, 1]); // t⁴ = t²+t mod t³+t+1
        assert_eq!(frobenius(&z4), zeta); // orbit ζ → ζ² → ζ⁴ → ζ
        assert!(frobenius(&k8.zero()).is_zero());
    }

    #[test]
    fn frobenius_is_an_automorphism_with_the_right_fixed_fields() {
        for (p, n, m_list) in [(2u64, 6u64, vec![1usize, 2, 3, 6]), (3, 4, vec![1, 2, 4])] {
            let k = f(p, n);
            let elems = k.elements();
            for a in &elems {
                assert_eq!(a.frobenius_iter(n as usize), *a);
                for b in &elems[..(elems.len().min(9))] {
                    assert_eq!(frobenius(&a.add(b)), frobenius(a).add(&frobenius(b)));
                    assert_eq!(frobenius(&a.mul(b)), frobenius(a).mul(&frobenius(b)));
                }
            }
            for m in m_list {
                let fixed = elems.iter().filter(|a| a.frobenius_iter(m) == **a).count();
                assert_eq!(fixed as u64, (p).pow(m as u32));
            }
        }
    }

    #[test]
    fn minimal_polynomials_match_known_cases() {
        let k8 = f(2, 3);
        let zeta = k8.elem_from_value(2);
        let mp = minimal_polynomial(&zeta, 1).unwrap();
        let ints: Vec<u16> = mp.iter().map(|c| c.as_prime_int().unwrap()).collect();
        assert_eq!(ints, vec![1, 1, 0, 1]); // t³+t+1

        let k4 = f(2, 2);
        let omega = k4.elem_from_value(2);
        let mp = minimal_polynomial(&omega, 1).unwrap();
        let ints: Vec<u16> = mp.iter().map(|c| c.as_prime_int().unwrap()).collect();
        assert_eq!(ints, vec![1, 1, 1]); // t²+t+1

        // Prime-field element: t − x.
        for x in f(2, 1).elements() {
            let mp = minimal_polynomial(&x, 1).unwrap();
            assert_eq!(mp.len(), 2);
            assert_eq!(mp[0], x.neg());
            assert!(mp[1].is_one());
        }
    }

    #[test]
    fn minimal_polynomial_degree_is_orbit_size_and_divides_xq_minus_x() {
        let k = f(2, 6);
        for a in k.elements() {
            for m in [1usize, 2, 3, 6] {
                let mp = minimal_polynomial(&a, m).unwrap();
                let mut orbit = vec![a.clone()];
                loop {
                    let nx = orbit.last().unwrap().frobenius_iter(m);
                    if nx == orbit[0] {
                        break;
                    }
                    orbit.push(nx);
                }
                assert_eq!(mp.len(), orbit.len() + 1);
                // Vanishes on the whole orbit.
                for r in &orbit {
                    let mut acc = k.zero();
                    for c in mp.iter().rev() {
                        acc = acc.mul(r).add(c);
                    }
                    assert!(acc.is_zero());
                }
            }
            // Divides x^{p^n} − x: every root of the minimal polynomial over
            // F_p lies in the field, and the polynomial is squarefree, so it
            // suffices that distinct orbit elements are roots (checked above)
            // and the degree matches the orbit size.
        }
        assert!(minimal_polynomial(&k.one(), 4).is_err());
        assert!(minimal_polynomial(&k.one(), 5).is_err());
    }

    #[test]
    fn minimal_polynomial_divides_field_polynomial_explicitly() {
        // Long division of x^{p^n} − x by the minimal polynomial leaves zero.
        let k = f(3, 2);
        for a in k.elements() {
            let mp = minimal_polynomial(&a, 1).unwrap();
            let order = k.order() as usize;
            // Build x^q − x as element coefficients.
            let mut big = vec![k.zero(); order + 1];
            big[order] = k.one();
            big[1] = big[1].sub(&k.one());
            // Divide by monic mp.
            let mut rem = big;
            while rem.len() >= mp.len() {
                let lead = rem.last().unwrap().clone();
                let shift = rem.len() - mp.len();
                for (i, c) in mp.iter().enumerate() {
                    rem[shift + i] = rem[shift + i].sub(&lead.mul(c));
                }
                while rem.last().map(|c| c.is_zero()) == Some(true) {
                    rem.pop();
                }
                if rem.is_empty() {
                    break;
                }
            }
            assert!(rem.is_empty(), "remainder must vanish");
        }
    }

    #[test]
    fn norm_one_subgroups_known_small_cases() {
        let k4 = f(2, 2);
        let k2 = f(2, 1);
        let n1 = norm_one_subgroup(&k4, &k2).unwrap();
        assert_eq!(n1.len(), 3); // all of F₄*
        assert!(n1.iter().any(|a| a.is_one()));

        let k9 = f(3, 2);
        let k3 = f(3, 1);
        let n1 = norm_one_subgroup(&k9, &k3).unwrap();
        let tuples: Vec<Vec<u16>> = n1.iter().map(|a| a.coeffs.clone()).collect();
        assert_eq!(
            tuples,
            vec![vec![1, 0], vec![2, 0], vec![0, 1], vec![0, 2]] // ±1, ±t
        );

        assert!(norm_one_subgroup(&f(2, 3), &k2).is_err());
        assert!(norm_one_subgroup(&k9, &k2).is_err());
    }

    #[test]
    fn norm_one_subgroup_has_order_q_plus_one_for_all_q_up_to_16() {
        for (p, m) in [(2u64, 1u64), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (11, 1), (13, 1), (2, 4)] {
            let q = p.pow(m as u32);
            let l = f(p, 2 * m);
            let k = f(p, m);
            let n1 = norm_one_subgroup(&l, &k).unwrap();
            assert_eq!(n1.len() as u64, q + 1, "norm-one order for q={q}");
            // Closed under multiplication and inverses: a subgroup of a cyclic
            // group, hence cyclic.
            for a in &n1 {
                assert!(n1.contains(&a.inv().unwrap()));
                for b in &n1 {
                    assert!(n1.contains(&a.mul(b)));
                }
            }
        }
    }

    #[test]
    fn canonical_quadratics() {
        let (a, at) = canonical_quadratic_minpoly(&f(2, 1));
        assert_eq!((a.value(), at.value()), (1, 1)); // t²+t+1
        let (a, at) = canonical_quadratic_minpoly(&f(3, 1));
        assert_eq!((a.value(), at.value()), (0, 1)); // t²+1
        let (a, at) = canonical_quadratic_minpoly(&f(2, 2));
        assert_eq!((a.value(), at.value()), (1, 2)); // t²+t+ω
        let (a, at) = canonical_quadratic_minpoly(&f(5, 1));
        assert_eq!((a.value(), at.value()), (0, 2)); // t²+2
    }

    #[test]
    fn embeddings_are_field_maps_compatible_with_frobenius() {
        let k8 = f(2, 3);
        let k64 = f(2, 6);
        let emb = Embedding::new(&k8, &k64).unwrap();
        let elems = k8.elements();
        for a in &elems {
            for b in &elems {
                assert_eq!(emb.apply(&a.add(b)), emb.apply(a).add(&emb.apply(b)));
                assert_eq!(emb.apply(&a.mul(b)), emb.apply(a).mul(&emb.apply(b)));
            }
            assert_eq!(emb.apply(&frobenius(a)), frobenius(&emb.apply(a)));
        }
        // Injective on a spot check: distinct images for distinct inputs.
        let images: std::collections::BTreeSet<_> =
            elems.iter().map(|a| emb.apply(a).coeffs.clone()).collect();
        assert_eq!(images.len(), elems.len());

        // Incompatible degrees and characteristics are rejected.
        assert!(Embedding::new(&f(2, 2), &k8).is_err());
        assert!(Embedding::new(&f(3, 1), &k8).is_err());

        // Identity embedding fixes everything.
        let id = Embedding::identity(&k8);
        for a in &elems {
            assert_eq!(&id.apply(a), a);
        }
    }

    #[test]
    fn tower_serialization_schema() {
        let k8 = f(2, 3);
        let json = serde_json::to_value(k8.as_ref()).unwrap();
        assert_eq!(
            json,
            serde_json::json!({"p": 2, "n": 3, "modulus": [1, 1, 0, 1]})
        );
        let back: FieldTower = serde_json::from_value(json).unwrap();
        assert!(back.same_field(&k8));
    }

    #[test]
    fn element_value_roundtrip_and_ordering() {
        let k = f(3, 2);
        for v in 0..k.order() {
            assert_eq!(k.elem_from_value(v).value(), v);
        }
        // elem() reduces arbitrary input coefficients.
        let e = k.elem(vec![4, 7, 9, 1]); // reduce 9t²+t³... mod t²+1 and mod 3
        assert_eq!(e.coeffs.len(), 2);
    }

    proptest! {
        #[test]
        fn prop_field_axioms_f64(a in 0u64..64, b in 0u64..64, c in 0u64..64) {
            let k = f(2, 6);
            let (x, y, z) = (k.elem_from_value(a), k.elem_from_value(b), k.elem_from_value(c));
            prop_assert_eq!(x.add(&y).add(&z), x.add(&y.add(&z)));
            prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
            prop_assert_eq!(x.mul(&y.add(&z)), x.mul(&y).add(&x.mul(&z)));
            prop_assert_eq!(x.add(&y), y.add(&x));
            prop_assert_eq!(x.mul(&y), y.mul(&x));
        }

        #[test]
        fn prop_frobenius_additive_f27(a in 0u64..27, b in 0u64..27) {
            let k = f(3, 3);
            let (x, y) = (k.elem_from_value(a), k.elem_from_value(b));
            prop_assert_eq!(frobenius(&x.add(&y)), frobenius(&x).add(&frobenius(&y)));
            prop_assert_eq!(frobenius(&x.mul(&y)), frobenius(&x).mul(&frobenius(&y)));
        }

        #[test]
        fn prop_inverse_f81(a in 1u64..81) {
            let k = f(3, 4);
            let x = k.elem_from_value(a);
            prop_assert!(x.mul(&x.inv().unwrap()).is_one());
        }
    }
}
