//! Exact polynomial arithmetic over finite fields: sparse multivariate
//! polynomials with exact division and gcd, and dense univariate polynomials
//! with remainder, gcd and irreducibility tests.
//!
//! Multivariate terms are ordered lexicographically with variable 0 most
//! significant; all maps are BTreeMaps so iteration order — and therefore
//! every computed result — is deterministic.

use crate::field::{FieldElement, FieldTower, TowerExt};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// Sparse multivariate polynomial: exponent vector → nonzero coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MPoly {
    pub tower: Arc<FieldTower>,
    pub nvars: usize,
    /// Terms keyed by exponent vectors of length `nvars`; zero coefficients
    /// are never stored, so the zero polynomial has an empty map.
    pub terms: BTreeMap<Vec<u16>, FieldElement>,
}

impl MPoly {
    pub fn zero(tower: &Arc<FieldTower>, nvars: usize) -> MPoly {
        MPoly {
            tower: tower.clone(),
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(tower: &Arc<FieldTower>, nvars: usize, c: FieldElement) -> MPoly {
        let mut out = MPoly::zero(tower, nvars);
        if !c.is_zero() {
            out.terms.insert(vec![0; nvars], c);
        }
        out
    }

    pub fn one(tower: &Arc<FieldTower>, nvars: usize) -> MPoly {
        MPoly::constant(tower, nvars, tower.one())
    }

    /// The monomial x_i.
    pub fn var(tower: &Arc<FieldTower>, nvars: usize, i: usize) -> MPoly {
        assert!(i < nvars);
        let mut exp = vec![0; nvars];
        exp[i] = 1;
        let mut out = MPoly::zero(tower, nvars);
        out.terms.insert(exp, tower.one());
        out
    }

    /// A single term c·x^exp.
    pub fn term(tower: &Arc<FieldTower>, exp: Vec<u16>, c: FieldElement) -> MPoly {
        let mut out = MPoly::zero(tower, exp.len());
        if !c.is_zero() {
            out.terms.insert(exp, c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn insert_add(&mut self, exp: Vec<u16>, c: FieldElement) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exp) {
            Some(existing) => {
                let sum = existing.add(&c);
                if sum.is_zero() {
                    self.terms.remove(&exp);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(exp, c);
            }
        }
    }

    pub fn add(&self, rhs: &MPoly) -> MPoly {
        debug_assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert_add(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> MPoly {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = c.neg();
        }
        out
    }

    pub fn sub(&self, rhs: &MPoly) -> MPoly {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &MPoly) -> MPoly {
        debug_assert_eq!(self.nvars, rhs.nvars);
        let mut out = MPoly::zero(&self.tower, self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let exp: Vec<u16> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.insert_add(exp, ca.mul(cb));
            }
        }
        out
    }

    pub fn scale(&self, s: &FieldElement) -> MPoly {
        if s.is_zero() {
            return MPoly::zero(&self.tower, self.nvars);
        }
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = c.mul(s);
        }
        out
    }

    /// Leading term in lex order (variable 0 most significant).
    pub fn leading(&self) -> Option<(&Vec<u16>, &FieldElement)> {
        self.terms.iter().next_back()
    }

    /// Scale so the lex-leading coefficient is 1. Zero stays zero.
    pub fn normalize(&self) -> MPoly {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.inv().expect("nonzero leading coefficient")),
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&x| x as u32).sum())
            .max()
    }

    /// Degree in one variable; None for the zero polynomial.
    pub fn degree_in(&self, var: usize) -> Option<u16> {
        self.terms.keys().map(|e| e[var]).max()
    }

    /// Evaluate at a full point.
    pub fn eval(&self, point: &[FieldElement]) -> FieldElement {
        assert_eq!(point.len(), self.nvars);
        let mut acc = self.tower.zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (i, &ei) in e.iter().enumerate() {
                if ei > 0 {
                    term = term.mul(&point[i].pow(ei as u64));
                }
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// Substitute every variable by a polynomial (all in the same ring as the
    /// images). Powers of each image are cached per call.
    pub fn substitute(&self, images: &[MPoly]) -> MPoly {
        assert_eq!(images.len(), self.nvars);
        let out_vars = images
            .first()
            .map(|f| f.nvars)
            .unwrap_or(0);
        let mut powers: Vec<Vec<MPoly>> = images
            .iter()
            .map(|f| vec![MPoly::one(&self.tower, out_vars), f.clone()])
            .collect();
        let mut acc = MPoly::zero(&self.tower, out_vars);
        for (e, c) in &self.terms {
            let mut term = MPoly::constant(&self.tower, out_vars, c.clone());
            for (i, &ei) in e.iter().enumerate() {
                while powers[i].len() <= ei as usize {
                    let next = powers[i].last().unwrap().mul(&images[i]);
                    powers[i].push(next);
                }
                if ei > 0 {
                    term = term.mul(&powers[i][ei as usize]);
                }
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// Exact division: Some(q) with self = q·d, or None when d does not
    /// divide self. Long division by the lex-leading term.
    pub fn try_div_exact(&self, d: &MPoly) -> Option<MPoly> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let mut rem = self.clone();
        let mut quot = MPoly::zero(&self.tower, self.nvars);
        let (dexp, dc) = {
            let (e, c) = d.leading().unwrap();
            (e.clone(), c.clone())
        };
        let dc_inv = dc.inv().expect("field coefficient");
        while let Some((rexp, rc)) = rem.leading() {
            let mut texp = vec![0u16; self.nvars];
            for i in 0..self.nvars {
                if rexp[i] < dexp[i] {
                    return None; // leading term not divisible
                }
                texp[i] = rexp[i] - dexp[i];
            }
            let tc = rc.mul(&dc_inv);
            let t = MPoly::term(&self.tower, texp, tc);
            rem = rem.sub(&t.mul(d));
            quot = quot.add(&t);
        }
        Some(quot)
    }

    /// Whether every term has the same degree vector under the grouping of
    /// variables; returns that common vector. The zero polynomial is
    /// multihomogeneous of every degree, reported as None here.
    pub fn multidegree(&self, groups: &[Vec<usize>]) -> Option<Vec<u16>> {
        let mut iter = self.terms.keys();
        let first = iter.next()?;
        let deg_of = |e: &Vec<u16>| -> Vec<u16> {
            groups
                .iter()
                .map(|g| g.iter().map(|&i| e[i]).sum::<u16>())
                .collect()
        };
        let d = deg_of(first);
        for e in iter {
            if deg_of(e) != d {
                return None;
            }
        }
        Some(d)
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(e, c)| {
                let vars: String = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &x)| x > 0)
                    .map(|(i, &x)| {
                        if x == 1 {
                            format!("x{i}")
                        } else {
                            format!("x{i}^{x}")
                        }
                    })
                    .collect::<Vec<_>>()
                    .join("*");
                if vars.is_empty() {
                    format!("{c}")
                } else {
                    format!("{c}*{vars}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

// ---------------------------------------------------------------------------
// Multivariate gcd by primitive pseudo-remainder sequences
// ---------------------------------------------------------------------------

/// First variable appearing with positive exponent in either polynomial.
fn main_variable(a: &MPoly, b: &MPoly) -> Option<usize> {
    (0..a.nvars).find(|&v| {
        a.terms.keys().any(|e| e[v] > 0) || b.terms.keys().any(|e| e[v] > 0)
    })
}

/// View as univariate in `var`: degree → coefficient polynomial (which does
/// not involve `var`).
fn univar_view(a: &MPoly, var: usize) -> BTreeMap<u16, MPoly> {
    let mut out: BTreeMap<u16, MPoly> = BTreeMap::new();
    for (e, c) in &a.terms {
        let d = e[var];
        let mut rest = e.clone();
        rest[var] = 0;
        out.entry(d)
            .or_insert_with(|| MPoly::zero(&a.tower, a.nvars))
            .insert_add(rest, c.clone());
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Content with respect to `var`: gcd of the univariate-view coefficients.
fn content(a: &MPoly, var: usize) -> MPoly {
    let view = univar_view(a, var);
    let mut acc = MPoly::zero(&a.tower, a.nvars);
    for c in view.values() {
        acc = gcd(&acc, c);
    }
    acc
}

/// Pseudo-remainder of a by b in `var`: lc(b)^k · a reduced until its
/// var-degree drops below deg_var(b).
fn pseudo_rem(a: &MPoly, b: &MPoly, var: usize) -> MPoly {
    let db = b.degree_in(var).expect("nonzero divisor");
    let bview = univar_view(b, var);
    let lb = bview.get(&db).unwrap().clone();
    let mut r = a.clone();
    while let Some(dr) = r.degree_in(var) {
        if dr < db {
            break;
        }
        let rview = univar_view(&r, var);
        let lr = rview.get(&dr).unwrap().clone();
        // r ← lc(b)·r − lc(r)·x^(dr−db)·b
        let mut shift_exp = vec![0u16; r.nvars];
        shift_exp[var] = dr - db;
        let shift = MPoly::term(&r.tower, shift_exp, r.tower.one());
        r = r.mul(&lb).sub(&lr.mul(&shift).mul(b));
    }
    r
}

/// Greatest common divisor, normalized so the lex-leading coefficient is 1.
/// gcd(0, b) = normalize(b); gcd(0, 0) = 0.
pub fn gcd(a: &MPoly, b: &MPoly) -> MPoly {
    debug_assert_eq!(a.nvars, b.nvars);
    if a.is_zero() {
        return b.normalize();
    }
    if b.is_zero() {
        return a.normalize();
    }
    let var = match main_variable(a, b) {
        None => return MPoly::one(&a.tower, a.nvars), // both nonzero constants
        Some(v) => v,
    };
    // Contents (in variables after `var`) and primitive parts.
    let ca = content(a, var);
    let cb = content(b, var);
    let c = gcd(&ca, &cb);
    let mut pa = a.try_div_exact(&ca).expect("content divides");
    let mut pb = b.try_div_exact(&cb).expect("content divides");
    if pa.degree_in(var).unwrap_or(0) < pb.degree_in(var).unwrap_or(0) {
        std::mem::swap(&mut pa, &mut pb);
    }
    // Primitive pseudo-remainder sequence.
    loop {
        if pb.is_zero() {
            break;
        }
        if pb.degree_in(var).unwrap_or(0) == 0 {
            // A nonzero remainder free of `var`: the primitive parts are coprime.
            pa = MPoly::one(&a.tower, a.nvars);
            break;
        }
        let r = pseudo_rem(&pa, &pb, var);
        let rprim = if r.is_zero() {
            r
        } else {
            let cr = content(&r, var);
            r.try_div_exact(&cr).expect("content divides")
        };
        pa = pb;
        pb = rprim;
    }
    c.mul(&pa).normalize()
}

// ---------------------------------------------------------------------------
// Dense univariate polynomials over a field tower
// ---------------------------------------------------------------------------

/// Dense univariate polynomial, constant term first, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly {
    pub tower: Arc<FieldTower>,
    pub coeffs: Vec<FieldElement>,
}

impl UniPoly {
    pub fn new(tower: &Arc<FieldTower>, mut coeffs: Vec<FieldElement>) -> UniPoly {
        while coeffs.last().map(|c| c.is_zero()) == Some(true) {
            coeffs.pop();
        }
        UniPoly {
            tower: tower.clone(),
            coeffs,
        }
    }

    pub fn zero(tower: &Arc<FieldTower>) -> UniPoly {
        UniPoly::new(tower, Vec::new())
    }

    pub fn one(tower: &Arc<FieldTower>) -> UniPoly {
        UniPoly::new(tower, vec![tower.one()])
    }

    /// The variable t.
    pub fn t(tower: &Arc<FieldTower>) -> UniPoly {
        UniPoly::new(tower, vec![tower.zero(), tower.one()])
    }

    pub fn from_ints(tower: &Arc<FieldTower>, ints: &[i64]) -> UniPoly {
        UniPoly::new(tower, ints.iter().map(|&v| tower.from_int(v)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn add(&self, rhs: &UniPoly) -> UniPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(len);
        for i in 0..len {
            let a = self.coeffs.get(i).cloned().unwrap_or_else(|| self.tower.zero());
            let b = rhs.coeffs.get(i).cloned().unwrap_or_else(|| self.tower.zero());
            out.push(a.add(&b));
        }
        UniPoly::new(&self.tower, out)
    }

    pub fn neg(&self) -> UniPoly {
        UniPoly::new(&self.tower, self.coeffs.iter().map(|c| c.neg()).collect())
    }

    pub fn sub(&self, rhs: &UniPoly) -> UniPoly {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero(&self.tower);
        }
        let mut out = vec![self.tower.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        UniPoly::new(&self.tower, out)
    }

    pub fn scale(&self, s: &FieldElement) -> UniPoly {
        UniPoly::new(&self.tower, self.coeffs.iter().map(|c| c.mul(s)).collect())
    }

    /// Quotient and remainder by a nonzero divisor.
    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let lead_inv = d.coeffs.last().unwrap().inv().expect("field");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![self.tower.zero(); self.coeffs.len().saturating_sub(d.coeffs.len() - 1)];
        while rem.len() >= d.coeffs.len() && !rem.is_empty() {
            let q = rem.last().unwrap().mul(&lead_inv);
            let shift = rem.len() - d.coeffs.len();
            if !q.is_zero() {
                quot[shift] = quot[shift].add(&q);
                for (i, dc) in d.coeffs.iter().enumerate() {
                    rem[shift + i] = rem[shift + i].sub(&q.mul(dc));
                }
            }
            // The top coefficient cancels by construction.
            rem.pop();
            while rem.last().map(|c| c.is_zero()) == Some(true) {
                rem.pop();
            }
        }
        (
            UniPoly::new(&self.tower, quot),
            UniPoly::new(&self.tower, rem),
        )
    }

    pub fn rem(&self, d: &UniPoly) -> UniPoly {
        self.div_rem(d).1
    }

    /// Monic gcd.
    pub fn gcd(&self, rhs: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Scale so the leading coefficient is 1. Zero stays zero.
    pub fn monic(&self) -> UniPoly {
        match self.coeffs.last() {
            None => self.clone(),
            Some(c) => self.scale(&c.inv().expect("nonzero leading coefficient")),
        }
    }

    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        let mut acc = self.tower.zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    /// self^e modulo m.
    pub fn powmod(&self, mut e: u64, m: &UniPoly) -> UniPoly {
        let mut acc = UniPoly::one(&self.tower);
        let mut base = self.rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        acc
    }

    /// Irreducibility over the coefficient field F_q: a polynomial of degree
    /// n ≥ 1 is irreducible exactly when gcd(f, t^{q^d} − t) = 1 for every
    /// d ≤ n/2, because t^{q^d} − t is the product of all monic irreducibles
    /// of degree dividing d.
    pub fn is_irreducible(&self) -> bool {
        let n = match self.degree() {
            None | Some(0) => return false,
            Some(n) => n,
        };
        if n == 1 {
            return true;
        }
        if self.coeffs[0].is_zero() {
            return false; // divisible by t
        }
        let q = self.tower.order();
        let t = UniPoly::t(&self.tower);
        for d in 1..=(n / 2) {
            let mut e: u64 = 1;
            for _ in 0..d {
                e = e.checked_mul(q).expect("field order fits in u64");
            }
            let tq = t.powmod(e, self);
            let g = self.gcd(&tq.sub(&t));
            if g.degree() != Some(0) {
                return false;
            }
        }
        true
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("{c}"),
                1 => format!("{c}*t"),
                _ => format!("{c}*t^{i}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
