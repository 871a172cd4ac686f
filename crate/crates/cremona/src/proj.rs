//! Projective points over field extensions, closed points as Galois orbits,
//! and PGL elements with their actions.
//!
//! Ambient spaces are products P^{n₁}×…×P^{n_r}; a point stores one
//! normalized coordinate tuple per factor (first nonzero coordinate 1), so
//! point equality is plain coordinate equality. Galois acts coordinate-wise
//! by Frobenius here; twisted actions are surface-level concerns and are
//! deliberately not represented in this module.

use crate::field::{FieldElement, FieldTower, TowerExt};
use serde::ser::SerializeMap;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

/// Largest PGL group size `enumerate_pgl` will materialize by default.
pub const DEFAULT_PGL_BOUND: u64 = 100_000;

/// A product of projective spaces, by the list of factor dimensions.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Ambient {
    pub factors: Vec<usize>,
}

impl Ambient {
    /// Single projective space P^n.
    pub fn p(n: usize) -> Ambient {
        Ambient { factors: vec![n] }
    }

    /// A product of projective spaces.
    pub fn product(dims: &[usize]) -> Ambient {
        Ambient {
            factors: dims.to_vec(),
        }
    }
}

impl fmt::Display for Ambient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(|n| format!("P{n}")).collect();
        write!(f, "{}", parts.join("x"))
    }
}

/// Errors from point construction and the operations in this module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProjError {
    /// Some factor of the coordinate tuple is entirely zero.
    ZeroCoordinates,
    /// Points from different ambients or fields were mixed.
    MixedAmbients,
    /// A claimed closed point is not stable under Frobenius.
    NotGaloisStable { witness: String },
    /// A claimed closed point splits into several Frobenius orbits.
    NotTransitive { orbits: usize },
    /// The base field index does not divide the extension degree.
    NotASubfield { s: usize, n: usize },
    /// Transport endpoints fail the general-position requirement.
    DegenerateConfiguration,
    /// The requested group is larger than the configured bound.
    BoundExceeded { order: u64, bound: u64 },
    /// A generator is undefined at a point reached during orbit closure.
    UndefinedAt { point: String },
}

impl fmt::Display for ProjError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjError::ZeroCoordinates => {
                write!(f, "a projective point needs a nonzero coordinate in every factor")
            }
            ProjError::MixedAmbients => write!(f, "points live in different ambients or fields"),
            ProjError::NotGaloisStable { witness } => {
                write!(f, "point set is not Galois-stable: the Frobenius image of {witness} is missing")
            }
            ProjError::NotTransitive { orbits } => {
                write!(f, "point set is a union of {orbits} Frobenius orbits, not one")
            }
            ProjError::NotASubfield { s, n } => {
                write!(f, "base degree {s} does not divide the extension degree {n}")
            }
            ProjError::DegenerateConfiguration => {
                write!(f, "transport endpoints are in degenerate position")
            }
            ProjError::BoundExceeded { order, bound } => {
                write!(f, "group order {order} exceeds the enumeration bound {bound}")
            }
            ProjError::UndefinedAt { point } => {
                write!(f, "a generator is undefined at the reached point {point}")
            }
        }
    }
}

impl std::error::Error for ProjError {}

/// A point of a product of projective spaces, in normal form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProjPoint {
    pub ambient: Ambient,
    /// One coordinate tuple per factor; first nonzero coordinate of each
    /// factor is 1.
    pub coords: Vec<Vec<FieldElement>>,
}

impl ProjPoint {
    /// Build and normalize; rejects tuples with an all-zero factor or with
    /// lengths not matching the ambient.
    pub fn new(ambient: Ambient, coords: Vec<Vec<FieldElement>>) -> Result<ProjPoint, ProjError> {
        if coords.len() != ambient.factors.len() {
            return Err(ProjError::MixedAmbients);
        }
        let mut norm = Vec::with_capacity(coords.len());
        for (dim, tuple) in ambient.factors.iter().zip(coords) {
            if tuple.len() != dim + 1 {
                return Err(ProjError::MixedAmbients);
            }
            norm.push(normalize_tuple(tuple)?);
        }
        Ok(ProjPoint {
            ambient,
            coords: norm,
        })
    }

    /// Convenience constructor from integer coordinates.
    pub fn from_ints(
        ambient: Ambient,
        tower: &Arc<FieldTower>,
        coords: &[&[i64]],
    ) -> Result<ProjPoint, ProjError> {
        let tuples = coords
            .iter()
            .map(|t| t.iter().map(|&v| tower.from_int(v)).collect())
            .collect();
        ProjPoint::new(ambient, tuples)
    }

    pub fn tower(&self) -> &Arc<FieldTower> {
        &self.coords[0][0].tower
    }

    /// Coordinate-wise Frobenius^s, renormalized.
    pub fn frobenius(&self, s: usize) -> ProjPoint {
        let coords = self
            .coords
            .iter()
            .map(|tuple| tuple.iter().map(|c| c.frobenius_iter(s)).collect())
            .collect();
        ProjPoint::new(self.ambient.clone(), coords).expect("Frobenius preserves nonzeroness")
    }

    /// Apply a coordinate-wise field map (an embedding, say), renormalizing.
    pub fn map_coords(
        &self,
        f: impl Fn(&FieldElement) -> FieldElement,
    ) -> Result<ProjPoint, ProjError> {
        let coords = self
            .coords
            .iter()
            .map(|tuple| tuple.iter().map(&f).collect())
            .collect();
        ProjPoint::new(self.ambient.clone(), coords)
    }
}

fn normalize_tuple(tuple: Vec<FieldElement>) -> Result<Vec<FieldElement>, ProjError> {
    let pivot = tuple
        .iter()
        .position(|c| !c.is_zero())
        .ok_or(ProjError::ZeroCoordinates)?;
    let inv = tuple[pivot].inv().expect("nonzero");
    Ok(tuple.iter().map(|c| c.mul(&inv)).collect())
}

impl PartialOrd for ProjPoint {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ProjPoint {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.coords
            .cmp(&other.coords)
            .then_with(|| self.ambient.cmp(&other.ambient))
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let factors: Vec<String> = self
            .coords
            .iter()
            .map(|tuple| {
                let inner: Vec<String> = tuple.iter().map(|c| c.to_string()).collect();
                format!("[{}]", inner.join(":"))
            })
            .collect();
        write!(f, "({})", factors.join(","))
    }
}

impl Serialize for ProjPoint {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.coords.len()))?;
        for tuple in &self.coords {
            seq.serialize_element(tuple)?;
        }
        seq.end()
    }
}

/// All points of the ambient over a field, sorted lexicographically by
/// normalized coordinates.
pub fn enumerate_points(ambient: &Ambient, tower: &Arc<FieldTower>) -> Vec<ProjPoint> {
    // Points of one factor P^d: a pivot position with coordinate 1, zeros
    // before it, free entries after it.
    let factor_points = |d: usize| -> Vec<Vec<FieldElement>> {
        let mut out = Vec::new();
        let q = tower.order();
        for pivot in 0..=d {
            let free = d - pivot;
            let count = q.pow(free as u32);
            for k in 0..count {
                let mut tuple = vec![tower.zero(); d + 1];
                tuple[pivot] = tower.one();
                let mut rest = k;
                for i in (pivot + 1)..=d {
                    tuple[i] = tower.elem_from_value(rest % q);
                    rest /= q;
                }
                out.push(tuple);
            }
        }
        out
    };
    let per_factor: Vec<Vec<Vec<FieldElement>>> =
        ambient.factors.iter().map(|&d| factor_points(d)).collect();
    // Cartesian product across factors.
    let mut points = vec![Vec::new()];
    for factor in &per_factor {
        let mut next = Vec::with_capacity(points.len() * factor.len());
        for partial in &points {
            for tuple in factor {
                let mut p = partial.clone();
                p.push(tuple.clone());
                next.push(p);
            }
        }
        points = next;
    }
    let mut out: Vec<ProjPoint> = points
        .into_iter()
        .map(|coords| ProjPoint::new(ambient.clone(), coords).expect("nonzero by construction"))
        .collect();
    out.sort();
    out
}

// ---------------------------------------------------------------------------
// Closed points
// ---------------------------------------------------------------------------

/// A Galois-stable single orbit of geometric points over F_{p^s}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedPoint {
    /// The geometric points, sorted.
    pub geometric: Vec<ProjPoint>,
    /// Degree s of the base subfield over the prime field.
    pub base: usize,
}

impl ClosedPoint {
    /// The number of geometric components.
    pub fn degree(&self) -> usize {
        self.geometric.len()
    }
}

impl Serialize for ClosedPoint {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(2))?;
        map.serialize_entry("degree", &self.degree())?;
        map.serialize_entry("points", &self.geometric)?;
        map.end()
    }
}

/// Assemble a closed point from its geometric components over the subfield
/// F_{p^base}. Fails when the set is not Frobenius-stable or splits into
/// several orbits; the two failures are reported distinctly.
pub fn closed_point(points: &[ProjPoint], base: usize) -> Result<ClosedPoint, ProjError> {
    let first = points.first().ok_or(ProjError::ZeroCoordinates)?;
    let tower = first.tower().clone();
    if base == 0 || tower.n % base != 0 {
        return Err(ProjError::NotASubfield { s: base, n: tower.n });
    }
    if points
        .iter()
        .any(|p| p.ambient != first.ambient || !p.tower().same_field(&tower))
    {
        return Err(ProjError::MixedAmbients);
    }
    let set: BTreeSet<ProjPoint> = points.iter().cloned().collect();
    // Stability: the Frobenius image of every member stays in the set.
    for p in &set {
        if !set.contains(&p.frobenius(base)) {
            return Err(ProjError::NotGaloisStable {
                witness: p.to_string(),
            });
        }
    }
    // Transitivity: the orbit of the first member is the whole set.
    let mut orbit = BTreeSet::new();
    let mut cur = set.iter().next().unwrap().clone();
    while orbit.insert(cur.clone()) {
        cur = cur.frobenius(base);
    }
    if orbit.len() != set.len() {
        // Count the orbits for the report.
        let mut rest: BTreeSet<_> = set.difference(&orbit).cloned().collect();
        let mut count = 1;
        while let Some(start) = rest.iter().next().cloned() {
            count += 1;
            let mut cur = start;
            while rest.remove(&cur) {
                cur = cur.frobenius(base);
            }
        }
        return Err(ProjError::NotTransitive { orbits: count });
    }
    Ok(ClosedPoint {
        geometric: set.into_iter().collect(),
        base,
    })
}

// ---------------------------------------------------------------------------
// Exact linear algebra over a field
// ---------------------------------------------------------------------------

pub(crate) fn mat_mul(a: &[Vec<FieldElement>], b: &[Vec<FieldElement>]) -> Vec<Vec<FieldElement>> {
    let n = a.len();
    let m = b[0].len();
    let inner = b.len();
    let zero = a[0][0].tower.clone();
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| {
                    let mut acc = zero.zero();
                    for k in 0..inner {
                        acc = acc.add(&a[i][k].mul(&b[k][j]));
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

pub(crate) fn mat_vec(a: &[Vec<FieldElement>], v: &[FieldElement]) -> Vec<FieldElement> {
    a.iter()
        .map(|row| {
            let mut acc = row[0].tower.zero();
            for (c, x) in row.iter().zip(v) {
                acc = acc.add(&c.mul(x));
            }
            acc
        })
        .collect()
}

pub(crate) fn mat_det(m: &[Vec<FieldElement>]) -> FieldElement {
    let n = m.len();
    let tower = m[0][0].tower.clone();
    let mut a: Vec<Vec<FieldElement>> = m.to_vec();
    let mut det = tower.one();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero());
        let pivot = match pivot {
            None => return tower.zero(),
            Some(p) => p,
        };
        if pivot != col {
            a.swap(pivot, col);
            det = det.neg();
        }
        det = det.mul(&a[col][col]);
        let inv = a[col][col].inv().expect("pivot nonzero");
        for r in (col + 1)..n {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].mul(&inv);
            for c in col..n {
                let sub = factor.mul(&a[col][c]);
                a[r][c] = a[r][c].sub(&sub);
            }
        }
    }
    det
}

pub(crate) fn mat_inv(m: &[Vec<FieldElement>]) -> Option<Vec<Vec<FieldElement>>> {
    let n = m.len();
    let tower = m[0][0].tower.clone();
    let mut a: Vec<Vec<FieldElement>> = m.to_vec();
    let mut b: Vec<Vec<FieldElement>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { tower.one() } else { tower.zero() })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(pivot, col);
        b.swap(pivot, col);
        let inv = a[col][col].inv().expect("pivot nonzero");
        for c in 0..n {
            a[col][c] = a[col][c].mul(&inv);
            b[col][c] = b[col][c].mul(&inv);
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for c in 0..n {
                let sa = factor.mul(&a[col][c]);
                let sb = factor.mul(&b[col][c]);
                a[r][c] = a[r][c].sub(&sa);
                b[r][c] = b[r][c].sub(&sb);
            }
        }
    }
    Some(b)
}

// ---------------------------------------------------------------------------
// PGL elements
// ---------------------------------------------------------------------------

/// An element of PGL_{n+1} in normal form: the first nonzero entry in
/// row-major order is 1, so projective equality is entry-wise equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PglMatrix {
    /// Projective dimension n (the matrix is (n+1)×(n+1)).
    pub n: usize,
    pub mat: Vec<Vec<FieldElement>>,
}

impl PglMatrix {
    pub fn new(n: usize, mat: Vec<Vec<FieldElement>>) -> Result<PglMatrix, ProjError> {
        if mat.len() != n + 1 || mat.iter().any(|r| r.len() != n + 1) {
            return Err(ProjError::MixedAmbients);
        }
        if mat_det(&mat).is_zero() {
            return Err(ProjError::DegenerateConfiguration);
        }
        Ok(PglMatrix {
            n,
            mat: normalize_matrix(mat),
        })
    }

    pub fn identity(n: usize, tower: &Arc<FieldTower>) -> PglMatrix {
        let mat = (0..=n)
            .map(|i| {
                (0..=n)
                    .map(|j| if i == j { tower.one() } else { tower.zero() })
                    .collect()
            })
            .collect();
        PglMatrix { n, mat }
    }

    pub fn from_ints(n: usize, tower: &Arc<FieldTower>, rows: &[&[i64]]) -> Result<PglMatrix, ProjError> {
        let mat = rows
            .iter()
            .map(|r| r.iter().map(|&v| tower.from_int(v)).collect())
            .collect();
        PglMatrix::new(n, mat)
    }

    pub fn tower(&self) -> &Arc<FieldTower> {
        &self.mat[0][0].tower
    }

    /// Matrix product, renormalized.
    pub fn compose(&self, rhs: &PglMatrix) -> PglMatrix {
        assert_eq!(self.n, rhs.n);
        PglMatrix {
            n: self.n,
            mat: normalize_matrix(mat_mul(&self.mat, &rhs.mat)),
        }
    }

    pub fn inverse(&self) -> PglMatrix {
        PglMatrix {
            n: self.n,
            mat: normalize_matrix(mat_inv(&self.mat).expect("invertible")),
        }
    }

    /// Apply to a point of P^n (single-factor ambient).
    pub fn apply(&self, p: &ProjPoint) -> ProjPoint {
        assert_eq!(p.ambient, Ambient::p(self.n), "ambient mismatch");
        let image = mat_vec(&self.mat, &p.coords[0]);
        ProjPoint::new(p.ambient.clone(), vec![image]).expect("invertible matrix")
    }

    /// Entry-wise Frobenius^s, renormalized.
    pub fn frobenius(&self, s: usize) -> PglMatrix {
        let mat = self
            .mat
            .iter()
            .map(|row| row.iter().map(|c| c.frobenius_iter(s)).collect())
            .collect();
        PglMatrix {
            n: self.n,
            mat: normalize_matrix(mat),
        }
    }
}

fn normalize_matrix(mat: Vec<Vec<FieldElement>>) -> Vec<Vec<FieldElement>> {
    let pivot = mat
        .iter()
        .flatten()
        .find(|c| !c.is_zero())
        .expect("nonzero matrix")
        .clone();
    let inv = pivot.inv().expect("nonzero");
    mat.iter()
        .map(|row| row.iter().map(|c| c.mul(&inv)).collect())
        .collect()
}

/// All of PGL_{n+1}(F_q) (n = 1 or 2) as normalized matrices, in a
/// deterministic order. The count is q(q²−1) for n=1clea and
/// q³(q³−1)(q²−1) for n=2; fails when that exceeds `bound`.
pub fn enumerate_pgl_bounded(
    n: usize,
    tower: &Arc<FieldTower>,
    bound: u64,
) -> Result<Vec<PglMatrix>, ProjError> {
    assert!(n == 1 || n == 2, "only P¹ and P² are supported");
    let q = tower.order();
    let order = if n == 1 {
        q * (q * q - 1)
    } else {
        q.pow(3) * (q.pow(3) - 1) * (q * q - 1)
    };
    if order > bound {
        return Err(ProjError::BoundExceeded { order, bound });
    }
    let size = n + 1;
    let entries = size * size;
    let mut out = Vec::with_capacity(order as usize);
    // The first nonzero entry (row-major) of the normal form is 1: enumerate
    // by that pivot position, with free entries after it in value order.
    for pivot in 0..entries {
        let free = entries - pivot - 1;
        let count = q.pow(free as u32);
        for k in 0..count {
            let mut flat = vec![tower.zero(); entries];
            flat[pivot] = tower.one();
            let mut rest = k;
            for slot in flat.iter_mut().skip(pivot + 1) {
                *slot = tower.elem_from_value(rest % q);
                rest /= q;
            }
            let mat: Vec<Vec<FieldElement>> = flat.chunks(size).map(|c| c.to_vec()).collect();
            if !mat_det(&mat).is_zero() {
                out.push(PglMatrix { n, mat });
            }
        }
    }
    debug_assert_eq!(out.len() as u64, order);
    Ok(out)
}

/// [`enumerate_pgl_bounded`] with the default bound.
pub fn enumerate_pgl(n: usize, tower: &Arc<FieldTower>) -> Result<Vec<PglMatrix>, ProjError> {
    enumerate_pgl_bounded(n, tower, DEFAULT_PGL_BOUND)
}

// ---------------------------------------------------------------------------
// Collinearity and transport
// ---------------------------------------------------------------------------

/// Whether three points of P² lie on a common line.
pub fn collinear(p: &ProjPoint, q: &ProjPoint, r: &ProjPoint) -> bool {
    let p2 = Ambient::p(2);
    assert!(
        p.ambient == p2 && q.ambient == p2 && r.ambient == p2,
        "collinearity is a P² predicate"
    );
    let rows = vec![p.coords[0].clone(), q.coords[0].clone(), r.coords[0].clone()];
    mat_det(&rows).is_zero()
}

/// The unique projective transformation sending a frame to a frame: four
/// points of P² in general position, or three distinct points of P¹. The
/// result is verified to commute with Frobenius^base; if the transformation
/// exists over the extension but is not base-rational, Ok(None) is returned.
pub fn pgl_transport(
    sources: &[ProjPoint],
    targets: &[ProjPoint],
    base: usize,
) -> Result<Option<PglMatrix>, ProjError> {
    let first = sources.first().ok_or(ProjError::DegenerateConfiguration)?;
    let n = match first.ambient.factors.as_slice() {
        [2] => 2usize,
        [1] => 1usize,
        _ => return Err(ProjError::MixedAmbients),
    };
    let need = n + 2;
    if sources.len() != need || targets.len() != need {
        return Err(ProjError::DegenerateConfiguration);
    }
    if sources
        .iter()
        .chain(targets)
        .any(|p| p.ambient != first.ambient || !p.tower().same_field(first.tower()))
    {
        return Err(ProjError::MixedAmbients);
    }
    let fs = frame(sources)?;
    let ft = frame(targets)?;
    let a = mat_mul(&ft, &mat_inv(&fs).expect("frame invertible"));
    let a = PglMatrix::new(n, a).map_err(|_| ProjError::DegenerateConfiguration)?;
    // Exactness check on the defining points.
    for (s, t) in sources.iter().zip(targets) {
        debug_assert_eq!(&a.apply(s), t, "transport must hit its targets");
    }
    // Base-rationality: commutes with Frobenius^base as a projective map.
    if a.frobenius(base) == a {
        Ok(Some(a))
    } else {
        Ok(None)
    }
}

/// Frame matrix: maps the coordinate simplex plus unit point to the given
/// points. For P²: columns c_i·p_i where p₄ = Σ c_i·p_i; for P¹ likewise
/// with two columns. General position makes every c_i nonzero.
fn frame(points: &[ProjPoint]) -> Result<Vec<Vec<FieldElement>>, ProjError> {
    let n = points[0].coords[0].len(); // n+1 in projective terms
    let tower = points[0].tower().clone();
    // Solve Σ c_i p_i = p_last.
    let cols: Vec<&Vec<FieldElement>> = points[..n].iter().map(|p| &p.coords[0]).collect();
    let m: Vec<Vec<FieldElement>> = (0..n)
        .map(|row| (0..n).map(|col| cols[col][row].clone()).collect())
        .collect();
    let inv = mat_inv(&m).ok_or(ProjError::DegenerateConfiguration)?;
    let c = mat_vec(&inv, &points[n].coords[0]);
    if c.iter().any(|ci| ci.is_zero()) {
        return Err(ProjError::DegenerateConfiguration);
    }
    let _ = tower;
    Ok((0..n)
        .map(|row| (0..n).map(|col| cols[col][row].mul(&c[col])).collect())
        .collect())
}

// ---------------------------------------------------------------------------
// Orbits under point transformations
// ---------------------------------------------------------------------------

/// Anything that acts on projective points, possibly undefined somewhere
/// (rational maps at their base points).
pub trait PointMap {
    /// None means the map is undefined at p.
    fn apply_point(&self, p: &ProjPoint) -> Option<ProjPoint>;
}

impl PointMap for PglMatrix {
    fn apply_point(&self, p: &ProjPoint) -> Option<ProjPoint> {
        Some(self.apply(p))
    }
}

/// The Frobenius x ↦ x^{p^s} as a point transformation.
pub struct FrobeniusMap {
    pub s: usize,
}

impl PointMap for FrobeniusMap {
    fn apply_point(&self, p: &ProjPoint) -> Option<ProjPoint> {
        Some(p.frobenius(self.s))
    }
}

/// Closure of {start} under the generators. Terminates because ambients over
/// finite fields are finite; fails if a generator is undefined at a reached
/// point, reporting that point.
pub fn orbit(
    start: &ProjPoint,
    generators: &[&dyn PointMap],
) -> Result<BTreeSet<ProjPoint>, ProjError> {
    let mut seen: BTreeSet<ProjPoint> = BTreeSet::new();
    let mut work = vec![start.clone()];
    seen.insert(start.clone());
    while let Some(p) = work.pop() {
        for g in generators {
            match g.apply_point(&p) {
                None => {
                    return Err(ProjError::UndefinedAt {
                        point: p.to_string(),
                    })
                }
                Some(img) => {
                    if seen.insert(img.clone()) {
                        work.push(img);
                    }
                }
            }
        }
    }
    Ok(seen)
}
