//! `GL_n(F_q)`, its unitriangular subgroup, and their action on
//! `F_q[x_1..x_n, y_1..y_n]`.
//!
//! A group element acts on the x block through the transpose of its matrix
//! and on the y block through its inverse, so that `sum_i x_i y_i` is fixed
//! by the whole group, `x_1` and `y_n` are fixed by the upper unitriangular
//! subgroup `U`, and `act(s, act(t, f)) = act(s*t, f)`.

use crate::error::{Error, Result};
use crate::gfq::{FieldElem, FieldSpec};
use crate::linalg::MatF;
use crate::mpoly::Poly;
use num_bigint::BigUint;
use num_traits::One;
use std::collections::HashSet;
use std::fmt;

/// Default ceiling on full group enumeration.
pub const ENUMERATION_BOUND: u64 = 1_000_000;

/// An invertible matrix over `F_q` together with its inverse.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupElement {
    field: FieldSpec,
    n: usize,
    mat: MatF,
    inv: MatF,
}

impl GroupElement {
    pub fn identity(field: FieldSpec, n: usize) -> GroupElement {
        let id = MatF::identity(field, n);
        GroupElement { field, n, mat: id.clone(), inv: id }
    }

    /// Builds an element from rows; errors when the matrix is singular.
    pub fn from_rows(field: FieldSpec, rows: &[Vec<FieldElem>]) -> Result<GroupElement> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidArgument("group element must be square".into()));
        }
        let mat = MatF::from_rows(field, rows);
        let inv = mat.inverse()?;
        Ok(GroupElement { field, n, mat, inv })
    }

    fn from_mat(field: FieldSpec, mat: MatF) -> Result<GroupElement> {
        let n = mat.rows();
        let inv = mat.inverse()?;
        Ok(GroupElement { field, n, mat, inv })
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entry(&self, r: usize, c: usize) -> FieldElem {
        self.mat.get(r, c)
    }

    pub fn matrix(&self) -> &MatF {
        &self.mat
    }

    pub fn inverse_matrix(&self) -> &MatF {
        &self.inv
    }

    pub fn mul(&self, rhs: &GroupElement) -> GroupElement {
        assert!(self.field == rhs.field && self.n == rhs.n);
        GroupElement {
            field: self.field,
            n: self.n,
            mat: self.mat.mul(&rhs.mat),
            inv: rhs.inv.mul(&self.inv),
        }
    }

    pub fn inverse(&self) -> GroupElement {
        GroupElement {
            field: self.field,
            n: self.n,
            mat: self.inv.clone(),
            inv: self.mat.clone(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.mat == MatF::identity(self.field, self.n)
    }

    /// Flat entry codes; a cheap hashable fingerprint.
    pub fn code(&self) -> Vec<u16> {
        let mut out = Vec::with_capacity(self.n * self.n);
        for r in 0..self.n {
            for c in 0..self.n {
                out.push(self.mat.get(r, c).code());
            }
        }
        out
    }

    /// Applies the group action to a polynomial.
    pub fn act(&self, f: &Poly) -> Poly {
        assert!(f.field() == self.field && f.n() == self.n, "action shape mismatch");
        let n = self.n;
        let xmap: Vec<Vec<FieldElem>> =
            (0..n).map(|i| (0..n).map(|j| self.mat.get(j, i)).collect()).collect();
        let ymap: Vec<Vec<FieldElem>> =
            (0..n).map(|i| (0..n).map(|j| self.inv.get(i, j)).collect()).collect();
        f.substitute_linear(&xmap, &ymap)
    }

    /// Matrix text form: rows joined by `;`, entries by `,`.
    pub fn to_text(&self) -> String {
        (0..self.n)
            .map(|r| {
                (0..self.n)
                    .map(|c| self.mat.get(r, c).to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect::<Vec<_>>()
            .join(";")
    }

    pub fn from_text(field: FieldSpec, s: &str) -> Result<GroupElement> {
        let rows: Vec<Vec<FieldElem>> = s
            .split(';')
            .map(|row| row.split(',').map(|e| field.parse_elem(e)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        GroupElement::from_rows(field, &rows)
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.to_text())
    }
}

impl std::hash::Hash for GroupElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.code().hash(state);
    }
}

/// `|GL_n(F_q)| = prod_{i=0}^{n-1} (q^n - q^i)`.
pub fn group_order(n: usize, q: u64) -> BigUint {
    let qn = BigUint::from(q).pow(n as u32);
    let mut order = BigUint::one();
    for i in 0..n {
        order *= &qn - BigUint::from(q).pow(i as u32);
    }
    order
}

/// `|U| = q^{n(n-1)/2}` for the upper unitriangular subgroup.
pub fn unitriangular_order(n: usize, q: u64) -> BigUint {
    BigUint::from(q).pow((n * (n - 1) / 2) as u32)
}

/// `[GL_n : U] = prod_{k=1}^{n} (q^k - 1)`.
pub fn gl_u_index(n: usize, q: u64) -> BigUint {
    let mut idx = BigUint::one();
    for k in 1..=n {
        idx *= BigUint::from(q).pow(k as u32) - BigUint::one();
    }
    idx
}

/// Every element of `GL_n(F_q)`, in a deterministic odometer order.
/// Errors when the group order exceeds `bound`.
pub fn enumerate_gl(field: FieldSpec, n: usize, bound: u64) -> Result<Vec<GroupElement>> {
    let order = group_order(n, field.q() as u64);
    if order > BigUint::from(bound) {
        return Err(Error::GroupTooLarge { order: order.to_string(), bound });
    }
    let q = field.q() as usize;
    let cells = n * n;
    let mut codes = vec![0u16; cells];
    let mut out = Vec::new();
    loop {
        let rows: Vec<Vec<FieldElem>> = (0..n)
            .map(|r| {
                (0..n)
                    .map(|c| field.from_code(codes[r * n + c]).unwrap())
                    .collect()
            })
            .collect();
        let mat = MatF::from_rows(field, &rows);
        if let Ok(el) = GroupElement::from_mat(field, mat) {
            out.push(el);
        }
        // Little-endian odometer over the flattened entries.
        let mut i = 0;
        loop {
            if i == cells {
                debug_assert_eq!(BigUint::from(out.len()), order);
                return Ok(out);
            }
            codes[i] += 1;
            if (codes[i] as usize) < q {
                break;
            }
            codes[i] = 0;
            i += 1;
        }
    }
}

/// Every element of the upper unitriangular subgroup, deterministic order.
pub fn enumerate_u(field: FieldSpec, n: usize) -> Vec<GroupElement> {
    let q = field.q() as usize;
    let slots: Vec<(usize, usize)> =
        (0..n).flat_map(|r| (r + 1..n).map(move |c| (r, c))).collect();
    let mut codes = vec![0u16; slots.len()];
    let mut out = Vec::new();
    loop {
        let mut mat = MatF::identity(field, n);
        for (k, &(r, c)) in slots.iter().enumerate() {
            mat.set(r, c, field.from_code(codes[k]).unwrap());
        }
        out.push(GroupElement::from_mat(field, mat).expect("unitriangular is invertible"));
        if slots.is_empty() {
            return out;
        }
        let mut i = 0;
        loop {
            if i == slots.len() {
                return out;
            }
            codes[i] += 1;
            if (codes[i] as usize) < q {
                break;
            }
            codes[i] = 0;
            i += 1;
        }
    }
}

/// True when every listed element fixes `f`.  Fixing a generating set is
/// equivalent to fixing the generated subgroup.
pub fn is_invariant(f: &Poly, elements: &[GroupElement]) -> bool {
    elements.iter().all(|g| g.act(f) == *f)
}

/// Left cosets of the unitriangular subgroup inside the full group.
pub struct CosetSystem {
    pub reps: Vec<GroupElement>,
    pub group_order: BigUint,
    pub subgroup_order: BigUint,
}

impl CosetSystem {
    pub fn index(&self) -> usize {
        self.reps.len()
    }
}

/// Greedy coset representatives: sweep the deterministic enumeration of the
/// full group and skip elements whose coset is already covered.
pub fn coset_reps(field: FieldSpec, n: usize, bound: u64) -> Result<CosetSystem> {
    let gl = enumerate_gl(field, n, bound)?;
    let us = enumerate_u(field, n);
    let mut seen: HashSet<Vec<u16>> = HashSet::new();
    let mut reps = Vec::new();
    for g in &gl {
        if seen.contains(&g.code()) {
            continue;
        }
        for u in &us {
            seen.insert(g.mul(u).code());
        }
        reps.push(g.clone());
    }
    let system = CosetSystem {
        reps,
        group_order: group_order(n, field.q() as u64),
        subgroup_order: unitriangular_order(n, field.q() as u64),
    };
    debug_assert_eq!(
        BigUint::from(system.index()),
        gl_u_index(n, field.q() as u64)
    );
    Ok(system)
}

/// Outcome of scanning the doubled representation `E + (E^{-1})^T` for
/// pseudo-reflections (non-identity elements whose fixed space has
/// codimension one).
#[derive(Debug)]
pub struct PseudoReflectionScan {
    pub scanned: usize,
    pub det_always_one: bool,
    pub rank_always_doubled: bool,
    pub identity_rank_zero: bool,
    pub no_pseudo_reflections: bool,
    /// rank of `I - B` -> number of elements with that rank
    pub rank_histogram: std::collections::BTreeMap<usize, usize>,
}

impl PseudoReflectionScan {
    pub fn pass(&self) -> bool {
        self.det_always_one
            && self.rank_always_doubled
            && self.identity_rank_zero
            && self.no_pseudo_reflections
    }
}

/// Exhaustively checks that no element of the doubled group is a
/// pseudo-reflection: every block matrix `B = E + (E^{-1})^T` has
/// determinant one and `rank(I - B) = 2 rank(I - E)`, which is never one.
pub fn pseudo_reflection_scan(field: FieldSpec, n: usize, bound: u64) -> Result<PseudoReflectionScan> {
    let gl = enumerate_gl(field, n, bound)?;
    let id = MatF::identity(field, n);
    let one = field.one();
    let mut scan = PseudoReflectionScan {
        scanned: 0,
        det_always_one: true,
        rank_always_doubled: true,
        identity_rank_zero: true,
        no_pseudo_reflections: true,
        rank_histogram: std::collections::BTreeMap::new(),
    };
    for g in &gl {
        let det_b = g.matrix().det() * g.inverse_matrix().transpose().det();
        if det_b != one {
            scan.det_always_one = false;
        }
        let rank_e = sub_rank(&id, g.matrix());
        let rank_dual = sub_rank(&id, &g.inverse_matrix().transpose());
        let rank_b = rank_e + rank_dual;
        if rank_b != 2 * rank_e {
            scan.rank_always_doubled = false;
        }
        if g.is_identity() {
            if rank_b != 0 {
                scan.identity_rank_zero = false;
            }
        } else if rank_b == 1 {
            scan.no_pseudo_reflections = false;
        }
        *scan.rank_histogram.entry(rank_b).or_insert(0) += 1;
        scan.scanned += 1;
    }
    Ok(scan)
}

fn sub_rank(a: &MatF, b: &MatF) -> usize {
    let n = a.rows();
    let mut diff = MatF::zeros(a.field(), n, n);
    for r in 0..n {
        for c in 0..n {
            diff.set(r, c, a.get(r, c) - b.get(r, c));
        }
    }
    diff.rank()
}

// ---- generating pair ----

/// Polynomial remainder over F_q, little-endian coefficient vectors.
fn fq_poly_rem(f: &[FieldElem], g: &[FieldElem]) -> Vec<FieldElem> {
    let gd = g.iter().rposition(|c| !c.is_zero()).expect("nonzero divisor");
    let lead_inv = g[gd].inv().expect("nonzero leading coefficient");
    let mut r = f.to_vec();
    loop {
        let rd = match r.iter().rposition(|c| !c.is_zero()) {
            None => return r,
            Some(d) => d,
        };
        if rd < gd {
            return r;
        }
        let scale = r[rd] * lead_inv;
        for k in 0..=gd {
            r[rd - gd + k] = r[rd - gd + k] - scale * g[k];
        }
    }
}

fn fq_poly_irreducible(f: &[FieldElem], field: FieldSpec) -> bool {
    let d = f.iter().rposition(|c| !c.is_zero()).unwrap();
    for deg in 1..=d / 2 {
        let count = (field.q() as u64).pow(deg as u32);
        for code in 0..count {
            let mut g = vec![field.zero(); deg + 1];
            let mut c = code;
            for gi in g.iter_mut().take(deg) {
                *gi = field.from_code((c % field.q() as u64) as u16).unwrap();
                c /= field.q() as u64;
            }
            g[deg] = field.one();
            if fq_poly_rem(f, &g).iter().all(|c| c.is_zero()) {
                return false;
            }
        }
    }
    true
}

/// A Singer-cycle companion matrix: multiplication by a root of a primitive
/// degree-`n` polynomial, so the element has order `q^n - 1`.
fn singer_cycle(field: FieldSpec, n: usize) -> GroupElement {
    let q = field.q() as u64;
    let order = q.pow(n as u32) - 1;
    let mut prime_factors = Vec::new();
    let mut m = order;
    let mut d = 2;
    while d * d <= m {
        if m % d == 0 {
            prime_factors.push(d);
            while m % d == 0 {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        prime_factors.push(m);
    }

    let count = q.pow(n as u32);
    for code in 0..count {
        let mut f = vec![field.zero(); n + 1];
        let mut c = code;
        for fi in f.iter_mut().take(n) {
            *fi = field.from_code((c % q) as u16).unwrap();
            c /= q;
        }
        f[n] = field.one();
        if f[0].is_zero() || !fq_poly_irreducible(&f, field) {
            continue;
        }
        // Companion matrix of f.
        let mut mat = MatF::zeros(field, n, n);
        for i in 1..n {
            mat.set(i, i - 1, field.one());
        }
        for i in 0..n {
            mat.set(i, n - 1, -f[i]);
        }
        let el = GroupElement::from_mat(field, mat).expect("companion of irreducible");
        let primitive = prime_factors.iter().all(|&r| {
            let mut p = GroupElement::identity(field, n);
            for _ in 0..order / r {
                p = p.mul(&el);
            }
            !p.is_identity()
        });
        if primitive {
            return el;
        }
    }
    unreachable!("primitive polynomials of every degree exist");
}

/// A standard generating pair: a Singer cycle and an elementary transvection.
/// Callers should validate generation by [`closure`] at desk scale before
/// relying on it for a new `(n, q)`.
pub fn gl_generators(field: FieldSpec, n: usize) -> Vec<GroupElement> {
    assert!(n >= 2, "the generating pair needs n >= 2");
    let singer = singer_cycle(field, n);
    let mut t = MatF::identity(field, n);
    t.set(0, 1, field.one());
    let transvection = GroupElement::from_mat(field, t).unwrap();
    vec![singer, transvection]
}

/// Breadth-first closure of a generating set.
pub fn closure(gens: &[GroupElement]) -> Vec<GroupElement> {
    assert!(!gens.is_empty());
    let id = GroupElement::identity(gens[0].field(), gens[0].n());
    let mut seen: HashSet<Vec<u16>> = HashSet::new();
    let mut queue = std::collections::VecDeque::new();
    let mut out = Vec::new();
    seen.insert(id.code());
    queue.push_back(id.clone());
    out.push(id);
    while let Some(g) = queue.pop_front() {
        for gen in gens {
            let h = g.mul(gen);
            if seen.insert(h.code()) {
                out.push(h.clone());
                queue.push_back(h);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(q: u64) -> FieldSpec {
        crate::mpoly::field_of_order(q).unwrap()
    }

    fn u0(f: FieldSpec, n: usize) -> Poly {
        let mut p = Poly::zero(f, n);
        for i in 1..=n {
            p = &p + &(&Poly::x(f, n, i) * &Poly::y(f, n, i));
        }
        p
    }

    #[test]
    fn orders() {
        assert_eq!(group_order(2, 2), BigUint::from(6u32));
        assert_eq!(group_order(2, 3), BigUint::from(48u32));
        assert_eq!(group_order(3, 2), BigUint::from(168u32));
        assert_eq!(group_order(4, 2), BigUint::from(20160u32));
        assert_eq!(unitriangular_order(3, 2), BigUint::from(8u32));
        assert_eq!(gl_u_index(2, 2), BigUint::from(3u32));
        assert_eq!(gl_u_index(3, 2), BigUint::from(21u32));
        assert_eq!(gl_u_index(2, 3), BigUint::from(16u32));
    }

    #[test]
    fn index_is_prime_to_p() {
        for (n, q, p) in [(2, 2, 2u64), (2, 3, 3), (3, 2, 2), (2, 4, 2), (3, 3, 3), (2, 9, 3)] {
            let idx = gl_u_index(n, q);
            assert!((idx % BigUint::from(p)) != BigUint::from(0u32), "({n},{q})");
        }
    }

    #[test]
    fn enumeration_matches_order() {
        for (n, q) in [(2usize, 2u64), (2, 3), (3, 2), (2, 4)] {
            let f = field(q);
            let gl = enumerate_gl(f, n, ENUMERATION_BOUND).unwrap();
            assert_eq!(BigUint::from(gl.len()), group_order(n, q));
            let us = enumerate_u(f, n);
            assert_eq!(BigUint::from(us.len()), unitriangular_order(n, q));
            for u in &us {
                for r in 0..n {
                    assert!(u.entry(r, r).is_one());
                    for c in 0..r {
                        assert!(u.entry(r, c).is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn enumeration_bound_is_enforced() {
        let f = field(3);
        assert!(matches!(
            enumerate_gl(f, 4, ENUMERATION_BOUND).unwrap_err(),
            Error::GroupTooLarge { .. }
        ));
    }

    #[test]
    fn pairing_form_is_group_invariant() {
        for (n, q) in [(2usize, 2u64), (2, 3), (3, 2)] {
            let f = field(q);
            let gl = enumerate_gl(f, n, ENUMERATION_BOUND).unwrap();
            assert!(is_invariant(&u0(f, n), &gl), "({n},{q})");
        }
    }

    #[test]
    fn unitriangular_fixes_corner_variables() {
        for (n, q) in [(2usize, 3u64), (3, 2)] {
            let f = field(q);
            let us = enumerate_u(f, n);
            assert!(is_invariant(&Poly::x(f, n, 1), &us));
            assert!(is_invariant(&Poly::y(f, n, n), &us));
            // x_n is moved by some unitriangular element once n >= 2.
            assert!(!is_invariant(&Poly::x(f, n, n), &us));
        }
    }

    #[test]
    fn action_composes_and_respects_products() {
        let f = field(3);
        let gl = enumerate_gl(f, 2, ENUMERATION_BOUND).unwrap();
        let sample = &(&Poly::x(f, 2, 1).pow(2) * &Poly::y(f, 2, 2))
            + &(&Poly::x(f, 2, 2) * &Poly::y(f, 2, 1).pow(3));
        let other = u0(f, 2);
        for i in (0..gl.len()).step_by(7) {
            for j in (0..gl.len()).step_by(11) {
                let (s, t) = (&gl[i], &gl[j]);
                assert_eq!(s.act(&t.act(&sample)), s.mul(t).act(&sample));
            }
        }
        for g in gl.iter().step_by(5) {
            assert_eq!(g.act(&(&sample * &other)), &g.act(&sample) * &g.act(&other));
            assert_eq!(g.inverse().act(&g.act(&sample)), sample);
        }
        assert_eq!(GroupElement::identity(f, 2).act(&sample), sample);
    }

    #[test]
    fn coset_reps_tile_the_group() {
        for (n, q) in [(2usize, 2u64), (2, 3), (3, 2)] {
            let f = field(q);
            let system = coset_reps(f, n, ENUMERATION_BOUND).unwrap();
            assert_eq!(BigUint::from(system.index()), gl_u_index(n, q));
            let us = enumerate_u(f, n);
            let mut seen = HashSet::new();
            for rep in &system.reps {
                for u in &us {
                    assert!(seen.insert(rep.mul(u).code()), "coset overlap at ({n},{q})");
                }
            }
            assert_eq!(BigUint::from(seen.len()), group_order(n, q));
        }
    }

    #[test]
    fn pseudo_reflection_scan_passes() {
        for (n, q) in [(2usize, 2u64), (2, 3)] {
            let f = field(q);
            let scan = pseudo_reflection_scan(f, n, ENUMERATION_BOUND).unwrap();
            assert!(scan.pass(), "({n},{q}): {scan:?}");
            assert_eq!(BigUint::from(scan.scanned), group_order(n, q));
            assert_eq!(scan.rank_histogram.get(&0), Some(&1));
            assert!(!scan.rank_histogram.contains_key(&1));
        }
    }

    #[test]
    fn generating_pair_generates() {
        for (n, q) in [(2usize, 2u64), (2, 3), (3, 2), (2, 4)] {
            let f = field(q);
            let gens = gl_generators(f, n);
            let group = closure(&gens);
            assert_eq!(BigUint::from(group.len()), group_order(n, q), "({n},{q})");
        }
    }

    #[test]
    fn singer_cycle_has_full_order() {
        let f = field(3);
        let singer = &gl_generators(f, 2)[0];
        let mut p = singer.clone();
        let mut order = 1;
        while !p.is_identity() {
            p = p.mul(singer);
            order += 1;
        }
        assert_eq!(order, 8); // q^n - 1
    }

    #[test]
    fn text_round_trip() {
        let f = field(4);
        let g = f.gen();
        let el = GroupElement::from_rows(f, &[vec![g, f.one()], vec![f.zero(), g + f.one()]])
            .unwrap();
        let text = el.to_text();
        assert_eq!(text, "g,1;0,g+1");
        assert_eq!(GroupElement::from_text(f, &text).unwrap(), el);
        assert!(GroupElement::from_text(f, "1,1;1,1").is_err()); // singular
    }
}
