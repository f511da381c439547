//! Sparse polynomials over `F_q` in the paired variables `x_1..x_n, y_1..y_n`.
//!
//! Monomials are compared in graded lexicographic order: total degree first,
//! ties broken lexicographically with `x_1 > x_2 > ... > x_n > y_1 > ... > y_n`.
//! Polynomials are bigraded by (degree in the x block, degree in the y block).
//!
//! The canonical text form lists terms in decreasing order joined by ` + `,
//! each term as `<coeff>*x1^a1*...*yn^bn` with zero exponents omitted, `^1`
//! omitted, and a coefficient of one omitted unless the monomial is constant.
//! Coefficients use the [`crate::gfq`] element syntax, so `g+1*x1` denotes
//! `(g+1) * x1`.

use crate::error::{Error, Result};
use crate::gfq::{FieldElem, FieldSpec};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Exponent vector of length `2n`: the x block then the y block.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    exps: Vec<u16>,
}

impl Monomial {
    pub fn from_exps(exps: Vec<u16>) -> Monomial {
        debug_assert!(exps.len() % 2 == 0);
        Monomial { exps }
    }

    pub fn one(n: usize) -> Monomial {
        Monomial { exps: vec![0; 2 * n] }
    }

    /// Number of x/y pairs.
    pub fn n(&self) -> usize {
        self.exps.len() / 2
    }

    pub fn exps(&self) -> &[u16] {
        &self.exps
    }

    /// Exponent of `x_i` (1-based).
    pub fn x_exp(&self, i: usize) -> u16 {
        self.exps[i - 1]
    }

    /// Exponent of `y_i` (1-based).
    pub fn y_exp(&self, i: usize) -> u16 {
        self.exps[self.n() + i - 1]
    }

    pub fn total_degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    pub fn bidegree(&self) -> (u32, u32) {
        let n = self.n();
        let dx = self.exps[..n].iter().map(|&e| e as u32).sum();
        let dy = self.exps[n..].iter().map(|&e| e as u32).sum();
        (dx, dy)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(&a, &b)| a.checked_add(b).expect("exponent overflow"))
            .collect();
        Monomial { exps }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(&a, &b)| a <= b)
    }

    /// `other / self`; caller must ensure divisibility.
    pub fn div_into(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        let exps = other.exps.iter().zip(&self.exps).map(|(&b, &a)| b - a).collect();
        Monomial { exps }
    }

    /// Image under the involution `x_i -> y_{n+1-i}`, `y_i -> x_{n+1-i}`.
    pub fn star(&self) -> Monomial {
        let n = self.n();
        let mut exps = Vec::with_capacity(2 * n);
        exps.extend(self.exps[n..].iter().rev());
        exps.extend(self.exps[..n].iter().rev());
        Monomial { exps }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Monomial) -> Ordering {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| {
                for (a, b) in self.exps.iter().zip(&other.exps) {
                    if a != b {
                        return a.cmp(b);
                    }
                }
                Ordering::Equal
            })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Monomial) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Bidegree of a polynomial: either zero or a genuine pair.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Bidegree {
    Zero,
    Of(u32, u32),
}

/// A sparse polynomial in `F_q[x_1..x_n, y_1..y_n]`.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: FieldSpec,
    n: usize,
    terms: BTreeMap<Monomial, FieldElem>,
}

impl Poly {
    pub fn zero(field: FieldSpec, n: usize) -> Poly {
        Poly { field, n, terms: BTreeMap::new() }
    }

    pub fn one(field: FieldSpec, n: usize) -> Poly {
        Poly::constant(field, n, field.one())
    }

    pub fn constant(field: FieldSpec, n: usize, c: FieldElem) -> Poly {
        let mut p = Poly::zero(field, n);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(n), c);
        }
        p
    }

    /// The variable `x_i` (1-based).
    pub fn x(field: FieldSpec, n: usize, i: usize) -> Poly {
        assert!((1..=n).contains(&i), "variable index out of range");
        let mut exps = vec![0u16; 2 * n];
        exps[i - 1] = 1;
        Poly::from_monomial(field, n, Monomial::from_exps(exps), field.one())
    }

    /// The variable `y_i` (1-based).
    pub fn y(field: FieldSpec, n: usize, i: usize) -> Poly {
        assert!((1..=n).contains(&i), "variable index out of range");
        let mut exps = vec![0u16; 2 * n];
        exps[n + i - 1] = 1;
        Poly::from_monomial(field, n, Monomial::from_exps(exps), field.one())
    }

    pub fn from_monomial(field: FieldSpec, n: usize, m: Monomial, c: FieldElem) -> Poly {
        assert_eq!(m.n(), n);
        let mut p = Poly::zero(field, n);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms<I>(field: FieldSpec, n: usize, terms: I) -> Poly
    where
        I: IntoIterator<Item = (Monomial, FieldElem)>,
    {
        let mut p = Poly::zero(field, n);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in increasing monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, FieldElem)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn coeff(&self, m: &Monomial) -> FieldElem {
        self.terms.get(m).copied().unwrap_or_else(|| self.field.zero())
    }

    pub fn leading(&self) -> Option<(&Monomial, FieldElem)> {
        self.terms.iter().next_back().map(|(m, &c)| (m, c))
    }

    fn add_term(&mut self, m: Monomial, c: FieldElem) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = *o.get() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    o.insert(s);
                }
            }
        }
    }

    fn assert_compatible(&self, rhs: &Poly) {
        assert!(
            self.field == rhs.field && self.n == rhs.n,
            "incompatible polynomials: n={} over F_{} vs n={} over F_{}",
            self.n,
            self.field.q(),
            rhs.n,
            rhs.field.q()
        );
    }

    pub fn scalar_mul(&self, c: FieldElem) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.field, self.n);
        }
        let terms = self.terms.iter().map(|(m, &a)| (m.clone(), a * c)).collect();
        Poly { field: self.field, n: self.n, terms }
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::one(self.field, self.n);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        acc
    }

    /// Total degree of the leading term, if any.
    pub fn total_degree(&self) -> Option<u32> {
        self.leading().map(|(m, _)| m.total_degree())
    }

    /// Bidegree; errors unless every term has the same (dx, dy).
    pub fn bidegree(&self) -> Result<Bidegree> {
        let mut it = self.terms.keys();
        let first = match it.next() {
            None => return Ok(Bidegree::Zero),
            Some(m) => m.bidegree(),
        };
        for m in it {
            if m.bidegree() != first {
                return Err(Error::NotBihomogeneous);
            }
        }
        Ok(Bidegree::Of(first.0, first.1))
    }

    /// Applies `x_i -> sum_j xmap[i][j] x_j`, `y_i -> sum_j ymap[i][j] y_j`.
    pub fn substitute_linear(&self, xmap: &[Vec<FieldElem>], ymap: &[Vec<FieldElem>]) -> Poly {
        let n = self.n;
        assert!(xmap.len() == n && ymap.len() == n, "substitution matrix shape");
        assert!(xmap.iter().chain(ymap).all(|row| row.len() == n));

        // Image of each variable as a linear form.
        let mut images = Vec::with_capacity(2 * n);
        for row in xmap {
            let p = Poly::from_terms(
                self.field,
                n,
                (0..n).map(|j| {
                    let mut exps = vec![0u16; 2 * n];
                    exps[j] = 1;
                    (Monomial::from_exps(exps), row[j])
                }),
            );
            images.push(p);
        }
        for row in ymap {
            let p = Poly::from_terms(
                self.field,
                n,
                (0..n).map(|j| {
                    let mut exps = vec![0u16; 2 * n];
                    exps[n + j] = 1;
                    (Monomial::from_exps(exps), row[j])
                }),
            );
            images.push(p);
        }

        // Per-variable power tables, filled on demand.
        let mut powers: Vec<Vec<Poly>> = images
            .iter()
            .map(|im| vec![Poly::one(self.field, n), im.clone()])
            .collect();
        let power = |v: usize, k: usize, powers: &mut Vec<Vec<Poly>>| -> Poly {
            while powers[v].len() <= k {
                let next = &powers[v][powers[v].len() - 1] * &powers[v][1];
                powers[v].push(next);
            }
            powers[v][k].clone()
        };

        let mut out = Poly::zero(self.field, n);
        for (m, c) in self.terms.iter() {
            let mut term = Poly::constant(self.field, n, *c);
            for (v, &e) in m.exps.iter().enumerate() {
                if e > 0 {
                    term = &term * &power(v, e as usize, &mut powers);
                }
            }
            out = &out + &term;
        }
        out
    }

    /// The q-power Frobenius on the x block: `x_i -> x_i^q`, coefficients and
    /// y exponents untouched.
    pub fn frobenius_x(&self) -> Poly {
        self.scale_exponents(true)
    }

    /// The q-power Frobenius on the y block.
    pub fn frobenius_y(&self) -> Poly {
        self.scale_exponents(false)
    }

    fn scale_exponents(&self, x_block: bool) -> Poly {
        let q = self.field.q();
        let n = self.n;
        let terms = self
            .terms
            .iter()
            .map(|(m, &c)| {
                let mut exps = m.exps.clone();
                let range = if x_block { 0..n } else { n..2 * n };
                for e in &mut exps[range] {
                    *e = e.checked_mul(q).expect("exponent overflow");
                }
                (Monomial::from_exps(exps), c)
            })
            .collect();
        Poly { field: self.field, n, terms }
    }

    /// The involution swapping `x_i` with `y_{n+1-i}`; a ring automorphism.
    pub fn star(&self) -> Poly {
        let terms = self.terms.iter().map(|(m, &c)| (m.star(), c)).collect();
        Poly { field: self.field, n: self.n, terms }
    }

    /// Formal partial derivative with respect to `x_i` (1-based).
    pub fn derivative_x(&self, i: usize) -> Poly {
        self.derivative(i - 1)
    }

    /// Formal partial derivative with respect to `y_i` (1-based).
    pub fn derivative_y(&self, i: usize) -> Poly {
        self.derivative(self.n + i - 1)
    }

    fn derivative(&self, v: usize) -> Poly {
        let mut out = Poly::zero(self.field, self.n);
        for (m, &c) in self.terms.iter() {
            let e = m.exps[v];
            if e == 0 {
                continue;
            }
            let factor = self.field.from_int(e as i64);
            if factor.is_zero() {
                continue;
            }
            let mut exps = m.exps.clone();
            exps[v] -= 1;
            out.add_term(Monomial::from_exps(exps), c * factor);
        }
        out
    }

    /// Evaluates at a point of `F_q^{2n}`.
    pub fn eval(&self, xs: &[FieldElem], ys: &[FieldElem]) -> FieldElem {
        assert!(xs.len() == self.n && ys.len() == self.n);
        let mut acc = self.field.zero();
        for (m, &c) in self.terms.iter() {
            let mut t = c;
            for (i, &x) in xs.iter().enumerate() {
                t = t * x.pow(m.exps[i] as u64);
            }
            for (i, &y) in ys.iter().enumerate() {
                t = t * y.pow(m.exps[self.n + i] as u64);
            }
            acc = acc + t;
        }
        acc
    }

    /// Evaluates at a point of an extension field; the base field must be
    /// prime so coefficients embed as constants.
    pub fn eval_in(&self, ext: FieldSpec, xs: &[FieldElem], ys: &[FieldElem]) -> Result<FieldElem> {
        if self.field.e() != 1 {
            return Err(Error::InvalidArgument(
                "extension-point evaluation needs a prime base field".into(),
            ));
        }
        if ext.p() != self.field.p() {
            return Err(Error::InvalidArgument("characteristic mismatch".into()));
        }
        assert!(xs.len() == self.n && ys.len() == self.n);
        let mut acc = ext.zero();
        for (m, &c) in self.terms.iter() {
            let mut t = ext.from_int(c.code() as i64);
            for (i, &x) in xs.iter().enumerate() {
                t = t * x.pow(m.exps[i] as u64);
            }
            for (i, &y) in ys.iter().enumerate() {
                t = t * y.pow(m.exps[self.n + i] as u64);
            }
            acc = acc + t;
        }
        Ok(acc)
    }

    /// Exact quotient `self / g`; errors if `g` is zero or does not divide.
    /// The result is re-multiplied against `g` as a final consistency check.
    pub fn exact_divide(&self, g: &Poly) -> Result<Poly> {
        self.assert_compatible(g);
        let (g_lm, g_lc) = match g.leading() {
            None => return Err(Error::DivisionByZero),
            Some(t) => t,
        };
        let g_lc_inv = g_lc.inv()?;
        let mut rem = self.clone();
        let mut quot = Poly::zero(self.field, self.n);
        while let Some((r_lm, r_lc)) = rem.leading() {
            if !g_lm.divides(r_lm) {
                return Err(Error::NotDivisible);
            }
            let m = g_lm.div_into(r_lm);
            let c = r_lc * g_lc_inv;
            let t = Poly::from_monomial(self.field, self.n, m, c);
            rem = &rem - &(&t * g);
            quot = &quot + &t;
        }
        if &(&quot * g) != self {
            return Err(Error::CrossCheck("re-multiplication after division".into()));
        }
        Ok(quot)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.assert_compatible(rhs);
        let mut out = self.clone();
        for (m, &c) in rhs.terms.iter() {
            out.add_term(m.clone(), c);
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.assert_compatible(rhs);
        let mut out = self.clone();
        for (m, &c) in rhs.terms.iter() {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let terms = self.terms.iter().map(|(m, &c)| (m.clone(), -c)).collect();
        Poly { field: self.field, n: self.n, terms }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.assert_compatible(rhs);
        let mut out = Poly::zero(self.field, self.n);
        for (m1, &c1) in self.terms.iter() {
            for (m2, &c2) in rhs.terms.iter() {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

/// Determinant of a square matrix of polynomials.  Cofactor expansion for
/// sizes up to four; fraction-free elimination with exact divisions above.
pub fn det_poly(mat: &[Vec<Poly>]) -> Result<Poly> {
    let k = mat.len();
    if k == 0 || mat.iter().any(|row| row.len() != k) {
        return Err(Error::InvalidArgument("determinant needs a nonempty square matrix".into()));
    }
    let field = mat[0][0].field();
    let n = mat[0][0].n();
    if k <= 4 {
        return Ok(det_cofactor(mat, field, n));
    }
    det_bareiss(mat, field, n)
}

fn det_cofactor(mat: &[Vec<Poly>], field: FieldSpec, n: usize) -> Poly {
    let k = mat.len();
    if k == 1 {
        return mat[0][0].clone();
    }
    let mut acc = Poly::zero(field, n);
    for r in 0..k {
        if mat[r][0].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Poly>> = (0..k)
            .filter(|&i| i != r)
            .map(|i| mat[i][1..].to_vec())
            .collect();
        let sub = det_cofactor(&minor, field, n);
        let signed = if r % 2 == 0 { sub } else { -&sub };
        acc = &acc + &(&mat[r][0] * &signed);
    }
    acc
}

fn det_bareiss(mat: &[Vec<Poly>], field: FieldSpec, n: usize) -> Result<Poly> {
    let k = mat.len();
    let mut m: Vec<Vec<Poly>> = mat.to_vec();
    let mut sign_flip = false;
    let mut prev = Poly::one(field, n);
    for col in 0..k - 1 {
        // Deterministic pivot: first row with a nonzero entry in this column.
        let pivot_row = match (col..k).find(|&r| !m[r][col].is_zero()) {
            None => return Ok(Poly::zero(field, n)),
            Some(r) => r,
        };
        if pivot_row != col {
            m.swap(pivot_row, col);
            sign_flip = !sign_flip;
        }
        for r in col + 1..k {
            for c in col + 1..k {
                let num = &(&m[col][col] * &m[r][c]) - &(&m[r][col] * &m[col][c]);
                m[r][c] = num.exact_divide(&prev)?;
            }
            m[r][col] = Poly::zero(field, n);
        }
        prev = m[col][col].clone();
    }
    let det = m[k - 1][k - 1].clone();
    Ok(if sign_flip { -&det } else { det })
}

/// All monomials of the given bidegree, in decreasing term order.
pub fn monomials_of_bidegree(n: usize, dx: u32, dy: u32) -> Vec<Monomial> {
    let xs = compositions_desc(dx, n);
    let ys = compositions_desc(dy, n);
    let mut out = Vec::with_capacity(xs.len() * ys.len());
    for x in &xs {
        for y in &ys {
            let mut exps = Vec::with_capacity(2 * n);
            exps.extend_from_slice(x);
            exps.extend_from_slice(y);
            out.push(Monomial::from_exps(exps));
        }
    }
    out
}

/// Compositions of `d` into `n` parts, lexicographically decreasing.
fn compositions_desc(d: u32, n: usize) -> Vec<Vec<u16>> {
    assert!(d <= u16::MAX as u32);
    let mut out = Vec::new();
    let mut cur = vec![0u16; n];
    fn rec(d: u32, i: usize, cur: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
        if i + 1 == cur.len() {
            cur[i] = d as u16;
            out.push(cur.clone());
            return;
        }
        for v in (0..=d).rev() {
            cur[i] = v as u16;
            rec(d - v, i + 1, cur, out);
        }
    }
    if n == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(d, 0, &mut cur, &mut out);
    out
}

// ---- canonical text form ----

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mut factors = Vec::new();
            for i in 0..2 * self.n {
                let e = m.exps[i];
                if e == 0 {
                    continue;
                }
                let name = if i < self.n {
                    format!("x{}", i + 1)
                } else {
                    format!("y{}", i - self.n + 1)
                };
                if e == 1 {
                    factors.push(name);
                } else {
                    factors.push(format!("{name}^{e}"));
                }
            }
            if factors.is_empty() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", c, factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Poly {
    /// Parses the canonical text form.
    pub fn parse(s: &str, field: FieldSpec, n: usize) -> Result<Poly> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        if s == "0" {
            return Ok(Poly::zero(field, n));
        }
        let mut out = Poly::zero(field, n);
        for term in s.split(" + ") {
            let mut coeff = field.one();
            let mut exps = vec![0u16; 2 * n];
            let mut saw_factor = false;
            for (idx, piece) in term.split('*').enumerate() {
                let piece = piece.trim();
                let is_var = piece.starts_with('x') || piece.starts_with('y');
                if !is_var {
                    if idx != 0 {
                        return Err(Error::Parse(format!(
                            "coefficient must lead the term in '{term}'"
                        )));
                    }
                    coeff = field.parse_elem(piece)?;
                    continue;
                }
                saw_factor = true;
                let (name, exp) = match piece.find('^') {
                    None => (piece, 1u16),
                    Some(pos) => {
                        let e: u16 = piece[pos + 1..]
                            .parse()
                            .map_err(|_| Error::Parse(format!("bad exponent in '{piece}'")))?;
                        (&piece[..pos], e)
                    }
                };
                let idx1: usize = name[1..]
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad variable '{piece}'")))?;
                if idx1 == 0 || idx1 > n {
                    return Err(Error::Parse(format!(
                        "variable index out of range in '{piece}' (n = {n})"
                    )));
                }
                let slot = if name.starts_with('x') { idx1 - 1 } else { n + idx1 - 1 };
                exps[slot] = exps[slot]
                    .checked_add(exp)
                    .ok_or_else(|| Error::Parse("exponent overflow".into()))?;
            }
            if !saw_factor && term.trim().is_empty() {
                return Err(Error::Parse("empty term".into()));
            }
            out.add_term(Monomial::from_exps(exps), coeff);
        }
        Ok(out)
    }
}

// ---- named-polynomial files ----

/// Recovers the field from a prime-power order.
pub fn field_of_order(q: u64) -> Result<FieldSpec> {
    if q < 2 {
        return Err(Error::InvalidArgument(format!("{q} is not a prime power")));
    }
    let mut p = 2;
    while p * p <= q {
        if q % p == 0 {
            break;
        }
        p += 1;
    }
    let p = if q % p == 0 { p } else { q };
    let mut e = 0;
    let mut m = q;
    while m > 1 {
        if m % p != 0 {
            return Err(Error::InvalidArgument(format!("{q} is not a prime power")));
        }
        m /= p;
        e += 1;
    }
    FieldSpec::new(p, e)
}

/// Serializes `name n q` header lines followed by canonical polynomial lines.
pub fn write_named_polys(entries: &[(String, Poly)]) -> String {
    let mut out = String::new();
    for (name, p) in entries {
        out.push_str(&format!("{} {} {}\n{}\n", name, p.n(), p.field().q(), p));
    }
    out
}

/// Parses the named-polynomial format produced by [`write_named_polys`].
pub fn read_named_polys(s: &str) -> Result<Vec<(String, Poly)>> {
    let mut lines = s.lines().filter(|l| !l.trim().is_empty());
    let mut out = Vec::new();
    while let Some(header) = lines.next() {
        let parts: Vec<&str> = header.split_whitespace().collect();
        if parts.len() != 3 {
            return Err(Error::Parse(format!("bad header line '{header}'")));
        }
        let name = parts[0].to_string();
        let n: usize = parts[1]
            .parse()
            .map_err(|_| Error::Parse(format!("bad n in '{header}'")))?;
        let q: u64 = parts[2]
            .parse()
            .map_err(|_| Error::Parse(format!("bad q in '{header}'")))?;
        let field = field_of_order(q)?;
        let body = lines
            .next()
            .ok_or_else(|| Error::Parse(format!("missing polynomial after '{header}'")))?;
        out.push((name, Poly::parse(body, field, n)?));
    }
    Ok(out)
}
