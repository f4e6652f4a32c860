//! Elements of the rational group algebra QG with exact arbitrary-precision
//! coefficients, plus the exact linear algebra (rank / solve / nullspace)
//! everything else leans on.  No tolerances: every identity is checked with
//! rational arithmetic.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num::bigint::BigInt;
use num::{Integer, One, Zero};

use crate::group::{generated, subgroup_table, GroupTable, Subgroup};
use crate::{Error, Result};

pub type Rational = num::BigRational;

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(num: i64, den: i64) -> Rational {
    assert!(den != 0);
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Always-reduced `p/q` form, denominator included even when it is 1, so the
/// output is stable and trivially re-parseable.
pub fn rational_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// An element of QG, stored sparsely as `element index -> coefficient` with
/// only nonzero coefficients present.
#[derive(Clone)]
pub struct AlgElement {
    group: Arc<GroupTable>,
    coeffs: BTreeMap<u8, Rational>,
}

impl PartialEq for AlgElement {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.group, &other.group) && self.coeffs == other.coeffs
    }
}
impl Eq for AlgElement {}

impl fmt::Debug for AlgElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> =
            self.coeffs.iter().map(|(g, c)| format!("{}*g{}", rational_string(c), g)).collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl AlgElement {
    pub fn zero(group: &Arc<GroupTable>) -> AlgElement {
        AlgElement { group: Arc::clone(group), coeffs: BTreeMap::new() }
    }

    pub fn one(group: &Arc<GroupTable>) -> AlgElement {
        AlgElement::from_element(group, 0)
    }

    pub fn from_element(group: &Arc<GroupTable>, g: u8) -> AlgElement {
        assert!((g as usize) < group.order());
        let mut coeffs = BTreeMap::new();
        coeffs.insert(g, Rational::one());
        AlgElement { group: Arc::clone(group), coeffs }
    }

    pub fn from_coeffs(
        group: &Arc<GroupTable>,
        pairs: impl IntoIterator<Item = (u8, Rational)>,
    ) -> Result<AlgElement> {
        let mut coeffs: BTreeMap<u8, Rational> = BTreeMap::new();
        for (g, c) in pairs {
            if (g as usize) >= group.order() {
                return Err(Error::BadTable(format!("element {g} out of range")));
            }
            let cur = coeffs.entry(g).or_insert_with(Rational::zero);
            *cur += c;
        }
        coeffs.retain(|_, v| !v.is_zero());
        Ok(AlgElement { group: Arc::clone(group), coeffs })
    }

    pub fn from_integer_coeffs(
        group: &Arc<GroupTable>,
        pairs: &[(u8, i64)],
    ) -> Result<AlgElement> {
        AlgElement::from_coeffs(group, pairs.iter().map(|&(g, c)| (g, rat_int(c))))
    }

    /// The averaged subgroup sum `(1/|H|) * sum of h in H`: an idempotent,
    /// central when `H` is normal.
    pub fn hat(h: &Subgroup) -> AlgElement {
        let n = rat_int(h.order() as i64);
        let coeffs = h.members().iter().map(|&m| (m, Rational::one() / &n)).collect();
        AlgElement { group: Arc::clone(h.group()), coeffs }
    }

    /// `hat` of the cyclic subgroup generated by `g`.
    pub fn cyclic_hat(group: &Arc<GroupTable>, g: u8) -> AlgElement {
        AlgElement::hat(&generated(group, &[g]))
    }

    pub fn group(&self) -> &Arc<GroupTable> {
        &self.group
    }

    pub fn coeffs(&self) -> &BTreeMap<u8, Rational> {
        &self.coeffs
    }

    pub fn coeff(&self, g: u8) -> Rational {
        self.coeffs.get(&g).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn support(&self) -> Vec<u8> {
        self.coeffs.keys().copied().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeff(0).is_one()
    }

    /// Dense coefficient vector of length |G|.
    pub fn dense(&self) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.group.order()];
        for (&g, c) in &self.coeffs {
            v[g as usize] = c.clone();
        }
        v
    }

    fn same(&self, o: &AlgElement) -> Result<()> {
        if Arc::ptr_eq(&self.group, &o.group) {
            Ok(())
        } else {
            Err(Error::MixedGroups)
        }
    }

    pub fn add(&self, o: &AlgElement) -> Result<AlgElement> {
        self.same(o)?;
        let mut coeffs = self.coeffs.clone();
        for (&g, c) in &o.coeffs {
            let cur = coeffs.entry(g).or_insert_with(Rational::zero);
            *cur += c;
        }
        coeffs.retain(|_, v| !v.is_zero());
        Ok(AlgElement { group: Arc::clone(&self.group), coeffs })
    }

    pub fn sub(&self, o: &AlgElement) -> Result<AlgElement> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> AlgElement {
        let coeffs = self.coeffs.iter().map(|(&g, c)| (g, -c.clone())).collect();
        AlgElement { group: Arc::clone(&self.group), coeffs }
    }

    pub fn scale(&self, c: &Rational) -> AlgElement {
        if c.is_zero() {
            return AlgElement::zero(&self.group);
        }
        let coeffs = self.coeffs.iter().map(|(&g, v)| (g, v * c)).collect();
        AlgElement { group: Arc::clone(&self.group), coeffs }
    }

    pub fn mul(&self, o: &AlgElement) -> Result<AlgElement> {
        self.same(o)?;
        let t: &GroupTable = &self.group;
        let mut coeffs: BTreeMap<u8, Rational> = BTreeMap::new();
        for (&g1, c1) in &self.coeffs {
            for (&g2, c2) in &o.coeffs {
                let g = t.mul(g1, g2);
                let cur = coeffs.entry(g).or_insert_with(Rational::zero);
                *cur += c1 * c2;
            }
        }
        coeffs.retain(|_, v| !v.is_zero());
        Ok(AlgElement { group: Arc::clone(&self.group), coeffs })
    }

    pub fn pow(&self, e: u64) -> Result<AlgElement> {
        let mut acc = AlgElement::one(&self.group);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Conjugate `x^g = g^{-1} x g`.
    pub fn conj(&self, g: u8) -> AlgElement {
        let t: &GroupTable = &self.group;
        let coeffs = self.coeffs.iter().map(|(&h, c)| (t.conj(h, g), c.clone())).collect();
        AlgElement { group: Arc::clone(&self.group), coeffs }
    }

    /// The classical involution `sum c_g g -> sum c_g g^{-1}`.
    pub fn star(&self) -> AlgElement {
        let t: &GroupTable = &self.group;
        let coeffs = self.coeffs.iter().map(|(&h, c)| (t.inv(h), c.clone())).collect();
        AlgElement { group: Arc::clone(&self.group), coeffs }
    }

    /// Sum of coefficients (the image under the trivial representation).
    pub fn augmentation(&self) -> Rational {
        let mut s = Rational::zero();
        for c in self.coeffs.values() {
            s += c;
        }
        s
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.values().all(|c| c.is_integer())
    }

    pub fn is_idempotent(&self) -> Result<bool> {
        Ok(self.mul(self)? == *self)
    }

    /// Central iff it commutes with a generating set of the group.
    pub fn is_central(&self) -> bool {
        self.group.generators().iter().all(|&g| {
            let ge = AlgElement::from_element(&self.group, g);
            ge.mul(self).unwrap() == self.mul(&ge).unwrap()
        })
    }

    pub fn commutes_with(&self, o: &AlgElement) -> Result<bool> {
        Ok(self.mul(o)? == o.mul(self)?)
    }
}

/// Both products vanish.
pub fn are_orthogonal(a: &AlgElement, b: &AlgElement) -> Result<bool> {
    Ok(a.mul(b)?.is_zero() && b.mul(a)?.is_zero())
}

/// Exact rank / solve / nullspace over the rationals.
///
/// The workhorse is fraction-free Bareiss elimination on the integer matrix
/// obtained by clearing denominators row by row (row scaling changes neither
/// rank nor solution sets); back-substitution then runs in rationals.
pub mod linalg {
    use super::*;

    fn clear_denominators(rows: &[Vec<Rational>]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|row| {
                let mut l = BigInt::one();
                for x in row {
                    l = l.lcm(x.denom());
                }
                row.iter()
                    .map(|x| {
                        let scaled = x * Rational::from_integer(l.clone());
                        debug_assert!(scaled.is_integer());
                        scaled.to_integer()
                    })
                    .collect()
            })
            .collect()
    }

    /// Fraction-free row echelon; returns the reduced matrix and the pivot
    /// column of each pivot row.
    fn bareiss_echelon(mut m: Vec<Vec<BigInt>>) -> (Vec<Vec<BigInt>>, Vec<usize>) {
        let rows = m.len();
        let cols = if rows == 0 { 0 } else { m[0].len() };
        let mut pivots = Vec::new();
        let mut prev = BigInt::one();
        let mut pr = 0usize;
        for col in 0..cols {
            if pr >= rows {
                break;
            }
            let Some(sel) = (pr..rows).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(pr, sel);
            for r in pr + 1..rows {
                for c in col + 1..cols {
                    let num = &m[pr][col] * &m[r][c] - &m[r][col] * &m[pr][c];
                    debug_assert!((&num % &prev).is_zero(), "Bareiss division must be exact");
                    m[r][c] = num / &prev;
                }
                m[r][col] = BigInt::zero();
            }
            prev = m[pr][col].clone();
            pivots.push(col);
            pr += 1;
        }
        (m, pivots)
    }

    pub fn rank(rows: &[Vec<Rational>]) -> usize {
        if rows.is_empty() {
            return 0;
        }
        let (_, pivots) = bareiss_echelon(clear_denominators(rows));
        pivots.len()
    }

    /// Dimension of `{x : rows * x = 0}` (columns are the unknowns).
    pub fn nullspace_dim(rows: &[Vec<Rational>]) -> usize {
        if rows.is_empty() {
            return 0;
        }
        rows[0].len() - rank(rows)
    }

    /// One exact solution of `A x = b` (free variables set to 0), or `None`
    /// when the system is inconsistent.
    pub fn solve(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(a.len(), b.len());
        if a.is_empty() {
            return Some(Vec::new());
        }
        let cols = a[0].len();
        let aug: Vec<Vec<Rational>> = a
            .iter()
            .zip(b)
            .map(|(row, rhs)| {
                let mut r = row.clone();
                r.push(rhs.clone());
                r
            })
            .collect();
        let (m, pivots) = bareiss_echelon(clear_denominators(&aug));
        if pivots.iter().any(|&p| p == cols) {
            return None; // a pivot in the rhs column: inconsistent
        }
        let mut x = vec![Rational::zero(); cols];
        for (r, &p) in pivots.iter().enumerate().rev() {
            let mut acc = Rational::from_integer(m[r][cols].clone());
            for c in p + 1..cols {
                if !m[r][c].is_zero() {
                    acc -= Rational::from_integer(m[r][c].clone()) * &x[c];
                }
            }
            x[p] = acc / Rational::from_integer(m[r][p].clone());
        }
        Some(x)
    }

    /// Indices of a maximal linearly independent subset of `rows`, greedily
    /// from the front (rational Gauss with a running echelon basis).
    pub fn independent_rows(rows: &[Vec<Rational>]) -> Vec<usize> {
        let mut basis: Vec<(usize, Vec<Rational>)> = Vec::new(); // (pivot col, normalized row)
        let mut kept = Vec::new();
        for (i, row) in rows.iter().enumerate() {
            let mut v = row.clone();
            for (p, b) in &basis {
                if !v[*p].is_zero() {
                    let f = v[*p].clone();
                    for (vc, bc) in v.iter_mut().zip(b) {
                        *vc -= &f * bc;
                    }
                }
            }
            if let Some(p) = v.iter().position(|x| !x.is_zero()) {
                let lead = v[p].clone();
                for vc in v.iter_mut() {
                    *vc /= &lead;
                }
                basis.push((p, v));
                basis.sort_by_key(|(p, _)| *p);
                kept.push(i);
            }
        }
        kept
    }
}

/// Invert `u` in the integral group ring, with the search confined to the
/// subalgebra spanned by the subgroup `S` generated by the support of `u`
/// (that subalgebra is unital and finite-dimensional, so it already contains
/// the inverse whenever one exists).  The returned inverse is verified
/// two-sided and integral.
pub fn inverse_in_zg(u: &AlgElement) -> Result<AlgElement> {
    if !u.is_integral() {
        return Err(Error::NotAUnitNonIntegral);
    }
    if u.is_zero() {
        return Err(Error::NotAUnitSingular);
    }
    let group = u.group();
    let s = generated(group, &u.support());
    let (st, embed) = subgroup_table(group, &s)?;
    let mut back = vec![u8::MAX; group.order()];
    for (i, &m) in embed.iter().enumerate() {
        back[m as usize] = i as u8;
    }
    let us = AlgElement::from_coeffs(
        &st,
        u.coeffs().iter().map(|(&g, c)| (back[g as usize], c.clone())),
    )?;
    // left-multiplication matrix of u on QS: M[g][h] = u_{g h^-1}
    let n = st.order();
    let mut m = vec![vec![Rational::zero(); n]; n];
    for g in 0..n {
        for h in 0..n {
            m[g][h] = us.coeff(st.mul(g as u8, st.inv(h as u8)));
        }
    }
    let mut e0 = vec![Rational::zero(); n];
    e0[0] = Rational::one();
    let x = linalg::solve(&m, &e0).ok_or(Error::NotAUnitSingular)?;
    let inv_s = AlgElement::from_coeffs(
        group,
        x.into_iter().enumerate().map(|(i, c)| (embed[i], c)),
    )?;
    if !inv_s.is_integral() {
        return Err(Error::NotAUnitNonIntegral);
    }
    let lhs = u.mul(&inv_s)?;
    let rhs = inv_s.mul(u)?;
    if !lhs.is_one() || !rhs.is_one() {
        return Err(Error::Defect("solved inverse failed the two-sided product check".into()));
    }
    Ok(inv_s)
}

/// Q-dimension of the two-sided ideal `QG e` for a central idempotent `e`:
/// the rank of `{g e : g in G}`.
pub fn qdimension(e: &AlgElement) -> Result<usize> {
    if !e.is_idempotent()? || !e.is_central() {
        return Err(Error::NotCentralIdempotent);
    }
    let group = e.group();
    let rows: Vec<Vec<Rational>> = group
        .elements()
        .map(|g| Ok(AlgElement::from_element(group, g).mul(e)?.dense()))
        .collect::<Result<_>>()?;
    Ok(linalg::rank(&rows))
}

/// Dimension of the center of `QG e` for a central idempotent `e`: solve the
/// commutation constraints `z (h e) = (h e) z` for group generators `h` over
/// a basis of `QG e`.
pub fn center_dimension(e: &AlgElement) -> Result<usize> {
    if !e.is_idempotent()? || !e.is_central() {
        return Err(Error::NotCentralIdempotent);
    }
    let group = e.group();
    let all: Vec<AlgElement> = group
        .elements()
        .map(|g| AlgElement::from_element(group, g).mul(e))
        .collect::<Result<_>>()?;
    let dense: Vec<Vec<Rational>> = all.iter().map(AlgElement::dense).collect();
    let keep = linalg::independent_rows(&dense);
    let basis: Vec<&AlgElement> = keep.iter().map(|&i| &all[i]).collect();
    // constraint matrix: columns = basis coords of z, rows = (generator, coordinate)
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    let ncols = basis.len();
    for &h in group.generators() {
        let he = AlgElement::from_element(group, h).mul(e)?;
        let comms: Vec<Vec<Rational>> = basis
            .iter()
            .map(|b| Ok(b.mul(&he)?.sub(&he.mul(b)?)?.dense()))
            .collect::<Result<_>>()?;
        for coord in 0..group.order() {
            let mut row = Vec::with_capacity(ncols);
            for c in &comms {
                row.push(c[coord].clone());
            }
            rows.push(row);
        }
    }
    if rows.is_empty() {
        // no generators (trivial group): the whole corner is central
        return Ok(ncols);
    }
    Ok(linalg::nullspace_dim(&rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{self, parse_spec};
    use proptest::prelude::*;

    fn d8() -> Arc<GroupTable> {
        parse_spec("dihedral:8", 256).unwrap()
    }

    #[test]
    fn basic_arithmetic_and_involutions() {
        let g = d8();
        let a = AlgElement::from_integer_coeffs(&g, &[(0, 1), (1, 2), (4, -1)]).unwrap();
        let b = AlgElement::from_integer_coeffs(&g, &[(1, 1), (2, 3)]).unwrap();
        assert_eq!(a.add(&b).unwrap().sub(&b).unwrap(), a);
        assert_eq!(a.sub(&a).unwrap(), AlgElement::zero(&g));
        assert_eq!(a.augmentation(), rat_int(2));
        assert_eq!(a.mul(&b).unwrap().augmentation(), rat_int(8));
        // star is an anti-automorphism
        let sab = a.mul(&b).unwrap().star();
        let sba = b.star().mul(&a.star()).unwrap();
        assert_eq!(sab, sba);
        // conjugation is an automorphism fixing central elements
        for t in g.elements() {
            let ca = a.conj(t);
            let cb = b.conj(t);
            assert_eq!(a.mul(&b).unwrap().conj(t), ca.mul(&cb).unwrap());
        }
        // mixed-group operands are rejected
        let other = parse_spec("cyclic:8", 256).unwrap();
        let x = AlgElement::one(&other);
        assert!(matches!(a.add(&x), Err(Error::MixedGroups)));
    }

    #[test]
    fn hats_are_idempotent_and_central_iff_normal() {
        let g = d8();
        for h in group::subgroups(&g) {
            let hat = AlgElement::hat(&h);
            assert!(hat.is_idempotent().unwrap());
            assert_eq!(hat.is_central(), group::is_normal(&h));
            assert_eq!(hat.augmentation(), rat_int(1));
        }
    }

    #[test]
    fn powers_match_repeated_multiplication() {
        let g = d8();
        let a = AlgElement::from_integer_coeffs(&g, &[(1, 1), (4, 1)]).unwrap();
        let mut acc = AlgElement::one(&g);
        for e in 0..6u64 {
            assert_eq!(a.pow(e).unwrap(), acc);
            acc = acc.mul(&a).unwrap();
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn ring_identities(
            xs in proptest::collection::vec((0u8..8, -4i64..5, 1i64..4), 0..5),
            ys in proptest::collection::vec((0u8..8, -4i64..5, 1i64..4), 0..5),
            zs in proptest::collection::vec((0u8..8, -4i64..5, 1i64..4), 0..5),
        ) {
            let g = d8();
            let mk = |v: &Vec<(u8, i64, i64)>| {
                AlgElement::from_coeffs(&g, v.iter().map(|&(e, n, d)| (e, rat(n, d)))).unwrap()
            };
            let (a, b, c) = (mk(&xs), mk(&ys), mk(&zs));
            // associativity and distributivity
            prop_assert_eq!(
                a.mul(&b).unwrap().mul(&c).unwrap(),
                a.mul(&b.mul(&c).unwrap()).unwrap()
            );
            prop_assert_eq!(
                a.add(&b).unwrap().mul(&c).unwrap(),
                a.mul(&c).unwrap().add(&b.mul(&c).unwrap()).unwrap()
            );
            // augmentation is a ring map
            prop_assert_eq!(a.mul(&b).unwrap().augmentation(), a.augmentation() * b.augmentation());
            // star is involutive
            prop_assert_eq!(a.star().star(), a);
        }
    }

    fn lcg_matrix(seed: u64, rows: usize, cols: usize) -> Vec<Vec<Rational>> {
        let mut state = seed;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 33) % 11) as i64 - 5
        };
        (0..rows).map(|_| (0..cols).map(|_| rat_int(next())).collect()).collect()
    }

    /// Plain rational Gaussian elimination: the oracle for the Bareiss path.
    fn naive_rank(rows: &[Vec<Rational>]) -> usize {
        let mut m: Vec<Vec<Rational>> = rows.to_vec();
        let (nr, nc) = (m.len(), if m.is_empty() { 0 } else { m[0].len() });
        let mut rank = 0;
        for col in 0..nc {
            let Some(sel) = (rank..nr).find(|&r| !m[r][col].is_zero()) else { continue };
            m.swap(rank, sel);
            let pivot = m[rank][col].clone();
            for r in 0..nr {
                if r != rank && !m[r][col].is_zero() {
                    let f = &m[r][col] / &pivot;
                    for c in col..nc {
                        let sub = &f * &m[rank][c];
                        m[r][c] -= sub;
                    }
                }
            }
            rank += 1;
            if rank == nr {
                break;
            }
        }
        rank
    }

    #[test]
    fn bareiss_rank_matches_naive_gauss() {
        for seed in 0..24u64 {
            let rows = 1 + (seed as usize % 6);
            let cols = 1 + ((seed as usize * 7) % 6);
            let m = lcg_matrix(seed, rows, cols);
            let expect = naive_rank(&m);
            assert_eq!(linalg::rank(&m), expect, "seed {seed}");
            assert_eq!(linalg::independent_rows(&m).len(), expect, "seed {seed}");
            assert_eq!(linalg::nullspace_dim(&m), cols - expect, "seed {seed}");
        }
        // a rank-deficient matrix with denominators
        let m = vec![
            vec![rat(1, 2), rat(1, 3)],
            vec![rat(3, 2), rat(1, 1)],
            vec![rat(2, 1), rat(4, 3)],
        ];
        assert_eq!(linalg::rank(&m), naive_rank(&m));
    }

    #[test]
    fn solve_finds_exact_solutions_and_detects_inconsistency() {
        for seed in 0..16u64 {
            let n = 2 + (seed as usize % 4);
            let a = lcg_matrix(seed.wrapping_add(100), n, n);
            let xtrue: Vec<Rational> = (0..n).map(|i| rat(i as i64 + 1, 3)).collect();
            let b: Vec<Rational> = a
                .iter()
                .map(|row| row.iter().zip(&xtrue).map(|(m, x)| m * x).sum())
                .collect();
            if let Some(x) = linalg::solve(&a, &b) {
                // verify A x = b exactly (solution need not equal xtrue if A is singular)
                for (row, rhs) in a.iter().zip(&b) {
                    let lhs: Rational = row.iter().zip(&x).map(|(m, v)| m * v).sum();
                    assert_eq!(&lhs, rhs, "seed {seed}");
                }
            } else {
                panic!("consistent system reported as inconsistent (seed {seed})");
            }
        }
        // inconsistent: x + y = 1, x + y = 2
        let a = vec![vec![rat_int(1), rat_int(1)], vec![rat_int(1), rat_int(1)]];
        let b = vec![rat_int(1), rat_int(2)];
        assert!(linalg::solve(&a, &b).is_none());
    }

    #[test]
    fn integral_inverses_are_certified() {
        // trivial units +-g invert to +-g^-1
        let g = parse_spec("cyclic:12", 256).unwrap();
        let u = AlgElement::from_element(&g, 5);
        let inv = inverse_in_zg(&u).unwrap();
        assert_eq!(inv, AlgElement::from_element(&g, g.inv(5)));
        let nu = u.neg();
        assert_eq!(inverse_in_zg(&nu).unwrap(), inv.neg());

        // a nontrivial unit of Z C5 with its known integral inverse
        let c5 = parse_spec("cyclic:5", 256).unwrap();
        let u = AlgElement::from_integer_coeffs(&c5, &[(0, -2), (1, 1), (2, 3), (3, 1), (4, -2)])
            .unwrap();
        let inv = inverse_in_zg(&u).unwrap();
        assert!(inv.is_integral());
        assert!(u.mul(&inv).unwrap().is_one());
        assert!(inv.mul(&u).unwrap().is_one());

        // zero divisor: (1 + g + g^2 + g^3) (1 - g) = 0 in C4
        let c4 = parse_spec("cyclic:4", 256).unwrap();
        let zd = AlgElement::from_integer_coeffs(&c4, &[(0, 1), (1, 1), (2, 1), (3, 1)]).unwrap();
        assert!(matches!(inverse_in_zg(&zd), Err(Error::NotAUnitSingular)));

        // rational unit, non-integral inverse
        let two = AlgElement::from_integer_coeffs(&c4, &[(0, 2)]).unwrap();
        assert!(matches!(inverse_in_zg(&two), Err(Error::NotAUnitNonIntegral)));

        // non-integral input is not a unit of the integral group ring
        let half = AlgElement::from_coeffs(&c4, [(0u8, rat(1, 2))]).unwrap();
        assert!(matches!(inverse_in_zg(&half), Err(Error::NotAUnitNonIntegral)));
    }

    #[test]
    fn dimensions_of_ideals_and_centers() {
        let c4 = parse_spec("cyclic:4", 256).unwrap();
        let one = AlgElement::one(&c4);
        assert_eq!(qdimension(&one).unwrap(), 4);
        assert_eq!(center_dimension(&one).unwrap(), 4);

        let ghat = AlgElement::cyclic_hat(&c4, 1);
        assert_eq!(qdimension(&ghat).unwrap(), 1);

        // (1 - g^2)/2 cuts out the Q(i) component of Q C4
        let e = AlgElement::from_coeffs(&c4, [(0u8, rat(1, 2)), (2u8, rat(-1, 2))]).unwrap();
        assert!(e.is_idempotent().unwrap());
        assert_eq!(qdimension(&e).unwrap(), 2);
        assert_eq!(center_dimension(&e).unwrap(), 2);

        // the center of Q D8 has dimension = number of conjugacy classes
        let g = d8();
        let one = AlgElement::one(&g);
        assert_eq!(center_dimension(&one).unwrap(), 5);
        assert_eq!(group::conjugacy_classes(&g).len(), 5);

        // non-idempotents are rejected
        let x = AlgElement::from_integer_coeffs(&g, &[(1, 1)]).unwrap();
        assert!(matches!(qdimension(&x), Err(Error::NotCentralIdempotent)));
    }
}
