//! Finite groups as concrete multiplication tables, plus the subgroup-lattice
//! machinery the rest of the crate is built on.
//!
//! Elements are indices `0..order` with `0` the identity; the table is fully
//! validated at construction (identity, Latin-square property, associativity),
//! so everything downstream may assume it really is a group.  Orders are
//! capped at 256 so element sets fit in a fixed 256-bit [`Mask`].

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::arith::{factorize, gcd, is_prime, modinv, multiplicative_order, padic_val};
use crate::{Error, Result};

pub const MAX_ORDER: usize = 256;

/// 256-bit element set: the working currency of subgroup computations.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Mask([u64; 4]);

impl Mask {
    pub fn empty() -> Mask {
        Mask([0; 4])
    }

    pub fn singleton(x: u8) -> Mask {
        let mut m = Mask::empty();
        m.insert(x);
        m
    }

    pub fn insert(&mut self, x: u8) {
        self.0[(x >> 6) as usize] |= 1u64 << (x & 63);
    }

    pub fn contains(&self, x: u8) -> bool {
        self.0[(x >> 6) as usize] >> (x & 63) & 1 == 1
    }

    pub fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn union(&self, o: &Mask) -> Mask {
        Mask([self.0[0] | o.0[0], self.0[1] | o.0[1], self.0[2] | o.0[2], self.0[3] | o.0[3]])
    }

    pub fn intersect(&self, o: &Mask) -> Mask {
        Mask([self.0[0] & o.0[0], self.0[1] & o.0[1], self.0[2] & o.0[2], self.0[3] & o.0[3]])
    }

    pub fn is_subset(&self, o: &Mask) -> bool {
        self.intersect(o) == *self
    }

    pub fn members(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.count());
        for (w, word) in self.0.iter().enumerate() {
            let mut bits = *word;
            while bits != 0 {
                let b = bits.trailing_zeros();
                out.push((w as u32 * 64 + b) as u8);
                bits &= bits - 1;
            }
        }
        out
    }

    pub fn from_members<I: IntoIterator<Item = u8>>(it: I) -> Mask {
        let mut m = Mask::empty();
        for x in it {
            m.insert(x);
        }
        m
    }
}

impl fmt::Debug for Mask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mask{:?}", self.members())
    }
}

/// A finite group given by its full multiplication table.
pub struct GroupTable {
    name: String,
    order: usize,
    table: Vec<u8>,
    inv: Vec<u8>,
    elem_order: Vec<u16>,
    generators: Vec<u8>,
}

impl fmt::Debug for GroupTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupTable({}, order {})", self.name, self.order)
    }
}

impl GroupTable {
    /// Validate a raw table (identity must be index 0) and freeze it.
    pub fn new(name: impl Into<String>, order: usize, table: Vec<u8>) -> Result<GroupTable> {
        let name = name.into();
        if order == 0 {
            return Err(Error::BadTable("empty group".into()));
        }
        if order > MAX_ORDER {
            return Err(Error::CapExceeded { got: order, cap: MAX_ORDER });
        }
        if table.len() != order * order {
            return Err(Error::BadTable(format!(
                "table has {} entries, expected {}",
                table.len(),
                order * order
            )));
        }
        if let Some(&bad) = table.iter().find(|&&x| (x as usize) >= order) {
            return Err(Error::BadTable(format!("entry {bad} out of range 0..{order}")));
        }
        let at = |i: usize, j: usize| table[i * order + j] as usize;
        for j in 0..order {
            if at(0, j) != j || at(j, 0) != j {
                return Err(Error::BadTable("index 0 is not a two-sided identity".into()));
            }
        }
        // Latin square: every row and column is a permutation.
        for i in 0..order {
            let mut row = Mask::empty();
            let mut col = Mask::empty();
            for j in 0..order {
                row.insert(table[i * order + j]);
                col.insert(table[j * order + i]);
            }
            if row.count() != order || col.count() != order {
                return Err(Error::BadTable(format!("row or column {i} is not a permutation")));
            }
        }
        for a in 0..order {
            for b in 0..order {
                let ab = at(a, b);
                for c in 0..order {
                    if at(ab, c) != at(a, at(b, c)) {
                        return Err(Error::BadTable(format!(
                            "associativity fails at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        // Identity + associativity + Latin rows give two-sided inverses.
        let mut inv = vec![0u8; order];
        for g in 0..order {
            let gi = (0..order).find(|&x| at(g, x) == 0).expect("row is a permutation");
            if at(gi, g) != 0 {
                return Err(Error::BadTable(format!("element {g} has no two-sided inverse")));
            }
            inv[g] = gi as u8;
        }
        let mut elem_order = vec![0u16; order];
        for g in 0..order {
            let mut x = g;
            let mut k = 1u16;
            while x != 0 {
                x = at(x, g);
                k += 1;
            }
            elem_order[g] = k;
        }
        let mut gt =
            GroupTable { name, order, table, inv, elem_order, generators: Vec::new() };
        gt.generators = gt.greedy_generators();
        Ok(gt)
    }

    fn greedy_generators(&self) -> Vec<u8> {
        let mut gens = Vec::new();
        let mut have = Mask::singleton(0);
        while have.count() < self.order {
            let g = (0..self.order as u16).map(|x| x as u8).find(|&x| !have.contains(x)).unwrap();
            gens.push(g);
            let mut seed = have;
            seed.insert(g);
            have = Mask::from_members(closure_members(self, seed));
        }
        gens
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub(crate) fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn elements(&self) -> impl Iterator<Item = u8> {
        (0..self.order as u16).map(|x| x as u8)
    }

    /// A small generating set (greedy, deterministic).
    pub fn generators(&self) -> &[u8] {
        &self.generators
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.table[a as usize * self.order + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: u8) -> u8 {
        self.inv[a as usize]
    }

    pub fn order_of(&self, a: u8) -> usize {
        self.elem_order[a as usize] as usize
    }

    pub fn power(&self, g: u8, e: i64) -> u8 {
        let ord = self.order_of(g) as i64;
        let mut e = e % ord;
        if e < 0 {
            e += ord;
        }
        let mut acc = 0u8;
        for _ in 0..e {
            acc = self.mul(acc, g);
        }
        acc
    }

    /// Conjugate `a^g = g^{-1} a g`.
    pub fn conj(&self, a: u8, g: u8) -> u8 {
        self.mul(self.mul(self.inv(g), a), g)
    }

    /// Commutator `[a, b] = a^{-1} b^{-1} a b`.
    pub fn commutator(&self, a: u8, b: u8) -> u8 {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a..self.order).all(|b| self.mul(a as u8, b as u8) == self.mul(b as u8, a as u8)))
    }

    pub fn exponent(&self) -> u64 {
        let mut e = 1u64;
        for g in 0..self.order {
            let o = self.elem_order[g] as u64;
            e = e / gcd(e, o) * o;
        }
        e
    }

    /// Split `g` into commuting parts of 2-power and odd order
    /// (both powers of `g`, product `g`).
    pub fn two_part_split(&self, g: u8) -> (u8, u8) {
        let ord = self.order_of(g) as u64;
        let a = padic_val(ord, 2);
        let two = 1u64 << a;
        let m = ord / two;
        let e2 = m * modinv(m % two.max(1), two).unwrap_or(0) % ord.max(1);
        let e2p = two * modinv(two % m.max(1), m).unwrap_or(0) % ord.max(1);
        (self.power(g, e2 as i64), self.power(g, e2p as i64))
    }
}

/// Two `Arc<GroupTable>` handles denote the same group only if they are the
/// same allocation; all cross-element operations insist on this.
pub fn same_group(a: &Arc<GroupTable>, b: &Arc<GroupTable>) -> bool {
    Arc::ptr_eq(a, b)
}

fn from_mul(
    name: impl Into<String>,
    order: usize,
    f: impl Fn(usize, usize) -> usize,
) -> Result<GroupTable> {
    if order == 0 || order > MAX_ORDER {
        return Err(Error::CapExceeded { got: order, cap: MAX_ORDER });
    }
    let mut table = vec![0u8; order * order];
    for i in 0..order {
        for j in 0..order {
            let v = f(i, j);
            debug_assert!(v < order);
            table[i * order + j] = v as u8;
        }
    }
    GroupTable::new(name, order, table)
}

pub fn cyclic(n: usize) -> Result<GroupTable> {
    if n == 0 {
        return Err(Error::SpecParse("cyclic group order must be positive".into()));
    }
    from_mul(format!("cyclic:{n}"), n, |i, j| (i + j) % n)
}

/// Dihedral group of the given (even, >= 4) order: rotations `0..m`, then
/// reflections `m..2m`.
pub fn dihedral(order: usize) -> Result<GroupTable> {
    if order < 4 || order % 2 != 0 {
        return Err(Error::SpecParse(format!(
            "dihedral order must be even and >= 4, got {order}"
        )));
    }
    let m = order / 2;
    from_mul(format!("dihedral:{order}"), order, |x, y| {
        let (i1, j1) = (x % m, x / m);
        let (i2, j2) = (y % m, y / m);
        let i = if j1 == 1 { (i1 + m - i2 % m) % m } else { (i1 + i2) % m };
        i + ((j1 + j2) % 2) * m
    })
}

/// Metacyclic p-group `<a, b | a^(p^n) = b^(p^k) = 1, b^-1 a b = a^r>`.
/// For `k = 0` this is the cyclic group (`r` must be 1); otherwise `r` must
/// have multiplicative order exactly `p^k` mod `p^n`.
pub fn p1(p: u64, n: u32, k: u32, r: u64) -> Result<GroupTable> {
    if !is_prime(p) {
        return Err(Error::InvalidPresentation(format!("{p} is not prime")));
    }
    if n == 0 {
        return Err(Error::InvalidPresentation("need n >= 1".into()));
    }
    if n > 8 || k > 8 {
        return Err(Error::CapExceeded { got: usize::MAX, cap: MAX_ORDER });
    }
    let order128 = (p as u128).checked_pow(n + k).unwrap_or(u128::MAX);
    if order128 > MAX_ORDER as u128 {
        return Err(Error::CapExceeded {
            got: order128.min(usize::MAX as u128) as usize,
            cap: MAX_ORDER,
        });
    }
    let order = order128 as usize;
    let pn = p.pow(n);
    let pk = p.pow(k);
    if r == 0 || r >= pn {
        return Err(Error::InvalidPresentation(format!("need 1 <= r < p^n = {pn}")));
    }
    if k == 0 {
        if r != 1 {
            return Err(Error::InvalidPresentation("k = 0 forces r = 1".into()));
        }
    } else {
        if gcd(r, p) != 1 || multiplicative_order(r, pn) != pk {
            return Err(Error::InvalidPresentation(format!(
                "r = {r} must have multiplicative order p^k = {pk} mod p^n = {pn}"
            )));
        }
    }
    // b a b^-1 = a^(r*) with r* the inverse of r, so b^j a^i = a^(i r*^j) b^j.
    let rstar = modinv(r, pn).expect("r is a unit mod p^n");
    let mut rpow = vec![1u64; pk as usize];
    for j in 1..pk as usize {
        rpow[j] = (rpow[j - 1] as u128 * rstar as u128 % pn as u128) as u64;
    }
    let (pnu, pku) = (pn as usize, pk as usize);
    from_mul(format!("p1:{p},{n},{k},{r}"), order, move |x, y| {
        let (i1, j1) = (x / pku, x % pku);
        let (i2, j2) = (y / pku, y % pku);
        let i = (i1 as u128 + i2 as u128 * rpow[j1] as u128) % pnu as u128;
        (i as usize) * pku + (j1 + j2) % pku
    })
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum InverterSquare {
    One,          // c^2 = 1
    HalfTurn,     // c^2 = a^(2^(n-1))
}

/// Shared builder for the order-2^(n+k+1) groups
/// `<a, b, c | a^(2^n) = b^(2^k) = 1, b^-1 a b = a^r, c^-1 a c = a^-1, [b,c] = 1>`
/// with `c^2` either trivial or the half-turn `a^(2^(n-1))`.
fn two_group_with_inverter(
    name: String,
    n: u32,
    k: u32,
    r: u64,
    square: InverterSquare,
) -> Result<GroupTable> {
    if n < 2 {
        return Err(Error::InvalidPresentation("need n >= 2".into()));
    }
    if n > 8 || k > 8 || n + k + 1 > 8 {
        return Err(Error::CapExceeded { got: usize::MAX, cap: MAX_ORDER });
    }
    let order = 1usize << (n + k + 1);
    let pn = 1u64 << n;
    let pk = 1u64 << k;
    if r == 0 || r >= pn {
        return Err(Error::InvalidPresentation(format!("need 1 <= r < 2^n = {pn}")));
    }
    if k == 0 {
        if r != 1 {
            return Err(Error::InvalidPresentation("k = 0 forces r = 1".into()));
        }
    } else {
        if r % 4 != 1 {
            return Err(Error::InvalidPresentation(format!("r = {r} must be 1 mod 4")));
        }
        if multiplicative_order(r, pn) != pk {
            return Err(Error::InvalidPresentation(format!(
                "r = {r} must have multiplicative order 2^k = {pk} mod 2^n = {pn}"
            )));
        }
    }
    let rstar = modinv(r, pn).expect("r odd");
    let mut rpow = vec![1u64; pk as usize];
    for j in 1..pk as usize {
        rpow[j] = (rpow[j - 1] as u128 * rstar as u128 % pn as u128) as u64;
    }
    let (pnu, pku) = (pn as usize, pk as usize);
    let half = pnu / 2;
    from_mul(name, order, move |x, y| {
        let (i1, rest1) = (x / (2 * pku), x % (2 * pku));
        let (j1, t1) = (rest1 / 2, rest1 % 2);
        let (i2, rest2) = (y / (2 * pku), y % (2 * pku));
        let (j2, t2) = (rest2 / 2, rest2 % 2);
        // move a^(i2) left through c^(t1) then b^(j1)
        let mut i2s = i2 as u128 * rpow[j1] as u128 % pnu as u128;
        if t1 == 1 {
            i2s = (pnu as u128 - i2s) % pnu as u128;
        }
        let mut i = (i1 as u128 + i2s) % pnu as u128;
        if t1 == 1 && t2 == 1 && square == InverterSquare::HalfTurn {
            i = (i + half as u128) % pnu as u128;
        }
        (i as usize) * 2 * pku + ((j1 + j2) % pku) * 2 + (t1 + t2) % 2
    })
}

/// `<a, b, c | a^(2^n) = b^(2^k) = c^2 = 1, b^-1 a b = a^r, c^-1 a c = a^-1, [b,c] = 1>`,
/// `r = 1 mod 4` (dihedral-type for `k = 0`).
pub fn p2(n: u32, k: u32, r: u64) -> Result<GroupTable> {
    two_group_with_inverter(format!("p2:{n},{k},{r}"), n, k, r, InverterSquare::One)
}

/// Same presentation but `c^2 = a^(2^(n-1))` (quaternion-type for `k = 0`).
pub fn p3(n: u32, k: u32, r: u64) -> Result<GroupTable> {
    two_group_with_inverter(format!("p3:{n},{k},{r}"), n, k, r, InverterSquare::HalfTurn)
}

/// Generalized quaternion group of order `2^t`, `t >= 3`.
pub fn quaternion(order: usize) -> Result<GroupTable> {
    if order < 8 || !order.is_power_of_two() {
        return Err(Error::SpecParse(format!(
            "quaternion order must be a power of two >= 8, got {order}"
        )));
    }
    let n = order.trailing_zeros() - 1;
    let mut g = p3(n, 0, 1)?;
    g.set_name(format!("quaternion:{order}"));
    Ok(g)
}

/// The binary tetrahedral group: the quaternion group of order 8 extended by
/// an automorphism of order 3 cycling the three maximal cyclic subgroups.
pub fn sl23() -> Result<GroupTable> {
    let q8 = p3(2, 0, 1)?;
    // q8 indices: a^i c^t -> 2 i + t; the order-3 automorphism sends
    // a -> c -> ac -> a.
    let a = 2u8;
    let c = 1u8;
    let ac = q8.mul(a, c);
    let mut phi = vec![0u8; 8];
    for i in 0..4u8 {
        for t in 0..2u8 {
            let e = 2 * i + t;
            let mut img = q8.power(c, i as i64);
            if t == 1 {
                img = q8.mul(img, ac);
            }
            phi[e as usize] = img;
        }
    }
    // sanity: phi is an automorphism of order 3
    for x in 0..8u8 {
        for y in 0..8u8 {
            debug_assert_eq!(phi[q8.mul(x, y) as usize], q8.mul(phi[x as usize], phi[y as usize]));
        }
        debug_assert_eq!(phi[phi[phi[x as usize] as usize] as usize], x);
    }
    let phi2: Vec<u8> = (0..8).map(|x| phi[phi[x] as usize]).collect();
    let id: Vec<u8> = (0..8u8).collect();
    let phis = [id, phi, phi2];
    from_mul("sl23".to_string(), 24, move |x, y| {
        let (q1, s1) = (x / 3, x % 3);
        let (q2, s2) = (y / 3, y % 3);
        let q = q8.mul(q1 as u8, phis[s1][q2]) as usize;
        q * 3 + (s1 + s2) % 3
    })
}

/// Direct product, mixed-radix indexing with the leftmost factor varying
/// slowest.
pub fn product(parts: Vec<GroupTable>) -> Result<GroupTable> {
    if parts.is_empty() {
        return Err(Error::SpecParse("empty product".into()));
    }
    let mut order = 1usize;
    for p in &parts {
        order = order
            .checked_mul(p.order())
            .filter(|&x| x <= MAX_ORDER)
            .ok_or(Error::CapExceeded { got: usize::MAX, cap: MAX_ORDER })?;
    }
    let name = parts.iter().map(|p| p.name().to_string()).collect::<Vec<_>>().join("*");
    let sizes: Vec<usize> = parts.iter().map(|p| p.order()).collect();
    let decode = move |mut x: usize, sizes: &[usize]| -> Vec<usize> {
        let mut digits = vec![0usize; sizes.len()];
        for t in (0..sizes.len()).rev() {
            digits[t] = x % sizes[t];
            x /= sizes[t];
        }
        digits
    };
    from_mul(format!("product:{name}"), order, move |x, y| {
        let dx = decode(x, &sizes);
        let dy = decode(y, &sizes);
        let mut out = 0usize;
        for t in 0..sizes.len() {
            out = out * sizes[t] + parts[t].mul(dx[t] as u8, dy[t] as u8) as usize;
        }
        out
    })
}

/// Parse `(1 2 3)(4 5),(1 2)`-style generator lists (1-based points, cycles
/// within one generator composed left to right) and close under the product
/// `(f g)(x) = g(f(x))`, i.e. "apply f, then g".
pub fn from_permutations(spec: &str, cap: usize) -> Result<GroupTable> {
    const MAX_DEGREE: usize = 2048;
    let mut gens: Vec<Vec<Vec<usize>>> = Vec::new(); // per generator: list of cycles
    let mut degree = 0usize;
    for gen_text in spec.split(',') {
        let gen_text = gen_text.trim();
        if gen_text.is_empty() {
            return Err(Error::SpecParse("empty permutation generator".into()));
        }
        let mut cycles = Vec::new();
        let mut rest = gen_text;
        while !rest.is_empty() {
            if !rest.starts_with('(') {
                return Err(Error::SpecParse(format!("expected '(' in '{gen_text}'")));
            }
            let close = rest
                .find(')')
                .ok_or_else(|| Error::SpecParse(format!("unclosed cycle in '{gen_text}'")))?;
            let body = &rest[1..close];
            let mut cycle = Vec::new();
            for tok in body.split_whitespace() {
                let p: usize = tok
                    .parse()
                    .map_err(|_| Error::SpecParse(format!("bad point '{tok}'")))?;
                if p == 0 || p > MAX_DEGREE {
                    return Err(Error::SpecParse(format!("point {p} out of range")));
                }
                if cycle.contains(&(p - 1)) {
                    return Err(Error::SpecParse(format!("repeated point {p} in a cycle")));
                }
                degree = degree.max(p);
                cycle.push(p - 1);
            }
            if !cycle.is_empty() {
                cycles.push(cycle);
            }
            rest = rest[close + 1..].trim_start();
        }
        gens.push(cycles);
    }
    if degree == 0 {
        return Err(Error::SpecParse("no points in permutation spec".into()));
    }
    let gen_perms: Vec<Vec<u16>> = gens
        .iter()
        .map(|cycles| {
            let mut perm: Vec<u16> = (0..degree as u16).collect();
            for cycle in cycles {
                // apply the accumulated permutation, then this cycle
                let mut next = perm.clone();
                for x in 0..degree {
                    let mid = perm[x] as usize;
                    let img = cycle
                        .iter()
                        .position(|&c| c == mid)
                        .map(|pos| cycle[(pos + 1) % cycle.len()])
                        .unwrap_or(mid);
                    next[x] = img as u16;
                }
                perm = next;
            }
            perm
        })
        .collect();

    let compose = |f: &[u16], g: &[u16]| -> Vec<u16> {
        // (f g)(x) = g(f(x))
        f.iter().map(|&y| g[y as usize]).collect()
    };
    let identity: Vec<u16> = (0..degree as u16).collect();
    let mut index = std::collections::BTreeMap::new();
    let mut elems: Vec<Vec<u16>> = vec![identity.clone()];
    index.insert(identity, 0usize);
    let mut i = 0;
    while i < elems.len() {
        for gp in &gen_perms {
            let p = compose(&elems[i], gp);
            if !index.contains_key(&p) {
                if elems.len() >= cap.min(MAX_ORDER) {
                    return Err(Error::CapExceeded {
                        got: elems.len() + 1,
                        cap: cap.min(MAX_ORDER),
                    });
                }
                index.insert(p.clone(), elems.len());
                elems.push(p);
            }
        }
        i += 1;
    }
    let n = elems.len();
    let mut table = vec![0u8; n * n];
    for a in 0..n {
        for b in 0..n {
            let p = compose(&elems[a], &elems[b]);
            table[a * n + b] = index[&p] as u8;
        }
    }
    GroupTable::new(format!("perm:{spec}"), n, table)
}

/// Parse an explicit table: first token is the order `n`, followed by `n*n`
/// whitespace-separated element indices (row-major, identity must be 0).
pub fn from_table_text(name: impl Into<String>, text: &str) -> Result<GroupTable> {
    let mut toks = text.split_whitespace();
    let n: usize = toks
        .next()
        .ok_or_else(|| Error::SpecParse("empty table file".into()))?
        .parse()
        .map_err(|_| Error::SpecParse("table file must start with the group order".into()))?;
    let mut table = Vec::with_capacity(n * n);
    for tok in toks {
        let v: usize =
            tok.parse().map_err(|_| Error::SpecParse(format!("bad table entry '{tok}'")))?;
        if v >= n {
            return Err(Error::SpecParse(format!("table entry {v} out of range 0..{n}")));
        }
        table.push(v as u8);
    }
    if table.len() != n * n {
        return Err(Error::SpecParse(format!(
            "table has {} entries, expected {}",
            table.len(),
            n * n
        )));
    }
    GroupTable::new(name, n, table)
}

fn parse_ints(s: &str, want: usize, ctx: &str) -> Result<Vec<u64>> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != want {
        return Err(Error::SpecParse(format!("{ctx}: expected {want} comma-separated integers")));
    }
    parts
        .iter()
        .map(|p| {
            let v = p
                .trim()
                .parse::<u64>()
                .map_err(|_| Error::SpecParse(format!("{ctx}: bad integer '{p}'")))?;
            if v > 1_000_000 {
                return Err(Error::SpecParse(format!("{ctx}: parameter {v} is absurdly large")));
            }
            Ok(v)
        })
        .collect()
}

/// Parse the group-spec grammar:
/// `cyclic:n | dihedral:n | quaternion:n | p1:p,n,k,r | p2:n,k,r | p3:n,k,r |
///  sl23 | product:SPEC*SPEC*... | perm:cycles | table:path`.
pub fn parse_spec(spec: &str, cap: usize) -> Result<Arc<GroupTable>> {
    let spec = spec.trim();
    let cap = cap.min(MAX_ORDER).max(1);
    let gt = parse_spec_inner(spec, cap)?;
    if gt.order() > cap {
        return Err(Error::CapExceeded { got: gt.order(), cap });
    }
    Ok(Arc::new(gt))
}

fn parse_spec_inner(spec: &str, cap: usize) -> Result<GroupTable> {
    if spec == "sl23" {
        return sl23();
    }
    let (head, rest) = spec
        .split_once(':')
        .ok_or_else(|| Error::SpecParse(format!("unrecognized group spec '{spec}'")))?;
    match head {
        "cyclic" => {
            let v = parse_ints(rest, 1, "cyclic")?;
            cyclic(v[0] as usize)
        }
        "dihedral" => {
            let v = parse_ints(rest, 1, "dihedral")?;
            dihedral(v[0] as usize)
        }
        "quaternion" => {
            let v = parse_ints(rest, 1, "quaternion")?;
            quaternion(v[0] as usize)
        }
        "p1" => {
            let v = parse_ints(rest, 4, "p1")?;
            p1(v[0], v[1] as u32, v[2] as u32, v[3])
        }
        "p2" => {
            let v = parse_ints(rest, 3, "p2")?;
            p2(v[0] as u32, v[1] as u32, v[2])
        }
        "p3" => {
            let v = parse_ints(rest, 3, "p3")?;
            p3(v[0] as u32, v[1] as u32, v[2])
        }
        "product" => {
            let mut parts = Vec::new();
            for part in rest.split('*') {
                let part = part.trim();
                if part.starts_with("product:") || part.starts_with("table:") {
                    return Err(Error::SpecParse(
                        "product factors must be plain (non-product, non-table) specs".into(),
                    ));
                }
                parts.push(parse_spec_inner(part, cap)?);
            }
            product(parts)
        }
        "perm" => from_permutations(rest, cap),
        "table" => {
            let text = std::fs::read_to_string(rest)?;
            from_table_text(format!("table:{rest}"), &text)
        }
        _ => Err(Error::SpecParse(format!("unrecognized group family '{head}'"))),
    }
}

/// A subgroup of a fixed ambient [`GroupTable`].
#[derive(Clone)]
pub struct Subgroup {
    group: Arc<GroupTable>,
    members: Vec<u8>, // sorted ascending; always contains 0
    mask: Mask,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.group, &other.group) && self.mask == other.mask
    }
}
impl Eq for Subgroup {}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup(order {}, {:?})", self.order(), self.members)
    }
}

impl Subgroup {
    /// Validate that `members` is closed under the group operation.
    pub fn from_members(group: &Arc<GroupTable>, members: &[u8]) -> Result<Subgroup> {
        let mut ms: Vec<u8> = members.to_vec();
        ms.sort_unstable();
        ms.dedup();
        if ms.iter().any(|&m| (m as usize) >= group.order()) {
            return Err(Error::NotASubgroup("member out of range".into()));
        }
        let mask = Mask::from_members(ms.iter().copied());
        if !mask.contains(0) {
            return Err(Error::NotASubgroup("missing identity".into()));
        }
        for &a in &ms {
            for &b in &ms {
                if !mask.contains(group.mul(a, b)) {
                    return Err(Error::NotASubgroup(format!("not closed: {a} * {b}")));
                }
            }
        }
        Ok(Subgroup { group: Arc::clone(group), members: ms, mask })
    }

    fn from_sorted_unchecked(group: &Arc<GroupTable>, members: Vec<u8>) -> Subgroup {
        let mask = Mask::from_members(members.iter().copied());
        Subgroup { group: Arc::clone(group), members, mask }
    }

    pub fn trivial(group: &Arc<GroupTable>) -> Subgroup {
        Subgroup::from_sorted_unchecked(group, vec![0])
    }

    pub fn whole(group: &Arc<GroupTable>) -> Subgroup {
        let members: Vec<u8> = group.elements().collect();
        Subgroup::from_sorted_unchecked(group, members)
    }

    pub fn group(&self) -> &Arc<GroupTable> {
        &self.group
    }

    pub fn members(&self) -> &[u8] {
        &self.members
    }

    pub fn mask(&self) -> Mask {
        self.mask
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, x: u8) -> bool {
        self.mask.contains(x)
    }

    pub fn is_whole(&self) -> bool {
        self.order() == self.group.order()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        Arc::ptr_eq(&self.group, &other.group) && self.mask.is_subset(&other.mask)
    }

    pub fn is_cyclic(&self) -> bool {
        let n = self.order();
        self.members.iter().any(|&m| self.group.order_of(m) == n)
    }

    /// The minimal-index element generating this subgroup, if cyclic.
    pub fn cyclic_generator(&self) -> Option<u8> {
        let n = self.order();
        self.members.iter().copied().find(|&m| self.group.order_of(m) == n)
    }

    pub fn intersect(&self, other: &Subgroup) -> Subgroup {
        assert!(Arc::ptr_eq(&self.group, &other.group));
        let mask = self.mask.intersect(&other.mask);
        Subgroup::from_sorted_unchecked(&self.group, mask.members())
    }
}

fn closure_members(table: &GroupTable, seed: Mask) -> Vec<u8> {
    let mut mask = seed;
    mask.insert(0);
    let mut elems = mask.members();
    let mut i = 0;
    while i < elems.len() {
        let a = elems[i];
        let mut j = 0;
        while j < elems.len() {
            let b = elems[j];
            for p in [table.mul(a, b), table.mul(b, a)] {
                if !mask.contains(p) {
                    mask.insert(p);
                    elems.push(p);
                }
            }
            j += 1;
        }
        i += 1;
    }
    elems.sort_unstable();
    elems
}

/// Subgroup generated by the given elements.
pub fn generated(group: &Arc<GroupTable>, seed: &[u8]) -> Subgroup {
    let members = closure_members(group, Mask::from_members(seed.iter().copied()));
    Subgroup::from_sorted_unchecked(group, members)
}

/// The full subgroup lattice, sorted by (order, members).
///
/// Layered closure: start from all cyclic subgroups and keep joining already
/// found subgroups with cyclic ones until nothing new appears; every subgroup
/// arises by adjoining one generator at a time, so this finds them all.
pub fn subgroups(group: &Arc<GroupTable>) -> Vec<Subgroup> {
    let table: &GroupTable = group;
    let mut cyclic_masks: Vec<Mask> = Vec::new();
    let mut seen: BTreeSet<Mask> = BTreeSet::new();
    for g in group.elements() {
        let mut m = Mask::singleton(0);
        let mut x = g;
        while x != 0 {
            m.insert(x);
            x = table.mul(x, g);
        }
        if seen.insert(m) {
            cyclic_masks.push(m);
        }
    }
    let mut all = seen.clone();
    let mut frontier: Vec<Mask> = cyclic_masks.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for s in &frontier {
            for c in &cyclic_masks {
                if c.is_subset(s) {
                    continue;
                }
                let join = Mask::from_members(closure_members(table, s.union(c)));
                if all.insert(join) {
                    next.push(join);
                }
            }
        }
        frontier = next;
    }
    let mut subs: Vec<Subgroup> =
        all.into_iter().map(|m| Subgroup::from_sorted_unchecked(group, m.members())).collect();
    subs.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.members.cmp(&b.members)));
    subs
}

/// `H^g = g^{-1} H g`.
pub fn conjugate_subgroup(h: &Subgroup, g: u8) -> Subgroup {
    let table = h.group();
    let mut members: Vec<u8> = h.members().iter().map(|&x| table.conj(x, g)).collect();
    members.sort_unstable();
    Subgroup::from_sorted_unchecked(h.group(), members)
}

pub fn is_normal(h: &Subgroup) -> bool {
    let table: &GroupTable = h.group();
    table.elements().all(|g| h.members().iter().all(|&x| h.contains(table.conj(x, g))))
}

/// Is `h` normal in `n` (requires `h <= n`)?
pub fn is_normal_in(h: &Subgroup, n: &Subgroup) -> bool {
    assert!(h.is_subgroup_of(n));
    let table: &GroupTable = h.group();
    n.members().iter().all(|&g| h.members().iter().all(|&x| h.contains(table.conj(x, g))))
}

pub fn normalizer(group: &Arc<GroupTable>, h: &Subgroup) -> Subgroup {
    let table: &GroupTable = group;
    let members: Vec<u8> = group
        .elements()
        .filter(|&g| h.members().iter().all(|&x| h.contains(table.conj(x, g))))
        .collect();
    Subgroup::from_sorted_unchecked(group, members)
}

pub fn centralizer(group: &Arc<GroupTable>, elems: &[u8]) -> Subgroup {
    let table: &GroupTable = group;
    let members: Vec<u8> = group
        .elements()
        .filter(|&g| elems.iter().all(|&x| table.mul(g, x) == table.mul(x, g)))
        .collect();
    Subgroup::from_sorted_unchecked(group, members)
}

pub fn center(group: &Arc<GroupTable>) -> Subgroup {
    let all: Vec<u8> = group.elements().collect();
    centralizer(group, &all)
}

pub fn conjugacy_classes(table: &GroupTable) -> Vec<Vec<u8>> {
    let mut visited = vec![false; table.order()];
    let mut classes = Vec::new();
    for g in table.elements() {
        if visited[g as usize] {
            continue;
        }
        let mut mask = Mask::empty();
        for t in table.elements() {
            mask.insert(table.conj(g, t));
        }
        let class = mask.members();
        for &x in &class {
            visited[x as usize] = true;
        }
        classes.push(class);
    }
    classes
}

/// Number of rational conjugacy classes: orbits of `g ~ conjugates of g^k`
/// over all `k` coprime to the order of `g`.
pub fn rational_class_count(table: &GroupTable) -> usize {
    let mut visited = vec![false; table.order()];
    let mut count = 0;
    for g in table.elements() {
        if visited[g as usize] {
            continue;
        }
        count += 1;
        let ord = table.order_of(g) as u64;
        for k in 1..=ord {
            if gcd(k, ord) != 1 {
                continue;
            }
            let x = table.power(g, k as i64);
            for t in table.elements() {
                visited[table.conj(x, t) as usize] = true;
            }
        }
    }
    count
}

/// Normal subgroups that are minimal among the nontrivial ones.
pub fn minimal_normal_subgroups(group: &Arc<GroupTable>) -> Vec<Subgroup> {
    let normals: Vec<Subgroup> =
        subgroups(group).into_iter().filter(|s| s.order() > 1 && is_normal(s)).collect();
    normals
        .iter()
        .filter(|a| {
            !normals.iter().any(|b| b.order() > 1 && b.order() < a.order() && b.mask().is_subset(&a.mask()))
        })
        .cloned()
        .collect()
}

/// A quotient `G/K` with its projection and the minimal-index section.
pub struct QuotientMap {
    pub parent: Arc<GroupTable>,
    pub kernel: Subgroup,
    pub group: Arc<GroupTable>,
    proj: Vec<u8>,
    section: Vec<u8>,
}

impl QuotientMap {
    pub fn project(&self, g: u8) -> u8 {
        self.proj[g as usize]
    }

    /// The minimal-index representative of a coset.
    pub fn lift(&self, q: u8) -> u8 {
        self.section[q as usize]
    }

    /// Preimage in the parent of a subgroup of the quotient.
    pub fn preimage(&self, qsub: &Subgroup) -> Subgroup {
        assert!(Arc::ptr_eq(qsub.group(), &self.group));
        let members: Vec<u8> =
            self.parent.elements().filter(|&g| qsub.contains(self.proj[g as usize])).collect();
        Subgroup::from_sorted_unchecked(&self.parent, members)
    }
}

pub fn quotient(group: &Arc<GroupTable>, kernel: &Subgroup) -> Result<QuotientMap> {
    if !Arc::ptr_eq(kernel.group(), group) {
        return Err(Error::MixedGroups);
    }
    if !is_normal(kernel) {
        return Err(Error::NotNormal);
    }
    let table: &GroupTable = group;
    let n = group.order();
    let mut proj = vec![u8::MAX; n];
    let mut section = Vec::new();
    for g in group.elements() {
        if proj[g as usize] != u8::MAX {
            continue;
        }
        let c = section.len() as u8;
        for &k in kernel.members() {
            proj[table.mul(g, k) as usize] = c;
        }
        section.push(g);
    }
    let q = section.len();
    let mut qtable = vec![0u8; q * q];
    for (i, &gi) in section.iter().enumerate() {
        for (j, &gj) in section.iter().enumerate() {
            qtable[i * q + j] = proj[table.mul(gi, gj) as usize];
        }
    }
    let qt = GroupTable::new(format!("{}/{}", group.name(), kernel.order()), q, qtable)?;
    Ok(QuotientMap {
        parent: Arc::clone(group),
        kernel: kernel.clone(),
        group: Arc::new(qt),
        proj,
        section,
    })
}

/// Quotient `n/k` for nested subgroups of an ambient group (`k` normal in
/// `n`).  Returns the embedding of the re-indexed `n` (new index -> ambient
/// element) together with the quotient map of that table; when `n` is the
/// whole group the embedding is the identity and no re-indexing happens.
pub fn quotient_in(
    group: &Arc<GroupTable>,
    n: &Subgroup,
    k: &Subgroup,
) -> Result<(Vec<u8>, QuotientMap)> {
    if !Arc::ptr_eq(n.group(), group) || !Arc::ptr_eq(k.group(), group) {
        return Err(Error::MixedGroups);
    }
    if !k.is_subgroup_of(n) {
        return Err(Error::NotASubgroup("quotient_in needs k <= n".into()));
    }
    if n.is_whole() {
        return Ok((group.elements().collect(), quotient(group, k)?));
    }
    let (nt, embed) = subgroup_table(group, n)?;
    let mut back = vec![u8::MAX; group.order()];
    for (i, &m) in embed.iter().enumerate() {
        back[m as usize] = i as u8;
    }
    let k_members: Vec<u8> = k.members().iter().map(|&x| back[x as usize]).collect();
    let k_nt = Subgroup::from_members(&nt, &k_members)?;
    let qm = quotient(&nt, &k_nt)?;
    Ok((embed, qm))
}

/// Re-index a subgroup as a standalone group; returns the new table and the
/// embedding (new index -> ambient element).
pub fn subgroup_table(group: &Arc<GroupTable>, h: &Subgroup) -> Result<(Arc<GroupTable>, Vec<u8>)> {
    if !Arc::ptr_eq(h.group(), group) {
        return Err(Error::MixedGroups);
    }
    let table: &GroupTable = group;
    let embed = h.members().to_vec();
    let mut back = vec![u8::MAX; group.order()];
    for (i, &m) in embed.iter().enumerate() {
        back[m as usize] = i as u8;
    }
    let k = embed.len();
    let mut sub = vec![0u8; k * k];
    for i in 0..k {
        for j in 0..k {
            sub[i * k + j] = back[table.mul(embed[i], embed[j]) as usize];
        }
    }
    let gt = GroupTable::new(format!("{}[{}]", group.name(), k), k, sub)?;
    Ok((Arc::new(gt), embed))
}

/// Upper central series data.
pub struct NilpotencyData {
    pub nilpotent: bool,
    /// Nilpotency class (0 for the trivial group) when nilpotent.
    pub class: Option<u32>,
    /// `Z_1 < Z_2 < ...` until the series stabilizes.
    pub upper_central: Vec<Subgroup>,
}

pub fn nilpotency(group: &Arc<GroupTable>) -> NilpotencyData {
    let table: &GroupTable = group;
    let mut z = Mask::singleton(0);
    let mut chain = Vec::new();
    loop {
        let next = Mask::from_members(
            group
                .elements()
                .filter(|&g| group.elements().all(|h| z.contains(table.commutator(g, h)))),
        );
        if next == z {
            break;
        }
        z = next;
        chain.push(Subgroup::from_sorted_unchecked(group, z.members()));
        if z.count() == group.order() {
            break;
        }
    }
    let nilpotent = z.count() == group.order();
    NilpotencyData {
        nilpotent,
        class: nilpotent.then_some(chain.len() as u32),
        upper_central: chain,
    }
}

/// For a nilpotent group: its Sylow subgroups, as (prime, subgroup) pairs in
/// increasing prime order.  The p-elements of a nilpotent group form a
/// subgroup, so membership is just an order test.
pub fn sylow_decomposition(group: &Arc<GroupTable>) -> Result<Vec<(u64, Subgroup)>> {
    if !nilpotency(group).nilpotent {
        return Err(Error::NotNilpotent(group.name().to_string()));
    }
    let mut out = Vec::new();
    for (p, _) in factorize(group.order() as u64) {
        let members: Vec<u8> = group
            .elements()
            .filter(|&g| {
                let o = group.order_of(g) as u64;
                o == 1 || factorize(o).iter().all(|&(q, _)| q == p)
            })
            .collect();
        let sub = Subgroup::from_members(group, &members)
            .map_err(|_| Error::Defect("p-elements of a nilpotent group must close".into()))?;
        out.push((p, sub));
    }
    Ok(out)
}

/// Left-coset representatives of `n` in the whole group, minimal index in
/// each coset `g n`, ascending.
pub fn left_transversal(group: &Arc<GroupTable>, n: &Subgroup) -> Vec<u8> {
    let table: &GroupTable = group;
    let mut seen = Mask::empty();
    let mut reps = Vec::new();
    for g in group.elements() {
        if seen.contains(g) {
            continue;
        }
        reps.push(g);
        for &x in n.members() {
            seen.insert(table.mul(g, x));
        }
    }
    reps
}

/// Right-coset representatives (cosets `n g`), minimal index, ascending.
/// The map `g -> x^g = g^{-1} x g` is constant exactly on right cosets of the
/// stabilizer, so conjugate enumeration indexes over these.
pub fn right_transversal(group: &Arc<GroupTable>, n: &Subgroup) -> Vec<u8> {
    let table: &GroupTable = group;
    let mut seen = Mask::empty();
    let mut reps = Vec::new();
    for g in group.elements() {
        if seen.contains(g) {
            continue;
        }
        reps.push(g);
        for &x in n.members() {
            seen.insert(table.mul(x, g));
        }
    }
    reps
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arc(g: GroupTable) -> Arc<GroupTable> {
        Arc::new(g)
    }

    /// Exhaustive subset check, the oracle for the lattice code (order <= 16).
    fn brute_force_subgroup_sets(g: &GroupTable) -> BTreeSet<Vec<u8>> {
        let n = g.order();
        assert!(n <= 16);
        let mut out = BTreeSet::new();
        for bits in 0u32..(1 << n) {
            if bits & 1 == 0 {
                continue;
            }
            let members: Vec<u8> = (0..n as u8).filter(|&x| bits >> x & 1 == 1).collect();
            let mask = Mask::from_members(members.iter().copied());
            let closed = members
                .iter()
                .all(|&a| members.iter().all(|&b| mask.contains(g.mul(a, b))));
            if closed {
                out.insert(members);
            }
        }
        out
    }

    #[test]
    fn mask_basics() {
        let mut m = Mask::empty();
        for x in [0u8, 63, 64, 127, 128, 255] {
            m.insert(x);
        }
        assert_eq!(m.count(), 6);
        assert_eq!(m.members(), vec![0, 63, 64, 127, 128, 255]);
        assert!(Mask::from_members([63u8, 128]).is_subset(&m));
        assert!(!Mask::from_members([1u8]).is_subset(&m));
    }

    #[test]
    fn cyclic_structure() {
        let g = arc(cyclic(12).unwrap());
        assert_eq!(g.order(), 12);
        assert_eq!(g.order_of(1), 12);
        assert_eq!(g.order_of(6), 2);
        assert_eq!(g.exponent(), 12);
        assert!(g.is_abelian());
        assert_eq!(subgroups(&g).len(), 6); // divisors of 12
        assert_eq!(rational_class_count(&g), 6);
    }

    #[test]
    fn rejects_broken_tables() {
        // not a latin square
        let bad = GroupTable::new("bad", 2, vec![0, 1, 1, 1]);
        assert!(matches!(bad, Err(Error::BadTable(_))));
        // identity not at index 0
        let bad = GroupTable::new("bad", 2, vec![1, 0, 0, 1]);
        assert!(matches!(bad, Err(Error::BadTable(_))));
        // an intercalate swap of the cyclic table of order 6 keeps the latin
        // property and the identity but yields a non-associative loop: the
        // swapped relations force a cyclic group generated by element 4 with
        // 2 = 4^5, which would need 2*2 = 1, but the table says 2*2 = 4
        let mut t = Vec::new();
        for i in 0..6u8 {
            for j in 0..6u8 {
                t.push((i + j) % 6);
            }
        }
        for (r, c, v) in [(1, 1, 5u8), (1, 4, 2), (4, 1, 2), (4, 4, 5)] {
            t[r * 6 + c] = v;
        }
        assert!(matches!(GroupTable::new("bad", 6, t), Err(Error::BadTable(_))));
    }

    #[test]
    fn dihedral_and_quaternion_structure() {
        let d8 = arc(dihedral(8).unwrap());
        assert!(!d8.is_abelian());
        assert_eq!(conjugacy_classes(&d8).len(), 5);
        assert_eq!(subgroups(&d8).len(), 10);
        assert_eq!(brute_force_subgroup_sets(&d8).len(), 10);
        assert_eq!(rational_class_count(&d8), 5);

        let q8 = arc(quaternion(8).unwrap());
        assert!(!q8.is_abelian());
        // unique involution
        let involutions: Vec<u8> = q8.elements().filter(|&g| q8.order_of(g) == 2).collect();
        assert_eq!(involutions.len(), 1);
        assert_eq!(subgroups(&q8).len(), 6);
        assert_eq!(conjugacy_classes(&q8).len(), 5);
        assert_eq!(rational_class_count(&q8), 5);
        // every subgroup of Q8 is normal
        assert!(subgroups(&q8).iter().all(is_normal));

        let q16 = arc(quaternion(16).unwrap());
        assert_eq!(q16.order(), 16);
        let invs: Vec<u8> = q16.elements().filter(|&g| q16.order_of(g) == 2).collect();
        assert_eq!(invs.len(), 1);
        assert_eq!(conjugacy_classes(&q16).len(), 7);
    }

    #[test]
    fn lattice_matches_brute_force_on_mixed_groups() {
        for spec in ["cyclic:16", "dihedral:16", "quaternion:16", "product:cyclic:2*cyclic:2*cyclic:3"] {
            let g = parse_spec(spec, 256).unwrap();
            let fast: BTreeSet<Vec<u8>> =
                subgroups(&g).into_iter().map(|s| s.members().to_vec()).collect();
            assert_eq!(fast, brute_force_subgroup_sets(&g), "lattice mismatch for {spec}");
        }
    }

    #[test]
    fn p1_presentation_groups() {
        // Heisenberg-type group of order 27: a^9 = b^3 = 1, b a b^-1 = a^4-ish
        let g = arc(p1(3, 2, 1, 4).unwrap());
        assert_eq!(g.order(), 27);
        assert!(!g.is_abelian());
        assert_eq!(g.exponent(), 9);
        let nil = nilpotency(&g);
        assert!(nil.nilpotent);
        assert_eq!(nil.class, Some(2));

        // modular group of order 16
        let m16 = arc(p1(2, 3, 1, 5).unwrap());
        assert_eq!(m16.order(), 16);
        assert!(!m16.is_abelian());
        assert_eq!(center(&m16).order(), 4);

        // invalid: r of wrong multiplicative order
        assert!(p1(2, 3, 2, 3).is_err()); // ord(3 mod 8) = 2, need 4
        assert!(p1(3, 2, 1, 1).is_err()); // r = 1 but k > 0
        assert!(p1(4, 2, 0, 1).is_err()); // p not prime
    }

    #[test]
    fn p2_p3_presentation_groups() {
        // p2:2,0,1 is dihedral of order 8
        let g = arc(p2(2, 0, 1).unwrap());
        assert_eq!(g.order(), 8);
        assert_eq!(conjugacy_classes(&g).len(), 5);
        assert_eq!(g.elements().filter(|&x| g.order_of(x) == 2).count(), 5);

        // p3:2,0,1 is the quaternion group
        let q = arc(p3(2, 0, 1).unwrap());
        assert_eq!(q.elements().filter(|&x| q.order_of(x) == 2).count(), 1);

        // order 32 with a genuine b-part
        let g = arc(p2(3, 1, 5).unwrap());
        assert_eq!(g.order(), 32);
        assert!(nilpotency(&g).nilpotent);
        let h = arc(p3(3, 1, 5).unwrap());
        assert_eq!(h.order(), 32);
        // the two differ: count involutions
        let gi = g.elements().filter(|&x| g.order_of(x) == 2).count();
        let hi = h.elements().filter(|&x| h.order_of(x) == 2).count();
        assert_ne!(gi, hi);

        assert!(p2(3, 1, 3).is_err()); // r = 3 is not 1 mod 4
        assert!(p3(1, 0, 1).is_err()); // n too small
    }

    #[test]
    fn sl23_structure() {
        let g = arc(sl23().unwrap());
        assert_eq!(g.order(), 24);
        assert!(!g.is_abelian());
        assert_eq!(center(&g).order(), 2);
        assert!(!nilpotency(&g).nilpotent);
        // element order census of the binary tetrahedral group
        let mut census = std::collections::BTreeMap::new();
        for x in g.elements() {
            *census.entry(g.order_of(x)).or_insert(0usize) += 1;
        }
        assert_eq!(census, [(1, 1), (2, 1), (3, 8), (4, 6), (6, 8)].into_iter().collect());
        assert_eq!(conjugacy_classes(&g).len(), 7);
        assert_eq!(rational_class_count(&g), 5);
    }

    #[test]
    fn products_and_perms() {
        let v4 = parse_spec("product:cyclic:2*cyclic:2", 256).unwrap();
        assert_eq!(v4.order(), 4);
        assert_eq!(v4.exponent(), 2);

        let s3 = parse_spec("perm:(1 2),(1 2 3)", 256).unwrap();
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());
        assert_eq!(subgroups(&s3).len(), 6);
        assert!(!nilpotency(&s3).nilpotent);

        // overlapping cycles inside one generator compose (left to right)
        let c = parse_spec("perm:(1 2)(2 3)", 256).unwrap();
        assert_eq!(c.order(), 3);

        // A4 via permutations
        let a4 = parse_spec("perm:(1 2 3),(2 3 4)", 256).unwrap();
        assert_eq!(a4.order(), 12);

        assert!(matches!(
            parse_spec("perm:(1 2),(3 4),(5 6),(7 8),(1 3)(2 4)", 4),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn spec_grammar_errors() {
        assert!(matches!(parse_spec("nonsense:3", 256), Err(Error::SpecParse(_))));
        assert!(matches!(parse_spec("cyclic:0", 256), Err(Error::SpecParse(_))));
        assert!(matches!(parse_spec("cyclic:300", 256), Err(Error::CapExceeded { .. })));
        assert!(matches!(parse_spec("cyclic:65", 64), Err(Error::CapExceeded { .. })));
        assert!(matches!(parse_spec("product:product:cyclic:2*cyclic:2", 256), Err(Error::SpecParse(_))));
        assert!(parse_spec("quaternion:12", 256).is_err());
        assert!(parse_spec("dihedral:7", 256).is_err());
    }

    #[test]
    fn quotients_and_sections() {
        let d8 = parse_spec("dihedral:8", 256).unwrap();
        let z = center(&d8);
        assert_eq!(z.order(), 2);
        let q = quotient(&d8, &z).unwrap();
        assert_eq!(q.group.order(), 4);
        assert_eq!(q.group.exponent(), 2); // D8 / Z = Klein four
        for g in d8.elements() {
            // projection is a homomorphism; section lifts each coset
            assert_eq!(q.project(q.lift(q.project(g))), q.project(g));
            for h in d8.elements() {
                assert_eq!(
                    q.project(d8.mul(g, h)),
                    q.group.mul(q.project(g), q.project(h))
                );
            }
        }
        // preimage of the whole quotient is the whole group
        let back = q.preimage(&Subgroup::whole(&q.group));
        assert!(back.is_whole());

        // non-normal kernels are rejected
        let s3 = parse_spec("perm:(1 2),(1 2 3)", 256).unwrap();
        let refl = generated(&s3, &[1]);
        assert_eq!(refl.order(), 2);
        assert!(matches!(quotient(&s3, &refl), Err(Error::NotNormal)));
    }

    #[test]
    fn normalizers_centralizers_minimal_normals() {
        let d8 = parse_spec("dihedral:8", 256).unwrap();
        // a reflection generates a non-normal order-2 subgroup with normalizer of order 4
        let refl = generated(&d8, &[4]);
        assert_eq!(refl.order(), 2);
        assert!(!is_normal(&refl));
        assert_eq!(normalizer(&d8, &refl).order(), 4);
        assert_eq!(centralizer(&d8, &[4]).order(), 4);
        // D8 has a unique minimal normal subgroup: the center
        let mins = minimal_normal_subgroups(&d8);
        assert_eq!(mins.len(), 1);
        assert_eq!(mins[0].order(), 2);

        // C2 x C2: three minimal normals
        let v4 = parse_spec("product:cyclic:2*cyclic:2", 256).unwrap();
        assert_eq!(minimal_normal_subgroups(&v4).len(), 3);
    }

    #[test]
    fn sylow_and_two_part_split() {
        let c12 = parse_spec("cyclic:12", 256).unwrap();
        let syl = sylow_decomposition(&c12).unwrap();
        assert_eq!(syl.len(), 2);
        assert_eq!(syl[0].0, 2);
        assert_eq!(syl[0].1.order(), 4);
        assert_eq!(syl[1].0, 3);
        assert_eq!(syl[1].1.order(), 3);

        for g in c12.elements() {
            let (g2, g2p) = c12.two_part_split(g);
            assert_eq!(c12.mul(g2, g2p), g);
            assert_eq!(c12.mul(g2p, g2), g);
            assert!(c12.order_of(g2).is_power_of_two());
            assert_eq!(c12.order_of(g2p) % 2, 1);
        }

        let s3 = parse_spec("perm:(1 2),(1 2 3)", 256).unwrap();
        assert!(matches!(sylow_decomposition(&s3), Err(Error::NotNilpotent(_))));
    }

    #[test]
    fn subgroup_reindexing() {
        let d8 = parse_spec("dihedral:8", 256).unwrap();
        let rot = generated(&d8, &[1]);
        assert_eq!(rot.order(), 4);
        let (t, embed) = subgroup_table(&d8, &rot).unwrap();
        assert_eq!(t.order(), 4);
        for i in t.elements() {
            for j in t.elements() {
                assert_eq!(
                    embed[t.mul(i, j) as usize],
                    d8.mul(embed[i as usize], embed[j as usize])
                );
            }
        }
    }

    #[test]
    fn transversals_cover() {
        let d8 = parse_spec("dihedral:8", 256).unwrap();
        let refl = generated(&d8, &[4]);
        for (reps, left) in
            [(left_transversal(&d8, &refl), true), (right_transversal(&d8, &refl), false)]
        {
            assert_eq!(reps.len(), 4);
            assert_eq!(reps[0], 0);
            let mut covered = Mask::empty();
            for &r in &reps {
                for &x in refl.members() {
                    covered.insert(if left { d8.mul(r, x) } else { d8.mul(x, r) });
                }
            }
            assert_eq!(covered.count(), 8, "cosets must partition the group");
        }
    }

    #[test]
    fn table_text_roundtrip() {
        let c3 = cyclic(3).unwrap();
        let mut text = String::from("3\n");
        for i in 0..3u8 {
            for j in 0..3u8 {
                text.push_str(&format!("{} ", c3.mul(i, j)));
            }
            text.push('\n');
        }
        let back = from_table_text("table:test", &text).unwrap();
        assert_eq!(back.order(), 3);
        assert_eq!(back.order_of(1), 3);
        assert!(from_table_text("bad", "2\n0 1 1").is_err());
    }
}
