//! Finite groups given by Cayley tables.
//!
//! Elements are dense indices `0..order`. Constructors in this module put
//! the identity at index 0; tables read from user input may name another
//! identity, which is kept as given.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::error::{ModelError, Result};
use crate::verdict::Verdict;

/// A sorted list of element indices.
pub type IndexSet = Vec<usize>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
}

impl std::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FiniteGroup(order {})", self.order)
    }
}

/// Checks the group axioms on a square table.
///
/// Returns `Fails` naming the broken axiom and the offending indices.
pub fn validate_group_table(rows: &[Vec<usize>], identity: usize) -> Result<Verdict> {
    let n = rows.len();
    if n == 0 {
        return Err(ModelError::Dimension("empty group table".into()));
    }
    for (i, r) in rows.iter().enumerate() {
        if r.len() != n {
            return Err(ModelError::Dimension(format!(
                "row {i} has {} entries, expected {n}",
                r.len()
            )));
        }
    }
    if identity >= n {
        return Err(ModelError::Dimension(format!(
            "identity {identity} out of range for order {n}"
        )));
    }
    for (i, r) in rows.iter().enumerate() {
        if let Some(&bad) = r.iter().find(|&&x| x >= n) {
            return Ok(Verdict::fails(
                format!("entry {bad} in row {i} is out of range"),
                vec![],
            ));
        }
    }
    for i in 0..n {
        if rows[identity][i] != i || rows[i][identity] != i {
            return Ok(Verdict::fails(
                format!("identity law fails at element {i}"),
                vec![],
            ));
        }
    }
    // Latin square
    for i in 0..n {
        let mut seen = vec![false; n];
        for j in 0..n {
            if std::mem::replace(&mut seen[rows[i][j]], true) {
                return Ok(Verdict::fails(
                    format!("row {i} repeats entry {}", rows[i][j]),
                    vec![],
                ));
            }
        }
        let mut seen = vec![false; n];
        for j in 0..n {
            if std::mem::replace(&mut seen[rows[j][i]], true) {
                return Ok(Verdict::fails(
                    format!("column {i} repeats entry {}", rows[j][i]),
                    vec![],
                ));
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            let ab = rows[a][b];
            for c in 0..n {
                if rows[ab][c] != rows[a][rows[b][c]] {
                    return Ok(Verdict::fails(
                        format!("associativity fails for ({a}, {b}, {c})"),
                        vec![],
                    ));
                }
            }
        }
    }
    Ok(Verdict::holds(format!("group of order {n}")))
}

impl FiniteGroup {
    /// Builds a group from table rows, rejecting anything that is not a group.
    pub fn from_table(rows: Vec<Vec<usize>>, identity: usize) -> Result<Self> {
        match validate_group_table(&rows, identity)? {
            Verdict::Fails(w) => Err(ModelError::Malformed(w.reason)),
            _ => Ok(Self::from_valid_rows(rows, identity)),
        }
    }

    fn from_valid_rows(rows: Vec<Vec<usize>>, identity: usize) -> Self {
        let n = rows.len();
        let table: Vec<usize> = rows.into_iter().flatten().collect();
        let inverse = (0..n)
            .map(|a| (0..n).find(|&b| table[a * n + b] == identity).unwrap())
            .collect();
        FiniteGroup {
            order: n,
            table,
            identity,
            inverse,
        }
    }

    /// Builds the group of `n` elements with operation `op`; identity at 0.
    /// The caller guarantees the axioms.
    pub(crate) fn from_fn(n: usize, op: impl Fn(usize, usize) -> usize) -> Self {
        let rows = (0..n).map(|a| (0..n).map(|b| op(a, b)).collect()).collect();
        Self::from_valid_rows(rows, 0)
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1, "cyclic group of order zero");
        Self::from_fn(n, |a, b| (a + b) % n)
    }

    /// The permutation group generated by `gens` (each a permutation of
    /// `0..degree` in image form). Elements are numbered in breadth-first
    /// order from the identity; `op(a, b)` applies `b` first, then `a`.
    pub fn from_permutations(gens: &[Vec<usize>]) -> Self {
        let degree = gens.first().map_or(0, |g| g.len());
        let id: Vec<usize> = (0..degree).collect();
        let compose = |p: &[usize], q: &[usize]| -> Vec<usize> { q.iter().map(|&x| p[x]).collect() };
        let mut elems = vec![id.clone()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(id, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in gens {
                let p = compose(g, &elems[i]);
                if !index.contains_key(&p) {
                    index.insert(p.clone(), elems.len());
                    queue.push_back(elems.len());
                    elems.push(p);
                }
            }
        }
        let n = elems.len();
        Self::from_fn(n, |a, b| index[&compose(&elems[a], &elems[b])])
    }

    /// Quaternion group: indices 0..8 are `1, -1, i, -i, j, -j, k, -k`.
    pub fn quaternion() -> Self {
        // unit u in {1,i,j,k} = 0..4, sign bit s; index = 2u + s
        let unit_mul = |u: usize, v: usize| -> (usize, bool) {
            match (u, v) {
                (0, v) => (v, false),
                (u, 0) => (u, false),
                (u, v) if u == v => (0, true),
                (1, 2) => (3, false),
                (2, 3) => (1, false),
                (3, 1) => (2, false),
                (2, 1) => (3, true),
                (3, 2) => (1, true),
                (1, 3) => (2, true),
                _ => unreachable!(),
            }
        };
        Self::from_fn(8, |a, b| {
            let (w, neg) = unit_mul(a / 2, b / 2);
            let sign = (a % 2) ^ (b % 2) ^ usize::from(neg);
            2 * w + sign
        })
    }

    pub fn symmetric(n: usize) -> Self {
        if n <= 1 {
            return Self::trivial();
        }
        let mut cycle: Vec<usize> = (1..n).collect();
        cycle.push(0);
        let mut swap: Vec<usize> = (0..n).collect();
        swap.swap(0, 1);
        Self::from_permutations(&[cycle, swap])
    }

    /// Dihedral group of order `2n`, acting on the vertices of an `n`-gon.
    pub fn dihedral(n: usize) -> Self {
        let rot: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        let refl: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
        Self::from_permutations(&[rot, refl])
    }

    /// Direct product; the pair `(a, b)` has index `a * |other| + b`.
    pub fn product(&self, other: &FiniteGroup) -> FiniteGroup {
        let m = other.order;
        let rows = (0..self.order * m)
            .map(|x| {
                (0..self.order * m)
                    .map(|y| self.op(x / m, y / m) * m + other.op(x % m, y % m))
                    .collect()
            })
            .collect();
        Self::from_valid_rows(rows, self.identity * m + other.identity)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn op(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    /// `g + x - g`
    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.op(self.op(g, x), self.inv(g))
    }

    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.op(self.op(a, b), self.op(self.inv(a), self.inv(b)))
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(a) } else { a };
        let mut acc = self.identity;
        for _ in 0..k.unsigned_abs() {
            acc = self.op(acc, base);
        }
        acc
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.op(x, a);
            k += 1;
        }
        k
    }

    pub fn all(&self) -> IndexSet {
        (0..self.order).collect()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.op(a, b) == self.op(b, a)))
    }

    pub fn commutes(&self, a: usize, b: usize) -> bool {
        self.op(a, b) == self.op(b, a)
    }

    /// Smallest subgroup containing `gens`.
    pub fn subgroup_generated(&self, gens: &[usize]) -> IndexSet {
        let mut mark = vec![false; self.order];
        mark[self.identity] = true;
        let mut elems = vec![self.identity];
        let mut queue: VecDeque<usize> = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.op(x, g);
                if !mark[y] {
                    mark[y] = true;
                    elems.push(y);
                    queue.push_back(y);
                }
            }
        }
        // finite: the monoid generated is already a group
        elems.sort_unstable();
        elems
    }

    /// Smallest normal subgroup containing `gens`: close the generators
    /// under conjugation, then take the subgroup they generate.
    pub fn normal_closure(&self, gens: &[usize]) -> IndexSet {
        let gens: BTreeSet<usize> = gens.iter().copied().collect();
        let conj: BTreeSet<usize> = gens
            .iter()
            .flat_map(|&x| (0..self.order).map(move |g| (g, x)))
            .map(|(g, x)| self.conjugate(g, x))
            .collect();
        let conj: Vec<usize> = conj.into_iter().collect();
        self.subgroup_generated(&conj)
    }

    pub fn commutator_subgroup(&self) -> IndexSet {
        let comms: BTreeSet<usize> = (0..self.order)
            .flat_map(|a| (0..self.order).map(move |b| (a, b)))
            .map(|(a, b)| self.commutator(a, b))
            .collect();
        let comms: Vec<usize> = comms.into_iter().collect();
        self.subgroup_generated(&comms)
    }

    pub fn center(&self) -> IndexSet {
        (0..self.order)
            .filter(|&z| (0..self.order).all(|g| self.commutes(z, g)))
            .collect()
    }

    pub fn mask(&self, set: &[usize]) -> Vec<bool> {
        let mut m = vec![false; self.order];
        for &x in set {
            m[x] = true;
        }
        m
    }

    /// `None` if `set` is a subgroup, else a pair whose difference escapes.
    pub fn subgroup_violation(&self, set: &[usize]) -> Option<(usize, usize)> {
        let m = self.mask(set);
        if !m[self.identity] {
            return Some((self.identity, self.identity));
        }
        for &a in set {
            for &b in set {
                if !m[self.op(a, b)] {
                    return Some((a, b));
                }
            }
        }
        None
    }

    pub fn is_subgroup(&self, set: &[usize]) -> bool {
        self.subgroup_violation(set).is_none()
    }

    /// `None` if `set` is closed under conjugation, else `(g, x)` with
    /// `g + x - g` outside.
    pub fn conjugation_violation(&self, set: &[usize]) -> Option<(usize, usize)> {
        let m = self.mask(set);
        for &x in set {
            for g in 0..self.order {
                if !m[self.conjugate(g, x)] {
                    return Some((g, x));
                }
            }
        }
        None
    }

    pub fn is_normal_subgroup(&self, set: &[usize]) -> bool {
        self.is_subgroup(set) && self.conjugation_violation(set).is_none()
    }

    /// Product set `A + B` of two normal subgroups (their join).
    pub fn product_set(&self, a: &[usize], b: &[usize]) -> IndexSet {
        let s: BTreeSet<usize> = a
            .iter()
            .flat_map(|&x| b.iter().map(move |&y| (x, y)))
            .map(|(x, y)| self.op(x, y))
            .collect();
        s.into_iter().collect()
    }

    pub fn intersect(a: &[usize], b: &[usize]) -> IndexSet {
        a.iter().copied().filter(|x| b.binary_search(x).is_ok()).collect()
    }

    /// Quotient by a normal subgroup. Cosets are numbered by increasing
    /// minimal member; the second component maps each element to its coset.
    pub fn quotient(&self, normal: &[usize]) -> Result<(FiniteGroup, Vec<usize>)> {
        if let Some((a, b)) = self.subgroup_violation(normal) {
            return Err(ModelError::Malformed(format!(
                "not a subgroup: {a} + {b} escapes"
            )));
        }
        if let Some((g, x)) = self.conjugation_violation(normal) {
            return Err(ModelError::Precondition(format!(
                "subgroup is not normal: conjugating {x} by {g} escapes"
            )));
        }
        let mut coset = vec![usize::MAX; self.order];
        let mut reps = Vec::new();
        for x in 0..self.order {
            if coset[x] != usize::MAX {
                continue;
            }
            let c = reps.len();
            reps.push(x);
            for &n in normal {
                coset[self.op(x, n)] = c;
            }
        }
        let k = reps.len();
        let rows: Vec<Vec<usize>> = (0..k)
            .map(|a| (0..k).map(|b| coset[self.op(reps[a], reps[b])]).collect())
            .collect();
        let q = Self::from_valid_rows(rows, coset[self.identity]);
        Ok((q, coset))
    }

    /// A subgroup as a group in its own right, identity first; also returns
    /// the embedding (new index to old index).
    pub fn subgroup_as_group(&self, set: &[usize]) -> (FiniteGroup, Vec<usize>) {
        let mut emb: Vec<usize> = vec![self.identity];
        emb.extend(set.iter().copied().filter(|&x| x != self.identity));
        let mut pos = vec![usize::MAX; self.order];
        for (i, &x) in emb.iter().enumerate() {
            pos[x] = i;
        }
        let g = Self::from_fn(emb.len(), |a, b| pos[self.op(emb[a], emb[b])]);
        (g, emb)
    }

    /// All normal subgroups, sorted by size and then lexicographically.
    pub fn normal_subgroups(&self) -> Vec<IndexSet> {
        let mut found: BTreeSet<IndexSet> = BTreeSet::new();
        let principal: BTreeSet<IndexSet> =
            (0..self.order).map(|x| self.normal_closure(&[x])).collect();
        let principal: Vec<IndexSet> = principal.into_iter().collect();
        let mut frontier: Vec<IndexSet> = principal.clone();
        found.extend(principal.iter().cloned());
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for a in &frontier {
                for p in &principal {
                    let j = self.product_set(a, p);
                    if found.insert(j.clone()) {
                        next.push(j);
                    }
                }
            }
            frontier = next;
        }
        let mut out: Vec<IndexSet> = found.into_iter().collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    /// `None` if `map` is a homomorphism into `target`, else a violating pair.
    pub fn homomorphism_violation(&self, map: &[usize], target: &FiniteGroup) -> Option<(usize, usize)> {
        if map.len() != self.order || map.iter().any(|&x| x >= target.order) {
            return Some((self.identity, self.identity));
        }
        for a in 0..self.order {
            for b in 0..self.order {
                if map[self.op(a, b)] != target.op(map[a], map[b]) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    /// Extends generator images to a homomorphism, if one exists.
    pub fn extend_hom(&self, gens: &[usize], images: &[usize], target: &FiniteGroup) -> Option<Vec<usize>> {
        let mut map = vec![usize::MAX; self.order];
        map[self.identity] = target.identity;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for (&g, &h) in gens.iter().zip(images) {
                let y = self.op(x, g);
                let img = target.op(map[x], h);
                if map[y] == usize::MAX {
                    map[y] = img;
                    queue.push_back(y);
                } else if map[y] != img {
                    return None;
                }
            }
        }
        if map.contains(&usize::MAX) {
            return None;
        }
        self.homomorphism_violation(&map, target).is_none().then_some(map)
    }

    /// A small generating set, chosen greedily in index order.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = vec![self.identity];
        for x in 0..self.order {
            if span.binary_search(&x).is_err() {
                gens.push(x);
                span = self.subgroup_generated(&gens);
            }
        }
        gens
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> FiniteGroup {
        FiniteGroup::symmetric(3)
    }

    #[test]
    fn klein_table_is_a_group() {
        let k = FiniteGroup::cyclic(2).product(&FiniteGroup::cyclic(2));
        assert!(validate_group_table(&k.rows(), 0).unwrap().is_holds());
    }

    #[test]
    fn broken_associativity_is_reported() {
        // Latin square with identity 0 that is not associative
        let rows = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let v = validate_group_table(&rows, 0).unwrap();
        assert!(v.is_fails());
        assert!(v.witness().unwrap().reason.contains("associativity"));
    }

    #[test]
    fn ragged_table_is_a_model_error() {
        assert!(validate_group_table(&[vec![0, 1], vec![1]], 0).is_err());
    }

    #[test]
    fn s3_commutator_and_center() {
        let g = s3();
        assert_eq!(g.order(), 6);
        let a3 = g.commutator_subgroup();
        assert_eq!(a3.len(), 3);
        assert!(a3.iter().all(|&x| g.element_order(x) != 2));
        assert_eq!(g.center(), vec![0]);
    }

    #[test]
    fn quaternion_facts() {
        let q = FiniteGroup::quaternion();
        assert!(validate_group_table(&q.rows(), 0).unwrap().is_holds());
        assert_eq!(q.commutator_subgroup(), vec![0, 1]);
        assert_eq!(q.center(), vec![0, 1]);
        let (quo, _) = q.quotient(&[0, 1]).unwrap();
        assert_eq!(quo.order(), 4);
        assert!(quo.is_abelian());
        assert!((0..4).all(|x| quo.op(x, x) == quo.identity()));
    }

    #[test]
    fn dihedral_center_and_normals() {
        let d4 = FiniteGroup::dihedral(4);
        assert_eq!(d4.order(), 8);
        assert_eq!(d4.center().len(), 2);
        assert_eq!(d4.normal_subgroups().len(), 6);
        assert_eq!(s3().normal_subgroups().len(), 3);
        assert_eq!(FiniteGroup::cyclic(2).normal_subgroups().len(), 2);
    }

    #[test]
    fn quotients() {
        let g = s3();
        let (q, map) = g.quotient(&g.commutator_subgroup()).unwrap();
        assert_eq!(q.order(), 2);
        assert!(g.homomorphism_violation(&map, &q).is_none());
        let (same, _) = g.quotient(&[0]).unwrap();
        assert_eq!(same.order(), 6);
        let t = g.subgroup_generated(&[g.generators()[1]]);
        assert!(g.quotient(&t).is_err() || t.len() == 3);
    }

    #[test]
    fn extend_hom_recovers_sign() {
        let g = s3();
        let c2 = FiniteGroup::cyclic(2);
        let gens = g.generators();
        let imgs: Vec<usize> = gens.iter().map(|&x| usize::from(g.element_order(x) == 2)).collect();
        let sign = g.extend_hom(&gens, &imgs, &c2).unwrap();
        assert_eq!(sign.iter().filter(|&&x| x == 0).count(), 3);
    }
}
