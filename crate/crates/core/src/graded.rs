//! Graded vector spaces, graded quivers, tensor words and the Koszul sign
//! calculus.
//!
//! Basis elements are addressed by [`GenId`] (source, target, degree, index
//! within the degree), words are path-ordered lists of generators: the word
//! `w1|w2|...|wn` runs along an object path `x0 -> x1 -> ... -> xn` with
//! `wi : x(i-1) -> xi`. The quiver tensor product follows the same
//! orientation, `(Q ⊗ R)(x, y) = ⊕_z Q(x, z) ⊗ R(z, y)`.
//!
//! Every sign in this crate is a Koszul commutation sign produced by
//! [`koszul_sign`]: transposing two symbols costs the product of their
//! degrees, moving a map of degree `p` past symbols of total degree `q`
//! costs `p * q`. Degrees entering these computations are the *suspended*
//! ones (`degree - 1` per generator) whenever bar-level structure maps are
//! involved; see the crate-level docs.

use alloc::borrow::ToOwned;
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::scalar::Scalar;

/// Index of an object within a presentation's object list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ObjId(pub usize);

/// Address of a basis generator: an arrow of `Hom(src, tgt)` in a given
/// degree, `idx`-th in the degree's ordered basis. Degrees stored here are
/// always the plain (unsuspended) ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GenId {
    pub src: usize,
    pub tgt: usize,
    pub deg: i64,
    pub idx: usize,
}

impl GenId {
    /// Degree of the generator on the shift-by-one quiver.
    pub fn sdeg(&self) -> i64 {
        self.deg - 1
    }
}

/// A finitely supported graded vector space with ordered, labelled bases.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GradedVectorSpace {
    by_degree: BTreeMap<i64, Vec<String>>,
}

impl GradedVectorSpace {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, degree: i64, label: impl Into<String>) -> usize {
        let v = self.by_degree.entry(degree).or_default();
        v.push(label.into());
        v.len() - 1
    }

    pub fn dim(&self, degree: i64) -> usize {
        self.by_degree.get(&degree).map_or(0, Vec::len)
    }

    pub fn labels(&self, degree: i64) -> &[String] {
        self.by_degree.get(&degree).map_or(&[], Vec::as_slice)
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> + '_ {
        self.by_degree.iter().filter(|(_, v)| !v.is_empty()).map(|(d, _)| *d)
    }

    pub fn total_dim(&self) -> usize {
        self.by_degree.values().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }
}

/// A graded quiver over a finite object set: one graded vector space per
/// ordered pair of objects (zero spaces included).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedQuiver {
    objects: Vec<String>,
    homs: Vec<GradedVectorSpace>,
}

impl GradedQuiver {
    pub fn new(objects: Vec<String>) -> Self {
        let n = objects.len();
        let mut seen = objects.clone();
        seen.sort();
        seen.dedup();
        assert_eq!(seen.len(), n, "object labels must be unique");
        GradedQuiver { objects, homs: alloc::vec![GradedVectorSpace::new(); n * n] }
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn object_label(&self, x: ObjId) -> &str {
        &self.objects[x.0]
    }

    pub fn object_id(&self, label: &str) -> Option<ObjId> {
        self.objects.iter().position(|o| o == label).map(ObjId)
    }

    pub fn hom(&self, src: ObjId, tgt: ObjId) -> &GradedVectorSpace {
        &self.homs[src.0 * self.objects.len() + tgt.0]
    }

    pub fn hom_mut(&mut self, src: ObjId, tgt: ObjId) -> &mut GradedVectorSpace {
        &mut self.homs[src.0 * self.objects.len() + tgt.0]
    }

    pub fn add_generator(&mut self, src: ObjId, tgt: ObjId, degree: i64, label: impl Into<String>) -> GenId {
        let idx = self.hom_mut(src, tgt).add(degree, label);
        GenId { src: src.0, tgt: tgt.0, deg: degree, idx }
    }

    pub fn label(&self, g: GenId) -> &str {
        &self.hom(ObjId(g.src), ObjId(g.tgt)).labels(g.deg)[g.idx]
    }

    /// All generators of one hom space, in (degree, index) order.
    pub fn generators_of(&self, src: ObjId, tgt: ObjId) -> Vec<GenId> {
        let h = self.hom(src, tgt);
        let mut out = Vec::new();
        for d in h.degrees() {
            for idx in 0..h.dim(d) {
                out.push(GenId { src: src.0, tgt: tgt.0, deg: d, idx });
            }
        }
        out
    }

    /// All generators of the quiver, ordered by (src, tgt, degree, index).
    pub fn generators(&self) -> Vec<GenId> {
        let mut out = Vec::new();
        for s in 0..self.objects.len() {
            for t in 0..self.objects.len() {
                out.extend(self.generators_of(ObjId(s), ObjId(t)));
            }
        }
        out
    }

    /// Degree range `(min, max)` over all hom spaces, `None` for the zero
    /// quiver.
    pub fn degree_range(&self) -> Option<(i64, i64)> {
        let mut range: Option<(i64, i64)> = None;
        for h in &self.homs {
            for d in h.degrees() {
                range = Some(match range {
                    None => (d, d),
                    Some((lo, hi)) => (lo.min(d), hi.max(d)),
                });
            }
        }
        range
    }

    /// Path-ordered words of length exactly `n` (composable generator
    /// tuples), in lexicographic order. `n = 0` yields one empty word per
    /// object.
    pub fn words(&self, n: usize) -> Vec<Word> {
        if n == 0 {
            return (0..self.objects.len()).map(|x| Word::empty(ObjId(x))).collect();
        }
        let mut acc: Vec<Vec<GenId>> = self.generators().into_iter().map(|g| alloc::vec![g]).collect();
        for _ in 1..n {
            let mut next = Vec::new();
            for w in &acc {
                let tail = w.last().unwrap().tgt;
                for g in self.generators_of_src(ObjId(tail)) {
                    let mut w2 = w.clone();
                    w2.push(g);
                    next.push(w2);
                }
            }
            acc = next;
        }
        acc.into_iter().map(|factors| Word { at: factors[0].src, factors }).collect()
    }

    fn generators_of_src(&self, src: ObjId) -> Vec<GenId> {
        let mut out = Vec::new();
        for t in 0..self.objects.len() {
            out.extend(self.generators_of(src, ObjId(t)));
        }
        out
    }
}

/// A path-ordered tensor word. The empty word sits at a single object
/// (`at`); a nonempty word's position is determined by its factors.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    at: usize,
    pub factors: Vec<GenId>,
}

impl Word {
    pub fn empty(at: ObjId) -> Self {
        Word { at: at.0, factors: Vec::new() }
    }

    pub fn from_factors(factors: Vec<GenId>) -> Self {
        assert!(!factors.is_empty(), "use Word::empty for empty words");
        for pair in factors.windows(2) {
            assert_eq!(pair[0].tgt, pair[1].src, "non-composable word");
        }
        Word { at: factors[0].src, factors }
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn source(&self) -> ObjId {
        ObjId(self.factors.first().map_or(self.at, |g| g.src))
    }

    pub fn target(&self) -> ObjId {
        ObjId(self.factors.last().map_or(self.at, |g| g.tgt))
    }

    /// Total plain degree of the factors.
    pub fn degree(&self) -> i64 {
        self.factors.iter().map(|g| g.deg).sum()
    }

    /// Total suspended degree (each factor contributes `deg - 1`).
    pub fn sdeg(&self) -> i64 {
        self.factors.iter().map(GenId::sdeg).sum()
    }

    /// The object path `x0, ..., xn`.
    pub fn path(&self) -> Vec<ObjId> {
        let mut p = alloc::vec![self.source()];
        p.extend(self.factors.iter().map(|g| ObjId(g.tgt)));
        p
    }

    pub fn label(&self, quiver: &GradedQuiver) -> String {
        let mut s = String::from("[");
        for (i, g) in self.factors.iter().enumerate() {
            if i > 0 {
                s.push('|');
            }
            s.push_str(quiver.label(*g));
        }
        s.push(']');
        s
    }
}

/// A linear combination of generators of a single hom space.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LinComb {
    terms: BTreeMap<GenId, Scalar>,
}

impl LinComb {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(g: GenId, c: Scalar) -> Self {
        let mut l = LinComb::zero();
        l.add_term(g, c);
        l
    }

    pub fn add_term(&mut self, g: GenId, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&g) {
            None => {
                self.terms.insert(g, c);
            }
            Some(old) => {
                let sum = &old + &c;
                if !sum.is_zero() {
                    self.terms.insert(g, sum);
                }
            }
        }
    }

    pub fn add(&mut self, other: &LinComb) {
        for (g, c) in &other.terms {
            self.add_term(*g, c.clone());
        }
    }

    pub fn add_scaled(&mut self, other: &LinComb, factor: &Scalar) {
        if factor.is_zero() {
            return;
        }
        for (g, c) in &other.terms {
            self.add_term(*g, c * factor);
        }
    }

    pub fn scale(&mut self, factor: &Scalar) {
        if factor.is_zero() {
            self.terms.clear();
            return;
        }
        for c in self.terms.values_mut() {
            *c = &*c * factor;
        }
    }

    pub fn negate(&mut self) {
        for c in self.terms.values_mut() {
            *c = -&*c;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GenId, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, g: &GenId) -> Option<&Scalar> {
        self.terms.get(g)
    }

    pub fn format(&self, quiver: &GradedQuiver) -> String {
        crate::scalar::format_combination(
            self.terms.iter().map(|(g, c)| (c, quiver.label(*g).to_owned())),
        )
    }
}

impl fmt::Display for LinComb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (g, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c} #{}:{}:{}:{}", g.src, g.tgt, g.deg, g.idx)?;
        }
        Ok(())
    }
}

/// One step ofa sign pattern; see [`koszul_sign`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignStep {
    /// Transpose the symbols at positions `i` and `i + 1`.
    Transpose(usize),
    /// Move a map of degree `map_degree` past the first `count` symbols.
    MapPast { map_degree: i64, count: usize },
}

/// The sign produced by commuting graded symbols: `Transpose(i)` swaps two
/// adjacent symbols at the cost of `(-1)^(d_i * d_(i+1))` and updates the
/// symbol list; `MapPast` applies a map of the given degree after letting it
/// travel past the leading symbols at the cost of `(-1)^(p * sum)`. The sign
/// of a composite pattern is the product of the stepwise signs.
pub fn koszul_sign(degrees: &[i64], pattern: &[SignStep]) -> i64 {
    let mut degs: Vec<i64> = degrees.to_vec();
    let mut parity = 0i64;
    for step in pattern {
        match *step {
            SignStep::Transpose(i) => {
                assert!(i + 1 < degs.len(), "transposition out of range");
                parity += degs[i] * degs[i + 1];
                degs.swap(i, i + 1);
            }
            SignStep::MapPast { map_degree, count } => {
                assert!(count <= degs.len(), "pattern index out of range");
                let passed: i64 = degs[..count].iter().sum();
                parity += map_degree * passed;
            }
        }
    }
    if parity.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Sign for applying a map of degree `map_degree` past leading symbols of
/// the given suspended degrees.
pub fn map_past_sign(map_degree: i64, passed: &[i64]) -> i64 {
    koszul_sign(passed, &[SignStep::MapPast { map_degree, count: passed.len() }])
}

/// Conversion sign between a plain operation and its suspended form:
/// `b_k = s ∘ m_k ∘ (s^{-1})^{⊗k}` evaluated on a word of the given
/// suspended degrees. This is the composite Koszul cost of the `k`
/// desuspension maps travelling to their slots.
pub fn suspension_sign(suspended_degrees: &[i64]) -> i64 {
    let steps: Vec<SignStep> = (0..suspended_degrees.len())
        .map(|j| SignStep::MapPast { map_degree: 1, count: j })
        .collect();
    koszul_sign(suspended_degrees, &steps)
}

/// The tensor product of two graded quivers over the same object set:
/// `Hom(x, y) = ⊕_z Q(x, z) ⊗ R(z, y)` with pair labels in lexicographic
/// order.
pub fn tensor_quiver(q1: &GradedQuiver, q2: &GradedQuiver) -> Result<GradedQuiver, QuiverError> {
    if q1.objects != q2.objects {
        return Err(QuiverError::ObjectSetMismatch);
    }
    let n = q1.object_count();
    let mut out = GradedQuiver::new(q1.objects.clone());
    for x in 0..n {
        for y in 0..n {
            let mut entries: Vec<(i64, String)> = Vec::new();
            for z in 0..n {
                for g1 in q1.generators_of(ObjId(x), ObjId(z)) {
                    for g2 in q2.generators_of(ObjId(z), ObjId(y)) {
                        entries.push((
                            g1.deg + g2.deg,
                            alloc::format!("({},{})", q1.label(g1), q2.label(g2)),
                        ));
                    }
                }
            }
            entries.sort();
            for (d, label) in entries {
                out.hom_mut(ObjId(x), ObjId(y)).add(d, label);
            }
        }
    }
    Ok(out)
}

/// Shift a quiver by `k`: the degree-`d` component of the result is the
/// degree-`d + k` component of the input, labels preserved.
pub fn shift(q: &GradedQuiver, k: i64) -> GradedQuiver {
    let mut out = GradedQuiver::new(q.objects().to_vec());
    for s in 0..q.object_count() {
        for t in 0..q.object_count() {
            let h = q.hom(ObjId(s), ObjId(t));
            for d in h.degrees() {
                for label in h.labels(d) {
                    out.hom_mut(ObjId(s), ObjId(t)).add(d - k, label.clone());
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QuiverError {
    ObjectSetMismatch,
}

impl fmt::Display for QuiverError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuiverError::ObjectSetMismatch => write!(f, "quivers have different object sets"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn line_quiver(edges: &[(usize, usize, i64)], n: usize) -> GradedQuiver {
        let mut q = GradedQuiver::new((0..n).map(|i| alloc::format!("x{i}")).collect());
        for (i, (s, t, d)) in edges.iter().enumerate() {
            q.add_generator(ObjId(*s), ObjId(*t), *d, alloc::format!("e{i}"));
        }
        q
    }

    fn unit_quiver(n: usize) -> GradedQuiver {
        let mut q = GradedQuiver::new((0..n).map(|i| alloc::format!("x{i}")).collect());
        for i in 0..n {
            q.add_generator(ObjId(i), ObjId(i), 0, alloc::format!("u{i}"));
        }
        q
    }

    #[test]
    fn tensor_with_unit_quiver_relabels() {
        let q = line_quiver(&[(0, 1, 0), (1, 1, -2)], 2);
        let t = tensor_quiver(&q, &unit_quiver(2)).unwrap();
        for x in 0..2 {
            for y in 0..2 {
                let (a, b) = (ObjId(x), ObjId(y));
                assert_eq!(q.hom(a, b).total_dim(), t.hom(a, b).total_dim());
                for d in q.hom(a, b).degrees() {
                    assert_eq!(q.hom(a, b).dim(d), t.hom(a, b).dim(d));
                }
            }
        }
    }

    #[test]
    fn tensor_with_zero_quiver_is_zero() {
        let q = line_quiver(&[(0, 1, 0)], 2);
        let z = GradedQuiver::new(q.objects().to_vec());
        let t = tensor_quiver(&z, &q).unwrap();
        assert!(t.generators().is_empty());
    }

    #[test]
    fn tensor_of_two_arrows_composes_paths() {
        // x0 -> x1 and x1 -> x2, both degree 0: a single degree-0 line at
        // (x0, x2) in the product.
        let q1 = line_quiver(&[(0, 1, 0)], 3);
        let q2 = line_quiver(&[(1, 2, 0)], 3);
        let t = tensor_quiver(&q1, &q2).unwrap();
        assert_eq!(t.hom(ObjId(0), ObjId(2)).dim(0), 1);
        assert_eq!(t.generators().len(), 1);
    }

    #[test]
    fn tensor_object_mismatch_is_rejected() {
        let q1 = line_quiver(&[], 2);
        let q2 = line_quiver(&[], 3);
        assert_eq!(tensor_quiver(&q1, &q2), Err(QuiverError::ObjectSetMismatch));
    }

    #[test]
    fn shift_moves_degrees() {
        let q = line_quiver(&[(0, 1, 0)], 2);
        let s = shift(&q, 1);
        assert_eq!(s.hom(ObjId(0), ObjId(1)).dim(-1), 1);
        assert_eq!(shift(&shift(&q, 1), -1), q);
        assert_eq!(shift(&q, 0), q);
    }

    #[test]
    fn koszul_basics() {
        assert_eq!(koszul_sign(&[2, 4], &[SignStep::Transpose(0)]), 1);
        assert_eq!(koszul_sign(&[1, 1], &[SignStep::Transpose(0)]), -1);
        assert_eq!(
            koszul_sign(&[1], &[SignStep::MapPast { map_degree: 1, count: 1 }]),
            -1
        );
    }

    proptest! {
        #[test]
        fn koszul_multiplicative(
            degs in proptest::collection::vec(-3i64..=3, 2..6),
            pat in proptest::collection::vec(0usize..4, 0..6),
            split in 0usize..6,
        ) {
            // Interpret indices as transpositions (mod len-1); compose two
            // halves of the pattern and compare with the product of parts.
            let steps: Vec<SignStep> = pat
                .iter()
                .map(|i| SignStep::Transpose(i % (degs.len() - 1)))
                .collect();
            let split = split.min(steps.len());
            let whole = koszul_sign(&degs, &steps);
            let first = koszul_sign(&degs, &steps[..split]);
            // Apply the first half to obtain the permuted degree list.
            let mut mid = degs.clone();
            for s in &steps[..split] {
                if let SignStep::Transpose(i) = s {
                    mid.swap(*i, *i + 1);
                }
            }
            let second = koszul_sign(&mid, &steps[split..]);
            prop_assert_eq!(whole, first * second);
        }

        #[test]
        fn shift_is_degree_exact(k in -3i64..=3, d in -3i64..=3) {
            let q = line_quiver(&[(0, 1, d)], 2);
            let s = shift(&q, k);
            prop_assert_eq!(s.hom(ObjId(0), ObjId(1)).dim(d - k), 1);
        }
    }

    #[test]
    fn tensor_associative_on_dimensions() {
        let q1 = line_quiver(&[(0, 1, 0), (1, 2, -1), (0, 0, 2)], 3);
        let q2 = line_quiver(&[(1, 2, 1), (2, 0, 0)], 3);
        let q3 = line_quiver(&[(2, 2, 0), (0, 1, -1)], 3);
        let left = tensor_quiver(&tensor_quiver(&q1, &q2).unwrap(), &q3).unwrap();
        let right = tensor_quiver(&q1, &tensor_quiver(&q2, &q3).unwrap()).unwrap();
        for x in 0..3 {
            for y in 0..3 {
                let (a, b) = (ObjId(x), ObjId(y));
                let degs: Vec<i64> = left.hom(a, b).degrees().collect();
                for d in degs {
                    assert_eq!(left.hom(a, b).dim(d), right.hom(a, b).dim(d));
                }
            }
        }
    }
}
