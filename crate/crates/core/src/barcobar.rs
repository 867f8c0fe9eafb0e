//! Reduction, augmentation, bar and cobar constructions, the enveloping
//! dg-category and its counit functor.
//!
//! The bar construction of a presentation is the tensor cocategory on the
//! suspended reduced quiver, truncated at a word-length cap; its
//! codifferential is the coderivation assembled from all operations, and
//! the cap is closed under it because operations never lengthen words. The
//! cobar construction is the free tensor category on the desuspended bar
//! words, with the letter-count cap realized as a quotient (concatenations
//! beyond the cap are zero). Both caps share one `L_max`.
//!
//! Reduction picks the complement of the unit line spanned by the
//! non-pivot generators (pivot = first generator carried by the unit). The
//! induced structure is exact only when no operation value on reduced
//! words meets the unit line; otherwise the split complement is not closed
//! and [`reduce`] reports the offending entry instead of silently breaking
//! the bar differential.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::category::{AInfPresentation, CategoryError, OpTable};
use crate::complex::ComplexPresentation;
use crate::functor::AInfFunctor;
use crate::graded::{map_past_sign, GenId, GradedQuiver, LinComb, ObjId, Word};
use crate::matrix::Matrix;
use crate::scalar::{FieldSpec, Scalar};

/// A non-unital presentation: a quiver with suspended operation tables and
/// no units.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonUnital {
    pub field: FieldSpec,
    pub quiver: GradedQuiver,
    pub arity_bound: usize,
    /// Suspended tables, as in [`AInfPresentation`].
    pub ops: Vec<OpTable>,
}

impl NonUnital {
    pub fn b(&self, word: &Word) -> LinComb {
        let k = word.len();
        if k == 0 || k > self.arity_bound {
            return LinComb::zero();
        }
        self.ops[k - 1].get(word).cloned().unwrap_or_default()
    }

    /// The coderivation assembled from all operations, applied to one word:
    /// the sum over windows of `1^i ⊗ b_k ⊗ 1^j` with Koszul costs.
    pub fn coderivation(&self, w: &Word) -> WordComb {
        let n = w.len();
        let mut out = WordComb::default();
        for i in 0..n {
            let sdegs: Vec<i64> = w.factors[..i].iter().map(GenId::sdeg).collect();
            let sign = map_past_sign(1, &sdegs);
            for k in 1..=(n - i) {
                let inner = self.b(&Word::from_factors(w.factors[i..i + k].to_vec()));
                for (g, c) in inner.terms() {
                    let mut factors = Vec::with_capacity(n - k + 1);
                    factors.extend_from_slice(&w.factors[..i]);
                    factors.push(*g);
                    factors.extend_from_slice(&w.factors[i + k..]);
                    let coeff = if sign < 0 { -c } else { c.clone() };
                    out.add_term(Word::from_factors(factors), coeff);
                }
            }
        }
        out
    }
}

/// A formal combination of tensor words.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct WordComb {
    terms: BTreeMap<Word, Scalar>,
}

impl WordComb {
    pub fn add_term(&mut self, w: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&w) {
            None => {
                self.terms.insert(w, c);
            }
            Some(old) => {
                let sum = &old + &c;
                if !sum.is_zero() {
                    self.terms.insert(w, sum);
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &WordComb, factor: &Scalar) {
        for (w, c) in &other.terms {
            self.add_term(w.clone(), c * factor);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn format(&self, quiver: &GradedQuiver) -> String {
        crate::scalar::format_combination(self.terms.iter().map(|(w, c)| (c, w.label(quiver))))
    }
}

/// Outcome of [`reduce`]: the non-unital presentation on the complement of
/// the unit lines, plus the lift back to original generators.
#[derive(Debug, Clone)]
pub struct Reduction {
    pub nonunital: NonUnital,
    /// Reduced generator to the original generator representing it.
    pub lift: BTreeMap<GenId, GenId>,
}

/// Strips the unit lines. Fails when some operation value on reduced words
/// has a nonzero unit component (the presentation is not augmented over
/// its units, so no split reduction exists).
pub fn reduce(a: &AInfPresentation) -> Result<Reduction, CategoryError> {
    let quiver = a.quiver();
    let n = quiver.object_count();
    // Pivot generator per object: the first generator carried by the unit.
    let mut pivot: Vec<Option<GenId>> = alloc::vec![None; n];
    for x in 0..n {
        if let Some((g, _)) = a.unit(ObjId(x)).terms().next() {
            pivot[x] = Some(*g);
        }
    }

    let mut reduced = GradedQuiver::new(quiver.objects().to_vec());
    let mut remap: BTreeMap<GenId, GenId> = BTreeMap::new();
    let mut lift: BTreeMap<GenId, GenId> = BTreeMap::new();
    for g in quiver.generators() {
        if pivot[g.src] == Some(g) {
            continue;
        }
        let new = reduced.add_generator(
            ObjId(g.src),
            ObjId(g.tgt),
            g.deg,
            quiver.label(g).to_string(),
        );
        remap.insert(g, new);
        lift.insert(new, g);
    }

    let mut ops: Vec<OpTable> = alloc::vec![OpTable::new(); a.arity_bound()];
    for k in 1..=a.arity_bound() {
        'entry: for (word, value) in a.table(k) {
            let mut new_factors = Vec::with_capacity(k);
            for g in &word.factors {
                match remap.get(g) {
                    Some(ng) => new_factors.push(*ng),
                    None => continue 'entry,
                }
            }
            let mut new_value = LinComb::zero();
            for (g, c) in value.terms() {
                match remap.get(g) {
                    Some(ng) => new_value.add_term(*ng, c.clone()),
                    None => {
                        return Err(CategoryError::BadEntry {
                            arity: k,
                            word: word.label(quiver),
                            reason: alloc::format!(
                                "operation value meets the unit line at {}; \
                                 the presentation has no split reduction",
                                quiver.label(*g)
                            ),
                        });
                    }
                }
            }
            if !new_value.is_zero() {
                ops[k - 1].insert(Word::from_factors(new_factors), new_value);
            }
        }
    }
    Ok(Reduction {
        nonunital: NonUnital {
            field: a.field(),
            quiver: reduced,
            arity_bound: a.arity_bound(),
            ops,
        },
        lift,
    })
}

/// Adjoins a unit per object; the inverse of [`reduce`] on augmented
/// presentations. Returns the presentation and the adjoined unit
/// generators.
pub fn augment(nu: &NonUnital) -> Result<(Arc<AInfPresentation>, Vec<GenId>), CategoryError> {
    let mut quiver = nu.quiver.clone();
    let mut unit_gens = Vec::new();
    for x in 0..quiver.object_count() {
        let label = alloc::format!("1_{}", quiver.objects()[x].clone());
        let g = quiver.add_generator(ObjId(x), ObjId(x), 0, label);
        unit_gens.push(g);
    }
    // Plain tables: the original ones (indices stay valid because units
    // are appended after existing degree-0 generators) plus unit action.
    let bound = nu.arity_bound.max(2);
    let mut plain: Vec<OpTable> = alloc::vec![OpTable::new(); bound];
    for k in 1..=nu.arity_bound {
        for (w, v) in &nu.ops[k - 1] {
            plain[k - 1].insert(w.clone(), crate::category::unsuspend_value(w, v));
        }
    }
    let one = nu.field.one();
    for g in quiver.generators() {
        let ux = unit_gens[g.src];
        let uy = unit_gens[g.tgt];
        plain[1].insert(Word::from_factors(alloc::vec![ux, g]), LinComb::single(g, one.clone()));
        if g != ux {
            plain[1]
                .insert(Word::from_factors(alloc::vec![g, uy]), LinComb::single(g, one.clone()));
        }
    }
    let units: Vec<LinComb> = unit_gens.iter().map(|g| LinComb::single(*g, one.clone())).collect();
    let p = AInfPresentation::new(nu.field, quiver, bound, plain, units)?;
    Ok((Arc::new(p), unit_gens))
}

/// The bar cocategory of a presentation: suspended reduced words up to the
/// cap, deconcatenation, and the coderivation differential.
#[derive(Debug, Clone)]
pub struct CoCatPresentation {
    pub field: FieldSpec,
    /// The reduced generator quiver underlying the words.
    pub base: NonUnital,
    /// Reduced generator to original generator.
    pub lift: BTreeMap<GenId, GenId>,
    pub trunc: usize,
    /// Word basis per ordered object pair, length-major then lexicographic.
    pub words: BTreeMap<(usize, usize), Vec<Word>>,
    /// The differential on basis words.
    pub diff: BTreeMap<Word, WordComb>,
}

impl CoCatPresentation {
    /// Deconcatenation into nonempty halves.
    pub fn delta(&self, w: &Word) -> Vec<(Word, Word)> {
        (1..w.len())
            .map(|i| {
                (
                    Word::from_factors(w.factors[..i].to_vec()),
                    Word::from_factors(w.factors[i..].to_vec()),
                )
            })
            .collect()
    }

    pub fn all_words(&self) -> impl Iterator<Item = &Word> {
        self.words.values().flatten()
    }

    pub fn b(&self, w: &Word) -> WordComb {
        self.diff.get(w).cloned().unwrap_or_default()
    }

    /// First word where the differential fails to square to zero, if any.
    pub fn verify_b_squared(&self) -> Option<Word> {
        for w in self.all_words() {
            let mut acc = WordComb::default();
            for (w1, c) in self.b(w).terms() {
                acc.add_scaled(&self.b(w1), c);
            }
            if !acc.is_zero() {
                return Some(w.clone());
            }
        }
        None
    }

    /// First word violating co-Leibniz `(b ⊗ 1 + 1 ⊗ b) Δ = Δ b`, if any.
    pub fn verify_co_leibniz(&self) -> Option<Word> {
        for w in self.all_words() {
            let mut defect: BTreeMap<(Word, Word), Scalar> = BTreeMap::new();
            let mut push = |m: &mut BTreeMap<(Word, Word), Scalar>, k: (Word, Word), c: Scalar| {
                if c.is_zero() {
                    return;
                }
                match m.remove(&k) {
                    None => {
                        m.insert(k, c);
                    }
                    Some(old) => {
                        let s = &old + &c;
                        if !s.is_zero() {
                            m.insert(k, s);
                        }
                    }
                }
            };
            for (w1, w2) in self.delta(w) {
                for (b1, c) in self.b(&w1).terms() {
                    push(&mut defect, (b1.clone(), w2.clone()), c.clone());
                }
                let sign = map_past_sign(1, &[w1.sdeg()]);
                for (b2, c) in self.b(&w2).terms() {
                    let coeff = if sign < 0 { -c } else { c.clone() };
                    push(&mut defect, (w1.clone(), b2.clone()), coeff);
                }
            }
            for (bw, c) in self.b(w).terms() {
                for (w1, w2) in self.delta(bw) {
                    push(&mut defect, (w1, w2), -c);
                }
            }
            if !defect.is_empty() {
                return Some(w.clone());
            }
        }
        None
    }

    /// Coassociativity of deconcatenation: both iterated splits enumerate
    /// the same triples.
    pub fn verify_coassociative(&self) -> bool {
        for w in self.all_words() {
            let mut left = Vec::new();
            for (w1, w2) in self.delta(w) {
                for (a, b) in self.delta(&w1) {
                    left.push((a, b, w2.clone()));
                }
            }
            let mut right = Vec::new();
            for (w1, w2) in self.delta(w) {
                for (b, c) in self.delta(&w2) {
                    right.push((w1.clone(), b, c));
                }
            }
            left.sort();
            right.sort();
            if left != right {
                return false;
            }
        }
        true
    }
}

/// The bar construction at word-length cap `l_max`, over the reduction of
/// `a`. Words never lengthen under the differential, so the cap is a
/// genuine sub-cocategory and all identities hold exactly on it.
pub fn bar(a: &AInfPresentation, l_max: usize) -> Result<CoCatPresentation, CategoryError> {
    assert!(l_max >= 1);
    let reduction = reduce(a)?;
    let base = reduction.nonunital;
    let n = base.quiver.object_count();
    let mut words: BTreeMap<(usize, usize), Vec<Word>> = BTreeMap::new();
    for x in 0..n {
        for y in 0..n {
            words.insert((x, y), Vec::new());
        }
    }
    let mut diff = BTreeMap::new();
    for len in 1..=l_max {
        for w in base.quiver.words(len) {
            let image = base.coderivation(&w);
            if !image.is_zero() {
                diff.insert(w.clone(), image);
            }
            words.get_mut(&(w.source().0, w.target().0)).unwrap().push(w);
        }
    }
    Ok(CoCatPresentation {
        field: base.field,
        base,
        lift: reduction.lift,
        trunc: l_max,
        words,
        diff,
    })
}

/// Output of [`cobar`]: the free tensor presentation plus the
/// decomposition of each generator into its letters (bar words).
#[derive(Debug, Clone)]
pub struct CobarOutput {
    pub nonunital: NonUnital,
    pub gen_words: BTreeMap<GenId, Vec<Word>>,
}

/// Letter sequences from `x` to `y` with 1 to `cap` letters, in
/// (letter-count, lexicographic) order.
fn letter_sequences(c: &CoCatPresentation, x: usize, y: usize, cap: usize) -> Vec<Vec<Word>> {
    let n = c.base.quiver.object_count();
    let mut out = Vec::new();
    let mut frontier: Vec<(usize, Vec<Word>)> = alloc::vec![(x, Vec::new())];
    for _ in 0..cap {
        let mut next = Vec::new();
        for (at, seq) in &frontier {
            for mid in 0..n {
                for w in &c.words[&(*at, mid)] {
                    let mut s = seq.clone();
                    s.push(w.clone());
                    next.push((mid, s));
                }
            }
        }
        for (at, seq) in &next {
            if *at == y {
                out.push(seq.clone());
            }
        }
        frontier = next;
    }
    out
}

fn letter_degree(w: &Word) -> i64 {
    w.sdeg() + 1
}

fn sequence_degree(seq: &[Word]) -> i64 {
    seq.iter().map(letter_degree).sum()
}

fn sequence_label(seq: &[Word], base: &GradedQuiver) -> String {
    let mut s = String::new();
    for w in seq {
        s.push_str(&w.label(base));
    }
    s
}

/// The differential of one letter: the bar differential kept as a letter,
/// minus the Koszul-signed splits into two letters.
fn letter_differential(c: &CoCatPresentation, w: &Word) -> Vec<(Scalar, Vec<Word>)> {
    let mut out = Vec::new();
    for (bw, coeff) in c.b(w).terms() {
        out.push((coeff.clone(), alloc::vec![bw.clone()]));
    }
    for (w1, w2) in c.delta(w) {
        let sign = map_past_sign(1, &[w1.sdeg()]);
        let coeff = if sign < 0 { c.field.one() } else { -&c.field.one() };
        out.push((coeff, alloc::vec![w1, w2]));
    }
    out
}

/// Differential of a letter sequence by the Leibniz rule; sequences beyond
/// the cap are dropped (quotient semantics: letter counts only grow).
fn sequence_differential(
    c: &CoCatPresentation,
    seq: &[Word],
    cap: usize,
) -> Vec<(Scalar, Vec<Word>)> {
    let mut out = Vec::new();
    for i in 0..seq.len() {
        let passed: Vec<i64> = seq[..i].iter().map(letter_degree).collect();
        let sign = map_past_sign(1, &passed);
        for (coeff, piece) in letter_differential(c, &seq[i]) {
            let mut s: Vec<Word> = seq[..i].to_vec();
            s.extend(piece);
            s.extend_from_slice(&seq[i + 1..]);
            if s.len() > cap {
                continue;
            }
            let coeff = if sign < 0 { -&coeff } else { coeff };
            out.push((coeff, s));
        }
    }
    out
}

/// The cobar construction: the free tensor (non-unital, dg) category on
/// the desuspended bar words, truncated at `cap` letters.
pub fn cobar(c: &CoCatPresentation, cap: usize) -> CobarOutput {
    assert!(cap >= 1);
    let n = c.base.quiver.object_count();
    let mut quiver = GradedQuiver::new(c.base.quiver.objects().to_vec());
    let mut gen_of: BTreeMap<Vec<Word>, GenId> = BTreeMap::new();
    let mut gen_words: BTreeMap<GenId, Vec<Word>> = BTreeMap::new();
    let mut all: BTreeMap<(usize, usize), Vec<Vec<Word>>> = BTreeMap::new();
    for x in 0..n {
        for y in 0..n {
            let seqs = letter_sequences(c, x, y, cap);
            for seq in &seqs {
                let g = quiver.add_generator(
                    ObjId(x),
                    ObjId(y),
                    sequence_degree(seq),
                    sequence_label(seq, &c.base.quiver),
                );
                gen_of.insert(seq.clone(), g);
                gen_words.insert(g, seq.clone());
            }
            all.insert((x, y), seqs);
        }
    }

    let mut plain: Vec<OpTable> = alloc::vec![OpTable::new(); 2];
    for seqs in all.values() {
        for seq in seqs {
            let g = gen_of[seq];
            let mut value = LinComb::zero();
            for (coeff, s) in sequence_differential(c, seq, cap) {
                value.add_term(gen_of[&s], coeff);
            }
            if !value.is_zero() {
                plain[0].insert(Word::from_factors(alloc::vec![g]), value);
            }
        }
    }
    // Multiplication: concatenation, zero beyond the cap.
    for seqs in all.values() {
        for seq1 in seqs {
            let g1 = gen_of[seq1];
            let mid = seq1.last().unwrap().target().0;
            for ((m, _), seqs2) in &all {
                if *m != mid {
                    continue;
                }
                for seq2 in seqs2 {
                    if seq1.len() + seq2.len() > cap {
                        continue;
                    }
                    let g2 = gen_of[seq2];
                    let mut cat = seq1.clone();
                    cat.extend(seq2.iter().cloned());
                    let g = gen_of[&cat];
                    plain[1].insert(
                        Word::from_factors(alloc::vec![g1, g2]),
                        LinComb::single(g, c.field.one()),
                    );
                }
            }
        }
    }

    let mut ops: Vec<OpTable> = alloc::vec![OpTable::new(); 2];
    for k in 1..=2usize {
        for (w, v) in &plain[k - 1] {
            ops[k - 1].insert(w.clone(), crate::category::suspend_table(w, v));
        }
    }
    CobarOutput {
        nonunital: NonUnital { field: c.field, quiver, arity_bound: 2, ops },
        gen_words,
    }
}

/// Output of [`envelope`]: the presentation together with the generator
/// decompositions and the lift of reduced generators.
#[derive(Debug, Clone)]
pub struct EnvelopeOutput {
    pub presentation: Arc<AInfPresentation>,
    pub gen_words: BTreeMap<GenId, Vec<Word>>,
    pub lift: BTreeMap<GenId, GenId>,
    pub unit_gens: Vec<GenId>,
}

/// The enveloping dg-category: augmentation of the cobar of the bar of the
/// reduction, both truncations tied to `l_max`. Same objects as the input.
pub fn envelope(d: &AInfPresentation, l_max: usize) -> Result<EnvelopeOutput, CategoryError> {
    d.require_dg()?;
    let c = bar(d, l_max)?;
    let co = cobar(&c, l_max);
    let (presentation, unit_gens) = augment(&co.nonunital)?;
    Ok(EnvelopeOutput { presentation, gen_words: co.gen_words, lift: c.lift, unit_gens })
}

/// The counit functor from the envelope back to the presentation: strict,
/// sending a product of single-generator letters to the composite of their
/// lifts, any longer letter to zero, and units to units.
pub fn gamma(d: &Arc<AInfPresentation>, l_max: usize) -> Result<AInfFunctor, CategoryError> {
    let env = envelope(d, l_max)?;
    let field = d.field();
    let mut images: BTreeMap<GenId, LinComb> = BTreeMap::new();
    for (g, seq) in &env.gen_words {
        if seq.iter().any(|w| w.len() != 1) {
            continue;
        }
        let mut acc: Option<LinComb> = None;
        for w in seq {
            let orig = env.lift[&w.factors[0]];
            let step = LinComb::single(orig, field.one());
            acc = Some(match acc {
                None => step,
                Some(prev) => d.compose2(&prev, &step),
            });
        }
        images.insert(*g, acc.unwrap());
    }
    for (x, ug) in env.unit_gens.iter().enumerate() {
        images.insert(*ug, d.unit(ObjId(x)).clone());
    }
    let object_map = (0..d.quiver().object_count()).collect();
    AInfFunctor::strict(env.presentation.clone(), d.clone(), object_map, images)
}

/// The hom complex of the (truncated) envelope between two objects,
/// assembled degreewise over `[lo, hi]` without materializing the whole
/// presentation. Includes the adjoined unit for `x = y`.
pub fn envelope_pair_complex(
    d: &AInfPresentation,
    x: ObjId,
    y: ObjId,
    l_max: usize,
    lo: i64,
    hi: i64,
) -> Result<ComplexPresentation, CategoryError> {
    d.require_dg()?;
    let c = bar(d, l_max)?;
    let seqs = letter_sequences(&c, x.0, y.0, l_max);
    let mut slices: BTreeMap<i64, Vec<Vec<Word>>> = BTreeMap::new();
    for seq in seqs {
        let deg = sequence_degree(&seq);
        if deg >= lo && deg <= hi {
            slices.entry(deg).or_default().push(seq);
        }
    }
    let unit_slot = x == y && lo <= 0 && 0 <= hi;
    let mut spaces: BTreeMap<i64, Vec<String>> = BTreeMap::new();
    let mut index: BTreeMap<(i64, Vec<Word>), usize> = BTreeMap::new();
    for d0 in lo..=hi {
        let mut labels = Vec::new();
        if unit_slot && d0 == 0 {
            labels.push("1".to_string());
        }
        for seq in slices.get(&d0).into_iter().flatten() {
            index.insert((d0, seq.clone()), labels.len());
            labels.push(sequence_label(seq, &c.base.quiver));
        }
        spaces.insert(d0, labels);
    }
    let mut diffs: BTreeMap<i64, Matrix> = BTreeMap::new();
    for d0 in lo..hi {
        let rows = spaces[&(d0 + 1)].len();
        let cols = spaces[&d0].len();
        let mut m = Matrix::zero(d.field(), rows, cols);
        for seq in slices.get(&d0).into_iter().flatten() {
            let col = index[&(d0, seq.clone())];
            for (coeff, s) in sequence_differential(&c, seq, l_max) {
                if let Some(&row) = index.get(&(d0 + 1, s.clone())) {
                    let v = &coeff + m.at(row, col);
                    m.set(row, col, v);
                }
            }
        }
        diffs.insert(d0, m);
    }
    ComplexPresentation::new(d.field(), lo, hi, spaces, diffs).map_err(CategoryError::from)
}
