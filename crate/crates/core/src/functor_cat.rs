//! Hom complexes of the category of A-infinity functors.
//!
//! A prenatural transformation of degree `d` from `f` to `g` is a family of
//! components: an element of `Hom(f(x), g(x))` of degree `d` per object,
//! and for each arity `n >= 1` a map sending length-`n` source words to
//! `Hom(f(x0), g(xn))`, of degree `d - n`. Components are stored suspended
//! (uniform degree `d - 1`), so the differential is the coderivation
//! commutator
//!
//! ```text
//! m1(r) = b_B ∘ r̂  -  (-1)^(d-1) r̂ ∘ b_A
//! ```
//!
//! where `r̂` interleaves source-functor blocks, one `r` component, and
//! target-functor blocks; the binary composition `m2` interleaves two
//! component blocks. Both raise no arity: component `n` of the output
//! depends only on components `<= n` of the inputs, so arity truncation is
//! exact degreewise and `d ∘ d = 0` holds on every window.
//!
//! With these conventions the classical Leibniz rule holds on the nose:
//! `m1(m2(r1, r2)) = m2(m1 r1, r2) + (-1)^(d1) m2(r1, m1 r2)`.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use crate::category::{suspend_table, AInfPresentation, CategoryError, OpTable};
use crate::complex::ComplexPresentation;
use crate::functor::{compositions, AInfFunctor};
use crate::graded::{map_past_sign, GenId, LinComb, ObjId, Word};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

/// A prenatural transformation between functors with common source and
/// target presentations, truncated at `arity_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct PreNatTransform {
    f: AInfFunctor,
    g: AInfFunctor,
    degree: i64,
    arity_max: usize,
    /// Arity-0 components per source object (plain and suspended forms
    /// coincide for a constant).
    at_objects: Vec<LinComb>,
    /// Suspended higher components; `comps[n - 1]` holds arity `n`.
    comps: Vec<OpTable>,
}

impl PreNatTransform {
    pub fn zero(f: &AInfFunctor, g: &AInfFunctor, degree: i64, arity_max: usize) -> Self {
        assert!(functors_parallel(f, g), "functors must share source and target");
        let n = f.source().quiver().object_count();
        PreNatTransform {
            f: f.clone(),
            g: g.clone(),
            degree,
            arity_max,
            at_objects: alloc::vec![LinComb::zero(); n],
            comps: alloc::vec![OpTable::new(); arity_max],
        }
    }

    /// The identity transformation of a functor: arity 0 is the unit at
    /// each image object, higher components vanish.
    pub fn identity(f: &AInfFunctor, arity_max: usize) -> Self {
        let mut r = PreNatTransform::zero(f, f, 0, arity_max);
        for x in 0..f.source().quiver().object_count() {
            r.at_objects[x] = f.target().unit(f.map_object(ObjId(x))).clone();
        }
        r
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn arity_max(&self) -> usize {
        self.arity_max
    }

    pub fn source_functor(&self) -> &AInfFunctor {
        &self.f
    }

    pub fn target_functor(&self) -> &AInfFunctor {
        &self.g
    }

    pub fn at_object(&self, x: ObjId) -> &LinComb {
        &self.at_objects[x.0]
    }

    pub fn set_at_object(&mut self, x: ObjId, v: LinComb) {
        for (h, _) in v.terms() {
            assert_eq!(h.deg, self.degree, "arity-0 component degree mismatch");
        }
        self.at_objects[x.0] = v;
    }

    /// The suspended component on a word of its own length (zero beyond the
    /// truncation).
    pub fn comp(&self, w: &Word) -> LinComb {
        let n = w.len();
        if n == 0 {
            return self.at_objects[w.source().0].clone();
        }
        if n > self.arity_max {
            return LinComb::zero();
        }
        self.comps[n - 1].get(w).cloned().unwrap_or_default()
    }

    /// Sets the suspended component at a word.
    pub fn set_comp(&mut self, w: &Word, v: LinComb) {
        let n = w.len();
        assert!(n >= 1 && n <= self.arity_max, "arity outside truncation");
        let expected = w.degree() + self.degree - n as i64;
        for (h, _) in v.terms() {
            assert_eq!(h.deg, expected, "component degree mismatch");
        }
        if v.is_zero() {
            self.comps[n - 1].remove(w);
        } else {
            self.comps[n - 1].insert(w.clone(), v);
        }
    }

    /// Sets the component from its plain form.
    pub fn set_comp_plain(&mut self, w: &Word, v: &LinComb) {
        self.set_comp(w, suspend_table(w, v));
    }

    pub fn comp_plain(&self, w: &Word) -> LinComb {
        crate::category::unsuspend_value(w, &self.comp(w))
    }

    pub fn is_zero(&self) -> bool {
        self.at_objects.iter().all(LinComb::is_zero)
            && self.comps.iter().all(|t| t.values().all(LinComb::is_zero))
    }

    pub fn add_scaled(&mut self, other: &PreNatTransform, c: &Scalar) {
        assert_eq!(self.degree, other.degree, "degree mismatch in sum");
        for x in 0..self.at_objects.len() {
            let mut v = other.at_objects[x].clone();
            v.scale(c);
            self.at_objects[x].add(&v);
        }
        for n in 1..=other.arity_max.min(self.arity_max) {
            for (w, v) in &other.comps[n - 1] {
                let mut acc = self.comp(w);
                acc.add_scaled(v, c);
                if acc.is_zero() {
                    self.comps[n - 1].remove(w);
                } else {
                    self.comps[n - 1].insert(w.clone(), acc);
                }
            }
        }
    }

    pub fn negate(&mut self) {
        for v in &mut self.at_objects {
            v.negate();
        }
        for t in &mut self.comps {
            for v in t.values_mut() {
                v.negate();
            }
        }
    }
}

fn functors_parallel(f: &AInfFunctor, g: &AInfFunctor) -> bool {
    f.source().quiver() == g.source().quiver() && f.target().quiver() == g.target().quiver()
}

/// Expands the block map `F(b1) ⊗ ... ⊗ F(br)` over all compositions of a
/// word segment, including the empty segment (one empty block list).
fn functor_blocks(f: &AInfFunctor, seg: &[GenId]) -> Vec<(Scalar, Vec<GenId>)> {
    let field = f.source().field();
    if seg.is_empty() {
        return alloc::vec![(field.one(), Vec::new())];
    }
    let mut out = Vec::new();
    let word = Word::from_factors(seg.to_vec());
    for sizes in compositions(seg.len()) {
        let mut acc: Vec<(Scalar, Vec<GenId>)> = alloc::vec![(field.one(), Vec::new())];
        let mut offset = 0;
        let mut dead = false;
        for &size in &sizes {
            let block = Word::from_factors(seg[offset..offset + size].to_vec());
            offset += size;
            let image = f.comp(&block);
            if image.is_zero() {
                dead = true;
                break;
            }
            let mut next = Vec::new();
            for (c, prefix) in &acc {
                for (h, ch) in image.terms() {
                    let mut p = prefix.clone();
                    p.push(*h);
                    next.push((c * ch, p));
                }
            }
            acc = next;
        }
        if !dead {
            out.extend(acc);
        }
    }
    let _ = word;
    out
}

/// The differential of the hom complex. The second return value reports
/// whether any contribution was dropped because an operation or functor
/// component beyond its stated bound was assumed zero.
pub fn m1(r: &PreNatTransform) -> (PreNatTransform, bool) {
    let f = &r.f;
    let g = &r.g;
    let a = f.source().clone();
    let b = f.target().clone();
    let field = a.field();
    let mut out = PreNatTransform::zero(f, g, r.degree + 1, r.arity_max);
    let mut truncated = false;
    let rdeg = r.degree - 1;

    for n in 0..=r.arity_max {
        let words: Vec<Word> = if n == 0 {
            (0..a.quiver().object_count()).map(|x| Word::empty(ObjId(x))).collect()
        } else {
            a.quiver().words(n)
        };
        if n > f.bound() || n > g.bound() || n > a.arity_bound() {
            truncated = true;
        }
        for w in &words {
            let mut value = LinComb::zero();
            // b_B ∘ r̂: choose a middle segment handled by r, functor
            // blocks on both sides, then one target operation.
            for p in 0..=n {
                for s in 0..=(n - p) {
                    let sdegs: Vec<i64> = w.factors[..p].iter().map(GenId::sdeg).collect();
                    let sign = map_past_sign(rdeg, &sdegs);
                    let mid = if s == 0 {
                        r.at_objects[w.path()[p].0].clone()
                    } else {
                        r.comp(&Word::from_factors(w.factors[p..p + s].to_vec()))
                    };
                    if mid.is_zero() {
                        continue;
                    }
                    let pre = functor_blocks(f, &w.factors[..p]);
                    let post = functor_blocks(g, &w.factors[p + s..]);
                    for (cpre, fpre) in &pre {
                        for (gmid, cmid) in mid.terms() {
                            for (cpost, gpost) in &post {
                                let mut factors = fpre.clone();
                                factors.push(*gmid);
                                factors.extend_from_slice(gpost);
                                let outer = Word::from_factors(factors);
                                if outer.len() > b.arity_bound() {
                                    if !b.is_dg() {
                                        truncated = true;
                                    }
                                    continue;
                                }
                                let opv = b.b(&outer);
                                if opv.is_zero() {
                                    continue;
                                }
                                let mut coeff = &(cpre * cmid) * cpost;
                                if sign < 0 {
                                    coeff = -&coeff;
                                }
                                value.add_scaled(&opv, &coeff);
                            }
                        }
                    }
                }
            }
            // -(-1)^(d-1) r̂ ∘ b_A.
            if n >= 1 {
                let outer_sign = map_past_sign(rdeg, &[1]);
                for (c, inner) in inner_applications(&a, w) {
                    let rv = r.comp(&inner);
                    if rv.is_zero() {
                        continue;
                    }
                    let coeff = if outer_sign < 0 { c.clone() } else { -&c };
                    value.add_scaled(&rv, &coeff);
                }
            }
            if value.is_zero() {
                continue;
            }
            if n == 0 {
                out.at_objects[w.source().0] = value;
            } else {
                out.comps[n - 1].insert(w.clone(), value);
            }
        }
    }
    let _ = field;
    (out, truncated)
}

fn inner_applications(a: &AInfPresentation, w: &Word) -> Vec<(Scalar, Word)> {
    let n = w.len();
    let mut out = Vec::new();
    for i in 0..n {
        for k in 1..=(n - i) {
            out.extend(a.apply_inner(w, i, k));
        }
    }
    out
}

/// Binary composition of the hom complexes: `m2(r1: f -> g, r2: g -> h)`
/// lands in `Hom(f, h)` with degree the sum of the degrees.
pub fn m2(
    r1: &PreNatTransform,
    r2: &PreNatTransform,
) -> Result<(PreNatTransform, bool), CategoryError> {
    if r1.g != r2.f {
        return Err(CategoryError::ObjectMismatch);
    }
    let f = &r1.f;
    let g = &r1.g;
    let h = &r2.g;
    let a = f.source().clone();
    let b = f.target().clone();
    let arity_max = r1.arity_max.min(r2.arity_max);
    let mut out = PreNatTransform::zero(f, h, r1.degree + r2.degree, arity_max);
    let mut truncated = false;
    let (d1, d2) = (r1.degree - 1, r2.degree - 1);

    for n in 0..=arity_max {
        let words: Vec<Word> = if n == 0 {
            (0..a.quiver().object_count()).map(|x| Word::empty(ObjId(x))).collect()
        } else {
            a.quiver().words(n)
        };
        if n > f.bound() || n > g.bound() || n > h.bound() {
            truncated = true;
        }
        for w in &words {
            let path = w.path();
            let mut value = LinComb::zero();
            // Split the word into f-part, r1 segment, g-part, r2 segment,
            // h-part.
            for p in 0..=n {
                for s1 in 0..=(n - p) {
                    for q in 0..=(n - p - s1) {
                        for s2 in 0..=(n - p - s1 - q) {
                            let sd = |range: core::ops::Range<usize>| -> i64 {
                                w.factors[range].iter().map(GenId::sdeg).sum()
                            };
                            let sign1 = map_past_sign(d1, &[sd(0..p)]);
                            let sign2 = map_past_sign(d2, &[sd(0..p + s1 + q)]);
                            let mid1 = if s1 == 0 {
                                r1.at_objects[path[p].0].clone()
                            } else {
                                r1.comp(&Word::from_factors(w.factors[p..p + s1].to_vec()))
                            };
                            if mid1.is_zero() {
                                continue;
                            }
                            let mid2 = if s2 == 0 {
                                r2.at_objects[path[p + s1 + q].0].clone()
                            } else {
                                r2.comp(&Word::from_factors(
                                    w.factors[p + s1 + q..p + s1 + q + s2].to_vec(),
                                ))
                            };
                            if mid2.is_zero() {
                                continue;
                            }
                            let pre = functor_blocks(f, &w.factors[..p]);
                            let midg = functor_blocks(g, &w.factors[p + s1..p + s1 + q]);
                            let post = functor_blocks(h, &w.factors[p + s1 + q + s2..]);
                            for (c0, fpre) in &pre {
                                for (g1, c1) in mid1.terms() {
                                    for (c2, gmid) in &midg {
                                        for (g2, c3) in mid2.terms() {
                                            for (c4, hpost) in &post {
                                                let mut factors = fpre.clone();
                                                factors.push(*g1);
                                                factors.extend_from_slice(gmid);
                                                factors.push(*g2);
                                                factors.extend_from_slice(hpost);
                                                let outer = Word::from_factors(factors);
                                                if outer.len() > b.arity_bound() {
                                                    if !b.is_dg() {
                                                        truncated = true;
                                                    }
                                                    continue;
                                                }
                                                let opv = b.b(&outer);
                                                if opv.is_zero() {
                                                    continue;
                                                }
                                                let mut coeff = c0 * c1;
                                                coeff = &coeff * c2;
                                                coeff = &coeff * c3;
                                                coeff = &coeff * c4;
                                                if sign1 * sign2 < 0 {
                                                    coeff = -&coeff;
                                                }
                                                value.add_scaled(&opv, &coeff);
                                            }
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
            if value.is_zero() {
                continue;
            }
            if n == 0 {
                out.at_objects[w.source().0] = value;
            } else {
                out.comps[n - 1].insert(w.clone(), value);
            }
        }
    }
    // The block sum assembles the suspended binary operation; rescale by
    // the suspension sign of the first argument to expose the plain one,
    // for which the unit transformation is a strict two-sided unit.
    if (r1.degree - 1).rem_euclid(2) == 1 {
        out.negate();
    }
    Ok((out, truncated))
}

/// One basis slot of a hom-complex window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisSlot {
    pub arity: usize,
    /// The source word (empty word at an object for arity 0).
    pub word: Word,
    /// The target generator carrying the suspended coefficient 1.
    pub target: GenId,
}

/// A finite window of `Hom(f, g)` in the functor category: the assembled
/// complex, its basis dictionary, and per-degree stability flags.
#[derive(Debug, Clone)]
pub struct HomComplexWindow {
    pub f: AInfFunctor,
    pub g: AInfFunctor,
    pub complex: ComplexPresentation,
    pub slots: BTreeMap<i64, Vec<BasisSlot>>,
    pub stable: BTreeMap<i64, bool>,
    pub arity_max: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HomComplexError {
    /// Homs reach positive degrees, so no arity bound can be derived; an
    /// explicit bound is required.
    UnboundedArity,
    Mismatch,
}

impl core::fmt::Display for HomComplexError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            HomComplexError::UnboundedArity => {
                write!(f, "homs reach positive degrees; pass an explicit arity bound")
            }
            HomComplexError::Mismatch => write!(f, "functors do not share categories"),
        }
    }
}

/// Degree support `(a, b)` over both categories, `None` when all homs
/// vanish.
fn joint_degree_range(a: &AInfPresentation, b: &AInfPresentation) -> Option<(i64, i64)> {
    match (a.quiver().degree_range(), b.quiver().degree_range()) {
        (None, r) | (r, None) => r,
        (Some((al, ah)), Some((bl, bh))) => Some((al.min(bl), ah.max(bh))),
    }
}

/// The largest arity contributing to the degree-`d` slice when homs are
/// concentrated in `[a, b]` with `b <= 0`: a length-`n` suspended word has
/// degree at most `n(b - 1)`, and a component of suspended degree `d - 1`
/// needs word degree at least `a - d`, so `n <= (d - a) / (1 - b)`.
pub fn stable_arity_bound(d: i64, a: i64, b: i64) -> usize {
    debug_assert!(b <= 0);
    let num = d - a;
    if num < 0 {
        return 0;
    }
    (num / (1 - b)) as usize
}

/// Assembles the hom-complex window of `Hom(f, g)` over `degree_window`.
/// When every hom degree is nonpositive the arity bound is derived
/// automatically; otherwise it must be given.
pub fn hom_complex(
    f: &AInfFunctor,
    g: &AInfFunctor,
    degree_window: (i64, i64),
    arity_max: Option<usize>,
) -> Result<HomComplexWindow, HomComplexError> {
    if !functors_parallel(f, g) {
        return Err(HomComplexError::Mismatch);
    }
    let a = f.source();
    let b = f.target();
    let field = a.field();
    let (lo, hi) = degree_window;
    assert!(lo <= hi, "empty degree window");
    let range = joint_degree_range(a, b);
    let auto = match range {
        None => Some(0),
        Some((ra, rb)) if rb <= 0 => Some(stable_arity_bound(hi, ra, rb)),
        _ => None,
    };
    let arity_max = match (auto, arity_max) {
        (_, Some(n)) => n,
        (Some(n), None) => n,
        (None, None) => return Err(HomComplexError::UnboundedArity),
    };

    let mut slots: BTreeMap<i64, Vec<BasisSlot>> = BTreeMap::new();
    let mut spaces: BTreeMap<i64, Vec<String>> = BTreeMap::new();
    for d in lo..=hi {
        let mut list = Vec::new();
        for n in 0..=arity_max {
            let words: Vec<Word> = if n == 0 {
                (0..a.quiver().object_count()).map(|x| Word::empty(ObjId(x))).collect()
            } else {
                a.quiver().words(n)
            };
            for w in words {
                let (fx, gy) = (f.map_object(w.source()), g.map_object(w.target()));
                let tdeg = w.degree() + d - n as i64;
                let hom = b.quiver().hom(fx, gy);
                for idx in 0..hom.dim(tdeg) {
                    list.push(BasisSlot {
                        arity: n,
                        word: w.clone(),
                        target: GenId { src: fx.0, tgt: gy.0, deg: tdeg, idx },
                    });
                }
            }
        }
        let labels = list
            .iter()
            .map(|s| {
                alloc::format!(
                    "n{}:{}->{}",
                    s.arity,
                    s.word.label(a.quiver()),
                    b.quiver().label(s.target)
                )
            })
            .collect();
        spaces.insert(d, labels);
        slots.insert(d, list);
    }

    let mut stable = BTreeMap::new();
    for d in lo..=hi {
        let s = match range {
            None => true,
            Some((ra, rb)) if rb <= 0 => stable_arity_bound(d, ra, rb) <= arity_max,
            _ => false,
        };
        stable.insert(d, s);
    }

    let mut diffs: BTreeMap<i64, Matrix> = BTreeMap::new();
    for d in lo..hi {
        let cols = &slots[&d];
        let rows = &slots[&(d + 1)];
        let mut m = Matrix::zero(field, rows.len(), cols.len());
        for (j, slot) in cols.iter().enumerate() {
            let mut r = PreNatTransform::zero(f, g, d, arity_max);
            set_slot(&mut r, slot, field.one());
            let (dr, _) = m1(&r);
            for (i, rslot) in rows.iter().enumerate() {
                let coeff = slot_coeff(&dr, rslot);
                if !coeff.is_zero() {
                    m.set(i, j, coeff);
                }
            }
        }
        diffs.insert(d, m);
    }
    let complex = ComplexPresentation::new(field, lo, hi, spaces, diffs)
        .expect("hom-complex differential squares to zero");
    Ok(HomComplexWindow { f: f.clone(), g: g.clone(), complex, slots, stable, arity_max })
}

fn set_slot(r: &mut PreNatTransform, slot: &BasisSlot, c: Scalar) {
    if slot.arity == 0 {
        let mut v = r.at_object(slot.word.source()).clone();
        v.add_term(slot.target, c);
        r.set_at_object(slot.word.source(), v);
    } else {
        let mut v = r.comp(&slot.word);
        v.add_term(slot.target, c);
        let n = slot.arity;
        let w = slot.word.clone();
        if v.is_zero() {
            r.comps[n - 1].remove(&w);
        } else {
            r.comps[n - 1].insert(w, v);
        }
    }
}

fn slot_coeff(r: &PreNatTransform, slot: &BasisSlot) -> Scalar {
    let v = if slot.arity == 0 { r.at_object(slot.word.source()) } else { &r.comps[slot.arity - 1].get(&slot.word).cloned().unwrap_or_default() };
    v.coeff(&slot.target).cloned().unwrap_or_else(|| r.f.source().field().zero())
}

impl HomComplexWindow {
    /// Coordinates of a transform in the degree-`d` slot basis.
    pub fn coords(&self, r: &PreNatTransform) -> Vec<Scalar> {
        let d = r.degree();
        let field = self.f.source().field();
        self.slots
            .get(&d)
            .map(|list| list.iter().map(|s| slot_coeff(r, s)).collect())
            .unwrap_or_else(|| {
                let _ = field;
                Vec::new()
            })
    }

    /// The transform with the given coordinates in degree `d`.
    pub fn transform(&self, d: i64, coords: &[Scalar]) -> PreNatTransform {
        let list = &self.slots[&d];
        assert_eq!(coords.len(), list.len());
        let mut r = PreNatTransform::zero(&self.f, &self.g, d, self.arity_max);
        for (slot, c) in list.iter().zip(coords) {
            if !c.is_zero() {
                set_slot(&mut r, slot, c.clone());
            }
        }
        r
    }

    pub fn dimension(&self, d: i64) -> usize {
        self.slots.get(&d).map_or(0, Vec::len)
    }

    pub fn is_stable(&self, d: i64) -> bool {
        *self.stable.get(&d).unwrap_or(&false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::PresentationBuilder;
    use crate::scalar::FieldSpec;
    use alloc::sync::Arc;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn ground_field() -> Arc<AInfPresentation> {
        let mut b = PresentationBuilder::new(Q, alloc::vec!["*".into()], 4);
        let one = b.gen(0, 0, 0, "1");
        b.unit_gen(0, one);
        b.op1(&[one, one], one);
        b.build().unwrap()
    }

    fn dual_numbers() -> Arc<AInfPresentation> {
        let mut b = PresentationBuilder::new(Q, alloc::vec!["*".into()], 4);
        let one = b.gen(0, 0, 0, "1");
        let e = b.gen(0, 0, 0, "e");
        b.unit_gen(0, one);
        b.op1(&[one, one], one);
        b.op1(&[one, e], e);
        b.op1(&[e, one], e);
        b.build().unwrap()
    }

    fn random_transform(
        w: &HomComplexWindow,
        d: i64,
        rng: &mut ChaCha8Rng,
    ) -> PreNatTransform {
        let dim = w.dimension(d);
        let coords: Vec<Scalar> =
            (0..dim).map(|_| Q.from_integer(rng.gen_range(-3..=3))).collect();
        w.transform(d, &coords)
    }

    #[test]
    fn identity_transform_is_closed() {
        for a in [ground_field(), dual_numbers()] {
            let id = AInfFunctor::identity(a);
            let r = PreNatTransform::identity(&id, 4);
            let (dr, truncated) = m1(&r);
            assert!(dr.is_zero(), "unit axioms kill every term");
            assert!(!truncated);
        }
    }

    #[test]
    fn scalar_transform_over_ground_field_is_central() {
        let a = ground_field();
        let id = AInfFunctor::identity(a.clone());
        let mut r = PreNatTransform::zero(&id, &id, 0, 3);
        r.set_at_object(ObjId(0), LinComb::single(a.quiver().generators()[0], Q.from_integer(5)));
        let (dr, _) = m1(&r);
        assert!(dr.is_zero(), "c·a - a·c vanishes over a commutative ground field");
    }

    #[test]
    fn m1_squares_to_zero_on_random_transforms() {
        let a = dual_numbers();
        let id = AInfFunctor::identity(a);
        let w = hom_complex(&id, &id, (-3, 3), Some(4)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for d in -2..=2 {
            for _ in 0..3 {
                let r = random_transform(&w, d, &mut rng);
                let (dr, _) = m1(&r);
                let (ddr, _) = m1(&dr);
                assert!(ddr.is_zero(), "degree {d}");
            }
        }
    }

    #[test]
    fn leibniz_holds_on_random_transforms() {
        let a = dual_numbers();
        let id = AInfFunctor::identity(a);
        let w = hom_complex(&id, &id, (-2, 3), Some(3)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (d1, d2) in [(0, 0), (0, 1), (1, 1), (-1, 1), (2, 0)] {
            let r1 = random_transform(&w, d1, &mut rng);
            let r2 = random_transform(&w, d2, &mut rng);
            let (p, _) = m2(&r1, &r2).unwrap();
            let (mut defect, _) = m1(&p);
            let (dr1, _) = m1(&r1);
            let (t1, _) = m2(&dr1, &r2).unwrap();
            defect.add_scaled(&t1, &(-&Q.one()));
            let (dr2, _) = m1(&r2);
            let (t2, _) = m2(&r1, &dr2).unwrap();
            let sign = if d1.rem_euclid(2) == 0 { -&Q.one() } else { Q.one() };
            defect.add_scaled(&t2, &sign);
            assert!(defect.is_zero(), "degrees ({d1}, {d2})");
        }
    }

    #[test]
    fn m2_with_identity_transform_collapses() {
        let a = dual_numbers();
        let id = AInfFunctor::identity(a);
        let w = hom_complex(&id, &id, (0, 2), Some(3)).unwrap();
        let one = PreNatTransform::identity(&id, 3);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for d in 0..=2 {
            let r = random_transform(&w, d, &mut rng);
            let (right, _) = m2(&r, &one).unwrap();
            let mut defect = right.clone();
            let mut neg = r.clone();
            neg.negate();
            defect.add_scaled(&neg, &Q.one());
            assert!(defect.is_zero(), "right unit collapse at degree {d}");
            let (left, _) = m2(&one, &r).unwrap();
            let mut defect = left;
            defect.add_scaled(&neg, &Q.one());
            assert!(defect.is_zero(), "left unit collapse at degree {d}");
        }
    }

    #[test]
    fn arity_zero_composition_is_target_composition() {
        let a = dual_numbers();
        let id = AInfFunctor::identity(a.clone());
        let e = a.quiver().generators()[1];
        let mut r1 = PreNatTransform::zero(&id, &id, 0, 2);
        r1.set_at_object(ObjId(0), LinComb::single(e, Q.one()));
        let mut r2 = PreNatTransform::zero(&id, &id, 0, 2);
        r2.set_at_object(ObjId(0), LinComb::single(a.quiver().generators()[0], Q.from_integer(2)));
        let (p, _) = m2(&r1, &r2).unwrap();
        // Path-order composite of the two constants: e then 2·1 = 2e.
        assert_eq!(p.at_object(ObjId(0)), &LinComb::single(e, Q.from_integer(2)));
    }

    #[test]
    fn hom_complex_dimensions_over_ground_field() {
        let a = ground_field();
        let id = AInfFunctor::identity(a);
        let w = hom_complex(&id, &id, (-2, 4), None).unwrap();
        for d in -2..=4 {
            let expected = if d >= 0 { 1 } else { 0 };
            assert_eq!(w.dimension(d), expected, "degree {d}");
            assert!(w.is_stable(d));
        }
    }

    #[test]
    fn hom_complex_dimensions_over_dual_numbers() {
        let a = dual_numbers();
        let id = AInfFunctor::identity(a);
        let w = hom_complex(&id, &id, (0, 3), None).unwrap();
        for d in 0..=3 {
            assert_eq!(w.dimension(d), 1 << (d + 1), "degree {d}");
        }
    }

    #[test]
    fn unbounded_arity_requires_explicit_cap() {
        // A hom in positive degree defeats the automatic bound.
        let mut b = PresentationBuilder::new(Q, alloc::vec!["*".into()], 2);
        let one = b.gen(0, 0, 0, "1");
        let t = b.gen(0, 0, 1, "t");
        b.unit_gen(0, one);
        b.op1(&[one, one], one);
        b.op1(&[one, t], t);
        b.op1(&[t, one], t);
        let a = b.build().unwrap();
        let id = AInfFunctor::identity(a);
        assert!(matches!(
            hom_complex(&id, &id, (0, 1), None),
            Err(HomComplexError::UnboundedArity)
        ));
        let w = hom_complex(&id, &id, (0, 1), Some(3)).unwrap();
        assert!(!w.is_stable(0));
    }
}
