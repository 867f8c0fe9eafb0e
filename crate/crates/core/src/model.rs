//! Weak-equivalence and fibration predicates for dg-functors.
//!
//! A dg-functor is a weak equivalence when every hom map is a
//! quasi-isomorphism and the induced functor on homotopy categories is
//! essentially surjective; it is a fibration when every hom map is
//! surjective in every degree and homotopy isomorphisms out of an image
//! object lift. Identity functors satisfy both.
//!
//! Invertibility modulo exact terms is decided by one linear solve: for a
//! closed degree-0 element `u : x -> y`, search `(v, h1, h2)` with
//! `u ∘ v - 1 = m1(h1)` and `v ∘ u - 1 = m1(h2)`. Essential surjectivity
//! searches candidate cocycles over the `H^0` basis of each hom space plus
//! the all-ones combination of that basis, first-in-basis order; this
//! bounded search is exact on every corpus example but is a search, not a
//! decision procedure, over infinite fields.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::category::{AInfPresentation, CategoryError};
use crate::complex::induced_on_cohomology;
use crate::functor::AInfFunctor;
use crate::graded::{GenId, LinComb, ObjId};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

/// Outcome of a model-category predicate, with a human-readable witness
/// for the decisive condition.
#[derive(Debug, Clone)]
pub struct PredicateReport {
    pub holds: bool,
    pub witness: String,
}

/// Finds a two-sided inverse of `u : x -> y` modulo exact terms, i.e. a
/// closed degree-0 `v` with `u ∘ v` and `v ∘ u` equal to the units up to
/// boundaries. `u` must be a closed degree-0 combination.
pub fn h0_inverse(a: &AInfPresentation, x: ObjId, y: ObjId, u: &LinComb) -> Option<LinComb> {
    let field = a.field();
    let hom_yx = a.quiver().hom(y, x);
    let hom_xx = a.quiver().hom(x, x);
    let hom_yy = a.quiver().hom(y, y);
    let v_gens: Vec<GenId> =
        (0..hom_yx.dim(0)).map(|idx| GenId { src: y.0, tgt: x.0, deg: 0, idx }).collect();
    let h1_gens: Vec<GenId> =
        (0..hom_xx.dim(-1)).map(|idx| GenId { src: x.0, tgt: x.0, deg: -1, idx }).collect();
    let h2_gens: Vec<GenId> =
        (0..hom_yy.dim(-1)).map(|idx| GenId { src: y.0, tgt: y.0, deg: -1, idx }).collect();
    let rows_top = hom_xx.dim(0);
    let rows_bot = hom_yy.dim(0);
    let rows = rows_top + rows_bot;

    let stack = |top: &LinComb, bot: &LinComb| -> Vec<Scalar> {
        let mut col = a.coords_of(x, x, 0, top);
        col.extend(a.coords_of(y, y, 0, bot));
        col
    };

    let mut cols: Vec<Vec<Scalar>> = Vec::new();
    for g in &v_gens {
        let v = LinComb::single(*g, field.one());
        // u ∘ v : x -> x is "u then v" in path order; v ∘ u : y -> y.
        cols.push(stack(&a.compose2(u, &v), &a.compose2(&v, u)));
    }
    for g in &h1_gens {
        let mut d = a.m1(&LinComb::single(*g, field.one()));
        d.negate();
        cols.push(stack(&d, &LinComb::zero()));
    }
    for g in &h2_gens {
        let mut d = a.m1(&LinComb::single(*g, field.one()));
        d.negate();
        cols.push(stack(&LinComb::zero(), &d));
    }
    let system = Matrix::from_columns(field, rows, cols);
    let rhs = stack(a.unit(x), a.unit(y));
    let sol = system.solve(&rhs)?;
    let mut v = LinComb::zero();
    for (g, c) in v_gens.iter().zip(&sol) {
        v.add_term(*g, c.clone());
    }
    Some(v)
}

/// Candidate cocycles searched when an invertible class is needed: the
/// `H^0` basis representatives plus their sum, first-in-basis order.
fn invertibility_candidates(a: &AInfPresentation, x: ObjId, y: ObjId) -> Vec<LinComb> {
    let basis = a.h0_basis(x, y);
    let mut cands = basis.clone();
    if basis.len() > 1 {
        let mut sum = LinComb::zero();
        for b in &basis {
            sum.add(b);
        }
        cands.push(sum);
    }
    cands
}

fn find_h0_isomorphism(a: &AInfPresentation, x: ObjId, y: ObjId) -> Option<(LinComb, LinComb)> {
    for u in invertibility_candidates(a, x, y) {
        if let Some(v) = h0_inverse(a, x, y, &u) {
            return Some((u, v));
        }
    }
    None
}

/// The matrix of `f_1` on one hom pair in one degree.
fn hom_map_block(f: &AInfFunctor, x: ObjId, y: ObjId, d: i64) -> Matrix {
    let field = f.source().field();
    let (fx, fy) = (f.map_object(x), f.map_object(y));
    let src_dim = f.source().quiver().hom(x, y).dim(d);
    let tgt_dim = f.target().quiver().hom(fx, fy).dim(d);
    let mut m = Matrix::zero(field, tgt_dim, src_dim);
    for idx in 0..src_dim {
        let g = GenId { src: x.0, tgt: y.0, deg: d, idx };
        let image = f.apply1(&LinComb::single(g, field.one()));
        for (h, c) in image.terms() {
            debug_assert_eq!(h.deg, d);
            m.set(h.idx, idx, c.clone());
        }
    }
    m
}

/// The hom complex of one pair over an explicitly chosen window.
pub fn pair_complex_over(
    a: &AInfPresentation,
    x: ObjId,
    y: ObjId,
    lo: i64,
    hi: i64,
) -> crate::complex::ComplexPresentation {
    use alloc::collections::BTreeMap;
    let field = a.field();
    let hom = a.quiver().hom(x, y);
    let mut spaces: BTreeMap<i64, Vec<String>> = BTreeMap::new();
    for d in lo..=hi {
        spaces.insert(d, hom.labels(d).to_vec());
    }
    let mut diffs: BTreeMap<i64, Matrix> = BTreeMap::new();
    for d in lo..hi {
        let mut m = Matrix::zero(field, hom.dim(d + 1), hom.dim(d));
        for idx in 0..hom.dim(d) {
            let g = GenId { src: x.0, tgt: y.0, deg: d, idx };
            let image = a.m1(&LinComb::single(g, field.one()));
            for (h, c) in image.terms() {
                m.set(h.idx, idx, c.clone());
            }
        }
        diffs.insert(d, m);
    }
    crate::complex::ComplexPresentation::new(field, lo, hi, spaces, diffs)
        .expect("m1 squares to zero")
}

fn union_window(f: &AInfFunctor, x: ObjId, y: ObjId) -> (i64, i64) {
    let sc = f.source().quiver().hom(x, y);
    let tc = f.target().quiver().hom(f.map_object(x), f.map_object(y));
    let mut lo = 0;
    let mut hi = 0;
    for d in sc.degrees().chain(tc.degrees()) {
        lo = lo.min(d);
        hi = hi.max(d + 1);
    }
    (lo, hi)
}

/// Weak-equivalence predicate: all hom maps are quasi-isomorphisms and
/// `H^0` of the functor is essentially surjective.
pub fn is_weak_equivalence(f: &AInfFunctor) -> Result<PredicateReport, CategoryError> {
    f.source().require_dg()?;
    f.target().require_dg()?;
    let src = f.source();
    let tgt = f.target();

    for x in 0..src.quiver().object_count() {
        for y in 0..src.quiver().object_count() {
            let (xo, yo) = (ObjId(x), ObjId(y));
            let (lo, hi) = union_window(f, xo, yo);
            let scw = pair_complex_over(src, xo, yo, lo, hi);
            let tcw = pair_complex_over(tgt, f.map_object(xo), f.map_object(yo), lo, hi);
            for d in lo..=hi {
                let (m, sh, th) =
                    induced_on_cohomology(&scw, &tcw, |deg| hom_map_block(f, xo, yo, deg), d)?;
                if sh.dimension != th.dimension || m.rank() != sh.dimension {
                    return Ok(PredicateReport {
                        holds: false,
                        witness: format!(
                            "hom ({}, {}) degree {d}: H dims {} vs {}, induced rank {}",
                            src.quiver().objects()[x],
                            src.quiver().objects()[y],
                            sh.dimension,
                            th.dimension,
                            m.rank()
                        ),
                    });
                }
            }
        }
    }

    let mut witness = String::from("all hom maps are quasi-isomorphisms");
    for z in 0..tgt.quiver().object_count() {
        let zo = ObjId(z);
        let mut hit = None;
        for x in 0..src.quiver().object_count() {
            let fx = f.map_object(ObjId(x));
            if let Some((u, _)) = find_h0_isomorphism(tgt, fx, zo) {
                hit = Some((x, u));
                break;
            }
        }
        match hit {
            Some((x, u)) => {
                witness.push_str(&format!(
                    "; {} is isomorphic to the image of {} via {}",
                    tgt.quiver().objects()[z],
                    src.quiver().objects()[x],
                    u.format(tgt.quiver())
                ));
            }
            None => {
                return Ok(PredicateReport {
                    holds: false,
                    witness: format!(
                        "no image object is H0-isomorphic to {}",
                        tgt.quiver().objects()[z]
                    ),
                });
            }
        }
    }
    Ok(PredicateReport { holds: true, witness })
}

/// Fibration predicate: hom maps surjective in every degree, and homotopy
/// isomorphisms out of image objects lift to homotopy isomorphisms.
pub fn is_fibration(f: &AInfFunctor) -> Result<PredicateReport, CategoryError> {
    f.source().require_dg()?;
    f.target().require_dg()?;
    let src = f.source();
    let tgt = f.target();

    for x in 0..src.quiver().object_count() {
        for y in 0..src.quiver().object_count() {
            let (xo, yo) = (ObjId(x), ObjId(y));
            let (fx, fy) = (f.map_object(xo), f.map_object(yo));
            let th = tgt.quiver().hom(fx, fy);
            for d in th.degrees() {
                let m = hom_map_block(f, xo, yo, d);
                if m.rank() < th.dim(d) {
                    return Ok(PredicateReport {
                        holds: false,
                        witness: format!(
                            "hom ({}, {}) not surjective in degree {d}: rank {} < {}",
                            src.quiver().objects()[x],
                            src.quiver().objects()[y],
                            m.rank(),
                            th.dim(d)
                        ),
                    });
                }
            }
        }
    }

    // Lifting: for each source object x and target object z, every
    // invertible candidate class of H^0(Hom(f(x), z)) must be the image of
    // an invertible class out of x.
    for x in 0..src.quiver().object_count() {
        let xo = ObjId(x);
        let fx = f.map_object(xo);
        for z in 0..tgt.quiver().object_count() {
            let zo = ObjId(z);
            for v in invertibility_candidates(tgt, fx, zo) {
                if h0_inverse(tgt, fx, zo, &v).is_none() {
                    continue;
                }
                if !has_invertible_lift(f, xo, zo, &v) {
                    return Ok(PredicateReport {
                        holds: false,
                        witness: format!(
                            "isomorphism {} out of {} has no invertible lift at {}",
                            v.format(tgt.quiver()),
                            tgt.quiver().objects()[fx.0],
                            src.quiver().objects()[x]
                        ),
                    });
                }
            }
        }
    }
    Ok(PredicateReport { holds: true, witness: String::from("epi on homs; isomorphisms lift") })
}

fn has_invertible_lift(f: &AInfFunctor, x: ObjId, z: ObjId, v: &LinComb) -> bool {
    let src = f.source();
    let tgt = f.target();
    let field = src.field();
    for y in 0..src.quiver().object_count() {
        let yo = ObjId(y);
        if f.map_object(yo) != z {
            continue;
        }
        // Solve f1(u) = v + boundary with u a closed degree-0 element,
        // then scan the affine solution space for an invertible class.
        let hom = src.quiver().hom(x, yo);
        let u_gens: Vec<GenId> =
            (0..hom.dim(0)).map(|idx| GenId { src: x.0, tgt: yo.0, deg: 0, idx }).collect();
        let fx = f.map_object(x);
        let thom = tgt.quiver().hom(fx, z);
        let rows_img = thom.dim(0);
        let rows_closed = hom.dim(1);
        let h_gens: Vec<GenId> =
            (0..thom.dim(-1)).map(|idx| GenId { src: fx.0, tgt: z.0, deg: -1, idx }).collect();
        let mut cols: Vec<Vec<Scalar>> = Vec::new();
        for g in &u_gens {
            let gu = LinComb::single(*g, field.one());
            let mut col = tgt.coords_of(fx, z, 0, &f.apply1(&gu));
            col.extend(src.coords_of(x, yo, 1, &src.m1(&gu)));
            cols.push(col);
        }
        for g in &h_gens {
            let mut d = tgt.m1(&LinComb::single(*g, field.one()));
            d.negate();
            let mut col = tgt.coords_of(fx, z, 0, &d);
            col.extend(alloc::vec![field.zero(); rows_closed]);
            cols.push(col);
        }
        let system = Matrix::from_columns(field, rows_img + rows_closed, cols);
        let mut rhs = tgt.coords_of(fx, z, 0, v);
        rhs.extend(alloc::vec![field.zero(); rows_closed]);
        let Some(sol) = system.solve(&rhs) else {
            continue;
        };
        let particular: LinComb = {
            let mut u = LinComb::zero();
            for (g, c) in u_gens.iter().zip(&sol) {
                u.add_term(*g, c.clone());
            }
            u
        };
        let mut tries = alloc::vec![particular.clone()];
        for k in system.kernel_basis() {
            let mut u = particular.clone();
            for (g, c) in u_gens.iter().zip(&k) {
                u.add_term(*g, c.clone());
            }
            tries.push(u);
        }
        for u in tries {
            if h0_inverse(src, x, yo, &u).is_some() {
                return true;
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::PresentationBuilder;
    use crate::functor::AInfFunctor;
    use crate::scalar::FieldSpec;
    use alloc::collections::BTreeMap;
    use alloc::sync::Arc;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn ground_field() -> Arc<AInfPresentation> {
        let mut b = PresentationBuilder::new(Q, alloc::vec!["*".into()], 2);
        let one = b.gen(0, 0, 0, "1");
        b.unit_gen(0, one);
        b.op1(&[one, one], one);
        b.build().unwrap()
    }

    fn dual_numbers() -> Arc<AInfPresentation> {
        let mut b = PresentationBuilder::new(Q, alloc::vec!["*".into()], 2);
        let one = b.gen(0, 0, 0, "1");
        let e = b.gen(0, 0, 0, "e");
        b.unit_gen(0, one);
        b.op1(&[one, one], one);
        b.op1(&[one, e], e);
        b.op1(&[e, one], e);
        b.build().unwrap()
    }

    /// Two strictly isomorphic objects: Hom = K·u for all pairs and every
    /// composite is the corresponding basis arrow.
    fn two_iso() -> Arc<AInfPresentation> {
        let mut b = PresentationBuilder::new(Q, alloc::vec!["p".into(), "q".into()], 2);
        let mut gens = alloc::vec![];
        for s in 0..2usize {
            for t in 0..2usize {
                gens.push(b.gen(s, t, 0, &alloc::format!("u{s}{t}")));
            }
        }
        let at = |s: usize, t: usize| gens[s * 2 + t];
        b.unit_gen(0, at(0, 0));
        b.unit_gen(1, at(1, 1));
        for s in 0..2 {
            for m in 0..2 {
                for t in 0..2 {
                    b.op1(&[at(s, m), at(m, t)], at(s, t));
                }
            }
        }
        b.build().unwrap()
    }

    #[test]
    fn identity_is_weq_and_fibration() {
        for a in [ground_field(), dual_numbers(), two_iso()] {
            assert!(a.check_stasheff(1, 2).unwrap().passed);
            let id = AInfFunctor::identity(a);
            assert!(is_weak_equivalence(&id).unwrap().holds);
            assert!(is_fibration(&id).unwrap().holds);
        }
    }

    #[test]
    fn inclusion_into_two_iso_objects() {
        let e = two_iso();
        let mut b = PresentationBuilder::new(Q, alloc::vec!["p".into()], 2);
        let u = b.gen(0, 0, 0, "u00");
        b.unit_gen(0, u);
        b.op1(&[u, u], u);
        let sub = b.build().unwrap();
        let mut images = BTreeMap::new();
        images.insert(
            sub.quiver().generators()[0],
            LinComb::single(e.quiver().generators_of(ObjId(0), ObjId(0))[0], Q.one()),
        );
        let f = AInfFunctor::strict(sub, e, alloc::vec![0], images).unwrap();
        assert!(f.check(1, 2).unwrap().passed);
        // Weak equivalence: the other object is isomorphic to the image.
        assert!(is_weak_equivalence(&f).unwrap().holds);
        // Not a fibration: the isomorphism p -> q has no lift inside the
        // one-object source.
        let r = is_fibration(&f).unwrap();
        assert!(!r.holds, "witness: {}", r.witness);
    }

    #[test]
    fn unit_inclusion_into_dual_numbers_is_neither() {
        let k = ground_field();
        let d = dual_numbers();
        let mut images = BTreeMap::new();
        images.insert(
            k.quiver().generators()[0],
            LinComb::single(d.quiver().generators()[0], Q.one()),
        );
        let f = AInfFunctor::strict(k, d, alloc::vec![0], images).unwrap();
        assert!(f.check(1, 2).unwrap().passed);
        let w = is_weak_equivalence(&f).unwrap();
        assert!(!w.holds);
        assert!(w.witness.contains("degree 0"), "witness: {}", w.witness);
        assert!(!is_fibration(&f).unwrap().holds);
    }

    #[test]
    fn projection_of_two_iso_objects_is_weq_and_fibration() {
        let e = two_iso();
        let k = ground_field();
        let one = k.quiver().generators()[0];
        let mut images = BTreeMap::new();
        for g in e.quiver().generators() {
            images.insert(g, LinComb::single(one, Q.one()));
        }
        let f = AInfFunctor::strict(e, k, alloc::vec![0, 0], images).unwrap();
        assert!(f.check(1, 2).unwrap().passed);
        assert!(is_weak_equivalence(&f).unwrap().holds);
        assert!(is_fibration(&f).unwrap().holds);
    }

    #[test]
    fn non_dg_input_is_rejected() {
        // A presentation with a (harmless) arity-3 table entry is not dg.
        let mut b = PresentationBuilder::new(Q, alloc::vec!["*".into()], 3);
        let one = b.gen(0, 0, 0, "1");
        let u = b.gen(0, 0, -1, "u");
        let w = b.gen(0, 0, -4, "w");
        b.unit_gen(0, one);
        b.op1(&[one, one], one);
        b.op1(&[one, u], u);
        b.op1(&[u, one], u);
        b.op1(&[one, w], w);
        b.op1(&[w, one], w);
        b.op1(&[u, u, u], w);
        let a = b.build().unwrap();
        assert!(!a.is_dg());
        let id = AInfFunctor::identity(a);
        assert!(matches!(is_weak_equivalence(&id), Err(CategoryError::NotDg)));
    }
}
