//! Presentations of dg- and A-infinity categories.
//!
//! A presentation is a graded quiver with operation tables `m_k` (arity `k`,
//! degree `2 - k`) up to an arity bound, and a unit element per object.
//! dg-categories are the special case where every table of arity at least 3
//! is empty and `m_2` is strictly associative.
//!
//! Internally the tables are stored in *suspended* form `b_k`, obtained by
//! conjugating `m_k` with the shift; there every operation has degree `+1`
//! and the whole associativity tower reads
//!
//! ```text
//! sum over i + k + j = n of  b_(i+1+j) ∘ (1^i ⊗ b_k ⊗ 1^j)  =  0
//! ```
//!
//! with signs coming only from Koszul commutation during evaluation. The
//! involutive conversion between the two forms is [`suspend_table`] /
//! [`unsuspend_value`].

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::complex::{ComplexError, ComplexPresentation};
use crate::graded::{map_past_sign, suspension_sign, GenId, GradedQuiver, LinComb, ObjId, Word};
use crate::matrix::Matrix;
use crate::scalar::{FieldSpec, Scalar};

/// Operation table: path-ordered basis words of one arity to values in the
/// hom space spanned between the word's endpoints.
pub type OpTable = BTreeMap<Word, LinComb>;

#[derive(Debug, Clone)]
pub struct AInfPresentation {
    field: FieldSpec,
    quiver: GradedQuiver,
    arity_bound: usize,
    /// Suspended tables; `ops[k - 1]` is the arity-`k` operation.
    ops: Vec<OpTable>,
    /// Unit element per object, a degree-0 combination in `Hom(x, x)`.
    units: Vec<LinComb>,
    is_dg: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CategoryError {
    ArityOutOfRange { arity: usize, bound: usize },
    DegreeMismatch { arity: usize, word: String, expected: i64, found: i64 },
    BadEntry { arity: usize, word: String, reason: String },
    BadUnit { object: String, reason: String },
    NotDg,
    ObjectMismatch,
    Window(ComplexError),
}

impl fmt::Display for CategoryError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CategoryError::ArityOutOfRange { arity, bound } => {
                write!(f, "arity {arity} outside the verified bound {bound}")
            }
            CategoryError::DegreeMismatch { arity, word, expected, found } => write!(
                f,
                "arity-{arity} entry at {word}: value degree {found}, expected {expected}"
            ),
            CategoryError::BadEntry { arity, word, reason } => {
                write!(f, "arity-{arity} entry at {word}: {reason}")
            }
            CategoryError::BadUnit { object, reason } => {
                write!(f, "unit of {object}: {reason}")
            }
            CategoryError::NotDg => write!(f, "operation requires a dg presentation"),
            CategoryError::ObjectMismatch => write!(f, "object sets or maps do not match"),
            CategoryError::Window(e) => write!(f, "{e}"),
        }
    }
}

impl From<ComplexError> for CategoryError {
    fn from(e: ComplexError) -> Self {
        CategoryError::Window(e)
    }
}

/// Rescales a plain table entry into its suspended form (the conversion is
/// an involution, so this also undoes itself).
pub fn suspend_table(word: &Word, value: &LinComb) -> LinComb {
    let sdegs: Vec<i64> = word.factors.iter().map(GenId::sdeg).collect();
    let sign = suspension_sign(&sdegs);
    let mut v = value.clone();
    if sign < 0 {
        v.negate();
    }
    v
}

/// Recovers the plain value of a suspended table entry.
pub fn unsuspend_value(word: &Word, value: &LinComb) -> LinComb {
    suspend_table(word, value)
}

/// Outcome of an identity check.
#[derive(Debug, Clone)]
pub struct CheckReport {
    pub passed: bool,
    /// Arity range actually verified.
    pub verified: (usize, usize),
    pub failure: Option<CheckFailure>,
}

#[derive(Debug, Clone)]
pub struct CheckFailure {
    pub arity: usize,
    /// Labels of the witnessing basis tuple.
    pub word: Vec<String>,
    /// Formatted nonzero defect.
    pub defect: String,
}

impl CheckReport {
    pub fn pass(lo: usize, hi: usize) -> Self {
        CheckReport { passed: true, verified: (lo, hi), failure: None }
    }

    pub fn fail(lo: usize, hi: usize, failure: CheckFailure) -> Self {
        CheckReport { passed: false, verified: (lo, hi), failure: Some(failure) }
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.failure {
            None => write!(f, "pass (arities {}..={})", self.verified.0, self.verified.1),
            Some(fail) => write!(
                f,
                "fail at arity {} on ({}): {}",
                fail.arity,
                fail.word.join(", "),
                fail.defect
            ),
        }
    }
}

impl AInfPresentation {
    /// Builds a presentation from plain operation tables (`m_k` of degree
    /// `2 - k` on path-ordered words).
    pub fn new(
        field: FieldSpec,
        quiver: GradedQuiver,
        arity_bound: usize,
        plain_ops: Vec<OpTable>,
        units: Vec<LinComb>,
    ) -> Result<Self, CategoryError> {
        assert!(arity_bound >= 2, "arity bound must be at least 2");
        assert!(plain_ops.len() <= arity_bound, "more tables than the arity bound");
        assert_eq!(units.len(), quiver.object_count(), "one unit per object");
        let mut ops: Vec<OpTable> = alloc::vec![OpTable::new(); arity_bound];
        for (i, table) in plain_ops.into_iter().enumerate() {
            let k = i + 1;
            for (word, value) in table {
                if value.is_zero() {
                    continue;
                }
                validate_entry(&quiver, k, &word, &value)?;
                ops[i].insert(word.clone(), suspend_table(&word, &value));
            }
        }
        for (x, unit) in units.iter().enumerate() {
            for (g, _) in unit.terms() {
                if g.src != x || g.tgt != x || g.deg != 0 {
                    return Err(CategoryError::BadUnit {
                        object: quiver.objects()[x].clone(),
                        reason: "unit must be a degree-0 element of Hom(x, x)".to_string(),
                    });
                }
            }
        }
        let is_dg = ops.iter().skip(2).all(BTreeMap::is_empty);
        Ok(AInfPresentation { field, quiver, arity_bound, ops, units, is_dg })
    }

    /// The presentation with no objects.
    pub fn empty(field: FieldSpec) -> Self {
        AInfPresentation {
            field,
            quiver: GradedQuiver::new(Vec::new()),
            arity_bound: 2,
            ops: alloc::vec![OpTable::new(); 2],
            units: Vec::new(),
            is_dg: true,
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn quiver(&self) -> &GradedQuiver {
        &self.quiver
    }

    pub fn arity_bound(&self) -> usize {
        self.arity_bound
    }

    pub fn unit(&self, x: ObjId) -> &LinComb {
        &self.units[x.0]
    }

    pub fn units(&self) -> &[LinComb] {
        &self.units
    }

    /// True when every table of arity at least 3 is empty. Strict
    /// associativity is a consequence of `check_stasheff` in that case.
    pub fn is_dg(&self) -> bool {
        self.is_dg
    }

    pub fn require_dg(&self) -> Result<(), CategoryError> {
        if self.is_dg {
            Ok(())
        } else {
            Err(CategoryError::NotDg)
        }
    }

    /// The suspended operation on a basis word of its own length.
    pub fn b(&self, word: &Word) -> LinComb {
        let k = word.len();
        if k == 0 || k > self.arity_bound {
            return LinComb::zero();
        }
        self.ops[k - 1].get(word).cloned().unwrap_or_default()
    }

    /// The plain operation `m_k` on a basis word, `k = word.len()`.
    pub fn op_plain(&self, word: &Word) -> LinComb {
        unsuspend_value(word, &self.b(word))
    }

    /// The suspended arity-`k` table (words of length `k`).
    pub fn table(&self, k: usize) -> &OpTable {
        &self.ops[k - 1]
    }

    /// Differential on a combination (arity-1 operation, plain form; the
    /// suspended and plain arity-1 operations agree).
    pub fn m1(&self, v: &LinComb) -> LinComb {
        let mut out = LinComb::zero();
        for (g, c) in v.terms() {
            out.add_scaled(&self.b(&Word::from_factors(alloc::vec![*g])), c);
        }
        out
    }

    /// Path-ordered binary composition: `compose2(a, b)` is "a, then b",
    /// i.e. the composite of `a: x -> y` with `b: y -> z`.
    pub fn compose2(&self, first: &LinComb, second: &LinComb) -> LinComb {
        let mut out = LinComb::zero();
        for (g1, c1) in first.terms() {
            for (g2, c2) in second.terms() {
                if g1.tgt != g2.src {
                    continue;
                }
                let w = Word::from_factors(alloc::vec![*g1, *g2]);
                let val = self.op_plain(&w);
                out.add_scaled(&val, &(c1 * c2));
            }
        }
        out
    }

    /// Binary composition in function order: `m2(u, v) = u ∘ v`, the second
    /// argument applied first along the path.
    pub fn m2(&self, u: &LinComb, v: &LinComb) -> LinComb {
        self.compose2(v, u)
    }

    /// Applies `1^i ⊗ b_k ⊗ 1^j` to a basis word (suspended level): the
    /// Koszul cost is the degree-1 operation passing the first `i` factors.
    pub fn apply_inner(&self, w: &Word, i: usize, k: usize) -> Vec<(Scalar, Word)> {
        debug_assert!(i + k <= w.len() && k >= 1);
        let sdegs: Vec<i64> = w.factors[..i].iter().map(GenId::sdeg).collect();
        let sign = map_past_sign(1, &sdegs);
        let inner = self.b(&Word::from_factors(w.factors[i..i + k].to_vec()));
        let mut out = Vec::new();
        for (g, c) in inner.terms() {
            let mut factors = Vec::with_capacity(w.len() - k + 1);
            factors.extend_from_slice(&w.factors[..i]);
            factors.push(*g);
            factors.extend_from_slice(&w.factors[i + k..]);
            let coeff =
                if sign < 0 { -c } else { c.clone() };
            out.push((coeff, Word::from_factors(factors)));
        }
        out
    }

    /// The full associativity-tower defect on one basis word; exact zero
    /// means the identity of that arity holds there.
    pub fn stasheff_defect(&self, w: &Word) -> LinComb {
        let n = w.len();
        let mut defect = LinComb::zero();
        for i in 0..n {
            for k in 1..=(n - i) {
                for (c, inner) in self.apply_inner(w, i, k) {
                    defect.add_scaled(&self.b(&inner), &c);
                }
            }
        }
        defect
    }

    /// Verifies the defining identities on every composable basis tuple of
    /// each arity in `lo..=hi`; exact zero required.
    pub fn check_stasheff(&self, lo: usize, hi: usize) -> Result<CheckReport, CategoryError> {
        if lo < 1 || hi > self.arity_bound || lo > hi {
            return Err(CategoryError::ArityOutOfRange { arity: hi.max(lo), bound: self.arity_bound });
        }
        for n in lo..=hi {
            for w in self.quiver.words(n) {
                let defect = self.stasheff_defect(&w);
                if !defect.is_zero() {
                    return Ok(CheckReport::fail(
                        lo,
                        hi,
                        CheckFailure {
                            arity: n,
                            word: w.factors.iter().map(|g| self.quiver.label(*g).to_string()).collect(),
                            defect: defect.format(&self.quiver),
                        },
                    ));
                }
            }
        }
        Ok(CheckReport::pass(lo, hi))
    }

    /// Verifies `m_1(unit) = 0`, the two-sided unit law for `m_2` and the
    /// vanishing of higher operations on units.
    pub fn check_unitality(&self) -> CheckReport {
        let hi = self.arity_bound;
        let fail = |arity: usize, word: Vec<String>, defect: String| {
            CheckReport::fail(1, hi, CheckFailure { arity, word, defect })
        };
        for x in 0..self.quiver.object_count() {
            let unit = &self.units[x];
            let du = self.m1(unit);
            if !du.is_zero() {
                return fail(1, alloc::vec![alloc::format!("unit {}", self.quiver.objects()[x])], du.format(&self.quiver));
            }
        }
        for g in self.quiver.generators() {
            let v = LinComb::single(g, self.field.one());
            let left = self.compose2(&self.units[g.src], &v);
            let right = self.compose2(&v, &self.units[g.tgt]);
            for (side, got) in [("left", left), ("right", right)] {
                let mut defect = got;
                defect.add_scaled(&v, &(-&self.field.one()));
                if !defect.is_zero() {
                    return fail(
                        2,
                        alloc::vec![alloc::format!("{side} unit at {}", self.quiver.label(g))],
                        defect.format(&self.quiver),
                    );
                }
            }
        }
        // Higher operations must vanish on any word containing a unit.
        for k in 3..=self.arity_bound {
            for w in self.quiver.words(k - 1) {
                let path = w.path();
                for slot in 0..=w.len() {
                    let unit = &self.units[path[slot].0];
                    let mut total = LinComb::zero();
                    for (gu, cu) in unit.terms() {
                        let mut factors = w.factors.clone();
                        factors.insert(slot, *gu);
                        total.add_scaled(&self.b(&Word::from_factors(factors)), cu);
                    }
                    if !total.is_zero() {
                        let mut labels: Vec<String> =
                            w.factors.iter().map(|g| self.quiver.label(*g).to_string()).collect();
                        labels.insert(slot, alloc::format!("unit {}", self.quiver.objects()[path[slot].0]));
                        return fail(k, labels, total.format(&self.quiver));
                    }
                }
            }
        }
        CheckReport::pass(1, self.arity_bound)
    }

    /// The cochain complex of one hom space, with `m_1` as differential,
    /// over the full (finite) degree support.
    pub fn pair_complex(&self, x: ObjId, y: ObjId) -> ComplexPresentation {
        let hom = self.quiver.hom(x, y);
        let degs: Vec<i64> = hom.degrees().collect();
        let (lo, hi) = match (degs.first(), degs.last()) {
            (Some(a), Some(b)) => (*a, *b + 1),
            _ => (0, 1),
        };
        let mut spaces: BTreeMap<i64, Vec<String>> = BTreeMap::new();
        for d in lo..=hi {
            spaces.insert(d, hom.labels(d).to_vec());
        }
        let mut diffs: BTreeMap<i64, Matrix> = BTreeMap::new();
        for d in lo..hi {
            let src: Vec<GenId> = (0..hom.dim(d)).map(|idx| GenId { src: x.0, tgt: y.0, deg: d, idx }).collect();
            let tgt_dim = hom.dim(d + 1);
            let mut m = Matrix::zero(self.field, tgt_dim, src.len());
            for (col, g) in src.iter().enumerate() {
                let image = self.m1(&LinComb::single(*g, self.field.one()));
                for (h, c) in image.terms() {
                    debug_assert_eq!(h.deg, d + 1);
                    m.set(h.idx, col, c.clone());
                }
            }
            diffs.insert(d, m);
        }
        ComplexPresentation::new(self.field, lo, hi, spaces, diffs)
            .expect("m1 squares to zero on a validated presentation")
    }

    /// Degree-0 cocycle representatives whose classes form a basis of
    /// `H^0(Hom(x, y))`, as combinations.
    pub fn h0_basis(&self, x: ObjId, y: ObjId) -> Vec<LinComb> {
        let complex = self.pair_complex(x, y);
        let (lo, hi) = complex.window();
        if 0 < lo || 0 > hi {
            return Vec::new();
        }
        let report = complex.cohomology(0).expect("degree 0 in window");
        report
            .representatives
            .iter()
            .map(|v| self.comb_from_coords(x, y, 0, v))
            .collect()
    }

    /// Turns degree-`d` coordinates of `Hom(x, y)` into a combination.
    pub fn comb_from_coords(&self, x: ObjId, y: ObjId, d: i64, coords: &[Scalar]) -> LinComb {
        let mut out = LinComb::zero();
        for (idx, c) in coords.iter().enumerate() {
            out.add_term(GenId { src: x.0, tgt: y.0, deg: d, idx }, c.clone());
        }
        out
    }

    /// Coordinates of a homogeneous degree-`d` combination of `Hom(x, y)`.
    pub fn coords_of(&self, x: ObjId, y: ObjId, d: i64, v: &LinComb) -> Vec<Scalar> {
        let dim = self.quiver.hom(x, y).dim(d);
        let mut coords = alloc::vec![self.field.zero(); dim];
        for (g, c) in v.terms() {
            assert!(g.src == x.0 && g.tgt == y.0 && g.deg == d, "inhomogeneous combination");
            coords[g.idx] = c.clone();
        }
        coords
    }

    /// The homotopy category: objects, `H^0` hom bases, and the induced
    /// composition table (path order), with well-definedness of the induced
    /// composition checked on the chosen representatives.
    pub fn h0(&self) -> H0Category {
        let n = self.quiver.object_count();
        let mut reps: BTreeMap<(usize, usize), Vec<LinComb>> = BTreeMap::new();
        let mut complexes: BTreeMap<(usize, usize), ComplexPresentation> = BTreeMap::new();
        for x in 0..n {
            for y in 0..n {
                reps.insert((x, y), self.h0_basis(ObjId(x), ObjId(y)));
                complexes.insert((x, y), self.pair_complex(ObjId(x), ObjId(y)));
            }
        }
        let mut composition = BTreeMap::new();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let fs = &reps[&(x, y)];
                    let gs = &reps[&(y, z)];
                    let mut table = Vec::new();
                    for f in fs {
                        let mut row = Vec::new();
                        for g in gs {
                            let comp = self.compose2(f, g);
                            let coords = self
                                .express_h0_class(ObjId(x), ObjId(z), &comp, &reps[&(x, z)], &complexes[&(x, z)])
                                .expect("composite of cocycles is a cocycle class");
                            row.push(coords);
                        }
                        table.push(row);
                    }
                    composition.insert((x, y, z), table);
                }
            }
        }
        let identities: Vec<Vec<Scalar>> = (0..n)
            .map(|x| {
                self.express_h0_class(ObjId(x), ObjId(x), &self.units[x], &reps[&(x, x)], &complexes[&(x, x)])
                    .expect("unit is closed")
            })
            .collect();
        H0Category {
            objects: self.quiver.objects().to_vec(),
            reps,
            composition,
            identities,
        }
    }

    /// Expresses a closed degree-0 combination in a given `H^0` basis,
    /// modulo boundaries. `None` when the value is not a cocycle class in
    /// the span (which cannot happen for chain-level composites).
    pub fn express_h0_class(
        &self,
        x: ObjId,
        y: ObjId,
        value: &LinComb,
        basis: &[LinComb],
        complex: &ComplexPresentation,
    ) -> Option<Vec<Scalar>> {
        let dim = self.quiver.hom(x, y).dim(0);
        let coords = self.coords_of(x, y, 0, value);
        let (lo, _) = complex.window();
        let rep_cols: Vec<Vec<Scalar>> =
            basis.iter().map(|b| self.coords_of(x, y, 0, b)).collect();
        let reps = Matrix::from_columns(self.field, dim, rep_cols);
        let boundary = if lo < 0 { complex.differential(-1) } else { Matrix::zero(self.field, dim, 0) };
        let solver = reps.hcat(&boundary);
        let sol = solver.solve(&coords)?;
        Some(sol[..basis.len()].to_vec())
    }
}

fn validate_entry(
    quiver: &GradedQuiver,
    k: usize,
    word: &Word,
    value: &LinComb,
) -> Result<(), CategoryError> {
    let label = |w: &Word| w.label(quiver);
    if word.len() != k {
        return Err(CategoryError::BadEntry {
            arity: k,
            word: label(word),
            reason: "word length differs from table arity".to_string(),
        });
    }
    for g in &word.factors {
        if quiver.hom(ObjId(g.src), ObjId(g.tgt)).dim(g.deg) <= g.idx {
            return Err(CategoryError::BadEntry {
                arity: k,
                word: label(word),
                reason: "unknown generator in word".to_string(),
            });
        }
    }
    let expected = word.degree() + 2 - k as i64;
    for (g, _) in value.terms() {
        if ObjId(g.src) != word.source() || ObjId(g.tgt) != word.target() {
            return Err(CategoryError::BadEntry {
                arity: k,
                word: label(word),
                reason: "value outside the hom space of the word's endpoints".to_string(),
            });
        }
        if quiver.hom(ObjId(g.src), ObjId(g.tgt)).dim(g.deg) <= g.idx {
            return Err(CategoryError::BadEntry {
                arity: k,
                word: label(word),
                reason: "unknown generator in value".to_string(),
            });
        }
        if g.deg != expected {
            return Err(CategoryError::DegreeMismatch {
                arity: k,
                word: label(word),
                expected,
                found: g.deg,
            });
        }
    }
    Ok(())
}

/// An ordinary category presented by cohomology bases and structure
/// constants; the composition table is stored in path order
/// (`table[i][j] = class(rep_i then rep_j)`).
#[derive(Debug, Clone)]
pub struct H0Category {
    pub objects: Vec<String>,
    pub reps: BTreeMap<(usize, usize), Vec<LinComb>>,
    pub composition: BTreeMap<(usize, usize, usize), Vec<Vec<Vec<Scalar>>>>,
    pub identities: Vec<Vec<Scalar>>,
}

impl H0Category {
    pub fn hom_dim(&self, x: usize, y: usize) -> usize {
        self.reps.get(&(x, y)).map_or(0, Vec::len)
    }
}

/// Convenience builder used by constructors, tests and the corpus.
#[derive(Debug, Clone)]
pub struct PresentationBuilder {
    pub field: FieldSpec,
    pub quiver: GradedQuiver,
    pub arity_bound: usize,
    pub ops: Vec<OpTable>,
    pub units: Vec<LinComb>,
}

impl PresentationBuilder {
    pub fn new(field: FieldSpec, objects: Vec<String>, arity_bound: usize) -> Self {
        let quiver = GradedQuiver::new(objects);
        let units = alloc::vec![LinComb::zero(); quiver.object_count()];
        PresentationBuilder {
            field,
            quiver,
            arity_bound,
            ops: alloc::vec![OpTable::new(); arity_bound],
            units,
        }
    }

    pub fn gen(&mut self, src: usize, tgt: usize, deg: i64, label: &str) -> GenId {
        self.quiver.add_generator(ObjId(src), ObjId(tgt), deg, label)
    }

    pub fn unit(&mut self, x: usize, unit: LinComb) {
        self.units[x] = unit;
    }

    pub fn unit_gen(&mut self, x: usize, g: GenId) {
        self.units[x] = LinComb::single(g, self.field.one());
    }

    pub fn op(&mut self, inputs: &[GenId], value: LinComb) {
        let k = inputs.len();
        assert!(k >= 1 && k <= self.arity_bound);
        self.ops[k - 1].insert(Word::from_factors(inputs.to_vec()), value);
    }

    pub fn op1(&mut self, inputs: &[GenId], out: GenId) {
        let one = self.field.one();
        self.op(inputs, LinComb::single(out, one));
    }

    pub fn build(self) -> Result<Arc<AInfPresentation>, CategoryError> {
        AInfPresentation::new(self.field, self.quiver, self.arity_bound, self.ops, self.units)
            .map(Arc::new)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldSpec = FieldSpec::Rationals;

    /// One object, Hom = K, composition = multiplication.
    fn ground_field() -> Arc<AInfPresentation> {
        let mut b = PresentationBuilder::new(Q, alloc::vec!["*".to_string()], 3);
        let one = b.gen(0, 0, 0, "1");
        b.unit_gen(0, one);
        b.op1(&[one, one], one);
        b.build().unwrap()
    }

    /// K[e]/(e^2); when corrupted, `e·e = 1` and the `e·1` entry is
    /// dropped. (Corrupting the square alone yields the group algebra of
    /// Z/2, which is still associative: a 2-dimensional unital commutative
    /// table can never fail associativity.)
    fn dual_numbers(corrupt: bool) -> Arc<AInfPresentation> {
        let mut b = PresentationBuilder::new(Q, alloc::vec!["*".to_string()], 3);
        let one = b.gen(0, 0, 0, "1");
        let e = b.gen(0, 0, 0, "e");
        b.unit_gen(0, one);
        b.op1(&[one, one], one);
        b.op1(&[one, e], e);
        if corrupt {
            b.op1(&[e, e], one);
        } else {
            b.op1(&[e, one], e);
        }
        b.build().unwrap()
    }

    #[test]
    fn ground_field_passes_identities() {
        let a = ground_field();
        assert!(a.check_stasheff(1, 3).unwrap().passed);
        assert!(a.check_unitality().passed);
        assert!(a.is_dg());
    }

    #[test]
    fn corrupted_dual_numbers_fails_at_arity_three() {
        let good = dual_numbers(false);
        assert!(good.check_stasheff(1, 3).unwrap().passed);
        let bad = dual_numbers(true);
        let report = bad.check_stasheff(1, 3).unwrap();
        assert!(!report.passed);
        let failure = report.failure.unwrap();
        // (e·1)·e = 0 while e·(1·e) = e·e = 1: first failing tuple in
        // lexicographic order is (e, 1, e), expanded by hand.
        assert_eq!(failure.arity, 3);
        assert_eq!(failure.word, alloc::vec!["e", "1", "e"]);
    }

    #[test]
    fn rescaled_unit_fails_the_unit_law() {
        let mut b = PresentationBuilder::new(Q, alloc::vec!["*".to_string()], 2);
        let one = b.gen(0, 0, 0, "1");
        b.unit(0, LinComb::single(one, Q.from_integer(2)));
        b.op1(&[one, one], one);
        let a = b.build().unwrap();
        let report = a.check_unitality();
        assert!(!report.passed);
        assert_eq!(report.failure.unwrap().arity, 2);
    }

    #[test]
    fn arity_out_of_range_is_an_error() {
        let a = ground_field();
        assert!(matches!(
            a.check_stasheff(1, 9),
            Err(CategoryError::ArityOutOfRange { .. })
        ));
    }

    #[test]
    fn suspension_conversion_is_involutive() {
        let a = dual_numbers(false);
        for k in 1..=2usize {
            for (w, v) in a.table(k) {
                let plain = unsuspend_value(w, v);
                assert_eq!(suspend_table(w, &plain), v.clone());
            }
        }
    }

    #[test]
    fn h0_of_acyclic_hom_is_zero() {
        // Two objects; Hom(x, y) is the acyclic cone K -(id)-> K.
        let mut b = PresentationBuilder::new(Q, alloc::vec!["x".into(), "y".into()], 2);
        let ux = b.gen(0, 0, 0, "ux");
        let uy = b.gen(1, 1, 0, "uy");
        let f0 = b.gen(0, 1, 0, "f0");
        let f1 = b.gen(0, 1, 1, "f1");
        b.unit_gen(0, ux);
        b.unit_gen(1, uy);
        b.op1(&[ux, ux], ux);
        b.op1(&[uy, uy], uy);
        b.op1(&[ux, f0], f0);
        b.op1(&[f0, uy], f0);
        b.op1(&[ux, f1], f1);
        b.op1(&[f1, uy], f1);
        b.op1(&[f0], f1); // m1(f0) = f1
        let a = b.build().unwrap();
        assert!(a.check_stasheff(1, 2).unwrap().passed);
        let h = a.h0();
        assert_eq!(h.hom_dim(0, 1), 0);
        assert_eq!(h.hom_dim(0, 0), 1);
    }

    #[test]
    fn h0_sees_only_degree_zero_part() {
        // One object, Hom = K·1 ⊕ K·u with deg u = -1, m1 = 0: H^0 = K·1.
        let mut b = PresentationBuilder::new(Q, alloc::vec!["*".into()], 2);
        let one = b.gen(0, 0, 0, "1");
        let u = b.gen(0, 0, -1, "u");
        b.unit_gen(0, one);
        b.op1(&[one, one], one);
        b.op1(&[one, u], u);
        b.op1(&[u, one], u);
        let a = b.build().unwrap();
        assert!(a.check_stasheff(1, 2).unwrap().passed);
        assert_eq!(a.h0().hom_dim(0, 0), 1);
    }

    #[test]
    fn empty_category_is_legal_everywhere() {
        let a = AInfPresentation::empty(Q);
        assert!(a.check_stasheff(1, 2).unwrap().passed);
        assert!(a.check_unitality().passed);
        assert_eq!(a.h0().objects.len(), 0);
    }
}
