//! The two graded ⋆-algebra structures on `⊕_n P_{n,k}`.
//!
//! `Gr_k` carries the product `⋆` that sums over partial contractions
//! between adjacent tops, and the inner product that makes the grading an
//! orthogonal direct sum. `Hr_k` carries plain juxtaposition `•` and the
//! inner product that pairs through the sum of all loopless diagrams on
//! the combined tops. Both share the trace: the Markov closure of the
//! grade-0 piece.

use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::element::{
    cup_element, jux_pair_loops, orth_pair_loops, star_term, BoxDiagram, BoxPoint, Element,
};
use crate::error::{Error, Result};
use crate::pairing::noncrossing_matchings_on;
use crate::report::Report;
use crate::scalar::Scalar;

/// A finitely supported vector in `⊕_n P_{n,k}` for a fixed context `k`.
#[derive(Clone, PartialEq, Eq)]
pub struct GradedElement {
    context: usize,
    parts: BTreeMap<usize, Element>,
}

impl GradedElement {
    pub fn zero(context: usize) -> Self {
        GradedElement {
            context,
            parts: BTreeMap::new(),
        }
    }

    /// The multiplicative unit: the identity of `P_{0,k}` in grade 0.
    pub fn unit(context: usize) -> Self {
        GradedElement::from_element(Element::unit(context))
    }

    pub fn from_element(e: Element) -> Self {
        let mut g = GradedElement::zero(e.context());
        g.add_part(e);
        g
    }

    pub fn from_diagram(d: BoxDiagram) -> Self {
        GradedElement::from_element(Element::from_diagram(d))
    }

    pub fn context(&self) -> usize {
        self.context
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    /// Grades carrying a nonzero part, ascending.
    pub fn support(&self) -> Vec<usize> {
        self.parts.keys().copied().collect()
    }

    pub fn part(&self, grade: usize) -> Element {
        self.parts
            .get(&grade)
            .cloned()
            .unwrap_or_else(|| Element::zero(grade, self.context))
    }

    pub fn parts(&self) -> impl Iterator<Item = (usize, &Element)> {
        self.parts.iter().map(|(g, e)| (*g, e))
    }

    pub(crate) fn add_part(&mut self, e: Element) {
        debug_assert_eq!(e.context(), self.context);
        if e.is_zero() {
            return;
        }
        match self.parts.entry(e.grade()) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(e);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().add(&e);
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &GradedElement) -> GradedElement {
        assert_eq!(self.context, other.context, "contexts differ");
        let mut out = self.clone();
        for (_, e) in other.parts() {
            out.add_part(e.clone());
        }
        out
    }

    pub fn sub(&self, other: &GradedElement) -> GradedElement {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> GradedElement {
        self.scale(&-Scalar::one())
    }

    pub fn scale(&self, c: &Scalar) -> GradedElement {
        let mut out = GradedElement::zero(self.context);
        for (_, e) in self.parts() {
            out.add_part(e.scale(c));
        }
        out
    }

    /// The planar-algebra involution, part by part.
    pub fn involution(&self) -> GradedElement {
        let mut out = GradedElement::zero(self.context);
        for (_, e) in self.parts() {
            out.add_part(e.involution());
        }
        out
    }

    /// The unital inclusion `Gr_k → Gr_{k+1}`, part by part.
    pub fn include(&self) -> GradedElement {
        let mut out = GradedElement::zero(self.context + 1);
        for (_, e) in self.parts() {
            out.add_part(e.include());
        }
        out
    }

    fn check_context(&self, other: &GradedElement) -> Result<()> {
        if self.context != other.context {
            return Err(Error::ContextMismatch {
                left: self.context,
                right: other.context,
            });
        }
        Ok(())
    }

    /// The graded product of `Gr_k`: for grade-`m` and grade-`n` terms,
    /// the sum over `i = 0..min(2m,2n)` of the tangle joining the
    /// rightmost `i` top strands of the left factor to the leftmost `i`
    /// of the right factor; loops contribute `δ`.
    pub fn star(&self, other: &GradedElement) -> Result<GradedElement> {
        self.check_context(other)?;
        let mut out = GradedElement::zero(self.context);
        for (m, ea) in self.parts() {
            for (n, eb) in other.parts() {
                for (da, ca) in ea.terms() {
                    for (db, cb) in eb.terms() {
                        let coeff = ca * cb;
                        for i in 0..=(2 * m).min(2 * n) {
                            let (d, loops) = star_term(da, db, i);
                            let mut part = Element::zero(m + n - i, self.context);
                            part.add_term(d, &coeff * &Scalar::delta_power(loops as i64));
                            out.add_part(part);
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// The juxtaposition product of `Hr_k`: side-by-side placement only,
    /// so the grading is respected.
    pub fn bullet(&self, other: &GradedElement) -> Result<GradedElement> {
        self.check_context(other)?;
        let mut out = GradedElement::zero(self.context);
        for (m, ea) in self.parts() {
            for (n, eb) in other.parts() {
                for (da, ca) in ea.terms() {
                    for (db, cb) in eb.terms() {
                        let (d, loops) = star_term(da, db, 0);
                        let mut part = Element::zero(m + n, self.context);
                        part.add_term(d, ca * cb * Scalar::delta_power(loops as i64));
                        out.add_part(part);
                    }
                }
            }
        }
        Ok(out)
    }

    /// The orthogonal inner product of `Gr_k`: grades pair off
    /// orthogonally, and within a grade all top strands are contracted in
    /// parallel with the sides closed around, normalised by `δ^{-k}`.
    pub fn inner_orth(&self, other: &GradedElement) -> Result<Scalar> {
        self.check_context(other)?;
        let mut acc = Scalar::zero();
        for (m, ea) in self.parts() {
            let Some(eb) = other.parts.get(&m) else {
                continue;
            };
            let ebm = eb.involution();
            for (da, ca) in ea.terms() {
                for (db, cb) in ebm.terms() {
                    let loops = orth_pair_loops(da, db);
                    acc += ca * cb * Scalar::delta_power(loops as i64 - self.context as i64);
                }
            }
        }
        Ok(acc)
    }

    /// The juxtaposition inner product of `Hr_k`: sums the closure of
    /// `a | b*` against every loopless diagram on the combined
    /// `2(m+n)` tops, with the same `δ^{-k}` side normalisation.
    pub fn inner_jux(&self, other: &GradedElement) -> Result<Scalar> {
        self.check_context(other)?;
        let mut acc = Scalar::zero();
        for (m, ea) in self.parts() {
            for (n, eb) in other.parts() {
                let ebm = eb.involution();
                let total = 2 * (m + n);
                let circ: Vec<usize> = (0..total).collect();
                let tl_diagrams = noncrossing_matchings_on(&circ, total);
                for (da, ca) in ea.terms() {
                    for (db, cb) in ebm.terms() {
                        let coeff = ca * cb;
                        for top_mate in &tl_diagrams {
                            let loops = jux_pair_loops(da, db, top_mate);
                            acc += &coeff
                                * &Scalar::delta_power(loops as i64 - self.context as i64);
                        }
                    }
                }
            }
        }
        Ok(acc)
    }

    /// The Markov trace of the zero-graded piece.
    pub fn trace(&self) -> Scalar {
        match self.parts.get(&0) {
            Some(e) => e.closure().expect("grade-0 part closes"),
            None => Scalar::zero(),
        }
    }
}

impl fmt::Display for GradedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0 in Gr_{}", self.context);
        }
        let mut first = true;
        for (_, e) in self.parts() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for GradedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GradedElement({self})")
    }
}

/// The nested double-cup `α` of grade 2, built in context 0 and included
/// up to the requested context.
pub fn alpha(context: usize) -> GradedElement {
    let d = BoxDiagram::new(
        2,
        0,
        &[
            (BoxPoint::Top(1), BoxPoint::Top(4)),
            (BoxPoint::Top(2), BoxPoint::Top(3)),
        ],
    )
    .expect("double cup is valid");
    let mut e = Element::from_diagram(d);
    for _ in 0..context {
        e = e.include();
    }
    GradedElement::from_element(e)
}

/// The cup generator `∪_k` as a graded element.
pub fn cup(context: usize) -> GradedElement {
    GradedElement::from_element(cup_element(context))
}

/// A reproducible pseudo-random vector supported on grades `≤ max_grade`,
/// with small Laurent-monomial coefficients.
pub fn random_graded_element(
    rng: &mut impl Rng,
    context: usize,
    max_grade: usize,
    terms: usize,
) -> GradedElement {
    let mut out = GradedElement::zero(context);
    for _ in 0..terms {
        let grade = rng.gen_range(0..=max_grade);
        let basis = BoxDiagram::basis(grade, context).expect("basis within limits");
        let d = basis[rng.gen_range(0..basis.len())].clone();
        let num = loop {
            let c = rng.gen_range(-3i64..=3);
            if c != 0 {
                break c;
            }
        };
        let exp = rng.gen_range(-2i64..=2);
        let mut part = Element::zero(grade, context);
        part.add_term(
            d,
            Scalar::from_int(num) * Scalar::s_power(exp),
        );
        out.add_part(part);
    }
    out
}

/// Serialisable form of an [`Element`]: `{grade, context, terms}` with
/// diagrams and scalars in their textual forms.
#[derive(Serialize, Deserialize)]
struct ElementRepr {
    grade: usize,
    context: usize,
    terms: Vec<TermRepr>,
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    pairing: String,
    scalar: Scalar,
}

impl Serialize for Element {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let repr = ElementRepr {
            grade: self.grade(),
            context: self.context(),
            terms: self
                .terms()
                .map(|(d, c)| TermRepr {
                    pairing: d.to_string(),
                    scalar: c.clone(),
                })
                .collect(),
        };
        repr.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for Element {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let repr = ElementRepr::deserialize(de)?;
        let mut terms = Vec::new();
        for t in repr.terms {
            let d: BoxDiagram = t.pairing.parse().map_err(serde::de::Error::custom)?;
            terms.push((d, t.scalar));
        }
        Element::from_terms(repr.grade, repr.context, terms).map_err(serde::de::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct GradedRepr {
    context: usize,
    parts: Vec<Element>,
}

impl Serialize for GradedElement {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let repr = GradedRepr {
            context: self.context,
            parts: self.parts().map(|(_, e)| e.clone()).collect(),
        };
        repr.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for GradedElement {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let repr = GradedRepr::deserialize(de)?;
        let mut out = GradedElement::zero(repr.context);
        for e in repr.parts {
            if e.context() != repr.context {
                return Err(serde::de::Error::custom(format!(
                    "part context {} does not match element context {}",
                    e.context(),
                    repr.context
                )));
            }
            out.add_part(e);
        }
        Ok(out)
    }
}

/// Exhaustive associativity of `⋆` on basis triples plus seeded random
/// combinations, together with the ⋆-algebra identities tying the inner
/// product, trace and involution together.
pub fn verify_star_algebra(
    grade_sum: usize,
    kmax: usize,
    random_pairs: usize,
    seed: u64,
) -> Report {
    use rand::SeedableRng;
    let mut report = Report::new("associativity");
    report.set_param("grade_sum", grade_sum);
    report.set_param("kmax", kmax);
    report.set_param("random", random_pairs);
    report.set_param("seed", seed);

    for k in 0..=kmax {
        for m in 0..=grade_sum {
            for n in 0..=grade_sum - m {
                for p in 0..=grade_sum - m - n {
                    let ba = BoxDiagram::basis(m, k).unwrap();
                    let bb = BoxDiagram::basis(n, k).unwrap();
                    let bc = BoxDiagram::basis(p, k).unwrap();
                    for da in &ba {
                        let a = GradedElement::from_diagram(da.clone());
                        for db in &bb {
                            let b = GradedElement::from_diagram(db.clone());
                            let ab = a.star(&b).unwrap();
                            for dc in &bc {
                                let c = GradedElement::from_diagram(dc.clone());
                                let lhs = ab.star(&c).unwrap();
                                let rhs = a.star(&b.star(&c).unwrap()).unwrap();
                                report.check_eq(
                                    format!("({da} ⋆ {db}) ⋆ {dc}"),
                                    &lhs,
                                    &rhs,
                                );
                            }
                        }
                    }
                }
            }
        }
    }

    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    for case in 0..random_pairs {
        let k = rng.gen_range(0..=1usize);
        let a = random_graded_element(&mut rng, k, 2, 3);
        let b = random_graded_element(&mut rng, k, 2, 3);
        let c = random_graded_element(&mut rng, k, 2, 3);

        let assoc_l = a.star(&b).unwrap().star(&c).unwrap();
        let assoc_r = a.star(&b.star(&c).unwrap()).unwrap();
        report.check_eq(format!("random associativity #{case}"), &assoc_l, &assoc_r);

        // <a,b> = tr(a ⋆ b*)
        let ip = a.inner_orth(&b).unwrap();
        let tr = a.star(&b.involution()).unwrap().trace();
        report.check_eq(format!("random <a,b>=tr(a⋆b*) #{case}"), &ip, &tr);

        // (a ⋆ b)* = b* ⋆ a*, and the same for •
        let star_adj = a.star(&b).unwrap().involution();
        let adj_star = b.involution().star(&a.involution()).unwrap();
        report.check_eq(format!("random (a⋆b)*=b*⋆a* #{case}"), &star_adj, &adj_star);
        let bullet_adj = a.bullet(&b).unwrap().involution();
        let adj_bullet = b.involution().bullet(&a.involution()).unwrap();
        report.check_eq(format!("random (a•b)*=b*•a* #{case}"), &bullet_adj, &adj_bullet);

        // <a⋆b, c> = <b, a*⋆c>
        let lhs = a.star(&b).unwrap().inner_orth(&c).unwrap();
        let rhs = b.inner_orth(&a.involution().star(&c).unwrap()).unwrap();
        report.check_eq(format!("random <a⋆b,c>=<b,a*⋆c> #{case}"), &lhs, &rhs);

        // tr(a⋆b) = tr(b⋆a)
        let tl = a.star(&b).unwrap().trace();
        let tr2 = b.star(&a).unwrap().trace();
        report.check_eq(format!("random tr(a⋆b)=tr(b⋆a) #{case}"), &tl, &tr2);
    }

    report
}
