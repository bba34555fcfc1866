//! Structure theory of the tower at the diagram level: the cap-kernel
//! subspaces `V_n` and their complements `W_n`, the padded vectors
//! `v_{p,q}` and the cup recursion on them, conditional expectations, the
//! Jones projections, and the commutator family behind the relative
//! commutant.

use crate::element::{jones_element, BoxDiagram, Element, Side};
use crate::error::{Error, Result};
use crate::graded::{alpha, cup, GradedElement};
use crate::linalg::{independent_indices, ScalarMatrix};
use crate::pairing::catalan;
use crate::report::Report;
use crate::scalar::Scalar;

/// A subspace of `P_{n,k}` given by an exactly independent basis.
#[derive(Clone)]
pub struct Subspace {
    grade: usize,
    context: usize,
    basis: Vec<Element>,
}

impl Subspace {
    pub fn grade(&self) -> usize {
        self.grade
    }

    pub fn context(&self) -> usize {
        self.context
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Element] {
        &self.basis
    }
}

/// Coordinates of an element in the diagram basis of its `P_{n,k}`.
fn coordinates(e: &Element, basis: &[BoxDiagram]) -> Vec<Scalar> {
    basis.iter().map(|d| e.coefficient(d)).collect()
}

/// The span of `{x_{1,0}, x_{0,1} : x in the diagram basis of P_{n-1,k}}`,
/// reduced to an independent basis by exact elimination.
pub fn wn_basis(n: usize, k: usize) -> Result<Subspace> {
    if n == 0 {
        return Err(Error::GradeZero);
    }
    let target_basis = BoxDiagram::basis(n, k)?;
    let mut spanning: Vec<Element> = Vec::new();
    for d in BoxDiagram::basis(n - 1, k)? {
        spanning.push(Element::from_diagram(d).xpq(1, 0));
    }
    for d in BoxDiagram::basis(n - 1, k)? {
        spanning.push(Element::from_diagram(d).xpq(0, 1));
    }
    let coords: Vec<Vec<Scalar>> = spanning
        .iter()
        .map(|e| coordinates(e, &target_basis))
        .collect();
    let keep = independent_indices(&coords);
    Ok(Subspace {
        grade: n,
        context: k,
        basis: keep.into_iter().map(|i| spanning[i].clone()).collect(),
    })
}

/// The joint kernel of capping on the left and on the right: `V_n`.
/// For `n = 0` this is all of `P_{0,k}`.
pub fn vn_basis(n: usize, k: usize) -> Result<Subspace> {
    let basis = BoxDiagram::basis(n, k)?;
    if n == 0 {
        return Ok(Subspace {
            grade: 0,
            context: k,
            basis: basis.into_iter().map(Element::from_diagram).collect(),
        });
    }
    let lower = BoxDiagram::basis(n - 1, k)?;
    let rows = 2 * lower.len();
    let mut matrix = ScalarMatrix::zeros(rows, basis.len());
    for (j, d) in basis.iter().enumerate() {
        let e = Element::from_diagram(d.clone());
        let left = e.cap(Side::Left)?;
        let right = e.cap(Side::Right)?;
        for (i, ld) in lower.iter().enumerate() {
            *matrix.get_mut(i, j) = left.coefficient(ld);
            *matrix.get_mut(lower.len() + i, j) = right.coefficient(ld);
        }
    }
    let kernel = matrix.kernel_basis();
    let mut out = Vec::new();
    for v in kernel {
        let terms = basis
            .iter()
            .cloned()
            .zip(v)
            .filter(|(_, c)| !c.is_zero())
            .collect::<Vec<_>>();
        out.push(Element::from_terms(n, k, terms)?);
    }
    Ok(Subspace {
        grade: n,
        context: k,
        basis: out,
    })
}

fn graded(e: &Element) -> GradedElement {
    GradedElement::from_element(e.clone())
}

/// Checks `⟨v_{p,q}, v'_{p',q'}⟩ = ⟨v,v'⟩` when `(p,q) = (p',q')` and `0`
/// otherwise, over `vn_basis(n,k)` and all paddings `p+q, p'+q' ≤ pqmax`.
pub fn verify_vn_orthogonality(n: usize, k: usize, pqmax: usize) -> Report {
    let mut report = Report::new("vpq-orthogonality");
    report.set_param("n", n);
    report.set_param("k", k);
    report.set_param("pqmax", pqmax);
    let vs = match vn_basis(n, k) {
        Ok(s) => s,
        Err(e) => {
            report.check(false, "vn_basis", e);
            return report;
        }
    };
    let paddings: Vec<(usize, usize)> = (0..=pqmax)
        .flat_map(|p| (0..=pqmax).map(move |q| (p, q)))
        .filter(|(p, q)| p + q <= pqmax)
        .collect();
    for v in vs.basis() {
        for v2 in vs.basis() {
            let plain = graded(v).inner_orth(&graded(v2)).expect("same context");
            for &(p, q) in &paddings {
                let vpq = graded(&v.xpq(p, q));
                for &(p2, q2) in &paddings {
                    let v2pq = graded(&v2.xpq(p2, q2));
                    let got = vpq.inner_orth(&v2pq).expect("same context");
                    let want = if (p, q) == (p2, q2) {
                        plain.clone()
                    } else {
                        Scalar::zero()
                    };
                    report.check_eq(
                        format!("⟨v_{{{p},{q}}}, v'_{{{p2},{q2}}}⟩ (n={n}, k={k})"),
                        &got,
                        &want,
                    );
                }
            }
        }
    }
    report
}

/// Checks the cup recursion on padded vectors: for `v ∈ V_n`, `n ≥ 1`,
/// `∪ ⋆ v_{p,q} = √δ·v_{p+1,q} + v_{p,q} + √δ·v_{p−1,q}` (the last term
/// only for `p ≥ 1`), and its mirror for right multiplication. For
/// `n = 0` the padded vectors collapse to `v_{m,0}` and the middle terms
/// drop at `m = 0`.
pub fn verify_cup_action(n: usize, k: usize, pmax: usize, qmax: usize) -> Report {
    let mut report = Report::new("cup-action");
    report.set_param("n", n);
    report.set_param("k", k);
    report.set_param("pmax", pmax);
    report.set_param("qmax", qmax);
    let s = Scalar::s_power(1);
    let u = cup(k);
    let vs = match vn_basis(n, k) {
        Ok(s) => s,
        Err(e) => {
            report.check(false, "vn_basis", e);
            return report;
        }
    };
    for v in vs.basis() {
        if n >= 1 {
            for p in 0..=pmax {
                for q in 0..=qmax {
                    let lhs = u.star(&graded(&v.xpq(p, q))).expect("same context");
                    let mut rhs = graded(&v.xpq(p + 1, q)).scale(&s);
                    rhs = rhs.add(&graded(&v.xpq(p, q)));
                    if p >= 1 {
                        rhs = rhs.add(&graded(&v.xpq(p - 1, q)).scale(&s));
                    }
                    report.check_eq(format!("∪ ⋆ v_{{{p},{q}}} (n={n}, k={k})"), &lhs, &rhs);

                    let lhs_r = graded(&v.xpq(p, q)).star(&u).expect("same context");
                    let mut rhs_r = graded(&v.xpq(p, q + 1)).scale(&s);
                    rhs_r = rhs_r.add(&graded(&v.xpq(p, q)));
                    if q >= 1 {
                        rhs_r = rhs_r.add(&graded(&v.xpq(p, q - 1)).scale(&s));
                    }
                    report.check_eq(format!("v_{{{p},{q}}} ⋆ ∪ (n={n}, k={k})"), &lhs_r, &rhs_r);
                }
            }
        } else {
            // Grade-0 vectors: only the total padding m = p + q matters,
            // and the `m = 0` step has no middle or downward term.
            for m in 0..=pmax + qmax {
                let lhs = u.star(&graded(&v.xpq(m, 0))).expect("same context");
                let mut rhs = graded(&v.xpq(m + 1, 0)).scale(&s);
                if m >= 1 {
                    rhs = rhs.add(&graded(&v.xpq(m, 0)));
                    rhs = rhs.add(&graded(&v.xpq(m - 1, 0)).scale(&s));
                }
                report.check_eq(format!("∪ ⋆ v_{{{m},0}} (n=0, k={k})"), &lhs, &rhs);
            }
        }
    }
    report
}

/// Checks that `{v_{p,q} : v ∈ V_m, m + p + q = n}` spans `P_{n,k}`
/// (Catalan rank), and that `dim V_n + dim W_n = dim P_{n,k}`.
pub fn verify_spanning(nmax: usize, kmax: usize) -> Report {
    let mut report = Report::new("vpq-spanning");
    report.set_param("nmax", nmax);
    report.set_param("kmax", kmax);
    for k in 0..=kmax {
        for n in 0..=nmax {
            let target_basis = match BoxDiagram::basis(n, k) {
                Ok(b) => b,
                Err(e) => {
                    report.check(false, format!("basis({n},{k})"), e);
                    continue;
                }
            };
            let mut vectors: Vec<Vec<Scalar>> = Vec::new();
            for m in 0..=n {
                let vs = vn_basis(m, k).expect("vn within limits");
                for v in vs.basis() {
                    for p in 0..=n - m {
                        let q = n - m - p;
                        vectors.push(coordinates(&v.xpq(p, q), &target_basis));
                    }
                }
            }
            let rank = if vectors.is_empty() {
                0
            } else {
                ScalarMatrix::from_rows(vectors).rank()
            };
            report.check_eq(
                format!("rank{{v_pq}} in P({n},{k})"),
                &rank,
                &catalan(n + k),
            );
            if n >= 1 {
                let vs = vn_basis(n, k).expect("vn within limits");
                let ws = wn_basis(n, k).expect("wn within limits");
                report.check_eq(
                    format!("dim V_{n} + dim W_{n} in P({n},{k})"),
                    &(vs.dimension() + ws.dimension()),
                    &catalan(n + k),
                );
                // The cap kernel really is the perpendicular complement.
                for v in vs.basis() {
                    for w in ws.basis() {
                        report.check_eq(
                            format!("V_{n} ⊥ W_{n} in P({n},{k})"),
                            &graded(v).inner_orth(&graded(w)).expect("same context"),
                            &Scalar::zero(),
                        );
                    }
                }
            }
        }
    }
    report
}

/// The combined `v_{p,q}` suite: orthogonality plus spanning.
pub fn verify_vpq(n: usize, k: usize, pqmax: usize, span_nmax: usize, span_kmax: usize) -> Report {
    let mut report = Report::new("vpq");
    report.set_param("n", n);
    report.set_param("k", k);
    report.set_param("pqmax", pqmax);
    report.set_param("span_nmax", span_nmax);
    report.set_param("span_kmax", span_kmax);
    report.absorb(verify_vn_orthogonality(n, k, pqmax));
    report.absorb(verify_spanning(span_nmax, span_kmax));
    report
}

/// The trace-preserving conditional expectation `Gr_{k} → Gr_{k-1}`,
/// part by part.
pub fn conditional_expectation(x: &GradedElement) -> Result<GradedElement> {
    if x.context() == 0 {
        return Err(Error::ContextZero);
    }
    let mut out = GradedElement::zero(x.context() - 1);
    for (_, e) in x.parts() {
        out.add_part(e.conditional_expectation()?);
    }
    Ok(out)
}

/// The Jones projection `e_i` as a graded element of context `k`.
pub fn jones(index: usize, context: usize) -> Result<GradedElement> {
    Ok(GradedElement::from_element(jones_element(index, context)?))
}

/// Includes a graded element `steps` contexts up.
fn include_up(x: &GradedElement, steps: usize) -> GradedElement {
    let mut out = x.clone();
    for _ in 0..steps {
        out = out.include();
    }
    out
}

/// The Jones-projection suite: `e_i` are self-adjoint idempotents, satisfy
/// the Temperley-Lieb relations with the right trace values, and `e`
/// implements the conditional expectation: `e⋆x⋆e = ι(E(x))⋆e`.
pub fn verify_jones(kmax: usize, seed: u64) -> Report {
    use rand::{Rng, SeedableRng};
    let mut report = Report::new("jones");
    report.set_param("kmax", kmax);
    report.set_param("seed", seed);
    let dinv2 = Scalar::delta_power(-2);

    for k in 2..=kmax {
        let es: Vec<GradedElement> = (1..k).map(|i| jones(i, k).expect("index fits")).collect();
        for (idx, e) in es.iter().enumerate() {
            let i = idx + 1;
            report.check_eq(format!("e{i}* = e{i} (k={k})"), &e.involution(), e);
            report.check_eq(
                format!("e{i}⋆e{i} = e{i} (k={k})"),
                &e.star(e).expect("same context"),
                e,
            );
            report.check_eq(
                format!("tr(e{i}) = δ⁻² (k={k})"),
                &e.trace(),
                &dinv2,
            );
            for (jdx, f) in es.iter().enumerate() {
                let j = jdx + 1;
                if i.abs_diff(j) == 1 {
                    let lhs = e.star(f).unwrap().star(e).unwrap();
                    let rhs = e.scale(&dinv2);
                    report.check_eq(format!("e{i}⋆e{j}⋆e{i} = δ⁻²e{i} (k={k})"), &lhs, &rhs);
                } else if i.abs_diff(j) >= 2 {
                    let lhs = e.star(f).unwrap();
                    let rhs = f.star(e).unwrap();
                    report.check_eq(format!("e{i}⋆e{j} = e{j}⋆e{i} (k={k})"), &lhs, &rhs);
                }
            }
        }
    }

    // e implements E_{M_0} inside context 2: e⋆ι(x)⋆e = ι(E(x))⋆e.
    let e = jones(1, 2).expect("fits");
    report.check_eq(
        "E(e) = δ⁻²·1 (context 2 → 1)",
        &conditional_expectation(&e).expect("context 2"),
        &GradedElement::unit(1).scale(&dinv2),
    );
    for n in 0..=2usize {
        for d in BoxDiagram::basis(n, 1).expect("basis within limits") {
            let x = GradedElement::from_diagram(d.clone());
            let lhs = e
                .star(&x.include())
                .unwrap()
                .star(&e)
                .unwrap();
            let ex = conditional_expectation(&x).expect("context 1");
            let rhs = include_up(&ex, 2).star(&e).unwrap();
            report.check_eq(format!("e⋆ι({d})⋆e = ι(E(x))⋆e"), &lhs, &rhs);
        }
    }

    // Markov property and bimodularity of E on seeded random elements.
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    for case in 0..20 {
        let k = rng.gen_range(1..=2usize);
        let x = crate::graded::random_graded_element(&mut rng, k, 2, 3);
        let ex = conditional_expectation(&x).expect("context >= 1");
        report.check_eq(
            format!("tr(E(x)) = tr(x) #{case}"),
            &ex.trace(),
            &x.trace(),
        );
        let a = crate::graded::random_graded_element(&mut rng, k - 1, 1, 2);
        let b = crate::graded::random_graded_element(&mut rng, k - 1, 1, 2);
        let lhs = conditional_expectation(
            &a.include().star(&x).unwrap().star(&b.include()).unwrap(),
        )
        .expect("context >= 1");
        let rhs = a.star(&ex).unwrap().star(&b).unwrap();
        report.check_eq(format!("E(ι(a)⋆x⋆ι(b)) = a⋆E(x)⋆b #{case}"), &lhs, &rhs);
        report.check_eq(
            format!("E(ι(a)) = a #{case}"),
            &conditional_expectation(&a.include()).expect("context >= 1"),
            &a,
        );
    }

    report
}

/// `[α, 1_{0,n}] = α ⋆ 1_{0,n} − 1_{0,n} ⋆ α` in context `k`.
pub fn commutator_alpha(n: usize, k: usize) -> GradedElement {
    let a = alpha(k);
    let one_0n = GradedElement::from_element(Element::unit(k).xpq(0, n));
    let left = a.star(&one_0n).expect("same context");
    let right = one_0n.star(&a).expect("same context");
    left.sub(&right)
}

/// Checks the tridiagonal structure of the commutator Gram matrix:
/// `⟨[α,1_{0,m}], [α,1_{0,n}]⟩ = 0` whenever `|m−n| ≥ 2`.
pub fn verify_commutator(nmax: usize, k: usize) -> Report {
    let mut report = Report::new("commutator");
    report.set_param("nmax", nmax);
    report.set_param("k", k);
    report.check_eq(
        "[α, 1_{0,0}] = 0",
        &commutator_alpha(0, k),
        &GradedElement::zero(k),
    );
    report.check(
        !commutator_alpha(1, k).is_zero(),
        "[α, 1_{0,1}] ≠ 0",
        "zero commutator",
    );
    let cs: Vec<GradedElement> = (1..=nmax).map(|n| commutator_alpha(n, k)).collect();
    for (mi, cm) in cs.iter().enumerate() {
        for (ni, cn) in cs.iter().enumerate() {
            let (m, n) = (mi + 1, ni + 1);
            let g = cm.inner_orth(cn).expect("same context");
            if m.abs_diff(n) >= 2 {
                report.check_eq(format!("G_{{{m},{n}}} = 0"), &g, &Scalar::zero());
            } else {
                report.record(true, format!("G_{{{m},{n}}} recorded"), &g, "");
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::cup_element;

    #[test]
    fn wn_dimensions() {
        assert_eq!(wn_basis(1, 0).unwrap().dimension(), 1);
        assert_eq!(wn_basis(1, 1).unwrap().dimension(), 1);
        assert_eq!(wn_basis(1, 2).unwrap().dimension(), 2);
        assert!(wn_basis(0, 1).is_err());
    }

    #[test]
    fn w1_is_spanned_by_the_cup() {
        let w = wn_basis(1, 0).unwrap();
        // 1_{1,0} = (1/s)·u, so the span is all of P_{1,0}.
        assert_eq!(
            w.basis()[0],
            Element::unit(0).xpq(1, 0)
        );
        assert_eq!(
            w.basis()[0].scale(&Scalar::s_power(1)),
            cup_element(0)
        );
    }

    #[test]
    fn vn_dimensions_and_kernel_vector() {
        assert_eq!(vn_basis(1, 0).unwrap().dimension(), 0);
        let v = vn_basis(1, 1).unwrap();
        assert_eq!(v.dimension(), 1);
        // The kernel vector is δ·D1 − D2 up to normalisation.
        let vec = &v.basis()[0];
        assert!(vec.cap(Side::Left).unwrap().is_zero());
        assert!(vec.cap(Side::Right).unwrap().is_zero());
        let d1: BoxDiagram = "P(1,1):{(L1,T1),(T2,R1)}".parse().unwrap();
        let d2: BoxDiagram = "P(1,1):{(T1,T2),(L1,R1)}".parse().unwrap();
        assert_eq!(vec.coefficient(&d1), Scalar::delta());
        assert_eq!(vec.coefficient(&d2), -Scalar::one());
        // n = 0 returns everything.
        assert_eq!(vn_basis(0, 2).unwrap().dimension(), 2);
    }

    #[test]
    fn vn_members_are_cap_kernels() {
        for (n, k) in [(1usize, 1usize), (2, 0), (2, 1), (3, 0)] {
            let vs = vn_basis(n, k).unwrap();
            for v in vs.basis() {
                assert!(v.cap(Side::Left).unwrap().is_zero());
                assert!(v.cap(Side::Right).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn orthogonality_small() {
        let r = verify_vn_orthogonality(1, 1, 2);
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn cup_action_small() {
        let r = verify_cup_action(1, 1, 2, 2);
        assert!(r.passed(), "{r}");
        let r0 = verify_cup_action(0, 0, 2, 2);
        assert!(r0.passed(), "{r0}");
        let r01 = verify_cup_action(0, 1, 2, 2);
        assert!(r01.passed(), "{r01}");
    }

    #[test]
    fn spanning_small() {
        let r = verify_spanning(2, 1);
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn conditional_expectation_examples() {
        let e = jones(1, 2).unwrap();
        assert_eq!(
            conditional_expectation(&e).unwrap(),
            GradedElement::unit(1).scale(&Scalar::delta_power(-2))
        );
        let u1 = cup(1);
        assert_eq!(
            conditional_expectation(&u1.include()).unwrap(),
            u1
        );
        assert!(conditional_expectation(&cup(0)).is_err());
    }

    #[test]
    fn jones_relations_small() {
        let r = verify_jones(3, 7);
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn commutator_examples() {
        assert!(commutator_alpha(0, 0).is_zero());
        assert!(!commutator_alpha(1, 0).is_zero());
        let r = verify_commutator(3, 0);
        assert!(r.passed(), "{r}");
    }
}
