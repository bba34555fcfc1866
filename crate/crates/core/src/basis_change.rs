//! The change of basis between the juxtaposition picture and the
//! orthogonal picture: `X` is the sum of all epi diagrams acting blockwise
//! on grades, `Y` the signed sum of all non-nested epi diagrams, and the
//! two are mutually inverse. `X` turns `•` into `⋆` and the juxtaposition
//! inner product into the orthogonal one.

use std::collections::HashMap;
use std::sync::{Arc, LazyLock, Mutex};

use crate::element::BoxDiagram;
use crate::error::{Error, Result};
use crate::graded::GradedElement;
use crate::pairing::{DiagramFilter, Pairing};
use crate::report::Report;
use crate::scalar::Scalar;

/// Which block map to apply.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlockMapKind {
    X,
    Y,
}

/// A block map bound to a context.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BlockMapSpec {
    pub kind: BlockMapKind,
    pub context: usize,
}

type BlockKey = (DiagramFilter, usize, usize);

static BLOCK_CACHE: LazyLock<Mutex<HashMap<BlockKey, Arc<Vec<Pairing>>>>> =
    LazyLock::new(|| Mutex::new(HashMap::new()));

/// The diagrams of one `2i → 2j` block, enumerated on demand and memoised.
fn block_diagrams(filter: DiagramFilter, i: usize, j: usize) -> Arc<Vec<Pairing>> {
    let key = (filter, i, j);
    if let Some(hit) = BLOCK_CACHE.lock().unwrap().get(&key) {
        return hit.clone();
    }
    let diagrams = Arc::new(
        Pairing::enumerate(2 * i, 2 * j, filter).expect("block sizes within enumeration limit"),
    );
    BLOCK_CACHE
        .lock()
        .unwrap()
        .insert(key, diagrams.clone());
    diagrams
}

impl BlockMapSpec {
    pub fn x(context: usize) -> Self {
        BlockMapSpec {
            kind: BlockMapKind::X,
            context,
        }
    }

    pub fn y(context: usize) -> Self {
        BlockMapSpec {
            kind: BlockMapKind::Y,
            context,
        }
    }

    /// Applies the block map: each grade-`i` part is pushed down through
    /// every (filtered) epi diagram `2i → 2j`, `j ≤ i`, with the block
    /// sign for `Y`.
    pub fn apply(&self, a: &GradedElement) -> Result<GradedElement> {
        if a.context() != self.context {
            return Err(Error::ContextMismatch {
                left: self.context,
                right: a.context(),
            });
        }
        let filter = match self.kind {
            BlockMapKind::X => DiagramFilter::Epi,
            BlockMapKind::Y => DiagramFilter::NonNestedEpi,
        };
        let mut out = GradedElement::zero(self.context);
        for (i, part) in a.parts() {
            for j in 0..=i {
                let sign = match self.kind {
                    BlockMapKind::X => Scalar::one(),
                    BlockMapKind::Y => {
                        if (i - j) % 2 == 0 {
                            Scalar::one()
                        } else {
                            -Scalar::one()
                        }
                    }
                };
                for t in block_diagrams(filter, i, j).iter() {
                    out.add_part(part.apply_top(t)?.scale(&sign));
                }
            }
        }
        Ok(out)
    }
}

/// `X` applied to a graded element.
pub fn apply_x(a: &GradedElement) -> GradedElement {
    BlockMapSpec::x(a.context()).apply(a).expect("context matches")
}

/// `Y` applied to a graded element.
pub fn apply_y(a: &GradedElement) -> GradedElement {
    BlockMapSpec::y(a.context()).apply(a).expect("context matches")
}

/// Checks `X(Y(a)) = a = Y(X(a))` on every basis diagram of grade `≤ nmax`
/// for every context `≤ kmax`.
pub fn verify_inverse(nmax: usize, kmax: usize) -> Report {
    let mut report = Report::new("xy-inverse");
    report.set_param("N", nmax);
    report.set_param("k", kmax);
    for k in 0..=kmax {
        for n in 0..=nmax {
            for d in BoxDiagram::basis(n, k).expect("basis within limits") {
                let a = GradedElement::from_diagram(d.clone());
                let xy = apply_x(&apply_y(&a));
                report.check_eq(format!("X(Y({d})) = {d}"), &xy, &a);
                let yx = apply_y(&apply_x(&a));
                report.check_eq(format!("Y(X({d})) = {d}"), &yx, &a);
            }
        }
    }
    report
}

/// Checks `X(a•b) = X(a)⋆X(b)` on all basis pairs with grade sum `≤ msum`
/// for every context `≤ kmax`.
pub fn verify_homomorphism(msum: usize, kmax: usize) -> Report {
    let mut report = Report::new("homomorphism");
    report.set_param("M", msum);
    report.set_param("k", kmax);
    for k in 0..=kmax {
        for m in 0..=msum {
            for n in 0..=msum - m {
                for da in BoxDiagram::basis(m, k).expect("basis within limits") {
                    let a = GradedElement::from_diagram(da.clone());
                    let xa = apply_x(&a);
                    for db in BoxDiagram::basis(n, k).expect("basis within limits") {
                        let b = GradedElement::from_diagram(db.clone());
                        let lhs = apply_x(&a.bullet(&b).expect("same context"));
                        let rhs = xa.star(&apply_x(&b)).expect("same context");
                        report.check_eq(format!("X({da} • {db})"), &lhs, &rhs);
                    }
                }
            }
        }
    }
    report
}

/// Checks `⟨⟨a,b⟩⟩ = ⟨X(a),X(b)⟩` on all basis pairs with grade sum
/// `≤ msum` for every context `≤ kmax`.
pub fn verify_isometry(msum: usize, kmax: usize) -> Report {
    let mut report = Report::new("isometry");
    report.set_param("M", msum);
    report.set_param("k", kmax);
    for k in 0..=kmax {
        for m in 0..=msum {
            for n in 0..=msum - m {
                for da in BoxDiagram::basis(m, k).expect("basis within limits") {
                    let a = GradedElement::from_diagram(da.clone());
                    let xa = apply_x(&a);
                    for db in BoxDiagram::basis(n, k).expect("basis within limits") {
                        let b = GradedElement::from_diagram(db.clone());
                        let lhs = a.inner_jux(&b).expect("same context");
                        let rhs = xa.inner_orth(&apply_x(&b)).expect("same context");
                        report.check_eq(format!("⟨⟨{da},{db}⟩⟩"), &lhs, &rhs);
                    }
                }
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::{cup_element, Element};
    use crate::graded::cup;
    use crate::pairing::PairingPoint::{Bottom as B, Top as T};
    use crate::scalar::Scalar;

    fn delta() -> Scalar {
        Scalar::delta()
    }

    #[test]
    fn x_and_y_on_the_cup() {
        let u = cup(0);
        let one = GradedElement::unit(0);
        let xu = apply_x(&u);
        assert_eq!(xu, u.add(&one.scale(&delta())));
        let yu = apply_y(&u);
        assert_eq!(yu, u.sub(&one.scale(&delta())));
    }

    #[test]
    fn x_on_two_arcs() {
        let u = cup(0);
        let uu = u.bullet(&u).unwrap();
        let xuu = apply_x(&uu);
        // uu + (2δ+1)·u + (δ²+δ)·1 over the 1+3+2 epi diagrams.
        let expected = uu
            .add(&u.scale(&(delta() + delta() + Scalar::one())))
            .add(&GradedElement::unit(0).scale(&(Scalar::delta_power(2) + delta())));
        assert_eq!(xuu, expected);
    }

    #[test]
    fn x_is_unitriangular() {
        for k in 0..=1usize {
            for i in 0..=3usize {
                for d in BoxDiagram::basis(i, k).unwrap() {
                    let a = GradedElement::from_diagram(d.clone());
                    let xa = apply_x(&a);
                    assert!(xa.support().iter().all(|&j| j <= i));
                    assert_eq!(xa.part(i), Element::from_diagram(d));
                }
            }
        }
    }

    #[test]
    fn inverse_on_small_ranges() {
        let r = verify_inverse(3, 1);
        assert!(r.passed(), "{r}");
        assert!(r.cases > 0);
    }

    #[test]
    fn homomorphism_unit_case() {
        let one = GradedElement::unit(0);
        let u = cup(0);
        let lhs = apply_x(&one.bullet(&u).unwrap());
        let rhs = apply_x(&one).star(&apply_x(&u)).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(lhs, apply_x(&u));
    }

    #[test]
    fn isometry_cup_cases() {
        let u = cup(0);
        let one = GradedElement::unit(0);
        assert_eq!(
            u.inner_jux(&u).unwrap(),
            apply_x(&u).inner_orth(&apply_x(&u)).unwrap()
        );
        assert_eq!(
            u.inner_jux(&one).unwrap(),
            apply_x(&u).inner_orth(&apply_x(&one)).unwrap()
        );
    }

    #[test]
    fn xy_expansion_regroups_by_innermost_turnbacks() {
        // Expand Σ_m X_{jm}·Y_{mi} literally and regroup by outcome
        // diagram: D must appear C(t, i−m) times in the m-block, where t
        // counts the innermost turn-backs of D, so the signed total is
        // Σ_p (−1)^p C(t,p) — zero whenever t > 0, and the identity block
        // survives with coefficient 1.
        fn binomial(n: usize, k: usize) -> i64 {
            if k > n {
                return 0;
            }
            let mut c: i64 = 1;
            for i in 0..k {
                c = c * (n - i) as i64 / (i + 1) as i64;
            }
            c
        }
        for i in 0..=4usize {
            for j in 0..=i {
                let mut counts: std::collections::BTreeMap<Pairing, Vec<(usize, i64)>> =
                    std::collections::BTreeMap::new();
                for m in j..=i {
                    let sign = if (i - m) % 2 == 0 { 1 } else { -1 };
                    for lower in Pairing::enumerate(2 * i, 2 * m, DiagramFilter::NonNestedEpi)
                        .unwrap()
                    {
                        for upper in
                            Pairing::enumerate(2 * m, 2 * j, DiagramFilter::Epi).unwrap()
                        {
                            let (d, loops) = lower.compose(&upper).unwrap();
                            assert_eq!(loops, 0, "epi∘non-nested-epi is loop-free");
                            counts.entry(d).or_default().push((m, sign));
                        }
                    }
                }
                for (d, hits) in counts {
                    let t = d.innermost_turnbacks();
                    for m in j..=i {
                        let appearances =
                            hits.iter().filter(|&&(mm, _)| mm == m).count() as i64;
                        assert_eq!(
                            appearances,
                            binomial(t, i - m),
                            "appearance count of {d} in block m={m}"
                        );
                    }
                    let total: i64 = hits.iter().map(|&(_, s)| s).sum();
                    let expected = if i == j { 1 } else { 0 };
                    assert_eq!(total, expected, "signed total of {d}");
                    if i > j {
                        assert!(t > 0);
                    }
                }
            }
        }
    }

    #[test]
    fn epi_diagrams_factor_uniquely_through_juxtaposition() {
        // Every epi diagram on 2(m+n) strands arises exactly once as
        // T·(L|R) with L, R epi and T a centred nested contraction — the
        // mechanism behind X(a•b) = X(a)⋆X(b).

        // The star-contraction tangle joining the rightmost i points of
        // the left block (2mp wide) to the leftmost i of the right block.
        fn contraction_tangle(mp: usize, np: usize, i: usize) -> Pairing {
            let bottom = 2 * (mp + np);
            let top = bottom - 2 * i;
            let mut pairs = Vec::new();
            for p in 1..=i {
                pairs.push((B(2 * mp - p + 1), B(2 * mp + p)));
            }
            let mut t = 1;
            for b in 1..=bottom {
                if b > 2 * mp - i && b <= 2 * mp + i {
                    continue;
                }
                pairs.push((B(b), T(t)));
                t += 1;
            }
            Pairing::new(bottom, top, &pairs).unwrap()
        }

        for m in 0..=3usize {
            for n in 0..=3 - m {
                let mut counts: std::collections::BTreeMap<Pairing, usize> =
                    std::collections::BTreeMap::new();
                for mp in 0..=m {
                    for np in 0..=n {
                        for i in 0..=(2 * mp).min(2 * np) {
                            let t = contraction_tangle(mp, np, i);
                            for l in
                                Pairing::enumerate(2 * m, 2 * mp, DiagramFilter::Epi).unwrap()
                            {
                                for r in
                                    Pairing::enumerate(2 * n, 2 * np, DiagramFilter::Epi).unwrap()
                                {
                                    let (d, loops) = l.juxtapose(&r).compose(&t).unwrap();
                                    assert_eq!(loops, 0);
                                    *counts.entry(d).or_default() += 1;
                                }
                            }
                        }
                    }
                }
                for j in 0..=m + n {
                    for d in
                        Pairing::enumerate(2 * (m + n), 2 * j, DiagramFilter::Epi).unwrap()
                    {
                        assert_eq!(
                            counts.get(&d).copied().unwrap_or(0),
                            1,
                            "epi diagram {d} must arise exactly once (m={m}, n={n})"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn y_signs_alternate() {
        let u = cup(0);
        let uu = u.bullet(&u).unwrap();
        let yuu = apply_y(&uu);
        // Signs: +uu at grade 2, −(non-nested epi)·uu at grade 1, +… at 0.
        assert_eq!(yuu.part(2), uu.part(2));
        let grade1 = yuu.part(1);
        // The three 4→2 non-nested epi diagrams applied to uu give
        // (2δ+1)·u, entering with sign −1.
        let two_delta_plus_one = Scalar::delta() + Scalar::delta() + Scalar::one();
        assert_eq!(grade1, cup_element(0).scale(&-two_delta_plus_one));
    }
}
