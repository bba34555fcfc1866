//! Floating-point specialisations: Gram matrices and their spectra at
//! sampled `δ`, the Motzkin-path oracle for the moments of the cup, and a
//! report-only probe of the norms of left multiplication operators.

use serde::Serialize;

use crate::basis_change::apply_x;
use crate::element::BoxDiagram;
use crate::error::{Error, Result};
use crate::graded::{cup, GradedElement};
use crate::report::Report;
use crate::scalar::Scalar;

/// Which inner product a Gram matrix samples.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GramForm {
    Orth,
    Jux,
}

/// A dense symmetric Gram matrix with its basis labels.
#[derive(Clone, Debug, Serialize)]
pub struct GramMatrix {
    pub labels: Vec<String>,
    pub entries: Vec<Vec<f64>>,
    pub delta: f64,
}

/// The joint diagram basis of grades `0..=nmax`, as graded elements.
fn joint_basis(nmax: usize, k: usize) -> Result<Vec<(String, GradedElement)>> {
    let mut out = Vec::new();
    for n in 0..=nmax {
        for d in BoxDiagram::basis(n, k)? {
            out.push((d.to_string(), GradedElement::from_diagram(d)));
        }
    }
    Ok(out)
}

/// Pairwise inner products of the diagram basis, evaluated at `s = s0`.
/// `Orth` uses the grade-`n` basis of `P_{n,k}`; `Jux` uses the joint
/// basis of all grades `≤ n`.
pub fn gram(n: usize, k: usize, form: GramForm, s0: f64) -> Result<GramMatrix> {
    if s0.is_nan() || s0 <= 0.0 {
        return Err(Error::NonPositiveEvaluationPoint(s0));
    }
    let basis: Vec<(String, GradedElement)> = match form {
        GramForm::Orth => BoxDiagram::basis(n, k)?
            .into_iter()
            .map(|d| (d.to_string(), GradedElement::from_diagram(d)))
            .collect(),
        GramForm::Jux => joint_basis(n, k)?,
    };
    let dim = basis.len();
    let mut entries = vec![vec![0.0; dim]; dim];
    for i in 0..dim {
        for j in i..dim {
            let ip = match form {
                GramForm::Orth => basis[i].1.inner_orth(&basis[j].1)?,
                GramForm::Jux => basis[i].1.inner_jux(&basis[j].1)?,
            };
            let v = ip.evaluate(s0)?;
            entries[i][j] = v;
            entries[j][i] = v;
        }
    }
    Ok(GramMatrix {
        labels: basis.into_iter().map(|(l, _)| l).collect(),
        entries,
        delta: s0 * s0,
    })
}

fn off_diagonal_norm(a: &[Vec<f64>]) -> f64 {
    let mut sum = 0.0;
    for (i, row) in a.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            if i != j {
                sum += x * x;
            }
        }
    }
    sum.sqrt()
}

fn frobenius_norm(a: &[Vec<f64>]) -> f64 {
    a.iter()
        .flat_map(|row| row.iter().map(|x| x * x))
        .sum::<f64>()
        .sqrt()
}

/// Cyclic Jacobi rotations until the off-diagonal norm falls below
/// `1e-12` relative to the matrix scale. Returns eigenvalues (unsorted)
/// and, optionally, the matrix of eigenvectors as columns.
// The rotation updates follow the textbook index form.
#[allow(clippy::needless_range_loop)]
fn jacobi_eigen(mut a: Vec<Vec<f64>>, want_vectors: bool) -> (Vec<f64>, Option<Vec<Vec<f64>>>) {
    let n = a.len();
    let mut v = if want_vectors {
        let mut id = vec![vec![0.0; n]; n];
        for (i, row) in id.iter_mut().enumerate() {
            row[i] = 1.0;
        }
        Some(id)
    } else {
        None
    };
    if n == 0 {
        return (Vec::new(), v);
    }
    let tol = 1e-12 * frobenius_norm(&a).max(1.0);
    for _sweep in 0..100 {
        if off_diagonal_norm(&a) <= tol {
            break;
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                let apq = a[p][q];
                if apq.abs() <= tol / (n as f64) {
                    continue;
                }
                let theta = 0.5 * (a[q][q] - a[p][p]) / apq;
                let t = if theta == 0.0 {
                    1.0
                } else {
                    let sign = if theta < 0.0 { -1.0 } else { 1.0 };
                    sign / (theta.abs() + (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                for i in 0..n {
                    let aip = a[i][p];
                    let aiq = a[i][q];
                    a[i][p] = c * aip - s * aiq;
                    a[i][q] = s * aip + c * aiq;
                }
                for j in 0..n {
                    let apj = a[p][j];
                    let aqj = a[q][j];
                    a[p][j] = c * apj - s * aqj;
                    a[q][j] = s * apj + c * aqj;
                }
                if let Some(vm) = v.as_mut() {
                    for i in 0..n {
                        let vip = vm[i][p];
                        let viq = vm[i][q];
                        vm[i][p] = c * vip - s * viq;
                        vm[i][q] = s * vip + c * viq;
                    }
                }
            }
        }
    }
    ((0..n).map(|i| a[i][i]).collect(), v)
}

impl GramMatrix {
    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    fn check_symmetric(&self) -> Result<()> {
        let scale = frobenius_norm(&self.entries).max(1.0);
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                let asym = (self.entries[i][j] - self.entries[j][i]).abs();
                if asym > 1e-12 * scale {
                    return Err(Error::NotSymmetric(asym));
                }
            }
        }
        Ok(())
    }

    /// The smallest eigenvalue, by cyclic Jacobi iteration.
    pub fn min_eigenvalue(&self) -> Result<f64> {
        self.check_symmetric()?;
        let (eigs, _) = jacobi_eigen(self.entries.clone(), false);
        Ok(eigs.into_iter().fold(f64::INFINITY, f64::min))
    }
}

/// `tr(∪_k^{⋆m})`, computed purely diagrammatically.
pub fn cup_moment(m: usize, k: usize) -> Scalar {
    let u = cup(k);
    let mut acc = GradedElement::unit(k);
    for _ in 0..m {
        acc = u.star(&acc).expect("same context");
    }
    acc.trace()
}

/// The vacuum moment `⟨ξ_0, A^m ξ_0⟩` of `A = √δ(S+S*) + SS*`: weighted
/// Motzkin paths with level steps forbidden at height 0.
pub fn motzkin_moment(m: usize) -> Scalar {
    let s = Scalar::s_power(1);
    let mut heights = vec![Scalar::zero(); m + 2];
    heights[0] = Scalar::one();
    for _ in 0..m {
        let mut next = vec![Scalar::zero(); m + 2];
        for (h, c) in heights.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if h + 1 < next.len() {
                next[h + 1] += &(c * &s);
            }
            if h >= 1 {
                next[h - 1] += &(c * &s);
                next[h] += c;
            }
        }
        heights = next;
    }
    heights[0].clone()
}

/// Largest singular values of left ⋆-multiplication by `a`, compressed to
/// grades `≤ N` for `N = 1..=nmax`, in the orthonormalised basis at
/// `s = s0`. Report-only: no assertion is attached to these numbers.
pub fn norm_probe(a: &GradedElement, nmax: usize, s0: f64) -> Result<Vec<f64>> {
    if s0.is_nan() || s0 <= 0.0 {
        return Err(Error::NonPositiveEvaluationPoint(s0));
    }
    let k = a.context();
    let mut out = Vec::new();
    for cap_grade in 1..=nmax {
        let basis = joint_basis(cap_grade, k)?;
        let dim = basis.len();
        // Gram of the joint diagram basis.
        let mut g = vec![vec![0.0; dim]; dim];
        for i in 0..dim {
            for j in i..dim {
                let v = basis[i].1.inner_orth(&basis[j].1)?.evaluate(s0)?;
                g[i][j] = v;
                g[j][i] = v;
            }
        }
        // L_a in the diagram basis, compressed to grades ≤ cap_grade.
        let mut m = vec![vec![0.0; dim]; dim];
        for (j, (_, b)) in basis.iter().enumerate() {
            let image = a.star(b)?;
            for (i, (_, d)) in basis.iter().enumerate() {
                let (grade, diagram) = {
                    let mut it = d.parts();
                    let (g, e) = it.next().expect("basis element has one part");
                    let (dd, _) = e.terms().next().expect("one diagram");
                    (g, dd.clone())
                };
                m[i][j] = image.part(grade).coefficient(&diagram).evaluate(s0)?;
            }
        }
        let (eigs, vecs) = jacobi_eigen(g, true);
        let q = vecs.expect("vectors requested");
        // S = Q Λ^{1/2} Qᵀ and S⁻¹ = Q Λ^{-1/2} Qᵀ (pseudo-inverse on
        // numerically null directions).
        let lam_tol = 1e-12 * eigs.iter().fold(1.0f64, |m, &x| m.max(x.abs()));
        let mul = |x: &[Vec<f64>], y: &[Vec<f64>]| -> Vec<Vec<f64>> {
            let n = x.len();
            let mut z = vec![vec![0.0; n]; n];
            for i in 0..n {
                for l in 0..n {
                    if x[i][l] == 0.0 {
                        continue;
                    }
                    for j in 0..n {
                        z[i][j] += x[i][l] * y[l][j];
                    }
                }
            }
            z
        };
        let mut sqrt_d = vec![vec![0.0; dim]; dim];
        let mut inv_sqrt_d = vec![vec![0.0; dim]; dim];
        for i in 0..dim {
            let lam = eigs[i];
            if lam > lam_tol {
                sqrt_d[i][i] = lam.sqrt();
                inv_sqrt_d[i][i] = 1.0 / lam.sqrt();
            }
        }
        let qt: Vec<Vec<f64>> = (0..dim)
            .map(|i| (0..dim).map(|j| q[j][i]).collect())
            .collect();
        let s_half = mul(&mul(&q, &sqrt_d), &qt);
        let s_half_inv = mul(&mul(&q, &inv_sqrt_d), &qt);
        let b = mul(&mul(&s_half, &m), &s_half_inv);
        let bt: Vec<Vec<f64>> = (0..dim)
            .map(|i| (0..dim).map(|j| b[j][i]).collect())
            .collect();
        let btb = mul(&bt, &b);
        let (sing, _) = jacobi_eigen(btb, false);
        let top = sing.into_iter().fold(0.0f64, f64::max);
        out.push(top.max(0.0).sqrt());
    }
    Ok(out)
}

/// Exact equality of the diagrammatic cup moments against the Motzkin
/// oracle, plus the pinned spot values.
pub fn verify_moments(mmax: usize, kmax: usize) -> Report {
    let mut report = Report::new("moments");
    report.set_param("mmax", mmax);
    report.set_param("kmax", kmax);
    for k in 0..=kmax {
        for m in 0..=mmax {
            let lhs = cup_moment(m, k);
            let rhs = motzkin_moment(m);
            report.check_eq(format!("tr(∪^⋆{m}) at k={k}"), &lhs, &rhs);
        }
    }
    let delta = Scalar::delta();
    report.check_eq("spot m=2", &motzkin_moment(2), &delta);
    report.check_eq("spot m=3", &motzkin_moment(3), &delta);
    report.check_eq(
        "spot m=4",
        &motzkin_moment(4),
        &(Scalar::from_int(2) * Scalar::delta_power(2) + delta),
    );
    report
}

/// Positivity of one Gram matrix, with the minimum eigenvalue as witness.
pub fn verify_gram_cell(n: usize, k: usize, form: GramForm, s0: f64) -> Report {
    let mut report = Report::new("gram");
    report.set_param("n", n);
    report.set_param("k", k);
    report.set_param("s0", format!("{s0:.7}"));
    report.set_param(
        "form",
        match form {
            GramForm::Orth => "orth",
            GramForm::Jux => "jux",
        },
    );
    match gram(n, k, form, s0).and_then(|g| g.min_eigenvalue()) {
        Ok(min) => report.check(
            min >= -1e-9,
            format!("min eig Gram({n},{k}) at δ={:.3}", s0 * s0),
            format!("{min:.6e}"),
        ),
        Err(e) => report.check(false, format!("gram({n},{k})"), e),
    }
    report
}

/// Positivity of the orthogonal Gram matrices at each sampled `s0`, and
/// agreement of the juxtaposition Gram with its X-conjugated orthogonal
/// counterpart.
pub fn verify_gram(nk_max: usize, jux_grade: usize, jux_kmax: usize, s0_values: &[f64]) -> Report {
    let mut report = Report::new("gram");
    report.set_param("nk_max", nk_max);
    report.set_param("jux_grade", jux_grade);
    report.set_param("jux_kmax", jux_kmax);
    report.set_param(
        "delta",
        s0_values
            .iter()
            .map(|s0| format!("{:.6}", s0 * s0))
            .collect::<Vec<_>>()
            .join(","),
    );
    for &s0 in s0_values {
        for n in 0..=nk_max {
            for k in 0..=nk_max - n {
                let g = match gram(n, k, GramForm::Orth, s0) {
                    Ok(g) => g,
                    Err(e) => {
                        report.check(false, format!("gram({n},{k},orth)"), e);
                        continue;
                    }
                };
                let min = g.min_eigenvalue().expect("symmetric by construction");
                report.check(
                    min >= -1e-9,
                    format!("min eig orth Gram P({n},{k}) at δ={:.3}", s0 * s0),
                    format!("{min:.3e}"),
                );
            }
        }
        for k in 0..=jux_kmax {
            let g = gram(jux_grade, k, GramForm::Jux, s0).expect("within limits");
            let min = g.min_eigenvalue().expect("symmetric by construction");
            report.check(
                min >= -1e-9,
                format!("min eig juxtaposition Gram grades ≤ {jux_grade}, k={k}, δ={:.3}", s0 * s0),
                format!("{min:.3e}"),
            );
            // The numeric shadow of the isometry: ⟨⟨·,·⟩⟩ = ⟨X·, X·⟩.
            let basis = joint_basis(jux_grade, k).expect("within limits");
            let images: Vec<GradedElement> = basis.iter().map(|(_, b)| apply_x(b)).collect();
            let mut max_err = 0.0f64;
            for i in 0..basis.len() {
                for j in 0..basis.len() {
                    let xij = images[i]
                        .inner_orth(&images[j])
                        .expect("same context")
                        .evaluate(s0)
                        .expect("positive point");
                    max_err = max_err.max((g.entries[i][j] - xij).abs());
                }
            }
            report.check(
                max_err <= 1e-9,
                format!("juxtaposition Gram equals X-conjugated orth Gram (k={k}, δ={:.3})", s0 * s0),
                format!("max entry error {max_err:.3e}"),
            );
        }
    }
    report
}

#[cfg(test)]
#[allow(clippy::needless_range_loop)]
mod tests {
    use super::*;

    #[test]
    fn gram_examples() {
        let s0 = 2f64.sqrt();
        let g = gram(1, 0, GramForm::Orth, s0).unwrap();
        assert_eq!(g.dim(), 1);
        assert!((g.entries[0][0] - 2.0).abs() < 1e-12);

        let g = gram(0, 1, GramForm::Orth, 1.7).unwrap();
        assert!((g.entries[0][0] - 1.0).abs() < 1e-12);

        let g = gram(1, 0, GramForm::Jux, s0).unwrap();
        assert_eq!(g.dim(), 2);
        let want = [[1.0, 2.0], [2.0, 6.0]];
        for i in 0..2 {
            for j in 0..2 {
                assert!((g.entries[i][j] - want[i][j]).abs() < 1e-12);
            }
        }
        assert!(gram(1, 0, GramForm::Orth, 0.0).is_err());
    }

    #[test]
    fn min_eigenvalue_examples() {
        let m = GramMatrix {
            labels: vec!["x".into()],
            entries: vec![vec![1.0]],
            delta: 2.0,
        };
        assert!((m.min_eigenvalue().unwrap() - 1.0).abs() < 1e-12);

        let m = GramMatrix {
            labels: vec!["a".into(), "b".into()],
            entries: vec![vec![2.0, 0.0], vec![0.0, 3.0]],
            delta: 2.0,
        };
        assert!((m.min_eigenvalue().unwrap() - 2.0).abs() < 1e-12);

        let m = GramMatrix {
            labels: vec!["a".into(), "b".into()],
            entries: vec![vec![1.0, 2.0], vec![2.0, 6.0]],
            delta: 2.0,
        };
        let expected = (7.0 - 41f64.sqrt()) / 2.0;
        assert!((m.min_eigenvalue().unwrap() - expected).abs() < 1e-10);

        let bad = GramMatrix {
            labels: vec!["a".into(), "b".into()],
            entries: vec![vec![1.0, 2.0], vec![0.0, 6.0]],
            delta: 2.0,
        };
        assert!(bad.min_eigenvalue().is_err());
    }

    #[test]
    fn cup_moment_examples() {
        assert_eq!(cup_moment(0, 0), Scalar::one());
        assert_eq!(cup_moment(1, 0), Scalar::zero());
        assert_eq!(cup_moment(2, 0), Scalar::delta());
        assert_eq!(cup_moment(2, 1), Scalar::delta());
        assert_eq!(
            cup_moment(4, 0),
            Scalar::from_int(2) * Scalar::delta_power(2) + Scalar::delta()
        );
    }

    #[test]
    fn motzkin_examples() {
        assert_eq!(motzkin_moment(0), Scalar::one());
        assert_eq!(motzkin_moment(1), Scalar::zero());
        assert_eq!(motzkin_moment(2), Scalar::s_power(2));
        assert_eq!(motzkin_moment(3), Scalar::s_power(2));
    }

    #[test]
    fn moments_agree_small() {
        let r = verify_moments(5, 1);
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn norm_probe_examples() {
        let s0 = 2f64.sqrt();
        let one = GradedElement::unit(0);
        for v in norm_probe(&one, 3, s0).unwrap() {
            assert!((v - 1.0).abs() < 1e-8, "identity norm {v}");
        }
        let zero = GradedElement::zero(0);
        for v in norm_probe(&zero, 3, s0).unwrap() {
            assert!(v.abs() < 1e-10);
        }
        let probes = norm_probe(&cup(0), 4, s0).unwrap();
        for w in probes.windows(2) {
            assert!(w[1] >= w[0] - 1e-9, "probe must be nondecreasing: {probes:?}");
        }
    }
}
