//! Vectors in `P_{n,k}`: boxes with `k` side strands on each side and `2n`
//! strands on top, and the fixed tangle operations acting on them.
//!
//! A basis diagram is one noncrossing matching of the `2(n+k)` boundary
//! points. The boundary walk runs up the left edge, across the top, down
//! the right edge, so the circular order is `L_k,…,L_1,T_1,…,T_2n,R_1,…,R_k`:
//! side strands are numbered from the box outward, `L_1/R_1` innermost.
//! Inclusion into context `k+1` adds the outermost strand `(L_{k+1}, R_{k+1})`
//! below everything, and the conditional expectation removes it again, so
//! the strand an operator was built on never moves as the context grows.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::glue::Gluing;
use crate::pairing::{
    self, noncrossing_matchings_on, noncrossing_on, Pairing, MAX_ENUM_POINTS,
};
use crate::scalar::Scalar;

/// A boundary point of a `P_{n,k}` box, 1-based within its edge.
///
/// Side points are numbered from the box outward: `Left(1)` is adjacent to
/// the top-left corner, `Left(k)` sits at the bottom of the left edge.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub enum BoxPoint {
    Left(usize),
    Top(usize),
    Right(usize),
}

/// One basis diagram of `P_{n,k}`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BoxDiagram {
    grade: usize,
    context: usize,
    /// Partner of each point id; ids run `L_1..L_k, T_1..T_2n, R_1..R_k`.
    mate: Vec<usize>,
}

/// Which pair of top points a cap tangle closes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl BoxDiagram {
    pub fn grade(&self) -> usize {
        self.grade
    }

    pub fn context(&self) -> usize {
        self.context
    }

    fn total_points(&self) -> usize {
        2 * (self.grade + self.context)
    }

    fn left_id(&self, i: usize) -> usize {
        debug_assert!(i >= 1 && i <= self.context);
        i - 1
    }

    fn top_id(&self, j: usize) -> usize {
        debug_assert!(j >= 1 && j <= 2 * self.grade);
        self.context + j - 1
    }

    fn right_id(&self, i: usize) -> usize {
        debug_assert!(i >= 1 && i <= self.context);
        self.context + 2 * self.grade + i - 1
    }

    fn label(&self, id: usize) -> BoxPoint {
        let k = self.context;
        let n2 = 2 * self.grade;
        if id < k {
            BoxPoint::Left(id + 1)
        } else if id < k + n2 {
            BoxPoint::Top(id - k + 1)
        } else {
            BoxPoint::Right(id - k - n2 + 1)
        }
    }

    fn id_of(&self, p: BoxPoint) -> Result<usize> {
        match p {
            BoxPoint::Left(i) if i >= 1 && i <= self.context => Ok(self.left_id(i)),
            BoxPoint::Top(j) if j >= 1 && j <= 2 * self.grade => Ok(self.top_id(j)),
            BoxPoint::Right(i) if i >= 1 && i <= self.context => Ok(self.right_id(i)),
            _ => Err(Error::invalid("box diagram", format!("point {p:?} out of range"))),
        }
    }

    /// Point ids along the boundary walk `L_k..L_1, T_1..T_2n, R_1..R_k`.
    fn circular_order(&self) -> Vec<usize> {
        let k = self.context;
        let n2 = 2 * self.grade;
        let mut seq: Vec<usize> = (0..k).rev().collect();
        seq.extend(k..k + n2 + k);
        seq
    }

    pub fn is_valid(&self) -> bool {
        let total = self.total_points();
        if self.mate.len() != total {
            return false;
        }
        for (i, &m) in self.mate.iter().enumerate() {
            if m >= total || m == i || self.mate[m] != i {
                return false;
            }
        }
        noncrossing_on(&self.circular_order(), &self.mate)
    }

    /// Builds and validates a diagram from explicit point pairs.
    pub fn new(grade: usize, context: usize, pairs: &[(BoxPoint, BoxPoint)]) -> Result<Self> {
        let mut d = BoxDiagram {
            grade,
            context,
            mate: vec![usize::MAX; 2 * (grade + context)],
        };
        for &(a, b) in pairs {
            let (x, y) = (d.id_of(a)?, d.id_of(b)?);
            if x == y {
                return Err(Error::invalid("box diagram", format!("{a:?} paired with itself")));
            }
            if d.mate[x] != usize::MAX || d.mate[y] != usize::MAX {
                return Err(Error::invalid("box diagram", "point matched twice"));
            }
            d.mate[x] = y;
            d.mate[y] = x;
        }
        if !d.is_valid() {
            return Err(Error::invalid(
                "box diagram",
                "matching is not a perfect noncrossing matching",
            ));
        }
        Ok(d)
    }

    fn from_mate_unchecked(grade: usize, context: usize, mate: Vec<usize>) -> Self {
        let d = BoxDiagram {
            grade,
            context,
            mate,
        };
        debug_assert!(d.is_valid(), "invalid diagram produced: {d}");
        d
    }

    /// The identity of `P_{0,k}`: `k` nested through strands.
    pub fn unit(context: usize) -> Self {
        let mut mate = vec![usize::MAX; 2 * context];
        for i in 1..=context {
            mate[i - 1] = context + i - 1;
            mate[context + i - 1] = i - 1;
        }
        BoxDiagram {
            grade: 0,
            context,
            mate,
        }
    }

    /// Rebuilds the diagram through a relabelling into a new box shape.
    fn map_into(
        &self,
        grade: usize,
        context: usize,
        f: impl Fn(BoxPoint) -> BoxPoint,
        extra: &[(BoxPoint, BoxPoint)],
    ) -> Self {
        let mut d = BoxDiagram {
            grade,
            context,
            mate: vec![usize::MAX; 2 * (grade + context)],
        };
        for (i, &m) in self.mate.iter().enumerate() {
            if i < m {
                let x = d.id_of(f(self.label(i))).expect("relabel in range");
                let y = d.id_of(f(self.label(m))).expect("relabel in range");
                d.mate[x] = y;
                d.mate[y] = x;
            }
        }
        for &(a, b) in extra {
            let x = d.id_of(a).expect("extra point in range");
            let y = d.id_of(b).expect("extra point in range");
            d.mate[x] = y;
            d.mate[y] = x;
        }
        debug_assert!(d.is_valid(), "invalid diagram produced: {d}");
        d
    }

    /// Mirror across the vertical axis: `L_i ↔ R_i`, `T_j ↔ T_{2n+1−j}`.
    pub fn mirrored(&self) -> Self {
        let n2 = 2 * self.grade;
        self.map_into(
            self.grade,
            self.context,
            |p| match p {
                BoxPoint::Left(i) => BoxPoint::Right(i),
                BoxPoint::Right(i) => BoxPoint::Left(i),
                BoxPoint::Top(j) => BoxPoint::Top(n2 + 1 - j),
            },
            &[],
        )
    }

    /// The diagram basis of `P_{n,k}`, sorted.
    pub fn basis(grade: usize, context: usize) -> Result<Vec<BoxDiagram>> {
        let total = 2 * (grade + context);
        if total > MAX_ENUM_POINTS {
            return Err(Error::EnumerationLimit {
                points: total,
                limit: MAX_ENUM_POINTS,
            });
        }
        let probe = BoxDiagram {
            grade,
            context,
            mate: Vec::new(),
        };
        let circ = probe.circular_order();
        let mut out: Vec<BoxDiagram> = noncrossing_matchings_on(&circ, total)
            .into_iter()
            .map(|mate| BoxDiagram::from_mate_unchecked(grade, context, mate))
            .collect();
        out.sort();
        Ok(out)
    }
}

impl fmt::Display for BoxDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut pairs: Vec<(BoxPoint, BoxPoint)> = (0..self.mate.len())
            .filter(|&i| i < self.mate[i])
            .map(|i| {
                let (a, b) = (self.label(i), self.label(self.mate[i]));
                if a <= b {
                    (a, b)
                } else {
                    (b, a)
                }
            })
            .collect();
        pairs.sort();
        write!(f, "P({},{}):{{", self.grade, self.context)?;
        for (i, (a, b)) in pairs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "({},{})", box_point_label(*a), box_point_label(*b))?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for BoxDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BoxDiagram({self})")
    }
}

fn box_point_label(p: BoxPoint) -> String {
    match p {
        BoxPoint::Left(i) => format!("L{i}"),
        BoxPoint::Top(j) => format!("T{j}"),
        BoxPoint::Right(i) => format!("R{i}"),
    }
}

fn parse_box_point(text: &str) -> Result<BoxPoint> {
    let text = text.trim();
    let (kind, idx) = text.split_at(1);
    let i: usize = idx
        .parse()
        .map_err(|e| Error::parse(format!("bad point '{text}': {e}")))?;
    match kind {
        "L" => Ok(BoxPoint::Left(i)),
        "T" => Ok(BoxPoint::Top(i)),
        "R" => Ok(BoxPoint::Right(i)),
        _ => Err(Error::parse(format!("bad point '{text}'"))),
    }
}

impl FromStr for BoxDiagram {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let text = text.trim();
        let rest = text
            .strip_prefix("P(")
            .ok_or_else(|| Error::parse("expected 'P(n,k):{pairs}'"))?;
        let (head, body) = rest
            .split_once("):")
            .ok_or_else(|| Error::parse("expected '):' separator"))?;
        let (n, k) = head
            .split_once(',')
            .ok_or_else(|| Error::parse("expected 'n,k' header"))?;
        let grade: usize = n
            .trim()
            .parse()
            .map_err(|e| Error::parse(format!("bad grade: {e}")))?;
        let context: usize = k
            .trim()
            .parse()
            .map_err(|e| Error::parse(format!("bad context: {e}")))?;
        let body = body
            .trim()
            .strip_prefix('{')
            .and_then(|s| s.strip_suffix('}'))
            .ok_or_else(|| Error::parse("expected '{pairs}' body"))?;
        let mut pairs = Vec::new();
        for (a, b) in pairing::parse_pair_list(body)? {
            pairs.push((parse_box_point(&a)?, parse_box_point(&b)?));
        }
        BoxDiagram::new(grade, context, &pairs)
    }
}

/// A vector in `P_{n,k}`: a finite linear combination of basis diagrams.
#[derive(Clone, PartialEq, Eq)]
pub struct Element {
    grade: usize,
    context: usize,
    terms: BTreeMap<BoxDiagram, Scalar>,
}

impl Element {
    pub fn zero(grade: usize, context: usize) -> Self {
        Element {
            grade,
            context,
            terms: BTreeMap::new(),
        }
    }

    /// A single basis diagram with coefficient 1.
    pub fn from_diagram(d: BoxDiagram) -> Self {
        let mut e = Element::zero(d.grade(), d.context());
        e.add_term(d, Scalar::one());
        e
    }

    /// The identity of `P_{0,k}`.
    pub fn unit(context: usize) -> Self {
        Element::from_diagram(BoxDiagram::unit(context))
    }

    pub fn from_terms(
        grade: usize,
        context: usize,
        terms: impl IntoIterator<Item = (BoxDiagram, Scalar)>,
    ) -> Result<Self> {
        let mut e = Element::zero(grade, context);
        for (d, c) in terms {
            if d.grade() != grade || d.context() != context {
                return Err(Error::invalid(
                    "element",
                    format!(
                        "diagram {d} does not live in P({grade},{context})"
                    ),
                ));
            }
            e.add_term(d, c);
        }
        Ok(e)
    }

    pub fn grade(&self) -> usize {
        self.grade
    }

    pub fn context(&self) -> usize {
        self.context
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BoxDiagram, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, d: &BoxDiagram) -> Scalar {
        self.terms.get(d).cloned().unwrap_or_else(Scalar::zero)
    }

    pub(crate) fn add_term(&mut self, d: BoxDiagram, c: Scalar) {
        debug_assert_eq!((d.grade(), d.context()), (self.grade, self.context));
        if c.is_zero() {
            return;
        }
        match self.terms.entry(d) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Element) -> Element {
        assert_eq!(
            (self.grade, self.context),
            (other.grade, other.context),
            "element shapes differ"
        );
        let mut out = self.clone();
        for (d, c) in other.terms() {
            out.add_term(d.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Element) -> Element {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Element {
        self.scale(&-Scalar::one())
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        let mut out = Element::zero(self.grade, self.context);
        for (d, x) in self.terms() {
            out.add_term(d.clone(), x * c);
        }
        out
    }

    /// Glues a tangle `t` (read bottom to top) onto the top edge. Each
    /// closed loop contributes a factor `δ`; side points pass through.
    pub fn apply_top(&self, t: &Pairing) -> Result<Element> {
        if t.bottom_count() != 2 * self.grade {
            return Err(Error::SizeMismatch {
                lower: 2 * self.grade,
                upper: t.bottom_count(),
            });
        }
        if !t.top_count().is_multiple_of(2) {
            return Err(Error::invalid(
                "tangle",
                "top tangle must have an even number of outgoing points",
            ));
        }
        let out_grade = t.top_count() / 2;
        let mut out = Element::zero(out_grade, self.context);
        for (d, c) in self.terms() {
            let (nd, loops) = glue_onto_top(d, t);
            out.add_term(nd, c * &Scalar::delta_power(loops as i64));
        }
        Ok(out)
    }

    /// Caps the leftmost pair `(T_1, T_2)` or rightmost pair
    /// `(T_{2n−1}, T_{2n})` of top points.
    pub fn cap(&self, side: Side) -> Result<Element> {
        if self.grade == 0 {
            return Err(Error::GradeZero);
        }
        let n2 = 2 * self.grade;
        let t = match side {
            Side::Left => Pairing::cap_at(n2, 1),
            Side::Right => Pairing::cap_at(n2, n2 - 1),
        };
        self.apply_top(&t)
    }

    /// The unital inclusion `P_{n,k} → P_{n,k+1}`: adds the outermost
    /// through strand `(L_{k+1}, R_{k+1})`.
    pub fn include(&self) -> Element {
        let k = self.context;
        let mut out = Element::zero(self.grade, k + 1);
        for (d, c) in self.terms() {
            let nd = d.map_into(
                self.grade,
                k + 1,
                |p| p,
                &[(BoxPoint::Left(k + 1), BoxPoint::Right(k + 1))],
            );
            out.add_term(nd, c.clone());
        }
        out
    }

    /// The normalised closure of a grade-0 element: joins `L_i` to `R_i`
    /// around the bottom and weighs `δ^{-k}` per the Markov normalisation,
    /// so the closure of the identity is 1.
    pub fn closure(&self) -> Result<Scalar> {
        if self.grade != 0 {
            return Err(Error::GradeMismatch {
                expected: 0,
                got: self.grade,
            });
        }
        let mut acc = Scalar::zero();
        for (d, c) in self.terms() {
            let loops = close_up(d);
            acc += c * &Scalar::delta_power(loops as i64 - self.context as i64);
        }
        Ok(acc)
    }

    /// The planar-algebra involution: mirrors every diagram across the
    /// vertical axis. Coefficients are rational, hence fixed.
    pub fn involution(&self) -> Element {
        let mut out = Element::zero(self.grade, self.context);
        for (d, c) in self.terms() {
            out.add_term(d.mirrored(), c.clone());
        }
        out
    }

    /// The trace-preserving conditional expectation step `k → k−1`:
    /// `δ^{-1}` times the tangle turning the outermost strand back.
    pub fn conditional_expectation(&self) -> Result<Element> {
        if self.context == 0 {
            return Err(Error::ContextZero);
        }
        let mut out = Element::zero(self.grade, self.context - 1);
        for (d, c) in self.terms() {
            let (nd, loops) = turn_back_outermost(d);
            out.add_term(nd, c * &Scalar::delta_power(loops as i64 - 1));
        }
        Ok(out)
    }

    /// Pads the top with `p` adjacent cups on the left and `q` on the
    /// right, normalised by `(1/√δ)^{p+q}`.
    pub fn xpq(&self, p: usize, q: usize) -> Element {
        if p == 0 && q == 0 {
            return self.clone();
        }
        let n2 = 2 * self.grade;
        let out_grade = self.grade + p + q;
        let mut extra = Vec::new();
        for a in 1..=p {
            extra.push((BoxPoint::Top(2 * a - 1), BoxPoint::Top(2 * a)));
        }
        for a in 1..=q {
            extra.push((
                BoxPoint::Top(2 * p + n2 + 2 * a - 1),
                BoxPoint::Top(2 * p + n2 + 2 * a),
            ));
        }
        let weight = Scalar::s_power(-((p + q) as i64));
        let mut out = Element::zero(out_grade, self.context);
        for (d, c) in self.terms() {
            let nd = d.map_into(
                out_grade,
                self.context,
                |pt| match pt {
                    BoxPoint::Top(j) => BoxPoint::Top(2 * p + j),
                    other => other,
                },
                &extra,
            );
            out.add_term(nd, c * &weight);
        }
        out
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0 in P({},{})", self.grade, self.context);
        }
        let mut first = true;
        for (d, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})·{d}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element({self})")
    }
}

/// The cup element `∪_k ∈ P_{1,k}`: `(T_1,T_2)` over `k` through strands.
pub fn cup_element(context: usize) -> Element {
    let mut pairs = vec![(BoxPoint::Top(1), BoxPoint::Top(2))];
    for i in 1..=context {
        pairs.push((BoxPoint::Left(i), BoxPoint::Right(i)));
    }
    Element::from_diagram(BoxDiagram::new(1, context, &pairs).expect("cup is valid"))
}

/// The Jones projection `e_i ∈ P_{0,k}`: `δ^{-1}` times the diagram that
/// turns strands `i` and `i+1` back on both sides.
pub fn jones_element(index: usize, context: usize) -> Result<Element> {
    if index == 0 || index + 1 > context {
        return Err(Error::JonesIndexOutOfRange { index, context });
    }
    let mut pairs = vec![
        (BoxPoint::Left(index), BoxPoint::Left(index + 1)),
        (BoxPoint::Right(index), BoxPoint::Right(index + 1)),
    ];
    for i in (1..=context).filter(|&i| i != index && i != index + 1) {
        pairs.push((BoxPoint::Left(i), BoxPoint::Right(i)));
    }
    let d = BoxDiagram::new(0, context, &pairs)?;
    Ok(Element::from_diagram(d).scale(&Scalar::delta_power(-1)))
}

fn glue_onto_top(x: &BoxDiagram, t: &Pairing) -> (BoxDiagram, usize) {
    let x_len = x.total_points();
    let t_off = x_len;
    let mut glue = Gluing::new(x_len + t.bottom_count() + t.top_count());
    glue.set_mates(0, &x.mate);
    glue.set_mates(t_off, t.mate());
    for j in 0..t.bottom_count() {
        glue.add_link(x.top_id(j + 1), t_off + j);
    }
    let k = x.context;
    let out_grade = t.top_count() / 2;
    let mut boundary = Vec::with_capacity(2 * (out_grade + k));
    boundary.extend((1..=k).map(|i| x.left_id(i)));
    boundary.extend((0..t.top_count()).map(|q| t_off + t.bottom_count() + q));
    boundary.extend((1..=k).map(|i| x.right_id(i)));
    let (mate, loops) = glue.resolve(&boundary);
    (BoxDiagram::from_mate_unchecked(out_grade, k, mate), loops)
}

fn close_up(x: &BoxDiagram) -> usize {
    let mut glue = Gluing::new(x.total_points());
    glue.set_mates(0, &x.mate);
    for i in 1..=x.context {
        glue.add_link(x.left_id(i), x.right_id(i));
    }
    let (_, loops) = glue.resolve(&[]);
    loops
}

fn turn_back_outermost(x: &BoxDiagram) -> (BoxDiagram, usize) {
    let k = x.context;
    let mut glue = Gluing::new(x.total_points());
    glue.set_mates(0, &x.mate);
    glue.add_link(x.left_id(k), x.right_id(k));
    let mut boundary = Vec::with_capacity(x.total_points() - 2);
    boundary.extend((1..k).map(|i| x.left_id(i)));
    boundary.extend((1..=2 * x.grade).map(|j| x.top_id(j)));
    boundary.extend((1..k).map(|i| x.right_id(i)));
    let (mate, loops) = glue.resolve(&boundary);
    (
        BoxDiagram::from_mate_unchecked(x.grade, k - 1, mate),
        loops,
    )
}

/// The `i`-th contraction term of the graded product: `a` and `b` side by
/// side, `a`'s side strands joined to `b`'s, and the rightmost `i` top
/// strands of `a` joined to the leftmost `i` of `b` in nested fashion.
pub(crate) fn star_term(a: &BoxDiagram, b: &BoxDiagram, i: usize) -> (BoxDiagram, usize) {
    debug_assert_eq!(a.context, b.context);
    debug_assert!(i <= 2 * a.grade && i <= 2 * b.grade);
    let k = a.context;
    let (m2, n2) = (2 * a.grade, 2 * b.grade);
    let b_off = a.total_points();
    let mut glue = Gluing::new(a.total_points() + b.total_points());
    glue.set_mates(0, &a.mate);
    glue.set_mates(b_off, &b.mate);
    for j in 1..=k {
        glue.add_link(a.right_id(j), b_off + b.left_id(j));
    }
    for p in 1..=i {
        glue.add_link(a.top_id(m2 - p + 1), b_off + b.top_id(p));
    }
    let out_grade = a.grade + b.grade - i;
    let mut boundary = Vec::with_capacity(2 * (out_grade + k));
    boundary.extend((1..=k).map(|j| a.left_id(j)));
    boundary.extend((1..=m2 - i).map(|q| a.top_id(q)));
    boundary.extend((1..=n2 - i).map(|q| b_off + b.top_id(i + q)));
    boundary.extend((1..=k).map(|j| b_off + b.right_id(j)));
    let (mate, loops) = glue.resolve(&boundary);
    (
        BoxDiagram::from_mate_unchecked(out_grade, k, mate),
        loops,
    )
}

/// Loop count of the orthogonal pairing picture: `a` against the already
/// mirrored `bm`, all top strands contracted in parallel, sides closed
/// around.
pub(crate) fn orth_pair_loops(a: &BoxDiagram, bm: &BoxDiagram) -> usize {
    debug_assert_eq!(a.context, bm.context);
    debug_assert_eq!(a.grade, bm.grade);
    let k = a.context;
    let n2 = 2 * a.grade;
    let b_off = a.total_points();
    let mut glue = Gluing::new(a.total_points() + bm.total_points());
    glue.set_mates(0, &a.mate);
    glue.set_mates(b_off, &bm.mate);
    for p in 1..=n2 {
        glue.add_link(a.top_id(n2 - p + 1), b_off + bm.top_id(p));
    }
    for j in 1..=k {
        glue.add_link(a.right_id(j), b_off + bm.left_id(j));
        glue.add_link(b_off + bm.right_id(j), a.left_id(j));
    }
    let (_, loops) = glue.resolve(&[]);
    loops
}

/// Loop count of one summand of the juxtaposition inner product: the top
/// points of `a | bm` are matched by `top_mate` (a matching over positions
/// `0..2(m+n)`, where positions `< 2m` are `a`'s tops left to right), and
/// the sides are closed around as in the orthogonal picture.
pub(crate) fn jux_pair_loops(a: &BoxDiagram, bm: &BoxDiagram, top_mate: &[usize]) -> usize {
    debug_assert_eq!(a.context, bm.context);
    let k = a.context;
    let m2 = 2 * a.grade;
    let b_off = a.total_points();
    let node = |pos: usize| {
        if pos < m2 {
            a.top_id(pos + 1)
        } else {
            b_off + bm.top_id(pos - m2 + 1)
        }
    };
    let mut glue = Gluing::new(a.total_points() + bm.total_points());
    glue.set_mates(0, &a.mate);
    glue.set_mates(b_off, &bm.mate);
    for (p, &q) in top_mate.iter().enumerate() {
        if p < q {
            glue.add_link(node(p), node(q));
        }
    }
    for j in 1..=k {
        glue.add_link(a.right_id(j), b_off + bm.left_id(j));
        glue.add_link(b_off + bm.right_id(j), a.left_id(j));
    }
    let (_, loops) = glue.resolve(&[]);
    loops
}
